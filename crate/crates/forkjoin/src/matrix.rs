//! Dense matrices over the max-plus semiring.
//!
//! The null matrix ℰ has every entry equal to ε; the identity E carries 0 on
//! the diagonal and ε elsewhere. The product `(X ⊗ Y)_ij = max_k (x_ik + y_kj)`
//! makes powers of a 0/ε adjacency matrix enumerate paths: `(G^⊗q)_ij` is
//! finite exactly when a q-edge path leads from i to j, so `G^⊗q = ℰ` for
//! every q greater than the longest path of an acyclic graph.

use crate::maxplus::MaxPlus;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("{op}: {lhs_rows}x{lhs_cols} and {rhs_rows}x{rhs_cols} matrices do not conform")]
    Mismatch {
        op: &'static str,
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    #[error("matrix power requires a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("vector of length {len} does not conform with a {rows}x{cols} matrix")]
    VectorLength { len: usize, rows: usize, cols: usize },
}

/// A rows × cols matrix of [`MaxPlus`] entries in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct MaxPlusMatrix {
    rows: usize,
    cols: usize,
    data: Vec<MaxPlus>,
}

impl MaxPlusMatrix {
    /// The all-ε matrix ℰ, the ⊕-null element.
    pub fn eps(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![MaxPlus::EPS; rows * cols] }
    }

    /// The ⊗-identity E = diag(0, …, 0) with ε off the diagonal.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::eps(n, n);
        for i in 0..n {
            m.set(i, i, MaxPlus::ZERO);
        }
        m
    }

    /// Square matrix with `d` on the diagonal and ε elsewhere.
    pub fn diag(d: &[MaxPlus]) -> Self {
        let mut m = Self::eps(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Builds a matrix from equally long rows of raw values; −∞ encodes ε.
    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "rows must have equal length");
        let data = rows.iter().flatten().map(|&v| MaxPlus::new(v)).collect();
        Self { rows: rows.len(), cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MaxPlus) -> Self {
        let mut m = Self::eps(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> MaxPlus {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: MaxPlus) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = MaxPlus> + '_ {
        self.data.iter().copied()
    }

    /// Entrywise ⊕ of two equally shaped matrices.
    pub fn oplus(&self, rhs: &Self) -> Result<Self, ShapeError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.mismatch("matrix oplus", rhs));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| a.oplus(b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    /// Max-plus product: `(X ⊗ Y)_ij = max_k (x_ik + y_kj)`.
    pub fn otimes(&self, rhs: &Self) -> Result<Self, ShapeError> {
        if self.cols != rhs.rows {
            return Err(self.mismatch("matrix otimes", rhs));
        }
        let mut out = Self::eps(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_eps() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = x.otimes(rhs.get(k, j));
                    let cur = out.get(i, j);
                    out.set(i, j, cur.oplus(v));
                }
            }
        }
        Ok(out)
    }

    /// q-fold ⊗-power of a square matrix; `pow(0)` is the identity E.
    ///
    /// Small exponents multiply directly; larger ones use repeated squaring,
    /// which matters when the longest path grows with the node count.
    pub fn pow(&self, q: u32) -> Result<Self, ShapeError> {
        if !self.is_square() {
            return Err(ShapeError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if q == 0 {
            return Ok(Self::identity(self.rows));
        }
        if q <= 3 {
            let mut acc = self.clone();
            for _ in 1..q {
                acc = acc.otimes(self)?;
            }
            return Ok(acc);
        }
        let mut acc = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = q;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.otimes(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.otimes(&base)?;
            }
        }
        Ok(acc)
    }

    /// ⊕ over all entries, i.e. the largest entry; ε exactly for ℰ.
    pub fn norm(&self) -> MaxPlus {
        self.data.iter().copied().fold(MaxPlus::EPS, MaxPlus::oplus)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// c ⊗ X: adds the scalar to every entry (ε entries stay ε).
    pub fn otimes_scalar(&self, c: MaxPlus) -> Self {
        let data = self.data.iter().map(|&x| c.otimes(x)).collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// Conventional scaling cX for c > 0: multiplies every finite entry,
    /// with c·ε = ε. Not defined for c ≤ 0.
    pub fn scale(&self, c: f64) -> Self {
        assert!(c > 0.0, "conventional scaling requires c > 0");
        let data = self
            .data
            .iter()
            .map(|&x| match x.finite() {
                Some(v) => MaxPlus::new(c * v),
                None => MaxPlus::EPS,
            })
            .collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// Entrywise order with ε below every value. Panics on shape mismatch.
    pub fn le(&self, rhs: &Self) -> bool {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "entrywise comparison needs equal shapes");
        self.data.iter().zip(&rhs.data).all(|(a, b)| a <= b)
    }

    /// The standard adjacency matrix of this matrix's ε-pattern: 0 where an
    /// entry is finite, ε where it is ε.
    pub fn adjacency_pattern(&self) -> Self {
        let data = self
            .data
            .iter()
            .map(|&x| if x.is_eps() { MaxPlus::EPS } else { MaxPlus::ZERO })
            .collect();
        Self { rows: self.rows, cols: self.cols, data }
    }

    /// Matrix-vector product treating `v` as a column vector.
    pub fn mul_vec(&self, v: &[MaxPlus]) -> Result<Vec<MaxPlus>, ShapeError> {
        if v.len() != self.cols {
            return Err(ShapeError::VectorLength { len: v.len(), rows: self.rows, cols: self.cols });
        }
        let out = (0..self.rows)
            .map(|i| {
                v.iter()
                    .enumerate()
                    .fold(MaxPlus::EPS, |acc, (k, &x)| acc.oplus(self.get(i, k).otimes(x)))
            })
            .collect();
        Ok(out)
    }

    fn mismatch(&self, op: &'static str, rhs: &Self) -> ShapeError {
        ShapeError::Mismatch {
            op,
            lhs_rows: self.rows,
            lhs_cols: self.cols,
            rhs_rows: rhs.rows,
            rhs_cols: rhs.cols,
        }
    }
}

impl fmt::Display for MaxPlusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.entries().map(|e| e.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|j| format!("{:>width$}", self.get(i, j).to_string())).collect();
            writeln!(f, "[ {} ]", row.join("  "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MaxPlusMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MaxPlusMatrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}
