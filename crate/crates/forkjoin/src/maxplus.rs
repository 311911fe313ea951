//! Scalars of the max-plus semiring ℝ ∪ {ε}, with ⊕ = max and ⊗ = +.

use std::cmp::Ordering;
use std::fmt;

/// A max-plus scalar: a finite real number or the null element ε = −∞.
///
/// `⊕` is the maximum with ε as its neutral element; `⊗` is ordinary
/// addition with 0 as its neutral element and ε absorbing. NaN and +∞ are
/// rejected at construction, which keeps the order total and guarantees
/// that ε ⊗ x can never produce a NaN.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaxPlus(f64);

impl MaxPlus {
    /// The null element ε = −∞: neutral for ⊕, absorbing for ⊗.
    pub const EPS: MaxPlus = MaxPlus(f64::NEG_INFINITY);
    /// The unit element 0: neutral for ⊗.
    pub const ZERO: MaxPlus = MaxPlus(0.0);

    /// Wraps a finite value or −∞. Panics on NaN or +∞.
    pub fn new(value: f64) -> MaxPlus {
        assert!(!value.is_nan(), "max-plus value cannot be NaN");
        assert!(value != f64::INFINITY, "max-plus value cannot be +inf");
        // normalize -0.0 so equality and ordering agree
        MaxPlus(if value == 0.0 { 0.0 } else { value })
    }

    pub fn is_eps(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    /// The finite value, or `None` for ε.
    pub fn finite(self) -> Option<f64> {
        if self.is_eps() {
            None
        } else {
            Some(self.0)
        }
    }

    /// The underlying extended real (−∞ encodes ε).
    pub fn raw(self) -> f64 {
        self.0
    }

    /// x ⊕ y = max(x, y).
    #[inline]
    pub fn oplus(self, rhs: MaxPlus) -> MaxPlus {
        MaxPlus(self.0.max(rhs.0))
    }

    /// x ⊗ y = x + y, with ε absorbing from either side.
    #[inline]
    pub fn otimes(self, rhs: MaxPlus) -> MaxPlus {
        if self.is_eps() || rhs.is_eps() {
            MaxPlus::EPS
        } else {
            MaxPlus(self.0 + rhs.0)
        }
    }

    /// q-fold ⊗-power, i.e. q·x in conventional notation; `pow(0)` is the
    /// ⊗-unit 0.
    pub fn pow(self, q: u32) -> MaxPlus {
        if q == 0 {
            MaxPlus::ZERO
        } else if self.is_eps() {
            MaxPlus::EPS
        } else {
            MaxPlus(f64::from(q) * self.0)
        }
    }
}

impl From<f64> for MaxPlus {
    fn from(value: f64) -> MaxPlus {
        MaxPlus::new(value)
    }
}

impl Eq for MaxPlus {}

impl PartialOrd for MaxPlus {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MaxPlus {
    fn cmp(&self, other: &Self) -> Ordering {
        // total because NaN is excluded and -0.0 is normalized
        self.0.partial_cmp(&other.0).expect("max-plus values are never NaN")
    }
}

impl fmt::Display for MaxPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_eps() {
            write!(f, "ε")
        } else {
            write!(f, "{}", self.0)
        }
    }
}
