//! Tour of the max-plus scalar and matrix algebra: ⊕ = max, ⊗ = +,
//! null element ε = −∞, and the nilpotency of 0/ε adjacency matrices.
//!
//! Run with: cargo run --example algebra

use forkjoin::{MaxPlus, MaxPlusMatrix};

fn main() {
    // scalars
    let x = MaxPlus::new(3.0);
    let y = MaxPlus::new(5.0);
    println!("3 ⊕ 5 = {}   (max)", x.oplus(y));
    println!("3 ⊗ 5 = {}   (plus)", x.otimes(y));
    println!("3 ⊕ ε = {}   (ε is neutral for ⊕)", x.oplus(MaxPlus::EPS));
    println!("3 ⊗ ε = {}   (ε absorbs under ⊗)", x.otimes(MaxPlus::EPS));
    println!("3 ⊗ 0 = {}   (0 is the ⊗-unit)", x.otimes(MaxPlus::ZERO));
    println!("3^⊗4 = {}   (powers are conventional multiples)", x.pow(4));

    // matrices
    let e = f64::NEG_INFINITY;
    let a = MaxPlusMatrix::from_rows(&[vec![1.0, e], vec![0.0, 2.0]]);
    let b = MaxPlusMatrix::from_rows(&[vec![0.0, 3.0], vec![e, 1.0]]);
    println!("\nA =\n{a}");
    println!("B =\n{b}");
    println!("A ⊕ B =\n{}", a.oplus(&b).unwrap());
    println!("A ⊗ B =\n{}", a.otimes(&b).unwrap());
    println!("‖A ⊗ B‖ = {} ≤ ‖A‖ ⊗ ‖B‖ = {}", a.otimes(&b).unwrap().norm(), a.norm().otimes(b.norm()));

    let identity = MaxPlusMatrix::identity(2);
    assert_eq!(identity.otimes(&a).unwrap(), a);
    println!("E ⊗ A = A holds; E =\n{identity}");

    // adjacency matrices of acyclic graphs are nilpotent: powers beyond the
    // longest path collapse to the all-ε matrix
    let mut g = MaxPlusMatrix::eps(4, 4);
    for (i, j) in [(0, 1), (1, 2), (2, 3), (0, 2)] {
        g.set(i, j, MaxPlus::ZERO);
    }
    println!("adjacency of the chain 1→2→3→4 with shortcut 1→3:\n{g}");
    for q in 1..=4 {
        let power = g.pow(q).unwrap();
        let finite = power.entries().filter(|v| !v.is_eps()).count();
        println!("G^⊗{q} has {finite} finite entries (paths with exactly {q} edges)");
    }
    assert_eq!(g.pow(4).unwrap(), MaxPlusMatrix::eps(4, 4));
}
