//! Spectral fixtures on the round sphere `S^{2n+1} ⊂ ℂ^{n+1}` with its
//! standard contact form.
//!
//! Harmonic polynomials of bidegree `(a, b)` (degree `a` in `z`, `b` in
//! `z̄`) restrict to joint eigenfunctions with
//! `p = 2ab + n(a+b)` and `q = b − a`. The Reeb field is
//! `ξ = √−1 Σ (zⁱ∂_i − z̄ⁱ∂_ī)`, which gives `q`; `p` follows from the
//! round Laplacian eigenvalue `d(d+2n)`, `d = a + b`, split as
//! `2p + q²`.

use serde::{Deserialize, Serialize};

use crate::exact::Rational;
use crate::spectral::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub a: u32,
    pub b: u32,
}

impl Bidegree {
    pub fn new(a: u32, b: u32) -> Self {
        Bidegree { a, b }
    }

    pub fn degree(&self) -> u32 {
        self.a + self.b
    }

    /// Holomorphic or antiholomorphic: real parts are CR pluriharmonic.
    pub fn is_pluriharmonic(&self) -> bool {
        self.a == 0 || self.b == 0
    }
}

pub fn mode_from_bidegree(n: u32, bd: Bidegree) -> Mode {
    let (a, b, n) = (i64::from(bd.a), i64::from(bd.b), i64::from(n));
    Mode::new(
        Rational::from(2 * a * b + n * (a + b)),
        Rational::from(b - a),
    )
    .expect("p is non-negative")
}

/// Every bidegree with `a + b ≤ max_degree`, ordered by total degree and
/// then by `q = b − a`.
pub fn enumerate_modes(n: u32, max_degree: u32) -> Vec<(Bidegree, Mode)> {
    (0..=max_degree)
        .flat_map(|d| (0..=d).rev().map(move |a| Bidegree::new(a, d - a)))
        .map(|bd| (bd, mode_from_bidegree(n, bd)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: i64, q: i64) -> Mode {
        Mode::new(p.into(), q.into()).unwrap()
    }

    #[test]
    fn bidegree_modes() {
        assert_eq!(mode_from_bidegree(1, Bidegree::new(0, 0)), m(0, 0));
        assert_eq!(mode_from_bidegree(1, Bidegree::new(1, 0)), m(1, -1));
        assert_eq!(mode_from_bidegree(2, Bidegree::new(1, 1)), m(6, 0));
    }

    #[test]
    fn enumeration() {
        let e = enumerate_modes(1, 1);
        assert_eq!(
            e,
            vec![
                (Bidegree::new(0, 0), m(0, 0)),
                (Bidegree::new(1, 0), m(1, -1)),
                (Bidegree::new(0, 1), m(1, 1)),
            ]
        );
        assert_eq!(enumerate_modes(2, 0).len(), 1);
        let e = enumerate_modes(1, 2);
        assert_eq!(e.len(), 6);
        assert!(e.contains(&(Bidegree::new(1, 1), m(4, 0))));
        assert!(e.contains(&(Bidegree::new(2, 0), m(2, -2))));
    }

    #[test]
    fn labels_distinct_up_to_degree_8() {
        for n in 1..=4 {
            let mut modes: Vec<Mode> = enumerate_modes(n, 8).into_iter().map(|(_, m)| m).collect();
            let total = modes.len();
            modes.sort();
            modes.dedup();
            assert_eq!(modes.len(), total, "duplicate (p, q) for n = {n}");
        }
    }
}
