//! Symbolic model of S³ used as an independent oracle: polynomials in
//! z1, z2, w1 = z̄1, w2 = z̄2 with the CR vector fields acting by
//! differentiation.
//!
//! On S³ the CR structure is spanned by Z = w2∂_{z1} − w1∂_{z2}, which
//! is unit length for the standard contact form, so Δ_b = −(ZZ̄ + Z̄Z).
//! The Reeb field acts on z^α w^β by √−1 ξ = −(|α| − |β|).
#![allow(dead_code)]

use std::collections::BTreeMap;

/// Exponents of (z1, z2, w1, w2).
pub type Exp = [u32; 4];

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(pub BTreeMap<Exp, i64>);

impl Poly {
    pub fn monomial(e: Exp, c: i64) -> Self {
        let mut p = Poly::default();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: Exp, c: i64) {
        let v = self.0.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&e);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &other.0 {
            r.add_term(*e, *c);
        }
        r
    }

    pub fn scale(&self, k: i64) -> Poly {
        let mut r = Poly::default();
        for (e, c) in &self.0 {
            r.add_term(*e, c * k);
        }
        r
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut r = Poly::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &other.0 {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn diff(&self, var: usize) -> Poly {
        let mut r = Poly::default();
        for (e, c) in &self.0 {
            if e[var] > 0 {
                let mut e2 = *e;
                e2[var] -= 1;
                r.add_term(e2, c * i64::from(e[var]));
            }
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

pub const Z1: usize = 0;
pub const Z2: usize = 1;
pub const W1: usize = 2;
pub const W2: usize = 3;

pub fn var(i: usize) -> Poly {
    let mut e = [0; 4];
    e[i] = 1;
    Poly::monomial(e, 1)
}

pub fn op_z(f: &Poly) -> Poly {
    var(W2)
        .mul(&f.diff(Z1))
        .add(&var(W1).mul(&f.diff(Z2)).scale(-1))
}

pub fn op_zbar(f: &Poly) -> Poly {
    var(Z2)
        .mul(&f.diff(W1))
        .add(&var(Z1).mul(&f.diff(W2)).scale(-1))
}

pub fn sublaplacian(f: &Poly) -> Poly {
    op_z(&op_zbar(f)).add(&op_zbar(&op_z(f))).scale(-1)
}

/// √−1 ξ on a polynomial whose monomials share a bidegree.
pub fn reeb_eigenvalue(f: &Poly) -> i64 {
    let mut values =
        f.0.keys()
            .map(|e| i64::from(e[W1] + e[W2]) - i64::from(e[Z1] + e[Z2]));
    let q = values.next().expect("non-zero polynomial");
    assert!(values.all(|v| v == q), "mixed bidegree");
    q
}

pub fn ambient_laplacian_trace(f: &Poly) -> Poly {
    f.diff(Z1).diff(W1).add(&f.diff(Z2).diff(W2))
}

pub fn pow(p: &Poly, k: u32) -> Poly {
    (0..k).fold(Poly::monomial([0; 4], 1), |acc, _| acc.mul(p))
}

/// Harmonic polynomials of bidegree (a, b): the highest weight vector
/// z1^a w2^b and its images under repeated lowering.
pub fn harmonic_family(a: u32, b: u32) -> Vec<Poly> {
    let top = pow(&var(Z1), a).mul(&pow(&var(W2), b));
    let lower = |f: &Poly| -> Poly {
        // z2∂_{z1} − w1∂_{w2} commutes with Δ_b and preserves harmonicity.
        var(Z2)
            .mul(&f.diff(Z1))
            .add(&var(W1).mul(&f.diff(W2)).scale(-1))
    };
    let mut out = vec![top];
    for _ in 0..(a + b) {
        let next = lower(out.last().unwrap());
        if next.is_zero() {
            break;
        }
        out.push(next);
    }
    out
}

/// Joint eigenvalues `(p, q)` of a polynomial, or `None` if it is not an
/// eigenfunction of Δ_b.
pub fn symbolic_mode(f: &Poly) -> Option<(i64, i64)> {
    let lap = sublaplacian(f);
    let (e, c) = f.0.iter().next()?;
    let p = lap.0.get(e).copied().unwrap_or(0) / c;
    (lap == f.scale(p)).then(|| (p, reeb_eigenvalue(f)))
}
