//! Eigenvalues of the CR invariant operators on a joint eigenspace of the
//! sub-Laplacian and the Reeb field.
//!
//! On a Sasakian η-Einstein manifold of CR dimension `n` with Einstein
//! constant `(n+1)λ`, every operator here acts on the joint eigenspace
//! `H(p, q)` (`Δ_b f = p f`, `√−1 ξ f = q f`) by a scalar, so each routine
//! maps a [`Mode`] to an exact [`Rational`].
//!
//! Sign convention: `q` is the eigenvalue of `√−1 ξ`, so complex conjugation
//! sends `q` to `−q`. The sphere fixtures use `q = b − a` for bidegree
//! `(a, b)`, which puts holomorphic polynomials at negative `q`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// CR dimension `n` (the manifold has real dimension `2n + 1`) and the
/// normalized Einstein constant `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGeometry")]
pub struct Geometry {
    n: u32,
    lambda: Rational,
}

impl Geometry {
    pub fn new(n: u32, lambda: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension {
                n,
                reason: "CR dimension must be at least 1",
            });
        }
        Ok(Geometry { n, lambda })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }

    pub(crate) fn n_rat(&self) -> Rational {
        Rational::from(i64::from(self.n))
    }
}

/// Joint eigenvalue pair: `p` for `Δ_b`, `q` for `√−1 ξ`.
///
/// Only `p ≥ 0` is enforced; whether the pair can actually occur is the
/// separate question answered by [`is_admissible`] and
/// [`edge_inequalities_hold`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMode")]
pub struct Mode {
    p: Rational,
    q: Rational,
}

impl Mode {
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        if p.is_negative() {
            return Err(Error::NegativeEigenvalue(p.to_string()));
        }
        Ok(Mode { p, q })
    }

    pub fn constant() -> Self {
        Mode {
            p: Rational::zero(),
            q: Rational::zero(),
        }
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    /// The conjugate mode `(p, −q)`.
    pub fn conj(&self) -> Self {
        Mode {
            p: self.p.clone(),
            q: -&self.q,
        }
    }
}

#[derive(Deserialize)]
struct RawGeometry {
    n: u32,
    lambda: Rational,
}

impl TryFrom<RawGeometry> for Geometry {
    type Error = Error;
    fn try_from(raw: RawGeometry) -> Result<Self> {
        Geometry::new(raw.n, raw.lambda)
    }
}

#[derive(Deserialize)]
struct RawMode {
    p: Rational,
    q: Rational,
}

impl TryFrom<RawMode> for Mode {
    type Error = Error;
    fn try_from(raw: RawMode) -> Result<Self> {
        Mode::new(raw.p, raw.q)
    }
}

/// Density bi-weight `(w, w′)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    pub w: Rational,
    pub w_prime: Rational,
}

impl Weight {
    pub fn new(w: Rational, w_prime: Rational) -> Self {
        Weight { w, w_prime }
    }

    pub fn ints(w: i64, w_prime: i64) -> Self {
        Weight {
            w: w.into(),
            w_prime: w_prime.into(),
        }
    }

    /// `k = w + w′ + n + 1`, required to be a positive integer.
    pub fn order(&self, g: &Geometry) -> Result<u32> {
        let k = &self.w + &self.w_prime + g.n_rat() + Rational::one();
        k.to_integer()
            .and_then(|k| u32::try_from(k).ok())
            .filter(|&k| k > 0)
            .ok_or_else(|| Error::InvalidOrder(k.to_string()))
    }
}

/// Eigenvalue of `L_μ = ½Δ_b + (√−1/2)μξ + ¼λ(n−μ)(n+μ)`.
pub fn l_mu_eigenvalue(g: &Geometry, mu: &Rational, m: &Mode) -> Rational {
    let half = Rational::frac(1, 2);
    let quarter = Rational::frac(1, 4);
    let n = g.n_rat();
    &half * &m.p + &half * mu * &m.q + quarter * &g.lambda * (&n - mu) * (&n + mu)
}

/// Eigenvalue of the GJMS-type operator `P_{w,w′} = ∏_{j<k} L_{w′−w+k−2j−1}`.
///
/// The order `k ≤ n + 1` of the invariant range is not enforced; `P_{1,1}`
/// with `k = n + 3` is a legitimate input.
pub fn gjms_eigenvalue(g: &Geometry, wt: &Weight, m: &Mode) -> Result<Rational> {
    let k = wt.order(g)?;
    let shift = &wt.w_prime - &wt.w + Rational::from(i64::from(k) - 1);
    Ok((0..k)
        .map(|j| {
            let mu = &shift - Rational::from(2 * i64::from(j));
            l_mu_eigenvalue(g, &mu, m)
        })
        .product())
}

/// True when `p = n|q|`, the spectral signature of CR pluriharmonic modes.
pub fn is_pluriharmonic(g: &Geometry, m: &Mode) -> bool {
    m.p == g.n_rat() * m.q.abs()
}

/// Eigenvalue of the P′-operator on a pluriharmonic mode:
/// `n⁻¹ · P_{−1,−1} · (p² + n²λp)`.
///
/// For `n = 1` the factor `P_{−1,−1}` has order 0 and is the identity.
pub fn pprime_eigenvalue(g: &Geometry, m: &Mode) -> Result<Rational> {
    if !is_pluriharmonic(g, m) {
        return Err(Error::NotPluriharmonic {
            p: m.p.to_string(),
            q: m.q.to_string(),
        });
    }
    let n = g.n_rat();
    let biharmonic = &m.p * &m.p + &n * &n * &g.lambda * &m.p;
    let lower = if g.n == 1 {
        Rational::one()
    } else {
        gjms_eigenvalue(g, &Weight::ints(-1, -1), m)?
    };
    Ok(biharmonic * lower / n)
}

/// `p ≥ n|q|`, necessary for `H(p, q) ≠ 0`.
pub fn is_admissible(g: &Geometry, m: &Mode) -> bool {
    m.p >= g.n_rat() * m.q.abs()
}

/// The two factors of the first edge inequality,
/// `(½p + ½nq)` and `(½p + ½(n+2)q − (n+1)λ)`.
pub fn edge_factors_d(g: &Geometry, m: &Mode) -> (Rational, Rational) {
    let half = Rational::frac(1, 2);
    let n = g.n_rat();
    let first = &half * &m.p + &half * &n * &m.q;
    let second =
        &half * &m.p + &half * (&n + Rational::from(2)) * &m.q - (&n + Rational::one()) * &g.lambda;
    (first, second)
}

/// The two factors of the second (conjugate) edge inequality,
/// `(½p − ½nq)` and `(½p − ½(n+2)q − (n+1)λ)`.
pub fn edge_factors_dbar(g: &Geometry, m: &Mode) -> (Rational, Rational) {
    edge_factors_d(g, &m.conj())
}

/// Quantity whose vanishing characterizes `ker D_η`; non-negative on
/// realizable modes.
pub fn edge_quantity_d(g: &Geometry, m: &Mode) -> Rational {
    let (a, b) = edge_factors_d(g, m);
    a * b
}

/// Conjugate of [`edge_quantity_d`], for `ker D̄_η`.
pub fn edge_quantity_dbar(g: &Geometry, m: &Mode) -> Rational {
    let (a, b) = edge_factors_dbar(g, m);
    a * b
}

/// `H(p, q) ⊂ ker D_η`, detected as `L_{n+2} L_n = 0` on the mode.
pub fn in_kernel_d(g: &Geometry, m: &Mode) -> bool {
    let n = g.n_rat();
    let ln = l_mu_eigenvalue(g, &n, m);
    let ln2 = l_mu_eigenvalue(g, &(&n + Rational::from(2)), m);
    (ln * ln2).is_zero()
}

/// `H(p, q) ⊂ ker D̄_η`, detected as `L_{−n−2} L_{−n} = 0` on the mode.
pub fn in_kernel_dbar(g: &Geometry, m: &Mode) -> bool {
    let n = g.n_rat();
    let ln = l_mu_eigenvalue(g, &(-&n), m);
    let ln2 = l_mu_eigenvalue(g, &(-(&n + Rational::from(2))), m);
    (ln * ln2).is_zero()
}

/// Both edge quantities are non-negative.
pub fn edge_inequalities_hold(g: &Geometry, m: &Mode) -> bool {
    !edge_quantity_d(g, m).is_negative() && !edge_quantity_dbar(g, m).is_negative()
}

/// Admissible and satisfies both edge inequalities: the necessary conditions
/// for the mode to occur on a closed Sasakian η-Einstein manifold.
pub fn is_realizable(g: &Geometry, m: &Mode) -> bool {
    is_admissible(g, m) && edge_inequalities_hold(g, m)
}
