//! Sign of the second variation of the total Q′-curvature, mode by mode.
//!
//! The second variation along a deformation with potential `φ` is
//! `c′_n ∫ φ · P_{1,1} φ` with `c′_n = −2/((n+1)(n+2)) < 0`, so on an
//! eigenmode its sign is the opposite of the `P_{1,1}` eigenvalue. That
//! eigenvalue splits into four edge factors (`j ∈ {0, 1, n+1, n+2}`), whose
//! product is the product of the two edge quantities, and the middle factors
//! `j = 2..=n`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, ExactScalar, Rational};
use crate::spectral::{in_kernel_d, in_kernel_dbar, is_realizable, Geometry, Mode};

/// Sign of the second variation along a single mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SecondVariationSign {
    Negative,
    Zero,
    Positive,
}

impl SecondVariationSign {
    /// Sign of `c′_n · p11` given the sign of `p11`.
    pub fn from_p11(p11: &Rational) -> Self {
        match p11.signum() {
            Ordering::Greater => SecondVariationSign::Negative,
            Ordering::Equal => SecondVariationSign::Zero,
            Ordering::Less => SecondVariationSign::Positive,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            SecondVariationSign::Negative => "negative",
            SecondVariationSign::Zero => "zero",
            SecondVariationSign::Positive => "positive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeClassification {
    pub mode: Mode,
    pub p11: Rational,
    pub edge_product: Rational,
    pub middle_product: Rational,
    pub in_ker_d: bool,
    pub in_ker_dbar: bool,
    pub sv_sign: SecondVariationSign,
}

/// `½p + ½(n+2−2j)q + λ(j−1)(n+1−j)`, the `j`-th factor of `P_{1,1}`.
pub fn p11_factor(g: &Geometry, m: &Mode, j: u32) -> Rational {
    let half = Rational::frac(1, 2);
    let n = i64::from(g.n());
    let j = i64::from(j);
    &half * m.p()
        + half * Rational::from(n + 2 - 2 * j) * m.q()
        + g.lambda() * Rational::from((j - 1) * (n + 1 - j))
}

/// Eigenvalue of `P_{1,1}` as the explicit `(n+3)`-fold product.
pub fn p11_eigenvalue(g: &Geometry, m: &Mode) -> Rational {
    (0..=g.n() + 2).map(|j| p11_factor(g, m, j)).product()
}

/// Product of the factors `j ∈ {0, 1, n+1, n+2}`.
pub fn edge_product(g: &Geometry, m: &Mode) -> Rational {
    let n = g.n();
    [0, 1, n + 1, n + 2]
        .into_iter()
        .map(|j| p11_factor(g, m, j))
        .product()
}

/// Product of the factors `j = 2..=n`; empty (1) when `n = 1`.
pub fn middle_product(g: &Geometry, m: &Mode) -> Rational {
    (2..=g.n()).map(|j| p11_factor(g, m, j)).product()
}

/// `c′_n = −2/((n+1)(n+2))`.
pub fn second_variation_constant(n: u32) -> Rational {
    let n = i64::from(n);
    Rational::frac(-2, (n + 1) * (n + 2))
}

/// `c_n = 2·n!·(n+2)!`.
pub fn first_variation_constant(n: u32) -> BigInt {
    BigInt::from(2) * factorial(n) * factorial(n + 2)
}

/// First variation of the total Q′-curvature under any deformation of a
/// closed Sasakian η-Einstein manifold inside its cone.
///
/// It is `c_n ∫ φ·O` and the obstruction function `O` vanishes identically
/// for these manifolds, so the result is always zero.
pub fn first_variation(_g: &Geometry) -> ExactScalar {
    ExactScalar::zero()
}

pub fn classify_mode(g: &Geometry, m: &Mode) -> ModeClassification {
    let edge = edge_product(g, m);
    let middle = middle_product(g, m);
    let p11 = &edge * &middle;
    ModeClassification {
        mode: m.clone(),
        sv_sign: SecondVariationSign::from_p11(&p11),
        p11,
        edge_product: edge,
        middle_product: middle,
        in_ker_d: in_kernel_d(g, m),
        in_ker_dbar: in_kernel_dbar(g, m),
    }
}

/// Candidate modes `(i/D, j/D)` with `0 ≤ p ≤ p_max`, `|q| ≤ q_max`, in
/// lexicographic `(p, q)` order.
fn scan_grid(p_max: &Rational, q_max: &Rational, denom: u32) -> Result<Vec<Mode>> {
    if p_max.is_negative() || q_max.is_negative() {
        return Err(Error::SpecViolation(
            "scan bounds must be non-negative".into(),
        ));
    }
    if denom == 0 {
        return Err(Error::SpecViolation(
            "denominator bound must be at least 1".into(),
        ));
    }
    let d = Rational::from(i64::from(denom));
    let ip = (p_max * &d).floor();
    let iq = (q_max * &d).floor();
    let ip = i64::try_from(ip).map_err(|_| Error::SpecViolation("p_max too large".into()))?;
    let iq = i64::try_from(iq).map_err(|_| Error::SpecViolation("q_max too large".into()))?;
    let den = i64::from(denom);
    let mut out = Vec::with_capacity(((ip + 1) * (2 * iq + 1)) as usize);
    for i in 0..=ip {
        for j in -iq..=iq {
            out.push(Mode::new(Rational::frac(i, den), Rational::frac(j, den))?);
        }
    }
    Ok(out)
}

fn classify_if_realizable(g: &Geometry, m: &Mode) -> Option<ModeClassification> {
    is_realizable(g, m).then(|| classify_mode(g, m))
}

/// [`scan_modes`] evaluated on the calling thread.
pub fn scan_modes_sequential(
    g: &Geometry,
    p_max: &Rational,
    q_max: &Rational,
    denom: u32,
) -> Result<Vec<ModeClassification>> {
    let grid = scan_grid(p_max, q_max, denom)?;
    Ok(grid
        .iter()
        .filter_map(|m| classify_if_realizable(g, m))
        .collect())
}

/// [`scan_modes`] evaluated on the rayon pool.
#[cfg(feature = "parallel")]
pub fn scan_modes_parallel(
    g: &Geometry,
    p_max: &Rational,
    q_max: &Rational,
    denom: u32,
) -> Result<Vec<ModeClassification>> {
    use rayon::prelude::*;

    let grid = scan_grid(p_max, q_max, denom)?;
    // Indexed collect keeps the grid order.
    let classified: Vec<Option<ModeClassification>> = grid
        .par_iter()
        .map(|m| classify_if_realizable(g, m))
        .collect();
    Ok(classified.into_iter().flatten().collect())
}

/// Classifies every realizable mode on the grid with denominators dividing
/// `denom`, `0 ≤ p ≤ p_max` and `|q| ≤ q_max`.
///
/// Modes failing admissibility or either edge inequality cannot occur on a
/// closed manifold and are dropped. Output is sorted by `(p, q)` regardless
/// of how evaluation is scheduled.
pub fn scan_modes(
    g: &Geometry,
    p_max: &Rational,
    q_max: &Rational,
    denom: u32,
) -> Result<Vec<ModeClassification>> {
    #[cfg(feature = "parallel")]
    {
        scan_modes_parallel(g, p_max, q_max, denom)
    }
    #[cfg(not(feature = "parallel"))]
    {
        scan_modes_sequential(g, p_max, q_max, denom)
    }
}

/// Counts of each sign in a scan.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignSummary {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

impl SignSummary {
    pub fn of(entries: &[ModeClassification]) -> Self {
        entries.iter().fold(SignSummary::default(), |mut s, c| {
            match c.sv_sign {
                SecondVariationSign::Negative => s.negative += 1,
                SecondVariationSign::Zero => s.zero += 1,
                SecondVariationSign::Positive => s.positive += 1,
            }
            s
        })
    }
}

/// A witness from the tube over `Σⁿ` (`Σ` a hyperbolic genus-2 surface):
/// the geometry, the pulled-back eigenmode and its classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub geometry: Geometry,
    pub mode: Mode,
    pub classification: ModeClassification,
}

/// `λ = −1/(n+1)`: the tube over `Σⁿ` has Einstein constant −1.
pub fn tube_geometry(n: u32) -> Result<Geometry> {
    Geometry::new(n, Rational::frac(-1, i64::from(n) + 1))
}

/// Infinitesimally non-trivial deformation with vanishing second variation,
/// for `n ≥ 2`: the mode `(2(n−1)/(n+1), 0)` kills the `j = 2` factor.
pub fn counterexample_vanishing(n: u32) -> Result<Counterexample> {
    if n < 2 {
        return Err(Error::InvalidDimension {
            n,
            reason: "requires n >= 2",
        });
    }
    let geometry = tube_geometry(n)?;
    let ni = i64::from(n);
    let mode = Mode::new(Rational::frac(2 * (ni - 1), ni + 1), Rational::zero())?;
    let classification = classify_mode(&geometry, &mode);
    Ok(Counterexample {
        geometry,
        mode,
        classification,
    })
}

/// Deformation with positive second variation, for even `n ≥ 2`.
///
/// Returns the mode `(1/D, 0)` with the smallest `D ≥ 1` for which the
/// `P_{1,1}` eigenvalue is negative. Writing `n = 2m`, the eigenvalue has
/// the sign of `½p − m²/(2m+1)` away from the roots of the squared factors,
/// so such a `D` always exists.
pub fn counterexample_positive(n: u32) -> Result<Counterexample> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidDimension {
            n,
            reason: "requires even n >= 2",
        });
    }
    let geometry = tube_geometry(n)?;
    for d in 1i64.. {
        let mode = Mode::new(Rational::frac(1, d), Rational::zero())?;
        let classification = classify_mode(&geometry, &mode);
        if classification.sv_sign == SecondVariationSign::Positive {
            return Ok(Counterexample {
                geometry,
                mode,
                classification,
            });
        }
    }
    unreachable!("p11 is negative for all sufficiently small p")
}
