//! Q′-curvature and total Q′-curvature of explicit Sasakian η-Einstein
//! manifolds.
//!
//! The Q′-curvature of a Sasakian η-Einstein manifold is the constant
//! `2(n!)²λ^{n+1}`, so the total is that constant times
//! `∫ η ∧ (dη)^n = 2ⁿ n! Vol(S, g_η)`. For links of cones over projective
//! manifolds the integral is a degree, giving
//! `2^{n+2}(n!)²π^{n+1}λ^{n+1}·deg Y`.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, ExactScalar, QuadRational, Rational};
use crate::spectral::{Geometry, Mode};
use crate::variation::{classify_mode, ModeClassification};

/// A manifold from the catalog. The Y^{p,q} indices are `(p, q)` in the
/// usual notation, unrelated to the spectral pair `(p, q)` of a [`Mode`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ManifoldSpec {
    /// `S^{2n+1}` with its standard Sasaki–Einstein structure.
    Sphere { n: u32 },
    /// The Sasaki–Einstein 5-manifolds `Y^{p,q}`, `q < p` coprime.
    Ypq { p: u64, q: u64 },
    /// Link of the affine cone over a Kähler–Einstein projective manifold
    /// of dimension `n`, Einstein constant `(n+1)λ` and given degree.
    ProjectiveLink {
        n: u32,
        lambda: Rational,
        degree: u64,
    },
    /// Link of the cone over the quadric `z₁² + … + z_{n+2}² = 0`.
    #[serde(rename = "fermat_quadric")]
    FermatQuadricLink { n: u32 },
    /// Link of the cone over `G(k, n_amb)` in its Plücker embedding.
    #[serde(rename = "grassmannian")]
    GrassmannianLink { k: u32, n_amb: u32 },
    /// Unit circle bundle of `K^{-1}` over `Σⁿ`, `Σ` hyperbolic of genus 2,
    /// together with a Laplace eigenvalue `p_eig ∈ (0, 2)` on `Σ`.
    #[serde(rename = "surface_tube")]
    SurfaceProductTube { n: u32, p_eig: Rational },
}

/// Serializes a `BigInt` as a JSON integer when it fits in `u64`, else as a
/// decimal string.
mod big_int_opt {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            None => s.serialize_none(),
            Some(x) => match u64::try_from(x) {
                Ok(small) => s.serialize_some(&small),
                Err(_) => s.serialize_some(&x.to_string()),
            },
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(u64),
            Str(String),
        }
        Ok(match Option::<Repr>::deserialize(d)? {
            None => None,
            Some(Repr::Int(n)) => Some(BigInt::from(n)),
            Some(Repr::Str(s)) => Some(s.parse().map_err(serde::de::Error::custom)?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub geometry: Geometry,
    pub total_qprime: ExactScalar,
    pub qprime_density: ExactScalar,
    /// Riemannian volume of `(S, g_η)`.
    pub volume: ExactScalar,
    #[serde(with = "big_int_opt", default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<BigInt>,
    /// Set when the volume is not known in closed form: `volume` and
    /// `total_qprime` are then coefficients of this formal symbol.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume_unit: Option<String>,
    /// The surface eigenmode pulled back to the tube, classified.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tube_mode: Option<ModeClassification>,
}

fn pow2(k: u32) -> Rational {
    Rational::from_integer(BigInt::from(1) << k)
}

fn fact(m: u32) -> Rational {
    Rational::from_integer(factorial(m))
}

/// `2(n!)²λ^{n+1}`.
pub fn qprime_density(g: &Geometry) -> ExactScalar {
    let n = g.n();
    ExactScalar::from_rational(Rational::from(2) * fact(n).pow(2) * g.lambda().pow(n + 1))
}

/// `2^{n+1}(n!)³λ^{n+1}`, the ratio of total Q′-curvature to volume.
pub fn volume_factor(g: &Geometry) -> Rational {
    let n = g.n();
    pow2(n + 1) * fact(n).pow(3) * g.lambda().pow(n + 1)
}

/// Recovers `Vol(S, g_η)` from the total Q′-curvature.
pub fn volume_from_total(g: &Geometry, total: &ExactScalar) -> Result<ExactScalar> {
    if g.lambda().is_zero() {
        return Err(Error::ZeroEinsteinConstant);
    }
    total.checked_div_rational(&volume_factor(g))
}

/// Degree of `G(k, N)` under the Plücker embedding:
/// `(k(N−k))! ∏_{i=1}^{k} (i−1)!/(N−k+i−1)!`.
pub fn grassmannian_degree(k: u32, n_amb: u32) -> Result<BigInt> {
    if k == 0 || k >= n_amb {
        return Err(Error::SpecViolation(format!(
            "Grassmannian G(k, n) needs 1 <= k < n, got k = {k}, n = {n_amb}"
        )));
    }
    let dim = k * (n_amb - k);
    let value: Rational = (1..=k)
        .map(|i| &fact(i - 1) / &fact(n_amb - k + i - 1))
        .fold(fact(dim), |acc, x| acc * x);
    Ok(value
        .to_integer()
        .expect("Grassmannian degree is an integer"))
}

/// `2^{n+2}(n!)²λ^{n+1}·deg·π^{n+1}`.
pub fn projective_link_total(n: u32, lambda: &Rational, degree: &BigInt) -> ExactScalar {
    let c = pow2(n + 2) * fact(n).pow(2) * lambda.pow(n + 1) * Rational::from(degree.clone());
    ExactScalar::term(QuadRational::rational(c), n + 1)
}

fn ypq_total(p: u64, q: u64) -> Result<ExactScalar> {
    // 2⁶ q² (2p + √D) / (3p² (3q² − 2p² + p√D)) · π³,  D = 4p² − 3q²
    let (pi, qi) = (i64::try_from(p), i64::try_from(q));
    let (Ok(pi), Ok(qi)) = (pi, qi) else {
        return Err(Error::SpecViolation("Y^{p,q} indices too large".into()));
    };
    let disc = u64::try_from(4 * pi * pi - 3 * qi * qi).expect("4p² > 3q² when q < p");
    let root = QuadRational::sqrt(disc);
    let num = QuadRational::rational(Rational::from(2 * pi))
        .checked_add(&root)?
        .scale(&Rational::from(64 * qi * qi));
    let den = QuadRational::rational(Rational::from(3 * qi * qi - 2 * pi * pi))
        .checked_add(&root.scale(&Rational::from(pi)))?
        .scale(&Rational::from(3 * pi * pi));
    Ok(ExactScalar::term(num.checked_div(&den)?, 3))
}

impl ManifoldSpec {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::SpecViolation(msg));
        match self {
            ManifoldSpec::Sphere { n } | ManifoldSpec::FermatQuadricLink { n } if *n == 0 => {
                fail("n must be at least 1".into())
            }
            ManifoldSpec::Ypq { p, q } => {
                if *q == 0 || q >= p {
                    fail(format!("Y^{{p,q}} needs 0 < q < p, got p = {p}, q = {q}"))
                } else if p.gcd(q) != 1 {
                    fail("p,q must be coprime".into())
                } else if *p > 1 << 20 {
                    fail("Y^{p,q} indices too large".into())
                } else {
                    Ok(())
                }
            }
            ManifoldSpec::ProjectiveLink { n, degree, .. } => {
                if *n == 0 {
                    fail("n must be at least 1".into())
                } else if *degree == 0 {
                    fail("degree must be positive".into())
                } else {
                    Ok(())
                }
            }
            ManifoldSpec::GrassmannianLink { k, n_amb } => {
                if *k == 0 || k >= n_amb {
                    fail(format!(
                        "Grassmannian G(k, n) needs 1 <= k < n, got k = {k}, n = {n_amb}"
                    ))
                } else {
                    Ok(())
                }
            }
            ManifoldSpec::SurfaceProductTube { n, p_eig } => {
                if *n < 2 {
                    fail("surface tube needs n >= 2".into())
                } else if !p_eig.is_positive() || p_eig >= &Rational::from(2) {
                    fail(format!(
                        "surface eigenvalue must lie in (0, 2), got {p_eig}"
                    ))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// `(n, λ)` for the variant.
    pub fn geometry(&self) -> Result<Geometry> {
        self.validate()?;
        let (n, lambda) = match self {
            ManifoldSpec::Sphere { n } => (*n, Rational::one()),
            ManifoldSpec::Ypq { .. } => (2, Rational::one()),
            ManifoldSpec::ProjectiveLink { n, lambda, .. } => (*n, lambda.clone()),
            ManifoldSpec::FermatQuadricLink { n } => {
                (*n, Rational::frac(i64::from(*n), i64::from(*n) + 1))
            }
            ManifoldSpec::GrassmannianLink { k, n_amb } => {
                let m = k * (n_amb - k);
                (m, Rational::frac(i64::from(*n_amb), i64::from(m) + 1))
            }
            ManifoldSpec::SurfaceProductTube { n, .. } => {
                (*n, Rational::frac(-1, i64::from(*n) + 1))
            }
        };
        Geometry::new(n, lambda)
    }
}

/// Total Q′-curvature, Q′ density and volume for a catalog manifold.
pub fn total_qprime(spec: &ManifoldSpec) -> Result<InvariantReport> {
    let geometry = spec.geometry()?;
    let n = geometry.n();
    let density = qprime_density(&geometry);
    let mut degree = None;
    let mut volume_unit = None;
    let mut tube_mode = None;
    let total = match spec {
        ManifoldSpec::Sphere { n } => {
            let c = pow2(n + 2) * fact(*n).pow(2);
            ExactScalar::term(QuadRational::rational(c), n + 1)
        }
        ManifoldSpec::Ypq { p, q } => ypq_total(*p, *q)?,
        ManifoldSpec::ProjectiveLink {
            n,
            lambda,
            degree: deg,
        } => {
            let deg = BigInt::from(*deg);
            let t = projective_link_total(*n, lambda, &deg);
            degree = Some(deg);
            t
        }
        ManifoldSpec::FermatQuadricLink { n } => {
            // 2^{n+3}(n!)² n^{n+1} (n+1)^{-(n+1)} π^{n+1}
            let ni = i64::from(*n);
            let c = pow2(n + 3) * fact(*n).pow(2) * Rational::frac(ni, ni + 1).pow(n + 1);
            degree = Some(BigInt::from(2));
            ExactScalar::term(QuadRational::rational(c), n + 1)
        }
        ManifoldSpec::GrassmannianLink { k, n_amb } => {
            // 2^{m+2}(m!)² (N/(m+1))^{m+1} π^{m+1} · deg G(k, N),  m = k(N−k)
            let deg = grassmannian_degree(*k, *n_amb)?;
            let m = n;
            let ratio = Rational::frac(i64::from(*n_amb), i64::from(m) + 1);
            let c = pow2(m + 2) * fact(m).pow(2) * ratio.pow(m + 1) * Rational::from(deg.clone());
            degree = Some(deg);
            ExactScalar::term(QuadRational::rational(c), m + 1)
        }
        ManifoldSpec::SurfaceProductTube { p_eig, .. } => {
            // Vol(Σ) has no closed form; report per unit volume.
            volume_unit = Some("Vol(S)".to_string());
            let mode = Mode::new(p_eig.clone(), Rational::zero())?;
            tube_mode = Some(classify_mode(&geometry, &mode));
            ExactScalar::from_rational(volume_factor(&geometry))
        }
    };
    let volume = match spec {
        ManifoldSpec::SurfaceProductTube { .. } => ExactScalar::one(),
        _ => volume_from_total(&geometry, &total)?,
    };
    Ok(InvariantReport {
        geometry,
        total_qprime: total,
        qprime_density: density,
        volume,
        degree,
        volume_unit,
        tube_mode,
    })
}

/// `ψ_λ(x) = (e^{λx} − 1)/λ`, and `x` at `λ = 0`.
///
/// Evaluated with `exp_m1` so the function stays accurate (and continuous)
/// as `λ → 0`. Large `λx` overflows to infinity like `f64::exp`.
pub fn psi_lambda(lambda: &Rational, x: f64) -> f64 {
    if lambda.is_zero() {
        return x;
    }
    let l = lambda.to_f64();
    (l * x).exp_m1() / l
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi_term(c: Rational, k: u32) -> ExactScalar {
        ExactScalar::term(QuadRational::rational(c), k)
    }

    #[test]
    fn densities() {
        let g = |n, l: i64| Geometry::new(n, l.into()).unwrap();
        assert_eq!(
            qprime_density(&g(1, 1)),
            ExactScalar::from_rational(2.into())
        );
        assert_eq!(
            qprime_density(&g(2, 1)),
            ExactScalar::from_rational(8.into())
        );
        assert!(qprime_density(&g(3, 0)).is_zero());
    }

    #[test]
    fn sphere_totals() {
        let r = total_qprime(&ManifoldSpec::Sphere { n: 1 }).unwrap();
        assert_eq!(r.total_qprime, pi_term(8.into(), 2));
        assert_eq!(r.volume, pi_term(2.into(), 2));
        let r = total_qprime(&ManifoldSpec::Sphere { n: 2 }).unwrap();
        assert_eq!(r.total_qprime, pi_term(64.into(), 3));
        assert_eq!(r.volume, ExactScalar::pi_pow(3));
    }

    #[test]
    fn ypq_21() {
        let r = total_qprime(&ManifoldSpec::Ypq { p: 2, q: 1 }).unwrap();
        let expected = QuadRational::new(Rational::frac(736, 81), Rational::frac(208, 81), 13);
        assert_eq!(r.total_qprime, ExactScalar::term(expected, 3));
    }

    #[test]
    fn ypq_validation() {
        let err = total_qprime(&ManifoldSpec::Ypq { p: 4, q: 2 }).unwrap_err();
        assert_eq!(err, Error::SpecViolation("p,q must be coprime".into()));
        assert!(total_qprime(&ManifoldSpec::Ypq { p: 2, q: 3 }).is_err());
        assert!(total_qprime(&ManifoldSpec::Ypq { p: 2, q: 0 }).is_err());
    }

    #[test]
    fn fermat_and_grassmannian() {
        let r = total_qprime(&ManifoldSpec::FermatQuadricLink { n: 2 }).unwrap();
        assert_eq!(r.total_qprime, pi_term(Rational::frac(1024, 27), 3));
        let r = total_qprime(&ManifoldSpec::GrassmannianLink { k: 2, n_amb: 4 }).unwrap();
        assert_eq!(r.total_qprime, pi_term(Rational::frac(75_497_472, 3125), 5));
        assert_eq!(r.degree, Some(BigInt::from(2)));
        assert_eq!(r.geometry.lambda(), &Rational::frac(4, 5));
    }

    #[test]
    fn degrees() {
        for n in 2..=10 {
            assert_eq!(grassmannian_degree(1, n).unwrap(), BigInt::from(1));
        }
        assert_eq!(grassmannian_degree(2, 4).unwrap(), BigInt::from(2));
        assert_eq!(grassmannian_degree(2, 5).unwrap(), BigInt::from(5));
        assert_eq!(grassmannian_degree(3, 6).unwrap(), BigInt::from(42));
        assert!(grassmannian_degree(0, 3).is_err());
        assert!(grassmannian_degree(3, 3).is_err());
    }

    #[test]
    fn volume_backout() {
        let g1 = Geometry::new(1, 1.into()).unwrap();
        assert_eq!(
            volume_from_total(&g1, &pi_term(8.into(), 2)).unwrap(),
            pi_term(2.into(), 2)
        );
        let g0 = Geometry::new(1, 0.into()).unwrap();
        assert_eq!(
            volume_from_total(&g0, &ExactScalar::one()),
            Err(Error::ZeroEinsteinConstant)
        );
    }

    #[test]
    fn tube_report() {
        let r = total_qprime(&ManifoldSpec::SurfaceProductTube {
            n: 2,
            p_eig: Rational::frac(2, 3),
        })
        .unwrap();
        assert_eq!(r.geometry.lambda(), &Rational::frac(-1, 3));
        assert_eq!(r.volume_unit.as_deref(), Some("Vol(S)"));
        // 2³·(2!)³·(−1/3)³ = −64/27
        assert_eq!(
            r.total_qprime,
            ExactScalar::from_rational(Rational::frac(-64, 27))
        );
        assert!(r.tube_mode.unwrap().p11.is_zero());
        assert!(total_qprime(&ManifoldSpec::SurfaceProductTube {
            n: 2,
            p_eig: 2.into()
        })
        .is_err());
        assert!(total_qprime(&ManifoldSpec::SurfaceProductTube {
            n: 1,
            p_eig: 1.into()
        })
        .is_err());
    }

    #[test]
    fn spec_json() {
        let s: ManifoldSpec = serde_json::from_str(r#"{"kind":"ypq","p":2,"q":1}"#).unwrap();
        assert_eq!(s, ManifoldSpec::Ypq { p: 2, q: 1 });
        let s: ManifoldSpec =
            serde_json::from_str(r#"{"kind":"surface_tube","n":2,"p_eig":"1/3"}"#).unwrap();
        assert_eq!(
            s,
            ManifoldSpec::SurfaceProductTube {
                n: 2,
                p_eig: Rational::frac(1, 3)
            }
        );
        let s: ManifoldSpec =
            serde_json::from_str(r#"{"kind":"projective_link","n":1,"lambda":"1/1","degree":1}"#)
                .unwrap();
        assert_eq!(
            s,
            ManifoldSpec::ProjectiveLink {
                n: 1,
                lambda: 1.into(),
                degree: 1
            }
        );
        assert!(serde_json::from_str::<ManifoldSpec>(r#"{"kind":"torus","n":2}"#).is_err());
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi_lambda(&0.into(), 3.5), 3.5);
        assert_eq!(psi_lambda(&Rational::frac(7, 3), 0.0), 0.0);
        assert!((psi_lambda(&1.into(), 1.0) - (std::f64::consts::E - 1.0)).abs() < 1e-12);
    }
}
