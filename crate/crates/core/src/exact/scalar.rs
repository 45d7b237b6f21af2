use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{decimal, QuadRational, Rational};
use crate::error::Error;

/// A polynomial in the formal symbol π with coefficients in ℚ(√d).
///
/// Every coefficient shares the same square-free `d` (or is rational). Zero
/// coefficients are never stored, so the zero scalar has no terms and
/// `d == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    terms: BTreeMap<u32, QuadRational>,
    d: u64,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::term(QuadRational::rational(r), 0)
    }

    /// `coef · π^pi`.
    pub fn term(coef: QuadRational, pi: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(pi, coef);
        }
        Self::normalized(terms)
    }

    /// `π^k` with unit coefficient.
    pub fn pi_pow(k: u32) -> Self {
        Self::term(QuadRational::one(), k)
    }

    fn normalized(mut terms: BTreeMap<u32, QuadRational>) -> Self {
        terms.retain(|_, c| !c.is_zero());
        let d = terms
            .values()
            .map(QuadRational::d)
            .find(|&d| d != 0)
            .unwrap_or(0);
        ExactScalar { terms, d }
    }

    /// Shared discriminant, 0 when every coefficient is rational.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending π-exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &QuadRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coefficient(&self, pi: u32) -> QuadRational {
        self.terms.get(&pi).cloned().unwrap_or_default()
    }

    /// The single `(exponent, coefficient)` pair of a monomial.
    pub fn as_monomial(&self) -> Option<(u32, &QuadRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    /// The rational value of a scalar with only a rational π⁰ term.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.as_monomial() {
            None if self.is_zero() => Some(Rational::zero()),
            Some((0, c)) if c.is_rational() => Some(c.a().clone()),
            _ => None,
        }
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self, Error> {
        // Checked up front: terms with disjoint exponents never meet below.
        if self.d != 0 && rhs.d != 0 && self.d != rhs.d {
            return Err(Error::DiscriminantMismatch(self.d, rhs.d));
        }
        let mut terms = self.terms.clone();
        for (k, c) in &rhs.terms {
            let sum = match terms.get(k) {
                Some(x) => x.checked_add(c)?,
                None => c.clone(),
            };
            terms.insert(*k, sum);
        }
        Ok(Self::normalized(terms))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self, Error> {
        self.checked_add(&rhs.neg())
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, Error> {
        if self.d != 0 && rhs.d != 0 && self.d != rhs.d {
            return Err(Error::DiscriminantMismatch(self.d, rhs.d));
        }
        let mut terms: BTreeMap<u32, QuadRational> = BTreeMap::new();
        for (i, x) in &self.terms {
            for (j, y) in &rhs.terms {
                let prod = x.checked_mul(y)?;
                let slot = terms.entry(i + j).or_default();
                *slot = slot.checked_add(&prod)?;
            }
        }
        Ok(Self::normalized(terms))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::normalized(self.terms.iter().map(|(e, c)| (*e, c.scale(k))).collect())
    }

    pub fn checked_div_rational(&self, k: &Rational) -> Result<Self, Error> {
        Ok(self.scale(&k.recip()?))
    }

    pub fn neg(&self) -> Self {
        ExactScalar {
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
            d: self.d,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| c.to_f64() * std::f64::consts::PI.powi(*k as i32))
            .sum()
    }

    /// Decimal expansion with `digits` fractional digits, correctly rounded.
    pub fn to_decimal(&self, digits: u32) -> String {
        decimal::render(self, digits)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let pi = match k {
                0 => String::new(),
                1 => "π".to_string(),
                k => format!("π^{k}"),
            };
            let unit = c.is_rational() && c.a() == &Rational::one();
            match (pi.is_empty(), unit) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => f.write_str(&pi)?,
                (false, false) => write!(f, "{c}·{pi}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermRepr {
    pi: u32,
    a: Rational,
    b: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScalarRepr {
    d: u64,
    terms: Vec<TermRepr>,
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ScalarRepr {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| TermRepr {
                    pi: *k,
                    a: c.a().clone(),
                    b: c.b().clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(de)?;
        let (root, rest) = super::quad::square_free_part(repr.d);
        if repr.d != 0 && (root != 1 || rest == 1) {
            return Err(D::Error::custom(format!(
                "discriminant {} is not square-free",
                repr.d
            )));
        }
        let mut terms = BTreeMap::new();
        for t in repr.terms {
            if !t.b.is_zero() && repr.d == 0 {
                return Err(D::Error::custom("surd coefficient with d = 0"));
            }
            let c = QuadRational::new(t.a, t.b, repr.d);
            if terms.insert(t.pi, c).is_some() {
                return Err(D::Error::custom(format!("duplicate π exponent {}", t.pi)));
            }
        }
        Ok(Self::normalized(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: Rational, b: Rational, d: u64) -> QuadRational {
        QuadRational::new(a, b, d)
    }

    #[test]
    fn like_terms_combine() {
        let half = ExactScalar::term(QuadRational::rational(Rational::frac(1, 2)), 2);
        assert_eq!(half.checked_add(&half).unwrap(), ExactScalar::pi_pow(2));
    }

    #[test]
    fn cancellation_keeps_surd() {
        let x = ExactScalar::term(q(3.into(), 1.into(), 13), 3);
        let y = ExactScalar::term(QuadRational::rational((-3).into()), 3);
        let s = x.checked_add(&y).unwrap();
        assert_eq!(s, ExactScalar::term(QuadRational::sqrt(13), 3));
        assert_eq!(s.d(), 13);
    }

    #[test]
    fn surd_cancellation_drops_discriminant() {
        let x = ExactScalar::term(q(3.into(), 1.into(), 13), 3);
        let y = ExactScalar::term(q(0.into(), (-1).into(), 13), 3);
        let s = x.checked_add(&y).unwrap();
        assert_eq!(s.d(), 0);
        assert_eq!(s, ExactScalar::term(QuadRational::rational(3.into()), 3));
    }

    #[test]
    fn mismatch_rejected() {
        let x = ExactScalar::term(q(1.into(), 1.into(), 13), 3);
        let y = ExactScalar::term(q(1.into(), 1.into(), 5), 3);
        assert_eq!(x.checked_add(&y), Err(Error::DiscriminantMismatch(13, 5)));
        // Also across different exponents.
        let z = ExactScalar::term(q(1.into(), 1.into(), 5), 1);
        assert_eq!(x.checked_add(&z), Err(Error::DiscriminantMismatch(13, 5)));
        assert!(x.checked_mul(&z).is_err());
    }

    #[test]
    fn products() {
        let x = ExactScalar::term(q(4.into(), 1.into(), 13), 0);
        let y = ExactScalar::term(q(5.into(), 2.into(), 13), 0);
        assert_eq!(
            x.checked_mul(&y).unwrap(),
            ExactScalar::term(q(46.into(), 13.into(), 13), 0)
        );
        assert_eq!(
            ExactScalar::pi_pow(1)
                .checked_mul(&ExactScalar::pi_pow(2))
                .unwrap(),
            ExactScalar::pi_pow(3)
        );
        let seven = ExactScalar::term(q(7.into(), 1.into(), 13), 5);
        let z = ExactScalar::zero().checked_mul(&seven).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.d(), 0);
    }

    #[test]
    fn json_shape() {
        let x = ExactScalar::term(q(Rational::frac(736, 81), Rational::frac(208, 81), 13), 3);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(
            s,
            r#"{"d":13,"terms":[{"pi":3,"a":"736/81","b":"208/81"}]}"#
        );
        assert_eq!(serde_json::from_str::<ExactScalar>(&s).unwrap(), x);
        assert!(serde_json::from_str::<ExactScalar>(r#"{"d":4,"terms":[]}"#).is_err());
        assert!(serde_json::from_str::<ExactScalar>(
            r#"{"d":0,"terms":[{"pi":1,"a":"1/1","b":"1/1"}]}"#
        )
        .is_err());
    }

    #[test]
    fn display() {
        let x = ExactScalar::term(q(Rational::frac(736, 81), Rational::frac(208, 81), 13), 3);
        assert_eq!(x.to_string(), "(736 + 208√13)/81·π^3");
        assert_eq!(ExactScalar::pi_pow(1).to_string(), "π");
        assert_eq!(
            ExactScalar::from_rational(Rational::frac(-1, 3)).to_string(),
            "-1/3"
        );
        assert_eq!(
            ExactScalar::term(QuadRational::rational(64.into()), 3).to_string(),
            "64·π^3"
        );
    }
}
