//! Exact edge weights and matching sums.
//!
//! A [`Weight`] is either an arbitrary-precision rational or a sparse
//! polynomial with rational coefficients. Mixed arithmetic promotes the
//! scalar to a constant polynomial; equality compares canonical forms after
//! promotion, so `Weight::Scalar(2)` equals the constant polynomial `2`.

mod parse;
mod poly;

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use poly::{Monomial, Poly, Var};

use crate::error::Result;

/// Exact rational number in lowest terms with positive denominator.
pub type Scalar = BigRational;

#[derive(Clone, Debug)]
pub enum Weight {
    Scalar(Scalar),
    Poly(Poly),
}

impl Weight {
    pub fn zero() -> Self {
        Weight::Scalar(Scalar::zero())
    }

    pub fn one() -> Self {
        Weight::Scalar(Scalar::one())
    }

    pub fn int(n: i64) -> Self {
        Weight::Scalar(Scalar::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Weight::Scalar(Scalar::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn var(name: &str) -> Result<Self> {
        Ok(Weight::Poly(Poly::var(Var::new(name)?)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Weight::Scalar(s) => s.is_zero(),
            Weight::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_scalar(&self) -> bool {
        matches!(self, Weight::Scalar(_))
    }

    /// The rational value, if this weight has no variables.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self {
            Weight::Scalar(s) => Some(s.clone()),
            Weight::Poly(p) => p.as_constant(),
        }
    }

    pub fn to_poly(&self) -> Poly {
        match self {
            Weight::Scalar(s) => Poly::constant(s.clone()),
            Weight::Poly(p) => p.clone(),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self.as_scalar(), Some(s) if s.is_negative())
    }

    pub fn pow(&self, e: u32) -> Weight {
        match self {
            Weight::Scalar(s) => Weight::Scalar(num_traits::pow(s.clone(), e as usize)),
            Weight::Poly(p) => Weight::Poly(p.pow(e)),
        }
    }

    pub fn eval(&self, assignment: &HashMap<Var, Scalar>) -> Result<Scalar> {
        match self {
            Weight::Scalar(s) => Ok(s.clone()),
            Weight::Poly(p) => p.eval(assignment),
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        match self {
            Weight::Scalar(_) => Vec::new(),
            Weight::Poly(p) => p.variables(),
        }
    }

    /// Product of an iterator of weights; the empty product is one.
    pub fn product<'a, I: IntoIterator<Item = &'a Weight>>(it: I) -> Weight {
        it.into_iter().fold(Weight::one(), |acc, w| &acc * w)
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Weight>>(it: I) -> Weight {
        it.into_iter().fold(Weight::zero(), |acc, w| &acc + w)
    }

    pub fn canonicalize(&self) -> Weight {
        match self {
            Weight::Scalar(s) => Weight::Scalar(s.reduced()),
            Weight::Poly(p) => Weight::Poly(p.canonicalize()),
        }
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Weight::Scalar(a), Weight::Scalar(b)) => a == b,
            (a, b) => a.to_poly() == b.to_poly(),
        }
    }
}

impl Eq for Weight {}

impl From<Scalar> for Weight {
    fn from(s: Scalar) -> Self {
        Weight::Scalar(s)
    }
}

impl From<Poly> for Weight {
    fn from(p: Poly) -> Self {
        Weight::Poly(p)
    }
}

impl From<i64> for Weight {
    fn from(n: i64) -> Self {
        Weight::int(n)
    }
}

impl<'a> Add<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        match (self, rhs) {
            (Weight::Scalar(a), Weight::Scalar(b)) => Weight::Scalar(a + b),
            (a, b) => Weight::Poly(a.to_poly().add(&b.to_poly())),
        }
    }
}

impl<'a> Sub<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        match (self, rhs) {
            (Weight::Scalar(a), Weight::Scalar(b)) => Weight::Scalar(a - b),
            (a, b) => Weight::Poly(a.to_poly().sub(&b.to_poly())),
        }
    }
}

impl<'a> Mul<&'a Weight> for &'a Weight {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        match (self, rhs) {
            (Weight::Scalar(a), Weight::Scalar(b)) => Weight::Scalar(a * b),
            (Weight::Poly(p), Weight::Scalar(s)) | (Weight::Scalar(s), Weight::Poly(p)) => Weight::Poly(p.scale(s)),
            (Weight::Poly(a), Weight::Poly(b)) => Weight::Poly(a.mul(b)),
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        match self {
            Weight::Scalar(s) => Weight::Scalar(-s),
            Weight::Poly(p) => Weight::Poly(p.neg()),
        }
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Mul for Weight {
    type Output = Weight;
    fn mul(self, rhs: Weight) -> Weight {
        &self * &rhs
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl serde::Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = serde_json::Value::deserialize(d)?;
        match raw {
            serde_json::Value::String(s) => s.parse().map_err(serde::de::Error::custom),
            serde_json::Value::Number(n) if n.is_i64() => Ok(Weight::int(n.as_i64().unwrap())),
            other => Err(serde::de::Error::custom(format!("expected a weight string, got {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn rational_product() {
        assert_eq!(&Weight::ratio(1, 2) * &Weight::ratio(2, 3), Weight::ratio(1, 3));
    }

    #[test]
    fn sum_of_two_monomials() {
        let s = &w("x1*w1") + &w("z1*y1");
        match &s {
            Weight::Poly(p) => assert_eq!(p.len(), 2),
            _ => panic!("expected a polynomial"),
        }
        assert_eq!(s.to_string(), "x1*w1 + y1*z1");
    }

    #[test]
    fn binomial_expansion_is_equal() {
        assert_eq!(w("(x1+y1)^2"), w("x1^2+2*x1*y1+y1^2"));
    }

    #[test]
    fn eval_examples() {
        let ones: HashMap<Var, Scalar> =
            ["x1", "w1", "z1", "y1"].iter().map(|n| (Var::new(n).unwrap(), Scalar::one())).collect();
        assert_eq!(w("x1*w1+z1*y1").eval(&ones).unwrap(), Scalar::from_integer(2.into()));
        assert_eq!(w("7").eval(&HashMap::new()).unwrap(), Scalar::from_integer(7.into()));
        let mut a = HashMap::new();
        a.insert(Var::new("x1").unwrap(), Scalar::new(2.into(), 3.into()));
        a.insert(Var::new("w2").unwrap(), Scalar::from_integer(9.into()));
        assert_eq!(w("x1*w2").eval(&a).unwrap(), Scalar::from_integer(6.into()));
        assert!(w("x1*w2").eval(&HashMap::new()).is_err());
    }

    #[test]
    fn scalar_and_constant_poly_compare_equal() {
        assert_eq!(Weight::int(3), Weight::Poly(Poly::constant(Scalar::from_integer(3.into()))));
        assert_ne!(Weight::int(3), w("x1"));
    }

    fn arb_weight() -> impl Strategy<Value = Weight> {
        let var = prop::sample::select(vec!["x1", "y1", "w2", "z2", "e7"]);
        let term = (-5i64..=5, 1i64..=4, prop::collection::vec((var, 1u32..3), 0..3));
        prop::collection::vec(term, 0..4).prop_map(|terms| {
            let mut acc = Weight::zero();
            for (n, d, vars) in terms {
                let mut t = Weight::ratio(n, d);
                for (v, e) in vars {
                    t = &t * &Weight::var(v).unwrap().pow(e);
                }
                acc = &acc + &t;
            }
            acc
        })
    }

    fn arb_point() -> impl Strategy<Value = HashMap<Var, Scalar>> {
        prop::collection::vec((1i64..50, 1i64..50), 5).prop_map(|vals| {
            ["x1", "y1", "w2", "z2", "e7"]
                .iter()
                .zip(vals)
                .map(|(n, (a, b))| (Var::new(n).unwrap(), Scalar::new(a.into(), b.into())))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_weight(), b in arb_weight(), c in arb_weight()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in arb_weight(), b in arb_weight(), pt in arb_point()) {
            let (ea, eb) = (a.eval(&pt).unwrap(), b.eval(&pt).unwrap());
            prop_assert_eq!((&a * &b).eval(&pt).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).eval(&pt).unwrap(), &ea + &eb);
        }

        #[test]
        fn canonical_form_is_idempotent(a in arb_weight()) {
            let c = a.canonicalize();
            prop_assert_eq!(c.to_string(), a.to_string());
            prop_assert_eq!(c.canonicalize().to_string(), c.to_string());
        }

        #[test]
        fn printing_round_trips(a in arb_weight()) {
            let back: Weight = a.to_string().parse().unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), a.to_string());
        }
    }
}
