//! Sparse multivariate polynomials with rational coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::Scalar;
use crate::error::{Error, Result};

/// A polynomial variable, named by an identifier matching `[a-z][a-z0-9_]*`.
///
/// Variables sort by stem (with the edge-weight letters `x`, `y`, `w`, `z`
/// first, in that order), then by the numeric value of the trailing digits.
/// This is the order used when printing, so `x1*w1` prints before `y1*z1`.
#[derive(Clone, Debug)]
pub struct Var {
    name: Arc<str>,
    stem_len: usize,
}

impl Var {
    pub fn new(name: &str) -> Result<Self> {
        if !is_identifier(name) {
            return Err(Error::WeightParse {
                input: name.to_string(),
                reason: "variable names must match [a-z][a-z0-9_]*".into(),
            });
        }
        let stem_len = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        Ok(Var { name: name.into(), stem_len })
    }

    /// `stem` followed by `index`, e.g. `Var::indexed("x", 3)` is `x3`.
    pub fn indexed(stem: &str, index: usize) -> Self {
        Var::new(&format!("{stem}{index}")).expect("stem must be a valid identifier")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    fn stem(&self) -> &str {
        &self.name[..self.stem_len]
    }

    fn digits(&self) -> &str {
        self.name[self.stem_len..].trim_start_matches('0')
    }

    fn stem_rank(&self) -> u8 {
        match self.stem() {
            "x" => 0,
            "y" => 1,
            "w" => 2,
            "z" => 3,
            _ => 4,
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some('a'..='z')) && chars.all(|c| matches!(c, 'a'..='z' | '0'..='9' | '_'))
}

impl PartialEq for Var {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Var {}

impl std::hash::Hash for Var {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.name.hash(state)
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.stem_rank()
            .cmp(&other.stem_rank())
            .then_with(|| self.stem().cmp(other.stem()))
            .then_with(|| self.digits().len().cmp(&other.digits().len()))
            .then_with(|| self.digits().cmp(other.digits()))
            .then_with(|| self.name.cmp(&other.name))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Var {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name)
    }
}

/// A product of variables with positive exponents, sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary factors, merging repeated variables.
    pub fn from_factors<I: IntoIterator<Item = (Var, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial over the rationals; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: Var) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), Scalar::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// The value of a polynomial without variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self.terms.keys().flat_map(|m| m.factors().iter().map(|(v, _)| v.clone())).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb)).and_modify(|x| *x += &c).or_insert(c);
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut out = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Substitutes a rational value for every variable.
    pub fn eval(&self, assignment: &HashMap<Var, Scalar>) -> Result<Scalar> {
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = assignment.get(v).ok_or_else(|| Error::MissingVariable(v.name().to_string()))?;
                t *= num_traits::pow(x.clone(), *e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Re-inserts every term; a no-op on any value built through this API.
    pub fn canonicalize(&self) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn v(s: &str) -> Poly {
        Poly::var(Var::new(s).unwrap())
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn stem_order_puts_edge_letters_first() {
        let mut vars: Vec<Var> = ["z1", "a1", "w1", "y1", "x10", "x2"].iter().map(|s| Var::new(s).unwrap()).collect();
        vars.sort();
        let names: Vec<&str> = vars.iter().map(|v| v.name()).collect();
        assert_eq!(names, ["x2", "x10", "y1", "w1", "z1", "a1"]);
    }

    #[test]
    fn rejects_bad_identifiers() {
        assert!(Var::new("1x").is_err());
        assert!(Var::new("X").is_err());
        assert!(Var::new("").is_err());
        assert!(Var::new("x_1a").is_ok());
    }

    #[test]
    fn binomial_square() {
        let s = v("x1").add(&v("y1"));
        let expect = v("x1").mul(&v("x1")).add(&v("x1").mul(&v("y1")).scale(&q(2, 1))).add(&v("y1").pow(2));
        assert_eq!(s.pow(2), expect);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = v("x1").add(&v("y1"));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.sub(&v("y1")), v("x1"));
    }

    #[test]
    fn eval_substitutes() {
        let p = v("x1").mul(&v("w2"));
        let mut a = HashMap::new();
        a.insert(Var::new("x1").unwrap(), q(2, 3));
        a.insert(Var::new("w2").unwrap(), q(9, 1));
        assert_eq!(p.eval(&a).unwrap(), q(6, 1));
        a.remove(&Var::new("w2").unwrap());
        assert_eq!(p.eval(&a), Err(Error::MissingVariable("w2".into())));
    }
}
