//! Binomials as exponent-vector pairs and monomial weight orders.

use std::cmp::Ordering;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::exactgeom::{rat, Rat};
use crate::{Error, Result};

/// A pure difference of monomials `t^plus - t^minus`.
///
/// Publicly constructed binomials have disjoint supports (the reduced form
/// every toric computation here ultimately produces); intermediate
/// S-polynomials built internally may transiently overlap, which keeps the
/// polynomial arithmetic honest rather than silently saturating.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "BinomialRepr", into = "BinomialRepr")]
pub struct Binomial {
    plus: Vec<u32>,
    minus: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct BinomialRepr {
    plus: Vec<u32>,
    minus: Vec<u32>,
}

impl TryFrom<BinomialRepr> for Binomial {
    type Error = Error;
    fn try_from(r: BinomialRepr) -> Result<Self> {
        Binomial::new(r.plus, r.minus)
    }
}

impl From<Binomial> for BinomialRepr {
    fn from(b: Binomial) -> Self {
        BinomialRepr { plus: b.plus, minus: b.minus }
    }
}

impl Binomial {
    /// A support-disjoint binomial. Errors when the sides share a variable,
    /// differ in arity, or are equal (the zero polynomial).
    pub fn new(plus: Vec<u32>, minus: Vec<u32>) -> Result<Self> {
        if plus.len() != minus.len() {
            return Err(Error::DimensionMismatch("binomial sides of unequal arity".into()));
        }
        if plus.iter().zip(&minus).any(|(&a, &b)| a > 0 && b > 0) {
            return Err(Error::InvalidArgument("binomial sides share a variable".into()));
        }
        if plus == minus {
            return Err(Error::InvalidArgument("zero binomial".into()));
        }
        Ok(Binomial { plus, minus })
    }

    /// Internal constructor for possibly-overlapping monomial pairs.
    pub(crate) fn raw(plus: Vec<u32>, minus: Vec<u32>) -> Self {
        debug_assert_eq!(plus.len(), minus.len());
        Binomial { plus, minus }
    }

    /// From a signed exponent vector: positives to `plus`, negatives to `minus`.
    pub fn from_signed(u: &[i64]) -> Result<Self> {
        if u.iter().all(|&x| x == 0) {
            return Err(Error::InvalidArgument("zero binomial".into()));
        }
        let plus = u.iter().map(|&x| if x > 0 { x as u32 } else { 0 }).collect();
        let minus = u.iter().map(|&x| if x < 0 { (-x) as u32 } else { 0 }).collect();
        Ok(Binomial { plus, minus })
    }

    pub fn plus(&self) -> &[u32] {
        &self.plus
    }

    pub fn minus(&self) -> &[u32] {
        &self.minus
    }

    pub fn arity(&self) -> usize {
        self.plus.len()
    }

    pub fn signed(&self) -> Vec<i64> {
        self.plus.iter().zip(&self.minus).map(|(&a, &b)| a as i64 - b as i64).collect()
    }

    pub fn is_support_disjoint(&self) -> bool {
        self.plus.iter().zip(&self.minus).all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn degree_plus(&self) -> u32 {
        self.plus.iter().sum()
    }

    pub fn degree_minus(&self) -> u32 {
        self.minus.iter().sum()
    }

    /// Flip so the first nonzero entry of `plus - minus` is positive.
    /// This is the orientation-free canonical form used for set comparisons.
    pub fn canonical(mut self) -> Self {
        for (&a, &b) in self.plus.iter().zip(&self.minus) {
            match a.cmp(&b) {
                Ordering::Greater => break,
                Ordering::Less => {
                    std::mem::swap(&mut self.plus, &mut self.minus);
                    break;
                }
                Ordering::Equal => {}
            }
        }
        self
    }

    /// Swap sides so `plus` is the larger monomial under `ord`.
    pub fn oriented(mut self, ord: &WeightOrder) -> Self {
        if ord.cmp_monomials(&self.plus, &self.minus) == Ordering::Less {
            std::mem::swap(&mut self.plus, &mut self.minus);
        }
        self
    }
}

/// Monomial divisibility: does `a` divide `b` entrywise?
pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x <= y)
}

pub fn monomial_lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

pub fn total_degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// A total monomial order: compare by rational weight, break ties by
/// graded reverse lexicographic order. With any weight this is a total
/// order on monomials; it refines the weight whenever the weight alone
/// decides, which is all the state-polytope machinery needs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightOrder {
    w: Vec<Rat>,
}

impl WeightOrder {
    pub fn new(w: Vec<Rat>) -> Self {
        WeightOrder { w }
    }

    pub fn from_ints(w: &[i64]) -> Self {
        WeightOrder { w: w.iter().map(|&x| rat(x)).collect() }
    }

    pub fn ones(arity: usize) -> Self {
        WeightOrder { w: vec![rat(1); arity] }
    }

    pub fn arity(&self) -> usize {
        self.w.len()
    }

    pub fn weights(&self) -> &[Rat] {
        &self.w
    }

    pub fn weight_of(&self, a: &[u32]) -> Rat {
        let mut acc = Rat::zero();
        for (x, wi) in a.iter().zip(&self.w) {
            if *x > 0 && !wi.is_zero() {
                acc += rat(*x as i64) * wi;
            }
        }
        acc
    }

    /// `Greater` means `a` is the larger monomial (the leading side).
    pub fn cmp_monomials(&self, a: &[u32], b: &[u32]) -> Ordering {
        assert_eq!(a.len(), self.w.len(), "monomial arity differs from order arity");
        assert_eq!(b.len(), self.w.len(), "monomial arity differs from order arity");
        let wa = self.weight_of(a);
        let wb = self.weight_of(b);
        match wa.cmp(&wb) {
            Ordering::Equal => grevlex_cmp(a, b),
            other => other,
        }
    }

    /// Does the weight alone separate the two sides? When true for every
    /// basis element, leading terms are weight-picked with no tiebreak.
    pub fn separates(&self, b: &Binomial) -> bool {
        self.weight_of(b.plus()) != self.weight_of(b.minus())
    }
}

/// Graded reverse lexicographic: higher total degree wins; on equal degree
/// the monomial with the *smaller* entry at the last disagreeing position wins.
fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    match total_degree(a).cmp(&total_degree(b)) {
        Ordering::Equal => {}
        other => return other,
    }
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_guards_fire() {
        assert!(Binomial::new(vec![1, 0], vec![0, 1]).is_ok());
        assert!(Binomial::new(vec![1, 1], vec![0, 1]).is_err(), "shared variable");
        assert!(Binomial::new(vec![1], vec![0, 1]).is_err(), "arity mismatch");
        assert!(Binomial::new(vec![0, 0], vec![0, 0]).is_err(), "zero binomial");
        let b = Binomial::from_signed(&[2, -1, 0]).unwrap();
        assert_eq!(b.plus(), &[2, 0, 0]);
        assert_eq!(b.minus(), &[0, 1, 0]);
        assert_eq!(b.signed(), vec![2, -1, 0]);
    }

    #[test]
    fn canonical_and_oriented_forms() {
        let b = Binomial::new(vec![0, 1, 0, 0], vec![1, 0, 0, 0]).unwrap();
        let c = b.clone().canonical();
        assert_eq!(c.plus(), &[1, 0, 0, 0]);
        let ord = WeightOrder::from_ints(&[0, 5, 0, 0]);
        let o = b.oriented(&ord);
        assert_eq!(o.plus(), &[0, 1, 0, 0], "weight favors the second variable");
    }

    #[test]
    fn grevlex_breaks_ties_from_the_back() {
        let ord = WeightOrder::ones(3);
        // equal weight and degree: t1 t3 vs t2^2; last disagreement at
        // position 3 where t1 t3 has the larger entry, so t2^2 wins.
        assert_eq!(ord.cmp_monomials(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(ord.cmp_monomials(&[2, 0, 0], &[1, 1, 0]), Ordering::Greater);
        assert_eq!(ord.cmp_monomials(&[1, 1, 1], &[1, 1, 1]), Ordering::Equal);
        assert_eq!(ord.cmp_monomials(&[2, 0, 0], &[1, 0, 0]), Ordering::Greater, "degree first");
    }

    #[test]
    fn json_shape_is_plus_minus() {
        let b = Binomial::new(vec![1, 0, 0, 1], vec![0, 1, 1, 0]).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"plus":[1,0,0,1],"minus":[0,1,1,0]}"#);
        assert_eq!(serde_json::from_str::<Binomial>(&s).unwrap(), b);
        assert!(serde_json::from_str::<Binomial>(r#"{"plus":[1,1],"minus":[0,1]}"#).is_err());
    }
}
