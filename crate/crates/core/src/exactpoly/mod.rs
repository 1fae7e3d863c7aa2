//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are `x_{i,k}`: a vertex index `i` and a 1-based slot `k`. Terms
//! are kept in a `BTreeMap` keyed by [`Monomial`], whose order is graded
//! lexicographic with variables compared vertex-major, then by slot. The
//! largest key is the leading term.

mod text;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{One, Signed, Zero};
use thiserror::Error;

pub use text::{parse_poly, variable_name, ParsePolyError};

/// Exact rational numbers, always kept in lowest terms.
pub type Rational = num::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `num / den` as a [`Rational`].
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,
    #[error("invalid slot permutation at vertex {vertex}: {reason}")]
    InvalidPermutation { vertex: usize, reason: String },
}

/// The variable `x_{vertex, slot}`; slots start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    pub vertex: usize,
    pub slot: usize,
}

impl VarId {
    pub const fn new(vertex: usize, slot: usize) -> Self {
        VarId { vertex, slot }
    }
}

/// A power product of variables with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    // sorted by VarId, every exponent > 0
    exps: Vec<(VarId, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VarId) -> Self {
        Monomial::from_exponents([(v, 1)])
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated variables
    /// accumulate and zero exponents are dropped.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        let exps: Vec<_> = map.into_iter().filter(|&(_, e)| e > 0).collect();
        let degree = exps.iter().map(|&(_, e)| e).sum();
        Monomial { exps, degree }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        self.exps
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    exps.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.degree > self.degree {
            return None;
        }
        let mut exps = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            if j < other.exps.len() && other.exps[j].0 < v {
                return None;
            }
            if j < other.exps.len() && other.exps[j].0 == v {
                let f = other.exps[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => exps.push((v, e - f)),
                }
            } else {
                exps.push((v, e));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Monomial {
            exps,
            degree: self.degree - other.degree,
        })
    }

    /// Renames every variable through `f`. `f` must be injective on the
    /// variables of `self`.
    pub fn rename(&self, mut f: impl FnMut(VarId) -> VarId) -> Monomial {
        let mut exps: Vec<_> = self.exps.iter().map(|&(v, e)| (f(v), e)).collect();
        exps.sort_unstable_by_key(|&(v, _)| v);
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Exponents of the slots `1..=len` at `vertex`, zero-padded.
    pub fn block_exponents(&self, vertex: usize, len: usize) -> Vec<u32> {
        let mut out = vec![0; len];
        for &(v, e) in &self.exps {
            if v.vertex == vertex && v.slot >= 1 && v.slot <= len {
                out[v.slot - 1] = e;
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            // lex on the exponent vector: the first variable at which the
            // exponents differ decides, the larger exponent wins
            for (a, b) in self.exps.iter().zip(&other.exps) {
                match a.0.cmp(&b.0) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match a.1.cmp(&b.1) {
                        Ordering::Equal => {}
                        ord => return ord,
                    },
                }
            }
            self.exps.len().cmp(&other.exps.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A bijection of the slots `1..=n` at each listed vertex. Vertices that are
/// not listed are left alone.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SlotPermutation {
    // images[vertex][k-1] is the image of slot k
    images: BTreeMap<usize, Vec<usize>>,
}

impl SlotPermutation {
    pub fn identity() -> Self {
        SlotPermutation::default()
    }

    /// Sets the permutation at `vertex`; `images[k-1]` is where slot `k` goes.
    pub fn with_vertex(mut self, vertex: usize, images: Vec<usize>) -> Result<Self, PolyError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img == 0 || img > n {
                return Err(PolyError::InvalidPermutation {
                    vertex,
                    reason: format!("image {img} outside 1..={n}"),
                });
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(PolyError::InvalidPermutation {
                    vertex,
                    reason: format!("image {img} repeated"),
                });
            }
        }
        self.images.insert(vertex, images);
        Ok(self)
    }

    pub fn apply(&self, v: VarId) -> VarId {
        match self.images.get(&v.vertex) {
            Some(images) if v.slot >= 1 && v.slot <= images.len() => {
                VarId::new(v.vertex, images[v.slot - 1])
            }
            _ => v,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SlotPermutation) -> SlotPermutation {
        let mut images = BTreeMap::new();
        let vertices: std::collections::BTreeSet<usize> = self
            .images
            .keys()
            .chain(other.images.keys())
            .copied()
            .collect();
        for v in vertices {
            let n = self
                .images
                .get(&v)
                .map_or(0, Vec::len)
                .max(other.images.get(&v).map_or(0, Vec::len));
            let img = (1..=n)
                .map(|s| self.apply(other.apply(VarId::new(v, s))).slot)
                .collect();
            images.insert(v, img);
        }
        SlotPermutation { images }
    }

    fn check_covers(&self, p: &Poly) -> Result<(), PolyError> {
        for m in p.terms.keys() {
            for v in m.vars() {
                if let Some(images) = self.images.get(&v.vertex) {
                    if v.slot > images.len() {
                        return Err(PolyError::InvalidPermutation {
                            vertex: v.vertex,
                            reason: format!("slot {} outside the permuted range", v.slot),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A polynomial with rational coefficients. No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(rat(1))
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial(Monomial::one(), c)
    }

    pub fn var(v: VarId) -> Self {
        Poly::monomial(Monomial::var(v), rat(1))
    }

    /// `x_{vertex,slot}` with coefficient one.
    pub fn x(vertex: usize, slot: usize) -> Self {
        Poly::var(VarId::new(vertex, slot))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
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

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.last_key_value()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add_term_ref(&mut self, m: Monomial, c: &Rational) {
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    /// Adds `c * self * m` into `acc`.
    fn add_scaled_shifted_into(&self, acc: &mut Poly, c: &Rational, m: &Monomial) {
        for (n, a) in &self.terms {
            acc.add_term(n.mul(m), a * c);
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// The quotient `self / den`, which must be exact.
    ///
    /// Division by leading terms in the graded-lex order; any term whose
    /// leading monomial is not divisible means `den` does not divide `self`.
    pub fn exact_div(&self, den: &Poly) -> Result<Poly, PolyError> {
        let (lead_m, lead_c) = den.leading_term().ok_or(PolyError::DivisionByZero)?;
        let lead_inv = lead_c.recip();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.terms.last_key_value() {
            let qm = m.checked_div(lead_m).ok_or(PolyError::NotDivisible)?;
            let qc = c * &lead_inv;
            den.add_scaled_shifted_into(&mut rem, &-&qc, &qm);
            quot.terms.insert(qm, qc);
        }
        // the remainder reached zero, so self = quot * den exactly
        Ok(quot)
    }

    pub fn permute_slots(&self, perm: &SlotPermutation) -> Result<Poly, PolyError> {
        perm.check_covers(self)?;
        Ok(self.rename(|v| perm.apply(v)))
    }

    /// Renames variables through an injective map.
    pub fn rename(&self, mut f: impl FnMut(VarId) -> VarId) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.rename(&mut f), c.clone()))
                .collect(),
        }
    }

    pub fn homogeneous_component(&self, degree: u32) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes a polynomial for a single variable.
    pub fn substitute(&self, v: VarId, value: &Poly) -> Poly {
        let mut powers = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let rest = Monomial::from_exponents(m.iter().filter(|&(w, _)| w != v));
            powers[e].add_scaled_shifted_into(&mut out, c, &rest);
        }
        out
    }

    /// Every variable occurring in some term.
    pub fn variables(&self) -> std::collections::BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    /// True iff every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Multiplies every coefficient's sign by -1 if `negate`.
    pub fn signed(self, negate: bool) -> Poly {
        if negate {
            -self
        } else {
            self
        }
    }

    /// The largest absolute coefficient, zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render(self))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term_ref(m.clone(), c);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let (small, large) = if self.len() <= rhs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = Poly::zero();
        for (m, c) in &small.terms {
            large.add_scaled_shifted_into(&mut out, c, m);
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(n: i64) -> Self {
        Poly::constant(rat(n))
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::one()
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(k: usize) -> Poly {
        Poly::x(0, k)
    }
    fn y(k: usize) -> Poly {
        Poly::x(1, k)
    }

    #[test]
    fn addition_examples() {
        assert!((&x(1) + &(-x(1))).is_zero());
        let lhs = &(&x(1) + &y(1)) + &y(1);
        assert_eq!(lhs, &x(1) + &y(1).scale(&rat(2)));
        let sq = x(1).pow(2);
        assert_eq!(&sq + &Poly::zero(), sq);
    }

    #[test]
    fn multiplication_examples() {
        let d = &y(1) - &x(1);
        let expect = &(&y(1).pow(2) - &(&x(1) * &y(1)).scale(&rat(2))) + &x(1).pow(2);
        assert_eq!(&d * &d, expect);
        let s = &x(1) + &x(2);
        assert_eq!(&s * &Poly::one(), s);
        // a series variable X modelled as its own vertex
        let xx = &x(1) * &Poly::x(9, 1);
        let prod = &(&Poly::one() - &xx) * &(&Poly::one() + &xx);
        assert_eq!(prod, &Poly::one() - &xx.pow(2));
    }

    #[test]
    fn exact_division_examples() {
        let num = &x(2).pow(2) - &x(1).pow(2);
        assert_eq!(num.exact_div(&(&x(2) - &x(1))).unwrap(), &x(1) + &x(2));
        let d = &y(1) - &x(1);
        assert_eq!(d.pow(3).exact_div(&d).unwrap(), d.pow(2));
        assert_eq!(
            (&x(1) + &x(2)).exact_div(&x(1)),
            Err(PolyError::NotDivisible)
        );
        assert_eq!(x(1).exact_div(&Poly::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn permutation_examples() {
        let swap = SlotPermutation::identity().with_vertex(0, vec![2, 1]).unwrap();
        let p = &x(1) * &x(2).pow(2);
        assert_eq!(p.permute_slots(&swap).unwrap(), &x(2) * &x(1).pow(2));
        assert_eq!(p.permute_slots(&SlotPermutation::identity()).unwrap(), p);
        let s = &x(1) + &x(2);
        assert_eq!(s.permute_slots(&swap).unwrap(), s);
    }

    #[test]
    fn invalid_permutations_rejected() {
        assert!(SlotPermutation::identity().with_vertex(0, vec![1, 1]).is_err());
        assert!(SlotPermutation::identity().with_vertex(0, vec![0, 1]).is_err());
        let swap = SlotPermutation::identity().with_vertex(0, vec![2, 1]).unwrap();
        assert!(x(3).permute_slots(&swap).is_err());
    }

    #[test]
    fn homogeneous_component_examples() {
        let p = &(&Poly::one() + &x(1)) + &x(1).pow(2);
        assert_eq!(p.homogeneous_component(1), x(1));
        let q = (&y(1) - &x(1)).pow(2);
        assert_eq!(q.homogeneous_component(2), q);
        assert!(x(1).homogeneous_component(0).is_zero());
    }

    #[test]
    fn term_order_is_graded_lex() {
        let m = |p: &Poly| p.leading_term().unwrap().0.clone();
        assert!(m(&x(1).pow(2)) > m(&(&x(1) * &y(1))));
        assert!(m(&(&x(1) * &y(1))) > m(&y(1).pow(2)));
        assert!(m(&x(1)) > m(&x(2)));
        assert!(m(&y(1).pow(3)) > m(&x(1).pow(2)));
    }

    #[test]
    fn substitute_replaces_variable() {
        let p = &x(1).pow(2) + &y(1);
        let q = p.substitute(VarId::new(0, 1), &(&y(1) + &Poly::one()));
        assert_eq!(q, &(&y(1) + &Poly::one()).pow(2) + &y(1));
    }
}
