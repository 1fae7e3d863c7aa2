//! The action of `A` on `B = Q[w_1, w_2, …]`: `f_n` multiplies by `w_n`
//! and `e_p` is the derivation with
//! `Σ_{p,q} e_p(w_{q+1}) X^p Y^q = (Y − X) · (Σ_{i,j} w_{i+j+1} X^i Y^j)²`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num::{One, Zero};

use crate::exactpoly::{rat, Monomial, Poly, Rational, VarId};
use crate::kron::{commutator, GenIndex, GenKind, GenWord, Kronecker, KronError, RelationKind};
use crate::linalg;

/// A polynomial in the variables `w_n`, `n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WPoly(Poly);

impl WPoly {
    pub fn zero() -> Self {
        WPoly(Poly::zero())
    }

    pub fn one() -> Self {
        WPoly(Poly::one())
    }

    pub fn w(n: usize) -> Self {
        assert!(n >= 1, "w-variables start at w_1");
        WPoly(Poly::x(0, n))
    }

    pub fn constant(c: Rational) -> Self {
        WPoly(Poly::constant(c))
    }

    /// The monomial `Π w_n^{k}` from `(n, k)` pairs.
    pub fn monomial(pairs: &[(usize, u32)]) -> Self {
        let m = Monomial::from_exponents(pairs.iter().map(|&(n, k)| (VarId::new(0, n), k)));
        WPoly(Poly::monomial(m, Rational::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn as_poly(&self) -> &Poly {
        &self.0
    }

    pub fn scale(&self, c: &Rational) -> Self {
        WPoly(self.0.scale(c))
    }

    /// `(monomial as (n, exponent) pairs, coefficient)`, leading term first.
    pub fn terms(&self) -> Vec<(Vec<(usize, u32)>, Rational)> {
        self.0
            .terms()
            .rev()
            .map(|(m, c)| (m.iter().map(|(v, k)| (v.slot, k)).collect(), c.clone()))
            .collect()
    }

    /// Total weight of each term, with `w_n` of weight `n`.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self
            .0
            .terms()
            .map(|(m, _)| m.iter().map(|(v, k)| v.slot as u32 * k).sum())
            .collect();
        w.sort_unstable();
        w.dedup();
        w
    }
}

impl Add for &WPoly {
    type Output = WPoly;
    fn add(self, rhs: &WPoly) -> WPoly {
        WPoly(&self.0 + &rhs.0)
    }
}

impl Sub for &WPoly {
    type Output = WPoly;
    fn sub(self, rhs: &WPoly) -> WPoly {
        WPoly(&self.0 - &rhs.0)
    }
}

impl Mul for &WPoly {
    type Output = WPoly;
    fn mul(self, rhs: &WPoly) -> WPoly {
        WPoly(&self.0 * &rhs.0)
    }
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (mono, c)) in terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = mono
                .iter()
                .map(|&(n, k)| if k == 1 { format!("w{n}") } else { format!("w{n}^{k}") })
                .collect();
            match (abs.is_one(), factors.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", factors.join("*"))?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

/// `w_n · p`.
pub fn f_act(n: usize, p: &WPoly) -> WPoly {
    &WPoly::w(n) * p
}

/// `e_p(w_{q+1})`, read off as the `X^p Y^q` coefficient of the defining series.
pub fn e_on_generator(p: u32, q: u32) -> WPoly {
    // coefficient of X^a Y^b in (Σ w_{i+j+1} X^i Y^j)²
    let square = |a: i64, b: i64| -> WPoly {
        let mut out = WPoly::zero();
        if a < 0 || b < 0 {
            return out;
        }
        for i1 in 0..=a {
            for j1 in 0..=b {
                let (i2, j2) = (a - i1, b - j1);
                let u = WPoly::w((i1 + j1 + 1) as usize);
                let v = WPoly::w((i2 + j2 + 1) as usize);
                out = &out + &(&u * &v);
            }
        }
        out
    };
    let (p, q) = (i64::from(p), i64::from(q));
    &square(p, q - 1) - &square(p - 1, q)
}

/// The derivation `e_p` applied to `poly`.
pub fn e_act(p: u32, poly: &WPoly) -> WPoly {
    let mut cache: HashMap<usize, WPoly> = HashMap::new();
    let mut out = Poly::zero();
    for (m, c) in poly.0.terms() {
        for (v, k) in m.iter() {
            let image = cache
                .entry(v.slot)
                .or_insert_with(|| e_on_generator(p, v.slot as u32 - 1));
            let rest = m.checked_div(&Monomial::var(v)).expect("variable divides");
            let factor = Poly::monomial(rest, c * rat(i64::from(k)));
            out += &(&factor * &image.0);
        }
    }
    WPoly(out)
}

/// Applies one generator as an operator.
pub fn act(g: GenIndex, poly: &WPoly) -> WPoly {
    match g.kind() {
        GenKind::E => e_act(g.index(), poly),
        GenKind::F => f_act(g.index() as usize, poly),
    }
}

/// Applies the operator of a word: the rightmost letter acts first.
pub fn act_word(w: &GenWord, poly: &WPoly) -> WPoly {
    w.letters().iter().rev().fold(poly.clone(), |acc, &g| act(g, &acc))
}

/// `1`, all `w_r` and all `w_r w_s` with `r ≤ s ≤ n`.
pub fn probe_set(n: usize) -> Vec<WPoly> {
    let mut out = vec![WPoly::one()];
    out.extend((1..=n).map(WPoly::w));
    for r in 1..=n {
        for s in r..=n {
            out.push(&WPoly::w(r) * &WPoly::w(s));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorCheck {
    pub kind: RelationKind,
    pub p: u32,
    pub q: u32,
    pub probes: usize,
    /// Indices into the probe set where the two sides differ.
    pub failures: Vec<usize>,
}

impl OperatorCheck {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks a defining relation of `A` as an identity of operators on the
/// probe set of degree-`≤ 2` monomials in `w_1, …, w_N`.
pub fn operator_relation_check(
    kind: RelationKind,
    p: u32,
    q: u32,
    probe: usize,
) -> Result<OperatorCheck, KronError> {
    if !kind.admissible(p, q) {
        return Err(KronError::IndexConstraintViolated { kind, p, q });
    }
    let e = GenIndex::e;
    let f = |n| GenIndex::f(n).expect("positive index");
    let (a, b) = match kind {
        RelationKind::EE => (e(p), e(q)),
        RelationKind::EfLt | RelationKind::EfGt | RelationKind::EfEq => (e(p), f(q + 1)),
        RelationKind::FF => (f(p + 1), f(q + 1)),
    };
    let probes = probe_set(probe);
    let mut failures = Vec::new();
    for (i, v) in probes.iter().enumerate() {
        let lhs = &act(a, &act(b, v)) - &act(b, &act(a, v));
        let mut rhs = WPoly::zero();
        for (c, x, y) in commutator(a, b) {
            rhs = &rhs + &act(x, &act(y, v)).scale(&rat(c));
        }
        if lhs != rhs {
            failures.push(i);
        }
    }
    Ok(OperatorCheck {
        kind,
        p,
        q,
        probes: probes.len(),
        failures,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaithfulnessRow {
    pub weight: u32,
    pub monomials: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaithfulnessReport {
    pub n: u32,
    pub max_weight: u32,
    pub probes: usize,
    pub rows: Vec<FaithfulnessRow>,
}

impl FaithfulnessReport {
    pub fn monomials(&self) -> usize {
        self.rows.iter().map(|r| r.monomials).sum()
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().map(|r| r.rank).sum()
    }

    pub fn full_rank(&self) -> bool {
        self.rank() == self.monomials()
    }
}

/// All monomials of degree `≤ n` in `w_1, …, w_k`.
pub fn monomials_up_to(n: u32, k: usize) -> Vec<WPoly> {
    let mut out = vec![Vec::<(usize, u32)>::new()];
    for var in 1..=k {
        out = out
            .into_iter()
            .flat_map(|m| {
                let used: u32 = m.iter().map(|x| x.1).sum();
                (0..=n - used).map(move |e| {
                    let mut m = m.clone();
                    if e > 0 {
                        m.push((var, e));
                    }
                    m
                })
            })
            .collect();
    }
    out.iter().map(|m| WPoly::monomial(m)).collect()
}

/// Evaluates every standard monomial of length `n` and weight `≤ w_max` on
/// the probe monomials and reports the rank of the evaluation matrix per weight.
pub fn faithfulness_probe(n: u32, w_max: u32) -> FaithfulnessReport {
    let probes = monomials_up_to(n, w_max as usize + 1);
    let mut rows = Vec::new();
    for weight in 0..=w_max {
        let words = Kronecker::standard_monomials(n, weight);
        let images: Vec<Vec<WPoly>> = words
            .iter()
            .map(|w| probes.iter().map(|v| act_word(w, v)).collect())
            .collect();
        let mut columns: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
        for row in &images {
            for (i, img) in row.iter().enumerate() {
                for (m, _) in img.0.terms() {
                    let next = columns.len();
                    columns.entry((i, m.clone())).or_insert(next);
                }
            }
        }
        let vectors: Vec<Vec<Rational>> = images
            .iter()
            .map(|row| {
                let mut v = vec![Rational::zero(); columns.len()];
                for (i, img) in row.iter().enumerate() {
                    for (m, c) in img.0.terms() {
                        v[columns[&(i, m.clone())]] = c.clone();
                    }
                }
                v
            })
            .collect();
        rows.push(FaithfulnessRow {
            weight,
            monomials: words.len(),
            rank: linalg::rank(&vectors, columns.len()),
        });
    }
    FaithfulnessReport {
        n,
        max_weight: w_max,
        probes: probes.len(),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kron::window;

    fn w(n: usize) -> WPoly {
        WPoly::w(n)
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_act(1, &WPoly::one()), w(1));
        assert_eq!(f_act(2, &w(1)), &w(1) * &w(2));
        assert!(f_act(1, &WPoly::zero()).is_zero());
    }

    #[test]
    fn e_on_generator_examples() {
        assert!(e_on_generator(0, 0).is_zero());
        assert_eq!(e_on_generator(0, 1), &w(1) * &w(1));
        assert_eq!(e_on_generator(1, 0), (&w(1) * &w(1)).scale(&rat(-1)));
    }

    #[test]
    fn e_on_generator_closed_form() {
        for p in 0..6 {
            for q in 0..6 {
                let mut expect = WPoly::zero();
                for s in 0..p + q {
                    let c = window(s, p, q);
                    let term = &w(s as usize + 1) * &w((p + q - s) as usize);
                    expect = &expect + &term.scale(&rat(c));
                }
                let got = e_on_generator(p, q);
                assert_eq!(got, expect, "p={p} q={q}");
                if !got.is_zero() {
                    assert_eq!(got.weights(), vec![p + q + 1]);
                }
            }
        }
    }

    #[test]
    fn e_act_examples() {
        let w1_cubed = &(&w(1) * &w(1)) * &w(1);
        assert_eq!(e_act(0, &(&w(2) * &w(1))), w1_cubed);
        assert!(e_act(3, &WPoly::one()).is_zero());
        let expect = (&(&w(1) * &w(1)) * &w(2)).scale(&rat(2));
        assert_eq!(e_act(0, &(&w(2) * &w(2))), expect);
    }

    #[test]
    fn display() {
        let p = &(&w(1) * &w(1)).scale(&rat(-2)) + &w(3);
        assert_eq!(p.to_string(), "-2*w1^2 + w3");
        assert_eq!(WPoly::one().to_string(), "1");
    }

    #[test]
    fn relation_examples() {
        assert!(operator_relation_check(RelationKind::FF, 0, 3, 4).unwrap().pass());
        assert!(operator_relation_check(RelationKind::EfLt, 0, 1, 4).unwrap().pass());
        assert!(operator_relation_check(RelationKind::EE, 0, 1, 6).unwrap().pass());
        assert!(operator_relation_check(RelationKind::EfEq, 2, 2, 4).unwrap().pass());
        assert!(operator_relation_check(RelationKind::EE, 2, 1, 4).is_err());
    }

    #[test]
    fn faithfulness_small() {
        let r0 = faithfulness_probe(0, 2);
        assert_eq!(r0.rank(), 1);
        let r1 = faithfulness_probe(1, 4);
        assert!(r1.full_rank(), "{r1:?}");
        assert_eq!(monomials_up_to(2, 3).len(), 10);
    }
}
