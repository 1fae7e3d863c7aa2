//! The operator `c` on `A_1 ⊗ A_1` whose twisted symmetric algebra is `A`.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::exactpoly::{rat, Rational};
use crate::kron::{window, GenIndex, GenKind};

/// A linear combination of pure tensors of generators, all of one arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorElement {
    arity: usize,
    terms: BTreeMap<Vec<GenIndex>, Rational>,
}

impl TensorElement {
    pub fn zero(arity: usize) -> Self {
        TensorElement {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(letters: Vec<GenIndex>) -> Self {
        let mut t = TensorElement::zero(letters.len());
        t.add_term(letters, Rational::one());
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<GenIndex>, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, letters: &[GenIndex]) -> Rational {
        self.terms.get(letters).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, letters: Vec<GenIndex>, c: Rational) {
        assert_eq!(letters.len(), self.arity, "tensor arity");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(letters.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&letters);
        }
    }

    /// Total weights of the terms, deduplicated.
    pub fn weights(&self) -> Vec<u32> {
        let mut w: Vec<u32> = self
            .terms
            .keys()
            .map(|k| k.iter().map(GenIndex::weight).sum())
            .collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// Applies `c` to the tensor factors `pos` and `pos + 1`.
    pub fn apply_at(&self, pos: usize) -> TensorElement {
        assert!(pos + 1 < self.arity, "position out of range");
        let mut out = TensorElement::zero(self.arity);
        for (letters, c) in &self.terms {
            for (k, a, b) in c_basis(letters[pos], letters[pos + 1]) {
                let mut l = letters.clone();
                l[pos] = a;
                l[pos + 1] = b;
                out.add_term(l, c * rat(k));
            }
        }
        out
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (letters, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            let parts: Vec<String> = letters.iter().map(ToString::to_string).collect();
            write!(f, "{}", parts.join("⊗"))?;
        }
        Ok(())
    }
}

/// `c(a ⊗ b)` as a list of weighted pure tensors.
pub fn c_basis(a: GenIndex, b: GenIndex) -> Vec<(i64, GenIndex, GenIndex)> {
    let mut out = vec![(1, b, a)];
    let f = GenIndex::f_unchecked;
    // exponents of X and Y in the defining series
    let (p, q) = (series_exponent(a), series_exponent(b));
    match (a.kind(), b.kind()) {
        (GenKind::E, GenKind::E) => {
            for s in 0..p + q {
                let c = window(s, p, q);
                if c != 0 {
                    out.push((c, GenIndex::e(s), f(p + q - s)));
                    out.push((c, f(p + q - s), GenIndex::e(s)));
                }
            }
        }
        (GenKind::E, GenKind::F) | (GenKind::F, GenKind::E) => {
            for s in 0..p + q {
                let c = window(s, p, q);
                if c != 0 {
                    out.push((c, f(s + 1), f(p + q - s)));
                }
            }
        }
        (GenKind::F, GenKind::F) => {}
    }
    out
}

fn series_exponent(g: GenIndex) -> u32 {
    match g.kind() {
        GenKind::E => g.index(),
        GenKind::F => g.index() - 1,
    }
}

/// `c` on a tensor of arity 2.
pub fn c_apply(t: &TensorElement) -> TensorElement {
    assert_eq!(t.arity, 2, "c_apply needs arity 2");
    t.apply_at(0)
}

/// All generators of weight at most `w`.
pub fn generators_up_to(w: u32) -> Vec<GenIndex> {
    let mut out: Vec<GenIndex> = (0..=w).map(GenIndex::e).collect();
    out.extend((1..=w).map(GenIndex::f_unchecked));
    out
}

/// All pure tensors of `arity` generators with total weight at most `w_max`.
pub fn basis_tensors(arity: usize, w_max: u32) -> Vec<Vec<GenIndex>> {
    let gens = generators_up_to(w_max);
    let mut out: Vec<Vec<GenIndex>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                let used: u32 = prefix.iter().map(GenIndex::weight).sum();
                gens.iter()
                    .filter(move |g| used + g.weight() <= w_max)
                    .map(move |g| {
                        let mut v = prefix.clone();
                        v.push(*g);
                        v
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out.sort_by_key(|v| (v.iter().map(GenIndex::weight).sum::<u32>(), v.clone()));
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidingCase {
    pub tensor: Vec<GenIndex>,
    pub lhs: TensorElement,
    pub rhs: TensorElement,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidingReport {
    pub max_weight: u32,
    pub cases: Vec<BraidingCase>,
}

impl BraidingReport {
    pub fn pass(&self) -> bool {
        self.cases.iter().all(|c| c.equal)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.equal).count()
    }

    /// `(weight, cases, failures)` per total weight.
    pub fn by_weight(&self) -> Vec<(u32, usize, usize)> {
        let mut table: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
        for c in &self.cases {
            let w = c.tensor.iter().map(GenIndex::weight).sum();
            let e = table.entry(w).or_default();
            e.0 += 1;
            e.1 += usize::from(!c.equal);
        }
        table.into_iter().map(|(w, (n, f))| (w, n, f)).collect()
    }
}

/// Checks `c² = id` on every `g ⊗ h` of weight at most `w_max`.
pub fn involution_check(w_max: u32) -> BraidingReport {
    let cases = basis_tensors(2, w_max)
        .into_iter()
        .map(|tensor| {
            let t = TensorElement::basis(tensor.clone());
            let lhs = c_apply(&c_apply(&t));
            let equal = lhs == t;
            BraidingCase {
                tensor,
                lhs,
                rhs: t,
                equal,
            }
        })
        .collect();
    BraidingReport { max_weight: w_max, cases }
}

/// Compares `c₁₂ c₂₃ c₁₂` with `c₂₃ c₁₂ c₂₃` on every triple of weight at most `w_max`.
pub fn ybe_check(w_max: u32) -> BraidingReport {
    let cases = basis_tensors(3, w_max)
        .into_iter()
        .map(|tensor| {
            let t = TensorElement::basis(tensor.clone());
            // operators compose right to left
            let lhs = t.apply_at(0).apply_at(1).apply_at(0);
            let rhs = t.apply_at(1).apply_at(0).apply_at(1);
            let equal = lhs == rhs;
            BraidingCase {
                tensor,
                lhs,
                rhs,
                equal,
            }
        })
        .collect();
    BraidingReport { max_weight: w_max, cases }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GenIndex {
        s.parse().unwrap()
    }

    fn t(s: &[&str]) -> TensorElement {
        TensorElement::basis(s.iter().map(|x| g(x)).collect())
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_apply(&t(&["f1", "f3"])), t(&["f3", "f1"]));
        assert_eq!(c_apply(&t(&["e0", "e0"])), t(&["e0", "e0"]));
        let mut expect = t(&["e1", "e0"]);
        expect.add_term(vec![g("e0"), g("f1")], rat(1));
        expect.add_term(vec![g("f1"), g("e0")], rat(1));
        assert_eq!(c_apply(&t(&["e0", "e1"])), expect);
        assert_eq!(expect.to_string(), "e0⊗f1 + e1⊗e0 + f1⊗e0");
    }

    #[test]
    fn involution_small() {
        assert!(involution_check(4).pass());
        let e01 = t(&["e0", "e1"]);
        assert_eq!(c_apply(&c_apply(&e01)), e01);
    }

    #[test]
    fn weight_is_preserved() {
        for tensor in basis_tensors(2, 6) {
            let w: u32 = tensor.iter().map(GenIndex::weight).sum();
            let image = c_apply(&TensorElement::basis(tensor));
            assert!(image.weights().iter().all(|&x| x == w));
        }
    }

    #[test]
    fn ybe_trivial_cases() {
        let fff = t(&["f1", "f1", "f1"]);
        assert_eq!(
            fff.apply_at(0).apply_at(1).apply_at(0),
            fff.apply_at(1).apply_at(0).apply_at(1)
        );
        let r = ybe_check(2);
        assert_eq!(r.cases.len(), basis_tensors(3, 2).len());
        assert_eq!(r.by_weight().iter().map(|x| x.1).sum::<usize>(), r.cases.len());
    }

    #[test]
    fn basis_tensor_counts() {
        // generators of weight w: 1 for w = 0, else 2
        assert_eq!(basis_tensors(2, 0).len(), 1);
        assert_eq!(basis_tensors(2, 1).len(), 1 + 4);
        assert_eq!(generators_up_to(2).len(), 5);
    }
}
