//! The central-slope algebra `A` of the Kronecker quiver.
//!
//! `A_n` is the semistable quotient of `H(K₂)_{(n,n)}` for `Θ = (1,0)`. It is
//! generated by `A_1 = Q[x,y]/(y−x)²` with basis `e_n = x^n`, `f_n = x^{n−1}(y−x)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num::{One, Zero};
use thiserror::Error;

use crate::coha::{CohaElement, CohaError, ComponentBasis};
use crate::exactpoly::{rat, Poly, Rational, VarId};
use crate::quiver::{DimVector, Quiver, Stability};
use crate::semistable::{Semistable, SemistableError};
use crate::series;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KronError {
    #[error("index constraint violated for {kind} with p={p}, q={q}")]
    IndexConstraintViolated { kind: RelationKind, p: u32, q: u32 },
    #[error("invalid generator {0:?}")]
    InvalidGenerator(String),
    #[error("n must be at least 1")]
    EmptyLength,
    #[error(transparent)]
    Semistable(#[from] SemistableError),
    #[error(transparent)]
    Coha(#[from] CohaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    E,
    F,
}

/// A generator `e_n` (`n ≥ 0`) or `f_n` (`n ≥ 1`). Ordered `e_0 < e_1 < … < f_1 < f_2 < …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenIndex {
    kind: GenKind,
    n: u32,
}

impl GenIndex {
    pub fn e(n: u32) -> Self {
        GenIndex { kind: GenKind::E, n }
    }

    pub fn f(n: u32) -> Result<Self, KronError> {
        if n == 0 {
            return Err(KronError::InvalidGenerator("f0".into()));
        }
        Ok(GenIndex { kind: GenKind::F, n })
    }

    pub fn kind(&self) -> GenKind {
        self.kind
    }

    pub fn index(&self) -> u32 {
        self.n
    }

    pub fn weight(&self) -> u32 {
        self.n
    }

    pub(crate) fn f_unchecked(n: u32) -> Self {
        debug_assert!(n >= 1);
        GenIndex { kind: GenKind::F, n }
    }
}

impl fmt::Display for GenIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::E => write!(f, "e{}", self.n),
            GenKind::F => write!(f, "f{}", self.n),
        }
    }
}

impl FromStr for GenIndex {
    type Err = KronError;

    fn from_str(s: &str) -> Result<Self, KronError> {
        let bad = || KronError::InvalidGenerator(s.to_string());
        let (kind, digits) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let n: u32 = digits.parse().map_err(|_| bad())?;
        match kind {
            "e" | "E" => Ok(GenIndex::e(n)),
            "f" | "F" => GenIndex::f(n).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

/// A word in the generators, read as a left-to-right product.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenWord(pub Vec<GenIndex>);

impl GenWord {
    pub fn letters(&self) -> &[GenIndex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(GenIndex::weight).sum()
    }

    pub fn e_count(&self) -> usize {
        self.0.iter().filter(|g| g.kind == GenKind::E).count()
    }

    pub fn is_standard(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl fmt::Display for GenWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for GenWord {
    type Err = KronError;

    /// Whitespace- or comma-separated letters such as `e0 e1 f2`.
    fn from_str(s: &str) -> Result<Self, KronError> {
        s.split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(GenWord)
    }
}

/// A linear combination of standard-ordered words.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalForm {
    terms: BTreeMap<GenWord, Rational>,
}

impl NormalForm {
    pub fn terms(&self) -> impl Iterator<Item = (&GenWord, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &GenWord) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    fn add(&mut self, w: GenWord, c: Rational) {
        add_into(&mut self.terms, w, c);
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{abs}*{w}")?;
            }
        }
        Ok(())
    }
}

fn add_into(map: &mut BTreeMap<GenWord, Rational>, w: GenWord, c: Rational) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(w.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&w);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    /// `[e_p, e_q]`, `p < q`.
    EE,
    /// `[e_p, f_{q+1}]`, `p < q`.
    EfLt,
    /// `[e_p, f_{q+1}]`, `p > q`.
    EfGt,
    /// `[e_p, f_{p+1}] = 0`, with `q = p`.
    EfEq,
    /// `[f_{p+1}, f_{q+1}] = 0`, `p < q`.
    FF,
}

impl RelationKind {
    pub const ALL: [RelationKind; 5] = [
        RelationKind::EE,
        RelationKind::EfLt,
        RelationKind::EfGt,
        RelationKind::EfEq,
        RelationKind::FF,
    ];

    pub fn admissible(self, p: u32, q: u32) -> bool {
        match self {
            RelationKind::EE | RelationKind::EfLt | RelationKind::FF => p < q,
            RelationKind::EfGt => p > q,
            RelationKind::EfEq => p == q,
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationKind::EE => "EE",
            RelationKind::EfLt => "EF_lt",
            RelationKind::EfGt => "EF_gt",
            RelationKind::EfEq => "EF_eq",
            RelationKind::FF => "FF",
        })
    }
}

impl FromStr for RelationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        RelationKind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown relation kind {s:?}"))
    }
}

/// `[s ≥ p] − [s ≥ q]`, the coefficient pattern of all commutation rules.
pub(crate) fn window(s: u32, p: u32, q: u32) -> i64 {
    i64::from(s >= p) - i64::from(s >= q)
}

/// The right-hand side of `[a, b]` for generators `a < b` or `a > b`, as a
/// list of two-letter words with coefficients. Empty when they commute.
pub fn commutator(a: GenIndex, b: GenIndex) -> Vec<(i64, GenIndex, GenIndex)> {
    use GenKind::{E, F};
    match (a.kind, b.kind) {
        (E, E) => {
            let (p, q) = (a.n, b.n);
            (0..p + q)
                .filter_map(|s| {
                    let c = window(s, p, q);
                    (c != 0).then(|| (2 * c, GenIndex::e(s), GenIndex::f_unchecked(p + q - s)))
                })
                .collect()
        }
        (E, F) => {
            let (p, q) = (a.n, b.n - 1);
            (0..p + q)
                .filter_map(|s| {
                    let c = window(s, p, q);
                    (c != 0).then(|| (c, GenIndex::f_unchecked(s + 1), GenIndex::f_unchecked(p + q - s)))
                })
                .collect()
        }
        (F, E) => commutator(b, a).into_iter().map(|(c, x, y)| (-c, x, y)).collect(),
        (F, F) => Vec::new(),
    }
}

/// Rewrites `w` into standard-ordered words using the commutation rules.
pub fn normal_order(w: &GenWord) -> NormalForm {
    let mut pending: BTreeMap<GenWord, Rational> = BTreeMap::new();
    pending.insert(w.clone(), Rational::one());
    let mut out = NormalForm::default();
    // words with more E-letters first; rewriting never raises the E-count
    while let Some(word) = pending.keys().max_by_key(|w| (w.e_count(), w.len())).cloned() {
        let c = pending.remove(&word).expect("present");
        let Some(i) = word.0.windows(2).position(|p| p[0] > p[1]) else {
            out.add(word, c);
            continue;
        };
        let (b, a) = (word.0[i], word.0[i + 1]);
        let splice = |x: GenIndex, y: GenIndex| {
            let mut v = word.0.clone();
            v[i] = x;
            v[i + 1] = y;
            GenWord(v)
        };
        // b a = a b − [a, b]
        add_into(&mut pending, splice(a, b), c.clone());
        for (k, x, y) in commutator(a, b) {
            add_into(&mut pending, splice(x, y), -(&c * rat(k)));
        }
    }
    out
}

/// The three closed-form multiplication maps into `H(K₂)_{(1,1)}` and `H(K₂)_{(2,2)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormMap {
    /// `(1,0) ⊗ (0,1) → (1,1)`.
    Map1,
    /// `(1,0) ⊗ (1,2) → (2,2)`.
    Map2,
    /// `(1,1) ⊗ (1,1) → (2,2)`.
    Map3,
}

impl ClosedFormMap {
    pub fn dims(self) -> (DimVector, DimVector) {
        let d = |v: [u32; 2]| DimVector(v.to_vec());
        match self {
            ClosedFormMap::Map1 => (d([1, 0]), d([0, 1])),
            ClosedFormMap::Map2 => (d([1, 0]), d([1, 2])),
            ClosedFormMap::Map3 => (d([1, 1]), d([1, 1])),
        }
    }

    /// Evaluates the closed form on `f`, `g` written in their own slot ranges.
    pub fn closed_form(self, f: &Poly, g: &Poly) -> Poly {
        let x = |k| Poly::x(0, k);
        let y = |k| Poly::x(1, k);
        let sq = |p: Poly| p.pow(2);
        // substitute slots per vertex: (x-slot map, y-slot map)
        let sub = |p: &Poly, xs: [usize; 2], ys: [usize; 2]| {
            p.rename(|v| {
                let map = if v.vertex == 0 { xs } else { ys };
                VarId::new(v.vertex, map[v.slot - 1])
            })
        };
        match self {
            ClosedFormMap::Map1 => &sub(f, [1, 2], [1, 2]) * &(&sub(g, [1, 2], [1, 2]) * &sq(&y(1) - &x(1))),
            ClosedFormMap::Map2 => {
                let t1 = &(f * &sub(g, [2, 1], [1, 2])) * &(&sq(&y(1) - &x(1)) * &sq(&y(2) - &x(1)));
                let t2 = &(&sub(f, [2, 1], [1, 2]) * g) * &(&sq(&y(1) - &x(2)) * &sq(&y(2) - &x(2)));
                (&t1 - &t2).exact_div(&(&x(2) - &x(1))).expect("divisible")
            }
            ClosedFormMap::Map3 => {
                let term = |fx: usize, fy: usize, gx: usize, gy: usize, kx: usize, ky: usize| {
                    &(&sub(f, [fx, 0], [fy, 0]) * &sub(g, [gx, 0], [gy, 0])) * &sq(&y(ky) - &x(kx))
                };
                let num = &(&term(1, 1, 2, 2, 1, 2) - &term(1, 2, 2, 1, 1, 1))
                    - &(&term(2, 1, 1, 2, 2, 2) - &term(2, 2, 1, 1, 2, 1));
                num.exact_div(&(&(&x(2) - &x(1)) * &(&y(2) - &y(1))))
                    .expect("divisible")
            }
        }
    }
}

/// Whether the shuffle product of `f` and `g` agrees with the closed form.
pub fn closed_form_check(which: ClosedFormMap, f: &Poly, g: &Poly) -> Result<bool, KronError> {
    let q = Arc::new(Quiver::kronecker());
    let (d1, d2) = which.dims();
    let fe = CohaElement::new(q.clone(), d1, f.clone())?;
    let ge = CohaElement::new(q, d2, g.clone())?;
    Ok(fe.mul(&ge)?.poly() == &which.closed_form(f, g))
}

/// Result of checking one relation in `A_2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub kind: RelationKind,
    pub p: u32,
    pub q: u32,
    pub degree: u32,
    pub holds: bool,
    /// Whether `lhs − rhs` is already zero in `H(K₂)_{(2,2)}`.
    pub exact_zero: bool,
    /// Coordinates of `lhs − rhs` in the unstable echelon basis.
    pub certificate: Option<Vec<Rational>>,
}

/// One degree of a PBW comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwRow {
    pub degree: u32,
    pub coh: i64,
    pub quotient_dim: usize,
    pub standard_monomials: u64,
    pub series_coefficient: u64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwReport {
    pub n: u32,
    pub rows: Vec<PbwRow>,
}

impl PbwReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

/// The algebra `A` with caches for products and unstable subspaces.
#[derive(Debug)]
pub struct Kronecker {
    sst: Semistable,
    words: Mutex<HashMap<GenWord, Poly>>,
}

impl Default for Kronecker {
    fn default() -> Self {
        Kronecker::new()
    }
}

impl Kronecker {
    pub fn new() -> Self {
        let sst = Semistable::new(Arc::new(Quiver::kronecker()), Stability(vec![1, 0]))
            .expect("stability matches the quiver");
        Kronecker {
            sst,
            words: Mutex::new(HashMap::new()),
        }
    }

    pub fn semistable(&self) -> &Semistable {
        &self.sst
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.sst.quiver()
    }

    fn nn(n: u32) -> DimVector {
        DimVector(vec![n, n])
    }

    /// The representative of `g` in `H(K₂)_{(1,1)} = Q[x,y]`.
    pub fn generator_element(&self, g: GenIndex) -> CohaElement {
        let x = Poly::x(0, 1);
        let poly = match g.kind {
            GenKind::E => x.pow(g.n),
            GenKind::F => &x.pow(g.n - 1) * &(&Poly::x(1, 1) - &x),
        };
        CohaElement::new(self.quiver().clone(), Self::nn(1), poly).expect("valid element")
    }

    /// The left-to-right product of the letters in `H(K₂)_{(n,n)}`.
    pub fn word_element(&self, w: &GenWord) -> Result<CohaElement, KronError> {
        let n = w.len() as u32;
        if let Some(p) = self.words.lock().unwrap().get(w) {
            return Ok(CohaElement::new_unchecked(self.quiver().clone(), Self::nn(n), p.clone()));
        }
        let poly = match w.0.split_last() {
            None => Poly::one(),
            Some((last, init)) => {
                let prefix = self.word_element(&GenWord(init.to_vec()))?;
                let plan = self.sst.plan(prefix.dim(), &Self::nn(1))?;
                plan.multiply(prefix.poly(), self.generator_element(*last).poly())?
            }
        };
        self.words.lock().unwrap().insert(w.clone(), poly.clone());
        Ok(CohaElement::new_unchecked(self.quiver().clone(), Self::nn(n), poly))
    }

    fn product(&self, a: GenIndex, b: GenIndex) -> Result<Poly, KronError> {
        Ok(self.word_element(&GenWord(vec![a, b]))?.into_poly())
    }

    /// Left and right side of a relation, both in `H(K₂)_{(2,2)}`.
    pub fn relation_sides(
        &self,
        kind: RelationKind,
        p: u32,
        q: u32,
    ) -> Result<(CohaElement, CohaElement), KronError> {
        if !kind.admissible(p, q) {
            return Err(KronError::IndexConstraintViolated { kind, p, q });
        }
        let e = GenIndex::e;
        let f = GenIndex::f_unchecked;
        let (a, b) = match kind {
            RelationKind::EE => (e(p), e(q)),
            RelationKind::EfLt | RelationKind::EfGt | RelationKind::EfEq => (e(p), f(q + 1)),
            RelationKind::FF => (f(p + 1), f(q + 1)),
        };
        let lhs = &self.product(a, b)? - &self.product(b, a)?;
        let mut rhs = Poly::zero();
        for (c, x, y) in commutator(a, b) {
            rhs += &self.product(x, y)?.scale(&rat(c));
        }
        let wrap = |p: Poly| CohaElement::new(self.quiver().clone(), Self::nn(2), p);
        Ok((wrap(lhs)?, wrap(rhs)?))
    }

    pub fn relation_check(&self, kind: RelationKind, p: u32, q: u32) -> Result<RelationCheck, KronError> {
        let (lhs, rhs) = self.relation_sides(kind, p, q)?;
        let degree = match kind {
            RelationKind::EE => p + q,
            RelationKind::EfLt | RelationKind::EfGt | RelationKind::EfEq => p + q + 1,
            RelationKind::FF => p + q + 2,
        };
        let diff = lhs.sub(&rhs)?;
        let u = self.sst.unstable_subspace(&Self::nn(2), degree)?;
        let certificate = if diff.is_zero() {
            Some(vec![Rational::zero(); u.dimension()])
        } else {
            u.certificate(diff.poly())
        };
        Ok(RelationCheck {
            kind,
            p,
            q,
            degree,
            holds: certificate.is_some(),
            exact_zero: diff.is_zero(),
            certificate,
        })
    }

    /// Coordinates of the class of `w` on the quotient representatives of
    /// `A_n` in degree `weight(w)`.
    pub fn word_to_quotient(&self, w: &GenWord) -> Result<Vec<Rational>, KronError> {
        if w.is_empty() {
            return Ok(vec![Rational::one()]);
        }
        Ok(self.sst.project(&self.word_element(w)?)?)
    }

    /// Evaluates a combination of words of length `n` and weight `m`.
    pub fn normal_form_to_quotient(&self, nf: &NormalForm, n: u32, m: u32) -> Result<Vec<Rational>, KronError> {
        if n == 0 {
            return Ok(vec![nf.coeff(&GenWord::default())]);
        }
        let dim = self.sst.sst_quotient(&Self::nn(n), m)?.dimension;
        let mut out = vec![Rational::zero(); dim];
        for (w, c) in nf.terms() {
            for (o, v) in out.iter_mut().zip(self.word_to_quotient(w)?) {
                *o += c * v;
            }
        }
        Ok(out)
    }

    /// Compares quotient dimension, standard-monomial count and the
    /// `Sym*(A_1)` coefficient at `d = (n,n)` for degrees `0..=m_max`.
    pub fn pbw_check(&self, n: u32, m_max: u32) -> Result<PbwReport, KronError> {
        if n == 0 {
            return Err(KronError::EmptyLength);
        }
        let series = series::kronecker_sym_series(n, i64::from(m_max));
        let mut rows = Vec::new();
        for m in 0..=m_max {
            let quotient_dim = self.sst.sst_quotient(&Self::nn(n), m)?.dimension;
            let standard_monomials = standard_monomial_count(n, m);
            let series_coefficient = series::coefficient(&series, &[n], i64::from(m));
            rows.push(PbwRow {
                degree: m,
                coh: 2 * i64::from(m),
                quotient_dim,
                standard_monomials,
                series_coefficient,
                pass: quotient_dim as u64 == standard_monomials && standard_monomials == series_coefficient,
            });
        }
        Ok(PbwReport { n, rows })
    }

    /// All standard-ordered words of length `n` and weight `m`.
    pub fn standard_monomials(n: u32, m: u32) -> Vec<GenWord> {
        let mut letters: Vec<GenIndex> = (0..=m).map(GenIndex::e).collect();
        letters.extend((1..=m).map(GenIndex::f_unchecked));
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn go(letters: &[GenIndex], start: usize, n: u32, m: u32, cur: &mut Vec<GenIndex>, out: &mut Vec<GenWord>) {
            if cur.len() as u32 == n {
                if m == 0 {
                    out.push(GenWord(cur.clone()));
                }
                return;
            }
            for (i, g) in letters.iter().enumerate().skip(start) {
                if g.weight() <= m {
                    cur.push(*g);
                    go(letters, i, n, m - g.weight(), cur, out);
                    cur.pop();
                }
            }
        }
        go(&letters, 0, n, m, &mut cur, &mut out);
        out
    }

    /// Representatives of the quotient basis as elements of `H(K₂)_{(n,n)}`.
    pub fn quotient_basis(&self, n: u32, m: u32) -> Result<Vec<CohaElement>, KronError> {
        Ok(self.sst.sst_quotient(&Self::nn(n), m)?.representatives)
    }

    /// The basis of the ambient component `H(K₂)_{(n,n)}` in degree `m`.
    pub fn component_basis(&self, n: u32, m: u32) -> Result<Arc<ComponentBasis>, KronError> {
        Ok(self.sst.basis(&Self::nn(n), m)?)
    }
}

/// Number of multisets of `n` generators with total weight `m`.
pub fn standard_monomial_count(n: u32, m: u32) -> u64 {
    // count[k][w]: multisets of size k and weight w over generators seen so far
    let (n, m) = (n as usize, m as usize);
    let mut count = vec![vec![0u64; m + 1]; n + 1];
    count[0][0] = 1;
    let mut gens = vec![0usize];
    for w in 1..=m {
        gens.push(w);
        gens.push(w);
    }
    for &g in &gens {
        for k in 1..=n {
            for w in g..=m {
                count[k][w] += count[k - 1][w - g];
            }
        }
    }
    count[n][m]
}

pub fn generator_element(g: GenIndex) -> CohaElement {
    Kronecker::new().generator_element(g)
}

pub fn relation_sides(kind: RelationKind, p: u32, q: u32) -> Result<(CohaElement, CohaElement), KronError> {
    Kronecker::new().relation_sides(kind, p, q)
}

pub fn relation_check(kind: RelationKind, p: u32, q: u32) -> Result<RelationCheck, KronError> {
    Kronecker::new().relation_check(kind, p, q)
}

pub fn pbw_check(n: u32, m_max: u32) -> Result<PbwReport, KronError> {
    Kronecker::new().pbw_check(n, m_max)
}

pub fn word_to_quotient(w: &GenWord) -> Result<Vec<Rational>, KronError> {
    Kronecker::new().word_to_quotient(w)
}
