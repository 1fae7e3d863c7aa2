//! Quivers, dimension vectors, the Euler form, slope stability and
//! Harder–Narasimhan types.

use std::collections::HashMap;
use std::fmt;

use num::Zero;
use thiserror::Error;

use crate::exactpoly::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("dimension vector has {got} entries but the quiver has {expected} vertices")]
    VertexMismatch { expected: usize, got: usize },
    #[error("the zero dimension vector has no slope")]
    ZeroDimVector,
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// A finite quiver. Vertices are indexed `0..n` in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Panics if an arrow endpoint is not a vertex index.
    pub fn new(vertices: Vec<String>, arrows: Vec<(usize, usize)>) -> Self {
        let n = vertices.len();
        assert!(
            arrows.iter().all(|&(s, t)| s < n && t < n),
            "arrow endpoint outside the vertex set"
        );
        Quiver { vertices, arrows }
    }

    /// One vertex, no arrows.
    pub fn a1() -> Self {
        Quiver::new(vec!["1".into()], vec![])
    }

    /// One vertex with a loop.
    pub fn l1() -> Self {
        Quiver::new(vec!["1".into()], vec![(0, 0)])
    }

    /// Two vertices with one arrow in each direction.
    pub fn a20tilde() -> Self {
        Quiver::new(vec!["1".into(), "2".into()], vec![(0, 1), (1, 0)])
    }

    /// The Kronecker quiver: two arrows from `i` to `j`.
    pub fn kronecker() -> Self {
        Quiver::new(vec!["i".into(), "j".into()], vec![(0, 1), (0, 1)])
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// `⟨e_i, e_j⟩`.
    pub fn euler_entry(&self, i: usize, j: usize) -> i64 {
        let arrows = self.arrows.iter().filter(|&&a| a == (i, j)).count() as i64;
        i64::from(i == j) - arrows
    }

    fn check(&self, d: &DimVector) -> Result<(), QuiverError> {
        if d.len() != self.vertex_count() {
            return Err(QuiverError::VertexMismatch {
                expected: self.vertex_count(),
                got: d.len(),
            });
        }
        Ok(())
    }

    /// `⟨a,b⟩ = Σ a_i b_i − Σ_{arrows} a_{s(α)} b_{t(α)}`.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> Result<i64, QuiverError> {
        self.check(a)?;
        self.check(b)?;
        let diag: i64 = a.0.iter().zip(&b.0).map(|(&x, &y)| i64::from(x * y)).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|&(s, t)| i64::from(a.0[s] * b.0[t]))
            .sum();
        Ok(diag - off)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.vertex_count();
        (0..n).all(|i| (0..n).all(|j| self.euler_entry(i, j) == self.euler_entry(j, i)))
    }

    pub fn dim(&self, entries: &[u32]) -> Result<DimVector, QuiverError> {
        let d = DimVector(entries.to_vec());
        self.check(&d)?;
        Ok(d)
    }
}

/// A dimension vector, one entry per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self − other` if it stays non-negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    /// All vectors `0 ≤ e ≤ self`, entrywise, in lexicographic order.
    pub fn sub_vectors(&self) -> Vec<DimVector> {
        let mut out = vec![Vec::new()];
        for &n in &self.0 {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..=n).map(move |k| {
                        let mut w = v.clone();
                        w.push(k);
                        w
                    })
                })
                .collect();
        }
        out.into_iter().map(DimVector).collect()
    }

    /// `(vertex, entry)` pairs describing the variable blocks `x_{i,1..d_i}`.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        self.0.iter().enumerate().map(|(i, &n)| (i, n as usize)).collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A stability function `Θ`, one integer per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Stability(pub Vec<i64>);

impl Stability {
    pub fn zero(n: usize) -> Self {
        Stability(vec![0; n])
    }

    pub fn eval(&self, d: &DimVector) -> i64 {
        self.0.iter().zip(&d.0).map(|(t, &x)| t * i64::from(x)).sum()
    }

    /// `μ(d) = Θ(d) / Σ d_i`.
    pub fn slope(&self, d: &DimVector) -> Result<Rational, QuiverError> {
        if d.is_zero() {
            return Err(QuiverError::ZeroDimVector);
        }
        Ok(Rational::new(self.eval(d).into(), i64::from(d.total()).into()))
    }

    /// All ordered tuples of nonzero vectors summing to `d` with strictly
    /// decreasing slopes. The one-term type `[d]` comes first; the rest are
    /// ordered by length, then lexicographically.
    pub fn hn_types(&self, d: &DimVector) -> Result<Vec<Vec<DimVector>>, QuiverError> {
        if d.is_zero() {
            return Err(QuiverError::ZeroDimVector);
        }
        let mut memo = HashMap::new();
        let mut types = self.types_of(d, &mut memo);
        types.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(types)
    }

    fn types_of(
        &self,
        d: &DimVector,
        memo: &mut HashMap<DimVector, Vec<Vec<DimVector>>>,
    ) -> Vec<Vec<DimVector>> {
        if let Some(t) = memo.get(d) {
            return t.clone();
        }
        let mut out = vec![vec![d.clone()]];
        for first in d.sub_vectors() {
            if first.is_zero() || &first == d {
                continue;
            }
            let mu = self.slope(&first).expect("nonzero");
            let rest = d.checked_sub(&first).expect("sub-vector");
            for tail in self.types_of(&rest, memo) {
                if self.slope(&tail[0]).expect("nonzero") < mu {
                    let mut t = Vec::with_capacity(tail.len() + 1);
                    t.push(first.clone());
                    t.extend(tail);
                    out.push(t);
                }
            }
        }
        memo.insert(d.clone(), out.clone());
        out
    }

    /// Decompositions `d = d′ + d″` into nonzero parts with `μ(d′) > μ(d″)`;
    /// these span the unstable part of the tautological presentation.
    pub fn destabilizing_splits(&self, d: &DimVector) -> Vec<(DimVector, DimVector)> {
        d.sub_vectors()
            .into_iter()
            .filter(|first| !first.is_zero() && first != d)
            .filter_map(|first| {
                let second = d.checked_sub(&first)?;
                (self.slope(&first).ok()? > self.slope(&second).ok()?).then_some((first, second))
            })
            .collect()
    }
}

/// A quiver with a stability function, parsed from an alias or a spec file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverSpec {
    pub quiver: Quiver,
    pub stability: Option<Stability>,
}

impl QuiverSpec {
    /// The given stability, or zero.
    pub fn stability_or_zero(&self) -> Stability {
        self.stability
            .clone()
            .unwrap_or_else(|| Stability::zero(self.quiver.vertex_count()))
    }
}

/// Looks up a built-in alias: `a1`, `l1`, `a20tilde`, `k2`.
pub fn builtin_quiver(alias: &str) -> Option<QuiverSpec> {
    let (quiver, stability) = match alias {
        "a1" => (Quiver::a1(), None),
        "l1" => (Quiver::l1(), None),
        "a20tilde" => (Quiver::a20tilde(), None),
        "k2" => (Quiver::kronecker(), Some(Stability(vec![1, 0]))),
        _ => return None,
    };
    Some(QuiverSpec { quiver, stability })
}

/// Parses an alias, or a spec of the form
///
/// ```text
/// vertices: [i, j]
/// arrows: [[i,j],[i,j]]
/// theta: {i:1, j:0}
/// ```
///
/// `theta` is optional; `#` starts a comment.
pub fn parse_quiver(spec: &str) -> Result<QuiverSpec, QuiverError> {
    if let Some(q) = builtin_quiver(spec.trim()) {
        return Ok(q);
    }
    let mut vertices: Option<Vec<String>> = None;
    let mut arrows_raw: Located<String> = None;
    let mut theta_raw: Located<i64> = None;

    for (lineno, raw_line) in spec.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw_line.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some(colon) = line.find(':') else {
            return Err(perr(line_no, 1, "expected `key: value`"));
        };
        let key = line[..colon].trim();
        let mut cur = Cursor {
            line: line_no,
            src: line.as_bytes(),
            pos: colon + 1,
        };
        match key {
            "vertices" => {
                let items = cur.list(|c| c.ident())?;
                cur.end()?;
                vertices = Some(items.into_iter().map(|(_, s)| s).collect());
            }
            "arrows" => {
                let items = cur.list(|c| {
                    let pair = c.list(|c| c.ident())?;
                    if pair.len() != 2 {
                        return Err(c.error("an arrow is a pair [source, target]"));
                    }
                    Ok(format!("{}\u{0}{}", pair[0].1, pair[1].1))
                })?;
                cur.end()?;
                let parsed = items
                    .into_iter()
                    .map(|(loc, s)| {
                        let (a, b) = s.split_once('\u{0}').expect("joined above");
                        (loc, a.to_string(), b.to_string())
                    })
                    .collect();
                arrows_raw = Some((line_no, parsed));
            }
            "theta" => {
                let items = cur.map_entries()?;
                cur.end()?;
                theta_raw = Some((line_no, items));
            }
            other => {
                return Err(perr(line_no, 1, &format!("unknown key `{other}`")));
            }
        }
    }

    let vertices = vertices.ok_or_else(|| perr(1, 1, "missing `vertices`"))?;
    let index = |loc: Loc, name: &str| {
        vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| perr(loc.0, loc.1, &format!("unknown vertex `{name}`")))
    };
    let mut arrows = Vec::new();
    for (loc, s, t) in arrows_raw.map(|(_, a)| a).unwrap_or_default() {
        arrows.push((index(loc, &s)?, index(loc, &t)?));
    }
    let stability = match theta_raw {
        None => None,
        Some((_, entries)) => {
            let mut theta = vec![0; vertices.len()];
            for (loc, name, value) in entries {
                theta[index(loc, &name)?] = value;
            }
            Some(Stability(theta))
        }
    };
    Ok(QuiverSpec {
        quiver: Quiver::new(vertices, arrows),
        stability,
    })
}

type Loc = (usize, usize);
/// A list value with the line it started on.
type Located<T> = Option<(usize, Vec<(Loc, String, T)>)>;

fn perr(line: usize, column: usize, message: &str) -> QuiverError {
    QuiverError::Parse {
        line,
        column,
        message: message.to_string(),
    }
}

struct Cursor<'a> {
    line: usize,
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn error(&self, message: &str) -> QuiverError {
        perr(self.line, self.pos + 1, message)
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), QuiverError> {
        self.ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn end(&mut self) -> Result<(), QuiverError> {
        self.ws();
        if self.pos < self.src.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(())
    }

    fn ident(&mut self) -> Result<String, QuiverError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a vertex name"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn integer(&mut self) -> Result<i64, QuiverError> {
        self.ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                self.pos = start;
                self.error("expected an integer")
            })
    }

    fn list<T>(
        &mut self,
        mut item: impl FnMut(&mut Self) -> Result<T, QuiverError>,
    ) -> Result<Vec<(Loc, T)>, QuiverError> {
        self.expect(b'[')?;
        let mut out = Vec::new();
        if self.eat(b']') {
            return Ok(out);
        }
        loop {
            self.ws();
            let loc = (self.line, self.pos + 1);
            out.push((loc, item(self)?));
            if self.eat(b']') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }

    fn map_entries(&mut self) -> Result<Vec<(Loc, String, i64)>, QuiverError> {
        self.expect(b'{')?;
        let mut out = Vec::new();
        if self.eat(b'}') {
            return Ok(out);
        }
        loop {
            self.ws();
            let loc = (self.line, self.pos + 1);
            let name = self.ident()?;
            self.expect(b':')?;
            let value = self.integer()?;
            out.push((loc, name, value));
            if self.eat(b'}') {
                return Ok(out);
            }
            self.expect(b',')?;
        }
    }
}

/// The Euler form restricted to a set of vectors is symmetric.
pub fn euler_symmetric_on(q: &Quiver, vectors: &[DimVector]) -> bool {
    vectors.iter().all(|a| {
        vectors
            .iter()
            .all(|b| q.euler_form(a, b).ok() == q.euler_form(b, a).ok())
    })
}

/// Convenience for tests and reports: slope as a rational, zero for `d = 0`.
pub fn slope_or_zero(theta: &Stability, d: &DimVector) -> Rational {
    theta.slope(d).unwrap_or_else(|_| Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::ratio;

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn euler_form_examples() {
        assert_eq!(Quiver::a1().euler_form(&dv(&[2]), &dv(&[3])), Ok(6));
        assert_eq!(Quiver::l1().euler_form(&dv(&[1]), &dv(&[1])), Ok(0));
        let k2 = Quiver::kronecker();
        assert_eq!(k2.euler_form(&dv(&[1, 0]), &dv(&[0, 1])), Ok(-2));
        assert_eq!(k2.euler_form(&dv(&[0, 1]), &dv(&[1, 0])), Ok(0));
        assert_eq!(
            k2.euler_form(&dv(&[1]), &dv(&[0, 1])),
            Err(QuiverError::VertexMismatch { expected: 2, got: 1 })
        );
    }

    #[test]
    fn symmetric_quivers() {
        assert!(Quiver::a1().is_symmetric());
        assert!(Quiver::l1().is_symmetric());
        assert!(Quiver::a20tilde().is_symmetric());
        assert!(!Quiver::kronecker().is_symmetric());
    }

    #[test]
    fn slope_examples() {
        let theta = Stability(vec![1, 0]);
        assert_eq!(theta.slope(&dv(&[1, 1])), Ok(ratio(1, 2)));
        assert_eq!(theta.slope(&dv(&[1, 0])), Ok(ratio(1, 1)));
        assert_eq!(theta.slope(&dv(&[0, 1])), Ok(ratio(0, 1)));
        assert_eq!(theta.slope(&dv(&[0, 0])), Err(QuiverError::ZeroDimVector));
    }

    #[test]
    fn hn_types_small() {
        let theta = Stability(vec![1, 0]);
        assert_eq!(
            theta.hn_types(&dv(&[1, 1])).unwrap(),
            vec![vec![dv(&[1, 1])], vec![dv(&[1, 0]), dv(&[0, 1])]]
        );
        assert_eq!(theta.hn_types(&dv(&[1, 0])).unwrap(), vec![vec![dv(&[1, 0])]]);
        assert!(theta.hn_types(&dv(&[0, 0])).is_err());
    }

    /// Brute force: all ordered compositions of d into nonzero vectors,
    /// filtered by strictly decreasing slope.
    fn brute_force_types(theta: &Stability, d: &DimVector) -> Vec<Vec<DimVector>> {
        fn compositions(d: &DimVector) -> Vec<Vec<DimVector>> {
            if d.is_zero() {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in d.sub_vectors() {
                if first.is_zero() {
                    continue;
                }
                for mut rest in compositions(&d.checked_sub(&first).unwrap()) {
                    rest.insert(0, first.clone());
                    out.push(rest);
                }
            }
            out
        }
        let mut out: Vec<_> = compositions(d)
            .into_iter()
            .filter(|c| {
                c.windows(2)
                    .all(|w| theta.slope(&w[0]).unwrap() > theta.slope(&w[1]).unwrap())
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn hn_types_match_brute_force() {
        let theta = Stability(vec![1, 0]);
        for d in [dv(&[2, 2]), dv(&[2, 1]), dv(&[3, 2]), dv(&[1, 3])] {
            let mut got = theta.hn_types(&d).unwrap();
            assert_eq!(got[0], vec![d.clone()]);
            got.sort();
            assert_eq!(got, brute_force_types(&theta, &d));
        }
        let t22 = theta.hn_types(&dv(&[2, 2])).unwrap();
        for expected in [
            vec![dv(&[2, 2])],
            vec![dv(&[2, 1]), dv(&[0, 1])],
            vec![dv(&[1, 0]), dv(&[1, 2])],
            vec![dv(&[2, 0]), dv(&[0, 2])],
            vec![dv(&[1, 0]), dv(&[1, 1]), dv(&[0, 1])],
        ] {
            assert!(t22.contains(&expected), "{expected:?}");
        }
        assert!(!t22.contains(&vec![dv(&[1, 1]), dv(&[1, 1])]));
        assert_eq!(t22.len(), 5);
    }

    #[test]
    fn destabilizing_splits_of_k2() {
        let theta = Stability(vec![1, 0]);
        let splits = theta.destabilizing_splits(&dv(&[2, 2]));
        assert_eq!(
            splits,
            vec![
                (dv(&[1, 0]), dv(&[1, 2])),
                (dv(&[2, 0]), dv(&[0, 2])),
                (dv(&[2, 1]), dv(&[0, 1])),
            ]
        );
        assert!(theta.destabilizing_splits(&dv(&[1, 0])).is_empty());
    }

    #[test]
    fn parses_aliases_and_files() {
        let k2 = parse_quiver("k2").unwrap();
        assert_eq!(k2.quiver, Quiver::kronecker());
        assert_eq!(k2.stability, Some(Stability(vec![1, 0])));
        let a1 = parse_quiver("a1").unwrap();
        assert_eq!(a1.quiver.vertex_count(), 1);
        assert!(a1.quiver.arrows().is_empty());
        assert_eq!(a1.stability_or_zero(), Stability(vec![0]));

        let text = "vertices: [i, j]\narrows: [[i,j],[i,j]]  # two arrows\ntheta: {i:1, j:0}\n";
        let parsed = parse_quiver(text).unwrap();
        assert_eq!(parsed, k2);
    }

    #[test]
    fn malformed_spec_reports_location() {
        let err = parse_quiver("vertices: [i, j]\narrows: [[i,j],[i]]\n").unwrap_err();
        assert!(matches!(err, QuiverError::Parse { line: 2, .. }), "{err:?}");
        let err = parse_quiver("vertices: [i]\narrows: [[i,k]]\n").unwrap_err();
        assert!(matches!(err, QuiverError::Parse { line: 2, .. }), "{err:?}");
        assert!(parse_quiver("vertices: [i\n").is_err());
        assert!(parse_quiver("colors: [red]\n").is_err());
    }
}
