//! Partitions and the classical symmetric polynomials used as ground truth
//! for shuffle products: monomial symmetric, Schur (bialternant) and
//! elementary.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::exactpoly::{rat, Monomial, Poly, PolyError, Rational, SlotPermutation, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetricError {
    #[error("partition {parts:?} has more nonzero parts than the {vars} available variables")]
    TooFewVariables { parts: Vec<u32>, vars: usize },
    #[error("parts {0:?} are not weakly decreasing")]
    NotPartition(Vec<u32>),
    #[error("polynomial is not symmetric in the given variables")]
    NotSymmetric,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A partition; trailing zeros are dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, SymmetricError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(SymmetricError::NotPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary exponents into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).expect("sorted")
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Parts padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    /// Multiplicities of each distinct nonzero part.
    pub fn multiplicities(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n` with at most `max_parts` parts, in reverse
/// lexicographic order (`(n)` first).
pub fn partitions(n: u32, max_parts: usize) -> Vec<Partition> {
    fn go(n: u32, max_part: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            cur.push(p);
            go(n - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

fn check_fits(lambda: &Partition, d: usize) -> Result<(), SymmetricError> {
    if lambda.len() > d {
        return Err(SymmetricError::TooFewVariables {
            parts: lambda.0.clone(),
            vars: d,
        });
    }
    Ok(())
}

/// Distinct rearrangements of `v` in lexicographically decreasing order.
pub(crate) fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = v.to_vec();
    cur.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![cur.clone()];
    // previous permutation in lexicographic order
    loop {
        let n = cur.len();
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] > cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] < cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// `m_λ` in the variables `x_{vertex,1..=d}`.
pub fn monomial_symmetric_at(
    vertex: usize,
    lambda: &Partition,
    d: usize,
) -> Result<Poly, SymmetricError> {
    check_fits(lambda, d)?;
    Ok(Poly::from_terms(
        distinct_permutations(&lambda.padded(d))
            .into_iter()
            .map(|exps| {
                let m = Monomial::from_exponents(
                    exps.into_iter()
                        .enumerate()
                        .map(|(k, e)| (VarId::new(vertex, k + 1), e)),
                );
                (m, rat(1))
            }),
    ))
}

/// `m_λ(x_1, …, x_d)`.
pub fn monomial_symmetric(lambda: &Partition, d: usize) -> Result<Poly, SymmetricError> {
    monomial_symmetric_at(0, lambda, d)
}

/// Sign and images of all permutations of `1..=n`, in lexicographic order.
pub(crate) fn all_permutations(n: usize) -> Vec<(bool, Vec<usize>)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    let mut odd = false;
    loop {
        out.push((odd, cur.clone()));
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        // one swap plus reversing a block of length n-i
        let rev_len = n - i;
        odd ^= true ^ ((rev_len / 2) % 2 == 1);
        cur[i..].reverse();
    }
}

/// The alternant `det(x_i^{α_j})` in the variables `x_{vertex,1..=d}`.
fn alternant(vertex: usize, alpha: &[u32]) -> Poly {
    Poly::from_terms(all_permutations(alpha.len()).into_iter().map(|(odd, img)| {
        let m = Monomial::from_exponents(
            img.iter()
                .zip(alpha)
                .map(|(&slot, &e)| (VarId::new(vertex, slot), e)),
        );
        (m, if odd { rat(-1) } else { rat(1) })
    }))
}

/// The Schur polynomial `s_λ(x_{vertex,1}, …, x_{vertex,d})` as the ratio
/// `a_{λ+δ} / a_δ` of alternants.
pub fn schur_at(vertex: usize, lambda: &Partition, d: usize) -> Result<Poly, SymmetricError> {
    check_fits(lambda, d)?;
    let parts = lambda.padded(d);
    let delta: Vec<u32> = (0..d as u32).rev().collect();
    let shifted: Vec<u32> = parts.iter().zip(&delta).map(|(a, b)| a + b).collect();
    Ok(alternant(vertex, &shifted).exact_div(&alternant(vertex, &delta))?)
}

pub fn schur(lambda: &Partition, d: usize) -> Result<Poly, SymmetricError> {
    schur_at(0, lambda, d)
}

/// The elementary symmetric polynomial `e_k(x_1, …, x_d)`.
pub fn elementary(k: usize, d: usize) -> Poly {
    if k > d {
        return Poly::zero();
    }
    monomial_symmetric(&Partition(vec![1; k]), d).expect("fits")
}

/// True iff `p` is invariant under every adjacent transposition of slots
/// within each block `(vertex, slot count)`.
pub fn is_block_symmetric(p: &Poly, blocks: &[(usize, usize)]) -> bool {
    blocks.iter().all(|&(vertex, n)| {
        (1..n).all(|k| {
            let mut images: Vec<usize> = (1..=n).collect();
            images.swap(k - 1, k);
            let swap = SlotPermutation::identity()
                .with_vertex(vertex, images)
                .expect("transposition");
            p.rename(|v| swap.apply(v)) == *p
        })
    })
}

/// True iff within every block the exponents are weakly decreasing in the
/// slot, i.e. `m` is the dominant monomial of its orbit.
pub(crate) fn is_dominant(m: &Monomial, blocks: &[(usize, usize)]) -> bool {
    blocks.iter().all(|&(vertex, n)| {
        let e = m.block_exponents(vertex, n);
        e.windows(2).all(|w| w[0] >= w[1])
    })
}

/// Coefficients of a block-symmetric polynomial in the basis of products of
/// monomial symmetric functions, keyed by one partition per block.
pub fn block_profile(
    p: &Poly,
    blocks: &[(usize, usize)],
) -> Result<BTreeMap<Vec<Partition>, Rational>, SymmetricError> {
    let mut profile = BTreeMap::new();
    for (m, c) in p.terms() {
        let in_range = m.vars().all(|v| {
            blocks
                .iter()
                .any(|&(vertex, n)| v.vertex == vertex && v.slot <= n)
        });
        if !in_range {
            return Err(SymmetricError::NotSymmetric);
        }
        if is_dominant(m, blocks) {
            let key = blocks
                .iter()
                .map(|&(vertex, n)| Partition::from_unsorted(m.block_exponents(vertex, n)))
                .collect();
            profile.insert(key, c.clone());
        }
    }
    if expand_block_profile(&profile, blocks)? != *p {
        return Err(SymmetricError::NotSymmetric);
    }
    Ok(profile)
}

pub fn expand_block_profile(
    profile: &BTreeMap<Vec<Partition>, Rational>,
    blocks: &[(usize, usize)],
) -> Result<Poly, SymmetricError> {
    let mut out = Poly::zero();
    for (key, c) in profile {
        let mut term = Poly::constant(c.clone());
        for (lambda, &(vertex, n)) in key.iter().zip(blocks) {
            term = &term * &monomial_symmetric_at(vertex, lambda, n)?;
        }
        out += &term;
    }
    Ok(out)
}

/// Coefficients of `p ∈ Q[x_1..x_d]^{S_d}` in the monomial symmetric basis.
pub fn monomial_coefficient_profile(
    p: &Poly,
    d: usize,
) -> Result<BTreeMap<Partition, Rational>, SymmetricError> {
    Ok(block_profile(p, &[(0, d)])?
        .into_iter()
        .map(|(mut k, c)| (k.remove(0), c))
        .collect())
}
