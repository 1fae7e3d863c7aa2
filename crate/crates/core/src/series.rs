//! Graded dimensions of free graded-commutative algebras, truncated to a box.
//!
//! A generator of odd parity contributes an exterior factor `(1 + u^d t^k)`,
//! an even one a symmetric factor `1 / (1 − u^d t^k)`.

use std::collections::BTreeMap;

/// `count` copies of a generator in multidegree `dim` and degree `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub dim: Vec<u32>,
    pub degree: i64,
    pub odd: bool,
    pub count: usize,
}

impl Generator {
    pub fn new(dim: Vec<u32>, degree: i64, odd: bool, count: usize) -> Self {
        assert!(dim.iter().any(|&x| x > 0), "generators need a nonzero multidegree");
        Generator {
            dim,
            degree,
            odd,
            count,
        }
    }
}

/// Coefficients of `Π (factors)` for multidegrees `≤ max_dim` entrywise and
/// degrees `≤ max_degree`. Generator degrees must be non-negative.
pub fn graded_dimensions(
    generators: &[Generator],
    max_dim: &[u32],
    max_degree: i64,
) -> BTreeMap<(Vec<u32>, i64), u64> {
    let mut coeffs: BTreeMap<(Vec<u32>, i64), u64> = BTreeMap::new();
    coeffs.insert((vec![0; max_dim.len()], 0), 1);
    let fits = |d: &[u32], k: i64| k <= max_degree && d.iter().zip(max_dim).all(|(a, b)| a <= b);
    for g in generators {
        assert!(g.degree >= 0, "negative generator degree");
        if !fits(&g.dim, g.degree) {
            continue;
        }
        for _ in 0..g.count {
            let mut next = coeffs.clone();
            for ((d, k), c) in &coeffs {
                let mut dd = d.clone();
                let mut kk = *k;
                loop {
                    for (a, b) in dd.iter_mut().zip(&g.dim) {
                        *a += b;
                    }
                    kk += g.degree;
                    if !fits(&dd, kk) {
                        break;
                    }
                    *next.entry((dd.clone(), kk)).or_insert(0) += c;
                    if g.odd {
                        break;
                    }
                }
            }
            coeffs = next;
        }
    }
    coeffs
}

/// Looks up one coefficient, zero when absent.
pub fn coefficient(table: &BTreeMap<(Vec<u32>, i64), u64>, dim: &[u32], degree: i64) -> u64 {
    table.get(&(dim.to_vec(), degree)).copied().unwrap_or(0)
}

/// Generators `V ⊗ Q[z]` with `z` in degree 2: each `(dim, degree)` in `base`
/// is repeated in degrees `degree + 2k` up to `max_degree`. Parity follows
/// the degree.
pub fn tensor_with_z(base: &[(Vec<u32>, i64)], max_degree: i64) -> Vec<Generator> {
    let mut out = Vec::new();
    for (dim, degree) in base {
        let mut k = *degree;
        while k <= max_degree {
            out.push(Generator::new(dim.clone(), k, k.rem_euclid(2) == 1, 1));
            k += 2;
        }
    }
    out
}

/// Dimensions of `Sym*(A₁)` for the central-slope Kronecker algebra, graded by
/// length `n` and weight: `A₁` has one generator in weight 0 and two in every
/// positive weight.
pub fn kronecker_sym_series(max_n: u32, max_weight: i64) -> BTreeMap<(Vec<u32>, i64), u64> {
    let gens: Vec<Generator> = (0..=max_weight)
        .map(|w| Generator::new(vec![1], w, false, if w == 0 { 1 } else { 2 }))
        .collect();
    graded_dimensions(&gens, &[max_n], max_weight)
}
