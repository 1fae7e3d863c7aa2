//! Graded components `H(Q)_d` and the shuffle product with kernel.
//!
//! For `f ∈ H(Q)_{d′}` and `g ∈ H(Q)_{d″}` the product sums, over tuples of
//! per-vertex `(d′_i, d″_i)`-shuffles `σ`, the terms
//!
//! ```text
//! f(x_{i,σ_i(k)}) · g(x_{i,σ_i(d′_i+l)}) · Π_{i,j} Π_{k,l} (x_{j,σ_j(d′_j+l)} − x_{i,σ_i(k)})^{−⟨e_i,e_j⟩}
//! ```
//!
//! A negative kernel exponent only occurs on the diagonal of a loop-free
//! vertex, where it is `−1`. Those factors are cleared with the Vandermonde
//! `V_i = Π_{a<b} (x_{i,b} − x_{i,a})`: a shuffle's cross pairs together with
//! the pairs inside each block make up all of `V_i`, up to the sign of the
//! shuffle. So every term is `sign(σ) · σ(P) / V` for the single polynomial
//! `P = f · g · K⁺ · V_{first block} · V_{second block}`, and the product is
//! one exact division of `Σ_σ sign(σ) σ(P)` by `V = Π_i V_i`.

use std::collections::HashMap;
use std::sync::Arc;

use num::{One, Zero};
use thiserror::Error;

use crate::exactpoly::{rat, Monomial, Poly, Rational, VarId};
use crate::linalg;
use crate::quiver::{DimVector, Quiver, QuiverError};
use crate::symmetric::{
    is_block_symmetric, is_dominant, monomial_symmetric_at, partitions, schur_at, Partition,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohaError {
    #[error("elements belong to different quivers")]
    QuiverMismatch,
    #[error("dimension vectors differ: {0} vs {1}")]
    DimMismatch(DimVector, DimVector),
    #[error("polynomial is not symmetric within each vertex block")]
    NotSymmetric,
    #[error("variable {0} lies outside the dimension vector's slot range")]
    VariableOutOfRange(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element is not in the span of the basis")]
    NotInSpan,
    #[error("shuffle sum not divisible by the Vandermonde denominator")]
    InternalNotDivisible,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// An element of `H(Q)_d`: a polynomial in `x_{i,k}`, `k ≤ d_i`, symmetric
/// within each vertex block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohaElement {
    quiver: Arc<Quiver>,
    dim: DimVector,
    poly: Poly,
}

impl CohaElement {
    pub fn new(quiver: Arc<Quiver>, dim: DimVector, poly: Poly) -> Result<Self, CohaError> {
        quiver.dim(dim.entries())?;
        for v in poly.variables() {
            if v.vertex >= dim.len() || v.slot > dim.entries()[v.vertex] as usize {
                return Err(CohaError::VariableOutOfRange(crate::exactpoly::variable_name(v)));
            }
        }
        if !is_block_symmetric(&poly, &dim.blocks()) {
            return Err(CohaError::NotSymmetric);
        }
        Ok(CohaElement { quiver, dim, poly })
    }

    pub(crate) fn new_unchecked(quiver: Arc<Quiver>, dim: DimVector, poly: Poly) -> Self {
        CohaElement { quiver, dim, poly }
    }

    /// The unit, in dimension zero.
    pub fn unit(quiver: Arc<Quiver>) -> Self {
        let n = quiver.vertex_count();
        CohaElement::new_unchecked(quiver, DimVector::zero(n), Poly::one())
    }

    pub fn zero(quiver: Arc<Quiver>, dim: DimVector) -> Self {
        CohaElement::new_unchecked(quiver, dim, Poly::zero())
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn into_poly(self) -> Poly {
        self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn same_space(&self, other: &CohaElement) -> Result<(), CohaError> {
        if !same_quiver(&self.quiver, &other.quiver) {
            return Err(CohaError::QuiverMismatch);
        }
        if self.dim != other.dim {
            return Err(CohaError::DimMismatch(self.dim.clone(), other.dim.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &CohaElement) -> Result<CohaElement, CohaError> {
        self.same_space(other)?;
        Ok(self.with_poly(&self.poly + &other.poly))
    }

    pub fn sub(&self, other: &CohaElement) -> Result<CohaElement, CohaError> {
        self.same_space(other)?;
        Ok(self.with_poly(&self.poly - &other.poly))
    }

    pub fn scale(&self, c: &Rational) -> CohaElement {
        self.with_poly(self.poly.scale(c))
    }

    fn with_poly(&self, poly: Poly) -> CohaElement {
        CohaElement::new_unchecked(self.quiver.clone(), self.dim.clone(), poly)
    }

    /// The shuffle product `self * other`.
    pub fn mul(&self, other: &CohaElement) -> Result<CohaElement, CohaError> {
        shuffle_product(self, other)
    }
}

fn same_quiver(a: &Arc<Quiver>, b: &Arc<Quiver>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// The element `x^i` of `H(Q)_{e_vertex}`.
pub fn psi(quiver: &Arc<Quiver>, vertex: usize, i: u32) -> CohaElement {
    let mut dim = DimVector::zero(quiver.vertex_count());
    dim.0[vertex] = 1;
    CohaElement::new_unchecked(quiver.clone(), dim, Poly::x(vertex, 1).pow(i))
}

/// The polynomial degree of the kernel for `d′ ⊗ d″`, namely `−⟨d′,d″⟩`.
pub fn kernel_degree(q: &Quiver, d1: &DimVector, d2: &DimVector) -> Result<i64, QuiverError> {
    Ok(-q.euler_form(d1, d2)?)
}

/// `Π_{a<b} (x_{v,b} − x_{v,a})` over the given slots.
fn vandermonde(vertex: usize, slots: impl IntoIterator<Item = usize>) -> Poly {
    let slots: Vec<usize> = slots.into_iter().collect();
    let mut out = Poly::one();
    for (i, &a) in slots.iter().enumerate() {
        for &b in &slots[i + 1..] {
            out = &out * &(&Poly::x(vertex, b) - &Poly::x(vertex, a));
        }
    }
    out
}

/// All `(a,b)`-shuffles of `1..=a+b` as slot images plus inversion parity.
fn shuffles(a: usize, b: usize) -> Vec<(Vec<usize>, bool)> {
    let n = a + b;
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(a);
    fn go(
        start: usize,
        n: usize,
        a: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, bool)>,
    ) {
        if chosen.len() == a {
            let rest: Vec<usize> = (1..=n).filter(|s| !chosen.contains(s)).collect();
            let inversions: usize = chosen
                .iter()
                .map(|&s| rest.iter().filter(|&&r| r < s).count())
                .sum();
            let mut images = chosen.clone();
            images.extend(rest);
            out.push((images, inversions % 2 == 1));
            return;
        }
        for s in start..=n {
            chosen.push(s);
            go(s + 1, n, a, chosen, out);
            chosen.pop();
        }
    }
    go(1, n, a, &mut chosen, &mut out);
    out
}

/// Precomputed data for multiplying `H(Q)_{d′} ⊗ H(Q)_{d″} → H(Q)_{d′+d″}`.
#[derive(Debug, Clone)]
pub struct ShufflePlan {
    quiver: Arc<Quiver>,
    left: DimVector,
    right: DimVector,
    total: DimVector,
    // per tuple of shuffles: images[vertex][slot-1] and the sign
    shuffles: Vec<(Vec<Vec<usize>>, bool)>,
    inverse_shuffles: Vec<(Vec<Vec<usize>>, bool)>,
    kernel: Poly,
    denominator: Poly,
}

impl ShufflePlan {
    pub fn new(quiver: Arc<Quiver>, left: DimVector, right: DimVector) -> Result<Self, CohaError> {
        quiver.dim(left.entries())?;
        quiver.dim(right.entries())?;
        let n = quiver.vertex_count();
        let total = left.add(&right);
        let (l, r) = (left.entries(), right.entries());

        let mut shuffle_tuples: Vec<(Vec<Vec<usize>>, bool)> = vec![(Vec::new(), false)];
        for v in 0..n {
            let loop_free = quiver.euler_entry(v, v) > 0;
            let local = shuffles(l[v] as usize, r[v] as usize);
            shuffle_tuples = shuffle_tuples
                .into_iter()
                .flat_map(|(imgs, sign)| {
                    local.iter().map(move |(img, odd)| {
                        let mut imgs = imgs.clone();
                        imgs.push(img.clone());
                        (imgs, sign ^ (loop_free && *odd))
                    })
                })
                .collect();
        }

        let mut kernel = Poly::one();
        let mut denominator = Poly::one();
        for i in 0..n {
            for j in 0..n {
                let exponent = -quiver.euler_entry(i, j);
                if exponent < 0 {
                    // only the diagonal of a loop-free vertex, exponent −1
                    debug_assert!(i == j && exponent == -1);
                    continue;
                }
                if exponent == 0 {
                    continue;
                }
                for k in 1..=l[i] as usize {
                    for m in 1..=r[j] as usize {
                        let factor = &Poly::x(j, l[j] as usize + m) - &Poly::x(i, k);
                        kernel = &kernel * &factor.pow(exponent as u32);
                    }
                }
            }
            if quiver.euler_entry(i, i) > 0 {
                let li = l[i] as usize;
                let ti = total.entries()[i] as usize;
                kernel = &kernel * &vandermonde(i, 1..=li);
                kernel = &kernel * &vandermonde(i, li + 1..=ti);
                denominator = &denominator * &vandermonde(i, 1..=ti);
            }
        }

        let inverse_shuffles = shuffle_tuples
            .iter()
            .map(|(images, odd)| {
                let inv = images
                    .iter()
                    .map(|img| {
                        let mut inv = vec![0; img.len()];
                        for (k, &s) in img.iter().enumerate() {
                            inv[s - 1] = k + 1;
                        }
                        inv
                    })
                    .collect();
                (inv, *odd)
            })
            .collect();
        Ok(ShufflePlan {
            quiver,
            left,
            right,
            total,
            shuffles: shuffle_tuples,
            inverse_shuffles,
            kernel,
            denominator,
        })
    }

    pub fn total(&self) -> &DimVector {
        &self.total
    }

    /// Number of shuffle tuples summed per product.
    pub fn term_count(&self) -> usize {
        self.shuffles.len()
    }

    /// Multiplies polynomials in the left and right variable ranges.
    pub fn multiply(&self, f: &Poly, g: &Poly) -> Result<Poly, CohaError> {
        let l = self.left.entries();
        let shifted = g.rename(|v| VarId::new(v.vertex, v.slot + l[v.vertex] as usize));
        let base = &(f * &shifted) * &self.kernel;
        if base.is_zero() {
            return Ok(Poly::zero());
        }
        let mut numerator = Poly::zero();
        for (images, odd) in &self.shuffles {
            let sign = if *odd { rat(-1) } else { rat(1) };
            for (m, c) in base.terms() {
                let renamed = m.rename(|v| VarId::new(v.vertex, images[v.vertex][v.slot - 1]));
                numerator.add_term(renamed, c * &sign);
            }
        }
        numerator
            .exact_div(&self.denominator)
            .map_err(|_| CohaError::InternalNotDivisible)
    }

    /// Coordinates of `f * g` in the basis behind `target`, read off from the
    /// shuffle numerator at the leading monomials of the alternants, with no
    /// division. Agrees with [`ShufflePlan::multiply`] followed by
    /// [`ComponentBasis::coords_unchecked`].
    pub fn multiply_coords(&self, f: &Poly, g: &Poly, target: &SchurTransition) -> Vec<Rational> {
        assert_eq!(target.dim, self.total, "transition for the wrong dimension");
        let l = self.left.entries();
        let shifted = g.rename(|v| VarId::new(v.vertex, v.slot + l[v.vertex] as usize));
        let base = &(f * &shifted) * &self.kernel;
        let mut coords = vec![Rational::zero(); target.rows.len()];
        if base.is_zero() {
            return coords;
        }
        for (lead, row) in target.leading.iter().zip(&target.rows) {
            let mut c = Rational::zero();
            for (inverse, odd) in &self.inverse_shuffles {
                let source = lead.rename(|v| VarId::new(v.vertex, inverse[v.vertex][v.slot - 1]));
                let b = base.coeff(&source);
                if !b.is_zero() {
                    if *odd {
                        c -= b;
                    } else {
                        c += b;
                    }
                }
            }
            if c.is_zero() {
                continue;
            }
            c *= &target.sign;
            for (j, k) in row {
                coords[*j] += &c * k;
            }
        }
        coords
    }

    pub fn multiply_elements(
        &self,
        f: &CohaElement,
        g: &CohaElement,
    ) -> Result<CohaElement, CohaError> {
        if !same_quiver(&f.quiver, &self.quiver) || !same_quiver(&g.quiver, &self.quiver) {
            return Err(CohaError::QuiverMismatch);
        }
        if f.dim != self.left {
            return Err(CohaError::DimMismatch(f.dim.clone(), self.left.clone()));
        }
        if g.dim != self.right {
            return Err(CohaError::DimMismatch(g.dim.clone(), self.right.clone()));
        }
        let poly = self.multiply(&f.poly, &g.poly)?;
        Ok(CohaElement::new_unchecked(self.quiver.clone(), self.total.clone(), poly))
    }
}

/// The shuffle product `f * g`.
pub fn shuffle_product(f: &CohaElement, g: &CohaElement) -> Result<CohaElement, CohaError> {
    if !same_quiver(&f.quiver, &g.quiver) {
        return Err(CohaError::QuiverMismatch);
    }
    ShufflePlan::new(f.quiver.clone(), f.dim.clone(), g.dim.clone())?.multiply_elements(f, g)
}

/// Left-to-right product of a nonempty list.
pub fn product_all(factors: &[CohaElement]) -> Result<CohaElement, CohaError> {
    let (first, rest) = factors.split_first().expect("at least one factor");
    rest.iter().try_fold(first.clone(), |acc, g| shuffle_product(&acc, g))
}

/// The `Λ⁺ × Z` degree `(d, k)` with `k = 2·deg + ⟨d,d⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaDegree {
    pub dim: DimVector,
    pub coh: i64,
}

/// Γ-degree of a homogeneous nonzero element.
pub fn gamma_degree(e: &CohaElement) -> Result<GammaDegree, CohaError> {
    if !e.poly.is_homogeneous() {
        return Err(CohaError::NotHomogeneous);
    }
    let deg = e.poly.degree().ok_or(CohaError::NotHomogeneous)?;
    coh_degree(&e.quiver, &e.dim, deg).map(|coh| GammaDegree {
        dim: e.dim.clone(),
        coh,
    })
}

/// `2m + ⟨d,d⟩`.
pub fn coh_degree(q: &Quiver, d: &DimVector, m: u32) -> Result<i64, CohaError> {
    Ok(2 * i64::from(m) + q.euler_form(d, d)?)
}

/// The monomial-symmetric basis of the degree-`m` part of `H(Q)_d`.
///
/// Basis vectors are indexed by one partition per vertex (at most `d_i`
/// parts, sizes summing to `m`) and ordered by their dominant monomial,
/// largest first. Coordinates of a block-symmetric polynomial are just its
/// coefficients at the dominant monomials.
#[derive(Debug, Clone)]
pub struct ComponentBasis {
    quiver: Arc<Quiver>,
    dim: DimVector,
    degree: u32,
    keys: Vec<Vec<Partition>>,
    dominant: Vec<Monomial>,
    polys: Vec<Poly>,
    index: HashMap<Monomial, usize>,
}

impl ComponentBasis {
    pub fn new(quiver: Arc<Quiver>, dim: DimVector, degree: u32) -> Result<Self, CohaError> {
        quiver.dim(dim.entries())?;
        let mut keyed: Vec<(Monomial, Vec<Partition>)> = Vec::new();
        for sizes in compositions(degree, dim.len()) {
            let mut choices: Vec<Vec<Partition>> = vec![Vec::new()];
            for (v, &s) in sizes.iter().enumerate() {
                let parts = partitions(s, dim.entries()[v] as usize);
                choices = choices
                    .into_iter()
                    .flat_map(|c| {
                        parts.iter().map(move |p| {
                            let mut c = c.clone();
                            c.push(p.clone());
                            c
                        })
                    })
                    .collect();
            }
            for key in choices {
                let m = Monomial::from_exponents(key.iter().enumerate().flat_map(|(v, p)| {
                    p.parts()
                        .iter()
                        .enumerate()
                        .map(move |(k, &e)| (VarId::new(v, k + 1), e))
                }));
                keyed.push((m, key));
            }
        }
        keyed.sort_by(|a, b| b.0.cmp(&a.0));
        let index = keyed
            .iter()
            .enumerate()
            .map(|(i, (m, _))| (m.clone(), i))
            .collect();
        let (dominant, keys): (Vec<Monomial>, Vec<Vec<Partition>>) = keyed.into_iter().unzip();
        let polys = keys
            .iter()
            .map(|key| {
                key.iter().enumerate().fold(Poly::one(), |acc, (v, lambda)| {
                    let m = monomial_symmetric_at(v, lambda, dim.entries()[v] as usize)
                        .expect("partition fits by construction");
                    &acc * &m
                })
            })
            .collect();
        Ok(ComponentBasis {
            quiver,
            dim,
            degree,
            keys,
            dominant,
            polys,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn keys(&self) -> &[Vec<Partition>] {
        &self.keys
    }

    pub fn dominant_monomial(&self, i: usize) -> &Monomial {
        &self.dominant[i]
    }

    pub fn poly(&self, i: usize) -> &Poly {
        &self.polys[i]
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn element(&self, i: usize) -> CohaElement {
        CohaElement::new_unchecked(self.quiver.clone(), self.dim.clone(), self.polys[i].clone())
    }

    pub fn elements(&self) -> Vec<CohaElement> {
        (0..self.len()).map(|i| self.element(i)).collect()
    }

    /// Reads off dominant coefficients without checking that `p` lies in
    /// the component.
    pub fn coords_unchecked(&self, p: &Poly) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.len()];
        let blocks = self.dim.blocks();
        for (m, c) in p.terms() {
            if m.degree() != self.degree || !is_dominant(m, &blocks) {
                continue;
            }
            if let Some(&i) = self.index.get(m) {
                out[i] = c.clone();
            }
        }
        out
    }

    /// Coordinates of `p`, verified by re-expansion.
    pub fn coords(&self, p: &Poly) -> Result<Vec<Rational>, CohaError> {
        let c = self.coords_unchecked(p);
        if self.combination(&c) != *p {
            return Err(CohaError::NotInSpan);
        }
        Ok(c)
    }

    pub fn combination(&self, coeffs: &[Rational]) -> Poly {
        let mut out = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out += &self.poly(i).scale(c);
            }
        }
        out
    }
}

/// Change of basis from Schur-type to monomial coordinates for one component.
///
/// Key `i` of a [`ComponentBasis`] also names `Π_v s_{λ_v}` (Schur functions
/// at loop-free vertices, monomial symmetric functions elsewhere). Multiplied
/// by the Vandermonde denominator this is an alternant whose coefficient at
/// `leading[i] = x^{λ+δ}` is `sign`, and no other key's alternant has that
/// monomial.
#[derive(Debug, Clone)]
pub struct SchurTransition {
    dim: DimVector,
    leading: Vec<Monomial>,
    sign: Rational,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl SchurTransition {
    pub fn new(basis: &ComponentBasis) -> Self {
        let q = &basis.quiver;
        let dims = basis.dim.entries();
        let loop_free: Vec<bool> = (0..dims.len()).map(|v| q.euler_entry(v, v) > 0).collect();
        let mut sign = Rational::one();
        for (v, &n) in dims.iter().enumerate() {
            // coefficient of x^δ in Π_{a<b} (x_b − x_a)
            if loop_free[v] && (n * n.saturating_sub(1) / 2) % 2 == 1 {
                sign = -sign;
            }
        }
        let mut leading = Vec::with_capacity(basis.len());
        let mut rows = Vec::with_capacity(basis.len());
        for key in &basis.keys {
            let mut exps = Vec::new();
            let mut poly = Poly::one();
            for (v, lambda) in key.iter().enumerate() {
                let n = dims[v] as usize;
                let parts = lambda.padded(n);
                for (k, &e) in parts.iter().enumerate() {
                    let shift = if loop_free[v] { (n - 1 - k) as u32 } else { 0 };
                    exps.push((VarId::new(v, k + 1), e + shift));
                }
                let factor = if loop_free[v] {
                    schur_at(v, lambda, n)
                } else {
                    monomial_symmetric_at(v, lambda, n)
                }
                .expect("partition fits by construction");
                poly = &poly * &factor;
            }
            leading.push(Monomial::from_exponents(exps));
            let row = basis
                .coords_unchecked(&poly)
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            rows.push(row);
        }
        SchurTransition {
            dim: basis.dim.clone(),
            leading,
            sign,
            rows,
        }
    }
}

/// Weak compositions of `n` into `k` parts.
pub(crate) fn compositions(n: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(n - first, k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A basis of the degree-`m` homogeneous part of `H(Q)_d`.
pub fn component_basis(
    q: &Arc<Quiver>,
    d: &DimVector,
    m: u32,
) -> Result<Vec<CohaElement>, CohaError> {
    Ok(ComponentBasis::new(q.clone(), d.clone(), m)?.elements())
}

/// `dim H(Q)_{d}` in polynomial degree `m`.
pub fn component_dimension(d: &DimVector, m: u32) -> usize {
    compositions(m, d.len())
        .iter()
        .map(|sizes| {
            sizes
                .iter()
                .zip(d.entries())
                .map(|(&s, &n)| partitions(s, n as usize).len())
                .product::<usize>()
        })
        .sum()
}

/// Coordinates of `e` in an arbitrary linearly independent `basis`.
pub fn coordinates(e: &CohaElement, basis: &[CohaElement]) -> Result<Vec<Rational>, CohaError> {
    if e.is_zero() {
        return Ok(vec![Rational::zero(); basis.len()]);
    }
    let mut monomials: Vec<Monomial> = basis
        .iter()
        .flat_map(|b| b.poly.terms().map(|(m, _)| m.clone()))
        .chain(e.poly.terms().map(|(m, _)| m.clone()))
        .collect();
    monomials.sort();
    monomials.dedup();
    let vectorize = |p: &Poly| -> Vec<Rational> { monomials.iter().map(|m| p.coeff(m)).collect() };
    let rows: Vec<Vec<Rational>> = basis.iter().map(|b| vectorize(&b.poly)).collect();
    linalg::solve_in_basis(&rows, &vectorize(&e.poly)).ok_or(CohaError::NotInSpan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;
    use crate::symmetric::{monomial_symmetric, schur};

    fn el(q: &Arc<Quiver>, d: &[u32], p: &str) -> CohaElement {
        CohaElement::new(q.clone(), DimVector(d.to_vec()), parse_poly(p).unwrap()).unwrap()
    }

    fn checked(e: CohaElement) -> CohaElement {
        assert!(is_block_symmetric(e.poly(), &e.dim().blocks()), "{}", e.poly());
        e
    }

    #[test]
    fn a1_examples() {
        let a1 = Arc::new(Quiver::a1());
        let p01 = checked(shuffle_product(&psi(&a1, 0, 0), &psi(&a1, 0, 1)).unwrap());
        assert_eq!(p01.poly(), &Poly::one());
        let p11 = shuffle_product(&psi(&a1, 0, 1), &psi(&a1, 0, 1)).unwrap();
        assert!(p11.is_zero());
    }

    #[test]
    fn kronecker_kernel() {
        let k2 = Arc::new(Quiver::kronecker());
        let p = shuffle_product(&el(&k2, &[1, 0], "1"), &el(&k2, &[0, 1], "1")).unwrap();
        assert_eq!(p.poly(), &parse_poly("(y1 - x1)^2").unwrap());
        assert_eq!(p.dim(), &DimVector(vec![1, 1]));
        // the opposite order has no kernel
        let q = shuffle_product(&el(&k2, &[0, 1], "1"), &el(&k2, &[1, 0], "1")).unwrap();
        assert_eq!(q.poly(), &Poly::one());
    }

    #[test]
    fn l1_square_is_twice_monomial() {
        let l1 = Arc::new(Quiver::l1());
        for k in 0..4 {
            let p = shuffle_product(&psi(&l1, 0, k), &psi(&l1, 0, k)).unwrap();
            let m = monomial_symmetric(&Partition::new(vec![k, k]).unwrap(), 2).unwrap();
            assert_eq!(p.poly(), &m.scale(&rat(2)));
        }
    }

    #[test]
    fn schur_identity_three_factors() {
        let a1 = Arc::new(Quiver::a1());
        let p = product_all(&[psi(&a1, 0, 0), psi(&a1, 0, 2), psi(&a1, 0, 3)]).unwrap();
        // λ = (3-2, 2-1, 0)
        let s = schur(&Partition::new(vec![1, 1, 0]).unwrap(), 3).unwrap();
        assert_eq!(p.poly(), &s);
    }

    #[test]
    fn quiver_mismatch_is_rejected() {
        let a1 = Arc::new(Quiver::a1());
        let l1 = Arc::new(Quiver::l1());
        assert_eq!(
            shuffle_product(&psi(&a1, 0, 0), &psi(&l1, 0, 0)),
            Err(CohaError::QuiverMismatch)
        );
    }

    #[test]
    fn element_validation() {
        let a1 = Arc::new(Quiver::a1());
        let bad = CohaElement::new(a1.clone(), DimVector(vec![2]), parse_poly("x1").unwrap());
        assert_eq!(bad, Err(CohaError::NotSymmetric));
        let bad = CohaElement::new(a1, DimVector(vec![1]), parse_poly("x2").unwrap());
        assert!(matches!(bad, Err(CohaError::VariableOutOfRange(_))));
    }

    #[test]
    fn gamma_degree_examples() {
        let a1 = Arc::new(Quiver::a1());
        let l1 = Arc::new(Quiver::l1());
        let k2 = Arc::new(Quiver::kronecker());
        for i in 0..4 {
            assert_eq!(gamma_degree(&psi(&a1, 0, i)).unwrap().coh, 2 * i64::from(i) + 1);
            assert_eq!(gamma_degree(&psi(&l1, 0, i)).unwrap().coh, 2 * i64::from(i));
        }
        let e0 = el(&k2, &[1, 1], "1");
        assert_eq!(
            gamma_degree(&e0).unwrap(),
            GammaDegree {
                dim: DimVector(vec![1, 1]),
                coh: 0
            }
        );
        assert_eq!(
            gamma_degree(&el(&k2, &[1, 1], "1 + x1")),
            Err(CohaError::NotHomogeneous)
        );
    }

    #[test]
    fn component_basis_examples() {
        let k2 = Arc::new(Quiver::kronecker());
        let d = DimVector(vec![1, 1]);
        let b1: Vec<Poly> = component_basis(&k2, &d, 1)
            .unwrap()
            .into_iter()
            .map(CohaElement::into_poly)
            .collect();
        assert_eq!(b1, vec![parse_poly("x1").unwrap(), parse_poly("y1").unwrap()]);
        let b2: Vec<Poly> = component_basis(&k2, &d, 2)
            .unwrap()
            .into_iter()
            .map(CohaElement::into_poly)
            .collect();
        assert_eq!(
            b2,
            ["x1^2", "x1*y1", "y1^2"].map(|s| parse_poly(s).unwrap()).to_vec()
        );
        let a1 = Arc::new(Quiver::a1());
        let b: Vec<Poly> = component_basis(&a1, &DimVector(vec![2]), 2)
            .unwrap()
            .into_iter()
            .map(CohaElement::into_poly)
            .collect();
        assert_eq!(b, ["x1^2 + x2^2", "x1*x2"].map(|s| parse_poly(s).unwrap()).to_vec());
        assert_eq!(component_dimension(&DimVector(vec![3, 3]), 12), 407);
        assert_eq!(
            ComponentBasis::new(k2, DimVector(vec![2, 3]), 6).unwrap().len(),
            component_dimension(&DimVector(vec![2, 3]), 6)
        );
    }

    #[test]
    fn coordinates_examples() {
        let k2 = Arc::new(Quiver::kronecker());
        let d = DimVector(vec![1, 1]);
        let basis = component_basis(&k2, &d, 2).unwrap();
        let e = el(&k2, &[1, 1], "(y1 - x1)^2");
        assert_eq!(coordinates(&e, &basis).unwrap(), vec![rat(1), rat(-2), rat(1)]);
        let z = CohaElement::zero(k2.clone(), d.clone());
        assert_eq!(coordinates(&z, &basis).unwrap(), vec![rat(0); 3]);
        let cube = el(&k2, &[1, 1], "x1^3");
        assert_eq!(coordinates(&cube, &basis), Err(CohaError::NotInSpan));

        let fast = ComponentBasis::new(k2, d, 2).unwrap();
        assert_eq!(fast.coords(e.poly()).unwrap(), vec![rat(1), rat(-2), rat(1)]);
        assert_eq!(fast.coords(cube.poly()), Err(CohaError::NotInSpan));
    }

    #[test]
    fn coordinate_product_matches_full_product() {
        let k2 = Arc::new(Quiver::kronecker());
        let l1 = Arc::new(Quiver::l1());
        let a20 = Arc::new(Quiver::a20tilde());
        let cases = [
            (&k2, [1, 0], [0, 1], 3),
            (&k2, [2, 1], [0, 2], 3),
            (&k2, [1, 1], [1, 1], 2),
            (&l1, [2, 0], [1, 0], 3),
            (&a20, [1, 1], [1, 0], 2),
        ];
        for (q, a, b, max) in cases {
            let (a, b) = (DimVector(a[..q.vertex_count()].to_vec()), DimVector(b[..q.vertex_count()].to_vec()));
            let plan = ShufflePlan::new(q.clone(), a.clone(), b.clone()).unwrap();
            for m1 in 0..=max {
                for m2 in 0..=max {
                    let left = ComponentBasis::new(q.clone(), a.clone(), m1).unwrap();
                    let right = ComponentBasis::new(q.clone(), b.clone(), m2).unwrap();
                    for f in 0..left.len() {
                        for g in 0..right.len() {
                            let p = plan.multiply(left.poly(f), right.poly(g)).unwrap();
                            let Some(deg) = p.degree() else { continue };
                            let target = ComponentBasis::new(q.clone(), plan.total().clone(), deg).unwrap();
                            let fast = plan.multiply_coords(left.poly(f), right.poly(g), &SchurTransition::new(&target));
                            assert_eq!(fast, target.coords(&p).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn shuffle_enumeration() {
        let s = shuffles(2, 2);
        assert_eq!(s.len(), 6);
        assert_eq!(s[0], (vec![1, 2, 3, 4], false));
        assert!(s.contains(&(vec![3, 4, 1, 2], false)));
        assert!(s.contains(&(vec![2, 3, 1, 4], false)));
        assert!(s.contains(&(vec![1, 3, 2, 4], true)));
    }
}
