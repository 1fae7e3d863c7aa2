//! Semistable components as quotients of `H(Q)_d` by products of a
//! higher-slope factor with a lower-slope factor.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::Zero;
use thiserror::Error;

use crate::coha::{kernel_degree, CohaElement, CohaError, ComponentBasis, SchurTransition, ShufflePlan};
use crate::exactpoly::{Poly, Rational};
use crate::linalg::{self, Echelon};
use crate::quiver::{DimVector, Quiver, QuiverError, Stability};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemistableError {
    #[error("dimension vector must be nonzero")]
    ZeroDimension,
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error(transparent)]
    Coha(#[from] CohaError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// A subspace of the degree-`m` part of `H(Q)_d`, stored as a reduced echelon
/// form over the coordinates of a [`ComponentBasis`].
#[derive(Debug, Clone)]
pub struct GradedSubspace {
    basis: Arc<ComponentBasis>,
    echelon: Echelon,
}

impl GradedSubspace {
    pub fn basis(&self) -> &ComponentBasis {
        &self.basis
    }

    pub fn dim(&self) -> &DimVector {
        self.basis.dim()
    }

    pub fn degree(&self) -> u32 {
        self.basis.degree()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn dimension(&self) -> usize {
        self.echelon.rank()
    }

    pub fn ambient_dimension(&self) -> usize {
        self.basis.len()
    }

    /// The echelon rows as elements of `H(Q)_d`.
    pub fn elements(&self) -> Vec<CohaElement> {
        self.echelon
            .rows()
            .iter()
            .map(|row| {
                CohaElement::new(
                    self.basis.quiver().clone(),
                    self.dim().clone(),
                    self.basis.combination(row),
                )
                .expect("combination of basis elements")
            })
            .collect()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.certificate(p).is_some()
    }

    /// Coefficients of `p` in the echelon rows, if `p` lies in the subspace.
    pub fn certificate(&self, p: &Poly) -> Option<Vec<Rational>> {
        let coords = self.basis.coords(p).ok()?;
        self.echelon.express(&coords)
    }
}

/// The quotient of a graded component by its unstable subspace.
#[derive(Debug, Clone)]
pub struct SstQuotient {
    pub dimension: usize,
    /// Basis elements on the non-pivot columns.
    pub representatives: Vec<CohaElement>,
    pub columns: Vec<usize>,
}

/// One degree of an HN dimension check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnRow {
    pub degree: u32,
    pub total: usize,
    pub strata: Vec<(Vec<DimVector>, usize)>,
    pub strata_sum: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnReport {
    pub dim: DimVector,
    pub rows: Vec<HnRow>,
}

impl HnReport {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }
}

type DegreeKey = (DimVector, u32);

/// A quiver with a stability, caching bases, multiplication plans and
/// unstable subspaces across queries.
#[derive(Debug)]
pub struct Semistable {
    quiver: Arc<Quiver>,
    theta: Stability,
    bases: Mutex<HashMap<DegreeKey, Arc<ComponentBasis>>>,
    plans: Mutex<HashMap<(DimVector, DimVector), Arc<ShufflePlan>>>,
    unstable: Mutex<HashMap<DegreeKey, Arc<GradedSubspace>>>,
}

impl Semistable {
    pub fn new(quiver: Arc<Quiver>, theta: Stability) -> Result<Self, SemistableError> {
        if theta.0.len() != quiver.vertex_count() {
            return Err(QuiverError::VertexMismatch {
                expected: quiver.vertex_count(),
                got: theta.0.len(),
            }
            .into());
        }
        Ok(Semistable {
            quiver,
            theta,
            bases: Mutex::new(HashMap::new()),
            plans: Mutex::new(HashMap::new()),
            unstable: Mutex::new(HashMap::new()),
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn theta(&self) -> &Stability {
        &self.theta
    }

    pub fn basis(&self, d: &DimVector, m: u32) -> Result<Arc<ComponentBasis>, SemistableError> {
        let key = (d.clone(), m);
        if let Some(b) = self.bases.lock().unwrap().get(&key) {
            return Ok(b.clone());
        }
        let b = Arc::new(ComponentBasis::new(self.quiver.clone(), d.clone(), m)?);
        self.bases.lock().unwrap().insert(key, b.clone());
        Ok(b)
    }

    pub fn plan(&self, left: &DimVector, right: &DimVector) -> Result<Arc<ShufflePlan>, SemistableError> {
        let key = (left.clone(), right.clone());
        if let Some(p) = self.plans.lock().unwrap().get(&key) {
            return Ok(p.clone());
        }
        let p = Arc::new(ShufflePlan::new(self.quiver.clone(), left.clone(), right.clone())?);
        self.plans.lock().unwrap().insert(key, p.clone());
        Ok(p)
    }

    fn check_dim(&self, d: &DimVector) -> Result<(), SemistableError> {
        self.quiver.dim(d.entries())?;
        if d.is_zero() {
            return Err(SemistableError::ZeroDimension);
        }
        Ok(())
    }

    /// Span of all `f * g` in degree `m` with `d = d′ + d″`, `μ(d′) > μ(d″)`.
    pub fn unstable_subspace(&self, d: &DimVector, m: u32) -> Result<Arc<GradedSubspace>, SemistableError> {
        self.check_dim(d)?;
        let key = (d.clone(), m);
        if let Some(u) = self.unstable.lock().unwrap().get(&key) {
            return Ok(u.clone());
        }
        let basis = self.basis(d, m)?;
        let transition = SchurTransition::new(&basis);
        let mut echelon = Echelon::new(basis.len());
        'splits: for (d1, d2) in self.theta.destabilizing_splits(d) {
            let k = kernel_degree(&self.quiver, &d1, &d2)?;
            let Ok(rest) = u32::try_from(i64::from(m) - k) else {
                continue;
            };
            let plan = self.plan(&d1, &d2)?;
            for m1 in 0..=rest {
                let left = self.basis(&d1, m1)?;
                let right = self.basis(&d2, rest - m1)?;
                for f in 0..left.len() {
                    for g in 0..right.len() {
                        if echelon.rank() == basis.len() {
                            break 'splits;
                        }
                        echelon.insert(&plan.multiply_coords(left.poly(f), right.poly(g), &transition));
                    }
                }
            }
        }
        let u = Arc::new(GradedSubspace { basis, echelon });
        self.unstable.lock().unwrap().insert(key, u.clone());
        Ok(u)
    }

    pub fn sst_quotient(&self, d: &DimVector, m: u32) -> Result<SstQuotient, SemistableError> {
        let u = self.unstable_subspace(d, m)?;
        let columns = u.echelon.free_columns();
        let representatives = columns.iter().map(|&c| u.basis.element(c)).collect();
        Ok(SstQuotient {
            dimension: columns.len(),
            representatives,
            columns,
        })
    }

    /// Coordinates of the class of `e` on the quotient representatives.
    pub fn project(&self, e: &CohaElement) -> Result<Vec<Rational>, SemistableError> {
        if !Arc::ptr_eq(e.quiver(), &self.quiver) && **e.quiver() != *self.quiver {
            return Err(CohaError::QuiverMismatch.into());
        }
        if !e.poly().is_homogeneous() {
            return Err(SemistableError::NotHomogeneous);
        }
        let Some(m) = e.poly().degree() else {
            let q = self.sst_quotient(e.dim(), 0)?;
            return Ok(vec![Rational::zero(); q.dimension]);
        };
        let u = self.unstable_subspace(e.dim(), m)?;
        // elements are block-symmetric, so dominant coefficients determine them
        let coords = u.basis.coords_unchecked(e.poly());
        let reduced = u.echelon.reduce(&coords);
        Ok(u.echelon.free_columns().into_iter().map(|c| reduced[c].clone()).collect())
    }

    /// Rank of the span of all products `r_1 * … * r_s` of quotient
    /// representatives for the HN type `parts`, landing in degree `m`.
    pub fn stratum_dimension(&self, parts: &[DimVector], m: u32) -> Result<usize, SemistableError> {
        Ok(linalg::rank(&self.stratum_vectors(parts, m)?, self.basis(&sum(parts), m)?.len()))
    }

    fn stratum_vectors(&self, parts: &[DimVector], m: u32) -> Result<Vec<Vec<Rational>>, SemistableError> {
        if let [single] = parts {
            let q = self.sst_quotient(single, m)?;
            let n = self.basis(single, m)?.len();
            return Ok(q
                .columns
                .iter()
                .map(|&c| {
                    let mut v = vec![Rational::zero(); n];
                    v[c] = Rational::from_integer(1.into());
                    v
                })
                .collect());
        }
        let mut shift = 0i64;
        for (a, da) in parts.iter().enumerate() {
            for db in &parts[a + 1..] {
                shift += kernel_degree(&self.quiver, da, db)?;
            }
        }
        let total = sum(parts);
        let basis = self.basis(&total, m)?;
        let Ok(free) = u32::try_from(i64::from(m) - shift) else {
            return Ok(Vec::new());
        };
        let mut out = Vec::new();
        for degrees in crate::coha::compositions(free, parts.len()) {
            // partial products of representatives, multiplied left to right
            let mut acc: Vec<Poly> = vec![Poly::one()];
            let mut acc_dim = DimVector::zero(self.quiver.vertex_count());
            for (da, &ma) in parts.iter().zip(&degrees) {
                let reps = self.sst_quotient(da, ma)?.representatives;
                if reps.is_empty() {
                    acc.clear();
                    break;
                }
                let plan = self.plan(&acc_dim, da)?;
                let mut next = Vec::with_capacity(acc.len() * reps.len());
                for f in &acc {
                    for r in &reps {
                        next.push(plan.multiply(f, r.poly())?);
                    }
                }
                acc = next;
                acc_dim = acc_dim.add(da);
            }
            out.extend(acc.iter().map(|p| basis.coords_unchecked(p)));
        }
        Ok(out)
    }

    /// Compares `dim H(Q)_{d,m}` with the sum over HN types of stratum
    /// dimensions for each `m ≤ m_max`.
    pub fn hn_dim_check(&self, d: &DimVector, m_max: u32) -> Result<HnReport, SemistableError> {
        self.check_dim(d)?;
        let types = self.theta.hn_types(d)?;
        let mut rows = Vec::new();
        for m in 0..=m_max {
            let total = self.basis(d, m)?.len();
            let mut strata = Vec::new();
            for t in &types {
                strata.push((t.clone(), self.stratum_dimension(t, m)?));
            }
            let strata_sum = strata.iter().map(|(_, n)| n).sum();
            rows.push(HnRow {
                degree: m,
                total,
                strata,
                strata_sum,
                pass: total == strata_sum,
            });
        }
        Ok(HnReport { dim: d.clone(), rows })
    }
}

fn sum(parts: &[DimVector]) -> DimVector {
    let n = parts.first().map_or(0, DimVector::len);
    parts.iter().fold(DimVector::zero(n), |acc, p| acc.add(p))
}

pub fn unstable_subspace(
    q: &Arc<Quiver>,
    theta: &Stability,
    d: &DimVector,
    m: u32,
) -> Result<Arc<GradedSubspace>, SemistableError> {
    Semistable::new(q.clone(), theta.clone())?.unstable_subspace(d, m)
}

pub fn sst_quotient(
    q: &Arc<Quiver>,
    theta: &Stability,
    d: &DimVector,
    m: u32,
) -> Result<SstQuotient, SemistableError> {
    Semistable::new(q.clone(), theta.clone())?.sst_quotient(d, m)
}

pub fn project(e: &CohaElement, theta: &Stability) -> Result<Vec<Rational>, SemistableError> {
    Semistable::new(e.quiver().clone(), theta.clone())?.project(e)
}

pub fn hn_dim_check(
    q: &Arc<Quiver>,
    theta: &Stability,
    d: &DimVector,
    m_max: u32,
) -> Result<HnReport, SemistableError> {
    Semistable::new(q.clone(), theta.clone())?.hn_dim_check(d, m_max)
}
