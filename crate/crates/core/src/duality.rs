//! Finite-level duality between filtered vector spaces and towers of
//! surjections.
//!
//! A [`Tower`] `W0 <- W1 <- ... <- WL` stands for the inverse limit of its
//! levels, a [`FilteredSpace`] `V0 ⊆ V1 ⊆ ... ⊆ VL` for the union. Dualizing
//! swaps the two, and every space carries a chosen basis, so duals use dual
//! bases and maps dualize to transposes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("map at level {0} is not injective")]
    NotInjective(usize),
    #[error("transition at level {0} is not surjective")]
    NotSurjective(usize),
    #[error("subspace basis at level {0} is not linearly independent")]
    DependentBasis(usize),
    #[error("transition {0} does not map U{1} into U{0}")]
    NotInvariant(usize, usize),
    #[error("restricted transition {0} is not onto U{0}: the family is not closed")]
    RestrictionNotSurjective(usize),
    #[error("maps {0} and {1} do not compose to zero")]
    NotComplex(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinVect {
    pub field: FieldSpec,
    pub dim: usize,
    pub labels: Option<Vec<String>>,
}

impl FinVect {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        FinVect { field, dim, labels: None }
    }

    pub fn labelled(field: FieldSpec, labels: Vec<String>) -> Self {
        FinVect { field, dim: labels.len(), labels: Some(labels) }
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{}", i),
        }
    }
}

/// Dual space with the dual basis: `e_i` becomes `e_i*`.
pub fn dual_finite(v: &FinVect) -> FinVect {
    let labels = (0..v.dim).map(|i| format!("{}*", v.label(i))).collect();
    FinVect::labelled(v.field, labels)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMap {
    pub domain: FinVect,
    pub codomain: FinVect,
    /// `codomain.dim x domain.dim`
    pub matrix: Matrix,
}

impl LinMap {
    pub fn new(domain: FinVect, codomain: FinVect, matrix: Matrix) -> Result<Self, DualityError> {
        if matrix.rows() != codomain.dim || matrix.cols() != domain.dim {
            return Err(DualityError::Shape(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.dim,
                domain.dim
            )));
        }
        if matrix.field() != domain.field || domain.field != codomain.field {
            return Err(DualityError::FieldMismatch);
        }
        Ok(LinMap { domain, codomain, matrix })
    }

    pub fn from_matrix(matrix: Matrix) -> Self {
        let f = matrix.field();
        LinMap { domain: FinVect::new(f, matrix.cols()), codomain: FinVect::new(f, matrix.rows()), matrix }
    }

    pub fn identity(v: &FinVect) -> Self {
        LinMap { domain: v.clone(), codomain: v.clone(), matrix: Matrix::identity(v.field, v.dim) }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.domain.dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.codomain.dim
    }

    /// `self ∘ first`
    pub fn compose(&self, first: &LinMap) -> Result<LinMap, DualityError> {
        if first.codomain.dim != self.domain.dim {
            return Err(DualityError::Shape(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.domain.dim, self.codomain.dim, first.domain.dim, first.codomain.dim
            )));
        }
        let m = self.matrix.mul(&first.matrix).map_err(|_| DualityError::FieldMismatch)?;
        Ok(LinMap { domain: first.domain.clone(), codomain: self.codomain.clone(), matrix: m })
    }
}

/// `f* : W* -> V*`, `φ ↦ φ ∘ f`.
pub fn dual_map(f: &LinMap) -> LinMap {
    LinMap { domain: dual_finite(&f.codomain), codomain: dual_finite(&f.domain), matrix: f.matrix.transpose() }
}

/// `levels[0] <- levels[1] <- ...`, `transitions[i] : levels[i+1] -> levels[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub field: FieldSpec,
    pub levels: Vec<FinVect>,
    pub transitions: Vec<LinMap>,
}

/// `levels[0] ⊆ levels[1] ⊆ ...`, `inclusions[i] : levels[i] -> levels[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredSpace {
    pub field: FieldSpec,
    pub levels: Vec<FinVect>,
    pub inclusions: Vec<LinMap>,
}

fn check_chain(field: FieldSpec, levels: &[FinVect], maps: &[LinMap], downward: bool) -> Result<(), DualityError> {
    if !levels.is_empty() && maps.len() + 1 != levels.len() || levels.is_empty() && !maps.is_empty() {
        return Err(DualityError::Shape(format!("{} levels but {} maps", levels.len(), maps.len())));
    }
    for (i, m) in maps.iter().enumerate() {
        let (src, dst) = if downward { (i + 1, i) } else { (i, i + 1) };
        if m.domain.dim != levels[src].dim || m.codomain.dim != levels[dst].dim {
            return Err(DualityError::Shape(format!("map {} has the wrong shape", i)));
        }
        if m.matrix.field() != field {
            return Err(DualityError::FieldMismatch);
        }
    }
    Ok(())
}

impl Tower {
    pub fn new(field: FieldSpec, levels: Vec<FinVect>, transitions: Vec<LinMap>) -> Result<Self, DualityError> {
        check_chain(field, &levels, &transitions, true)?;
        if let Some(i) = transitions.iter().position(|t| !t.is_surjective()) {
            return Err(DualityError::NotSurjective(i));
        }
        Ok(Tower { field, levels, transitions })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.dim).collect()
    }
}

impl FilteredSpace {
    pub fn new(field: FieldSpec, levels: Vec<FinVect>, inclusions: Vec<LinMap>) -> Result<Self, DualityError> {
        check_chain(field, &levels, &inclusions, false)?;
        if let Some(i) = inclusions.iter().position(|t| !t.is_injective()) {
            return Err(DualityError::NotInjective(i));
        }
        Ok(FilteredSpace { field, levels, inclusions })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.dim).collect()
    }

    /// Polynomials of degree `<= i` in one variable, `i = 0..=top`, in the
    /// monomial basis.
    pub fn polynomial_degrees(field: FieldSpec, top: usize) -> Self {
        let levels: Vec<FinVect> = (0..=top)
            .map(|i| FinVect::labelled(field, (0..=i).map(|k| format!("z^{}", k)).collect()))
            .collect();
        let inclusions = (0..top)
            .map(|i| {
                let mut m = Matrix::zero(field, i + 2, i + 1);
                for k in 0..=i {
                    m.set(k, k, field.one());
                }
                LinMap { domain: levels[i].clone(), codomain: levels[i + 1].clone(), matrix: m }
            })
            .collect();
        FilteredSpace { field, levels, inclusions }
    }
}

pub fn dualize_filtered(f: &FilteredSpace) -> Result<Tower, DualityError> {
    FilteredSpace::new(f.field, f.levels.clone(), f.inclusions.clone())?;
    let levels = f.levels.iter().map(dual_finite).collect();
    let transitions: Vec<LinMap> = f.inclusions.iter().map(dual_map).collect();
    let tower = Tower::new(f.field, levels, transitions)?;
    Ok(tower)
}

pub fn dualize_tower(t: &Tower) -> Result<FilteredSpace, DualityError> {
    Tower::new(t.field, t.levels.clone(), t.transitions.clone())?;
    let levels = t.levels.iter().map(dual_finite).collect();
    let inclusions: Vec<LinMap> = t.transitions.iter().map(dual_map).collect();
    FilteredSpace::new(t.field, levels, inclusions)
}

/// `φ(v)` for `φ` in coordinates of the dual basis.
fn pair(phi: &[Scalar], v: &[Scalar], field: FieldSpec) -> Scalar {
    phi.iter().zip(v).fold(field.zero(), |acc, (a, b)| &acc + &(a * b))
}

fn basis_vector(field: FieldSpec, dim: usize, i: usize) -> Vec<Scalar> {
    (0..dim).map(|k| if k == i { field.one() } else { field.zero() }).collect()
}

/// Matrix of `α : V -> V**`, `α(v)(φ) = φ(v)`, in the basis of `V**` dual
/// to the dual basis of `V*`. Column `i` holds `α(e_i)(e_j*)` for each `j`.
pub fn evaluation_matrix(field: FieldSpec, dim: usize) -> Matrix {
    let mut m = Matrix::zero(field, dim, dim);
    for i in 0..dim {
        let v = basis_vector(field, dim, i);
        for j in 0..dim {
            let phi = basis_vector(field, dim, j);
            m.set(j, i, pair(&phi, &v, field));
        }
    }
    m
}

fn evaluation_is_natural_iso(levels: &[FinVect], maps: &[LinMap], round_trip: &[LinMap], downward: bool) -> bool {
    let alphas: Vec<Matrix> = levels.iter().map(|l| evaluation_matrix(l.field, l.dim)).collect();
    if alphas.iter().any(|a| !a.is_identity()) {
        return false;
    }
    maps.iter().zip(round_trip).enumerate().all(|(i, (m, mm))| {
        let (src, dst) = if downward { (i + 1, i) } else { (i, i + 1) };
        let lhs = alphas[dst].mul(&m.matrix).unwrap();
        let rhs = mm.matrix.mul(&alphas[src]).unwrap();
        lhs == rhs
    })
}

/// Reflexivity of a filtered space: `α` is an isomorphism at each level
/// commuting with the inclusions and their double duals.
pub fn double_dual_check(f: &FilteredSpace) -> Result<bool, DualityError> {
    let back = dualize_tower(&dualize_filtered(f)?)?;
    if back.dims() != f.dims() {
        return Ok(false);
    }
    Ok(evaluation_is_natural_iso(&f.levels, &f.inclusions, &back.inclusions, false))
}

/// The same check for a tower against its double dual.
pub fn tower_double_dual_check(t: &Tower) -> Result<bool, DualityError> {
    let back = dualize_filtered(&dualize_tower(t)?)?;
    if back.dims() != t.dims() {
        return Ok(false);
    }
    Ok(evaluation_is_natural_iso(&t.levels, &t.transitions, &back.transitions, true))
}

/// Subspaces `U_i ⊆ W_i` given by basis columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSubspace {
    pub parent: Tower,
    pub bases: Vec<Matrix>,
}

/// The tower of the `U_i` with restricted transitions. Fails, naming the
/// level, when some transition does not carry `U_{i+1}` onto `U_i`.
pub fn closed_subtower(s: &TowerSubspace) -> Result<Tower, DualityError> {
    let t = &s.parent;
    if s.bases.len() != t.levels.len() {
        return Err(DualityError::Shape(format!("{} bases for {} levels", s.bases.len(), t.levels.len())));
    }
    for (i, b) in s.bases.iter().enumerate() {
        if b.rows() != t.levels[i].dim {
            return Err(DualityError::Shape(format!("basis {} has {} rows, level has dim {}", i, b.rows(), t.levels[i].dim)));
        }
        if b.rank() != b.cols() {
            return Err(DualityError::DependentBasis(i));
        }
    }
    let levels: Vec<FinVect> = s.bases.iter().map(|b| FinVect::new(t.field, b.cols())).collect();
    let mut transitions = Vec::new();
    for (i, pi) in t.transitions.iter().enumerate() {
        let image = pi.matrix.mul(&s.bases[i + 1]).map_err(|_| DualityError::FieldMismatch)?;
        let coords = s.bases[i].solve_matrix(&image).ok_or(DualityError::NotInvariant(i, i + 1))?;
        let restricted = LinMap { domain: levels[i + 1].clone(), codomain: levels[i].clone(), matrix: coords };
        if !restricted.is_surjective() {
            return Err(DualityError::RestrictionNotSurjective(i));
        }
        transitions.push(restricted);
    }
    Tower::new(t.field, levels, transitions)
}

fn ranks_exact(dims: &[usize], ranks: &[usize]) -> bool {
    // Object k sits between map k-1 (into it) and map k (out of it).
    (0..dims.len()).all(|k| {
        let incoming = if k == 0 { 0 } else { ranks[k - 1] };
        let outgoing = ranks.get(k).copied().unwrap_or(0);
        incoming + outgoing == dims[k]
    })
}

/// Exactness of `0 -> V0 -> V1 -> ... -> Vm -> 0` and of its dual
/// `0 -> Vm* -> ... -> V0* -> 0`, each decided by rank counts.
pub fn dual_exactness_check(seq: &[LinMap]) -> Result<(bool, bool), DualityError> {
    for (k, w) in seq.windows(2).enumerate() {
        let comp = w[1].compose(&w[0])?;
        if !comp.matrix.is_zero() {
            return Err(DualityError::NotComplex(k, k + 1));
        }
    }
    if seq.is_empty() {
        return Ok((true, true));
    }
    let mut dims: Vec<usize> = seq.iter().map(|f| f.domain.dim).collect();
    dims.push(seq.last().unwrap().codomain.dim);
    let ranks: Vec<usize> = seq.iter().map(LinMap::rank).collect();
    let exact = ranks_exact(&dims, &ranks);

    let duals: Vec<Matrix> = seq.iter().rev().map(|f| {
        let m = &f.matrix;
        let mut t = Matrix::zero(m.field(), m.cols(), m.rows());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                t.set(j, i, m.get(i, j).clone());
            }
        }
        t
    }).collect();
    let mut ddims: Vec<usize> = duals.iter().map(Matrix::cols).collect();
    ddims.push(duals.last().unwrap().rows());
    let dranks: Vec<usize> = duals.iter().map(Matrix::rank).collect();
    Ok((exact, ranks_exact(&ddims, &dranks)))
}
