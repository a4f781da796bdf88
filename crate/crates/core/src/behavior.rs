//! Kernel representations of shift-invariant behaviors over `N^n`.
//!
//! Trajectories are row vectors acted on from the right: `w.G = 0` means
//! that for every column `g` of `G`, `sum_i sum_a c_{i,a} w_i(t + a) = 0` at
//! every point `t`. Only finite boxes `[0,T1] x ... x [0,Tn]` are ever
//! stored, and a constraint at `t` is used only when all the points it reads
//! lie in the box.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::groebner::{self, ExactnessCertificate, GroebnerError, ModulePresentation};
use crate::linalg::Matrix;
use crate::polyring::{Degree, FreeVector, Poly, PolyError, PolyMatrix, Ring, TermOrder};
use crate::scalar::{FieldSpec, Scalar, ScalarError};
use crate::smith::{self, SmithError, SmithForm};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BehaviorError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("field or ring mismatch")]
    RingMismatch,
    #[error("window exhausted in direction {0}")]
    WindowExhausted(usize),
    #[error("window too small for the support of the column")]
    WindowTooSmall,
    #[error("vacuous window: no constraint fits inside it")]
    VacuousWindow,
    #[error("operation needs a univariate ring, got {0} variables")]
    NotUnivariate(usize),
    #[error("operation needs a scalar trajectory, got {0} components")]
    NotScalar(usize),
    #[error("prefix of length {got} is too short, need at least {need}")]
    PrefixTooShort { got: usize, need: usize },
    #[error("malformed Laurent tail at byte {offset}: {message}")]
    MalformedTail { offset: usize, message: String },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Smith(#[from] SmithError),
}

impl From<PolyError> for BehaviorError {
    fn from(e: PolyError) -> Self {
        BehaviorError::Groebner(GroebnerError::Poly(e))
    }
}

/// `B(G) = { w in (k^(N^n))^r0 : w.G = 0 }` for an `r0 x r1` matrix `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelRep {
    pub g: PolyMatrix,
}

impl KernelRep {
    pub fn new(g: PolyMatrix) -> Self {
        KernelRep { g }
    }

    pub fn ring(&self) -> Ring {
        self.g.ring()
    }

    pub fn field(&self) -> FieldSpec {
        self.g.ring().field
    }

    pub fn nvars(&self) -> usize {
        self.g.ring().nvars
    }

    pub fn r0(&self) -> usize {
        self.g.rows()
    }

    pub fn r1(&self) -> usize {
        self.g.cols()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub bounds: Vec<u32>,
}

impl Window {
    pub fn new(bounds: Vec<u32>) -> Self {
        Window { bounds }
    }

    pub fn cube(n: usize, t: u32) -> Self {
        Window { bounds: vec![t; n] }
    }

    pub fn nvars(&self) -> usize {
        self.bounds.len()
    }

    pub fn len(&self) -> usize {
        self.bounds.iter().map(|&t| t as usize + 1).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, t: &[u32]) -> bool {
        t.len() == self.bounds.len() && t.iter().zip(&self.bounds).all(|(a, b)| a <= b)
    }

    /// Position of `t` in lexicographic point order (last coordinate fastest).
    pub fn index(&self, t: &[u32]) -> usize {
        let mut idx = 0;
        for (x, b) in t.iter().zip(&self.bounds) {
            idx = idx * (*b as usize + 1) + *x as usize;
        }
        idx
    }

    /// All points in lexicographic order.
    pub fn points(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = vec![0u32; self.bounds.len()];
        loop {
            out.push(cur.clone());
            let mut k = cur.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < self.bounds[k] {
                    cur[k] += 1;
                    break;
                }
                cur[k] = 0;
            }
        }
    }

    /// The box of points `t` with `t + m` still inside, if nonempty.
    pub fn shrink(&self, m: &[u32]) -> Option<Window> {
        let bounds: Option<Vec<u32>> = self.bounds.iter().zip(m).map(|(b, e)| b.checked_sub(*e)).collect();
        bounds.map(Window::new)
    }
}

/// Values of `w` on a window, in lexicographic point order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    pub field: FieldSpec,
    pub window: Window,
    pub r0: usize,
    pub values: Vec<Vec<Scalar>>,
}

impl Trajectory {
    pub fn new(field: FieldSpec, window: Window, r0: usize, values: Vec<Vec<Scalar>>) -> Result<Self, BehaviorError> {
        if values.len() != window.len() {
            return Err(BehaviorError::Shape(format!("{} values for {} points", values.len(), window.len())));
        }
        if let Some(v) = values.iter().find(|v| v.len() != r0) {
            return Err(BehaviorError::Shape(format!("value of length {} in a trajectory with r0 = {}", v.len(), r0)));
        }
        if values.iter().flatten().any(|s| s.field() != field) {
            return Err(BehaviorError::RingMismatch);
        }
        Ok(Trajectory { field, window, r0, values })
    }

    pub fn zero(field: FieldSpec, window: Window, r0: usize) -> Self {
        let values = vec![vec![field.zero(); r0]; window.len()];
        Trajectory { field, window, r0, values }
    }

    pub fn from_fn(field: FieldSpec, window: Window, r0: usize, mut f: impl FnMut(&[u32]) -> Vec<Scalar>) -> Self {
        let values = window.points().iter().map(|t| f(t)).collect();
        Trajectory { field, window, r0, values }
    }

    /// Scalar sequence `(s_0, ..., s_T)`.
    pub fn sequence(field: FieldSpec, values: &[Scalar]) -> Self {
        assert!(!values.is_empty(), "a window has at least one point");
        let window = Window::new(vec![values.len() as u32 - 1]);
        Trajectory { field, window, r0: 1, values: values.iter().map(|v| vec![v.clone()]).collect() }
    }

    pub fn sequence_i64(field: FieldSpec, values: &[i64]) -> Self {
        let v: Vec<Scalar> = values.iter().map(|&x| field.from_i64(x)).collect();
        Self::sequence(field, &v)
    }

    pub fn get(&self, t: &[u32]) -> &[Scalar] {
        &self.values[self.window.index(t)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(Scalar::is_zero)
    }

    /// First components as a flat list (scalar trajectories).
    pub fn scalars(&self) -> Vec<Scalar> {
        self.values.iter().map(|v| v[0].clone()).collect()
    }

    /// Same values on the sub-box `win`.
    pub fn restrict(&self, win: &Window) -> Result<Trajectory, BehaviorError> {
        if win.nvars() != self.window.nvars() || !self.window.contains(&win.bounds) {
            return Err(BehaviorError::Shape("restriction window is not inside the trajectory's window".into()));
        }
        Ok(Trajectory::from_fn(self.field, win.clone(), self.r0, |t| self.get(t).to_vec()))
    }
}

/// `σ_j w`, `j` counted from 0: the value at `t` becomes `w(t + e_j)`.
pub fn shift(w: &Trajectory, j: usize) -> Result<Trajectory, BehaviorError> {
    if j >= w.window.nvars() {
        return Err(BehaviorError::Shape(format!("direction {} out of range for {} variables", j, w.window.nvars())));
    }
    let mut m = vec![0u32; w.window.nvars()];
    m[j] = 1;
    let win = w.window.shrink(&m).ok_or(BehaviorError::WindowExhausted(j))?;
    Ok(Trajectory::from_fn(w.field, win, w.r0, |t| {
        let mut s = t.to_vec();
        s[j] += 1;
        w.get(&s).to_vec()
    }))
}

/// Per-variable maximum exponent over the support of `g`.
pub fn support_extent(g: &FreeVector) -> Vec<u32> {
    let n = g.ring().nvars;
    (0..n).map(|j| g.components().iter().map(|p| p.max_exponent(j)).max().unwrap_or(0)).collect()
}

fn check_ring(w: &Trajectory, ring: Ring) -> Result<(), BehaviorError> {
    if w.field != ring.field || w.window.nvars() != ring.nvars {
        return Err(BehaviorError::RingMismatch);
    }
    Ok(())
}

/// `(w.g)(t) = sum_i sum_a c_{i,a} w_i(t + a)` on the points where it is defined.
pub fn apply_column(w: &Trajectory, g: &FreeVector) -> Result<Trajectory, BehaviorError> {
    check_ring(w, g.ring())?;
    if g.rank() != w.r0 {
        return Err(BehaviorError::Shape(format!("column of length {} against r0 = {}", g.rank(), w.r0)));
    }
    let win = w.window.shrink(&support_extent(g)).ok_or(BehaviorError::WindowTooSmall)?;
    let zero = w.field.zero();
    Ok(Trajectory::from_fn(w.field, win, 1, |t| {
        let mut acc = zero.clone();
        for (i, p) in g.components().iter().enumerate() {
            for (m, c) in p.terms() {
                let s: Vec<u32> = t.iter().zip(m.exponents()).map(|(a, b)| a + b).collect();
                acc = &acc + &(c * &w.get(&s)[i]);
            }
        }
        vec![acc]
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub column: usize,
    pub point: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MembershipReport {
    /// Number of (column, point) constraints evaluated.
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl MembershipReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `w.G = 0` at every point where a column's constraint fits in the
/// window. Fails with [`BehaviorError::VacuousWindow`] if `G` has nonzero
/// columns but none of them fits.
pub fn check_membership(w: &Trajectory, rep: &KernelRep) -> Result<MembershipReport, BehaviorError> {
    check_ring(w, rep.ring())?;
    if w.r0 != rep.r0() {
        return Err(BehaviorError::Shape(format!("trajectory has r0 = {}, representation {}", w.r0, rep.r0())));
    }
    let mut report = MembershipReport::default();
    let mut any_nonzero = false;
    for (j, col) in rep.g.columns().iter().enumerate() {
        if col.is_zero() {
            continue;
        }
        any_nonzero = true;
        let out = match apply_column(w, col) {
            Ok(out) => out,
            Err(BehaviorError::WindowTooSmall) => continue,
            Err(e) => return Err(e),
        };
        for (t, v) in out.window.points().into_iter().zip(&out.values) {
            report.checked += 1;
            if !v[0].is_zero() {
                report.violations.push(Violation { column: j, point: t });
            }
        }
    }
    if any_nonzero && report.checked == 0 {
        return Err(BehaviorError::VacuousWindow);
    }
    Ok(report)
}

/// The linear constraints defining truncated solutions on `win`: one row per
/// nonzero column and admissible point, unknown `(point, i)` at index
/// `point_index * r0 + i`.
pub fn constraint_matrix(rep: &KernelRep, win: &Window) -> Matrix {
    let field = rep.field();
    let r0 = rep.r0();
    let mut rows = Vec::new();
    for col in rep.g.columns() {
        if col.is_zero() {
            continue;
        }
        let Some(sub) = win.shrink(&support_extent(&col)) else { continue };
        for t in sub.points() {
            let mut row = vec![field.zero(); r0 * win.len()];
            for (i, p) in col.components().iter().enumerate() {
                for (m, c) in p.terms() {
                    let s: Vec<u32> = t.iter().zip(m.exponents()).map(|(a, b)| a + b).collect();
                    let k = win.index(&s) * r0 + i;
                    row[k] = &row[k] + c;
                }
            }
            rows.push(row);
        }
    }
    Matrix::from_rows_with_cols(field, rows, r0 * win.len()).expect("uniform rows")
}

/// Dimension and a basis of `{ w on win : every admissible constraint holds }`.
pub fn truncated_solution_space(rep: &KernelRep, win: &Window) -> Result<(usize, Vec<Trajectory>), BehaviorError> {
    if win.nvars() != rep.nvars() {
        return Err(BehaviorError::Shape(format!("window has {} bounds for {} variables", win.nvars(), rep.nvars())));
    }
    let r0 = rep.r0();
    let basis: Vec<Trajectory> = constraint_matrix(rep, win)
        .nullspace()
        .into_iter()
        .map(|v| {
            let values = v.chunks(r0.max(1)).map(|c| c[..r0].to_vec()).collect();
            let values = if r0 == 0 { vec![Vec::new(); win.len()] } else { values };
            Trajectory { field: rep.field(), window: win.clone(), r0, values }
        })
        .collect();
    Ok((basis.len(), basis))
}

/// The dual module `coker(G.)` of the behavior.
pub fn dual_presentation(rep: &KernelRep) -> ModulePresentation {
    ModulePresentation::new(rep.g.clone())
}

/// `[G1 = G, G2, ...]` with exactness certificates for each step.
pub fn kernel_rep_complex(
    rep: &KernelRep,
    ord: TermOrder,
) -> Result<(Vec<PolyMatrix>, Vec<ExactnessCertificate>), BehaviorError> {
    let maps = groebner::free_resolution(&dual_presentation(rep), ord)?;
    let certs = groebner::certify_resolution(&maps, ord)?;
    Ok((maps, certs))
}

/// `B(inner) ⊆ B(outer)`, decided as `colmod(G_outer) ⊆ colmod(G_inner)`.
pub fn behavior_contains(outer: &KernelRep, inner: &KernelRep, ord: TermOrder) -> Result<bool, BehaviorError> {
    if outer.ring() != inner.ring() {
        return Err(BehaviorError::RingMismatch);
    }
    if outer.r0() != inner.r0() {
        return Err(BehaviorError::Shape(format!("r0 mismatch: {} vs {}", outer.r0(), inner.r0())));
    }
    Ok(groebner::submodule_contains(inner.ring(), inner.r0(), &inner.g.columns(), &outer.g.columns(), ord)?)
}

/// `B ≅ (k^N)^r ⊕ (finite-dimensional part)` for a univariate behavior.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition1D {
    pub free_rank: usize,
    /// Non-unit invariant factors.
    pub factors: Vec<Poly>,
    /// Number of invariant factors including units; equals the generic rank.
    pub invariant_count: usize,
    pub torsion_dim: usize,
    pub smith: SmithForm,
}

pub fn decompose_1d(rep: &KernelRep) -> Result<Decomposition1D, BehaviorError> {
    if rep.nvars() != 1 {
        return Err(BehaviorError::NotUnivariate(rep.nvars()));
    }
    let s = smith::smith_normal_form(&rep.g)?;
    let factors: Vec<Poly> = s.factors.iter().filter(|f| !f.as_constant().is_some_and(|c| c.is_one())).cloned().collect();
    let torsion_dim = factors
        .iter()
        .map(|f| match f.degree() {
            Degree::Finite(d) => d as usize,
            Degree::NegInfinity => 0,
        })
        .sum();
    Ok(Decomposition1D { free_rank: rep.r0() - s.rank(), factors, invariant_count: s.rank(), torsion_dim, smith: s })
}

/// Finds `H1` with `H0 F = G H1`, where `G` (`r0 x r1`) presents `M` and
/// `F` (`s0 x s1`) presents `N`, so that `w ↦ w H0` maps `B(G)` into `B(F)`.
/// Returns `None` when some column of `H0 F` is outside the column module of `G`.
pub fn lift_hom(
    rep_m: &KernelRep,
    rep_n: &KernelRep,
    h0: &PolyMatrix,
    ord: TermOrder,
) -> Result<Option<PolyMatrix>, BehaviorError> {
    if rep_m.ring() != rep_n.ring() || h0.ring() != rep_m.ring() {
        return Err(BehaviorError::RingMismatch);
    }
    if h0.rows() != rep_m.r0() || h0.cols() != rep_n.r0() {
        return Err(BehaviorError::Shape(format!(
            "H0 is {}x{}, expected {}x{}",
            h0.rows(),
            h0.cols(),
            rep_m.r0(),
            rep_n.r0()
        )));
    }
    let ring = rep_m.ring();
    let target = h0.mul(&rep_n.g)?;
    let gb = groebner::buchberger(ring, rep_m.r0(), &rep_m.g.columns(), ord)?;
    let mut cols = Vec::with_capacity(target.cols());
    for col in target.columns() {
        match gb.express(&col)? {
            Some(c) => cols.push(FreeVector::new(ring, c)?),
            None => return Ok(None),
        }
    }
    let h1 = PolyMatrix::from_columns(ring, rep_m.r1(), &cols)?;
    debug_assert_eq!(rep_m.g.mul(&h1).ok(), Some(target));
    Ok(Some(h1))
}

/// `w ↦ sum_i w_i z^(-1-i)`, written with increasing powers of `z^-1`.
/// The zero trajectory encodes to the empty string.
pub fn laurent_encode(w: &Trajectory) -> Result<String, BehaviorError> {
    if w.window.nvars() != 1 {
        return Err(BehaviorError::NotUnivariate(w.window.nvars()));
    }
    if w.r0 != 1 {
        return Err(BehaviorError::NotScalar(w.r0));
    }
    let mut out = String::new();
    for (i, v) in w.values.iter().enumerate() {
        let c = &v[0];
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = c.signed_parts();
        out.push_str(match (out.is_empty(), neg) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        });
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push_str(&format!("z^-{}", i + 1));
    }
    Ok(out)
}

/// Inverse of [`laurent_encode`] for a sequence of length `len`. Accepts
/// `""` or `"0"` for the zero tail; each power may appear at most once.
pub fn laurent_decode(field: FieldSpec, text: &str, len: usize) -> Result<Trajectory, BehaviorError> {
    if len == 0 {
        return Err(BehaviorError::Shape("a window has at least one point".into()));
    }
    let mut values = vec![field.zero(); len];
    let mut seen = vec![false; len];
    let bad = |offset: usize, message: &str| BehaviorError::MalformedTail { offset, message: message.into() };
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "0" {
        return Ok(Trajectory::sequence(field, &values));
    }
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let mut first = true;
    loop {
        skip_ws(&mut pos);
        if pos == bytes.len() {
            if first {
                return Err(bad(pos, "expected a term"));
            }
            break;
        }
        let mut neg = false;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            neg = bytes[pos] == b'-';
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(bad(pos, "expected '+' or '-' between terms"));
        }
        first = false;
        let start = pos;
        while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
            pos += 1;
        }
        let coef = if pos > start {
            let c = field.parse_scalar(&text[start..pos]).map_err(|e: ScalarError| bad(start, &format!("{}", e)))?;
            skip_ws(&mut pos);
            if pos >= bytes.len() || bytes[pos] != b'*' {
                return Err(bad(pos, "expected '*' after coefficient"));
            }
            pos += 1;
            skip_ws(&mut pos);
            c
        } else {
            field.one()
        };
        if !text[pos..].starts_with("z^-") {
            return Err(bad(pos, "expected z^-k"));
        }
        pos += 3;
        let es = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        let k: usize = text[es..pos].parse().map_err(|_| bad(es, "expected a positive exponent"))?;
        if k == 0 || k > len {
            return Err(bad(es, &format!("power z^-{} outside 1..={}", k, len)));
        }
        if seen[k - 1] {
            return Err(bad(es, &format!("power z^-{} repeated", k)));
        }
        seen[k - 1] = true;
        values[k - 1] = if neg { -coef } else { coef };
    }
    Ok(Trajectory::sequence(field, &values))
}

/// Rank of `{w, σw, σ²w, ...}` restricted to `[0, T]`, using every shift the
/// stored prefix supports. Requires a prefix of length at least `2(T+1)`.
pub fn orbit_truncation_rank(w: &Trajectory, t: u32) -> Result<usize, BehaviorError> {
    if w.window.nvars() != 1 {
        return Err(BehaviorError::NotUnivariate(w.window.nvars()));
    }
    if w.r0 != 1 {
        return Err(BehaviorError::NotScalar(w.r0));
    }
    let len = w.window.len();
    let width = t as usize + 1;
    if len < 2 * width {
        return Err(BehaviorError::PrefixTooShort { got: len, need: 2 * width });
    }
    let s = w.scalars();
    let rows: Vec<Vec<Scalar>> = (0..=len - width).map(|k| s[k..k + width].to_vec()).collect();
    Ok(Matrix::from_rows_with_cols(w.field, rows, width).expect("uniform rows").rank())
}

/// `1, 0, 1, 0, 0, 1, 0, 0, 0, 1, ...`: ones at the positions `k(k+3)/2`,
/// with ever longer runs of zeros in between.
pub fn triangular_sequence(field: FieldSpec, len: usize) -> Trajectory {
    let mut v = vec![field.zero(); len];
    let mut k = 0;
    while k * (k + 3) / 2 < len {
        v[k * (k + 3) / 2] = field.one();
        k += 1;
    }
    Trajectory::sequence(field, &v)
}
