//! Free associative algebra `k<z1..zn>`, truncated left S-sets and
//! degree-truncated computations for noncommutative behaviors.
//!
//! Everything here is graded by word length and cut off at a caller-chosen
//! degree; the kernels involved are in general not finitely generated, so
//! only graded slices are computed.
//!
//! Note on the commutator: the standard kernel generator of the
//! abelianization map is `c = z1*z2 - z2*z1`. It is occasionally misprinted
//! as `z1*z2 - z2*z2`, which is not in the kernel at all; [`commutator`]
//! builds the former.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use thiserror::Error;

use crate::linalg::{IncrementalBasis, Matrix};
use crate::polyring::{Monomial, Poly, Ring};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("letter {letter} out of range for {nletters} letters")]
    LetterOutOfRange { letter: usize, nletters: usize },
    #[error("state {0} out of range")]
    StateOutOfRange(usize),
    #[error("conflicting transitions for letter {letter} at state {state}")]
    ConflictingTransition { letter: usize, state: usize },
    #[error("state {0} is not reachable from the generators")]
    Unreachable(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("vacuous check: no constraint has all of its successor states enumerated")]
    VacuousDepth,
}

/// A word `s_{i1} ... s_{ik}` in the free monoid on `n` letters (0-based).
/// Ordered length-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(Vec<u16>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<u16>) -> Self {
        Word(letters)
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i as u16])
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Exponent vector of the commutative image.
    pub fn abelianize(&self, nvars: usize) -> Monomial {
        let mut e = vec![0u32; nvars];
        for &l in &self.0 {
            e[l as usize] += 1;
        }
        Monomial::new(e)
    }

    /// All words of length `len` over `n` letters, in lexicographic order.
    pub fn all_of_length(n: usize, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * n);
            for w in &out {
                for l in 0..n {
                    let mut v = w.0.clone();
                    v.push(l as u16);
                    next.push(Word(v));
                }
            }
            out = next;
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0.iter().map(|&l| names[l as usize].as_str()).collect::<Vec<_>>().join("*")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `k<z1..zn>` as a context value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FreeRing {
    pub field: FieldSpec,
    pub nvars: usize,
}

impl FreeRing {
    pub fn new(field: FieldSpec, nvars: usize) -> Self {
        FreeRing { field, nvars }
    }

    pub fn zero(&self) -> FreePoly {
        FreePoly { ring: *self, terms: BTreeMap::new() }
    }

    pub fn one(&self) -> FreePoly {
        FreePoly::constant(*self, self.field.one())
    }

    pub fn var(&self, i: usize) -> FreePoly {
        FreePoly::word(*self, Word::letter(i), self.field.one())
    }

    pub fn commutative(&self) -> Ring {
        Ring::new(self.field, self.nvars)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreePoly {
    ring: FreeRing,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn constant(ring: FreeRing, c: Scalar) -> Self {
        FreePoly::word(ring, Word::empty(), c)
    }

    pub fn word(ring: FreeRing, w: Word, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        FreePoly { ring, terms }
    }

    pub fn ring(&self) -> FreeRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in length-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    /// Length of the longest word, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::len)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Word::len);
        match lens.next() {
            None => true,
            Some(first) => lens.all(|l| l == first),
        }
    }

    fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                let s = &*x + &c;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &FreePoly) -> FreePoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &FreePoly) -> FreePoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FreePoly {
        FreePoly { ring: self.ring, terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> FreePoly {
        let mut out = self.ring.zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Product extending word concatenation bilinearly.
    pub fn mul(&self, other: &FreePoly) -> FreePoly {
        assert_eq!(self.ring, other.ring, "free ring mismatch");
        let mut out = self.ring.zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let (neg, mag) = c.signed_parts();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if w.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&w.fmt_with(names));
            }
        }
        out
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.ring.commutative().default_names();
        f.write_str(&self.fmt_with(&names))
    }
}

pub fn free_mul(f: &FreePoly, g: &FreePoly) -> FreePoly {
    f.mul(g)
}

/// The canonical surjection `k<z> -> k[z]`.
pub fn abelianize(f: &FreePoly) -> Poly {
    let ring = f.ring.commutative();
    Poly::from_terms(ring, f.terms.iter().map(|(w, c)| (w.abelianize(ring.nvars), c.clone())))
}

/// `z1*z2 - z2*z1`.
pub fn commutator(ring: FreeRing, i: usize, j: usize) -> FreePoly {
    ring.var(i).mul(&ring.var(j)).sub(&ring.var(j).mul(&ring.var(i)))
}

/// A vector in `k<z>^r`.
pub type FreeVector = Vec<FreePoly>;

/// One graded slice of a truncated computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub degree: usize,
    pub dim: usize,
    /// Number of spanning products considered in this degree.
    pub products: usize,
    /// Basis of the new part in this degree (vectors of length `r0`).
    pub basis: Vec<FreeVector>,
}

/// Index of words of length `<= d`, used as coordinates.
struct WordIndex {
    words: Vec<Word>,
    pos: BTreeMap<Word, usize>,
}

impl WordIndex {
    fn up_to(n: usize, d: usize) -> Self {
        let mut words = Vec::new();
        for m in 0..=d {
            words.extend(Word::all_of_length(n, m));
        }
        let pos = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        WordIndex { words, pos }
    }
}

/// Per-degree kernel of abelianization in degrees `0..=d`, as the exact
/// nullspace of the word-to-monomial incidence matrix.
pub fn truncated_abelianization_kernel(field: FieldSpec, n: usize, d: usize) -> Vec<GradedPiece> {
    let ring = FreeRing::new(field, n);
    (0..=d)
        .map(|m| {
            let words = Word::all_of_length(n, m);
            let mut monos: Vec<Monomial> = words.iter().map(|w| w.abelianize(n)).collect();
            monos.sort();
            monos.dedup();
            let mut inc = Matrix::zero(field, monos.len(), words.len());
            for (j, w) in words.iter().enumerate() {
                let i = monos.binary_search(&w.abelianize(n)).expect("present");
                inc.set(i, j, field.one());
            }
            let basis: Vec<FreeVector> = inc
                .nullspace()
                .into_iter()
                .map(|v| {
                    let mut p = ring.zero();
                    for (w, c) in words.iter().zip(v) {
                        p.add_term(w.clone(), c);
                    }
                    vec![p]
                })
                .collect();
            GradedPiece { degree: m, dim: basis.len(), products: words.len(), basis }
        })
        .collect()
}

/// Which side multiplications generate the truncated submodule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    /// `span{ w * g }`: the left submodule generated by the relations.
    Left,
    /// `span{ w * g * s }`: the left submodule generated by the relations
    /// and all their right word multiples.
    LeftOfRightMultiples,
}

/// Graded span of `{ w * g (* s) }` in degrees `0..=d`, with each product
/// graded by its top degree. Degree `m` reports the dimension increase of
/// the span when the products of top degree `m` are added.
fn graded_span(ring: FreeRing, gens: &[FreeVector], r0: usize, d: usize, closure: Closure) -> Vec<GradedPiece> {
    let n = ring.nvars;
    let index = WordIndex::up_to(n, d);
    let nw = index.words.len();
    let mut basis = IncrementalBasis::new(ring.field, nw * r0);
    let words_by_len: Vec<Vec<Word>> = (0..=d).map(|m| Word::all_of_length(n, m)).collect();
    let mut out = Vec::new();
    for m in 0..=d {
        let mut piece = GradedPiece { degree: m, dim: 0, products: 0, basis: Vec::new() };
        for g in gens {
            let Some(gdeg) = g.iter().filter_map(FreePoly::degree).max() else {
                continue;
            };
            if gdeg > m {
                continue;
            }
            let extra = m - gdeg;
            let splits: Vec<(usize, usize)> = match closure {
                Closure::Left => vec![(extra, 0)],
                Closure::LeftOfRightMultiples => (0..=extra).map(|a| (a, extra - a)).collect(),
            };
            for (lw, rw) in splits {
                for w in &words_by_len[lw] {
                    for s in &words_by_len[rw] {
                        let lhs = FreePoly::word(ring, w.clone(), ring.field.one());
                        let rhs = FreePoly::word(ring, s.clone(), ring.field.one());
                        let prod: FreeVector = g.iter().map(|c| lhs.mul(c).mul(&rhs)).collect();
                        piece.products += 1;
                        let coords = coordinates(&prod, &index, r0, ring.field);
                        if basis.insert(&coords) {
                            piece.dim += 1;
                            piece.basis.push(prod);
                        }
                    }
                }
            }
        }
        out.push(piece);
    }
    out
}

fn coordinates(v: &[FreePoly], index: &WordIndex, r0: usize, field: FieldSpec) -> Vec<Scalar> {
    let nw = index.words.len();
    let mut out = vec![field.zero(); nw * r0];
    for (i, p) in v.iter().enumerate() {
        for (w, c) in p.terms() {
            out[i * nw + index.pos[w]] = c.clone();
        }
    }
    out
}

/// Per-degree dimension of `span{ w * g * s }` for the given generators.
pub fn left_span_dim(ring: FreeRing, gens: &[FreePoly], d: usize) -> Vec<GradedPiece> {
    let gens: Vec<FreeVector> = gens.iter().map(|g| vec![g.clone()]).collect();
    graded_span(ring, &gens, 1, d, Closure::LeftOfRightMultiples)
}

/// Degree-truncated kernel of `k<z>^r0 -> k<z>^r0 / L`, where `L` is the
/// submodule generated by `relations` under `closure`.
pub fn nc_truncated_kernel(
    ring: FreeRing,
    relations: &[FreeVector],
    r0: usize,
    d: usize,
    closure: Closure,
) -> Result<Vec<GradedPiece>, FreeAlgError> {
    for (i, r) in relations.iter().enumerate() {
        if r.len() != r0 {
            return Err(FreeAlgError::Shape(format!("relation {} has length {}, expected {}", i, r.len(), r0)));
        }
    }
    Ok(graded_span(ring, relations, r0, d, closure))
}

/// A finitely generated left S-set, truncated: explicit states, generator
/// states, and partial transition maps `f_j`. States lacking a successor
/// for some letter are frontier states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SSetTrunc {
    nletters: usize,
    generators: Vec<usize>,
    /// `trans[letter][state]`
    trans: Vec<Vec<Option<usize>>>,
    depth: Vec<usize>,
}

impl SSetTrunc {
    /// Validates the table and enumerates depths breadth-first from the
    /// generators. `transitions` holds `(letter, from, to)` triples.
    pub fn new(
        nletters: usize,
        nstates: usize,
        generators: Vec<usize>,
        transitions: &[(usize, usize, usize)],
    ) -> Result<Self, FreeAlgError> {
        let mut trans = vec![vec![None; nstates]; nletters];
        for &(l, a, b) in transitions {
            if l >= nletters {
                return Err(FreeAlgError::LetterOutOfRange { letter: l, nletters });
            }
            for s in [a, b] {
                if s >= nstates {
                    return Err(FreeAlgError::StateOutOfRange(s));
                }
            }
            match trans[l][a] {
                Some(prev) if prev != b => {
                    return Err(FreeAlgError::ConflictingTransition { letter: l, state: a })
                }
                _ => trans[l][a] = Some(b),
            }
        }
        let mut depth = vec![usize::MAX; nstates];
        let mut queue = VecDeque::new();
        for &g in &generators {
            if g >= nstates {
                return Err(FreeAlgError::StateOutOfRange(g));
            }
            if depth[g] == usize::MAX {
                depth[g] = 0;
                queue.push_back(g);
            }
        }
        while let Some(s) = queue.pop_front() {
            for t in trans.iter().filter_map(|row| row[s]) {
                if depth[t] == usize::MAX {
                    depth[t] = depth[s] + 1;
                    queue.push_back(t);
                }
            }
        }
        if let Some(s) = depth.iter().position(|&d| d == usize::MAX) {
            return Err(FreeAlgError::Unreachable(s));
        }
        Ok(SSetTrunc { nletters, generators, trans, depth })
    }

    /// The free monoid acting on itself by left multiplication, truncated to
    /// words of length `<= depth`. State `i` is the `i`-th word in
    /// length-lexicographic order.
    pub fn free_monoid(nletters: usize, depth: usize) -> Self {
        let mut words = Vec::new();
        for m in 0..=depth {
            words.extend(Word::all_of_length(nletters, m));
        }
        let pos: BTreeMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut t = Vec::new();
        for (i, w) in words.iter().enumerate() {
            if w.len() == depth {
                continue;
            }
            for l in 0..nletters {
                t.push((l, i, pos[&Word::letter(l).concat(w)]));
            }
        }
        SSetTrunc::new(nletters, words.len(), vec![0], &t).expect("well-formed")
    }

    /// `N` truncated to `0..=len` with the successor map, one letter.
    pub fn path(len: usize) -> Self {
        let t: Vec<_> = (0..len).map(|i| (0, i, i + 1)).collect();
        SSetTrunc::new(1, len + 1, vec![0], &t).expect("well-formed")
    }

    pub fn nletters(&self) -> usize {
        self.nletters
    }

    pub fn nstates(&self) -> usize {
        self.depth.len()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn depth(&self, state: usize) -> usize {
        self.depth[state]
    }

    pub fn successor(&self, letter: usize, state: usize) -> Option<usize> {
        self.trans[letter][state]
    }

    pub fn is_frontier(&self, state: usize) -> bool {
        self.trans.iter().any(|row| row[state].is_none())
    }

    /// Image of `state` under the word `s_{i1} ... s_{ik}`, applying the
    /// last letter first. `None` if the path leaves the enumerated states.
    pub fn act(&self, word: &Word, state: usize) -> Option<usize> {
        word.letters().iter().rev().try_fold(state, |s, &l| self.trans[l as usize][s])
    }

    /// All `(letter, from, to)` triples, sorted.
    pub fn transitions(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (l, row) in self.trans.iter().enumerate() {
            for (a, b) in row.iter().enumerate() {
                if let Some(b) = b {
                    out.push((l, a, *b));
                }
            }
        }
        out
    }
}

/// A vector-valued function on the states of a truncated S-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcTrajectory {
    pub sset: SSetTrunc,
    pub r0: usize,
    pub values: Vec<Vec<Scalar>>,
}

impl NcTrajectory {
    pub fn new(sset: SSetTrunc, r0: usize, values: Vec<Vec<Scalar>>) -> Result<Self, FreeAlgError> {
        if values.len() != sset.nstates() || values.iter().any(|v| v.len() != r0) {
            return Err(FreeAlgError::Shape("trajectory must give r0 values at every state".into()));
        }
        Ok(NcTrajectory { sset, r0, values })
    }
}

/// `r0 x r1` matrix over `k<z>`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeMatrix {
    pub ring: FreeRing,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<FreePoly>,
}

impl FreeMatrix {
    pub fn from_rows(ring: FreeRing, rows: Vec<Vec<FreePoly>>) -> Result<Self, FreeAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(FreeAlgError::Shape("ragged rows".into()));
        }
        Ok(FreeMatrix { ring, rows: r, cols: c, entries: rows.into_iter().flatten().collect() })
    }

    pub fn get(&self, i: usize, j: usize) -> &FreePoly {
        &self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> FreeVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Embeds a commutative matrix, ordering each monomial's letters
    /// increasingly.
    pub fn from_commutative(ring: FreeRing, m: &crate::polyring::PolyMatrix) -> Self {
        let mut entries = Vec::new();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let mut p = ring.zero();
                for (mono, c) in m.get(i, j).terms() {
                    let mut letters = Vec::new();
                    for (v, &e) in mono.exponents().iter().enumerate() {
                        letters.extend(core::iter::repeat_n(v as u16, e as usize));
                    }
                    p.add_term(Word::new(letters), c.clone());
                }
                entries.push(p);
            }
        }
        FreeMatrix { ring, rows: m.rows(), cols: m.cols(), entries }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcViolation {
    pub column: usize,
    pub state: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcMembershipReport {
    /// Number of (column, state) constraints that could be evaluated.
    pub checked: usize,
    pub violations: Vec<NcViolation>,
}

impl NcMembershipReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `sum_i sum_word c * w_i(word . x) = 0` for every column and every
/// state `x` at which all needed successors are enumerated.
pub fn nc_check_membership(w: &NcTrajectory, g: &FreeMatrix) -> Result<NcMembershipReport, FreeAlgError> {
    if g.rows != w.r0 {
        return Err(FreeAlgError::Shape(format!("matrix has {} rows, trajectory has r0 = {}", g.rows, w.r0)));
    }
    if g.ring.nvars != w.sset.nletters() {
        return Err(FreeAlgError::Shape("letter count differs between matrix and S-set".into()));
    }
    let field = g.ring.field;
    let mut report = NcMembershipReport { checked: 0, violations: Vec::new() };
    let mut any_constraint = false;
    for j in 0..g.cols {
        let col = g.column(j);
        if col.iter().all(FreePoly::is_zero) {
            continue;
        }
        any_constraint = true;
        'states: for x in 0..w.sset.nstates() {
            let mut acc = field.zero();
            for (i, p) in col.iter().enumerate() {
                for (word, c) in p.terms() {
                    let Some(y) = w.sset.act(word, x) else {
                        continue 'states;
                    };
                    acc = &acc + &(c * &w.values[y][i]);
                }
            }
            report.checked += 1;
            if !acc.is_zero() {
                report.violations.push(NcViolation { column: j, state: x });
            }
        }
    }
    if any_constraint && report.checked == 0 {
        return Err(FreeAlgError::VacuousDepth);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{free_poly, qfree};
    use alloc::string::ToString;

    #[test]
    fn noncommutative_products() {
        let r = qfree(2);
        let (z1, z2) = (r.var(0), r.var(1));
        let a = free_mul(&z1, &z2);
        let b = free_mul(&z2, &z1);
        assert_eq!(a.terms().next().unwrap().0.letters(), &[0, 1]);
        assert_eq!(b.terms().next().unwrap().0.letters(), &[1, 0]);
        assert!(!a.sub(&b).is_zero());
        assert_eq!(free_mul(&a, &r.one()), a);
        let s = z1.add(&z2);
        let sq = free_mul(&s, &s);
        assert_eq!(sq, free_poly(r, "z1*z1 + z1*z2 + z2*z1 + z2*z2"));
        assert_eq!(sq.to_string(), "z2*z2 + z2*z1 + z1*z2 + z1*z1");
    }

    #[test]
    fn abelianization() {
        let r = qfree(2);
        assert!(abelianize(&commutator(r, 0, 1)).is_zero());
        let p = abelianize(&free_poly(r, "z1*z1*z2"));
        assert_eq!(p.to_string(), "z1^2*z2");
        assert!(abelianize(&r.zero()).is_zero());
    }

    #[test]
    fn abelianization_kernel_dims() {
        let f = FieldSpec::rationals();
        let dims: Vec<usize> = truncated_abelianization_kernel(f, 2, 4).iter().map(|p| p.dim).collect();
        assert_eq!(dims, [0, 0, 1, 4, 11]);
        let dims: Vec<usize> = truncated_abelianization_kernel(f, 1, 5).iter().map(|p| p.dim).collect();
        assert_eq!(dims, [0; 6]);
        assert_eq!(truncated_abelianization_kernel(f, 2, 0)[0].dim, 0);
        for piece in truncated_abelianization_kernel(f, 2, 4) {
            for b in &piece.basis {
                assert!(abelianize(&b[0]).is_zero());
            }
        }
    }

    #[test]
    fn commutator_span_has_one_relation_in_degree_four() {
        for f in [FieldSpec::rationals(), FieldSpec::prime(2).unwrap()] {
            let r = FreeRing::new(f, 2);
            let span = left_span_dim(r, &[commutator(r, 0, 1)], 4);
            let dims: Vec<usize> = span.iter().map(|p| p.dim).collect();
            let prods: Vec<usize> = span.iter().map(|p| p.products).collect();
            assert_eq!(dims, [0, 0, 1, 4, 11]);
            assert_eq!(prods, [0, 0, 1, 4, 12]);
        }
    }

    #[test]
    fn commutator_span_in_degree_two_and_empty_generators() {
        let r = qfree(2);
        assert_eq!(left_span_dim(r, &[commutator(r, 0, 1)], 2)[2].dim, 1);
        assert!(left_span_dim(r, &[], 4).iter().all(|p| p.dim == 0));
    }

    #[test]
    fn left_ideal_of_a_letter() {
        let r = qfree(2);
        let k = nc_truncated_kernel(r, &[vec![r.var(0)]], 1, 3, Closure::Left).unwrap();
        let dims: Vec<usize> = k.iter().map(|p| p.dim).collect();
        assert_eq!(dims, [0, 1, 2, 4]);
        let k = nc_truncated_kernel(r, &[], 1, 3, Closure::Left).unwrap();
        assert!(k.iter().all(|p| p.dim == 0));
    }

    #[test]
    fn commutator_relations_match_abelianization_kernel() {
        let f = FieldSpec::prime(3).unwrap();
        let r = FreeRing::new(f, 2);
        let rels = vec![vec![commutator(r, 0, 1)], vec![commutator(r, 1, 0)]];
        let k = nc_truncated_kernel(r, &rels, 1, 5, Closure::LeftOfRightMultiples).unwrap();
        let ab = truncated_abelianization_kernel(f, 2, 5);
        for (a, b) in k.iter().zip(&ab) {
            assert_eq!(a.dim, b.dim);
        }
    }

    #[test]
    fn sset_validation() {
        assert!(matches!(
            SSetTrunc::new(1, 2, vec![0], &[]),
            Err(FreeAlgError::Unreachable(1))
        ));
        assert!(matches!(
            SSetTrunc::new(1, 2, vec![0], &[(0, 0, 1), (0, 0, 0)]),
            Err(FreeAlgError::ConflictingTransition { .. })
        ));
        assert!(SSetTrunc::new(1, 2, vec![0], &[(1, 0, 1)]).is_err());
        let s = SSetTrunc::free_monoid(2, 2);
        assert_eq!(s.nstates(), 7);
        assert!(s.is_frontier(6) && !s.is_frontier(0));
        // z1 * z2 applied to the empty word reaches the word z1 z2.
        let w = Word::new(vec![0, 1]);
        assert_eq!(s.act(&w, 0), Some(4));
    }

    fn fib_values(f: FieldSpec, len: usize) -> Vec<Vec<Scalar>> {
        let mut v = vec![1i64, 1];
        while v.len() < len {
            let k = v.len();
            v.push(v[k - 1] + v[k - 2]);
        }
        v.into_iter().take(len).map(|x| vec![f.from_i64(x)]).collect()
    }

    #[test]
    fn fibonacci_on_the_path() {
        let f = FieldSpec::rationals();
        let r = FreeRing::new(f, 1);
        let g = FreeMatrix::from_rows(r, vec![vec![free_poly(r, "z*z - z - 1")]]).unwrap();
        let w = NcTrajectory::new(SSetTrunc::path(7), 1, fib_values(f, 8)).unwrap();
        let rep = nc_check_membership(&w, &g).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.checked, 6);
    }

    #[test]
    fn two_letter_membership() {
        let f = FieldSpec::rationals();
        let r = FreeRing::new(f, 2);
        let s = SSetTrunc::free_monoid(2, 2);
        let ones = vec![vec![f.one()]; s.nstates()];
        let w = NcTrajectory::new(s.clone(), 1, ones).unwrap();
        let g = FreeMatrix::from_rows(r, vec![vec![free_poly(r, "z1 - z2")]]).unwrap();
        assert!(nc_check_membership(&w, &g).unwrap().passed());

        // Value = word length; z1 - 1 fails wherever the z1-successor exists.
        let vals = (0..s.nstates()).map(|x| vec![f.from_i64(s.depth(x) as i64)]).collect();
        let w = NcTrajectory::new(s.clone(), 1, vals).unwrap();
        let g = FreeMatrix::from_rows(r, vec![vec![free_poly(r, "z1 - 1")]]).unwrap();
        let rep = nc_check_membership(&w, &g).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.violations[0], NcViolation { column: 0, state: 0 });
        assert_eq!(rep.violations.len(), 3);
    }

    #[test]
    fn vacuous_depth() {
        let f = FieldSpec::rationals();
        let r = FreeRing::new(f, 1);
        let g = FreeMatrix::from_rows(r, vec![vec![free_poly(r, "z*z*z - 1")]]).unwrap();
        let w = NcTrajectory::new(SSetTrunc::path(2), 1, fib_values(f, 3)).unwrap();
        assert_eq!(nc_check_membership(&w, &g), Err(FreeAlgError::VacuousDepth));
    }
}
