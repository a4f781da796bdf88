//! Buchberger's algorithm for submodules of `A^r`, with division
//! certificates, syzygies and free resolutions.
//!
//! Module terms are ordered position-over-term (component 0 highest) on top
//! of a [`TermOrder`]. Syzygies come from the extended algorithm: every
//! generator carries its expression in the input generators as extra
//! trailing components, and each S-pair (or input) that reduces to zero in
//! the leading components leaves behind a relation among the inputs.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use thiserror::Error;

use crate::polyring::{FreeVector, Monomial, Poly, PolyError, PolyMatrix, Ring, TermOrder};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("ring mismatch")]
    RingMismatch,
    #[error("resolution did not terminate within {0} steps")]
    ResolutionTooLong(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Term {
    comp: usize,
    mono: Monomial,
    coef: Scalar,
}

/// Sparse module element, terms sorted descending by the module order.
#[derive(Clone, Debug, PartialEq, Eq)]
struct MVec(Vec<Term>);

impl MVec {
    fn lead(&self) -> Option<&Term> {
        self.0.first()
    }
}

/// Order and bookkeeping shared by one computation. Only the first `head`
/// components take part in leading terms and reduction; the remaining
/// components are carried along.
#[derive(Clone, Copy, Debug)]
struct Engine {
    ring: Ring,
    ord: TermOrder,
    head: usize,
}

impl Engine {
    fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        self.ord.cmp_module((a.comp, &a.mono), (b.comp, &b.mono))
    }

    fn from_free(&self, v: &FreeVector, offset: usize) -> Vec<Term> {
        let mut out = Vec::new();
        for (i, p) in v.components().iter().enumerate() {
            for (m, c) in p.terms() {
                out.push(Term { comp: i + offset, mono: m.clone(), coef: c.clone() });
            }
        }
        out
    }

    fn sorted(&self, mut terms: Vec<Term>) -> MVec {
        terms.sort_by(|a, b| self.cmp(b, a));
        MVec(terms)
    }

    /// `v` with the tracking part `e_index` appended after `head` components.
    fn augmented(&self, v: &FreeVector, index: Option<usize>) -> MVec {
        let mut terms = self.from_free(v, 0);
        if let Some(i) = index {
            terms.push(Term {
                comp: self.head + i,
                mono: Monomial::one(self.ring.nvars),
                coef: self.ring.field.one(),
            });
        }
        self.sorted(terms)
    }

    fn to_free(&self, v: &MVec, from: usize, to: usize) -> FreeVector {
        let mut comps = vec![Poly::zero(self.ring); to - from];
        for t in &v.0 {
            if t.comp >= from && t.comp < to {
                comps[t.comp - from].add_term(t.mono.clone(), t.coef.clone());
            }
        }
        FreeVector::new(self.ring, comps).expect("uniform ring")
    }

    fn head_is_zero(&self, v: &MVec) -> bool {
        v.lead().is_none_or(|t| t.comp >= self.head)
    }

    fn mul_term(&self, v: &MVec, m: &Monomial, c: &Scalar) -> MVec {
        MVec(v.0.iter().map(|t| Term { comp: t.comp, mono: t.mono.mul(m), coef: &t.coef * c }).collect())
    }

    /// `a - c * m * b`.
    fn sub_mul(&self, a: &MVec, c: &Scalar, m: &Monomial, b: &MVec) -> MVec {
        let mut out = Vec::with_capacity(a.0.len() + b.0.len());
        let mut bi = b.0.iter().map(|t| Term { comp: t.comp, mono: t.mono.mul(m), coef: -&(&t.coef * c) }).peekable();
        let mut ai = a.0.iter().cloned().peekable();
        loop {
            match (ai.peek(), bi.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(ai.next().unwrap()),
                (None, Some(_)) => out.push(bi.next().unwrap()),
                (Some(x), Some(y)) => match self.cmp(x, y) {
                    Ordering::Greater => out.push(ai.next().unwrap()),
                    Ordering::Less => out.push(bi.next().unwrap()),
                    Ordering::Equal => {
                        let x = ai.next().unwrap();
                        let y = bi.next().unwrap();
                        let s = &x.coef + &y.coef;
                        if !s.is_zero() {
                            out.push(Term { coef: s, ..x });
                        }
                    }
                },
            }
        }
        MVec(out)
    }

    fn add(&self, a: &MVec, b: &MVec) -> MVec {
        let one = Monomial::one(self.ring.nvars);
        self.sub_mul(a, &-self.ring.field.one(), &one, b)
    }

    fn mul_poly(&self, v: &MVec, p: &Poly) -> MVec {
        let mut acc = MVec(Vec::new());
        for (m, c) in p.terms() {
            acc = self.add(&acc, &self.mul_term(v, m, c));
        }
        acc
    }

    fn monic(&self, v: &MVec) -> MVec {
        match v.lead() {
            Some(t) if !t.coef.is_one() => {
                let inv = t.coef.inv().expect("nonzero lead");
                self.mul_term(v, &Monomial::one(self.ring.nvars), &inv)
            }
            _ => v.clone(),
        }
    }

    /// Full reduction of the head part of `v` by `basis`, skipping the
    /// element at `skip`. Quotients are accumulated when requested.
    fn reduce(&self, mut v: MVec, basis: &[MVec], skip: Option<usize>, mut quotients: Option<&mut [Poly]>) -> MVec {
        let mut i = 0;
        while i < v.0.len() {
            let t = &v.0[i];
            if t.comp >= self.head {
                break;
            }
            let divisor = basis.iter().enumerate().find(|(k, g)| {
                Some(*k) != skip
                    && g.lead().is_some_and(|l| l.comp == t.comp && l.mono.divides(&t.mono))
            });
            match divisor {
                Some((k, g)) => {
                    let l = g.lead().unwrap();
                    let q = l.mono.quotient_of(&t.mono);
                    let c = t.coef.checked_div(&l.coef).expect("nonzero lead");
                    if let Some(qs) = quotients.as_deref_mut() {
                        qs[k].add_term(q.clone(), c.clone());
                    }
                    v = self.sub_mul(&v, &c, &q, g);
                }
                None => i += 1,
            }
        }
        v
    }

    fn spoly(&self, f: &MVec, g: &MVec) -> MVec {
        let (a, b) = (f.lead().unwrap(), g.lead().unwrap());
        let l = a.mono.lcm(&b.mono);
        let fa = self.mul_term(f, &a.mono.quotient_of(&l), &a.coef.inv().unwrap());
        self.sub_mul(&fa, &b.coef.inv().unwrap(), &b.mono.quotient_of(&l), g)
    }
}

struct BuchbergerOutput {
    basis: Vec<MVec>,
    /// Elements whose head part reduced to zero: relations among the inputs.
    relations: Vec<MVec>,
}

/// Buchberger with the normal selection strategy, the coprime-leads
/// criterion (ideal case only) and the chain criterion.
fn run_buchberger(eng: &Engine, inputs: Vec<MVec>) -> BuchbergerOutput {
    let mut basis: Vec<MVec> = Vec::new();
    let mut relations = Vec::new();
    let mut pending: Vec<(usize, usize)> = Vec::new();

    let insert = |v: MVec, basis: &mut Vec<MVec>, pending: &mut Vec<(usize, usize)>, relations: &mut Vec<MVec>| {
        if eng.head_is_zero(&v) {
            if !v.0.is_empty() {
                relations.push(v);
            }
            return;
        }
        let v = eng.monic(&v);
        let idx = basis.len();
        let comp = v.lead().unwrap().comp;
        for (k, g) in basis.iter().enumerate() {
            if g.lead().unwrap().comp == comp {
                pending.push((k, idx));
            }
        }
        basis.push(v);
    };

    for v in inputs {
        let r = eng.reduce(v, &basis, None, None);
        insert(r, &mut basis, &mut pending, &mut relations);
    }

    while !pending.is_empty() {
        let lcm_deg = |&(i, j): &(usize, usize), basis: &[MVec]| {
            basis[i].lead().unwrap().mono.lcm(&basis[j].lead().unwrap().mono).degree()
        };
        let pos = (0..pending.len())
            .min_by_key(|&p| (lcm_deg(&pending[p], &basis), pending[p]))
            .unwrap();
        let (i, j) = pending.remove(pos);
        let (li, lj) = (basis[i].lead().unwrap().clone(), basis[j].lead().unwrap().clone());
        let lcm = li.mono.lcm(&lj.mono);

        if eng.head == 1 && li.mono.is_coprime(&lj.mono) {
            // The Koszul relation g_j * g_i - g_i * g_j = 0, lifted.
            let gi = eng.to_free(&basis[i], 0, 1).get(0).clone();
            let gj = eng.to_free(&basis[j], 0, 1).get(0).clone();
            let rel = eng.add(&eng.mul_poly(&basis[i], &gj), &eng.mul_poly(&basis[j], &-&gi));
            if !rel.0.is_empty() {
                debug_assert!(eng.head_is_zero(&rel));
                relations.push(rel);
            }
            continue;
        }

        let has_pair = |a: usize, b: usize, pending: &[(usize, usize)]| {
            let key = (a.min(b), a.max(b));
            pending.contains(&key)
        };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().is_some_and(|l| l.comp == li.comp && l.mono.divides(&lcm))
                && !has_pair(i, k, &pending)
                && !has_pair(j, k, &pending)
        });
        if chain {
            continue;
        }

        let s = eng.spoly(&basis[i], &basis[j]);
        let r = eng.reduce(s, &basis, None, None);
        insert(r, &mut basis, &mut pending, &mut relations);
    }
    BuchbergerOutput { basis, relations }
}

/// Minimal, fully interreduced, monic basis sorted descending by lead term.
fn reduce_basis(eng: &Engine, basis: Vec<MVec>) -> Vec<MVec> {
    let n = basis.len();
    let mut keep = vec![true; n];
    for k in 0..n {
        let lk = basis[k].lead().unwrap();
        for l in 0..n {
            if l == k || !keep[l] {
                continue;
            }
            let ll = basis[l].lead().unwrap();
            if ll.comp == lk.comp && ll.mono.divides(&lk.mono) && (ll.mono != lk.mono || l < k) {
                keep[k] = false;
                break;
            }
        }
    }
    let minimal: Vec<MVec> = basis.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect();
    let mut reduced: Vec<MVec> = (0..minimal.len())
        .map(|k| eng.monic(&eng.reduce(minimal[k].clone(), &minimal, Some(k), None)))
        .collect();
    reduced.sort_by(|a, b| eng.cmp(b.lead().unwrap(), a.lead().unwrap()));
    reduced
}

/// Reduced Groebner basis of a submodule of `A^rank`, together with the
/// input generators and the matrix expressing each basis element in them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub ring: Ring,
    pub order: TermOrder,
    pub rank: usize,
    /// Monic, interreduced, sorted descending by leading term.
    pub basis: Vec<FreeVector>,
    pub originals: Vec<FreeVector>,
    /// `originals.len() x basis.len()`: `basis[k] = sum_i transform[i][k] * originals[i]`.
    pub transform: PolyMatrix,
}

/// `input = sum quotients[k] * basis[k] + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionCertificate {
    pub quotients: Vec<Poly>,
    pub remainder: FreeVector,
}

fn check_gens(ring: Ring, rank: usize, gens: &[FreeVector]) -> Result<(), GroebnerError> {
    for g in gens {
        if g.rank() != rank {
            return Err(GroebnerError::RankMismatch { expected: rank, got: g.rank() });
        }
        if g.ring() != ring {
            return Err(GroebnerError::RingMismatch);
        }
    }
    Ok(())
}

pub fn buchberger(ring: Ring, rank: usize, gens: &[FreeVector], ord: TermOrder) -> Result<GroebnerBasis, GroebnerError> {
    check_gens(ring, rank, gens)?;
    let eng = Engine { ring, ord, head: rank };
    let inputs = gens.iter().enumerate().map(|(i, g)| eng.augmented(g, Some(i))).collect();
    let out = run_buchberger(&eng, inputs);
    let reduced = reduce_basis(&eng, out.basis);
    let m = gens.len();
    let basis: Vec<FreeVector> = reduced.iter().map(|g| eng.to_free(g, 0, rank)).collect();
    let cols: Vec<FreeVector> = reduced.iter().map(|g| eng.to_free(g, rank, rank + m)).collect();
    let transform = PolyMatrix::from_columns(ring, m, &cols)?;
    Ok(GroebnerBasis { ring, order: ord, rank, basis, originals: gens.to_vec(), transform })
}

pub fn normal_form(v: &FreeVector, gb: &GroebnerBasis) -> Result<DivisionCertificate, GroebnerError> {
    check_gens(gb.ring, gb.rank, core::slice::from_ref(v))?;
    let eng = Engine { ring: gb.ring, ord: gb.order, head: gb.rank };
    let basis: Vec<MVec> = gb.basis.iter().map(|g| eng.augmented(g, None)).collect();
    let mut quotients = vec![Poly::zero(gb.ring); basis.len()];
    let r = eng.reduce(eng.augmented(v, None), &basis, None, Some(&mut quotients));
    Ok(DivisionCertificate { quotients, remainder: eng.to_free(&r, 0, gb.rank) })
}

impl GroebnerBasis {
    pub fn contains(&self, v: &FreeVector) -> Result<bool, GroebnerError> {
        Ok(normal_form(v, self)?.remainder.is_zero())
    }

    /// Expresses `v` in the original generators, if it lies in their span.
    pub fn express(&self, v: &FreeVector) -> Result<Option<Vec<Poly>>, GroebnerError> {
        let cert = normal_form(v, self)?;
        if !cert.remainder.is_zero() {
            return Ok(None);
        }
        let coeffs = (0..self.originals.len())
            .map(|i| {
                let mut acc = Poly::zero(self.ring);
                for (k, q) in cert.quotients.iter().enumerate() {
                    acc = &acc + &(q * self.transform.get(i, k));
                }
                acc
            })
            .collect();
        Ok(Some(coeffs))
    }

    /// Every S-pair of the basis reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let eng = Engine { ring: self.ring, ord: self.order, head: self.rank };
        let basis: Vec<MVec> = self.basis.iter().map(|g| eng.augmented(g, None)).collect();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                if basis[i].lead().unwrap().comp != basis[j].lead().unwrap().comp {
                    continue;
                }
                let r = eng.reduce(eng.spoly(&basis[i], &basis[j]), &basis, None, None);
                if !r.0.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// No term of any element is divisible by another element's lead term,
    /// and all leads are monic.
    pub fn is_reduced(&self) -> bool {
        let eng = Engine { ring: self.ring, ord: self.order, head: self.rank };
        let basis: Vec<MVec> = self.basis.iter().map(|g| eng.augmented(g, None)).collect();
        basis.iter().enumerate().all(|(k, g)| {
            g.lead().is_some_and(|l| l.coef.is_one())
                && g.0.iter().all(|t| {
                    !basis.iter().enumerate().any(|(l, h)| {
                        l != k && h.lead().is_some_and(|hl| hl.comp == t.comp && hl.mono.divides(&t.mono))
                    })
                })
        })
    }
}

pub fn submodule_contains(
    ring: Ring,
    rank: usize,
    gens_a: &[FreeVector],
    gens_b: &[FreeVector],
    ord: TermOrder,
) -> Result<bool, GroebnerError> {
    check_gens(ring, rank, gens_b)?;
    let gb = buchberger(ring, rank, gens_a, ord)?;
    for v in gens_b {
        if !gb.contains(v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Generators (as columns) of `{ a in A^m : sum a_i gens_i = 0 }`,
/// returned as the reduced Groebner basis of that module.
pub fn syzygies(ring: Ring, rank: usize, gens: &[FreeVector], ord: TermOrder) -> Result<PolyMatrix, GroebnerError> {
    check_gens(ring, rank, gens)?;
    let m = gens.len();
    let eng = Engine { ring, ord, head: rank };
    let inputs = gens.iter().enumerate().map(|(i, g)| eng.augmented(g, Some(i))).collect();
    let out = run_buchberger(&eng, inputs);
    let rels: Vec<FreeVector> = out.relations.iter().map(|r| eng.to_free(r, rank, rank + m)).collect();
    let cols = if rels.is_empty() {
        Vec::new()
    } else {
        let syz_eng = Engine { ring, ord, head: m };
        let inputs = rels.iter().map(|r| syz_eng.augmented(r, None)).collect();
        let out = run_buchberger(&syz_eng, inputs);
        reduce_basis(&syz_eng, out.basis).iter().map(|g| syz_eng.to_free(g, 0, m)).collect()
    };
    Ok(PolyMatrix::from_columns(ring, m, &cols)?)
}

/// `coker(G.: A^{r1} -> A^{r0})`, relations given as the columns of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub ring: Ring,
    pub rank: usize,
    pub relations: PolyMatrix,
}

impl ModulePresentation {
    pub fn new(relations: PolyMatrix) -> Self {
        ModulePresentation { ring: relations.ring(), rank: relations.rows(), relations }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let gens: Vec<String> = self.relations.nonzero_columns().iter().map(|c| c.fmt_with(names)).collect();
        format!("A^{} / <{}>", self.rank, gens.join(", "))
    }
}

/// Bound on resolution length before giving up; Hilbert's theorem gives
/// `nvars` for minimal resolutions, and unminimized ones stay close.
pub fn resolution_step_limit(ring: Ring) -> usize {
    2 * ring.nvars + 8
}

/// `[G1, G2, ..., Gk]` with `G1` the relation matrix and the columns of
/// `G(i+1)` generating the syzygies of the columns of `Gi`. Stops once the
/// syzygy module is zero. A zero relation matrix gives the empty list.
pub fn free_resolution(p: &ModulePresentation, ord: TermOrder) -> Result<Vec<PolyMatrix>, GroebnerError> {
    if p.relations.is_zero() {
        return Ok(Vec::new());
    }
    let mut maps = vec![p.relations.clone()];
    let limit = resolution_step_limit(p.ring);
    loop {
        let last = maps.last().unwrap();
        let next = syzygies(p.ring, last.rows(), &last.columns(), ord)?;
        if next.cols() == 0 {
            return Ok(maps);
        }
        if maps.len() >= limit {
            return Err(GroebnerError::ResolutionTooLong(limit));
        }
        maps.push(next);
    }
}

/// Exactness certificate for one consecutive pair `(Gi, Gi+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCertificate {
    pub index: usize,
    /// `Gi * Gi+1 = 0`, i.e. `im(Gi+1) ⊆ ker(Gi)`.
    pub product_zero: bool,
    /// `ker(Gi) ⊆ im(Gi+1)`, decided by normal forms of the syzygies of `Gi`.
    pub kernel_in_image: bool,
}

/// Certificates for every consecutive pair, plus the final map (whose
/// kernel must be zero; reported with `index = k - 1` and an empty next map).
pub fn certify_resolution(maps: &[PolyMatrix], ord: TermOrder) -> Result<Vec<ExactnessCertificate>, GroebnerError> {
    let mut out = Vec::new();
    for (i, g) in maps.iter().enumerate() {
        let ring = g.ring();
        let syz = syzygies(ring, g.rows(), &g.columns(), ord)?;
        let (product_zero, kernel_in_image) = match maps.get(i + 1) {
            Some(h) => (
                g.mul(h)?.is_zero(),
                submodule_contains(ring, g.cols(), &h.columns(), &syz.columns(), ord)?,
            ),
            None => (true, syz.cols() == 0),
        };
        out.push(ExactnessCertificate { index: i, product_zero, kernel_in_image });
    }
    Ok(out)
}
