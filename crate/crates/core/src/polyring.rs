//! Sparse multivariate polynomials, term orders and polynomial matrices.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

/// `k[z1..zn]`: the coefficient field together with the variable count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub field: FieldSpec,
    pub nvars: usize,
}

impl Ring {
    pub fn new(field: FieldSpec, nvars: usize) -> Self {
        Ring { field, nvars }
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(*self)
    }

    pub fn one(&self) -> Poly {
        Poly::constant(*self, self.field.one())
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(*self, i)
    }

    /// `z` for a single variable, otherwise `z1 .. zn`.
    pub fn default_names(&self) -> Vec<String> {
        if self.nvars == 1 {
            vec!["z".to_string()]
        } else {
            (1..=self.nvars).map(|i| format!("z{}", i)).collect()
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{} vars]", self.field, self.nvars)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (e, name) in self.0.iter().zip(names) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{}^{}", name, e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Monomial order; variables ordered `z1 > z2 > ... > zn`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    #[default]
    DegRevLex,
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => a.0.cmp(&b.0),
            TermOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        // Smaller exponent in the last differing variable wins.
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    /// Position-over-term extension to `A^r`: lower component index is larger.
    pub fn cmp_module(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        b.0.cmp(&a.0).then_with(|| self.cmp(a.1, b.1))
    }
}

/// Degree of a polynomial; the zero polynomial gets the `NegInfinity` sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(&self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(*d),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(f: &Poly, g: &Poly, op: PolyOp) -> Result<Poly, PolyError> {
    f.check_ring(g)?;
    Ok(match op {
        PolyOp::Add => f + g,
        PolyOp::Sub => f - g,
        PolyOp::Mul => f * g,
    })
}

pub fn leading_term(f: &Poly, ord: TermOrder) -> Result<(Monomial, Scalar), PolyError> {
    f.leading_term(ord)
}

impl Poly {
    pub fn zero(ring: Ring) -> Self {
        Poly { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, c: Scalar) -> Self {
        Poly::monomial(ring, Monomial::one(ring.nvars), c)
    }

    pub fn var(ring: Ring, i: usize) -> Self {
        Poly::monomial(ring, Monomial::var(ring.nvars, i), ring.field.one())
    }

    pub fn monomial(ring: Ring, m: Monomial, c: Scalar) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { ring, terms }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing
    /// repeated monomials and dropping zeros.
    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    /// Terms sorted descending by `ord`.
    pub fn sorted_terms(&self, ord: TermOrder) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn check_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch(self.ring, other.ring))
        }
    }

    pub fn leading_term(&self, ord: TermOrder) -> Result<(Monomial, Scalar), PolyError> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or(PolyError::ZeroPolynomial)
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.degree())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Largest exponent of variable `i` over the support (0 for the zero polynomial).
    pub fn max_exponent(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.ring);
        }
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(a, x)| (a.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Constant term value if the polynomial is a constant (including 0).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.ring.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Canonical rendering: terms descending in degrevlex, explicit `*`.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.sorted_terms(TermOrder::DegRevLex).into_iter().enumerate() {
            let (neg, mag) = c.signed_parts();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push('*');
                }
                out.push_str(&m.fmt_with(names));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&self.ring.default_names()))
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "polynomial ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "polynomial ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "polynomial ring mismatch");
        let mut out = Poly::zero(self.ring);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

/// Element of `A^r`, a column vector of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeVector {
    ring: Ring,
    comps: Vec<Poly>,
}

impl FreeVector {
    pub fn new(ring: Ring, comps: Vec<Poly>) -> Result<Self, PolyError> {
        for c in &comps {
            if c.ring != ring {
                return Err(PolyError::RingMismatch(ring, c.ring));
            }
        }
        Ok(FreeVector { ring, comps })
    }

    pub fn zero(ring: Ring, rank: usize) -> Self {
        FreeVector { ring, comps: vec![Poly::zero(ring); rank] }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(ring: Ring, rank: usize, i: usize) -> Self {
        let mut v = FreeVector::zero(ring, rank);
        v.comps[i] = ring.one();
        v
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<Poly> {
        self.comps
    }

    pub fn get(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn add(&self, other: &FreeVector) -> FreeVector {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        FreeVector {
            ring: self.ring,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &FreeVector) -> FreeVector {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        FreeVector {
            ring: self.ring,
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale_poly(&self, p: &Poly) -> FreeVector {
        FreeVector { ring: self.ring, comps: self.comps.iter().map(|c| c * p).collect() }
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.comps.iter().map(|p| p.fmt_with(names)).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl fmt::Display for FreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&self.ring.default_names()))
    }
}

/// Dense `rows x cols` matrix of polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Self {
        PolyMatrix { ring, rows, cols, entries: vec![Poly::zero(ring); rows * cols] }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = PolyMatrix::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Poly>>) -> Result<Self, PolyError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(PolyError::Shape("ragged rows".into()));
            }
            for p in row {
                if p.ring != ring {
                    return Err(PolyError::RingMismatch(ring, p.ring));
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix { ring, rows: r, cols: c, entries })
    }

    /// Matrix whose columns are the given vectors, all of rank `rows`.
    pub fn from_columns(ring: Ring, rows: usize, cols: &[FreeVector]) -> Result<Self, PolyError> {
        let mut m = PolyMatrix::zero(ring, rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            if v.rank() != rows {
                return Err(PolyError::Shape(format!(
                    "column {} has rank {}, expected {}",
                    j,
                    v.rank(),
                    rows
                )));
            }
            if v.ring != ring {
                return Err(PolyError::RingMismatch(ring, v.ring));
            }
            for i in 0..rows {
                m.set(i, j, v.comps[i].clone());
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert_eq!(p.ring, self.ring, "polynomial ring mismatch");
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> FreeVector {
        FreeVector { ring: self.ring, comps: (0..self.rows).map(|i| self.get(i, j).clone()).collect() }
    }

    pub fn columns(&self) -> Vec<FreeVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zero(self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Columns that are not identically zero.
    pub fn nonzero_columns(&self) -> Vec<FreeVector> {
        self.columns().into_iter().filter(|c| !c.is_zero()).collect()
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch(self.ring, other.ring));
        }
        if self.cols != other.rows {
            return Err(PolyError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = PolyMatrix::zero(self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(self.ring);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * other.get(k, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vector(&self, v: &FreeVector) -> Result<FreeVector, PolyError> {
        let col = PolyMatrix::from_columns(self.ring, v.rank(), core::slice::from_ref(v))?;
        Ok(self.mul(&col)?.column(0))
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(PolyError::Shape("matrix difference shapes differ".into()));
        }
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch(self.ring, other.ring));
        }
        Ok(PolyMatrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j).fmt_with(names))
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

pub fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
    a.mul(b)
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&self.ring.default_names()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{poly, qring};

    #[test]
    fn difference_of_squares() {
        let r = qring(1);
        let z = r.var(0);
        let one = r.one();
        let p = poly_arith(&(&z + &one), &(&z - &one), PolyOp::Mul).unwrap();
        assert_eq!(p, poly(r, "z^2 - 1"));
        assert_eq!(p.to_string(), "z^2 - 1");
    }

    #[test]
    fn additive_identity_and_commutativity() {
        let r = qring(2);
        let f = poly(r, "3*z1^2 - z2 + 1/2");
        assert_eq!(&f + &r.zero(), f);
        let (z1, z2) = (r.var(0), r.var(1));
        assert!((&(&z1 * &z2) - &(&z2 * &z1)).is_zero());
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let a = qring(1).one();
        let b = qring(2).one();
        assert!(matches!(poly_arith(&a, &b, PolyOp::Add), Err(PolyError::RingMismatch(..))));
    }

    #[test]
    fn degrevlex_leading_term() {
        let r = qring(2);
        let f = poly(r, "z1^2*z2 + z1*z2^2");
        let (m, c) = leading_term(&f, TermOrder::DegRevLex).unwrap();
        assert_eq!(m.exponents(), &[2, 1]);
        assert!(c.is_one());
        let (m, c) = leading_term(&poly(r, "5"), TermOrder::DegRevLex).unwrap();
        assert!(m.is_one());
        assert_eq!(c, r.field.from_i64(5));
        assert_eq!(leading_term(&r.zero(), TermOrder::Lex), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn degrevlex_vs_lex() {
        // z1*z3 vs z2^2: degrevlex prefers z2^2 (smaller z3 exponent), lex prefers z1*z3.
        let a = Monomial::new(vec![1, 0, 1]);
        let b = Monomial::new(vec![0, 2, 0]);
        assert_eq!(TermOrder::DegRevLex.cmp(&a, &b), Ordering::Less);
        assert_eq!(TermOrder::Lex.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn zero_degree_is_sentinel() {
        let r = qring(1);
        assert_eq!(r.zero().degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(poly(r, "z^3 + z").degree(), Degree::Finite(3));
    }

    #[test]
    fn matrix_products() {
        let r = qring(2);
        let row = PolyMatrix::from_rows(r, vec![vec![r.var(0), r.var(1)]]).unwrap();
        let col =
            PolyMatrix::from_rows(r, vec![vec![r.var(1)], vec![-&r.var(0)]]).unwrap();
        let p = mat_mul(&row, &col).unwrap();
        assert_eq!((p.rows(), p.cols()), (1, 1));
        assert!(p.is_zero());

        let id = PolyMatrix::identity(r, 2);
        assert_eq!(mat_mul(&id, &col).unwrap(), col);

        let a = PolyMatrix::zero(r, 1, 0);
        let b = PolyMatrix::zero(r, 0, 1);
        let p = mat_mul(&a, &b).unwrap();
        assert_eq!((p.rows(), p.cols()), (1, 1));
        assert!(p.is_zero());

        assert!(matches!(mat_mul(&row, &row), Err(PolyError::Shape(_))));
    }

    mod props {
        use super::*;
        use crate::testutil::arb_poly;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn mul_commutative_associative(f in arb_poly(2, 3), g in arb_poly(2, 3), h in arb_poly(2, 2)) {
                prop_assert_eq!(&f * &g, &g * &f);
                prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            }

            #[test]
            fn leading_term_multiplicative(f in arb_poly(3, 3), g in arb_poly(3, 3)) {
                prop_assume!(!f.is_zero() && !g.is_zero());
                for ord in [TermOrder::Lex, TermOrder::DegRevLex] {
                    let (mf, cf) = f.leading_term(ord).unwrap();
                    let (mg, cg) = g.leading_term(ord).unwrap();
                    let (mfg, cfg) = (&f * &g).leading_term(ord).unwrap();
                    prop_assert_eq!(mfg, mf.mul(&mg));
                    prop_assert_eq!(cfg, &cf * &cg);
                }
            }

            #[test]
            fn one_is_minimal(f in arb_poly(3, 3)) {
                let one = Monomial::one(3);
                for (m, _) in f.terms() {
                    for ord in [TermOrder::Lex, TermOrder::DegRevLex] {
                        prop_assert!(ord.cmp(&one, m) != Ordering::Greater);
                    }
                }
            }
        }
    }
}
