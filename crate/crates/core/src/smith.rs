//! Smith normal form over `k[z]` and generic rank over `k(z1..zn)`.

use alloc::vec::Vec;

use thiserror::Error;

use crate::polyring::{Degree, Poly, PolyMatrix, Ring, TermOrder};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SmithError {
    #[error("Smith normal form needs a univariate ring, got {0} variables")]
    NotUnivariate(usize),
}

/// `U * G * V = D` with `D` diagonal, `factors` monic and each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: PolyMatrix,
    pub v: PolyMatrix,
    pub d: PolyMatrix,
    pub factors: Vec<Poly>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

fn deg(p: &Poly) -> u32 {
    match p.degree() {
        Degree::Finite(d) => d,
        Degree::NegInfinity => panic!("degree of zero polynomial"),
    }
}

/// Euclidean division in `k[z]`. Panics if `g` is zero.
pub fn div_rem(f: &Poly, g: &Poly) -> (Poly, Poly) {
    let (mg, cg) = g.leading_term(TermOrder::Lex).expect("division by zero polynomial");
    let cg_inv = cg.inv().expect("nonzero lead");
    let mut q = Poly::zero(f.ring());
    let mut r = f.clone();
    while !r.is_zero() && deg(&r) >= mg.degree() {
        let (mr, cr) = r.leading_term(TermOrder::Lex).unwrap();
        let t = Poly::monomial(f.ring(), mg.quotient_of(&mr), &cr * &cg_inv);
        r = &r - &(&t * g);
        q = &q + &t;
    }
    (q, r)
}

struct Work {
    d: PolyMatrix,
    u: PolyMatrix,
    v: PolyMatrix,
}

impl Work {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.cols() {
                let x = m.get(a, j).clone();
                let y = m.get(b, j).clone();
                m.set(a, j, y);
                m.set(b, j, x);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for m in [&mut self.d, &mut self.v] {
            for i in 0..m.rows() {
                let x = m.get(i, a).clone();
                let y = m.get(i, b).clone();
                m.set(i, a, y);
                m.set(i, b, x);
            }
        }
    }

    /// row `dst` += q * row `src`
    fn add_row(&mut self, dst: usize, src: usize, q: &Poly) {
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.cols() {
                let x = m.get(dst, j) + &(q * m.get(src, j));
                m.set(dst, j, x);
            }
        }
    }

    /// col `dst` += q * col `src`
    fn add_col(&mut self, dst: usize, src: usize, q: &Poly) {
        for m in [&mut self.d, &mut self.v] {
            for i in 0..m.rows() {
                let x = m.get(i, dst) + &(q * m.get(i, src));
                m.set(i, dst, x);
            }
        }
    }

    fn scale_row(&mut self, i: usize, p: &Poly) {
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.cols() {
                let x = m.get(i, j) * p;
                m.set(i, j, x);
            }
        }
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u32, usize, usize)> = None;
        for i in t..self.d.rows() {
            for j in t..self.d.cols() {
                let e = self.d.get(i, j);
                if !e.is_zero() && best.is_none_or(|(b, _, _)| deg(e) < b) {
                    best = Some((deg(e), i, j));
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Clears row and column `t` outside the pivot. Returns false if some
    /// remainder was left behind, meaning a smaller pivot is now available.
    fn clear(&mut self, t: usize) -> bool {
        let mut clean = true;
        let p = self.d.get(t, t).clone();
        for i in t + 1..self.d.rows() {
            if !self.d.get(i, t).is_zero() {
                let (q, r) = div_rem(self.d.get(i, t), &p);
                self.add_row(i, t, &-&q);
                clean &= r.is_zero();
            }
        }
        for j in t + 1..self.d.cols() {
            if !self.d.get(t, j).is_zero() {
                let (q, r) = div_rem(self.d.get(t, j), &p);
                self.add_col(j, t, &-&q);
                clean &= r.is_zero();
            }
        }
        clean
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = self.d.get(t, t);
        (t + 1..self.d.rows()).find(|&i| {
            (t + 1..self.d.cols()).any(|j| !div_rem(self.d.get(i, j), p).1.is_zero())
        })
    }
}

pub fn smith_normal_form(g: &PolyMatrix) -> Result<SmithForm, SmithError> {
    let ring = g.ring();
    if ring.nvars != 1 {
        return Err(SmithError::NotUnivariate(ring.nvars));
    }
    let mut w = Work {
        d: g.clone(),
        u: PolyMatrix::identity(ring, g.rows()),
        v: PolyMatrix::identity(ring, g.cols()),
    };
    let mut factors = Vec::new();
    for t in 0..g.rows().min(g.cols()) {
        loop {
            let Some((i, j)) = w.min_entry(t) else {
                return Ok(finish(w, factors));
            };
            w.swap_rows(t, i);
            w.swap_cols(t, j);
            if !w.clear(t) {
                continue;
            }
            if let Some(i) = w.non_divisible_row(t) {
                w.add_row(t, i, &ring.one());
                continue;
            }
            let (_, c) = w.d.get(t, t).leading_term(TermOrder::Lex).unwrap();
            w.scale_row(t, &Poly::constant(ring, c.inv().unwrap()));
            factors.push(w.d.get(t, t).clone());
            break;
        }
    }
    Ok(finish(w, factors))
}

fn finish(w: Work, factors: Vec<Poly>) -> SmithForm {
    SmithForm { u: w.u, v: w.v, d: w.d, factors }
}

/// Rank over the fraction field, by division-free elimination.
pub fn generic_rank(g: &PolyMatrix) -> usize {
    let mut rows: Vec<Vec<Poly>> = (0..g.rows()).map(|i| (0..g.cols()).map(|j| g.get(i, j).clone()).collect()).collect();
    let mut rank = 0;
    for col in 0..g.cols() {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let a = row[col].clone();
            if a.is_zero() {
                continue;
            }
            for j in col..row.len() {
                row[j] = &(&pivot[col] * &row[j]) - &(&a * &pivot[j]);
            }
        }
        rank += 1;
    }
    rank
}

/// Laplace expansion along the first row; meant for small matrices.
pub fn determinant(m: &PolyMatrix) -> Poly {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let idx: Vec<usize> = (0..m.cols()).collect();
    det_rec(m, 0, &idx)
}

fn det_rec(m: &PolyMatrix, row: usize, cols: &[usize]) -> Poly {
    let ring: Ring = m.ring();
    if cols.is_empty() {
        return ring.one();
    }
    let mut acc = ring.zero();
    for (k, &c) in cols.iter().enumerate() {
        let e = m.get(row, c);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e * &det_rec(m, row + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{fpring, pmat, poly, qring};
    use proptest::prelude::*;

    fn check_invariants(g: &PolyMatrix, s: &SmithForm) {
        assert_eq!(s.u.mul(g).unwrap().mul(&s.v).unwrap(), s.d);
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                let e = s.d.get(i, j);
                if i == j && i < s.factors.len() {
                    assert_eq!(e, &s.factors[i]);
                } else {
                    assert!(e.is_zero());
                }
            }
        }
        for f in &s.factors {
            assert!(f.leading_term(TermOrder::Lex).unwrap().1.is_one());
        }
        for w in s.factors.windows(2) {
            assert!(div_rem(&w[1], &w[0]).1.is_zero());
        }
        assert!(determinant(&s.u).as_constant().is_some_and(|c| !c.is_zero()));
        assert!(determinant(&s.v).as_constant().is_some_and(|c| !c.is_zero()));
    }

    /// `adj(M) / det(M)` for a matrix with constant nonzero determinant.
    fn unimodular_inverse(m: &PolyMatrix) -> PolyMatrix {
        let n = m.rows();
        let ring = m.ring();
        let inv_det = determinant(m).as_constant().unwrap().inv().unwrap();
        let mut out = PolyMatrix::zero(ring, n, n);
        for i in 0..n {
            for j in 0..n {
                let keep_r: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let keep_c: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let rows = keep_r.iter().map(|&r| keep_c.iter().map(|&c| m.get(r, c).clone()).collect()).collect();
                let minor = determinant(&PolyMatrix::from_rows(ring, rows).unwrap());
                let signed = if (i + j) % 2 == 0 { minor } else { -&minor };
                out.set(i, j, signed.scale(&inv_det));
            }
        }
        out
    }

    #[test]
    fn diagonal_example() {
        let r = qring(1);
        let g = pmat(r, &[&["z", "0"], &["0", "z - 1"]]);
        let s = smith_normal_form(&g).unwrap();
        check_invariants(&g, &s);
        assert_eq!(s.factors, [poly(r, "1"), poly(r, "z^2 - z")]);
        assert_eq!(generic_rank(&g), 2);
    }

    #[test]
    fn small_cases() {
        let r = qring(1);
        let g = pmat(r, &[&["z - 1"]]);
        assert_eq!(smith_normal_form(&g).unwrap().factors, [poly(r, "z - 1")]);
        let g = pmat(r, &[&["2*z - 2"]]);
        assert_eq!(smith_normal_form(&g).unwrap().factors, [poly(r, "z - 1")]);
        let z = PolyMatrix::zero(r, 2, 3);
        let s = smith_normal_form(&z).unwrap();
        assert!(s.factors.is_empty() && s.d.is_zero());
        assert_eq!(generic_rank(&z), 0);
    }

    #[test]
    fn multivariate_rejected() {
        let r = qring(2);
        let g = pmat(r, &[&["z1", "z2"]]);
        assert_eq!(smith_normal_form(&g), Err(SmithError::NotUnivariate(2)));
        assert_eq!(generic_rank(&g), 1);
        let g = pmat(r, &[&["z1", "z2"], &["z1^2", "z1*z2"]]);
        assert_eq!(generic_rank(&g), 1);
    }

    #[test]
    fn non_square() {
        let r = fpring(5, 1);
        let g = pmat(r, &[&["z^2", "z + 1", "z^3"], &["z", "1", "z^2 + 1"]]);
        let s = smith_normal_form(&g).unwrap();
        check_invariants(&g, &s);
        assert_eq!(s.rank(), generic_rank(&g));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = PolyMatrix> {
        let r = fpring(7, 1);
        prop::collection::vec(prop::collection::vec(0u64..7, 4), n * n).prop_map(move |entries| {
            let rows = entries
                .chunks(n)
                .map(|row| {
                    row.iter()
                        .map(|cs| {
                            let mut p = r.zero();
                            for (e, c) in cs.iter().enumerate() {
                                p = &p + &Poly::constant(r, r.field.from_u64(*c)).mul_term(
                                    &crate::polyring::Monomial::new(alloc::vec![e as u32]),
                                    &r.field.one(),
                                );
                            }
                            p
                        })
                        .collect()
                })
                .collect();
            PolyMatrix::from_rows(r, rows).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn reconstruction_and_determinant(g in prop_oneof![arb_matrix(2), arb_matrix(3)]) {
            let s = smith_normal_form(&g).unwrap();
            check_invariants(&g, &s);
            let back = unimodular_inverse(&s.u).mul(&s.d).unwrap().mul(&unimodular_inverse(&s.v)).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(s.rank(), generic_rank(&g));
            let det = determinant(&g);
            if det.is_zero() {
                prop_assert!(s.rank() < g.rows());
            } else {
                let total: u32 = s.factors.iter().map(deg).sum();
                prop_assert_eq!(total, deg(&det));
                let prod = s.factors.iter().fold(g.ring().one(), |a, f| &a * f);
                let (_, c) = det.leading_term(TermOrder::Lex).unwrap();
                prop_assert_eq!(prod.scale(&c), det);
            }
        }
    }
}
