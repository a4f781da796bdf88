use alloc::vec::Vec;

use proptest::prelude::*;

use crate::expr::{parse_free_poly, parse_poly};
use crate::freealg::{FreePoly, FreeRing};
use crate::polyring::{Monomial, Poly, PolyMatrix, Ring};
use crate::scalar::FieldSpec;

pub fn qring(n: usize) -> Ring {
    Ring::new(FieldSpec::rationals(), n)
}

pub fn fpring(p: u64, n: usize) -> Ring {
    Ring::new(FieldSpec::prime(p).unwrap(), n)
}

pub fn qfree(n: usize) -> FreeRing {
    FreeRing::new(FieldSpec::rationals(), n)
}

pub fn poly(r: Ring, s: &str) -> Poly {
    parse_poly(r, &r.default_names(), s).unwrap()
}

pub fn free_poly(r: FreeRing, s: &str) -> FreePoly {
    parse_free_poly(r, &r.commutative().default_names(), s).unwrap()
}

/// Matrix from rows of expression strings.
pub fn pmat(r: Ring, rows: &[&[&str]]) -> PolyMatrix {
    let rows: Vec<Vec<Poly>> = rows.iter().map(|row| row.iter().map(|s| poly(r, s)).collect()).collect();
    if rows.is_empty() {
        return PolyMatrix::zero(r, 0, 0);
    }
    PolyMatrix::from_rows(r, rows).unwrap()
}

/// Random rational polynomial in `n` variables with total degree `<= deg`.
pub fn arb_poly(n: usize, deg: u32) -> impl Strategy<Value = Poly> {
    let r = qring(n);
    prop::collection::vec((prop::collection::vec(0..=deg, n), -5i64..=5), 0..6).prop_map(move |terms| {
        Poly::from_terms(
            r,
            terms.into_iter().map(|(e, c)| {
                let mut left = deg;
                let e = e.into_iter().map(|x| { let x = x.min(left); left -= x; x }).collect();
                (Monomial::new(e), r.field.from_i64(c))
            }),
        )
    })
}
