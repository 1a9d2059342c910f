//! Strategies and property checks shared by the property suites and the
//! acceptance report.

#![allow(dead_code)]

use clv_core::lattice::smith_normal_form;
use clv_core::{pair, DivClass, IntLattice, LineP3, MultiPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub fn class() -> impl Strategy<Value = DivClass> {
    prop::collection::vec(-20i64..=20, 7).prop_map(DivClass::new)
}

pub fn cubic_monomials() -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..=3u32 {
        for b in 0..=3 - a {
            for c in 0..=3 - a - b {
                out.push([a, b, c, 3 - a - b - c]);
            }
        }
    }
    out
}

pub fn poly_from(coeffs: &[i64], monos: &[[u32; 4]]) -> MultiPoly {
    let mut p = MultiPoly::zero();
    for (c, m) in coeffs.iter().zip(monos) {
        p = &p + &MultiPoly::monomial(*m, BigRational::from_integer(BigInt::from(*c)));
    }
    p
}

pub fn cubic() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(-5i64..=5, 20).prop_map(|c| poly_from(&c, &cubic_monomials()))
}

pub fn linear() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(-3i64..=3, 4).prop_map(|c| {
        let c: Vec<BigRational> = c.into_iter().map(|v| BigRational::from_integer(v.into())).collect();
        MultiPoly::linear(&c)
    })
}

pub fn line() -> impl Strategy<Value = LineP3> {
    (linear(), linear()).prop_filter_map("independent forms", |(a, b)| LineP3::new(a, b).ok())
}

pub fn small_matrix() -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
        (prop::collection::vec(prop::collection::vec(-4i64..=4, c), r), Just(c))
    })
}

/// Size of the subgroup of (Z/m)^r generated by the columns, by closure.
pub fn span_mod(rows: &[Vec<i64>], cols: usize, m: i64) -> usize {
    let r = rows.len();
    let gens: Vec<Vec<i64>> = (0..cols)
        .map(|j| (0..r).map(|i| rows[i][j].rem_euclid(m)).collect())
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut stack = vec![vec![0i64; r]];
    seen.insert(vec![0i64; r]);
    while let Some(v) = stack.pop() {
        for g in &gens {
            let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| (a + b) % m).collect();
            if seen.insert(w.clone()) {
                stack.push(w);
            }
        }
    }
    seen.len()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}


pub fn check_pairing(a: &DivClass, b: &DivClass, c: &DivClass, k: i64) -> Result<(), TestCaseError> {
    let lat = IntLattice::cubic_blowup();
    let p = |x: &DivClass, y: &DivClass| pair(&lat, x, y).unwrap();
    prop_assert_eq!(p(a, b), p(b, a));
    prop_assert_eq!(p(&(a + b), c), p(a, c) + p(b, c));
    prop_assert_eq!(p(&a.scale(k), c), k * p(a, c));
    Ok(())
}

/// Invariant factors against direct counting of `|coker ⊗ Z/m|`.
pub fn check_snf(rows: &[Vec<i64>], cols: usize) -> Result<(), TestCaseError> {
    let snf = smith_normal_form(rows, cols);
    let r = rows.len();
    let free = r - snf.rank;
    let diag: Vec<u64> = snf.diagonal.iter().map(|d| u64::try_from(d.clone()).unwrap()).collect();
    for m in 2..=12u64 {
        let from_snf = m.pow(free as u32) * diag.iter().map(|&d| gcd(d, m)).product::<u64>();
        let counted = m.pow(r as u32) / span_mod(rows, cols, m as i64) as u64;
        prop_assert_eq!(from_snf, counted, "modulus {}", m);
    }
    for w in diag.windows(2) {
        prop_assert_eq!(w[1] % w[0], 0);
    }
    Ok(())
}

pub fn check_ring(p: &MultiPoly, q: &MultiPoly, r: &MultiPoly) -> Result<(), TestCaseError> {
    prop_assert_eq!(&(p + q) + r, p + &(q + r));
    prop_assert_eq!(p + q, q + p);
    prop_assert_eq!(p * q, q * p);
    prop_assert_eq!(p * &(q + r), &(p * q) + &(p * r));
    prop_assert_eq!(&(p * q) * r, p * &(q * r));
    prop_assert_eq!(p * &MultiPoly::from_int(1), p.clone());
    prop_assert!((p - p).is_zero());
    let mut euler = MultiPoly::zero();
    for k in 0..4 {
        euler = &euler + &(&MultiPoly::var(k) * &p.partial(k));
    }
    prop_assert_eq!(euler, p.scale(&BigRational::from_integer(3.into())));
    if !p.is_zero() {
        prop_assert_eq!(p.homogeneous_degree(), Some(3));
    }
    Ok(())
}
