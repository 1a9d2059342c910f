//! Integer intersection lattices, divisor classes, genus formula and
//! integer linear algebra (Smith normal form, cokernels).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qlinalg;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("class {class} is not a curve class: D.D + D.K = {value} is odd")]
    NonCurveClass { class: String, value: i64 },
    #[error("cannot parse class `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
}

/// Coefficient vector of a divisor class in a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivClass {
    pub coeffs: Vec<i64>,
}

impl DivClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![0; rank])
    }

    /// The k-th basis vector.
    pub fn basis(rank: usize, k: usize) -> Self {
        let mut c = vec![0; rank];
        c[k] = 1;
        Self::new(c)
    }

    /// `aH - sum b_i E_i` in the cubic blow-up basis.
    pub fn cubic(a: i64, b: [i64; 6]) -> Self {
        let mut c = vec![a];
        c.extend(b.iter().map(|v| -v));
        Self::new(c)
    }

    /// `a Sigma + b f` in a Hirzebruch basis.
    pub fn hirzebruch(a: i64, b: i64) -> Self {
        Self::new(vec![a, b])
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::new(self.coeffs.iter().map(|v| v * k).collect())
    }
}

impl Add for &DivClass {
    type Output = DivClass;
    fn add(self, o: &DivClass) -> DivClass {
        DivClass::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivClass {
    type Output = DivClass;
    fn sub(self, o: &DivClass) -> DivClass {
        DivClass::new(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivClass {
    type Output = DivClass;
    fn neg(self) -> DivClass {
        self.scale(-1)
    }
}

impl Mul<&DivClass> for i64 {
    type Output = DivClass;
    fn mul(self, d: &DivClass) -> DivClass {
        d.scale(self)
    }
}

/// Which basis a lattice is written in; used for labels and serialization tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BasisKind {
    #[serde(rename = "H,E1..E6")]
    CubicBlowup,
    #[serde(rename = "Sigma,f")]
    Hirzebruch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntLattice {
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
    pub canonical_class: DivClass,
    pub basis_labels: Vec<String>,
    pub basis_kind: BasisKind,
}

impl IntLattice {
    /// P^2 blown up in six points: basis H, E1..E6, Gram diag(1,-1,...,-1),
    /// K = -3H + sum E_i.
    pub fn cubic_blowup() -> Self {
        let mut gram = vec![vec![0; 7]; 7];
        gram[0][0] = 1;
        for (i, row) in gram.iter_mut().enumerate().skip(1) {
            row[i] = -1;
        }
        let mut labels = vec!["H".to_string()];
        labels.extend((1..=6).map(|i| format!("E{i}")));
        Self {
            rank: 7,
            gram,
            canonical_class: DivClass::new(vec![-3, 1, 1, 1, 1, 1, 1]),
            basis_labels: labels,
            basis_kind: BasisKind::CubicBlowup,
        }
    }

    /// Basis (Sigma, f) with Sigma^2 = -d, Sigma.f = 1, f^2 = 0 and the
    /// given canonical class.
    pub fn hirzebruch_with_canonical(d: i64, canonical: [i64; 2]) -> Self {
        Self {
            rank: 2,
            gram: vec![vec![-d, 1], vec![1, 0]],
            canonical_class: DivClass::new(canonical.to_vec()),
            basis_labels: vec!["Sigma".into(), "f".into()],
            basis_kind: BasisKind::Hirzebruch,
        }
    }

    /// The rational ruled surface F_d, K = -2 Sigma - (d+2) f.
    pub fn hirzebruch(d: i64) -> Self {
        Self::hirzebruch_with_canonical(d, [-2, -(d + 2)])
    }

    /// Numerical model of the ruled surface over an elliptic curve with a
    /// section of self-intersection -d: K = -2 C0 - d f.
    pub fn elliptic_ruled(d: i64) -> Self {
        Self::hirzebruch_with_canonical(d, [-2, -d])
    }

    pub fn anticanonical(&self) -> DivClass {
        -&self.canonical_class
    }

    fn check(&self, d: &DivClass) -> Result<(), LatticeError> {
        if d.len() != self.rank {
            return Err(LatticeError::DimensionMismatch { expected: self.rank, got: d.len() });
        }
        Ok(())
    }

    /// Parse a class written in the basis labels, e.g. `2H-E1-E2-E5` or
    /// `Sigma+2f`. Coefficients are optional integers before a label.
    pub fn parse_class(&self, input: &str) -> Result<DivClass, LatticeError> {
        let err = |reason: &str| LatticeError::Parse { input: input.into(), reason: reason.into() };
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty"));
        }
        let mut labels: Vec<(usize, &str)> =
            self.basis_labels.iter().map(String::as_str).enumerate().collect();
        // longest label first so `E1` never shadows a longer label
        labels.sort_by_key(|(_, l)| std::cmp::Reverse(l.len()));
        let mut out = vec![0i64; self.rank];
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            } else if i > 0 {
                return Err(err("expected + or -"));
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coef: i64 = if i > start {
                s[start..i].parse().map_err(|_| err("bad coefficient"))?
            } else {
                1
            };
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
            }
            let rest = &s[i..];
            let Some((k, l)) = labels.iter().find(|(_, l)| rest.starts_with(l)) else {
                return Err(err("unknown basis label"));
            };
            out[*k] += sign * coef;
            i += l.len();
        }
        Ok(DivClass::new(out))
    }

    /// Human-readable form such as `2H-E1-E2-E5`.
    pub fn format_class(&self, d: &DivClass) -> String {
        let mut s = String::new();
        for (c, l) in d.coeffs.iter().zip(&self.basis_labels) {
            if *c == 0 {
                continue;
            }
            let sign = if *c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                s.push_str(&format!("{sign}{l}"));
            } else {
                s.push_str(&format!("{sign}{mag}{l}"));
            }
        }
        if s.is_empty() {
            "0".into()
        } else {
            s
        }
    }
}

/// Intersection number `a^T G b`.
pub fn pair(lattice: &IntLattice, a: &DivClass, b: &DivClass) -> Result<i64, LatticeError> {
    lattice.check(a)?;
    lattice.check(b)?;
    let mut acc: i128 = 0;
    for (i, row) in lattice.gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            if *g != 0 {
                acc += i128::from(a.coeffs[i]) * i128::from(*g) * i128::from(b.coeffs[j]);
            }
        }
    }
    i64::try_from(acc).map_err(|_| LatticeError::Overflow)
}

/// Arithmetic genus `1 + (D.D + D.K)/2`.
pub fn arithmetic_genus(lattice: &IntLattice, d: &DivClass) -> Result<i64, LatticeError> {
    let num = pair(lattice, d, d)? + pair(lattice, d, &lattice.canonical_class)?;
    if num % 2 != 0 {
        return Err(LatticeError::NonCurveClass { class: lattice.format_class(d), value: num });
    }
    Ok(1 + num / 2)
}

/// Sylvester test on the Gram matrix of `classes`: true iff the span is
/// negative definite (and the classes are independent).
pub fn is_negative_definite(lattice: &IntLattice, classes: &[DivClass]) -> Result<bool, LatticeError> {
    let n = classes.len();
    let mut g = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            g[i][j] = pair(lattice, &classes[i], &classes[j])?;
        }
    }
    for k in 1..=n {
        let minor: Vec<Vec<i64>> = g[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = qlinalg::det_i64(&minor);
        let want_positive = k % 2 == 0;
        if d.is_zero() || d.is_positive() != want_positive {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smith normal form with transformation matrices: `u * m * v = d` where
/// `d` is diagonal with `d_1 | d_2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub reduced: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// `rows` is row-major; every row must have length `cols`.
pub fn smith_normal_form(rows: &[Vec<i64>], cols: usize) -> Snf {
    let m = rows.len();
    let n = cols;
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut u = identity(m);
    let mut v = identity(n);

    let swap_rows = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        a.swap(i, j);
        u.swap(i, j);
    };
    let swap_cols = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for r in a.iter_mut() {
            r.swap(i, j);
        }
        for r in v.iter_mut() {
            r.swap(i, j);
        }
    };
    // row_i -= q * row_j
    let row_op = |a: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, i: usize, j: usize, q: &BigInt| {
        for k in 0..a[i].len() {
            let d = q * &a[j][k];
            a[i][k] -= d;
        }
        for k in 0..u[i].len() {
            let d = q * &u[j][k];
            u[i][k] -= d;
        }
    };
    // col_i -= q * col_j
    let col_op = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, i: usize, j: usize, q: &BigInt| {
        for r in a.iter_mut() {
            let d = q * &r[j];
            r[i] -= d;
        }
        for r in v.iter_mut() {
            let d = q * &r[j];
            r[i] -= d;
        }
    };

    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        // global pivot: minimal nonzero |entry|, first in row-major order
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut a, &mut u, t, pi);
        swap_cols(&mut a, &mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_op(&mut a, &mut u, i, t, &q);
                    if !a[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_op(&mut a, &mut v, j, t, &q);
                    if !a[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                // smaller remainder left in row/column t: move it to the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    swap_rows(&mut a, &mut u, t, best.0);
                }
                if best.1 != t {
                    swap_cols(&mut a, &mut v, t, best.1);
                }
                continue;
            }
            // divisibility: fold an offending row into row t and repeat
            let offending = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_op(&mut a, &mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for k in 0..n {
                a[t][k] = -a[t][k].clone();
            }
            for k in 0..m {
                u[t][k] = -u[t][k].clone();
            }
        }
        diag.push(a[t][t].clone());
    }
    let rank = diag.len();
    Snf { diagonal: diag, rank, u, v, reduced: a }
}

/// Finitely generated abelian group `Z^free_rank + sum Z/torsion_k` with
/// `torsion_k | torsion_{k+1}` and every entry > 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FgAbGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl FgAbGroup {
    pub fn trivial() -> Self {
        Self { free_rank: 0, torsion: vec![] }
    }

    /// Canonical form of `Z^free_rank + sum Z/c_k` for arbitrary cyclic
    /// orders; zero orders count as free summands, ones are dropped.
    pub fn from_cyclic(free_rank: usize, orders: &[u64]) -> Self {
        let mut free = free_rank;
        let mut t: Vec<u64> = Vec::new();
        for &c in orders {
            match c {
                0 => free += 1,
                1 => {}
                _ => t.push(c),
            }
        }
        // pairwise gcd/lcm swaps until the list is a divisibility chain
        let len = t.len();
        for i in 0..len {
            for j in i + 1..len {
                let g = t[i].gcd(&t[j]);
                let l = t[i] / g * t[j];
                t[i] = g;
                t[j] = l;
            }
        }
        t.retain(|&c| c > 1);
        Self { free_rank: free, torsion: t }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().map(|&t| u128::from(t)).product())
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

/// Matrix whose columns are the generators (so `target_rank` rows).
pub fn generator_matrix(generators: &[DivClass], target_rank: usize) -> Result<Vec<Vec<i64>>, LatticeError> {
    for g in generators {
        if g.len() != target_rank {
            return Err(LatticeError::DimensionMismatch { expected: target_rank, got: g.len() });
        }
    }
    Ok((0..target_rank)
        .map(|i| generators.iter().map(|g| g.coeffs[i]).collect())
        .collect())
}

/// Cokernel of `Z^k -> Z^target_rank` sending the k-th basis vector to the
/// k-th generator.
pub fn coker_of(generators: &[DivClass], target_rank: usize) -> Result<FgAbGroup, LatticeError> {
    let m = generator_matrix(generators, target_rank)?;
    let snf = smith_normal_form(&m, generators.len());
    let mut torsion = Vec::new();
    for d in &snf.diagonal {
        if !d.is_one() {
            torsion.push(d.to_u64().ok_or(LatticeError::Overflow)?);
        }
    }
    Ok(FgAbGroup { free_rank: target_rank - snf.rank, torsion })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic() -> IntLattice {
        IntLattice::cubic_blowup()
    }

    fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
        let n = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|r| {
                (0..n)
                    .map(|j| r.iter().zip(b).map(|(x, row)| x * &row[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn pairing_basics() {
        let l = cubic();
        let h = DivClass::basis(7, 0);
        let e1 = DivClass::basis(7, 1);
        let e2 = DivClass::basis(7, 2);
        assert_eq!(pair(&l, &h, &h).unwrap(), 1);
        assert_eq!(pair(&l, &e1, &e2).unwrap(), 0);
        assert_eq!(pair(&l, &e1, &e1).unwrap(), -1);
        let c = l.parse_class("2H-E1-E2-E5").unwrap();
        assert_eq!(pair(&l, &c, &l.anticanonical()).unwrap(), 3);
        assert_eq!(pair(&l, &l.canonical_class, &l.canonical_class).unwrap(), 3);
    }

    #[test]
    fn pairing_rejects_wrong_length() {
        let l = cubic();
        let err = pair(&l, &DivClass::zero(2), &DivClass::zero(7)).unwrap_err();
        assert_eq!(err, LatticeError::DimensionMismatch { expected: 7, got: 2 });
    }

    #[test]
    fn genus_examples() {
        let l = cubic();
        assert_eq!(arithmetic_genus(&l, &l.parse_class("H-E1").unwrap()).unwrap(), 0);
        let ell = IntLattice::elliptic_ruled(3);
        assert_eq!(arithmetic_genus(&ell, &DivClass::hirzebruch(2, 6)).unwrap(), 4);
        let f3 = IntLattice::hirzebruch(3);
        assert_eq!(arithmetic_genus(&f3, &DivClass::hirzebruch(2, 6)).unwrap(), 2);
    }

    #[test]
    fn genus_parity_error() {
        // geometric lattices always give even D.D + D.K; an artificial
        // canonical class is needed to hit the error path
        let l = IntLattice::hirzebruch_with_canonical(0, [-2, -1]);
        assert!(arithmetic_genus(&l, &DivClass::hirzebruch(0, 1)).is_ok());
        let bad = DivClass::hirzebruch(1, 0);
        assert!(matches!(arithmetic_genus(&l, &bad), Err(LatticeError::NonCurveClass { .. })));
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let l = cubic();
        for s in ["H", "2H-E1-E2-E5", "6H-2E1-2E2-2E3-2E4-4E5", "E1-E2", "-E3"] {
            let c = l.parse_class(s).unwrap();
            assert_eq!(l.format_class(&c), s);
        }
        let f = IntLattice::hirzebruch(1);
        assert_eq!(f.parse_class("Sigma+2f").unwrap(), DivClass::hirzebruch(1, 2));
        assert!(l.parse_class("H+X1").is_err());
        assert!(l.parse_class("").is_err());
    }

    #[test]
    fn snf_small_examples() {
        let s = smith_normal_form(&[vec![3]], 1);
        assert_eq!(s.diagonal, vec![BigInt::from(3)]);
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let s = smith_normal_form(&id, 3);
        assert_eq!(s.diagonal, vec![BigInt::one(); 3]);
        let s = smith_normal_form(&[], 0);
        assert_eq!(s.rank, 0);
        let s = smith_normal_form(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
        let d: Vec<i64> = s.diagonal.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn snf_transforms_are_consistent() {
        let m = vec![vec![2, 4, 4, 1], vec![-6, 6, 12, 0], vec![10, -4, -16, 3]];
        let s = smith_normal_form(&m, 4);
        let big: Vec<Vec<BigInt>> =
            m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let prod = matmul(&matmul(&s.u, &big), &s.v);
        assert_eq!(prod, s.reduced);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if i != j {
                    assert!(x.is_zero());
                }
            }
        }
    }

    #[test]
    fn cuspidal_g1_theta_matrix() {
        let l = cubic();
        let gens: Vec<DivClass> = ["H", "H-E1-E2-E3", "E1-E2", "E2-E3", "E3-E4", "E4-E5", "E5-E6"]
            .iter()
            .map(|s| l.parse_class(s).unwrap())
            .collect();
        let m = generator_matrix(&gens, 7).unwrap();
        let s = smith_normal_form(&m, 7);
        let d: Vec<i64> = s.diagonal.iter().map(|x| x.to_i64().unwrap()).collect();
        assert_eq!(d, vec![1, 1, 1, 1, 1, 1, 3]);
        let g = coker_of(&gens, 7).unwrap();
        assert_eq!(g, FgAbGroup { free_rank: 0, torsion: vec![3] });
        assert_eq!(g.to_string(), "Z/3");
    }

    #[test]
    fn coker_examples() {
        let l = cubic();
        let parse = |v: &[&str]| -> Vec<DivClass> { v.iter().map(|s| l.parse_class(s).unwrap()).collect() };
        let g = coker_of(
            &parse(&["E4", "H-E1", "H-E1-E2-E3", "E1-E2", "E2-E3", "E3-E4", "H-E1-E5-E6"]),
            7,
        )
        .unwrap();
        assert_eq!(g, FgAbGroup { free_rank: 1, torsion: vec![] });
        let g = coker_of(
            &parse(&["H-E1-E6", "H-E1", "H-E1-E2-E3", "E1-E2", "E2-E3", "E3-E4", "E4-E5"]),
            7,
        )
        .unwrap();
        assert_eq!(g, FgAbGroup { free_rank: 0, torsion: vec![2] });
    }

    #[test]
    fn fg_group_canonical_form() {
        assert_eq!(FgAbGroup::from_cyclic(0, &[6, 4]).torsion, vec![2, 12]);
        assert_eq!(FgAbGroup::from_cyclic(0, &[1, 3, 0]), FgAbGroup { free_rank: 1, torsion: vec![3] });
        assert_eq!(FgAbGroup::from_cyclic(2, &[2, 2]).to_string(), "Z^2 ⊕ Z/2 ⊕ Z/2");
        assert_eq!(FgAbGroup::trivial().to_string(), "0");
        assert_eq!(FgAbGroup::from_cyclic(0, &[4, 6]).order(), Some(24));
    }

    #[test]
    fn negative_definite_chains() {
        let l = cubic();
        let e6: Vec<DivClass> = ["E1-E2", "E2-E3", "E3-E4", "E4-E5", "E5-E6", "H-E1-E2-E3"]
            .iter()
            .map(|s| l.parse_class(s).unwrap())
            .collect();
        assert!(is_negative_definite(&l, &e6).unwrap());
        let with_h = vec![l.parse_class("H").unwrap()];
        assert!(!is_negative_definite(&l, &with_h).unwrap());
        // dependent classes are rejected
        let dup = vec![e6[0].clone(), e6[0].clone()];
        assert!(!is_negative_definite(&l, &dup).unwrap());
    }
}
