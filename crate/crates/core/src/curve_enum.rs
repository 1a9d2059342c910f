//! Bounded exhaustive enumeration of divisor classes under degree, genus
//! and positivity constraints.
//!
//! On the cubic blow-up lattice a class is `D = aH - sum b_i E_i`. Its
//! degree is `n = D.(-K) = 3a - sum b_i` and `D^2 = 2g - 2 + n`, so
//! `sum b_i = 3a - n` and `sum b_i^2 = a^2 - (2g - 2 + n)`. Cauchy-Schwarz on
//! these two sums bounds `a`, and the same inequality prunes the search for
//! the `b` vector coordinate by coordinate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::lattice::{arithmetic_genus, pair, BasisKind, DivClass, IntLattice, LatticeError};
use crate::qlinalg::{self, q, QMatrix};
use crate::surface_models::{Catalog, CatalogError, SurfaceModel};

#[derive(Debug, Error)]
pub enum EnumError {
    #[error("degree must be at least 1, got {0}")]
    BadDegree(i64),
    #[error("genus must be nonnegative, got {0}")]
    BadGenus(i64),
    #[error("surface `{0}` has no cubic lattice model with exceptional chains")]
    Unsupported(String),
    #[error("unknown Hirzebruch model `{0}`")]
    UnknownModel(String),
    #[error("cuspidal enumeration expected exactly one class, found {0}")]
    Structural(usize),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Range of `a` allowed by `3(a - n)^2 <= 2(n^2 - 3n + 6 - 6g)`, or `None`
/// when the right side is negative.
pub fn cauchy_schwarz_bounds(n: i64, genus: i64) -> Option<(i64, i64)> {
    let rhs = 2 * (n * n - 3 * n + 6 - 6 * genus);
    if rhs < 0 {
        return None;
    }
    let k = isqrt(rhs / 3);
    Some((n - k, n + k))
}

/// Genus-0 bounds on `a` for a class of degree `n`.
pub fn bounds_from_cauchy_schwarz(n: i64) -> (i64, i64) {
    cauchy_schwarz_bounds(n, 0).expect("n^2 - 3n + 6 > 0 for all n")
}

/// All nonincreasing `b` in Z^k with `sum b = s` and `sum b^2 = r`.
fn sorted_points(k: usize, s: i64, r: i64, cap: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if k == 0 {
        if s == 0 && r == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if r < 0 || (k as i64) * r < s * s {
        return;
    }
    if k == 1 {
        if s <= cap && s * s == r {
            prefix.push(s);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    // the first coordinate is the largest, hence at least the average
    let lo = s.div_euclid(k as i64) + i64::from(s.rem_euclid(k as i64) != 0);
    let hi = cap.min(isqrt(r));
    for b in lo..=hi {
        prefix.push(b);
        sorted_points(k - 1, s - b, r - b * b, b, prefix, out);
        prefix.pop();
    }
}

fn next_permutation(v: &mut [i64]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every ordering of a multiset, each once.
fn distinct_permutations(sorted_desc: &[i64]) -> Vec<Vec<i64>> {
    let mut v: Vec<i64> = sorted_desc.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    while next_permutation(&mut v) {
        out.push(v.clone());
    }
    out
}

/// A solution `(n, a; b_1..b_6)` with `b` sorted in descending order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Tuple {
    pub n: i64,
    pub a: i64,
    pub b: [i64; 6],
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < 6 {
            let mut j = i;
            while j < 6 && self.b[j] == self.b[i] {
                j += 1;
            }
            if j - i == 1 {
                parts.push(self.b[i].to_string());
            } else {
                parts.push(format!("{}^{}", self.b[i], j - i));
            }
            i = j;
        }
        write!(f, "({}, {}; {})", self.n, self.a, parts.join(", "))
    }
}

/// Raw solutions of the degree and genus equations inside the
/// Cauchy-Schwarz window, one representative per S6-orbit.
pub fn enumerate_tuples(n: i64, genus: i64) -> Result<Vec<Tuple>, EnumError> {
    if n < 1 {
        return Err(EnumError::BadDegree(n));
    }
    if genus < 0 {
        return Err(EnumError::BadGenus(genus));
    }
    let mut out = Vec::new();
    let Some((lo, hi)) = cauchy_schwarz_bounds(n, genus) else {
        return Ok(out);
    };
    for a in lo..=hi {
        let s = 3 * a - n;
        let r = a * a - (2 * genus - 2 + n);
        let mut pts = Vec::new();
        sorted_points(6, s, r, i64::MAX, &mut Vec::new(), &mut pts);
        for b in pts {
            out.push(Tuple { n, a, b: b.try_into().expect("six coordinates") });
        }
    }
    out.sort();
    Ok(out)
}

/// The cuspidal-cubic variant: the strict transform of a cuspidal plane
/// cubic through the singular point is a smooth rational curve of
/// degree 3, so the same equations apply with `n = 3`.
pub fn enumerate_tuples_cuspidal() -> Vec<Tuple> {
    enumerate_tuples(3, 0).expect("valid input")
}

// ---- constraint sets ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainBudget {
    pub label: String,
    pub chain: Vec<DivClass>,
    /// Upper bound on each `D.c` for `c` in the chain.
    pub member_max: Option<i64>,
    /// Upper bound on `sum_c D.c` over the chain.
    pub total_max: Option<i64>,
}

/// Forces `a = n - m` where `m = sum_c D.c` over the chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionRule {
    pub chain: Vec<DivClass>,
}

/// `sum coeffs_i * D_i = value` on the raw coefficient vector of `D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearConstraint {
    pub coeffs: Vec<i64>,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveConstraintSet {
    #[serde(skip)]
    pub lattice: IntLattice,
    pub anticanonical_degree: i64,
    pub genus: i64,
    /// `D.c >= 0` unless `D == c`.
    pub nonneg_against: Vec<DivClass>,
    pub chain_budget: Vec<ChainBudget>,
    pub projection_rule: Option<ProjectionRule>,
    pub extra_linear: Vec<LinearConstraint>,
}

/// Why a numerically feasible class was discarded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    Degree { expected: i64, got: i64 },
    Genus { expected: i64, got: i64 },
    Negative { against: String, value: i64 },
    MemberCap { chain: String, against: String, value: i64 },
    ChainTotal { chain: String, total: i64 },
    Projection { expected_a: i64, a: i64 },
    Linear { index: usize },
}

impl Violation {
    pub fn label(&self) -> String {
        match self {
            Violation::Degree { .. } => "degree".into(),
            Violation::Genus { .. } => "genus".into(),
            Violation::Negative { against, .. } => format!("nonneg[{against}]"),
            Violation::MemberCap { chain, .. } => format!("member-cap[{chain}]"),
            Violation::ChainTotal { chain, .. } => format!("chain-total[{chain}]"),
            Violation::Projection { .. } => "projection".into(),
            Violation::Linear { index } => format!("linear[{index}]"),
        }
    }
}

impl CurveConstraintSet {
    /// Bare degree and genus equations on the cubic blow-up lattice.
    pub fn equations_only(n: i64, genus: i64) -> Self {
        Self {
            lattice: IntLattice::cubic_blowup(),
            anticanonical_degree: n,
            genus,
            nonneg_against: vec![],
            chain_budget: vec![],
            projection_rule: None,
            extra_linear: vec![],
        }
    }

    /// The smooth-curve profile on a catalog surface: nonnegativity against
    /// every (-2)- and (-1)-class, at most one unit of contact with each
    /// exceptional chain, and the projection rule on the designated chain
    /// when the catalog enables it.
    pub fn smooth_curve(surface: &SurfaceModel, n: i64) -> Result<Self, EnumError> {
        if surface.lattice.basis_kind != BasisKind::CubicBlowup || !surface.has_lattice_chains() {
            return Err(EnumError::Unsupported(surface.id.clone()));
        }
        let lat = &surface.lattice;
        let mut nonneg = surface.neg2_classes();
        nonneg.extend(surface.neg1_classes.iter().cloned());
        let chain_budget = surface
            .neg2_chains
            .iter()
            .map(|ch| ChainBudget {
                label: ch.iter().map(|c| lat.format_class(c)).collect::<Vec<_>>().join(","),
                chain: ch.clone(),
                member_max: Some(1),
                total_max: Some(1),
            })
            .collect();
        let projection_rule = match (surface.projection_rule, surface.designated_chain) {
            (true, Some(i)) => Some(ProjectionRule { chain: surface.neg2_chains[i].clone() }),
            _ => None,
        };
        Ok(Self {
            lattice: lat.clone(),
            anticanonical_degree: n,
            genus: 0,
            nonneg_against: nonneg,
            chain_budget,
            projection_rule,
            extra_linear: vec![],
        })
    }

    /// All violated constraints for `d`, re-derived through the lattice
    /// pairing rather than the search variables.
    pub fn violations(&self, d: &DivClass) -> Result<Vec<Violation>, EnumError> {
        self.check(d, false)
    }

    pub fn first_violation(&self, d: &DivClass) -> Result<Option<Violation>, EnumError> {
        Ok(self.check(d, true)?.into_iter().next())
    }

    fn check(&self, d: &DivClass, first_only: bool) -> Result<Vec<Violation>, EnumError> {
        let lat = &self.lattice;
        let mut v = Vec::new();
        macro_rules! flag {
            ($e:expr) => {{
                v.push($e);
                if first_only {
                    return Ok(v);
                }
            }};
        }
        let n = pair(lat, d, &lat.anticanonical())?;
        if n != self.anticanonical_degree {
            flag!(Violation::Degree { expected: self.anticanonical_degree, got: n });
        }
        let g = arithmetic_genus(lat, d)?;
        if g != self.genus {
            flag!(Violation::Genus { expected: self.genus, got: g });
        }
        for c in &self.nonneg_against {
            let p = pair(lat, d, c)?;
            if p < 0 && d != c {
                flag!(Violation::Negative { against: lat.format_class(c), value: p });
            }
        }
        for b in &self.chain_budget {
            let mut total = 0;
            for c in &b.chain {
                let p = pair(lat, d, c)?;
                total += p;
                if b.member_max.is_some_and(|m| p > m) {
                    flag!(Violation::MemberCap { chain: b.label.clone(), against: lat.format_class(c), value: p });
                }
            }
            if b.total_max.is_some_and(|m| total > m) {
                flag!(Violation::ChainTotal { chain: b.label.clone(), total });
            }
        }
        if let Some(rule) = &self.projection_rule {
            let mut m = 0;
            for c in &rule.chain {
                m += pair(lat, d, c)?;
            }
            let expected_a = self.anticanonical_degree - m;
            if d.coeffs[0] != expected_a {
                flag!(Violation::Projection { expected_a, a: d.coeffs[0] });
            }
        }
        for (i, l) in self.extra_linear.iter().enumerate() {
            let s: i64 = l.coeffs.iter().zip(&d.coeffs).map(|(x, y)| x * y).sum();
            if s != l.value {
                flag!(Violation::Linear { index: i });
            }
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchBound {
    pub n: i64,
    pub a_min: i64,
    pub a_max: i64,
    /// Every candidate satisfies `|b_i| <= b_max`.
    pub b_max: i64,
    pub candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionSet {
    pub surface: String,
    pub degrees: Vec<i64>,
    pub classes: Vec<DivClass>,
    pub labels: Vec<String>,
    pub search_bounds: Vec<SearchBound>,
    /// Rejected candidates counted by their first violated constraint.
    pub rejections: BTreeMap<String, usize>,
    /// Derived bound past which no degree admits a class, when one exists.
    pub degree_bound: Option<i64>,
    pub flags: Vec<String>,
}

/// Every class satisfying the degree and genus equations for `n`.
pub fn candidates(n: i64, genus: i64) -> Result<(Vec<DivClass>, SearchBound), EnumError> {
    let tuples = enumerate_tuples(n, genus)?;
    let (a_min, a_max) = cauchy_schwarz_bounds(n, genus).unwrap_or((n, n - 1));
    let b_max = (a_min..=a_max).map(|a| isqrt(a * a - (2 * genus - 2 + n))).max().unwrap_or(0).max(0);
    let mut out = Vec::new();
    for t in tuples {
        for b in distinct_permutations(&t.b) {
            out.push(DivClass::cubic(t.a, b.try_into().expect("six coordinates")));
        }
    }
    out.sort();
    let sb = SearchBound { n, a_min, a_max, b_max, candidates: out.len() };
    Ok((out, sb))
}

/// Classes satisfying a constraint set, with the rejected candidates
/// labelled by their first violation.
pub fn solve(cs: &CurveConstraintSet) -> Result<(Vec<DivClass>, SearchBound, BTreeMap<String, usize>), EnumError> {
    let (cands, sb) = candidates(cs.anticanonical_degree, cs.genus)?;
    let mut keep = Vec::new();
    let mut rejections = BTreeMap::new();
    for d in cands {
        match cs.first_violation(&d)? {
            None => keep.push(d),
            Some(first) => *rejections.entry(first.label()).or_insert(0) += 1,
        }
    }
    Ok((keep, sb, rejections))
}

fn solution_for_degrees(cat: &Catalog, surface_id: &str, degrees: &[i64]) -> Result<SolutionSet, EnumError> {
    let s = cat.get(surface_id)?;
    let mut set = BTreeSet::new();
    let mut bounds = Vec::new();
    let mut rejections = BTreeMap::new();
    for &n in degrees {
        if n < 1 {
            return Err(EnumError::BadDegree(n));
        }
        let cs = CurveConstraintSet::smooth_curve(s, n)?;
        let (found, sb, rej) = solve(&cs)?;
        set.extend(found);
        bounds.push(sb);
        for (k, v) in rej {
            *rejections.entry(k).or_insert(0) += v;
        }
    }
    let classes: Vec<DivClass> = set.into_iter().collect();
    let labels = classes.iter().map(|c| s.lattice.format_class(c)).collect();
    Ok(SolutionSet {
        surface: surface_id.into(),
        degrees: degrees.to_vec(),
        classes,
        labels,
        search_bounds: bounds,
        rejections,
        degree_bound: degree_bound(s)?,
        flags: vec![],
    })
}

/// Smooth rational curve classes of degree `n` on a catalog surface.
pub fn enumerate_curve_classes(cat: &Catalog, surface_id: &str, n: i64) -> Result<SolutionSet, EnumError> {
    let mut out = solution_for_degrees(cat, surface_id, &[n])?;
    if out.degree_bound.is_none() && n > 2 {
        out.flags.push(format!("beyond paper: degree {n} is not covered by a derived degree bound"));
    }
    Ok(out)
}

/// Union over all degrees up to the derived bound; `None` when no bound
/// can be derived for the surface.
pub fn enumerate_all_degrees(cat: &Catalog, surface_id: &str) -> Result<Option<SolutionSet>, EnumError> {
    let s = cat.get(surface_id)?;
    let Some(bound) = degree_bound(s)? else {
        return Ok(None);
    };
    let degrees: Vec<i64> = (1..=bound).collect();
    solution_for_degrees(cat, surface_id, &degrees).map(Some)
}

/// Union over `1..=max_n`.
pub fn enumerate_up_to(cat: &Catalog, surface_id: &str, max_n: i64) -> Result<SolutionSet, EnumError> {
    let degrees: Vec<i64> = (1..=max_n).collect();
    let mut out = solution_for_degrees(cat, surface_id, &degrees)?;
    if out.degree_bound.is_none() && max_n > 2 {
        out.flags.push("beyond paper: degrees above 2 are not covered by a derived degree bound".into());
    }
    Ok(out)
}

// ---- degree bound ----

fn qpair(lat: &IntLattice, a: &[BigRational], b: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, row) in lat.gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            if *g != 0 {
                acc += &a[i] * q(*g) * &b[j];
            }
        }
    }
    acc
}

fn to_q(d: &DivClass) -> Vec<BigRational> {
    d.coeffs.iter().map(|&v| q(v)).collect()
}

/// `1 + max(|c1|, |c0|) / |c2|`: every real root of `c2 n^2 + c1 n + c0`
/// lies within this distance of 0, and past it the sign is that of `c2`.
fn cauchy_root_bound(c2: &BigRational, c1: &BigRational, c0: &BigRational) -> BigRational {
    let m = if c1.abs() > c0.abs() { c1.abs() } else { c0.abs() };
    BigRational::one() + m / c2.abs()
}

fn ceil_i64(v: &BigRational) -> i64 {
    v.ceil().to_integer().to_i64().unwrap_or(i64::MAX)
}

/// Smallest integer `N >= 1` with `c2 n^2 + c1 n + c0 > 0` for every
/// `n > N`, assuming `c2 > 0`. Starts from the Cauchy bound and walks down
/// while the polynomial stays positive to the right of the vertex.
fn eventual_positivity(c2: &BigRational, c1: &BigRational, c0: &BigRational) -> i64 {
    let f = |n: i64| c2 * q(n) * q(n) + c1 * q(n) + c0;
    let vertex = -c1 / (q(2) * c2);
    let mut n = ceil_i64(&cauchy_root_bound(c2, c1, c0)).max(1);
    while n > 1 && q(n) > vertex && f(n).is_positive() {
        n -= 1;
    }
    n
}

/// Hit vectors allowed by the chain budgets: per chain, entries in
/// `0..=member_max` with total at most `total_max`.
fn hit_vectors(chains: &[(usize, i64, i64)]) -> Vec<Vec<i64>> {
    let mut acc: Vec<Vec<i64>> = vec![vec![]];
    for &(len, member_max, total_max) in chains {
        let mut per_chain: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &per_chain {
                let used: i64 = p.iter().sum();
                for v in 0..=member_max.min(total_max - used) {
                    let mut e = p.clone();
                    e.push(v);
                    next.push(e);
                }
            }
            per_chain = next;
        }
        acc = acc
            .into_iter()
            .flat_map(|a| {
                per_chain.iter().map(move |c| {
                    let mut e = a.clone();
                    e.extend(c);
                    e
                })
            })
            .collect();
    }
    acc
}

/// Degree past which the smooth-curve profile on `surface` has no genus-0
/// solution, derived from the lattice alone.
///
/// With `L` spanned by `-K` and the (-2)-classes, a solution splits as
/// `D = D_L + D_W` where `D_L` is fixed by `n` and the chain contacts `h`.
/// If `L` has full rank, `D^2 = n - 2` is a quadratic equation in `n`. If
/// its complement is a line `Q w`, then `D_W = t w` with `t^2` quadratic in
/// `n`, while nonnegativity against the (-1)-classes bounds `|t|` by affine
/// functions of `n`; whenever the quadratic outgrows the square of such a
/// bound the degree is infeasible. Returns `None` if neither argument
/// closes.
pub fn degree_bound(surface: &SurfaceModel) -> Result<Option<i64>, EnumError> {
    let cs = CurveConstraintSet::smooth_curve(surface, 1)?;
    let lat = &cs.lattice;
    let kappa = to_q(&lat.anticanonical());
    let kk = qpair(lat, &kappa, &kappa);
    let neg2: Vec<DivClass> = surface.neg2_classes();
    let mut chains = Vec::new();
    for b in &cs.chain_budget {
        let (Some(mm), Some(tm)) = (b.member_max, b.total_max) else {
            return Ok(None);
        };
        chains.push((b.chain.len(), mm, tm));
    }
    let gram: QMatrix = neg2
        .iter()
        .map(|a| neg2.iter().map(|b| q(pair(lat, a, b).unwrap_or(0))).collect())
        .collect();
    let Some(ginv) = qlinalg::inverse(&gram) else {
        return Ok(None);
    };
    // complement of L: vectors orthogonal to -K and every (-2)-class
    let mut rows: QMatrix = Vec::new();
    for v in std::iter::once(kappa.clone()).chain(neg2.iter().map(to_q)) {
        rows.push((0..lat.rank).map(|j| (0..lat.rank).map(|i| &v[i] * q(lat.gram[i][j])).sum()).collect());
    }
    let w_basis = qlinalg::nullspace(&rows, lat.rank);
    if w_basis.len() > 1 {
        return Ok(None);
    }
    let neg1: Vec<DivClass> = cs
        .nonneg_against
        .iter()
        .filter(|c| pair(lat, c, c).ok() == Some(-1))
        .cloned()
        .collect();

    let mut bound = 1i64;
    for h in hit_vectors(&chains) {
        let y: Vec<BigRational> = ginv
            .iter()
            .map(|row| row.iter().zip(&h).map(|(g, &hv)| g * q(hv)).sum())
            .collect();
        // D_L(n) = n u + v0
        let u: Vec<BigRational> = kappa.iter().map(|x| x / &kk).collect();
        let mut v0 = vec![BigRational::zero(); lat.rank];
        for (yj, c) in y.iter().zip(&neg2) {
            for (slot, &cv) in v0.iter_mut().zip(&c.coeffs) {
                *slot += yj * q(cv);
            }
        }
        // Q(n) = D_L^2 - (n - 2), the part D_W^2 must absorb (negated)
        let c2 = qpair(lat, &u, &u);
        let c1 = q(2) * qpair(lat, &u, &v0) - q(1);
        let c0 = qpair(lat, &v0, &v0) + q(2);
        let hb = match w_basis.first() {
            None => eventual_positivity(&c2, &c1, &c0),
            Some(w) => {
                let neg_w2 = -qpair(lat, w, w);
                let (q2, q1, q0) = (&c2 / &neg_w2, &c1 / &neg_w2, &c0 / &neg_w2);
                // t <= U(n) or t >= L(n), each affine alpha n + beta
                let mut upper = Vec::new();
                let mut lower = Vec::new();
                for e in &neg1 {
                    let eq = to_q(e);
                    let we = qpair(lat, w, &eq);
                    if we.is_zero() {
                        continue;
                    }
                    let alpha = -qpair(lat, &u, &eq) / &we;
                    let beta = -qpair(lat, &v0, &eq) / &we;
                    if we.is_positive() {
                        lower.push((alpha, beta));
                    } else {
                        upper.push((alpha, beta));
                    }
                }
                let side = |bounds: &[(BigRational, BigRational)]| -> Option<i64> {
                    bounds
                        .iter()
                        .filter_map(|(al, be)| {
                            let f2 = &q2 - al * al;
                            let f1 = &q1 - q(2) * al * be;
                            let f0 = &q0 - be * be;
                            f2.is_positive().then(|| eventual_positivity(&f2, &f1, &f0))
                        })
                        .min()
                };
                match (side(&upper), side(&lower)) {
                    (Some(a), Some(b)) => a.max(b),
                    _ => return Ok(None),
                }
            }
        };
        bound = bound.max(hb);
    }
    Ok(Some(bound))
}

// ---- special enumerations ----

/// Which constraint family to use for the cuspidal cubic on G1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CuspidalProfile {
    /// Only nonnegativity against the (-2)-classes.
    NonnegativeOnly,
    /// The full smooth-curve profile; the wrong choice, kept as a guard.
    SmoothCurve,
}

pub fn cuspidal_candidates(cat: &Catalog, profile: CuspidalProfile) -> Result<Vec<DivClass>, EnumError> {
    let g1 = cat.get("G1")?;
    let cs = match profile {
        CuspidalProfile::NonnegativeOnly => CurveConstraintSet {
            nonneg_against: g1.neg2_classes(),
            ..CurveConstraintSet::equations_only(3, 0)
        },
        CuspidalProfile::SmoothCurve => CurveConstraintSet::smooth_curve(g1, 3)?,
    };
    Ok(solve(&cs)?.0)
}

/// Class of the strict transform of the cuspidal cubic on G1.
pub fn cuspidal_cubic_class_g1(cat: &Catalog) -> Result<DivClass, EnumError> {
    let found = cuspidal_candidates(cat, CuspidalProfile::NonnegativeOnly)?;
    match found.as_slice() {
        [one] => Ok(one.clone()),
        _ => Err(EnumError::Structural(found.len())),
    }
}

/// Lattice models on ruled surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HirzebruchModel {
    /// Resolved cone over a plane cubic: ruled over an elliptic curve,
    /// minimal section of self-intersection -3.
    EllipticCone,
    /// Normalization of R1 or R2: F_3.
    R12,
    /// Normalization of R3 or R4: F_1.
    R34,
}

impl HirzebruchModel {
    pub fn parse(s: &str) -> Result<Self, EnumError> {
        match s {
            "ELLIPTIC_CONE" => Ok(Self::EllipticCone),
            "R12" => Ok(Self::R12),
            "R34" => Ok(Self::R34),
            other => Err(EnumError::UnknownModel(other.into())),
        }
    }

    pub fn lattice(self) -> IntLattice {
        match self {
            Self::EllipticCone => IntLattice::elliptic_ruled(3),
            Self::R12 => IntLattice::hirzebruch(3),
            Self::R34 => IntLattice::hirzebruch(1),
        }
    }

    /// Pullback of a hyperplane section.
    pub fn hyperplane(self) -> DivClass {
        match self {
            Self::EllipticCone | Self::R12 => DivClass::hirzebruch(1, 3),
            Self::R34 => DivClass::hirzebruch(1, 2),
        }
    }

    /// Numerical condition for a smooth irreducible curve of class
    /// `a Sigma + b f` with `a, b >= 0`.
    fn admissible(self, a: i64, b: i64) -> bool {
        match self {
            // contact with the minimal section is 0 or 1
            Self::EllipticCone | Self::R12 => {
                let c = b - 3 * a;
                (c == 0 && a > 0) || c == 1
            }
            // the section itself, or a class meeting it nonnegatively
            Self::R34 => (a, b) == (1, 0) || (b >= a && (a, b) != (0, 0)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RuledClass {
    pub class: DivClass,
    pub genus: i64,
}

pub fn hirzebruch_degree_genus(model: HirzebruchModel, degree: i64) -> Result<Vec<RuledClass>, EnumError> {
    if degree < 1 {
        return Err(EnumError::BadDegree(degree));
    }
    let lat = model.lattice();
    let h = model.hyperplane();
    let mut out = Vec::new();
    // h = Sigma + k f with k >= d, so D.h >= a and D.h >= b
    for a in 0..=degree {
        for b in 0..=degree {
            let d = DivClass::hirzebruch(a, b);
            if !model.admissible(a, b) || pair(&lat, &d, &h)? != degree {
                continue;
            }
            let genus = arithmetic_genus(&lat, &d)?;
            out.push(RuledClass { class: d, genus });
        }
    }
    Ok(out)
}

// ---- bidegree system ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BidegreeSystem {
    pub sum_a: i64,
    pub sum_b: i64,
    pub nonneg_a: bool,
    /// Box for `a_1` and `b_1` when `a` is not sign-restricted.
    pub search_box: i64,
}

impl Default for BidegreeSystem {
    fn default() -> Self {
        Self { sum_a: 4, sum_b: 1, nonneg_a: true, search_box: 10 }
    }
}

/// Solutions `(a1, b1, a2, b2)` of `a1 + a2 = sum_a`, `b1 + b2 = sum_b`,
/// `a1 b2 - a2 b1 = +-1`.
pub fn solve_bidegrees(sys: BidegreeSystem) -> Vec<(i64, i64, i64, i64)> {
    let mut out = BTreeSet::new();
    let (sa, sb) = (sys.sum_a, sys.sum_b);
    if sys.nonneg_a {
        // a1 b2 - a2 b1 = a1 sb - sa b1, so b1 is determined by a1 and the sign
        for a1 in 0..=sa {
            for sign in [-1, 1] {
                let num = a1 * sb - sign;
                if sa != 0 && num % sa == 0 {
                    let b1 = num / sa;
                    out.insert((a1, b1, sa - a1, sb - b1));
                } else if sa == 0 && num == 0 {
                    for b1 in -sys.search_box..=sys.search_box {
                        out.insert((a1, b1, sa - a1, sb - b1));
                    }
                }
            }
        }
    } else {
        let r = sys.search_box;
        for a1 in -r..=r {
            for b1 in -r..=r {
                let (a2, b2) = (sa - a1, sb - b1);
                if a2.abs() <= r && b2.abs() <= r && (a1 * b2 - a2 * b1).abs() == 1 {
                    out.insert((a1, b1, a2, b2));
                }
            }
        }
    }
    out.into_iter().collect()
}

pub fn solve_blowup_bidegrees() -> Vec<(i64, i64, i64, i64)> {
    solve_bidegrees(BidegreeSystem::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface_models::default_catalog;

    fn t(n: i64, a: i64, b: [i64; 6]) -> Tuple {
        Tuple { n, a, b }
    }

    fn names(cat: &Catalog, s: &SolutionSet) -> Vec<String> {
        let lat = &cat.get(&s.surface).unwrap().lattice;
        s.classes.iter().map(|c| lat.format_class(c)).collect()
    }

    #[test]
    fn cs_bounds() {
        assert_eq!(bounds_from_cauchy_schwarz(1), (0, 2));
        assert_eq!(bounds_from_cauchy_schwarz(2), (1, 3));
        assert_eq!(bounds_from_cauchy_schwarz(3), (1, 5));
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(15), 3);
        assert_eq!(isqrt(16), 4);
    }

    #[test]
    fn tuples_small_degrees() {
        assert_eq!(
            enumerate_tuples(1, 0).unwrap(),
            vec![t(1, 0, [0, 0, 0, 0, 0, -1]), t(1, 1, [1, 1, 0, 0, 0, 0]), t(1, 2, [1, 1, 1, 1, 1, 0])]
        );
        assert_eq!(
            enumerate_tuples(2, 0).unwrap(),
            vec![t(2, 1, [1, 0, 0, 0, 0, 0]), t(2, 2, [1, 1, 1, 1, 0, 0]), t(2, 3, [2, 1, 1, 1, 1, 1])]
        );
        let five: Vec<String> = enumerate_tuples_cuspidal().iter().map(ToString::to_string).collect();
        assert_eq!(
            five,
            ["(3, 1; 0^6)", "(3, 2; 1^3, 0^3)", "(3, 3; 2, 1^4, 0)", "(3, 4; 2^3, 1^3)", "(3, 5; 2^6)"]
        );
        assert!(enumerate_tuples(0, 0).is_err());
    }

    #[test]
    fn permutations_are_distinct_and_complete() {
        assert_eq!(distinct_permutations(&[1, 1, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[2, 1, 1, 1, 1, 1]).len(), 6);
        assert_eq!(distinct_permutations(&[3, 2, 1, 0, -1, -2]).len(), 720);
    }

    #[test]
    fn g1_classes() {
        let cat = default_catalog();
        let s = enumerate_all_degrees(&cat, "G1").unwrap().unwrap();
        assert_eq!(names(&cat, &s), ["E6", "H-E1"]);
        assert_eq!(names(&cat, &enumerate_curve_classes(&cat, "G1", 1).unwrap()), ["E6"]);
        assert_eq!(names(&cat, &enumerate_curve_classes(&cat, "G1", 2).unwrap()), ["H-E1"]);
        assert!(enumerate_curve_classes(&cat, "G1", 3).unwrap().classes.is_empty());
    }

    #[test]
    fn g2_classes() {
        let cat = default_catalog();
        let s = enumerate_all_degrees(&cat, "G2").unwrap().unwrap();
        assert_eq!(names(&cat, &s), ["E6", "E4", "H-E1", "H-E5", "2H-E1-E2-E5"]);
    }

    #[test]
    fn g5_has_no_derived_bound() {
        let cat = default_catalog();
        assert!(enumerate_all_degrees(&cat, "G5").unwrap().is_none());
        let s = enumerate_up_to(&cat, "G5", 2).unwrap();
        assert_eq!(s.classes.len(), 6);
        assert!(s.flags.is_empty());
        assert!(!enumerate_curve_classes(&cat, "G5", 3).unwrap().flags.is_empty());
    }

    #[test]
    fn unsupported_surface() {
        let cat = default_catalog();
        assert!(matches!(enumerate_curve_classes(&cat, "G9", 1), Err(EnumError::Unsupported(_))));
        assert!(matches!(enumerate_curve_classes(&cat, "G1", 0), Err(EnumError::BadDegree(0))));
    }

    #[test]
    fn cuspidal_class() {
        let cat = default_catalog();
        assert_eq!(cuspidal_cubic_class_g1(&cat).unwrap(), DivClass::basis(7, 0));
        assert!(cuspidal_candidates(&cat, CuspidalProfile::SmoothCurve).unwrap().is_empty());
    }

    #[test]
    fn hirzebruch_tables() {
        use HirzebruchModel::*;
        assert!(hirzebruch_degree_genus(EllipticCone, 2).unwrap().is_empty());
        let d3 = hirzebruch_degree_genus(EllipticCone, 3).unwrap();
        assert_eq!(d3, vec![RuledClass { class: DivClass::hirzebruch(1, 3), genus: 1 }]);
        let r4 = hirzebruch_degree_genus(R12, 4).unwrap();
        assert_eq!(r4, vec![RuledClass { class: DivClass::hirzebruch(1, 4), genus: 0 }]);
        let one: Vec<DivClass> = hirzebruch_degree_genus(R34, 1).unwrap().into_iter().map(|r| r.class).collect();
        assert_eq!(one, vec![DivClass::hirzebruch(0, 1), DivClass::hirzebruch(1, 0)]);
        assert!(HirzebruchModel::parse("F2").is_err());
    }

    #[test]
    fn bidegrees() {
        assert_eq!(solve_blowup_bidegrees(), vec![(1, 0, 3, 1), (3, 1, 1, 0)]);
        let relaxed = solve_bidegrees(BidegreeSystem { sum_a: 5, ..Default::default() });
        assert_eq!(relaxed, vec![(1, 0, 4, 1), (4, 1, 1, 0)]);
        let signed = solve_bidegrees(BidegreeSystem { nonneg_a: false, ..Default::default() });
        assert!(signed.len() > 2);
        assert!(signed.contains(&(1, 0, 3, 1)) && signed.contains(&(3, 1, 1, 0)));
    }
}
