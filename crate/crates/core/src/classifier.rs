//! Case analysis for triples `(C, S1, S2)`: a smooth curve `C`, a plane
//! `S1` and a cubic surface `S2 ⊃ C`, whose blow-up complement is an affine
//! homology 3-cell exactly in the cases `a`..`f` below.
//!
//! The classifier works on symbolic descriptors: incidence counts and the
//! `H1` isomorphism flag are inputs, while degree feasibility, pair
//! matching and lattice shortcuts are computed.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve_enum::{
    self, cuspidal_candidates, enumerate_curve_classes, enumerate_tuples, enumerate_tuples_cuspidal, hirzebruch_degree_genus,
    solve_blowup_bidegrees, CuspidalProfile, EnumError, HirzebruchModel, Tuple,
};
use crate::homology::{
    coker_theta, coker_xi_r3, euler_of_f, feasible_intersections, minimality_dichotomy, plane_cubic_table, EulerBudget,
    HomologyError,
};
use crate::lattice::{arithmetic_genus, pair, BasisKind, DivClass, LatticeError};
use crate::poly::{restrict_to_line, LineP3, MultiPoly, PointP3, PolyError};
use crate::qlinalg::{self, q};
use crate::surface_models::{default_catalog, verify_catalog, Catalog, CatalogError};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Defining polynomial of the contractible surface W(3,2), as published:
/// the surface is `{numerator / y = 0}` in affine (x, y, z)-space.
pub const W32_NUMERATOR: &str = "(zx+1)^2-(zy+1)^3-y";
pub const W32_DENOMINATOR: &str = "y";

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("invalid descriptor: {0}")]
    Descriptor(String),
    #[error("hyperplane `{input}`: {source}")]
    Hyperplane { input: String, source: PolyError },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Enum(#[from] EnumError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("descriptor JSON: {0}")]
    Json(#[from] serde_json::Error),
}

// ---- descriptors ----

/// A plane given by a linear form or an equation such as `y = 2*x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperplane {
    pub text: String,
    pub form: MultiPoly,
}

impl Hyperplane {
    pub fn parse(input: &str) -> Result<Self, ClassifyError> {
        let wrap = |source| ClassifyError::Hyperplane { input: input.to_string(), source };
        let form = match input.split_once('=') {
            Some((l, r)) => &MultiPoly::parse(l).map_err(wrap)? - &MultiPoly::parse(r).map_err(wrap)?,
            None => MultiPoly::parse(input).map_err(wrap)?,
        };
        let c = form.linear_coeffs().map_err(wrap)?;
        if c.iter().all(Zero::is_zero) {
            return Err(wrap(PolyError::NotLinear(form.to_string())));
        }
        Ok(Self { text: input.trim().to_string(), form })
    }

    fn coeffs(&self) -> [BigRational; 4] {
        self.form.linear_coeffs().expect("validated on construction")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleDescriptor {
    pub curve_genus: i64,
    pub curve_degree: i64,
    pub surface_id: String,
    /// Omitted only for the elliptic cone, where any plane through the
    /// vertex behaves the same.
    #[serde(default)]
    pub hyperplane: Option<String>,
    /// `(N1, N2, N12)`.
    pub incidence: (i64, i64, i64),
    #[serde(default)]
    pub delta_iso: Option<bool>,
    pub sharp_c_cap_s1: i64,
    pub b2_f: i64,
    #[serde(default)]
    pub curve_class: Option<DivClass>,
    #[serde(default)]
    pub vertex_on_s1: bool,
    /// Two linear forms cutting out `C` when it is a line.
    #[serde(default)]
    pub curve_line: Option<[String; 2]>,
}

impl TripleDescriptor {
    pub fn from_json(s: &str) -> Result<Self, ClassifyError> {
        Ok(serde_json::from_str(s)?)
    }

    /// Genus-0 descriptor with the given pair and `N1`, other fields neutral.
    pub fn rational(surface: &str, hyperplane: &str, degree: i64, n1: i64) -> Self {
        Self {
            curve_genus: 0,
            curve_degree: degree,
            surface_id: surface.to_string(),
            hyperplane: Some(hyperplane.to_string()),
            incidence: (n1, 1, 1.min(n1)),
            delta_iso: None,
            sharp_c_cap_s1: n1,
            b2_f: 1,
            curve_class: None,
            vertex_on_s1: false,
            curve_line: None,
        }
    }
}

// ---- outcomes ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "d")]
    D,
    #[serde(rename = "e")]
    E,
    #[serde(rename = "f")]
    F,
    #[serde(rename = "REJECT")]
    Reject,
}

impl Case {
    pub fn iso_class(self) -> IsoClass {
        match self {
            Case::A | Case::B | Case::C | Case::D | Case::E => IsoClass::A3,
            Case::F => IsoClass::A1xW32,
            Case::Reject => IsoClass::Unknown,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::A => "a",
            Case::B => "b",
            Case::C => "c",
            Case::D => "d",
            Case::E => "e",
            Case::F => "f",
            Case::Reject => "REJECT",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IsoClass {
    A3,
    A1xW32,
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

/// One evaluated predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reason {
    pub id: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseOutcome {
    pub case: Case,
    pub iso_class: IsoClass,
    pub reasons: Vec<Reason>,
    /// Parameter of the matched hyperplane family (`inf` for the point at
    /// infinity of a projective family).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    pub flags: Vec<String>,
}

impl CaseOutcome {
    /// Ids of the predicates that failed.
    pub fn violated(&self) -> Vec<&str> {
        self.reasons.iter().filter(|r| !r.holds).map(|r| r.id.as_str()).collect()
    }
}

// ---- admitted pairs ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GammaDomain {
    /// A single plane.
    Fixed,
    /// `γ` ranges over the affine line.
    Affine,
    /// `γ` ranges over P^1; `∞` is the plane `moving = 0`.
    Projective,
}

/// The plane `fixed = γ·moving`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairRule {
    pub hyperplane: &'static str,
    pub surface_id: &'static str,
    pub case: Case,
    pub fixed: &'static str,
    pub moving: Option<&'static str>,
    pub domain: GammaDomain,
    /// Why the configuration survives.
    pub justification: &'static str,
}

const fn rule(
    hyperplane: &'static str,
    surface_id: &'static str,
    case: Case,
    fixed: &'static str,
    moving: Option<&'static str>,
    domain: GammaDomain,
    justification: &'static str,
) -> PairRule {
    PairRule { hyperplane, surface_id, case, fixed, moving, domain, justification }
}

use GammaDomain::{Affine, Fixed, Projective};

const RULES: [PairRule; 15] = [
    rule("{y=γx}", "R1", Case::B, "y", Some("x"), Affine, "rulings section with #(C∩F) = B2(F)"),
    rule("{y=γx}", "R2", Case::C, "y", Some("x"), Projective, "rulings section with #(C∩F) = B2(F) + 1"),
    rule("{y=0}", "G1", Case::D, "y", None, Fixed, "triple-line section, trivial Θ-cokernel"),
    rule("{z=γy}", "G5", Case::D, "z", Some("y"), Projective, "line plus tangent conic, trivial Θ-cokernel"),
    rule("{t=0}", "G6", Case::D, "t", None, Fixed, "minimal incidence on G6"),
    rule("{y=0}", "G9", Case::D, "y", None, Fixed, "minimal incidence on G9"),
    rule("{y=0}", "G10", Case::D, "y", None, Fixed, "minimal incidence on G10"),
    rule("{x=t}", "G11", Case::D, "x - t", None, Fixed, "minimal incidence on G11"),
    rule("{x=0}", "R1", Case::D, "x", None, Fixed, "cuspidal section through the conductor"),
    rule("{y=γx}", "R3", Case::D, "y", Some("x"), Projective, "minimal incidence on R3"),
    rule("{x=0}", "R4", Case::D, "x", None, Fixed, "minimal incidence on R4"),
    rule("{y=0}", "G2", Case::E, "y", None, Fixed, "line plus double line, H1 comparison decides"),
    rule("{y=0}", "G4", Case::E, "y", None, Fixed, "three concurrent lines, H1 comparison decides"),
    rule("{y=γx}", "R4", Case::E, "y", Some("x"), Affine, "pencil through the double line, H1 comparison decides"),
    rule("{z=0}", "R1", Case::F, "z", None, Fixed, "line through the vertex: A1 x W(3,2)"),
];

/// The nine pairs of case `d` followed by the three of case `e`.
pub fn admitted_pairs() -> Vec<PairRule> {
    RULES.iter().copied().filter(|r| matches!(r.case, Case::D | Case::E)).collect()
}

/// Every rule, including the ruled-surface families of cases `b`, `c`
/// and the exceptional line of case `f`.
pub fn all_rules() -> Vec<PairRule> {
    RULES.to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gamma {
    None,
    Finite(BigRational),
    Infinity,
}

impl Gamma {
    fn label(&self) -> Option<String> {
        match self {
            Gamma::None => None,
            Gamma::Finite(v) => Some(v.to_string()),
            Gamma::Infinity => Some("inf".into()),
        }
    }
}

impl PairRule {
    /// Parameter value at which the family contains `h`, if any.
    pub fn matches(&self, h: &Hyperplane) -> Option<Gamma> {
        let coeffs = |s: &str| MultiPoly::parse(s).and_then(|p| p.linear_coeffs()).expect("rule forms are linear");
        let a = coeffs(self.fixed);
        let c = h.coeffs();
        let Some(moving) = self.moving else {
            let m = vec![a.to_vec(), c.to_vec()];
            return (qlinalg::rank(&m) == 1).then_some(Gamma::None);
        };
        let b = coeffs(moving);
        let m = vec![a.to_vec(), b.to_vec(), c.to_vec()];
        if qlinalg::rank(&m) != 2 {
            return None;
        }
        // c = λ a + μ b; the plane is a = γ b with γ = -μ/λ
        let basis = vec![a.to_vec(), b.to_vec()];
        let (lambda, mu) = solve_in_span(&basis, &c);
        let gamma = if lambda.is_zero() { Gamma::Infinity } else { Gamma::Finite(-mu / lambda) };
        match (self.domain, &gamma) {
            (Affine, Gamma::Infinity) => None,
            _ => Some(gamma),
        }
    }
}

/// Coordinates of `c` in the span of two independent rows.
fn solve_in_span(rows: &[Vec<BigRational>], c: &[BigRational; 4]) -> (BigRational, BigRational) {
    // pick two columns where the 2x2 minor is invertible
    for i in 0..4 {
        for j in i + 1..4 {
            let det = &rows[0][i] * &rows[1][j] - &rows[0][j] * &rows[1][i];
            if !det.is_zero() {
                let l = (&c[i] * &rows[1][j] - &c[j] * &rows[1][i]) / &det;
                let m = (&rows[0][i] * &c[j] - &rows[0][j] * &c[i]) / &det;
                return (l, m);
            }
        }
    }
    unreachable!("rows are independent")
}

// ---- classification ----

struct Checks {
    reasons: Vec<Reason>,
}

impl Checks {
    fn check(&mut self, id: &str, holds: bool, detail: impl Into<String>) -> bool {
        self.reasons.push(Reason { id: id.into(), holds, detail: detail.into() });
        holds
    }
}

fn validate(cat: &Catalog, d: &TripleDescriptor) -> Result<Option<Hyperplane>, ClassifyError> {
    let bad = |m: String| Err(ClassifyError::Descriptor(m));
    if d.curve_genus < 0 {
        return bad(format!("curve_genus must be nonnegative, got {}", d.curve_genus));
    }
    if d.curve_degree < 1 {
        return bad(format!("curve_degree must be positive, got {}", d.curve_degree));
    }
    let (n1, n2, n12) = d.incidence;
    minimality_dichotomy(n1, n2, n12)?;
    if d.sharp_c_cap_s1 != n1 {
        return bad(format!("sharp_c_cap_s1 = {} differs from N1 = {n1}", d.sharp_c_cap_s1));
    }
    let s = cat.get(&d.surface_id)?;
    if let Some(c) = &d.curve_class {
        if c.len() != s.lattice.rank {
            return Err(LatticeError::DimensionMismatch { expected: s.lattice.rank, got: c.len() }.into());
        }
    }
    let h = d.hyperplane.as_deref().map(Hyperplane::parse).transpose()?;
    if h.is_none() && d.surface_id != "ELLIPTIC_CONE" {
        return bad(format!("surface {} needs a hyperplane", d.surface_id));
    }
    Ok(h)
}

/// Feasibility of a smooth rational curve of the descriptor's degree (and
/// class, if given) on the surface.
fn degree_feasible(cat: &Catalog, d: &TripleDescriptor, ch: &mut Checks, flags: &mut Vec<String>) -> Result<(), ClassifyError> {
    let s = cat.get(&d.surface_id)?;
    let n = d.curve_degree;
    if let Some(c) = &d.curve_class {
        let deg = pair(&s.lattice, c, &s.hyperplane_class)?;
        let g = arithmetic_genus(&s.lattice, c)?;
        let shown = s.lattice.format_class(c);
        ch.check("curve-class-degree", deg == n && g == d.curve_genus, format!("{shown} has degree {deg} and genus {g}"));
    }
    if s.lattice.basis_kind == BasisKind::CubicBlowup && s.has_lattice_chains() {
        let bound = curve_enum::degree_bound(s)?;
        if bound.is_some_and(|b| n > b) {
            ch.check("curve-degree-bound", false, format!("degree {n} exceeds the bound {}", bound.unwrap_or_default()));
            return Ok(());
        }
        if bound.is_none() && n > 8 {
            flags.push(format!("degree {n} on {} not checked against curve classes", s.id));
            return Ok(());
        }
        let sol = enumerate_curve_classes(cat, &s.id, n)?;
        flags.extend(sol.flags.iter().cloned());
        match &d.curve_class {
            Some(c) => {
                let ok = sol.classes.contains(c);
                ch.check("curve-class-feasible", ok, format!("{} among {} smooth rational classes", s.lattice.format_class(c), sol.classes.len()));
            }
            None => {
                ch.check("curve-class-feasible", !sol.classes.is_empty(), format!("{} smooth rational classes of degree {n}", sol.classes.len()));
            }
        }
        return Ok(());
    }
    let model = match s.id.as_str() {
        "R1" | "R2" => HirzebruchModel::R12,
        "R3" | "R4" => HirzebruchModel::R34,
        _ => return Ok(()),
    };
    let found = hirzebruch_degree_genus(model, n)?.into_iter().filter(|r| r.genus == d.curve_genus).count();
    ch.check("ruled-degree-feasible", found > 0, format!("{found} classes of degree {n} and genus {} on the normalization", d.curve_genus));
    Ok(())
}

fn outcome(case: Case, ch: Checks, gamma: Option<String>, flags: Vec<String>) -> CaseOutcome {
    let case = if ch.reasons.iter().all(|r| r.holds) { case } else { Case::Reject };
    CaseOutcome { case, iso_class: case.iso_class(), reasons: ch.reasons, gamma, flags }
}

pub fn classify(cat: &Catalog, d: &TripleDescriptor) -> Result<CaseOutcome, ClassifyError> {
    let h = validate(cat, d)?;
    let mut ch = Checks { reasons: Vec::new() };
    let mut flags = Vec::new();
    let (n1, _, _) = d.incidence;

    if !ch.check("genus-at-most-one", d.curve_genus <= 1, format!("p_a(C) = {}", d.curve_genus)) {
        return Ok(outcome(Case::Reject, ch, None, flags));
    }

    if d.surface_id == "ELLIPTIC_CONE" {
        ch.check("elliptic-curve-on-cone", d.curve_genus == 1, format!("p_a(C) = {}", d.curve_genus));
        let ok = (3..=4).contains(&d.curve_degree)
            && hirzebruch_degree_genus(HirzebruchModel::EllipticCone, d.curve_degree)?.iter().any(|r| r.genus == 1);
        ch.check("elliptic-degree-three-or-four", ok, format!("deg C = {}", d.curve_degree));
        ch.check("cone-vertex-on-hyperplane", d.vertex_on_s1, format!("vertex on S1: {}", d.vertex_on_s1));
        ch.check("intersection-count-equals-b2", n1 == d.b2_f, format!("#(C∩S1) = {n1}, B2(F) = {}", d.b2_f));
        return Ok(outcome(Case::A, ch, None, flags));
    }
    if !ch.check("elliptic-curve-on-cone", d.curve_genus == 0, format!("p_a(C) = {} on {}", d.curve_genus, d.surface_id)) {
        return Ok(outcome(Case::Reject, ch, None, flags));
    }

    let h = h.expect("validated");
    let matched = RULES
        .iter()
        .filter(|r| r.surface_id == d.surface_id)
        .find_map(|r| r.matches(&h).map(|g| (r, g)));
    let Some((rule, gamma)) = matched else {
        ch.check("admitted-pair", false, format!("({}, {}) is not an admitted pair", h.text, d.surface_id));
        return Ok(outcome(Case::Reject, ch, None, flags));
    };
    ch.check("admitted-pair", true, format!("({}, {}) matches {}", h.text, d.surface_id, rule.hyperplane));
    if rule.domain == Projective && rule.surface_id == "R3" && gamma == Gamma::Infinity {
        flags.push("γ = ∞ on R3 admitted as listed for the projective family".into());
    }

    match rule.case {
        Case::B | Case::C => {
            let ok = (3..=4).contains(&d.curve_degree);
            ch.check("rational-degree-three-or-four", ok, format!("deg C = {}", d.curve_degree));
            if ok {
                degree_feasible(cat, d, &mut ch, &mut flags)?;
            }
            let (want, id) = if rule.case == Case::B {
                (d.b2_f, "intersection-count-equals-b2")
            } else {
                (d.b2_f + 1, "intersection-count-equals-b2-plus-one")
            };
            ch.check(id, n1 == want, format!("#(C∩S1) = {n1}, B2(F) = {}", d.b2_f));
        }
        Case::D => {
            ch.check("single-intersection-point", n1 == 1, format!("#(C∩S1) = {n1}"));
            degree_feasible(cat, d, &mut ch, &mut flags)?;
        }
        Case::E => {
            let (delta, source) = match (d.delta_iso, &d.curve_class) {
                (Some(v), _) => (v, "given".to_string()),
                (None, Some(c)) if matches!(d.surface_id.as_str(), "G2" | "G4") => {
                    let lat = &cat.get(&d.surface_id)?.lattice;
                    let h_e1 = lat.parse_class("H-E1")?;
                    let m = pair(lat, c, &h_e1)?;
                    (m == 1, format!("C.(H-E1) = {m}"))
                }
                _ => (false, "not supplied".to_string()),
            };
            ch.check("delta-isomorphism", delta, format!("H1 comparison map is an isomorphism: {delta} ({source})"));
            ch.check("delta-forces-two-points", n1 == 2, format!("#(C∩S1) = {n1}"));
            degree_feasible(cat, d, &mut ch, &mut flags)?;
        }
        Case::F => {
            ch.check("line-through-vertex", d.curve_degree == 1, format!("deg C = {}", d.curve_degree));
            ch.check("single-intersection-point", n1 == 1, format!("#(C∩S1) = {n1}"));
            if let Some([f1, f2]) = &d.curve_line {
                let line = LineP3::parse(f1, f2)?;
                let s = cat.get(&d.surface_id)?;
                let eq = s.equation.as_ref().expect("R1 has an equation");
                ch.check("curve-on-surface", restrict_to_line(eq, &line).is_zero(), format!("{line} on {}", s.id));
                ch.check("curve-not-in-hyperplane", !restrict_to_line(&h.form, &line).is_zero(), format!("{line} against {}", h.text));
            }
        }
        Case::A | Case::Reject => unreachable!("no pair rule carries this case"),
    }
    Ok(outcome(rule.case, ch, gamma.label(), flags))
}

/// Descriptor accepted into the rule's case, with a concrete curve class
/// when the surface has a lattice model.
pub fn canonical_descriptor(cat: &Catalog, r: &PairRule) -> Result<TripleDescriptor, ClassifyError> {
    let plane = match r.moving {
        Some(m) => format!("{} = 2*({m})", r.fixed),
        None => r.fixed.to_string(),
    };
    let mut d = TripleDescriptor::rational(r.surface_id, &plane, 1, 1);
    match r.case {
        Case::B | Case::C => {
            d.curve_degree = 3;
            d.b2_f = 2;
            d.incidence = (if r.case == Case::B { 2 } else { 3 }, 1, 1);
        }
        Case::E => {
            d.incidence = (2, 1, 1);
            d.delta_iso = Some(true);
        }
        Case::F => d.curve_line = Some(["x - y".into(), "x + z".into()]),
        _ => {}
    }
    d.sharp_c_cap_s1 = d.incidence.0;
    let s = cat.get(r.surface_id)?;
    if s.has_lattice_chains() {
        // lowest degree class; for case e prefer one meeting H - E1 once
        let h_e1 = s.lattice.parse_class("H-E1")?;
        let bound = curve_enum::degree_bound(s)?.unwrap_or(2);
        'outer: for n in 1..=bound {
            for c in enumerate_curve_classes(cat, r.surface_id, n)?.classes {
                if r.case != Case::E || pair(&s.lattice, &c, &h_e1)? == 1 {
                    d.curve_degree = n;
                    d.curve_class = Some(c);
                    break 'outer;
                }
            }
        }
    }
    Ok(d)
}

/// Single-predicate perturbations of an accepted descriptor, each expected
/// to be rejected, labelled by the predicate they break.
pub fn mutations(cat: &Catalog, r: &PairRule, d: &TripleDescriptor) -> Result<Vec<(&'static str, TripleDescriptor)>, ClassifyError> {
    let mut out = Vec::new();
    let mut m = d.clone();
    m.incidence.0 += 1;
    m.sharp_c_cap_s1 += 1;
    out.push(("N1", m));
    if r.case == Case::E {
        let mut m = d.clone();
        m.delta_iso = Some(false);
        out.push(("delta_iso", m));
    }
    let s = cat.get(r.surface_id)?;
    // F1 carries rational curves of every degree, so only lattice surfaces
    // and the F3 models constrain it
    let has_degree_data = s.has_lattice_chains() || matches!(r.surface_id, "R1" | "R2");
    if has_degree_data {
        let mut m = d.clone();
        m.curve_degree = if matches!(r.case, Case::B | Case::C) { 5 } else { d.curve_degree + 1 };
        if r.case == Case::F {
            m.curve_degree = 2;
        }
        out.push(("degree", m));
    }
    let mut m = d.clone();
    m.curve_genus = 2;
    out.push(("genus", m));
    Ok(out)
}

// ---- the non-A3 example ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub checks: Vec<Check>,
    pub w32_numerator: String,
    pub w32_denominator: String,
    pub flags: Vec<String>,
}

impl ExampleReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The line `{x = y = -z}` on `x^2 z + y^3 = 0` with `S1 = {z = 0}`.
pub fn verify_example_non_a3(cat: &Catalog) -> Result<ExampleReport, ClassifyError> {
    let mut checks = Vec::new();
    let mut push = |id: &str, pass: bool, detail: String| checks.push(Check { id: id.into(), pass, detail });
    let s2 = cat.get("R1")?;
    let eq = s2.equation.clone().expect("R1 has an equation");
    let curve = LineP3::parse("x - y", "x + z")?;
    let s1 = MultiPoly::parse("z")?;

    push("curve-on-surface", restrict_to_line(&eq, &curve).is_zero(), format!("{eq} restricted to {curve}"));
    push("curve-not-in-hyperplane", !restrict_to_line(&s1, &curve).is_zero(), format!("z restricted to {curve}"));

    let mut rows = curve.coefficient_matrix();
    rows.push(s1.linear_coeffs()?.to_vec());
    let kernel = qlinalg::nullspace(&rows, 4);
    let meet = match kernel.as_slice() {
        [v] => Some(PointP3::new([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])?),
        _ => None,
    };
    let vertex = PointP3::from_ints([0, 0, 0, 1])?;
    push(
        "single-intersection-point",
        meet.as_ref() == Some(&vertex),
        format!("C ∩ S1 = {}", meet.as_ref().map_or("not a single point".into(), ToString::to_string)),
    );
    push(
        "meets-at-vertex",
        s2.singular_points.iter().any(|p| p.point == vertex),
        "the intersection point is the cone vertex".into(),
    );

    // f(x, y, z, t) = (x, y/a, z/a^3, t) carries {y = ax, z = -a^2 y} to C
    // and scales the cubic by a^-3
    let params = [r(2, 1), r(-3, 1), r(1, 2), r(-5, 7)];
    let samples = [[1, 2, -1, 3], [2, 0, 5, -1], [-3, 1, 1, 1]];
    let mut moved_ok = true;
    let mut scaled_ok = true;
    for a in &params {
        let a2 = a * a;
        let a3 = &a2 * a;
        let ca = LineP3::new(
            &MultiPoly::var(1) - &MultiPoly::var(0).scale(a),
            &MultiPoly::var(2) + &MultiPoly::var(1).scale(&a2),
        )?;
        moved_ok &= restrict_to_line(&eq, &ca).is_zero();
        let f = |p: &[BigRational; 4]| [p[0].clone(), &p[1] / a, &p[2] / &a3, p[3].clone()];
        for p in ca.spanning_points() {
            let img = PointP3::new(f(&p.coords))?;
            moved_ok &= curve.contains_point(&img);
        }
        for s in samples {
            let p = s.map(q);
            scaled_ok &= eq.eval(&f(&p)) == eq.eval(&p) / &a3;
        }
    }
    push("coordinate-change-maps-curve", moved_ok, "C_a lies on the cubic and f(C_a) = C for a in {2, -3, 1/2, -5/7}".into());
    push("coordinate-change-preserves-surface", scaled_ok, "f*(x^2 z + y^3) = a^-3 (x^2 z + y^3)".into());

    let d = TripleDescriptor {
        curve_genus: 0,
        curve_degree: 1,
        surface_id: "R1".into(),
        hyperplane: Some("z".into()),
        incidence: (1, 1, 1),
        delta_iso: None,
        sharp_c_cap_s1: 1,
        b2_f: 1,
        curve_class: None,
        vertex_on_s1: false,
        curve_line: Some(["x - y".into(), "x + z".into()]),
    };
    let out = classify(cat, &d)?;
    push(
        "classified-as-line-example",
        out.case == Case::F && out.iso_class == IsoClass::A1xW32,
        format!("case {}, {:?}", out.case, out.iso_class),
    );

    // the published quotient: the numerator reduced mod y
    let mut flags = Vec::new();
    let num = MultiPoly::parse("(z*x+1)^2 - (z*y+1)^3 - y")?;
    let at_y0 = num.eval(&[q(3), q(0), q(5), q(1)]);
    if !at_y0.is_zero() {
        flags.push(format!("numerator {W32_NUMERATOR} does not vanish on y = 0 (value {at_y0} at x=3, z=5), so the quotient by y is not a polynomial"));
    }
    Ok(ExampleReport {
        checks,
        w32_numerator: W32_NUMERATOR.into(),
        w32_denominator: W32_DENOMINATOR.into(),
        flags,
    })
}

// ---- replay harness ----

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaEntry {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub schema: u32,
    pub entries: Vec<LemmaEntry>,
    pub failures: usize,
}

impl LemmaReport {
    pub fn entry(&self, id: &str) -> Option<&LemmaEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::from("| id | result | expected | computed |\n|---|---|---|---|\n");
        for e in &self.entries {
            let cell = |t: &str| t.replace('|', "\\|");
            s.push_str(&format!(
                "| {} | {} | {} | {} |\n",
                e.id,
                if e.pass { "PASS" } else { "FAIL" },
                cell(&e.expected),
                cell(&e.computed)
            ));
        }
        s.push_str(&format!("\n{} entries, {} failures\n", self.entries.len(), self.failures));
        s
    }

    /// Process exit status for the report.
    pub fn exit_code(&self) -> i32 {
        self.failures.min(125) as i32
    }
}

struct Replay<'a> {
    cat: &'a Catalog,
    entries: Vec<LemmaEntry>,
}

impl Replay<'_> {
    fn add(&mut self, id: &str, description: &str, expected: impl Into<String>, computed: Result<String, String>) {
        let expected = expected.into();
        let (computed, pass) = match computed {
            Ok(c) => {
                let pass = c == expected;
                (c, pass)
            }
            Err(e) => (format!("error: {e}"), false),
        };
        self.entries.push(LemmaEntry { id: id.into(), description: description.into(), expected, computed, pass });
    }

    fn class_set(&self, id: &str, names: &[&str]) -> String {
        let Ok(s) = self.cat.get(id) else {
            return format!("unknown surface {id}");
        };
        let mut v: Vec<DivClass> = names.iter().map(|n| s.lattice.parse_class(n).expect("literal class")).collect();
        v.sort();
        v.iter().map(|c| s.lattice.format_class(c)).collect::<Vec<_>>().join(", ")
    }

    /// Classes over every degree up to the derived bound.
    fn all_degree_classes(&self, id: &str) -> Result<String, String> {
        let s = self.cat.get(id).map_err(|e| e.to_string())?;
        match curve_enum::degree_bound(s).map_err(|e| e.to_string())? {
            Some(b) => self.computed_classes(id, &(1..=b).collect::<Vec<_>>()),
            None => Err(format!("no degree bound for {id}")),
        }
    }

    fn computed_classes(&self, id: &str, degrees: &[i64]) -> Result<String, String> {
        let s = self.cat.get(id).map_err(|e| e.to_string())?;
        let mut v = Vec::new();
        for &n in degrees {
            v.extend(enumerate_curve_classes(self.cat, id, n).map_err(|e| e.to_string())?.classes);
        }
        v.sort();
        v.dedup();
        Ok(v.iter().map(|c| s.lattice.format_class(c)).collect::<Vec<_>>().join(", "))
    }
}

fn tuples_text(v: &[Tuple]) -> String {
    let mut v = v.to_vec();
    v.sort();
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn h(e: impl fmt::Display) -> String {
    e.to_string()
}

fn hirz(c: &DivClass) -> String {
    crate::lattice::IntLattice::hirzebruch(1).format_class(c)
}

/// Replays every computation with a known outcome against the shipped
/// catalog.
pub fn run_all_lemmas() -> LemmaReport {
    run_all_lemmas_with(&default_catalog())
}

pub fn run_all_lemmas_with(cat: &Catalog) -> LemmaReport {
    let mut rp = Replay { cat, entries: Vec::new() };
    let rep = verify_catalog(cat);

    // catalog
    let normal = || rep.surfaces.iter().filter(|s| s.id.starts_with('G'));
    let lines: usize = normal().map(|s| s.lines.passed).sum();
    rp.add("catalog-lines-on-normal-cubics", "every listed line of G1..G15 lies on its surface", "75", Ok(lines.to_string()));
    let (checked, passed) = normal().fold((0, 0), |(c, p), s| (c + s.singular_points.checked, p + s.singular_points.passed));
    rp.add(
        "catalog-singular-points",
        "Jacobian vanishes at every listed singular point of G1..G15",
        "30 of 30",
        Ok(format!("{passed} of {checked}")),
    );
    let neg2 = rep.surfaces.iter().all(|s| s.neg2_classes.all_passed() && s.chain_definiteness.all_passed());
    rp.add("catalog-exceptional-classes", "(-2)-classes have c^2 = -2, c.K = 0 and negative definite chains", "true", Ok(h(neg2)));
    let counts = rep.surfaces.iter().all(|s| s.line_count.all_passed() && s.line_pairs.all_passed());
    rp.add("catalog-line-counts", "G_i carries the expected number of distinct lines", "true", Ok(h(counts)));
    let other = rep.surfaces.iter().all(|s| s.neg1_classes.all_passed() && s.line_classes.all_passed() && s.conductor.all_passed());
    rp.add("catalog-line-classes-and-conductors", "(-1)-classes, line classes and conductor lines check out", "true", Ok(h(other)));

    // curve classes
    let g1 = rp.class_set("G1", &["E6", "H-E1"]);
    let c = rp.all_degree_classes("G1");
    rp.add("curves-G1", "smooth rational curves on G1", g1, c);
    let g2 = rp.class_set("G2", &["E4", "E6", "H-E1", "H-E5", "2H-E1-E2-E5"]);
    let c = rp.all_degree_classes("G2");
    rp.add("curves-G2", "smooth rational curves on G2", g2, c);
    let mut g4: Vec<String> = vec!["E4".into(), "H-E1".into()];
    for i in [5, 6] {
        for t in [
            "E{i}",
            "H-E{i}",
            "2H-E1-E2-E{i}",
            "3H-E1-E2-E3-E4-2E{i}",
            "3H-E1-E2-E3-2E{i}",
            "4H-E1-E2-E3-E4-3E{i}",
            "6H-2E1-2E2-2E3-2E4-4E{i}",
        ] {
            g4.push(t.replace("{i}", &i.to_string()));
        }
    }
    let g4_refs: Vec<&str> = g4.iter().map(String::as_str).collect();
    let g4 = rp.class_set("G4", &g4_refs);
    let c = rp.all_degree_classes("G4");
    rp.add("curves-G4", "smooth rational curves on G4, both values of i", g4, c);
    let g5 = rp.class_set("G5", &["E5", "E6", "H-E1-E6", "H-E1", "H-E6", "3H-E1-E2-E3-E4-E5-2E6"]);
    let c = rp.computed_classes("G5", &[1, 2]);
    rp.add("curves-G5-low-degree", "smooth rational curves of degree at most 2 on G5", g5, c);
    let t = |n| enumerate_tuples(n, 0).map(|v| tuples_text(&v)).map_err(|e| e.to_string());
    let small = t(1).and_then(|a| t(2).map(|b| format!("{a}, {b}")));
    rp.add(
        "tuples-degree-one-and-two",
        "degree and genus equations for n = 1, 2",
        "(1, 0; 0^5, -1), (1, 1; 1^2, 0^4), (1, 2; 1^5, 0), (2, 1; 1, 0^5), (2, 2; 1^4, 0^2), (2, 3; 2, 1^5)",
        small,
    );
    rp.add(
        "tuples-cuspidal-cubic",
        "degree 3 arithmetic genus 1 tuples",
        "(3, 1; 0^6), (3, 2; 1^3, 0^3), (3, 3; 2, 1^4, 0), (3, 4; 2^3, 1^3), (3, 5; 2^6)",
        Ok(tuples_text(&enumerate_tuples_cuspidal())),
    );
    let cusp = cuspidal_candidates(cat, CuspidalProfile::NonnegativeOnly)
        .map(|v| v.iter().map(|c| cat.get("G1").map(|s| s.lattice.format_class(c)).unwrap_or_default()).collect::<Vec<_>>().join(", "))
        .map_err(|e| e.to_string());
    rp.add("cuspidal-cubic-class", "strict transform of a cuspidal cubic on G1", "H", cusp);

    rp.add(
        "blowup-bidegrees",
        "bidegree splittings with determinant ±1",
        "(1, 0, 3, 1), (3, 1, 1, 0)",
        Ok(solve_blowup_bidegrees().iter().map(|t| format!("{t:?}")).collect::<Vec<_>>().join(", ")),
    );

    // ruled models
    let genera = |m: HirzebruchModel, n: i64| -> Result<Vec<i64>, String> {
        Ok(hirzebruch_degree_genus(m, n).map_err(|e| e.to_string())?.iter().map(|r| r.genus).collect())
    };
    let cone = (|| -> Result<String, String> {
        let m = HirzebruchModel::EllipticCone;
        let deg2 = genera(m, 2)?.is_empty();
        let mid = (3..=4).try_fold(true, |acc, n| genera(m, n).map(|g| acc && g == [1]))?;
        let high = (5..=8).try_fold(true, |acc, n| genera(m, n).map(|g| acc && g.iter().all(|&x| x >= 4)))?;
        Ok(format!("degree 2 empty: {deg2}; genus 1 at degrees 3, 4: {mid}; genus >= 4 at degrees 5..8: {high}"))
    })();
    rp.add(
        "elliptic-cone-degree-genus",
        "admissible classes on the resolved elliptic cone by degree",
        "degree 2 empty: true; genus 1 at degrees 3, 4: true; genus >= 4 at degrees 5..8: true",
        cone,
    );
    let f3 = (|| -> Result<String, String> {
        let m = HirzebruchModel::R12;
        let low = (1..=4).try_fold(true, |acc, n| genera(m, n).map(|g| acc && g.iter().all(|&x| x == 0)))?;
        let high = (5..=8).try_fold(true, |acc, n| genera(m, n).map(|g| acc && g.iter().all(|&x| x >= 2)))?;
        Ok(format!("genus 0 at degrees 1..4: {low}; genus >= 2 at degrees 5..8: {high}"))
    })();
    rp.add(
        "ruled-f3-degree-genus",
        "admissible classes on F3 by degree",
        "genus 0 at degrees 1..4: true; genus >= 2 at degrees 5..8: true",
        f3,
    );
    let f1 = HirzebruchModel::R34;
    let deg1 = hirzebruch_degree_genus(f1, 1)
        .map(|v| v.iter().map(|r| hirz(&r.class)).collect::<Vec<_>>().join(", "))
        .map_err(|e| e.to_string());
    rp.add("ruled-f1-lines", "degree-one classes on F1", "f, Sigma", deg1);
    let deg_sum = (1..=8)
        .try_fold(true, |acc, n| {
            hirzebruch_degree_genus(f1, n).map(|v| acc && v.iter().all(|r| r.class.coeffs[0] + r.class.coeffs[1] == n))
        })
        .map(h)
        .map_err(|e| e.to_string());
    rp.add("ruled-f1-degree-formula", "degree of aSigma + bf on F1 equals a + b", "true", deg_sum);

    // euler budget and cubic topology
    let eu = |e: i64, p: i64| {
        euler_of_f(&EulerBudget { eu_s2: e, pa_c: p, n1: 1, n2: 1, n12: 1 }).map(h).map_err(|e| e.to_string())
    };
    rp.add("euler-budget-cone-genus-two", "genus two on the elliptic cone forces eu(F) = 4", "4", eu(1, 2));
    rp.add("euler-budget-minimal", "eu(F) = eu(S2) - 1 at genus 0 with minimal incidence", "2", eu(3, 0));
    let mut dich = true;
    for n1 in 0..=6 {
        for n2 in 0..=6 {
            for n12 in 0..=n1.min(n2) {
                match minimality_dichotomy(n1, n2, n12) {
                    Ok(m) => dich &= m.is_minimal == matches!((n1, n2, n12), (1, 0, 0) | (1, 1, 1)) && m.value >= 1,
                    Err(_) => dich &= n1 == 0,
                }
            }
        }
    }
    rp.add("minimality-dichotomy", "N1 + N2 - N12 = 1 exactly for (1,0,0) and (1,1,1)", "true", Ok(h(dich)));
    let admitted: Vec<_> = plane_cubic_table().into_iter().filter(|t| t.admitted()).map(|t| t.kind.label()).collect();
    rp.add("plane-cubic-admitted-types", "cubics with b1 = 0 and eu >= 2", "CU, L1, QL, L2, L3", Ok(admitted.join(", ")));
    let feas = |b| -> Result<String, String> {
        Ok(feasible_intersections(b)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|(k, m)| format!("({k},{m})"))
            .collect::<Vec<_>>()
            .join(" "))
    };
    rp.add("feasible-intersections-b2-1", "cubic type and #(C∩F) when B2(S2) = 1", "(CU,1) (L1,1) (QL,2) (L2,2) (L3,3)", feas(1));
    rp.add("feasible-intersections-b2-3", "cubic type and #(C∩F) when B2(S2) = 3", "(L3,1)", feas(3));

    // cokernels
    let theta = |id: &str, comps: &[(&str, i64)]| -> Result<String, String> {
        let s = cat.get(id).map_err(|e| e.to_string())?;
        let comps = comps
            .iter()
            .map(|&(c, m)| s.lattice.parse_class(c).map(|c| (c, m)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        coker_theta(cat, id, &comps).map(|o| o.coker.to_string()).map_err(|e| e.to_string())
    };
    rp.add("theta-G1-cuspidal", "Θ-cokernel for the cuspidal section of G1", "Z/3", theta("G1", &[("H", 1)]));
    rp.add("theta-G4-conic-E4", "Θ-cokernel for E4 + (H-E1) on G4", "Z", theta("G4", &[("E4", 1), ("H-E1", 1)]));
    rp.add("theta-G4-conic-Ei", "Θ-cokernel for E5 + (H-E5) on G4", "Z/3", theta("G4", &[("E5", 1), ("H-E5", 1)]));
    rp.add("theta-G5-plane-pencil", "Θ-cokernel for (H-E1-E6) + (H-E1) on G5", "Z/2", theta("G5", &[("H-E1-E6", 1), ("H-E1", 1)]));
    rp.add("theta-G5-double-line", "Θ-cokernel for 2(H-E1-E6) + E6 on G5", "Z/2", theta("G5", &[("H-E1-E6", 2), ("E6", 1)]));
    let accepted = [
        theta("G1", &[("E6", 3)]),
        theta("G2", &[("E4", 1), ("E6", 2)]),
        theta("G4", &[("E4", 1), ("E5", 1), ("E6", 1)]),
        theta("G5", &[("E5", 1), ("H-E6", 1)]),
    ];
    let acc: Result<Vec<String>, String> = accepted.into_iter().collect();
    rp.add("theta-accepted-sections", "Θ-cokernels for the sections of the admitted normal pairs", "0 0 0 0", acc.map(|v| v.join(" ")));
    let (sig, f, sf) = (DivClass::hirzebruch(1, 0), DivClass::hirzebruch(0, 1), DivClass::hirzebruch(1, 1));
    let xi = |d: &[(DivClass, i64)]| coker_xi_r3(d).map(h).map_err(|e| e.to_string());
    rp.add("xi-R3-triple-line", "ξ-cokernel for Sigma + 2f on R3", "Z ⊕ Z/2", xi(&[(sig.clone(), 1), (f.clone(), 2)]));
    rp.add("xi-R3-conic-line", "ξ-cokernel for f + (Sigma + f) on R3", "Z ⊕ Z/2", xi(&[(f.clone(), 1), (sf, 1)]));
    rp.add(
        "xi-R3-concurrent-lines",
        "ξ on Sigma + f + f identifies the two rulings",
        "non-injective",
        coker_xi_r3(&[(sig, 1), (f.clone(), 1), (f, 1)])
            .map(|o| if o.injective { "injective" } else { "non-injective" }.to_string())
            .map_err(|e| e.to_string()),
    );

    // classifier
    let rt = classifier_round_trip(cat);
    rp.add("classifier-admitted-pairs", "twelve admitted pairs accept and every mutation rejects", "12 accepted, 0 leaks", rt);
    let ell = TripleDescriptor {
        curve_genus: 1,
        curve_degree: 3,
        surface_id: "ELLIPTIC_CONE".into(),
        hyperplane: None,
        incidence: (3, 1, 1),
        delta_iso: None,
        sharp_c_cap_s1: 3,
        b2_f: 3,
        curve_class: None,
        vertex_on_s1: true,
        curve_line: None,
    };
    let g2_bad = TripleDescriptor { delta_iso: Some(false), incidence: (2, 1, 1), sharp_c_cap_s1: 2, ..TripleDescriptor::rational("G2", "y", 2, 2) };
    let genus2 = TripleDescriptor { curve_genus: 2, ..TripleDescriptor::rational("G1", "y", 1, 1) };
    let summary = [ell, g2_bad, genus2]
        .iter()
        .map(|d| {
            classify(cat, d).map(|o| format!("{}{}", o.case, o.violated().first().map(|v| format!("[{v}]")).unwrap_or_default()))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(|v| v.join(" "))
        .map_err(|e| e.to_string());
    rp.add(
        "classifier-examples",
        "elliptic cubic on the cone, G2 without H1 isomorphism, genus two",
        "a REJECT[delta-isomorphism] REJECT[genus-at-most-one]",
        summary,
    );
    let ex = verify_example_non_a3(cat).map(|r| {
        r.checks.iter().filter(|c| !c.pass).map(|c| c.id.clone()).collect::<Vec<_>>().join(", ")
    });
    rp.add(
        "example-line-on-cuspidal-cone",
        "the line {x = y = -z} on R1 with S1 = {z = 0}",
        "all checks pass",
        ex.map(|f| if f.is_empty() { "all checks pass".to_string() } else { format!("failed: {f}") }).map_err(|e| e.to_string()),
    );

    let failures = rp.entries.iter().filter(|e| !e.pass).count();
    LemmaReport { schema: REPORT_SCHEMA_VERSION, entries: rp.entries, failures }
}

/// Accept count and number of mutations that were not rejected.
pub fn classifier_round_trip(cat: &Catalog) -> Result<String, String> {
    let mut accepted = 0;
    let mut leaks = Vec::new();
    for r in admitted_pairs() {
        let d = canonical_descriptor(cat, &r).map_err(|e| e.to_string())?;
        let out = classify(cat, &d).map_err(|e| e.to_string())?;
        if out.case == r.case {
            accepted += 1;
        } else {
            leaks.push(format!("{} {} rejected: {:?}", r.hyperplane, r.surface_id, out.violated()));
        }
        for (what, m) in mutations(cat, &r, &d).map_err(|e| e.to_string())? {
            let out = classify(cat, &m).map_err(|e| e.to_string())?;
            if out.case != Case::Reject {
                leaks.push(format!("{} {} accepted with mutated {what}", r.hyperplane, r.surface_id));
            }
        }
    }
    if leaks.is_empty() {
        Ok(format!("{accepted} accepted, 0 leaks"))
    } else {
        Ok(format!("{accepted} accepted, {} leaks: {}", leaks.len(), leaks.join("; ")))
    }
}

impl fmt::Display for PairRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) case {}", self.hyperplane, self.surface_id, self.case)
    }
}
