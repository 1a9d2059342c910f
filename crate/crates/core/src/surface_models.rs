//! Surface catalog: the normal cubics G1..G15, the non-normal cubics
//! R1..R4 and the elliptic cone, with their lattice models and
//! self-verification.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{self, pair, BasisKind, DivClass, IntLattice, LatticeError};
use crate::poly::{
    jacobian_vanishes, restrict_to_line, LineMeet, LineP3, MultiPoly, PointP3, PolyError,
};
use crate::qlinalg::q;

/// The catalog that ships with the crate.
pub const DEFAULT_CATALOG: &str = include_str!("../data/catalog.json");
pub const CATALOG_SCHEMA: &str = include_str!("../data/catalog.schema.json");
pub const CATALOG_SCHEMA_VERSION: u32 = 1;

/// Expected number of lines on G1..G15.
pub const EXPECTED_LINE_COUNTS: [usize; 15] = [1, 2, 3, 3, 3, 4, 5, 5, 6, 6, 6, 7, 7, 8, 9];

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog is not valid JSON for the schema: {0}")]
    Schema(#[from] serde_json::Error),
    #[error("unsupported catalog schema version {0}")]
    Version(u32),
    #[error("{surface}: {entry}: {reason}")]
    Entry { surface: String, entry: String, reason: String },
    #[error("{surface}: invariant failed: {entry}")]
    Invariant { surface: String, entry: String },
    #[error("unknown surface `{0}`")]
    UnknownSurface(String),
    #[error("surface `{0}` has no exceptional chain data")]
    NoChain(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

// ---- on-disk representation ----

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawCatalog {
    pub schema: u32,
    pub surfaces: Vec<RawSurface>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFamily {
    pub cubics: [String; 2],
    pub parameter: [i64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPoint {
    pub point: [i64; 4],
    #[serde(rename = "type")]
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLattice {
    pub basis: BasisKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hyperplane_class: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLineClass {
    pub line: [String; 2],
    pub class: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSurface {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<RawFamily>,
    pub normal: bool,
    pub cone: bool,
    pub singular_points: Vec<RawPoint>,
    pub lines: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductor: Option<[String; 2]>,
    pub lattice: RawLattice,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neg2_chains: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub designated_chain: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projection_rule: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neg1_classes: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub line_class_map: Option<Vec<RawLineClass>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<Vec<String>>,
}

// ---- in-memory model ----

/// Pencil `a * cubics[0] + b * cubics[1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicFamily {
    pub cubics: [MultiPoly; 2],
    pub parameter: [i64; 2],
}

impl CubicFamily {
    pub fn member(&self, a: i64, b: i64) -> MultiPoly {
        &self.cubics[0].scale(&q(a)) + &self.cubics[1].scale(&q(b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: PointP3,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pub id: String,
    /// `None` only for the elliptic cone, which is modelled by its lattice alone.
    pub equation: Option<MultiPoly>,
    pub family: Option<CubicFamily>,
    pub normal: bool,
    pub cone: bool,
    pub singular_points: Vec<SingularPoint>,
    pub lines: Vec<LineP3>,
    pub conductor: Option<LineP3>,
    pub lattice: IntLattice,
    /// Class that computes degree in P^3 (the anticanonical class on the
    /// cubic blow-up models).
    pub hyperplane_class: DivClass,
    /// (-2)-classes grouped per singular point, in stored order.
    pub neg2_chains: Vec<Vec<DivClass>>,
    pub designated_chain: Option<usize>,
    pub projection_rule: bool,
    pub neg1_classes: Vec<DivClass>,
    pub line_class_map: Vec<(LineP3, DivClass)>,
    pub flags: Vec<String>,
}

impl SurfaceModel {
    pub fn neg2_classes(&self) -> Vec<DivClass> {
        self.neg2_chains.iter().flatten().cloned().collect()
    }

    pub fn has_lattice_chains(&self) -> bool {
        !self.neg2_chains.is_empty()
    }

    /// Euler number from the singularity labels: a weak del Pezzo cubic has
    /// a resolution with Euler number 9, and a point of Milnor rank r is
    /// replaced by a tree of r rational curves (Euler number r + 1).
    pub fn euler_number(&self) -> Option<i64> {
        if !self.normal || self.equation.is_none() {
            return None;
        }
        let mut eu = 9;
        for s in &self.singular_points {
            eu -= ade_rank(&s.kind)?;
        }
        Some(eu)
    }

    /// Class of a listed line when the catalog records it.
    pub fn line_class(&self, line: &LineP3) -> Option<&DivClass> {
        self.line_class_map
            .iter()
            .find(|(l, _)| l.meet(line) == LineMeet::Same)
            .map(|(_, c)| c)
    }
}

/// Rank of an ADE label such as `A5`, `D4` or `E6`.
pub fn ade_rank(label: &str) -> Option<i64> {
    let (head, tail) = label.split_at(1);
    let n: i64 = tail.parse().ok()?;
    match head {
        "A" if n >= 1 => Some(n),
        "D" if n >= 4 => Some(n),
        "E" if (6..=8).contains(&n) => Some(n),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub surfaces: Vec<SurfaceModel>,
}

impl Catalog {
    pub fn get(&self, id: &str) -> Result<&SurfaceModel, CatalogError> {
        self.surfaces
            .iter()
            .find(|s| s.id == id)
            .ok_or_else(|| CatalogError::UnknownSurface(id.to_string()))
    }

    pub fn get_mut(&mut self, id: &str) -> Result<&mut SurfaceModel, CatalogError> {
        self.surfaces
            .iter_mut()
            .find(|s| s.id == id)
            .ok_or_else(|| CatalogError::UnknownSurface(id.to_string()))
    }

    /// Re-evaluate the G13 pencil at `[a:b]`.
    pub fn set_family_parameter(&mut self, id: &str, a: i64, b: i64) -> Result<(), CatalogError> {
        let s = self.get_mut(id)?;
        let fam = s.family.as_mut().ok_or_else(|| CatalogError::Entry {
            surface: id.into(),
            entry: "family".into(),
            reason: "surface is not a one-parameter family".into(),
        })?;
        if a == 0 && b == 0 {
            return Err(CatalogError::Entry {
                surface: id.into(),
                entry: "family.parameter".into(),
                reason: "[0:0] is not a point of P^1".into(),
            });
        }
        fam.parameter = [a, b];
        s.equation = Some(fam.member(a, b));
        Ok(())
    }

    pub fn to_raw(&self) -> RawCatalog {
        RawCatalog {
            schema: CATALOG_SCHEMA_VERSION,
            surfaces: self.surfaces.iter().map(surface_to_raw).collect(),
        }
    }

    /// JSON in the canonical layout of the shipped file.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self.to_raw()).expect("catalog serializes");
        let mut s = String::new();
        write_canonical(&v, 0, &mut s);
        s.push('\n');
        s
    }
}

/// Two-space indented JSON that keeps arrays of scalars (and arrays of
/// such arrays when short) on one line.
fn write_canonical(v: &serde_json::Value, indent: usize, out: &mut String) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    let flat = |v: &Value| !matches!(v, Value::Array(_) | Value::Object(_));
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            let n = map.len();
            for (i, (k, val)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("string key"));
                out.push_str(": ");
                write_canonical(val, indent + 1, out);
                if i + 1 < n {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items)
            if !items.is_empty()
                && !items.iter().all(flat)
                && !items.iter().all(|x| matches!(x, Value::Array(a) if a.iter().all(flat))) =>
        {
            out.push_str("[\n");
            let n = items.len();
            for (i, val) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_canonical(val, indent + 1, out);
                if i + 1 < n {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Array(items) if items.iter().any(|x| !flat(x)) => {
            // array of scalar arrays: one inner array per line
            out.push_str("[\n");
            let n = items.len();
            for (i, val) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&inline_json(val));
                if i + 1 < n {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        _ => out.push_str(&inline_json(v)),
    }
}

fn inline_json(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline_json).collect();
            format!("[{}]", parts.join(", "))
        }
        _ => serde_json::to_string(v).expect("json"),
    }
}

fn entry_err(surface: &str, entry: impl Into<String>, e: impl ToString) -> CatalogError {
    CatalogError::Entry { surface: surface.into(), entry: entry.into(), reason: e.to_string() }
}

fn class_in(lat: &IntLattice, sid: &str, entry: &str, v: &[i64]) -> Result<DivClass, CatalogError> {
    if v.len() != lat.rank {
        return Err(entry_err(sid, entry, format!("expected {} coefficients, got {}", lat.rank, v.len())));
    }
    Ok(DivClass::new(v.to_vec()))
}

fn parse_line(sid: &str, entry: &str, l: &[String; 2]) -> Result<LineP3, CatalogError> {
    LineP3::parse(&l[0], &l[1]).map_err(|e: PolyError| entry_err(sid, entry, e))
}

fn surface_from_raw(r: &RawSurface) -> Result<SurfaceModel, CatalogError> {
    let sid = r.id.as_str();
    let family = match &r.family {
        Some(f) => {
            let c0 = MultiPoly::parse(&f.cubics[0]).map_err(|e| entry_err(sid, "family.cubics[0]", e))?;
            let c1 = MultiPoly::parse(&f.cubics[1]).map_err(|e| entry_err(sid, "family.cubics[1]", e))?;
            if f.parameter == [0, 0] {
                return Err(entry_err(sid, "family.parameter", "[0:0] is not a point of P^1"));
            }
            Some(CubicFamily { cubics: [c0, c1], parameter: f.parameter })
        }
        None => None,
    };
    let equation = match (&r.equation, &family) {
        (Some(_), Some(_)) => return Err(entry_err(sid, "equation", "both equation and family given")),
        (Some(e), None) => Some(MultiPoly::parse(e).map_err(|err| entry_err(sid, "equation", err))?),
        (None, Some(f)) => Some(f.member(f.parameter[0], f.parameter[1])),
        (None, None) => None,
    };
    let lattice = match r.lattice.basis {
        BasisKind::CubicBlowup => IntLattice::cubic_blowup(),
        BasisKind::Hirzebruch => {
            let d = r.lattice.d.ok_or_else(|| entry_err(sid, "lattice.d", "missing"))?;
            let k = r.lattice.canonical.as_deref().ok_or_else(|| entry_err(sid, "lattice.canonical", "missing"))?;
            if k.len() != 2 {
                return Err(entry_err(sid, "lattice.canonical", "expected 2 coefficients"));
            }
            IntLattice::hirzebruch_with_canonical(d, [k[0], k[1]])
        }
    };
    let hyperplane_class = match &r.lattice.hyperplane_class {
        Some(h) => class_in(&lattice, sid, "lattice.hyperplane_class", h)?,
        None => lattice.anticanonical(),
    };
    let mut singular_points = Vec::new();
    for (i, p) in r.singular_points.iter().enumerate() {
        let point = PointP3::from_ints(p.point).map_err(|e| entry_err(sid, format!("singular_points[{i}]"), e))?;
        singular_points.push(SingularPoint { point, kind: p.kind.clone() });
    }
    let lines = r
        .lines
        .iter()
        .enumerate()
        .map(|(i, l)| parse_line(sid, &format!("lines[{i}]"), l))
        .collect::<Result<Vec<_>, _>>()?;
    let conductor = r.conductor.as_ref().map(|l| parse_line(sid, "conductor", l)).transpose()?;
    let mut neg2_chains = Vec::new();
    for (i, ch) in r.neg2_chains.iter().flatten().enumerate() {
        let mut group = Vec::new();
        for (j, c) in ch.iter().enumerate() {
            group.push(class_in(&lattice, sid, &format!("neg2_chains[{i}][{j}]"), c)?);
        }
        neg2_chains.push(group);
    }
    if let Some(d) = r.designated_chain {
        if d >= neg2_chains.len() {
            return Err(entry_err(sid, "designated_chain", "index out of range"));
        }
    }
    let neg1_classes = r
        .neg1_classes
        .iter()
        .flatten()
        .enumerate()
        .map(|(i, c)| class_in(&lattice, sid, &format!("neg1_classes[{i}]"), c))
        .collect::<Result<Vec<_>, _>>()?;
    let mut line_class_map = Vec::new();
    for (i, m) in r.line_class_map.iter().flatten().enumerate() {
        let l = parse_line(sid, &format!("line_class_map[{i}].line"), &m.line)?;
        line_class_map.push((l, class_in(&lattice, sid, &format!("line_class_map[{i}].class"), &m.class)?));
    }
    Ok(SurfaceModel {
        id: r.id.clone(),
        equation,
        family,
        normal: r.normal,
        cone: r.cone,
        singular_points,
        lines,
        conductor,
        lattice,
        hyperplane_class,
        neg2_chains,
        designated_chain: r.designated_chain,
        projection_rule: r.projection_rule.unwrap_or(false),
        neg1_classes,
        line_class_map,
        flags: r.flags.clone().unwrap_or_default(),
    })
}

fn line_to_raw(l: &LineP3) -> [String; 2] {
    [l.forms[0].to_string(), l.forms[1].to_string()]
}

fn surface_to_raw(s: &SurfaceModel) -> RawSurface {
    let hirz = s.lattice.basis_kind == BasisKind::Hirzebruch;
    let opt_vec = |v: &Vec<DivClass>| -> Option<Vec<Vec<i64>>> {
        (!v.is_empty()).then(|| v.iter().map(|c| c.coeffs.clone()).collect())
    };
    RawSurface {
        id: s.id.clone(),
        equation: if s.family.is_some() { None } else { s.equation.as_ref().map(ToString::to_string) },
        family: s.family.as_ref().map(|f| RawFamily {
            cubics: [f.cubics[0].to_string(), f.cubics[1].to_string()],
            parameter: f.parameter,
        }),
        normal: s.normal,
        cone: s.cone,
        singular_points: s
            .singular_points
            .iter()
            .map(|p| RawPoint { point: p.point.to_ints().expect("integral point"), kind: p.kind.clone() })
            .collect(),
        lines: s.lines.iter().map(line_to_raw).collect(),
        conductor: s.conductor.as_ref().map(line_to_raw),
        lattice: RawLattice {
            basis: s.lattice.basis_kind,
            d: hirz.then(|| -s.lattice.gram[0][0]),
            canonical: hirz.then(|| s.lattice.canonical_class.coeffs.clone()),
            hyperplane_class: hirz.then(|| s.hyperplane_class.coeffs.clone()),
        },
        neg2_chains: (!s.neg2_chains.is_empty())
            .then(|| s.neg2_chains.iter().map(|g| g.iter().map(|c| c.coeffs.clone()).collect()).collect()),
        designated_chain: s.designated_chain,
        projection_rule: (!s.neg2_chains.is_empty()).then_some(s.projection_rule),
        neg1_classes: if s.neg2_chains.is_empty() { None } else { Some(opt_vec(&s.neg1_classes).unwrap_or_default()) },
        line_class_map: if s.neg2_chains.is_empty() {
            None
        } else {
            Some(
                s.line_class_map
                    .iter()
                    .map(|(l, c)| RawLineClass { line: line_to_raw(l), class: c.coeffs.clone() })
                    .collect(),
            )
        },
        flags: (!s.flags.is_empty()).then(|| s.flags.clone()),
    }
}

/// Parse and build the catalog without running the geometric checks.
pub fn parse_catalog(json: &str) -> Result<Catalog, CatalogError> {
    let raw: RawCatalog = serde_json::from_str(json)?;
    if raw.schema != CATALOG_SCHEMA_VERSION {
        return Err(CatalogError::Version(raw.schema));
    }
    let mut seen = BTreeMap::new();
    let mut surfaces = Vec::new();
    for r in &raw.surfaces {
        if seen.insert(r.id.clone(), ()).is_some() {
            return Err(entry_err(&r.id, "id", "duplicate surface id"));
        }
        surfaces.push(surface_from_raw(r)?);
    }
    Ok(Catalog { surfaces })
}

/// Parse, build and verify; the first failing check becomes the error.
pub fn load_catalog(json: &str) -> Result<Catalog, CatalogError> {
    let cat = parse_catalog(json)?;
    let report = verify_catalog(&cat);
    if let Some((sid, entry)) = report.first_failure() {
        return Err(CatalogError::Invariant { surface: sid, entry });
    }
    Ok(cat)
}

pub fn default_catalog() -> Catalog {
    load_catalog(DEFAULT_CATALOG).expect("shipped catalog verifies")
}

// ---- verification ----

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckCount {
    pub checked: usize,
    pub passed: usize,
}

impl CheckCount {
    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checked == self.passed
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub id: String,
    pub lines: CheckCount,
    pub singular_points: CheckCount,
    pub line_pairs: CheckCount,
    pub neg2_classes: CheckCount,
    pub neg1_classes: CheckCount,
    pub chain_definiteness: CheckCount,
    pub line_classes: CheckCount,
    pub conductor: CheckCount,
    pub line_count: CheckCount,
    pub failures: Vec<String>,
    pub flags: Vec<String>,
}

impl SurfaceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CatalogReport {
    pub surfaces: Vec<SurfaceReport>,
    pub total_line_checks: usize,
    pub total_singular_checks: usize,
    pub total_neg2_checks: usize,
    pub failures: usize,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn first_failure(&self) -> Option<(String, String)> {
        self.surfaces
            .iter()
            .find_map(|s| s.failures.first().map(|f| (s.id.clone(), f.clone())))
    }

    pub fn surface(&self, id: &str) -> Option<&SurfaceReport> {
        self.surfaces.iter().find(|s| s.id == id)
    }
}

fn verify_surface(s: &SurfaceModel) -> SurfaceReport {
    let mut rep = SurfaceReport { id: s.id.clone(), flags: s.flags.clone(), ..Default::default() };
    let lat = &s.lattice;
    let k = &lat.canonical_class;

    if let Some(eq) = &s.equation {
        if eq.homogeneous_degree() != Some(3) {
            rep.failures.push(format!("equation `{eq}` is not a cubic form"));
        }
        for l in &s.lines {
            let ok = restrict_to_line(eq, l).is_zero();
            rep.lines.record(ok);
            if !ok {
                rep.failures.push(format!("line {l} does not lie on the surface"));
            }
        }
        for p in &s.singular_points {
            let ok = jacobian_vanishes(eq, &p.point);
            rep.singular_points.record(ok);
            if !ok {
                rep.failures.push(format!("point {} ({}) is not singular", p.point, p.kind));
            }
        }
        if let Some(c) = &s.conductor {
            // a cubic restricted to a line is determined by 4 values; 5 gives margin
            let samples = c.sample_points(&[(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)]);
            let ok = samples.iter().all(|p| jacobian_vanishes(eq, p));
            rep.conductor.record(ok);
            if !ok {
                rep.failures.push(format!("conductor {c} is not in the singular locus"));
            }
        }
    } else if !s.lines.is_empty() || !s.singular_points.is_empty() {
        rep.failures.push("lines or points listed without an equation".into());
    }

    for (i, a) in s.lines.iter().enumerate() {
        for b in &s.lines[i + 1..] {
            let ok = a.meet(b) != LineMeet::Same;
            rep.line_pairs.record(ok);
            if !ok {
                rep.failures.push(format!("lines {a} and {b} coincide"));
            }
        }
    }

    if let Some(i) = s.id.strip_prefix('G').and_then(|n| n.parse::<usize>().ok()) {
        if (1..=15).contains(&i) {
            let ok = s.lines.len() == EXPECTED_LINE_COUNTS[i - 1];
            rep.line_count.record(ok);
            if !ok {
                rep.failures.push(format!(
                    "expected {} lines, catalog lists {}",
                    EXPECTED_LINE_COUNTS[i - 1],
                    s.lines.len()
                ));
            }
        }
    }

    for c in s.neg2_classes() {
        let ok = pair(lat, &c, &c).ok() == Some(-2) && pair(lat, &c, k).ok() == Some(0);
        rep.neg2_classes.record(ok);
        if !ok {
            rep.failures.push(format!("{} is not a (-2)-class", lat.format_class(&c)));
        }
    }
    for ch in &s.neg2_chains {
        let ok = lattice::is_negative_definite(lat, ch).unwrap_or(false);
        rep.chain_definiteness.record(ok);
        if !ok {
            let names: Vec<String> = ch.iter().map(|c| lat.format_class(c)).collect();
            rep.failures.push(format!("chain [{}] is not negative definite", names.join(", ")));
        }
    }
    for c in &s.neg1_classes {
        let ok = pair(lat, c, c).ok() == Some(-1) && pair(lat, c, k).ok() == Some(-1);
        rep.neg1_classes.record(ok);
        if !ok {
            rep.failures.push(format!("{} is not a (-1)-class", lat.format_class(c)));
        }
    }
    for (l, c) in &s.line_class_map {
        let listed = s.lines.iter().any(|m| m.meet(l) == LineMeet::Same);
        let ok = listed && pair(lat, c, &s.hyperplane_class).ok() == Some(1);
        rep.line_classes.record(ok);
        if !ok {
            rep.failures.push(format!("line class {} for {l} is inconsistent", lat.format_class(c)));
        }
    }
    rep
}

pub fn verify_catalog(cat: &Catalog) -> CatalogReport {
    let mut out = CatalogReport::default();
    for s in &cat.surfaces {
        let r = verify_surface(s);
        out.total_line_checks += r.lines.checked;
        out.total_singular_checks += r.singular_points.checked;
        out.total_neg2_checks += r.neg2_classes.checked;
        out.failures += r.failures.len();
        out.surfaces.push(r);
    }
    out
}

/// Intersection profile of a class with the designated exceptional chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainProfile {
    pub m: i64,
    pub chain_hits: Vec<i64>,
}

pub fn exceptional_chain_profile(
    cat: &Catalog,
    surface_id: &str,
    class: &DivClass,
) -> Result<ChainProfile, CatalogError> {
    let s = cat.get(surface_id)?;
    let idx = s.designated_chain.ok_or_else(|| CatalogError::NoChain(surface_id.into()))?;
    let mut hits = Vec::new();
    for c in &s.neg2_chains[idx] {
        hits.push(pair(&s.lattice, class, c)?);
    }
    Ok(ChainProfile { m: hits.iter().sum(), chain_hits: hits })
}
