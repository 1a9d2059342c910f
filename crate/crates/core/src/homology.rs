//! Euler-number budgets, plane-cubic topology and the two cokernel tests
//! that rule out boundary configurations.
//!
//! Notation: `C` is the blown-up curve, `S1` the hyperplane, `S2` the cubic
//! surface and `F = S1 ∩ S2` the plane cubic where they meet. `N1`, `N2`
//! and `N12` count the points of `C` on `S1`, on `S2` and on both.

use std::fmt;

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;
use thiserror::Error;

use crate::curve_enum::HirzebruchModel;
use crate::lattice::{coker_of, generator_matrix, pair, BasisKind, DivClass, FgAbGroup, LatticeError};
use crate::qlinalg::{self, q};
use crate::surface_models::{Catalog, CatalogError};

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("point counts (N1, N2, N12) = ({0}, {1}, {2}) need N1 >= 1 and 0 <= N12 <= min(N1, N2)")]
    Counts(i64, i64, i64),
    #[error("arithmetic genus must be nonnegative, got {0}")]
    Genus(i64),
    #[error("B2(S2) must lie in 1..=3, got {0}")]
    B2OutOfRange(i64),
    #[error("multiplicity must be positive, got {0}")]
    Multiplicity(i64),
    #[error("surface `{0}` has no cubic blow-up lattice")]
    WrongBasis(String),
    #[error("components sum to {sum}, which differs from {target} by {residual}")]
    NotAnticanonical { sum: String, target: String, residual: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn check_counts(n1: i64, n2: i64, n12: i64) -> Result<(), HomologyError> {
    if n1 < 1 || n2 < 0 || n12 < 0 || n12 > n1.min(n2) {
        return Err(HomologyError::Counts(n1, n2, n12));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EulerBudget {
    pub eu_s2: i64,
    pub pa_c: i64,
    pub n1: i64,
    pub n2: i64,
    pub n12: i64,
}

impl EulerBudget {
    pub fn validate(&self) -> Result<(), HomologyError> {
        if self.pa_c < 0 {
            return Err(HomologyError::Genus(self.pa_c));
        }
        check_counts(self.n1, self.n2, self.n12)
    }
}

/// `eu(F) = eu(S2) + 2 p_a(C) + N1 + N2 - N12 - 2`.
pub fn euler_of_f(budget: &EulerBudget) -> Result<i64, HomologyError> {
    budget.validate()?;
    Ok(budget.eu_s2 + 2 * budget.pa_c + budget.n1 + budget.n2 - budget.n12 - 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Minimality {
    pub value: i64,
    pub is_minimal: bool,
    /// The profile itself when it is one of the two minimal ones.
    pub minimal_profile: Option<(i64, i64, i64)>,
}

/// `N1 + N2 - N12` is at least 1 and equals 1 exactly for the profiles
/// (1, 0, 0) and (1, 1, 1).
pub fn minimality_dichotomy(n1: i64, n2: i64, n12: i64) -> Result<Minimality, HomologyError> {
    check_counts(n1, n2, n12)?;
    let value = n1 + n2 - n12;
    let is_minimal = value == 1;
    Ok(Minimality {
        value,
        is_minimal,
        minimal_profile: is_minimal.then_some((n1, n2, n12)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum PlaneCubicKind {
    #[serde(rename = "SMOOTH")]
    Smooth,
    #[serde(rename = "NODAL")]
    Nodal,
    #[serde(rename = "CU")]
    Cuspidal,
    #[serde(rename = "L1")]
    TripleLine,
    #[serde(rename = "QL")]
    ConicTangentLine,
    #[serde(rename = "L2")]
    LinePlusDoubleLine,
    #[serde(rename = "L3")]
    ThreeConcurrentLines,
    #[serde(rename = "TRIANGLE")]
    Triangle,
    #[serde(rename = "CONIC_TRANSVERSE_LINE")]
    ConicTransverseLine,
}

impl PlaneCubicKind {
    pub const ALL: [PlaneCubicKind; 9] = [
        Self::Smooth,
        Self::Nodal,
        Self::Cuspidal,
        Self::TripleLine,
        Self::ConicTangentLine,
        Self::LinePlusDoubleLine,
        Self::ThreeConcurrentLines,
        Self::Triangle,
        Self::ConicTransverseLine,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Self::Smooth => "SMOOTH",
            Self::Nodal => "NODAL",
            Self::Cuspidal => "CU",
            Self::TripleLine => "L1",
            Self::ConicTangentLine => "QL",
            Self::LinePlusDoubleLine => "L2",
            Self::ThreeConcurrentLines => "L3",
            Self::Triangle => "TRIANGLE",
            Self::ConicTransverseLine => "CONIC_TRANSVERSE_LINE",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.label().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for PlaneCubicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Topology of the reduced support of a plane cubic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlaneCubicType {
    pub kind: PlaneCubicKind,
    pub eu: i64,
    pub b1: i64,
    pub b2: i64,
}

impl PlaneCubicType {
    /// A boundary cubic must have no first homology and Euler number >= 2.
    pub fn admitted(&self) -> bool {
        self.b1 == 0 && self.eu >= 2
    }
}

pub fn plane_cubic_table() -> Vec<PlaneCubicType> {
    use PlaneCubicKind::*;
    let row = |kind, eu, b1, b2| PlaneCubicType { kind, eu, b1, b2 };
    vec![
        row(Smooth, 0, 2, 1),
        row(Nodal, 1, 1, 1),
        row(Cuspidal, 2, 0, 1),
        row(TripleLine, 2, 0, 1),
        row(ConicTangentLine, 3, 0, 2),
        row(LinePlusDoubleLine, 3, 0, 2),
        row(ThreeConcurrentLines, 4, 0, 3),
        row(Triangle, 3, 1, 3),
        row(ConicTransverseLine, 2, 1, 2),
    ]
}

pub fn plane_cubic_type(kind: PlaneCubicKind) -> PlaneCubicType {
    plane_cubic_table()
        .into_iter()
        .find(|t| t.kind == kind)
        .expect("table covers every kind")
}

/// Admitted cubic types with `#(C ∩ F) = B2(F) - B2(S2) + 1 >= 1`.
pub fn feasible_intersections(b2_s2: i64) -> Result<Vec<(PlaneCubicKind, i64)>, HomologyError> {
    if !(1..=3).contains(&b2_s2) {
        return Err(HomologyError::B2OutOfRange(b2_s2));
    }
    Ok(plane_cubic_table()
        .into_iter()
        .filter(PlaneCubicType::admitted)
        .map(|t| (t.kind, t.b2 - b2_s2 + 1))
        .filter(|&(_, m)| m >= 1)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaOutcome {
    pub coker: FgAbGroup,
    /// Coefficients of `-K - sum m_i C_i` on the surface's (-2)-classes.
    pub residual: Vec<i64>,
}

impl ThetaOutcome {
    pub fn admissible(&self) -> bool {
        self.coker.is_trivial()
    }
}

/// Cokernel of the span of the components of `F` and the exceptional
/// (-2)-classes in the Picard lattice of the resolved surface.
///
/// The components with their multiplicities must add up to `-K` up to a
/// nonnegative integral combination of (-2)-classes, since `F` is a
/// hyperplane section.
pub fn coker_theta(cat: &Catalog, surface_id: &str, components: &[(DivClass, i64)]) -> Result<ThetaOutcome, HomologyError> {
    let s = cat.get(surface_id)?;
    if s.lattice.basis_kind != BasisKind::CubicBlowup {
        return Err(HomologyError::WrongBasis(surface_id.to_string()));
    }
    if !s.has_lattice_chains() {
        return Err(CatalogError::NoChain(surface_id.to_string()).into());
    }
    let lat = &s.lattice;
    let exc = s.neg2_classes();
    let target = lat.anticanonical();
    let mut sum = DivClass::zero(lat.rank);
    for (c, m) in components {
        if *m < 1 {
            return Err(HomologyError::Multiplicity(*m));
        }
        if c.len() != lat.rank {
            return Err(LatticeError::DimensionMismatch { expected: lat.rank, got: c.len() }.into());
        }
        sum = &sum + &c.scale(*m);
    }
    let rest = &target - &sum;
    let mismatch = || HomologyError::NotAnticanonical {
        sum: lat.format_class(&sum),
        target: lat.format_class(&target),
        residual: lat.format_class(&rest),
    };

    // (-2)-classes are independent, so the Gram system pins the coefficients
    let gram = exc
        .iter()
        .map(|a| exc.iter().map(|b| pair(lat, a, b)).collect())
        .collect::<Result<Vec<Vec<i64>>, _>>()?;
    let rhs = exc.iter().map(|c| pair(lat, &rest, c)).collect::<Result<Vec<i64>, _>>()?;
    let inv = qlinalg::inverse(&qlinalg::from_i64(&gram)).ok_or_else(mismatch)?;
    let mut residual = Vec::with_capacity(exc.len());
    for row in &inv {
        let x: num_rational::BigRational = row.iter().zip(&rhs).map(|(a, &b)| a * q(b)).sum();
        if !qlinalg::is_integral(&x) || x.is_negative() {
            return Err(mismatch());
        }
        residual.push(x.to_integer().to_i64().ok_or(LatticeError::Overflow)?);
    }
    let mut back = DivClass::zero(lat.rank);
    for (c, &x) in exc.iter().zip(&residual) {
        back = &back + &c.scale(x);
    }
    if back != rest {
        return Err(mismatch());
    }

    let mut gens: Vec<DivClass> = Vec::new();
    for (c, _) in components {
        if !gens.contains(c) {
            gens.push(c.clone());
        }
    }
    gens.extend(exc);
    Ok(ThetaOutcome { coker: coker_of(&gens, lat.rank)?, residual })
}

/// Second homology of the surface obtained from the ruled model over F1 by
/// contracting the minimal section. Basis `[E]`, `μ*[f]`; the relation
/// `[Σ] + [f] ↦ 2[E]` gives `μ*[Σ] = 2[E] - μ*[f]`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct H2ModelR3;

impl H2ModelR3 {
    /// Image of `aΣ + bf`.
    pub fn pushforward(&self, class: &DivClass) -> Result<[i64; 2], LatticeError> {
        match class.coeffs.as_slice() {
            &[a, b] => Ok([2 * a, b - a]),
            c => Err(LatticeError::DimensionMismatch { expected: 2, got: c.len() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiOutcome {
    /// `(plane degree; pushforward)` per component.
    pub images: Vec<[i64; 3]>,
    pub injective: bool,
    pub coker: FgAbGroup,
}

impl XiOutcome {
    pub fn admissible(&self) -> bool {
        self.injective && self.coker == FgAbGroup::from_cyclic(1, &[])
    }
}

impl fmt::Display for XiOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.injective {
            write!(f, "{}", self.coker)
        } else {
            write!(f, "non-injective (coker {})", self.coker)
        }
    }
}

/// Cokernel of `ξ` into `H2(S1) ⊕ H2(S2) = Z ⊕ Z^2`. Each component
/// contributes one generator regardless of multiplicity; the weighted sum
/// must be the hyperplane pullback `Σ + 2f`.
pub fn coker_xi_r3(decomposition: &[(DivClass, i64)]) -> Result<XiOutcome, HomologyError> {
    let model = HirzebruchModel::R34;
    let lat = model.lattice();
    let h = model.hyperplane();
    let mut sum = DivClass::zero(2);
    let mut images = Vec::with_capacity(decomposition.len());
    for (c, m) in decomposition {
        if *m < 1 {
            return Err(HomologyError::Multiplicity(*m));
        }
        let [e, f] = H2ModelR3.pushforward(c)?;
        images.push([pair(&lat, c, &h)?, e, f]);
        sum = &sum + &c.scale(*m);
    }
    if sum != h {
        return Err(HomologyError::NotAnticanonical {
            sum: lat.format_class(&sum),
            target: lat.format_class(&h),
            residual: lat.format_class(&(&h - &sum)),
        });
    }
    let gens: Vec<DivClass> = images.iter().map(|v| DivClass::new(v.to_vec())).collect();
    let rank = qlinalg::rank(&qlinalg::from_i64(&generator_matrix(&gens, 3)?));
    Ok(XiOutcome {
        injective: rank == gens.len(),
        coker: coker_of(&gens, 3)?,
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface_models::default_catalog;

    fn c(s: &str) -> DivClass {
        crate::lattice::IntLattice::cubic_blowup().parse_class(s).unwrap()
    }

    fn theta(id: &str, comps: &[(&str, i64)]) -> ThetaOutcome {
        let comps: Vec<_> = comps.iter().map(|&(s, m)| (c(s), m)).collect();
        coker_theta(&default_catalog(), id, &comps).unwrap()
    }

    fn budget(eu_s2: i64, pa_c: i64, n: (i64, i64, i64)) -> EulerBudget {
        EulerBudget { eu_s2, pa_c, n1: n.0, n2: n.1, n12: n.2 }
    }

    #[test]
    fn euler_budget_examples() {
        assert_eq!(euler_of_f(&budget(3, 0, (1, 1, 1))).unwrap(), 2);
        assert_eq!(euler_of_f(&budget(1, 1, (1, 1, 1))).unwrap(), 2);
        // a genus-2 curve on the elliptic cone would need eu(F) = 4
        assert_eq!(euler_of_f(&budget(1, 2, (1, 1, 1))).unwrap(), 4);
        assert!(euler_of_f(&budget(1, 0, (0, 0, 0))).is_err());
        assert!(euler_of_f(&budget(1, 0, (1, 0, 1))).is_err());
        assert!(euler_of_f(&budget(1, -1, (1, 0, 0))).is_err());
    }

    #[test]
    fn dichotomy_examples() {
        let m = minimality_dichotomy(1, 0, 0).unwrap();
        assert_eq!((m.value, m.is_minimal, m.minimal_profile), (1, true, Some((1, 0, 0))));
        assert!(minimality_dichotomy(1, 1, 1).unwrap().is_minimal);
        let m = minimality_dichotomy(2, 1, 1).unwrap();
        assert_eq!((m.value, m.is_minimal, m.minimal_profile), (2, false, None));
        assert!(minimality_dichotomy(1, 2, 3).is_err());
    }

    #[test]
    fn feasible_rows() {
        use PlaneCubicKind::*;
        assert_eq!(
            feasible_intersections(1).unwrap(),
            vec![(Cuspidal, 1), (TripleLine, 1), (ConicTangentLine, 2), (LinePlusDoubleLine, 2), (ThreeConcurrentLines, 3)]
        );
        assert_eq!(
            feasible_intersections(2).unwrap(),
            vec![(ConicTangentLine, 1), (LinePlusDoubleLine, 1), (ThreeConcurrentLines, 2)]
        );
        assert_eq!(feasible_intersections(3).unwrap(), vec![(ThreeConcurrentLines, 1)]);
        assert!(feasible_intersections(4).is_err());
        assert!(feasible_intersections(0).is_err());
    }

    #[test]
    fn admitted_types() {
        let admitted: Vec<_> = plane_cubic_table().into_iter().filter(|t| t.admitted()).map(|t| t.kind.label()).collect();
        assert_eq!(admitted, ["CU", "L1", "QL", "L2", "L3"]);
        assert_eq!(PlaneCubicKind::parse("ql"), Some(PlaneCubicKind::ConicTangentLine));
    }

    #[test]
    fn rejecting_theta_cokernels() {
        assert_eq!(theta("G1", &[("H", 1)]).coker.to_string(), "Z/3");
        assert_eq!(theta("G4", &[("E4", 1), ("H-E1", 1)]).coker.to_string(), "Z");
        assert_eq!(theta("G4", &[("E5", 1), ("H-E5", 1)]).coker.to_string(), "Z/3");
        assert_eq!(theta("G4", &[("E6", 1), ("H-E6", 1)]).coker.to_string(), "Z/3");
        assert_eq!(theta("G5", &[("H-E1-E6", 1), ("H-E1", 1)]).coker.to_string(), "Z/2");
        assert_eq!(theta("G5", &[("H-E1-E6", 2), ("E6", 1)]).coker.to_string(), "Z/2");
    }

    #[test]
    fn accepted_sections_have_trivial_theta() {
        // {y=0} on G1: triple line
        assert!(theta("G1", &[("E6", 3)]).admissible());
        // {y=0} on G2: <x,y> + 2<y,z>
        assert!(theta("G2", &[("E4", 1), ("E6", 2)]).admissible());
        // {y=0} on G4: three lines through the A5 point
        assert!(theta("G4", &[("E4", 1), ("E5", 1), ("E6", 1)]).admissible());
        // {z=γy} on G5: line <y,z> and a tangent conic
        assert!(theta("G5", &[("E5", 1), ("H-E6", 1)]).admissible());
    }

    #[test]
    fn theta_residuals() {
        assert_eq!(theta("G1", &[("H", 1)]).residual, vec![1, 2, 3, 2, 1, 2]);
        let cat = default_catalog();
        let err = coker_theta(&cat, "G5", &[(c("E5"), 1), (c("H-E1"), 1)]).unwrap_err();
        assert!(matches!(err, HomologyError::NotAnticanonical { .. }));
        assert!(coker_theta(&cat, "G9", &[(c("H"), 1)]).is_err());
        assert!(coker_theta(&cat, "R1", &[(c("H"), 1)]).is_err());
        assert!(coker_theta(&cat, "G1", &[(c("H"), 0)]).is_err());
    }

    #[test]
    fn xi_cases() {
        let sigma = DivClass::hirzebruch(1, 0);
        let f = DivClass::hirzebruch(0, 1);
        let sf = DivClass::hirzebruch(1, 1);
        let l1 = coker_xi_r3(&[(sigma.clone(), 1), (f.clone(), 2)]).unwrap();
        assert!(l1.injective);
        assert_eq!(l1.coker.to_string(), "Z ⊕ Z/2");
        let ql = coker_xi_r3(&[(f.clone(), 1), (sf, 1)]).unwrap();
        assert_eq!(ql.coker.to_string(), "Z ⊕ Z/2");
        assert!(!ql.admissible());
        let l3 = coker_xi_r3(&[(sigma.clone(), 1), (f.clone(), 1), (f.clone(), 1)]).unwrap();
        assert!(!l3.injective);
        assert_eq!(l3.images[1], l3.images[2]);
        assert!(l3.to_string().starts_with("non-injective"));
        assert!(coker_xi_r3(&[(sigma, 1), (f, 1)]).is_err());
    }

    #[test]
    fn pushforward_relation() {
        let m = H2ModelR3;
        assert_eq!(m.pushforward(&DivClass::hirzebruch(1, 1)).unwrap(), [2, 0]);
        assert_eq!(m.pushforward(&DivClass::hirzebruch(1, 0)).unwrap(), [2, -1]);
        assert!(m.pushforward(&DivClass::zero(7)).is_err());
    }
}
