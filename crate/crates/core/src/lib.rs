//! Exact verification toolkit for compactifications of affine homology
//! 3-cells into blow-ups of P^3 along smooth curves.
//!
//! Everything is exact integer or rational arithmetic. The modules build on
//! each other in order: [`lattice`] and [`poly`] are the arithmetic layer,
//! [`surface_models`] is the surface catalog, [`curve_enum`] and
//! [`homology`] hold the enumeration and cokernel engines, and
//! [`classifier`] sits on top.

pub mod lattice;
pub mod poly;
pub mod surface_models;
pub mod curve_enum;
pub mod homology;
pub mod classifier;
mod qlinalg;

pub use lattice::{arithmetic_genus, coker_of, pair, smith_normal_form, DivClass, FgAbGroup, IntLattice};
pub use poly::{jacobian_vanishes, poly_eval, restrict_to_line, LineP3, MultiPoly, PointP3};
pub use homology::{coker_theta, coker_xi_r3, euler_of_f, feasible_intersections, minimality_dichotomy, plane_cubic_table, EulerBudget, PlaneCubicKind, PlaneCubicType};
pub use classifier::{admitted_pairs, classify, run_all_lemmas, verify_example_non_a3, CaseOutcome, LemmaReport, TripleDescriptor};
