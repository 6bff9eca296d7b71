//! Exact-arithmetic analysis of elliptic fibrations over the projective
//! line: Weierstrass models and their invariants, Kodaira fiber
//! classification in residue characteristic zero, intersection lattices of
//! singular fibers with boundary-system certificates, higher Chow cycles on
//! Neron polygons, and a hypothesis checker for one-parameter families.
//!
//! Everything is computed over Q or Q(a) with arbitrary-precision rational
//! arithmetic; there is no floating point anywhere in the pipeline.

pub mod chow;
pub mod expr;
pub mod family;
pub mod factor;
pub mod lattice;
pub mod field;
mod intfactor;
mod prs;
pub mod places;
pub mod polynomial;
pub mod tate;
pub mod rational;
pub mod ratfunc;
pub mod weierstrass;

pub use family::{
    family_from_input, model_from_input, Condition, DegenerationReport, EllipticFamily,
    FamilyError, FamilyInput, SpecializationMap, TheoremVerdict, Verdict,
};
pub use factor::{
    rational_roots, squarefree_decomposition, AlgebraError, LinearFactorField, LinearSplit,
    SquarefreeDecomposition,
};
pub use chow::{
    construct_local_cycle, tame_symbol, weil_reciprocity_check, winding_number, ChowError,
    LinePoint, LocalCycle, NeronPolygon, PolygonCycle, PolygonCycleJson,
};
pub use field::{CoefficientField, SquareClass};
pub use lattice::{
    bareiss_determinant, boundary_divisor, kodaira_gram, solve_boundary_system, verify_zariski,
    BoundaryDivisor, BoundarySolution, IntersectionLattice, LatticeError, LatticeJson,
    ZariskiReport,
};
pub use places::{valuation_at, FinitePlace, Place, Valuation};
pub use polynomial::{Polynomial, QPoly};
pub use rational::{parse_rational, rat, rat_int, render_rational, Rational};
pub use tate::{
    classify_fiber, euler_number, fiber_configuration, minimal_model_at, shioda_tate_rank,
    split_test, FiberConfiguration, FiberType, KodairaFiber, SplitClass, TateError,
    UnresolvedPlace,
};
pub use ratfunc::{ParamRat, RationalFunction};
pub use weierstrass::{InvariantSet, ModelInput, QuarticModel, WeierstrassError, WeierstrassModel};
