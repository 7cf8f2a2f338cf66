//! Polyanalytic Hermite-type polynomial families for a general Gaussian
//! kernel `exp(-nu z zb + alpha z^2 + xi z)`.
//!
//! The crate provides:
//!
//! * exact sparse polynomial algebra over `(z, zb, xi)` ([`poly`]) and a
//!   polynomial-times-Gaussian calculus ([`gauss`]);
//! * six independent constructions of the family `I_n` ([`constructors`])
//!   plus the univariate and two-index Hermite building blocks ([`hermite`]);
//! * symbolic and numeric verification of the family's identity lattice —
//!   derivative ladders, PDE eigenrelations, convolution and generating
//!   function identities ([`identities`]);
//! * Gauss–Hermite quadrature and planar Gaussian integration
//!   ([`quadrature`]) with closed-form Gram matrix checks ([`orthogonality`]);
//! * integral-representation and transform evaluators ([`transforms`]);
//! * the rank-one automorphic subfamily on the period strip ([`automorphic`]);
//! * seeded parameter sampling and the acceptance criteria runner ([`suite`]).

// Guards spelled `!(x > 0.0)` are deliberate throughout: unlike `x <= 0.0`
// they also reject NaN, which is exactly what a domain check is for.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod automorphic;
pub mod constructors;
pub mod gauss;
pub mod hermite;
pub mod identities;
pub mod orthogonality;
pub mod params;
pub mod poly;
pub mod quadrature;
pub mod suite;
pub mod transforms;

pub use automorphic::{
    build_psi, check_eigen_strip, check_functional_eq, gram_strip, strip_inner_product,
    strip_norm_closed_form, AutoParams, PsiFunction,
};
pub use constructors::{
    assemble_components, build_explicit_hermite, build_holo_components, build_operational,
    build_recurrence, build_recurrence_all, build_rodrigues, build_rodrigues_second, build_tensor,
    eval_at, eval_sequence, linear_form, BuildError,
};
pub use gauss::{GaussError, GaussPoly, QuadForm};
pub use hermite::{
    complex_hermite, hermite, hermite_function, hermite_of_poly, hermite_rescaled, hermite_value,
    HermiteError,
};
pub use identities::{
    spread_points, verify_derivative_identities, verify_generating_functions, verify_nielsen,
    verify_pde, verify_polyanalytic_order, GenFunKind, IdentityReport, PerIndex,
};
pub use orthogonality::{
    gram_basic, gram_general, gram_holomorphic, gram_i0alpha, GramError, GramReport, WeightAB,
};
pub use params::ParamSet;
pub use poly::{coeff_deviation, poly_equal, PolyTerm, TriPoly, Var};
pub use quadrature::{
    gauss_hermite, gaussian_moment, integrate_plane_poly, PlaneGaussianSpec, QuadError,
    QuadratureRule,
};
pub use suite::{run_all, seed_from_env, seeded_rng, CriterionResult, DEFAULT_SEED};
pub use transforms::{
    fourier_wigner, intrep_plane, intrep_real, mehler_kernel, verify_complex_hermite_intrep,
    TransformError, TransformResult,
};
