//! Exact invariants of compact quaternionic Shimura surfaces.
//!
//! Everything here is integer or rational arithmetic; no floating point is
//! used anywhere. The crate computes, for a quaternion algebra of
//! discriminant `D` over a real quadratic field and an order of reduced
//! discriminant `d0(Lambda)`:
//!
//! * covolumes, orbifold Euler numbers, and arithmetic genera,
//! * component counts `f_N` of the modular curves `F_N`,
//! * special-point counts `s(phi)` attached to positive definite binary
//!   quadratic forms, and the elliptic-point inventory derived from them,
//! * a brute-force oracle over an explicit quaternary lattice that
//!   cross-checks the local representability criteria,
//! * a small intersection calculus on resolved surfaces (blow-ups,
//!   involution quotients, adjunction, classification certificates).
//!
//! The bundled fixtures describe the smallest compact example, over
//! `Q(sqrt 13)` with an order of reduced discriminant 3, and reproduce the
//! full classification of the four surfaces in its tower of quotients.

pub mod arith;
pub mod fixtures;
pub mod forms;
pub mod invariants;
pub mod lattice;
pub mod surface;

pub use arith::{
    factorize, hilbert, hilbert_int, kronecker, sigma1, valuation, ArithError, Place, Rational,
};
pub use forms::{
    alpha_p, automorphism_count, class_number, content_split, enumerate_classes,
    equivalent_proper, h_prime, is_anisotropic_p, BinaryForm, ContentSplit, FormError,
};
pub use invariants::{
    a_beta_splits_at_p, a_dp, arithmetic_genus, chi_dp, count_elliptic, covolume,
    elliptic_form_survey, elliptic_point_classes, euler_orbifold, f_n, first_local_obstruction,
    is_fundamental_discriminant, kappa, lambda_beta_discriminant, represents_globally,
    represents_locally_p, s_phi, s_phi_detailed, zeta_k_minus1, EllipticPointClass, FormSurvey,
    InvariantError, LocalFailure, SPhiBreakdown, SurfaceParams,
};
pub use lattice::{LatticeError, LatticeVector, QuaternaryLattice, SublatticeForm};
pub use surface::{
    adjunction_check, adjunction_check_doubled, classify, contract_sequence,
    curve_image_under_involution, hj_chain, pair, quotient_by_involution, resolve_euler,
    Certificate, CurveConfig, CyclicSingularity, Divisor, InvariantSet, Involution,
    QuotientInvariants, SurfaceClass, SurfaceError,
};
