//! Frozen data for the flagship discriminant-13 family and the pipeline
//! that turns it into the four-surface classification table:
//!
//! * the flagship arithmetic parameters and the example lattice file,
//! * the encoded curve configurations and (doubled) canonical divisors
//!   on the four surfaces,
//! * the orbifold singularity inventory and the blow-up / fixed-locus
//!   data of the quotient tower,
//! * [`surface_table`] and [`classification`], which recompute every
//!   numerical invariant from first principles and cross-check the
//!   encoded divisor data along the way.
//!
//! Everything here is an input that cannot be derived by the library
//! itself (curve configurations, fixed-locus Euler numbers, blow-up
//! counts); all derived numbers are computed, never hard-coded.

use thiserror::Error;

use crate::invariants::{
    arithmetic_genus, count_elliptic, covolume, euler_orbifold, InvariantError, SurfaceParams,
};
use crate::lattice::QuaternaryLattice;
use crate::surface::{
    classify, pair, quotient_by_involution, resolve_euler, Certificate, CurveConfig,
    CyclicSingularity, Divisor, InvariantSet, QuotientInvariants, SurfaceClass, SurfaceError,
};

/// The example lattice fixture (doubled Gram matrix form).
pub const EXAMPLE_LATTICE_FILE: &str = include_str!("../fixtures/example.lattice");
/// Curve configuration on the minimal general-type surface `Y`.
pub const Y_CURVES: &str = include_str!("../fixtures/y.curves");
/// Curve configuration on the blown-up K3 surface `Y_I`.
pub const Y_I_CURVES: &str = include_str!("../fixtures/y_i.curves");
/// Curve configuration on the blown-up Enriques surface `Y_II`.
pub const Y_II_CURVES: &str = include_str!("../fixtures/y_ii.curves");
/// Curve configuration on the five-point blow-up of the rational
/// surface `Y_III`.
pub const Y_TILDE_III_CURVES: &str = include_str!("../fixtures/y_tilde_iii.curves");
/// Canonical divisor on `Y`.
pub const K_Y_DIV: &str = include_str!("../fixtures/k_y.div");
/// Canonical divisor on `Y_I`.
pub const K_Y_I_DIV: &str = include_str!("../fixtures/k_y_i.div");
/// Doubled canonical divisor on `Y_II`.
pub const TWO_K_Y_II_DIV: &str = include_str!("../fixtures/two_k_y_ii.div");
/// Doubled canonical divisor on the blow-up of `Y_III`.
pub const TWO_K_Y_TILDE_III_DIV: &str = include_str!("../fixtures/two_k_y_tilde_iii.div");

/// Points blown up on `Y` before the first (ramified) quotient.
pub const BLOW_UPS_BEFORE_FIRST_QUOTIENT: i64 = 10;
/// Euler number of the fixed locus of the first quotient involution.
pub const FIRST_QUOTIENT_FIXED_EULER: i64 = 24;
/// Points blown up on `Y_II` before the second (ramified) quotient.
pub const BLOW_UPS_BEFORE_SECOND_QUOTIENT: i64 = 6;
/// Euler number of the fixed locus of the second quotient involution.
pub const SECOND_QUOTIENT_FIXED_EULER: i64 = 14;
/// Exceptional curves contracted to reach the minimal rational model.
pub const BLOW_DOWNS_TO_MINIMAL: i64 = 5;

/// Errors from the flagship pipeline: a failing arithmetic or surface
/// computation, or an internal cross-check that came out inconsistent.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("pipeline stage {stage}: {message}")]
    Inconsistent { stage: &'static str, message: String },
}

fn inconsistent(stage: &'static str, message: String) -> PipelineError {
    PipelineError::Inconsistent { stage, message }
}

/// The flagship parameters: real quadratic field of discriminant 13,
/// level 3, auxiliary prime 2.
pub fn flagship_params() -> SurfaceParams {
    SurfaceParams::new(13, 3, 2).expect("flagship parameters are valid")
}

/// The example quaternary lattice, parsed from its fixture file.
pub fn example_lattice() -> QuaternaryLattice {
    QuaternaryLattice::parse(EXAMPLE_LATTICE_FILE).expect("example lattice fixture parses")
}

pub fn y_config() -> CurveConfig {
    CurveConfig::parse(Y_CURVES).expect("Y curve fixture parses")
}

pub fn y_i_config() -> CurveConfig {
    CurveConfig::parse(Y_I_CURVES).expect("Y_I curve fixture parses")
}

pub fn y_ii_config() -> CurveConfig {
    CurveConfig::parse(Y_II_CURVES).expect("Y_II curve fixture parses")
}

pub fn y_tilde_iii_config() -> CurveConfig {
    CurveConfig::parse(Y_TILDE_III_CURVES).expect("Y_III blow-up curve fixture parses")
}

pub fn canonical_divisor_y() -> Divisor {
    Divisor::parse(K_Y_DIV, &y_config()).expect("K_Y divisor fixture parses")
}

pub fn canonical_divisor_y_i() -> Divisor {
    Divisor::parse(K_Y_I_DIV, &y_i_config()).expect("K_Y_I divisor fixture parses")
}

pub fn doubled_canonical_y_ii() -> Divisor {
    Divisor::parse(TWO_K_Y_II_DIV, &y_ii_config()).expect("2K_Y_II divisor fixture parses")
}

pub fn doubled_canonical_y_tilde_iii() -> Divisor {
    Divisor::parse(TWO_K_Y_TILDE_III_DIV, &y_tilde_iii_config())
        .expect("2K divisor fixture on the Y_III blow-up parses")
}

/// The cyclic quotient singularities of the flagship orbifold: eight of
/// type (2,1) and four of order 3, two each of types (3,1) and (3,2).
pub fn orbifold_singularities() -> Vec<CyclicSingularity> {
    let mut sings = vec![CyclicSingularity::new(2, 1).unwrap(); 8];
    sings.extend([
        CyclicSingularity::new(3, 1).unwrap(),
        CyclicSingularity::new(3, 1).unwrap(),
        CyclicSingularity::new(3, 2).unwrap(),
        CyclicSingularity::new(3, 2).unwrap(),
    ]);
    sings
}

fn noether_chi(e: i64, k2: i64, stage: &'static str) -> Result<i64, PipelineError> {
    let sum = e + k2;
    if sum % 12 != 0 {
        return Err(inconsistent(stage, format!("e + K^2 = {sum} is not divisible by 12")));
    }
    Ok(sum / 12)
}

/// The numerical invariants of the four flagship surfaces, recomputed
/// from the arithmetic inputs:
///
/// * `Y`: volume and elliptic counts give the orbifold Euler number,
///   resolution gives `e`, Noether gives `K^2` (cross-checked against
///   the encoded canonical divisor);
/// * `Y_I`: ramified quotient of the blown-up `Y` plus the encoded
///   canonical divisor;
/// * `Y_II`: free quotient of `Y_I`;
/// * `Y_III`: ramified quotient of the blown-up `Y_II`, the encoded
///   doubled canonical divisor, and the final blow-down.
pub fn surface_table() -> Result<Vec<(&'static str, InvariantSet)>, PipelineError> {
    let params = flagship_params();
    let volume = covolume(&params)?;
    let e2 = count_elliptic(&params, 2)?;
    let e3 = count_elliptic(&params, 3)?;
    let e_orbifold = euler_orbifold(volume, &[(2, e2), (3, e3)]);
    let chi = arithmetic_genus(e_orbifold).as_integer().ok_or_else(|| {
        inconsistent("arithmetic genus", format!("{} is not an integer", arithmetic_genus(e_orbifold)))
    })?;
    let e_y = resolve_euler(e_orbifold, &orbifold_singularities())?;
    let k2_y = 12 * chi - e_y;
    let k = canonical_divisor_y();
    let k2_encoded = pair(&k, &k, &y_config())?;
    if k2_encoded != k2_y {
        return Err(inconsistent(
            "canonical self-intersection on Y",
            format!("encoded divisor gives {k2_encoded}, Noether gives {k2_y}"),
        ));
    }
    let y = InvariantSet::new(e_y, chi, k2_y, 0)?;

    let cover = y.blow_up(BLOW_UPS_BEFORE_FIRST_QUOTIENT);
    let QuotientInvariants::EulerOnly(e_y1) =
        quotient_by_involution(&cover, FIRST_QUOTIENT_FIXED_EULER, false)?
    else {
        return Err(inconsistent("first quotient", "expected a ramified quotient".into()));
    };
    let k1 = canonical_divisor_y_i();
    let k2_y1 = pair(&k1, &k1, &y_i_config())?;
    let chi_y1 = noether_chi(e_y1, k2_y1, "Noether on Y_I")?;
    let y1 = InvariantSet::new(e_y1, chi_y1, k2_y1, 0)?;

    let QuotientInvariants::Complete(y2) = quotient_by_involution(&y1, 0, true)? else {
        return Err(inconsistent("second quotient", "expected a free quotient".into()));
    };

    let cover2 = y2.blow_up(BLOW_UPS_BEFORE_SECOND_QUOTIENT);
    let QuotientInvariants::EulerOnly(e_tilde)
        = quotient_by_involution(&cover2, SECOND_QUOTIENT_FIXED_EULER, false)?
    else {
        return Err(inconsistent("third quotient", "expected a ramified quotient".into()));
    };
    let two_k = doubled_canonical_y_tilde_iii();
    let four_k2 = pair(&two_k, &two_k, &y_tilde_iii_config())?;
    if four_k2 % 4 != 0 {
        return Err(inconsistent(
            "doubled canonical divisor",
            format!("(2K)^2 = {four_k2} is not divisible by 4"),
        ));
    }
    let k2_tilde = four_k2 / 4;
    let chi_tilde = noether_chi(e_tilde, k2_tilde, "Noether on the Y_III blow-up")?;
    let y_tilde_3 = InvariantSet::new(e_tilde, chi_tilde, k2_tilde, 0)?;
    let y3 = y_tilde_3.blow_down(BLOW_DOWNS_TO_MINIMAL);

    Ok(vec![("Y", y), ("Y_I", y1), ("Y_II", y2), ("Y_III", y3)])
}

/// One classified flagship surface: its invariants, the certificate that
/// proves the label, and the verified label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagshipSurface {
    pub label: &'static str,
    pub invariants: InvariantSet,
    pub certificate: Certificate,
    pub class: SurfaceClass,
}

/// Classifies all four flagship surfaces, verifying each certificate
/// against the recomputed invariants.
pub fn classification() -> Result<Vec<FlagshipSurface>, PipelineError> {
    let table = surface_table()?;
    let find = |label: &str| -> Result<InvariantSet, PipelineError> {
        table
            .iter()
            .find(|(l, _)| *l == label)
            .map(|&(_, inv)| inv)
            .ok_or_else(|| inconsistent("classification", format!("no surface {label}")))
    };

    let enriques = Certificate::Enriques {
        config: y_ii_config(),
        two_k: doubled_canonical_y_ii(),
        contract: vec!["F2".into(), "A".into()],
    };
    let entries: Vec<(&'static str, Certificate)> = vec![
        (
            "Y",
            Certificate::GeneralType { config: y_config(), k: canonical_divisor_y() },
        ),
        (
            "Y_I",
            Certificate::K3 {
                quotient: find("Y_II")?,
                quotient_certificate: Box::new(enriques.clone()),
            },
        ),
        ("Y_II", enriques),
        (
            "Y_III",
            Certificate::Rational {
                config: y_tilde_iii_config(),
                contract: vec!["F2".into(), "C14".into(), "C15".into(), "C16".into()],
                witness: "D".into(),
            },
        ),
    ];

    let mut out = Vec::new();
    for (label, certificate) in entries {
        let invariants = find(label)?;
        let class = classify(&invariants, &[certificate.clone()])?;
        out.push(FlagshipSurface { label, invariants, certificate, class });
    }
    Ok(out)
}
