//! Closed-form arithmetic invariants of a compact quaternionic Shimura
//! surface, parameterized by [`SurfaceParams`]:
//!
//! * hyperbolic covolume via a Siegel-style divisor sum ([`zeta_k_minus1`],
//!   [`covolume`]) and the orbifold Euler number / arithmetic genus built on
//!   it ([`euler_orbifold`], [`arithmetic_genus`]),
//! * modular-curve counts: the component factor [`kappa`], the local factors
//!   [`chi_dp`] and [`a_dp`], and the curve count [`f_n`],
//! * the discriminant and local splitting of the order attached to a curve
//!   ([`lambda_beta_discriminant`], [`a_beta_splits_at_p`]),
//! * local/global primitive representability of binary forms by the ambient
//!   quaternary form ([`represents_locally_p`], [`represents_globally`],
//!   with failing-clause diagnostics via [`LocalFailure`]),
//! * the special-point count [`s_phi`] with a factor-by-factor breakdown,
//!   and elliptic-point enumeration ([`elliptic_form_survey`],
//!   [`count_elliptic`]).
//!
//! All arithmetic is exact (`i64` / [`Rational`]); overflow panics rather
//! than wrapping.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::arith::{
    factorize, gcd, hilbert_int, is_prime, kronecker, lcm, sigma1, valuation, ArithError, Place,
    Rational,
};
use crate::forms::{
    alpha_p, automorphism_count, content_split, enumerate_classes, h_prime, is_anisotropic_p,
    BinaryForm, FormError,
};

/// Errors from invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("{0} is not a positive fundamental discriminant")]
    NotFundamental(i64),
    #[error("discriminant {0} must be coprime to 6")]
    NotCoprimeToSix(i64),
    #[error("discriminant {d} must be coprime to the level data {other}")]
    NotCoprime { d: i64, other: i64 },
    #[error("parameter must be positive, got {0}")]
    NotPositive(i64),
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("unsupported elliptic order {0}: only orders 2 and 3 occur here")]
    UnsupportedOrder(i64),
    #[error("form is not represented by the quaternary form: {0}")]
    NotRepresented(LocalFailure),
    #[error("weighted elliptic point count {0} is not an integer")]
    NonIntegralCount(Rational),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Why a binary form fails local primitive representability at one prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalFailure {
    /// An inert prime divides the form's content.
    InertContent { p: i64 },
    /// At a level prime the form must be anisotropic but is not.
    Isotropic { p: i64 },
    /// At a level prime the form is neither modular with `p^2` prime to the
    /// content, nor of the admissible non-modular shape.
    LevelShape { p: i64 },
    /// A ramified prime does not divide the form's discriminant.
    RamifiedDiscriminant { p: i64 },
    /// The square of a ramified prime divides the form's content.
    RamifiedContent { p: i64 },
    /// The form misses the norm-class target it must represent at a
    /// ramified prime.
    RamifiedNorm { p: i64, target: i64 },
}

impl LocalFailure {
    /// The prime at which the failure occurs.
    pub fn prime(&self) -> i64 {
        match *self {
            LocalFailure::InertContent { p }
            | LocalFailure::Isotropic { p }
            | LocalFailure::LevelShape { p }
            | LocalFailure::RamifiedDiscriminant { p }
            | LocalFailure::RamifiedContent { p }
            | LocalFailure::RamifiedNorm { p, .. } => p,
        }
    }
}

impl std::fmt::Display for LocalFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            LocalFailure::InertContent { p } => {
                write!(f, "at p={p}: inert prime divides the content")
            }
            LocalFailure::Isotropic { p } => {
                write!(f, "at p={p}: form is isotropic at a level prime")
            }
            LocalFailure::LevelShape { p } => {
                write!(f, "at p={p}: form has an inadmissible shape at a level prime")
            }
            LocalFailure::RamifiedDiscriminant { p } => {
                write!(f, "at p={p}: ramified prime does not divide the discriminant")
            }
            LocalFailure::RamifiedContent { p } => {
                write!(f, "at p={p}: square of a ramified prime divides the content")
            }
            LocalFailure::RamifiedNorm { p, target } => {
                write!(f, "at p={p}: form does not represent {target} up to squares")
            }
        }
    }
}

fn is_squarefree(n: i64) -> bool {
    factorize(n).map(|f| f.factors.iter().all(|&(_, e)| e == 1)).unwrap_or(false)
}

/// Whether `d > 1` is the discriminant of a real quadratic field: either
/// `d = 1 mod 4` squarefree, or `d = 4m` with `m = 2, 3 mod 4` squarefree.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d <= 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

/// The parameter triple fixing a surface: the field discriminant `D`, the
/// reduced discriminant generator `dL` of the defining order, and the index
/// ratio `B` between the base order's discriminant and `dL`.
///
/// Construction enforces the standing assumptions: `D` is a positive
/// fundamental discriminant coprime to 6, and `D` is coprime to `dL * B`
/// (so every prime dividing `dL` is unramified in the field).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceParams {
    d_field: i64,
    d_lambda: i64,
    b: i64,
}

impl SurfaceParams {
    pub fn new(d_field: i64, d_lambda: i64, b: i64) -> Result<Self, InvariantError> {
        if d_lambda < 1 {
            return Err(InvariantError::NotPositive(d_lambda));
        }
        if b < 1 {
            return Err(InvariantError::NotPositive(b));
        }
        if !is_fundamental_discriminant(d_field) {
            return Err(InvariantError::NotFundamental(d_field));
        }
        if gcd(d_field, 6) != 1 {
            return Err(InvariantError::NotCoprimeToSix(d_field));
        }
        let level = d_lambda.checked_mul(b).expect("parameter overflow");
        if gcd(d_field, level) != 1 {
            return Err(InvariantError::NotCoprime { d: d_field, other: level });
        }
        Ok(SurfaceParams { d_field, d_lambda, b })
    }

    /// The field discriminant `D`.
    pub fn d_field(&self) -> i64 {
        self.d_field
    }

    /// The reduced discriminant generator `dL` of the defining order.
    pub fn d_lambda(&self) -> i64 {
        self.d_lambda
    }

    /// The index ratio `B` (base-order discriminant over `dL`).
    pub fn b(&self) -> i64 {
        self.b
    }

    /// The squarefree radicand: `D` when `D` is odd, else `D/4`.
    pub fn radicand(&self) -> i64 {
        if self.d_field % 2 == 0 {
            self.d_field / 4
        } else {
            self.d_field
        }
    }

    /// Distinct primes dividing the field discriminant.
    fn ramified_primes(&self) -> Vec<i64> {
        factorize(self.d_field).expect("nonzero").factors.iter().map(|&(p, _)| p).collect()
    }

    /// Distinct primes dividing the order discriminant `dL`.
    fn level_primes(&self) -> Vec<i64> {
        factorize(self.d_lambda).expect("nonzero").factors.iter().map(|&(p, _)| p).collect()
    }
}

/// `zeta_k(-1)` for the real quadratic field of discriminant `d_field`,
/// via the divisor sum `(1/60) * sum sigma_1((D - b^2)/4)` over integers
/// `b` with `b^2 < D` and `b^2 = D mod 4`.
pub fn zeta_k_minus1(d_field: i64) -> Result<Rational, InvariantError> {
    if !is_fundamental_discriminant(d_field) {
        return Err(InvariantError::NotFundamental(d_field));
    }
    let mut sum = 0i64;
    let mut b = 0i64;
    while b * b < d_field {
        if (d_field - b * b) % 4 == 0 {
            let term = sigma1((d_field - b * b) / 4)?;
            let mult = if b == 0 { 1 } else { 2 };
            sum = sum.checked_add(mult * term).expect("zeta sum overflow");
        }
        b += 1;
    }
    Ok(Rational::new(sum, 60)?)
}

/// The hyperbolic covolume of the surface's fundamental domain:
/// `2 * zeta_k(-1) * prod_{p | dL} (p - 1)^2`.
pub fn covolume(params: &SurfaceParams) -> Result<Rational, InvariantError> {
    let mut vol = zeta_k_minus1(params.d_field)? * Rational::from(2);
    for p in params.level_primes() {
        vol = vol * Rational::from((p - 1) * (p - 1));
    }
    Ok(vol)
}

/// The orbifold Euler number `e(X) = volume + sum e_r * (r - 1)/r` over
/// elliptic point classes given as `(order r, count e_r)` pairs.
pub fn euler_orbifold(volume: Rational, elliptic: &[(i64, i64)]) -> Rational {
    let mut e = volume;
    for &(r, count) in elliptic {
        assert!(r >= 2, "elliptic order must be at least 2");
        e = e + Rational::new(count * (r - 1), r).expect("order is nonzero");
    }
    e
}

/// The arithmetic genus `chi = e/4` (the surface carries no odd
/// cohomology, so the holomorphic Euler characteristic is a quarter of the
/// topological one).
pub fn arithmetic_genus(e: Rational) -> Rational {
    e / Rational::from(4)
}

/// The component-count factor `kappa(N)` in `{1, 2}`.
///
/// Returns 2 exactly when, for every prime `p` dividing `D`: if
/// `(-1, D)_p = 1` then `p | N`, and if `(-1, D)_p = -1` then
/// `v_p(radicand) <= v_p(N) < 2 v_p(D)`.
pub fn kappa(n: i64, params: &SurfaceParams) -> Result<i64, InvariantError> {
    if n < 1 {
        return Err(InvariantError::NotPositive(n));
    }
    let d = params.radicand();
    for p in params.ramified_primes() {
        if hilbert_int(-1, params.d_field, Place::Finite(p))? == 1 {
            if n % p != 0 {
                return Ok(1);
            }
        } else {
            let vn = valuation(n, p)?;
            if !(valuation(d, p)? <= vn && vn < 2 * valuation(params.d_field, p)?) {
                return Ok(1);
            }
        }
    }
    Ok(2)
}

/// The twisted character `chi_{D,p}(N) = (D, N)_p` for `p` not dividing
/// `N`, and 0 otherwise. Requires `p | D`.
pub fn chi_dp(n: i64, p: i64, d_field: i64) -> Result<i64, InvariantError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p).into());
    }
    if d_field % p != 0 {
        return Err(InvariantError::NotCoprime { d: d_field, other: p });
    }
    if n % p == 0 {
        return Ok(0);
    }
    Ok(hilbert_int(d_field, n, Place::Finite(p))?)
}

/// The doubling factor `a_{D,p}(N)`: 2 when `v_p(N) >= 2 v_p(D)`, else 1.
/// Requires `p | D` and `N != 0`.
pub fn a_dp(n: i64, p: i64, d_field: i64) -> Result<i64, InvariantError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p).into());
    }
    if d_field % p != 0 {
        return Err(InvariantError::NotCoprime { d: d_field, other: p });
    }
    Ok(if valuation(n, p)? >= 2 * valuation(d_field, p)? { 2 } else { 1 })
}

/// The number `f_N` of modular curves of norm `N` on the surface.
///
/// Zero when `p^2 | N` for some level prime `p`; otherwise
/// `(kappa(N)/2) * prod_{p | D} (chi_{D,p}(N*B) + 1) * a_{D,p}(N)`.
/// The value is always a nonnegative integer (returned as a [`Rational`]
/// so the halving stays exact mid-formula).
pub fn f_n(n: i64, params: &SurfaceParams) -> Result<Rational, InvariantError> {
    if n < 1 {
        return Err(InvariantError::NotPositive(n));
    }
    for p in params.level_primes() {
        if n % (p * p) == 0 {
            return Ok(Rational::ZERO);
        }
    }
    let mut value = Rational::new(kappa(n, params)?, 2)?;
    let nb = n.checked_mul(params.b).expect("norm overflow");
    for p in params.ramified_primes() {
        let local = (chi_dp(nb, p, params.d_field)? + 1) * a_dp(n, p, params.d_field)?;
        value = value * Rational::from(local);
    }
    Ok(value)
}

/// The reduced discriminant of the order attached to a norm-`N` curve:
/// `lcm(N, dL)`.
pub fn lambda_beta_discriminant(n: i64, params: &SurfaceParams) -> Result<i64, InvariantError> {
    if n < 1 {
        return Err(InvariantError::NotPositive(n));
    }
    Ok(lcm(n, params.d_lambda))
}

/// Whether the quaternion algebra attached to a norm-`N` curve splits at
/// the prime `p`.
///
/// Split primes of the field: splits iff `p` does not divide `dL`. Inert
/// primes: splits iff `v_p(N)` is even. Ramified primes (`p | D`): splits
/// iff `(N*B, D)_p = 1` (the local norm condition on the curve's reduced
/// norm, which is `N*B` up to squares).
pub fn a_beta_splits_at_p(n: i64, p: i64, params: &SurfaceParams) -> Result<bool, InvariantError> {
    if n < 1 {
        return Err(InvariantError::NotPositive(n));
    }
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p).into());
    }
    match kronecker(params.d_field, p)? {
        1 => Ok(params.d_lambda % p != 0),
        -1 => Ok(valuation(n, p)? % 2 == 0),
        _ => {
            let nb = n.checked_mul(params.b).expect("norm overflow");
            Ok(hilbert_int(nb, params.d_field, Place::Finite(p))? == 1)
        }
    }
}

/// For an odd prime `p` with `p` prime to the content of `phi`, the unit
/// coefficient that controls which square classes `phi` represents over
/// the `p`-adic integers: `a` if `p` does not divide `a`, else `c`.
fn leading_unit(phi: &BinaryForm, p: i64) -> i64 {
    if phi.a() % p != 0 {
        phi.a()
    } else {
        debug_assert!(phi.c() % p != 0, "content must be prime to p");
        phi.c()
    }
}

/// Whether `phi` primitively represents 4 over the 2-adic integers,
/// decided by enumerating primitive pairs modulo 2^7.
///
/// Valid whenever `v_2(d(phi)) <= 3`: the gradient of `phi` at a primitive
/// pair then has 2-valuation `s <= 3` (the adjugate of the Hessian maps the
/// gradient to `-d * (x, y)`), and a solution of `phi = 4 mod 2^(2s+1)`
/// lifts to an exact 2-adic one, so the modulus 2^7 is decisive.
fn represents_four_primitively_2adic(phi: &BinaryForm) -> bool {
    const M: i64 = 128;
    for x in 0..M {
        for y in 0..M {
            if x % 2 == 0 && y % 2 == 0 {
                continue;
            }
            if phi.eval(x, y).rem_euclid(M) == 4 {
                return true;
            }
        }
    }
    false
}

/// Evaluates the local representability clause at one prime, returning the
/// failure if any. `params` decides which clause applies: ramified primes
/// (`p | D`), level primes (`p | dL`), or the generic unramified clause.
fn local_check(
    phi: &BinaryForm,
    p: i64,
    params: &SurfaceParams,
) -> Result<Option<LocalFailure>, InvariantError> {
    let d = phi.discriminant();
    let m = phi.content();
    if params.d_field % p == 0 {
        // Ramified prime: p must divide d(phi) exactly compatibly with a
        // content at most p, and the form must hit the right norm class.
        let vd = valuation(d, p)?;
        if vd == 0 {
            return Ok(Some(LocalFailure::RamifiedDiscriminant { p }));
        }
        if valuation(m, p)? >= 2 {
            return Ok(Some(LocalFailure::RamifiedContent { p }));
        }
        if m % p != 0 {
            // Must represent B: phi is p-adically <alpha, p^vd * gamma>, so
            // B is represented iff B * alpha is a square mod p.
            let alpha = leading_unit(phi, p);
            if kronecker(params.b * alpha, p)? != 1 {
                return Ok(Some(LocalFailure::RamifiedNorm { p, target: params.b }));
            }
        } else {
            // Content exactly p: phi/p must represent the unit -B*D/p.
            let inner = BinaryForm::new(phi.a() / p, phi.b() / p, phi.c() / p)?;
            let target = -params.b * (params.d_field / p);
            if valuation(inner.discriminant(), p)? > 0 {
                let alpha = leading_unit(&inner, p);
                if kronecker(target * alpha, p)? != 1 {
                    return Ok(Some(LocalFailure::RamifiedNorm { p, target }));
                }
            }
            // A p-unimodular binary form represents every unit, so the
            // valuation-0 case always passes.
        }
        Ok(None)
    } else if params.d_lambda % p == 0 {
        // Level prime: anisotropic, and either modular with p^2 prime to
        // the content or of the admissible non-modular shape.
        if !is_anisotropic_p(phi, p)? {
            return Ok(Some(LocalFailure::Isotropic { p }));
        }
        let vd = valuation(d, p)?;
        let vm = valuation(m, p)?;
        let ok = if vd == 2 * vm {
            vm < 2
        } else if p != 2 {
            vd == 1
        } else {
            vd <= 3 && !represents_four_primitively_2adic(phi)
        };
        Ok(if ok { None } else { Some(LocalFailure::LevelShape { p }) })
    } else {
        // Unramified prime away from the level: inert primes must not
        // divide the content; split primes impose no condition (the local
        // quaternary form is a sum of hyperbolic planes there).
        if kronecker(params.d_field, p)? == -1 && m % p == 0 {
            Ok(Some(LocalFailure::InertContent { p }))
        } else {
            Ok(None)
        }
    }
}

/// Whether `phi` is primitively represented by the local quaternary form
/// at `p`.
pub fn represents_locally_p(
    phi: &BinaryForm,
    p: i64,
    params: &SurfaceParams,
) -> Result<bool, InvariantError> {
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p).into());
    }
    Ok(local_check(phi, p, params)?.is_none())
}

/// The first failing local clause over all relevant primes (those dividing
/// `2 * D * dL * d(phi) * m(phi)`), or `None` when `phi` is represented.
pub fn first_local_obstruction(
    phi: &BinaryForm,
    params: &SurfaceParams,
) -> Result<Option<LocalFailure>, InvariantError> {
    let mut primes: BTreeSet<i64> = BTreeSet::new();
    primes.insert(2);
    for n in [params.d_field, params.d_lambda, phi.discriminant(), phi.content()] {
        for &(p, _) in &factorize(n)?.factors {
            primes.insert(p);
        }
    }
    for p in primes {
        if let Some(failure) = local_check(phi, p, params)? {
            return Ok(Some(failure));
        }
    }
    Ok(None)
}

/// Whether the positive definite form `phi` is primitively represented by
/// the surface's quaternary form: the local clause must hold at every
/// prime dividing `2 * D * dL * d(phi) * m(phi)` (all others pass
/// automatically).
pub fn represents_globally(
    phi: &BinaryForm,
    params: &SurfaceParams,
) -> Result<bool, InvariantError> {
    if !phi.is_positive_definite() {
        return Err(InvariantError::NotPositiveDefinite);
    }
    Ok(first_local_obstruction(phi, params)?.is_none())
}

/// Factor-by-factor breakdown of a special-point count [`s_phi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SPhiBreakdown {
    pub form: BinaryForm,
    /// Content split `m = m1 * m2 * m3` by prime support (`D`, `dL`, rest).
    pub m1: i64,
    pub m2: i64,
    pub m3: i64,
    /// `2^(a-1)` where `a` counts the distinct primes of `m3`.
    pub power_factor: Rational,
    /// The discriminant `d(phi) / (m2^2 * D)` fed to the class number.
    pub class_argument: i64,
    /// The modified class number `h'(class_argument)`.
    pub class_term: Rational,
    /// `prod_{p | D} alpha_p(phi)`.
    pub ramified_factor: i64,
    /// `prod_{p | dL} 2 / alpha_p(phi)`.
    pub level_factor: Rational,
    /// The product of all factors.
    pub value: Rational,
}

/// The weighted count `s(phi)` of special points whose local form is
/// `phi`, with the full factor breakdown. Errors (with the failing local
/// clause) unless `phi` is represented.
pub fn s_phi_detailed(
    phi: &BinaryForm,
    params: &SurfaceParams,
) -> Result<SPhiBreakdown, InvariantError> {
    if !phi.is_positive_definite() {
        return Err(InvariantError::NotPositiveDefinite);
    }
    if let Some(failure) = first_local_obstruction(phi, params)? {
        return Err(InvariantError::NotRepresented(failure));
    }
    let split = content_split(phi, params.d_field, params.d_lambda);
    let a = factorize(split.m3)?.factors.len() as u32;
    let power_factor = if a == 0 {
        Rational::new(1, 2)?
    } else {
        Rational::from(1i64 << (a - 1))
    };
    let denom = split
        .m2
        .checked_mul(split.m2)
        .and_then(|s| s.checked_mul(params.d_field))
        .expect("class argument overflow");
    let d = phi.discriminant();
    assert_eq!(d % denom, 0, "represented forms have m2^2 * D dividing the discriminant");
    let class_argument = d / denom;
    let class_term = h_prime(class_argument)?;
    let mut ramified_factor = 1i64;
    for p in params.ramified_primes() {
        ramified_factor *= alpha_p(phi, p)?;
    }
    let mut level_factor = Rational::ONE;
    for p in params.level_primes() {
        level_factor = level_factor * Rational::new(2, alpha_p(phi, p)?)?;
    }
    let value = power_factor * class_term * Rational::from(ramified_factor) * level_factor;
    Ok(SPhiBreakdown {
        form: *phi,
        m1: split.m1,
        m2: split.m2,
        m3: split.m3,
        power_factor,
        class_argument,
        class_term,
        ramified_factor,
        level_factor,
        value,
    })
}

/// The weighted special-point count `s(phi)`:
/// `2^(a-1) * h'(d(phi)/(m2^2 D)) * prod_{p|D} alpha_p * prod_{p|dL} 2/alpha_p`.
pub fn s_phi(phi: &BinaryForm, params: &SurfaceParams) -> Result<Rational, InvariantError> {
    Ok(s_phi_detailed(phi, params)?.value)
}

/// The candidate elliptic-point forms of order `n`, split into those that
/// are represented and those rejected (with the failing clause).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSurvey {
    pub accepted: Vec<BinaryForm>,
    pub rejected: Vec<(BinaryForm, LocalFailure)>,
}

/// Surveys both candidate shapes for elliptic points of order `n` (2 or
/// 3): `m * D * [1,0,1]` (order 2) or `m * D * [1,-1,1]` (order 3) for
/// each `m | dL`, and `m * phi0` for each `m | dL` and each primitive
/// class `phi0` of discriminant `-4D` (order 2) or `-3D` (order 3).
/// Candidates are deduplicated up to proper equivalence and split by the
/// representability test.
pub fn elliptic_form_survey(params: &SurfaceParams, n: i64) -> Result<FormSurvey, InvariantError> {
    let (base, shape_two_disc) = match n {
        2 => (BinaryForm::new(1, 0, 1)?, -4 * params.d_field),
        3 => (BinaryForm::new(1, -1, 1)?, -3 * params.d_field),
        _ => return Err(InvariantError::UnsupportedOrder(n)),
    };
    let scales = factorize(params.d_lambda)?.divisors();
    let mut candidates: Vec<BinaryForm> = Vec::new();
    for &m in &scales {
        candidates.push(base.scale(params.d_field)?.scale(m)?);
    }
    for &m in &scales {
        for phi0 in enumerate_classes(shape_two_disc)? {
            candidates.push(phi0.scale(m)?);
        }
    }
    let mut seen: BTreeSet<BinaryForm> = BTreeSet::new();
    let mut survey = FormSurvey { accepted: Vec::new(), rejected: Vec::new() };
    for phi in candidates {
        if !seen.insert(phi.reduce()?) {
            continue;
        }
        match first_local_obstruction(&phi, params)? {
            None => survey.accepted.push(phi),
            Some(failure) => survey.rejected.push((phi, failure)),
        }
    }
    Ok(survey)
}

/// One class of elliptic points: the order, its local form, the weighted
/// count `s`, the form's automorphism count `w`, and the resulting number
/// of points `s * 2n / w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EllipticPointClass {
    pub order: i64,
    pub form: BinaryForm,
    pub s: Rational,
    pub automorphisms: i64,
    pub count: Rational,
}

/// The per-class elliptic point table of order `n`: each represented
/// candidate form with its weighted count and point count (the isotropy
/// group has order `2n` since it contains minus one).
pub fn elliptic_point_classes(
    params: &SurfaceParams,
    n: i64,
) -> Result<Vec<EllipticPointClass>, InvariantError> {
    let survey = elliptic_form_survey(params, n)?;
    let mut classes = Vec::new();
    for phi in survey.accepted {
        let s = s_phi(&phi, params)?;
        let w = automorphism_count(&phi)?;
        let count = s * Rational::new(2 * n, w)?;
        classes.push(EllipticPointClass { order: n, form: phi, s, automorphisms: w, count });
    }
    Ok(classes)
}

/// The total number of elliptic points of order `n`, summing
/// `s(phi) * 2n / w_phi` over represented candidate forms. Errors if the
/// sum is not a nonnegative integer (which would mean inconsistent
/// parameters).
pub fn count_elliptic(params: &SurfaceParams, n: i64) -> Result<i64, InvariantError> {
    let mut total = Rational::ZERO;
    for class in elliptic_point_classes(params, n)? {
        total = total + class.count;
    }
    match total.as_integer() {
        Some(count) if count >= 0 => Ok(count),
        _ => Err(InvariantError::NonIntegralCount(total)),
    }
}
