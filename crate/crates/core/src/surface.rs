//! Exact surface-invariant bookkeeping for the resolution and
//! classification pipeline:
//!
//! * numerical invariant records with Noether consistency enforced at
//!   construction ([`InvariantSet`]),
//! * cyclic quotient singularities and their resolution chains
//!   ([`CyclicSingularity`], [`hj_chain`], [`resolve_euler`]),
//! * blow-up / blow-down and involution-quotient transforms on invariants,
//! * encoded curve configurations with an intersection pairing, divisors,
//!   adjunction checks, and exceptional-curve contraction with discrepancy
//!   tracking ([`CurveConfig`], [`Divisor`], [`pair`], [`contract_sequence`]),
//! * certificate-driven classification into the four outcome labels
//!   ([`Certificate`], [`classify`], [`SurfaceClass`]).
//!
//! Configurations and divisors have plain-text encodings (`curve`/`meet`
//! lines and `div` lines) so the fixture data stays reviewable.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::arith::{gcd, Rational};

/// Errors from surface-calculus operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("invariants violate the Noether relation: 12*{chi} != {e} + {k2}")]
    NoetherViolation { e: i64, chi: i64, k2: i64 },
    #[error("irregularity must be nonnegative, got {0}")]
    NegativeIrregularity(i64),
    #[error("geometric genus would be negative ({0})")]
    NegativeGeometricGenus(i64),
    #[error("invalid cyclic singularity type ({r},{a}): need r >= 2, 1 <= a < r, gcd(a,r) = 1")]
    BadSingularity { r: i64, a: i64 },
    #[error("resolved Euler number {0} is not an integer")]
    NonIntegralEuler(Rational),
    #[error("free quotient requires an empty fixed locus, got Euler contribution {0}")]
    FreeQuotientFixedLocus(i64),
    #[error("fixed-locus Euler number {0} is odd: blow up isolated fixed points first")]
    IsolatedFixedPoints(i64),
    #[error("quotient invariants are not integral")]
    NonIntegralQuotient,
    #[error("duplicate curve {0}")]
    DuplicateCurve(String),
    #[error("unknown curve {0}")]
    UnknownCurve(String),
    #[error("curve {0} cannot meet itself (self-intersections are per-curve data)")]
    SelfMeeting(String),
    #[error("duplicate meeting declaration for {0} and {1}")]
    DuplicateMeeting(String, String),
    #[error("genus must be nonnegative, got {0}")]
    NegativeGenus(i64),
    #[error("intersection multiplicity must be nonnegative, got {0}")]
    NegativeMultiplicity(i64),
    #[error("cannot parse line {0:?}")]
    UnparsableLine(String),
    #[error("curve {0} is not contractible (needs genus 0 and self-intersection -1)")]
    NotContractible(String),
    #[error("expected exactly one classification certificate, got {0}")]
    CertificateCount(usize),
    #[error("classification certificate invalid: {0}")]
    CertificateInvalid(String),
    #[error("no curve of norm {0} exists (the norm is divisible by 9)")]
    CurveAbsent(i64),
    #[error("norm must be positive, got {0}")]
    NotPositive(i64),
}

/// The numerical invariants of a smooth projective surface: Euler number
/// `e`, holomorphic Euler characteristic `chi`, canonical self-intersection
/// `K2`, and irregularity `q`. Construction enforces the Noether relation
/// `12*chi = e + K2`; the geometric genus is derived, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvariantSet {
    e: i64,
    chi: i64,
    k2: i64,
    q: i64,
}

impl InvariantSet {
    pub fn new(e: i64, chi: i64, k2: i64, q: i64) -> Result<Self, SurfaceError> {
        if 12 * chi != e + k2 {
            return Err(SurfaceError::NoetherViolation { e, chi, k2 });
        }
        if q < 0 {
            return Err(SurfaceError::NegativeIrregularity(q));
        }
        let pg = chi - 1 + q;
        if pg < 0 {
            return Err(SurfaceError::NegativeGeometricGenus(pg));
        }
        Ok(InvariantSet { e, chi, k2, q })
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn k2(&self) -> i64 {
        self.k2
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// The geometric genus `pg = chi - 1 + q`.
    pub fn pg(&self) -> i64 {
        self.chi - 1 + self.q
    }

    /// Invariants after blowing up `n` points: `e` rises by `n`, `K2`
    /// drops by `n`, everything else is unchanged.
    pub fn blow_up(&self, n: i64) -> InvariantSet {
        assert!(n >= 0, "blow-up count must be nonnegative");
        InvariantSet { e: self.e + n, chi: self.chi, k2: self.k2 - n, q: self.q }
    }

    /// Invariants after blowing down `n` exceptional curves (the inverse
    /// of [`InvariantSet::blow_up`]).
    pub fn blow_down(&self, n: i64) -> InvariantSet {
        assert!(n >= 0, "blow-down count must be nonnegative");
        InvariantSet { e: self.e - n, chi: self.chi, k2: self.k2 + n, q: self.q }
    }
}

/// The result of an involution quotient: complete invariants for a free
/// action, or just the Euler number for a ramified one (whose `chi` and
/// `K2` must come from divisor computations on the quotient).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientInvariants {
    Complete(InvariantSet),
    EulerOnly(i64),
}

/// Invariants of the quotient by an involution whose fixed locus has
/// Euler number `e_fixed_locus` (0 and `free = true` for a free action;
/// for a ramified action the locus must be a disjoint union of smooth
/// curves, so its Euler number is even — blow up isolated fixed points
/// first).
pub fn quotient_by_involution(
    inv: &InvariantSet,
    e_fixed_locus: i64,
    free: bool,
) -> Result<QuotientInvariants, SurfaceError> {
    if free {
        if e_fixed_locus != 0 {
            return Err(SurfaceError::FreeQuotientFixedLocus(e_fixed_locus));
        }
        if inv.e % 2 != 0 || inv.chi % 2 != 0 || inv.k2 % 2 != 0 {
            return Err(SurfaceError::NonIntegralQuotient);
        }
        return Ok(QuotientInvariants::Complete(InvariantSet::new(
            inv.e / 2,
            inv.chi / 2,
            inv.k2 / 2,
            inv.q,
        )?));
    }
    if e_fixed_locus % 2 != 0 {
        return Err(SurfaceError::IsolatedFixedPoints(e_fixed_locus));
    }
    let doubled = inv.e + e_fixed_locus;
    if doubled % 2 != 0 {
        return Err(SurfaceError::NonIntegralQuotient);
    }
    Ok(QuotientInvariants::EulerOnly(doubled / 2))
}

/// A cyclic quotient singularity of type `(r, a)`: order `r >= 2` and
/// twist `a` with `1 <= a < r` and `gcd(a, r) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicSingularity {
    r: i64,
    a: i64,
}

impl CyclicSingularity {
    pub fn new(r: i64, a: i64) -> Result<Self, SurfaceError> {
        if r < 2 || a < 1 || a >= r || gcd(a, r) != 1 {
            return Err(SurfaceError::BadSingularity { r, a });
        }
        Ok(CyclicSingularity { r, a })
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn a(&self) -> i64 {
        self.a
    }
}

/// The Hirzebruch-Jung continued fraction `r/a = b1 - 1/(b2 - 1/(...))`;
/// the minimal resolution of the `(r, a)` singularity is a chain of
/// rational curves with self-intersections `-b1, ..., -bk`.
pub fn hj_chain(s: &CyclicSingularity) -> Vec<i64> {
    let (mut r, mut a) = (s.r, s.a);
    let mut chain = Vec::new();
    while a > 0 {
        let b = (r + a - 1) / a; // ceiling of r/a
        chain.push(b);
        (r, a) = (a, b * a - r);
    }
    chain
}

/// The Euler number of the minimal resolution: each singular point
/// (Euler contribution 1) is replaced by its resolution chain of `k`
/// rational curves (Euler contribution `k + 1`), so `e` grows by `k` per
/// point. Errors unless the result is an integer.
pub fn resolve_euler(
    e_orbifold: Rational,
    singularities: &[CyclicSingularity],
) -> Result<i64, SurfaceError> {
    let mut e = e_orbifold;
    for s in singularities {
        e = e + Rational::from(hj_chain(s).len() as i64);
    }
    e.as_integer().ok_or(SurfaceError::NonIntegralEuler(e))
}

/// A configuration of named curves on one surface: per-curve genus and
/// self-intersection, plus a symmetric table of pairwise intersection
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveConfig {
    names: Vec<String>,
    genus: Vec<i64>,
    self_int: Vec<i64>,
    meets: BTreeMap<(usize, usize), i64>,
}

impl CurveConfig {
    pub fn new() -> Self {
        CurveConfig { names: Vec::new(), genus: Vec::new(), self_int: Vec::new(), meets: BTreeMap::new() }
    }

    pub fn add_curve(&mut self, name: &str, genus: i64, self_int: i64) -> Result<(), SurfaceError> {
        if genus < 0 {
            return Err(SurfaceError::NegativeGenus(genus));
        }
        if self.index(name).is_some() {
            return Err(SurfaceError::DuplicateCurve(name.into()));
        }
        self.names.push(name.into());
        self.genus.push(genus);
        self.self_int.push(self_int);
        Ok(())
    }

    pub fn set_meeting(&mut self, n1: &str, n2: &str, mult: i64) -> Result<(), SurfaceError> {
        if mult < 0 {
            return Err(SurfaceError::NegativeMultiplicity(mult));
        }
        let i = self.require(n1)?;
        let j = self.require(n2)?;
        if i == j {
            return Err(SurfaceError::SelfMeeting(n1.into()));
        }
        let key = (i.min(j), i.max(j));
        if self.meets.contains_key(&key) {
            return Err(SurfaceError::DuplicateMeeting(n1.into(), n2.into()));
        }
        self.meets.insert(key, mult);
        Ok(())
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn require(&self, name: &str) -> Result<usize, SurfaceError> {
        self.index(name).ok_or_else(|| SurfaceError::UnknownCurve(name.into()))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn genus(&self, name: &str) -> Result<i64, SurfaceError> {
        Ok(self.genus[self.require(name)?])
    }

    pub fn self_intersection(&self, name: &str) -> Result<i64, SurfaceError> {
        Ok(self.self_int[self.require(name)?])
    }

    /// The intersection multiplicity of two distinct curves (0 when no
    /// meeting was declared).
    pub fn meeting(&self, n1: &str, n2: &str) -> Result<i64, SurfaceError> {
        let i = self.require(n1)?;
        let j = self.require(n2)?;
        if i == j {
            return Err(SurfaceError::SelfMeeting(n1.into()));
        }
        Ok(*self.meets.get(&(i.min(j), i.max(j))).unwrap_or(&0))
    }

    /// Parses the plain-text format: `curve <name> genus=<g> self=<s>`
    /// declarations followed by `meet <name1> <name2> <multiplicity>`
    /// lines; blank lines and `#` comments are skipped. Unknown names and
    /// duplicate declarations are rejected.
    pub fn parse(text: &str) -> Result<Self, SurfaceError> {
        let mut config = CurveConfig::new();
        for raw in text.lines() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || SurfaceError::UnparsableLine(line.to_string());
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["curve", name, genus_field, self_field] => {
                    let genus = genus_field
                        .strip_prefix("genus=")
                        .and_then(|v| v.parse::<i64>().ok())
                        .ok_or_else(bad)?;
                    let self_int = self_field
                        .strip_prefix("self=")
                        .and_then(|v| v.parse::<i64>().ok())
                        .ok_or_else(bad)?;
                    config.add_curve(name, genus, self_int)?;
                }
                ["meet", n1, n2, mult_field] => {
                    let mult = mult_field.parse::<i64>().map_err(|_| bad())?;
                    config.set_meeting(n1, n2, mult)?;
                }
                _ => return Err(bad()),
            }
        }
        Ok(config)
    }

    /// Renders the canonical text form; `parse(render(c))` reproduces `c`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, name) in self.names.iter().enumerate() {
            out.push_str(&format!("curve {name} genus={} self={}\n", self.genus[i], self.self_int[i]));
        }
        for (&(i, j), &mult) in &self.meets {
            out.push_str(&format!("meet {} {} {mult}\n", self.names[i], self.names[j]));
        }
        out
    }
}

impl Default for CurveConfig {
    fn default() -> Self {
        CurveConfig::new()
    }
}

/// An integer divisor supported on the curves of a [`CurveConfig`]:
/// a finite formal sum of named curves. Zero coefficients are dropped, so
/// equality is support-wise.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    coeffs: BTreeMap<String, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    /// Builds a divisor over `config`, rejecting unknown curve names and
    /// duplicate entries.
    pub fn new(config: &CurveConfig, terms: &[(&str, i64)]) -> Result<Self, SurfaceError> {
        let mut coeffs = BTreeMap::new();
        for &(name, coeff) in terms {
            config.require(name)?;
            if coeffs.contains_key(name) {
                return Err(SurfaceError::DuplicateCurve(name.into()));
            }
            if coeff != 0 {
                coeffs.insert(name.to_string(), coeff);
            }
        }
        Ok(Divisor { coeffs })
    }

    /// Parses a `div <name> <coeff> [<name> <coeff> ...]` line.
    pub fn parse(line: &str, config: &CurveConfig) -> Result<Self, SurfaceError> {
        let line = line.trim();
        let bad = || SurfaceError::UnparsableLine(line.to_string());
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.first() != Some(&"div") || fields.len() % 2 == 0 {
            return Err(bad());
        }
        let mut terms = Vec::new();
        for pair in fields[1..].chunks(2) {
            let coeff = pair[1].parse::<i64>().map_err(|_| bad())?;
            terms.push((pair[0], coeff));
        }
        Divisor::new(config, &terms)
    }

    /// Renders the canonical `div` line (support in name order);
    /// `parse(render(d))` reproduces `d`.
    pub fn render(&self) -> String {
        let mut out = String::from("div");
        for (name, coeff) in &self.coeffs {
            out.push_str(&format!(" {name} {coeff}"));
        }
        out.push('\n');
        out
    }

    pub fn coeff(&self, name: &str) -> i64 {
        *self.coeffs.get(name).unwrap_or(&0)
    }

    /// The curve names with nonzero coefficient, in name order.
    pub fn support(&self) -> Vec<&str> {
        self.coeffs.keys().map(|s| s.as_str()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Whether all coefficients are nonnegative and at least one is
    /// positive.
    pub fn is_effective(&self) -> bool {
        !self.coeffs.is_empty() && self.coeffs.values().all(|&c| c > 0)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut coeffs = self.coeffs.clone();
        for (name, &c) in &other.coeffs {
            let entry = coeffs.entry(name.clone()).or_insert(0);
            *entry += c;
            if *entry == 0 {
                coeffs.remove(name);
            }
        }
        Divisor { coeffs }
    }

    pub fn scale(&self, factor: i64) -> Divisor {
        if factor == 0 {
            return Divisor::zero();
        }
        Divisor { coeffs: self.coeffs.iter().map(|(n, &c)| (n.clone(), c * factor)).collect() }
    }

    fn single(name: &str) -> Divisor {
        Divisor { coeffs: BTreeMap::from([(name.to_string(), 1)]) }
    }
}

/// The intersection pairing of two divisors over a configuration:
/// bilinear extension using self-intersections on the diagonal and the
/// declared multiplicities off it. Errors if either divisor mentions a
/// curve the configuration lacks.
pub fn pair(d1: &Divisor, d2: &Divisor, config: &CurveConfig) -> Result<i64, SurfaceError> {
    let mut total: i64 = 0;
    for (n1, &c1) in &d1.coeffs {
        for (n2, &c2) in &d2.coeffs {
            let local = if n1 == n2 {
                config.self_intersection(n1)?
            } else {
                config.meeting(n1, n2)?
            };
            total = total
                .checked_add(c1.checked_mul(c2).and_then(|p| p.checked_mul(local)).expect("pairing overflow"))
                .expect("pairing overflow");
        }
    }
    Ok(total)
}

/// Adjunction check for a curve against a canonical divisor `k`:
/// `K . C = 2 genus(C) - 2 - C^2`.
pub fn adjunction_check(curve: &str, k: &Divisor, config: &CurveConfig) -> Result<bool, SurfaceError> {
    let target = 2 * config.genus(curve)? - 2 - config.self_intersection(curve)?;
    Ok(pair(k, &Divisor::single(curve), config)? == target)
}

/// Adjunction check against a divisor encoding `2K` (used when only the
/// doubled canonical class has an integral representative):
/// `2K . C = 2 (2 genus(C) - 2 - C^2)`.
pub fn adjunction_check_doubled(
    curve: &str,
    two_k: &Divisor,
    config: &CurveConfig,
) -> Result<bool, SurfaceError> {
    let target = 2 * (2 * config.genus(curve)? - 2 - config.self_intersection(curve)?);
    Ok(pair(two_k, &Divisor::single(curve), config)? == target)
}

/// Contracts the named curves in order, each required to be rational with
/// self-intersection -1 at its turn. Returns the final configuration and
/// the discrepancy divisor `Delta` on the *original* configuration: the
/// canonical class upstairs equals the pullback of the downstairs one
/// plus `Delta`.
pub fn contract_sequence(
    config: &CurveConfig,
    order: &[&str],
) -> Result<(CurveConfig, Divisor), SurfaceError> {
    // Forward pass: simulate the contractions, snapshotting the state
    // before each one for the discrepancy fold afterwards.
    let mut states: Vec<CurveConfig> = Vec::new();
    let mut current = config.clone();
    for &name in order {
        let idx = current.require(name)?;
        if current.genus[idx] != 0 || current.self_int[idx] != -1 {
            return Err(SurfaceError::NotContractible(name.into()));
        }
        states.push(current.clone());
        // Blow down: every remaining curve gains (C.E)^2 on its
        // self-intersection, and pairs gain (C.E)(C'.E).
        let mut next = CurveConfig::new();
        let survivors: Vec<usize> = (0..current.names.len()).filter(|&i| i != idx).collect();
        for &i in &survivors {
            let e_mult = *current
                .meets
                .get(&(i.min(idx), i.max(idx)))
                .unwrap_or(&0);
            next.add_curve(&current.names[i], current.genus[i], current.self_int[i] + e_mult * e_mult)?;
        }
        for (a_pos, &i) in survivors.iter().enumerate() {
            for &j in survivors.iter().skip(a_pos + 1) {
                let old = *current.meets.get(&(i.min(j), i.max(j))).unwrap_or(&0);
                let via_e = current.meets.get(&(i.min(idx), i.max(idx))).unwrap_or(&0)
                    * current.meets.get(&(j.min(idx), j.max(idx))).unwrap_or(&0);
                if old + via_e != 0 {
                    next.set_meeting(&current.names[i], &current.names[j], old + via_e)?;
                }
            }
        }
        current = next;
    }
    // Backward pass: fold the discrepancy through the pullbacks. With E
    // the curve contracted at a step and Delta the discrepancy below it,
    // the discrepancy above is E + Delta + (Delta . E) E, intersections
    // taken in the pre-contraction state.
    let mut delta = Divisor::zero();
    for (state, &name) in states.iter().zip(order.iter()).rev() {
        let e = Divisor::single(name);
        let mult = pair(&delta, &e, state)?;
        delta = delta.add(&e.scale(1 + mult));
    }
    Ok((current, delta))
}

/// The three involutions acting on the surface, named by how they move the
/// modular curves: the level involution and the base involution fix every
/// curve, the swap involution exchanges the curve of norm `N` with the one
/// of norm `3N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Involution {
    /// Level involution: fixes every modular curve.
    Iota3,
    /// Swap involution: exchanges norms `N` and `3N`.
    IotaV,
    /// Base involution: fixes every modular curve.
    T,
}

/// The norm of the image curve of the norm-`N` modular curve under an
/// involution. Errors when `9 | N` (no such curve exists).
pub fn curve_image_under_involution(n: i64, which: Involution) -> Result<i64, SurfaceError> {
    if n < 1 {
        return Err(SurfaceError::NotPositive(n));
    }
    if n % 9 == 0 {
        return Err(SurfaceError::CurveAbsent(n));
    }
    Ok(match which {
        Involution::Iota3 | Involution::T => n,
        Involution::IotaV => {
            if n % 3 == 0 {
                n / 3
            } else {
                3 * n
            }
        }
    })
}

/// The classification outcome labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceClass {
    Rational,
    EnriquesBlownUp(i64),
    K3BlownUp(i64),
    MinimalGeneralType,
}

impl std::fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SurfaceClass::Rational => write!(f, "rational"),
            SurfaceClass::EnriquesBlownUp(n) => write!(f, "Enriques blown up {n}"),
            SurfaceClass::K3BlownUp(n) => write!(f, "K3 blown up {n}"),
            SurfaceClass::MinimalGeneralType => write!(f, "minimal general type"),
        }
    }
}

/// A verifiable classification certificate. [`classify`] checks the
/// certificate against the surface's invariants; it never searches for
/// minimal models itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// Castelnuovo-style rationality: with `q = 0`, contract the listed
    /// exceptional curves and exhibit a smooth rational curve of
    /// nonnegative self-intersection.
    Rational { config: CurveConfig, contract: Vec<String>, witness: String },
    /// Blow-down to a minimal model with `2K = 0`: the encoded `2K`
    /// divisor must equal twice the contraction discrepancy, and the
    /// blown-down surface must have `e = 12`, `chi = 1`, `q = 0`.
    Enriques { config: CurveConfig, two_k: Divisor, contract: Vec<String> },
    /// Free double cover of an Enriques-certified quotient with exactly
    /// doubled invariants.
    K3 { quotient: InvariantSet, quotient_certificate: Box<Certificate> },
    /// Effective canonical divisor with `K^2 > 0` and no exceptional
    /// curve in its support: minimal of general type.
    GeneralType { config: CurveConfig, k: Divisor },
}

fn check_certificate(inv: &InvariantSet, cert: &Certificate) -> Result<SurfaceClass, SurfaceError> {
    let fail = |msg: String| SurfaceError::CertificateInvalid(msg);
    match cert {
        Certificate::Rational { config, contract, witness } => {
            if inv.q() != 0 {
                return Err(fail(format!("rationality needs q = 0, got {}", inv.q())));
            }
            let names: Vec<&str> = contract.iter().map(|s| s.as_str()).collect();
            let (final_config, _) = contract_sequence(config, &names)?;
            let genus = final_config.genus(witness)?;
            let self_int = final_config.self_intersection(witness)?;
            if genus != 0 {
                return Err(fail(format!("witness curve {witness} has genus {genus}")));
            }
            if self_int < 0 {
                return Err(fail(format!(
                    "witness curve {witness} has self-intersection {self_int} after contraction"
                )));
            }
            Ok(SurfaceClass::Rational)
        }
        Certificate::Enriques { config, two_k, contract } => {
            let names: Vec<&str> = contract.iter().map(|s| s.as_str()).collect();
            let (_, delta) = contract_sequence(config, &names)?;
            if *two_k != delta.scale(2) {
                return Err(fail(
                    "doubled canonical divisor does not vanish on the blow-down".into(),
                ));
            }
            let n = contract.len() as i64;
            if inv.e() - n != 12 {
                return Err(fail(format!("blown-down Euler number is {}, not 12", inv.e() - n)));
            }
            if inv.chi() != 1 || inv.q() != 0 {
                return Err(fail("Enriques surfaces need chi = 1 and q = 0".into()));
            }
            Ok(SurfaceClass::EnriquesBlownUp(n))
        }
        Certificate::K3 { quotient, quotient_certificate } => {
            let below = check_certificate(quotient, quotient_certificate)?;
            let SurfaceClass::EnriquesBlownUp(n) = below else {
                return Err(fail("the quotient certificate must be an Enriques one".into()));
            };
            if inv.e() != 2 * quotient.e()
                || inv.chi() != 2 * quotient.chi()
                || inv.k2() != 2 * quotient.k2()
            {
                return Err(fail("cover invariants are not exactly double the quotient's".into()));
            }
            if inv.q() != 0 || quotient.q() != 0 {
                return Err(fail("both cover and quotient need q = 0".into()));
            }
            Ok(SurfaceClass::K3BlownUp(2 * n))
        }
        Certificate::GeneralType { config, k } => {
            if !k.is_effective() {
                return Err(fail("canonical divisor is not effective and nonzero".into()));
            }
            for name in k.support() {
                if config.genus(name)? == 0 && config.self_intersection(name)? == -1 {
                    return Err(fail(format!("support contains the exceptional curve {name}")));
                }
            }
            let k2 = pair(k, k, config)?;
            if k2 != inv.k2() {
                return Err(fail(format!(
                    "encoded K has K^2 = {k2}, invariants say {}",
                    inv.k2()
                )));
            }
            if k2 <= 0 {
                return Err(fail(format!("general type needs K^2 > 0, got {k2}")));
            }
            Ok(SurfaceClass::MinimalGeneralType)
        }
    }
}

/// Decides the classification label from exactly one certificate,
/// verifying the certificate against the invariants. Errors when zero or
/// several certificates are supplied, or when the certificate fails.
pub fn classify(inv: &InvariantSet, evidence: &[Certificate]) -> Result<SurfaceClass, SurfaceError> {
    match evidence {
        [cert] => check_certificate(inv, cert),
        other => Err(SurfaceError::CertificateCount(other.len())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(num: i64, den: i64) -> Rational {
        Rational::new(num, den).unwrap()
    }

    fn sing(r: i64, a: i64) -> CyclicSingularity {
        CyclicSingularity::new(r, a).unwrap()
    }

    #[test]
    fn invariant_set_validation() {
        let y = InvariantSet::new(22, 2, 2, 0).unwrap();
        assert_eq!((y.e(), y.chi(), y.k2(), y.q(), y.pg()), (22, 2, 2, 0, 1));
        assert_eq!(InvariantSet::new(12, 1, 0, 0).unwrap().pg(), 0);
        assert!(matches!(
            InvariantSet::new(22, 2, 3, 0),
            Err(SurfaceError::NoetherViolation { .. })
        ));
        assert!(matches!(
            InvariantSet::new(22, 2, 2, -1),
            Err(SurfaceError::NegativeIrregularity(-1))
        ));
        assert!(matches!(
            InvariantSet::new(0, 0, 0, 0),
            Err(SurfaceError::NegativeGeometricGenus(-1))
        ));
    }

    #[test]
    fn blow_up_and_down() {
        let y = InvariantSet::new(22, 2, 2, 0).unwrap();
        let up = y.blow_up(10);
        assert_eq!((up.e(), up.chi(), up.k2(), up.q()), (32, 2, -8, 0));
        assert_eq!(y.blow_up(0), y);
        assert_eq!(up.blow_down(10), y);
        let y2 = InvariantSet::new(14, 1, -2, 0).unwrap();
        let up2 = y2.blow_up(6);
        assert_eq!((up2.e(), up2.k2()), (20, -8));
    }

    #[test]
    fn involution_quotients() {
        let y1 = InvariantSet::new(28, 2, -4, 0).unwrap();
        let q = quotient_by_involution(&y1, 0, true).unwrap();
        let QuotientInvariants::Complete(y2) = q else { panic!("free quotient is complete") };
        assert_eq!((y2.e(), y2.chi(), y2.k2(), y2.q()), (14, 1, -2, 0));
        let up = InvariantSet::new(32, 2, -8, 0).unwrap();
        assert_eq!(
            quotient_by_involution(&up, 24, false).unwrap(),
            QuotientInvariants::EulerOnly(28)
        );
        let up2 = InvariantSet::new(20, 1, -8, 0).unwrap();
        assert_eq!(
            quotient_by_involution(&up2, 14, false).unwrap(),
            QuotientInvariants::EulerOnly(17)
        );
        assert!(matches!(
            quotient_by_involution(&up, 13, false),
            Err(SurfaceError::IsolatedFixedPoints(13))
        ));
        assert!(matches!(
            quotient_by_involution(&up, 2, true),
            Err(SurfaceError::FreeQuotientFixedLocus(2))
        ));
        let odd = InvariantSet::new(13, 1, -1, 0).unwrap();
        assert!(matches!(
            quotient_by_involution(&odd, 0, true),
            Err(SurfaceError::NonIntegralQuotient)
        ));
    }

    #[test]
    fn hj_chain_examples() {
        assert_eq!(hj_chain(&sing(2, 1)), vec![2]);
        assert_eq!(hj_chain(&sing(3, 1)), vec![3]);
        assert_eq!(hj_chain(&sing(3, 2)), vec![2, 2]);
        assert_eq!(hj_chain(&sing(5, 2)), vec![3, 2]);
        assert!(CyclicSingularity::new(4, 2).is_err());
        assert!(CyclicSingularity::new(3, 3).is_err());
        assert!(CyclicSingularity::new(3, 0).is_err());
        assert!(CyclicSingularity::new(1, 1).is_err());
    }

    #[test]
    fn hj_chain_families_and_evaluation() {
        for r in 2..=12i64 {
            assert_eq!(hj_chain(&sing(r, r - 1)), vec![2; (r - 1) as usize], "({r},{})", r - 1);
            assert_eq!(hj_chain(&sing(r, 1)), vec![r], "({r},1)");
        }
        // The continued fraction must evaluate back to r/a.
        for r in 2..=50i64 {
            for a in 1..r {
                if gcd(a, r) != 1 {
                    continue;
                }
                let chain = hj_chain(&sing(r, a));
                let mut value = Rational::from(*chain.last().unwrap());
                for &b in chain.iter().rev().skip(1) {
                    value = Rational::from(b) - value.recip().unwrap();
                }
                assert_eq!(value, rat(r, a), "({r},{a})");
                assert!(chain.iter().all(|&b| b >= 2));
            }
        }
    }

    #[test]
    fn resolution_euler_numbers() {
        let mut sings = vec![sing(2, 1); 8];
        sings.extend([sing(3, 2), sing(3, 2), sing(3, 1), sing(3, 1)]);
        assert_eq!(resolve_euler(Rational::from(8), &sings).unwrap(), 22);
        assert_eq!(resolve_euler(Rational::from(8), &[]).unwrap(), 8);
        assert_eq!(resolve_euler(Rational::from(8), &vec![sing(2, 1); 8]).unwrap(), 16);
        assert!(matches!(
            resolve_euler(rat(1, 3), &[]),
            Err(SurfaceError::NonIntegralEuler(_))
        ));
    }

    fn sample_config() -> CurveConfig {
        let mut c = CurveConfig::new();
        c.add_curve("E", 0, -1).unwrap();
        c.add_curve("A", 0, -2).unwrap();
        c.add_curve("D", 0, -4).unwrap();
        c.set_meeting("E", "A", 1).unwrap();
        c.set_meeting("E", "D", 1).unwrap();
        c
    }

    #[test]
    fn config_parsing_round_trip() {
        let text = "# sample\ncurve E genus=0 self=-1\ncurve A genus=0 self=-2\ncurve D genus=0 self=-4\nmeet E A 1\nmeet E D 1\n";
        let parsed = CurveConfig::parse(text).unwrap();
        assert_eq!(parsed, sample_config());
        assert_eq!(CurveConfig::parse(&parsed.render()).unwrap(), parsed);
        assert_eq!(parsed.meeting("A", "E").unwrap(), 1);
        assert_eq!(parsed.meeting("A", "D").unwrap(), 0);
        assert_eq!(parsed.genus("D").unwrap(), 0);
        assert_eq!(parsed.self_intersection("D").unwrap(), -4);
    }

    #[test]
    fn config_parse_rejections() {
        assert!(matches!(
            CurveConfig::parse("curve E genus=0 self=-1\ncurve E genus=0 self=-2"),
            Err(SurfaceError::DuplicateCurve(_))
        ));
        assert!(matches!(
            CurveConfig::parse("curve E genus=0 self=-1\nmeet E F 1"),
            Err(SurfaceError::UnknownCurve(_))
        ));
        assert!(matches!(
            CurveConfig::parse("curve E genus=0 self=-1\ncurve A genus=0 self=-2\nmeet E A 1\nmeet A E 2"),
            Err(SurfaceError::DuplicateMeeting(_, _))
        ));
        assert!(matches!(
            CurveConfig::parse("curve E genus=0 self=-1\nmeet E E 1"),
            Err(SurfaceError::SelfMeeting(_))
        ));
        assert!(matches!(
            CurveConfig::parse("curve E genus=-1 self=0"),
            Err(SurfaceError::NegativeGenus(-1))
        ));
        assert!(matches!(
            CurveConfig::parse("curve E genus=0 self=-1\ncurve A genus=0 self=-2\nmeet E A -1"),
            Err(SurfaceError::NegativeMultiplicity(-1))
        ));
        assert!(matches!(
            CurveConfig::parse("squiggle"),
            Err(SurfaceError::UnparsableLine(_))
        ));
        assert!(matches!(
            CurveConfig::parse("curve E genus=x self=-1"),
            Err(SurfaceError::UnparsableLine(_))
        ));
    }

    #[test]
    fn divisor_parsing_and_arithmetic() {
        let config = sample_config();
        let d = Divisor::parse("div E 2 A 1", &config).unwrap();
        assert_eq!(d.coeff("E"), 2);
        assert_eq!(d.coeff("A"), 1);
        assert_eq!(d.coeff("D"), 0);
        assert_eq!(d.support(), vec!["A", "E"]);
        assert!(d.is_effective());
        assert_eq!(Divisor::parse(&d.render(), &config).unwrap(), d);
        assert!(Divisor::parse("div X 1", &config).is_err());
        assert!(Divisor::parse("div E 1 E 2", &config).is_err());
        assert!(Divisor::parse("div E", &config).is_err());
        assert!(Divisor::parse("sum E 1", &config).is_err());
        let zero = Divisor::new(&config, &[("E", 0)]).unwrap();
        assert!(zero.is_zero());
        assert_eq!(d.add(&d.scale(-1)), Divisor::zero());
        assert!(!d.scale(-1).is_effective());
    }

    #[test]
    fn pairing_is_bilinear_and_symmetric() {
        let config = sample_config();
        let divisors = [
            Divisor::new(&config, &[("E", 1)]).unwrap(),
            Divisor::new(&config, &[("A", 1)]).unwrap(),
            Divisor::new(&config, &[("E", 2), ("A", -1), ("D", 3)]).unwrap(),
            Divisor::new(&config, &[("D", 1), ("A", 2)]).unwrap(),
        ];
        for d1 in &divisors {
            for d2 in &divisors {
                assert_eq!(pair(d1, d2, &config).unwrap(), pair(d2, d1, &config).unwrap());
                let sum = d1.add(d2);
                for d3 in &divisors {
                    assert_eq!(
                        pair(&sum, d3, &config).unwrap(),
                        pair(d1, d3, &config).unwrap() + pair(d2, d3, &config).unwrap()
                    );
                }
            }
        }
        let e = Divisor::new(&config, &[("E", 1)]).unwrap();
        assert_eq!(pair(&e, &e, &config).unwrap(), -1);
        assert_eq!(pair(&Divisor::zero(), &e, &config).unwrap(), 0);
    }

    #[test]
    fn contraction_updates_intersections_and_discrepancy() {
        let config = sample_config();
        let (after, delta) = contract_sequence(&config, &["E"]).unwrap();
        assert_eq!(after.self_intersection("A").unwrap(), -1);
        assert_eq!(after.self_intersection("D").unwrap(), -3);
        assert_eq!(after.meeting("A", "D").unwrap(), 1);
        assert_eq!(delta, Divisor::new(&config, &[("E", 1)]).unwrap());
        // Contract the promoted curve as well.
        let (after2, delta2) = contract_sequence(&config, &["E", "A"]).unwrap();
        assert_eq!(after2.self_intersection("D").unwrap(), -2);
        assert_eq!(delta2, Divisor::new(&config, &[("E", 2), ("A", 1)]).unwrap());
        assert!(matches!(
            contract_sequence(&config, &["A"]),
            Err(SurfaceError::NotContractible(_))
        ));
        assert!(matches!(
            contract_sequence(&config, &["X"]),
            Err(SurfaceError::UnknownCurve(_))
        ));
    }

    #[test]
    fn adjunction_checks() {
        let mut config = CurveConfig::new();
        config.add_curve("F2", 0, -1).unwrap();
        config.add_curve("A", 0, -2).unwrap();
        config.set_meeting("F2", "A", 1).unwrap();
        let two_k = Divisor::parse("div F2 4 A 2", &config).unwrap();
        assert!(adjunction_check_doubled("F2", &two_k, &config).unwrap());
        assert!(adjunction_check_doubled("A", &two_k, &config).unwrap());
        // An honest canonical divisor on a one-curve config: K = C for a
        // genus-3 curve of self-intersection 2 (K.C = 2g - 2 - C^2 = 2).
        let mut c2 = CurveConfig::new();
        c2.add_curve("C", 3, 2).unwrap();
        let k = Divisor::parse("div C 1", &c2).unwrap();
        assert!(adjunction_check("C", &k, &c2).unwrap());
        assert!(!adjunction_check("F2", &Divisor::zero(), &config).unwrap());
    }

    #[test]
    fn enriques_contraction_discrepancy() {
        let mut config = CurveConfig::new();
        config.add_curve("F2", 0, -1).unwrap();
        config.add_curve("A", 0, -2).unwrap();
        config.set_meeting("F2", "A", 1).unwrap();
        let (final_config, delta) = contract_sequence(&config, &["F2", "A"]).unwrap();
        assert!(final_config.names().is_empty());
        assert_eq!(delta, Divisor::new(&config, &[("F2", 2), ("A", 1)]).unwrap());
        let two_k = Divisor::parse("div F2 4 A 2", &config).unwrap();
        assert_eq!(two_k, delta.scale(2));
    }

    #[test]
    fn involution_images() {
        assert_eq!(curve_image_under_involution(2, Involution::IotaV).unwrap(), 6);
        assert_eq!(curve_image_under_involution(6, Involution::IotaV).unwrap(), 2);
        assert_eq!(curve_image_under_involution(13, Involution::T).unwrap(), 13);
        assert_eq!(curve_image_under_involution(5, Involution::Iota3).unwrap(), 5);
        assert!(matches!(
            curve_image_under_involution(9, Involution::IotaV),
            Err(SurfaceError::CurveAbsent(9))
        ));
        assert!(matches!(
            curve_image_under_involution(18, Involution::T),
            Err(SurfaceError::CurveAbsent(18))
        ));
        assert!(curve_image_under_involution(0, Involution::T).is_err());
    }

    #[test]
    fn classification_certificates() {
        // Rational: two contractions promote the witness from -2 to +3.
        let mut config = CurveConfig::new();
        config.add_curve("E1", 0, -1).unwrap();
        config.add_curve("E2", 0, -2).unwrap();
        config.add_curve("W", 0, -2).unwrap();
        config.set_meeting("E1", "E2", 1).unwrap();
        config.set_meeting("E1", "W", 1).unwrap();
        config.set_meeting("E2", "W", 1).unwrap();
        let cert = Certificate::Rational {
            config: config.clone(),
            contract: vec!["E1".into(), "E2".into()],
            witness: "W".into(),
        };
        let inv = InvariantSet::new(12, 1, 0, 0).unwrap();
        assert_eq!(classify(&inv, &[cert.clone()]).unwrap(), SurfaceClass::Rational);
        assert!(matches!(classify(&inv, &[]), Err(SurfaceError::CertificateCount(0))));
        assert!(matches!(
            classify(&inv, &[cert.clone(), cert.clone()]),
            Err(SurfaceError::CertificateCount(2))
        ));
        // Witness must reach nonnegative self-intersection.
        let bad = Certificate::Rational {
            config: config.clone(),
            contract: vec!["E1".into()],
            witness: "W".into(),
        };
        assert!(matches!(
            classify(&inv, &[bad]),
            Err(SurfaceError::CertificateInvalid(_))
        ));

        // General type on a tiny config: one genus-3 curve with K = C,
        // K^2 = 2.
        let mut c2 = CurveConfig::new();
        c2.add_curve("C", 3, 2).unwrap();
        let k = Divisor::parse("div C 1", &c2).unwrap();
        let gt = Certificate::GeneralType { config: c2.clone(), k };
        let inv_gt = InvariantSet::new(10, 1, 2, 0).unwrap();
        assert_eq!(classify(&inv_gt, &[gt.clone()]).unwrap(), SurfaceClass::MinimalGeneralType);
        let inv_wrong = InvariantSet::new(22, 2, 2, 0).unwrap();
        assert_eq!(classify(&inv_wrong, &[gt]).unwrap(), SurfaceClass::MinimalGeneralType);

        // Enriques and K3 on the two-curve model.
        let mut e_config = CurveConfig::new();
        e_config.add_curve("F2", 0, -1).unwrap();
        e_config.add_curve("A", 0, -2).unwrap();
        e_config.set_meeting("F2", "A", 1).unwrap();
        let two_k = Divisor::parse("div F2 4 A 2", &e_config).unwrap();
        let enriques = Certificate::Enriques {
            config: e_config,
            two_k,
            contract: vec!["F2".into(), "A".into()],
        };
        let inv_enriques = InvariantSet::new(14, 1, -2, 0).unwrap();
        assert_eq!(
            classify(&inv_enriques, &[enriques.clone()]).unwrap(),
            SurfaceClass::EnriquesBlownUp(2)
        );
        let k3 = Certificate::K3 {
            quotient: inv_enriques,
            quotient_certificate: Box::new(enriques),
        };
        let inv_k3 = InvariantSet::new(28, 2, -4, 0).unwrap();
        assert_eq!(classify(&inv_k3, &[k3.clone()]).unwrap(), SurfaceClass::K3BlownUp(4));
        let inv_not_double = InvariantSet::new(26, 2, -2, 0).unwrap();
        assert!(matches!(
            classify(&inv_not_double, &[k3]),
            Err(SurfaceError::CertificateInvalid(_))
        ));
    }

    #[test]
    fn class_labels_display() {
        assert_eq!(SurfaceClass::Rational.to_string(), "rational");
        assert_eq!(SurfaceClass::EnriquesBlownUp(2).to_string(), "Enriques blown up 2");
        assert_eq!(SurfaceClass::K3BlownUp(4).to_string(), "K3 blown up 4");
        assert_eq!(SurfaceClass::MinimalGeneralType.to_string(), "minimal general type");
    }
}
