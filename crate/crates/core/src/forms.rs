//! Integral binary quadratic forms under proper (determinant-one) equivalence.
//!
//! A form `[a, b, c]` stands for `a x^2 + b x y + c y^2`. The module
//! provides:
//!
//! * Gauss reduction of positive definite forms and proper-equivalence
//!   tests ([`BinaryForm::reduce`], [`equivalent_proper`]),
//! * class numbers and full enumeration of reduced primitive classes
//!   ([`class_number`], [`enumerate_classes`], [`h_prime`]),
//! * proper automorphism counts ([`automorphism_count`]),
//! * the local invariants used by the special-point counts: the modularity
//!   factor [`alpha_p`], `p`-adic anisotropy ([`is_anisotropic_p`]), and the
//!   three-way content split ([`content_split`]).
//!
//! Orientation matters throughout: `[2, 1, 5]` and `[2, -1, 5]` are distinct
//! classes, and enumeration keeps both.

use thiserror::Error;

use crate::arith::{
    gcd, is_prime, is_square_in_qp, prime_divisors, sqrt_floor, valuation, ArithError, Rational,
};

/// Errors from binary-form operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormError {
    #[error("degenerate form: discriminant is zero")]
    Degenerate,
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("{0} is not a valid discriminant (need negative, 0 or 1 mod 4)")]
    InvalidDiscriminant(i64),
    #[error("discriminants differ: {0} vs {1}")]
    DiscriminantMismatch(i64, i64),
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("scale factor must be positive, got {0}")]
    BadScale(i64),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// An integral binary quadratic form `a x^2 + b x y + c y^2`.
///
/// Construction rejects degenerate forms (`b^2 - 4ac = 0`), so the
/// discriminant is always nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryForm {
    a: i64,
    b: i64,
    c: i64,
}

impl BinaryForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self, FormError> {
        let f = BinaryForm { a, b, c };
        if f.discriminant() == 0 {
            return Err(FormError::Degenerate);
        }
        Ok(f)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    /// `d = b^2 - 4ac`; negative exactly for definite forms.
    pub fn discriminant(&self) -> i64 {
        let b2 = self.b.checked_mul(self.b).expect("discriminant overflow");
        let ac = self
            .a
            .checked_mul(self.c)
            .and_then(|x| x.checked_mul(4))
            .expect("discriminant overflow");
        b2.checked_sub(ac).expect("discriminant overflow")
    }

    /// `gcd(a, b, c)`, always positive.
    pub fn content(&self) -> i64 {
        gcd(gcd(self.a, self.b), self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn is_positive_definite(&self) -> bool {
        self.discriminant() < 0 && self.a > 0
    }

    /// The form with all coefficients multiplied by `m > 0`.
    pub fn scale(&self, m: i64) -> Result<Self, FormError> {
        if m <= 0 {
            return Err(FormError::BadScale(m));
        }
        let mul = |x: i64| x.checked_mul(m).expect("scale overflow");
        BinaryForm::new(mul(self.a), mul(self.b), mul(self.c))
    }

    /// The primitive form `self / content`.
    pub fn primitive_part(&self) -> Self {
        let m = self.content();
        BinaryForm { a: self.a / m, b: self.b / m, c: self.c / m }
    }

    /// Evaluates the form at `(x, y)`.
    pub fn eval(&self, x: i64, y: i64) -> i64 {
        let t1 = self.a.checked_mul(x).and_then(|v| v.checked_mul(x));
        let t2 = self.b.checked_mul(x).and_then(|v| v.checked_mul(y));
        let t3 = self.c.checked_mul(y).and_then(|v| v.checked_mul(y));
        t1.zip(t2)
            .zip(t3)
            .and_then(|((t1, t2), t3)| t1.checked_add(t2)?.checked_add(t3))
            .expect("form evaluation overflow")
    }

    /// Gauss reduction for positive definite forms.
    ///
    /// The result satisfies `-a < b <= a <= c`, with `b >= 0` whenever
    /// `a == c` or `b == a`; each proper class contains exactly one such
    /// form. Errors unless the form is positive definite.
    pub fn reduce(&self) -> Result<Self, FormError> {
        if !self.is_positive_definite() {
            return Err(FormError::NotPositiveDefinite);
        }
        let d = self.discriminant();
        let (mut a, mut b) = (self.a, self.b);
        let c = loop {
            // Translate: bring b into (-a, a]. The third coefficient is
            // always (b^2 - d) / 4a, so it never needs carrying.
            let two_a = 2 * a;
            let mut r = b.rem_euclid(two_a);
            if r > a {
                r -= two_a;
            }
            b = r;
            let c = (b * b - d) / (4 * a);
            if a > c {
                // Rotate: swap outer coefficients, flipping b.
                (a, b) = (c, -b);
                continue;
            }
            break c;
        };
        // Tie-breaks: b >= 0 when the class contains both signs.
        if b < 0 && (a == c || b == -a) {
            b = -b;
        }
        debug_assert!(-a < b && b <= a && a <= c);
        Ok(BinaryForm { a, b, c })
    }

    /// Sort key giving the deterministic order used for class listings:
    /// ascending `a`, then `c`, then `|b|` with the positive sign first.
    pub fn class_order_key(&self) -> (i64, i64, i64, i64) {
        (self.a, self.c, self.b.abs(), (self.b < 0) as i64)
    }
}

impl std::fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

/// Whether two positive definite forms are properly equivalent.
///
/// Errors if the discriminants differ (the comparison would be vacuous) or
/// either form is not positive definite.
pub fn equivalent_proper(f: &BinaryForm, g: &BinaryForm) -> Result<bool, FormError> {
    if f.discriminant() != g.discriminant() {
        return Err(FormError::DiscriminantMismatch(f.discriminant(), g.discriminant()));
    }
    Ok(f.reduce()? == g.reduce()?)
}

fn validate_negative_discriminant(d: i64) -> Result<(), FormError> {
    if d >= 0 || !matches!(d.rem_euclid(4), 0 | 1) {
        return Err(FormError::InvalidDiscriminant(d));
    }
    Ok(())
}

/// All reduced primitive forms of negative discriminant `d`, in the order
/// of [`BinaryForm::class_order_key`].
pub fn enumerate_classes(d: i64) -> Result<Vec<BinaryForm>, FormError> {
    validate_negative_discriminant(d)?;
    let mut classes = Vec::new();
    let a_max = sqrt_floor(-d / 3);
    for a in 1..=a_max {
        for b in (-a + 1)..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            // Skip the negative-b representative when both signs reduce to one class.
            if b < 0 && (a == c || b == -a) {
                continue;
            }
            let f = BinaryForm { a, b, c };
            if f.is_primitive() {
                classes.push(f);
            }
        }
    }
    classes.sort_by_key(|f| f.class_order_key());
    Ok(classes)
}

/// The class number `h(d)`: the number of reduced primitive positive
/// definite forms of discriminant `d < 0`.
pub fn class_number(d: i64) -> Result<i64, FormError> {
    Ok(enumerate_classes(d)?.len() as i64)
}

/// The modified class number `h'(d)`: `h(-3) = 1/3`, `h(-4) = 1/2`, and
/// `h(d)` otherwise.
pub fn h_prime(d: i64) -> Result<Rational, FormError> {
    match d {
        -3 => Ok(Rational::new(1, 3).expect("nonzero denominator")),
        -4 => Ok(Rational::new(1, 2).expect("nonzero denominator")),
        _ => Ok(Rational::from(class_number(d)?)),
    }
}

/// The order `w` of the proper automorphism group of a positive definite
/// form: 6 for multiples of `x^2 - xy + y^2`, 4 for multiples of
/// `x^2 + y^2`, and 2 otherwise.
pub fn automorphism_count(f: &BinaryForm) -> Result<i64, FormError> {
    let r = f.reduce()?;
    let m = r.content();
    Ok(if r == (BinaryForm { a: m, b: m, c: m }) {
        6
    } else if r == (BinaryForm { a: m, b: 0, c: m }) {
        4
    } else {
        2
    })
}

/// The three-way content split `m = m1 * m2 * m3` of a form's content by
/// prime support: `m1` collects the primes dividing `d_a` (the algebra
/// discriminant), `m2` those dividing `d_lambda` (the order discriminant),
/// and `m3` the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContentSplit {
    pub m1: i64,
    pub m2: i64,
    pub m3: i64,
}

/// Splits the content of `f` by the prime supports of `d_a` and `d_lambda`.
///
/// The two supports must be disjoint for the split to be well defined;
/// callers guarantee this via parameter validation.
pub fn content_split(f: &BinaryForm, d_a: i64, d_lambda: i64) -> ContentSplit {
    let mut rest = f.content();
    let mut split_off = |modulus: i64| {
        let mut part = 1i64;
        for p in prime_divisors(modulus).expect("nonzero modulus") {
            while rest % p == 0 {
                rest /= p;
                part *= p;
            }
        }
        part
    };
    let m1 = split_off(d_a);
    let m2 = split_off(d_lambda);
    ContentSplit { m1, m2, m3: rest }
}

/// The local modularity factor `alpha_p`: 1 when the form is `p`-adically
/// modular (`v_p(d) = 2 v_p(content)`), else 2. Errors on non-prime `p`.
pub fn alpha_p(f: &BinaryForm, p: i64) -> Result<i64, FormError> {
    if !is_prime(p) {
        return Err(FormError::NotPrime(p));
    }
    let vd = valuation(f.discriminant(), p)?;
    let vm = valuation(f.content(), p)?;
    Ok(if vd == 2 * vm { 1 } else { 2 })
}

/// Whether the form is anisotropic over `Q_p`: true iff its discriminant is
/// not a `p`-adic square.
pub fn is_anisotropic_p(f: &BinaryForm, p: i64) -> Result<bool, FormError> {
    if !is_prime(p) {
        return Err(FormError::NotPrime(p));
    }
    Ok(!is_square_in_qp(f.discriminant(), p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn form(a: i64, b: i64, c: i64) -> BinaryForm {
        BinaryForm::new(a, b, c).unwrap()
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(form(2, 2, 7).discriminant(), -52);
        assert_eq!(form(13, -13, 13).discriminant(), -507);
        assert_eq!(form(1, 0, -1).discriminant(), 4);
        assert!(BinaryForm::new(1, 2, 1).is_err()); // b^2 = 4ac
    }

    #[test]
    fn content_and_split() {
        assert_eq!(form(39, 0, 39).content(), 39);
        assert_eq!(content_split(&form(39, 0, 39), 13, 3), ContentSplit { m1: 13, m2: 3, m3: 1 });
        assert_eq!(content_split(&form(6, 6, 21), 13, 3), ContentSplit { m1: 1, m2: 3, m3: 1 });
        assert_eq!(content_split(&form(2, 2, 7), 13, 3), ContentSplit { m1: 1, m2: 1, m3: 1 });
        assert_eq!(content_split(&form(34, 34, 119), 13, 3), ContentSplit { m1: 1, m2: 1, m3: 17 });
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(form(7, -1, 7).reduce().unwrap(), form(7, 1, 7));
        assert_eq!(form(5, -3, 5).reduce().unwrap(), form(5, 3, 5));
        assert_eq!(form(13, -13, 13).reduce().unwrap(), form(13, 13, 13));
        assert_eq!(form(2, 1, 5).reduce().unwrap(), form(2, 1, 5));
        assert_eq!(form(2, -1, 5).reduce().unwrap(), form(2, -1, 5));
        // A translate and rotate of [2,1,5]: same class.
        assert_eq!(form(5, -1, 2).reduce().unwrap(), form(2, 1, 5));
        assert!(form(1, 0, -1).reduce().is_err());
    }

    #[test]
    fn reduction_is_idempotent_and_preserves_invariants() {
        let mut checked = 0u32;
        for a in 1..14i64 {
            for b in -14..=14i64 {
                for c in 1..14i64 {
                    let Ok(f) = BinaryForm::new(a, b, c) else { continue };
                    if !f.is_positive_definite() {
                        continue;
                    }
                    let r = f.reduce().unwrap();
                    assert_eq!(r.reduce().unwrap(), r);
                    assert_eq!(r.discriminant(), f.discriminant());
                    assert_eq!(r.content(), f.content());
                    assert!(-r.a() < r.b() && r.b() <= r.a() && r.a() <= r.c());
                    checked += 1;
                }
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn class_enumeration_examples() {
        assert_eq!(enumerate_classes(-4).unwrap(), vec![form(1, 0, 1)]);
        assert_eq!(enumerate_classes(-52).unwrap(), vec![form(1, 0, 13), form(2, 2, 7)]);
        assert_eq!(
            enumerate_classes(-39).unwrap(),
            vec![form(1, 1, 10), form(2, 1, 5), form(2, -1, 5), form(3, 3, 4)]
        );
        assert!(enumerate_classes(-5).is_err());
        assert!(enumerate_classes(4).is_err());
    }

    #[test]
    fn class_number_examples() {
        for (d, h) in [(-3, 1), (-4, 1), (-7, 1), (-12, 1), (-15, 2), (-24, 2), (-39, 4), (-52, 2), (-60, 2), (-156, 4)] {
            assert_eq!(class_number(d).unwrap(), h, "d={d}");
        }
    }

    #[test]
    fn class_number_against_independent_double_loop() {
        // Independent oracle: enumerate reduced triples with the b-loop
        // outermost and c recovered by divisor search.
        fn oracle(d: i64) -> i64 {
            let mut count = 0;
            let bound = sqrt_floor(-d / 3);
            for b in -bound..=bound {
                if (b * b - d) % 4 != 0 {
                    continue;
                }
                let m = (b * b - d) / 4; // = a*c
                let mut a = b.abs().max(1);
                while a * a <= m {
                    if m % a == 0 {
                        let c = m / a;
                        let reduced_ok = !(b < 0 && (a == b.abs() || a == c));
                        if reduced_ok && gcd(gcd(a, b), c) == 1 && a >= b.abs() {
                            count += 1;
                        }
                    }
                    a += 1;
                }
            }
            count
        }
        for d in (-5000i64..=-3).filter(|d| matches!(d.rem_euclid(4), 0 | 1)) {
            assert_eq!(class_number(d).unwrap(), oracle(d), "d={d}");
        }
    }

    #[test]
    fn h_prime_examples() {
        assert_eq!(h_prime(-3).unwrap(), Rational::new(1, 3).unwrap());
        assert_eq!(h_prime(-4).unwrap(), Rational::new(1, 2).unwrap());
        assert_eq!(h_prime(-60).unwrap(), Rational::from(2));
    }

    /// Counts proper automorphisms by enumerating integral matrices.
    fn automorphism_oracle(f: &BinaryForm, bound: i64) -> i64 {
        let mut count = 0;
        for p in -bound..=bound {
            for q in -bound..=bound {
                for r in -bound..=bound {
                    for s in -bound..=bound {
                        if p * s - q * r != 1 {
                            continue;
                        }
                        // f(px + qy, rx + sy) coefficients
                        let a2 = f.eval(p, r);
                        let c2 = f.eval(q, s);
                        let b2 = f.eval(p + q, r + s) - a2 - c2;
                        if (a2, b2, c2) == (f.a(), f.b(), f.c()) {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn automorphism_count_examples() {
        assert_eq!(automorphism_count(&form(1, 0, 1)).unwrap(), 4);
        assert_eq!(automorphism_count(&form(1, -1, 1)).unwrap(), 6);
        assert_eq!(automorphism_count(&form(2, 0, 39)).unwrap(), 2);
        assert_eq!(automorphism_count(&form(13, 0, 13)).unwrap(), 4);
        assert_eq!(automorphism_count(&form(13, -13, 13)).unwrap(), 6);
        assert_eq!(automorphism_count(&form(5, 3, 5)).unwrap(), 2);
    }

    #[test]
    fn automorphism_count_matches_stabilizer_enumeration() {
        // Automorphisms of a reduced positive definite form have entries
        // bounded by 1 in absolute value when a, c are the two successive
        // minima; bound 2 is safely conservative for these small forms.
        for f in [
            form(1, 0, 1),
            form(1, 1, 1),
            form(2, 2, 2),
            form(3, 0, 3),
            form(2, 1, 5),
            form(2, 2, 7),
            form(1, 1, 10),
            form(5, 0, 39),
        ] {
            assert_eq!(automorphism_count(&f).unwrap(), automorphism_oracle(&f, 2), "{f}");
        }
    }

    #[test]
    fn alpha_p_examples() {
        assert_eq!(alpha_p(&form(13, 0, 13), 13).unwrap(), 1);
        assert_eq!(alpha_p(&form(2, 0, 39), 13).unwrap(), 2);
        assert_eq!(alpha_p(&form(39, 0, 39), 3).unwrap(), 1);
        assert_eq!(alpha_p(&form(2, 0, 39), 3).unwrap(), 2);
        assert!(alpha_p(&form(1, 0, 1), 4).is_err());
    }

    #[test]
    fn alpha_p_ignores_prime_to_p_scaling() {
        for (a, b, c) in [(1, 0, 1), (2, 0, 39), (13, 0, 13), (2, 1, 5)] {
            let f = form(a, b, c);
            for p in [3, 13] {
                for m in [2, 5, 7, 11] {
                    assert_eq!(
                        alpha_p(&f.scale(m).unwrap(), p).unwrap(),
                        alpha_p(&f, p).unwrap(),
                        "{f} scaled by {m} at {p}"
                    );
                }
            }
        }
    }

    #[test]
    fn proper_equivalence_is_an_equivalence_relation() {
        for d in [-39, -52, -84, -120] {
            let mut pool: Vec<BinaryForm> = Vec::new();
            for a in 1..12i64 {
                for b in -12..=12i64 {
                    for c in 1..12i64 {
                        let Ok(f) = BinaryForm::new(a, b, c) else { continue };
                        if f.discriminant() == d && f.is_positive_definite() {
                            pool.push(f);
                        }
                    }
                }
            }
            assert!(pool.len() >= 3, "pool too small for d={d}");
            for f in &pool {
                assert!(equivalent_proper(f, f).unwrap());
                for g in &pool {
                    let fg = equivalent_proper(f, g).unwrap();
                    assert_eq!(fg, equivalent_proper(g, f).unwrap());
                    for h in &pool {
                        if fg && equivalent_proper(g, h).unwrap() {
                            assert!(equivalent_proper(f, h).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn anisotropy_examples() {
        assert!(is_anisotropic_p(&form(2, 2, 7), 3).unwrap());
        assert!(is_anisotropic_p(&form(2, 1, 5), 3).unwrap());
        assert!(!is_anisotropic_p(&form(1, 0, -1), 3).unwrap()); // isotropic: d = 4
        assert!(is_anisotropic_p(&form(1, 0, -7), 2).unwrap()); // d = 28 = 4*7, 7 != 1 mod 8
        assert!(!is_anisotropic_p(&form(1, 0, 7), 2).unwrap()); // d = -28 = 4*(-7), -7 = 1 mod 8
    }

    #[test]
    fn proper_equivalence_examples() {
        assert!(!equivalent_proper(&form(2, 1, 5), &form(2, -1, 5)).unwrap());
        assert!(equivalent_proper(&form(5, -3, 5), &form(5, 3, 5)).unwrap());
        assert!(equivalent_proper(&form(2, 1, 5), &form(5, -1, 2)).unwrap());
        assert!(equivalent_proper(&form(13, -13, 13), &form(13, 13, 13)).unwrap());
        assert!(matches!(
            equivalent_proper(&form(1, 0, 1), &form(1, 1, 1)),
            Err(FormError::DiscriminantMismatch(-4, -3))
        ));
    }

    #[test]
    fn class_enumeration_is_complete_and_reduced() {
        // Every primitive positive definite form with small coefficients
        // reduces to a member of the enumerated class list.
        for a in 1..10i64 {
            for b in -10..=10i64 {
                for c in 1..10i64 {
                    let Ok(f) = BinaryForm::new(a, b, c) else { continue };
                    if !f.is_positive_definite() || !f.is_primitive() {
                        continue;
                    }
                    let classes = enumerate_classes(f.discriminant()).unwrap();
                    let r = f.reduce().unwrap();
                    assert!(classes.contains(&r), "{f} -> {r} not listed");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn reduction_preserves_proper_equivalence_under_unimodular_action(
            a in 1i64..20, b in -20i64..20, c in 1i64..20,
            q in -3i64..=3, r in -3i64..=3,
        ) {
            prop_assume!(b * b - 4 * a * c < 0);
            let f = BinaryForm::new(a, b, c).unwrap();
            // Act by the unimodular matrix [[1, q], [r, 1 + q*r]].
            let (p, s) = (1, 1 + q * r);
            let a2 = f.eval(p, r);
            let c2 = f.eval(q, s);
            let b2 = f.eval(p + q, r + s) - a2 - c2;
            let g = BinaryForm::new(a2, b2, c2).unwrap();
            prop_assert_eq!(f.reduce().unwrap(), g.reduce().unwrap());
        }
    }
}
