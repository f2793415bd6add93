//! Exact scalar arithmetic: rationals, factorization, and local symbols.
//!
//! Provides the number-theoretic primitives the rest of the crate is built
//! on:
//!
//! * [`Rational`] — arbitrary-sign `i64` fractions kept in lowest terms,
//! * [`factorize`] / [`valuation`] / [`sigma1`] — trial-division
//!   factorization and divisor sums,
//! * [`kronecker`] — the Kronecker symbol extending Legendre and Jacobi,
//! * [`hilbert`] — Hilbert symbols over every completion of `Q`.
//!
//! All operations are exact over 64-bit integers. Overflow is detected and
//! rejected (by panic with a clear message), never wrapped; the quantities
//! in scope are all desk-scale, so hitting the limit indicates a caller bug.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use thiserror::Error;

/// Errors from scalar arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("{0} is not a valid place (expected a prime or infinity)")]
    InvalidPlace(i64),
    #[error("n must be positive, got {0}")]
    NotPositive(i64),
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Greatest common divisor, always nonnegative; `gcd(0, 0) = 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    i64::try_from(a).expect("gcd overflow")
}

/// Least common multiple of two positive integers.
pub fn lcm(a: i64, b: i64) -> i64 {
    assert!(a > 0 && b > 0, "lcm arguments must be positive");
    (a / gcd(a, b)).checked_mul(b).expect("lcm overflow")
}

/// Largest integer `r` with `r * r <= n`.
pub fn sqrt_floor(n: i64) -> i64 {
    assert!(n >= 0, "sqrt_floor of negative number");
    let mut r = (n as f64).sqrt() as i64;
    while r > 0 && r * r > n {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).map_or(false, |s| s <= n) {
        r += 1;
    }
    r
}

/// Deterministic primality test by trial division.
pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact rational number with `i64` numerator and denominator.
///
/// Kept in lowest terms with a positive denominator. Arithmetic is exact;
/// any operation whose result leaves the 64-bit range panics rather than
/// wrapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    /// Builds `num/den` in lowest terms. Errors on a zero denominator.
    pub fn new(num: i64, den: i64) -> Result<Self, ArithError> {
        if den == 0 {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::normalize(num as i128, den as i128))
    }

    fn normalize(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let sign = if (num < 0) == (den < 0) { 1 } else { -1 };
        let (mut n, mut d) = (num.unsigned_abs(), den.unsigned_abs());
        let (mut x, mut y) = (n, d);
        while y != 0 {
            (x, y) = (y, x % y);
        }
        if x > 1 {
            n /= x;
            d /= x;
        }
        let num = i64::try_from(sign * i128::try_from(n).expect("rational overflow"))
            .expect("rational overflow");
        let den = i64::try_from(d).expect("rational overflow");
        Rational { num, den }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.is_integer().then_some(self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn recip(&self) -> Result<Self, ArithError> {
        Rational::new(self.den, self.num)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational { num: n, den: 1 }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        let num = self.num as i128 * rhs.den as i128 + rhs.num as i128 * self.den as i128;
        Rational::normalize(num, self.den as i128 * rhs.den as i128)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: self.num.checked_neg().expect("rational overflow"), den: self.den }
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational::normalize(
            self.num as i128 * rhs.num as i128,
            self.den as i128 * rhs.den as i128,
        )
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational::normalize(
            self.num as i128 * rhs.den as i128,
            self.den as i128 * rhs.num as i128,
        )
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rational {
    /// Integers print without a denominator; everything else as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// A nonzero integer as sign times a product of prime powers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    /// `+1` or `-1`.
    pub sign: i64,
    /// `(prime, exponent)` pairs with primes strictly increasing.
    pub factors: Vec<(i64, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn reconstruct(&self) -> i64 {
        let mut n: i64 = self.sign;
        for &(p, e) in &self.factors {
            for _ in 0..e {
                n = n.checked_mul(p).expect("factorization overflow");
            }
        }
        n
    }

    /// All positive divisors of `|n|`, sorted ascending.
    pub fn divisors(&self) -> Vec<i64> {
        let mut divs = vec![1i64];
        for &(p, e) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
            for &d in &divs {
                let mut pk = 1i64;
                for _ in 0..=e {
                    next.push(d.checked_mul(pk).expect("divisor overflow"));
                    pk = pk.saturating_mul(p);
                }
            }
            divs = next;
        }
        divs.sort_unstable();
        divs
    }
}

/// Factors a nonzero integer by trial division. Errors on zero.
pub fn factorize(n: i64) -> Result<Factorization, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    let sign = if n < 0 { -1 } else { 1 };
    let mut m = n.unsigned_abs();
    let mut factors = Vec::new();
    let mut push = |p: u64, e: u32| {
        if e > 0 {
            factors.push((i64::try_from(p).expect("prime overflow"), e));
        }
    };
    let mut e = 0;
    while m % 2 == 0 {
        m /= 2;
        e += 1;
    }
    push(2, e);
    let mut p = 3u64;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        push(p, e);
        p += 2;
    }
    if m > 1 {
        push(m, 1);
    }
    Ok(Factorization { sign, factors })
}

/// The set of distinct primes dividing a nonzero integer.
pub fn prime_divisors(n: i64) -> Result<Vec<i64>, ArithError> {
    Ok(factorize(n)?.factors.into_iter().map(|(p, _)| p).collect())
}

/// `v_p(n)`: the exponent of the prime `p` in `n`. Errors on `n = 0` or
/// non-prime `p`.
pub fn valuation(n: i64, p: i64) -> Result<u32, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    let mut m = n.unsigned_abs();
    let p = p as u64;
    let mut v = 0;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    Ok(v)
}

/// Sum of the positive divisors of `n >= 1`.
pub fn sigma1(n: i64) -> Result<i64, ArithError> {
    if n < 1 {
        return Err(ArithError::NotPositive(n));
    }
    let mut s: i64 = 1;
    for (p, e) in factorize(n)?.factors {
        // 1 + p + ... + p^e
        let mut term: i64 = 1;
        let mut pk: i64 = 1;
        for _ in 0..e {
            pk = pk.checked_mul(p).expect("sigma1 overflow");
            term = term.checked_add(pk).expect("sigma1 overflow");
        }
        s = s.checked_mul(term).expect("sigma1 overflow");
    }
    Ok(s)
}

/// The Kronecker symbol `(a|n)`, the full extension of the Legendre symbol.
///
/// Completely multiplicative in `n`; `0` exactly when `gcd(a, n) > 1`.
/// Errors on `n = 0`.
pub fn kronecker(a: i64, n: i64) -> Result<i64, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    let mut result: i64 = 1;
    let mut n = n;
    if n < 0 {
        // (a|-1) = sign of a (with (0|-1) = 1 by convention a >= 0).
        if a < 0 {
            result = -result;
        }
        n = -n;
    }
    // Split off the even part of n: (a|2) is 0 for even a, else depends on a mod 8.
    while n % 2 == 0 {
        n /= 2;
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return Ok(0),
        }
    }
    // Jacobi symbol for the remaining odd positive n, by reciprocity.
    let mut a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    Ok(if n == 1 { result } else { 0 })
}

/// A place of `Q`: the archimedean place or a finite prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    Infinity,
    Finite(i64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => write!(f, "infinity"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

/// `v_p` of a nonzero rational (may be negative).
fn rational_valuation(x: Rational, p: i64) -> i32 {
    let vn = valuation(x.num(), p).expect("nonzero rational") as i32;
    let vd = valuation(x.den(), p).expect("positive denominator") as i32;
    vn - vd
}

/// The unit part of a nonzero rational at `p`, reduced modulo `m`.
///
/// `m` must be coprime to the unit part's denominator (we use `m = p` for
/// odd `p` and `m = 8` for `p = 2`).
fn unit_part_mod(x: Rational, p: i64, m: i64) -> i64 {
    let strip = |mut k: i64| {
        while k % p == 0 {
            k /= p;
        }
        k
    };
    let n = strip(x.num());
    let d = strip(x.den());
    // n * d^{-1} mod m via brute-force inverse; m is tiny (a prime or 8).
    let n = n.rem_euclid(m);
    let d = d.rem_euclid(m);
    for inv in 1..m {
        if (d * inv).rem_euclid(m) == 1 {
            return (n * inv).rem_euclid(m);
        }
    }
    unreachable!("denominator unit is invertible mod {m}")
}

/// The Hilbert symbol `(a, b)_v` over the completion of `Q` at `v`.
///
/// Errors if either argument is zero or the place is not a prime.
pub fn hilbert(a: Rational, b: Rational, place: Place) -> Result<i64, ArithError> {
    if a.is_zero() || b.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    match place {
        Place::Infinity => Ok(if a.num() < 0 && b.num() < 0 { -1 } else { 1 }),
        Place::Finite(p) if p == 2 => {
            let (alpha, beta) = (rational_valuation(a, 2), rational_valuation(b, 2));
            let u = unit_part_mod(a, 2, 8);
            let v = unit_part_mod(b, 2, 8);
            // epsilon(u) = (u-1)/2 mod 2, omega(u) = (u^2-1)/8 mod 2 on units mod 8.
            let eps = |u: i64| ((u - 1) / 2) & 1;
            let omg = |u: i64| matches!(u.rem_euclid(8), 3 | 5) as i64;
            let exponent =
                eps(u) * eps(v) + (alpha as i64 & 1) * omg(v) + (beta as i64 & 1) * omg(u);
            Ok(if exponent % 2 == 0 { 1 } else { -1 })
        }
        Place::Finite(p) => {
            if !is_prime(p) {
                return Err(ArithError::InvalidPlace(p));
            }
            let (alpha, beta) = (rational_valuation(a, p), rational_valuation(b, p));
            let u = unit_part_mod(a, p, p);
            let v = unit_part_mod(b, p, p);
            let mut s = 1i64;
            if alpha % 2 != 0 && beta % 2 != 0 && (p - 1) / 2 % 2 == 1 {
                s = -s;
            }
            if beta % 2 != 0 {
                s *= kronecker(u, p)?;
            }
            if alpha % 2 != 0 {
                s *= kronecker(v, p)?;
            }
            Ok(s)
        }
    }
}

/// [`hilbert`] on integers.
pub fn hilbert_int(a: i64, b: i64, place: Place) -> Result<i64, ArithError> {
    hilbert(Rational::from(a), Rational::from(b), place)
}

/// Whether a nonzero integer is a square in `Q_p`.
///
/// True iff its valuation is even and the unit part is a square unit
/// (a quadratic residue for odd `p`; congruent to `1 mod 8` for `p = 2`).
pub fn is_square_in_qp(n: i64, p: i64) -> Result<bool, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroInput);
    }
    if !is_prime(p) {
        return Err(ArithError::NotPrime(p));
    }
    if valuation(n, p)? % 2 != 0 {
        return Ok(false);
    }
    let mut u = n;
    while u % p == 0 {
        u /= p;
    }
    if p == 2 {
        Ok(u.rem_euclid(8) == 1)
    } else {
        Ok(kronecker(u, p)? == 1)
    }
}
