//! Brute-force oracle over an explicit quaternary lattice form, used as
//! independent ground truth for the closed formulas:
//!
//! * exact evaluation `q(v) = v^T * gram2 * v / 2` ([`QuaternaryLattice::q_value`]),
//! * exhaustive enumeration of primitive representations in a coordinate
//!   box ([`QuaternaryLattice::enumerate_representations`], with the bulk
//!   variant [`QuaternaryLattice::representable_flags`] for sweeps),
//! * extraction of the positive definite binary forms carried by saturated
//!   rank-2 sublattices, with witness vector pairs
//!   ([`QuaternaryLattice::binary_sublattice_forms`]),
//! * a plain-text matrix file format with bit-exact round-trip
//!   ([`QuaternaryLattice::parse`], [`QuaternaryLattice::render`]).
//!
//! Enumeration bounds are always explicit parameters: brute force is only
//! an oracle, and its scope must be visible at every call site.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::arith::gcd;
use crate::forms::BinaryForm;

/// Largest permitted absolute value of a Gram matrix entry; together with
/// [`MAX_BOUND`] this keeps every quantity in the enumeration sweeps within
/// `i64` without per-step checks.
const MAX_ENTRY: i64 = 1_000_000_000;

/// Largest permitted enumeration bound.
const MAX_BOUND: i64 = 10_000;

/// Errors from lattice construction, parsing, and enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("gram matrix is not symmetric at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("doubled gram matrix has odd diagonal entry at ({0},{0})")]
    OddDiagonal(usize),
    #[error("gram matrix entry {0} exceeds the supported magnitude {MAX_ENTRY}")]
    EntryTooLarge(i64),
    #[error("enumeration bound must be between 1 and {MAX_BOUND}, got {0}")]
    BadBound(i64),
    #[error("value bound must be at least 1, got {0}")]
    BadValueBound(i64),
    #[error("quadratic form value overflows 64 bits")]
    Overflow,
    #[error("the zero vector has no primitivity")]
    ZeroVector,
    #[error("lattice file has no `gram2 =` line")]
    MissingHeader,
    #[error("lattice file needs 16 matrix entries, found {0}")]
    WrongEntryCount(usize),
    #[error("cannot parse {0:?} as a matrix entry")]
    BadEntry(String),
}

/// An integer vector in the rank-4 lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector(pub [i64; 4]);

impl LatticeVector {
    pub fn new(coords: [i64; 4]) -> Self {
        LatticeVector(coords)
    }

    pub fn coords(&self) -> [i64; 4] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    /// Whether the coordinates have gcd 1. Errors on the zero vector.
    pub fn is_primitive(&self) -> Result<bool, LatticeError> {
        if self.is_zero() {
            return Err(LatticeError::ZeroVector);
        }
        let [a, b, c, d] = self.0;
        Ok(gcd(gcd(a, b), gcd(c, d)) == 1)
    }
}

impl std::ops::Neg for LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        let [a, b, c, d] = self.0;
        LatticeVector([-a, -b, -c, -d])
    }
}

impl std::fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a}, {b}, {c}, {d})")
    }
}

/// A positive definite binary form carried by a saturated rank-2
/// sublattice, with a witness basis pair. The recorded form is the reduced
/// representative; the pair `(u, v)` induces `[q(u), b(u,v), q(v)]`, which
/// is properly equivalent to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SublatticeForm {
    pub form: BinaryForm,
    pub witness: (LatticeVector, LatticeVector),
}

/// An integral quadratic lattice of rank 4, stored as the doubled Gram
/// matrix (`q(v) = v^T * gram2 * v / 2`), so all bilinear data stays
/// integral. Construction enforces symmetry, even diagonal, and an entry
/// magnitude cap that keeps enumeration arithmetic within `i64`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuaternaryLattice {
    gram2: [[i64; 4]; 4],
}

impl QuaternaryLattice {
    pub fn new(gram2: [[i64; 4]; 4]) -> Result<Self, LatticeError> {
        for i in 0..4 {
            for j in 0..4 {
                if gram2[i][j] != gram2[j][i] {
                    return Err(LatticeError::NotSymmetric(i, j));
                }
                if gram2[i][j].abs() > MAX_ENTRY {
                    return Err(LatticeError::EntryTooLarge(gram2[i][j]));
                }
            }
            if gram2[i][i] % 2 != 0 {
                return Err(LatticeError::OddDiagonal(i));
            }
        }
        Ok(QuaternaryLattice { gram2 })
    }

    /// The doubled Gram matrix.
    pub fn gram2(&self) -> [[i64; 4]; 4] {
        self.gram2
    }

    /// The flagship example lattice, whose form is
    /// `2a^2 + ab + 5b^2 - 13(c^2 - cd + d^2)`.
    pub fn example() -> Self {
        QuaternaryLattice::new([
            [4, 1, 0, 0],
            [1, 10, 0, 0],
            [0, 0, -26, 13],
            [0, 0, 13, -26],
        ])
        .expect("example matrix is valid")
    }

    /// Evaluates `q(v)` exactly; errors if the value cannot be computed in
    /// 64 bits.
    pub fn q_value(&self, v: &LatticeVector) -> Result<i64, LatticeError> {
        let x = v.0;
        let mut doubled: i128 = 0;
        for i in 0..4 {
            for j in 0..4 {
                let term = (self.gram2[i][j] as i128)
                    .checked_mul(x[i] as i128)
                    .and_then(|t| t.checked_mul(x[j] as i128))
                    .ok_or(LatticeError::Overflow)?;
                doubled = doubled.checked_add(term).ok_or(LatticeError::Overflow)?;
            }
        }
        i64::try_from(doubled / 2).map_err(|_| LatticeError::Overflow)
    }

    /// The symmetric bilinear pairing `b(u, v) = q(u+v) - q(u) - q(v)`.
    pub fn pairing(&self, u: &LatticeVector, v: &LatticeVector) -> Result<i64, LatticeError> {
        let mut sum: i128 = 0;
        for i in 0..4 {
            for j in 0..4 {
                let term = (self.gram2[i][j] as i128)
                    .checked_mul(u.0[i] as i128)
                    .and_then(|t| t.checked_mul(v.0[j] as i128))
                    .ok_or(LatticeError::Overflow)?;
                sum = sum.checked_add(term).ok_or(LatticeError::Overflow)?;
            }
        }
        i64::try_from(sum).map_err(|_| LatticeError::Overflow)
    }

    /// The signature `(positive, negative)` of the form, computed exactly
    /// from the characteristic polynomial of the doubled Gram matrix: the
    /// polynomial is real-rooted, so Descartes' sign rule counts its
    /// positive and negative roots exactly.
    pub fn signature(&self) -> (u32, u32) {
        let g = &self.gram2;
        let minor2 = |r: [usize; 2]| -> i128 {
            let m = |i: usize, j: usize| g[r[i]][r[j]] as i128;
            m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)
        };
        let minor3 = |r: [usize; 3]| -> i128 {
            let m = |i: usize, j: usize| g[r[i]][r[j]] as i128;
            m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
        };
        let det4 = {
            let mut det: i128 = 0;
            // Laplace expansion along the first row over 3x3 minors.
            for k in 0..4 {
                let rows = [1, 2, 3];
                let cols: Vec<usize> = (0..4).filter(|&j| j != k).collect();
                let m = |i: usize, j: usize| g[rows[i]][cols[j]] as i128;
                let minor = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
                    - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
                    + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
                let sign = if k % 2 == 0 { 1 } else { -1 };
                det += sign * (g[0][k] as i128) * minor;
            }
            det
        };
        // Characteristic polynomial det(tI - G) = t^4 + c1 t^3 + c2 t^2 + c3 t + c4.
        let trace: i128 = (0..4).map(|i| g[i][i] as i128).sum();
        let sum2: i128 = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]
            .into_iter()
            .map(minor2)
            .sum();
        let sum3: i128 = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]].into_iter().map(minor3).sum();
        let coeffs = [1i128, -trace, sum2, -sum3, det4];
        let variations = |signs: &[i128]| -> u32 {
            let mut count = 0;
            let mut last = 0i128;
            for &c in signs {
                let s = c.signum();
                if s == 0 {
                    continue;
                }
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
            count
        };
        let pos = variations(&coeffs);
        let negated: Vec<i128> =
            coeffs.iter().enumerate().map(|(i, &c)| if i % 2 == 1 { -c } else { c }).collect();
        let neg = variations(&negated);
        (pos, neg)
    }

    /// Iterates the coordinate box `[-bound, bound]^4` in lexicographic
    /// order, calling `f(vector, q-value)` for each vector.
    fn sweep(&self, bound: i64, mut f: impl FnMut([i64; 4], i64)) {
        let g = &self.gram2;
        let hd = [g[0][0] / 2, g[1][1] / 2, g[2][2] / 2, g[3][3] / 2];
        for t0 in -bound..=bound {
            let p0 = hd[0] * t0 * t0;
            for t1 in -bound..=bound {
                let p1 = p0 + g[0][1] * t0 * t1 + hd[1] * t1 * t1;
                let l2 = g[0][2] * t0 + g[1][2] * t1;
                let l3base = g[0][3] * t0 + g[1][3] * t1;
                for t2 in -bound..=bound {
                    let p2 = p1 + l2 * t2 + hd[2] * t2 * t2;
                    let l3 = l3base + g[2][3] * t2;
                    for t3 in -bound..=bound {
                        f([t0, t1, t2, t3], p2 + l3 * t3 + hd[3] * t3 * t3);
                    }
                }
            }
        }
    }

    fn check_bound(bound: i64) -> Result<(), LatticeError> {
        if !(1..=MAX_BOUND).contains(&bound) {
            return Err(LatticeError::BadBound(bound));
        }
        Ok(())
    }

    /// All primitive vectors with coordinates in `[-bound, bound]` and
    /// `q(v) = n`, in lexicographic coordinate order.
    pub fn enumerate_representations(
        &self,
        n: i64,
        bound: i64,
    ) -> Result<Vec<LatticeVector>, LatticeError> {
        Self::check_bound(bound)?;
        let mut found = Vec::new();
        self.sweep(bound, |coords, q| {
            if q == n {
                let v = LatticeVector(coords);
                if !v.is_zero() && v.is_primitive().expect("nonzero") {
                    found.push(v);
                }
            }
        });
        Ok(found)
    }

    /// One bulk sweep marking which values in `0..=max_n` are attained by
    /// a primitive vector with coordinates in `[-bound, bound]`; entry `n`
    /// of the result is that flag.
    pub fn representable_flags(
        &self,
        max_n: i64,
        bound: i64,
    ) -> Result<Vec<bool>, LatticeError> {
        Self::check_bound(bound)?;
        if max_n < 1 {
            return Err(LatticeError::BadValueBound(max_n));
        }
        let mut flags = vec![false; (max_n + 1) as usize];
        self.sweep(bound, |coords, q| {
            if (0..=max_n).contains(&q) && !flags[q as usize] {
                let v = LatticeVector(coords);
                if !v.is_zero() && v.is_primitive().expect("nonzero") {
                    flags[q as usize] = true;
                }
            }
        });
        Ok(flags)
    }

    /// Whether the pair `(u, v)` spans a saturated rank-2 sublattice:
    /// the six 2x2 minors of the 4x2 coordinate matrix have gcd 1 (zero
    /// means rank below 2). Saturation matters for soundness: a
    /// non-saturated plane carries a rescaled form the ambient lattice
    /// does not represent primitively.
    pub fn spans_saturated_plane(u: &LatticeVector, v: &LatticeVector) -> bool {
        fn gcd128(a: i128, b: i128) -> i128 {
            let (mut a, mut b) = (a.abs(), b.abs());
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        }
        let mut g = 0i128;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let minor = (u.0[i] as i128) * (v.0[j] as i128) - (u.0[j] as i128) * (v.0[i] as i128);
                g = gcd128(g, minor);
            }
        }
        g == 1
    }

    /// The positive definite binary forms of all saturated rank-2
    /// sublattices spanned by vector pairs with coordinates in
    /// `[-bound, bound]`, deduplicated up to proper equivalence. Each
    /// entry carries the reduced form and the first witness pair in scan
    /// order; the output is sorted by the forms' canonical class order.
    pub fn binary_sublattice_forms(
        &self,
        bound: i64,
    ) -> Result<Vec<SublatticeForm>, LatticeError> {
        Self::check_bound(bound)?;
        // Positive vectors only: a positive definite plane needs
        // q(u) > 0 and q(v) > 0.
        let mut positives: Vec<(LatticeVector, i64)> = Vec::new();
        self.sweep(bound, |coords, q| {
            if q > 0 {
                positives.push((LatticeVector(coords), q));
            }
        });
        let g = &self.gram2;
        let mut classes: BTreeMap<BinaryForm, SublatticeForm> = BTreeMap::new();
        for &(u, qu) in &positives {
            // Precompute gram2 * u so the pairing is four multiplies.
            let mut gu = [0i64; 4];
            for (k, gu_k) in gu.iter_mut().enumerate() {
                *gu_k = (0..4).map(|j| g[k][j] * u.0[j]).sum();
            }
            for &(v, qv) in &positives {
                let b: i64 = (0..4).map(|k| gu[k] * v.0[k]).sum();
                if b * b >= 4 * qu * qv {
                    continue; // not positive definite (or rank below 2)
                }
                if !Self::spans_saturated_plane(&u, &v) {
                    continue;
                }
                let form = BinaryForm::new(qu, b, qv).expect("negative discriminant");
                let reduced = form.reduce().expect("positive definite");
                classes
                    .entry(reduced)
                    .or_insert(SublatticeForm { form: reduced, witness: (u, v) });
            }
        }
        let mut out: Vec<SublatticeForm> = classes.into_values().collect();
        out.sort_by_key(|s| s.form.class_order_key());
        Ok(out)
    }

    /// Parses the plain-text lattice format: one line `gram2 = ` followed
    /// by 16 integers row-major. Blank lines and `#` comment lines are
    /// permitted around it.
    pub fn parse(text: &str) -> Result<Self, LatticeError> {
        let mut entries: Vec<i64> = Vec::new();
        let mut saw_header = false;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let rest = line.strip_prefix("gram2 =").ok_or(LatticeError::MissingHeader)?;
            saw_header = true;
            for tok in rest.split_whitespace() {
                entries.push(tok.parse::<i64>().map_err(|_| LatticeError::BadEntry(tok.into()))?);
            }
        }
        if !saw_header {
            return Err(LatticeError::MissingHeader);
        }
        if entries.len() != 16 {
            return Err(LatticeError::WrongEntryCount(entries.len()));
        }
        let mut gram2 = [[0i64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                gram2[i][j] = entries[4 * i + j];
            }
        }
        QuaternaryLattice::new(gram2)
    }

    /// Renders the canonical file form: `parse(render(L))` reproduces `L`
    /// exactly, and `render(parse(s)) == s` for canonical `s`.
    pub fn render(&self) -> String {
        let entries: Vec<String> =
            self.gram2.iter().flatten().map(|e| e.to_string()).collect();
        format!("gram2 = {}\n", entries.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::equivalent_proper;

    fn vec4(a: i64, b: i64, c: i64, d: i64) -> LatticeVector {
        LatticeVector::new([a, b, c, d])
    }

    #[test]
    fn example_q_values() {
        let lat = QuaternaryLattice::example();
        assert_eq!(lat.q_value(&vec4(1, 0, 0, 0)).unwrap(), 2);
        assert_eq!(lat.q_value(&vec4(0, 1, 0, 0)).unwrap(), 5);
        assert_eq!(lat.q_value(&vec4(0, 0, 1, 0)).unwrap(), -13);
        assert_eq!(lat.q_value(&vec4(0, 0, 0, 1)).unwrap(), -13);
        assert_eq!(lat.q_value(&vec4(0, 0, 0, 0)).unwrap(), 0);
        assert_eq!(lat.q_value(&vec4(1, 1, 0, 0)).unwrap(), 8);
        assert_eq!(lat.q_value(&vec4(0, 0, 1, 1)).unwrap(), -13);
    }

    #[test]
    fn example_matches_polynomial() {
        // Independent re-derivation from the explicit polynomial.
        let lat = QuaternaryLattice::example();
        for t0 in -3..=3i64 {
            for t1 in -3..=3i64 {
                for t2 in -3..=3i64 {
                    for t3 in -3..=3i64 {
                        let expected =
                            2 * t0 * t0 + t0 * t1 + 5 * t1 * t1 - 13 * (t2 * t2 - t2 * t3 + t3 * t3);
                        assert_eq!(lat.q_value(&vec4(t0, t1, t2, t3)).unwrap(), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn construction_validation() {
        let mut m = QuaternaryLattice::example().gram2();
        m[0][1] = 7;
        assert!(matches!(QuaternaryLattice::new(m), Err(LatticeError::NotSymmetric(0, 1))));
        let mut m = QuaternaryLattice::example().gram2();
        m[2][2] = -27;
        assert!(matches!(QuaternaryLattice::new(m), Err(LatticeError::OddDiagonal(2))));
        let mut m = QuaternaryLattice::example().gram2();
        m[0][0] = 2 * MAX_ENTRY;
        assert!(matches!(QuaternaryLattice::new(m), Err(LatticeError::EntryTooLarge(_))));
    }

    #[test]
    fn signature_counts() {
        assert_eq!(QuaternaryLattice::example().signature(), (2, 2));
        let identity2 = QuaternaryLattice::new([
            [2, 0, 0, 0],
            [0, 2, 0, 0],
            [0, 0, 2, 0],
            [0, 0, 0, 2],
        ])
        .unwrap();
        assert_eq!(identity2.signature(), (4, 0));
        let zero = QuaternaryLattice::new([[0; 4]; 4]).unwrap();
        assert_eq!(zero.signature(), (0, 0));
        let mixed = QuaternaryLattice::new([
            [2, 0, 0, 0],
            [0, -2, 0, 0],
            [0, 0, -2, 0],
            [0, 0, 0, -2],
        ])
        .unwrap();
        assert_eq!(mixed.signature(), (1, 3));
    }

    #[test]
    fn primitivity() {
        assert!(vec4(1, 0, 0, 0).is_primitive().unwrap());
        assert!(!vec4(2, 0, 2, 0).is_primitive().unwrap());
        assert!(vec4(2, 3, 0, 0).is_primitive().unwrap());
        assert!(matches!(vec4(0, 0, 0, 0).is_primitive(), Err(LatticeError::ZeroVector)));
    }

    #[test]
    fn representation_enumeration() {
        let lat = QuaternaryLattice::example();
        let reps = lat.enumerate_representations(2, 2).unwrap();
        assert!(reps.contains(&vec4(1, 0, 0, 0)));
        for v in &reps {
            assert_eq!(lat.q_value(v).unwrap(), 2);
            assert!(v.is_primitive().unwrap());
            assert!(reps.contains(&-*v), "{v} without its negative");
        }
        assert!(reps.windows(2).all(|w| w[0] < w[1]), "not in lexicographic order");
        assert!(lat.enumerate_representations(2, 0).is_err());
    }

    #[test]
    fn value_one_is_not_represented() {
        // Consistent with the closed formulas: 1 is a square mod 13, so
        // no curve of norm 1 exists.
        let lat = QuaternaryLattice::example();
        assert!(lat.enumerate_representations(1, 20).unwrap().is_empty());
    }

    #[test]
    fn no_primitive_isotropic_vectors_in_small_box() {
        let lat = QuaternaryLattice::example();
        assert!(lat.enumerate_representations(0, 2).unwrap().is_empty());
    }

    #[test]
    fn bulk_flags_agree_with_single_enumeration() {
        let lat = QuaternaryLattice::example();
        let flags = lat.representable_flags(30, 6).unwrap();
        for n in 1..=30i64 {
            let reps = lat.enumerate_representations(n, 6).unwrap();
            assert_eq!(flags[n as usize], !reps.is_empty(), "N={n}");
        }
    }

    #[test]
    fn saturation_test() {
        assert!(QuaternaryLattice::spans_saturated_plane(
            &vec4(1, 0, 0, 0),
            &vec4(0, 1, 0, 0)
        ));
        // Doubling one generator breaks saturation.
        assert!(!QuaternaryLattice::spans_saturated_plane(
            &vec4(2, 0, 0, 0),
            &vec4(0, 1, 0, 0)
        ));
        // Index-2 sublattice of a plane: (1,1,0,0) and (1,-1,0,0).
        assert!(!QuaternaryLattice::spans_saturated_plane(
            &vec4(1, 1, 0, 0),
            &vec4(1, -1, 0, 0)
        ));
        // Rank 1 is excluded.
        assert!(!QuaternaryLattice::spans_saturated_plane(
            &vec4(1, 2, 0, 0),
            &vec4(2, 4, 0, 0)
        ));
    }

    #[test]
    fn sublattice_forms_at_bound_one() {
        let lat = QuaternaryLattice::example();
        let forms = lat.binary_sublattice_forms(1).unwrap();
        let target = BinaryForm::new(2, 1, 5).unwrap();
        assert!(
            forms.iter().any(|s| equivalent_proper(&s.form, &target).unwrap_or(false)),
            "visible top-left block missing"
        );
        let mirror = BinaryForm::new(2, -1, 5).unwrap();
        assert!(forms.iter().any(|s| equivalent_proper(&s.form, &mirror).unwrap_or(false)));
    }

    #[test]
    fn sublattice_witnesses_are_valid() {
        let lat = QuaternaryLattice::example();
        for s in lat.binary_sublattice_forms(2).unwrap() {
            let (u, v) = s.witness;
            assert!(QuaternaryLattice::spans_saturated_plane(&u, &v));
            let induced = BinaryForm::new(
                lat.q_value(&u).unwrap(),
                lat.pairing(&u, &v).unwrap(),
                lat.q_value(&v).unwrap(),
            )
            .unwrap();
            assert!(induced.is_positive_definite());
            assert_eq!(induced.reduce().unwrap(), s.form);
            assert_eq!(s.form.reduce().unwrap(), s.form, "emitted form not reduced");
        }
    }

    #[test]
    fn imprimitively_scaled_planes_are_not_emitted() {
        // The index-4 sublattice spanned by (2,0,0,0) and (0,2,0,0)
        // carries 4*[2,1,5] = [8,4,20], whose content 4 is divisible by a
        // prime that is inert for the flagship parameters; no saturated
        // plane carries that class, so the oracle must not emit it.
        let lat = QuaternaryLattice::example();
        let forms = lat.binary_sublattice_forms(2).unwrap();
        let doubled = BinaryForm::new(8, 4, 20).unwrap();
        assert!(
            !forms.iter().any(|s| equivalent_proper(&s.form, &doubled).unwrap_or(false)),
            "non-saturated plane leaked into the output"
        );
    }

    #[test]
    fn file_round_trip() {
        let lat = QuaternaryLattice::example();
        let text = lat.render();
        assert_eq!(text, "gram2 = 4 1 0 0 1 10 0 0 0 0 -26 13 0 0 13 -26\n");
        let parsed = QuaternaryLattice::parse(&text).unwrap();
        assert_eq!(parsed, lat);
        assert_eq!(parsed.render(), text);
        let commented = format!("# flagship lattice\n\n{text}");
        assert_eq!(QuaternaryLattice::parse(&commented).unwrap(), lat);
    }

    #[test]
    fn parse_rejections() {
        assert!(matches!(QuaternaryLattice::parse(""), Err(LatticeError::MissingHeader)));
        assert!(matches!(
            QuaternaryLattice::parse("gram = 1 2 3"),
            Err(LatticeError::MissingHeader)
        ));
        assert!(matches!(
            QuaternaryLattice::parse("gram2 = 1 2 3"),
            Err(LatticeError::WrongEntryCount(3))
        ));
        assert!(matches!(
            QuaternaryLattice::parse("gram2 = 4 1 0 0 1 10 0 0 0 0 -26 13 0 0 13 -26 7"),
            Err(LatticeError::WrongEntryCount(17))
        ));
        assert!(matches!(
            QuaternaryLattice::parse("gram2 = 4 1 0 0 1 10 0 0 0 0 -26 13 0 0 13 x"),
            Err(LatticeError::BadEntry(_))
        ));
        // Symmetry is still enforced on parsed matrices.
        assert!(QuaternaryLattice::parse("gram2 = 4 1 0 0 2 10 0 0 0 0 -26 13 0 0 13 -26").is_err());
    }
}
