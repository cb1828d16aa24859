//! The real number fields `Q(2cos(π/L))` that carry the entries of the
//! reflection representation.
//!
//! A field is fixed by the integer `L`. Its generator `c = 2cos(π/L)` is an
//! algebraic integer whose minimal polynomial is monic with integer
//! coefficients; it is derived once from the Chebyshev identity
//! `C_L(2cos θ) = 2cos(Lθ)` and then used for every reduction. Signs are
//! decided exactly by evaluating against a dyadic interval isolating `c`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense polynomial over the rationals, lowest degree first, no trailing zeros.
pub(crate) type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn poly_from_ints(coeffs: &[i64]) -> QPoly {
    let mut p: QPoly = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
    trim(&mut p);
    p
}

fn poly_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(&mut out);
    out
}

fn poly_shift(a: &QPoly) -> QPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero()];
    out.extend(a.iter().cloned());
    out
}

fn poly_derivative(a: &QPoly) -> QPoly {
    let mut out: QPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    trim(&mut out);
    out
}

/// Returns `(quotient, remainder)`.
fn poly_divrem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let factor = rem.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] -= &factor * c;
        }
        quot[shift] = factor;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

fn poly_monic(mut a: QPoly) -> QPoly {
    if let Some(lead) = a.last().cloned() {
        for c in a.iter_mut() {
            *c = &*c / &lead;
        }
    }
    a
}

fn poly_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
    }
    poly_monic(x)
}

fn poly_eval(a: &QPoly, x: &BigRational) -> BigRational {
    a.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// The Vieta–Lucas polynomial `C_n` with `C_n(t + 1/t) = t^n + t^-n`.
fn chebyshev_c(n: u64) -> QPoly {
    let mut prev = poly_from_ints(&[2]);
    if n == 0 {
        return prev;
    }
    let mut cur = poly_from_ints(&[0, 1]);
    for _ in 1..n {
        let next = poly_sub(&poly_shift(&cur), &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Squarefree polynomial whose roots are exactly `2cos(jπ/n)` for odd `j`.
fn odd_cosine_poly(n: u64) -> QPoly {
    let mut f = chebyshev_c(n);
    if f.is_empty() {
        f.push(BigRational::zero());
    }
    f[0] += BigRational::from_integer(2.into());
    trim(&mut f);
    let g = poly_gcd(&f, &poly_derivative(&f));
    poly_monic(poly_divrem(&f, &g).0)
}

/// Minimal polynomial of `2cos(π/n)` over the rationals.
pub(crate) fn minimal_polynomial_2cos(n: u64) -> QPoly {
    assert!(n >= 1);
    let mut m = odd_cosine_poly(n);
    for d in 1..n {
        if n % d == 0 && (n / d) % 2 == 1 {
            let g = poly_gcd(&m, &odd_cosine_poly(d));
            m = poly_divrem(&m, &g).0;
        }
    }
    poly_monic(m)
}

fn sturm_sequence(p: &QPoly) -> Vec<QPoly> {
    let mut seq = vec![p.clone(), poly_derivative(p)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        let (_, r) = poly_divrem(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[QPoly], x: &BigRational) -> usize {
    let signs: Vec<_> = seq
        .iter()
        .map(|p| poly_eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in the half-open interval `(lo, hi]`.
fn roots_in(seq: &[QPoly], lo: &BigRational, hi: &BigRational) -> usize {
    sign_changes(seq, lo) - sign_changes(seq, hi)
}

/// Dyadic interval `[lo/2^bits, hi/2^bits]` around the generator together
/// with the scaled powers used for interval evaluation.
#[derive(Debug)]
struct Precision {
    bits: u32,
    lo: BigInt,
    hi: BigInt,
    /// `lo^k · 2^{bits·(d-1-k)}` for `k < d`.
    lo_scaled: Vec<BigInt>,
    hi_scaled: Vec<BigInt>,
    lo_scaled_small: Option<Vec<i128>>,
    hi_scaled_small: Option<Vec<i128>>,
}

impl Precision {
    fn new(lo: BigInt, hi: BigInt, bits: u32, degree: usize) -> Self {
        let scaled = |base: &BigInt| -> Vec<BigInt> {
            (0..degree)
                .map(|k| {
                    num_traits::pow(base.clone(), k)
                        * (BigInt::one() << (bits as usize * (degree - 1 - k)))
                })
                .collect()
        };
        let lo_scaled = scaled(&lo);
        let hi_scaled = scaled(&hi);
        let small = |v: &[BigInt]| -> Option<Vec<i128>> {
            v.iter()
                .map(|x| x.to_i128().filter(|y| y.unsigned_abs() < (1u128 << 64)))
                .collect()
        };
        Precision {
            bits,
            lo,
            hi,
            lo_scaled_small: small(&lo_scaled),
            hi_scaled_small: small(&hi_scaled),
            lo_scaled,
            hi_scaled,
        }
    }

    /// Sign of `Σ a_k c^k`, if this interval is tight enough to decide it.
    fn sign_small(&self, coeffs: &[i128]) -> Option<Ordering> {
        let (lo, hi) = (self.lo_scaled_small.as_ref()?, self.hi_scaled_small.as_ref()?);
        let mut low: i128 = 0;
        let mut high: i128 = 0;
        for (k, &a) in coeffs.iter().enumerate() {
            let (l, h) = if a >= 0 { (lo[k], hi[k]) } else { (hi[k], lo[k]) };
            low = low.checked_add(a.checked_mul(l)?)?;
            high = high.checked_add(a.checked_mul(h)?)?;
        }
        decide(low.cmp(&0), high.cmp(&0))
    }

    fn sign_big(&self, coeffs: &[BigInt]) -> Option<Ordering> {
        let mut low = BigInt::zero();
        let mut high = BigInt::zero();
        for (k, a) in coeffs.iter().enumerate() {
            if a.is_negative() {
                low += a * &self.hi_scaled[k];
                high += a * &self.lo_scaled[k];
            } else {
                low += a * &self.lo_scaled[k];
                high += a * &self.hi_scaled[k];
            }
        }
        decide(low.sign_cmp(), high.sign_cmp())
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

fn decide(low: Ordering, high: Ordering) -> Option<Ordering> {
    if low == Ordering::Greater {
        Some(Ordering::Greater)
    } else if high == Ordering::Less {
        Some(Ordering::Less)
    } else {
        None
    }
}

/// The field `Q(c)` with `c = 2cos(π/L)`.
#[derive(Debug)]
pub struct NumberField {
    lcm: u64,
    /// Monic minimal polynomial of `c`, lowest degree first.
    min_poly: Vec<i128>,
    /// Isolating interval `[lo/2^bits, hi/2^bits]` from Sturm bisection.
    isolating: (BigInt, BigInt, u32),
    levels: Vec<Precision>,
}

impl NumberField {
    /// Returns the shared field for `L`; fields are built once per process.
    pub fn for_lcm(lcm: u64) -> &'static NumberField {
        static FIELDS: OnceLock<Mutex<HashMap<u64, &'static NumberField>>> = OnceLock::new();
        let table = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = table.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(lcm)
            .or_insert_with(|| Box::leak(Box::new(NumberField::build(lcm))))
    }

    fn build(lcm: u64) -> NumberField {
        let min_poly_q = minimal_polynomial_2cos(lcm);
        let min_poly: Vec<i128> = min_poly_q
            .iter()
            .map(|c| {
                assert!(c.is_integer(), "minimal polynomial of 2cos(π/L) must be integral");
                c.to_integer().to_i128().expect("minimal polynomial coefficient too large")
            })
            .collect();
        let degree = min_poly.len() - 1;

        // c is the largest root of the minimal polynomial; all roots lie in
        // [-2, 2], so bisection over dyadic endpoints isolates it.
        let seq = sturm_sequence(&min_poly_q);
        let mut lo = BigInt::from(-2);
        let mut hi = BigInt::from(2);
        let mut bits = 0u32;
        let at = |x: &BigInt, bits: u32| {
            BigRational::new(x.clone(), BigInt::one() << bits as usize)
        };
        while roots_in(&seq, &at(&lo, bits), &at(&hi, bits)) > 1 {
            lo <<= 1;
            hi <<= 1;
            bits += 1;
            let mid = (&lo + &hi) >> 1;
            if roots_in(&seq, &at(&mid, bits), &at(&hi, bits)) >= 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut field = NumberField {
            lcm,
            min_poly,
            isolating: (lo, hi, bits),
            levels: Vec::new(),
        };
        if degree > 1 {
            let first = (62 / (degree as u32 - 1)).saturating_sub(3).clamp(4, 60);
            let mut level = field.refine(&field.isolating, first);
            for _ in 0..4 {
                let next = level.bits * 2;
                let refined = field.refine(&(level.lo.clone(), level.hi.clone(), level.bits), next);
                field.levels.push(level);
                level = refined;
            }
            field.levels.push(level);
        }
        field
    }

    /// Sign of the minimal polynomial at `m / 2^bits`.
    fn min_poly_sign_at(&self, m: &BigInt, bits: u32) -> Ordering {
        let d = self.degree();
        let mut acc = BigInt::from(self.min_poly[d]);
        for j in (0..d).rev() {
            acc = acc * m + (BigInt::from(self.min_poly[j]) << (bits as usize * (d - j)));
        }
        acc.sign_cmp()
    }

    /// Bisects a dyadic interval around `c` down to scale `2^-target`.
    fn refine(&self, start: &(BigInt, BigInt, u32), target: u32) -> Precision {
        let (mut lo, mut hi, mut bits) = start.clone();
        let lo_sign = self.min_poly_sign_at(&lo, bits);
        while bits < target {
            lo <<= 1;
            hi <<= 1;
            bits += 1;
            let mid = (&lo + &hi) >> 1;
            let s = self.min_poly_sign_at(&mid, bits);
            if s == Ordering::Equal {
                lo = mid.clone();
                hi = mid;
            } else if s == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Precision::new(lo, hi, bits, self.degree())
    }

    /// The integer `L` fixing the generator `2cos(π/L)`.
    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    /// Monic minimal polynomial of the generator, lowest degree first.
    pub fn minimal_polynomial(&self) -> &[i128] {
        &self.min_poly
    }

    /// Exact sign of `Σ coeffs[k]·c^k`, where the coefficients are already
    /// reduced (fewer than `degree` of them).
    pub(crate) fn sign_of(&self, coeffs: &[i128]) -> Ordering {
        if coeffs.iter().all(|&a| a == 0) {
            return Ordering::Equal;
        }
        if self.degree() == 1 {
            return coeffs[0].cmp(&0);
        }
        for level in &self.levels {
            if let Some(s) = level.sign_small(coeffs) {
                return s;
            }
        }
        let big: Vec<BigInt> = coeffs.iter().map(|&a| BigInt::from(a)).collect();
        for level in &self.levels {
            if let Some(s) = level.sign_big(&big) {
                return s;
            }
        }
        // A nonzero reduced element cannot vanish at c, so refinement ends.
        let last = self.levels.last().expect("irrational fields keep levels");
        let mut level = self.refine(&(last.lo.clone(), last.hi.clone(), last.bits), last.bits * 2);
        loop {
            if let Some(s) = level.sign_big(&big) {
                return s;
            }
            level = self.refine(&(level.lo.clone(), level.hi.clone(), level.bits), level.bits * 2);
        }
    }

    /// Rational approximation of `Σ coeffs[k]·c^k` within `2^-bits`-ish
    /// precision; used for drawing only.
    pub(crate) fn approximate(&self, coeffs: &[i128], den: i128) -> f64 {
        let c = if self.degree() == 1 {
            BigRational::from_integer((-self.min_poly[0]).into())
        } else {
            let level = self.refine(&self.isolating, 48);
            let scale = BigRational::from_integer(BigInt::one() << (level.bits as usize + 1));
            BigRational::from_integer(&level.lo + &level.hi) / scale
        };
        let value = coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, &a| acc * &c + BigRational::from_integer(a.into()))
            / BigRational::from_integer(den.into());
        let micro = BigRational::from_integer(1_000_000.into());
        let rounded = (value * &micro).round() / micro;
        rounded.numer().to_f64().unwrap_or(0.0) / rounded.denom().to_f64().unwrap_or(1.0)
    }
}

/// Greatest common divisor helper shared with the scalar code.
pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &QPoly) -> Vec<i64> {
        p.iter().map(|c| c.to_integer().to_i64().unwrap()).collect()
    }

    #[test]
    fn minimal_polynomials_of_small_cosines() {
        assert_eq!(ints(&minimal_polynomial_2cos(1)), vec![2, 1]);
        assert_eq!(ints(&minimal_polynomial_2cos(2)), vec![0, 1]);
        assert_eq!(ints(&minimal_polynomial_2cos(3)), vec![-1, 1]);
        assert_eq!(ints(&minimal_polynomial_2cos(4)), vec![-2, 0, 1]);
        assert_eq!(ints(&minimal_polynomial_2cos(5)), vec![-1, -1, 1]);
        assert_eq!(ints(&minimal_polynomial_2cos(6)), vec![-3, 0, 1]);
        assert_eq!(ints(&minimal_polynomial_2cos(8)), vec![2, 0, -4, 0, 1]);
    }

    #[test]
    fn degrees_match_euler_phi() {
        fn phi(n: u64) -> u64 {
            (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
        }
        for l in 3..=30u64 {
            let p = minimal_polynomial_2cos(l);
            assert_eq!((p.len() - 1) as u64, phi(2 * l) / 2, "L = {l}");
        }
    }

    #[test]
    fn minimal_polynomial_vanishes_near_cosine() {
        for l in 3..=24u64 {
            let p = minimal_polynomial_2cos(l);
            let c = 2.0 * (std::f64::consts::PI / l as f64).cos();
            let v: f64 = p
                .iter()
                .rev()
                .fold(0.0, |acc, k| acc * c + k.to_f64().unwrap());
            assert!(v.abs() < 1e-6, "L = {l}, residual {v}");
        }
    }

    #[test]
    fn isolating_interval_contains_generator() {
        for l in [4u64, 5, 6, 7, 8, 10, 12, 15] {
            let f = NumberField::for_lcm(l);
            let c = 2.0 * (std::f64::consts::PI / l as f64).cos();
            let (lo, hi, bits) = &f.isolating;
            let scale = (1u64 << bits) as f64;
            assert!(lo.to_f64().unwrap() / scale <= c && c <= hi.to_f64().unwrap() / scale);
            for level in &f.levels {
                let scale = 2f64.powi(level.bits as i32);
                assert!(level.lo.to_f64().unwrap() / scale <= c + 1e-12);
                assert!(level.hi.to_f64().unwrap() / scale >= c - 1e-12);
            }
            let approx = f.approximate(&[0, 1], 1);
            assert!((approx - c).abs() < 2e-6);
        }
    }

    #[test]
    fn golden_ratio_signs() {
        let f = NumberField::for_lcm(5);
        // c - 1 = 1/φ > 0, 2 - c > 0, c^2 - c - 1 = 0 reduces away.
        assert_eq!(f.sign_of(&[-1, 1]), Ordering::Greater);
        assert_eq!(f.sign_of(&[2, -1]), Ordering::Greater);
        assert_eq!(f.sign_of(&[1618, -1000]), Ordering::Less);
        assert_eq!(f.sign_of(&[1619, -1000]), Ordering::Greater);
        assert_eq!(f.sign_of(&[0, 0]), Ordering::Equal);
    }

    #[test]
    fn tiny_differences_need_refinement() {
        let f = NumberField::for_lcm(4);
        // 665857/470832 is a continued-fraction convergent of sqrt 2 from above.
        assert_eq!(f.sign_of(&[665_857, -470_832]), Ordering::Greater);
        // 1393/985 < sqrt 2 < 3363/2378
        assert_eq!(f.sign_of(&[-1393, 985]), Ordering::Greater);
        assert_eq!(f.sign_of(&[3363, -2378]), Ordering::Greater);
    }
}
