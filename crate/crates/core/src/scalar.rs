//! Exact elements of `Q(2cos(π/L))`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::Zero;
use smallvec::SmallVec;

use crate::field::{gcd_i128, NumberField};

type Coeffs = SmallVec<[i128; 4]>;

const OVERFLOW: &str = "exact coefficient arithmetic exceeded i128";

#[inline]
fn ck(v: Option<i128>) -> i128 {
    v.expect(OVERFLOW)
}

/// An element `(Σ num[k]·c^k) / den` of a fixed field, kept reduced modulo
/// the minimal polynomial with `den > 0` and `gcd(num, den) = 1`.
///
/// Coefficients are `i128`; every value that arises from the reflection
/// representation of a diagram of rank up to a few dozen stays far inside
/// that range, and overflow panics rather than wrapping.
#[derive(Clone)]
pub struct AlgebraicScalar {
    field: &'static NumberField,
    num: Coeffs,
    den: i128,
}

impl AlgebraicScalar {
    pub fn zero(field: &'static NumberField) -> Self {
        AlgebraicScalar {
            field,
            num: SmallVec::from_elem(0, field.degree()),
            den: 1,
        }
    }

    pub fn from_int(field: &'static NumberField, value: i128) -> Self {
        let mut s = Self::zero(field);
        s.num[0] = value;
        s
    }

    pub fn from_ratio(field: &'static NumberField, num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let mut s = Self::from_int(field, num);
        s.den = den;
        s.normalize();
        s
    }

    /// The generator `c = 2cos(π/L)`.
    pub fn generator(field: &'static NumberField) -> Self {
        if field.degree() == 1 {
            return Self::from_int(field, -field.minimal_polynomial()[0]);
        }
        let mut s = Self::zero(field);
        s.num[1] = 1;
        s
    }

    /// Builds `Σ coeffs[k]·c^k`, reducing modulo the minimal polynomial.
    pub fn from_poly(field: &'static NumberField, coeffs: &[i128]) -> Self {
        let mut s = AlgebraicScalar {
            field,
            num: SmallVec::from_slice(coeffs),
            den: 1,
        };
        s.reduce();
        s.normalize();
        s
    }

    pub fn field(&self) -> &'static NumberField {
        self.field
    }

    /// Power-basis numerators, lowest degree first.
    pub fn numerators(&self) -> &[i128] {
        &self.num
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&a| a == 0)
    }

    pub fn is_one(&self) -> bool {
        self.den == 1 && self.num[0] == 1 && self.num[1..].iter().all(|&a| a == 0)
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        self.field.sign_of(&self.num)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Ratio<i128>> {
        self.num[1..]
            .iter()
            .all(|&a| a == 0)
            .then(|| Ratio::new(self.num[0], self.den))
    }

    /// Decimal approximation rounded to `10^-6`; for layout only.
    pub fn approximate(&self) -> f64 {
        self.field.approximate(&self.num, self.den)
    }

    fn reduce(&mut self) {
        let m = self.field.minimal_polynomial();
        let d = m.len() - 1;
        while self.num.len() > d {
            let top = self.num.pop().unwrap();
            if top != 0 {
                let base = self.num.len() - d;
                for (j, &mj) in m[..d].iter().enumerate() {
                    self.num[base + j] = ck(self.num[base + j].checked_sub(ck(top.checked_mul(mj))));
                }
            }
        }
        while self.num.len() < d {
            self.num.push(0);
        }
    }

    fn normalize(&mut self) {
        if self.den < 0 {
            self.den = ck(self.den.checked_neg());
            for a in self.num.iter_mut() {
                *a = ck(a.checked_neg());
            }
        }
        if self.den == 1 {
            return;
        }
        if self.is_zero() {
            self.den = 1;
            return;
        }
        let g = self.num.iter().fold(self.den, |g, &a| gcd_i128(g, a));
        if g > 1 {
            self.den /= g;
            for a in self.num.iter_mut() {
                *a /= g;
            }
        }
    }

    fn check_field(&self, other: &Self) {
        debug_assert!(
            std::ptr::eq(self.field, other.field),
            "mixing scalars of different fields"
        );
    }

    /// Multiplication by an integer.
    pub fn scale(&self, k: i128) -> Self {
        let mut out = self.clone();
        for a in out.num.iter_mut() {
            *a = ck(a.checked_mul(k));
        }
        out.normalize();
        out
    }

    /// Multiplicative inverse, by solving `x·self = 1` in the power basis.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.field.degree();
        // Column k holds self·c^k.
        let mut cols: Vec<AlgebraicScalar> = Vec::with_capacity(d);
        let mut power = AlgebraicScalar::from_int(self.field, 1);
        let gen = AlgebraicScalar::generator(self.field);
        for _ in 0..d {
            cols.push(self * &power);
            power = &power * &gen;
        }
        let mut rows: Vec<Vec<Ratio<i128>>> = (0..d)
            .map(|i| {
                let mut row: Vec<Ratio<i128>> = cols
                    .iter()
                    .map(|col| Ratio::new(col.num[i], col.den))
                    .collect();
                row.push(Ratio::from_integer(if i == 0 { 1 } else { 0 }));
                row
            })
            .collect();
        let solution = solve_rational(&mut rows, d)?;
        let den = solution
            .iter()
            .fold(1i128, |l, r| ck(l.checked_mul(r.denom() / gcd_i128(l, *r.denom()))));
        let num: Coeffs = solution
            .iter()
            .map(|r| ck(r.numer().checked_mul(den / r.denom())))
            .collect();
        let mut out = AlgebraicScalar {
            field: self.field,
            num,
            den,
        };
        out.normalize();
        Some(out)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        Some(self * &other.inverse()?)
    }
}

fn rat_op(v: Option<Ratio<i128>>) -> Ratio<i128> {
    v.expect(OVERFLOW)
}

/// Gaussian elimination on an augmented `d × (d+1)` rational system.
fn solve_rational(rows: &mut [Vec<Ratio<i128>>], d: usize) -> Option<Vec<Ratio<i128>>> {
    use num_traits::{CheckedDiv, CheckedMul, CheckedSub};
    for col in 0..d {
        let pivot = (col..d).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let p = rows[col][col];
        for j in col..=d {
            rows[col][j] = rat_op(rows[col][j].checked_div(&p));
        }
        for r in 0..d {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col];
                for j in col..=d {
                    let t = rat_op(f.checked_mul(&rows[col][j]));
                    rows[r][j] = rat_op(rows[r][j].checked_sub(&t));
                }
            }
        }
    }
    Some(rows.iter().map(|r| r[d]).collect())
}

impl PartialEq for AlgebraicScalar {
    fn eq(&self, other: &Self) -> bool {
        self.den == other.den && self.num == other.num
    }
}

impl Eq for AlgebraicScalar {}

impl Hash for AlgebraicScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl PartialOrd for AlgebraicScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordering by real value.
impl Ord for AlgebraicScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            Ordering::Equal
        } else {
            (self - other).signum()
        }
    }
}

impl<'a> Add<&'a AlgebraicScalar> for &'a AlgebraicScalar {
    type Output = AlgebraicScalar;

    fn add(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        self.check_field(rhs);
        if self.den == rhs.den {
            let num = self
                .num
                .iter()
                .zip(&rhs.num)
                .map(|(a, b)| ck(a.checked_add(*b)))
                .collect();
            let mut out = AlgebraicScalar {
                field: self.field,
                num,
                den: self.den,
            };
            out.normalize();
            return out;
        }
        let g = gcd_i128(self.den, rhs.den);
        let (l, r) = (rhs.den / g, self.den / g);
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| ck(ck(a.checked_mul(l)).checked_add(ck(b.checked_mul(r)))))
            .collect();
        let mut out = AlgebraicScalar {
            field: self.field,
            num,
            den: ck(self.den.checked_mul(l)),
        };
        out.normalize();
        out
    }
}

impl<'a> Sub<&'a AlgebraicScalar> for &'a AlgebraicScalar {
    type Output = AlgebraicScalar;

    fn sub(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        self + &(-rhs)
    }
}

impl Neg for &AlgebraicScalar {
    type Output = AlgebraicScalar;

    fn neg(self) -> AlgebraicScalar {
        let mut out = self.clone();
        for a in out.num.iter_mut() {
            *a = ck(a.checked_neg());
        }
        out
    }
}

impl Neg for AlgebraicScalar {
    type Output = AlgebraicScalar;

    fn neg(self) -> AlgebraicScalar {
        -&self
    }
}

impl<'a> Mul<&'a AlgebraicScalar> for &'a AlgebraicScalar {
    type Output = AlgebraicScalar;

    fn mul(self, rhs: &AlgebraicScalar) -> AlgebraicScalar {
        self.check_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return AlgebraicScalar::zero(self.field);
        }
        let d = self.num.len();
        let mut prod: Coeffs = SmallVec::from_elem(0, 2 * d - 1);
        for (i, &a) in self.num.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.num.iter().enumerate() {
                if b != 0 {
                    prod[i + j] = ck(prod[i + j].checked_add(ck(a.checked_mul(b))));
                }
            }
        }
        let mut out = AlgebraicScalar {
            field: self.field,
            num: prod,
            den: ck(self.den.checked_mul(rhs.den)),
        };
        out.reduce();
        out.normalize();
        out
    }
}

impl fmt::Debug for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Polynomial in `c`, e.g. `(1 - 2c)/3`.
impl fmt::Display for AlgebraicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &a) in self.num.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let term = match k {
                0 => format!("{a}"),
                1 if a == 1 => "c".to_string(),
                1 if a == -1 => "-c".to_string(),
                1 => format!("{a}c"),
                _ if a == 1 => format!("c^{k}"),
                _ if a == -1 => format!("-c^{k}"),
                _ => format!("{a}c^{k}"),
            };
            terms.push(term);
        }
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        };
        if self.den == 1 {
            write!(f, "{body}")
        } else if terms.len() > 1 {
            write!(f, "({body})/{}", self.den)
        } else {
            write!(f, "{body}/{}", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn golden() -> &'static NumberField {
        NumberField::for_lcm(5)
    }

    #[test]
    fn generator_satisfies_minimal_polynomial() {
        let f = golden();
        let c = AlgebraicScalar::generator(f);
        let one = AlgebraicScalar::from_int(f, 1);
        let lhs = &c * &c;
        let rhs = &c + &one;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_of_golden_ratio() {
        let f = golden();
        let c = AlgebraicScalar::generator(f);
        let one = AlgebraicScalar::from_int(f, 1);
        // 1/φ = φ - 1
        assert_eq!(c.inverse().unwrap(), &c - &one);
        let half = AlgebraicScalar::from_ratio(f, 1, 2);
        assert_eq!(half.inverse().unwrap(), AlgebraicScalar::from_int(f, 2));
        assert!(AlgebraicScalar::zero(f).inverse().is_none());
    }

    #[test]
    fn rational_field_is_plain_rationals() {
        let f = NumberField::for_lcm(3);
        assert_eq!(f.degree(), 1);
        let c = AlgebraicScalar::generator(f);
        assert_eq!(c, AlgebraicScalar::from_int(f, 1));
        let x = AlgebraicScalar::from_ratio(f, -3, 6);
        assert_eq!(x.as_rational(), Some(Ratio::new(-1, 2)));
        assert!(x.is_negative());
    }

    #[test]
    fn display_is_readable() {
        let f = golden();
        let x = AlgebraicScalar::from_poly(f, &[1, -2]).scale(1);
        assert_eq!(x.to_string(), "1 - 2c");
        let y = AlgebraicScalar::from_ratio(f, 1, 2);
        assert_eq!(y.to_string(), "1/2");
    }

    fn arb_elem() -> impl Strategy<Value = (i64, i64, i64)> {
        (-50i64..50, -50i64..50, 1i64..12)
    }

    fn make(f: &'static NumberField, (a, b, d): (i64, i64, i64)) -> AlgebraicScalar {
        let n = AlgebraicScalar::from_poly(f, &[a as i128, b as i128]);
        &n * &AlgebraicScalar::from_ratio(f, 1, d as i128)
    }

    proptest! {
        #[test]
        fn field_axioms_hold(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
            let f = golden();
            let (x, y, z) = (make(f, x), make(f, y), make(f, z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if let Some(inv) = x.inverse() {
                prop_assert!((&x * &inv).is_one());
            }
        }

        #[test]
        fn sign_agrees_with_floating_point(a in -10_000i64..10_000, b in -10_000i64..10_000) {
            let f = golden();
            let x = AlgebraicScalar::from_poly(f, &[a as i128, b as i128]);
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            let v = a as f64 + b as f64 * phi;
            // Only assert when floating point is unambiguous.
            if v.abs() > 1e-6 {
                prop_assert_eq!(x.is_positive(), v > 0.0);
            }
            prop_assert_eq!(x.signum() == Ordering::Equal, a == 0 && b == 0);
        }
    }
}
