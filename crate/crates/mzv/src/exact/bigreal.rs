//! Fixed-point arbitrary-precision reals with certified absolute error
//! bounds, tracked in the log2 domain.

use super::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use std::f64::consts::LOG2_10;

/// An approximation `mant * 2^{-bits}` of a real number, together with a
/// certified bound `|true - approx| <= 2^{err_log2}`.
///
/// `err_log2 = -inf` means the value is exact. All arithmetic propagates the
/// bound by interval rules (with generous rounding-up), so a final bound can
/// be trusted without re-deriving the numerics.
#[derive(Debug, Clone)]
pub struct BigReal {
    mant: BigInt,
    bits: u64,
    err_log2: f64,
}

/// Binary precision used for a decimal-digit request, with guard bits.
pub fn bits_for_digits(digits: u32) -> u64 {
    (digits as f64 * LOG2_10).ceil() as u64 + 32
}

fn shr_round(x: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return x.clone();
    }
    let half = BigInt::from(1) << (s - 1);
    (x + half) >> s
}

/// `log2(2^a + 2^b)`, tolerant of `-inf` inputs.
fn log2_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + (1.0 + (2f64).powf(-(a - b).abs())).log2()
}

impl BigReal {
    /// Exact zero at the given binary precision.
    pub fn zero(bits: u64) -> Self {
        BigReal {
            mant: BigInt::zero(),
            bits,
            err_log2: f64::NEG_INFINITY,
        }
    }

    /// Wrap a raw scaled mantissa (internal constructor for evaluators).
    pub fn from_scaled(mant: BigInt, bits: u64, err_log2: f64) -> Self {
        BigReal {
            mant,
            bits,
            err_log2,
        }
    }

    /// Round a rational to `bits` binary places.
    pub fn from_rational(q: &Rational, bits: u64) -> Self {
        let num = q.numer() << bits;
        let den = q.denom();
        let (quot, rem) = num_integer::Integer::div_rem(&num, den);
        if rem.is_zero() {
            BigReal {
                mant: quot,
                bits,
                err_log2: f64::NEG_INFINITY,
            }
        } else {
            // truncation toward zero: off by less than one ulp
            BigReal {
                mant: quot,
                bits,
                err_log2: -(bits as f64),
            }
        }
    }

    pub fn from_bigint(n: BigInt, bits: u64) -> Self {
        BigReal {
            mant: n << bits,
            bits,
            err_log2: f64::NEG_INFINITY,
        }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn err_log2(&self) -> f64 {
        self.err_log2
    }

    /// Manually widen the error bound (used when a truncation error from a
    /// series tail must be accounted for).
    pub fn widen_err(&mut self, err_log2: f64) {
        self.err_log2 = log2_add(self.err_log2, err_log2);
    }

    /// Upper bound on `log2 |approx|`; `-inf` for a zero mantissa.
    fn mag0(&self) -> f64 {
        if self.mant.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mant.bits() as f64 - self.bits as f64
        }
    }

    /// Upper bound on `log2 |true value|`.
    pub fn mag_log2(&self) -> f64 {
        log2_add(self.mag0(), self.err_log2)
    }

    /// Lower bound on `log2 |true value|`; `-inf` when the interval may
    /// contain zero.
    fn mag_low_log2(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        let low = (self.mant.bits() as f64 - 1.0) - self.bits as f64;
        if self.err_log2 >= low - 1.0 {
            f64::NEG_INFINITY
        } else {
            low - 1.0
        }
    }

    pub fn neg(&self) -> Self {
        BigReal {
            mant: -&self.mant,
            bits: self.bits,
            err_log2: self.err_log2,
        }
    }

    fn aligned(&self, bits: u64) -> BigInt {
        debug_assert!(bits >= self.bits);
        &self.mant << (bits - self.bits)
    }

    pub fn add(&self, other: &Self) -> Self {
        let bits = self.bits.max(other.bits);
        BigReal {
            mant: self.aligned(bits) + other.aligned(bits),
            bits,
            err_log2: log2_add(self.err_log2, other.err_log2),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let target = self.bits.max(other.bits);
        let prod = &self.mant * &other.mant;
        let shift = self.bits + other.bits - target;
        let mant = shr_round(&prod, shift);
        let err = log2_add(
            log2_add(
                self.mag_log2() + other.err_log2,
                other.mag_log2() + self.err_log2,
            ),
            -(target as f64) - 1.0,
        );
        BigReal {
            mant,
            bits: target,
            err_log2: err,
        }
    }

    /// Division; panics if the divisor's interval contains zero.
    pub fn div(&self, other: &Self) -> Self {
        let ylow = other.mag_low_log2();
        assert!(
            ylow > f64::NEG_INFINITY,
            "BigReal division by a value indistinguishable from zero"
        );
        let target = self.bits.max(other.bits);
        // (a/2^ba) / (b/2^bb) * 2^target = a * 2^(target + bb - ba) / b
        let shift = target + other.bits - self.bits;
        let num = &self.mant << shift;
        let (quot, _rem) = num_integer::Integer::div_rem(&num, &other.mant);
        let err = log2_add(
            log2_add(
                self.err_log2 - ylow,
                self.mag_log2() + other.err_log2 - 2.0 * ylow,
            ),
            -(target as f64) + 1.0,
        );
        BigReal {
            mant: quot,
            bits: target,
            err_log2: err,
        }
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return BigReal::zero(self.bits);
        }
        let num = &self.mant * q.numer();
        let (quot, _rem) = num_integer::Integer::div_rem(&num, q.denom());
        let qmag = (q.numer().bits() as f64) - (q.denom().bits() as f64) + 1.0;
        BigReal {
            mant: quot,
            bits: self.bits,
            err_log2: log2_add(self.err_log2 + qmag, -(self.bits as f64) + 1.0),
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = BigReal::from_bigint(BigInt::from(1), self.bits);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Best-effort `f64` view, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let mag = self.mant.bits() as i64;
        // keep ~60 significant bits
        let drop = (mag - 60).max(0) as u64;
        let top = (&self.mant >> drop).to_f64().unwrap_or(f64::NAN);
        top * (2f64).powi((drop as i64 - self.bits as i64) as i32)
    }

    /// Decimal rendering with `frac_digits` digits after the point,
    /// rounded to nearest.
    pub fn to_decimal(&self, frac_digits: u32) -> String {
        let neg = self.mant.is_negative();
        let a = self.mant.abs();
        let pow10 = BigInt::from(10u32).pow(frac_digits);
        let scaled = shr_round(&(&a * &pow10), self.bits);
        let (int_part, frac_part) = num_integer::Integer::div_rem(&scaled, &pow10);
        let frac_str = frac_part.to_string();
        let pad = frac_digits as usize - frac_str.len();
        format!(
            "{}{}.{}{}",
            if neg { "-" } else { "" },
            int_part,
            "0".repeat(pad),
            frac_str
        )
    }

    /// True when `|value| <= 10^{-digits}` is certified (approx magnitude
    /// plus error bound below the threshold).
    pub fn certified_below_pow10(&self, digits: u32) -> bool {
        self.mag_log2() <= -(digits as f64) * LOG2_10
    }

    /// True when `|self - other| <= 10^{-digits}` is certified.
    pub fn agrees_to_digits(&self, other: &Self, digits: u32) -> bool {
        self.sub(other).certified_below_pow10(digits)
    }

    /// The closest rational `mant / 2^bits` (exact view of the approximation).
    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mant.clone(), BigInt::from(1) << self.bits)
    }
}

/// `arctan(1/x)` scaled by `2^bits`, by the Taylor series with integer
/// truncated divisions.
fn arctan_inv(x: u64, bits: u64) -> BigInt {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = (BigInt::from(1) << bits) / BigInt::from(x);
    let mut acc = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let term = &power / BigInt::from(2 * k + 1);
        if term.is_zero() {
            break;
        }
        if k.is_multiple_of(2) {
            acc += term;
        } else {
            acc -= term;
        }
        power /= &x2;
        if power.is_zero() {
            break;
        }
        k += 1;
    }
    acc
}

/// `pi` to the given binary precision (Machin's formula).
pub fn pi(bits: u64) -> BigReal {
    let work = bits + 32;
    let a = arctan_inv(5, work);
    let b = arctan_inv(239, work);
    let mant = shr_round(&(a * 16 - b * 4), 32);
    BigReal::from_scaled(mant, bits, -(bits as f64) + 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_traits::One;

    #[test]
    fn rational_roundtrip_and_decimal() {
        let x = BigReal::from_rational(&rat(-11, 2), 128);
        assert_eq!(x.to_decimal(10), "-5.5000000000");
        let y = BigReal::from_rational(&rat(1, 3), 256);
        assert!(y.to_decimal(20).starts_with("0.33333333333333333333"));
    }

    #[test]
    fn arithmetic_and_bounds() {
        let a = BigReal::from_rational(&rat(3, 7), 200);
        let b = BigReal::from_rational(&rat(-5, 11), 200);
        let s = a.add(&b).to_rational();
        // 3/7 - 5/11 = -2/77; approximation error stays tiny
        let diff = s - rat(-2, 77);
        assert!(crate::exact::rat_abs(&diff) < rat(1, 1i64 << 62) * rat(1, 1i64 << 62));
        let p = a.mul(&b);
        assert!(p.err_log2() < -190.0);
        let q = a.div(&b);
        assert!(q.err_log2() < -190.0);
        // (3/7)/(-5/11) = -33/35
        let qdiff = q.to_rational() - rat(-33, 35);
        assert!(crate::exact::rat_abs(&qdiff) < rat(1, i64::MAX));
    }

    #[test]
    fn pi_value() {
        let p = pi(bits_for_digits(50));
        assert!(p
            .to_decimal(45)
            .starts_with("3.1415926535897932384626433832795028841971"));
        assert!(p.err_log2() < -(49.0 * 3.32));
    }

    #[test]
    fn powi_matches_repeated_mul() {
        let a = BigReal::from_rational(&rat(7, 5), 128);
        let cube = a.powi(3).to_rational();
        let expected = rat(343, 125);
        let diff = crate::exact::rat_abs(&(cube - expected));
        assert!(diff < rat(1, 1i64 << 60));
        let one = BigReal::from_rational(&rat(9, 4), 64).powi(0);
        assert_eq!(one.to_rational(), Rational::one());
    }

    #[test]
    fn error_certification() {
        let mut x = BigReal::from_rational(&rat(1, 1_000_000), 200);
        assert!(x.certified_below_pow10(5));
        assert!(!x.certified_below_pow10(7));
        x.widen_err(-10.0);
        assert!(!x.certified_below_pow10(5));
    }
}
