//! Slow, independent oracle for multiple zeta values: direct nested
//! summation with Euler–Maclaurin tail completion.
//!
//! Restricted to indices with every part >= 2 (then all the tails are pure
//! power series in `1/m`, with no logarithmic terms). Used only to
//! cross-check the Hölder evaluator, never on the decomposition path.

use crate::error::{Error, Result};
use crate::exact::{bernoulli, bits_for_digits, factorial, BigReal, Rational};
use crate::words::ZetaIndex;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Summation cutoff: terms with index <= M are summed exactly, the rest are
/// absorbed into asymptotic expansions evaluated at M.
const CUTOFF: u32 = 120;

/// An asymptotic expansion `sum_c a_c m^{-c}` with exact rational
/// coefficients, truncated at exponent `a_max`.
type Expansion = BTreeMap<u32, Rational>;

/// Expansion of the zeta tail `Z(s, m) = sum_{k>m} k^{-s}` in powers of
/// `1/m`, truncated at exponent `a_max`; also returns a log2 estimate of the
/// first omitted Euler–Maclaurin term at `m = CUTOFF` (the standard bound on
/// the asymptotic-series error).
fn zeta_tail_expansion(s: u32, a_max: u32) -> (Expansion, f64) {
    debug_assert!(s >= 2);
    let mut e = Expansion::new();
    let mut err_log2 = f64::NEG_INFINITY;
    let lg_m = (CUTOFF as f64).log2();
    let note_term = |c: u32, a: &Rational, e: &mut Expansion, err: &mut f64| {
        if c <= a_max {
            *e.entry(c).or_insert_with(Rational::zero) += a.clone();
        } else {
            // first omitted term bounds the asymptotic error
            let mag = (a.numer().abs().to_f64().unwrap_or(f64::MAX)).log2()
                - (a.denom().to_f64().unwrap_or(1.0)).log2()
                - c as f64 * lg_m;
            if mag > *err {
                *err = mag;
            }
        }
    };

    // m^{1-s}/(s-1) - m^{-s}/2 + sum_i B_{2i}/(2i)! (s)_{2i-1} m^{-s-2i+1}
    note_term(
        s - 1,
        &Rational::new(BigInt::one(), BigInt::from(s - 1)),
        &mut e,
        &mut err_log2,
    );
    note_term(
        s,
        &Rational::new(-BigInt::one(), BigInt::from(2)),
        &mut e,
        &mut err_log2,
    );
    let mut i = 1u32;
    loop {
        let c = s + 2 * i - 1;
        // rising factorial s (s+1) ... (s+2i-2)
        let mut rising = BigInt::one();
        for t in 0..(2 * i - 1) {
            rising *= BigInt::from(s + t);
        }
        let coef = bernoulli(2 * i) * Rational::new(rising, factorial(2 * i as u64));
        if c > a_max {
            note_term(c, &coef, &mut e, &mut err_log2);
            break;
        }
        note_term(c, &coef, &mut e, &mut err_log2);
        i += 1;
    }
    (e, err_log2)
}

/// Multiply an expansion termwise into zeta tails: given the expansion of
/// `U(k)`, produce the expansion of `sum_{k>m} k^{-n} U(k)`.
fn push_through_tail(n: u32, upper: &Expansion, a_max: u32) -> (Expansion, f64) {
    let mut out = Expansion::new();
    let mut err = f64::NEG_INFINITY;
    let lg_m = (CUTOFF as f64).log2();
    for (&c, a) in upper {
        let (tail, tail_err) = zeta_tail_expansion(n + c, a_max);
        let a_mag = (a.numer().abs().to_f64().unwrap_or(f64::MAX).max(1e-300))
            .log2()
            - (a.denom().to_f64().unwrap_or(1.0)).log2();
        for (&ct, coeff) in &tail {
            *out.entry(ct).or_insert_with(Rational::zero) += a.clone() * coeff.clone();
        }
        let e = a_mag + tail_err;
        if e > err {
            err = e;
        }
        // dropped exponents beyond a_max also contribute ~ a * m^{-(a_max+1)}
        let drop = a_mag - (a_max as f64 + 1.0) * lg_m;
        if drop > err {
            err = drop;
        }
    }
    (out, err)
}

fn eval_expansion_at_cutoff(e: &Expansion) -> Rational {
    let m = BigInt::from(CUTOFF);
    let mut acc = Rational::zero();
    for (&c, a) in e {
        acc += a.clone() / Rational::from(m.pow(c));
    }
    acc
}

/// Evaluate `zeta(n1,...,nr)` (all parts >= 2) by direct summation to the
/// cutoff plus Euler–Maclaurin completion of every tail.
pub fn eval_zeta_directsum(idx: &ZetaIndex, digits: u32) -> Result<BigReal> {
    let parts = idx.parts();
    if parts.iter().any(|&n| n < 2) {
        return Err(Error::Invalid(format!(
            "direct-sum oracle requires all parts >= 2, got {idx}"
        )));
    }
    let bits = bits_for_digits(digits);
    let wb = bits + 64;
    let a_max = ((digits as f64 + 12.0) / (CUTOFF as f64).log10()).ceil() as u32 + 4;
    let r = parts.len();

    // Build expansions from the innermost sum outwards. U_{r+1} = 1.
    // expansions[j] approximates U_{j+1}, the sum over the last r-j indices.
    let mut upper: Expansion = Expansion::from([(0u32, Rational::one())]);
    let mut em_err = f64::NEG_INFINITY;

    // Numeric values U_{j}(m), m = 0..CUTOFF, fixed point at scale 2^-wb,
    // built by downward recurrence from the expansion seed at the cutoff.
    let mut values: Vec<BigInt> = vec![BigInt::one() << wb; CUTOFF as usize + 1];
    for j in (0..r).rev() {
        let n = parts[j];
        let (exp, stage_err) = push_through_tail(n, &upper, a_max);
        if stage_err > em_err {
            em_err = stage_err;
        }
        // seed: U_j(CUTOFF) from the asymptotic expansion
        let seed = eval_expansion_at_cutoff(&exp);
        let mut next = vec![BigInt::zero(); CUTOFF as usize + 1];
        let seed_scaled = (seed.numer() << wb) / seed.denom();
        next[CUTOFF as usize] = seed_scaled;
        for m in (0..CUTOFF as usize).rev() {
            let k = m as u32 + 1;
            let term = &values[k as usize] / BigInt::from(k).pow(n);
            next[m] = &next[m + 1] + term;
        }
        values = next;
        upper = exp;
    }

    let mant = &values[0] >> 64;
    let mut out = BigReal::from_scaled(mant, bits, -(bits as f64) - 20.0);
    // account for the asymptotic-series truncation (dominant error source)
    out.widen_err(em_err + (r as f64) + 4.0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{pi, rat};

    fn z(parts: &[u32]) -> ZetaIndex {
        ZetaIndex::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn zeta2_matches_pi() {
        let v = eval_zeta_directsum(&z(&[2]), 40).unwrap();
        let bits = bits_for_digits(45);
        let expected = pi(bits).powi(2).mul_rational(&rat(1, 6));
        assert!(v.agrees_to_digits(&expected, 38), "got {}", v.to_decimal(40));
    }

    #[test]
    fn zeta4_matches_pi4_over_90() {
        let v = eval_zeta_directsum(&z(&[4]), 40).unwrap();
        let bits = bits_for_digits(45);
        let expected = pi(bits).powi(4).mul_rational(&rat(1, 90));
        assert!(v.agrees_to_digits(&expected, 38));
    }

    #[test]
    fn zeta22_is_three_tenths_zeta2_squared() {
        // zeta(2,2) = 3/10 zeta(2)^2 = pi^4/120
        let v = eval_zeta_directsum(&z(&[2, 2]), 35).unwrap();
        let bits = bits_for_digits(40);
        let expected = pi(bits).powi(4).mul_rational(&rat(1, 120));
        assert!(v.agrees_to_digits(&expected, 33), "got {}", v.to_decimal(35));
    }

    #[test]
    fn depth_one_part_must_be_at_least_two() {
        assert!(eval_zeta_directsum(&z(&[1, 2]), 30).is_err());
    }
}
