//! Rational reconstruction from a certified real approximation, via
//! continued-fraction convergents.

use super::{BigReal, Rational};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact rational upper bound for `2^e` (rounded up to an integer power).
fn pow2_rational(e: f64) -> Rational {
    let ec = e.ceil() as i64;
    if ec >= 0 {
        Rational::from(BigInt::one() << ec as u64)
    } else {
        Rational::new(BigInt::one(), BigInt::one() << (-ec) as u64)
    }
}

/// Find the unique rational `p/q` with `q <= max_den` within `x`'s error
/// bound, by walking the continued fraction of the approximation.
///
/// Safeguards, all of which surface as [`Error::AmbiguousReconstruction`]
/// ("raise precision and retry"):
///
/// * the uniqueness criterion `2 * max_den^2 * err < 1` must hold, so that at
///   most one candidate can fit inside the error interval;
/// * some candidate must actually fit;
/// * the best candidate must be at least 10x closer than the runner-up
///   within the denominator bound (defense against borderline precision).
pub fn reconstruct_rational(x: &BigReal, max_den: &BigInt) -> Result<Rational> {
    assert!(max_den >= &BigInt::one(), "max_den must be >= 1");
    // An "exact" BigReal still only has `bits` meaningful binary places once
    // it has been through rounding elsewhere; never claim better than 1 ulp.
    let err_eff = x.err_log2().max(-(x.bits() as f64));
    let err = pow2_rational(err_eff);
    let ambiguous = |x: &BigReal| Error::AmbiguousReconstruction {
        value: x.to_decimal(12),
        err_log2: err_eff,
        max_den: max_den.clone(),
    };

    let two_d2_err = Rational::from(BigInt::from(2) * max_den * max_den) * err.clone();
    if two_d2_err >= Rational::one() {
        return Err(ambiguous(x));
    }

    let xr = x.to_rational();
    let neg = xr.is_negative();
    let target = if neg { -xr.clone() } else { xr.clone() };

    // Continued-fraction convergents h/k of `target`, stopping once k exceeds
    // max_den. Track the last two for the semiconvergent candidate.
    let mut p = target.numer().clone();
    let mut q = target.denom().clone();
    // seed values h_{-2}/k_{-2} = 0/1 and h_{-1}/k_{-1} = 1/0, so that
    // h_n = a_n h_{n-1} + h_{n-2}; the 0th convergent has k = 1 <= max_den.
    let mut hm1 = BigInt::zero();
    let mut km1 = BigInt::one();
    let mut h = BigInt::one();
    let mut k = BigInt::zero();
    let mut exhausted = false; // CF terminated with all denominators <= max_den
    loop {
        if q.is_zero() {
            exhausted = true;
            break;
        }
        let (a, r) = num_integer::Integer::div_rem(&p, &q);
        let hn = &a * &h + &hm1;
        let kn = &a * &k + &km1;
        if &kn > max_den {
            break;
        }
        hm1 = std::mem::replace(&mut h, hn);
        km1 = std::mem::replace(&mut k, kn);
        p = std::mem::replace(&mut q, r);
    }

    let dist = |num: &BigInt, den: &BigInt| -> Rational {
        let c = Rational::new(num.clone(), den.clone());
        let d = target.clone() - c;
        if d.is_negative() {
            -d
        } else {
            d
        }
    };

    let d_best;
    let best;
    let d_runner;
    if exhausted {
        // target is exactly h/k with k <= max_den
        best = Rational::new(h.clone(), k.clone());
        d_best = Rational::zero();
        d_runner = if km1.is_zero() {
            Rational::one() // no previous convergent; any positive distance
        } else {
            dist(&hm1, &km1)
        };
    } else {
        // Last convergent within bound is (h, k); the other candidate is the
        // largest semiconvergent (hm1 + t*h) / (km1 + t*k) with den <= max_den.
        let cand1 = (h.clone(), k.clone());
        let t = (max_den - &km1) / &k;
        let mut cands = vec![cand1];
        if t >= BigInt::one() {
            let sn = &km1 + &t * &k;
            if sn <= *max_den && !sn.is_zero() {
                cands.push((&hm1 + &t * &h, sn));
            }
        }
        if cands.len() == 1 && !km1.is_zero() {
            cands.push((hm1.clone(), km1.clone()));
        }
        let mut scored: Vec<(Rational, Rational)> = cands
            .into_iter()
            .map(|(n, d)| (dist(&n, &d), Rational::new(n, d)))
            .collect();
        scored.sort_by(|a, b| a.0.cmp(&b.0));
        d_best = scored[0].0.clone();
        best = scored[0].1.clone();
        d_runner = if scored.len() > 1 {
            scored[1].0.clone()
        } else {
            Rational::one()
        };
    }

    if d_best > err {
        return Err(ambiguous(x));
    }
    if !d_best.is_zero() && d_runner < Rational::from(BigInt::from(10)) * d_best.clone() {
        return Err(ambiguous(x));
    }
    Ok(if neg { -best } else { best })
}
