//! Multiple polylogarithms at `1/2` and the Hölder (path-composition)
//! evaluation of convergent iterated integrals.
//!
//! `Li_{m1,...,ms}(z) = sum_{0<k1<...<ks} z^{ks} / (k1^{m1} ... ks^{ms})`
//! (increasing convention, the argument rides on the outermost index), so
//! that `I(0; rho(m1..ms); z) = (-1)^s Li_{m1..ms}(z)` for any word
//! beginning with 1 (trailing part `ms = 1` is fine at `z = 1/2`).
//!
//! Splitting the path at `1/2` gives, for a convergent word `w` of length n:
//!
//! `I(0; w; 1) = sum_{i=0}^{n} (-1)^{n-i} I(0; w[..i]; 1/2) * I(0; rc(w[i..]); 1/2)`
//!
//! with `rc` the reverse-complement; every factor is then a polylog series
//! at `1/2` whose terms decay like `2^{-k}`.

use crate::exact::BigReal;
use crate::par;
use crate::words::{dual, word_to_composition};
use num_bigint::BigInt;
use num_traits::Zero;

/// `Li_{m1..ms}(1/2)` to roughly `2^-bits` absolute accuracy.
pub fn polylog_half(ms: &[u32], bits: u64) -> BigReal {
    let s = ms.len();
    if s == 0 {
        return BigReal::from_bigint(BigInt::from(1), bits);
    }
    let wb = bits + 64; // working scale 2^-wb
    let kmax = wb + 16;

    // t[j-1] carries T_j(k) = sum over chains 0<k1<...<kj<=k of the product
    // of the k_t^{-m_t}, scaled by 2^wb.
    let mut t: Vec<BigInt> = vec![BigInt::zero(); s];
    let one_scaled = BigInt::from(1) << wb;
    let mut acc = BigInt::zero();
    for k in 1..=kmax {
        // chain sums at this k, computed from the T values at k-1
        let mut svals: Vec<BigInt> = Vec::with_capacity(s);
        for (j, &m) in ms.iter().enumerate() {
            let numer = if j == 0 { &one_scaled } else { &t[j - 1] };
            if numer.is_zero() {
                svals.push(BigInt::zero());
                continue;
            }
            let km = BigInt::from(k).pow(m);
            svals.push(numer / km);
        }
        // z^k factor on the outermost index
        acc += &svals[s - 1] >> k;
        let mut done = true;
        for j in 0..s {
            t[j] += &svals[j];
            if !svals[j].is_zero() {
                done = false;
            }
        }
        if done && k as usize > s {
            break;
        }
    }

    // error: geometric tail below 2^-(kmax) plus accumulated truncated
    // divisions, all far under the 64 guard bits
    let err = -(bits as f64) - 32.0;
    let mant = acc >> 64; // rescale from wb to bits
    BigReal::from_scaled(mant, bits, err)
}

/// `I(0; u; 1/2)` for a word beginning with 1 (empty allowed).
fn half_integral(u: &[u8], bits: u64) -> BigReal {
    if u.is_empty() {
        return BigReal::from_bigint(BigInt::from(1), bits);
    }
    debug_assert_eq!(u[0], 1);
    let comp = word_to_composition(u);
    let v = polylog_half(&comp, bits);
    if comp.len() % 2 == 1 {
        v.neg()
    } else {
        v
    }
}

/// `I(0; w; 1)` for a convergent word, via composition of paths at `1/2`.
pub fn eval_word_holder(w: &[u8], bits: u64) -> BigReal {
    debug_assert!(w.first() == Some(&1) && w.last() == Some(&0));
    let n = w.len();
    let jobs: Vec<usize> = (0..=n).collect();
    let terms = par::map_collect(jobs, |i| {
        let left = half_integral(&w[..i], bits);
        let right = half_integral(&dual(&w[i..]), bits);
        let prod = left.mul(&right);
        if (n - i) % 2 == 1 {
            prod.neg()
        } else {
            prod
        }
    });
    let mut acc = BigReal::zero(bits);
    for t in terms {
        acc = acc.add(&t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{bits_for_digits, pi, rat};
    use crate::words::rho;

    #[test]
    fn li1_half_is_ln2() {
        let v = polylog_half(&[1], bits_for_digits(40));
        assert!(v
            .to_decimal(38)
            .starts_with("0.69314718055994530941723212145817656"));
    }

    #[test]
    fn li2_half_known_value() {
        // Li_2(1/2) = pi^2/12 - ln^2(2)/2
        let bits = bits_for_digits(50);
        let li2 = polylog_half(&[2], bits);
        let ln2 = polylog_half(&[1], bits);
        let p = pi(bits);
        let expected = p
            .mul(&p)
            .mul_rational(&rat(1, 12))
            .sub(&ln2.mul(&ln2).mul_rational(&rat(1, 2)));
        assert!(li2.agrees_to_digits(&expected, 45));
    }

    #[test]
    fn holder_reproduces_zeta2() {
        // I(0;10;1) = -zeta(2) = -pi^2/6
        let bits = bits_for_digits(50);
        let v = eval_word_holder(&rho(&[2]), bits);
        let p = pi(bits);
        let expected = p.mul(&p).mul_rational(&rat(-1, 6));
        assert!(v.agrees_to_digits(&expected, 45));
    }

    #[test]
    fn holder_euler_zeta12_vs_zeta3() {
        // I(0;110;1) = zeta(1,2) (depth 2) and I(0;100;1) = -zeta(3):
        // Euler says the values must be opposite.
        let bits = bits_for_digits(45);
        let a = eval_word_holder(&rho(&[1, 2]), bits);
        let b = eval_word_holder(&rho(&[3]), bits);
        assert!(a.add(&b).certified_below_pow10(40));
    }

    #[test]
    fn empty_factor_is_one() {
        let one = half_integral(&[], 64);
        assert_eq!(one.to_rational(), rat(1, 1));
    }
}
