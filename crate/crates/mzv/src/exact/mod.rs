//! Exact integer and rational arithmetic: special constants, a fixed-point
//! big-real type with certified error bounds, and rational reconstruction.

mod bigreal;
mod reconstruct;

pub use bigreal::{bits_for_digits, pi, BigReal};
pub use reconstruct::reconstruct_rational;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::sync::Mutex;
use std::sync::OnceLock;

/// Exact rational numbers, always in lowest terms with positive denominator
/// (maintained by `num_rational`).
pub type Rational = num_rational::BigRational;

/// Build `p/q` from machine integers.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Binomial coefficient `C(n, k)`; zero for `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || (k as u64) > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Bernoulli number `B_m` (convention `B_1 = -1/2`, `B_2 = 1/6`), memoized.
///
/// Uses the defining recurrence `sum_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli(m: u32) -> Rational {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]));
    let mut cache = cache.lock().unwrap();
    while cache.len() <= m as usize {
        let k = cache.len(); // computing B_k
        let mut acc = Rational::zero();
        for (j, bj) in cache.iter().enumerate() {
            acc += Rational::from(binomial(k as u64 + 1, j as i64)) * bj.clone();
        }
        let bk = -acc / Rational::from(BigInt::from(k as u64 + 1));
        cache.push(bk);
    }
    cache[m as usize].clone()
}

/// The rational `b_n` with `zeta(2n) = b_n * zeta(2)^n`:
/// `b_n = (-1)^{n+1} * B_{2n} * 24^n / (2 * (2n)!)`.
pub fn euler_b(n: u32) -> Rational {
    assert!(n >= 1, "euler_b requires n >= 1");
    let sign = if n % 2 == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let num = sign * BigInt::from(24u32).pow(n);
    let den = BigInt::from(2u32) * factorial(2 * n as u64);
    bernoulli(2 * n) * Rational::new(num, den)
}

/// All weak compositions of `k` into `parts` nonnegative integers, in
/// lexicographic order. `k = 0` yields the single all-zero composition.
pub fn weak_compositions(k: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(k: u32, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = k;
            out.push(cur.clone());
            return;
        }
        for v in 0..=k {
            cur[i] = v;
            rec(k - v, i + 1, cur, out);
        }
    }
    if parts == 0 {
        if k == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(k, 0, &mut cur, &mut out);
    out
}

/// Parse `p/q` or `p` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Rational::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(Rational::from(p))
    }
}

/// `|x|` for rationals.
pub fn rat_abs(x: &Rational) -> Rational {
    if x.is_negative() {
        -x.clone()
    } else {
        x.clone()
    }
}
