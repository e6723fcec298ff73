//! Arbitrary-precision numerical evaluation of multiple zeta values and of
//! rational combinations / monomials in them, with certified error bounds
//! and a concurrent memo cache.

pub mod directsum;
pub mod polylog;

pub use directsum::eval_zeta_directsum;
pub use polylog::{eval_word_holder, polylog_half};

use crate::error::{Error, Result};
use crate::exact::{bits_for_digits, euler_b, pi, BigReal, Rational};
use crate::words::{rho, ZetaIndex};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::sync::RwLock;

/// Working precision, guard digits, and the escalation cap used when a
/// rational reconstruction needs more digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub digits: u32,
    pub guard: u32,
    pub max_digits: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            digits: 64,
            guard: 10,
            max_digits: 1024,
        }
    }
}

impl PrecisionPolicy {
    pub fn new(digits: u32, guard: u32, max_digits: u32) -> Result<Self> {
        if digits < 30 {
            return Err(Error::Invalid("precision policy requires digits >= 30".into()));
        }
        if guard < 10 {
            return Err(Error::Invalid("precision policy requires guard >= 10".into()));
        }
        if max_digits < digits {
            return Err(Error::Invalid(
                "precision policy requires max_digits >= digits".into(),
            ));
        }
        Ok(PrecisionPolicy {
            digits,
            guard,
            max_digits,
        })
    }

    pub fn with_digits(self, digits: u32) -> Self {
        PrecisionPolicy {
            digits,
            max_digits: self.max_digits.max(digits),
            ..self
        }
    }

    /// Binary working precision including guard digits.
    pub fn bits(&self) -> u64 {
        bits_for_digits(self.digits + self.guard)
    }
}

/// Which numerical method backs [`Evaluator::eval_zeta`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Path composition at 1/2 (polylog series, fast).
    #[default]
    Holder,
    /// Direct nested summation with Euler-Maclaurin tails (slow oracle);
    /// falls back to Hölder for indices with a part equal to 1.
    DirectSum,
}

/// Memoizing evaluator for zeta values. The cache is keyed by
/// `(index, digits)` and is safe for concurrent use; entries are idempotent
/// so racing writers are harmless.
#[derive(Debug, Default)]
pub struct Evaluator {
    pub method: Method,
    cache: RwLock<HashMap<(ZetaIndex, u32), BigReal>>,
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator::default()
    }

    pub fn with_method(method: Method) -> Self {
        Evaluator {
            method,
            ..Default::default()
        }
    }

    /// `zeta(2)` at the working precision of `policy`.
    pub fn zeta2(&self, policy: &PrecisionPolicy) -> BigReal {
        let p = pi(policy.bits());
        p.mul(&p).mul_rational(&crate::exact::rat(1, 6))
    }

    /// Evaluate one convergent generator.
    pub fn eval_zeta(&self, idx: &ZetaIndex, policy: &PrecisionPolicy) -> Result<BigReal> {
        if idx.is_one() {
            return Ok(BigReal::from_bigint(BigInt::from(1), policy.bits()));
        }
        let key = (idx.clone(), policy.digits + policy.guard);
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = self.eval_uncached(idx, policy)?;
        if v.err_log2() > -(policy.digits as f64) * 3.32 {
            // the evaluation itself could not certify the requested digits
            return Err(Error::PrecisionUnreachable {
                max_digits: policy.max_digits,
            });
        }
        self.cache.write().unwrap().insert(key, v.clone());
        Ok(v)
    }

    fn eval_uncached(&self, idx: &ZetaIndex, policy: &PrecisionPolicy) -> Result<BigReal> {
        let parts = idx.parts();
        // even depth-1 short-circuit: zeta(2n) = b_n (pi^2/6)^n
        if parts.len() == 1 && parts[0].is_multiple_of(2) {
            let n = parts[0] / 2;
            return Ok(self.zeta2(policy).powi(n).mul_rational(&euler_b(n)));
        }
        match self.method {
            Method::DirectSum if parts.iter().all(|&n| n >= 2) => {
                eval_zeta_directsum(idx, policy.digits + policy.guard)
            }
            _ => {
                let w = rho(parts);
                let v = eval_word_holder(&w, policy.bits());
                // I(0; rho; 1) = (-1)^r zeta
                Ok(if parts.len() % 2 == 1 { v.neg() } else { v })
            }
        }
    }

    /// Evaluate a product of generators (a monomial; the empty product is 1).
    pub fn eval_monomial(&self, mon: &[ZetaIndex], policy: &PrecisionPolicy) -> Result<BigReal> {
        let mut acc = BigReal::from_bigint(BigInt::from(1), policy.bits());
        for idx in mon {
            acc = acc.mul(&self.eval_zeta(idx, policy)?);
        }
        Ok(acc)
    }

    /// Evaluate a rational combination of generators.
    pub fn eval_lincomb(
        &self,
        lc: &crate::lincomb::LinComb<ZetaIndex>,
        policy: &PrecisionPolicy,
    ) -> Result<BigReal> {
        let terms: Vec<(ZetaIndex, Rational)> =
            lc.iter().map(|(t, c)| (t.clone(), c.clone())).collect();
        let vals = crate::par::map_collect(terms, |(idx, c)| {
            self.eval_zeta(&idx, policy).map(|v| v.mul_rational(&c))
        });
        let mut acc = BigReal::zero(policy.bits());
        for v in vals {
            acc = acc.add(&v?);
        }
        Ok(acc)
    }
}
