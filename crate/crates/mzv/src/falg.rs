//! The comodule `U = Q<f3,f5,...> ⊗ Q[f2]`: shuffle product on the odd
//! letters with a central `f2`, deconcatenation coproduct, truncation
//! derivations, and dimension counting.

use crate::exact::{euler_b, Rational};
use crate::lincomb::LinComb;
use crate::words::shuffle_seqs;
use num_traits::Zero;
use std::cmp::Ordering;
use std::fmt;

/// A basis word `f_{i1} ... f_{ir} * f2^k` with odd letters `i_j >= 3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FWord {
    odds: Vec<u32>,
    f2: u32,
}

impl FWord {
    pub fn new(odds: Vec<u32>, f2: u32) -> Self {
        debug_assert!(odds.iter().all(|&m| m >= 3 && m % 2 == 1));
        FWord { odds, f2 }
    }

    pub fn one() -> Self {
        FWord {
            odds: vec![],
            f2: 0,
        }
    }

    pub fn odds(&self) -> &[u32] {
        &self.odds
    }

    pub fn f2_exp(&self) -> u32 {
        self.f2
    }

    pub fn weight(&self) -> u32 {
        self.odds.iter().sum::<u32>() + 2 * self.f2
    }

    pub fn depth(&self) -> usize {
        self.odds.len()
    }
}

/// Order by weight, then `f2` exponent, then depth, then lexicographically
/// on the odd letters — this fixes matrix row order downstream.
impl Ord for FWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.f2.cmp(&other.f2))
            .then(self.depth().cmp(&other.depth()))
            .then(self.odds.cmp(&other.odds))
    }
}

impl PartialOrd for FWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.odds.iter().map(|m| format!("f{m}")).collect();
        match self.f2 {
            0 => {}
            1 => parts.push("f2".into()),
            k => parts.push(format!("f2^{k}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// An element of `U`: a rational combination of [`FWord`]s.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FPoly {
    pub terms: LinComb<FWord>,
}

impl FPoly {
    pub fn zero() -> Self {
        FPoly::default()
    }

    pub fn one() -> Self {
        FPoly {
            terms: LinComb::generator(FWord::one()),
        }
    }

    pub fn from_word(w: FWord) -> Self {
        FPoly {
            terms: LinComb::generator(w),
        }
    }

    /// The single letter `f_n`: for odd `n` a bare word, for even `n = 2k`
    /// the rewriting `f_{2k} = b_k * f2^k` is applied eagerly.
    pub fn f_single(n: u32) -> Self {
        assert!(n >= 2);
        if n % 2 == 1 {
            FPoly::from_word(FWord::new(vec![n], 0))
        } else {
            FPoly {
                terms: LinComb::single(FWord::new(vec![], n / 2), euler_b(n / 2)),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&mut self, other: &FPoly) {
        self.terms.add(&other.terms);
    }

    pub fn sub(&mut self, other: &FPoly) {
        self.terms.sub(&other.terms);
    }

    pub fn scale(&mut self, c: &Rational) {
        self.terms.scale(c);
    }

    pub fn scaled(&self, c: &Rational) -> FPoly {
        FPoly {
            terms: self.terms.scaled(c),
        }
    }

    /// Shuffle product: odd letters are shuffled, `f2` exponents add.
    pub fn shuffle_mul(&self, other: &FPoly) -> FPoly {
        let mut out = LinComb::zero();
        for (wa, ca) in self.terms.iter() {
            for (wb, cb) in other.terms.iter() {
                let c = ca.clone() * cb.clone();
                for odds in shuffle_seqs(&wa.odds, &wb.odds) {
                    out.add_term(FWord::new(odds, wa.f2 + wb.f2), c.clone());
                }
            }
        }
        FPoly { terms: out }
    }

    /// Prepend the odd letter `f_m` to every word (concatenation, the section
    /// used when assembling `sum_m f_m * xi_m`).
    pub fn concat_front(&self, m: u32) -> FPoly {
        assert!(m % 2 == 1 && m >= 3);
        let mut out = LinComb::zero();
        for (w, c) in self.terms.iter() {
            let mut odds = Vec::with_capacity(w.odds.len() + 1);
            odds.push(m);
            odds.extend_from_slice(&w.odds);
            out.add_term(FWord::new(odds, w.f2), c.clone());
        }
        FPoly { terms: out }
    }

    /// The truncation derivation `∂_m`: delete a leading `f_m`, kill
    /// everything else (including pure `f2` powers).
    pub fn truncate(&self, m: u32) -> FPoly {
        assert!(m % 2 == 1 && m >= 3);
        let mut out = LinComb::zero();
        for (w, c) in self.terms.iter() {
            if w.odds.first() == Some(&m) {
                out.add_term(FWord::new(w.odds[1..].to_vec(), w.f2), c.clone());
            }
        }
        FPoly { terms: out }
    }

    /// Coefficient of the bare single-letter word `f_m`.
    pub fn coeff_f_single(&self, m: u32) -> Rational {
        self.terms.coeff(&FWord::new(vec![m], 0))
    }

    /// Coefficient of `f2^k` (no odd letters).
    pub fn coeff_f2_power(&self, k: u32) -> Rational {
        self.terms.coeff(&FWord::new(vec![], k))
    }

    /// Coefficient in the `f_N` direction: for odd `N` the bare letter, for
    /// even `N = 2k` the `f2^k` coefficient divided by `b_k`.
    pub fn coeff_f_n(&self, n: u32) -> Rational {
        if n % 2 == 1 {
            self.coeff_f_single(n)
        } else {
            self.coeff_f2_power(n / 2) / euler_b(n / 2)
        }
    }

    /// `Some(N)` when all words share weight `N` (zero counts as any weight).
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut it = self.terms.iter();
        let first = it.next()?.0.weight();
        for (w, _) in it {
            if w.weight() != first {
                return None;
            }
        }
        Some(first)
    }

    /// Rebuild `F` from its truncations and its `f_N` coefficient:
    /// `F = sum_m f_m * parts[m] + c * f_N`.
    pub fn reconstruct(parts: &std::collections::BTreeMap<u32, FPoly>, c: &Rational, n: u32) -> FPoly {
        let mut out = FPoly::zero();
        for (&m, p) in parts {
            out.add(&p.concat_front(m));
        }
        if !c.is_zero() {
            out.add(&FPoly::f_single(n).scaled(c));
        }
        out
    }

    /// Structured JSON rendering: an array of `{word, f2, coef}` objects.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(w, c)| {
                serde_json::json!({
                    "word": w.odds,
                    "f2": w.f2,
                    "coef": c.to_string(),
                })
            })
            .collect();
        serde_json::Value::Array(terms)
    }
}

impl fmt::Display for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.terms.render())
    }
}

/// Deconcatenation coproduct of a word: cuts along the odd letters, with the
/// full `f2` power carried on the right factor (the left factor lives in the
/// quotient `U'` where `f2` vanishes).
pub fn deconcat(w: &FWord) -> Vec<(FWord, FWord)> {
    let r = w.odds.len();
    (0..=r)
        .map(|k| {
            (
                FWord::new(w.odds[..k].to_vec(), 0),
                FWord::new(w.odds[k..].to_vec(), w.f2),
            )
        })
        .collect()
}

/// Conjectural dimensions `d_0..d_N` of the weight-graded pieces of `U`:
/// `d_0 = 1, d_1 = 0, d_2 = 1, d_k = d_{k-2} + d_{k-3}`.
pub fn dims(n: u32) -> Vec<u64> {
    let mut d = Vec::with_capacity(n as usize + 1);
    for k in 0..=n as usize {
        let v = match k {
            0 => 1,
            1 => 0,
            2 => 1,
            _ => d[k - 2] + d[k - 3],
        };
        d.push(v);
    }
    d
}

/// All [`FWord`]s of the given weight, in their canonical order.
pub fn basis_words(weight: u32) -> Vec<FWord> {
    let mut out = Vec::new();
    // choose f2 exponent, then compositions of the remainder into odd parts >= 3
    for f2 in 0..=(weight / 2) {
        let rem = weight - 2 * f2;
        let mut cur: Vec<u32> = Vec::new();
        fn rec(rem: u32, f2: u32, cur: &mut Vec<u32>, out: &mut Vec<FWord>) {
            if rem == 0 {
                out.push(FWord::new(cur.clone(), f2));
                return;
            }
            let mut m = 3;
            while m <= rem {
                cur.push(m);
                rec(rem - m, f2, cur, out);
                cur.pop();
                m += 2;
            }
        }
        rec(rem, f2, &mut cur, &mut out);
    }
    out.sort();
    out
}
