//! Words over `{0,1}`, the `rho` encoding, iterated-integral symbols, and
//! their normalization to canonical `zeta` generators.
//!
//! Sign conventions (locked in by tests):
//!
//! * `I(0; rho(n1..nr); 1) = (-1)^r zeta(n1,...,nr)` for convergent words
//!   (begin 1, end 0), increasing-index summation.
//! * path reversal: `I(a0; a1..an; a_end) = (-1)^n I(a_end; an..a1; a0)`.
//! * duality: `I(0; a1..an; 1) = (-1)^n I(0; 1-an,...,1-a1; 1)`.
//!
//! The duality sign is forced by consistency with the shuffle product: with
//! it, `I(0;100;1) = -zeta(3)` and `I(0;110;1) = zeta(1,2)` combine to
//! Euler's `zeta(1,2) = zeta(3)`, and the depth-1 expansion comes out as
//! `I(0; 0^a 1 0^{2n-a}; 1) = (-1)^{a+1} C(2n,a) zeta(2n+1)` (note the
//! `a = 0` case must agree with the `(-1)^r` of the base relation).

use crate::error::{Error, Result};
use crate::exact::{binomial, weak_compositions, Rational};
use crate::lincomb::LinComb;
use num_traits::One;
use std::fmt;

/// A composition `(n1,...,nr)` with `n_i >= 1` and `n_r >= 2`, naming the
/// generator `zeta(n1,...,nr)`; the empty composition is the unit `1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZetaIndex {
    parts: Vec<u32>,
}

impl ZetaIndex {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Invalid(
                "empty zeta index; use ZetaIndex::one() for the unit".into(),
            ));
        }
        if parts.contains(&0) {
            return Err(Error::Invalid(format!("zeta index parts must be >= 1: {parts:?}")));
        }
        if *parts.last().unwrap() < 2 {
            return Err(Error::Invalid(format!(
                "last part must be >= 2 for convergence: {parts:?}"
            )));
        }
        Ok(ZetaIndex { parts })
    }

    /// The unit `1` (empty product), used on tensor factors.
    pub fn one() -> Self {
        ZetaIndex { parts: vec![] }
    }

    pub fn is_one(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.parts.len()
    }
}

impl fmt::Display for ZetaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "zeta({})", parts.join(","))
    }
}

/// An iterated-integral symbol `I(a0; a1...an; a_end)` with all entries in
/// `{0,1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ISymbol {
    pub a0: u8,
    pub letters: Vec<u8>,
    pub a_end: u8,
}

impl ISymbol {
    pub fn new(a0: u8, letters: Vec<u8>, a_end: u8) -> Self {
        debug_assert!(a0 <= 1 && a_end <= 1 && letters.iter().all(|&l| l <= 1));
        ISymbol { a0, letters, a_end }
    }

    /// The symbol `I(0; w; 1)` of a convergent-or-not word.
    pub fn from_word(letters: Vec<u8>) -> Self {
        ISymbol::new(0, letters, 1)
    }

    pub fn weight(&self) -> u32 {
        self.letters.len() as u32
    }
}

impl fmt::Display for ISymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: String = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "I({};{};{})", self.a0, w, self.a_end)
    }
}

/// `rho(n1,...,nr) = 1 0^{n1-1} 1 0^{n2-1} ... 1 0^{nr-1}`.
pub fn rho(parts: &[u32]) -> Vec<u8> {
    let mut w = Vec::with_capacity(parts.iter().sum::<u32>() as usize);
    for &n in parts {
        w.push(1);
        w.extend(std::iter::repeat_n(0, n as usize - 1));
    }
    w
}

/// Parse a word starting with 1 into the unique composition with
/// `rho(comp) = word` (the last part may be 1 if the word ends in 1).
pub(crate) fn word_to_composition(word: &[u8]) -> Vec<u32> {
    debug_assert!(word.first() == Some(&1));
    let mut comp = Vec::new();
    for &l in word {
        if l == 1 {
            comp.push(1);
        } else {
            *comp.last_mut().unwrap() += 1;
        }
    }
    comp
}

/// Inverse of [`rho`] on convergent words (begin 1, end 0).
pub fn word_to_index(word: &[u8]) -> Result<ZetaIndex> {
    if word.first() != Some(&1) || word.last() != Some(&0) {
        let s: String = word.iter().map(|l| l.to_string()).collect();
        return Err(Error::NotConvergent(s));
    }
    ZetaIndex::new(word_to_composition(word))
}

/// Reverse the word and complement every letter.
pub fn dual(word: &[u8]) -> Vec<u8> {
    word.iter().rev().map(|&l| 1 - l).collect()
}

/// All `(|a|,|b|)`-shuffles of two sequences, with multiplicity.
pub fn shuffle_seqs<T: Clone>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut cur: Vec<T> = Vec::with_capacity(a.len() + b.len());
    fn rec<T: Clone>(a: &[T], b: &[T], cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if a.is_empty() && b.is_empty() {
            out.push(cur.clone());
            return;
        }
        if let Some((h, t)) = a.split_first() {
            cur.push(h.clone());
            rec(t, b, cur, out);
            cur.pop();
        }
        if let Some((h, t)) = b.split_first() {
            cur.push(h.clone());
            rec(a, t, cur, out);
            cur.pop();
        }
    }
    rec(a, b, &mut cur, &mut out);
    out
}

/// The shuffle product of `I(x; left; y)` and `I(x; right; y)` as a formal
/// sum of symbols (duplicate shuffles accumulate their multiplicity).
pub fn shuffle_integrals(left: &[u8], right: &[u8], x: u8, y: u8) -> LinComb<ISymbol> {
    let mut out = LinComb::zero();
    for w in shuffle_seqs(left, right) {
        out.add_term(ISymbol::new(x, w, y), Rational::one());
    }
    out
}

fn sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Normalize a symbol to an exact combination of canonical generators using
/// the regularization relations, applied in the order: vanishing (equal
/// endpoints / all letters equal), path reversal to force endpoints `(0,1)`,
/// leading-zero expansion, duality, leading-zero expansion again, and
/// finally the base relation `I(0; rho(n); 1) = (-1)^r zeta(n)`.
///
/// Weight 0 normalizes to the unit; weight 1 always to 0.
pub fn normalize(s: &ISymbol) -> LinComb<ZetaIndex> {
    let n = s.letters.len();
    if n == 0 {
        return LinComb::generator(ZetaIndex::one());
    }
    if s.a0 == s.a_end {
        return LinComb::zero();
    }
    if s.letters.iter().all(|&l| l == s.letters[0]) {
        return LinComb::zero();
    }
    if (s.a0, s.a_end) == (1, 0) {
        let rev: Vec<u8> = s.letters.iter().rev().cloned().collect();
        return normalize(&ISymbol::from_word(rev)).scaled(&sign(n));
    }
    debug_assert_eq!((s.a0, s.a_end), (0, 1));

    let k = s.letters.iter().take_while(|&&l| l == 0).count();
    if k > 0 {
        // leading-zero expansion:
        // I(0; 0^k rho(n); 1) =
        //   (-1)^k sum_{i1+...+ir=k} prod_j C(n_j + i_j - 1, i_j) I(0; rho(n+i); 1)
        let comp = word_to_composition(&s.letters[k..]);
        let r = comp.len();
        let mut out = LinComb::zero();
        for i in weak_compositions(k as u32, r) {
            let mut coeff = sign(k);
            let mut shifted = comp.clone();
            for j in 0..r {
                coeff *= Rational::from(binomial((comp[j] + i[j] - 1) as u64, i[j] as i64));
                shifted[j] = comp[j] + i[j];
            }
            let img = normalize(&ISymbol::from_word(rho(&shifted)));
            out.add(&img.scaled(&coeff));
        }
        return out;
    }

    if *s.letters.last().unwrap() == 1 {
        // signed duality
        return normalize(&ISymbol::from_word(dual(&s.letters))).scaled(&sign(n));
    }

    // convergent word: base relation
    let idx = word_to_index(&s.letters).expect("convergent by construction");
    let r = idx.depth();
    LinComb::single(idx, sign(r))
}

/// Product of two generators in the shuffle algebra, as a combination of
/// generators: expand `(-1)^{ra+rb}` times the shuffle of the two `rho`
/// words and normalize every term.
pub fn mul_zeta(a: &ZetaIndex, b: &ZetaIndex) -> LinComb<ZetaIndex> {
    if a.is_one() {
        return LinComb::generator(b.clone());
    }
    if b.is_one() {
        return LinComb::generator(a.clone());
    }
    let wa = rho(a.parts());
    let wb = rho(b.parts());
    let mut out = LinComb::zero();
    for w in shuffle_seqs(&wa, &wb) {
        out.add(&normalize(&ISymbol::from_word(w)));
    }
    out.scaled(&sign(a.depth() + b.depth()))
}

/// Bilinear extension of [`mul_zeta`].
pub fn mul_lincomb(a: &LinComb<ZetaIndex>, b: &LinComb<ZetaIndex>) -> LinComb<ZetaIndex> {
    let mut out = LinComb::zero();
    for (ta, ca) in a.iter() {
        for (tb, cb) in b.iter() {
            let prod = mul_zeta(ta, tb);
            out.add(&prod.scaled(&(ca.clone() * cb.clone())));
        }
    }
    out
}

/// All canonical generators (compositions with `n_r >= 2`) of a given weight.
pub fn all_zeta_indices(weight: u32) -> Vec<ZetaIndex> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::new();
    fn rec(rem: u32, cur: &mut Vec<u32>, out: &mut Vec<ZetaIndex>) {
        if rem == 0 {
            if let Some(&last) = cur.last() {
                if last >= 2 {
                    out.push(ZetaIndex { parts: cur.clone() });
                }
            }
            return;
        }
        for n in 1..=rem {
            cur.push(n);
            rec(rem - n, cur, out);
            cur.pop();
        }
    }
    rec(weight, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn z(parts: &[u32]) -> ZetaIndex {
        ZetaIndex::new(parts.to_vec()).unwrap()
    }

    fn word(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&[2, 3]), word("10100"));
        assert_eq!(rho(&[4, 3]), word("1000100"));
        assert_eq!(rho(&[2]), word("10"));
        assert_eq!(rho(&[1, 3, 1, 3]), word("11001100"));
    }

    #[test]
    fn word_to_index_roundtrip() {
        assert_eq!(word_to_index(&word("10100")).unwrap(), z(&[2, 3]));
        assert_eq!(word_to_index(&word("10")).unwrap(), z(&[2]));
        assert_eq!(word_to_index(&word("11001100")).unwrap(), z(&[1, 3, 1, 3]));
        assert!(word_to_index(&word("0110")).is_err());
        assert!(word_to_index(&word("101")).is_err());
        for parts in [vec![2], vec![1, 2], vec![3, 1, 2], vec![2, 2, 2]] {
            assert_eq!(word_to_index(&rho(&parts)).unwrap().parts(), &parts[..]);
        }
    }

    #[test]
    fn dual_is_reverse_complement_involution() {
        assert_eq!(dual(&word("100")), word("110"));
        assert_eq!(dual(&word("10100")), word("11010"));
        for w in [word("10"), word("10100"), word("1000100"), word("110010")] {
            assert_eq!(dual(&dual(&w)), w);
        }
    }

    #[test]
    fn normalize_base_cases() {
        // unit and vanishing
        assert_eq!(
            normalize(&ISymbol::new(0, vec![], 1)),
            LinComb::generator(ZetaIndex::one())
        );
        assert!(normalize(&ISymbol::from_word(word("111"))).is_zero());
        assert!(normalize(&ISymbol::new(0, word("10"), 0)).is_zero());
        // weight 1 always 0
        assert!(normalize(&ISymbol::from_word(word("0"))).is_zero());
        assert!(normalize(&ISymbol::from_word(word("1"))).is_zero());
        // base relation with (-1)^r
        assert_eq!(
            normalize(&ISymbol::from_word(word("10"))),
            LinComb::single(z(&[2]), rat(-1, 1))
        );
        assert_eq!(
            normalize(&ISymbol::from_word(word("10100"))),
            LinComb::single(z(&[2, 3]), rat(1, 1))
        );
    }

    #[test]
    fn normalize_shifted_depth_one() {
        // I(0;010;1) = 2 zeta(3): forced by the shuffle relation
        // 0 = I(0;0;1) * I(0;10;1) = I(0;010;1) + 2 I(0;100;1)
        // and I(0;100;1) = -zeta(3).
        assert_eq!(
            normalize(&ISymbol::from_word(word("010"))),
            LinComb::single(z(&[3]), rat(2, 1))
        );
        // ... and the same via the general shuffle machinery
        let sh = shuffle_integrals(&word("0"), &word("10"), 0, 1);
        let mut total: LinComb<ZetaIndex> = LinComb::zero();
        for (s, c) in sh.iter() {
            total.add(&normalize(s).scaled(c));
        }
        assert!(total.is_zero());
    }

    #[test]
    fn normalize_reversal() {
        // I(1;001;0) = (-1)^3 I(0;100;1) = zeta(3)
        assert_eq!(
            normalize(&ISymbol::new(1, word("001"), 0)),
            LinComb::single(z(&[3]), rat(1, 1))
        );
        // reversal invariant on a batch of words
        for w in [word("10100"), word("0101"), word("1000100"), word("0110")] {
            let lhs = normalize(&ISymbol::from_word(w.clone()));
            let rev: Vec<u8> = w.iter().rev().cloned().collect();
            let rhs = normalize(&ISymbol::new(1, rev, 0)).scaled(&sign(w.len()));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn depth_one_closed_form() {
        // I(0; 0^a 1 0^{2n-a}; 1) = (-1)^{a+1} C(2n,a) zeta(2n+1)
        for n in 1..=5u32 {
            for a in 0..=2 * n {
                let mut w = vec![0u8; a as usize];
                w.push(1);
                w.extend(std::iter::repeat_n(0, (2 * n - a) as usize));
                let lc = normalize(&ISymbol::from_word(w));
                let expected = Rational::from(binomial(2 * n as u64, a as i64))
                    * sign(a as usize + 1);
                assert_eq!(lc, LinComb::single(z(&[2 * n + 1]), expected), "a={a} n={n}");
            }
        }
    }

    #[test]
    fn euler_relation_via_duality() {
        // I(0;100;1) = -zeta(3) and its dual word 110 gives
        // I(0;110;1) = zeta(1,2); the signed duality ties them together:
        // -zeta(3) = (-1)^3 * zeta(1,2).
        let lhs = normalize(&ISymbol::from_word(word("100")));
        assert_eq!(lhs, LinComb::single(z(&[3]), rat(-1, 1)));
        let rhs = normalize(&ISymbol::from_word(word("110")));
        assert_eq!(rhs, LinComb::single(z(&[1, 2]), rat(1, 1)));
    }

    #[test]
    fn shuffle_counts() {
        let sh = shuffle_integrals(&word("1"), &word("0"), 0, 1);
        assert_eq!(sh.len(), 2);
        let n = shuffle_seqs(&word("101"), &word("01"))
            .len();
        assert_eq!(n, 10); // C(5,2)
    }

    #[test]
    fn mul_zeta_weight2_squares() {
        // zeta(2)^2 = 4 zeta(1,3) + 2 zeta(2,2) (classical shuffle)
        let p = mul_zeta(&z(&[2]), &z(&[2]));
        assert_eq!(p.coeff(&z(&[1, 3])), rat(4, 1));
        assert_eq!(p.coeff(&z(&[2, 2])), rat(2, 1));
        assert_eq!(p.len(), 2);
        // unit acts as identity
        let u = mul_zeta(&ZetaIndex::one(), &z(&[2]));
        assert_eq!(u, LinComb::generator(z(&[2])));
    }

    #[test]
    fn all_indices_enumeration() {
        // compositions of 4 with last part >= 2: (4),(1,3),(2,2),(1,1,2)
        let v = all_zeta_indices(4);
        assert_eq!(v.len(), 4);
        assert!(v.contains(&z(&[4])));
        assert!(v.contains(&z(&[1, 1, 2])));
    }
}
