//! Finite formal sums with exact rational coefficients.

use crate::exact::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A finite formal Q-linear combination of basis objects `T`.
///
/// Zero coefficients are never stored; keys are kept in their `Ord` order so
/// iteration is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinComb<T: Ord> {
    terms: BTreeMap<T, Rational>,
}

impl<T: Ord> Default for LinComb<T> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<T: Ord + Clone> LinComb<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(t: T, c: Rational) -> Self {
        let mut l = Self::zero();
        l.add_term(t, c);
        l
    }

    pub fn generator(t: T) -> Self {
        Self::single(t, Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &T) -> Rational {
        self.terms.get(t).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (T, Rational)> {
        self.terms.into_iter()
    }

    pub fn add_term(&mut self, t: T, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&mut self, other: &Self) {
        for (t, c) in other.iter() {
            self.add_term(t.clone(), c.clone());
        }
    }

    pub fn sub(&mut self, other: &Self) {
        for (t, c) in other.iter() {
            self.add_term(t.clone(), -c.clone());
        }
    }

    pub fn scale(&mut self, c: &Rational) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c.clone();
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        out.scale(c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Rational::one())
    }

    /// Apply `f` to each basis object, producing a combination over a new
    /// basis (coefficients multiply through linearly).
    pub fn map_terms<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> LinComb<U>) -> LinComb<U> {
        let mut out = LinComb::zero();
        for (t, c) in self.iter() {
            let mut img = f(t);
            img.scale(c);
            out.add(&img);
        }
        out
    }
}

impl<T: Ord + Clone + fmt::Display> LinComb<T> {
    /// Render as `a*x + b*y - c*z` with exact rational coefficients.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (t, c)) in self.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if abs.is_one() {
                out.push_str(&t.to_string());
            } else {
                out.push_str(&format!("{}*{}", abs, t));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_terms_are_dropped() {
        let mut l: LinComb<u32> = LinComb::zero();
        l.add_term(1, Rational::one());
        l.add_term(1, -Rational::one());
        assert!(l.is_zero());
    }

    #[test]
    fn render_signs() {
        let mut l: LinComb<String> = LinComb::zero();
        l.add_term("x".to_string(), Rational::one());
        l.add_term("y".to_string(), -(Rational::one() + Rational::one()));
        assert_eq!(l.render(), "x - 2*y");
    }
}
