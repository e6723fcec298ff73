//! Exact linear algebra over the rationals: fraction-free (Bareiss)
//! elimination after clearing denominators, with rational back-substitution.

use crate::exact::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Solve `A X = B` exactly; `a` is `n x n`, `b` is `n x m` (rows).
/// Returns `None` when `A` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    if n == 0 {
        return Some(vec![]);
    }
    let m = b[0].len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    debug_assert!(b.len() == n && b.iter().all(|r| r.len() == m));

    // clear denominators per row: [D a | D b] with D the row lcm
    let mut w: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut lcm = BigInt::one();
        for x in a[i].iter().chain(b[i].iter()) {
            lcm = lcm.lcm(x.denom());
        }
        let mut row = Vec::with_capacity(n + m);
        for x in a[i].iter().chain(b[i].iter()) {
            row.push(x.numer() * (&lcm / x.denom()));
        }
        w.push(row);
    }

    // Bareiss fraction-free forward elimination with row pivoting
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&i| !w[i][k].is_zero())?;
        w.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..n + m {
                let num = &w[i][j] * &w[k][k] - &w[i][k] * &w[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss exact division failed");
                w[i][j] = q;
            }
            w[i][k] = BigInt::zero();
        }
        prev = w[k][k].clone();
    }

    // rational back-substitution
    let mut x = vec![vec![Rational::zero(); m]; n];
    for c in 0..m {
        for i in (0..n).rev() {
            let mut acc = Rational::from(w[i][n + c].clone());
            for j in i + 1..n {
                acc -= Rational::from(w[i][j].clone()) * x[j][c].clone();
            }
            x[i][c] = acc / Rational::from(w[i][i].clone());
        }
    }
    Some(x)
}

/// Exact inverse of a square rational matrix; `None` when singular.
pub fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut id = vec![vec![Rational::zero(); n]; n];
    for (i, row) in id.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    solve(a, &id)
}

/// Matrix-vector product.
pub fn mat_vec(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(x, y)| x.clone() * y.clone())
                .fold(Rational::zero(), |acc, t| acc + t)
        })
        .collect()
}
