use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

pub fn dot(w: &[Rational], v: &[Rational]) -> Rational {
    w.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// `w · v` for an integer vector `v`.
pub fn dot_int(w: &[Rational], v: &[i64]) -> Rational {
    w.iter()
        .zip(v)
        .map(|(a, &b)| a * Rational::from_integer(BigInt::from(b)))
        .sum()
}

/// Rank by fraction-exact Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Positive rescaling of `v` to the primitive integer vector on its ray.
pub fn primitive(v: &[Rational]) -> Vec<Rational> {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if gcd.is_zero() {
        return v.to_vec();
    }
    let gcd = gcd.abs();
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd))
        .collect()
}
