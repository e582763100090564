//! Translation-invariant orders on `Z^k`.
//!
//! An invariant order on the lattice is presented by a finite generator set
//! `S`: `x ≤ y` iff `y − x` is a nonnegative integer combination of `S`.
//! Everything here is exact rational arithmetic and every answer carries a
//! certificate that can be re-checked independently of the solver.

mod cone;
mod linalg;
pub mod simplex;
mod weight;

pub use cone::{
    BoundedSearch, ConeError, ConeOrder, GordanCertificate, MembershipCertificate,
    DEFAULT_CONE_DIM_CAP, DEFAULT_CONE_GENS_CAP,
};
pub use linalg::{dot, dot_int, primitive, rank};
pub use weight::{separating_extension, weight_extension, WeightOrder};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        let half = parse_rational("2/4").unwrap();
        assert_eq!(format_rational(&half), "1/2");
        assert_eq!(format_rational(&rational(3)), "3/1");
        assert_eq!(parse_rational("-7").unwrap(), rational(-7));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }
}
