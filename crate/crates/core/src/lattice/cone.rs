use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use super::linalg::{dot_int, primitive};
use super::simplex::{Domain, LinearProgram, LpOutcome, Sense};
use super::{rational, Rational};

pub const DEFAULT_CONE_DIM_CAP: usize = 6;
pub const DEFAULT_CONE_GENS_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConeError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("vector has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generator {0} is the zero vector")]
    ZeroGenerator(usize),
    #[error("{what}: {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("generated order is not antisymmetric (zero combination {0:?})")]
    NotPointed(Vec<u64>),
    #[error("the pair is already ordered: difference lies in the cone")]
    NotSeparable(Vec<Rational>),
    #[error("weight rows have rank {rank}, need {dim}")]
    RankDeficient { rank: usize, dim: usize },
}

/// An invariant order on `Z^k`: `x ≤ y` iff `y − x ∈ monoid(S)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeOrder {
    dim: usize,
    gens: Vec<Vec<i64>>,
}

/// Either a weight strictly positive on every generator, or a nonnegative
/// integer combination of generators, not all zero, summing to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GordanCertificate {
    PositiveWeight(Vec<Rational>),
    ZeroCombo(Vec<u64>),
}

/// Either nonnegative rational coefficients reproducing the target, or a
/// weight nonnegative on the generators and negative on the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MembershipCertificate {
    Combo(Vec<Rational>),
    SeparatingWeight(Vec<Rational>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundedSearch {
    Found(Vec<u64>),
    NotFound { bound: u64 },
}

fn int_rows(gens: &[Vec<i64>], dim: usize) -> Vec<Vec<Rational>> {
    // column j of the returned matrix is generator j
    (0..dim)
        .map(|i| gens.iter().map(|s| rational(s[i])).collect())
        .collect()
}

impl ConeOrder {
    pub fn new(dim: usize, gens: Vec<Vec<i64>>) -> Result<Self, ConeError> {
        if dim == 0 {
            return Err(ConeError::ZeroDimension);
        }
        if dim > DEFAULT_CONE_DIM_CAP {
            return Err(ConeError::CapExceeded {
                what: "dimension",
                size: dim,
                cap: DEFAULT_CONE_DIM_CAP,
            });
        }
        if gens.len() > DEFAULT_CONE_GENS_CAP {
            return Err(ConeError::CapExceeded {
                what: "generator count",
                size: gens.len(),
                cap: DEFAULT_CONE_GENS_CAP,
            });
        }
        for (i, s) in gens.iter().enumerate() {
            if s.len() != dim {
                return Err(ConeError::DimensionMismatch {
                    expected: dim,
                    found: s.len(),
                });
            }
            if s.iter().all(|&c| c == 0) {
                return Err(ConeError::ZeroGenerator(i));
            }
        }
        Ok(ConeOrder { dim, gens })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Vec<i64>] {
        &self.gens
    }

    pub(crate) fn check_dim(&self, v: &[i64]) -> Result<(), ConeError> {
        if v.len() == self.dim {
            Ok(())
        } else {
            Err(ConeError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            })
        }
    }

    /// Decides whether the generated order is antisymmetric.
    ///
    /// Solves `max ε` subject to `w·s ≥ ε` for every generator and
    /// `‖w‖∞ ≤ 1`; a positive optimum yields the weight. Otherwise a second
    /// program finds `λ ≥ 0`, `Σλ = 1`, `Σ λᵢ sᵢ = 0`, scaled to integers.
    pub fn gordan_certificate(&self) -> GordanCertificate {
        let k = self.dim;
        if self.gens.is_empty() {
            let mut e = vec![rational(0); k];
            e[0] = rational(1);
            return GordanCertificate::PositiveWeight(e);
        }
        // variables: w (free), ε (free)
        let mut domains = vec![Domain::Free; k];
        domains.push(Domain::Free);
        let mut lp = LinearProgram::new(domains);
        let mut objective = vec![rational(0); k];
        objective.push(rational(1));
        lp.maximize(objective);
        for s in &self.gens {
            let mut row: Vec<Rational> = s.iter().map(|&c| rational(c)).collect();
            row.push(rational(-1));
            lp.constrain(row, Sense::Ge, rational(0));
        }
        for j in 0..k {
            let mut row = vec![rational(0); k + 1];
            row[j] = rational(1);
            lp.constrain(row.clone(), Sense::Le, rational(1));
            lp.constrain(row, Sense::Ge, rational(-1));
        }
        match lp.solve() {
            LpOutcome::Optimal { point, value } if value.is_positive() => {
                GordanCertificate::PositiveWeight(primitive(&point[..k]))
            }
            LpOutcome::Optimal { .. } => GordanCertificate::ZeroCombo(self.zero_combination()),
            other => unreachable!("bounded feasible program returned {other:?}"),
        }
    }

    fn zero_combination(&self) -> Vec<u64> {
        let m = self.gens.len();
        let mut lp = LinearProgram::new(vec![Domain::NonNegative; m]);
        for row in int_rows(&self.gens, self.dim) {
            lp.constrain(row, Sense::Eq, rational(0));
        }
        lp.constrain(vec![rational(1); m], Sense::Eq, rational(1));
        match lp.solve() {
            LpOutcome::Optimal { point, .. } => primitive(&point)
                .iter()
                .map(|q| q.to_integer().to_u64().expect("combination fits in u64"))
                .collect(),
            other => unreachable!("no positive weight but no zero combination: {other:?}"),
        }
    }

    /// Rational cone membership of `d`, which decides `x ≤G y` for
    /// `d = y − x`.
    pub fn member(&self, d: &[i64]) -> Result<MembershipCertificate, ConeError> {
        self.check_dim(d)?;
        let m = self.gens.len();
        if m > 0 {
            let mut lp = LinearProgram::new(vec![Domain::NonNegative; m]);
            for (row, &di) in int_rows(&self.gens, self.dim).into_iter().zip(d) {
                lp.constrain(row, Sense::Eq, rational(di));
            }
            if let LpOutcome::Optimal { point, .. } = lp.solve() {
                return Ok(MembershipCertificate::Combo(point));
            }
        } else if d.iter().all(|&c| c == 0) {
            return Ok(MembershipCertificate::Combo(Vec::new()));
        }
        // min d·w  s.t.  w·s ≥ 0, ‖w‖∞ ≤ 1
        let k = self.dim;
        let mut lp = LinearProgram::new(vec![Domain::Free; k]);
        lp.maximize(d.iter().map(|&c| rational(-c)).collect());
        for s in &self.gens {
            lp.constrain(
                s.iter().map(|&c| rational(c)).collect(),
                Sense::Ge,
                rational(0),
            );
        }
        for j in 0..k {
            let mut row = vec![rational(0); k];
            row[j] = rational(1);
            lp.constrain(row.clone(), Sense::Le, rational(1));
            lp.constrain(row, Sense::Ge, rational(-1));
        }
        match lp.solve() {
            LpOutcome::Optimal { point, value } if value.is_positive() => {
                Ok(MembershipCertificate::SeparatingWeight(primitive(&point)))
            }
            other => unreachable!("target outside the cone but no separating weight: {other:?}"),
        }
    }

    /// Searches for integer coefficients in `0..=bound`, not all zero, with
    /// `Σ cᵢ sᵢ = d`. A miss says nothing beyond the bound.
    pub fn monoid_member_bounded(&self, d: &[i64], bound: u64) -> Result<BoundedSearch, ConeError> {
        self.check_dim(d)?;
        // (partial sum, any nonzero coefficient) -> first coefficients reaching it
        let mut states: BTreeMap<(Vec<i64>, bool), Vec<u64>> = BTreeMap::new();
        states.insert((vec![0; self.dim], false), Vec::new());
        for s in &self.gens {
            let mut next = BTreeMap::new();
            for ((sum, nonzero), coeffs) in &states {
                for c in 0..=bound {
                    let key = (
                        sum.iter()
                            .zip(s)
                            .map(|(a, b)| a + c as i64 * b)
                            .collect::<Vec<_>>(),
                        *nonzero || c > 0,
                    );
                    next.entry(key).or_insert_with(|| {
                        let mut v = coeffs.clone();
                        v.push(c);
                        v
                    });
                }
            }
            states = next;
        }
        Ok(match states.remove(&(d.to_vec(), true)) {
            Some(c) => BoundedSearch::Found(c),
            None => BoundedSearch::NotFound { bound },
        })
    }
}

impl ConeOrder {
    /// `Σ cᵢ sᵢ` for integer coefficients `c`.
    pub fn evaluate(&self, coeffs: &[u64]) -> Vec<i64> {
        let mut out = vec![0i64; self.dim];
        for (c, s) in coeffs.iter().zip(&self.gens) {
            for (o, x) in out.iter_mut().zip(s) {
                *o += *c as i64 * x;
            }
        }
        out
    }
}

impl GordanCertificate {
    pub fn is_positive(&self) -> bool {
        matches!(self, GordanCertificate::PositiveWeight(_))
    }

    /// Exact check of the defining (in)equalities against `cone`.
    pub fn verify(&self, cone: &ConeOrder) -> bool {
        match self {
            GordanCertificate::PositiveWeight(w) => {
                w.len() == cone.dim && cone.gens.iter().all(|s| dot_int(w, s).is_positive())
            }
            GordanCertificate::ZeroCombo(l) => {
                l.len() == cone.gens.len()
                    && l.iter().any(|&c| c > 0)
                    && (0..cone.dim).all(|i| {
                        l.iter()
                            .zip(&cone.gens)
                            .map(|(&c, s)| c as i128 * s[i] as i128)
                            .sum::<i128>()
                            == 0
                    })
            }
        }
    }

    /// For a zero combination, coefficient vectors of some `v ≠ 0` and `−v`
    /// in the monoid, so both `0 < v` and `v < 0` hold in the generated order.
    pub fn opposite_pair(&self) -> Option<(Vec<u64>, Vec<u64>)> {
        let GordanCertificate::ZeroCombo(l) = self else {
            return None;
        };
        let i = l.iter().position(|&c| c > 0)?;
        let mut v = vec![0; l.len()];
        v[i] = 1;
        let mut minus_v = l.clone();
        minus_v[i] -= 1;
        Some((v, minus_v))
    }
}

impl MembershipCertificate {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipCertificate::Combo(_))
    }

    pub fn verify(&self, cone: &ConeOrder, d: &[i64]) -> bool {
        if d.len() != cone.dim {
            return false;
        }
        match self {
            MembershipCertificate::Combo(q) => {
                q.len() == cone.gens.len()
                    && q.iter().all(|c| !c.is_negative())
                    && (0..cone.dim).all(|i| {
                        let total: Rational = q
                            .iter()
                            .zip(&cone.gens)
                            .map(|(c, s)| c * rational(s[i]))
                            .sum();
                        total == rational(d[i])
                    })
            }
            MembershipCertificate::SeparatingWeight(w) => {
                w.len() == cone.dim
                    && cone.gens.iter().all(|s| !dot_int(w, s).is_negative())
                    && dot_int(w, d).is_negative()
            }
        }
    }

    /// Least `n ≥ 1` with `n·d` an integer combination of the generators,
    /// read off a combo's denominators.
    pub fn scale(&self) -> Option<BigInt> {
        match self {
            MembershipCertificate::Combo(q) => {
                Some(q.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom())))
            }
            MembershipCertificate::SeparatingWeight(_) => None,
        }
    }
}
