use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use super::cone::{ConeError, ConeOrder, GordanCertificate, MembershipCertificate};
use super::linalg::{dot, dot_int, primitive, rank};
use super::{rational, Rational};

/// Lexicographic comparison through the rows of a full-rank rational matrix.
///
/// `x < y` iff the first row with `row·x ≠ row·y` has `row·x < row·y`. Full
/// rank makes this a linear order on `Z^k`; it only sees `y − x`, so it is
/// translation-invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightOrder {
    dim: usize,
    rows: Vec<Vec<Rational>>,
}

impl WeightOrder {
    pub fn new(dim: usize, rows: Vec<Vec<Rational>>) -> Result<Self, ConeError> {
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(ConeError::DimensionMismatch {
                expected: dim,
                found: r.len(),
            });
        }
        let rk = rank(&rows);
        if rk != dim {
            return Err(ConeError::RankDeficient { rank: rk, dim });
        }
        Ok(WeightOrder { dim, rows })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Sign of `v` in the order, i.e. `v` compared with `0`.
    pub fn sign(&self, v: &[i64]) -> Result<Ordering, ConeError> {
        if v.len() != self.dim {
            return Err(ConeError::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        for row in &self.rows {
            let t = dot_int(row, v);
            if t.is_positive() {
                return Ok(Ordering::Greater);
            }
            if t.is_negative() {
                return Ok(Ordering::Less);
            }
        }
        Ok(Ordering::Equal)
    }

    pub fn compare(&self, x: &[i64], y: &[i64]) -> Result<Ordering, ConeError> {
        if x.len() != y.len() {
            return Err(ConeError::DimensionMismatch {
                expected: x.len(),
                found: y.len(),
            });
        }
        let diff: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.sign(&diff)
    }

    /// True when every generator of `cone` is strictly positive.
    pub fn extends(&self, cone: &ConeOrder) -> bool {
        cone.gens()
            .iter()
            .all(|s| self.sign(s) == Ok(Ordering::Greater))
    }
}

/// Appends standard basis vectors while they raise the rank.
fn complete_rows(mut rows: Vec<Vec<Rational>>, dim: usize) -> Vec<Vec<Rational>> {
    for j in 0..dim {
        if rank(&rows) == dim {
            break;
        }
        let mut e = vec![rational(0); dim];
        e[j] = rational(1);
        rows.push(e);
        if rank(&rows) < rows.len() {
            rows.pop();
        }
    }
    rows
}

/// Component of `v` orthogonal to the span of `rows`.
fn project_out(v: &[Rational], rows: &[Vec<Rational>]) -> Vec<Rational> {
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for r in rows {
        let mut b = r.clone();
        for q in &basis {
            let f = dot(&b, q) / dot(q, q);
            for (x, y) in b.iter_mut().zip(q) {
                *x -= &f * y;
            }
        }
        if b.iter().any(|x| !x.is_zero()) {
            basis.push(b);
        }
    }
    let mut out = v.to_vec();
    for q in &basis {
        let f = dot(&out, q) / dot(q, q);
        for (x, y) in out.iter_mut().zip(q) {
            *x -= &f * y;
        }
    }
    out
}

/// Adds rows until every generator in `pending` is strictly positive at
/// some depth, each new row being a positive weight for the generators the
/// previous rows left at zero.
fn refine(
    cone: &ConeOrder,
    mut rows: Vec<Vec<Rational>>,
    mut pending: Vec<Vec<i64>>,
) -> Result<Vec<Vec<Rational>>, ConeError> {
    while !pending.is_empty() && rows.len() < cone.dim() {
        let sub = ConeOrder::new(cone.dim(), pending.clone())?;
        match sub.gordan_certificate() {
            GordanCertificate::PositiveWeight(v) => {
                // Pending generators lie in the orthogonal complement of the
                // earlier rows, so projecting onto it keeps them positive.
                let v = primitive(&project_out(&v, &rows));
                pending.retain(|s| dot_int(&v, s).is_zero());
                rows.push(v);
            }
            GordanCertificate::ZeroCombo(_) => {
                return Err(ConeError::NotPointed(match cone.gordan_certificate() {
                    GordanCertificate::ZeroCombo(l) => l,
                    GordanCertificate::PositiveWeight(_) => Vec::new(),
                }))
            }
        }
    }
    debug_assert!(pending.is_empty());
    Ok(rows)
}

/// A translation-invariant linear order on `Z^k` in which every generator
/// is strictly positive: the positive weight first, then basis completion.
pub fn weight_extension(cone: &ConeOrder) -> Result<WeightOrder, ConeError> {
    match cone.gordan_certificate() {
        GordanCertificate::PositiveWeight(w) => {
            WeightOrder::new(cone.dim(), complete_rows(vec![w], cone.dim()))
        }
        GordanCertificate::ZeroCombo(l) => Err(ConeError::NotPointed(l)),
    }
}

/// A translation-invariant linear order extending `cone` with `x < y`.
///
/// Needs `x − y` outside the rational cone (so `y ≰G x`). The separating
/// weight comes first; generators it leaves at zero are made positive by
/// further rows taken inside the orthogonal complement of the earlier ones;
/// the rest is basis completion.
pub fn separating_extension(
    cone: &ConeOrder,
    x: &[i64],
    y: &[i64],
) -> Result<WeightOrder, ConeError> {
    cone.check_dim(x)?;
    cone.check_dim(y)?;
    if let GordanCertificate::ZeroCombo(l) = cone.gordan_certificate() {
        return Err(ConeError::NotPointed(l));
    }
    let d: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
    let w = match cone.member(&d)? {
        MembershipCertificate::SeparatingWeight(w) => w,
        MembershipCertificate::Combo(q) => return Err(ConeError::NotSeparable(q)),
    };
    let pending: Vec<Vec<i64>> = cone
        .gens()
        .iter()
        .filter(|s| dot_int(&w, s).is_zero())
        .cloned()
        .collect();
    let rows = refine(cone, vec![w], pending)?;
    WeightOrder::new(cone.dim(), complete_rows(rows, cone.dim()))
}
