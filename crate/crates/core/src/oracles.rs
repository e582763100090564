//! Brute-force reference implementations.
//!
//! Each function evaluates a definition literally, by enumeration, and
//! shares no code path with the production algorithms it is compared
//! against. Hard caps keep the enumerations finite and fast.

use thiserror::Error;

use crate::action::{PermAction, Permutation};
use crate::lattice::ConeOrder;
use crate::relation::{Relation, Universe};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{what}: {size} exceeds oracle cap {cap}")]
pub struct OracleError {
    pub what: &'static str,
    pub size: usize,
    pub cap: usize,
}

fn cap(what: &'static str, size: usize, cap: usize) -> Result<(), OracleError> {
    if size > cap {
        Err(OracleError { what, size, cap })
    } else {
        Ok(())
    }
}

/// `x ~G y`: some `g` has `g·y = x` and `gⁿ·y = y` for an `n` in
/// `1..=order(g)`.
pub fn sim_g_by_definition(action: &PermAction, x: usize, y: usize) -> Result<bool, OracleError> {
    cap("group order", action.order(), 64)?;
    Ok(action.elements().iter().any(|g| {
        let p = &g.perm;
        p.apply(y) == x && (1..=p.order()).any(|n| p.pow(n).apply(y) == y)
    }))
}

/// Depth-first search over sequences `g₁, .., gₗ` (`l ≤ max_len`) drawn from
/// the whole group, every term satisfying `related(gᵢ)`, for one whose
/// product is the identity.
fn identity_product_sequence(
    action: &PermAction,
    max_len: usize,
    related: &dyn Fn(&Permutation) -> bool,
) -> bool {
    fn go(
        elems: &[Permutation],
        prefix: &Permutation,
        depth: usize,
        max_len: usize,
        related: &dyn Fn(&Permutation) -> bool,
    ) -> bool {
        if depth > 0 && prefix.is_identity() {
            return true;
        }
        if depth == max_len {
            return false;
        }
        elems
            .iter()
            .filter(|g| related(g))
            .any(|g| go(elems, &prefix.compose(g), depth + 1, max_len, related))
    }
    let elems: Vec<Permutation> = action.elements().iter().map(|e| e.perm.clone()).collect();
    let n = action.universe().size();
    go(&elems, &Permutation::identity(n), 0, max_len, related)
}

/// `x ≤G y` by enumerating sequences with `x ≤ gᵢ·y` and product `e`, of
/// length at most `max_len`. A `true` answer always implies `x ≤G y`.
pub fn leq_g_by_sequences(
    action: &PermAction,
    leq: &Relation,
    x: usize,
    y: usize,
    max_len: usize,
) -> Result<bool, OracleError> {
    cap("group order", action.order(), 6)?;
    cap("sequence length", max_len, 6)?;
    Ok(identity_product_sequence(action, max_len, &|g| {
        leq.contains(x, g.apply(y))
    }))
}

/// The sequence characterization of `x ~G y`: some `g₁, .., gₗ` with
/// `x = gᵢ·y` for every `i` and product `e`.
pub fn sim_g_by_sequences(
    action: &PermAction,
    x: usize,
    y: usize,
    max_len: usize,
) -> Result<bool, OracleError> {
    cap("group order", action.order(), 8)?;
    cap("sequence length", max_len, 6)?;
    Ok(identity_product_sequence(action, max_len, &|g| {
        g.apply(y) == x
    }))
}

/// Every invariant linear preorder on the universe, each exactly once.
///
/// Ordered set partitions are enumerated as level assignments whose used
/// levels form an initial segment.
pub fn all_invariant_linear_preorders(action: &PermAction) -> Result<Vec<Relation>, OracleError> {
    let n = action.universe().size();
    cap("universe size", n, 5)?;
    let universe: Universe = action.universe().clone();
    let mut out = Vec::new();
    let mut level = vec![0usize; n];
    loop {
        let top = level.iter().copied().max().unwrap_or(0);
        if (0..=top).all(|l| level.contains(&l)) {
            let r = Relation::from_fn(universe.clone(), |a, b| level[a] <= level[b]);
            if r.is_invariant(action).unwrap_or(false) {
                out.push(r);
            }
        }
        // odometer over {0..n-1}^n
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out);
            }
            level[i] += 1;
            if level[i] < n {
                break;
            }
            level[i] = 0;
            i += 1;
        }
    }
}

fn coefficient_vectors(len: usize, max: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = (max + 1).pow(len as u32);
    (0..total).map(move |mut code| {
        (0..len)
            .map(|_| {
                let c = code % (max + 1);
                code /= max + 1;
                c
            })
            .collect()
    })
}

fn combine(gens: &[Vec<i64>], coeffs: &[u64], dim: usize) -> Vec<i64> {
    let mut out = vec![0i64; dim];
    for (c, s) in coeffs.iter().zip(gens) {
        for (o, x) in out.iter_mut().zip(s) {
            *o += *c as i64 * x;
        }
    }
    out
}

/// Finds `n ∈ 1..=max_scale` and integer coefficients `≤ max_coeff` with
/// `Σ cᵢ sᵢ = n·d`, by exhaustive search.
pub fn cone_member_by_scaling(
    cone: &ConeOrder,
    d: &[i64],
    max_scale: i64,
    max_coeff: u64,
) -> Result<Option<(i64, Vec<u64>)>, OracleError> {
    cap("generator count", cone.gens().len(), 4)?;
    for n in 1..=max_scale {
        let target: Vec<i64> = d.iter().map(|x| n * x).collect();
        for c in coefficient_vectors(cone.gens().len(), max_coeff) {
            if combine(cone.gens(), &c, cone.dim()) == target {
                return Ok(Some((n, c)));
            }
        }
    }
    Ok(None)
}

/// `x ≤G y` for `Z^k` acting on itself by translation, from the definition:
/// translates `g₁, .., gₗ` (`l ≤ max_len`) with `x ≤ gᵢ + y` and `Σ gᵢ = 0`.
///
/// Candidate translates are `m − (y − x)` for monoid elements `m` with
/// coefficients at most `coeff_bound`; partial sums are explored breadth
/// first.
pub fn leq_g_by_translate_sequences(
    cone: &ConeOrder,
    x: &[i64],
    y: &[i64],
    max_len: usize,
    coeff_bound: u64,
) -> Result<bool, OracleError> {
    cap("generator count", cone.gens().len(), 4)?;
    cap("sequence length", max_len, 6)?;
    let d: Vec<i64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    let mut translates: Vec<Vec<i64>> = coefficient_vectors(cone.gens().len(), coeff_bound)
        .map(|c| {
            combine(cone.gens(), &c, cone.dim())
                .iter()
                .zip(&d)
                .map(|(m, di)| m - di)
                .collect()
        })
        .collect();
    translates.sort();
    translates.dedup();
    let zero = vec![0i64; cone.dim()];
    let mut frontier = std::collections::BTreeSet::from([zero.clone()]);
    for _ in 0..max_len {
        let mut next = std::collections::BTreeSet::new();
        for partial in &frontier {
            for g in &translates {
                let s: Vec<i64> = partial.iter().zip(g).map(|(a, b)| a + b).collect();
                if s == zero {
                    return Ok(true);
                }
                next.insert(s);
            }
        }
        frontier = next;
    }
    Ok(false)
}
