//! Invariant extensions of orders under abelian permutation actions.
//!
//! The central object is the closure `≤G`: `x ≤G y` iff there are group
//! elements `g₁, .., gₙ` with `x ≤ gᵢ·y` for every `i` and `∏ gᵢ = e`. For a
//! fixed pair this says the identity lies in the subsemigroup generated by
//! `H(x, y) = {g : x ≤ g·y}`, which is what [`leq_g`] computes.

use std::collections::VecDeque;

use log::warn;
use thiserror::Error;

use crate::action::{
    subset_inclusion, ActionError, EquivalenceClasses, FiniteOrbitWitness, PermAction,
};
use crate::relation::{InvarianceViolation, Relation, RelationError};

/// Universe cap for the exhaustive intersection of invariant extensions.
pub const DEFAULT_INTERSECTION_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("the acting group is not abelian")]
    NonAbelian,
    #[error("relation is not invariant: generator {} breaks ({}, {})", .0.generator, .0.x, .0.y)]
    NotInvariant(InvarianceViolation),
    #[error("pair ({x}, {y}) cannot be added: {y} ≤G {x}")]
    Inadmissible {
        x: usize,
        y: usize,
        witness: SemigroupWitness,
    },
    #[error("element {} has the finite orbit {:?}", .0.element, .0.orbit)]
    OrbitCondition(FiniteOrbitWitness),
    #[error(transparent)]
    Relation(#[from] RelationError),
    #[error(transparent)]
    Action(#[from] ActionError),
}

/// Group elements `g₁, .., gₙ` (as indices into the action's element list)
/// with `x ≤ gᵢ·y` for all `i` and product `e`; this certifies `x ≤G y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupWitness {
    pub x: usize,
    pub y: usize,
    pub elements: Vec<usize>,
}

impl SemigroupWitness {
    pub fn verify(&self, action: &PermAction, leq: &Relation) -> bool {
        if self.elements.is_empty() {
            return false;
        }
        let product = self
            .elements
            .iter()
            .fold(0, |acc, &g| action.multiply(acc, g));
        product == 0
            && self
                .elements
                .iter()
                .all(|&g| leq.contains(self.x, action.act(g, self.y)))
    }
}

/// Strong invariance fails at `(x, y)` for the element at index `element`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongInvarianceViolation {
    pub element: usize,
    pub x: usize,
    pub y: usize,
}

fn check_abelian(action: &PermAction) -> Result<(), ExtensionError> {
    if action.is_abelian() {
        Ok(())
    } else {
        Err(ExtensionError::NonAbelian)
    }
}

fn check_invariant(action: &PermAction, r: &Relation) -> Result<(), ExtensionError> {
    match r.invariance_violation(action)? {
        Some(v) => Err(ExtensionError::NotInvariant(v)),
        None => Ok(()),
    }
}

/// Shortest product of elements of `h` equal to the identity, if any.
///
/// Breadth-first search over the subsemigroup generated by `h`.
fn identity_in_semigroup(action: &PermAction, h: &[usize]) -> Option<Vec<usize>> {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; action.order()];
    let mut seen = vec![false; action.order()];
    let mut queue = VecDeque::new();
    for &g in h {
        if !seen[g] {
            seen[g] = true;
            parent[g] = Some((usize::MAX, g));
            queue.push_back(g);
        }
    }
    while let Some(s) = queue.pop_front() {
        if s == 0 {
            let mut path = Vec::new();
            let mut cur = s;
            while let Some((prev, g)) = parent[cur] {
                path.push(g);
                if prev == usize::MAX {
                    break;
                }
                cur = prev;
            }
            path.reverse();
            return Some(path);
        }
        for &g in h {
            let t = action.multiply(s, g);
            if !seen[t] {
                seen[t] = true;
                parent[t] = Some((s, g));
                queue.push_back(t);
            }
        }
    }
    None
}

fn pair_witness(
    action: &PermAction,
    leq: &Relation,
    x: usize,
    y: usize,
) -> Option<SemigroupWitness> {
    let h: Vec<usize> = (0..action.order())
        .filter(|&g| leq.contains(x, action.act(g, y)))
        .collect();
    identity_in_semigroup(action, &h).map(|elements| SemigroupWitness { x, y, elements })
}

fn leq_g_direct(action: &PermAction, leq: &Relation) -> Relation {
    Relation::from_fn(leq.universe().clone(), |x, y| {
        pair_witness(action, leq, x, y).is_some()
    })
}

/// `a ≤ b` on classes iff some members satisfy `x ≤ y`.
pub fn induced_relation(r: &Relation, classes: &EquivalenceClasses) -> Relation {
    let idx = classes.class_index();
    let mut out = Relation::empty(classes.quotient_universe());
    for (x, y) in r.pairs() {
        out.insert(idx[x], idx[y]);
    }
    out
}

/// Pulls a relation on classes back to the underlying universe.
pub fn lift_relation(r: &Relation, classes: &EquivalenceClasses) -> Relation {
    let idx = classes.class_index();
    Relation::from_fn(classes.universe().clone(), |x, y| {
        r.contains(idx[x], idx[y])
    })
}

/// The closure `≤G` of an invariant preorder under an abelian action.
///
/// Preorders are first condensed by mutual comparability; the closure is
/// computed on the resulting partial order and lifted back.
pub fn leq_g(action: &PermAction, leq: &Relation) -> Result<Relation, ExtensionError> {
    check_abelian(action)?;
    leq.ensure_preorder()?;
    check_invariant(action, leq)?;
    if leq.is_antisymmetric() {
        return Ok(leq_g_direct(action, leq));
    }
    let classes = EquivalenceClasses::of_preorder(leq)?;
    let condensed = action.quotient(&classes)?;
    let order = induced_relation(leq, &classes);
    Ok(lift_relation(&leq_g_direct(&condensed, &order), &classes))
}

/// Witness for `x ≤G y`, or `None` when the pair is not related.
pub fn leq_g_witness(
    action: &PermAction,
    leq: &Relation,
    x: usize,
    y: usize,
) -> Result<Option<SemigroupWitness>, ExtensionError> {
    check_abelian(action)?;
    leq.ensure_preorder()?;
    check_invariant(action, leq)?;
    leq.universe().check_index(x)?;
    leq.universe().check_index(y)?;
    Ok(pair_witness(action, leq, x, y))
}

/// Adds `x ≤ y` together with all its translates `gx ≤ gy` and closes
/// transitively. Requires `y ≰G x`, which keeps the result antisymmetric.
pub fn extend_step(
    action: &PermAction,
    leq: &Relation,
    x: usize,
    y: usize,
) -> Result<Relation, ExtensionError> {
    check_abelian(action)?;
    leq.ensure_partial_order()?;
    check_invariant(action, leq)?;
    leq.universe().check_index(x)?;
    leq.universe().check_index(y)?;
    if let Some(witness) = pair_witness(action, leq, y, x) {
        return Err(ExtensionError::Inadmissible { x, y, witness });
    }
    let mut r = leq.clone();
    for g in 0..action.order() {
        r.insert(action.act(g, x), action.act(g, y));
    }
    let r = r.transitive_closure();
    assert!(
        r.is_antisymmetric(),
        "extension of an admissible pair lost antisymmetry"
    );
    Ok(r)
}

/// Extends an invariant partial order to an invariant linear order by
/// repeated [`extend_step`] on the lexicographically smallest pair `(x, y)`
/// with `x ≰ y` and `y ≰G x`.
///
/// Fails with a witness when some element has a nontrivial finite orbit,
/// in which case no invariant linear order exists at all.
pub fn invariant_linear_extension(
    action: &PermAction,
    leq: &Relation,
) -> Result<Relation, ExtensionError> {
    check_abelian(action)?;
    leq.ensure_partial_order()?;
    check_invariant(action, leq)?;
    if let Some(w) = action.finite_orbit_witness() {
        return Err(ExtensionError::OrbitCondition(w));
    }
    let n = leq.size();
    let mut current = leq.clone();
    loop {
        let closure = leq_g_direct(action, &current);
        let pair = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| x != y && !current.contains(x, y) && !closure.contains(y, x));
        match pair {
            Some((x, y)) => current = extend_step(action, &current, x, y)?,
            None => break,
        }
    }
    assert!(
        current.is_total(),
        "extension loop stopped before linearity"
    );
    Ok(current)
}

/// Intermediate stages of [`invariant_linear_preorder_extension`].
#[derive(Debug, Clone)]
pub struct PreorderExtension {
    /// The resulting invariant linear preorder on the original universe.
    pub relation: Relation,
    /// Mutual-comparability classes of the input.
    pub condensation: EquivalenceClasses,
    /// Orbit classes of the action on the condensation.
    pub orbit_classes: EquivalenceClasses,
    /// Order on orbit classes built from representatives under `≤G`.
    pub base_order: Relation,
    /// The same order built from representatives under `≤` alone.
    pub base_order_plain: Relation,
    /// Linear extension of `base_order` on the orbit classes.
    pub linear_base: Relation,
}

/// Extends an invariant preorder to an invariant linear preorder that keeps
/// every strict comparison strict.
///
/// Steps: condense mutual comparability, pass to orbit classes, order the
/// classes by `≤G` between representatives, linearize on the class action
/// (which acts trivially), and lift.
pub fn invariant_linear_preorder_extension(
    action: &PermAction,
    leq: &Relation,
) -> Result<PreorderExtension, ExtensionError> {
    check_abelian(action)?;
    leq.ensure_preorder()?;
    check_invariant(action, leq)?;

    let condensation = EquivalenceClasses::of_preorder(leq)?;
    let condensed_action = action.quotient(&condensation)?;
    let partial = induced_relation(leq, &condensation);

    let orbit_classes = EquivalenceClasses::from_relation(&condensed_action.sim_g())?;
    let orbit_action = condensed_action.quotient(&orbit_classes)?;

    let closure = leq_g_direct(&condensed_action, &partial);
    let base_order = induced_relation(&closure, &orbit_classes);
    let base_order_plain = induced_relation(&partial, &orbit_classes);
    if base_order != base_order_plain {
        warn!("orbit-class orders from ≤G and ≤ representatives differ");
    }
    base_order.ensure_partial_order()?;

    let linear_base = invariant_linear_extension(&orbit_action, &base_order)?;

    let c1 = condensation.class_index();
    let c2 = orbit_classes.class_index();
    let relation = Relation::from_fn(leq.universe().clone(), |x, y| {
        linear_base.contains(c2[c1[x]], c2[c1[y]])
    });
    Ok(PreorderExtension {
        relation,
        condensation,
        orbit_classes,
        base_order,
        base_order_plain,
        linear_base,
    })
}

/// Intersection of every invariant linear order extending `leq`, found by
/// exhaustive enumeration. Checked against [`leq_g`] before returning.
pub fn intersection_of_invariant_extensions(
    action: &PermAction,
    leq: &Relation,
) -> Result<Relation, ExtensionError> {
    intersection_of_invariant_extensions_capped(action, leq, DEFAULT_INTERSECTION_CAP)
}

pub fn intersection_of_invariant_extensions_capped(
    action: &PermAction,
    leq: &Relation,
    cap: usize,
) -> Result<Relation, ExtensionError> {
    check_abelian(action)?;
    leq.ensure_partial_order()?;
    check_invariant(action, leq)?;
    if let Some(w) = action.finite_orbit_witness() {
        return Err(ExtensionError::OrbitCondition(w));
    }
    let mut meet = Relation::full(leq.universe().clone());
    for ext in leq.linear_extensions_capped(Some(action), cap)? {
        meet = meet.intersection(&ext)?;
    }
    let closure = leq_g_direct(action, leq);
    assert_eq!(
        meet, closure,
        "intersection of invariant linear extensions differs from ≤G"
    );
    Ok(meet)
}

/// First failure of `x ≤ y ⇔ gx ≤ y ⇔ x ≤ gy` over all group elements.
pub fn strong_invariance_violation(
    r: &Relation,
    action: &PermAction,
) -> Result<Option<StrongInvarianceViolation>, ExtensionError> {
    r.universe().check_same(action.universe())?;
    let n = r.size();
    for g in 0..action.order() {
        for x in 0..n {
            for y in 0..n {
                let base = r.contains(x, y);
                if base != r.contains(action.act(g, x), y)
                    || base != r.contains(x, action.act(g, y))
                {
                    return Ok(Some(StrongInvarianceViolation { element: g, x, y }));
                }
            }
        }
    }
    Ok(None)
}

pub fn is_strongly_invariant(r: &Relation, action: &PermAction) -> Result<bool, ExtensionError> {
    Ok(strong_invariance_violation(r, action)?.is_none())
}

/// An invariant linear preorder on subsets together with the subset action.
#[derive(Debug, Clone)]
pub struct PowersetOrder {
    pub action: PermAction,
    pub relation: Relation,
}

/// Invariant linear preorder on all subsets in which every proper subset
/// ranks strictly below its superset.
pub fn powerset_preorder(action: &PermAction) -> Result<PowersetOrder, ExtensionError> {
    check_abelian(action)?;
    let subsets = action.powerset()?;
    let inclusion = subset_inclusion(action.universe().size(), subsets.universe().clone());
    let ext = invariant_linear_preorder_extension(&subsets, &inclusion)?;
    Ok(PowersetOrder {
        action: subsets,
        relation: ext.relation,
    })
}
