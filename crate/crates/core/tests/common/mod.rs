//! Seeded generators for random instances shared by the integration suites.
#![allow(dead_code)]

use invariant_orders::action::{GroupOptions, PermAction, Permutation};
use invariant_orders::lattice::ConeOrder;
use invariant_orders::relation::{Relation, Universe};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn u(n: usize) -> Universe {
    Universe::new(n).unwrap()
}

/// Every permutation of `n` points, in lexicographic order of images.
pub fn all_perms(n: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if prefix.len() == used.len() {
            out.push(Permutation::from_map(prefix.clone()).unwrap());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// An abelian action on `n` points by up to two commuting generators, with
/// group order at most `max_order`. Generators are drawn from the
/// centralizer of the ones already chosen.
pub fn abelian_action(rng: &mut StdRng, n: usize, max_order: usize) -> PermAction {
    let perms = all_perms(n);
    loop {
        let k = rng.gen_range(0..=2);
        let mut gens: Vec<Permutation> = Vec::new();
        for _ in 0..k {
            let centralizer: Vec<&Permutation> = perms
                .iter()
                .filter(|p| gens.iter().all(|g| g.commutes_with(p)))
                .collect();
            gens.push((*centralizer.choose(rng).unwrap()).clone());
        }
        let named = gens
            .into_iter()
            .enumerate()
            .map(|(i, p)| (format!("g{i}"), p))
            .collect();
        let options = GroupOptions {
            allow_nonabelian: false,
            max_order,
        };
        if let Ok(a) = PermAction::with_options(u(n), named, options) {
            return a;
        }
    }
}

/// Like [`abelian_action`] but with two unconstrained generators, so the
/// group is usually non-abelian.
pub fn any_action(rng: &mut StdRng, n: usize, max_order: usize) -> PermAction {
    let perms = all_perms(n);
    loop {
        let named = (0..rng.gen_range(0..=2))
            .map(|i| (format!("g{i}"), perms.choose(rng).unwrap().clone()))
            .collect();
        let options = GroupOptions {
            allow_nonabelian: true,
            max_order,
        };
        if let Ok(a) = PermAction::with_options(u(n), named, options) {
            return a;
        }
    }
}

/// Random invariant relation on the action's universe: the equality
/// relation, grown by orbit-closed seed pairs and transitive closure. With
/// `antisymmetric`, seeds that would create a cycle are dropped, so the
/// result is an invariant partial order; otherwise an invariant preorder.
pub fn invariant_relation(
    rng: &mut StdRng,
    action: &PermAction,
    seeds: usize,
    antisymmetric: bool,
) -> Relation {
    let n = action.universe().size();
    let mut r = Relation::identity(action.universe().clone());
    for _ in 0..seeds {
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut grown = r.clone();
        for g in action.elements() {
            grown.insert(g.perm.apply(x), g.perm.apply(y));
        }
        let grown = grown.transitive_closure();
        if antisymmetric && !grown.is_antisymmetric() {
            continue;
        }
        r = grown;
    }
    r
}

pub fn invariant_partial_order(rng: &mut StdRng, action: &PermAction) -> Relation {
    let seeds = rng.gen_range(0..=4);
    invariant_relation(rng, action, seeds, true)
}

pub fn invariant_preorder(rng: &mut StdRng, action: &PermAction) -> Relation {
    let seeds = rng.gen_range(0..=4);
    invariant_relation(rng, action, seeds, false)
}

/// Random invariant linear preorder: orbits are tied and the orbits get
/// random levels.
pub fn invariant_linear_preorder(rng: &mut StdRng, action: &PermAction) -> Relation {
    let classes = action.orbits().classes();
    let levels: Vec<usize> = (0..classes.len())
        .map(|_| rng.gen_range(0..classes.len()))
        .collect();
    let mut level_of = vec![0; action.universe().size()];
    for (c, members) in classes.iter().enumerate() {
        for &x in members {
            level_of[x] = levels[c];
        }
    }
    Relation::from_fn(action.universe().clone(), |x, y| level_of[x] <= level_of[y])
}

/// Random relation with each pair present with probability `density`.
pub fn random_relation(rng: &mut StdRng, n: usize, density: f64) -> Relation {
    Relation::from_fn(u(n), |_, _| rng.gen_bool(density))
}

/// Random partial order on `n` points: a random DAG compatible with a
/// shuffled order, transitively and reflexively closed.
pub fn random_partial_order(rng: &mut StdRng, n: usize) -> Relation {
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let density = rng.gen_range(0.0..0.6);
    Relation::from_fn(u(n), |x, y| {
        x == y || (rank[x] < rank[y] && rng.gen_bool(density))
    })
    .transitive_closure()
}

pub fn random_cone(rng: &mut StdRng, k: usize, max_gens: usize, entry: i64) -> ConeOrder {
    loop {
        let m = rng.gen_range(0..=max_gens);
        let gens: Vec<Vec<i64>> = (0..m)
            .map(|_| (0..k).map(|_| rng.gen_range(-entry..=entry)).collect())
            .collect();
        if let Ok(c) = ConeOrder::new(k, gens) {
            return c;
        }
    }
}

pub fn random_vector(rng: &mut StdRng, k: usize, entry: i64) -> Vec<i64> {
    (0..k).map(|_| rng.gen_range(-entry..=entry)).collect()
}
