//! Finite group actions presented by generator permutations.
//!
//! A group is represented by its image in the symmetric group of the
//! universe. Everything downstream (orbit equivalence, the `≤G` closure,
//! invariance) depends only on how elements act, so the image is all we keep.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::relation::{Relation, RelationError, Universe};

/// Cap on the order of a generated group.
pub const DEFAULT_GROUP_CAP: usize = 4096;
/// Cap on the base size for powerset actions (2^5 = 32 subsets).
pub const DEFAULT_POWERSET_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error("generator {name:?} is not a bijection on {size} points")]
    NotBijection { name: String, size: usize },
    #[error("generator {name:?} has length {found}, universe has size {expected}")]
    WrongLength {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("generators {left:?} and {right:?} do not commute")]
    NonCommuting { left: String, right: String },
    #[error("group order exceeds cap {cap}")]
    GroupTooLarge { cap: usize },
    #[error("generator {generator:?} splits class of {element} across classes")]
    NotWellDefined { generator: String, element: usize },
    #[error("powerset of {size} points exceeds cap {cap}")]
    PowersetTooLarge { size: usize, cap: usize },
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// A bijection on `{0, .., n-1}`; `map[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    /// Returns `None` unless `map` is a bijection.
    pub fn from_map(map: Vec<usize>) -> Option<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &x in &map {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Permutation { map })
    }

    /// Builds a permutation of `n` points from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut map: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= n || std::mem::replace(&mut touched[x], true) {
                    return None;
                }
                map[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Some(Permutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            map: other.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { map: inv }
    }

    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.len());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Least `k ≥ 1` with `self^k = e`.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut p = self.clone();
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.compose(other) == other.compose(self)
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.map[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.map[x];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("e");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub perm: Permutation,
}

/// A group element together with a word over the generators producing it.
///
/// `word = [i, j, k]` stands for `gens[i] ∘ gens[j] ∘ gens[k]`. Equality of
/// elements is decided on `perm` alone.
#[derive(Debug, Clone)]
pub struct GroupElem {
    pub perm: Permutation,
    pub word: Vec<usize>,
}

impl GroupElem {
    /// Multiplicity of each generator in the word.
    pub fn exponents(&self, num_generators: usize) -> Vec<usize> {
        let mut e = vec![0; num_generators];
        for &g in &self.word {
            e[g] += 1;
        }
        e
    }

    pub fn evaluate_word(&self, generators: &[Generator]) -> Permutation {
        let n = self.perm.len();
        self.word
            .iter()
            .rev()
            .fold(Permutation::identity(n), |acc, &g| {
                generators[g].perm.compose(&acc)
            })
    }
}

impl PartialEq for GroupElem {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl Eq for GroupElem {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupOptions {
    pub allow_nonabelian: bool,
    pub max_order: usize,
}

impl Default for GroupOptions {
    fn default() -> Self {
        GroupOptions {
            allow_nonabelian: false,
            max_order: DEFAULT_GROUP_CAP,
        }
    }
}

/// An element of the group with an orbit of size greater than one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrbitWitness {
    pub element: usize,
    pub orbit: Vec<usize>,
}

/// Partition of a universe, stored as a map to smallest-index representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceClasses {
    universe: Universe,
    reps: Vec<usize>,
}

impl EquivalenceClasses {
    /// Returns `None` unless `reps[x]` is the smallest member of an
    /// idempotent partition map.
    pub fn from_representatives(universe: Universe, reps: Vec<usize>) -> Option<Self> {
        if reps.len() != universe.size() {
            return None;
        }
        for (x, &r) in reps.iter().enumerate() {
            if r > x || reps.get(r) != Some(&r) {
                return None;
            }
        }
        Some(EquivalenceClasses { universe, reps })
    }

    /// Classes of an equivalence relation.
    pub fn from_relation(r: &Relation) -> Result<Self, RelationError> {
        if !r.classify().is_equivalence() {
            return Err(RelationError::NotEquivalence);
        }
        Ok(EquivalenceClasses {
            universe: r.universe().clone(),
            reps: r.mutual_classes(),
        })
    }

    /// Classes of mutual comparability of a preorder.
    pub fn of_preorder(r: &Relation) -> Result<Self, RelationError> {
        r.ensure_preorder()?;
        Ok(EquivalenceClasses {
            universe: r.universe().clone(),
            reps: r.mutual_classes(),
        })
    }

    pub fn discrete(universe: Universe) -> Self {
        let reps = (0..universe.size()).collect();
        EquivalenceClasses { universe, reps }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn representative(&self, x: usize) -> usize {
        self.reps[x]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    /// Classes in order of their representatives.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.reps.len()];
        for (x, &r) in self.reps.iter().enumerate() {
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }

    pub fn num_classes(&self) -> usize {
        self.reps
            .iter()
            .enumerate()
            .filter(|(x, r)| x == *r)
            .count()
    }

    /// Index of the class containing `x` in [`classes`](Self::classes) order.
    pub fn class_index(&self) -> Vec<usize> {
        let mut idx = vec![usize::MAX; self.reps.len()];
        let mut next = 0;
        for x in 0..self.reps.len() {
            let r = self.reps[x];
            if idx[r] == usize::MAX {
                idx[r] = next;
                next += 1;
            }
            idx[x] = idx[r];
        }
        idx
    }

    pub fn to_relation(&self) -> Relation {
        Relation::from_fn(self.universe.clone(), |x, y| self.reps[x] == self.reps[y])
    }

    /// Universe whose points are the classes, labelled `[a,b,..]`.
    pub fn quotient_universe(&self) -> Universe {
        let labels = self
            .classes()
            .iter()
            .map(|c| {
                let members: Vec<&str> = c.iter().map(|&x| self.universe.label(x)).collect();
                format!("[{}]", members.join(","))
            })
            .collect();
        Universe::with_labels(labels).expect("class labels are distinct")
    }
}

#[derive(Debug, Clone)]
pub struct PermAction {
    universe: Universe,
    generators: Vec<Generator>,
    elements: Vec<GroupElem>,
    index: HashMap<Permutation, usize>,
    abelian: bool,
}

impl PermAction {
    /// Abelian action generated by `generators`, with default caps.
    pub fn new(
        universe: Universe,
        generators: Vec<(String, Permutation)>,
    ) -> Result<Self, ActionError> {
        Self::with_options(universe, generators, GroupOptions::default())
    }

    /// Action generated by possibly non-commuting generators.
    pub fn new_nonabelian(
        universe: Universe,
        generators: Vec<(String, Permutation)>,
    ) -> Result<Self, ActionError> {
        Self::with_options(
            universe,
            generators,
            GroupOptions {
                allow_nonabelian: true,
                ..GroupOptions::default()
            },
        )
    }

    pub fn trivial(universe: Universe) -> Self {
        Self::new(universe, Vec::new()).expect("trivial group is always valid")
    }

    /// Closes the generators under composition. Elements are listed in
    /// breadth-first order from the identity, trying generators in order.
    pub fn with_options(
        universe: Universe,
        generators: Vec<(String, Permutation)>,
        options: GroupOptions,
    ) -> Result<Self, ActionError> {
        let n = universe.size();
        let mut gens = Vec::with_capacity(generators.len());
        for (name, perm) in generators {
            if perm.len() != n {
                return Err(ActionError::WrongLength {
                    name,
                    expected: n,
                    found: perm.len(),
                });
            }
            gens.push(Generator { name, perm });
        }
        let mut abelian = true;
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if !a.perm.commutes_with(&b.perm) {
                    if !options.allow_nonabelian {
                        return Err(ActionError::NonCommuting {
                            left: a.name.clone(),
                            right: b.name.clone(),
                        });
                    }
                    abelian = false;
                }
            }
        }

        let identity = Permutation::identity(n);
        let mut elements = vec![GroupElem {
            perm: identity.clone(),
            word: Vec::new(),
        }];
        let mut index = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gi, g) in gens.iter().enumerate() {
                let p = g.perm.compose(&elements[i].perm);
                if index.contains_key(&p) {
                    continue;
                }
                if elements.len() == options.max_order {
                    return Err(ActionError::GroupTooLarge {
                        cap: options.max_order,
                    });
                }
                let mut word = Vec::with_capacity(elements[i].word.len() + 1);
                word.push(gi);
                word.extend_from_slice(&elements[i].word);
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(GroupElem { perm: p, word });
            }
        }

        Ok(PermAction {
            universe,
            generators: gens,
            elements,
            index,
            abelian,
        })
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Group elements; index 0 is the identity.
    pub fn elements(&self) -> &[GroupElem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn element(&self, i: usize) -> &GroupElem {
        &self.elements[i]
    }

    pub fn position(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn multiply(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].perm.compose(&self.elements[b].perm);
        self.index[&p]
    }

    pub fn inverse_of(&self, a: usize) -> usize {
        self.index[&self.elements[a].perm.inverse()]
    }

    /// `g·x` for the element at index `g`.
    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.elements[g].perm.apply(x)
    }

    /// Orbit of `x` under the cyclic group generated by `g`.
    pub fn element_orbit(g: &Permutation, x: usize) -> BTreeSet<usize> {
        let mut orbit = BTreeSet::from([x]);
        let mut y = g.apply(x);
        while y != x {
            orbit.insert(y);
            y = g.apply(y);
        }
        orbit
    }

    /// Partition of the universe into orbits of the whole group.
    pub fn orbits(&self) -> EquivalenceClasses {
        let n = self.universe.size();
        let reps = (0..n)
            .map(|x| {
                self.elements
                    .iter()
                    .map(|g| g.perm.apply(x))
                    .min()
                    .expect("group contains the identity")
            })
            .collect();
        EquivalenceClasses {
            universe: self.universe.clone(),
            reps,
        }
    }

    /// Literal search for an element with an orbit of size greater than one.
    pub fn finite_orbit_witness(&self) -> Option<FiniteOrbitWitness> {
        for (gi, g) in self.elements.iter().enumerate() {
            for x in 0..self.universe.size() {
                let orbit = Self::element_orbit(&g.perm, x);
                if orbit.len() > 1 {
                    return Some(FiniteOrbitWitness {
                        element: gi,
                        orbit: orbit.into_iter().collect(),
                    });
                }
            }
        }
        None
    }

    /// No element has a finite orbit of size greater than one.
    pub fn satisfies_orbit_condition(&self) -> bool {
        self.finite_orbit_witness().is_none()
    }

    /// On a finite universe every orbit is finite, so the orbit condition
    /// holds exactly when the group acts as the identity.
    pub fn acts_trivially(&self) -> bool {
        self.generators.iter().all(|g| g.perm.is_identity())
    }

    /// `x ~ y` iff some `g` has `g·y = x` and `gⁿ·y = y` for some `n ≥ 1`,
    /// evaluated literally for `n` up to the order of `g`.
    pub fn sim_g(&self) -> Relation {
        let n = self.universe.size();
        let mut r = Relation::empty(self.universe.clone());
        for g in &self.elements {
            let ord = g.perm.order();
            for y in 0..n {
                let mut z = y;
                for _ in 1..=ord {
                    z = g.perm.apply(z);
                    if z == y {
                        r.insert(g.perm.apply(y), y);
                        break;
                    }
                }
            }
        }
        r
    }

    /// The action induced on the classes of `classes`, `g[A] = [gA]`.
    ///
    /// Fails unless every generator maps each class into a single class.
    pub fn quotient(&self, classes: &EquivalenceClasses) -> Result<PermAction, ActionError> {
        self.universe.check_same(classes.universe())?;
        let idx = classes.class_index();
        let k = classes.num_classes();
        let mut gens = Vec::with_capacity(self.generators.len());
        for g in &self.generators {
            let mut map = vec![usize::MAX; k];
            for x in 0..self.universe.size() {
                let target = idx[g.perm.apply(x)];
                let slot = &mut map[idx[x]];
                if *slot == usize::MAX {
                    *slot = target;
                } else if *slot != target {
                    return Err(ActionError::NotWellDefined {
                        generator: g.name.clone(),
                        element: x,
                    });
                }
            }
            let perm = Permutation::from_map(map).ok_or_else(|| ActionError::NotWellDefined {
                generator: g.name.clone(),
                element: 0,
            })?;
            gens.push((g.name.clone(), perm));
        }
        PermAction::with_options(
            classes.quotient_universe(),
            gens,
            GroupOptions {
                allow_nonabelian: !self.abelian,
                max_order: DEFAULT_GROUP_CAP,
            },
        )
    }

    pub fn powerset(&self) -> Result<PermAction, ActionError> {
        self.powerset_capped(DEFAULT_POWERSET_CAP)
    }

    /// Elementwise action on all subsets, which are ordered by cardinality
    /// and then by bitmask value.
    pub fn powerset_capped(&self, cap: usize) -> Result<PermAction, ActionError> {
        let n = self.universe.size();
        if n > cap {
            return Err(ActionError::PowersetTooLarge { size: n, cap });
        }
        let masks = subset_masks(n);
        let mut position = vec![0usize; masks.len()];
        for (i, &m) in masks.iter().enumerate() {
            position[m as usize] = i;
        }
        let labels: Vec<String> = masks.iter().map(|&m| self.subset_label(m)).collect();
        let universe = Universe::with_labels(labels)?;
        let gens = self
            .generators
            .iter()
            .map(|g| {
                let map = masks
                    .iter()
                    .map(|&m| {
                        let image = (0..n)
                            .filter(|&x| m >> x & 1 == 1)
                            .fold(0u32, |acc, x| acc | 1 << g.perm.apply(x));
                        position[image as usize]
                    })
                    .collect();
                (
                    g.name.clone(),
                    Permutation::from_map(map).expect("elementwise image is a bijection"),
                )
            })
            .collect();
        PermAction::with_options(
            universe,
            gens,
            GroupOptions {
                allow_nonabelian: !self.abelian,
                max_order: DEFAULT_GROUP_CAP,
            },
        )
    }

    fn subset_label(&self, mask: u32) -> String {
        if mask == 0 {
            return "∅".to_string();
        }
        let members: Vec<&str> = (0..self.universe.size())
            .filter(|&x| mask >> x & 1 == 1)
            .map(|x| self.universe.label(x))
            .collect();
        format!("{{{}}}", members.join(","))
    }
}

/// Bitmasks of all subsets of `n` points, by cardinality then value.
pub fn subset_masks(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks
}

/// Inclusion `A ⊆ B` on the subsets listed by [`subset_masks`].
pub fn subset_inclusion(n: usize, universe: Universe) -> Relation {
    let masks = subset_masks(n);
    Relation::from_fn(universe, |a, b| masks[a] & !masks[b] == 0)
}

/// Exponents `(n₁, n₂, n₃, n₄)` that collapse the four coset witnesses in the
/// orbit-quotient argument: `n₁ = m(n−1)p − n(p+1)`, `n₂ = mp`, `n₃ = np`,
/// `n₄ = n`. Defined for `m, n, p ≥ 3`, where `n₁ ≥ 0`.
pub fn collapse_exponents(m: i64, n: i64, p: i64) -> Option<[i64; 4]> {
    if m < 3 || n < 3 || p < 3 {
        return None;
    }
    Some([m * (n - 1) * p - n * (p + 1), m * p, n * p, n])
}

/// Exponent vectors over `(f, g, h)` of the witnesses
/// `h₁ = fg`, `h₂ = fg^{1−n}`, `h₃ = f^{1−m}gh^{−1}`, `h₄ = fgh^p`.
pub fn collapse_witnesses(m: i64, n: i64, p: i64) -> [[i64; 3]; 4] {
    [[1, 1, 0], [1, 1 - n, 0], [1 - m, 1, -1], [1, 1, p]]
}

/// Exponent vector of `∏ hᵢ^{nᵢ}` in the free abelian group on `(f, g, h)`.
pub fn collapse_product(m: i64, n: i64, p: i64) -> Option<[i64; 3]> {
    let e = collapse_exponents(m, n, p)?;
    let w = collapse_witnesses(m, n, p);
    let mut total = [0i64; 3];
    for (ni, hi) in e.iter().zip(w.iter()) {
        for (t, c) in total.iter_mut().zip(hi) {
            *t += ni * c;
        }
    }
    Some(total)
}
