//! Binary relations over a finite universe, stored as dense boolean matrices.
//!
//! A [`Relation`] is the single carrier for every order-like object in this
//! crate: partial orders, preorders, the orbit equivalence, closures and
//! their linear extensions. Entry `(i, j)` reads "`i ≤ j`".

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::action::PermAction;

/// Universe size cap for relations read from user input.
pub const DEFAULT_RELATION_CAP: usize = 16;
/// Universe size cap for exhaustive linear-extension enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("universe must contain at least one element")]
    EmptyUniverse,
    #[error("expected {expected} labels, got {found}")]
    LabelCount { expected: usize, found: usize },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("index {index} out of range for universe of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("universes differ (sizes {left} and {right})")]
    UniverseMismatch { left: usize, right: usize },
    #[error("relation is not a partial order")]
    NotPartialOrder,
    #[error("relation is not a preorder")]
    NotPreorder,
    #[error("relation is not an equivalence")]
    NotEquivalence,
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
}

/// The finite set a relation or an action lives on.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    labels: Vec<String>,
    default_labels: bool,
}

impl Universe {
    /// Universe `{0, .., n-1}` labelled by its indices.
    pub fn new(size: usize) -> Result<Self, RelationError> {
        if size == 0 {
            return Err(RelationError::EmptyUniverse);
        }
        Ok(Universe {
            labels: (0..size).map(|i| i.to_string()).collect(),
            default_labels: true,
        })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self, RelationError> {
        if labels.is_empty() {
            return Err(RelationError::EmptyUniverse);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(RelationError::DuplicateLabel(l.clone()));
            }
        }
        let default_labels = labels.iter().enumerate().all(|(i, l)| *l == i.to_string());
        Ok(Universe {
            labels,
            default_labels,
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// True when every label is just the element's index.
    pub fn has_default_labels(&self) -> bool {
        self.default_labels
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<(), RelationError> {
        if index < self.size() {
            Ok(())
        } else {
            Err(RelationError::IndexOutOfRange {
                index,
                size: self.size(),
            })
        }
    }

    pub(crate) fn check_same(&self, other: &Universe) -> Result<(), RelationError> {
        if self.size() == other.size() {
            Ok(())
        } else {
            Err(RelationError::UniverseMismatch {
                left: self.size(),
                right: other.size(),
            })
        }
    }
}

/// Which of the order axioms a relation satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RelationClass {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub antisymmetric: bool,
    pub total: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Raw,
    Preorder,
    PartialOrder,
    LinearPreorder,
    LinearOrder,
    Equivalence,
}

impl RelationKind {
    pub fn name(self) -> &'static str {
        match self {
            RelationKind::Raw => "raw",
            RelationKind::Preorder => "preorder",
            RelationKind::PartialOrder => "partial-order",
            RelationKind::LinearPreorder => "linear-preorder",
            RelationKind::LinearOrder => "linear-order",
            RelationKind::Equivalence => "equivalence",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl RelationClass {
    pub fn is_preorder(&self) -> bool {
        self.reflexive && self.transitive
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_preorder() && self.antisymmetric
    }

    pub fn is_linear_preorder(&self) -> bool {
        self.is_preorder() && self.total
    }

    pub fn is_linear_order(&self) -> bool {
        self.is_partial_order() && self.total
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_preorder() && self.symmetric
    }

    /// Every kind whose defining flags all hold, most specific first.
    pub fn kinds(&self) -> Vec<RelationKind> {
        let mut kinds = Vec::new();
        if self.is_linear_order() {
            kinds.push(RelationKind::LinearOrder);
        }
        if self.is_equivalence() {
            kinds.push(RelationKind::Equivalence);
        }
        if self.is_linear_preorder() {
            kinds.push(RelationKind::LinearPreorder);
        }
        if self.is_partial_order() {
            kinds.push(RelationKind::PartialOrder);
        }
        if self.is_preorder() {
            kinds.push(RelationKind::Preorder);
        }
        if kinds.is_empty() {
            kinds.push(RelationKind::Raw);
        }
        kinds
    }

    pub fn kind(&self) -> RelationKind {
        self.kinds()[0]
    }
}

/// First pair `(x, y)` and generator index `g` for which `x R y` and
/// `gx R gy` disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceViolation {
    pub generator: usize,
    pub x: usize,
    pub y: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    universe: Universe,
    bits: Vec<bool>,
}

impl Relation {
    pub fn empty(universe: Universe) -> Self {
        let n = universe.size();
        Relation {
            universe,
            bits: vec![false; n * n],
        }
    }

    /// The equality relation.
    pub fn identity(universe: Universe) -> Self {
        let mut r = Relation::empty(universe);
        let n = r.size();
        for i in 0..n {
            r.bits[i * n + i] = true;
        }
        r
    }

    pub fn full(universe: Universe) -> Self {
        let n = universe.size();
        Relation {
            universe,
            bits: vec![true; n * n],
        }
    }

    pub fn from_pairs(
        universe: Universe,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, RelationError> {
        let mut r = Relation::empty(universe);
        for (i, j) in pairs {
            r.universe.check_index(i)?;
            r.universe.check_index(j)?;
            r.insert(i, j);
        }
        Ok(r)
    }

    pub fn from_fn(universe: Universe, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let n = universe.size();
        let mut bits = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                bits.push(f(i, j));
            }
        }
        Relation { universe, bits }
    }

    /// The linear order listing `chain` from smallest to largest.
    ///
    /// `chain` must be a permutation of the universe.
    pub fn from_chain(universe: Universe, chain: &[usize]) -> Result<Self, RelationError> {
        let n = universe.size();
        let mut rank = vec![usize::MAX; n];
        for (pos, &x) in chain.iter().enumerate() {
            universe.check_index(x)?;
            rank[x] = pos;
        }
        if chain.len() != n || rank.contains(&usize::MAX) {
            return Err(RelationError::NotPartialOrder);
        }
        Ok(Relation::from_fn(universe, |i, j| rank[i] <= rank[j]))
    }

    /// The linear preorder whose equivalence classes are `levels`, listed
    /// from lowest to highest. Every element must appear exactly once.
    pub fn from_levels(universe: Universe, levels: &[Vec<usize>]) -> Result<Self, RelationError> {
        let n = universe.size();
        let mut rank = vec![usize::MAX; n];
        for (pos, level) in levels.iter().enumerate() {
            for &x in level {
                universe.check_index(x)?;
                if rank[x] != usize::MAX {
                    return Err(RelationError::NotPreorder);
                }
                rank[x] = pos;
            }
        }
        if rank.contains(&usize::MAX) {
            return Err(RelationError::NotPreorder);
        }
        Ok(Relation::from_fn(universe, |i, j| rank[i] <= rank[j]))
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn size(&self) -> usize {
        self.universe.size()
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.size() + j]
    }

    #[inline]
    pub fn insert(&mut self, i: usize, j: usize) {
        let n = self.size();
        self.bits[i * n + j] = true;
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        let n = self.size();
        self.bits[i * n + j] = false;
    }

    /// All pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.size();
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(move |(k, _)| (k / n, k % n))
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    /// `self ⊇ other`.
    pub fn extends(&self, other: &Relation) -> bool {
        self.size() == other.size() && other.pairs().all(|(i, j)| self.contains(i, j))
    }

    pub fn intersection(&self, other: &Relation) -> Result<Relation, RelationError> {
        self.universe.check_same(&other.universe)?;
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| *a && *b)
            .collect();
        Ok(Relation {
            universe: self.universe.clone(),
            bits,
        })
    }

    pub fn union(&self, other: &Relation) -> Result<Relation, RelationError> {
        self.universe.check_same(&other.universe)?;
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| *a || *b)
            .collect();
        Ok(Relation {
            universe: self.universe.clone(),
            bits,
        })
    }

    pub fn reflexive_closure(&self) -> Relation {
        let mut r = self.clone();
        for i in 0..r.size() {
            r.insert(i, i);
        }
        r
    }

    /// Smallest transitive superset (Warshall).
    pub fn transitive_closure(&self) -> Relation {
        let n = self.size();
        let mut r = self.clone();
        for k in 0..n {
            for i in 0..n {
                if !r.bits[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if r.bits[k * n + j] {
                        r.bits[i * n + j] = true;
                    }
                }
            }
        }
        r
    }

    /// `x < y` iff `x ≤ y` and not `y ≤ x`.
    pub fn strict_part(&self) -> Relation {
        let mut r = Relation::empty(self.universe.clone());
        for (i, j) in self.pairs() {
            if !self.contains(j, i) {
                r.insert(i, j);
            }
        }
        r
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.size()).all(|i| self.contains(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(i, j)| self.contains(j, i))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.pairs().all(|(i, j)| i == j || !self.contains(j, i))
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                if !self.contains(i, j) {
                    continue;
                }
                for k in 0..n {
                    if self.contains(j, k) && !self.contains(i, k) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_total(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.contains(i, j) || self.contains(j, i)))
    }

    pub fn classify(&self) -> RelationClass {
        RelationClass {
            reflexive: self.is_reflexive(),
            symmetric: self.is_symmetric(),
            transitive: self.is_transitive(),
            antisymmetric: self.is_antisymmetric(),
            total: self.is_total(),
        }
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_preorder() && self.is_antisymmetric()
    }

    pub fn ensure_partial_order(&self) -> Result<(), RelationError> {
        if self.is_partial_order() {
            Ok(())
        } else {
            Err(RelationError::NotPartialOrder)
        }
    }

    pub fn ensure_preorder(&self) -> Result<(), RelationError> {
        if self.is_preorder() {
            Ok(())
        } else {
            Err(RelationError::NotPreorder)
        }
    }

    /// Checks `x R y ⇔ gx R gy` for every generator of `action`.
    ///
    /// Generators suffice: if each generator preserves `R` in both directions
    /// then so do compositions and inverses, and those exhaust the group.
    pub fn invariance_violation(
        &self,
        action: &PermAction,
    ) -> Result<Option<InvarianceViolation>, RelationError> {
        self.universe.check_same(action.universe())?;
        for (gi, g) in action.generators().iter().enumerate() {
            if let Some((x, y)) = self.first_disagreement(|x| g.perm.apply(x)) {
                return Ok(Some(InvarianceViolation {
                    generator: gi,
                    x,
                    y,
                }));
            }
        }
        Ok(None)
    }

    pub fn is_invariant(&self, action: &PermAction) -> Result<bool, RelationError> {
        Ok(self.invariance_violation(action)?.is_none())
    }

    /// Invariance checked over every group element instead of the generators.
    /// `generator` in the returned witness is the element index.
    pub fn invariance_violation_over_group(
        &self,
        action: &PermAction,
    ) -> Result<Option<InvarianceViolation>, RelationError> {
        self.universe.check_same(action.universe())?;
        for (gi, g) in action.elements().iter().enumerate() {
            if let Some((x, y)) = self.first_disagreement(|x| g.perm.apply(x)) {
                return Ok(Some(InvarianceViolation {
                    generator: gi,
                    x,
                    y,
                }));
            }
        }
        Ok(None)
    }

    fn first_disagreement(&self, g: impl Fn(usize) -> usize) -> Option<(usize, usize)> {
        let n = self.size();
        for x in 0..n {
            for y in 0..n {
                if self.contains(x, y) != self.contains(g(x), g(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Szpilrajn extension by repeatedly removing the smallest-index minimal
    /// element.
    pub fn topo_linear_extension(&self) -> Result<Relation, RelationError> {
        self.ensure_partial_order()?;
        let n = self.size();
        let mut placed = vec![false; n];
        let mut chain = Vec::with_capacity(n);
        while chain.len() < n {
            let next = (0..n)
                .find(|&c| {
                    !placed[c] && (0..n).all(|p| p == c || placed[p] || !self.contains(p, c))
                })
                .expect("a finite partial order always has a minimal element");
            placed[next] = true;
            chain.push(next);
        }
        Relation::from_chain(self.universe.clone(), &chain)
    }

    /// Every linear order extending `self`, optionally restricted to those
    /// invariant under `invariant_under`.
    pub fn linear_extensions<'a>(
        &'a self,
        invariant_under: Option<&'a PermAction>,
    ) -> Result<LinearExtensions<'a>, RelationError> {
        self.linear_extensions_capped(invariant_under, DEFAULT_ENUMERATION_CAP)
    }

    pub fn linear_extensions_capped<'a>(
        &'a self,
        invariant_under: Option<&'a PermAction>,
        cap: usize,
    ) -> Result<LinearExtensions<'a>, RelationError> {
        self.ensure_partial_order()?;
        if self.size() > cap {
            return Err(RelationError::CapExceeded {
                what: "linear extension enumeration",
                size: self.size(),
                cap,
            });
        }
        if let Some(a) = invariant_under {
            self.universe.check_same(a.universe())?;
        }
        Ok(LinearExtensions {
            order: self,
            filter: invariant_under,
            prefix: Vec::with_capacity(self.size()),
            placed: vec![false; self.size()],
            cursor: vec![0],
            done: false,
        })
    }

    /// Classes of mutual comparability (`x ≤ y` and `y ≤ x`), as a
    /// representative map. Only meaningful for preorders.
    pub fn mutual_classes(&self) -> Vec<usize> {
        let n = self.size();
        (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| self.contains(x, y) && self.contains(y, x))
                    .unwrap_or(x)
            })
            .collect()
    }

    /// Covering pairs of the strict part: `x < y` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let strict = self.strict_part();
        let n = self.size();
        strict
            .pairs()
            .filter(|&(x, y)| !(0..n).any(|z| strict.contains(x, z) && strict.contains(z, y)))
            .collect()
    }

    /// Graphviz rendering of the Hasse diagram. Requires a preorder; tied
    /// elements share one node named after the smallest member.
    pub fn to_dot(&self) -> Result<String, RelationError> {
        self.ensure_preorder()?;
        let reps = self.mutual_classes();
        let n = self.size();
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for r in (0..n).filter(|&x| reps[x] == x) {
            let label = (0..n)
                .filter(|&x| reps[x] == r)
                .map(|x| self.universe.label(x))
                .collect::<Vec<_>>()
                .join("~");
            let _ = writeln!(out, "  n{r} [label={label:?}];");
        }
        for (x, y) in self.hasse_edges() {
            if reps[x] == x && reps[y] == y {
                let _ = writeln!(out, "  n{x} -> n{y};");
            }
        }
        out.push_str("}\n");
        Ok(out)
    }

    /// Human-readable chain such as `∅ < {0}~{1} < {0,1}` for linear
    /// preorders; for other preorders the covering pairs between classes,
    /// comma-separated.
    pub fn summary(&self) -> String {
        let reps = self.mutual_classes();
        let n = self.size();
        let class_label = |rep: usize| -> String {
            (0..n)
                .filter(|&x| reps[x] == rep)
                .map(|x| self.universe.label(x))
                .collect::<Vec<_>>()
                .join("~")
        };
        let mut class_reps: Vec<usize> = (0..n).filter(|&x| reps[x] == x).collect();
        if self.is_preorder() && self.is_total() {
            // number of elements below a class orders the chain
            class_reps.sort_by_key(|&r| (0..n).filter(|&y| self.contains(y, r)).count());
            return class_reps
                .into_iter()
                .map(class_label)
                .collect::<Vec<_>>()
                .join(" < ");
        }
        let strict = self.strict_part();
        let mut parts = Vec::new();
        let mut touched = BTreeSet::new();
        for &a in &class_reps {
            for &b in &class_reps {
                if strict.contains(a, b)
                    && !class_reps
                        .iter()
                        .any(|&c| strict.contains(a, c) && strict.contains(c, b))
                {
                    parts.push(format!("{} < {}", class_label(a), class_label(b)));
                    touched.insert(a);
                    touched.insert(b);
                }
            }
        }
        for &a in &class_reps {
            if !touched.contains(&a) {
                parts.push(class_label(a));
            }
        }
        parts.join(", ")
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size() {
            for j in 0..self.size() {
                f.write_char(if self.contains(i, j) { '1' } else { '.' })?;
            }
            f.write_char('\n')?;
        }
        Ok(())
    }
}

/// Backtracking enumeration of linear extensions, smallest labels first.
pub struct LinearExtensions<'a> {
    order: &'a Relation,
    filter: Option<&'a PermAction>,
    prefix: Vec<usize>,
    placed: Vec<bool>,
    // next candidate to try at each depth; len == prefix.len() + 1
    cursor: Vec<usize>,
    done: bool,
}

impl LinearExtensions<'_> {
    fn available(&self, c: usize) -> bool {
        let n = self.order.size();
        !self.placed[c] && (0..n).all(|p| p == c || self.placed[p] || !self.order.contains(p, c))
    }

    fn pop(&mut self) {
        self.cursor.pop();
        if let Some(c) = self.prefix.pop() {
            self.placed[c] = false;
        }
    }
}

impl Iterator for LinearExtensions<'_> {
    type Item = Relation;

    fn next(&mut self) -> Option<Relation> {
        let n = self.order.size();
        while !self.done {
            if self.prefix.len() == n {
                let ext = Relation::from_chain(self.order.universe.clone(), &self.prefix)
                    .expect("prefix is a permutation");
                self.pop();
                let keep = match self.filter {
                    Some(a) => ext.is_invariant(a).unwrap_or(false),
                    None => true,
                };
                if keep {
                    return Some(ext);
                }
                continue;
            }
            let depth = self.prefix.len();
            let start = self.cursor[depth];
            match (start..n).find(|&c| self.available(c)) {
                Some(c) => {
                    self.cursor[depth] = c + 1;
                    self.prefix.push(c);
                    self.placed[c] = true;
                    self.cursor.push(0);
                }
                None if depth == 0 => self.done = true,
                None => self.pop(),
            }
        }
        None
    }
}
