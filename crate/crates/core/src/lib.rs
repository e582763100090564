//! Invariant extensions of orders under abelian group actions.
//!
//! A finite universe carries a relation `≤` and an abelian permutation group
//! `G`. The crate decides orbit equivalence `~G` and the invariant preorder
//! `≤G`, builds `G`-invariant linear extensions with certificates when one
//! is refused, and does the same for translation-invariant cone orders on
//! `Z^k`.

pub mod action;
pub mod extension;
pub mod io;
pub mod lattice;
pub mod oracles;
pub mod relation;

pub use action::{
    ActionError, EquivalenceClasses, FiniteOrbitWitness, Generator, GroupElem, GroupOptions,
    PermAction, Permutation,
};
pub use extension::{
    extend_step, intersection_of_invariant_extensions, invariant_linear_extension,
    invariant_linear_preorder_extension, is_strongly_invariant, leq_g, leq_g_witness,
    powerset_preorder, strong_invariance_violation, ExtensionError, PowersetOrder,
    PreorderExtension, SemigroupWitness, StrongInvarianceViolation,
};
pub use relation::{
    InvarianceViolation, Relation, RelationClass, RelationError, RelationKind, Universe,
};
