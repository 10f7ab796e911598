//! Finite groups whose Sylow subgroups are all cyclic: count them by order,
//! enumerate them canonically, construct the i-th one, and identify a given
//! group — presented by metacyclic parameters, a polycyclic presentation, or
//! permutation generators — within the enumeration.
//!
//! Every such group is metacyclic with presentation
//! `x^a = y^b = 1, x^-1 y x = y^r`, where b is odd, gcd(a, b) = 1, r^a = 1
//! mod b and gcd(r - 1, b) = 1. The catalog for an order n is organized by
//! which Sylow subgroups the cyclic part y collects, how large the acting
//! quotient of x is, which prime-power pieces act where (clusters of
//! (p, q, e) triples), and finally which automorphism each piece induces.
//! Counting sums closed-form products over that tree without listing
//! anything; ids are positions in the same tree, so construction and
//! identification are two directions of one walk.
//!
//! Orders are factored once into [`FactoredInt`] and handled in factored
//! form throughout: counts of astronomically large orders work as long as
//! each prime-power part fits in 128 bits.

pub mod arith;
pub mod clusters;
pub mod concrete;
pub mod counting;
pub mod enumerate;
pub mod error;
pub mod identify;
pub mod oracle;
pub mod structure;
pub mod sweep;

pub use arith::FactoredInt;
pub use clusters::{clusters_for, ActionTriple, Cluster};
pub use concrete::{
    descriptor_of_permutation_group, id_of_permutation_group, regular_representation,
    ConcreteOptions, Perm, PermutationGroup,
};
pub use counting::{count_all, count_breakdown, CountBreakdown};
pub use enumerate::{all_groups, group_by_id, AllGroups, GroupId};
pub use error::{Error, Result};
pub use identify::{id_of_descriptor, id_of_metacyclic, is_isomorphic};
pub use oracle::{brute_force_reps, cross_check, CheckStatus, CrossCheckReport};
pub use structure::{
    descriptor_to_metacyclic, descriptor_to_presentation, metacyclic_to_descriptor,
    presentation_to_descriptor, validate_metacyclic, CGroupDescriptor, MetacyclicParams,
    PcPresentation,
};
pub use sweep::{count_range, count_range_squarefree, verify_range};
