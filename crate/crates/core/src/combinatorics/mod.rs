//! Partitions, permutations on plain and hatted label sets, perfect
//! matchings, cosettypes and the hyperoctahedral group.

mod matching;
mod partition;
mod permutation;

pub use matching::{
    coset_representative, hyperoctahedral_elements, matchings, Matching,
    DEFAULT_HYPEROCTAHEDRAL_BOUND,
};
pub(crate) use matching::{hyperoctahedral_images, union_cycle_count};
pub use partition::{
    double_factorial_odd, factorial, hyperoctahedral_order, partitions, Partition,
};
pub(crate) use permutation::{cycletype_of, standard_images};
pub use permutation::{Domain, Label, LabelStyle, Permutation};
