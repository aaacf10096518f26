//! Constructive procedures: separation witnesses, the tree-group A/B sets,
//! subgroup extraction, avoidance sets and symmetric sets.

pub mod avoidance;
pub mod ex1;
pub mod separation;
pub mod subgroup;
pub mod symmetric;

pub use avoidance::{find_avoiders, p1_y_member, AvoidanceContext, SubgroupDesc};
pub use ex1::{build_ab_pairs, ex1_witness, lr_classify, lr_classify_letters, verify_ex1, ABPairs, Ex1Report, LrClass};
pub use separation::{separation_witness, separation_witness_generic};
pub use subgroup::{t2_abelian_h, t2_free_h, IndexSet};
pub use symmetric::{set_power, symmetric_set_build, symmetric_set_build_generic, SymmetricSetState};
