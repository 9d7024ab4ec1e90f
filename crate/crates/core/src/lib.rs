//! Pre-hypergroups of pointed graphs: structure constants from random
//! jumps between distance spheres, symmetry conditions, m-fold products,
//! distance walks and transition-matrix realizations.

pub mod catalog;
pub mod cayley;
pub mod error;
pub mod graph;
pub mod hypergroup;
pub mod matrix;
pub mod rational;
pub mod regression;
pub mod search;
pub mod walks;

pub use catalog::{catalog, catalog_with_dir, load_fixture, Fixture};
pub use cayley::{build_cayley, check_s3, realize_full, realize_window, CayleyGraph, CayleyWindow, GroupElement, GroupKind};
pub use error::{ForgeError, Result};
pub use graph::{build_graph, AssumptionReport, CheckOutcome, Graph, GraphFile, IndexSet, MaxIndex, PointedGraph, Vertex, WindowKind};
pub use rational::Rational;
pub use hypergroup::{
    build_table, check_distance_regular, check_s1, check_s2, classify, product, q_to_p, structure_constant,
    ClassificationReport, IntersectionTable, ProbabilityVector, StructureTable, Verdict,
};
pub use walks::{
    brute_force_conditional, joint_distance_law, jump_distribution, left_nested_product, markov_check,
    monte_carlo_conditional, EmpiricalDistribution, JointLaw, JumpPattern, WalkDistribution,
};
pub use matrix::{
    commute_check, irreducibility, norm_bounds, stationary_check, transition_matrix, uniform_norm_bound,
    verify_maincoro, verify_regular_representation, NormBound, RationalMatrix, TransitionMatrix,
};
pub use search::{search_conjecture, BasePolicy, SearchRecord, SearchReport};
pub use regression::{paper_regression, RegressionEntry, RegressionReport};
