//! Segre embeddings, their minor systems, the hypercube of contractions and
//! the decomposability classifiers.

mod classify;
mod embed;
mod hypercube;
mod lemma;
mod membership;
pub mod minors;
mod rank;
mod shape;

pub use classify::{
    classify, classify_with, compositions, factorize, factors_over, oracle_classify, spans_from_cuts,
    Classification, Decomposition, DecompositionTree, OracleResult, ORACLE_MAX_QUBITS,
    RESIDUAL_TOL,
};
pub use embed::{generalized_segre_embed, segre_embed};
pub use hypercube::{contract_along, lives_in, Hypercube, HypercubeEdge, HypercubeVertex};
pub use lemma::{
    triple_by_unfoldings, verify_tripartite_lemma, CheckCount, LemmaReport, LEMMA_MINOR_EPSILON,
};
pub use membership::{member_by_rank, membership, Membership};
pub use minors::{enumerate_minors, minor_count, minor_value, worst_minor, MinorIndex};
pub use rank::{fix_phase, kron_all, rank_one_split, RankOneSplit, DEFAULT_RANK_EPSILON};
pub use shape::{qubit_space_dim, SegreShape};
