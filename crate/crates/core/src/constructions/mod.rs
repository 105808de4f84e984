//! Constructive procedures producing cliques and anticliques.

mod anticlique;
mod blocks;
mod diagonal;
mod graph;
mod twoclique;

pub use anticlique::{anticlique_lowdim, ANTICLIQUE_RESTARTS};
pub use blocks::{blocks2_clique, blocks2_sizes, blocks_clique, BlockHypothesisInput, BLOCKS_SAMPLE_BUDGET};
pub use diagonal::{diagonal_clique, diagonal_clique_at, gram, gramian_completion, rank1_spanning_vectors, DiagonalClique};
pub use graph::{diagonal_system, graph_operator_system, rowcolumn_system, SimpleGraph};
pub use twoclique::{
    rank2_separator, threedim_clique, two_clique, SEPARATOR_SAMPLES, SEPARATOR_STEPS, THREEDIM_RETRIES,
    TWO_CLIQUE_RETRIES,
};
