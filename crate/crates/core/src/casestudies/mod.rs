//! The four case studies: transitive closure, vertex colouring, cycle
//! detection and series-parallel recognition, with oracles and generators to
//! check them against.

mod corpus;
mod gen;
pub mod harness;
mod metrics;
mod oracles;
mod sp;

pub use corpus::{with_main, Case, CorpusInput, Expected};
pub use gen::{all_digraphs, all_digraphs_upto, random_dag, random_graph};
pub use metrics::{colour, colour_sum, colours_set, nonedge_count};
pub use oracles::{check_colouring, oracle_is_cyclic, oracle_transitive_closure};
pub use sp::{gen_series_parallel, normal_forms, SPTerm};
