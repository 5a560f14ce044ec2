pub mod casestudies;
pub mod cli;
pub mod dot;
pub mod graph;
pub mod interp;
pub mod lang;
pub mod rule;
