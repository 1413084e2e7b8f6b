//! Certifying solver for the k-in-a-tree problem on graphs of girth at
//! least k (k >= 5): given k terminal vertices, either find an induced tree
//! containing all of them, or return a structure that proves none exists.

pub mod certificates;
pub mod cli;
pub mod diagnostics;
pub mod graph;
pub mod linker;
pub mod oracle;
pub mod solver;
