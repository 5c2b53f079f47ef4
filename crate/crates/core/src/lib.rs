//! Diagram marching and Grothendieck-polynomial expansions for truncation
//! Schubert problems.

pub mod calculus;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod expansion;
pub mod fixtures;
pub mod grothendieck;
pub mod perm;
pub mod poly;
pub mod tree;

pub use error::{Error, Result};
pub use expansion::ExpansionMap;
pub use perm::{LehmerCode, Permutation};
pub use poly::{Monomial, Polynomial};
pub use tree::{MarchNode, MarchTree, Mode, TreeBuilder};
