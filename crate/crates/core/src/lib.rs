//! Okada algebras and monoids realized on height-labeled non-crossing arc
//! diagrams, together with the Young-Fibonacci combinatorics that index
//! their representations.

pub mod algebra;
pub mod arc;
pub mod cellular;
pub mod dominance;
pub mod error;
pub mod fibonacci;
pub mod half;
pub mod heap;
pub mod monoid;
pub mod perm;
pub mod poly;
pub mod render;
pub mod rewrite;
pub mod theta;

pub use algebra::{free_element, free_involution, ideal_basis, triangular_factorization, AlgebraElement};
pub use arc::{Arc, ArcDiagram, Endpoint, LoopRecord};
pub use error::{Error, Result};
pub use fibonacci::{Chain, FibonacciSet, FibonacciWord};
pub use half::{glue, HalfArcDiagram};
pub use perm::Permutation;
pub use poly::{Monomial, Polynomial, Var};
pub use theta::{diagram_to_perm, evaluate_word, perm_to_diagram, rs, rs_inverse};
pub use rewrite::{multiply_words, normalize, NormalizationResult, Word};
