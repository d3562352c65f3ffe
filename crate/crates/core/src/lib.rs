//! Schubert polynomials, forest polynomials, and the bridge between them.
//!
//! Schubert polynomials are computed as weight generating functions of reduced
//! pipe dreams, enumerated from the bottom pipe dream by ladder moves. Forest
//! polynomials are computed from valid labelings of binary indexed forests. The
//! [`correspondence`] module matches crossings of the bottom pipe dream with
//! forest vertices, slides crossings to realize a labeling as a pipe dream, and
//! searches for the parent/right-child pairs that stop the two polynomials from
//! agreeing.
//!
//! ```
//! use forestry::{schubert, forest_polynomial, IndexedForest, Permutation};
//!
//! let w: Permutation = "4132".parse().unwrap();
//! let forest = IndexedForest::from_code(&w.lehmer_code());
//! assert_eq!(schubert(&w), forest_polynomial(&forest));
//! assert_eq!(schubert(&w).to_string(), "x1^3*x2 + x1^3*x3");
//! ```

pub mod correspondence;
pub mod error;
pub mod forest;
pub mod permutation;
pub mod pipedream;
pub mod polynomial;

pub use correspondence::{
    all_bad_pairs, covering_relation, find_bad_pair, find_bad_pair_with, is_forest_by_expansion, is_forest_by_pattern,
    psi, psi_with, verify_theorem, verify_theorem_with_progress, BadPair, BadPairMismatch, Correspondence,
    Disagreement, SlideOrder, TheoremReport, VerifyConfig, Violation,
};
pub use error::{Error, Result};
pub use forest::{forest_polynomial, ForestLabeling, IndexedForest, Side, Vertex, VertexId};
pub use permutation::{LehmerCode, Permutation, FORBIDDEN_PATTERNS};
pub use pipedream::{
    all_pipe_dreams, bottom_pipe_dream, permutation_of, permutation_of_with, render_grid, schubert, schubert_divdiff,
    simple_closure, Cell, Crossing, CrossingId, PipeDream, ReadingOrder,
};
pub use polynomial::{Monomial, Polynomial};
