//! Recognition of Robinson dissimilarities in `O(n²)`.
//!
//! A dissimilarity is Robinson when some order of its points makes every
//! row of the matrix nondecreasing away from the diagonal. [`recognize`]
//! finds such an order or reports why none was found.
//!
//! ```
//! use robinson::{recognize, DissimilaritySpace};
//!
//! let space = DissimilaritySpace::from_rows(&[[0, 3, 1], [3, 0, 2], [1, 2, 0]]).unwrap();
//! let order = recognize(&space).order().cloned().unwrap();
//! assert!(space.is_robinson_order(&order));
//! ```

// Matrix code reads better with explicit row and column indices.
#![allow(clippy::needless_range_loop)]

pub mod bipartition;
pub mod conical;
pub mod format;
pub mod mmodules;
pub mod recognizer;
pub mod refinement;
pub mod rng;
pub mod space;
pub mod testkit;

pub use bipartition::{sort_by_bipartition, tangled_components, Side, SideAssignment};
pub use conical::{classify_copoint, separate_if_separable, CopointClass, RepresentedBlock, Separation};
pub use format::{parse_matrix, write_matrix, ParseError};
pub use mmodules::{mmodule_tree, MModuleTree};
pub use recognizer::{find_compatible_order, recognize, RecognitionResult, Witness};
pub use refinement::{copoint_partition, refine, CopointDecomposition, OrderedPartition};
pub use space::{DissimilaritySpace, Order, PointId, Row, SpaceError, SubsetView, Value, Violation};
