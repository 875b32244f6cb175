//! Hall partitions and alldifferent kernels of set-valued mappings.
//!
//! For a set-valued mapping `F: X -> 2^Y` between finite sets, the
//! alldifferent kernel `F*` keeps exactly those pairs `(x, y)` that occur in
//! some injective selection of `F`. This crate computes `F*` through the Hall
//! partition of `F`, an ordered chain of minimal critical sets found by an
//! exhaustive calculation method, and ships a brute-force [`oracle`] that
//! checks every result from first principles.
//!
//! ```
//! use alldiff_kernel::{alldifferent_kernel, FiniteMapping};
//!
//! let f = FiniteMapping::from_pairs(&[
//!     ("a", &["1", "2"][..]),
//!     ("b", &["1", "2"]),
//!     ("c", &["1", "2", "3"]),
//! ])?;
//! let k = alldifferent_kernel(&f)?;
//! assert_eq!(f.format_y_set(k.image(2)), "{3}");
//! # Ok::<(), alldiff_kernel::Error>(())
//! ```
//!
//! The [`sudoku`] module applies the kernel to the 27 units of a Sudoku grid.

pub mod cli;
pub mod error;
pub mod format;
pub mod kernel;
pub mod mapping;
pub mod oracle;
pub mod partition;
pub mod subset;
pub mod sudoku;

pub use error::{Error, Result};
pub use kernel::{
    alldifferent_kernel, extract_selection, extract_selection_with, has_unique_selection,
    is_alldifferent, kernel_from_partition, punctured_mapping, KernelMapping, LeastIndex, Picker,
    Selection,
};
pub use mapping::{FiniteMapping, SUBSET_ENUMERATION_CAP};
pub use partition::{
    check_hall, compute_hall_partition, compute_hall_partition_with,
    partitions_equal_up_to_renumbering, verify_partition, ExitKind, HallOutcome, HallPartition,
    HallViolation, MethodOptions,
};
pub use subset::{XSubset, YSubset};
