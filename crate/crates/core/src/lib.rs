//! Exact enumeration of dispersed Dyck paths and their statistics
//! (1-ascents, 1-descents, valleys on level 0, `UUDD` factors), computed
//! three independent ways: brute-force enumeration, layered-automaton
//! dynamic programming, and closed-form generating functions evaluated as
//! truncated power series with exact rational coefficients.

pub mod automaton;
pub mod closed_forms;
pub mod expand;
pub mod path;
pub mod series;
pub mod verify;

/// Truncation order used for all generating-function checks unless told
/// otherwise.
pub const DEFAULT_ORDER: usize = 64;
