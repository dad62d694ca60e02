//! Places of the projective line, minimal models, Tate's algorithm and the
//! global Euler-number count.

mod global;
mod tate;
mod types;

pub use crate::exactalg::Place;
pub use global::{classify_all, GlobalReport, UnclassifiedPlace};
pub use tate::{minimalize_at, reduction_at, tate_at, LocalOutcome, Reduction};
pub use types::{canonical_multiset, format_multiset, parse_label_list, AffineLabel, Kodaira, LocalFiberData};
