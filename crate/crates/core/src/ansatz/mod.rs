//! The Matrix Ansatz representation and the bracket evaluation engine.

mod band;
mod ops;
mod params;
mod relations;
mod usw;

pub use band::BandOperator;
pub use ops::{build_operators, eval_bra_word, eval_bra_word_ket, eval_truncated, safe_dimension, Operators};
pub use params::{derive_open_boundary_rates, invert_rates, ParamPoint, Rates, DEFAULT_HORIZON};
pub use relations::{check_ansatz_relations, corrupt_d};
pub use usw::{printed_entries, usw_entries, usw_table, UswEntries};
