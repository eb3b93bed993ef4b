//! Cyclic LDPC codes built from binary idempotents.
//!
//! The pipeline runs from finite-field arithmetic through the factorisation
//! of `z^n + 1`, the Mattson-Solomon transform, a bounded search over unions
//! of cyclotomic cosets, and finally belief-propagation simulation of the
//! resulting circulant parity-check matrices.

pub mod alist;
pub mod catalog;
pub mod cli;
pub mod code;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod matrix;
pub mod msdomain;
pub mod par;
pub mod poly;
pub mod search;
pub mod sim;

pub use code::{build_code, CirculantMatrix, CyclicCode};
pub use cyclotomic::{cosets, factorize, CyclotomicCoset, Factor, FactorSet};
pub use error::{Error, Result};
pub use field::{build_field, FieldContext, FieldElement};
pub use msdomain::{ms_inverse, ms_transform};
pub use par::Execution;
pub use poly::BinaryPoly;
pub use search::{code_search, CodeRecord, SearchConfig};
pub use sim::{bp_decode, simulate_fer, ChannelConfig, DecoderConfig, SimResult};
