//! Exact combinatorics for representations of Arthur type of split `SO_{2n+1}`
//! and `Sp_{2n}` over a p-adic field.
//!
//! Everything here is symbolic: cuspidal representations are labels, exponents
//! are half-integers, and Grothendieck-group elements are [`FormalSum`]s.

#![no_std]

extern crate alloc;

pub mod error;
pub mod formal_sum;
pub mod gl;
pub mod half_int;
pub mod induction;
pub mod exms;
pub mod model;

pub use error::{Error, Result};
pub use formal_sum::FormalSum;
pub use half_int::HalfInt;
pub use model::{
    component_group_order, good_parity, summand_good_parity, ArthurParam, CuspidalLabel, DualityType, EssSpeh,
    GroupKind, Segment, SpehType, Summand, UEssMatrix,
};
