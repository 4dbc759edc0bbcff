use core::fmt;

use crate::half_int::HalfInt;

/// Errors reported by the operations of this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A cuspidal label must have positive rank.
    ZeroRank,
    /// Segment end points out of order or on different lattices.
    InvalidSegment { x: HalfInt, y: HalfInt },
    /// Langlands data that is not a ladder.
    NotLadder,
    /// A 2x2 matrix whose rows are not translates of each other.
    InconsistentMatrix,
    /// `a` and `b` must be positive.
    NonPositiveDimension,
    /// Classification requires a non-negative shift.
    NegativeShift,
    /// A summand or parameter outside the good-parity range.
    NotGoodParity,
    /// An extended segment with `A < B`, `A - B` not integral, or `mu` of the wrong parity.
    InvalidExtSegment,
    /// An index outside `1..=n`.
    IndexOutOfRange { index: usize, len: usize },
    /// No part for the requested cuspidal label.
    UnknownLabel,
    /// The adjacent pair at this (1-based) index has both end points decreasing.
    ReorderUnavailable { index: usize },
    /// The input fails the validity conditions of an extended multi-segment.
    NotExtMultiSegment,
    /// The input is required to be non-vanishing.
    NotInRep,
    /// The reorder search visited more states than allowed.
    StateBoundExceeded { bound: usize },
    /// An operation restricted to non-negative input saw `B < 0`.
    NegativeLowerEnd,
    /// An adjacent pair outside the three configurations of the case analysis.
    UncoveredConfiguration { index: usize },
    /// The deformation needs an adjacent pair in the equality case.
    DeformPrecondition,
    /// The deformed parameter fails validation.
    DeformInvalidOutput,
    /// A standard extended multi-segment was expected.
    NotStandard,
    /// `Z[0,1]` derivative requested on input that is not `rho|.|^1`-reduced.
    Z01NotReduced,
    /// `Z[0,1]` attached to a cuspidal label that is not self-dual.
    Z01NotSelfDual,
    /// A derivative grid needs a positive half-integral shift.
    InvalidGrid,
    /// Generic precondition failure with a short description.
    Precondition(&'static str),
    /// A request outside the supported instances.
    Unsupported(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroRank => f.write_str("cuspidal label must have rank d >= 1"),
            Error::InvalidSegment { x, y } => write!(f, "invalid segment [{x},{y}]"),
            Error::NotLadder => f.write_str("segments do not form a ladder"),
            Error::InconsistentMatrix => f.write_str("matrix rows are not translates of each other"),
            Error::NonPositiveDimension => f.write_str("a and b must be positive"),
            Error::NegativeShift => f.write_str("shift s must be non-negative"),
            Error::NotGoodParity => f.write_str("parameter is not of good parity"),
            Error::InvalidExtSegment => f.write_str("invalid extended segment"),
            Error::IndexOutOfRange { index, len } => {
                write!(f, "index {index} out of range 1..={len}")
            }
            Error::UnknownLabel => f.write_str("no part for this cuspidal label"),
            Error::ReorderUnavailable { index } => {
                write!(f, "reorder unavailable at index {index}: both end points decrease")
            }
            Error::NotExtMultiSegment => f.write_str("not an extended multi-segment"),
            Error::NotInRep => f.write_str("extended multi-segment is not in Rep"),
            Error::StateBoundExceeded { bound } => {
                write!(f, "reorder search exceeded {bound} states")
            }
            Error::NegativeLowerEnd => f.write_str("input has a negative lower end point"),
            Error::UncoveredConfiguration { index } => {
                write!(f, "adjacent pair at index {index} is in no covered configuration")
            }
            Error::DeformPrecondition => {
                f.write_str("deformation needs an adjacent pair in the equality case")
            }
            Error::DeformInvalidOutput => f.write_str("deformed parameter fails validation"),
            Error::NotStandard => f.write_str("extended multi-segment is not standard"),
            Error::Z01NotReduced => f.write_str("Z[0,1] derivative needs rho|.|^1-reduced input"),
            Error::Z01NotSelfDual => f.write_str("Z[0,1] needs a self-dual cuspidal label"),
            Error::InvalidGrid => f.write_str("derivative grid needs 2s a positive integer"),
            Error::Precondition(what) => write!(f, "precondition failed: {what}"),
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
