//! Exact elements of `(1/2)Z`.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

/// A half-integer `twice / 2`.
///
/// Every exponent, segment end point and shift in this crate lives in
/// `(1/2)Z`, so storing the doubled value keeps all arithmetic exact.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    /// The half-integer `twice / 2`.
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub const fn is_integral(self) -> bool {
        self.twice % 2 == 0
    }

    /// `Some(n)` when the value is the integer `n`.
    pub const fn to_int(self) -> Option<i64> {
        if self.is_integral() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    /// True when `self - other` is an integer.
    pub const fn same_lattice(self, other: HalfInt) -> bool {
        (self.twice - other.twice) % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    pub fn floor(self) -> i64 {
        self.twice.div_euclid(2)
    }

    pub fn ceil(self) -> i64 {
        (self.twice + 1).div_euclid(2)
    }

    pub const fn signum(self) -> i64 {
        self.twice.signum()
    }

    /// Half of an integer, e.g. `HalfInt::half(3) == 3/2`.
    pub const fn half(n: i64) -> Self {
        HalfInt { twice: n }
    }

    /// The difference `self - other`, which must be an integer.
    pub fn int_diff(self, other: HalfInt) -> Option<i64> {
        (self - other).to_int()
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_int() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.twice),
        }
    }
}

/// Error returned when a string is not an integer or a fraction `p/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseHalfIntError;

impl fmt::Display for ParseHalfIntError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected an integer or a fraction p/2")
    }
}

impl core::error::Error for ParseHalfIntError {}

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<i64>().map(HalfInt::from_int).map_err(|_| ParseHalfIntError),
            Some((num, den)) => {
                let num: i64 = num.trim().parse().map_err(|_| ParseHalfIntError)?;
                match den.trim().parse::<i64>() {
                    Ok(1) => Ok(HalfInt::from_int(num)),
                    Ok(2) => Ok(HalfInt::from_twice(num)),
                    _ => Err(ParseHalfIntError),
                }
            }
        }
    }
}

impl From<i64> for HalfInt {
    fn from(n: i64) -> Self {
        HalfInt::from_int(n)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt { twice: self.twice + 2 * rhs }
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        HalfInt { twice: self.twice - 2 * rhs }
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, rhs: i64) -> HalfInt {
        HalfInt { twice: self.twice * rhs }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.twice += rhs.twice;
    }
}

impl SubAssign for HalfInt {
    fn sub_assign(&mut self, rhs: HalfInt) {
        self.twice -= rhs.twice;
    }
}

impl AddAssign<i64> for HalfInt {
    fn add_assign(&mut self, rhs: i64) {
        self.twice += 2 * rhs;
    }
}

impl PartialEq<i64> for HalfInt {
    fn eq(&self, other: &i64) -> bool {
        self.twice == 2 * other
    }
}

impl PartialOrd<i64> for HalfInt {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.twice.partial_cmp(&(2 * other))
    }
}
