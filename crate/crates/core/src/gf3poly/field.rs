use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

/// An element of F3, stored as its canonical residue in `{0, 1, 2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Gf3(u8);

const ADD: [u8; 5] = [0, 1, 2, 0, 1];

impl Gf3 {
    pub const ZERO: Gf3 = Gf3(0);
    pub const ONE: Gf3 = Gf3(1);
    pub const TWO: Gf3 = Gf3(2);

    pub const ALL: [Gf3; 3] = [Gf3(0), Gf3(1), Gf3(2)];

    /// Reduces `v` modulo 3.
    #[inline]
    pub const fn new(v: u8) -> Self {
        Gf3(v % 3)
    }

    #[inline]
    pub const fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse; `None` for zero. In F3 every nonzero element is its own inverse.
    pub fn inv(self) -> Option<Gf3> {
        if self.0 == 0 {
            None
        } else {
            Some(self)
        }
    }

    pub fn pow(self, e: u32) -> Gf3 {
        let mut acc = Gf3::ONE;
        for _ in 0..e {
            acc *= self;
        }
        acc
    }
}

impl TryFrom<u8> for Gf3 {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        if v < 3 {
            Ok(Gf3(v))
        } else {
            Err(format!("{v} is not a canonical F3 residue"))
        }
    }
}

impl From<Gf3> for u8 {
    fn from(v: Gf3) -> u8 {
        v.0
    }
}

impl fmt::Debug for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Gf3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Gf3 {
    type Output = Gf3;
    #[inline]
    fn add(self, rhs: Gf3) -> Gf3 {
        Gf3(ADD[(self.0 + rhs.0) as usize])
    }
}

impl Sub for Gf3 {
    type Output = Gf3;
    #[inline]
    fn sub(self, rhs: Gf3) -> Gf3 {
        self + (-rhs)
    }
}

impl Neg for Gf3 {
    type Output = Gf3;
    #[inline]
    fn neg(self) -> Gf3 {
        Gf3([0, 2, 1][self.0 as usize])
    }
}

impl Mul for Gf3 {
    type Output = Gf3;
    #[inline]
    fn mul(self, rhs: Gf3) -> Gf3 {
        Gf3((self.0 * rhs.0) % 3)
    }
}

impl AddAssign for Gf3 {
    fn add_assign(&mut self, rhs: Gf3) {
        *self = *self + rhs;
    }
}

impl SubAssign for Gf3 {
    fn sub_assign(&mut self, rhs: Gf3) {
        *self = *self - rhs;
    }
}

impl MulAssign for Gf3 {
    fn mul_assign(&mut self, rhs: Gf3) {
        *self = *self * rhs;
    }
}

impl Sum for Gf3 {
    fn sum<I: Iterator<Item = Gf3>>(iter: I) -> Gf3 {
        iter.fold(Gf3::ZERO, |a, b| a + b)
    }
}

/// `3^n` as `usize`, panicking on overflow.
pub fn pow3(n: usize) -> usize {
    3usize.checked_pow(n as u32).expect("3^n overflows usize")
}

/// `3^n` if it fits in `u64`.
pub fn checked_pow3(n: usize) -> Option<u64> {
    3u64.checked_pow(u32::try_from(n).ok()?)
}

/// Little-endian base-3 index of a point of `F3^r`.
pub fn point_index(x: &[Gf3]) -> usize {
    x.iter()
        .rev()
        .fold(0, |acc, c| acc * 3 + c.value() as usize)
}

/// The point of `F3^r` with little-endian base-3 index `idx`.
pub fn point_from_index(r: usize, mut idx: usize) -> Vec<Gf3> {
    let mut x = Vec::with_capacity(r);
    for _ in 0..r {
        x.push(Gf3::new((idx % 3) as u8));
        idx /= 3;
    }
    x
}

/// Iterator over all points of `F3^r` in index order.
pub fn all_points(r: usize) -> impl Iterator<Item = Vec<Gf3>> {
    (0..pow3(r)).map(move |i| point_from_index(r, i))
}
