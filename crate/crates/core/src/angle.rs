//! Exact rotation angles: rationals modulo 1, interpreted as the planar
//! rotation through `2*pi*num/den`.

use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_integer::Integer;
use serde::Serialize;

/// A rational angle in lowest terms with `0 <= num < den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RationalAngle {
    num: i64,
    den: i64,
}

impl RationalAngle {
    pub const ZERO: RationalAngle = RationalAngle { num: 0, den: 1 };

    /// The angle `2*pi*num/den`, reduced modulo one full turn.
    pub fn new(num: i64, den: i64) -> RationalAngle {
        assert!(den != 0, "zero denominator");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        num = num.rem_euclid(den);
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        RationalAngle { num, den }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Integer multiple of the angle, still exact.
    pub fn times(&self, k: i64) -> RationalAngle {
        let kr = k.rem_euclid(self.den);
        RationalAngle::new(self.num * kr, self.den)
    }

    /// Distance to the nearest integer, as an exact rational returned in
    /// floating point: `min(num, den - num) / den`.
    pub fn dist_to_integer(&self) -> f64 {
        self.num.min(self.den - self.num) as f64 / self.den as f64
    }

    /// The angle in radians, in `[0, 2*pi)`.
    pub fn radians(&self) -> f64 {
        2.0 * core::f64::consts::PI * self.num as f64 / self.den as f64
    }

    pub fn cos(&self) -> f64 {
        libm::cos(self.radians())
    }

    pub fn sin(&self) -> f64 {
        libm::sin(self.radians())
    }
}

impl Add for RationalAngle {
    type Output = RationalAngle;
    fn add(self, rhs: RationalAngle) -> RationalAngle {
        let g = self.den.gcd(&rhs.den);
        let den = self.den / g * rhs.den;
        RationalAngle::new(self.num * (rhs.den / g) + rhs.num * (self.den / g), den)
    }
}

impl Sub for RationalAngle {
    type Output = RationalAngle;
    fn sub(self, rhs: RationalAngle) -> RationalAngle {
        self + (-rhs)
    }
}

impl Neg for RationalAngle {
    type Output = RationalAngle;
    fn neg(self) -> RationalAngle {
        RationalAngle::new(-self.num, self.den)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms_in_unit_range() {
        assert_eq!(RationalAngle::new(14, 21), RationalAngle::new(2, 3));
        assert_eq!(RationalAngle::new(-1, 3), RationalAngle::new(2, 3));
        assert_eq!(RationalAngle::new(7, 7), RationalAngle::ZERO);
        assert_eq!(RationalAngle::new(5, -3), RationalAngle::new(1, 3));
        let a = RationalAngle::new(22, 21);
        assert_eq!((a.numerator(), a.denominator()), (1, 21));
    }

    #[test]
    fn arithmetic() {
        let third = RationalAngle::new(1, 3);
        let quarter = RationalAngle::new(1, 4);
        assert_eq!(third + quarter, RationalAngle::new(7, 12));
        assert_eq!(third - quarter, RationalAngle::new(1, 12));
        assert_eq!(-third, RationalAngle::new(2, 3));
        assert_eq!(third.times(3), RationalAngle::ZERO);
        assert_eq!(third.times(-1), RationalAngle::new(2, 3));
        assert_eq!(quarter.times(6), RationalAngle::new(1, 2));
    }

    #[test]
    fn distance_to_nearest_integer() {
        assert_eq!(RationalAngle::new(2, 3).dist_to_integer(), 1.0 / 3.0);
        assert_eq!(RationalAngle::new(1, 3).dist_to_integer(), 1.0 / 3.0);
        assert_eq!(RationalAngle::new(1, 2).dist_to_integer(), 0.5);
        assert_eq!(RationalAngle::ZERO.dist_to_integer(), 0.0);
    }

    #[test]
    fn trig_values() {
        assert!((RationalAngle::new(1, 4).cos()).abs() < 1e-15);
        assert!((RationalAngle::new(1, 4).sin() - 1.0).abs() < 1e-15);
        assert!((RationalAngle::new(1, 2).cos() + 1.0).abs() < 1e-15);
    }
}
