//! Binary fixed-point numbers on top of `BigInt`, used where a few hundred
//! bits of headroom remove cancellation from otherwise unstable recurrences
//! and series products.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

const BITS: usize = 512;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Fixed(BigInt);

impl Fixed {
    pub fn zero() -> Self {
        Fixed(BigInt::zero())
    }

    pub fn from_int(n: i64) -> Self {
        Fixed(BigInt::from(n) << BITS)
    }

    /// `num / den` rounded toward negative infinity.
    pub fn ratio(num: &BigInt, den: &BigInt) -> Self {
        Fixed((num << BITS) / den)
    }

    /// Exact conversion of a finite `f64`.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite());
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mantissa, exp) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        let m = BigInt::from(mantissa) * sign;
        let shift = BITS as i64 + exp;
        if shift >= 0 {
            Fixed(m << shift as usize)
        } else {
            Fixed(m >> (-shift) as usize)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(BITS as i32))
    }

    pub fn div(&self, other: &Fixed) -> Fixed {
        Fixed((&self.0 << BITS) / &other.0)
    }

    pub fn mul_int(&self, k: i64) -> Fixed {
        Fixed(&self.0 * k)
    }

    pub fn div_int(&self, k: i64) -> Fixed {
        Fixed(&self.0 / k)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        Fixed(&self.0 + &rhs.0)
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        Fixed(&self.0 - &rhs.0)
    }
}

impl Mul for &Fixed {
    type Output = Fixed;
    fn mul(self, rhs: &Fixed) -> Fixed {
        Fixed((&self.0 * &rhs.0) >> BITS)
    }
}

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed(-self.0)
    }
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(sin a, cos a)` by Taylor series.
pub(crate) fn sin_cos(a: &Fixed) -> (Fixed, Fixed) {
    let a2 = a * a;
    let mut sin = Fixed::zero();
    let mut term = a.clone();
    let mut k = 1i64;
    while !term.is_zero() {
        sin = &sin + &term;
        term = -(&term * &a2).div_int((k + 1) * (k + 2));
        k += 2;
    }
    let mut cos = Fixed::zero();
    let mut term = Fixed::from_int(1);
    let mut k = 0i64;
    while !term.is_zero() {
        cos = &cos + &term;
        term = -(&term * &a2).div_int((k + 1) * (k + 2));
        k += 2;
    }
    (sin, cos)
}
