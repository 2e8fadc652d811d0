//! Forward-mode dual numbers.
//!
//! A [`Dual`] carries a value and one tangent direction. All arithmetic
//! propagates the tangent by the exact chain rule; branching operations
//! (`abs`, `max_by_value`, ...) branch on the value and differentiate the
//! taken branch.
//!
//! A sub-computation whose derivative must not come from differentiating its
//! own code is assembled with [`Dual::with_custom_tangent`]: the caller
//! computes value and tangent by two separate rules, and downstream
//! arithmetic treats the result like any other `Dual`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dual {
    pub value: f64,
    pub tangent: f64,
}

impl Dual {
    pub const ZERO: Dual = Dual { value: 0.0, tangent: 0.0 };
    pub const ONE: Dual = Dual { value: 1.0, tangent: 0.0 };

    /// A constant: tangent exactly zero.
    #[inline]
    pub const fn lift(value: f64) -> Self {
        Dual { value, tangent: 0.0 }
    }

    /// An active input with the given tangent seed.
    #[inline]
    pub const fn seed(value: f64, tangent: f64) -> Self {
        Dual { value, tangent }
    }

    /// Result of a custom elemental function whose value and tangent were
    /// produced by independent rules.
    #[inline]
    pub const fn with_custom_tangent(value: f64, tangent: f64) -> Self {
        Dual { value, tangent }
    }

    /// Evaluates a custom elemental function: `primal` yields the value,
    /// `tangent` yields the derivative, and neither is differentiated.
    pub fn custom_elemental<P, T>(primal: P, tangent: T) -> Self
    where
        P: FnOnce() -> f64,
        T: FnOnce() -> f64,
    {
        Dual::with_custom_tangent(primal(), tangent())
    }

    pub fn sqrt(self) -> Dual {
        let r = self.value.sqrt();
        Dual { value: r, tangent: self.tangent / (2.0 * r) }
    }

    /// `sqrt` that rejects non-positive arguments instead of producing NaN/inf.
    pub fn try_sqrt(self) -> Result<Dual> {
        if self.value > 0.0 {
            Ok(self.sqrt())
        } else {
            Err(Error::domain(format!("sqrt of non-positive value {}", self.value)))
        }
    }

    pub fn checked_div(self, rhs: Dual) -> Result<Dual> {
        if rhs.value == 0.0 {
            Err(Error::domain("division by a zero-valued dual"))
        } else {
            Ok(self / rhs)
        }
    }

    pub fn recip(self) -> Dual {
        let inv = 1.0 / self.value;
        Dual { value: inv, tangent: -self.tangent * inv * inv }
    }

    pub fn powi(self, n: i32) -> Dual {
        if n == 0 {
            return Dual::ONE;
        }
        let pm1 = self.value.powi(n - 1);
        Dual { value: pm1 * self.value, tangent: f64::from(n) * pm1 * self.tangent }
    }

    /// Real power; requires a positive base for non-integer exponents.
    pub fn powf(self, p: f64) -> Dual {
        let v = self.value.powf(p);
        Dual { value: v, tangent: p * self.value.powf(p - 1.0) * self.tangent }
    }

    pub fn exp(self) -> Dual {
        let e = self.value.exp();
        Dual { value: e, tangent: e * self.tangent }
    }

    pub fn ln(self) -> Dual {
        Dual { value: self.value.ln(), tangent: self.tangent / self.value }
    }

    /// Branches on the value; at zero the positive branch is taken.
    pub fn abs(self) -> Dual {
        if self.value < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn max_by_value(self, other: Dual) -> Dual {
        if other.value > self.value {
            other
        } else {
            self
        }
    }

    pub fn min_by_value(self, other: Dual) -> Dual {
        if other.value < self.value {
            other
        } else {
            self
        }
    }

    pub fn scale_tangent(self, factor: f64) -> Dual {
        Dual { value: self.value, tangent: self.tangent * factor }
    }

    pub fn is_finite(self) -> bool {
        self.value.is_finite() && self.tangent.is_finite()
    }
}

impl From<f64> for Dual {
    fn from(value: f64) -> Self {
        Dual::lift(value)
    }
}

impl fmt::Display for Dual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.value, self.tangent)
    }
}

impl Neg for Dual {
    type Output = Dual;
    #[inline]
    fn neg(self) -> Dual {
        Dual { value: -self.value, tangent: -self.tangent }
    }
}

impl Add for Dual {
    type Output = Dual;
    #[inline]
    fn add(self, rhs: Dual) -> Dual {
        Dual { value: self.value + rhs.value, tangent: self.tangent + rhs.tangent }
    }
}

impl Sub for Dual {
    type Output = Dual;
    #[inline]
    fn sub(self, rhs: Dual) -> Dual {
        Dual { value: self.value - rhs.value, tangent: self.tangent - rhs.tangent }
    }
}

impl Mul for Dual {
    type Output = Dual;
    #[inline]
    fn mul(self, rhs: Dual) -> Dual {
        Dual {
            value: self.value * rhs.value,
            tangent: self.tangent * rhs.value + self.value * rhs.tangent,
        }
    }
}

impl Div for Dual {
    type Output = Dual;
    #[inline]
    fn div(self, rhs: Dual) -> Dual {
        let q = self.value / rhs.value;
        Dual { value: q, tangent: (self.tangent - q * rhs.tangent) / rhs.value }
    }
}

impl Add<f64> for Dual {
    type Output = Dual;
    #[inline]
    fn add(self, rhs: f64) -> Dual {
        Dual { value: self.value + rhs, tangent: self.tangent }
    }
}

impl Sub<f64> for Dual {
    type Output = Dual;
    #[inline]
    fn sub(self, rhs: f64) -> Dual {
        Dual { value: self.value - rhs, tangent: self.tangent }
    }
}

impl Mul<f64> for Dual {
    type Output = Dual;
    #[inline]
    fn mul(self, rhs: f64) -> Dual {
        Dual { value: self.value * rhs, tangent: self.tangent * rhs }
    }
}

impl Div<f64> for Dual {
    type Output = Dual;
    #[inline]
    fn div(self, rhs: f64) -> Dual {
        Dual { value: self.value / rhs, tangent: self.tangent / rhs }
    }
}

impl Add<Dual> for f64 {
    type Output = Dual;
    #[inline]
    fn add(self, rhs: Dual) -> Dual {
        rhs + self
    }
}

impl Sub<Dual> for f64 {
    type Output = Dual;
    #[inline]
    fn sub(self, rhs: Dual) -> Dual {
        Dual { value: self - rhs.value, tangent: -rhs.tangent }
    }
}

impl Mul<Dual> for f64 {
    type Output = Dual;
    #[inline]
    fn mul(self, rhs: Dual) -> Dual {
        rhs * self
    }
}

impl Div<Dual> for f64 {
    type Output = Dual;
    #[inline]
    fn div(self, rhs: Dual) -> Dual {
        Dual::lift(self) / rhs
    }
}

macro_rules! assign_ops {
    ($($trait:ident $method:ident $op:tt),*) => {$(
        impl $trait for Dual {
            #[inline]
            fn $method(&mut self, rhs: Dual) {
                *self = *self $op rhs;
            }
        }
        impl $trait<f64> for Dual {
            #[inline]
            fn $method(&mut self, rhs: f64) {
                *self = *self $op rhs;
            }
        }
    )*};
}

assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl Sum for Dual {
    fn sum<I: Iterator<Item = Dual>>(iter: I) -> Dual {
        iter.fold(Dual::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Dual> for Dual {
    fn sum<I: Iterator<Item = &'a Dual>>(iter: I) -> Dual {
        iter.fold(Dual::ZERO, |acc, x| acc + *x)
    }
}
