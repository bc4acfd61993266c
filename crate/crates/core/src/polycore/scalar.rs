//! Exact elements of the quadratic field Q(√2).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A number `rat + rad·√2` with both parts exact rationals.
///
/// `BigRational` keeps its fractions reduced with a positive denominator, so
/// derived equality is equality of values.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    rat: BigRational,
    rad: BigRational,
}

impl Scalar {
    pub fn new(rat: BigRational, rad: BigRational) -> Self {
        Scalar { rat, rad }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_rational(BigRational::one())
    }

    pub fn from_rational(rat: BigRational) -> Self {
        Scalar { rat, rad: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a pure rational. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn sqrt2() -> Self {
        Scalar { rat: BigRational::zero(), rad: BigRational::one() }
    }

    /// 1/√2 = √2/2.
    pub fn inv_sqrt2() -> Self {
        Scalar { rat: BigRational::zero(), rad: BigRational::new(BigInt::one(), BigInt::from(2)) }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.rad
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.rad.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.rad.is_zero()
    }

    /// The field conjugate `rat - rad·√2`.
    pub fn conjugate(&self) -> Scalar {
        Scalar { rat: self.rat.clone(), rad: -self.rad.clone() }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.rad.is_zero() {
            return Some(Scalar::from_rational(self.rat.recip()));
        }
        // a² - 2b² vanishes only at zero since √2 is irrational
        let norm = &self.rat * &self.rat - BigRational::from_integer(BigInt::from(2)) * &self.rad * &self.rad;
        Some(Scalar { rat: &self.rat / &norm, rad: -&self.rad / &norm })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        let k = BigRational::from_integer(BigInt::from(k));
        Scalar { rat: &self.rat * &k, rad: &self.rad * &k }
    }

    /// Sign of a rational scalar; `None` when a radical part is present.
    pub fn rational_signum(&self) -> Option<i32> {
        if !self.rad.is_zero() {
            return None;
        }
        Some(if self.rat.is_zero() {
            0
        } else if self.rat.is_positive() {
            1
        } else {
            -1
        })
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar { rat: &self.rat + &rhs.rat, rad: &self.rad + &rhs.rad }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar { rat: &self.rat - &rhs.rat, rad: &self.rad - &rhs.rad }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.rad.is_zero() && rhs.rad.is_zero() {
            return Scalar::from_rational(&self.rat * &rhs.rat);
        }
        let two = BigRational::from_integer(BigInt::from(2));
        Scalar {
            rat: &self.rat * &rhs.rat + two * &self.rad * &rhs.rad,
            rad: &self.rat * &rhs.rad + &self.rad * &rhs.rat,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { rat: -self.rat.clone(), rad: -self.rad.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { rat: -self.rat, rad: -self.rad }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { <&Scalar as $tr<&Scalar>>::$m(&self, &rhs) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { <&Scalar as $tr<&Scalar>>::$m(&self, rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.rat += &rhs.rat;
        self.rad += &rhs.rad;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.rat -= &rhs.rat;
        self.rad -= &rhs.rad;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::from_rational(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.rad.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "{}*sqrt2", self.rad),
            (false, false) => {
                if self.rad.is_negative() {
                    write!(f, "{} - {}*sqrt2", self.rat, -self.rad.clone())
                } else {
                    write!(f, "{} + {}*sqrt2", self.rat, self.rad)
                }
            }
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
