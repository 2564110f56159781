//! Scalar abstraction shared by the polyhedral kernel.
//!
//! Everything in [`crate::exactgeom`] is written against [`Scalar`]. The exact
//! instantiation ([`Rational`]) is what the entropic cones use; the floating
//! instantiations compare against a fixed tolerance and exist for quick
//! numerical work on inputs that are not representable exactly.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational, always kept in lowest terms.
pub type Rational = BigRational;

pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Num
    + Signed
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// `true` when arithmetic is exact and comparisons never use a tolerance.
    const EXACT: bool;

    /// Magnitude below which a value is treated as zero. Zero for exact types.
    fn tolerance() -> Self;

    fn is_negligible(&self) -> bool {
        self.abs() <= Self::tolerance()
    }

    fn is_pos(&self) -> bool {
        *self > Self::tolerance()
    }

    fn is_neg(&self) -> bool {
        *self < -Self::tolerance()
    }

    fn sign(&self) -> Ordering {
        if self.is_pos() {
            Ordering::Greater
        } else if self.is_neg() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Converts a float; exact types take the exact binary value.
    fn from_f64_lossy(x: f64) -> Self;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// The value as an `i64` when it is exactly an integer in range.
    fn as_i64(&self) -> Option<i64>;

    /// Rescales `v` by a positive factor into its canonical representative.
    ///
    /// Exact types produce coprime integers; floats are scaled to unit max-norm
    /// with negligible entries snapped to zero. A zero vector is left alone.
    fn make_primitive(v: &mut [Self]);

    fn parse(s: &str) -> Option<Self> {
        Self::from_str_radix(s.trim(), 10).ok()
    }

    /// Text form read back by [`Scalar::parse`] without loss.
    fn to_text(&self) -> String {
        self.to_string()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        (!d.is_zero()).then(|| Rational::new(n, d))
    }

    fn tolerance() -> Self {
        Rational::zero()
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn is_pos(&self) -> bool {
        self.is_positive()
    }

    fn is_neg(&self) -> bool {
        self.is_negative()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64_lossy(x: f64) -> Self {
        Rational::from_float(x).unwrap_or_else(Rational::zero)
    }

    fn to_f64_lossy(&self) -> f64 {
        // to_f64 on huge numerators/denominators may overflow each part.
        match self.to_f64() {
            Some(v) if v.is_finite() => v,
            _ => {
                let n = self.numer().to_f64().unwrap_or(f64::NAN);
                let d = self.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }

    fn as_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    fn make_primitive(v: &mut [Self]) {
        let mut lcm = BigInt::one();
        for x in v.iter() {
            if !x.is_zero() {
                lcm = lcm.lcm(x.denom());
            }
        }
        let mut gcd = BigInt::zero();
        for x in v.iter() {
            if !x.is_zero() {
                let n = x.numer() * (&lcm / x.denom());
                gcd = gcd.gcd(&n);
            }
        }
        if gcd.is_zero() {
            return;
        }
        let factor = Rational::new(lcm, gcd);
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &factor;
            }
        }
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr, $digits:expr) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn tolerance() -> Self {
                $tol
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                num as $t / den as $t
            }

            fn from_f64_lossy(x: f64) -> Self {
                x as $t
            }

            fn as_i64(&self) -> Option<i64> {
                if self.fract() == 0.0 && self.abs() < 9.0e15 {
                    Some(*self as i64)
                } else {
                    None
                }
            }

            fn to_text(&self) -> String {
                format!("{:.*e}", $digits, self)
            }

            fn make_primitive(v: &mut [Self]) {
                let max = v.iter().fold(0.0 as $t, |m, x| m.max(x.abs()));
                if max <= Self::tolerance() {
                    return;
                }
                for x in v.iter_mut() {
                    *x /= max;
                    if x.abs() <= Self::tolerance() {
                        *x = 0.0;
                    }
                }
            }
        }
    };
}

float_scalar!(f64, 1e-9, 16);
float_scalar!(f32, 1e-5, 8);

pub(crate) fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc
}

/// Rational from an `i64` integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Converts an exact rational into any scalar, exactly when both parts fit in `i64`.
pub fn from_rational<S: Scalar>(r: &Rational) -> S {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) => S::from_ratio(n, d),
        _ => S::from_f64_lossy(r.to_f64_lossy()),
    }
}
