//! Real scalar abstraction with pluggable precision.
//!
//! Three families implement [`Real`]:
//!
//! * `f64` — hardware double, about 15 significant digits;
//! * [`Dd`] — double-double (about 31 digits), backed by `qd::Quad`;
//! * [`Mp<BITS>`] — MPFR floats with a compile-time mantissa width.
//!
//! Algorithms are written once against the trait and monomorphised per tier.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::Float;

pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + for<'a> DivAssign<&'a Self>
{
    /// Decimal digits carried by the representation.
    const DIGITS: u32;

    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn is_finite(&self) -> bool;

    /// Full-precision decimal rendering in scientific notation.
    fn to_sci(&self, digits: usize) -> String;
    fn parse_decimal(s: &str) -> Option<Self>;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn from_i64(x: i64) -> Self {
        if x.unsigned_abs() < (1u64 << 53) {
            Self::from_f64(x as f64)
        } else {
            let hi = (x >> 26) as f64;
            let lo = (x & ((1 << 26) - 1)) as f64;
            Self::from_f64(hi) * Self::from_f64(67_108_864.0) + Self::from_f64(lo)
        }
    }

    fn epsilon() -> Self {
        // 2^(-bits) with bits ~ DIGITS * log2(10)
        let bits = (Self::DIGITS as f64 * std::f64::consts::LOG2_10).ceil() as i32;
        Self::from_f64(2.0).powi(-bits)
    }

    fn pi() -> Self {
        // atan-free: 4 * atan(1) via Machin would need atan; use Gauss–Legendre AGM.
        let two = Self::from_f64(2.0);
        let mut a = Self::one();
        let mut b = Self::one() / two.sqrt();
        let mut t = Self::from_f64(0.25);
        let mut p = Self::one();
        for _ in 0..12 {
            let an = (a.clone() + &b) / &two;
            b = (a.clone() * &b).sqrt();
            let d = a - &an;
            t -= p.clone() * &d * &d;
            a = an;
            p *= &two;
        }
        let s = a + &b;
        s.clone() * &s / (t * Self::from_f64(4.0))
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 {
            Self::one() / self
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc *= &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * &base;
            }
        }
        acc
    }

    fn log2(&self) -> Self {
        self.ln() / Self::from_f64(2.0).ln()
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a.clone() * b;
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Real for f64 {
    const DIGITS: u32 = 15;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn to_sci(&self, digits: usize) -> String {
        format!("{:.*e}", digits.saturating_sub(1), self)
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        s.trim().parse().ok()
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Double-double scalar (about 31 significant digits).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Dd(pub qd::Quad);

impl Dd {
    fn to_float(self) -> Float {
        let mut f = Float::with_val(256, self.0 .0);
        f += self.0 .1;
        f
    }
}

macro_rules! dd_binop {
    ($tr:ident, $f:ident, $atr:ident, $af:ident, $body:expr) => {
        impl $tr for Dd {
            type Output = Dd;
            #[inline(always)]
            fn $f(self, rhs: Dd) -> Dd {
                let op: fn(qd::Quad, qd::Quad) -> qd::Quad = $body;
                Dd(op(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a Dd> for Dd {
            type Output = Dd;
            #[inline(always)]
            fn $f(self, rhs: &'a Dd) -> Dd {
                let op: fn(qd::Quad, qd::Quad) -> qd::Quad = $body;
                Dd(op(self.0, rhs.0))
            }
        }
        impl $atr for Dd {
            #[inline(always)]
            fn $af(&mut self, rhs: Dd) {
                let op: fn(qd::Quad, qd::Quad) -> qd::Quad = $body;
                self.0 = op(self.0, rhs.0);
            }
        }
        impl<'a> $atr<&'a Dd> for Dd {
            #[inline(always)]
            fn $af(&mut self, rhs: &'a Dd) {
                let op: fn(qd::Quad, qd::Quad) -> qd::Quad = $body;
                self.0 = op(self.0, rhs.0);
            }
        }
    };
}

dd_binop!(Add, add, AddAssign, add_assign, |a, b| a.add_accurate(b));
dd_binop!(Sub, sub, SubAssign, sub_assign, |a, b| a.sub_accurate(b));
dd_binop!(Mul, mul, MulAssign, mul_assign, |a, b| a * b);
dd_binop!(Div, div, DivAssign, div_assign, |a, b| a / b);

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd(-self.0)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci(32))
    }
}

impl Real for Dd {
    const DIGITS: u32 = 31;

    fn from_f64(x: f64) -> Self {
        Dd(qd::Quad::from_f64(x))
    }
    fn to_f64(&self) -> f64 {
        self.0 .0 + self.0 .1
    }
    fn sqrt(&self) -> Self {
        if self.0 .0 == 0.0 {
            return *self;
        }
        Dd(self.0.sqrt())
    }
    fn exp(&self) -> Self {
        Dd(self.0.exp())
    }
    fn ln(&self) -> Self {
        Dd(self.0.ln())
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn to_sci(&self, digits: usize) -> String {
        float_to_sci(&self.to_float(), digits)
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        let f = Float::parse(s.trim())
            .ok()
            .map(|p| Float::with_val(256, p))?;
        let hi = f.to_f64();
        let lo = Float::with_val(256, &f - hi).to_f64();
        Some(Dd(qd::Quad(hi, lo)))
    }
    fn abs(&self) -> Self {
        Dd(self.0.abs())
    }
}

/// MPFR-backed scalar with a fixed mantissa width of `BITS` bits.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct Mp<const BITS: u32>(pub Float);

/// About 67 significant digits.
pub type Mp224 = Mp<224>;
/// About 106 significant digits.
pub type Mp352 = Mp<352>;

macro_rules! mp_binop {
    ($tr:ident, $f:ident, $atr:ident, $af:ident) => {
        impl<const B: u32> $tr for Mp<B> {
            type Output = Mp<B>;
            #[inline]
            fn $f(mut self, rhs: Mp<B>) -> Mp<B> {
                self.0.$af(&rhs.0);
                self
            }
        }
        impl<'a, const B: u32> $tr<&'a Mp<B>> for Mp<B> {
            type Output = Mp<B>;
            #[inline]
            fn $f(mut self, rhs: &'a Mp<B>) -> Mp<B> {
                self.0.$af(&rhs.0);
                self
            }
        }
        impl<const B: u32> $atr for Mp<B> {
            #[inline]
            fn $af(&mut self, rhs: Mp<B>) {
                self.0.$af(&rhs.0);
            }
        }
        impl<'a, const B: u32> $atr<&'a Mp<B>> for Mp<B> {
            #[inline]
            fn $af(&mut self, rhs: &'a Mp<B>) {
                self.0.$af(&rhs.0);
            }
        }
    };
}

mp_binop!(Add, add, AddAssign, add_assign);
mp_binop!(Sub, sub, SubAssign, sub_assign);
mp_binop!(Mul, mul, MulAssign, mul_assign);
mp_binop!(Div, div, DivAssign, div_assign);

impl<const B: u32> Neg for Mp<B> {
    type Output = Mp<B>;
    fn neg(self) -> Mp<B> {
        Mp(-self.0)
    }
}

impl<const B: u32> fmt::Display for Mp<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci(Self::DIGITS as usize))
    }
}

impl<const B: u32> Real for Mp<B> {
    const DIGITS: u32 = ((B as u64 * 30103) / 100_000) as u32;

    fn from_f64(x: f64) -> Self {
        Mp(Float::with_val(B, x))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn from_i64(x: i64) -> Self {
        Mp(Float::with_val(B, x))
    }
    fn sqrt(&self) -> Self {
        Mp(self.0.clone().sqrt())
    }
    fn exp(&self) -> Self {
        Mp(self.0.clone().exp())
    }
    fn ln(&self) -> Self {
        Mp(self.0.clone().ln())
    }
    fn log2(&self) -> Self {
        Mp(self.0.clone().log2())
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn to_sci(&self, digits: usize) -> String {
        float_to_sci(&self.0, digits)
    }
    fn parse_decimal(s: &str) -> Option<Self> {
        Float::parse(s.trim())
            .ok()
            .map(|p| Mp(Float::with_val(B, p)))
    }
    fn epsilon() -> Self {
        Mp(Float::with_val(B, 1) >> (B as i32 - 1))
    }
    fn pi() -> Self {
        Mp(Float::with_val(B, rug::float::Constant::Pi))
    }
    fn abs(&self) -> Self {
        Mp(self.0.clone().abs())
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.0 += &a.0 * &b.0;
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

fn float_to_sci(f: &Float, digits: usize) -> String {
    if f.is_zero() {
        return format!("{:.*e}", digits.saturating_sub(1), 0.0f64);
    }
    format!("{:.*e}", digits.max(2) - 1, f)
}

/// Precision tier selected from a requested number of decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Double,
    DoubleDouble,
    Mp67,
    Mp106,
}

impl Tier {
    pub fn for_digits(digits: u32) -> Option<Tier> {
        match digits {
            0..=15 => Some(Tier::Double),
            16..=31 => Some(Tier::DoubleDouble),
            32..=67 => Some(Tier::Mp67),
            68..=106 => Some(Tier::Mp106),
            _ => None,
        }
    }

    pub fn digits(self) -> u32 {
        match self {
            Tier::Double => <f64 as Real>::DIGITS,
            Tier::DoubleDouble => Dd::DIGITS,
            Tier::Mp67 => Mp224::DIGITS,
            Tier::Mp106 => Mp352::DIGITS,
        }
    }
}

/// Dispatch a generic expression on the scalar type chosen by a [`Tier`].
///
/// ```
/// use helion::numerics::{Real, Tier};
/// use helion::with_real;
/// let digits = with_real!(Tier::DoubleDouble, R => R::DIGITS);
/// assert_eq!(digits, 31);
/// ```
#[macro_export]
macro_rules! with_real {
    ($tier:expr, $r:ident => $body:expr) => {
        match $tier {
            $crate::numerics::Tier::Double => {
                type $r = f64;
                $body
            }
            $crate::numerics::Tier::DoubleDouble => {
                type $r = $crate::numerics::Dd;
                $body
            }
            $crate::numerics::Tier::Mp67 => {
                type $r = $crate::numerics::Mp224;
                $body
            }
            $crate::numerics::Tier::Mp106 => {
                type $r = $crate::numerics::Mp352;
                $body
            }
        }
    };
}

/// Table of `n!` for `n < len`.
pub fn factorials<R: Real>(len: usize) -> Vec<R> {
    let mut out = Vec::with_capacity(len);
    let mut acc = R::one();
    for n in 0..len {
        if n > 0 {
            acc *= R::from_i64(n as i64);
        }
        out.push(acc.clone());
    }
    out
}

/// Binomial coefficient as an exact integer (panics on overflow beyond u128).
pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Converts an exact integer to `R` without rounding through `f64`.
pub fn from_u128<R: Real>(x: u128) -> R {
    if x < (1u128 << 53) {
        return R::from_f64(x as f64);
    }
    let two32 = R::from_f64(4_294_967_296.0);
    let mut acc = R::zero();
    for shift in [96u32, 64, 32, 0] {
        let chunk = ((x >> shift) & 0xffff_ffff) as f64;
        acc = acc * &two32 + R::from_f64(chunk);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_basic<R: Real>(tol: f64) {
        let two = R::from_f64(2.0);
        let r = two.sqrt();
        let err = (r.clone() * &r - &two).abs().to_f64();
        assert!(err < tol, "sqrt err {err}");
        let e = R::one().exp();
        let back = e.ln();
        assert!((back - R::one()).abs().to_f64() < tol * 10.0);
        let pi = R::pi();
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn tiers_have_expected_accuracy() {
        check_basic::<f64>(1e-15);
        check_basic::<Dd>(1e-30);
        check_basic::<Mp224>(1e-64);
        check_basic::<Mp352>(1e-100);
    }

    #[test]
    fn pi_agm_matches_mpfr() {
        let agm: Dd = {
            // exercise the default AGM path through Dd
            <Dd as Real>::pi()
        };
        let mp = Mp224::pi();
        let diff = Mp224::parse_decimal(&agm.to_sci(34)).unwrap() - mp;
        assert!(diff.abs().to_f64() < 1e-30);
    }

    #[test]
    fn decimal_round_trip() {
        let x = Mp224::from_i64(1) / Mp224::from_i64(3);
        let s = x.to_sci(70);
        let y = Mp224::parse_decimal(&s).unwrap();
        assert!((x - y).abs().to_f64() < 1e-66);

        let d = Dd::from_i64(2) / Dd::from_i64(7);
        let back = Dd::parse_decimal(&d.to_sci(34)).unwrap();
        assert!((d - back).abs().to_f64() < 1e-31);
    }

    #[test]
    fn tier_selection() {
        assert_eq!(Tier::for_digits(15), Some(Tier::Double));
        assert_eq!(Tier::for_digits(30), Some(Tier::DoubleDouble));
        assert_eq!(Tier::for_digits(60), Some(Tier::Mp67));
        assert_eq!(Tier::for_digits(100), Some(Tier::Mp106));
        assert_eq!(Tier::for_digits(200), None);
        assert!(Mp224::DIGITS >= 67);
    }

    #[test]
    fn exact_integers() {
        assert_eq!(binomial(52, 26), 495_918_532_948_104);
        let f = factorials::<Mp224>(30);
        let expect = Mp224::parse_decimal("8841761993739701954543616000000").unwrap();
        assert_eq!(f[29], expect);
        let big = from_u128::<Mp224>(u128::MAX);
        let s = big.to_sci(45);
        assert!(
            s.starts_with("3.40282366920938463463374607431768211455"),
            "{s}"
        );
    }
}
