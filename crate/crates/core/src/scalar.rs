//! Two interchangeable scalar modes: exact rationals and validated
//! arbitrary-precision enclosures.
//!
//! Everything geometric in this crate is generic over [`Scalar`]. The exact
//! mode ([`Rat`]) never rounds; cube roots succeed only for perfect cubes.
//! The validated mode ([`Iv`]) keeps a rigorous `[lo, hi]` enclosure of every
//! value: each arithmetic operation is computed round-to-nearest at `P` bits
//! and the bounds are then stepped outward by one unit in the last place,
//! which dominates the half-ulp rounding error. Sign queries on an enclosure
//! that straddles the decision boundary report [`Error::Indeterminate`]
//! instead of guessing.
//!
//! Division by (possibly) zero poisons the value, like a NaN; poison
//! propagates through arithmetic and is rejected at every decision point.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num::bigint::BigInt;
use num::rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Certified sign of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

/// Outcome of a three-valued comparison against a target with a tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trichotomy {
    Below,
    Within,
    Above,
}

/// Scalar abstraction shared by both arithmetic modes.
///
/// Arithmetic is on owned values (the formulas read naturally); everything is
/// immutable and `Send + Sync`.
pub trait Scalar:
    Sized
    + Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for the exact-rational mode.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Parses `"p/q"` or a decimal string. Exact mode parses decimals
    /// exactly (scaled by a power of ten).
    fn parse(s: &str) -> Result<Self>;

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    fn cube(&self) -> Self {
        self.clone() * self.clone() * self.clone()
    }

    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    fn abs(&self) -> Self;

    /// Real cube root. Exact mode fails with [`Error::CubeRootNotExact`]
    /// unless the value is a perfect cube of a rational.
    fn cbrt(&self) -> Result<Self>;

    /// `2^x`. Exact mode supports integer exponents only.
    fn exp2(x: &Self) -> Result<Self>;

    /// False once the value has been poisoned by a division by (possibly)
    /// zero.
    fn is_valid(&self) -> bool;

    /// Certified sign; `Err(Indeterminate)` if the enclosure straddles zero
    /// or the value is poisoned.
    fn sign(&self) -> Result<Sign>;

    /// Three-valued comparison of `self` against `target` at tolerance
    /// `tol >= 0`: `Within` means the enclosure lies in
    /// `[target - tol, target + tol]` or genuinely straddles the target.
    fn cmp3(&self, target: &Self, tol: &Self) -> Result<Trichotomy>;

    /// Midpoint as `f64` (exact mode: nearest double).
    fn to_f64(&self) -> f64;

    /// Width of the enclosure (0 for exact values); diagnostic only.
    fn width_f64(&self) -> f64;

    fn is_positive(&self) -> bool {
        matches!(self.sign(), Ok(Sign::Pos))
    }

    fn is_one(&self) -> bool {
        matches!((self.clone() - Self::one()).sign(), Ok(Sign::Zero))
    }
}

// ---------------------------------------------------------------------------
// Exact rationals
// ---------------------------------------------------------------------------

/// Exact rational scalar. `None` marks a poisoned value (division by zero
/// somewhere upstream).
#[derive(Clone, PartialEq)]
pub struct Rat(Option<BigRational>);

impl Rat {
    pub fn new(r: BigRational) -> Self {
        Rat(Some(r))
    }

    pub fn poisoned() -> Self {
        Rat(None)
    }

    pub fn as_ratio(&self) -> Option<&BigRational> {
        self.0.as_ref()
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Rat(Some(BigRational::new(num, den))))
    }

    fn bin(a: &Self, b: &Self, f: impl Fn(&BigRational, &BigRational) -> Option<BigRational>) -> Self {
        match (&a.0, &b.0) {
            (Some(x), Some(y)) => Rat(f(x, y)),
            _ => Rat(None),
        }
    }
}

/// Exact cube root of a `BigInt`, if it is a perfect cube.
fn bigint_cbrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_zero() {
        return Some(BigInt::from(0));
    }
    let neg = n.is_negative();
    let a = n.abs();
    let r = a.cbrt();
    if &r * &r * &r == a {
        Some(if neg { -r } else { r })
    } else {
        None
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Some(r) => write!(f, "Rat({})", r),
            None => write!(f, "Rat(poisoned)"),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Some(r) => {
                if r.denom() == &BigInt::from(1) {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            None => write!(f, "NaQ"),
        }
    }
}

macro_rules! rat_binop {
    ($trait:ident, $meth:ident, $op:tt) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $meth(self, rhs: Rat) -> Rat {
                Rat::bin(&self, &rhs, |x, y| Some(x $op y))
            }
        }
    };
}

rat_binop!(Add, add, +);
rat_binop!(Sub, sub, -);
rat_binop!(Mul, mul, *);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        Rat::bin(&self, &rhs, |x, y| if y.is_zero() { None } else { Some(x / y) })
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(self.0.map(|r| -r))
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rat(Some(BigRational::from_integer(0.into())))
    }

    fn one() -> Self {
        Rat(Some(BigRational::from_integer(1.into())))
    }

    fn from_int(n: i64) -> Self {
        Rat(Some(BigRational::from_integer(n.into())))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(Some(BigRational::new(num.into(), den.into())))
    }

    fn parse(s: &str) -> Result<Self> {
        parse_rational_str(s).map(|r| Rat(Some(r)))
    }

    fn abs(&self) -> Self {
        Rat(self.0.as_ref().map(|r| r.abs()))
    }

    fn cbrt(&self) -> Result<Self> {
        let r = self.0.as_ref().ok_or_else(|| Error::Indeterminate("cbrt of poisoned value".into()))?;
        let num = bigint_cbrt_exact(r.numer());
        let den = bigint_cbrt_exact(r.denom());
        match (num, den) {
            (Some(n), Some(d)) => Ok(Rat(Some(BigRational::new(n, d)))),
            _ => Err(Error::CubeRootNotExact(r.to_string())),
        }
    }

    fn exp2(x: &Self) -> Result<Self> {
        let r = x.0.as_ref().ok_or_else(|| Error::Indeterminate("exp2 of poisoned value".into()))?;
        if r.denom() != &BigInt::from(1) {
            return Err(Error::Domain(format!("2^({}) is irrational; use validated mode", r)));
        }
        let e = r
            .numer()
            .to_i64()
            .ok_or_else(|| Error::Domain("exponent out of range".into()))?;
        let two = BigRational::from_integer(2.into());
        let mut acc = BigRational::from_integer(1.into());
        for _ in 0..e.unsigned_abs() {
            acc *= &two;
        }
        if e < 0 {
            acc = acc.recip();
        }
        Ok(Rat(Some(acc)))
    }

    fn is_valid(&self) -> bool {
        self.0.is_some()
    }

    fn sign(&self) -> Result<Sign> {
        let r = self.0.as_ref().ok_or_else(|| Error::Indeterminate("sign of poisoned value".into()))?;
        Ok(if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Pos
        } else {
            Sign::Neg
        })
    }

    fn cmp3(&self, target: &Self, tol: &Self) -> Result<Trichotomy> {
        let d = self.clone() - target.clone();
        let (d, t) = match (&d.0, &tol.0) {
            (Some(d), Some(t)) => (d, t),
            _ => return Err(Error::Indeterminate("cmp3 of poisoned value".into())),
        };
        Ok(if d.abs() <= *t {
            Trichotomy::Within
        } else if d.is_positive() {
            Trichotomy::Above
        } else {
            Trichotomy::Below
        })
    }

    fn to_f64(&self) -> f64 {
        match &self.0 {
            Some(r) => r.to_f64().unwrap_or(f64::NAN),
            None => f64::NAN,
        }
    }

    fn width_f64(&self) -> f64 {
        0.0
    }
}

/// Parses `"p/q"`, an integer, or a decimal string into an exact rational.
pub fn parse_rational_str(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = |m: &str| Error::Parse(format!("{m}: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
        let den: BigInt = d.trim().parse().map_err(|_| bad("bad denominator"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(BigRational::new(num, den));
    }
    // Decimal, possibly with exponent: [-]ddd[.ddd][e[-]dd]
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i64>().map_err(|_| bad("bad exponent"))?),
        None => (s, 0),
    };
    let (int_part, frac_part) = match mant.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mant, ""),
    };
    let digits = format!("{}{}", int_part, frac_part);
    if digits.is_empty() || digits == "-" || digits == "+" {
        return Err(bad("empty number"));
    }
    let num: BigInt = digits.parse().map_err(|_| bad("bad digits"))?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let mut pow = BigInt::from(1);
    for _ in 0..scale.unsigned_abs() {
        pow *= &ten;
    }
    Ok(if scale >= 0 {
        BigRational::from_integer(num * pow)
    } else {
        BigRational::new(num, pow)
    })
}

// ---------------------------------------------------------------------------
// Validated enclosures
// ---------------------------------------------------------------------------

const RM: RoundingMode = RoundingMode::ToEven;

/// Validated arbitrary-precision enclosure at `P` bits of working precision.
///
/// The enclosure `[lo, hi]` always contains the exact value. NaN bounds mark
/// a poisoned value.
#[derive(Clone)]
pub struct Iv<const P: usize> {
    lo: BigFloat,
    hi: BigFloat,
}

/// 256-bit default, matching the documented configuration.
pub type Iv256 = Iv<256>;

fn step_out(v: &BigFloat, p: usize, up: bool) -> BigFloat {
    if v.is_nan() || v.is_inf() {
        return v.clone();
    }
    if v.is_zero() {
        // Zero results of +,-,*,/ and cbrt are exact; no inflation needed.
        return v.clone();
    }
    let e = match v.exponent() {
        Some(e) => e,
        None => return BigFloat::nan(None),
    };
    // One ulp at precision p: 2^(e - p). from_word(1) is 0.5 * 2^1.
    let mut u = BigFloat::from_word(1, 64);
    let ue = (e as i64) - (p as i64) + 1;
    if ue < i32::MIN as i64 || ue > i32::MAX as i64 {
        return BigFloat::nan(None);
    }
    u.set_exponent(ue as i32);
    if up {
        v.add_full_prec(&u)
    } else {
        v.sub_full_prec(&u)
    }
}

impl<const P: usize> Iv<P> {
    fn nan() -> Self {
        Iv {
            lo: BigFloat::nan(None),
            hi: BigFloat::nan(None),
        }
    }

    fn point(v: BigFloat) -> Self {
        Iv { lo: v.clone(), hi: v }
    }

    fn widened(lo: BigFloat, hi: BigFloat) -> Self {
        if lo.is_nan() || hi.is_nan() || lo.is_inf() || hi.is_inf() {
            return Self::nan();
        }
        Iv {
            lo: step_out(&lo, P, false),
            hi: step_out(&hi, P, true),
        }
    }

    pub fn lo(&self) -> &BigFloat {
        &self.lo
    }

    pub fn hi(&self) -> &BigFloat {
        &self.hi
    }

    /// Rigorous conversion of a rational into an enclosure.
    pub fn from_big_rational(r: &BigRational) -> Self {
        let mut cc = Consts::new().expect("constants cache");
        let pp = P.max(64);
        let ns = r.numer().to_string();
        let ds = r.denom().to_string();
        // Parse numerator and denominator exactly (4 bits/digit overshoots
        // the 3.33 bits a decimal digit needs), then one rounded division.
        let pn = pp.max(ns.len() * 4 + 64);
        let pd = pp.max(ds.len() * 4 + 64);
        let n = BigFloat::parse(&ns, Radix::Dec, pn, RM, &mut cc);
        let d = BigFloat::parse(&ds, Radix::Dec, pd, RM, &mut cc);
        let q = n.div(&d, pp, RM);
        Self::widened(q.clone(), q)
    }

    pub fn from_rat(r: &Rat) -> Self {
        match r.as_ratio() {
            Some(q) => Self::from_big_rational(q),
            None => Self::nan(),
        }
    }

    fn cmp_bounds(a: &BigFloat, b: &BigFloat) -> Option<std::cmp::Ordering> {
        a.cmp(b).map(|s| s.cmp(&0))
    }

    /// Certified `self < rhs`.
    pub fn lt_certified(&self, rhs: &Self) -> Result<bool> {
        if !self.is_valid() || !rhs.is_valid() {
            return Err(Error::Indeterminate("comparison of poisoned value".into()));
        }
        if Self::cmp_bounds(&self.hi, &rhs.lo) == Some(std::cmp::Ordering::Less) {
            return Ok(true);
        }
        if Self::cmp_bounds(&rhs.hi, &self.lo) != Some(std::cmp::Ordering::Greater) {
            return Ok(false);
        }
        Err(Error::Indeterminate("overlapping enclosures".into()))
    }

    fn fmt_mid(&self) -> String {
        if !self.is_valid() {
            return "NaI".into();
        }
        let mut cc = Consts::new().expect("constants cache");
        let half = BigFloat::from_f64(0.5, 64);
        let mid = self.lo.add(&self.hi, P, RM).mul(&half, P, RM);
        mid.format(Radix::Dec, RM, &mut cc).unwrap_or_else(|_| "?".into())
    }
}

impl<const P: usize> PartialEq for Iv<P> {
    /// Identity of enclosures (not certified equality of the numbers).
    fn eq(&self, other: &Self) -> bool {
        self.lo.cmp(&other.lo) == Some(0) && self.hi.cmp(&other.hi) == Some(0)
    }
}

impl<const P: usize> fmt::Debug for Iv<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Iv[{:e}, {:e}]", self.lo.to_f64_lossy(), self.hi.to_f64_lossy())
    }
}

impl<const P: usize> fmt::Display for Iv<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_mid())
    }
}

trait ToF64Lossy {
    fn to_f64_lossy(&self) -> f64;
}

impl ToF64Lossy for BigFloat {
    fn to_f64_lossy(&self) -> f64 {
        big_float_to_f64(self)
    }
}

/// Nearest-double conversion via the top mantissa word.
pub fn big_float_to_f64(v: &BigFloat) -> f64 {
    if v.is_nan() {
        return f64::NAN;
    }
    if v.is_inf_pos() {
        return f64::INFINITY;
    }
    if v.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if v.is_zero() {
        return 0.0;
    }
    let (words, _n, sign, e, _) = match v.as_raw_parts() {
        Some(p) => p,
        None => return f64::NAN,
    };
    // Value = sign * 0.mantissa * 2^e with the mantissa's top bit set in the
    // last word. Two words give 128 bits, ample for a double.
    let mut m = 0f64;
    let top = words.len();
    for (i, w) in words.iter().enumerate().skip(top.saturating_sub(2)) {
        let shift = ((top - i) * 64) as i32;
        m += (*w as f64) * 2f64.powi(-shift);
    }
    let s = if sign == astro_float::Sign::Neg { -1.0 } else { 1.0 };
    s * m * 2f64.powi(e)
}

macro_rules! iv_binop {
    ($trait:ident, $meth:ident) => {
        impl<const P: usize> $trait for Iv<P> {
            type Output = Iv<P>;
            fn $meth(self, rhs: Iv<P>) -> Iv<P> {
                Iv::<P>::$meth(&self, &rhs)
            }
        }
    };
}

impl<const P: usize> Iv<P> {
    fn add(&self, rhs: &Self) -> Self {
        Self::widened(self.lo.add(&rhs.lo, P, RM), self.hi.add(&rhs.hi, P, RM))
    }

    fn sub(&self, rhs: &Self) -> Self {
        Self::widened(self.lo.sub(&rhs.hi, P, RM), self.hi.sub(&rhs.lo, P, RM))
    }

    fn mul(&self, rhs: &Self) -> Self {
        let cands = [
            self.lo.mul(&rhs.lo, P, RM),
            self.lo.mul(&rhs.hi, P, RM),
            self.hi.mul(&rhs.lo, P, RM),
            self.hi.mul(&rhs.hi, P, RM),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c.is_nan() {
                return Self::nan();
            }
            if Self::cmp_bounds(c, &lo) == Some(std::cmp::Ordering::Less) {
                lo = c.clone();
            }
            if Self::cmp_bounds(c, &hi) == Some(std::cmp::Ordering::Greater) {
                hi = c.clone();
            }
        }
        Self::widened(lo, hi)
    }

    fn div(&self, rhs: &Self) -> Self {
        if !rhs.is_valid() || !self.is_valid() {
            return Self::nan();
        }
        // Denominator enclosure must be certifiedly nonzero.
        let rlo_pos = rhs.lo.is_positive() && !rhs.lo.is_zero();
        let rhi_neg = rhs.hi.is_negative() && !rhs.hi.is_zero();
        if !(rlo_pos || rhi_neg) {
            return Self::nan();
        }
        let cands = [
            self.lo.div(&rhs.lo, P, RM),
            self.lo.div(&rhs.hi, P, RM),
            self.hi.div(&rhs.lo, P, RM),
            self.hi.div(&rhs.hi, P, RM),
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c.is_nan() {
                return Self::nan();
            }
            if Self::cmp_bounds(c, &lo) == Some(std::cmp::Ordering::Less) {
                lo = c.clone();
            }
            if Self::cmp_bounds(c, &hi) == Some(std::cmp::Ordering::Greater) {
                hi = c.clone();
            }
        }
        Self::widened(lo, hi)
    }
}

iv_binop!(Add, add);
iv_binop!(Sub, sub);
iv_binop!(Mul, mul);
iv_binop!(Div, div);

impl<const P: usize> Neg for Iv<P> {
    type Output = Iv<P>;
    fn neg(self) -> Iv<P> {
        Iv {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }
}

impl<const P: usize> Scalar for Iv<P> {
    const EXACT: bool = false;

    fn zero() -> Self {
        Self::point(BigFloat::from_i8(0, P))
    }

    fn one() -> Self {
        Self::point(BigFloat::from_i8(1, P))
    }

    fn from_int(n: i64) -> Self {
        Self::point(BigFloat::from_i64(n, P))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let n = Self::from_int(num);
        let d = Self::from_int(den);
        n / d
    }

    fn parse(s: &str) -> Result<Self> {
        let r = parse_rational_str(s)?;
        Ok(Self::from_big_rational(&r))
    }

    fn abs(&self) -> Self {
        if !self.is_valid() {
            return Self::nan();
        }
        let lo_sign = self.lo.sign();
        let hi_sign = self.hi.sign();
        match (lo_sign, hi_sign) {
            (Some(astro_float::Sign::Pos), _) => self.clone(),
            (_, Some(astro_float::Sign::Neg)) => self.clone().neg(),
            _ => {
                // Straddles zero.
                let nl = self.lo.clone().neg();
                let hi = if Self::cmp_bounds(&nl, &self.hi) == Some(std::cmp::Ordering::Greater) {
                    nl
                } else {
                    self.hi.clone()
                };
                Iv {
                    lo: BigFloat::from_i8(0, P),
                    hi,
                }
            }
        }
    }

    fn cbrt(&self) -> Result<Self> {
        if !self.is_valid() {
            return Err(Error::Indeterminate("cbrt of poisoned value".into()));
        }
        Ok(Self::widened(self.lo.cbrt(P, RM), self.hi.cbrt(P, RM)))
    }

    fn exp2(x: &Self) -> Result<Self> {
        if !x.is_valid() {
            return Err(Error::Indeterminate("exp2 of poisoned value".into()));
        }
        let mut cc = Consts::new().expect("constants cache");
        let two = BigFloat::from_i8(2, P);
        let lo = two.pow(&x.lo, P, RM, &mut cc);
        let hi = two.pow(&x.hi, P, RM, &mut cc);
        // pow is claimed correctly rounded; inflate twice for slack.
        let w = Self::widened(lo, hi);
        Ok(Self::widened(w.lo, w.hi))
    }

    fn is_valid(&self) -> bool {
        !(self.lo.is_nan() || self.hi.is_nan() || self.lo.is_inf() || self.hi.is_inf())
    }

    fn sign(&self) -> Result<Sign> {
        if !self.is_valid() {
            return Err(Error::Indeterminate("sign of poisoned value".into()));
        }
        if self.lo.is_positive() && !self.lo.is_zero() {
            return Ok(Sign::Pos);
        }
        if self.hi.is_negative() && !self.hi.is_zero() {
            return Ok(Sign::Neg);
        }
        if self.lo.is_zero() && self.hi.is_zero() {
            return Ok(Sign::Zero);
        }
        Err(Error::Indeterminate(format!("enclosure straddles zero: {:?}", self)))
    }

    fn cmp3(&self, target: &Self, tol: &Self) -> Result<Trichotomy> {
        let d = self.clone() - target.clone();
        if !d.is_valid() || !tol.is_valid() {
            return Err(Error::Indeterminate("cmp3 of poisoned value".into()));
        }
        let neg_tol = tol.clone().neg();
        let above_tol = Self::cmp_bounds(&d.lo, &tol.hi) == Some(std::cmp::Ordering::Greater);
        if above_tol {
            return Ok(Trichotomy::Above);
        }
        let below_tol = Self::cmp_bounds(&d.hi, &neg_tol.lo) == Some(std::cmp::Ordering::Less);
        if below_tol {
            return Ok(Trichotomy::Below);
        }
        // Inside [-tol, tol] for every tolerance in the tolerance enclosure?
        let inside = Self::cmp_bounds(&d.lo, &neg_tol.hi) != Some(std::cmp::Ordering::Less)
            && Self::cmp_bounds(&d.hi, &tol.lo) != Some(std::cmp::Ordering::Greater);
        if inside {
            return Ok(Trichotomy::Within);
        }
        // Straddles zero without clearing the tolerance band: still Within
        // (the number may be the target itself).
        let straddles = !(d.lo.is_positive() && !d.lo.is_zero())
            && !(d.hi.is_negative() && !d.hi.is_zero());
        if straddles {
            return Ok(Trichotomy::Within);
        }
        Err(Error::Indeterminate("enclosure straddles the tolerance boundary".into()))
    }

    fn to_f64(&self) -> f64 {
        if !self.is_valid() {
            return f64::NAN;
        }
        0.5 * (big_float_to_f64(&self.lo) + big_float_to_f64(&self.hi))
    }

    fn width_f64(&self) -> f64 {
        if !self.is_valid() {
            return f64::INFINITY;
        }
        big_float_to_f64(&self.hi.sub(&self.lo, 128, RoundingMode::Up))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_basics() {
        let a = Rat::from_ratio(2, 3);
        let b = Rat::from_ratio(3, 2);
        assert!((a.clone() * b.clone()).is_one());
        assert_eq!((a.clone() - a.clone()).sign().unwrap(), Sign::Zero);
        assert_eq!(b.sign().unwrap(), Sign::Pos);
        assert!(Rat::from_int(8).cbrt().unwrap().is_one() == false);
        assert_eq!(Rat::from_int(8).cbrt().unwrap(), Rat::from_int(2));
        assert!(matches!(Rat::from_int(9).cbrt(), Err(Error::CubeRootNotExact(_))));
        assert_eq!(
            Rat::from_ratio(-27, 8).cbrt().unwrap(),
            Rat::from_ratio(-3, 2)
        );
    }

    #[test]
    fn rat_poison_propagates() {
        let z = Rat::from_int(1) / Rat::zero();
        assert!(!z.is_valid());
        let w = z + Rat::one();
        assert!(!w.is_valid());
        assert!(w.sign().is_err());
    }

    #[test]
    fn rat_parse_forms() {
        assert_eq!(Rat::parse("3/4").unwrap(), Rat::from_ratio(3, 4));
        assert_eq!(Rat::parse("0.25").unwrap(), Rat::from_ratio(1, 4));
        assert_eq!(Rat::parse("-1.5e2").unwrap(), Rat::from_int(-150));
        assert_eq!(Rat::parse("2").unwrap(), Rat::from_int(2));
        assert!(Rat::parse("x").is_err());
    }

    #[test]
    fn iv_encloses_and_certifies() {
        type S = Iv256;
        let third = S::from_ratio(1, 3);
        let one = <S as Scalar>::one();
        let sum = third.clone() + third.clone() + third.clone();
        // 3 * (1/3) must contain 1 and be razor thin.
        assert!(matches!((sum.clone() - one.clone()).sign(), Err(Error::Indeterminate(_))));
        assert!(sum.width_f64() < 1e-70);
        // cbrt(2)^3 encloses 2.
        let c = S::from_int(2).cbrt().unwrap();
        let two_again = c.cube();
        let d = two_again - S::from_int(2);
        assert!(d.width_f64() < 1e-70);
        assert!(matches!(d.sign(), Err(Error::Indeterminate(_))));
        // A decisively positive quantity certifies.
        let q = S::from_ratio(1, 1000000) + S::zero();
        assert_eq!(q.sign().unwrap(), Sign::Pos);
    }

    #[test]
    fn iv_division_poison() {
        type S = Iv256;
        let tiny = S::from_ratio(1, 3) + S::from_ratio(-1, 3); // straddles 0
        let q = S::one() / tiny;
        assert!(!q.is_valid());
        assert!(q.sign().is_err());
    }

    #[test]
    fn iv_cmp3_bands() {
        type S = Iv256;
        let tol = S::parse("1e-30").unwrap();
        let x = S::one() + S::parse("1e-10").unwrap();
        assert_eq!(x.cmp3(&S::one(), &tol).unwrap(), Trichotomy::Above);
        let y = S::one() - S::parse("1e-10").unwrap();
        assert_eq!(y.cmp3(&S::one(), &tol).unwrap(), Trichotomy::Below);
        let z = S::one() + S::parse("1e-40").unwrap();
        assert_eq!(z.cmp3(&S::one(), &tol).unwrap(), Trichotomy::Within);
    }

    #[test]
    fn iv_exp2_matches_f64() {
        type S = Iv256;
        let mu = S::parse("-2.5").unwrap();
        let v = S::exp2(&mu).unwrap();
        assert!((v.to_f64() - (-2.5f64).exp2()).abs() < 1e-12);
        assert!(v.width_f64() < 1e-70);
    }

    #[test]
    fn rational_roundtrip_through_iv() {
        let r = parse_rational_str("123456789/987654321").unwrap();
        let iv = Iv256::from_big_rational(&r);
        let expect = 123456789f64 / 987654321f64;
        assert!((iv.to_f64() - expect).abs() < 1e-12);
        assert!(iv.width_f64() < 1e-70);
    }
}
