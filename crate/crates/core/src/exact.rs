//! Exact dyadic enclosure of the real root of `x^3 - a·x^2 - b·x - c`, and
//! certified comparisons between integers and scaled powers of that root.
//!
//! The root is isolated by exact integer sign evaluation and refined by
//! bisection. Every comparison is decided in integer arithmetic; when the
//! current enclosure is too coarse it is refined and the comparison retried.

use std::cmp::Ordering;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ball::Ball;
use crate::error::{Error, Result};
use crate::recurrence::RecurrenceParams;

pub const DEFAULT_BITS: u32 = 128;
pub const MAX_BITS: u32 = 8192;

/// Shared enclosure of the tribonacci constant.
pub fn tribonacci() -> &'static RootEnclosure {
    static ENCLOSURE: OnceLock<RootEnclosure> = OnceLock::new();
    ENCLOSURE.get_or_init(|| RootEnclosure::real_root(RecurrenceParams::TRIBONACCI).expect("tribonacci cubic has one real root"))
}

/// The real root lies in `[lo/2^shift, (lo+1)/2^shift]`, or equals `lo/2^shift`
/// when `exact` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEnclosure {
    params: RecurrenceParams,
    lo: BigInt,
    shift: u32,
    exact: bool,
}

impl RootEnclosure {
    /// Encloses the unique real root. Fails unless the discriminant is negative.
    pub fn real_root(params: RecurrenceParams) -> Result<Self> {
        Self::with_bits(params, DEFAULT_BITS)
    }

    pub fn with_bits(params: RecurrenceParams, bits: u32) -> Result<Self> {
        let disc = params.discriminant();
        if !disc.is_negative() {
            return Err(Error::MultipleRealRoots {
                a: params.a(),
                b: params.b(),
                c: params.c(),
                discriminant: disc.to_string(),
            });
        }
        Ok(Self::isolate(params).refine_to(bits))
    }

    /// Integer bracketing; `P(0) = -c < 0` so the root is positive.
    fn isolate(params: RecurrenceParams) -> Self {
        let sign_at = |m: &BigInt| scaled_sign(params, m, 0);
        let mut hi = BigInt::one();
        loop {
            match sign_at(&hi) {
                Ordering::Equal => return Self::exact_at(params, hi),
                Ordering::Greater => break,
                Ordering::Less => hi *= 2,
            }
        }
        let mut lo: BigInt = &hi / 2;
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) / 2;
            match sign_at(&mid) {
                Ordering::Equal => return Self::exact_at(params, mid),
                Ordering::Less => lo = mid,
                Ordering::Greater => hi = mid,
            }
        }
        RootEnclosure {
            params,
            lo,
            shift: 0,
            exact: false,
        }
    }

    fn exact_at(params: RecurrenceParams, root: BigInt) -> Self {
        RootEnclosure {
            params,
            lo: root,
            shift: 0,
            exact: true,
        }
    }

    /// Bisects until the enclosure width is `2^-bits`.
    pub fn refine_to(mut self, bits: u32) -> Self {
        while !self.exact && self.shift < bits {
            self.shift += 1;
            let mid: BigInt = (&self.lo << 1u32) + 1;
            match scaled_sign(self.params, &mid, self.shift) {
                Ordering::Less => self.lo = mid,
                Ordering::Greater => self.lo <<= 1u32,
                Ordering::Equal => {
                    self.lo = mid;
                    self.exact = true;
                }
            }
        }
        self
    }

    pub fn params(&self) -> RecurrenceParams {
        self.params
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn bits(&self) -> u32 {
        self.shift
    }

    /// `(lo, hi, shift)` with the root in `[lo, hi] / 2^shift`.
    pub fn bounds(&self) -> (BigInt, BigInt, u32) {
        let hi = if self.exact { self.lo.clone() } else { &self.lo + 1 };
        (self.lo.clone(), hi, self.shift)
    }

    /// Floating-point ball containing the root.
    pub fn ball(&self) -> Ball {
        let scale = 2f64.powi(-(self.shift as i32));
        let mid = self.lo.to_f64().expect("root fits in f64") * scale;
        let width = if self.exact { 0.0 } else { scale };
        Ball::new(mid, mid.abs() * 2.0 * f64::EPSILON + width)
    }

    /// Compares `lhs·η^e` with `rhs`, both non-negative.
    pub fn cmp_scaled_power(&self, lhs: &BigInt, e: u32, rhs: &BigInt) -> Result<Ordering> {
        debug_assert!(!lhs.is_negative() && !rhs.is_negative());
        if e == 0 || lhs.is_zero() {
            return Ok(lhs.cmp(rhs));
        }
        let mut enc = self.clone();
        loop {
            let (lo, hi, s) = enc.bounds();
            let rhs_scaled: BigInt = rhs << (s as usize * e as usize);
            let lower = lhs * lo.pow(e);
            if enc.exact {
                return Ok(lower.cmp(&rhs_scaled));
            }
            // η lies strictly inside (lo, hi).
            if lower >= rhs_scaled {
                return Ok(Ordering::Greater);
            }
            let upper = lhs * hi.pow(e);
            if upper <= rhs_scaled {
                return Ok(Ordering::Less);
            }
            if enc.shift >= MAX_BITS {
                return Err(Error::Uncertified(format!(
                    "comparison of {lhs}·η^{e} with {rhs} undecided at {MAX_BITS} bits"
                )));
            }
            let bits = (enc.shift * 2).max(64);
            enc = enc.refine_to(bits);
        }
    }

    /// `floor((num/den)·η^(e/2))`.
    pub fn floor_scaled_half_power(&self, num: u64, den: u64, e: u32) -> Result<BigInt> {
        let num2 = BigInt::from(num).pow(2);
        let den2 = BigInt::from(den).pow(2);
        let (lo, _, s) = self.bounds();
        let est_sq = (&num2 * lo.pow(e)) >> (s as usize * e as usize);
        let mut m: BigInt = (est_sq / &den2).sqrt();
        // x < m  <=>  num²η^e < den²m²
        while m.is_positive() && self.cmp_scaled_power(&num2, e, &(&den2 * &m * &m))? == Ordering::Less {
            m -= 1;
        }
        loop {
            let next: BigInt = &m + 1;
            if self.cmp_scaled_power(&num2, e, &(&den2 * &next * &next))? == Ordering::Less {
                return Ok(m);
            }
            m = next;
        }
    }

    /// `ceil(num / η^(e/2))` for `num ≥ 0`.
    pub fn ceil_over_half_power(&self, num: &BigInt, e: u32) -> Result<BigInt> {
        let num2 = num * num;
        let (_, hi, s) = self.bounds();
        let est_sq = (&num2 << (s as usize * e as usize)) / hi.pow(e);
        let mut m: BigInt = est_sq.sqrt();
        // m < y  <=>  m²η^e < num²
        while self.cmp_scaled_power(&(&m * &m), e, &num2)? == Ordering::Less {
            m += 1;
        }
        loop {
            if !m.is_positive() {
                return Ok(m);
            }
            let prev: BigInt = &m - 1;
            if self.cmp_scaled_power(&(&prev * &prev), e, &num2)? == Ordering::Less {
                return Ok(m);
            }
            m = prev;
        }
    }

    /// `|value| > (num/den)·η^(e/2)`.
    pub fn exceeds_scaled_half_power(&self, value: &BigInt, num: u64, den: u64, e: u32) -> Result<bool> {
        let lhs = BigInt::from(num).pow(2);
        let rhs = BigInt::from(den).pow(2) * value * value;
        Ok(self.cmp_scaled_power(&lhs, e, &rhs)? == Ordering::Less)
    }

    /// `|value| < (num/den)·η^(e/2)`.
    pub fn below_scaled_half_power(&self, value: &BigInt, num: u64, den: u64, e: u32) -> Result<bool> {
        let lhs = BigInt::from(num).pow(2);
        let rhs = BigInt::from(den).pow(2) * value * value;
        Ok(self.cmp_scaled_power(&lhs, e, &rhs)? == Ordering::Greater)
    }
}

/// Sign of `2^(3s)·P(m/2^s)`.
fn scaled_sign(params: RecurrenceParams, m: &BigInt, s: u32) -> Ordering {
    let s = s as usize;
    let m2 = m * m;
    let m3 = &m2 * m;
    let v = m3 - ((&m2 * params.a()) << s) - ((m * params.b()) << (2 * s)) - (BigInt::from(params.c()) << (3 * s));
    v.sign().cmp_zero()
}

trait SignExt {
    fn cmp_zero(self) -> Ordering;
}

impl SignExt for num_bigint::Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}
