//! Midpoint-radius ("ball") arithmetic over `f64`.
//!
//! Every operation returns a ball containing the exact result of the
//! operation applied to any points of its inputs. Rounding of the midpoint is
//! absorbed into the radius; radius arithmetic is itself rounded upward.
//! Transcendental functions use Lipschitz bounds plus a fixed allowance for
//! the libm error (glibc `sin`/`cos`/`atan2` are accurate to within one ulp).

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

const EPS: f64 = f64::EPSILON;
/// Absolute allowance for libm transcendental results of magnitude ≤ π.
const LIBM_SLACK: f64 = 8.0 * EPS;

#[inline]
fn up(x: f64) -> f64 {
    (x * (1.0 + 4.0 * EPS)).next_up()
}

/// Rounding error bound for a correctly rounded result `x`.
#[inline]
fn rounding(x: f64) -> f64 {
    x.abs() * EPS + f64::MIN_POSITIVE
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    mid: f64,
    rad: f64,
}

impl Ball {
    pub fn new(mid: f64, rad: f64) -> Self {
        assert!(mid.is_finite() && rad >= 0.0, "bad ball {mid} ± {rad}");
        Ball { mid, rad }
    }

    /// An exactly representable point.
    pub fn exact(x: f64) -> Self {
        Ball::new(x, 0.0)
    }

    /// Integer, with rounding accounted for when it is not representable.
    pub fn from_i64(x: i64) -> Self {
        let mid = x as f64;
        let rad = if (mid as i64) == x && mid.abs() < 9.0e15 { 0.0 } else { rounding(mid) };
        Ball::new(mid, rad)
    }

    pub fn pi() -> Self {
        Ball::new(PI, rounding(PI))
    }

    pub fn mid(&self) -> f64 {
        self.mid
    }

    pub fn rad(&self) -> f64 {
        self.rad
    }

    pub fn lo(&self) -> f64 {
        (self.mid - self.rad).next_down()
    }

    pub fn hi(&self) -> f64 {
        (self.mid + self.rad).next_up()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo() <= x && x <= self.hi()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    /// Certainly `> x`.
    pub fn gt(&self, x: f64) -> bool {
        self.lo() > x
    }

    /// Certainly `< x`.
    pub fn lt(&self, x: f64) -> bool {
        self.hi() < x
    }

    pub fn abs(self) -> Ball {
        Ball::new(self.mid.abs(), self.rad)
    }

    pub fn sqr(self) -> Ball {
        self * self
    }

    pub fn powi(self, n: u32) -> Ball {
        let mut acc = Ball::exact(1.0);
        let mut base = self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    pub fn recip(self) -> Ball {
        Ball::exact(1.0) / self
    }

    /// Requires the ball to be strictly positive.
    pub fn sqrt(self) -> Ball {
        let lo = self.mid - self.rad;
        assert!(lo > 0.0, "sqrt of ball reaching non-positive values");
        let mid = self.mid.sqrt();
        // |√x - √m| = |x - m| / (√x + √m) ≤ r / √(m - r)
        let rad = up(self.rad / lo.sqrt().next_down() + rounding(mid));
        Ball::new(mid, rad)
    }

    pub fn cos(self) -> Ball {
        let mid = self.mid.cos();
        Ball::new(mid, up(self.rad + LIBM_SLACK))
    }

    pub fn sin(self) -> Ball {
        let mid = self.mid.sin();
        Ball::new(mid, up(self.rad + LIBM_SLACK))
    }

    pub fn max(self, other: Ball) -> Ball {
        let hi = self.hi().max(other.hi());
        let lo = self.lo().max(other.lo());
        Ball::from_bounds(lo, hi)
    }

    pub fn min(self, other: Ball) -> Ball {
        let hi = self.hi().min(other.hi());
        let lo = self.lo().min(other.lo());
        Ball::from_bounds(lo, hi)
    }

    /// Smallest ball containing `[lo, hi]`.
    pub fn from_bounds(lo: f64, hi: f64) -> Ball {
        assert!(lo <= hi);
        let mid = 0.5 * lo + 0.5 * hi;
        let rad = up((hi - mid).max(mid - lo) + rounding(mid));
        Ball::new(mid, rad)
    }

    /// Union of two balls.
    pub fn hull(self, other: Ball) -> Ball {
        Ball::from_bounds(self.lo().min(other.lo()), self.hi().max(other.hi()))
    }
}

impl Add for Ball {
    type Output = Ball;
    fn add(self, o: Ball) -> Ball {
        let mid = self.mid + o.mid;
        Ball::new(mid, up(self.rad + o.rad + rounding(mid)))
    }
}

impl Sub for Ball {
    type Output = Ball;
    fn sub(self, o: Ball) -> Ball {
        let mid = self.mid - o.mid;
        Ball::new(mid, up(self.rad + o.rad + rounding(mid)))
    }
}

impl Neg for Ball {
    type Output = Ball;
    fn neg(self) -> Ball {
        Ball::new(-self.mid, self.rad)
    }
}

impl Mul for Ball {
    type Output = Ball;
    fn mul(self, o: Ball) -> Ball {
        let mid = self.mid * o.mid;
        let rad = self.mid.abs() * o.rad + o.mid.abs() * self.rad + self.rad * o.rad;
        Ball::new(mid, up(up(rad) + rounding(mid)))
    }
}

impl Mul<f64> for Ball {
    type Output = Ball;
    fn mul(self, o: f64) -> Ball {
        self * Ball::exact(o)
    }
}

impl Div for Ball {
    type Output = Ball;
    fn div(self, o: Ball) -> Ball {
        let denom_lo = o.mid.abs() - o.rad;
        assert!(denom_lo > 0.0, "division by a ball containing zero");
        let mid = self.mid / o.mid;
        // |x/y - m| ≤ (r_x + |m|·r_y) / (|y_mid| - r_y)
        let rad = up(self.rad + mid.abs() * o.rad) / denom_lo.next_down();
        Ball::new(mid, up(up(rad) + rounding(mid)))
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.15e}±{:.1e}", self.mid, self.rad)
    }
}

/// Complex ball as a pair of real balls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexBall {
    pub re: Ball,
    pub im: Ball,
}

impl ComplexBall {
    pub fn new(re: Ball, im: Ball) -> Self {
        ComplexBall { re, im }
    }

    pub fn real(re: Ball) -> Self {
        ComplexBall::new(re, Ball::exact(0.0))
    }

    pub fn conj(self) -> Self {
        ComplexBall::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> Ball {
        self.re.sqr() + self.im.sqr()
    }

    pub fn abs(self) -> Ball {
        let n = self.norm_sqr();
        if n.lo() > 0.0 {
            n.sqrt()
        } else {
            // |z| ≤ |re| + |im|
            let hi = (self.re.abs() + self.im.abs()).hi();
            Ball::from_bounds(0.0, hi)
        }
    }

    /// Principal argument in `(-π, π]`.
    ///
    /// Panics if the ball touches the origin or straddles the negative real
    /// axis, where the argument is not continuous.
    pub fn arg(self) -> Ball {
        let (x, y) = (self.re.mid, self.im.mid);
        let modulus = x.hypot(y);
        let spread = up(self.re.rad + self.im.rad);
        assert!(spread < modulus * 0.5, "argument of a ball too close to the origin");
        // Straddling the negative real axis: enclose around π, read modulo 2π.
        let mid = if x < 0.0 && self.im.contains_zero() { PI } else { y.atan2(x) };
        // |arg z - arg z0| ≤ (π/2)·|z - z0|/|z0| when |z - z0| < |z0|
        let rad = up(PI / 2.0 * spread / (modulus * (1.0 - 4.0 * EPS) - spread));
        Ball::new(mid, up(rad + LIBM_SLACK))
    }

    pub fn scale(self, s: Ball) -> Self {
        ComplexBall::new(self.re * s, self.im * s)
    }

    pub fn powi(self, n: u32) -> Self {
        let mut acc = ComplexBall::real(Ball::exact(1.0));
        let mut base = self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    pub fn recip(self) -> Self {
        let d = self.norm_sqr();
        ComplexBall::new(self.re / d, -self.im / d)
    }

    pub fn contains(&self, re: f64, im: f64) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }
}

impl Add for ComplexBall {
    type Output = ComplexBall;
    fn add(self, o: ComplexBall) -> ComplexBall {
        ComplexBall::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for ComplexBall {
    type Output = ComplexBall;
    fn sub(self, o: ComplexBall) -> ComplexBall {
        ComplexBall::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        ComplexBall::new(-self.re, -self.im)
    }
}

impl Mul for ComplexBall {
    type Output = ComplexBall;
    fn mul(self, o: ComplexBall) -> ComplexBall {
        ComplexBall::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

impl Div for ComplexBall {
    type Output = ComplexBall;
    fn div(self, o: ComplexBall) -> ComplexBall {
        self * o.recip()
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+({})i", self.re, self.im)
    }
}
