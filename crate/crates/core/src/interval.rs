//! Closed f64 intervals with outward rounding.
//!
//! IEEE-754 binary ops round to nearest, so the true result of one operation
//! lies within one ulp of the computed one; nudging the computed endpoints
//! one step outward therefore yields a true enclosure.  Square roots and
//! n-th roots go further: candidate endpoints are *verified* by powering the
//! candidate back up with directed rounding, and conversions from big
//! integers/rationals are verified by exact rational comparison, so none of
//! the enclosure guarantees rest on library rounding promises.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

pub(crate) fn next_up(x: f64) -> f64 {
    if x.is_nan() || x == f64::INFINITY {
        return x;
    }
    if x == 0.0 {
        return f64::from_bits(1);
    }
    let bits = x.to_bits();
    f64::from_bits(if bits >> 63 == 0 { bits + 1 } else { bits - 1 })
}

pub(crate) fn next_down(x: f64) -> f64 {
    -next_up(-x)
}

fn fmin(a: f64, b: f64) -> f64 {
    if a < b {
        a
    } else {
        b
    }
}

fn fmax(a: f64, b: f64) -> f64 {
    if a > b {
        a
    } else {
        b
    }
}

pub(crate) fn fabs(a: f64) -> f64 {
    if a < 0.0 {
        -a
    } else {
        a
    }
}

/// Exact residual of a rounded sum (Knuth's 2Sum, exact in round-to-nearest
/// for all finite inputs): lets directed rounding step an endpoint only when
/// the operation actually lost something, so exact arithmetic stays exact.
/// `None` when intermediates leave the range where the theorem applies.
fn sum_residual(a: f64, b: f64, s: f64) -> Option<f64> {
    if fabs(a) >= 1e300 || fabs(b) >= 1e300 {
        return None;
    }
    let bb = s - a;
    Some((a - (s - bb)) + (b - bb))
}

fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        // overflow: the largest finite value is still a valid lower bound
        return if s == f64::INFINITY { f64::MAX } else { s };
    }
    match sum_residual(a, b, s) {
        Some(e) if e >= 0.0 => s,
        _ => next_down(s),
    }
}

fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return if s == f64::NEG_INFINITY { f64::MIN } else { s };
    }
    match sum_residual(a, b, s) {
        Some(e) if e <= 0.0 => s,
        _ => next_up(s),
    }
}

/// The fma residual `a*b - p` is exact unless the product over- or
/// underflowed; outside the reliable range fall back to an unconditional
/// outward step.
fn prod_residual(a: f64, b: f64, p: f64) -> Option<f64> {
    if fabs(p) >= 1e-290 && fabs(p) <= 1e290 {
        Some(libm::fma(a, b, -p))
    } else {
        None
    }
}

fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    if p.is_nan() {
        // 0 * inf: the true product of finite-represented quantities is 0
        return 0.0;
    }
    if !p.is_finite() {
        return if p == f64::INFINITY { f64::MAX } else { p };
    }
    if a == 0.0 || b == 0.0 {
        return 0.0; // exactly zero
    }
    if p == 0.0 {
        // a nonzero true product underflowed
        return if (a > 0.0) == (b > 0.0) {
            0.0
        } else {
            next_down(0.0)
        };
    }
    match prod_residual(a, b, p) {
        Some(e) if e >= 0.0 => p,
        _ => next_down(p),
    }
}

fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    if p.is_nan() {
        return 0.0;
    }
    if !p.is_finite() {
        return if p == f64::NEG_INFINITY { f64::MIN } else { p };
    }
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    if p == 0.0 {
        return if (a > 0.0) == (b > 0.0) {
            next_up(0.0)
        } else {
            0.0
        };
    }
    match prod_residual(a, b, p) {
        Some(e) if e <= 0.0 => p,
        _ => next_up(p),
    }
}

impl Interval {
    pub fn exact(x: f64) -> Self {
        debug_assert!(!x.is_nan());
        Interval { lo: x, hi: x }
    }

    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn zero() -> Self {
        Self::exact(0.0)
    }

    pub fn one() -> Self {
        Self::exact(1.0)
    }

    pub fn from_u64(x: u64) -> Self {
        Self::from_bigint(&BigInt::from(x))
    }

    /// Smallest verified enclosure of an integer: endpoint correctness is
    /// established by exact rational comparison, not by trusting conversion
    /// rounding.
    pub fn from_bigint(b: &BigInt) -> Self {
        let r = BigRational::from(b.clone());
        Self::from_bigrational(&r)
    }

    pub fn from_bigrational(r: &BigRational) -> Self {
        use num_traits::ToPrimitive;
        let approx = r.to_f64().unwrap_or(if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let mut lo = if approx.is_finite() {
            approx
        } else if approx > 0.0 {
            f64::MAX
        } else {
            f64::NEG_INFINITY
        };
        let mut hi = if approx.is_finite() {
            approx
        } else if approx > 0.0 {
            f64::INFINITY
        } else {
            f64::MIN
        };
        // verified outward adjustment (exact comparisons, f64 is dyadic)
        for _ in 0..64 {
            if rational_leq(lo, r) {
                break;
            }
            lo = next_down(lo);
        }
        while !rational_leq(lo, r) {
            lo = next_down(lo);
        }
        for _ in 0..64 {
            if rational_geq(hi, r) {
                break;
            }
            hi = next_up(hi);
        }
        while !rational_geq(hi, r) {
            hi = next_up(hi);
        }
        Interval { lo, hi }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, o.lo),
            hi: add_up(self.hi, o.hi),
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval {
            lo: add_down(self.lo, -o.hi),
            hi: add_up(self.hi, -o.lo),
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let los = [
            mul_down(self.lo, o.lo),
            mul_down(self.lo, o.hi),
            mul_down(self.hi, o.lo),
            mul_down(self.hi, o.hi),
        ];
        let his = [
            mul_up(self.lo, o.lo),
            mul_up(self.lo, o.hi),
            mul_up(self.hi, o.lo),
            mul_up(self.hi, o.hi),
        ];
        Interval {
            lo: los.iter().copied().fold(f64::INFINITY, fmin),
            hi: his.iter().copied().fold(f64::NEG_INFINITY, fmax),
        }
    }

    /// Division by an interval not containing zero.
    pub fn div(&self, o: &Interval) -> Interval {
        assert!(
            o.lo > 0.0 || o.hi < 0.0,
            "interval division by an interval containing zero"
        );
        let inv = Interval {
            lo: next_down(1.0 / o.hi),
            hi: next_up(1.0 / o.lo),
        };
        self.mul(&inv)
    }

    pub fn square(&self) -> Interval {
        let a = mul_down(self.lo, self.lo);
        let b = mul_down(self.hi, self.hi);
        let c = mul_up(self.lo, self.lo);
        let d = mul_up(self.hi, self.hi);
        if self.lo <= 0.0 && self.hi >= 0.0 {
            Interval {
                lo: 0.0,
                hi: fmax(c, d),
            }
        } else {
            Interval {
                lo: fmax(fmin(a, b), 0.0),
                hi: fmax(c, d),
            }
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            self.neg()
        } else {
            Interval {
                lo: 0.0,
                hi: fmax(-self.lo, self.hi),
            }
        }
    }

    /// Interval power with a non-negative exponent (repeated interval
    /// multiplication; exact for point intervals up to rounding).
    pub fn powi(&self, n: u32) -> Interval {
        let mut acc = Interval::one();
        let mut base = *self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Verified square root of a non-negative interval.
    pub fn sqrt(&self) -> Interval {
        assert!(
            self.lo >= 0.0,
            "sqrt of an interval with negative lower end"
        );
        Interval {
            lo: sqrt_down(self.lo),
            hi: sqrt_up(self.hi),
        }
    }

    /// Verified `n`-th root of a non-negative interval, `n >= 1`.
    pub fn nth_root(&self, n: u32) -> Interval {
        assert!(n >= 1);
        assert!(
            self.lo >= 0.0,
            "nth_root of an interval with negative lower end"
        );
        if n == 1 {
            return *self;
        }
        Interval {
            lo: root_down(self.lo, n),
            hi: root_up(self.hi, n),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, o: &Interval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn overlaps(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    /// Distance between intervals as sets (0 when they overlap).
    pub fn distance(&self, o: &Interval) -> f64 {
        if self.overlaps(o) {
            0.0
        } else if self.hi < o.lo {
            o.lo - self.hi
        } else {
            self.lo - o.hi
        }
    }

    pub fn distance_to(&self, x: f64) -> f64 {
        self.distance(&Interval::exact(x))
    }

    pub fn midpoint(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            self.lo * 0.5 + self.hi * 0.5
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Certainly less than: every point of self below every point of other.
    pub fn strictly_below(&self, o: &Interval) -> bool {
        self.hi < o.lo
    }

    /// Hull of two intervals.
    pub fn hull(&self, o: &Interval) -> Interval {
        Interval {
            lo: fmin(self.lo, o.lo),
            hi: fmax(self.hi, o.hi),
        }
    }

    pub fn intersect(&self, o: &Interval) -> Option<Interval> {
        let lo = fmax(self.lo, o.lo);
        let hi = fmin(self.hi, o.hi);
        if lo <= hi {
            Some(Interval { lo, hi })
        } else {
            None
        }
    }
}

fn rational_leq(f: f64, r: &BigRational) -> bool {
    if f == f64::NEG_INFINITY {
        return true;
    }
    if f == f64::INFINITY {
        return false;
    }
    match BigRational::from_float(f) {
        Some(fr) => fr <= *r,
        None => false,
    }
}

fn rational_geq(f: f64, r: &BigRational) -> bool {
    if f == f64::INFINITY {
        return true;
    }
    if f == f64::NEG_INFINITY {
        return false;
    }
    match BigRational::from_float(f) {
        Some(fr) => fr >= *r,
        None => false,
    }
}

fn sqrt_down(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut s = libm::sqrt(x);
    // verified: s <= sqrt(x)  <=>  s*s <= x, checked with upward rounding
    while mul_up(s, s) > x {
        s = next_down(s);
    }
    fmax(s, 0.0)
}

fn sqrt_up(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x == f64::INFINITY {
        return f64::INFINITY;
    }
    let mut s = libm::sqrt(x);
    while mul_down(s, s) < x {
        s = next_up(s);
    }
    s
}

fn pow_down(x: f64, n: u32) -> f64 {
    Interval::exact(x).powi(n).lo
}

fn pow_up(x: f64, n: u32) -> f64 {
    Interval::exact(x).powi(n).hi
}

fn root_seed(x: f64, n: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x == f64::INFINITY {
        return f64::MAX;
    }
    libm::exp(libm::log(x) / n as f64)
}

/// Largest-found `r` with a verified `r^n <= x`.
fn root_down(x: f64, n: u32) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut r = root_seed(x, n);
    let mut step = 1.0 + 1e-15;
    let mut guard = 0;
    while pow_up(r, n) > x {
        r /= step;
        guard += 1;
        if guard % 16 == 0 {
            step = step * step;
        }
        if guard > 2000 {
            return 0.0; // sound fallback; unreachable in practice
        }
    }
    fmax(r, 0.0)
}

/// Smallest-found `r` with a verified `r^n >= x`.
fn root_up(x: f64, n: u32) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x == f64::INFINITY {
        return f64::INFINITY;
    }
    let mut r = root_seed(x, n);
    let mut step = 1.0 + 1e-15;
    let mut guard = 0;
    while pow_down(r, n) < x {
        r *= step;
        guard += 1;
        if guard % 16 == 0 {
            step = step * step;
        }
        if guard > 2000 {
            return f64::INFINITY; // sound fallback; unreachable in practice
        }
    }
    r
}

/// Rectangular complex interval.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct CBox {
    pub re: Interval,
    pub im: Interval,
}

impl CBox {
    pub fn exact(re: f64, im: f64) -> Self {
        CBox {
            re: Interval::exact(re),
            im: Interval::exact(im),
        }
    }

    pub fn from_bigint(b: &BigInt) -> Self {
        CBox {
            re: Interval::from_bigint(b),
            im: Interval::zero(),
        }
    }

    pub fn add(&self, o: &CBox) -> CBox {
        CBox {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &CBox) -> CBox {
        CBox {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn mul(&self, o: &CBox) -> CBox {
        CBox {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn modulus(&self) -> Interval {
        let s = self.re.square().add(&self.im.square());
        // outward rounding can push the lower end a hair below zero even
        // though the true set of a sum of squares never is
        Interval::new(fmax(s.lo, 0.0), s.hi).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn division_encloses_thirds() {
        let third = Interval::one().div(&Interval::exact(3.0));
        assert!(third.lo < third.hi);
        assert!(third.contains(1.0 / 3.0));
        let r = BigRational::new(BigInt::one(), BigInt::from(3));
        let exact = Interval::from_bigrational(&r);
        assert!(third.contains_interval(&exact) || third.overlaps(&exact));
        assert!(third.width() < 1e-15);
    }

    #[test]
    fn sqrt_verified() {
        let two = Interval::exact(2.0);
        let s = two.sqrt();
        assert!(s.lo < s.hi);
        let sq = s.square();
        assert!(sq.contains(2.0));
        assert!(s.contains(core::f64::consts::SQRT_2));
        assert_eq!(Interval::zero().sqrt(), Interval::zero());
    }

    #[test]
    fn nth_root_verified() {
        let x = Interval::exact(1024.0 * 1024.0 * 1024.0); // 2^30
        let r = x.nth_root(30);
        assert!(r.contains(2.0));
        assert!(r.width() < 1e-12);
        let y = Interval::exact(17.0);
        let r5 = y.nth_root(5);
        assert!(r5.powi(5).contains(17.0));
        // monotone sanity
        assert!(r5.lo > 1.0 && r5.hi < 2.0);
    }

    #[test]
    fn mul_sign_cases() {
        let a = Interval::new(-2.0, 3.0);
        let b = Interval::new(-5.0, 7.0);
        let p = a.mul(&b);
        assert!(p.contains(-15.0) && p.contains(21.0));
        assert!(p.lo >= -15.0 - 1e-9 && p.hi <= 21.0 + 1e-9);
        let sq = Interval::new(-3.0, 2.0).square();
        assert_eq!(sq.lo, 0.0);
        assert!(sq.contains(9.0) && sq.hi < 9.0 + 1e-9);
    }

    #[test]
    fn bigint_conversion_verified() {
        let huge: BigInt = BigInt::from(10).pow(50u32) + BigInt::from(7);
        let iv = Interval::from_bigint(&huge);
        let as_rat = BigRational::from(huge.clone());
        assert!(rational_leq(iv.lo, &as_rat));
        assert!(rational_geq(iv.hi, &as_rat));
        assert!((iv.width() / iv.midpoint()) < 1e-14);
        // small integers are exact
        let small = Interval::from_bigint(&BigInt::from(12345));
        assert!(small.is_point());
        assert_eq!(small.lo, 12345.0);
    }

    #[test]
    fn rational_conversion() {
        let r = BigRational::new(BigInt::from(355), BigInt::from(113));
        let iv = Interval::from_bigrational(&r);
        assert!(iv.width() < 1e-13);
        assert!(rational_leq(iv.lo, &r) && rational_geq(iv.hi, &r));
        let neg = BigRational::new(BigInt::from(-22), BigInt::from(7));
        let iv2 = Interval::from_bigrational(&neg);
        assert!(iv2.contains(-22.0 / 7.0));
    }

    #[test]
    fn complex_modulus() {
        let z = CBox::exact(3.0, 4.0);
        let m = z.modulus();
        assert!(m.contains(5.0));
        assert!(m.width() < 1e-12);
        let w = CBox::exact(1.0, 1.0).mul(&CBox::exact(1.0, -1.0));
        assert!(w.re.contains(2.0) && w.im.contains(0.0));
    }

    #[test]
    fn set_predicates() {
        let a = Interval::new(1.0, 2.0);
        let b = Interval::new(2.5, 3.0);
        assert!(a.strictly_below(&b));
        assert!(!a.overlaps(&b));
        assert_eq!(a.distance(&b), 0.5);
        assert_eq!(a.hull(&b), Interval::new(1.0, 3.0));
        assert_eq!(a.intersect(&b), None);
        assert_eq!(
            a.intersect(&Interval::new(1.5, 4.0)),
            Some(Interval::new(1.5, 2.0))
        );
    }
}
