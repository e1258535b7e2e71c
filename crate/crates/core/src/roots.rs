//! Certified moduli of the complex roots of integer polynomials.
//!
//! Pipeline: exact squarefree decomposition (Yun, over Z with primitive
//! parts), float Durand–Kerner per squarefree factor, then a posteriori
//! certification.  For an approximation `w` of a degree-`n` polynomial `P`,
//! the disk `B(w, n |P(w)/P'(w)|)` always contains a root (the classical
//! bound via `P'/P = sum 1/(w - z_j)`), with the radius evaluated in
//! outward-rounded complex interval arithmetic from the *exact* integer
//! coefficients.  When the `n` disks of a factor are pairwise disjoint each
//! must contain exactly one root, which yields certified modulus enclosures;
//! multiplicities come from the squarefree exponents.  Nothing about
//! correctness depends on how well Durand–Kerner converged — bad
//! approximations only make certification fail and the driver retry.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::interval::{fabs, CBox, Interval};

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum RootsError {
    #[error("root certification did not converge: {0}")]
    NonConvergence(alloc::string::String),
    #[error("the zero polynomial has no well-defined root set")]
    ZeroPolynomial,
}

/// One certified root disk of a squarefree factor.
#[derive(Clone, Debug)]
pub struct RootDisk {
    pub center_re: f64,
    pub center_im: f64,
    /// certified upper bound for the distance from the center to the root
    pub radius: f64,
    /// certified enclosure of the root's absolute value
    pub modulus: Interval,
    /// multiplicity of the root in the original polynomial
    pub multiplicity: usize,
    /// the squarefree factor this root belongs to (ascending coefficients)
    pub factor: Vec<BigInt>,
}

impl RootDisk {
    /// Exact certificate that the disk's unique root is real and positive.
    /// The chord `[center - radius, center + radius]` is computed in exact
    /// rational arithmetic, so it lies inside the disk; every other root of
    /// the factor is certifiably outside the disk, hence a sign change (or a
    /// vanishing endpoint) pins the disk's own root to the positive reals.
    pub fn certify_real_positive(&self) -> bool {
        let (c, r) = match (
            BigRational::from_float(self.center_re),
            BigRational::from_float(self.radius),
        ) {
            (Some(c), Some(r)) => (c, r),
            _ => return false,
        };
        let a = &c - &r;
        let b = &c + &r;
        if !a.is_positive() {
            return false;
        }
        let fa = eval_at_rational(&self.factor, &a);
        let fb = eval_at_rational(&self.factor, &b);
        if fa.is_zero() || fb.is_zero() {
            // a chord endpoint is itself the (rational, positive) root
            return true;
        }
        fa.is_negative() != fb.is_negative()
    }
}

/// Exact evaluation of an integer polynomial at a rational point.
pub fn eval_at_rational(p: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from(c.clone());
    }
    acc
}

pub(crate) fn trim_zeros(p: &mut Vec<BigInt>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

pub(crate) fn deg(p: &[BigInt]) -> usize {
    debug_assert!(!p.is_empty() && !p.last().unwrap().is_zero());
    p.len() - 1
}

pub(crate) fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    if p.len() <= 1 {
        return vec![];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i as u64))
        .collect()
}

fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_zero() || c.is_one() {
        return p.to_vec();
    }
    p.iter().map(|x| x / &c).collect()
}

fn normalize_sign(mut p: Vec<BigInt>) -> Vec<BigInt> {
    if p.last().map(|c| c.is_negative()).unwrap_or(false) {
        for c in p.iter_mut() {
            *c = -&*c;
        }
    }
    p
}

/// Exact division in Z[x]; `None` if `d` does not divide `p`.
pub(crate) fn exact_div_uni(p: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    if d.is_empty() {
        return None;
    }
    let mut rem: Vec<BigInt> = p.to_vec();
    trim_zeros(&mut rem);
    if rem.is_empty() {
        return Some(vec![]);
    }
    let dd = deg(d);
    if rem.len() < d.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    let lc = d.last().unwrap().clone();
    while rem.len() >= d.len() {
        let (c, r) = rem.last().unwrap().div_rem(&lc);
        if !r.is_zero() {
            return None;
        }
        let shift = rem.len() - d.len();
        q[shift] = c.clone();
        for (i, dc) in d.iter().enumerate() {
            let t = &c * dc;
            rem[shift + i] -= t;
        }
        debug_assert!(rem.last().unwrap().is_zero());
        rem.pop();
        trim_zeros(&mut rem);
        if rem.is_empty() {
            // all remaining quotient coefficients (below shift) stay zero
            return Some(q);
        }
    }
    None
}

/// Primitive positive-leading gcd in Z[x] via the subresultant PRS.
pub(crate) fn gcd_uni(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim_zeros(&mut a);
    trim_zeros(&mut b);
    if a.is_empty() {
        return normalize_sign(primitive(&b));
    }
    if b.is_empty() {
        return normalize_sign(primitive(&a));
    }
    let ca = content(&a);
    let cb = content(&b);
    let c = ca.gcd(&cb);
    let mut r0 = primitive(&a);
    let mut r1 = primitive(&b);
    if deg(&r0) < deg(&r1) {
        core::mem::swap(&mut r0, &mut r1);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        if r1.is_empty() {
            break;
        }
        if deg(&r1) == 0 {
            // nonzero constant remainder: primitive parts are coprime
            r0 = vec![BigInt::one()];
            break;
        }
        let d = deg(&r0) - deg(&r1);
        let prem = pseudo_rem_uni(&r0, &r1);
        let divisor = &g * num_traits::Pow::pow(h.clone(), d as u32);
        let r2: Vec<BigInt> = prem
            .iter()
            .map(|x| {
                let (q, r) = x.div_rem(&divisor);
                debug_assert!(r.is_zero(), "subresultant division is exact");
                q
            })
            .collect();
        g = r1.last().unwrap().clone();
        h = if d == 0 {
            h
        } else {
            let (q, r) = num_traits::Pow::pow(g.clone(), d as u32)
                .div_rem(&num_traits::Pow::pow(h.clone(), d as u32 - 1));
            debug_assert!(r.is_zero());
            q
        };
        r0 = r1;
        r1 = r2;
        trim_zeros(&mut r1);
    }
    let mut out = primitive(&r0);
    out = normalize_sign(out);
    // re-attach the integer content gcd
    if !c.is_one() {
        for x in out.iter_mut() {
            *x = &*x * &c;
        }
    }
    out
}

fn pseudo_rem_uni(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let da = deg(a);
    let db = deg(b);
    debug_assert!(da >= db && db >= 1);
    let lcb = b.last().unwrap().clone();
    let mut r: Vec<BigInt> = a.to_vec();
    for i in (db..=da).rev() {
        let top = r[i].clone();
        for x in r.iter_mut() {
            *x = &*x * &lcb;
        }
        if !top.is_zero() {
            let shift = i - db;
            for (j, bc) in b.iter().enumerate() {
                let t = &top * bc;
                r[shift + j] -= t;
            }
        }
        debug_assert!(r[i].is_zero());
        r.truncate(i);
    }
    trim_zeros(&mut r);
    r
}

/// Yun's squarefree decomposition: returns `(factor, multiplicity)` pairs
/// with each factor primitive, squarefree and pairwise coprime, such that
/// the product of `factor^multiplicity` equals the input up to a nonzero
/// integer constant.
pub fn squarefree_decomposition(p: &[BigInt]) -> Vec<(Vec<BigInt>, usize)> {
    let mut f = primitive(p);
    trim_zeros(&mut f);
    assert!(!f.is_empty(), "squarefree decomposition of zero");
    f = normalize_sign(f);
    if deg(&f) == 0 {
        return vec![];
    }
    let fp = derivative(&f);
    let d = gcd_uni(&f, &fp);
    let mut b = exact_div_uni(&f, &d).expect("gcd divides");
    let mut c = exact_div_uni(&fp, &d).expect("gcd divides derivative");
    let mut out = Vec::new();
    let mut i = 1usize;
    loop {
        let bp = derivative(&b);
        let mut z: Vec<BigInt> = Vec::with_capacity(c.len().max(bp.len()));
        for k in 0..c.len().max(bp.len()) {
            let mut t = BigInt::zero();
            if k < c.len() {
                t += &c[k];
            }
            if k < bp.len() {
                t -= &bp[k];
            }
            z.push(t);
        }
        trim_zeros(&mut z);
        let g = gcd_uni(&b, &z);
        if deg(&g) > 0 {
            out.push((g.clone(), i));
        }
        b = exact_div_uni(&b, &g).expect("Yun factor divides");
        if z.is_empty() {
            c = vec![];
        } else {
            c = exact_div_uni(&z, &g).expect("Yun factor divides z");
        }
        if b.len() <= 1 {
            break;
        }
        i += 1;
    }
    debug_assert_eq!(
        out.iter().map(|(g, m)| m * deg(g)).sum::<usize>(),
        deg(&f),
        "squarefree multiplicities must add up"
    );
    out
}

// --- float complex helpers --------------------------------------------------

#[derive(Clone, Copy, Debug)]
struct Cplx {
    re: f64,
    im: f64,
}

impl Cplx {
    fn new(re: f64, im: f64) -> Self {
        Cplx { re, im }
    }

    fn sub(self, o: Cplx) -> Cplx {
        Cplx::new(self.re - o.re, self.im - o.im)
    }

    fn mul(self, o: Cplx) -> Cplx {
        Cplx::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }

    fn div(self, o: Cplx) -> Cplx {
        let d = o.re * o.re + o.im * o.im;
        Cplx::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }

    fn abs(self) -> f64 {
        libm::hypot(self.re, self.im)
    }
}

fn horner_f64(coeffs: &[f64], z: Cplx) -> Cplx {
    let mut acc = Cplx::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc.mul(z);
        acc.re += c;
    }
    acc
}

fn horner_cbox(coeffs: &[BigInt], z: &CBox) -> CBox {
    let mut acc = CBox::exact(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(&CBox::from_bigint(c));
    }
    acc
}

/// Durand–Kerner sweep driver; deterministic start configuration.
fn durand_kerner(coeffs: &[f64], attempt: usize, sweeps: usize) -> Vec<Cplx> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lc).collect();
    let cauchy = 1.0 + monic[..n].iter().map(|c| fabs(*c)).fold(0.0, f64::max);
    let mut z: Vec<Cplx> = (0..n)
        .map(|j| {
            let angle =
                core::f64::consts::TAU * (j as f64) / (n as f64) + 0.4 + 0.37 * attempt as f64;
            Cplx::new(
                cauchy * 0.9 * libm::cos(angle),
                cauchy * 0.9 * libm::sin(angle),
            )
        })
        .collect();
    for _ in 0..sweeps {
        let mut max_step = 0.0f64;
        for j in 0..n {
            let mut denom = Cplx::new(1.0, 0.0);
            for i in 0..n {
                if i != j {
                    denom = denom.mul(z[j].sub(z[i]));
                }
            }
            let val = horner_f64(&monic, z[j]);
            let step = val.div(denom);
            z[j] = z[j].sub(step);
            max_step = f64::max(max_step, step.abs());
        }
        if max_step < 1e-15 * cauchy.max(1.0) {
            break;
        }
    }
    z
}

/// Certify disks for one squarefree factor; `None` when certification fails
/// (overlapping disks or vanishing derivative enclosure).
// negated comparisons are load-bearing: NaN must fail certification
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn certify_factor(factor: &[BigInt], mult: usize, attempt: usize) -> Option<Vec<RootDisk>> {
    let n = deg(factor);
    let fpoly: Vec<f64> = factor
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::MAX))
        .collect();
    if fpoly.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let sweeps = 400 * (attempt + 1);
    let approx = durand_kerner(&fpoly, attempt, sweeps);
    let dfactor = derivative(factor);
    let mut disks: Vec<RootDisk> = Vec::with_capacity(n);
    let nn = Interval::exact(n as f64);
    for w in &approx {
        if !w.re.is_finite() || !w.im.is_finite() {
            return None;
        }
        let wb = CBox::exact(w.re, w.im);
        let pv = horner_cbox(factor, &wb).modulus();
        let dv = horner_cbox(&dfactor, &wb).modulus();
        if !(dv.lo > 0.0) {
            return None; // derivative enclosure touches zero: refine
        }
        let radius = nn.mul(&pv).div(&dv).hi;
        if !radius.is_finite() {
            return None;
        }
        let center_mod = wb.modulus();
        let lo = f64::max(0.0, center_mod.lo - radius);
        let hi = center_mod.hi + radius;
        disks.push(RootDisk {
            center_re: w.re,
            center_im: w.im,
            radius,
            modulus: Interval::new(
                crate::interval::next_down(lo).max(0.0),
                crate::interval::next_up(hi),
            ),
            multiplicity: mult,
            factor: factor.to_vec(),
        });
    }
    // pairwise disjointness makes "at least one root per disk" into
    // "exactly one root per disk"
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            let dx = Interval::exact(disks[i].center_re).sub(&Interval::exact(disks[j].center_re));
            let dy = Interval::exact(disks[i].center_im).sub(&Interval::exact(disks[j].center_im));
            let d2 = dx.square().add(&dy.square());
            let dist = Interval::new(f64::max(d2.lo, 0.0), d2.hi).sqrt();
            let rsum = crate::interval::next_up(disks[i].radius + disks[j].radius);
            if !(dist.lo > rsum) {
                return None;
            }
        }
    }
    Some(disks)
}

/// Certified moduli (with multiplicity) of all complex roots of `p`.
/// The enclosures are genuine: every true root modulus lies in its interval.
pub fn root_moduli(p: &[BigInt], eps: f64) -> Result<Vec<RootDisk>, RootsError> {
    let mut p = p.to_vec();
    trim_zeros(&mut p);
    if p.is_empty() {
        return Err(RootsError::ZeroPolynomial);
    }
    if deg(&p) == 0 {
        return Ok(vec![]);
    }
    // strip zero roots exactly
    let zero_mult = p.iter().take_while(|c| c.is_zero()).count();
    let stripped: Vec<BigInt> = p[zero_mult..].to_vec();
    let mut out: Vec<RootDisk> = Vec::new();
    if zero_mult > 0 {
        out.push(RootDisk {
            center_re: 0.0,
            center_im: 0.0,
            radius: 0.0,
            modulus: Interval::zero(),
            multiplicity: zero_mult,
            factor: vec![BigInt::zero(), BigInt::one()],
        });
    }
    if deg(&stripped) > 0 {
        for (factor, mult) in squarefree_decomposition(&stripped) {
            if deg(&factor) == 1 {
                // the root -c0/c1 is exactly known; no iteration needed
                let root = BigRational::new(-factor[0].clone(), factor[1].clone());
                let enc = Interval::from_bigrational(&root);
                let modulus = Interval::from_bigrational(&root.abs());
                out.push(RootDisk {
                    center_re: enc.midpoint(),
                    center_im: 0.0,
                    radius: crate::interval::next_up(enc.width()),
                    modulus,
                    multiplicity: mult,
                    factor,
                });
                continue;
            }
            let mut done = false;
            for attempt in 0..5 {
                if let Some(mut disks) = certify_factor(&factor, mult, attempt) {
                    let ok = disks
                        .iter()
                        .all(|d| d.modulus.width() <= eps * f64::max(1.0, d.modulus.midpoint()));
                    if ok {
                        out.append(&mut disks);
                        done = true;
                        break;
                    }
                }
            }
            if !done {
                return Err(RootsError::NonConvergence(alloc::format!(
                    "could not certify factor of degree {} to eps {:e}",
                    deg(&factor),
                    eps
                )));
            }
        }
    }
    // descending by modulus midpoint; ties broken by center for determinism
    out.sort_by(|a, b| {
        b.modulus
            .midpoint()
            .partial_cmp(&a.modulus.midpoint())
            .unwrap()
            .then(b.center_re.partial_cmp(&a.center_re).unwrap())
            .then(b.center_im.partial_cmp(&a.center_im).unwrap())
    });
    Ok(out)
}

/// Certified spectral data of a polynomial (normally a characteristic
/// polynomial): all root moduli plus the radius enclosure.
#[derive(Clone, Debug)]
pub struct SpectralReport {
    /// ascending coefficients of the polynomial the report describes
    pub char_poly: Vec<BigInt>,
    /// certified disks sorted by descending modulus
    pub moduli: Vec<RootDisk>,
    /// enclosure of the maximum root modulus
    pub radius: Interval,
}

pub fn spectral_report(char_poly: &[BigInt], eps: f64) -> Result<SpectralReport, RootsError> {
    let moduli = root_moduli(char_poly, eps)?;
    let radius = moduli
        .iter()
        .map(|d| d.modulus)
        .reduce(|a, b| Interval::new(f64::max(a.lo, b.lo), f64::max(a.hi, b.hi)))
        .unwrap_or_else(|| Interval::exact(0.0));
    let mut p = char_poly.to_vec();
    trim_zeros(&mut p);
    Ok(SpectralReport {
        char_poly: p,
        moduli,
        radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn uni_gcd_and_division() {
        // (x-1)(x+2) = x^2 + x - 2 ; (x-1)(x-3) = x^2 - 4x + 3
        let a = ip(&[-2, 1, 1]);
        let b = ip(&[3, -4, 1]);
        assert_eq!(gcd_uni(&a, &b), ip(&[-1, 1]));
        assert_eq!(exact_div_uni(&a, &ip(&[-1, 1])).unwrap(), ip(&[2, 1]));
        assert_eq!(exact_div_uni(&a, &ip(&[3, 1])), None);
        // contents combine
        let a2 = ip(&[-4, 2, 2]);
        let b2 = ip(&[6, -8, 2]);
        assert_eq!(gcd_uni(&a2, &b2), ip(&[-2, 2]));
    }

    #[test]
    fn squarefree_of_cube_times_linear() {
        // (x-2)^2 (x+1) = x^3 - 3x^2 + 0x + 4
        let p = ip(&[4, 0, -3, 1]);
        let dec = squarefree_decomposition(&p);
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (ip(&[1, 1]), 1));
        assert_eq!(dec[1], (ip(&[-2, 1]), 2));
        // squarefree input comes back whole
        let q = ip(&[-2, 0, 0, 1]);
        let dq = squarefree_decomposition(&q);
        assert_eq!(dq, vec![(q.clone(), 1)]);
    }

    #[test]
    fn golden_ratio_moduli() {
        // x^2 - 3x + 1: roots (3 +- sqrt 5)/2
        let p = ip(&[1, -3, 1]);
        let disks = root_moduli(&p, 1e-9).unwrap();
        assert_eq!(disks.len(), 2);
        let phi2 = (3.0 + libm::sqrt(5.0)) / 2.0;
        assert!(disks[0].modulus.contains(phi2));
        assert!(disks[1].modulus.contains(1.0 / phi2));
        assert!(disks[0].modulus.width() < 1e-9);
        assert!(disks[0].certify_real_positive());
    }

    #[test]
    fn repeated_roots_carry_multiplicity() {
        let p = ip(&[4, 0, -3, 1]); // (x-2)^2 (x+1)
        let disks = root_moduli(&p, 1e-9).unwrap();
        assert_eq!(disks.len(), 2);
        assert_eq!(disks[0].multiplicity, 2);
        assert!(disks[0].modulus.contains(2.0));
        assert_eq!(disks[1].multiplicity, 1);
        assert!(disks[1].modulus.contains(1.0));
    }

    #[test]
    fn zero_roots_exact() {
        // x^3 - x^2 = x^2 (x - 1)
        let p = ip(&[0, 0, -1, 1]);
        let disks = root_moduli(&p, 1e-9).unwrap();
        assert_eq!(disks.len(), 2);
        assert!(disks[0].modulus.contains(1.0));
        let zero = disks
            .iter()
            .find(|d| d.modulus == Interval::zero())
            .unwrap();
        assert_eq!(zero.multiplicity, 2);
    }

    #[test]
    fn cube_root_cluster() {
        // x^3 - 2: three distinct roots, all of modulus 2^(1/3)
        let p = ip(&[-2, 0, 0, 1]);
        let disks = root_moduli(&p, 1e-9).unwrap();
        assert_eq!(disks.len(), 3);
        let r = libm::cbrt(2.0);
        for d in &disks {
            assert!(d.modulus.contains(r), "{:?} should contain {r}", d.modulus);
        }
        // exactly one is real positive
        let real_count = disks.iter().filter(|d| d.certify_real_positive()).count();
        assert_eq!(real_count, 1);
    }

    #[test]
    fn conjugate_pair_on_unit_circle() {
        let p = ip(&[1, 0, 1]); // x^2 + 1
        let disks = root_moduli(&p, 1e-9).unwrap();
        assert_eq!(disks.len(), 2);
        for d in &disks {
            assert!(d.modulus.contains(1.0));
            assert!(!d.certify_real_positive());
        }
    }

    #[test]
    fn lehmer_polynomial_radius() {
        // x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1 (Salem)
        let p = ip(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let rep = spectral_report(&p, 1e-9).unwrap();
        assert!(rep.radius.lo > 1.176_27 && rep.radius.hi < 1.176_29);
        assert_eq!(rep.moduli.len(), 10);
        // Salem: everything except the leading root and its inverse sits on
        // the unit circle
        for d in &rep.moduli[1..9] {
            assert!(d.modulus.contains(1.0));
        }
        assert!(rep.moduli[9].modulus.contains(1.0 / 1.176_280_818_259_92));
        // product of all moduli must contain |constant term| = 1
        let mut prod = Interval::one();
        for d in &rep.moduli {
            prod = prod.mul(&d.modulus.powi(d.multiplicity as u32));
        }
        assert!(prod.contains(1.0));
    }

    #[test]
    fn impossible_eps_is_an_error() {
        let p = ip(&[1, -3, 1]);
        match root_moduli(&p, 1e-30) {
            Err(RootsError::NonConvergence(_)) => {}
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    #[test]
    fn exact_rational_evaluation() {
        let p = ip(&[1, -3, 1]);
        let x = BigRational::new(BigInt::from(1), BigInt::from(2));
        // 1/4 - 3/2 + 1 = -1/4
        assert_eq!(
            eval_at_rational(&p, &x),
            BigRational::new(BigInt::from(-1), BigInt::from(4))
        );
    }
}
