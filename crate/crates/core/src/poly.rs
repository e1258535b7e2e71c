//! Exact sparse polynomial arithmetic.
//!
//! Two layers:
//!
//! * [`RawPoly`] (crate-private): a bare term map `exponent vector -> BigInt`
//!   with no homogeneity bookkeeping.  The parser accumulates into it and the
//!   GCD engine runs on it (dehomogenized intermediates are not homogeneous).
//! * [`Polynomial`] (public): multihomogeneous over an [`AmbientSpace`], kept
//!   in content/primitive-part split form.  The invariants — content >= 0,
//!   primitive term map with coefficient gcd 1, per-block homogeneity — hold
//!   structurally after every operation; products stay split exactly thanks
//!   to Gauss's lemma (primitive x primitive = primitive).
//!
//! Exponent vectors are `Vec<u16>` of length `space.num_vars()`; the natural
//! lexicographic order on them is the canonical term order (inside one
//! multihomogeneous polynomial the grading ties, so graded-lex degenerates to
//! plain lex).  `BTreeMap` iteration ascending therefore ends at the leading
//! term; printing walks in reverse.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::space::AmbientSpace;

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum PolyError {
    #[error("operands live on different ambient spaces")]
    SpaceMismatch,
    #[error("not multihomogeneous: {0}")]
    Homogeneity(String),
    #[error("resource limit exceeded: {what} reached {reached}, cap {limit}")]
    ResourceLimit {
        what: &'static str,
        limit: u64,
        reached: u64,
    },
}

/// Caps enforced during polynomial multiplication and map composition.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_terms: usize,
    pub max_coeff_bits: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_terms: 1_000_000,
            max_coeff_bits: 10_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_terms: usize::MAX,
            max_coeff_bits: u64::MAX,
        }
    }

    fn check_terms(&self, n: usize) -> Result<(), PolyError> {
        if n > self.max_terms {
            return Err(PolyError::ResourceLimit {
                what: "term count",
                limit: self.max_terms as u64,
                reached: n as u64,
            });
        }
        Ok(())
    }

    fn check_coeff(&self, c: &BigInt) -> Result<(), PolyError> {
        let bits = c.bits();
        if bits > self.max_coeff_bits {
            return Err(PolyError::ResourceLimit {
                what: "coefficient bits",
                limit: self.max_coeff_bits,
                reached: bits,
            });
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// RawPoly
// ---------------------------------------------------------------------------

/// Bare sparse polynomial over Z in `nvars` variables.  Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct RawPoly {
    pub(crate) nvars: usize,
    pub(crate) terms: BTreeMap<Vec<u16>, BigInt>,
}

impl RawPoly {
    pub(crate) fn zero(nvars: usize) -> Self {
        RawPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub(crate) fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub(crate) fn monomial(nvars: usize, expo: Vec<u16>, c: BigInt) -> Self {
        debug_assert_eq!(expo.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(expo, c);
        }
        p
    }

    pub(crate) fn variable(nvars: usize, v: usize) -> Self {
        let mut expo = vec![0u16; nvars];
        expo[v] = 1;
        Self::monomial(nvars, expo, BigInt::one())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn insert_add(&mut self, expo: Vec<u16>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(expo) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &RawPoly, scale: &BigInt) {
        debug_assert_eq!(self.nvars, other.nvars);
        if scale.is_zero() {
            return;
        }
        for (e, c) in &other.terms {
            self.insert_add(e.clone(), c * scale);
        }
    }

    pub(crate) fn add(&self, other: &RawPoly) -> RawPoly {
        let mut r = self.clone();
        r.add_scaled(other, &BigInt::one());
        r
    }

    pub(crate) fn sub(&self, other: &RawPoly) -> RawPoly {
        let mut r = self.clone();
        r.add_scaled(other, &BigInt::from(-1));
        r
    }

    pub(crate) fn neg(&self) -> RawPoly {
        RawPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub(crate) fn scale(&self, k: &BigInt) -> RawPoly {
        if k.is_zero() {
            return RawPoly::zero(self.nvars);
        }
        RawPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub(crate) fn mul(&self, other: &RawPoly, budget: &Budget) -> Result<RawPoly, PolyError> {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = RawPoly::zero(self.nvars);
        // iterate the smaller operand on the outside: better map locality
        let (small, big) = if self.num_terms() <= other.num_terms() {
            (self, other)
        } else {
            (other, self)
        };
        for (ea, ca) in &small.terms {
            for (eb, cb) in &big.terms {
                let mut e = Vec::with_capacity(self.nvars);
                for (a, b) in ea.iter().zip(eb.iter()) {
                    let s = *a as u32 + *b as u32;
                    let s: u16 = s.try_into().map_err(|_| PolyError::ResourceLimit {
                        what: "exponent",
                        limit: u16::MAX as u64,
                        reached: s as u64,
                    })?;
                    e.push(s);
                }
                out.insert_add(e, ca * cb);
                budget.check_terms(out.num_terms())?;
            }
        }
        for c in out.terms.values() {
            budget.check_coeff(c)?;
        }
        Ok(out)
    }

    pub(crate) fn pow(&self, n: u32, budget: &Budget) -> Result<RawPoly, PolyError> {
        let mut acc = RawPoly::constant(self.nvars, BigInt::one());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, budget)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, budget)?;
            }
        }
        Ok(acc)
    }

    /// gcd of all coefficients; non-negative, zero iff the polynomial is zero.
    pub(crate) fn int_content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub(crate) fn div_int_exact(&self, k: &BigInt) -> RawPoly {
        debug_assert!(!k.is_zero());
        RawPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let (q, r) = c.div_rem(k);
                    debug_assert!(r.is_zero(), "inexact integer division in div_int_exact");
                    (e.clone(), q)
                })
                .collect(),
        }
    }

    /// Leading term in the lexicographic order (greatest exponent vector).
    pub(crate) fn leading(&self) -> Option<(&Vec<u16>, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact division: returns `self / d` if `d` divides `self` over Z.
    pub(crate) fn exact_div(&self, d: &RawPoly) -> Option<RawPoly> {
        debug_assert_eq!(self.nvars, d.nvars);
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(RawPoly::zero(self.nvars));
        }
        let (ed, cd) = d.leading().expect("nonzero divisor");
        let (ed, cd) = (ed.clone(), cd.clone());
        let mut rem = self.clone();
        let mut quot = RawPoly::zero(self.nvars);
        while let Some((er, cr)) = rem.leading() {
            let mut eq = Vec::with_capacity(self.nvars);
            for (r, d) in er.iter().zip(ed.iter()) {
                if r < d {
                    return None;
                }
                eq.push(r - d);
            }
            let (cq, crem) = cr.div_rem(&cd);
            if !crem.is_zero() {
                return None;
            }
            // rem -= (cq * x^eq) * d ; the leading term cancels by construction
            for (e2, c2) in &d.terms {
                let mut e = Vec::with_capacity(self.nvars);
                for (a, b) in eq.iter().zip(e2.iter()) {
                    e.push(a + b);
                }
                rem.insert_add(e, -(&cq * c2));
            }
            quot.insert_add(eq, cq);
        }
        Some(quot)
    }

    pub(crate) fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v] as u32).max().unwrap_or(0)
    }

    /// Max and min over terms of the summed exponents in `range`.
    pub(crate) fn block_degree_span(&self, range: core::ops::Range<usize>) -> Option<(u32, u32)> {
        let mut lo = u32::MAX;
        let mut hi = 0u32;
        for e in self.terms.keys() {
            let d: u32 = e[range.clone()].iter().map(|&x| x as u32).sum();
            lo = lo.min(d);
            hi = hi.max(d);
        }
        if self.terms.is_empty() {
            None
        } else {
            Some((lo, hi))
        }
    }

    /// Componentwise minimum of all exponent vectors: the largest monomial
    /// dividing every term.
    pub(crate) fn min_exponents(&self) -> Vec<u16> {
        let mut m = vec![u16::MAX; self.nvars];
        for e in self.terms.keys() {
            for (mi, &ei) in m.iter_mut().zip(e.iter()) {
                *mi = (*mi).min(ei);
            }
        }
        if self.terms.is_empty() {
            vec![0; self.nvars]
        } else {
            m
        }
    }

    pub(crate) fn div_monomial(&self, m: &[u16]) -> RawPoly {
        RawPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let e2: Vec<u16> = e
                        .iter()
                        .zip(m.iter())
                        .map(|(a, b)| {
                            debug_assert!(a >= b);
                            a - b
                        })
                        .collect();
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    pub(crate) fn mul_monomial(&self, m: &[u16]) -> RawPoly {
        RawPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let e2: Vec<u16> = e.iter().zip(m.iter()).map(|(a, b)| a + b).collect();
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    pub(crate) fn var_present(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] > 0)
    }

    pub(crate) fn derivative(&self, v: usize) -> RawPoly {
        let mut out = RawPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            let k = e2[v];
            e2[v] = k - 1;
            out.insert_add(e2, c * BigInt::from(k));
        }
        out
    }

    pub(crate) fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = BigRational::from(c.clone());
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= rat_pow(&point[v], k);
                }
            }
            acc += t;
        }
        acc
    }

    pub(crate) fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        debug_assert_eq!(point.len(), self.nvars);
        let pb = BigInt::from(p);
        let mut acc: u64 = 0;
        for (e, c) in &self.terms {
            let mut t = bigint_mod_u64(c, &pb, p);
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = mul_mod(t, pow_mod(point[v] % p, k as u64, p), p);
                }
            }
            acc = add_mod(acc, t, p);
        }
        acc
    }

    /// Dense coefficient list with respect to variable `v`: index `i` holds the
    /// coefficient of `v^i`, itself a polynomial (with the `v`-exponent zeroed).
    pub(crate) fn coeffs_wrt(&self, v: usize) -> Vec<RawPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![RawPoly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let i = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            out[i].insert_add(e2, c.clone());
        }
        out
    }

    pub(crate) fn from_coeffs_wrt(nvars: usize, v: usize, coeffs: &[RawPoly]) -> RawPoly {
        let mut out = RawPoly::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            for (e, k) in &c.terms {
                debug_assert_eq!(e[v], 0);
                let mut e2 = e.clone();
                e2[v] = i as u16;
                out.insert_add(e2, k.clone());
            }
        }
        out
    }
}

fn rat_pow(x: &BigRational, k: u16) -> BigRational {
    let mut acc = BigRational::one();
    let mut base = x.clone();
    let mut k = k;
    while k > 0 {
        if k & 1 == 1 {
            acc *= &base;
        }
        k >>= 1;
        if k > 0 {
            base = &base * &base;
        }
    }
    acc
}

fn bigint_mod_u64(c: &BigInt, pb: &BigInt, _p: u64) -> u64 {
    use num_traits::ToPrimitive;
    c.mod_floor(pb).to_u64().expect("reduced residue fits u64")
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        exp >>= 1;
        base = mul_mod(base, base, p);
    }
    acc
}

// ---------------------------------------------------------------------------
// Polynomial
// ---------------------------------------------------------------------------

/// Multihomogeneous polynomial over an ambient space, stored as
/// `content * primitive_part` with `content >= 0` (zero iff the polynomial is
/// zero) and the primitive part's coefficient gcd equal to 1.
///
/// The zero polynomial carries the conventional all-zero multidegree and is
/// absorbing for sums and products.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    space: AmbientSpace,
    multidegree: Vec<u32>,
    content: BigInt,
    prim: RawPoly,
}

impl Polynomial {
    pub(crate) fn from_raw(space: AmbientSpace, raw: RawPoly) -> Result<Self, PolyError> {
        debug_assert_eq!(raw.nvars, space.num_vars());
        if raw.is_zero() {
            return Ok(Self::zero(space));
        }
        let mut multidegree = Vec::with_capacity(space.num_factors());
        for b in 0..space.num_factors() {
            let (lo, hi) = raw
                .block_degree_span(space.block_range(b))
                .expect("nonzero polynomial");
            if lo != hi {
                return Err(PolyError::Homogeneity(alloc::format!(
                    "degrees in block {} range from {} to {}",
                    space.var_name(space.block_offset(b)),
                    lo,
                    hi
                )));
            }
            multidegree.push(hi);
        }
        let content = raw.int_content();
        let prim = raw.div_int_exact(&content);
        Ok(Polynomial {
            space,
            multidegree,
            content,
            prim,
        })
    }

    pub fn zero(space: AmbientSpace) -> Self {
        let n = space.num_vars();
        let blocks = space.num_factors();
        Polynomial {
            space,
            multidegree: vec![0; blocks],
            content: BigInt::zero(),
            prim: RawPoly::zero(n),
        }
    }

    pub fn constant(space: AmbientSpace, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(space);
        }
        let n = space.num_vars();
        let blocks = space.num_factors();
        let content = c.abs();
        let sign = if c.is_negative() { -1 } else { 1 };
        Polynomial {
            space,
            multidegree: vec![0; blocks],
            content,
            prim: RawPoly::constant(n, BigInt::from(sign)),
        }
    }

    pub fn variable(space: AmbientSpace, v: usize) -> Self {
        let n = space.num_vars();
        let raw = RawPoly::variable(n, v);
        Self::from_raw(space, raw).expect("a variable is multihomogeneous")
    }

    /// Single monomial `c * x^expo`; errors only through the homogeneity check
    /// (never fails: one term is always multihomogeneous).
    pub fn monomial(space: AmbientSpace, expo: Vec<u16>, c: BigInt) -> Self {
        let n = space.num_vars();
        let raw = RawPoly::monomial(n, expo, c);
        Self::from_raw(space, raw).expect("a monomial is multihomogeneous")
    }

    pub fn space(&self) -> &AmbientSpace {
        &self.space
    }

    pub fn is_zero(&self) -> bool {
        self.content.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.multidegree.iter().all(|&d| d == 0)
    }

    /// A single term?
    pub fn is_monomial(&self) -> bool {
        self.prim.num_terms() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.prim.num_terms()
    }

    pub fn multidegree(&self) -> &[u32] {
        &self.multidegree
    }

    /// Total degree: sum of the per-block degrees.
    pub fn degree(&self) -> u32 {
        self.multidegree.iter().sum()
    }

    pub fn content(&self) -> &BigInt {
        &self.content
    }

    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        Polynomial {
            space: self.space.clone(),
            multidegree: self.multidegree.clone(),
            content: BigInt::one(),
            prim: self.prim.clone(),
        }
    }

    pub(crate) fn raw(&self) -> RawPoly {
        self.prim.scale(&self.content)
    }

    pub(crate) fn prim_raw(&self) -> &RawPoly {
        &self.prim
    }

    pub(crate) fn from_content_prim(space: AmbientSpace, content: BigInt, prim: RawPoly) -> Self {
        debug_assert!(!content.is_negative());
        debug_assert!(prim.int_content().is_one() || prim.is_zero());
        Self::from_raw(space.clone(), prim)
            .map(|p| Polynomial { content, ..p })
            .expect("primitive factor of a multihomogeneous polynomial is multihomogeneous")
    }

    fn check_space(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.space != other.space {
            return Err(PolyError::SpaceMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_space(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.multidegree != other.multidegree {
            return Err(PolyError::Homogeneity(alloc::format!(
                "cannot add multidegrees {:?} and {:?}",
                self.multidegree,
                other.multidegree
            )));
        }
        let mut raw = self.raw();
        raw.add_scaled(&other.prim, &other.content);
        Self::from_raw(self.space.clone(), raw)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            space: self.space.clone(),
            multidegree: self.multidegree.clone(),
            content: self.content.clone(),
            prim: self.prim.neg(),
        }
    }

    pub fn mul(&self, other: &Polynomial, budget: &Budget) -> Result<Polynomial, PolyError> {
        self.check_space(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.space.clone()));
        }
        // Gauss: the product of primitive polynomials is primitive, so the
        // content of the product is exactly the product of contents.
        let prim = self.prim.mul(&other.prim, budget)?;
        let content = &self.content * &other.content;
        budget.check_coeff(&content)?;
        let multidegree = self
            .multidegree
            .iter()
            .zip(other.multidegree.iter())
            .map(|(a, b)| a + b)
            .collect();
        Ok(Polynomial {
            space: self.space.clone(),
            multidegree,
            content,
            prim,
        })
    }

    pub fn pow(&self, n: u32, budget: &Budget) -> Result<Polynomial, PolyError> {
        if n == 0 {
            return Ok(Self::constant(self.space.clone(), BigInt::one()));
        }
        if self.is_zero() {
            return Ok(Self::zero(self.space.clone()));
        }
        let prim = self.prim.pow(n, budget)?;
        let content = num_traits::Pow::pow(self.content.clone(), n);
        budget.check_coeff(&content)?;
        let multidegree = self.multidegree.iter().map(|d| d * n).collect();
        Ok(Polynomial {
            space: self.space.clone(),
            multidegree,
            content,
            prim,
        })
    }

    /// Exact division over Z; `None` when `other` does not divide `self`.
    pub fn exact_div(&self, other: &Polynomial) -> Option<Polynomial> {
        if self.space != other.space || other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.space.clone()));
        }
        let (qc, rc) = self.content.div_rem(&other.content);
        if !rc.is_zero() {
            return None;
        }
        let qp = self.prim.exact_div(&other.prim)?;
        // primitive / primitive is primitive (Gauss again)
        Some(
            Self::from_raw(self.space.clone(), qp)
                .map(|p| Polynomial {
                    content: qc * p.content,
                    ..p
                })
                .expect("quotient of multihomogeneous polynomials is multihomogeneous"),
        )
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> BigRational {
        self.prim.eval_rational(point) * BigRational::from(self.content.clone())
    }

    /// Degree in the variables of block `b` (equal for every term).
    pub fn degree_in_block(&self, b: usize) -> u32 {
        self.multidegree[b]
    }

    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.prim.terms.iter().rev() {
            let full = c * &self.content;
            let neg = full.is_negative();
            let abs = full.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            let trivial_coeff = abs.is_one();
            let is_constant_term = e.iter().all(|&k| k == 0);
            if !trivial_coeff || is_constant_term {
                parts.push(abs.to_string());
            }
            for (v, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = self.space.var_name(v);
                if k == 1 {
                    parts.push(name);
                } else {
                    parts.push(alloc::format!("{name}^{k}"));
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}
