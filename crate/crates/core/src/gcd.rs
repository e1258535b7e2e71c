//! Multivariate GCD over Z via subresultant pseudo-remainder sequences with
//! content/primitive-part recursion.
//!
//! Three exact accelerations sit in front of the PRS:
//!
//! 1. *Monomial stripping*: after dividing each input by the largest monomial
//!    dividing it, no single variable divides either input, so the monomial
//!    part of the gcd is known and the cofactors have full support.
//! 2. *Dehomogenization*: divisors of multihomogeneous polynomials are
//!    multihomogeneous, so once no block's last variable divides the inputs,
//!    setting those variables to 1, taking the gcd, and rehomogenizing each
//!    term to the per-block maximum degree is exact.  This kills one variable
//!    per block before the recursion starts.
//! 3. *Modular coprimality filter*: specialize every variable except the main
//!    one at a pseudorandom point mod p = 2^61 - 1.  If both specialized
//!    leading coefficients survive, any common divisor g keeps its main-var
//!    degree under the specialization (lc(g) | lc(a)), so a constant
//!    univariate gcd mod p *proves* the primitive parts coprime.  A vanishing
//!    leading coefficient or a nonconstant modular gcd only falls back to the
//!    full PRS; correctness never rests on the random points.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::poly::{add_mod, mul_mod, pow_mod, Budget, PolyError, Polynomial, RawPoly};

const FILTER_PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

/// GCD of two multihomogeneous polynomials, normalized so the leading
/// coefficient (in the canonical term order) is positive.  `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, PolyError> {
    if a.space() != b.space() {
        return Err(PolyError::SpaceMismatch);
    }
    let space = a.space().clone();
    if a.is_zero() {
        return Ok(normalize_poly(b.clone()));
    }
    if b.is_zero() {
        return Ok(normalize_poly(a.clone()));
    }
    let budget = Budget::default();
    let g_int = a.content().gcd(b.content());

    let pa = a.prim_raw();
    let pb = b.prim_raw();
    let ma = pa.min_exponents();
    let mb = pb.min_exponents();
    let mg: Vec<u16> = ma.iter().zip(mb.iter()).map(|(x, y)| *x.min(y)).collect();
    let sa = pa.div_monomial(&ma);
    let sb = pb.div_monomial(&mb);

    let prim_gcd = if is_unit(&sa) || is_unit(&sb) {
        RawPoly::constant(sa.nvars, BigInt::one())
    } else if sa == sb || sa == sb.neg() {
        sa.clone()
    } else {
        // dehomogenize each block at its last variable (stripping made sure
        // those variables divide neither input), run the general recursion,
        // rehomogenize
        let last_vars: Vec<usize> = (0..space.num_factors())
            .map(|bl| space.block_range(bl).end - 1)
            .collect();
        let da = set_vars_to_one(&sa, &last_vars);
        let db = set_vars_to_one(&sb, &last_vars);
        let g = raw_gcd(&da, &db, &budget)?;
        rehomogenize(&g, &space, &last_vars)
    };

    let mut raw = prim_gcd.mul_monomial(&mg).scale(&g_int);
    if leading_negative(&raw) {
        raw = raw.neg();
    }
    Ok(Polynomial::from_raw(space, raw)
        .expect("gcd of multihomogeneous polynomials is multihomogeneous"))
}

/// Fold [`poly_gcd`] over a tuple.  Once the primitive part collapses to 1
/// only integer contents can shrink further.
pub fn tuple_gcd(polys: &[Polynomial]) -> Result<Polynomial, PolyError> {
    let mut iter = polys.iter();
    let first = match iter.next() {
        Some(p) => p.clone(),
        None => panic!("tuple_gcd of an empty tuple"),
    };
    let mut acc = normalize_poly(first);
    for p in iter {
        if acc.is_constant() && !acc.is_zero() {
            // only the content can change from here on
            if acc.content().is_one() {
                return Ok(acc);
            }
            let c = acc.content().gcd(p.content());
            acc = Polynomial::constant(acc.space().clone(), c);
            continue;
        }
        acc = poly_gcd(&acc, p)?;
    }
    Ok(acc)
}

fn normalize_poly(p: Polynomial) -> Polynomial {
    if p.is_zero() {
        return p;
    }
    if leading_negative(p.prim_raw()) {
        p.neg()
    } else {
        p
    }
}

fn leading_negative(p: &RawPoly) -> bool {
    p.leading().map(|(_, c)| c.is_negative()).unwrap_or(false)
}

fn is_unit(p: &RawPoly) -> bool {
    p.num_terms() == 1
        && p.leading()
            .map(|(e, c)| e.iter().all(|&k| k == 0) && (c.is_one() || (-c).is_one()))
            .unwrap_or(false)
}

fn set_vars_to_one(p: &RawPoly, vars: &[usize]) -> RawPoly {
    let mut out = RawPoly::zero(p.nvars);
    for (e, c) in &p.terms {
        let mut e2 = e.clone();
        for &v in vars {
            e2[v] = 0;
        }
        out.insert_add(e2, c.clone());
    }
    out
}

/// Rehomogenize per block: pad every term with the block's last variable up
/// to the per-block maximum degree of `p`.
fn rehomogenize(p: &RawPoly, space: &crate::space::AmbientSpace, last_vars: &[usize]) -> RawPoly {
    let mut block_deg = vec![0u32; space.num_factors()];
    for e in p.terms.keys() {
        for bl in 0..space.num_factors() {
            let d: u32 = e[space.block_range(bl)].iter().map(|&x| x as u32).sum();
            block_deg[bl] = block_deg[bl].max(d);
        }
    }
    let mut out = RawPoly::zero(p.nvars);
    for (e, c) in &p.terms {
        let mut e2 = e.clone();
        for bl in 0..space.num_factors() {
            let d: u32 = e[space.block_range(bl)].iter().map(|&x| x as u32).sum();
            let pad = block_deg[bl] - d;
            e2[last_vars[bl]] = pad as u16;
        }
        out.insert_add(e2, c.clone());
    }
    out
}

/// General recursive GCD over Z on raw term maps (no homogeneity assumed).
pub(crate) fn raw_gcd(a: &RawPoly, b: &RawPoly, budget: &Budget) -> Result<RawPoly, PolyError> {
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    if is_constant(a) || is_constant(b) {
        return Ok(RawPoly::constant(
            a.nvars,
            a.int_content().gcd(&b.int_content()),
        ));
    }
    let v = match pick_main_var(a, b) {
        Some(v) => v,
        None => {
            // no variable occurs in both: common divisors are integers
            return Ok(RawPoly::constant(
                a.nvars,
                a.int_content().gcd(&b.int_content()),
            ));
        }
    };

    let ca = coeffs_content(&a.coeffs_wrt(v), budget)?;
    let cb = coeffs_content(&b.coeffs_wrt(v), budget)?;
    let ppa = a.exact_div(&ca).expect("content divides");
    let ppb = b.exact_div(&cb).expect("content divides");
    let c = raw_gcd(&ca, &cb, budget)?;

    if modular_coprime(&ppa, &ppb, v) {
        return Ok(c);
    }

    let g_raw = subresultant_prs(&ppa, &ppb, v, budget)?;
    // primitive part wrt v
    let gc = coeffs_content(&g_raw.coeffs_wrt(v), budget)?;
    let g = g_raw.exact_div(&gc).expect("content divides");
    c.mul(&g, budget)
}

fn is_constant(p: &RawPoly) -> bool {
    p.terms.keys().all(|e| e.iter().all(|&k| k == 0))
}

/// Variable occurring with positive degree in both, preferring small degrees.
fn pick_main_var(a: &RawPoly, b: &RawPoly) -> Option<usize> {
    let mut best: Option<(u32, u32, usize)> = None;
    for v in 0..a.nvars {
        let da = a.degree_in(v);
        let db = b.degree_in(v);
        if da == 0 || db == 0 {
            continue;
        }
        let key = (da.min(db), da + db, v);
        if best
            .map(|(m, s, _)| (da.min(db), da + db) < (m, s))
            .unwrap_or(true)
        {
            best = Some(key);
        }
    }
    best.map(|(_, _, v)| v)
}

fn coeffs_content(coeffs: &[RawPoly], budget: &Budget) -> Result<RawPoly, PolyError> {
    let mut acc: Option<RawPoly> = None;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => c.clone(),
            Some(g) => {
                if is_unit(&g) {
                    return Ok(RawPoly::constant(c.nvars, BigInt::one()));
                }
                raw_gcd(&g, c, budget)?
            }
        });
    }
    Ok(acc.expect("content of a nonzero polynomial"))
}

// --- modular coprimality filter -------------------------------------------

struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// True only when the primitive parts are *provably* coprime with respect to
/// `v`.  False means "undecided".
fn modular_coprime(ppa: &RawPoly, ppb: &RawPoly, v: usize) -> bool {
    let p = FILTER_PRIME;
    // deterministic points: reproducibility without threading an RNG here
    let mut gen = SplitMix(0xD1B5_4A32_D192_ED03 ^ (v as u64));
    let ca = ppa.coeffs_wrt(v);
    let cb = ppb.coeffs_wrt(v);
    'trial: for _ in 0..4 {
        let mut point = vec![0u64; ppa.nvars];
        for (i, slot) in point.iter_mut().enumerate() {
            if i == v {
                continue;
            }
            *slot = 1 + gen.next() % (p - 2);
        }
        let ua: Vec<u64> = ca.iter().map(|c| c.eval_mod(&point, p)).collect();
        let ub: Vec<u64> = cb.iter().map(|c| c.eval_mod(&point, p)).collect();
        if *ua.last().unwrap() == 0 || *ub.last().unwrap() == 0 {
            continue 'trial; // leading coefficient vanished: point unusable
        }
        if uni_gcd_degree_mod_p(&ua, &ub, p) == 0 {
            return true;
        }
        return false; // nonzero modular gcd degree: run the real PRS
    }
    false
}

/// Degree of gcd of two univariate polynomials over F_p (dense, ascending).
fn uni_gcd_degree_mod_p(a: &[u64], b: &[u64], p: u64) -> usize {
    let mut r0: Vec<u64> = a.to_vec();
    let mut r1: Vec<u64> = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !r1.is_empty() {
        let r2 = uni_rem_mod_p(&r0, &r1, p);
        r0 = r1;
        r1 = r2;
    }
    r0.len().saturating_sub(1)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn uni_rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb_inv = pow_mod(b[db], p - 2, p);
    while r.len() > db {
        let lr = *r.last().unwrap();
        if lr != 0 {
            let q = mul_mod(lr, lb_inv, p);
            let shift = r.len() - 1 - db;
            for (j, &bc) in b.iter().enumerate() {
                let sub = mul_mod(q, bc, p);
                let idx = shift + j;
                r[idx] = add_mod(r[idx], p - sub, p);
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
        if r.len() <= db {
            break;
        }
    }
    r
}

// --- subresultant PRS ------------------------------------------------------

fn deg(coeffs: &[RawPoly]) -> usize {
    coeffs.len().saturating_sub(1)
}

/// Last nonzero remainder of the subresultant PRS of `a`, `b` with respect to
/// `v`; its primitive part (wrt `v`) is the gcd of the primitive inputs.
fn subresultant_prs(
    a: &RawPoly,
    b: &RawPoly,
    v: usize,
    budget: &Budget,
) -> Result<RawPoly, PolyError> {
    let nv = a.nvars;
    let (mut r0, mut r1) = {
        let ca = a.coeffs_wrt(v);
        let cb = b.coeffs_wrt(v);
        if deg(&ca) >= deg(&cb) {
            (ca, cb)
        } else {
            (cb, ca)
        }
    };
    let one = RawPoly::constant(nv, BigInt::one());
    let mut g = one.clone();
    let mut h = one.clone();
    loop {
        let d = deg(&r0) - deg(&r1);
        let prem = pseudo_rem(&r0, &r1, nv, budget)?;
        if prem.iter().all(|c| c.is_zero()) {
            return Ok(RawPoly::from_coeffs_wrt(nv, v, &r1));
        }
        let divisor = g.mul(&h.pow(d as u32, budget)?, budget)?;
        let r2: Vec<RawPoly> = prem
            .iter()
            .map(|c| {
                c.exact_div(&divisor)
                    .expect("subresultant division is exact")
            })
            .collect();
        g = r1[deg(&r1)].clone();
        h = if d == 0 {
            h
        } else {
            g.pow(d as u32, budget)?
                .exact_div(&h.pow(d as u32 - 1, budget)?)
                .expect("subresultant h-division is exact")
        };
        r0 = r1;
        r1 = r2;
        let mut t = r1.clone();
        while t.last().map(|c| c.is_zero()).unwrap_or(false) {
            t.pop();
        }
        r1 = t;
        if deg(&r1) == 0 {
            // nonzero constant (wrt v) remainder: primitive inputs are coprime
            return Ok(RawPoly::from_coeffs_wrt(nv, v, &r1));
        }
    }
}

/// `lc(b)^(deg a - deg b + 1) * a  mod  b`, dense in the main variable.
fn pseudo_rem(
    a: &[RawPoly],
    b: &[RawPoly],
    nvars: usize,
    budget: &Budget,
) -> Result<Vec<RawPoly>, PolyError> {
    let da = deg(a);
    let db = deg(b);
    debug_assert!(da >= db && db >= 1);
    let lcb = &b[db];
    let mut r: Vec<RawPoly> = a.to_vec();
    for i in (db..=da).rev() {
        let top = r[i].clone();
        for c in r.iter_mut() {
            *c = c.mul(lcb, budget)?;
        }
        if !top.is_zero() {
            let shift = i - db;
            for (j, bc) in b.iter().enumerate() {
                let t = top.mul(bc, budget)?;
                r[shift + j] = r[shift + j].sub(&t);
            }
        }
        debug_assert!(r[i].is_zero());
        r.truncate(i);
        if r.is_empty() {
            r.push(RawPoly::zero(nvars));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::space::AmbientSpace;

    fn p2() -> AmbientSpace {
        AmbientSpace::projective(2).unwrap()
    }

    fn pp(space: &AmbientSpace, s: &str) -> Polynomial {
        parse_polynomial(space, s).unwrap()
    }

    /// Division oracle: g is *the* gcd of (a, b) iff g divides both and the
    /// claimed cofactors are coprime-by-construction inputs.
    fn assert_gcd(space: &AmbientSpace, a: &str, b: &str, want: &str) {
        let (a, b, want) = (pp(space, a), pp(space, b), pp(space, want));
        let g = poly_gcd(&a, &b).unwrap();
        assert_eq!(g, want, "gcd({a}, {b})");
        if !g.is_zero() {
            assert!(a.exact_div(&g).is_some(), "gcd must divide the first input");
            assert!(
                b.exact_div(&g).is_some(),
                "gcd must divide the second input"
            );
        }
    }

    #[test]
    fn common_factor_extracted() {
        let s = p2();
        assert_gcd(&s, "(x0 + x1)^2*x2", "(x0 + x1)*x1", "x0 + x1");
        assert_gcd(&s, "x0^2 - x1^2", "x0^2 + 2*x0*x1 + x1^2", "x0 + x1");
        assert_gcd(&s, "x0*x1*x2", "x1^2*x2", "x1*x2");
    }

    #[test]
    fn integer_content_only() {
        let s = p2();
        assert_gcd(&s, "6*x0 + 6*x1", "10*x0 - 10*x1", "2");
        assert_gcd(&s, "4*x0^2", "6*x1*x2", "2");
    }

    #[test]
    fn coprime_inputs() {
        let s = p2();
        assert_gcd(&s, "x0^2 + x1*x2", "x1^3 + x2^3", "1");
        assert_gcd(&s, "x0", "x1 + x2", "1");
    }

    #[test]
    fn zero_handling() {
        let s = p2();
        let zero = Polynomial::zero(s.clone());
        let p = pp(&s, "-x0*x1");
        let g = poly_gcd(&zero, &p).unwrap();
        assert_eq!(
            g,
            pp(&s, "x0*x1"),
            "normalized to positive leading coefficient"
        );
        assert_eq!(poly_gcd(&zero, &zero).unwrap(), zero);
    }

    #[test]
    fn sign_normalization() {
        let s = p2();
        assert_gcd(&s, "-2*x0*x1 - 2*x1^2", "-2*x0^2 - 2*x0*x1", "2*x0 + 2*x1");
    }

    #[test]
    fn multihomogeneous_blocks() {
        let s = AmbientSpace::product(&[1, 1]).unwrap();
        assert_gcd(&s, "x0*y0*(x0*y1 + x1*y0)", "x0^2*y0^2", "x0*y0");
        assert_gcd(&s, "x0*y0 + x1*y1", "x0*y1 + x1*y0", "1");
    }

    #[test]
    fn randomized_products_recover_factor() {
        // deterministic "random" cases: g * a vs g * b with a, b coprime
        let s = p2();
        let cases = [
            ("x0^2 + x1^2 + x2^2", "x0 + 2*x1", "x1 - 3*x2"),
            ("x0*x1 - x2^2", "x0^2 + x1*x2", "x1^2 + x0*x2"),
            ("2*x0 - x1", "x0^3 + x1^3 + x2^3", "x0*x1*x2"),
        ];
        let budget = Budget::default();
        for (g, a, b) in cases {
            let (g, a, b) = (pp(&s, g), pp(&s, a), pp(&s, b));
            let ga = g.mul(&a, &budget).unwrap();
            let gb = g.mul(&b, &budget).unwrap();
            let got = poly_gcd(&ga, &gb).unwrap();
            // the division oracle pins the answer: got | ga, got | gb, g | got
            assert!(ga.exact_div(&got).is_some());
            assert!(gb.exact_div(&got).is_some());
            assert!(
                got.exact_div(&g).is_some(),
                "computed gcd must contain the planted factor"
            );
            assert_eq!(got.degree(), g.degree(), "planted cofactors are coprime");
        }
    }

    #[test]
    fn tuple_fold() {
        let s = p2();
        let polys = [pp(&s, "x0*x1*x2"), pp(&s, "x0*x1^2"), pp(&s, "x0^2*x1")];
        assert_eq!(tuple_gcd(&polys).unwrap(), pp(&s, "x0*x1"));
        let coprime = [pp(&s, "x0"), pp(&s, "x1"), pp(&s, "x2")];
        assert_eq!(tuple_gcd(&coprime).unwrap(), pp(&s, "1"));
        let contents = [pp(&s, "6*x0"), pp(&s, "10*x1"), pp(&s, "15*x2")];
        assert_eq!(tuple_gcd(&contents).unwrap(), pp(&s, "1"));
    }

    #[test]
    fn dense_powers_stay_fast() {
        // coprime dense inputs of moderate degree: the filter should certify
        // coprimality without running the full PRS (this test mostly guards
        // against accidental exponential paths)
        let s = p2();
        let budget = Budget::default();
        let a = pp(&s, "x0 + x1 + x2").pow(8, &budget).unwrap();
        let b = pp(&s, "x0 - x1 + 2*x2").pow(8, &budget).unwrap();
        let a = a.add(&pp(&s, "x0^8")).unwrap();
        let b = b.add(&pp(&s, "x1^8")).unwrap();
        assert_eq!(poly_gcd(&a, &b).unwrap(), pp(&s, "1"));
    }
}
