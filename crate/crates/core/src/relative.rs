//! Relative dynamical degrees along coordinate fibrations.  A self-map of a
//! product that keeps a set of "base" factors closed (their coordinate
//! tuples only involve base variables) descends to the base, and the degree
//! growth transverse to the fibration is measured by restricting reduced
//! iterates to fibers over random rational base points.  Restrictions are
//! computed at two independent points and must agree, which guards against
//! unlucky non-generic samples; persistent disagreement is reported rather
//! than papered over.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use rand_core::RngCore;

use crate::degseq::{lambda1_from_scalars, Lambda1Estimate};
use crate::interval::Interval;
use crate::intmat::IMat;
use crate::monomial::{dynamical_degrees, toric_semiconjugacy, MonomialError};
use crate::poly::{Budget, PolyError, Polynomial, RawPoly};
use crate::ratmap::{MapError, RationalMap};
use crate::rng::{int_in, seeded};
use crate::space::AmbientSpace;

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum RelativeError {
    #[error("base blocks invalid: {0}")]
    BadBlocks(String),
    #[error("tuple {0} mixes fiber variables into the base, so the map does not descend")]
    NotTriangular(usize),
    #[error("the projection does not intertwine the map with the induced base map")]
    VerificationFailed,
    #[error("fiber restrictions disagree between base points after resampling")]
    DegenerateFibers,
    #[error("probe needs a surface fibered over a curve, got {0}")]
    ShapeMismatch(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Monomial(#[from] MonomialError),
}

/// A verified triangular splitting: `projection . total = base . projection`.
#[derive(Clone, Debug)]
pub struct Semiconjugacy {
    pub total: RationalMap,
    pub base: RationalMap,
    pub projection: RationalMap,
    base_blocks: Vec<usize>,
    fiber_blocks: Vec<usize>,
    fiber_space: AmbientSpace,
}

impl Semiconjugacy {
    pub fn base_blocks(&self) -> &[usize] {
        &self.base_blocks
    }

    pub fn fiber_blocks(&self) -> &[usize] {
        &self.fiber_blocks
    }

    pub fn fiber_space(&self) -> &AmbientSpace {
        &self.fiber_space
    }
}

/// Split `f` along the coordinate projection onto `base_blocks`.  Succeeds
/// exactly when every base tuple of `f` uses base variables only; the
/// intertwining identity is then verified symbolically as a final guard.
pub fn build_semiconjugacy(
    f: &RationalMap,
    base_blocks: &[usize],
    budget: &Budget,
) -> Result<Semiconjugacy, RelativeError> {
    if !f.is_self_map() {
        return Err(RelativeError::BadBlocks(String::from(
            "relative degrees need a self-map",
        )));
    }
    let x = f.source().clone();
    let nf = x.num_factors();
    if base_blocks.is_empty()
        || base_blocks.windows(2).any(|w| w[0] >= w[1])
        || *base_blocks.last().unwrap() >= nf
        || base_blocks.len() == nf
    {
        return Err(RelativeError::BadBlocks(format!(
            "need a strictly ascending proper nonempty subset of the {nf} factors"
        )));
    }
    let base_set: BTreeSet<usize> = base_blocks.iter().copied().collect();
    let base_vars: BTreeSet<usize> = base_blocks.iter().flat_map(|&b| x.block_range(b)).collect();
    for &b in base_blocks {
        for comp in f.tuple(b) {
            for v in 0..x.num_vars() {
                if !base_vars.contains(&v) && comp.prim_raw().var_present(v) {
                    return Err(RelativeError::NotTriangular(b));
                }
            }
        }
    }
    let fiber_blocks: Vec<usize> = (0..nf).filter(|b| !base_set.contains(b)).collect();
    let y = AmbientSpace::product(
        &base_blocks
            .iter()
            .map(|&b| x.factors()[b])
            .collect::<Vec<_>>(),
    )
    .expect("base space");
    let fiber_space = AmbientSpace::product(
        &fiber_blocks
            .iter()
            .map(|&b| x.factors()[b])
            .collect::<Vec<_>>(),
    )
    .expect("fiber space");
    // reindex the base tuples into the coordinates of the base space
    let reindex: Vec<Option<usize>> = {
        let mut map = vec![None; x.num_vars()];
        let mut next = 0;
        for &b in base_blocks {
            for v in x.block_range(b) {
                map[v] = Some(next);
                next += 1;
            }
        }
        map
    };
    let mut g_tuples = Vec::with_capacity(base_blocks.len());
    for &b in base_blocks {
        let mut tuple = Vec::with_capacity(f.tuple(b).len());
        for comp in f.tuple(b) {
            // reindexing variables leaves the content/primitive split intact
            let mut raw = RawPoly::zero(y.num_vars());
            for (expo, coeff) in &comp.prim_raw().terms {
                let mut e = vec![0u16; y.num_vars()];
                for (v, &ev) in expo.iter().enumerate() {
                    if ev > 0 {
                        e[reindex[v].expect("triangularity was checked")] = ev;
                    }
                }
                raw.insert_add(e, coeff.clone());
            }
            tuple.push(Polynomial::from_content_prim(
                y.clone(),
                comp.content().clone(),
                raw,
            ));
        }
        g_tuples.push(tuple);
    }
    let base = RationalMap::self_map(y, g_tuples)?;
    let projection = RationalMap::projection(x, base_blocks)?;
    // final guard: the square really commutes
    let lhs = projection.compose(f, budget)?.reduce()?.0;
    let rhs = base.compose(&projection, budget)?.reduce()?.0;
    if lhs != rhs {
        return Err(RelativeError::VerificationFailed);
    }
    Ok(Semiconjugacy {
        total: f.clone(),
        base,
        projection,
        base_blocks: base_blocks.to_vec(),
        fiber_blocks,
        fiber_space,
    })
}

/// Relative degree sequence data for the transverse (codimension-one)
/// growth, together with the witnesses that produced it.
#[derive(Clone, Debug)]
pub struct RelativeDegreeData {
    /// `scalars[n]` is the reduced fiber degree of the n-th iterate
    pub scalars: Vec<BigInt>,
    /// the two agreeing base points (values per total-space variable;
    /// fiber positions hold 1 and are ignored)
    pub witnesses: [Vec<BigInt>; 2],
    pub truncated: bool,
}

/// Restrict the reduced iterates of the split map to fibers over random
/// base points and record their reduced degrees.  Two independent points
/// must produce identical sequences; after three failed attempts the
/// fibration is reported as degenerate.
pub fn relative_degrees(
    semi: &Semiconjugacy,
    n_max: usize,
    seed: u64,
    budget: &Budget,
) -> Result<RelativeDegreeData, RelativeError> {
    let x = semi.total.source();
    // reduced powers f^1..f^N, shared by all sample points
    let mut powers: Vec<RationalMap> = Vec::with_capacity(n_max);
    let mut truncated = false;
    let base = semi.total.reduce()?.0;
    if n_max >= 1 {
        powers.push(base.clone());
        for _ in 2..=n_max {
            let prev = powers.last().unwrap();
            match prev.compose(&base, budget) {
                Ok(c) => powers.push(c.reduce()?.0),
                Err(MapError::Poly(PolyError::ResourceLimit { .. })) => {
                    truncated = true;
                    break;
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    let mut rng = seeded(seed);
    for _attempt in 0..3 {
        let p1 = sample_base_point(x, semi.base_blocks(), &mut rng);
        let p2 = sample_base_point(x, semi.base_blocks(), &mut rng);
        if p1 == p2 {
            continue;
        }
        let s1 = fiber_sequence(semi, &powers, &p1)?;
        let s2 = fiber_sequence(semi, &powers, &p2)?;
        if let (Some(a), Some(b)) = (s1, s2) {
            if a == b {
                let mut scalars = vec![BigInt::one()];
                scalars.extend(a);
                return Ok(RelativeDegreeData {
                    scalars,
                    witnesses: [p1, p2],
                    truncated,
                });
            }
        }
    }
    Err(RelativeError::DegenerateFibers)
}

/// Certified/heuristic transverse growth estimate from relative degrees.
pub fn relative_lambda1(data: &RelativeDegreeData) -> Lambda1Estimate {
    lambda1_from_scalars(&data.scalars)
}

/// The declared constant in relative submultiplicativity,
/// deg(Y) * l * (fiber degree bound)^l, where the degrees are the Segre
/// degrees of the product spaces.  Small and explicit for every supported
/// shape: 1 for a surface over a curve, 4 for (P^1)^3 over (P^1)^2.
pub fn submult_constant(semi: &Semiconjugacy) -> BigInt {
    let x = semi.total.source();
    let base_dims: Vec<usize> = semi.base_blocks().iter().map(|&b| x.factors()[b]).collect();
    let l = base_dims.iter().sum::<usize>();
    let fiber_bound = segre_degree(semi.fiber_space().factors());
    segre_degree(&base_dims) * BigInt::from(l) * Pow::pow(&fiber_bound, l as u32)
}

/// Degree of the Segre embedding of a product of projective spaces: the
/// multinomial coefficient dim! / prod(factor!).
fn segre_degree(factors: &[usize]) -> BigInt {
    let dim: usize = factors.iter().sum();
    let mut num = BigInt::one();
    for i in 2..=dim {
        num *= BigInt::from(i);
    }
    for &k in factors {
        for i in 2..=k {
            num /= BigInt::from(i);
        }
    }
    num
}

/// Exact `d_(n+m) <= c * d_n * d_m` over every recorded pair; on failure
/// returns the first offending `(n, m)`.
pub fn check_relative_submultiplicative(
    data: &RelativeDegreeData,
    c: &BigInt,
) -> Result<(), (usize, usize)> {
    for n in 1..data.scalars.len() {
        for m in n..data.scalars.len() {
            if n + m >= data.scalars.len() {
                break;
            }
            if data.scalars[n + m] > c * &data.scalars[n] * &data.scalars[m] {
                return Err((n, m));
            }
        }
    }
    Ok(())
}

/// Verdict of the surface fibration probe.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FibrationVerdict {
    /// the degrees admit a fibration over a curve
    Consistent,
    /// certified `lambda_2 < lambda_1`, impossible for any map with an
    /// invariant fibration over a curve
    ContradictsFibration,
}

/// A surface map fibered over a curve satisfies `lambda_2 >= lambda_1`:
/// `lambda_1 = max(lambda_1(g), lambda_1(f|pi))` while `lambda_2` is the
/// product of those two factors, each at least 1.  A certified violation
/// therefore rules the candidate fibration shape out.
pub fn surface_primitivity_probe(
    semi: &Semiconjugacy,
    lambda1: &Interval,
    lambda2: &Interval,
) -> Result<FibrationVerdict, RelativeError> {
    let x = semi.total.source();
    let l: usize = semi.base_blocks().iter().map(|&b| x.factors()[b]).sum();
    if x.dim() != 2 || l != 1 {
        return Err(RelativeError::ShapeMismatch(format!(
            "total dimension {} over base dimension {l}",
            x.dim()
        )));
    }
    if lambda2.hi < lambda1.lo {
        Ok(FibrationVerdict::ContradictsFibration)
    } else {
        Ok(FibrationVerdict::Consistent)
    }
}

fn sample_base_point(
    x: &AmbientSpace,
    base_blocks: &[usize],
    rng: &mut impl RngCore,
) -> Vec<BigInt> {
    let mut point = vec![BigInt::one(); x.num_vars()];
    for &b in base_blocks {
        for v in x.block_range(b) {
            point[v] = BigInt::from(int_in(rng, 1, 9));
        }
    }
    point
}

/// Degrees of the reduced fiber restrictions of the given powers at one
/// base point; `None` when the point degenerates some tuple to zero.
fn fiber_sequence(
    semi: &Semiconjugacy,
    powers: &[RationalMap],
    point: &[BigInt],
) -> Result<Option<Vec<BigInt>>, RelativeError> {
    let mut out = Vec::with_capacity(powers.len());
    for fp in powers {
        match restrict_to_fiber(semi, fp, point)? {
            Some(h) => out.push(h.reduce()?.0.degree_matrix().max_row_sum()),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Substitute the base coordinates of one iterate by exact integer values,
/// producing the induced coordinate map on the fiber space.
fn restrict_to_fiber(
    semi: &Semiconjugacy,
    power: &RationalMap,
    point: &[BigInt],
) -> Result<Option<RationalMap>, RelativeError> {
    let x = semi.total.source();
    let z = semi.fiber_space();
    let reindex: Vec<Option<usize>> = {
        let mut map = vec![None; x.num_vars()];
        let mut next = 0;
        for &b in semi.fiber_blocks() {
            for v in x.block_range(b) {
                map[v] = Some(next);
                next += 1;
            }
        }
        map
    };
    let mut tuples = Vec::with_capacity(semi.fiber_blocks().len());
    for &b in semi.fiber_blocks() {
        let mut tuple = Vec::with_capacity(power.tuple(b).len());
        for comp in power.tuple(b) {
            let mut raw = RawPoly::zero(z.num_vars());
            for (expo, coeff) in &comp.prim_raw().terms {
                let mut c = coeff * comp.content();
                let mut e = vec![0u16; z.num_vars()];
                for (v, &ev) in expo.iter().enumerate() {
                    if ev == 0 {
                        continue;
                    }
                    match reindex[v] {
                        Some(fv) => e[fv] = ev,
                        None => c *= Pow::pow(&point[v], ev as u32),
                    }
                }
                raw.insert_add(e, c);
            }
            tuple.push(Polynomial::from_raw(z.clone(), raw)?);
        }
        if tuple.iter().all(|p| p.is_zero()) {
            return Ok(None);
        }
        tuples.push(tuple);
    }
    match RationalMap::self_map(z.clone(), tuples) {
        Ok(map) => Ok(Some(map)),
        // mixed multidegrees cannot happen (substitution preserves fiber
        // degrees termwise), but a zero tuple slipping through means the
        // point was degenerate
        Err(MapError::ZeroTuple(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// The product-formula right-hand side: `max_j base[j] * fiber[p - j]`
/// over all splittings available in the two degree lists.
pub fn product_formula_max(base: &[Interval], fiber: &[Interval], p: usize) -> Interval {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (j, bj) in base.iter().enumerate() {
        if j > p {
            break;
        }
        let q = p - j;
        if q < fiber.len() {
            let prod = bj.mul(&fiber[q]);
            lo = f64::max(lo, prod.lo);
            hi = f64::max(hi, prod.hi);
        }
    }
    assert!(hi.is_finite(), "empty splitting range");
    Interval::new(lo, hi)
}

/// For a toric triangular pair, compare every total dynamical degree with
/// the product-formula maximum of base and fiber degrees.  Returns the
/// `(total, formula)` enclosure pairs; the theory says each pair encloses
/// a common value, so disjoint pairs disprove the model.
pub fn check_toric_product_formula(
    a: &IMat,
    b: &IMat,
    eps: f64,
) -> Result<Vec<(Interval, Interval)>, RelativeError> {
    let (g, r) = toric_semiconjugacy(a, b).ok_or_else(|| {
        RelativeError::BadBlocks(String::from(
            "the projection rows do not define an invariant quotient",
        ))
    })?;
    let lam_total = dynamical_degrees(a, eps)?;
    let lam_base = dynamical_degrees(&g, eps)?;
    let lam_fiber = dynamical_degrees(&r, eps)?;
    Ok((0..lam_total.len())
        .map(|p| (lam_total[p], product_formula_max(&lam_base, &lam_fiber, p)))
        .collect())
}

/// Saturated integer left-eigenspaces of an exponent matrix: each entry
/// `(eigenvalue, rows)` gives projection rows `B` with `B A = eigenvalue B`,
/// i.e. a toric fibration invariant under the map.  An empty answer means
/// no such fibration exists.
pub fn integer_eigen_fibrations(a: &IMat) -> Vec<(BigInt, IMat)> {
    assert!(a.is_square() && a.rows() > 0);
    let chi = a.char_poly();
    let mut eigenvalues: Vec<BigInt> = Vec::new();
    // integer roots divide the lowest nonzero coefficient
    let m = chi.iter().take_while(|c| c.is_zero()).count();
    if m > 0 {
        eigenvalues.push(BigInt::zero());
    }
    let c0 = chi[m].clone();
    let mut d = BigInt::one();
    while &d * &d <= c0.abs() {
        if (&c0 % &d).is_zero() {
            for cand in [d.clone(), -&d, &c0.abs() / &d, -(&c0.abs() / &d)] {
                if eval_int(&chi, &cand).is_zero() && !eigenvalues.contains(&cand) {
                    eigenvalues.push(cand);
                }
            }
        }
        d += 1;
    }
    eigenvalues.sort();
    let mut out = Vec::new();
    for lam in eigenvalues {
        let mut shifted = a.clone();
        for i in 0..a.rows() {
            let t = &lam * BigInt::one();
            shifted[(i, i)] -= t;
        }
        let rows = shifted.transpose().kernel_basis().transpose();
        if rows.rows() > 0 {
            out.push((lam, rows));
        }
    }
    out
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}
