//! Rational maps between products of projective spaces, given in coordinates:
//! one tuple of multihomogeneous polynomials per target factor, all components
//! of a tuple sharing a common multidegree.  Composition is exact symbolic
//! substitution; reduction divides each tuple by the gcd of its components,
//! which is what makes iterated degree sequences meaningful.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand_core::RngCore;

use crate::gcd::tuple_gcd;
use crate::intmat::{subsets_lex, IMat};
use crate::poly::{Budget, PolyError, Polynomial};
use crate::rng::int_in;
use crate::space::AmbientSpace;

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum MapError {
    #[error("source/target space mismatch")]
    SpaceMismatch,
    #[error("map shape invalid: {0}")]
    Shape(String),
    #[error("tuple {0} is identically zero")]
    ZeroTuple(usize),
    #[error("components of tuple {0} have mismatched multidegrees")]
    MixedDegrees(usize),
    #[error("dominance test inconclusive for this map")]
    DominanceInconclusive,
    #[error("conjugating matrix is singular")]
    SingularConjugator,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A rational map given by coordinate tuples, one per target factor.
#[derive(Clone, PartialEq, Debug)]
pub struct RationalMap {
    source: AmbientSpace,
    target: AmbientSpace,
    components: Vec<Vec<Polynomial>>,
}

impl RationalMap {
    pub fn new(
        source: AmbientSpace,
        target: AmbientSpace,
        components: Vec<Vec<Polynomial>>,
    ) -> Result<Self, MapError> {
        if components.len() != target.num_factors() {
            return Err(MapError::Shape(format!(
                "expected {} coordinate tuples, got {}",
                target.num_factors(),
                components.len()
            )));
        }
        for (b, tuple) in components.iter().enumerate() {
            if tuple.len() != target.block_len(b) {
                return Err(MapError::Shape(format!(
                    "tuple {} must have {} components, got {}",
                    b,
                    target.block_len(b),
                    tuple.len()
                )));
            }
            let mut common: Option<&[u32]> = None;
            for c in tuple {
                if c.space() != &source {
                    return Err(MapError::SpaceMismatch);
                }
                if c.is_zero() {
                    continue;
                }
                match common {
                    None => common = Some(c.multidegree()),
                    Some(md) => {
                        if md != c.multidegree() {
                            return Err(MapError::MixedDegrees(b));
                        }
                    }
                }
            }
            if common.is_none() {
                return Err(MapError::ZeroTuple(b));
            }
        }
        Ok(RationalMap {
            source,
            target,
            components,
        })
    }

    /// Self-map constructor: source and target coincide.
    pub fn self_map(
        space: AmbientSpace,
        components: Vec<Vec<Polynomial>>,
    ) -> Result<Self, MapError> {
        RationalMap::new(space.clone(), space, components)
    }

    pub fn identity(space: AmbientSpace) -> Self {
        let blocks: Vec<usize> = (0..space.num_factors()).collect();
        RationalMap::projection(space, &blocks).expect("identity projection")
    }

    /// Coordinate projection onto the product of the selected factors
    /// (indices strictly ascending).
    pub fn projection(space: AmbientSpace, blocks: &[usize]) -> Result<Self, MapError> {
        if blocks.is_empty() || blocks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(MapError::Shape(String::from(
                "projection needs a strictly ascending nonempty list of factors",
            )));
        }
        if *blocks.last().unwrap() >= space.num_factors() {
            return Err(MapError::Shape(String::from(
                "projection factor index out of range",
            )));
        }
        let target = AmbientSpace::product(
            &blocks
                .iter()
                .map(|&b| space.factors()[b])
                .collect::<Vec<_>>(),
        )
        .expect("projection target");
        let components: Vec<Vec<Polynomial>> = blocks
            .iter()
            .map(|&b| {
                space
                    .block_range(b)
                    .map(|v| Polynomial::variable(space.clone(), v))
                    .collect()
            })
            .collect();
        RationalMap::new(space, target, components)
    }

    /// Linear self-map of a single projective space, `x_i -> sum_j m[i][j] x_j`.
    pub fn linear_map(space: AmbientSpace, m: &IMat) -> Result<Self, MapError> {
        if space.num_factors() != 1 {
            return Err(MapError::Shape(String::from(
                "linear maps are for a single projective factor",
            )));
        }
        let n = space.num_vars();
        if m.rows() != n || m.cols() != n {
            return Err(MapError::Shape(format!(
                "conjugating matrix must be {n} x {n}"
            )));
        }
        let mut tuple = Vec::with_capacity(n);
        for i in 0..n {
            let mut p = Polynomial::zero(space.clone());
            for j in 0..n {
                let c = m[(i, j)].clone();
                if !c.is_zero() {
                    let mono = Polynomial::variable(space.clone(), j).mul(
                        &Polynomial::constant(space.clone(), c),
                        &Budget::unlimited(),
                    )?;
                    p = p.add(&mono)?;
                }
            }
            tuple.push(p);
        }
        RationalMap::self_map(space, vec![tuple])
    }

    pub fn source(&self) -> &AmbientSpace {
        &self.source
    }

    pub fn target(&self) -> &AmbientSpace {
        &self.target
    }

    pub fn is_self_map(&self) -> bool {
        self.source == self.target
    }

    pub fn tuples(&self) -> &[Vec<Polynomial>] {
        &self.components
    }

    pub fn tuple(&self, b: usize) -> &[Polynomial] {
        &self.components[b]
    }

    /// Multidegree of tuple `b` in the source blocks, read off any nonzero
    /// component.
    pub fn tuple_multidegree(&self, b: usize) -> &[u32] {
        self.components[b]
            .iter()
            .find(|c| !c.is_zero())
            .expect("constructor guarantees a nonzero component")
            .multidegree()
    }

    /// Degree matrix: row per target tuple, column per source block.
    pub fn degree_matrix(&self) -> IMat {
        let rows: Vec<Vec<i64>> = (0..self.target.num_factors())
            .map(|b| {
                self.tuple_multidegree(b)
                    .iter()
                    .map(|&d| d as i64)
                    .collect()
            })
            .collect();
        IMat::from_rows(&rows)
    }

    /// `self` after `inner`: `(self.compose(inner))(x) = self(inner(x))`.
    pub fn compose(&self, inner: &RationalMap, budget: &Budget) -> Result<Self, MapError> {
        if inner.target != self.source {
            return Err(MapError::SpaceMismatch);
        }
        let src = inner.source.clone();
        // substitution list indexed by this map's source variables
        let subs: Vec<&Polynomial> = (0..self.source.num_factors())
            .flat_map(|b| inner.components[b].iter())
            .collect();
        let mut cache: Vec<Vec<Polynomial>> = subs
            .iter()
            .map(|s| {
                vec![
                    Polynomial::constant(src.clone(), BigInt::from(1)),
                    (*s).clone(),
                ]
            })
            .collect();
        let mut out = Vec::with_capacity(self.components.len());
        for tuple in &self.components {
            let mut new_tuple = Vec::with_capacity(tuple.len());
            for p in tuple {
                new_tuple.push(substitute(p, &subs, &mut cache, &src, budget)?);
            }
            out.push(new_tuple);
        }
        RationalMap::new(src, self.target.clone(), out)
    }

    /// Divide each tuple by the gcd of its components and normalize the sign
    /// so the first nonzero component has positive leading coefficient.
    /// Returns the reduced map together with the per-tuple extracted factors,
    /// so that `original = factor * reduced` holds componentwise.
    pub fn reduce(&self) -> Result<(Self, Vec<Polynomial>), MapError> {
        let mut out = Vec::with_capacity(self.components.len());
        let mut factors = Vec::with_capacity(self.components.len());
        for tuple in &self.components {
            let nonzero: Vec<Polynomial> = tuple.iter().filter(|c| !c.is_zero()).cloned().collect();
            let g = tuple_gcd(&nonzero)?;
            let mut reduced: Vec<Polynomial> = tuple
                .iter()
                .map(|c| {
                    if c.is_zero() {
                        c.clone()
                    } else {
                        c.exact_div(&g).expect("tuple gcd divides every component")
                    }
                })
                .collect();
            let flip = reduced
                .iter()
                .find(|c| !c.is_zero())
                .map(leading_sign_negative)
                .unwrap_or(false);
            let factor = if flip {
                for c in reduced.iter_mut() {
                    *c = c.neg();
                }
                g.neg()
            } else {
                g
            };
            out.push(reduced);
            factors.push(factor);
        }
        let map = RationalMap::new(self.source.clone(), self.target.clone(), out)?;
        Ok((map, factors))
    }

    /// Conjugate a self-map of a single projective space by an invertible
    /// integer matrix: the result represents `L^-1 . f . L` (the adjugate
    /// stands in for the inverse, which is harmless projectively).
    pub fn conjugate(&self, l: &IMat, budget: &Budget) -> Result<Self, MapError> {
        if !self.is_self_map() || self.source.num_factors() != 1 {
            return Err(MapError::Shape(String::from(
                "conjugation needs a self-map of a single projective space",
            )));
        }
        if l.det().is_zero() {
            return Err(MapError::SingularConjugator);
        }
        let lmap = RationalMap::linear_map(self.source.clone(), l)?;
        let linv = RationalMap::linear_map(self.source.clone(), &l.adjugate())?;
        let inner = self.compose(&lmap, budget)?;
        let full = linv.compose(&inner, budget)?;
        let (reduced, _) = full.reduce()?;
        Ok(reduced)
    }

    /// Decide dominance.  A single rational point where the affine Jacobian
    /// has full rank proves dominance (the rank is generically constant and
    /// only drops on a closed subset).  When sampling keeps failing the
    /// method falls back to a symbolic check that every maximal minor
    /// vanishes identically — feasible for small target dimension — and
    /// otherwise reports the test as inconclusive.
    pub fn is_dominant(&self, rng: &mut impl RngCore) -> Result<bool, MapError> {
        let m = self.target.dim();
        let n = self.source.dim();
        if m > n {
            return Ok(false);
        }
        if m == 0 {
            return Ok(true);
        }
        // pivot component per tuple: last component that is not identically 0
        let pivots: Vec<usize> = self
            .components
            .iter()
            .map(|t| t.iter().rposition(|c| !c.is_zero()).unwrap())
            .collect();
        let cols: Vec<usize> = (0..self.source.num_factors())
            .flat_map(|b| {
                let r = self.source.block_range(b);
                r.start..r.end - 1
            })
            .collect();
        debug_assert_eq!(cols.len(), n);
        'points: for _ in 0..24 {
            let mut point: Vec<BigRational> = Vec::with_capacity(self.source.num_vars());
            for b in 0..self.source.num_factors() {
                let r = self.source.block_range(b);
                for v in r.clone() {
                    if v == r.end - 1 {
                        point.push(BigRational::from(BigInt::from(1)));
                    } else {
                        point.push(BigRational::from(BigInt::from(int_in(rng, -9, 9))));
                    }
                }
            }
            let mut jac: Vec<Vec<BigRational>> = Vec::with_capacity(m);
            for (b, tuple) in self.components.iter().enumerate() {
                let piv = &tuple[pivots[b]];
                let piv_val = piv.eval_rational(&point);
                if piv_val.is_zero() {
                    continue 'points;
                }
                for (j, comp) in tuple.iter().enumerate() {
                    if j == pivots[b] {
                        continue;
                    }
                    let comp_val = comp.eval_rational(&point);
                    // rows are scaled by the positive-denominator pivot^2,
                    // which cannot change the rank
                    let row: Vec<BigRational> = cols
                        .iter()
                        .map(|&v| {
                            eval_derivative(comp, v, &point) * &piv_val
                                - &comp_val * eval_derivative(piv, v, &point)
                        })
                        .collect();
                    jac.push(row);
                }
            }
            if rational_rank(jac) == m {
                return Ok(true);
            }
        }
        if m <= 3 {
            return self.dominance_symbolic(&pivots, &cols);
        }
        Err(MapError::DominanceInconclusive)
    }

    /// Exact fallback: the map is dominant iff some maximal minor of the
    /// symbolic Jacobian is not identically zero.
    fn dominance_symbolic(&self, pivots: &[usize], cols: &[usize]) -> Result<bool, MapError> {
        let budget = Budget::default();
        let m = self.target.dim();
        let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(m);
        for (b, tuple) in self.components.iter().enumerate() {
            let piv = &tuple[pivots[b]];
            for (j, comp) in tuple.iter().enumerate() {
                if j == pivots[b] {
                    continue;
                }
                let mut row = Vec::with_capacity(cols.len());
                for &v in cols {
                    let a = poly_derivative(comp, v).mul(piv, &budget)?;
                    let c = comp.mul(&poly_derivative(piv, v), &budget)?;
                    row.push(a.sub(&c)?);
                }
                rows.push(row);
            }
        }
        for subset in subsets_lex(cols.len(), m) {
            let minor: Vec<Vec<Polynomial>> = rows
                .iter()
                .map(|r| subset.iter().map(|&c| r[c].clone()).collect())
                .collect();
            if !poly_det(&minor, &self.source, &budget)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl core::fmt::Display for RationalMap {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (b, tuple) in self.components.iter().enumerate() {
            if b > 0 {
                write!(f, " x ")?;
            }
            write!(f, "[")?;
            for (i, c) in tuple.iter().enumerate() {
                if i > 0 {
                    write!(f, " : ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

fn leading_sign_negative(p: &Polynomial) -> bool {
    p.prim_raw()
        .leading()
        .map(|(_, c)| c.is_negative())
        .unwrap_or(false)
}

fn poly_derivative(p: &Polynomial, v: usize) -> Polynomial {
    Polynomial::from_raw(p.space().clone(), p.raw().derivative(v))
        .expect("derivative of a multihomogeneous polynomial stays multihomogeneous")
}

fn eval_derivative(p: &Polynomial, v: usize, point: &[BigRational]) -> BigRational {
    p.prim_raw().derivative(v).eval_rational(point) * BigRational::from(p.content().clone())
}

/// Substitute `subs[v]` for variable `v` in `p`, using a shared power cache.
fn substitute(
    p: &Polynomial,
    subs: &[&Polynomial],
    cache: &mut [Vec<Polynomial>],
    src: &AmbientSpace,
    budget: &Budget,
) -> Result<Polynomial, MapError> {
    let mut acc = Polynomial::zero(src.clone());
    let content = p.content().clone();
    for (expo, coeff) in &p.prim_raw().terms {
        let mut term = Polynomial::constant(src.clone(), coeff * &content);
        for (v, &e) in expo.iter().enumerate() {
            if e == 0 {
                continue;
            }
            while cache[v].len() <= e as usize {
                let next = cache[v].last().unwrap().mul(subs[v], budget)?;
                cache[v].push(next);
            }
            term = term.mul(&cache[v][e as usize], budget)?;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Rank of a rational matrix by exact Gaussian elimination.
fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let src = m[row].clone();
        for dst_row in m.iter_mut().skip(row + 1) {
            if dst_row[col].is_zero() {
                continue;
            }
            let factor = &dst_row[col] / &src[col];
            for (dst, s) in dst_row[col..].iter_mut().zip(&src[col..]) {
                *dst -= &factor * s;
            }
        }
        rank += 1;
        row += 1;
    }
    rank
}

/// Determinant of a small polynomial matrix by first-row Laplace expansion.
fn poly_det(
    m: &[Vec<Polynomial>],
    space: &AmbientSpace,
    budget: &Budget,
) -> Result<Polynomial, PolyError> {
    let n = m.len();
    if n == 0 {
        return Ok(Polynomial::constant(space.clone(), BigInt::from(1)));
    }
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = Polynomial::zero(space.clone());
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let sub = poly_det(&minor, space, budget)?;
        let signed = if j % 2 == 0 { sub } else { sub.neg() };
        acc = acc.add(&entry.mul(&signed, budget)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::rng::seeded;

    fn map_on(space: &AmbientSpace, tuples: &[&[&str]]) -> RationalMap {
        let components = tuples
            .iter()
            .map(|t| {
                t.iter()
                    .map(|s| parse_polynomial(space, s).unwrap())
                    .collect()
            })
            .collect();
        RationalMap::self_map(space.clone(), components).unwrap()
    }

    fn p2() -> AmbientSpace {
        AmbientSpace::projective(2).unwrap()
    }

    #[test]
    fn identity_is_neutral_for_composition() {
        let space = AmbientSpace::product(&[1, 1]).unwrap();
        let f = map_on(&space, &[&["x0^2", "x1^2"], &["x0*y0^2", "x1*y1^2"]]);
        let id = RationalMap::identity(space.clone());
        let b = Budget::default();
        assert_eq!(f.compose(&id, &b).unwrap(), f);
        assert_eq!(id.compose(&f, &b).unwrap(), f);
    }

    #[test]
    fn quadratic_involution_squares_to_identity_after_reduction() {
        let sigma = map_on(&p2(), &[&["x1*x2", "x0*x2", "x0*x1"]]);
        let b = Budget::default();
        let square = sigma.compose(&sigma, &b).unwrap();
        // unreduced: [x0^2 x1 x2 : x0 x1^2 x2 : x0 x1 x2^2]
        assert_eq!(square.tuple_multidegree(0), &[4]);
        let (reduced, factors) = square.reduce().unwrap();
        assert_eq!(reduced, RationalMap::identity(p2()));
        assert_eq!(factors[0], parse_polynomial(&p2(), "x0*x1*x2").unwrap());
        // componentwise identity original = factor * reduced
        for (orig, red) in square.tuple(0).iter().zip(reduced.tuple(0)) {
            assert_eq!(&factors[0].mul(red, &b).unwrap(), orig);
        }
    }

    #[test]
    fn degree_matrix_reads_multidegrees() {
        let space = AmbientSpace::product(&[1, 1]).unwrap();
        let f = map_on(&space, &[&["x0^2", "x1^2"], &["x0*y0^2", "x1*y1^2"]]);
        assert_eq!(
            f.degree_matrix(),
            IMat::from_rows(&[vec![2, 0], vec![1, 2]])
        );
    }

    #[test]
    fn composition_multiplies_degree_matrices_before_reduction() {
        let space = AmbientSpace::product(&[1, 1]).unwrap();
        let f = map_on(&space, &[&["x0^2", "x1^2"], &["x0*y0^2", "x1*y1^2"]]);
        let g = map_on(&space, &[&["x0*x1", "x1^2"], &["y0^3", "y1^3"]]);
        let b = Budget::default();
        let fg = f.compose(&g, &b).unwrap();
        assert_eq!(
            fg.degree_matrix(),
            f.degree_matrix().mul(&g.degree_matrix())
        );
    }

    #[test]
    fn conjugation_by_identity_is_identity() {
        let f = map_on(&p2(), &[&["x0^2", "x1^2", "x2^2"]]);
        let id3 = IMat::identity(3);
        let b = Budget::default();
        assert_eq!(f.conjugate(&id3, &b).unwrap(), f);
    }

    #[test]
    fn conjugation_preserves_degree_and_rejects_singular() {
        let f = map_on(&p2(), &[&["x0^2", "x1^2", "x2^2"]]);
        let l = IMat::from_rows(&[vec![1, 1, 0], vec![0, 1, 0], vec![2, 0, 1]]);
        let b = Budget::default();
        let g = f.conjugate(&l, &b).unwrap();
        assert_eq!(g.tuple_multidegree(0), &[2]);
        // conjugating back recovers the original map
        let back = g.conjugate(&l.adjugate(), &b).unwrap();
        assert_eq!(back, f);
        let sing = IMat::from_rows(&[vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        assert!(matches!(
            f.conjugate(&sing, &b),
            Err(MapError::SingularConjugator)
        ));
    }

    #[test]
    fn dominance_verdicts() {
        let mut rng = seeded(7);
        let sigma = map_on(&p2(), &[&["x1*x2", "x0*x2", "x0*x1"]]);
        assert!(sigma.is_dominant(&mut rng).unwrap());
        // image is the single point [1:1:1]
        let collapse = map_on(&p2(), &[&["x0^2", "x0^2", "x0^2"]]);
        assert!(!collapse.is_dominant(&mut rng).unwrap());
        // image is the line z0 = z1
        let line = map_on(&p2(), &[&["x0*x1", "x0*x1", "x2^2"]]);
        assert!(!line.is_dominant(&mut rng).unwrap());
        let space = AmbientSpace::product(&[1, 1]).unwrap();
        let proj = RationalMap::projection(space, &[0]).unwrap();
        assert!(proj.is_dominant(&mut rng).unwrap());
    }

    #[test]
    fn projection_shapes() {
        let space = AmbientSpace::product(&[1, 2, 1]).unwrap();
        let pi = RationalMap::projection(space.clone(), &[0, 2]).unwrap();
        assert_eq!(pi.target(), &AmbientSpace::product(&[1, 1]).unwrap());
        assert_eq!(pi.tuple(0).len(), 2);
        assert_eq!(pi.tuple(1).len(), 2);
        assert!(RationalMap::projection(space.clone(), &[2, 0]).is_err());
        assert!(RationalMap::projection(space, &[3]).is_err());
    }

    #[test]
    fn constructor_rejects_bad_shapes() {
        let space = p2();
        let x0 = parse_polynomial(&space, "x0").unwrap();
        let x1sq = parse_polynomial(&space, "x1^2").unwrap();
        let zero = Polynomial::zero(space.clone());
        assert!(matches!(
            RationalMap::self_map(space.clone(), vec![vec![x0.clone(), x1sq, x0.clone()]]),
            Err(MapError::MixedDegrees(0))
        ));
        assert!(matches!(
            RationalMap::self_map(
                space.clone(),
                vec![vec![zero.clone(), zero.clone(), zero.clone()]]
            ),
            Err(MapError::ZeroTuple(0))
        ));
        assert!(RationalMap::self_map(space, vec![vec![x0]]).is_err());
    }

    #[test]
    fn display_layout() {
        let space = AmbientSpace::product(&[1, 1]).unwrap();
        let f = map_on(&space, &[&["x0^2", "x1^2"], &["x0*y0^2", "x1*y1^2"]]);
        assert_eq!(format!("{f}"), "[x0^2 : x1^2] x [x0*y0^2 : x1*y1^2]");
    }
}
