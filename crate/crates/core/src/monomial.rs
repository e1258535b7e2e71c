//! Monomial (toric) self-maps built from integer exponent matrices, and
//! their exact dynamical degrees.  An exponent matrix `A` acts on torus
//! characters by `t_i -> prod_j t_j^(a_ij)`; on a compactification the
//! p-th dynamical degree is the spectral radius of the p-th compound
//! `Λ^p A` — equivalently the product of the `p` largest eigenvalue moduli
//! of `A`, which this module uses as an internal cross-check.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::interval::Interval;
use crate::intmat::IMat;
use crate::poly::{PolyError, Polynomial};
use crate::ratmap::{MapError, RationalMap};
use crate::roots::{spectral_report, RootsError, SpectralReport};
use crate::space::AmbientSpace;

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum MonomialError {
    #[error("exponent matrix must be square and nonempty")]
    NotSquare,
    #[error("exponent matrix is singular, so the map is not dominant")]
    Singular,
    #[error("exponent data out of range: {0}")]
    Range(String),
    #[error(transparent)]
    Roots(#[from] RootsError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn check_exponent_matrix(a: &IMat) -> Result<Vec<Vec<i64>>, MonomialError> {
    if !a.is_square() || a.rows() == 0 {
        return Err(MonomialError::NotSquare);
    }
    if a.det().is_zero() {
        return Err(MonomialError::Singular);
    }
    let mut rows = Vec::with_capacity(a.rows());
    for i in 0..a.rows() {
        let mut row = Vec::with_capacity(a.cols());
        for j in 0..a.cols() {
            let e = a[(i, j)].to_i64().filter(|e| e.abs() <= u16::MAX as i64);
            match e {
                Some(e) => row.push(e),
                None => {
                    return Err(MonomialError::Range(format!(
                        "entry ({i}, {j}) exceeds the supported exponent size"
                    )))
                }
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The monomial self-map of projective space induced by `A`, in the chart
/// `t_i = x_(i-1) / x_k`: clear denominators with the minimal common
/// monomial, which leaves the coordinate tuple already reduced.
pub fn projective_model(a: &IMat) -> Result<RationalMap, MonomialError> {
    let rows = check_exponent_matrix(a)?;
    let k = rows.len();
    let space = AmbientSpace::projective(k).expect("projective space of positive dimension");
    // exponent vectors over x_0..x_k; coordinates are [t-image_1 : ... : 1]
    let mut exps: Vec<Vec<i64>> = Vec::with_capacity(k + 1);
    for row in &rows {
        let s: i64 = row.iter().sum();
        let mut e = row.clone();
        e.push(-s);
        exps.push(e);
    }
    exps.push(vec![0; k + 1]);
    let mut shift = vec![0i64; k + 1];
    for e in &exps {
        for (j, &x) in e.iter().enumerate() {
            shift[j] = shift[j].max(-x);
        }
    }
    let tuple: Vec<Polynomial> = exps
        .iter()
        .map(|e| {
            let expo: Vec<u16> = e
                .iter()
                .zip(&shift)
                .map(|(&x, &v)| u16::try_from(x + v).expect("shift clears negatives"))
                .collect();
            Polynomial::monomial(space.clone(), expo, 1.into())
        })
        .collect();
    Ok(RationalMap::self_map(space, vec![tuple])?)
}

/// The same torus map compactified on a product of projective lines, factor
/// `i` carrying the chart `t_i = x_(i,0) / x_(i,1)`.  Each coordinate pair
/// is the obvious numerator/denominator split, so the degree matrix of the
/// result is the entrywise absolute value of `A`.
pub fn torus_product_model(a: &IMat) -> Result<RationalMap, MonomialError> {
    let rows = check_exponent_matrix(a)?;
    let k = rows.len();
    let space = AmbientSpace::product(&vec![1; k]).expect("product of lines");
    let mut components = Vec::with_capacity(k);
    for row in &rows {
        let mut num = vec![0u16; 2 * k];
        let mut den = vec![0u16; 2 * k];
        for (j, &e) in row.iter().enumerate() {
            if e >= 0 {
                num[2 * j] = e as u16;
                den[2 * j + 1] = e as u16;
            } else {
                num[2 * j + 1] = (-e) as u16;
                den[2 * j] = (-e) as u16;
            }
        }
        components.push(vec![
            Polynomial::monomial(space.clone(), num, 1.into()),
            Polynomial::monomial(space.clone(), den, 1.into()),
        ]);
    }
    Ok(RationalMap::self_map(space, components)?)
}

/// Certified enclosure of the p-th dynamical degree: the spectral radius of
/// the p-th compound matrix.
pub fn lambda_p(a: &IMat, p: usize, eps: f64) -> Result<SpectralReport, MonomialError> {
    check_exponent_matrix(a)?;
    if p > a.rows() {
        return Err(MonomialError::Range(format!(
            "degree index {p} exceeds the dimension {}",
            a.rows()
        )));
    }
    let compound = a.compound(p);
    Ok(spectral_report(&compound.char_poly(), eps)?)
}

/// All dynamical degrees `p = 0..=k` as certified intervals.
pub fn dynamical_degrees(a: &IMat, eps: f64) -> Result<Vec<Interval>, MonomialError> {
    (0..=a.rows())
        .map(|p| lambda_p(a, p, eps).map(|r| r.radius))
        .collect()
}

/// Indices `p` where certified intervals prove a log-concavity violation
/// beyond `tol`, i.e. `upper(λ_p^2) + tol < lower(λ_(p-1) λ_(p+1))`.
/// An empty answer means the expected inequality is consistent with every
/// enclosure.
pub fn log_concavity_violations(lambda: &[Interval], tol: f64) -> Vec<usize> {
    let mut out = Vec::new();
    for p in 1..lambda.len().saturating_sub(1) {
        let sq = lambda[p].square();
        let prod = lambda[p - 1].mul(&lambda[p + 1]);
        if sq.hi + tol < prod.lo {
            out.push(p);
        }
    }
    out
}

/// Restriction of `A` to the saturated kernel of the projection rows `B`,
/// available exactly when the kernel is invariant: returns `(G, R)` with
/// `B A = G B` (the induced base map) and `A K = K R` (the fiber action on
/// the kernel basis `K`).  `None` means `A` does not descend along `B`.
pub fn toric_semiconjugacy(a: &IMat, b: &IMat) -> Option<(IMat, IMat)> {
    assert_eq!(a.rows(), a.cols(), "exponent matrix must be square");
    assert_eq!(b.cols(), a.rows(), "projection width must match");
    // G from B A = G B, i.e. B^T G^T = (B A)^T
    let bt = b.transpose();
    let g = bt.solve_exact(&b.mul(a).transpose())?.transpose();
    let kernel = b.kernel_basis();
    let r = kernel.solve_exact(&a.mul(&kernel))?;
    Some((g, r))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_models_match_hand_computations() {
        let squares = projective_model(&IMat::from_rows(&[vec![2, 0], vec![0, 2]])).unwrap();
        assert_eq!(format!("{squares}"), "[x0^2 : x1^2 : x2^2]");
        let shear = projective_model(&IMat::from_rows(&[vec![1, -1], vec![0, 1]])).unwrap();
        assert_eq!(format!("{shear}"), "[x0*x2 : x1^2 : x1*x2]");
        let invert = projective_model(&IMat::from_rows(&[vec![-1]])).unwrap();
        assert_eq!(format!("{invert}"), "[x1 : x0]");
    }

    #[test]
    fn torus_product_model_degree_matrix_is_absolute_value() {
        let a = IMat::from_rows(&[vec![2, 1], vec![1, 1]]);
        let f = torus_product_model(&a).unwrap();
        assert_eq!(format!("{f}"), "[x0^2*y0 : x1^2*y1] x [x0*y0 : x1*y1]");
        assert_eq!(f.degree_matrix(), a);
        let neg = IMat::from_rows(&[vec![1, -2], vec![0, 1]]);
        let g = torus_product_model(&neg).unwrap();
        assert_eq!(
            g.degree_matrix(),
            IMat::from_rows(&[vec![1, 2], vec![0, 1]])
        );
    }

    #[test]
    fn rejects_degenerate_exponent_data() {
        assert!(matches!(
            projective_model(&IMat::from_rows(&[vec![1, 1], vec![1, 1]])),
            Err(MonomialError::Singular)
        ));
        assert!(matches!(
            lambda_p(&IMat::from_rows(&[vec![1, 2, 3]]), 1, 1e-9),
            Err(MonomialError::NotSquare)
        ));
    }

    #[test]
    fn degrees_of_fibonacci_like_matrix() {
        let a = IMat::from_rows(&[vec![2, 1], vec![1, 1]]);
        let l = dynamical_degrees(&a, 1e-9).unwrap();
        assert_eq!(l.len(), 3);
        assert!(l[0].is_point() && l[0].contains(1.0));
        let top = (3.0 + libm::sqrt(5.0)) / 2.0;
        assert!(l[1].contains(top));
        assert!(l[1].width() < 1e-9);
        // determinant 1: the top degree is exactly one
        assert!(l[2].contains(1.0) && l[2].width() < 1e-9);
        assert!(log_concavity_violations(&l, 1e-9).is_empty());
    }

    #[test]
    fn compound_degrees_agree_with_modulus_products() {
        // independent route: λ_p equals the product of the p largest
        // eigenvalue moduli of A itself
        let a = IMat::from_rows(&[vec![2, 1, 0], vec![1, 1, 1], vec![0, 1, 3]]);
        let l = dynamical_degrees(&a, 1e-9).unwrap();
        let spec = spectral_report(&a.char_poly(), 1e-9).unwrap();
        let mut moduli: Vec<Interval> = Vec::new();
        for d in &spec.moduli {
            for _ in 0..d.multiplicity {
                moduli.push(d.modulus);
            }
        }
        let mut prod = Interval::one();
        for (p, m) in moduli.iter().enumerate() {
            prod = prod.mul(m);
            assert!(
                prod.overlaps(&l[p + 1]),
                "degree {} mismatch: {:?} vs {:?}",
                p + 1,
                prod,
                l[p + 1]
            );
        }
        // top degree equals |det A|
        let det = a.det().to_f64().unwrap();
        assert!(l[3].contains(libm::fabs(det)));
    }

    #[test]
    fn semiconjugacy_splits_triangular_actions() {
        // A preserves the kernel of the projection to the last character
        let a = IMat::from_rows(&[vec![2, 0, 1], vec![0, 3, 1], vec![0, 0, 5]]);
        let b = IMat::from_rows(&[vec![0, 0, 1]]);
        let (g, r) = toric_semiconjugacy(&a, &b).unwrap();
        assert_eq!(g, IMat::from_rows(&[vec![5]]));
        assert_eq!(r, IMat::from_rows(&[vec![2, 0], vec![0, 3]]));
        // invariants: B A = G B and A K = K R
        assert_eq!(b.mul(&a), g.mul(&b));
        let k = b.kernel_basis();
        assert_eq!(a.mul(&k), k.mul(&r));
        // a matrix that mixes the kernel back into the base does not descend
        let mixing = IMat::from_rows(&[vec![2, 0, 0], vec![0, 3, 0], vec![1, 0, 5]]);
        assert!(toric_semiconjugacy(&mixing, &b).is_none());
    }

    #[test]
    fn log_concavity_detector_fires_on_fabricated_data() {
        let fake = vec![
            Interval::exact(1.0),
            Interval::exact(1.0),
            Interval::exact(4.0),
        ];
        assert_eq!(log_concavity_violations(&fake, 1e-9), vec![1]);
    }

    #[test]
    fn inversion_degrees_on_surface() {
        // t -> 1/t on each factor: involution, all degrees 1
        let a = IMat::from_rows(&[vec![-1, 0], vec![0, -1]]);
        let l = dynamical_degrees(&a, 1e-9).unwrap();
        for (p, iv) in l.iter().enumerate() {
            assert!(iv.contains(1.0), "degree {p}");
        }
    }
}
