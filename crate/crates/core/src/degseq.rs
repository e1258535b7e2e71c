//! Iterated degree sequences of rational self-maps.  The n-th entry is the
//! degree matrix of the *reduced* n-th compositional power; reduction after
//! every composition step is what makes the sequence carry dynamical
//! information instead of bookkeeping artifacts.  The sequence is
//! entrywise submultiplicative, so scalar n-th roots give certified upper
//! bounds for the first dynamical degree.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::interval::Interval;
use crate::intmat::IMat;
use crate::poly::{Budget, PolyError, Polynomial};
use crate::ratmap::{MapError, RationalMap};

/// Degree data of the reduced powers `f^0, f^1, ..., f^N`.
#[derive(Clone, Debug)]
pub struct DegreeData {
    /// `matrices[n]` is the degree matrix of the reduced `f^n`
    pub matrices: Vec<IMat>,
    /// `scalars[n]` is the maximum row sum of `matrices[n]`
    pub scalars: Vec<BigInt>,
    /// `factors[n]` are the per-tuple factors extracted when reducing
    /// `f^(n-1) . f` (empty vectors at indices 0 and 1)
    pub factors: Vec<Vec<Polynomial>>,
    /// true when the iteration stopped early on a resource limit
    pub truncated: bool,
}

impl DegreeData {
    /// Number of computed powers beyond the identity.
    pub fn max_power(&self) -> usize {
        self.matrices.len() - 1
    }

    /// First step at which reduction removed a positive-degree common
    /// factor: `(n, tuple, factor)` meaning the factor appeared when
    /// forming `f^n`.  `None` means the map looks algebraically stable
    /// through the computed range.
    pub fn first_instability(&self) -> Option<(usize, usize, &Polynomial)> {
        for (n, step) in self.factors.iter().enumerate() {
            for (b, g) in step.iter().enumerate() {
                if g.degree() > 0 {
                    return Some((n, b, g));
                }
            }
        }
        None
    }

    /// Exact entrywise submultiplicativity over every computed split:
    /// `matrices[n+m] <= matrices[n] * matrices[m]`.  Returns the first
    /// violating pair, which would disprove the model.
    pub fn check_submultiplicative(&self) -> Result<(), (usize, usize)> {
        let top = self.max_power();
        for n in 1..=top {
            for m in n..=top {
                if n + m > top {
                    break;
                }
                let prod = self.matrices[n].mul(&self.matrices[m]);
                if !self.matrices[n + m].entrywise_le(&prod) {
                    return Err((n, m));
                }
            }
        }
        Ok(())
    }
}

/// Iterate `f` and record reduced degree matrices up to `f^n_max`.
/// A resource limit during composition stops the iteration and marks the
/// data truncated; everything recorded up to that point is exact.
pub fn iterate_degrees(
    f: &RationalMap,
    n_max: usize,
    budget: &Budget,
) -> Result<DegreeData, MapError> {
    if !f.is_self_map() {
        return Err(MapError::SpaceMismatch);
    }
    let blocks = f.source().num_factors();
    let mut matrices = vec![IMat::identity(blocks)];
    let mut scalars = vec![BigInt::one()];
    let mut factors: Vec<Vec<Polynomial>> = vec![vec![]];
    let mut truncated = false;
    if n_max >= 1 {
        let (base, _) = f.reduce()?;
        matrices.push(base.degree_matrix());
        scalars.push(base.degree_matrix().max_row_sum());
        factors.push(vec![]);
        let mut current = base.clone();
        for _ in 2..=n_max {
            let composed = match current.compose(&base, budget) {
                Ok(c) => c,
                Err(MapError::Poly(PolyError::ResourceLimit { .. })) => {
                    truncated = true;
                    break;
                }
                Err(e) => return Err(e),
            };
            let (reduced, step_factors) = composed.reduce()?;
            let dm = reduced.degree_matrix();
            scalars.push(dm.max_row_sum());
            matrices.push(dm);
            factors.push(step_factors);
            current = reduced;
        }
    }
    Ok(DegreeData {
        matrices,
        scalars,
        factors,
        truncated,
    })
}

/// Certified and heuristic estimates for the first dynamical degree read
/// off a degree sequence of a dominant map.
#[derive(Clone, Debug)]
pub struct Lambda1Estimate {
    /// certified enclosure: 1 from dominance, the minimum of the n-th root
    /// upper bounds from submultiplicativity
    pub enclosure: Interval,
    /// last consecutive-degree ratio; suggestive, never certified
    pub heuristic: Option<f64>,
    /// true when the last three ratios agree to one percent
    pub settled: bool,
}

pub fn lambda1_estimate(data: &DegreeData) -> Lambda1Estimate {
    lambda1_from_scalars(&data.scalars)
}

/// Same estimate from a bare scalar degree sequence `d_0, d_1, ...`
/// (`d_0` is skipped; it is the degree of the identity).
pub fn lambda1_from_scalars(scalars: &[BigInt]) -> Lambda1Estimate {
    let mut upper = f64::INFINITY;
    for (n, d) in scalars.iter().enumerate().skip(1) {
        let root = Interval::from_bigint(d).nth_root(n as u32);
        upper = f64::min(upper, root.hi);
    }
    if !upper.is_finite() {
        upper = 1.0; // only the identity power was computed
    }
    let ratios: Vec<f64> = scalars
        .windows(2)
        .skip(1)
        .map(|w| {
            let a = Interval::from_bigint(&w[0]).midpoint();
            let b = Interval::from_bigint(&w[1]).midpoint();
            b / a
        })
        .collect();
    let heuristic = ratios.last().copied();
    let settled = ratios.len() >= 3
        && ratios[ratios.len() - 3..]
            .windows(2)
            .all(|w| (w[1] - w[0]).abs() <= 1e-2 * w[1].abs().max(1.0));
    Lambda1Estimate {
        enclosure: Interval::new(1.0, f64::max(upper, 1.0)),
        heuristic,
        settled,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::space::AmbientSpace;

    fn self_map(space: &AmbientSpace, tuples: &[&[&str]]) -> RationalMap {
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

    #[test]
    fn involution_alternates_and_reports_instability() {
        let p2 = AmbientSpace::projective(2).unwrap();
        let sigma = self_map(&p2, &[&["x1*x2", "x0*x2", "x0*x1"]]);
        let data = iterate_degrees(&sigma, 6, &Budget::default()).unwrap();
        let seq: Vec<i64> = data
            .scalars
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(seq, vec![1, 2, 1, 2, 1, 2, 1]);
        let (n, b, factor) = data.first_instability().unwrap();
        assert_eq!((n, b), (2, 0));
        assert_eq!(factor.degree(), 3);
        assert!(!data.truncated);
        assert!(data.check_submultiplicative().is_ok());
    }

    #[test]
    fn stable_power_map_doubles() {
        let p2 = AmbientSpace::projective(2).unwrap();
        let f = self_map(&p2, &[&["x0^2", "x1^2", "x2^2"]]);
        let data = iterate_degrees(&f, 5, &Budget::default()).unwrap();
        let seq: Vec<i64> = data
            .scalars
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect();
        assert_eq!(seq, vec![1, 2, 4, 8, 16, 32]);
        assert!(data.first_instability().is_none());
        let est = lambda1_estimate(&data);
        assert!(est.enclosure.contains(2.0));
        assert!(est.enclosure.hi < 2.0 + 1e-9);
        assert_eq!(est.heuristic, Some(2.0));
        assert!(est.settled);
    }

    #[test]
    fn torus_squares_track_matrix_powers() {
        // coordinates of the first factor map by exponents (2,1), of the
        // second by (1,1)
        let space = AmbientSpace::product(&[1, 1]).unwrap();
        let f = self_map(&space, &[&["x0^2*y0", "x1^2*y1"], &["x0*y0", "x1*y1"]]);
        let a = IMat::from_rows(&[vec![2, 1], vec![1, 1]]);
        let data = iterate_degrees(&f, 6, &Budget::default()).unwrap();
        for n in 0..=6 {
            assert_eq!(data.matrices[n], a.pow(n as u32), "power {n}");
        }
        assert!(data.first_instability().is_none());
        assert!(data.check_submultiplicative().is_ok());
    }

    #[test]
    fn tight_budget_truncates_honestly() {
        let p2 = AmbientSpace::projective(2).unwrap();
        let f = self_map(&p2, &[&["x0^2 + x1^2", "x1^2 + x2^2", "x0*x2 + x1^2"]]);
        let tiny = Budget {
            max_terms: 6,
            max_coeff_bits: 10_000,
        };
        let data = iterate_degrees(&f, 8, &tiny).unwrap();
        assert!(data.truncated);
        assert!(data.max_power() < 8);
        // what was computed is still exact
        assert_eq!(data.scalars[1], BigInt::from(2));
    }

    #[test]
    fn golden_mean_upper_bound_tightens() {
        let space = AmbientSpace::product(&[1, 1]).unwrap();
        // exponent matrix [[1,1],[1,0]]
        let f = self_map(&space, &[&["x0*y0", "x1*y1"], &["x0", "x1"]]);
        let data = iterate_degrees(&f, 10, &Budget::default()).unwrap();
        let est = lambda1_estimate(&data);
        let phi = (1.0 + libm::sqrt(5.0)) / 2.0;
        assert!(est.enclosure.contains(phi));
        // at n = 10 the root bound sits within five percent of the limit
        assert!(est.enclosure.hi <= phi * 1.05);
    }
}
