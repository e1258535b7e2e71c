//! Finite-rank cycle lattices: an integer lattice with a symmetric
//! intersection pairing, a polarization class, and a finitely generated
//! effective cone.  On top of that sit the three exact computations the
//! structural theory runs on: the decomposition norm (an exact linear
//! program), the inertia of the pairing, and certified spectral analysis of
//! lattice endomorphisms, including the simplicity criterion "if the top
//! degree growth dominates the second compound, the leading eigenvalue is
//! simple, real positive, and everything else is bounded by its square
//! root".

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::interval::Interval;
use crate::intmat::IMat;
use crate::lp::{solve_min, LpOutcome};
use crate::roots::{spectral_report, RootsError, SpectralReport};

#[derive(Clone, PartialEq, Debug, thiserror::Error)]
pub enum LatticeError {
    #[error("intersection form must be square and symmetric")]
    NotSymmetric,
    #[error("lattice data shape invalid: {0}")]
    Shape(String),
    #[error("generator {0} has nonpositive degree under the polarization")]
    BadGeneratorDegree(usize),
    #[error("vector is not a difference of effective classes from this cone")]
    NotSpanned,
    #[error(transparent)]
    Roots(#[from] RootsError),
}

/// A polarized cycle lattice with an explicit effective cone.
#[derive(Clone, PartialEq, Debug)]
pub struct CycleLattice {
    rank: usize,
    intersection: IMat,
    /// polarization class, expressed in the lattice basis
    omega: Vec<BigInt>,
    /// generators of the effective cone, as basis-coefficient vectors
    effective: Vec<Vec<BigInt>>,
}

/// An optimal decomposition `v = positive - negative` realizing the norm.
#[derive(Clone, PartialEq, Debug)]
pub struct NormWitness {
    pub value: BigRational,
    /// cone coefficients of the effective part
    pub positive: Vec<BigRational>,
    /// cone coefficients of the subtracted effective part
    pub negative: Vec<BigRational>,
}

impl CycleLattice {
    pub fn new(
        intersection: IMat,
        omega: Vec<BigInt>,
        effective: Vec<Vec<BigInt>>,
    ) -> Result<Self, LatticeError> {
        if !intersection.is_square() {
            return Err(LatticeError::NotSymmetric);
        }
        let rank = intersection.rows();
        if intersection.transpose() != intersection {
            return Err(LatticeError::NotSymmetric);
        }
        if omega.len() != rank {
            return Err(LatticeError::Shape(format!(
                "polarization has {} coefficients for rank {rank}",
                omega.len()
            )));
        }
        let lattice = CycleLattice {
            rank,
            intersection,
            omega,
            effective: Vec::new(),
        };
        for (i, g) in effective.iter().enumerate() {
            if g.len() != rank {
                return Err(LatticeError::Shape(format!(
                    "generator {i} has {} coefficients for rank {rank}",
                    g.len()
                )));
            }
            if !lattice.degree_of(g).is_positive() {
                return Err(LatticeError::BadGeneratorDegree(i));
            }
        }
        Ok(CycleLattice {
            effective,
            ..lattice
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn intersection(&self) -> &IMat {
        &self.intersection
    }

    pub fn effective_generators(&self) -> &[Vec<BigInt>] {
        &self.effective
    }

    /// Intersection pairing of two classes.
    pub fn pairing(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        assert_eq!(u.len(), self.rank);
        assert_eq!(v.len(), self.rank);
        let mut acc = BigInt::zero();
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                acc += ui * &self.intersection[(i, j)] * vj;
            }
        }
        acc
    }

    /// Degree of a class: intersection with the polarization.
    pub fn degree_of(&self, v: &[BigInt]) -> BigInt {
        self.pairing(&self.omega, v)
    }

    /// Decomposition norm: minimize `deg(v1) + deg(v2)` over all splittings
    /// `v = v1 - v2` with both parts in the effective cone.  For effective
    /// `v` this equals `deg(v)` (the split `v - 0` is optimal because
    /// degrees of effective classes are nonnegative).
    pub fn norm_one(&self, v: &[BigInt]) -> Result<NormWitness, LatticeError> {
        assert_eq!(v.len(), self.rank);
        let g = self.effective.len();
        // variables: lambda (positive part), mu (negative part)
        let mut costs = Vec::with_capacity(2 * g);
        for gen in &self.effective {
            costs.push(BigRational::from(self.degree_of(gen)));
        }
        costs.extend_from_slice(&costs.clone());
        let mut rows = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            let mut row = Vec::with_capacity(2 * g);
            for gen in &self.effective {
                row.push(BigRational::from(gen[i].clone()));
            }
            for gen in &self.effective {
                row.push(BigRational::from(-&gen[i]));
            }
            rows.push(row);
        }
        let rhs: Vec<BigRational> = v.iter().map(|x| BigRational::from(x.clone())).collect();
        match solve_min(&costs, &rows, &rhs) {
            LpOutcome::Optimal { value, solution } => Ok(NormWitness {
                value,
                positive: solution[..g].to_vec(),
                negative: solution[g..].to_vec(),
            }),
            LpOutcome::Infeasible => Err(LatticeError::NotSpanned),
            LpOutcome::Unbounded => {
                unreachable!("norm objective is bounded below by zero")
            }
        }
    }

    /// Exact cone membership via linear programming feasibility.
    pub fn is_effective(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.rank);
        let g = self.effective.len();
        let costs = vec![BigRational::zero(); g];
        let mut rows = Vec::with_capacity(self.rank);
        for i in 0..self.rank {
            rows.push(
                self.effective
                    .iter()
                    .map(|gen| BigRational::from(gen[i].clone()))
                    .collect(),
            );
        }
        let rhs: Vec<BigRational> = v.iter().map(|x| BigRational::from(x.clone())).collect();
        matches!(solve_min(&costs, &rows, &rhs), LpOutcome::Optimal { .. })
    }

    /// Does the action map every cone generator back into the cone?
    pub fn preserves_effective_cone(&self, action: &IMat) -> bool {
        assert_eq!(action.rows(), self.rank);
        assert_eq!(action.cols(), self.rank);
        self.effective.iter().all(|gen| {
            let image: Vec<BigInt> = (0..self.rank)
                .map(|i| (0..self.rank).map(|j| &action[(i, j)] * &gen[j]).sum())
                .collect();
            self.is_effective(&image)
        })
    }

    /// Inertia `(positive, negative, zero)` of the intersection form,
    /// computed by exact symmetric congruence diagonalization over Q.
    pub fn hodge_signature(&self) -> (usize, usize, usize) {
        let n = self.rank;
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::from(self.intersection[(i, j)].clone()))
                    .collect()
            })
            .collect();
        let mut pos = 0;
        let mut neg = 0;
        let mut zero = 0;
        for k in 0..n {
            if m[k][k].is_zero() {
                // try to bring a nonzero diagonal entry to position k via a
                // congruence: first a symmetric swap, then the e_k + e_j trick
                if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                    m.swap(k, j);
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                    let src = m[j].clone();
                    for (dst, s) in m[k].iter_mut().zip(src) {
                        *dst += s;
                    }
                    for row in m.iter_mut() {
                        let t = row[j].clone();
                        row[k] += t;
                    }
                } else {
                    zero += 1;
                    continue;
                }
            }
            let pivot = m[k][k].clone();
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let f = &m[i][k] / &pivot;
                // the paired column op below rewrites row k, so the row op
                // must re-read m[k] on every pass
                #[allow(clippy::needless_range_loop)]
                for j in 0..n {
                    let t = &f * &m[k][j];
                    m[i][j] -= t;
                }
                for row in m.iter_mut() {
                    let t = &f * &row[k];
                    row[i] -= t;
                }
            }
        }
        (pos, neg, zero)
    }
}

/// The rank `1 + m` lattice of the plane blown up in `m` general points,
/// with basis `H, E_1, ..., E_m`, the standard pairing `diag(1, -1, ...)`,
/// a fixed ample polarization, and the effective cone spanned by the
/// classical extremal curves (available for `m <= 5`).
pub fn blowup_plane(m: usize) -> CycleLattice {
    assert!(m <= 5, "extremal generator list is hardwired for m <= 5");
    let rank = m + 1;
    let mut inter = IMat::identity(rank);
    for i in 1..rank {
        inter[(i, i)] = BigInt::from(-1);
    }
    let mut omega = vec![BigInt::zero(); rank];
    match m {
        0 => omega[0] = BigInt::one(),
        1 => {
            omega[0] = BigInt::from(2);
            omega[1] = BigInt::from(-1);
        }
        _ => {
            omega[0] = BigInt::from(3);
            for e in omega.iter_mut().skip(1) {
                *e = BigInt::from(-1);
            }
        }
    }
    let mut effective: Vec<Vec<BigInt>> = Vec::new();
    let class = |h: i64, es: &[usize]| -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); rank];
        v[0] = BigInt::from(h);
        for &e in es {
            v[e] = BigInt::from(-1);
        }
        v
    };
    match m {
        0 => effective.push(class(1, &[])),
        1 => {
            effective.push(exceptional(rank, 1));
            effective.push(class(1, &[1]));
        }
        2 => {
            effective.push(exceptional(rank, 1));
            effective.push(exceptional(rank, 2));
            effective.push(class(1, &[1, 2]));
        }
        _ => {
            for i in 1..=m {
                effective.push(exceptional(rank, i));
            }
            for i in 1..=m {
                for j in i + 1..=m {
                    effective.push(class(1, &[i, j]));
                }
            }
            if m == 5 {
                effective.push(class(2, &[1, 2, 3, 4, 5]));
            }
        }
    }
    CycleLattice::new(inter, omega, effective).expect("hardwired lattice data is consistent")
}

fn exceptional(rank: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); rank];
    v[i] = BigInt::one();
    v
}

/// The standard quadratic involution based at the first three points,
/// acting on the blowup lattice of rank `1 + m`, `m >= 3`.
pub fn cremona_action(m: usize) -> IMat {
    assert!(m >= 3, "the involution needs three base points");
    let rank = m + 1;
    let mut a = IMat::identity(rank);
    // H -> 2H - E1 - E2 - E3
    a[(0, 0)] = BigInt::from(2);
    for i in 1..=3 {
        a[(i, 0)] = BigInt::from(-1);
    }
    // E_i -> H - E_j - E_k for {i,j,k} = {1,2,3}
    for i in 1..=3 {
        a[(0, i)] = BigInt::one();
        a[(i, i)] = BigInt::zero();
        for j in 1..=3 {
            if j != i {
                a[(j, i)] = BigInt::from(-1);
            }
        }
    }
    a
}

/// Reflection in a root of self-intersection -2: `v -> v + (v . alpha) alpha`.
fn reflection(alpha: &[BigInt], inter: &IMat) -> IMat {
    let n = alpha.len();
    debug_assert_eq!(inter.rows(), n);
    // alpha^T * intersection, as a row vector
    let pairing_row: Vec<BigInt> = (0..n)
        .map(|j| (0..n).map(|i| &alpha[i] * &inter[(i, j)]).sum())
        .collect();
    let mut s = IMat::identity(n);
    for i in 0..n {
        for j in 0..n {
            let t = &alpha[i] * &pairing_row[j];
            s[(i, j)] += t;
        }
    }
    s
}

/// Product of the simple-root reflections of the rank `1 + m` blowup
/// lattice: the roots are `H - E1 - E2 - E3` and the differences
/// `E_i - E_(i+1)`.  For `m = 10` the spectral radius of this element is
/// the smallest known Salem number.
pub fn coxeter_action(m: usize) -> IMat {
    assert!(m >= 3);
    let rank = m + 1;
    let mut inter = IMat::identity(rank);
    for i in 1..rank {
        inter[(i, i)] = BigInt::from(-1);
    }
    let mut roots: Vec<Vec<BigInt>> = Vec::with_capacity(m);
    let mut alpha0 = vec![BigInt::zero(); rank];
    alpha0[0] = BigInt::one();
    for e in &mut alpha0[1..=3] {
        *e = BigInt::from(-1);
    }
    roots.push(alpha0);
    for i in 1..m {
        let mut a = vec![BigInt::zero(); rank];
        a[i] = BigInt::one();
        a[i + 1] = BigInt::from(-1);
        roots.push(a);
    }
    let mut product = IMat::identity(rank);
    for alpha in &roots {
        product = product.mul(&reflection(alpha, &inter));
    }
    product
}

/// Verdict of the spectral simplicity criterion for a lattice action.
#[derive(Clone, PartialEq, Debug)]
pub enum SimplicityOutcome {
    /// hypothesis `r1^2 > r2` certified; conclusions verified: the leading
    /// eigenvalue is algebraically simple, real positive, of strictly
    /// maximal modulus, and every other eigenvalue modulus is certifiably
    /// at most `sqrt(r2)`
    Proven {
        top: Interval,
        others_bound: Interval,
    },
    /// the growth hypothesis `r1^2 > r2` is certifiably false
    HypothesisNotMet { detail: String },
    /// hypothesis certified but a conclusion certifiably fails: this would
    /// disprove the structural model
    Violated { detail: String },
    /// enclosures too wide to decide either way
    Unresolved { detail: String },
}

/// Run the simplicity criterion on an integer lattice action: compare the
/// spectral radius `r1` with the second compound growth `r2` (the product
/// of the two largest eigenvalue moduli) and, when `r1^2 > r2` is
/// certified, verify the structural conclusions.
pub fn simplicity_check(
    action: &IMat,
    eps: f64,
) -> Result<(SpectralReport, SimplicityOutcome), LatticeError> {
    let report = spectral_report(&action.char_poly(), eps)?;
    let outcome = classify_simplicity(&report);
    Ok((report, outcome))
}

// negated comparisons are load-bearing: NaN must land in `Unresolved`
#[allow(clippy::neg_cmp_op_on_partial_ord)]
fn classify_simplicity(report: &SpectralReport) -> SimplicityOutcome {
    if report.moduli.is_empty() {
        return SimplicityOutcome::Unresolved {
            detail: String::from("no eigenvalues"),
        };
    }
    let top = report.moduli[0].modulus;
    let second = if report.moduli.len() > 1 || report.moduli[0].multiplicity > 1 {
        if report.moduli[0].multiplicity > 1 {
            top
        } else {
            report.moduli[1].modulus
        }
    } else {
        Interval::zero()
    };
    let r1sq = top.square();
    let r2 = top.mul(&second);
    if r1sq.hi <= r2.lo {
        return SimplicityOutcome::HypothesisNotMet {
            detail: format!(
                "r1^2 in [{}, {}] does not exceed r2 in [{}, {}]",
                r1sq.lo, r1sq.hi, r2.lo, r2.hi
            ),
        };
    }
    if !(r1sq.lo > r2.hi) {
        return SimplicityOutcome::Unresolved {
            detail: String::from("r1^2 and r2 enclosures overlap"),
        };
    }
    // hypothesis certified; now the conclusions
    if report.moduli[0].multiplicity != 1 {
        return SimplicityOutcome::Violated {
            detail: String::from("leading eigenvalue is a repeated root"),
        };
    }
    if !report.moduli[0].certify_real_positive() {
        return SimplicityOutcome::Violated {
            detail: String::from("leading eigenvalue not certified real positive"),
        };
    }
    let bound = r2.sqrt();
    for d in &report.moduli[1..] {
        if d.modulus.lo > bound.hi {
            return SimplicityOutcome::Violated {
                detail: format!(
                    "subleading modulus in [{}, {}] exceeds sqrt(r2) <= {}",
                    d.modulus.lo, d.modulus.hi, bound.hi
                ),
            };
        }
        if !(d.modulus.hi <= bound.lo) {
            return SimplicityOutcome::Unresolved {
                detail: String::from("subleading modulus enclosure straddles sqrt(r2)"),
            };
        }
    }
    SimplicityOutcome::Proven {
        top,
        others_bound: bound,
    }
}
