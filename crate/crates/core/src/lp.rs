//! Exact linear programming over the rationals: a dense two-phase simplex
//! with Bland's pivoting rule, which cannot cycle.  Problems are given in
//! equality standard form, `min c.x  s.t.  A x = b, x >= 0`.  Everything is
//! `BigRational`, so feasibility, unboundedness and optimal values are exact
//! statements rather than tolerances.

use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Debug)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        solution: Vec<BigRational>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// m rows of length ncols + 1; the last entry is the right-hand side
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x = &*x / &p;
        }
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..=self.ncols {
                let t = &f * &self.rows[r][j];
                self.rows[i][j] -= t;
            }
        }
        self.basis[r] = c;
    }

    /// Bland-rule simplex on the current basis; `false` means unbounded.
    fn optimize(&mut self, costs: &[BigRational]) -> bool {
        loop {
            // reduced costs r_j = c_j - sum_i c_basis(i) * tab[i][j]
            let entering = (0..self.ncols).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut r = costs[j].clone();
                for (i, &bi) in self.basis.iter().enumerate() {
                    if !costs[bi].is_zero() {
                        r -= &costs[bi] * &self.rows[i][j];
                    }
                }
                r.is_negative()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut leave: Option<usize> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c].is_positive() {
                    let better = match leave {
                        None => true,
                        Some(l) => {
                            let ratio_i = self.rhs(i) / &self.rows[i][c];
                            let ratio_l = self.rhs(l) / &self.rows[l][c];
                            match ratio_i.cmp(&ratio_l) {
                                core::cmp::Ordering::Less => true,
                                core::cmp::Ordering::Equal => self.basis[i] < self.basis[l],
                                core::cmp::Ordering::Greater => false,
                            }
                        }
                    };
                    if better {
                        leave = Some(i);
                    }
                }
            }
            match leave {
                Some(r) => self.pivot(r, c),
                None => return false,
            }
        }
    }
}

/// Minimize `costs . x` subject to `a x = b`, `x >= 0`.
pub fn solve_min(costs: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = costs.len();
    assert_eq!(b.len(), m, "right-hand side length");
    for row in a {
        assert_eq!(row.len(), n, "constraint width");
    }
    // phase 1 tableau: [A | I] with rows flipped so the rhs is nonnegative
    let ncols = n + m;
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row: Vec<BigRational> = Vec::with_capacity(ncols + 1);
        for v in &a[i] {
            row.push(if flip { -v } else { v.clone() });
        }
        for j in 0..m {
            row.push(if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
        row.push(if flip { -&b[i] } else { b[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (n..n + m).collect(),
        ncols,
    };
    let mut phase1 = vec![BigRational::zero(); ncols];
    for c in phase1.iter_mut().skip(n) {
        *c = BigRational::one();
    }
    let bounded = t.optimize(&phase1);
    debug_assert!(bounded, "phase 1 objective is bounded below by zero");
    let infeasibility: BigRational = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &bi)| bi >= n)
        .map(|(i, _)| t.rhs(i).clone())
        .sum();
    if !infeasibility.is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive lingering artificial variables out of the basis
    let mut drop_rows: Vec<usize> = Vec::new();
    for i in 0..m {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => drop_rows.push(i), // redundant constraint
            }
        }
    }
    for &i in drop_rows.iter().rev() {
        t.rows.remove(i);
        t.basis.remove(i);
    }
    // phase 2 on the original columns only
    for row in t.rows.iter_mut() {
        let rhs = row.pop().expect("rhs");
        row.truncate(n);
        row.push(rhs);
    }
    t.ncols = n;
    if !t.optimize(costs) {
        return LpOutcome::Unbounded;
    }
    let mut solution = vec![BigRational::zero(); n];
    for (i, &bi) in t.basis.iter().enumerate() {
        solution[bi] = t.rhs(i).clone();
    }
    let value = costs.iter().zip(&solution).map(|(c, x)| c * x).sum();
    LpOutcome::Optimal { value, solution }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn qv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn balances_a_simple_split() {
        // min x + y st x + y = 1
        let out = solve_min(&qv(&[1, 1]), &[qv(&[1, 1])], &qv(&[1]));
        match out {
            LpOutcome::Optimal { value, solution } => {
                assert_eq!(value, q(1));
                let total: BigRational = solution.iter().sum();
                assert_eq!(total, q(1));
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn prefers_the_cheap_column() {
        // min 3x + y st x + y = 4  ->  pick y
        let out = solve_min(&qv(&[3, 1]), &[qv(&[1, 1])], &qv(&[4]));
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: q(4),
                solution: qv(&[0, 4])
            }
        );
    }

    #[test]
    fn detects_infeasibility_and_unboundedness() {
        // x = -1 with x >= 0
        assert_eq!(
            solve_min(&qv(&[1]), &[qv(&[1])], &qv(&[-1])),
            LpOutcome::Infeasible
        );
        // min -x st x - y = 0: push both to infinity
        assert_eq!(
            solve_min(&qv(&[-1, 0]), &[qv(&[1, -1])], &qv(&[0])),
            LpOutcome::Unbounded
        );
    }

    #[test]
    fn negative_rhs_rows_are_flipped() {
        // -x - y = -4 is x + y = 4
        let out = solve_min(&qv(&[1, 2]), &[qv(&[-1, -1])], &qv(&[-4]));
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: q(4),
                solution: qv(&[4, 0])
            }
        );
    }

    #[test]
    fn fractional_optimum_is_exact() {
        // min x st 3x = 1
        let out = solve_min(&qv(&[1]), &[qv(&[3])], &qv(&[1]));
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: BigRational::new(BigInt::from(1), BigInt::from(3)),
                solution: vec![BigRational::new(BigInt::from(1), BigInt::from(3))],
            }
        );
    }

    #[test]
    fn redundant_constraints_are_tolerated() {
        // the same constraint twice
        let out = solve_min(&qv(&[1, 1]), &[qv(&[1, 1]), qv(&[2, 2])], &qv(&[1, 2]));
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_vertices_terminate() {
        // degenerate corner at the origin; Bland's rule must not cycle
        let out = solve_min(
            &qv(&[-1, -1, 0, 0]),
            &[qv(&[1, 0, 1, 0]), qv(&[0, 1, 0, 1]), qv(&[1, 1, 0, 0])],
            &qv(&[1, 1, 1]),
        );
        match out {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(-1)),
            other => panic!("expected optimum, got {other:?}"),
        }
    }
}
