//! Exact integer matrix algebra: fraction-free determinants, characteristic
//! polynomials, compound matrices, Smith/Hermite normal forms and saturated
//! kernels.  Everything is `BigInt`; nothing here rounds.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix over Z.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        IMat {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += t;
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> IMat {
        assert!(self.is_square());
        let mut acc = IMat::identity(self.rows);
        let mut base = self.clone();
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

    pub fn scale(&self, k: &BigInt) -> IMat {
        IMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn entrywise_le(&self, other: &IMat) -> bool {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data.iter().zip(other.data.iter()).all(|(a, b)| a <= b)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    pub fn max_row_sum(&self) -> BigInt {
        (0..self.rows)
            .map(|i| self.row(i).iter().sum::<BigInt>())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn abs(&self) -> IMat {
        IMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.abs()).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IMat {
        let mut m = IMat::zero(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    /// Fraction-free Gaussian elimination (Bareiss) with row pivoting.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    let (q, r) = t.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division is exact");
                    a[(i, j)] = q;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    pub fn trace(&self) -> BigInt {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    /// Monic characteristic polynomial `det(xI - A)`, coefficients ascending
    /// (`c[0] + c[1] x + ... + x^n`).  Faddeev–LeVerrier; every division by
    /// the step index is exact over Z.
    pub fn char_poly(&self) -> Vec<BigInt> {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        if n == 0 {
            return coeffs;
        }
        let mut m = self.clone();
        coeffs[n - 1] = -m.trace();
        for k in 2..=n {
            // M <- A (M + c_{n-k+1} I)
            let mut shifted = m;
            for i in 0..n {
                let t = &shifted[(i, i)] + &coeffs[n - k + 1];
                shifted[(i, i)] = t;
            }
            m = self.mul(&shifted);
            let (q, r) = (-m.trace()).div_rem(&BigInt::from(k as u64));
            debug_assert!(r.is_zero(), "Faddeev-LeVerrier division is exact");
            coeffs[n - k] = q;
        }
        coeffs
    }

    /// p-th compound: minors over all row/column subsets of size p in
    /// lexicographic order.
    pub fn compound(&self, p: usize) -> IMat {
        assert!(self.is_square());
        let n = self.rows;
        assert!(p <= n, "compound order exceeds dimension");
        if p == 0 {
            return IMat::identity(1);
        }
        let subs = subsets_lex(n, p);
        let m = subs.len();
        let mut out = IMat::zero(m, m);
        for (i, ri) in subs.iter().enumerate() {
            for (j, cj) in subs.iter().enumerate() {
                out[(i, j)] = self.submatrix(ri, cj).det();
            }
        }
        out
    }

    /// Adjugate via cofactors: `A * adj(A) = det(A) * I`.
    pub fn adjugate(&self) -> IMat {
        assert!(self.is_square());
        let n = self.rows;
        if n == 0 {
            return IMat::zero(0, 0);
        }
        if n == 1 {
            return IMat::identity(1);
        }
        let idx: Vec<usize> = (0..n).collect();
        let mut adj = IMat::zero(n, n);
        for i in 0..n {
            let rows: Vec<usize> = idx.iter().copied().filter(|&r| r != i).collect();
            for j in 0..n {
                let cols: Vec<usize> = idx.iter().copied().filter(|&c| c != j).collect();
                let minor = self.submatrix(&rows, &cols).det();
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                // adjugate is the transpose of the cofactor matrix
                adj[(j, i)] = minor * BigInt::from(sign);
            }
        }
        adj
    }

    /// Smith normal form: returns `(u, s, v)` with `s = u * self * v`,
    /// `u`, `v` unimodular and `s` diagonal with `s_1 | s_2 | ...`, all
    /// diagonal entries non-negative.
    pub fn smith_normal_form(&self) -> (IMat, IMat, IMat) {
        let mut s = self.clone();
        let mut u = IMat::identity(self.rows);
        let mut v = IMat::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            // find a nonzero pivot in the lower-right block
            let pivot = (t..self.rows)
                .flat_map(|i| (t..self.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].is_zero());
            let (pi, pj) = match pivot {
                Some(p) => p,
                None => break,
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            // clear row & column t by Euclidean steps
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if s[(i, t)].is_zero() {
                        continue;
                    }
                    let q = div_round(&s[(i, t)], &s[(t, t)]);
                    if !q.is_zero() {
                        s.row_axpy(i, t, &(-&q));
                        u.row_axpy(i, t, &(-&q));
                    }
                    if !s[(i, t)].is_zero() {
                        s.swap_rows(t, i);
                        u.swap_rows(t, i);
                        dirty = true;
                    }
                }
                for j in t + 1..self.cols {
                    if s[(t, j)].is_zero() {
                        continue;
                    }
                    let q = div_round(&s[(t, j)], &s[(t, t)]);
                    if !q.is_zero() {
                        s.col_axpy(j, t, &(-&q));
                        v.col_axpy(j, t, &(-&q));
                    }
                    if !s[(t, j)].is_zero() {
                        s.swap_cols(t, j);
                        v.swap_cols(t, j);
                        dirty = true;
                    }
                }
                if !dirty
                    && (t + 1..self.rows).all(|i| s[(i, t)].is_zero())
                    && (t + 1..self.cols).all(|j| s[(t, j)].is_zero())
                {
                    break;
                }
            }
            // divisibility: fold any non-divisible entry into column t
            let mut fixed = false;
            for i in t + 1..self.rows {
                for j in t + 1..self.cols {
                    if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                        s.row_axpy(t, i, &BigInt::one());
                        u.row_axpy(t, i, &BigInt::one());
                        fixed = true;
                        break;
                    }
                }
                if fixed {
                    break;
                }
            }
            if fixed {
                continue; // redo this pivot
            }
            if s[(t, t)].is_negative() {
                s.scale_row(t, &BigInt::from(-1));
                u.scale_row(t, &BigInt::from(-1));
            }
            t += 1;
        }
        (u, s, v)
    }

    fn row_axpy(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let t = &self[(dst, c)] + k * &self[(src, c)];
            self[(dst, c)] = t;
        }
    }

    fn col_axpy(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let t = &self[(r, dst)] + k * &self[(r, src)];
            self[(r, dst)] = t;
        }
    }

    fn scale_row(&mut self, r: usize, k: &BigInt) {
        for c in 0..self.cols {
            let t = &self[(r, c)] * k;
            self[(r, c)] = t;
        }
    }

    pub fn rank(&self) -> usize {
        let (_, s, _) = self.smith_normal_form();
        (0..self.rows.min(self.cols))
            .take_while(|&i| !s[(i, i)].is_zero())
            .count()
    }

    /// Basis of the *saturated* integer kernel `{x : self * x = 0}`, as
    /// columns, canonicalized by Hermite reduction.  Because the basis comes
    /// from a unimodular transform, it generates every integer solution.
    pub fn kernel_basis(&self) -> IMat {
        let (_, s, v) = self.smith_normal_form();
        let n = self.rows.min(self.cols);
        let mut cols: Vec<usize> = Vec::new();
        for j in 0..self.cols {
            if j >= n || s[(j, j)].is_zero() {
                cols.push(j);
            }
        }
        let all_rows: Vec<usize> = (0..self.cols).collect();
        let raw = v.submatrix(&all_rows, &cols);
        // canonicalize: Hermite-reduce the transposed basis, transpose back
        let h = raw.transpose().hermite_rows();
        h.transpose()
    }

    /// Unique exact solution `X` of `self * X = y` when `self` has full
    /// column rank; `None` when no integer solution exists or the rank
    /// drops.  Works through the Smith form: `self = U^-1 S V^-1` turns the
    /// system into a diagonal one.
    pub fn solve_exact(&self, y: &IMat) -> Option<IMat> {
        assert_eq!(self.rows, y.rows, "solve_exact shape");
        if self.cols > self.rows {
            return None; // column rank is necessarily deficient
        }
        let (u, s, v) = self.smith_normal_form();
        let w = u.mul(y);
        let r = self.cols;
        let mut xprime = IMat::zero(r, y.cols);
        for i in 0..self.rows {
            for j in 0..y.cols {
                if i < r {
                    let d = &s[(i, i)];
                    if d.is_zero() {
                        return None; // column rank deficiency
                    }
                    let (q, rem) = w[(i, j)].div_rem(d);
                    if !rem.is_zero() {
                        return None;
                    }
                    xprime[(i, j)] = q;
                } else if !w[(i, j)].is_zero() {
                    return None; // inconsistent system
                }
            }
        }
        Some(v.mul(&xprime))
    }

    /// Row-style Hermite normal form (unique lattice basis): echelon rows,
    /// positive pivots, entries above each pivot reduced into `[0, pivot)`.
    /// Zero rows are dropped.
    pub fn hermite_rows(&self) -> IMat {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row index in `rows`, col)
        let mut next_row = 0;
        for col in 0..self.cols {
            // use Euclid on rows >= next_row to produce a single pivot
            loop {
                let mut nz: Vec<usize> = (next_row..rows.len())
                    .filter(|&i| !rows[i][col].is_zero())
                    .collect();
                if nz.is_empty() {
                    break;
                }
                if nz.len() == 1 {
                    let i = nz[0];
                    rows.swap(next_row, i);
                    if rows[next_row][col].is_negative() {
                        for x in rows[next_row].iter_mut() {
                            *x = -&*x;
                        }
                    }
                    pivots.push((next_row, col));
                    // reduce entries above the pivot
                    let pivot_row = rows[next_row].clone();
                    let p = pivot_row[col].clone();
                    for r in rows.iter_mut().take(next_row) {
                        let q = r[col].div_floor(&p);
                        if !q.is_zero() {
                            for (x, y) in r.iter_mut().zip(pivot_row.iter()) {
                                *x -= &q * y;
                            }
                        }
                    }
                    next_row += 1;
                    break;
                }
                // combine two nonzero entries
                nz.sort_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
                let (small, big) = (nz[0], nz[1]);
                let q = div_round(&rows[big][col], &rows[small][col]);
                let small_row = rows[small].clone();
                for (x, y) in rows[big].iter_mut().zip(small_row.iter()) {
                    *x -= &q * y;
                }
            }
        }
        let kept: Vec<Vec<BigInt>> = pivots.iter().map(|&(i, _)| rows[i].clone()).collect();
        IMat::from_bigint_rows(if kept.is_empty() { Vec::new() } else { kept })
    }
}

impl core::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Round-to-nearest integer division (ties toward zero): keeps Euclidean
/// steps in the normal-form routines shrinking fast.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = a.div_rem(b);
    if (&r * &two).abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// All size-`p` subsets of `{0..n-1}` in lexicographic order.
pub fn subsets_lex(n: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if p > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - p {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..p {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Characteristic polynomial of a square rational matrix, ascending
/// coefficients, monic.
pub fn char_poly_rational(m: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = m.len();
    for row in m {
        assert_eq!(row.len(), n, "char_poly_rational needs a square matrix");
    }
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    if n == 0 {
        return coeffs;
    }
    let trace =
        |a: &Vec<Vec<BigRational>>| -> BigRational { (0..n).map(|i| a[i][i].clone()).sum() };
    let matmul = |a: &Vec<Vec<BigRational>>, b: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        let mut out = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = &a[i][k] * &b[k][j];
                    out[i][j] += t;
                }
            }
        }
        out
    };
    let a: Vec<Vec<BigRational>> = m.to_vec();
    let mut cur = a.clone();
    coeffs[n - 1] = -trace(&cur);
    for k in 2..=n {
        let mut shifted = cur;
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        cur = matmul(&a, &shifted);
        coeffs[n - k] = -trace(&cur) / BigRational::from(BigInt::from(k as u64));
    }
    coeffs
}
