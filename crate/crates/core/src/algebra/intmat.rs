//! Dense integer matrices with exact Smith and Hermite normal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Rectangular matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows. Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix rows");
            data.extend(row.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone().into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &v[j])
                    .fold(BigInt::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = t / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self[(i, src)] * q;
            self[(i, dst)] -= t;
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(src, j)] * q;
            self[(dst, j)] -= t;
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }

    /// Column-style Hermite reduction. Returns `(H, U, rank)` with `H = self * U`,
    /// `U` unimodular, the first `cols - rank` columns of `H` zero and the last
    /// `rank` columns in echelon form, pivots processed from the bottom row up.
    /// Entries to the right of each pivot are reduced into `[0, pivot)`.
    pub fn column_hermite(&self) -> (IntMatrix, IntMatrix, usize) {
        let mut h = self.clone();
        let mut u = IntMatrix::identity(self.cols);
        let mut k = self.cols;
        for i in (0..self.rows).rev() {
            if k == 0 {
                break;
            }
            loop {
                // smallest nonzero entry among columns 0..k in row i
                let mut best: Option<usize> = None;
                for j in 0..k {
                    if !h[(i, j)].is_zero()
                        && best.is_none_or(|b| h[(i, j)].abs() < h[(i, b)].abs())
                    {
                        best = Some(j);
                    }
                }
                let Some(b) = best else { break };
                h.swap_cols(b, k - 1);
                u.swap_cols(b, k - 1);
                let piv = h[(i, k - 1)].clone();
                let mut done = true;
                for j in 0..k - 1 {
                    if h[(i, j)].is_zero() {
                        continue;
                    }
                    let q = h[(i, j)].div_floor(&piv);
                    h.col_axpy(j, k - 1, &q);
                    u.col_axpy(j, k - 1, &q);
                    if !h[(i, j)].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if h[(i, k - 1)].is_zero() {
                continue;
            }
            if h[(i, k - 1)].is_negative() {
                h.negate_col(k - 1);
                u.negate_col(k - 1);
            }
            let piv = h[(i, k - 1)].clone();
            for j in k..self.cols {
                let q = h[(i, j)].div_floor(&piv);
                h.col_axpy(j, k - 1, &q);
                u.col_axpy(j, k - 1, &q);
            }
            k -= 1;
        }
        let rank = self.cols - k;
        (h, u, rank)
    }

    /// Basis (as columns) of the integer kernel `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let (_, u, rank) = self.column_hermite();
        (0..self.cols - rank).map(|j| u.column(j)).collect()
    }

    /// Hermite normal form of the lattice spanned by the columns, assuming it
    /// has full rank `rows`. The result is square, upper triangular, with a
    /// positive diagonal and entries right of the diagonal reduced modulo it.
    pub fn hermite_basis(&self) -> Option<IntMatrix> {
        let (h, _, rank) = self.column_hermite();
        if rank != self.rows {
            return None;
        }
        let n = self.rows;
        let mut out = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = h[(i, self.cols - n + j)].clone();
            }
        }
        Some(out)
    }

    /// Smith normal form: returns `(U, D, V)` with `D = U * self * V` diagonal,
    /// nonnegative, `d_1 | d_2 | ...`, and `U`, `V` unimodular.
    pub fn smith_normal_form(&self) -> (IntMatrix, IntMatrix, IntMatrix) {
        let mut d = self.clone();
        let mut u = IntMatrix::identity(self.rows);
        let mut v = IntMatrix::identity(self.cols);
        let steps = self.rows.min(self.cols);
        let mut t = 0;
        while t < steps {
            // pivot: smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..self.rows {
                for j in t..self.cols {
                    if !d[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..self.rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.row_axpy(i, t, &q);
                u.row_axpy(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..self.cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.col_axpy(j, t, &q);
                v.col_axpy(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into row t and redo
            let piv = d[(t, t)].clone();
            let offending = (t + 1..self.rows)
                .find(|&i| (t + 1..self.cols).any(|j| !d[(i, j)].is_multiple_of(&piv)));
            if let Some(i) = offending {
                let minus_one = -BigInt::one();
                d.row_axpy(t, i, &minus_one);
                u.row_axpy(t, i, &minus_one);
                continue;
            }
            if d[(t, t)].is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            t += 1;
        }
        (u, d, v)
    }

    /// Diagonal of the Smith form.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let (_, d, _) = self.smith_normal_form();
        (0..self.rows.min(self.cols)).map(|i| d[(i, i)].clone()).collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Free-function form of [`IntMatrix::smith_normal_form`].
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    m.smith_normal_form()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_of(d: &IntMatrix) -> Vec<i64> {
        (0..d.rows().min(d.cols()))
            .map(|i| i64::try_from(&d[(i, i)]).unwrap())
            .collect()
    }

    #[test]
    fn snf_of_diag_2_3() {
        let m = IntMatrix::diagonal(&[2, 3]);
        let (u, d, v) = m.smith_normal_form();
        assert_eq!(diag_of(&d), vec![1, 6]);
        assert_eq!(u.mul(&m).mul(&v), d);
    }

    #[test]
    fn snf_identity_and_scalar() {
        let id = IntMatrix::identity(4);
        let (_, d, _) = id.smith_normal_form();
        assert_eq!(d, id);
        let m = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(m.smith_normal_form().1, m);
    }

    #[test]
    fn snf_rectangular() {
        let m = IntMatrix::from_rows(&[vec![6, 0, 4], vec![0, 10, 2]]);
        let (u, d, v) = m.smith_normal_form();
        assert!(d.is_diagonal());
        assert_eq!(u.mul(&m).mul(&v), d);
        assert_eq!(diag_of(&d), vec![2, 2]);
    }

    #[test]
    fn determinant_bareiss() {
        let m = IntMatrix::from_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.determinant(), BigInt::from(4));
        let s = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(s.determinant(), BigInt::from(-1));
    }

    #[test]
    fn hermite_basis_of_prime_over_31() {
        // lattice spanned by 31 and -8 + theta
        let m = IntMatrix::from_rows(&[vec![31, -8], vec![0, 1]]);
        let h = m.hermite_basis().unwrap();
        assert_eq!(h, IntMatrix::from_rows(&[vec![31, 23], vec![0, 1]]));
    }

    #[test]
    fn kernel_annihilates() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 6], vec![1, 1, 1]]);
        let ker = m.kernel();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(Zero::is_zero));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..4, 1usize..4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-9i64..10, c), r)
        })
    }

    proptest! {
        #[test]
        fn snf_reconstructs(rows in small_matrix()) {
            let m = IntMatrix::from_rows(&rows);
            let (u, d, v) = m.smith_normal_form();
            prop_assert_eq!(u.mul(&m).mul(&v), d.clone());
            prop_assert!(d.is_diagonal());
            prop_assert!(u.determinant().abs().is_one());
            prop_assert!(v.determinant().abs().is_one());
            let k = d.rows().min(d.cols());
            for i in 0..k {
                prop_assert!(!d[(i, i)].is_negative());
                if i + 1 < k && !d[(i, i)].is_zero() {
                    prop_assert!(d[(i + 1, i + 1)].is_multiple_of(&d[(i, i)]));
                }
            }
        }

        #[test]
        fn hermite_transform_is_consistent(rows in small_matrix()) {
            let m = IntMatrix::from_rows(&rows);
            let (h, u, _) = m.column_hermite();
            prop_assert_eq!(m.mul(&u), h);
            prop_assert!(u.determinant().abs().is_one());
        }
    }
}
