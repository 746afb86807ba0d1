//! Dense matrices over an exact [`Field`].

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalars::Field;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
    ctx: F::Ctx,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &F {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<F: Field> IndexMut<(usize, usize)> for Matrix<F> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut F {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(ctx: &F::Ctx, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero_in(ctx); rows * cols], ctx: ctx.clone() }
    }

    pub fn identity(ctx: &F::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m[(i, i)] = F::one_in(ctx);
        }
        m
    }

    pub fn from_fn(ctx: &F::Ctx, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data, ctx: ctx.clone() }
    }

    /// Panics on ragged input.
    pub fn from_rows(ctx: &F::Ctx, rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect(), ctx: ctx.clone() }
    }

    pub fn from_ints(ctx: &F::Ctx, rows: &[&[i64]]) -> Self {
        Self::from_rows(ctx, rows.iter().map(|r| r.iter().map(|&x| F::from_int(ctx, x)).collect()).collect())
    }

    pub fn diagonal(ctx: &F::Ctx, d: &[F]) -> Self {
        let mut m = Self::zeros(ctx, d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    /// The block matrix `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        assert!(a.rows == b.rows && c.rows == d.rows && a.cols == c.cols && b.cols == d.cols);
        let (r0, c0) = (a.rows, a.cols);
        Self::from_fn(&a.ctx, a.rows + c.rows, a.cols + b.cols, |r, col| match (r < r0, col < c0) {
            (true, true) => a[(r, col)].clone(),
            (true, false) => b[(r, col - c0)].clone(),
            (false, true) => c[(r - r0, col)].clone(),
            (false, false) => d[(r - r0, col - c0)].clone(),
        })
    }

    pub fn block_diag(a: &Self, d: &Self) -> Self {
        let b = Self::zeros(&a.ctx, a.rows, d.cols);
        let c = Self::zeros(&a.ctx, d.rows, a.cols);
        Self::from_blocks(a, &b, &c, d)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.ctx, rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
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

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.ctx, self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Self::zeros(&self.ctx, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.eq_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.eq_zero() {
                        let t = out[(i, j)].clone() + &(a.clone() * b);
                        out[(i, j)] = t;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = F::zero_in(&self.ctx);
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.eq_zero() && !b.eq_zero() {
                        acc = acc + &(a.clone() * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Self::from_fn(&self.ctx, self.rows, self.cols, |r, c| self[(r, c)].clone() + &rhs[(r, c)])
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols);
        Self::from_fn(&self.ctx, self.rows, self.cols, |r, c| self[(r, c)].clone() - &rhs[(r, c)])
    }

    pub fn scale(&self, s: &F) -> Self {
        Self::from_fn(&self.ctx, self.rows, self.cols, |r, c| self[(r, c)].clone() * s)
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(&self.ctx, self.rows, self.cols, |r, c| -self[(r, c)].clone())
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero_in(&self.ctx), |acc, i| acc + &self[(i, i)])
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.eq_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    /// `Some(c)` when the matrix equals `c * I`.
    pub fn scalar_value(&self) -> Option<F> {
        if !self.is_square() {
            return None;
        }
        let c = self.data.first().cloned().unwrap_or_else(|| F::zero_in(&self.ctx));
        for r in 0..self.rows {
            for k in 0..self.cols {
                let ok = if r == k { self[(r, k)] == c } else { self[(r, k)].eq_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].eq_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                let t = m[(row, c)].clone() * &inv;
                m[(row, c)] = t;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].eq_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].eq_zero() {
                        continue;
                    }
                    let t = m[(r, c)].clone() - &(factor.clone() * &m[(row, c)]);
                    m[(r, c)] = t;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![F::zero_in(&self.ctx); self.cols];
                v[f] = F::one_in(&self.ctx);
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self * x = b`.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(&self.ctx, self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                b[r].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero_in(&self.ctx); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let id = Self::identity(&self.ctx, n);
        let aug = Self::from_fn(
            &self.ctx,
            n,
            2 * n,
            |r, c| {
                if c < n {
                    self[(r, c)].clone()
                } else {
                    id[(r, c - n)].clone()
                }
            },
        );
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0, n, n, n))
    }

    pub fn det(&self) -> F {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = F::one_in(&self.ctx);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].eq_zero()) else {
                return F::zero_in(&self.ctx);
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det = det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if m[(r, col)].eq_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone() * &inv;
                for c in col..n {
                    let t = m[(r, c)].clone() - &(factor.clone() * &m[(col, c)]);
                    m[(r, c)] = t;
                }
            }
        }
        det
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), ctx: ctx.clone() }
    }
}
