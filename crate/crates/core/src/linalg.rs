//! Dense integer matrices and the unimodular reductions built on them:
//! Smith normal form, row Hermite form, integer solving and kernels.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Row-major dense matrix over `i64`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row {i}");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<i64>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged column {j}");
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in apply");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Horizontal concatenation.
    pub fn hcat(blocks: &[&IntMatrix], rows: usize) -> IntMatrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows);
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, off + j)] = b[(i, j)];
                }
            }
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation.
    pub fn vcat(blocks: &[&IntMatrix], cols: usize) -> IntMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        IntMatrix { rows, cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[IntMatrix]) -> IntMatrix {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = IntMatrix::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)];
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Determinant by fraction-free elimination (Bareiss).
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a: Vec<Vec<i128>> =
            (0..n).map(|i| self.row(i).iter().map(|&x| x as i128).collect()).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        (sign * a[n - 1][n - 1]) as i64
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) {
        if k == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += k * v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) {
        if k == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += k * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of a Smith normal form computation: `u * m * v == d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Also tracked so that sections and kernels need no separate inversion.
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, in order. They form a divisibility chain.
    pub fn diagonal(&self) -> Vec<i64> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)]).take_while(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Returns `(D, U, V)` packaged in [`Smith`] with `U·M·V = D`, `D` diagonal,
/// nonnegative, and `d_i | d_{i+1}`.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut u_inv = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut v_inv = IntMatrix::identity(cols);

    // Row op on d mirrored into u (left) and u_inv (right, inverse op).
    macro_rules! row_add {
        ($dst:expr, $src:expr, $k:expr) => {{
            d.add_row($dst, $src, $k);
            u.add_row($dst, $src, $k);
            u_inv.add_col($src, $dst, -$k);
        }};
    }
    macro_rules! row_swap {
        ($a:expr, $b:expr) => {{
            d.swap_rows($a, $b);
            u.swap_rows($a, $b);
            u_inv.swap_cols($a, $b);
        }};
    }
    macro_rules! row_neg {
        ($a:expr) => {{
            d.negate_row($a);
            u.negate_row($a);
            for i in 0..u_inv.rows {
                u_inv[(i, $a)] = -u_inv[(i, $a)];
            }
        }};
    }
    macro_rules! col_add {
        ($dst:expr, $src:expr, $k:expr) => {{
            d.add_col($dst, $src, $k);
            v.add_col($dst, $src, $k);
            v_inv.add_row($src, $dst, -$k);
        }};
    }
    macro_rules! col_swap {
        ($a:expr, $b:expr) => {{
            d.swap_cols($a, $b);
            v.swap_cols($a, $b);
            v_inv.swap_rows($a, $b);
        }};
    }

    let n = rows.min(cols);
    for t in 0..n {
        // Pivot: smallest nonzero absolute value in the remaining block.
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d[(i, j)].abs();
                    if x != 0 && best.is_none_or(|(bi, bj)| x < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                // Remaining block is zero.
                return finish(d, u, v, u_inv, v_inv);
            };
            row_swap!(t, pi);
            col_swap!(t, pj);

            let p = d[(t, t)];
            let mut clean = true;
            for i in t + 1..rows {
                let q = Integer::div_floor(&d[(i, t)], &p);
                row_add!(i, t, -q);
                if d[(i, t)] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = Integer::div_floor(&d[(t, j)], &p);
                col_add!(j, t, -q);
                if d[(t, j)] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any entry not divisible by the pivot into row t.
            let mut bad = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if d[(i, j)] % p != 0 {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => row_add!(t, i, 1),
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            row_neg!(t);
        }
    }
    finish(d, u, v, u_inv, v_inv)
}

fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix, u_inv: IntMatrix, v_inv: IntMatrix) -> Smith {
    Smith { d, u, v, u_inv, v_inv }
}

/// Row-style Hermite normal form of `m`: returns `(H, T)` with `T·m = H`,
/// `T` unimodular, `H` in echelon form with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are kept at the
/// bottom. Also returns `T⁻¹`.
pub fn row_hermite(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut t = IntMatrix::identity(rows);
    let mut t_inv = IntMatrix::identity(rows);
    macro_rules! row_add {
        ($dst:expr, $src:expr, $k:expr) => {{
            h.add_row($dst, $src, $k);
            t.add_row($dst, $src, $k);
            t_inv.add_col($src, $dst, -$k);
        }};
    }
    macro_rules! row_swap {
        ($a:expr, $b:expr) => {{
            h.swap_rows($a, $b);
            t.swap_rows($a, $b);
            t_inv.swap_cols($a, $b);
        }};
    }
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let piv = (r..rows)
                .filter(|&i| h[(i, c)] != 0)
                .min_by_key(|&i| h[(i, c)].abs());
            let Some(pi) = piv else { break };
            row_swap!(r, pi);
            let p = h[(r, c)];
            let mut done = true;
            for i in r + 1..rows {
                let q = Integer::div_floor(&h[(i, c)], &p);
                row_add!(i, r, -q);
                if h[(i, c)] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < rows && h[(r, c)] != 0 {
            if h[(r, c)] < 0 {
                h.negate_row(r);
                t.negate_row(r);
                for i in 0..t_inv.rows {
                    t_inv[(i, r)] = -t_inv[(i, r)];
                }
            }
            let p = h[(r, c)];
            for i in 0..r {
                let q = Integer::div_floor(&h[(i, c)], &p);
                row_add!(i, r, -q);
            }
            r += 1;
        }
    }
    (h, t, t_inv)
}

/// Inverse of a unimodular square matrix, or `None` if `|det| != 1`.
pub fn inverse_unimodular(m: &IntMatrix) -> Option<IntMatrix> {
    if m.rows() != m.cols() {
        return None;
    }
    let s = smith_normal_form(m);
    if s.rank() != m.rows() || s.diagonal().iter().any(|&d| d != 1) {
        return None;
    }
    Some(s.v.mul(&s.u))
}

/// Solves `a·x = b` over the integers. Returns one solution, or `None`.
pub fn solve_integer(a: &IntMatrix, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(a.rows(), b.len());
    let s = smith_normal_form(a);
    let ub = s.u.apply(b);
    let r = s.rank();
    let mut y = vec![0i64; a.cols()];
    for (i, &x) in ub.iter().enumerate() {
        if i < r {
            let di = s.d[(i, i)];
            if x % di != 0 {
                return None;
            }
            y[i] = x / di;
        } else if x != 0 {
            return None;
        }
    }
    Some(s.v.apply(&y))
}

/// A basis (as columns of the returned vectors) of the integer kernel
/// `{x : a·x = 0}`, in Hermite-reduced form so the output is canonical.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<i64>> {
    let s = smith_normal_form(a);
    let r = s.rank();
    let basis: Vec<Vec<i64>> = (r..a.cols()).map(|j| s.v.col(j)).collect();
    canonical_lattice_basis(&basis, a.cols())
}

/// Canonical basis of the lattice spanned by `vectors` in `Z^n`: the
/// nonzero rows of the row Hermite form.
pub fn canonical_lattice_basis(vectors: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_rows(vectors, n);
    let (h, _, _) = row_hermite(&m);
    h.to_rows().into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect()
}

/// Whether `v` lies in the integer span of `gens`.
pub fn in_lattice(gens: &[Vec<i64>], v: &[i64]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let a = IntMatrix::from_cols(gens, v.len());
    solve_integer(&a, v).is_some()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(k: i64, a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| k * x).collect()
}

pub fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}
