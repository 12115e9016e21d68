//! Exact integer matrices and Smith normal form over 64-bit integers.
//!
//! All arithmetic is checked; any overflow aborts with [`Error::Overflow`].

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged integer matrix".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        })
    }

    pub fn diagonal_matrix(rows: usize, cols: usize, diag: &[i64]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, &d) in diag.iter().enumerate().take(rows.min(cols)) {
            m.set(i, i, d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.checked_mul(other.get(k, j)).ok_or(Error::Overflow)?;
                    let idx = i * out.cols + j;
                    out.entries[idx] = out.entries[idx].checked_add(prod).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for an integer vector.
    pub fn mul_vec(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.cols {
            return Err(Error::Shape("vector length mismatch".into()));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).try_fold(0i64, |acc, (&a, &b)| {
                    acc.checked_add(a.checked_mul(b).ok_or(Error::Overflow)?)
                        .ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    /// `self · v` with every product reduced modulo `modulus`.
    pub fn mul_vec_mod(&self, v: &[i64], modulus: i64) -> Vec<i64> {
        let m = modulus as i128;
        (0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .fold(0i128, |acc, (&a, &b)| (acc + a as i128 * b as i128) % m);
                s.rem_euclid(m) as i64
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k · row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for j in 0..self.cols {
            let s = self.get(src, j);
            if s != 0 {
                let v = self
                    .get(dst, j)
                    .checked_add(k.checked_mul(s).ok_or(Error::Overflow)?)
                    .ok_or(Error::Overflow)?;
                self.set(dst, j, v);
            }
        }
        Ok(())
    }

    /// col[dst] += k · col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for i in 0..self.rows {
            let s = self.get(i, src);
            if s != 0 {
                let v = self
                    .get(i, dst)
                    .checked_add(k.checked_mul(s).ok_or(Error::Overflow)?)
                    .ok_or(Error::Overflow)?;
                self.set(i, dst, v);
            }
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = self.get(i, j);
            self.set(i, j, -v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = self.get(i, j);
            self.set(i, j, -v);
        }
    }
}

/// Smith normal form `U · M · V = D`, with the inverses of the transforms.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v_inv: IntegerMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_0 | d_1 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d.get(i, i))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&d| d != 0).count()
    }
}

/// Invariant factors only; without transforms to track this stays within
/// range far longer than [`smith_normal_form`].
pub fn smith_diagonal(m: &IntegerMatrix) -> Result<Vec<i64>> {
    let none = Track {
        u: false,
        u_inv: false,
        v: false,
        v_inv: false,
    };
    let mut eng = Engine::new(m.clone(), none);
    eng.run()?;
    Ok(eng.finish().diagonal())
}

/// Smith normal form with all four transforms tracked.
pub fn smith_normal_form(m: &IntegerMatrix) -> Result<SmithForm> {
    let mut eng = Engine::new(m.clone(), Track::all());
    eng.run()?;
    Ok(eng.finish())
}

/// Which transforms the elimination records.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub fn all() -> Self {
        Self {
            u: true,
            u_inv: true,
            v: true,
            v_inv: true,
        }
    }
}

struct Engine {
    a: IntegerMatrix,
    u: Option<IntegerMatrix>,
    u_inv: Option<IntegerMatrix>,
    v: Option<IntegerMatrix>,
    v_inv: Option<IntegerMatrix>,
}

impl Engine {
    fn new(a: IntegerMatrix, t: Track) -> Self {
        let (r, c) = (a.rows, a.cols);
        Self {
            a,
            u: t.u.then(|| IntegerMatrix::identity(r)),
            u_inv: t.u_inv.then(|| IntegerMatrix::identity(r)),
            v: t.v.then(|| IntegerMatrix::identity(c)),
            v_inv: t.v_inv.then(|| IntegerMatrix::identity(c)),
        }
    }

    fn finish(self) -> SmithForm {
        let empty = IntegerMatrix::zeros(0, 0);
        SmithForm {
            d: self.a,
            u: self.u.unwrap_or_else(|| empty.clone()),
            u_inv: self.u_inv.unwrap_or_else(|| empty.clone()),
            v: self.v.unwrap_or_else(|| empty.clone()),
            v_inv: self.v_inv.unwrap_or(empty),
        }
    }

    // Row operations act on U from the left; U⁻¹ receives the inverse
    // operation as a column operation. Dually for V.

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    /// row[dst] += k row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        self.a.add_row(dst, src, k)?;
        if let Some(u) = &mut self.u {
            u.add_row(dst, src, k)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.add_col(src, dst, k.checked_neg().ok_or(Error::Overflow)?)?;
        }
        Ok(())
    }

    /// col[dst] += k col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) -> Result<()> {
        self.a.add_col(dst, src, k)?;
        if let Some(v) = &mut self.v {
            v.add_col(dst, src, k)?;
        }
        if let Some(vi) = &mut self.v_inv {
            vi.add_row(src, dst, k.checked_neg().ok_or(Error::Overflow)?)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_col(i);
        }
    }

    #[allow(dead_code)]
    fn negate_col(&mut self, j: usize) {
        self.a.negate_col(j);
        if let Some(v) = &mut self.v {
            v.negate_col(j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.negate_row(j);
        }
    }

    fn min_abs_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in t..self.a.rows {
            for (j, &x) in self.a.row(i).iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(b, _, _)| x.abs() < b) {
                    best = Some((x.abs(), i, j));
                    if x.abs() == 1 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    fn run(&mut self) -> Result<()> {
        let n = self.a.rows.min(self.a.cols);
        for t in 0..n {
            let Some((pi, pj)) = self.min_abs_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                // clear column t below the pivot
                let mut dirty = false;
                for i in t + 1..self.a.rows {
                    let x = self.a.get(i, t);
                    if x != 0 {
                        let q = rounded_quotient(x, self.a.get(t, t));
                        self.add_row(i, t, q.checked_neg().ok_or(Error::Overflow)?)?;
                        if self.a.get(i, t) != 0 {
                            dirty = true;
                        }
                    }
                }
                // clear row t right of the pivot
                for j in t + 1..self.a.cols {
                    let x = self.a.get(t, j);
                    if x != 0 {
                        let q = rounded_quotient(x, self.a.get(t, t));
                        self.add_col(j, t, q.checked_neg().ok_or(Error::Overflow)?)?;
                        if self.a.get(t, j) != 0 {
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    self.repivot(t);
                    continue;
                }
                // divisibility of the remaining block
                let p = self.a.get(t, t);
                let bad = (t + 1..self.a.rows)
                    .find(|&i| self.a.row(i)[t + 1..].iter().any(|&x| x % p != 0));
                match bad {
                    Some(i) => self.add_row(t, i, 1)?,
                    None => break,
                }
            }
            if self.a.get(t, t) < 0 {
                self.negate_row(t);
            }
        }
        Ok(())
    }

    /// Moves the smallest nonzero entry of row t / column t onto the diagonal.
    fn repivot(&mut self, t: usize) {
        let mut best = (self.a.get(t, t).abs(), t, t);
        for i in t + 1..self.a.rows {
            let x = self.a.get(i, t).abs();
            if x != 0 && x < best.0 {
                best = (x, i, t);
            }
        }
        for j in t + 1..self.a.cols {
            let x = self.a.get(t, j).abs();
            if x != 0 && x < best.0 {
                best = (x, t, j);
            }
        }
        let (_, i, j) = best;
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }
}

/// Diagonalizes `m` over `Z/modulus`: `U · M · V ≡ D (mod modulus)` with
/// `U`, `V` invertible modulo `modulus`. The diagonal is not put in
/// divisibility order; entries are residues in `[0, modulus)`, and the
/// cyclic factor at position `i` is `Z/gcd(d_i, modulus)`.
///
/// All arithmetic stays reduced, so unlike the integral form this cannot
/// overflow on large systems.
pub(crate) fn diagonalize_mod(m: &IntegerMatrix, modulus: i64, track: Track) -> Result<SmithForm> {
    if modulus < 1 {
        return Err(Error::Shape("modulus must be positive".into()));
    }
    let mut a = m.clone();
    for x in &mut a.entries {
        *x = x.rem_euclid(modulus);
    }
    let (r, c) = (a.rows, a.cols);
    let mut eng = ModEngine {
        n: modulus,
        a,
        u: track.u.then(|| IntegerMatrix::identity(r)),
        u_inv: track.u_inv.then(|| IntegerMatrix::identity(r)),
        v: track.v.then(|| IntegerMatrix::identity(c)),
        v_inv: track.v_inv.then(|| IntegerMatrix::identity(c)),
    };
    eng.run();
    let empty = IntegerMatrix::zeros(0, 0);
    Ok(SmithForm {
        d: eng.a,
        u: eng.u.unwrap_or_else(|| empty.clone()),
        u_inv: eng.u_inv.unwrap_or_else(|| empty.clone()),
        v: eng.v.unwrap_or_else(|| empty.clone()),
        v_inv: eng.v_inv.unwrap_or(empty),
    })
}

/// `[[p, q], [r, s]]` acting on a pair of rows or columns.
type Pair = [[i64; 2]; 2];

fn combine_rows(m: &mut IntegerMatrix, i: usize, j: usize, k: Pair, n: i64) {
    let n = n as i128;
    for col in 0..m.cols {
        let (x, y) = (m.get(i, col) as i128, m.get(j, col) as i128);
        if x == 0 && y == 0 {
            continue;
        }
        let xi = (k[0][0] as i128 * x + k[0][1] as i128 * y).rem_euclid(n);
        let yj = (k[1][0] as i128 * x + k[1][1] as i128 * y).rem_euclid(n);
        m.set(i, col, xi as i64);
        m.set(j, col, yj as i64);
    }
}

fn combine_cols(m: &mut IntegerMatrix, i: usize, j: usize, k: Pair, n: i64) {
    let n = n as i128;
    for row in 0..m.rows {
        let (x, y) = (m.get(row, i) as i128, m.get(row, j) as i128);
        if x == 0 && y == 0 {
            continue;
        }
        let xi = (k[0][0] as i128 * x + k[0][1] as i128 * y).rem_euclid(n);
        let yj = (k[1][0] as i128 * x + k[1][1] as i128 * y).rem_euclid(n);
        m.set(row, i, xi as i64);
        m.set(row, j, yj as i64);
    }
}

/// `(g, s, t)` with `g = gcd(a, b) = s a + t b`, for non-negative inputs.
fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r, old_s, old_t)
}

/// Unimodular pair `E` with `E · (a, b)ᵀ = (gcd, 0)ᵀ`, and its inverse.
fn gcd_pair(a: i64, b: i64) -> (Pair, Pair) {
    let (g, s, t) = extended_gcd(a, b);
    let (a1, b1) = (a / g, b / g);
    ([[s, t], [-b1, a1]], [[a1, -t], [b1, s]])
}

fn transpose_pair(k: Pair) -> Pair {
    [[k[0][0], k[1][0]], [k[0][1], k[1][1]]]
}

struct ModEngine {
    n: i64,
    a: IntegerMatrix,
    u: Option<IntegerMatrix>,
    u_inv: Option<IntegerMatrix>,
    v: Option<IntegerMatrix>,
    v_inv: Option<IntegerMatrix>,
}

impl ModEngine {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    /// Rows `(i, j)` become `E · (row_i, row_j)`.
    fn rows(&mut self, i: usize, j: usize, e: Pair, e_inv: Pair) {
        let n = self.n;
        combine_rows(&mut self.a, i, j, e, n);
        if let Some(u) = &mut self.u {
            combine_rows(u, i, j, e, n);
        }
        if let Some(ui) = &mut self.u_inv {
            combine_cols(ui, i, j, transpose_pair(e_inv), n);
        }
    }

    /// Columns `(i, j)` become `(col_i, col_j) · Eᵀ`.
    fn cols(&mut self, i: usize, j: usize, e: Pair, e_inv: Pair) {
        let n = self.n;
        combine_cols(&mut self.a, i, j, e, n);
        if let Some(v) = &mut self.v {
            combine_cols(v, i, j, e, n);
        }
        if let Some(vi) = &mut self.v_inv {
            combine_rows(vi, i, j, transpose_pair(e_inv), n);
        }
    }

    fn run(&mut self) {
        let steps = self.a.rows.min(self.a.cols);
        for t in 0..steps {
            let mut best: Option<(i64, usize, usize)> = None;
            for i in t..self.a.rows {
                for (j, &x) in self.a.row(i).iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(b, _, _)| x < b) {
                        best = Some((x, i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            // each non-divisible step strictly lowers the pivot
            loop {
                let mut dirty = false;
                for i in t + 1..self.a.rows {
                    let (p, x) = (self.a.get(t, t), self.a.get(i, t));
                    if x == 0 {
                        continue;
                    }
                    let (e, e_inv) = if x % p == 0 {
                        let q = x / p;
                        ([[1, 0], [-q, 1]], [[1, 0], [q, 1]])
                    } else {
                        gcd_pair(p, x)
                    };
                    self.rows(t, i, e, e_inv);
                }
                for j in t + 1..self.a.cols {
                    let (p, x) = (self.a.get(t, t), self.a.get(t, j));
                    if x == 0 {
                        continue;
                    }
                    let (e, e_inv) = if x % p == 0 {
                        let q = x / p;
                        ([[1, 0], [-q, 1]], [[1, 0], [q, 1]])
                    } else {
                        dirty = true;
                        gcd_pair(p, x)
                    };
                    self.cols(t, j, e, e_inv);
                }
                if dirty && (t + 1..self.a.rows).any(|i| self.a.get(i, t) != 0) {
                    continue;
                }
                break;
            }
        }
    }
}

/// Nearest-integer quotient, keeping remainders at most half the divisor.
fn rounded_quotient(x: i64, p: i64) -> i64 {
    let q = x.div_euclid(p);
    let r = x - q * p;
    if 2 * r.abs() > p.abs() {
        if p > 0 {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub(crate) fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a.rem_euclid(m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as i64)
}
