//! Smith normal form over the integers with both unimodular transforms
//! retained: `S = U * A * V` with `S` diagonal, `d_1 | d_2 | ...`, and
//! `U`, `V` invertible over Z. The transforms make solvability witnesses
//! extractable for the torus-lattice computations.

use alloc::vec;
use alloc::vec::Vec;

pub type Mat = Vec<Vec<i64>>;

#[derive(Debug, Clone)]
pub struct Snf {
    /// Diagonal entries, nonnegative, with the divisibility chain; length
    /// `min(rows, cols)`.
    pub diag: Vec<i64>,
    /// Row transform (rows x rows).
    pub u: Mat,
    /// Column transform (cols x cols).
    pub v: Mat,
    pub rank: usize,
}

fn identity(n: usize) -> Mat {
    let mut m = vec![vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

fn swap_rows(a: &mut Mat, i: usize, j: usize) {
    a.swap(i, j);
}

fn swap_cols(a: &mut Mat, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// row_i += q * row_j
fn add_row(a: &mut Mat, i: usize, j: usize, q: i64) {
    for c in 0..a[0].len() {
        a[i][c] += q * a[j][c];
    }
}

/// col_i += q * col_j
fn add_col(a: &mut Mat, i: usize, j: usize, q: i64) {
    for row in a.iter_mut() {
        row[i] += q * row[j];
    }
}

fn negate_row(a: &mut Mat, i: usize) {
    for x in a[i].iter_mut() {
        *x = -*x;
    }
}

/// Compute the Smith normal form of `a`.
pub fn smith_normal_form(a: &Mat) -> Snf {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut s = a.clone();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let dim = rows.min(cols);

    for t in 0..dim {
        // find the smallest-magnitude nonzero entry in the trailing block
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if s[i][j] != 0
                        && pivot.is_none_or(|(pi, pj)| s[i][j].abs() < s[pi][pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // trailing block is zero
                return finish(s, u, v, dim);
            };
            if pi != t {
                swap_rows(&mut s, t, pi);
                swap_rows(&mut u, t, pi);
            }
            if pj != t {
                swap_cols(&mut s, t, pj);
                swap_cols(&mut v, t, pj);
            }
            let mut clean = true;
            for i in (t + 1)..rows {
                if s[i][t] != 0 {
                    let q = s[i][t].div_euclid(s[t][t]);
                    add_row(&mut s, i, t, -q);
                    add_row(&mut u, i, t, -q);
                    if s[i][t] != 0 {
                        clean = false;
                    }
                }
            }
            for j in (t + 1)..cols {
                if s[t][j] != 0 {
                    let q = s[t][j].div_euclid(s[t][t]);
                    add_col(&mut s, j, t, -q);
                    add_col(&mut v, j, t, -q);
                    if s[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility: pivot must divide the whole block
            let mut offender = None;
            'scan: for i in (t + 1)..rows {
                for j in (t + 1)..cols {
                    if s[i][j] % s[t][t] != 0 {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            if let Some(i) = offender {
                add_row(&mut s, t, i, 1);
                add_row(&mut u, t, i, 1);
                continue;
            }
            break;
        }
        if s[t][t] < 0 {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    finish(s, u, v, dim)
}

fn finish(s: Mat, mut u: Mat, v: Mat, dim: usize) -> Snf {
    let mut diag = Vec::with_capacity(dim);
    for t in 0..dim {
        let mut d = s[t][t];
        if d < 0 {
            // can only happen for a trailing pivot never revisited
            d = -d;
            negate_row(&mut u, t);
        }
        diag.push(d);
    }
    let rank = diag.iter().filter(|&&d| d != 0).count();
    Snf { diag, u, v, rank }
}

/// Multiply `mat * vec` over Z.
pub fn mat_vec(mat: &Mat, vec_in: &[i64]) -> Vec<i64> {
    mat.iter()
        .map(|row| row.iter().zip(vec_in).map(|(a, b)| a * b).sum())
        .collect()
}
