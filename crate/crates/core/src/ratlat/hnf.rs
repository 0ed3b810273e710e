//! Hermite and Smith normal forms over the integers.
//!
//! The column Hermite form here is upper triangular with positive pivots and
//! the entries to the right of each pivot reduced modulo it; that form is the
//! unique canonical representative of a column span under unimodular column
//! operations.

// row/column eliminations read one line while mutating another; index
// loops keep that symmetric
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntMatrix = Vec<Vec<BigInt>>;

fn n_rows(m: &IntMatrix) -> usize {
    m.len()
}

fn n_cols(m: &IntMatrix) -> usize {
    m.first().map_or(0, Vec::len)
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

fn negate_col(m: &mut IntMatrix, j: usize) {
    for row in m.iter_mut() {
        let v = -row[j].clone();
        row[j] = v;
    }
}

/// Applies the unimodular transform `(col_a, col_b) <- (x a + y b, u a + v b)`.
fn combine_cols(m: &mut IntMatrix, a: usize, b: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
    for row in m.iter_mut() {
        let na = x * &row[a] + y * &row[b];
        let nb = u * &row[a] + v * &row[b];
        row[a] = na;
        row[b] = nb;
    }
}

/// Column Hermite normal form. Returns the canonical `n x rank` block.
///
/// The input columns are generators; the output columns are the canonical
/// basis of the same span: upper "staircase" with positive pivots, entries
/// right of each pivot in `[0, pivot)`.
pub fn column_hnf(input: &IntMatrix) -> (IntMatrix, usize) {
    let n = n_rows(input);
    let k = n_cols(input);
    let mut m = input.clone();
    let mut hi = k;
    // pivot_rows[c] = row of the pivot in column c (for c >= hi after the loop)
    let mut pivot_rows = vec![usize::MAX; k];
    for i in (0..n).rev() {
        if hi == 0 {
            break;
        }
        let target = hi - 1;
        if m[i][target].is_zero() {
            if let Some(j) = (0..target).rev().find(|&j| !m[i][j].is_zero()) {
                swap_cols(&mut m, j, target);
            } else {
                continue;
            }
        }
        for j in 0..target {
            if m[i][j].is_zero() {
                continue;
            }
            let a = m[i][target].clone();
            let b = m[i][j].clone();
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let ca = &a / &g;
            let cb = &b / &g;
            combine_cols(&mut m, target, j, &x, &y, &(-cb), &ca);
            debug_assert!(m[i][j].is_zero());
        }
        if m[i][target].is_negative() {
            negate_col(&mut m, target);
        }
        pivot_rows[target] = i;
        hi -= 1;
    }
    let rank = k - hi;
    // Drop the zero columns on the left.
    let mut h: IntMatrix = (0..n)
        .map(|i| m[i][hi..].to_vec())
        .collect();
    let pivots: Vec<usize> = pivot_rows[hi..].to_vec();
    // Reduce entries right of each pivot modulo the pivot.
    for j in (0..rank).rev() {
        let pi = pivots[j];
        for j2 in j + 1..rank {
            let q = h[pi][j2].div_floor(&h[pi][j]);
            if q.is_zero() {
                continue;
            }
            for r in 0..n {
                let s = &q * &h[r][j];
                h[r][j2] -= s;
            }
        }
    }
    (h, rank)
}

/// Smith normal form: returns `(p, d, q)` with `p * a * q = d`, `p` and `q`
/// unimodular, `d` diagonal with `d[i] | d[i+1]` and non-negative entries.
pub struct Snf {
    pub p: IntMatrix,
    pub d: IntMatrix,
    pub q: IntMatrix,
}

pub fn smith_normal_form(a: &IntMatrix) -> Snf {
    let rows = n_rows(a);
    let cols = n_cols(a);
    let mut m = a.clone();
    let mut p = identity(rows);
    let mut q = identity(cols);

    let steps = rows.min(cols);
    for t in 0..steps {
        if !move_pivot(&mut m, &mut p, &mut q, t) {
            break;
        }
        loop {
            clear_row(&mut m, &mut q, t);
            if clear_col(&mut m, &mut p, t) && m[t][t + 1..].iter().any(|x| !x.is_zero()) {
                // column ops refilled the row
                continue;
            }
            // enforce the divisibility chain: the pivot must divide the rest
            if let Some((ri, _)) = find_nondivisible(&m, t) {
                for j in 0..cols {
                    let s = m[ri][j].clone();
                    m[t][j] += &s;
                }
                for j in 0..rows {
                    let s = p[ri][j].clone();
                    p[t][j] += &s;
                }
                continue;
            }
            break;
        }
        if m[t][t].is_negative() {
            for j in 0..cols {
                let v = -m[t][j].clone();
                m[t][j] = v;
            }
            for j in 0..rows {
                let v = -p[t][j].clone();
                p[t][j] = v;
            }
        }
    }
    Snf { p, d: m, q }
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Brings a nonzero entry to `(t, t)`; false if the remaining block is zero.
fn move_pivot(m: &mut IntMatrix, p: &mut IntMatrix, q: &mut IntMatrix, t: usize) -> bool {
    let rows = n_rows(m);
    let cols = n_cols(m);
    for i in t..rows {
        for j in t..cols {
            if !m[i][j].is_zero() {
                if i != t {
                    m.swap(i, t);
                    p.swap(i, t);
                }
                if j != t {
                    swap_cols(m, j, t);
                    swap_cols(q, j, t);
                }
                return true;
            }
        }
    }
    false
}

/// Zeroes row `t` right of the pivot with unimodular column ops.
fn clear_row(m: &mut IntMatrix, q: &mut IntMatrix, t: usize) {
    let cols = n_cols(m);
    for j in t + 1..cols {
        if m[t][j].is_zero() {
            continue;
        }
        let a = m[t][t].clone();
        let b = m[t][j].clone();
        if !a.is_zero() && (&b % &a).is_zero() {
            // plain elimination keeps the pivot fixed
            let f = &b / &a;
            for row in m.iter_mut() {
                let s = &f * &row[t];
                row[j] -= s;
            }
            for row in q.iter_mut() {
                let s = &f * &row[t];
                row[j] -= s;
            }
        } else {
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let ca = &a / &g;
            let cb = &b / &g;
            combine_cols(m, t, j, &x, &y, &(-&cb), &ca);
            combine_cols(q, t, j, &x, &y, &(-cb), &ca);
        }
    }
}

/// Zeroes column `t` below the pivot with unimodular row ops.
/// Returns true if any work was done.
fn clear_col(m: &mut IntMatrix, p: &mut IntMatrix, t: usize) -> bool {
    let rows = n_rows(m);
    let cols = n_cols(m);
    let mut changed = false;
    for i in t + 1..rows {
        if m[i][t].is_zero() {
            continue;
        }
        changed = true;
        let a = m[t][t].clone();
        let b = m[i][t].clone();
        if !a.is_zero() && (&b % &a).is_zero() {
            // plain elimination keeps the pivot fixed
            let f = &b / &a;
            for j in 0..cols {
                let s = &f * &m[t][j];
                m[i][j] -= s;
            }
            let pr = n_cols(p);
            for j in 0..pr {
                let s = &f * &p[t][j];
                p[i][j] -= s;
            }
        } else {
            let eg = a.extended_gcd(&b);
            let (g, x, y) = (eg.gcd, eg.x, eg.y);
            let ca = &a / &g;
            let cb = &b / &g;
            // rows (t, i) <- (x t + y i, -cb t + ca i)
            for j in 0..cols {
                let nt = &x * &m[t][j] + &y * &m[i][j];
                let ni = -&cb * &m[t][j] + &ca * &m[i][j];
                m[t][j] = nt;
                m[i][j] = ni;
            }
            let pr = n_cols(p);
            for j in 0..pr {
                let nt = &x * &p[t][j] + &y * &p[i][j];
                let ni = -&cb * &p[t][j] + &ca * &p[i][j];
                p[t][j] = nt;
                p[i][j] = ni;
            }
        }
    }
    changed
}

fn find_nondivisible(m: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let rows = n_rows(m);
    let cols = n_cols(m);
    if m[t][t].is_zero() {
        return None;
    }
    for i in t + 1..rows {
        for j in t + 1..cols {
            if !m[i][j].mod_floor(&m[t][t]).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// All column-Hermite matrices of size `n` with determinant `m`; these
/// enumerate the index-`m` sublattices of any rank-`n` lattice.
pub fn hnf_matrices_of_det(n: usize, m: u64) -> Vec<IntMatrix> {
    assert!(m >= 1);
    let mut out = Vec::new();
    let mut diag = vec![1u64; n];
    fill_diag(n, m, 0, &mut diag, &mut out);
    out
}

fn fill_diag(n: usize, rem: u64, idx: usize, diag: &mut Vec<u64>, out: &mut Vec<IntMatrix>) {
    if idx == n {
        if rem == 1 {
            emit_offdiag(n, diag, out);
        }
        return;
    }
    let mut d = 1;
    while d <= rem {
        if rem.is_multiple_of(d) {
            diag[idx] = d;
            fill_diag(n, rem / d, idx + 1, diag, out);
        }
        d += 1;
    }
}

fn emit_offdiag(n: usize, diag: &[u64], out: &mut Vec<IntMatrix>) {
    // free entries: h[i][j] in [0, diag[i]) for j > i
    let mut positions = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            positions.push((i, j));
        }
    }
    let mut values = vec![0u64; positions.len()];
    loop {
        let mut h: IntMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::from(diag[i])
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for (p, &(i, j)) in positions.iter().enumerate() {
            h[i][j] = BigInt::from(values[p]);
        }
        out.push(h);
        // odometer
        let mut p = 0;
        loop {
            if p == positions.len() {
                return;
            }
            values[p] += 1;
            if values[p] < diag[positions[p].0] {
                break;
            }
            values[p] = 0;
            p += 1;
        }
    }
}
