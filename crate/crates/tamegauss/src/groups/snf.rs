//! Smith normal form over Z with transformation matrices, used to solve
//! integer systems A x = b and to parameterize all solutions.

use crate::error::{Error, Result};

type Mat = Vec<Vec<i128>>;

/// D = U A V with U, V unimodular and D diagonal, d_i | d_{i+1}.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: Mat,
    pub v: Mat,
    pub diag: Vec<i128>,
    pub rows: usize,
    pub cols: usize,
}

fn overflow() -> Error {
    Error::Resource("integer overflow in Smith normal form".into())
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect()
}

// row_i -= q * row_j
fn row_axpy(m: &mut Mat, i: usize, j: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for k in 0..m[i].len() {
        let t = m[j][k].checked_mul(q).ok_or_else(overflow)?;
        m[i][k] = m[i][k].checked_sub(t).ok_or_else(overflow)?;
    }
    Ok(())
}

fn col_axpy(m: &mut Mat, i: usize, j: usize, q: i128) -> Result<()> {
    if q == 0 {
        return Ok(());
    }
    for row in m.iter_mut() {
        let t = row[j].checked_mul(q).ok_or_else(overflow)?;
        row[i] = row[i].checked_sub(t).ok_or_else(overflow)?;
    }
    Ok(())
}

fn swap_cols(m: &mut Mat, i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

pub fn smith(a: &[Vec<i64>]) -> Result<Snf> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d: Mat = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // pick the smallest nonzero entry of the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| d[i][j] != 0)
            .min_by_key(|&(i, j)| (d[i][j].unsigned_abs(), i, j));
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut done = true;
            for i in t + 1..rows {
                if d[i][t] != 0 {
                    let q = d[i][t].div_euclid(d[t][t]);
                    row_axpy(&mut d, i, t, q)?;
                    row_axpy(&mut u, i, t, q)?;
                    if d[i][t] != 0 {
                        done = false;
                    }
                }
            }
            for j in t + 1..cols {
                if d[t][j] != 0 {
                    let q = d[t][j].div_euclid(d[t][t]);
                    col_axpy(&mut d, j, t, q)?;
                    col_axpy(&mut v, j, t, q)?;
                    if d[t][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                // divisibility: fold an offending row into row t
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d[i][j] % d[t][t] != 0));
                match bad {
                    None => break,
                    Some(i) => {
                        row_axpy(&mut d, t, i, -1)?;
                        row_axpy(&mut u, t, i, -1)?;
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (d[t][t].unsigned_abs(), t, t);
            for i in t + 1..rows {
                if d[i][t] != 0 && d[i][t].unsigned_abs() < best.0 {
                    best = (d[i][t].unsigned_abs(), i, t);
                }
            }
            for j in t + 1..cols {
                if d[t][j] != 0 && d[t][j].unsigned_abs() < best.0 {
                    best = (d[t][j].unsigned_abs(), t, j);
                }
            }
            let (_, bi, bj) = best;
            if bi != t {
                d.swap(t, bi);
                u.swap(t, bi);
            }
            if bj != t {
                swap_cols(&mut d, t, bj);
                swap_cols(&mut v, t, bj);
            }
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        diag.push(d[t][t]);
    }
    Ok(Snf { u, v, diag, rows, cols })
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// A particular integer solution of A x = b, or None.
    pub fn solve(&self, b: &[i64]) -> Result<Option<Vec<i128>>> {
        let mut c = vec![0i128; self.rows];
        for (i, ci) in c.iter_mut().enumerate() {
            let mut acc: i128 = 0;
            for (k, &bk) in b.iter().enumerate() {
                acc = acc.checked_add(self.u[i][k].checked_mul(bk as i128).ok_or_else(overflow)?).ok_or_else(overflow)?;
            }
            *ci = acc;
        }
        let r = self.rank();
        if c[r..].iter().any(|x| *x != 0) {
            return Ok(None);
        }
        let mut y = vec![0i128; self.cols];
        for i in 0..r {
            if c[i] % self.diag[i] != 0 {
                return Ok(None);
            }
            y[i] = c[i] / self.diag[i];
        }
        let mut x = vec![0i128; self.cols];
        for (j, xj) in x.iter_mut().enumerate() {
            let mut acc: i128 = 0;
            for (k, &yk) in y.iter().enumerate().take(r) {
                acc = acc.checked_add(self.v[j][k].checked_mul(yk).ok_or_else(overflow)?).ok_or_else(overflow)?;
            }
            *xj = acc;
        }
        Ok(Some(x))
    }

    /// Z-basis of the kernel of A.
    pub fn kernel(&self) -> Vec<Vec<i128>> {
        (self.rank()..self.cols).map(|k| (0..self.cols).map(|j| self.v[j][k]).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(a: &[Vec<i64>], x: &[i128]) -> Vec<i128> {
        a.iter().map(|r| r.iter().zip(x).map(|(&p, &q)| p as i128 * q).sum()).collect()
    }

    #[test]
    fn textbook_example() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a).unwrap();
        assert_eq!(s.diag, vec![2, 6, 12]);
    }

    #[test]
    fn solve_and_kernel() {
        let a = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 9]];
        let s = smith(&a).unwrap();
        let x = s.solve(&[5, 11]).unwrap().unwrap();
        assert_eq!(apply(&a, &x), vec![5, 11]);
        let ker = s.kernel();
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert_eq!(apply(&a, k), vec![0, 0]);
        }
        let s = smith(&[vec![2, 4]]).unwrap();
        assert!(s.solve(&[3]).unwrap().is_none());
    }
}
