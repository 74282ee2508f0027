//! Smith normal form over the integers with both transforms.

use super::abelian::AbelianGroup;
use super::matrix::{BigMatrix, IntMatrix};

/// `u * m * v == d`, `u` and `v` unimodular, `d` diagonal with
/// `d[0] | d[1] | ...` and non-negative entries.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: BigMatrix,
    pub d: IntMatrix,
    pub v: BigMatrix,
}

impl SmithForm {
    /// Diagonal entries `d[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<i128> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d[(i, i)])
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&x| x != 0).count()
    }

    /// Cokernel of the matrix acting on row vectors, i.e. `Z^cols / rowspace`.
    pub fn cokernel(&self) -> AbelianGroup {
        let free = self.d.ncols() - self.rank();
        let torsion = self
            .diagonal()
            .into_iter()
            .filter(|&x| x > 1)
            .map(|x| x as u64)
            .collect();
        AbelianGroup::from_chain(free, torsion)
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut d = m.clone();
    let mut u = BigMatrix::identity(rows);
    let mut v = BigMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&d, t) else {
                return SmithForm { u, d, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d[(t, t)];
            let mut clean = true;
            for i in t + 1..rows {
                let q = nearest_quotient(d[(i, t)], pivot);
                if q != 0 {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                clean &= d[(i, t)] == 0;
            }
            for j in t + 1..cols {
                let q = nearest_quotient(d[(t, j)], pivot);
                if q != 0 {
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                clean &= d[(t, j)] == 0;
            }
            if !clean {
                continue;
            }
            let bad_row = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| d[(i, j)] % pivot != 0));
            match bad_row {
                Some(i) => {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { u, d, v }
}

/// Quotient rounded to nearest, so remainders are at most half the pivot.
fn nearest_quotient(a: i128, b: i128) -> i128 {
    let q = a.div_euclid(b);
    let r = a - q * b;
    if 2 * r > b.abs() {
        q + b.signum()
    } else {
        q
    }
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i128, usize, usize)> = None;
    for i in t..d.nrows() {
        for j in t..d.ncols() {
            let a = d[(i, j)].abs();
            if a != 0 && best.is_none_or(|(b, _, _)| a < b) {
                best = Some((a, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}
