use num_integer::Integer as _;
use num_traits::{Signed, Zero};

use super::{IntMatrix, Integer};

/// `p * a * q == d` with `p`, `q` unimodular and `d` diagonal, its
/// diagonal entries nonnegative and each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub p: IntMatrix,
    pub q: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<Integer> {
        self.d.diagonal()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with transformation matrices.
///
/// The pivot is always the nonzero entry of smallest absolute value in the
/// remaining block (first in row-major order on ties), so the output is a
/// deterministic function of the input.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut p = IntMatrix::identity(rows);
    let mut q = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = smallest_entry(&d, t) else {
                return SmithDecomposition { d, p, q };
            };
            d.swap_rows(t, pi);
            p.swap_rows(t, pi);
            d.swap_cols(t, pj);
            q.swap_cols(t, pj);

            let mut cleared = true;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let k = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &k);
                p.add_row_multiple(i, t, &k);
                cleared &= d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let k = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &k);
                q.add_col_multiple(j, t, &k);
                cleared &= d[(t, j)].is_zero();
            }
            if !cleared {
                continue;
            }

            // The pivot must divide the rest of the block; otherwise pull an
            // offending row up and go around again with a smaller pivot.
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)]))
            });
            match offending {
                Some(i) => {
                    let one = Integer::from(1);
                    d.add_row_multiple(t, i, &one);
                    p.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            p.negate_row(t);
        }
    }
    SmithDecomposition { d, p, q }
}

fn smallest_entry(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
