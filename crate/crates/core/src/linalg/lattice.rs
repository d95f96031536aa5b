//! Lattices in `Z^d` given by generating rows: Hermite bases, kernels,
//! congruence sublattices and quotient structures.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, AbelianGroup, IntMatrix, Integer, Rational};
use crate::error::{Error, Result};

/// Row-style Hermite normal form of the lattice spanned by `generators`
/// in `Z^dim`: nonzero rows only, positive pivots, entries above each
/// pivot reduced into `[0, pivot)`. Equal lattices give equal output.
pub fn hermite_basis(generators: &[Vec<Integer>], dim: usize) -> Vec<Vec<Integer>> {
    let mut m = IntMatrix::from_rows(generators.to_vec(), dim);
    let mut row = 0;
    for col in 0..dim {
        if row == m.rows() {
            break;
        }
        loop {
            let pivot = (row..m.rows())
                .filter(|&i| !m[(i, col)].is_zero())
                .min_by(|&a, &b| m[(a, col)].abs().cmp(&m[(b, col)].abs()));
            let Some(pi) = pivot else { break };
            m.swap_rows(row, pi);
            let mut done = true;
            for i in row + 1..m.rows() {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let k = -m[(i, col)].div_floor(&m[(row, col)]);
                m.add_row_multiple(i, row, &k);
                done &= m[(i, col)].is_zero();
            }
            if done {
                break;
            }
        }
        if m[(row, col)].is_zero() {
            continue;
        }
        if m[(row, col)].is_negative() {
            m.negate_row(row);
        }
        for i in 0..row {
            let k = -m[(i, col)].div_floor(&m[(row, col)]);
            m.add_row_multiple(i, row, &k);
        }
        row += 1;
    }
    (0..row).map(|i| m.row(i).to_vec()).collect()
}

pub fn lattices_equal(a: &[Vec<Integer>], b: &[Vec<Integer>], dim: usize) -> bool {
    hermite_basis(a, dim) == hermite_basis(b, dim)
}

/// Basis of `{x in Z^cols : A x = 0}`.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<Integer>> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    (rank..a.cols()).map(|j| snf.q.column(j)).collect()
}

/// Basis of `{x in Z^dim : <c_i, x> = 0 mod m_i for all i}`; a modulus of
/// zero imposes an exact equation.
pub fn congruence_lattice(dim: usize, constraints: &[(Vec<Integer>, Integer)]) -> Vec<Vec<Integer>> {
    let s = constraints.len();
    let mut b = IntMatrix::zeros(s, dim + s);
    for (i, (coeffs, modulus)) in constraints.iter().enumerate() {
        assert_eq!(coeffs.len(), dim);
        for (j, c) in coeffs.iter().enumerate() {
            b[(i, j)] = c.clone();
        }
        b[(i, dim + i)] = modulus.clone();
    }
    let projected: Vec<Vec<Integer>> =
        integer_kernel(&b).into_iter().map(|v| v[..dim].to_vec()).collect();
    hermite_basis(&projected, dim)
}

/// Solves `x * B = target` over Q where the rows of `B` are `basis`.
/// Returns `None` when the system is inconsistent. Free variables are set
/// to zero.
pub fn solve_left_rational(basis: &[Vec<Integer>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let d = target.len();
    // augmented system B^T x = target, d equations in k unknowns
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rational> =
                basis.iter().map(|b| Rational::from_integer(b[i].clone())).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(pi) = (r..d).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, pi);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..d {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=k {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][k].clone();
    }
    Some(x)
}

/// Inverse over Q of a square integer matrix, or `None` if singular.
pub fn rational_inverse(m: &IntMatrix) -> Option<Vec<Vec<Rational>>> {
    assert!(m.is_square());
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> =
                m.row(i).iter().map(|x| Rational::from_integer(x.clone())).collect();
            row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let pi = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, pi);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let v = &f * &a[c][j];
                    a[i][j] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

fn to_integer(x: &Rational) -> Option<Integer> {
    x.is_integer().then(|| x.to_integer())
}

/// Structure of `span(ambient) / span(sub)`.
///
/// `ambient` must be linearly independent; every vector of `sub` must be an
/// integer combination of it and `sub` must have full rank in it.
pub fn quotient_structure(ambient: &[Vec<Integer>], sub: &[Vec<Integer>]) -> Result<AbelianGroup> {
    let k = ambient.len();
    let dim = ambient.first().or(sub.first()).map_or(0, Vec::len);
    if ambient.iter().chain(sub).any(|v| v.len() != dim) {
        return Err(Error::InvalidInput("vectors of differing lengths".into()));
    }
    if smith_normal_form(&IntMatrix::from_rows(ambient.to_vec(), dim)).rank() != k {
        return Err(Error::InvalidInput("ambient basis is linearly dependent".into()));
    }
    let mut coeffs = Vec::with_capacity(sub.len());
    for v in sub {
        let target: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
        let x = solve_left_rational(ambient, &target).ok_or(Error::NotInLattice)?;
        let x: Option<Vec<Integer>> = x.iter().map(to_integer).collect();
        coeffs.push(x.ok_or(Error::NotInLattice)?);
    }
    let c = IntMatrix::from_rows(coeffs, k);
    let snf = smith_normal_form(&c);
    let rank = snf.rank();
    if rank < k {
        return Err(Error::RankMismatch { ambient: k, sub: rank });
    }
    Ok(AbelianGroup::from_smith_diagonal(&snf.diagonal()[..k]))
}

/// Index of `span(v_1..v_n)` in the lattice of coordinate-sum-zero vectors
/// of `Z^{n+1}`, computed as `|det(v_1; ...; v_n; extra)| / |sum(extra)|`.
/// Returns zero when the `v_i` are dependent.
pub fn bordered_lattice_index(vs: &[Vec<Integer>], extra: &[Integer]) -> Result<Integer> {
    let n = vs.len();
    if extra.len() != n + 1 || vs.iter().any(|v| v.len() != n + 1) {
        return Err(Error::InvalidInput(format!("expected {n} vectors and a border in Z^{}", n + 1)));
    }
    if vs.iter().any(|v| !v.iter().sum::<Integer>().is_zero()) {
        return Err(Error::InvalidInput("vectors must have coordinate sum zero".into()));
    }
    let s: Integer = extra.iter().sum();
    if s.is_zero() {
        return Err(Error::InvalidInput("border vector has coordinate sum zero".into()));
    }
    let mut rows = vs.to_vec();
    rows.push(extra.to_vec());
    let det = IntMatrix::from_rows(rows, n + 1).determinant();
    let (q, r) = det.div_rem(&s);
    if !r.is_zero() {
        return Err(Error::Internal(format!("determinant {det} not divisible by border sum {s}")));
    }
    Ok(q.abs())
}
