//! Exact rank and span computations over the rationals.

use num_traits::Zero;

use crate::scalar::Rational;

/// Reduced row-echelon basis of the row space.
pub fn row_basis(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for v in m[rank].iter_mut() {
            *v = &*v / &pivot;
        }
        let piv = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = row[c].clone();
                for (a, b) in row.iter_mut().zip(piv.iter()) {
                    *a -= &f * b;
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    row_basis(rows).len()
}

/// Whether two families of vectors span the same subspace.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let ra = row_basis(a);
    let rb = row_basis(b);
    if ra.len() != rb.len() {
        return false;
    }
    let mut both = ra.clone();
    both.extend(rb);
    rank(&both) == ra.len()
}

/// Basis of `{v : m v = 0}` for a matrix with `cols` columns.
pub fn nullspace(m: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let rref = row_basis(m);
    let pivots: Vec<usize> =
        rref.iter().map(|row| row.iter().position(|v| !v.is_zero()).expect("nonzero row")).collect();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::from_integer(1.into());
            for (row, &p) in rref.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// `m v` for a rational matrix.
pub fn apply(m: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

pub fn transpose(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|c| m.iter().map(|row| row[c].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn ranks() {
        let m = vec![vec![int(0), int(1), int(0)], vec![int(-1), int(0), int(0)], vec![int(0), int(0), int(0)]];
        assert_eq!(rank(&m), 2);
        let dup = vec![vec![int(1), int(2)], vec![int(2), int(4)]];
        assert_eq!(rank(&dup), 1);
        assert!(same_span(&dup, &[vec![int(3), int(6)]]));
        assert!(!same_span(&dup, &[vec![int(1), int(0)]]));
        let k = nullspace(&dup, 2);
        assert_eq!(k, vec![vec![int(-2), int(1)]]);
        assert_eq!(apply(&dup, &k[0]), vec![int(0), int(0)]);
    }
}
