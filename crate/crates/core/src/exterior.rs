//! Coefficient-generic exterior algebra on strictly increasing multi-indices.
//!
//! Shared by symbolic tensors (coefficients are [`Scalar`]s) and by
//! point-evaluated fiber data (coefficients are rationals).

use std::collections::BTreeMap;

use num_traits::Zero;
use smallvec::SmallVec;

use crate::scalar::{Rational, Scalar};

/// Strictly increasing list of coordinate positions.
pub type MultiIndex = SmallVec<[u8; 6]>;

/// Components keyed by multi-index; zero values are never stored.
pub type Components<C> = BTreeMap<MultiIndex, C>;

/// Ring operations needed by the exterior algebra.
pub trait Coeff: Clone + PartialEq {
    fn is_zero_coeff(&self) -> bool;
    fn add_coeff(&self, other: &Self) -> Self;
    fn mul_coeff(&self, other: &Self) -> Self;
    fn neg_coeff(&self) -> Self;
}

impl Coeff for Scalar {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_coeff(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_coeff(&self) -> Self {
        self.negate()
    }
}

impl Coeff for Rational {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn add_coeff(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_coeff(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_coeff(&self) -> Self {
        -self
    }
}

pub fn index(ix: &[usize]) -> MultiIndex {
    ix.iter().map(|&i| i as u8).collect()
}

/// Sorts `ix`, returning the permutation parity (true = odd) or `None` on a repeat.
pub fn normalize(ix: &[usize]) -> Option<(bool, MultiIndex)> {
    let mut v: SmallVec<[usize; 8]> = ix.iter().copied().collect();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((odd, v.iter().map(|&i| i as u8).collect()))
}

/// Adds `value` (negated when `negate`) at `key`, dropping zeros.
pub fn accumulate<C: Coeff>(map: &mut Components<C>, key: MultiIndex, value: C, negate: bool) {
    if value.is_zero_coeff() {
        return;
    }
    let value = if negate { value.neg_coeff() } else { value };
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(value);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get().add_coeff(&value);
            if s.is_zero_coeff() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

/// Parity of merging disjoint increasing `a` and `b` into increasing order, or `None` if they meet.
pub fn merge(a: &[u8], b: &[u8]) -> Option<(bool, MultiIndex)> {
    let mut out = MultiIndex::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] jumps over the remaining a's
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((inversions % 2 == 1, out))
}

pub fn wedge<C: Coeff>(a: &Components<C>, b: &Components<C>) -> Components<C> {
    let mut out = Components::new();
    for (ia, ca) in a {
        for (ib, cb) in b {
            if let Some((odd, k)) = merge(ia, ib) {
                accumulate(&mut out, k, ca.mul_coeff(cb), odd);
            }
        }
    }
    out
}

/// Removes the sub-index `inner` from the front of `outer`:
/// `outer = ±(inner ∧ rest)`; returns the sign and `rest`.
pub fn split_front(inner: &[u8], outer: &[u8]) -> Option<(bool, MultiIndex)> {
    let mut rest = MultiIndex::new();
    let mut inversions = 0usize;
    let mut taken = 0usize;
    for &o in outer {
        if taken < inner.len() && inner[taken] == o {
            // `o` passes every rest element already placed before it
            inversions += rest.len();
            taken += 1;
        } else {
            rest.push(o);
        }
    }
    (taken == inner.len()).then_some((inversions % 2 == 1, rest))
}

/// Left contraction: `⟨contract(a, b), c⟩ = ⟨b, a ∧ c⟩`.
pub fn contract<C: Coeff>(inner: &Components<C>, outer: &Components<C>) -> Components<C> {
    let mut out = Components::new();
    for (ia, ca) in inner {
        for (ib, cb) in outer {
            if let Some((odd, rest)) = split_front(ia, ib) {
                accumulate(&mut out, rest, ca.mul_coeff(cb), odd);
            }
        }
    }
    out
}

/// `Σ_J a_J b_J`, or `None` when both are empty (the caller supplies zero).
pub fn pair<C: Coeff>(a: &Components<C>, b: &Components<C>) -> Option<C> {
    let mut acc: Option<C> = None;
    for (k, ca) in a {
        if let Some(cb) = b.get(k) {
            let t = ca.mul_coeff(cb);
            acc = Some(match acc {
                None => t,
                Some(s) => s.add_coeff(&t),
            });
        }
    }
    acc
}

pub fn add<C: Coeff>(a: &Components<C>, b: &Components<C>) -> Components<C> {
    let mut out = a.clone();
    for (k, v) in b {
        accumulate(&mut out, k.clone(), v.clone(), false);
    }
    out
}

pub fn neg<C: Coeff>(a: &Components<C>) -> Components<C> {
    a.iter().map(|(k, v)| (k.clone(), v.neg_coeff())).collect()
}

pub fn scale<C: Coeff>(a: &Components<C>, s: &C) -> Components<C> {
    let mut out = Components::new();
    for (k, v) in a {
        accumulate(&mut out, k.clone(), v.mul_coeff(s), false);
    }
    out
}

/// All strictly increasing multi-indices of length `r` in `0..n`.
pub fn multi_indices(n: usize, r: usize) -> Vec<MultiIndex> {
    fn rec(n: usize, r: usize, start: usize, cur: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i as u8);
            rec(n, r, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(n, r, 0, &mut MultiIndex::new(), &mut out);
    }
    out
}

/// Determinant of a small square matrix by cofactor expansion.
pub fn det<C: Coeff>(m: &[Vec<C>], one: &C) -> C {
    let n = m.len();
    if n == 0 {
        return one.clone();
    }
    let cols: Vec<usize> = (0..n).collect();
    det_rec(m, 0, &cols, one)
}

fn det_rec<C: Coeff>(m: &[Vec<C>], row: usize, cols: &[usize], one: &C) -> C {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc: Option<C> = None;
    for (k, &c) in cols.iter().enumerate() {
        let e = &m[row][c];
        if e.is_zero_coeff() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let mut t = e.mul_coeff(&det_rec(m, row + 1, &rest, one));
        if k % 2 == 1 {
            t = t.neg_coeff();
        }
        acc = Some(match acc {
            None => t,
            Some(s) => s.add_coeff(&t),
        });
    }
    acc.unwrap_or_else(|| one.add_coeff(&one.neg_coeff()))
}

/// Applies the `r`-th exterior power of the linear map `m` (rows: outputs,
/// columns: inputs) to `u`.
pub fn push_forward<C: Coeff>(m: &[Vec<C>], u: &Components<C>, one: &C) -> Components<C> {
    let rows = m.len();
    let mut out = Components::new();
    let r = match u.keys().next() {
        Some(k) => k.len(),
        None => return out,
    };
    for j in multi_indices(rows, r) {
        for (i, c) in u {
            let minor: Vec<Vec<C>> =
                j.iter().map(|&a| i.iter().map(|&b| m[a as usize][b as usize].clone()).collect()).collect();
            accumulate(&mut out, j.clone(), det(&minor, one).mul_coeff(c), false);
        }
    }
    out
}

/// Applies the transpose of `m` on `r`-covectors: `(m^T a)_I = Σ_J det(m[J,I]) a_J`.
pub fn pull_back<C: Coeff>(m: &[Vec<C>], cols: usize, a: &Components<C>, one: &C) -> Components<C> {
    let mut out = Components::new();
    let r = match a.keys().next() {
        Some(k) => k.len(),
        None => return out,
    };
    for i in multi_indices(cols, r) {
        for (j, c) in a {
            let minor: Vec<Vec<C>> =
                j.iter().map(|&x| i.iter().map(|&y| m[x as usize][y as usize].clone()).collect()).collect();
            accumulate(&mut out, i.clone(), det(&minor, one).mul_coeff(c), false);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn basis(ix: &[usize]) -> Components<Rational> {
        let mut m = Components::new();
        m.insert(index(ix), int(1));
        m
    }

    #[test]
    fn merge_signs() {
        assert_eq!(merge(&[1], &[0]).unwrap(), (true, index(&[0, 1])));
        assert_eq!(merge(&[0, 2], &[1]).unwrap(), (true, index(&[0, 1, 2])));
        assert!(merge(&[0], &[0]).is_none());
        assert_eq!(normalize(&[2, 0, 1]).unwrap(), (false, index(&[0, 1, 2])));
    }

    #[test]
    fn left_contraction_of_basis() {
        // i_{dy}(∂x∧∂y) = −∂x and i_{dx}(∂x∧∂y) = ∂y
        let xy = basis(&[0, 1]);
        assert_eq!(contract(&basis(&[1]), &xy), {
            let mut m = Components::new();
            m.insert(index(&[0]), int(-1));
            m
        });
        assert_eq!(contract(&basis(&[0]), &xy), basis(&[1]));
    }

    #[test]
    fn determinant_and_powers() {
        let m = vec![vec![int(1), int(2)], vec![int(3), int(4)]];
        assert_eq!(det(&m, &int(1)), int(-2));
        let u = basis(&[0, 1]);
        assert_eq!(push_forward(&m, &u, &int(1)).get(&index(&[0, 1])).cloned(), Some(int(-2)));
    }
}
