//! Exact rank computations over the rationals, plus a modular variant used
//! as an arithmetic cross-check.
//!
//! Sparse matrices are given column by column; each column is a list of
//! `(row, value)` pairs sorted by row. The sparse reducer is the classic
//! left-to-right column reduction keyed on the lowest nonzero row, carried
//! out fraction-free: a column is updated as `p * col - c * pivot_col` and
//! then divided by the gcd of its entries. Entries start in `i64`; if any
//! update would overflow, the whole matrix is redone over `BigInt`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type SparseColumn = Vec<(u32, i64)>;

/// Result of reducing a column-sparse matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Reduction {
    pub rank: usize,
    /// Lowest row of every surviving column, in column order.
    pub pivot_rows: Vec<u32>,
}

trait Scalar: Clone + PartialEq + core::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// `a * x - b * y`, or `None` on overflow.
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Scalar for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn combine(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}

struct Overflow;

/// `target <- p * target - c * pivot`, merging two sorted sparse columns.
fn eliminate<T: Scalar>(target: &[(u32, T)], pivot: &[(u32, T)], p: &T, c: &T) -> Result<Vec<(u32, T)>, Overflow> {
    let zero = T::from_i64(0);
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ri = target.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let rj = pivot.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        let (row, v) = if ri < rj {
            let v = T::combine(p, &target[i].1, &zero, &zero).ok_or(Overflow)?;
            i += 1;
            (ri, v)
        } else if rj < ri {
            let v = T::combine(&zero, &zero, c, &pivot[j].1).ok_or(Overflow)?;
            j += 1;
            (rj, v)
        } else {
            let v = T::combine(p, &target[i].1, c, &pivot[j].1).ok_or(Overflow)?;
            i += 1;
            j += 1;
            (ri, v)
        };
        if !v.is_zero() {
            out.push((row, v));
        }
    }
    Ok(out)
}

fn make_primitive<T: Scalar>(col: &mut [(u32, T)]) {
    let Some(first) = col.first() else { return };
    let mut g = first.1.gcd(&first.1);
    for (_, v) in col.iter().skip(1) {
        if g.is_one() {
            return;
        }
        g = g.gcd(v);
    }
    if !g.is_one() && !g.is_zero() {
        for (_, v) in col.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

fn reduce_generic<T: Scalar>(n_rows: usize, columns: &[SparseColumn], skip: &[bool]) -> Result<Reduction, Overflow> {
    let mut owner: Vec<u32> = alloc::vec![u32::MAX; n_rows];
    let mut reduced: Vec<Vec<(u32, T)>> = Vec::new();
    let mut pivot_rows = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        if skip.get(j).copied().unwrap_or(false) {
            continue;
        }
        let mut cur: Vec<(u32, T)> = col.iter().map(|&(r, v)| (r, T::from_i64(v))).collect();
        make_primitive(&mut cur);
        while let Some((low, c)) = cur.last().cloned() {
            let k = owner[low as usize];
            if k == u32::MAX {
                break;
            }
            let piv = &reduced[k as usize];
            let p = &piv.last().expect("nonzero pivot column").1;
            let g = p.gcd(&c);
            let (pg, cg) = (p.div_exact(&g), c.div_exact(&g));
            cur = eliminate(&cur, piv, &pg, &cg)?;
            make_primitive(&mut cur);
        }
        if let Some(&(low, _)) = cur.last() {
            owner[low as usize] = reduced.len() as u32;
            pivot_rows.push(low);
            reduced.push(cur);
        }
    }
    Ok(Reduction { rank: reduced.len(), pivot_rows })
}

/// Exact rank over `Q` of a column-sparse integer matrix with `n_rows` rows.
/// Columns flagged in `skip` are left out (used for clearing).
pub fn sparse_rank(n_rows: usize, columns: &[SparseColumn], skip: &[bool]) -> Reduction {
    match reduce_generic::<i64>(n_rows, columns, skip) {
        Ok(r) => r,
        Err(Overflow) => match reduce_generic::<BigInt>(n_rows, columns, skip) {
            Ok(r) => r,
            Err(Overflow) => unreachable!("big integers do not overflow"),
        },
    }
}

/// Rank modulo the prime `p` (which must be below `2^32`).
pub fn sparse_rank_mod_p(n_rows: usize, columns: &[SparseColumn], skip: &[bool], p: u64) -> Reduction {
    debug_assert!(p > 1 && p < (1 << 32));
    let inv = |a: u64| pow_mod(a, p - 2, p);
    let to_field = |v: i64| v.rem_euclid(p as i64) as u64;
    let mut owner: Vec<u32> = alloc::vec![u32::MAX; n_rows];
    let mut reduced: Vec<Vec<(u32, u64)>> = Vec::new();
    let mut pivot_rows = Vec::new();
    for (j, col) in columns.iter().enumerate() {
        if skip.get(j).copied().unwrap_or(false) {
            continue;
        }
        let mut cur: Vec<(u32, u64)> =
            col.iter().map(|&(r, v)| (r, to_field(v))).filter(|&(_, v)| v != 0).collect();
        while let Some(&(low, c)) = cur.last() {
            let k = owner[low as usize];
            if k == u32::MAX {
                break;
            }
            let piv = &reduced[k as usize];
            // pivot columns are kept monic at their low entry
            let factor = c;
            let mut out = Vec::with_capacity(cur.len() + piv.len());
            let (mut a, mut b) = (0, 0);
            while a < cur.len() || b < piv.len() {
                let ra = cur.get(a).map(|e| e.0).unwrap_or(u32::MAX);
                let rb = piv.get(b).map(|e| e.0).unwrap_or(u32::MAX);
                let (row, v) = if ra < rb {
                    a += 1;
                    (ra, cur[a - 1].1)
                } else if rb < ra {
                    b += 1;
                    (rb, (p - piv[b - 1].1 * factor % p) % p)
                } else {
                    a += 1;
                    b += 1;
                    (ra, (cur[a - 1].1 + p - piv[b - 1].1 * factor % p) % p)
                };
                if v != 0 {
                    out.push((row, v));
                }
            }
            cur = out;
        }
        if let Some(&(low, c)) = cur.last() {
            let ic = inv(c);
            for e in cur.iter_mut() {
                e.1 = e.1 * ic % p;
            }
            owner[low as usize] = reduced.len() as u32;
            pivot_rows.push(low);
            reduced.push(cur);
        }
    }
    Reduction { rank: reduced.len(), pivot_rows }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Rank over `Q` of a dense integer matrix by fraction-free (Bareiss)
/// elimination.
pub fn dense_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let n_rows = m.len();
    let n_cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..n_cols {
        let Some(piv) = (rank..n_rows).find(|&r| !Zero::is_zero(&m[r][col])) else { continue };
        m.swap(rank, piv);
        for r in rank + 1..n_rows {
            for c in col + 1..n_cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == n_rows {
            break;
        }
    }
    rank
}

/// Rank over `Q` of a column-sparse matrix small enough to be handled densely.
pub fn dense_rank_of_columns(n_rows: usize, columns: &[SparseColumn]) -> usize {
    // work on the transpose: columns become rows, rank is unchanged
    let rows: Vec<Vec<i64>> = columns
        .iter()
        .map(|col| {
            let mut r = alloc::vec![0i64; n_rows];
            for &(i, v) in col {
                r[i as usize] = v;
            }
            r
        })
        .collect();
    dense_rank(&rows)
}

/// Solves `a x = b` over `Q` for square, invertible `a`.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput(alloc::string::String::from("system is not square")));
    }
    let mut m: Vec<Vec<BigRational>> =
        a.iter().zip(b).map(|(row, rhs)| row.iter().cloned().chain(core::iter::once(rhs.clone())).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::Singular)?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for c in col..=n {
            m[col][c] = &m[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let v = &m[r][c] - &f * &m[col][c];
                    m[r][c] = v;
                }
            }
        }
    }
    Ok(m.into_iter().map(|mut r| r.pop().expect("augmented column")).collect())
}

/// Rank over `Q` of a small dense rational matrix.
pub fn rational_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    let n_rows = m.len();
    let n_cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(piv) = (rank..n_rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, piv);
        for r in rank + 1..n_rows {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &m[rank][col];
            for c in col..n_cols {
                let v = &m[r][c] - &f * &m[rank][c];
                m[r][c] = v;
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cols(dense: &[Vec<i64>]) -> Vec<SparseColumn> {
        // dense given as rows
        let n_cols = dense[0].len();
        (0..n_cols)
            .map(|c| {
                dense
                    .iter()
                    .enumerate()
                    .filter(|(_, r)| r[c] != 0)
                    .map(|(i, r)| (i as u32, r[c]))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn small_ranks_agree() {
        let m = vec![vec![2, 4, 6], vec![1, 2, 3], vec![0, 1, 5]];
        assert_eq!(dense_rank(&m), 2);
        assert_eq!(sparse_rank(3, &cols(&m), &[]).rank, 2);
        assert_eq!(sparse_rank_mod_p(3, &cols(&m), &[], 1_000_003).rank, 2);
    }

    #[test]
    fn torsion_is_invisible_over_q_but_not_mod_2() {
        let m = vec![vec![2, 0], vec![0, 2]];
        assert_eq!(sparse_rank(2, &cols(&m), &[]).rank, 2);
        assert_eq!(sparse_rank_mod_p(2, &cols(&m), &[], 2).rank, 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let m = vec![vec![big, big - 1], vec![big - 7, big - 1000]];
        let mut c = cols(&m);
        c.push(vec![(0, 1)]);
        assert_eq!(sparse_rank(2, &c, &[]).rank, 2);
        assert_eq!(dense_rank(&m), 2);
    }

    #[test]
    fn skip_drops_columns() {
        let m = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(sparse_rank(2, &cols(&m), &[true, false]).rank, 1);
    }

    #[test]
    fn solves_small_system() {
        let q = |n: i64| BigRational::from_integer(BigInt::from(n));
        let a = vec![vec![q(1), q(1)], vec![q(0), q(1)]];
        let x = solve_rational(&a, &[q(-1), q(0)]).unwrap();
        assert_eq!(x, vec![q(-1), q(0)]);
        let singular = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(solve_rational(&singular, &[q(1), q(1)]), Err(Error::Singular));
        assert_eq!(rational_rank(&singular), 1);
    }
}
