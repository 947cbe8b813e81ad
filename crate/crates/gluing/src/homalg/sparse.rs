//! Elementary divisors of large sparse integer matrices.
//!
//! Unit pivots are eliminated in place (Markowitz-style: shortest column first, shortest row
//! within it); whatever survives is handed to the dense Smith form. Arithmetic runs in checked
//! `i64` and restarts with `BigInt` on overflow.

use super::matrix::{IntMatrix, SparseMatrix};
use super::snf::invariant_factors;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Reverse;
use std::collections::BinaryHeap;

trait Entry: Clone + Sized {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// self - k * other
    fn sub_mul(&self, k: &Self, other: &Self) -> Option<Self>;
    fn mul(&self, other: &Self) -> Option<Self>;
}

impl Entry for i64 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, k: &Self, other: &Self) -> Option<Self> {
        self.checked_sub(k.checked_mul(*other)?)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
}

impl Entry for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(&self, k: &Self, other: &Self) -> Option<Self> {
        Some(self - k * other)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
}

struct Overflow;

type Row<T> = Vec<(usize, T)>;

fn row_get<T>(row: &Row<T>, c: usize) -> Option<&T> {
    row.binary_search_by_key(&c, |e| e.0).ok().map(|p| &row[p].1)
}

/// `dst - k * src`, merged by column.
fn combine<T: Entry>(dst: &Row<T>, k: &T, src: &Row<T>) -> Result<Row<T>, Overflow> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if take_src {
            let zero = T::from_big(&BigInt::zero()).ok_or(Overflow)?;
            let v = zero.sub_mul(k, &src[j].1).ok_or(Overflow)?;
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = dst[i].1.sub_mul(k, &src[j].1).ok_or(Overflow)?;
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// Eliminates unit pivots; returns the number of unit divisors and the dense remainder.
fn eliminate<T: Entry>(m: &SparseMatrix) -> Result<(usize, IntMatrix), Overflow> {
    let (nr, nc) = (m.rows(), m.cols());
    let mut rows: Vec<Row<T>> = Vec::with_capacity(nr);
    for i in 0..nr {
        let mut r = Vec::with_capacity(m.row_entries(i).len());
        for (j, v) in m.row_entries(i) {
            r.push((*j, T::from_big(v).ok_or(Overflow)?));
        }
        rows.push(r);
    }
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); nc];
    for (i, r) in rows.iter().enumerate() {
        for (j, _) in r {
            col_rows[*j].push(i);
        }
    }
    let mut row_alive = vec![true; nr];
    let mut col_alive = vec![true; nc];
    let mut units = 0usize;
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..nc).map(|c| Reverse((col_rows[c].len(), c))).collect();
    let mut deferred: Vec<usize> = Vec::new();
    loop {
        let mut progress = false;
        while let Some(Reverse((count, c))) = heap.pop() {
            if !col_alive[c] {
                continue;
            }
            let mut live: Vec<usize> = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| row_alive[r] && row_get(&rows[r], c).is_some())
                .collect();
            live.sort_unstable();
            live.dedup();
            col_rows[c] = live;
            let n = col_rows[c].len();
            if n == 0 {
                col_alive[c] = false;
                continue;
            }
            if n != count {
                heap.push(Reverse((n, c)));
                continue;
            }
            let pivot = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| row_get(&rows[r], c).is_some_and(T::is_unit))
                .min_by_key(|&r| (rows[r].len(), r));
            let Some(p) = pivot else {
                deferred.push(c);
                continue;
            };
            let pv = row_get(&rows[p], c).unwrap().clone();
            let prow = std::mem::take(&mut rows[p]);
            for &r in &col_rows[c].clone() {
                if r == p {
                    continue;
                }
                let a = row_get(&rows[r], c).unwrap().clone();
                // pivot is a unit, so a / pv = a * pv
                let k = a.mul(&pv).ok_or(Overflow)?;
                let new_row = combine(&rows[r], &k, &prow)?;
                for (j, _) in &new_row {
                    if row_get(&rows[r], *j).is_none() {
                        col_rows[*j].push(r);
                        heap.push(Reverse((col_rows[*j].len(), *j)));
                    }
                }
                rows[r] = new_row;
            }
            row_alive[p] = false;
            col_alive[c] = false;
            for (j, _) in &prow {
                if *j != c && col_alive[*j] {
                    heap.push(Reverse((col_rows[*j].len().saturating_sub(1), *j)));
                }
            }
            units += 1;
            progress = true;
        }
        if deferred.is_empty() || !progress {
            break;
        }
        for c in deferred.drain(..) {
            if col_alive[c] {
                heap.push(Reverse((usize::MAX, c)));
            }
        }
        // force a fresh count on the next pop
        let cols: Vec<usize> = heap.drain().map(|Reverse((_, c))| c).collect();
        for c in cols {
            heap.push(Reverse((0, c)));
        }
    }
    let live_rows: Vec<usize> = (0..nr).filter(|&r| row_alive[r] && !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..nc).filter(|&c| col_alive[c]).collect();
    let mut col_pos = vec![usize::MAX; nc];
    for (k, &c) in live_cols.iter().enumerate() {
        col_pos[c] = k;
    }
    let mut rest = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (k, &r) in live_rows.iter().enumerate() {
        for (j, v) in &rows[r] {
            if col_pos[*j] != usize::MAX {
                rest.set(k, col_pos[*j], v.to_big());
            }
        }
    }
    Ok((units, rest))
}

/// Nonzero elementary divisors d_1 | d_2 | ... of a sparse integer matrix.
pub fn elementary_divisors(m: &SparseMatrix) -> Vec<BigInt> {
    let (units, rest) = match eliminate::<i64>(m) {
        Ok(x) => x,
        Err(Overflow) => match eliminate::<BigInt>(m) {
            Ok(x) => x,
            Err(Overflow) => unreachable!("BigInt arithmetic cannot overflow"),
        },
    };
    let mut out = vec![BigInt::one(); units];
    if rest.rows() > 0 && rest.cols() > 0 {
        out.extend(invariant_factors(&rest));
    }
    out
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    elementary_divisors(m).len()
}
