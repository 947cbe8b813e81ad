use super::matrix::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Smith normal form `U * M * V = S` together with the inverses of `U` and `V`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries d_1 | d_2 | ... (all positive).
    pub diag: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

struct Work {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    // row[i] += k row[j]; U follows, U^{-1} gets the inverse column operation.
    fn row_add(&mut self, i: usize, j: usize, k: &BigInt) {
        self.a.add_row_multiple(i, j, k);
        self.u.add_row_multiple(i, j, k);
        self.u_inv.add_col_multiple(j, i, &-k);
    }

    fn col_add(&mut self, i: usize, j: usize, k: &BigInt) {
        self.a.add_col_multiple(i, j, k);
        self.v.add_col_multiple(i, j, k);
        self.v_inv.add_row_multiple(j, i, &-k);
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    fn row_negate(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

fn smallest_nonzero(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

/// Smith normal form with unimodular transforms, smallest-absolute-value pivoting.
pub fn smith(m: &IntMatrix) -> Smith {
    let (r, c) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
        v_inv: IntMatrix::identity(c),
    };
    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = smallest_nonzero(&w.a, t) else { break };
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if w.a.get(i, t).is_zero() {
                    continue;
                }
                let q = w.a.get(i, t).div_floor(w.a.get(t, t));
                w.row_add(i, t, &-q);
                if !w.a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if w.a.get(t, j).is_zero() {
                    continue;
                }
                let q = w.a.get(t, j).div_floor(w.a.get(t, t));
                w.col_add(j, t, &-q);
                if !w.a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // move the smallest remainder in row/column t into the pivot
                let mut best: Option<(usize, usize)> = None;
                let mut best_abs = w.a.get(t, t).abs();
                for i in t + 1..r {
                    let v = w.a.get(i, t);
                    if !v.is_zero() && v.abs() < best_abs {
                        best_abs = v.abs();
                        best = Some((i, t));
                    }
                }
                for j in t + 1..c {
                    let v = w.a.get(t, j);
                    if !v.is_zero() && v.abs() < best_abs {
                        best_abs = v.abs();
                        best = Some((t, j));
                    }
                }
                if let Some((i, j)) = best {
                    if i != t {
                        w.row_swap(t, i);
                    } else {
                        w.col_swap(t, j);
                    }
                }
                continue;
            }
            // pivot isolated; enforce divisibility of the remaining block
            let p = w.a.get(t, t).clone();
            let mut bad = None;
            'scan: for i in t + 1..r {
                for j in t + 1..c {
                    if !w.a.get(i, j).is_multiple_of(&p) {
                        bad = Some(i);
                        break 'scan;
                    }
                }
            }
            match bad {
                Some(i) => w.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.a.get(t, t).is_negative() {
            w.row_negate(t);
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..r.min(c)).map(|i| w.a.get(i, i).clone()).take_while(|d| !d.is_zero()).collect();
    Smith { s: w.a, u: w.u, u_inv: w.u_inv, v: w.v, v_inv: w.v_inv, diag }
}

/// Nonzero invariant factors of `m` (dense).
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    smith(m).diag
}

/// Saturated kernel basis (columns) of `m` with an integer left inverse on that basis.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub basis: IntMatrix,
    pub left_inverse: IntMatrix,
}

pub fn kernel(m: &IntMatrix) -> KernelBasis {
    let sm = smith(m);
    let k = sm.rank();
    let idx: Vec<usize> = (k..m.cols()).collect();
    KernelBasis { basis: sm.v.select_columns(&idx), left_inverse: sm.v_inv.select_rows(&idx) }
}

/// Solver for `A x = b` reusing one Smith decomposition of `A`.
#[derive(Clone, Debug)]
pub struct Solver {
    sm: Smith,
    cols: usize,
}

impl Solver {
    pub fn new(a: &IntMatrix) -> Self {
        Solver { sm: smith(a), cols: a.cols() }
    }

    /// Some integer solution (free coordinates set to zero), or `None`.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let ub = self.sm.u.mul_vec(b);
        let k = self.sm.rank();
        if ub[k..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..k {
            let (q, rem) = ub[i].div_rem(&self.sm.diag[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
        Some(self.sm.v.mul_vec(&y))
    }
}

pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    Solver::new(a).solve(b)
}

/// Basis (full column rank) of the lattice spanned by the columns of `gens`.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    let sm = smith(gens);
    let n = gens.rows();
    let mut out = IntMatrix::zeros(n, sm.rank());
    for (j, d) in sm.diag.iter().enumerate() {
        for i in 0..n {
            out.set(i, j, sm.u_inv.get(i, j) * d);
        }
    }
    out
}

/// Absolute value of the determinant of a square matrix.
pub fn abs_det(m: &IntMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols());
    let sm = smith(m);
    if sm.rank() < m.rows() {
        return BigInt::zero();
    }
    sm.diag.iter().fold(BigInt::one(), |acc, d| acc * d)
}
