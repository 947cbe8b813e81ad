/// Finite poset given by its `≤` relation matrix.
#[derive(Clone, Debug)]
pub struct Poset {
    leq: Vec<Vec<bool>>,
}

impl Poset {
    pub fn new(leq: Vec<Vec<bool>>) -> Self {
        let n = leq.len();
        assert!(leq.iter().all(|r| r.len() == n), "relation matrix must be square");
        Poset { leq }
    }

    pub fn from_fn(n: usize, mut le: impl FnMut(usize, usize) -> bool) -> Self {
        Poset::new((0..n).map(|i| (0..n).map(|j| le(i, j)).collect()).collect())
    }

    pub fn len(&self) -> usize {
        self.leq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leq.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| self.leq[a][a])
            && (0..n).all(|a| (0..n).all(|b| a == b || !(self.leq[a][b] && self.leq[b][a])))
            && (0..n).all(|a| (0..n).all(|b| !self.leq[a][b] || (0..n).all(|c| !self.leq[b][c] || self.leq[a][c])))
    }

    /// A linear extension: elements sorted so that `a < b` in the poset implies a comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut below: Vec<usize> = (0..n).map(|b| (0..n).filter(|&a| a != b && self.leq[a][b]).count()).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (below[i], i));
        below.clear();
        order
    }
}

/// Möbius function `μ(x, y)` for all pairs (0 when x ≰ y).
pub fn mobius(p: &Poset) -> Vec<Vec<i64>> {
    let n = p.len();
    let ext = p.linear_extension();
    let mut mu = vec![vec![0i64; n]; n];
    for &x in &ext {
        mu[x][x] = 1;
        for &y in &ext {
            if y == x || !p.leq(x, y) {
                continue;
            }
            // every z with x ≤ z < y precedes y in the extension, so μ(x, z) is already set
            let s: i64 = (0..n).filter(|&z| z != y && p.leq(x, z) && p.leq(z, y)).map(|z| mu[x][z]).sum();
            mu[x][y] = -s;
        }
    }
    mu
}
