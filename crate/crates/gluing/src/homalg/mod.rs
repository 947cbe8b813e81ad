//! Exact linear algebra over ℤ, ℤ/m and ℚ.

mod complex;
mod lattice;
mod matrix;
mod mobius;
mod snf;
mod sparse;

pub use complex::CochainComplex;
pub use lattice::{intersect, intersection_of_kernels, kernel_cokernel, preimage, AbMap, Quotient};
pub use matrix::{IntMatrix, SparseMatrix};
pub use mobius::{mobius, Poset};
pub use snf::{abs_det, invariant_factors, kernel, lattice_basis, smith, solve, KernelBasis, Smith, Solver};
pub use sparse::{elementary_divisors, rank};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Finitely generated abelian group ℤ^rank ⊕ ℤ/d_1 ⊕ ... with d_1 | d_2 | ..., each d_i ≥ 2.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbGroup {
    #[serde(rename = "rank")]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

impl AbGroup {
    pub fn zero() -> Self {
        AbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbGroup { free_rank: rank, torsion: Vec::new() }
    }

    /// ℤ/m, with m = 0 meaning ℤ.
    pub fn cyclic(m: u64) -> Self {
        Self::from_cyclic_orders(&[m])
    }

    /// Canonical form of a direct sum of cyclic groups; order 0 stands for ℤ.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let free_rank = orders.iter().filter(|&&o| o == 0).count();
        let finite: Vec<BigInt> = orders.iter().filter(|&&o| o > 1).map(|&o| BigInt::from(o)).collect();
        let n = finite.len();
        let torsion = if n == 0 {
            Vec::new()
        } else {
            let d = invariant_factors(&IntMatrix::diagonal(n, n, &finite));
            d.into_iter().filter(|x| *x > BigInt::from(1)).map(|x| x.to_u64().expect("torsion fits in u64")).collect()
        };
        AbGroup { free_rank, torsion }
    }

    /// Canonical form from (possibly non-canonical) diagonal invariants; 0 means a free summand.
    pub fn from_diagonal(diag: &[BigInt], extra_free: usize) -> Self {
        let mut orders: Vec<u64> = vec![0; extra_free];
        for d in diag {
            if d.is_zero() {
                orders.push(0);
            } else {
                orders.push(d.magnitude().to_u64().expect("torsion fits in u64"));
            }
        }
        Self::from_cyclic_orders(&orders)
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let mut orders = self.orders();
        orders.extend(other.orders());
        Self::from_cyclic_orders(&orders)
    }

    pub fn sum_all<'a>(parts: impl IntoIterator<Item = &'a AbGroup>) -> AbGroup {
        let mut orders = Vec::new();
        for p in parts {
            orders.extend(p.orders());
        }
        Self::from_cyclic_orders(&orders)
    }

    /// Orders of the canonical generators: torsion factors first, then 0 for each free summand.
    pub fn orders(&self) -> Vec<u64> {
        let mut o = self.torsion.clone();
        o.extend(std::iter::repeat_n(0, self.free_rank));
        o
    }

    pub fn num_generators(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Tensor product with the coefficient ring.
    pub fn tensor(&self, coeff: Coeff) -> AbGroup {
        match coeff {
            Coeff::Z => self.clone(),
            Coeff::Q => AbGroup::free(self.free_rank),
            Coeff::Zmod(m) => {
                let orders: Vec<u64> = self.orders().iter().map(|&o| if o == 0 { m } else { o.gcd(&m) }).collect();
                Self::from_cyclic_orders(&orders)
            }
        }
    }

    /// Tor_1 with ℤ/m.
    pub fn tor(&self, coeff: Coeff) -> AbGroup {
        match coeff {
            Coeff::Z | Coeff::Q => AbGroup::zero(),
            Coeff::Zmod(m) => {
                let orders: Vec<u64> = self.torsion.iter().map(|o| o.gcd(&m)).collect();
                Self::from_cyclic_orders(&orders)
            }
        }
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == d {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{}", j - i));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Coefficient ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Coeff {
    Z,
    Zmod(u64),
    Q,
}

impl Coeff {
    /// True if every integer prime to p is invertible.
    pub fn is_p_local(&self, p: u64) -> bool {
        match *self {
            Coeff::Q => true,
            Coeff::Z => false,
            Coeff::Zmod(m) => {
                let mut m = m;
                while m % p == 0 {
                    m /= p;
                }
                m == 1
            }
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Z => write!(f, "Z"),
            Coeff::Q => write!(f, "Q"),
            Coeff::Zmod(m) => write!(f, "Z/{m}"),
        }
    }
}

impl FromStr for Coeff {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Input(format!("unknown coefficient ring `{s}`"));
        match t {
            "Z" | "ZZ" => Ok(Coeff::Z),
            "Q" | "QQ" => Ok(Coeff::Q),
            _ => {
                let m = if let Some(rest) = t.strip_prefix("Z/") {
                    rest.parse::<u64>().map_err(|_| bad())?
                } else if let Some(rest) = t.strip_prefix('F') {
                    rest.parse::<u64>().map_err(|_| bad())?
                } else {
                    return Err(bad());
                };
                match m {
                    0 => Ok(Coeff::Z),
                    1 => Err(Error::Input("the zero ring is not a coefficient ring".into())),
                    m => Ok(Coeff::Zmod(m)),
                }
            }
        }
    }
}

impl FromStr for AbGroup {
    type Err = Error;

    /// Parses sums like `Z`, `Z^2 + Z/4`, `Z/2`, `0`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("cannot parse abelian group `{s}`"));
        let mut orders = Vec::new();
        for part in s.split('+').map(str::trim) {
            if part == "0" {
                continue;
            }
            let (base, exp) = match part.rsplit_once('^') {
                Some((b, e)) => (b.trim().trim_start_matches('(').trim_end_matches(')'), e.trim().parse::<usize>().map_err(|_| bad())?),
                None => (part, 1),
            };
            let order = match base {
                "Z" => 0,
                _ => base.strip_prefix("Z/").and_then(|x| x.parse::<u64>().ok()).ok_or_else(bad)?,
            };
            orders.extend(std::iter::repeat_n(order, exp));
        }
        Ok(AbGroup::from_cyclic_orders(&orders))
    }
}
