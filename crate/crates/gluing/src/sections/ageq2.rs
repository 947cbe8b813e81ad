use super::complex::{order_complex, OrderComplex};
use crate::error::{Error, Result};
use crate::group::GroupCtx;
use petgraph::unionfind::UnionFind;
use serde::Serialize;
use std::collections::BTreeMap;

/// Poset of elementary abelian p-subgroups of rank at least 2, as subgroup ids.
#[derive(Clone, Debug)]
pub struct AGeq2 {
    pub p: usize,
    pub vertices: Vec<usize>,
}

impl AGeq2 {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn position(&self, id: usize) -> Option<usize> {
        self.vertices.iter().position(|&v| v == id)
    }

    /// Order complex with the conjugation action of the group's generators.
    pub fn order_complex(&self, ctx: &GroupCtx) -> OrderComplex {
        let l = &ctx.lattice;
        let action: Vec<Vec<usize>> = ctx
            .group
            .generators()
            .iter()
            .map(|&g| self.vertices.iter().map(|&e| self.position(l.conj(e, g)).expect("conjugation-closed")).collect())
            .collect();
        order_complex(self.len(), |a, b| l.leq(self.vertices[a], self.vertices[b]), &action)
    }
}

pub fn a_geq2(ctx: &GroupCtx, p: usize) -> AGeq2 {
    let l = &ctx.lattice;
    let vertices = l.elementary_abelian(&ctx.group, p, false).into_iter().filter(|&e| l.log_order(e, p) >= 2).collect();
    AGeq2 { p, vertices }
}

/// Connected components of `A_≥2(G)` with the distinguished component `B(G)`.
#[derive(Clone, Debug, Serialize)]
pub struct Components {
    /// Subgroup ids in `B(G)`.
    pub big: Vec<usize>,
    /// The remaining components.
    pub isolated: Vec<Vec<usize>>,
    /// How `B(G)` was chosen.
    pub choice: String,
}

pub fn components_a_geq2(ctx: &GroupCtx, p: usize) -> Result<Components> {
    let rank = ctx.p_rank(p);
    if rank < 2 {
        return Err(Error::RankTooSmall { rank });
    }
    let a = a_geq2(ctx, p);
    let l = &ctx.lattice;
    let n = a.len();
    let mut uf = UnionFind::<usize>::new(n);
    for i in 0..n {
        for j in 0..n {
            if l.leq(a.vertices[i], a.vertices[j]) {
                uf.union(i, j);
            }
        }
    }
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        comps.entry(uf.find(i)).or_default().push(a.vertices[i]);
    }
    let mut comps: Vec<Vec<usize>> = comps.into_values().collect();
    comps.sort();
    let normal_rank2 = a.vertices.iter().copied().find(|&e| l.log_order(e, p) == 2 && l.is_normal(e));
    let (pick, choice) = if rank == 2 {
        match normal_rank2 {
            Some(e) => (e, format!("least normal rank-2 subgroup (id {e})")),
            None => (a.vertices[0], format!("least rank-2 subgroup (id {}), none normal", a.vertices[0])),
        }
    } else {
        match normal_rank2 {
            Some(e) => (e, format!("component of the least normal rank-2 subgroup (id {e})")),
            None => {
                let largest = comps.iter().max_by_key(|c| c.len()).unwrap()[0];
                (largest, format!("largest component (contains id {largest}), no normal rank-2 subgroup"))
            }
        }
    };
    let (big, isolated): (Vec<_>, Vec<_>) = comps.into_iter().partition(|c| c.contains(&pick));
    let mut big = big.into_iter().next().unwrap();
    if rank == 2 {
        // every vertex is its own component; B(G) is the chosen vertex
        big = vec![pick];
    }
    Ok(Components { big, isolated, choice })
}
