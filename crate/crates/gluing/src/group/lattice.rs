use super::{FinGroup, Subgroup, DEFAULT_SUBGROUP_CAP};
use crate::error::{Error, Result};
use std::collections::HashMap;

/// Every subgroup of a group, with conjugation, containment and normalizer data.
///
/// Subgroup ids follow the order (order, member list); id 0 is the trivial subgroup and the last
/// id is the whole group. Each conjugacy class is represented by its least id.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    n: usize,
    subgroups: Vec<Subgroup>,
    gens: Vec<Vec<usize>>,
    orders: Vec<usize>,
    index: HashMap<Subgroup, usize>,
    conj: Vec<u32>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    transporter: Vec<usize>,
    normalizer: Vec<usize>,
    centralizer: Vec<usize>,
    supersets: Vec<Vec<u64>>,
}

impl SubgroupLattice {
    pub fn new(g: &FinGroup) -> Result<Self> {
        Self::with_cap(g, DEFAULT_SUBGROUP_CAP)
    }

    pub fn with_cap(g: &FinGroup, cap: usize) -> Result<Self> {
        let n = g.order();
        if n > cap {
            return Err(Error::OrderBound { what: "subgroup enumeration", size: n, cap });
        }
        let mut found: HashMap<Subgroup, Vec<usize>> = HashMap::new();
        let mut queue: Vec<Subgroup> = vec![g.trivial_subgroup()];
        found.insert(g.trivial_subgroup(), Vec::new());
        // elements generating the same cyclic subgroup give the same extension
        let cyclic_key: Vec<Subgroup> = (0..n).map(|x| g.closure(&[x])).collect();
        while let Some(h) = queue.pop() {
            let hgens = found[&h].clone();
            let mut tried: std::collections::HashSet<&Subgroup> = std::collections::HashSet::new();
            for x in 0..n {
                if h.contains(x) || !tried.insert(&cyclic_key[x]) {
                    continue;
                }
                let mut kg = hgens.clone();
                kg.push(x);
                let k = g.closure(&kg);
                if !found.contains_key(&k) {
                    found.insert(k.clone(), kg);
                    queue.push(k);
                }
            }
        }
        let mut entries: Vec<(usize, Vec<usize>, Subgroup, Vec<usize>)> =
            found.into_iter().map(|(s, gens)| (s.order(), s.members().collect(), s, gens)).collect();
        entries.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let count = entries.len();
        let mut subgroups = Vec::with_capacity(count);
        let mut gens = Vec::with_capacity(count);
        let mut orders = Vec::with_capacity(count);
        for (o, _, s, gs) in entries {
            orders.push(o);
            subgroups.push(s);
            gens.push(gs);
        }
        let index: HashMap<Subgroup, usize> = subgroups.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();

        let mut conj = vec![0u32; count * n];
        for (i, s) in subgroups.iter().enumerate() {
            for x in 0..n {
                conj[i * n + x] = index[&g.conjugate(s, x)] as u32;
            }
        }
        let mut class_of = vec![usize::MAX; count];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut transporter = vec![0usize; count];
        for i in 0..count {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = classes.len();
            let mut orbit = Vec::new();
            for x in 0..n {
                let j = conj[i * n + x] as usize;
                if class_of[j] == usize::MAX {
                    class_of[j] = c;
                    transporter[j] = x;
                    orbit.push(j);
                }
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        let normalizer: Vec<usize> = (0..count)
            .map(|i| index[&Subgroup::from_members(n, (0..n).filter(|&x| conj[i * n + x] as usize == i))])
            .collect();
        let centralizer: Vec<usize> = subgroups.iter().map(|s| index[&g.centralizer_unchecked(s)]).collect();
        let words = count.div_ceil(64);
        let mut supersets = vec![vec![0u64; words]; count];
        for i in 0..count {
            for j in i..count {
                if orders[j] % orders[i] == 0 && subgroups[i].is_subset(&subgroups[j]) {
                    supersets[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        Ok(SubgroupLattice {
            n,
            subgroups,
            gens,
            orders,
            index,
            conj,
            class_of,
            classes,
            transporter,
            normalizer,
            centralizer,
            supersets,
        })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn group_order(&self) -> usize {
        self.n
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn whole(&self) -> usize {
        self.len() - 1
    }

    pub fn subgroup(&self, id: usize) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    /// A small generating set of the subgroup.
    pub fn generators(&self, id: usize) -> &[usize] {
        &self.gens[id]
    }

    pub fn id_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn order(&self, id: usize) -> usize {
        self.orders[id]
    }

    /// `H_a ≤ H_b`.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.supersets[a][b / 64] >> (b % 64) & 1 == 1
    }

    /// Id of `^g H`.
    #[inline]
    pub fn conj(&self, id: usize, g: usize) -> usize {
        self.conj[id * self.n + g] as usize
    }

    pub fn class_index(&self, id: usize) -> usize {
        self.class_of[id]
    }

    pub fn class_rep(&self, id: usize) -> usize {
        self.classes[self.class_of[id]][0]
    }

    pub fn is_class_rep(&self, id: usize) -> bool {
        self.class_rep(id) == id
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_reps(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().map(|c| c[0])
    }

    /// Some `t` with `^t rep = H`.
    pub fn transporter(&self, id: usize) -> usize {
        self.transporter[id]
    }

    pub fn normalizer(&self, id: usize) -> usize {
        self.normalizer[id]
    }

    pub fn centralizer(&self, id: usize) -> usize {
        self.centralizer[id]
    }

    pub fn is_normal(&self, id: usize) -> bool {
        self.normalizer[id] == self.whole()
    }

    /// `V ⊴ U` (with `V ≤ U`).
    pub fn is_normal_in(&self, v: usize, u: usize) -> bool {
        self.leq(v, u) && self.leq(u, self.normalizer[v])
    }

    pub fn intersection(&self, a: usize, b: usize) -> usize {
        self.index[&self.subgroups[a].intersection(&self.subgroups[b])]
    }

    pub fn join(&self, g: &FinGroup, a: usize, b: usize) -> usize {
        let mut gens = self.gens[a].clone();
        gens.extend_from_slice(&self.gens[b]);
        self.index[&g.closure(&gens)]
    }

    /// Ids of subgroups W with `lo ≤ W ≤ hi`.
    pub fn interval(&self, lo: usize, hi: usize) -> impl Iterator<Item = usize> + '_ {
        (lo..=hi).filter(move |&w| self.leq(lo, w) && self.leq(w, hi))
    }

    pub fn is_elementary_abelian(&self, g: &FinGroup, id: usize, p: usize) -> bool {
        g.is_elementary_abelian(&self.subgroups[id], p)
    }

    /// Rank r of an elementary abelian subgroup of order p^r.
    pub fn log_order(&self, id: usize, p: usize) -> usize {
        let mut o = self.orders[id];
        let mut r = 0;
        while o > 1 {
            o /= p;
            r += 1;
        }
        r
    }

    /// Ids of nontrivial elementary abelian p-subgroups, optionally with the trivial one.
    pub fn elementary_abelian(&self, g: &FinGroup, p: usize, include_trivial: bool) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (include_trivial || i != 0) && self.is_elementary_abelian(g, i, p))
            .filter(|&i| i == 0 || self.orders[i].is_multiple_of(p))
            .collect()
    }

    pub fn p_rank(&self, g: &FinGroup, p: usize) -> usize {
        self.elementary_abelian(g, p, true).into_iter().map(|i| self.log_order(i, p)).max().unwrap_or(0)
    }

    /// Ids of subgroups of order p in the center.
    pub fn central_of_order(&self, g: &FinGroup, p: usize) -> Vec<usize> {
        let z = g.center();
        (0..self.len()).filter(|&i| self.orders[i] == p && self.subgroups[i].is_subset(&z)).collect()
    }
}
