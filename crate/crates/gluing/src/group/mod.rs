//! Finite permutation groups with a full multiplication table.

mod catalog;
mod classify;
mod lattice;

pub use catalog::{catalog, corpus, load_group, parse_group_file, GroupFile};
pub use classify::{classify, GroupKind};
pub use lattice::SubgroupLattice;

use crate::error::{Error, Result};
use std::collections::{HashMap, VecDeque};
use std::fmt;

pub const DEFAULT_ELEMENT_CAP: usize = 4096;
pub const DEFAULT_SUBGROUP_CAP: usize = 128;

pub type Perm = Vec<u32>;

/// A finite group given as permutations of `0..degree`.
///
/// Elements are sorted lexicographically by image array, so the identity is element 0.
/// The product is composition `(g*h)(x) = g(h(x))`.
#[derive(Clone)]
pub struct FinGroup {
    degree: usize,
    elements: Vec<Perm>,
    generators: Vec<usize>,
    label: String,
    table: Vec<u32>,
    inverse: Vec<u32>,
    lookup: HashMap<Perm, u32>,
}

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinGroup({}, order {})", self.label, self.order())
    }
}

fn compose(g: &[u32], h: &[u32]) -> Perm {
    h.iter().map(|&x| g[x as usize]).collect()
}

impl FinGroup {
    pub fn from_generators(degree: usize, gens: &[Perm]) -> Result<Self> {
        Self::from_generators_capped(degree, gens, DEFAULT_ELEMENT_CAP)
    }

    pub fn from_generators_capped(degree: usize, gens: &[Perm], cap: usize) -> Result<Self> {
        for g in gens {
            let mut seen = vec![false; degree];
            let ok = g.len() == degree
                && g.iter().all(|&x| (x as usize) < degree && !std::mem::replace(&mut seen[x as usize], true));
            if !ok {
                return Err(Error::NotAPermutation { degree, image: g.iter().map(|&x| x as usize).collect() });
            }
        }
        let id: Perm = (0..degree as u32).collect();
        let mut found: HashMap<Perm, ()> = HashMap::new();
        found.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = compose(&x, g);
                if !found.contains_key(&y) {
                    if found.len() >= cap {
                        return Err(Error::OrderBound { what: "group order", size: found.len() + 1, cap });
                    }
                    found.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = found.into_keys().collect();
        elements.sort();
        let lookup: HashMap<Perm, u32> = elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let generators: Vec<usize> = gens.iter().map(|g| lookup[g] as usize).collect();
        let n = elements.len();

        // rows of the table for generators directly, the rest by x = y*s along a BFS tree
        let mut table = vec![u32::MAX; n * n];
        let mut gens_dedup = generators.clone();
        gens_dedup.sort_unstable();
        gens_dedup.dedup();
        for &s in &gens_dedup {
            for j in 0..n {
                table[s * n + j] = lookup[&compose(&elements[s], &elements[j])];
            }
        }
        for j in 0..n {
            table[j] = j as u32;
        }
        let mut done = vec![false; n];
        done[0] = true;
        for &s in &gens_dedup {
            done[s] = true;
        }
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        queue.extend(gens_dedup.iter().copied());
        while let Some(y) = queue.pop_front() {
            for &s in &gens_dedup {
                // x = y * s, so x * e_j = y * (s * e_j)
                let x = table[y * n + s] as usize;
                if !done[x] {
                    for j in 0..n {
                        let sj = table[s * n + j] as usize;
                        table[x * n + j] = table[y * n + sj];
                    }
                    done[x] = true;
                    queue.push_back(x);
                }
            }
        }
        debug_assert!(done.iter().all(|&d| d));
        let mut inverse = vec![0u32; n];
        for i in 0..n {
            for j in 0..n {
                if table[i * n + j] == 0 {
                    inverse[i] = j as u32;
                    break;
                }
            }
        }
        Ok(FinGroup { degree, elements, generators, label: String::new(), table, inverse, lookup })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn trivial() -> Self {
        FinGroup::from_generators(1, &[]).expect("trivial group").with_label("1")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &[u32]) -> Option<usize> {
        self.lookup.get(p).map(|&i| i as usize)
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The prime p if the order is a positive power of p.
    pub fn prime(&self) -> Option<usize> {
        prime_of_power(self.order())
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_members(self.order(), 0..self.order())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_members(self.order(), [0])
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let n = self.order();
        let mut bits = Subgroup::empty(n);
        bits.insert(0);
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !bits.contains(y) {
                    bits.insert(y);
                    queue.push(y);
                }
            }
        }
        bits
    }

    pub fn is_subgroup(&self, h: &Subgroup) -> bool {
        let m: Vec<usize> = h.members().collect();
        h.contains(0) && m.iter().all(|&a| m.iter().all(|&b| h.contains(self.mul(a, self.inv(b)))))
    }

    fn check(&self, h: &Subgroup) -> Result<()> {
        if h.universe() == self.order() && self.is_subgroup(h) {
            Ok(())
        } else {
            Err(Error::NotASubgroup(format!("{h:?}")))
        }
    }

    /// `^g H = g H g⁻¹`.
    pub fn conjugate(&self, h: &Subgroup, g: usize) -> Subgroup {
        Subgroup::from_members(self.order(), h.members().map(|x| self.conj(g, x)))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Result<Subgroup> {
        self.check(h)?;
        Ok(self.normalizer_unchecked(h))
    }

    pub(crate) fn normalizer_unchecked(&self, h: &Subgroup) -> Subgroup {
        let n = self.order();
        Subgroup::from_members(n, (0..n).filter(|&g| h.members().all(|x| h.contains(self.conj(g, x)))))
    }

    pub fn centralizer(&self, h: &Subgroup) -> Result<Subgroup> {
        self.check(h)?;
        Ok(self.centralizer_unchecked(h))
    }

    pub(crate) fn centralizer_unchecked(&self, h: &Subgroup) -> Subgroup {
        let n = self.order();
        Subgroup::from_members(n, (0..n).filter(|&g| h.members().all(|x| self.mul(g, x) == self.mul(x, g))))
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer_unchecked(&self.whole())
    }

    pub fn is_normal(&self, h: &Subgroup) -> Result<bool> {
        self.check(h)?;
        Ok(self.generators.iter().all(|&g| h.members().all(|x| h.contains(self.conj(g, x)))))
    }

    /// Is `h` elementary abelian of exponent `p` (the trivial group counts)?
    pub fn is_elementary_abelian(&self, h: &Subgroup, p: usize) -> bool {
        let m: Vec<usize> = h.members().collect();
        m.iter().all(|&a| self.element_order(a) == 1 || self.element_order(a) == p)
            && m.iter().all(|&a| m.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Largest r with (ℤ/p)^r ≤ G.
    pub fn p_rank(&self, p: usize) -> usize {
        // greedy growth of elementary abelian subgroups through all choices, bounded by order
        let n = self.order();
        let candidates: Vec<usize> = (1..n).filter(|&a| self.element_order(a) == p).collect();
        let mut best = 0;
        let mut stack: Vec<(Subgroup, usize, usize)> = vec![(self.trivial_subgroup(), 0, 0)];
        let mut seen: std::collections::HashSet<Subgroup> = std::collections::HashSet::new();
        while let Some((e, r, from)) = stack.pop() {
            best = best.max(r);
            for &c in &candidates[from..] {
                if e.contains(c) || !e.members().all(|x| self.mul(x, c) == self.mul(c, x)) {
                    continue;
                }
                let mut gens: Vec<usize> = e.members().collect();
                gens.push(c);
                let f = self.closure(&gens);
                if seen.insert(f.clone()) {
                    stack.push((f, r + 1, 0));
                }
            }
        }
        best
    }

    /// `G/N` acting on the cosets of `N`, with the projection.
    pub fn quotient(&self, nsub: &Subgroup) -> Result<(FinGroup, GroupHom)> {
        if !self.is_normal(nsub)? {
            return Err(Error::NotNormal(format!("{nsub:?}")));
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] == usize::MAX {
                let c = reps.len();
                reps.push(g);
                for x in nsub.members() {
                    coset_of[self.mul(g, x)] = c;
                }
            }
        }
        let k = reps.len();
        let action = |g: usize| -> Perm { reps.iter().map(|&r| coset_of[self.mul(g, r)] as u32).collect() };
        let gens: Vec<Perm> = self.generators.iter().map(|&g| action(g)).collect();
        let q = FinGroup::from_generators(k, &gens)?
            .with_label(format!("{}/{}", self.label, nsub.order()));
        let images: Vec<usize> = (0..n).map(|g| q.index_of(&action(g)).expect("coset action lies in quotient")).collect();
        let hom = GroupHom { source_order: n, target_order: q.order(), images };
        Ok((q, hom))
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

pub(crate) fn prime_of_power(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

/// A subset of group elements, stored as a bitset over element indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    universe: usize,
    bits: Vec<u64>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.members().collect::<Vec<_>>())
    }
}

impl Subgroup {
    fn empty(universe: usize) -> Self {
        Subgroup { universe, bits: vec![0; universe.div_ceil(64)] }
    }

    pub fn from_members(universe: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for m in members {
            s.insert(m);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn order(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + t)
            })
        })
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { universe: self.universe, bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }
}

/// A homomorphism recorded by the image of every source element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source_order: usize,
    pub target_order: usize,
    pub images: Vec<usize>,
}

impl GroupHom {
    pub fn apply(&self, g: usize) -> usize {
        self.images[g]
    }

    pub fn is_homomorphism(&self, src: &FinGroup, dst: &FinGroup) -> bool {
        let n = src.order();
        (0..n).all(|a| src.generators().iter().all(|&b| self.images[src.mul(a, b)] == dst.mul(self.images[a], self.images[b])))
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_members(self.source_order, (0..self.source_order).filter(|&g| self.images[g] == 0))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_order];
        for &i in &self.images {
            hit[i] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// A group bundled with its subgroup lattice.
#[derive(Clone, Debug)]
pub struct GroupCtx {
    pub group: FinGroup,
    pub lattice: SubgroupLattice,
}

impl GroupCtx {
    pub fn new(group: FinGroup) -> Result<Self> {
        let lattice = SubgroupLattice::new(&group)?;
        Ok(GroupCtx { group, lattice })
    }

    pub fn with_cap(group: FinGroup, cap: usize) -> Result<Self> {
        let lattice = SubgroupLattice::with_cap(&group, cap)?;
        Ok(GroupCtx { group, lattice })
    }

    pub fn from_spec(spec: &str) -> Result<Self> {
        Self::new(load_group(spec)?)
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn label(&self) -> &str {
        self.group.label()
    }

    /// Prime of a p-group.
    pub fn prime(&self) -> Option<usize> {
        self.group.prime()
    }

    pub fn p_rank(&self, p: usize) -> usize {
        self.lattice.p_rank(&self.group, p)
    }

    pub fn is_p_subgroup(&self, id: usize, p: usize) -> bool {
        prime_of_power(self.lattice.order(id)).is_some_and(|q| q == p)
    }

    /// `N_G(U) ∩ N_G(V)`.
    pub fn section_normalizer(&self, u: usize, v: usize) -> usize {
        self.lattice.intersection(self.lattice.normalizer(u), self.lattice.normalizer(v))
    }

    /// Rank of the center's p-part.
    pub fn center_rank(&self, p: usize) -> usize {
        let z = self.group.center();
        let l = &self.lattice;
        let zid = l.id_of(&z).expect("center is a subgroup");
        (0..l.len())
            .filter(|&i| l.leq(i, zid) && l.is_elementary_abelian(&self.group, i, p))
            .map(|i| l.log_order(i, p))
            .max()
            .unwrap_or(0)
    }

    /// `U/V` as a permutation group on the cosets of `V`.
    pub fn subquotient(&self, u: usize, v: usize) -> Result<FinGroup> {
        let l = &self.lattice;
        if !l.is_normal_in(v, u) {
            return Err(Error::NotNormal(format!("subgroup {v} in subgroup {u}")));
        }
        let gens: Vec<Perm> = l.generators(u).iter().map(|&g| self.group.element(g).clone()).collect();
        let big = FinGroup::from_generators(self.group.degree(), &gens)?;
        let members = l.subgroup(v).members().map(|x| big.index_of(self.group.element(x)).expect("V lies in U"));
        let nsub = Subgroup::from_members(big.order(), members);
        Ok(big.quotient(&nsub)?.0)
    }
}
