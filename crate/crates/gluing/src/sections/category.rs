use super::{sections, Collection, Section};
use crate::error::Result;
use crate::group::GroupCtx;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CategoryKind {
    /// Orbit category of sections: morphisms `(U,V) → (M,L)` are cosets `Mg` with `^g(U,V) ⪯ (M,L)`.
    Sections,
    /// Quillen category: morphisms `E₁ → E₂` are cosets `g C_G(E₁)` with `^g E₁ ≤ E₂`.
    /// Objects are stored as sections `(E, E)`.
    Quillen,
}

/// A morphism labeled by the least element of its coset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Morphism {
    pub source: usize,
    pub target: usize,
    pub rep: usize,
}

/// A finite category with explicit hom-sets and a composition rule given by coset arithmetic.
#[derive(Clone, Debug)]
pub struct FinCategory {
    pub kind: CategoryKind,
    pub objects: Vec<Section>,
    pub morphisms: Vec<Morphism>,
    hom: Vec<Vec<Vec<usize>>>,
    lookup: HashMap<Morphism, usize>,
    identity: Vec<usize>,
    canon: HashMap<usize, Vec<u32>>,
    coset_subgroup: Vec<usize>,
    group_order: usize,
    mul: Vec<u32>,
}

fn left_canon(ctx: &GroupCtx, m: usize) -> Vec<u32> {
    let members: Vec<usize> = ctx.lattice.subgroup(m).members().collect();
    (0..ctx.order()).map(|g| members.iter().map(|&x| ctx.group.mul(x, g)).min().unwrap() as u32).collect()
}

fn right_canon(ctx: &GroupCtx, c: usize) -> Vec<u32> {
    let members: Vec<usize> = ctx.lattice.subgroup(c).members().collect();
    (0..ctx.order()).map(|g| members.iter().map(|&x| ctx.group.mul(g, x)).min().unwrap() as u32).collect()
}

impl FinCategory {
    fn build(ctx: &GroupCtx, kind: CategoryKind, objects: Vec<Section>) -> Self {
        let l = &ctx.lattice;
        let n = ctx.order();
        let coset_subgroup = |s: &Section| match kind {
            CategoryKind::Sections => s.u,
            CategoryKind::Quillen => l.centralizer(s.u),
        };
        let mut canon: HashMap<usize, Vec<u32>> = HashMap::new();
        for s in &objects {
            let c = coset_subgroup(s);
            canon.entry(c).or_insert_with(|| match kind {
                CategoryKind::Sections => left_canon(ctx, c),
                CategoryKind::Quillen => right_canon(ctx, c),
            });
        }
        let k = objects.len();
        let mut hom = vec![vec![Vec::new(); k]; k];
        let mut morphisms = Vec::new();
        let mut lookup = HashMap::new();
        for (x, sx) in objects.iter().enumerate() {
            for (y, sy) in objects.iter().enumerate() {
                let table = match kind {
                    CategoryKind::Sections => &canon[&sy.u],
                    CategoryKind::Quillen => &canon[&l.centralizer(sx.u)],
                };
                let mut reps = BTreeSet::new();
                for g in 0..n {
                    let ok = match kind {
                        CategoryKind::Sections => l.leq(sy.v, l.conj(sx.v, g)) && l.leq(l.conj(sx.u, g), sy.u),
                        CategoryKind::Quillen => l.leq(l.conj(sx.u, g), sy.u),
                    };
                    if ok {
                        reps.insert(table[g] as usize);
                    }
                }
                for rep in reps {
                    let m = Morphism { source: x, target: y, rep };
                    lookup.insert(m, morphisms.len());
                    hom[x][y].push(morphisms.len());
                    morphisms.push(m);
                }
            }
        }
        let identity = (0..k).map(|x| lookup[&Morphism { source: x, target: x, rep: 0 }]).collect();
        let mul = (0..n * n).map(|i| ctx.group.mul(i / n, i % n) as u32).collect();
        let coset_subgroup = objects.iter().map(coset_subgroup).collect();
        FinCategory { kind, objects, morphisms, hom, lookup, identity, canon, coset_subgroup, group_order: n, mul }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x][y]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        let m = self.morphisms[f];
        m.source == m.target && m.rep == 0
    }

    pub fn object_index(&self, s: &Section) -> Option<usize> {
        self.objects.iter().position(|o| o == s)
    }

    pub fn find(&self, m: &Morphism) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    /// `h ∘ f` for `f: x → y`, `h: y → z`.
    pub fn compose(&self, h: usize, f: usize) -> usize {
        let (mf, mh) = (self.morphisms[f], self.morphisms[h]);
        assert_eq!(mf.target, mh.source, "morphisms are not composable");
        let g = self.mul[mh.rep * self.group_order + mf.rep] as usize;
        let key = match self.kind {
            CategoryKind::Sections => self.coset_subgroup[mh.target],
            CategoryKind::Quillen => self.coset_subgroup[mf.source],
        };
        let rep = self.canon[&key][g] as usize;
        self.lookup[&Morphism { source: mf.source, target: mh.target, rep }]
    }

    /// Every endomorphism is invertible.
    pub fn is_ei(&self) -> bool {
        (0..self.num_objects()).all(|x| {
            let endo = &self.hom[x][x];
            endo.iter().all(|&f| endo.iter().any(|&h| self.compose(h, f) == self.identity[x]))
        })
    }

    /// Checks identity and associativity laws on the whole composition table.
    pub fn check_laws(&self) -> bool {
        let k = self.num_objects();
        for f in 0..self.num_morphisms() {
            let m = self.morphisms[f];
            if self.compose(self.identity[m.target], f) != f || self.compose(f, self.identity[m.source]) != f {
                return false;
            }
        }
        for x in 0..k {
            for y in 0..k {
                for &f in &self.hom[x][y] {
                    for z in 0..k {
                        for &g in &self.hom[y][z] {
                            let gf = self.compose(g, f);
                            for w in 0..k {
                                for &h in &self.hom[z][w] {
                                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                                        return false;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// Morphisms that are not identities, grouped by source.
    pub fn non_identity_from(&self, x: usize) -> Vec<usize> {
        (0..self.num_objects()).flat_map(|y| self.hom[x][y].iter().copied()).filter(|&f| !self.is_identity(f)).collect()
    }
}

/// Orbit category of sections over a collection; with `skeleton`, one object per conjugacy class.
pub fn orbit_category(ctx: &GroupCtx, coll: Collection, skeleton: bool) -> Result<FinCategory> {
    let poset = sections(ctx, coll)?;
    let objects: Vec<Section> = if skeleton {
        poset.class_reps(ctx).into_iter().map(|i| poset.elements[i]).collect()
    } else {
        poset.elements.clone()
    };
    Ok(FinCategory::build(ctx, CategoryKind::Sections, objects))
}

/// Quillen category of elementary abelian p-subgroups.
pub fn quillen_category(ctx: &GroupCtx, p: usize, include_trivial: bool) -> FinCategory {
    let objects =
        ctx.lattice.elementary_abelian(&ctx.group, p, include_trivial).into_iter().map(|e| Section::new(e, e)).collect();
    FinCategory::build(ctx, CategoryKind::Quillen, objects)
}

/// Outcome of comparing the opposite of the centralizer-section category with the Quillen category.
#[derive(Clone, Debug, Default, Serialize)]
pub struct IsoReport {
    pub objects: usize,
    pub hom_sets_checked: usize,
    pub compositions_checked: usize,
    pub failures: Vec<String>,
}

impl IsoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `E ↦ (C_G(E), E)`, `g C_G(E₁) ↦ C_G(E₁) g⁻¹` is an isomorphism from the Quillen
/// category onto the opposite of the orbit category over collection `c`.
pub fn check_opposite_iso(ctx: &GroupCtx, p: usize) -> Result<IsoReport> {
    let a = quillen_category(ctx, p, false);
    let d = orbit_category(ctx, Collection::C(p), false)?;
    let l = &ctx.lattice;
    let mut report = IsoReport { objects: a.num_objects(), ..Default::default() };
    let obj: Vec<Option<usize>> =
        a.objects.iter().map(|s| d.object_index(&Section::new(l.centralizer(s.u), s.u))).collect();
    let hit: BTreeSet<usize> = obj.iter().flatten().copied().collect();
    if obj.iter().any(Option::is_none) || hit.len() != d.num_objects() || a.num_objects() != d.num_objects() {
        report.failures.push("object map is not a bijection".into());
        return Ok(report);
    }
    let obj: Vec<usize> = obj.into_iter().map(Option::unwrap).collect();
    let mut image = vec![usize::MAX; a.num_morphisms()];
    for x in 0..a.num_objects() {
        for y in 0..a.num_objects() {
            report.hom_sets_checked += 1;
            let mut seen = BTreeSet::new();
            for &f in a.hom(x, y) {
                let g = a.morphisms[f].rep;
                let c1 = l.centralizer(a.objects[x].u);
                let rep = left_canon(ctx, c1)[ctx.group.inv(g)] as usize;
                match d.find(&Morphism { source: obj[y], target: obj[x], rep }) {
                    Some(h) => {
                        image[f] = h;
                        seen.insert(h);
                    }
                    None => report.failures.push(format!("morphism {:?} has no image", a.morphisms[f])),
                }
            }
            if seen.len() != a.hom(x, y).len() || seen.len() != d.hom(obj[y], obj[x]).len() {
                report.failures.push(format!("hom-set bijection fails between objects {x} and {y}"));
            }
        }
    }
    if !report.passed() {
        return Ok(report);
    }
    for f in 0..a.num_morphisms() {
        let y = a.morphisms[f].target;
        for z in 0..a.num_objects() {
            for &h in a.hom(y, z) {
                report.compositions_checked += 1;
                if image[a.compose(h, f)] != d.compose(image[f], image[h]) {
                    report.failures.push(format!("composition of {:?} and {:?} not preserved", a.morphisms[f], a.morphisms[h]));
                }
            }
        }
    }
    Ok(report)
}
