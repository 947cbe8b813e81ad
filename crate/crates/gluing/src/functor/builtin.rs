use super::Functor;
use crate::group::{GroupCtx, Perm};
use crate::homalg::IntMatrix;
use crate::sections::Section;
use num_bigint::BigInt;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// The constant functor with value ℤ (order 0) or ℤ/m, all maps the identity.
#[derive(Clone, Debug)]
pub struct Constant {
    order: u64,
}

impl Constant {
    pub fn new(order: u64) -> Self {
        Constant { order }
    }

    pub fn integers() -> Self {
        Constant { order: 0 }
    }
}

impl Functor for Constant {
    fn name(&self) -> String {
        match self.order {
            0 => "constant".into(),
            m => format!("constant:Z/{m}"),
        }
    }

    fn value(&self, _: &GroupCtx, _: Section) -> Vec<u64> {
        vec![self.order]
    }

    fn des(&self, _: &GroupCtx, _: Section, _: Section) -> IntMatrix {
        IntMatrix::identity(1)
    }

    fn conj(&self, _: &GroupCtx, _: usize, _: Section) -> IntMatrix {
        IntMatrix::identity(1)
    }
}

/// Dual of the Burnside ring: `F(U/V)` is the ℤ-valued functions on subgroups `W` with
/// `V ≤ W ≤ U`, constant on `U`-conjugacy classes. Destriction restricts a function.
#[derive(Debug, Default)]
pub struct BurnsideDual {
    /// Keyed by the group's generating permutations, which fix its subgroup ids.
    bases: Mutex<HashMap<(Vec<Perm>, Section), Arc<Vec<usize>>>>,
}

impl BurnsideDual {
    pub fn new() -> Self {
        Self::default()
    }

    /// Least-id representatives of the `U`-classes of subgroups between `V` and `U`.
    pub fn basis(&self, ctx: &GroupCtx, s: Section) -> Arc<Vec<usize>> {
        let key = (ctx.group.generators().iter().map(|&g| ctx.group.element(g).clone()).collect(), s);
        if let Some(b) = self.bases.lock().unwrap().get(&key) {
            return b.clone();
        }
        let l = &ctx.lattice;
        let mut reps: Vec<usize> = l.interval(s.v, s.u).map(|w| class_rep_in(ctx, w, s.u)).collect();
        reps.sort_unstable();
        reps.dedup();
        let reps = Arc::new(reps);
        self.bases.lock().unwrap().insert(key, reps.clone());
        reps
    }
}

fn class_rep_in(ctx: &GroupCtx, w: usize, u: usize) -> usize {
    ctx.lattice.subgroup(u).members().map(|x| ctx.lattice.conj(w, x)).min().expect("subgroups are nonempty")
}

impl Functor for BurnsideDual {
    fn name(&self) -> String {
        "bdual".into()
    }

    fn value(&self, ctx: &GroupCtx, s: Section) -> Vec<u64> {
        vec![0; self.basis(ctx, s).len()]
    }

    fn des(&self, ctx: &GroupCtx, from: Section, to: Section) -> IntMatrix {
        let (bf, bt) = (self.basis(ctx, from), self.basis(ctx, to));
        let mut m = IntMatrix::zeros(bt.len(), bf.len());
        for (i, &w) in bt.iter().enumerate() {
            let j = bf.binary_search(&class_rep_in(ctx, w, from.u)).expect("subgroup lies in the larger section");
            m.set(i, j, BigInt::from(1));
        }
        m
    }

    fn conj(&self, ctx: &GroupCtx, g: usize, s: Section) -> IntMatrix {
        let t = s.conj(ctx, g);
        let (bs, bt) = (self.basis(ctx, s), self.basis(ctx, t));
        let gi = ctx.group.inv(g);
        let mut m = IntMatrix::zeros(bt.len(), bs.len());
        for (i, &w) in bt.iter().enumerate() {
            let j = bs.binary_search(&class_rep_in(ctx, ctx.lattice.conj(w, gi), s.u)).expect("conjugation is a bijection");
            m.set(i, j, BigInt::from(1));
        }
        m
    }
}

/// Functor supported on one conjugacy class of sections, with value ℤ or ℤ/m there and all
/// proper destrictions zero.
#[derive(Clone, Debug)]
pub struct Atomic {
    rep: Section,
    order: u64,
}

impl Atomic {
    pub fn new(ctx: &GroupCtx, section: Section, order: u64) -> Self {
        Atomic { rep: section.class_rep(ctx).0, order }
    }

    pub fn section(&self) -> Section {
        self.rep
    }

    fn supported(&self, ctx: &GroupCtx, s: Section) -> bool {
        ctx.lattice.order(s.u) == ctx.lattice.order(self.rep.u)
            && ctx.lattice.order(s.v) == ctx.lattice.order(self.rep.v)
            && s.class_rep(ctx).0 == self.rep
    }
}

/// `(G, 1)`, where the atomic functor is a faithful-only biset functor.
pub fn default_atomic_section(ctx: &GroupCtx) -> Section {
    Section::new(ctx.lattice.whole(), ctx.lattice.trivial())
}

impl Functor for Atomic {
    fn name(&self) -> String {
        match self.order {
            0 => format!("atomic:{}", self.rep),
            m => format!("atomic:{}:Z/{m}", self.rep),
        }
    }

    fn value(&self, ctx: &GroupCtx, s: Section) -> Vec<u64> {
        if self.supported(ctx, s) {
            vec![self.order]
        } else {
            Vec::new()
        }
    }

    fn des(&self, ctx: &GroupCtx, from: Section, to: Section) -> IntMatrix {
        let (r, c) = (self.value(ctx, to).len(), self.value(ctx, from).len());
        if from == to {
            IntMatrix::identity(r)
        } else {
            IntMatrix::zeros(r, c)
        }
    }

    fn conj(&self, ctx: &GroupCtx, _: usize, s: Section) -> IntMatrix {
        IntMatrix::identity(self.value(ctx, s).len())
    }
}
