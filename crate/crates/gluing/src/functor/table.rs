use super::Functor;
use crate::error::{Error, Result};
use crate::group::GroupCtx;
use crate::homalg::{AbGroup, IntMatrix};
use crate::sections::{sections, Collection, Section};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::path::Path;
use std::sync::Mutex;

/// On-disk form of a functor: values on every section of a collection, destrictions on covers,
/// and conjugation by each group generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctorFile {
    pub name: String,
    #[serde(default)]
    pub group: String,
    pub collection: String,
    pub values: BTreeMap<String, AbGroup>,
    pub maps: Vec<MapEntry>,
}

/// `kind` is `des` (source covers target) or `conj:<generator index>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapEntry {
    pub source: String,
    pub target: String,
    pub kind: String,
    pub matrix: Vec<Vec<i64>>,
}

/// A functor given by explicit tables; general destrictions and conjugations are composed from
/// covers and generators.
#[derive(Debug)]
pub struct TableFunctor {
    name: String,
    values: HashMap<Section, Vec<u64>>,
    des_cover: HashMap<(Section, Section), IntMatrix>,
    lower_covers: HashMap<Section, Vec<Section>>,
    conj_gen: HashMap<(usize, Section), IntMatrix>,
    generators: Vec<usize>,
    /// For each element, generator indices whose product (left to right) is the element.
    words: Vec<Vec<usize>>,
    des_cache: Mutex<HashMap<(Section, Section), IntMatrix>>,
}

fn generator_words(ctx: &GroupCtx) -> Vec<Vec<usize>> {
    let gens = ctx.group.generators();
    let mut words: Vec<Option<Vec<usize>>> = vec![None; ctx.order()];
    words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(h) = queue.pop_front() {
        for (i, &s) in gens.iter().enumerate() {
            let g = ctx.group.mul(h, s);
            if words[g].is_none() {
                let mut w = words[h].clone().unwrap();
                w.push(i);
                words[g] = Some(w);
                queue.push_back(g);
            }
        }
    }
    words.into_iter().map(|w| w.expect("generators generate")).collect()
}

fn to_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    m.to_i64_rows().ok_or_else(|| Error::Input("matrix entry does not fit in 64 bits".into()))
}

impl TableFunctor {
    /// Tabulates any functor on a collection.
    pub fn tabulate(f: &dyn Functor, ctx: &GroupCtx, coll: Collection) -> Result<Self> {
        let poset = sections(ctx, coll)?;
        let mut values = HashMap::new();
        let mut conj_gen = HashMap::new();
        for &s in &poset.elements {
            values.insert(s, f.value(ctx, s));
            for (i, &g) in ctx.group.generators().iter().enumerate() {
                conj_gen.insert((i, s), f.conj(ctx, g, s));
            }
        }
        let mut des_cover = HashMap::new();
        let mut lower_covers: HashMap<Section, Vec<Section>> = HashMap::new();
        for (a, b) in poset.covers(ctx) {
            let (sa, sb) = (poset.elements[a], poset.elements[b]);
            des_cover.insert((sb, sa), f.des(ctx, sb, sa));
            lower_covers.entry(sb).or_default().push(sa);
        }
        Ok(TableFunctor {
            name: f.name(),
            values,
            des_cover,
            lower_covers,
            conj_gen,
            generators: ctx.group.generators().to_vec(),
            words: generator_words(ctx),
            des_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn from_file(file: &FunctorFile, ctx: &GroupCtx) -> Result<Self> {
        let coll = Collection::parse(&file.collection, ctx.prime())?;
        let poset = sections(ctx, coll)?;
        let mut values = HashMap::new();
        for (key, g) in &file.values {
            let s: Section = key.parse()?;
            if !poset.contains(&s) {
                return Err(Error::Input(format!("{s} is not in collection {coll}")));
            }
            values.insert(s, g.orders());
        }
        if let Some(s) = poset.elements.iter().find(|s| !values.contains_key(s)) {
            return Err(Error::Input(format!("no value given at {s}")));
        }
        let dim = |s: &Section| values[s].len();
        let mut des_cover = HashMap::new();
        let mut conj_gen = HashMap::new();
        for e in &file.maps {
            let (src, dst): (Section, Section) = (e.source.parse()?, e.target.parse()?);
            for s in [&src, &dst] {
                if !values.contains_key(s) {
                    return Err(Error::Input(format!("map mentions {s}, which has no value")));
                }
            }
            let m = if e.matrix.is_empty() { IntMatrix::zeros(dim(&dst), dim(&src)) } else { IntMatrix::from_rows(&e.matrix) };
            if (m.rows(), m.cols()) != (dim(&dst), dim(&src)) {
                return Err(Error::Input(format!("{} map {src} -> {dst} has the wrong shape", e.kind)));
            }
            if e.kind == "des" {
                des_cover.insert((src, dst), m);
            } else if let Some(i) = e.kind.strip_prefix("conj:").and_then(|i| i.parse::<usize>().ok()) {
                let g = *ctx.group.generators().get(i).ok_or_else(|| Error::Input(format!("no generator {i}")))?;
                if src.conj(ctx, g) != dst {
                    return Err(Error::Input(format!("conjugation {i} does not send {src} to {dst}")));
                }
                conj_gen.insert((i, src), m);
            } else {
                return Err(Error::Input(format!("unknown map kind `{}`", e.kind)));
            }
        }
        let mut lower_covers: HashMap<Section, Vec<Section>> = HashMap::new();
        for (a, b) in poset.covers(ctx) {
            let (sa, sb) = (poset.elements[a], poset.elements[b]);
            if !des_cover.contains_key(&(sb, sa)) {
                return Err(Error::Input(format!("missing destriction {sb} -> {sa}")));
            }
            lower_covers.entry(sb).or_default().push(sa);
        }
        for &s in &poset.elements {
            for i in 0..ctx.group.generators().len() {
                if !conj_gen.contains_key(&(i, s)) {
                    return Err(Error::Input(format!("missing conjugation {i} at {s}")));
                }
            }
        }
        Ok(TableFunctor {
            name: file.name.clone(),
            values,
            des_cover,
            lower_covers,
            conj_gen,
            generators: ctx.group.generators().to_vec(),
            words: generator_words(ctx),
            des_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn to_file(&self, ctx: &GroupCtx, coll: Collection) -> Result<FunctorFile> {
        let mut values = BTreeMap::new();
        for (s, o) in &self.values {
            values.insert(s.to_string(), AbGroup::from_cyclic_orders(o));
        }
        let mut maps = Vec::new();
        let mut des: Vec<_> = self.des_cover.iter().collect();
        des.sort_by_key(|(k, _)| **k);
        for ((src, dst), m) in des {
            maps.push(MapEntry { source: src.to_string(), target: dst.to_string(), kind: "des".into(), matrix: to_rows(m)? });
        }
        let mut conj: Vec<_> = self.conj_gen.iter().collect();
        conj.sort_by_key(|(k, _)| **k);
        for ((i, src), m) in conj {
            let dst = src.conj(ctx, self.generators[*i]);
            maps.push(MapEntry { source: src.to_string(), target: dst.to_string(), kind: format!("conj:{i}"), matrix: to_rows(m)? });
        }
        Ok(FunctorFile { name: self.name.clone(), group: ctx.label().to_string(), collection: coll.to_string(), values, maps })
    }

    /// Value orders must be canonical for the file format to round-trip.
    pub fn has_canonical_values(&self) -> bool {
        self.values.values().all(|o| AbGroup::from_cyclic_orders(o).orders() == *o)
    }
}

impl Functor for TableFunctor {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn value(&self, _: &GroupCtx, s: Section) -> Vec<u64> {
        self.values.get(&s).cloned().unwrap_or_default()
    }

    fn des(&self, ctx: &GroupCtx, from: Section, to: Section) -> IntMatrix {
        if from == to {
            return IntMatrix::identity(self.value(ctx, to).len());
        }
        if let Some(m) = self.des_cover.get(&(from, to)) {
            return m.clone();
        }
        if let Some(m) = self.des_cache.lock().unwrap().get(&(from, to)) {
            return m.clone();
        }
        let mid = self.lower_covers[&from]
            .iter()
            .copied()
            .find(|c| to.below(c, ctx))
            .expect("destriction target lies below a cover of the source");
        let m = self.des(ctx, mid, to).mul(&self.des_cover[&(from, mid)]);
        self.des_cache.lock().unwrap().insert((from, to), m.clone());
        m
    }

    fn conj(&self, ctx: &GroupCtx, g: usize, s: Section) -> IntMatrix {
        let mut m = IntMatrix::identity(self.value(ctx, s).len());
        let mut cur = s;
        for &i in self.words[g].iter().rev() {
            m = self.conj_gen[&(i, cur)].mul(&m);
            cur = cur.conj(ctx, self.generators[i]);
        }
        m
    }

    fn is_defined(&self, _: &GroupCtx, s: Section) -> bool {
        self.values.contains_key(&s)
    }
}

pub fn load_functor(path: &Path, ctx: &GroupCtx) -> Result<TableFunctor> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let file: FunctorFile = serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    TableFunctor::from_file(&file, ctx)
}

/// Writes any functor, tabulated on the collection.
pub fn save_functor(f: &dyn Functor, ctx: &GroupCtx, coll: Collection, path: &Path) -> Result<()> {
    let table = TableFunctor::tabulate(f, ctx, coll)?;
    if !table.has_canonical_values() {
        return Err(Error::Input("functor values must list torsion generators before free ones".into()));
    }
    let file = table.to_file(ctx, coll)?;
    let text = serde_json::to_string_pretty(&file).map_err(|e| Error::Input(e.to_string()))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}
