use super::{FinGroup, Perm};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// On-disk group description: generators as 0-indexed image arrays.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub degree: usize,
    pub generators: Vec<Perm>,
    #[serde(default)]
    pub label: String,
}

pub fn parse_group_file(path: &Path) -> Result<FinGroup> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let f: GroupFile = serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let label = if f.label.is_empty() { path.display().to_string() } else { f.label };
    Ok(FinGroup::from_generators(f.degree, &f.generators)?.with_label(label))
}

/// Left-regular permutation representation of a group given by a multiplication rule.
fn regular(n: usize, gens: &[usize], mul: impl Fn(usize, usize) -> usize) -> Vec<Perm> {
    gens.iter().map(|&g| (0..n).map(|x| mul(g, x) as u32).collect()).collect()
}

/// Metacyclic group `<a, b | a^m, b^k = a^s, b a b⁻¹ = a^r>`, elements `a^i b^j` indexed `i*k + j`.
fn metacyclic(m: usize, k: usize, r: usize, s: usize) -> Result<FinGroup> {
    let n = m * k;
    let mut rpow = vec![1usize; k];
    for j in 1..k {
        rpow[j] = rpow[j - 1] * r % m;
    }
    let mul = |x: usize, y: usize| {
        let (i, j) = (x / k, x % k);
        let (i2, j2) = (y / k, y % k);
        let wrap = if j + j2 >= k { s } else { 0 };
        let ii = (i + rpow[j] * i2 + wrap) % m;
        ii * k + (j + j2) % k
    };
    let gens: Vec<usize> = if k == 1 { vec![1 % n] } else { vec![k % n, 1] };
    FinGroup::from_generators(n, &regular(n, &gens, mul))
}

fn heisenberg(p: usize) -> Result<FinGroup> {
    let n = p * p * p;
    let split = |e: usize| (e / (p * p), e / p % p, e % p);
    let mul = |a: usize, b: usize| {
        let (x, y, z) = split(a);
        let (x2, y2, z2) = split(b);
        ((x + x2) % p) * p * p + ((y + y2) % p) * p + (z + z2 + x * y2) % p
    };
    FinGroup::from_generators(n, &regular(n, &[p * p, p], mul))
}

fn symmetric(n: usize) -> Result<FinGroup> {
    if n <= 1 {
        return FinGroup::from_generators(1, &[]);
    }
    let swap: Perm = (0..n as u32).map(|x| if x < 2 { 1 - x } else { x }).collect();
    let cycle: Perm = (0..n as u32).map(|x| (x + 1) % n as u32).collect();
    FinGroup::from_generators(n, &[swap, cycle])
}

fn alternating(n: usize) -> Result<FinGroup> {
    if n <= 2 {
        return FinGroup::from_generators(n.max(1), &[]);
    }
    let gens: Vec<Perm> = (2..n)
        .map(|c| (0..n as u32).map(|x| if x == 0 { 1 } else if x == 1 { c as u32 } else if x == c as u32 { 0 } else { x }).collect())
        .collect();
    FinGroup::from_generators(n, &gens)
}

/// Direct product acting on the disjoint union of the factors' points.
fn product(factors: &[FinGroup]) -> Result<FinGroup> {
    let degree: usize = factors.iter().map(FinGroup::degree).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for f in factors {
        for &g in f.generators() {
            let img = f.element(g);
            let p: Perm = (0..degree as u32)
                .map(|x| {
                    let xu = x as usize;
                    if xu >= offset && xu < offset + f.degree() {
                        img[xu - offset] + offset as u32
                    } else {
                        x
                    }
                })
                .collect();
            gens.push(p);
        }
        offset += f.degree();
    }
    FinGroup::from_generators(degree, &gens)
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn power_of_two(n: usize) -> bool {
    n >= 2 && n.is_power_of_two()
}

/// Splits on `x` outside parentheses.
fn split_factors(spec: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in spec.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => {
                out.push(&spec[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&spec[start..]);
    out
}

fn num(s: &str) -> Option<usize> {
    s.parse().ok()
}

fn atom(spec: &str) -> Result<FinGroup> {
    let unknown = || Error::UnknownSpec(spec.to_string());
    if let Some((base, e)) = spec.rsplit_once('^') {
        if !base.contains('(') || base.ends_with(')') {
            let e = num(e).ok_or_else(unknown)?;
            let f = atom(base)?;
            return product(&vec![f; e]);
        }
    }
    if spec == "1" {
        return FinGroup::from_generators(1, &[]);
    }
    if let Some(args) = spec.strip_prefix("EA(").and_then(|r| r.strip_suffix(')')) {
        let (p, r) = args.split_once(',').ok_or_else(unknown)?;
        let (p, r) = (num(p.trim()).ok_or_else(unknown)?, num(r.trim()).ok_or_else(unknown)?);
        if !is_prime(p) {
            return Err(unknown());
        }
        if r == 0 {
            return FinGroup::from_generators(1, &[]);
        }
        return product(&vec![metacyclic(p, 1, 1, 0)?; r]);
    }
    if let Some(args) = spec.strip_prefix("XS(").and_then(|r| r.strip_suffix(')')) {
        let (p, sign) = args.split_once(',').ok_or_else(unknown)?;
        let p = num(p.trim()).ok_or_else(unknown)?;
        if !is_prime(p) {
            return Err(unknown());
        }
        return match (p, sign.trim()) {
            (2, "+") => metacyclic(4, 2, 3, 0),
            (2, "-") => metacyclic(4, 2, 3, 2),
            (_, "+") => heisenberg(p),
            (_, "-") => metacyclic(p * p, p, 1 + p, 0),
            _ => Err(unknown()),
        };
    }
    if let Some(n) = spec.strip_prefix("SD").and_then(num) {
        return if power_of_two(n) && n >= 16 { metacyclic(n / 2, 2, n / 4 - 1, 0) } else { Err(unknown()) };
    }
    if let Some(n) = spec.strip_prefix('D').and_then(num) {
        return if n >= 4 && n % 2 == 0 { metacyclic(n / 2, 2, n / 2 - 1, 0) } else { Err(unknown()) };
    }
    if let Some(n) = spec.strip_prefix('Q').and_then(num) {
        return if n >= 8 && n % 4 == 0 { metacyclic(n / 2, 2, n / 2 - 1, n / 4) } else { Err(unknown()) };
    }
    if let Some(n) = spec.strip_prefix('M').and_then(num) {
        return if power_of_two(n) && n >= 16 { metacyclic(n / 2, 2, n / 4 + 1, 0) } else { Err(unknown()) };
    }
    if let Some(n) = spec.strip_prefix('C').and_then(num) {
        return if n >= 1 { metacyclic(n, 1, 1, 0) } else { Err(unknown()) };
    }
    if let Some(n) = spec.strip_prefix('S').and_then(num) {
        return if (1..=7).contains(&n) { symmetric(n) } else { Err(unknown()) };
    }
    if let Some(n) = spec.strip_prefix('A').and_then(num) {
        return if (1..=7).contains(&n) { alternating(n) } else { Err(unknown()) };
    }
    Err(unknown())
}

/// Group from a catalog name: `Cn`, `Dn`, `Qn`, `SDn`, `Mn` (order n), `EA(p,r)`, `XS(p,±)`,
/// `Sn`, `An`, powers `C2^3` and products `D8xC2`.
pub fn catalog(spec: &str) -> Result<FinGroup> {
    let spec = spec.trim();
    let parts = split_factors(spec);
    let g = if parts.len() == 1 {
        atom(spec)?
    } else {
        let factors = parts.iter().map(|p| atom(p.trim())).collect::<Result<Vec<_>>>()?;
        product(&factors)?
    };
    Ok(g.with_label(spec))
}

/// Catalog or group file.
pub fn load_group(spec: &str) -> Result<FinGroup> {
    match catalog(spec) {
        Ok(g) => Ok(g),
        Err(Error::UnknownSpec(_)) if Path::new(spec).exists() => parse_group_file(Path::new(spec)),
        Err(e) => Err(e),
    }
}

const CORPUS: &[&str] = &[
    "C2", "C3", "C4", "C2^2", "C5", "C7", "C8", "C4xC2", "C2^3", "D8", "Q8", "C9", "C3^2", "C16", "C8xC2",
    "C4xC4", "C4xC2^2", "C2^4", "D8xC2", "Q8xC2", "D16", "Q16", "SD16", "M16", "C25", "C5^2", "C27", "C9xC3",
    "C3^3", "XS(3,+)", "XS(3,-)", "C32", "C16xC2", "C8xC4", "C4^2xC2", "D8xC4", "Q8xC4", "D8xC2^2", "D16xC2",
    "Q16xC2", "SD16xC2", "M16xC2", "D32", "Q32", "SD32", "M32", "C49", "C7^2", "C64", "D64", "Q64", "SD64",
    "D8xD8", "Q8xQ8", "D8xQ8", "D16xC4", "C8xC8",
];

/// Catalog names of the p-groups used for batch verification, up to the given order.
pub fn corpus(max_order: usize) -> Vec<String> {
    CORPUS
        .iter()
        .filter(|s| catalog(s).is_ok_and(|g| g.order() <= max_order))
        .map(|s| s.to_string())
        .collect()
}
