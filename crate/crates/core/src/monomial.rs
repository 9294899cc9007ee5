//! Monomials, order ideals (downsets under divisibility) and the ways of
//! combining their generators.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::macaulay::IntSeq;

/// Exponent vector with cached degree.
///
/// Ordered by degree first, then lexicographically on exponents.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn unit(ambient: usize) -> Self {
        Monomial {
            exps: vec![0; ambient],
            degree: 0,
        }
    }

    pub fn var(ambient: usize, i: usize) -> Self {
        let mut exps = vec![0; ambient];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn ambient(&self) -> usize {
        self.exps.len()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len()
            && self.degree <= other.degree
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.ambient(), other.ambient());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// Contraction by the i-th variable; `None` when the exponent is zero.
    pub fn contract(&self, i: usize) -> Result<Option<Monomial>> {
        if i >= self.exps.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                ambient: self.exps.len(),
            });
        }
        Ok(self.contract_unchecked(i))
    }

    pub(crate) fn contract_unchecked(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i] -= 1;
        Some(Monomial {
            exps,
            degree: self.degree - 1,
        })
    }

    pub fn times_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Monomial {
            exps,
            degree: self.degree + 1,
        }
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, _)| i)
    }

    /// Same monomial placed at `offset` inside `ambient` variables.
    pub fn embed(&self, offset: usize, ambient: usize) -> Monomial {
        assert!(offset + self.exps.len() <= ambient);
        let mut exps = vec![0; ambient];
        exps[offset..offset + self.exps.len()].copy_from_slice(&self.exps);
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Number of divisors, Π (a_i + 1).
    pub fn divisor_count(&self) -> u64 {
        self.exps.iter().map(|&a| a as u64 + 1).product()
    }

    /// `[2,0,1]`, exact and ambient-preserving.
    pub fn to_bracket(&self) -> String {
        let parts: Vec<String> = self.exps.iter().map(|a| a.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parse `[2,0,1]` or `x1^2*x3` (the latter needs `ambient`, or uses the
    /// largest index seen).
    pub fn parse(s: &str, ambient: Option<usize>) -> Result<Monomial> {
        let s = s.trim();
        if let Some(body) = s.strip_prefix('[') {
            let body = body
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(format!("unclosed bracket in `{s}`")))?;
            let exps = body
                .split(',')
                .map(|t| t.trim())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent `{t}`")))
                })
                .collect::<Result<Vec<u32>>>()?;
            if let Some(n) = ambient {
                if n != exps.len() {
                    return Err(Error::AmbientMismatch(exps.len(), n));
                }
            }
            return Ok(Monomial::new(exps));
        }
        let mut pairs = Vec::new();
        if s != "1" {
            for factor in s.split('*') {
                let factor = factor.trim();
                let (v, p) = match factor.split_once('^') {
                    Some((v, p)) => (
                        v,
                        p.parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad power in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                let idx = v
                    .strip_prefix('x')
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| {
                        Error::Parse(format!("bad variable `{v}`, expected x1, x2, ..."))
                    })?;
                pairs.push((idx - 1, p));
            }
        }
        let n = ambient.unwrap_or_else(|| pairs.iter().map(|p| p.0 + 1).max().unwrap_or(0));
        let mut exps = vec![0u32; n];
        for (i, p) in pairs {
            if i >= n {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    ambient: n,
                });
            }
            exps[i] += p;
        }
        Ok(Monomial::new(exps))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `x1^2*x3`, or `1` for the unit.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| {
                if a == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, a)
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_bracket())
    }
}

/// Parse a whitespace, comma or semicolon separated list of monomials in
/// either notation. `#` starts a comment.
pub fn parse_monomials(text: &str, ambient: Option<usize>) -> Result<Vec<Monomial>> {
    let mut raw = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        let mut chars = line.chars().peekable();
        let mut cur = String::new();
        while let Some(c) = chars.next() {
            if c == '[' {
                let mut tok = String::from("[");
                for d in chars.by_ref() {
                    tok.push(d);
                    if d == ']' {
                        break;
                    }
                }
                raw.push(tok);
            } else if c.is_whitespace() || c == ',' || c == ';' {
                if !cur.is_empty() {
                    raw.push(std::mem::take(&mut cur));
                }
            } else {
                cur.push(c);
            }
        }
        if !cur.is_empty() {
            raw.push(cur);
        }
    }
    let n = match ambient {
        Some(n) => Some(n),
        None => {
            // bracket lengths or the largest variable index
            let mut n = 0;
            for t in &raw {
                n = n.max(Monomial::parse(t, None)?.ambient());
            }
            Some(n)
        }
    };
    raw.iter().map(|t| Monomial::parse(t, n)).collect()
}

/// Finite downward-closed set of monomials, stored degree by degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderIdeal {
    ambient: usize,
    generators: Vec<Monomial>,
    layers: Vec<Vec<Monomial>>,
}

impl OrderIdeal {
    /// Downset of `gens`; generators are reduced to the maximal elements.
    pub fn closure(gens: &[Monomial]) -> Result<OrderIdeal> {
        let first = gens.first().ok_or(Error::EmptyGenerators)?;
        let ambient = first.ambient();
        if let Some(g) = gens.iter().find(|g| g.ambient() != ambient) {
            return Err(Error::AmbientMismatch(ambient, g.ambient()));
        }
        let top = gens.iter().map(|g| g.degree()).max().unwrap() as usize;
        let mut by_degree: Vec<Vec<&Monomial>> = vec![Vec::new(); top + 1];
        for g in gens {
            by_degree[g.degree() as usize].push(g);
        }
        let mut layers: Vec<Vec<Monomial>> = vec![Vec::new(); top + 1];
        let mut maximal = Vec::new();
        let mut above: FxHashSet<Monomial> = FxHashSet::default();
        for d in (0..=top).rev() {
            let mut layer = above;
            for g in &by_degree[d] {
                if !layer.contains(*g) {
                    maximal.push((*g).clone());
                    layer.insert((*g).clone());
                }
            }
            above = if d > 0 {
                contract_layer(&layer, ambient)
            } else {
                FxHashSet::default()
            };
            let mut sorted: Vec<Monomial> = layer.into_iter().collect();
            sorted.par_sort_unstable();
            layers[d] = sorted;
        }
        maximal.sort();
        Ok(OrderIdeal {
            ambient,
            generators: maximal,
            layers,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Sorted members of degree `d`.
    pub fn layer(&self, d: usize) -> &[Monomial] {
        self.layers.get(d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn members(&self) -> impl Iterator<Item = &Monomial> {
        self.layers.iter().flatten()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.layers
            .get(m.degree() as usize)
            .map(|l| l.binary_search(m).is_ok())
            .unwrap_or(false)
    }

    pub fn socle_degree(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn is_pure(&self) -> bool {
        let e = self.socle_degree() as u32;
        self.generators.iter().all(|g| g.degree() == e)
    }

    pub fn h_vector(&self) -> IntSeq {
        IntSeq::new(self.layers.iter().map(|l| l.len() as u64).collect())
    }

    /// Variables that occur in some member.
    pub fn codimension(&self) -> usize {
        let mut used = vec![false; self.ambient];
        for g in &self.generators {
            for i in g.support() {
                used[i] = true;
            }
        }
        used.iter().filter(|&&u| u).count()
    }
}

fn contract_layer(layer: &FxHashSet<Monomial>, ambient: usize) -> FxHashSet<Monomial> {
    let mut out = FxHashSet::default();
    for m in layer {
        for i in 0..ambient {
            if let Some(c) = m.contract_unchecked(i) {
                out.insert(c);
            }
        }
    }
    out
}

/// All products `a * b` with `a` and `b` in disjoint variable blocks.
pub fn tensor_generators(a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let (na, nb) = (
        a.first().map(|m| m.ambient()).unwrap_or(0),
        b.first().map(|m| m.ambient()).unwrap_or(0),
    );
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        let xe = x.embed(0, na + nb);
        for y in b {
            out.push(xe.mul(&y.embed(na, na + nb)));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Set union of two generator lists over the same variables.
pub fn union_generators(a: &[Monomial], b: &[Monomial]) -> Result<Vec<Monomial>> {
    let n = a.first().or(b.first()).map(|m| m.ambient()).unwrap_or(0);
    if let Some(m) = a.iter().chain(b).find(|m| m.ambient() != n) {
        return Err(Error::AmbientMismatch(n, m.ambient()));
    }
    let mut out: Vec<Monomial> = a.iter().chain(b).cloned().collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Union of generator lists, each moved into its own block of variables.
pub fn disjoint_union(blocks: &[Vec<Monomial>]) -> Vec<Monomial> {
    let total: usize = blocks
        .iter()
        .map(|b| b.first().map(|m| m.ambient()).unwrap_or(0))
        .sum();
    let mut offset = 0;
    let mut out = Vec::new();
    for b in blocks {
        let n = b.first().map(|m| m.ambient()).unwrap_or(0);
        out.extend(b.iter().map(|m| m.embed(offset, total)));
        offset += n;
    }
    out.sort();
    out
}

/// Every monomial of degree `d` in `n` variables, sorted.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left;
            out.push(Monomial::new(cur.clone()));
            cur[i] = 0;
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(Monomial::unit(0));
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort();
    out
}

/// Coefficientwise product of two sequences.
pub fn convolve(a: &IntSeq, b: &IntSeq) -> IntSeq {
    let (a, b) = (a.entries(), b.entries());
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    IntSeq::new(out)
}
