//! The crystal contract and the machinery shared by every crystal in the crate.
//!
//! Tensor factors are indexed from the left: factor 1 is the leftmost, and
//! the Kashiwara functions are `r_k = ε_i(b_k) − Σ_{j<k} α_i^∨(wt b_j)`.
//! `e_i` acts at the leftmost maximizer, `f_i` at the rightmost.

use serde::Serialize;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::{self, Debug};
use std::hash::Hash;

use crate::weight::Weight;
use crate::{Error, Result};

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

/// A normal crystal over the affine type-A Cartan datum of rank `ℓ`.
///
/// Implementations must satisfy `φ_i = ε_i + α_i^∨(wt)` and
/// `e_i x = y ⇔ f_i y = x`. `ε_i` and `φ_i` are plain integers: the `−∞`
/// case never occurs for the crystals built here.
pub trait Crystal {
    type Elem: Clone + Ord + Hash + Debug;

    fn ell(&self) -> usize;
    fn e(&self, i: usize, x: &Self::Elem) -> Option<Self::Elem>;
    fn f(&self, i: usize, x: &Self::Elem) -> Option<Self::Elem>;
    fn eps(&self, i: usize, x: &Self::Elem) -> i64;
    fn wt(&self, x: &Self::Elem) -> Weight;

    /// `α_i^∨(wt x)`.
    fn pair_wt(&self, i: usize, x: &Self::Elem) -> i64 {
        self.wt(x).pair_int(i)
    }

    fn phi(&self, i: usize, x: &Self::Elem) -> i64 {
        self.eps(i, x) + self.pair_wt(i, x)
    }

    /// JSON encoding used for exports and DOT labels.
    fn encode(&self, x: &Self::Elem) -> Value;

    fn indices(&self) -> std::ops::Range<usize> {
        0..self.ell() + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    F,
    E,
}

/// One generator `e_i` or `f_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub kind: Kind,
    pub index: usize,
}

impl Gen {
    pub fn e(index: usize) -> Self {
        Gen { kind: Kind::E, index }
    }

    pub fn f(index: usize) -> Self {
        Gen { kind: Kind::F, index }
    }

    pub fn apply<C: Crystal + ?Sized>(self, c: &C, x: &C::Elem) -> Option<C::Elem> {
        match self.kind {
            Kind::E => c.e(self.index, x),
            Kind::F => c.f(self.index, x),
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self.kind {
            Kind::E => write!(f, "e{}", self.index),
            Kind::F => write!(f, "f{}", self.index),
        }
    }
}

/// Generators in the fixed order `f_0, …, f_ℓ, e_0, …, e_ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet(Vec<Gen>);

impl GeneratorSet {
    pub fn new(mut gens: Vec<Gen>) -> Self {
        gens.sort();
        gens.dedup();
        GeneratorSet(gens)
    }

    pub fn all(ell: usize) -> Self {
        Self::new((0..=ell).flat_map(|i| [Gen::f(i), Gen::e(i)]).collect())
    }

    pub fn f_only(ell: usize) -> Self {
        Self::new((0..=ell).map(Gen::f).collect())
    }

    pub fn e_only(ell: usize) -> Self {
        Self::new((0..=ell).map(Gen::e).collect())
    }

    /// `"ef"`, `"e"` or `"f"`.
    pub fn parse(s: &str, ell: usize) -> Result<Self> {
        match s {
            "ef" | "fe" => Ok(Self::all(ell)),
            "e" => Ok(Self::e_only(ell)),
            "f" => Ok(Self::f_only(ell)),
            _ => Err(Error::InvalidInput(format!("unknown generator set {s:?}"))),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Gen> + '_ {
        self.0.iter().copied()
    }

    pub fn contains(&self, g: Gen) -> bool {
        self.0.contains(&g)
    }

    pub fn indices(&self) -> BTreeSet<usize> {
        self.0.iter().map(|g| g.index).collect()
    }
}

/// A monomial `g_k^{n_k} ⋯ g_1^{n_1}` in the `e_i, f_i`, written left to
/// right and applied right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    terms: Vec<(Gen, u32)>,
}

impl Monomial {
    pub fn identity() -> Self {
        Monomial::default()
    }

    /// Builds from factors in written order; zero exponents are dropped and
    /// neighbouring equal generators are merged.
    pub fn from_terms(terms: impl IntoIterator<Item = (Gen, u32)>) -> Self {
        let mut m = Monomial::identity();
        let collected: Vec<_> = terms.into_iter().collect();
        for (g, n) in collected.into_iter().rev() {
            m.then(g, n);
        }
        m
    }

    /// Appends `g^n` on the left, i.e. it is applied after everything so far.
    pub fn then(&mut self, g: Gen, n: u32) -> &mut Self {
        if n == 0 {
            return self;
        }
        match self.terms.first_mut() {
            Some((h, k)) if *h == g => *k += n,
            _ => self.terms.insert(0, (g, n)),
        }
        self
    }

    /// `other` applied after `self`.
    pub fn followed_by(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for &(g, n) in other.terms.iter().rev() {
            out.then(g, n);
        }
        out
    }

    pub fn pow(&self, r: u32) -> Monomial {
        let mut out = Monomial::identity();
        for _ in 0..r {
            out = out.followed_by(self);
        }
        out
    }

    /// Factors in written order (leftmost first).
    pub fn terms(&self) -> &[(Gen, u32)] {
        &self.terms
    }

    pub fn is_identity(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total exponent carried by generators with the given index.
    pub fn exponent_on(&self, index: usize) -> u32 {
        self.terms
            .iter()
            .filter(|(g, _)| g.index == index)
            .map(|(_, n)| n)
            .sum()
    }

    pub fn is_kind(&self, kind: Kind) -> bool {
        self.terms.iter().all(|(g, _)| g.kind == kind)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(g, n)| if *n == 1 { g.to_string() } else { format!("{g}^{n}") })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

pub fn apply_monomial<C: Crystal + ?Sized>(c: &C, x: &C::Elem, mono: &Monomial) -> Option<C::Elem> {
    let mut cur = x.clone();
    for &(g, n) in mono.terms.iter().rev() {
        for _ in 0..n {
            cur = g.apply(c, &cur)?;
        }
    }
    Some(cur)
}

/// Maximum of the Kashiwara functions and where it is attained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub eps: i64,
    /// 0-based leftmost position attaining the maximum.
    pub leftmost: usize,
    /// 0-based rightmost position attaining the maximum.
    pub rightmost: usize,
}

/// Evaluates `r_k = ε_i(b_k) − Σ_{j<k} α_i^∨(wt b_j)` over factors given as
/// `(ε_i(b_k), α_i^∨(wt b_k))`. Returns `None` for an empty product.
pub fn kashiwara_signature(factors: impl IntoIterator<Item = (i64, i64)>) -> Option<Signature> {
    let mut best: Option<Signature> = None;
    let mut shift = 0i64;
    for (k, (eps, pairing)) in factors.into_iter().enumerate() {
        let r = eps - shift;
        shift += pairing;
        best = Some(match best {
            None => Signature { eps: r, leftmost: k, rightmost: k },
            Some(s) if r > s.eps => Signature { eps: r, leftmost: k, rightmost: k },
            Some(s) if r == s.eps => Signature { rightmost: k, ..s },
            Some(s) => s,
        });
    }
    best
}

fn signature_of<C: Crystal + ?Sized>(c: &C, factors: &[C::Elem], i: usize) -> Signature {
    kashiwara_signature(factors.iter().map(|b| (c.eps(i, b), c.pair_wt(i, b))))
        .expect("tensor product needs at least one factor")
}

pub fn tensor_eps<C: Crystal + ?Sized>(c: &C, factors: &[C::Elem], i: usize) -> i64 {
    signature_of(c, factors, i).eps
}

pub fn tensor_e<C: Crystal + ?Sized>(c: &C, factors: &[C::Elem], i: usize) -> Option<Vec<C::Elem>> {
    let k = signature_of(c, factors, i).leftmost;
    let mut out = factors.to_vec();
    out[k] = c.e(i, &factors[k])?;
    Some(out)
}

pub fn tensor_f<C: Crystal + ?Sized>(c: &C, factors: &[C::Elem], i: usize) -> Option<Vec<C::Elem>> {
    let k = signature_of(c, factors, i).rightmost;
    let mut out = factors.to_vec();
    out[k] = c.f(i, &factors[k])?;
    Some(out)
}

/// `C^{⊗n}` with elements stored as factor sequences.
#[derive(Clone, Debug)]
pub struct TensorPower<C> {
    pub base: C,
}

impl<C: Crystal> Crystal for TensorPower<C> {
    type Elem = Vec<C::Elem>;

    fn ell(&self) -> usize {
        self.base.ell()
    }

    fn e(&self, i: usize, x: &Self::Elem) -> Option<Self::Elem> {
        tensor_e(&self.base, x, i)
    }

    fn f(&self, i: usize, x: &Self::Elem) -> Option<Self::Elem> {
        tensor_f(&self.base, x, i)
    }

    fn eps(&self, i: usize, x: &Self::Elem) -> i64 {
        tensor_eps(&self.base, x, i)
    }

    fn wt(&self, x: &Self::Elem) -> Weight {
        let mut w = Weight::zero(self.ell());
        for b in x {
            w += &self.base.wt(b);
        }
        w
    }

    fn pair_wt(&self, i: usize, x: &Self::Elem) -> i64 {
        x.iter().map(|b| self.base.pair_wt(i, b)).sum()
    }

    fn encode(&self, x: &Self::Elem) -> Value {
        Value::Array(x.iter().map(|b| self.base.encode(b)).collect())
    }
}

/// `A ⊗ B` through the two-factor rules: `e_i` acts on the left factor iff
/// `φ_i(a) ≥ ε_i(b)`, `f_i` iff `φ_i(a) > ε_i(b)`.
#[derive(Clone, Debug)]
pub struct TensorPair<A, B> {
    pub left: A,
    pub right: B,
}

impl<A: Crystal, B: Crystal> Crystal for TensorPair<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn ell(&self) -> usize {
        self.left.ell()
    }

    fn e(&self, i: usize, (a, b): &Self::Elem) -> Option<Self::Elem> {
        if self.left.phi(i, a) >= self.right.eps(i, b) {
            Some((self.left.e(i, a)?, b.clone()))
        } else {
            Some((a.clone(), self.right.e(i, b)?))
        }
    }

    fn f(&self, i: usize, (a, b): &Self::Elem) -> Option<Self::Elem> {
        if self.left.phi(i, a) > self.right.eps(i, b) {
            Some((self.left.f(i, a)?, b.clone()))
        } else {
            Some((a.clone(), self.right.f(i, b)?))
        }
    }

    fn eps(&self, i: usize, (a, b): &Self::Elem) -> i64 {
        self.left.eps(i, a).max(self.right.eps(i, b) - self.left.pair_wt(i, a))
    }

    fn wt(&self, (a, b): &Self::Elem) -> Weight {
        &self.left.wt(a) + &self.right.wt(b)
    }

    fn pair_wt(&self, i: usize, (a, b): &Self::Elem) -> i64 {
        self.left.pair_wt(i, a) + self.right.pair_wt(i, b)
    }

    fn encode(&self, (a, b): &Self::Elem) -> Value {
        json!([self.left.encode(a), self.right.encode(b)])
    }
}

/// A membership predicate with a printable description.
pub struct Region<'a, E> {
    pub description: String,
    pub contains: Box<dyn Fn(&E) -> bool + Sync + 'a>,
}

impl<'a, E> Region<'a, E> {
    pub fn new(description: impl Into<String>, contains: impl Fn(&E) -> bool + Sync + 'a) -> Self {
        Region {
            description: description.into(),
            contains: Box::new(contains),
        }
    }
}

/// How an orbit was cut off; part of every exported graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub depth: Option<usize>,
    pub region: Option<String>,
    pub generators: Vec<String>,
}

/// Finite piece of a crystal graph. An edge `(from, to, i)` means
/// `f_i(from) = to`. Nodes are kept in canonical (element) order.
#[derive(Clone, Debug)]
pub struct CrystalGraph<E> {
    pub nodes: Vec<E>,
    pub weights: Vec<Weight>,
    pub depth: Vec<usize>,
    /// Nodes outside the region: recorded, never expanded.
    pub boundary: Vec<bool>,
    pub expanded: Vec<bool>,
    pub edges: Vec<(usize, usize, usize)>,
    pub seeds: Vec<usize>,
    pub truncation: Truncation,
    generators: GeneratorSet,
    index: BTreeMap<E, usize>,
}

impl<E: Clone + Ord + Debug> CrystalGraph<E> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn index_of(&self, x: &E) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &E) -> bool {
        self.index.contains_key(x)
    }

    /// Nodes that are not boundary markers.
    pub fn interior(&self) -> impl Iterator<Item = &E> {
        self.nodes
            .iter()
            .zip(&self.boundary)
            .filter(|(_, b)| !**b)
            .map(|(x, _)| x)
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    pub fn to_json(&self, encode: impl Fn(&E) -> Value) -> Value {
        let nodes: Vec<Value> = self.nodes.iter().map(&encode).collect();
        let edges: Vec<Value> = self.edges.iter().map(|&(a, b, i)| json!([a, b, i])).collect();
        let boundary: Vec<usize> = (0..self.len()).filter(|&k| self.boundary[k]).collect();
        json!({
            "nodes": nodes,
            "edges": edges,
            "seeds": self.seeds,
            "boundary": boundary,
            "truncation": self.truncation,
        })
    }

    pub fn to_dot(&self, encode: impl Fn(&E) -> Value) -> String {
        let mut out = String::from("digraph crystal {\n");
        for (k, x) in self.nodes.iter().enumerate() {
            let label = encode(x).to_string().replace('\\', "\\\\").replace('"', "\\\"");
            if self.boundary[k] {
                out.push_str(&format!("  n{k} [label=\"{label}\", style=dashed];\n"));
            } else {
                out.push_str(&format!("  n{k} [label=\"{label}\"];\n"));
            }
        }
        for &(a, b, i) in &self.edges {
            if self.boundary[a] || self.boundary[b] {
                out.push_str(&format!("  n{a} -> n{b} [label=\"f{i}\", style=dashed];\n"));
            } else {
                out.push_str(&format!("  n{a} -> n{b} [label=\"f{i}\"];\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first closure of `seeds` under `gens`, cut by an optional depth
/// bound and an optional region. Each level is processed in canonical
/// element order, generators in the order `f_0..f_ℓ, e_0..e_ℓ`, so the
/// result is reproducible. Errors once more than `budget` nodes are seen.
pub fn orbit_bfs<C: Crystal + ?Sized>(
    c: &C,
    seeds: &[C::Elem],
    gens: &GeneratorSet,
    depth: Option<usize>,
    region: Option<&Region<'_, C::Elem>>,
    budget: usize,
) -> Result<CrystalGraph<C::Elem>> {
    let inside = |x: &C::Elem| region.is_none_or(|r| (r.contains)(x));
    // element -> (depth, boundary, expanded)
    let mut seen: BTreeMap<C::Elem, (usize, bool, bool)> = BTreeMap::new();
    let mut edges: BTreeSet<(C::Elem, C::Elem, usize)> = BTreeSet::new();
    let mut frontier: BTreeSet<C::Elem> = BTreeSet::new();
    for s in seeds {
        let b = !inside(s);
        seen.entry(s.clone()).or_insert((0, b, false));
        if !b {
            frontier.insert(s.clone());
        }
    }
    if seen.len() > budget {
        return Err(Error::BudgetExceeded { budget });
    }
    let mut level = 0usize;
    while !frontier.is_empty() && depth.is_none_or(|d| level < d) {
        let mut next = BTreeSet::new();
        for x in &frontier {
            seen.get_mut(x).expect("frontier node is recorded").2 = true;
            for g in gens.iter() {
                let Some(y) = g.apply(c, x) else { continue };
                match g.kind {
                    Kind::F => edges.insert((x.clone(), y.clone(), g.index)),
                    Kind::E => edges.insert((y.clone(), x.clone(), g.index)),
                };
                if !seen.contains_key(&y) {
                    let b = !inside(&y);
                    seen.insert(y.clone(), (level + 1, b, false));
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded { budget });
                    }
                    if !b {
                        next.insert(y);
                    }
                }
            }
        }
        frontier = next;
        level += 1;
    }

    let index: BTreeMap<C::Elem, usize> = seen.keys().cloned().enumerate().map(|(k, x)| (x, k)).collect();
    let nodes: Vec<C::Elem> = seen.keys().cloned().collect();
    let weights = nodes.iter().map(|x| c.wt(x)).collect();
    let (depths, boundary, expanded) = seen.values().fold(
        (Vec::new(), Vec::new(), Vec::new()),
        |(mut d, mut b, mut e), &(dd, bb, ee)| {
            d.push(dd);
            b.push(bb);
            e.push(ee);
            (d, b, e)
        },
    );
    let edges = edges.into_iter().map(|(a, b, i)| (index[&a], index[&b], i)).collect();
    let mut seed_ids: Vec<usize> = seeds.iter().map(|s| index[s]).collect();
    seed_ids.sort_unstable();
    seed_ids.dedup();
    Ok(CrystalGraph {
        nodes,
        weights,
        depth: depths,
        boundary,
        expanded,
        edges,
        seeds: seed_ids,
        truncation: Truncation {
            depth,
            region: region.map(|r| r.description.clone()),
            generators: gens.iter().map(|g| g.to_string()).collect(),
        },
        generators: gens.clone(),
        index,
    })
}

/// Outcome of [`check_normal`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NormalityReport {
    /// (node, index) pairs whose strings were complete and got checked.
    pub checked: usize,
    /// (node, index) pairs skipped because a string left the graph.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl NormalityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every interior node and index whose whole `i`-string stays inside the
/// graph, checks `ε_i` against the `e_i`-string length and `φ_i` against the
/// `f_i`-string length. Strings reaching a missing or boundary node are skipped.
pub fn check_normal<C: Crystal + ?Sized>(c: &C, g: &CrystalGraph<C::Elem>) -> NormalityReport {
    let mut report = NormalityReport::default();
    let usable = |x: &C::Elem| g.index_of(x).is_some_and(|k| !g.boundary[k]);
    let string_len = |x: &C::Elem, step: &dyn Fn(&C::Elem) -> Option<C::Elem>| -> Option<i64> {
        let mut cur = x.clone();
        let mut n = 0;
        loop {
            match step(&cur) {
                None => return Some(n),
                Some(y) if usable(&y) => {
                    cur = y;
                    n += 1;
                }
                Some(_) => return None,
            }
        }
    };
    for x in g.interior() {
        for i in c.indices() {
            let up = string_len(x, &|y| c.e(i, y));
            let down = string_len(x, &|y| c.f(i, y));
            match (up, down) {
                (Some(u), Some(d)) => {
                    report.checked += 1;
                    let (eps, phi) = (c.eps(i, x), c.phi(i, x));
                    if eps != u || phi != d {
                        report.failures.push(format!(
                            "{:?}, i={i}: eps={eps} vs e-string {u}, phi={phi} vs f-string {d}",
                            x
                        ));
                    }
                }
                _ => report.skipped += 1,
            }
        }
    }
    report
}

/// Outcome of [`check_morphism`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that `map` preserves `wt` and `ε_i` and commutes with the given
/// generators on `sample` (absent must map to absent). Stops at the first
/// counterexample.
pub fn check_morphism<A, B, M>(
    a: &A,
    b: &B,
    map: M,
    sample: &[A::Elem],
    gens: &GeneratorSet,
) -> MorphismReport
where
    A: Crystal + ?Sized,
    B: Crystal + ?Sized,
    M: Fn(&A::Elem) -> Option<B::Elem>,
{
    let mut report = MorphismReport::default();
    for x in sample {
        let Some(y) = map(x) else { continue };
        report.checked += 1;
        if a.wt(x) != b.wt(&y) {
            report.counterexample = Some(format!("wt differs at {x:?}: {} vs {}", a.wt(x), b.wt(&y)));
            return report;
        }
        for i in gens.indices() {
            if a.eps(i, x) != b.eps(i, &y) {
                report.counterexample = Some(format!(
                    "eps_{i} differs at {x:?}: {} vs {}",
                    a.eps(i, x),
                    b.eps(i, &y)
                ));
                return report;
            }
        }
        for g in gens.iter() {
            let lhs = g.apply(a, x).and_then(|x2| map(&x2));
            let rhs = g.apply(b, &y);
            if lhs != rhs {
                report.counterexample = Some(format!(
                    "{g} does not commute at {x:?}: map({g} x) = {lhs:?}, {g} map(x) = {rhs:?}"
                ));
                return report;
            }
        }
    }
    report
}

#[derive(Debug, PartialEq, Eq)]
struct CodeEntry {
    boundary: bool,
    expanded: bool,
    rel_weight: Weight,
    neighbours: Vec<Option<usize>>,
}

fn bfs_coding<E: Clone + Ord + Debug>(g: &CrystalGraph<E>, root: usize, ell: usize) -> Vec<CodeEntry> {
    let mut f_next: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut e_next: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(a, b, i) in &g.edges {
        f_next.insert((a, i), b);
        e_next.insert((b, i), a);
    }
    let gens = GeneratorSet::all(ell);
    let mut order = vec![root];
    let mut id: BTreeMap<usize, usize> = BTreeMap::from([(root, 0)]);
    let mut seen: HashSet<usize> = HashSet::from([root]);
    let mut k = 0;
    while k < order.len() {
        let v = order[k];
        for gen in gens.iter() {
            let next = match gen.kind {
                Kind::F => f_next.get(&(v, gen.index)),
                Kind::E => e_next.get(&(v, gen.index)),
            };
            if let Some(&w) = next {
                if seen.insert(w) {
                    id.insert(w, order.len());
                    order.push(w);
                }
            }
        }
        k += 1;
    }
    let root_wt = &g.weights[root];
    order
        .iter()
        .map(|&v| CodeEntry {
            boundary: g.boundary[v],
            expanded: g.expanded[v],
            rel_weight: &g.weights[v] - root_wt,
            neighbours: gens
                .iter()
                .map(|gen| {
                    let next = match gen.kind {
                        Kind::F => f_next.get(&(v, gen.index)),
                        Kind::E => e_next.get(&(v, gen.index)),
                    };
                    next.map(|w| id[w])
                })
                .collect(),
        })
        .collect()
}

/// Compares the rooted components of two graphs by their canonical BFS
/// codings: edge labels plus weights relative to the root. Both graphs must
/// carry the same truncation descriptor.
pub fn graphs_isomorphic<E1, E2>(
    g1: &CrystalGraph<E1>,
    g2: &CrystalGraph<E2>,
    root1: &E1,
    root2: &E2,
) -> Result<bool>
where
    E1: Clone + Ord + Debug,
    E2: Clone + Ord + Debug,
{
    if g1.truncation != g2.truncation {
        return Err(Error::TruncationMismatch(
            format!("{:?}", g1.truncation),
            format!("{:?}", g2.truncation),
        ));
    }
    let (Some(r1), Some(r2)) = (g1.index_of(root1), g2.index_of(root2)) else {
        return Err(Error::InvalidInput("root is not a node of its graph".into()));
    };
    let ell1 = g1.weights[r1].ell();
    let ell2 = g2.weights[r2].ell();
    if ell1 != ell2 {
        return Ok(false);
    }
    Ok(bfs_coding(g1, r1, ell1) == bfs_coding(g2, r2, ell2))
}
