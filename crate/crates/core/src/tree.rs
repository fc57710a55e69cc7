//! Vertex-labeled trees on `[n] = {1, ..., n}`, their Prüfer codes, exhaustive
//! enumeration, uniform sampling, and leaf surgery.
//!
//! Trees are stored as sorted edge lists `(u, v)` with `u < v` and 1-based
//! labels; adjacency is derived on demand. Enumeration walks the code space
//! `[1, n]^{n-2}` in lexicographic order, and that order is also the
//! partitioning used by the parallel folds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{domain, Error, Result};

/// A vertex label in `1..=n`.
pub type Label = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledTree {
    n: usize,
    edges: Vec<(Label, Label)>,
}

impl LabeledTree {
    /// Builds a tree from an arbitrary edge list, normalizing every edge to
    /// `u < v` and sorting. Rejects anything that is not a spanning tree of `[n]`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Label, Label)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedTree("a tree needs at least one vertex".into()));
        }
        let mut edges: Vec<(Label, Label)> =
            edges.into_iter().map(|(u, v)| if u <= v { (u, v) } else { (v, u) }).collect();
        edges.sort_unstable();
        if edges.len() != n - 1 {
            return Err(Error::MalformedTree(format!(
                "expected {} edges on {} vertices, found {}",
                n - 1,
                n,
                edges.len()
            )));
        }
        let mut components = DisjointSets::new(n + 1);
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u == 0 || v > n {
                return Err(Error::MalformedTree(format!("edge {u}-{v} leaves [1, {n}]")));
            }
            if u == v {
                return Err(Error::MalformedTree(format!("self-loop at {u}")));
            }
            if i > 0 && edges[i - 1] == (u, v) {
                return Err(Error::MalformedTree(format!("duplicate edge {u}-{v}")));
            }
            if !components.union(u, v) {
                return Err(Error::MalformedTree(format!("edge {u}-{v} closes a cycle")));
            }
        }
        // n - 1 acyclic edges on n vertices are necessarily connected.
        Ok(Self { n, edges })
    }

    /// Path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|v| (v, v + 1)))
    }

    /// Star centered at `center`.
    pub fn star(n: usize, center: Label) -> Result<Self> {
        Self::new(n, (1..=n).filter(|&v| v != center).map(|v| (center, v)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Label, Label)] {
        &self.edges
    }

    pub fn degree(&self, v: Label) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Neighbor lists indexed by label; index 0 is unused.
    pub fn adjacency(&self) -> Vec<Vec<Label>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    fn check_label(&self, v: Label) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(domain(format!("label {v} outside [1, {}]", self.n)));
        }
        Ok(())
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        Ok(())
    }
}

impl FromStr for LabeledTree {
    type Err = Error;

    /// Parses `n:u1-v1,u2-v2,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, rest) =
            s.split_once(':').ok_or_else(|| Error::Parse(format!("missing ':' in tree {s:?}")))?;
        let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad vertex count in {s:?}")))?;
        let mut edges = Vec::new();
        for edge in rest.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (u, v) = edge.split_once('-').ok_or_else(|| Error::Parse(format!("bad edge {edge:?}")))?;
            let parse = |x: &str| {
                x.trim().parse::<Label>().map_err(|_| Error::Parse(format!("bad label in edge {edge:?}")))
            };
            edges.push((parse(u)?, parse(v)?));
        }
        LabeledTree::new(n, edges)
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(size: usize) -> Self {
        Self { parent: (0..size).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// A Prüfer code of a tree on `[n]`: `n - 2` labels, empty for `n = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrueferCode {
    n: usize,
    entries: Vec<Label>,
}

impl PrueferCode {
    pub fn new(n: usize, entries: Vec<Label>) -> Result<Self> {
        if n < 2 {
            return Err(Error::MalformedCode(format!("codes need n >= 2, got n = {n}")));
        }
        if entries.len() != n - 2 {
            return Err(Error::MalformedCode(format!("length {} but n - 2 = {}", entries.len(), n - 2)));
        }
        if let Some(&bad) = entries.iter().find(|&&e| e == 0 || e > n) {
            return Err(Error::MalformedCode(format!("entry {bad} outside [1, {n}]")));
        }
        Ok(Self { n, entries })
    }

    /// Parses the comma-separated form, e.g. `2,3`; the empty string is the code for `n = 2`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(str::trim)
            .filter(|e| !e.is_empty())
            .map(|e| e.parse::<Label>().map_err(|_| Error::Parse(format!("bad code entry {e:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Label] {
        &self.entries
    }
}

impl fmt::Display for PrueferCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Vertex degrees `d_1, ..., d_n` of a tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

impl DegreeSequence {
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// Degree of vertex `v` (1-based).
    pub fn get(&self, v: Label) -> usize {
        self.degrees[v - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.degrees
    }

    pub fn total(&self) -> usize {
        self.degrees.iter().sum()
    }
}

pub fn prufer_decode(code: &PrueferCode) -> LabeledTree {
    let n = code.n;
    let mut degree = vec![1usize; n + 1];
    degree[0] = 0;
    for &e in &code.entries {
        degree[e] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = (1..=n).find(|&v| degree[v] == 1).expect("a code always leaves a leaf");
    let mut leaf = ptr;
    for &next in &code.entries {
        edges.push((leaf, next));
        degree[leaf] = 0;
        degree[next] -= 1;
        if degree[next] == 1 && next < ptr {
            leaf = next;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n));
    LabeledTree::from_valid_edges(n, edges)
}

impl LabeledTree {
    fn from_valid_edges(n: usize, edges: Vec<(Label, Label)>) -> Self {
        let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| if u < v { (u, v) } else { (v, u) }).collect();
        edges.sort_unstable();
        Self { n, edges }
    }
}

/// Encodes by repeatedly removing the smallest-labeled leaf and recording its neighbor.
pub fn prufer_encode(tree: &LabeledTree) -> Result<PrueferCode> {
    let n = tree.n;
    if n < 2 {
        return Err(Error::MalformedTree("Prüfer codes need n >= 2".into()));
    }
    // Re-validate: the fields are private, but this keeps encode total on its own.
    let tree = LabeledTree::new(n, tree.edges.iter().copied())?;
    let adj = tree.adjacency();

    // Root at n; the neighbor of a removed leaf is always its parent.
    let mut parent = vec![0usize; n + 1];
    let mut stack = vec![n];
    let mut seen = vec![false; n + 1];
    seen[n] = true;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = u;
                stack.push(w);
            }
        }
    }

    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut entries = Vec::with_capacity(n - 2);
    let mut ptr = (1..=n).find(|&v| degree[v] == 1).expect("trees have leaves");
    let mut leaf = ptr;
    for _ in 0..n - 2 {
        let next = parent[leaf];
        entries.push(next);
        degree[leaf] = 0;
        degree[next] -= 1;
        if degree[next] == 1 && next < ptr {
            leaf = next;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    Ok(PrueferCode { n, entries })
}

pub fn degree_sequence(tree: &LabeledTree) -> DegreeSequence {
    let mut degrees = vec![0usize; tree.n];
    for &(u, v) in &tree.edges {
        degrees[u - 1] += 1;
        degrees[v - 1] += 1;
    }
    DegreeSequence { degrees }
}

/// Degree sequence read straight off a code: `1 + multiplicity`.
pub fn code_degree_sequence(code: &PrueferCode) -> DegreeSequence {
    let mut degrees = vec![1usize; code.n];
    for &e in &code.entries {
        degrees[e - 1] += 1;
    }
    DegreeSequence { degrees }
}

/// `n^{n-2}`, the size of `T_n`.
pub fn tree_count(n: usize) -> BigUint {
    if n < 2 {
        return BigUint::from(1u32);
    }
    BigUint::from(n).pow((n - 2) as u32)
}

/// `n^{n-2}` as a `u64`, when it fits.
pub fn code_space_size(n: usize) -> Option<u64> {
    if n < 2 {
        return None;
    }
    (n as u64).checked_pow((n - 2) as u32)
}

/// Lexicographic odometer over `[1, n]^{n-2}` restricted to index range `[start, end)`.
#[derive(Clone, Debug)]
pub struct PrueferCodes {
    n: usize,
    current: Vec<Label>,
    remaining: Option<u64>,
    done: bool,
}

impl PrueferCodes {
    /// Every code for `n`, unbounded by `u64` (the odometer simply runs until it wraps).
    pub fn all(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(domain(format!("tree enumeration requires n >= 2, got n = {n}")));
        }
        Ok(Self { n, current: vec![1; n - 2], remaining: None, done: false })
    }

    /// Codes with lexicographic index in `[start, end)`.
    pub fn range(n: usize, start: u64, end: u64) -> Result<Self> {
        let size = code_space_size(n)
            .ok_or_else(|| domain(format!("code space for n = {n} is empty or exceeds u64")))?;
        if start > end || end > size {
            return Err(domain(format!("range [{start}, {end}) outside [0, {size})")));
        }
        Ok(Self { n, current: code_at(n, start), remaining: Some(end - start), done: start == end })
    }
}

fn code_at(n: usize, mut index: u64) -> Vec<Label> {
    let len = n - 2;
    let mut digits = vec![1; len];
    for slot in digits.iter_mut().rev() {
        *slot = (index % n as u64) as usize + 1;
        index /= n as u64;
    }
    digits
}

impl Iterator for PrueferCodes {
    type Item = PrueferCode;

    fn next(&mut self) -> Option<PrueferCode> {
        if self.done {
            return None;
        }
        if let Some(rem) = self.remaining.as_mut() {
            if *rem == 0 {
                self.done = true;
                return None;
            }
            *rem -= 1;
        }
        let out = PrueferCode { n: self.n, entries: self.current.clone() };
        // advance the odometer; wrap-around means we have emitted the last code
        let mut i = self.current.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] < self.n {
                self.current[i] += 1;
                break;
            }
            self.current[i] = 1;
        }
        Some(out)
    }
}

/// All `n^{n-2}` trees on `[n]`, in lexicographic order of their Prüfer codes.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = LabeledTree>> {
    Ok(PrueferCodes::all(n)?.map(|c| prufer_decode(&c)))
}

/// Parallel fold over `T_n`, partitioned into contiguous code ranges.
///
/// `fold` and `reduce` must form a commutative, associative reduction for the
/// result to be independent of the worker count.
pub fn par_fold_trees<T, ID, F, R>(n: usize, identity: ID, fold: F, reduce: R) -> Result<T>
where
    T: Send,
    ID: Fn() -> T + Sync + Send,
    F: Fn(T, LabeledTree) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    let size = code_space_size(n).ok_or_else(|| {
        domain(format!("tree enumeration requires 2 <= n with n^(n-2) < 2^64, got n = {n}"))
    })?;
    let chunks = (rayon::current_num_threads() as u64 * 8).clamp(1, size);
    let step = size.div_ceil(chunks);
    let out = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = (c * step).min(size);
            let end = ((c + 1) * step).min(size);
            PrueferCodes::range(n, start, end)
                .expect("chunk bounds lie inside the code space")
                .fold(identity(), |acc, code| fold(acc, prufer_decode(&code)))
        })
        .reduce(&identity, &reduce);
    Ok(out)
}

/// The unique neighbor of the leaf `v`.
pub fn leaf_neighbor(tree: &LabeledTree, v: Label) -> Result<Label> {
    tree.check_label(v)?;
    let mut it = tree.edges.iter().filter_map(|&(a, b)| {
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    });
    match (it.next(), it.next()) {
        (Some(w), None) => Ok(w),
        _ => Err(Error::NotALeaf(v)),
    }
}

/// Erases the leaf `v = n`, leaving a tree on `[n - 1]`.
pub fn strip_leaf(tree: &LabeledTree, v: Label) -> Result<LabeledTree> {
    let n = tree.n;
    if n < 3 {
        return Err(domain(format!("strip_leaf requires n >= 3, got n = {n}")));
    }
    if v != n {
        return Err(domain(format!("only the top label {n} may be stripped, got {v}")));
    }
    if tree.degree(v) != 1 {
        return Err(domain(format!("vertex {v} is not a leaf")));
    }
    let edges = tree.edges.iter().copied().filter(|&(a, b)| a != v && b != v).collect();
    Ok(LabeledTree { n: n - 1, edges })
}

/// Adds a new vertex `n + 1` hanging off `a`.
pub fn attach_leaf(tree: &LabeledTree, a: Label) -> Result<LabeledTree> {
    tree.check_label(a)?;
    let n = tree.n + 1;
    let mut edges = tree.edges.clone();
    edges.push((a, n));
    Ok(LabeledTree::from_valid_edges(n, edges))
}

/// A uniform tree on `[n]`: decodes `n - 2` independent uniform labels.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<LabeledTree> {
    Ok(prufer_decode(&random_code(n, rng)?))
}

pub fn random_code<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PrueferCode> {
    if n < 2 {
        return Err(domain(format!("random_tree requires n >= 2, got n = {n}")));
    }
    let entries = (0..n - 2).map(|_| rng.random_range(1..=n)).collect();
    Ok(PrueferCode { n, entries })
}
