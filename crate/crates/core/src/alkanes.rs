//! Alkanes: free trees with maximum vertex degree 4.
//!
//! Vertices are 0-indexed internally; JSON uses 1-based indices.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Largest genus accepted by [`enumerate_alkanes`].
pub const DEFAULT_MAX_GENUS: usize = 16;

/// Maximum carbon valency.
pub const MAX_DEGREE: usize = 4;

/// Nested-parentheses code of a tree rooted at its centroid. Equal codes
/// exactly when the underlying alkanes are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Number of vertices of each carbon degree.
///
/// `isolated` is only non-zero for methane (genus 1), whose single carbon has
/// no carbon neighbours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValencyProfile {
    pub isolated: usize,
    /// `counts[j - 1]` vertices have exactly `j` carbon neighbours.
    pub counts: [usize; 4],
}

impl ValencyProfile {
    pub fn gamma(&self, j: usize) -> usize {
        match j {
            0 => self.isolated,
            1..=4 => self.counts[j - 1],
            _ => 0,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.isolated + self.counts.iter().sum::<usize>()
    }

    /// `Σ j·γ_j`, twice the number of carbon-carbon bonds.
    pub fn weighted_sum(&self) -> usize {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &c)| (k + 1) * c)
            .sum()
    }
}

/// A tree on `genus` vertices with every degree at most 4.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alkane {
    genus: usize,
    /// Sorted, each pair `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Alkane {
    /// Builds and validates an alkane from 0-based edges.
    pub fn new(genus: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidAlkane("genus must be at least 1".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a >= genus || b >= genus {
                return Err(Error::InvalidAlkane(format!(
                    "edge ({a}, {b}) has a vertex outside 0..{genus}"
                )));
            }
            if a == b {
                return Err(Error::InvalidAlkane(format!("loop at vertex {a}")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidAlkane(format!("repeated edge ({a}, {b})")));
            }
        }
        if set.len() != genus - 1 {
            return Err(Error::InvalidAlkane(format!(
                "a tree on {genus} vertices has {} edges, got {}",
                genus - 1,
                set.len()
            )));
        }
        let mut adjacency = vec![Vec::new(); genus];
        for &(a, b) in &set {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for (v, nb) in adjacency.iter().enumerate() {
            if nb.len() > MAX_DEGREE {
                return Err(Error::InvalidAlkane(format!(
                    "vertex {v} has degree {} > {MAX_DEGREE}",
                    nb.len()
                )));
            }
        }
        // g - 1 edges plus connectivity makes a tree.
        let mut seen = vec![false; genus];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidAlkane("graph is disconnected".into()));
        }
        Ok(Alkane {
            genus,
            edges: set.into_iter().collect(),
            adjacency,
        })
    }

    /// Builds an alkane from 1-based edges (the external convention).
    pub fn from_one_based(genus: usize, edges: &[[usize; 2]]) -> Result<Self> {
        let mut zero_based = Vec::with_capacity(edges.len());
        for &[a, b] in edges {
            if a == 0 || b == 0 {
                return Err(Error::InvalidAlkane("vertices are numbered from 1".into()));
            }
            zero_based.push((a - 1, b - 1));
        }
        Self::new(genus, zero_based)
    }

    /// The linear alkane `0 - 1 - ... - (g-1)`.
    pub fn chain(genus: usize) -> Result<Self> {
        Self::new(genus, (1..genus).map(|v| (v - 1, v)))
    }

    /// Vertex 0 joined to vertices `1..genus`; requires `genus <= 5`.
    pub fn star(genus: usize) -> Result<Self> {
        Self::new(genus, (1..genus).map(|v| (0, v)))
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edges_one_based(&self) -> Vec<[usize; 2]> {
        self.edges.iter().map(|&(a, b)| [a + 1, b + 1]).collect()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// Applies `perm` (old vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.genus {
            return Err(Error::InvalidAlkane("permutation length mismatch".into()));
        }
        Self::new(self.genus, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
    }

    pub fn valency_profile(&self) -> ValencyProfile {
        let mut p = ValencyProfile {
            isolated: 0,
            counts: [0; 4],
        };
        for v in 0..self.genus {
            match self.degree(v) {
                0 => p.isolated += 1,
                d => p.counts[d - 1] += 1,
            }
        }
        p
    }

    /// Hydrogens attached to the carbon skeleton; always `2g + 2`.
    pub fn hydrogen_count(&self) -> usize {
        (0..self.genus).map(|v| MAX_DEGREE - self.degree(v)).sum()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.genus).all(|v| self.degree(v) <= 2)
    }

    /// One or two centroids; each component of the tree minus a centroid has
    /// at most `g / 2` vertices.
    pub fn centroids(&self) -> Vec<usize> {
        let n = self.genus;
        let (order, parent) = self.dfs_order(0);
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if let Some(p) = parent[v] {
                size[p] += size[v];
            }
        }
        let mut out = Vec::new();
        for v in 0..n {
            let mut largest = n - size[v];
            for &w in &self.adjacency[v] {
                if parent[w] == Some(v) {
                    largest = largest.max(size[w]);
                }
            }
            if 2 * largest <= n {
                out.push(v);
            }
        }
        out
    }

    fn dfs_order(&self, root: usize) -> (Vec<usize>, Vec<Option<usize>>) {
        let mut order = Vec::with_capacity(self.genus);
        let mut parent = vec![None; self.genus];
        let mut stack = vec![root];
        let mut seen = vec![false; self.genus];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in self.adjacency[v].iter().rev() {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push(w);
                }
            }
        }
        (order, parent)
    }

    /// AHU code of the tree rooted at `root`, children codes sorted.
    pub fn rooted_code(&self, root: usize) -> String {
        fn go(t: &Alkane, v: usize, parent: Option<usize>) -> String {
            let mut kids: Vec<String> = t.adjacency[v]
                .iter()
                .filter(|&&w| Some(w) != parent)
                .map(|&w| go(t, w, Some(v)))
                .collect();
            kids.sort();
            let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
            s.push('(');
            for k in kids {
                s.push_str(&k);
            }
            s.push(')');
            s
        }
        go(self, root, None)
    }

    pub fn canonical_code(&self) -> CanonicalCode {
        let code = self
            .centroids()
            .into_iter()
            .map(|c| self.rooted_code(c))
            .min()
            .expect("a tree has a centroid");
        CanonicalCode(code)
    }

    /// `{ "genus", "edges" (1-based), "code", "valency": [γ1..γ4], "hydrogens" }`
    pub fn to_json(&self) -> Value {
        let p = self.valency_profile();
        json!({
            "genus": self.genus,
            "edges": self.edges_one_based(),
            "code": self.canonical_code().as_str(),
            "valency": p.counts,
            "hydrogens": self.hydrogen_count(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let genus = v
            .get("genus")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("alkane: missing \"genus\"".into()))? as usize;
        let edges: Vec<[usize; 2]> = match v.get("edges") {
            Some(e) => serde_json::from_value(e.clone())?,
            None => Vec::new(),
        };
        Self::from_one_based(genus, &edges)
    }
}

/// Rooted trees in which every vertex has at most three children, generated
/// size by size. Ids increase with size, so a non-increasing id sequence is a
/// canonical ordering of a child multiset.
struct RootedForest {
    size: Vec<usize>,
    children: Vec<Vec<usize>>,
    by_size: Vec<Vec<usize>>,
}

impl RootedForest {
    fn up_to(max_size: usize) -> Self {
        let mut forest = RootedForest {
            size: Vec::new(),
            children: Vec::new(),
            by_size: vec![Vec::new(); max_size + 1],
        };
        for n in 1..=max_size {
            let max_id = forest.size.len();
            let mut shapes = Vec::new();
            forest.child_multisets(n - 1, 3, max_id, n - 1, &mut Vec::new(), &mut shapes);
            for kids in shapes {
                let id = forest.size.len();
                forest.size.push(n);
                forest.children.push(kids);
                forest.by_size[n].push(id);
            }
        }
        forest
    }

    /// All non-increasing id sequences with sizes summing to `remaining`,
    /// at most `slots` entries, ids `< bound`, each size `<= max_child`.
    fn child_multisets(
        &self,
        remaining: usize,
        slots: usize,
        bound: usize,
        max_child: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for id in (0..bound).rev() {
            let s = self.size[id];
            if s > remaining || s > max_child {
                continue;
            }
            current.push(id);
            self.child_multisets(remaining - s, slots - 1, id + 1, max_child, current, out);
            current.pop();
        }
    }

    /// Appends the vertices of tree `id` below `parent`, returning its root.
    fn expand(&self, id: usize, parent: Option<usize>, next: &mut usize, edges: &mut Vec<(usize, usize)>) -> usize {
        let v = *next;
        *next += 1;
        if let Some(p) = parent {
            edges.push((p, v));
        }
        for &c in &self.children[id] {
            self.expand(c, Some(v), next, edges);
        }
        v
    }
}

/// Relabels in depth-first preorder starting from the lowest-numbered leaf,
/// so the chain comes out as `0 - 1 - ... - (g-1)`.
fn normalize_labels(t: &Alkane) -> Alkane {
    let start = (0..t.genus).find(|&v| t.degree(v) <= 1).unwrap_or(0);
    let (order, _) = t.dfs_order(start);
    let mut perm = vec![0; t.genus];
    for (label, &v) in order.iter().enumerate() {
        perm[v] = label;
    }
    t.relabel(&perm).expect("permutation of a valid alkane")
}

/// One representative per isomorphism class of alkanes with `genus`
/// carbons, sorted by canonical code.
pub fn enumerate_alkanes(genus: usize) -> Result<Vec<Alkane>> {
    enumerate_alkanes_with_cap(genus, DEFAULT_MAX_GENUS)
}

pub fn enumerate_alkanes_with_cap(genus: usize, cap: usize) -> Result<Vec<Alkane>> {
    if genus < 1 || genus > cap {
        return Err(Error::Range {
            what: "genus",
            value: genus as i64,
            min: 1,
            max: cap as i64,
        });
    }
    let half = genus / 2;
    let forest = RootedForest::up_to(half.max(1));
    let mut out = Vec::new();

    // Unicentroidal: every branch at the centroid is smaller than g / 2.
    let max_branch = (genus - 1) / 2;
    let mut roots = Vec::new();
    forest.child_multisets(
        genus - 1,
        MAX_DEGREE,
        forest.size.len(),
        max_branch,
        &mut Vec::new(),
        &mut roots,
    );
    for kids in roots {
        let mut edges = Vec::with_capacity(genus - 1);
        let mut next = 1;
        for &c in &kids {
            forest.expand(c, Some(0), &mut next, &mut edges);
        }
        out.push(Alkane::new(genus, edges)?);
    }

    // Bicentroidal: two halves of size g / 2 joined by the central bond.
    if genus.is_multiple_of(2) {
        let ids = &forest.by_size[half];
        for (i, &a) in ids.iter().enumerate() {
            for &b in &ids[i..] {
                let mut edges = Vec::with_capacity(genus - 1);
                let mut next = 0;
                let ra = forest.expand(a, None, &mut next, &mut edges);
                forest.expand(b, Some(ra), &mut next, &mut edges);
                out.push(Alkane::new(genus, edges)?);
            }
        }
    }

    let mut keyed: Vec<(CanonicalCode, Alkane)> = out
        .into_iter()
        .map(|a| normalize_labels(&a))
        .map(|a| (a.canonical_code(), a))
        .collect();
    keyed.sort_by(|x, y| x.0.cmp(&y.0));
    debug_assert!(keyed.windows(2).all(|w| w[0].0 != w[1].0));
    Ok(keyed.into_iter().map(|(_, a)| a).collect())
}

/// `|enumerate_alkanes(g)|` for `g = 1..=max`.
pub fn alkane_counts(max: usize) -> Result<Vec<usize>> {
    (1..=max)
        .map(|g| enumerate_alkanes(g).map(|v| v.len()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=8)
            .map(|g| enumerate_alkanes(g).unwrap().len())
            .collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 5, 9, 18]);
    }

    #[test]
    fn butanes() {
        let v = enumerate_alkanes(4).unwrap();
        assert_eq!(v.len(), 2);
        assert!(v.iter().any(Alkane::is_chain));
        assert!(v.iter().any(|a| (0..4).any(|x| a.degree(x) == 3)));
    }

    #[test]
    fn methane() {
        let v = enumerate_alkanes(1).unwrap();
        assert_eq!(v.len(), 1);
        assert!(v[0].edges().is_empty());
        assert_eq!(v[0].canonical_code().as_str(), "()");
        assert_eq!(v[0].hydrogen_count(), 4);
        assert!(v[0].is_chain());
    }

    #[test]
    fn chain_is_labelled_in_order() {
        for g in 1..=9 {
            let chain = enumerate_alkanes(g)
                .unwrap()
                .into_iter()
                .find(Alkane::is_chain)
                .unwrap();
            assert_eq!(chain, Alkane::chain(g).unwrap());
        }
    }

    #[test]
    fn codes_distinguish_butanes_and_ignore_labels() {
        let p4 = Alkane::chain(4).unwrap();
        let k13 = Alkane::star(4).unwrap();
        assert_ne!(p4.canonical_code(), k13.canonical_code());
        let p3 = Alkane::chain(3).unwrap();
        let p3b = Alkane::new(3, [(0, 2), (2, 1)]).unwrap();
        assert_eq!(p3.canonical_code(), p3b.canonical_code());
    }

    #[test]
    fn valency_profiles() {
        let p = Alkane::chain(5).unwrap().valency_profile();
        assert_eq!(p.counts, [2, 3, 0, 0]);
        let s = Alkane::star(5).unwrap().valency_profile();
        assert_eq!(s.counts, [4, 0, 0, 1]);
        assert_eq!(s.weighted_sum(), 8);
    }

    #[test]
    fn hydrogens() {
        assert_eq!(Alkane::chain(3).unwrap().hydrogen_count(), 8);
        for a in enumerate_alkanes(6).unwrap() {
            assert_eq!(a.hydrogen_count(), 14);
        }
    }

    #[test]
    fn is_chain_cases() {
        assert!(Alkane::chain(5).unwrap().is_chain());
        assert!(!Alkane::star(4).unwrap().is_chain());
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(Alkane::new(0, []).is_err());
        assert!(Alkane::new(3, [(0, 1)]).is_err());
        assert!(Alkane::new(4, [(0, 1), (1, 0), (2, 3)]).is_err());
        assert!(Alkane::new(4, [(0, 1), (1, 2), (2, 0)]).is_err());
        assert!(Alkane::star(6).is_err());
        assert!(Alkane::new(3, [(0, 3), (1, 2)]).is_err());
        assert!(matches!(enumerate_alkanes(0), Err(Error::Range { .. })));
        assert!(matches!(enumerate_alkanes(17), Err(Error::Range { .. })));
    }

    #[test]
    fn json_shape() {
        let a = Alkane::chain(3).unwrap();
        let v = a.to_json();
        assert_eq!(v["edges"], json!([[1, 2], [2, 3]]));
        assert_eq!(v["valency"], json!([2, 1, 0, 0]));
        assert_eq!(v["hydrogens"], 8);
        assert_eq!(Alkane::from_json(&v).unwrap(), a);
    }
}
