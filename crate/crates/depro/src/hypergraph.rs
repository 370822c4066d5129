//! Hypergraphs, minimization, hitting-set checks, and minimal-transversal
//! enumeration.
//!
//! A hypergraph is an ordered vertex universe together with a family of
//! vertex subsets (edges). Degenerate shapes are allowed on purpose: the
//! empty edge family (every set is a transversal, so `Tr = {∅}`), an empty
//! edge (nothing can hit it, so `Tr = {}`), and isolated vertices.
//!
//! Two enumerators are provided: a depth-first search that maintains
//! per-edge criticality witnesses and an uncovered-edge list (linear memory
//! in the input), and an exhaustive subset scan used as the ground-truth
//! oracle for testing and verification.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A set of vertex indices into a hypergraph's universe.
pub type VertexSet = BTreeSet<u32>;

/// Default vertex bound for the exhaustive transversal oracle.
pub const DEFAULT_ORACLE_VERTICES: usize = 20;

/// A hypergraph: an ordered universe of named vertices plus a family of
/// edges over it. Duplicate edges are collapsed at construction; edge order
/// is the order of first appearance. Values are immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphRepr", into = "HypergraphRepr")]
pub struct Hypergraph {
    vertices: Vec<String>,
    edges: Vec<VertexSet>,
}

/// A minimal transversal together with the index of the hypergraph it came
/// from in a multi-hypergraph instance. Membership is re-checkable in
/// polynomial time via [`Hypergraph::is_minimal_transversal`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TaggedTransversal {
    pub set: VertexSet,
    pub source: usize,
}

impl Hypergraph {
    /// Builds a hypergraph from an explicit universe and index-based edges.
    ///
    /// Vertex names must be unique and non-empty; every edge index must be
    /// in range. Duplicate edges collapse to their first occurrence.
    pub fn new(vertices: Vec<String>, edges: Vec<VertexSet>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for name in &vertices {
            if name.is_empty() {
                return Err(Error::InvalidInput("empty vertex name".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate vertex name '{name}'")));
            }
        }
        let n = vertices.len() as u32;
        let mut deduped: Vec<VertexSet> = Vec::new();
        for edge in edges {
            if let Some(&v) = edge.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidInput(format!(
                    "edge vertex index {v} out of range (universe has {n} vertices)"
                )));
            }
            if !deduped.contains(&edge) {
                deduped.push(edge);
            }
        }
        Ok(Hypergraph {
            vertices,
            edges: deduped,
        })
    }

    /// Builds a hypergraph from name-based edges; the universe is the
    /// vertices in order of first appearance.
    pub fn from_named_edges(edges: &[&[&str]]) -> Self {
        let mut vertices: Vec<String> = Vec::new();
        let mut index: BTreeMap<String, u32> = BTreeMap::new();
        let mut idx_edges = Vec::new();
        for edge in edges {
            let mut set = VertexSet::new();
            for &name in *edge {
                let id = *index.entry(name.to_string()).or_insert_with(|| {
                    vertices.push(name.to_string());
                    (vertices.len() - 1) as u32
                });
                set.insert(id);
            }
            idx_edges.push(set);
        }
        Hypergraph::new(vertices, idx_edges).expect("first-appearance universe is consistent")
    }

    /// Builds a hypergraph over a declared universe, with name-based edges.
    /// Unknown edge vertices are an error.
    pub fn with_vertices(vertices: &[&str], edges: &[&[&str]]) -> Result<Self> {
        let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let lookup: BTreeMap<&str, u32> = vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i as u32))
            .collect();
        let mut idx_edges = Vec::new();
        for edge in edges {
            let mut set = VertexSet::new();
            for &name in *edge {
                let id = lookup.get(name).copied().ok_or_else(|| {
                    Error::InvalidInput(format!("edge vertex '{name}' not in declared universe"))
                })?;
                set.insert(id);
            }
            idx_edges.push(set);
        }
        Hypergraph::new(names, idx_edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[VertexSet] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<u32> {
        self.vertices.iter().position(|v| v == name).map(|i| i as u32)
    }

    pub fn vertex_name(&self, v: u32) -> &str {
        &self.vertices[v as usize]
    }

    /// Resolves vertex names to an index set; unknown names are an error.
    pub fn vertex_set_from_names<'a>(
        &self,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<VertexSet> {
        names
            .into_iter()
            .map(|n| {
                self.vertex_index(n)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown vertex '{n}'")))
            })
            .collect()
    }

    pub fn names_of(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|&v| self.vertices[v as usize].clone()).collect()
    }

    /// The inclusion-wise minimal edges, over the unchanged universe. The
    /// result is Sperner and has the same transversals as `self`.
    pub fn minimize(&self) -> Hypergraph {
        let minimal: Vec<VertexSet> = self
            .edges
            .iter()
            .filter(|e| {
                !self
                    .edges
                    .iter()
                    .any(|other| *other != **e && other.is_subset(e))
            })
            .cloned()
            .collect();
        Hypergraph {
            vertices: self.vertices.clone(),
            edges: minimal,
        }
    }

    /// True iff `t` intersects every edge. Vacuously true without edges;
    /// false for every `t` if the empty edge is present.
    pub fn is_hitting_set(&self, t: &VertexSet) -> Result<bool> {
        let n = self.vertices.len() as u32;
        if let Some(&v) = t.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidInput(format!(
                "vertex index {v} outside the universe"
            )));
        }
        Ok(self.edges.iter().all(|e| !e.is_disjoint(t)))
    }

    /// True iff `t` is a hitting set and no proper subset of it is one.
    pub fn is_minimal_transversal(&self, t: &VertexSet) -> Result<bool> {
        if !self.is_hitting_set(t)? {
            return Ok(false);
        }
        for &v in t {
            let mut smaller = t.clone();
            smaller.remove(&v);
            if self.is_hitting_set(&smaller)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Decides whether a hitting set of cardinality exactly `k` exists.
    ///
    /// Returns false whenever `k` exceeds the universe size; below that
    /// cutoff the answer agrees with "a hitting set of size at most `k`
    /// exists", since hitting sets are closed under adding vertices.
    pub fn has_hitting_set_of_size(&self, k: usize) -> bool {
        if k > self.vertices.len() {
            return false;
        }
        let mut found = false;
        let mut engine = SearchState::new(self, Some(k));
        engine.run(&mut |_| {
            found = true;
            ControlFlow::Break(())
        });
        found
    }

    /// Streams every minimal transversal exactly once, in a deterministic
    /// order, to `sink`. Returning `ControlFlow::Break` stops early.
    pub fn visit_minimal_transversals(
        &self,
        sink: &mut dyn FnMut(&VertexSet) -> ControlFlow<()>,
    ) {
        let mut engine = SearchState::new(self, None);
        engine.run(sink);
    }

    /// All minimal transversals, in the enumerator's deterministic order.
    pub fn minimal_transversals(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.visit_minimal_transversals(&mut |t| {
            out.push(t.clone());
            ControlFlow::Continue(())
        });
        out
    }

    /// Exhaustive transversal oracle: tests all vertex subsets and keeps the
    /// minimal hitting sets. Refuses universes larger than `max_vertices`.
    /// The result is sorted lexicographically by vertex index.
    pub fn brute_force_minimal_transversals(
        &self,
        max_vertices: usize,
    ) -> Result<Vec<VertexSet>> {
        let n = self.vertices.len();
        if n > max_vertices || n >= 63 {
            return Err(Error::OracleBound {
                what: "hypergraph universe",
                size: n,
                bound: max_vertices.min(62),
            });
        }
        if self.edges.iter().any(|e| e.is_empty()) {
            // The empty edge cannot be hit, so there are no transversals.
            return Ok(Vec::new());
        }
        let edge_masks: Vec<u64> = self
            .edges
            .iter()
            .map(|e| e.iter().fold(0u64, |m, &v| m | (1 << v)))
            .collect();
        let hitting = |mask: u64| edge_masks.iter().all(|&em| em & mask != 0);
        let mut out: Vec<VertexSet> = Vec::new();
        for mask in 0..(1u64 << n) {
            if !hitting(mask) {
                continue;
            }
            let minimal = (0..n).all(|v| mask & (1 << v) == 0 || !hitting(mask & !(1 << v)));
            if minimal {
                out.push((0..n as u32).filter(|&v| mask & (1 << v) != 0).collect());
            }
        }
        out.sort();
        Ok(out)
    }

    /// Returns this hypergraph re-indexed over a larger universe, which must
    /// contain every current vertex. New vertices are isolated, so the
    /// transversal family is unchanged.
    pub fn padded_to(&self, universe: &[String]) -> Result<Hypergraph> {
        let lookup: BTreeMap<&str, u32> = universe
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i as u32))
            .collect();
        let mut remap = Vec::with_capacity(self.vertices.len());
        for name in &self.vertices {
            let id = lookup.get(name.as_str()).copied().ok_or_else(|| {
                Error::InvalidInput(format!("vertex '{name}' missing from the padded universe"))
            })?;
            remap.push(id);
        }
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&v| remap[v as usize]).collect())
            .collect();
        Hypergraph::new(universe.to_vec(), edges)
    }
}

/// The shared universe of a multi-hypergraph instance: all vertex names in
/// order of first appearance across the input list. Errors on an empty list.
pub fn union_universe(graphs: &[Hypergraph]) -> Result<Vec<String>> {
    if graphs.is_empty() {
        return Err(Error::InvalidInput("empty hypergraph list".into()));
    }
    let mut universe: Vec<String> = Vec::new();
    let mut seen: BTreeSet<&str> = BTreeSet::new();
    for g in graphs {
        for name in g.vertices() {
            if seen.insert(name) {
                universe.push(name.clone());
            }
        }
    }
    // `seen` borrows from `graphs`, `universe` owns its strings.
    Ok(universe)
}

/// Streams the disjoint union of the transversal families of `graphs`: each
/// `(T, i)` with `T` a minimal transversal of `graphs[i]`, exactly once. A
/// set appearing in several families is emitted once per index. Indices in
/// the emitted sets refer to [`union_universe`].
pub fn visit_transversal_union(
    graphs: &[Hypergraph],
    sink: &mut dyn FnMut(&TaggedTransversal) -> ControlFlow<()>,
) -> Result<()> {
    let universe = union_universe(graphs)?;
    for (i, g) in graphs.iter().enumerate() {
        let padded = g.padded_to(&universe)?;
        let mut stop = false;
        padded.visit_minimal_transversals(&mut |t| {
            let tagged = TaggedTransversal {
                set: t.clone(),
                source: i,
            };
            let flow = sink(&tagged);
            if flow.is_break() {
                stop = true;
            }
            flow
        });
        if stop {
            break;
        }
    }
    Ok(())
}

/// Collects [`visit_transversal_union`] into a vector.
pub fn transversal_union(graphs: &[Hypergraph]) -> Result<Vec<TaggedTransversal>> {
    let mut out = Vec::new();
    visit_transversal_union(graphs, &mut |t| {
        out.push(t.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Depth-first minimal-hitting-set search. The state tracks, for every
/// chosen vertex, the edges only it covers ("critical" edges); a branch is
/// pruned as soon as some chosen vertex loses its last critical edge, since
/// no extension of that branch can be minimal. Uncovered edges and the
/// candidate set shrink and are restored on backtrack, so memory stays
/// linear in the input.
struct SearchState {
    edges: Vec<VertexSet>,
    edges_with: Vec<Vec<usize>>,
    uncov: BTreeSet<usize>,
    cand: BTreeSet<u32>,
    chosen: Vec<u32>,
    crit: Vec<BTreeSet<usize>>,
    crit_owner: Vec<Option<usize>>,
    max_depth: Option<usize>,
}

impl SearchState {
    fn new(graph: &Hypergraph, max_depth: Option<usize>) -> Self {
        // Minimizing first keeps the transversal family unchanged and the
        // witness bookkeeping small.
        let edges = graph.minimize().edges;
        let n = graph.vertex_count();
        let mut edges_with = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                edges_with[v as usize].push(i);
            }
        }
        let crit_owner = vec![None; edges.len()];
        SearchState {
            uncov: (0..edges.len()).collect(),
            cand: (0..n as u32).collect(),
            chosen: Vec::new(),
            crit: Vec::new(),
            crit_owner,
            edges,
            edges_with,
            max_depth,
        }
    }

    fn run(&mut self, sink: &mut dyn FnMut(&VertexSet) -> ControlFlow<()>) {
        let _ = self.recurse(sink);
    }

    fn recurse(&mut self, sink: &mut dyn FnMut(&VertexSet) -> ControlFlow<()>) -> ControlFlow<()> {
        if self.uncov.is_empty() {
            // Every chosen vertex still has a critical edge, so the set is
            // an inclusion-wise minimal hitting set.
            let set: VertexSet = self.chosen.iter().copied().collect();
            return sink(&set);
        }
        if let Some(depth) = self.max_depth {
            if self.chosen.len() >= depth {
                return ControlFlow::Continue(());
            }
        }
        // Branch on the uncovered edge with the fewest remaining candidates;
        // ties break toward the lowest edge index for determinism.
        let mut pick = None;
        for &e in &self.uncov {
            let count = self.edges[e].iter().filter(|v| self.cand.contains(v)).count();
            if pick.is_none_or(|(best, _)| count < best) {
                pick = Some((count, e));
            }
        }
        let (_, f) = pick.expect("uncov is non-empty");
        let branch: Vec<u32> = self.edges[f]
            .iter()
            .copied()
            .filter(|v| self.cand.contains(v))
            .collect();
        for &v in &branch {
            self.cand.remove(&v);
        }
        // A vertex re-enters the candidate pool after its own branch, so a
        // solution containing several branch vertices is found exactly once:
        // in the branch of the latest one in this ordering.
        for &v in &branch {
            let mut covered: Vec<usize> = Vec::new();
            let mut demoted: Vec<(usize, usize)> = Vec::new();
            for &e in &self.edges_with[v as usize] {
                if self.uncov.remove(&e) {
                    covered.push(e);
                } else if let Some(owner) = self.crit_owner[e] {
                    self.crit[owner].remove(&e);
                    self.crit_owner[e] = None;
                    demoted.push((e, owner));
                }
            }
            let still_minimal = self.crit.iter().all(|c| !c.is_empty());
            let mut flow = ControlFlow::Continue(());
            if still_minimal {
                let slot = self.chosen.len();
                self.chosen.push(v);
                self.crit.push(covered.iter().copied().collect());
                for &e in &covered {
                    self.crit_owner[e] = Some(slot);
                }
                flow = self.recurse(sink);
                for &e in &covered {
                    self.crit_owner[e] = None;
                }
                self.crit.pop();
                self.chosen.pop();
            }
            for &(e, owner) in &demoted {
                self.crit[owner].insert(e);
                self.crit_owner[e] = Some(owner);
            }
            for &e in &covered {
                self.uncov.insert(e);
            }
            self.cand.insert(v);
            if flow.is_break() {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    }
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

/// Wire form of a hypergraph: `{"vertices":[...],"edges":[[...],...]}` with
/// name-based edges.
#[derive(Serialize, Deserialize)]
struct HypergraphRepr {
    vertices: Vec<String>,
    edges: Vec<Vec<String>>,
}

impl From<Hypergraph> for HypergraphRepr {
    fn from(h: Hypergraph) -> Self {
        let edges = h.edges.iter().map(|e| h.names_of(e)).collect();
        HypergraphRepr {
            vertices: h.vertices,
            edges,
        }
    }
}

impl TryFrom<HypergraphRepr> for Hypergraph {
    type Error = Error;

    fn try_from(repr: HypergraphRepr) -> Result<Self> {
        let vertex_refs: Vec<&str> = repr.vertices.iter().map(|s| s.as_str()).collect();
        let edge_refs: Vec<Vec<&str>> = repr
            .edges
            .iter()
            .map(|e| e.iter().map(|s| s.as_str()).collect())
            .collect();
        let edge_slices: Vec<&[&str]> = edge_refs.iter().map(|e| e.as_slice()).collect();
        Hypergraph::with_vertices(&vertex_refs, &edge_slices)
    }
}

impl Hypergraph {
    /// Parses the line-oriented text format: one edge per line with vertex
    /// names comma-separated, `#` lines as comments, and an optional leading
    /// header `vertices: a,b,c` declaring the universe (isolated vertices
    /// included). A blank line is the empty edge. Edge vertices missing from
    /// the header are appended in order of first appearance.
    pub fn parse_text(input: &str) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut index: BTreeMap<String, u32> = BTreeMap::new();
        let mut edges: Vec<VertexSet> = Vec::new();
        let mut header_seen = false;
        for (lineno, raw) in input.lines().enumerate() {
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.trim_start().starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                if header_seen || !edges.is_empty() {
                    return Err(Error::Parse(format!(
                        "line {}: vertex header must appear once, before any edge",
                        lineno + 1
                    )));
                }
                header_seen = true;
                if rest.trim().is_empty() {
                    continue;
                }
                for name in rest.split(',') {
                    let name = name.trim();
                    if name.is_empty() {
                        return Err(Error::Parse(format!(
                            "line {}: empty vertex name in header",
                            lineno + 1
                        )));
                    }
                    if index.contains_key(name) {
                        return Err(Error::Parse(format!(
                            "line {}: duplicate vertex '{name}' in header",
                            lineno + 1
                        )));
                    }
                    index.insert(name.to_string(), vertices.len() as u32);
                    vertices.push(name.to_string());
                }
                continue;
            }
            if line.trim().is_empty() {
                edges.push(VertexSet::new());
                continue;
            }
            let mut edge = VertexSet::new();
            for name in line.split(',') {
                let name = name.trim();
                if name.is_empty() {
                    return Err(Error::Parse(format!(
                        "line {}: empty vertex name in edge",
                        lineno + 1
                    )));
                }
                let id = *index.entry(name.to_string()).or_insert_with(|| {
                    vertices.push(name.to_string());
                    (vertices.len() - 1) as u32
                });
                edge.insert(id);
            }
            edges.push(edge);
        }
        Hypergraph::new(vertices, edges)
    }

    /// Writes the text format. The header always lists the full universe so
    /// that `parse_text` reproduces this value exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("vertices: ");
        out.push_str(&self.vertices.join(","));
        out.push('\n');
        for e in &self.edges {
            out.push_str(&self.names_of(e).join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("hypergraph serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vs(vals: &[u32]) -> VertexSet {
        vals.iter().copied().collect()
    }

    #[test]
    fn minimize_absorbs_supersets() {
        let h = Hypergraph::from_named_edges(&[&["a"], &["a", "b"]]);
        assert_eq!(h.minimize().edges(), &[vs(&[0])]);

        let h = Hypergraph::from_named_edges(&[&["a", "b"], &["b", "c"], &["a", "b", "c"]]);
        assert_eq!(h.minimize().edges(), &[vs(&[0, 1]), vs(&[1, 2])]);

        let empty = Hypergraph::new(vec![], vec![]).unwrap();
        assert!(empty.minimize().edges().is_empty());
    }

    #[test]
    fn minimize_keeps_universe_and_is_sperner() {
        let h = Hypergraph::from_named_edges(&[&["a", "b", "c"], &["b"], &["a", "c"]]);
        let m = h.minimize();
        assert_eq!(m.vertices(), h.vertices());
        for e in m.edges() {
            for f in m.edges() {
                assert!(e == f || !e.is_subset(f));
            }
        }
    }

    #[test]
    fn hitting_set_basics() {
        let h = Hypergraph::from_named_edges(&[&["a", "b"], &["b", "c"]]);
        assert!(h.is_hitting_set(&vs(&[1])).unwrap());
        assert!(!h.is_hitting_set(&vs(&[0])).unwrap());

        let empty = Hypergraph::new(vec![], vec![]).unwrap();
        assert!(empty.is_hitting_set(&vs(&[])).unwrap());

        let with_empty_edge =
            Hypergraph::new(vec!["a".into()], vec![VertexSet::new()]).unwrap();
        assert!(!with_empty_edge.is_hitting_set(&vs(&[0])).unwrap());

        assert!(matches!(
            h.is_hitting_set(&vs(&[7])),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn hitting_set_of_exact_size() {
        let h = Hypergraph::from_named_edges(&[&["a", "b"], &["b", "c"]]);
        assert!(h.has_hitting_set_of_size(1));
        assert!(h.has_hitting_set_of_size(2));
        assert!(h.has_hitting_set_of_size(3));
        assert!(!h.has_hitting_set_of_size(4));
        assert!(!h.has_hitting_set_of_size(0));

        let disjoint = Hypergraph::from_named_edges(&[&["a"], &["c"]]);
        assert!(!disjoint.has_hitting_set_of_size(1));
        assert!(disjoint.has_hitting_set_of_size(2));

        let no_edges = Hypergraph::with_vertices(&["a", "b"], &[]).unwrap();
        assert!(no_edges.has_hitting_set_of_size(0));
        assert!(no_edges.has_hitting_set_of_size(2));
        assert!(!no_edges.has_hitting_set_of_size(3));

        let unhittable = Hypergraph::new(vec!["a".into()], vec![VertexSet::new()]).unwrap();
        for k in 0..3 {
            assert!(!unhittable.has_hitting_set_of_size(k));
        }
    }

    #[test]
    fn transversals_of_the_path() {
        let h = Hypergraph::from_named_edges(&[&["a", "b"], &["b", "c"]]);
        let trs: BTreeSet<VertexSet> = h.minimal_transversals().into_iter().collect();
        let expected: BTreeSet<VertexSet> = [vs(&[1]), vs(&[0, 2])].into_iter().collect();
        assert_eq!(trs, expected);
    }

    #[test]
    fn transversal_degenerate_cases() {
        let empty = Hypergraph::new(vec![], vec![]).unwrap();
        assert_eq!(empty.minimal_transversals(), vec![VertexSet::new()]);

        let no_edges = Hypergraph::with_vertices(&["a", "b"], &[]).unwrap();
        assert_eq!(no_edges.minimal_transversals(), vec![VertexSet::new()]);

        let unhittable = Hypergraph::new(vec!["a".into()], vec![VertexSet::new()]).unwrap();
        assert!(unhittable.minimal_transversals().is_empty());
    }

    #[test]
    fn brute_force_agrees_on_small_graphs() {
        let graphs = [
            Hypergraph::from_named_edges(&[&["a", "b"], &["b", "c"]]),
            Hypergraph::from_named_edges(&[&["a"]]),
            Hypergraph::from_named_edges(&[&["a", "b"]]),
            Hypergraph::from_named_edges(&[&["a", "b", "c"], &["c", "d"], &["a", "d"]]),
        ];
        for h in &graphs {
            let fast: BTreeSet<VertexSet> = h.minimal_transversals().into_iter().collect();
            let brute: BTreeSet<VertexSet> = h
                .brute_force_minimal_transversals(DEFAULT_ORACLE_VERTICES)
                .unwrap()
                .into_iter()
                .collect();
            assert_eq!(fast, brute);
        }
        assert_eq!(
            graphs[1].brute_force_minimal_transversals(20).unwrap(),
            vec![vs(&[0])]
        );
        assert_eq!(
            graphs[2].brute_force_minimal_transversals(20).unwrap(),
            vec![vs(&[0]), vs(&[1])]
        );
    }

    #[test]
    fn brute_force_refuses_large_universe() {
        let names: Vec<String> = (0..25).map(|i| format!("v{i}")).collect();
        let h = Hypergraph::new(names, vec![]).unwrap();
        assert!(matches!(
            h.brute_force_minimal_transversals(DEFAULT_ORACLE_VERTICES),
            Err(Error::OracleBound { .. })
        ));
    }

    #[test]
    fn union_tags_every_source() {
        let g0 = Hypergraph::from_named_edges(&[&["a"]]);
        let g1 = Hypergraph::from_named_edges(&[&["a", "b"]]);
        let got: BTreeSet<(VertexSet, usize)> = transversal_union(&[g0, g1])
            .unwrap()
            .into_iter()
            .map(|t| (t.set, t.source))
            .collect();
        let expected: BTreeSet<(VertexSet, usize)> =
            [(vs(&[0]), 0), (vs(&[0]), 1), (vs(&[1]), 1)]
                .into_iter()
                .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn union_of_single_graph_is_its_transversal_family() {
        let g = Hypergraph::from_named_edges(&[&["a", "b"], &["b", "c"]]);
        let got: BTreeSet<(VertexSet, usize)> = transversal_union(std::slice::from_ref(&g))
            .unwrap()
            .into_iter()
            .map(|t| (t.set, t.source))
            .collect();
        let expected: BTreeSet<(VertexSet, usize)> =
            [(vs(&[1]), 0), (vs(&[0, 2]), 0)].into_iter().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn union_handles_unhittable_member() {
        let g0 = Hypergraph::new(vec![], vec![]).unwrap();
        let g1 = Hypergraph::new(vec![], vec![VertexSet::new()]).unwrap();
        let got = transversal_union(&[g0, g1]).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].set, VertexSet::new());
        assert_eq!(got[0].source, 0);
        assert!(matches!(
            transversal_union(&[]),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn text_round_trip_preserves_everything() {
        let h = Hypergraph::with_vertices(
            &["a", "b", "c", "lonely"],
            &[&["a", "b"], &["b", "c"], &[]],
        )
        .unwrap();
        let text = h.to_text();
        let back = Hypergraph::parse_text(&text).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn text_parse_comments_and_appended_vertices() {
        let input = "# a comment\nvertices: a,b\nb,c\na\n";
        let h = Hypergraph::parse_text(input).unwrap();
        assert_eq!(h.vertices(), &["a", "b", "c"]);
        assert_eq!(h.edges(), &[vs(&[1, 2]), vs(&[0])]);

        assert!(Hypergraph::parse_text("a,b\nvertices: a,b\n").is_err());
        assert!(Hypergraph::parse_text("a,,b\n").is_err());
    }

    #[test]
    fn json_round_trip() {
        let h = Hypergraph::with_vertices(&["a", "b", "c"], &[&["a", "b"], &[]]).unwrap();
        let json = h.to_json_string();
        assert_eq!(
            json,
            r#"{"vertices":["a","b","c"],"edges":[["a","b"],[]]}"#
        );
        assert_eq!(Hypergraph::from_json_str(&json).unwrap(), h);

        let bad = r#"{"vertices":["a"],"edges":[["zzz"]]}"#;
        assert!(Hypergraph::from_json_str(bad).is_err());
    }

    #[test]
    fn minimal_transversal_check() {
        let h = Hypergraph::from_named_edges(&[&["a", "b"], &["b", "c"]]);
        assert!(h.is_minimal_transversal(&vs(&[1])).unwrap());
        assert!(h.is_minimal_transversal(&vs(&[0, 2])).unwrap());
        assert!(!h.is_minimal_transversal(&vs(&[0, 1])).unwrap());
        assert!(!h.is_minimal_transversal(&vs(&[0])).unwrap());
    }
}
