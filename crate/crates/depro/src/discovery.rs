//! The detection and discovery operations for the three dependency kinds.
//!
//! Detection decides whether a dependency of a given size exists; discovery
//! enumerates all minimal (for unique column combinations and functional
//! dependencies) or maximal (for inclusion dependencies) solutions.
//!
//! Unique column combinations are the hitting sets of the minimal
//! difference sets, and the left-hand sides of dependencies `X -> a` are
//! the hitting sets of the difference sets punctured at `a`; both detection
//! and enumeration go through those hypergraphs. Identity inclusion
//! dependencies are read off the maximal satisfying assignments of an
//! antimonotone formula built from row agreements; general ones come from a
//! depth-first search over injective column mappings.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::ops::ControlFlow;

use crate::formula::Formula;
use crate::hypergraph::VertexSet;
use crate::relation::{AttrSet, Fd, Ind, Relation};
use crate::{Error, Result};

/// Is there a unique column combination with exactly `k` attributes?
pub fn detect_ucc(rel: &Relation, k: usize) -> bool {
    rel.minimal_difference_sets().has_hitting_set_of_size(k)
}

/// Is there a set of exactly `k` attributes, avoiding `rhs`, that
/// functionally determines `rhs`?
pub fn detect_fd_fixed(rel: &Relation, rhs: u32, k: usize) -> Result<bool> {
    Ok(rel.punctured_difference_sets(rhs)?.has_hitting_set_of_size(k))
}

/// Is there a valid, non-trivial functional dependency of size exactly `k`
/// with any right-hand side?
pub fn detect_fd(rel: &Relation, k: usize) -> bool {
    (0..rel.attr_count() as u32)
        .any(|rhs| detect_fd_fixed(rel, rhs, k).expect("rhs index in range"))
}

/// Is there an identity inclusion dependency with exactly `k` attributes?
/// The schemas must be equal.
pub fn detect_ind_identity(r: &Relation, s: &Relation, k: usize) -> Result<bool> {
    if r.schema() != s.schema() {
        return Err(Error::InvalidInput(
            "identity inclusion requires equal schemas".into(),
        ));
    }
    let n = r.attr_count();
    if k > n {
        return Ok(false);
    }
    let mut chosen: Vec<u32> = Vec::with_capacity(k);
    detect_ind_identity_rec(r, s, 0, k, &mut chosen)
}

fn detect_ind_identity_rec(
    r: &Relation,
    s: &Relation,
    next: u32,
    remaining: usize,
    chosen: &mut Vec<u32>,
) -> Result<bool> {
    if remaining == 0 {
        let set: AttrSet = chosen.iter().copied().collect();
        return r.is_ind(s, &Ind::identity(&set));
    }
    let n = r.attr_count() as u32;
    if n - next < remaining as u32 {
        return Ok(false);
    }
    for a in next..n {
        chosen.push(a);
        if detect_ind_identity_rec(r, s, a + 1, remaining - 1, chosen)? {
            chosen.pop();
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}

/// Is there an inclusion dependency of exactly `k` attributes under some
/// injective column mapping?
pub fn detect_ind(r: &Relation, s: &Relation, k: usize) -> Result<bool> {
    if k > r.attr_count().min(s.attr_count()) {
        return Ok(false);
    }
    let mut pairs: BTreeMap<u32, u32> = BTreeMap::new();
    detect_ind_rec(r, s, 0, k, &mut pairs)
}

fn detect_ind_rec(
    r: &Relation,
    s: &Relation,
    next: u32,
    remaining: usize,
    pairs: &mut BTreeMap<u32, u32>,
) -> Result<bool> {
    if remaining == 0 {
        let ind = Ind::new(pairs.clone()).expect("search keeps the map injective");
        return r.is_ind(s, &ind);
    }
    let n = r.attr_count() as u32;
    if n - next < remaining as u32 {
        return Ok(false);
    }
    for a in next..n {
        for b in 0..s.attr_count() as u32 {
            if pairs.values().any(|&img| img == b) {
                continue;
            }
            pairs.insert(a, b);
            if detect_ind_rec(r, s, a + 1, remaining - 1, pairs)? {
                pairs.remove(&a);
                return Ok(true);
            }
            pairs.remove(&a);
        }
    }
    Ok(false)
}

/// Streams the minimal unique column combinations in the transversal
/// enumerator's deterministic order.
pub fn visit_minimal_uccs(rel: &Relation, sink: &mut dyn FnMut(&AttrSet) -> ControlFlow<()>) {
    rel.minimal_difference_sets().visit_minimal_transversals(sink)
}

pub fn minimal_uccs(rel: &Relation) -> Vec<AttrSet> {
    rel.minimal_difference_sets().minimal_transversals()
}

/// Streams the minimal, valid, non-trivial dependencies with right-hand
/// side `rhs`: the minimal transversals of the punctured difference sets,
/// re-indexed into the full schema. `{} -> rhs` is emitted when the column
/// is constant.
pub fn visit_minimal_fds_fixed(
    rel: &Relation,
    rhs: u32,
    sink: &mut dyn FnMut(&Fd) -> ControlFlow<()>,
) -> Result<()> {
    let punctured = rel.punctured_difference_sets(rhs)?;
    let unpuncture = |v: u32| if v < rhs { v } else { v + 1 };
    punctured.visit_minimal_transversals(&mut |t: &VertexSet| {
        let lhs: AttrSet = t.iter().map(|&v| unpuncture(v)).collect();
        sink(&Fd::new(lhs, rhs))
    });
    Ok(())
}

pub fn minimal_fds_fixed(rel: &Relation, rhs: u32) -> Result<Vec<Fd>> {
    let mut out = Vec::new();
    visit_minimal_fds_fixed(rel, rhs, &mut |fd| {
        out.push(fd.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Streams all minimal, valid, non-trivial functional dependencies: the
/// tagged union of the transversal families of the punctured difference-set
/// hypergraphs, one per right-hand side, translated back to dependencies.
pub fn visit_minimal_fds(rel: &Relation, sink: &mut dyn FnMut(&Fd) -> ControlFlow<()>) {
    for rhs in 0..rel.attr_count() as u32 {
        let mut stopped = false;
        visit_minimal_fds_fixed(rel, rhs, &mut |fd| {
            let flow = sink(fd);
            if flow.is_break() {
                stopped = true;
            }
            flow
        })
        .expect("rhs index in range");
        if stopped {
            return;
        }
    }
}

pub fn minimal_fds(rel: &Relation) -> Vec<Fd> {
    let mut out = Vec::new();
    visit_minimal_fds(rel, &mut |fd| {
        out.push(fd.clone());
        ControlFlow::Continue(())
    });
    out
}

/// The antimonotone 3-normalized formula whose satisfying assignments are
/// exactly the identity inclusion dependencies of `(r, s)`: one variable
/// per attribute, one block per row of `r`, one term per row of `s` listing
/// the attributes on which the two rows disagree.
pub fn ind_identity_formula(r: &Relation, s: &Relation) -> Result<Formula> {
    if r.schema() != s.schema() {
        return Err(Error::InvalidInput(
            "identity inclusion requires equal schemas".into(),
        ));
    }
    let blocks: Vec<Vec<VertexSet>> = r
        .rows()
        .iter()
        .map(|r_row| {
            s.rows()
                .iter()
                .map(|s_row| {
                    (0..r.attr_count() as u32)
                        .filter(|&a| r_row[a as usize] != s_row[a as usize])
                        .collect()
                })
                .collect()
        })
        .collect();
    Formula::antimonotone(r.schema().to_vec(), blocks)
}

/// All maximal identity inclusion dependencies, computed as the maximal
/// satisfying assignments of [`ind_identity_formula`], sorted
/// lexicographically by attribute index.
pub fn maximal_inds_identity(r: &Relation, s: &Relation) -> Result<Vec<AttrSet>> {
    let phi = ind_identity_formula(r, s)?;
    phi.maximal_satisfying_assignments()
}

/// All maximal inclusion dependencies under arbitrary injective mappings.
///
/// Depth-first search over partial injective mappings in attribute order,
/// pruning any partial mapping some row of `r` already violates against
/// every row of `s`; the collected dependencies are then filtered for
/// maximality under the restriction order and sorted by their pair lists.
/// Note that two maximal dependencies may have nested attribute sets when
/// their mappings differ.
pub fn maximal_inds(r: &Relation, s: &Relation) -> Result<Vec<Ind>> {
    let root_alive: Vec<Vec<usize>> = r
        .rows()
        .iter()
        .map(|_| (0..s.row_count()).collect())
        .collect();
    if r.row_count() > 0 && s.row_count() == 0 {
        // No row of `r` can ever find a witness, not even for the empty
        // dependency.
        return Ok(Vec::new());
    }
    let mut valid: Vec<BTreeMap<u32, u32>> = Vec::new();
    let mut pairs = BTreeMap::new();
    search_inds(r, s, 0, &root_alive, &mut pairs, &mut valid);
    let lookup: BTreeSet<&BTreeMap<u32, u32>> = valid.iter().collect();
    let mut out: Vec<Ind> = Vec::new();
    for found in &valid {
        let mut extendable = false;
        'ext: for a in 0..r.attr_count() as u32 {
            if found.contains_key(&a) {
                continue;
            }
            for b in 0..s.attr_count() as u32 {
                if found.values().any(|&img| img == b) {
                    continue;
                }
                let mut bigger = found.clone();
                bigger.insert(a, b);
                if lookup.contains(&bigger) {
                    extendable = true;
                    break 'ext;
                }
            }
        }
        if !extendable {
            out.push(Ind::new(found.clone()).expect("search keeps the map injective"));
        }
    }
    out.sort();
    Ok(out)
}

fn search_inds(
    r: &Relation,
    s: &Relation,
    next: u32,
    alive: &[Vec<usize>],
    pairs: &mut BTreeMap<u32, u32>,
    valid: &mut Vec<BTreeMap<u32, u32>>,
) {
    valid.push(pairs.clone());
    for a in next..r.attr_count() as u32 {
        for b in 0..s.attr_count() as u32 {
            if pairs.values().any(|&img| img == b) {
                continue;
            }
            // Keep, per row of r, only the s-rows that still agree after
            // adding the pair (a, b); prune when some row runs dry.
            let narrowed: Option<Vec<Vec<usize>>> = r
                .rows()
                .iter()
                .enumerate()
                .map(|(i, r_row)| {
                    let keep: Vec<usize> = alive[i]
                        .iter()
                        .copied()
                        .filter(|&m| r_row[a as usize] == s.rows()[m][b as usize])
                        .collect();
                    if keep.is_empty() {
                        None
                    } else {
                        Some(keep)
                    }
                })
                .collect();
            if let Some(narrowed) = narrowed {
                pairs.insert(a, b);
                search_inds(r, s, a + 1, &narrowed, pairs, valid);
                pairs.remove(&a);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::relation::relation_from;

    fn attrs(vals: &[u32]) -> AttrSet {
        vals.iter().copied().collect()
    }

    #[test]
    fn detect_ucc_examples() {
        let r = relation_from(
            &["a", "b", "c"],
            &[&["0", "0", "0"], &["1", "1", "0"], &["0", "2", "2"]],
        );
        assert!(detect_ucc(&r, 1));
        assert!(!detect_ucc(&r, 0));

        let single = relation_from(&["a"], &[&["x"]]);
        assert!(detect_ucc(&single, 0));
    }

    #[test]
    fn detect_fd_fixed_examples() {
        let r = relation_from(&["a", "b"], &[&["0", "0"], &["1", "1"]]);
        assert!(detect_fd_fixed(&r, 1, 1).unwrap());

        let r = relation_from(&["a", "b"], &[&["0", "0"], &["1", "0"], &["0", "1"]]);
        assert!(!detect_fd_fixed(&r, 0, 1).unwrap());

        let r = relation_from(&["a", "b"], &[&["0", "0"], &["1", "0"]]);
        assert!(detect_fd_fixed(&r, 1, 0).unwrap());
        assert!(detect_fd_fixed(&r, 9, 0).is_err());
    }

    #[test]
    fn detect_fd_examples() {
        let r = relation_from(&["a", "b"], &[&["0", "0"], &["1", "0"]]);
        assert!(detect_fd(&r, 0));

        let r = relation_from(&["a", "b"], &[&["0", "0"], &["1", "1"]]);
        assert!(detect_fd(&r, 1));

        let grid = relation_from(
            &["a", "b"],
            &[&["0", "0"], &["0", "1"], &["1", "0"], &["1", "1"]],
        );
        assert!(!detect_fd(&grid, 1));
    }

    #[test]
    fn detect_ind_examples() {
        let r = relation_from(&["a", "b"], &[&["0", "1"]]);
        let s = relation_from(&["a", "b"], &[&["0", "2"], &["5", "1"]]);
        assert!(detect_ind_identity(&r, &s, 1).unwrap());
        assert!(!detect_ind_identity(&r, &s, 2).unwrap());
        assert!(detect_ind_identity(&r, &s, 0).unwrap());
        assert!(detect_ind(&r, &s, 0).unwrap());

        let r1 = relation_from(&["a"], &[&["7"]]);
        let s1 = relation_from(&["b"], &[&["7"]]);
        assert!(detect_ind(&r1, &s1, 1).unwrap());
        assert!(detect_ind_identity(&r1, &s1, 1).is_err());
    }

    #[test]
    fn enumerate_uccs_examples() {
        let r = relation_from(
            &["a", "b", "c"],
            &[&["0", "0", "0"], &["1", "1", "0"], &["0", "2", "2"]],
        );
        let got: BTreeSet<AttrSet> = minimal_uccs(&r).into_iter().collect();
        let expected: BTreeSet<AttrSet> = [attrs(&[1]), attrs(&[0, 2])].into_iter().collect();
        assert_eq!(got, expected);

        let single = relation_from(&["a"], &[&["x"]]);
        assert_eq!(minimal_uccs(&single), vec![AttrSet::new()]);
    }

    #[test]
    fn two_ambiguous_columns_need_the_pair() {
        // Both columns repeat values but the pairs are distinct, so the two
        // columns together are the only minimal unique combination.
        let r = relation_from(
            &["name", "code"],
            &[&["doe", "w1"], &["doe", "e2"], &["roe", "w1"]],
        );
        assert_eq!(minimal_uccs(&r), vec![attrs(&[0, 1])]);
    }

    #[test]
    fn enumerate_fds_examples() {
        let r = relation_from(&["a", "b"], &[&["0", "0"], &["1", "0"]]);
        assert_eq!(minimal_fds(&r), vec![Fd::new(attrs(&[]), 1)]);

        let r = relation_from(&["a", "b"], &[&["0", "0"], &["1", "1"]]);
        let got: BTreeSet<Fd> = minimal_fds(&r).into_iter().collect();
        let expected: BTreeSet<Fd> =
            [Fd::new(attrs(&[1]), 0), Fd::new(attrs(&[0]), 1)].into_iter().collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn non_minimal_lhs_is_not_emitted() {
        // c is constant per value of b, so b -> c holds and {a,b} -> c is
        // valid but not minimal.
        let r = relation_from(
            &["a", "b", "c"],
            &[&["0", "0", "0"], &["1", "0", "0"], &["0", "1", "1"]],
        );
        let fds = minimal_fds(&r);
        assert!(fds.contains(&Fd::new(attrs(&[1]), 2)));
        assert!(!fds.contains(&Fd::new(attrs(&[0, 1]), 2)));
        assert!(r.is_valid_fd(&Fd::new(attrs(&[0, 1]), 2)).unwrap());
    }

    #[test]
    fn identity_ind_enumeration() {
        let r = relation_from(&["a", "b"], &[&["0", "1"]]);
        let s = relation_from(&["a", "b"], &[&["0", "2"], &["5", "1"]]);
        assert_eq!(
            maximal_inds_identity(&r, &s).unwrap(),
            vec![attrs(&[0]), attrs(&[1])]
        );

        let empty = Relation::new(vec!["a".into(), "b".into()], vec![]).unwrap();
        assert_eq!(
            maximal_inds_identity(&empty, &s).unwrap(),
            vec![attrs(&[0, 1])]
        );
    }

    #[test]
    fn general_ind_enumeration_matches_oracle() {
        let cases = [
            (
                relation_from(&["a", "b"], &[&["0", "1"]]),
                relation_from(&["x", "y", "z"], &[&["0", "1", "7"], &["2", "0", "1"]]),
            ),
            (
                relation_from(&["a"], &[&["7"]]),
                relation_from(&["b"], &[&["8"]]),
            ),
            (
                relation_from(&["a", "b"], &[&["1", "0"], &["0", "1"]]),
                relation_from(&["c", "d"], &[&["0", "1"], &["1", "0"]]),
            ),
        ];
        for (r, s) in &cases {
            let fast = maximal_inds(r, s).unwrap();
            let brute = oracle::maximal_general_inds(r, s, 7).unwrap();
            assert_eq!(fast, brute);
        }
    }

    #[test]
    fn general_ind_enumeration_on_empty_left() {
        let empty = Relation::new(vec!["a".into(), "b".into()], vec![]).unwrap();
        let s = relation_from(&["x", "y"], &[&["1", "2"]]);
        let got = maximal_inds(&empty, &s).unwrap();
        // Every maximal injection of the two schemas qualifies vacuously.
        assert_eq!(got.len(), 2);
        assert!(got.iter().all(|ind| ind.len() == 2));

        let r = relation_from(&["a"], &[&["1"]]);
        let no_rows = Relation::new(vec!["x".into()], vec![]).unwrap();
        assert!(maximal_inds(&r, &no_rows).unwrap().is_empty());
    }

    #[test]
    fn enumeration_matches_oracles_on_small_tables() {
        let tables = [
            relation_from(&["a"], &[&["0"], &["1"]]),
            relation_from(
                &["a", "b", "c"],
                &[&["0", "0", "1"], &["1", "0", "0"], &["0", "2", "2"], &["1", "2", "2"]],
            ),
            relation_from(&["a", "b"], &[&["0", "0"], &["0", "1"], &["1", "0"], &["1", "1"]]),
        ];
        for rel in &tables {
            let fast: BTreeSet<AttrSet> = minimal_uccs(rel).into_iter().collect();
            let brute: BTreeSet<AttrSet> =
                oracle::minimal_uccs(rel, 7).unwrap().into_iter().collect();
            assert_eq!(fast, brute);

            let fast: BTreeSet<Fd> = minimal_fds(rel).into_iter().collect();
            let brute: BTreeSet<Fd> = oracle::minimal_fds(rel, 7).unwrap().into_iter().collect();
            assert_eq!(fast, brute);
        }
    }

    #[test]
    fn detection_is_consistent_with_enumeration() {
        let rel = relation_from(
            &["a", "b", "c"],
            &[&["0", "0", "1"], &["1", "0", "0"], &["0", "2", "2"]],
        );
        let uccs = minimal_uccs(&rel);
        for k in 0..=4 {
            let expected = k <= rel.attr_count() && uccs.iter().any(|u| u.len() <= k);
            assert_eq!(detect_ucc(&rel, k), expected, "k={k}");
        }
        let fds = minimal_fds(&rel);
        for k in 0..=4 {
            let expected = k < rel.attr_count() && fds.iter().any(|fd| fd.lhs.len() <= k);
            assert_eq!(detect_fd(&rel, k), expected, "k={k}");
        }
    }
}
