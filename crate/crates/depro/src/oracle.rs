//! Exhaustive ground-truth enumerators.
//!
//! Everything here scans full subset or injection spaces and decides
//! membership with the definitional checkers only ([`Relation::is_ucc`],
//! [`Relation::is_valid_fd`], [`Relation::is_ind`], [`Formula::evaluate`]).
//! None of the difference-set, transversal-search, or candidate-product
//! machinery is used, so these results are independent evidence for the
//! fast paths and for gadget verification. Each function refuses instances
//! over its size bound.

use std::collections::BTreeMap;

use crate::formula::{Assignment, Formula};
use crate::hypergraph::{Hypergraph, TaggedTransversal};
use crate::relation::{AttrSet, Fd, Ind, Relation};
use crate::{Error, Result};

fn check_bound(what: &'static str, size: usize, bound: usize) -> Result<()> {
    if size > bound || size >= 63 {
        Err(Error::OracleBound {
            what,
            size,
            bound: bound.min(62),
        })
    } else {
        Ok(())
    }
}

fn mask_to_set(mask: u64, n: usize) -> AttrSet {
    (0..n as u32).filter(|&v| mask & (1 << v) != 0).collect()
}

/// All minimal unique column combinations, by testing every attribute
/// subset.
pub fn minimal_uccs(rel: &Relation, max_attrs: usize) -> Result<Vec<AttrSet>> {
    let n = rel.attr_count();
    check_bound("relation attributes", n, max_attrs)?;
    let is_ucc = |mask: u64| rel.is_ucc(&mask_to_set(mask, n)).expect("indices in range");
    let mut out = Vec::new();
    for mask in 0..(1u64 << n) {
        if !is_ucc(mask) {
            continue;
        }
        let minimal = (0..n).all(|v| mask & (1 << v) == 0 || !is_ucc(mask & !(1 << v)));
        if minimal {
            out.push(mask_to_set(mask, n));
        }
    }
    out.sort();
    Ok(out)
}

/// The left-hand sides of all minimal, valid, non-trivial dependencies with
/// the given right-hand side, by testing every subset of the remaining
/// attributes.
pub fn minimal_fd_lhs_fixed(rel: &Relation, rhs: u32, max_attrs: usize) -> Result<Vec<AttrSet>> {
    let n = rel.attr_count();
    check_bound("relation attributes", n, max_attrs)?;
    if rhs as usize >= n {
        return Err(Error::InvalidInput(format!(
            "attribute index {rhs} out of range"
        )));
    }
    let others: Vec<u32> = (0..n as u32).filter(|&a| a != rhs).collect();
    let lhs_of = |mask: u64| -> AttrSet {
        others
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &a)| a)
            .collect()
    };
    let valid = |mask: u64| {
        rel.is_valid_fd(&Fd::new(lhs_of(mask), rhs))
            .expect("indices in range")
    };
    let mut out = Vec::new();
    for mask in 0..(1u64 << others.len()) {
        if !valid(mask) {
            continue;
        }
        let minimal =
            (0..others.len()).all(|i| mask & (1 << i) == 0 || !valid(mask & !(1 << i)));
        if minimal {
            out.push(lhs_of(mask));
        }
    }
    out.sort();
    Ok(out)
}

/// All minimal, valid, non-trivial functional dependencies, across every
/// right-hand side.
pub fn minimal_fds(rel: &Relation, max_attrs: usize) -> Result<Vec<Fd>> {
    let mut out = Vec::new();
    for rhs in 0..rel.attr_count() as u32 {
        for lhs in minimal_fd_lhs_fixed(rel, rhs, max_attrs)? {
            out.push(Fd::new(lhs, rhs));
        }
    }
    out.sort();
    Ok(out)
}

/// True iff some valid, non-trivial dependency has a left-hand side of size
/// exactly `k`. Valid dependencies are upward closed in the left-hand side,
/// so this holds iff some minimal dependency fits under `k` and `k` leaves
/// room for a right-hand side.
pub fn has_fd_of_size(rel: &Relation, k: usize, max_attrs: usize) -> Result<bool> {
    if k + 1 > rel.attr_count() {
        return Ok(false);
    }
    Ok(minimal_fds(rel, max_attrs)?.iter().any(|fd| fd.lhs.len() <= k))
}

/// All maximal identity inclusion dependencies between two tables over the
/// same schema, by testing every attribute subset.
pub fn maximal_identity_inds(
    r: &Relation,
    s: &Relation,
    max_attrs: usize,
) -> Result<Vec<AttrSet>> {
    if r.schema() != s.schema() {
        return Err(Error::InvalidInput(
            "identity inclusion requires equal schemas".into(),
        ));
    }
    let n = r.attr_count();
    check_bound("relation attributes", n, max_attrs)?;
    let valid = |mask: u64| {
        r.is_ind(s, &Ind::identity(&mask_to_set(mask, n)))
            .expect("indices in range")
    };
    let mut out = Vec::new();
    for mask in 0..(1u64 << n) {
        if !valid(mask) {
            continue;
        }
        let maximal = (0..n).all(|v| mask & (1 << v) != 0 || !valid(mask | (1 << v)));
        if maximal {
            out.push(mask_to_set(mask, n));
        }
    }
    out.sort();
    Ok(out)
}

/// The identity-inclusion indicator: entry `m` is true iff the attribute
/// subset with characteristic mask `m` is an inclusion dependency.
pub fn identity_ind_indicator(r: &Relation, s: &Relation, max_attrs: usize) -> Result<Vec<bool>> {
    if r.schema() != s.schema() {
        return Err(Error::InvalidInput(
            "identity inclusion requires equal schemas".into(),
        ));
    }
    let n = r.attr_count();
    check_bound("relation attributes", n, max_attrs)?;
    (0..(1u64 << n))
        .map(|mask| r.is_ind(s, &Ind::identity(&mask_to_set(mask, n))))
        .collect()
}

/// The satisfaction indicator of a formula: entry `m` is true iff the
/// assignment with characteristic mask `m` satisfies it.
pub fn formula_indicator(phi: &Formula, max_vars: usize) -> Result<Vec<bool>> {
    let n = phi.variable_count();
    check_bound("formula variables", n, max_vars)?;
    (0..(1u64 << n))
        .map(|mask| phi.evaluate(&mask_to_set(mask, n)))
        .collect()
}

/// All maximal satisfying assignments, by scanning all `2^n` assignments.
pub fn maximal_satisfying_assignments(
    phi: &Formula,
    max_vars: usize,
) -> Result<Vec<Assignment>> {
    let n = phi.variable_count();
    let indicator = formula_indicator(phi, max_vars)?;
    let mut out = Vec::new();
    for mask in 0..(1u64 << n) {
        if !indicator[mask as usize] {
            continue;
        }
        let maximal =
            (0..n).all(|v| mask & (1 << v) != 0 || !indicator[(mask | (1 << v)) as usize]);
        if maximal {
            out.push(mask_to_set(mask, n));
        }
    }
    out.sort();
    Ok(out)
}

/// All maximal inclusion dependencies with arbitrary injective column
/// mappings, by enumerating every injective partial map. A dependency is
/// maximal when no single extra column pair keeps it valid.
pub fn maximal_general_inds(r: &Relation, s: &Relation, max_attrs: usize) -> Result<Vec<Ind>> {
    check_bound("relation attributes", r.attr_count().max(s.attr_count()), max_attrs)?;
    let mut valid_maps: Vec<BTreeMap<u32, u32>> = Vec::new();
    let mut current: BTreeMap<u32, u32> = BTreeMap::new();
    collect_injections(r, s, 0, &mut current, &mut valid_maps)?;
    let lookup: std::collections::BTreeSet<&BTreeMap<u32, u32>> = valid_maps.iter().collect();
    let mut out = Vec::new();
    for pairs in &valid_maps {
        let mut extendable = false;
        'ext: for a in 0..r.attr_count() as u32 {
            if pairs.contains_key(&a) {
                continue;
            }
            for b in 0..s.attr_count() as u32 {
                if pairs.values().any(|&img| img == b) {
                    continue;
                }
                let mut bigger = pairs.clone();
                bigger.insert(a, b);
                if lookup.contains(&bigger) {
                    extendable = true;
                    break 'ext;
                }
            }
        }
        if !extendable {
            out.push(Ind::new(pairs.clone()).expect("construction preserves injectivity"));
        }
    }
    out.sort();
    Ok(out)
}

fn collect_injections(
    r: &Relation,
    s: &Relation,
    next: u32,
    current: &mut BTreeMap<u32, u32>,
    out: &mut Vec<BTreeMap<u32, u32>>,
) -> Result<()> {
    let ind = Ind::new(current.clone()).expect("search keeps the map injective");
    if !r.is_ind(s, &ind)? {
        return Ok(());
    }
    out.push(current.clone());
    for a in next..r.attr_count() as u32 {
        for b in 0..s.attr_count() as u32 {
            if current.values().any(|&img| img == b) {
                continue;
            }
            current.insert(a, b);
            collect_injections(r, s, a + 1, current, out)?;
            current.remove(&a);
        }
    }
    Ok(())
}

/// The tagged disjoint union of transversal families, each member computed
/// by the exhaustive subset scan.
pub fn tagged_transversal_union(
    graphs: &[Hypergraph],
    max_vertices: usize,
) -> Result<Vec<TaggedTransversal>> {
    let universe = crate::hypergraph::union_universe(graphs)?;
    let mut out = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        let padded = g.padded_to(&universe)?;
        for set in padded.brute_force_minimal_transversals(max_vertices)? {
            out.push(TaggedTransversal { set, source: i });
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::relation_from;

    fn attrs(vals: &[u32]) -> AttrSet {
        vals.iter().copied().collect()
    }

    #[test]
    fn ucc_oracle_on_the_three_row_table() {
        let r = relation_from(
            &["a", "b", "c"],
            &[&["0", "0", "0"], &["1", "1", "0"], &["0", "2", "2"]],
        );
        assert_eq!(
            minimal_uccs(&r, 7).unwrap(),
            vec![attrs(&[0, 2]), attrs(&[1])]
        );
    }

    #[test]
    fn fd_oracle_small_cases() {
        let r = relation_from(&["a", "b"], &[&["0", "0"], &["1", "0"]]);
        assert_eq!(
            minimal_fds(&r, 7).unwrap(),
            vec![Fd::new(attrs(&[]), 1)]
        );

        let r = relation_from(&["a", "b"], &[&["0", "0"], &["1", "1"]]);
        assert_eq!(
            minimal_fds(&r, 7).unwrap(),
            vec![Fd::new(attrs(&[0]), 1), Fd::new(attrs(&[1]), 0)]
        );

        assert!(has_fd_of_size(&r, 1, 7).unwrap());
        assert!(!has_fd_of_size(&r, 0, 7).unwrap());
        assert!(!has_fd_of_size(&r, 2, 7).unwrap());
    }

    #[test]
    fn identity_ind_oracle() {
        let r = relation_from(&["a", "b"], &[&["0", "1"]]);
        let s = relation_from(&["a", "b"], &[&["0", "2"], &["5", "1"]]);
        assert_eq!(
            maximal_identity_inds(&r, &s, 7).unwrap(),
            vec![attrs(&[0]), attrs(&[1])]
        );
        let ind = identity_ind_indicator(&r, &s, 7).unwrap();
        assert_eq!(ind, vec![true, true, true, false]);
    }

    #[test]
    fn general_ind_oracle() {
        let r = relation_from(&["a"], &[&["7"]]);
        let s = relation_from(&["b"], &[&["7"]]);
        let maximal = maximal_general_inds(&r, &s, 7).unwrap();
        assert_eq!(maximal.len(), 1);
        assert_eq!(maximal[0].pairs().iter().collect::<Vec<_>>(), vec![(&0, &0)]);

        // With no rows on the left, every maximal injection qualifies.
        let empty = Relation::new(vec!["a".into(), "b".into()], vec![]).unwrap();
        let s2 = relation_from(&["x", "y"], &[&["1", "2"]]);
        let maximal = maximal_general_inds(&empty, &s2, 7).unwrap();
        assert_eq!(maximal.len(), 2);
        assert!(maximal.iter().all(|ind| ind.len() == 2));
    }

    #[test]
    fn assignment_oracle_matches_fast_path() {
        let phi = Formula::parse_text(
            "((!x1 & !x2 & !x4) | (!x3 & !x4)) & ((!x1 & !x3) | (!x2 & !x5) | (!x1 & !x4 & !x5))",
        )
        .unwrap();
        let brute = maximal_satisfying_assignments(&phi, 12).unwrap();
        let fast = phi.maximal_satisfying_assignments().unwrap();
        assert_eq!(brute, fast);
    }

    #[test]
    fn oracle_bounds_refuse() {
        let schema: Vec<String> = (0..9).map(|i| format!("c{i}")).collect();
        let r = Relation::new(schema, vec![]).unwrap();
        assert!(matches!(
            minimal_uccs(&r, 7),
            Err(Error::OracleBound { .. })
        ));
    }
}
