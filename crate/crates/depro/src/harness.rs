//! Gadget verification and random instance generation.
//!
//! [`verify_gadget`] checks, by exhaustive enumeration on both sides, that
//! a gadget maps solution sets bijectively: it enumerates the source
//! solutions and the target solutions with the ground-truth oracles,
//! translates every target solution back, and checks validity of every
//! image, injectivity, and count equality. The two decision gadgets are
//! checked budget-for-budget instead: a size-`k` solution exists on the
//! source side iff a size-`parameter_map(k)` assignment satisfies the
//! target formula, for every budget in range.
//!
//! The fast enumerators are never consulted here; the oracles are the only
//! ground truth, so gadget verification cannot be circular.
//!
//! [`apply_mutated`] ships one deliberately broken variant per gadget.
//! Verification must reject each of them on a suitable instance; that
//! sensitivity check is what makes a green verification run meaningful.

use std::collections::BTreeSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::formula::Formula;
use crate::hypergraph::{union_universe, Hypergraph, VertexSet};
use crate::oracle;
use crate::reduce::{Gadget, Instance, Solution};
use crate::relation::Relation;
use crate::{Error, Result};

/// Size ceilings for the exhaustive oracles.
#[derive(Clone, Copy, Debug)]
pub struct OracleBounds {
    pub max_vertices: usize,
    pub max_variables: usize,
    pub max_attributes: usize,
    pub max_rows: usize,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            max_vertices: 20,
            max_variables: 12,
            max_attributes: 7,
            max_rows: 10,
        }
    }
}

/// Outcome of verifying one gadget on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub gadget: String,
    /// SHA-256 of the canonical JSON encoding of the source instance.
    pub instance_digest: String,
    /// Solutions on the source side; for decision gadgets, the number of
    /// budgets answered positively.
    pub source_count: usize,
    pub target_count: usize,
    pub bijection_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<Mismatch>,
}

/// The first failure found, kept as a witness.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mismatch {
    CountMismatch,
    /// A target solution translated to something that is not a source
    /// solution.
    InvalidImage { target: Solution, image: Solution },
    /// Two target solutions translated to the same source solution.
    DuplicateImage { first: Solution, second: Solution },
    /// A target solution the gadget could not translate at all.
    Untranslatable { target: Solution, reason: String },
    /// A budget on which the two sides of a decision gadget disagree.
    BudgetDisagreement {
        budget: usize,
        source: bool,
        target: bool,
    },
}

pub fn instance_digest(instance: &Instance) -> String {
    let json = serde_json::to_string(instance).expect("instances serialize");
    let mut hasher = Sha256::new();
    hasher.update(json.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Refuses source instances the exhaustive enumerations should not be run
/// on. Derived (target) instances are polynomially larger and are not
/// re-checked.
fn check_instance_size(instance: &Instance, bounds: &OracleBounds) -> Result<()> {
    let check_relation = |rel: &Relation| -> Result<()> {
        if rel.attr_count() > bounds.max_attributes {
            return Err(Error::OracleBound {
                what: "relation attributes",
                size: rel.attr_count(),
                bound: bounds.max_attributes,
            });
        }
        if rel.row_count() > bounds.max_rows {
            return Err(Error::OracleBound {
                what: "relation rows",
                size: rel.row_count(),
                bound: bounds.max_rows,
            });
        }
        Ok(())
    };
    let check_graph = |h: &Hypergraph| -> Result<()> {
        if h.vertex_count() > bounds.max_vertices {
            return Err(Error::OracleBound {
                what: "hypergraph universe",
                size: h.vertex_count(),
                bound: bounds.max_vertices,
            });
        }
        Ok(())
    };
    match instance {
        Instance::Hypergraph(h) => check_graph(h),
        Instance::HypergraphList(graphs) => graphs.iter().try_for_each(check_graph),
        Instance::Relation(rel) => check_relation(rel),
        Instance::RelationWithRhs { relation, .. } => check_relation(relation),
        Instance::RelationPair { left, right } => {
            check_relation(left)?;
            check_relation(right)
        }
        Instance::RelationQuad {
            left1,
            right1,
            left2,
            right2,
        } => {
            check_relation(left1)?;
            check_relation(right1)?;
            check_relation(left2)?;
            check_relation(right2)
        }
        Instance::Formula(phi) => {
            if phi.variable_count() > bounds.max_variables {
                return Err(Error::OracleBound {
                    what: "formula variables",
                    size: phi.variable_count(),
                    bound: bounds.max_variables,
                });
            }
            Ok(())
        }
    }
}

/// Runs the gadget forward and verifies the solution correspondence against
/// the oracles. Errors are refusals (oracle bounds) or malformed instances,
/// not verification failures; failures come back as a report with
/// `bijection_ok == false` and a witness.
pub fn verify_gadget(
    gadget: Gadget,
    instance: &Instance,
    bounds: &OracleBounds,
) -> Result<VerificationReport> {
    check_instance_size(instance, bounds)?;
    let target = gadget.apply(instance)?;
    verify_against(gadget, instance, &target, bounds)
}

/// Like [`verify_gadget`], but runs the documented broken variant of the
/// forward transformation; used to confirm the harness rejects it.
pub fn verify_mutated(
    gadget: Gadget,
    instance: &Instance,
    bounds: &OracleBounds,
) -> Result<VerificationReport> {
    check_instance_size(instance, bounds)?;
    let target = apply_mutated(gadget, instance)?;
    verify_against(gadget, instance, &target, bounds)
}

fn verify_against(
    gadget: Gadget,
    source: &Instance,
    target: &Instance,
    bounds: &OracleBounds,
) -> Result<VerificationReport> {
    if gadget.is_decision() {
        return verify_decision(gadget, source, target, bounds);
    }
    let source_solutions = source_solutions(gadget, source, bounds)?;
    let target_solutions = target_solutions(gadget, target, bounds)?;
    let source_set: BTreeSet<&Solution> = source_solutions.iter().collect();

    let mut mismatch = None;
    let mut seen: std::collections::BTreeMap<Solution, Solution> = Default::default();
    for sol in &target_solutions {
        let image = match gadget.solution_back(source, sol) {
            Ok(image) => image,
            Err(err) => {
                mismatch = Some(Mismatch::Untranslatable {
                    target: sol.clone(),
                    reason: err.to_string(),
                });
                break;
            }
        };
        if !source_set.contains(&image) {
            mismatch = Some(Mismatch::InvalidImage {
                target: sol.clone(),
                image,
            });
            break;
        }
        if let Some(prev) = seen.insert(image, sol.clone()) {
            mismatch = Some(Mismatch::DuplicateImage {
                first: prev,
                second: sol.clone(),
            });
            break;
        }
    }
    if mismatch.is_none() && source_solutions.len() != target_solutions.len() {
        mismatch = Some(Mismatch::CountMismatch);
    }
    Ok(VerificationReport {
        gadget: gadget.name().to_string(),
        instance_digest: instance_digest(source),
        source_count: source_solutions.len(),
        target_count: target_solutions.len(),
        bijection_ok: mismatch.is_none(),
        mismatch,
    })
}

fn verify_decision(
    gadget: Gadget,
    source: &Instance,
    target: &Instance,
    bounds: &OracleBounds,
) -> Result<VerificationReport> {
    let phi = match target {
        Instance::Formula(phi) => phi,
        _ => {
            return Err(Error::InvalidInput(
                "decision gadgets produce formulas".into(),
            ))
        }
    };
    let budgets: Vec<usize>;
    let source_answers: Vec<bool> = match (gadget, source) {
        (Gadget::FdToCnf, Instance::Relation(rel)) => {
            budgets = (0..=rel.attr_count()).collect();
            budgets
                .iter()
                .map(|&k| oracle::has_fd_of_size(rel, k, bounds.max_attributes))
                .collect::<Result<_>>()?
        }
        (Gadget::IndToWa3ns, Instance::RelationPair { left, right }) => {
            budgets = (0..=(left.attr_count().min(right.attr_count()) + 1)).collect();
            let maximal = oracle::maximal_general_inds(left, right, bounds.max_attributes)?;
            let largest = maximal.iter().map(|ind| ind.len()).max();
            budgets
                .iter()
                .map(|&k| largest.is_some_and(|m| k <= m))
                .collect()
        }
        _ => {
            return Err(Error::InvalidInput(
                "decision gadget applied to the wrong instance shape".into(),
            ))
        }
    };
    let mut mismatch = None;
    let mut source_count = 0usize;
    let mut target_count = 0usize;
    for (&k, &src) in budgets.iter().zip(&source_answers) {
        let tgt = phi.weighted_sat(gadget.parameter_map(k), bounds.max_variables)?;
        source_count += src as usize;
        target_count += tgt as usize;
        if src != tgt && mismatch.is_none() {
            mismatch = Some(Mismatch::BudgetDisagreement {
                budget: k,
                source: src,
                target: tgt,
            });
        }
    }
    Ok(VerificationReport {
        gadget: gadget.name().to_string(),
        instance_digest: instance_digest(source),
        source_count,
        target_count,
        bijection_ok: mismatch.is_none(),
        mismatch,
    })
}

/// Solutions compare across instances whose universes are ordered
/// differently, so name lists are canonicalized by sorting.
fn sorted_names(mut names: Vec<String>) -> Vec<String> {
    names.sort();
    names
}

fn set_solution_names(names: &[String], set: &VertexSet) -> Solution {
    Solution::Set {
        items: sorted_names(set.iter().map(|&v| names[v as usize].clone()).collect()),
    }
}

fn indicator_solutions(names: &[String], indicator: &[bool]) -> Vec<Solution> {
    let n = names.len();
    (0..indicator.len())
        .filter(|&m| indicator[m])
        .map(|m| {
            let set: VertexSet = (0..n as u32).filter(|&v| m & (1 << v) != 0).collect();
            set_solution_names(names, &set)
        })
        .collect()
}

/// Source-side solutions of an enumeration gadget, by oracle.
fn source_solutions(
    gadget: Gadget,
    source: &Instance,
    bounds: &OracleBounds,
) -> Result<Vec<Solution>> {
    match (gadget, source) {
        (Gadget::HsToUcc, Instance::Hypergraph(h)) => Ok(h
            .brute_force_minimal_transversals(bounds.max_vertices)?
            .iter()
            .map(|t| set_solution_names(h.vertices(), t))
            .collect()),
        (Gadget::UccToFdFixed, Instance::Relation(rel)) => {
            Ok(oracle::minimal_uccs(rel, bounds.max_attributes)?
                .iter()
                .map(|u| set_solution_names(rel.schema(), u))
                .collect())
        }
        (Gadget::FdFixedToFd, Instance::RelationWithRhs { relation, rhs }) => {
            let a = relation
                .attr_index(rhs)
                .ok_or_else(|| Error::InvalidInput(format!("unknown attribute '{rhs}'")))?;
            Ok(
                oracle::minimal_fd_lhs_fixed(relation, a, bounds.max_attributes)?
                    .into_iter()
                    .map(|lhs| Solution::Fd {
                        lhs: sorted_names(relation.names_of(&lhs)),
                        rhs: rhs.clone(),
                    })
                    .collect(),
            )
        }
        (Gadget::DbToHypergraphUnion, Instance::Relation(rel)) => {
            Ok(fd_solutions(rel, bounds)?)
        }
        (Gadget::HypergraphUnionToDb, Instance::HypergraphList(graphs)) => {
            tagged_solutions(graphs, bounds)
        }
        (Gadget::IndIdentityToGeneral, Instance::RelationPair { left, right }) => {
            Ok(oracle::maximal_identity_inds(left, right, bounds.max_attributes)?
                .iter()
                .map(|set| set_solution_names(left.schema(), set))
                .collect())
        }
        (Gadget::ConjoinDbPairs, Instance::RelationQuad {
            left1,
            right1,
            left2,
            right2,
        }) => {
            let first = oracle::identity_ind_indicator(left1, right1, bounds.max_attributes)?;
            let second = oracle::identity_ind_indicator(left2, right2, bounds.max_attributes)?;
            let both: Vec<bool> = first
                .iter()
                .zip(&second)
                .map(|(&a, &b)| a && b)
                .collect();
            Ok(indicator_solutions(left1.schema(), &both))
        }
        (Gadget::DnfToDbPair, Instance::Formula(phi)) => {
            let indicator = oracle::formula_indicator(phi, bounds.max_variables)?;
            Ok(indicator_solutions(phi.variables(), &indicator))
        }
        (Gadget::Wa3nsToIndIdentity, Instance::Formula(phi)) => {
            Ok(oracle::maximal_satisfying_assignments(phi, bounds.max_variables)?
                .iter()
                .map(|a| set_solution_names(phi.variables(), a))
                .collect())
        }
        _ => Err(Error::InvalidInput(format!(
            "gadget {} cannot read a {} instance",
            gadget.name(),
            source.kind()
        ))),
    }
}

/// Target-side solutions of an enumeration gadget, by oracle.
fn target_solutions(
    gadget: Gadget,
    target: &Instance,
    bounds: &OracleBounds,
) -> Result<Vec<Solution>> {
    match (gadget, target) {
        (Gadget::HsToUcc, Instance::Relation(rel)) => {
            Ok(oracle::minimal_uccs(rel, bounds.max_attributes)?
                .iter()
                .map(|u| set_solution_names(rel.schema(), u))
                .collect())
        }
        (Gadget::UccToFdFixed, Instance::RelationWithRhs { relation, rhs }) => {
            let a = relation
                .attr_index(rhs)
                .ok_or_else(|| Error::InvalidInput(format!("unknown attribute '{rhs}'")))?;
            Ok(
                oracle::minimal_fd_lhs_fixed(relation, a, bounds.max_attributes)?
                    .into_iter()
                    .map(|lhs| Solution::Fd {
                        lhs: sorted_names(relation.names_of(&lhs)),
                        rhs: rhs.clone(),
                    })
                    .collect(),
            )
        }
        (Gadget::FdFixedToFd, Instance::Relation(rel))
        | (Gadget::HypergraphUnionToDb, Instance::Relation(rel)) => fd_solutions(rel, bounds),
        (Gadget::DbToHypergraphUnion, Instance::HypergraphList(graphs)) => {
            tagged_solutions(graphs, bounds)
        }
        (Gadget::IndIdentityToGeneral, Instance::RelationPair { left, right }) => {
            Ok(oracle::maximal_general_inds(left, right, bounds.max_attributes)?
                .iter()
                .map(|ind| {
                    let mut mapping: Vec<(String, String)> = ind
                        .pairs()
                        .iter()
                        .map(|(&a, &b)| {
                            (
                                left.attr_name(a).to_string(),
                                right.attr_name(b).to_string(),
                            )
                        })
                        .collect();
                    mapping.sort();
                    Solution::Ind {
                        lhs: mapping.iter().map(|(a, _)| a.clone()).collect(),
                        mapping,
                    }
                })
                .collect())
        }
        (Gadget::ConjoinDbPairs, Instance::RelationPair { left, right })
        | (Gadget::DnfToDbPair, Instance::RelationPair { left, right }) => {
            let indicator = oracle::identity_ind_indicator(left, right, bounds.max_attributes)?;
            Ok(indicator_solutions(left.schema(), &indicator))
        }
        (Gadget::Wa3nsToIndIdentity, Instance::RelationPair { left, right }) => {
            Ok(oracle::maximal_identity_inds(left, right, bounds.max_attributes)?
                .iter()
                .map(|set| set_solution_names(left.schema(), set))
                .collect())
        }
        _ => Err(Error::InvalidInput(format!(
            "gadget {} cannot produce a {} instance",
            gadget.name(),
            target.kind()
        ))),
    }
}

fn fd_solutions(rel: &Relation, bounds: &OracleBounds) -> Result<Vec<Solution>> {
    Ok(oracle::minimal_fds(rel, bounds.max_attributes)?
        .iter()
        .map(|fd| Solution::Fd {
            lhs: sorted_names(rel.names_of(&fd.lhs)),
            rhs: rel.attr_name(fd.rhs).to_string(),
        })
        .collect())
}

fn tagged_solutions(graphs: &[Hypergraph], bounds: &OracleBounds) -> Result<Vec<Solution>> {
    let universe = union_universe(graphs)?;
    Ok(oracle::tagged_transversal_union(graphs, bounds.max_vertices)?
        .iter()
        .map(|t| Solution::TaggedSet {
            items: sorted_names(
                t.set.iter().map(|&v| universe[v as usize].clone()).collect(),
            ),
            source: t.source,
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Documented mutations
// ---------------------------------------------------------------------------

/// Runs a deliberately broken variant of the gadget's forward
/// transformation. One mutation is documented per gadget; each must be
/// rejected by verification on a suitable instance:
///
/// - `hs_to_ucc`: omits the all-zero row, so difference sets of edge-row
///   pairs are no longer absorbed.
/// - `ucc_to_fd_fixed`: fills the counter column with a constant instead of
///   the row number, so `{} -> counter` holds spuriously.
/// - `fd_fixed_to_fd`: omits the masking rows, letting dependencies into
///   other attributes survive.
/// - `fd_to_cnf`: omits the clause requiring a right-hand side, so pure
///   left-hand-side assignments satisfy the formula.
/// - `db_to_hypergraph_union`: punctures over all row pairs instead of only
///   those disagreeing on the attribute.
/// - `hypergraph_union_to_db`: omits the per-vertex masking rows, so vertex
///   columns become right-hand sides.
/// - `ind_identity_to_general`: appends one shared symbol instead of
///   per-column distinct symbols, leaving cross-column mappings valid.
/// - `ind_to_wa3ns`: omits the injectivity clauses.
/// - `conjoin_db_pairs`: skips the value-disjointness renaming of the
///   second pair.
/// - `dnf_to_db_pair`: skips the masking, so the second table contains the
///   first verbatim and the indicator is constantly true.
/// - `wa3ns_to_ind_identity`: encodes only the first block.
pub fn apply_mutated(gadget: Gadget, instance: &Instance) -> Result<Instance> {
    match (gadget, instance) {
        (Gadget::HsToUcc, Instance::Hypergraph(h)) => {
            let rel = match gadget.apply(instance)? {
                Instance::Relation(rel) => rel,
                _ => unreachable!(),
            };
            let rows = rel.rows()[1..].to_vec();
            let _ = h;
            Ok(Instance::Relation(Relation::new(
                rel.schema().to_vec(),
                rows,
            )?))
        }
        (Gadget::UccToFdFixed, Instance::Relation(rel)) => {
            let (out, rhs) = crate::reduce::ucc_to_fd_fixed(rel)?;
            let counter = out.attr_count() - 1;
            let rows = out
                .rows()
                .iter()
                .map(|row| {
                    let mut row = row.clone();
                    row[counter] = "1".to_string();
                    row
                })
                .collect();
            Ok(Instance::RelationWithRhs {
                relation: Relation::new(out.schema().to_vec(), rows)?,
                rhs,
            })
        }
        (Gadget::FdFixedToFd, Instance::RelationWithRhs { relation, .. }) => {
            Ok(Instance::Relation(relation.clone()))
        }
        (Gadget::FdToCnf, Instance::Relation(_)) => {
            let phi = match gadget.apply(instance)? {
                Instance::Formula(phi) => phi,
                _ => unreachable!(),
            };
            // The first clause is the one requiring a right-hand side.
            let blocks = phi.blocks()[1..].to_vec();
            Ok(Instance::Formula(Formula::new(
                phi.variables().to_vec(),
                blocks,
            )?))
        }
        (Gadget::DbToHypergraphUnion, Instance::Relation(rel)) => {
            let mut graphs = Vec::new();
            for a in 0..rel.attr_count() as u32 {
                let universe: Vec<String> = rel
                    .schema()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i as u32 != a)
                    .map(|(_, n)| n.clone())
                    .collect();
                let mut edges: Vec<VertexSet> = Vec::new();
                for r in 0..rel.row_count() {
                    for s in (r + 1)..rel.row_count() {
                        let d: VertexSet = rel
                            .difference_set(r, s)?
                            .into_iter()
                            .filter(|&v| v != a)
                            .map(|v| if v < a { v } else { v - 1 })
                            .collect();
                        if !edges.contains(&d) {
                            edges.push(d);
                        }
                    }
                }
                graphs.push(Hypergraph::new(universe, edges)?.minimize());
            }
            Ok(Instance::HypergraphList(graphs))
        }
        (Gadget::HypergraphUnionToDb, Instance::HypergraphList(graphs)) => {
            let rel = match gadget.apply(instance)? {
                Instance::Relation(rel) => rel,
                _ => unreachable!(),
            };
            let universe = union_universe(graphs)?;
            let keep = rel.row_count() - universe.len();
            Ok(Instance::Relation(Relation::new(
                rel.schema().to_vec(),
                rel.rows()[..keep].to_vec(),
            )?))
        }
        (Gadget::IndIdentityToGeneral, Instance::RelationPair { left, right }) => {
            let mut pool = crate::reduce::FreshSymbolPool::scanning(
                left.values().chain(right.values()),
            );
            let shared = pool.fresh();
            let marker = vec![shared; left.attr_count()];
            let mut l_rows = left.rows().to_vec();
            l_rows.push(marker.clone());
            let mut r_rows = right.rows().to_vec();
            r_rows.push(marker);
            Ok(Instance::RelationPair {
                left: Relation::new(left.schema().to_vec(), l_rows)?,
                right: Relation::new(right.schema().to_vec(), r_rows)?,
            })
        }
        (Gadget::IndToWa3ns, Instance::RelationPair { left, right }) => {
            let phi = crate::reduce::ind_to_wa3ns(left, right)?;
            // Row blocks come first; everything after them is injectivity.
            let blocks = phi.blocks()[..left.row_count()].to_vec();
            Ok(Instance::Formula(Formula::new(
                phi.variables().to_vec(),
                blocks,
            )?))
        }
        (Gadget::ConjoinDbPairs, Instance::RelationQuad {
            left1,
            right1,
            left2,
            right2,
        }) => {
            let mut l_rows = left1.rows().to_vec();
            l_rows.extend(left2.rows().iter().cloned());
            let mut r_rows = right1.rows().to_vec();
            r_rows.extend(right2.rows().iter().cloned());
            Ok(Instance::RelationPair {
                left: Relation::new(left1.schema().to_vec(), l_rows)?,
                right: Relation::new(right1.schema().to_vec(), r_rows)?,
            })
        }
        (Gadget::DnfToDbPair, Instance::Formula(phi)) => {
            let (left, _) = crate::reduce::dnf_to_db_pair(phi)?;
            let right = Relation::new(left.schema().to_vec(), left.rows().to_vec())?;
            Ok(Instance::RelationPair { left, right })
        }
        (Gadget::Wa3nsToIndIdentity, Instance::Formula(phi)) => {
            if phi.blocks().is_empty() {
                return gadget.apply(instance);
            }
            let first = Formula::new(phi.variables().to_vec(), vec![phi.blocks()[0].clone()])?;
            gadget.apply(&Instance::Formula(first))
        }
        _ => Err(Error::InvalidInput(format!(
            "gadget {} cannot read a {} instance",
            gadget.name(),
            instance.kind()
        ))),
    }
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

/// Size budgets for the seeded generators. All generators are
/// deterministic: the same seed and bounds give the same instance.
#[derive(Clone, Copy, Debug)]
pub struct GeneratorBounds {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub allow_empty_edge: bool,
    pub max_attributes: usize,
    pub max_rows: usize,
    pub min_rows: usize,
    pub alphabet: u32,
    pub max_variables: usize,
    pub max_blocks: usize,
    pub max_terms: usize,
    pub max_term_size: usize,
    pub empty_block_chance: f64,
}

impl Default for GeneratorBounds {
    fn default() -> Self {
        GeneratorBounds {
            max_vertices: 7,
            max_edges: 12,
            allow_empty_edge: false,
            max_attributes: 7,
            max_rows: 10,
            min_rows: 0,
            alphabet: 3,
            max_variables: 5,
            max_blocks: 3,
            max_terms: 4,
            max_term_size: 3,
            empty_block_chance: 0.0,
        }
    }
}

/// What [`random_instance`] should produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    Hypergraph,
    Relation,
    Formula,
    RelationPair,
}

pub fn random_instance(kind: RandomKind, seed: u64, bounds: &GeneratorBounds) -> Instance {
    match kind {
        RandomKind::Hypergraph => Instance::Hypergraph(random_hypergraph(seed, bounds)),
        RandomKind::Relation => Instance::Relation(random_relation(seed, bounds)),
        RandomKind::Formula => Instance::Formula(random_formula(seed, bounds)),
        RandomKind::RelationPair => {
            let (left, right) = random_relation_pair(seed, bounds);
            Instance::RelationPair { left, right }
        }
    }
}

fn vertex_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

fn attr_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            char::from(b'a' + (i % 26) as u8).to_string()
                + &(if i >= 26 { (i / 26).to_string() } else { String::new() })
        })
        .collect()
}

pub fn random_hypergraph(seed: u64, bounds: &GeneratorBounds) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = rng.gen_range(1..=bounds.max_vertices);
    let ne = rng.gen_range(0..=bounds.max_edges);
    let mut edges = Vec::with_capacity(ne);
    for _ in 0..ne {
        let mut edge: VertexSet = (0..nv as u32).filter(|_| rng.gen_bool(0.45)).collect();
        if edge.is_empty() && !(bounds.allow_empty_edge && rng.gen_bool(0.5)) {
            edge.insert(rng.gen_range(0..nv as u32));
        }
        edges.push(edge);
    }
    Hypergraph::new(vertex_names(nv), edges).expect("generated edges are in range")
}

pub fn random_relation(seed: u64, bounds: &GeneratorBounds) -> Relation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_relation_with(&mut rng, bounds)
}

fn random_relation_with(rng: &mut ChaCha8Rng, bounds: &GeneratorBounds) -> Relation {
    let ncols = rng.gen_range(1..=bounds.max_attributes);
    let nrows = rng.gen_range(bounds.min_rows..=bounds.max_rows);
    let schema = attr_names(ncols);
    random_rows_for(rng, schema, nrows, bounds.alphabet)
}

fn random_rows_for(
    rng: &mut ChaCha8Rng,
    schema: Vec<String>,
    nrows: usize,
    alphabet: u32,
) -> Relation {
    let ncols = schema.len();
    let rows: Vec<Vec<String>> = (0..nrows)
        .map(|_| {
            (0..ncols)
                .map(|_| rng.gen_range(0..alphabet).to_string())
                .collect()
        })
        .collect();
    Relation::new(schema, rows).expect("generated rows are rectangular")
}

/// Two tables over one schema; the second is usually a bit larger so
/// partial inclusions are common.
pub fn random_relation_pair(seed: u64, bounds: &GeneratorBounds) -> (Relation, Relation) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ncols = rng.gen_range(1..=bounds.max_attributes);
    let schema = attr_names(ncols);
    let min = bounds.min_rows.max(1);
    let left_rows = rng.gen_range(min..=bounds.max_rows.max(min));
    let right_rows = rng.gen_range(min..=bounds.max_rows.max(min));
    let left = random_rows_for(&mut rng, schema.clone(), left_rows, bounds.alphabet);
    let right = random_rows_for(&mut rng, schema, right_rows, bounds.alphabet);
    (left, right)
}

/// A random antimonotone 3-normalized formula.
pub fn random_formula(seed: u64, bounds: &GeneratorBounds) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nvars = rng.gen_range(1..=bounds.max_variables);
    let nblocks = rng.gen_range(0..=bounds.max_blocks);
    let variables: Vec<String> = (0..nvars).map(|i| format!("x{}", i + 1)).collect();
    let mut blocks = Vec::with_capacity(nblocks);
    for _ in 0..nblocks {
        if rng.gen_bool(bounds.empty_block_chance) {
            blocks.push(Vec::new());
            continue;
        }
        let nterms = rng.gen_range(1..=bounds.max_terms);
        let mut terms = Vec::with_capacity(nterms);
        for _ in 0..nterms {
            let size = rng.gen_range(0..=bounds.max_term_size.min(nvars));
            let mut term: VertexSet = VertexSet::new();
            while term.len() < size {
                term.insert(rng.gen_range(0..nvars as u32));
            }
            terms.push(term);
        }
        blocks.push(terms);
    }
    Formula::antimonotone(variables, blocks).expect("generated blocks are in range")
}

/// A seeded instance of the shape the given gadget consumes, sized so that
/// verification under [`OracleBounds::default`] is cheap.
pub fn random_gadget_instance(gadget: Gadget, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    match gadget {
        Gadget::HsToUcc => {
            let bounds = GeneratorBounds {
                max_vertices: 6,
                max_edges: 8,
                allow_empty_edge: false,
                ..GeneratorBounds::default()
            };
            Instance::Hypergraph(random_hypergraph(seed, &bounds))
        }
        Gadget::UccToFdFixed => {
            let bounds = GeneratorBounds {
                max_attributes: 5,
                max_rows: 8,
                ..GeneratorBounds::default()
            };
            Instance::Relation(random_relation(seed, &bounds))
        }
        Gadget::FdFixedToFd => {
            let bounds = GeneratorBounds {
                max_attributes: 6,
                max_rows: 8,
                min_rows: 1,
                ..GeneratorBounds::default()
            };
            let relation = random_relation(seed, &bounds);
            let rhs = relation
                .attr_name(rng.gen_range(0..relation.attr_count() as u32))
                .to_string();
            Instance::RelationWithRhs { relation, rhs }
        }
        Gadget::FdToCnf => {
            let bounds = GeneratorBounds {
                max_attributes: 5,
                max_rows: 6,
                ..GeneratorBounds::default()
            };
            Instance::Relation(random_relation(seed, &bounds))
        }
        Gadget::DbToHypergraphUnion => {
            let bounds = GeneratorBounds {
                max_attributes: 6,
                max_rows: 8,
                ..GeneratorBounds::default()
            };
            Instance::Relation(random_relation(seed, &bounds))
        }
        Gadget::HypergraphUnionToDb => {
            let count = rng.gen_range(1..=3);
            let universe = vertex_names(4);
            let graphs: Vec<Hypergraph> = (0..count)
                .map(|_| {
                    let nv = rng.gen_range(1..=universe.len());
                    let mut picked: Vec<usize> = (0..universe.len()).collect();
                    while picked.len() > nv {
                        let drop = rng.gen_range(0..picked.len());
                        picked.remove(drop);
                    }
                    let names: Vec<&str> =
                        picked.iter().map(|&i| universe[i].as_str()).collect();
                    let ne = rng.gen_range(0..=4);
                    let mut edges: Vec<VertexSet> = Vec::new();
                    for _ in 0..ne {
                        let edge: VertexSet =
                            (0..nv as u32).filter(|_| rng.gen_bool(0.5)).collect();
                        edges.push(edge);
                    }
                    let slices: Vec<Vec<&str>> = edges
                        .iter()
                        .map(|e| e.iter().map(|&v| names[v as usize]).collect())
                        .collect();
                    let edge_refs: Vec<&[&str]> = slices.iter().map(|e| e.as_slice()).collect();
                    Hypergraph::with_vertices(&names, &edge_refs)
                        .expect("edges use declared names")
                })
                .collect();
            Instance::HypergraphList(graphs)
        }
        Gadget::IndIdentityToGeneral => {
            let bounds = GeneratorBounds {
                max_attributes: 3,
                max_rows: 4,
                min_rows: 1,
                ..GeneratorBounds::default()
            };
            let (left, right) = random_relation_pair(seed, &bounds);
            Instance::RelationPair { left, right }
        }
        Gadget::IndToWa3ns => {
            let nr = rng.gen_range(1..=3);
            let ns = rng.gen_range(1..=(12 / nr).min(4));
            let bounds = GeneratorBounds::default();
            let left_schema: Vec<String> = (0..nr).map(|i| format!("a{i}")).collect();
            let right_schema: Vec<String> = (0..ns).map(|i| format!("b{i}")).collect();
            let left_rows = rng.gen_range(1..=4);
            let right_rows = rng.gen_range(1..=4);
            let left = random_rows_for(&mut rng, left_schema, left_rows, bounds.alphabet);
            let right = random_rows_for(&mut rng, right_schema, right_rows, bounds.alphabet);
            Instance::RelationPair { left, right }
        }
        Gadget::ConjoinDbPairs => {
            let ncols = rng.gen_range(1..=3);
            let schema = attr_names(ncols);
            let table = |rng: &mut ChaCha8Rng| {
                let rows = rng.gen_range(1..=3);
                random_rows_for(rng, schema.clone(), rows, 3)
            };
            Instance::RelationQuad {
                left1: table(&mut rng),
                right1: table(&mut rng),
                left2: table(&mut rng),
                right2: table(&mut rng),
            }
        }
        Gadget::DnfToDbPair => {
            let bounds = GeneratorBounds {
                max_variables: 4,
                max_blocks: 1,
                max_terms: 4,
                max_term_size: 3,
                ..GeneratorBounds::default()
            };
            let mut phi = random_formula(seed, &bounds);
            if phi.blocks().is_empty() {
                // The disjunction gadget needs exactly one non-empty block.
                let vars = phi.variables().to_vec();
                let term: VertexSet = [0u32].into_iter().collect();
                phi = Formula::antimonotone(vars, vec![vec![term]])
                    .expect("fallback term is in range");
            }
            Instance::Formula(phi)
        }
        Gadget::Wa3nsToIndIdentity => {
            let bounds = GeneratorBounds {
                max_variables: 4,
                max_blocks: 3,
                max_terms: 3,
                max_term_size: 3,
                empty_block_chance: 0.05,
                ..GeneratorBounds::default()
            };
            Instance::Formula(random_formula(seed, &bounds))
        }
    }
}
