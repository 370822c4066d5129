//! Instance transformations between the problem encodings, each paired with
//! a solution translation.
//!
//! Every transformation runs in time polynomial in its input encoding and
//! maps solution sets bijectively (for the enumeration gadgets) or
//! budget-for-budget (for the two decision gadgets, where a size-`k`
//! solution exists on one side iff a size-`parameter_map(k)` one exists on
//! the other). [`crate::harness`] checks those claims by exhaustive
//! enumeration.
//!
//! Constructions that need values or attribute names absent from the input
//! draw them from [`FreshSymbolPool`], which verifies by scanning that its
//! token prefix does not occur in the instance, so gadget outputs are
//! reproducible and survive serialization round-trips.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::formula::{Formula, Literal, Term};
use crate::hypergraph::{union_universe, Hypergraph, VertexSet};
use crate::relation::Relation;
use crate::{Error, Result};

/// Issues value tokens `<prefix><n>` with a prefix verified absent (as a
/// prefix) from every scanned input value, so no issued symbol can collide
/// with an existing value and all issued symbols are pairwise distinct.
pub struct FreshSymbolPool {
    prefix: String,
    next: usize,
}

impl FreshSymbolPool {
    /// Starts from the prefix `!f` and keeps appending `_` until no scanned
    /// value starts with the prefix.
    pub fn scanning<'a>(values: impl IntoIterator<Item = &'a str>) -> Self {
        let values: Vec<&'a str> = values.into_iter().collect();
        let mut prefix = String::from("!f");
        while values.iter().any(|v| v.starts_with(prefix.as_str())) {
            prefix.push('_');
        }
        FreshSymbolPool { prefix, next: 0 }
    }

    pub fn fresh(&mut self) -> String {
        let symbol = format!("{}{}", self.prefix, self.next);
        self.next += 1;
        symbol
    }
}

/// A name not yet in `taken`, built by appending `_` to `base` as needed.
fn fresh_name(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

// ---------------------------------------------------------------------------
// Gadgets
// ---------------------------------------------------------------------------

/// Hitting-set instances as tables: the minimal difference sets of the
/// output are exactly the minimized edges of the input, so minimal unique
/// column combinations coincide with minimal transversals (the solution
/// translation is the identity on vertex sets).
///
/// The table has one all-zero row plus one row per minimized edge, with the
/// edge's 1-based number in its member columns. The input must have a
/// non-empty vertex set and no empty edge: a table always has a unique
/// column combination, so an unhittable instance has no counterpart.
pub fn hs_to_ucc(h: &Hypergraph) -> Result<Relation> {
    if h.vertex_count() == 0 {
        return Err(Error::InvalidInput(
            "hitting-set gadget needs a non-empty vertex set".into(),
        ));
    }
    if h.edges().iter().any(|e| e.is_empty()) {
        return Err(Error::InvalidInput(
            "hitting-set gadget cannot encode an empty edge".into(),
        ));
    }
    let minimized = h.minimize();
    let n = h.vertex_count();
    let mut rows = vec![vec!["0".to_string(); n]];
    for (i, edge) in minimized.edges().iter().enumerate() {
        let mut row = vec!["0".to_string(); n];
        for &v in edge {
            row[v as usize] = (i + 1).to_string();
        }
        rows.push(row);
    }
    Relation::new(h.vertices().to_vec(), rows)
}

/// Adds a running-number column and fixes it as the right-hand side: the
/// minimal dependencies `X -> new` of the output are exactly the minimal
/// unique column combinations `X` of the input. Returns the table together
/// with the new attribute's name.
pub fn ucc_to_fd_fixed(rel: &Relation) -> Result<(Relation, String)> {
    let counter = fresh_name("a", rel.schema());
    let mut schema = rel.schema().to_vec();
    schema.push(counter.clone());
    let rows = rel
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut row = row.clone();
            row.push((i + 1).to_string());
            row
        })
        .collect();
    Ok((Relation::new(schema, rows)?, counter))
}

/// Masks every unwanted right-hand side: for each attribute `b` other than
/// the fixed one, a copy of the first row with a fresh symbol at `b` is
/// added, which invalidates every non-trivial dependency into `b` while
/// dependencies into the fixed attribute hold in the output iff they held
/// in the input.
pub fn fd_fixed_to_fd(rel: &Relation, rhs: u32) -> Result<Relation> {
    if rhs as usize >= rel.attr_count() {
        return Err(Error::InvalidInput(format!(
            "attribute index {rhs} out of range"
        )));
    }
    let pivot = rel
        .rows()
        .first()
        .ok_or_else(|| Error::InvalidInput("masking gadget needs at least one row".into()))?
        .clone();
    let mask = FreshSymbolPool::scanning(rel.values()).fresh();
    let mut rows = rel.rows().to_vec();
    for b in 0..rel.attr_count() {
        if b as u32 == rhs {
            continue;
        }
        let mut row = pivot.clone();
        row[b] = mask.clone();
        rows.push(row);
    }
    let out = Relation::new(rel.schema().to_vec(), rows)?;
    debug_assert_eq!(out.row_count(), rel.row_count() + rel.attr_count() - 1);
    Ok(out)
}

fn lhs_var(rel: &Relation, a: u32) -> String {
    format!("x_{}", rel.attr_name(a))
}

fn rhs_var(rel: &Relation, a: u32) -> String {
    format!("y_{}", rel.attr_name(a))
}

/// Encodes "some non-trivial dependency of size `k` holds" as a CNF
/// formula: a weight-`k+1` satisfying assignment picks one (or more)
/// right-hand-side variable `y_a` and left-hand-side variables `x_b`
/// forming a valid dependency. Clauses: at least one `y_a` is chosen; `y_a`
/// and `x_a` are mutually exclusive; and for every row pair disagreeing on
/// `a`, choosing `y_a` forces some disagreeing attribute into the left-hand
/// side. This is a decision gadget with budget map `k -> k + 1`, not a
/// bijective enumeration gadget.
pub fn fd_to_cnf(rel: &Relation) -> Result<Formula> {
    let n = rel.attr_count();
    let mut variables: Vec<String> = (0..n as u32).map(|a| lhs_var(rel, a)).collect();
    variables.extend((0..n as u32).map(|a| rhs_var(rel, a)));
    let x = |a: u32| a;
    let y = |a: u32| n as u32 + a;

    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    clauses.push((0..n as u32).map(|a| Literal::pos(y(a))).collect());
    for a in 0..n as u32 {
        clauses.push(vec![Literal::neg(y(a)), Literal::neg(x(a))]);
    }
    let rows = rel.rows();
    for a in 0..n as u32 {
        for r in 0..rows.len() {
            for s in (r + 1)..rows.len() {
                if rows[r][a as usize] == rows[s][a as usize] {
                    continue;
                }
                let mut clause = vec![Literal::neg(y(a))];
                for b in 0..n as u32 {
                    if b != a && rows[r][b as usize] != rows[s][b as usize] {
                        clause.push(Literal::pos(x(b)));
                    }
                }
                clauses.push(clause);
            }
        }
    }
    Formula::cnf(variables, clauses)
}

/// One punctured difference-set hypergraph per attribute, in schema order.
/// A tagged transversal `(T, i)` of the output translates back to the
/// dependency `T -> schema[i]`.
pub fn db_to_hypergraph_union(rel: &Relation) -> Result<Vec<Hypergraph>> {
    (0..rel.attr_count() as u32)
        .map(|a| rel.punctured_difference_sets(a))
        .collect()
}

/// Deterministic tag-attribute names for [`hypergraph_union_to_db`]: one
/// per input hypergraph, distinct from every vertex name.
fn union_tag_names(universe: &[String], count: usize) -> Vec<String> {
    let mut taken = universe.to_vec();
    let mut tags = Vec::with_capacity(count);
    for i in 0..count {
        let tag = fresh_name(&format!("x{}", i + 1), &taken);
        taken.push(tag.clone());
        tags.push(tag);
    }
    tags
}

/// Encodes a list of hypergraphs as a single table whose minimal,
/// non-trivial dependencies are exactly `T -> tag_i` for `T` a minimal
/// transversal of the `i`-th input.
///
/// The schema is the shared vertex universe plus one tag attribute per
/// hypergraph. Rows: an all-zero row; per edge (counted across the list
/// with multiplicity, so an edge shared by two hypergraphs yields two
/// rows) its characteristic row valued with the edge number and a 1 under
/// its tag; and per vertex a masking row with a fresh symbol at that
/// vertex, which eliminates every dependency into a vertex column.
pub fn hypergraph_union_to_db(graphs: &[Hypergraph]) -> Result<Relation> {
    let universe = union_universe(graphs)?;
    let padded: Vec<Hypergraph> = graphs
        .iter()
        .map(|g| g.padded_to(&universe))
        .collect::<Result<_>>()?;
    let tags = union_tag_names(&universe, graphs.len());
    let mut schema = universe.clone();
    schema.extend(tags.iter().cloned());
    let width = schema.len();
    let nv = universe.len();

    let mut rows = vec![vec!["0".to_string(); width]];
    let mut edge_number = 0usize;
    for (i, g) in padded.iter().enumerate() {
        for edge in g.edges() {
            edge_number += 1;
            let mut row = vec!["0".to_string(); width];
            for &v in edge {
                row[v as usize] = edge_number.to_string();
            }
            row[nv + i] = "1".to_string();
            rows.push(row);
        }
    }
    let mask = FreshSymbolPool::scanning(rows.iter().flatten().map(|v| v.as_str())).fresh();
    for v in 0..nv {
        let mut row = vec!["0".to_string(); width];
        row[v] = mask.clone();
        rows.push(row);
    }
    let out = Relation::new(schema, rows)?;
    debug_assert_eq!(out.row_count(), 1 + edge_number + nv);
    Ok(out)
}

/// Restricts column mappings to the identity: appends one shared row of
/// pairwise-distinct fresh symbols to both tables, so a value of that row
/// occurs in a column of the second table iff it is the same column. Every
/// inclusion dependency of the output therefore uses the identity mapping,
/// and its attribute set is an identity inclusion dependency of the input.
pub fn ind_identity_to_general(r: &Relation, s: &Relation) -> Result<(Relation, Relation)> {
    if r.schema() != s.schema() {
        return Err(Error::InvalidInput(
            "identity-restriction gadget needs equal schemas".into(),
        ));
    }
    let mut pool = FreshSymbolPool::scanning(r.values().chain(s.values()));
    let marker: Vec<String> = (0..r.attr_count()).map(|_| pool.fresh()).collect();
    let mut r_rows = r.rows().to_vec();
    r_rows.push(marker.clone());
    let mut s_rows = s.rows().to_vec();
    s_rows.push(marker);
    Ok((
        Relation::new(r.schema().to_vec(), r_rows)?,
        Relation::new(s.schema().to_vec(), s_rows)?,
    ))
}

fn mapping_var(i: usize, j: usize) -> String {
    format!("x{}_{}", i + 1, j + 1)
}

/// Encodes inclusion-dependency detection as weighted satisfiability of an
/// antimonotone 3-normalized formula over one variable per column pair
/// `(a_i, b_j)`: per row of the first table a block whose terms, one per
/// row of the second table, forbid the disagreeing pairs; plus clauses
/// ruling out non-injective pair choices. Weight-`k` satisfying
/// assignments correspond to inclusion dependencies with `k` columns.
pub fn ind_to_wa3ns(r: &Relation, s: &Relation) -> Result<Formula> {
    let nr = r.attr_count();
    let ns = s.attr_count();
    let mut variables = Vec::with_capacity(nr * ns);
    for i in 0..nr {
        for j in 0..ns {
            variables.push(mapping_var(i, j));
        }
    }
    let var = |i: usize, j: usize| (i * ns + j) as u32;

    let mut blocks: Vec<Vec<Term>> = Vec::new();
    for r_row in r.rows() {
        let mut terms: Vec<Term> = Vec::new();
        for s_row in s.rows() {
            let forbidden: Term = (0..nr)
                .flat_map(|i| (0..ns).map(move |j| (i, j)))
                .filter(|&(i, j)| r_row[i] != s_row[j])
                .map(|(i, j)| Literal::neg(var(i, j)))
                .collect();
            terms.push(forbidden);
        }
        blocks.push(terms);
    }
    // Injectivity: no attribute maps to two targets, no target is hit twice.
    for i in 0..nr {
        for j in 0..ns {
            for j2 in (j + 1)..ns {
                blocks.push(vec![
                    vec![Literal::neg(var(i, j))],
                    vec![Literal::neg(var(i, j2))],
                ]);
            }
        }
    }
    for j in 0..ns {
        for i in 0..nr {
            for i2 in (i + 1)..nr {
                blocks.push(vec![
                    vec![Literal::neg(var(i, j))],
                    vec![Literal::neg(var(i2, j))],
                ]);
            }
        }
    }
    Formula::new(variables, blocks)
}

/// Combines two table pairs over one schema into a pair whose identity
/// inclusion indicator is the conjunction of the inputs' indicators. The
/// second pair's values are rewritten through the fresh-symbol pool (one
/// fresh token per distinct value) so the pairs share no values; rows then
/// union without interference and the row counts add exactly.
pub fn conjoin_db_pairs(
    first: (&Relation, &Relation),
    second: (&Relation, &Relation),
) -> Result<(Relation, Relation)> {
    let schema = first.0.schema();
    if first.1.schema() != schema || second.0.schema() != schema || second.1.schema() != schema {
        return Err(Error::InvalidInput(
            "conjunction gadget needs all four tables over one schema".into(),
        ));
    }
    let mut pool = FreshSymbolPool::scanning(
        first
            .0
            .values()
            .chain(first.1.values())
            .chain(second.0.values())
            .chain(second.1.values()),
    );
    let mut rename: BTreeMap<String, String> = BTreeMap::new();
    let mut renamed = |rows: &[Vec<String>], pool: &mut FreshSymbolPool| -> Vec<Vec<String>> {
        rows.iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        rename
                            .entry(v.clone())
                            .or_insert_with(|| pool.fresh())
                            .clone()
                    })
                    .collect()
            })
            .collect()
    };
    let mut left_rows = first.0.rows().to_vec();
    left_rows.extend(renamed(second.0.rows(), &mut pool));
    let mut right_rows = first.1.rows().to_vec();
    right_rows.extend(renamed(second.1.rows(), &mut pool));
    let left = Relation::new(schema.to_vec(), left_rows)?;
    let right = Relation::new(schema.to_vec(), right_rows)?;
    debug_assert_eq!(left.row_count(), first.0.row_count() + second.0.row_count());
    debug_assert_eq!(right.row_count(), first.1.row_count() + second.1.row_count());
    Ok((left, right))
}

/// Encodes a one-block antimonotone formula (a disjunction of terms) as a
/// table pair over its variables whose identity inclusion indicator equals
/// the formula's satisfaction indicator.
///
/// The first table has one row per term, numbered in its member columns.
/// The second holds one copy of the first per term, with the copy's term
/// columns replaced by a fresh symbol; a subset avoiding some term's
/// variables finds its witnesses in that term's copy. Set semantics may
/// collapse coinciding masked copies, which leaves the indicator unchanged.
pub fn dnf_to_db_pair(phi: &Formula) -> Result<(Relation, Relation)> {
    if !phi.is_antimonotone() {
        return Err(Error::InvalidInput(
            "disjunction gadget needs an antimonotone formula".into(),
        ));
    }
    if phi.blocks().len() != 1 {
        return Err(Error::InvalidInput(
            "disjunction gadget needs exactly one block in disjunctive normal form".into(),
        ));
    }
    if phi.blocks()[0].is_empty() {
        return Err(Error::InvalidInput(
            "disjunction gadget needs at least one term".into(),
        ));
    }
    if phi.variable_count() == 0 {
        return Err(Error::InvalidInput(
            "disjunction gadget needs at least one variable".into(),
        ));
    }
    let schema: Vec<String> = phi.variables().to_vec();
    let n = schema.len();
    let terms: Vec<VertexSet> = phi.blocks()[0]
        .iter()
        .map(|term| term.iter().map(|lit| lit.var).collect())
        .collect();

    let mut left_rows: Vec<Vec<String>> = Vec::with_capacity(terms.len());
    for (j, term) in terms.iter().enumerate() {
        let mut row = vec!["0".to_string(); n];
        for &v in term {
            row[v as usize] = (j + 1).to_string();
        }
        left_rows.push(row);
    }
    let mask = FreshSymbolPool::scanning(left_rows.iter().flatten().map(|v| v.as_str())).fresh();
    let mut right_rows: Vec<Vec<String>> = Vec::with_capacity(terms.len() * terms.len());
    for term in &terms {
        for base in &left_rows {
            let mut row = base.clone();
            for &v in term {
                row[v as usize] = mask.clone();
            }
            right_rows.push(row);
        }
    }
    Ok((
        Relation::new(schema.clone(), left_rows)?,
        Relation::new(schema, right_rows)?,
    ))
}

/// Encodes an antimonotone 3-normalized formula as a table pair whose
/// identity inclusion indicator equals the formula's satisfaction
/// indicator: each block goes through [`dnf_to_db_pair`] and the pairs are
/// folded left to right with [`conjoin_db_pairs`]. Maximal identity
/// inclusion dependencies then correspond to maximal satisfying
/// assignments.
///
/// A formula without blocks is constantly true and maps to a shared
/// single-row pair; a formula with an empty block is unsatisfiable and
/// maps to a pair whose second table is empty, which admits no inclusion
/// dependency at all.
pub fn wa3ns_to_ind_identity(phi: &Formula) -> Result<(Relation, Relation)> {
    if !phi.is_antimonotone() {
        return Err(Error::InvalidInput(
            "inclusion encoding needs an antimonotone formula".into(),
        ));
    }
    if phi.variable_count() == 0 {
        return Err(Error::InvalidInput(
            "inclusion encoding needs at least one variable".into(),
        ));
    }
    let schema: Vec<String> = phi.variables().to_vec();
    let zeros = vec![vec!["0".to_string(); schema.len()]];
    if phi.blocks().iter().any(|b| b.is_empty()) {
        let left = Relation::new(schema.clone(), zeros)?;
        let right = Relation::new(schema, Vec::new())?;
        return Ok((left, right));
    }
    if phi.blocks().is_empty() {
        let left = Relation::new(schema.clone(), zeros.clone())?;
        let right = Relation::new(schema, zeros)?;
        return Ok((left, right));
    }
    let mut acc: Option<(Relation, Relation)> = None;
    for block in phi.blocks() {
        let single = Formula::new(phi.variables().to_vec(), vec![block.clone()])?;
        let pair = dnf_to_db_pair(&single)?;
        acc = Some(match acc {
            None => pair,
            Some(prev) => conjoin_db_pairs((&prev.0, &prev.1), (&pair.0, &pair.1))?,
        });
    }
    Ok(acc.expect("at least one block"))
}

// ---------------------------------------------------------------------------
// Uniform instance / solution layer
// ---------------------------------------------------------------------------

/// A problem instance of any of the encodings a gadget consumes or emits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "value", rename_all = "snake_case")]
pub enum Instance {
    Hypergraph(Hypergraph),
    HypergraphList(Vec<Hypergraph>),
    Relation(Relation),
    RelationWithRhs { relation: Relation, rhs: String },
    RelationPair { left: Relation, right: Relation },
    RelationQuad {
        left1: Relation,
        right1: Relation,
        left2: Relation,
        right2: Relation,
    },
    Formula(Formula),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Hypergraph(_) => "hypergraph",
            Instance::HypergraphList(_) => "hypergraph list",
            Instance::Relation(_) => "relation",
            Instance::RelationWithRhs { .. } => "relation with fixed rhs",
            Instance::RelationPair { .. } => "relation pair",
            Instance::RelationQuad { .. } => "two relation pairs",
            Instance::Formula(_) => "formula",
        }
    }
}

/// A solution in name-based form, comparable across an instance and its
/// gadget image.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Solution {
    /// An attribute, vertex, or variable set (unique column combinations,
    /// transversals, identity inclusion dependencies, assignments).
    Set { items: Vec<String> },
    /// A set tagged with the index of its originating hypergraph.
    TaggedSet { items: Vec<String>, source: usize },
    /// A functional dependency.
    Fd { lhs: Vec<String>, rhs: String },
    /// A general inclusion dependency; the mapping is sorted by source
    /// attribute.
    Ind {
        lhs: Vec<String>,
        mapping: Vec<(String, String)>,
    },
}

impl Solution {
    pub fn set(items: Vec<String>) -> Self {
        Solution::Set { items }
    }
}

fn expect_shape<T>(got: Option<T>, gadget: &str, wanted: &str) -> Result<T> {
    got.ok_or_else(|| {
        Error::InvalidInput(format!("gadget {gadget} expects {wanted} as its input"))
    })
}

/// The gadget registry. `apply` runs the forward transformation on a
/// uniform [`Instance`]; `solution_back` translates a solution of the image
/// back to one of the source. The two decision gadgets translate budgets
/// via [`Gadget::parameter_map`] instead of solutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gadget {
    HsToUcc,
    UccToFdFixed,
    FdFixedToFd,
    FdToCnf,
    DbToHypergraphUnion,
    HypergraphUnionToDb,
    IndIdentityToGeneral,
    IndToWa3ns,
    ConjoinDbPairs,
    DnfToDbPair,
    Wa3nsToIndIdentity,
}

impl Gadget {
    pub const ALL: [Gadget; 11] = [
        Gadget::HsToUcc,
        Gadget::UccToFdFixed,
        Gadget::FdFixedToFd,
        Gadget::FdToCnf,
        Gadget::DbToHypergraphUnion,
        Gadget::HypergraphUnionToDb,
        Gadget::IndIdentityToGeneral,
        Gadget::IndToWa3ns,
        Gadget::ConjoinDbPairs,
        Gadget::DnfToDbPair,
        Gadget::Wa3nsToIndIdentity,
    ];

    /// The nine gadgets whose solution sets map bijectively.
    pub const ENUMERATION: [Gadget; 9] = [
        Gadget::HsToUcc,
        Gadget::UccToFdFixed,
        Gadget::FdFixedToFd,
        Gadget::DbToHypergraphUnion,
        Gadget::HypergraphUnionToDb,
        Gadget::IndIdentityToGeneral,
        Gadget::ConjoinDbPairs,
        Gadget::DnfToDbPair,
        Gadget::Wa3nsToIndIdentity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Gadget::HsToUcc => "hs_to_ucc",
            Gadget::UccToFdFixed => "ucc_to_fd_fixed",
            Gadget::FdFixedToFd => "fd_fixed_to_fd",
            Gadget::FdToCnf => "fd_to_cnf",
            Gadget::DbToHypergraphUnion => "db_to_hypergraph_union",
            Gadget::HypergraphUnionToDb => "hypergraph_union_to_db",
            Gadget::IndIdentityToGeneral => "ind_identity_to_general",
            Gadget::IndToWa3ns => "ind_to_wa3ns",
            Gadget::ConjoinDbPairs => "conjoin_db_pairs",
            Gadget::DnfToDbPair => "dnf_to_db_pair",
            Gadget::Wa3nsToIndIdentity => "wa3ns_to_ind_identity",
        }
    }

    pub fn from_name(name: &str) -> Option<Gadget> {
        Gadget::ALL.into_iter().find(|g| g.name() == name)
    }

    /// True for the budget-translating gadgets without a solution
    /// bijection.
    pub fn is_decision(&self) -> bool {
        matches!(self, Gadget::FdToCnf | Gadget::IndToWa3ns)
    }

    /// Budget translation: a size-`k` source solution corresponds to a
    /// size-`parameter_map(k)` target solution.
    pub fn parameter_map(&self, k: usize) -> usize {
        match self {
            Gadget::FdToCnf => k + 1,
            _ => k,
        }
    }

    /// Runs the forward transformation.
    pub fn apply(&self, instance: &Instance) -> Result<Instance> {
        let name = self.name();
        match self {
            Gadget::HsToUcc => {
                let h = expect_shape(
                    match instance {
                        Instance::Hypergraph(h) => Some(h),
                        _ => None,
                    },
                    name,
                    "a hypergraph",
                )?;
                Ok(Instance::Relation(hs_to_ucc(h)?))
            }
            Gadget::UccToFdFixed => {
                let rel = expect_shape(
                    match instance {
                        Instance::Relation(r) => Some(r),
                        _ => None,
                    },
                    name,
                    "a relation",
                )?;
                let (relation, rhs) = ucc_to_fd_fixed(rel)?;
                Ok(Instance::RelationWithRhs { relation, rhs })
            }
            Gadget::FdFixedToFd => {
                let (rel, rhs) = expect_shape(
                    match instance {
                        Instance::RelationWithRhs { relation, rhs } => Some((relation, rhs)),
                        _ => None,
                    },
                    name,
                    "a relation with a fixed rhs",
                )?;
                let a = rel.attr_index(rhs).ok_or_else(|| {
                    Error::InvalidInput(format!("unknown attribute '{rhs}'"))
                })?;
                Ok(Instance::Relation(fd_fixed_to_fd(rel, a)?))
            }
            Gadget::FdToCnf => {
                let rel = expect_shape(
                    match instance {
                        Instance::Relation(r) => Some(r),
                        _ => None,
                    },
                    name,
                    "a relation",
                )?;
                Ok(Instance::Formula(fd_to_cnf(rel)?))
            }
            Gadget::DbToHypergraphUnion => {
                let rel = expect_shape(
                    match instance {
                        Instance::Relation(r) => Some(r),
                        _ => None,
                    },
                    name,
                    "a relation",
                )?;
                Ok(Instance::HypergraphList(db_to_hypergraph_union(rel)?))
            }
            Gadget::HypergraphUnionToDb => {
                let graphs = expect_shape(
                    match instance {
                        Instance::HypergraphList(gs) => Some(gs),
                        _ => None,
                    },
                    name,
                    "a hypergraph list",
                )?;
                Ok(Instance::Relation(hypergraph_union_to_db(graphs)?))
            }
            Gadget::IndIdentityToGeneral => {
                let (left, right) = expect_pair(instance, name)?;
                let (l, r) = ind_identity_to_general(left, right)?;
                Ok(Instance::RelationPair { left: l, right: r })
            }
            Gadget::IndToWa3ns => {
                let (left, right) = expect_pair(instance, name)?;
                Ok(Instance::Formula(ind_to_wa3ns(left, right)?))
            }
            Gadget::ConjoinDbPairs => {
                let (l1, r1, l2, r2) = expect_shape(
                    match instance {
                        Instance::RelationQuad {
                            left1,
                            right1,
                            left2,
                            right2,
                        } => Some((left1, right1, left2, right2)),
                        _ => None,
                    },
                    name,
                    "two relation pairs",
                )?;
                let (l, r) = conjoin_db_pairs((l1, r1), (l2, r2))?;
                Ok(Instance::RelationPair { left: l, right: r })
            }
            Gadget::DnfToDbPair => {
                let phi = expect_formula(instance, name)?;
                let (l, r) = dnf_to_db_pair(phi)?;
                Ok(Instance::RelationPair { left: l, right: r })
            }
            Gadget::Wa3nsToIndIdentity => {
                let phi = expect_formula(instance, name)?;
                let (l, r) = wa3ns_to_ind_identity(phi)?;
                Ok(Instance::RelationPair { left: l, right: r })
            }
        }
    }

    /// Translates a solution of `apply(source)` back to a solution of
    /// `source`.
    pub fn solution_back(&self, source: &Instance, solution: &Solution) -> Result<Solution> {
        match self {
            Gadget::HsToUcc | Gadget::ConjoinDbPairs | Gadget::DnfToDbPair
            | Gadget::Wa3nsToIndIdentity => match solution {
                Solution::Set { items } => Ok(Solution::set(items.clone())),
                _ => Err(Error::InvalidInput(
                    "expected a set solution to translate".into(),
                )),
            },
            Gadget::UccToFdFixed => {
                let rel = match source {
                    Instance::Relation(r) => r,
                    _ => return Err(Error::InvalidInput("source shape mismatch".into())),
                };
                let counter = fresh_name("a", rel.schema());
                match solution {
                    Solution::Fd { lhs, rhs } if *rhs == counter => {
                        Ok(Solution::set(lhs.clone()))
                    }
                    Solution::Fd { rhs, .. } => Err(Error::InvalidInput(format!(
                        "dependency into '{rhs}' does not target the counter column"
                    ))),
                    _ => Err(Error::InvalidInput("expected a dependency solution".into())),
                }
            }
            Gadget::FdFixedToFd => {
                let fixed = match source {
                    Instance::RelationWithRhs { rhs, .. } => rhs,
                    _ => return Err(Error::InvalidInput("source shape mismatch".into())),
                };
                match solution {
                    Solution::Fd { lhs, rhs } if rhs == fixed => Ok(Solution::Fd {
                        lhs: lhs.clone(),
                        rhs: rhs.clone(),
                    }),
                    Solution::Fd { rhs, .. } => Err(Error::InvalidInput(format!(
                        "dependency into '{rhs}' escaped the masking rows"
                    ))),
                    _ => Err(Error::InvalidInput("expected a dependency solution".into())),
                }
            }
            Gadget::DbToHypergraphUnion => {
                let rel = match source {
                    Instance::Relation(r) => r,
                    _ => return Err(Error::InvalidInput("source shape mismatch".into())),
                };
                match solution {
                    Solution::TaggedSet { items, source } => {
                        if *source >= rel.attr_count() {
                            return Err(Error::InvalidInput(format!(
                                "tag {source} exceeds the schema"
                            )));
                        }
                        Ok(Solution::Fd {
                            lhs: items.clone(),
                            rhs: rel.attr_name(*source as u32).to_string(),
                        })
                    }
                    _ => Err(Error::InvalidInput("expected a tagged set solution".into())),
                }
            }
            Gadget::HypergraphUnionToDb => {
                let graphs = match source {
                    Instance::HypergraphList(gs) => gs,
                    _ => return Err(Error::InvalidInput("source shape mismatch".into())),
                };
                let universe = union_universe(graphs)?;
                let tags = union_tag_names(&universe, graphs.len());
                match solution {
                    Solution::Fd { lhs, rhs } => {
                        let source_index = tags.iter().position(|t| t == rhs).ok_or_else(|| {
                            Error::InvalidInput(format!(
                                "dependency into '{rhs}' does not target a tag column"
                            ))
                        })?;
                        Ok(Solution::TaggedSet {
                            items: lhs.clone(),
                            source: source_index,
                        })
                    }
                    _ => Err(Error::InvalidInput("expected a dependency solution".into())),
                }
            }
            Gadget::IndIdentityToGeneral => match solution {
                Solution::Ind { lhs, mapping } => {
                    if mapping.iter().any(|(a, b)| a != b) {
                        return Err(Error::InvalidInput(
                            "non-identity mapping escaped the marker row".into(),
                        ));
                    }
                    Ok(Solution::set(lhs.clone()))
                }
                Solution::Set { items } => Ok(Solution::set(items.clone())),
                _ => Err(Error::InvalidInput("expected an inclusion solution".into())),
            },
            Gadget::IndToWa3ns => {
                let (r, s) = match source {
                    Instance::RelationPair { left, right } => (left, right),
                    _ => return Err(Error::InvalidInput("source shape mismatch".into())),
                };
                match solution {
                    Solution::Set { items } => {
                        let mut mapping: Vec<(String, String)> = Vec::new();
                        for item in items {
                            let (i, j) = parse_mapping_var(item).ok_or_else(|| {
                                Error::InvalidInput(format!("unrecognized variable '{item}'"))
                            })?;
                            if i >= r.attr_count() || j >= s.attr_count() {
                                return Err(Error::InvalidInput(format!(
                                    "variable '{item}' is out of range"
                                )));
                            }
                            mapping.push((
                                r.attr_name(i as u32).to_string(),
                                s.attr_name(j as u32).to_string(),
                            ));
                        }
                        mapping.sort();
                        Ok(Solution::Ind {
                            lhs: mapping.iter().map(|(a, _)| a.clone()).collect(),
                            mapping,
                        })
                    }
                    _ => Err(Error::InvalidInput("expected an assignment solution".into())),
                }
            }
            Gadget::FdToCnf => Err(Error::InvalidInput(
                "fd_to_cnf is a decision gadget; solutions translate only budget-wise".into(),
            )),
        }
    }
}

fn expect_pair<'a>(instance: &'a Instance, gadget: &str) -> Result<(&'a Relation, &'a Relation)> {
    match instance {
        Instance::RelationPair { left, right } => Ok((left, right)),
        _ => Err(Error::InvalidInput(format!(
            "gadget {gadget} expects a relation pair as its input"
        ))),
    }
}

fn expect_formula<'a>(instance: &'a Instance, gadget: &str) -> Result<&'a Formula> {
    match instance {
        Instance::Formula(phi) => Ok(phi),
        _ => Err(Error::InvalidInput(format!(
            "gadget {gadget} expects a formula as its input"
        ))),
    }
}

fn parse_mapping_var(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix('x')?;
    let (i, j) = rest.split_once('_')?;
    let i: usize = i.parse().ok()?;
    let j: usize = j.parse().ok()?;
    if i == 0 || j == 0 {
        return None;
    }
    Some((i - 1, j - 1))
}
