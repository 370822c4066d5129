//! Relational tables: schema and row model, CSV ingestion, difference sets,
//! and validity checkers for the three dependency kinds.
//!
//! Values are opaque strings compared by exact equality. There is no type
//! inference and no NULL handling; the empty string is an ordinary value.
//! Tables are sets of rows: duplicates are removed on construction.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::hypergraph::{Hypergraph, VertexSet};
use crate::{Error, Result};

/// A set of attribute indices into a relation's schema.
pub type AttrSet = BTreeSet<u32>;

/// A relational table: an ordered schema of attribute names and a set of
/// rows. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RelationRepr", into = "RelationRepr")]
pub struct Relation {
    schema: Vec<String>,
    rows: Vec<Vec<String>>,
}

/// Result of a CSV load: the table plus how many duplicate data rows were
/// dropped to restore set semantics.
#[derive(Debug)]
pub struct CsvLoad {
    pub relation: Relation,
    pub duplicate_rows: usize,
}

/// A functional dependency `lhs -> rhs` over attribute indices. It is
/// non-trivial when `rhs` is not a member of `lhs`; trivial dependencies
/// hold in every table.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Fd {
    pub lhs: AttrSet,
    pub rhs: u32,
}

impl Fd {
    pub fn new(lhs: AttrSet, rhs: u32) -> Self {
        Fd { lhs, rhs }
    }

    pub fn is_trivial(&self) -> bool {
        self.lhs.contains(&self.rhs)
    }
}

/// An inclusion dependency: an injective map from attributes of one schema
/// into attributes of another. The left-hand side is the map's domain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ind {
    pairs: BTreeMap<u32, u32>,
}

impl Ind {
    /// Builds an inclusion dependency from (source attribute, target
    /// attribute) pairs; the target side must not repeat.
    pub fn new(pairs: BTreeMap<u32, u32>) -> Result<Self> {
        let mut images = BTreeSet::new();
        for &img in pairs.values() {
            if !images.insert(img) {
                return Err(Error::InvalidInput(
                    "column mapping is not injective".into(),
                ));
            }
        }
        Ok(Ind { pairs })
    }

    /// The identity mapping on the given attributes.
    pub fn identity(attrs: &AttrSet) -> Self {
        Ind {
            pairs: attrs.iter().map(|&a| (a, a)).collect(),
        }
    }

    pub fn pairs(&self) -> &BTreeMap<u32, u32> {
        &self.pairs
    }

    pub fn lhs(&self) -> AttrSet {
        self.pairs.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.iter().all(|(a, b)| a == b)
    }

    /// The partial order on inclusion dependencies: true iff `self`'s pairs
    /// are a subset of `other`'s, i.e. `other` restricted to `self`'s
    /// left-hand side is exactly `self`.
    pub fn is_restriction_of(&self, other: &Ind) -> bool {
        self.pairs
            .iter()
            .all(|(a, b)| other.pairs.get(a) == Some(b))
    }
}

impl Relation {
    /// Builds a table, validating the schema and row arity. Duplicate rows
    /// collapse to their first occurrence.
    pub fn new(schema: Vec<String>, rows: Vec<Vec<String>>) -> Result<Self> {
        Ok(Self::build(schema, rows)?.0)
    }

    fn build(schema: Vec<String>, rows: Vec<Vec<String>>) -> Result<(Self, usize)> {
        if schema.is_empty() {
            return Err(Error::InvalidInput("empty header".into()));
        }
        let mut seen = BTreeSet::new();
        for name in &schema {
            if name.is_empty() {
                return Err(Error::InvalidInput("empty attribute name".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidInput(format!(
                    "duplicate attribute name '{name}'"
                )));
            }
        }
        for row in &rows {
            if row.len() != schema.len() {
                return Err(Error::InvalidInput(format!(
                    "ragged row: {} values for {} attributes",
                    row.len(),
                    schema.len()
                )));
            }
        }
        let mut deduped: Vec<Vec<String>> = Vec::new();
        let mut seen_rows: HashSet<Vec<String>> = HashSet::new();
        let mut duplicates = 0usize;
        for row in rows {
            if seen_rows.insert(row.clone()) {
                deduped.push(row);
            } else {
                duplicates += 1;
            }
        }
        Ok((
            Relation {
                schema,
                rows: deduped,
            },
            duplicates,
        ))
    }

    pub fn schema(&self) -> &[String] {
        &self.schema
    }

    pub fn rows(&self) -> &[Vec<String>] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn attr_count(&self) -> usize {
        self.schema.len()
    }

    pub fn attr_index(&self, name: &str) -> Option<u32> {
        self.schema.iter().position(|a| a == name).map(|i| i as u32)
    }

    pub fn attr_name(&self, a: u32) -> &str {
        &self.schema[a as usize]
    }

    pub fn names_of(&self, attrs: &AttrSet) -> Vec<String> {
        attrs
            .iter()
            .map(|&a| self.schema[a as usize].clone())
            .collect()
    }

    /// Resolves attribute names to an index set; unknown names are an error.
    pub fn attr_set_from_names<'a>(
        &self,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<AttrSet> {
        names
            .into_iter()
            .map(|n| {
                self.attr_index(n)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown attribute '{n}'")))
            })
            .collect()
    }

    /// Every value in the table, row-major.
    pub fn values(&self) -> impl Iterator<Item = &str> {
        self.rows.iter().flat_map(|r| r.iter().map(|v| v.as_str()))
    }

    fn check_attr(&self, a: u32) -> Result<()> {
        if (a as usize) < self.schema.len() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "attribute index {a} out of range"
            )))
        }
    }

    fn check_attrs(&self, attrs: &AttrSet) -> Result<()> {
        attrs.iter().try_for_each(|&a| self.check_attr(a))
    }

    /// The set of attributes on which two distinct rows disagree. Never
    /// empty, since the rows of a table are pairwise distinct.
    pub fn difference_set(&self, r: usize, s: usize) -> Result<AttrSet> {
        if r >= self.rows.len() || s >= self.rows.len() {
            return Err(Error::InvalidInput("row index out of range".into()));
        }
        if r == s {
            return Err(Error::InvalidInput(
                "difference set requires two distinct rows".into(),
            ));
        }
        Ok((0..self.schema.len() as u32)
            .filter(|&a| self.rows[r][a as usize] != self.rows[s][a as usize])
            .collect())
    }

    /// The hypergraph of inclusion-wise minimal difference sets, over the
    /// schema as vertex set. A table with at most one row has no edges.
    pub fn minimal_difference_sets(&self) -> Hypergraph {
        let mut edges: Vec<VertexSet> = Vec::new();
        for r in 0..self.rows.len() {
            for s in (r + 1)..self.rows.len() {
                let d = self.difference_set(r, s).expect("indices in range");
                if !edges.contains(&d) {
                    edges.push(d);
                }
            }
        }
        Hypergraph::new(self.schema.clone(), edges)
            .expect("schema names are valid vertex names")
            .minimize()
    }

    /// The hypergraph of minimized punctured difference sets for `a`: the
    /// difference sets of row pairs that disagree on `a`, with `a` removed,
    /// over the universe `schema \ {a}`. May contain the empty edge when a
    /// pair disagrees only on `a`.
    pub fn punctured_difference_sets(&self, a: u32) -> Result<Hypergraph> {
        self.check_attr(a)?;
        let universe: Vec<String> = self
            .schema
            .iter()
            .enumerate()
            .filter(|&(i, _)| i as u32 != a)
            .map(|(_, name)| name.clone())
            .collect();
        // Old index -> punctured index (indices above `a` shift down one).
        let reindex = |v: u32| if v < a { v } else { v - 1 };
        let mut edges: Vec<VertexSet> = Vec::new();
        for r in 0..self.rows.len() {
            for s in (r + 1)..self.rows.len() {
                if self.rows[r][a as usize] == self.rows[s][a as usize] {
                    continue;
                }
                let d: VertexSet = self
                    .difference_set(r, s)
                    .expect("indices in range")
                    .into_iter()
                    .filter(|&v| v != a)
                    .map(reindex)
                    .collect();
                if !edges.contains(&d) {
                    edges.push(d);
                }
            }
        }
        Ok(Hypergraph::new(universe, edges)
            .expect("punctured names are valid")
            .minimize())
    }

    /// True iff the projections of all rows onto `attrs` are pairwise
    /// distinct. Vacuously true for tables with at most one row.
    pub fn is_ucc(&self, attrs: &AttrSet) -> Result<bool> {
        self.check_attrs(attrs)?;
        let mut seen: HashSet<Vec<&str>> = HashSet::with_capacity(self.rows.len());
        for row in &self.rows {
            let proj: Vec<&str> = attrs.iter().map(|&a| row[a as usize].as_str()).collect();
            if !seen.insert(proj) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff no pair of rows agrees on the left-hand side while
    /// disagreeing on the right-hand side. `{} -> a` holds iff column `a`
    /// is constant; trivial dependencies always hold.
    pub fn is_valid_fd(&self, fd: &Fd) -> Result<bool> {
        self.check_attrs(&fd.lhs)?;
        self.check_attr(fd.rhs)?;
        if fd.is_trivial() {
            return Ok(true);
        }
        let mut groups: HashMap<Vec<&str>, &str> = HashMap::new();
        for row in &self.rows {
            let key: Vec<&str> = fd.lhs.iter().map(|&a| row[a as usize].as_str()).collect();
            let rhs_val = row[fd.rhs as usize].as_str();
            match groups.get(key.as_slice()) {
                Some(&prev) if prev != rhs_val => return Ok(false),
                Some(_) => {}
                None => {
                    groups.insert(key, rhs_val);
                }
            }
        }
        Ok(true)
    }

    /// True iff every row of `self` has a row of `other` agreeing under the
    /// mapping on all mapped attributes. Multiplicities are irrelevant. The
    /// empty dependency holds exactly when a witness row exists for each row
    /// of `self`, i.e. unless `self` is non-empty and `other` is empty.
    pub fn is_ind(&self, other: &Relation, ind: &Ind) -> Result<bool> {
        for (&a, &b) in ind.pairs() {
            self.check_attr(a)?;
            other.check_attr(b)?;
        }
        let mut targets: HashSet<Vec<&str>> = HashSet::with_capacity(other.rows.len());
        for row in &other.rows {
            targets.insert(ind.pairs().values().map(|&b| row[b as usize].as_str()).collect());
        }
        Ok(self.rows.iter().all(|row| {
            let proj: Vec<&str> = ind.pairs().keys().map(|&a| row[a as usize].as_str()).collect();
            targets.contains(proj.as_slice())
        }))
    }

    // -- CSV ----------------------------------------------------------------

    /// Loads a table from CSV (RFC 4180 subset, quoted fields supported,
    /// UTF-8). The first record is the header. Duplicate data rows are
    /// dropped and counted; ragged rows, duplicate attribute names, and an
    /// empty header are errors.
    pub fn from_csv_reader(reader: impl Read) -> Result<CsvLoad> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(false)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
            return Err(Error::InvalidInput("empty header".into()));
        }
        let schema: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
        let mut rows = Vec::new();
        for record in rdr.records() {
            let record = record?;
            rows.push(record.iter().map(|f| f.to_string()).collect());
        }
        let (relation, duplicate_rows) = Relation::build(schema, rows)?;
        Ok(CsvLoad {
            relation,
            duplicate_rows,
        })
    }

    pub fn from_csv_str(s: &str) -> Result<CsvLoad> {
        Self::from_csv_reader(s.as_bytes())
    }

    pub fn to_csv_string(&self) -> String {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        wtr.write_record(&self.schema).expect("in-memory write");
        for row in &self.rows {
            wtr.write_record(row).expect("in-memory write");
        }
        String::from_utf8(wtr.into_inner().expect("in-memory flush"))
            .expect("csv output is UTF-8")
    }

    // -- JSON ---------------------------------------------------------------

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("relation serialization cannot fail")
    }
}

/// Wire form of a relation: `{"schema":[...],"rows":[[...],...]}`.
#[derive(Serialize, Deserialize)]
struct RelationRepr {
    schema: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl From<Relation> for RelationRepr {
    fn from(r: Relation) -> Self {
        RelationRepr {
            schema: r.schema,
            rows: r.rows,
        }
    }
}

impl TryFrom<RelationRepr> for Relation {
    type Error = Error;

    fn try_from(repr: RelationRepr) -> Result<Self> {
        Relation::new(repr.schema, repr.rows)
    }
}

/// Convenience constructor used across tests and gadgets.
pub fn relation_from(schema: &[&str], rows: &[&[&str]]) -> Relation {
    Relation::new(
        schema.iter().map(|s| s.to_string()).collect(),
        rows.iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect(),
    )
    .expect("literal table is well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn attrs(vals: &[u32]) -> AttrSet {
        vals.iter().copied().collect()
    }

    #[test]
    fn csv_load_dedupes_and_counts() {
        let load = Relation::from_csv_str("a,b\n0,1\n0,1\n").unwrap();
        assert_eq!(load.relation.row_count(), 1);
        assert_eq!(load.duplicate_rows, 1);
    }

    #[test]
    fn csv_empty_string_is_a_value() {
        let load = Relation::from_csv_str("a\nx\n\"\"\n").unwrap();
        assert_eq!(load.relation.row_count(), 2);
        assert_eq!(load.relation.rows()[1][0], "");
    }

    #[test]
    fn csv_rejects_bad_shapes() {
        assert!(Relation::from_csv_str("a,b\n0\n").is_err());
        assert!(Relation::from_csv_str("a,a\n0,1\n").is_err());
        assert!(Relation::from_csv_str("").is_err());
    }

    #[test]
    fn csv_round_trips_exactly() {
        let r = relation_from(&["a", "b"], &[&["!f0", ""], &["x,y", "q\"t"]]);
        let csv = r.to_csv_string();
        let back = Relation::from_csv_str(&csv).unwrap();
        assert_eq!(back.relation, r);
        assert_eq!(back.duplicate_rows, 0);
    }

    #[test]
    fn json_round_trips_exactly() {
        let r = relation_from(&["a", "b"], &[&["!f0", ""], &["0", "1"]]);
        let json = r.to_json_string();
        assert_eq!(json, r#"{"schema":["a","b"],"rows":[["!f0",""],["0","1"]]}"#);
        assert_eq!(Relation::from_json_str(&json).unwrap(), r);
    }

    #[test]
    fn difference_sets() {
        let r = relation_from(&["a", "b"], &[&["0", "1"], &["0", "2"]]);
        assert_eq!(r.difference_set(0, 1).unwrap(), attrs(&[1]));

        let r = relation_from(&["a", "b"], &[&["1", "1"], &["2", "2"]]);
        assert_eq!(r.difference_set(0, 1).unwrap(), attrs(&[0, 1]));
        assert!(r.difference_set(0, 0).is_err());
    }

    #[test]
    fn minimal_difference_sets_examples() {
        let r = relation_from(
            &["a", "b", "c"],
            &[&["0", "0", "0"], &["1", "1", "0"], &["0", "2", "2"]],
        );
        let d = r.minimal_difference_sets();
        let got: BTreeSet<VertexSet> = d.edges().iter().cloned().collect();
        let expected: BTreeSet<VertexSet> =
            [attrs(&[0, 1]), attrs(&[1, 2])].into_iter().collect();
        assert_eq!(got, expected);

        let single = relation_from(&["a"], &[&["x"]]);
        assert!(single.minimal_difference_sets().edges().is_empty());

        let two = relation_from(&["a"], &[&["0"], &["1"]]);
        assert_eq!(two.minimal_difference_sets().edges(), &[attrs(&[0])]);
    }

    #[test]
    fn punctured_difference_sets_examples() {
        let r = relation_from(&["a", "b"], &[&["0", "0"], &["1", "1"]]);
        let d = r.punctured_difference_sets(0).unwrap();
        assert_eq!(d.vertices(), &["b"]);
        assert_eq!(d.edges(), &[attrs(&[0])]);

        let r = relation_from(&["a", "b"], &[&["0", "0"], &["1", "0"]]);
        let d = r.punctured_difference_sets(0).unwrap();
        assert_eq!(d.edges(), &[VertexSet::new()]);

        // Pairs disagreeing on c are (row0,row2) and (row1,row2); their
        // punctured sets are {b} and {a,b}, so minimization keeps {b}.
        let r = relation_from(
            &["a", "b", "c"],
            &[&["0", "0", "0"], &["1", "1", "0"], &["0", "2", "2"]],
        );
        let d = r.punctured_difference_sets(2).unwrap();
        assert_eq!(d.vertices(), &["a", "b"]);
        assert_eq!(d.edges(), &[attrs(&[1])]);

        assert!(r.punctured_difference_sets(9).is_err());
    }

    #[test]
    fn ucc_checks() {
        let r = relation_from(&["a", "b"], &[&["0", "0"], &["0", "1"]]);
        assert!(r.is_ucc(&attrs(&[1])).unwrap());
        assert!(!r.is_ucc(&attrs(&[0])).unwrap());
        assert!(r.is_ucc(&attrs(&[0, 1])).unwrap());
        assert!(!r.is_ucc(&attrs(&[])).unwrap());

        let single = relation_from(&["a"], &[&["x"]]);
        assert!(single.is_ucc(&attrs(&[])).unwrap());
        assert!(r.is_ucc(&attrs(&[5])).is_err());
    }

    #[test]
    fn fd_checks() {
        let r = relation_from(&["a", "b"], &[&["0", "0"], &["1", "0"]]);
        assert!(r.is_valid_fd(&Fd::new(attrs(&[]), 1)).unwrap());
        assert!(!r.is_valid_fd(&Fd::new(attrs(&[1]), 0)).unwrap());

        let r = relation_from(&["a", "b"], &[&["0", "0"], &["1", "1"]]);
        assert!(r.is_valid_fd(&Fd::new(attrs(&[0]), 1)).unwrap());
        // Trivial dependencies hold everywhere.
        assert!(r.is_valid_fd(&Fd::new(attrs(&[0]), 0)).unwrap());
        assert!(r.is_valid_fd(&Fd::new(attrs(&[9]), 0)).is_err());
    }

    #[test]
    fn ind_checks() {
        let r = relation_from(&["a", "b"], &[&["0", "1"]]);
        let s = relation_from(&["a", "b"], &[&["0", "2"], &["5", "1"]]);
        assert!(r.is_ind(&s, &Ind::identity(&attrs(&[0]))).unwrap());
        assert!(!r.is_ind(&s, &Ind::identity(&attrs(&[0, 1]))).unwrap());
        assert!(r.is_ind(&s, &Ind::identity(&attrs(&[]))).unwrap());

        // Cross-column mapping a -> b.
        let cross = Ind::new([(0u32, 1u32)].into_iter().collect()).unwrap();
        let t = relation_from(&["a", "b"], &[&["9", "0"]]);
        assert!(r.is_ind(&t, &cross).unwrap());

        // The empty dependency needs a witness row when `r` is non-empty.
        let empty = Relation::new(vec!["a".into(), "b".into()], vec![]).unwrap();
        assert!(!r.is_ind(&empty, &Ind::identity(&attrs(&[]))).unwrap());
        assert!(empty.is_ind(&r, &Ind::identity(&attrs(&[0, 1]))).unwrap());

        assert!(Ind::new([(0u32, 1u32), (1, 1)].into_iter().collect()).is_err());
    }

    #[test]
    fn ucc_is_hitting_set_of_difference_sets() {
        let r = relation_from(
            &["a", "b", "c"],
            &[&["0", "0", "0"], &["1", "1", "0"], &["0", "2", "2"]],
        );
        let d = r.minimal_difference_sets();
        for mask in 0u32..(1 << 3) {
            let set: AttrSet = (0..3u32).filter(|&i| mask & (1 << i) != 0).collect();
            assert_eq!(
                r.is_ucc(&set).unwrap(),
                d.is_hitting_set(&set).unwrap(),
                "mask {mask:b}"
            );
        }
    }

    #[test]
    fn fd_is_hitting_set_of_punctured_sets() {
        let r = relation_from(
            &["a", "b", "c"],
            &[&["0", "0", "1"], &["1", "0", "0"], &["0", "2", "2"], &["1", "2", "2"]],
        );
        for a in 0..3u32 {
            let d = r.punctured_difference_sets(a).unwrap();
            let others: Vec<u32> = (0..3u32).filter(|&x| x != a).collect();
            for mask in 0u32..(1 << others.len()) {
                let lhs: AttrSet = others
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &x)| x)
                    .collect();
                // Re-index the lhs into the punctured universe for the
                // hitting-set side.
                let punctured: VertexSet =
                    lhs.iter().map(|&x| if x < a { x } else { x - 1 }).collect();
                assert_eq!(
                    r.is_valid_fd(&Fd::new(lhs.clone(), a)).unwrap(),
                    d.is_hitting_set(&punctured).unwrap(),
                    "rhs {a}, lhs {lhs:?}"
                );
            }
        }
    }

    #[test]
    fn ind_restriction_order() {
        let big = Ind::new([(0u32, 1u32), (1, 0)].into_iter().collect()).unwrap();
        let small = Ind::new([(0u32, 1u32)].into_iter().collect()).unwrap();
        let other = Ind::new([(0u32, 0u32)].into_iter().collect()).unwrap();
        assert!(small.is_restriction_of(&big));
        assert!(!big.is_restriction_of(&small));
        assert!(!other.is_restriction_of(&big));
        assert!(Ind::identity(&attrs(&[])).is_restriction_of(&small));
    }
}
