//! Boolean formulas in 3-normalized shape: a conjunction of blocks, each
//! block a disjunction of terms, each term a conjunction of literals.
//!
//! The profiling core only needs the antimonotone fragment (negative
//! literals only), whose satisfying assignments are closed under turning
//! variables false. General literals are supported so that CNF encodings
//! with positive right-hand-side variables are representable and checkable
//! through [`Formula::weighted_sat`]; they are excluded from
//! maximal-assignment enumeration.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::hypergraph::{Hypergraph, VertexSet};
use crate::{Error, Result};

/// An assignment, identified with the set of variables set to true.
pub type Assignment = BTreeSet<u32>;

/// Default variable bound for exhaustive satisfiability scans.
pub const DEFAULT_ORACLE_VARIABLES: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Literal {
    pub var: u32,
    pub negated: bool,
}

impl Literal {
    pub fn neg(var: u32) -> Self {
        Literal { var, negated: true }
    }

    pub fn pos(var: u32) -> Self {
        Literal {
            var,
            negated: false,
        }
    }
}

/// A term: a conjunction of literals. Literal order is preserved from
/// construction (it matters for textual round-trips); equality of terms for
/// deduplication is order-insensitive.
pub type Term = Vec<Literal>;

/// A 3-normalized Boolean formula over named variables.
///
/// `blocks` is the top-level conjunction; each block is a disjunction of
/// terms. A formula with zero blocks is true, a block with zero terms is
/// unsatisfiable, and a term with zero literals is true.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FormulaRepr", into = "FormulaRepr")]
pub struct Formula {
    variables: Vec<String>,
    blocks: Vec<Vec<Term>>,
}

impl Formula {
    /// Builds a formula, validating variable names and indices. Duplicate
    /// literals inside a term and duplicate terms inside a block (compared
    /// as sets) collapse to their first occurrence.
    pub fn new(variables: Vec<String>, blocks: Vec<Vec<Term>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for name in &variables {
            if name.is_empty() {
                return Err(Error::InvalidInput("empty variable name".into()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidInput(format!(
                    "duplicate variable name '{name}'"
                )));
            }
        }
        let n = variables.len() as u32;
        let mut clean_blocks = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut clean_terms: Vec<Term> = Vec::new();
            let mut term_keys: Vec<BTreeSet<Literal>> = Vec::new();
            for term in block {
                let mut clean: Term = Vec::new();
                for lit in term {
                    if lit.var >= n {
                        return Err(Error::InvalidInput(format!(
                            "literal variable index {} out of range",
                            lit.var
                        )));
                    }
                    if !clean.contains(&lit) {
                        clean.push(lit);
                    }
                }
                let key: BTreeSet<Literal> = clean.iter().copied().collect();
                if !term_keys.contains(&key) {
                    term_keys.push(key);
                    clean_terms.push(clean);
                }
            }
            clean_blocks.push(clean_terms);
        }
        Ok(Formula {
            variables,
            blocks: clean_blocks,
        })
    }

    /// Builds an antimonotone formula from blocks of variable sets; each set
    /// becomes the conjunction of the negative literals of its variables.
    pub fn antimonotone(variables: Vec<String>, blocks: Vec<Vec<VertexSet>>) -> Result<Self> {
        let lit_blocks = blocks
            .into_iter()
            .map(|block| {
                block
                    .into_iter()
                    .map(|vars| vars.into_iter().map(Literal::neg).collect())
                    .collect()
            })
            .collect();
        Formula::new(variables, lit_blocks)
    }

    /// Builds a CNF formula: each clause (a disjunction of literals) becomes
    /// a block of singleton terms.
    pub fn cnf(variables: Vec<String>, clauses: Vec<Vec<Literal>>) -> Result<Self> {
        let blocks = clauses
            .into_iter()
            .map(|clause| clause.into_iter().map(|lit| vec![lit]).collect())
            .collect();
        Formula::new(variables, blocks)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    pub fn blocks(&self) -> &[Vec<Term>] {
        &self.blocks
    }

    pub fn variable_index(&self, name: &str) -> Option<u32> {
        self.variables.iter().position(|v| v == name).map(|i| i as u32)
    }

    pub fn variable_name(&self, v: u32) -> &str {
        &self.variables[v as usize]
    }

    pub fn names_of(&self, assignment: &Assignment) -> Vec<String> {
        assignment
            .iter()
            .map(|&v| self.variables[v as usize].clone())
            .collect()
    }

    pub fn assignment_from_names<'a>(
        &self,
        names: impl IntoIterator<Item = &'a str>,
    ) -> Result<Assignment> {
        names
            .into_iter()
            .map(|n| {
                self.variable_index(n)
                    .ok_or_else(|| Error::InvalidInput(format!("undeclared variable '{n}'")))
            })
            .collect()
    }

    /// True iff every literal is negative.
    pub fn is_antimonotone(&self) -> bool {
        self.blocks
            .iter()
            .flatten()
            .flatten()
            .all(|lit| lit.negated)
    }

    /// True iff every term is a single literal, i.e. the formula is a
    /// conjunction of clauses.
    pub fn is_cnf(&self) -> bool {
        self.blocks.iter().flatten().all(|term| term.len() == 1)
    }

    /// Standard Boolean semantics over the set of true variables.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<bool> {
        let n = self.variables.len() as u32;
        if let Some(&v) = assignment.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidInput(format!(
                "undeclared variable index {v} in assignment"
            )));
        }
        Ok(self.eval_unchecked(assignment))
    }

    fn eval_unchecked(&self, assignment: &Assignment) -> bool {
        self.blocks.iter().all(|block| {
            block.iter().any(|term| {
                term.iter()
                    .all(|lit| assignment.contains(&lit.var) != lit.negated)
            })
        })
    }

    /// Decides whether some assignment of Hamming weight exactly `k`
    /// satisfies the formula, by scanning all weight-`k` assignments.
    /// Refuses formulas with more than `max_vars` variables.
    pub fn weighted_sat(&self, k: usize, max_vars: usize) -> Result<bool> {
        let n = self.variables.len();
        if n > max_vars {
            return Err(Error::OracleBound {
                what: "formula variables",
                size: n,
                bound: max_vars,
            });
        }
        if k > n {
            return Ok(false);
        }
        let mut chosen: Vec<u32> = Vec::with_capacity(k);
        Ok(self.weighted_sat_rec(0, k, &mut chosen))
    }

    fn weighted_sat_rec(&self, next: u32, remaining: usize, chosen: &mut Vec<u32>) -> bool {
        if remaining == 0 {
            let assignment: Assignment = chosen.iter().copied().collect();
            return self.eval_unchecked(&assignment);
        }
        let n = self.variables.len() as u32;
        if n - next < remaining as u32 {
            return false;
        }
        for v in next..n {
            chosen.push(v);
            if self.weighted_sat_rec(v + 1, remaining - 1, chosen) {
                chosen.pop();
                return true;
            }
            chosen.pop();
        }
        false
    }

    /// All inclusion-wise maximal satisfying assignments of an antimonotone
    /// formula, each exactly once, sorted lexicographically by variable
    /// index.
    ///
    /// Candidates are the complements of unions picking one term per block;
    /// keeping only inclusion-minimal partial unions at every block bounds
    /// the product. A block without terms is unsatisfiable, so nothing is
    /// emitted; a formula without blocks is satisfied by everything, so the
    /// full variable set is the single maximal assignment.
    pub fn maximal_satisfying_assignments(&self) -> Result<Vec<Assignment>> {
        if !self.is_antimonotone() {
            return Err(Error::InvalidInput(
                "maximal-assignment enumeration requires an antimonotone formula".into(),
            ));
        }
        if self.blocks.iter().any(|b| b.is_empty()) {
            return Ok(Vec::new());
        }
        let mut unions: Vec<VertexSet> = vec![VertexSet::new()];
        for block in &self.blocks {
            let mut next: Vec<VertexSet> = Vec::new();
            for partial in &unions {
                for term in block {
                    let mut joined = partial.clone();
                    joined.extend(term.iter().map(|lit| lit.var));
                    if !next.contains(&joined) {
                        next.push(joined);
                    }
                }
            }
            unions = minimal_sets(next);
        }
        let all: VertexSet = (0..self.variables.len() as u32).collect();
        let mut out: Vec<Assignment> = unions
            .into_iter()
            .map(|u| all.difference(&u).copied().collect())
            .collect();
        out.sort();
        Ok(out)
    }
}

/// Keeps the inclusion-wise minimal sets of a family, preserving first
/// occurrences.
fn minimal_sets(sets: Vec<VertexSet>) -> Vec<VertexSet> {
    sets.iter()
        .filter(|s| !sets.iter().any(|other| *other != **s && other.is_subset(s)))
        .cloned()
        .collect()
}

/// Reads an antimonotone CNF formula as a hypergraph: clause variable sets
/// become edges over the variables as vertices. Maximal satisfying
/// assignments of the formula are exactly the complements of the minimal
/// transversals of the result.
pub fn antimonotone_cnf_to_hypergraph(phi: &Formula) -> Result<Hypergraph> {
    if !phi.is_cnf() || !phi.is_antimonotone() {
        return Err(Error::InvalidInput(
            "expected an antimonotone formula in conjunctive normal form".into(),
        ));
    }
    let edges = phi
        .blocks()
        .iter()
        .map(|block| block.iter().map(|term| term[0].var).collect())
        .collect();
    Hypergraph::new(phi.variables().to_vec(), edges)
}

/// The inverse transcription: every edge becomes the clause of the negated
/// variables of its vertices.
pub fn hypergraph_to_antimonotone_cnf(h: &Hypergraph) -> Formula {
    let clauses = h
        .edges()
        .iter()
        .map(|e| e.iter().map(|&v| Literal::neg(v)).collect())
        .collect();
    Formula::cnf(h.vertices().to_vec(), clauses).expect("hypergraph vertices are valid variables")
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

#[derive(Debug, PartialEq)]
enum Tok {
    Ident(String),
    And,
    Or,
    Not,
    Open,
    Close,
}

fn tokenize(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '&' => {
                chars.next();
                toks.push(Tok::And);
            }
            '|' => {
                chars.next();
                toks.push(Tok::Or);
            }
            '!' => {
                chars.next();
                toks.push(Tok::Not);
            }
            '(' => {
                chars.next();
                toks.push(Tok::Open);
            }
            ')' => {
                chars.next();
                toks.push(Tok::Close);
            }
            _ => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if matches!(c, ' ' | '\t' | '\n' | '\r' | '&' | '|' | '!' | '(' | ')') {
                        break;
                    }
                    ident.push(c);
                    chars.next();
                }
                toks.push(Tok::Ident(ident));
            }
        }
    }
    Ok(toks)
}

/// Parse tree with grouping preserved: parentheses decide which level of
/// the 3-normalized structure an operand belongs to.
#[derive(Debug)]
enum Expr {
    Lit { name: String, negated: bool },
    And(Vec<Expr>),
    Or(Vec<Expr>),
    Group(Box<Expr>),
    Empty,
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn or_expr(&mut self) -> Result<Expr> {
        if matches!(self.peek(), Some(Tok::Close)) {
            return Ok(Expr::Empty);
        }
        let mut items = vec![self.and_expr()?];
        while matches!(self.peek(), Some(Tok::Or)) {
            self.pos += 1;
            items.push(self.and_expr()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::Or(items)
        })
    }

    fn and_expr(&mut self) -> Result<Expr> {
        let mut items = vec![self.atom()?];
        while matches!(self.peek(), Some(Tok::And)) {
            self.pos += 1;
            items.push(self.atom()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Expr::And(items)
        })
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos) {
            Some(Tok::Not) => {
                self.pos += 1;
                match self.toks.get(self.pos) {
                    Some(Tok::Ident(name)) => {
                        let name = name.clone();
                        self.pos += 1;
                        Ok(Expr::Lit {
                            name,
                            negated: true,
                        })
                    }
                    _ => Err(Error::Parse("expected a variable after '!'".into())),
                }
            }
            Some(Tok::Ident(name)) => {
                let name = name.clone();
                self.pos += 1;
                Ok(Expr::Lit {
                    name,
                    negated: false,
                })
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.or_expr()?;
                match self.toks.get(self.pos) {
                    Some(Tok::Close) => {
                        self.pos += 1;
                        Ok(Expr::Group(Box::new(inner)))
                    }
                    _ => Err(Error::Parse("unbalanced parenthesis".into())),
                }
            }
            other => Err(Error::Parse(format!(
                "unexpected token {other:?} where an operand was expected"
            ))),
        }
    }
}

impl Formula {
    /// Parses the operator text format: `!` for negation, `&`/`|` for the
    /// connectives, parentheses for grouping. The top level is a
    /// conjunction of blocks, each a parenthesized disjunction of terms;
    /// a multi-literal term is itself parenthesized, e.g.
    /// `((!x1 & !x2) | !x3) & (!x4)`. Variables are ordered by first
    /// appearance. An empty input is the formula with no blocks; a bare
    /// `()` conjunct is a block with no terms.
    pub fn parse_text(input: &str) -> Result<Self> {
        let toks = tokenize(input)?;
        if toks.is_empty() {
            return Formula::new(Vec::new(), Vec::new());
        }
        let mut parser = Parser { toks, pos: 0 };
        let top = parser.or_expr()?;
        if parser.pos != parser.toks.len() {
            return Err(Error::Parse("trailing tokens after the formula".into()));
        }
        let mut builder = Builder::default();
        let conjuncts = match top {
            Expr::And(items) => items,
            other => vec![other],
        };
        let blocks = conjuncts
            .into_iter()
            .map(|c| builder.block(c))
            .collect::<Result<Vec<_>>>()?;
        Formula::new(builder.variables, blocks)
    }

    /// Renders the text format; [`Formula::parse_text`] reproduces the
    /// structure exactly.
    pub fn to_text(&self) -> String {
        let block_strings: Vec<String> = self
            .blocks
            .iter()
            .map(|block| {
                let terms: Vec<String> = block
                    .iter()
                    .map(|term| {
                        let lits: Vec<String> = term
                            .iter()
                            .map(|lit| {
                                let mark = if lit.negated { "!" } else { "" };
                                format!("{mark}{}", self.variables[lit.var as usize])
                            })
                            .collect();
                        match lits.len() {
                            0 => "()".to_string(),
                            1 => lits.into_iter().next().unwrap(),
                            _ => format!("({})", lits.join(" & ")),
                        }
                    })
                    .collect();
                format!("({})", terms.join(" | "))
            })
            .collect();
        block_strings.join(" & ")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("formula serialization cannot fail")
    }
}

#[derive(Default)]
struct Builder {
    variables: Vec<String>,
}

impl Builder {
    fn var(&mut self, name: String) -> u32 {
        if let Some(i) = self.variables.iter().position(|v| *v == name) {
            i as u32
        } else {
            self.variables.push(name);
            (self.variables.len() - 1) as u32
        }
    }

    fn block(&mut self, expr: Expr) -> Result<Vec<Term>> {
        let inner = match expr {
            Expr::Group(g) => *g,
            other => other,
        };
        match inner {
            Expr::Empty => Ok(Vec::new()),
            Expr::Or(items) => items.into_iter().map(|t| self.term(t)).collect(),
            other => Ok(vec![self.term(other)?]),
        }
    }

    fn term(&mut self, expr: Expr) -> Result<Term> {
        let inner = match expr {
            Expr::Group(g) => *g,
            other => other,
        };
        match inner {
            Expr::Empty => Ok(Vec::new()),
            Expr::And(items) => items.into_iter().map(|l| self.literal(l)).collect(),
            other => Ok(vec![self.literal(other)?]),
        }
    }

    fn literal(&mut self, expr: Expr) -> Result<Literal> {
        match expr {
            Expr::Lit { name, negated } => Ok(Literal {
                var: self.var(name),
                negated,
            }),
            _ => Err(Error::Parse(
                "formula is nested deeper than three levels".into(),
            )),
        }
    }
}

// ---------------------------------------------------------------------------
// JSON format
// ---------------------------------------------------------------------------

/// Wire form mirroring the nesting; literals are strings with an optional
/// `!` prefix: `{"variables":["x1"],"blocks":[[["!x1"]]]}`.
#[derive(Serialize, Deserialize)]
struct FormulaRepr {
    variables: Vec<String>,
    blocks: Vec<Vec<Vec<String>>>,
}

impl From<Formula> for FormulaRepr {
    fn from(f: Formula) -> Self {
        let blocks = f
            .blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|term| {
                        term.iter()
                            .map(|lit| {
                                let mark = if lit.negated { "!" } else { "" };
                                format!("{mark}{}", f.variables[lit.var as usize])
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        FormulaRepr {
            variables: f.variables,
            blocks,
        }
    }
}

impl TryFrom<FormulaRepr> for Formula {
    type Error = Error;

    fn try_from(repr: FormulaRepr) -> Result<Self> {
        let index = |name: &str| -> Result<u32> {
            repr.variables
                .iter()
                .position(|v| v == name)
                .map(|i| i as u32)
                .ok_or_else(|| Error::Parse(format!("undeclared variable '{name}' in literal")))
        };
        let mut blocks = Vec::with_capacity(repr.blocks.len());
        for block in &repr.blocks {
            let mut terms = Vec::with_capacity(block.len());
            for term in block {
                let mut lits = Vec::with_capacity(term.len());
                for lit in term {
                    let (negated, name) = match lit.strip_prefix('!') {
                        Some(rest) => (true, rest),
                        None => (false, lit.as_str()),
                    };
                    lits.push(Literal {
                        var: index(name)?,
                        negated,
                    });
                }
                terms.push(lits);
            }
            blocks.push(terms);
        }
        Formula::new(repr.variables.clone(), blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "((!x1 & !x2 & !x4) | (!x3 & !x4)) & ((!x1 & !x3) | (!x2 & !x5) | (!x1 & !x4 & !x5))";

    fn assignment(phi: &Formula, names: &[&str]) -> Assignment {
        phi.assignment_from_names(names.iter().copied()).unwrap()
    }

    #[test]
    fn parse_is_bit_exact_on_the_sample() {
        let phi = Formula::parse_text(SAMPLE).unwrap();
        assert_eq!(phi.blocks().len(), 2);
        assert_eq!(phi.blocks()[0].len(), 2);
        assert_eq!(phi.blocks()[1].len(), 3);
        assert_eq!(phi.to_text(), SAMPLE);
        assert!(phi.is_antimonotone());
        assert!(!phi.is_cnf());
    }

    #[test]
    fn evaluate_sample_assignments() {
        let phi = Formula::parse_text(SAMPLE).unwrap();
        assert!(phi.evaluate(&assignment(&phi, &["x3"])).unwrap());
        assert!(phi.evaluate(&Assignment::new()).unwrap());
        assert!(!phi.evaluate(&assignment(&phi, &["x4"])).unwrap());

        let one = Formula::parse_text("(!x1)").unwrap();
        assert!(!one.evaluate(&assignment(&one, &["x1"])).unwrap());
        assert!(matches!(
            one.evaluate(&[7u32].into_iter().collect()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn degenerate_shapes_evaluate_correctly() {
        // No blocks: true under anything.
        let empty = Formula::new(vec!["x1".into()], vec![]).unwrap();
        assert!(empty.evaluate(&assignment(&empty, &["x1"])).unwrap());
        // An empty block is unsatisfiable.
        let falsum = Formula::new(vec!["x1".into()], vec![vec![]]).unwrap();
        assert!(!falsum.evaluate(&Assignment::new()).unwrap());
        // An empty term is true.
        let verum = Formula::new(vec!["x1".into()], vec![vec![vec![]]]).unwrap();
        assert!(verum.evaluate(&assignment(&verum, &["x1"])).unwrap());
    }

    #[test]
    fn weighted_sat_on_the_sample() {
        let phi = Formula::parse_text(SAMPLE).unwrap();
        for k in 0..=2 {
            assert!(phi.weighted_sat(k, DEFAULT_ORACLE_VARIABLES).unwrap(), "k={k}");
        }
        for k in 3..=5 {
            assert!(!phi.weighted_sat(k, DEFAULT_ORACLE_VARIABLES).unwrap(), "k={k}");
        }
        assert!(!phi.weighted_sat(6, DEFAULT_ORACLE_VARIABLES).unwrap());
        assert!(matches!(
            phi.weighted_sat(1, 3),
            Err(Error::OracleBound { .. })
        ));
    }

    #[test]
    fn weighted_sat_zero_is_the_empty_assignment() {
        let phi = Formula::parse_text("(!a | !b) & (!c)").unwrap();
        assert!(phi.weighted_sat(0, 12).unwrap());
        let falsum = Formula::new(vec!["a".into()], vec![vec![]]).unwrap();
        assert!(!falsum.weighted_sat(0, 12).unwrap());
    }

    #[test]
    fn maximal_assignments_of_the_sample() {
        let phi = Formula::parse_text(SAMPLE).unwrap();
        let maximal = phi.maximal_satisfying_assignments().unwrap();
        let named: BTreeSet<Vec<String>> =
            maximal.iter().map(|a| phi.names_of(a)).collect();
        let expected: BTreeSet<Vec<String>> = [
            vec!["x1".to_string()],
            vec!["x3".to_string()],
            vec!["x2".to_string(), "x5".to_string()],
        ]
        .into_iter()
        .collect();
        assert_eq!(named, expected);
        assert!(maximal.iter().all(|a| a.len() <= 2));
    }

    #[test]
    fn maximal_assignments_degenerate() {
        let everything = Formula::new(vec!["x1".into(), "x2".into()], vec![]).unwrap();
        let got = everything.maximal_satisfying_assignments().unwrap();
        assert_eq!(got, vec![[0u32, 1].into_iter().collect::<Assignment>()]);

        let two = Formula::parse_text("(!x1 | !x2)").unwrap();
        let got = two.maximal_satisfying_assignments().unwrap();
        let expected: Vec<Assignment> = vec![
            [0u32].into_iter().collect(),
            [1u32].into_iter().collect(),
        ];
        assert_eq!(got, expected);

        let falsum = Formula::new(vec!["x1".into()], vec![vec![]]).unwrap();
        assert!(falsum.maximal_satisfying_assignments().unwrap().is_empty());

        let positive = Formula::parse_text("(x1)").unwrap();
        assert!(positive.maximal_satisfying_assignments().is_err());
    }

    #[test]
    fn cnf_hypergraph_transcription() {
        let phi = Formula::parse_text("(!x1 | !x2) & (!x2 | !x3)").unwrap();
        let h = antimonotone_cnf_to_hypergraph(&phi).unwrap();
        assert_eq!(h.vertices(), &["x1", "x2", "x3"]);
        assert_eq!(
            h.edges(),
            &[
                [0u32, 1].into_iter().collect::<VertexSet>(),
                [1u32, 2].into_iter().collect::<VertexSet>()
            ]
        );

        let back = hypergraph_to_antimonotone_cnf(&h);
        assert_eq!(antimonotone_cnf_to_hypergraph(&back).unwrap(), h);

        // Maximal assignments are complements of minimal transversals.
        let maximal = phi.maximal_satisfying_assignments().unwrap();
        let named: BTreeSet<Vec<String>> = maximal.iter().map(|a| phi.names_of(a)).collect();
        let expected: BTreeSet<Vec<String>> = [
            vec!["x2".to_string()],
            vec!["x1".to_string(), "x3".to_string()],
        ]
        .into_iter()
        .collect();
        assert_eq!(named, expected);

        assert!(antimonotone_cnf_to_hypergraph(&Formula::parse_text(SAMPLE).unwrap()).is_err());
        assert!(
            antimonotone_cnf_to_hypergraph(&Formula::parse_text("(x1 | !x2)").unwrap()).is_err()
        );
    }

    #[test]
    fn text_round_trip_of_odd_shapes() {
        for text in [
            "(!x1)",
            "()",
            "(())",
            "(!x1 | ())",
            "(!x1 | (!x2 & !x3)) & (!x4)",
            "(y_b | y_a) & (!y_a | !x_a)",
        ] {
            let phi = Formula::parse_text(text).unwrap();
            assert_eq!(phi.to_text(), text, "round trip of {text}");
        }
        // Empty input is the block-free (true) formula.
        let empty = Formula::parse_text("").unwrap();
        assert!(empty.blocks().is_empty());
    }

    #[test]
    fn parse_errors() {
        assert!(Formula::parse_text("(!x1 |").is_err());
        assert!(Formula::parse_text("!").is_err());
        assert!(Formula::parse_text("(!x1) extra junk").is_err());
        assert!(Formula::parse_text("((x1 | x2) & x3) | x4").is_err());
    }

    #[test]
    fn json_round_trip() {
        let phi = Formula::parse_text("(!x1 | (!x2 & !x3)) & (x4)").unwrap();
        let json = phi.to_json_string();
        assert_eq!(
            json,
            r#"{"variables":["x1","x2","x3","x4"],"blocks":[[["!x1"],["!x2","!x3"]],[["x4"]]]}"#
        );
        assert_eq!(Formula::from_json_str(&json).unwrap(), phi);
        assert!(Formula::from_json_str(r#"{"variables":[],"blocks":[[["!zz"]]]}"#).is_err());
    }

    #[test]
    fn antimonotone_satisfaction_is_downward_closed() {
        let phi = Formula::parse_text(SAMPLE).unwrap();
        let n = phi.variable_count() as u32;
        for mask in 0u32..(1 << n) {
            let a: Assignment = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
            if !phi.evaluate(&a).unwrap() {
                continue;
            }
            for &v in &a {
                let mut smaller = a.clone();
                smaller.remove(&v);
                assert!(phi.evaluate(&smaller).unwrap());
            }
        }
    }
}
