//! Reference tables of known code sizes and the residue-patching lower bound.
//!
//! Words whose weights differ by at least `d` are at distance at least `d`, so
//! constant-weight codes at weights `j ≡ m (mod d)` can be joined into one
//! bounded-weight code. Maximising over `m` gives
//!
//! ```text
//! max_{0 <= m < d}  Σ_{0 <= j <= w, j ≡ m (mod d)}  A(n, d, j)
//! ```
//!
//! where `A(n, d, j)` is the constant-weight optimum.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::corpus::{verify_code, Code, Provenance};
use crate::error::{Error, Result};
use crate::exact::{max_clique_exact, Bound, ExactOptions};
use crate::graph::build_graph;
use crate::words::{CodeParams, WeightMode, Word};

const BUILTIN_TABLE: &str = include_str!("../data/reference_tables.csv");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Optimal,
    LowerBound,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Optimal => "optimal",
            Status::LowerBound => "lower_bound",
        }
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "optimal" => Ok(Status::Optimal),
            "lower_bound" => Ok(Status::LowerBound),
            other => Err(format!("unknown status {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TableKey {
    pub n: usize,
    pub d: usize,
    pub w: usize,
    pub mode: WeightMode,
}

impl fmt::Display for TableKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.d, self.w, self.mode)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub value: u64,
    pub status: Status,
    pub source: String,
}

/// Known values keyed by `(n, d, w, mode)`.
#[derive(Clone, Debug, Default)]
pub struct ReferenceTable {
    entries: BTreeMap<TableKey, TableEntry>,
}

/// One `(n, w)` row of a distance block, with both columns when present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub n: usize,
    pub d: usize,
    pub w: usize,
    pub constant: Option<TableEntry>,
    pub bounded: Option<TableEntry>,
}

impl ReferenceTable {
    /// The table shipped with the crate.
    pub fn builtin() -> Self {
        load_reference_table(BUILTIN_TABLE).expect("bundled reference table is valid")
    }

    pub fn get(&self, n: usize, d: usize, w: usize, mode: WeightMode) -> Option<&TableEntry> {
        self.entries.get(&TableKey { n, d, w, mode })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&TableKey, &TableEntry)> {
        self.entries.iter()
    }

    /// Rows at distance `d`, ordered by `n` then `w`.
    pub fn rows(&self, d: usize) -> Vec<TableRow> {
        let mut rows: BTreeMap<(usize, usize), TableRow> = BTreeMap::new();
        for (key, entry) in self.entries.iter().filter(|(k, _)| k.d == d) {
            let row = rows.entry((key.n, key.w)).or_insert_with(|| TableRow {
                n: key.n,
                d,
                w: key.w,
                constant: None,
                bounded: None,
            });
            match key.mode {
                WeightMode::Constant => row.constant = Some(entry.clone()),
                WeightMode::Bounded => row.bounded = Some(entry.clone()),
            }
        }
        rows.into_values().collect()
    }

    /// Distances present in the table, ascending.
    pub fn distances(&self) -> Vec<usize> {
        let mut ds: Vec<usize> = self.entries.keys().map(|k| k.d).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    fn check_invariants(&self) -> Result<()> {
        for (key, entry) in &self.entries {
            if key.mode != WeightMode::Bounded {
                continue;
            }
            if let Some(c) = self.get(key.n, key.d, key.w, WeightMode::Constant) {
                if entry.value < c.value {
                    return Err(Error::validation(format!(
                        "bounded value {} at {key} is below the constant value {}",
                        entry.value, c.value
                    )));
                }
            }
        }
        let mut previous: Option<(&TableKey, u64)> = None;
        for (key, entry) in self
            .entries
            .iter()
            .filter(|(k, _)| k.mode == WeightMode::Bounded)
        {
            if let Some((pk, pv)) = previous {
                if (pk.n, pk.d) == (key.n, key.d) && entry.value < pv {
                    return Err(Error::validation(format!(
                        "bounded value {} at {key} decreases from {pv} at {pk}",
                        entry.value
                    )));
                }
            }
            previous = Some((key, entry.value));
        }
        Ok(())
    }
}

/// Parses rows of `n,d,w,mode,value,status,source`; `#` starts a comment line.
pub fn load_reference_table(source: &str) -> Result<ReferenceTable> {
    let mut table = ReferenceTable::default();
    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 7 {
            return Err(Error::parse(
                line_no,
                format!("expected 7 comma-separated fields, found {}", fields.len()),
            ));
        }
        let int = |i: usize, name: &str| -> Result<u64> {
            fields[i].parse::<u64>().map_err(|_| {
                Error::parse(line_no, format!("{name} {:?} is not an integer", fields[i]))
            })
        };
        let n = int(0, "n")? as usize;
        let d = int(1, "d")? as usize;
        let w = int(2, "w")? as usize;
        let mode: WeightMode = fields[3]
            .parse()
            .map_err(|e: Error| Error::parse(line_no, e.to_string()))?;
        let value = int(4, "value")?;
        let status: Status = fields[5].parse().map_err(|e| Error::parse(line_no, e))?;
        if n == 0 || d == 0 || w > n {
            return Err(Error::parse(
                line_no,
                format!("invalid parameters n={n} d={d} w={w}"),
            ));
        }
        let key = TableKey { n, d, w, mode };
        let entry = TableEntry {
            value,
            status,
            source: fields[6].to_string(),
        };
        if table.entries.insert(key, entry).is_some() {
            return Err(Error::parse(line_no, format!("duplicate entry for {key}")));
        }
    }
    table.check_invariants()?;
    Ok(table)
}

/// Where a term of the patching sum came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermSource {
    /// `A(n, d, 0) = 1`: the zero word alone.
    ZeroWord,
    Table,
    Solver,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchTerm {
    pub weight: usize,
    pub value: u64,
    pub source: TermSource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchBound {
    pub value: u64,
    /// Winning residue class; the smallest one on ties.
    pub residue: usize,
    /// Terms of the winning residue, ascending by weight.
    pub terms: Vec<PatchTerm>,
}

impl PatchBound {
    pub fn weights(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.weight).collect()
    }
}

/// Budget for solving constant-weight values missing from the table.
#[derive(Clone, Debug)]
pub struct BackfillOptions {
    pub exact: ExactOptions,
}

impl Default for BackfillOptions {
    fn default() -> Self {
        BackfillOptions {
            exact: ExactOptions {
                node_limit: Some(50_000_000),
                ..ExactOptions::with_bound(Bound::Coloring)
            },
        }
    }
}

pub fn patch_lower_bound(
    n: usize,
    d: usize,
    w: usize,
    table: &ReferenceTable,
) -> Result<PatchBound> {
    patch_lower_bound_with(n, d, w, table, &BackfillOptions::default())
}

/// Evaluates the patching bound. Residue classes whose Johnson upper bound
/// cannot reach the best exact class so far are skipped, so only the values
/// that can decide the maximum are ever solved for.
pub fn patch_lower_bound_with(
    n: usize,
    d: usize,
    w: usize,
    table: &ReferenceTable,
    backfill: &BackfillOptions,
) -> Result<PatchBound> {
    if n == 0 || d == 0 || w > n {
        return Err(Error::usage(format!(
            "invalid parameters n={n} d={d} w={w}"
        )));
    }
    let classes: Vec<(usize, Vec<usize>)> = (0..d.min(w + 1))
        .map(|m| (m, (m..=w).step_by(d).collect()))
        .collect();

    let known = |j: usize| -> Option<PatchTerm> {
        if j == 0 {
            return Some(PatchTerm {
                weight: 0,
                value: 1,
                source: TermSource::ZeroWord,
            });
        }
        table
            .get(n, d, j, WeightMode::Constant)
            .filter(|e| e.status == Status::Optimal)
            .map(|e| PatchTerm {
                weight: j,
                value: e.value,
                source: TermSource::Table,
            })
    };

    let mut best: Option<PatchBound> = None;
    let improves = |best: &Option<PatchBound>, value: u64, m: usize| match best {
        None => true,
        Some(b) => value > b.value || (value == b.value && m < b.residue),
    };

    // classes fully covered by the table first, then the rest by residue
    let (ready, pending): (Vec<_>, Vec<_>) = classes
        .into_iter()
        .partition(|(_, ws)| ws.iter().all(|&j| known(j).is_some()));

    for (m, weights) in ready {
        let terms: Vec<PatchTerm> = weights.iter().map(|&j| known(j).unwrap()).collect();
        let value = terms.iter().map(|t| t.value).sum();
        if improves(&best, value, m) {
            best = Some(PatchBound {
                value,
                residue: m,
                terms,
            });
        }
    }

    let mut pending: Vec<(u64, usize, Vec<usize>)> = pending
        .into_iter()
        .map(|(m, weights)| {
            let ceiling = weights
                .iter()
                .map(|&j| known(j).map_or_else(|| johnson_bound(n, d, j), |t| t.value))
                .sum();
            (ceiling, m, weights)
        })
        .collect();
    // most promising first, so the incumbent rules out the rest early
    pending.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    for (ceiling, m, weights) in pending {
        if !improves(&best, ceiling, m) {
            continue;
        }
        let mut terms = Vec::with_capacity(weights.len());
        for &j in &weights {
            match known(j) {
                Some(t) => terms.push(t),
                None => terms.push(PatchTerm {
                    weight: j,
                    value: solve_constant(n, d, j, backfill)?,
                    source: TermSource::Solver,
                }),
            }
        }
        let value = terms.iter().map(|t| t.value).sum();
        if improves(&best, value, m) {
            best = Some(PatchBound {
                value,
                residue: m,
                terms,
            });
        }
    }

    Ok(best.expect("residue 0 always contributes the zero word"))
}

/// Constant-weight optimum `A(n, d, j)` by exact search.
pub fn solve_constant(n: usize, d: usize, j: usize, backfill: &BackfillOptions) -> Result<u64> {
    if j == 0 {
        return Ok(1);
    }
    let params = CodeParams::constant(n, d, j)?;
    let graph = build_graph(&params).map_err(|e| match e {
        Error::Capacity(msg) => Error::capacity(format!("A({n},{d},{j}) constant weight: {msg}")),
        other => other,
    })?;
    let result = max_clique_exact(graph.adjacency(), &backfill.exact);
    if !result.proven_optimal {
        return Err(Error::capacity(format!(
            "A({n},{d},{j}) constant weight is missing from the table and the solver \
             budget ran out after {} nodes",
            result.nodes_explored
        )));
    }
    Ok(result.size as u64)
}

/// Johnson upper bound on the constant-weight optimum `A(n, d, w)`: the
/// smaller of the recursive form and the ratio form `δn / (w² - wn + δn)`
/// with `d = 2δ`.
pub fn johnson_bound(n: usize, d: usize, w: usize) -> u64 {
    if w > n {
        return 0;
    }
    if w == 0 {
        return 1;
    }
    if d <= 2 {
        return binomial_u64(n, w);
    }
    // distances between equal-weight words are even
    let d = d + d % 2;
    let half = d / 2;
    let w = w.min(n - w);
    if w < half {
        return 1;
    }
    let recursive = (n as u64 * johnson_bound(n - 1, d, w - 1)) / w as u64;
    let denominator = (w * w + half * n) as i128 - (w * n) as i128;
    if denominator > 0 {
        recursive.min((half * n) as u64 / denominator as u64)
    } else {
        recursive
    }
}

fn binomial_u64(n: usize, k: usize) -> u64 {
    crate::words::binomial(n, k).min(u64::MAX as u128) as u64
}

/// Adds the all-zeros word to a constant-weight code with `w >= d`, giving a
/// bounded-weight code one word larger.
pub fn augment_with_zero(code: &Code) -> Result<Code> {
    let p = code.params;
    if p.mode != WeightMode::Constant {
        return Err(Error::usage("augmentation expects a constant-weight code"));
    }
    if p.w < p.d {
        return Err(Error::usage(format!(
            "weight {} is below distance {}: the zero word would be too close",
            p.w, p.d
        )));
    }
    let zero = Word::zeros(p.n);
    if code.contains(&zero) {
        return Err(Error::usage("code already contains the zero word"));
    }
    let report = verify_code(code);
    if !report.passed() {
        return Err(Error::validation(format!(
            "input code fails verification:\n{report}"
        )));
    }
    let mut words = Vec::with_capacity(code.len() + 1);
    words.push(zero);
    words.extend(code.words.iter().cloned());
    Ok(Code::new(
        p.with_mode(WeightMode::Bounded),
        words,
        Provenance::Patched,
    ))
}

/// Joins constant-weight codes whose weights share residue `m` modulo `d`.
pub fn patch_codes(n: usize, d: usize, w: usize, m: usize, constituents: &[Code]) -> Result<Code> {
    let params = CodeParams::bounded(n, d, w)?;
    if m >= d {
        return Err(Error::usage(format!("residue {m} must be below d = {d}")));
    }
    let mut seen_weights: Vec<(usize, usize)> = Vec::new();
    let mut words = Vec::new();
    for (i, code) in constituents.iter().enumerate() {
        let fail = |msg: String| Error::validation(format!("constituent {i}: {msg}"));
        let Some(first) = code.words.first() else {
            continue;
        };
        if let Some(bad) = code.words.iter().find(|x| x.len() != n) {
            return Err(fail(format!(
                "word {bad} has length {}, expected {n}",
                bad.len()
            )));
        }
        let j = first.weight() as usize;
        if let Some(bad) = code.words.iter().find(|x| x.weight() as usize != j) {
            return Err(fail(format!("mixed weights {j} and {}", bad.weight())));
        }
        if j > w {
            return Err(fail(format!("weight {j} exceeds {w}")));
        }
        if j % d != m {
            return Err(fail(format!("weight {j} is not congruent to {m} mod {d}")));
        }
        if let Some(&(_, other)) = seen_weights.iter().find(|(wt, _)| *wt == j) {
            return Err(fail(format!(
                "weight {j} already supplied by constituent {other}"
            )));
        }
        let as_constant = Code::new(
            CodeParams {
                n,
                d,
                w: j,
                mode: WeightMode::Constant,
            },
            code.words.clone(),
            code.provenance,
        );
        let report = verify_code(&as_constant);
        if !report.passed() {
            return Err(fail(format!("fails verification:\n{report}")));
        }
        seen_weights.push((j, i));
        words.extend(code.words.iter().cloned());
    }
    Ok(Code::new(params, words, Provenance::Patched))
}
