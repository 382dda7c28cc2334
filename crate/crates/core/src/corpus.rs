//! Code files: parsing, serialization and verification, plus the bundled
//! corpus of published listings.
//!
//! A code file holds one word per line as exactly `n` characters from
//! `{0,1}`. Blank lines and lines starting with `#` are ignored.

use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{CodeParams, WeightMode, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Exact,
    Greedy,
    Patched,
    External,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Exact => "exact",
            Provenance::Greedy => "greedy",
            Provenance::Patched => "patched",
            Provenance::External => "external",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    pub params: CodeParams,
    pub words: Vec<Word>,
    pub provenance: Provenance,
}

impl Code {
    pub fn new(params: CodeParams, words: Vec<Word>, provenance: Provenance) -> Self {
        Code {
            params,
            words,
            provenance,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.words.contains(word)
    }

    /// Words in ascending order.
    pub fn sorted_words(&self) -> Vec<Word> {
        let mut words = self.words.clone();
        words.sort();
        words
    }
}

/// Outcome of checking a code against its parameters. Witnesses are indices
/// into `Code::words`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub params: CodeParams,
    pub size: usize,
    /// Minimum pairwise distance and a pair attaining it.
    pub min_distance: Option<(u32, usize, usize)>,
    /// Maximum weight and a word attaining it.
    pub max_weight: Option<(u32, usize)>,
    /// First word whose length differs from `n`.
    pub length_violation: Option<usize>,
    /// First word whose weight breaks the weight constraint.
    pub weight_violation: Option<usize>,
    /// Pairs of equal words.
    pub duplicates: Vec<(usize, usize)>,
}

impl VerificationReport {
    pub fn length_ok(&self) -> bool {
        self.length_violation.is_none()
    }

    pub fn weight_ok(&self) -> bool {
        self.weight_violation.is_none()
    }

    pub fn distance_ok(&self) -> bool {
        self.min_distance
            .is_none_or(|(dist, _, _)| dist as usize >= self.params.d)
    }

    pub fn duplicates_ok(&self) -> bool {
        self.duplicates.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.length_ok() && self.weight_ok() && self.distance_ok() && self.duplicates_ok()
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "params: {}", self.params)?;
        writeln!(f, "size: {}", self.size)?;
        match self.length_violation {
            Some(i) => writeln!(f, "length: FAIL (word #{})", i + 1)?,
            None => writeln!(f, "length: pass")?,
        }
        match self.max_weight {
            Some((wt, i)) => writeln!(f, "max weight: {wt} (word #{})", i + 1)?,
            None => writeln!(f, "max weight: -")?,
        }
        match self.weight_violation {
            Some(i) => writeln!(f, "weight: FAIL (word #{})", i + 1)?,
            None => writeln!(f, "weight: pass")?,
        }
        match self.min_distance {
            Some((dist, i, j)) => writeln!(
                f,
                "min distance: {dist} (words #{} and #{}) {}",
                i + 1,
                j + 1,
                verdict(self.distance_ok())
            )?,
            None => writeln!(f, "min distance: - pass")?,
        }
        if self.duplicates.is_empty() {
            writeln!(f, "duplicates: none")?;
        } else {
            let pairs: Vec<String> = self
                .duplicates
                .iter()
                .map(|(i, j)| format!("#{}=#{}", i + 1, j + 1))
                .collect();
            writeln!(f, "duplicates: FAIL {}", pairs.join(" "))?;
        }
        write!(f, "result: {}", verdict(self.passed()))
    }
}

pub fn verify_code(code: &Code) -> VerificationReport {
    let params = code.params;
    let words = &code.words;

    let length_violation = words.iter().position(|x| x.len() != params.n);
    let max_weight = words
        .iter()
        .enumerate()
        .map(|(i, x)| (x.weight(), i))
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let weight_violation = words
        .iter()
        .position(|x| !params.mode.admits(x.weight(), params.w));

    let mut min_distance: Option<(u32, usize, usize)> = None;
    let mut duplicates = Vec::new();
    if length_violation.is_none() {
        for (i, x) in words.iter().enumerate() {
            for (j, y) in words.iter().enumerate().skip(i + 1) {
                let dist = x.distance(y);
                if dist == 0 {
                    duplicates.push((i, j));
                }
                if min_distance.is_none_or(|(m, _, _)| dist < m) {
                    min_distance = Some((dist, i, j));
                }
            }
        }
    }

    VerificationReport {
        params,
        size: words.len(),
        min_distance,
        max_weight,
        length_violation,
        weight_violation,
        duplicates,
    }
}

pub fn parse_code_file(source: &str, params: &CodeParams) -> Result<Code> {
    let mut words: Vec<Word> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    for (idx, raw) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(bad) = line.chars().find(|c| *c != '0' && *c != '1') {
            return Err(Error::parse(line_no, format!("illegal character {bad:?}")));
        }
        if line.len() != params.n {
            return Err(Error::parse(
                line_no,
                format!("expected {} characters, found {}", params.n, line.len()),
            ));
        }
        let word: Word = line
            .parse()
            .map_err(|e: Error| Error::parse(line_no, e.to_string()))?;
        if let Some(first) = seen.insert(word.clone(), line_no) {
            return Err(Error::parse(
                line_no,
                format!("duplicate of the word on line {first}"),
            ));
        }
        words.push(word);
    }
    Ok(Code::new(*params, words, Provenance::External))
}

/// Writes the header comments followed by the words in ascending order.
pub fn serialize_code<W: Write + ?Sized>(code: &Code, sink: &mut W) -> std::io::Result<()> {
    let p = &code.params;
    writeln!(sink, "# n={}", p.n)?;
    writeln!(sink, "# d={}", p.d)?;
    writeln!(sink, "# w={}", p.w)?;
    writeln!(sink, "# mode={}", p.mode)?;
    writeln!(sink, "# size={}", code.len())?;
    writeln!(sink, "# provenance={}", code.provenance)?;
    for word in code.sorted_words() {
        writeln!(sink, "{word}")?;
    }
    sink.flush()
}

pub fn serialize_to_string(code: &Code) -> String {
    let mut out = Vec::new();
    serialize_code(code, &mut out).expect("writing to a Vec cannot fail");
    String::from_utf8(out).expect("code files are ASCII")
}

/// A bundled listing, keyed by the `(n, d, w)` it was published under.
#[derive(Clone, Copy, Debug)]
pub struct Listing {
    pub n: usize,
    pub d: usize,
    pub w: usize,
    pub text: &'static str,
}

impl Listing {
    pub fn params(&self) -> CodeParams {
        CodeParams::new(self.n, self.d, self.w, WeightMode::Bounded)
            .expect("bundled listing parameters are valid")
    }

    /// File name in the `A_n_d_w.txt` convention.
    pub fn file_name(&self) -> String {
        format!("A_{}_{}_{}.txt", self.n, self.d, self.w)
    }

    pub fn parse(&self) -> Result<Code> {
        parse_code_file(self.text, &self.params())
    }
}

const LISTINGS: &[(usize, usize, usize, &str)] = &[
    (6, 4, 3, include_str!("../data/appendix/A_6_4_3.txt")),
    (6, 4, 4, include_str!("../data/appendix/A_6_4_4.txt")),
    (6, 4, 5, include_str!("../data/appendix/A_6_4_5.txt")),
    (6, 4, 6, include_str!("../data/appendix/A_6_4_6.txt")),
    (7, 4, 3, include_str!("../data/appendix/A_7_4_3.txt")),
    (7, 4, 4, include_str!("../data/appendix/A_7_4_4.txt")),
    (7, 4, 5, include_str!("../data/appendix/A_7_4_5.txt")),
    (7, 4, 6, include_str!("../data/appendix/A_7_4_6.txt")),
    (7, 4, 7, include_str!("../data/appendix/A_7_4_7.txt")),
    (8, 4, 3, include_str!("../data/appendix/A_8_4_3.txt")),
    (8, 4, 4, include_str!("../data/appendix/A_8_4_4.txt")),
    (8, 4, 5, include_str!("../data/appendix/A_8_4_5.txt")),
    (8, 4, 6, include_str!("../data/appendix/A_8_4_6.txt")),
    (8, 4, 7, include_str!("../data/appendix/A_8_4_7.txt")),
    (8, 4, 8, include_str!("../data/appendix/A_8_4_8.txt")),
    (9, 4, 3, include_str!("../data/appendix/A_9_4_3.txt")),
    (9, 4, 4, include_str!("../data/appendix/A_9_4_4.txt")),
    (9, 4, 5, include_str!("../data/appendix/A_9_4_5.txt")),
    (9, 4, 6, include_str!("../data/appendix/A_9_4_6.txt")),
    (9, 4, 7, include_str!("../data/appendix/A_9_4_7.txt")),
    (9, 4, 8, include_str!("../data/appendix/A_9_4_8.txt")),
    (9, 4, 9, include_str!("../data/appendix/A_9_4_9.txt")),
    (10, 4, 3, include_str!("../data/appendix/A_10_4_3.txt")),
    (10, 4, 4, include_str!("../data/appendix/A_10_4_4.txt")),
    (11, 4, 6, include_str!("../data/appendix/A_11_4_6.txt")),
    (8, 6, 4, include_str!("../data/appendix/A_8_6_4.txt")),
    (8, 6, 5, include_str!("../data/appendix/A_8_6_5.txt")),
    (8, 6, 6, include_str!("../data/appendix/A_8_6_6.txt")),
    (8, 6, 7, include_str!("../data/appendix/A_8_6_7.txt")),
    (8, 6, 8, include_str!("../data/appendix/A_8_6_8.txt")),
    (9, 6, 4, include_str!("../data/appendix/A_9_6_4.txt")),
    (9, 6, 5, include_str!("../data/appendix/A_9_6_5.txt")),
    (9, 6, 6, include_str!("../data/appendix/A_9_6_6.txt")),
    (9, 6, 7, include_str!("../data/appendix/A_9_6_7.txt")),
    (9, 6, 8, include_str!("../data/appendix/A_9_6_8.txt")),
    (9, 6, 9, include_str!("../data/appendix/A_9_6_9.txt")),
    (10, 6, 4, include_str!("../data/appendix/A_10_6_4.txt")),
    (10, 6, 5, include_str!("../data/appendix/A_10_6_5.txt")),
    (10, 6, 6, include_str!("../data/appendix/A_10_6_6.txt")),
    (10, 6, 7, include_str!("../data/appendix/A_10_6_7.txt")),
    (10, 6, 8, include_str!("../data/appendix/A_10_6_8.txt")),
    (10, 6, 9, include_str!("../data/appendix/A_10_6_9.txt")),
    (10, 6, 10, include_str!("../data/appendix/A_10_6_10.txt")),
    (12, 6, 6, include_str!("../data/appendix/A_12_6_6.txt")),
    (8, 8, 5, include_str!("../data/appendix/A_8_8_5.txt")),
    (8, 8, 6, include_str!("../data/appendix/A_8_8_6.txt")),
    (8, 8, 7, include_str!("../data/appendix/A_8_8_7.txt")),
    (8, 8, 8, include_str!("../data/appendix/A_8_8_8.txt")),
    (9, 8, 5, include_str!("../data/appendix/A_9_8_5.txt")),
    (9, 8, 6, include_str!("../data/appendix/A_9_8_6.txt")),
    (9, 8, 7, include_str!("../data/appendix/A_9_8_7.txt")),
    (9, 8, 8, include_str!("../data/appendix/A_9_8_8.txt")),
    (9, 8, 9, include_str!("../data/appendix/A_9_8_9.txt")),
    (10, 8, 5, include_str!("../data/appendix/A_10_8_5.txt")),
    (10, 8, 6, include_str!("../data/appendix/A_10_8_6.txt")),
    (10, 8, 7, include_str!("../data/appendix/A_10_8_7.txt")),
    (10, 8, 8, include_str!("../data/appendix/A_10_8_8.txt")),
    (10, 8, 9, include_str!("../data/appendix/A_10_8_9.txt")),
    (10, 8, 10, include_str!("../data/appendix/A_10_8_10.txt")),
    (11, 8, 5, include_str!("../data/appendix/A_11_8_5.txt")),
    (11, 8, 6, include_str!("../data/appendix/A_11_8_6.txt")),
    (11, 8, 7, include_str!("../data/appendix/A_11_8_7.txt")),
    (11, 8, 8, include_str!("../data/appendix/A_11_8_8.txt")),
    (11, 8, 9, include_str!("../data/appendix/A_11_8_9.txt")),
    (11, 8, 10, include_str!("../data/appendix/A_11_8_10.txt")),
    (11, 8, 11, include_str!("../data/appendix/A_11_8_11.txt")),
    (12, 8, 5, include_str!("../data/appendix/A_12_8_5.txt")),
    (13, 8, 5, include_str!("../data/appendix/A_13_8_5.txt")),
    (14, 8, 7, include_str!("../data/appendix/A_14_8_7.txt")),
];

/// All bundled listings, ordered by distance, then length, then weight.
pub fn appendix() -> impl Iterator<Item = Listing> {
    LISTINGS
        .iter()
        .map(|&(n, d, w, text)| Listing { n, d, w, text })
}

pub fn appendix_listing(n: usize, d: usize, w: usize) -> Option<Listing> {
    appendix().find(|l| (l.n, l.d, l.w) == (n, d, w))
}
