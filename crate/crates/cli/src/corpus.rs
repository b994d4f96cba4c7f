//! Corpus entries and the corpus runner.
//!
//! An entry file is a header of `key: value` lines followed by LUD text
//! starting at the `index:` line:
//!
//! ```text
//! id: F6a
//! transliteration: getsuyoubi-wa gogo-nara daijoubu-da
//! gloss: monday-top afternoon-cond okay-coppres
//! translation: As for Monday, it is ok if it is in the afternoon
//! surface: l2=0 l3=1
//! expect-count: 2
//! expect-rank1: topic(getsuyoubi, conditional-nara(gogo, daijoubu))
//! index: (l1,h0)
//! ...
//! ```
//!
//! `expect-rank1` may repeat. Golden renderings, when present, live in
//! `golden/<stem>.term.txt` and `golden/<stem>.box.txt` next to the entry.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use lud::{
    build_drs, parse, render_box, render_term, resolve, serialize, validate, verify_equivalence,
    Lexicon, Lud, Plugging, SurfaceMeta,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub admissible_count: usize,
    pub rank1_terms: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub id: String,
    pub transliteration: Vec<String>,
    pub gloss: String,
    pub translation: String,
    pub lud_file: PathBuf,
    pub surface: SurfaceMeta,
    pub expected: Expected,
    /// The LUD part of the file, with header lines blanked so that line
    /// numbers in diagnostics match the file.
    pub lud_text: String,
}

/// Header fields and LUD text of an entry file. A plain LUD file has an
/// empty header.
pub fn split_entry(text: &str) -> (Vec<(usize, String, String)>, String) {
    let mut header = Vec::new();
    let mut body = String::new();
    let mut in_body = false;
    for (n, line) in text.lines().enumerate() {
        if !in_body && line.trim_start().starts_with("index:") {
            in_body = true;
        }
        if in_body {
            body.push_str(line);
        } else {
            let code = line.split('#').next().unwrap_or("").trim();
            if let Some((k, v)) = code.split_once(':') {
                header.push((n + 1, k.trim().to_string(), v.trim().to_string()));
            } else if !code.is_empty() {
                header.push((n + 1, String::new(), code.to_string()));
            }
        }
        body.push('\n');
    }
    (header, body)
}

/// LUD text as the canonical writer would produce it: comments, trailing
/// blanks and empty lines removed.
pub fn canonical_body(lud_text: &str) -> String {
    let mut out = String::new();
    for line in lud_text.lines() {
        let code = line.split('#').next().unwrap_or("").trim_end();
        if !code.trim().is_empty() {
            out.push_str(code);
            out.push('\n');
        }
    }
    out
}

impl CorpusEntry {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        Self::from_text(path, &text)
    }

    pub fn from_text(path: &Path, text: &str) -> Result<Self> {
        let (header, lud_text) = split_entry(text);
        let mut id = None;
        let mut transliteration = Vec::new();
        let mut gloss = String::new();
        let mut translation = String::new();
        let mut surface = None;
        let mut count = None;
        let mut rank1 = Vec::new();
        for (line, key, value) in header {
            match key.as_str() {
                "id" => id = Some(value),
                "transliteration" => transliteration = value.split_whitespace().map(str::to_string).collect(),
                "gloss" => gloss = value,
                "translation" => translation = value,
                "surface" => {
                    surface = Some(
                        value
                            .parse::<SurfaceMeta>()
                            .map_err(|e| anyhow::anyhow!("{}:{line}: {e}", path.display()))?,
                    )
                }
                "expect-count" => {
                    count = Some(value.parse::<usize>().with_context(|| format!("{}:{line}: bad count", path.display()))?)
                }
                "expect-rank1" => rank1.push(value),
                "" => bail!("{}:{line}: expected `key: value`, found `{value}`", path.display()),
                other => bail!("{}:{line}: unknown header key `{other}`", path.display()),
            }
        }
        let id = id.with_context(|| format!("{}: missing id", path.display()))?;
        Ok(CorpusEntry {
            id,
            transliteration,
            gloss,
            translation,
            lud_file: path.to_path_buf(),
            surface: surface.unwrap_or_default(),
            expected: Expected {
                admissible_count: count.with_context(|| format!("{}: missing expect-count", path.display()))?,
                rank1_terms: rank1,
            },
            lud_text,
        })
    }

    pub fn lud(&self) -> Result<Lud> {
        parse(&self.lud_text).map_err(|e| anyhow::anyhow!("{}: {e}", self.lud_file.display()))
    }

    fn golden(&self, kind: &str) -> PathBuf {
        let stem = self.lud_file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let dir = self.lud_file.parent().unwrap_or(Path::new("."));
        dir.join("golden").join(format!("{stem}.{kind}.txt"))
    }

    pub fn golden_term_path(&self) -> PathBuf {
        self.golden("term")
    }

    pub fn golden_box_path(&self) -> PathBuf {
        self.golden("box")
    }
}

/// Terms of the given readings, one per line.
pub fn render_terms(lud: &Lud, readings: &[Plugging]) -> lud::Result<String> {
    let mut out = String::new();
    for p in readings {
        out.push_str(&render_term(lud, p)?);
        out.push('\n');
    }
    Ok(out)
}

/// Boxes of the given readings, separated by blank lines.
pub fn render_boxes(lud: &Lud, readings: &[Plugging]) -> lud::Result<String> {
    let mut parts = Vec::new();
    for p in readings {
        parts.push(render_box(&build_drs(lud, p)?));
    }
    Ok(parts.join("\n"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryReport {
    pub id: String,
    pub admissible: Option<usize>,
    pub rank1: Option<usize>,
    pub failures: Vec<String>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusReport {
    pub entries: Vec<EntryReport>,
    pub warnings: Vec<String>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryReport::passed)
    }

    pub fn entry(&self, id: &str) -> Option<&EntryReport> {
        self.entries.iter().find(|e| e.id == id)
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        for e in &self.entries {
            let n = |x: Option<usize>| x.map_or("-".to_string(), |x| x.to_string());
            if e.passed() {
                writeln!(f, "ok   {:<4} admissible={} rank1={}", e.id, n(e.admissible), n(e.rank1))?;
            } else {
                for msg in &e.failures {
                    writeln!(f, "FAIL {:<4} {msg}", e.id)?;
                }
            }
        }
        let passed = self.entries.iter().filter(|e| e.passed()).count();
        writeln!(f, "{passed}/{} entries passed", self.entries.len())
    }
}

/// Lexicon for a corpus directory: `lexicon.txt` if present, else the
/// builtin one.
pub fn corpus_lexicon(dir: &Path) -> Result<Lexicon> {
    let path = dir.join("lexicon.txt");
    if path.exists() {
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        Ok(Lexicon::parse(&text)?)
    } else {
        Ok(Lexicon::builtin())
    }
}

pub fn entry_paths(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "lud"))
        .collect();
    paths.sort();
    Ok(paths)
}

/// Checks every entry of a corpus directory. I/O and header errors abort;
/// everything else is recorded per entry.
pub fn run_corpus(dir: &Path) -> Result<CorpusReport> {
    let lexicon = corpus_lexicon(dir)?;
    let mut report = CorpusReport::default();
    let mut entries = Vec::new();
    for path in entry_paths(dir)? {
        entries.push(CorpusEntry::load(&path)?);
    }
    if entries.is_empty() {
        report.warnings.push(format!("no corpus entries in {}", dir.display()));
    }
    entries.sort_by(|a, b| a.id.cmp(&b.id));
    for entry in &entries {
        report.entries.push(check_entry(entry, &lexicon));
    }
    Ok(report)
}

pub fn check_entry(entry: &CorpusEntry, lexicon: &Lexicon) -> EntryReport {
    let mut r = EntryReport {
        id: entry.id.clone(),
        admissible: None,
        rank1: None,
        failures: Vec::new(),
    };
    let lud = match entry.lud() {
        Ok(l) => l,
        Err(e) => {
            r.failures.push(format!("parse: {e}"));
            return r;
        }
    };
    let errors: Vec<String> = validate(&lud).iter().filter(|d| d.is_error()).map(|d| d.to_string()).collect();
    if !errors.is_empty() {
        r.failures.push(format!("validate: {}", errors.join("; ")));
        return r;
    }
    if serialize(&lud) != canonical_body(&entry.lud_text) {
        r.failures.push("format: serialization differs from the file".into());
    }
    let discrels: BTreeSet<_> = lud.discrels().iter().map(|d| d.0).collect();
    if let Some(extra) = entry.surface.labels().find(|l| !discrels.contains(l)) {
        r.failures.push(format!("surface: {extra} is not a discourse relation"));
    }
    match verify_equivalence(&lud) {
        Ok(true) => {}
        Ok(false) => r.failures.push("oracle: search and brute force disagree".into()),
        Err(e) => r.failures.push(format!("oracle: {e}")),
    }
    let ranked = match resolve(&lud, &entry.surface, lexicon) {
        Ok(x) => x,
        Err(e) => {
            r.failures.push(format!("resolve: {e}"));
            return r;
        }
    };
    let count = ranked.all().count();
    r.admissible = Some(count);
    r.rank1 = Some(ranked.rank1().len());
    if count != entry.expected.admissible_count {
        r.failures.push(format!(
            "expected {} admissible, observed {count}",
            entry.expected.admissible_count
        ));
    }
    let terms = match render_terms(&lud, ranked.rank1()) {
        Ok(t) => t,
        Err(e) => {
            r.failures.push(format!("render: {e}"));
            return r;
        }
    };
    let observed: BTreeSet<&str> = terms.lines().collect();
    let expected: BTreeSet<&str> = entry.expected.rank1_terms.iter().map(String::as_str).collect();
    if observed != expected {
        let show = |s: &BTreeSet<&str>| s.iter().copied().collect::<Vec<_>>().join(" | ");
        r.failures.push(format!("rank-1 terms: expected [{}], observed [{}]", show(&expected), show(&observed)));
    }
    compare_golden(&mut r, &entry.golden_term_path(), &terms);
    match render_boxes(&lud, ranked.rank1()) {
        Ok(boxes) => compare_golden(&mut r, &entry.golden_box_path(), &boxes),
        Err(e) => r.failures.push(format!("render: {e}")),
    }
    r
}

fn compare_golden(r: &mut EntryReport, path: &Path, observed: &str) {
    if let Ok(expected) = fs::read_to_string(path) {
        if expected != observed {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            r.failures.push(format!("golden {name} differs"));
        }
    }
}
