//! Discourse-relation lexicon: which side of each relation is bound outside
//! the sentence, and which hole is fixed by sentence material.
//!
//! File format, one entry per line, `#` comments:
//!
//! ```text
//! rel topic class=both-internal fixed=restriction
//! rel explanation-noda class=conclusion-external fixed=none
//! ```

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::error::{LudError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnaphoricityClass {
    /// Antecedent and conclusion are both resolved inside the sentence.
    BothInternal,
    /// The antecedent part is bound outside the sentence.
    AntecedentExternal,
    /// The conclusion part is bound outside the sentence.
    ConclusionExternal,
}

impl AnaphoricityClass {
    pub fn is_external(self) -> bool {
        self != AnaphoricityClass::BothInternal
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AnaphoricityClass::BothInternal => "both-internal",
            AnaphoricityClass::AntecedentExternal => "antecedent-external",
            AnaphoricityClass::ConclusionExternal => "conclusion-external",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        match s {
            "both-internal" => Some(AnaphoricityClass::BothInternal),
            "antecedent-external" => Some(AnaphoricityClass::AntecedentExternal),
            "conclusion-external" => Some(AnaphoricityClass::ConclusionExternal),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FixedSide {
    Restriction,
    Scope,
    None,
}

impl FixedSide {
    pub fn as_str(self) -> &'static str {
        match self {
            FixedSide::Restriction => "restriction",
            FixedSide::Scope => "scope",
            FixedSide::None => "none",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        match s {
            "restriction" => Some(FixedSide::Restriction),
            "scope" => Some(FixedSide::Scope),
            "none" => Some(FixedSide::None),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexiconEntry {
    pub rel: String,
    pub class: AnaphoricityClass,
    pub fixed: FixedSide,
}

impl LexiconEntry {
    /// An externally bound side cannot also be the lexically fixed one.
    pub fn is_consistent(&self) -> bool {
        !matches!(
            (self.class, self.fixed),
            (AnaphoricityClass::AntecedentExternal, FixedSide::Restriction)
                | (AnaphoricityClass::ConclusionExternal, FixedSide::Scope)
        )
    }
}

impl fmt::Display for LexiconEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rel {} class={} fixed={}", self.rel, self.class.as_str(), self.fixed.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lexicon {
    entries: BTreeMap<String, LexiconEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("lexicon line {line}: {message}")]
pub struct LexiconError {
    pub line: usize,
    pub message: String,
}

const BUILTIN: &str = "\
rel topic class=both-internal fixed=restriction
rel explanation-node class=both-internal fixed=restriction
rel conditional-nara class=both-internal fixed=restriction
rel explanation-noda class=conclusion-external fixed=none
rel dakara class=antecedent-external fixed=none
";

impl Lexicon {
    /// Topic `wa`, explanative `node` and `noda`, conditional `nara`, and
    /// `dakara` ("therefore").
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("builtin lexicon parses")
    }

    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut entries = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let err = |message: String| LexiconError { line, message };
            let code = raw.split('#').next().unwrap_or("").trim();
            if code.is_empty() {
                continue;
            }
            let mut words = code.split_whitespace();
            if words.next() != Some("rel") {
                return Err(err("entries start with `rel`".into()));
            }
            let rel = words.next().ok_or_else(|| err("missing relation name".into()))?;
            let (mut class, mut fixed) = (None, None);
            for w in words {
                match w.split_once('=') {
                    Some(("class", v)) => {
                        class = Some(AnaphoricityClass::from_name(v).ok_or_else(|| err(format!("unknown class `{v}`")))?)
                    }
                    Some(("fixed", v)) => {
                        fixed = Some(FixedSide::from_name(v).ok_or_else(|| err(format!("unknown side `{v}`")))?)
                    }
                    _ => return Err(err(format!("unexpected `{w}`"))),
                }
            }
            let entry = LexiconEntry {
                rel: rel.to_string(),
                class: class.ok_or_else(|| err("missing class=".into()))?,
                fixed: fixed.ok_or_else(|| err("missing fixed=".into()))?,
            };
            if !entry.is_consistent() {
                return Err(err(format!("{rel}: the external side cannot be the fixed side")));
            }
            if entries.insert(rel.to_string(), entry).is_some() {
                return Err(err(format!("{rel} listed twice")));
            }
        }
        Ok(Lexicon { entries })
    }

    pub fn from_entries(entries: impl IntoIterator<Item = LexiconEntry>) -> Self {
        Lexicon {
            entries: entries.into_iter().map(|e| (e.rel.clone(), e)).collect(),
        }
    }

    pub fn get(&self, rel: &str) -> Option<&LexiconEntry> {
        self.entries.get(rel)
    }

    pub fn entries(&self) -> impl Iterator<Item = &LexiconEntry> {
        self.entries.values()
    }
}

impl fmt::Display for Lexicon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in self.entries.values() {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

pub fn classify(lexicon: &Lexicon, rel: &str) -> Result<AnaphoricityClass> {
    lexicon
        .get(rel)
        .map(|e| e.class)
        .ok_or_else(|| LudError::UnknownRelation(rel.to_string()))
}
