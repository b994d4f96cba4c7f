//! Preference-based ranking of readings with several discourse relations.
//!
//! Rules, applied in order as filters over the admissible pluggings:
//!
//! * R1: a relation with both parts sentence-internal must not outscope a
//!   relation with an externally bound part.
//! * R2: between two sentence-internal relations, the one whose marker comes
//!   later in the surface string must not outscope the earlier one.
//! * R3: externally bound relations are not ordered among themselves.
//!
//! A filter step that would discard every remaining reading is skipped for
//! that pair of relations, with a warning.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::engine::{enumerate, EnumerationOptions};
use crate::error::{LudError, Result};
use crate::ident::Label;
use crate::lexicon::{classify, AnaphoricityClass, Lexicon};
use crate::model::{Lud, Plugging};
use crate::tree::DominanceTree;

/// Surface position of each discourse-relation morpheme, keyed by the label
/// of its discrel condition. Stands in for c-command: earlier means higher.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurfaceMeta {
    positions: BTreeMap<Label, usize>,
}

impl SurfaceMeta {
    pub fn new(positions: impl IntoIterator<Item = (Label, usize)>) -> Result<Self, String> {
        let mut out = BTreeMap::new();
        let mut seen = BTreeSet::new();
        for (label, pos) in positions {
            if !seen.insert(pos) {
                return Err(format!("surface position {pos} used twice"));
            }
            if out.insert(label, pos).is_some() {
                return Err(format!("{label} given twice"));
            }
        }
        Ok(SurfaceMeta { positions: out })
    }

    pub fn position(&self, label: Label) -> Option<usize> {
        self.positions.get(&label).copied()
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        self.positions.keys().copied()
    }

    /// Same metadata with the positions of `a` and `b` exchanged.
    pub fn swapped(&self, a: Label, b: Label) -> Self {
        let mut positions = self.positions.clone();
        if let (Some(pa), Some(pb)) = (self.position(a), self.position(b)) {
            positions.insert(a, pb);
            positions.insert(b, pa);
        }
        SurfaceMeta { positions }
    }
}

/// `l2=0 l3=3 l4=6`
impl FromStr for SurfaceMeta {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let pairs = s
            .split_whitespace()
            .map(|w| {
                let (l, p) = w.split_once('=').ok_or_else(|| format!("expected label=position, found `{w}`"))?;
                let label: Label = l.parse().map_err(|e: crate::ident::IdentError| e.to_string())?;
                let pos: usize = p.parse().map_err(|_| format!("bad position `{p}`"))?;
                Ok((label, pos))
            })
            .collect::<Result<Vec<_>, String>>()?;
        SurfaceMeta::new(pairs)
    }
}

impl fmt::Display for SurfaceMeta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions.iter().map(|(l, p)| format!("{l}={p}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Pairs `(outer, inner)` of discrel labels where `inner` lies below one of
/// `outer`'s holes.
pub fn discrel_order(lud: &Lud, plugging: &Plugging) -> BTreeSet<(Label, Label)> {
    let tree = DominanceTree::new(lud, plugging);
    let discrels = lud.discrels();
    let mut out = BTreeSet::new();
    for &(outer, _, restriction, scope) in &discrels {
        let below: BTreeSet<Label> = tree
            .labels_below(restriction)
            .union(&tree.labels_below(scope))
            .copied()
            .collect();
        for &(inner, ..) in &discrels {
            if inner != outer && below.contains(&lud.fragment_of(inner)) {
                out.insert((outer, inner));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    R1,
    R2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankGroup {
    /// Number of distinct rules the readings in this group violate.
    pub violated_rules: usize,
    pub pluggings: Vec<Plugging>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RankedPluggings {
    pub groups: Vec<RankGroup>,
    pub warnings: Vec<String>,
}

impl RankedPluggings {
    /// The preferred readings (empty only when nothing is admissible).
    pub fn rank1(&self) -> &[Plugging] {
        self.groups.first().map_or(&[], |g| g.pluggings.as_slice())
    }

    pub fn all(&self) -> impl Iterator<Item = &Plugging> {
        self.groups.iter().flat_map(|g| g.pluggings.iter())
    }
}

/// Forbidden `(outer, inner)` dominance between two discrels under a rule.
#[derive(Clone, Copy, Debug)]
struct Ban {
    rule: Rule,
    outer: Label,
    inner: Label,
}

pub fn resolve(lud: &Lud, meta: &SurfaceMeta, lexicon: &Lexicon) -> Result<RankedPluggings> {
    let discrels = lud.discrels();
    let mut classes = BTreeMap::new();
    for &(label, rel, ..) in &discrels {
        classes.insert(label, classify(lexicon, rel)?);
        if meta.position(label).is_none() {
            return Err(LudError::MissingSurfacePosition(label));
        }
    }
    let readings = enumerate(lud, EnumerationOptions::default())?;
    Ok(rank(lud, &readings, &classes, meta))
}

fn rank(
    lud: &Lud,
    readings: &[Plugging],
    classes: &BTreeMap<Label, AnaphoricityClass>,
    meta: &SurfaceMeta,
) -> RankedPluggings {
    let internal = |l: &Label| classes[l] == AnaphoricityClass::BothInternal;
    let mut bans = Vec::new();
    for outer in classes.keys().filter(|l| internal(l)) {
        for inner in classes.keys().filter(|l| !internal(l)) {
            bans.push(Ban { rule: Rule::R1, outer: *outer, inner: *inner });
        }
    }
    for a in classes.keys().filter(|l| internal(l)) {
        for b in classes.keys().filter(|l| internal(l)) {
            let (pa, pb) = (meta.position(*a), meta.position(*b));
            if pa > pb {
                bans.push(Ban { rule: Rule::R2, outer: *a, inner: *b });
            }
        }
    }

    let orders: Vec<BTreeSet<(Label, Label)>> = readings.iter().map(|p| discrel_order(lud, p)).collect();
    let mut alive: Vec<bool> = vec![true; readings.len()];
    let mut applied = Vec::new();
    let mut warnings = Vec::new();
    for ban in bans {
        let breaks = |i: usize| orders[i].contains(&(ban.outer, ban.inner));
        let remaining = (0..readings.len()).filter(|&i| alive[i] && !breaks(i)).count();
        let before = alive.iter().filter(|a| **a).count();
        if remaining == 0 && before > 0 {
            warnings.push(format!(
                "{:?} skipped for {} over {}: it would discard every remaining reading",
                ban.rule, ban.outer, ban.inner
            ));
            continue;
        }
        for (i, a) in alive.iter_mut().enumerate() {
            if breaks(i) {
                *a = false;
            }
        }
        applied.push(ban);
    }

    let mut by_count: BTreeMap<usize, Vec<Plugging>> = BTreeMap::new();
    for (i, p) in readings.iter().enumerate() {
        let rules: BTreeSet<Rule> = applied
            .iter()
            .filter(|b| orders[i].contains(&(b.outer, b.inner)))
            .map(|b| b.rule)
            .collect();
        by_count.entry(rules.len()).or_default().push(p.clone());
    }
    RankedPluggings {
        groups: by_count
            .into_iter()
            .map(|(violated_rules, pluggings)| RankGroup { violated_rules, pluggings })
            .collect(),
        warnings,
    }
}
