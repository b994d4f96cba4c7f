//! The LUD object model: labeled conditions, holes and scope constraints.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::ident::{Hole, Instance, Label};

/// Sentence mood carried by the top condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mood {
    Decl,
    Int,
    Imp,
}

impl Mood {
    pub fn as_str(self) -> &'static str {
        match self {
            Mood::Decl => "decl",
            Mood::Int => "int",
            Mood::Imp => "imp",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "decl" => Some(Mood::Decl),
            "int" => Some(Mood::Int),
            "imp" => Some(Mood::Imp),
            _ => None,
        }
    }
}

/// A single labeled condition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Condition {
    Mood { mood: Mood, scope: Hole },
    /// A discourse relation between its restriction (antecedent part) and
    /// its scope (conclusion part).
    DiscRel { rel: String, restriction: Hole, scope: Hole },
    /// One-hole predicate that collects a class of scope-takers above the
    /// rest of the clause.
    Mode { scope: Hole },
    Neg { marker: Instance, scope: Hole },
    Dm { marker: Instance },
    Pred { name: String, marker: Instance },
    Role { event: Instance, role: String, filler: Instance },
}

impl Condition {
    /// Holes this condition owns, in argument order.
    pub fn holes(&self) -> Vec<Hole> {
        match self {
            Condition::Mood { scope, .. }
            | Condition::Mode { scope }
            | Condition::Neg { scope, .. } => vec![*scope],
            Condition::DiscRel { restriction, scope, .. } => vec![*restriction, *scope],
            Condition::Dm { .. } | Condition::Pred { .. } | Condition::Role { .. } => Vec::new(),
        }
    }

    /// Discourse markers mentioned by this condition.
    pub fn instances(&self) -> Vec<Instance> {
        match self {
            Condition::Neg { marker, .. }
            | Condition::Dm { marker }
            | Condition::Pred { marker, .. } => vec![*marker],
            Condition::Role { event, filler, .. } => vec![*event, *filler],
            Condition::Mood { .. } | Condition::DiscRel { .. } | Condition::Mode { .. } => {
                Vec::new()
            }
        }
    }

    pub fn is_scope_bearing(&self) -> bool {
        !self.holes().is_empty()
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::Mood { mood, scope } => write!(f, "mood({},{})", mood.as_str(), scope),
            Condition::DiscRel { rel, restriction, scope } => {
                write!(f, "discrel({rel},{restriction},{scope})")
            }
            Condition::Mode { scope } => write!(f, "mode({scope})"),
            Condition::Neg { marker, scope } => write!(f, "neg({marker},{scope})"),
            Condition::Dm { marker } => write!(f, "dm({marker})"),
            Condition::Pred { name, marker } => write!(f, "predicate({name},{marker})"),
            Condition::Role { event, role, filler } => write!(f, "role({event},{role},{filler})"),
        }
    }
}

/// `root-inc([members...])`: the members are built into one DRS together.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grouping {
    pub root: Label,
    pub members: Vec<Label>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlfaSort {
    Undef,
    Pron,
    Def,
}

impl AlfaSort {
    pub fn as_str(self) -> &'static str {
        match self {
            AlfaSort::Undef => "undef",
            AlfaSort::Pron => "pron",
            AlfaSort::Def => "def",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "undef" => Some(AlfaSort::Undef),
            "pron" => Some(AlfaSort::Pron),
            "def" => Some(AlfaSort::Def),
            _ => None,
        }
    }
}

/// Presuppositional or anaphoric material. `content` takes no part in
/// scope resolution; it is attached wherever `anchor` ends up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Alfa {
    pub marker: Instance,
    pub sort: AlfaSort,
    pub anchor: Label,
    pub content: Label,
}

impl Alfa {
    fn sort_key(&self) -> (Label, Label, Instance, AlfaSort) {
        (self.anchor, self.content, self.marker, self.sort)
    }
}

impl fmt::Display for Alfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "alfa({},{},{},{})",
            self.marker,
            self.sort.as_str(),
            self.anchor,
            self.content
        )
    }
}

/// `lower` must end up at or below `upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Leq {
    pub lower: Label,
    pub upper: Hole,
}

impl Leq {
    pub fn new(lower: Label, upper: Hole) -> Self {
        Leq { lower, upper }
    }
}

impl fmt::Display for Leq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "leq({},{})", self.lower, self.upper)
    }
}

/// `modifies(host, modifier)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modifies {
    pub host: Label,
    pub modifier: Label,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Index {
    /// Leading instance of the three-field index form. Kept, never used.
    pub instance: Option<Instance>,
    pub top_label: Label,
    pub top_hole: Hole,
}

/// An underspecified DRS description: holes, labeled conditions and
/// constraints, plus grouping and modifier metadata.
///
/// Collections are kept in canonical order (see [`Lud::normalize`]) so that
/// structural equality does not depend on the order entries were added in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lud {
    pub index: Index,
    pub conditions: BTreeMap<Label, Vec<Condition>>,
    pub groupings: Vec<Grouping>,
    pub meta: Vec<Modifies>,
    pub alfa: Vec<Alfa>,
    pub leq: BTreeSet<Leq>,
}

impl Lud {
    pub fn new(top_label: Label, top_hole: Hole) -> Self {
        Lud {
            index: Index {
                instance: None,
                top_label,
                top_hole,
            },
            conditions: BTreeMap::new(),
            groupings: Vec::new(),
            meta: Vec::new(),
            alfa: Vec::new(),
            leq: BTreeSet::new(),
        }
    }

    pub fn top_label(&self) -> Label {
        self.index.top_label
    }

    pub fn top_hole(&self) -> Hole {
        self.index.top_hole
    }

    pub fn add_condition(&mut self, label: Label, condition: Condition) -> &mut Self {
        self.conditions.entry(label).or_default().push(condition);
        self
    }

    pub fn add_group(&mut self, root: Label, members: impl IntoIterator<Item = Label>) -> &mut Self {
        self.groupings.push(Grouping {
            root,
            members: members.into_iter().collect(),
        });
        self.normalize();
        self
    }

    pub fn add_leq(&mut self, lower: Label, upper: Hole) -> &mut Self {
        self.leq.insert(Leq::new(lower, upper));
        self
    }

    pub fn add_alfa(&mut self, alfa: Alfa) -> &mut Self {
        self.alfa.push(alfa);
        self.normalize();
        self
    }

    pub fn add_modifies(&mut self, host: Label, modifier: Label) -> &mut Self {
        self.meta.push(Modifies { host, modifier });
        self.normalize();
        self
    }

    /// Puts order-free sections into canonical order. Conditions under one
    /// label keep their relative order.
    pub fn normalize(&mut self) {
        self.groupings.sort_by_key(|g| g.root);
        self.meta.sort();
        self.alfa.sort_by_key(Alfa::sort_key);
    }

    /// All holes owned by some condition, ascending.
    pub fn holes(&self) -> BTreeSet<Hole> {
        self.conditions
            .values()
            .flatten()
            .flat_map(Condition::holes)
            .collect()
    }

    /// Labels that carry conditions or root a group.
    pub fn defined_labels(&self) -> BTreeSet<Label> {
        self.conditions
            .iter()
            .filter(|(_, c)| !c.is_empty())
            .map(|(l, _)| *l)
            .chain(self.groupings.iter().map(|g| g.root))
            .collect()
    }

    pub fn is_defined(&self, label: Label) -> bool {
        self.conditions.get(&label).is_some_and(|c| !c.is_empty())
            || self.groupings.iter().any(|g| g.root == label)
    }

    /// Group root of `label` if it is a group member, else `label` itself.
    pub fn fragment_of(&self, label: Label) -> Label {
        self.groupings
            .iter()
            .find(|g| g.members.contains(&label))
            .map_or(label, |g| g.root)
    }

    /// Labels making up a fragment: the root itself, then its members in
    /// listed order.
    pub fn fragment_labels(&self, root: Label) -> Vec<Label> {
        let mut out = vec![root];
        for g in self.groupings.iter().filter(|g| g.root == root) {
            out.extend(g.members.iter().copied());
        }
        out
    }

    /// Conditions of a fragment in fragment-label order.
    pub fn fragment_conditions(&self, root: Label) -> Vec<(Label, &Condition)> {
        self.fragment_labels(root)
            .into_iter()
            .flat_map(|l| {
                self.conditions
                    .get(&l)
                    .into_iter()
                    .flatten()
                    .map(move |c| (l, c))
            })
            .collect()
    }

    /// Every discourse-relation condition with its label.
    pub fn discrels(&self) -> Vec<(Label, &str, Hole, Hole)> {
        self.conditions
            .iter()
            .flat_map(|(l, cs)| cs.iter().map(move |c| (*l, c)))
            .filter_map(|(l, c)| match c {
                Condition::DiscRel { rel, restriction, scope } => {
                    Some((l, rel.as_str(), *restriction, *scope))
                }
                _ => None,
            })
            .collect()
    }

    /// Label carrying the condition that owns `hole`, if any.
    pub fn hole_owner(&self, hole: Hole) -> Option<Label> {
        self.conditions
            .iter()
            .find(|(_, cs)| cs.iter().any(|c| c.holes().contains(&hole)))
            .map(|(l, _)| *l)
    }

    pub fn max_label(&self) -> u32 {
        let mut max = self.top_label().0;
        for l in self.defined_labels() {
            max = max.max(l.0);
        }
        for g in &self.groupings {
            max = g.members.iter().fold(max, |m, l| m.max(l.0));
        }
        for c in &self.leq {
            max = max.max(c.lower.0);
        }
        for a in &self.alfa {
            max = max.max(a.anchor.0).max(a.content.0);
        }
        for m in &self.meta {
            max = max.max(m.host.0).max(m.modifier.0);
        }
        max
    }

    pub fn max_hole(&self) -> u32 {
        let mut max = self.top_hole().0;
        for h in self.holes() {
            max = max.max(h.0);
        }
        for c in &self.leq {
            max = max.max(c.upper.0);
        }
        max
    }

    /// Consistently renames labels and holes; identifiers missing from the
    /// maps are kept.
    pub fn rename(&self, labels: &BTreeMap<Label, Label>, holes: &BTreeMap<Hole, Hole>) -> Lud {
        let l = |x: Label| *labels.get(&x).unwrap_or(&x);
        let h = |x: Hole| *holes.get(&x).unwrap_or(&x);
        let mut out = Lud::new(l(self.top_label()), h(self.top_hole()));
        out.index.instance = self.index.instance;
        for (label, cs) in &self.conditions {
            for c in cs {
                let c = match c.clone() {
                    Condition::Mood { mood, scope } => Condition::Mood { mood, scope: h(scope) },
                    Condition::DiscRel { rel, restriction, scope } => Condition::DiscRel {
                        rel,
                        restriction: h(restriction),
                        scope: h(scope),
                    },
                    Condition::Mode { scope } => Condition::Mode { scope: h(scope) },
                    Condition::Neg { marker, scope } => Condition::Neg { marker, scope: h(scope) },
                    other => other,
                };
                out.add_condition(l(*label), c);
            }
        }
        out.groupings = self
            .groupings
            .iter()
            .map(|g| Grouping {
                root: l(g.root),
                members: g.members.iter().map(|m| l(*m)).collect(),
            })
            .collect();
        out.meta = self
            .meta
            .iter()
            .map(|m| Modifies {
                host: l(m.host),
                modifier: l(m.modifier),
            })
            .collect();
        out.alfa = self
            .alfa
            .iter()
            .map(|a| Alfa {
                anchor: l(a.anchor),
                content: l(a.content),
                ..*a
            })
            .collect();
        out.leq = self.leq.iter().map(|c| Leq::new(l(c.lower), h(c.upper))).collect();
        out.normalize();
        out
    }
}

/// An assignment of labels to holes. Ordering is the canonical reading
/// order: lexicographic by hole, then by plugged label.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Plugging {
    pub assignment: BTreeMap<Hole, Label>,
}

impl Plugging {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn plug(mut self, hole: Hole, label: Label) -> Self {
        self.assignment.insert(hole, label);
        self
    }

    pub fn get(&self, hole: Hole) -> Option<Label> {
        self.assignment.get(&hole).copied()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

impl FromIterator<(Hole, Label)> for Plugging {
    fn from_iter<T: IntoIterator<Item = (Hole, Label)>>(iter: T) -> Self {
        Plugging {
            assignment: iter.into_iter().collect(),
        }
    }
}

/// One binding per line, `plug_into(<label>,<hole>)`, sorted by hole.
impl fmt::Display for Plugging {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (hole, label) in &self.assignment {
            writeln!(f, "plug_into({label},{hole})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationKind {
    NotInjective,
    NotTotal,
    Cyclic,
    LeqUnsatisfied,
    BadCodomain,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::NotInjective => "not-injective",
            ViolationKind::NotTotal => "not-total",
            ViolationKind::Cyclic => "cyclic",
            ViolationKind::LeqUnsatisfied => "leq-unsatisfied",
            ViolationKind::BadCodomain => "bad-codomain",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ViolationDetail {
    Hole(Hole),
    Label(Label),
    /// `hole -> label` edge of the plugging.
    Edge(Hole, Label),
    Leq(Leq),
}

impl fmt::Display for ViolationDetail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationDetail::Hole(h) => write!(f, "{h}"),
            ViolationDetail::Label(l) => write!(f, "{l}"),
            ViolationDetail::Edge(h, l) => write!(f, "{h} <- {l}"),
            ViolationDetail::Leq(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: ViolationDetail,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.as_str(), self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub admissible: bool,
    pub violations: Vec<Violation>,
}

impl Verdict {
    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}
