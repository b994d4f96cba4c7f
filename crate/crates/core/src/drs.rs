//! Building and rendering the DRS described by an admissible plugging.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::admissible::is_admissible;
use crate::error::{LudError, Result};
use crate::ident::{Hole, Instance, Label};
use crate::model::{AlfaSort, Condition, Lud, Plugging};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Connective {
    /// Two boxes: restriction, then scope.
    DiscRel(String),
    /// One box under a negation introduced with the given marker.
    Neg(Instance),
    /// Contributes nothing; its box is drawn as if inlined.
    ModeTransparent,
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connective::DiscRel(rel) => write!(f, "discrel({rel})"),
            Connective::Neg(i) => write!(f, "neg({i})"),
            Connective::ModeTransparent => f.write_str("mode"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DrsChild {
    pub connective: Connective,
    pub boxes: Vec<DrsBox>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DrsBox {
    pub referents: Vec<Instance>,
    pub conditions: Vec<RenderedCondition>,
    pub children: Vec<DrsChild>,
}

/// A condition as written inside a box, with the markers it mentions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RenderedCondition {
    pub text: String,
    pub instances: Vec<Instance>,
}

impl DrsBox {
    pub fn is_empty(&self) -> bool {
        self.referents.is_empty() && self.conditions.is_empty() && self.children.is_empty()
    }

    fn declare(&mut self, i: Instance) {
        if !self.referents.contains(&i) {
            self.referents.push(i);
        }
    }

    fn merge(&mut self, other: DrsBox) {
        for r in other.referents {
            self.declare(r);
        }
        self.conditions.extend(other.conditions);
        self.children.extend(other.children);
    }

    /// Markers used in this box tree but not declared in the using box or an
    /// accessible one. The scope box of a discourse relation sees the
    /// referents of its restriction box.
    pub fn unbound_instances(&self) -> BTreeSet<Instance> {
        let mut out = BTreeSet::new();
        self.collect_unbound(&BTreeSet::new(), &mut out);
        out
    }

    fn collect_unbound(&self, outer: &BTreeSet<Instance>, out: &mut BTreeSet<Instance>) {
        let mut env = outer.clone();
        env.extend(self.referents.iter().copied());
        for c in &self.conditions {
            out.extend(c.instances.iter().filter(|i| !env.contains(i)));
        }
        for child in &self.children {
            if let Connective::Neg(i) = child.connective {
                if !env.contains(&i) {
                    out.insert(i);
                }
            }
            let mut inner = env.clone();
            for b in &child.boxes {
                b.collect_unbound(&inner, out);
                if matches!(child.connective, Connective::DiscRel(_)) {
                    inner.extend(b.referents.iter().copied());
                }
            }
        }
    }
}

struct Builder<'a> {
    lud: &'a Lud,
    plugging: &'a Plugging,
    /// Modifier labels whose conditions are drawn in another fragment.
    relocated: BTreeMap<Label, Vec<Label>>,
    moved: BTreeSet<Label>,
}

impl<'a> Builder<'a> {
    fn new(lud: &'a Lud, plugging: &'a Plugging) -> Self {
        let mut relocated: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
        let mut moved = BTreeSet::new();
        for m in &lud.meta {
            let host = lud.fragment_of(m.host);
            if lud.fragment_of(m.modifier) != host {
                relocated.entry(host).or_default().push(m.modifier);
                moved.insert(m.modifier);
            }
        }
        Builder {
            lud,
            plugging,
            relocated,
            moved,
        }
    }

    fn hole(&self, hole: Hole) -> DrsBox {
        match self.plugging.get(hole) {
            Some(l) => self.fragment(l),
            None => DrsBox::default(),
        }
    }

    fn fragment(&self, root: Label) -> DrsBox {
        let mut b = DrsBox::default();
        for label in self.lud.fragment_labels(root) {
            self.add_label(&mut b, label, true);
        }
        for modifier in self.relocated.get(&root).into_iter().flatten() {
            self.add_label(&mut b, *modifier, false);
        }
        let labels = self.lud.fragment_labels(root);
        for a in &self.lud.alfa {
            if !labels.contains(&a.anchor) {
                continue;
            }
            let content = self.fragment(a.content);
            match a.sort {
                AlfaSort::Undef | AlfaSort::Def => b.merge(content),
                AlfaSort::Pron => {
                    for r in &content.referents {
                        b.declare(*r);
                    }
                    b.conditions.push(RenderedCondition {
                        text: format!("anaph({})", a.marker),
                        instances: vec![a.marker],
                    });
                    b.conditions.extend(content.conditions);
                    b.children.extend(content.children);
                }
            }
        }
        b
    }

    fn add_label(&self, b: &mut DrsBox, label: Label, skip_moved: bool) {
        if skip_moved && self.moved.contains(&label) {
            return;
        }
        for c in self.lud.conditions.get(&label).into_iter().flatten() {
            match c {
                Condition::Dm { marker } => b.declare(*marker),
                Condition::Pred { name, marker } => b.conditions.push(RenderedCondition {
                    text: format!("{name}({marker})"),
                    instances: vec![*marker],
                }),
                Condition::Role { event, role, filler } => b.conditions.push(RenderedCondition {
                    text: format!("{role}({event},{filler})"),
                    instances: vec![*event, *filler],
                }),
                Condition::DiscRel { rel, restriction, scope } => b.children.push(DrsChild {
                    connective: Connective::DiscRel(rel.clone()),
                    boxes: vec![self.hole(*restriction), self.hole(*scope)],
                }),
                Condition::Neg { marker, scope } => b.children.push(DrsChild {
                    connective: Connective::Neg(*marker),
                    boxes: vec![self.hole(*scope)],
                }),
                Condition::Mode { scope } | Condition::Mood { scope, .. } => b.merge(self.hole(*scope)),
            }
        }
    }
}

/// Instantiates `plugging` into a nested DRS, starting from the top
/// fragment.
pub fn build_drs(lud: &Lud, plugging: &Plugging) -> Result<DrsBox> {
    let verdict = is_admissible(lud, plugging)?;
    if !verdict.admissible {
        let why: Vec<String> = verdict.violations.iter().map(ToString::to_string).collect();
        return Err(LudError::InadmissiblePlugging(why.join("; ")));
    }
    Ok(Builder::new(lud, plugging).fragment(lud.top_label()))
}

/// ASCII box drawing. A box is framed with `+---+` rules; its referents
/// come first, then a rule, then one condition per line, then each child
/// under a connective header with its boxes indented. Boxes of a discourse
/// relation are separated by `==>`.
pub fn render_box(d: &DrsBox) -> String {
    let mut out = String::new();
    for line in box_lines(d) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn box_lines(d: &DrsBox) -> Vec<String> {
    let mut inner: Vec<Option<String>> = Vec::new();
    if !d.is_empty() {
        let refs: Vec<String> = d.referents.iter().map(Instance::to_string).collect();
        inner.push(Some(refs.join(" ")));
        inner.push(None);
        for c in &d.conditions {
            inner.push(Some(c.text.clone()));
        }
        for child in &d.children {
            inner.push(Some(child.connective.to_string()));
            for (i, b) in child.boxes.iter().enumerate() {
                if i > 0 {
                    inner.push(Some("  ==>".to_string()));
                }
                for l in box_lines(b) {
                    inner.push(Some(format!("  {l}")));
                }
            }
        }
    }
    let width = inner
        .iter()
        .flatten()
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(0);
    let rule = format!("+{}+", "-".repeat(width + 2));
    let mut lines = vec![rule.clone()];
    for l in inner {
        match l {
            Some(text) => {
                let pad = width - text.chars().count();
                lines.push(format!("| {text}{} |", " ".repeat(pad)));
            }
            None => lines.push(rule.clone()),
        }
    }
    lines.push(rule);
    lines
}

/// Compact scope term, e.g. `topic(getsuyoubi, daijoubu)`.
///
/// A fragment is written through its first scope-bearing condition if it
/// has one; otherwise as its first predicate name, as `anaph` when it is a
/// lone discourse marker, or else as its label.
pub fn render_term(lud: &Lud, plugging: &Plugging) -> Result<String> {
    let verdict = is_admissible(lud, plugging)?;
    if !verdict.admissible {
        let why: Vec<String> = verdict.violations.iter().map(ToString::to_string).collect();
        return Err(LudError::InadmissiblePlugging(why.join("; ")));
    }
    let mut out = String::new();
    term_of_fragment(lud, plugging, lud.top_label(), &mut out);
    Ok(out)
}

fn term_of_hole(lud: &Lud, plugging: &Plugging, hole: Hole, out: &mut String) {
    match plugging.get(hole) {
        Some(l) => term_of_fragment(lud, plugging, l, out),
        None => out.push_str(&hole.to_string()),
    }
}

fn term_of_fragment(lud: &Lud, plugging: &Plugging, root: Label, out: &mut String) {
    let conds = lud.fragment_conditions(root);
    if let Some((_, c)) = conds.iter().find(|(_, c)| c.is_scope_bearing()) {
        match c {
            Condition::DiscRel { rel, restriction, scope } => {
                out.push_str(rel);
                out.push('(');
                term_of_hole(lud, plugging, *restriction, out);
                out.push_str(", ");
                term_of_hole(lud, plugging, *scope, out);
                out.push(')');
            }
            Condition::Neg { scope, .. } => {
                out.push_str("neg(");
                term_of_hole(lud, plugging, *scope, out);
                out.push(')');
            }
            Condition::Mode { scope } | Condition::Mood { scope, .. } => term_of_hole(lud, plugging, *scope, out),
            _ => unreachable!("scope-bearing"),
        }
        return;
    }
    if let Some(name) = conds.iter().find_map(|(_, c)| match c {
        Condition::Pred { name, .. } => Some(name),
        _ => None,
    }) {
        out.push_str(name);
    } else if matches!(conds.as_slice(), [(_, Condition::Dm { .. })]) {
        out.push_str("anaph");
    } else {
        out.push_str(&root.to_string());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_box_is_two_lines() {
        assert_eq!(render_box(&DrsBox::default()), "+--+\n+--+\n");
    }

    #[test]
    fn accessibility_through_relation() {
        let restriction = DrsBox {
            referents: vec![Instance(1)],
            ..DrsBox::default()
        };
        let scope = DrsBox {
            conditions: vec![RenderedCondition {
                text: "p(i1)".into(),
                instances: vec![Instance(1)],
            }],
            ..DrsBox::default()
        };
        let root = DrsBox {
            children: vec![DrsChild {
                connective: Connective::DiscRel("topic".into()),
                boxes: vec![restriction.clone(), scope.clone()],
            }],
            ..DrsBox::default()
        };
        assert!(root.unbound_instances().is_empty());
        let reversed = DrsBox {
            children: vec![DrsChild {
                connective: Connective::DiscRel("topic".into()),
                boxes: vec![scope, restriction],
            }],
            ..DrsBox::default()
        };
        assert_eq!(reversed.unbound_instances(), BTreeSet::from([Instance(1)]));
    }
}
