//! Well-formedness checks and the pluggable-label set.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagnostic::{Diagnostic, Location};
use crate::ident::{Hole, Instance, Label};
use crate::model::{Condition, Lud};

/// Labels that a plugging may put into holes: fragment roots other than the
/// top label and other than alfa content.
pub fn pluggable_labels(lud: &Lud) -> BTreeSet<Label> {
    let members: BTreeSet<Label> = lud
        .groupings
        .iter()
        .flat_map(|g| g.members.iter().copied())
        .collect();
    let contents: BTreeSet<Label> = lud.alfa.iter().map(|a| a.content).collect();
    lud.defined_labels()
        .into_iter()
        .filter(|l| *l != lud.top_label() && !members.contains(l) && !contents.contains(l))
        .collect()
}

/// Checks a representation and reports every problem found. An empty result
/// or one holding only warnings means the representation is usable for
/// enumeration.
pub fn validate(lud: &Lud) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    check_mood(lud, &mut out);
    check_hole_owners(lud, &mut out);
    check_groupings(lud, &mut out);
    check_alfa(lud, &mut out);
    check_leq(lud, &mut out);
    check_meta(lud, &mut out);
    check_partitions(lud, &mut out);
    check_arity(lud, &mut out);
    check_instances(lud, &mut out);
    out
}

fn check_mood(lud: &Lud, out: &mut Vec<Diagnostic>) {
    let top = lud.top_label();
    let moods_at_top: Vec<Hole> = lud
        .conditions
        .get(&top)
        .into_iter()
        .flatten()
        .filter_map(|c| match c {
            Condition::Mood { scope, .. } => Some(*scope),
            _ => None,
        })
        .collect();
    match moods_at_top.as_slice() {
        [] => out.push(Diagnostic::error(
            "missing-mood",
            Location::Label(top),
            format!("top label {top} carries no mood condition"),
        )),
        [scope] if *scope != lud.top_hole() => out.push(Diagnostic::error(
            "top-hole-mismatch",
            Location::Label(top),
            format!("mood scope is {scope} but the index names {}", lud.top_hole()),
        )),
        [_] => {}
        _ => out.push(Diagnostic::error(
            "duplicate-mood",
            Location::Label(top),
            format!("top label {top} carries {} mood conditions", moods_at_top.len()),
        )),
    }
    for (label, cs) in &lud.conditions {
        if *label != top && cs.iter().any(|c| matches!(c, Condition::Mood { .. })) {
            out.push(Diagnostic::error(
                "duplicate-mood",
                Location::Label(*label),
                format!("mood condition on {label}, which is not the top label"),
            ));
        }
    }
}

fn check_hole_owners(lud: &Lud, out: &mut Vec<Diagnostic>) {
    let mut owners: BTreeMap<Hole, Vec<Label>> = BTreeMap::new();
    for (label, cs) in &lud.conditions {
        for c in cs {
            for h in c.holes() {
                owners.entry(h).or_default().push(*label);
            }
        }
    }
    for (hole, labels) in owners {
        if labels.len() > 1 {
            let names: Vec<String> = labels.iter().map(Label::to_string).collect();
            out.push(Diagnostic::error(
                "duplicate-hole-owner",
                Location::Item(hole.to_string()),
                format!("{hole} is an argument of {} conditions ({})", labels.len(), names.join(", ")),
            ));
        }
    }
}

fn check_groupings(lud: &Lud, out: &mut Vec<Diagnostic>) {
    let mut seen_roots = BTreeSet::new();
    let mut seen_members: BTreeMap<Label, Label> = BTreeMap::new();
    for g in &lud.groupings {
        if !seen_roots.insert(g.root) {
            out.push(Diagnostic::error(
                "bad-grouping",
                Location::Label(g.root),
                format!("{} roots more than one group", g.root),
            ));
        }
        for m in &g.members {
            if let Some(prev) = seen_members.insert(*m, g.root) {
                out.push(Diagnostic::error(
                    "bad-grouping",
                    Location::Label(*m),
                    format!("{m} is a member of both {prev} and {}", g.root),
                ));
            }
            if !lud.conditions.get(m).is_some_and(|c| !c.is_empty()) {
                out.push(Diagnostic::error(
                    "undefined-ident",
                    Location::Label(*m),
                    format!("group member {m} of {} carries no condition", g.root),
                ));
            }
        }
    }
    for root in &seen_roots {
        if let Some(parent) = seen_members.get(root) {
            out.push(Diagnostic::error(
                "bad-grouping",
                Location::Label(*root),
                format!("group root {root} is itself a member of {parent}"),
            ));
        }
    }
    if seen_members.contains_key(&lud.top_label()) {
        out.push(Diagnostic::error(
            "bad-grouping",
            Location::Label(lud.top_label()),
            "the top label cannot be a group member",
        ));
    }
}

fn check_alfa(lud: &Lud, out: &mut Vec<Diagnostic>) {
    for a in &lud.alfa {
        for l in [a.anchor, a.content] {
            if !lud.is_defined(l) {
                out.push(Diagnostic::error(
                    "undefined-ident",
                    Location::Item(a.to_string()),
                    format!("{l} is not defined"),
                ));
            }
        }
        if a.content == lud.top_label() || lud.fragment_of(a.content) != a.content {
            out.push(Diagnostic::error(
                "bad-alfa",
                Location::Item(a.to_string()),
                format!("alfa content {} must be a fragment of its own", a.content),
            ));
        }
        let owned: Vec<Hole> = lud
            .fragment_conditions(a.content)
            .iter()
            .flat_map(|(_, c)| c.holes())
            .collect();
        if !owned.is_empty() {
            out.push(Diagnostic::error(
                "unpluggable-hole",
                Location::Item(a.to_string()),
                format!("alfa content {} owns {} hole(s) that no plugging can reach", a.content, owned.len()),
            ));
        }
    }
}

fn check_leq(lud: &Lud, out: &mut Vec<Diagnostic>) {
    let holes = lud.holes();
    let contents: BTreeSet<Label> = lud.alfa.iter().map(|a| a.content).collect();
    for c in &lud.leq {
        if !lud.is_defined(c.lower) {
            out.push(Diagnostic::error(
                "undefined-ident",
                Location::Item(c.to_string()),
                format!("{} is not defined", c.lower),
            ));
        } else if contents.contains(&lud.fragment_of(c.lower)) {
            out.push(Diagnostic::error(
                "unpluggable-leq",
                Location::Item(c.to_string()),
                format!("{} is alfa content and takes no scope", c.lower),
            ));
        }
        if !holes.contains(&c.upper) {
            out.push(Diagnostic::error(
                "undefined-ident",
                Location::Item(c.to_string()),
                format!("{} is not owned by any condition", c.upper),
            ));
        }
    }
}

fn check_meta(lud: &Lud, out: &mut Vec<Diagnostic>) {
    for m in &lud.meta {
        let mut ok = true;
        for l in [m.host, m.modifier] {
            if !lud.is_defined(l) {
                ok = false;
                out.push(Diagnostic::error(
                    "undefined-ident",
                    Location::Item(format!("modifies({},{})", m.host, m.modifier)),
                    format!("{l} is not defined"),
                ));
            }
        }
        if !ok {
            continue;
        }
        let markers = |root: Label| -> BTreeSet<Instance> {
            lud.fragment_conditions(root)
                .iter()
                .flat_map(|(_, c)| c.instances())
                .collect()
        };
        let own: BTreeSet<Instance> = lud
            .conditions
            .get(&m.modifier)
            .into_iter()
            .flatten()
            .flat_map(Condition::instances)
            .collect();
        let host = markers(m.host);
        let host_without_modifier: BTreeSet<Instance> = lud
            .fragment_conditions(m.host)
            .iter()
            .filter(|(l, _)| *l != m.modifier)
            .flat_map(|(_, c)| c.instances())
            .collect();
        let shared = if host_without_modifier.is_empty() { &host } else { &host_without_modifier };
        if own.is_disjoint(shared) {
            out.push(Diagnostic::warning(
                "modifier-marker-mismatch",
                Location::Label(m.modifier),
                format!("modifier {} shares no marker with host {}", m.modifier, m.host),
            ));
        }
    }
}

fn check_partitions(lud: &Lud, out: &mut Vec<Diagnostic>) {
    for (label, rel, restriction, scope) in lud.discrels() {
        let below = |h: Hole| -> BTreeSet<Label> {
            lud.leq
                .iter()
                .filter(|c| c.upper == h)
                .map(|c| lud.fragment_of(c.lower))
                .collect()
        };
        let both: Vec<String> = below(restriction)
            .intersection(&below(scope))
            .map(Label::to_string)
            .collect();
        if !both.is_empty() {
            out.push(Diagnostic::error(
                "partition-conflict",
                Location::Label(label),
                format!(
                    "{} constrained under both {restriction} and {scope} of discrel({rel}) at {label}",
                    both.join(", ")
                ),
            ));
        }
    }
}

fn check_arity(lud: &Lud, out: &mut Vec<Diagnostic>) {
    let pluggable = pluggable_labels(lud).len();
    // The top hole is plugged like any other.
    let holes = lud.holes().len();
    if pluggable != holes {
        out.push(Diagnostic::error(
            "arity-mismatch",
            Location::Whole,
            format!("{pluggable} pluggable label(s) for {holes} hole(s)"),
        ));
    }
}

fn check_instances(lud: &Lud, out: &mut Vec<Diagnostic>) {
    let mut declared: BTreeMap<Instance, Label> = BTreeMap::new();
    let mut used: BTreeSet<Instance> = BTreeSet::new();
    for (label, cs) in &lud.conditions {
        for c in cs {
            match c {
                Condition::Dm { marker } => {
                    declared.entry(*marker).or_insert(*label);
                }
                other => used.extend(other.instances()),
            }
        }
    }
    used.extend(lud.alfa.iter().map(|a| a.marker));
    for i in &used {
        if !declared.contains_key(i) {
            out.push(Diagnostic::warning(
                "undeclared-instance",
                Location::Item(i.to_string()),
                format!("{i} is used but no dm condition introduces it"),
            ));
        }
    }
    for (i, label) in &declared {
        if used.contains(i) {
            continue;
        }
        // A lone dm fragment stands in for material outside the sentence.
        let root = lud.fragment_of(*label);
        let lone = lud.fragment_conditions(root).len() == 1;
        if !lone {
            out.push(Diagnostic::warning(
                "unused-instance",
                Location::Label(*label),
                format!("{i} is introduced at {label} but never used"),
            ));
        }
    }
}
