//! Insertion of a `mode` condition beneath a set of discourse relations.
//!
//! Each discourse relation sits directly under the top hole. One hole of
//! each relation is fixed by sentence material or by an external-side
//! placeholder; the others are left open. With several relations in play
//! their mutual scope is unknown, so a single `mode` fragment is put below
//! every open hole and the matrix clause is put below the `mode` hole. Any
//! plugging then stacks the relations in some order above the clause.

use std::collections::BTreeSet;

use crate::error::{LudError, Result};
use crate::ident::{Hole, Label};
use crate::model::{Condition, Lud};
use crate::validate::pluggable_labels;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ModeOptions {
    /// Insert a mode fragment even for a single discourse relation.
    pub always: bool,
}

/// What [`insert_mode_with`] added.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModeSite {
    pub label: Label,
    pub hole: Hole,
}

pub fn insert_mode(pre: &Lud) -> Result<Lud> {
    insert_mode_with(pre, ModeOptions::default()).map(|(lud, _)| lud)
}

/// Open holes are discrel holes with no leq constraint into them. Matrix
/// roots are pluggable non-discrel fragments none of whose leq constraints
/// points at a discrel hole or the top hole.
pub fn insert_mode_with(pre: &Lud, opts: ModeOptions) -> Result<(Lud, Option<ModeSite>)> {
    if pre
        .conditions
        .values()
        .flatten()
        .any(|c| matches!(c, Condition::Mode { .. }))
    {
        return Err(LudError::AlreadyModed);
    }
    let mut lud = pre.clone();
    let top = lud.top_hole();
    let discrels = pre.discrels();
    let discrel_frags: BTreeSet<Label> = discrels.iter().map(|d| lud.fragment_of(d.0)).collect();
    let discrel_holes: BTreeSet<Hole> = discrels.iter().flat_map(|d| [d.2, d.3]).collect();
    let bounded: BTreeSet<Hole> = lud.leq.iter().map(|c| c.upper).collect();
    let open: Vec<Hole> = discrels
        .iter()
        .flat_map(|d| [d.2, d.3])
        .filter(|h| !bounded.contains(h))
        .collect();
    let roots: Vec<Label> = pluggable_labels(&lud)
        .into_iter()
        .filter(|l| !discrel_frags.contains(l))
        .filter(|l| {
            !lud.leq
                .iter()
                .any(|c| lud.fragment_of(c.lower) == *l && (c.upper == top || discrel_holes.contains(&c.upper)))
        })
        .collect();

    for l in &discrel_frags {
        lud.add_leq(*l, top);
    }

    let site = if discrels.len() >= 2 || (opts.always && !discrels.is_empty()) {
        let site = ModeSite {
            label: Label(lud.max_label() + 1),
            hole: Hole(lud.max_hole() + 1),
        };
        lud.add_condition(site.label, Condition::Mode { scope: site.hole });
        for h in &open {
            lud.add_leq(site.label, *h);
        }
        for r in &roots {
            lud.add_leq(*r, site.hole);
        }
        Some(site)
    } else if discrels.is_empty() {
        for r in &roots {
            lud.add_leq(*r, top);
        }
        None
    } else {
        for h in &open {
            for r in &roots {
                lud.add_leq(*r, *h);
            }
        }
        None
    };
    Ok((lud, site))
}
