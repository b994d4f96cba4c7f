//! The dominance tree induced by a plugging.

use std::collections::{BTreeMap, BTreeSet};

use crate::ident::{Hole, Label};
use crate::model::{Lud, Plugging};

/// Parent links of the tree `top label -> holes -> plugged labels -> ...`.
/// Labels here are fragment roots.
#[derive(Clone, Debug)]
pub struct DominanceTree {
    pub root: Label,
    /// Holes owned by each fragment, in ascending order.
    pub children: BTreeMap<Label, Vec<Hole>>,
    pub plugged: BTreeMap<Hole, Label>,
}

impl DominanceTree {
    pub fn new(lud: &Lud, plugging: &Plugging) -> Self {
        let mut children: BTreeMap<Label, Vec<Hole>> = BTreeMap::new();
        for (label, cs) in &lud.conditions {
            for h in cs.iter().flat_map(|c| c.holes()) {
                children.entry(lud.fragment_of(*label)).or_default().push(h);
            }
        }
        for hs in children.values_mut() {
            hs.sort();
            hs.dedup();
        }
        DominanceTree {
            root: lud.top_label(),
            children,
            plugged: plugging.assignment.clone(),
        }
    }

    pub fn holes_of(&self, label: Label) -> &[Hole] {
        self.children.get(&label).map_or(&[], Vec::as_slice)
    }

    /// Fragments at or below `hole`. Terminates on cyclic input.
    pub fn labels_below(&self, hole: Hole) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        let mut stack = vec![hole];
        let mut seen = BTreeSet::new();
        while let Some(h) = stack.pop() {
            if !seen.insert(h) {
                continue;
            }
            if let Some(l) = self.plugged.get(&h) {
                if out.insert(*l) {
                    stack.extend(self.holes_of(*l).iter().copied());
                }
            }
        }
        out
    }

    /// Holes at or below `hole`.
    pub fn holes_below(&self, hole: Hole) -> BTreeSet<Hole> {
        let mut out = BTreeSet::new();
        let mut stack = vec![hole];
        while let Some(h) = stack.pop() {
            if !out.insert(h) {
                continue;
            }
            if let Some(l) = self.plugged.get(&h) {
                stack.extend(self.holes_of(*l).iter().copied());
            }
        }
        out
    }

    /// Every node reachable from the root, as `(labels, holes)`.
    pub fn reachable(&self) -> (BTreeSet<Label>, BTreeSet<Hole>) {
        let mut labels = BTreeSet::from([self.root]);
        let mut holes = BTreeSet::new();
        for h in self.holes_of(self.root) {
            labels.extend(self.labels_below(*h));
            holes.extend(self.holes_below(*h));
        }
        (labels, holes)
    }
}
