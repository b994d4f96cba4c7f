//! Admissibility of a plugging, and the indexed layout shared with the
//! enumerators.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{LudError, Result};
use crate::ident::{Hole, Label};
use crate::model::{Leq, Lud, Plugging, Verdict, Violation, ViolationDetail, ViolationKind};
use crate::validate::pluggable_labels;

/// Sentinel for an unassigned hole.
pub(crate) const FREE: usize = usize::MAX;

/// A node that owns holes: the top fragment or a pluggable fragment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Owner {
    Top,
    Frag(usize),
}

/// Dense view of a validated representation. Holes and pluggable labels are
/// numbered in canonical order.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub holes: Vec<Hole>,
    pub labels: Vec<Label>,
    pub hole_owner: Vec<Owner>,
    pub frag_holes: Vec<Vec<usize>>,
    /// `(lower, upper hole)`; `None` lower means the top fragment.
    pub leqs: Vec<(Option<usize>, usize)>,
    pub leq_src: Vec<Leq>,
}

impl Layout {
    pub fn new(lud: &Lud) -> Layout {
        let holes: Vec<Hole> = lud.holes().into_iter().collect();
        let labels: Vec<Label> = pluggable_labels(lud).into_iter().collect();
        let hole_idx: BTreeMap<Hole, usize> = holes.iter().enumerate().map(|(i, h)| (*h, i)).collect();
        let label_idx: BTreeMap<Label, usize> =
            labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();

        let owner_of = |label: Label| -> Option<Owner> {
            let root = lud.fragment_of(label);
            if root == lud.top_label() {
                Some(Owner::Top)
            } else {
                label_idx.get(&root).map(|i| Owner::Frag(*i))
            }
        };

        let mut hole_owner = vec![Owner::Top; holes.len()];
        let mut frag_holes = vec![Vec::new(); labels.len()];
        for (label, cs) in &lud.conditions {
            for h in cs.iter().flat_map(|c| c.holes()) {
                let hi = hole_idx[&h];
                match owner_of(*label) {
                    Some(o) => {
                        hole_owner[hi] = o;
                        if let Owner::Frag(f) = o {
                            frag_holes[f].push(hi);
                        }
                    }
                    // Unreachable on validated input; treat as owned by top.
                    None => hole_owner[hi] = Owner::Top,
                }
            }
        }
        for hs in &mut frag_holes {
            hs.sort_unstable();
            hs.dedup();
        }

        let mut leqs = Vec::new();
        let mut leq_src = Vec::new();
        for c in &lud.leq {
            let Some(&upper) = hole_idx.get(&c.upper) else { continue };
            let lower = match owner_of(c.lower) {
                Some(Owner::Top) => None,
                Some(Owner::Frag(f)) => Some(f),
                None => continue,
            };
            leqs.push((lower, upper));
            leq_src.push(*c);
        }

        Layout {
            holes,
            labels,
            hole_owner,
            frag_holes,
            leqs,
            leq_src,
        }
    }

    pub fn hole_index(&self, hole: Hole) -> Option<usize> {
        self.holes.binary_search(&hole).ok()
    }

    pub fn label_index(&self, label: Label) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    /// Inverse of an assignment: the hole each label is plugged into.
    pub fn parents(&self, assign: &[usize]) -> Vec<usize> {
        let mut parent = vec![FREE; self.labels.len()];
        for (h, &l) in assign.iter().enumerate() {
            if l != FREE && parent[l] == FREE {
                parent[l] = h;
            }
        }
        parent
    }

    /// True when `hole` lies on the path from `lower` up to the root.
    /// Walks at most `holes.len()` steps, so cycles terminate.
    pub fn dominated_by(&self, parent: &[usize], lower: Option<usize>, hole: usize) -> bool {
        let mut cur = lower;
        for _ in 0..=self.holes.len() {
            let Some(f) = cur else { return false };
            let h = parent[f];
            if h == FREE {
                return false;
            }
            if h == hole {
                return true;
            }
            cur = match self.hole_owner[h] {
                Owner::Top => None,
                Owner::Frag(g) => Some(g),
            };
        }
        false
    }

    /// Whether walking up from fragment `f` reaches the top fragment.
    fn reaches_top(&self, parent: &[usize], f: usize) -> bool {
        let mut cur = f;
        for _ in 0..=self.holes.len() {
            let h = parent[cur];
            if h == FREE {
                return false;
            }
            match self.hole_owner[h] {
                Owner::Top => return true,
                Owner::Frag(g) => cur = g,
            }
        }
        false
    }

    /// Full check of a complete dense assignment. With `collect` unset it
    /// returns after the first violation.
    pub fn check(&self, assign: &[usize], collect: bool, out: &mut Vec<Violation>) -> bool {
        let mut ok = true;
        let mut seen = vec![usize::MAX; self.labels.len()];
        for (h, &l) in assign.iter().enumerate() {
            if l == FREE {
                ok = false;
                out.push(Violation {
                    kind: ViolationKind::NotTotal,
                    detail: ViolationDetail::Hole(self.holes[h]),
                });
            } else if seen[l] != usize::MAX {
                ok = false;
                out.push(Violation {
                    kind: ViolationKind::NotInjective,
                    detail: ViolationDetail::Edge(self.holes[h], self.labels[l]),
                });
            } else {
                seen[l] = h;
            }
            if !ok && !collect {
                return false;
            }
        }
        let parent = self.parents(assign);
        for (f, &h) in parent.iter().enumerate() {
            if h != FREE && !self.reaches_top(&parent, f) && self.on_cycle(&parent, f) {
                ok = false;
                out.push(Violation {
                    kind: ViolationKind::Cyclic,
                    detail: ViolationDetail::Edge(self.holes[h], self.labels[f]),
                });
                if !collect {
                    return false;
                }
            }
        }
        for (i, &(lower, upper)) in self.leqs.iter().enumerate() {
            if !self.dominated_by(&parent, lower, upper) {
                ok = false;
                out.push(Violation {
                    kind: ViolationKind::LeqUnsatisfied,
                    detail: ViolationDetail::Leq(self.leq_src[i]),
                });
                if !collect {
                    return false;
                }
            }
        }
        ok
    }

    fn on_cycle(&self, parent: &[usize], f: usize) -> bool {
        let mut cur = f;
        for _ in 0..=self.holes.len() {
            let h = parent[cur];
            if h == FREE {
                return false;
            }
            match self.hole_owner[h] {
                Owner::Top => return false,
                Owner::Frag(g) if g == f => return true,
                Owner::Frag(g) => cur = g,
            }
        }
        false
    }

    /// Tree conditions for a bijection given by its inverse `parent`: every
    /// leq holds and every fragment reaches the top.
    pub fn bijection_admissible(&self, parent: &[usize]) -> bool {
        self.leqs.iter().all(|&(lower, upper)| self.dominated_by(parent, lower, upper))
            && (0..parent.len()).all(|f| self.reaches_top(parent, f))
    }

    pub fn admissible(&self, assign: &[usize]) -> bool {
        self.check(assign, false, &mut Vec::new())
    }

    pub fn to_plugging(&self, assign: &[usize]) -> Plugging {
        assign
            .iter()
            .enumerate()
            .filter(|(_, l)| **l != FREE)
            .map(|(h, l)| (self.holes[h], self.labels[*l]))
            .collect()
    }
}

/// Decides whether `plugging` is a possible reading of `lud`.
///
/// A plugging is admissible when it is a bijection from holes to pluggable
/// labels, the resulting dominance graph is acyclic (hence a tree under the
/// top label) and every `leq` constraint holds in that tree.
pub fn is_admissible(lud: &Lud, plugging: &Plugging) -> Result<Verdict> {
    let all_holes = lud.holes();
    for (h, l) in &plugging.assignment {
        if !all_holes.contains(h) {
            return Err(LudError::UnknownIdent(h.to_string()));
        }
        if !lud.is_defined(*l) {
            return Err(LudError::UnknownIdent(l.to_string()));
        }
    }
    let layout = Layout::new(lud);
    let mut violations = Vec::new();
    let mut assign = vec![FREE; layout.holes.len()];
    for (h, l) in &plugging.assignment {
        let hi = layout.hole_index(*h).expect("hole checked above");
        match layout.label_index(*l) {
            Some(li) => assign[hi] = li,
            None => violations.push(Violation {
                kind: ViolationKind::BadCodomain,
                detail: ViolationDetail::Edge(*h, *l),
            }),
        }
    }
    let mut structural = Vec::new();
    layout.check(&assign, true, &mut structural);
    // A hole holding a non-pluggable label is reported as bad-codomain only.
    let bad: BTreeSet<Hole> = violations
        .iter()
        .filter_map(|v| match v.detail {
            ViolationDetail::Edge(h, _) => Some(h),
            _ => None,
        })
        .collect();
    structural.retain(|v| !matches!(v, Violation { kind: ViolationKind::NotTotal, detail: ViolationDetail::Hole(h) } if bad.contains(h)));
    violations.extend(structural);
    violations.sort();
    violations.dedup();
    Ok(Verdict {
        admissible: violations.is_empty(),
        violations,
    })
}
