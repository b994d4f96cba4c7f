//! Enumeration of admissible pluggings.
//!
//! Two independent routes produce the same canonical list: a backtracking
//! search with constraint propagation, and a generate-and-test oracle over
//! every injective assignment.

use std::num::NonZeroUsize;

use crate::admissible::{Layout, Owner, FREE};
use crate::diagnostic::has_errors;
use crate::error::{LudError, Result};
use crate::model::{Lud, Plugging};
use crate::validate::validate;

/// Largest hole count the brute-force oracle accepts.
pub const ORACLE_HOLE_LIMIT: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SearchMode {
    #[default]
    Propagating,
    Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct EnumerationOptions {
    /// Keep only the first `n` pluggings of the canonical list.
    pub max_solutions: Option<NonZeroUsize>,
    pub mode: SearchMode,
}

impl EnumerationOptions {
    pub fn oracle() -> Self {
        EnumerationOptions {
            mode: SearchMode::Oracle,
            ..Self::default()
        }
    }

    pub fn with_max(mut self, n: usize) -> Self {
        self.max_solutions = NonZeroUsize::new(n);
        self
    }
}

fn ensure_valid(lud: &Lud) -> Result<()> {
    let diagnostics = validate(lud);
    if has_errors(&diagnostics) {
        Err(LudError::InvalidInput(diagnostics))
    } else {
        Ok(())
    }
}

/// All admissible pluggings in canonical order, truncated to
/// `opts.max_solutions`.
pub fn enumerate(lud: &Lud, opts: EnumerationOptions) -> Result<Vec<Plugging>> {
    let mut out = match opts.mode {
        SearchMode::Propagating => {
            ensure_valid(lud)?;
            let layout = Layout::new(lud);
            let mut search = Search {
                layout: &layout,
                found: Vec::new(),
            };
            search.run(State::new(&layout));
            let mut out: Vec<Plugging> = search.found.iter().map(|a| layout.to_plugging(a)).collect();
            out.sort();
            out
        }
        SearchMode::Oracle => enumerate_oracle(lud)?,
    };
    if let Some(max) = opts.max_solutions {
        out.truncate(max.get());
    }
    Ok(out)
}

/// Brute-force reference: every injective total assignment of pluggable
/// labels to holes, filtered by the admissibility check.
pub fn enumerate_oracle(lud: &Lud) -> Result<Vec<Plugging>> {
    ensure_valid(lud)?;
    let layout = Layout::new(lud);
    let n = layout.holes.len();
    if n > ORACLE_HOLE_LIMIT {
        return Err(LudError::TooLarge {
            holes: n,
            limit: ORACLE_HOLE_LIMIT,
        });
    }
    let mut out = Vec::new();
    if n != layout.labels.len() {
        return Ok(out);
    }
    let mut assign = vec![FREE; n];
    let mut parent = vec![FREE; n];
    permute(&layout, 0, &mut assign, &mut parent, &mut out);
    out.sort();
    Ok(out)
}

/// Tries every unused label in `hole`, keeping `parent` as the inverse of
/// `assign`.
fn permute(layout: &Layout, hole: usize, assign: &mut [usize], parent: &mut [usize], out: &mut Vec<Plugging>) {
    if hole == assign.len() {
        if layout.bijection_admissible(parent) {
            debug_assert!(layout.admissible(assign));
            out.push(layout.to_plugging(assign));
        }
        return;
    }
    for label in 0..parent.len() {
        if parent[label] != FREE {
            continue;
        }
        parent[label] = hole;
        assign[hole] = label;
        permute(layout, hole + 1, assign, parent, out);
        assign[hole] = FREE;
        parent[label] = FREE;
    }
}

/// True when both routes return the same list.
pub fn verify_equivalence(lud: &Lud) -> Result<bool> {
    let oracle = enumerate_oracle(lud)?;
    let search = enumerate(lud, EnumerationOptions::default())?;
    Ok(oracle == search)
}

#[derive(Clone)]
struct State {
    /// Label plugged into each hole, or `FREE`.
    assign: Vec<usize>,
    /// Hole each label is plugged into, or `FREE`.
    parent: Vec<usize>,
}

impl State {
    fn new(layout: &Layout) -> Self {
        State {
            assign: vec![FREE; layout.holes.len()],
            parent: vec![FREE; layout.labels.len()],
        }
    }

    fn set(&mut self, hole: usize, label: usize) {
        self.assign[hole] = label;
        self.parent[label] = hole;
    }

    fn unset(&mut self, hole: usize, label: usize) {
        self.assign[hole] = FREE;
        self.parent[label] = FREE;
    }
}

struct Search<'a> {
    layout: &'a Layout,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, mut state: State) {
        // Propagate: plug every hole that has a single remaining candidate,
        // recomputing after each assignment.
        let candidates = loop {
            let Some(candidates) = self.candidates(&mut state) else {
                return;
            };
            match candidates.iter().find(|(_, c)| c.len() == 1) {
                Some((hole, c)) => state.set(*hole, c[0]),
                None => break candidates,
            }
        };
        if candidates.is_empty() {
            debug_assert!(self.layout.admissible(&state.assign));
            self.found.push(state.assign);
            return;
        }
        // Branch on the most constrained hole; ties go to the lowest hole.
        let (hole, labels) = candidates
            .iter()
            .min_by_key(|(h, c)| (c.len(), *h))
            .expect("non-empty");
        for &label in labels {
            let mut next = state.clone();
            next.set(*hole, label);
            self.run(next);
        }
    }

    /// Feasible labels for every free hole, or `None` at a dead end.
    #[allow(clippy::needless_range_loop)]
    fn candidates(&self, state: &mut State) -> Option<Vec<(usize, Vec<usize>)>> {
        let layout = self.layout;
        let mut out = Vec::new();
        let mut label_has_slot = vec![false; layout.labels.len()];
        for hole in 0..layout.holes.len() {
            if state.assign[hole] != FREE {
                continue;
            }
            let mut c = Vec::new();
            for label in 0..layout.labels.len() {
                if state.parent[label] != FREE || self.closes_cycle(state, hole, label) {
                    continue;
                }
                state.set(hole, label);
                let ok = self.leqs_feasible(state);
                state.unset(hole, label);
                if ok {
                    c.push(label);
                    label_has_slot[label] = true;
                }
            }
            if c.is_empty() {
                return None;
            }
            out.push((hole, c));
        }
        let stranded = (0..layout.labels.len()).any(|l| state.parent[l] == FREE && !label_has_slot[l]);
        if stranded {
            return None;
        }
        Some(out)
    }

    /// Plugging `label` into `hole` closes a cycle iff `hole` already lies
    /// below `label`.
    fn closes_cycle(&self, state: &State, hole: usize, label: usize) -> bool {
        let mut h = hole;
        for _ in 0..=self.layout.holes.len() {
            match self.layout.hole_owner[h] {
                Owner::Top => return false,
                Owner::Frag(f) if f == label => return true,
                Owner::Frag(f) => {
                    h = state.parent[f];
                    if h == FREE {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Optimistic check that every leq can still be met.
    ///
    /// Walk up from the lower fragment to the root `r` of its partial tree.
    /// If the upper hole is on that path the constraint holds. Otherwise `r`
    /// must still be pluggable (not the top) and there must be a free hole
    /// at or below the upper hole, outside `r`'s own subtree, to receive it.
    fn leqs_feasible(&self, state: &State) -> bool {
        let layout = self.layout;
        'leq: for &(lower, upper) in &layout.leqs {
            let mut cur = lower;
            let root = loop {
                let Some(f) = cur else { break None };
                let h = state.parent[f];
                if h == FREE {
                    break Some(f);
                }
                if h == upper {
                    continue 'leq;
                }
                cur = match layout.hole_owner[h] {
                    Owner::Top => None,
                    Owner::Frag(g) => Some(g),
                };
            };
            let Some(root) = root else { return false };
            if self.below_fragment(state, upper, root) {
                return false;
            }
            if !self.free_hole_below(state, upper, root) {
                return false;
            }
        }
        true
    }

    /// Whether `hole` currently sits in the subtree of fragment `frag`.
    fn below_fragment(&self, state: &State, hole: usize, frag: usize) -> bool {
        let mut h = hole;
        for _ in 0..=self.layout.holes.len() {
            match self.layout.hole_owner[h] {
                Owner::Top => return false,
                Owner::Frag(f) if f == frag => return true,
                Owner::Frag(f) => {
                    h = state.parent[f];
                    if h == FREE {
                        return false;
                    }
                }
            }
        }
        false
    }

    /// A free hole at or below `hole` that is not inside `frag`'s subtree.
    fn free_hole_below(&self, state: &State, hole: usize, frag: usize) -> bool {
        let mut stack = vec![hole];
        while let Some(h) = stack.pop() {
            let l = state.assign[h];
            if l == FREE {
                if !self.below_fragment(state, h, frag) {
                    return true;
                }
                continue;
            }
            if l == frag {
                continue;
            }
            stack.extend(self.layout.frag_holes[l].iter().copied());
        }
        false
    }
}
