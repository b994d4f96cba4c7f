//! Properties over seeded random representations.

use std::collections::BTreeSet;

use lud::diagnostic::has_errors;
use lud::plugging_text::{parse_plugging, parse_pluggings};
use lud::random::random_lud;
use lud::tree::DominanceTree;
use lud::{
    enumerate, enumerate_oracle, parse, pluggable_labels, resolve, serialize, validate, EnumerationOptions,
    Lexicon, Leq, Lud, Plugging,
};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 64,
        ..ProptestConfig::default()
    }
}

/// Checks the tree shape of one admissible plugging.
fn tree_invariants(lud: &Lud, p: &Plugging) -> Result<(), TestCaseError> {
    let tree = DominanceTree::new(lud, p);
    prop_assert_eq!(tree.root, lud.top_label());
    let (labels, holes) = tree.reachable();
    let mut expected = pluggable_labels(lud);
    expected.insert(lud.top_label());
    prop_assert_eq!(labels, expected);
    prop_assert_eq!(holes, lud.holes());
    for (_, _, restriction, scope) in lud.discrels() {
        let a = tree.labels_below(restriction);
        let b = tree.labels_below(scope);
        prop_assert!(a.is_disjoint(&b));
    }
    for c in &lud.leq {
        let fragment = lud.fragment_of(c.lower);
        prop_assert!(tree.labels_below(c.upper).contains(&fragment), "{} fails", c);
    }
    Ok(())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn serialize_round_trips(seed in any::<u64>()) {
        let g = random_lud(seed);
        let text = serialize(&g.lud);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &g.lud);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn validation_survives_round_trip(seed in any::<u64>()) {
        let g = random_lud(seed);
        let back = parse(&serialize(&g.lud)).unwrap();
        prop_assert_eq!(validate(&back), validate(&g.lud));
    }

    #[test]
    fn readings_form_trees(seed in any::<u64>()) {
        let g = random_lud(seed);
        for p in enumerate(&g.lud, EnumerationOptions::default()).unwrap() {
            tree_invariants(&g.lud, &p)?;
        }
    }

    #[test]
    fn extra_leq_never_adds_readings(seed in any::<u64>(), pick in any::<(usize, usize)>()) {
        let g = random_lud(seed);
        let labels: Vec<_> = pluggable_labels(&g.lud).into_iter().collect();
        let holes: Vec<_> = g.lud.holes().into_iter().collect();
        let c = Leq::new(labels[pick.0 % labels.len()], holes[pick.1 % holes.len()]);
        let mut tighter = g.lud.clone();
        tighter.leq.insert(c);
        prop_assume!(!has_errors(&validate(&tighter)));
        let before = enumerate(&g.lud, EnumerationOptions::default()).unwrap();
        let after = enumerate(&tighter, EnumerationOptions::default()).unwrap();
        prop_assert!(after.len() <= before.len());
        let before: BTreeSet<_> = before.into_iter().collect();
        prop_assert!(after.iter().all(|p| before.contains(p)));
    }

    #[test]
    fn ranking_partitions_readings(seed in any::<u64>()) {
        let g = random_lud(seed);
        let ranked = resolve(&g.lud, &g.meta, &Lexicon::builtin()).unwrap();
        let mut ranked_all: Vec<_> = ranked.all().cloned().collect();
        ranked_all.sort();
        prop_assert_eq!(ranked_all, enumerate(&g.lud, EnumerationOptions::default()).unwrap());
        let keys: Vec<usize> = ranked.groups.iter().map(|g| g.violated_rules).collect();
        prop_assert!(keys.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(ranked.groups.iter().all(|g| !g.pluggings.is_empty()));
    }

    #[test]
    fn truncation_is_a_prefix(seed in any::<u64>(), n in 1usize..4) {
        let g = random_lud(seed);
        let all = enumerate(&g.lud, EnumerationOptions::default()).unwrap();
        let some = enumerate(&g.lud, EnumerationOptions::default().with_max(n)).unwrap();
        prop_assert_eq!(&some[..], &all[..n.min(all.len())]);
    }

    #[test]
    fn plugging_text_round_trips(seed in any::<u64>()) {
        let g = random_lud(seed);
        let all = enumerate(&g.lud, EnumerationOptions::default()).unwrap();
        for p in &all {
            prop_assert_eq!(&parse_plugging(&p.to_string()).unwrap(), p);
        }
        let joined: Vec<String> = all.iter().map(ToString::to_string).collect();
        prop_assert_eq!(parse_pluggings(&joined.join("\n")).unwrap(), all);
    }
}

proptest! {
    // The oracle is factorial in the hole count.
    #![proptest_config(ProptestConfig { cases: 32, ..config() })]

    #[test]
    fn search_matches_oracle(seed in any::<u64>()) {
        let g = random_lud(seed);
        let fast = enumerate(&g.lud, EnumerationOptions::default()).unwrap();
        let slow = enumerate_oracle(&g.lud).unwrap();
        prop_assert_eq!(fast, slow);
    }
}
