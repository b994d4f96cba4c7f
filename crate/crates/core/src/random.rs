//! Seeded generator of well-formed representations, for property tests and
//! benchmarks.
//!
//! Each instance has one to four discourse relations drawn from the builtin
//! lexicon, at most one negation, one leaf fragment per relation fixing its
//! pinned side plus one matrix leaf, and a mode fragment wired by
//! [`insert_mode_with`]. A few leq constraints are then dropped at random so
//! that instances range from fully determined to loosely constrained.
//! Identifiers are drawn from shuffled pools so numeric order carries no
//! structural meaning.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ident::{Hole, Instance, Label};
use crate::lexicon::{AnaphoricityClass, Lexicon};
use crate::mode::{insert_mode_with, ModeOptions};
use crate::model::{Alfa, AlfaSort, Condition, Leq, Lud, Mood};
use crate::resolve::SurfaceMeta;

const WORDS: [&str; 8] = ["getsuyoubi", "gogo", "yamada", "zikan", "seminaa", "kaigi", "daijoubu", "iku"];

/// A generated representation with surface positions for its relations.
#[derive(Clone, Debug)]
pub struct Generated {
    pub lud: Lud,
    pub meta: SurfaceMeta,
}

struct Pools {
    labels: Vec<u32>,
    holes: Vec<u32>,
    next_instance: u32,
}

impl Pools {
    fn label(&mut self) -> Label {
        Label(self.labels.pop().expect("label pool"))
    }

    fn hole(&mut self) -> Hole {
        Hole(self.holes.pop().expect("hole pool"))
    }

    fn instance(&mut self) -> Instance {
        self.next_instance += 1;
        Instance(self.next_instance)
    }
}

pub fn random_lud(seed: u64) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lexicon = Lexicon::builtin();
    let entries: Vec<_> = lexicon.entries().cloned().collect();

    let mut pools = Pools {
        labels: (1..=60).collect(),
        // Mode holes are allocated above the pool by insert_mode.
        holes: (0..=30).collect(),
        next_instance: 0,
    };
    pools.labels.shuffle(&mut rng);
    pools.holes.shuffle(&mut rng);

    let discrels = *[1usize, 1, 2, 2, 2, 3, 3, 4].choose(&mut rng).unwrap();
    // Four relations plus mood and mode already use ten holes.
    let with_neg = discrels < 4 && rng.gen_bool(0.4);

    let top_label = pools.label();
    let top_hole = pools.hole();
    let mut lud = Lud::new(top_label, top_hole);
    lud.add_condition(top_label, Condition::Mood { mood: Mood::Decl, scope: top_hole });

    let mut rel_labels = Vec::new();
    for _ in 0..discrels {
        let entry = entries.choose(&mut rng).unwrap();
        let d = pools.label();
        let (restriction, scope) = (pools.hole(), pools.hole());
        lud.add_condition(d, Condition::DiscRel { rel: entry.rel.clone(), restriction, scope });
        lud.add_leq(d, top_hole);
        let (pinned, leaf) = match entry.class {
            AnaphoricityClass::BothInternal => (restriction, leaf(&mut lud, &mut pools, &mut rng)),
            AnaphoricityClass::AntecedentExternal => (restriction, placeholder(&mut lud, &mut pools)),
            AnaphoricityClass::ConclusionExternal => (scope, placeholder(&mut lud, &mut pools)),
        };
        lud.add_leq(leaf, pinned);
        rel_labels.push(d);
    }

    let matrix = leaf(&mut lud, &mut pools, &mut rng);
    if with_neg {
        let root = pools.label();
        let (dm, neg) = (pools.label(), pools.label());
        let marker = pools.instance();
        let hole = pools.hole();
        lud.add_condition(dm, Condition::Dm { marker });
        lud.add_condition(neg, Condition::Neg { marker, scope: hole });
        lud.add_group(root, [dm, neg]);
        lud.add_leq(matrix, hole);
    }
    if rng.gen_bool(0.3) {
        let content = pools.label();
        let (dm, pred) = (pools.label(), pools.label());
        let x = pools.instance();
        lud.add_condition(dm, Condition::Dm { marker: x });
        lud.add_condition(pred, Condition::Pred { name: WORDS.choose(&mut rng).unwrap().to_string(), marker: x });
        lud.add_group(content, [dm, pred]);
        let sort = *[AlfaSort::Undef, AlfaSort::Pron, AlfaSort::Def].choose(&mut rng).unwrap();
        let event = lud
            .fragment_conditions(matrix)
            .iter()
            .find_map(|(_, c)| match c {
                Condition::Dm { marker } => Some(*marker),
                _ => None,
            })
            .unwrap();
        let role = pools.label();
        lud.add_condition(role, Condition::Role { event, role: "arg2".into(), filler: x });
        let members: Vec<Label> = lud.fragment_labels(matrix).into_iter().skip(1).chain([role]).collect();
        lud.groupings.retain(|g| g.root != matrix);
        lud.add_group(matrix, members);
        lud.add_alfa(Alfa { marker: x, sort, anchor: matrix, content });
    }

    let always = rng.gen_bool(0.5);
    let (mut lud, _) = insert_mode_with(&lud, ModeOptions { always }).expect("fresh pre-form");

    let drops = *[0usize, 0, 1, 1, 2].choose(&mut rng).unwrap();
    for _ in 0..drops {
        let all: Vec<Leq> = lud.leq.iter().copied().collect();
        if let Some(c) = all.choose(&mut rng) {
            lud.leq.remove(c);
        }
    }

    let mut positions: Vec<usize> = (0..rel_labels.len() * 2).collect();
    positions.shuffle(&mut rng);
    let meta = SurfaceMeta::new(rel_labels.iter().copied().zip(positions)).expect("distinct positions");
    Generated { lud, meta }
}

/// `root-inc([dm, pred])`, or one label carrying both conditions.
fn leaf(lud: &mut Lud, pools: &mut Pools, rng: &mut ChaCha8Rng) -> Label {
    let x = pools.instance();
    let name = WORDS.choose(rng).unwrap().to_string();
    if rng.gen_bool(0.3) {
        let l = pools.label();
        lud.add_condition(l, Condition::Dm { marker: x });
        lud.add_condition(l, Condition::Pred { name, marker: x });
        return l;
    }
    let root = pools.label();
    let (dm, pred) = (pools.label(), pools.label());
    lud.add_condition(dm, Condition::Dm { marker: x });
    lud.add_condition(pred, Condition::Pred { name, marker: x });
    lud.add_group(root, [dm, pred]);
    root
}

fn placeholder(lud: &mut Lud, pools: &mut Pools) -> Label {
    let l = pools.label();
    let marker = pools.instance();
    lud.add_condition(l, Condition::Dm { marker });
    l
}
