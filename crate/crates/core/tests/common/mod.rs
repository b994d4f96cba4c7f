#![allow(dead_code)]

use lud::{parse, Lud};

pub const F1: &str = include_str!("../../../../corpus/f1.lud");
pub const F3: &str = include_str!("../../../../corpus/f3.lud");
pub const F4: &str = include_str!("../../../../corpus/f4.lud");
pub const F5: &str = include_str!("../../../../corpus/f5.lud");
pub const F6A: &str = include_str!("../../../../corpus/f6a.lud");
pub const F6B: &str = include_str!("../../../../corpus/f6b.lud");
pub const F7: &str = include_str!("../../../../corpus/f7.lud");
pub const T1: &str = include_str!("../../../../corpus/t1.lud");

pub const ALL: [(&str, &str); 8] =
    [("F1", F1), ("F3", F3), ("F4", F4), ("F5", F5), ("F6a", F6A), ("F6b", F6B), ("F7", F7), ("T1", T1)];

/// Entry text with the header lines blanked.
pub fn body(entry: &str) -> String {
    let mut seen = false;
    entry
        .lines()
        .map(|l| {
            seen |= l.trim_start().starts_with("index:");
            if seen { l } else { "" }
        })
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn load(entry: &str) -> Lud {
    parse(&body(entry)).expect("corpus entry parses")
}

/// `surface: ...` header value.
pub fn surface(entry: &str) -> lud::SurfaceMeta {
    entry
        .lines()
        .find_map(|l| l.strip_prefix("surface:"))
        .map(|s| s.trim().parse().unwrap())
        .unwrap_or_default()
}
