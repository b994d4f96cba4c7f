//! Fixtures shared by the benchmarks.

use lud::Lud;

pub const F1: &str = include_str!("../../../corpus/f1.lud");

/// The corpus entry with the most readings, without its header block.
pub fn f1() -> Lud {
    let body: String = F1
        .lines()
        .skip_while(|l| !l.trim_start().starts_with("index:"))
        .map(|l| format!("{l}\n"))
        .collect();
    lud::parse(&body).expect("corpus entry parses")
}

/// Seeded random instances with exactly `holes` holes.
pub fn random_with_holes(holes: usize, count: usize) -> Vec<Lud> {
    (0u64..)
        .map(lud::random::random_lud)
        .filter(|g| g.lud.holes().len() == holes)
        .take(count)
        .map(|g| g.lud)
        .collect()
}
