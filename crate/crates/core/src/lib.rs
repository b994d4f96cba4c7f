//! Underspecified discourse representation structures.
//!
//! A [`Lud`] describes a set of DRSs at once: its conditions carry holes,
//! and any admissible [`Plugging`] of labels into holes yields one fully
//! scoped reading. This crate parses and writes the textual format,
//! validates representations, enumerates readings (with an independent
//! brute-force oracle), ranks readings that differ in the relative scope of
//! discourse relations, and renders the resulting DRS.

pub mod admissible;
pub mod diagnostic;
pub mod drs;
pub mod engine;
pub mod error;
pub mod ident;
pub mod lexicon;
pub mod mode;
pub mod model;
pub mod parser;
pub mod plugging_text;
pub mod random;
pub mod resolve;
pub mod tree;
pub mod validate;

pub use admissible::is_admissible;
pub use diagnostic::{Diagnostic, Location, Severity, SourceSpan};
pub use drs::{build_drs, render_box, render_term, Connective, DrsBox};
pub use engine::{enumerate, enumerate_oracle, verify_equivalence, EnumerationOptions, SearchMode};
pub use error::{LudError, Result};
pub use ident::{Hole, Instance, Label};
pub use lexicon::{classify, AnaphoricityClass, FixedSide, Lexicon, LexiconEntry};
pub use mode::{insert_mode, insert_mode_with, ModeOptions};
pub use model::{
    Alfa, AlfaSort, Condition, Grouping, Leq, Lud, Modifies, Mood, Plugging, Verdict, Violation,
    ViolationDetail, ViolationKind,
};
pub use parser::{parse, parse_with_warnings, serialize, ParseError};
pub use resolve::{discrel_order, resolve, RankedPluggings, SurfaceMeta};
pub use validate::{pluggable_labels, validate};
