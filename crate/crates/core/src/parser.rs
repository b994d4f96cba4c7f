//! Reader and canonical writer for the textual LUD format.
//!
//! ```text
//! index: (l1,h0)
//! lud_preds:
//!   l1-mood(decl,h0)
//!   l2-discrel(topic,h1,h2)
//! lud_grouping:
//!   l3-inc([l4,l5])
//! lud_meta:
//! lud_scoping:
//!   leq(l2,h0)
//! ```
//!
//! Whitespace inside a line is insignificant and `#` starts a comment. A
//! section header may carry its first entry on the same line. The index may
//! take a leading instance field, `(i8,l1,h0)`, which is kept but unused.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::diagnostic::{Diagnostic, Location, SourceSpan};
use crate::ident::{Hole, Instance, Label};
use crate::model::{Alfa, AlfaSort, Condition, Grouping, Index, Leq, Lud, Modifies, Mood};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}", .diagnostics.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("\n"))]
pub struct ParseError {
    pub diagnostics: Vec<Diagnostic>,
}

/// A successful parse together with any warnings it produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub lud: Lud,
    pub warnings: Vec<Diagnostic>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Preds,
    Grouping,
    Meta,
    Scoping,
}

const HEADERS: [(&str, Option<Section>); 5] = [
    ("index:", None),
    ("lud_preds:", Some(Section::Preds)),
    ("lud_grouping:", Some(Section::Grouping)),
    ("lud_meta:", Some(Section::Meta)),
    ("lud_scoping:", Some(Section::Scoping)),
];

/// Parses LUD text, discarding warnings.
pub fn parse(text: &str) -> Result<Lud, ParseError> {
    parse_with_warnings(text).map(|p| p.lud)
}

pub fn parse_with_warnings(text: &str) -> Result<Parsed, ParseError> {
    let mut errors = Vec::new();
    let mut warnings = Vec::new();
    let mut index: Option<Index> = None;
    let mut index_seen = false;
    let mut section: Option<Section> = None;
    let mut conditions: Vec<(Label, Condition)> = Vec::new();
    let mut groupings = Vec::new();
    let mut meta = Vec::new();
    let mut alfa = Vec::new();
    let mut leq = std::collections::BTreeSet::new();

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let code = raw.split('#').next().unwrap_or("");
        let mut cur = Cursor::new(code, line_no);
        cur.skip_ws();
        if cur.at_end() {
            continue;
        }
        let mut header = None;
        for (kw, sec) in HEADERS {
            if cur.eat_str(kw) {
                header = Some(sec);
                break;
            }
        }
        let entry_section = match header {
            Some(None) => {
                index_seen = true;
                let start = cur.span_here();
                match parse_index(&mut cur) {
                    Ok((idx, warn)) => {
                        if index.is_some() {
                            errors.push(Diagnostic::error(
                                "bad-index",
                                Location::Span(start),
                                "index given more than once",
                            ));
                        }
                        if let Some(w) = warn {
                            warnings.push(w);
                        }
                        index = Some(idx);
                    }
                    Err(d) => errors.push(d),
                }
                continue;
            }
            Some(Some(sec)) => {
                section = Some(sec);
                cur.skip_ws();
                if cur.at_end() {
                    continue;
                }
                sec
            }
            None => match section {
                Some(sec) => sec,
                None => {
                    errors.push(Diagnostic::error(
                        "syntax",
                        Location::Span(cur.rest_span()),
                        "entry outside of any section",
                    ));
                    continue;
                }
            },
        };
        let result = match entry_section {
            Section::Preds => parse_pred(&mut cur).map(|c| conditions.push(c)),
            Section::Grouping => parse_group(&mut cur).map(|g| groupings.push(g)),
            Section::Meta => parse_meta(&mut cur).map(|m| meta.push(m)),
            Section::Scoping => match parse_scoping(&mut cur) {
                Ok(Scoping::Alfa(a)) => {
                    alfa.push(a);
                    Ok(())
                }
                Ok(Scoping::Leq(c, span)) => {
                    if !leq.insert(c) {
                        warnings.push(Diagnostic::warning(
                            "duplicate-leq",
                            Location::Span(span),
                            format!("{c} repeated; kept once"),
                        ));
                    }
                    Ok(())
                }
                Err(d) => Err(d),
            },
        };
        match result.and_then(|_| cur.finish()) {
            Ok(()) => {}
            Err(d) => errors.push(d),
        }
    }

    let Some(index) = index else {
        if index_seen {
            return Err(ParseError { diagnostics: errors });
        }
        errors.insert(
            0,
            Diagnostic::error("bad-index", Location::Span(SourceSpan::new(1, 1, 1)), "missing index line"),
        );
        return Err(ParseError { diagnostics: errors });
    };
    if !errors.is_empty() {
        return Err(ParseError { diagnostics: errors });
    }
    let mut lud = Lud::new(index.top_label, index.top_hole);
    lud.index = index;
    for (label, c) in conditions {
        lud.add_condition(label, c);
    }
    lud.groupings = groupings;
    lud.meta = meta;
    lud.alfa = alfa;
    lud.leq = leq;
    lud.normalize();
    Ok(Parsed { lud, warnings })
}

/// Canonical text: fixed section order, entries sorted by identifier, one
/// entry per line.
pub fn serialize(lud: &Lud) -> String {
    let mut out = String::new();
    let idx = &lud.index;
    match idx.instance {
        Some(i) => writeln!(out, "index: ({i},{},{})", idx.top_label, idx.top_hole),
        None => writeln!(out, "index: ({},{})", idx.top_label, idx.top_hole),
    }
    .unwrap();
    out.push_str("lud_preds:\n");
    for (label, cs) in &lud.conditions {
        for c in cs {
            writeln!(out, "  {label}-{c}").unwrap();
        }
    }
    out.push_str("lud_grouping:\n");
    let mut groups: Vec<&Grouping> = lud.groupings.iter().collect();
    groups.sort_by_key(|g| g.root);
    for g in groups {
        let members: Vec<String> = g.members.iter().map(Label::to_string).collect();
        writeln!(out, "  {}-inc([{}])", g.root, members.join(",")).unwrap();
    }
    out.push_str("lud_meta:\n");
    let mut meta = lud.meta.clone();
    meta.sort();
    for m in meta {
        writeln!(out, "  modifies({},{})", m.host, m.modifier).unwrap();
    }
    out.push_str("lud_scoping:\n");
    let mut alfa = lud.alfa.clone();
    alfa.sort_by_key(|a| (a.anchor, a.content, a.marker, a.sort));
    for a in alfa {
        writeln!(out, "  {a}").unwrap();
    }
    for c in &lud.leq {
        writeln!(out, "  {c}").unwrap();
    }
    out
}

fn parse_index(cur: &mut Cursor) -> Result<(Index, Option<Diagnostic>), Diagnostic> {
    let bad = |cur: &Cursor, msg: &str| Diagnostic::error("bad-index", Location::Span(cur.rest_span()), msg);
    cur.skip_ws();
    let start = cur.span_here();
    if !cur.eat('(') {
        return Err(bad(cur, "expected `(` after index:"));
    }
    let mut fields = Vec::new();
    loop {
        cur.skip_ws();
        let (tok, span) = cur.token();
        if tok.is_empty() {
            return Err(bad(cur, "expected identifier in index"));
        }
        fields.push((tok, span));
        cur.skip_ws();
        if cur.eat(',') {
            continue;
        }
        if cur.eat(')') {
            break;
        }
        return Err(bad(cur, "expected `,` or `)` in index"));
    }
    cur.finish().map_err(|d| Diagnostic { code: "bad-index", ..d })?;
    let field = |i: usize| &fields[i];
    let (instance, label, hole) = match fields.len() {
        2 => (None, field(0), field(1)),
        3 => (Some(field(0)), field(1), field(2)),
        _ => {
            return Err(Diagnostic::error(
                "bad-index",
                Location::Span(start),
                format!("index takes 2 or 3 fields, found {}", fields.len()),
            ))
        }
    };
    let conv = |(tok, span): &(String, SourceSpan), what: &str| -> Result<(), Diagnostic> {
        Err(Diagnostic::error("bad-index", Location::Span(*span), format!("`{tok}` is not a {what}")))
    };
    let top_label = Label::from_str(&label.0).or_else(|_| conv(label, "label").map(|_| Label(0)))?;
    let top_hole = Hole::from_str(&hole.0).or_else(|_| conv(hole, "hole").map(|_| Hole(0)))?;
    let mut warning = None;
    let instance = match instance {
        Some(f) => {
            let i = Instance::from_str(&f.0).or_else(|_| conv(f, "instance").map(|_| Instance(0)))?;
            warning = Some(Diagnostic::warning(
                "index-instance",
                Location::Span(f.1),
                format!("leading index instance {i} is stored but not used"),
            ));
            Some(i)
        }
        None => None,
    };
    Ok((
        Index {
            instance,
            top_label,
            top_hole,
        },
        warning,
    ))
}

fn parse_pred(cur: &mut Cursor) -> Result<(Label, Condition), Diagnostic> {
    let label: Label = cur.ident()?;
    cur.skip_ws();
    cur.expect('-')?;
    cur.skip_ws();
    let (kw, kw_span) = cur.word();
    cur.skip_ws();
    cur.expect('(')?;
    let cond = match kw.as_str() {
        "mood" => {
            let (name, span) = cur.name()?;
            let mood = Mood::from_name(&name).ok_or_else(|| {
                Diagnostic::error("syntax", Location::Span(span), format!("unknown mood `{name}`"))
            })?;
            cur.comma()?;
            Condition::Mood { mood, scope: cur.ident()? }
        }
        "discrel" => {
            let (rel, _) = cur.name()?;
            cur.comma()?;
            let restriction = cur.ident()?;
            cur.comma()?;
            Condition::DiscRel { rel, restriction, scope: cur.ident()? }
        }
        "mode" => Condition::Mode { scope: cur.ident()? },
        "neg" => {
            let marker = cur.ident()?;
            cur.comma()?;
            Condition::Neg { marker, scope: cur.ident()? }
        }
        "dm" => Condition::Dm { marker: cur.ident()? },
        "predicate" => {
            let (name, _) = cur.name()?;
            cur.comma()?;
            Condition::Pred { name, marker: cur.ident()? }
        }
        "role" => {
            let event = cur.ident()?;
            cur.comma()?;
            let (role, _) = cur.name()?;
            cur.comma()?;
            Condition::Role { event, role, filler: cur.ident()? }
        }
        _ => {
            return Err(Diagnostic::error(
                "unknown-condition",
                Location::Span(kw_span),
                format!("unknown condition form `{kw}`"),
            ))
        }
    };
    cur.skip_ws();
    cur.expect(')')?;
    Ok((label, cond))
}

fn parse_group(cur: &mut Cursor) -> Result<Grouping, Diagnostic> {
    let root = cur.ident()?;
    cur.skip_ws();
    cur.expect('-')?;
    cur.skip_ws();
    let (kw, span) = cur.word();
    if kw != "inc" {
        return Err(Diagnostic::error(
            "unknown-condition",
            Location::Span(span),
            format!("expected `inc`, found `{kw}`"),
        ));
    }
    cur.skip_ws();
    cur.expect('(')?;
    cur.skip_ws();
    cur.expect('[')?;
    let mut members = vec![cur.ident()?];
    loop {
        cur.skip_ws();
        if cur.eat(',') {
            members.push(cur.ident()?);
        } else {
            break;
        }
    }
    cur.expect(']')?;
    cur.skip_ws();
    cur.expect(')')?;
    Ok(Grouping { root, members })
}

fn parse_meta(cur: &mut Cursor) -> Result<Modifies, Diagnostic> {
    let (kw, span) = cur.word();
    if kw != "modifies" {
        return Err(Diagnostic::error(
            "unknown-condition",
            Location::Span(span),
            format!("expected `modifies`, found `{kw}`"),
        ));
    }
    cur.skip_ws();
    cur.expect('(')?;
    let host = cur.ident()?;
    cur.comma()?;
    let modifier = cur.ident()?;
    cur.skip_ws();
    cur.expect(')')?;
    Ok(Modifies { host, modifier })
}

enum Scoping {
    Alfa(Alfa),
    Leq(Leq, SourceSpan),
}

fn parse_scoping(cur: &mut Cursor) -> Result<Scoping, Diagnostic> {
    let start = cur.span_here();
    let (kw, span) = cur.word();
    cur.skip_ws();
    match kw.as_str() {
        "alfa" => {
            cur.expect('(')?;
            let marker = cur.ident()?;
            cur.comma()?;
            let (sort, sort_span) = cur.name()?;
            let sort = AlfaSort::from_name(&sort).ok_or_else(|| {
                Diagnostic::error("syntax", Location::Span(sort_span), format!("unknown alfa sort `{sort}`"))
            })?;
            cur.comma()?;
            let anchor = cur.ident()?;
            cur.comma()?;
            let content = cur.ident()?;
            cur.skip_ws();
            cur.expect(')')?;
            Ok(Scoping::Alfa(Alfa { marker, sort, anchor, content }))
        }
        "leq" => {
            cur.expect('(')?;
            let lower = cur.ident()?;
            cur.comma()?;
            cur.skip_ws();
            let (tok, tok_span) = cur.token();
            let upper = match Hole::from_str(&tok) {
                Ok(h) => h,
                Err(_) if Label::from_str(&tok).is_ok() => {
                    return Err(Diagnostic::error(
                        "label-upper-leq",
                        Location::Span(tok_span),
                        format!("leq upper bound `{tok}` must be a hole"),
                    ))
                }
                Err(e) => return Err(Diagnostic::error("syntax", Location::Span(tok_span), e.to_string())),
            };
            cur.skip_ws();
            cur.expect(')')?;
            let end = cur.col.saturating_sub(1).max(start.column_start);
            Ok(Scoping::Leq(
                Leq::new(lower, upper),
                SourceSpan::new(start.line, start.column_start, end),
            ))
        }
        _ => Err(Diagnostic::error(
            "unknown-condition",
            Location::Span(span),
            format!("expected `alfa` or `leq`, found `{kw}`"),
        )),
    }
}

/// Character cursor over one line, tracking 1-based columns.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    col: usize,
    line: usize,
}

impl Cursor {
    fn new(text: &str, line: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            col: 1,
            line,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) {
        self.pos += 1;
        self.col += 1;
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars()) {
            for _ in 0..n {
                self.bump();
            }
            true
        } else {
            false
        }
    }

    fn span_here(&self) -> SourceSpan {
        SourceSpan::new(self.line, self.col, self.col)
    }

    fn rest_span(&self) -> SourceSpan {
        let end = self.chars.len().max(self.pos + 1);
        SourceSpan::new(self.line, self.col, self.col + (end - self.pos) - 1)
    }

    fn expect(&mut self, c: char) -> Result<(), Diagnostic> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of line".to_string(), |f| format!("`{f}`"));
            Err(Diagnostic::error("syntax", Location::Span(self.span_here()), format!("expected `{c}`, found {found}")))
        }
    }

    fn comma(&mut self) -> Result<(), Diagnostic> {
        self.skip_ws();
        self.expect(',')
    }

    /// Maximal run of characters that may appear inside a name.
    fn token(&mut self) -> (String, SourceSpan) {
        let start = self.col;
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | '\'') {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        let end = if s.is_empty() { start } else { self.col - 1 };
        (s, SourceSpan::new(self.line, start, end))
    }

    /// Keyword made of letters and underscores only.
    fn word(&mut self) -> (String, SourceSpan) {
        let start = self.col;
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphabetic() || c == '_' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        let end = if s.is_empty() { start } else { self.col - 1 };
        (s, SourceSpan::new(self.line, start, end))
    }

    fn name(&mut self) -> Result<(String, SourceSpan), Diagnostic> {
        self.skip_ws();
        let (s, span) = self.token();
        if s.is_empty() {
            return Err(Diagnostic::error("syntax", Location::Span(span), "expected a name"));
        }
        Ok((s, span))
    }

    /// `<prefix><digits>`, stopping after the digits so that `l2-mood`
    /// splits correctly.
    fn ident<T: FromStr + IdentKind>(&mut self) -> Result<T, Diagnostic> {
        self.skip_ws();
        let start = self.col;
        let mut s = String::new();
        if let Some(c) = self.peek().filter(char::is_ascii_alphabetic) {
            s.push(c);
            self.bump();
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        let end = if s.is_empty() { start } else { self.col - 1 };
        let span = SourceSpan::new(self.line, start, end);
        s.parse::<T>().map_err(|_| {
            let shown = if s.is_empty() { "nothing".to_string() } else { format!("`{s}`") };
            Diagnostic::error("syntax", Location::Span(span), format!("expected a {}, found {shown}", T::KIND))
        })
    }

    fn finish(&mut self) -> Result<(), Diagnostic> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(Diagnostic::error("syntax", Location::Span(self.rest_span()), "unexpected trailing text"))
        }
    }
}

trait IdentKind {
    const KIND: &'static str;
}

impl IdentKind for Label {
    const KIND: &'static str = Label::KIND;
}
impl IdentKind for Hole {
    const KIND: &'static str = Hole::KIND;
}
impl IdentKind for Instance {
    const KIND: &'static str = Instance::KIND;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes(text: &str) -> Vec<&'static str> {
        parse(text).unwrap_err().diagnostics.iter().map(|d| d.code).collect()
    }

    #[test]
    fn minimal() {
        let lud = parse("index:(l1,h0)\nlud_preds: l1-mood(decl,h0)").unwrap();
        assert_eq!(lud.holes().len(), 1);
        assert_eq!(lud.defined_labels().len(), 1);
    }

    #[test]
    fn three_field_index_warns() {
        let p = parse_with_warnings("index: (i8,l1,h0)\nlud_preds:\n l1-mood(decl,h0)\n").unwrap();
        assert_eq!(p.lud.index.instance, Some(Instance(8)));
        assert_eq!(p.warnings[0].code, "index-instance");
        assert!(serialize(&p.lud).starts_with("index: (i8,l1,h0)\n"));
    }

    #[test]
    fn label_upper_bound_is_rejected() {
        let text = "index:(l1,h0)\nlud_preds: l1-mood(decl,h0)\nlud_scoping:\n  leq(l5,l8)\n";
        let err = parse(text).unwrap_err();
        assert_eq!(err.diagnostics.len(), 1);
        let d = &err.diagnostics[0];
        assert_eq!(d.code, "label-upper-leq");
        assert_eq!(d.location, Location::Span(SourceSpan::new(4, 10, 11)));
    }

    #[test]
    fn unknown_condition_and_syntax() {
        assert_eq!(codes("index:(l1,h0)\nlud_preds: l1-frob(h0)"), vec!["unknown-condition"]);
        assert_eq!(codes("index:(l1,h0)\nlud_preds: l1-mood(decl,h0"), vec!["syntax"]);
        assert_eq!(codes("index:(l1,h0)\nl1-mood(decl,h0)"), vec!["syntax"]);
        assert_eq!(codes("lud_preds: l1-mood(decl,h0)"), vec!["bad-index"]);
        assert_eq!(codes("index:(h1,l0)\n"), vec!["bad-index"]);
        assert_eq!(codes("index:(l1,h0) extra\n"), vec!["bad-index"]);
    }

    #[test]
    fn whitespace_and_comments() {
        let a = parse("index : (l1,h0)\n").is_err();
        assert!(a, "the keyword itself may not be split");
        let lud = parse(
            "# header\nindex:( l1 , h0 )\nlud_preds:\n  l1 - mood( decl , h0 ) # trailing\n\nlud_scoping: leq( l1 , h0 )\n",
        )
        .unwrap();
        assert_eq!(lud.leq.len(), 1);
    }

    #[test]
    fn duplicate_leq_is_deduplicated() {
        let p = parse_with_warnings("index:(l1,h0)\nlud_preds: l1-mood(decl,h0)\nlud_scoping:\nleq(l1,h0)\nleq(l1,h0)\n").unwrap();
        assert_eq!(p.lud.leq.len(), 1);
        assert_eq!(p.warnings.len(), 1);
        assert_eq!(p.warnings[0].code, "duplicate-leq");
    }

    #[test]
    fn sections_in_any_order() {
        let a = parse("index:(l1,h0)\nlud_scoping: leq(l2,h0)\nlud_preds: l1-mood(decl,h0)\n  l2-dm(i1)\n").unwrap();
        let b = parse("lud_preds: l1-mood(decl,h0)\n  l2-dm(i1)\nindex:(l1,h0)\nlud_scoping: leq(l2,h0)\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(serialize(&a), serialize(&b));
    }
}
