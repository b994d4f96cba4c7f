//! Text form of a plugging: one `plug_into(<label>,<hole>)` per line.
//!
//! Writing goes through `Display` on [`Plugging`]. Blank lines separate
//! pluggings in multi-reading files; `#` starts a comment.

use thiserror::Error;

use crate::ident::{Hole, IdentError, Label};
use crate::model::Plugging;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("plugging line {line}: {message}")]
pub struct PluggingParseError {
    pub line: usize,
    pub message: String,
}

enum Line {
    Blank,
    Comment,
    Binding(Hole, Label),
}

fn lines(text: &str) -> impl Iterator<Item = (usize, Result<Line, PluggingParseError>)> + '_ {
    text.lines().enumerate().map(|(n, raw)| {
        let line = n + 1;
        if raw.trim().is_empty() {
            return (line, Ok(Line::Blank));
        }
        let code: String = raw.split('#').next().unwrap_or("").chars().filter(|c| !c.is_whitespace()).collect();
        if code.is_empty() {
            return (line, Ok(Line::Comment));
        }
        let err = |message: String| PluggingParseError { line, message };
        let parsed = (|| {
            let body = code
                .strip_prefix("plug_into(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| err(format!("expected plug_into(<label>,<hole>), found `{code}`")))?;
            let (l, h) = body.split_once(',').ok_or_else(|| err("missing `,`".into()))?;
            let label: Label = l.parse().map_err(|e: IdentError| err(e.to_string()))?;
            let hole: Hole = h.parse().map_err(|e: IdentError| err(e.to_string()))?;
            Ok(Line::Binding(hole, label))
        })();
        (line, parsed)
    })
}

/// Parses a single plugging; blank lines are ignored.
pub fn parse_plugging(text: &str) -> Result<Plugging, PluggingParseError> {
    let mut out = Plugging::new();
    for (line, parsed) in lines(text) {
        if let Line::Binding(hole, label) = parsed? {
            if out.assignment.insert(hole, label).is_some() {
                return Err(PluggingParseError { line, message: format!("{hole} plugged twice") });
            }
        }
    }
    Ok(out)
}

/// Parses a list of pluggings separated by blank lines.
pub fn parse_pluggings(text: &str) -> Result<Vec<Plugging>, PluggingParseError> {
    let mut out = Vec::new();
    let mut current = Plugging::new();
    for (line, parsed) in lines(text) {
        match parsed? {
            Line::Blank => {
                if !current.is_empty() {
                    out.push(std::mem::take(&mut current));
                }
            }
            Line::Comment => {}
            Line::Binding(hole, label) => {
                if current.assignment.insert(hole, label).is_some() {
                    return Err(PluggingParseError { line, message: format!("{hole} plugged twice") });
                }
            }
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_written_form() {
        let p = Plugging::new().plug(Hole(0), Label(4)).plug(Hole(5), Label(2)).plug(Hole(2), Label(3));
        let text = p.to_string();
        assert_eq!(text, "plug_into(l4,h0)\nplug_into(l3,h2)\nplug_into(l2,h5)\n");
        assert_eq!(parse_plugging(&text).unwrap(), p);
        assert_eq!(parse_plugging("plug_into(l4, h0)\n").unwrap(), Plugging::new().plug(Hole(0), Label(4)));
    }

    #[test]
    fn several_and_errors() {
        let all = parse_pluggings("# a\nplug_into(l1,h0)\n\nplug_into(l2,h0)\n").unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(parse_plugging("plug_into(l1,h0)\nplug_into(l2,h0)").unwrap_err().line, 2);
        assert!(parse_plugging("plug(l1,h0)").is_err());
        assert!(parse_plugging("plug_into(h1,l0)").is_err());
    }
}
