//! Identifiers for labels, holes and discourse markers.
//!
//! All three namespaces use the canonical `<prefix><digits>` spelling
//! (`l12`, `h0`, `i5`). Ordering is numeric, so `l2 < l10`.

use std::fmt;
use std::str::FromStr;

macro_rules! ident {
    ($(#[$meta:meta])* $name:ident, $prefix:literal, $kind:literal) => {
        $(#[$meta])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(pub u32);

        impl $name {
            pub const PREFIX: char = $prefix;
            pub const KIND: &'static str = $kind;

            pub fn number(self) -> u32 {
                self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{}", $prefix, self.0)
            }
        }

        impl FromStr for $name {
            type Err = IdentError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                let digits = s.strip_prefix($prefix).ok_or_else(|| IdentError {
                    token: s.to_string(),
                    kind: $kind,
                })?;
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(IdentError {
                        token: s.to_string(),
                        kind: $kind,
                    });
                }
                digits.parse().map($name).map_err(|_| IdentError {
                    token: s.to_string(),
                    kind: $kind,
                })
            }
        }
    };
}

ident!(
    /// A label naming a condition or a group of conditions.
    Label, 'l', "label"
);
ident!(
    /// A hole: a scope slot that a plugging fills with a label.
    Hole, 'h', "hole"
);
ident!(
    /// A discourse marker (instance variable).
    Instance, 'i', "instance"
);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("`{token}` is not a {kind} identifier")]
pub struct IdentError {
    pub token: String,
    pub kind: &'static str,
}
