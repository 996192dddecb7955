//! Text forms of groups, elements and sequences.
//!
//! Group descriptors: `C<n>`, `D<n>` (dihedral of order 2n), `Q<n>` (dicyclic
//! of order 4n) and `T:<path>` for a Cayley table file.
//!
//! Sequence literals: `<group>:<term>( <term>)*` where a term is `<elem>` or
//! `<elem>^<mult>`. Elements are `i` for cyclic groups (meaning `a^i`), `a<i>`
//! and `b<i>` (= `a^i τ`) for dihedral and dicyclic groups, and bare indices
//! for table groups. The `<group>:` prefix is optional when the group is
//! already known.

use crate::error::{Error, Result};
use crate::group::{Element, FiniteGroup, GroupKind, GroupSpec};
use crate::sequence::Sequence;

/// Parses `C6`, `D3`, `Q2`. Table descriptors need file access; see [`load_group`].
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let t = text.trim();
    let mut chars = t.chars();
    let head = chars
        .next()
        .ok_or_else(|| Error::parse(0, "empty group descriptor"))?;
    let rest = chars.as_str();
    let n = || {
        rest.parse::<u32>()
            .map_err(|_| Error::parse(1, format!("expected an integer after `{head}`, got `{rest}`")))
    };
    match head {
        'C' => Ok(GroupSpec::Cyclic(n()?)),
        'D' => Ok(GroupSpec::Dihedral(n()?)),
        'Q' => Ok(GroupSpec::Dicyclic(n()?)),
        'T' => Err(Error::parse(0, "table descriptors must be loaded with load_group")),
        _ => Err(Error::parse(
            0,
            format!("unknown group family `{head}` (expected C, D, Q or T:<path>)"),
        )),
    }
}

/// Cayley tables shipped with the crate, usable as `T:s3` and `T:q8`.
pub const BUILTIN_TABLES: [(&str, &str); 2] = [
    ("s3", include_str!("../data/s3.json")),
    ("q8", include_str!("../data/q8.json")),
];

/// Builds a group from a descriptor, reading the Cayley table for `T:<path>`.
/// A path that does not exist but names a built-in table loads that table.
pub fn load_group(text: &str) -> Result<FiniteGroup> {
    let t = text.trim();
    if let Some(path) = t.strip_prefix("T:") {
        let body = match std::fs::read_to_string(path) {
            Ok(body) => body,
            Err(e) => match BUILTIN_TABLES.iter().find(|(name, _)| *name == path) {
                Some((_, body)) => body.to_string(),
                None => return Err(Error::Io(format!("{path}: {e}"))),
            },
        };
        return FiniteGroup::from_table_json(&body);
    }
    crate::group::make_group(&parse_group_spec(t)?)
}

pub fn format_element(group: &FiniteGroup, x: Element) -> String {
    match group.kind() {
        GroupKind::Cyclic { .. } | GroupKind::Table { .. } => x.0.to_string(),
        GroupKind::Dihedral { n } => rotation_literal(x.0, *n),
        GroupKind::Dicyclic { n } => rotation_literal(x.0, 2 * n),
    }
}

fn rotation_literal(index: u32, m: u32) -> String {
    if index < m {
        format!("a{index}")
    } else {
        format!("b{}", index - m)
    }
}

/// Parses one element literal; `pos` is the offset used in diagnostics.
pub fn parse_element(group: &FiniteGroup, text: &str, pos: usize) -> Result<Element> {
    let bad = |msg: String| Error::parse(pos, msg);
    let number = |s: &str, off: usize| {
        s.parse::<u32>()
            .map_err(|_| Error::parse(pos + off, format!("expected an integer, got `{s}`")))
    };
    let index = match group.kind() {
        GroupKind::Cyclic { n } => {
            let i = number(text, 0)?;
            if i >= *n {
                return Err(bad(format!("exponent {i} out of range for C{n}")));
            }
            i
        }
        GroupKind::Table { .. } => {
            let i = number(text, 0)?;
            if i >= group.order() {
                return Err(bad(format!("index {i} out of range for order {}", group.order())));
            }
            i
        }
        GroupKind::Dihedral { n } | GroupKind::Dicyclic { n } => {
            let m = if matches!(group.kind(), GroupKind::Dihedral { .. }) {
                *n
            } else {
                2 * n
            };
            let (reflect, digits) = match text.as_bytes().first() {
                Some(b'a') => (false, &text[1..]),
                Some(b'b') => (true, &text[1..]),
                _ => return Err(bad(format!("expected `a<i>` or `b<i>`, got `{text}`"))),
            };
            let i = number(digits, 1)?;
            if i >= m {
                return Err(bad(format!("exponent {i} out of range (must be < {m})")));
            }
            if reflect {
                m + i
            } else {
                i
            }
        }
    };
    Ok(Element(index))
}

pub fn format_terms(group: &FiniteGroup, counts: &[(Element, u32)]) -> String {
    counts
        .iter()
        .map(|&(x, c)| {
            let e = format_element(group, x);
            if c == 1 {
                e
            } else {
                format!("{e}^{c}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_sequence(seq: &Sequence<'_>) -> String {
    format!("{}:{}", seq.group().name(), format_terms(seq.group(), seq.counts()))
}

/// Parses a sequence literal over `group`. A leading `<group>:` prefix, if
/// present, must name `group`.
pub fn parse_sequence<'g>(group: &'g FiniteGroup, text: &str) -> Result<Sequence<'g>> {
    let (body, offset) = match text.rfind(':') {
        Some(i) => {
            let prefix = text[..i].trim();
            let expected = group.name();
            let matches = prefix == expected
                || (matches!(group.kind(), GroupKind::Table { .. }) && prefix.starts_with("T:"));
            if !matches {
                return Err(Error::parse(
                    0,
                    format!("sequence is over `{prefix}` but the group is `{expected}`"),
                ));
            }
            (&text[i + 1..], i + 1)
        }
        None => (text, 0),
    };
    let mut counts = Vec::new();
    let mut rest = body;
    let mut pos = offset;
    loop {
        let skip = rest.len() - rest.trim_start().len();
        rest = &rest[skip..];
        pos += skip;
        if rest.is_empty() {
            break;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let token = &rest[..end];
        let (elem, mult) = match token.split_once('^') {
            Some((e, m)) => {
                let mult = m.parse::<u32>().map_err(|_| {
                    Error::parse(pos + e.len() + 1, format!("invalid multiplicity `{m}`"))
                })?;
                if mult == 0 {
                    return Err(Error::parse(pos + e.len() + 1, "multiplicity must be positive"));
                }
                (e, mult)
            }
            None => (token, 1),
        };
        counts.push((parse_element(group, elem, pos)?, mult));
        rest = &rest[end..];
        pos += end;
    }
    Sequence::from_counts(group, counts)
}
