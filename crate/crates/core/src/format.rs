//! JSON and plain-text encodings of set systems.
//!
//! JSON: `{"n": 4, "sets": [[], [1], [2], [3], [2, 3]]}`.
//!
//! Text: a header line `n=<int>`, then one set per line with
//! space-separated elements; a line containing only `-` is the empty set.
//! Blank lines are ignored. Both forms list sets in canonical order with
//! elements ascending, so equal systems encode identically.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sets::{SetMask, SetSystem};

#[derive(Serialize, Deserialize)]
struct SystemRepr {
    n: usize,
    sets: Vec<Vec<usize>>,
}

pub(crate) fn mask_to_list(m: SetMask) -> Vec<usize> {
    m.elements().collect()
}

/// Converts a 1-based element list, rejecting repeats and out-of-range labels.
pub(crate) fn list_to_mask(n: usize, list: &[usize]) -> Result<SetMask> {
    let mut mask = SetMask::EMPTY;
    for &e in list {
        let single = SetMask::from_elements(n, [e])?;
        if !mask.is_disjoint(single) {
            return Err(Error::Parse {
                line: 0,
                message: format!("element {e} repeated within a set"),
            });
        }
        mask = mask.union(single);
    }
    Ok(mask)
}

impl Serialize for SetSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SystemRepr {
            n: self.n(),
            sets: self.iter().map(mask_to_list).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SetSystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SystemRepr::deserialize(deserializer)?;
        let masks = repr
            .sets
            .iter()
            .map(|s| list_to_mask(repr.n, s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        SetSystem::new(repr.n, masks).map_err(D::Error::custom)
    }
}

impl Serialize for SetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        mask_to_list(*self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SetMask {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let list = Vec::<usize>::deserialize(deserializer)?;
        list_to_mask(64, &list).map_err(D::Error::custom)
    }
}

pub fn to_json(system: &SetSystem) -> String {
    serde_json::to_string(system).expect("set system serializes")
}

pub fn from_json(input: &str) -> Result<SetSystem> {
    Ok(serde_json::from_str(input)?)
}

/// One set per line; `-` for the empty set.
pub fn set_to_text(m: SetMask) -> String {
    if m.is_empty() {
        "-".to_string()
    } else {
        m.elements()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn to_text(system: &SetSystem) -> String {
    let mut out = format!("n={}\n", system.n());
    for m in system.iter() {
        out.push_str(&set_to_text(m));
        out.push('\n');
    }
    out
}

/// Parses the body of a set line (`-` or space-separated labels).
pub fn parse_set_text(n: usize, body: &str, line: usize) -> Result<SetMask> {
    let body = body.trim();
    if body == "-" {
        return Ok(SetMask::EMPTY);
    }
    if body.is_empty() {
        return Err(Error::Parse {
            line,
            message: "empty set body; write `-` for the empty set".into(),
        });
    }
    let mut elems = Vec::new();
    for tok in body.split_whitespace() {
        let e: usize = tok.parse().map_err(|_| Error::Parse {
            line,
            message: format!("`{tok}` is not an element label"),
        })?;
        elems.push(e);
    }
    list_to_mask(n, &elems).map_err(|e| match e {
        Error::Parse { message, .. } => Error::Parse { line, message },
        other => Error::Parse {
            line,
            message: other.to_string(),
        },
    })
}

/// Parses an `n=<int>` header.
pub(crate) fn parse_header(line_text: &str, line: usize) -> Result<usize> {
    let rest = line_text
        .trim()
        .strip_prefix("n=")
        .ok_or_else(|| Error::Parse {
            line,
            message: "expected header `n=<int>`".into(),
        })?;
    rest.trim().parse().map_err(|_| Error::Parse {
        line,
        message: format!("`{}` is not a universe size", rest.trim()),
    })
}

pub fn from_text(input: &str) -> Result<SetSystem> {
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 1,
        message: "empty input".into(),
    })?;
    let n = parse_header(header, hline)?;
    crate::sets::check_universe(n).map_err(|e| Error::Parse {
        line: hline,
        message: e.to_string(),
    })?;
    let mut members = Vec::new();
    for (line, body) in lines {
        let m = parse_set_text(n, body, line)?;
        if members.contains(&m) {
            return Err(Error::Parse {
                line,
                message: format!("duplicate set {m}"),
            });
        }
        members.push(m);
    }
    SetSystem::new(n, members)
}

/// Accepts either encoding: JSON when the first non-space byte is `{`.
pub fn parse_system(input: &str) -> Result<SetSystem> {
    if input.trim_start().starts_with('{') {
        from_json(input)
    } else {
        from_text(input)
    }
}
