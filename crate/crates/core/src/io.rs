//! Text and JSON formats for set systems.
//!
//! Text format:
//!
//! ```text
//! n 6
//! # comment
//! 1 2 3
//! 1 2 4
//! ```
//!
//! The first line is the header `n <int>`. Every later line that is neither
//! blank nor starts with `#` is one member, written as strictly increasing
//! 1-based elements separated by spaces. The empty member is written `{}`.
//! Output always uses LF line endings and preserves member order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{GroundSet, Subset};
use crate::system::SetSystem;

const EMPTY_MEMBER: &str = "{}";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_system(text: &str) -> Result<SetSystem> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header `n <int>`"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["n", v] => v
            .parse::<usize>()
            .map_err(|_| parse_err(hline, format!("malformed header `{header}`")))?,
        _ => return Err(parse_err(hline, format!("malformed header `{header}`"))),
    };
    let ground = GroundSet::new(n)?;

    let mut members = Vec::new();
    for (line, body) in lines {
        members.push(parse_member(ground, line, body)?);
    }
    SetSystem::new(ground, members)
}

fn parse_member(ground: GroundSet, line: usize, body: &str) -> Result<Subset> {
    if body == EMPTY_MEMBER {
        return Ok(Subset::EMPTY);
    }
    let mut mask = Subset::EMPTY;
    let mut prev = 0usize;
    for tok in body.split_whitespace() {
        let e: usize = tok
            .parse()
            .map_err(|_| parse_err(line, format!("invalid element `{tok}`")))?;
        if e == 0 || e > ground.n() {
            return Err(Error::ElementOutOfRange {
                element: e,
                n: ground.n(),
            });
        }
        if mask.contains(e) {
            return Err(parse_err(line, format!("duplicate element {e}")));
        }
        if e < prev {
            return Err(parse_err(line, "elements must be strictly increasing"));
        }
        prev = e;
        mask = mask.with(e);
    }
    Ok(mask)
}

pub fn serialize_system(f: &SetSystem) -> String {
    let mut out = format!("n {}\n", f.n());
    for m in f.members() {
        out.push_str(&member_line(*m));
        out.push('\n');
    }
    out
}

/// One member in text form, without the trailing newline.
pub fn member_line(m: Subset) -> String {
    if m.is_empty() {
        return EMPTY_MEMBER.to_string();
    }
    m.elements().map(|e| e.to_string()).collect::<Vec<_>>().join(" ")
}

/// JSON shape `{"n": int, "members": [[int, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub n: usize,
    pub members: Vec<Vec<usize>>,
}

impl From<&SetSystem> for SystemJson {
    fn from(f: &SetSystem) -> Self {
        Self {
            n: f.n(),
            members: f.members().iter().map(|m| m.to_vec()).collect(),
        }
    }
}

impl TryFrom<SystemJson> for SetSystem {
    type Error = Error;

    fn try_from(j: SystemJson) -> Result<Self> {
        let ground = GroundSet::new(j.n)?;
        let mut members = Vec::with_capacity(j.members.len());
        for (i, m) in j.members.iter().enumerate() {
            let mut mask = Subset::EMPTY;
            for &e in m {
                if e == 0 || e > j.n {
                    return Err(Error::ElementOutOfRange { element: e, n: j.n });
                }
                if mask.contains(e) {
                    return Err(parse_err(i + 1, format!("duplicate element {e}")));
                }
                mask = mask.with(e);
            }
            members.push(mask);
        }
        SetSystem::new(ground, members)
    }
}

pub fn parse_system_json(text: &str) -> Result<SetSystem> {
    let j: SystemJson = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    j.try_into()
}

pub fn serialize_system_json(f: &SetSystem) -> String {
    serde_json::to_string(&SystemJson::from(f)).expect("plain data serializes")
}

/// Parses either format; JSON is recognised by a leading `{`.
pub fn parse_any(text: &str) -> Result<SetSystem> {
    if text.trim_start().starts_with('{') {
        parse_system_json(text)
    } else {
        parse_system(text)
    }
}
