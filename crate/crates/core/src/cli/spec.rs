//! Group specifications: `Q8`, `D2[k=2]`, `D1[k=1]xC3`, `Q8xC7`, `C2xC4`,
//! or a JSON object such as `{"type": "D2", "k": 1, "abelian": [3]}`.

use std::sync::Arc;

use serde::Deserialize;

use crate::decide::Carrier;
use crate::error::{Error, Result};
use crate::groups::{build_abelian_capped, build_slc_capped, PresentationType};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlcParams {
    pub ptype: PresentationType,
    pub k: u32,
    pub k2: Option<u32>,
    pub k3: Option<u32>,
}

/// A parsed group specification: an optional SLC factor times cyclic factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub slc: Option<SlcParams>,
    pub abelian: Vec<u64>,
}

impl GroupSpec {
    pub fn build(&self, max_order: usize) -> Result<Carrier> {
        match self.slc {
            Some(p) => Ok(Carrier::Slc(build_slc_capped(p.ptype, p.k, p.k2, p.k3, &self.abelian, max_order)?)),
            None => Ok(Carrier::Plain(Arc::new(build_abelian_capped(&self.abelian, max_order)?))),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupConfig {
    #[serde(rename = "type")]
    ptype: Option<String>,
    k: Option<u32>,
    k2: Option<u32>,
    k3: Option<u32>,
    #[serde(default)]
    abelian: Vec<u64>,
}

fn err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn ptype_from(name: &str, pos: usize) -> Result<PresentationType> {
    name.strip_prefix('D')
        .and_then(|d| d.parse::<u8>().ok())
        .and_then(PresentationType::from_number)
        .ok_or_else(|| err(pos, format!("unknown presentation type {name:?}, expected D1..D5")))
}

fn parse_json(text: &str) -> Result<GroupSpec> {
    let cfg: GroupConfig = serde_json::from_str(text).map_err(|e| err(e.column().saturating_sub(1), e.to_string()))?;
    let slc = match cfg.ptype.as_deref() {
        None => {
            if cfg.k.is_some() || cfg.k2.is_some() || cfg.k3.is_some() {
                return Err(err(0, "k, k2, k3 need a presentation type"));
            }
            if cfg.abelian.is_empty() {
                return Err(err(0, "empty group specification"));
            }
            None
        }
        Some("Q8") => Some(SlcParams { ptype: PresentationType::D2, k: 1, k2: None, k3: None }),
        Some(name) => Some(SlcParams {
            ptype: ptype_from(name, 0)?,
            k: cfg.k.ok_or_else(|| err(0, "missing k"))?,
            k2: cfg.k2,
            k3: cfg.k3,
        }),
    };
    Ok(GroupSpec { slc, abelian: cfg.abelian })
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected a number"));
        }
        self.text[start..self.pos].parse().map_err(|_| err(start, "number too large"))
    }

    fn name(&mut self) -> &str {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }
}

fn small(v: u64, pos: usize) -> Result<u32> {
    u32::try_from(v).map_err(|_| err(pos, "exponent too large"))
}

fn parse_params(cur: &mut Cursor, ptype: PresentationType, at: usize) -> Result<SlcParams> {
    let (mut k, mut k2, mut k3) = (None, None, None);
    if !cur.eat('[') {
        return Err(err(cur.pos, format!("{ptype} needs parameters, e.g. {ptype}[k=1]")));
    }
    loop {
        let name_pos = cur.pos;
        let name = cur.name().to_string();
        if !cur.eat('=') {
            return Err(err(cur.pos, "expected '='"));
        }
        let value_pos = cur.pos;
        let value = small(cur.number()?, value_pos)?;
        let slot = match name.as_str() {
            "k" => &mut k,
            "k2" => &mut k2,
            "k3" => &mut k3,
            _ => return Err(err(name_pos, format!("unknown parameter {name:?}"))),
        };
        if slot.replace(value).is_some() {
            return Err(err(name_pos, format!("parameter {name} given twice")));
        }
        if cur.eat(']') {
            break;
        }
        if !cur.eat(',') {
            return Err(err(cur.pos, "expected ',' or ']'"));
        }
    }
    let k = k.ok_or_else(|| err(at, format!("{ptype} needs k")))?;
    Ok(SlcParams { ptype, k, k2, k3 })
}

pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return parse_json(trimmed);
    }
    let mut cur = Cursor { text: text.trim_end(), pos: text.len() - text.trim_start().len() };
    let mut slc = None;
    let mut abelian = Vec::new();
    loop {
        let at = cur.pos;
        match cur.peek() {
            Some('C') => {
                cur.pos += 1;
                let n_pos = cur.pos;
                let n = cur.number()?;
                if n == 0 {
                    return Err(err(n_pos, "cyclic factor of order 0"));
                }
                abelian.push(n);
            }
            Some('Q') => {
                cur.pos += 1;
                if cur.number().ok() != Some(8) {
                    return Err(err(at, "only Q8 is supported"));
                }
                if slc.replace(SlcParams { ptype: PresentationType::D2, k: 1, k2: None, k3: None }).is_some() {
                    return Err(err(at, "at most one non-abelian factor"));
                }
            }
            Some('D') => {
                cur.pos += 1;
                let n_pos = cur.pos;
                let n = cur.number()?;
                let ptype = u8::try_from(n)
                    .ok()
                    .and_then(PresentationType::from_number)
                    .ok_or_else(|| err(n_pos, format!("unknown presentation type D{n}, expected D1..D5")))?;
                let params = parse_params(&mut cur, ptype, at)?;
                if slc.replace(params).is_some() {
                    return Err(err(at, "at most one non-abelian factor"));
                }
            }
            Some(c) => return Err(err(at, format!("unexpected {c:?}, expected Q8, Cn or Dn[...]"))),
            None => return Err(err(at, "expected a factor")),
        }
        match cur.peek() {
            None => break,
            Some('x') => cur.pos += 1,
            Some(c) => return Err(err(cur.pos, format!("unexpected {c:?}, expected 'x'"))),
        }
    }
    Ok(GroupSpec { slc, abelian })
}
