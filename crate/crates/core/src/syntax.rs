//! Text forms of grading-group elements and extension bundles.
//!
//! L-expressions: `term (("+"|"-") term)*` with `term = [n ["*"]] atom`,
//! atoms `x1 x2 x3 c w xbar1 xbar2 xbar3`, or the normal form `(l1,l2,l3;l)`.
//! Bundles: `E`, `E(expr)`, `E<l1,l2,l3>`, `E<expr>`, each optionally
//! followed by a twist `(expr)`.

use crate::bundles::ExtBundle;
use crate::error::{Error, Result};
use crate::lgroup::{LElement, WeightTriple};

fn err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn atom(w: WeightTriple, s: &str) -> Option<LElement> {
    Some(match s {
        "x1" => w.x(0),
        "x2" => w.x(1),
        "x3" => w.x(2),
        "c" => w.c(),
        "w" | "ω" => w.omega(),
        "xbar1" => w.xbar(0),
        "xbar2" => w.xbar(1),
        "xbar3" => w.xbar(2),
        _ => return None,
    })
}

fn normal_form(w: WeightTriple, s: &str) -> Result<LElement> {
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| err(format!("bad normal form {s:?}")))?;
    let (ls, lc) = inner.split_once(';').ok_or_else(|| err(format!("missing ';' in {s:?}")))?;
    let parts: Vec<i64> = ls
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| err(format!("bad integer {t:?}"))))
        .collect::<Result<_>>()?;
    if parts.len() != 3 {
        return Err(err(format!("normal form needs three coefficients: {s:?}")));
    }
    let l = lc.trim().parse::<i64>().map_err(|_| err(format!("bad integer {lc:?}")))?;
    Ok(w.normalize([parts[0], parts[1], parts[2]], l))
}

fn term(w: WeightTriple, t: &str) -> Result<LElement> {
    let t = t.trim();
    let digits = t.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(t.len());
    let (num, rest) = t.split_at(digits);
    let rest = rest.trim_start();
    let rest = rest.strip_prefix('*').unwrap_or(rest).trim();
    if rest.is_empty() {
        return match num.parse::<i64>() {
            Ok(0) => Ok(w.zero()),
            _ => Err(err(format!("bare integer {t:?} is not an element"))),
        };
    }
    let n = if num.is_empty() { 1 } else { num.parse::<i64>().map_err(|_| err(format!("bad integer {num:?}")))? };
    let a = atom(w, rest).ok_or_else(|| err(format!("unknown atom {rest:?}")))?;
    Ok(a * n)
}

/// Parses an L-expression for the given weights.
pub fn parse_l(w: WeightTriple, s: &str) -> Result<LElement> {
    let s = s.trim();
    if s.is_empty() {
        return Err(err("empty expression"));
    }
    if s.starts_with('(') && s.contains(';') {
        return normal_form(w, s);
    }
    let mut total = w.zero();
    let mut sign = 1;
    let mut cur = String::new();
    let mut pending = false;
    for ch in s.chars() {
        if ch == '+' || ch == '-' {
            if !cur.trim().is_empty() {
                total += term(w, &cur)? * sign;
                cur.clear();
            } else if pending {
                return Err(err(format!("dangling sign in {s:?}")));
            }
            sign = if ch == '-' { -1 } else { 1 };
            pending = true;
        } else {
            cur.push(ch);
        }
    }
    if cur.trim().is_empty() {
        return Err(err(format!("dangling sign in {s:?}")));
    }
    total += term(w, &cur)? * sign;
    Ok(total)
}

fn box_vector(w: WeightTriple, s: &str) -> Result<LElement> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() == 3 {
        let mut l = [0; 3];
        for (k, p) in parts.iter().enumerate() {
            l[k] = p.trim().parse().map_err(|_| err(format!("bad integer {p:?}")))?;
        }
        return Ok(w.normalize(l, 0));
    }
    parse_l(w, s)
}

/// Parses a bundle: `E`, `E(z)`, `E<l1,l2,l3>(z)` or `E<x>(z)`.
pub fn parse_bundle(w: WeightTriple, s: &str) -> Result<ExtBundle> {
    let s = s.trim();
    let rest = s.strip_prefix('E').ok_or_else(|| err(format!("bundle must start with 'E': {s:?}")))?;
    let rest = rest.trim_start();
    let (x, rest) = if let Some(r) = rest.strip_prefix('<') {
        let end = r.find('>').ok_or_else(|| err(format!("unclosed '<' in {s:?}")))?;
        (box_vector(w, &r[..end])?, r[end + 1..].trim())
    } else {
        (w.zero(), rest)
    };
    let z = if rest.is_empty() {
        w.zero()
    } else {
        let inner = rest
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| err(format!("bad twist in {s:?}")))?;
        parse_l(w, inner)?
    };
    ExtBundle::new(x, z)
}

/// Parses `p1,p2,p3`.
pub fn parse_weights(s: &str) -> Result<WeightTriple> {
    let ws: Vec<i64> = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| err(format!("bad weight {t:?}"))))
        .collect::<Result<_>>()?;
    WeightTriple::from_slice(&ws)
}
