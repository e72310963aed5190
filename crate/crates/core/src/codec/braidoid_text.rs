//! Line-oriented braidoid word format.
//!
//! Header: `braidoid n=<k> labels=<l1,...,lk>`; body lines `X <i> <+|->`,
//! `L <i> @<num>/<den>`, `H <i> @<num>/<den>`. Printing reduces rationals,
//! so print . parse is the identity on words and parse . print on canonical
//! text.

use crate::braidoid::word::{BraidoidEvent, CrossSign, Label, LabeledBraidoid};
use crate::geom::point::Rat;
use num_bigint::BigInt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        msg: msg.into(),
    }
}

pub fn print_braidoid(b: &LabeledBraidoid) -> String {
    let labels: Vec<String> = b.labels.iter().map(|l| l.as_char().to_string()).collect();
    let mut out = format!("braidoid n={} labels={}\n", b.n_columns, labels.join(","));
    for e in &b.events {
        match e {
            BraidoidEvent::Cross { i, sign } => {
                let s = if *sign == CrossSign::Plus { '+' } else { '-' };
                out.push_str(&format!("X {i} {s}\n"));
            }
            BraidoidEvent::LegBirth { i, node_x } => {
                out.push_str(&format!("L {i} @{}/{}\n", node_x.numer(), node_x.denom()));
            }
            BraidoidEvent::HeadEnd { i, node_x } => {
                out.push_str(&format!("H {i} @{}/{}\n", node_x.numer(), node_x.denom()));
            }
        }
    }
    out
}

pub fn parse_braidoid(text: &str) -> Result<LabeledBraidoid, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| perr(1, 1, "empty input"))?;
    let rest = header
        .strip_prefix("braidoid")
        .ok_or_else(|| perr(hline, 1, "expected `braidoid` header"))?;
    let mut n_columns: Option<usize> = None;
    let mut labels: Option<Vec<Label>> = None;
    for tok in rest.split_whitespace() {
        if let Some(v) = tok.strip_prefix("n=") {
            n_columns = Some(
                v.parse()
                    .map_err(|_| perr(hline, 1, format!("bad column count `{v}`")))?,
            );
        } else if let Some(v) = tok.strip_prefix("labels=") {
            let mut ls = Vec::new();
            if !v.is_empty() {
                for part in v.split(',') {
                    match part.trim() {
                        "o" => ls.push(Label::O),
                        "u" => ls.push(Label::U),
                        other => {
                            return Err(perr(hline, 1, format!("bad label `{other}`")));
                        }
                    }
                }
            }
            labels = Some(ls);
        } else {
            return Err(perr(hline, 1, format!("unknown header field `{tok}`")));
        }
    }
    let n_columns = n_columns.ok_or_else(|| perr(hline, 1, "missing n="))?;
    let labels = labels.ok_or_else(|| perr(hline, 1, "missing labels="))?;
    if labels.len() != n_columns {
        return Err(perr(hline, 1, "labels count differs from n"));
    }
    let mut events = Vec::new();
    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        let kind = toks.next().unwrap_or("");
        match kind {
            "X" => {
                let i = parse_index(toks.next(), ln)?;
                let sign = match toks.next() {
                    Some("+") => CrossSign::Plus,
                    Some("-") => CrossSign::Minus,
                    other => {
                        return Err(perr(ln, 1, format!("expected + or -, got {other:?}")));
                    }
                };
                events.push(BraidoidEvent::Cross { i, sign });
            }
            "L" | "H" => {
                let i = parse_index(toks.next(), ln)?;
                let node_x = parse_abscissa(toks.next(), ln)?;
                if kind == "L" {
                    events.push(BraidoidEvent::LegBirth { i, node_x });
                } else {
                    events.push(BraidoidEvent::HeadEnd { i, node_x });
                }
            }
            other => {
                return Err(perr(ln, 1, format!("unknown event `{other}`")));
            }
        }
        if let Some(junk) = toks.next() {
            return Err(perr(ln, 1, format!("trailing token `{junk}`")));
        }
    }
    Ok(LabeledBraidoid::new(n_columns, labels, events))
}

fn parse_index(tok: Option<&str>, line: usize) -> Result<usize, ParseError> {
    let t = tok.ok_or_else(|| perr(line, 1, "missing position index"))?;
    t.parse()
        .map_err(|_| perr(line, 1, format!("bad position index `{t}`")))
}

fn parse_abscissa(tok: Option<&str>, line: usize) -> Result<Rat, ParseError> {
    let t = tok.ok_or_else(|| perr(line, 1, "missing abscissa"))?;
    let t = t
        .strip_prefix('@')
        .ok_or_else(|| perr(line, 1, "abscissa must start with @"))?;
    let (num, den) = t
        .split_once('/')
        .ok_or_else(|| perr(line, 1, "abscissa must be num/den"))?;
    let n = BigInt::from_str(num).map_err(|_| perr(line, 1, format!("bad numerator `{num}`")))?;
    let d = BigInt::from_str(den).map_err(|_| perr(line, 1, format!("bad denominator `{den}`")))?;
    if d == BigInt::from(0) {
        return Err(perr(line, 1, "zero denominator"));
    }
    Ok(Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_roundtrip_is_byte_identical() {
        let b = LabeledBraidoid::minimal();
        let text = print_braidoid(&b);
        assert_eq!(text, "braidoid n=0 labels=\nL 1 @1/2\nH 1 @1/2\n");
        let b2 = parse_braidoid(&text).unwrap();
        assert_eq!(b, b2);
        assert_eq!(print_braidoid(&b2), text);
    }

    #[test]
    fn header_mismatch_rejected_at_parse() {
        let e = parse_braidoid("braidoid n=2 labels=u\nL 1 @1/2\nH 1 @1/2\n");
        assert!(e.is_err());
    }

    #[test]
    fn whitespace_tolerant() {
        let b = parse_braidoid("  braidoid n=1   labels=o\n  X 1 +\n L 1 @1/2\n\n H  1 @3/8\n");
        assert!(b.is_ok());
    }
}
