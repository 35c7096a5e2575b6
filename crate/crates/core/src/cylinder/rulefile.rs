//! Plain-text transition tables.
//!
//! ```text
//! # model A
//! alphabet: 0 1
//! neighborhood: -1 0
//! 00 : 1/2 1/2
//! 01 : 1 0
//! 10 : 0 1
//! 11 : 1/2 1/2
//! ```
//!
//! Each table line is a neighborhood word, a colon, and one exact probability
//! per alphabet symbol in alphabet order. Words are written without
//! separators when every symbol name is a single character and as
//! whitespace-separated names otherwise. Blank lines and `#` comments are
//! ignored, so `#` cannot appear in symbol names.

use std::fmt::{Display, Write};
use std::str::FromStr;

use num_bigint::BigInt;

use super::TransitionFunction;
use crate::{Error, Rational, Result, Scalar};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::RuleParse {
        line,
        msg: msg.into(),
    }
}

fn parse_probability(tok: &str, line: usize) -> Result<Rational> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| parse_err(line, format!("bad numerator in {tok:?}")))?;
    let den = BigInt::from_str(den).map_err(|_| parse_err(line, format!("bad denominator in {tok:?}")))?;
    if den == BigInt::from(0) {
        return Err(parse_err(line, format!("zero denominator in {tok:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn parse_rule<T: Scalar>(text: &str) -> Result<TransitionFunction<T>> {
    let mut alphabet: Option<Vec<String>> = None;
    let mut neighborhood: Option<Vec<i64>> = None;
    let mut entries: Vec<(usize, Vec<usize>, Vec<T>)> = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("alphabet:") {
            let names: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
            if names.is_empty() {
                return Err(parse_err(line, "empty alphabet"));
            }
            alphabet = Some(names);
            continue;
        }
        if let Some(rest) = content.strip_prefix("neighborhood:") {
            let offsets = rest
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| parse_err(line, format!("bad offset {t:?}"))))
                .collect::<Result<Vec<_>>>()?;
            neighborhood = Some(offsets);
            continue;
        }
        let (alpha, hood) = match (&alphabet, &neighborhood) {
            (Some(a), Some(v)) => (a, v),
            _ => return Err(parse_err(line, "table row before alphabet/neighborhood header")),
        };
        let (word_part, probs_part) = content
            .split_once(':')
            .ok_or_else(|| parse_err(line, "expected `word : p/q ...`"))?;
        let tokens: Vec<&str> = word_part.split_whitespace().collect();
        let names: Vec<String> = if tokens.len() == hood.len() {
            tokens.iter().map(|t| t.to_string()).collect()
        } else if tokens.len() == 1 && tokens[0].chars().count() == hood.len() {
            tokens[0].chars().map(String::from).collect()
        } else {
            return Err(parse_err(line, format!("word {:?} does not have {} symbols", word_part.trim(), hood.len())));
        };
        let word = names
            .iter()
            .map(|n| {
                alpha
                    .iter()
                    .position(|a| a == n)
                    .ok_or_else(|| parse_err(line, format!("unknown symbol {n:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let probs = probs_part
            .split_whitespace()
            .map(|t| parse_probability(t, line).map(|r| T::from_rational(&r)))
            .collect::<Result<Vec<_>>>()?;
        if probs.len() != alpha.len() {
            return Err(parse_err(line, format!("expected {} probabilities, got {}", alpha.len(), probs.len())));
        }
        entries.push((line, word, probs));
    }

    let alphabet = alphabet.ok_or_else(|| parse_err(0, "missing `alphabet:` header"))?;
    let neighborhood = neighborhood.ok_or_else(|| parse_err(0, "missing `neighborhood:` header"))?;
    let q = alphabet.len();
    let rows = q.pow(neighborhood.len() as u32);
    let mut table: Vec<Option<Vec<T>>> = vec![None; rows];
    for (line, word, probs) in entries {
        let code = word.iter().fold(0, |acc, &s| acc * q + s);
        if table[code].replace(probs).is_some() {
            return Err(parse_err(line, "duplicate word"));
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(code, row)| row.ok_or_else(|| parse_err(0, format!("missing row for word #{code}"))))
        .collect::<Result<Vec<_>>>()?;
    TransitionFunction::new(alphabet, neighborhood, table)
}

pub fn format_rule<T: Scalar + Display>(f: &TransitionFunction<T>) -> String {
    let compact = f.alphabet().iter().all(|a| a.chars().count() == 1);
    let mut out = String::new();
    let _ = writeln!(out, "alphabet: {}", f.alphabet().join(" "));
    let hood: Vec<String> = f.neighborhood().iter().map(i64::to_string).collect();
    let _ = writeln!(out, "neighborhood: {}", hood.join(" "));
    for (code, row) in f.rows().iter().enumerate() {
        let names: Vec<&str> = f.decode(code).iter().map(|&s| f.alphabet()[s].as_str()).collect();
        let word = if compact { names.concat() } else { names.join(" ") };
        let probs: Vec<String> = row.iter().map(|p| p.to_string()).collect();
        let _ = writeln!(out, "{word} : {}", probs.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cylinder::{lift_model, model_a_rule, LiftedModel};

    #[test]
    fn model_a_text_round_trip() {
        let f = model_a_rule::<Rational>();
        let text = format_rule(&f);
        assert!(text.contains("10 : 0 1"));
        assert_eq!(parse_rule::<Rational>(&text).unwrap(), f);
    }

    #[test]
    fn lifted_round_trip_uses_separated_words() {
        let f = lift_model::<Rational>(LiftedModel::C);
        let text = format_rule(&f);
        assert!(text.contains("x> o^ : "));
        assert_eq!(parse_rule::<Rational>(&text).unwrap(), f);
    }

    #[test]
    fn parse_errors() {
        let head = "alphabet: 0 1\nneighborhood: 0\n";
        assert!(parse_rule::<Rational>(&format!("{head}0 : 1 0\n")).is_err());
        assert!(parse_rule::<Rational>(&format!("{head}0 : 1 0\n1 : 1/0 1\n")).is_err());
        assert!(parse_rule::<Rational>(&format!("{head}0 : 1 0\n0 : 1 0\n1 : 0 1\n")).is_err());
        assert!(parse_rule::<Rational>(&format!("{head}0 : 1/2 1/3\n1 : 0 1\n")).is_err());
        assert!(parse_rule::<Rational>("0 : 1 0\n").is_err());
        let ok = parse_rule::<f64>(&format!("{head}# flip\n0 : 0 1\n1 : 1 0 # swap\n")).unwrap();
        assert_eq!(ok.row(&[0]), &[0.0, 1.0]);
    }
}
