//! Exact evolution of cylinder measures.

use std::fmt::Display;

use anyhow::{bail, Context, Result};
use pcasim::cylinder::{evolve_measure, CylinderMeasure, TransitionFunction};
use pcasim::Scalar;
use serde_json::json;

/// Parses `uniform`, `alternating`, `dirac:WORD` or `iid:P,P,...`.
pub fn initial_measure<T: Scalar>(spec: &str, f: &TransitionFunction<T>, start: i64, len: usize) -> Result<CylinderMeasure<T>> {
    let q = f.q();
    if spec == "uniform" {
        let law = vec![T::ratio(1, q as i64); q];
        return Ok(CylinderMeasure::iid(start, len, &law)?);
    }
    if spec == "alternating" {
        let a: Vec<usize> = (0..len).map(|j| (start + j as i64).rem_euclid(2) as usize).collect();
        let b: Vec<usize> = a.iter().map(|s| 1 - s).collect();
        if q < 2 {
            bail!("alternating needs at least two symbols");
        }
        let da = CylinderMeasure::dirac(q, start, &a)?;
        let db = CylinderMeasure::dirac(q, start, &b)?;
        return Ok(CylinderMeasure::mixture(&[(T::half(), &da), (T::half(), &db)])?);
    }
    if let Some(word) = spec.strip_prefix("dirac:") {
        let symbols = parse_word(f, word)?;
        if symbols.len() != len {
            bail!("dirac word has {} symbols but the window has {len}", symbols.len());
        }
        return Ok(CylinderMeasure::dirac(q, start, &symbols)?);
    }
    if let Some(list) = spec.strip_prefix("iid:") {
        let law = list
            .split(',')
            .map(|p| {
                let r: pcasim::Rational = p.trim().parse().with_context(|| format!("bad probability `{p}`"))?;
                Ok(T::from_rational(&r))
            })
            .collect::<Result<Vec<T>>>()?;
        if law.len() != q {
            bail!("iid law has {} entries for {q} symbols", law.len());
        }
        return Ok(CylinderMeasure::iid(start, len, &law)?);
    }
    bail!("unknown measure `{spec}` (expected uniform, alternating, dirac:WORD or iid:P,...)")
}

fn compact<T: Scalar>(f: &TransitionFunction<T>) -> bool {
    f.alphabet().iter().all(|a| a.chars().count() == 1)
}

/// Single-character alphabets are written without separators, others comma-separated.
fn parse_word<T: Scalar>(f: &TransitionFunction<T>, word: &str) -> Result<Vec<usize>> {
    let names: Vec<String> = if compact(f) {
        word.chars().map(String::from).collect()
    } else {
        word.split(',').map(|s| s.trim().to_string()).collect()
    };
    names
        .iter()
        .map(|n| f.symbol_index(n).with_context(|| format!("`{n}` is not in the alphabet")))
        .collect()
}

fn format_word<T: Scalar>(f: &TransitionFunction<T>, word: &[usize]) -> String {
    let names: Vec<&str> = word.iter().map(|&s| f.alphabet()[s].as_str()).collect();
    if compact(f) {
        names.concat()
    } else {
        names.join(",")
    }
}

pub struct CylinderRun {
    pub measure: String,
    pub start: i64,
    pub len: usize,
    pub steps: u64,
    pub marginal: Option<(i64, usize)>,
    pub json: bool,
}

pub fn run<T: Scalar + Display>(f: &TransitionFunction<T>, run: &CylinderRun) -> Result<String> {
    let mut mu = initial_measure(&run.measure, f, run.start, run.len)?;
    for _ in 0..run.steps {
        mu = evolve_measure(&mu, f)?;
    }
    if let Some((s, l)) = run.marginal {
        mu = mu.marginal(s, l)?;
    }
    let (lo, hi) = mu.support();
    let entries: Vec<(String, &T)> = mu
        .weights()
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(i, w)| (format_word(f, &mu.word(i)), w))
        .collect();
    if run.json {
        let weights: Vec<_> = entries.iter().map(|(w, p)| json!({ "word": w, "p": p.to_string() })).collect();
        let doc = json!({
            "alphabet": f.alphabet(),
            "start": lo,
            "end": hi,
            "steps": run.steps,
            "weights": weights,
        });
        return Ok(serde_json::to_string_pretty(&doc)? + "\n");
    }
    let mut out = format!("# sites {lo}..={hi}\n");
    for (w, p) in entries {
        out.push_str(&format!("{w} {p}\n"));
    }
    Ok(out)
}
