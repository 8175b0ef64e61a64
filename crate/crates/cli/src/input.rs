//! Reading polynomials, lists and profiles from flags, files and bundled fixtures.

use std::path::Path;

use cy3kit::fixtures::{self, XYZT};
use cy3kit::hodge_ledger::CohomologyProfile;
use cy3kit::multipoly::{parse_poly_named, parse_scalar, SparsePoly};
use cy3kit::ring_tower::Ring;

use crate::report::Failure;

/// Contents of `name`: a readable path, else a bundled fixture of that stem.
pub fn load(name: &str) -> Result<String, Failure> {
    let path = Path::new(name);
    if path.is_file() {
        return std::fs::read_to_string(path).map_err(|e| Failure::malformed(format!("{name}: {e}")));
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(name);
    fixtures::get(stem).map(str::to_string).ok_or_else(|| {
        let known: Vec<&str> = fixtures::ALL.iter().map(|(n, _)| *n).collect();
        Failure::malformed(format!("no file {name:?} and no bundled fixture of that name (bundled: {})", known.join(", ")))
    })
}

pub fn profile(name: &str) -> Result<CohomologyProfile, Failure> {
    Ok(CohomologyProfile::from_json(&load(name)?)?)
}

/// `--vars 5` gives `x0..x4`; `--vars a,b,c` gives those names. Without the
/// flag, `x0..xk` when such names occur in `src`, else `x, y, z, t`.
pub fn var_names(vars: Option<&str>, src: &str) -> Result<Vec<String>, Failure> {
    if let Some(v) = vars {
        let v = v.trim();
        if let Ok(n) = v.parse::<usize>() {
            return Ok((0..n).map(|i| format!("x{i}")).collect());
        }
        let names: Vec<String> = v.split(',').map(|s| s.trim().to_string()).collect();
        if names.iter().any(|n| n.is_empty()) {
            return Err(Failure::malformed(format!("bad variable list {v:?}")));
        }
        return Ok(names);
    }
    let bytes = src.as_bytes();
    let mut top: Option<usize> = None;
    for (i, &c) in bytes.iter().enumerate() {
        let starts_word = i == 0 || !(bytes[i - 1].is_ascii_alphanumeric() || bytes[i - 1] == b'_');
        if c == b'x' && starts_word {
            let digits: String = src[i + 1..].chars().take_while(|c| c.is_ascii_digit()).collect();
            if let Ok(k) = digits.parse::<usize>() {
                top = Some(top.map_or(k, |t| t.max(k)));
            }
        }
    }
    Ok(match top {
        Some(k) => (0..=k).map(|i| format!("x{i}")).collect(),
        None => XYZT.iter().map(|s| s.to_string()).collect(),
    })
}

fn strip_comments(text: &str) -> String {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect::<Vec<_>>().join(" ")
}

/// A polynomial from `--poly` or `--file`.
pub fn poly<R: Ring>(ring: &R, literal: Option<&str>, file: Option<&str>, vars: Option<&str>) -> Result<SparsePoly<R>, Failure> {
    let src = match (literal, file) {
        (Some(s), None) => s.to_string(),
        (None, Some(f)) => strip_comments(&load(f)?),
        (Some(_), Some(_)) => return Err(Failure::malformed("give either --poly or --file, not both")),
        (None, None) => return Err(Failure::malformed("a polynomial is required (--poly or --file)")),
    };
    let names = var_names(vars, &src)?;
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(parse_poly_named(ring, &src, &refs)?)
}

/// Comma-separated ring elements.
pub fn elems<R: Ring>(ring: &R, list: &str) -> Result<Vec<R::Elem>, Failure> {
    list.split(',').map(|s| parse_scalar(ring, s.trim()).map_err(Failure::from)).collect()
}

pub fn integers(list: &str) -> Result<Vec<i64>, Failure> {
    list.split(',')
        .map(|s| s.trim().parse::<i64>().map_err(|_| Failure::malformed(format!("{s:?} is not an integer"))))
        .collect()
}
