//! Bundled inputs, and readers for the line-oriented formats they use.
//!
//! Polynomial and plane files use variables `x, y, z, t`. Blank lines and
//! lines starting with `#` are skipped. Point files hold one comma-separated
//! point per line.

use crate::multipoly::{parse_poly_named, parse_scalar, ParseError, SparsePoly};
use crate::ring_tower::Ring;

pub const XYZT: [&str; 4] = ["x", "y", "z", "t"];

/// `(name, contents)` for every bundled file, keyed by file stem.
pub const ALL: [(&str, &str); 7] = [
    ("cvs_octic", include_str!("../fixtures/cvs_octic.poly")),
    ("cvs_arrangement", include_str!("../fixtures/cvs_arrangement.txt")),
    ("cvs_points", include_str!("../fixtures/cvs_points.txt")),
    ("godeaux", include_str!("../fixtures/godeaux.json")),
    ("cvs5", include_str!("../fixtures/cvs5.json")),
    ("cvs3", include_str!("../fixtures/cvs3.json")),
    ("hirokado", include_str!("../fixtures/hirokado.json")),
];

pub const SCENARIOS: [&str; 4] = ["godeaux", "cvs5", "cvs3", "hirokado"];

pub fn get(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, c)| *c)
}

/// A parse failure located by line number (1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub error: ParseError,
}

impl std::fmt::Display for LineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.error)
    }
}

impl std::error::Error for LineError {}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// One polynomial in `x, y, z, t`; the non-comment lines are joined.
pub fn read_poly<R: Ring>(ring: &R, text: &str) -> Result<SparsePoly<R>, LineError> {
    let joined: Vec<&str> = content_lines(text).map(|(_, l)| l).collect();
    let line = content_lines(text).next().map_or(1, |(n, _)| n);
    parse_poly_named(ring, &joined.join(" "), &XYZT).map_err(|error| LineError { line, error })
}

/// One linear form per line.
pub fn read_forms<R: Ring>(ring: &R, text: &str) -> Result<Vec<SparsePoly<R>>, LineError> {
    content_lines(text).map(|(line, l)| parse_poly_named(ring, l, &XYZT).map_err(|error| LineError { line, error })).collect()
}

/// One point per line, coordinates separated by commas.
pub fn read_points<R: Ring>(ring: &R, text: &str) -> Result<Vec<Vec<R::Elem>>, LineError> {
    content_lines(text)
        .map(|(line, l)| l.split(',').map(|c| parse_scalar(ring, c.trim()).map_err(|error| LineError { line, error })).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{incidence, verify_points, Arrangement};
    use crate::hodge_ledger::CohomologyProfile;
    use crate::ring_tower::QuadOrder;

    #[test]
    fn bundled_files_parse() {
        let o = QuadOrder;
        let octic = read_poly(&o, get("cvs_octic").unwrap()).unwrap();
        assert!(octic.is_homogeneous_of_degree(8));
        let forms = read_forms(&o, get("cvs_arrangement").unwrap()).unwrap();
        assert_eq!(forms.len(), 8);
        let product = forms.iter().fold(SparsePoly::one(&o, 4), |acc, f| acc.mul(f));
        assert_eq!(product, octic);
        for name in SCENARIOS {
            let p = CohomologyProfile::from_json(get(name).unwrap()).unwrap();
            assert_eq!(p.name, name);
        }
        assert!(get("nothing").is_none());
    }

    #[test]
    fn points_are_the_fourfold_points() {
        let o = QuadOrder;
        let a = Arrangement::from_forms(&o, &read_forms(&o, get("cvs_arrangement").unwrap()).unwrap()).unwrap();
        let pts = read_points(&o, get("cvs_points").unwrap()).unwrap();
        assert_eq!(pts.len(), 9);
        assert!(verify_points(&a, &pts).unwrap().iter().all(|&m| m == 4));
        assert_eq!(incidence(&a).points_of_multiplicity(4), 9);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = read_forms(&QuadOrder, "# c\nx+y\n\nx+*y\n").unwrap_err();
        assert_eq!(e.line, 4);
    }
}
