//! The bundled fixture suite. Every output line starts with a `[tag]` naming
//! the result it reproduces.

use cy3kit::arrangement::{incidence, reduction_compare, verify_points, Arrangement};
use cy3kit::fixtures::{self, read_forms, read_points, read_poly, SCENARIOS};
use cy3kit::formal_group::{height, LogSeries};
use cy3kit::hodge_ledger::{derive, CohomologyProfile, HodgeDiamond};
use cy3kit::invariant_theory::{generated_check, invariant_monomials, molien_by_counting, molien_by_cyclotomic, DiagonalAction};
use cy3kit::multipoly::parse_poly;
use cy3kit::ring_tower::{reduce_mod_pi, root_lift, Integers, PrimeField, QuadInt, QuadOrder, Rationals, Ring};
use cy3kit::stienstra::{beta_double, betas, DoubleCoverInput, HypersurfaceInput};
use cy3kit::tate_oort::verify_axioms;
use serde_json::json;

use crate::commands::ledger_lines;
use crate::report::Report;
use crate::ring::show_quad;

pub const TAG_DOUBLE: &str = "double-cover Frobenius coefficient";
pub const TAG_MOLIEN: &str = "Molien series";
pub const TAG_INVARIANTS: &str = "invariant monomials";
pub const TAG_GENERATION: &str = "generation of invariants";
pub const TAG_EULER: &str = "Euler characteristic";
pub const TAG_ARRANGEMENT: &str = "arrangement incidence";
pub const TAG_TATE_OORT: &str = "Tate-Oort group law";
pub const TAG_HEIGHT: &str = "formal group height";
pub const TAG_LIFT: &str = "root lifting";

struct Out(Vec<String>);

impl Out {
    fn push(&mut self, tag: &str, s: impl AsRef<str>) {
        self.0.push(format!("[{tag}] {}", s.as_ref()));
    }

    fn fail(&mut self, tag: &str, what: &str, e: impl std::fmt::Display) {
        self.push(tag, format!("{what}: error: {e}"));
    }
}

fn series(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn double_cover(out: &mut Out) {
    let o = QuadOrder;
    let res = read_poly(&o, fixtures::get("cvs_octic").expect("bundled"))
        .map_err(|e| e.to_string())
        .and_then(|w| DoubleCoverInput::new(w).map_err(|e| e.to_string()))
        .and_then(|d| beta_double(&d, 5).map_err(|e| e.to_string()));
    match res {
        Ok(b) => out.push(TAG_DOUBLE, format!("cvs_octic over O at p = 5: {} (reduces to {} mod pi)", show_quad(&b), reduce_mod_pi(&b))),
        Err(e) => out.fail(TAG_DOUBLE, "cvs_octic", e),
    }
}

fn invariants(out: &mut Out) {
    let a = DiagonalAction::new(5, &[1, 2, 3, 4]).expect("valid action");
    let counted = molien_by_counting(&a, 7);
    let by_roots: Vec<String> = molien_by_cyclotomic(&a, 7).iter().map(|x| x.to_string()).collect();
    out.push(TAG_MOLIEN, format!("d = 5, weights 1,2,3,4, degrees 0..7 by counting: {}", series(&counted)));
    out.push(TAG_MOLIEN, format!("d = 5, weights 1,2,3,4, degrees 0..7 by roots of unity: {}", by_roots.join(" ")));
    let b = DiagonalAction::new(5, &[0, 1, 2, 3, 4]).expect("valid action");
    out.push(
        TAG_MOLIEN,
        format!(
            "d = 5, weights 0,1,2,3,4, degree 5: {} by counting, {} by roots of unity",
            molien_by_counting(&b, 5)[5],
            molien_by_cyclotomic(&b, 5)[5]
        ),
    );
    let names: Vec<String> = (1..=4).map(|i| format!("X{i}")).collect();
    for degree in 2..=4 {
        let monos: Vec<String> = invariant_monomials(&a, degree).iter().map(|m| m.format_with(&names)).collect();
        out.push(TAG_INVARIANTS, format!("weights 1,2,3,4, degree {degree}: {}", monos.join(", ")));
    }
    for degree in 6..=12 {
        match generated_check(&a, degree, 5) {
            Ok(r) if r.failures.is_empty() => out.push(
                TAG_GENERATION,
                format!("degree {degree}: all {} invariant monomials factor through degree <= 5", r.factorizations.len()),
            ),
            Ok(r) => {
                let bad: Vec<String> = r.failures.iter().map(|m| m.format_with(&names)).collect();
                out.push(TAG_GENERATION, format!("degree {degree}: not generated: {}", bad.join(", ")));
            }
            Err(e) => out.fail(TAG_GENERATION, &format!("degree {degree}"), e),
        }
    }
}

fn euler(out: &mut Out) {
    let quintic = HodgeDiamond::calabi_yau(0, 0, 1, 101).expect("valid diamond");
    out.push(TAG_EULER, format!("quintic threefold: {}", quintic.euler_char()));
    let godeaux = CohomologyProfile::from_json(fixtures::get("godeaux").expect("bundled")).and_then(|p| p.generic_diamond());
    match godeaux {
        Ok(Some(d)) => out.push(TAG_EULER, format!("godeaux generic fiber: {}", d.euler_char())),
        Ok(None) => out.push(TAG_EULER, "godeaux generic fiber: no generic diamond"),
        Err(e) => out.fail(TAG_EULER, "godeaux", e),
    }
}

fn arrangement(out: &mut Out) {
    let o = QuadOrder;
    let a = match read_forms(&o, fixtures::get("cvs_arrangement").expect("bundled")).map_err(|e| e.to_string()).and_then(|f| {
        Arrangement::from_forms(&o, &f).map_err(|e| e.to_string())
    }) {
        Ok(a) => a,
        Err(e) => return out.fail(TAG_ARRANGEMENT, "cvs_arrangement", e),
    };
    let r = incidence(&a);
    out.push(
        TAG_ARRANGEMENT,
        format!(
            "cvs_arrangement over O: {} double lines, {} triple lines, {} fourfold points, {} fivefold points",
            r.double_lines(),
            r.triple_lines(),
            r.points_of_multiplicity(4),
            r.points_of_multiplicity(5)
        ),
    );
    match read_points(&o, fixtures::get("cvs_points").expect("bundled")).map_err(|e| e.to_string()).and_then(|p| {
        verify_points(&a, &p).map_err(|e| e.to_string())
    }) {
        Ok(m) => out.push(TAG_ARRANGEMENT, format!("cvs_points: planes through each point: {}", m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))),
        Err(e) => out.fail(TAG_ARRANGEMENT, "cvs_points", e),
    }
    match reduction_compare(&a, 5) {
        Ok(c) => out.push(TAG_ARRANGEMENT, format!("cvs_arrangement mod pi has the same incidence: {}", if c.same { "yes" } else { "no" })),
        Err(e) => out.fail(TAG_ARRANGEMENT, "reduction mod pi", e),
    }
}

fn tate_oort(out: &mut Out) {
    for p in [2, 3, 5, 7] {
        match verify_axioms(p) {
            Ok(r) => {
                let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
                if failed.is_empty() {
                    out.push(TAG_TATE_OORT, format!("p = {p}: all {} identities reduce to 0", r.checks.len()));
                } else {
                    out.push(TAG_TATE_OORT, format!("p = {p}: failing identities: {}", failed.join(", ")));
                }
            }
            Err(e) => out.fail(TAG_TATE_OORT, &format!("p = {p}"), e),
        }
    }
}

fn heights(out: &mut Out) {
    let q = Rationals;
    let cases = [
        ("multiplicative logarithm at p = 5", LogSeries::all_ones(&q, 26), 5),
        ("additive logarithm at p = 5", LogSeries::additive(&q, 26), 5),
    ];
    for (what, l, p) in cases {
        match height(&l, p, 2) {
            Ok(r) => out.push(TAG_HEIGHT, format!("{what}: {}", r.height)),
            Err(e) => out.fail(TAG_HEIGHT, what, e),
        }
    }
    let what = "Fermat cubic at p = 2";
    let res = parse_poly(&Integers, "x0^3 + x1^3 + x2^3", 3)
        .map_err(|e| e.to_string())
        .and_then(|f| HypersurfaceInput::new(f).map_err(|e| e.to_string()))
        .and_then(|h| LogSeries::new(&Integers, betas(&h, 5)).map_err(|e| e.to_string()))
        .and_then(|l| height(&LogSeries::from_integers(&l), 2, 2).map_err(|e| e.to_string()));
    match res {
        Ok(r) => out.push(TAG_HEIGHT, format!("{what}: {}", r.height)),
        Err(e) => out.fail(TAG_HEIGHT, what, e),
    }
}

fn lifts(out: &mut Out) {
    let f5 = PrimeField::new(5);
    let golden = [f5.elem(-1), 1, 1];
    match root_lift(&f5, &golden, &[2, 1]) {
        Ok(l) => out.push(TAG_LIFT, format!("x^2 + x - 1 over F_5, root 2 + eps: {} lift to eps^3", if l.is_empty() { "no" } else { "some" })),
        Err(e) => out.fail(TAG_LIFT, "F_5", e),
    }
    let o = QuadOrder;
    let f = [QuadInt::new(-1, 0), QuadInt::new(1, 0), QuadInt::new(1, 0)];
    match root_lift(&o, &f, &[QuadInt::golden()]) {
        Ok(l) => out.push(
            TAG_LIFT,
            format!(
                "x^2 + x - 1 over O, root A: {} first-order lift reducing to 1 mod pi",
                if l.admits_residue(&o, 5, 1) { "a" } else { "no" }
            ),
        ),
        Err(e) => out.fail(TAG_LIFT, &o.name(), e),
    }
}

fn ledgers(out: &mut Out) {
    for name in SCENARIOS {
        let prof = match CohomologyProfile::from_json(fixtures::get(name).expect("bundled")) {
            Ok(p) => p,
            Err(e) => {
                out.fail("input", name, e);
                continue;
            }
        };
        match derive(&prof) {
            Ok(r) => out.0.extend(ledger_lines(&r)),
            Err(e) => out.fail("input", name, e),
        }
    }
}

/// Lines of the suite, in a fixed order.
pub fn lines() -> Vec<String> {
    let mut out = Out(Vec::new());
    double_cover(&mut out);
    invariants(&mut out);
    euler(&mut out);
    arrangement(&mut out);
    tate_oort(&mut out);
    heights(&mut out);
    lifts(&mut out);
    ledgers(&mut out);
    out.0
}

pub fn run() -> Report {
    let lines = lines();
    let mut rep = Report::new("fixtures");
    for l in &lines {
        rep.line(l.clone());
    }
    rep.with(json!({ "lines": lines }))
}
