use cy3kit::arrangement::{admissible_double_octic, incidence, reduction_compare, verify_points, Arrangement};
use cy3kit::fixtures::{read_forms, read_points};
use cy3kit::formal_group::{frob_on_log, height, HeightReport, LogSeries};
use cy3kit::hodge_ledger::{caruso_dim, cite, derive, LedgerReport};
use cy3kit::invariant_theory::{
    fixed_points, freeness_check, generated_check, invariant_monomials, molien, DiagonalAction,
};
use cy3kit::multipoly::SparsePoly;
use cy3kit::ring_tower::{root_lift, Domain, Integers, LiftSet, Rationals, Ring};
use cy3kit::stienstra::{beta, beta_double, betas, ordinary_test, DoubleCoverInput, FrobeniusInput, HypersurfaceInput};
use cy3kit::tate_oort::verify_axioms;
use serde_json::{json, Value};

use crate::input;
use crate::report::{Failure, Report};
use crate::ring::{RingTag, Show};
use crate::{suite, ActionArgs, Command, LogKind, PolyArgs};
use crate::{with_domain, with_ring};

pub fn dispatch(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Beta { ring, input, m, t } => with_ring!(ring, |r| cmd_beta(&r, ring, input, *m, *t)),
        Command::BetaDouble { ring, p, input } => with_ring!(ring, |r| cmd_beta_double(&r, ring, *p, input)),
        Command::Ordinary { ring, p, double, input } => with_ring!(ring, |r| cmd_ordinary(&r, ring, *p, *double, input)),
        Command::Height { p, h_max, log, betas, t, input } => cmd_height(*p, *h_max, *log, betas.as_deref(), *t, input),
        Command::FrobLog { ring, p, betas, t, input } => {
            with_ring!(ring, |r| cmd_frob_log(&r, ring, *p, betas.as_deref(), *t, input))
        }
        Command::Molien { action, to } => cmd_molien(action, *to),
        Command::Invariants { action, degree, names } => cmd_invariants(action, *degree, names.as_deref()),
        Command::Generated { action, from, to, gen_max } => cmd_generated(action, *from, *to, *gen_max),
        Command::FixedPoints { action } => cmd_fixed_points(action),
        Command::Freeness { action, input } => cmd_freeness(action, input),
        Command::TateOort { p } => cmd_tate_oort(*p),
        Command::Arrangement { ring, file, points } => with_domain!(ring, |r| cmd_arrangement(&r, ring, file, points.as_deref())),
        Command::ReduceCompare { ring, file, p } => with_domain!(ring, |r| cmd_reduce_compare(&r, ring, file, *p)),
        Command::Hodge { scenario } => cmd_hodge(scenario),
        Command::RootLift { ring, f, root } => with_domain!(ring, |r| cmd_root_lift(&r, ring, f, root)),
        Command::Caruso { scenario, degree } => cmd_caruso(scenario, *degree),
        Command::Fixtures => Ok(suite::run()),
    }
}

fn poly_of<R: Ring>(ring: &R, a: &PolyArgs) -> Result<SparsePoly<R>, Failure> {
    input::poly(ring, a.poly.as_deref(), a.file.as_deref(), a.vars.as_deref())
}

fn cmd_beta<R: Show>(ring: &R, tag: &RingTag, a: &PolyArgs, m: Option<u32>, t: u32) -> Result<Report, Failure> {
    let h = HypersurfaceInput::new(poly_of(ring, a)?)?;
    let values: Vec<(u32, R::Elem)> = match m {
        Some(m) => vec![(m, beta(&h, m)?)],
        None => (1..).zip(betas(&h, t)).collect(),
    };
    let mut rep = Report::new("beta");
    for (m, v) in &values {
        rep.line(format!("beta_{m} = {}", ring.show(v)));
    }
    let list: Vec<Value> = values.iter().map(|(m, v)| json!({ "m": m, "value": ring.show(v) })).collect();
    Ok(rep.with(json!({ "ring": tag.to_string(), "betas": list })))
}

/// How a residue at `p` is described for this ring.
fn modulus_name(tag: &RingTag, p: u64) -> String {
    match tag {
        RingTag::O if p == 5 => "pi".into(),
        RingTag::O => format!("a prime above {p}"),
        _ => p.to_string(),
    }
}

fn cmd_beta_double<R: Show>(ring: &R, tag: &RingTag, p: u64, a: &PolyArgs) -> Result<Report, Failure> {
    let d = DoubleCoverInput::new(poly_of(ring, a)?)?;
    let b = beta_double(&d, p)?;
    let value = ring.show(&b);
    let residue = ring.residue(&b, p);
    let mut rep = Report::new("beta-double");
    match residue {
        Some(r) => rep.line(format!("{value} (reduces to {r} mod {})", modulus_name(tag, p))),
        None => rep.line(format!("{value} (no reduction map to F_{p})")),
    };
    Ok(rep.with(json!({ "ring": tag.to_string(), "p": p, "value": value, "residue": residue })))
}

fn cmd_ordinary<R: Show>(ring: &R, tag: &RingTag, p: u64, double: bool, a: &PolyArgs) -> Result<Report, Failure> {
    let f = poly_of(ring, a)?;
    let input = if double {
        FrobeniusInput::DoubleCover(DoubleCoverInput::new(f)?)
    } else {
        FrobeniusInput::Hypersurface(HypersurfaceInput::new(f)?)
    };
    let v = ordinary_test(&input, p)?;
    let mut rep = Report::new("ordinary");
    rep.line(format!(
        "{} at p = {p}: Frobenius coefficient {} reduces to {}",
        if v.ordinary { "ordinary" } else { "not ordinary" },
        v.exact,
        v.witness
    ));
    Ok(rep.with(json!({ "ring": tag.to_string(), "p": p, "ordinary": v.ordinary, "exact": v.exact, "witness": v.witness })))
}

fn default_truncation(p: u64, h_max: u32) -> Result<u32, Failure> {
    p.checked_pow(h_max)
        .and_then(|x| u32::try_from(x + 1).ok())
        .filter(|&x| x <= 100_000)
        .ok_or_else(|| Failure::refused(format!("p^h_max = {p}^{h_max} is too large to expand")))
}

fn log_series(
    kind: Option<LogKind>,
    list: Option<&str>,
    t: u32,
    a: &PolyArgs,
) -> Result<LogSeries<Rationals>, Failure> {
    let has_poly = a.poly.is_some() || a.file.is_some();
    match (kind, list, has_poly) {
        (Some(LogKind::Multiplicative), None, false) => Ok(LogSeries::all_ones(&Rationals, t as usize)),
        (Some(LogKind::Additive), None, false) => Ok(LogSeries::additive(&Rationals, t as usize)),
        (None, Some(l), false) => Ok(LogSeries::new(&Rationals, input::elems(&Rationals, l)?)?),
        (None, None, true) => {
            let h = HypersurfaceInput::new(poly_of(&Integers, a)?)?;
            Ok(LogSeries::from_integers(&LogSeries::new(&Integers, betas(&h, t))?))
        }
        _ => Err(Failure::malformed("give exactly one of --log, --betas, --poly or --file")),
    }
}

fn height_json(r: &HeightReport) -> Value {
    let last = r.p_series.iter().rposition(|&c| c != 0);
    json!({
        "p": r.p,
        "h_max": r.h_max,
        "height": r.height.to_string(),
        "first_nonzero_degree": r.p_series.iter().position(|&c| c != 0),
        "p_series": r.p_series[..last.map_or(0, |i| i + 1)],
        "cross_checked": r.cross_checked,
    })
}

fn cmd_height(p: u64, h_max: u32, kind: Option<LogKind>, list: Option<&str>, t: Option<u32>, a: &PolyArgs) -> Result<Report, Failure> {
    let t = match t {
        Some(t) => t,
        None => default_truncation(p, h_max)?,
    };
    let l = log_series(kind, list, t, a)?;
    let r = height(&l, p, h_max)?;
    let mut rep = Report::new("height");
    rep.line(format!("height at p = {p}: {}", r.height));
    match r.p_series.iter().position(|&c| c != 0) {
        Some(k) => rep.line(format!("[p](t) mod p starts in degree {k} with coefficient {}", r.p_series[k])),
        None => rep.line(format!("[p](t) vanishes mod p through degree {}", r.p_series.len().saturating_sub(1))),
    };
    rep.line(format!("recomputed from the group law: {}", if r.cross_checked { "yes" } else { "no (series too long)" }));
    Ok(rep.with(height_json(&r)))
}

fn cmd_frob_log<R: Show>(
    ring: &R,
    tag: &RingTag,
    p: u64,
    list: Option<&str>,
    t: Option<u32>,
    a: &PolyArgs,
) -> Result<Report, Failure> {
    let has_poly = a.poly.is_some() || a.file.is_some();
    let l = match (list, has_poly) {
        (Some(l), false) => LogSeries::new(ring, input::elems(ring, l)?)?,
        (None, true) => {
            let h = HypersurfaceInput::new(poly_of(ring, a)?)?;
            let t = t.unwrap_or((p * 3) as u32);
            LogSeries::new(ring, betas(&h, t))?
        }
        _ => return Err(Failure::malformed("give exactly one of --betas, --poly or --file")),
    };
    let image = frob_on_log(&l, p)?;
    let mut rep = Report::new("frob-log");
    for (n, v) in image.iter().enumerate() {
        rep.line(format!("beta'_{} = beta_{} = {}", n + 1, (n + 1) as u64 * p, ring.show(v)));
    }
    let shown: Vec<String> = image.iter().map(|v| ring.show(v)).collect();
    Ok(rep.with(json!({ "ring": tag.to_string(), "p": p, "frobenius_log": shown })))
}

fn action(a: &ActionArgs) -> Result<DiagonalAction, Failure> {
    Ok(DiagonalAction::new(a.d, &input::integers(&a.weights)?)?)
}

fn series_line(s: &[u64]) -> String {
    s.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_molien(a: &ActionArgs, to: usize) -> Result<Report, Failure> {
    let g = action(a)?;
    let s = molien(&g, to)?;
    let mut rep = Report::new("molien");
    rep.line(series_line(&s));
    Ok(rep.with(json!({ "d": g.order(), "weights": g.weights(), "series": s })))
}

fn names_for(g: &DiagonalAction, names: Option<&str>) -> Result<Vec<String>, Failure> {
    let names: Vec<String> = match names {
        Some(n) => n.split(',').map(|s| s.trim().to_string()).collect(),
        None => (1..=g.nvars()).map(|i| format!("X{i}")).collect(),
    };
    if names.len() != g.nvars() {
        return Err(Failure::malformed(format!("{} names for {} variables", names.len(), g.nvars())));
    }
    Ok(names)
}

fn cmd_invariants(a: &ActionArgs, degree: u32, names: Option<&str>) -> Result<Report, Failure> {
    let g = action(a)?;
    let names = names_for(&g, names)?;
    let monos: Vec<String> = invariant_monomials(&g, degree).iter().map(|m| m.format_with(&names)).collect();
    let mut rep = Report::new("invariants");
    rep.line(format!("{} invariant monomials of degree {degree}", monos.len()));
    for m in &monos {
        rep.line(m.clone());
    }
    Ok(rep.with(json!({ "degree": degree, "monomials": monos })))
}

fn cmd_generated(a: &ActionArgs, from: u32, to: u32, gen_max: u32) -> Result<Report, Failure> {
    let g = action(a)?;
    let names = names_for(&g, None)?;
    let mut rep = Report::new("generated");
    let mut rows = Vec::new();
    for degree in from..=to {
        let r = generated_check(&g, degree, gen_max)?;
        let failures: Vec<String> = r.failures.iter().map(|m| m.format_with(&names)).collect();
        if failures.is_empty() {
            rep.line(format!("degree {degree}: all {} invariant monomials are products of invariants of degree <= {gen_max}", r.factorizations.len()));
        } else {
            rep.line(format!("degree {degree}: not generated: {}", failures.join(", ")));
        }
        rows.push(json!({ "degree": degree, "generated": r.factorizations.len(), "failures": failures }));
    }
    Ok(rep.with(json!({ "gen_max": gen_max, "degrees": rows })))
}

fn cmd_fixed_points(a: &ActionArgs) -> Result<Report, Failure> {
    let g = action(a)?;
    let comps = fixed_points(&g);
    let mut rep = Report::new("fixed-points");
    for c in &comps {
        let vars: Vec<String> = c.variables.iter().map(|i| format!("x{i}")).collect();
        rep.line(format!("weight {}: span of {} (dimension {})", c.weight, vars.join(", "), c.dim()));
    }
    Ok(rep.with(json!({ "components": comps })))
}

fn cmd_freeness(a: &ActionArgs, p: &PolyArgs) -> Result<Report, Failure> {
    let g = action(a)?;
    let f = poly_of(&Integers, p)?;
    let r = freeness_check(&f, &g)?;
    let mut rep = Report::new("freeness");
    if r.free {
        rep.line("free: no fixed point lies on the hypersurface");
    } else {
        let pts: Vec<String> = r.violations.iter().map(|i| format!("e{i}")).collect();
        rep.line(format!("not free: fixed points {} lie on the hypersurface", pts.join(", ")));
    }
    Ok(rep.with(json!(r)))
}

fn cmd_tate_oort(p: u64) -> Result<Report, Failure> {
    let r = verify_axioms(p)?;
    if !r.all_passed() {
        let bad: Vec<String> = r.checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.residual)).collect();
        return Err(Failure::check(format!("group law identities fail at p = {p}: {}", bad.join("; "))));
    }
    let mut rep = Report::new("tate-oort");
    for c in &r.checks {
        rep.line(format!("{}: reduces to {}", c.name, c.residual));
    }
    Ok(rep.with(json!(r)))
}

fn load_arrangement<R: Domain>(ring: &R, file: &str) -> Result<Arrangement<R>, Failure> {
    Ok(Arrangement::from_forms(ring, &read_forms(ring, &input::load(file)?)?)?)
}

fn cmd_arrangement<R: Domain + Show>(ring: &R, tag: &RingTag, file: &str, points: Option<&str>) -> Result<Report, Failure> {
    let a = load_arrangement(ring, file)?;
    let r = incidence(&a);
    let mut rep = Report::new("arrangement");
    rep.line(format!("{} planes over {tag}", r.plane_count));
    let mut line_counts = Vec::new();
    for k in 2..=r.lines.iter().map(|l| l.multiplicity()).max().unwrap_or(2).max(3) {
        let n = r.lines_of_multiplicity(k);
        rep.line(format!("lines on exactly {k} planes: {n}"));
        line_counts.push(json!({ "multiplicity": k, "count": n }));
    }
    let mut point_counts = Vec::new();
    for k in 3..=r.points.iter().map(|p| p.multiplicity()).max().unwrap_or(3).max(5) {
        let n = r.points_of_multiplicity(k);
        rep.line(format!("points on exactly {k} planes (not on a common line): {n}"));
        point_counts.push(json!({ "multiplicity": k, "count": n }));
    }
    let admissible = admissible_double_octic(&r);
    rep.line(format!("admissible double octic arrangement: {}", if admissible { "yes" } else { "no" }));
    let mut checked = Value::Null;
    if let Some(pf) = points {
        let pts = read_points(ring, &input::load(pf)?)?;
        let mult = verify_points(&a, &pts)?;
        for (pt, m) in pts.iter().zip(&mult) {
            let coords: Vec<String> = pt.iter().map(|c| ring.show(c)).collect();
            rep.line(format!("({}) lies on {m} planes", coords.join(" : ")));
        }
        checked = json!(mult);
    }
    let (lines, pts) = r.labels();
    Ok(rep.with(json!({
        "ring": tag.to_string(),
        "planes": r.plane_count,
        "lines": line_counts,
        "points": point_counts,
        "admissible": admissible,
        "line_labels": lines,
        "point_labels": pts,
        "point_multiplicities": checked,
    })))
}

fn cmd_reduce_compare<R: Domain>(ring: &R, tag: &RingTag, file: &str, p: u64) -> Result<Report, Failure> {
    let a = load_arrangement(ring, file)?;
    let c = reduction_compare(&a, p)?;
    let mut rep = Report::new("reduce-compare");
    rep.line(format!("same incidence after reduction mod {}: {}", modulus_name(tag, p), if c.same { "yes" } else { "no" }));
    for d in &c.diff {
        rep.line(format!("  {d}"));
    }
    Ok(rep.with(json!({ "ring": tag.to_string(), "p": p, "same": c.same, "diff": c.diff })))
}

fn opt(x: Option<u32>) -> String {
    x.map_or("?".into(), |v| v.to_string())
}

fn row<const N: usize>(v: &[Option<u32>; N]) -> String {
    v.iter().map(|&x| opt(x)).collect::<Vec<_>>().join(" ")
}

/// Text lines for a derivation, every one tagged with the result it rests on.
pub fn ledger_lines(r: &LedgerReport) -> Vec<String> {
    let mut out = Vec::new();
    let mut push = |tag: &str, s: String| out.push(format!("[{tag}] {s}"));
    push(cite::CONJUGATE_SS, format!("{} (p = {}): H^*_dR = {}", r.name, r.prime, row(&r.de_rham)));
    push(cite::INPUT, format!("{}: Betti = {}", r.name, row(&r.betti)));
    for k in 0..=6usize {
        let cells: Vec<String> = (0..4).filter(|&q| q <= k && k - q < 4).map(|q| opt(r.special[k - q][q])).collect();
        push(cite::STRICT_CY, format!("{}: special diamond row {k}: {}", r.name, cells.join(" ")));
    }
    push(
        cite::CONJUGATE_SS,
        format!("{}: d2 ranks A = {}, B = {}, C = {}", r.name, opt(r.ranks[0]), opt(r.ranks[1]), opt(r.ranks[2])),
    );
    push(cite::UCT_CRYS, format!("{}: crystalline torsion summands = {}", r.name, row(&r.crystalline_torsion)));
    if let Some(b) = r.torsion_parameter_positive {
        push(cite::TORSION_DEGENERATION, format!("{}: torsion parameter n {}", r.name, if b { "> 0" } else { "= 0" }));
    }
    match &r.hodge_torsion {
        Some(t) if t.entries.is_empty() => push(cite::UCT_HODGE, format!("{}: integral Hodge cohomology is torsion-free", r.name)),
        Some(t) => {
            let places: Vec<String> = t.entries.iter().map(|e| format!("H^{}(Omega^{}) x{}", e.degree, e.form, e.indicator)).collect();
            push(cite::UCT_HODGE, format!("{}: Hodge torsion in {}", r.name, places.join(", ")));
        }
        None => push(cite::UCT_HODGE, format!("{}: Hodge torsion undetermined", r.name)),
    }
    if let Some(s) = r.supersingular {
        push(cite::HEIGHT_LIFT, format!("{}: supersingular: {}", r.name, if s { "yes" } else { "no" }));
    }
    if let Some(a) = r.alternating_sum {
        push(cite::POINCARE, format!("{}: alternating sum of de Rham dimensions = {a}", r.name));
    }
    out
}

fn ledger_json(r: &LedgerReport) -> Value {
    json!(r)
}

fn cmd_hodge(scenario: &str) -> Result<Report, Failure> {
    let prof = input::profile(scenario)?;
    let r = derive(&prof)?;
    let mut rep = Report::new("hodge");
    rep.line(format!("de Rham: {}", row(&r.de_rham)));
    for l in ledger_lines(&r) {
        rep.line(l);
    }
    rep.line(format!("branches: {} of {} consistent", r.branches_feasible, r.branches_total));
    rep.line("trail:");
    for e in &r.trail {
        rep.line(format!("  [{}] {}", e.rule, e.statement));
    }
    Ok(rep.with(ledger_json(&r)))
}

fn cmd_root_lift<R: Domain + Show>(ring: &R, tag: &RingTag, f: &str, root: &str) -> Result<Report, Failure> {
    let f = input::elems(ring, f)?;
    let r = input::elems(ring, root)?;
    let lifts = root_lift(ring, &f, &r)?;
    let n = r.len();
    let mut rep = Report::new("root-lift");
    let (kind, value) = match &lifts {
        LiftSet::Empty => ("empty", Value::Null),
        LiftSet::Unique(c) => ("unique", json!(ring.show(c))),
        LiftSet::Every => ("every", Value::Null),
    };
    match &lifts {
        LiftSet::Empty => rep.line(format!("obstructed: no lift to {tag}[eps]/eps^{}", n + 1)),
        LiftSet::Unique(c) => rep.line(format!("unique lift: c = {} in r + c eps^{n}", ring.show(c))),
        LiftSet::Every => rep.line(format!("every c lifts: r + c eps^{n} is a root for all c")),
    };
    Ok(rep.with(json!({ "ring": tag.to_string(), "order": n + 1, "lifts": kind, "value": value })))
}

fn cmd_caruso(scenario: &str, degree: usize) -> Result<Report, Failure> {
    let prof = input::profile(scenario)?;
    let d = caruso_dim(&prof, degree)?;
    let mut rep = Report::new("caruso");
    rep.line(format!("[{}] {}: dim H^{degree}_dR = {d}", cite::CARUSO, prof.name));
    Ok(rep.with(json!({ "scenario": prof.name, "degree": degree, "dim": d })))
}
