//! Integer propagation over the unknowns of a profile.
//!
//! Unknowns are the special-fiber Hodge numbers (one per Serre orbit), the
//! ranks of the three dual pairs of `d2` differentials, de Rham dimensions,
//! crystalline Betti numbers and torsion counts. Every relation is a linear
//! equation over nonnegative integers; inequalities carry a slack variable.
//! Ranks are enumerated, everything else is propagated.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::diamond::{uct_hodge, HodgeDiamond, TorsionReport};
use super::profile::{hodge_key, CohomologyProfile};
use super::spectral::EDGES;
use super::{cite, supersingularity_rule, LedgerError};

/// Upper bound tried for a rank whose source and target are both unknown.
pub const RANK_CAP: i64 = 64;

const PAIR_NAMES: [&str; 3] = ["A", "B", "C"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Var {
    Hodge(usize, usize),
    Rank(usize),
    DeRham(usize),
    Tau(usize),
    Betti(usize),
    Param,
    Slack(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Var::Hodge(p, q) => write!(f, "h{p}{q}"),
            Var::Rank(k) => write!(f, "rank({})", PAIR_NAMES[k]),
            Var::DeRham(n) => write!(f, "dR{n}"),
            Var::Tau(n) => write!(f, "tors{n}"),
            Var::Betti(n) => write!(f, "b{n}"),
            Var::Param => write!(f, "[n>0]"),
            Var::Slack(k) => write!(f, "s{k}"),
        }
    }
}

/// Serre orbit representative of `h^{pq}`: the entry above the middle row,
/// or the one with `p >= q` on it.
fn hodge(p: usize, q: usize) -> Var {
    let (dp, dq) = (3 - p, 3 - q);
    if p + q < 3 || (p + q == 3 && p >= q) {
        Var::Hodge(p, q)
    } else {
        Var::Hodge(dp, dq)
    }
}

/// Grid cell `(i, j) = H^i(Omega^j)`.
fn cell(i: usize, j: usize) -> Var {
    hodge(j, i)
}

#[derive(Clone, Debug)]
struct Equation {
    terms: Vec<(i64, Var)>,
    rhs: i64,
    rule: &'static str,
}

impl Equation {
    fn new(terms: &[(i64, Var)], rhs: i64, rule: &'static str) -> Self {
        let mut acc: BTreeMap<Var, i64> = BTreeMap::new();
        for &(c, v) in terms {
            *acc.entry(v).or_default() += c;
        }
        Self { terms: acc.into_iter().filter(|&(_, c)| c != 0).map(|(v, c)| (c, v)).collect(), rhs, rule }
    }

    fn fix(v: Var, value: i64, rule: &'static str) -> Self {
        Self::new(&[(1, v)], value, rule)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(c, v)) in self.terms.iter().enumerate() {
            let sign = match (k, c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let a = c.abs();
            if a == 1 {
                write!(f, "{sign}{v}")?;
            } else {
                write!(f, "{sign}{a}*{v}")?;
            }
        }
        write!(f, " = {}", self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrailEntry {
    pub rule: String,
    pub statement: String,
}

#[derive(Clone, Debug, Default)]
struct State {
    vals: BTreeMap<Var, i64>,
    trail: Vec<TrailEntry>,
}

impl State {
    fn note(&mut self, rule: &str, statement: String) {
        self.trail.push(TrailEntry { rule: rule.to_string(), statement });
    }

    fn assign(&mut self, v: Var, x: i64, rule: &str, why: String) {
        self.vals.insert(v, x);
        if !matches!(v, Var::Slack(_)) {
            self.note(rule, format!("{v} = {x}{why}"));
        }
    }
}

struct Contradiction {
    rule: &'static str,
    detail: String,
}

fn propagate(eqs: &[Equation], st: &mut State) -> Result<(), Contradiction> {
    loop {
        let mut progress = false;
        for eq in eqs {
            let mut rest = eq.rhs;
            let mut unknown = Vec::new();
            for &(c, v) in &eq.terms {
                match st.vals.get(&v) {
                    Some(&x) => rest -= c * x,
                    None => unknown.push((c, v)),
                }
            }
            let fail = |detail: String| Contradiction { rule: eq.rule, detail: format!("{eq}: {detail}") };
            match unknown.as_slice() {
                [] => {
                    if rest != 0 {
                        return Err(fail(format!("known values leave {rest}")));
                    }
                }
                &[(c, v)] => {
                    if rest % c != 0 || rest / c < 0 {
                        return Err(fail(format!("{v} would be {rest}/{c}")));
                    }
                    st.assign(v, rest / c, eq.rule, format!("  from {eq}"));
                    progress = true;
                }
                _ => {
                    let all_pos = unknown.iter().all(|&(c, _)| c > 0);
                    let all_neg = unknown.iter().all(|&(c, _)| c < 0);
                    if (all_pos && rest < 0) || (all_neg && rest > 0) {
                        return Err(fail("nonnegative unknowns cannot reach the remainder".into()));
                    }
                    if (all_pos || all_neg) && rest == 0 {
                        for &(_, v) in &unknown {
                            st.assign(v, 0, eq.rule, format!("  (zero sum in {eq})"));
                        }
                        progress = true;
                    }
                }
            }
        }
        if !progress {
            return Ok(());
        }
    }
}

/// Everything the propagation established, with `None` for values that
/// differ between surviving branches or were never pinned down.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerReport {
    pub name: String,
    pub prime: u64,
    /// `special[p][q] = dim H^q(Omega^p)` of the special fiber.
    pub special: [[Option<u32>; 4]; 4],
    pub de_rham: [Option<u32>; 7],
    pub betti: [Option<u32>; 7],
    /// Number of cyclic summands in the torsion of `H^n_crys`, `n = 0..=7`.
    pub crystalline_torsion: [Option<u32>; 8],
    /// Ranks of the dual pairs `A: H^1(Omega^1) -> H^3(O)`,
    /// `B: H^0(Omega^2) -> H^2(Omega^1)`, `C: H^0(Omega^1) -> H^2(O)`.
    pub ranks: [Option<u32>; 3],
    /// For a parametric torsion `W/p^n`: `Some(true)` when `n > 0` is forced.
    pub torsion_parameter_positive: Option<bool>,
    pub hodge_torsion: Option<TorsionReport>,
    pub supersingular: Option<bool>,
    /// `sum (-1)^n dim H^n_dR`, checked against the Betti numbers when both are known.
    pub alternating_sum: Option<i64>,
    pub branches_total: usize,
    pub branches_feasible: usize,
    pub trail: Vec<TrailEntry>,
}

impl LedgerReport {
    pub fn special_diamond(&self) -> Option<HodgeDiamond> {
        let mut h = [[0; 4]; 4];
        for p in 0..4 {
            for q in 0..4 {
                h[p][q] = self.special[p][q]?;
            }
        }
        HodgeDiamond::new(h).ok()
    }

    pub fn de_rham_all(&self) -> Option<[u32; 7]> {
        let mut out = [0; 7];
        for (o, v) in out.iter_mut().zip(self.de_rham) {
            *o = v?;
        }
        Some(out)
    }
}

struct System {
    eqs: Vec<Equation>,
    slack: usize,
}

impl System {
    fn push(&mut self, e: Equation) {
        self.eqs.push(e);
    }

    /// `lhs <= rhs` as `lhs + s = rhs`.
    fn at_most(&mut self, lhs: Var, rhs: Var, rule: &'static str) {
        let s = Var::Slack(self.slack);
        self.slack += 1;
        self.push(Equation::new(&[(1, lhs), (1, s), (-1, rhs)], 0, rule));
    }
}

fn build(profile: &CohomologyProfile) -> Result<System, LedgerError> {
    let mut sys = System { eqs: Vec::new(), slack: 0 };
    sys.push(Equation::fix(hodge(0, 0), 1, cite::CONNECTED));
    if profile.strict_cy {
        sys.push(Equation::fix(hodge(0, 1), 0, cite::STRICT_CY));
        sys.push(Equation::fix(hodge(0, 2), 0, cite::STRICT_CY));
        sys.push(Equation::fix(hodge(0, 3), 1, cite::STRICT_CY));
    }
    for (k, &v) in &profile.special {
        let (p, q) = hodge_key(k)?;
        sys.push(Equation::fix(hodge(p, q), v as i64, cite::INPUT));
    }
    // H^n_dR = sum of the surviving E3 = E_infinity terms on the n-th diagonal
    for n in 0..7 {
        let mut terms = vec![(-1, Var::DeRham(n))];
        for i in 0..4 {
            if n >= i && n - i < 4 {
                terms.push((1, cell(i, n - i)));
            }
        }
        for (k, &((si, sj), (ti, tj))) in EDGES.iter().enumerate() {
            if si + sj == n || ti + tj == n {
                terms.push((-1, Var::Rank(k / 2)));
            }
        }
        sys.push(Equation::new(&terms, 0, cite::CONJUGATE_SS));
    }
    for (k, &((si, sj), (ti, tj))) in EDGES.iter().enumerate() {
        sys.at_most(Var::Rank(k / 2), cell(si, sj), cite::CONJUGATE_SS);
        sys.at_most(Var::Rank(k / 2), cell(ti, tj), cite::CONJUGATE_SS);
    }
    for n in 0..3 {
        sys.push(Equation::new(&[(1, Var::DeRham(n)), (-1, Var::DeRham(6 - n))], 0, cite::POINCARE));
        sys.push(Equation::new(&[(1, Var::Betti(n)), (-1, Var::Betti(6 - n))], 0, cite::POINCARE));
    }
    for (n, b) in profile.betti()?.iter().enumerate() {
        if let Some(b) = b {
            sys.push(Equation::fix(Var::Betti(n), *b as i64, cite::INPUT));
        }
    }
    if let Some(e) = profile.ramification {
        for (i, m) in profile.mod_p_betti()?.iter().enumerate() {
            if let Some(m) = m {
                if (i as u64) * (e as u64) + 1 < profile.prime {
                    sys.push(Equation::fix(Var::DeRham(i), *m as i64, cite::CARUSO));
                }
            }
        }
    }
    sys.push(Equation::fix(Var::Tau(0), 0, cite::UCT_CRYS));
    sys.push(Equation::fix(Var::Tau(7), 0, cite::UCT_CRYS));
    for n in 0..7 {
        sys.push(Equation::new(
            &[(1, Var::DeRham(n)), (-1, Var::Betti(n)), (-1, Var::Tau(n)), (-1, Var::Tau(n + 1))],
            0,
            cite::UCT_CRYS,
        ));
    }
    if let Some(t) = &profile.crystalline_torsion {
        for d in 0..7 {
            if t.degrees.contains(&d) {
                sys.push(Equation::new(&[(1, Var::Tau(d)), (-1, Var::Param)], 0, cite::INPUT));
            } else {
                sys.push(Equation::fix(Var::Tau(d), 0, cite::INPUT));
            }
        }
    }
    if profile.hdr_degenerate == Some(true) {
        for k in 0..3 {
            sys.push(Equation::fix(Var::Rank(k), 0, cite::INPUT));
        }
    }
    if profile.w2_liftable == Some(true) && profile.prime > 3 {
        for k in 0..3 {
            sys.push(Equation::fix(Var::Rank(k), 0, cite::DELIGNE_ILLUSIE));
        }
    }
    Ok(sys)
}

fn get(st: &State, v: Var) -> Option<i64> {
    st.vals.get(&v).copied()
}

/// Run every applicable rule on a profile.
pub fn derive(profile: &CohomologyProfile) -> Result<LedgerReport, LedgerError> {
    profile.validate()?;
    let sys = build(profile)?;
    let mut base = State::default();
    propagate(&sys.eqs, &mut base)
        .map_err(|c| LedgerError::Inconsistent(format!("[{}] {}", c.rule, c.detail)))?;

    let w2_fires = profile.w2_liftable == Some(false) && profile.strict_cy;
    if w2_fires {
        base.note(cite::W2, format!("rank({}) >= 1: both H^1(Omega^1) -> H^3(O) and H^0(Omega^3) -> H^2(Omega^2) are nonzero", PAIR_NAMES[0]));
    }

    // candidate values for each rank pair
    let mut choices: Vec<(Var, Vec<i64>)> = Vec::new();
    for k in 0..3 {
        let lo = if k == 0 && w2_fires { 1 } else { 0 };
        if let Some(r) = get(&base, Var::Rank(k)) {
            if r < lo {
                return Err(LedgerError::Inconsistent(format!(
                    "[{}] rank({}) >= 1 contradicts rank({}) = {r}",
                    cite::W2,
                    PAIR_NAMES[k],
                    PAIR_NAMES[k]
                )));
            }
            continue;
        }
        let mut hi = RANK_CAP;
        let mut bounded = false;
        for &((si, sj), (ti, tj)) in &EDGES[2 * k..2 * k + 2] {
            for c in [cell(si, sj), cell(ti, tj)] {
                if let Some(x) = get(&base, c) {
                    hi = hi.min(x);
                    bounded = true;
                }
            }
        }
        if !bounded {
            base.note(cite::CONJUGATE_SS, format!("rank({}) has unknown source and target; trying 0..={RANK_CAP}", PAIR_NAMES[k]));
        }
        choices.push((Var::Rank(k), (lo..=hi).collect()));
    }
    let degenerate_iff = profile.crystalline_torsion.as_ref().is_some_and(|t| t.degenerate_iff_positive);
    if profile.crystalline_torsion.is_some() && get(&base, Var::Param).is_none() {
        choices.push((Var::Param, vec![0, 1]));
    }

    let total: usize = choices.iter().map(|(_, c)| c.len()).product();
    let mut feasible: Vec<State> = Vec::new();
    let mut eliminated: Vec<TrailEntry> = Vec::new();
    let mut idx = vec![0usize; choices.len()];
    for _ in 0..total {
        let mut st = base.clone();
        st.trail.clear();
        let label: Vec<String> = choices.iter().zip(&idx).map(|((v, c), &i)| format!("{v} = {}", c[i])).collect();
        let label = if label.is_empty() { "single case".to_string() } else { label.join(", ") };
        for ((v, c), &i) in choices.iter().zip(&idx) {
            st.assign(*v, c[i], "branch", String::new());
        }
        let mut outcome = Ok(());
        if profile.hdr_degenerate == Some(false) && (0..3).all(|k| get(&st, Var::Rank(k)) == Some(0)) {
            outcome = Err(Contradiction { rule: cite::INPUT, detail: "the profile is non-degenerate but all ranks vanish".into() });
        }
        if outcome.is_ok() && degenerate_iff {
            let param = get(&st, Var::Param).unwrap_or(-1);
            let any_rank = (0..3).any(|k| get(&st, Var::Rank(k)).is_some_and(|r| r > 0));
            let all_zero = (0..3).all(|k| get(&st, Var::Rank(k)) == Some(0));
            if param == 1 && any_rank {
                outcome = Err(Contradiction { rule: cite::TORSION_DEGENERATION, detail: "n > 0 forces degeneration but a d2 is nonzero".into() });
            } else if param == 0 && all_zero {
                outcome = Err(Contradiction { rule: cite::TORSION_DEGENERATION, detail: "n = 0 forces a nonzero d2 but all ranks vanish".into() });
            }
        }
        if outcome.is_ok() {
            outcome = propagate(&sys.eqs, &mut st);
        }
        match outcome {
            Ok(()) => feasible.push(st),
            Err(c) => eliminated.push(TrailEntry { rule: c.rule.to_string(), statement: format!("branch {label} eliminated: {}", c.detail) }),
        }
        for (pos, (_, c)) in idx.iter_mut().zip(&choices).rev() {
            *pos += 1;
            if *pos < c.len() {
                break;
            }
            *pos = 0;
        }
    }
    if feasible.is_empty() {
        let why: Vec<String> = eliminated.iter().map(|e| format!("[{}] {}", e.rule, e.statement)).collect();
        return Err(LedgerError::Inconsistent(format!("no branch survives: {}", why.join("; "))));
    }

    let forced = |v: Var| -> Option<i64> {
        let x = get(&feasible[0], v)?;
        feasible.iter().all(|s| get(s, v) == Some(x)).then_some(x)
    };
    let u = |x: Option<i64>| x.map(|x| x as u32);

    let mut trail = base.trail.clone();
    trail.extend(eliminated);
    if feasible.len() == 1 {
        trail.extend(feasible[0].trail.iter().filter(|e| e.rule != "branch").cloned());
    } else {
        trail.push(TrailEntry {
            rule: "branch".into(),
            statement: format!("{} of {total} branches survive; only values common to all are kept", feasible.len()),
        });
    }

    let mut special = [[None; 4]; 4];
    for (p, row) in special.iter_mut().enumerate() {
        for (q, e) in row.iter_mut().enumerate() {
            *e = u(forced(hodge(p, q)));
        }
    }
    let de_rham: [Option<u32>; 7] = std::array::from_fn(|n| u(forced(Var::DeRham(n))));
    let betti: [Option<u32>; 7] = std::array::from_fn(|n| u(forced(Var::Betti(n))));
    let crystalline_torsion: [Option<u32>; 8] = std::array::from_fn(|n| u(forced(Var::Tau(n))));
    let ranks: [Option<u32>; 3] = std::array::from_fn(|k| u(forced(Var::Rank(k))));
    let torsion_parameter_positive = if profile.crystalline_torsion.is_some() { forced(Var::Param).map(|x| x == 1) } else { None };
    if let Some(pos) = torsion_parameter_positive {
        trail.push(TrailEntry {
            rule: cite::TORSION_DEGENERATION.into(),
            statement: if pos { "torsion parameter n > 0".into() } else { "torsion parameter n = 0".into() },
        });
    }

    let alt = |v: &[Option<u32>; 7]| -> Option<i64> {
        v.iter().enumerate().map(|(n, x)| x.map(|x| if n % 2 == 0 { x as i64 } else { -(x as i64) })).sum()
    };
    let alternating_sum = alt(&de_rham);
    if let (Some(a), Some(b)) = (alternating_sum, alt(&betti)) {
        if a != b {
            return Err(LedgerError::Inconsistent(format!("alternating de Rham sum {a} differs from alternating Betti sum {b}")));
        }
        trail.push(TrailEntry { rule: cite::UCT_CRYS.into(), statement: format!("alternating sums agree: {a}") });
    }

    let mut report = LedgerReport {
        name: profile.name.clone(),
        prime: profile.prime,
        special,
        de_rham,
        betti,
        crystalline_torsion,
        ranks,
        torsion_parameter_positive,
        hodge_torsion: None,
        supersingular: None,
        alternating_sum,
        branches_total: total,
        branches_feasible: feasible.len(),
        trail,
    };

    if let (Some(s), Some(g)) = (report.special_diamond(), profile.generic_diamond()?) {
        let t = uct_hodge(&g, &s)?;
        for e in &t.entries {
            report.trail.push(TrailEntry {
                rule: cite::UCT_HODGE.into(),
                statement: format!("H^{}(Omega^{}) of the model has torsion, indicator {}", e.degree, e.form, e.indicator),
            });
        }
        report.hodge_torsion = Some(t);
    }

    match supersingularity_rule(profile) {
        Ok(()) => {
            report.supersingular = Some(true);
            report.trail.push(TrailEntry { rule: cite::HEIGHT_LIFT.into(), statement: "Artin-Mazur height is infinite (supersingular)".into() });
        }
        Err(LedgerError::Inconsistent(m)) => return Err(LedgerError::Inconsistent(m)),
        Err(_) => {}
    }
    Ok(report)
}
