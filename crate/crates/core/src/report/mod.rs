//! Report assembly for the command-line driver: the verification pipeline,
//! descent experiments and the i-series table, with runtime dispatch over
//! the supported primes.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::descent::{self, DescentTrace};
use crate::dvr::{eisenstein_check, ring_horizon, DvrElement, DvrRing, DvrSetup};
use crate::error::{Error, Result};
use crate::fgl::{build_fgl, pseries_congruences, verify_fgl_congruences, ChromaticConfig, CongruenceReport, ReducedParams};
use crate::isogeny::{self, CoefficientEntry, SignCheck};
use crate::{Fp, USeries, WeightValue};

/// Refuse runs whose estimated term count exceeds this without `--force`.
pub const DESK_SCALE_LIMIT: u64 = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    HorizonFlagged,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub value: String,
    pub defect: Option<String>,
}

impl CheckEntry {
    fn new(name: impl Into<String>, passed: bool, value: impl Into<String>) -> Self {
        CheckEntry {
            name: name.into(),
            status: if passed { Status::Pass } else { Status::Fail },
            value: value.into(),
            defect: None,
        }
    }

    fn with_defect(mut self, defect: Option<String>) -> Self {
        self.defect = defect;
        self
    }

    /// A ring-side check compared below `horizon`; a pass is flagged when
    /// the horizon lies within `d` of the valuation `reference` it probes.
    fn ring(name: impl Into<String>, passed: bool, value: impl Into<String>, horizon: usize, reference: usize, d: usize) -> Self {
        let mut c = Self::new(name, passed, value);
        if passed && horizon < reference + d {
            c.status = Status::HorizonFlagged;
        }
        c
    }

    /// A stage that aborted leaves its checks unperformed, so it fails.
    fn stage_error(stage: &str, e: &Error) -> Self {
        CheckEntry { name: format!("{stage}_stage"), status: Status::Fail, value: "stage aborted".into(), defect: Some(e.to_string()) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub command: String,
    pub p: u32,
    pub n: u32,
    pub d: u32,
    pub x_deg: u32,
    pub u_prec: u32,
    pub x_cap: u32,
    pub a_cap: u32,
    pub u_cap: u32,
    pub ring_horizon: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsogenySection {
    pub distinguished_g: String,
    pub psi: String,
    pub nbar_extracted: String,
    pub nbar_divided: String,
    pub routes_agree: bool,
    pub sign: SignCheck,
    pub coefficients: Vec<CoefficientEntry>,
    /// Degrees `j` whose coefficient of `y^j` vanishes in `R`.
    pub vanishing_degrees: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseriesRow {
    pub i: u64,
    pub k: u32,
    pub ideal: String,
    pub residue: String,
    pub expected: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub config: ConfigEcho,
    pub checks: Vec<CheckEntry>,
    pub epsilon_sign: Option<i8>,
    pub descent_traces: Vec<DescentTrace>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isogeny: Option<IsogenySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pseries: Option<Vec<PseriesRow>>,
    pub timing: BTreeMap<String, u64>,
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Keep checks named `filter`, or else those whose name starts with it.
    pub fn filter_checks(&mut self, filter: &str) -> Result<()> {
        let exact: Vec<_> = self.checks.iter().filter(|c| c.name == filter).cloned().collect();
        let kept = if exact.is_empty() {
            self.checks.iter().filter(|c| c.name.starts_with(filter)).cloned().collect()
        } else {
            exact
        };
        if kept.is_empty() {
            return Err(Error::InvalidConfig(format!("no check named {filter:?}")));
        }
        self.checks = kept;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the timing block emptied, for byte comparisons.
    pub fn to_json_without_timing(&self) -> String {
        let mut r = self.clone();
        r.timing.clear();
        r.to_json()
    }

    pub fn to_text(&self) -> String {
        let c = &self.config;
        let mut out = format!(
            "{} p={} n={} d={} x_deg={} u_prec={} x_cap={} a_cap={} seed={}\n",
            c.command, c.p, c.n, c.d, c.x_deg, c.u_prec, c.x_cap, c.a_cap, c.seed
        );
        for check in &self.checks {
            let tag = match check.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::HorizonFlagged => "FLAG",
            };
            out += &format!("{tag} {} = {}\n", check.name, check.value);
            if let Some(d) = &check.defect {
                out += &format!("     defect: {d}\n");
            }
        }
        if let Some(e) = self.epsilon_sign {
            out += &format!("epsilon_sign = {e:+}\n");
        }
        if let Some(iso) = &self.isogeny {
            out += &format!("g = {}\nN(u) = {}\n", iso.distinguished_g, iso.nbar_divided);
        }
        for row in self.pseries.iter().flatten() {
            out += &format!("[{}](x) mod {} = {}\n", row.i, row.ideal, row.residue);
        }
        for (k, t) in self.descent_traces.iter().enumerate() {
            let weights: Vec<&str> = std::iter::once(t.initial_weight.as_str())
                .chain(t.steps.iter().map(|s| s.extracted_weight.as_str()))
                .collect();
            out += &format!("trace {k}: weights {} -> terminal {}\n", weights.join(" > "), t.terminal);
        }
        let timing: Vec<String> = self.timing.iter().map(|(k, v)| format!("{k}={v}ms")).collect();
        out += &format!("timing {}\n", timing.join(" "));
        out
    }
}

/// Flags shared by every command.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub p: u32,
    pub n: u32,
    pub x_deg: Option<u32>,
    pub u_prec: Option<u32>,
    pub x_cap: Option<u32>,
    pub a_cap: Option<u32>,
    pub seed: u64,
}

impl RunOptions {
    pub fn config(&self) -> Result<ChromaticConfig> {
        let base = ChromaticConfig::new(self.p, self.n)?;
        ChromaticConfig::with_caps(
            self.p,
            self.n,
            self.x_deg.unwrap_or(base.formal_degree_cap),
            self.u_prec.unwrap_or(base.u_precision),
        )
    }

    pub fn params(&self) -> Result<ReducedParams> {
        let config = self.config()?;
        let default = ReducedParams::for_config(&config);
        let x_cap = self.x_cap.unwrap_or(default.x_cap);
        let a_cap = match (self.a_cap, self.x_cap) {
            (Some(a), _) => a,
            (None, Some(x)) => ReducedParams::default_a_cap(config.p, config.n, x, config.u_precision),
            (None, None) => default.a_cap,
        };
        if a_cap < config.pk(config.n) + config.d() {
            return Err(Error::InvalidConfig(format!("a-cap {a_cap} below p^n + d")));
        }
        Ok(ReducedParams::with_caps(&config, x_cap, a_cap))
    }

    /// `(x_cap + 1)(a_cap + 1) + n (x_deg + 1)²`: the dense size of the
    /// reduced law plus the bivariate size of the full law per generator.
    pub fn estimated_cost(&self) -> Result<u64> {
        let config = self.config()?;
        let params = self.params()?;
        let reduced = (params.x_cap as u64 + 1) * (params.a_cap as u64 + 1);
        let full = config.n as u64 * (config.formal_degree_cap as u64 + 1).pow(2);
        Ok(reduced + full)
    }

    pub fn desk_scale_guard(&self, force: bool) -> Result<()> {
        let cost = self.estimated_cost()?;
        if cost > DESK_SCALE_LIMIT && !force {
            return Err(Error::InvalidConfig(format!(
                "estimated cost {cost} exceeds the desk-scale limit {DESK_SCALE_LIMIT}; pass --force to run anyway"
            )));
        }
        Ok(())
    }

    fn echo(&self, command: &str) -> Result<ConfigEcho> {
        let config = self.config()?;
        let params = self.params()?;
        Ok(ConfigEcho {
            command: command.into(),
            p: config.p,
            n: config.n,
            d: config.d(),
            x_deg: config.formal_degree_cap,
            u_prec: config.u_precision,
            x_cap: params.x_cap,
            a_cap: params.a_cap,
            u_cap: params.u_cap,
            ring_horizon: ring_horizon(&params),
            seed: self.seed,
        })
    }
}

/// What `descent` should run on.
#[derive(Clone, Debug)]
pub enum DescentInput {
    Explicit(String),
    Random { count: usize, max_weight: usize },
}

macro_rules! dispatch {
    ($p:expr, $f:ident ( $($arg:expr),* )) => {
        match $p {
            2 => $f::<2>($($arg),*),
            3 => $f::<3>($($arg),*),
            5 => $f::<5>($($arg),*),
            7 => $f::<7>($($arg),*),
            11 => $f::<11>($($arg),*),
            13 => $f::<13>($($arg),*),
            17 => $f::<17>($($arg),*),
            p => Err(Error::InvalidConfig(format!("unsupported prime {p}"))),
        }
    };
}

pub fn verify(opts: &RunOptions) -> Result<RunReport> {
    dispatch!(opts.p, verify_at(opts))
}

pub fn descent(opts: &RunOptions, input: &DescentInput) -> Result<RunReport> {
    dispatch!(opts.p, descent_at(opts, input))
}

pub fn pseries(opts: &RunOptions, i_max: Option<u64>) -> Result<RunReport> {
    dispatch!(opts.p, pseries_at(opts, i_max))
}

struct Timer(BTreeMap<String, u64>, Instant);

impl Timer {
    fn new() -> Self {
        Timer(BTreeMap::new(), Instant::now())
    }

    fn lap(&mut self, stage: &str) {
        self.0.insert(stage.into(), self.1.elapsed().as_millis() as u64);
        self.1 = Instant::now();
    }
}

fn empty_report(opts: &RunOptions, command: &str) -> Result<RunReport> {
    Ok(RunReport {
        config: opts.echo(command)?,
        checks: Vec::new(),
        epsilon_sign: None,
        descent_traces: Vec::new(),
        isogeny: None,
        pseries: None,
        timing: BTreeMap::new(),
    })
}

fn push_congruences(report: &mut RunReport, congruences: CongruenceReport) {
    for c in congruences.checks {
        let value = match &c.note {
            Some(note) => format!("{} ({note})", c.residue),
            None => c.residue.clone(),
        };
        let defect = c.defect.map(|d| format!("expected {}; residue - expected = {d}", c.expected));
        report.checks.push(CheckEntry::new(c.name, c.passed, value).with_defect(defect));
    }
}

fn weight_expected<const P: u32>(ring: &DvrRing<P>) -> WeightValue {
    WeightValue::finite(P as u64 - 1, ring.d() as u64)
}

fn dvr_checks<const P: u32>(setup: &DvrSetup<P>, report: &mut RunReport) -> Result<()> {
    let (ring, wf) = (&setup.ring, &setup.factorization);
    let d = ring.d();
    let g = &wf.distinguished;
    let rec = wf.reconstruction(setup.law.p_series())?;
    report.checks.push(
        CheckEntry::new(
            "power_reconstruction",
            rec.exact,
            format!("U * a^{} * g = [p](a) mod u^{} through a^{}", wf.pole_order, rec.u_precision, rec.a_cap),
        )
        .with_defect((!rec.exact).then_some(rec.defect)),
    );
    report.checks.push(CheckEntry::new("power_unit", wf.unit_is_unit(), "U(0) nonzero"));
    report.checks.push(CheckEntry::new("power_monic_degree", g.degree() == d, format!("deg g = {}", g.degree())));
    report.checks.push(CheckEntry::new("power_reduction", g.reduces_to_monomial(), format!("g = a^{d} mod u")));
    let v0 = g.coeffs()[0].valuation();
    report.checks.push(CheckEntry::new(
        "power_constant_valuation",
        v0 == Some(1),
        format!("val_u(g_0) = {}", v0.map_or("inf".into(), |v| v.to_string())),
    ));

    report.checks.push(CheckEntry::new("domain_eisenstein", eisenstein_check(g), g.render()));
    let h = ring.horizon();
    let val = |x: &DvrElement<P>| x.valuation().map_or("inf".to_string(), |v| v.to_string());
    let (u, a, psi) = (ring.u(), ring.a(), &setup.psi.psi);
    report.checks.push(CheckEntry::ring("domain_val_u", u.valuation() == Some(d), val(&u), u.horizon(), d, d));
    report.checks.push(CheckEntry::ring("domain_val_a", a.valuation() == Some(1), val(&a), a.horizon(), 1, d));
    let pv = P as usize - 1;
    report.checks.push(CheckEntry::ring("domain_psi", psi.valuation() == Some(pv), val(psi), psi.horizon(), pv, d));
    report.checks.push(CheckEntry::ring(
        "domain_psi_products",
        setup.psi.products_agree(ring),
        "prod [i](a) = prod [-i](a)",
        h.min(setup.psi.negative_product.horizon()),
        pv,
        d,
    ));
    let wt = psi.weight();
    report.checks.push(CheckEntry::new("wt_psi", wt == weight_expected(ring), wt.render()));
    Ok(())
}

fn isogeny_checks<const P: u32>(setup: &DvrSetup<P>, report: &mut RunReport, timer: &mut Timer) -> Result<()> {
    let (ring, psi) = (&setup.ring, &setup.psi.psi);
    let n = setup.config.n;
    let d = ring.d();
    let pn = P.pow(n) as usize;
    let out = isogeny::run_isogeny(&setup.law, ring, &setup.psi)?;
    timer.lap("isogeny");

    let worst = out.defect.iter().map(DvrElement::horizon).min().unwrap_or(0);
    let nonzero: Vec<String> = out
        .defect
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(j, e)| format!("x^{j}: {}", e.render()))
        .collect();
    report.checks.push(
        CheckEntry::ring(
            "isogeny_defect",
            nonzero.is_empty(),
            format!("zero through x^{}", out.defect.len().saturating_sub(1)),
            worst,
            0,
            d,
        )
        .with_defect((!nonzero.is_empty()).then(|| nonzero.join("; "))),
    );
    let integral = out.quotient.integral();
    let bad: Vec<String> = integral.iter().enumerate().filter(|(_, b)| !**b).map(|(j, _)| j.to_string()).collect();
    report.checks.push(
        CheckEntry::new("isogeny_integral", bad.is_empty(), format!("y^0..y^{} integral", integral.len() - 1))
            .with_defect((!bad.is_empty()).then(|| format!("non-integral degrees {}", bad.join(", ")))),
    );
    for j in 1..pn {
        let c = out.quotient.coefficient(j)?;
        let h = c.precision().max(0) as usize;
        report.checks.push(
            CheckEntry::ring(format!("vanishing_y{j}"), c.is_zero(), format!("zero below valuation {h}"), h, 0, d)
                .with_defect((!c.is_zero()).then(|| c.render())),
        );
    }

    let product = ring.mul(&out.nbar_divided, &ring.pow(psi, pn as u64 - 1));
    let diff = ring.sub(&product, &ring.u());
    report.checks.push(
        CheckEntry::ring("nbar_formula", diff.is_zero(), "N(u) * Psi^(p^n - 1) = u", diff.horizon(), d, d)
            .with_defect((!diff.is_zero()).then(|| diff.render())),
    );
    let routes = out.routes_agree(ring);
    let route_diff = ring.sub(&out.nbar_extracted, &out.nbar_divided);
    report.checks.push(
        CheckEntry::ring("nbar_routes_agree", routes, out.nbar_divided.render(), route_diff.horizon(), P as usize - 1, d)
            .with_defect((!routes).then(|| route_diff.render())),
    );
    let wt = out.nbar_divided.weight();
    report.checks.push(CheckEntry::new("wt_nbar", wt == weight_expected(ring), wt.render()));

    let signs: Vec<Result<SignCheck>> = [&out.nbar_extracted, &out.nbar_divided]
        .into_iter()
        .map(|nb| isogeny::norm_sign_check(ring, nb, psi, n))
        .collect();
    let sign = match (&signs[0], &signs[1]) {
        (Ok(a), Ok(b)) => {
            let agree = a.epsilon == b.epsilon;
            let both = if a.plus_holds && a.minus_holds { " (both signs hold)" } else { "" };
            report.checks.push(
                CheckEntry::ring(
                    "norm_sign",
                    agree,
                    format!("epsilon = {:+}{both}", a.epsilon),
                    a.horizon.min(b.horizon),
                    P as usize - 1 + d,
                    d,
                )
                .with_defect((!agree).then(|| format!("routes give {} and {}", a.epsilon, b.epsilon))),
            );
            report.epsilon_sign = Some(a.epsilon);
            Some(a.clone())
        }
        (Err(e), _) | (_, Err(e)) => {
            report.checks.push(CheckEntry::new("norm_sign", false, "undetermined").with_defect(Some(e.to_string())));
            None
        }
    };

    if let Some(sign) = sign {
        report.isogeny = Some(IsogenySection {
            distinguished_g: setup.factorization.distinguished.render(),
            psi: psi.render(),
            nbar_extracted: out.nbar_extracted.render(),
            nbar_divided: out.nbar_divided.render(),
            routes_agree: routes,
            sign,
            coefficients: isogeny::coefficient_table(&out.quotient),
            vanishing_degrees: (0..out.quotient.coefficients.len())
                .filter(|&j| out.quotient.coefficients[j].is_zero())
                .collect(),
        });
    }
    Ok(())
}

fn descent_checks<const P: u32>(setup: &DvrSetup<P>, seed: u64, report: &mut RunReport) -> Result<()> {
    let ring = &setup.ring;
    let nbar = isogeny::nbar_by_division(ring, &setup.psi.psi, setup.config.n)?;
    let m = setup.config.u_precision as usize;
    let z = USeries::monomial(Fp::new(1), 1, m);
    match descent::descent_run(ring, &nbar, &z) {
        Ok(trace) => {
            let ok = trace.invariants_hold() && trace.steps.len() == 1;
            report.checks.push(CheckEntry::new("descent_u", ok, format!("{} step(s) to {}", trace.steps.len(), trace.terminal)));
            report.descent_traces.push(trace);
        }
        Err(e) => report.checks.push(CheckEntry::new("descent_u", false, "no trace").with_defect(Some(e.to_string()))),
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<_> = (0..200)
        .map(|_| (descent::random_z::<P>(&mut rng, 20, m), descent::random_z::<P>(&mut rng, 20, m)))
        .collect();
    let w = descent::weight_sum_rules(&pairs);
    report.checks.push(CheckEntry::new(
        "wt_sum_min_rule",
        w.samples > 0 && w.min_rule_holds == w.samples,
        format!(
            "min rule on {}/{} pairs of distinct weight; additive reading on {}/{}",
            w.min_rule_holds, w.samples, w.additive_rule_holds, w.samples
        ),
    ));
    Ok(())
}

fn verify_at<const P: u32>(opts: &RunOptions) -> Result<RunReport> {
    let mut report = empty_report(opts, "verify")?;
    let config = opts.config()?;
    let params = opts.params()?;
    let mut timer = Timer::new();

    match build_fgl::<P>(&config).and_then(|f| verify_fgl_congruences(&f)) {
        Ok(c) => push_congruences(&mut report, c),
        Err(e) => report.checks.push(CheckEntry::stage_error("fgl", &e)),
    }
    timer.lap("fgl");

    let setup = match DvrSetup::<P>::build(&config, &params) {
        Ok(s) => s,
        Err(e) => {
            report.checks.push(CheckEntry::stage_error("dvr", &e));
            report.timing = timer.0;
            return Ok(report);
        }
    };
    timer.lap("dvr");
    if let Err(e) = dvr_checks(&setup, &mut report) {
        report.checks.push(CheckEntry::stage_error("dvr", &e));
    }
    if let Err(e) = isogeny_checks(&setup, &mut report, &mut timer) {
        report.checks.push(CheckEntry::stage_error("isogeny", &e));
    }
    if let Err(e) = descent_checks(&setup, opts.seed, &mut report) {
        report.checks.push(CheckEntry::stage_error("descent", &e));
    }
    timer.lap("descent");
    report.timing = timer.0;
    Ok(report)
}

/// Parse `z` as a coefficient list (`"[0, 1, 1]"`, `"0,1,1"`) or a sum of
/// monomials (`"u^1"`, `"1 + 2*u^3"`); `u`, `u_n` and `u<n>` all name `u_n`.
pub fn parse_z<const P: u32>(text: &str, n: u32, precision: usize) -> Result<USeries<P>> {
    let text = text.trim();
    let bad = || Error::Parse(format!("cannot read {text:?} as a power series in u"));
    let mut coeffs = vec![Fp::<P>::new(0); precision];
    if text.starts_with('[') || text.contains(',') {
        let inner = text.trim_start_matches('[').trim_end_matches(']');
        let values: Vec<i64> = inner
            .split(',')
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if values.len() > precision {
            return Err(Error::Parse(format!("{} coefficients exceed precision {precision}", values.len())));
        }
        for (t, v) in values.into_iter().enumerate() {
            coeffs[t] = Fp::from_i64(v);
        }
        return Ok(USeries::from_coeffs(coeffs, precision));
    }
    let var_names = ["u".to_string(), "u_n".to_string(), format!("u{n}")];
    for term in text.split('+').map(str::trim) {
        let (c, mono) = match term.split_once('*') {
            Some((c, m)) => (c.trim().parse::<i64>().map_err(|_| bad())?, Some(m.trim())),
            None if term.chars().all(|ch| ch.is_ascii_digit() || ch == '-') => (term.parse().map_err(|_| bad())?, None),
            None => (1, Some(term)),
        };
        let t = match mono {
            None => 0,
            Some(m) => {
                let (var, e) = m.split_once('^').unwrap_or((m, "1"));
                if !var_names.iter().any(|v| v == var.trim()) {
                    return Err(bad());
                }
                e.trim().parse::<usize>().map_err(|_| bad())?
            }
        };
        if t >= precision {
            return Err(Error::Parse(format!("exponent {t} at or above precision {precision}")));
        }
        coeffs[t] = coeffs[t] + Fp::from_i64(c);
    }
    Ok(USeries::from_coeffs(coeffs, precision))
}

fn descent_at<const P: u32>(opts: &RunOptions, input: &DescentInput) -> Result<RunReport> {
    let mut report = empty_report(opts, "descent")?;
    let config = opts.config()?;
    let m = config.u_precision as usize;
    let zs: Vec<USeries<P>> = match input {
        DescentInput::Explicit(text) => vec![parse_z::<P>(text, config.n, m)?],
        DescentInput::Random { count, max_weight } => {
            if *max_weight == 0 || *max_weight >= m {
                return Err(Error::InvalidConfig(format!("max weight must lie in 1..{m}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            (0..*count).map(|_| descent::random_z::<P>(&mut rng, *max_weight, m)).collect()
        }
    };
    let mut timer = Timer::new();
    let setup = DvrSetup::<P>::build(&config, &opts.params()?)?;
    let nbar = isogeny::nbar_by_division(&setup.ring, &setup.psi.psi, config.n)?;
    timer.lap("dvr");
    for (k, z) in zs.iter().enumerate() {
        let name = format!("descent_{k}");
        match descent::descent_run(&setup.ring, &nbar, z) {
            Ok(trace) => {
                let ok = trace.invariants_hold();
                let value = format!("{} step(s), bound {}", trace.steps.len(), trace.step_bound);
                report.checks.push(CheckEntry::new(name, ok, value));
                report.descent_traces.push(trace);
            }
            Err(e) => {
                let mut c = CheckEntry::stage_error("descent", &e);
                c.name = name;
                c.value = z.render();
                report.checks.push(c);
            }
        }
    }
    timer.lap("descent");
    report.timing = timer.0;
    Ok(report)
}

fn pseries_at<const P: u32>(opts: &RunOptions, i_max: Option<u64>) -> Result<RunReport> {
    let mut report = empty_report(opts, "pseries")?;
    let config = opts.config()?;
    let mut timer = Timer::new();
    let f = build_fgl::<P>(&config)?;
    let i_max = i_max.unwrap_or(P as u64 * P as u64 + 1);
    let mut table = CongruenceReport::default();
    pseries_congruences(&f, i_max, &mut table)?;
    timer.lap("pseries");
    let n = config.n;
    let mut rows = Vec::new();
    for (idx, c) in table.checks.iter().enumerate() {
        let (i, k) = ((idx as u32 / (n + 1)) as u64, idx as u32 % (n + 1) + 1);
        let killed = if k <= n { k - 1 } else { n };
        let us: String = (1..=killed).map(|j| format!(", u{j}")).collect();
        let ideal = format!("({P}{us}, x^{})", P.pow(k) + 1);
        rows.push(PseriesRow {
            i,
            k,
            ideal,
            residue: c.residue.clone(),
            expected: c.expected.clone(),
            passed: c.passed,
        });
    }
    push_congruences(&mut report, table);
    report.pseries = Some(rows);
    report.timing = timer.0;
    Ok(report)
}
