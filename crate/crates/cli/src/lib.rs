//! Front end for the `gkzf` binary: commands build a structured report,
//! which is printed either as JSON or as an indented text rendering of it.
//! Index sets in reports are 1-based.

pub mod args;
pub mod problem;
pub mod report;

#[cfg(test)]
mod tests;

use gkzf_core::exact::{parse_rat, Rat};
use gkzf_core::exponents::PerturbBasis;
use gkzf_core::logseries::LogSeries;
use gkzf_core::pairs::{in_core, is_unimodular};
use gkzf_core::pipeline::{solve_threaded, verify, verify_series, Analysis, ExponentSolution, Options, Verification};
use gkzf_core::poly::{Poly, Ring, TermOrder, VarKind};
use gkzf_core::GkzError;
use serde_json::{json, Value};

pub use problem::{ProblemSpec, SpecError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Toric,
    Initial,
    Pairs,
    Triangulation,
    Exponents,
    Solve,
    Verify,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::Toric,
        Command::Initial,
        Command::Pairs,
        Command::Triangulation,
        Command::Exponents,
        Command::Solve,
        Command::Verify,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Toric => "toric",
            Command::Initial => "initial",
            Command::Pairs => "pairs",
            Command::Triangulation => "triangulation",
            Command::Exponents => "exponents",
            Command::Solve => "solve",
            Command::Verify => "verify",
        }
    }

    pub fn parse(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Debug)]
pub enum CliError {
    Spec(SpecError),
    Gkz(GkzError),
    /// Solutions failed verification.
    Unverified(Value),
    Input(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Spec(e) => write!(f, "{}", e),
            CliError::Gkz(e) => write!(f, "{}", e),
            CliError::Unverified(_) => write!(f, "verification failed"),
            CliError::Input(m) => write!(f, "{}", m),
        }
    }
}

impl From<GkzError> for CliError {
    fn from(e: GkzError) -> Self {
        CliError::Gkz(e)
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Gkz(g) => CliError::Gkz(g),
            other => CliError::Spec(other),
        }
    }
}

pub fn exit_code(e: &CliError) -> i32 {
    match e {
        CliError::Gkz(GkzError::NonGenericWeight(_)) => 2,
        CliError::Gkz(GkzError::PoleAtOrigin(_)) => 3,
        CliError::Gkz(GkzError::DegreeCapReached(_)) => 4,
        _ => 1,
    }
}

/// Command-line settings layered over the problem file.
#[derive(Clone, Debug, Default)]
pub struct RunArgs {
    pub window: Option<i64>,
    pub check_window: Option<i64>,
    pub dual_cap: Option<u32>,
    /// Output of an earlier `solve --format json-like`, checked by `verify`.
    pub solutions: Option<String>,
    pub threads: usize,
}

fn merged_options(spec: &ProblemSpec, args: &RunArgs) -> Options {
    let mut o = spec.options.clone();
    o.window = args.window.or(o.window);
    o.check_window = args.check_window.or(o.check_window);
    o.dual_cap = args.dual_cap.or(o.dual_cap);
    o
}

fn one_based(set: &[usize]) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

fn rat_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(gkzf_core::exact::fmt_rat).collect()
}

fn render(p: &Poly) -> String {
    p.render(&TermOrder::Grevlex)
}

pub fn run(command: Command, spec: &ProblemSpec, args: &RunArgs) -> Result<Value, CliError> {
    let options = merged_options(spec, args);
    let mut doc = serde_json::Map::new();
    doc.insert("command".into(), json!(command.name()));
    doc.insert("problem".into(), json!(spec.name));
    if command == Command::Toric {
        let an_toric = gkzf_core::toric::toric_ideal(&spec.a)?;
        doc.insert("n".into(), json!(spec.a.n()));
        doc.insert("d".into(), json!(spec.a.d()));
        doc.insert("homogeneous".into(), json!(spec.a.check_homogeneous().is_ok()));
        doc.insert("kernel".into(), json!(spec.a.kernel_i64()?));
        doc.insert("generators".into(), json!(an_toric.generators.iter().map(render).collect::<Vec<_>>()));
        return Ok(Value::Object(doc));
    }
    let an = Analysis::new(spec.a.clone(), &spec.w)?;
    doc.insert("weight".into(), json!(rat_strings(&spec.w)));
    match command {
        Command::Toric => unreachable!(),
        Command::Initial => {
            let ring = spec.a.ring();
            doc.insert(
                "initial_ideal".into(),
                json!(an.weight.initial.generators.iter().map(|m| m.render(&ring)).collect::<Vec<_>>()),
            );
            let bin: Vec<Value> = an
                .weight
                .binomials
                .iter()
                .map(|b| json!({ "g": b.g, "binomial": b.to_poly(ring).render(&TermOrder::Weight(an.weight.order.clone())) }))
                .collect();
            doc.insert("binomials".into(), Value::Array(bin));
        }
        Command::Pairs => {
            doc.insert("standard_pairs".into(), json!(an.pairs.iter().map(|p| p.to_string()).collect::<Vec<_>>()));
        }
        Command::Triangulation => {
            let t = &an.triangulation;
            doc.insert("faces".into(), json!(t.delta.iter().map(|f| one_based(f)).collect::<Vec<_>>()));
            doc.insert("facets".into(), json!(t.facets.iter().map(|f| one_based(f)).collect::<Vec<_>>()));
            let vols: Vec<String> = t.normalized_volumes(&an.a)?.iter().map(|v| v.to_string()).collect();
            doc.insert("volumes".into(), json!(vols));
            doc.insert("unimodular".into(), json!(is_unimodular(t, &an.a)?));
            doc.insert("c_w".into(), json!(one_based(&t.c_w)));
            let core: Vec<Vec<String>> =
                t.core_indices.iter().map(|&j| an.a.column_rat(j).iter().map(|x| x.to_string()).collect()).collect();
            doc.insert("core_basis".into(), json!(core));
            doc.insert("beta".into(), json!(rat_strings(&spec.beta)));
            doc.insert("beta_in_core".into(), json!(in_core(&spec.beta, t, &an.a)));
        }
        Command::Exponents => {
            doc.insert("beta".into(), json!(rat_strings(&spec.beta)));
            doc.insert("beta_in_core".into(), json!(in_core(&spec.beta, &an.triangulation, &an.a)));
            doc.insert("c_w".into(), json!(one_based(&an.triangulation.c_w)));
            let ex: Vec<Value> = an
                .exponents(&spec.beta)?
                .iter()
                .map(|r| {
                    json!({
                        "v": rat_strings(&r.exponent.v),
                        "multiplicity": r.exponent.multiplicity,
                        "pairs": r.exponent.supporting_pairs.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        "nsupp": one_based(&gkzf_core::exponents::nsupp(&r.exponent.v)),
                        "theorem": r.theorem,
                    })
                })
                .collect();
            doc.insert("exponents".into(), Value::Array(ex));
        }
        Command::Solve => {
            doc.insert("beta".into(), json!(rat_strings(&spec.beta)));
            let sols = solve_threaded(&an, &spec.beta, &options, args.threads.max(1))?;
            doc.insert("exponents".into(), Value::Array(sols.iter().map(solution_doc).collect()));
        }
        Command::Verify => {
            doc.insert("beta".into(), json!(rat_strings(&spec.beta)));
            let checks = match &args.solutions {
                None => {
                    let sols = solve_threaded(&an, &spec.beta, &options, args.threads.max(1))?;
                    verify(&an, &spec.beta, &sols, &options)?
                }
                Some(text) => verify_document(&an, spec, text, &options)?,
            };
            let passed = checks.iter().all(Verification::passed);
            doc.insert("exponents".into(), Value::Array(checks.iter().map(verification_doc).collect()));
            doc.insert("passed".into(), json!(passed));
            if !passed {
                return Err(CliError::Unverified(Value::Object(doc)));
            }
        }
    }
    Ok(Value::Object(doc))
}

fn solution_doc(s: &ExponentSolution) -> Value {
    let sring = Ring::new(VarKind::S, s.basis.h());
    json!({
        "v": rat_strings(s.v()),
        "theorem": s.report.theorem,
        "basis": s.basis.vectors,
        "basis_fallback": s.basis.fallback,
        "bs": s.basis.bs().iter().map(|f| render(&f.to_poly(sring))).collect::<Vec<_>>(),
        "g_sets": s.neg.g_sets.iter().map(|g| one_based(g)).collect::<Vec<_>>(),
        "k": one_based(&s.neg.k),
        "window": [s.neg.radius, s.neg.check_radius],
        "p_b": s.pb.generators.iter().map(render).collect::<Vec<_>>(),
        "p": s.p.generators.iter().map(render).collect::<Vec<_>>(),
        "m": render(&s.multiplier),
        "dual_dims": s.dual.dims(),
        "skipped": s.frobenius.skipped,
        "solutions": s.dual.operators().zip(s.solutions()).map(|(q, series)| json!({
            "dual": q.render(),
            "terms": series.terms.iter().map(|(e, p)| json!({ "shift": e, "coeff": render(p) })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn verification_doc(v: &Verification) -> Value {
    json!({
        "v": rat_strings(&v.v),
        "solutions": v.solutions,
        "dual_dim": v.dual_dim,
        "rank": v.rank,
        "euler_residuals": v.euler_residuals,
        "toric_residuals": v.toric_residuals,
        "toric_checked": v.toric_checked,
        "log_free": v.log_free,
        "off_subring": v.off_subring,
        "skipped": v.skipped,
        "passed": v.passed(),
    })
}

fn bad(msg: &str) -> CliError {
    CliError::Input(format!("solutions document: {}", msg))
}

/// Re-reads a `solve` document and verifies its series.
fn verify_document(an: &Analysis, spec: &ProblemSpec, text: &str, options: &Options) -> Result<Vec<Verification>, CliError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let exps = doc.get("exponents").and_then(Value::as_array).ok_or_else(|| bad("no exponents"))?;
    let n = an.a.n();
    let log_ring = Ring::new(VarKind::Log, n);
    let mut out = Vec::new();
    for e in exps {
        let v: Vec<Rat> = e
            .get("v")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing v"))?
            .iter()
            .map(|x| x.as_str().and_then(parse_rat).ok_or_else(|| bad("bad rational")))
            .collect::<Result<_, _>>()?;
        let basis: Vec<Vec<i64>> = serde_json::from_value(e.get("basis").cloned().ok_or_else(|| bad("missing basis"))?)
            .map_err(|e| bad(&e.to_string()))?;
        let basis = PerturbBasis { vectors: basis, fallback: false };
        let sols = e.get("solutions").and_then(Value::as_array).ok_or_else(|| bad("missing solutions"))?;
        let mut series = Vec::new();
        let mut first_is_q1 = false;
        for (i, s) in sols.iter().enumerate() {
            if i == 0 {
                first_is_q1 = s.get("dual").and_then(Value::as_str) == Some("1");
            }
            let mut ls = LogSeries::zero(v.clone());
            for t in s.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))? {
                let shift: Vec<i64> = serde_json::from_value(t.get("shift").cloned().ok_or_else(|| bad("missing shift"))?)
                    .map_err(|e| bad(&e.to_string()))?;
                let coeff = t.get("coeff").and_then(Value::as_str).ok_or_else(|| bad("missing coeff"))?;
                let p = Poly::parse(coeff, log_ring).map_err(|m| bad(&m))?;
                ls.add_term(shift, p);
            }
            series.push(ls);
        }
        let mut check = verify_series(an, &spec.beta, &basis, &series, first_is_q1, options)?;
        check.v = v;
        out.push(check);
    }
    Ok(out)
}
