//! Command-line front end. [`run`] returns the text to print and the exit
//! status so that it can be driven from tests.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, parse_rational, Rational};
use crate::geometry::{
    parse_rational_list, Case, ClassLabel, Model, MonodromyProfile, PabModel, WeightedProjectiveModel,
};
use crate::invariants::potential::z_block_coefficients;
use crate::invariants::threefold::{reduce_threefold, Insertion};
use crate::invariants::{evaluate_invariant, invariant_form, solve_for_c, theta_vector, HodgeInput, InvariantQuery};
use crate::operator_algebra::quantize::{cocycle, cocycle_formula, Darboux, QuadraticHamiltonian};
use crate::operator_algebra::series::{Truncation, Var};
use crate::operator_algebra::virasoro::{coordinate_name, explicit_lk, DisplayConstants};
use crate::stringy::{coprime_pairs, genus_one_predictions, stringy_rhs, supertrace_mu_squared};
use crate::verify::{self, Relation, SuiteReport};

#[derive(Parser, Debug)]
#[command(
    name = "orbvir",
    version,
    about = "Exact degree-zero genus-zero orbifold invariants of P(1,N), P(1,1,N), P(1,1,1,N)"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct QueryArgs {
    /// Monodromy profile, e.g. "N=3;n=3,0".
    #[arg(long)]
    pub profile: Option<String>,
    /// curve or surface; inferred from --model when given.
    #[arg(long)]
    pub case: Option<String>,
    /// Model literal such as "P(1,N=3)" or "P(1,1,N=4)".
    #[arg(long)]
    pub model: Option<String>,
    /// Stacky exponents k_1..k_S.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub k: Vec<u32>,
    /// Plain exponents l_1..l_n.
    #[arg(long, value_delimiter = ',')]
    pub l: Vec<u32>,
    /// Values of the distinguished invariants, e.g. "1/3,1/3,1/3".
    #[arg(long)]
    pub gamma: Option<String>,
    /// Report the invariant as a linear form in c_1..c_S.
    #[arg(long)]
    pub symbolic_c: bool,
    /// JSON input file with model, profile, case, gamma and queries.
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// Admissibility, cover genus and eigenbundle ranks of a profile.
    Ranks {
        #[arg(long)]
        profile: Option<String>,
        /// Profile given as loose tokens, e.g. `N=3 n=3,0`.
        parts: Vec<String>,
    },
    /// Evaluate an invariant from Γ values or as a form in c.
    Invariant(QueryArgs),
    /// Solve the linear system for c.
    SolveC(QueryArgs),
    /// The vector Θ(k,l).
    Theta(QueryArgs),
    /// Apply the explicit L_k to the truncated potential and report the 1/ħ coefficients.
    VirasoroZ {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 1)]
        k: i64,
        /// Mode and degree bounds M,D.
        #[arg(long, default_value = "4,4")]
        truncation: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also print the operator.
        #[arg(long)]
        show_operator: bool,
    },
    /// Commutation relations for -1 <= m,n <= 3.
    Commutators {
        #[arg(long, default_value = "P(1,N=2)")]
        model: String,
        #[arg(long, default_value_t = 3)]
        max_mode: u32,
    },
    /// Cocycle of two quadratic Darboux monomials such as "p2^1*p3^2".
    Cocycle {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// str(μ²) against the Euler/Chern side for P(a,b).
    Stringy {
        #[arg(long)]
        model: Option<String>,
        /// Sweep all coprime pairs with b <= max.
        #[arg(long)]
        max: Option<u32>,
    },
    /// Reduce threefold descendants, e.g. "tau1(1),tau0(xi),tau0(xi),tau0(xi)".
    Reduce3 { insertions: String },
    /// Run a named verification suite, or "all".
    Verify {
        suite: String,
        #[arg(long)]
        max: Option<u32>,
        #[arg(long = "N")]
        order: Option<u32>,
        #[arg(long)]
        max_points: Option<usize>,
        #[arg(long, default_value_t = 20240611)]
        seed: u64,
    },
}

/// Parses `argv` and runs it, returning the output and the exit status.
pub fn run<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.to_string(), code);
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => {
            if cli.json {
                (json!({ "error": e.to_string() }).to_string(), 2)
            } else {
                (format!("error: {e}"), 2)
            }
        }
    }
}

/// Everything needed to reproduce a run; embedded in JSON output.
#[derive(Debug, Serialize)]
pub struct RunConfig<'a> {
    pub program: &'static str,
    pub version: &'static str,
    #[serde(flatten)]
    pub command: &'a Command,
}

struct Output {
    text: Vec<String>,
    json: Value,
    ok: bool,
}

impl Output {
    fn new(json: Value) -> Self {
        Output {
            text: Vec::new(),
            json,
            ok: true,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let out = match &cli.command {
        Command::Ranks { profile, parts } => ranks(profile.as_deref(), parts)?,
        Command::Invariant(q) => invariant(q)?,
        Command::SolveC(q) => solve_c(q)?,
        Command::Theta(q) => theta(q)?,
        Command::VirasoroZ {
            model,
            k,
            truncation,
            seed,
            show_operator,
        } => virasoro_z(model, *k, truncation, *seed, *show_operator)?,
        Command::Commutators { model, max_mode } => commutators(model, *max_mode)?,
        Command::Cocycle { a, b } => cocycle_cmd(a, b)?,
        Command::Stringy { model, max } => stringy(model.as_deref(), *max)?,
        Command::Reduce3 { insertions } => reduce3(insertions)?,
        Command::Verify {
            suite,
            max,
            order,
            max_points,
            seed,
        } => verify_cmd(suite, *max, *order, *max_points, *seed)?,
    };
    let code = if out.ok { 0 } else { 1 };
    let text = if cli.json {
        let config = RunConfig {
            program: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: &cli.command,
        };
        let doc = json!({ "config": config, "result": out.json, "ok": out.ok });
        serde_json::to_string_pretty(&doc).map_err(|e| Error::Internal(e.to_string()))?
    } else {
        out.text.join("\n")
    };
    Ok((text, code))
}

fn weighted(model: &str) -> Result<WeightedProjectiveModel> {
    match model.parse::<Model>()? {
        Model::Weighted(w) => Ok(w),
        Model::Pab(_) => Err(Error::Unsupported(format!("{model} is not of the form P(1,..,1,N)"))),
    }
}

fn pab(model: &str) -> Result<PabModel> {
    match model.parse::<Model>()? {
        Model::Pab(p) => Ok(p),
        Model::Weighted(w) if w.dim() == 1 => PabModel::new(1, w.order()),
        Model::Weighted(_) => Err(Error::Unsupported(format!("{model} is not a weighted projective line"))),
    }
}

fn ranks(profile: Option<&str>, parts: &[String]) -> Result<Output> {
    let literal = match profile {
        Some(p) => p.to_string(),
        None => parts.join(";"),
    };
    let p: MonodromyProfile = literal.parse()?;
    let mut out = Output::new(json!({ "profile": p.to_string(), "admissible": p.is_admissible() }));
    out.line(format!("profile {p}"));
    if !p.is_admissible() {
        out.line(format!(
            "not admissible: sum of i*n_i = {} is not divisible by N = {}",
            p.weighted_sum(),
            p.order()
        ));
        out.ok = false;
        return Ok(out);
    }
    let g = p.cover_genus()?;
    let r = p.eigenbundle_ranks()?;
    let s = p.total() as i64;
    out.line("admissible");
    out.line(format!("g={g}"));
    out.line(
        r.iter()
            .enumerate()
            .map(|(j, x)| format!("r{}={x}", j + 1))
            .collect::<Vec<_>>()
            .join(", "),
    );
    let lhs = r[0] + r[r.len() - 1] - 1;
    out.line(format!("r1+r(N-1)-1 = {lhs} = sum(n)-3"));
    if lhs != s - 3 {
        out.ok = false;
        out.line(format!("identity fails: sum(n)-3 = {}", s - 3));
    }
    out.line(format!("virtual dimension {}", s - 3));
    out.json = json!({
        "profile": p.to_string(),
        "admissible": true,
        "genus": g,
        "ranks": r,
        "virtual_dimension": s - 3,
    });
    Ok(out)
}

#[derive(Debug, Deserialize)]
struct InputFile {
    model: Option<String>,
    profile: Vec<u32>,
    case: Option<String>,
    gamma: Option<Vec<String>>,
    #[serde(default)]
    queries: Vec<QueryJson>,
}

#[derive(Debug, Clone, Deserialize, Serialize, PartialEq, Eq, PartialOrd, Ord)]
struct QueryJson {
    k: Vec<u32>,
    #[serde(default)]
    l: Vec<u32>,
}

struct Resolved {
    profile: MonodromyProfile,
    case: Case,
    gamma: Option<Vec<Rational>>,
    queries: Vec<QueryJson>,
}

fn case_of_model(model: &str, n: Option<u32>) -> Result<(Case, u32)> {
    let w = weighted(model)?;
    let case = match w.dim() {
        1 => Case::Curve,
        2 => Case::Surface,
        d => {
            return Err(Error::Unsupported(format!(
                "closed forms exist for d = 1, 2, not d = {d}"
            )))
        }
    };
    if let Some(n) = n {
        if n != w.order() {
            return Err(Error::Inconsistent(format!(
                "profile has N = {n} but the model has N = {}",
                w.order()
            )));
        }
    }
    Ok((case, w.order()))
}

fn resolve(q: &QueryArgs) -> Result<Resolved> {
    if let Some(path) = &q.input {
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let file: InputFile = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        let (case, n) = match (&file.model, &file.case) {
            (Some(m), c) => {
                let (case, n) = case_of_model(m, None)?;
                if let Some(c) = c {
                    if c.parse::<Case>()? != case {
                        return Err(Error::Inconsistent(format!("case {c} does not match {m}")));
                    }
                }
                (case, n)
            }
            (None, _) => return Err(Error::Parse("input file needs a model".into())),
        };
        let profile = MonodromyProfile::new(n, file.profile)?;
        let gamma = file
            .gamma
            .map(|g| g.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
            .transpose()?;
        let mut queries = file.queries;
        if queries.is_empty() && !q.k.is_empty() {
            queries.push(QueryJson {
                k: q.k.clone(),
                l: q.l.clone(),
            });
        }
        queries.sort();
        return Ok(Resolved {
            profile,
            case,
            gamma,
            queries,
        });
    }
    let profile: MonodromyProfile = q
        .profile
        .as_deref()
        .ok_or_else(|| Error::Parse("--profile is required".into()))?
        .parse()?;
    let case = match (&q.model, &q.case) {
        (Some(m), c) => {
            let (case, _) = case_of_model(m, Some(profile.order()))?;
            if let Some(c) = c {
                if c.parse::<Case>()? != case {
                    return Err(Error::Inconsistent(format!("case {c} does not match {m}")));
                }
            }
            case
        }
        (None, Some(c)) => c.parse()?,
        (None, None) => Case::Curve,
    };
    let gamma = q.gamma.as_deref().map(parse_rational_list).transpose()?;
    let queries = vec![QueryJson {
        k: q.k.clone(),
        l: q.l.clone(),
    }];
    Ok(Resolved {
        profile,
        case,
        gamma,
        queries,
    })
}

fn query_label(q: &QueryJson) -> String {
    let k: Vec<String> = q.k.iter().map(u32::to_string).collect();
    let l: Vec<String> = q.l.iter().map(u32::to_string).collect();
    format!("k=({}) l=({})", k.join(","), l.join(","))
}

fn invariant(args: &QueryArgs) -> Result<Output> {
    let r = resolve(args)?;
    let input = match (&r.gamma, args.symbolic_c) {
        (_, true) => None,
        (Some(g), false) => Some(HodgeInput::new(&r.profile, g.clone())?),
        (None, false) => {
            return Err(Error::Parse(
                "give --gamma, an input file with gamma, or --symbolic-c".into(),
            ))
        }
    };
    let mut out = Output::new(Value::Null);
    let mut results = Vec::new();
    for qj in &r.queries {
        let q = InvariantQuery::new(r.profile.clone(), qj.k.clone(), qj.l.clone(), r.case)?;
        let label = query_label(qj);
        let (text, value) = if !q.satisfies_dimension() {
            (
                "0 (dimension constraint fails)".to_string(),
                json!({ "value": "0", "reason": "dimension constraint fails" }),
            )
        } else if let Some(input) = &input {
            let v = format_rational(&evaluate_invariant(&q, input)?);
            (v.clone(), json!({ "value": v }))
        } else {
            let form = invariant_form(&q)?.to_string();
            (form.clone(), json!({ "form": form }))
        };
        if r.queries.len() == 1 {
            out.line(text);
        } else {
            out.line(format!("{label}: {text}"));
        }
        let mut entry = json!({ "k": qj.k, "l": qj.l });
        entry
            .as_object_mut()
            .expect("object")
            .extend(value.as_object().expect("object").clone());
        results.push(entry);
    }
    out.json = json!({
        "profile": r.profile.to_string(),
        "case": r.case.as_str(),
        "results": results,
    });
    Ok(out)
}

fn solve_c(args: &QueryArgs) -> Result<Output> {
    let r = resolve(args)?;
    let gamma = r.gamma.ok_or_else(|| Error::Parse("solve-c needs --gamma".into()))?;
    let input = HodgeInput::new(&r.profile, gamma)?;
    let c = solve_for_c(&r.profile, r.case, &input)?;
    let values: Vec<String> = c.0.iter().map(format_rational).collect();
    let mut out = Output::new(json!({
        "profile": r.profile.to_string(),
        "case": r.case.as_str(),
        "c": values,
    }));
    for (j, v) in values.iter().enumerate() {
        out.line(format!("c{} = {v}", j + 1));
    }
    Ok(out)
}

fn theta(args: &QueryArgs) -> Result<Output> {
    let r = resolve(args)?;
    let qj = r
        .queries
        .first()
        .ok_or_else(|| Error::Parse("theta needs --k".into()))?;
    let q = InvariantQuery::new(r.profile.clone(), qj.k.clone(), qj.l.clone(), r.case)?;
    let th: Vec<String> = theta_vector(&q)?.iter().map(format_rational).collect();
    let mut out = Output::new(json!({
        "profile": r.profile.to_string(),
        "case": r.case.as_str(),
        "k": qj.k,
        "l": qj.l,
        "theta": th,
        "dimension_ok": q.satisfies_dimension(),
    }));
    for (j, v) in th.iter().enumerate() {
        out.line(format!("theta{} = {v}", j + 1));
    }
    if !q.satisfies_dimension() {
        out.line("dimension constraint fails: the invariant is 0");
    }
    Ok(out)
}

fn parse_truncation(s: &str) -> Result<Truncation> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [m, d] => {
            let bad = |_| Error::Parse(format!("bad truncation {s:?}"));
            Ok(Truncation::new(m.parse().map_err(bad)?, d.parse().map_err(bad)?))
        }
        _ => Err(Error::Parse(format!("truncation is M,D, got {s:?}"))),
    }
}

fn virasoro_z(model: &str, k: i64, truncation: &str, seed: u64, show: bool) -> Result<Output> {
    let w = weighted(model)?;
    let window = parse_truncation(truncation)?;
    let rep = z_block_coefficients(&w, k, window, seed)?;
    let names = |v: Var| coordinate_name(&w, v);
    let mut out = Output::new(json!({
        "model": w.label(),
        "k": k,
        "window": [window.max_mode, window.max_degree],
        "seed": seed,
        "vanishes": rep.vanishes(),
        "monomials_in_window": rep.checked,
        "potential_terms": rep.potential_terms,
        "nonzero": rep.asserted.render(&names),
        "cross_terms": rep.cross_terms.render(&names),
        "dropped": rep.dropped,
    }));
    if show {
        let op = explicit_lk(&w, k, window.max_mode + k as u32 + 1, &DisplayConstants::default())?;
        out.line(format!("L_{k} = {}", op.render(&names)));
    }
    out.line(format!(
        "{} k={k} window (mode <= {}, degree <= {}): {} monomials, potential with {} terms",
        w.label(),
        window.max_mode,
        window.max_degree,
        rep.checked,
        rep.potential_terms
    ));
    if rep.vanishes() {
        out.line("all asserted 1/hbar coefficients vanish");
    } else {
        out.line(format!("nonzero: {}", rep.asserted.render(&names)));
        out.ok = false;
    }
    if w.dim() == 2 {
        out.line(format!(
            "hbar d(alpha) d(alpha) cross terms: {}",
            rep.cross_terms.render(&names)
        ));
    }
    out.line(format!("dropped while assembling: {}", rep.dropped));
    Ok(out)
}

fn commutators(model: &str, max_mode: u32) -> Result<Output> {
    let w = weighted(model)?;
    let models = [w.clone()];
    let reports = [
        verify::commutators(&models, Relation::Quantized, max_mode)?,
        verify::commutators(&models, Relation::Reversed, max_mode)?,
        verify::commutators(&models, Relation::Literal, max_mode)?,
    ];
    let mut out = Output::new(json!({ "model": w.label(), "reports": reports }));
    for r in &reports {
        out.line(format!(
            "{}: {} of {} pairs hold",
            r.name,
            r.checked - r.failed,
            r.checked
        ));
    }
    out.ok = reports[0].passed;
    Ok(out)
}

/// Parses `p2^1*p3^2`: letter, mode, `^`, class index.
fn parse_darboux(s: &str) -> Result<Darboux> {
    let bad = || Error::Parse(format!("bad Darboux coordinate {s:?}; use e.g. p2^1 or q0^0"));
    let s = s.trim();
    let (kind, rest) = s.split_at(1);
    let (mode, class) = rest
        .replace('_', "")
        .split_once('^')
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .ok_or_else(bad)?;
    let v = Var::new(class.parse().map_err(|_| bad())?, mode.parse().map_err(|_| bad())?);
    match kind {
        "p" => Ok(Darboux::P(v)),
        "q" => Ok(Darboux::Q(v)),
        _ => Err(bad()),
    }
}

fn parse_monomial(s: &str) -> Result<QuadraticHamiltonian> {
    let parts: Vec<&str> = s.split(['*', ' ']).filter(|p| !p.is_empty()).collect();
    match parts.as_slice() {
        [x, y] => Ok(QuadraticHamiltonian::monomial(parse_darboux(x)?, parse_darboux(y)?)),
        _ => Err(Error::Parse(format!("a quadratic monomial has two factors, got {s:?}"))),
    }
}

fn cocycle_cmd(a: &str, b: &str) -> Result<Output> {
    let (ha, hb) = (parse_monomial(a)?, parse_monomial(b)?);
    let probed = cocycle(&ha, &hb)?;
    let formula = cocycle_formula(&ha, &hb);
    let mut out = Output::new(json!({
        "a": a,
        "b": b,
        "cocycle": format_rational(&probed),
        "formula": format_rational(&formula),
    }));
    out.line(format_rational(&probed));
    if probed != formula {
        out.line(format!("closed form gives {}", format_rational(&formula)));
        out.ok = false;
    }
    Ok(out)
}

fn stringy(model: Option<&str>, max: Option<u32>) -> Result<Output> {
    let models = match (model, max) {
        (Some(m), _) => vec![pab(m)?],
        (None, Some(max)) => coprime_pairs(max),
        (None, None) => return Err(Error::Parse("give --model or --max".into())),
    };
    let mut out = Output::new(Value::Null);
    let mut rows = Vec::new();
    out.line(format!("{:<16} {:>12} {:>12}  equal", "model", "str(mu^2)", "rhs"));
    for m in &models {
        let (l, r) = (supertrace_mu_squared(m), stringy_rhs(m));
        let (psi, c1) = genus_one_predictions(m);
        out.ok &= l == r;
        out.line(format!(
            "{:<16} {:>12} {:>12}  {}",
            m.label(),
            format_rational(&l),
            format_rational(&r),
            if l == r { "yes" } else { "no" }
        ));
        rows.push(json!({
            "model": m.label(),
            "lhs": format_rational(&l),
            "rhs": format_rational(&r),
            "equal": l == r,
            "genus_one_psi": format_rational(&psi),
            "genus_one_c1": format_rational(&c1),
        }));
    }
    out.json = json!({ "rows": rows });
    Ok(out)
}

fn parse_class(s: &str) -> Result<ClassLabel> {
    let s = s.trim();
    Ok(match s {
        "1" => ClassLabel::Untwisted(0),
        "xi" | "p" => ClassLabel::Untwisted(1),
        "[X]" => ClassLabel::Untwisted(3),
        _ => {
            if let Some(e) = s.strip_prefix("xi^") {
                ClassLabel::Untwisted(e.parse().map_err(|_| Error::Parse(format!("bad class {s:?}")))?)
            } else if let Some(j) = s.strip_prefix("gamma") {
                ClassLabel::Twisted(j.parse().map_err(|_| Error::Parse(format!("bad class {s:?}")))?)
            } else {
                return Err(Error::Parse(format!(
                    "unknown class {s:?}; use 1, xi, xi^2, [X], gammaJ"
                )));
            }
        }
    })
}

fn parse_insertions(s: &str) -> Result<Vec<Insertion>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches([',', ' ']);
        if rest.is_empty() {
            break;
        }
        let body = rest
            .strip_prefix("tau")
            .ok_or_else(|| Error::Parse(format!("expected tauK(class) at {rest:?}")))?;
        let open = body
            .find('(')
            .ok_or_else(|| Error::Parse(format!("missing '(' in {rest:?}")))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::Parse(format!("missing ')' in {rest:?}")))?;
        let exponent = body[..open]
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {rest:?}")))?;
        out.push(Insertion::new(exponent, parse_class(&body[open + 1..close])?));
        rest = &body[close + 1..];
    }
    Ok(out)
}

fn reduce3(insertions: &str) -> Result<Output> {
    let list = parse_insertions(insertions)?;
    let red = reduce_threefold(&list);
    let show = |l: &Vec<Insertion>| l.iter().map(|i| i.render(3)).collect::<Vec<_>>();
    let terms: Vec<Value> = red
        .terms
        .iter()
        .map(|(l, w)| json!({ "insertions": show(l), "weight": format_rational(w) }))
        .collect();
    let irreducible: Vec<Value> = red
        .irreducible
        .iter()
        .map(|(l, w)| json!({ "insertions": show(l), "weight": format_rational(w) }))
        .collect();
    let mut out = Output::new(json!({ "terms": terms, "irreducible": irreducible }));
    out.line(red.to_string());
    Ok(out)
}

fn verify_cmd(
    suite: &str,
    max: Option<u32>,
    order: Option<u32>,
    max_points: Option<usize>,
    seed: u64,
) -> Result<Output> {
    let names: Vec<&str> = if suite == "all" {
        verify::SUITES.to_vec()
    } else {
        vec![suite]
    };
    let default_models = || {
        vec![
            WeightedProjectiveModel::new(1, 2).expect("valid"),
            WeightedProjectiveModel::new(2, 3).expect("valid"),
        ]
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for name in names {
        let rep = match name {
            "ranks" => verify::rank_identity(200, order.unwrap_or(7), max_points.unwrap_or(12) as u32, seed),
            "genus" => verify::cover_genus_n3(max_points.unwrap_or(12) as u32),
            "commutators" => {
                let models = match order {
                    Some(n) => vec![WeightedProjectiveModel::new(1, n)?],
                    None => vec![WeightedProjectiveModel::new(1, 2)?],
                };
                verify::commutators(&models, Relation::Quantized, 3)?
            }
            "cocycle" => verify::cocycle_table(2, 3, 1)?,
            "recursion" => {
                let points = max_points.unwrap_or(8);
                let curve_orders: Vec<u32> = order.map(|n| vec![n]).unwrap_or_else(|| vec![2, 3, 4, 5]);
                let surface_orders: Vec<u32> = order.map(|n| vec![n]).unwrap_or_else(|| vec![2, 3, 5]);
                let mut c = verify::recursion_sweep(Case::Curve, &curve_orders, points, 3, 3, 20, seed)?;
                let s = verify::recursion_sweep(Case::Surface, &surface_orders, points, 3, 3, 20, seed)?;
                c.name = "recursion vs closed form".into();
                c.passed &= s.passed;
                c.checked += s.checked;
                c.failed += s.failed;
                c.failures.extend(s.failures);
                c.notes.extend(s.notes);
                c
            }
            "determinant" => verify::determinant_law(max_points.unwrap_or(6), &[2, 3, 4, 5, 6, 7])?,
            "z-blocks" => verify::z_blocks(&default_models(), &[1, 2], Truncation::new(4, 4), seed)?,
            "bz3" => verify::bz3_point()?,
            "stringy" => verify::stringy(max.unwrap_or(20))?,
            "libgober-wood" => verify::libgober_wood()?,
            "l0" => verify::l0_consistency(&default_models()[0], 4)?,
            "theta" => verify::theta_spot()?,
            other => {
                return Err(Error::Parse(format!(
                    "unknown suite {other:?}; choose from {} or all",
                    verify::SUITES.join(", ")
                )))
            }
        };
        reports.push(rep);
    }
    let mut out = Output::new(json!({ "seed": seed, "reports": reports }));
    for r in &reports {
        out.line(r.to_string());
        out.ok &= r.passed;
    }
    Ok(out)
}
