use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use darboux_core::{
    abcdefgh, check_specialization, classify_darboux, darboux_cofactor, derivation_from_basis,
    enumerate_darboux, expansion_discrepancies, find_linear_darboux, fuzz_darboux_diffring,
    is_constant, m_closed_form, m_det, theta_constant, w1_factorization_check, wronskian_det,
    AlgebraError, DerivationSpec, DetMethod, DiffPoly, FieldConfig, Matrix, MonomialBasis, RPoly,
    Scalar, WronskianReport,
};
use serde_json::{json, Map, Value};

use crate::expr::{format_expr, max_generator, parse_expr, parse_scalar, ParseError};

#[derive(Parser, Debug)]
#[command(
    name = "darboux",
    version,
    about = "Exact differential algebra on F{Y}[X]"
)]
struct Cli {
    /// Matrix size (default: taken from --f, else 2)
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Number of generators t1..tm of the base field
    #[arg(long, global = true)]
    m: Option<usize>,
    /// Comma-separated derivatives D(t1),..,D(tm) (default: all 1)
    #[arg(long, global = true)]
    dt: Option<String>,
    /// Emit a JSON document instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct DerivationArgs {
    /// Symbolic derivation D(X) = Y X (the default)
    #[arg(long)]
    generic: bool,
    /// Specialized derivation D(X) = f X, e.g. "0,1;t1,0"
    #[arg(long, conflicts_with_all = ["generic", "basis"])]
    f: Option<String>,
    /// Derivation from a basis of gl_n, matrices separated by '|'
    #[arg(long, conflicts_with = "generic")]
    basis: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply the derivation to an expression
    Derive {
        /// Expression in X, Y and t, e.g. "X[1,1]*X[2,2] - det"
        #[arg(long)]
        expr: String,
        /// Number of times to apply D
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[command(flatten)]
        derivation: DerivationArgs,
    },
    /// Darboux polynomials
    Darboux {
        #[command(subcommand)]
        command: DarbouxCommand,
    },
    /// Whether num/den is a constant
    Constant {
        /// Numerator
        #[arg(long)]
        num: String,
        /// Denominator
        #[arg(long)]
        den: String,
        #[command(flatten)]
        derivation: DerivationArgs,
    },
    /// Truncated wronskian criterion for D(X) = f X
    Wronskian {
        /// The matrix f, rows separated by ';'
        #[arg(long)]
        f: String,
        /// Largest truncation degree k
        #[arg(long, default_value_t = 1)]
        kmax: u32,
        /// Determinant algorithm
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// The 2x2 new-constant computation
    Gl2 {
        #[command(subcommand)]
        command: Gl2Command,
    },
}

#[derive(Subcommand, Debug)]
enum DarbouxCommand {
    /// Test an expression and classify it under a generic derivation
    Check {
        /// Expression to test
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        derivation: DerivationArgs,
    },
    /// All Darboux polynomials of X-degree <= d (generic derivations)
    Enumerate {
        /// Total X-degree
        #[arg(long)]
        degree: u32,
        /// Basis of gl_n to derive from; defaults to the generic derivation
        #[arg(long)]
        basis: Option<String>,
    },
    /// Exhaustive search for Darboux elements of F{Y}
    Fuzz {
        /// Largest Y derivative order
        #[arg(long, default_value_t = 1)]
        order: usize,
        /// Largest total degree
        #[arg(long, default_value_t = 2)]
        degree: u32,
        /// Coefficient pool
        #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
        coeffs: String,
    },
}

#[derive(Subcommand, Debug)]
enum Gl2Command {
    /// A..H, M, linear Darboux polynomials and theta for a 2x2 f
    Demo {
        /// The 2x2 matrix f
        #[arg(long)]
        f: String,
        /// "b12,b22" for the optional q = f22 + f21*b12 branch
        #[arg(long)]
        beta: Option<String>,
    },
    /// Check W_1 = eps * M * det[X]^2
    Factor {
        #[command(flatten)]
        derivation: DerivationArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Both,
    Cofactor,
    Bareiss,
}

#[derive(Debug)]
enum Failure {
    Parse(ParseError),
    Usage(String),
    Algebra(AlgebraError),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Parse(e) => write!(f, "parse error at {e}"),
            Failure::Usage(s) => f.write_str(s),
            Failure::Algebra(e) => write!(f, "{e}"),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Algebra(e)
    }
}

/// What a subcommand produced: human lines plus the JSON `result`.
struct Outcome {
    lines: Vec<String>,
    kind: &'static str,
    body: Body,
    verdict: bool,
    sign: Option<Value>,
    truncation_k: Option<u32>,
    inputs: Map<String, Value>,
}

enum Body {
    Value(Value),
    Report(Vec<Value>),
}

impl Outcome {
    fn new(kind: &'static str, body: Body, verdict: bool) -> Self {
        Outcome {
            lines: Vec::new(),
            kind,
            body,
            verdict,
            sign: None,
            truncation_k: None,
            inputs: Map::new(),
        }
    }
}

struct Context {
    n: usize,
    cfg: FieldConfig,
}

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_USAGE: i32 = 2;

fn meaning(code: i32) -> &'static str {
    match code {
        EXIT_OK => "success",
        EXIT_NEGATIVE => "negative mathematical verdict",
        _ => "usage, parse or precondition error",
    }
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code, writing to stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let name = command_name(&cli.command);
    let result = context(&cli).and_then(|ctx| dispatch(&cli.command, &ctx).map(|o| (ctx, o)));
    match result {
        Ok((ctx, o)) => {
            let code = if o.verdict { EXIT_OK } else { EXIT_NEGATIVE };
            if cli.json {
                let doc = document(&name, &ctx, o, code);
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
            } else {
                for l in &o.lines {
                    let _ = writeln!(out, "{l}");
                }
            }
            code
        }
        Err(e) => {
            if cli.json {
                let doc = json!({
                    "command": name,
                    "error": e.to_string(),
                    "exit_semantics": {"code": EXIT_USAGE, "meaning": meaning(EXIT_USAGE)},
                });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
            }
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Derive { .. } => "derive".into(),
        Command::Darboux { command } => match command {
            DarbouxCommand::Check { .. } => "darboux check".into(),
            DarbouxCommand::Enumerate { .. } => "darboux enumerate".into(),
            DarbouxCommand::Fuzz { .. } => "darboux fuzz".into(),
        },
        Command::Constant { .. } => "constant".into(),
        Command::Wronskian { .. } => "wronskian".into(),
        Command::Gl2 { command } => match command {
            Gl2Command::Demo { .. } => "gl2 demo".into(),
            Gl2Command::Factor { .. } => "gl2 factor".into(),
        },
    }
}

fn document(name: &str, ctx: &Context, o: Outcome, code: i32) -> Value {
    let result = match o.body {
        Body::Value(v) => json!({"kind": o.kind, "value": v}),
        Body::Report(r) => json!({"kind": o.kind, "report": r}),
    };
    let mut doc = Map::new();
    doc.insert("command".into(), json!(name));
    doc.insert("n".into(), json!(ctx.n));
    doc.insert("m".into(), json!(ctx.cfg.m()));
    doc.insert("inputs".into(), Value::Object(o.inputs));
    doc.insert("result".into(), result);
    if let Some(s) = o.sign {
        doc.insert("sign".into(), s);
    }
    if let Some(k) = o.truncation_k {
        doc.insert("truncation_k".into(), json!(k));
    }
    doc.insert(
        "exit_semantics".into(),
        json!({"code": code, "meaning": meaning(code)}),
    );
    Value::Object(doc)
}

fn derivation_inputs(a: &DerivationArgs) -> Vec<&str> {
    a.f.iter()
        .chain(a.basis.iter())
        .map(|s| s.as_str())
        .collect()
}

fn expression_inputs(c: &Command) -> Vec<&str> {
    let d = derivation_inputs;
    match c {
        Command::Derive {
            expr, derivation, ..
        } => [vec![expr.as_str()], d(derivation)].concat(),
        Command::Darboux { command } => match command {
            DarbouxCommand::Check { expr, derivation } => {
                [vec![expr.as_str()], d(derivation)].concat()
            }
            DarbouxCommand::Enumerate { basis, .. } => basis.iter().map(|s| s.as_str()).collect(),
            DarbouxCommand::Fuzz { coeffs, .. } => vec![coeffs.as_str()],
        },
        Command::Constant {
            num,
            den,
            derivation,
        } => [vec![num.as_str(), den.as_str()], d(derivation)].concat(),
        Command::Wronskian { f, .. } => vec![f.as_str()],
        Command::Gl2 { command } => match command {
            Gl2Command::Demo { f, beta } => {
                [vec![f.as_str()], beta.iter().map(|s| s.as_str()).collect()].concat()
            }
            Gl2Command::Factor { derivation } => d(derivation),
        },
    }
}

fn context(cli: &Cli) -> Result<Context, Failure> {
    let inputs = expression_inputs(&cli.command);
    let dts: Option<Vec<&str>> = cli.dt.as_deref().map(|s| s.split(',').collect());
    let m = match (cli.m, &dts) {
        (Some(m), Some(d)) if d.len() != m => {
            return Err(Failure::Usage(format!(
                "--dt lists {} derivatives but --m is {m}",
                d.len()
            )))
        }
        (Some(m), _) => m,
        (None, Some(d)) => d.len(),
        (None, None) => inputs.iter().map(|s| max_generator(s)).max().unwrap_or(0),
    };
    let cfg = match dts {
        None => FieldConfig::with_unit_derivatives(m),
        Some(d) => {
            let base = FieldConfig::with_unit_derivatives(m);
            let ders = d
                .iter()
                .map(|s| parse_scalar(s, &base))
                .collect::<Result<Vec<_>, _>>()?;
            FieldConfig::new(ders)?
        }
    };
    let from_f = inputs.first().and_then(|_| f_size(&cli.command));
    let n = cli.n.or(from_f).unwrap_or(2);
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    Ok(Context { n, cfg })
}

fn f_size(c: &Command) -> Option<usize> {
    let f = match c {
        Command::Derive { derivation, .. }
        | Command::Constant { derivation, .. }
        | Command::Darboux {
            command: DarbouxCommand::Check { derivation, .. },
        }
        | Command::Gl2 {
            command: Gl2Command::Factor { derivation },
        } => derivation.f.as_deref(),
        Command::Wronskian { f, .. }
        | Command::Gl2 {
            command: Gl2Command::Demo { f, .. },
        } => Some(f.as_str()),
        _ => None,
    }?;
    Some(f.split(';').count())
}

fn parse_matrix(text: &str, n: usize, cfg: &FieldConfig) -> Result<Matrix<Scalar>, Failure> {
    let rows: Vec<Vec<Scalar>> = text
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|e| parse_scalar(e, cfg))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Failure::Usage(format!("matrix '{text}' is not {n}x{n}")));
    }
    Ok(Matrix::from_rows(rows))
}

fn spec_of(a: &DerivationArgs, ctx: &Context) -> Result<DerivationSpec, Failure> {
    if let Some(f) = &a.f {
        return Ok(DerivationSpec::specialized(parse_matrix(
            f, ctx.n, &ctx.cfg,
        )?)?);
    }
    if let Some(b) = &a.basis {
        return basis_spec(b, ctx);
    }
    Ok(DerivationSpec::generic(ctx.n))
}

fn basis_spec(text: &str, ctx: &Context) -> Result<DerivationSpec, Failure> {
    let ms = text
        .split('|')
        .map(|m| parse_matrix(m, ctx.n, &ctx.cfg))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(derivation_from_basis(ms)?)
}

fn describe_spec(a: &DerivationArgs) -> Value {
    match (&a.f, &a.basis) {
        (Some(f), _) => json!({"kind": "specialized", "f": f}),
        (_, Some(b)) => json!({"kind": "basis", "basis": b}),
        _ => json!({"kind": "generic"}),
    }
}

fn scalar_str(s: &Scalar) -> String {
    format_expr(&RPoly::scalar(1, s.clone()))
}

/// `num/den` for rationals, the expression otherwise.
fn scalar_json(s: &Scalar) -> Value {
    match s.as_rational() {
        Some(r) => json!(format!("{}/{}", r.numer(), r.denom())),
        None => scalar_json(s),
    }
}

fn diffpoly_str(p: &DiffPoly) -> String {
    format_expr(&RPoly::constant(1, p.clone()))
}

fn diffpoly_json(p: &DiffPoly) -> Value {
    match p.as_scalar() {
        Some(s) => scalar_json(&s),
        None => diffpoly_json(p),
    }
}

fn dispatch(c: &Command, ctx: &Context) -> Result<Outcome, Failure> {
    match c {
        Command::Derive {
            expr,
            order,
            derivation,
        } => derive(expr, *order, derivation, ctx),
        Command::Darboux { command } => match command {
            DarbouxCommand::Check { expr, derivation } => darboux_check(expr, derivation, ctx),
            DarbouxCommand::Enumerate { degree, basis } => {
                darboux_enumerate(*degree, basis.as_deref(), ctx)
            }
            DarbouxCommand::Fuzz {
                order,
                degree,
                coeffs,
            } => darboux_fuzz(*order, *degree, coeffs, ctx),
        },
        Command::Constant {
            num,
            den,
            derivation,
        } => constant(num, den, derivation, ctx),
        Command::Wronskian { f, kmax, method } => wronskian(f, *kmax, *method, ctx),
        Command::Gl2 { command } => match command {
            Gl2Command::Demo { f, beta } => gl2_demo(f, beta.as_deref(), ctx),
            Gl2Command::Factor { derivation } => gl2_factor(derivation, ctx),
        },
    }
}

fn derive(expr: &str, order: usize, a: &DerivationArgs, ctx: &Context) -> Result<Outcome, Failure> {
    let spec = spec_of(a, ctx)?;
    let p = parse_expr(expr, ctx.n, &ctx.cfg)?;
    let dp = spec.derive_n(&p, order, &ctx.cfg);
    let mut o = Outcome::new("rpoly", Body::Value(json!(format_expr(&dp))), true);
    let lhs = if order == 1 {
        "D(p)".to_string()
    } else {
        format!("D^{order}(p)")
    };
    o.lines.push(format!("p = {}", format_expr(&p)));
    o.lines.push(format!("{lhs} = {}", format_expr(&dp)));
    if order == 1 && !p.is_zero() && p.as_diffpoly().is_none() {
        if let Some(q) = darboux_cofactor(&p, &spec, &ctx.cfg)? {
            o.lines.push(format!("{lhs} = ({}) * p", diffpoly_str(&q)));
        }
    }
    o.inputs.insert("expr".into(), json!(expr));
    o.inputs.insert("order".into(), json!(order));
    o.inputs.insert("derivation".into(), describe_spec(a));
    Ok(o)
}

fn darboux_check(expr: &str, a: &DerivationArgs, ctx: &Context) -> Result<Outcome, Failure> {
    let spec = spec_of(a, ctx)?;
    let p = parse_expr(expr, ctx.n, &ctx.cfg)?;
    let q = darboux_cofactor(&p, &spec, &ctx.cfg)?;
    let mut lines = vec![format!("p = {}", format_expr(&p))];
    let mut value = Map::new();
    value.insert("darboux".into(), json!(q.is_some()));
    match &q {
        None => lines.push("not a Darboux polynomial".into()),
        Some(q) => {
            lines.push(format!("D(p) = ({}) * p", diffpoly_str(q)));
            value.insert("cofactor".into(), diffpoly_json(q));
            if spec.is_generic() {
                if let Some((ell, a)) = classify_darboux(&p, &spec, &ctx.cfg)? {
                    lines.push(format!("p = ({}) * det^{a}", scalar_str(&ell)));
                    value.insert(
                        "classification".into(),
                        json!({"scalar": scalar_str(&ell), "power": a}),
                    );
                }
            }
        }
    }
    let mut o = Outcome::new("darboux", Body::Value(Value::Object(value)), q.is_some());
    o.lines = lines;
    o.inputs.insert("expr".into(), json!(expr));
    o.inputs.insert("derivation".into(), describe_spec(a));
    Ok(o)
}

fn darboux_enumerate(d: u32, basis: Option<&str>, ctx: &Context) -> Result<Outcome, Failure> {
    let spec = match basis {
        Some(b) => basis_spec(b, ctx)?,
        None => DerivationSpec::generic(ctx.n),
    };
    let span = enumerate_darboux(&spec, d)?;
    let items: Vec<String> = span.iter().map(format_expr).collect();
    let mut o = Outcome::new(
        "darboux_span",
        Body::Report(items.iter().map(|s| json!(s)).collect()),
        true,
    );
    o.lines.push(format!(
        "Darboux polynomials of degree <= {d}: span of {} element(s)",
        items.len()
    ));
    o.lines.extend(items.iter().map(|s| format!("  {s}")));
    o.inputs.insert("degree".into(), json!(d));
    if let Some(b) = basis {
        o.inputs.insert("basis".into(), json!(b));
    }
    Ok(o)
}

fn darboux_fuzz(
    order: usize,
    degree: u32,
    coeffs: &str,
    ctx: &Context,
) -> Result<Outcome, Failure> {
    let cs = coeffs
        .split(',')
        .map(|c| parse_scalar(c, &ctx.cfg))
        .collect::<Result<Vec<_>, _>>()?;
    let found = fuzz_darboux_diffring(ctx.n, order, degree, &cs, &ctx.cfg)?;
    let outside: Vec<&DiffPoly> = found
        .iter()
        .filter(|p| !p.as_scalar().is_some_and(|s| s.is_rational()))
        .collect();
    let mut o = Outcome::new(
        "diffpoly_list",
        Body::Report(found.iter().map(diffpoly_json).collect()),
        outside.is_empty(),
    );
    o.lines
        .push(format!("{} Darboux element(s) found", found.len()));
    if outside.is_empty() {
        o.lines.push("all are rational constants".into());
    } else {
        o.lines.extend(
            outside
                .iter()
                .map(|p| format!("  not rational: {}", diffpoly_str(p))),
        );
    }
    o.inputs.insert("order".into(), json!(order));
    o.inputs.insert("degree".into(), json!(degree));
    o.inputs.insert("coeffs".into(), json!(coeffs));
    Ok(o)
}

fn constant(num: &str, den: &str, a: &DerivationArgs, ctx: &Context) -> Result<Outcome, Failure> {
    let spec = spec_of(a, ctx)?;
    let p = parse_expr(num, ctx.n, &ctx.cfg)?;
    let q = parse_expr(den, ctx.n, &ctx.cfg)?;
    let yes = is_constant(&p, &q, &spec, &ctx.cfg)?;
    let mut o = Outcome::new("boolean", Body::Value(json!(yes)), yes);
    o.lines.push(format!(
        "({}) / ({}) is {}",
        format_expr(&p),
        format_expr(&q),
        if yes { "a constant" } else { "not a constant" }
    ));
    o.inputs.insert("num".into(), json!(num));
    o.inputs.insert("den".into(), json!(den));
    o.inputs.insert("derivation".into(), describe_spec(a));
    Ok(o)
}

fn wronskian(f: &str, kmax: u32, method: Method, ctx: &Context) -> Result<Outcome, Failure> {
    let fm = parse_matrix(f, ctx.n, &ctx.cfg)?;
    let reports: Vec<WronskianReport> = match method {
        Method::Both => check_specialization(&fm, kmax, &ctx.cfg)?,
        Method::Cofactor | Method::Bareiss => {
            if kmax == 0 {
                return Err(Failure::Usage("--kmax must be at least 1".into()));
            }
            let dm = if method == Method::Cofactor {
                DetMethod::Cofactor
            } else {
                DetMethod::Bareiss
            };
            let spec = DerivationSpec::specialized(fm)?;
            let mut out = Vec::new();
            for k in 1..=kmax {
                let r = wronskian_det(
                    &MonomialBasis::new(k, ctx.n, &ctx.cfg)?,
                    &spec,
                    &ctx.cfg,
                    dm,
                )?;
                let stop = r.is_zero;
                out.push(r);
                if stop {
                    break;
                }
            }
            out
        }
    };
    let ok = reports.iter().all(|r| !r.is_zero);
    let mut o = Outcome::new(
        "wronskian",
        Body::Report(
            reports
                .iter()
                .map(|r| {
                    json!({
                        "k": r.k,
                        "basis_size": r.basis_size,
                        "determinant": format_expr(&r.determinant),
                        "is_zero": r.is_zero,
                    })
                })
                .collect(),
        ),
        ok,
    );
    for r in &reports {
        o.lines.push(format!(
            "W_{} (basis size {}) = {}",
            r.k,
            r.basis_size,
            format_expr(&r.determinant)
        ));
    }
    o.lines.push(if ok {
        format!("criterion holds up to k = {kmax}")
    } else {
        format!(
            "criterion fails at k = {}",
            reports.last().map_or(0, |r| r.k)
        )
    });
    o.truncation_k = Some(kmax);
    o.inputs.insert("f".into(), json!(f));
    o.inputs.insert("kmax".into(), json!(kmax));
    o.inputs
        .insert("method".into(), json!(format!("{method:?}").to_lowercase()));
    Ok(o)
}

fn gl2_demo(f: &str, beta_text: Option<&str>, ctx: &Context) -> Result<Outcome, Failure> {
    if ctx.n != 2 {
        return Err(Failure::Usage("gl2 needs --n 2".into()));
    }
    let fm = parse_matrix(f, 2, &ctx.cfg)?;
    let beta = match beta_text {
        None => None,
        Some(b) => {
            let v = b
                .split(',')
                .map(|s| parse_scalar(s, &ctx.cfg))
                .collect::<Result<Vec<_>, _>>()?;
            match <[Scalar; 2]>::try_from(v) {
                Ok([b12, b22]) => Some((b12, b22)),
                Err(_) => return Err(Failure::Usage("--beta takes two entries: b12,b22".into())),
            }
        }
    };
    let mut lines = Vec::new();
    let mut value = Map::new();

    let ah = abcdefgh(&fm, &ctx.cfg)?;
    let mut coeffs = Map::new();
    for (name, v) in ah.named() {
        lines.push(format!("{name} = {}", scalar_str(v)));
        coeffs.insert(name.to_string(), scalar_json(v));
    }
    value.insert("abcdefgh".into(), Value::Object(coeffs));
    let disc = expansion_discrepancies(&fm, &ctx.cfg)?;
    for d in &disc {
        lines.push(format!("note: {d}"));
    }
    value.insert(
        "expansion_discrepancies".into(),
        json!(disc.iter().map(|d| d.name.to_string()).collect::<Vec<_>>()),
    );

    let m = m_det(&fm, &ctx.cfg)?;
    lines.push(format!("M = {}", scalar_str(&m)));
    value.insert("m".into(), scalar_json(&m));
    let det_f = fm[(0, 0)]
        .mul(&fm[(1, 1)])
        .sub(&fm[(0, 1)].mul(&fm[(1, 0)]));
    if det_f.is_zero() {
        let cf = m_closed_form(&fm, &ctx.cfg)?;
        lines.push(format!("M (closed form) = {}", scalar_str(&cf)));
        value.insert("m_closed_form".into(), scalar_json(&cf));

        let sols = find_linear_darboux(&fm, beta, &ctx.cfg)?;
        let mut list = Vec::new();
        for s in &sols {
            lines.push(format!(
                "D(p) = ({}) * p for p = {}",
                scalar_str(&s.q),
                format_expr(&s.p)
            ));
            list.push(json!({"q": scalar_str(&s.q), "p": format_expr(&s.p)}));
        }
        value.insert("linear_darboux".into(), Value::Array(list));
    }

    let theta = theta_constant(&fm, &ctx.cfg)?;
    let ok = theta.is_ok();
    match theta {
        Ok(th) => {
            lines.push(format!(
                "theta = ({}) / ({})",
                format_expr(&th.numerator),
                format_expr(&th.denominator)
            ));
            lines.push("D(theta) = 0".into());
            value.insert(
                "theta".into(),
                json!({"numerator": format_expr(&th.numerator), "denominator": format_expr(&th.denominator), "constant": true}),
            );
        }
        Err(reason) => {
            lines.push(format!("theta: not constructed ({reason})"));
            value.insert("theta".into(), json!({"rejected": reason.to_string()}));
        }
    }
    let mut o = Outcome::new("gl2_demo", Body::Value(Value::Object(value)), ok);
    o.lines = lines;
    o.sign = Some(Value::Null);
    o.inputs.insert("f".into(), json!(f));
    if let Some(b) = beta_text {
        o.inputs.insert("beta".into(), json!(b));
    }
    Ok(o)
}

fn gl2_factor(a: &DerivationArgs, ctx: &Context) -> Result<Outcome, Failure> {
    if ctx.n != 2 {
        return Err(Failure::Usage("gl2 needs --n 2".into()));
    }
    let spec = spec_of(a, ctx)?;
    let r = w1_factorization_check(&spec, &ctx.cfg)?;
    let mut lines = vec![
        format!("M = {}", diffpoly_str(&r.m)),
        format!("W_1 = {}", format_expr(&r.w1)),
    ];
    lines.push(match (r.holds, r.sign) {
        (true, Some(s)) => format!("W_1 = {}M det[X]^2", if s > 0 { "" } else { "-" }),
        (true, None) => "W_1 = M det[X]^2 = 0".into(),
        (false, _) => "W_1 is not +/- M det[X]^2".into(),
    });
    let mut o = Outcome::new(
        "factorization",
        Body::Value(json!({
            "holds": r.holds,
            "m": diffpoly_str(&r.m),
            "m_nonzero": !r.m.is_zero(),
            "w1": format_expr(&r.w1),
        })),
        r.holds,
    );
    o.lines = lines;
    o.sign = Some(r.sign.map_or(Value::Null, |s| json!(s)));
    o.inputs.insert("derivation".into(), describe_spec(a));
    Ok(o)
}
