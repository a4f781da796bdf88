use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use kerrep::behavior::{self, KernelRep, Trajectory, Window};
use kerrep::duality::{dualize_filtered, dualize_tower, double_dual_check, tower_double_dual_check};
use kerrep::freealg::{self, FreeRing};
use kerrep::groebner::{self, ModulePresentation};
use kerrep::smith;
use kerrep::{FieldSpec, PolyMatrix};

use crate::format::{self, fmt_filtration, fmt_matrix_rows, fmt_tower, fmt_trajectory, Body, ParseError, Problem};

#[derive(Parser, Debug)]
#[command(name = "kerrep", version, about = "Kernel representations of linear shift-invariant systems")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reduced Gröbner basis of the column module of a matrix.
    Gb { file: PathBuf },
    /// Generators of the syzygies of the columns of a matrix.
    Syz { file: PathBuf },
    /// Free resolution of the cokernel of a matrix, with exactness certificates.
    Resolve { file: PathBuf },
    /// Smith normal form of a univariate matrix.
    Smith { file: PathBuf },
    /// Dual of a matrix (its module presentation), filtration or tower.
    Dualize { file: PathBuf },
    /// Truncated solution space of a kernel representation.
    Solve {
        file: PathBuf,
        /// Window bounds T1,...,Tn (a single value is used in every direction).
        #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
        window: Vec<u32>,
    },
    /// Check a trajectory against a kernel representation.
    Member { system: PathBuf, trajectory: PathBuf },
    /// Decide B(b) ⊆ B(a).
    Contains { a: PathBuf, b: PathBuf },
    /// Lift H0 to H1 with H0 F = G H1, for G in M and F in N.
    Lift { m: PathBuf, n: PathBuf, h0: PathBuf },
    /// Free rank and invariant factors of a univariate behavior.
    Decompose { file: PathBuf },
    /// Graded dimensions of the kernel of abelianization.
    NcKernelDims {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "QQ")]
        field: String,
    },
    /// Graded dimensions of span{w g s}; defaults to the commutator z1 z2 - z2 z1.
    NcSpanDims {
        /// An `ncmatrix 1 k` file whose entries are the generators.
        file: Option<PathBuf>,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "QQ")]
        field: String,
    },
    /// Orbit truncation ranks of the triangular sequence.
    DemoDensity {
        #[arg(long, default_value_t = 10)]
        max_t: u32,
        #[arg(long, default_value = "QQ")]
        field: String,
    },
    /// Laurent-tail encoding of univariate scalar trajectories.
    Codec {
        #[command(subcommand)]
        op: CodecOp,
    },
}

#[derive(Subcommand, Debug)]
pub enum CodecOp {
    Encode {
        file: PathBuf,
    },
    Decode {
        text: String,
        #[arg(long)]
        len: usize,
        #[arg(long, default_value = "QQ")]
        field: String,
    },
}

#[derive(Debug)]
pub enum CliError {
    Io { path: PathBuf, message: String },
    Parse { path: PathBuf, error: ParseError },
    Input(String),
    Op(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, message } => write!(f, "{}: {}", path.display(), message),
            CliError::Parse { path, error } => {
                write!(f, "{}:{}:{}: {}", path.display(), error.line, error.column, error.message)
            }
            CliError::Input(m) | CliError::Op(m) => f.write_str(m),
        }
    }
}

fn op_err(e: impl fmt::Display) -> CliError {
    CliError::Op(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    text: String,
    result: Value,
    certificates: Value,
    /// `Some(false)` for a negative decision.
    decision: Option<bool>,
}

impl Report {
    fn new(text: String, result: Value) -> Self {
        Report { text, result, certificates: json!({}), decision: None }
    }

    fn certs(mut self, c: Value) -> Self {
        self.certificates = c;
        self
    }

    fn decide(mut self, d: bool) -> Self {
        self.decision = Some(d);
        self
    }
}

#[derive(Default)]
struct Clock {
    parse: Duration,
}

impl Clock {
    fn load(&mut self, path: &Path) -> Result<Problem, CliError> {
        let start = Instant::now();
        let bytes = std::fs::read(path).map_err(|e| CliError::Io { path: path.into(), message: e.to_string() })?;
        let p = format::parse_problem_bytes(&bytes).map_err(|error| CliError::Parse { path: path.into(), error });
        self.parse += start.elapsed();
        p
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let mut clock = Clock::default();
    let start = Instant::now();
    let report = execute(&cli.command, &mut clock);
    let total = start.elapsed();
    match report {
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}\n", e) },
        Ok(r) => {
            let code = if r.decision == Some(false) { 1 } else { 0 };
            let stdout = if cli.json {
                let v = json!({
                    "command": command_name(&cli.command),
                    "inputs": inputs(&cli.command),
                    "result": r.result,
                    "certificates": r.certificates,
                    "timings": {
                        "parse_ms": clock.parse.as_secs_f64() * 1e3,
                        "compute_ms": total.saturating_sub(clock.parse).as_secs_f64() * 1e3,
                    },
                });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
            } else {
                r.text
            };
            Outcome { code, stdout, stderr: String::new() }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Gb { .. } => "gb",
        Command::Syz { .. } => "syz",
        Command::Resolve { .. } => "resolve",
        Command::Smith { .. } => "smith",
        Command::Dualize { .. } => "dualize",
        Command::Solve { .. } => "solve",
        Command::Member { .. } => "member",
        Command::Contains { .. } => "contains",
        Command::Lift { .. } => "lift",
        Command::Decompose { .. } => "decompose",
        Command::NcKernelDims { .. } => "nc-kernel-dims",
        Command::NcSpanDims { .. } => "nc-span-dims",
        Command::DemoDensity { .. } => "demo-density",
        Command::Codec { .. } => "codec",
    }
}

fn inputs(c: &Command) -> Value {
    let p = |p: &PathBuf| p.display().to_string();
    match c {
        Command::Gb { file }
        | Command::Syz { file }
        | Command::Resolve { file }
        | Command::Smith { file }
        | Command::Dualize { file }
        | Command::Decompose { file } => json!({ "file": p(file) }),
        Command::Solve { file, window } => json!({ "file": p(file), "window": window }),
        Command::Member { system, trajectory } => json!({ "system": p(system), "trajectory": p(trajectory) }),
        Command::Contains { a, b } => json!({ "a": p(a), "b": p(b) }),
        Command::Lift { m, n, h0 } => json!({ "m": p(m), "n": p(n), "h0": p(h0) }),
        Command::NcKernelDims { n, degree, field } => json!({ "n": n, "degree": degree, "field": field }),
        Command::NcSpanDims { file, degree, field } => {
            json!({ "file": file.as_ref().map(p), "degree": degree, "field": field })
        }
        Command::DemoDensity { max_t, field } => json!({ "max_t": max_t, "field": field }),
        Command::Codec { op: CodecOp::Encode { file } } => json!({ "op": "encode", "file": p(file) }),
        Command::Codec { op: CodecOp::Decode { text, len, field } } => {
            json!({ "op": "decode", "text": text, "len": len, "field": field })
        }
    }
}

/// `QQ`, `GF p`, `GFp` or `GF:p`.
pub fn parse_field_arg(s: &str) -> Result<FieldSpec, CliError> {
    let s = s.trim();
    if s == "QQ" {
        return Ok(FieldSpec::rationals());
    }
    let digits = s
        .strip_prefix("GF")
        .map(|r| r.trim_start_matches([':', ' ']))
        .ok_or_else(|| CliError::Input(format!("unknown field `{}`; expected QQ or GF p", s)))?;
    let p: u64 = digits.parse().map_err(|_| CliError::Input(format!("bad modulus in `{}`", s)))?;
    FieldSpec::prime(p).map_err(|_| CliError::Input(format!("{} is not prime", p)))
}

fn expect_matrix(p: &Problem, path: &Path) -> Result<PolyMatrix, CliError> {
    match &p.body {
        Body::Matrix(m) => Ok(m.clone()),
        other => Err(CliError::Input(format!("{}: expected a matrix, found a {}", path.display(), other.kind()))),
    }
}

fn same_ring(a: &Problem, b: &Problem, what: &str) -> Result<(), CliError> {
    if a.field != b.field || a.vars != b.vars {
        return Err(CliError::Input(format!("{} disagree on the field or the variables", what)));
    }
    Ok(())
}

fn mat_json(m: &PolyMatrix, names: &[String]) -> Value {
    let rows: Vec<Vec<String>> =
        (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).fmt_with(names)).collect()).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": rows })
}

fn mat_block(name: &str, m: &PolyMatrix, names: &[String]) -> String {
    format!("{} {} x {}\n{}", name, m.rows(), m.cols(), fmt_matrix_rows(m, names))
}

fn traj_json(w: &Trajectory) -> Value {
    let vals: Vec<Vec<String>> = w.values.iter().map(|v| v.iter().map(format::fmt_scalar).collect()).collect();
    json!({ "window": w.window.bounds, "values": vals })
}

fn join_dims(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn execute(cmd: &Command, clock: &mut Clock) -> Result<Report, CliError> {
    match cmd {
        Command::Gb { file } => {
            let p = clock.load(file)?;
            let g = expect_matrix(&p, file)?;
            let gens = g.columns();
            let gb = groebner::buchberger(p.ring(), g.rows(), &gens, p.order).map_err(op_err)?;
            let lines: Vec<String> = gb.basis.iter().map(|v| v.fmt_with(&p.vars)).collect();
            let mut text = format!("basis {}\n", lines.len());
            for l in &lines {
                text.push_str(l);
                text.push('\n');
            }
            let transform_ok = if gb.basis.is_empty() {
                true
            } else {
                let bm = PolyMatrix::from_columns(p.ring(), g.rows(), &gb.basis).map_err(op_err)?;
                g.mul(&gb.transform).map_err(op_err)? == bm
            };
            let certs = json!({
                "is_groebner": gb.is_groebner(),
                "is_reduced": gb.is_reduced(),
                "transform_verified": transform_ok,
                "transform": mat_json(&gb.transform, &p.vars),
            });
            Ok(Report::new(text, json!({ "basis": lines })).certs(certs))
        }
        Command::Syz { file } => {
            let p = clock.load(file)?;
            let g = expect_matrix(&p, file)?;
            let s = groebner::syzygies(p.ring(), g.rows(), &g.columns(), p.order).map_err(op_err)?;
            let zero = s.cols() == 0 || g.mul(&s).map_err(op_err)?.is_zero();
            let text = format!("matrix {} {}\n{}", s.rows(), s.cols(), fmt_matrix_rows(&s, &p.vars));
            Ok(Report::new(text, mat_json(&s, &p.vars)).certs(json!({ "product_zero": zero })))
        }
        Command::Resolve { file } => {
            let p = clock.load(file)?;
            let g = expect_matrix(&p, file)?;
            let maps = groebner::free_resolution(&ModulePresentation::new(g), p.order).map_err(op_err)?;
            let certs = groebner::certify_resolution(&maps, p.order).map_err(op_err)?;
            let mut text = format!("length {}\n", maps.len());
            for (i, m) in maps.iter().enumerate() {
                text.push_str(&mat_block(&format!("G{}", i + 1), m, &p.vars));
            }
            for c in &certs {
                text.push_str(&format!(
                    "exact at G{}: product zero {}, kernel in image {}\n",
                    c.index + 1,
                    c.product_zero,
                    c.kernel_in_image
                ));
            }
            let result: Vec<Value> = maps.iter().map(|m| mat_json(m, &p.vars)).collect();
            let cj: Vec<Value> = certs
                .iter()
                .map(|c| json!({ "map": c.index + 1, "product_zero": c.product_zero, "kernel_in_image": c.kernel_in_image }))
                .collect();
            Ok(Report::new(text, json!(result)).certs(json!(cj)))
        }
        Command::Smith { file } => {
            let p = clock.load(file)?;
            let g = expect_matrix(&p, file)?;
            let s = smith::smith_normal_form(&g).map_err(op_err)?;
            let verified = s.u.mul(&g).and_then(|ug| ug.mul(&s.v)).map_err(op_err)? == s.d;
            let factors: Vec<String> = s.factors.iter().map(|f| f.fmt_with(&p.vars)).collect();
            let mut text = format!("invariant factors: {}\n", if factors.is_empty() { "(none)".into() } else { factors.join(", ") });
            text.push_str(&mat_block("D", &s.d, &p.vars));
            text.push_str(&mat_block("U", &s.u, &p.vars));
            text.push_str(&mat_block("V", &s.v, &p.vars));
            let result = json!({
                "factors": factors,
                "d": mat_json(&s.d, &p.vars),
                "u": mat_json(&s.u, &p.vars),
                "v": mat_json(&s.v, &p.vars),
            });
            Ok(Report::new(text, result).certs(json!({ "ugv_equals_d": verified })))
        }
        Command::Dualize { file } => {
            let p = clock.load(file)?;
            match &p.body {
                Body::Matrix(g) => {
                    let pres = behavior::dual_presentation(&KernelRep::new(g.clone()));
                    let s = pres.fmt_with(&p.vars);
                    Ok(Report::new(format!("{}\n", s), json!({ "presentation": s })))
                }
                Body::Filtration(f) => {
                    let t = dualize_filtered(f).map_err(op_err)?;
                    let back = dualize_tower(&t).map_err(op_err)?;
                    let dd = double_dual_check(f).map_err(op_err)?;
                    let text = format!("{}double dual: {}\n", fmt_tower(&t), dd);
                    let certs = json!({ "double_dual": dd, "round_trip_dims": back.dims() == f.dims() });
                    Ok(Report::new(text, json!({ "tower": fmt_tower(&t) })).certs(certs).decide(dd))
                }
                Body::Tower(t) => {
                    let f = dualize_tower(t).map_err(op_err)?;
                    let dd = tower_double_dual_check(t).map_err(op_err)?;
                    let text = format!("{}double dual: {}\n", fmt_filtration(&f), dd);
                    let certs = json!({ "double_dual": dd });
                    Ok(Report::new(text, json!({ "filtration": fmt_filtration(&f) })).certs(certs).decide(dd))
                }
                other => Err(CliError::Input(format!("cannot dualize a {}", other.kind()))),
            }
        }
        Command::Solve { file, window } => {
            let p = clock.load(file)?;
            let g = expect_matrix(&p, file)?;
            let n = p.vars.len();
            let bounds = match window.len() {
                1 => vec![window[0]; n],
                k if k == n => window.clone(),
                k => return Err(CliError::Input(format!("window has {} bounds, expected 1 or {}", k, n))),
            };
            let win = Window::new(bounds);
            if win.len() > 200_000 {
                return Err(CliError::Input("window has more than 200000 points".into()));
            }
            let rep = KernelRep::new(g);
            let (dim, basis) = behavior::truncated_solution_space(&rep, &win).map_err(op_err)?;
            let mut text = format!("dim {}\n", dim);
            let mut verified = true;
            for (k, w) in basis.iter().enumerate() {
                text.push_str(&format!("basis {}\n{}", k + 1, fmt_trajectory(w)));
                match behavior::check_membership(w, &rep) {
                    Ok(r) => verified &= r.passed(),
                    Err(behavior::BehaviorError::VacuousWindow) => {}
                    Err(e) => return Err(op_err(e)),
                }
            }
            let result = json!({ "dim": dim, "basis": basis.iter().map(traj_json).collect::<Vec<_>>() });
            Ok(Report::new(text, result).certs(json!({ "basis_members": verified })))
        }
        Command::Member { system, trajectory } => {
            let ps = clock.load(system)?;
            let pt = clock.load(trajectory)?;
            same_ring(&ps, &pt, "system and trajectory")?;
            match (&ps.body, &pt.body) {
                (Body::Matrix(g), Body::Trajectory(w)) => {
                    let r = behavior::check_membership(w, &KernelRep::new(g.clone())).map_err(op_err)?;
                    let mut text = format!("member: {}\nchecked {}\n", r.passed(), r.checked);
                    let vio: Vec<Value> = r
                        .violations
                        .iter()
                        .map(|v| {
                            let pt = v.point.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
                            text.push_str(&format!("violation: column {} at point {}\n", v.column + 1, pt));
                            json!({ "column": v.column + 1, "point": v.point })
                        })
                        .collect();
                    let res = json!({ "member": r.passed(), "checked": r.checked, "violations": vio });
                    Ok(Report::new(text, res).decide(r.passed()))
                }
                (Body::NcMatrix(g), Body::SSet { values: Some(w), .. }) => {
                    let r = freealg::nc_check_membership(w, g).map_err(op_err)?;
                    let mut text = format!("member: {}\nchecked {}\n", r.passed(), r.checked);
                    let vio: Vec<Value> = r
                        .violations
                        .iter()
                        .map(|v| {
                            text.push_str(&format!("violation: column {} at state {}\n", v.column + 1, v.state));
                            json!({ "column": v.column + 1, "state": v.state })
                        })
                        .collect();
                    let res = json!({ "member": r.passed(), "checked": r.checked, "violations": vio });
                    Ok(Report::new(text, res).decide(r.passed()))
                }
                (a, b) => Err(CliError::Input(format!(
                    "member needs a matrix with a trajectory, or an ncmatrix with a valued S-set; got {} and {}",
                    a.kind(),
                    b.kind()
                ))),
            }
        }
        Command::Contains { a, b } => {
            let pa = clock.load(a)?;
            let pb = clock.load(b)?;
            same_ring(&pa, &pb, "the two systems")?;
            let ga = KernelRep::new(expect_matrix(&pa, a)?);
            let gb = KernelRep::new(expect_matrix(&pb, b)?);
            let yes = behavior::behavior_contains(&ga, &gb, pa.order).map_err(op_err)?;
            Ok(Report::new(format!("B(b) ⊆ B(a): {}\n", yes), json!({ "contains": yes })).decide(yes))
        }
        Command::Lift { m, n, h0 } => {
            let pm = clock.load(m)?;
            let pn = clock.load(n)?;
            let ph = clock.load(h0)?;
            same_ring(&pm, &pn, "M and N")?;
            same_ring(&pm, &ph, "M and H0")?;
            let g = KernelRep::new(expect_matrix(&pm, m)?);
            let f = KernelRep::new(expect_matrix(&pn, n)?);
            let h = expect_matrix(&ph, h0)?;
            match behavior::lift_hom(&g, &f, &h, pm.order).map_err(op_err)? {
                Some(h1) => {
                    let verified = h.mul(&f.g).map_err(op_err)? == g.g.mul(&h1).map_err(op_err)?;
                    let text = mat_block("H1", &h1, &pm.vars);
                    Ok(Report::new(text, json!({ "h1": mat_json(&h1, &pm.vars) }))
                        .certs(json!({ "h0_f_equals_g_h1": verified }))
                        .decide(true))
                }
                None => Ok(Report::new("no lift\n".into(), json!({ "h1": null })).decide(false)),
            }
        }
        Command::Decompose { file } => {
            let p = clock.load(file)?;
            let rep = KernelRep::new(expect_matrix(&p, file)?);
            let d = behavior::decompose_1d(&rep).map_err(op_err)?;
            let factors: Vec<String> = d.factors.iter().map(|f| f.fmt_with(&p.vars)).collect();
            let text = format!(
                "free rank {}\ninvariant factors: {}\ntorsion dim {}\n",
                d.free_rank,
                if factors.is_empty() { "(none)".into() } else { factors.join(", ") },
                d.torsion_dim
            );
            let result = json!({ "free_rank": d.free_rank, "factors": factors, "torsion_dim": d.torsion_dim });
            let certs = json!({ "invariant_count": d.invariant_count, "generic_rank": smith::generic_rank(&rep.g) });
            Ok(Report::new(text, result).certs(certs))
        }
        Command::NcKernelDims { n, degree, field } => {
            let field = parse_field_arg(field)?;
            check_nc_size(*n, *degree)?;
            let pieces = freealg::truncated_abelianization_kernel(field, *n, *degree);
            let dims: Vec<usize> = pieces.iter().map(|p| p.dim).collect();
            let formula: Vec<usize> = (0..=*degree).map(|m| n.pow(m as u32) - binomial(m + n - 1, n - 1)).collect();
            let text = format!("{}\n", join_dims(&dims));
            let certs = json!({ "counting_formula": formula, "agrees": formula == dims });
            Ok(Report::new(text, json!({ "dims": dims })).certs(certs))
        }
        Command::NcSpanDims { file, degree, field } => {
            let (ring, names, gens) = match file {
                Some(path) => {
                    let p = clock.load(path)?;
                    let Body::NcMatrix(m) = &p.body else {
                        return Err(CliError::Input(format!("{}: expected an ncmatrix", path.display())));
                    };
                    if m.rows != 1 {
                        return Err(CliError::Input("nc-span-dims needs a single-row ncmatrix".into()));
                    }
                    (m.ring, p.vars.clone(), m.entries.clone())
                }
                None => {
                    let ring = FreeRing::new(parse_field_arg(field)?, 2);
                    (ring, vec!["z1".into(), "z2".into()], vec![freealg::commutator(ring, 0, 1)])
                }
            };
            check_nc_size(ring.nvars, *degree)?;
            let pieces = freealg::left_span_dim(ring, &gens, *degree);
            let dims: Vec<usize> = pieces.iter().map(|p| p.dim).collect();
            let products: Vec<usize> = pieces.iter().map(|p| p.products).collect();
            let gtext: Vec<String> = gens.iter().map(|g| g.fmt_with(&names)).collect();
            let text = format!(
                "generators: {}\ndims {}\nproducts {}\n",
                gtext.join(", "),
                join_dims(&dims),
                join_dims(&products)
            );
            Ok(Report::new(text, json!({ "generators": gtext, "dims": dims, "products": products })))
        }
        Command::DemoDensity { max_t, field } => {
            let field = parse_field_arg(field)?;
            if *max_t > 200 {
                return Err(CliError::Input("max-t is limited to 200".into()));
            }
            let w = behavior::triangular_sequence(field, 2 * (*max_t as usize + 1));
            let mut text = String::new();
            let mut ranks = Vec::new();
            for t in 0..=*max_t {
                let r = behavior::orbit_truncation_rank(&w, t).map_err(op_err)?;
                text.push_str(&format!("T={} rank {} of {}\n", t, r, t + 1));
                ranks.push(json!({ "t": t, "rank": r, "width": t + 1 }));
            }
            Ok(Report::new(text, json!({ "ranks": ranks })))
        }
        Command::Codec { op: CodecOp::Encode { file } } => {
            let p = clock.load(file)?;
            let Body::Trajectory(w) = &p.body else {
                return Err(CliError::Input(format!("{}: expected a trajectory", file.display())));
            };
            let s = behavior::laurent_encode(w).map_err(op_err)?;
            Ok(Report::new(format!("{}\n", s), json!({ "tail": s })))
        }
        Command::Codec { op: CodecOp::Decode { text, len, field } } => {
            let field = parse_field_arg(field)?;
            if *len > 200_000 {
                return Err(CliError::Input("len is limited to 200000".into()));
            }
            let w = behavior::laurent_decode(field, text, *len).map_err(op_err)?;
            Ok(Report::new(fmt_trajectory(&w), traj_json(&w)))
        }
    }
}

fn check_nc_size(n: usize, degree: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Input("need at least one letter".into()));
    }
    let words = (0..=degree).try_fold(0usize, |acc, m| n.checked_pow(m as u32).and_then(|w| acc.checked_add(w)));
    match words {
        Some(w) if w <= 4096 => Ok(()),
        _ => Err(CliError::Input(format!("{} letters up to degree {} is too many words", n, degree))),
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
