//! `walker` — classify Walker-type Lorentzian metrics, compute screen
//! holonomy, construct metrics from Lie-algebraic data, and solve the
//! associated curvature-endomorphism spaces.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use walker_core::{
    algebra_props, bspace, builtin_example, builtin_rep, check_pp_equivalences, classify,
    codifferential_check, fd_curvature, galaev_metric, infinitesimal_holonomy, is_berger,
    is_weak_berger, killing_form, kspace, loop_transport, parse_polynomial, ricci, riemann,
    rspace, span_residual, structure_constants, symmetric_metric, CoreError,
    LieAlgebraRep, LoopSpec, ParabolicElement, PhiFamily, Polynomial, QMatrix, Scalar,
    SymmetricPair, WalkerMetric, WeakCurvatureSpace,
};

const VERSION: &str = concat!("walker ", env!("CARGO_PKG_VERSION"));

#[derive(Parser)]
#[command(name = "walker", version, about = "Walker metric classification, screen holonomy and Lie-algebra constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a metric spec (Brinkmann / llhc / pr / pp / plane wave / ...)
    Classify {
        /// Path to a MetricSpec JSON file
        spec: PathBuf,
    },
    /// Compute the infinitesimal screen and full holonomy of a metric spec
    Holonomy {
        /// Path to a MetricSpec JSON file
        spec: PathBuf,
        /// Evaluation point as comma-separated rationals x,y1..yn,z (default origin)
        #[arg(long)]
        point: Option<String>,
        /// Highest covariant-derivative order of the curvature to span
        #[arg(long)]
        max_order: Option<usize>,
        /// Cross-check with finite differences and a numeric holonomy loop
        #[arg(long)]
        numeric_check: bool,
    },
    /// Construct a metric spec from Lie-algebraic data
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Curvature-endomorphism spaces and predicates for a Lie algebra spec
    Liealg {
        #[command(subcommand)]
        kind: LiealgKind,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Polynomial metric from a list of weak curvature endomorphisms
    Galaev {
        /// Path to a JSON file {"n": .., "q": [[matrix; n]; N]}
        qspec: PathBuf,
        /// Polynomial f of the metric (default 0)
        #[arg(long, short)]
        f: Option<String>,
        /// Output MetricSpec path
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Metric of a symmetric pair g = k + m
    Symmetric {
        /// Built-in pair name (sl3_so3, su2_u1) or a path to a pair JSON
        pair: String,
        #[arg(long, short)]
        f: Option<String>,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Built-in example metric (ike96, thesis, galaev05, pp_quadratic, pr_basic)
    Example {
        name: String,
        #[arg(long, short)]
        f: Option<String>,
        #[arg(long, short)]
        output: PathBuf,
    },
}

#[derive(Subcommand)]
enum LiealgKind {
    /// Space Q: R^n -> g with vanishing cyclic sum (weak curvature endomorphisms)
    Bspace { algspec: String },
    /// Space R: Λ²R^n -> g with the first Bianchi identity
    Kspace { algspec: String },
    /// Submodule span{R(x, ·)} of the bspace
    Rspace { algspec: String },
    /// Weak-Berger and Berger predicates
    Weakberger { algspec: String },
    /// Killing form from structure constants
    Killing { algspec: String },
}

// ---------------------------------------------------------------------------
// error handling / exit codes

enum CliError {
    /// malformed input: bad JSON, bad polynomial, unknown name (exit 2)
    Spec(String),
    /// valid input outside a mathematical precondition (exit 3)
    Math(String),
    /// numeric integration failed to converge (exit 4)
    Numeric(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Spec(_) => 2,
            CliError::Math(_) => 3,
            CliError::Numeric(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Spec(m) | CliError::Math(m) | CliError::Numeric(m) => m,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> CliError {
        match e {
            CoreError::Parse(_)
            | CoreError::UnknownVariable(..)
            | CoreError::ArityMismatch(..)
            | CoreError::UnknownExample(_)
            | CoreError::DependsOnX(_) => CliError::Spec(e.to_string()),
            CoreError::NonConvergence(_) => CliError::Numeric(e.to_string()),
            _ => CliError::Math(e.to_string()),
        }
    }
}

fn spec_err(field: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Spec(format!("field `{field}`: {e}"))
}

// ---------------------------------------------------------------------------
// MetricSpec (on-disk format)

#[derive(Serialize, Deserialize)]
struct MetricSpec {
    n: usize,
    f: String,
    u: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    g: Option<Vec<Vec<String>>>,
    #[serde(default = "default_convention")]
    convention: String,
}

fn default_convention() -> String {
    "component".into()
}

impl MetricSpec {
    fn load(path: &PathBuf) -> Result<MetricSpec, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Spec(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Spec(format!("invalid MetricSpec JSON in {}: {e}", path.display())))
    }

    fn ingest(&self) -> Result<WalkerMetric, CliError> {
        let n = self.n;
        let f = parse_polynomial(&self.f, n).map_err(|e| spec_err("f", e))?;
        if self.u.len() != n {
            return Err(CliError::Spec(format!(
                "field `u`: expected {n} polynomials, got {}",
                self.u.len()
            )));
        }
        let half = Scalar::from_frac(1, 2);
        let mut u = Vec::with_capacity(n);
        for (i, s) in self.u.iter().enumerate() {
            let p = parse_polynomial(s, n).map_err(|e| spec_err(&format!("u[{i}]"), e))?;
            u.push(match self.convention.as_str() {
                "component" => p,
                "walker-half" => p.scale(&half),
                other => {
                    return Err(CliError::Spec(format!(
                        "field `convention`: unknown value `{other}` (use \"component\" or \"walker-half\")"
                    )))
                }
            });
        }
        let g = match &self.g {
            None => None,
            Some(rows) => {
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(CliError::Spec(format!("field `g`: expected an {n}x{n} matrix")));
                }
                let mut out = Vec::with_capacity(n);
                for (i, row) in rows.iter().enumerate() {
                    let mut orow = Vec::with_capacity(n);
                    for (j, s) in row.iter().enumerate() {
                        orow.push(
                            parse_polynomial(s, n).map_err(|e| spec_err(&format!("g[{i}][{j}]"), e))?,
                        );
                    }
                    out.push(orow);
                }
                Some(out)
            }
        };
        Ok(WalkerMetric::new(n, f, u, g)?)
    }

    fn from_metric(w: &WalkerMetric) -> MetricSpec {
        let n = w.n();
        let g = if w.has_identity_fiber() {
            None
        } else {
            Some(
                (0..n)
                    .map(|i| (0..n).map(|j| w.g(i + 1, j + 1).to_string()).collect())
                    .collect(),
            )
        };
        MetricSpec {
            n,
            f: w.f().to_string(),
            u: w.u().iter().map(|p| p.to_string()).collect(),
            g,
            convention: default_convention(),
        }
    }
}

// ---------------------------------------------------------------------------
// Lie algebra / symmetric pair specs

#[derive(Deserialize)]
struct AlgebraSpec {
    #[serde(default)]
    builtin: Option<String>,
    #[serde(default)]
    n: Option<usize>,
    /// matrices as arrays of rows of scalar strings
    #[serde(default)]
    basis: Option<Vec<Vec<Vec<String>>>>,
    /// structure constants c[i][j][l] as scalar strings (for `killing`)
    #[serde(default)]
    structure: Option<Vec<Vec<Vec<String>>>>,
    /// built-in symmetric pair name (for `killing`)
    #[serde(default)]
    builtin_pair: Option<String>,
}

fn parse_scalar(field: &str, s: &str) -> Result<Scalar, CliError> {
    let p = parse_polynomial(s, 0).map_err(|e| spec_err(field, e))?;
    if !p.is_constant() {
        return Err(CliError::Spec(format!("field `{field}`: `{s}` is not a constant")));
    }
    Ok(p.constant_term())
}

impl AlgebraSpec {
    fn load(arg: &str) -> Result<AlgebraSpec, CliError> {
        // accepted forms: a bare builtin name, inline JSON, or a JSON path
        let trimmed = arg.trim_start();
        if trimmed.starts_with('{') {
            return serde_json::from_str(trimmed)
                .map_err(|e| CliError::Spec(format!("invalid inline algebra spec JSON: {e}")));
        }
        if !arg.ends_with(".json") && !arg.contains('/') {
            return Ok(AlgebraSpec {
                builtin: Some(arg.to_string()),
                n: None,
                basis: None,
                structure: None,
                builtin_pair: None,
            });
        }
        let text = std::fs::read_to_string(arg)
            .map_err(|e| CliError::Spec(format!("cannot read {arg}: {e}")))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Spec(format!("invalid algebra spec JSON in {arg}: {e}")))
    }

    fn rep(&self) -> Result<LieAlgebraRep, CliError> {
        if let Some(name) = &self.builtin {
            return Ok(builtin_rep(name)?);
        }
        let n = self
            .n
            .ok_or_else(|| CliError::Spec("field `n`: missing".into()))?;
        let basis = self
            .basis
            .as_ref()
            .ok_or_else(|| CliError::Spec("field `basis`: missing".into()))?;
        let mats = basis
            .iter()
            .enumerate()
            .map(|(t, rows)| parse_matrix(&format!("basis[{t}]"), rows, n, n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LieAlgebraRep::new(n, mats)?)
    }

    fn structure_constants(&self) -> Result<Vec<Vec<Vec<Scalar>>>, CliError> {
        if let Some(name) = &self.builtin_pair {
            let pair = builtin_pair(name)?;
            return Ok(pair.structure);
        }
        if let Some(raw) = &self.structure {
            let d = raw.len();
            let mut out = vec![vec![vec![Scalar::zero(); d]; d]; d];
            for i in 0..d {
                if raw[i].len() != d || raw[i].iter().any(|r| r.len() != d) {
                    return Err(CliError::Spec(format!(
                        "field `structure[{i}]`: expected a {d}x{d} block"
                    )));
                }
                for j in 0..d {
                    for l in 0..d {
                        out[i][j][l] =
                            parse_scalar(&format!("structure[{i}][{j}][{l}]"), &raw[i][j][l])?;
                    }
                }
            }
            return Ok(out);
        }
        // derive from the matrix basis
        let rep = self.rep()?;
        Ok(structure_constants(&rep.basis)?)
    }
}

fn builtin_pair(name: &str) -> Result<SymmetricPair, CliError> {
    match name {
        "sl3_so3" => Ok(SymmetricPair::sl3_so3()),
        "su2_u1" => Ok(SymmetricPair::su2_u1()),
        other => Err(CliError::Spec(format!("unknown builtin symmetric pair `{other}`"))),
    }
}

fn parse_matrix(
    field: &str,
    rows: &[Vec<String>],
    nr: usize,
    nc: usize,
) -> Result<QMatrix, CliError> {
    if rows.len() != nr || rows.iter().any(|r| r.len() != nc) {
        return Err(CliError::Spec(format!("field `{field}`: expected a {nr}x{nc} matrix")));
    }
    let mut m = QMatrix::zeros(nr, nc);
    for i in 0..nr {
        for j in 0..nc {
            m[(i, j)] = parse_scalar(&format!("{field}[{i}][{j}]"), &rows[i][j])?;
        }
    }
    Ok(m)
}

fn matrix_json(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m[(i, j)].to_string()).collect())
        .collect()
}

// ---------------------------------------------------------------------------
// report types

#[derive(Serialize)]
struct ClassificationJson {
    brinkmann: bool,
    llhc: bool,
    pr_wave: bool,
    pp_wave: bool,
    plane_wave: bool,
    cahen_wallach: bool,
    ricci_isotropic: bool,
    recurrence_form: Vec<String>,
    witnesses: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct ScreenJson {
    n: usize,
    dim: usize,
    bracket_closed: bool,
    abelian: bool,
    solvable: bool,
    two_step_solvable: bool,
    commutant_dim: usize,
    killing_negative_definite: bool,
    generators: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize)]
struct ParabolicJson {
    a: String,
    rot: Vec<Vec<String>>,
    v: Vec<String>,
}

#[derive(Serialize)]
struct FullHolonomyJson {
    dim: usize,
    stabilized: bool,
    orders_used: usize,
    elements: Vec<ParabolicJson>,
}

#[derive(Serialize)]
struct NumericJson {
    fd_max_rel_error: f64,
    isometry_defect: f64,
    screen_membership_residual: f64,
}

#[derive(Serialize)]
struct Report {
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<ClassificationJson>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    checks: BTreeMap<String, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    screen_algebra: Option<ScreenJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    full_holonomy: Option<FullHolonomyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    numeric: Option<NumericJson>,
    warnings: Vec<String>,
}

impl Report {
    fn empty() -> Report {
        Report {
            version: VERSION,
            classification: None,
            checks: BTreeMap::new(),
            screen_algebra: None,
            full_holonomy: None,
            numeric: None,
            warnings: Vec::new(),
        }
    }
}

// ---------------------------------------------------------------------------
// commands

fn cmd_classify(spec_path: &PathBuf) -> Result<Report, CliError> {
    let spec = MetricSpec::load(spec_path)?;
    let w = spec.ingest()?;
    let c = classify(&w)?;
    let mut report = Report::empty();
    let mut checks = BTreeMap::new();
    if c.brinkmann {
        match check_pp_equivalences(&w) {
            Ok(eq) => {
                checks.insert("pp_antisymmetrization_vanishes".into(), eq.antisymmetrization_vanishes);
                checks.insert("pp_reconstruction_matches".into(), eq.reconstruction_matches);
                checks.insert("pp_all_equivalences_hold".into(), eq.all_hold());
            }
            Err(e) => report.warnings.push(format!("pp equivalence checks skipped: {e}")),
        }
    }
    if w.has_identity_fiber() {
        // Ricci-isotropy criterion: the codifferential expression equals the
        // (dz, dy_i) Ricci row
        let ric = ricci(&w)?;
        let codiff = codifferential_check(&PhiFamily::of(&w));
        let agree = (1..=w.n()).all(|i| ric[w.iz()][i] == codiff[i - 1]);
        checks.insert("codifferential_matches_ricci_row".into(), agree);
    }
    report.classification = Some(ClassificationJson {
        brinkmann: c.brinkmann,
        llhc: c.llhc,
        pr_wave: c.pr_wave,
        pp_wave: c.pp_wave,
        plane_wave: c.plane_wave,
        cahen_wallach: c.cahen_wallach,
        ricci_isotropic: c.ricci_isotropic,
        recurrence_form: c.recurrence_form.components.iter().map(|p| p.to_string()).collect(),
        witnesses: c.witnesses,
    });
    report.checks = checks;
    Ok(report)
}

fn parse_point(raw: &Option<String>, n: usize) -> Result<Vec<Scalar>, CliError> {
    match raw {
        None => Ok(vec![Scalar::zero(); n + 2]),
        Some(s) => {
            let parts: Vec<&str> = s.split(',').collect();
            if parts.len() != n + 2 {
                return Err(CliError::Spec(format!(
                    "flag `--point`: expected {} comma-separated values, got {}",
                    n + 2,
                    parts.len()
                )));
            }
            parts
                .iter()
                .map(|p| parse_scalar("point", p.trim()))
                .collect()
        }
    }
}

fn effective_max_order(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("WALKER_MAX_ORDER") {
        Ok(v) => v
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::Spec(format!("env `WALKER_MAX_ORDER`: `{v}` is not a non-negative integer"))),
        Err(_) => Ok(None),
    }
}

fn cmd_holonomy(
    spec_path: &PathBuf,
    point: &Option<String>,
    max_order: Option<usize>,
    numeric_check: bool,
) -> Result<Report, CliError> {
    let spec = MetricSpec::load(spec_path)?;
    let w = spec.ingest()?;
    if !w.has_identity_fiber() {
        return Err(CliError::Math(
            "holonomy requires the flat fiber metric g = identity".into(),
        ));
    }
    let pt = parse_point(point, w.n())?;
    let max_order = effective_max_order(max_order)?;
    let hol = infinitesimal_holonomy(&w, &pt, max_order)?;

    let mut report = Report::empty();
    if !hol.stabilized {
        report.warnings.push(format!(
            "span did not stabilize within derivative order {}; raise --max-order or WALKER_MAX_ORDER",
            hol.orders_used
        ));
    }
    let props = algebra_props(&hol.screen.generators);
    let killing_negative_definite = match structure_constants(&hol.screen.generators) {
        Ok(sc) => killing_form(&sc).is_negative_definite(),
        Err(_) => false,
    };
    report.screen_algebra = Some(ScreenJson {
        n: w.n(),
        dim: hol.screen.dim,
        bracket_closed: hol.screen.is_bracket_closed(),
        abelian: props.abelian,
        solvable: props.solvable,
        two_step_solvable: props.two_step_solvable,
        commutant_dim: props.commutant_dim,
        killing_negative_definite,
        generators: hol.screen.generators.iter().map(matrix_json).collect(),
    });
    report.full_holonomy = Some(FullHolonomyJson {
        dim: hol.full.len(),
        stabilized: hol.stabilized,
        orders_used: hol.orders_used,
        elements: hol
            .full
            .iter()
            .map(|el: &ParabolicElement| ParabolicJson {
                a: el.a.to_string(),
                rot: matrix_json(&el.rot),
                v: el.v.iter().map(Scalar::to_string).collect(),
            })
            .collect(),
    });
    if numeric_check {
        report.numeric = Some(run_numeric_check(&w, &pt, &hol.screen.generators)?);
    }
    Ok(report)
}

fn run_numeric_check(
    w: &WalkerMetric,
    pt: &[Scalar],
    screen_gens: &[QMatrix],
) -> Result<NumericJson, CliError> {
    let n = w.n();
    let dim = n + 2;
    let point_f: Vec<f64> = pt.iter().map(Scalar::to_f64).collect();
    // finite-difference curvature vs the symbolic tensor
    let fd = fd_curvature(w, &point_f, 1e-4)?;
    let sym = riemann(w)?;
    let mut max_rel = 0.0f64;
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                for d in 0..dim {
                    let s = sym.get(&[a as u8, b as u8, c as u8, d as u8]).eval_f64(&point_f);
                    let f = fd[a][b][c][d];
                    let denom = s.abs().max(1.0);
                    max_rel = max_rel.max((s - f).abs() / denom);
                }
            }
        }
    }
    // holonomy loop in the first screen plane through the point
    let plane = if n >= 2 { (1, 2) } else { (1, n + 1) };
    let spec = LoopSpec::new(plane, point_f, 0.5, 4096);
    let t = loop_transport(w, &spec)?;
    let gens: Vec<Vec<Vec<f64>>> = screen_gens
        .iter()
        .map(|m| {
            (0..n)
                .map(|i| (0..n).map(|j| m[(i, j)].to_f64()).collect())
                .collect()
        })
        .collect();
    let residual = if gens.is_empty() {
        // empty algebra: the screen log itself must vanish
        t.screen_log
            .iter()
            .flatten()
            .fold(0.0f64, |acc, v| acc.max(v.abs()))
    } else {
        span_residual(&t.screen_log, &gens)
    };
    Ok(NumericJson {
        fd_max_rel_error: max_rel,
        isometry_defect: t.isometry_defect,
        screen_membership_residual: residual,
    })
}

#[derive(Deserialize)]
struct GalaevSpec {
    n: usize,
    q: Vec<Vec<Vec<Vec<String>>>>,
}

fn cmd_construct(kind: &ConstructKind) -> Result<(), CliError> {
    let (w, output) = match kind {
        ConstructKind::Example { name, f, output } => {
            let fpoly = match f {
                Some(s) => {
                    let n = if matches!(name.as_str(), "pp_quadratic" | "pr_basic") { 2 } else { 5 };
                    Some(parse_polynomial(s, n).map_err(|e| spec_err("f", e))?)
                }
                None => None,
            };
            (builtin_example(name, fpoly)?, output)
        }
        ConstructKind::Symmetric { pair, f, output } => {
            let p = if pair.ends_with(".json") {
                let text = std::fs::read_to_string(pair)
                    .map_err(|e| CliError::Spec(format!("cannot read {pair}: {e}")))?;
                #[derive(Deserialize)]
                struct PairSpec {
                    dim_k: usize,
                    dim_m: usize,
                    structure: Vec<Vec<Vec<String>>>,
                }
                let raw: PairSpec = serde_json::from_str(&text)
                    .map_err(|e| CliError::Spec(format!("invalid pair JSON in {pair}: {e}")))?;
                let d = raw.dim_k + raw.dim_m;
                let mut sc = vec![vec![vec![Scalar::zero(); d]; d]; d];
                for i in 0..d {
                    for j in 0..d {
                        for l in 0..d {
                            sc[i][j][l] = parse_scalar(
                                &format!("structure[{i}][{j}][{l}]"),
                                &raw.structure[i][j][l],
                            )?;
                        }
                    }
                }
                SymmetricPair::new(raw.dim_k, raw.dim_m, sc)?
            } else {
                builtin_pair(pair)?
            };
            let n = p.dim_m;
            let fpoly = match f {
                Some(s) => parse_polynomial(s, n).map_err(|e| spec_err("f", e))?,
                None => Polynomial::zero(n),
            };
            (symmetric_metric(&p, fpoly)?, output)
        }
        ConstructKind::Galaev { qspec, f, output } => {
            let text = std::fs::read_to_string(qspec)
                .map_err(|e| CliError::Spec(format!("cannot read {}: {e}", qspec.display())))?;
            let raw: GalaevSpec = serde_json::from_str(&text)
                .map_err(|e| CliError::Spec(format!("invalid galaev spec JSON: {e}")))?;
            let n = raw.n;
            let qs = raw
                .q
                .iter()
                .enumerate()
                .map(|(a, mats)| {
                    if mats.len() != n {
                        return Err(CliError::Spec(format!(
                            "field `q[{a}]`: expected {n} matrices, got {}",
                            mats.len()
                        )));
                    }
                    mats.iter()
                        .enumerate()
                        .map(|(k, rows)| parse_matrix(&format!("q[{a}][{k}]"), rows, n, n))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let fpoly = match f {
                Some(s) => parse_polynomial(s, n).map_err(|e| spec_err("f", e))?,
                None => Polynomial::zero(n),
            };
            (galaev_metric(n, &qs, fpoly)?, output)
        }
    };
    let spec = MetricSpec::from_metric(&w);
    let json = serde_json::to_string_pretty(&spec)
        .map_err(|e| CliError::Spec(format!("serialization failed: {e}")))?;
    std::fs::write(output, json + "\n")
        .map_err(|e| CliError::Spec(format!("cannot write {}: {e}", output.display())))?;
    println!("wrote MetricSpec (n={}) to {}", w.n(), output.display());
    Ok(())
}

fn weak_space_json(space: &WeakCurvatureSpace) -> serde_json::Value {
    serde_json::json!(space
        .basis
        .iter()
        .map(|q| q.iter().map(matrix_json).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn cmd_liealg(kind: &LiealgKind) -> Result<(), CliError> {
    let out = match kind {
        LiealgKind::Bspace { algspec } => {
            let g = AlgebraSpec::load(algspec)?.rep()?;
            let b = bspace(&g);
            serde_json::json!({
                "kind": "bspace",
                "n": g.n,
                "algebra_dim": g.dim(),
                "dim": b.dim(),
                "basis": weak_space_json(&b),
            })
        }
        LiealgKind::Kspace { algspec } => {
            let g = AlgebraSpec::load(algspec)?.rep()?;
            let k = kspace(&g);
            serde_json::json!({
                "kind": "kspace",
                "n": g.n,
                "algebra_dim": g.dim(),
                "dim": k.dim(),
                "basis": k.basis.iter()
                    .map(|e| e.iter().map(matrix_json).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            })
        }
        LiealgKind::Rspace { algspec } => {
            let g = AlgebraSpec::load(algspec)?.rep()?;
            let r = rspace(&kspace(&g));
            serde_json::json!({
                "kind": "rspace",
                "n": g.n,
                "algebra_dim": g.dim(),
                "dim": r.dim(),
                "basis": weak_space_json(&r),
            })
        }
        LiealgKind::Weakberger { algspec } => {
            let g = AlgebraSpec::load(algspec)?.rep()?;
            serde_json::json!({
                "kind": "weakberger",
                "n": g.n,
                "algebra_dim": g.dim(),
                "weak_berger": is_weak_berger(&g),
                "berger": is_berger(&g),
            })
        }
        LiealgKind::Killing { algspec } => {
            let sc = AlgebraSpec::load(algspec)?.structure_constants()?;
            let b = killing_form(&sc);
            serde_json::json!({
                "kind": "killing",
                "dim": sc.len(),
                "matrix": matrix_json(&b),
                "negative_definite": b.is_negative_definite(),
            })
        }
    };
    println!("{}", serde_json::to_string_pretty(&out).unwrap());
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Classify { spec } => {
            let report = cmd_classify(spec)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(())
        }
        Command::Holonomy {
            spec,
            point,
            max_order,
            numeric_check,
        } => {
            let report = cmd_holonomy(spec, point, *max_order, *numeric_check)?;
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(())
        }
        Command::Construct { kind } => cmd_construct(kind),
        Command::Liealg { kind } => cmd_liealg(kind),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
