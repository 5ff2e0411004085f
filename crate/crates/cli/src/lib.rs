//! Command-line front end for `symtangent`.
//!
//! Exit status: 0 when the verification is green, 1 when it fails, 2 on a
//! usage error. `--json` switches to a single JSON document whose shape is
//! fixed by the schemas in `schemas/`.

pub mod parse;
pub mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use symtangent::atlas::{normalize_three_points, random_admissible_triples, AtlasError, Center};
use symtangent::elliptic::{
    construct_sn_sections, construct_with_tails, h0_nonsplit_report, is_triangular, verify_ten3, TailModel, Verdict,
};
use symtangent::sections::{
    check_ggg, global_sections, is_globally_holomorphic, lift_all, random_general_centers, verify_paper_sections,
    GggOptions, LiftOutcome, PaperCase,
};
use symtangent::{BlowupConfig, FnPoint, HirzebruchAtlas, NormalForm, SectionAnsatz};
use thiserror::Error;

use parse::{parse_centers, parse_field, parse_field_any, parse_points, ParseError};
use report::*;

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Usage(String),
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "symtangent", version, about = "Exact checks for symmetric tangent sections on ruled surfaces")]
pub struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Surface {
    /// Hirzebruch surface `F_n`.
    Fn,
    /// `P^1 x P^1`.
    F0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TailMode {
    Symbolic,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    /// Third target at the `W1` point `(-1, 1)`.
    Displayed,
    /// Third target at the `W1` point `(-1, -1)`.
    BlowupCenters,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseId {
    #[value(name = "f0-m1")]
    F0M1,
    #[value(name = "f0-m2")]
    F0M2,
    #[value(name = "fn-m1")]
    FnM1,
    #[value(name = "fn-m2")]
    FnM2,
}

impl From<CaseId> for PaperCase {
    fn from(c: CaseId) -> Self {
        match c {
            CaseId::F0M1 => PaperCase::F0M1,
            CaseId::F0M2 => PaperCase::F0M2,
            CaseId::FnM1 => PaperCase::FnM1,
            CaseId::FnM2 => PaperCase::FnM2,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[arg(long, value_enum, default_value = "fn")]
    pub surface: Surface,
    /// Surface parameter; must be 0 or absent with `--surface f0`.
    #[arg(long)]
    pub n: Option<u32>,
    /// Symmetric power m.
    #[arg(long, default_value_t = 1)]
    pub sym: usize,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    /// Largest x-degree in the ansatz (default 2m + nm).
    #[arg(long)]
    pub bound_x: Option<u32>,
    /// Largest y-degree in the ansatz (default 2m).
    #[arg(long)]
    pub bound_y: Option<u32>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Basis of the global sections of Sym^m T inside the ansatz.
    Sections {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Lifting test of one field at blow-up centers.
    Lift {
        /// Field on W1, e.g. "y*(y-1)*dy".
        #[arg(long)]
        field: String,
        /// Degree of the field; inferred from the basis tokens when absent.
        #[arg(long)]
        sym: Option<usize>,
        /// Also report global holomorphy on F_n.
        #[arg(long)]
        n: Option<u32>,
        /// Centers separated by `;`, each `x,y` or `[p:q],[r:s:t]`.
        #[arg(long)]
        centers: String,
        /// Check the symmetric blow-up chart too.
        #[arg(long)]
        double_chart: bool,
    },
    /// Generic global generation of Sym^m T on the blow-up.
    Ggg {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[command(flatten)]
        bounds: BoundArgs,
        /// Centers separated by `;`; three seeded general points when absent.
        #[arg(long)]
        centers: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        double_chart: bool,
    },
    /// Re-check one of the hard-coded section families.
    PaperCase {
        #[arg(long, value_enum)]
        id: CaseId,
        /// Surface parameter for the F_n cases.
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Pole-order construction on the elliptic ruled surface S_n.
    Elliptic {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        sym: usize,
        #[arg(long, value_enum, default_value = "symbolic")]
        tail_mode: TailMode,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of tail coefficients in random mode (default m + 4).
        #[arg(long)]
        truncation: Option<u32>,
        /// Cancel against the instantiated tails (random mode only).
        #[arg(long)]
        tail_aware: bool,
    },
    /// h^0 arithmetic for the non-splitting argument on S_n.
    H0Report {
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Move three points of F_n onto a normal form.
    Normalize {
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Three points separated by `;`; a seeded admissible triple when absent.
        #[arg(long)]
        points: Option<String>,
        #[arg(long, value_enum, default_value = "displayed")]
        form: FormArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sections { .. } => "sections",
            Command::Lift { .. } => "lift",
            Command::Ggg { .. } => "ggg",
            Command::PaperCase { .. } => "paper-case",
            Command::Elliptic { .. } => "elliptic",
            Command::H0Report { .. } => "h0-report",
            Command::Normalize { .. } => "normalize",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Task {
    Sections { ansatz: SectionAnsatz },
    Lift { field: String, sym: Option<usize>, holomorphy: bool, centers: Vec<Center> },
    Ggg { ansatz: SectionAnsatz, centers: Option<Vec<Center>> },
    PaperCase { case: PaperCase },
    Elliptic { tails: TailModel, tail_aware: bool },
    H0Report,
    Normalize { points: Option<Vec<FnPoint>>, form: NormalForm },
}

/// Validated run configuration: every number is already exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: &'static str,
    pub task: Task,
    pub surface: Surface,
    pub n: u32,
    pub m: usize,
    pub seed: u64,
    pub format: OutputFormat,
    pub double_chart: bool,
}

fn surface_n(args: &SurfaceArgs) -> Result<u32, CliError> {
    match (args.surface, args.n) {
        (Surface::F0, None | Some(0)) => Ok(0),
        (Surface::F0, Some(n)) => Err(usage(format!("--surface f0 fixes n = 0, got --n {n}"))),
        (Surface::Fn, n) => Ok(n.unwrap_or(1)),
    }
}

fn ansatz(n: u32, m: usize, b: &BoundArgs) -> Result<SectionAnsatz, CliError> {
    if m == 0 {
        return Err(usage("--sym must be at least 1"));
    }
    let d = SectionAnsatz::default_for(n, m);
    Ok(SectionAnsatz::new(m, b.bound_x.unwrap_or(d.bound_x), b.bound_y.unwrap_or(d.bound_y)))
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<RunConfig, CliError> {
        let format = if cli.json { OutputFormat::Json } else { OutputFormat::Text };
        let mut cfg = RunConfig {
            command: cli.command.name(),
            task: Task::H0Report,
            surface: Surface::Fn,
            n: 1,
            m: 1,
            seed: DEFAULT_SEED,
            format,
            double_chart: false,
        };
        match &cli.command {
            Command::Sections { surface, bounds } => {
                cfg.surface = surface.surface;
                cfg.n = surface_n(surface)?;
                cfg.m = surface.sym;
                cfg.task = Task::Sections { ansatz: ansatz(cfg.n, cfg.m, bounds)? };
            }
            Command::Lift { field, sym, n, centers, double_chart } => {
                cfg.n = n.unwrap_or(0);
                cfg.m = sym.unwrap_or(0);
                cfg.double_chart = *double_chart;
                cfg.task = Task::Lift {
                    field: field.clone(),
                    sym: *sym,
                    holomorphy: n.is_some(),
                    centers: parse_centers(cfg.n, centers)?,
                };
            }
            Command::Ggg { surface, bounds, centers, seed, double_chart } => {
                cfg.surface = surface.surface;
                cfg.n = surface_n(surface)?;
                cfg.m = surface.sym;
                cfg.seed = *seed;
                cfg.double_chart = *double_chart;
                let centers = centers.as_deref().map(|c| parse_centers(cfg.n, c)).transpose()?;
                cfg.task = Task::Ggg { ansatz: ansatz(cfg.n, cfg.m, bounds)?, centers };
            }
            Command::PaperCase { id, n } => {
                let case = PaperCase::from(*id);
                cfg.n = case.surface_n(*n).map_err(usage)?;
                cfg.m = case.m();
                if !case.takes_n() {
                    cfg.surface = Surface::F0;
                }
                cfg.task = Task::PaperCase { case };
            }
            Command::Elliptic { n, sym, tail_mode, seed, truncation, tail_aware } => {
                cfg.n = *n;
                cfg.m = *sym;
                cfg.seed = *seed;
                let tails = match tail_mode {
                    TailMode::Symbolic => {
                        if truncation.is_some() || *tail_aware {
                            return Err(usage("--truncation and --tail-aware need --tail-mode random"));
                        }
                        TailModel::Symbolic
                    }
                    TailMode::Random => {
                        TailModel::Randomized { seed: *seed, truncation: truncation.unwrap_or(*sym as u32 + 4) }
                    }
                };
                cfg.task = Task::Elliptic { tails, tail_aware: *tail_aware };
            }
            Command::H0Report { n } => {
                cfg.n = *n;
                cfg.task = Task::H0Report;
            }
            Command::Normalize { n, points, form, seed } => {
                cfg.n = *n;
                cfg.seed = *seed;
                let points = points.as_deref().map(|p| parse_points(*n, p)).transpose()?;
                if let Some(p) = &points {
                    if p.len() != 3 {
                        return Err(usage(format!("normalize needs exactly three points, got {}", p.len())));
                    }
                }
                let form = match form {
                    FormArg::Displayed => NormalForm::Displayed,
                    FormArg::BlowupCenters => NormalForm::BlowupCenters,
                };
                cfg.task = Task::Normalize { points, form };
            }
        }
        Ok(cfg)
    }
}

/// A finished run: the report and whether its verdict is green.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub command: &'static str,
    pub passed: bool,
    pub report: Report,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.report.render_text(),
            OutputFormat::Json => {
                let env = Envelope {
                    command: self.command,
                    status: if self.passed { "pass" } else { "fail" },
                    report: &self.report,
                };
                let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }
}

fn surface_name(s: Surface) -> &'static str {
    match s {
        Surface::Fn => "fn",
        Surface::F0 => "f0",
    }
}

pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (passed, report) = match &cfg.task {
        Task::Sections { ansatz } => run_sections(cfg, *ansatz)?,
        Task::Lift { field, sym, holomorphy, centers } => run_lift(cfg, field, *sym, *holomorphy, centers)?,
        Task::Ggg { ansatz, centers } => run_ggg(cfg, *ansatz, centers.as_deref())?,
        Task::PaperCase { case } => run_paper_case(cfg, *case)?,
        Task::Elliptic { tails, tail_aware } => run_elliptic(cfg, tails, *tail_aware)?,
        Task::H0Report => run_h0(cfg)?,
        Task::Normalize { points, form } => run_normalize(cfg, points.as_deref(), *form)?,
    };
    Ok(Outcome { command: cfg.command, passed, report })
}

fn atlas(n: u32) -> Result<HirzebruchAtlas, CliError> {
    HirzebruchAtlas::new(n).map_err(usage)
}

fn run_sections(cfg: &RunConfig, ansatz: SectionAnsatz) -> Result<(bool, Report), CliError> {
    let basis = global_sections(&atlas(cfg.n)?, cfg.m, Some(ansatz)).map_err(usage)?;
    Ok((
        true,
        Report::Sections(SectionsReport {
            surface: surface_name(cfg.surface),
            n: cfg.n,
            m: cfg.m,
            bound_x: ansatz.bound_x,
            bound_y: ansatz.bound_y,
            unknowns: ansatz.len(),
            constraint_rows: basis.constraint_rows,
            dim: basis.dim(),
            saturated: basis.saturated,
            basis: basis.basis.iter().map(FieldJson::from).collect(),
        }),
    ))
}

fn run_lift(
    cfg: &RunConfig,
    text: &str,
    sym: Option<usize>,
    holomorphy: bool,
    centers: &[Center],
) -> Result<(bool, Report), CliError> {
    let expr = match sym {
        Some(m) => parse_field(text, m)?,
        None => parse_field_any(text)?,
    };
    let field = expr.field;
    let config = BlowupConfig::new(atlas(cfg.n)?, centers).map_err(usage)?;
    let holomorphic =
        if holomorphy { Some(is_globally_holomorphic(config.atlas(), &field).map_err(usage)?) } else { None };
    let outcomes = lift_all(&field, &config, cfg.double_chart).map_err(usage)?;
    let charts: Vec<LiftEntry> = config
        .charts(cfg.double_chart)
        .iter()
        .zip(outcomes)
        .map(|(chart, o)| LiftEntry {
            center: chart.center().to_canonical(),
            side: match chart.side() {
                symtangent::atlas::BlowupSide::Primary => "primary",
                symtangent::atlas::BlowupSide::Symmetric => "symmetric",
            },
            lifted: o.is_lifted(),
            obstruction: match o {
                LiftOutcome::Lifted(_) => None,
                LiftOutcome::Obstructed(w) => Some(Obstruction {
                    slot: w.slot,
                    pole_order_s: w.pole_order_s,
                    coefficient: w.coefficient.to_pretty(),
                }),
            },
        })
        .collect();
    let passed = charts.iter().all(|c| c.lifted) && holomorphic != Some(false);
    Ok((
        passed,
        Report::Lift(LiftReport {
            n: holomorphy.then_some(cfg.n),
            m: field.degree(),
            field: FieldJson::from(&field),
            holomorphic,
            double_chart: cfg.double_chart,
            charts,
        }),
    ))
}

fn run_ggg(cfg: &RunConfig, ansatz: SectionAnsatz, centers: Option<&[Center]>) -> Result<(bool, Report), CliError> {
    let seeded = centers.is_none();
    let centers = centers.map(<[Center]>::to_vec).unwrap_or_else(|| random_general_centers(3, cfg.seed));
    let options = GggOptions { ansatz: Some(ansatz), double_chart: cfg.double_chart, seed: cfg.seed };
    let cert = check_ggg(&atlas(cfg.n)?, cfg.m, &centers, &options).map_err(usage)?;
    Ok((
        cert.certified(),
        Report::Ggg(GggReport {
            surface: surface_name(cfg.surface),
            n: cfg.n,
            m: cfg.m,
            centers: centers.iter().map(Center::to_canonical).collect(),
            seeded_centers: seeded,
            seed: cfg.seed,
            double_chart: cfg.double_chart,
            basis_dim: cert.basis_dim,
            saturated: cert.saturated,
            lifted_dim: cert.lifted_dim(),
            generic_rank: cert.generic_rank,
            required_rank: cert.required_rank,
            sampled_rank: cert.sampled_rank,
            certified: cert.certified(),
            witnesses: cert.witnesses.iter().map(FieldJson::from).collect(),
        }),
    ))
}

fn run_paper_case(cfg: &RunConfig, case: PaperCase) -> Result<(bool, Report), CliError> {
    let n = if case.takes_n() { cfg.n } else { 0 };
    let r = verify_paper_sections(case, n).map_err(usage)?;
    Ok((
        r.green(),
        Report::PaperCase(PaperCaseJson {
            id: case.id().to_string(),
            n: r.n,
            m: r.m,
            centers: r.centers.iter().map(Center::to_canonical).collect(),
            basis_dim: r.basis_dim,
            lifted_dim: r.lifted_dim,
            generic_rank: r.generic_rank,
            required_rank: r.m + 1,
            green: r.green(),
            thetas: r
                .checks
                .iter()
                .map(|c| ThetaJson {
                    name: c.name.clone(),
                    field: FieldJson::from(&c.field),
                    holomorphic: c.holomorphic,
                    in_solver_space: c.in_solver_space,
                    lifts: c.lifts.clone(),
                    passed: c.passed(),
                })
                .collect(),
        }),
    ))
}

fn run_elliptic(cfg: &RunConfig, tails: &TailModel, tail_aware: bool) -> Result<(bool, Report), CliError> {
    let secs = if tail_aware { construct_with_tails(cfg.n, cfg.m, tails) } else { construct_sn_sections(cfg.n, cfg.m) }
        .map_err(usage)?;
    let mut sections = Vec::new();
    let mut worst = Verdict::Certified;
    for s in &secs {
        let cert = verify_ten3(s, tails).map_err(usage)?;
        worst = match (worst, cert.verdict) {
            (Verdict::NotCertified, _) | (_, Verdict::NotCertified) => Verdict::NotCertified,
            (Verdict::Flagged, _) | (_, Verdict::Flagged) => Verdict::Flagged,
            _ => Verdict::Certified,
        };
        sections.push(CertificateJson {
            start: s.start,
            coefficients: s.coeffs.iter().map(|c| c.to_canonical()).collect(),
            max_order: cert.max_order(),
            per_q_orders: cert.per_q_orders,
            tail_flags: cert
                .tail_flags
                .iter()
                .map(|f| FlagJson { q: f.q, p: f.p, potential_order: f.potential_order })
                .collect(),
            verdict: cert.verdict.name(),
        });
    }
    let triangular = is_triangular(&secs);
    let (seed, truncation) = match tails {
        TailModel::Symbolic => (None, None),
        TailModel::Randomized { seed, truncation } => (Some(*seed), Some(*truncation)),
    };
    // A flagged certificate is reported, not failed: its orders are within
    // bound and the flag names the rows that depend on the tails.
    let passed = triangular && worst != Verdict::NotCertified;
    Ok((
        passed,
        Report::Elliptic(EllipticReport {
            n: cfg.n,
            m: cfg.m,
            tail_mode: tails.name(),
            seed,
            truncation,
            tail_aware,
            triangular,
            sections,
            verdict: worst.name(),
        }),
    ))
}

fn run_h0(cfg: &RunConfig) -> Result<(bool, Report), CliError> {
    let r = h0_nonsplit_report(cfg.n).map_err(usage)?;
    Ok((
        r.contradiction(),
        Report::H0(H0Json {
            n: r.n,
            relative_degrees: r.relative.bundles.iter().map(|b| b.degree).collect(),
            relative_h0: r.relative.h0.clone(),
            h0_relative: r.h0_relative,
            h0_base: r.h0_base,
            h0_total_cited: r.h0_total_cited,
            split_total: r.split_total(),
            contradiction: r.contradiction(),
        }),
    ))
}

fn run_normalize(cfg: &RunConfig, points: Option<&[FnPoint]>, form: NormalForm) -> Result<(bool, Report), CliError> {
    if cfg.n == 0 {
        return Err(usage("normalize needs n >= 1"));
    }
    let seeded = points.is_none();
    let triple: [FnPoint; 3] = match points {
        Some(p) => [p[0].clone(), p[1].clone(), p[2].clone()],
        None => random_admissible_triples(cfg.n, 1, cfg.seed).remove(0),
    };
    if let Some(p) = triple.iter().find(|p| !p.in_u()) {
        return Err(usage(format!("point {} lies outside U", p.to_canonical())));
    }
    for i in 0..3 {
        for j in 0..i {
            let (a, b) = (&triple[i].base, &triple[j].base);
            if &a[0] * &b[1] == &a[1] * &b[0] {
                return Err(usage("two points share a fiber"));
            }
        }
    }
    let targets = form.targets(cfg.n);
    let mut report = NormalizeReport {
        n: cfg.n,
        form: match form {
            NormalForm::Displayed => "displayed",
            NormalForm::BlowupCenters => "blowup-centers",
        },
        seeded_points: seeded,
        seed: cfg.seed,
        points: triple.iter().map(FnPoint::to_canonical).collect(),
        targets: targets.iter().map(FnPoint::to_canonical).collect(),
        element: None,
        images: Vec::new(),
        exact: false,
        error: None,
    };
    match normalize_three_points(cfg.n, &triple, form) {
        Ok(g) => {
            let images = triple.iter().map(|p| g.act(p)).collect::<Result<Vec<_>, _>>().map_err(usage)?;
            report.exact = images.iter().zip(&targets).all(|(a, b)| a.same_point(b));
            report.images = images.iter().map(FnPoint::to_canonical).collect();
            report.element = Some(ElementJson::from(&g));
        }
        Err(AtlasError::DegenerateConfiguration(why)) => report.error = Some(why),
        Err(e) => return Err(usage(e)),
    }
    Ok((report.exact, Report::Normalize(report)))
}

/// Parses arguments, runs, prints; returns the process exit code.
pub fn main_with(args: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = RunConfig::from_cli(&cli).and_then(|cfg| run(&cfg).map(|o| (cfg.format, o)));
    match outcome {
        Ok((format, o)) => {
            print!("{}", o.render(format));
            o.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
