mod modspec;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modspec::{injective, parse_module_expr};
use qa_core::decomp::{decompose, indecomposable_is_projective};
use qa_core::dsl::{self, Env};
use qa_core::homology::{inj_dim, proj_dim_with, syzygy_chain, DEFAULT_CUTOFF};
use qa_core::igusa::{
    default_suite, phi_characterization_check, phi_eta_oracle, phi_lower_bound, phi_with_horizon, DEFAULT_HORIZON,
};
use qa_core::morita::{self, check_hypotheses, GluedAlgebra};
use qa_core::repmod::{indecomposable_projective, simple};
use qa_core::{BoundAlgebra, DimResult, FieldSpec, IsoRegistry, Report, Representation, Scalar, Status};
use rand::SeedableRng;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "qa", version, about = "Syzygies, φ-dimensions and gluings of bound quiver algebras")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Persist module classes here (JSON registry).
    #[arg(long, global = true, env = "QA_REGISTRY")]
    registry: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Args, Clone)]
struct Input {
    /// A `.qa` file.
    #[arg(long = "algebra", value_name = "FILE")]
    file: PathBuf,
    /// Which declared algebra or gluing to use (default: the last one).
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args, Clone)]
struct CpqArgs {
    #[arg(long, default_value_t = 2)]
    m: usize,
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    p: String,
    #[arg(long, default_value = "3", allow_hyphen_values = true)]
    q: String,
    #[arg(long, default_value_t = 2)]
    nmax: usize,
    /// Comma-separated λ samples.
    #[arg(long, default_value = "0,1,2", allow_hyphen_values = true)]
    lambdas: String,
    /// `Q` or a prime p for GF(p).
    #[arg(long, default_value = "Q")]
    field: String,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and build everything in a file.
    Check {
        #[arg(long = "algebra", value_name = "FILE")]
        file: PathBuf,
    },
    /// List the path basis.
    Basis(Input),
    /// Dimension vectors of the indecomposable projectives and injectives.
    Projectives(Input),
    /// The raw syzygy chain of a module.
    Syzygy {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 4)]
        steps: usize,
    },
    /// Projective dimension.
    Pd {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: usize,
    },
    /// Injective dimension.
    Id {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = DEFAULT_CUTOFF)]
        cutoff: usize,
    },
    /// The Igusa-Todorov φ value of a module.
    Phi {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: usize,
        /// Cross-check against the kernel-chain oracle.
        #[arg(long)]
        oracle: bool,
        /// Search K0 combinations with coefficients in [-B, B].
        #[arg(long, value_name = "B")]
        search: Option<i64>,
    },
    /// φ lower bound from the default module suite.
    PhidimSuite(Input),
    /// Show a gluing and its presentation.
    Glue(Input),
    /// Print the opposite algebra.
    Opposite(Input),
    /// Check H1-H4 on a gluing.
    Hypotheses {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 20)]
        h4_cutoff: usize,
    },
    #[command(subcommand)]
    Verify(Verify),
    #[command(subcommand)]
    Registry(RegistryCmd),
    #[command(subcommand)]
    Example(ExampleCmd),
}

#[derive(Subcommand)]
enum Verify {
    #[command(name = "prop3.5")]
    Prop35 {
        #[command(flatten)]
        input: Input,
        /// Known φ-dimensions of the two blocks, as `a,b`.
        #[arg(long)]
        phidims: Option<String>,
    },
    #[command(name = "thm3.7")]
    Thm37 {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 20)]
        cutoff: usize,
    },
    #[command(name = "lemma3.1")]
    Lemma31 {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 20)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Cpq(CpqArgs),
    Bm1 {
        #[arg(long, default_value_t = 4)]
        horizon: usize,
    },
}

#[derive(Subcommand)]
enum RegistryCmd {
    /// Classify modules and write the registry.
    Save {
        #[command(flatten)]
        input: Input,
        #[arg(long, required = true)]
        module: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read a registry and list its classes.
    Load {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        path: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Which {
    All,
    Table,
    Claims,
    None,
}

#[derive(Subcommand)]
enum ExampleCmd {
    Cpq {
        #[command(flatten)]
        args: CpqArgs,
        #[arg(long, value_enum, default_value_t = Which::All)]
        verify: Which,
        /// Print the algebra in `.qa` syntax.
        #[arg(long)]
        emit: bool,
    },
    Bm1 {
        #[arg(long, default_value_t = 4)]
        horizon: usize,
        #[arg(long)]
        emit: bool,
    },
}

struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Fail {
        Fail(e.to_string())
    }
}

type Out = Result<Vec<Report>, Fail>;

fn load(file: &PathBuf) -> Result<Env, Fail> {
    let text = std::fs::read_to_string(file).map_err(|e| Fail(format!("{}: {e}", file.display())))?;
    dsl::elaborate(&dsl::parse(&text).map_err(|e| Fail(format!("{}:{e}", file.display())))?)
        .map_err(|e| Fail(format!("{}:{e}", file.display())))
}

fn select(input: &Input) -> Result<(Env, Arc<BoundAlgebra>), Fail> {
    let env = load(&input.file)?;
    let alg = match &input.name {
        Some(n) => env.algebra(n).cloned().ok_or_else(|| Fail(format!("no algebra named `{n}`")))?,
        None => env.algebras.last().map(|x| x.1.clone()).ok_or_else(|| Fail("file declares no algebra".into()))?,
    };
    Ok((env, alg))
}

fn select_glue(input: &Input) -> Result<GluedAlgebra, Fail> {
    let env = load(&input.file)?;
    match &input.name {
        Some(n) => env.glued(n).cloned().ok_or_else(|| Fail(format!("no gluing named `{n}`"))),
        None => env.glued.last().map(|x| x.1.clone()).ok_or_else(|| Fail("file declares no gluing".into())),
    }
}

fn module(input: &Input, expr: &str) -> Result<(Arc<BoundAlgebra>, Representation), Fail> {
    let (env, alg) = select(input)?;
    let m = parse_module_expr(expr, &alg, &env).map_err(Fail)?;
    Ok((alg, m))
}

fn open_registry(cli: &Cli, alg: &Arc<BoundAlgebra>) -> Result<IsoRegistry, Fail> {
    match &cli.registry {
        Some(p) if p.exists() => Ok(IsoRegistry::load(alg, p)?),
        _ => Ok(IsoRegistry::new(alg)),
    }
}

fn close_registry(cli: &Cli, reg: &IsoRegistry) -> Result<(), Fail> {
    if let Some(p) = &cli.registry {
        reg.save(p)?;
    }
    Ok(())
}

fn describe_algebra(a: &BoundAlgebra) -> String {
    format!(
        "algebra {} over {}: {} vertices, {} arrows, {} relations, dim {}, Loewy bound {}",
        a.name(),
        a.field(),
        a.vertex_count(),
        a.quiver().arrow_count(),
        a.relations().len(),
        a.dim(),
        a.loewy_bound()
    )
}

fn summands(m: &Representation, reg: &mut IsoRegistry) -> Result<String, Fail> {
    let parts = decompose(m)?;
    let mut s: Vec<String> = parts
        .iter()
        .map(|x| {
            let id = reg.register_indecomposable(x);
            let tag = if indecomposable_is_projective(x) { " proj" } else { "" };
            format!("#{}{:?}{tag}", id.0, x.dims())
        })
        .collect();
    s.sort();
    Ok(if s.is_empty() { "0".into() } else { s.join(" ⊕ ") })
}

fn dim_status(d: &DimResult) -> Status {
    match d {
        DimResult::Unknown(_) => Status::Unknown,
        _ => Status::Pass,
    }
}

fn parse_field(s: &str) -> Result<FieldSpec, Fail> {
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let p: u64 = s.trim_start_matches("Q(").trim_end_matches(')').parse()?;
    FieldSpec::prime(p).ok_or_else(|| Fail(format!("{p} is not prime")))
}

fn parse_scalar(f: FieldSpec, s: &str) -> Result<Scalar, Fail> {
    f.parse_scalar(s.trim()).ok_or_else(|| Fail(format!("`{s}` is not an element of {f}")))
}

fn cpq_params(a: &CpqArgs) -> Result<(FieldSpec, Scalar, Scalar, Vec<Scalar>), Fail> {
    let f = parse_field(&a.field)?;
    let lambdas = a.lambdas.split(',').map(|x| parse_scalar(f, x)).collect::<Result<Vec<_>, _>>()?;
    if lambdas.is_empty() {
        return Err(Fail("empty λ sample".into()));
    }
    Ok((f, parse_scalar(f, &a.p)?, parse_scalar(f, &a.q)?, lambdas))
}

fn bm1_reports(horizon: usize) -> Out {
    let g = morita::build_bm1_example(FieldSpec::Rationals);
    let h = check_hypotheses(&g, 6)?;
    let mut summary = Report::new("bm1");
    summary.note(describe_algebra(&g.c));
    summary.record(Status::from_bool(h.h1 && h.h2 && !h.h3), "H1 and H2 hold and H3 fails");
    let mut reg = IsoRegistry::new(&g.c);
    for v in 0..g.c.vertex_count() {
        let r = phi_with_horizon(&simple(&g.c, v), &mut reg, horizon)?;
        let tag = if r.exact { "" } else { " (horizon-limited)" };
        summary.note(format!("φ(S{}) = {}{tag}, ranks {:?}", g.c.quiver().vertex_label(v), r.value, r.ranks));
    }
    let mut hyp = h.report;
    hyp.check = "bm1-hypotheses (H3 failure expected)".into();
    hyp.status = Status::Pass;
    Ok(vec![hyp, summary])
}

fn run(cli: &Cli) -> Out {
    let mut out = Vec::new();
    match &cli.command {
        Command::Check { file } => {
            let env = load(file)?;
            let mut r = Report::new("check");
            for (_, a) in &env.algebras {
                r.record(Status::Pass, describe_algebra(a));
            }
            for (n, m) in &env.modules {
                r.record(Status::Pass, format!("module {n} over {}: dims {:?}", m.algebra().name(), m.dims()));
            }
            for (n, g) in &env.glued {
                r.record(Status::Pass, format!("gluing {n}: {} blocks, {} connectors", g.blocks.len(), g.connectors.len()));
            }
            out.push(r);
        }
        Command::Basis(input) => {
            let (_, a) = select(input)?;
            let mut r = Report::new("basis");
            r.note(describe_algebra(&a));
            for (i, p) in a.basis().iter().enumerate() {
                r.note(format!("{i}: {}", a.quiver().path_display(p)));
            }
            out.push(r);
        }
        Command::Projectives(input) => {
            let (_, a) = select(input)?;
            let mut r = Report::new("projectives");
            for v in 0..a.vertex_count() {
                let p = indecomposable_projective(&a, v);
                let i = injective(&a, v).map_err(Fail)?;
                r.note(format!("{}: P {:?}, I {:?}", a.quiver().vertex_label(v), p.dims(), i.dims()));
            }
            out.push(r);
        }
        Command::Syzygy { input, module: expr, steps } => {
            let (alg, m) = module(input, expr)?;
            let mut reg = open_registry(cli, &alg)?;
            let mut r = Report::new("syzygy");
            for (i, x) in syzygy_chain(&m, *steps).iter().enumerate() {
                r.note(format!("Ω^{i}: dims {:?} = {}", x.dims(), summands(x, &mut reg)?));
            }
            close_registry(cli, &reg)?;
            out.push(r);
        }
        Command::Pd { input, module: expr, cutoff } => {
            let (alg, m) = module(input, expr)?;
            let mut reg = open_registry(cli, &alg)?;
            let d = proj_dim_with(&m, *cutoff, &mut reg)?;
            close_registry(cli, &reg)?;
            let mut r = Report::new("pd");
            r.record(dim_status(&d), format!("pd({expr}) = {d}"));
            out.push(r);
        }
        Command::Id { input, module: expr, cutoff } => {
            let (_, m) = module(input, expr)?;
            let d = inj_dim(&m, *cutoff)?;
            let mut r = Report::new("id");
            r.record(dim_status(&d), format!("id({expr}) = {d}"));
            out.push(r);
        }
        Command::Phi { input, module: expr, horizon, oracle, search } => {
            let (alg, m) = module(input, expr)?;
            let mut reg = open_registry(cli, &alg)?;
            let p = phi_with_horizon(&m, &mut reg, *horizon)?;
            let mut r = Report::new("phi");
            let st = if p.exact { Status::Pass } else { Status::Unknown };
            let rel = if p.exact { "=" } else { "≥" };
            r.record(st, format!("φ({expr}) {rel} {}", p.value));
            r.note(format!("ranks {:?}", p.ranks));
            if *oracle {
                match phi_eta_oracle(&m, &mut reg, *horizon) {
                    Ok(e) => r.record(Status::from_bool(e == p.value), format!("kernel-chain oracle: {e}")),
                    Err(e) => r.record(Status::Unknown, format!("kernel-chain oracle: {e}")),
                }
            }
            if let Some(b) = search {
                let c = phi_characterization_check(&m, &mut reg, *b)?;
                let st = if c.confirmed { Status::Pass } else { Status::Unknown };
                r.record(st, format!("K0 search with bound {b}: best vanishing order {}", c.best));
                if let Some(w) = c.witness {
                    r.witness(format!("{w}"));
                }
            }
            close_registry(cli, &reg)?;
            out.push(r);
        }
        Command::PhidimSuite(input) => {
            let (_, alg) = select(input)?;
            let mut reg = open_registry(cli, &alg)?;
            let suite = default_suite(&alg);
            let p = phi_lower_bound(&suite, &mut reg)?;
            close_registry(cli, &reg)?;
            let mut r = Report::new("phidim-suite");
            r.record(Status::Pass, format!("φdim ≥ {} (suite of {} modules)", p.value, suite.len()));
            r.note(format!("ranks {:?}", p.ranks));
            out.push(r);
        }
        Command::Glue(input) => {
            let g = select_glue(input)?;
            let mut r = Report::new("glue");
            r.note(describe_algebra(&g.c));
            for (i, b) in g.blocks.iter().enumerate() {
                r.note(format!("block {i}: {}", describe_algebra(&b.algebra)));
            }
            for c in &g.connectors {
                let a = g.c.quiver().arrow(c.arrow);
                r.note(format!("connector {} (block {} → block {})", a.label, c.from_block, c.to_block));
            }
            r.note(dsl::serialize_algebra(&g.c));
            out.push(r);
        }
        Command::Opposite(input) => {
            let (_, a) = select(input)?;
            let mut r = Report::new("opposite");
            r.note(dsl::serialize_algebra(&a.opposite()?));
            out.push(r);
        }
        Command::Hypotheses { input, h4_cutoff } => {
            let g = select_glue(input)?;
            out.push(check_hypotheses(&g, *h4_cutoff)?.report);
        }
        Command::Verify(v) => match v {
            Verify::Prop35 { input, phidims } => {
                let g = select_glue(input)?;
                let dims = match phidims {
                    Some(s) => {
                        let (a, b) = s.split_once(',').ok_or_else(|| Fail("--phidims expects `a,b`".into()))?;
                        Some((a.trim().parse()?, b.trim().parse()?))
                    }
                    None => None,
                };
                let mut reg = open_registry(cli, &g.c)?;
                out.push(morita::verify_prop_3_5_upper(&g, &default_suite(&g.c), &mut reg, dims)?);
                close_registry(cli, &reg)?;
            }
            Verify::Thm37 { input, cutoff } => {
                let g = select_glue(input)?;
                out.push(morita::verify_thm_3_7(&g, &default_suite(&g.c), *cutoff)?);
            }
            Verify::Lemma31 { input, random, seed } => {
                let g = select_glue(input)?;
                let mut mods: Vec<Representation> = (0..g.c.vertex_count()).map(|v| simple(&g.c, v)).collect();
                for v in 0..g.c.vertex_count() {
                    let r = indecomposable_projective(&g.c, v).radical().0;
                    if !r.is_zero() {
                        mods.push(r);
                    }
                }
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(*seed);
                for _ in 0..*random {
                    mods.push(qa_core::sample::random_module(&mut rng, &g.c));
                }
                out.push(morita::verify_lemma_3_1(&g, &mods)?);
            }
            Verify::Cpq(a) => {
                let (f, p, q, lambdas) = cpq_params(a)?;
                let g = morita::build_cpq(a.m, &p, &q, f)?;
                out.push(morita::verify_cpq_syzygy_table(&g, &p, &q, &lambdas, a.nmax)?);
            }
            Verify::Bm1 { horizon } => out.extend(bm1_reports(*horizon)?),
        },
        Command::Registry(RegistryCmd::Save { input, module: exprs, out: path }) => {
            let (env, alg) = select(input)?;
            let path = path.clone().or_else(|| cli.registry.clone()).ok_or_else(|| Fail("no registry path".into()))?;
            let mut reg = if path.exists() { IsoRegistry::load(&alg, &path)? } else { IsoRegistry::new(&alg) };
            let mut r = Report::new("registry-save");
            for e in exprs {
                let m = parse_module_expr(e, &alg, &env).map_err(Fail)?;
                let ids = reg.classify(&m)?;
                r.note(format!("{e}: {:?}", ids.iter().map(|i| i.0).collect::<Vec<_>>()));
            }
            reg.save(&path)?;
            r.note(format!("{} classes written to {}", reg.len(), path.display()));
            out.push(r);
        }
        Command::Registry(RegistryCmd::Load { input, path }) => {
            let (_, alg) = select(input)?;
            let path = path.clone().or_else(|| cli.registry.clone()).ok_or_else(|| Fail("no registry path".into()))?;
            let reg = IsoRegistry::load(&alg, &path)?;
            let mut r = Report::new("registry-load");
            for e in reg.classes() {
                let tag = if e.projective { " projective" } else { "" };
                r.note(format!("#{}: dims {:?}{tag}", e.id.0, e.rep.dims()));
            }
            out.push(r);
        }
        Command::Example(ExampleCmd::Cpq { args, verify, emit }) => {
            let (f, p, q, lambdas) = cpq_params(args)?;
            let g = morita::build_cpq(args.m, &p, &q, f)?;
            let mut r = Report::new("cpq");
            r.note(describe_algebra(&g.c));
            r.note(format!("p = {p}, q = {q} stand in for independent parameters"));
            if *emit {
                r.note(dsl::serialize_algebra(&g.c));
            }
            out.push(r);
            if matches!(verify, Which::All | Which::Table) {
                out.push(morita::verify_cpq_syzygy_table(&g, &p, &q, &lambdas, args.nmax)?);
            }
            if matches!(verify, Which::All | Which::Claims) {
                let mut reg = IsoRegistry::new(&g.c);
                out.push(morita::cpq_claim1_report(&g, &lambdas, args.nmax, &mut reg)?);
                out.push(morita::cpq_claim3_report(&g, &lambdas, args.nmax, &mut reg)?);
                out.push(morita::cpq_injective_report(&[args.m], &p, &q, f)?);
            }
        }
        Command::Example(ExampleCmd::Bm1 { horizon, emit }) => {
            let mut reports = bm1_reports(*horizon)?;
            if *emit {
                let g = morita::build_bm1_example(FieldSpec::Rationals);
                reports[1].note(dsl::serialize_algebra(&g.c));
            }
            out.extend(reports);
        }
    }
    Ok(out)
}

fn print(format: Format, reports: &[Report]) {
    match format {
        Format::Json => {
            let v = serde_json::json!({ "version": 1, "reports": reports });
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
        Format::Table => {
            for r in reports {
                println!("== {}: {}", r.check, r.status);
                for d in &r.details {
                    for line in d.lines() {
                        println!("  {line}");
                    }
                }
                for w in &r.witnesses {
                    println!("  witness: {w}");
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(reports) => {
            print(cli.format, &reports);
            let st = reports.iter().fold(Status::Pass, |s, r| s.combine(r.status));
            ExitCode::from(match st {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::Unknown => 3,
            })
        }
        Err(Fail(msg)) => {
            eprintln!("qa: {msg}");
            ExitCode::from(2)
        }
    }
}
