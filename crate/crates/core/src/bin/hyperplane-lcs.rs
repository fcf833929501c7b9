use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use hyperplane_lcs::harness::{config_harness, graph_harness};
use hyperplane_lcs::report::{run_unchecked, AnalysisRequest, Format, InputSource, Sections};
use hyperplane_lcs::{fixtures, Error};

#[derive(Parser)]
#[command(name = "hyperplane-lcs", version, about = "Orlik-Solomon resolutions and LCS ranks of hyperplane arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an input file or a builtin fixture.
    Analyze(AnalyzeArgs),
    /// Builtin fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
    /// Compare exact LCS ranks with predictions over all small instances.
    Harness(HarnessArgs),
}

#[derive(Subcommand)]
enum FixturesAction {
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Doc,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Doc => Format::Doc,
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Path to an input document, or the name of a builtin fixture.
    input: String,
    #[arg(long)]
    all: bool,
    #[arg(long)]
    lattice: bool,
    #[arg(long)]
    resolution: bool,
    #[arg(long)]
    lcs: bool,
    #[arg(long)]
    graphic: bool,
    #[arg(long = "imax")]
    i_max: Option<usize>,
    #[arg(long = "jmax")]
    j_max: Option<usize>,
    #[arg(long = "kmax")]
    k_max: Option<usize>,
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
}

#[derive(Args)]
#[command(group(ArgGroup::new("scope").required(true).args(["graphs", "configs"])))]
struct HarnessArgs {
    /// All graphs on at most N vertices.
    #[arg(long, value_name = "N")]
    graphs: Option<usize>,
    /// All line configurations on at most M points.
    #[arg(long, value_name = "M")]
    configs: Option<usize>,
    #[arg(long = "kmax", default_value_t = 4)]
    k_max: usize,
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
}

fn analyze(args: AnalyzeArgs) -> Result<bool, Error> {
    let picked = Sections { lattice: args.lattice, resolution: args.resolution, lcs: args.lcs, graphic: args.graphic };
    let sections = if args.all || picked == Sections::NONE { Sections::ALL } else { picked };
    let path = PathBuf::from(&args.input);
    let source = if path.is_file() { InputSource::File(path) } else { InputSource::Builtin(args.input.clone()) };
    let request = AnalysisRequest {
        source,
        sections,
        i_max: args.i_max,
        j_max: args.j_max,
        k_max: args.k_max,
        format: args.format.into(),
    };
    let report = run_unchecked(&request)?;
    print!("{}", report.render(request.format));
    let failures = report.failures();
    for f in &failures {
        eprintln!("error: check {} failed: {}", f.name, f.detail);
    }
    Ok(failures.is_empty())
}

fn harness(args: HarnessArgs) -> Result<bool, Error> {
    let report = match (args.graphs, args.configs) {
        (Some(n), _) => graph_harness(n, args.k_max)?,
        (_, Some(m)) => config_harness(m, args.k_max)?,
        _ => unreachable!("clap enforces the scope group"),
    };
    match args.format {
        FormatArg::Table => print!("{}", report.to_table()),
        FormatArg::Doc => println!("{}", report.to_json()),
    }
    let violations = report.violations();
    for r in &violations {
        eprintln!("error: prediction fails on a proven class: {}", r.label);
    }
    Ok(violations.is_empty())
}

fn list_fixtures() {
    for f in fixtures::registry() {
        println!("{:<18} {:<8} {}", f.name, f.input.kind(), f.summary);
    }
    for (name, summary) in [
        ("pencil(m)", "pencil of m lines, 3 ≤ m ≤ 22"),
        ("x3-family(n)", "X_3 with the pencil through x = y = 0 grown to n − 4 lines, 6 ≤ n ≤ 22"),
    ] {
        println!("{name:<18} {:<8} {summary}", "normals");
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Fixtures { action: FixturesAction::List } => {
            list_fixtures();
            Ok(true)
        }
        Command::Harness(args) => harness(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
