use std::process::ExitCode;

use clap::{Parser, Subcommand};

use salemkit::interval::DEFAULT_PRECISION_CAP;
use salemkit_cli::format::render_text;
use salemkit_cli::{
    cmd_coxeter, cmd_enriques, cmd_k3_verify, cmd_lefschetz, cmd_paper_suite, cmd_salem, cmd_torus, load_lefschetz_spec,
    CliError, Ctx, Report,
};

/// Exact and certified computations for Salem numbers and surface automorphisms.
#[derive(Parser)]
#[command(name = "salemkit", version)]
struct Cli {
    /// Emit the full JSON report.
    #[arg(long, global = true)]
    json: bool,
    /// Print interval endpoints alongside decimals.
    #[arg(long, global = true)]
    exact: bool,
    /// Largest working precision in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_CAP, value_parser = clap::value_parser!(u32).range(2..))]
    precision_cap: u32,
    /// Seed for the randomized batteries of paper-suite.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Salem test for a polynomial or built-in name (phi10, phi18, phi14, PHI14, PHI10).
    Salem { poly: String },
    /// Full K3 pipeline for a degree-14 Salem polynomial at one root.
    K3Verify {
        poly: String,
        /// delta, theta, delta', theta', #ordinal or re_lo,re_hi,im_lo,im_hi.
        #[arg(long, allow_hyphen_values = true)]
        root: String,
        /// Restrict the independence scan to this conjugate.
        #[arg(long, allow_hyphen_values = true)]
        conjugate: Option<String>,
    },
    /// Mod-2 obstruction for a degree-10 isometry on an Enriques lattice.
    Enriques { poly: String },
    /// Coxeter element of a root system such as E10 or A2.
    Coxeter { spec: String },
    /// Solve holomorphic Lefschetz for one unknown point; SPEC is a JSON file or `e8`.
    Lefschetz { spec: String },
    /// Entropy of the torus endomorphism given as "a,b;c,d".
    Torus {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Run the reproduction battery; exits 1 on any mismatch.
    PaperSuite,
}

fn emit(r: &Report, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(r).expect("report serializes"));
    } else {
        println!("{} ({})", r.command, r.version);
        print!("{}", render_text(&r.results));
        println!("precision bits used: {}", r.precision_bits_used);
    }
}

fn emit_suite(r: &Report, json: bool) {
    if json {
        emit(r, true);
        return;
    }
    for c in r.results["criteria"].as_array().into_iter().flatten() {
        let mark = if c["pass"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
        println!(
            "[{mark}] {:>2} {}: {}",
            c["id"],
            c["name"].as_str().unwrap_or_default(),
            c["detail"].as_str().unwrap_or_default()
        );
    }
}

fn run(cli: &Cli, ctx: &Ctx) -> Result<(Report, bool), CliError> {
    let r = match &cli.command {
        Command::Salem { poly } => cmd_salem(ctx, poly)?,
        Command::K3Verify { poly, root, conjugate } => cmd_k3_verify(ctx, poly, root, conjugate.as_deref())?,
        Command::Enriques { poly } => cmd_enriques(ctx, poly)?,
        Command::Coxeter { spec } => cmd_coxeter(ctx, spec)?,
        Command::Lefschetz { spec } => cmd_lefschetz(ctx, &load_lefschetz_spec(spec)?)?,
        Command::Torus { matrix } => cmd_torus(ctx, matrix)?,
        Command::PaperSuite => return cmd_paper_suite(ctx),
    };
    Ok((r, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx::new(cli.exact, cli.precision_cap, cli.seed);
    match run(&cli, &ctx) {
        Ok((r, ok)) => {
            if matches!(cli.command, Command::PaperSuite) {
                emit_suite(&r, cli.json);
            } else {
                emit(&r, cli.json);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if cli.json {
                let v = serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() });
                println!("{v}");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
