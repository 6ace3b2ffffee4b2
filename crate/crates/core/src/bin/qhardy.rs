use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qhardy::cli::{self, CliError, GroupSpec, OutputFormat, RunConfig};
use qhardy::group::Family;
use qhardy::hardy::DomainKind;
use qhardy::tolerance::{Tolerances, TOLERANCE_ENV};

#[derive(Parser, Debug)]
#[command(name = "qhardy", version, about = "Hardy spaces on quotients by pseudoreflection groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Group as inline JSON or a path to a JSON file.
    #[arg(long, global = true)]
    group: Option<String>,
    /// Named family: symmetric, cyclic or wreath.
    #[arg(long, global = true)]
    family: Option<String>,
    #[arg(long, global = true)]
    d: Option<usize>,
    #[arg(long, global = true)]
    m: Option<u32>,
    /// Comma-separated orders for the cyclic family.
    #[arg(long, global = true, value_delimiter = ',')]
    orders: Option<Vec<u32>>,
    /// Character index, `sign`, `trivial` or `all`.
    #[arg(long, global = true)]
    character: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Model::Polydisc)]
    model: Model,
    #[arg(long, global = true, default_value_t = 8)]
    cutoff: u32,
    #[arg(long, global = true, env = TOLERANCE_ENV)]
    tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Model {
    Polydisc,
    Ball,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, hyperplanes, characters and basic invariants.
    Describe,
    /// One-dimensional characters.
    Characters,
    #[command(subcommand)]
    Invariants(InvariantsCmd),
    #[command(subcommand)]
    Hardy(HardyCmd),
    #[command(subcommand)]
    Toeplitz(ToeplitzCmd),
    /// Run every numerical check and report PASS/FAIL.
    VerifyAll,
}

#[derive(Subcommand, Debug)]
enum InvariantsCmd {
    Hyperplanes,
    /// Generating polynomials of the selected characters.
    Lrho,
    VerifyJacobian,
}

#[derive(Subcommand, Debug)]
enum HardyCmd {
    /// Orthonormal basis of the quotient space.
    Onb {
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Closed-form kernels at `[[z...],[w...]]`, entries `[re,im]`.
    Kernel {
        #[arg(long)]
        at: String,
    },
}

#[derive(Subcommand, Debug)]
enum ToeplitzCmd {
    Matrix {
        #[arg(long)]
        symbol: String,
    },
    ProductTransfer {
        #[arg(long)]
        symbol: String,
        #[arg(long = "symbol-v")]
        symbol_v: String,
        #[arg(long = "symbol-q")]
        symbol_q: String,
    },
    CommuteTransfer {
        #[arg(long)]
        symbol: String,
        #[arg(long = "symbol-v")]
        symbol_v: String,
    },
    BrownHalmos {
        #[arg(long)]
        symbol: String,
    },
    Reducing {
        #[arg(long)]
        symbol: Option<String>,
        /// Symbol on the ambient domain instead of the quotient.
        #[arg(long = "ambient-symbol", conflicts_with = "symbol")]
        ambient_symbol: Option<String>,
        #[arg(long, default_value_t = 5)]
        degree: u32,
    },
}

fn read_inline_or_file(text: &str) -> Result<String, CliError> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(text.to_string());
    }
    fs::read_to_string(text).map_err(|e| CliError::Config(format!("cannot read {text}: {e}")))
}

fn group_spec(g: &Global) -> Result<GroupSpec, CliError> {
    if let Some(text) = &g.group {
        if g.family.is_some() {
            return Err(CliError::Config("use either --group or --family".into()));
        }
        return GroupSpec::parse_json(&read_inline_or_file(text)?);
    }
    let family = g
        .family
        .as_deref()
        .ok_or_else(|| CliError::Config("a group is required (--group or --family)".into()))?;
    let need_d = || g.d.ok_or_else(|| CliError::Config("--d is required".into()));
    let family = match family {
        "symmetric" => Family::Symmetric { d: need_d()? },
        "wreath" => Family::Wreath {
            m: g.m.ok_or_else(|| CliError::Config("--m is required".into()))?,
            d: need_d()?,
        },
        "cyclic" => {
            let orders = g
                .orders
                .clone()
                .ok_or_else(|| CliError::Config("--orders is required".into()))?;
            if let Some(d) = g.d {
                if d != orders.len() {
                    return Err(CliError::Config("--orders must have --d entries".into()));
                }
            }
            Family::Cyclic { orders }
        }
        other => return Err(CliError::Config(format!("unknown family '{other}'"))),
    };
    Ok(GroupSpec::named(&family))
}

fn run_config(g: &Global) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::new(group_spec(g)?);
    cfg.character = g.character.as_deref().map(str::parse).transpose()?;
    cfg.model = match g.model {
        Model::Polydisc => DomainKind::Polydisc,
        Model::Ball => DomainKind::Ball,
    };
    cfg.cutoff = g.cutoff;
    if let Some(t) = g.tol {
        cfg.tol = Tolerances::with_eps(t);
    }
    cfg.seed = g.seed;
    cfg.format = match g.format {
        Format::Json => OutputFormat::Json,
        Format::Csv => OutputFormat::Csv,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn symbol_text(s: &str) -> Result<String, CliError> {
    read_inline_or_file(s)
}

fn run(args: &Cli) -> Result<cli::Output, CliError> {
    let cfg = run_config(&args.global)?;
    match &args.command {
        Command::Describe => cli::cmd_describe(&cfg),
        Command::Characters => cli::cmd_characters(&cfg),
        Command::Invariants(InvariantsCmd::Hyperplanes) => cli::cmd_hyperplanes(&cfg),
        Command::Invariants(InvariantsCmd::Lrho) => cli::cmd_lrho(&cfg),
        Command::Invariants(InvariantsCmd::VerifyJacobian) => cli::cmd_verify_jacobian(&cfg),
        Command::Hardy(HardyCmd::Onb { degree }) => cli::cmd_hardy_onb(&cfg, *degree),
        Command::Hardy(HardyCmd::Kernel { at }) => cli::cmd_hardy_kernel(&cfg, at),
        Command::Toeplitz(ToeplitzCmd::Matrix { symbol }) => {
            cli::cmd_toeplitz_matrix(&cfg, &symbol_text(symbol)?)
        }
        Command::Toeplitz(ToeplitzCmd::ProductTransfer {
            symbol,
            symbol_v,
            symbol_q,
        }) => cli::cmd_product_transfer(
            &cfg,
            &symbol_text(symbol)?,
            &symbol_text(symbol_v)?,
            &symbol_text(symbol_q)?,
        ),
        Command::Toeplitz(ToeplitzCmd::CommuteTransfer { symbol, symbol_v }) => {
            cli::cmd_commute_transfer(&cfg, &symbol_text(symbol)?, &symbol_text(symbol_v)?)
        }
        Command::Toeplitz(ToeplitzCmd::BrownHalmos { symbol }) => {
            cli::cmd_brown_halmos(&cfg, &symbol_text(symbol)?)
        }
        Command::Toeplitz(ToeplitzCmd::Reducing {
            symbol,
            ambient_symbol,
            degree,
        }) => match (symbol, ambient_symbol) {
            (Some(s), None) => cli::cmd_reducing(&cfg, &symbol_text(s)?, false, *degree),
            (None, Some(s)) => cli::cmd_reducing(&cfg, &symbol_text(s)?, true, *degree),
            _ => Err(CliError::Config(
                "reducing needs --symbol or --ambient-symbol".into(),
            )),
        },
        Command::VerifyAll => cli::cmd_verify_all(&cfg),
    }
}

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { cli::EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let format = match args.global.format {
        Format::Json => OutputFormat::Json,
        Format::Csv => OutputFormat::Csv,
    };
    match run(&args) {
        Ok(out) => {
            let text = out.render(format);
            match &args.global.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(cli::EXIT_CONFIG as u8);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(out.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
