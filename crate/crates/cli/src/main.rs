//! `pinrank`: equivariant K-theory ranks for finite groups of orthogonal
//! matrices, with built-in cross-verification.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation error,
//! 3 verification failure.

mod input;
mod report;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pinrank_core::cover::CoverOptions;
use pinrank_core::exec::ExecMode;
use pinrank_core::groups;
use pinrank_core::ktheory::{compute_with, karoubi_ranks, ranks_pinc, KRankReport};
use pinrank_core::matgroup::{FiniteOrthogonalGroup, DEFAULT_GROUP_CAP};
use pinrank_core::onfamily;
use pinrank_core::partitions;
use pinrank_core::verify::{self, Suite};

use input::GroupInputDocument;
use report::{
    Format, GlTableDocument, InputEcho, PartitionsDocument, ReportBody, ReportDocument,
    VerifyDocument, SCHEMA_VERSION,
};

#[derive(Parser)]
#[command(
    name = "pinrank",
    version,
    about = "Equivariant K-theory ranks via Pin double covers"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Machine,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Machine => Format::Machine,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute K-theory ranks of a group action.
    Compute(ComputeArgs),
    /// Run the cross-verification suite.
    Verify(VerifyArgs),
    /// Table of distinct-part partition statistics a_n, b_n, p_n, i_n.
    Partitions { n_max: u32 },
    /// Symbolic K-theory of the reduced group C*-algebra of GL(n, R).
    GlTable { n_max: u32 },
    /// Inspect the built-in group zoo.
    Builtin {
        #[command(subcommand)]
        action: BuiltinAction,
    },
}

#[derive(Subcommand)]
enum BuiltinAction {
    /// List the available builtins and their arguments.
    List,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(subcommand)]
    source: Source,
    /// Cross-check the pipeline against the independent methods.
    #[arg(long, global = true)]
    check: bool,
    /// Assert a Pin^c condition and add the simplified-formula report
    /// (asserted automatically for cyclic builtins).
    #[arg(long, global = true)]
    pinc: bool,
    /// Orthogonality tolerance for input validation.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Cap on the group order during closure.
    #[arg(long, global = true, default_value_t = DEFAULT_GROUP_CAP)]
    cap: usize,
    /// Cap on the Clifford dimension used for lifting.
    #[arg(long, global = true, default_value_t = pinrank_core::clifford::DEFAULT_DIMENSION_CAP)]
    max_dim: usize,
}

#[derive(Subcommand)]
enum Source {
    /// The trivial group on R^ambient.
    Trivial {
        #[arg(long, default_value_t = 1)]
        ambient: usize,
    },
    /// Cyclic group of order m (rotation or reflection action).
    Cyclic {
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value_t = CyclicAction::Rotation)]
        action: CyclicAction,
        #[arg(long)]
        ambient: Option<usize>,
    },
    /// Dihedral group of order 2m on R^2.
    Dihedral {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 2)]
        ambient: usize,
    },
    /// Symmetric group S_n permuting the coordinates of R^n.
    Sym {
        #[arg(long)]
        n: usize,
    },
    /// Alternating group A_n on R^n.
    Alt {
        #[arg(long)]
        n: usize,
    },
    /// Signed permutation matrices on R^n (order 2^n n!).
    Hyperoctahedral {
        #[arg(long)]
        n: usize,
    },
    /// A group input document; use "-" to read standard input.
    File { path: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CyclicAction {
    Rotation,
    Reflection,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::Small)]
    suite: SuiteArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Small,
    Full,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version through the error path too
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    let format = Format::from(cli.format);
    match run(cli.command, format) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, format: Format) -> anyhow::Result<ExitCode> {
    match command {
        Command::Compute(args) => {
            let doc = run_compute(args)?;
            print!("{}", doc.render(format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let suite = match args.suite {
                SuiteArg::Small => Suite::Small,
                SuiteArg::Full => Suite::Full,
            };
            let start = Instant::now();
            let checks = verify::run_suite(suite, ExecMode::default())?;
            let passed = checks.iter().all(|c| c.passed);
            let doc = VerifyDocument {
                schema_version: SCHEMA_VERSION,
                suite: match suite {
                    Suite::Small => "small".into(),
                    Suite::Full => "full".into(),
                },
                checks,
                passed,
                timing_ms: Some(start.elapsed().as_millis() as u64),
            };
            print!("{}", doc.render(format));
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Partitions { n_max } => {
            let rows = partitions::partition_counts_upto(n_max)?;
            if rows.is_empty() {
                bail!("partition statistics need n_max >= 2, got {n_max}");
            }
            let doc = PartitionsDocument {
                schema_version: SCHEMA_VERSION,
                rows,
            };
            print!("{}", doc.render(format));
            Ok(ExitCode::SUCCESS)
        }
        Command::GlTable { n_max } => {
            let rows = onfamily::gl_table(n_max)?;
            let doc = GlTableDocument {
                schema_version: SCHEMA_VERSION,
                rows,
            };
            print!("{}", doc.render(format));
            Ok(ExitCode::SUCCESS)
        }
        Command::Builtin {
            action: BuiltinAction::List,
        } => {
            print!("{}", builtin_listing(format));
            Ok(ExitCode::SUCCESS)
        }
    }
}

struct ResolvedSource {
    echo: InputEcho,
    group: FiniteOrthogonalGroup,
    /// Pin^c holds automatically (cyclic builtins).
    auto_pinc: bool,
    /// n of a sym/alt builtin, for the partition-formula cross-check.
    sym_n: Option<u32>,
    alt_n: Option<u32>,
}

fn resolve_source(
    source: &Source,
    tolerance: Option<f64>,
    cap: usize,
) -> anyhow::Result<ResolvedSource> {
    let builtin_echo = |spec: String| InputEcho {
        kind: "builtin".into(),
        spec,
        document: None,
    };
    let mut auto_pinc = false;
    let mut sym_n = None;
    let mut alt_n = None;
    let (echo, group) = match source {
        Source::Trivial { ambient } => (
            builtin_echo(format!("trivial --ambient {ambient}")),
            groups::trivial(*ambient)?,
        ),
        Source::Cyclic { m, action, ambient } => {
            auto_pinc = true;
            let reflection = *action == CyclicAction::Reflection;
            let ambient = ambient.unwrap_or_else(|| groups::cyclic_default_ambient(*m, reflection));
            let group = if reflection {
                groups::cyclic_reflection(*m, ambient)?
            } else {
                groups::cyclic_rotation(*m, ambient)?
            };
            let action = if reflection { "reflection" } else { "rotation" };
            (
                builtin_echo(format!(
                    "cyclic --m {m} --action {action} --ambient {ambient}"
                )),
                group,
            )
        }
        Source::Dihedral { m, ambient } => (
            builtin_echo(format!("dihedral --m {m} --ambient {ambient}")),
            groups::dihedral(*m, *ambient)?,
        ),
        Source::Sym { n } => {
            sym_n = u32::try_from(*n).ok();
            (builtin_echo(format!("sym --n {n}")), groups::symmetric(*n)?)
        }
        Source::Alt { n } => {
            alt_n = u32::try_from(*n).ok();
            (
                builtin_echo(format!("alt --n {n}")),
                groups::alternating(*n)?,
            )
        }
        Source::Hyperoctahedral { n } => (
            builtin_echo(format!("hyperoctahedral --n {n}")),
            groups::hyperoctahedral(*n)?,
        ),
        Source::File { path } => {
            let (kind, spec, text) = if path.as_os_str() == "-" {
                let mut text = String::new();
                std::io::stdin()
                    .read_to_string(&mut text)
                    .context("reading standard input")?;
                ("stdin".to_string(), "-".to_string(), text)
            } else {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                ("file".to_string(), path.display().to_string(), text)
            };
            let doc = GroupInputDocument::parse(&text)?;
            auto_pinc = doc.pinc_assertion.unwrap_or(false);
            let group = doc.to_group(cap, tolerance)?;
            (
                InputEcho {
                    kind,
                    spec,
                    document: Some(doc),
                },
                group,
            )
        }
    };
    // Builtins are constructed with default options; the cap still applies.
    if group.order() > cap {
        bail!("group of order {} exceeds the cap {cap}", group.order());
    }
    Ok(ResolvedSource {
        echo,
        group,
        auto_pinc,
        sym_n,
        alt_n,
    })
}

fn run_compute(args: ComputeArgs) -> anyhow::Result<ReportDocument> {
    let start = Instant::now();
    let resolved = resolve_source(&args.source, args.tolerance, args.cap)?;
    let group = &resolved.group;

    let cover_opts = CoverOptions {
        exec: ExecMode::default(),
        dim_cap: args.max_dim,
    };
    let main = compute_with(group, cover_opts)?;

    let mut sub_reports: Vec<KRankReport> = Vec::new();
    if args.pinc || resolved.auto_pinc {
        let kernel = group.kernel_subgroup(group.det_character())?;
        sub_reports.push(ranks_pinc(
            group.class_count(),
            kernel.class_count(),
            group.is_orientation_preserving(),
            group.dim(),
        )?);
    }
    if args.check {
        sub_reports.push(karoubi_ranks(group)?);
        if let Some(n) = resolved.sym_n {
            sub_reports.push(partitions::sym_ranks(n)?);
        }
        if let Some(n) = resolved.alt_n {
            sub_reports.push(partitions::alt_ranks(n)?);
        }
    }
    let agreement = if sub_reports.is_empty() {
        None
    } else {
        Some(sub_reports.iter().all(|r| r.ranks() == main.ranks()))
    };

    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION,
        input_echo: resolved.echo,
        report: ReportBody {
            main,
            sub_reports,
            agreement,
        },
        timing_ms: Some(start.elapsed().as_millis() as u64),
    })
}

fn builtin_listing(format: Format) -> String {
    let rows = [
        ("trivial", "--ambient N", "trivial group on R^N"),
        (
            "cyclic",
            "--m M --action rotation|reflection [--ambient N]",
            "cyclic group of order M",
        ),
        (
            "dihedral",
            "--m M [--ambient N]",
            "dihedral group of order 2M on R^2",
        ),
        (
            "sym",
            "--n N",
            "symmetric group S_N permuting coordinates of R^N",
        ),
        ("alt", "--n N", "alternating group A_N on R^N"),
        (
            "hyperoctahedral",
            "--n N",
            "signed permutations of R^N, order 2^N N!",
        ),
        ("file", "PATH (or - for stdin)", "group input document"),
    ];
    match format {
        Format::Machine => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(name, args, about)| {
                    serde_json::json!({ "name": name, "args": args, "about": about })
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&serde_json::json!({
                "schema_version": SCHEMA_VERSION,
                "builtins": items,
            }))
            .expect("listing serialization cannot fail");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            for (name, args, about) in rows {
                out.push_str(&format!("{name:<16} {args:<48} {about}\n"));
            }
            out
        }
    }
}
