use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qsrg_core::cayley::Component;
use qsrg_core::harness::{run, Command, OutputFormat, RunConfig};

/// Build and check the Cayley graphs Γ_H(G) = Cay(G×G, S_H).
#[derive(Parser)]
#[command(name = "qsrg", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Spectrum, QSRG parameters and predictions for one (G, H).
    Analyze {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the invariant suite over the built-in corpus.
    Verify {
        /// Largest |G| to include.
        #[arg(long)]
        max_order: Option<usize>,
        /// Run a single assertion tag.
        #[arg(long)]
        theorem: Option<String>,
        #[arg(long, hide = true)]
        inject_fault: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// One row per (G, H) over the corpus.
    Sweep {
        #[arg(long)]
        max_order: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Isospectrality and cheap invariants for two instances.
    Compare {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        group2: String,
        #[arg(long, default_value = "")]
        subgroup2: String,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print the adjacency matrix.
    Export {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Export one of the three component graphs instead.
        #[arg(long, value_enum)]
        component: Option<ComponentArg>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Group spec: Z<n>, D<m>, S<m>, products joined by x, or @table-file.
    #[arg(long)]
    group: String,
    /// Comma-separated generators (indices or labels); empty for {1}.
    #[arg(long, default_value = "")]
    subgroup: String,
}

#[derive(Args)]
struct CommonArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComponentArg {
    First,
    Second,
    Diagonal,
}

fn config(cli: Cli) -> RunConfig {
    let (command, common) = match &cli.command {
        Cmd::Analyze { common, .. } => (Command::Analyze, common),
        Cmd::Verify { common, .. } => (Command::Verify, common),
        Cmd::Sweep { common, .. } => (Command::Sweep, common),
        Cmd::Compare { common, .. } => (Command::Compare, common),
        Cmd::Export { common, .. } => (Command::Export, common),
    };
    let mut c = RunConfig::new(command);
    c.format = match common.format {
        FormatArg::Json => OutputFormat::Json,
        FormatArg::Csv => OutputFormat::Csv,
        FormatArg::Text => OutputFormat::Text,
    };
    c.jobs = common.jobs;
    match cli.command {
        Cmd::Analyze { instance, .. } => {
            c.group_spec = Some(instance.group);
            c.subgroup_spec = Some(instance.subgroup);
        }
        Cmd::Verify {
            max_order,
            theorem,
            inject_fault,
            ..
        } => {
            c.max_order = max_order;
            c.theorem = theorem;
            c.inject_fault = inject_fault;
        }
        Cmd::Sweep { max_order, .. } => c.max_order = max_order,
        Cmd::Compare {
            instance,
            group2,
            subgroup2,
            ..
        } => {
            c.group_spec = Some(instance.group);
            c.subgroup_spec = Some(instance.subgroup);
            c.group2 = Some(group2);
            c.subgroup2 = Some(subgroup2);
        }
        Cmd::Export {
            instance,
            component,
            ..
        } => {
            c.group_spec = Some(instance.group);
            c.subgroup_spec = Some(instance.subgroup);
            c.component = component.map(|a| match a {
                ComponentArg::First => Component::First,
                ComponentArg::Second => Component::Second,
                ComponentArg::Diagonal => Component::Diagonal,
            });
        }
    }
    c
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let config = config(cli);
    let stdout = io::stdout();
    let mut out = io::LineWriter::new(stdout.lock());
    match run(&config, &mut out) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
