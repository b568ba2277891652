use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod load;
mod report;

use commands::ArithOp;

#[derive(Parser, Debug)]
#[command(
    name = "pointfree-lab",
    version,
    about = "Exact checks for rational step functions on frames"
)]
struct Cli {
    /// One JSON object per output line.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check the frame laws of declared frames.
    FrameCheck {
        file: PathBuf,
        #[arg(long)]
        frame: Option<String>,
    },
    /// Report boolean, extremally disconnected, basically disconnected and P-frame.
    FrameClassify {
        file: PathBuf,
        #[arg(long)]
        frame: Option<String>,
    },
    /// Map a finite frame onto its regular elements.
    FrameBooleanize {
        file: PathBuf,
        #[arg(long)]
        frame: Option<String>,
    },
    /// Validate declared steps.
    RlValidate {
        file: PathBuf,
        #[arg(long)]
        step: Option<String>,
    },
    /// Closed-form arithmetic on two steps, compared with the lifted operation.
    RlArith {
        file: PathBuf,
        #[arg(value_enum)]
        op: ArithOp,
        f: String,
        g: String,
    },
    /// Randomized check that truncation sequences stabilize.
    RlCor1 {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Decide whether f0 is the pointwise join (or meet) of a family.
    PwCheck {
        file: PathBuf,
        #[arg(long)]
        f0: String,
        #[arg(long)]
        family: Option<String>,
        /// Members for vector or sequence inputs, comma separated.
        #[arg(long, value_delimiter = ',')]
        members: Vec<String>,
        /// Check the meet instead of the join.
        #[arg(long)]
        inf: bool,
    },
    /// Produce a separating morphism certificate.
    PwSeparate {
        file: PathBuf,
        #[arg(long)]
        f0: String,
        #[arg(long)]
        family: String,
    },
    /// Build the characteristic-function witness at a failing ray.
    PwChi {
        file: PathBuf,
        #[arg(long)]
        f0: String,
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
    },
    /// Validate truncate sequences.
    TruncValidate {
        file: PathBuf,
        #[arg(long)]
        seq: Option<String>,
    },
    /// Rebuild the step whose truncates a sequence lists.
    TruncReconstruct {
        file: PathBuf,
        #[arg(long)]
        seq: Option<String>,
    },
    /// Decide mobility of lattice downsets.
    MobileCheck {
        file: PathBuf,
        #[arg(long)]
        downset: Option<String>,
    },
    /// The prefix indicators on omega+1 against the constant 1.
    DemoOmega,
    /// Run a named randomized or exhaustive suite.
    SuiteRun {
        name: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        cases: Option<usize>,
    },
}

fn run(cmd: Cmd) -> Result<report::Report, load::CliError> {
    use commands::*;
    match cmd {
        Cmd::FrameCheck { file, frame } => frame_check(&file, frame.as_deref()),
        Cmd::FrameClassify { file, frame } => frame_classify(&file, frame.as_deref()),
        Cmd::FrameBooleanize { file, frame } => frame_booleanize(&file, frame.as_deref()),
        Cmd::RlValidate { file, step } => rl_validate(&file, step.as_deref()),
        Cmd::RlArith { file, op, f, g } => rl_arith(&file, op, &f, &g),
        Cmd::RlCor1 { seed, cases } => suite_run("cor1", seed, cases),
        Cmd::PwCheck {
            file,
            f0,
            family,
            members,
            inf,
        } => pw_check(&file, &f0, family.as_deref(), &members, inf),
        Cmd::PwSeparate { file, f0, family } => pw_separate(&file, &f0, &family),
        Cmd::PwChi { file, f0, family, r, s } => pw_chi(&file, &f0, &family, r.as_deref(), s.as_deref()),
        Cmd::TruncValidate { file, seq } => trunc(&file, seq.as_deref(), false),
        Cmd::TruncReconstruct { file, seq } => trunc(&file, seq.as_deref(), true),
        Cmd::MobileCheck { file, downset } => mobile_check(&file, downset.as_deref()),
        Cmd::DemoOmega => demo_omega(),
        Cmd::SuiteRun { name, seed, cases } => suite_run(&name, seed, cases),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, code) = match run(cli.cmd) {
        Ok(rep) => (rep.render(cli.json), rep.code),
        Err(e) => {
            let rep = report::Report {
                lines: vec![e.line()],
                code: 2,
            };
            (rep.render(cli.json), 2)
        }
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code as u8)
}
