use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use varbudget::config::Settings;
use varbudget::feedback::{RandomStream, Substream};
use varbudget::harness::{refit_csv, run_experiment, CSV_HEADER};
use varbudget::seqfile::write_sequence;
use varbudget::Error;

#[derive(Parser)]
#[command(name = "varbudget", version, about = "Regret experiments for non-stationary stochastic optimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one horizon.
    Run(RunArgs),
    /// Run a horizon grid and append a rate-fit row.
    Sweep(RunArgs),
    /// Refit alpha, c and R^2 from a sweep CSV.
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Write one sampled environment as a sequence file.
    Gen(GenArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Flat key=value file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    pattern: Option<String>,
    #[arg(long)]
    policy: Option<String>,
    /// cost | grad
    #[arg(long)]
    feedback: Option<String>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    horizon: Option<String>,
    /// Comma-separated horizon grid.
    #[arg(long)]
    horizons: Option<String>,
    #[arg(long)]
    reps: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Budget of the adversarial environments.
    #[arg(long)]
    budget: Option<String>,
    /// Budget assumed when tuning the policy.
    #[arg(long)]
    tuning_budget: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// full | warm
    #[arg(long)]
    restart: Option<String>,
    /// strongly-convex | convex
    #[arg(long)]
    ogd_rule: Option<String>,
    /// two-thirds | sqrt-log | <n>
    #[arg(long)]
    batch_rule: Option<String>,
    /// center | zero | <x1>x<x2>...
    #[arg(long)]
    initial: Option<String>,
    #[arg(long)]
    egs_fresh_psi: Option<String>,
    #[arg(long)]
    decay_rate: Option<String>,
    #[arg(long)]
    step_constant: Option<String>,
    #[arg(long)]
    curvature: Option<String>,
    #[arg(long)]
    lipschitz: Option<String>,
    #[arg(long)]
    radius: Option<String>,
    #[arg(long)]
    interiority: Option<String>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    horizon: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    budget: Option<String>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    decay_rate: Option<String>,
    #[arg(long)]
    step_constant: Option<String>,
}

impl RunArgs {
    fn settings(&self) -> Result<Settings, Error> {
        let mut s = match &self.config {
            Some(path) => Settings::parse(&std::fs::read_to_string(path)?)?,
            None => Settings::default(),
        };
        let mut flags = Settings::default();
        let pairs = [
            ("pattern", &self.pattern),
            ("policy", &self.policy),
            ("feedback", &self.feedback),
            ("sigma", &self.sigma),
            ("horizon", &self.horizon),
            ("horizons", &self.horizons),
            ("reps", &self.reps),
            ("seed", &self.seed),
            ("budget", &self.budget),
            ("tuning-budget", &self.tuning_budget),
            ("restart", &self.restart),
            ("ogd-rule", &self.ogd_rule),
            ("batch-rule", &self.batch_rule),
            ("initial", &self.initial),
            ("egs-fresh-psi", &self.egs_fresh_psi),
            ("decay-rate", &self.decay_rate),
            ("step-constant", &self.step_constant),
            ("curvature", &self.curvature),
            ("lipschitz", &self.lipschitz),
            ("radius", &self.radius),
            ("interiority", &self.interiority),
        ];
        for (k, v) in pairs {
            if let Some(v) = v {
                flags.set(k, v.as_str())?;
            }
        }
        if let Some(out) = &self.out {
            flags.set("out", out.to_string_lossy())?;
        }
        s.merge(flags);
        Ok(s)
    }
}

fn output(path: Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(args: &RunArgs, sweep: bool) -> Result<ExitCode, Error> {
    let settings = args.settings()?;
    let cfg = settings.experiment(sweep)?;
    let result = run_experiment(&cfg)?;
    let mut out = output(settings.out())?;
    result.write_csv(&mut out)?;
    out.flush()?;
    let faulted = result.faulted();
    if faulted > 0 {
        eprintln!("warning: {faulted} trajectories hit a numeric fault and were excluded");
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn fit(input: &PathBuf) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(input)?;
    let mut out = output(None)?;
    writeln!(out, "{CSV_HEADER}")?;
    for (key, f) in refit_csv(&text)? {
        writeln!(
            out,
            "{},{},{},{},,,,,,{},{},{}",
            key.pattern, key.policy, key.feedback, key.sigma, f.alpha, f.c, f.r_squared
        )?;
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn gen(args: &GenArgs) -> Result<ExitCode, Error> {
    let mut s = Settings::default();
    s.set("pattern", args.pattern.as_str())?;
    for (k, v) in [
        ("budget", &args.budget),
        ("sigma", &args.sigma),
        ("decay-rate", &args.decay_rate),
        ("step-constant", &args.step_constant),
    ] {
        if let Some(v) = v {
            s.set(k, v.as_str())?;
        }
    }
    let env = s.environment()?;
    let seq = env.generate(args.horizon, &mut RandomStream::derive(args.seed, 0, Substream::Env))?;
    let mut out = BufWriter::new(File::create(&args.out)?);
    write_sequence(&seq, &mut out)?;
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Run(args) => run(args, false),
        Command::Sweep(args) => run(args, true),
        Command::Fit { input } => fit(input),
        Command::Gen(args) => gen(args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::NumericFault { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
