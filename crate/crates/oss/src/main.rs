use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use oss::config::RunConfig;
use oss::output::format_stats;
use oss::pipeline::{diagnose, report, Options, RunResult, Setup};
use oss::OssError;

#[derive(Parser)]
#[command(name = "oss", version, about = "Phase-only base-station synthesis over pattern databases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Run configuration (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Override the swarm seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads; default uses every core.
    #[arg(long)]
    workers: Option<usize>,
    /// Output directory; overrides the configuration.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            config: self.config.clone(),
            seed: self.seed,
            workers: self.workers,
            out: self.out.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check scene, array, regions and settings.
    Validate(Common),
    /// Trace the pattern databases.
    BuildEpep(Common),
    /// Write the target coverage.
    Target(Common),
    /// Synthesize phases for the single region of interest.
    Optimize(Common),
    /// Repeat the synthesis for each power scaling factor.
    SweepDelta(Common),
    /// Synthesize independently for every region of interest.
    SweepRoi(Common),
    /// Summarize the result files in the output directory.
    Report(Common),
}

fn summary(r: &RunResult) {
    let pct = r
        .normalized_cost
        .map_or("n/a".into(), |c| format!("{:.2} %", 100.0 * c));
    println!(
        "{}: cost {:.4e}, normalized {pct}, {} iterations ({:?}), {:.1} s",
        r.label, r.cost, r.iterations_run, r.terminated_by, r.timing.synthesis_s
    );
}

fn run(cmd: Command) -> Result<(), OssError> {
    match cmd {
        Command::Validate(c) => {
            let (mut config, base) = RunConfig::load(&c.config)?;
            if let Some(s) = c.seed {
                config.pso.seed = s;
            }
            let issues = diagnose(&config, &base);
            for i in &issues {
                println!("error: {i}");
            }
            println!("{} errors", issues.len());
            if !issues.is_empty() {
                return Err(OssError::Config(format!("{} errors", issues.len())));
            }
        }
        Command::BuildEpep(c) => {
            let s = Setup::load(&c.options())?;
            for (label, secs) in s.build_epep()? {
                println!("{label}: database built in {secs:.2} s");
            }
        }
        Command::Target(c) => {
            let s = Setup::load(&c.options())?;
            for (label, st) in s.write_targets()? {
                print!("{label}\n{}", format_stats(&[("target", st)]));
            }
        }
        Command::Optimize(c) => {
            let s = Setup::load(&c.options())?;
            let r = s.optimize()?;
            summary(&r);
            print!("{}", format_stats(&r.stats.rows()));
        }
        Command::SweepDelta(c) => {
            let s = Setup::load(&c.options())?;
            for (d, r) in s.sweep_delta()? {
                print!("delta {d}, zeta_max {} W: ", r.zeta_max_w);
                summary(&r);
            }
        }
        Command::SweepRoi(c) => {
            let s = Setup::load(&c.options())?;
            for r in s.sweep_roi()? {
                summary(&r);
            }
        }
        Command::Report(c) => {
            let s = Setup::load(&c.options())?;
            print!("{}", report(&s.out_dir)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("oss: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
