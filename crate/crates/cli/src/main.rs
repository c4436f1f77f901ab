//! Command-line front end for the exact 3/2-model simulator.

mod config;
mod output;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use threehalves::dist::{BridgeState, CondIvLaw};
use threehalves::engine::{
    price_call_cond_mc, price_call_exact, price_call_qmc, step_exact, PseudoRandomPoints,
};
use threehalves::oracle::{euler_paths, price_call_euler, EulerConfig};
use threehalves::rng::stream;
use threehalves::{Method, PathSample, PricingResult};

use config::{RunArgs, RunConfig};
use output::{pricing_header, pricing_row};

#[derive(Parser)]
#[command(name = "threehalves", version, about = "Exact Monte Carlo for the 3/2 stochastic volatility model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Price the European call with the selected method.
    Price {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Tabulate the conditional integrated-variance CDF of one bridge.
    Cdf {
        #[command(flatten)]
        run: RunArgs,
        /// Start value of X = 1/V.
        #[arg(long, allow_negative_numbers = true)]
        x_t: f64,
        /// End value of X = 1/V.
        #[arg(long, allow_negative_numbers = true)]
        x_u: f64,
        /// Bridge length; defaults to the maturity.
        #[arg(long, allow_negative_numbers = true)]
        dt: Option<f64>,
    },
    /// Run every pricing method and report their mutual consistency.
    Validate {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Dump simulated path outputs as CSV (exact single-step, or euler).
    Paths {
        #[command(flatten)]
        run: RunArgs,
    },
}

fn price(cfg: &RunConfig, method: Method) -> Result<PricingResult> {
    let (p, c, s) = (&cfg.params, &cfg.contract, &cfg.settings);
    let euler = EulerConfig { n_steps: cfg.n_steps, n_paths: cfg.n_paths, seed: cfg.seed };
    Ok(match method {
        Method::ExactMc => price_call_exact(p, c, cfg.n_paths, cfg.seed, s)?,
        Method::CondMc => {
            let points = PseudoRandomPoints { n: cfg.n_paths, seed: cfg.seed };
            price_call_cond_mc(p, c, &points, s)?
        }
        Method::QmcCondMc => price_call_qmc(p, c, cfg.m, cfg.n_reps, cfg.seed, s)?,
        Method::Euler => price_call_euler(p, c, &euler)?,
    })
}

fn echo_seed(cfg: &RunConfig) {
    eprintln!("# seed = {}", cfg.seed);
}

fn cmd_price(cfg: &RunConfig, out: &mut impl Write) -> Result<()> {
    echo_seed(cfg);
    let res = price(cfg, cfg.method)?;
    writeln!(out, "{}", pricing_header())?;
    writeln!(out, "{}", pricing_row(&res))?;
    Ok(())
}

fn cmd_cdf(cfg: &RunConfig, x_t: f64, x_u: f64, dt: Option<f64>, out: &mut impl Write) -> Result<()> {
    let bridge = BridgeState::new(x_t, x_u, dt.unwrap_or(cfg.contract.maturity))?;
    let dist = CondIvLaw::new(&cfg.params, bridge)?.build_cdf(cfg.settings.tol)?;
    for (x, f) in dist.grid().iter().zip(dist.cdf()) {
        writeln!(out, "{x:.15e} {f:.15e}")?;
    }
    Ok(())
}

fn cmd_validate(cfg: &RunConfig, out: &mut impl Write) -> Result<()> {
    echo_seed(cfg);
    let results = Method::ALL
        .into_iter()
        .map(|m| price(cfg, m))
        .collect::<Result<Vec<_>>>()?;
    writeln!(out, "{}", pricing_header())?;
    for r in &results {
        writeln!(out, "{}", pricing_row(r))?;
    }
    let mut pairs = Vec::new();
    for (i, a) in results.iter().enumerate() {
        for b in &results[i + 1..] {
            pairs.push(format!("{}/{}={:.3}", a.method, b.method, a.discrepancy(b)));
        }
    }
    writeln!(out, "pairwise-ratio,{},\"{}\",,", pairs.len(), pairs.join(";"))?;
    Ok(())
}

fn path_row(out: &mut impl Write, i: usize, s: &PathSample) -> io::Result<()> {
    writeln!(
        out,
        "{i},{:e},{:e},{:e},{:e}",
        s.x_terminal, s.int_inv_x, s.int_sqrt_inv_dw, s.log_s_terminal
    )
}

fn cmd_paths(cfg: &RunConfig, out: &mut impl Write) -> Result<()> {
    echo_seed(cfg);
    let t = cfg.contract.maturity;
    let samples = if cfg.method == Method::Euler {
        let euler = EulerConfig { n_steps: cfg.n_steps, n_paths: cfg.n_paths, seed: cfg.seed };
        euler_paths(&cfg.params, t, &euler)?
    } else {
        let p = &cfg.params;
        (0..cfg.n_paths as u64)
            .map(|i| step_exact(p, &cfg.settings, p.s0, p.x0(), t, &mut stream(cfg.seed, i)))
            .collect::<threehalves::Result<Vec<_>>>()?
    };
    writeln!(out, "path,x_terminal,int_inv_x,int_sqrt_inv_dw,log_s_terminal")?;
    for (i, s) in samples.iter().enumerate() {
        path_row(out, i, s)?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Price { run } => cmd_price(&RunConfig::resolve(&run)?, &mut out)?,
        Command::Cdf { run, x_t, x_u, dt } => cmd_cdf(&RunConfig::resolve(&run)?, x_t, x_u, dt, &mut out)?,
        Command::Validate { run } => cmd_validate(&RunConfig::resolve(&run)?, &mut out)?,
        Command::Paths { run } => cmd_paths(&RunConfig::resolve(&run)?, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
