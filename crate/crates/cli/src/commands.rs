use std::fs::File;
use std::io::Write;

use kacgap::gapbounds::{
    antisym_sector, large_ell_bound, mid_ell_check, small_ell_bound, MidEllOptions, SectorBound,
};
use kacgap::io::{to_json_string, write_kappa_records, write_simulation, KappaRecord};
use kacgap::kspectrum::{kappa_hat, kappa_row, kappa_tilde, DEFAULT_CELL_BUDGET};
use kacgap::montecarlo::{default_frames, simulate, InitialDensity, SimConfig};
use kacgap::verify::{verify_all, VerifyOptions};
use kacgap::{assemble_gap, Error};

use crate::{BoundsArgs, Cli, Command, EigenArgs, InitialArg, SectorArg, SimulateArgs};

const OK: u8 = 0;
const CHECK_FAILED: u8 = 1;
const USAGE: u8 = 2;

/// Dispatches a parsed command line; returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    let result = match &cli.command {
        Command::Eigen(a) => eigen(cli, a),
        Command::Bounds(a) => bounds(cli, a),
        Command::Gap => gap(cli),
        Command::Simulate(a) => simulate_cmd(cli, a),
        Command::Verify => verify(cli),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("kacgap: {e}");
            match e {
                Error::Domain(_)
                | Error::Config(_)
                | Error::CellBudget { .. }
                | Error::UnsupportedAlpha(_) => USAGE,
                _ => CHECK_FAILED,
            }
        }
    }
}

/// Writes `text` to `name` inside `--out`, or to stdout.
fn emit(cli: &Cli, name: &str, text: &str) -> kacgap::Result<()> {
    match &cli.global.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(name), text)?;
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                out.write_all(b"\n")?;
            }
        }
    }
    Ok(())
}

fn eigen(cli: &Cli, a: &EigenArgs) -> kacgap::Result<u8> {
    let ells = match (a.ell, a.ell_max) {
        (Some(ell), _) => ell..=ell,
        (None, Some(m)) => 0..=m,
        (None, None) => 0..=0,
    };
    let cells = (a.n_max + 1).saturating_mul(ells.end() - ells.start() + 1);
    if cells > DEFAULT_CELL_BUDGET {
        return Err(Error::CellBudget {
            requested: cells,
            budget: DEFAULT_CELL_BUDGET,
        });
    }
    let mut records = Vec::with_capacity(cells);
    for ell in ells {
        for (n, kappa) in kappa_row(ell, a.n_max).into_iter().enumerate() {
            records.push(KappaRecord {
                n,
                ell,
                kappa,
                kappa_hat: kappa_hat(n, ell),
                kappa_tilde: kappa_tilde(n, ell),
            });
        }
    }
    let mut buf = Vec::new();
    write_kappa_records(&mut buf, &records)?;
    emit(cli, "kappa.csv", &String::from_utf8_lossy(&buf))?;
    Ok(OK)
}

fn show_bound(cli: &Cli, b: &SectorBound) -> kacgap::Result<()> {
    if cli.global.json {
        emit(cli, "bounds.json", &to_json_string(b)?)
    } else {
        let text = format!(
            "{}: lambda <= {:.7}\n{}",
            b.sector,
            b.lambda_bound,
            to_json_string(&b.evidence)?
        );
        emit(cli, "bounds.txt", &text)
    }
}

fn bounds(cli: &Cli, a: &BoundsArgs) -> kacgap::Result<u8> {
    let b = match a.sector {
        SectorArg::Antisym => antisym_sector()?,
        SectorArg::Large => large_ell_bound(a.ell.unwrap_or(70))?,
        SectorArg::Mid => mid_ell_check(MidEllOptions::default())?,
        SectorArg::Small => small_ell_bound(a.ell.unwrap_or(0))?,
    };
    show_bound(cli, &b)?;
    Ok(OK)
}

fn gap(cli: &Cli) -> kacgap::Result<u8> {
    let r = assemble_gap()?;
    emit(cli, "gap.json", &to_json_string(&r)?)?;
    Ok(OK)
}

fn simulate_cmd(cli: &Cli, a: &SimulateArgs) -> kacgap::Result<u8> {
    let replicas = if cli.global.quick {
        a.replicas.min(10_000)
    } else {
        a.replicas
    };
    let cfg = SimConfig {
        alpha: a.alpha,
        replicas,
        frames: a.frames.clone().unwrap_or_else(|| default_frames(a.alpha)),
        seed: cli.global.seed,
        bins: a.bins,
        initial: match a.initial {
            InitialArg::Linear => InitialDensity::Linear,
            InitialArg::Equilibrium => InitialDensity::Equilibrium,
        },
        keep_samples: false,
    };
    let out = simulate(&cfg)?;
    match &cli.global.out {
        Some(dir) => {
            let summary = write_simulation(dir, &out)?;
            if cli.global.json {
                println!("{}", to_json_string(&summary)?);
            } else {
                print_entropy(&summary.entropy, summary.fit.map(|f| f.rate));
                println!(
                    "wrote {} files to {}",
                    summary.histograms.len() + 2,
                    dir.display()
                );
            }
        }
        None => {
            let series = out.entropy_series()?;
            let fit = out.fit().ok();
            if cli.global.json {
                let v = serde_json::json!({
                    "config": cfg,
                    "entropy": series,
                    "fit": fit,
                    "total_steps": out.total_steps,
                });
                println!("{}", to_json_string(&v)?);
            } else {
                print_entropy(&series, fit.map(|f| f.rate));
            }
        }
    }
    Ok(OK)
}

fn print_entropy(s: &kacgap::montecarlo::EntropySeries, rate: Option<f64>) {
    println!(
        "{:>8}  {:>10}  {:>10}  {:>10}",
        "time", "H_sampled", "H_implied1", "H_implied2"
    );
    for i in 0..s.times.len() {
        println!(
            "{:>8.3}  {:>10.5}  {:>10.5}  {:>10.5}",
            s.times[i], s.sampled[i], s.implied1[i], s.implied2[i]
        );
    }
    match rate {
        Some(r) => println!("fitted decay rate {r:.4}"),
        None => println!("fitted decay rate: not enough points above the noise floor"),
    }
}

fn verify(cli: &Cli) -> kacgap::Result<u8> {
    let report = verify_all(&VerifyOptions {
        seed: cli.global.seed,
        quick: cli.global.quick,
        skip_statistical: false,
    });
    if cli.global.json {
        emit(cli, "verify.json", &to_json_string(&report)?)?;
    } else {
        emit(cli, "verify.txt", &report.to_table())?;
    }
    if let Some(dir) = &cli.global.out {
        // keep a machine-readable copy next to the text table
        let mut f = File::create(dir.join("verify.json"))?;
        f.write_all(to_json_string(&report)?.as_bytes())?;
    }
    Ok(if report.pass { OK } else { CHECK_FAILED })
}
