use std::path::{Path, PathBuf};

use cpsphere_core::potential::{potential_total, Channel, PotentialResult, ScenarioConfig};
use cpsphere_core::quadrature::QuadratureSpec;
use cpsphere_core::scatterer::{cavity_excess, free_space_sphere};
use cpsphere_core::verify::{run_verification, VerifyOptions};
use cpsphere_core::potential::Target;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{make_grid, parse, Resolved, RunConfig, SphereGeometry, Spacing, UnitChoice};
use crate::error::CliError;
use crate::output::{config_hash, Table, POLARIZABILITY_COLUMNS, SWEEP_COLUMNS};

pub fn load(path: Option<&Path>, units: Option<UnitChoice>) -> Result<RunConfig, CliError> {
    let cfg = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            parse(&text)?
        }
        None => RunConfig::default(),
    };
    Ok(cfg.with_units(units))
}

fn evaluate(
    scenario: &ScenarioConfig<f64>,
    quad: &QuadratureSpec,
) -> Result<PotentialResult<f64>, CliError> {
    if let Some(w) = scenario
        .validate()
        .map_err(|e| CliError::from_core("scenario", e))?
    {
        eprintln!("warning: {w}");
    }
    let result = potential_total(scenario, quad).map_err(|e| CliError::from_core("potential", e))?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    Ok(result)
}

/// One sweep-format row in the configured unit system.
fn row(
    resolved: &Resolved,
    scenario: &ScenarioConfig<f64>,
    geometry: Option<SphereGeometry>,
    result: &PotentialResult<f64>,
) -> Vec<f64> {
    let si = resolved.system == UnitChoice::Si;
    let len = |x: f64| if si { resolved.units.length_to_si(x) } else { x };
    let energy = |x: f64| if si { resolved.units.energy_to_si(x) } else { x };
    let (q, rc) = geometry.map_or((f64::NAN, f64::NAN), |g| g.q_and_rc());
    let mut v = vec![len(scenario.separation), q, len(rc)];
    for c in Channel::ALL {
        v.push(result.channel(c).map_or(0.0, |x| energy(x.value)));
    }
    v.push(energy(result.total));
    v.push(energy(result.max_error()));
    v
}

pub fn potential(cfg: &RunConfig, output: Option<&Path>) -> Result<(), CliError> {
    let resolved = cfg.resolve()?;
    let result = evaluate(&resolved.scenario, &resolved.quadrature)?;
    let values = row(&resolved, &resolved.scenario, resolved.geometry, &result);
    for (name, v) in SWEEP_COLUMNS.iter().zip(&values) {
        println!("{name:<15} {}", crate::output::number(*v));
    }
    if let Some(path) = output {
        let mut table = Table::new(&SWEEP_COLUMNS, &config_hash(&cfg.to_toml()), cfg.units.label());
        table.rows.push(values);
        table.write_atomic(path)?;
    }
    Ok(())
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Config(format!("--jobs: {e}")))
}

pub fn sweep(cfg: &RunConfig, output: Option<&Path>, jobs: usize) -> Result<(), CliError> {
    let resolved = cfg.resolve()?;
    let sweep = cfg
        .sweep
        .as_ref()
        .ok_or_else(|| CliError::Config("sweep: missing [sweep] block".into()))?;
    let grid = sweep.grid()?;
    let points = grid
        .iter()
        .map(|&v| resolved.at_sweep_point(sweep.parameter, v))
        .collect::<Result<Vec<_>, _>>()?;

    // Collecting an indexed parallel iterator keeps sweep order.
    let results: Vec<Result<Vec<f64>, CliError>> = pool(jobs)?.install(|| {
        points
            .par_iter()
            .map(|(scenario, geom)| {
                let r = evaluate(scenario, &resolved.quadrature)?;
                Ok(row(&resolved, scenario, *geom, &r))
            })
            .collect()
    });
    let mut table = Table::new(&SWEEP_COLUMNS, &config_hash(&cfg.to_toml()), cfg.units.label());
    for r in results {
        table.rows.push(r?);
    }
    emit(&table, output)
}

fn emit(table: &Table, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(p) => table.write_atomic(p),
        None => {
            print!("{}", table.render());
            Ok(())
        }
    }
}

pub struct XiGrid {
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub spacing: Spacing,
}

pub fn polarizability(cfg: &RunConfig, grid: &XiGrid, output: Option<&Path>) -> Result<(), CliError> {
    let resolved = cfg.resolve()?;
    let Target::Sphere(sphere) = &resolved.scenario.target else {
        return Err(CliError::Config("target: polarizability needs a sphere target".into()));
    };
    let si = resolved.system == UnitChoice::Si;
    let u = resolved.units;
    let xis = make_grid("xi", grid.from, grid.to, grid.steps, grid.spacing)?;
    let host = &resolved.scenario.host;
    let core = |e| CliError::from_core("polarizability", e);

    let canonical = format!(
        "{}\n[xi]\nfrom = {:?}\nto = {:?}\nsteps = {}\nspacing = {:?}\n",
        cfg.to_toml(),
        grid.from,
        grid.to,
        grid.steps,
        grid.spacing
    );
    let mut table = Table::new(&POLARIZABILITY_COLUMNS, &config_hash(&canonical), cfg.units.label());
    for xi_in in xis {
        let xi = if si { u.frequency_to_reduced(xi_in) } else { xi_in };
        let (eps, mu) = host.at_imaginary(xi).map_err(core)?;
        let star = sphere.excess(eps, mu, xi).map_err(core)?;
        let free = free_space_sphere(sphere, xi).map_err(core)?;
        let cavity = match sphere.cavity_radius() {
            Some(rc) => cavity_excess(rc, eps, mu).map_err(core)?.alpha,
            None => f64::NAN,
        };
        let a = |x: f64| if si { u.polarizability_to_si(x) } else { x };
        let b = |x: f64| if si { u.magnetizability_to_si(x) } else { x };
        table
            .rows
            .push(vec![xi_in, a(star.alpha), b(star.beta), a(free.alpha), a(cavity)]);
    }
    emit(&table, output)
}

#[derive(Serialize)]
struct CheckSummary<'a> {
    suite: &'a str,
    name: &'a str,
    residual: f64,
    tolerance: f64,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'a str>,
}

#[derive(Serialize)]
struct Summary<'a> {
    passed: bool,
    total: usize,
    failed: usize,
    checks: Vec<CheckSummary<'a>>,
}

pub fn verify(
    tolerance: Option<f64>,
    only: Vec<String>,
    output: Option<PathBuf>,
) -> Result<(), CliError> {
    if let Some(t) = tolerance {
        if !(t.is_finite() && t >= 0.0) {
            return Err(CliError::Config(format!("--tolerance: must be >= 0, got {t}")));
        }
    }
    let opts = VerifyOptions {
        tolerance,
        only,
        ..Default::default()
    };
    let report = run_verification(&opts).map_err(|e| CliError::from_core("verify", e))?;
    println!("{report}");
    let summary = Summary {
        passed: report.all_passed(),
        total: report.checks.len(),
        failed: report.failures(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckSummary {
                suite: c.suite,
                name: &c.name,
                residual: c.residual,
                tolerance: c.tolerance,
                passed: c.passed,
                note: c.note.as_deref(),
            })
            .collect(),
    };
    let json = serde_json::to_string(&summary).expect("summary is serialisable");
    match output {
        Some(p) => std::fs::write(&p, format!("{json}\n"))?,
        None => println!("{json}"),
    }
    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::Verify(report.failures()))
    }
}
