use std::io::{self, Write};

use rayon::prelude::*;

use super::config::{Command, RunConfig};
use super::output::{with_output, Metadata};
use crate::efficiency::{eta_ctrw, eta_levy, GridAxis, Regime, SearchParams};
use crate::error::{Error, Result};
use crate::fractional::{
    mc_propagator_char, mittag_leffler, mittag_leffler_branch, Branch, CtrwModel,
};
use crate::rng::RngStream;
use crate::sim::{
    aggregate, ensemble_walkers, generate_targets, run_walker, write_trajectory, FieldSpec,
    SimOptions, SimResult, StopRule, Trajectory,
};

const LEVY_NOTE: &str = "lambda_eta = lambda * eta, eta = 1/(N <L>) in 1/length";
const CTRW_NOTE: &str =
    "lambda_eta = lambda * eta * T, eta = 1/(N <LT>) in 1/(length*time); the factor T makes the column dimensionless";

/// Values of `λ·η` over `lambda × axis1 × axis2`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepGrid {
    pub regime: Regime,
    pub lambda_values: Vec<f64>,
    /// μ for Lévy sweeps, α for CTRW sweeps.
    pub axis1: Vec<f64>,
    /// β for CTRW sweeps.
    pub axis2: Option<Vec<f64>>,
    /// `values[lambda][axis1][axis2]`; the last index has length 1 without
    /// a second axis.
    pub values: Vec<Vec<Vec<f64>>>,
}

impl SweepGrid {
    fn width2(&self) -> usize {
        self.axis2.as_ref().map_or(1, Vec::len)
    }

    /// Argmax `(axis1, axis2, value)` of one λ slice. Ties keep the earliest
    /// cell in row-major order.
    pub fn argmax(&self, lambda_index: usize) -> (f64, Option<f64>, f64) {
        let slice = &self.values[lambda_index];
        let mut best = (0, 0, f64::NEG_INFINITY);
        for (i, row) in slice.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v > best.2 {
                    best = (i, j, v);
                }
            }
        }
        (
            self.axis1[best.0],
            self.axis2.as_ref().map(|b| b[best.1]),
            best.2,
        )
    }

    /// Row-major rows `(lambda, axis1, axis2, value)`.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, Option<f64>, f64)> + '_ {
        let w = self.width2();
        self.lambda_values.iter().enumerate().flat_map(move |(li, &l)| {
            self.axis1.iter().enumerate().flat_map(move |(i, &a)| {
                (0..w).map(move |j| {
                    (
                        l,
                        a,
                        self.axis2.as_ref().map(|b| b[j]),
                        self.values[li][i][j],
                    )
                })
            })
        })
    }

    fn write_rows(&self, out: &mut dyn Write) -> io::Result<()> {
        for (l, a, b, v) in self.rows() {
            match b {
                Some(b) => writeln!(out, "{},{l},{a},{b},{v}", self.regime)?,
                None => writeln!(out, "{},{l},{a},{v}", self.regime)?,
            }
        }
        Ok(())
    }
}

/// 2-D projection of a CTRW surface: the best value along one axis for each
/// point of the other.
#[derive(Clone, Debug, PartialEq)]
pub struct Projection {
    pub regime: Regime,
    pub lambda: f64,
    /// `alpha` or `beta`, the axis kept.
    pub axis: &'static str,
    pub value: f64,
    /// Maximizer along the projected-out axis.
    pub argmax_other: f64,
    pub lambda_eta: f64,
}

fn projections(grid: &SweepGrid) -> Vec<Projection> {
    let betas = grid.axis2.as_deref().unwrap_or(&[]);
    let mut out = Vec::new();
    for (li, &lambda) in grid.lambda_values.iter().enumerate() {
        let slice = &grid.values[li];
        for (i, &a) in grid.axis1.iter().enumerate() {
            let (j, v) = first_max(slice[i].iter().copied());
            out.push(Projection {
                regime: grid.regime,
                lambda,
                axis: "alpha",
                value: a,
                argmax_other: betas[j],
                lambda_eta: v,
            });
        }
        for (j, &b) in betas.iter().enumerate() {
            let (i, v) = first_max(slice.iter().map(|row| row[j]));
            out.push(Projection {
                regime: grid.regime,
                lambda,
                axis: "beta",
                value: b,
                argmax_other: grid.axis1[i],
                lambda_eta: v,
            });
        }
    }
    out
}

fn first_max(it: impl Iterator<Item = f64>) -> (usize, f64) {
    it.enumerate()
        .fold((0, f64::NEG_INFINITY), |b, (i, v)| if v > b.1 { (i, v) } else { b })
}

fn regimes(cfg: &RunConfig) -> Vec<Regime> {
    cfg.regime.map_or(Regime::ALL.to_vec(), |r| vec![r])
}

fn check_lambdas(cfg: &RunConfig) -> Result<()> {
    if cfg.lambdas.is_empty() {
        return Err(Error::Empty("lambda list"));
    }
    for &l in &cfg.lambdas {
        cfg.params.with_lambda(l).validate()?;
    }
    Ok(())
}

fn levy_axis(cfg: &RunConfig) -> Result<Vec<f64>> {
    let axis = cfg.mu_range.unwrap_or(GridAxis::new(1.1, 2.9, 0.01));
    axis.check_within("mu_range", 1.0, 3.0, false)?;
    Ok(axis.values())
}

/// λ·η(μ) for the Lévy baseline, one grid per regime.
pub fn cmd_levy_sweep(cfg: &RunConfig) -> Result<Vec<SweepGrid>> {
    let mus = levy_axis(cfg)?;
    check_lambdas(cfg)?;
    let grids = regimes(cfg)
        .into_iter()
        .map(|regime| {
            let values = cfg
                .lambdas
                .iter()
                .map(|&lambda| {
                    mus.par_iter()
                        .map(|&mu| {
                            let p = cfg.params.with_lambda(lambda).with_mu(mu);
                            Ok(vec![lambda * eta_levy(&p, regime)?.eta])
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SweepGrid {
                regime,
                lambda_values: cfg.lambdas.clone(),
                axis1: mus.clone(),
                axis2: None,
                values,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    check_finite(&grids)?;

    let mut meta = Metadata::for_config(cfg);
    meta.push("normalization", LEVY_NOTE);
    with_output(cfg.output.as_deref(), |out| {
        meta.write(out)?;
        writeln!(out, "regime,lambda,mu,lambda_eta")?;
        grids.iter().try_for_each(|g| g.write_rows(out))
    })?;
    Ok(grids)
}

fn ctrw_axes(cfg: &RunConfig) -> Result<(Vec<f64>, Vec<f64>)> {
    let a = cfg.alpha_range.unwrap_or(GridAxis::new(0.1, 1.9, 0.01));
    let b = cfg.beta_range.unwrap_or(GridAxis::new(0.1, 0.9, 0.01));
    a.check_within("alpha_range", 0.0, 2.0, false)?;
    b.check_within("beta_range", 0.0, 1.0, false)?;
    Ok((a.values(), b.values()))
}

/// λ·η·T over the (α, β) lattice, one grid per regime. With an output path
/// the projection table goes to `<out>.projection.csv`.
pub fn cmd_ctrw_sweep(cfg: &RunConfig) -> Result<(Vec<SweepGrid>, Vec<Projection>)> {
    let (alphas, betas) = ctrw_axes(cfg)?;
    check_lambdas(cfg)?;
    let t = cfg.params.t_mean;
    let grids = regimes(cfg)
        .into_iter()
        .map(|regime| {
            let values = cfg
                .lambdas
                .iter()
                .map(|&lambda| {
                    alphas
                        .par_iter()
                        .map(|&alpha| {
                            betas
                                .iter()
                                .map(|&beta| {
                                    let p = cfg
                                        .params
                                        .with_lambda(lambda)
                                        .with_alpha(alpha)
                                        .with_beta(beta);
                                    Ok(lambda * eta_ctrw(&p, regime)?.eta * t)
                                })
                                .collect::<Result<Vec<_>>>()
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SweepGrid {
                regime,
                lambda_values: cfg.lambdas.clone(),
                axis1: alphas.clone(),
                axis2: Some(betas.clone()),
                values,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    check_finite(&grids)?;
    let proj: Vec<Projection> = grids.iter().flat_map(projections).collect();

    let mut meta = Metadata::for_config(cfg);
    meta.push("normalization", CTRW_NOTE);
    with_output(cfg.output.as_deref(), |out| {
        meta.write(out)?;
        writeln!(out, "regime,lambda,alpha,beta,lambda_eta")?;
        grids.iter().try_for_each(|g| g.write_rows(out))
    })?;
    if let Some(path) = &cfg.output {
        let mut name = path.as_os_str().to_owned();
        name.push(".projection.csv");
        let mut pmeta = meta.clone();
        pmeta.push("table", "projection extrema per lambda");
        with_output(Some(std::path::Path::new(&name)), |out| {
            pmeta.write(out)?;
            writeln!(out, "regime,lambda,axis,value,argmax_other,lambda_eta")?;
            for p in &proj {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    p.regime, p.lambda, p.axis, p.value, p.argmax_other, p.lambda_eta
                )?;
            }
            Ok(())
        })?;
    }
    Ok((grids, proj))
}

fn check_finite(grids: &[SweepGrid]) -> Result<()> {
    for g in grids {
        if let Some((l, a, b, v)) = g.rows().find(|r| !(r.3.is_finite() && r.3 >= 0.0)) {
            return Err(Error::Singular(format!(
                "non-finite lambda_eta {v} at lambda={l}, axis1={a}, axis2={b:?}"
            )));
        }
    }
    Ok(())
}

fn sim_setup(cfg: &RunConfig) -> Result<(SearchParams, FieldSpec, StopRule, SimOptions)> {
    let params = cfg.params;
    params.validate()?;
    let regime = cfg.regime.unwrap_or(Regime::Nondestructive);
    let spec = FieldSpec::for_mean_free_path(params.lambda, params.r_v, cfg.targets, regime);
    let stop = StopRule {
        max_captures: Some(cfg.max_captures),
        max_steps: cfg.max_steps,
    };
    let options = SimOptions {
        wait_cutoff: cfg.wait_cutoff,
        ..SimOptions::default()
    };
    Ok((params, spec, stop, options))
}

/// Trajectory of walker `0`, identical to that walker's share of an
/// ensemble run with the same seed.
fn trace_walker0(
    cfg: &RunConfig,
    params: &SearchParams,
    spec: &FieldSpec,
    stop: StopRule,
    options: &SimOptions,
) -> Result<(Trajectory, SimResult)> {
    let mut stream = RngStream::new(cfg.seed, 0).substream(0);
    let field = generate_targets(spec.density, spec.arena_side, spec.regime, &mut stream)?;
    run_walker(&field, params, &mut stream, stop, options)
}

fn write_trace(cfg: &RunConfig, path: &std::path::Path, trajectory: &Trajectory) -> Result<()> {
    let mut meta = Metadata::for_config(cfg);
    meta.push("table", "trajectory of walker 0");
    with_output(Some(path), |out| {
        meta.write(out)?;
        write_trajectory(out, trajectory)
    })
}

/// Ensemble simulation; writes one result row plus a `# status` footer.
pub fn cmd_simulate(cfg: &RunConfig) -> Result<SimResult> {
    let (params, spec, stop, options) = sim_setup(cfg)?;
    let walkers = cfg.walkers.unwrap_or(1);
    let rng = RngStream::new(cfg.seed, 0);
    let outcome = ensemble_walkers(&spec, &params, walkers, &rng, stop, &options)
        .map(|t| aggregate(&t, cfg.seed, params.beta > 0.0));

    let mut meta = Metadata::for_config(cfg);
    meta.push(
        "efficiency",
        if params.beta > 0.0 {
            "captures / (mean_flight * mean_wait * steps)"
        } else {
            "waits off: captures / distance (per unit distance)"
        },
    );
    meta.push("density", spec.density.to_string());
    meta.push("arena_side", spec.arena_side.to_string());
    with_output(cfg.output.as_deref(), |out| {
        meta.write(out)?;
        writeln!(
            out,
            "regime,lambda,alpha,beta,walkers,captures,steps,mean_flight,mean_wait,efficiency,efficiency_mean_of_products,efficiency_per_distance,n_mean_empirical"
        )?;
        match &outcome {
            Ok(r) => {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                    spec.regime,
                    params.lambda,
                    params.alpha,
                    params.beta,
                    r.walker_count,
                    r.captures,
                    r.steps,
                    r.mean_flight,
                    r.mean_wait,
                    r.efficiency,
                    r.efficiency_mean_of_products,
                    r.efficiency_per_distance,
                    r.n_mean_empirical
                )?;
                let mut flags = Vec::new();
                if r.low_statistics {
                    flags.push("low_statistics");
                }
                if r.hit_step_cap {
                    flags.push("step_cap_reached");
                }
                if flags.is_empty() {
                    writeln!(out, "# status: ok")
                } else {
                    writeln!(out, "# status: ok; warnings: {}", flags.join(","))
                }
            }
            Err(e) => writeln!(out, "# status: error: {e}"),
        }
    })?;
    let result = outcome?;
    if let Some(path) = &cfg.trace {
        let (trajectory, _) = trace_walker0(cfg, &params, &spec, stop, &options)?;
        write_trace(cfg, path, &trajectory)?;
    }
    Ok(result)
}

/// Single-walker search path in the trajectory format.
pub fn cmd_path_trace(cfg: &RunConfig) -> Result<Trajectory> {
    let (params, spec, stop, options) = sim_setup(cfg)?;
    let (trajectory, _) = trace_walker0(cfg, &params, &spec, stop, &options)?;
    let mut meta = Metadata::for_config(cfg);
    meta.push("table", "trajectory of walker 0");
    with_output(cfg.output.as_deref(), |out| {
        meta.write(out)?;
        write_trajectory(out, &trajectory)
    })?;
    Ok(trajectory)
}

/// One `(t, k)` cell of a Monte Carlo vs analytic comparison.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompareRow {
    pub t: f64,
    pub k: f64,
    pub empirical_real: f64,
    pub empirical_imag: f64,
    pub analytic: f64,
    pub abs_dev: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompareTable {
    pub rows: Vec<CompareRow>,
    pub fitted_scale: f64,
    pub sup_deviation: f64,
    pub walkers: usize,
    pub low_statistics: bool,
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Monte Carlo propagator against `E_β(-c |k|^α t^β)`.
pub fn cmd_fractional_compare(cfg: &RunConfig) -> Result<CompareTable> {
    let classical = cfg.model == "classical";
    let model = if classical {
        CtrwModel::classical(1.0, 1.0)
    } else {
        let (alpha, beta) = (cfg.params.alpha, cfg.params.beta);
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::invalid("alpha", format!("{alpha} outside (0, 2)")));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::invalid("beta", format!("{beta} outside (0, 1)")));
        }
        CtrwModel::power_law(alpha, beta, 1.0, 1.0)
    };
    let t_values = cfg.t_values.clone().unwrap_or_else(|| {
        if classical {
            vec![50.0, 100.0, 200.0, 400.0]
        } else {
            vec![1000.0, 2000.0, 4000.0, 8000.0]
        }
    });
    let k_values = cfg.k_values.clone().unwrap_or_else(|| {
        if classical {
            log_spaced(0.01, 1.0, 25)
        } else {
            log_spaced(0.002, 0.2, 25)
        }
    });
    let walkers = cfg.walkers.unwrap_or(100_000);
    let mc = mc_propagator_char(
        &model,
        walkers,
        &t_values,
        &k_values,
        &RngStream::new(cfg.seed, 0),
    )?;
    let analytic = mc.analytic()?;
    let a = analytic.characteristic().expect("characteristic grid");
    let e = mc.empirical.characteristic().expect("characteristic grid");
    let mut rows = Vec::with_capacity(t_values.len() * k_values.len());
    for (ti, &t) in t_values.iter().enumerate() {
        for (ki, &k) in k_values.iter().enumerate() {
            let emp = e[ti][ki];
            let an = a[ti][ki].re;
            rows.push(CompareRow {
                t,
                k,
                empirical_real: emp.re,
                empirical_imag: emp.im,
                analytic: an,
                abs_dev: (emp - an).norm(),
            });
        }
    }
    let sup = rows.iter().map(|r| r.abs_dev).fold(0.0, f64::max);

    let mut meta = Metadata::for_config(cfg);
    meta.push(
        "model",
        if classical {
            "gaussian jumps (sigma=1), exponential waits (mean 1); alpha=2, beta=1 limit".to_string()
        } else {
            format!(
                "pareto jumps (alpha={}, scale 1, random sign), pareto waits (beta={}, scale 1)",
                mc.empirical.alpha, mc.empirical.beta
            )
        },
    );
    meta.push("analytic", "E_beta(-c |k|^alpha t^beta), c fitted at the smallest positive t");
    if mc.low_statistics {
        meta.push("warning", format!("low statistics: {walkers} walkers < 10000"));
    }
    with_output(cfg.output.as_deref(), |out| {
        meta.write(out)?;
        writeln!(out, "t,k,empirical_real,empirical_imag,analytic,abs_dev")?;
        for r in &rows {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.t, r.k, r.empirical_real, r.empirical_imag, r.analytic, r.abs_dev
            )?;
        }
        writeln!(out, "# fitted_scale: {}", mc.scale)?;
        writeln!(out, "# sup_deviation: {sup}")
    })?;
    Ok(CompareTable {
        rows,
        fitted_scale: mc.scale,
        sup_deviation: sup,
        walkers,
        low_statistics: mc.low_statistics,
    })
}

/// One tabulated Mittag-Leffler value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MlRow {
    pub beta: f64,
    pub z: f64,
    pub value: f64,
    pub branch: Branch,
}

/// Tabulate `E_β(z)` over a β axis and a non-positive z axis.
pub fn cmd_ml_eval(cfg: &RunConfig) -> Result<Vec<MlRow>> {
    let b = cfg.beta_range.unwrap_or(GridAxis::new(0.1, 1.0, 0.1));
    let z = cfg.z_range.unwrap_or(GridAxis::new(-10.0, 0.0, 0.1));
    let betas = b.values();
    let zs = z.values();
    if betas.is_empty() || zs.is_empty() {
        return Err(Error::Empty("beta or z grid"));
    }
    if let Some(bad) = betas.iter().find(|&&x| !(x > 0.0 && x <= 1.0)) {
        return Err(Error::invalid("beta_range", format!("{bad} outside (0, 1]")));
    }
    if let Some(bad) = zs.iter().find(|&&x| x > 0.0) {
        return Err(Error::invalid("z_range", format!("{bad} must be <= 0")));
    }
    let rows = betas
        .iter()
        .flat_map(|&beta| zs.iter().map(move |&z| (beta, z)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(beta, z)| {
            Ok(MlRow {
                beta,
                z,
                value: mittag_leffler(beta, z)?,
                branch: mittag_leffler_branch(beta, z),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let meta = Metadata::for_config(cfg);
    with_output(cfg.output.as_deref(), |out| {
        meta.write(out)?;
        writeln!(out, "beta,z,value,branch")?;
        for r in &rows {
            let branch = match r.branch {
                Branch::Exact => "exact",
                Branch::Series => "series",
                Branch::Integral => "integral",
            };
            writeln!(out, "{},{},{},{branch}", r.beta, r.z, r.value)?;
        }
        Ok(())
    })?;
    Ok(rows)
}

/// Dispatch on `cfg.command`.
pub fn run(cfg: &RunConfig) -> Result<()> {
    match cfg.command {
        Command::LevySweep => cmd_levy_sweep(cfg).map(drop),
        Command::CtrwSweep => cmd_ctrw_sweep(cfg).map(drop),
        Command::Simulate => cmd_simulate(cfg).map(drop),
        Command::FractionalCompare => cmd_fractional_compare(cfg).map(drop),
        Command::MlEval => cmd_ml_eval(cfg).map(drop),
        Command::PathTrace => cmd_path_trace(cfg).map(drop),
    }
}
