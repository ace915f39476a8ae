use rayon::prelude::*;

use crate::efficiency::{Regime, SearchParams};
use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::field::generate_targets;
use super::walker::{walk, SimOptions, SimResult, StopRule, WalkerTotals};

/// Recipe for a random target field.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldSpec {
    pub density: f64,
    pub arena_side: f64,
    pub regime: Regime,
}

impl FieldSpec {
    /// Field whose kinetic mean free path `1 / (2 r_v rho)` equals `lambda`,
    /// sized to hold `expected_targets` on average.
    pub fn for_mean_free_path(lambda: f64, r_v: f64, expected_targets: f64, regime: Regime) -> Self {
        let density = 1.0 / (2.0 * r_v * lambda);
        Self {
            density,
            arena_side: (expected_targets / density).sqrt(),
            regime,
        }
    }

    pub fn mean_free_path(&self, r_v: f64) -> f64 {
        1.0 / (2.0 * r_v * self.density)
    }
}

/// Run `walkers` independent walkers, each on its own field realization and
/// random sub-stream `rng.substream(w)`. Results are in walker order.
pub fn ensemble_walkers(
    field_spec: &FieldSpec,
    params: &SearchParams,
    walkers: usize,
    rng: &RngStream,
    stop: StopRule,
    options: &SimOptions,
) -> Result<Vec<WalkerTotals>> {
    if walkers == 0 {
        return Err(Error::invalid("walkers", "must be at least 1"));
    }
    let options = SimOptions {
        record_steps: false,
        ..*options
    };
    (0..walkers)
        .into_par_iter()
        .map(|w| {
            let mut stream = rng.substream(w as u64);
            let field = generate_targets(
                field_spec.density,
                field_spec.arena_side,
                field_spec.regime,
                &mut stream,
            )?;
            walk(&field, params, &mut stream, stop, &options).map(|t| t.totals)
        })
        .collect()
}

/// Merge per-walker totals in order.
pub fn aggregate(totals: &[WalkerTotals], seed: u64, waits_enabled: bool) -> SimResult {
    let mut sum = WalkerTotals::default();
    for t in totals {
        sum.merge(t);
    }
    SimResult::from_totals(&sum, totals.len(), seed, waits_enabled)
}

/// Ensemble efficiency over independent walkers and field realizations.
pub fn ensemble_efficiency(
    field_spec: &FieldSpec,
    params: &SearchParams,
    walkers: usize,
    rng: &RngStream,
    stop: StopRule,
    options: &SimOptions,
) -> Result<SimResult> {
    let totals = ensemble_walkers(field_spec, params, walkers, rng, stop, options)?;
    Ok(aggregate(&totals, rng.seed(), params.beta > 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::walker::run_walker;

    #[test]
    fn single_walker_matches_run_walker() {
        let spec = FieldSpec::for_mean_free_path(50.0, 1.0, 400.0, Regime::Destructive);
        let params = SearchParams::new(1.0, 50.0, 5.0, 1.0, 0.5, 2.0).unwrap();
        let rng = RngStream::new(21, 0);
        let stop = StopRule::captures(30);
        let ens = ensemble_efficiency(&spec, &params, 1, &rng, stop, &SimOptions::default()).unwrap();

        let mut stream = rng.substream(0);
        let field = generate_targets(spec.density, spec.arena_side, spec.regime, &mut stream).unwrap();
        let (_, single) = run_walker(&field, &params, &mut stream, stop, &SimOptions::default()).unwrap();
        assert_eq!(ens, single);
    }

    #[test]
    fn deterministic() {
        let spec = FieldSpec::for_mean_free_path(30.0, 1.0, 300.0, Regime::Nondestructive);
        let params = SearchParams::new(1.0, 30.0, 5.0, 1.2, 0.4, 2.0).unwrap();
        let run = || {
            ensemble_efficiency(
                &spec,
                &params,
                8,
                &RngStream::new(5, 0),
                StopRule::captures(20),
                &SimOptions::default(),
            )
            .unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn zero_walkers_rejected() {
        let spec = FieldSpec::for_mean_free_path(30.0, 1.0, 300.0, Regime::Destructive);
        let params = SearchParams::default();
        assert!(ensemble_efficiency(
            &spec,
            &params,
            0,
            &RngStream::new(5, 0),
            StopRule::captures(1),
            &SimOptions::default()
        )
        .is_err());
    }
}
