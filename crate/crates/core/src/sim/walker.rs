use std::io::Write;

use crate::efficiency::{Regime, SearchParams};
use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::sampling::{sample_direction_2d, PowerLawSpec};
use rand::Rng;

use super::field::{wrap, Point, TargetField, TargetIndex};

/// When a walker stops. `max_steps` is a hard cap that always applies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StopRule {
    pub max_captures: Option<u64>,
    pub max_steps: u64,
}

impl StopRule {
    pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;

    pub fn captures(n: u64) -> Self {
        Self {
            max_captures: Some(n),
            max_steps: Self::DEFAULT_MAX_STEPS,
        }
    }

    pub fn steps(n: u64) -> Self {
        Self {
            max_captures: None,
            max_steps: n,
        }
    }
}

/// Knobs the search rules leave open.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimOptions {
    /// Lower cutoff of the waiting-time law. `None` uses the mean wait `T`.
    pub wait_cutoff: Option<f64>,
    /// Relative overshoot of the restart circle after a nondestructive
    /// capture.
    pub restart_epsilon: f64,
    /// Starting point. `None` draws a uniform point in the arena.
    pub start: Option<Point>,
    /// Keep per-step records. Totals are always kept.
    pub record_steps: bool,
}

impl Default for SimOptions {
    fn default() -> Self {
        Self {
            wait_cutoff: None,
            restart_epsilon: 1e-3,
            start: None,
            record_steps: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    /// Start point in unwrapped coordinates.
    pub start: Point,
    pub flight_vector: Point,
    /// Distance actually travelled (after truncation by a capture).
    pub flight_length: f64,
    pub wait_time: f64,
    pub captured_target: Option<usize>,
}

impl Step {
    pub fn end(&self) -> Point {
        [
            self.start[0] + self.flight_vector[0],
            self.start[1] + self.flight_vector[1],
        ]
    }
}

/// Raw per-walker tallies; everything in [`SimResult`] derives from these.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct WalkerTotals {
    pub steps: u64,
    /// Rule-2 flights (the ones preceded by a wait).
    pub flights: u64,
    pub captures: u64,
    pub distance: f64,
    pub wait: f64,
    /// Sum over flights of `length * wait`.
    pub length_wait: f64,
    pub hit_step_cap: bool,
}

impl WalkerTotals {
    pub fn merge(&mut self, other: &WalkerTotals) {
        self.steps += other.steps;
        self.flights += other.flights;
        self.captures += other.captures;
        self.distance += other.distance;
        self.wait += other.wait;
        self.length_wait += other.length_wait;
        self.hit_step_cap |= other.hit_step_cap;
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trajectory {
    pub steps: Vec<Step>,
    pub totals: WalkerTotals,
}

/// Empirical efficiency and its decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SimResult {
    /// `captures / (mean_flight * mean_wait * steps)`; the time factor is 1
    /// when waits are switched off.
    pub efficiency: f64,
    /// `captures / sum(l_j t_j)`, the mean-of-products form.
    pub efficiency_mean_of_products: f64,
    /// `captures / distance`, the pure Lévy efficiency.
    pub efficiency_per_distance: f64,
    /// Rule-2 flights per capture.
    pub n_mean_empirical: f64,
    /// Mean distance per step.
    pub mean_flight: f64,
    /// Mean wait per rule-2 flight.
    pub mean_wait: f64,
    pub captures: u64,
    pub steps: u64,
    pub walker_count: usize,
    pub seed: u64,
    pub waits_enabled: bool,
    pub hit_step_cap: bool,
    /// Fewer than ten captures in total.
    pub low_statistics: bool,
}

impl SimResult {
    pub fn from_totals(t: &WalkerTotals, walker_count: usize, seed: u64, waits_enabled: bool) -> Self {
        let steps = t.steps.max(1) as f64;
        let mean_flight = t.distance / steps;
        let mean_wait = if waits_enabled && t.flights > 0 {
            t.wait / t.flights as f64
        } else {
            0.0
        };
        let c = t.captures as f64;
        let time_factor = if waits_enabled { mean_wait } else { 1.0 };
        let ratio = |den: f64| if t.captures == 0 || den <= 0.0 { 0.0 } else { c / den };
        Self {
            efficiency: ratio(mean_flight * time_factor * steps),
            efficiency_mean_of_products: if waits_enabled {
                ratio(t.length_wait)
            } else {
                ratio(t.distance)
            },
            efficiency_per_distance: ratio(t.distance),
            n_mean_empirical: if t.captures == 0 {
                f64::INFINITY
            } else {
                t.flights as f64 / c
            },
            mean_flight,
            mean_wait,
            captures: t.captures,
            steps: t.steps,
            walker_count,
            seed,
            waits_enabled,
            hit_step_cap: t.hit_step_cap,
            low_statistics: t.captures < 10,
        }
    }
}

/// Simulate one walker on (a private copy of) `field`.
pub fn run_walker(
    field: &TargetField,
    params: &SearchParams,
    rng: &mut RngStream,
    stop: StopRule,
    options: &SimOptions,
) -> Result<(Trajectory, SimResult)> {
    let trajectory = walk(field, params, rng, stop, options)?;
    let result = SimResult::from_totals(&trajectory.totals, 1, rng.seed(), params.beta > 0.0);
    Ok((trajectory, result))
}

pub(crate) fn walk(
    field: &TargetField,
    params: &SearchParams,
    rng: &mut RngStream,
    stop: StopRule,
    options: &SimOptions,
) -> Result<Trajectory> {
    params.validate()?;
    if stop.max_steps == 0 {
        return Err(Error::invalid("max_steps", "must be at least 1"));
    }
    if !(options.restart_epsilon > 0.0) {
        return Err(Error::invalid("restart_epsilon", "must be positive"));
    }
    let side = field.arena_side;
    let r_v = params.r_v;
    if !(r_v < side / 4.0) {
        return Err(Error::invalid(
            "r_v",
            format!("{r_v} is not small against the arena side {side}"),
        ));
    }
    let lengths = PowerLawSpec::length(params.alpha, r_v)?;
    let waits = if params.beta > 0.0 {
        Some(PowerLawSpec::wait(
            params.beta,
            options.wait_cutoff.unwrap_or(params.t_mean),
        )?)
    } else {
        None
    };

    let mut index = TargetIndex::new(field, r_v);
    let start = match options.start {
        Some(p) => p,
        None => [rng.random::<f64>() * side, rng.random::<f64>() * side],
    };
    // `pos` is unwrapped for the trajectory; `here` is its wrapped image.
    let mut pos = start;
    let mut traj = Trajectory::default();
    let t = &mut traj.totals;

    while t.steps < stop.max_steps && stop.max_captures.is_none_or(|m| t.captures < m) {
        let here = [wrap(pos[0], side), wrap(pos[1], side)];

        // Rule 1: a visible target is approached directly, without waiting.
        if let Some((j, q, d)) = index.nearest_within(here, r_v) {
            let v = [q[0] - here[0], q[1] - here[1]];
            let step = Step {
                start: pos,
                flight_vector: v,
                flight_length: d,
                wait_time: 0.0,
                captured_target: Some(j),
            };
            pos = step.end();
            t.steps += 1;
            t.captures += 1;
            t.distance += d;
            if options.record_steps {
                traj.steps.push(step);
            }
            pos = capture(&mut index, field.regime, j, pos, r_v, options, rng);
            continue;
        }

        // Rule 2: wait, then fly until the flight ends or a target shows up.
        let wait = waits.as_ref().map_or(0.0, |w| w.sample(rng));
        let length = lengths.sample(rng);
        let dir = sample_direction_2d(rng);
        let hit = index.first_interception(here, dir, length, r_v);
        let travelled = hit.map_or(length, |(_, s)| s);
        let step = Step {
            start: pos,
            flight_vector: [travelled * dir[0], travelled * dir[1]],
            flight_length: travelled,
            wait_time: wait,
            captured_target: hit.map(|(j, _)| j),
        };
        pos = step.end();
        t.steps += 1;
        t.flights += 1;
        t.distance += travelled;
        t.wait += wait;
        t.length_wait += travelled * wait;
        if options.record_steps {
            traj.steps.push(step);
        }
        if let Some((j, _)) = hit {
            t.captures += 1;
            pos = capture(&mut index, field.regime, j, pos, r_v, options, rng);
        }
    }
    t.hit_step_cap = t.steps >= stop.max_steps && stop.max_captures.is_some_and(|m| t.captures < m);
    Ok(traj)
}

/// Apply the capture to the field and return the walker's next position.
fn capture(
    index: &mut TargetIndex,
    regime: Regime,
    j: usize,
    pos: Point,
    r_v: f64,
    options: &SimOptions,
    rng: &mut RngStream,
) -> Point {
    match regime {
        Regime::Destructive => {
            index.remove(j);
            pos
        }
        Regime::Nondestructive => {
            // Restart on a circle just outside the detection radius around
            // the target image nearest to the walker.
            let q = index.position(j);
            let side = index_side(index, pos, q);
            let [dx, dy] = sample_direction_2d(rng);
            let radius = r_v * (1.0 + options.restart_epsilon);
            [side[0] + radius * dx, side[1] + radius * dy]
        }
    }
}

/// Unwrapped image of `q` nearest the unwrapped point `pos`.
fn index_side(index: &TargetIndex, pos: Point, q: Point) -> Point {
    let side = index.side();
    [
        q[0] + side * ((pos[0] - q[0]) / side).round(),
        q[1] + side * ((pos[1] - q[1]) / side).round(),
    ]
}

/// Write steps as `step_index,x0,y0,x1,y1,flight_length,wait_time,captured`.
pub fn write_trajectory<W: Write + ?Sized>(out: &mut W, trajectory: &Trajectory) -> std::io::Result<()> {
    writeln!(out, "step_index,x0,y0,x1,y1,flight_length,wait_time,captured")?;
    for (i, s) in trajectory.steps.iter().enumerate() {
        let e = s.end();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            i,
            s.start[0],
            s.start[1],
            e[0],
            e[1],
            s.flight_length,
            s.wait_time,
            u8::from(s.captured_target.is_some())
        )?;
    }
    Ok(())
}
