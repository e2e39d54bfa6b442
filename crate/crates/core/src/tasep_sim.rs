//! Continuous-time Monte Carlo of TASEP on a ring.
//!
//! Only the `N` lifted representatives `x_1 < ... < x_N < x_1 + L` are
//! simulated; site `s` of the ring is `s mod L`. Bonds carry labels in the
//! step frame `-N+1, ..., L-N`, bond `m` joining sites `m` and `m+1`.

use crate::error::{Error, Result};
use crate::finite_time::{duality_threshold, Configuration};
use crate::ring_bethe::SystemShape;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

const NOT_MOBILE: usize = usize::MAX;
const CHECK_EVERY: u64 = 1 << 10;
/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialCondition {
    /// `x_j = j d`, requires `L = d N`
    Flat { d: usize },
    /// `x_j = j - N`
    Step,
}

impl InitialCondition {
    pub fn configuration(&self, shape: SystemShape) -> Result<Configuration> {
        match *self {
            InitialCondition::Flat { d } => {
                if d == 0 || shape.l() != d * shape.n() {
                    return Err(Error::ShapeMismatch(format!(
                        "flat spacing d={d} needs L = d N, got L={}, N={}",
                        shape.l(),
                        shape.n()
                    )));
                }
                Configuration::flat(d, shape.n())
            }
            InitialCondition::Step => Ok(Configuration::step(shape)),
        }
    }
}

/// What a trajectory reports at the final time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// lifted position `x_k(t)` of particle `k`
    Tagged(usize),
    /// `J_m(t)`, net number of jumps across bond `m`
    Current(i64),
}

impl FromStr for Observable {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (kind, arg) = s
            .split_once(':')
            .ok_or_else(|| format!("observable {s:?} must look like tagged:K or current:M"))?;
        match kind {
            "tagged" => arg
                .parse()
                .map(Observable::Tagged)
                .map_err(|e| format!("{arg:?}: {e}")),
            "current" => arg
                .parse()
                .map(Observable::Current)
                .map_err(|e| format!("{arg:?}: {e}")),
            _ => Err(format!("unknown observable kind {kind:?}")),
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observable::Tagged(k) => write!(f, "tagged:{k}"),
            Observable::Current(m) => write!(f, "current:{m}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RingState {
    shape: SystemShape,
    initial: Configuration,
    positions: Vec<i64>,
    clock: f64,
    jump_counts: Vec<u64>,
    /// crossings of bond `m`, stored at index `m + N - 1`
    bond_crossings: Vec<u64>,
    mobile: Vec<usize>,
    mobile_slot: Vec<usize>,
    events: u64,
}

impl RingState {
    pub fn init(ic: InitialCondition, shape: SystemShape) -> Result<Self> {
        Ok(Self::from_configuration(ic.configuration(shape)?))
    }

    pub fn from_configuration(initial: Configuration) -> Self {
        let shape = initial.shape();
        let n = shape.n();
        let mut state = Self {
            shape,
            positions: initial.positions().to_vec(),
            initial,
            clock: 0.0,
            jump_counts: vec![0; n],
            bond_crossings: vec![0; shape.l()],
            mobile: Vec::with_capacity(n),
            mobile_slot: vec![NOT_MOBILE; n],
            events: 0,
        };
        for j in 0..n {
            if state.gap(j) > 1 {
                state.add_mobile(j);
            }
        }
        state
    }

    pub fn shape(&self) -> SystemShape {
        self.shape
    }

    pub fn clock(&self) -> f64 {
        self.clock
    }

    pub fn positions(&self) -> &[i64] {
        &self.positions
    }

    pub fn initial(&self) -> &Configuration {
        &self.initial
    }

    pub fn jump_counts(&self) -> &[u64] {
        &self.jump_counts
    }

    pub fn events(&self) -> u64 {
        self.events
    }

    /// Indices (0-based) of particles whose right neighbour site is empty.
    pub fn mobile(&self) -> &[usize] {
        &self.mobile
    }

    /// Occupancy of sites `0..L`.
    pub fn occupancy(&self) -> Vec<bool> {
        let l = self.shape.l() as i64;
        let mut occ = vec![false; l as usize];
        for &x in &self.positions {
            occ[x.rem_euclid(l) as usize] = true;
        }
        occ
    }

    fn next_position(&self, j: usize) -> i64 {
        let n = self.positions.len();
        if j + 1 < n {
            self.positions[j + 1]
        } else {
            self.positions[0] + self.shape.l() as i64
        }
    }

    fn gap(&self, j: usize) -> i64 {
        self.next_position(j) - self.positions[j]
    }

    fn add_mobile(&mut self, j: usize) {
        if self.mobile_slot[j] == NOT_MOBILE {
            self.mobile_slot[j] = self.mobile.len();
            self.mobile.push(j);
        }
    }

    fn remove_mobile(&mut self, j: usize) {
        let slot = self.mobile_slot[j];
        if slot == NOT_MOBILE {
            return;
        }
        let last = self.mobile.pop().expect("mobile set holds j");
        if last != j {
            self.mobile[slot] = last;
            self.mobile_slot[last] = slot;
        }
        self.mobile_slot[j] = NOT_MOBILE;
    }

    /// Step-frame label `-N+1..=L-N` of the ring site of lifted position `x`.
    pub fn site_label(&self, x: i64) -> i64 {
        let (l, n) = (self.shape.l() as i64, self.shape.n() as i64);
        (x + n - 1).rem_euclid(l) - (n - 1)
    }

    fn jump(&mut self, j: usize) {
        let bond = self.site_label(self.positions[j]);
        let n = self.positions.len();
        self.bond_crossings[(bond + n as i64 - 1) as usize] += 1;
        self.positions[j] += 1;
        self.jump_counts[j] += 1;
        if self.gap(j) == 1 {
            self.remove_mobile(j);
        }
        let prev = if j == 0 { n - 1 } else { j - 1 };
        if prev != j {
            self.add_mobile(prev);
        }
        self.events += 1;
    }

    /// Advances the dynamics to time `t`.
    pub fn run_until<R: Rng>(&mut self, t: f64, rng: &mut R) -> Result<()> {
        if !(t >= self.clock) || !t.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "target time {t} precedes the clock {}",
                self.clock
            )));
        }
        loop {
            let rate = self.mobile.len();
            debug_assert!(rate > 0, "N < L leaves a mobile particle");
            let u: f64 = rng.random();
            let wait = -(1.0 - u).ln() / rate as f64;
            if self.clock + wait > t {
                self.clock = t;
                return Ok(());
            }
            self.clock += wait;
            let pick = self.mobile[rng.random_range(0..rate)];
            self.jump(pick);
            if self.events.is_multiple_of(CHECK_EVERY) {
                debug_assert!(
                    self.check_invariants().is_ok(),
                    "{:?}",
                    self.check_invariants()
                );
            }
        }
    }

    /// Verifies exclusion, ordering and the mobile-set bookkeeping.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.positions.len();
        for j in 0..n {
            let g = self.gap(j);
            if !(1..=self.shape.l() as i64).contains(&g) {
                return Err(Error::InvalidConfiguration(format!(
                    "gap {g} after particle {}",
                    j + 1
                )));
            }
            if (g > 1) != (self.mobile_slot[j] != NOT_MOBILE) {
                return Err(Error::InvalidConfiguration(format!(
                    "mobile flag of particle {} is stale",
                    j + 1
                )));
            }
        }
        if self.occupancy().iter().filter(|&&o| o).count() != n {
            return Err(Error::InvalidConfiguration(
                "occupancy count differs from N".into(),
            ));
        }
        Ok(())
    }

    /// `x_k(t) - x_k(0)` for 1-based `k`.
    pub fn tagged_displacement(&self, k: usize) -> i64 {
        self.positions[k - 1] - self.initial.x(k)
    }

    /// Number of jumps across bond `m`, `-N+1 <= m <= L-N`.
    pub fn current(&self, m: i64) -> Result<u64> {
        let (l, n) = (self.shape.l() as i64, self.shape.n() as i64);
        if !(-n + 1..=l - n).contains(&m) {
            return Err(Error::InvalidArgument(format!(
                "bond m = {m} outside {}..={}",
                -n + 1,
                l - n
            )));
        }
        Ok(self.bond_crossings[(m + n - 1) as usize])
    }

    pub fn observe(&self, obs: Observable) -> Result<i64> {
        match obs {
            Observable::Tagged(k) => {
                if k == 0 || k > self.shape.n() {
                    return Err(Error::InvalidArgument(format!(
                        "particle index k = {k} outside 1..={}",
                        self.shape.n()
                    )));
                }
                Ok(self.positions[k - 1])
            }
            Observable::Current(m) => self.current(m).map(|c| c as i64),
        }
    }

    /// Counts `(i, m, k)` with `x_k(0) <= iL + m` for which
    /// `x_k(t) >= iL+m+1` and the current threshold disagree.
    pub fn duality_violations(&self) -> usize {
        let (l, n) = (self.shape.l() as i64, self.shape.n() as i64);
        let max_x = self.positions.iter().copied().max().unwrap_or(0);
        let i_max = max_x.div_euclid(l) + 2;
        let mut bad = 0;
        for m in -n + 1..=l - n {
            let j_m = self.bond_crossings[(m + n - 1) as usize] as i64;
            for k in 1..=n as usize {
                for i in 1..=i_max {
                    let Ok(threshold) = duality_threshold(&self.initial, i, m, k) else {
                        continue;
                    };
                    if (self.positions[k - 1] > i * l + m) != (j_m >= threshold) {
                        bad += 1;
                    }
                }
            }
        }
        bad
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    pub seed: u64,
    pub samples: usize,
    /// worker threads; `None` uses the global pool
    pub threads: Option<usize>,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 10_000,
            threads: None,
        }
    }
}

/// The generator for trajectory `index`: stream `index` of the seed.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// One trajectory per sample; `f` maps the final state to a value.
/// Results are ordered by sample index whatever the thread count.
pub fn ensemble_map<T, F>(
    ic: InitialCondition,
    shape: SystemShape,
    t: f64,
    config: &SimConfig,
    f: F,
) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&RingState) -> Result<T> + Sync + Send,
{
    let start = RingState::init(ic, shape)?;
    let run = || -> Result<Vec<T>> {
        (0..config.samples as u64)
            .into_par_iter()
            .map(|s| {
                let mut state = start.clone();
                state.run_until(t, &mut sample_rng(config.seed, s))?;
                f(&state)
            })
            .collect()
    };
    match config.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(run),
        None => run(),
    }
}

/// `P(observable >= threshold)` with a Wilson 95% interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalRow {
    pub threshold: i64,
    pub prob: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub samples: usize,
}

/// Wilson score interval for `hits` successes in `n` trials.
pub fn wilson_interval(hits: usize, n: usize) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = hits as f64 / nf;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / denom;
    let half = Z95 * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Empirical tail probabilities of a sample at each threshold.
pub fn tail_table(values: &[i64], thresholds: &[i64]) -> Vec<EmpiricalRow> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    thresholds
        .iter()
        .map(|&a| {
            let hits = sorted.len() - sorted.partition_point(|&v| v < a);
            let (ci_low, ci_high) = wilson_interval(hits, sorted.len());
            EmpiricalRow {
                threshold: a,
                prob: hits as f64 / sorted.len().max(1) as f64,
                ci_low,
                ci_high,
                samples: sorted.len(),
            }
        })
        .collect()
}

/// Simulates `config.samples` trajectories to time `t` and tabulates
/// `P(observable >= a)` for each threshold `a`.
pub fn ensemble_cdf(
    ic: InitialCondition,
    shape: SystemShape,
    t: f64,
    observable: Observable,
    thresholds: &[i64],
    config: &SimConfig,
) -> Result<Vec<EmpiricalRow>> {
    if config.samples < 100 {
        return Err(Error::InvalidArgument(format!(
            "at least 100 samples are needed, got {}",
            config.samples
        )));
    }
    let values = ensemble_map(ic, shape, t, config, |s| s.observe(observable))?;
    Ok(tail_table(&values, thresholds))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn initial_configurations() {
        let flat = RingState::init(
            InitialCondition::Flat { d: 2 },
            SystemShape::new(6, 3).unwrap(),
        )
        .unwrap();
        assert_eq!(flat.positions(), &[2, 4, 6]);
        let step =
            RingState::init(InitialCondition::Step, SystemShape::new(5, 2).unwrap()).unwrap();
        assert_eq!(step.positions(), &[-1, 0]);
        assert_eq!(step.mobile(), &[1]);
        assert_eq!(step.occupancy().iter().filter(|&&o| o).count(), 2);
        assert!(matches!(
            RingState::init(
                InitialCondition::Flat { d: 2 },
                SystemShape::new(7, 3).unwrap()
            ),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn site_labels_in_step_frame() {
        let s = RingState::init(InitialCondition::Step, SystemShape::new(5, 2).unwrap()).unwrap();
        let labels: Vec<i64> = (-1..9).map(|x| s.site_label(x)).collect();
        assert_eq!(labels, vec![-1, 0, 1, 2, 3, -1, 0, 1, 2, 3]);
    }

    #[test]
    fn invariants_hold_along_a_trajectory() {
        let mut s = RingState::init(
            InitialCondition::Flat { d: 2 },
            SystemShape::new(12, 6).unwrap(),
        )
        .unwrap();
        let mut rng = sample_rng(7, 0);
        for step in 1..50 {
            s.run_until(step as f64, &mut rng).unwrap();
            s.check_invariants().unwrap();
            let total: u64 = s.jump_counts().iter().sum();
            let crossings: u64 = (-5..=6).map(|m| s.current(m).unwrap()).sum();
            assert_eq!(total, crossings);
            for k in 1..=6 {
                assert_eq!(s.tagged_displacement(k), s.jump_counts()[k - 1] as i64);
            }
            assert_eq!(s.duality_violations(), 0);
        }
    }

    #[test]
    fn clock_cannot_rewind() {
        let mut s =
            RingState::init(InitialCondition::Step, SystemShape::new(4, 2).unwrap()).unwrap();
        let mut rng = sample_rng(1, 0);
        s.run_until(2.0, &mut rng).unwrap();
        assert!(s.run_until(1.0, &mut rng).is_err());
    }

    #[test]
    fn wilson_interval_contains_estimate() {
        let (lo, hi) = wilson_interval(30, 100);
        assert!(lo < 0.3 && 0.3 < hi);
        assert!(wilson_interval(0, 50).0 < 1e-15);
    }

    #[test]
    fn observable_parsing() {
        assert_eq!(
            "tagged:3".parse::<Observable>().unwrap(),
            Observable::Tagged(3)
        );
        assert_eq!(
            "current:-2".parse::<Observable>().unwrap(),
            Observable::Current(-2)
        );
        assert!("speed:1".parse::<Observable>().is_err());
    }
}
