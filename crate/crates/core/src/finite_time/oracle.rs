//! Brute-force transition law by uniformization of the jump generator.

use super::{check_time, Configuration};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Cap on the number of distinct lifted configurations tracked.
pub const ORACLE_MAX_STATES: usize = 200_000;

const TAIL_TOL: f64 = 1e-12;

/// Smallest `J` with `P(Poisson(lambda) > J) < 1e-12`, and the weights
/// `P(Poisson(lambda) = j)` for `j = 0..=J`.
pub fn poisson_truncation(lambda: f64) -> (usize, Vec<f64>) {
    let mut weights = Vec::new();
    let mut log_w = -lambda;
    let mut j = 0usize;
    loop {
        let w = log_w.exp();
        weights.push(w);
        if lambda == 0.0 {
            return (0, weights);
        }
        // past the mode the remaining tail is bounded by a geometric series
        let ratio = lambda / (j as f64 + 2.0);
        if j as f64 > lambda && ratio < 1.0 && w * ratio / (1.0 - ratio) < TAIL_TOL {
            return (j, weights);
        }
        j += 1;
        log_w += lambda.ln() - (j as f64).ln();
    }
}

/// Law of the lifted configuration at time `t` started from `y`.
///
/// Uses `P(t) = sum_j Poisson(N t; j) P^j` with the uniformized kernel
/// `P = I + Q / N`, truncated where the Poisson tail drops below `1e-12`.
pub fn generator_oracle(y: &Configuration, t: f64) -> Result<BTreeMap<Vec<i64>, f64>> {
    check_time(t)?;
    let shape = y.shape();
    let n = shape.n();
    let l = shape.l() as i64;
    let rate = n as f64;
    let (jmax, weights) = poisson_truncation(rate * t);

    let mut current: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
    current.insert(y.positions().to_vec(), 1.0);
    let mut result: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
    for (j, &w) in weights.iter().enumerate() {
        for (state, p) in &current {
            *result.entry(state.clone()).or_insert(0.0) += w * p;
        }
        if result.len() > ORACLE_MAX_STATES {
            return Err(Error::TruncationOverflow {
                max: ORACLE_MAX_STATES,
            });
        }
        if j == jmax {
            break;
        }
        let mut next: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
        for (state, p) in &current {
            let mut stay = 1.0;
            for i in 0..n {
                let ahead = if i + 1 < n {
                    state[i + 1]
                } else {
                    state[0] + l
                };
                if state[i] + 1 < ahead {
                    let mut moved = state.clone();
                    moved[i] += 1;
                    *next.entry(moved).or_insert(0.0) += p / rate;
                    stay -= 1.0 / rate;
                }
            }
            if stay > 0.0 {
                *next.entry(state.clone()).or_insert(0.0) += p * stay;
            }
        }
        if next.len() > ORACLE_MAX_STATES {
            return Err(Error::TruncationOverflow {
                max: ORACLE_MAX_STATES,
            });
        }
        current = next;
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_bethe::SystemShape;

    #[test]
    fn zero_time_is_point_mass() {
        let y = Configuration::step(SystemShape::new(4, 2).unwrap());
        let law = generator_oracle(&y, 0.0).unwrap();
        assert_eq!(law.len(), 1);
        assert_eq!(law[&vec![-1, 0]], 1.0);
    }

    #[test]
    fn poisson_tail_small() {
        for lambda in [0.5, 3.0, 20.0] {
            let (_, w) = poisson_truncation(lambda);
            let mass: f64 = w.iter().sum();
            assert!((1.0 - mass) < 1e-11, "lambda {lambda}: {mass}");
        }
    }

    #[test]
    fn single_particle_is_poisson() {
        let y = Configuration::new(SystemShape::new(3, 1).unwrap(), vec![0]).unwrap();
        let t = 1.7;
        let law = generator_oracle(&y, t).unwrap();
        let mut tv = 0.0;
        let mut p = (-t).exp();
        for j in 0..60i64 {
            tv += (law.get(&vec![j]).copied().unwrap_or(0.0) - p).abs();
            p *= t / (j + 1) as f64;
        }
        assert!(tv < 1e-10, "tv = {tv}");
    }
}
