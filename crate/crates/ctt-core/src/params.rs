//! Colony parameters shared by the construction and improvement phases.

use core::time::Duration;

/// Reward scheme applied to the cycle-best walk's trail entries.
///
/// Both schemes feed `trail += reward`; they differ in the sign of the gap
/// between the cycle best and the global best inside the reciprocal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RewardVariant {
    /// `1 / (1 + cycle_best - global_best)`, and exactly 1 when the cycle
    /// best matches (or beats) the global best. Rewards are always positive.
    #[default]
    CycleGap,
    /// `1 / (1 + global_best - cycle_best)`, applied verbatim.
    GlobalGap,
}

/// Tunable knobs for both ant-system phases.
#[derive(Clone, Debug)]
pub struct AcoParams {
    /// Trail weight in the selection rule.
    pub alpha: f64,
    /// Heuristic weight in the selection rule.
    pub beta: f64,
    /// Evaporation rate, in (0, 1).
    pub rho: f64,
    /// Lower pheromone bound.
    pub t_min: f64,
    /// Upper pheromone bound; trails are initialized to this value.
    pub t_max: f64,
    /// Walks per cycle.
    pub ants: usize,
    /// Hard cap on construction cycles (and on cycles within one
    /// improvement run). The wall-clock budget is normally the effective
    /// stop; drivers enforce it between cycles.
    pub max_cycles: usize,
    /// Wall-clock budget for the construction phase. The core library does
    /// not read clocks; drivers translate this into a between-cycle stop.
    pub time_budget: Duration,
    /// Consecutive non-improving improvement runs before termination.
    pub stall_runs: usize,
    /// Reward scheme for trail updates.
    pub reward_variant: RewardVariant,
    /// Root seed; every walk derives its own stream from it.
    pub seed: u64,
}

impl Default for AcoParams {
    fn default() -> Self {
        AcoParams {
            alpha: 2.0,
            beta: 8.0,
            rho: 0.05,
            t_min: 0.01,
            t_max: 10.0,
            ants: 8,
            max_cycles: usize::MAX,
            time_budget: Duration::from_secs(350),
            stall_runs: 10,
            reward_variant: RewardVariant::CycleGap,
            seed: 0,
        }
    }
}

impl AcoParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Basic sanity checks on the numeric ranges.
    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(ParamError::RhoOutOfRange(self.rho));
        }
        if !(self.t_min < self.t_max) {
            return Err(ParamError::BoundsInverted {
                t_min: self.t_min,
                t_max: self.t_max,
            });
        }
        if self.ants == 0 {
            return Err(ParamError::NoAnts);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParamError {
    #[error("rho must lie in (0, 1), got {0}")]
    RhoOutOfRange(f64),
    #[error("t_min ({t_min}) must be below t_max ({t_max})")]
    BoundsInverted { t_min: f64, t_max: f64 },
    #[error("at least one ant is required")]
    NoAnts,
}

/// One line of a colony trace: the cycle's best objective and the global
/// best after the cycle. Hard-violation counts during construction,
/// quality during improvement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleRecord {
    pub cycle: usize,
    pub best_in_cycle: u32,
    pub global_best: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_published_settings() {
        let p = AcoParams::default();
        assert_eq!(p.alpha, 2.0);
        assert_eq!(p.beta, 8.0);
        assert_eq!(p.rho, 0.05);
        assert_eq!(p.t_min, 0.01);
        assert_eq!(p.t_max, 10.0);
        assert_eq!(p.ants, 8);
        assert_eq!(p.time_budget, Duration::from_secs(350));
        assert_eq!(p.stall_runs, 10);
        assert!(p.validate().is_ok());
    }

    #[test]
    fn rejects_bad_ranges() {
        let mut p = AcoParams::default();
        p.rho = 1.0;
        assert!(matches!(p.validate(), Err(ParamError::RhoOutOfRange(_))));
        p.rho = 0.05;
        p.t_min = 10.0;
        assert!(matches!(
            p.validate(),
            Err(ParamError::BoundsInverted { .. })
        ));
    }
}
