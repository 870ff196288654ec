use std::fmt;
use std::time::Duration;

use gibbs_grid::{ChainResult, Grid, MultiChainResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Solved,
    BudgetExhausted,
    /// Anti mode has no terminal energy; the run simply completes.
    Maximized,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Solved => "solved",
            Self::BudgetExhausted => "budget-exhausted",
            Self::Maximized => "maximized",
        })
    }
}

/// Summary of a run. `Display` covers the deterministic part only; wall
/// time goes to stderr so identical command lines give identical stdout.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub outcome: Outcome,
    pub chain: usize,
    pub chains: usize,
    pub seed: u64,
    pub iterations: u64,
    pub first_hit: Option<u64>,
    pub hit_count: u64,
    pub initial_q: u64,
    pub best_q: u64,
    pub accepted: u64,
    pub grid: Grid,
    pub wall_time: Duration,
}

impl RunReport {
    pub fn new(
        multi: &MultiChainResult,
        base_seed: u64,
        maximize: bool,
        wall_time: Duration,
    ) -> Self {
        let r: &ChainResult = multi.best();
        let outcome = if maximize {
            Outcome::Maximized
        } else if r.best_q == 0 {
            Outcome::Solved
        } else {
            Outcome::BudgetExhausted
        };
        Self {
            outcome,
            chain: multi.chosen,
            chains: multi.chains.len(),
            seed: base_seed.wrapping_add(multi.chosen as u64),
            iterations: r.iterations,
            first_hit: r.first_hit,
            hit_count: r.hit_count,
            initial_q: r.initial_q,
            best_q: r.best_q,
            accepted: r.accept_count,
            grid: r.best_state.clone(),
            wall_time,
        }
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "outcome: {}", self.outcome)?;
        writeln!(f, "chain: {} of {}", self.chain, self.chains)?;
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "iterations: {}", self.iterations)?;
        match self.first_hit {
            Some(t) => writeln!(f, "first_hit: {t}")?,
            None => writeln!(f, "first_hit: none")?,
        }
        writeln!(f, "hit_count: {}", self.hit_count)?;
        writeln!(f, "initial_q: {}", self.initial_q)?;
        writeln!(f, "best_q: {}", self.best_q)?;
        writeln!(f, "accepted: {}", self.accepted)?;
        writeln!(f)?;
        write!(f, "{}", self.grid)
    }
}
