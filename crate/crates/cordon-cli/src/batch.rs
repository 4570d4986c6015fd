//! Batch and paired-comparison runs with table rendering.

use cordon_core::model::ValidatedScenario;
use cordon_core::{run, run_batch, BatchResult, SummaryReport};

use crate::error::CliError;
use crate::report::fmt_f64;

/// Inclusive seed range `a..b` (a single number means one seed).
pub fn parse_seed_range(text: &str) -> Result<Vec<u64>, CliError> {
    let parse = |t: &str| -> Result<u64, CliError> {
        t.parse()
            .map_err(|_| CliError::Usage(format!("bad seed {t:?} (expected an integer)")))
    };
    let seeds = match text.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(CliError::Usage(format!("empty seed range {text:?}")));
            }
            (a..=b).collect()
        }
        None => vec![parse(text)?],
    };
    Ok(seeds)
}

pub fn run_batch_for(scenario: &ValidatedScenario, seeds: &[u64]) -> Result<BatchResult, CliError> {
    run_batch(scenario, seeds).map_err(CliError::Build)
}

/// Per-seed rows plus the aggregate table.
pub fn render_batch(result: &BatchResult) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:>8} {:>5} {:>7} {:>7} {:>7} {:>7} {:>9} {:>10} {:>10} {:>6}\n",
        "seed", "goal", "dead_p", "wnd_p", "dead_c", "wnd_c", "obstacles", "dmg_prot", "dmg_police", "ticks"
    ));
    for r in &result.reports {
        out.push_str(&format!(
            "{:>8} {:>5} {:>7} {:>7} {:>7} {:>7} {:>9} {:>10} {:>10} {:>6}\n",
            r.seed,
            if r.goal_achieved { "yes" } else { "no" },
            r.dead_protesters,
            r.wounded_protesters,
            r.dead_police,
            r.wounded_police,
            r.obstacles_destroyed,
            fmt_f64(r.protester_health_damage),
            fmt_f64(r.police_health_damage),
            r.ticks_elapsed,
        ));
    }
    out.push('\n');
    out.push_str(&format!(
        "{:<26} {:>10} {:>10} {:>10} {:>10}\n",
        "field", "mean", "median", "min", "max"
    ));
    for s in &result.stats {
        out.push_str(&format!(
            "{:<26} {:>10.3} {:>10.3} {:>10.3} {:>10.3}\n",
            s.name, s.mean, s.median, s.min, s.max
        ));
    }
    out
}

/// Machine form of a batch: one flat record per seed separated by blank lines.
pub fn render_batch_records(result: &BatchResult) -> String {
    let mut out = String::new();
    for r in &result.reports {
        out.push_str(&crate::report::render_record(r));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparePair {
    pub seed: u64,
    pub a: SummaryReport,
    pub b: SummaryReport,
}

/// Paired-seed comparison of two scenarios: the same seed list runs
/// against both, isolating the effect of the changed parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareResult {
    pub pairs: Vec<ComparePair>,
}

impl CompareResult {
    pub fn fraction_of_pairs(&self, pred: impl Fn(&SummaryReport, &SummaryReport) -> bool) -> f64 {
        if self.pairs.is_empty() {
            return f64::NAN;
        }
        let hits = self.pairs.iter().filter(|p| pred(&p.a, &p.b)).count();
        hits as f64 / self.pairs.len() as f64
    }

    pub fn fraction_a(&self, pred: impl Fn(&SummaryReport) -> bool) -> f64 {
        self.fraction_of_pairs(|a, _| pred(a))
    }

    pub fn fraction_b(&self, pred: impl Fn(&SummaryReport) -> bool) -> f64 {
        self.fraction_of_pairs(|_, b| pred(b))
    }

    pub fn median_a(&self, f: impl Fn(&SummaryReport) -> f64) -> f64 {
        let mut values: Vec<f64> = self.pairs.iter().map(|p| f(&p.a)).collect();
        cordon_core::engine::median_of(&mut values)
    }

    pub fn median_b(&self, f: impl Fn(&SummaryReport) -> f64) -> f64 {
        let mut values: Vec<f64> = self.pairs.iter().map(|p| f(&p.b)).collect();
        cordon_core::engine::median_of(&mut values)
    }
}

pub fn compare(
    a: &ValidatedScenario,
    b: &ValidatedScenario,
    seeds: &[u64],
) -> Result<CompareResult, CliError> {
    let mut sorted = seeds.to_vec();
    sorted.sort_unstable();
    let mut pairs = Vec::with_capacity(sorted.len());
    for seed in sorted {
        pairs.push(ComparePair {
            seed,
            a: run(a, seed).map_err(CliError::Build)?,
            b: run(b, seed).map_err(CliError::Build)?,
        });
    }
    Ok(CompareResult { pairs })
}

pub fn render_compare(result: &CompareResult) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:>8} {:>6} {:>6} {:>7} {:>7} {:>7} {:>7} {:>9} {:>9} {:>8} {:>8}\n",
        "seed", "goalA", "goalB", "wndP_A", "wndP_B", "wndC_A", "wndC_B", "obst_A", "obst_B", "deadP_B", "deadC_B"
    ));
    for p in &result.pairs {
        out.push_str(&format!(
            "{:>8} {:>6} {:>6} {:>7} {:>7} {:>7} {:>7} {:>9} {:>9} {:>8} {:>8}\n",
            p.seed,
            if p.a.goal_achieved { "yes" } else { "no" },
            if p.b.goal_achieved { "yes" } else { "no" },
            p.a.wounded_protesters,
            p.b.wounded_protesters,
            p.a.wounded_police,
            p.b.wounded_police,
            p.a.obstacles_destroyed,
            p.b.obstacles_destroyed,
            p.b.dead_protesters,
            p.b.dead_police,
        ));
    }
    out.push('\n');
    let pct = |x: f64| format!("{:.1}%", 100.0 * x);
    out.push_str(&format!(
        "pairs: {}\n\
         wounded protesters B >= A: {}\n\
         wounded protesters medians (A, B): ({}, {})\n\
         wounded police B > 0: {}\n\
         wounded police medians (A, B): ({}, {})\n\
         obstacles destroyed B >= A: {}\n\
         goal achieved rate (A, B): ({}, {})\n\
         dead medians protesters (A, B): ({}, {})\n\
         dead medians police (A, B): ({}, {})\n",
        result.pairs.len(),
        pct(result.fraction_of_pairs(|a, b| b.wounded_protesters >= a.wounded_protesters)),
        result.median_a(|r| r.wounded_protesters as f64),
        result.median_b(|r| r.wounded_protesters as f64),
        pct(result.fraction_b(|b| b.wounded_police > 0)),
        result.median_a(|r| r.wounded_police as f64),
        result.median_b(|r| r.wounded_police as f64),
        pct(result.fraction_of_pairs(|a, b| b.obstacles_destroyed >= a.obstacles_destroyed)),
        pct(result.fraction_a(|a| a.goal_achieved)),
        pct(result.fraction_b(|b| b.goal_achieved)),
        result.median_a(|r| r.dead_protesters as f64),
        result.median_b(|r| r.dead_protesters as f64),
        result.median_a(|r| r.dead_police as f64),
        result.median_b(|r| r.dead_police as f64),
    ));
    out
}
