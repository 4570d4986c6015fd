//! Deterministic tick loop, goal evaluation, metrics, single-run and batch
//! execution.
//!
//! Each tick runs fixed phases over the start-of-tick snapshot, every phase
//! iterating agents in ascending id:
//!
//! 1. sense all agents;
//! 2. check triggers (previous tick's hit flags plus current proximity);
//! 3. compute desires, then firing decisions, buffering damage events;
//! 4. apply buffered damage;
//! 5. apply movement;
//! 6. decrement cooldowns, latch the goal breach;
//! 7. advance the tick counter.
//!
//! Randomness comes from the run's single SplitMix64 stream in a fixed
//! order: two jitter draws per protester during construction; then per tick
//! one firing Bernoulli (plus at most one hit Bernoulli) per eligible agent
//! in id order, followed by one movement Bernoulli per living agent in id
//! order. Identical `(scenario, seed)` therefore reproduces the full trace
//! bit for bit.

use alloc::vec;
use alloc::vec::Vec;

use crate::behavior::{active_profile, apply_movement, desire_vector, DesireVector};
use crate::engagement::{apply_damage, check_triggers, firing_decision, resolve_fire, DamageEvent};
use crate::math::Vec2;
use crate::model::{
    build_world, ActiveProfile, AgentId, BuildError, Team, ValidatedScenario,
};
pub use crate::model::WorldState;
use crate::perception::{sense_with_grid, Perception, SpatialGrid};

/// One agent's row in a per-tick trace record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentTraceRow {
    pub id: AgentId,
    pub x: f64,
    pub y: f64,
    pub health: f64,
    pub profile: ActiveProfile,
}

/// Snapshot taken after each executed tick. `tick` is the 0-based index of
/// the executed tick, so a 3-tick run yields records 0, 1, 2.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRecord {
    pub tick: u32,
    pub agents: Vec<AgentTraceRow>,
    pub obstacle_strengths: Vec<f64>,
    /// Damage events applied this tick, amounts clamped to what was absorbed.
    pub events: Vec<DamageEvent>,
}

/// The eight-row outcome table plus run identity.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryReport {
    pub goal_achieved: bool,
    pub dead_protesters: u32,
    pub wounded_protesters: u32,
    pub total_protesters: u32,
    pub dead_police: u32,
    pub wounded_police: u32,
    pub total_police: u32,
    pub obstacles_destroyed: u32,
    pub total_obstacles: u32,
    pub protester_health_damage: f64,
    pub protester_health_total: f64,
    pub police_health_damage: f64,
    pub police_health_total: f64,
    pub ticks_elapsed: u32,
    pub seed: u64,
}

/// Advance the world by one tick; returns the damage events applied this
/// tick (clamped amounts) for tracing.
pub fn tick(world: &mut WorldState, scenario: &ValidatedScenario) -> Vec<DamageEvent> {
    let n = world.agents.len();

    // Phase 1: sense everything from the immutable snapshot.
    let grid = SpatialGrid::build(world, scenario);
    let perceptions: Vec<Perception> = world
        .agents
        .iter()
        .map(|a| {
            if a.is_alive() {
                sense_with_grid(a, world, scenario, &grid)
            } else {
                Perception::default()
            }
        })
        .collect();

    // Phase 2: triggers. Hit flags were filled by the previous tick.
    let prev_hits = core::mem::replace(&mut world.hit_flags, vec![false; n]);
    for i in 0..n {
        let mut agent = world.agents[i];
        check_triggers(&mut agent, prev_hits[i], &perceptions[i], scenario);
        world.agents[i] = agent;
    }

    // Phase 3: desires (cached for movement), then firing decisions in id
    // order, buffering events.
    let desires: Vec<Vec2> = world
        .agents
        .iter()
        .zip(&perceptions)
        .map(|(a, p)| {
            if a.is_alive() {
                desire_vector(a, active_profile(a, scenario), p, scenario).0
            } else {
                Vec2::ZERO
            }
        })
        .collect();

    let mut raw_events: Vec<DamageEvent> = Vec::new();
    let mut rng = world.rng;
    for i in 0..n {
        let agent = &world.agents[i];
        if !agent.is_alive()
            || agent.archetype.weapon_kind().is_none()
            || agent.weapon_cooldown_remaining > 0
        {
            continue;
        }
        let target = firing_decision(
            agent,
            &perceptions[i],
            desires[i],
            &world.obstacles,
            scenario,
            &mut rng,
        );
        if let Some(target) = target {
            raw_events.extend(resolve_fire(i as AgentId, target, world, scenario, &mut rng));
        }
    }

    // Phase 4: apply buffered damage.
    let applied = apply_damage(world, &raw_events);

    // Phase 5: movement, one Bernoulli per living agent in id order.
    let WorldState { agents, obstacles, .. } = world;
    for (agent, desire) in agents.iter_mut().zip(&desires) {
        if !agent.is_alive() {
            continue;
        }
        agent.position =
            apply_movement(agent, DesireVector(*desire), &mut rng, obstacles, scenario);
    }
    world.rng = rng;

    // Phase 6: cooldowns and the goal latch.
    for agent in &mut world.agents {
        if agent.weapon_cooldown_remaining > 0 {
            agent.weapon_cooldown_remaining -= 1;
        }
    }
    if !world.goal_breached {
        world.goal_breached = world.agents.iter().any(|a| {
            a.team == Team::Protesters && a.is_alive() && scenario.protected_area.contains(a.position)
        });
    }

    // Phase 7.
    world.tick += 1;
    applied
}

/// `true` once the run is over: the police held the protected area.
pub fn goal_check(world: &WorldState) -> bool {
    !world.goal_breached
}

fn side_annihilated(world: &WorldState, scenario: &ValidatedScenario) -> bool {
    let police_total = scenario.roster.team_total(Team::Police);
    let protester_total = scenario.roster.team_total(Team::Protesters);
    (police_total > 0 && world.living(Team::Police) == 0)
        || (protester_total > 0 && world.living(Team::Protesters) == 0)
}

fn record_of(world: &WorldState, events: Vec<DamageEvent>) -> TraceRecord {
    TraceRecord {
        tick: world.tick - 1,
        agents: world
            .agents
            .iter()
            .map(|a| AgentTraceRow {
                id: a.id,
                x: a.position.x,
                y: a.position.y,
                health: a.health,
                profile: a.active_profile,
            })
            .collect(),
        obstacle_strengths: world.obstacles.iter().map(|o| o.strength).collect(),
        events,
    }
}

/// Build the outcome table from a finished world.
pub fn summarize(world: &WorldState, scenario: &ValidatedScenario, seed: u64) -> SummaryReport {
    let caps = &scenario.capabilities;
    let mut dead_protesters = 0;
    let mut wounded_protesters = 0;
    let mut dead_police = 0;
    let mut wounded_police = 0;
    for a in &world.agents {
        let dead = !a.is_alive();
        let wounded = a.is_alive() && a.health < caps.max_health(a.team);
        match a.team {
            Team::Protesters => {
                dead_protesters += dead as u32;
                wounded_protesters += wounded as u32;
            }
            Team::Police => {
                dead_police += dead as u32;
                wounded_police += wounded as u32;
            }
        }
    }
    let total_protesters = scenario.roster.team_total(Team::Protesters);
    let total_police = scenario.roster.team_total(Team::Police);
    SummaryReport {
        goal_achieved: goal_check(world),
        dead_protesters,
        wounded_protesters,
        total_protesters,
        dead_police,
        wounded_police,
        total_police,
        obstacles_destroyed: world.obstacles.iter().filter(|o| o.destroyed).count() as u32,
        total_obstacles: world.obstacles.len() as u32,
        protester_health_damage: world.damage_to_protesters,
        protester_health_total: total_protesters as f64 * caps.protester_max_health,
        police_health_damage: world.damage_to_police,
        police_health_total: total_police as f64 * caps.police_max_health,
        ticks_elapsed: world.tick,
        seed,
    }
}

fn run_impl(
    scenario: &ValidatedScenario,
    seed: u64,
    want_trace: bool,
) -> Result<(SummaryReport, Option<Vec<TraceRecord>>), BuildError> {
    let mut world = build_world(scenario, seed)?;
    let mut trace = want_trace.then(Vec::new);
    while world.tick < scenario.max_ticks && !side_annihilated(&world, scenario) {
        let events = tick(&mut world, scenario);
        if let Some(trace) = trace.as_mut() {
            trace.push(record_of(&world, events));
        }
    }
    Ok((summarize(&world, scenario, seed), trace))
}

/// Build the world, tick to termination, report. Termination is
/// `max_ticks` or one rostered side entirely dead.
pub fn run(scenario: &ValidatedScenario, seed: u64) -> Result<SummaryReport, BuildError> {
    run_impl(scenario, seed, false).map(|(report, _)| report)
}

/// [`run`], also collecting one trace record per executed tick.
pub fn run_with_trace(
    scenario: &ValidatedScenario,
    seed: u64,
) -> Result<(SummaryReport, Vec<TraceRecord>), BuildError> {
    run_impl(scenario, seed, true).map(|(report, trace)| (report, trace.unwrap_or_default()))
}

/// One numeric view of a report: a label and its extractor.
pub type ReportField = (&'static str, fn(&SummaryReport) -> f64);

/// Numeric views of a report, used for batch aggregation.
pub const REPORT_FIELDS: [ReportField; 9] = [
    ("goal_achieved", |r| r.goal_achieved as u32 as f64),
    ("dead_protesters", |r| r.dead_protesters as f64),
    ("wounded_protesters", |r| r.wounded_protesters as f64),
    ("dead_police", |r| r.dead_police as f64),
    ("wounded_police", |r| r.wounded_police as f64),
    ("obstacles_destroyed", |r| r.obstacles_destroyed as f64),
    ("protester_health_damage", |r| r.protester_health_damage),
    ("police_health_damage", |r| r.police_health_damage),
    ("ticks_elapsed", |r| r.ticks_elapsed as f64),
];

#[derive(Debug, Clone, PartialEq)]
pub struct FieldStats {
    pub name: &'static str,
    pub mean: f64,
    pub median: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatchResult {
    /// Per-seed reports, ascending by seed regardless of input order.
    pub reports: Vec<SummaryReport>,
    pub stats: Vec<FieldStats>,
}

pub fn median_of(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Run every seed and aggregate per-field statistics.
pub fn run_batch(scenario: &ValidatedScenario, seeds: &[u64]) -> Result<BatchResult, BuildError> {
    let mut reports: Vec<SummaryReport> = seeds
        .iter()
        .map(|&seed| run(scenario, seed))
        .collect::<Result<_, _>>()?;
    reports.sort_by_key(|r| r.seed);

    let mut stats = Vec::new();
    for (name, extract) in REPORT_FIELDS {
        let mut values: Vec<f64> = reports.iter().map(extract).collect();
        let mean = values.iter().sum::<f64>() / values.len().max(1) as f64;
        let median = median_of(&mut values);
        let min = values.first().copied().unwrap_or(f64::NAN);
        let max = values.last().copied().unwrap_or(f64::NAN);
        stats.push(FieldStats { name, mean, median, min, max });
    }
    Ok(BatchResult { reports, stats })
}
