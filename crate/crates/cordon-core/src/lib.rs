//! Deterministic agent-based crowd-control simulation engine.
//!
//! Two sides — a police line and a protesting crowd — interact on a flat
//! 2-D terrain. Every agent carries a behavior profile: scalar weights in
//! `[0, 1]` over four named behaviors, signed sub-behavior weights in
//! `[-1, 1]` that refine a behavior toward a target class, and likelihoods
//! gating movement and weapon use. Each tick the active profile and the
//! agent's perception of the world are folded into a desire vector that
//! sets the movement heading; triggers (taking damage, or a close approach
//! for police) permanently swap an agent onto its being-hit profile.
//!
//! The whole engine is a pure function of `(scenario, seed)`: one
//! explicitly specified PRNG stream, fixed phase ordering, fixed agent-id
//! ordering. Running the same pair twice yields bit-identical worlds,
//! reports, and traces.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats, and the CLI live
//! in the companion `cordon-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod behavior;
pub mod engagement;
pub mod engine;
pub mod math;
pub mod model;
pub mod perception;
pub mod rng;
pub mod testutil;

pub use math::{Rect, Vec2};
pub use model::{
    build_world, validate_scenario, ActiveProfile, Agent, AgentArchetype, AgentId,
    BehaviorName, BehaviorProfile, BehaviorWeights, BuildError, Capabilities, FenceRun,
    LeaderCase, Obstacle, ProfilePair, Roster, Scenario, SubBehaviorName, SubWeights, Team,
    ValidateError, ValidatedScenario, WeaponKind, WeaponSpec, WeaponTable,
};
pub use engine::{
    run, run_batch, run_with_trace, BatchResult, FieldStats, SummaryReport, TraceRecord,
    WorldState,
};
pub use rng::SplitMix64;
