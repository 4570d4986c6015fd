//! Scenario and world fixtures for tests. Not part of the public API.
#![doc(hidden)]

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{Rect, Vec2};
use crate::model::*;
use crate::rng::SplitMix64;

pub fn base_weapons() -> WeaponTable {
    let spec = |kind, max_range, damage, hit_probability, area_radius, cooldown| WeaponSpec {
        kind,
        max_range,
        damage,
        hit_probability,
        area_radius,
        cooldown,
    };
    WeaponTable {
        plastic_bullet: spec(WeaponKind::PlasticBullet, 7.0, 2.0, 0.5, 0.0, 8),
        water_cannon: spec(WeaponKind::WaterCannon, 6.0, 2.0, 0.7, 0.0, 10),
        tear_gas: spec(WeaponKind::TearGas, 7.0, 2.0, 1.0, 4.0, 25),
        short_gun: spec(WeaponKind::ShortGun, 7.0, 2.0, 0.6, 0.0, 15),
        baton: spec(WeaponKind::Baton, 2.0, 3.0, 0.8, 0.0, 6),
        stone: spec(WeaponKind::Stone, 5.0, 3.0, 0.4, 0.0, 8),
    }
}

pub fn base_capabilities() -> Capabilities {
    Capabilities {
        sensor_range: 50.0,
        comm_range: 100.0,
        speed: 1.5,
        police_max_health: 200.0,
        protester_max_health: 100.0,
    }
}

fn profile(
    weights: BehaviorWeights,
    sub_weights: SubWeights,
    movement_likelihood: f64,
    firing_likelihood: f64,
) -> BehaviorProfile {
    BehaviorProfile { weights, sub_weights, movement_likelihood, firing_likelihood }
}

pub fn police_profiles() -> ProfilePair {
    ProfilePair {
        default: profile(
            BehaviorWeights { opponent: 0.2, allied: 0.8, ..Default::default() },
            SubWeights::default(),
            0.1,
            0.0,
        ),
        being_hit: Some(profile(
            BehaviorWeights { opponent: 0.2, allied: 0.8, ..Default::default() },
            SubWeights::all_opponent(0.1),
            1.0,
            1.0,
        )),
    }
}

pub fn passive_profiles() -> ProfilePair {
    ProfilePair {
        default: profile(
            BehaviorWeights { opponent: 0.05, allied: 0.45, leaders: 0.5, terrain: 0.0 },
            SubWeights::default(),
            1.0,
            0.0,
        ),
        being_hit: Some(profile(
            BehaviorWeights { opponent: 1.0, allied: 0.0, leaders: 0.0, terrain: 0.0 },
            SubWeights::all_opponent(-0.5),
            1.0,
            0.0,
        )),
    }
}

pub fn moderate_profiles() -> ProfilePair {
    ProfilePair {
        default: profile(
            BehaviorWeights { opponent: 0.15, allied: 0.35, leaders: 0.35, terrain: 0.15 },
            SubWeights::default(),
            1.0,
            0.0,
        ),
        being_hit: None,
    }
}

pub fn aggressive_profiles() -> ProfilePair {
    let default_subs = SubWeights {
        keep_leader_sensor_range: 0.5,
        keep_leader_comm_range: 0.5,
        ..SubWeights::default()
    };
    let hit_subs = SubWeights { close_to_opponent: 0.3, ..SubWeights::default() };
    ProfilePair {
        default: profile(
            BehaviorWeights { opponent: 0.4, allied: 0.3, leaders: 0.3, terrain: 0.0 },
            default_subs,
            1.0,
            0.5,
        ),
        being_hit: Some(profile(
            BehaviorWeights { opponent: 0.5, allied: 0.25, leaders: 0.25, terrain: 0.0 },
            hit_subs,
            1.0,
            1.0,
        )),
    }
}

pub fn leader_profiles(case: LeaderCase) -> ProfilePair {
    let sub_weights = match case {
        LeaderCase::Moderate => SubWeights::default(),
        LeaderCase::Aggressive => SubWeights::all_opponent(0.1),
    };
    ProfilePair {
        default: profile(
            BehaviorWeights { opponent: 0.45, allied: 0.0, leaders: 0.0, terrain: 0.55 },
            sub_weights,
            1.0,
            0.0,
        ),
        being_hit: None,
    }
}

pub fn full_profiles(case: LeaderCase) -> ProfileSet {
    let mut set = ProfileSet::default();
    for a in [
        AgentArchetype::PolicePlasticBullet,
        AgentArchetype::PoliceTearGas,
        AgentArchetype::PoliceWaterCannon,
        AgentArchetype::PoliceShortGun,
    ] {
        set.set(a, police_profiles());
    }
    set.set(AgentArchetype::PassiveProtester, passive_profiles());
    set.set(AgentArchetype::ModerateStone, moderate_profiles());
    set.set(AgentArchetype::ModerateBaton, moderate_profiles());
    set.set(AgentArchetype::AggressiveStone, aggressive_profiles());
    set.set(AgentArchetype::AggressiveBaton, aggressive_profiles());
    set.set(AgentArchetype::ProtestLeader, leader_profiles(case));
    set
}

pub fn paper_roster() -> Roster {
    let mut roster = Roster::new();
    roster.set(AgentArchetype::PolicePlasticBullet, 5);
    roster.set(AgentArchetype::PoliceTearGas, 5);
    roster.set(AgentArchetype::PoliceWaterCannon, 5);
    roster.set(AgentArchetype::PoliceShortGun, 5);
    roster.set(AgentArchetype::PassiveProtester, 25);
    roster.set(AgentArchetype::ModerateStone, 20);
    roster.set(AgentArchetype::AggressiveStone, 20);
    roster.set(AgentArchetype::ModerateBaton, 10);
    roster.set(AgentArchetype::AggressiveBaton, 5);
    roster.set(AgentArchetype::ProtestLeader, 1);
    roster
}

/// A full two-sided scenario mirroring the bundled case files.
pub fn case_scenario(case: LeaderCase) -> Scenario {
    Scenario {
        terrain_bounds: Rect::new(Vec2::new(0.0, 0.0), Vec2::new(200.0, 200.0)),
        protected_area: Rect::new(Vec2::new(0.0, 160.0), Vec2::new(200.0, 200.0)),
        spawn_area: Rect::new(Vec2::new(45.0, 90.0), Vec2::new(95.0, 115.0)),
        rally_point: Vec2::new(186.0, 134.0),
        police_line_y: 151.0,
        police_line_center_x: 180.0,
        fences: vec![FenceRun {
            start: Vec2::new(40.0, 144.0),
            end: Vec2::new(160.0, 144.0),
            count: 12,
            strength: 24.0,
        }],
        roster: paper_roster(),
        profiles: full_profiles(case),
        weapons: base_weapons(),
        capabilities: base_capabilities(),
        leader_case: case,
        max_ticks: 200,
        standoff_radius: 15.0,
        spacing_min: 1.5,
        spacing_max: 6.0,
        police_proximity_trigger: 10.0,
    }
}

/// Minimal valid scenario: empty roster, profiles for the archetypes unit
/// tests reach for, no fences.
pub fn small_scenario() -> Scenario {
    let mut profiles = ProfileSet::default();
    for a in [
        AgentArchetype::PolicePlasticBullet,
        AgentArchetype::PoliceTearGas,
        AgentArchetype::PoliceWaterCannon,
        AgentArchetype::PoliceShortGun,
    ] {
        profiles.set(a, police_profiles());
    }
    profiles.set(AgentArchetype::PassiveProtester, passive_profiles());
    profiles.set(AgentArchetype::ModerateStone, moderate_profiles());
    profiles.set(AgentArchetype::ModerateBaton, moderate_profiles());
    profiles.set(AgentArchetype::AggressiveStone, aggressive_profiles());
    profiles.set(AgentArchetype::AggressiveBaton, aggressive_profiles());
    profiles.set(AgentArchetype::ProtestLeader, leader_profiles(LeaderCase::Moderate));
    Scenario {
        terrain_bounds: Rect::new(Vec2::new(0.0, 0.0), Vec2::new(200.0, 200.0)),
        protected_area: Rect::new(Vec2::new(0.0, 160.0), Vec2::new(200.0, 200.0)),
        spawn_area: Rect::new(Vec2::new(40.0, 40.0), Vec2::new(120.0, 100.0)),
        rally_point: Vec2::new(100.0, 120.0),
        police_line_y: 150.0,
        police_line_center_x: 100.0,
        fences: Vec::new(),
        roster: Roster::new(),
        profiles,
        weapons: base_weapons(),
        capabilities: base_capabilities(),
        leader_case: LeaderCase::Moderate,
        max_ticks: 100,
        standoff_radius: 15.0,
        spacing_min: 1.5,
        spacing_max: 6.0,
        police_proximity_trigger: 10.0,
    }
}

pub fn make_agent(id: AgentId, archetype: AgentArchetype, position: Vec2, health: f64) -> Agent {
    Agent {
        id,
        team: archetype.team(),
        archetype,
        position,
        health,
        active_profile: ActiveProfile::Default,
        trigger_latched: false,
        is_leader: archetype.is_leader(),
        weapon_cooldown_remaining: 0,
    }
}

/// World wrapping the given agents; no obstacles, zeroed counters.
pub fn world_of(agents: Vec<Agent>) -> WorldState {
    let n = agents.len();
    WorldState {
        tick: 0,
        agents,
        obstacles: Vec::new(),
        damage_to_police: 0.0,
        damage_to_protesters: 0.0,
        goal_breached: false,
        rng: SplitMix64::new(0),
        hit_flags: vec![false; n],
    }
}
