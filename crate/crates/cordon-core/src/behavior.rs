//! The behavior-weight system: an agent's active profile plus its
//! perception become a desire vector, and the desire vector becomes a
//! movement step.
//!
//! Geometry per behavior:
//! - CaringOpponent with all-zero sub-weights has standoff semantics: repel
//!   from the nearest opponent inside `standoff_radius`, neutral outside.
//!   Any nonzero sub-weight switches to sub-behavior composition, so
//!   approach behavior comes only from explicit positive sub-behaviors.
//! - CaringAllied maintains spacing: repel from the nearest ally below the
//!   band, pull toward the visible-ally centroid above it, zero inside.
//! - CaringLeaders heads for the nearest known leader; its sub-behaviors
//!   instead hold the leader within sensor / comm range and go quiet once
//!   the constraint is satisfied.
//! - CaringTerrain heads for the rally point, going quiet within 1 m.
//!
//! Sub-behaviors compose as `(Σ v_i·u_i) / (Σ |v_i|)` over sub-behaviors
//! whose target set is non-empty, where `u_i` points at the nearest member
//! of the target set and `v_i` is the signed value; negative values invert
//! the direction. Empty-target sub-behaviors are skipped outright so a
//! single visible target still yields a full-strength direction.

use crate::math::{fabs, segment_intersection, Vec2};
use crate::model::{
    Agent, BehaviorName, BehaviorProfile, Obstacle, SubBehaviorName, SubWeights,
    ValidatedScenario,
};
use crate::perception::{Perception, SensedAgent};
use crate::rng::SplitMix64;

/// Desire vectors below this norm mean "hold position".
pub const DESIRE_EPS: f64 = 1e-9;
/// CaringTerrain goes quiet within this distance of the rally point.
pub const TERRAIN_DEAD_ZONE: f64 = 1.0;
/// A blocked step stops this far short of the fence.
pub const FENCE_STOP: f64 = 0.5;

/// Weighted sum of behavior directions; norm bounded by the weight sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesireVector(pub Vec2);

fn toward(from: Vec2, to: Vec2) -> Vec2 {
    (to - from).unit()
}

fn away(from: Vec2, threat: Vec2) -> Vec2 {
    (from - threat).unit()
}

/// The target set backing one sub-behavior: the nearest member, if any.
fn sub_behavior_target(sub: SubBehaviorName, p: &Perception) -> Option<SensedAgent> {
    let nearest = |set: &[SensedAgent]| -> Option<SensedAgent> {
        let mut best: Option<SensedAgent> = None;
        for s in set {
            let replace = match &best {
                None => true,
                Some(b) => s.distance < b.distance,
            };
            if replace {
                best = Some(*s);
            }
        }
        best
    };
    match sub {
        SubBehaviorName::CloseToOpponent | SubBehaviorName::CloseToOpponentSensorRange => {
            nearest(&p.opponents_in_sensor)
        }
        SubBehaviorName::CloseToOpponentWeaponRange => nearest(&p.opponents_in_weapon_range),
        SubBehaviorName::CloseToWoundedOpponent
        | SubBehaviorName::CloseToWoundedOpponentSensorRange => {
            nearest(&p.wounded_opponents_in_sensor)
        }
        SubBehaviorName::CloseToWoundedOpponentWeaponRange => {
            nearest(&p.wounded_opponents_in_weapon_range)
        }
        // Keep-leader subs target the leader only while their constraint is
        // unsatisfied; satisfied means an empty target set.
        SubBehaviorName::KeepLeaderSensorRange => match p.nearest_leader {
            Some(l) if !l.in_sensor => Some(SensedAgent {
                id: l.id,
                distance: l.distance,
                position: l.position,
            }),
            _ => None,
        },
        SubBehaviorName::KeepLeaderCommRange => match p.nearest_leader {
            Some(l) if !l.in_comm => Some(SensedAgent {
                id: l.id,
                distance: l.distance,
                position: l.position,
            }),
            _ => None,
        },
    }
}

/// Blend the sub-behaviors under `parent`: `(Σ v_i·u_i) / (Σ |v_i|)` over
/// non-empty target sets. Returns zero when every target set is empty.
/// The result's norm never exceeds 1.
pub fn compose_sub_behaviors(
    sub_weights: &SubWeights,
    parent: BehaviorName,
    agent: &Agent,
    p: &Perception,
) -> Vec2 {
    let mut numerator = Vec2::ZERO;
    let mut denominator = 0.0;
    for sub in SubBehaviorName::ALL {
        if sub.parent() != parent {
            continue;
        }
        let value = sub_weights.get(sub);
        let Some(target) = sub_behavior_target(sub, p) else {
            continue;
        };
        let u = toward(agent.position, target.position);
        numerator = numerator + u * value;
        denominator += fabs(value);
    }
    if denominator == 0.0 {
        Vec2::ZERO
    } else {
        numerator * (1.0 / denominator)
    }
}

/// Direction contributed by one behavior; norm never exceeds 1.
pub fn behavior_direction(
    behavior: BehaviorName,
    agent: &Agent,
    profile: &BehaviorProfile,
    p: &Perception,
    scenario: &ValidatedScenario,
) -> Vec2 {
    match behavior {
        BehaviorName::CaringOpponent => {
            if profile.sub_weights.any_nonzero_under(BehaviorName::CaringOpponent) {
                compose_sub_behaviors(&profile.sub_weights, behavior, agent, p)
            } else {
                match p.nearest_opponent {
                    Some(o) if o.distance < scenario.standoff_radius => {
                        away(agent.position, o.position)
                    }
                    _ => Vec2::ZERO,
                }
            }
        }
        BehaviorName::CaringAllied => match p.nearest_ally {
            Some(a) if a.distance < scenario.spacing_min => away(agent.position, a.position),
            Some(a) if a.distance > scenario.spacing_max => match p.ally_centroid() {
                Some(c) => toward(agent.position, c),
                None => Vec2::ZERO,
            },
            _ => Vec2::ZERO,
        },
        BehaviorName::CaringLeaders => {
            if profile.sub_weights.any_nonzero_under(BehaviorName::CaringLeaders) {
                compose_sub_behaviors(&profile.sub_weights, behavior, agent, p)
            } else {
                match p.nearest_leader {
                    Some(l) => toward(agent.position, l.position),
                    None => Vec2::ZERO,
                }
            }
        }
        BehaviorName::CaringTerrain => {
            let delta = scenario.rally_point - agent.position;
            if delta.norm() <= TERRAIN_DEAD_ZONE {
                Vec2::ZERO
            } else {
                delta.unit()
            }
        }
    }
}

/// The movement vector: `Σ_b w_b · behavior_direction(b)` over the profile.
pub fn desire_vector(
    agent: &Agent,
    profile: &BehaviorProfile,
    p: &Perception,
    scenario: &ValidatedScenario,
) -> DesireVector {
    let mut v = Vec2::ZERO;
    for behavior in BehaviorName::ALL {
        let weight = profile.weights.get(behavior);
        if weight == 0.0 {
            continue;
        }
        v = v + behavior_direction(behavior, agent, profile, p, scenario) * weight;
    }
    DesireVector(v)
}

/// Resolve the agent's active profile against the scenario tables.
pub fn active_profile<'a>(agent: &Agent, scenario: &'a ValidatedScenario) -> &'a BehaviorProfile {
    scenario.profile(agent.archetype, agent.active_profile)
}

/// One movement step. Always consumes exactly one Bernoulli draw so the
/// stream layout is independent of desire values. On success the agent
/// moves `speed` along the normalized desire, clamped to the terrain;
/// a step crossing an intact fence stops [`FENCE_STOP`] short of it.
pub fn apply_movement(
    agent: &Agent,
    desire: DesireVector,
    rng: &mut SplitMix64,
    obstacles: &[Obstacle],
    scenario: &ValidatedScenario,
) -> Vec2 {
    let likelihood = active_profile(agent, scenario).movement_likelihood;
    let moves = rng.bernoulli(likelihood);
    if !moves || desire.0.norm() <= DESIRE_EPS {
        return agent.position;
    }
    let step = desire.0.unit() * scenario.capabilities.speed;
    let target = scenario.terrain_bounds.clamp_point(agent.position + step);
    blocked_step(agent.position, target, obstacles)
}

/// Endpoint of the step `from → to` after fence blocking: the earliest
/// intact fence crossed stops the step [`FENCE_STOP`] before the hit.
pub fn blocked_step(from: Vec2, to: Vec2, obstacles: &[Obstacle]) -> Vec2 {
    let mut earliest: Option<f64> = None;
    for fence in obstacles {
        if !fence.blocks() {
            continue;
        }
        if let Some(t) = segment_intersection(from, to, fence.a, fence.b) {
            if earliest.is_none_or(|e| t < e) {
                earliest = Some(t);
            }
        }
    }
    match earliest {
        None => to,
        Some(t) => {
            let full = to - from;
            let len = full.norm();
            let allowed = t * len - FENCE_STOP;
            if allowed <= 0.0 {
                from
            } else {
                from + full.unit() * allowed
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate_scenario, ActiveProfile, AgentArchetype, BehaviorWeights};
    use crate::testutil::{make_agent, small_scenario, world_of};
    use crate::perception::sense;
    use alloc::vec;

    fn scenario() -> ValidatedScenario {
        validate_scenario(small_scenario()).unwrap()
    }

    fn profile_with(weights: BehaviorWeights, sub_weights: SubWeights) -> BehaviorProfile {
        BehaviorProfile { weights, sub_weights, movement_likelihood: 1.0, firing_likelihood: 0.0 }
    }

    #[test]
    fn standoff_repels_inside_radius() {
        // Opponent 10 m away, standoff 15: unit vector straight away.
        let sc = scenario();
        let world = world_of(vec![
            make_agent(0, AgentArchetype::PassiveProtester, Vec2::new(0.0, 0.0), 100.0),
            make_agent(1, AgentArchetype::PoliceShortGun, Vec2::new(10.0, 0.0), 200.0),
        ]);
        let p = sense(&world.agents[0], &world, &sc);
        let profile = profile_with(
            BehaviorWeights { opponent: 1.0, ..Default::default() },
            SubWeights::default(),
        );
        let dir =
            behavior_direction(BehaviorName::CaringOpponent, &world.agents[0], &profile, &p, &sc);
        assert!((dir.x + 1.0).abs() < 1e-12);
        assert!(dir.y.abs() < 1e-12);
    }

    #[test]
    fn standoff_is_neutral_outside_radius() {
        let sc = scenario();
        let world = world_of(vec![
            make_agent(0, AgentArchetype::PassiveProtester, Vec2::new(0.0, 0.0), 100.0),
            make_agent(1, AgentArchetype::PoliceShortGun, Vec2::new(20.0, 0.0), 200.0),
        ]);
        let p = sense(&world.agents[0], &world, &sc);
        let profile = profile_with(
            BehaviorWeights { opponent: 1.0, ..Default::default() },
            SubWeights::default(),
        );
        let dir =
            behavior_direction(BehaviorName::CaringOpponent, &world.agents[0], &profile, &p, &sc);
        assert_eq!(dir, Vec2::ZERO);
    }

    #[test]
    fn allied_band_semantics() {
        let sc = scenario(); // band is 1.5..6
        let mk = |d: f64| {
            world_of(vec![
                make_agent(0, AgentArchetype::PassiveProtester, Vec2::new(0.0, 0.0), 100.0),
                make_agent(1, AgentArchetype::PassiveProtester, Vec2::new(d, 0.0), 100.0),
            ])
        };
        let profile = profile_with(
            BehaviorWeights { allied: 1.0, ..Default::default() },
            SubWeights::default(),
        );

        // Too close: repel.
        let world = mk(1.0);
        let p = sense(&world.agents[0], &world, &sc);
        let dir = behavior_direction(BehaviorName::CaringAllied, &world.agents[0], &profile, &p, &sc);
        assert!(dir.x < -0.99);

        // Inside the band: hold.
        let world = mk(3.0);
        let p = sense(&world.agents[0], &world, &sc);
        let dir = behavior_direction(BehaviorName::CaringAllied, &world.agents[0], &profile, &p, &sc);
        assert_eq!(dir, Vec2::ZERO);

        // Too far: head for the centroid.
        let world = mk(10.0);
        let p = sense(&world.agents[0], &world, &sc);
        let dir = behavior_direction(BehaviorName::CaringAllied, &world.agents[0], &profile, &p, &sc);
        assert!(dir.x > 0.99);
    }

    #[test]
    fn leaders_with_satisfied_sub_constraints_hold() {
        // Sensor 0.5 / comm 0.5 sub-weights, leader visible in both ranges.
        let sc = scenario();
        let world = world_of(vec![
            make_agent(0, AgentArchetype::AggressiveStone, Vec2::new(0.0, 0.0), 100.0),
            make_agent(1, AgentArchetype::ProtestLeader, Vec2::new(10.0, 0.0), 100.0),
        ]);
        let p = sense(&world.agents[0], &world, &sc);
        let subs = SubWeights {
            keep_leader_sensor_range: 0.5,
            keep_leader_comm_range: 0.5,
            ..SubWeights::default()
        };
        let profile =
            profile_with(BehaviorWeights { leaders: 1.0, ..Default::default() }, subs);
        let dir =
            behavior_direction(BehaviorName::CaringLeaders, &world.agents[0], &profile, &p, &sc);
        assert_eq!(dir, Vec2::ZERO);
    }

    #[test]
    fn leaders_sub_pulls_when_out_of_sensor() {
        let sc = scenario();
        let world = world_of(vec![
            make_agent(0, AgentArchetype::AggressiveStone, Vec2::new(0.0, 0.0), 100.0),
            make_agent(1, AgentArchetype::ProtestLeader, Vec2::new(80.0, 0.0), 100.0),
        ]);
        let p = sense(&world.agents[0], &world, &sc);
        let subs = SubWeights {
            keep_leader_sensor_range: 0.5,
            keep_leader_comm_range: 0.5,
            ..SubWeights::default()
        };
        let profile =
            profile_with(BehaviorWeights { leaders: 1.0, ..Default::default() }, subs);
        let dir =
            behavior_direction(BehaviorName::CaringLeaders, &world.agents[0], &profile, &p, &sc);
        // Out of sensor but in comm: only the sensor-range sub fires.
        assert!(dir.x > 0.99);
    }

    #[test]
    fn police_being_hit_subs_point_at_the_opponent() {
        // All six opponent subs 0.1, one unwounded opponent to the south:
        // three applicable subs, all pointing (0, -1).
        let sc = scenario();
        let world = world_of(vec![
            make_agent(0, AgentArchetype::PoliceShortGun, Vec2::new(0.0, 0.0), 200.0),
            make_agent(1, AgentArchetype::ModerateStone, Vec2::new(0.0, -5.0), 100.0),
        ]);
        let p = sense(&world.agents[0], &world, &sc);
        let d = compose_sub_behaviors(
            &SubWeights::all_opponent(0.1),
            BehaviorName::CaringOpponent,
            &world.agents[0],
            &p,
        );
        assert!(d.x.abs() < 1e-12);
        assert!((d.y + 1.0).abs() < 1e-12);
    }

    #[test]
    fn negating_sub_weights_negates_the_direction() {
        let sc = scenario();
        let world = world_of(vec![
            make_agent(0, AgentArchetype::PassiveProtester, Vec2::new(0.0, 0.0), 100.0),
            make_agent(1, AgentArchetype::PoliceShortGun, Vec2::new(0.0, -5.0), 200.0),
        ]);
        let p = sense(&world.agents[0], &world, &sc);
        let d = compose_sub_behaviors(
            &SubWeights::all_opponent(-0.5),
            BehaviorName::CaringOpponent,
            &world.agents[0],
            &p,
        );
        assert!(d.x.abs() < 1e-12);
        assert!((d.y - 1.0).abs() < 1e-12);
    }

    #[test]
    fn empty_target_sets_compose_to_zero() {
        let sc = scenario();
        let world = world_of(vec![make_agent(
            0,
            AgentArchetype::PoliceShortGun,
            Vec2::new(0.0, 0.0),
            200.0,
        )]);
        let p = sense(&world.agents[0], &world, &sc);
        let d = compose_sub_behaviors(
            &SubWeights::all_opponent(0.1),
            BehaviorName::CaringOpponent,
            &world.agents[0],
            &p,
        );
        assert_eq!(d, Vec2::ZERO);
    }

    #[test]
    fn all_zero_weights_mean_zero_desire() {
        let sc = scenario();
        let world = world_of(vec![
            make_agent(0, AgentArchetype::PassiveProtester, Vec2::new(0.0, 0.0), 100.0),
            make_agent(1, AgentArchetype::PoliceShortGun, Vec2::new(5.0, 0.0), 200.0),
        ]);
        let p = sense(&world.agents[0], &world, &sc);
        let profile = profile_with(BehaviorWeights::default(), SubWeights::default());
        let v = desire_vector(&world.agents[0], &profile, &p, &sc);
        assert_eq!(v.0, Vec2::ZERO);
    }

    #[test]
    fn passive_default_sums_terms() {
        // Weights 0.05/0.45/0.5; opponent term (-1,0), allied zero (in band),
        // leader term (0,1): V = (-0.05, 0.5).
        let sc = scenario();
        let world = world_of(vec![
            make_agent(0, AgentArchetype::PassiveProtester, Vec2::new(0.0, 0.0), 100.0),
            make_agent(1, AgentArchetype::PoliceShortGun, Vec2::new(10.0, 0.0), 200.0),
            make_agent(2, AgentArchetype::PassiveProtester, Vec2::new(0.0, -3.0), 100.0),
            make_agent(3, AgentArchetype::ProtestLeader, Vec2::new(0.0, 30.0), 100.0),
        ]);
        let p = sense(&world.agents[0], &world, &sc);
        // Ally at 3 m is inside the 1.5..6 band; leader due north.
        let profile = profile_with(
            BehaviorWeights { opponent: 0.05, allied: 0.45, leaders: 0.5, terrain: 0.0 },
            SubWeights::default(),
        );
        let v = desire_vector(&world.agents[0], &profile, &p, &sc).0;
        assert!((v.x + 0.05).abs() < 1e-12);
        assert!((v.y - 0.5).abs() < 1e-12);
    }

    #[test]
    fn police_default_holds_formation() {
        // Opponents beyond standoff, ally spacing inside the band: V = 0.
        let sc = scenario();
        let world = world_of(vec![
            make_agent(0, AgentArchetype::PoliceShortGun, Vec2::new(0.0, 0.0), 200.0),
            make_agent(1, AgentArchetype::PoliceShortGun, Vec2::new(2.0, 0.0), 200.0),
            make_agent(2, AgentArchetype::ModerateStone, Vec2::new(0.0, -30.0), 100.0),
        ]);
        let p = sense(&world.agents[0], &world, &sc);
        let profile = profile_with(
            BehaviorWeights { opponent: 0.2, allied: 0.8, ..Default::default() },
            SubWeights::default(),
        );
        let v = desire_vector(&world.agents[0], &profile, &p, &sc).0;
        assert_eq!(v, Vec2::ZERO);
    }

    #[test]
    fn movement_gated_off_by_zero_likelihood() {
        let mut agent = make_agent(0, AgentArchetype::PoliceShortGun, Vec2::new(5.0, 5.0), 200.0);
        agent.active_profile = ActiveProfile::Default;
        let mut rng = SplitMix64::new(1);
        let mut raw = small_scenario();
        let mut pair = *raw.profiles.get(AgentArchetype::PoliceShortGun).unwrap();
        pair.default.movement_likelihood = 0.0;
        raw.profiles.set(AgentArchetype::PoliceShortGun, pair);
        let sc = validate_scenario(raw).unwrap();
        for _ in 0..50 {
            let pos = apply_movement(
                &agent,
                DesireVector(Vec2::new(3.0, 4.0)),
                &mut rng,
                &[],
                &sc,
            );
            assert_eq!(pos, agent.position);
            agent.position = pos;
        }
    }

    #[test]
    fn movement_normalizes_then_scales() {
        // Likelihood 1, V = (0, 2), speed 1.5: moves (0, 1.5).
        let sc = scenario();
        let agent = make_agent(0, AgentArchetype::PassiveProtester, Vec2::new(50.0, 50.0), 100.0);
        let mut rng = SplitMix64::new(1);
        let pos = apply_movement(&agent, DesireVector(Vec2::new(0.0, 2.0)), &mut rng, &[], &sc);
        assert!((pos.x - 50.0).abs() < 1e-12);
        assert!((pos.y - 51.5).abs() < 1e-12);
    }

    #[test]
    fn tiny_desire_is_a_hold() {
        let sc = scenario();
        let agent = make_agent(0, AgentArchetype::PassiveProtester, Vec2::new(50.0, 50.0), 100.0);
        let mut rng = SplitMix64::new(1);
        let pos =
            apply_movement(&agent, DesireVector(Vec2::new(0.0, 1e-12)), &mut rng, &[], &sc);
        assert_eq!(pos, agent.position);
    }

    #[test]
    fn step_stops_short_of_an_intact_fence() {
        // Fence 1 m ahead: stop 0.5 m before it.
        let sc = scenario();
        let agent = make_agent(0, AgentArchetype::PassiveProtester, Vec2::new(50.0, 50.0), 100.0);
        let fence = Obstacle {
            id: 0,
            a: Vec2::new(40.0, 51.0),
            b: Vec2::new(60.0, 51.0),
            strength: 50.0,
            destroyed: false,
        };
        let mut rng = SplitMix64::new(1);
        let pos = apply_movement(
            &agent,
            DesireVector(Vec2::new(0.0, 1.0)),
            &mut rng,
            &[fence],
            &sc,
        );
        assert!((pos.y - 50.5).abs() < 1e-12);

        // A destroyed fence does not block.
        let broken = Obstacle { destroyed: true, strength: 0.0, ..fence };
        let pos = apply_movement(
            &agent,
            DesireVector(Vec2::new(0.0, 1.0)),
            &mut rng,
            &[broken],
            &sc,
        );
        assert!((pos.y - 51.5).abs() < 1e-12);
    }

    #[test]
    fn steps_clamp_to_terrain_bounds() {
        let sc = scenario();
        let agent = make_agent(0, AgentArchetype::PassiveProtester, Vec2::new(199.5, 50.0), 100.0);
        let mut rng = SplitMix64::new(1);
        let pos = apply_movement(&agent, DesireVector(Vec2::new(1.0, 0.0)), &mut rng, &[], &sc);
        assert_eq!(pos, Vec2::new(200.0, 50.0));
    }

    #[test]
    fn norms_stay_bounded() {
        // Every behavior direction has norm <= 1; the desire's norm is at
        // most the sum of the active weights.
        let sc = scenario();
        let world = world_of(vec![
            make_agent(0, AgentArchetype::AggressiveStone, Vec2::new(10.0, 10.0), 100.0),
            make_agent(1, AgentArchetype::PoliceShortGun, Vec2::new(14.0, 10.0), 150.0),
            make_agent(2, AgentArchetype::PoliceShortGun, Vec2::new(10.0, 18.0), 200.0),
            make_agent(3, AgentArchetype::ProtestLeader, Vec2::new(60.0, 60.0), 100.0),
        ]);
        let p = sense(&world.agents[0], &world, &sc);
        let profile = profile_with(
            BehaviorWeights { opponent: 0.4, allied: 0.3, leaders: 0.3, terrain: 0.15 },
            SubWeights::all_opponent(0.2),
        );
        let mut weight_sum = 0.0;
        for b in BehaviorName::ALL {
            let dir = behavior_direction(b, &world.agents[0], &profile, &p, &sc);
            assert!(dir.norm() <= 1.0 + 1e-12);
            weight_sum += profile.weights.get(b);
        }
        let v = desire_vector(&world.agents[0], &profile, &p, &sc).0;
        assert!(v.norm() <= weight_sum + 1e-12);
    }

    #[test]
    fn scaling_all_weights_preserves_direction() {
        let sc = scenario();
        let world = world_of(vec![
            make_agent(0, AgentArchetype::AggressiveStone, Vec2::new(10.0, 10.0), 100.0),
            make_agent(1, AgentArchetype::PoliceShortGun, Vec2::new(14.0, 13.0), 150.0),
            make_agent(2, AgentArchetype::PassiveProtester, Vec2::new(10.5, 10.0), 100.0),
            make_agent(3, AgentArchetype::ProtestLeader, Vec2::new(60.0, 60.0), 100.0),
        ]);
        let p = sense(&world.agents[0], &world, &sc);
        let base = profile_with(
            BehaviorWeights { opponent: 0.4, allied: 0.3, leaders: 0.3, terrain: 0.1 },
            SubWeights::all_opponent(0.25),
        );
        let v0 = desire_vector(&world.agents[0], &base, &p, &sc).0.unit();
        for c in [0.5, 2.0, 10.0] {
            let scaled = BehaviorProfile {
                weights: base.weights.scaled(c),
                sub_weights: base.sub_weights.scaled(c),
                ..base
            };
            let v1 = desire_vector(&world.agents[0], &scaled, &p, &sc).0.unit();
            assert!((v0.x - v1.x).abs() < 1e-9 && (v0.y - v1.y).abs() < 1e-9);
        }
    }

    #[test]
    fn movement_draw_consumed_even_when_holding() {
        // The Bernoulli is taken regardless of the desire, so downstream
        // draws stay aligned.
        let sc = scenario();
        let agent = make_agent(0, AgentArchetype::PassiveProtester, Vec2::new(50.0, 50.0), 100.0);
        let mut a = SplitMix64::new(9);
        let mut b = SplitMix64::new(9);
        let _ = apply_movement(&agent, DesireVector(Vec2::ZERO), &mut a, &[], &sc);
        let _ = apply_movement(&agent, DesireVector(Vec2::new(1.0, 0.0)), &mut b, &[], &sc);
        assert_eq!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn desire_is_deterministic_over_equal_inputs() {
        let sc = scenario();
        let world = world_of(vec![
            make_agent(0, AgentArchetype::ModerateStone, Vec2::new(20.0, 20.0), 100.0),
            make_agent(1, AgentArchetype::PoliceTearGas, Vec2::new(25.0, 24.0), 200.0),
        ]);
        let p = sense(&world.agents[0], &world, &sc);
        let profile = profile_with(
            BehaviorWeights { opponent: 0.15, allied: 0.35, leaders: 0.35, terrain: 0.15 },
            SubWeights::default(),
        );
        let v1 = desire_vector(&world.agents[0], &profile, &p, &sc);
        let v2 = desire_vector(&world.agents[0], &profile, &p, &sc);
        assert_eq!(v1, v2);
    }
}
