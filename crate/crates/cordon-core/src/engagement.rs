//! Weapon firing, damage application, fence destruction, and the being-hit
//! trigger system.
//!
//! Firing: one Bernoulli on the firing likelihood; on success the target is
//! the nearest living opponent inside weapon range, or — for a protester
//! with no opponent in range whose forward path crosses an intact fence
//! within weapon range — that fence.
//!
//! Damage: point weapons roll one hit Bernoulli; area weapons hit every
//! living agent (either side) inside the area radius with no roll; obstacle
//! hits never miss. Applied amounts are clamped to what the target can
//! absorb and those clamped amounts feed the per-side damage counters.
//!
//! Triggers: an archetype owning a being-hit profile latches onto it
//! permanently when damaged, or, for police, when an opponent comes inside
//! the proximity trigger distance. Moderates and leaders never switch.

use alloc::vec::Vec;

use crate::behavior::DESIRE_EPS;
use crate::math::{fmax, segment_intersection, Vec2};
use crate::model::{
    ActiveProfile, Agent, AgentId, Obstacle, Team, ValidatedScenario, WeaponKind, WorldState,
};
use crate::perception::Perception;
use crate::rng::SplitMix64;

/// What a damage event lands on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Agent(AgentId),
    Obstacle(u32),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DamageEvent {
    pub source: AgentId,
    pub target: Target,
    pub amount: f64,
    pub weapon: WeaponKind,
    pub tick: u32,
}

/// Pick a target for an agent that is alive, armed, and off cooldown.
/// Consumes exactly one Bernoulli draw.
pub fn firing_decision(
    agent: &Agent,
    p: &Perception,
    desire: Vec2,
    obstacles: &[Obstacle],
    scenario: &ValidatedScenario,
    rng: &mut SplitMix64,
) -> Option<Target> {
    let profile = scenario.profile(agent.archetype, agent.active_profile);
    if !rng.bernoulli(profile.firing_likelihood) {
        return None;
    }
    let kind = agent.archetype.weapon_kind()?;
    let weapon = scenario.weapons.get(kind);

    let mut nearest: Option<(f64, AgentId)> = None;
    for o in &p.opponents_in_weapon_range {
        let replace = match nearest {
            None => true,
            Some((d, _)) => o.distance < d,
        };
        if replace {
            nearest = Some((o.distance, o.id));
        }
    }
    if let Some((_, id)) = nearest {
        return Some(Target::Agent(id));
    }

    // Fence fallback: protesters bash the fence blocking their way.
    if agent.team == Team::Protesters && desire.norm() > DESIRE_EPS {
        let reach = agent.position + desire.unit() * weapon.max_range;
        let mut best: Option<(f64, u32)> = None;
        for fence in obstacles {
            if !fence.blocks() {
                continue;
            }
            if let Some(t) = segment_intersection(agent.position, reach, fence.a, fence.b) {
                let replace = match best {
                    None => true,
                    Some((bt, _)) => t < bt,
                };
                if replace {
                    best = Some((t, fence.id));
                }
            }
        }
        if let Some((_, id)) = best {
            return Some(Target::Obstacle(id));
        }
    }
    None
}

/// Resolve one shot into raw damage events. Point weapons consume one hit
/// Bernoulli against agent targets; area weapons blanket everything living
/// within the radius of the target's snapshot position, friend or foe;
/// obstacle hits always land. The attacker's cooldown resets either way.
pub fn resolve_fire(
    attacker_id: AgentId,
    target: Target,
    world: &mut WorldState,
    scenario: &ValidatedScenario,
    rng: &mut SplitMix64,
) -> Vec<DamageEvent> {
    let attacker = &world.agents[attacker_id as usize];
    let kind = attacker
        .archetype
        .weapon_kind()
        .expect("firing agent carries a weapon");
    let weapon = *scenario.weapons.get(kind);
    let tick = world.tick;
    let mut events = Vec::new();

    match target {
        Target::Agent(target_id) => {
            if weapon.area_radius > 0.0 {
                let center = world.agents[target_id as usize].position;
                for other in &world.agents {
                    if other.is_alive() && other.position.distance(center) <= weapon.area_radius {
                        events.push(DamageEvent {
                            source: attacker_id,
                            target: Target::Agent(other.id),
                            amount: weapon.damage,
                            weapon: kind,
                            tick,
                        });
                    }
                }
            } else if rng.bernoulli(weapon.hit_probability) {
                events.push(DamageEvent {
                    source: attacker_id,
                    target: Target::Agent(target_id),
                    amount: weapon.damage,
                    weapon: kind,
                    tick,
                });
            }
        }
        Target::Obstacle(obstacle_id) => {
            events.push(DamageEvent {
                source: attacker_id,
                target: Target::Obstacle(obstacle_id),
                amount: weapon.damage,
                weapon: kind,
                tick,
            });
        }
    }

    world.agents[attacker_id as usize].weapon_cooldown_remaining = weapon.cooldown;
    events
}

/// Apply buffered events: clamp health and strength at zero, update the
/// per-side damage counters by the clamped amounts, flag agents that
/// absorbed anything. Returns the events with `amount` replaced by what was
/// actually absorbed (the trace carries these).
pub fn apply_damage(world: &mut WorldState, events: &[DamageEvent]) -> Vec<DamageEvent> {
    let mut applied = Vec::with_capacity(events.len());
    for event in events {
        let mut out = *event;
        match event.target {
            Target::Agent(id) => {
                let agent = &mut world.agents[id as usize];
                let before = agent.health;
                agent.health = fmax(0.0, agent.health - event.amount);
                let absorbed = before - agent.health;
                out.amount = absorbed;
                match agent.team {
                    Team::Police => world.damage_to_police += absorbed,
                    Team::Protesters => world.damage_to_protesters += absorbed,
                }
                if absorbed > 0.0 {
                    world.hit_flags[id as usize] = true;
                }
            }
            Target::Obstacle(id) => {
                let fence = &mut world.obstacles[id as usize];
                let before = fence.strength;
                fence.strength = fmax(0.0, fence.strength - event.amount);
                if fence.strength == 0.0 {
                    fence.destroyed = true;
                }
                out.amount = before - fence.strength;
            }
        }
        applied.push(out);
    }
    applied
}

/// Swap to the being-hit profile when warranted. The latch is permanent;
/// archetypes without a being-hit profile never latch.
pub fn check_triggers(
    agent: &mut Agent,
    was_hit: bool,
    p: &Perception,
    scenario: &ValidatedScenario,
) {
    if !agent.is_alive() || agent.trigger_latched || !agent.archetype.may_have_being_hit() {
        return;
    }
    if scenario
        .profiles
        .get(agent.archetype)
        .and_then(|pair| pair.being_hit.as_ref())
        .is_none()
    {
        return;
    }
    let approached = agent.team == Team::Police
        && p.nearest_opponent
            .is_some_and(|o| o.distance < scenario.police_proximity_trigger);
    if was_hit || approached {
        agent.trigger_latched = true;
        agent.active_profile = ActiveProfile::BeingHit;
    }
}
