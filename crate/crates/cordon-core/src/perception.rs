//! What each agent sees in the start-of-tick snapshot: opponents and allies
//! within sensor range, wounded opponents, weapon-range subsets, and the
//! nearest opponent / leader / ally. All queries are pure over the snapshot.

use alloc::vec::Vec;

use crate::math::{fmax, floor, Vec2};
use crate::model::{Agent, AgentId, Team, ValidatedScenario, WorldState};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Friendly,
    Neutral,
    Hostile,
}

/// Two sides only: same team is friendly, cross-team is hostile. Neutral is
/// representable for completeness but unused by the bundled scenarios.
pub fn relation(a: Team, b: Team) -> Relation {
    if a == b {
        Relation::Friendly
    } else {
        Relation::Hostile
    }
}

/// A visible agent: id, distance from the observer, snapshot position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensedAgent {
    pub id: AgentId,
    pub distance: f64,
    pub position: Vec2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SensedLeader {
    pub id: AgentId,
    pub distance: f64,
    pub position: Vec2,
    pub in_sensor: bool,
    pub in_comm: bool,
}

/// Everything one agent perceives this tick. Sets hold living agents only,
/// in ascending id order; "nearest" ties break toward the lowest id.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Perception {
    pub opponents_in_sensor: Vec<SensedAgent>,
    pub allies_in_sensor: Vec<SensedAgent>,
    pub wounded_opponents_in_sensor: Vec<SensedAgent>,
    pub opponents_in_weapon_range: Vec<SensedAgent>,
    pub wounded_opponents_in_weapon_range: Vec<SensedAgent>,
    pub nearest_opponent: Option<SensedAgent>,
    /// Nearest living friendly leader, known within comm range.
    pub nearest_leader: Option<SensedLeader>,
    /// Nearest member of `allies_in_sensor`.
    pub nearest_ally: Option<SensedAgent>,
}

impl Perception {
    pub fn nearest_ally_distance(&self) -> Option<f64> {
        self.nearest_ally.map(|a| a.distance)
    }

    /// Mean position of all visible allies; `None` when none are visible.
    pub fn ally_centroid(&self) -> Option<Vec2> {
        if self.allies_in_sensor.is_empty() {
            return None;
        }
        let mut sum = Vec2::ZERO;
        for a in &self.allies_in_sensor {
            sum = sum + a.position;
        }
        Some(sum * (1.0 / self.allies_in_sensor.len() as f64))
    }
}

fn closer(best: &Option<SensedAgent>, candidate: SensedAgent) -> bool {
    match best {
        None => true,
        // Scan order is ascending id, so strict less keeps the lowest id on ties.
        Some(b) => candidate.distance < b.distance,
    }
}

/// Sense the world from `agent` through the candidate list `others`
/// (ids of agents to consider, ascending). The observer is excluded.
fn sense_from_candidates(
    agent: &Agent,
    world: &WorldState,
    scenario: &ValidatedScenario,
    others: impl Iterator<Item = AgentId>,
) -> Perception {
    let caps = &scenario.capabilities;
    let weapon_range = agent
        .archetype
        .weapon_kind()
        .map(|k| scenario.weapons.get(k).max_range);

    let mut p = Perception::default();
    let mut best_leader: Option<SensedLeader> = None;

    for id in others {
        let other = &world.agents[id as usize];
        if other.id == agent.id || !other.is_alive() {
            continue;
        }
        let distance = agent.position.distance(other.position);
        let sensed = SensedAgent { id: other.id, distance, position: other.position };

        match relation(agent.team, other.team) {
            Relation::Hostile => {
                let wounded = other.health < caps.max_health(other.team);
                if distance <= caps.sensor_range {
                    p.opponents_in_sensor.push(sensed);
                    if wounded {
                        p.wounded_opponents_in_sensor.push(sensed);
                    }
                }
                if let Some(range) = weapon_range {
                    if distance <= range {
                        p.opponents_in_weapon_range.push(sensed);
                        if wounded {
                            p.wounded_opponents_in_weapon_range.push(sensed);
                        }
                    }
                }
                if distance <= caps.sensor_range && closer(&p.nearest_opponent, sensed) {
                    p.nearest_opponent = Some(sensed);
                }
            }
            Relation::Friendly => {
                if distance <= caps.sensor_range {
                    p.allies_in_sensor.push(sensed);
                    if closer(&p.nearest_ally, sensed) {
                        p.nearest_ally = Some(sensed);
                    }
                }
                if other.is_leader && distance <= caps.comm_range {
                    let candidate = SensedLeader {
                        id: other.id,
                        distance,
                        position: other.position,
                        in_sensor: distance <= caps.sensor_range,
                        in_comm: true,
                    };
                    let replace = match &best_leader {
                        None => true,
                        Some(b) => candidate.distance < b.distance,
                    };
                    if replace {
                        best_leader = Some(candidate);
                    }
                }
            }
            Relation::Neutral => {}
        }
    }

    p.nearest_leader = best_leader;
    p
}

/// Sense by scanning every agent (the reference path).
pub fn sense(agent: &Agent, world: &WorldState, scenario: &ValidatedScenario) -> Perception {
    sense_from_candidates(agent, world, scenario, 0..world.agents.len() as AgentId)
}

/// Uniform spatial grid over agent positions. Purely an acceleration
/// structure: queries return a superset of the agents within the radius,
/// so grid-backed sensing is identical to the naive scan (tested).
pub struct SpatialGrid {
    cell: f64,
    origin: Vec2,
    cols: i64,
    rows: i64,
    cells: Vec<Vec<AgentId>>,
}

impl SpatialGrid {
    pub fn build(world: &WorldState, scenario: &ValidatedScenario) -> Self {
        let bounds = scenario.terrain_bounds;
        // One cell per maximum query radius keeps the scan to a 3x3 block.
        let caps = &scenario.capabilities;
        let mut cell = fmax(caps.sensor_range, caps.comm_range);
        for kind in crate::model::WeaponKind::ALL {
            cell = fmax(cell, scenario.weapons.get(kind).max_range);
        }
        let cols = (floor(bounds.width() / cell) as i64 + 1).max(1);
        let rows = (floor(bounds.height() / cell) as i64 + 1).max(1);
        let mut cells = Vec::new();
        cells.resize((cols * rows) as usize, Vec::new());
        let mut grid = SpatialGrid { cell, origin: bounds.min, cols, rows, cells };
        for a in &world.agents {
            let idx = grid.cell_index(a.position);
            grid.cells[idx].push(a.id);
        }
        grid
    }

    fn cell_coords(&self, p: Vec2) -> (i64, i64) {
        let cx = floor((p.x - self.origin.x) / self.cell) as i64;
        let cy = floor((p.y - self.origin.y) / self.cell) as i64;
        (cx.clamp(0, self.cols - 1), cy.clamp(0, self.rows - 1))
    }

    fn cell_index(&self, p: Vec2) -> usize {
        let (cx, cy) = self.cell_coords(p);
        (cy * self.cols + cx) as usize
    }

    /// Ids of all agents within `radius` of `p`, ascending (superset safe,
    /// exact filtering happens in the caller).
    pub fn candidates(&self, p: Vec2, radius: f64) -> Vec<AgentId> {
        let reach = (radius / self.cell) as i64 + 1;
        let (cx, cy) = self.cell_coords(p);
        let mut out = Vec::new();
        for gy in (cy - reach).max(0)..=(cy + reach).min(self.rows - 1) {
            for gx in (cx - reach).max(0)..=(cx + reach).min(self.cols - 1) {
                out.extend_from_slice(&self.cells[(gy * self.cols + gx) as usize]);
            }
        }
        out.sort_unstable();
        out
    }
}

/// Sense through the spatial grid; bit-identical to [`sense`].
pub fn sense_with_grid(
    agent: &Agent,
    world: &WorldState,
    scenario: &ValidatedScenario,
    grid: &SpatialGrid,
) -> Perception {
    let caps = &scenario.capabilities;
    let mut radius = fmax(caps.sensor_range, caps.comm_range);
    if let Some(kind) = agent.archetype.weapon_kind() {
        radius = fmax(radius, scenario.weapons.get(kind).max_range);
    }
    let ids = grid.candidates(agent.position, radius);
    sense_from_candidates(agent, world, scenario, ids.into_iter())
}
