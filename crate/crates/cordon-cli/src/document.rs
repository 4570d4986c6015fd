//! The scenario file format: a versioned TOML tree.
//!
//! Parsing is strict — unknown keys and duplicate keys are hard errors with
//! a line and column; range violations surface as validation errors carrying
//! the line of the offending key. `emit` serializes a document back to TOML
//! so that `parse(emit(doc)) == doc`.

use std::path::Path;

use cordon_core::model::{
    AgentArchetype, BehaviorProfile, BehaviorWeights, Capabilities, FenceRun, LeaderCase,
    ProfilePair, ProfileSet, Roster, Scenario, SubWeights, ValidateError, ValidatedScenario,
    WeaponKind, WeaponSpec, WeaponTable,
};
use cordon_core::{validate_scenario, Rect, Vec2};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDocument {
    pub format_version: u32,
    pub terrain: TerrainDoc,
    pub obstacles: ObstaclesDoc,
    pub capabilities: CapabilitiesDoc,
    pub weapons: WeaponsDoc,
    pub roster: RosterDoc,
    pub profiles: ProfilesDoc,
    pub run: RunDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerrainDoc {
    /// `[min_x, min_y, max_x, max_y]`
    pub bounds: [f64; 4],
    pub protected_area: [f64; 4],
    pub spawn_area: [f64; 4],
    pub rally_point: [f64; 2],
    pub police_line_y: f64,
    pub police_line_center_x: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstaclesDoc {
    #[serde(default)]
    pub fence: Vec<FenceDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FenceDoc {
    pub start: [f64; 2],
    pub end: [f64; 2],
    pub count: u32,
    pub strength: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapabilitiesDoc {
    pub sensor_range: f64,
    pub comm_range: f64,
    pub speed: f64,
    pub police_max_health: f64,
    pub protester_max_health: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeaponsDoc {
    pub plastic_bullet: WeaponDoc,
    pub water_cannon: WeaponDoc,
    pub tear_gas: WeaponDoc,
    pub short_gun: WeaponDoc,
    pub baton: WeaponDoc,
    pub stone: WeaponDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeaponDoc {
    pub max_range: f64,
    pub damage: f64,
    pub hit_probability: f64,
    #[serde(default)]
    pub area_radius: f64,
    pub cooldown: u32,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RosterDoc {
    #[serde(default)]
    pub police_plastic_bullet: u32,
    #[serde(default)]
    pub police_tear_gas: u32,
    #[serde(default)]
    pub police_water_cannon: u32,
    #[serde(default)]
    pub police_short_gun: u32,
    #[serde(default)]
    pub passive_protester: u32,
    #[serde(default)]
    pub moderate_stone: u32,
    #[serde(default)]
    pub aggressive_stone: u32,
    #[serde(default)]
    pub moderate_baton: u32,
    #[serde(default)]
    pub aggressive_baton: u32,
    #[serde(default)]
    pub protest_leader: u32,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfilesDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub police_plastic_bullet: Option<ProfilePairDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub police_tear_gas: Option<ProfilePairDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub police_water_cannon: Option<ProfilePairDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub police_short_gun: Option<ProfilePairDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passive_protester: Option<ProfilePairDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moderate_stone: Option<ProfilePairDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aggressive_stone: Option<ProfilePairDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moderate_baton: Option<ProfilePairDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aggressive_baton: Option<ProfilePairDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub protest_leader: Option<ProfilePairDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfilePairDoc {
    pub default: ProfileDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub being_hit: Option<ProfileDoc>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    #[serde(default)]
    pub weights: WeightsDoc,
    #[serde(default)]
    pub sub_weights: SubWeightsDoc,
    #[serde(default)]
    pub movement_likelihood: f64,
    #[serde(default)]
    pub firing_likelihood: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsDoc {
    #[serde(default)]
    pub opponent: f64,
    #[serde(default)]
    pub allied: f64,
    #[serde(default)]
    pub leaders: f64,
    #[serde(default)]
    pub terrain: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubWeightsDoc {
    #[serde(default)]
    pub close_to_opponent: f64,
    #[serde(default)]
    pub close_to_opponent_weapon_range: f64,
    #[serde(default)]
    pub close_to_opponent_sensor_range: f64,
    #[serde(default)]
    pub close_to_wounded_opponent: f64,
    #[serde(default)]
    pub close_to_wounded_opponent_weapon_range: f64,
    #[serde(default)]
    pub close_to_wounded_opponent_sensor_range: f64,
    #[serde(default)]
    pub keep_leader_sensor_range: f64,
    #[serde(default)]
    pub keep_leader_comm_range: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunDoc {
    pub leader_case: LeaderCaseDoc,
    pub max_ticks: u32,
    pub standoff_radius: f64,
    pub spacing_min: f64,
    pub spacing_max: f64,
    pub police_proximity_trigger: f64,
    /// Seed used by `cordon run` when `--seed` is not given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeaderCaseDoc {
    Moderate,
    Aggressive,
}

fn rect(v: [f64; 4]) -> Rect {
    Rect::new(Vec2::new(v[0], v[1]), Vec2::new(v[2], v[3]))
}

fn rect_doc(r: Rect) -> [f64; 4] {
    [r.min.x, r.min.y, r.max.x, r.max.y]
}

fn profile_from_doc(doc: &ProfileDoc) -> BehaviorProfile {
    BehaviorProfile {
        weights: BehaviorWeights {
            opponent: doc.weights.opponent,
            allied: doc.weights.allied,
            leaders: doc.weights.leaders,
            terrain: doc.weights.terrain,
        },
        sub_weights: SubWeights {
            close_to_opponent: doc.sub_weights.close_to_opponent,
            close_to_opponent_weapon_range: doc.sub_weights.close_to_opponent_weapon_range,
            close_to_opponent_sensor_range: doc.sub_weights.close_to_opponent_sensor_range,
            close_to_wounded_opponent: doc.sub_weights.close_to_wounded_opponent,
            close_to_wounded_opponent_weapon_range: doc
                .sub_weights
                .close_to_wounded_opponent_weapon_range,
            close_to_wounded_opponent_sensor_range: doc
                .sub_weights
                .close_to_wounded_opponent_sensor_range,
            keep_leader_sensor_range: doc.sub_weights.keep_leader_sensor_range,
            keep_leader_comm_range: doc.sub_weights.keep_leader_comm_range,
        },
        movement_likelihood: doc.movement_likelihood,
        firing_likelihood: doc.firing_likelihood,
    }
}

fn profile_to_doc(p: &BehaviorProfile) -> ProfileDoc {
    ProfileDoc {
        weights: WeightsDoc {
            opponent: p.weights.opponent,
            allied: p.weights.allied,
            leaders: p.weights.leaders,
            terrain: p.weights.terrain,
        },
        sub_weights: SubWeightsDoc {
            close_to_opponent: p.sub_weights.close_to_opponent,
            close_to_opponent_weapon_range: p.sub_weights.close_to_opponent_weapon_range,
            close_to_opponent_sensor_range: p.sub_weights.close_to_opponent_sensor_range,
            close_to_wounded_opponent: p.sub_weights.close_to_wounded_opponent,
            close_to_wounded_opponent_weapon_range: p
                .sub_weights
                .close_to_wounded_opponent_weapon_range,
            close_to_wounded_opponent_sensor_range: p
                .sub_weights
                .close_to_wounded_opponent_sensor_range,
            keep_leader_sensor_range: p.sub_weights.keep_leader_sensor_range,
            keep_leader_comm_range: p.sub_weights.keep_leader_comm_range,
        },
        movement_likelihood: p.movement_likelihood,
        firing_likelihood: p.firing_likelihood,
    }
}

fn weapon_from_doc(kind: WeaponKind, doc: &WeaponDoc) -> WeaponSpec {
    WeaponSpec {
        kind,
        max_range: doc.max_range,
        damage: doc.damage,
        hit_probability: doc.hit_probability,
        area_radius: doc.area_radius,
        cooldown: doc.cooldown,
    }
}

fn weapon_to_doc(w: &WeaponSpec) -> WeaponDoc {
    WeaponDoc {
        max_range: w.max_range,
        damage: w.damage,
        hit_probability: w.hit_probability,
        area_radius: w.area_radius,
        cooldown: w.cooldown,
    }
}

impl ScenarioDocument {
    pub fn to_scenario(&self) -> Scenario {
        let mut roster = Roster::new();
        roster.set(AgentArchetype::PolicePlasticBullet, self.roster.police_plastic_bullet);
        roster.set(AgentArchetype::PoliceTearGas, self.roster.police_tear_gas);
        roster.set(AgentArchetype::PoliceWaterCannon, self.roster.police_water_cannon);
        roster.set(AgentArchetype::PoliceShortGun, self.roster.police_short_gun);
        roster.set(AgentArchetype::PassiveProtester, self.roster.passive_protester);
        roster.set(AgentArchetype::ModerateStone, self.roster.moderate_stone);
        roster.set(AgentArchetype::AggressiveStone, self.roster.aggressive_stone);
        roster.set(AgentArchetype::ModerateBaton, self.roster.moderate_baton);
        roster.set(AgentArchetype::AggressiveBaton, self.roster.aggressive_baton);
        roster.set(AgentArchetype::ProtestLeader, self.roster.protest_leader);

        let mut profiles = ProfileSet::default();
        let pairs = [
            (AgentArchetype::PolicePlasticBullet, &self.profiles.police_plastic_bullet),
            (AgentArchetype::PoliceTearGas, &self.profiles.police_tear_gas),
            (AgentArchetype::PoliceWaterCannon, &self.profiles.police_water_cannon),
            (AgentArchetype::PoliceShortGun, &self.profiles.police_short_gun),
            (AgentArchetype::PassiveProtester, &self.profiles.passive_protester),
            (AgentArchetype::ModerateStone, &self.profiles.moderate_stone),
            (AgentArchetype::AggressiveStone, &self.profiles.aggressive_stone),
            (AgentArchetype::ModerateBaton, &self.profiles.moderate_baton),
            (AgentArchetype::AggressiveBaton, &self.profiles.aggressive_baton),
            (AgentArchetype::ProtestLeader, &self.profiles.protest_leader),
        ];
        for (archetype, doc) in pairs {
            if let Some(doc) = doc {
                profiles.set(
                    archetype,
                    ProfilePair {
                        default: profile_from_doc(&doc.default),
                        being_hit: doc.being_hit.as_ref().map(profile_from_doc),
                    },
                );
            }
        }

        Scenario {
            terrain_bounds: rect(self.terrain.bounds),
            protected_area: rect(self.terrain.protected_area),
            spawn_area: rect(self.terrain.spawn_area),
            rally_point: Vec2::new(self.terrain.rally_point[0], self.terrain.rally_point[1]),
            police_line_y: self.terrain.police_line_y,
            police_line_center_x: self.terrain.police_line_center_x,
            fences: self
                .obstacles
                .fence
                .iter()
                .map(|f| FenceRun {
                    start: Vec2::new(f.start[0], f.start[1]),
                    end: Vec2::new(f.end[0], f.end[1]),
                    count: f.count,
                    strength: f.strength,
                })
                .collect(),
            roster,
            profiles,
            weapons: WeaponTable {
                plastic_bullet: weapon_from_doc(WeaponKind::PlasticBullet, &self.weapons.plastic_bullet),
                water_cannon: weapon_from_doc(WeaponKind::WaterCannon, &self.weapons.water_cannon),
                tear_gas: weapon_from_doc(WeaponKind::TearGas, &self.weapons.tear_gas),
                short_gun: weapon_from_doc(WeaponKind::ShortGun, &self.weapons.short_gun),
                baton: weapon_from_doc(WeaponKind::Baton, &self.weapons.baton),
                stone: weapon_from_doc(WeaponKind::Stone, &self.weapons.stone),
            },
            capabilities: Capabilities {
                sensor_range: self.capabilities.sensor_range,
                comm_range: self.capabilities.comm_range,
                speed: self.capabilities.speed,
                police_max_health: self.capabilities.police_max_health,
                protester_max_health: self.capabilities.protester_max_health,
            },
            leader_case: match self.run.leader_case {
                LeaderCaseDoc::Moderate => LeaderCase::Moderate,
                LeaderCaseDoc::Aggressive => LeaderCase::Aggressive,
            },
            max_ticks: self.run.max_ticks,
            standoff_radius: self.run.standoff_radius,
            spacing_min: self.run.spacing_min,
            spacing_max: self.run.spacing_max,
            police_proximity_trigger: self.run.police_proximity_trigger,
        }
    }

    pub fn from_scenario(sc: &Scenario) -> ScenarioDocument {
        let pair_doc = |a: AgentArchetype| -> Option<ProfilePairDoc> {
            sc.profiles.get(a).map(|pair| ProfilePairDoc {
                default: profile_to_doc(&pair.default),
                being_hit: pair.being_hit.as_ref().map(profile_to_doc),
            })
        };
        ScenarioDocument {
            format_version: FORMAT_VERSION,
            terrain: TerrainDoc {
                bounds: rect_doc(sc.terrain_bounds),
                protected_area: rect_doc(sc.protected_area),
                spawn_area: rect_doc(sc.spawn_area),
                rally_point: [sc.rally_point.x, sc.rally_point.y],
                police_line_y: sc.police_line_y,
                police_line_center_x: sc.police_line_center_x,
            },
            obstacles: ObstaclesDoc {
                fence: sc
                    .fences
                    .iter()
                    .map(|f| FenceDoc {
                        start: [f.start.x, f.start.y],
                        end: [f.end.x, f.end.y],
                        count: f.count,
                        strength: f.strength,
                    })
                    .collect(),
            },
            capabilities: CapabilitiesDoc {
                sensor_range: sc.capabilities.sensor_range,
                comm_range: sc.capabilities.comm_range,
                speed: sc.capabilities.speed,
                police_max_health: sc.capabilities.police_max_health,
                protester_max_health: sc.capabilities.protester_max_health,
            },
            weapons: WeaponsDoc {
                plastic_bullet: weapon_to_doc(&sc.weapons.plastic_bullet),
                water_cannon: weapon_to_doc(&sc.weapons.water_cannon),
                tear_gas: weapon_to_doc(&sc.weapons.tear_gas),
                short_gun: weapon_to_doc(&sc.weapons.short_gun),
                baton: weapon_to_doc(&sc.weapons.baton),
                stone: weapon_to_doc(&sc.weapons.stone),
            },
            roster: RosterDoc {
                police_plastic_bullet: sc.roster.get(AgentArchetype::PolicePlasticBullet),
                police_tear_gas: sc.roster.get(AgentArchetype::PoliceTearGas),
                police_water_cannon: sc.roster.get(AgentArchetype::PoliceWaterCannon),
                police_short_gun: sc.roster.get(AgentArchetype::PoliceShortGun),
                passive_protester: sc.roster.get(AgentArchetype::PassiveProtester),
                moderate_stone: sc.roster.get(AgentArchetype::ModerateStone),
                aggressive_stone: sc.roster.get(AgentArchetype::AggressiveStone),
                moderate_baton: sc.roster.get(AgentArchetype::ModerateBaton),
                aggressive_baton: sc.roster.get(AgentArchetype::AggressiveBaton),
                protest_leader: sc.roster.get(AgentArchetype::ProtestLeader),
            },
            profiles: ProfilesDoc {
                police_plastic_bullet: pair_doc(AgentArchetype::PolicePlasticBullet),
                police_tear_gas: pair_doc(AgentArchetype::PoliceTearGas),
                police_water_cannon: pair_doc(AgentArchetype::PoliceWaterCannon),
                police_short_gun: pair_doc(AgentArchetype::PoliceShortGun),
                passive_protester: pair_doc(AgentArchetype::PassiveProtester),
                moderate_stone: pair_doc(AgentArchetype::ModerateStone),
                aggressive_stone: pair_doc(AgentArchetype::AggressiveStone),
                moderate_baton: pair_doc(AgentArchetype::ModerateBaton),
                aggressive_baton: pair_doc(AgentArchetype::AggressiveBaton),
                protest_leader: pair_doc(AgentArchetype::ProtestLeader),
            },
            run: RunDoc {
                leader_case: match sc.leader_case {
                    LeaderCase::Moderate => LeaderCaseDoc::Moderate,
                    LeaderCase::Aggressive => LeaderCaseDoc::Aggressive,
                },
                max_ticks: sc.max_ticks,
                standoff_radius: sc.standoff_radius,
                spacing_min: sc.spacing_min,
                spacing_max: sc.spacing_max,
                police_proximity_trigger: sc.police_proximity_trigger,
                default_seed: None,
            },
        }
    }
}

/// Serialize a document to canonical TOML text.
pub fn emit(doc: &ScenarioDocument) -> String {
    toml::to_string(doc).expect("scenario documents always serialize")
}

fn position_to_line_col(source: &str, offset: usize) -> (usize, usize) {
    let mut clamped = offset.min(source.len());
    while clamped > 0 && !source.is_char_boundary(clamped) {
        clamped -= 1;
    }
    let prefix = &source[..clamped];
    let line = prefix.matches('\n').count() + 1;
    let column = prefix.chars().rev().take_while(|c| *c != '\n').count() + 1;
    (line, column)
}

/// Line of the first occurrence of `key` at or after the `[section...]`
/// header naming `section`. Used to attach positions to validation errors.
fn locate_key(source: &str, section: Option<&str>, key: &str) -> Option<usize> {
    let lines: Vec<&str> = source.lines().collect();
    let start = match section {
        None => 0,
        Some(section) => lines
            .iter()
            .position(|l| {
                let t = l.trim_start();
                t.starts_with('[') && t.contains(section)
            })
            .unwrap_or(0),
    };
    lines[start..]
        .iter()
        .position(|l| l.contains(key))
        .map(|i| start + i + 1)
        .or_else(|| lines.iter().position(|l| l.contains(key)).map(|i| i + 1))
}

/// Section and key to search for when attaching a line to a validation error.
fn validation_hint(err: &ValidateError) -> (Option<String>, String) {
    match err {
        ValidateError::WeightOutOfRange { archetype, which, behavior, .. } => (
            Some(format!("profiles.{}.{}", archetype.label(), which.label())),
            behavior.label().to_string(),
        ),
        ValidateError::SubWeightOutOfRange { archetype, which, sub, .. } => (
            Some(format!("profiles.{}.{}", archetype.label(), which.label())),
            sub.label().to_string(),
        ),
        ValidateError::LikelihoodOutOfRange { archetype, which, what, .. } => (
            Some(format!("profiles.{}.{}", archetype.label(), which.label())),
            (*what).to_string(),
        ),
        ValidateError::GeometryError(msg) => {
            let key = msg.split([' ', ',']).next().unwrap_or("terrain").to_string();
            let section = if key == "fence" { "obstacles" } else { "terrain" };
            (Some(section.to_string()), key)
        }
        ValidateError::MissingProfile(archetype) => {
            (Some("roster".to_string()), archetype.label().to_string())
        }
        ValidateError::WeaponInvalid { kind, what, .. } => {
            (Some(format!("weapons.{}", kind.label())), (*what).to_string())
        }
        ValidateError::RunParamInvalid(msg) => {
            let key = msg.split([' ', ',']).next().unwrap_or("run").to_string();
            let section = if key.contains("health") || key.contains("range") || key == "speed" {
                "capabilities"
            } else {
                "run"
            };
            (Some(section.to_string()), key)
        }
    }
}

/// Parse and validate scenario text.
pub fn parse_scenario_str(source: &str) -> Result<ValidatedScenario, CliError> {
    let doc = parse_document(source)?;
    let scenario = doc.to_scenario();
    validate_scenario(scenario).map_err(|source_err| {
        let (section, key) = validation_hint(&source_err);
        let line = locate_key(source, section.as_deref(), &key);
        CliError::Validation { source: source_err, line }
    })
}

/// Parse scenario text into a document without validating the scenario.
pub fn parse_document(source: &str) -> Result<ScenarioDocument, CliError> {
    let doc: ScenarioDocument = toml::from_str(source).map_err(|e| {
        let (line, column) = e
            .span()
            .map(|span| position_to_line_col(source, span.start))
            .unwrap_or((1, 1));
        CliError::Parse { line, column, message: e.message().to_string() }
    })?;
    if doc.format_version != FORMAT_VERSION {
        let line = locate_key(source, None, "format_version").unwrap_or(1);
        return Err(CliError::Parse {
            line,
            column: 1,
            message: format!(
                "unsupported format_version {} (this build reads {FORMAT_VERSION})",
                doc.format_version
            ),
        });
    }
    Ok(doc)
}

/// Parse and validate a scenario file.
pub fn parse_scenario(path: &Path) -> Result<ValidatedScenario, CliError> {
    let source = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_scenario_str(&source)
}
