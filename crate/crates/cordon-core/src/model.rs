//! Domain types, scenario validation, and deterministic world construction.

use alloc::vec::Vec;
use core::fmt;

use crate::math::{floor, Rect, Vec2};
use crate::rng::SplitMix64;

pub type AgentId = u32;

/// Police officers stand this far apart on their line.
pub const POLICE_SPACING: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Team {
    Police,
    Protesters,
}

/// The four named behaviors an agent can weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BehaviorName {
    CaringOpponent,
    CaringAllied,
    CaringLeaders,
    CaringTerrain,
}

impl BehaviorName {
    pub const ALL: [BehaviorName; 4] = [
        BehaviorName::CaringOpponent,
        BehaviorName::CaringAllied,
        BehaviorName::CaringLeaders,
        BehaviorName::CaringTerrain,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BehaviorName::CaringOpponent => "opponent",
            BehaviorName::CaringAllied => "allied",
            BehaviorName::CaringLeaders => "leaders",
            BehaviorName::CaringTerrain => "terrain",
        }
    }
}

/// Signed refinements of a parent behavior toward a target class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SubBehaviorName {
    CloseToOpponent,
    CloseToOpponentWeaponRange,
    CloseToOpponentSensorRange,
    CloseToWoundedOpponent,
    CloseToWoundedOpponentWeaponRange,
    CloseToWoundedOpponentSensorRange,
    KeepLeaderSensorRange,
    KeepLeaderCommRange,
}

impl SubBehaviorName {
    pub const ALL: [SubBehaviorName; 8] = [
        SubBehaviorName::CloseToOpponent,
        SubBehaviorName::CloseToOpponentWeaponRange,
        SubBehaviorName::CloseToOpponentSensorRange,
        SubBehaviorName::CloseToWoundedOpponent,
        SubBehaviorName::CloseToWoundedOpponentWeaponRange,
        SubBehaviorName::CloseToWoundedOpponentSensorRange,
        SubBehaviorName::KeepLeaderSensorRange,
        SubBehaviorName::KeepLeaderCommRange,
    ];

    /// Every sub-behavior refines exactly one parent behavior.
    pub fn parent(self) -> BehaviorName {
        match self {
            SubBehaviorName::CloseToOpponent
            | SubBehaviorName::CloseToOpponentWeaponRange
            | SubBehaviorName::CloseToOpponentSensorRange
            | SubBehaviorName::CloseToWoundedOpponent
            | SubBehaviorName::CloseToWoundedOpponentWeaponRange
            | SubBehaviorName::CloseToWoundedOpponentSensorRange => BehaviorName::CaringOpponent,
            SubBehaviorName::KeepLeaderSensorRange | SubBehaviorName::KeepLeaderCommRange => {
                BehaviorName::CaringLeaders
            }
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SubBehaviorName::CloseToOpponent => "close_to_opponent",
            SubBehaviorName::CloseToOpponentWeaponRange => "close_to_opponent_weapon_range",
            SubBehaviorName::CloseToOpponentSensorRange => "close_to_opponent_sensor_range",
            SubBehaviorName::CloseToWoundedOpponent => "close_to_wounded_opponent",
            SubBehaviorName::CloseToWoundedOpponentWeaponRange => {
                "close_to_wounded_opponent_weapon_range"
            }
            SubBehaviorName::CloseToWoundedOpponentSensorRange => {
                "close_to_wounded_opponent_sensor_range"
            }
            SubBehaviorName::KeepLeaderSensorRange => "keep_leader_sensor_range",
            SubBehaviorName::KeepLeaderCommRange => "keep_leader_comm_range",
        }
    }
}

/// Behavior weights, one scalar in `[0, 1]` per behavior.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BehaviorWeights {
    pub opponent: f64,
    pub allied: f64,
    pub leaders: f64,
    pub terrain: f64,
}

impl BehaviorWeights {
    pub fn get(&self, b: BehaviorName) -> f64 {
        match b {
            BehaviorName::CaringOpponent => self.opponent,
            BehaviorName::CaringAllied => self.allied,
            BehaviorName::CaringLeaders => self.leaders,
            BehaviorName::CaringTerrain => self.terrain,
        }
    }

    pub fn scaled(&self, c: f64) -> Self {
        BehaviorWeights {
            opponent: self.opponent * c,
            allied: self.allied * c,
            leaders: self.leaders * c,
            terrain: self.terrain * c,
        }
    }
}

/// Sub-behavior values, one signed scalar in `[-1, 1]` per sub-behavior.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SubWeights {
    pub close_to_opponent: f64,
    pub close_to_opponent_weapon_range: f64,
    pub close_to_opponent_sensor_range: f64,
    pub close_to_wounded_opponent: f64,
    pub close_to_wounded_opponent_weapon_range: f64,
    pub close_to_wounded_opponent_sensor_range: f64,
    pub keep_leader_sensor_range: f64,
    pub keep_leader_comm_range: f64,
}

impl SubWeights {
    pub fn get(&self, s: SubBehaviorName) -> f64 {
        match s {
            SubBehaviorName::CloseToOpponent => self.close_to_opponent,
            SubBehaviorName::CloseToOpponentWeaponRange => self.close_to_opponent_weapon_range,
            SubBehaviorName::CloseToOpponentSensorRange => self.close_to_opponent_sensor_range,
            SubBehaviorName::CloseToWoundedOpponent => self.close_to_wounded_opponent,
            SubBehaviorName::CloseToWoundedOpponentWeaponRange => {
                self.close_to_wounded_opponent_weapon_range
            }
            SubBehaviorName::CloseToWoundedOpponentSensorRange => {
                self.close_to_wounded_opponent_sensor_range
            }
            SubBehaviorName::KeepLeaderSensorRange => self.keep_leader_sensor_range,
            SubBehaviorName::KeepLeaderCommRange => self.keep_leader_comm_range,
        }
    }

    pub fn set(&mut self, s: SubBehaviorName, v: f64) {
        match s {
            SubBehaviorName::CloseToOpponent => self.close_to_opponent = v,
            SubBehaviorName::CloseToOpponentWeaponRange => self.close_to_opponent_weapon_range = v,
            SubBehaviorName::CloseToOpponentSensorRange => self.close_to_opponent_sensor_range = v,
            SubBehaviorName::CloseToWoundedOpponent => self.close_to_wounded_opponent = v,
            SubBehaviorName::CloseToWoundedOpponentWeaponRange => {
                self.close_to_wounded_opponent_weapon_range = v
            }
            SubBehaviorName::CloseToWoundedOpponentSensorRange => {
                self.close_to_wounded_opponent_sensor_range = v
            }
            SubBehaviorName::KeepLeaderSensorRange => self.keep_leader_sensor_range = v,
            SubBehaviorName::KeepLeaderCommRange => self.keep_leader_comm_range = v,
        }
    }

    /// The six sub-behaviors under CaringOpponent all set to `v`.
    pub fn all_opponent(v: f64) -> Self {
        SubWeights {
            close_to_opponent: v,
            close_to_opponent_weapon_range: v,
            close_to_opponent_sensor_range: v,
            close_to_wounded_opponent: v,
            close_to_wounded_opponent_weapon_range: v,
            close_to_wounded_opponent_sensor_range: v,
            ..SubWeights::default()
        }
    }

    pub fn any_nonzero_under(&self, parent: BehaviorName) -> bool {
        SubBehaviorName::ALL
            .iter()
            .any(|&s| s.parent() == parent && self.get(s) != 0.0)
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut out = *self;
        for s in SubBehaviorName::ALL {
            out.set(s, self.get(s) * c);
        }
        out
    }
}

/// One of the two behavior settings an archetype can be running.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ActiveProfile {
    Default,
    BeingHit,
}

impl ActiveProfile {
    pub fn label(self) -> &'static str {
        match self {
            ActiveProfile::Default => "default",
            ActiveProfile::BeingHit => "being_hit",
        }
    }
}

/// A complete behavior setting: weights, sub-weights, likelihoods.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BehaviorProfile {
    pub weights: BehaviorWeights,
    pub sub_weights: SubWeights,
    pub movement_likelihood: f64,
    pub firing_likelihood: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum WeaponKind {
    PlasticBullet,
    WaterCannon,
    TearGas,
    ShortGun,
    Baton,
    Stone,
}

impl WeaponKind {
    pub const ALL: [WeaponKind; 6] = [
        WeaponKind::PlasticBullet,
        WeaponKind::WaterCannon,
        WeaponKind::TearGas,
        WeaponKind::ShortGun,
        WeaponKind::Baton,
        WeaponKind::Stone,
    ];

    pub fn label(self) -> &'static str {
        match self {
            WeaponKind::PlasticBullet => "plastic_bullet",
            WeaponKind::WaterCannon => "water_cannon",
            WeaponKind::TearGas => "tear_gas",
            WeaponKind::ShortGun => "short_gun",
            WeaponKind::Baton => "baton",
            WeaponKind::Stone => "stone",
        }
    }
}

/// Weapon stats. `area_radius` of 0 means a point weapon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeaponSpec {
    pub kind: WeaponKind,
    pub max_range: f64,
    pub damage: f64,
    pub hit_probability: f64,
    pub area_radius: f64,
    pub cooldown: u32,
}

/// Stats for all six weapon kinds; scenario-configurable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeaponTable {
    pub plastic_bullet: WeaponSpec,
    pub water_cannon: WeaponSpec,
    pub tear_gas: WeaponSpec,
    pub short_gun: WeaponSpec,
    pub baton: WeaponSpec,
    pub stone: WeaponSpec,
}

impl WeaponTable {
    pub fn get(&self, kind: WeaponKind) -> &WeaponSpec {
        match kind {
            WeaponKind::PlasticBullet => &self.plastic_bullet,
            WeaponKind::WaterCannon => &self.water_cannon,
            WeaponKind::TearGas => &self.tear_gas,
            WeaponKind::ShortGun => &self.short_gun,
            WeaponKind::Baton => &self.baton,
            WeaponKind::Stone => &self.stone,
        }
    }
}

/// Capabilities shared by every agent; health differs per side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Capabilities {
    pub sensor_range: f64,
    pub comm_range: f64,
    pub speed: f64,
    pub police_max_health: f64,
    pub protester_max_health: f64,
}

impl Capabilities {
    pub fn max_health(&self, team: Team) -> f64 {
        match team {
            Team::Police => self.police_max_health,
            Team::Protesters => self.protester_max_health,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AgentArchetype {
    PolicePlasticBullet,
    PoliceTearGas,
    PoliceWaterCannon,
    PoliceShortGun,
    PassiveProtester,
    ModerateStone,
    AggressiveStone,
    ModerateBaton,
    AggressiveBaton,
    ProtestLeader,
}

impl AgentArchetype {
    pub const ALL: [AgentArchetype; 10] = [
        AgentArchetype::PolicePlasticBullet,
        AgentArchetype::PoliceTearGas,
        AgentArchetype::PoliceWaterCannon,
        AgentArchetype::PoliceShortGun,
        AgentArchetype::PassiveProtester,
        AgentArchetype::ModerateStone,
        AgentArchetype::AggressiveStone,
        AgentArchetype::ModerateBaton,
        AgentArchetype::AggressiveBaton,
        AgentArchetype::ProtestLeader,
    ];

    pub fn team(self) -> Team {
        match self {
            AgentArchetype::PolicePlasticBullet
            | AgentArchetype::PoliceTearGas
            | AgentArchetype::PoliceWaterCannon
            | AgentArchetype::PoliceShortGun => Team::Police,
            _ => Team::Protesters,
        }
    }

    pub fn is_leader(self) -> bool {
        self == AgentArchetype::ProtestLeader
    }

    pub fn weapon_kind(self) -> Option<WeaponKind> {
        match self {
            AgentArchetype::PolicePlasticBullet => Some(WeaponKind::PlasticBullet),
            AgentArchetype::PoliceTearGas => Some(WeaponKind::TearGas),
            AgentArchetype::PoliceWaterCannon => Some(WeaponKind::WaterCannon),
            AgentArchetype::PoliceShortGun => Some(WeaponKind::ShortGun),
            AgentArchetype::PassiveProtester => None,
            AgentArchetype::ModerateStone
            | AgentArchetype::AggressiveStone
            | AgentArchetype::ProtestLeader => Some(WeaponKind::Stone),
            AgentArchetype::ModerateBaton | AgentArchetype::AggressiveBaton => {
                Some(WeaponKind::Baton)
            }
        }
    }

    /// Moderates and leaders never switch profiles.
    pub fn may_have_being_hit(self) -> bool {
        !matches!(
            self,
            AgentArchetype::ModerateStone
                | AgentArchetype::ModerateBaton
                | AgentArchetype::ProtestLeader
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            AgentArchetype::PolicePlasticBullet => "police_plastic_bullet",
            AgentArchetype::PoliceTearGas => "police_tear_gas",
            AgentArchetype::PoliceWaterCannon => "police_water_cannon",
            AgentArchetype::PoliceShortGun => "police_short_gun",
            AgentArchetype::PassiveProtester => "passive_protester",
            AgentArchetype::ModerateStone => "moderate_stone",
            AgentArchetype::AggressiveStone => "aggressive_stone",
            AgentArchetype::ModerateBaton => "moderate_baton",
            AgentArchetype::AggressiveBaton => "aggressive_baton",
            AgentArchetype::ProtestLeader => "protest_leader",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.label() == label)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Agent {
    pub id: AgentId,
    pub team: Team,
    pub archetype: AgentArchetype,
    pub position: Vec2,
    pub health: f64,
    pub active_profile: ActiveProfile,
    pub trigger_latched: bool,
    pub is_leader: bool,
    pub weapon_cooldown_remaining: u32,
}

impl Agent {
    pub fn is_alive(&self) -> bool {
        self.health > 0.0
    }
}

/// A fence segment. Destroyed segments stop blocking movement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Obstacle {
    pub id: u32,
    pub a: Vec2,
    pub b: Vec2,
    pub strength: f64,
    pub destroyed: bool,
}

impl Obstacle {
    pub fn blocks(&self) -> bool {
        !self.destroyed
    }
}

/// Seed for a contiguous run of fence segments from `start` to `end`,
/// split into `count` equal pieces of `strength` each.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FenceRun {
    pub start: Vec2,
    pub end: Vec2,
    pub count: u32,
    pub strength: f64,
}

/// Head count per archetype.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Roster {
    counts: [u32; 10],
}

impl Roster {
    pub fn new() -> Self {
        Roster::default()
    }

    pub fn get(&self, a: AgentArchetype) -> u32 {
        self.counts[Self::index(a)]
    }

    pub fn set(&mut self, a: AgentArchetype, n: u32) {
        self.counts[Self::index(a)] = n;
    }

    fn index(a: AgentArchetype) -> usize {
        AgentArchetype::ALL.iter().position(|&x| x == a).unwrap()
    }

    pub fn team_total(&self, team: Team) -> u32 {
        AgentArchetype::ALL
            .iter()
            .filter(|a| a.team() == team)
            .map(|&a| self.get(a))
            .sum()
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }
}

/// Default and optional being-hit behavior settings for one archetype.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePair {
    pub default: BehaviorProfile,
    pub being_hit: Option<BehaviorProfile>,
}

/// Behavior settings per archetype. Archetypes absent from the scenario
/// file stay `None`; validation requires one for every rostered archetype.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProfileSet {
    profiles: [Option<ProfilePair>; 10],
}

impl ProfileSet {
    pub fn get(&self, a: AgentArchetype) -> Option<&ProfilePair> {
        self.profiles[Roster::index(a)].as_ref()
    }

    pub fn set(&mut self, a: AgentArchetype, p: ProfilePair) {
        self.profiles[Roster::index(a)] = Some(p);
    }
}

/// Which leader personality the scenario models. Metadata only: the actual
/// difference lives in the leader's profile values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeaderCase {
    Moderate,
    Aggressive,
}

impl LeaderCase {
    pub fn label(self) -> &'static str {
        match self {
            LeaderCase::Moderate => "moderate",
            LeaderCase::Aggressive => "aggressive",
        }
    }
}

/// Everything a run needs: geometry, rosters, profiles, weapon stats, run
/// limits. Construct, then pass through [`validate_scenario`].
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub terrain_bounds: Rect,
    pub protected_area: Rect,
    pub spawn_area: Rect,
    pub rally_point: Vec2,
    pub police_line_y: f64,
    pub police_line_center_x: f64,
    pub fences: Vec<FenceRun>,
    pub roster: Roster,
    pub profiles: ProfileSet,
    pub weapons: WeaponTable,
    pub capabilities: Capabilities,
    pub leader_case: LeaderCase,
    pub max_ticks: u32,
    pub standoff_radius: f64,
    pub spacing_min: f64,
    pub spacing_max: f64,
    pub police_proximity_trigger: f64,
}

/// A [`Scenario`] that passed validation. The engine only accepts these.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedScenario {
    inner: Scenario,
}

impl ValidatedScenario {
    /// Wrap without checking. For tests and callers that build scenarios in
    /// code and take responsibility for the invariants themselves.
    pub fn new_unchecked(inner: Scenario) -> Self {
        ValidatedScenario { inner }
    }

    pub fn profile(&self, archetype: AgentArchetype, which: ActiveProfile) -> &BehaviorProfile {
        let pair = self
            .profiles
            .get(archetype)
            .expect("validated scenario has profiles for all rostered archetypes");
        match which {
            ActiveProfile::Default => &pair.default,
            ActiveProfile::BeingHit => pair.being_hit.as_ref().unwrap_or(&pair.default),
        }
    }

    pub fn into_inner(self) -> Scenario {
        self.inner
    }
}

impl core::ops::Deref for ValidatedScenario {
    type Target = Scenario;

    fn deref(&self) -> &Scenario {
        &self.inner
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ValidateError {
    WeightOutOfRange {
        archetype: AgentArchetype,
        which: ActiveProfile,
        behavior: BehaviorName,
        value: f64,
    },
    SubWeightOutOfRange {
        archetype: AgentArchetype,
        which: ActiveProfile,
        sub: SubBehaviorName,
        value: f64,
    },
    LikelihoodOutOfRange {
        archetype: AgentArchetype,
        which: ActiveProfile,
        what: &'static str,
        value: f64,
    },
    GeometryError(&'static str),
    MissingProfile(AgentArchetype),
    WeaponInvalid {
        kind: WeaponKind,
        what: &'static str,
        value: f64,
    },
    RunParamInvalid(&'static str),
}

impl fmt::Display for ValidateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidateError::WeightOutOfRange { archetype, which, behavior, value } => write!(
                f,
                "behavior weight out of range [0, 1]: profiles.{}.{}.{} = {}",
                archetype.label(),
                which.label(),
                behavior.label(),
                value
            ),
            ValidateError::SubWeightOutOfRange { archetype, which, sub, value } => write!(
                f,
                "sub-behavior value out of range [-1, 1]: profiles.{}.{}.{} = {}",
                archetype.label(),
                which.label(),
                sub.label(),
                value
            ),
            ValidateError::LikelihoodOutOfRange { archetype, which, what, value } => write!(
                f,
                "likelihood out of range [0, 1]: profiles.{}.{}.{} = {}",
                archetype.label(),
                which.label(),
                what,
                value
            ),
            ValidateError::GeometryError(what) => write!(f, "geometry error: {what}"),
            ValidateError::MissingProfile(a) => {
                write!(f, "roster lists {} but no profile is defined for it", a.label())
            }
            ValidateError::WeaponInvalid { kind, what, value } => {
                write!(f, "weapon {} has invalid {}: {}", kind.label(), what, value)
            }
            ValidateError::RunParamInvalid(what) => write!(f, "invalid run parameter: {what}"),
        }
    }
}

impl core::error::Error for ValidateError {}

fn check_profile(
    archetype: AgentArchetype,
    which: ActiveProfile,
    p: &BehaviorProfile,
) -> Result<(), ValidateError> {
    for b in BehaviorName::ALL {
        let v = p.weights.get(b);
        if !(0.0..=1.0).contains(&v) || !v.is_finite() {
            return Err(ValidateError::WeightOutOfRange { archetype, which, behavior: b, value: v });
        }
    }
    for s in SubBehaviorName::ALL {
        let v = p.sub_weights.get(s);
        if !(-1.0..=1.0).contains(&v) || !v.is_finite() {
            return Err(ValidateError::SubWeightOutOfRange { archetype, which, sub: s, value: v });
        }
    }
    for (what, v) in [
        ("movement_likelihood", p.movement_likelihood),
        ("firing_likelihood", p.firing_likelihood),
    ] {
        if !(0.0..=1.0).contains(&v) || !v.is_finite() {
            return Err(ValidateError::LikelihoodOutOfRange { archetype, which, what, value: v });
        }
    }
    Ok(())
}

fn check_weapon(w: &WeaponSpec) -> Result<(), ValidateError> {
    let kind = w.kind;
    if w.max_range <= 0.0 || !w.max_range.is_finite() {
        return Err(ValidateError::WeaponInvalid { kind, what: "max_range", value: w.max_range });
    }
    if w.damage < 0.0 || !w.damage.is_finite() {
        return Err(ValidateError::WeaponInvalid { kind, what: "damage", value: w.damage });
    }
    if !(0.0..=1.0).contains(&w.hit_probability) {
        return Err(ValidateError::WeaponInvalid {
            kind,
            what: "hit_probability",
            value: w.hit_probability,
        });
    }
    if w.area_radius < 0.0 || !w.area_radius.is_finite() {
        return Err(ValidateError::WeaponInvalid {
            kind,
            what: "area_radius",
            value: w.area_radius,
        });
    }
    if w.cooldown < 1 {
        return Err(ValidateError::WeaponInvalid {
            kind,
            what: "cooldown",
            value: w.cooldown as f64,
        });
    }
    Ok(())
}

/// Check every type invariant; returns the scenario wrapped as validated.
pub fn validate_scenario(raw: Scenario) -> Result<ValidatedScenario, ValidateError> {
    if !raw.terrain_bounds.is_valid() {
        return Err(ValidateError::GeometryError("bounds must describe a non-empty rectangle"));
    }
    if !raw.protected_area.is_valid() || !raw.terrain_bounds.contains_rect(raw.protected_area) {
        return Err(ValidateError::GeometryError("protected_area must lie inside the terrain bounds"));
    }
    if !raw.spawn_area.is_valid() || !raw.terrain_bounds.contains_rect(raw.spawn_area) {
        return Err(ValidateError::GeometryError("spawn_area must lie inside the terrain bounds"));
    }
    if raw.spawn_area.intersects(raw.protected_area) {
        return Err(ValidateError::GeometryError("spawn_area must not overlap the protected area"));
    }
    if !raw.rally_point.is_finite() || !raw.terrain_bounds.contains(raw.rally_point) {
        return Err(ValidateError::GeometryError("rally_point must lie inside the terrain bounds"));
    }
    if raw.police_line_y < raw.terrain_bounds.min.y || raw.police_line_y > raw.terrain_bounds.max.y
    {
        return Err(ValidateError::GeometryError("police_line_y must lie inside the terrain bounds"));
    }
    for fence in &raw.fences {
        if fence.count == 0 {
            return Err(ValidateError::GeometryError("fence runs need at least one segment"));
        }
        if fence.strength < 0.0 || !fence.strength.is_finite() {
            return Err(ValidateError::GeometryError("fence strength must be non-negative"));
        }
        if !fence.start.is_finite()
            || !fence.end.is_finite()
            || !raw.terrain_bounds.contains(fence.start)
            || !raw.terrain_bounds.contains(fence.end)
        {
            return Err(ValidateError::GeometryError("fence endpoints must lie inside the terrain bounds"));
        }
    }

    if raw.max_ticks < 1 {
        return Err(ValidateError::RunParamInvalid("max_ticks must be at least 1"));
    }
    if raw.spacing_min <= 0.0
        || raw.spacing_min >= raw.spacing_max
        || !raw.spacing_min.is_finite()
        || !raw.spacing_max.is_finite()
    {
        return Err(ValidateError::RunParamInvalid("spacing_min must be positive and below spacing_max"));
    }
    if raw.standoff_radius <= 0.0 || !raw.standoff_radius.is_finite() {
        return Err(ValidateError::RunParamInvalid("standoff_radius must be positive"));
    }
    if raw.police_proximity_trigger <= 0.0 || !raw.police_proximity_trigger.is_finite() {
        return Err(ValidateError::RunParamInvalid("police_proximity_trigger must be positive"));
    }
    let c = &raw.capabilities;
    if [c.sensor_range, c.comm_range, c.speed].iter().any(|v| *v <= 0.0 || !v.is_finite()) {
        return Err(ValidateError::RunParamInvalid("sensor_range, comm_range and speed must be positive"));
    }
    if [c.police_max_health, c.protester_max_health].iter().any(|v| *v <= 0.0 || !v.is_finite()) {
        return Err(ValidateError::RunParamInvalid("police_max_health and protester_max_health must be positive"));
    }

    for kind in WeaponKind::ALL {
        check_weapon(raw.weapons.get(kind))?;
    }

    for archetype in AgentArchetype::ALL {
        if raw.roster.get(archetype) == 0 {
            continue;
        }
        let pair = raw
            .profiles
            .get(archetype)
            .ok_or(ValidateError::MissingProfile(archetype))?;
        check_profile(archetype, ActiveProfile::Default, &pair.default)?;
        if let Some(bh) = &pair.being_hit {
            check_profile(archetype, ActiveProfile::BeingHit, bh)?;
        }
    }

    Ok(ValidatedScenario { inner: raw })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    /// The roster does not fit in the spawn area at minimum spacing.
    Capacity { needed: u32, available: u32 },
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::Capacity { needed, available } => write!(
                f,
                "roster needs {needed} spawn slots but the spawn area holds only {available} at minimum spacing"
            ),
        }
    }
}

impl core::error::Error for BuildError {}

/// Full simulation state. A pure function of `(scenario, seed)` at every
/// tick.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldState {
    pub tick: u32,
    pub agents: Vec<Agent>,
    pub obstacles: Vec<Obstacle>,
    /// Cumulative damage absorbed per side (clamped amounts actually applied).
    pub damage_to_police: f64,
    pub damage_to_protesters: f64,
    /// Latched as soon as any living protester stands inside the protected area.
    pub goal_breached: bool,
    pub rng: SplitMix64,
    /// Agents hit during the previous tick; feeds this tick's triggers.
    pub hit_flags: Vec<bool>,
}

impl WorldState {
    pub fn living(&self, team: Team) -> u32 {
        self.agents.iter().filter(|a| a.team == team && a.is_alive()).count() as u32
    }
}

/// Deterministically place agents and fences.
///
/// Police stand on a line at 2 m intervals; protesters land on a jittered
/// grid over the spawn area (jitter from the seeded stream, two draws per
/// protester in id order); fence runs expand to contiguous segments.
/// Identical `(scenario, seed)` yields an identical world, bit for bit.
pub fn build_world(scenario: &ValidatedScenario, seed: u64) -> Result<WorldState, BuildError> {
    let mut rng = SplitMix64::new(seed);
    let mut agents = Vec::with_capacity(scenario.roster.total() as usize);

    let police_total = scenario.roster.team_total(Team::Police);
    let protester_total = scenario.roster.team_total(Team::Protesters);

    // Spawn grid at minimum spacing, row-major from the south-west corner.
    let pitch = scenario.spacing_min;
    let cols = (floor(scenario.spawn_area.width() / pitch) as u32) + 1;
    let rows = (floor(scenario.spawn_area.height() / pitch) as u32) + 1;
    let capacity = cols * rows;
    if protester_total > capacity {
        return Err(BuildError::Capacity { needed: protester_total, available: capacity });
    }

    let jitter = pitch * 0.3;
    let line_start_x =
        scenario.police_line_center_x - (police_total.saturating_sub(1) as f64) * POLICE_SPACING / 2.0;

    let mut police_placed = 0u32;
    let mut protesters_placed = 0u32;
    let mut id: AgentId = 0;
    for archetype in AgentArchetype::ALL {
        let team = archetype.team();
        for _ in 0..scenario.roster.get(archetype) {
            let position = match team {
                Team::Police => {
                    let p = Vec2::new(
                        line_start_x + police_placed as f64 * POLICE_SPACING,
                        scenario.police_line_y,
                    );
                    police_placed += 1;
                    scenario.terrain_bounds.clamp_point(p)
                }
                Team::Protesters => {
                    let cell = protesters_placed;
                    let col = cell % cols;
                    let row = cell / cols;
                    protesters_placed += 1;
                    let jx = rng.symmetric(jitter);
                    let jy = rng.symmetric(jitter);
                    let p = Vec2::new(
                        scenario.spawn_area.min.x + col as f64 * pitch + jx,
                        scenario.spawn_area.min.y + row as f64 * pitch + jy,
                    );
                    scenario.terrain_bounds.clamp_point(p)
                }
            };
            agents.push(Agent {
                id,
                team,
                archetype,
                position,
                health: scenario.capabilities.max_health(team),
                active_profile: ActiveProfile::Default,
                trigger_latched: false,
                is_leader: archetype.is_leader(),
                weapon_cooldown_remaining: 0,
            });
            id += 1;
        }
    }

    let mut obstacles = Vec::new();
    let mut obstacle_id = 0u32;
    for run in &scenario.fences {
        let step = (run.end - run.start) * (1.0 / run.count as f64);
        for i in 0..run.count {
            let a = run.start + step * i as f64;
            let b = run.start + step * (i + 1) as f64;
            obstacles.push(Obstacle {
                id: obstacle_id,
                a,
                b,
                strength: run.strength,
                destroyed: run.strength == 0.0,
            });
            obstacle_id += 1;
        }
    }

    let n = agents.len();
    Ok(WorldState {
        tick: 0,
        agents,
        obstacles,
        damage_to_police: 0.0,
        damage_to_protesters: 0.0,
        goal_breached: false,
        rng,
        hit_flags: alloc::vec![false; n],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{case_scenario, small_scenario};

    #[test]
    fn passive_default_profile_is_valid() {
        // weights 0.05 / 0.45 / 0.5
        let sc = case_scenario(LeaderCase::Moderate);
        assert!(validate_scenario(sc).is_ok());
    }

    #[test]
    fn weight_above_one_is_rejected() {
        let mut sc = case_scenario(LeaderCase::Moderate);
        let mut pair = *sc.profiles.get(AgentArchetype::PassiveProtester).unwrap();
        pair.default.weights.opponent = 1.2;
        sc.profiles.set(AgentArchetype::PassiveProtester, pair);
        match validate_scenario(sc) {
            Err(ValidateError::WeightOutOfRange { behavior, value, .. }) => {
                assert_eq!(behavior, BehaviorName::CaringOpponent);
                assert_eq!(value, 1.2);
            }
            other => panic!("expected WeightOutOfRange, got {other:?}"),
        }
    }

    #[test]
    fn passive_being_hit_sub_weights_of_minus_half_are_valid() {
        let sc = case_scenario(LeaderCase::Moderate);
        let pair = sc.profiles.get(AgentArchetype::PassiveProtester).unwrap();
        let bh = pair.being_hit.unwrap();
        assert_eq!(bh.sub_weights.close_to_opponent, -0.5);
        assert!(validate_scenario(sc).is_ok());
    }

    #[test]
    fn sub_weight_below_minus_one_is_rejected() {
        let mut sc = case_scenario(LeaderCase::Moderate);
        let mut pair = *sc.profiles.get(AgentArchetype::PassiveProtester).unwrap();
        pair.default.sub_weights.close_to_opponent = -1.5;
        sc.profiles.set(AgentArchetype::PassiveProtester, pair);
        assert!(matches!(
            validate_scenario(sc),
            Err(ValidateError::SubWeightOutOfRange { value, .. }) if value == -1.5
        ));
    }

    #[test]
    fn protected_area_outside_bounds_is_rejected() {
        let mut sc = case_scenario(LeaderCase::Moderate);
        sc.protected_area = Rect::new(Vec2::new(0.0, 150.0), Vec2::new(300.0, 250.0));
        assert!(matches!(validate_scenario(sc), Err(ValidateError::GeometryError(_))));
    }

    #[test]
    fn rostered_archetype_without_profile_is_rejected() {
        let mut sc = small_scenario();
        sc.profiles = ProfileSet::default();
        sc.roster.set(AgentArchetype::ModerateBaton, 2);
        assert!(matches!(
            validate_scenario(sc),
            Err(ValidateError::MissingProfile(AgentArchetype::ModerateBaton))
        ));
    }

    #[test]
    fn case1_build_counts() {
        let sc = validate_scenario(case_scenario(LeaderCase::Moderate)).unwrap();
        let world = build_world(&sc, 42).unwrap();
        assert_eq!(world.agents.iter().filter(|a| a.team == Team::Police).count(), 20);
        assert_eq!(world.agents.iter().filter(|a| a.team == Team::Protesters).count(), 81);
        assert_eq!(world.obstacles.len(), 12);
    }

    #[test]
    fn empty_roster_builds_empty_world() {
        let mut sc = small_scenario();
        sc.roster = Roster::new();
        let sc = validate_scenario(sc).unwrap();
        let world = build_world(&sc, 1).unwrap();
        assert!(world.agents.is_empty());
    }

    #[test]
    fn different_seeds_same_counts_different_jitter() {
        let sc = validate_scenario(case_scenario(LeaderCase::Moderate)).unwrap();
        let w1 = build_world(&sc, 1).unwrap();
        let w2 = build_world(&sc, 2).unwrap();
        assert_eq!(w1.agents.len(), w2.agents.len());
        let moved = w1
            .agents
            .iter()
            .zip(&w2.agents)
            .filter(|(a, b)| a.position != b.position)
            .count();
        assert!(moved > 0, "different seeds must move protester jitter");
        // Police are placed without jitter.
        for (a, b) in w1.agents.iter().zip(&w2.agents) {
            if a.team == Team::Police {
                assert_eq!(a.position, b.position);
            }
        }
    }

    #[test]
    fn build_is_deterministic() {
        let sc = validate_scenario(case_scenario(LeaderCase::Aggressive)).unwrap();
        assert_eq!(build_world(&sc, 7).unwrap(), build_world(&sc, 7).unwrap());
    }

    #[test]
    fn capacity_error_when_spawn_area_too_small() {
        let mut sc = case_scenario(LeaderCase::Moderate);
        sc.spawn_area = Rect::new(Vec2::new(50.0, 100.0), Vec2::new(53.0, 103.0));
        let sc = validate_scenario(sc).unwrap();
        assert!(matches!(build_world(&sc, 1), Err(BuildError::Capacity { .. })));
    }

    #[test]
    fn initial_health_and_positions_respect_invariants() {
        let sc = validate_scenario(case_scenario(LeaderCase::Moderate)).unwrap();
        let world = build_world(&sc, 9).unwrap();
        for a in &world.agents {
            let expected = match a.team {
                Team::Police => 200.0,
                Team::Protesters => 100.0,
            };
            assert_eq!(a.health, expected);
            assert!(sc.terrain_bounds.contains(a.position));
            if a.team == Team::Protesters {
                assert!(!sc.protected_area.contains(a.position));
            }
        }
        // Ids are the vector indices.
        for (i, a) in world.agents.iter().enumerate() {
            assert_eq!(a.id as usize, i);
        }
    }

    #[test]
    fn fence_runs_expand_to_contiguous_segments() {
        let sc = validate_scenario(case_scenario(LeaderCase::Moderate)).unwrap();
        let world = build_world(&sc, 3).unwrap();
        for pair in world.obstacles.windows(2) {
            assert_eq!(pair[0].b, pair[1].a);
        }
        let seg = world.obstacles[0];
        assert!(((seg.b - seg.a).norm() - 10.0).abs() < 1e-9);
    }
}
