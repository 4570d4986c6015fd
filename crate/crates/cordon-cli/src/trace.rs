//! Line-delimited trace files.
//!
//! Layout (one line each, fields space-separated unless noted):
//!
//! ```text
//! cordon-trace v1
//! terrain <min_x> <min_y> <max_x> <max_y>
//! protected <min_x> <min_y> <max_x> <max_y>
//! agentmeta <id>:<archetype> ...
//! fences <ax>,<ay>,<bx>,<by> ...
//! tick <n> | <id>:<x>:<y>:<health>:<d|h> ... | <strength>,... | <src>><a|o><id>:<amount>:<weapon> ...
//! end digest=<hex> seed=<n> max_ticks=<n> ticks=<n>
//! ```
//!
//! Empty fields hold `-`. The footer's digest is the scenario content
//! digest, so `(digest, seed, max_ticks)` is enough to regenerate the file
//! byte for byte.

use std::io::Write;

use cordon_core::engagement::Target;
use cordon_core::model::{ActiveProfile, AgentArchetype, AgentId, ValidatedScenario};
use cordon_core::{Rect, TraceRecord, Vec2, WorldState};

use crate::error::CliError;

pub const TRACE_HEADER: &str = "cordon-trace v1";

fn profile_code(p: ActiveProfile) -> char {
    match p {
        ActiveProfile::Default => 'd',
        ActiveProfile::BeingHit => 'h',
    }
}

/// Render a full trace file.
pub fn render_trace(
    initial_world: &WorldState,
    scenario: &ValidatedScenario,
    records: &[TraceRecord],
    digest: &str,
    seed: u64,
) -> String {
    let mut out = String::new();
    out.push_str(TRACE_HEADER);
    out.push('\n');
    let b = scenario.terrain_bounds;
    out.push_str(&format!("terrain {} {} {} {}\n", b.min.x, b.min.y, b.max.x, b.max.y));
    let p = scenario.protected_area;
    out.push_str(&format!("protected {} {} {} {}\n", p.min.x, p.min.y, p.max.x, p.max.y));

    out.push_str("agentmeta");
    if initial_world.agents.is_empty() {
        out.push_str(" -");
    }
    for agent in &initial_world.agents {
        out.push_str(&format!(" {}:{}", agent.id, agent.archetype.label()));
    }
    out.push('\n');

    out.push_str("fences");
    if initial_world.obstacles.is_empty() {
        out.push_str(" -");
    }
    for fence in &initial_world.obstacles {
        out.push_str(&format!(" {},{},{},{}", fence.a.x, fence.a.y, fence.b.x, fence.b.y));
    }
    out.push('\n');

    for record in records {
        out.push_str(&format!("tick {} |", record.tick));
        if record.agents.is_empty() {
            out.push_str(" -");
        }
        for row in &record.agents {
            out.push_str(&format!(
                " {}:{}:{}:{}:{}",
                row.id,
                row.x,
                row.y,
                row.health,
                profile_code(row.profile)
            ));
        }
        out.push_str(" |");
        if record.obstacle_strengths.is_empty() {
            out.push_str(" -");
        } else {
            let strengths: Vec<String> =
                record.obstacle_strengths.iter().map(|s| format!("{s}")).collect();
            out.push(' ');
            out.push_str(&strengths.join(","));
        }
        out.push_str(" |");
        if record.events.is_empty() {
            out.push_str(" -");
        }
        for e in &record.events {
            let (kind, id) = match e.target {
                Target::Agent(id) => ('a', id),
                Target::Obstacle(id) => ('o', id),
            };
            out.push_str(&format!(" {}>{}{}:{}:{}", e.source, kind, id, e.amount, e.weapon.label()));
        }
        out.push('\n');
    }

    out.push_str(&format!(
        "end digest={} seed={} max_ticks={} ticks={}\n",
        digest,
        seed,
        scenario.max_ticks,
        records.len()
    ));
    out
}

pub fn write_trace(
    w: &mut impl Write,
    initial_world: &WorldState,
    scenario: &ValidatedScenario,
    records: &[TraceRecord],
    digest: &str,
    seed: u64,
) -> std::io::Result<()> {
    w.write_all(render_trace(initial_world, scenario, records, digest, seed).as_bytes())
}

/// One parsed tick: agent rows `(id, x, y, health, profile)` and obstacle
/// strengths. Events are not needed downstream and are skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedTick {
    pub tick: u32,
    pub agents: Vec<(AgentId, f64, f64, f64, ActiveProfile)>,
    pub obstacle_strengths: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceData {
    pub terrain: Rect,
    pub protected: Rect,
    pub agents: Vec<(AgentId, AgentArchetype)>,
    pub fences: Vec<(Vec2, Vec2)>,
    pub records: Vec<ParsedTick>,
    pub digest: String,
    pub seed: u64,
    pub max_ticks: u32,
    pub ticks: u32,
}

fn bad(line: usize, message: impl Into<String>) -> CliError {
    CliError::TraceFormat { line, message: message.into() }
}

fn parse_rect(rest: &str, line: usize) -> Result<Rect, CliError> {
    let nums: Vec<f64> = rest
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| bad(line, format!("bad number {t:?}"))))
        .collect::<Result<_, _>>()?;
    if nums.len() != 4 {
        return Err(bad(line, "expected four numbers"));
    }
    Ok(Rect::new(Vec2::new(nums[0], nums[1]), Vec2::new(nums[2], nums[3])))
}

pub fn parse_trace(text: &str) -> Result<TraceData, CliError> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines.next().ok_or(bad(1, "empty trace"))?;
    if first != TRACE_HEADER {
        return Err(bad(1, format!("expected {TRACE_HEADER:?}")));
    }

    let mut terrain = None;
    let mut protected = None;
    let mut agents = Vec::new();
    let mut fences = Vec::new();
    let mut records = Vec::new();
    let mut footer = None;

    for (i, line) in lines {
        let n = i + 1;
        let Some((tag, rest)) = line.split_once(' ') else {
            return Err(bad(n, "missing record tag"));
        };
        match tag {
            "terrain" => terrain = Some(parse_rect(rest, n)?),
            "protected" => protected = Some(parse_rect(rest, n)?),
            "agentmeta" => {
                for token in rest.split_whitespace().filter(|t| *t != "-") {
                    let (id, label) = token.split_once(':').ok_or(bad(n, "bad agent meta"))?;
                    let id: AgentId = id.parse().map_err(|_| bad(n, "bad agent id"))?;
                    let archetype = AgentArchetype::from_label(label)
                        .ok_or(bad(n, format!("unknown archetype {label:?}")))?;
                    agents.push((id, archetype));
                }
            }
            "fences" => {
                for token in rest.split_whitespace().filter(|t| *t != "-") {
                    let nums: Vec<f64> = token
                        .split(',')
                        .map(|t| t.parse().map_err(|_| bad(n, "bad fence number")))
                        .collect::<Result<_, _>>()?;
                    if nums.len() != 4 {
                        return Err(bad(n, "fence needs four numbers"));
                    }
                    fences.push((Vec2::new(nums[0], nums[1]), Vec2::new(nums[2], nums[3])));
                }
            }
            "tick" => {
                let mut fields = rest.split(" | ");
                let tick: u32 = fields
                    .next()
                    .and_then(|t| t.trim().parse().ok())
                    .ok_or(bad(n, "bad tick number"))?;
                let agent_field = fields.next().ok_or(bad(n, "missing agents field"))?;
                let obstacle_field = fields.next().ok_or(bad(n, "missing obstacles field"))?;
                let _events = fields.next().ok_or(bad(n, "missing events field"))?;

                let mut rows = Vec::new();
                for token in agent_field.split_whitespace().filter(|t| *t != "-") {
                    let parts: Vec<&str> = token.split(':').collect();
                    if parts.len() != 5 {
                        return Err(bad(n, format!("bad agent row {token:?}")));
                    }
                    let id: AgentId = parts[0].parse().map_err(|_| bad(n, "bad agent id"))?;
                    let x: f64 = parts[1].parse().map_err(|_| bad(n, "bad x"))?;
                    let y: f64 = parts[2].parse().map_err(|_| bad(n, "bad y"))?;
                    let health: f64 = parts[3].parse().map_err(|_| bad(n, "bad health"))?;
                    let profile = match parts[4] {
                        "d" => ActiveProfile::Default,
                        "h" => ActiveProfile::BeingHit,
                        other => return Err(bad(n, format!("bad profile code {other:?}"))),
                    };
                    rows.push((id, x, y, health, profile));
                }
                let mut strengths = Vec::new();
                let trimmed = obstacle_field.trim();
                if trimmed != "-" {
                    for token in trimmed.split(',') {
                        strengths
                            .push(token.parse().map_err(|_| bad(n, "bad obstacle strength"))?);
                    }
                }
                records.push(ParsedTick { tick, agents: rows, obstacle_strengths: strengths });
            }
            "end" => {
                let mut digest = None;
                let mut seed = None;
                let mut max_ticks = None;
                let mut ticks = None;
                for token in rest.split_whitespace() {
                    let (key, value) = token.split_once('=').ok_or(bad(n, "bad footer token"))?;
                    match key {
                        "digest" => digest = Some(value.to_string()),
                        "seed" => seed = value.parse().ok(),
                        "max_ticks" => max_ticks = value.parse().ok(),
                        "ticks" => ticks = value.parse().ok(),
                        other => return Err(bad(n, format!("unknown footer key {other:?}"))),
                    }
                }
                footer = Some((
                    digest.ok_or(bad(n, "footer missing digest"))?,
                    seed.ok_or(bad(n, "footer missing seed"))?,
                    max_ticks.ok_or(bad(n, "footer missing max_ticks"))?,
                    ticks.ok_or(bad(n, "footer missing ticks"))?,
                ));
            }
            other => return Err(bad(n, format!("unknown record tag {other:?}"))),
        }
    }

    let (digest, seed, max_ticks, ticks) = footer.ok_or(bad(0, "trace has no end footer"))?;
    Ok(TraceData {
        terrain: terrain.ok_or(bad(0, "trace has no terrain line"))?,
        protected: protected.ok_or(bad(0, "trace has no protected line"))?,
        agents,
        fences,
        records,
        digest,
        seed,
        max_ticks,
        ticks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::document::parse_scenario_str;
    use crate::scenarios::{digest, CASE1};
    use cordon_core::{build_world, run_with_trace};

    fn trace_text(max_ticks: u32, seed: u64) -> String {
        let source = CASE1.replace("max_ticks = 200", &format!("max_ticks = {max_ticks}"));
        let sc = parse_scenario_str(&source).unwrap();
        let (_, records) = run_with_trace(&sc, seed).unwrap();
        let world0 = build_world(&sc, seed).unwrap();
        render_trace(&world0, &sc, &records, &digest(&source).unwrap(), seed)
    }

    #[test]
    fn three_tick_run_yields_three_records_and_a_footer() {
        let text = trace_text(3, 7);
        let ticks: Vec<&str> = text.lines().filter(|l| l.starts_with("tick ")).collect();
        assert_eq!(ticks.len(), 3);
        assert!(text.lines().last().unwrap().starts_with("end digest="));
    }

    #[test]
    fn trace_parses_back() {
        let text = trace_text(5, 3);
        let data = parse_trace(&text).unwrap();
        assert_eq!(data.records.len(), 5);
        assert_eq!(data.ticks, 5);
        assert_eq!(data.seed, 3);
        assert_eq!(data.max_ticks, 5);
        assert_eq!(data.agents.len(), 101);
        assert_eq!(data.fences.len(), 12);
        for (i, rec) in data.records.iter().enumerate() {
            assert_eq!(rec.tick, i as u32);
            assert_eq!(rec.agents.len(), 101);
            assert_eq!(rec.obstacle_strengths.len(), 12);
        }
    }

    #[test]
    fn regenerating_from_footer_reproduces_bytes() {
        let text = trace_text(4, 11);
        let data = parse_trace(&text).unwrap();
        let again = trace_text(data.max_ticks, data.seed);
        assert_eq!(text, again);
    }

    #[test]
    fn dead_agents_keep_their_last_position_in_records() {
        // Synthetic check on the format itself: a record with health 0
        // still carries coordinates.
        let line = "tick 0 | 5:12.5:30:0:h | - | -";
        let text = format!(
            "{TRACE_HEADER}\nterrain 0 0 10 10\nprotected 0 5 10 10\nagentmeta 5:passive_protester\nfences -\n{line}\nend digest=x seed=1 max_ticks=1 ticks=1\n"
        );
        let data = parse_trace(&text).unwrap();
        let row = &data.records[0].agents[0];
        assert_eq!(row.3, 0.0);
        assert_eq!((row.1, row.2), (12.5, 30.0));
    }

    #[test]
    fn corrupt_lines_report_their_line_number() {
        let text = format!("{TRACE_HEADER}\nterrain 0 0 z 10\n");
        match parse_trace(&text) {
            Err(CliError::TraceFormat { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected trace format error, got {other:?}"),
        }
    }
}
