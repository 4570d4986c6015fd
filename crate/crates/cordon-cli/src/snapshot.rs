//! Static SVG snapshots of one trace tick: terrain, protected area, fences
//! (solid while intact, dashed once destroyed), and one marker per agent —
//! squares for police, circles for protesters, a triangle for the leader.
//! Output bytes are deterministic for identical inputs.

use cordon_core::model::Team;

use crate::error::CliError;
use crate::trace::TraceData;

const SCALE: f64 = 4.0;

/// Map world coordinates to image coordinates (y flipped so north is up).
struct Mapper {
    min_x: f64,
    max_y: f64,
}

impl Mapper {
    fn x(&self, x: f64) -> f64 {
        (x - self.min_x) * SCALE
    }

    fn y(&self, y: f64) -> f64 {
        (self.max_y - y) * SCALE
    }
}

pub fn render_snapshot(trace: &TraceData, tick: u32) -> Result<String, CliError> {
    let record = trace.records.iter().find(|r| r.tick == tick).ok_or_else(|| {
        let last = trace.records.last().map(|r| r.tick).unwrap_or(0);
        CliError::TickOutOfRange { tick, last }
    })?;

    let m = Mapper { min_x: trace.terrain.min.x, max_y: trace.terrain.max.y };
    let width = trace.terrain.width() * SCALE;
    let height = trace.terrain.height() * SCALE;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"#f4f2ec\" stroke=\"#555\"/>\n"
    ));

    // Protected area.
    let p = trace.protected;
    svg.push_str(&format!(
        "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"#d9e7f5\" stroke=\"#7291b8\" stroke-dasharray=\"6 3\"/>\n",
        m.x(p.min.x),
        m.y(p.max.y),
        p.width() * SCALE,
        p.height() * SCALE
    ));

    // Fences, dashed once destroyed at this tick.
    for (i, (a, b)) in trace.fences.iter().enumerate() {
        let destroyed = record.obstacle_strengths.get(i).is_some_and(|s| *s <= 0.0);
        let style = if destroyed {
            "stroke=\"#b5a99a\" stroke-width=\"2\" stroke-dasharray=\"3 5\""
        } else {
            "stroke=\"#6b4f2a\" stroke-width=\"4\""
        };
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" {}/>\n",
            m.x(a.x),
            m.y(a.y),
            m.x(b.x),
            m.y(b.y),
            style
        ));
    }

    // Agents. Archetype metadata gives team and leadership.
    for (id, x, y, health, _) in &record.agents {
        let archetype = trace
            .agents
            .iter()
            .find(|(aid, _)| aid == id)
            .map(|(_, a)| *a)
            .ok_or(CliError::TraceFormat {
                line: 0,
                message: format!("tick row references unknown agent {id}"),
            })?;
        let dead = *health <= 0.0;
        let opacity = if dead { "0.25" } else { "1" };
        let (cx, cy) = (m.x(*x), m.y(*y));
        if archetype.is_leader() {
            svg.push_str(&format!(
                "<path d=\"M {} {} l 5 9 l -10 0 z\" fill=\"#c23b22\" opacity=\"{}\"/>\n",
                cx,
                cy - 6.0,
                opacity
            ));
        } else if archetype.team() == Team::Police {
            svg.push_str(&format!(
                "<rect x=\"{}\" y=\"{}\" width=\"6\" height=\"6\" fill=\"#2b4d8c\" opacity=\"{}\"/>\n",
                cx - 3.0,
                cy - 3.0,
                opacity
            ));
        } else {
            svg.push_str(&format!(
                "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"3\" fill=\"#3c7a3e\" opacity=\"{opacity}\"/>\n"
            ));
        }
    }

    svg.push_str(&format!(
        "<text x=\"8\" y=\"18\" font-family=\"monospace\" font-size=\"14\">tick {tick} seed {}</text>\n",
        trace.seed
    ));
    svg.push_str("</svg>\n");
    Ok(svg)
}
