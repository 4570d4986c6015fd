//! Human outcome table and the flat machine record, plus record parsing.

use cordon_core::SummaryReport;

use crate::error::CliError;

/// Format a float without a trailing `.0` for whole values.
pub fn fmt_f64(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

/// The eight-row criteria table plus run identity.
pub fn render_table(r: &SummaryReport) -> String {
    let goal = if r.goal_achieved { "yes" } else { "no" };
    let mut out = String::new();
    out.push_str(&format!("{:<4}{:<28}{}\n", "", "Criteria", "Result"));
    let rows = [
        ("1", "Achieved the goal?".to_string(), goal.to_string()),
        ("2", "Dead protesters".to_string(), format!("{}/{}", r.dead_protesters, r.total_protesters)),
        ("3", "Wounded protesters".to_string(), format!("{}/{}", r.wounded_protesters, r.total_protesters)),
        ("4", "Dead police".to_string(), format!("{}/{}", r.dead_police, r.total_police)),
        ("5", "Wounded police".to_string(), format!("{}/{}", r.wounded_police, r.total_police)),
        ("6", "Destroyed obstacles".to_string(), format!("{}/{}", r.obstacles_destroyed, r.total_obstacles)),
        ("7", "Protester health damage".to_string(), format!("{}/{}", fmt_f64(r.protester_health_damage), fmt_f64(r.protester_health_total))),
        ("8", "Police health damage".to_string(), format!("{}/{}", fmt_f64(r.police_health_damage), fmt_f64(r.police_health_total))),
        ("-", "Ticks elapsed".to_string(), format!("{}", r.ticks_elapsed)),
        ("-", "Seed".to_string(), format!("{}", r.seed)),
    ];
    for (n, label, value) in rows {
        out.push_str(&format!("{:<4}{:<28}{}\n", n, label, value));
    }
    out
}

/// Flat key=value record, one pair per line, stable key order.
pub fn render_record(r: &SummaryReport) -> String {
    let mut out = String::new();
    for (key, value) in record_pairs(r) {
        out.push_str(&format!("{key}={value}\n"));
    }
    out
}

fn record_pairs(r: &SummaryReport) -> Vec<(&'static str, String)> {
    vec![
        ("goal_achieved", r.goal_achieved.to_string()),
        ("dead_protesters", r.dead_protesters.to_string()),
        ("wounded_protesters", r.wounded_protesters.to_string()),
        ("total_protesters", r.total_protesters.to_string()),
        ("dead_police", r.dead_police.to_string()),
        ("wounded_police", r.wounded_police.to_string()),
        ("total_police", r.total_police.to_string()),
        ("obstacles_destroyed", r.obstacles_destroyed.to_string()),
        ("total_obstacles", r.total_obstacles.to_string()),
        ("protester_health_damage", fmt_f64(r.protester_health_damage)),
        ("protester_health_total", fmt_f64(r.protester_health_total)),
        ("police_health_damage", fmt_f64(r.police_health_damage)),
        ("police_health_total", fmt_f64(r.police_health_total)),
        ("ticks_elapsed", r.ticks_elapsed.to_string()),
        ("seed", r.seed.to_string()),
    ]
}

/// Parse a flat record back into a report (the machine round-trip).
pub fn parse_record(text: &str) -> Result<SummaryReport, CliError> {
    let mut map = std::collections::BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(CliError::TraceFormat {
            line: i + 1,
            message: format!("expected key=value, got {line:?}"),
        })?;
        map.insert(key.to_string(), value.to_string());
    }
    let get = |key: &str| -> Result<String, CliError> {
        map.get(key).cloned().ok_or(CliError::TraceFormat {
            line: 0,
            message: format!("record is missing {key}"),
        })
    };
    let int = |key: &str| -> Result<u32, CliError> {
        get(key)?.parse().map_err(|_| CliError::TraceFormat {
            line: 0,
            message: format!("{key} is not an integer"),
        })
    };
    let float = |key: &str| -> Result<f64, CliError> {
        get(key)?.parse().map_err(|_| CliError::TraceFormat {
            line: 0,
            message: format!("{key} is not a number"),
        })
    };
    Ok(SummaryReport {
        goal_achieved: get("goal_achieved")? == "true",
        dead_protesters: int("dead_protesters")?,
        wounded_protesters: int("wounded_protesters")?,
        total_protesters: int("total_protesters")?,
        dead_police: int("dead_police")?,
        wounded_police: int("wounded_police")?,
        total_police: int("total_police")?,
        obstacles_destroyed: int("obstacles_destroyed")?,
        total_obstacles: int("total_obstacles")?,
        protester_health_damage: float("protester_health_damage")?,
        protester_health_total: float("protester_health_total")?,
        police_health_damage: float("police_health_damage")?,
        police_health_total: float("police_health_total")?,
        ticks_elapsed: int("ticks_elapsed")?,
        seed: get("seed")?.parse().map_err(|_| CliError::TraceFormat {
            line: 0,
            message: "seed is not an integer".to_string(),
        })?,
    })
}
