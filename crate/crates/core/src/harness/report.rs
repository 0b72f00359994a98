use std::fmt::Write as _;

use serde::Serialize;

use super::config::SweepConfig;
use super::events::{detect_events, EventReport, MeasureEvents};
use super::series::Measure;
use super::sweep::run_sweep;

#[derive(Clone, Debug, Serialize)]
pub struct ScenarioReport {
    pub label: String,
    pub events: Option<EventReport>,
    /// From `B_max` death to TSR death; `None` as end when TSR never dies.
    pub macrorealistic_steerable: Option<(f64, Option<f64>)>,
    pub error: Option<String>,
    #[serde(skip)]
    pub numerical_failure: bool,
}

impl ScenarioReport {
    pub fn hierarchy_ok(&self) -> bool {
        self.events.as_ref().is_some_and(|e| e.hierarchy_ok)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HierarchyReport {
    pub scenarios: Vec<ScenarioReport>,
}

fn fmt_time(t: Option<f64>) -> String {
    t.map_or_else(|| "none".to_string(), |v| format!("{v:.6}"))
}

fn fmt_events(e: &MeasureEvents) -> String {
    let revivals = if e.revival_intervals.is_empty() {
        "none".to_string()
    } else {
        e.revival_intervals
            .iter()
            .map(|(a, b)| format!("[{a:.6}, {b:.6}]"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!("death {}  revivals {}", fmt_time(e.death_time), revivals)
}

impl HierarchyReport {
    /// Every scenario ran and satisfied the hierarchy.
    pub fn all_ok(&self) -> bool {
        self.scenarios.iter().all(|s| s.error.is_none() && s.hierarchy_ok())
    }

    pub fn has_errors(&self) -> bool {
        self.scenarios.iter().any(|s| s.error.is_some())
    }

    pub fn has_numerical_failure(&self) -> bool {
        self.scenarios.iter().any(|s| s.numerical_failure)
    }

    /// Machine-readable summary of every scenario.
    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.scenarios {
            let _ = writeln!(out, "scenario: {}", s.label);
            match (&s.events, &s.error) {
                (_, Some(err)) => {
                    let _ = writeln!(out, "  error: {err}");
                }
                (Some(e), None) => {
                    let _ = writeln!(out, "  zero_tol: {:e}", e.zero_tol);
                    for m in Measure::ALL {
                        let _ = writeln!(out, "  {:<5} {}", m.name(), fmt_events(e.get(m)));
                    }
                    let _ = writeln!(out, "  hierarchy_ok: {}", e.hierarchy_ok);
                    let _ = writeln!(out, "  non_markovian: {}", e.non_markovian);
                    if let Some((a, b)) = s.macrorealistic_steerable {
                        let _ = writeln!(
                            out,
                            "  macrorealistic yet steerable and inseparable: t in [{a:.6}, {}]",
                            fmt_time(b)
                        );
                    }
                }
                (None, None) => {}
            }
            out.push('\n');
        }
        let _ = writeln!(out, "summary:");
        out.push_str(&self.summary_json());
        out.push('\n');
        out
    }
}

/// Runs every scenario and collects events; failures are recorded per scenario.
pub fn hierarchy_report(cfgs: &[SweepConfig]) -> HierarchyReport {
    let scenarios = cfgs
        .iter()
        .map(|cfg| {
            let outcome = run_sweep(cfg).and_then(|s| detect_events(&s, cfg.effective_zero_tol()));
            match outcome {
                Ok(events) => {
                    let window = events
                        .steerable_macrorealistic_window()
                        .map(|(a, b)| (a, b.is_finite().then_some(b)));
                    ScenarioReport {
                        label: cfg.label(),
                        events: Some(events),
                        macrorealistic_steerable: window,
                        error: None,
                        numerical_failure: false,
                    }
                }
                Err(e) => ScenarioReport {
                    label: cfg.label(),
                    events: None,
                    macrorealistic_steerable: None,
                    numerical_failure: e.is_numerical(),
                    error: Some(e.to_string()),
                },
            }
        })
        .collect();
    HierarchyReport { scenarios }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::config::parse_configs;

    #[test]
    fn identity_scenario_is_vacuously_ok() {
        let cfg = parse_configs(
            r#"{"name": "identity", "scenario": {"type": "ChannelSweep", "kind": "Depolarizing", "gamma": 0.0},
                "t_max": 1.0, "num_points": 5}"#,
        )
        .unwrap();
        let rep = hierarchy_report(&cfg);
        assert!(rep.all_ok());
        let e = rep.scenarios[0].events.as_ref().unwrap();
        assert!(Measure::ALL.iter().all(|&m| e.get(m).death_time.is_none()));
        let text = rep.to_text();
        assert!(text.contains("scenario: identity") && text.contains("\"hierarchy_ok\": true"));
        assert_eq!(text, hierarchy_report(&cfg).to_text());
    }

    #[test]
    fn too_short_sweep_is_an_error_entry() {
        let cfg = parse_configs(
            r#"{"scenario": {"type": "ChannelSweep", "kind": "Dephasing", "gamma": 1.0},
                "t_max": 1.0, "num_points": 3}"#,
        )
        .unwrap();
        let rep = hierarchy_report(&cfg);
        assert!(!rep.all_ok() && rep.has_errors() && !rep.has_numerical_failure());
    }
}
