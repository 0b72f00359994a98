use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn tempocorr(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tempocorr"));
    cmd.args(args).env_remove("TEMPOCORR_SEED").env("RUST_LOG", "error");
    if let Some(s) = seed {
        cmd.env("TEMPOCORR_SEED", s);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const DEPOLARIZING: &str = r#"{
    "scenario": {"type": "ChannelSweep", "kind": "Depolarizing", "gamma": 1.0},
    "t_max": 2.0, "num_points": 21
}"#;

const SAMPLED: &str = r#"{
    "scenario": {"type": "CompiledChannelSweep", "kind": "Depolarizing", "gamma": 1.0},
    "t_max": 1.0, "num_points": 6,
    "shot_mode": {"shots": 512, "seed": 5}
}"#;

#[test]
fn sweep_writes_csv() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", DEPOLARIZING);
    let out = dir.path().join("out.csv");
    let o = tempocorr(&["sweep", "--config", s(&cfg), "--out", s(&out)], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,bmax,tsr,f,rate_bmax,rate_tsr,rate_f"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 21);
    for row in rows {
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields.len(), 7);
        for f in fields {
            let mantissa = f.trim_start_matches('-').split('e').next().unwrap();
            assert!(mantissa.chars().filter(char::is_ascii_digit).count() >= 12, "{f}");
            f.parse::<f64>().unwrap();
        }
    }
}

#[test]
fn config_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out.csv");
    let unknown = write(&dir, "u.json", &DEPOLARIZING.replace("\"t_max\"", "\"tmax_typo\": 1, \"t_max\""));
    let malformed = write(&dir, "m.json", "{\"scenario\": ");
    let invalid = write(&dir, "i.json", &DEPOLARIZING.replace("21", "1"));
    for cfg in [&unknown, &malformed, &invalid, &dir.path().join("missing.json")] {
        let o = tempocorr(&["sweep", "--config", s(cfg), "--out", s(&out)], None);
        assert_eq!(code(&o), 2, "{}", cfg.display());
        assert!(!o.stderr.is_empty());
    }
    assert!(!out.exists());
    assert_eq!(code(&tempocorr(&["sweep"], None)), 2);
}

#[test]
fn report_exit_code_tracks_hierarchy() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", DEPOLARIZING);
    let o = tempocorr(&["report", "--config", s(&cfg)], None);
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 0, "{stdout}");
    assert!(stdout.contains("hierarchy_ok: true"), "{stdout}");

    // 512 shots put the zero tolerance above the initial TSR, so TSR reads as dead first
    let cfg = write(&dir, "s.json", &format!("[{DEPOLARIZING}, {SAMPLED}]"));
    let o = tempocorr(&["report", "--config", s(&cfg)], None);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn compiled_gate_file_round_trips() {
    let dir = TempDir::new().unwrap();
    let gates = dir.path().join("ad.gates");
    let o = tempocorr(
        &["compile", "--channel", "amplitude-damping", "--strength", "0.3", "--out", s(&gates)],
        None,
    );
    assert_eq!(code(&o), 0);
    assert!(std::fs::read_to_string(&gates).unwrap().contains("BRANCH"));
    let o = tempocorr(
        &["qpt", "--gatefile", s(&gates), "--compare", "amplitude-damping", "--strength", "0.3"],
        None,
    );
    assert_eq!(code(&o), 0);
    let stdout = String::from_utf8_lossy(&o.stdout);
    let fidelity: f64 = stdout
        .lines()
        .find_map(|l| l.strip_prefix("process fidelity vs amplitude-damping(0.3): "))
        .expect("fidelity line")
        .parse()
        .unwrap();
    assert!(fidelity > 1.0 - 1e-9, "{stdout}");

    let bad = write(&dir, "bad.gates", "QUBITS 2\nSPIN q0\n");
    assert_eq!(code(&tempocorr(&["qpt", "--gatefile", s(&bad)], None)), 2);
    assert_eq!(
        code(&tempocorr(&["compile", "--channel", "amplitude-damping", "--strength", "1.5", "--out", s(&gates)], None)),
        2
    );
}

#[test]
fn plot_renders_svg() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", DEPOLARIZING);
    let csv = dir.path().join("out.csv");
    let svg = dir.path().join("out.svg");
    assert_eq!(code(&tempocorr(&["sweep", "--config", s(&cfg), "--out", s(&csv)], None)), 0);
    assert_eq!(code(&tempocorr(&["plot", "--csv", s(&csv), "--out", s(&svg)], None)), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
}

#[test]
fn seed_override_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = write(&dir, "c.json", SAMPLED);
    let run = |name: &str, seed: Option<&str>| {
        let out = dir.path().join(name);
        let o = tempocorr(&["sweep", "--config", s(&cfg), "--out", s(&out)], seed);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        std::fs::read(out).unwrap()
    };
    let a = run("a.csv", Some("99"));
    let b = run("b.csv", Some("99"));
    let c = run("c.csv", Some("100"));
    let d = run("d.csv", None);
    let e = run("e.csv", Some("5"));
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert_eq!(d, e);

    let out = dir.path().join("x.csv");
    let o = tempocorr(&["sweep", "--config", s(&cfg), "--out", s(&out)], Some("not-a-number"));
    assert_eq!(code(&o), 2);
}
