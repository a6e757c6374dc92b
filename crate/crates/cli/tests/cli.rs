use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(format!("{name}.json"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("floer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn floer(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floer")).args(args).output().unwrap()
}

fn run(args: &[&str]) -> (i32, Value) {
    let out = floer(args);
    let v: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad JSON from {args:?}: {e}\n{}", String::from_utf8_lossy(&out.stdout)));
    assert_eq!(v["schema"], "floer-report/1");
    (out.status.code().unwrap(), v)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_reports_flags() {
    let (code, v) = run(&["validate", s(&fixture("torus1"))]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["valid"], true);
    assert_eq!(v["payload"]["num"], 1);
    assert_eq!(v["flags"]["nonisotopic"], true);
}

#[test]
fn invalid_inputs_exit_one() {
    let overlap = scratch("overlap.json");
    std::fs::write(
        &overlap,
        r#"{"surface":"plane",
            "alpha":{"vertices":[["0","0"],["2","0"],["2","2"],["0","2"]],"deck":[0,0]},
            "beta":{"vertices":[["1","0"],["3","0"],["3","1"],["1","1"]],"deck":[0,0]}}"#,
    )
    .unwrap();
    let (code, v) = run(&["validate", s(&overlap)]);
    assert_eq!(code, 1);
    assert_eq!(v["payload"]["valid"], false);
    assert!(v["payload"]["errors"].to_string().contains("transverse"), "{v}");

    let genus = scratch("genus2.json");
    std::fs::write(
        &genus,
        r#"{"surface":"genus-2",
            "alpha":{"vertices":[["0","0"]],"deck":[1,0]},
            "beta":{"vertices":[["0","0"]],"deck":[0,1]}}"#,
    )
    .unwrap();
    let (code, v) = run(&["homology", s(&genus)]);
    assert_eq!(code, 1);
    assert!(v["payload"]["error"].as_str().unwrap().contains("hyperbolic"));

    let (code, _) = run(&["lunes", s(&scratch("missing.json"))]);
    assert_eq!(code, 1);
}

#[test]
fn homology_of_torus_fixtures() {
    let (code, v) = run(&["homology", s(&fixture("torus3"))]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["homology"]["dim"], 1);
    assert_eq!(v["payload"]["euler"], 1);
    assert_eq!(v["payload"]["geo"], 1);

    let (_, v) = run(&["homology", s(&fixture("torus3")), "--coeff", "z"]);
    assert_eq!(v["payload"]["differential"][2][1], -1);
    assert_eq!(v["payload"]["homology"]["torsion"], serde_json::json!([]));

    let (code, v) = run(&["homology", s(&fixture("torus2"))]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["homology"]["dim"], 2);
}

#[test]
fn nonzero_square_outside_hypotheses_warns() {
    let out = floer(&["homology", s(&fixture("torus4"))]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["d_squared"]["zero"], false);
    assert!(v["payload"]["homology"]["refused"].is_string());
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
}

#[test]
fn lunes_and_maslov() {
    let (_, v) = run(&["lunes", s(&fixture("torus3"))]);
    assert_eq!(v["payload"]["count"], 2);
    let lunes = v["payload"]["lunes"].as_array().unwrap();
    assert!(lunes.iter().all(|l| l["primitive"] == true && l["maslov"] == 1));

    let (code, v) = run(&["maslov", s(&fixture("torus3")), "--from", "0", "--to", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["payload"]["mu"], 1);
    assert_eq!(v["payload"]["mu_plane_form"], 1);

    let (code, _) = run(&["maslov", s(&fixture("torus3")), "--from", "0", "--to", "9"]);
    assert_eq!(code, 1);
    let (code, _) = run(&[
        "maslov",
        s(&fixture("torus3")),
        "--from",
        "0",
        "--to",
        "1",
        "--arcs",
        "up,fwd",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn export_then_reduce() {
    let complex = scratch("torus3-complex.json");
    let (code, _) = run(&["complex", s(&fixture("torus3")), "--export", s(&complex)]);
    assert_eq!(code, 0);
    let reduced = scratch("torus3-reduced.json");
    let (code, v) = run(&["reduce", s(&complex), "--pair", "x1,x0", "-o", s(&reduced)]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["payload"]["chain_maps"]["phi"], serde_json::json!([[1, 0, 1]]));
    assert_eq!(v["payload"]["homology_after"]["dim"], 1);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&reduced).unwrap()).unwrap();
    assert_eq!(written["generators"], serde_json::json!(["x2"]));

    let (code, _) = run(&["reduce", s(&complex), "--pair", "x0,x2"]);
    assert_eq!(code, 1);
}

#[test]
fn isotopy_round_trip() {
    let cancelled = scratch("torus3-cancelled.json");
    let (code, v) = run(&[
        "isotopy-cancel",
        s(&fixture("torus3")),
        "--pair",
        "0,1",
        "-o",
        s(&cancelled),
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["payload"]["verification"]["holds"], true);
    let (_, v) = run(&["validate", s(&cancelled)]);
    assert_eq!(v["payload"]["num"], 1);

    let (code, _) = run(&[
        "isotopy-cancel",
        s(&fixture("torus3")),
        "--pair",
        "1,0",
        "-o",
        s(&cancelled),
    ]);
    assert_eq!(code, 1);

    let fingered = scratch("torus1-finger.json");
    let (code, v) = run(&[
        "isotopy-create",
        s(&fixture("torus1")),
        "--anchor",
        "1/4",
        "--target",
        "3/8",
        "-o",
        s(&fingered),
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["payload"]["crossings_after"], 3);
    let (_, v) = run(&["homology", s(&fingered)]);
    assert_eq!(v["payload"]["homology"]["dim"], 1);
}

#[test]
fn render_is_deterministic() {
    let a = scratch("a.svg");
    let b = scratch("b.svg");
    let plain = scratch("plain.svg");
    for out in [&a, &b] {
        let (code, _) = run(&["render", s(&fixture("nest")), "-o", s(out), "--lunes"]);
        assert_eq!(code, 0);
    }
    run(&["render", s(&fixture("nest")), "-o", s(&plain)]);
    let (sa, sb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(sa, sb);
    let shaded = String::from_utf8(sa).unwrap();
    let bare = std::fs::read_to_string(&plain).unwrap();
    assert!(shaded.starts_with("<svg") && shaded.contains("#f2c14e") && shaded.contains("w=1"));
    assert!(!bare.contains("#f2c14e"));
    assert!(bare.contains("x0 "));
}

#[test]
fn check_passes_on_fixtures() {
    for name in [
        "annulus", "nest", "plane", "sphere", "torus1", "torus2", "torus3", "torus4",
    ] {
        let (code, v) = run(&["check", s(&fixture(name))]);
        assert_eq!(code, 0, "{name}: {v}");
        assert_eq!(v["payload"]["passed"], true, "{name}");
    }
}

#[test]
fn text_output() {
    let out = floer(&["--text", "intersections", s(&fixture("torus2"))]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("intersections "));
    assert!(text.contains("num: 2"));
}
