use std::path::Path;
use std::process::Command as Proc;

use assoclab::*;
use clap::Parser;
use scalars::q;
use serde_json::Value;

fn bin() -> Proc {
    Proc::new(env!("CARGO_BIN_EXE_assoclab"))
}

fn config(args: &[&str], cache: &Path) -> JobConfig {
    let mut argv = vec!["assoclab"];
    argv.extend_from_slice(args);
    let cache = cache.to_str().unwrap().to_string();
    argv.push("--cache-dir");
    let argv: Vec<String> = argv.iter().map(|s| s.to_string()).chain([cache]).collect();
    JobConfig::from_cli(&Cli::try_parse_from(argv).unwrap()).unwrap()
}

fn check<'a>(r: &'a Report, name: &str) -> &'a Check {
    r.checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("no check {name}"))
}

#[test]
fn parses_rationals_and_points() {
    assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
    assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
    assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
    assert_eq!(parse_rational("1").unwrap(), q(1, 1));
    for bad in ["", "1/0", "abc", "1e-3", "."] {
        assert!(
            matches!(parse_rational(bad), Err(CliError::Input(_))),
            "{bad}"
        );
    }
    let z = parse_complex("-0.2, 0.7").unwrap();
    assert_eq!((z.re, z.im), (-0.2, 0.7));
    assert!(parse_complex("0.3").is_err());
}

#[test]
fn config_defaults_and_validation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(&["kz"], dir.path());
    assert_eq!((cfg.order, cfg.series_order, cfg.tol), (5, 64, 1e-9));
    assert_eq!(cfg.cache_dir, dir.path());
    let cfg = config(&["interp"], dir.path());
    assert_eq!(cfg.t, q(1, 1));
    let too_big = Cli::try_parse_from(["assoclab", "interp", "--order", "12"]).unwrap();
    assert!(matches!(
        JobConfig::from_cli(&too_big),
        Err(CliError::Input(_))
    ));
    let neg = Cli::try_parse_from(["assoclab", "kz", "--tol=-1"]).unwrap();
    assert!(matches!(JobConfig::from_cli(&neg), Err(CliError::Input(_))));
    assert_eq!(resolve_cache_dir(Some(Path::new("/x"))), Path::new("/x"));
}

#[test]
fn etingof_reports_both_coefficients() {
    let dir = tempfile::tempdir().unwrap();
    let r = run(&config(&["etingof"], dir.path())).unwrap();
    assert_eq!(r.values["c_a"], "1199/309657600");
    assert_eq!(r.values["c_b"], "283/103219200");
    assert!(r.passed());
    let art = r.artifact.unwrap();
    assert_eq!(art["c_a"], serde_json::json!(["1199", "309657600"]));
    assert_eq!(art["c_b"], serde_json::json!(["283", "103219200"]));
    let out = bin().arg("etingof").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1199/309657600") && text.contains("283/103219200"));
    assert!(text.contains("strong form fails"));
}

#[test]
fn kz_default_passes_and_caches() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(&["kz"], dir.path());
    let first = run(&cfg).unwrap();
    assert!(check(&first, "pentagon").residual < 1e-9);
    assert!(first.passed());
    assert_eq!(first.values["cached"], false);
    assert!(kz_cache_path(&cfg).exists());
    let second = run(&cfg).unwrap();
    assert_eq!(second.values["cached"], true);
    assert_eq!(first.artifact, second.artifact);
}

#[test]
fn kz_order_one_is_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let r = run(&config(&["kz", "--order", "1"], dir.path())).unwrap();
    let (phi, _) = load_or_compute_kz(&config(&["kz", "--order", "1"], dir.path())).unwrap();
    assert_eq!(phi.series().max_abs_in(1, 1), 0.0);
    assert!(r.passed());
}

#[test]
fn interp_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let zero = run(&config(&["interp", "--t", "0"], dir.path())).unwrap();
    assert!(zero.passed() && check(&zero, "identity_at_0").residual < 1e-12);
    let one = run(&config(&["interp", "--t", "1"], dir.path())).unwrap();
    assert!(one.passed());
    assert!(check(&one, "anti_kz_degree4").residual < 1e-8);
    let half = run(&config(&["interp", "--t", "1/2"], dir.path())).unwrap();
    let art = half.artifact.unwrap();
    assert_eq!(art["kind"], "associator");
    assert!(art["origin"].as_str().unwrap().starts_with("interpolated"));
}

#[test]
fn gc_commands() {
    let dir = tempfile::tempdir().unwrap();
    let closed = run(&config(&["gc", "cocycle", "tetrahedron"], dir.path())).unwrap();
    assert_eq!(closed.values["closed"], true);
    assert!(closed.passed());

    let phi = run(&config(&["gc", "phi", "tetrahedron"], dir.path())).unwrap();
    for name in ["antisymmetry", "hexagon", "pentagon"] {
        assert_eq!(check(&phi, name).residual, 0.0);
    }
    assert_eq!(phi.values["coeff_XXY"], "24");
    assert!(phi.artifact.as_ref().unwrap()["sder"].is_object());

    let div = run(&config(
        &["gc", "divergence", "--graph", "tetrahedron"],
        dir.path(),
    ))
    .unwrap();
    assert_eq!(div.values["zero"], true);

    let br = run(&config(
        &["gc", "bracket", "edge", "--with", "tetrahedron"],
        dir.path(),
    ))
    .unwrap();
    assert_eq!(br.values["result_terms"], 0);

    let open = run(&config(&["gc", "cocycle", "wheel5"], dir.path())).unwrap();
    assert!(!open.passed());
    assert!(matches!(
        run(&config(&["gc", "phi", "wheel5"], dir.path())),
        Err(CliError::Compute(_))
    ));
    assert!(matches!(
        run(&config(&["gc", "phi", "nosuchgraph"], dir.path())),
        Err(CliError::Input(_))
    ));
    assert!(matches!(
        run(&config(&["gc", "bracket", "edge"], dir.path())),
        Err(CliError::Input(_))
    ));
}

#[test]
fn gc_reads_graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k4.json");
    std::fs::write(
        &path,
        r#"{"vertices":4,"edges":[[1,2],[1,3],[1,4],[2,3],[2,4],[3,4]]}"#,
    )
    .unwrap();
    let r = run(&config(
        &["gc", "cocycle", "--in", path.to_str().unwrap()],
        dir.path(),
    ))
    .unwrap();
    assert_eq!(r.values["closed"], true);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"vertices":2,"edges":[[1,3]]}"#).unwrap();
    assert!(matches!(
        run(&config(&["gc", "delta", bad.to_str().unwrap()], dir.path())),
        Err(CliError::Input(_))
    ));
}

#[test]
fn weights_targets() {
    let dir = tempfile::tempdir().unwrap();
    let w = run(&config(
        &["weights", "tetrahedron", "--t", "0.5"],
        dir.path(),
    ))
    .unwrap();
    assert!(w.passed(), "{}", w.render_table());
    let ratio = w.values["type1_ratio_to_reduced"].as_f64().unwrap();
    assert!((ratio - 3.0).abs() < 1e-6);
    let at = run(&config(
        &["weights", "at", "--t", "0.25", "--z", "-0.2,0.7"],
        dir.path(),
    ))
    .unwrap();
    assert!(at.passed(), "{}", at.render_table());
    let prop = run(&config(&["weights", "propagator", "--t", "1"], dir.path())).unwrap();
    assert!(prop.passed());
    assert!(matches!(
        run(&config(&["weights", "wheel5"], dir.path())),
        Err(CliError::Input(_))
    ));
    let starved = run(&config(
        &["weights", "--budget", "1000", "--tol", "1e-12"],
        dir.path(),
    ));
    assert!(matches!(starved, Err(CliError::Compute(_))));
}

#[test]
fn check_reads_an_associator_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("phi.json");
    let cache = dir.path().join("cache");
    let status = bin()
        .args([
            "kz",
            "--order",
            "4",
            "--out",
            out.to_str().unwrap(),
            "--cache-dir",
            cache.to_str().unwrap(),
        ])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["command"], "kz");
    assert!(report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["anchor"].is_string()));
    let r = run(&config(
        &["check", "--in", out.to_str().unwrap()],
        dir.path(),
    ))
    .unwrap();
    assert!(r.passed());
    assert_eq!(r.values["order"], 4);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let code = |args: &[&str]| {
        bin()
            .args(args)
            .args(["--cache-dir", cache])
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(code(&["gc", "cocycle", "tetrahedron"]), Some(0));
    assert_eq!(code(&["gc", "cocycle", "wheel5"]), Some(2));
    assert_eq!(code(&["gc", "phi", "wheel5"]), Some(2));
    assert_eq!(
        code(&["kz", "--order", "2", "--out", "/nonexistent-dir/x.json"]),
        Some(3)
    );
    assert_eq!(code(&["nosuchcommand"]), Some(3));
    assert_eq!(code(&["kz", "--order", "99"]), Some(3));
    assert_eq!(bin().arg("--help").output().unwrap().status.code(), Some(0));
}

#[test]
fn cache_environment_variable() {
    let dir = tempfile::tempdir().unwrap();
    let status = bin()
        .args(["kz", "--order", "3"])
        .env(CACHE_ENV, dir.path())
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
}

#[test]
fn json_flag_prints_the_report() {
    let out = bin().args(["etingof", "--json"]).output().unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["values"]["c_a"], "1199/309657600");
    assert_eq!(v["passed"], true);
    assert!(v["versions"]["assoclab"].is_string());
}
