mod common;

use std::fs;

use common::{bin, data_dir, run, stdout, svg_cells};
use hyperlib::functions::RealActivation;
use hyperlib::network::{read_boundary_csv, Activation, Checkpoint, HyperbolicNetwork};

#[test]
fn eval_prints_both_forms() {
    let o = run(&["eval", "(1+1h)*(1-1h)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("0 + 0h"));

    let o = run(&["eval", "exp(0+0h)"]);
    assert_eq!(stdout(&o), "1 + 0h\n1·n1 + 1·n2\n");

    let o = run(&["eval", "3-2h"]);
    assert_eq!(stdout(&o), "3 - 2h\n1·n1 + 5·n2\n");
}

#[test]
fn eval_error_codes() {
    let o = run(&["eval", "1/(1+1h)"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("null cone"));
    assert_eq!(run(&["eval", "1 +* 2"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "exp(800)"]).status.code(), Some(4));
}

#[test]
fn polar_examples() {
    let o = stdout(&run(&["polar", "5", "3"]));
    assert!(o.contains("quadrant: Right"), "{o}");
    assert!(o.contains("rho: 4\n"), "{o}");
    assert!(o.contains("theta: 0.693147"), "{o}");

    let o = stdout(&run(&["polar", "1", "1"]));
    assert!(
        o.contains("quadrant: NullCone") && o.contains("divisor of zero"),
        "{o}"
    );

    let o = stdout(&run(&["polar", "-2", "0"]));
    assert!(
        o.contains("quadrant: Left") && o.contains("rho: 2\n") && o.contains("theta: 0\n"),
        "{o}"
    );

    let o = stdout(&run(&["polar", "0", "-3"]));
    assert!(o.contains("quadrant: Bottom"), "{o}");
}

#[test]
fn check_exit_codes() {
    assert_eq!(run(&["check", "holo"]).status.code(), Some(0));
    assert_eq!(run(&["check", "exp"]).status.code(), Some(0));
    assert_eq!(run(&["check", "idem-logistic"]).status.code(), Some(0));
    assert_eq!(run(&["check", "complex-id"]).status.code(), Some(0));
    assert_eq!(run(&["check", "split-logistic"]).status.code(), Some(1));
    assert_eq!(run(&["check", "complex-conj"]).status.code(), Some(1));
    assert_eq!(run(&["check", "complex-split"]).status.code(), Some(1));
    assert_eq!(run(&["check", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["check", "holo", "--grid", "1", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["check", "holo", "--box", "1", "-1", "0", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn check_writes_residual_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let o = run(&[
        "check",
        "split-logistic",
        "--box",
        "-1",
        "1",
        "-1",
        "1",
        "--grid",
        "3",
        "3",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,u,v,r1,r2"));
    assert_eq!(lines.count(), 9);
}

#[test]
fn scan_bounds_reports_open_unit_interval() {
    let o = stdout(&run(&[
        "scan-bounds",
        "holo",
        "--box",
        "-50",
        "50",
        "-50",
        "50",
        "--grid",
        "21",
        "21",
    ]));
    assert!(o.contains("u range: ["), "{o}");
    assert!(!o.contains("range: [0,") && !o.contains(", 1]"), "{o}");
}

#[test]
fn plot_holo_center_and_determinism() {
    let args = [
        "plot", "holo", "--box", "-3", "3", "-3", "3", "--grid", "61", "61",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let svg = stdout(&a);
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    assert!(!svg.contains("href"));
    let panels = svg_cells(&svg);
    assert_eq!(panels.len(), 2);
    let center = panels[0]
        .iter()
        .find(|c| c.0 == 0.0 && c.1 == 0.0)
        .expect("center cell");
    assert!((center.2 - 0.5).abs() <= 1e-9);
}

#[test]
fn plot_split_logistic_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("split.svg");
    let o = run(&[
        "plot",
        "split-logistic",
        "--grid",
        "21",
        "21",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let panels = svg_cells(&fs::read_to_string(&out).unwrap());
    let (u, v) = (&panels[0], &panels[1]);
    for cell in u {
        let same_column = u.iter().filter(|c| c.0 == cell.0);
        assert!(same_column.into_iter().all(|c| c.2 == cell.2));
    }
    assert_ne!(
        u.iter().map(|c| c.2).collect::<Vec<_>>(),
        v.iter().map(|c| c.2).collect::<Vec<_>>()
    );
}

#[test]
fn plot_usage_errors() {
    assert_eq!(
        run(&["plot", "holo", "--grid", "1", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["plot", "nope"]).status.code(), Some(2));
    let o = run(&["plot", "holo", "--out", "/nonexistent-dir/x.svg"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn train_bundled_and_task() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = data_dir().join("and_task.json");
    let o = run(&[
        "train",
        cfg.to_str().unwrap(),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = stdout(&o);
    let line = text
        .lines()
        .find(|l| l.starts_with("final loss: "))
        .unwrap();
    let loss: f64 = line["final loss: ".len()..].parse().unwrap();
    assert!(loss < 0.05, "{loss}");

    let ckpt = fs::read_to_string(dir.path().join("and_task.checkpoint.json")).unwrap();
    let net = Checkpoint::from_json(&ckpt).unwrap().to_network().unwrap();
    assert_eq!(net.dims(), vec![2, 1]);
    let history = fs::read_to_string(dir.path().join("and_task.loss.csv")).unwrap();
    assert!(history.starts_with("epoch,loss\n"));
    assert_eq!(history.lines().count(), 1 + 2001);

    // same config, same bytes
    let dir2 = tempfile::tempdir().unwrap();
    run(&[
        "train",
        cfg.to_str().unwrap(),
        "--out-dir",
        dir2.path().to_str().unwrap(),
    ]);
    assert_eq!(
        ckpt,
        fs::read_to_string(dir2.path().join("and_task.checkpoint.json")).unwrap()
    );
}

#[test]
fn train_failure_codes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = data_dir().join("and_task.json");
    let out = dir.path().to_str().unwrap();
    let o = run(&[
        "train",
        cfg.to_str().unwrap(),
        "--out-dir",
        out,
        "--lr",
        "1e6",
    ]);
    assert_eq!(o.status.code(), Some(4));

    let missing = dir.path().join("missing.json");
    fs::write(
        &missing,
        r#"{"dims":[1,1],"activation":"holo","seed":1,"epochs":5,"lr":0.1,"dataset":"nope.csv"}"#,
    )
    .unwrap();
    assert_eq!(
        run(&["train", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );

    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{").unwrap();
    assert_eq!(
        run(&["train", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn seed_env_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = data_dir().join("and_task.json");
    let out = dir.path().to_str().unwrap();
    let o = bin()
        .args([
            "train",
            cfg.to_str().unwrap(),
            "--out-dir",
            out,
            "--epochs",
            "3",
        ])
        .env("HYPERLIB_SEED", "12345")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("seed 12345"));
    let ckpt = fs::read_to_string(dir.path().join("and_task.checkpoint.json")).unwrap();
    assert_eq!(Checkpoint::from_json(&ckpt).unwrap().seed, 12345);

    let o = bin()
        .args(["train", cfg.to_str().unwrap(), "--out-dir", out])
        .env("HYPERLIB_SEED", "abc")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn boundary_csv_and_label_plot() {
    let dir = tempfile::tempdir().unwrap();
    let net = HyperbolicNetwork::init(&[1, 1], Activation::HoloLift(RealActivation::Logistic), 2)
        .unwrap();
    let ckpt = dir.path().join("unit.json");
    fs::write(&ckpt, Checkpoint::from_network(&net).unwrap().to_json()).unwrap();
    let csv = dir.path().join("b.csv");
    let o = run(&[
        "boundary",
        ckpt.to_str().unwrap(),
        "--grid",
        "11",
        "11",
        "--out",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows = read_boundary_csv(std::io::BufReader::new(fs::File::open(&csv).unwrap())).unwrap();
    assert_eq!(rows.len(), 121);
    assert!(rows.iter().all(|r| r.label_u == r.label_v));

    let svg = dir.path().join("b.svg");
    let o = run(&[
        "plot",
        csv.to_str().unwrap(),
        "--out",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(svg_cells(&text)[0].len(), 121);
    assert!(text.contains("#d9822b") || text.contains("#3b6fb6"));

    // two-input networks cannot be swept over the plane
    let wide = HyperbolicNetwork::init(&[2, 1], Activation::Identity, 0).unwrap();
    fs::write(&ckpt, Checkpoint::from_network(&wide).unwrap().to_json()).unwrap();
    assert_eq!(
        run(&["boundary", ckpt.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn help_and_unknown_subcommand() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&[]).status.code(), Some(2));
}
