#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hyperlib"));
    c.env_remove("HYPERLIB_SEED");
    c
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn hyperlib")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

/// One `(x, y, value)` per `data-value` rect, per panel, in document order.
pub fn svg_cells(svg: &str) -> Vec<Vec<(f64, f64, f64)>> {
    let mut panels = Vec::new();
    for chunk in svg.split("<g id=\"panel-").skip(1) {
        let cells = chunk
            .lines()
            .filter(|l| l.contains("data-value="))
            .map(|l| (attr(l, "data-x"), attr(l, "data-y"), attr(l, "data-value")))
            .collect();
        panels.push(cells);
    }
    panels
}

fn attr(line: &str, name: &str) -> f64 {
    let key = format!("{name}=\"");
    let start = line.find(&key).expect("attribute") + key.len();
    let end = start + line[start..].find('"').expect("closing quote");
    line[start..end].parse().expect("numeric attribute")
}
