//! Dataset and boundary CSVs, JSON checkpoints, decision-boundary sampling.

use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Activation, Dataset, HyperbolicNetwork, NetworkError, Sample};
use crate::functions::sig17;
use crate::grid::Lattice;
use crate::number::HyperbolicNumber;

#[derive(Debug, Error)]
pub enum DataError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Network(#[from] NetworkError),
}

fn parse_err(line: usize, msg: impl Into<String>) -> DataError {
    DataError::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_fields(line_no: usize, line: &str, expected: usize) -> Result<Vec<f64>, DataError> {
    let vals: Vec<f64> = line
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| parse_err(line_no, format!("{t:?}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if vals.len() != expected {
        return Err(parse_err(
            line_no,
            format!("expected {expected} fields, got {}", vals.len()),
        ));
    }
    Ok(vals)
}

/// Reads `x1,y1,...,xn,yn,tu1,tv1,...,tum,tvm` (or `x,y,tu,tv`).
pub fn read_dataset_csv<R: BufRead>(reader: R) -> Result<Dataset, DataError> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header"))??;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    let n_in = cols
        .iter()
        .take_while(|c| c.starts_with('x') || c.starts_with('y'))
        .count();
    let n_out = cols.len() - n_in;
    let shape_ok = n_in >= 2
        && n_out >= 2
        && n_in % 2 == 0
        && n_out.is_multiple_of(2)
        && cols[..n_in]
            .chunks(2)
            .all(|p| p[0].starts_with('x') && p[1].starts_with('y'))
        && cols[n_in..]
            .chunks(2)
            .all(|p| p[0].starts_with("tu") && p[1].starts_with("tv"));
    if !shape_ok {
        return Err(parse_err(1, format!("unexpected header {header:?}")));
    }
    let to_pairs = |v: &[f64]| -> Vec<HyperbolicNumber> {
        v.chunks(2)
            .map(|c| HyperbolicNumber::raw(c[0], c[1]))
            .collect()
    };
    let mut samples = Vec::new();
    for (k, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let vals = parse_fields(k + 2, &line, cols.len())?;
        samples.push(Sample {
            input: to_pairs(&vals[..n_in]),
            target: to_pairs(&vals[n_in..]),
        });
    }
    Ok(Dataset::new(samples)?)
}

pub fn write_dataset_csv<W: Write>(data: &Dataset, mut w: W) -> io::Result<()> {
    let n = data.input_dim();
    let m = data.output_dim();
    let mut head: Vec<String> = Vec::new();
    if n == 1 {
        head.extend(["x".into(), "y".into()]);
    } else {
        for k in 1..=n {
            head.extend([format!("x{k}"), format!("y{k}")]);
        }
    }
    if m == 1 {
        head.extend(["tu".into(), "tv".into()]);
    } else {
        for k in 1..=m {
            head.extend([format!("tu{k}"), format!("tv{k}")]);
        }
    }
    writeln!(w, "{}", head.join(","))?;
    for s in data.samples() {
        let row: Vec<String> = s
            .input
            .iter()
            .chain(&s.target)
            .flat_map(|z| [format!("{}", z.x()), format!("{}", z.y())])
            .collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Serialized network: dims, activation name, init seed and the flat
/// parameter vector (layer by layer; weights row-major as `x, y` pairs, then
/// biases as `x, y` pairs).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub dims: Vec<usize>,
    pub activation: String,
    pub seed: u64,
    pub params: Vec<f64>,
}

impl Checkpoint {
    pub fn from_network(net: &HyperbolicNetwork) -> Result<Self, NetworkError> {
        let act = net.layers()[0].activation();
        if net.layers().iter().any(|l| l.activation() != act) {
            return Err(NetworkError::InvalidHyperparameter(
                "checkpoints hold a single activation for all layers".into(),
            ));
        }
        Ok(Self {
            dims: net.dims(),
            activation: act.name().to_string(),
            seed: net.seed(),
            params: net.params(),
        })
    }

    pub fn to_network(&self) -> Result<HyperbolicNetwork, NetworkError> {
        let act: Activation = self.activation.parse()?;
        HyperbolicNetwork::from_params(&self.dims, act, self.seed, &self.params)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DataError> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryRow {
    pub x: f64,
    pub y: f64,
    pub u: f64,
    pub v: f64,
    pub label_u: i8,
    pub label_v: i8,
}

fn sign_label(d: f64) -> i8 {
    if d > 0.0 {
        1
    } else if d < 0.0 {
        -1
    } else {
        0
    }
}

/// Evaluates a 1-in/1-out network on every lattice point `z = x + h·y` and
/// labels `sign(u - threshold)` and `sign(v - threshold)` separately.
pub fn decision_boundary(
    net: &HyperbolicNetwork,
    lattice: &Lattice,
    threshold: f64,
) -> Result<Vec<BoundaryRow>, NetworkError> {
    if net.output_dim() != 1 {
        return Err(NetworkError::DimensionMismatch {
            expected: 1,
            got: net.output_dim(),
        });
    }
    lattice
        .points()
        .map(|(_, _, x, y)| {
            let out = net.forward(&[HyperbolicNumber::raw(x, y)])?[0];
            Ok(BoundaryRow {
                x,
                y,
                u: out.x(),
                v: out.y(),
                label_u: sign_label(out.x() - threshold),
                label_v: sign_label(out.y() - threshold),
            })
        })
        .collect()
}

pub fn write_boundary_csv<W: Write>(rows: &[BoundaryRow], mut w: W) -> io::Result<()> {
    writeln!(w, "x,y,u,v,label_u,label_v")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            sig17(r.x),
            sig17(r.y),
            sig17(r.u),
            sig17(r.v),
            r.label_u,
            r.label_v
        )?;
    }
    Ok(())
}

pub fn read_boundary_csv<R: BufRead>(reader: R) -> Result<Vec<BoundaryRow>, DataError> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header"))??;
    if header.trim() != "x,y,u,v,label_u,label_v" {
        return Err(parse_err(1, format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v = parse_fields(k + 2, &line, 6)?;
        rows.push(BoundaryRow {
            x: v[0],
            y: v[1],
            u: v[2],
            v: v[3],
            label_u: v[4] as i8,
            label_v: v[5] as i8,
        });
    }
    Ok(rows)
}
