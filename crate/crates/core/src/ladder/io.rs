//! Ladder table files.
//!
//! The first line is `# ` followed by a JSON header; the rest is CSV with
//! columns `t,phi,phi_lo,phi_prime,step_error`. Values are written with 17
//! significant digits so a round trip is lossless.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{LadderOrder, LadderTable, Node};
use crate::error::{Error, Result};
use crate::zeta::EvalAccuracy;

const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Header {
    format_version: u32,
    order: u8,
    derivative_def: String,
    t_min: f64,
    t_max: f64,
    anchor_t: f64,
    anchor_phi: f64,
    tolerance: f64,
    accuracy: EvalAccuracy,
    nodes: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    t: f64,
    phi: f64,
    phi_lo: f64,
    phi_prime: f64,
    step_error: f64,
}

impl LadderTable {
    pub fn write_to<W: Write>(&self, out: W) -> Result<()> {
        let mut out = BufWriter::new(out);
        let (t_min, t_max) = self.t_range();
        let header = Header {
            format_version: FORMAT_VERSION,
            order: self.order.as_number(),
            derivative_def: self.derivative_def().to_string(),
            t_min,
            t_max,
            anchor_t: self.anchor.0,
            anchor_phi: self.anchor.1,
            tolerance: self.tolerance,
            accuracy: self.accuracy,
            nodes: self.nodes.len(),
        };
        writeln!(out, "# {}", serde_json::to_string(&header)?)?;
        writeln!(out, "t,phi,phi_lo,phi_prime,step_error")?;
        for n in &self.nodes {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
                n.t, n.phi, n.phi_lo, n.dphi, n.step_error
            )?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_to(File::create(path)?)
    }

    pub fn read_from<R: Read>(input: R) -> Result<LadderTable> {
        let mut input = BufReader::new(input);
        let mut first = String::new();
        input.read_line(&mut first)?;
        let json = first
            .trim_end()
            .strip_prefix("# ")
            .ok_or_else(|| Error::Format("ladder file must start with a '# {json}' header line".into()))?;
        let header: Header = serde_json::from_str(json)?;
        if header.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!(
                "unsupported ladder format version {}",
                header.format_version
            )));
        }
        let order = LadderOrder::from_number(header.order)?;
        if header.derivative_def != order.derivative_def() {
            return Err(Error::Format(format!(
                "derivative definition '{}' does not match order {}",
                header.derivative_def, header.order
            )));
        }
        let mut nodes = Vec::with_capacity(header.nodes);
        for row in csv::Reader::from_reader(input).deserialize() {
            let r: Row = row?;
            nodes.push(Node {
                t: r.t,
                phi: r.phi,
                phi_lo: r.phi_lo,
                dphi: r.phi_prime,
                step_error: r.step_error,
            });
        }
        if nodes.len() != header.nodes || nodes.len() < 2 {
            return Err(Error::Format(format!(
                "header announces {} nodes, file holds {}",
                header.nodes,
                nodes.len()
            )));
        }
        for w in nodes.windows(2) {
            if !(w[1].t > w[0].t && w[1].phi >= w[0].phi) {
                return Err(Error::Format(format!("nodes not increasing at t = {}", w[1].t)));
            }
        }
        if nodes[0].t != header.anchor_t || nodes[0].phi != header.anchor_phi {
            return Err(Error::Format("first node does not match the anchor".into()));
        }
        Ok(LadderTable::from_parts(order, nodes, header.tolerance, header.accuracy))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<LadderTable> {
        Self::read_from(File::open(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::super::build_ladder;
    use super::*;

    #[test]
    fn round_trip_is_lossless() {
        let l = build_ladder(LadderOrder::Second, 200.0, 230.0, 1e-12).unwrap();
        let mut buf = Vec::new();
        l.write_to(&mut buf).unwrap();
        let back = LadderTable::read_from(buf.as_slice()).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn rejects_missing_header_and_truncation() {
        assert!(matches!(
            LadderTable::read_from("t,phi,phi_lo,phi_prime,step_error\n1,2,0,3,0\n".as_bytes()),
            Err(Error::Format(_))
        ));
        let l = build_ladder(LadderOrder::First, 200.0, 210.0, 1e-12).unwrap();
        let mut buf = Vec::new();
        l.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let truncated: String = text.lines().take(5).map(|s| format!("{s}\n")).collect();
        assert!(LadderTable::read_from(truncated.as_bytes()).is_err());
    }
}
