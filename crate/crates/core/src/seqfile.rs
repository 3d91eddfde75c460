//! Plain-text sequence files.
//!
//! ```text
//! # kind=quadratic d=1 box=-2..3
//! # budget=1 mode=hull tag=shock tau=250
//! 1,1,1,1
//! 2,1,1,1
//! ```
//!
//! Quadratic records are `t,a,b_1,...,b_d,c`. Piecewise sequences use
//! `# kind=piecewise d=1 box=0..1` with records `t,side,delta` where `side`
//! is `+1` or `-1`. The second comment line is optional; without it the
//! declared budget is the measured hull variation.

use std::fmt::Write as _;
use std::io::{BufRead, Write};

use crate::cost::{
    variation, CostInstance, CostKind, FunctionSequence, PiecewiseConvexCost, QuadraticCost, Side,
    VariationMode, DEFAULT_GRID_PER_DIM,
};
use crate::error::{Error, Result};
use crate::space::ActionBox;

pub fn write_sequence<W: Write>(seq: &FunctionSequence, mut out: W) -> Result<()> {
    let kind = match seq.costs()[0].kind() {
        CostKind::Quadratic(_) => "quadratic",
        CostKind::Piecewise(_) => "piecewise",
    };
    writeln!(out, "# kind={kind} d={} box={}", seq.action_box().dim(), seq.action_box())?;
    writeln!(
        out,
        "# budget={} mode={} tag={}",
        seq.declared_budget,
        seq.budget_mode.as_str(),
        seq.generator_tag
    )?;
    let mut line = String::new();
    for (i, cost) in seq.costs().iter().enumerate() {
        line.clear();
        match cost.kind() {
            CostKind::Quadratic(q) => {
                write!(line, "{},{}", i + 1, q.a).unwrap();
                for b in &q.b {
                    write!(line, ",{b}").unwrap();
                }
                write!(line, ",{}", q.c).unwrap();
            }
            CostKind::Piecewise(p) => {
                let s = match p.side {
                    Side::Right => "+1",
                    Side::Left => "-1",
                };
                write!(line, "{},{s},{}", i + 1, p.delta).unwrap();
            }
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn header_fields(line: &str) -> impl Iterator<Item = (&str, &str)> {
    line.trim_start_matches('#')
        .split_whitespace()
        .filter_map(|kv| kv.split_once('='))
}

pub fn read_sequence<R: BufRead>(input: R) -> Result<FunctionSequence> {
    let perr = |line: usize, msg: String| Error::Parse { line, msg };
    let mut lines = input.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| perr(1, "empty sequence file".into()))?;
    let header = header?;
    if !header.starts_with('#') {
        return Err(perr(1, "missing `# kind=... d=... box=...` header".into()));
    }
    let mut kind = None;
    let mut dim = None;
    let mut bx = None;
    for (k, v) in header_fields(&header) {
        match k {
            "kind" => kind = Some(v.to_string()),
            "d" => dim = Some(v.parse::<usize>().map_err(|_| perr(1, format!("bad d `{v}`")))?),
            "box" => bx = Some(v.parse::<ActionBox>().map_err(|e| perr(1, e.to_string()))?),
            _ => {}
        }
    }
    let kind = kind.ok_or_else(|| perr(1, "header lacks kind=".into()))?;
    let bx = bx.ok_or_else(|| perr(1, "header lacks box=".into()))?;
    let d = dim.unwrap_or(bx.dim());
    if d != bx.dim() {
        return Err(perr(1, format!("d={d} disagrees with box dimension {}", bx.dim())));
    }

    let mut budget = None;
    let mut mode = VariationMode::Hull;
    let mut tag = String::from("file");
    let mut costs = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            for (k, v) in header_fields(line) {
                match k {
                    "budget" => {
                        budget = Some(v.parse::<f64>().map_err(|_| perr(lineno, format!("bad budget `{v}`")))?)
                    }
                    "mode" => mode = v.parse().map_err(|e: Error| perr(lineno, e.to_string()))?,
                    "tag" => tag = v.to_string(),
                    _ => {}
                }
            }
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let num = |s: &str| s.parse::<f64>().map_err(|_| perr(lineno, format!("bad number `{s}`")));
        let t: usize = fields[0].parse().map_err(|_| perr(lineno, format!("bad epoch `{}`", fields[0])))?;
        if t != costs.len() + 1 {
            return Err(perr(lineno, format!("expected epoch {}, found {t}", costs.len() + 1)));
        }
        let cost_kind = match kind.as_str() {
            "quadratic" => {
                if fields.len() != d + 3 {
                    return Err(perr(lineno, format!("expected {} fields, found {}", d + 3, fields.len())));
                }
                let a = num(fields[1])?;
                let b = fields[2..2 + d].iter().map(|s| num(s)).collect::<Result<Vec<_>>>()?;
                let c = num(fields[d + 2])?;
                CostKind::Quadratic(QuadraticCost::new(a, b, c).map_err(|e| perr(lineno, e.to_string()))?)
            }
            "piecewise" => {
                if fields.len() != 3 {
                    return Err(perr(lineno, format!("expected 3 fields, found {}", fields.len())));
                }
                let side = match fields[1] {
                    "+1" | "1" => Side::Right,
                    "-1" => Side::Left,
                    s => return Err(perr(lineno, format!("bad side `{s}`"))),
                };
                let delta = num(fields[2])?;
                CostKind::Piecewise(PiecewiseConvexCost::new(delta, side).map_err(|e| perr(lineno, e.to_string()))?)
            }
            other => return Err(perr(1, format!("unknown kind `{other}`"))),
        };
        costs.push(CostInstance::new(cost_kind, &bx).map_err(|e| perr(lineno, e.to_string()))?);
    }
    let mut seq = FunctionSequence::new(bx, costs, 0.0, mode, tag)?;
    seq.declared_budget = match budget {
        Some(b) => b,
        None => variation(&seq, mode, DEFAULT_GRID_PER_DIM)?,
    };
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_quadratic() {
        let bx = ActionBox::new(vec![-2.0, 0.0], vec![3.0, 1.0]).unwrap();
        let costs = (0..5)
            .map(|i| {
                let q = QuadraticCost::new(1.0, vec![0.1 * i as f64, 1.0 / 3.0], 1.0).unwrap();
                CostInstance::quadratic(q, &bx).unwrap()
            })
            .collect();
        let seq = FunctionSequence::with_measured_budget(bx, costs, VariationMode::Hull, "t").unwrap();
        let mut buf = Vec::new();
        write_sequence(&seq, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# kind=quadratic d=2 box=-2..3x0..1\n"));
        assert_eq!(read_sequence(&buf[..]).unwrap(), seq);
    }

    #[test]
    fn missing_budget_line_uses_hull_variation() {
        let text = "# kind=quadratic d=1 box=-2..3\n1,1,1,1\n2,1,0,1\n";
        let seq = read_sequence(text.as_bytes()).unwrap();
        assert_eq!(seq.horizon(), 2);
        assert_eq!(seq.declared_budget, 1.0);
    }

    #[test]
    fn piecewise_round_trip() {
        let bx = ActionBox::interval(0.0, 1.0).unwrap();
        let costs = [Side::Right, Side::Left]
            .iter()
            .map(|&s| CostInstance::piecewise(PiecewiseConvexCost::new(0.0175, s).unwrap(), &bx).unwrap())
            .collect();
        let seq = FunctionSequence::new(bx, costs, 1.0, VariationMode::Full, "adv").unwrap();
        let mut buf = Vec::new();
        write_sequence(&seq, &mut buf).unwrap();
        assert_eq!(read_sequence(&buf[..]).unwrap(), seq);
    }

    #[test]
    fn malformed_files() {
        assert!(read_sequence("".as_bytes()).is_err());
        assert!(read_sequence("1,1,1,1\n".as_bytes()).is_err());
        let skip = "# kind=quadratic d=1 box=0..1\n2,1,1,1\n";
        assert!(matches!(read_sequence(skip.as_bytes()), Err(Error::Parse { line: 2, .. })));
        let short = "# kind=quadratic d=1 box=0..1\n1,1,1\n";
        assert!(read_sequence(short.as_bytes()).is_err());
        let neg = "# kind=quadratic d=1 box=0..1\n1,-1,1,1\n";
        assert!(read_sequence(neg.as_bytes()).is_err());
    }
}
