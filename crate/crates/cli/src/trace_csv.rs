//! Trace CSV: header `t,action,v_1..v_N,status_1..status_N`, one row per
//! recorded time step. Health cells are exact decimals when terminating
//! and "p/q" otherwise, so they parse back to the same rationals.

use crate::CliError;
use recov_core::{render_rational, Scenario, Trace};
use std::io::Write;

pub fn write_trace(out: &mut dyn Write, scenario: &Scenario, trace: &Trace) -> std::io::Result<()> {
    write!(out, "t,action")?;
    for id in 1..=scenario.len() {
        write!(out, ",v_{id}")?;
    }
    for id in 1..=scenario.len() {
        write!(out, ",status_{id}")?;
    }
    writeln!(out)?;
    for row in &trace.rows {
        write!(out, "{}", row.t)?;
        match row.action {
            Some(a) => write!(out, ",{}", a.target)?,
            None => write!(out, ",")?,
        }
        for h in &row.healths {
            write!(out, ",{}", render_rational(h.as_ratio()))?;
        }
        for st in &row.statuses {
            write!(out, ",{st}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn save_trace(path: &std::path::Path, scenario: &Scenario, trace: &Trace) -> Result<(), CliError> {
    let mut buf = Vec::new();
    write_trace(&mut buf, scenario, trace)?;
    std::fs::write(path, buf)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use recov_core::{fixtures, parse_rational, simulate_policy, PolicyKind};

    #[test]
    fn cells_round_trip_to_exact_rationals() {
        let s = fixtures::scenario(&[("1/3", "1", "0.25", "1/6"), ("0.9", "1", "0.5", "0.2")]);
        let trace = simulate_policy(&s, &PolicyKind::HealthiestFirst, 20).unwrap();
        let mut buf = Vec::new();
        write_trace(&mut buf, &s, &trace).unwrap();
        let text = String::from_utf8(buf).unwrap();
        for (line, row) in text.lines().skip(1).zip(trace.rows.iter()) {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells.len(), 2 + 2 * s.len());
            for (cell, h) in cells[2..2 + s.len()].iter().zip(row.healths.iter()) {
                assert_eq!(&parse_rational(cell).unwrap(), h.as_ratio());
            }
        }
    }
}
