//! Result files: `plan.json` plus three CSV series.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;

use uavsec::PlanResult64;

/// Nine significant digits.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.8e}")
}

pub fn write_plan_files(plan: &PlanResult64, dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let json = serde_json::to_string_pretty(plan).map_err(io::Error::other)?;
    fs::write(dir.join("plan.json"), json + "\n")?;

    let mut w = csv_writer(&dir.join("trace.csv"))?;
    w.write_record(["iteration", "penalized_objective", "lambda", "binarity_residual"])?;
    for e in &plan.trace {
        w.write_record([
            e.iteration.to_string(),
            fmt_float(e.penalized_objective),
            fmt_float(e.lambda),
            fmt_float(e.binarity_residual),
        ])?;
    }
    w.flush()?;

    let mut w = csv_writer(&dir.join("trajectory.csv"))?;
    w.write_record(["n", "x", "y"])?;
    for (n, p) in plan.trajectory.iter().enumerate() {
        w.write_record([(n + 1).to_string(), fmt_float(p.x), fmt_float(p.y)])?;
    }
    w.flush()?;

    let mut w = csv_writer(&dir.join("association.csv"))?;
    w.write_record(["n", "k", "e"])?;
    let (users, slots) = plan.association.matrix().shape();
    for n in 0..slots {
        for k in 0..users {
            w.write_record([(n + 1).to_string(), (k + 1).to_string(), fmt_float(plan.association[(k, n)])])?;
        }
    }
    w.flush()
}

pub fn csv_writer(path: &Path) -> io::Result<csv::Writer<BufWriter<File>>> {
    Ok(csv::Writer::from_writer(BufWriter::new(File::create(path)?)))
}

/// Writes to the file if given, otherwise to stdout.
pub fn sink(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_float(33.265217075), "3.32652171e1");
        assert_eq!(fmt_float(0.0), "0.00000000e0");
        assert_eq!(fmt_float(-1.5e-7), "-1.50000000e-7");
        assert_eq!("3.32652171e1".parse::<f64>().unwrap(), 33.2652171);
    }
}
