//! Report emission. Every floating-point number is written with 17
//! significant digits (`{:.16e}`) in both JSON and CSV, which
//! round-trips doubles losslessly and keeps the two formats numerically
//! identical.

use std::io;

use serde::Serialize;

use crate::sweep::RunReport;

struct SigDigits;

impl serde_json::ser::Formatter for SigDigits {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes any value as JSON with 17-significant-digit floats.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigDigits);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization");
    out
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or(String::new(), |x| format!("{x:.16e}"))
}

/// Flat CSV view of the per-cell link verdicts: one row per link,
/// numerically identical to the JSON encoding.
pub fn to_csv_bytes(report: &RunReport) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "cell", "theorem", "dim", "upsilon", "alpha", "beta", "gamma", "delta", "function",
        "map", "reading", "trial", "link", "gap", "scale", "holds", "expected",
    ])
    .expect("in-memory CSV");
    for cell in &report.cells {
        let p = &cell.params;
        for (i, (link, &expected)) in cell.links.iter().zip(&cell.expected).enumerate() {
            w.write_record([
                cell.index.to_string(),
                cell.theorem_id.to_string(),
                p.dim.to_string(),
                fmt_opt(p.upsilon),
                fmt_opt(p.alpha),
                fmt_opt(p.beta),
                fmt_opt(p.gamma),
                fmt_opt(p.delta),
                p.function.clone().unwrap_or_default(),
                p.map.clone().unwrap_or_default(),
                p.reading.map_or(String::new(), |r| r.to_string()),
                p.trial.to_string(),
                i.to_string(),
                format!("{:.16e}", link.gap),
                format!("{:.16e}", link.scale),
                link.holds.to_string(),
                expected.to_string(),
            ])
            .expect("in-memory CSV");
        }
    }
    w.into_inner().expect("in-memory CSV")
}
