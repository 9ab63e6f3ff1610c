//! `l*(A)` sampled over the full area range, as CSV.

use std::io::Write;

use fence_core::{l_star, regime, Rect};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow {
    pub area: f64,
    pub lstar: f64,
    pub regime: fence_core::Regime,
}

/// `samples` evenly spaced areas on `[0, XY]`, both ends included, plus
/// the two regime thresholds `X²/π` and `XY - X²/π`, sorted by area.
pub fn sample(rect: &Rect, samples: usize) -> fence_core::Result<Vec<CurveRow>> {
    if samples < 2 {
        return Err(fence_core::FenceError::Domain(
            "curve needs at least 2 samples".into(),
        ));
    }
    let total = rect.area();
    let last = (samples - 1) as f64;
    let mut areas: Vec<f64> = (0..samples)
        .map(|i| {
            if i + 1 == samples {
                total
            } else {
                total * i as f64 / last
            }
        })
        .collect();
    for t in [rect.arc_limit(), total - rect.arc_limit()] {
        if !areas.contains(&t) {
            areas.push(t);
        }
    }
    areas.sort_by(f64::total_cmp);
    areas
        .into_iter()
        .map(|area| {
            Ok(CurveRow {
                area,
                lstar: l_star(rect, area)?,
                regime: regime(rect, area)?,
            })
        })
        .collect()
}

pub fn write_csv<W: Write>(rows: &[CurveRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["area", "lstar", "regime"])?;
    for r in rows {
        w.write_record([
            r.area.to_string(),
            r.lstar.to_string(),
            r.regime.name().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
