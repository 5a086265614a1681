use std::io::{self, Write};

use super::TraceResult;

pub const CSV_HEADER: &str = "t_re,t_im,x_re,x_im,y_re,y_im,G_re,G_im";

/// One row per sample, 17 significant digits; `NaN` where `G` is absent.
pub fn write_csv<W: Write>(tr: &TraceResult, mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for s in &tr.samples {
        let (g_re, g_im) = s.g.map_or((f64::NAN, f64::NAN), |g| (g.re, g.im));
        let row = [s.t.re, s.t.im, s.z.x.re, s.z.x.im, s.z.y.re, s.z.y.im, g_re, g_im]
            .iter()
            .map(|v| format!("{v:.16e}"))
            .collect::<Vec<_>>()
            .join(",");
        writeln!(out, "{row}")?;
    }
    Ok(())
}
