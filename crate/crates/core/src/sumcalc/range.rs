use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::atlas::TbR;
use crate::error::{Error, Result};

use super::{SumEngine, SumSpec};

/// A finite rectangle of `(tb, r)` points. Empty when either range is.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub tb_min: i64,
    pub tb_max: i64,
    pub r_min: i64,
    pub r_max: i64,
}

impl Window {
    pub fn new(tb_min: i64, tb_max: i64, r_min: i64, r_max: i64) -> Self {
        Window {
            tb_min,
            tb_max,
            r_min,
            r_max,
        }
    }

    /// The band `tb_min..=tb_max` with every rotation number the sum can
    /// realize there.
    pub fn band(spec: &SumSpec, tb_min: i64, tb_max: i64) -> Self {
        let (r_min, r_max) = spec.r_bounds(tb_min);
        Window::new(tb_min, tb_max, r_min, r_max)
    }

    pub fn is_empty(&self) -> bool {
        self.tb_min > self.tb_max || self.r_min > self.r_max
    }

    pub fn contains(&self, x: TbR) -> bool {
        (self.tb_min..=self.tb_max).contains(&x.tb) && (self.r_min..=self.r_max).contains(&x.r)
    }

    /// Row `tb` values, top row first.
    pub fn rows(&self) -> Vec<i64> {
        if self.is_empty() {
            return Vec::new();
        }
        (self.tb_min..=self.tb_max).rev().collect()
    }

    pub fn columns(&self) -> Vec<i64> {
        if self.is_empty() {
            return Vec::new();
        }
        (self.r_min..=self.r_max).collect()
    }

    /// Points in row-major order: `tb` descending, then `r` ascending.
    pub fn points(&self) -> impl Iterator<Item = TbR> + '_ {
        let cols = self.columns();
        self.rows()
            .into_iter()
            .flat_map(move |tb| cols.clone().into_iter().map(move |r| TbR::new(tb, r)))
    }
}

/// Class counts over a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MountainRange {
    pub window: Window,
    /// Dense rows, `tb` descending; columns `r` ascending.
    pub counts: Vec<Vec<usize>>,
}

impl MountainRange {
    pub fn get(&self, x: TbR) -> usize {
        if !self.window.contains(x) {
            return 0;
        }
        let row = (self.window.tb_max - x.tb) as usize;
        let col = (x.r - self.window.r_min) as usize;
        self.counts[row][col]
    }

    /// Points with a positive count, row-major.
    pub fn nonzero(&self) -> Vec<(TbR, usize)> {
        self.window
            .points()
            .map(|x| (x, self.get(x)))
            .filter(|&(_, c)| c > 0)
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("range serializes")
    }

    /// Text plot: one line per `tb`, `.` for zero, the count otherwise.
    pub fn to_ascii(&self) -> String {
        let mut s = String::new();
        let cols = self.window.columns();
        if cols.is_empty() {
            return s;
        }
        let _ = writeln!(
            s,
            "{:>6} r = {}..{}",
            "tb", self.window.r_min, self.window.r_max
        );
        for (tb, row) in self.window.rows().into_iter().zip(&self.counts) {
            let _ = write!(s, "{tb:>6} ");
            for &c in row {
                let _ = match c {
                    0 => write!(s, " ."),
                    1..=9 => write!(s, " {c}"),
                    _ => write!(s, " *"),
                };
            }
            s.push('\n');
        }
        s
    }

    pub fn to_svg(&self) -> String {
        const CELL: i64 = 18;
        let rows = self.window.rows();
        let cols = self.window.columns();
        let (w, h) = (cols.len() as i64 * CELL + 60, rows.len() as i64 * CELL + 40);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="monospace" font-size="9">"#
        );
        for (i, tb) in rows.iter().enumerate() {
            let y = 20 + i as i64 * CELL + CELL / 2;
            let _ = writeln!(s, r#"<text x="2" y="{}">{tb}</text>"#, y + 3);
            for (j, &r) in cols.iter().enumerate() {
                let x = 50 + j as i64 * CELL + CELL / 2;
                let c = self.get(TbR::new(*tb, r));
                if c > 0 {
                    let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="4" fill="black"/>"#);
                    if c > 1 {
                        let _ = writeln!(s, r#"<text x="{}" y="{}">{c}</text>"#, x + 5, y - 4);
                    }
                }
            }
        }
        for (j, r) in cols.iter().enumerate() {
            if r % 2 == 0 {
                let x = 50 + j as i64 * CELL + CELL / 2 - 4;
                let _ = writeln!(s, r#"<text x="{x}" y="12">{r}</text>"#);
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Class counts at every point of `window`.
pub fn mountain_range(spec: &SumSpec, window: Window) -> Result<MountainRange> {
    let mut engine = SumEngine::new(spec);
    let cols = window.columns();
    let counts = window
        .rows()
        .into_iter()
        .map(|tb| {
            cols.iter()
                .map(|&r| engine.count(TbR::new(tb, r)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MountainRange { window, counts })
}

/// [`mountain_range`] with rows computed on `jobs` worker threads.
pub fn mountain_range_par(spec: &SumSpec, window: Window, jobs: usize) -> Result<MountainRange> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?;
    let cols = window.columns();
    let counts = pool.install(|| {
        window
            .rows()
            .into_par_iter()
            .map(|tb| {
                let mut engine = SumEngine::new(spec);
                cols.iter()
                    .map(|&r| engine.count(TbR::new(tb, r)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(MountainRange { window, counts })
}
