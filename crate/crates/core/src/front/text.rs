use std::fmt::Write as _;

use super::{validate_front, Event, FrontDiagram, FrontError};

/// Reads one event per line: `b <i>`, `d <i>` or `x <i>`. Blank lines and
/// text after `#` are ignored; letters are case-insensitive.
pub fn parse_front(text: &str) -> Result<FrontDiagram, FrontError> {
    let mut events = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: String| FrontError::Parse { line, msg };
        let mut words = body.split_whitespace();
        let kind = words.next().expect("non-empty line");
        let slot = words
            .next()
            .ok_or_else(|| err(format!("`{kind}` needs a slot index")))?;
        if let Some(extra) = words.next() {
            return Err(err(format!("unexpected `{extra}`")));
        }
        let i: usize = slot
            .parse()
            .map_err(|_| err(format!("bad slot index `{slot}`")))?;
        events.push(match kind.to_ascii_lowercase().as_str() {
            "b" => Event::LeftCusp(i),
            "d" => Event::RightCusp(i),
            "x" => Event::Crossing(i),
            _ => return Err(err(format!("unknown event `{kind}`, expected b, d or x"))),
        });
    }
    Ok(FrontDiagram::new(events))
}

pub fn serialize_front(f: &FrontDiagram) -> String {
    let mut s = String::new();
    for e in f.events() {
        let _ = writeln!(s, "{e}");
    }
    s
}

fn strand_counts(f: &FrontDiagram) -> Vec<usize> {
    let mut n = 0usize;
    let mut before = Vec::with_capacity(f.len());
    for e in f.events() {
        before.push(n);
        n = match e {
            Event::LeftCusp(_) => n + 2,
            Event::RightCusp(_) => n.saturating_sub(2),
            Event::Crossing(_) => n,
        };
    }
    before
}

fn require_valid(f: &FrontDiagram) -> Result<(), FrontError> {
    let problems = validate_front(f);
    if problems.is_empty() {
        Ok(())
    } else {
        Err(FrontError::Invalid(problems))
    }
}

/// Text drawing, two characters per column and one row per strand slot.
pub fn plot_front(f: &FrontDiagram) -> Result<String, FrontError> {
    require_valid(f)?;
    let before = strand_counts(f);
    let height = before.iter().map(|n| n + 2).max().unwrap_or(0);
    let mut rows = vec![String::new(); height];
    for (e, &nb) in f.events().iter().zip(&before) {
        let i = e.slot();
        let (top, bottom, rest) = match e {
            Event::LeftCusp(_) => (" /", " \\", nb + 2),
            Event::RightCusp(_) => ("\\ ", "/ ", nb),
            Event::Crossing(_) => ("\\/", "/\\", nb),
        };
        for (j, row) in rows.iter_mut().enumerate() {
            row.push_str(match j {
                _ if j == i => top,
                _ if j == i + 1 => bottom,
                _ if j < rest => "--",
                _ => "  ",
            });
        }
    }
    let mut out = String::new();
    for row in rows {
        let row = row.trim_end();
        if !row.is_empty() {
            out.push_str(row);
            out.push('\n');
        }
    }
    Ok(out)
}

/// SVG drawing: each column joins the strand heights on its two sides with
/// straight segments.
pub fn plot_front_svg(f: &FrontDiagram) -> Result<String, FrontError> {
    require_valid(f)?;
    const W: usize = 30;
    const H: usize = 20;
    let before = strand_counts(f);
    let height = before.iter().map(|n| n + 2).max().unwrap_or(0);
    let y = |slot: f64| 10.0 + slot * H as f64;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" stroke="black" fill="none">"#,
        f.len() * W + 20,
        height * H + 10
    );
    let mut line = |x0: usize, y0: f64, x1: usize, y1: f64| {
        let _ = writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}"/>"#);
    };
    for (c, (e, &nb)) in f.events().iter().zip(&before).enumerate() {
        let (x0, x1) = (10 + c * W, 10 + (c + 1) * W);
        let mid = (x0 + x1) / 2;
        let i = e.slot();
        let cusp = y(i as f64 + 0.5);
        match e {
            Event::LeftCusp(_) => {
                for j in 0..nb {
                    let k = if j < i { j } else { j + 2 };
                    line(x0, y(j as f64), x1, y(k as f64));
                }
                line(mid, cusp, x1, y(i as f64));
                line(mid, cusp, x1, y(i as f64 + 1.0));
            }
            Event::RightCusp(_) => {
                for j in (0..nb).filter(|&j| j != i && j != i + 1) {
                    let k = if j < i { j } else { j - 2 };
                    line(x0, y(j as f64), x1, y(k as f64));
                }
                line(x0, y(i as f64), mid, cusp);
                line(x0, y(i as f64 + 1.0), mid, cusp);
            }
            Event::Crossing(_) => {
                for j in 0..nb {
                    let k = match j {
                        _ if j == i => i + 1,
                        _ if j == i + 1 => i,
                        _ => j,
                    };
                    line(x0, y(j as f64), x1, y(k as f64));
                }
            }
        }
    }
    s.push_str("</svg>\n");
    Ok(s)
}
