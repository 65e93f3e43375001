//! Front projections as column sequences.
//!
//! A front is read left to right as a list of events acting on a stack of
//! strands numbered from the top: a left cusp opens two strands at slots
//! `i, i + 1`, a right cusp closes them, a crossing swaps them. Crossings
//! carry no over/under bit: in a front the strand of smaller slope is in
//! front, which is the one descending left to right.
//!
//! Orientation is fixed by traversing from the upper strand of the first
//! left cusp, heading right.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

mod ops;
mod text;

pub use ops::{
    coherent_sites, connect_front, connect_front_at, connect_front_styled, default_site,
    kink_front, stabilize_front, twist_front, SpliceSite, SpliceStyle,
};
pub use text::{parse_front, plot_front, plot_front_svg, serialize_front};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid front: {}", .0.join("; "))]
    Invalid(Vec<String>),

    #[error("edge {edge} out of range, the front has {count} edges")]
    NoSuchEdge { edge: usize, count: usize },

    #[error("cannot splice at columns ({right}, {left}): {reason}")]
    BadSite {
        right: usize,
        left: usize,
        reason: String,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    LeftCusp(usize),
    RightCusp(usize),
    Crossing(usize),
}

impl Event {
    pub fn slot(self) -> usize {
        match self {
            Event::LeftCusp(i) | Event::RightCusp(i) | Event::Crossing(i) => i,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Event::LeftCusp(_) => 'b',
            Event::RightCusp(_) => 'd',
            Event::Crossing(_) => 'x',
        }
    }

    fn shifted(self, by: usize) -> Self {
        match self {
            Event::LeftCusp(i) => Event::LeftCusp(i + by),
            Event::RightCusp(i) => Event::RightCusp(i + by),
            Event::Crossing(i) => Event::Crossing(i + by),
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.letter(), self.slot())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FrontDiagram {
    events: Vec<Event>,
}

impl FrontDiagram {
    /// Wraps an event list without checking it; see [`validate_front`].
    pub fn new(events: Vec<Event>) -> Self {
        FrontDiagram { events }
    }

    /// The two-cusp unknot.
    pub fn unknot() -> Self {
        FrontDiagram::new(vec![Event::LeftCusp(0), Event::RightCusp(0)])
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrontInvariants {
    pub writhe: i64,
    pub right_cusps: usize,
    pub down_cusps: usize,
    pub up_cusps: usize,
    pub tb: i64,
    pub r: i64,
}

impl FrontInvariants {
    pub fn tbr(&self) -> crate::atlas::TbR {
        crate::atlas::TbR::new(self.tb, self.r)
    }
}

#[derive(Copy, Clone, Debug)]
pub(crate) enum Column {
    Left {
        upper: usize,
        lower: usize,
    },
    Right {
        upper: usize,
        lower: usize,
    },
    Cross {
        upper_in: usize,
        lower_in: usize,
        upper_out: usize,
        lower_out: usize,
    },
}

/// A strand segment between two columns.
#[derive(Copy, Clone, Debug)]
pub(crate) struct Segment {
    pub left: usize,
    pub right: Option<usize>,
    /// Slot just right of `left`.
    pub slot: usize,
}

/// Segments and columns of a front, with the problems met while building.
#[derive(Clone, Debug, Default)]
pub(crate) struct Skeleton {
    pub columns: Vec<Column>,
    pub segments: Vec<Segment>,
    pub problems: Vec<String>,
}

impl Skeleton {
    pub fn build(f: &FrontDiagram) -> Self {
        let mut sk = Skeleton::default();
        let mut slots: Vec<usize> = Vec::new();
        if f.events.is_empty() {
            sk.problems.push("no events".into());
        }
        for (c, &ev) in f.events.iter().enumerate() {
            let n = slots.len();
            let i = ev.slot();
            let fits = match ev {
                Event::LeftCusp(_) => i <= n,
                _ => i + 1 < n,
            };
            if !fits {
                sk.problems
                    .push(format!("column {c}: `{ev}` out of range with {n} strands"));
                // keep the column numbering aligned with the events
                sk.columns.push(Column::Left {
                    upper: usize::MAX,
                    lower: usize::MAX,
                });
                continue;
            }
            let open = |sk: &mut Skeleton, slot| {
                sk.segments.push(Segment {
                    left: c,
                    right: None,
                    slot,
                });
                sk.segments.len() - 1
            };
            match ev {
                Event::LeftCusp(_) => {
                    let upper = open(&mut sk, i);
                    let lower = open(&mut sk, i + 1);
                    slots.splice(i..i, [upper, lower]);
                    sk.columns.push(Column::Left { upper, lower });
                }
                Event::RightCusp(_) => {
                    let (upper, lower) = (slots[i], slots[i + 1]);
                    sk.segments[upper].right = Some(c);
                    sk.segments[lower].right = Some(c);
                    slots.drain(i..i + 2);
                    sk.columns.push(Column::Right { upper, lower });
                }
                Event::Crossing(_) => {
                    let (upper_in, lower_in) = (slots[i], slots[i + 1]);
                    sk.segments[upper_in].right = Some(c);
                    sk.segments[lower_in].right = Some(c);
                    let upper_out = open(&mut sk, i);
                    let lower_out = open(&mut sk, i + 1);
                    slots[i] = upper_out;
                    slots[i + 1] = lower_out;
                    sk.columns.push(Column::Cross {
                        upper_in,
                        lower_in,
                        upper_out,
                        lower_out,
                    });
                }
            }
            if slots.is_empty() && c + 1 < f.events.len() {
                sk.problems.push(format!(
                    "column {c}: every strand closed before the last column"
                ));
            }
        }
        if !slots.is_empty() {
            sk.problems.push(format!(
                "{} strands left open at the right end",
                slots.len()
            ));
        }
        sk
    }

    /// One step along the curve: the segment after `e` and its direction
    /// (`true` = rightward).
    fn step(&self, e: usize, rightward: bool) -> (usize, bool) {
        let seg = self.segments[e];
        if rightward {
            match self.columns[seg.right.expect("closed front")] {
                Column::Right { upper, lower } => (if e == upper { lower } else { upper }, false),
                Column::Cross {
                    upper_in,
                    lower_out,
                    upper_out,
                    ..
                } => (if e == upper_in { lower_out } else { upper_out }, true),
                Column::Left { .. } => unreachable!("segments end at right cusps or crossings"),
            }
        } else {
            match self.columns[seg.left] {
                Column::Left { upper, lower } => (if e == upper { lower } else { upper }, true),
                Column::Cross {
                    upper_in,
                    lower_in,
                    upper_out,
                    ..
                } => (if e == upper_out { lower_in } else { upper_in }, false),
                Column::Right { .. } => unreachable!("segments start at left cusps or crossings"),
            }
        }
    }

    /// Direction of every segment along the traversal from segment 0 and
    /// the number of components of the curve.
    pub fn orient(&self) -> (Vec<Option<bool>>, usize) {
        let mut dir = vec![None; self.segments.len()];
        let mut components = 0;
        for start in 0..self.segments.len() {
            if dir[start].is_some() {
                continue;
            }
            components += 1;
            let (mut e, mut d) = (start, true);
            while dir[e].is_none() {
                dir[e] = Some(d);
                (e, d) = self.step(e, d);
            }
        }
        (dir, components)
    }
}

/// Every violated structural condition; empty for a valid closed front.
pub fn validate_front(f: &FrontDiagram) -> Vec<String> {
    let sk = Skeleton::build(f);
    let mut problems = sk.problems.clone();
    if problems.is_empty() {
        let (_, components) = sk.orient();
        if components != 1 {
            problems.push(format!("curve has {components} components"));
        }
    }
    problems
}

pub(crate) fn checked(f: &FrontDiagram) -> Result<(Skeleton, Vec<bool>), FrontError> {
    let problems = validate_front(f);
    if !problems.is_empty() {
        return Err(FrontError::Invalid(problems));
    }
    let sk = Skeleton::build(f);
    let dir = sk
        .orient()
        .0
        .into_iter()
        .map(|d| d.expect("connected"))
        .collect();
    Ok((sk, dir))
}

/// Writhe, cusp tallies, `tb` and `r` of a valid front.
pub fn invariants(f: &FrontDiagram) -> Result<FrontInvariants, FrontError> {
    let (sk, dir) = checked(f)?;
    let (mut writhe, mut right_cusps, mut down, mut up) = (0i64, 0, 0, 0);
    for col in &sk.columns {
        match *col {
            Column::Cross {
                upper_in, lower_in, ..
            } => {
                writhe += if dir[upper_in] == dir[lower_in] {
                    1
                } else {
                    -1
                };
            }
            Column::Left { upper, .. } => {
                if dir[upper] {
                    up += 1;
                } else {
                    down += 1;
                }
            }
            Column::Right { upper, .. } => {
                right_cusps += 1;
                if dir[upper] {
                    down += 1;
                } else {
                    up += 1;
                }
            }
        }
    }
    Ok(FrontInvariants {
        writhe,
        right_cusps,
        down_cusps: down,
        up_cusps: up,
        tb: writhe - right_cusps as i64,
        r: (down as i64 - up as i64) / 2,
    })
}
