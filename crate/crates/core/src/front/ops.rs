use serde::Serialize;

use crate::atlas::Sign;

use super::{checked, Column, Event, FrontDiagram, FrontError};

/// Adds a zigzag on segment `edge` (segments are numbered in the order
/// their left ends appear, upper before lower). A positive stabilization
/// raises `r` by one, a negative one lowers it; `tb` drops by one.
pub fn stabilize_front(
    f: &FrontDiagram,
    sign: Sign,
    edge: usize,
) -> Result<FrontDiagram, FrontError> {
    let (sk, dir) = checked(f)?;
    let seg = *sk.segments.get(edge).ok_or(FrontError::NoSuchEdge {
        edge,
        count: sk.segments.len(),
    })?;
    let k = seg.slot;
    let z = [Event::LeftCusp(k + 1), Event::RightCusp(k)];
    let s = [Event::LeftCusp(k), Event::RightCusp(k + 1)];
    let zigzag = match (sign, dir[edge]) {
        (Sign::Plus, true) | (Sign::Minus, false) => z,
        (Sign::Plus, false) | (Sign::Minus, true) => s,
    };
    let mut events = f.events.clone();
    events.splice(seg.left + 1..seg.left + 1, zigzag);
    Ok(FrontDiagram::new(events))
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpliceStyle {
    /// The second front is drawn inside the first, at the removed cusp.
    #[default]
    Inline,
    /// The cusp's strands are carried over the rest of the first front and
    /// the second front is drawn after it.
    Sequential,
}

/// Where to join two fronts: the column of a right cusp of the first and of
/// a left cusp of the second.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpliceSite {
    pub right: usize,
    pub left: usize,
    pub style: SpliceStyle,
}

/// Pairs `(right cusp column of f1, left cusp column of f2)` at which the
/// orientations of the two fronts agree after splicing.
pub fn coherent_sites(
    f1: &FrontDiagram,
    f2: &FrontDiagram,
) -> Result<Vec<(usize, usize)>, FrontError> {
    let (sk1, dir1) = checked(f1)?;
    let (sk2, dir2) = checked(f2)?;
    let rights: Vec<(usize, bool)> = sk1
        .columns
        .iter()
        .enumerate()
        .filter_map(|(c, col)| match *col {
            Column::Right { upper, .. } => Some((c, dir1[upper])),
            _ => None,
        })
        .collect();
    let lefts: Vec<(usize, bool)> = sk2
        .columns
        .iter()
        .enumerate()
        .filter_map(|(c, col)| match *col {
            Column::Left { upper, .. } => Some((c, dir2[upper])),
            _ => None,
        })
        .collect();
    let mut out = Vec::new();
    for &(r, dr) in &rights {
        for &(l, dl) in &lefts {
            // both upper strands must run the same way
            if dr == dl {
                out.push((r, l));
            }
        }
    }
    Ok(out)
}

/// Adds a first-move kink (a crossing between a new left and right cusp)
/// on segment `edge`. The knot type and both invariants are unchanged;
/// on a rightward segment the new right cusp points down.
pub fn kink_front(f: &FrontDiagram, edge: usize) -> Result<FrontDiagram, FrontError> {
    let (sk, _) = checked(f)?;
    let seg = *sk.segments.get(edge).ok_or(FrontError::NoSuchEdge {
        edge,
        count: sk.segments.len(),
    })?;
    let k = seg.slot;
    let mut events = f.events.clone();
    events.splice(
        seg.left + 1..seg.left + 1,
        [
            Event::LeftCusp(k + 1),
            Event::Crossing(k),
            Event::RightCusp(k + 1),
        ],
    );
    Ok(FrontDiagram::new(events))
}

/// The last coherent right cusp of `f1` paired with the first left cusp of
/// `f2`, if there is one.
pub fn default_site(
    f1: &FrontDiagram,
    f2: &FrontDiagram,
) -> Result<Option<(usize, usize)>, FrontError> {
    Ok(coherent_sites(f1, f2)?
        .into_iter()
        .filter(|&(_, l)| l == 0)
        .max())
}

/// Connected sum at [`default_site`], drawn inline. When every right cusp
/// of `f1` points the wrong way, a kink is first added on its first
/// segment, which always runs rightward.
pub fn connect_front(f1: &FrontDiagram, f2: &FrontDiagram) -> Result<FrontDiagram, FrontError> {
    connect_front_styled(f1, f2, SpliceStyle::default())
}

pub fn connect_front_styled(
    f1: &FrontDiagram,
    f2: &FrontDiagram,
    style: SpliceStyle,
) -> Result<FrontDiagram, FrontError> {
    let mut f1 = f1.clone();
    let (right, left) = match default_site(&f1, f2)? {
        Some(site) => site,
        None => {
            f1 = kink_front(&f1, 0)?;
            default_site(&f1, f2)?.expect("a kink on a rightward segment adds a down cusp")
        }
    };
    connect_front_at(&f1, f2, SpliceSite { right, left, style })
}

fn shifted(events: &[Event], by: usize) -> impl Iterator<Item = Event> + '_ {
    events.iter().map(move |e| e.shifted(by))
}

/// Crossings carrying the strand pair at slots `from, from + 1` up to `0, 1`.
fn pair_up(from: usize) -> Vec<Event> {
    (0..from)
        .rev()
        .flat_map(|j| [Event::Crossing(j), Event::Crossing(j + 1)])
        .collect()
}

/// Crossings carrying the strand pair at `from, from + 1` down to `to, to + 1`.
fn pair_down(from: usize, to: usize) -> Vec<Event> {
    (from..to)
        .flat_map(|j| [Event::Crossing(j + 1), Event::Crossing(j)])
        .collect()
}

pub fn connect_front_at(
    f1: &FrontDiagram,
    f2: &FrontDiagram,
    site: SpliceSite,
) -> Result<FrontDiagram, FrontError> {
    let bad = |reason: &str| FrontError::BadSite {
        right: site.right,
        left: site.left,
        reason: reason.into(),
    };
    if !coherent_sites(f1, f2)?.contains(&(site.right, site.left)) {
        let kinds_ok = matches!(f1.events.get(site.right), Some(Event::RightCusp(_)))
            && matches!(f2.events.get(site.left), Some(Event::LeftCusp(_)));
        return Err(bad(if kinds_ok {
            "orientations disagree"
        } else {
            "not a right cusp of the first front and a left cusp of the second"
        }));
    }
    let (c1, c2) = (site.right, site.left);
    let i1 = f1.events[c1].slot();
    let i2 = f2.events[c2].slot();
    let mut events = f1.events[..c1].to_vec();
    match site.style {
        SpliceStyle::Inline => {
            events.extend(shifted(&f2.events[..c2], i1 + 2));
            events.extend(pair_down(i1, i1 + i2));
            events.extend(shifted(&f2.events[c2 + 1..], i1));
            events.extend_from_slice(&f1.events[c1 + 1..]);
        }
        SpliceStyle::Sequential => {
            events.extend(pair_up(i1));
            events.extend(shifted(&f1.events[c1 + 1..], 2));
            events.extend(shifted(&f2.events[..c2], 2));
            events.extend(pair_down(0, i2));
            events.extend_from_slice(&f2.events[c2 + 1..]);
        }
    }
    Ok(FrontDiagram::new(events))
}

/// A front of the `(-(2n+1), 2)` torus knot with `tb = -2(2n+1)`: a ladder
/// of `2n + 1` nested cusps closed off by one twisted band.
///
/// # Panics
/// If `n == 0`.
pub fn twist_front(n: usize) -> FrontDiagram {
    assert!(n >= 1, "twist_front needs n >= 1");
    let mut events = vec![Event::LeftCusp(0); 2 * n + 1];
    events.push(Event::Crossing(1));
    for _ in 0..2 * n - 1 {
        events.extend([Event::Crossing(3), Event::RightCusp(2)]);
    }
    events.extend([Event::Crossing(1), Event::RightCusp(0), Event::RightCusp(0)]);
    FrontDiagram::new(events)
}
