use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::atlas::{Sign, TbR};
use crate::error::{Error, Result};

use super::{SumClassId, SumEngine, SumSpec, SumTuple, Window};

/// How [`SumEngine::distinct_after_stabilizations`] enumerates stabilization
/// words.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistinctMode {
    /// One word per count pair `(a, b)`: `a` positive then `b` negative.
    #[default]
    Multiset,
    /// Every sign sequence, in every order.
    FullSequence,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SimplicityVerdict {
    StablySimpleWithinDepth,
    NotMergedAtDepth,
}

/// Outcome on one diagonal `s = tb - r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalVerdict {
    pub s: i64,
    /// Points of the diagonal inside the window carrying a class.
    pub points: usize,
    /// Largest number of classes at one of those points.
    pub classes: usize,
    /// Negative stabilizations needed to merge every point's classes, when
    /// within the budget.
    pub merge_depth: Option<u32>,
    /// Classes left at the worst point after the whole budget.
    pub unmerged: usize,
    pub verdict: SimplicityVerdict,
}

/// Widest peak rotation spread among the summands, plus 4.
pub fn default_depth(spec: &SumSpec) -> u32 {
    let spread = spec
        .summands()
        .iter()
        .map(|a| {
            let (lo, hi) = a.r_span();
            hi - lo
        })
        .max()
        .unwrap_or(0);
    spread as u32 + 4
}

impl SumEngine<'_> {
    fn push_all(&mut self, set: &BTreeSet<SumTuple>, sign: Sign) -> Result<BTreeSet<SumTuple>> {
        let mut out = BTreeSet::new();
        for t in set {
            let c = self.class_of(t)?;
            out.insert(self.stabilize_class(&c, sign)?.canonical);
        }
        Ok(out)
    }

    /// True when no stabilization word of length at most `m` makes `c1` and
    /// `c2` equal.
    pub fn distinct_after_stabilizations(
        &mut self,
        c1: &SumClassId,
        c2: &SumClassId,
        m: u32,
        mode: DistinctMode,
    ) -> Result<bool> {
        if c1.tbr() != c2.tbr() {
            return Err(Error::InvalidSpec(format!(
                "classes at different points {} and {}",
                c1.tbr(),
                c2.tbr()
            )));
        }
        if c1.canonical == c2.canonical {
            return Ok(false);
        }
        match mode {
            DistinctMode::Multiset => {
                // walk a positive stabilizations, then branch off negatives
                let (mut p1, mut p2) = (c1.clone(), c2.clone());
                for a in 0..=m {
                    let (mut n1, mut n2) = (p1.clone(), p2.clone());
                    for b in 0..=(m - a) {
                        if n1.canonical == n2.canonical {
                            return Ok(false);
                        }
                        if b < m - a {
                            n1 = self.stabilize_class(&n1, Sign::Minus)?;
                            n2 = self.stabilize_class(&n2, Sign::Minus)?;
                        }
                    }
                    if a < m {
                        p1 = self.stabilize_class(&p1, Sign::Plus)?;
                        p2 = self.stabilize_class(&p2, Sign::Plus)?;
                    }
                }
                Ok(true)
            }
            DistinctMode::FullSequence => {
                let mut frontier = vec![(c1.clone(), c2.clone())];
                for step in 0..=m {
                    if frontier.iter().any(|(a, b)| a.canonical == b.canonical) {
                        return Ok(false);
                    }
                    if step == m {
                        break;
                    }
                    let mut next = BTreeSet::new();
                    for (a, b) in &frontier {
                        for sign in Sign::BOTH {
                            next.insert((
                                self.stabilize_class(a, sign)?,
                                self.stabilize_class(b, sign)?,
                            ));
                        }
                    }
                    frontier = next.into_iter().collect();
                }
                Ok(true)
            }
        }
    }

    /// Checks one diagonal. At each of its points in the window, all classes
    /// there are pushed down by negative stabilization until they coincide
    /// or the budget runs out.
    pub fn diagonal_verdict(
        &mut self,
        s: i64,
        window: &Window,
        depth: u32,
    ) -> Result<Option<DiagonalVerdict>> {
        let mut points = 0;
        let mut classes = 0;
        let mut worst_depth = Some(0);
        let mut unmerged = 0;
        for tb in window.rows() {
            let x = TbR::new(tb, tb - s);
            if !window.contains(x) {
                continue;
            }
            let here: BTreeSet<SumTuple> =
                self.classify(x)?.into_iter().map(|c| c.canonical).collect();
            if here.is_empty() {
                continue;
            }
            points += 1;
            classes = classes.max(here.len());
            let mut cur = here;
            let mut k = 0;
            while cur.len() > 1 && k < depth {
                cur = self.push_all(&cur, Sign::Minus)?;
                k += 1;
            }
            unmerged = unmerged.max(cur.len());
            worst_depth = match worst_depth {
                Some(d) if cur.len() == 1 => Some(u32::max(d, k)),
                _ => None,
            };
        }
        if points == 0 {
            return Ok(None);
        }
        let verdict = if worst_depth.is_some() {
            SimplicityVerdict::StablySimpleWithinDepth
        } else {
            SimplicityVerdict::NotMergedAtDepth
        };
        Ok(Some(DiagonalVerdict {
            s,
            points,
            classes,
            merge_depth: worst_depth,
            unmerged,
            verdict,
        }))
    }

    /// Verdicts for every diagonal with a class in `window`, by ascending `s`.
    pub fn transversally_simple_check(
        &mut self,
        window: &Window,
        depth: u32,
    ) -> Result<Vec<DiagonalVerdict>> {
        let mut out = Vec::new();
        for s in diagonals(window) {
            if let Some(v) = self.diagonal_verdict(s, window, depth)? {
                out.push(v);
            }
        }
        Ok(out)
    }
}

fn diagonals(window: &Window) -> std::ops::RangeInclusive<i64> {
    if window.is_empty() {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    (window.tb_min - window.r_max)..=(window.tb_max - window.r_min)
}

pub fn distinct_after_stabilizations(
    spec: &SumSpec,
    c1: &SumClassId,
    c2: &SumClassId,
    m: u32,
    mode: DistinctMode,
) -> Result<bool> {
    SumEngine::new(spec).distinct_after_stabilizations(c1, c2, m, mode)
}

/// Like [`SumEngine::transversally_simple_check`], diagonals in parallel.
/// Negative stabilization keeps a class on its diagonal, so each diagonal
/// gets its own engine.
pub fn transversally_simple_check(
    spec: &SumSpec,
    window: &Window,
    depth: u32,
) -> Result<Vec<DiagonalVerdict>> {
    let found: Vec<Option<DiagonalVerdict>> = diagonals(window)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|s| SumEngine::new(spec).diagonal_verdict(s, window, depth))
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}
