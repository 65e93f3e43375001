//! Desk-scale reproductions built on [`crate::sumcalc`].

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::atlas::{torus_peak_rotations, PrimeAtlas, TbR};
use crate::error::{Error, Result};
use crate::sumcalc::{
    mountain_range, transversally_simple_check, DiagonalVerdict, DistinctMode, MountainRange,
    SumClassId, SumEngine, SumSpec, SumTuple, Window,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// The family of sums `L^k = L_{r_k} # L_{-r_k}` of maximal-`tb` torus
/// knots with `r_k = (4(n-k)-1)s + 1`, and whether they stay apart under
/// stabilization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleReport {
    pub n: u32,
    pub m: u32,
    pub s: i64,
    pub p: i64,
    pub q: i64,
    /// Maximal-`tb` points of the torus atlas.
    pub peaks: Vec<TbR>,
    /// The same rotation numbers written as two arithmetic progressions.
    pub listed_rotations: Vec<i64>,
    pub lists_agree: bool,
    /// `(r_k, -r_k)` for `k = 0..2n`.
    pub pairs: Vec<(i64, i64)>,
    pub sum_tbr: TbR,
    /// Classes of the sum at `sum_tbr`.
    pub classes_at_level: usize,
    /// Knots claimed by the statement, and classes the construction gives.
    pub promised: u32,
    pub constructed: usize,
    /// `distinctness[b][i][j]`: `L^i` and `L^j` stay apart through every
    /// stabilization multiset of size at most `b`.
    pub distinctness: Vec<Vec<Vec<bool>>>,
    pub verdict: Verdict,
}

impl ExampleReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "n = {}, m = {}, s = {}, (p, q) = ({}, {})",
            self.n, self.m, self.s, self.p, self.q
        );
        let rs: Vec<String> = self.peaks.iter().map(|x| x.r.to_string()).collect();
        let _ = writeln!(
            s,
            "peaks at tb = {}: r in {{{}}}",
            self.p * self.q,
            rs.join(", ")
        );
        let _ = writeln!(s, "listed rotations agree: {}", self.lists_agree);
        for (k, (a, b)) in self.pairs.iter().enumerate() {
            let _ = writeln!(s, "L^{k} = L_{a} # L_{b}");
        }
        let _ = writeln!(
            s,
            "{} classes at {}; {} knots promised, {} constructed",
            self.classes_at_level, self.sum_tbr, self.promised, self.constructed
        );
        for (b, matrix) in self.distinctness.iter().enumerate() {
            let apart = matrix
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, &d)| i == j || d));
            let _ = writeln!(s, "budget {b}: pairwise distinct = {apart}");
        }
        let _ = writeln!(s, "verdict: {:?}", self.verdict);
        s
    }
}

/// Rotation numbers `-(4n-3)s+1, ..., (4n-1)s+1` and
/// `-(4n-1)s-1, ..., (4n-3)s-1`, both in steps of `4s`.
pub fn listed_rotations(n: i64, s: i64) -> Vec<i64> {
    let up = (0..2 * n).map(|k| -(4 * n - 3) * s + 1 + 4 * s * k);
    let down = (0..2 * n).map(|k| -(4 * n - 1) * s - 1 + 4 * s * k);
    let all: BTreeSet<i64> = up.chain(down).collect();
    all.into_iter().collect()
}

pub fn build_examples(n: u32, m: u32) -> Result<ExampleReport> {
    if n == 0 {
        return Err(Error::InvalidSpec("n must be at least 1".into()));
    }
    let (ni, mi) = (i64::from(n), i64::from(m));
    // smallest even s above m + 1
    let s = (mi + 2) + (mi + 2) % 2;
    let p = -(4 * ni + 1) * s - 1;
    let q = 2 * s;
    let atlas = PrimeAtlas::torus(p, q)?;
    let peaks = atlas.peaks();
    let listed = listed_rotations(ni, s);
    let formula: Vec<i64> = torus_peak_rotations(p, q).into_iter().collect();

    let spec = SumSpec::new(vec![atlas.clone(), atlas])?;
    let sum_tbr = TbR::new(2 * p * q + 1, 0);
    let mut engine = SumEngine::new(&spec);
    let classes_at_level = engine.count(sum_tbr)?;

    let pairs: Vec<(i64, i64)> = (0..2 * ni)
        .map(|k| {
            let r = (4 * (ni - k) - 1) * s + 1;
            (r, -r)
        })
        .collect();
    let classes: Vec<SumClassId> = pairs
        .iter()
        .map(|&(a, b)| engine.class_of(&SumTuple::points(&[(p * q, a), (p * q, b)])))
        .collect::<Result<_>>()?;

    let k = classes.len();
    let mut distinctness = Vec::new();
    for budget in 0..=m {
        let mut matrix = vec![vec![false; k]; k];
        for i in 0..k {
            for j in i + 1..k {
                let d = engine.distinct_after_stabilizations(
                    &classes[i],
                    &classes[j],
                    budget,
                    DistinctMode::Multiset,
                )?;
                matrix[i][j] = d;
                matrix[j][i] = d;
            }
        }
        distinctness.push(matrix);
    }
    let all_apart = distinctness.iter().all(|mx| {
        mx.iter()
            .enumerate()
            .all(|(i, row)| row.iter().enumerate().all(|(j, &d)| i == j || d))
    });
    let lists_agree = listed == formula;
    Ok(ExampleReport {
        n,
        m,
        s,
        p,
        q,
        peaks,
        listed_rotations: listed,
        lists_agree,
        pairs,
        sum_tbr,
        classes_at_level,
        promised: n,
        constructed: k,
        distinctness,
        verdict: Verdict::from_bool(all_apart && lists_agree),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TbbarRow {
    pub summands: Vec<String>,
    pub expected: i64,
    /// Highest `tb` with a class in the swept window.
    pub observed: Option<i64>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TbbarReport {
    pub rows: Vec<TbbarRow>,
    pub verdict: Verdict,
}

/// For each sum, sweeps `tb` over `expected - margin ..= expected + margin`
/// (every realizable `r` at each level) and compares the highest occupied
/// level with the summands' maxima plus one per sum sign.
pub fn check_tbbar_additivity(specs: &[SumSpec], margin: i64) -> Result<TbbarReport> {
    let mut rows = Vec::new();
    for spec in specs {
        let expected = spec.max_tb_sum();
        let (r_min, r_max) = spec.r_bounds(expected - margin);
        let mut engine = SumEngine::new(spec);
        let mut observed = None;
        'sweep: for tb in (expected - margin..=expected + margin).rev() {
            for r in r_min..=r_max {
                if engine.count(TbR::new(tb, r))? > 0 {
                    observed = Some(tb);
                    break 'sweep;
                }
            }
        }
        rows.push(TbbarRow {
            summands: spec.names(),
            expected,
            observed,
            ok: observed == Some(expected),
        });
    }
    let verdict = Verdict::from_bool(rows.iter().all(|r| r.ok));
    Ok(TbbarReport { rows, verdict })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityReport {
    pub depth: u32,
    pub window: Window,
    pub diagonals: Vec<DiagonalVerdict>,
    pub verdict: Verdict,
}

/// Runs the diagonal merge check; passes when every diagonal merges within
/// `depth`. Requires every summand to be a simple atlas.
pub fn check_transverse_simplicity(
    spec: &SumSpec,
    window: Window,
    depth: u32,
) -> Result<SimplicityReport> {
    if let Some(a) = spec.summands().iter().find(|a| !a.is_simple()) {
        return Err(Error::InvalidSpec(format!(
            "atlas `{}` is not simple",
            a.name()
        )));
    }
    let diagonals = transversally_simple_check(spec, &window, depth)?;
    let verdict = Verdict::from_bool(diagonals.iter().all(|d| d.merge_depth.is_some()));
    Ok(SimplicityReport {
        depth,
        window,
        diagonals,
        verdict,
    })
}

/// Mountain range of one torus knot over `tb_min..=tb_max`.
pub fn figure_mountain(p: i64, q: i64, tb_min: i64, tb_max: i64) -> Result<MountainRange> {
    let spec = SumSpec::new(vec![PrimeAtlas::torus(p, q)?])?;
    mountain_range(&spec, Window::band(&spec, tb_min, tb_max))
}
