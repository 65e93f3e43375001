//! Shared fixtures and independent oracles for the integration suites.
//!
//! The oracle side works on bare `(tb, r)` points and peak lists and never
//! calls into the engine's move generation or quotient code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use legsum::front::{validate_front, Event, FrontDiagram};
use legsum::sumcalc::SumSpec;
use legsum::PrimeAtlas;
use rand::Rng;

pub mod jones;
pub mod props;

pub type Pt = (i64, i64);

/// Peak list of the negative torus knot, straight from the closed formula.
pub fn torus_peaks(p: i64, q: i64) -> Vec<Pt> {
    let (a, b) = (p.abs(), q.abs());
    let mut out = Vec::new();
    let mut k = 0;
    while k * b < a - b {
        let r = a - b - 2 * b * k;
        out.push((p * q, r));
        out.push((p * q, -r));
        k += 1;
    }
    out.sort();
    out.dedup();
    out
}

pub fn unknot_peaks() -> Vec<Pt> {
    vec![(-1, 0)]
}

/// The atlas grid used by several criteria, with its oracle peak lists.
pub fn grid() -> Vec<(PrimeAtlas, Vec<Pt>)> {
    let mut v = vec![(PrimeAtlas::unknot(), unknot_peaks())];
    for (p, q) in [(-3, 2), (-5, 2), (-7, 3), (-11, 4)] {
        v.push((PrimeAtlas::torus(p, q).unwrap(), torus_peaks(p, q)));
    }
    v
}

/// A sum of point-valued summands, described only by peak lists.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub peaks: Vec<Vec<Pt>>,
    pub cyclic: bool,
}

impl Oracle {
    pub fn new(peaks: Vec<Vec<Pt>>) -> Self {
        Oracle {
            peaks,
            cyclic: true,
        }
    }

    pub fn n(&self) -> usize {
        self.peaks.len()
    }

    pub fn realized(&self, i: usize, x: Pt) -> bool {
        self.peaks[i].iter().any(|&(tb, r)| {
            let d = tb - x.0;
            d >= 0 && (x.1 - r).abs() <= d && (d - (x.1 - r)).rem_euclid(2) == 0
        })
    }

    pub fn top(&self, i: usize) -> i64 {
        self.peaks[i].iter().map(|p| p.0).max().unwrap()
    }

    pub fn max_level(&self) -> i64 {
        (0..self.n()).map(|i| self.top(i)).sum::<i64>() + self.n() as i64 - 1
    }

    pub fn total(&self, t: &[Pt]) -> Pt {
        (
            t.iter().map(|p| p.0).sum::<i64>() + t.len() as i64 - 1,
            t.iter().map(|p| p.1).sum(),
        )
    }

    /// Every tuple of realized points summing to `x`.
    pub fn tuples(&self, x: Pt) -> Vec<Vec<Pt>> {
        let n = self.n();
        let target = x.0 - (n as i64 - 1);
        let tops: Vec<i64> = (0..n).map(|i| self.top(i)).collect();
        let sum_tops: i64 = tops.iter().sum();
        let mut out = Vec::new();
        let mut acc = Vec::new();
        self.fill(0, target, x.1, &tops, sum_tops, &mut acc, &mut out);
        out.sort();
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(
        &self,
        i: usize,
        tb_left: i64,
        r_left: i64,
        tops: &[i64],
        rest_tops: i64,
        acc: &mut Vec<Pt>,
        out: &mut Vec<Vec<Pt>>,
    ) {
        let n = self.n();
        if i == n {
            if tb_left == 0 && r_left == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let others = rest_tops - tops[i];
        let lo = tb_left - others;
        for tb in lo..=tops[i] {
            let depth = tops[i] - tb;
            let r_hi = self.peaks[i].iter().map(|p| p.1).max().unwrap() + depth;
            let r_lo = self.peaks[i].iter().map(|p| p.1).min().unwrap() - depth;
            for r in r_lo..=r_hi {
                if self.realized(i, (tb, r)) {
                    acc.push((tb, r));
                    self.fill(i + 1, tb_left - tb, r_left - r, tops, others, acc, out);
                    acc.pop();
                }
            }
        }
    }

    fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        match n {
            0 | 1 => vec![],
            2 => vec![(0, 1)],
            _ if self.cyclic => (0..n).map(|i| (i, (i + 1) % n)).collect(),
            _ => (0..n - 1).map(|i| (i, i + 1)).collect(),
        }
    }

    fn same(&self, i: usize, j: usize) -> bool {
        let (mut a, mut b) = (self.peaks[i].clone(), self.peaks[j].clone());
        a.sort();
        b.sort();
        a == b
    }

    pub fn neighbours(&self, t: &[Pt]) -> Vec<Vec<Pt>> {
        let mut out = Vec::new();
        for (a, b) in self.pairs() {
            for (i, j) in [(a, b), (b, a)] {
                for e in [1i64, -1] {
                    // t[i] = S_e(y) for a realized y
                    let y = (t[i].0 + 1, t[i].1 - e);
                    if self.realized(i, y) {
                        let mut u = t.to_vec();
                        u[i] = y;
                        u[j] = (t[j].0 - 1, t[j].1 + e);
                        out.push(u);
                    }
                }
            }
        }
        let n = self.n();
        for i in 0..n {
            for j in i + 1..n {
                if self.same(i, j) {
                    let mut u = t.to_vec();
                    u.swap(i, j);
                    out.push(u);
                }
            }
        }
        out
    }

    pub fn closure(&self, t: &[Pt]) -> BTreeSet<Vec<Pt>> {
        let mut seen = BTreeSet::from([t.to_vec()]);
        let mut queue = VecDeque::from([t.to_vec()]);
        while let Some(u) = queue.pop_front() {
            for v in self.neighbours(&u) {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Components at one level, each as a sorted set, ordered by least member.
    pub fn components(&self, x: Pt) -> Vec<BTreeSet<Vec<Pt>>> {
        let mut left: BTreeSet<Vec<Pt>> = self.tuples(x).into_iter().collect();
        let mut out = Vec::new();
        while let Some(t) = left.iter().next().cloned() {
            let c = self.closure(&t);
            for u in &c {
                left.remove(u);
            }
            out.push(c);
        }
        out
    }

    /// Peak tuples at the top level with rotation sum `r`, each reduced to
    /// the least image under swaps of equal summands.
    pub fn top_orbits(&self, r: i64) -> BTreeSet<Vec<Pt>> {
        let n = self.n();
        let mut out = BTreeSet::new();
        let mut idx = vec![0usize; n];
        loop {
            let t: Vec<Pt> = (0..n).map(|i| self.peaks[i][idx[i]]).collect();
            if t.iter().map(|p| p.1).sum::<i64>() == r {
                out.insert(self.least_image(&t));
            }
            let mut k = 0;
            loop {
                if k == n {
                    return out;
                }
                idx[k] += 1;
                if idx[k] < self.peaks[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    fn least_image(&self, t: &[Pt]) -> Vec<Pt> {
        // sort entries within each class of equal summands, keeping positions
        let n = self.n();
        let mut groups: BTreeMap<Vec<Pt>, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let mut key = self.peaks[i].clone();
            key.sort();
            groups.entry(key).or_default().push(i);
        }
        let mut u = t.to_vec();
        for idx in groups.values() {
            let mut vals: Vec<Pt> = idx.iter().map(|&i| t[i]).collect();
            vals.sort();
            for (&i, v) in idx.iter().zip(vals) {
                u[i] = v;
            }
        }
        u
    }
}

pub fn spec_of(atlases: &[&PrimeAtlas]) -> SumSpec {
    SumSpec::new(atlases.iter().map(|a| (*a).clone()).collect()).unwrap()
}

pub fn points_of(t: &legsum::SumTuple) -> Vec<Pt> {
    t.entries().iter().map(|c| (c.tbr.tb, c.tbr.r)).collect()
}

/// A random connected closed front with roughly `len` columns.
pub fn random_front<R: Rng>(rng: &mut R, len: usize) -> FrontDiagram {
    loop {
        let mut events = vec![Event::LeftCusp(0)];
        let mut n = 2usize;
        while n > 0 && events.len() < 4 * len {
            let closing = events.len() >= len;
            let roll = rng.gen_range(0..10);
            let ev = if !closing && (roll < 3 || n == 2 && roll < 6) {
                Event::LeftCusp(rng.gen_range(0..=n))
            } else if roll < 7 || (n == 2 && !closing) {
                Event::Crossing(rng.gen_range(0..n - 1))
            } else {
                Event::RightCusp(rng.gen_range(0..n - 1))
            };
            if matches!(ev, Event::RightCusp(_)) && n == 2 && !closing {
                continue;
            }
            n = match ev {
                Event::LeftCusp(_) => n + 2,
                Event::RightCusp(_) => n - 2,
                Event::Crossing(_) => n,
            };
            events.push(ev);
        }
        let f = FrontDiagram::new(events);
        if n == 0 && validate_front(&f).is_empty() {
            return f;
        }
    }
}
