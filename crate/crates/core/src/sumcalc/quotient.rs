use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::atlas::{ClassRef, Sign, TbR};
use crate::dsu::DisjointSet;
use crate::error::{Error, Result};

use super::{perm_moves, shift_moves, SumSpec, SumTuple};

/// One class of the quotient: its lexicographically least tuple and the
/// number of tuples in it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SumClassId {
    pub canonical: SumTuple,
    pub size: usize,
}

impl SumClassId {
    pub fn tbr(&self) -> TbR {
        self.canonical.tbr()
    }
}

#[derive(Serialize)]
struct ClassJson {
    canonical: serde_json::Value,
    size: usize,
}

impl SumClassId {
    pub fn to_json(&self, spec: &SumSpec) -> serde_json::Value {
        serde_json::to_value(ClassJson {
            canonical: spec.tuple_json(&self.canonical),
            size: self.size,
        })
        .expect("class serializes")
    }
}

/// All tuples summing to one point, partitioned into classes.
#[derive(Clone, Debug)]
pub struct LevelQuotient {
    x: TbR,
    // sorted ascending
    tuples: Vec<SumTuple>,
    class_index: Vec<usize>,
    classes: Vec<SumClassId>,
}

impl LevelQuotient {
    pub fn build(spec: &SumSpec, x: TbR) -> Result<Self> {
        let tuples = enumerate(spec, x)?;
        let mut dsu = DisjointSet::new(tuples.len());
        let index_of = |t: &SumTuple| {
            tuples
                .binary_search(t)
                .expect("moves stay inside their level")
        };
        for (i, t) in tuples.iter().enumerate() {
            for u in shift_moves(spec, t)?.into_iter().chain(perm_moves(spec, t)) {
                dsu.union(i, index_of(&u));
            }
        }
        // tuples are sorted, so the first member met is the canonical one
        let mut root_class = HashMap::new();
        let mut classes: Vec<SumClassId> = Vec::new();
        let mut class_index = Vec::with_capacity(tuples.len());
        for (i, t) in tuples.iter().enumerate() {
            let root = dsu.find(i);
            let c = *root_class.entry(root).or_insert_with(|| {
                classes.push(SumClassId {
                    canonical: t.clone(),
                    size: 0,
                });
                classes.len() - 1
            });
            classes[c].size += 1;
            class_index.push(c);
        }
        Ok(LevelQuotient {
            x,
            tuples,
            class_index,
            classes,
        })
    }

    pub fn point(&self) -> TbR {
        self.x
    }

    /// Classes sorted by canonical tuple.
    pub fn classes(&self) -> &[SumClassId] {
        &self.classes
    }

    pub fn tuples(&self) -> &[SumTuple] {
        &self.tuples
    }

    /// Position in [`LevelQuotient::classes`] of the class containing `t`.
    pub fn class_index(&self, t: &SumTuple) -> Option<usize> {
        self.tuples
            .binary_search(t)
            .ok()
            .map(|i| self.class_index[i])
    }

    pub fn class_of(&self, t: &SumTuple) -> Option<&SumClassId> {
        self.class_index(t).map(|c| &self.classes[c])
    }

    /// Members of class `c`, ascending.
    pub fn members(&self, c: usize) -> impl Iterator<Item = &SumTuple> + '_ {
        self.tuples
            .iter()
            .zip(&self.class_index)
            .filter(move |(_, &k)| k == c)
            .map(|(t, _)| t)
    }
}

/// Every valid tuple with total invariants `x`, sorted.
fn enumerate(spec: &SumSpec, x: TbR) -> Result<Vec<SumTuple>> {
    let n = spec.len();
    let target_tb = x.tb - (n as i64 - 1);
    let atlases = spec.summands();
    let maxes: Vec<i64> = atlases.iter().map(|a| a.max_tb()).collect();
    if target_tb > maxes.iter().sum::<i64>() {
        return Ok(Vec::new());
    }
    let mut candidates = Vec::with_capacity(n);
    let mut lows = Vec::with_capacity(n);
    for (i, a) in atlases.iter().enumerate() {
        let (lo, hi) = spec.entry_band(i, x.tb);
        candidates.push(a.classes_in_band(lo, hi)?);
        lows.push(lo);
    }
    // suffix sums of the per-entry tb bounds for pruning
    let mut max_rest = vec![0; n + 1];
    let mut min_rest = vec![0; n + 1];
    for i in (0..n).rev() {
        max_rest[i] = max_rest[i + 1] + maxes[i];
        min_rest[i] = min_rest[i + 1] + lows[i];
    }

    let mut out = Vec::new();
    let mut acc: Vec<ClassRef> = Vec::with_capacity(n);
    fn rec(
        i: usize,
        tb_left: i64,
        r_left: i64,
        acc: &mut Vec<ClassRef>,
        ctx: &(&[Vec<ClassRef>], &[i64], &[i64]),
        out: &mut Vec<SumTuple>,
    ) {
        let (candidates, max_rest, min_rest) = *ctx;
        let n = candidates.len();
        if i == n - 1 {
            let want = TbR::new(tb_left, r_left);
            let list = &candidates[i];
            let start = list.partition_point(|c| c.tbr < want);
            for c in list[start..].iter().take_while(|c| c.tbr == want) {
                acc.push(*c);
                out.push(SumTuple(acc.clone()));
                acc.pop();
            }
            return;
        }
        for c in &candidates[i] {
            let rest = tb_left - c.tbr.tb;
            if rest > max_rest[i + 1] || rest < min_rest[i + 1] {
                continue;
            }
            acc.push(*c);
            rec(i + 1, rest, r_left - c.tbr.r, acc, ctx, out);
            acc.pop();
        }
    }
    rec(
        0,
        target_tb,
        x.r,
        &mut acc,
        &(&candidates, &max_rest, &min_rest),
        &mut out,
    );
    out.sort();
    Ok(out)
}

/// Memoizing front end over [`LevelQuotient`]s of one sum.
pub struct SumEngine<'a> {
    spec: &'a SumSpec,
    levels: HashMap<TbR, LevelQuotient>,
}

impl<'a> SumEngine<'a> {
    pub fn new(spec: &'a SumSpec) -> Self {
        SumEngine {
            spec,
            levels: HashMap::new(),
        }
    }

    pub fn spec(&self) -> &'a SumSpec {
        self.spec
    }

    pub fn level(&mut self, x: TbR) -> Result<&LevelQuotient> {
        if !self.levels.contains_key(&x) {
            let q = LevelQuotient::build(self.spec, x)?;
            self.levels.insert(x, q);
        }
        Ok(&self.levels[&x])
    }

    pub fn classify(&mut self, x: TbR) -> Result<Vec<SumClassId>> {
        Ok(self.level(x)?.classes().to_vec())
    }

    pub fn count(&mut self, x: TbR) -> Result<usize> {
        Ok(self.level(x)?.classes().len())
    }

    pub fn class_of(&mut self, t: &SumTuple) -> Result<SumClassId> {
        let x = self.spec.tuple_tbr(t)?;
        Ok(self
            .level(x)?
            .class_of(t)
            .expect("valid tuples are enumerated at their level")
            .clone())
    }

    pub fn canonical(&mut self, t: &SumTuple) -> Result<SumTuple> {
        Ok(self.class_of(t)?.canonical)
    }

    pub fn equivalent(&mut self, a: &SumTuple, b: &SumTuple) -> Result<bool> {
        if self.spec.tuple_tbr(a)? != self.spec.tuple_tbr(b)? {
            return Ok(false);
        }
        Ok(self.canonical(a)? == self.canonical(b)?)
    }

    /// Class of the sum stabilized once; the stabilization is applied to
    /// entry `index` of the canonical tuple.
    pub fn stabilize_class_at(
        &mut self,
        c: &SumClassId,
        sign: Sign,
        index: usize,
    ) -> Result<SumClassId> {
        let atlases = self.spec.summands();
        if index >= atlases.len() {
            return Err(Error::InvalidSpec(format!("no summand {index}")));
        }
        let mut t = c.canonical.clone();
        t.0[index] = atlases[index].stabilize(&t.0[index], sign)?;
        self.class_of(&t)
    }

    /// Class of the stabilized sum, stabilizing the last summand.
    pub fn stabilize_class(&mut self, c: &SumClassId, sign: Sign) -> Result<SumClassId> {
        self.stabilize_class_at(c, sign, self.spec.len() - 1)
    }
}

pub fn classify(spec: &SumSpec, x: TbR) -> Result<Vec<SumClassId>> {
    SumEngine::new(spec).classify(x)
}

pub fn count(spec: &SumSpec, x: TbR) -> Result<usize> {
    SumEngine::new(spec).count(x)
}

pub fn canonical(spec: &SumSpec, t: &SumTuple) -> Result<SumTuple> {
    SumEngine::new(spec).canonical(t)
}

pub fn equivalent(spec: &SumSpec, a: &SumTuple, b: &SumTuple) -> Result<bool> {
    SumEngine::new(spec).equivalent(a, b)
}

/// Breadth-first closure of `t` under shift and permutation moves.
pub fn closure(spec: &SumSpec, t: &SumTuple) -> Result<BTreeSet<SumTuple>> {
    spec.check_tuple(t)?;
    let mut seen = BTreeSet::from([t.clone()]);
    let mut queue = VecDeque::from([t.clone()]);
    while let Some(u) = queue.pop_front() {
        for v in shift_moves(spec, &u)?
            .into_iter()
            .chain(perm_moves(spec, &u))
        {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    Ok(seen)
}

/// Equivalence decided by searching the closure of `a` directly.
pub fn equivalent_by_closure(spec: &SumSpec, a: &SumTuple, b: &SumTuple) -> Result<bool> {
    if spec.tuple_tbr(a)? != spec.tuple_tbr(b)? {
        return Ok(false);
    }
    Ok(closure(spec, a)?.contains(b))
}
