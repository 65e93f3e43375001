//! Legendrian classes of a connected sum as a quotient of tuples of prime
//! classes.
//!
//! A tuple `(L_1, ..., L_n)` with one class per summand maps to the class of
//! `L_1 # ... # L_n`. Two tuples give the same sum exactly when they are
//! joined by a chain of
//!
//! * shift moves: a stabilization migrates between adjacent summands,
//!   `(.., S(L_i), L_j, ..) ~ (.., L_i, S(L_j), ..)`, and
//! * permutation moves: summands of equal knot type are exchanged.
//!
//! Every move preserves the tuple's total `(tb, r)` (see [`sum_tbr`]), so the
//! quotient splits into finite levels, one per point, each handled by a
//! [`LevelQuotient`].

use std::fmt;

use serde::Serialize;

use crate::atlas::{ClassRef, PrimeAtlas, TbR};
use crate::error::{Error, Result};

mod moves;
mod quotient;
mod range;
mod stable;

pub use moves::{perm_moves, shift_moves};
pub use quotient::{
    canonical, classify, closure, count, equivalent, equivalent_by_closure, LevelQuotient,
    SumClassId, SumEngine,
};
pub use range::{mountain_range, mountain_range_par, MountainRange, Window};
pub use stable::{
    default_depth, distinct_after_stabilizations, transversally_simple_check, DiagonalVerdict,
    DistinctMode, SimplicityVerdict,
};

/// Invariants of a connected sum: `tb` adds with a `+1` per sum sign, `r` adds.
///
/// # Panics
/// If `parts` is empty.
pub fn sum_tbr(parts: &[TbR]) -> TbR {
    assert!(!parts.is_empty(), "sum of zero knots");
    let n = parts.len() as i64;
    TbR::new(
        parts.iter().map(|p| p.tb).sum::<i64>() + n - 1,
        parts.iter().map(|p| p.r).sum(),
    )
}

/// Which summand pairs a shift move may connect.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Adjacency {
    /// `i` and `i + 1 mod n`: the summands are strung together in a cycle.
    #[default]
    Cyclic,
    /// `i` and `i + 1` for `i < n - 1` only.
    Linear,
}

impl std::str::FromStr for Adjacency {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(Adjacency::Cyclic),
            "linear" => Ok(Adjacency::Linear),
            _ => Err(Error::InvalidSpec(format!("unknown adjacency `{s}`"))),
        }
    }
}

/// One class per summand.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SumTuple(pub Vec<ClassRef>);

impl SumTuple {
    /// Tuple of point classes, for simple atlases.
    pub fn points(pts: &[(i64, i64)]) -> Self {
        SumTuple(
            pts.iter()
                .map(|&(tb, r)| ClassRef::point(TbR::new(tb, r)))
                .collect(),
        )
    }

    pub fn entries(&self) -> &[ClassRef] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn tbr(&self) -> TbR {
        sum_tbr(&self.0.iter().map(|c| c.tbr).collect::<Vec<_>>())
    }
}

impl fmt::Display for SumTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// An ordered list of prime summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumSpec {
    summands: Vec<PrimeAtlas>,
    adjacency: Adjacency,
    // indices grouped by equal atlas, each group ascending
    groups: Vec<Vec<usize>>,
}

impl SumSpec {
    pub fn new(summands: Vec<PrimeAtlas>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::InvalidSpec(
                "a sum needs at least one summand".into(),
            ));
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (i, a) in summands.iter().enumerate() {
            match groups.iter_mut().find(|g| summands[g[0]] == *a) {
                Some(g) => g.push(i),
                None => groups.push(vec![i]),
            }
        }
        Ok(SumSpec {
            summands,
            adjacency: Adjacency::default(),
            groups,
        })
    }

    pub fn with_adjacency(mut self, adjacency: Adjacency) -> Self {
        self.adjacency = adjacency;
        self
    }

    pub fn adjacency(&self) -> Adjacency {
        self.adjacency
    }

    pub fn summands(&self) -> &[PrimeAtlas] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.summands.iter().map(|a| a.name().to_string()).collect()
    }

    /// Indices grouped by equal atlas.
    pub fn symmetry_groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Every index permutation `σ` with `atlas(σ(i)) == atlas(i)`, identity
    /// included. A permutation acts on tuples by `t'[i] = t[σ(i)]`.
    pub fn symmetry(&self) -> Vec<Vec<usize>> {
        use itertools::Itertools;
        let per_group: Vec<Vec<Vec<usize>>> = self
            .groups
            .iter()
            .map(|g| g.iter().copied().permutations(g.len()).collect())
            .collect();
        per_group
            .into_iter()
            .multi_cartesian_product()
            .map(|choice| {
                let mut sigma: Vec<usize> = (0..self.len()).collect();
                for (g, image) in self.groups.iter().zip(choice) {
                    for (&i, j) in g.iter().zip(image) {
                        sigma[i] = j;
                    }
                }
                sigma
            })
            .collect()
    }

    /// Unordered index pairs joined by shift moves.
    pub fn adjacent_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        match (self.adjacency, n) {
            (_, 0 | 1) => Vec::new(),
            (Adjacency::Cyclic, 2) | (Adjacency::Linear, _) => {
                (0..n - 1).map(|i| (i, i + 1)).collect()
            }
            (Adjacency::Cyclic, _) => (0..n).map(|i| (i, (i + 1) % n)).collect(),
        }
    }

    /// Maximal `tb` of the sum: the summands' maxima plus one per sum sign.
    pub fn max_tb_sum(&self) -> i64 {
        self.summands.iter().map(PrimeAtlas::max_tb).sum::<i64>() + self.len() as i64 - 1
    }

    /// Range of `tb` the `i`-th entry can take in a tuple summing to level `tb`.
    pub fn entry_band(&self, i: usize, tb: i64) -> (i64, i64) {
        let others: i64 = self
            .summands
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, a)| a.max_tb())
            .sum();
        (
            tb - (self.len() as i64 - 1) - others,
            self.summands[i].max_tb(),
        )
    }

    /// Bounds on the rotation number of any realized point at level `tb`.
    /// Empty (`lo > hi`) above the maximal level.
    pub fn r_bounds(&self, tb: i64) -> (i64, i64) {
        let depth = self.max_tb_sum() - tb;
        if depth < 0 {
            return (1, 0);
        }
        let (lo, hi) = self
            .summands
            .iter()
            .map(PrimeAtlas::r_span)
            .fold((0, 0), |(a, b), (l, h)| (a + l, b + h));
        (lo - depth, hi + depth)
    }

    pub fn tuple_tbr(&self, t: &SumTuple) -> Result<TbR> {
        self.check_tuple(t)?;
        Ok(t.tbr())
    }

    /// Fails unless every entry is a realized class of its summand.
    pub fn check_tuple(&self, t: &SumTuple) -> Result<()> {
        if t.len() != self.len() {
            return Err(Error::InvalidSpec(format!(
                "tuple has {} entries, sum has {} summands",
                t.len(),
                self.len()
            )));
        }
        for (c, a) in t.0.iter().zip(&self.summands) {
            if !a.contains(c) {
                return Err(Error::NotRealized(c.to_string(), a.name().to_string()));
            }
        }
        Ok(())
    }

    /// The same summands in reverse order.
    pub fn reversed(&self) -> SumSpec {
        let mut s = SumSpec::new(self.summands.iter().rev().cloned().collect()).expect("non-empty");
        s.adjacency = self.adjacency;
        s
    }

    /// This sum with one more summand appended.
    pub fn with_summand(&self, atlas: PrimeAtlas) -> SumSpec {
        let mut v = self.summands.clone();
        v.push(atlas);
        let mut s = SumSpec::new(v).expect("non-empty");
        s.adjacency = self.adjacency;
        s
    }

    /// Parity of `tb + r` shared by every realized point of the sum, when
    /// every summand has uniform parity.
    pub fn parity(&self) -> Option<i64> {
        let mut total = self.len() as i64 - 1;
        for a in &self.summands {
            let ps: std::collections::BTreeSet<i64> =
                a.peaks().iter().map(|p| p.parity()).collect();
            if ps.len() != 1 {
                return None;
            }
            total += ps.into_iter().next().unwrap();
        }
        Some(total.rem_euclid(2))
    }

    /// JSON rendering of a tuple: `[[tb, r], ...]`, with a third element
    /// naming the node for presented classes.
    pub fn tuple_json(&self, t: &SumTuple) -> serde_json::Value {
        serde_json::Value::Array(
            t.0.iter()
                .zip(&self.summands)
                .map(|(c, a)| {
                    let mut v = vec![c.tbr.tb.into(), c.tbr.r.into()];
                    if let Some(id) = c.node.and_then(|n| a.node_id(n)) {
                        v.push(id.into());
                    }
                    serde_json::Value::Array(v)
                })
                .collect(),
        )
    }
}
