//! Prime knot types as atlases of Legendrian isotopy classes.
//!
//! A [`PrimeAtlas`] describes the Legendrian classes of one prime knot type.
//! Two shapes are supported:
//!
//! * [`AtlasKind::Simple`]: the knot type is Legendrian simple, so a class is
//!   a `(tb, r)` point. The realized points are the union of the downward
//!   stabilization cones of a finite list of peaks.
//! * [`AtlasKind::Presented`]: an explicit graph of classes joined by `S+` and
//!   `S-` edges down to a cutoff level. Below the cutoff the atlas may declare
//!   itself simple, in which case classes there are synthesized from the
//!   cutoff-level nodes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Classical invariants of a Legendrian knot: Thurston-Bennequin number and
/// rotation number.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TbR {
    pub tb: i64,
    pub r: i64,
}

impl TbR {
    pub const fn new(tb: i64, r: i64) -> Self {
        TbR { tb, r }
    }

    pub fn stabilized(self, sign: Sign) -> Self {
        TbR::new(self.tb - 1, self.r + sign.delta())
    }

    /// The point `y` with `y.stabilized(sign) == self`.
    pub fn destabilized(self, sign: Sign) -> Self {
        TbR::new(self.tb + 1, self.r - sign.delta())
    }

    /// Self-linking number `tb - r` of the transverse push-off.
    pub fn self_linking(self) -> i64 {
        self.tb - self.r
    }

    /// `tb + r` modulo 2, normalized to `{0, 1}`.
    pub fn parity(self) -> i64 {
        (self.tb + self.r).rem_euclid(2)
    }

    /// True iff `other` is obtained from `self` by some number (possibly
    /// zero) of stabilizations of either sign.
    pub fn cone_contains(self, other: TbR) -> bool {
        let depth = self.tb - other.tb;
        let shift = other.r - self.r;
        depth >= 0 && shift.abs() <= depth && (depth - shift) % 2 == 0
    }
}

impl fmt::Display for TbR {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tb, self.r)
    }
}

/// Sign of a stabilization.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    /// Change of the rotation number under this stabilization.
    pub fn delta(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn slot(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::InvalidSpec(format!("unknown sign `{s}`"))),
        }
    }
}

/// One Legendrian isotopy class inside an atlas.
///
/// For simple atlases (and below the cutoff of presented ones) the class is
/// identified by its invariants alone and `node` is `None`. Ordering is by
/// `(tb, r)` first, then by node index.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassRef {
    pub tbr: TbR,
    pub node: Option<u32>,
}

impl ClassRef {
    pub const fn point(tbr: TbR) -> Self {
        ClassRef { tbr, node: None }
    }
}

impl fmt::Display for ClassRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.node {
            None => write!(f, "{}", self.tbr),
            Some(n) => write!(f, "{}#{}", self.tbr, n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    pub tbr: TbR,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: u32,
    pub to: u32,
    pub sign: Sign,
}

/// Explicit stabilization graph of a (possibly non-simple) knot type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub cutoff: i64,
    pub simple_below: bool,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    // derived adjacency, indexed by node
    out: Vec<[Option<u32>; 2]>,
    incoming: Vec<Vec<(Sign, u32)>>,
}

impl Presentation {
    fn cutoff_nodes(&self) -> impl Iterator<Item = (u32, &Node)> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter(move |(_, n)| n.tbr.tb == self.cutoff)
            .map(|(i, n)| (i as u32, n))
    }

    fn below_realized(&self, x: TbR) -> bool {
        x.tb < self.cutoff && self.cutoff_nodes().any(|(_, n)| n.tbr.cone_contains(x))
    }

    fn require_simple_below(&self, what: &str) -> Result<()> {
        if self.simple_below {
            Ok(())
        } else {
            Err(Error::AtlasIncomplete(format!(
                "{what} lies below cutoff {} and the atlas is not declared simple there",
                self.cutoff
            )))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtlasKind {
    Simple { peaks: Vec<TbR> },
    Presented(Presentation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeAtlas {
    name: String,
    kind: AtlasKind,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Rotation numbers of the maximal-tb representatives of the negative torus
/// knot `(p, q)`: `±(|p| - |q| - 2qk)` for `0 <= k < (|p| - |q|) / |q|`.
pub fn torus_peak_rotations(p: i64, q: i64) -> BTreeSet<i64> {
    let base = p.abs() - q.abs();
    let mut out = BTreeSet::new();
    let mut k = 0;
    while k * q.abs() < base {
        let r = base - 2 * q * k;
        out.insert(r);
        out.insert(-r);
        k += 1;
    }
    out
}

impl PrimeAtlas {
    /// Simple atlas from an explicit peak list. Peaks are sorted by `r`;
    /// use [`PrimeAtlas::validate`] to check the remaining invariants.
    pub fn simple(name: impl Into<String>, mut peaks: Vec<TbR>) -> Result<Self> {
        let name = name.into();
        if peaks.is_empty() {
            return Err(Error::InvalidSpec(format!("atlas `{name}` has no peaks")));
        }
        peaks.sort_by_key(|p| (p.r, p.tb));
        Ok(PrimeAtlas {
            name,
            kind: AtlasKind::Simple { peaks },
        })
    }

    /// Atlas of the negative torus knot `(p, q)` with `p < 0` and `-p > q > 1`.
    pub fn torus(p: i64, q: i64) -> Result<Self> {
        if !(p < 0 && q > 1 && -p > q) {
            return Err(Error::UnsupportedRange(format!(
                "torus atlas needs p < 0 and -p > q > 1, got ({p}, {q})"
            )));
        }
        if gcd(p, q) != 1 {
            return Err(Error::NotCoprime { p, q });
        }
        let peaks = torus_peak_rotations(p, q)
            .into_iter()
            .map(|r| TbR::new(p * q, r))
            .collect();
        PrimeAtlas::simple(format!("T({p},{q})"), peaks)
    }

    /// The Legendrian unknot: a single peak at `(-1, 0)`.
    pub fn unknot() -> Self {
        PrimeAtlas {
            name: "unknot".into(),
            kind: AtlasKind::Simple {
                peaks: vec![TbR::new(-1, 0)],
            },
        }
    }

    /// Presented atlas from node and edge lists. Fails only on structural
    /// problems (empty node list, duplicate or dangling ids).
    pub fn presented(
        name: impl Into<String>,
        cutoff: i64,
        simple_below: bool,
        nodes: Vec<(String, TbR)>,
        edges: Vec<(String, String, Sign)>,
    ) -> Result<Self> {
        let name = name.into();
        if nodes.is_empty() {
            return Err(Error::InvalidSpec(format!("atlas `{name}` has no nodes")));
        }
        let mut index = HashMap::new();
        for (i, (id, _)) in nodes.iter().enumerate() {
            if index.insert(id.clone(), i as u32).is_some() {
                return Err(Error::InvalidSpec(format!(
                    "atlas `{name}`: duplicate node id `{id}`"
                )));
            }
        }
        let lookup = |id: &str| {
            index.get(id).copied().ok_or_else(|| {
                Error::InvalidSpec(format!(
                    "atlas `{name}`: edge references unknown node `{id}`"
                ))
            })
        };
        let edges = edges
            .iter()
            .map(|(from, to, sign)| {
                Ok(Edge {
                    from: lookup(from)?,
                    to: lookup(to)?,
                    sign: *sign,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = vec![[None; 2]; nodes.len()];
        let mut incoming = vec![Vec::new(); nodes.len()];
        for e in &edges {
            out[e.from as usize][e.sign.slot()].get_or_insert(e.to);
            incoming[e.to as usize].push((e.sign, e.from));
        }
        for list in &mut incoming {
            list.sort();
        }
        let nodes = nodes
            .into_iter()
            .map(|(id, tbr)| Node { id, tbr })
            .collect();
        Ok(PrimeAtlas {
            name,
            kind: AtlasKind::Presented(Presentation {
                cutoff,
                simple_below,
                nodes,
                edges,
                out,
                incoming,
            }),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &AtlasKind {
        &self.kind
    }

    pub fn is_simple(&self) -> bool {
        matches!(self.kind, AtlasKind::Simple { .. })
    }

    /// Identifier of a presented node, if any.
    pub fn node_id(&self, node: u32) -> Option<&str> {
        match &self.kind {
            AtlasKind::Presented(p) => p.nodes.get(node as usize).map(|n| n.id.as_str()),
            AtlasKind::Simple { .. } => None,
        }
    }

    /// Maximal Thurston-Bennequin invariant over the knot type.
    pub fn max_tb(&self) -> i64 {
        match &self.kind {
            AtlasKind::Simple { peaks } => peaks.iter().map(|p| p.tb).max(),
            AtlasKind::Presented(p) => p.nodes.iter().map(|n| n.tbr.tb).max(),
        }
        .expect("atlases are non-empty by construction")
    }

    /// Classes admitting no destabilization, as invariants.
    pub fn peaks(&self) -> Vec<TbR> {
        match &self.kind {
            AtlasKind::Simple { peaks } => peaks.clone(),
            AtlasKind::Presented(p) => {
                let mut v: Vec<TbR> = p
                    .nodes
                    .iter()
                    .zip(&p.incoming)
                    .filter(|(_, inc)| inc.is_empty())
                    .map(|(n, _)| n.tbr)
                    .collect();
                v.sort_by_key(|t| (t.r, t.tb));
                v.dedup();
                v
            }
        }
    }

    /// Smallest and largest rotation number among the generators (peaks, or
    /// all nodes of a presented atlas).
    pub fn r_span(&self) -> (i64, i64) {
        let rs: Vec<i64> = match &self.kind {
            AtlasKind::Simple { peaks } => peaks.iter().map(|p| p.r).collect(),
            AtlasKind::Presented(p) => p.nodes.iter().map(|n| n.tbr.r).collect(),
        };
        (
            rs.iter().copied().min().unwrap_or(0),
            rs.iter().copied().max().unwrap_or(0),
        )
    }

    /// Whether some class of this atlas has invariants `x`.
    pub fn realized(&self, x: TbR) -> bool {
        match &self.kind {
            AtlasKind::Simple { peaks } => peaks.iter().any(|p| p.cone_contains(x)),
            AtlasKind::Presented(p) => {
                p.nodes.iter().any(|n| n.tbr == x) || (p.simple_below && p.below_realized(x))
            }
        }
    }

    /// Whether `c` names an existing class of this atlas.
    pub fn contains(&self, c: &ClassRef) -> bool {
        match (&self.kind, c.node) {
            (AtlasKind::Simple { .. }, None) => self.realized(c.tbr),
            (AtlasKind::Simple { .. }, Some(_)) => false,
            (AtlasKind::Presented(p), Some(n)) => p
                .nodes
                .get(n as usize)
                .is_some_and(|node| node.tbr == c.tbr),
            (AtlasKind::Presented(p), None) => p.simple_below && p.below_realized(c.tbr),
        }
    }

    fn check(&self, c: &ClassRef) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::NotRealized(c.to_string(), self.name.clone()))
        }
    }

    /// All classes with invariants `x`.
    pub fn classes_at(&self, x: TbR) -> Result<Vec<ClassRef>> {
        match &self.kind {
            AtlasKind::Simple { .. } => Ok(if self.realized(x) {
                vec![ClassRef::point(x)]
            } else {
                Vec::new()
            }),
            AtlasKind::Presented(p) => {
                if x.tb >= p.cutoff {
                    Ok(p.nodes
                        .iter()
                        .enumerate()
                        .filter(|(_, n)| n.tbr == x)
                        .map(|(i, n)| ClassRef {
                            tbr: n.tbr,
                            node: Some(i as u32),
                        })
                        .collect())
                } else {
                    p.require_simple_below(&format!("point {x}"))?;
                    Ok(if p.below_realized(x) {
                        vec![ClassRef::point(x)]
                    } else {
                        Vec::new()
                    })
                }
            }
        }
    }

    /// Every class with `lo <= tb <= hi`, sorted.
    pub fn classes_in_band(&self, lo: i64, hi: i64) -> Result<Vec<ClassRef>> {
        let hi = hi.min(self.max_tb());
        let mut out = Vec::new();
        if lo > hi {
            return Ok(out);
        }
        match &self.kind {
            AtlasKind::Simple { peaks } => {
                let (rmin, rmax) = self.r_span();
                let top = self.max_tb();
                for tb in lo..=hi {
                    let d = top - tb;
                    for r in (rmin - d)..=(rmax + d) {
                        let x = TbR::new(tb, r);
                        if peaks.iter().any(|p| p.cone_contains(x)) {
                            out.push(ClassRef::point(x));
                        }
                    }
                }
            }
            AtlasKind::Presented(p) => {
                for (i, n) in p.nodes.iter().enumerate() {
                    if (lo..=hi).contains(&n.tbr.tb) {
                        out.push(ClassRef {
                            tbr: n.tbr,
                            node: Some(i as u32),
                        });
                    }
                }
                if lo < p.cutoff {
                    p.require_simple_below(&format!("tb level {lo}"))?;
                    let (rmin, rmax) = p
                        .cutoff_nodes()
                        .fold((i64::MAX, i64::MIN), |(a, b), (_, n)| {
                            (a.min(n.tbr.r), b.max(n.tbr.r))
                        });
                    for tb in lo..=hi.min(p.cutoff - 1) {
                        let d = p.cutoff - tb;
                        for r in (rmin - d)..=(rmax + d) {
                            let x = TbR::new(tb, r);
                            if p.below_realized(x) {
                                out.push(ClassRef::point(x));
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// Image of `c` under the stabilization `S±`.
    pub fn stabilize(&self, c: &ClassRef, sign: Sign) -> Result<ClassRef> {
        self.check(c)?;
        match &self.kind {
            AtlasKind::Simple { .. } => Ok(ClassRef::point(c.tbr.stabilized(sign))),
            AtlasKind::Presented(p) => match c.node {
                None => Ok(ClassRef::point(c.tbr.stabilized(sign))),
                Some(n) => {
                    if let Some(to) = p.out[n as usize][sign.slot()] {
                        return Ok(ClassRef {
                            tbr: p.nodes[to as usize].tbr,
                            node: Some(to),
                        });
                    }
                    if c.tbr.tb == p.cutoff {
                        p.require_simple_below(&format!(
                            "S{sign} of node `{}`",
                            p.nodes[n as usize].id
                        ))?;
                        Ok(ClassRef::point(c.tbr.stabilized(sign)))
                    } else {
                        Err(Error::AtlasIncomplete(format!(
                            "atlas `{}`: node `{}` has no S{sign} edge",
                            self.name, p.nodes[n as usize].id
                        )))
                    }
                }
            },
        }
    }

    /// All classes `y` with `stabilize(y, sign) == c`.
    pub fn destabilizations(&self, c: &ClassRef, sign: Sign) -> Result<Vec<ClassRef>> {
        self.check(c)?;
        let up = c.tbr.destabilized(sign);
        match &self.kind {
            AtlasKind::Simple { .. } => Ok(if self.realized(up) {
                vec![ClassRef::point(up)]
            } else {
                Vec::new()
            }),
            AtlasKind::Presented(p) => match c.node {
                Some(n) => Ok(p.incoming[n as usize]
                    .iter()
                    .filter(|(s, _)| *s == sign)
                    .map(|&(_, from)| ClassRef {
                        tbr: p.nodes[from as usize].tbr,
                        node: Some(from),
                    })
                    .collect()),
                None if up.tb == p.cutoff => Ok(p
                    .cutoff_nodes()
                    .filter(|(i, n)| n.tbr == up && p.out[*i as usize][sign.slot()].is_none())
                    .map(|(i, n)| ClassRef {
                        tbr: n.tbr,
                        node: Some(i),
                    })
                    .collect()),
                None => Ok(if p.below_realized(up) {
                    vec![ClassRef::point(up)]
                } else {
                    Vec::new()
                }),
            },
        }
    }

    /// Check every structural invariant; returns human-readable violations.
    pub fn validate(&self) -> Vec<String> {
        let mut issues = Vec::new();
        let name = &self.name;
        let check_parity = |points: &mut dyn Iterator<Item = TbR>, issues: &mut Vec<String>| {
            let parities: BTreeSet<i64> = points.map(TbR::parity).collect();
            if parities.len() > 1 {
                issues.push(format!("atlas `{name}`: mixed tb+r parity among classes"));
            }
        };
        match &self.kind {
            AtlasKind::Simple { peaks } => {
                for (i, a) in peaks.iter().enumerate() {
                    for (j, b) in peaks.iter().enumerate() {
                        if i < j && a == b {
                            issues.push(format!("atlas `{name}`: duplicate peak {a}"));
                        } else if a != b && a.cone_contains(*b) {
                            issues.push(format!("atlas `{name}`: peak {b} dominated by peak {a}"));
                        }
                    }
                }
                check_parity(&mut peaks.iter().copied(), &mut issues);
            }
            AtlasKind::Presented(p) => {
                for n in &p.nodes {
                    if n.tbr.tb < p.cutoff {
                        issues.push(format!(
                            "atlas `{name}`: node `{}` at tb {} lies below cutoff {}",
                            n.id, n.tbr.tb, p.cutoff
                        ));
                    }
                }
                let mut seen = BTreeSet::new();
                for e in &p.edges {
                    let (a, b) = (&p.nodes[e.from as usize], &p.nodes[e.to as usize]);
                    if a.tbr.stabilized(e.sign) != b.tbr {
                        issues.push(format!(
                            "atlas `{name}`: edge `{}` -S{}-> `{}` does not map {} to {}",
                            a.id,
                            e.sign,
                            b.id,
                            a.tbr,
                            a.tbr.stabilized(e.sign)
                        ));
                    }
                    if !seen.insert((e.from, e.sign)) {
                        issues.push(format!(
                            "atlas `{name}`: node `{}` has several S{} edges",
                            a.id, e.sign
                        ));
                    }
                }
                check_parity(&mut p.nodes.iter().map(|n| n.tbr), &mut issues);
            }
        }
        issues
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&AtlasFile::from(self)).expect("atlas serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AtlasFile = serde_json::from_str(text)?;
        file.try_into()
    }
}

impl fmt::Display for PrimeAtlas {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

// On-disk representation. Field order here is the key order on write.

#[derive(Serialize, Deserialize)]
struct AtlasFile {
    name: String,
    #[serde(flatten)]
    kind: KindFile,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum KindFile {
    Simple {
        peaks: Vec<TbR>,
    },
    Presented {
        cutoff: i64,
        simple_below: bool,
        nodes: Vec<NodeFile>,
        edges: Vec<EdgeFile>,
    },
}

#[derive(Serialize, Deserialize)]
struct NodeFile {
    id: String,
    tb: i64,
    r: i64,
}

#[derive(Serialize, Deserialize)]
struct EdgeFile {
    from: String,
    to: String,
    sign: Sign,
}

impl From<&PrimeAtlas> for AtlasFile {
    fn from(a: &PrimeAtlas) -> Self {
        let kind = match &a.kind {
            AtlasKind::Simple { peaks } => KindFile::Simple {
                peaks: peaks.clone(),
            },
            AtlasKind::Presented(p) => KindFile::Presented {
                cutoff: p.cutoff,
                simple_below: p.simple_below,
                nodes: p
                    .nodes
                    .iter()
                    .map(|n| NodeFile {
                        id: n.id.clone(),
                        tb: n.tbr.tb,
                        r: n.tbr.r,
                    })
                    .collect(),
                edges: p
                    .edges
                    .iter()
                    .map(|e| EdgeFile {
                        from: p.nodes[e.from as usize].id.clone(),
                        to: p.nodes[e.to as usize].id.clone(),
                        sign: e.sign,
                    })
                    .collect(),
            },
        };
        AtlasFile {
            name: a.name.clone(),
            kind,
        }
    }
}

impl TryFrom<AtlasFile> for PrimeAtlas {
    type Error = Error;

    fn try_from(file: AtlasFile) -> Result<Self> {
        match file.kind {
            KindFile::Simple { peaks } => PrimeAtlas::simple(file.name, peaks),
            KindFile::Presented {
                cutoff,
                simple_below,
                nodes,
                edges,
            } => PrimeAtlas::presented(
                file.name,
                cutoff,
                simple_below,
                nodes
                    .into_iter()
                    .map(|n| (n.id, TbR::new(n.tb, n.r)))
                    .collect(),
                edges.into_iter().map(|e| (e.from, e.to, e.sign)).collect(),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<TbR> {
        v.iter().map(|&(tb, r)| TbR::new(tb, r)).collect()
    }

    #[test]
    fn torus_peaks_match_formula() {
        let t = PrimeAtlas::torus(-3, 2).unwrap();
        assert_eq!(t.peaks(), pts(&[(-6, -1), (-6, 1)]));
        let t = PrimeAtlas::torus(-11, 4).unwrap();
        assert_eq!(t.peaks(), pts(&[(-44, -7), (-44, -1), (-44, 1), (-44, 7)]));
        // k ranges over 0 <= k < 4/3, so k = 1 contributes r = ±2
        let t = PrimeAtlas::torus(-7, 3).unwrap();
        assert_eq!(t.peaks(), pts(&[(-21, -4), (-21, -2), (-21, 2), (-21, 4)]));
        assert_eq!(t.max_tb(), -21);
    }

    #[test]
    fn torus_rejects_bad_parameters() {
        assert!(matches!(
            PrimeAtlas::torus(-4, 2),
            Err(Error::NotCoprime { p: -4, q: 2 })
        ));
        for (p, q) in [(3, 2), (-2, 3), (-3, 3), (-5, 0), (-5, -2), (-5, 1)] {
            assert!(
                matches!(PrimeAtlas::torus(p, q), Err(Error::UnsupportedRange(_))),
                "({p}, {q})"
            );
        }
    }

    #[test]
    fn unknot_queries() {
        let u = PrimeAtlas::unknot();
        assert_eq!(u.peaks(), pts(&[(-1, 0)]));
        assert_eq!(u.max_tb(), -1);
        assert!(u.realized(TbR::new(-1, 0)));
        assert!(!u.realized(TbR::new(0, 0)));
        assert_eq!(u.classes_at(TbR::new(-3, 0)).unwrap().len(), 1);
        assert!(u.classes_at(TbR::new(-2, 0)).unwrap().is_empty());
    }

    #[test]
    fn realized_and_classes() {
        let t = PrimeAtlas::torus(-3, 2).unwrap();
        assert!(t.realized(TbR::new(-7, 0)));
        assert!(!t.realized(TbR::new(-6, 3)));
        let t73 = PrimeAtlas::torus(-7, 3).unwrap();
        assert!(t73.realized(TbR::new(-21, 4)));
        assert_eq!(t73.classes_at(TbR::new(-21, -4)).unwrap().len(), 1);
        assert!(t73.classes_at(TbR::new(-20, 0)).unwrap().is_empty());
    }

    #[test]
    fn stabilization_and_destabilization() {
        let t = PrimeAtlas::torus(-3, 2).unwrap();
        let peak = ClassRef::point(TbR::new(-6, 1));
        assert_eq!(t.stabilize(&peak, Sign::Plus).unwrap().tbr, TbR::new(-7, 2));
        assert_eq!(
            t.stabilize(&peak, Sign::Minus).unwrap().tbr,
            TbR::new(-7, 0)
        );
        let u = PrimeAtlas::unknot();
        let up = ClassRef::point(TbR::new(-1, 0));
        assert_eq!(u.stabilize(&up, Sign::Minus).unwrap().tbr, TbR::new(-2, -1));

        let valley = ClassRef::point(TbR::new(-7, 0));
        assert_eq!(
            t.destabilizations(&valley, Sign::Minus).unwrap(),
            vec![ClassRef::point(TbR::new(-6, 1))]
        );
        assert_eq!(
            t.destabilizations(&valley, Sign::Plus).unwrap(),
            vec![ClassRef::point(TbR::new(-6, -1))]
        );
        for s in Sign::BOTH {
            assert!(t.destabilizations(&peak, s).unwrap().is_empty());
        }
        assert!(matches!(
            t.stabilize(&ClassRef::point(TbR::new(-6, 3)), Sign::Plus),
            Err(Error::NotRealized(..))
        ));
    }

    #[test]
    fn validate_reports_violations() {
        let a = PrimeAtlas::simple("bad", pts(&[(-6, 1), (-7, 0)])).unwrap();
        let issues = a.validate();
        assert_eq!(issues.len(), 1);
        assert!(issues[0].contains("peak (-7, 0) dominated by peak (-6, 1)"));

        let a = PrimeAtlas::simple("dup", pts(&[(-6, 1), (-6, 1)])).unwrap();
        assert!(a.validate()[0].contains("duplicate peak"));
        let a = PrimeAtlas::simple("parity", pts(&[(-6, 1), (-6, 4)])).unwrap();
        assert!(a.validate()[0].contains("parity"));
        assert!(PrimeAtlas::torus(-19, 4).unwrap().validate().is_empty());
        assert!(PrimeAtlas::simple("empty", vec![]).is_err());
    }

    fn twin() -> PrimeAtlas {
        // two classes at the top that merge after one stabilization
        let n = |id: &str, tb, r| (id.to_string(), TbR::new(tb, r));
        let e = |a: &str, b: &str, s| (a.to_string(), b.to_string(), s);
        PrimeAtlas::presented(
            "twin",
            -3,
            true,
            vec![
                n("a", -1, 0),
                n("b", -1, 0),
                n("p", -2, 1),
                n("m", -2, -1),
                n("c2", -3, 2),
                n("c0", -3, 0),
                n("cm", -3, -2),
            ],
            vec![
                e("a", "p", Sign::Plus),
                e("a", "m", Sign::Minus),
                e("b", "p", Sign::Plus),
                e("b", "m", Sign::Minus),
                e("p", "c2", Sign::Plus),
                e("p", "c0", Sign::Minus),
                e("m", "c0", Sign::Plus),
                e("m", "cm", Sign::Minus),
            ],
        )
        .unwrap()
    }

    #[test]
    fn presented_queries() {
        let a = twin();
        assert!(a.validate().is_empty(), "{:?}", a.validate());
        assert_eq!(a.max_tb(), -1);
        assert_eq!(a.peaks(), pts(&[(-1, 0)]));
        let top = a.classes_at(TbR::new(-1, 0)).unwrap();
        assert_eq!(top.len(), 2);
        let p = a.stabilize(&top[0], Sign::Plus).unwrap();
        assert_eq!(p, a.stabilize(&top[1], Sign::Plus).unwrap());
        assert_eq!(a.destabilizations(&p, Sign::Plus).unwrap(), top);

        // below the cutoff, classes are synthesized points
        let c0 = a.classes_at(TbR::new(-3, 0)).unwrap()[0];
        let low = a.stabilize(&c0, Sign::Minus).unwrap();
        assert_eq!(low, ClassRef::point(TbR::new(-4, -1)));
        assert_eq!(a.destabilizations(&low, Sign::Minus).unwrap(), vec![c0]);
        assert!(a.realized(TbR::new(-6, 5)));
        assert!(!a.realized(TbR::new(-6, 6)));
        let deeper = a.stabilize(&low, Sign::Minus).unwrap();
        assert_eq!(a.destabilizations(&deeper, Sign::Minus).unwrap(), vec![low]);
        let band = a.classes_in_band(-4, -1).unwrap();
        assert_eq!(band.len(), 2 + 2 + 3 + 4);
    }

    #[test]
    fn presented_incomplete() {
        let n = |id: &str, tb, r| (id.to_string(), TbR::new(tb, r));
        let a = PrimeAtlas::presented(
            "gap",
            -2,
            false,
            vec![n("a", -1, 0), n("p", -2, 1)],
            vec![("a".into(), "p".into(), Sign::Plus)],
        )
        .unwrap();
        let top = ClassRef {
            tbr: TbR::new(-1, 0),
            node: Some(0),
        };
        assert!(matches!(
            a.stabilize(&top, Sign::Minus),
            Err(Error::AtlasIncomplete(_))
        ));
        let p = a.stabilize(&top, Sign::Plus).unwrap();
        assert!(matches!(
            a.stabilize(&p, Sign::Plus),
            Err(Error::AtlasIncomplete(_))
        ));
        assert!(matches!(
            a.classes_at(TbR::new(-5, 0)),
            Err(Error::AtlasIncomplete(_))
        ));
        assert!(!a.realized(TbR::new(-3, 2)));
    }

    #[test]
    fn presented_structural_errors() {
        let n = |id: &str, tb, r| (id.to_string(), TbR::new(tb, r));
        assert!(
            PrimeAtlas::presented("x", 0, true, vec![n("a", -1, 0), n("a", -2, 1)], vec![])
                .is_err()
        );
        assert!(PrimeAtlas::presented(
            "x",
            -2,
            true,
            vec![n("a", -1, 0)],
            vec![("a".into(), "zz".into(), Sign::Plus)]
        )
        .is_err());
        let bad = PrimeAtlas::presented(
            "x",
            -2,
            true,
            vec![n("a", -1, 0), n("b", -2, -1), n("c", -3, 0)],
            vec![("a".into(), "b".into(), Sign::Plus)],
        )
        .unwrap();
        let issues = bad.validate();
        assert!(issues.iter().any(|s| s.contains("does not map")));
        assert!(issues.iter().any(|s| s.contains("below cutoff")));
    }

    #[test]
    fn json_shape() {
        let t = PrimeAtlas::torus(-3, 2).unwrap();
        let text = t.to_json();
        let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("name") < pos("kind") && pos("kind") < pos("peaks"));
        assert_eq!(PrimeAtlas::from_json(&text).unwrap(), t);
        let tw = twin();
        assert_eq!(PrimeAtlas::from_json(&tw.to_json()).unwrap(), tw);
        assert!(tw.to_json().contains("\"sign\": \"+\""));
    }
}
