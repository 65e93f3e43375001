use crate::atlas::Sign;
use crate::error::Result;

use super::{SumSpec, SumTuple};

/// Tuples reachable from `t` by moving one stabilization between adjacent
/// summands, in either direction and with either sign. Sorted, deduplicated.
pub fn shift_moves(spec: &SumSpec, t: &SumTuple) -> Result<Vec<SumTuple>> {
    spec.check_tuple(t)?;
    let atlases = spec.summands();
    let mut out = Vec::new();
    for (a, b) in spec.adjacent_pairs() {
        for (from, to) in [(a, b), (b, a)] {
            for sign in Sign::BOTH {
                let ups = atlases[from].destabilizations(&t.0[from], sign)?;
                if ups.is_empty() {
                    continue;
                }
                let down = atlases[to].stabilize(&t.0[to], sign)?;
                for up in ups {
                    let mut u = t.clone();
                    u.0[from] = up;
                    u.0[to] = down;
                    out.push(u);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Images of `t` under the sum's symmetry group, excluding `t` itself.
pub fn perm_moves(spec: &SumSpec, t: &SumTuple) -> Vec<SumTuple> {
    let mut out: Vec<SumTuple> = spec
        .symmetry()
        .into_iter()
        .map(|sigma| SumTuple(sigma.iter().map(|&j| t.0[j]).collect()))
        .filter(|u| u != t)
        .collect();
    out.sort();
    out.dedup();
    out
}
