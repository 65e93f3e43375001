//! Property bodies shared by the property suite and the acceptance run.

use legsum::front::{parse_front, serialize_front};
use legsum::sumcalc::{perm_moves, shift_moves, SumEngine, SumSpec, SumTuple};
use legsum::{ClassRef, PrimeAtlas, Sign, TbR};
use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::TestCaseError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{random_front, torus_peaks, unknot_peaks, Oracle, Pt};

pub const CASES: u32 = 500;

pub fn small_atlases() -> Vec<(PrimeAtlas, Vec<Pt>)> {
    let mut v = vec![(PrimeAtlas::unknot(), unknot_peaks())];
    for (p, q) in [(-3, 2), (-5, 2), (-7, 3), (-7, 2)] {
        v.push((PrimeAtlas::torus(p, q).unwrap(), torus_peaks(p, q)));
    }
    v
}

pub fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

/// A realized point: a peak pushed down by `a` positive and `b` negative
/// stabilizations.
#[derive(Clone, Debug)]
pub struct Entry {
    pub atlas: usize,
    pub peak: Index,
    pub plus: u8,
    pub minus: u8,
}

pub fn entry(max: u8) -> impl Strategy<Value = Entry> {
    (0..small_atlases().len(), any::<Index>(), 0..=max, 0..=max).prop_map(
        |(atlas, peak, plus, minus)| Entry {
            atlas,
            peak,
            plus,
            minus,
        },
    )
}

impl Entry {
    pub fn point(&self, peaks: &[Pt]) -> TbR {
        let (tb, r) = *self.peak.get(peaks);
        TbR::new(
            tb - i64::from(self.plus) - i64::from(self.minus),
            r + i64::from(self.plus) - i64::from(self.minus),
        )
    }
}

/// A sum of 2 or 3 small summands with one tuple of it.
pub fn sum_case() -> impl Strategy<Value = Vec<Entry>> {
    prop::collection::vec(entry(3), 2..=3)
}

pub fn realize(case: &[Entry]) -> (SumSpec, SumTuple) {
    let all = small_atlases();
    let spec = SumSpec::new(case.iter().map(|e| all[e.atlas].0.clone()).collect()).unwrap();
    let t = SumTuple(
        case.iter()
            .map(|e| ClassRef::point(e.point(&all[e.atlas].1)))
            .collect(),
    );
    (spec, t)
}

pub fn cone_closure(e: &Entry, dt: i64, dr: i64) -> Result<(), TestCaseError> {
    let all = small_atlases();
    let (atlas, peaks) = &all[e.atlas];
    let oracle = Oracle::new(vec![peaks.clone()]);
    let x = e.point(peaks);
    prop_assert!(atlas.realized(x));
    for s in Sign::BOTH {
        let c = ClassRef::point(x);
        let down = atlas.stabilize(&c, s).unwrap();
        prop_assert_eq!(down.tbr, x.stabilized(s));
        prop_assert!(atlas.realized(down.tbr));
        for up in atlas.destabilizations(&c, s).unwrap() {
            prop_assert!(atlas.realized(up.tbr));
            prop_assert_eq!(atlas.stabilize(&up, s).unwrap(), c);
        }
    }
    let z = TbR::new(x.tb + dt, x.r + dr);
    prop_assert_eq!(atlas.realized(z), oracle.realized(0, (z.tb, z.r)));
    Ok(())
}

pub fn move_soundness(case: &[Entry]) -> Result<(), TestCaseError> {
    let (spec, t) = realize(case);
    let x = spec.tuple_tbr(&t).unwrap();
    for u in shift_moves(&spec, &t)
        .unwrap()
        .into_iter()
        .chain(perm_moves(&spec, &t))
    {
        prop_assert!(spec.check_tuple(&u).is_ok());
        prop_assert_eq!(spec.tuple_tbr(&u).unwrap(), x);
    }
    Ok(())
}

pub fn well_defined(
    case: &[Entry],
    pick: Index,
    sign: Sign,
    slot: Index,
) -> Result<(), TestCaseError> {
    let (spec, t) = realize(case);
    let mut engine = SumEngine::new(&spec);
    let x = spec.tuple_tbr(&t).unwrap();
    let level = engine.level(x).unwrap();
    let c = level.class_index(&t).unwrap();
    let members: Vec<SumTuple> = level.members(c).cloned().collect();
    let u = pick.get(&members).clone();
    let i = slot.index(spec.len());
    let mut t2 = t.clone();
    let mut u2 = u.clone();
    t2.0[i] = spec.summands()[i].stabilize(&t.0[i], sign).unwrap();
    u2.0[i] = spec.summands()[i].stabilize(&u.0[i], sign).unwrap();
    prop_assert!(engine.equivalent(&t2, &u2).unwrap(), "{} vs {}", t2, u2);
    Ok(())
}

pub fn reversal(case: &[Entry], depth: i64, r: Index) -> Result<(), TestCaseError> {
    let (spec, _) = realize(case);
    let rev = spec.reversed();
    let tb = spec.max_tb_sum() - depth;
    let (lo, hi) = spec.r_bounds(tb);
    let r = lo + r.index((hi - lo + 1) as usize) as i64;
    let x = TbR::new(tb, r);
    let mut a = SumEngine::new(&spec);
    let mut b = SumEngine::new(&rev);
    prop_assert_eq!(a.count(x).unwrap(), b.count(x).unwrap(), "at {}", x);
    Ok(())
}

pub fn s_invariance(case: &[Entry]) -> Result<(), TestCaseError> {
    let (spec, t) = realize(case);
    let mut engine = SumEngine::new(&spec);
    let c = engine.class_of(&t).unwrap();
    let d = engine.stabilize_class(&c, Sign::Minus).unwrap();
    prop_assert_eq!(d.tbr().self_linking(), c.tbr().self_linking());
    prop_assert_eq!(d.tbr().tb, c.tbr().tb - 1);
    Ok(())
}

pub fn peak_list() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-40i64..0, -12i64..=12), 1..6)
}

pub fn round_trips(peaks: &[(i64, i64)], seed: u64, len: usize) -> Result<(), TestCaseError> {
    let atlas = PrimeAtlas::simple(
        "random",
        peaks.iter().map(|&(tb, r)| TbR::new(tb, r)).collect(),
    )
    .unwrap();
    prop_assert_eq!(PrimeAtlas::from_json(&atlas.to_json()).unwrap(), atlas);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random_front(&mut rng, len);
    let text = serialize_front(&f);
    prop_assert_eq!(parse_front(&text).unwrap(), f);
    let x = TbR::new(peaks[0].0, peaks[0].1);
    let back: TbR = serde_json::from_str(&serde_json::to_string(&x).unwrap()).unwrap();
    prop_assert_eq!(back, x);
    Ok(())
}
