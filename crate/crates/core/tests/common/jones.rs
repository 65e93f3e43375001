//! Jones polynomial of a front by the Kauffman bracket state sum.
//!
//! Works from the raw event list only: strands are tracked column by column
//! here, independently of the library's skeleton and orientation code.
//! Polynomials are in `A`, with `t = A^-4`.

use std::collections::BTreeMap;

use legsum::front::{Event, FrontDiagram};

pub type Poly = BTreeMap<i64, i64>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn add(a: &mut Poly, b: &Poly) {
    for (e, c) in b {
        *a.entry(*e).or_default() += c;
    }
    a.retain(|_, c| *c != 0);
}

fn mono(e: i64, c: i64) -> Poly {
    Poly::from([(e, c)])
}

struct Uf(Vec<usize>);

impl Uf {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    fn join(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

enum Col {
    Cusp(usize, usize, bool),
    // top-left, bottom-left, top-right, bottom-right
    Cross([usize; 4]),
}

struct Graph {
    edges: usize,
    cols: Vec<Col>,
}

fn graph(f: &FrontDiagram) -> Graph {
    let mut strands: Vec<usize> = Vec::new();
    let mut edges = 0;
    let mut cols = Vec::new();
    for ev in f.events() {
        match *ev {
            Event::LeftCusp(k) => {
                strands.splice(k..k, [edges, edges + 1]);
                cols.push(Col::Cusp(edges, edges + 1, true));
                edges += 2;
            }
            Event::RightCusp(k) => {
                cols.push(Col::Cusp(strands[k], strands[k + 1], false));
                strands.drain(k..k + 2);
            }
            Event::Crossing(k) => {
                let (a, b) = (strands[k], strands[k + 1]);
                cols.push(Col::Cross([a, b, edges, edges + 1]));
                strands[k] = edges;
                strands[k + 1] = edges + 1;
                edges += 2;
            }
        }
    }
    assert!(strands.is_empty());
    Graph { edges, cols }
}

/// Writhe from a direct walk of the curve, with the downhill strand over.
fn writhe(g: &Graph) -> i64 {
    // each edge's two neighbours, tagged with the column and which end
    let mut left = vec![usize::MAX; g.edges];
    let mut right = vec![usize::MAX; g.edges];
    let mut link = BTreeMap::new();
    for (i, col) in g.cols.iter().enumerate() {
        match *col {
            Col::Cusp(a, b, opens) => {
                link.insert((i, a), b);
                link.insert((i, b), a);
                let end = if opens { &mut left } else { &mut right };
                end[a] = i;
                end[b] = i;
            }
            Col::Cross([a, b, c, d]) => {
                right[a] = i;
                right[b] = i;
                left[c] = i;
                left[d] = i;
                link.insert((i, a), d);
                link.insert((i, d), a);
                link.insert((i, b), c);
                link.insert((i, c), b);
            }
        }
    }
    // true = traversed rightward
    let mut dir = vec![None; g.edges];
    let (mut e, mut rightward) = (0usize, true);
    while dir[e].is_none() {
        dir[e] = Some(rightward);
        let col = if rightward { right[e] } else { left[e] };
        let next = link[&(col, e)];
        rightward = match g.cols[col] {
            Col::Cusp(..) => !rightward,
            Col::Cross(_) => rightward,
        };
        e = next;
    }
    assert!(dir.iter().all(|d| d.is_some()), "not a knot");
    let mut w = 0;
    for col in &g.cols {
        if let Col::Cross([a, b, _, _]) = *col {
            w += if dir[a] == dir[b] { 1 } else { -1 };
        }
    }
    w
}

pub fn jones(f: &FrontDiagram) -> Poly {
    let g = graph(f);
    let crossings: Vec<[usize; 4]> = g
        .cols
        .iter()
        .filter_map(|c| match c {
            Col::Cross(x) => Some(*x),
            _ => None,
        })
        .collect();
    let d = Poly::from([(2, -1), (-2, -1)]);
    let mut bracket = Poly::new();
    for state in 0u64..1 << crossings.len() {
        let mut uf = Uf((0..g.edges).collect());
        for col in &g.cols {
            if let Col::Cusp(a, b, _) = *col {
                uf.join(a, b);
            }
        }
        let mut a_count = 0i64;
        for (i, &[tl, bl, tr, br]) in crossings.iter().enumerate() {
            if state >> i & 1 == 0 {
                a_count += 1;
                uf.join(tl, tr);
                uf.join(bl, br);
            } else {
                uf.join(tl, bl);
                uf.join(tr, br);
            }
        }
        let loops = (0..g.edges).filter(|&e| uf.find(e) == e).count();
        let b_count = crossings.len() as i64 - a_count;
        let mut term = mono(a_count - b_count, 1);
        for _ in 1..loops {
            term = mul(&term, &d);
        }
        add(&mut bracket, &term);
    }
    let w = writhe(&g);
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    mul(&bracket, &mono(-3 * w, sign))
}

/// Jones polynomial of the mirror of the positive `(2, k)` torus knot.
pub fn mirror_two_bridge_torus(k: i64) -> Poly {
    // V = t^((k-1)/2) (1 - t^3 - t^(k+1) + t^(k+2)) / (1 - t^2)
    let mut num: BTreeMap<i64, i64> = BTreeMap::from([(0, 1), (3, -1), (k + 1, -1), (k + 2, 1)]);
    let mut quot = BTreeMap::new();
    for e in 0..=k {
        let c = num.get(&e).copied().unwrap_or(0);
        if c != 0 {
            quot.insert(e, c);
            *num.entry(e + 2).or_default() += c;
        }
    }
    assert!(num.range(k + 1..).all(|(_, c)| *c == 0));
    quot.into_iter()
        .map(|(e, c)| (4 * (e + (k - 1) / 2), c))
        .collect()
}
