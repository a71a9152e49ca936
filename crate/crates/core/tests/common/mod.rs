//! Independent reference implementations used to check the library.
//!
//! Each oracle recomputes a quantity from the raw map data by the most direct
//! method available, sharing no code with the production path beyond the
//! `Diagram` accessors.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vlink::generate::{random_diagram, RandomShape};
use vlink::{Dart, Diagram, DiagramData, LaurentPoly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_corpus(seed: u64, count: usize, max_crossings: usize) -> Vec<Diagram> {
    let mut rng = rng(seed);
    let shape = RandomShape {
        max_crossings,
        ..RandomShape::default()
    };
    (0..count).map(|_| random_diagram(&mut rng, shape)).collect()
}

type Poly = BTreeMap<i32, i64>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn to_laurent(p: &Poly) -> LaurentPoly {
    p.iter()
        .fold(LaurentPoly::zero(), |acc, (&e, &c)| acc + LaurentPoly::monomial(c, e))
}

/// Cycles of the permutation `perm`, each rotated to start at its least element, sorted.
pub fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = perm[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = perm[x];
        }
        out.push(cycle);
    }
    out
}

/// Rotation successor as an explicit permutation of darts.
fn sigma(d: &Diagram) -> Vec<Dart> {
    let mut s = vec![0; d.num_darts()];
    for rot in &d.data().vertex_rotations {
        for k in 0..4 {
            s[rot[k]] = rot[(k + 1) % 4];
        }
    }
    s
}

/// Faces as cycles of `sigma . alpha`.
pub fn naive_faces(d: &Diagram) -> Vec<Vec<Dart>> {
    let s = sigma(d);
    let alpha = &d.data().edge_involution;
    let phi: Vec<Dart> = (0..d.num_darts()).map(|x| s[alpha[x]]).collect();
    cycles(&phi)
}

/// Face count and genus per connected component of the graph, from scratch.
pub fn naive_component_euler(d: &Diagram) -> Vec<(usize, usize)> {
    let n = d.num_crossings();
    let data = d.data();
    let mut vertex_of = vec![0; d.num_darts()];
    for (v, rot) in data.vertex_rotations.iter().enumerate() {
        for &x in rot {
            vertex_of[x] = v;
        }
    }
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut changed = false;
        for x in 0..d.num_darts() {
            let (a, b) = (vertex_of[x], vertex_of[data.edge_involution[x]]);
            let m = label[a].min(label[b]);
            if label[a] != m || label[b] != m {
                label[a] = m;
                label[b] = m;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut by_comp: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    for v in 0..n {
        by_comp.entry(label[v]).or_default().0 += 1;
    }
    for face in naive_faces(d) {
        by_comp.get_mut(&label[vertex_of[face[0]]]).unwrap().1 += 1;
    }
    by_comp.into_values().collect()
}

/// Kauffman bracket by direct enumeration of all 2^V states.
///
/// At each crossing a corner is an A-corner when its counterclockwise-first
/// dart is an over dart. The A-smoothing joins the two A-corners, so it pairs
/// the darts bounding each B-corner; the B-smoothing does the reverse.
pub fn naive_bracket(d: &Diagram) -> LaurentPoly {
    let n = d.num_crossings();
    let data = d.data();
    let over: Vec<bool> = {
        let mut o = vec![false; d.num_darts()];
        for deco in &data.over_under {
            o[deco[0]] = true;
            o[deco[1]] = true;
        }
        o
    };
    let delta: Poly = [(-2, -1), (2, -1)].into_iter().collect();
    let mut total = Poly::new();
    for state in 0u64..1 << n {
        let mut pair = vec![0; d.num_darts()];
        let mut a = 0i32;
        for (v, rot) in data.vertex_rotations.iter().enumerate() {
            let smooth_a = state >> v & 1 == 0;
            a += if smooth_a { 1 } else { -1 };
            for k in 0..4 {
                let (x, y) = (rot[k], rot[(k + 1) % 4]);
                let joined = if smooth_a { !over[x] } else { over[x] };
                if joined {
                    pair[x] = y;
                    pair[y] = x;
                }
            }
        }
        let walk: Vec<Dart> = (0..d.num_darts())
            .map(|x| data.edge_involution[pair[x]])
            .collect();
        let loops = cycles(&walk).len() / 2 + d.free_loops();
        let mut term: Poly = [(a, 1)].into_iter().collect();
        for _ in 1..loops {
            term = poly_mul(&term, &delta);
        }
        for (e, c) in term {
            *total.entry(e).or_default() += c;
        }
    }
    total.retain(|_, c| *c != 0);
    to_laurent(&total)
}

/// `(-A^3)^(-w) <D>` from the naive bracket.
pub fn naive_f_poly(d: &Diagram) -> LaurentPoly {
    let w = d.writhe();
    let sign = if w.rem_euclid(2) == 0 { 1 } else { -1 };
    naive_bracket(d).shift(-3 * w).scale(sign)
}

/// Colorings counted over all `n^arcs` assignments, for a quandle given by
/// `op`, with the rule: outgoing under arc = incoming under arc ▷ over arc.
/// Arcs run from one under-passage exit to the next under-passage entry.
pub fn brute_colorings(d: &Diagram, n: usize, op: impl Fn(usize, usize) -> usize) -> u128 {
    let data = d.data();
    let mut role_of = vec![(0usize, 0usize); d.num_darts()]; // (vertex, slot in over_under)
    for (v, deco) in data.over_under.iter().enumerate() {
        for (slot, &x) in deco.iter().enumerate() {
            role_of[x] = (v, slot);
        }
    }
    let mut arc = vec![usize::MAX; d.num_darts()];
    let mut arcs = 0;
    // walk each circuit from each under-out dart
    for deco in &data.over_under {
        let start = deco[3];
        if arc[start] != usize::MAX {
            continue;
        }
        let mut x = start;
        loop {
            arc[x] = arcs;
            let y = data.edge_involution[x];
            arc[y] = arcs;
            let (w, slot) = role_of[y];
            if slot == 2 {
                break;
            }
            x = data.over_under[w][1];
        }
        arcs += 1;
    }
    // circuits passing only over: one arc each
    for deco in &data.over_under {
        if arc[deco[0]] != usize::MAX {
            continue;
        }
        let mut x = deco[0];
        while arc[x] == usize::MAX {
            arc[x] = arcs;
            let (w, _) = role_of[x];
            let out = data.over_under[w][1];
            arc[out] = arcs;
            x = data.edge_involution[out];
        }
        arcs += 1;
    }
    let mut count = 0u128;
    let mut colors = vec![0usize; arcs];
    'outer: loop {
        let ok = data
            .over_under
            .iter()
            .all(|deco| colors[arc[deco[3]]] == op(colors[arc[deco[2]]], colors[arc[deco[0]]]));
        if ok {
            count += 1;
        }
        for c in colors.iter_mut() {
            *c += 1;
            if *c < n {
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }
    count * (n as u128).pow(d.free_loops() as u32)
}

pub fn dihedral(n: usize) -> impl Fn(usize, usize) -> usize {
    move |x, y| (2 * y + n - x) % n
}

/// True iff some bijection of darts carries one map onto the other,
/// found by trying every vertex bijection and rotation offset.
pub fn brute_isomorphic(a: &Diagram, b: &Diagram) -> bool {
    if a.num_crossings() != b.num_crossings() || a.free_loops() != b.free_loops() {
        return false;
    }
    let n = a.num_crossings();
    let (da, db) = (a.data(), b.data());
    let mut perm: Vec<usize> = (0..n).collect();
    let mut found = false;
    permute(&mut perm, 0, &mut |perm| {
        if found {
            return;
        }
        for shifts in 0..4usize.pow(n as u32) {
            let mut map = vec![0; a.num_darts()];
            for v in 0..n {
                let s = shifts / 4usize.pow(v as u32) % 4;
                for k in 0..4 {
                    map[da.vertex_rotations[v][k]] = db.vertex_rotations[perm[v]][(k + s) % 4];
                }
            }
            let edges = (0..a.num_darts())
                .all(|x| map[da.edge_involution[x]] == db.edge_involution[map[x]]);
            let decorations = (0..n).all(|v| da.over_under[v].map(|x| map[x]) == db.over_under[perm[v]]);
            if edges && decorations {
                found = true;
                return;
            }
        }
    });
    found
}

fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// The same map under a random renaming of darts and crossings and random
/// starting points of the rotations.
pub fn relabel(d: &Diagram, rng: &mut impl Rng) -> Diagram {
    let data = d.data();
    let mut dart_perm: Vec<usize> = (0..d.num_darts()).collect();
    dart_perm.shuffle(rng);
    let mut vertex_order: Vec<usize> = (0..d.num_crossings()).collect();
    vertex_order.shuffle(rng);
    let mut edge_involution = vec![0; d.num_darts()];
    for x in 0..d.num_darts() {
        edge_involution[dart_perm[x]] = dart_perm[data.edge_involution[x]];
    }
    let vertex_rotations = vertex_order
        .iter()
        .map(|&v| {
            let s = rng.gen_range(0..4);
            let r = data.vertex_rotations[v];
            std::array::from_fn(|k| dart_perm[r[(k + s) % 4]])
        })
        .collect();
    let over_under = vertex_order
        .iter()
        .map(|&v| data.over_under[v].map(|x| dart_perm[x]))
        .collect();
    Diagram::new(DiagramData {
        darts: d.num_darts(),
        edge_involution,
        vertex_rotations,
        over_under,
        free_loops: d.free_loops(),
    })
    .expect("relabeling preserves validity")
}
