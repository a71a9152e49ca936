//! Reidemeister moves on the abstract decorated map.
//!
//! Sites are found from the face structure of the Carter surface: R1 acts on
//! monogon faces, R2 on bigon faces with a strand over at both corners, R3 on
//! triangle faces with one strand over at both of its corners. Additions are
//! parameterized by edges (R1) or by pairs of edge sides (R2). An R2 addition
//! between two different faces of one surface component adds a handle, and
//! the removal of such a bigon takes one away; both are kept apart as the
//! `stab` kinds.

use std::collections::BTreeSet;
use std::fmt;

use crate::diagram::{Dart, Diagram, DiagramData, Vertex};
use crate::error::{Error, Result};
use crate::surface;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Add,
    R1Remove,
    R2Add,
    R2Remove,
    R2AddStab,
    R2RemoveStab,
    R3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 7] = [
        MoveKind::R1Add,
        MoveKind::R1Remove,
        MoveKind::R2Add,
        MoveKind::R2Remove,
        MoveKind::R2AddStab,
        MoveKind::R2RemoveStab,
        MoveKind::R3,
    ];

    /// Moves that keep the supporting surface's genus.
    pub const PLAIN: [MoveKind; 5] = [
        MoveKind::R1Add,
        MoveKind::R1Remove,
        MoveKind::R2Add,
        MoveKind::R2Remove,
        MoveKind::R3,
    ];

    /// Crossing count change.
    pub fn delta(self) -> isize {
        match self {
            MoveKind::R1Add => 1,
            MoveKind::R1Remove => -1,
            MoveKind::R2Add | MoveKind::R2AddStab => 2,
            MoveKind::R2Remove | MoveKind::R2RemoveStab => -2,
            MoveKind::R3 => 0,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::R1Add => "R1+",
            MoveKind::R1Remove => "R1-",
            MoveKind::R2Add => "R2+",
            MoveKind::R2Remove => "R2-",
            MoveKind::R2AddStab => "R2+stab",
            MoveKind::R2RemoveStab => "R2-stab",
            MoveKind::R3 => "R3",
        })
    }
}

impl std::str::FromStr for MoveKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| format!("unknown move kind {s:?}"))
    }
}

/// One side of an edge, or of a free loop.
///
/// `Dart(x)` is the edge through `x` seen from the face of `x`, which is the
/// strand's right side when `x` is outbound and its left side otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Dart(Dart),
    Loop { index: usize, right: bool },
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Dart(x) => write!(f, "d{x}"),
            Side::Loop { index, right } => {
                write!(f, "loop{index}{}", if *right { "R" } else { "L" })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Location {
    /// The edge leaving outbound dart `o`.
    Edge(Dart),
    Loop(usize),
    Vertex(Vertex),
    /// Two crossings bounding a bigon face, lower index first.
    Bigon(Vertex, Vertex),
    /// The first side carries the strand listed first at each new crossing;
    /// on a shared edge it is also the one met first.
    Sides(Side, Side),
    /// Least dart of a triangle face.
    Triangle(Dart),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Edge(o) => write!(f, "edge d{o}"),
            Location::Loop(j) => write!(f, "loop{j}"),
            Location::Vertex(v) => write!(f, "vertex {v}"),
            Location::Bigon(v, w) => write!(f, "bigon {v},{w}"),
            Location::Sides(p, q) => write!(f, "sides {p},{q}"),
            Location::Triangle(x) => write!(f, "triangle d{x}"),
        }
    }
}

/// A place where a move applies.
///
/// `variant` selects the local configuration of an addition: for R1+ bit 0
/// picks which side of the strand the loop lies on and bit 1 whether the
/// strand passes under first; for R2+ bit 0 set means the first side's strand
/// goes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveSite {
    pub kind: MoveKind,
    pub location: Location,
    pub variant: u8,
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.location)?;
        match self.kind {
            MoveKind::R1Add | MoveKind::R2Add | MoveKind::R2AddStab => {
                write!(f, " v{}", self.variant)
            }
            _ => Ok(()),
        }
    }
}

/// All sites of the requested kinds, sorted and without repeats.
pub fn enumerate_moves(d: &Diagram, kinds: &[MoveKind]) -> Vec<MoveSite> {
    let want = |k: MoveKind| kinds.contains(&k);
    let mut out = Vec::new();
    if want(MoveKind::R1Add) {
        r1_add_sites(d, &mut out);
    }
    if want(MoveKind::R1Remove) {
        r1_remove_sites(d, &mut out);
    }
    if want(MoveKind::R2Add) || want(MoveKind::R2AddStab) {
        r2_add_sites(d, want(MoveKind::R2Add), want(MoveKind::R2AddStab), &mut out);
    }
    if want(MoveKind::R2Remove) || want(MoveKind::R2RemoveStab) {
        r2_remove_sites(d, want(MoveKind::R2Remove), want(MoveKind::R2RemoveStab), &mut out);
    }
    if want(MoveKind::R3) {
        r3_sites(d, &mut out);
    }
    out.sort();
    out.dedup();
    out
}

/// Applies `site` after confirming it is one of the sites of `d`.
pub fn apply_move(d: &Diagram, site: &MoveSite) -> Result<Diagram> {
    if enumerate_moves(d, &[site.kind]).binary_search(site).is_err() {
        return Err(Error::StaleSite(site.to_string()));
    }
    Ok(apply_unchecked(d, site))
}

/// Applies a site produced by [`enumerate_moves`] on this same diagram.
pub fn apply_unchecked(d: &Diagram, site: &MoveSite) -> Diagram {
    match (site.kind, site.location) {
        (MoveKind::R1Add, Location::Edge(o)) => r1_add(d, Some(o), site.variant),
        (MoveKind::R1Add, Location::Loop(_)) => r1_add(d, None, site.variant),
        (MoveKind::R1Remove, Location::Vertex(v)) => bypass(d, &[v]),
        (MoveKind::R2Remove | MoveKind::R2RemoveStab, Location::Bigon(v, w)) => bypass(d, &[v, w]),
        (MoveKind::R2Add | MoveKind::R2AddStab, Location::Sides(p, q)) => {
            r2_add(d, p, q, site.variant & 1 == 1)
        }
        (MoveKind::R3, Location::Triangle(x)) => r3(d, x),
        _ => panic!("site {site} has a location of the wrong shape"),
    }
}

/// Removes monogons and bigons until none is left. Never adds crossings.
pub fn simplify_greedy(d: &Diagram) -> Diagram {
    const REMOVALS: [MoveKind; 3] = [
        MoveKind::R1Remove,
        MoveKind::R2Remove,
        MoveKind::R2RemoveStab,
    ];
    let mut current = d.clone();
    while let Some(site) = enumerate_moves(&current, &REMOVALS).first() {
        current = apply_unchecked(&current, site);
    }
    current
}

fn r1_add_sites(d: &Diagram, out: &mut Vec<MoveSite>) {
    let locations = (0..d.num_darts())
        .filter(|&x| !d.is_inbound(x))
        .map(Location::Edge)
        .chain((0..d.free_loops()).map(Location::Loop));
    for location in locations {
        for variant in 0..4 {
            out.push(MoveSite {
                kind: MoveKind::R1Add,
                location,
                variant,
            });
        }
    }
}

fn is_monogon(d: &Diagram, x: Dart) -> bool {
    d.next_ccw(d.edge(x)) == x
}

fn r1_remove_sites(d: &Diagram, out: &mut Vec<MoveSite>) {
    for v in 0..d.num_crossings() {
        if d.rotation(v).iter().any(|&x| is_monogon(d, x)) {
            out.push(MoveSite {
                kind: MoveKind::R1Remove,
                location: Location::Vertex(v),
                variant: 0,
            });
        }
    }
}

/// Where a side sits: (surface component, face). Loops get their own slots
/// past the crossing components and faces.
fn side_place(d: &Diagram, faces: &(Vec<usize>, usize), comp: &[usize], s: Side) -> (usize, usize) {
    match s {
        Side::Dart(x) => (comp[d.vertex(x)], faces.0[x]),
        Side::Loop { index, right } => (usize::MAX - index, faces.1 + 2 * index + usize::from(right)),
    }
}

/// The edge carrying a side, as (outbound dart, inbound dart).
fn side_edge(d: &Diagram, x: Dart) -> (Dart, Dart) {
    if d.is_inbound(x) {
        (d.edge(x), x)
    } else {
        (x, d.edge(x))
    }
}

fn r2_add_sites(d: &Diagram, plain: bool, stab: bool, out: &mut Vec<MoveSite>) {
    let faces = surface::face_index(d);
    let mut comp = vec![0; d.num_crossings()];
    for (k, vs) in d.graph_components().iter().enumerate() {
        for &v in vs {
            comp[v] = k;
        }
    }
    let sides: Vec<Side> = (0..d.num_darts())
        .map(Side::Dart)
        .chain((0..d.free_loops()).flat_map(|index| {
            [false, true].map(|right| Side::Loop { index, right })
        }))
        .collect();
    let carrier = |s: Side| match s {
        Side::Dart(x) => Some(side_edge(d, x).0),
        Side::Loop { .. } => None,
    };
    let same_loop = |p: Side, q: Side| match (p, q) {
        (Side::Loop { index: i, .. }, Side::Loop { index: j, .. }) => i == j,
        _ => false,
    };
    for &p in &sides {
        for &q in &sides {
            let shared_edge = carrier(p).is_some() && carrier(p) == carrier(q);
            // order along a shared edge matters; otherwise the pair is unordered
            if !shared_edge && p > q {
                continue;
            }
            if !shared_edge && !same_loop(p, q) && p == q {
                continue;
            }
            let (cp, fp) = side_place(d, &faces, &comp, p);
            let (cq, fq) = side_place(d, &faces, &comp, q);
            let kind = if cp == cq && fp != fq {
                MoveKind::R2AddStab
            } else {
                MoveKind::R2Add
            };
            if (kind == MoveKind::R2Add && !plain) || (kind == MoveKind::R2AddStab && !stab) {
                continue;
            }
            for variant in 0..2 {
                out.push(MoveSite {
                    kind,
                    location: Location::Sides(p, q),
                    variant,
                });
            }
        }
    }
}

fn r2_remove_sites(d: &Diagram, plain: bool, stab: bool, out: &mut Vec<MoveSite>) {
    let genus = surface::genus(d).1;
    let mut pairs = BTreeSet::new();
    for x in 0..d.num_darts() {
        let y = d.next_ccw(d.edge(x));
        if y == x || d.next_ccw(d.edge(y)) != x {
            continue;
        }
        let (v, w) = (d.vertex(x), d.vertex(y));
        let coherent = d.is_over(x) == d.is_over(d.edge(x)) && d.is_over(y) == d.is_over(d.edge(y));
        if v != w && coherent {
            pairs.insert((v.min(w), v.max(w)));
        }
    }
    for (v, w) in pairs {
        let kind = if surface::genus(&bypass(d, &[v, w])).1 < genus {
            MoveKind::R2RemoveStab
        } else {
            MoveKind::R2Remove
        };
        if (kind == MoveKind::R2Remove && plain) || (kind == MoveKind::R2RemoveStab && stab) {
            out.push(MoveSite {
                kind,
                location: Location::Bigon(v, w),
                variant: 0,
            });
        }
    }
}

/// Darts of a triangle face at three distinct crossings, starting at `x`.
fn triangle(d: &Diagram, x: Dart) -> Option<[Dart; 3]> {
    let y = d.next_ccw(d.edge(x));
    let z = d.next_ccw(d.edge(y));
    if d.next_ccw(d.edge(z)) != x {
        return None;
    }
    let (a, b, c) = (d.vertex(x), d.vertex(y), d.vertex(z));
    (a != b && b != c && a != c).then_some([x, y, z])
}

fn r3_sites(d: &Diagram, out: &mut Vec<MoveSite>) {
    for x in 0..d.num_darts() {
        let Some(face) = triangle(d, x) else { continue };
        if face.iter().min() != Some(&x) {
            continue;
        }
        if face.iter().any(|&y| d.is_over(y) && d.is_over(d.edge(y))) {
            out.push(MoveSite {
                kind: MoveKind::R3,
                location: Location::Triangle(x),
                variant: 0,
            });
        }
    }
}

/// Mutable map data with room for new crossings.
struct Builder {
    data: DiagramData,
}

impl Builder {
    fn new(d: &Diagram) -> Self {
        Builder {
            data: d.data().clone(),
        }
    }

    fn darts<const N: usize>(&mut self) -> [Dart; N] {
        let first = self.data.darts;
        self.data.darts += N;
        self.data.edge_involution.resize(self.data.darts, usize::MAX);
        std::array::from_fn(|k| first + k)
    }

    fn link(&mut self, out: Dart, inbound: Dart) {
        self.data.edge_involution[out] = inbound;
        self.data.edge_involution[inbound] = out;
    }

    fn crossing(&mut self, rotation: [Dart; 4], over_under: [Dart; 4]) {
        self.data.vertex_rotations.push(rotation);
        self.data.over_under.push(over_under);
    }

    fn finish(self) -> Diagram {
        Diagram::new(self.data).expect("moves preserve validity")
    }
}

fn r1_add(d: &Diagram, edge: Option<Dart>, variant: u8) -> Diagram {
    let mut b = Builder::new(d);
    // strand enters at a, leaves at o1, loops back in at i1 and leaves at o2
    let [a, o1, i1, o2] = b.darts::<4>();
    let rotation = if variant & 1 == 0 {
        [a, i1, o1, o2]
    } else {
        [a, o2, o1, i1]
    };
    let over_under = if variant & 2 == 0 {
        [a, o1, i1, o2]
    } else {
        [i1, o2, a, o1]
    };
    b.crossing(rotation, over_under);
    b.link(o1, i1);
    match edge {
        Some(o) => {
            let i = d.edge(o);
            b.link(o, a);
            b.link(o2, i);
        }
        None => {
            b.data.free_loops -= 1;
            b.link(o2, a);
        }
    }
    b.finish()
}

/// Entry dart, exit dart and internal link of a strand run through two new crossings.
struct Run {
    entry: Dart,
    exit: Dart,
}

fn is_right_side(d: &Diagram, s: Side) -> bool {
    match s {
        Side::Dart(x) => !d.is_inbound(x),
        Side::Loop { right, .. } => right,
    }
}

/// Pushes a finger of the strand at side `p` across the strand at side `q`.
///
/// Local picture: the strand at `q` runs horizontally through the new
/// crossings X1 (west) and X2 (east); the finger comes down from the north
/// through X1 and returns through X2. Both crossings list their darts
/// counterclockwise from east: E, N, W, S.
fn r2_add(d: &Diagram, p: Side, q: Side, first_over: bool) -> Diagram {
    let mut b = Builder::new(d);
    let [e1, n1, w1, s1] = b.darts::<4>();
    let [e2, n2, w2, s2] = b.darts::<4>();

    // finger strand: west to east iff its side faces the finger on its right
    let (finger, finger_darts) = if is_right_side(d, p) {
        b.link(s1, s2);
        (Run { entry: n1, exit: n2 }, [(n1, s1), (s2, n2)])
    } else {
        b.link(s2, s1);
        (Run { entry: n2, exit: n1 }, [(s1, n1), (n2, s2)])
    };
    // crossed strand: west to east iff the finger lies on its left
    let (crossed, crossed_darts) = if !is_right_side(d, q) {
        b.link(e1, w2);
        (Run { entry: w1, exit: e2 }, [(w1, e1), (w2, e2)])
    } else {
        b.link(w2, e1);
        (Run { entry: e2, exit: w1 }, [(e1, w1), (e2, w2)])
    };

    for k in 0..2 {
        let rotation = [[e1, n1, w1, s1], [e2, n2, w2, s2]][k];
        let (fi, fo) = finger_darts[k];
        let (ci, co) = crossed_darts[k];
        let over_under = if first_over {
            [fi, fo, ci, co]
        } else {
            [ci, co, fi, fo]
        };
        b.crossing(rotation, over_under);
    }

    match (p, q) {
        (Side::Dart(x), Side::Dart(y)) if side_edge(d, x) == side_edge(d, y) => {
            let (o, i) = side_edge(d, x);
            b.link(o, finger.entry);
            b.link(finger.exit, crossed.entry);
            b.link(crossed.exit, i);
        }
        (Side::Loop { index: i, .. }, Side::Loop { index: j, .. }) if i == j => {
            b.data.free_loops -= 1;
            b.link(finger.exit, crossed.entry);
            b.link(crossed.exit, finger.entry);
        }
        _ => {
            for (side, run) in [(p, &finger), (q, &crossed)] {
                match side {
                    Side::Dart(x) => {
                        let (o, i) = side_edge(d, x);
                        b.link(o, run.entry);
                        b.link(run.exit, i);
                    }
                    Side::Loop { .. } => {
                        b.data.free_loops -= 1;
                        b.link(run.exit, run.entry);
                    }
                }
            }
        }
    }
    b.finish()
}

/// Deletes crossings, letting each strand run straight through them.
/// Circuits left without crossings become free loops.
fn bypass(d: &Diagram, removed: &[Vertex]) -> Diagram {
    let gone = |v: Vertex| removed.contains(&v);
    let mut new_dart = vec![usize::MAX; d.num_darts()];
    let mut next = 0;
    for x in 0..d.num_darts() {
        if !gone(d.vertex(x)) {
            new_dart[x] = next;
            next += 1;
        }
    }
    let mut edge_involution = vec![0; next];
    for x in 0..d.num_darts() {
        if gone(d.vertex(x)) || d.is_inbound(x) {
            continue;
        }
        let mut t = d.edge(x);
        while gone(d.vertex(t)) {
            t = d.edge(d.opposite(t));
        }
        edge_involution[new_dart[x]] = new_dart[t];
        edge_involution[new_dart[t]] = new_dart[x];
    }
    let mut free_loops = d.free_loops();
    let mut seen = vec![false; d.num_darts()];
    for &v in removed {
        for x in d.rotation(v) {
            if !d.is_inbound(x) || seen[x] {
                continue;
            }
            let mut closed = true;
            let mut t = x;
            loop {
                seen[t] = true;
                closed &= gone(d.vertex(t));
                t = d.edge(d.opposite(t));
                if t == x {
                    break;
                }
            }
            if closed {
                free_loops += 1;
            }
        }
    }
    let keep = |a: &[Dart; 4]| a.map(|x| new_dart[x]);
    let kept: Vec<Vertex> = (0..d.num_crossings()).filter(|&v| !gone(v)).collect();
    Diagram::new(DiagramData {
        darts: next,
        edge_involution,
        vertex_rotations: kept.iter().map(|&v| keep(&d.data().vertex_rotations[v])).collect(),
        over_under: kept.iter().map(|&v| keep(&d.data().over_under[v])).collect(),
        free_loops,
    })
    .expect("removing crossings preserves validity")
}

/// Each strand crossing the triangle meets its two triangle crossings in
/// the opposite order afterwards; the crossings themselves keep their
/// rotations and decorations.
fn r3(d: &Diagram, x: Dart) -> Diagram {
    let face = triangle(d, x).expect("R3 site is a triangle");
    // inbound dart of the first passage of each triangle edge
    let starts: Vec<Dart> = face
        .iter()
        .map(|&y| {
            let out = if d.is_inbound(y) { d.edge(y) } else { y };
            d.opposite(out)
        })
        .collect();
    let mut data = d.data().clone();
    for mut circuit in d.circuits() {
        let n = circuit.len();
        let firsts: Vec<usize> = (0..n).filter(|&k| starts.contains(&circuit[k])).collect();
        for k in firsts {
            circuit.swap(k, (k + 1) % n);
        }
        for k in 0..n {
            let (out, next_in) = (d.opposite(circuit[k]), circuit[(k + 1) % n]);
            data.edge_involution[out] = next_in;
            data.edge_involution[next_in] = out;
        }
    }
    Diagram::new(data).expect("R3 preserves validity")
}
