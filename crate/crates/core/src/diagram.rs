//! Virtual link diagrams as oriented, decorated, 4-valent combinatorial maps.
//!
//! A diagram with `V` crossings has `4V` darts (half-edges). The edge
//! involution pairs every outbound dart with an inbound one, each crossing
//! lists its four darts in counterclockwise order, and the decoration names
//! which opposite pair carries the overstrand. Crossing-free circles are kept
//! as a plain counter so the map stays strictly 4-valent.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::codec::{self, Role, SignedGaussCode, Token};
use crate::error::{Error, Result};

pub type Dart = usize;
pub type Vertex = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// The four darts of a crossing, by strand role and direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub over_in: Dart,
    pub over_out: Dart,
    pub under_in: Dart,
    pub under_out: Dart,
}

impl Crossing {
    fn from_array([over_in, over_out, under_in, under_out]: [Dart; 4]) -> Self {
        Crossing {
            over_in,
            over_out,
            under_in,
            under_out,
        }
    }
}

/// Unchecked map data; also the JSON wire format.
///
/// `over_under[v]` is `[over_in, over_out, under_in, under_out]`, which fixes
/// both the strand decoration and the orientation at crossing `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramData {
    pub darts: usize,
    pub edge_involution: Vec<Dart>,
    pub vertex_rotations: Vec<[Dart; 4]>,
    pub over_under: Vec<[Dart; 4]>,
    pub free_loops: usize,
}

/// A broken invariant found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DartCount { declared: usize, expected: usize },
    EdgeTableLength { declared: usize, actual: usize },
    DecorationCount { rotations: usize, decorations: usize },
    DartOutOfRange { vertex: Option<Vertex>, dart: Dart },
    RepeatedDart { dart: Dart },
    MissingDart { dart: Dart },
    DecorationDarts { vertex: Vertex },
    PairsNotOpposite { vertex: Vertex },
    EdgeFixedPoint { dart: Dart },
    EdgeNotInvolution { dart: Dart },
    EdgeOrientation { dart: Dart },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DartCount { declared, expected } => {
                write!(f, "dart count {declared} but 4 per vertex requires {expected}")
            }
            Violation::EdgeTableLength { declared, actual } => {
                write!(f, "edge involution has {actual} entries for {declared} darts")
            }
            Violation::DecorationCount {
                rotations,
                decorations,
            } => write!(f, "{rotations} vertex rotations but {decorations} decorations"),
            Violation::DartOutOfRange {
                vertex: Some(v),
                dart,
            } => write!(f, "vertex {v}: dart {dart} out of range"),
            Violation::DartOutOfRange { vertex: None, dart } => {
                write!(f, "edge involution maps to out-of-range dart {dart}")
            }
            Violation::RepeatedDart { dart } => {
                write!(f, "dart {dart} appears in more than one rotation slot")
            }
            Violation::MissingDart { dart } => write!(f, "dart {dart} belongs to no vertex"),
            Violation::DecorationDarts { vertex } => write!(
                f,
                "vertex {vertex}: strand decoration does not use the rotation's darts"
            ),
            Violation::PairsNotOpposite { vertex } => write!(
                f,
                "vertex {vertex}: over and under pairs are not opposite dart pairs"
            ),
            Violation::EdgeFixedPoint { dart } => {
                write!(f, "edge involution has fixed point at dart {dart}")
            }
            Violation::EdgeNotInvolution { dart } => {
                write!(f, "edge involution is not an involution at dart {dart}")
            }
            Violation::EdgeOrientation { dart } => write!(
                f,
                "edge at dart {dart} does not join an outbound dart to an inbound dart"
            ),
        }
    }
}

/// Checks every structural invariant; the result is empty iff `data` is a valid diagram.
pub fn validate(data: &DiagramData) -> Vec<Violation> {
    let mut out = Vec::new();
    let vertices = data.vertex_rotations.len();
    if data.darts != 4 * vertices {
        out.push(Violation::DartCount {
            declared: data.darts,
            expected: 4 * vertices,
        });
    }
    if data.edge_involution.len() != data.darts {
        out.push(Violation::EdgeTableLength {
            declared: data.darts,
            actual: data.edge_involution.len(),
        });
    }
    if data.over_under.len() != vertices {
        out.push(Violation::DecorationCount {
            rotations: vertices,
            decorations: data.over_under.len(),
        });
    }
    if !out.is_empty() {
        return out;
    }

    let n = data.darts;
    let mut owner: Vec<Option<(Vertex, usize)>> = vec![None; n];
    for (v, rot) in data.vertex_rotations.iter().enumerate() {
        for (pos, &d) in rot.iter().enumerate() {
            if d >= n {
                out.push(Violation::DartOutOfRange {
                    vertex: Some(v),
                    dart: d,
                });
            } else if owner[d].is_some() {
                out.push(Violation::RepeatedDart { dart: d });
            } else {
                owner[d] = Some((v, pos));
            }
        }
    }
    for (d, o) in owner.iter().enumerate() {
        if o.is_none() && !out.iter().any(|v| matches!(v, Violation::DartOutOfRange { .. })) {
            out.push(Violation::MissingDart { dart: d });
        }
    }
    if !out.is_empty() {
        return out;
    }

    let mut inbound = vec![false; n];
    let mut decoration_ok = true;
    for (v, deco) in data.over_under.iter().enumerate() {
        let mut sorted_deco = *deco;
        sorted_deco.sort_unstable();
        let mut sorted_rot = data.vertex_rotations[v];
        sorted_rot.sort_unstable();
        if sorted_deco != sorted_rot {
            out.push(Violation::DecorationDarts { vertex: v });
            decoration_ok = false;
            continue;
        }
        let pos = |d: Dart| owner[d].map(|(_, p)| p).unwrap_or(0);
        let [oi, oo, ui, _] = *deco;
        // the under pair is opposite iff the over pair is
        if (pos(oi) + 2) % 4 != pos(oo) {
            out.push(Violation::PairsNotOpposite { vertex: v });
            decoration_ok = false;
        }
        inbound[oi] = true;
        inbound[ui] = true;
    }

    for (d, &e) in data.edge_involution.iter().enumerate() {
        if e >= n {
            out.push(Violation::DartOutOfRange {
                vertex: None,
                dart: e,
            });
        } else if e == d {
            out.push(Violation::EdgeFixedPoint { dart: d });
        } else if data.edge_involution[e] != d {
            out.push(Violation::EdgeNotInvolution { dart: d });
        } else if decoration_ok && d < e && inbound[d] == inbound[e] {
            out.push(Violation::EdgeOrientation { dart: d });
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
struct DartInfo {
    vertex: u32,
    pos: u8,
    inbound: bool,
    over: bool,
}

/// A validated virtual link diagram. Immutable; moves build new values.
#[derive(Clone, Debug)]
pub struct Diagram {
    data: DiagramData,
    info: Vec<DartInfo>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data
    }
}

impl Eq for Diagram {}

impl std::hash::Hash for Diagram {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.data.hash(state)
    }
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.data.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let data = DiagramData::deserialize(deserializer)?;
        Diagram::new(data).map_err(serde::de::Error::custom)
    }
}

/// Crossing count, link component count and writhe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramStats {
    pub crossings: usize,
    pub components: usize,
    pub writhe: i32,
}

impl Diagram {
    pub fn new(data: DiagramData) -> Result<Self> {
        let violations = validate(&data);
        if !violations.is_empty() {
            return Err(Error::InvalidDiagram(violations));
        }
        let mut info = vec![
            DartInfo {
                vertex: 0,
                pos: 0,
                inbound: false,
                over: false,
            };
            data.darts
        ];
        for (v, rot) in data.vertex_rotations.iter().enumerate() {
            for (pos, &d) in rot.iter().enumerate() {
                info[d].vertex = v as u32;
                info[d].pos = pos as u8;
            }
            let [oi, oo, ui, _] = data.over_under[v];
            info[oi].inbound = true;
            info[ui].inbound = true;
            info[oi].over = true;
            info[oo].over = true;
        }
        Ok(Diagram { data, info })
    }

    /// The crossing-free diagram of `free_loops` unlinked circles.
    pub fn unlink(free_loops: usize) -> Self {
        Diagram {
            data: DiagramData {
                free_loops,
                ..DiagramData::default()
            },
            info: Vec::new(),
        }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let data: DiagramData = serde_json::from_str(text)?;
        Diagram::new(data)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.data).expect("diagram data always serializes")
    }

    pub fn data(&self) -> &DiagramData {
        &self.data
    }

    pub fn into_data(self) -> DiagramData {
        self.data
    }

    /// Re-runs the structural checks. Always empty for a constructed `Diagram`.
    pub fn validate(&self) -> Vec<Violation> {
        validate(&self.data)
    }

    pub fn num_crossings(&self) -> usize {
        self.data.vertex_rotations.len()
    }

    pub fn num_darts(&self) -> usize {
        self.data.darts
    }

    pub fn free_loops(&self) -> usize {
        self.data.free_loops
    }

    pub fn is_empty(&self) -> bool {
        self.num_crossings() == 0 && self.free_loops() == 0
    }

    #[inline]
    pub fn edge(&self, d: Dart) -> Dart {
        self.data.edge_involution[d]
    }

    #[inline]
    pub fn vertex(&self, d: Dart) -> Vertex {
        self.info[d].vertex as Vertex
    }

    #[inline]
    pub fn position(&self, d: Dart) -> usize {
        self.info[d].pos as usize
    }

    pub fn rotation(&self, v: Vertex) -> [Dart; 4] {
        self.data.vertex_rotations[v]
    }

    /// Next dart counterclockwise around the same crossing.
    #[inline]
    pub fn next_ccw(&self, d: Dart) -> Dart {
        self.data.vertex_rotations[self.vertex(d)][(self.position(d) + 1) % 4]
    }

    #[inline]
    pub fn prev_ccw(&self, d: Dart) -> Dart {
        self.data.vertex_rotations[self.vertex(d)][(self.position(d) + 3) % 4]
    }

    /// The dart across the crossing: where a strand entering at `d` leaves.
    #[inline]
    pub fn opposite(&self, d: Dart) -> Dart {
        self.data.vertex_rotations[self.vertex(d)][(self.position(d) + 2) % 4]
    }

    #[inline]
    pub fn is_inbound(&self, d: Dart) -> bool {
        self.info[d].inbound
    }

    #[inline]
    pub fn is_over(&self, d: Dart) -> bool {
        self.info[d].over
    }

    pub fn crossing(&self, v: Vertex) -> Crossing {
        Crossing::from_array(self.data.over_under[v])
    }

    /// Positive when the ccw order starting at over-in is (over-in, under-in, over-out, under-out).
    pub fn sign(&self, v: Vertex) -> Sign {
        let c = self.crossing(v);
        if (self.position(c.over_in) + 1) % 4 == self.position(c.under_in) {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn writhe(&self) -> i32 {
        (0..self.num_crossings()).map(|v| self.sign(v).value()).sum()
    }

    /// Strand circuits as sequences of inbound darts, each starting at the
    /// least inbound dart not already covered.
    pub fn circuits(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; self.num_darts()];
        let mut out = Vec::new();
        for start in 0..self.num_darts() {
            if !self.is_inbound(start) || seen[start] {
                continue;
            }
            let mut circuit = Vec::new();
            let mut d = start;
            loop {
                seen[d] = true;
                circuit.push(d);
                d = self.edge(self.opposite(d));
                if d == start {
                    break;
                }
            }
            out.push(circuit);
        }
        out
    }

    /// Connected components of the underlying 4-valent graph, each sorted,
    /// ordered by least vertex.
    pub fn graph_components(&self) -> Vec<Vec<Vertex>> {
        let n = self.num_crossings();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for d in 0..self.num_darts() {
            let (a, b) = (
                find(&mut parent, self.vertex(d)),
                find(&mut parent, self.vertex(self.edge(d))),
            );
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<Vertex>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(v);
        }
        groups
    }

    pub fn stats(&self) -> DiagramStats {
        DiagramStats {
            crossings: self.num_crossings(),
            components: self.circuits().len() + self.free_loops(),
            writhe: self.writhe(),
        }
    }

    /// Swaps over and under at every crossing.
    pub fn mirror(&self) -> Diagram {
        let mut data = self.data.clone();
        for deco in &mut data.over_under {
            let [oi, oo, ui, uo] = *deco;
            *deco = [ui, uo, oi, oo];
        }
        Diagram::new(data).expect("mirroring preserves validity")
    }

    /// Places `other` beside `self`; darts and crossings of `other` are shifted past ours.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let shift = self.num_darts();
        let mut data = self.data.clone();
        data.darts += other.num_darts();
        data.edge_involution
            .extend(other.data.edge_involution.iter().map(|d| d + shift));
        data.vertex_rotations
            .extend(other.data.vertex_rotations.iter().map(|r| r.map(|d| d + shift)));
        data.over_under
            .extend(other.data.over_under.iter().map(|r| r.map(|d| d + shift)));
        data.free_loops += other.free_loops();
        Diagram::new(data).expect("disjoint union of valid diagrams is valid")
    }

    /// Isomorphism-invariant text: a signed Gauss code that is the least
    /// traversal over all starting darts, per connected component, with the
    /// component codes sorted and free loops last.
    pub fn canonical_string(&self) -> String {
        codec::emit_gauss(&self.canonical_code())
    }

    pub fn canonical_code(&self) -> SignedGaussCode {
        let mut parts: Vec<Vec<Vec<Token>>> = self
            .graph_components()
            .iter()
            .map(|vertices| self.least_component_code(vertices))
            .collect();
        parts.sort();
        let mut components = Vec::new();
        let mut offset = 0;
        for part in parts {
            let mut count = 0;
            for circuit in part {
                components.push(
                    circuit
                        .into_iter()
                        .map(|t| {
                            count = count.max(t.crossing);
                            Token {
                                crossing: t.crossing + offset,
                                ..t
                            }
                        })
                        .collect(),
                );
            }
            offset += count;
        }
        SignedGaussCode {
            components,
            free_loops: self.free_loops(),
        }
    }

    fn least_component_code(&self, vertices: &[Vertex]) -> Vec<Vec<Token>> {
        let mut best: Option<Vec<Vec<Token>>> = None;
        let mut labels = vec![0u32; self.num_crossings()];
        let mut walked = vec![false; self.num_darts()];
        for &v in vertices {
            let c = self.crossing(v);
            for start in [c.over_in, c.under_in] {
                let code = self.traverse_from(start, &mut labels, &mut walked);
                for &u in vertices {
                    labels[u] = 0;
                    let c = self.crossing(u);
                    walked[c.over_in] = false;
                    walked[c.under_in] = false;
                }
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap_or_default()
    }

    /// Deterministic traversal of the component containing `start`: walk its
    /// circuit, then continue with the lowest-labelled crossing that still has
    /// an unwalked strand, entering that strand at its inbound dart.
    fn traverse_from(&self, start: Dart, labels: &mut [u32], walked: &mut [bool]) -> Vec<Vec<Token>> {
        let mut order: Vec<Vertex> = Vec::new();
        let mut code = Vec::new();
        let mut next_start = Some(start);
        let mut scan = 0;
        while let Some(s) = next_start {
            let mut circuit = Vec::new();
            let mut d = s;
            loop {
                walked[d] = true;
                let v = self.vertex(d);
                if labels[v] == 0 {
                    order.push(v);
                    labels[v] = order.len() as u32;
                }
                circuit.push(Token {
                    role: if self.is_over(d) { Role::Over } else { Role::Under },
                    crossing: labels[v],
                    sign: self.sign(v),
                });
                d = self.edge(self.opposite(d));
                if d == s {
                    break;
                }
            }
            code.push(circuit);
            next_start = None;
            while scan < order.len() {
                let c = self.crossing(order[scan]);
                if let Some(&d) = [c.over_in, c.under_in].iter().find(|&&d| !walked[d]) {
                    next_start = Some(d);
                    break;
                }
                scan += 1;
            }
        }
        code
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{parse_gauss, to_diagram};

    fn diagram(code: &str) -> Diagram {
        to_diagram(&parse_gauss(code).unwrap())
    }

    #[test]
    fn stats_of_reference_diagrams() {
        let trefoil = diagram("O1+ U2+ O3+ U1+ O2+ U3+").stats();
        assert_eq!((trefoil.crossings, trefoil.components, trefoil.writhe), (3, 1, 3));
        let virtual_trefoil = diagram("O1+ O2+ U1+ U2+").stats();
        assert_eq!(
            (virtual_trefoil.crossings, virtual_trefoil.components, virtual_trefoil.writhe),
            (2, 1, 2)
        );
        let unknot = Diagram::unknot().stats();
        assert_eq!((unknot.crossings, unknot.components, unknot.writhe), (0, 1, 0));
    }

    #[test]
    fn adjacent_over_pair_is_reported() {
        let mut data = diagram("O1+ U1+").into_data();
        let [oi, oo, ui, uo] = data.over_under[0];
        // over-in next to under-in in the rotation: pair them as "over"
        data.over_under[0] = [oi, ui, oo, uo];
        let violations = validate(&data);
        assert_eq!(violations, vec![Violation::PairsNotOpposite { vertex: 0 }]);
    }

    #[test]
    fn fixed_point_is_reported() {
        let mut data = diagram("O1+ U1+").into_data();
        let d = 0;
        let e = data.edge_involution[d];
        data.edge_involution[d] = d;
        data.edge_involution[e] = e;
        let violations = validate(&data);
        assert!(violations.contains(&Violation::EdgeFixedPoint { dart: d }));
        assert!(violations[0].to_string().starts_with("edge involution has fixed point"));
    }

    #[test]
    fn wrong_counts_are_reported() {
        let mut data = diagram("O1+ U1+").into_data();
        data.darts = 5;
        assert!(matches!(validate(&data)[0], Violation::DartCount { .. }));
    }

    #[test]
    fn mirror_negates_writhe_and_is_involutive() {
        let d = diagram("O1+ U2- O3+ U1+ O2- U3+");
        assert_eq!(d.mirror().writhe(), -d.writhe());
        assert_eq!(d.mirror().mirror(), d);
    }

    #[test]
    fn disjoint_union_adds_stats() {
        let a = diagram("O1+ U2+ O3+ U1+ O2+ U3+");
        let b = diagram("O1- O2- U1- U2-");
        let u = a.disjoint_union(&b);
        assert_eq!(u.stats().crossings, 5);
        assert_eq!(u.stats().components, 2);
        assert_eq!(u.stats().writhe, 1);
        assert_eq!(a.disjoint_union(&Diagram::unlink(0)), a);
        let two = Diagram::unknot().disjoint_union(&Diagram::unknot());
        assert_eq!((two.free_loops(), two.stats().components), (2, 2));
    }

    #[test]
    fn canonical_string_ignores_labels() {
        let a = diagram("O1+ O2+ U1+ U2+");
        let b = diagram("U7+ U3+ O7+ O3+");
        assert_eq!(a.canonical_string(), b.canonical_string());
        assert_ne!(
            a.canonical_string(),
            diagram("O1+ U2+ O3+ U1+ O2+ U3+").canonical_string()
        );
        let again = diagram(&a.canonical_string());
        assert_eq!(again.canonical_string(), a.canonical_string());
    }

    #[test]
    fn canonical_string_of_split_link_sorts_parts() {
        let ab = diagram("O1+ U1+ / O2- U3- O4- U2- O3- U4-");
        let ba = diagram("O1- U2- O3- U1- O2- U3- / U4+ O4+");
        assert_eq!(ab.canonical_string(), ba.canonical_string());
    }

    #[test]
    fn json_round_trip() {
        let d = diagram("O1+ U2- / U1+ O2- / *");
        let back = Diagram::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        assert!(d.to_json().contains("\"edge_involution\""));
    }
}
