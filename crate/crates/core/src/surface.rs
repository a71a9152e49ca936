//! The Carter surface of a diagram: thicken the 4-valent graph into a ribbon
//! surface using the vertex rotations and cap every boundary circle with a
//! disk. Faces are the orbits of `d -> next_ccw(edge(d))`; the orbit of `d`
//! is the face on the right of the edge walked from `d` towards `edge(d)`.
//!
//! A stabilized surface is never stored: the surface is always rebuilt from
//! the projection, so every component carries part of the link and every face
//! is a disk.

use std::fmt;

use crate::diagram::{Dart, Diagram, Vertex};

/// One connected component of the supporting surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceComponent {
    pub vertices: Vec<Vertex>,
    pub faces: usize,
    pub genus: usize,
    /// Link components (strand circuits) drawn on this surface component.
    pub link_components: usize,
}

impl SurfaceComponent {
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertices.len() as i64;
        v - 2 * v + self.faces as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonSurface {
    /// Face boundary walks, each starting at its least dart, sorted by that dart.
    pub faces: Vec<Vec<Dart>>,
    /// Components carrying crossings, ordered by least vertex.
    pub components: Vec<SurfaceComponent>,
    /// Spheres each carrying one free loop.
    pub sphere_components: usize,
}

impl RibbonSurface {
    pub fn build(d: &Diagram) -> Self {
        let faces = trace_faces(d);
        let graph = d.graph_components();
        let mut component_of = vec![0usize; d.num_crossings()];
        for (k, vs) in graph.iter().enumerate() {
            for &v in vs {
                component_of[v] = k;
            }
        }
        let mut face_count = vec![0usize; graph.len()];
        for face in &faces {
            face_count[component_of[d.vertex(face[0])]] += 1;
        }
        let mut circuit_count = vec![0usize; graph.len()];
        for circuit in d.circuits() {
            circuit_count[component_of[d.vertex(circuit[0])]] += 1;
        }
        let components = graph
            .into_iter()
            .enumerate()
            .map(|(k, vertices)| {
                // V - E + F = 2 - 2g with E = 2V
                let chi = face_count[k] as i64 - vertices.len() as i64;
                debug_assert!(chi <= 2 && chi % 2 == 0);
                SurfaceComponent {
                    genus: ((2 - chi) / 2) as usize,
                    faces: face_count[k],
                    vertices,
                    link_components: circuit_count[k],
                }
            })
            .collect();
        RibbonSurface {
            faces,
            components,
            sphere_components: d.free_loops(),
        }
    }

    pub fn total_genus(&self) -> usize {
        self.components.iter().map(|c| c.genus).sum()
    }

    pub fn genus_list(&self) -> Vec<usize> {
        self.components
            .iter()
            .map(|c| c.genus)
            .chain(std::iter::repeat_n(0, self.sphere_components))
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.components.len() + self.sphere_components
    }
}

/// Line-oriented report: one line per surface component, then the total.
impl fmt::Display for RibbonSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut k = 0;
        for c in &self.components {
            writeln!(f, "component {k}: genus {}, faces {}", c.genus, c.faces)?;
            k += 1;
        }
        for _ in 0..self.sphere_components {
            writeln!(f, "component {k}: genus 0, faces 2")?;
            k += 1;
        }
        write!(f, "total genus {}", self.total_genus())
    }
}

pub fn trace_faces(d: &Diagram) -> Vec<Vec<Dart>> {
    let mut seen = vec![false; d.num_darts()];
    let mut faces = Vec::new();
    for start in 0..d.num_darts() {
        if seen[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            face.push(x);
            x = d.next_ccw(d.edge(x));
        }
        faces.push(face);
    }
    faces
}

/// Face index of every dart, in the order produced by [`trace_faces`].
pub fn face_index(d: &Diagram) -> (Vec<usize>, usize) {
    let mut index = vec![usize::MAX; d.num_darts()];
    let mut count = 0;
    for start in 0..d.num_darts() {
        if index[start] != usize::MAX {
            continue;
        }
        let mut x = start;
        while index[x] == usize::MAX {
            index[x] = count;
            x = d.next_ccw(d.edge(x));
        }
        count += 1;
    }
    (index, count)
}

/// Per-component genus list (crossing components, then free-loop spheres) and total.
pub fn genus(d: &Diagram) -> (Vec<usize>, usize) {
    let s = RibbonSurface::build(d);
    (s.genus_list(), s.total_genus())
}

/// `g + n - c`: total genus plus link components minus surface components.
pub fn complexity_measure(d: &Diagram) -> usize {
    let s = RibbonSurface::build(d);
    let n = d.stats().components;
    let c = s.component_count();
    debug_assert!(n >= c);
    s.total_genus() + n - c
}

pub fn is_classical(d: &Diagram) -> bool {
    RibbonSurface::build(d).total_genus() == 0
}

/// One diagram per connected component of the graph, then one unknot per free loop.
pub fn split_components(d: &Diagram) -> Vec<Diagram> {
    use crate::diagram::DiagramData;
    let mut out = Vec::new();
    for vertices in d.graph_components() {
        let mut new_index = std::collections::HashMap::new();
        let mut next = 0;
        for &v in &vertices {
            for dart in d.rotation(v) {
                new_index.insert(dart, next);
                next += 1;
            }
        }
        let mut edge_involution = vec![0; next];
        for (&old, &new) in &new_index {
            edge_involution[new] = new_index[&d.edge(old)];
        }
        let remap = |a: [Dart; 4]| a.map(|x| new_index[&x]);
        let data = DiagramData {
            darts: next,
            edge_involution,
            vertex_rotations: vertices.iter().map(|&v| remap(d.rotation(v))).collect(),
            over_under: vertices.iter().map(|&v| remap(d.data().over_under[v])).collect(),
            free_loops: 0,
        };
        out.push(Diagram::new(data).expect("a graph component of a valid diagram is valid"));
    }
    out.extend((0..d.free_loops()).map(|_| Diagram::unknot()));
    out
}
