//! Bounded breadth-first search over the move graph.
//!
//! States are canonical strings, so isomorphic diagrams are one state.
//! Frontiers are expanded in parallel and merged in canonical-string order,
//! which keeps every result independent of the thread count. All searches
//! use the full move set, stabilizations included.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::diagram::Diagram;
use crate::diagram_from_gauss;
use crate::invariants::{f_poly, quandle_colorings, Quandle};
use crate::moves::{apply_move, apply_unchecked, enumerate_moves, MoveKind, MoveSite};
use crate::poly::LaurentPoly;
use crate::surface;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_crossings: usize,
    pub max_depth: usize,
    pub max_states: usize,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds {
            max_crossings: 8,
            max_depth: 12,
            max_states: 100_000,
        }
    }
}

impl SearchBounds {
    pub fn with_max_crossings(max_crossings: usize) -> Self {
        SearchBounds {
            max_crossings,
            ..Self::default()
        }
    }
}

/// The canonical strings reached from a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Sorted.
    pub members: Vec<String>,
    /// Set when a depth or state cap stopped the search before it closed.
    pub truncated: bool,
}

impl Orbit {
    pub fn contains(&self, canonical: &str) -> bool {
        self.members
            .binary_search_by(|m| m.as_str().cmp(canonical))
            .is_ok()
    }
}

fn diagram_of(canonical: &str) -> Diagram {
    diagram_from_gauss(canonical).expect("canonical strings parse")
}

fn kinds_within(d: &Diagram, b: &SearchBounds) -> Vec<MoveKind> {
    let v = d.num_crossings() as isize;
    MoveKind::ALL
        .into_iter()
        .filter(|k| v + k.delta() <= b.max_crossings as isize)
        .collect()
}

/// Sites of `d` allowed by the crossing cap, with the canonical string of each result.
pub fn neighbours(d: &Diagram, b: &SearchBounds) -> Vec<(MoveSite, String)> {
    enumerate_moves(d, &kinds_within(d, b))
        .into_iter()
        .map(|s| {
            let t = apply_unchecked(d, &s).canonical_string();
            (s, t)
        })
        .collect()
}

fn distinct_neighbours(canonical: &str, b: &SearchBounds) -> Vec<String> {
    let mut out: Vec<String> = neighbours(&diagram_of(canonical), b)
        .into_iter()
        .map(|(_, t)| t)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Breadth-first closure of `d` under moves within `b`.
pub fn orbit(d: &Diagram, b: &SearchBounds) -> Orbit {
    let start = d.canonical_string();
    let mut seen: HashSet<String> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    let mut depth = 0;
    let mut truncated = false;
    while !frontier.is_empty() && !truncated {
        if depth == b.max_depth {
            truncated = true;
            break;
        }
        let expanded: Vec<Vec<String>> = frontier
            .par_iter()
            .map(|s| distinct_neighbours(s, b))
            .collect();
        let mut next = Vec::new();
        for t in expanded.into_iter().flatten() {
            if seen.contains(&t) {
                continue;
            }
            if seen.len() >= b.max_states {
                truncated = true;
                break;
            }
            seen.insert(t.clone());
            next.push(t);
        }
        next.sort_unstable();
        frontier = next;
        depth += 1;
    }
    let mut members: Vec<String> = seen.into_iter().collect();
    members.sort_unstable();
    Orbit { members, truncated }
}

/// Least member of an orbit under (total genus, crossings, canonical string).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimized {
    pub witness: Diagram,
    pub genus: usize,
    /// The orbit closed under the bounds; otherwise the witness is an upper bound.
    pub certified: bool,
    pub explored_states: usize,
}

impl fmt::Display for Minimized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "witness {}\ngenus {}\ncrossings {}\nstates {}\n{}",
            self.witness.canonical_string(),
            self.genus,
            self.witness.num_crossings(),
            self.explored_states,
            if self.certified { "certified" } else { "upper bound" }
        )
    }
}

pub fn minimize(d: &Diagram, b: &SearchBounds) -> Minimized {
    minimize_orbit(&orbit(d, b))
}

pub fn minimize_orbit(orbit: &Orbit) -> Minimized {
    let (genus, _, canonical) = orbit
        .members
        .par_iter()
        .map(|s| {
            let d = diagram_of(s);
            (surface::genus(&d).1, d.num_crossings(), s)
        })
        .min()
        .expect("an orbit contains its start");
    Minimized {
        witness: diagram_of(canonical),
        genus,
        certified: !orbit.truncated,
        explored_states: orbit.members.len(),
    }
}

pub fn default_quandles() -> Vec<Quandle> {
    vec![Quandle::dihedral(3), Quandle::dihedral(5)]
}

/// The invariants compared before any search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantProfile {
    pub components: usize,
    /// Coloring count per quandle, by quandle name.
    pub colorings: Vec<(String, u128)>,
    /// Absent for the empty link and past the state-sum cap.
    pub f_poly: Option<LaurentPoly>,
}

impl InvariantProfile {
    pub fn compute(d: &Diagram, quandles: &[Quandle]) -> Self {
        InvariantProfile {
            components: d.stats().components,
            colorings: quandles
                .iter()
                .map(|q| (q.name().to_string(), quandle_colorings(d, q)))
                .collect(),
            f_poly: f_poly(d).ok(),
        }
    }

    /// Every invariant on which the two profiles disagree.
    pub fn mismatches(&self, other: &Self) -> Vec<Mismatch> {
        let mut out = Vec::new();
        if self.components != other.components {
            out.push(Mismatch {
                invariant: "components".into(),
                left: self.components.to_string(),
                right: other.components.to_string(),
            });
        }
        for ((name, a), (_, b)) in self.colorings.iter().zip(&other.colorings) {
            if a != b {
                out.push(Mismatch {
                    invariant: format!("colorings {name}"),
                    left: a.to_string(),
                    right: b.to_string(),
                });
            }
        }
        if let (Some(a), Some(b)) = (&self.f_poly, &other.f_poly) {
            if a != b {
                out.push(Mismatch {
                    invariant: "f_poly".into(),
                    left: a.to_string(),
                    right: b.to_string(),
                });
            }
        }
        out
    }
}

impl fmt::Display for InvariantProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "components {}", self.components)?;
        for (name, count) in &self.colorings {
            write!(f, ", {name} {count}")?;
        }
        match &self.f_poly {
            Some(p) => write!(f, ", f {p}"),
            None => write!(f, ", f n/a"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub invariant: String,
    pub left: String,
    pub right: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} vs {}", self.invariant, self.left, self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Applying the sites in order to the first diagram yields the second up to relabeling.
    Equivalent { path: Vec<MoveSite> },
    Distinguished { mismatches: Vec<Mismatch> },
    Unknown { reason: String },
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Equivalent { .. } => 0,
            Verdict::Distinguished { .. } => 1,
            Verdict::Unknown { .. } => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub explored_states: usize,
    /// For an equivalence, the diagram where the two searches met.
    pub witness: Option<Diagram>,
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Equivalent { path } => {
                writeln!(f, "verdict equivalent")?;
                writeln!(f, "moves {}", path.len())?;
                for site in path {
                    writeln!(f, "  {site}")?;
                }
            }
            Verdict::Distinguished { mismatches } => {
                writeln!(f, "verdict distinguished")?;
                for m in mismatches {
                    writeln!(f, "  {m}")?;
                }
            }
            Verdict::Unknown { reason } => {
                writeln!(f, "verdict unknown")?;
                writeln!(f, "  {reason}")?;
            }
        }
        if let Some(w) = &self.witness {
            writeln!(f, "witness {}", w.canonical_string())?;
        }
        write!(f, "states {}", self.explored_states)
    }
}

pub fn equivalent(d1: &Diagram, d2: &Diagram, b: &SearchBounds) -> SearchOutcome {
    equivalent_with(d1, d2, b, &default_quandles())
}

/// Compares invariants, then searches from both ends until the searches meet.
pub fn equivalent_with(
    d1: &Diagram,
    d2: &Diagram,
    b: &SearchBounds,
    quandles: &[Quandle],
) -> SearchOutcome {
    let mismatches =
        InvariantProfile::compute(d1, quandles).mismatches(&InvariantProfile::compute(d2, quandles));
    if !mismatches.is_empty() {
        return SearchOutcome {
            verdict: Verdict::Distinguished { mismatches },
            explored_states: 0,
            witness: None,
        };
    }

    let ends = [d1.canonical_string(), d2.canonical_string()];
    // parent[side][s] is the state `s` was first reached from
    let mut parent: [HashMap<String, Option<String>>; 2] = [
        HashMap::from([(ends[0].clone(), None)]),
        HashMap::from([(ends[1].clone(), None)]),
    ];
    let mut frontier = [vec![ends[0].clone()], vec![ends[1].clone()]];
    let mut depth = 0;
    let mut meeting = (ends[0] == ends[1]).then(|| ends[0].clone());
    let states = |parent: &[HashMap<String, Option<String>>; 2]| parent[0].len() + parent[1].len();

    while meeting.is_none() {
        if frontier[0].is_empty() || frontier[1].is_empty() {
            return unknown(
                "one side closed under the bounds without meeting the other",
                states(&parent),
            );
        }
        if depth == b.max_depth {
            return unknown("depth bound reached", states(&parent));
        }
        let side = usize::from(frontier[1].len() < frontier[0].len());
        let expanded: Vec<(String, Vec<String>)> = frontier[side]
            .par_iter()
            .map(|s| (s.clone(), distinct_neighbours(s, b)))
            .collect();
        let mut next = Vec::new();
        let mut met = Vec::new();
        for (from, targets) in expanded {
            for t in targets {
                if parent[side].contains_key(&t) {
                    continue;
                }
                if states(&parent) >= b.max_states {
                    return unknown("state bound reached", states(&parent));
                }
                if parent[1 - side].contains_key(&t) {
                    met.push(t.clone());
                }
                parent[side].insert(t.clone(), Some(from.clone()));
                next.push(t);
            }
        }
        next.sort_unstable();
        frontier[side] = next;
        depth += 1;
        meeting = met.into_iter().min();
    }

    let meeting = meeting.expect("loop exits on a meeting");
    let chain = |side: usize| {
        let mut out = vec![meeting.clone()];
        while let Some(Some(p)) = parent[side].get(out.last().expect("nonempty")) {
            out.push(p.clone());
        }
        out
    };
    let mut strings = chain(0);
    strings.reverse();
    strings.extend(chain(1).into_iter().skip(1));

    let path = realize_path(d1, &strings[1..], b);
    SearchOutcome {
        verdict: Verdict::Equivalent { path },
        explored_states: states(&parent),
        witness: Some(diagram_of(&meeting)),
    }
}

fn unknown(reason: &str, explored_states: usize) -> SearchOutcome {
    SearchOutcome {
        verdict: Verdict::Unknown {
            reason: reason.to_string(),
        },
        explored_states,
        witness: None,
    }
}

/// Turns a chain of canonical strings into concrete sites on the evolving diagram.
fn realize_path(start: &Diagram, steps: &[String], b: &SearchBounds) -> Vec<MoveSite> {
    let mut current = start.clone();
    let mut path = Vec::with_capacity(steps.len());
    for target in steps {
        let (site, _) = neighbours(&current, b)
            .into_iter()
            .find(|(_, t)| t == target)
            .expect("every search step is realized by a site");
        current = apply_move(&current, &site).expect("enumerated sites apply");
        path.push(site);
    }
    path
}

/// Applies a path and returns every intermediate diagram, checking each site.
pub fn replay(start: &Diagram, path: &[MoveSite]) -> crate::Result<Vec<Diagram>> {
    let mut out = vec![start.clone()];
    for site in path {
        let next = apply_move(out.last().expect("nonempty"), site)?;
        out.push(next);
    }
    Ok(out)
}

pub struct CorpusReport {
    pub names: Vec<String>,
    pub profiles: Vec<InvariantProfile>,
    pub genus: Vec<usize>,
    pub crossings: Vec<usize>,
    /// Member indices per class, classes ordered by first member.
    pub classes: Vec<Vec<usize>>,
    pub witnesses: Vec<Minimized>,
    /// Pairs found equivalent whose invariants differ. Always empty unless something is broken.
    pub violations: Vec<String>,
}

/// Groups diagrams by proven equivalence within `b`.
pub fn classify_corpus(
    entries: &[(String, Diagram)],
    b: &SearchBounds,
    quandles: &[Quandle],
) -> CorpusReport {
    let n = entries.len();
    let profiles: Vec<InvariantProfile> = entries
        .iter()
        .map(|(_, d)| InvariantProfile::compute(d, quandles))
        .collect();
    let mut class_of: Vec<usize> = (0..n).collect();
    let mut violations = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if class_of[i] == class_of[j] || class_of[i] != i {
                continue;
            }
            let outcome = equivalent_with(&entries[i].1, &entries[j].1, b, quandles);
            if let Verdict::Equivalent { .. } = outcome.verdict {
                if profiles[i] != profiles[j] {
                    violations.push(format!(
                        "{} and {} are equivalent but have invariants {} and {}",
                        entries[i].0, entries[j].0, profiles[i], profiles[j]
                    ));
                }
                class_of[j] = class_of[i];
                break;
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for j in 0..n {
        if class_of[j] == j {
            classes.push(vec![j]);
        } else {
            let root = class_of[j];
            classes
                .iter_mut()
                .find(|c| c[0] == root)
                .expect("root class exists")
                .push(j);
        }
    }
    let witnesses = classes
        .iter()
        .map(|c| minimize(&entries[c[0]].1, b))
        .collect();
    CorpusReport {
        names: entries.iter().map(|(name, _)| name.clone()).collect(),
        genus: entries.iter().map(|(_, d)| surface::genus(d).1).collect(),
        crossings: entries.iter().map(|(_, d)| d.num_crossings()).collect(),
        profiles,
        classes,
        witnesses,
        violations,
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, name) in self.names.iter().enumerate() {
            writeln!(
                f,
                "diagram {name}: crossings {}, genus {}, {}",
                self.crossings[k], self.genus[k], self.profiles[k]
            )?;
        }
        for (c, (members, w)) in self.classes.iter().zip(&self.witnesses).enumerate() {
            let names: Vec<&str> = members.iter().map(|&k| self.names[k].as_str()).collect();
            writeln!(f, "class {c}: {}", names.join(" "))?;
            writeln!(
                f,
                "  witness {} (genus {}, crossings {}, {})",
                w.witness.canonical_string(),
                w.genus,
                w.witness.num_crossings(),
                if w.certified { "certified" } else { "upper bound" }
            )?;
        }
        write!(f, "consistency violations {}", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}
