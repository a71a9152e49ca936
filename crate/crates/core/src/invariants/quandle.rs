use std::fmt;

use crate::diagram::{Diagram, Sign};
use crate::error::{Error, Result};

/// A finite quandle given by its operation table `x ▷ y = table[x][y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quandle {
    name: String,
    size: usize,
    table: Vec<usize>,
    // left_div[z * size + y] = the x with x ▷ y = z
    left_div: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `x ▷ x != x`.
    Idempotence { x: usize },
    /// `x1 ▷ y = x2 ▷ y` with `x1 != x2`.
    RightInvertibility { y: usize, x1: usize, x2: usize },
    /// `(x ▷ y) ▷ z != (x ▷ z) ▷ (y ▷ z)`.
    Distributivity { x: usize, y: usize, z: usize },
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::Idempotence { x } => write!(f, "Q1 fails: {x} ▷ {x} != {x}"),
            AxiomViolation::RightInvertibility { y, x1, x2 } => {
                write!(f, "Q2 fails: {x1} ▷ {y} = {x2} ▷ {y}")
            }
            AxiomViolation::Distributivity { x, y, z } => write!(
                f,
                "Q3 fails: ({x} ▷ {y}) ▷ {z} != ({x} ▷ {z}) ▷ ({y} ▷ {z})"
            ),
        }
    }
}

/// Lists every axiom failure of an `n x n` table, with witnesses.
/// Fails only when the table is not square or has entries outside `0..n`.
pub fn check_quandle(table: &[Vec<i64>]) -> Result<Vec<AxiomViolation>> {
    let n = table.len();
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!(
                "row {x} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(bad) = row.iter().find(|&&e| e < 0 || e >= n as i64) {
            return Err(Error::MalformedTable(format!(
                "row {x} has entry {bad} outside 0..{n}"
            )));
        }
    }
    let op = |x: usize, y: usize| table[x][y] as usize;
    let mut out = Vec::new();
    for x in 0..n {
        if op(x, x) != x {
            out.push(AxiomViolation::Idempotence { x });
        }
    }
    for y in 0..n {
        let mut preimage = vec![None; n];
        for x in 0..n {
            let z = op(x, y);
            match preimage[z] {
                Some(x1) => out.push(AxiomViolation::RightInvertibility { y, x1, x2: x }),
                None => preimage[z] = Some(x),
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if op(op(x, y), z) != op(op(x, z), op(y, z)) {
                    out.push(AxiomViolation::Distributivity { x, y, z });
                }
            }
        }
    }
    Ok(out)
}

impl Quandle {
    /// Validates shape and axioms.
    pub fn new(name: impl Into<String>, table: &[Vec<i64>]) -> Result<Self> {
        let violations = check_quandle(table)?;
        if !violations.is_empty() {
            return Err(Error::InvalidQuandle(violations));
        }
        let size = table.len();
        let flat: Vec<usize> = table.iter().flatten().map(|&e| e as usize).collect();
        let mut left_div = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                left_div[flat[x * size + y] * size + y] = x;
            }
        }
        Ok(Quandle {
            name: name.into(),
            size,
            table: flat,
            left_div,
        })
    }

    fn from_fn(name: String, n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let table: Vec<Vec<i64>> = (0..n)
            .map(|x| (0..n).map(|y| f(x, y) as i64).collect())
            .collect();
        Quandle::new(name, &table)
    }

    /// `x ▷ y = x`.
    pub fn trivial(n: usize) -> Self {
        Self::from_fn(format!("T{n}"), n, |x, _| x).expect("trivial quandle")
    }

    /// `x ▷ y = 2y - x mod n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        Self::from_fn(format!("R{n}"), n, |x, y| (2 * y + n - x) % n).expect("dihedral quandle")
    }

    /// Alexander quandle `x ▷ y = t x + (1 - t) y mod n`; `t` must be a unit mod `n`.
    pub fn alexander(n: usize, t: usize) -> Result<Self> {
        Self::from_fn(format!("A{n}_{t}"), n, |x, y| {
            (t * x + (n + 1 - t % n) * y) % n
        })
    }

    /// `R<n>` dihedral, `T<n>` trivial, `A<n>_<t>` Alexander.
    pub fn by_name(name: &str) -> Result<Self> {
        let unknown = || Error::UnknownQuandle(name.to_string());
        let num = |s: &str| s.parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(unknown);
        match name.split_at_checked(1).ok_or_else(unknown)? {
            ("R", n) => Ok(Self::dihedral(num(n)?)),
            ("T", n) => Ok(Self::trivial(num(n)?)),
            ("A", rest) => {
                let (n, t) = rest.split_once('_').ok_or_else(unknown)?;
                Self::alexander(num(n)?, num(t)?)
            }
            _ => Err(unknown()),
        }
    }

    /// Reads the file format: first line `n`, then `n` rows of `n` integers.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let n: usize = lines
            .next()
            .and_then(|l| l.parse().ok())
            .ok_or_else(|| Error::MalformedTable("first line must be the size n".into()))?;
        let mut table = Vec::with_capacity(n);
        for row in lines {
            let entries = row
                .split_whitespace()
                .map(|e| e.parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::MalformedTable(format!("bad entry in {row:?}: {e}")))?;
            table.push(entries);
        }
        if table.len() != n {
            return Err(Error::MalformedTable(format!(
                "expected {n} rows, found {}",
                table.len()
            )));
        }
        Quandle::new(name, &table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    /// The unique `x` with `x ▷ y = z`.
    #[inline]
    pub fn left_divide(&self, z: usize, y: usize) -> usize {
        self.left_div[z * self.size + y]
    }
}

/// `dst = src ▷ over`
#[derive(Clone, Copy, Debug)]
struct Relation {
    src: usize,
    over: usize,
    dst: usize,
}

/// Arcs of `d` (edges merged through over passages) and one relation per crossing.
fn arc_relations(d: &Diagram) -> (usize, Vec<Relation>) {
    let darts = d.num_darts();
    let mut parent: Vec<usize> = (0..darts).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    };
    for x in 0..darts {
        union(&mut parent, x, d.edge(x));
    }
    for v in 0..d.num_crossings() {
        let c = d.crossing(v);
        union(&mut parent, c.over_in, c.over_out);
    }
    let mut arc_of_root = vec![usize::MAX; darts];
    let mut arcs = 0;
    let mut arc = |parent: &mut Vec<usize>, x: usize| {
        let r = find(parent, x);
        if arc_of_root[r] == usize::MAX {
            arc_of_root[r] = arcs;
            arcs += 1;
        }
        arc_of_root[r]
    };
    let mut relations = Vec::new();
    for v in 0..d.num_crossings() {
        let c = d.crossing(v);
        let over = arc(&mut parent, c.over_in);
        let under_in = arc(&mut parent, c.under_in);
        let under_out = arc(&mut parent, c.under_out);
        // the right-hand side of the overstrand is the product
        relations.push(match d.sign(v) {
            Sign::Positive => Relation {
                src: under_in,
                over,
                dst: under_out,
            },
            Sign::Negative => Relation {
                src: under_out,
                over,
                dst: under_in,
            },
        });
    }
    (arcs, relations)
}

/// Number of arc colorings of `d` by `q`; each free loop contributes a factor `|q|`.
pub fn quandle_colorings(d: &Diagram, q: &Quandle) -> u128 {
    let (arcs, relations) = arc_relations(d);
    let mut by_arc: Vec<Vec<usize>> = vec![Vec::new(); arcs];
    for (i, r) in relations.iter().enumerate() {
        for a in [r.src, r.over, r.dst] {
            by_arc[a].push(i);
        }
    }
    let solver = Solver {
        q,
        relations: &relations,
        by_arc: &by_arc,
    };
    let mut colors = vec![None; arcs];
    let count = solver.count(&mut colors, 0);
    count * (q.size() as u128).pow(d.free_loops() as u32)
}

struct Solver<'a> {
    q: &'a Quandle,
    relations: &'a [Relation],
    by_arc: &'a [Vec<usize>],
}

impl Solver<'_> {
    fn count(&self, colors: &mut Vec<Option<usize>>, first_free: usize) -> u128 {
        let Some(arc) = (first_free..colors.len()).find(|&a| colors[a].is_none()) else {
            return 1;
        };
        let mut total = 0;
        for c in 0..self.q.size() {
            let mut trial = colors.clone();
            trial[arc] = Some(c);
            if self.propagate(&mut trial, arc) {
                total += self.count(&mut trial, arc + 1);
            }
        }
        total
    }

    /// Forces every value implied by the relations; false on contradiction.
    fn propagate(&self, colors: &mut [Option<usize>], changed: usize) -> bool {
        let mut stack = vec![changed];
        while let Some(a) = stack.pop() {
            for &i in &self.by_arc[a] {
                let r = self.relations[i];
                match (colors[r.src], colors[r.over], colors[r.dst]) {
                    (Some(s), Some(o), Some(t)) => {
                        if self.q.op(s, o) != t {
                            return false;
                        }
                    }
                    (Some(s), Some(o), None) => {
                        colors[r.dst] = Some(self.q.op(s, o));
                        stack.push(r.dst);
                    }
                    (None, Some(o), Some(t)) => {
                        colors[r.src] = Some(self.q.left_divide(t, o));
                        stack.push(r.src);
                    }
                    _ => {}
                }
            }
        }
        true
    }
}
