use rayon::prelude::*;

use crate::diagram::{Dart, Diagram};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

/// Crossing count above which the 2^V state sum is refused.
pub const DEFAULT_STATE_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothing {
    A,
    B,
}

/// The two dart pairs joined by smoothing crossing `v`.
///
/// With the rotation read counterclockwise from an over dart `d0`, the
/// A-smoothing joins `d1-d2` and `d3-d0`, opening the channel between the two
/// corners swept when the overstrand turns counterclockwise.
pub fn smoothing_pairs(d: &Diagram, v: usize, s: Smoothing) -> [(Dart, Dart); 2] {
    let rot = d.rotation(v);
    let p = d.position(d.crossing(v).over_in);
    let r = |k: usize| rot[(p + k) % 4];
    match s {
        Smoothing::A => [(r(1), r(2)), (r(3), r(0))],
        Smoothing::B => [(r(0), r(1)), (r(2), r(3))],
    }
}

pub fn bracket(d: &Diagram) -> Result<LaurentPoly> {
    bracket_with_cap(d, DEFAULT_STATE_CAP)
}

/// Sum over all 2^V smoothing states of `A^(a-b) * delta^(loops-1)`,
/// `delta = -A^2 - A^-2`. States are tallied by (A-count, loop count) in
/// parallel, then the polynomial is assembled once.
pub fn bracket_with_cap(d: &Diagram, cap: usize) -> Result<LaurentPoly> {
    let n = d.num_crossings();
    if n > cap {
        return Err(Error::StateSumTooLarge { crossings: n, cap });
    }
    if d.is_empty() {
        return Err(Error::EmptyLink);
    }

    // edge id per dart
    let mut edge_id = vec![usize::MAX; d.num_darts()];
    let mut edges = 0;
    for x in 0..d.num_darts() {
        if edge_id[x] == usize::MAX {
            edge_id[x] = edges;
            edge_id[d.edge(x)] = edges;
            edges += 1;
        }
    }
    let joins: Vec<[[(usize, usize); 2]; 2]> = (0..n)
        .map(|v| {
            [Smoothing::A, Smoothing::B].map(|s| {
                smoothing_pairs(d, v, s).map(|(x, y)| (edge_id[x], edge_id[y]))
            })
        })
        .collect();

    let max_loops = edges.max(1);
    let width = max_loops + 1;
    let tally = (0u64..1u64 << n)
        .into_par_iter()
        .fold(
            || (vec![0u64; (n + 1) * width], vec![0usize; edges]),
            |(mut hist, mut parent), state| {
                for (i, p) in parent.iter_mut().enumerate() {
                    *p = i;
                }
                let mut loops = 0;
                let mut a_count = 0;
                for (v, pair) in joins.iter().enumerate() {
                    let choice = if state >> v & 1 == 0 {
                        a_count += 1;
                        &pair[0]
                    } else {
                        &pair[1]
                    };
                    for &(x, y) in choice {
                        let (rx, ry) = (root(&mut parent, x), root(&mut parent, y));
                        if rx == ry {
                            loops += 1;
                        } else {
                            parent[rx] = ry;
                        }
                    }
                }
                hist[a_count * width + loops] += 1;
                (hist, parent)
            },
        )
        .map(|(hist, _)| hist)
        .reduce(
            || vec![0u64; (n + 1) * width],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );

    let delta = LaurentPoly::loop_value();
    let mut delta_pow = vec![LaurentPoly::one()];
    let mut out = LaurentPoly::zero();
    for a_count in 0..=n {
        for loops in 0..width {
            let count = tally[a_count * width + loops];
            if count == 0 {
                continue;
            }
            let total_loops = loops + d.free_loops();
            while delta_pow.len() < total_loops {
                let next = delta_pow.last().expect("nonempty") * &delta;
                delta_pow.push(next);
            }
            let exponent = a_count as i32 - (n - a_count) as i32;
            out += &delta_pow[total_loops - 1].shift(exponent).scale(count as i64);
        }
    }
    Ok(out)
}

fn root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Writhe-normalized bracket `(-A^3)^(-w) <D>`, invariant under every Reidemeister move.
pub fn f_poly(d: &Diagram) -> Result<LaurentPoly> {
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(bracket(d)?.shift(-3 * w).scale(sign))
}
