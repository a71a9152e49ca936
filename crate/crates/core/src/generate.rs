//! Random and exhaustive diagram generators for tests, benchmarks and the CLI.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::codec::{to_diagram, Role, SignedGaussCode, Token};
use crate::diagram::{Diagram, Sign};

/// Shape limits for [`random_code`].
#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub max_crossings: usize,
    pub max_circuits: usize,
    pub max_free_loops: usize,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            max_crossings: 8,
            max_circuits: 3,
            max_free_loops: 1,
        }
    }
}

fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// A uniformly shuffled valid code: crossing count uniform in
/// `0..=max_crossings`, tokens cut into up to `max_circuits` circuits.
/// Never empty.
pub fn random_code(rng: &mut impl Rng, shape: RandomShape) -> SignedGaussCode {
    let v = rng.gen_range(0..=shape.max_crossings);
    let signs: Vec<Sign> = (0..v).map(|_| random_sign(rng)).collect();
    let mut tokens: Vec<Token> = (0..v)
        .flat_map(|k| {
            [Role::Over, Role::Under].map(|role| Token {
                role,
                crossing: k as u32 + 1,
                sign: signs[k],
            })
        })
        .collect();
    tokens.shuffle(rng);

    let circuits = if v == 0 {
        0
    } else {
        rng.gen_range(1..=shape.max_circuits.min(2 * v))
    };
    let mut cuts: Vec<usize> = (1..2 * v).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(circuits.saturating_sub(1)).collect();
    cuts.sort_unstable();
    let mut components = Vec::new();
    let mut start = 0;
    for end in cuts.into_iter().chain((v > 0).then_some(2 * v)) {
        components.push(tokens[start..end].to_vec());
        start = end;
    }

    let mut free_loops = rng.gen_range(0..=shape.max_free_loops);
    if v == 0 {
        free_loops = free_loops.max(1);
    }
    SignedGaussCode {
        components,
        free_loops,
    }
}

pub fn random_diagram(rng: &mut impl Rng, shape: RandomShape) -> Diagram {
    to_diagram(&random_code(rng, shape))
}

/// Every diagram with exactly `v` crossings and no free loops, one per
/// isomorphism class, keyed by canonical string. Cost grows like `(2v)!`;
/// meant for `v <= 3`.
pub fn all_diagrams(v: usize) -> BTreeMap<String, Diagram> {
    let mut out = BTreeMap::new();
    if v == 0 {
        let d = Diagram::unlink(0);
        out.insert(d.canonical_string(), d);
        return out;
    }
    let tokens: Vec<(Role, u32)> = (1..=v as u32)
        .flat_map(|k| [(Role::Over, k), (Role::Under, k)])
        .collect();
    let n = tokens.len();
    let mut order: Vec<usize> = (0..n).collect();
    permutations(&mut order, 0, &mut |perm| {
        for cut_mask in 0..1u32 << (n - 1) {
            for sign_mask in 0..1u32 << v {
                let sign = |k: u32| {
                    if sign_mask >> (k - 1) & 1 == 0 {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    }
                };
                let mut components = vec![Vec::new()];
                for (pos, &t) in perm.iter().enumerate() {
                    let (role, crossing) = tokens[t];
                    components.last_mut().expect("nonempty").push(Token {
                        role,
                        crossing,
                        sign: sign(crossing),
                    });
                    if pos + 1 < n && cut_mask >> pos & 1 == 1 {
                        components.push(Vec::new());
                    }
                }
                let d = to_diagram(&SignedGaussCode {
                    components,
                    free_loops: 0,
                });
                out.entry(d.canonical_string()).or_insert(d);
            }
        }
    });
    out
}

fn permutations(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Connected diagrams with at most `max_crossings` crossings, the unknot included.
pub fn connected_diagrams(max_crossings: usize) -> Vec<Diagram> {
    let mut out = vec![Diagram::unknot()];
    for v in 1..=max_crossings {
        out.extend(
            all_diagrams(v)
                .into_values()
                .filter(|d| d.graph_components().len() == 1),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn random_codes_are_valid() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..500 {
            let code = random_code(&mut rng, RandomShape::default());
            code.check().unwrap();
            assert!(code.crossing_count() <= 8);
            assert!(!code.components.is_empty() || code.free_loops > 0);
        }
    }

    #[test]
    fn one_crossing_diagrams() {
        // two single-component kinks and two one-crossing two-component links
        let all = all_diagrams(1);
        assert_eq!(all.len(), 4, "{:?}", all.keys().collect::<Vec<_>>());
    }
}
