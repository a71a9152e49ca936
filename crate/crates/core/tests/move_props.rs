mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use vlink::generate::{random_diagram, RandomShape};
use vlink::moves::apply_unchecked;
use vlink::{
    apply_move, bracket, enumerate_moves, f_poly, quandle_colorings, simplify_greedy, surface, Diagram,
    Location, MoveKind, Quandle,
};

fn shape(max_crossings: usize) -> RandomShape {
    RandomShape {
        max_crossings,
        ..RandomShape::default()
    }
}

fn random(seed: u64, max_crossings: usize) -> Diagram {
    random_diagram(&mut common::rng(seed), shape(max_crossings))
}

/// Vertices of each face of the given length whose corners sit at distinct crossings.
fn naive_faces_of_length(d: &Diagram, len: usize) -> Vec<Vec<usize>> {
    common::naive_faces(d)
        .into_iter()
        .filter(|f| f.len() == len)
        .filter(|f| {
            let vs: BTreeSet<usize> = f.iter().map(|&x| d.vertex(x)).collect();
            vs.len() == len
        })
        .collect()
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn every_site_yields_a_valid_diagram(seed in any::<u64>()) {
        let d = random(seed, 6);
        let v = d.num_crossings() as isize;
        for site in enumerate_moves(&d, &MoveKind::ALL) {
            let r = apply_move(&d, &site).unwrap();
            prop_assert!(r.validate().is_empty());
            prop_assert_eq!(r.num_crossings() as isize, v + site.kind.delta());
            prop_assert_eq!(r.stats().components, d.stats().components);
        }
    }

    #[test]
    fn moves_preserve_invariants(seed in any::<u64>()) {
        let d = random(seed, 5);
        let f = f_poly(&d).unwrap();
        let (r3, r5) = (Quandle::dihedral(3), Quandle::dihedral(5));
        let c = (quandle_colorings(&d, &r3), quandle_colorings(&d, &r5));
        for site in enumerate_moves(&d, &MoveKind::ALL) {
            let r = apply_unchecked(&d, &site);
            prop_assert_eq!(f_poly(&r).unwrap(), f.clone(), "{}", site);
            prop_assert_eq!((quandle_colorings(&r, &r3), quandle_colorings(&r, &r5)), c, "{}", site);
        }
    }

    #[test]
    fn genus_moves_only_through_stab_kinds(seed in any::<u64>()) {
        let d = random(seed, 5);
        let g = surface::genus(&d).1 as isize;
        for site in enumerate_moves(&d, &MoveKind::ALL) {
            let h = surface::genus(&apply_unchecked(&d, &site)).1 as isize;
            let expected = match site.kind {
                MoveKind::R2AddStab => g + 1,
                MoveKind::R2RemoveStab => g - 1,
                _ => g,
            };
            prop_assert_eq!(h, expected, "{}", site);
        }
    }

    #[test]
    fn every_move_has_an_inverse_site(seed in any::<u64>()) {
        let d = random(seed, 4);
        let target = d.canonical_string();
        for site in enumerate_moves(&d, &MoveKind::ALL) {
            let r = apply_unchecked(&d, &site);
            let back = enumerate_moves(&r, &MoveKind::ALL)
                .into_iter()
                .any(|s| apply_unchecked(&r, &s).canonical_string() == target);
            prop_assert!(back, "no inverse for {} on {}", site, target);
        }
    }

    #[test]
    fn additions_are_undone_by_the_created_site(seed in any::<u64>()) {
        let d = random(seed, 6);
        let v = d.num_crossings();
        let additions = [MoveKind::R1Add, MoveKind::R2Add, MoveKind::R2AddStab];
        for site in enumerate_moves(&d, &additions) {
            let r = apply_move(&d, &site).unwrap();
            let created = if site.kind == MoveKind::R1Add {
                Location::Vertex(v)
            } else {
                Location::Bigon(v, v + 1)
            };
            let inverse = enumerate_moves(&r, &MoveKind::ALL)
                .into_iter()
                .find(|s| s.location == created && s.kind.delta() == -site.kind.delta())
                .unwrap();
            prop_assert_eq!(apply_move(&r, &inverse).unwrap().canonical_string(), d.canonical_string());
        }
    }

    #[test]
    fn r3_twice_at_one_triangle_is_identity(seed in any::<u64>()) {
        let d = random(seed, 8);
        for site in enumerate_moves(&d, &[MoveKind::R3]) {
            let Location::Triangle(x) = site.location else { unreachable!() };
            let corners = |e: &Diagram, y: usize| {
                let f = common::naive_faces(e).into_iter().find(|f| f.contains(&y)).unwrap();
                f.iter().map(|&z| e.vertex(z)).collect::<BTreeSet<_>>()
            };
            let before = corners(&d, x);
            let r = apply_move(&d, &site).unwrap();
            let again = enumerate_moves(&r, &[MoveKind::R3])
                .into_iter()
                .find(|s| {
                    let Location::Triangle(y) = s.location else { unreachable!() };
                    corners(&r, y) == before
                })
                .unwrap();
            prop_assert_eq!(apply_move(&r, &again).unwrap().canonical_string(), d.canonical_string());
        }
    }

    #[test]
    fn removal_sites_match_face_scan(seed in any::<u64>()) {
        let d = random(seed, 8);
        let r1: BTreeSet<usize> = naive_faces_of_length(&d, 1)
            .iter()
            .map(|f| d.vertex(f[0]))
            .collect();
        let found: BTreeSet<usize> = enumerate_moves(&d, &[MoveKind::R1Remove])
            .iter()
            .map(|s| match s.location { Location::Vertex(v) => v, _ => unreachable!() })
            .collect();
        prop_assert_eq!(found, r1);

        let r2: BTreeSet<(usize, usize)> = naive_faces_of_length(&d, 2)
            .iter()
            .filter(|f| f.iter().all(|&x| d.is_over(x) == d.is_over(d.edge(x))))
            .map(|f| {
                let (a, b) = (d.vertex(f[0]), d.vertex(f[1]));
                (a.min(b), a.max(b))
            })
            .collect();
        let found: BTreeSet<(usize, usize)> =
            enumerate_moves(&d, &[MoveKind::R2Remove, MoveKind::R2RemoveStab])
                .iter()
                .map(|s| match s.location { Location::Bigon(v, w) => (v, w), _ => unreachable!() })
                .collect();
        prop_assert_eq!(found, r2);

        let r3 = naive_faces_of_length(&d, 3)
            .iter()
            .filter(|f| f.iter().any(|&x| d.is_over(x) && d.is_over(d.edge(x))))
            .count();
        prop_assert_eq!(enumerate_moves(&d, &[MoveKind::R3]).len(), r3);
    }

    #[test]
    fn addition_site_counts(seed in any::<u64>()) {
        let d = random(seed, 8);
        let (v, l) = (d.num_crossings(), d.free_loops());
        prop_assert_eq!(enumerate_moves(&d, &[MoveKind::R1Add]).len(), 4 * (2 * v + l));
        let pairs = choose2(4 * v) - 2 * v + 8 * v + 8 * v * l + choose2(2 * l) - l + 3 * l;
        prop_assert_eq!(enumerate_moves(&d, &[MoveKind::R2Add, MoveKind::R2AddStab]).len(), 2 * pairs);
    }

    #[test]
    fn greedy_simplification_is_monotone(seed in any::<u64>()) {
        let d = random(seed, 8);
        let s = simplify_greedy(&d);
        prop_assert!(s.num_crossings() <= d.num_crossings());
        let removals = [MoveKind::R1Remove, MoveKind::R2Remove, MoveKind::R2RemoveStab];
        prop_assert!(enumerate_moves(&s, &removals).is_empty());
        prop_assert_eq!(f_poly(&s).unwrap(), f_poly(&d).unwrap());
    }
}

#[test]
fn r1_bracket_factor() {
    for seed in 0..40 {
        let d = random(seed, 6);
        let b = bracket(&d).unwrap();
        for site in enumerate_moves(&d, &[MoveKind::R1Add, MoveKind::R1Remove]) {
            let r = apply_unchecked(&d, &site);
            let w = r.writhe() - d.writhe();
            assert_eq!(w.abs(), 1);
            assert_eq!(bracket(&r).unwrap(), &b * &vlink::LaurentPoly::monomial(-1, 3 * w));
        }
    }
}

#[test]
fn small_examples() {
    let kink = vlink::diagram_from_gauss("O1+ U1+").unwrap();
    assert_eq!(enumerate_moves(&kink, &[MoveKind::R1Remove]).len(), 1);
    let r = apply_move(&kink, &enumerate_moves(&kink, &[MoveKind::R1Remove])[0]).unwrap();
    assert_eq!((r.num_crossings(), r.free_loops()), (0, 1));

    let vt = vlink::diagram_from_gauss("O1+ O2+ U1+ U2+").unwrap();
    assert!(enumerate_moves(&vt, &[MoveKind::R1Remove, MoveKind::R2Remove, MoveKind::R2RemoveStab]).is_empty());

    for loops in 0..3 {
        let sites = enumerate_moves(&Diagram::unlink(loops), &[MoveKind::R1Add]);
        assert!(sites.iter().all(|s| matches!(s.location, Location::Loop(_))));
        let distinct: BTreeSet<_> = sites.iter().map(|s| s.location).collect();
        assert_eq!(distinct.len(), loops);
    }

    let doubled = vlink::diagram_from_gauss("O1+ U1+ O2- U2-").unwrap();
    assert_eq!(simplify_greedy(&doubled), Diagram::unknot());
    let trefoil = vlink::diagram_from_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
    assert_eq!(simplify_greedy(&trefoil), trefoil);
}
