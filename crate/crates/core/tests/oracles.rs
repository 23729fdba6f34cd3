//! Frozen values checked against naive searches written from the
//! definitions, sharing no code with the library's enumerators.

use std::collections::BTreeSet;

use torsite_core::algebra::FiniteAlgebra;
use torsite_core::fincat::FiniteCategory;
use torsite_core::fixtures;
use torsite_core::grskew::SkewAlgebra;
use torsite_core::linalg::Matrix;
use torsite_core::module::{validate_module, Module};
use torsite_core::topology::enumerate_topologies;
use torsite_core::universe::Universe;
use torsite_core::Budget;

type NaiveSieve = BTreeSet<usize>;

fn naive_sieves(cat: &FiniteCategory, x: usize) -> Vec<NaiveSieve> {
    let into: Vec<usize> = (0..cat.num_morphisms()).filter(|&f| cat.cod(f) == x).collect();
    (0u32..1 << into.len())
        .map(|bits| into.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &f)| f).collect::<NaiveSieve>())
        .filter(|s| {
            s.iter()
                .all(|&g| (0..cat.num_morphisms()).all(|f| cat.compose(g, f).is_none_or(|h| s.contains(&h))))
        })
        .collect()
}

fn pullback(cat: &FiniteCategory, s: &NaiveSieve, f: usize) -> NaiveSieve {
    (0..cat.num_morphisms())
        .filter(|&g| cat.cod(g) == cat.dom(f) && s.contains(&cat.compose(f, g).unwrap()))
        .collect()
}

fn is_naive_topology(cat: &FiniteCategory, sieves: &[Vec<NaiveSieve>], j: &[Vec<bool>]) -> bool {
    let covers = |x: usize, s: &NaiveSieve| sieves[x].iter().position(|t| t == s).is_some_and(|i| j[x][i]);
    for x in 0..cat.num_objects() {
        let max: NaiveSieve = (0..cat.num_morphisms()).filter(|&f| cat.cod(f) == x).collect();
        if !covers(x, &max) {
            return false;
        }
        for (i, s) in sieves[x].iter().enumerate() {
            if !j[x][i] {
                continue;
            }
            for f in (0..cat.num_morphisms()).filter(|&f| cat.cod(f) == x) {
                if !covers(cat.dom(f), &pullback(cat, s, f)) {
                    return false;
                }
            }
            for r in &sieves[x] {
                if s.iter().all(|&f| covers(cat.dom(f), &pullback(cat, r, f))) && !covers(x, r) {
                    return false;
                }
            }
        }
    }
    true
}

fn naive_topology_count(cat: &FiniteCategory) -> usize {
    let sieves: Vec<Vec<NaiveSieve>> = (0..cat.num_objects()).map(|x| naive_sieves(cat, x)).collect();
    let sizes: Vec<usize> = sieves.iter().map(Vec::len).collect();
    let total: usize = sizes.iter().sum();
    (0u64..1 << total)
        .filter(|bits| {
            let mut offset = 0;
            let j: Vec<Vec<bool>> = sizes
                .iter()
                .map(|&n| {
                    let v = (0..n).map(|i| bits >> (offset + i) & 1 == 1).collect();
                    offset += n;
                    v
                })
                .collect();
            is_naive_topology(cat, &sieves, &j)
        })
        .count()
}

#[test]
fn topology_counts_match_naive_search() {
    let expected = [1, 2, 4, 8, 2, 3];
    for (cat, want) in fixtures::all_categories().iter().zip(expected) {
        assert_eq!(naive_topology_count(cat), want);
        assert_eq!(enumerate_topologies(cat, Budget::default()).unwrap().len(), want);
    }
}

fn invertible_matrices(n: usize) -> Vec<Matrix> {
    let k = torsite_core::ring::BaseRing::new(2).unwrap();
    (0u32..1 << (n * n))
        .map(|bits| Matrix::from_flat(n, n, (0..n * n).map(|i| bits >> i & 1).collect()))
        .filter(|m| m.is_invertible(k))
        .collect()
}

/// Isomorphism classes of modules of dimension `n` over an F₂-algebra,
/// by listing every action and taking orbits under change of basis.
fn naive_module_count(a: &FiniteAlgebra, n: usize) -> usize {
    let k = a.ring();
    let cells = n * n;
    let gl = invertible_matrices(n);
    let mut classes: BTreeSet<Vec<u32>> = BTreeSet::new();
    for bits in 0u64..1 << (cells * a.dim()) {
        let actions: Vec<Matrix> = (0..a.dim())
            .map(|b| Matrix::from_flat(n, n, (0..cells).map(|i| (bits >> (b * cells + i) & 1) as u32).collect()))
            .collect();
        let m = Module::new(k, n, actions.clone()).unwrap();
        if !validate_module(a, &m).passes() {
            continue;
        }
        let canonical = gl
            .iter()
            .map(|p| {
                let inv = p.inverse(k).unwrap();
                actions.iter().flat_map(|x| inv.mul(k, &x.mul(k, p)).as_flat().to_vec()).collect::<Vec<u32>>()
            })
            .min()
            .unwrap();
        classes.insert(canonical);
    }
    classes.len()
}

#[test]
fn universe_counts_match_naive_search() {
    for (r, expected) in [
        (fixtures::a2_f2(), [1, 2, 4]),
        (fixtures::terminal_f2(), [1, 1, 1]),
        (fixtures::terminal_f2xf2(), [1, 2, 3]),
        (fixtures::c2_f2(), [1, 1, 2]),
    ] {
        let s = SkewAlgebra::build(&r).unwrap();
        let u = Universe::build(s.algebra(), 2, Budget::default()).unwrap();
        for (n, want) in expected.into_iter().enumerate() {
            assert_eq!(naive_module_count(s.algebra(), n), want, "dimension {n}");
            assert_eq!(u.members.iter().filter(|m| m.dim() == n).count(), want, "dimension {n}");
        }
    }
}

#[test]
fn universe_sizes_at_three() {
    for (r, total) in [
        (fixtures::a2_f2(), 1 + 2 + 4 + 6),
        (fixtures::terminal_f2(), 4),
        (fixtures::terminal_f2xf2(), 1 + 2 + 3 + 4),
        (fixtures::c2_f2(), 1 + 1 + 2 + 2),
    ] {
        let s = SkewAlgebra::build(&r).unwrap();
        assert_eq!(Universe::build(s.algebra(), 3, Budget::default()).unwrap().len(), total);
    }
}

#[test]
fn skew_dimensions() {
    let dims: Vec<usize> = fixtures::named_presheaves()
        .iter()
        .map(|(_, r)| SkewAlgebra::build(r).unwrap().dim())
        .collect();
    // Σ over morphisms f of rank R(dom f)
    assert_eq!(dims, [1, 3, 2, 2, 4, 6]);
}
