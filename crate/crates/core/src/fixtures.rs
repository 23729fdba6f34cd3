//! Small sites and presheaves used throughout the tests, the acceptance
//! suite and `torsite selftest`. The JSON files under `fixtures/` at the
//! workspace root describe the same data.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraPresheaf, FiniteAlgebra};
use crate::fincat::{CategoryTable, FiniteCategory, Morphism};
use crate::linalg::Matrix;
use crate::ring::BaseRing;

/// Builds a category from its non-identity composites; every composite
/// involving an identity is filled in automatically. Each object `x` gets
/// the identity named in `identities`.
pub fn category(
    objects: &[&str],
    identities: &[&str],
    arrows: &[(&str, &str, &str)],
    composites: &[(&str, &str, &str)],
) -> FiniteCategory {
    let mut table = CategoryTable {
        objects: objects.iter().map(|s| s.to_string()).collect(),
        ..Default::default()
    };
    let obj = |n: &str| objects.iter().position(|o| *o == n).expect("known object");
    for (x, id) in identities.iter().enumerate() {
        table.morphisms.push(Morphism { name: id.to_string(), dom: x, cod: x });
    }
    for &(name, dom, cod) in arrows {
        table.morphisms.push(Morphism { name: name.to_string(), dom: obj(dom), cod: obj(cod) });
    }
    table.identity = (0..objects.len()).map(Some).collect();
    for (f, m) in table.morphisms.iter().enumerate() {
        table.compose.insert((m.cod, f), f);
        table.compose.insert((f, m.dom), f);
    }
    let mor = |n: &str| table.morphisms.iter().position(|m| m.name == n).expect("known morphism");
    let extra: BTreeMap<(usize, usize), usize> = composites.iter().map(|&(g, f, h)| ((mor(g), mor(f)), mor(h))).collect();
    table.compose.extend(extra);
    FiniteCategory::try_from(table).expect("fixture category is valid")
}

fn f2() -> BaseRing {
    BaseRing::new(2).unwrap()
}

pub fn terminal_category() -> FiniteCategory {
    terminal_category_named("*", "id")
}

pub fn terminal_category_named(object: &str, identity: &str) -> FiniteCategory {
    category(&[object], &[identity], &[], &[])
}

/// `1 --a--> 2`
pub fn a2_category() -> FiniteCategory {
    category(&["1", "2"], &["id1", "id2"], &[("a", "1", "2")], &[])
}

/// `1 --a--> 2 --b--> 3` with `b∘a = ba`.
pub fn a3_category() -> FiniteCategory {
    category(
        &["1", "2", "3"],
        &["id1", "id2", "id3"],
        &[("a", "1", "2"), ("b", "2", "3"), ("ba", "1", "3")],
        &[("b", "a", "ba")],
    )
}

/// The group C₂ as a one-object category: `g∘g = 1`.
pub fn c2_category() -> FiniteCategory {
    category(&["*"], &["1"], &[("g", "*", "*")], &[("g", "g", "1")])
}

/// The monoid `{1, e}` with `e∘e = e`. Its non-identity idempotent does not
/// split, so it has a topology that is not of the form J^D.
pub fn idempotent_monoid_category() -> FiniteCategory {
    category(&["*"], &["1"], &[("e", "*", "*")], &[("e", "e", "e")])
}

pub fn all_categories() -> Vec<FiniteCategory> {
    vec![
        FiniteCategory::empty(),
        terminal_category(),
        a2_category(),
        a3_category(),
        c2_category(),
        idempotent_monoid_category(),
    ]
}

/// Categories whose topologies are exactly the subcategory topologies.
pub fn cauchy_complete_categories() -> Vec<FiniteCategory> {
    vec![FiniteCategory::empty(), terminal_category(), a2_category(), a3_category(), c2_category()]
}

pub fn terminal_f2() -> AlgebraPresheaf {
    AlgebraPresheaf::constant(terminal_category(), FiniteAlgebra::scalars(f2()))
}

pub fn terminal_f2xf2() -> AlgebraPresheaf {
    AlgebraPresheaf::constant(terminal_category(), FiniteAlgebra::product_of_scalars(f2(), 2))
}

pub fn a2_f2() -> AlgebraPresheaf {
    AlgebraPresheaf::constant(a2_category(), FiniteAlgebra::scalars(f2()))
}

pub fn a3_f2() -> AlgebraPresheaf {
    AlgebraPresheaf::constant(a3_category(), FiniteAlgebra::scalars(f2()))
}

pub fn c2_f2() -> AlgebraPresheaf {
    AlgebraPresheaf::constant(c2_category(), FiniteAlgebra::scalars(f2()))
}

/// `R(1) = F₂`, `R(2) = F₂ × F₂`, `R(a)` the projection to the first factor.
pub fn a2_mixed() -> AlgebraPresheaf {
    let cat = a2_category();
    let k = f2();
    let maps = vec![
        Matrix::identity(1),
        Matrix::identity(2),
        Matrix::from_rows(&[vec![1, 0]], 2).unwrap(),
    ];
    AlgebraPresheaf::new(
        cat,
        k,
        vec![FiniteAlgebra::scalars(k), FiniteAlgebra::product_of_scalars(k, 2)],
        maps,
    )
    .unwrap()
}

/// Name and presheaf of every shipped fixture.
pub fn named_presheaves() -> Vec<(&'static str, AlgebraPresheaf)> {
    vec![
        ("terminal_f2", terminal_f2()),
        ("a2_f2", a2_f2()),
        ("c2_f2", c2_f2()),
        ("terminal_f2xf2", terminal_f2xf2()),
        ("a2_mixed", a2_mixed()),
        ("a3_f2", a3_f2()),
    ]
}

pub fn all_presheaves() -> Vec<AlgebraPresheaf> {
    named_presheaves().into_iter().map(|(_, p)| p).collect()
}
