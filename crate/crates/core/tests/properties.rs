use proptest::prelude::*;

use torsite_core::fixtures;
use torsite_core::grskew::{enumerate_linear_topologies, SkewAlgebra};
use torsite_core::modcat::{is_sheaf, perpendicular_check, phi_from_gr, psi_to_gr};
use torsite_core::module::{ext1_dim, hom_dim, Module};
use torsite_core::recollement::verify_recollement;
use torsite_core::universe::Universe;
use torsite_core::Budget;

fn setup(i: usize) -> (SkewAlgebra, Universe) {
    let r = fixtures::all_presheaves().swap_remove(i);
    let s = SkewAlgebra::build(&r).unwrap();
    let u = Universe::build(s.algebra(), 2, Budget::default()).unwrap();
    (s, u)
}

/// A direct sum of up to three universe members.
fn sum_of(u: &Universe, picks: &[usize]) -> Module {
    picks
        .iter()
        .map(|&i| u.members[i % u.len()].clone())
        .reduce(|a, b| a.direct_sum(&b))
        .unwrap()
}

fn element(s: &SkewAlgebra, coords: &[u32]) -> Vec<u32> {
    let p = s.ring().modulus();
    (0..s.dim()).map(|i| coords[i % coords.len()] % p).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn skew_product_is_associative_and_unital(
        i in 0usize..6,
        x in prop::collection::vec(0u32..2, 6),
        y in prop::collection::vec(0u32..2, 6),
        z in prop::collection::vec(0u32..2, 6),
    ) {
        let s = SkewAlgebra::build(&fixtures::all_presheaves()[i]).unwrap();
        let a = s.algebra();
        let (x, y, z) = (element(&s, &x), element(&s, &y), element(&s, &z));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.mul(a.unit(), &x), x.clone());
        prop_assert_eq!(a.mul(&x, a.unit()), x);
    }

    #[test]
    fn round_trip_on_sums(i in 0usize..5, picks in prop::collection::vec(0usize..64, 1..4)) {
        let (s, u) = setup(i);
        let v = sum_of(&u, &picks);
        let (m, basis) = phi_from_gr(&s, &v).unwrap();
        let back = psi_to_gr(&s, &m).unwrap();
        prop_assert_eq!(Some(back.clone()), v.change_basis(&basis));
        prop_assert_eq!(phi_from_gr(&s, &back).unwrap().0, m);
    }

    #[test]
    fn hom_and_ext_are_additive(picks in prop::collection::vec(0usize..64, 3)) {
        let (s, u) = setup(1);
        let a = s.algebra();
        let ids = s.block_idempotents();
        let (m1, m2, n) = (&u.members[picks[0] % u.len()], &u.members[picks[1] % u.len()], &u.members[picks[2] % u.len()]);
        let sum = m1.direct_sum(m2);
        prop_assert_eq!(hom_dim(&sum, n), hom_dim(m1, n) + hom_dim(m2, n));
        prop_assert_eq!(hom_dim(n, &sum), hom_dim(n, m1) + hom_dim(n, m2));
        prop_assert_eq!(
            ext1_dim(a, &ids, &sum, n).unwrap(),
            ext1_dim(a, &ids, m1, n).unwrap() + ext1_dim(a, &ids, m2, n).unwrap()
        );
    }

    #[test]
    fn sheaves_are_perpendicular_on_sums(i in 0usize..5, picks in prop::collection::vec(0usize..64, 1..4)) {
        let (s, u) = setup(i);
        let v = sum_of(&u, &picks);
        for lt in enumerate_linear_topologies(&s, Budget::default()).unwrap() {
            prop_assert_eq!(is_sheaf(&s, &v, &lt).is_sheaf, perpendicular_check(&s, &v, &lt).unwrap().perpendicular);
        }
    }
}

#[test]
fn every_idempotent_of_small_algebras_gives_a_recollement() {
    for i in [1, 2, 3] {
        let s = SkewAlgebra::build(&fixtures::all_presheaves()[i]).unwrap();
        let a = s.algebra();
        let full = torsite_core::linalg::Subspace::full(a.dim());
        for e in full.elements(a.ring()).filter(|e| a.is_idempotent(e)) {
            let report = verify_recollement(a, &e, 2, Budget::default()).unwrap();
            assert!(report.passes, "{e:?}: {:?}", report.checks.iter().filter(|c| !c.passes()).collect::<Vec<_>>());
        }
    }
}
