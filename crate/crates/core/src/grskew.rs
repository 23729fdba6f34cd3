//! The linear Grothendieck construction Gr(R), the skew category algebra
//! R[C], the ring isomorphism between them, and linear topologies.
//!
//! Linear sieves are stored in R[C] coordinates: a subfunctor of
//! `hom(−, x)` in Gr(R) is a right submodule of `e_x R[C]`, where
//! `e_x = 1_{R(x)} id_x`, and its value at `y` is its intersection with
//! `e_x R[C] e_y = hom(y, x)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{validate_presheaf, AlgebraPresheaf, FiniteAlgebra};
use crate::fincat::FiniteCategory;
use crate::linalg::{self, invariant_subspaces, Subspace};
use crate::report::ValidationReport;
use crate::ring::BaseRing;
use crate::topology::{is_topology, GrothendieckTopology, Sieve};
use crate::{Budget, Error, Result};

/// Gr(R): objects of C, `hom(x, y) = ⊕_{f: x→y} R(x)`, with the twisted
/// composition `(s at g) ∘ (r at f) = R(f)(s)·r at g∘f`.
#[derive(Clone, Debug)]
pub struct GrCategory {
    presheaf: AlgebraPresheaf,
}

impl GrCategory {
    pub fn build(presheaf: &AlgebraPresheaf) -> Result<Self> {
        validate_presheaf(presheaf).into_result("presheaf of algebras")?;
        Ok(GrCategory {
            presheaf: presheaf.clone(),
        })
    }

    pub fn presheaf(&self) -> &AlgebraPresheaf {
        &self.presheaf
    }

    pub fn category(&self) -> &FiniteCategory {
        self.presheaf.category()
    }

    fn rank(&self, x: usize) -> usize {
        self.presheaf.algebra(x).dim()
    }

    /// Basis of `hom(x, y)`: pairs `(f, i)` with `f: x → y` and `i` a basis
    /// index of `R(x)`, ordered by morphism then `i`.
    pub fn hom_basis(&self, x: usize, y: usize) -> Vec<(usize, usize)> {
        let r = self.rank(x);
        self.category()
            .hom(x, y)
            .into_iter()
            .flat_map(|f| (0..r).map(move |i| (f, i)))
            .collect()
    }

    pub fn hom_rank(&self, x: usize, y: usize) -> usize {
        self.category().hom(x, y).len() * self.rank(x)
    }

    /// The identity of `x`: `1_{R(x)}` at `id_x`.
    pub fn identity(&self, x: usize) -> Vec<u32> {
        let cat = self.category();
        let pos = cat.hom(x, x).iter().position(|&f| f == cat.identity(x)).unwrap();
        let r = self.rank(x);
        let mut v = vec![0; self.hom_rank(x, x)];
        v[pos * r..(pos + 1) * r].copy_from_slice(self.presheaf.algebra(x).unit());
        v
    }

    /// `s ∘ r` for `r ∈ hom(x, y)` and `s ∈ hom(y, z)`.
    pub fn compose(&self, x: usize, y: usize, z: usize, s: &[u32], r: &[u32]) -> Vec<u32> {
        let cat = self.category();
        let k = self.presheaf.ring();
        let rx = self.presheaf.algebra(x);
        let (hxy, hyz, hxz) = (cat.hom(x, y), cat.hom(y, z), cat.hom(x, z));
        let (ry, rxd) = (self.rank(y), rx.dim());
        assert_eq!(s.len(), hyz.len() * ry);
        assert_eq!(r.len(), hxy.len() * rxd);
        let mut out = vec![0; hxz.len() * rxd];
        for (gp, &g) in hyz.iter().enumerate() {
            let s_g = &s[gp * ry..(gp + 1) * ry];
            if linalg::is_zero(s_g) {
                continue;
            }
            for (fp, &f) in hxy.iter().enumerate() {
                let r_f = &r[fp * rxd..(fp + 1) * rxd];
                if linalg::is_zero(r_f) {
                    continue;
                }
                let h = cat.compose(g, f).expect("dom g = y = cod f");
                let hp = hxz.iter().position(|&m| m == h).unwrap();
                let value = rx.mul(&self.presheaf.map(f).apply(k, s_g), r_f);
                for (o, &c) in out[hp * rxd..(hp + 1) * rxd].iter_mut().zip(&value) {
                    *o = k.add(*o, c);
                }
            }
        }
        out
    }
}

/// R[C]: basis `r f` for `f ∈ Mor C` and `r` a basis element of `R(dom f)`,
/// with `s g ∗ r f = (R(f)(s)·r) gf` when `dom g = cod f`, else 0.
#[derive(Clone, Debug)]
pub struct SkewAlgebra {
    presheaf: AlgebraPresheaf,
    algebra: FiniteAlgebra,
    category: FiniteCategory,
    ranks: Vec<usize>,
    offsets: Vec<usize>,
    entries: Vec<(usize, usize)>,
}

impl SkewAlgebra {
    pub fn build(presheaf: &AlgebraPresheaf) -> Result<Self> {
        validate_presheaf(presheaf).into_result("presheaf of algebras")?;
        let cat = presheaf.category();
        let k = presheaf.ring();
        let ranks: Vec<usize> = (0..cat.num_objects()).map(|x| presheaf.algebra(x).dim()).collect();
        let mut offsets = Vec::with_capacity(cat.num_morphisms());
        let mut entries = Vec::new();
        for f in 0..cat.num_morphisms() {
            offsets.push(entries.len());
            entries.extend((0..ranks[cat.dom(f)]).map(|i| (f, i)));
        }
        let d = entries.len();
        let mut table = vec![vec![vec![0u32; d]; d]; d];
        for (a, &(g, j)) in entries.iter().enumerate() {
            for (b, &(f, i)) in entries.iter().enumerate() {
                let Some(h) = cat.compose(g, f) else { continue };
                let rf = presheaf.algebra(cat.dom(f));
                let s = presheaf.map(f).column(j);
                let value = rf.mul(&s, &rf.basis_vector(i));
                table[a][b][offsets[h]..offsets[h] + value.len()].copy_from_slice(&value);
            }
        }
        let mut unit = vec![0; d];
        for x in 0..cat.num_objects() {
            let o = offsets[cat.identity(x)];
            unit[o..o + ranks[x]].copy_from_slice(presheaf.algebra(x).unit());
        }
        let names = entries
            .iter()
            .map(|&(f, i)| format!("{}@{}", presheaf.algebra(cat.dom(f)).basis_names()[i], cat.morphism_name(f)))
            .collect();
        Ok(SkewAlgebra {
            presheaf: presheaf.clone(),
            algebra: FiniteAlgebra::new(k, names, table, unit)?,
            category: cat.clone(),
            ranks,
            offsets,
            entries,
        })
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn presheaf(&self) -> &AlgebraPresheaf {
        &self.presheaf
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn ring(&self) -> BaseRing {
        self.algebra.ring()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn num_objects(&self) -> usize {
        self.category.num_objects()
    }

    /// Rank of `R(x)`.
    pub fn rank(&self, x: usize) -> usize {
        self.ranks[x]
    }

    pub fn basis_index(&self, f: usize, i: usize) -> usize {
        assert!(i < self.ranks[self.category.dom(f)]);
        self.offsets[f] + i
    }

    /// `(f, i)` for basis index `b`.
    pub fn entry(&self, b: usize) -> (usize, usize) {
        self.entries[b]
    }

    /// `e_x = 1_{R(x)} id_x`.
    pub fn block_idempotent(&self, x: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        let o = self.offsets[self.category.identity(x)];
        // the unit of R[C] restricted to the id_x block is 1_{R(x)}
        v[o..o + self.ranks[x]].copy_from_slice(&self.algebra.unit()[o..o + self.ranks[x]]);
        v
    }

    pub fn block_idempotents(&self) -> Vec<Vec<u32>> {
        (0..self.num_objects()).map(|x| self.block_idempotent(x)).collect()
    }

    fn span_of_morphisms(&self, keep: impl Fn(usize) -> bool) -> Subspace {
        let d = self.dim();
        Subspace::span(
            self.ring(),
            d,
            (0..d).filter(|&b| keep(self.entries[b].0)).map(|b| linalg::unit_vector(d, b)),
        )
    }

    /// `hom_{Gr(R)}(y, x) = e_x R[C] e_y`: span of `r f` with `f: y → x`.
    pub fn hom_space(&self, y: usize, x: usize) -> Subspace {
        let cat = &self.category;
        self.span_of_morphisms(|f| cat.dom(f) == y && cat.cod(f) == x)
    }

    /// `e_x R[C]`, the representable `hom(−, x)` summed over all sources.
    pub fn representable(&self, x: usize) -> Subspace {
        let cat = &self.category;
        self.span_of_morphisms(|f| cat.cod(f) == x)
    }

    /// Basis names, `"<algebra basis>@<morphism>"`.
    pub fn basis_names(&self) -> &[String] {
        self.algebra.basis_names()
    }

    /// Right multiplication matrices `v ↦ v ∗ b` for every basis element.
    pub fn right_actions(&self) -> Vec<linalg::Matrix> {
        (0..self.dim()).map(|b| self.algebra.right_mul_matrix(&self.algebra.basis_vector(b))).collect()
    }
}

/// Result of checking that `Φ: ⊕_{x,y} hom(x, y) → R[C]`, `(r_f)_f ↦ Σ r f`,
/// is a unital ring isomorphism.
#[derive(Clone, Debug, Serialize)]
pub struct IsoWitness {
    pub bijective: bool,
    pub unital: bool,
    pub pairs_checked: usize,
    pub multiplicative_failures: Vec<String>,
}

impl IsoWitness {
    pub fn passes(&self) -> bool {
        self.bijective && self.unital && self.multiplicative_failures.is_empty()
    }
}

/// Verifies End(⊕ₓ hom(−, x)) ≅ R[C] on every pair of basis morphisms of
/// Gr(R). Composites of non-composable components must vanish in R[C].
pub fn end_generator_iso(gr: &GrCategory, skew: &SkewAlgebra) -> IsoWitness {
    let cat = gr.category();
    let n = cat.num_objects();
    let k = skew.ring();
    let a = skew.algebra();
    let phi = |x: usize, y: usize, v: &[u32]| -> Vec<u32> {
        let mut out = vec![0; skew.dim()];
        for (c, (f, i)) in v.iter().zip(gr.hom_basis(x, y)) {
            out[skew.basis_index(f, i)] = k.add(out[skew.basis_index(f, i)], *c);
        }
        out
    };

    let mut hit = vec![0usize; skew.dim()];
    for x in 0..n {
        for y in 0..n {
            for (f, i) in gr.hom_basis(x, y) {
                hit[skew.basis_index(f, i)] += 1;
            }
        }
    }
    let bijective = hit.iter().all(|&h| h == 1);

    let mut unit = vec![0; skew.dim()];
    for x in 0..n {
        unit = linalg::vec_add(k, &unit, &phi(x, x, &gr.identity(x)));
    }
    let unital = unit == a.unit();

    let mut failures = Vec::new();
    let mut pairs = 0;
    for x in 0..n {
        for y in 0..n {
            let dim_xy = gr.hom_rank(x, y);
            for u in 0..dim_xy {
                let r = linalg::unit_vector(dim_xy, u);
                let phi_r = phi(x, y, &r);
                for y2 in 0..n {
                    for z in 0..n {
                        let dim_yz = gr.hom_rank(y2, z);
                        for v in 0..dim_yz {
                            let s = linalg::unit_vector(dim_yz, v);
                            pairs += 1;
                            let product = a.mul(&phi(y2, z, &s), &phi_r);
                            let expected = if y2 == y {
                                phi(x, z, &gr.compose(x, y, z, &s, &r))
                            } else {
                                vec![0; skew.dim()]
                            };
                            if product != expected {
                                failures.push(format!(
                                    "Φ(s ∘ r) ≠ Φ(s) ∗ Φ(r) for basis s of hom({}, {}) #{v}, r of hom({}, {}) #{u}",
                                    cat.object_name(y2),
                                    cat.object_name(z),
                                    cat.object_name(x),
                                    cat.object_name(y)
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    IsoWitness {
        bijective,
        unital,
        pairs_checked: pairs,
        multiplicative_failures: failures,
    }
}

/// A subfunctor of `hom(−, x)` in Gr(R), as a right submodule of `e_x R[C]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearSieve {
    pub target: usize,
    pub space: Subspace,
}

impl LinearSieve {
    pub fn maximal(skew: &SkewAlgebra, x: usize) -> Self {
        LinearSieve {
            target: x,
            space: skew.representable(x),
        }
    }

    pub fn zero(skew: &SkewAlgebra, x: usize) -> Self {
        LinearSieve {
            target: x,
            space: Subspace::zero(skew.dim()),
        }
    }

    /// `T(y) ⊆ hom(y, x)`.
    pub fn part(&self, skew: &SkewAlgebra, y: usize) -> Subspace {
        self.space.intersect(skew.ring(), &skew.hom_space(y, self.target))
    }

    pub fn is_subset_of(&self, skew: &SkewAlgebra, other: &LinearSieve) -> bool {
        self.target == other.target && self.space.is_subspace_of(skew.ring(), &other.space)
    }

    /// Lies in `e_x R[C]` and is closed under precomposition.
    pub fn is_valid(&self, skew: &SkewAlgebra) -> bool {
        let k = skew.ring();
        self.space.ambient() == skew.dim()
            && self.space.is_subspace_of(k, &skew.representable(self.target))
            && skew
                .right_actions()
                .iter()
                .all(|m| self.space.image(k, m).is_subspace_of(k, &self.space))
    }
}

/// All subfunctors of `hom(−, x)`, in canonical echelon order.
pub fn subfunctors(skew: &SkewAlgebra, x: usize, budget: Budget) -> Result<Vec<LinearSieve>> {
    skew.ring().require_field()?;
    Ok(invariant_subspaces(skew.ring(), &skew.representable(x), &skew.right_actions(), budget)?
        .into_iter()
        .map(|space| LinearSieve { target: x, space })
        .collect())
}

/// `f*T = { u ∈ hom(−, y) : f ∘ u ∈ T }` for `f ∈ hom(y, x)`.
pub fn pullback_linear(skew: &SkewAlgebra, t: &LinearSieve, f: &[u32], y: usize) -> LinearSieve {
    let k = skew.ring();
    let left = skew.algebra().left_mul_matrix(f);
    LinearSieve {
        target: y,
        space: t.space.preimage(k, &left).intersect(k, &skew.representable(y)),
    }
}

/// ⟨S⟩: the span of every `r f` with `f ∈ S`.
pub fn linearize_sieve(skew: &SkewAlgebra, s: &Sieve) -> Result<LinearSieve> {
    if !s.is_valid(skew.category()) {
        return Err(Error::Precondition(format!("{:?} is not a sieve", s.names(skew.category()))));
    }
    let d = skew.dim();
    let cat = skew.category();
    let vectors = s
        .members()
        .into_iter()
        .flat_map(|f| (0..skew.rank(cat.dom(f))).map(move |i| (f, i)))
        .map(|(f, i)| linalg::unit_vector(d, skew.basis_index(f, i)));
    Ok(LinearSieve {
        target: s.target,
        space: Subspace::span(skew.ring(), d, vectors),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearTopology {
    covers: Vec<BTreeSet<LinearSieve>>,
}

impl LinearTopology {
    pub fn new(covers: Vec<BTreeSet<LinearSieve>>) -> Self {
        LinearTopology { covers }
    }

    pub fn trivial(skew: &SkewAlgebra) -> Self {
        LinearTopology {
            covers: (0..skew.num_objects())
                .map(|x| BTreeSet::from([LinearSieve::maximal(skew, x)]))
                .collect(),
        }
    }

    pub fn covers(&self, x: usize) -> &BTreeSet<LinearSieve> {
        &self.covers[x]
    }

    pub fn num_objects(&self) -> usize {
        self.covers.len()
    }

    pub fn is_cover(&self, t: &LinearSieve) -> bool {
        self.covers.get(t.target).is_some_and(|c| c.contains(t))
    }
}

/// Checks the three axioms of a linear topology. Pullbacks are taken along
/// every element of every hom-module, not just basis elements.
pub fn is_linear_topology(skew: &SkewAlgebra, j: &LinearTopology, budget: Budget) -> Result<ValidationReport> {
    skew.ring().require_field()?;
    let k = skew.ring();
    let cat = skew.category();
    let n = skew.num_objects();
    let mut report = ValidationReport::new();
    if j.num_objects() != n {
        report.push("shape", format!("{} cover sets for {} objects", j.num_objects(), n));
        return Ok(report);
    }
    for x in 0..n {
        for t in j.covers(x) {
            if t.target != x || !t.is_valid(skew) {
                report.push("invalid sieve", format!("a listed cover at `{}` is not a subfunctor of hom(−, {0})", cat.object_name(x)));
            }
        }
    }
    if !report.passes() {
        return Ok(report);
    }

    for x in 0..n {
        let name = cat.object_name(x);
        if !j.is_cover(&LinearSieve::maximal(skew, x)) {
            report.push("maximality", format!("hom(−, {name}) is not a cover"));
        }
        for t in j.covers(x) {
            for y in 0..n {
                let hom = skew.hom_space(y, x);
                budget.check("enumerating a hom-module", hom.element_count(k))?;
                for f in hom.elements(k) {
                    if !j.is_cover(&pullback_linear(skew, t, &f, y)) {
                        report.push(
                            "stability",
                            format!("pullback of a cover of `{name}` along {f:?} ∈ hom({}, {name}) does not cover", cat.object_name(y)),
                        );
                    }
                }
            }
        }
        for s2 in subfunctors(skew, x, budget)? {
            if j.is_cover(&s2) {
                continue;
            }
            for s1 in j.covers(x) {
                let mut locally_covered = true;
                'outer: for y in 0..n {
                    let part = s1.part(skew, y);
                    budget.check("enumerating a cover", part.element_count(k))?;
                    for f in part.elements(k) {
                        if !j.is_cover(&pullback_linear(skew, &s2, &f, y)) {
                            locally_covered = false;
                            break 'outer;
                        }
                    }
                }
                if locally_covered {
                    report.push(
                        "transitivity",
                        format!("a subfunctor of hom(−, {name}) of rank {} is locally covered but not a cover", s2.space.dim()),
                    );
                    break;
                }
            }
        }
    }
    Ok(report)
}

/// `J′(x) = { T : T ⊇ ⟨S⟩ for some S ∈ J(x) }`.
pub fn linearize_topology(skew: &SkewAlgebra, j: &GrothendieckTopology, budget: Budget) -> Result<LinearTopology> {
    is_topology(skew.category(), j).into_result("Grothendieck topology")?;
    let covers = (0..skew.num_objects())
        .map(|x| {
            let generators = j
                .covers(x)
                .iter()
                .map(|s| linearize_sieve(skew, s))
                .collect::<Result<Vec<_>>>()?;
            Ok(subfunctors(skew, x, budget)?
                .into_iter()
                .filter(|t| generators.iter().any(|g| g.is_subset_of(skew, t)))
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearTopology::new(covers))
}

/// Every linear topology on Gr(R), in canonical order.
///
/// Cover sets of a linear topology are closed under supersets and finite
/// intersections, so on a finite lattice each `J(x)` is the principal
/// filter above its smallest cover. Candidates are therefore one choice of
/// smallest cover per object; each is then checked against all axioms.
pub fn enumerate_linear_topologies(skew: &SkewAlgebra, budget: Budget) -> Result<Vec<LinearTopology>> {
    let n = skew.num_objects();
    let subs: Vec<Vec<LinearSieve>> = (0..n).map(|x| subfunctors(skew, x, budget)).collect::<Result<_>>()?;
    let total = subs.iter().fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128));
    budget.check("enumerating candidate linear topologies", total)?;

    let mut out = BTreeSet::new();
    let mut choice = vec![0usize; n];
    loop {
        let covers = (0..n)
            .map(|x| {
                let least = &subs[x][choice[x]];
                subs[x].iter().filter(|t| least.is_subset_of(skew, t)).cloned().collect()
            })
            .collect();
        let j = LinearTopology::new(covers);
        if is_linear_topology(skew, &j, budget)?.passes() {
            out.insert(j);
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(out.into_iter().collect());
            }
            choice[i] += 1;
            if choice[i] < subs[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;
    use crate::fixtures;
    use crate::topology::{enumerate_topologies, subcategory_topology};

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn gr_of_terminal_is_f2() {
        let gr = GrCategory::build(&fixtures::terminal_f2()).unwrap();
        assert_eq!(gr.hom_rank(0, 0), 1);
        assert_eq!(gr.compose(0, 0, 0, &[1], &[1]), vec![1]);
        assert_eq!(gr.compose(0, 0, 0, &[1], &[0]), vec![0]);
    }

    #[test]
    fn gr_of_a2_homs() {
        let gr = GrCategory::build(&fixtures::a2_f2()).unwrap();
        assert_eq!(gr.hom_rank(0, 0), 1);
        assert_eq!(gr.hom_rank(0, 1), 1);
        assert_eq!(gr.hom_rank(1, 1), 1);
        assert_eq!(gr.hom_rank(1, 0), 0);
        // (1 at a) ∘ (1 at id1) = 1 at a
        assert_eq!(gr.compose(0, 0, 1, &[1], &gr.identity(0)), vec![1]);
    }

    #[test]
    fn skew_dimensions_and_laws() {
        let expected = [("terminal_f2", 1), ("a2_f2", 3), ("c2_f2", 2), ("terminal_f2xf2", 2), ("a2_mixed", 4), ("a3_f2", 6)];
        for (name, p) in fixtures::named_presheaves() {
            let s = SkewAlgebra::build(&p).unwrap();
            let want = expected.iter().find(|e| e.0 == name).unwrap().1;
            assert_eq!(s.dim(), want, "{name}");
            let cat = p.category();
            let sum: usize = (0..cat.num_morphisms()).map(|f| p.algebra(cat.dom(f)).dim()).sum();
            assert_eq!(s.dim(), sum);
            assert!(validate_algebra(s.algebra()).passes(), "{name}");
        }
    }

    #[test]
    fn a2_skew_product_table() {
        let s = SkewAlgebra::build(&fixtures::a2_f2()).unwrap();
        let a = s.algebra();
        let (id1, id2, arrow) = (a.basis_vector(0), a.basis_vector(1), a.basis_vector(2));
        assert_eq!(a.mul(&id2, &arrow), arrow);
        assert_eq!(a.mul(&arrow, &id1), arrow);
        assert_eq!(a.mul(&arrow, &arrow), a.zero_vector());
        assert_eq!(a.mul(&id1, &arrow), a.zero_vector());
        assert_eq!(a.unit(), &[1, 1, 0]);
        assert_eq!(s.basis_names(), &["1@id1", "1@id2", "1@a"]);
    }

    #[test]
    fn c2_skew_is_group_algebra() {
        let s = SkewAlgebra::build(&fixtures::c2_f2()).unwrap();
        let a = s.algebra();
        let g = a.basis_vector(1);
        assert_eq!(a.mul(&g, &g), a.unit());
        assert!(a.is_central(&g));
    }

    #[test]
    fn iso_witness_on_fixtures() {
        for p in fixtures::all_presheaves() {
            let gr = GrCategory::build(&p).unwrap();
            let s = SkewAlgebra::build(&p).unwrap();
            let w = end_generator_iso(&gr, &s);
            assert!(w.passes(), "{:?}", w.multiplicative_failures);
        }
        let p = fixtures::a2_f2();
        let w = end_generator_iso(&GrCategory::build(&p).unwrap(), &SkewAlgebra::build(&p).unwrap());
        // three basis morphisms, every ordered pair
        assert_eq!(w.pairs_checked, 9);
    }

    #[test]
    fn linearize_sieve_examples() {
        let s = SkewAlgebra::build(&fixtures::a2_f2()).unwrap();
        let cat = s.category().clone();
        assert_eq!(linearize_sieve(&s, &Sieve::maximal(&cat, 1)).unwrap(), LinearSieve::maximal(&s, 1));
        assert_eq!(linearize_sieve(&s, &Sieve::empty(1)).unwrap(), LinearSieve::zero(&s, 1));
        let a = cat.morphism_index("a").unwrap();
        let ls = linearize_sieve(&s, &Sieve { target: 1, members: 1 << a }).unwrap();
        assert_eq!(ls.part(&s, 0), s.hom_space(0, 1));
        assert!(ls.part(&s, 1).is_zero());
        assert!(ls.is_valid(&s));
        assert!(linearize_sieve(&s, &Sieve { target: 1, members: 1 << cat.identity(1) }).is_err());
    }

    #[test]
    fn linearize_preserves_inclusions() {
        for p in fixtures::all_presheaves() {
            let s = SkewAlgebra::build(&p).unwrap();
            let cat = s.category().clone();
            for x in 0..cat.num_objects() {
                let sieves = crate::topology::sieves_on(&cat, x).unwrap();
                for a in &sieves {
                    for c in &sieves {
                        if a.is_subset_of(c) {
                            let (la, lc) = (linearize_sieve(&s, a).unwrap(), linearize_sieve(&s, c).unwrap());
                            assert!(la.is_subset_of(&s, &lc));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn linearize_topology_examples() {
        let s = SkewAlgebra::build(&fixtures::terminal_f2()).unwrap();
        let cat = s.category().clone();
        let jt = linearize_topology(&s, &GrothendieckTopology::trivial(&cat), b()).unwrap();
        assert_eq!(jt, LinearTopology::trivial(&s));

        let all = GrothendieckTopology::new(vec![BTreeSet::from([Sieve::maximal(&cat, 0), Sieve::empty(0)])]);
        let j = linearize_topology(&s, &all, b()).unwrap();
        assert_eq!(j.covers(0).len(), 2);

        let s2 = SkewAlgebra::build(&fixtures::a2_f2()).unwrap();
        let a2 = s2.category().clone();
        let jd = subcategory_topology(&a2, &a2.full_subcategory(&[0]).unwrap()).unwrap();
        let lin = linearize_topology(&s2, &jd, b()).unwrap();
        assert_eq!(lin.covers(1).len(), 2);
        for t in lin.covers(1) {
            assert_eq!(t.part(&s2, 0), s2.hom_space(0, 1));
        }
    }

    #[test]
    fn linearized_topologies_are_linear_topologies() {
        for p in fixtures::all_presheaves() {
            let s = SkewAlgebra::build(&p).unwrap();
            for j in enumerate_topologies(s.category(), b()).unwrap() {
                let lin = linearize_topology(&s, &j, b()).unwrap();
                assert!(is_linear_topology(&s, &lin, b()).unwrap().passes());
            }
        }
    }

    #[test]
    fn missing_maximal_cover_fails() {
        let s = SkewAlgebra::build(&fixtures::terminal_f2()).unwrap();
        let j = LinearTopology::new(vec![BTreeSet::from([LinearSieve::zero(&s, 0)])]);
        assert!(is_linear_topology(&s, &j, b()).unwrap().has_rule("maximality"));
    }

    #[test]
    fn factor_ideal_topology_on_product() {
        // {A, e1 A}: torsion modules are those killed by e1, a hereditary
        // torsion class, so all three axioms hold
        let s = SkewAlgebra::build(&fixtures::terminal_f2xf2()).unwrap();
        let e1 = LinearSieve {
            target: 0,
            space: Subspace::span(s.ring(), 2, [vec![1, 0]]),
        };
        let j = LinearTopology::new(vec![BTreeSet::from([LinearSieve::maximal(&s, 0), e1])]);
        assert!(is_linear_topology(&s, &j, b()).unwrap().passes());

        // {A, 0} is not upward closed: the factor ideals are locally covered
        let j = LinearTopology::new(vec![BTreeSet::from([LinearSieve::maximal(&s, 0), LinearSieve::zero(&s, 0)])]);
        assert!(is_linear_topology(&s, &j, b()).unwrap().has_rule("transitivity"));
    }

    #[test]
    fn linear_topology_counts() {
        let count = |p| enumerate_linear_topologies(&SkewAlgebra::build(&p).unwrap(), b()).unwrap().len();
        assert_eq!(count(fixtures::terminal_f2()), 2);
        assert_eq!(count(fixtures::terminal_f2xf2()), 4);
        assert_eq!(count(fixtures::a2_f2()), 4);
        assert_eq!(count(fixtures::c2_f2()), 2);
    }
}
