//! Finite-rank algebras over Z/n by structure constants, and presheaves of
//! such algebras on a finite category.

use crate::fincat::{FiniteCategory, FullSubcategory};
use crate::linalg::{self, Matrix, Subspace};
use crate::report::ValidationReport;
use crate::ring::BaseRing;
use crate::{Error, Result};

/// An associative unital algebra, free of rank `d` over the base ring.
/// `table[i][j]` holds the coordinates of `bᵢ · bⱼ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    ring: BaseRing,
    basis: Vec<String>,
    table: Vec<Vec<Vec<u32>>>,
    unit: Vec<u32>,
}

impl FiniteAlgebra {
    /// Checks only shapes and ranges; the algebra laws are checked by
    /// [`validate_algebra`].
    pub fn new(ring: BaseRing, basis: Vec<String>, table: Vec<Vec<Vec<u32>>>, unit: Vec<u32>) -> Result<Self> {
        let d = basis.len();
        let shape_ok = table.len() == d
            && table.iter().all(|row| row.len() == d && row.iter().all(|v| v.len() == d))
            && unit.len() == d;
        if !shape_ok {
            return Err(Error::Format(format!("structure constants do not match rank {d}")));
        }
        let in_range = table.iter().flatten().flatten().chain(&unit).all(|&c| ring.in_range(c));
        if !in_range {
            return Err(Error::Format(format!("coefficient outside Z/{}", ring.modulus())));
        }
        Ok(FiniteAlgebra { ring, basis, table, unit })
    }

    /// The base ring itself, rank 1.
    pub fn scalars(ring: BaseRing) -> Self {
        FiniteAlgebra {
            ring,
            basis: vec!["1".into()],
            table: vec![vec![vec![1]]],
            unit: vec![1],
        }
    }

    /// The product of `n` copies of the base ring, with idempotent basis.
    pub fn product_of_scalars(ring: BaseRing, n: usize) -> Self {
        let table = (0..n)
            .map(|i| (0..n).map(|j| if i == j { linalg::unit_vector(n, i) } else { vec![0; n] }).collect())
            .collect();
        FiniteAlgebra {
            ring,
            basis: (1..=n).map(|i| format!("e{i}")).collect(),
            table,
            unit: vec![1; n],
        }
    }

    /// The zero ring (rank 0, where 1 = 0).
    pub fn zero(ring: BaseRing) -> Self {
        FiniteAlgebra {
            ring,
            basis: Vec::new(),
            table: Vec::new(),
            unit: Vec::new(),
        }
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        &self.table[i][j]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u32> {
        linalg::unit_vector(self.dim(), i)
    }

    pub fn zero_vector(&self) -> Vec<u32> {
        vec![0; self.dim()]
    }

    pub fn mul(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        let k = self.ring;
        let d = self.dim();
        let mut out = vec![0; d];
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let c = k.mul(a, b);
                for (o, &t) in out.iter_mut().zip(&self.table[i][j]) {
                    *o = k.add(*o, k.mul(c, t));
                }
            }
        }
        out
    }

    pub fn add(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        linalg::vec_add(self.ring, u, v)
    }

    pub fn sub(&self, u: &[u32], v: &[u32]) -> Vec<u32> {
        linalg::vec_sub(self.ring, u, v)
    }

    /// Matrix of `v ↦ a v`.
    pub fn left_mul_matrix(&self, a: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim()).map(|j| self.mul(a, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    /// Matrix of `v ↦ v a`.
    pub fn right_mul_matrix(&self, a: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim()).map(|j| self.mul(&self.basis_vector(j), a)).collect();
        Matrix::from_columns(self.dim(), &cols)
    }

    pub fn is_idempotent(&self, e: &[u32]) -> bool {
        self.mul(e, e) == e
    }

    pub fn is_central(&self, z: &[u32]) -> bool {
        (0..self.dim()).all(|i| {
            let b = self.basis_vector(i);
            self.mul(z, &b) == self.mul(&b, z)
        })
    }

    /// The corner algebra `eAe` with unit `e`, and its inclusion into A
    /// (columns are the basis of eAe in A-coordinates).
    pub fn corner(&self, e: &[u32]) -> Result<(FiniteAlgebra, Matrix)> {
        self.ring.require_field()?;
        if !self.is_idempotent(e) {
            return Err(Error::Precondition("corner algebra needs an idempotent".into()));
        }
        let k = self.ring;
        let space = Subspace::span(
            k,
            self.dim(),
            (0..self.dim()).map(|i| self.mul(&self.mul(e, &self.basis_vector(i)), e)),
        );
        let basis = space.basis().to_vec();
        let table = basis
            .iter()
            .map(|u| {
                basis
                    .iter()
                    .map(|v| space.coordinates(k, &self.mul(u, v)).expect("eAe closed under products"))
                    .collect()
            })
            .collect();
        let unit = space.coordinates(k, e).expect("e lies in eAe");
        let names = (0..basis.len()).map(|i| format!("c{i}")).collect();
        Ok((FiniteAlgebra::new(k, names, table, unit)?, space.basis_matrix()))
    }

    /// `A / I` for a two-sided ideal `I`, with basis the echelon complement of
    /// `I`. Also returns the lift (columns: chosen representatives in A) and
    /// the projection `A → A/I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(FiniteAlgebra, Matrix, Matrix)> {
        self.ring.require_field()?;
        let k = self.ring;
        let d = self.dim();
        let reps = Subspace::full(d).complement_of(k, ideal);
        let q = reps.len();
        // coordinates of v modulo I: express v = Σ cᵢ repᵢ + (element of I)
        let all = Matrix::from_columns(d, &reps).hstack(&ideal.basis_matrix());
        let project = |v: &[u32]| -> Vec<u32> {
            let sol = linalg::solve(k, &all, v).expect("representatives and ideal span A");
            sol[..q].to_vec()
        };
        let table = reps
            .iter()
            .map(|u| reps.iter().map(|v| project(&self.mul(u, v))).collect())
            .collect();
        let unit = project(&self.unit);
        let projection_cols: Vec<Vec<u32>> = (0..d).map(|i| project(&self.basis_vector(i))).collect();
        let names = (0..q).map(|i| format!("q{i}")).collect();
        Ok((
            FiniteAlgebra::new(k, names, table, unit)?,
            Matrix::from_columns(d, &reps),
            Matrix::from_columns(q, &projection_cols),
        ))
    }
}

/// Checks associativity on all basis triples and the two-sided unit law.
pub fn validate_algebra(a: &FiniteAlgebra) -> ValidationReport {
    let mut report = ValidationReport::new();
    let d = a.dim();
    for i in 0..d {
        let bi = a.basis_vector(i);
        if a.mul(&a.unit, &bi) != bi || a.mul(&bi, &a.unit) != bi {
            report.push("unit law", format!("1 · {0} or {0} · 1 differs from {0}", a.basis[i]));
        }
        for j in 0..d {
            let bij = a.basis_product(i, j).to_vec();
            for l in 0..d {
                let left = a.mul(&bij, &a.basis_vector(l));
                let right = a.mul(&bi, a.basis_product(j, l));
                if left != right {
                    report.push(
                        "associativity",
                        format!("({} {}) {} ≠ {} ({} {})", a.basis[i], a.basis[j], a.basis[l], a.basis[i], a.basis[j], a.basis[l]),
                    );
                }
            }
        }
    }
    report
}

/// Whether the linear map `m: A → B` (columns: images of A's basis) is a
/// unital algebra homomorphism. Returns the first failure.
fn homomorphism_failure(src: &FiniteAlgebra, dst: &FiniteAlgebra, m: &Matrix) -> Option<String> {
    let k = src.ring;
    if m.apply(k, &src.unit) != dst.unit {
        return Some("unit not preserved".into());
    }
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = m.apply(k, src.basis_product(i, j));
            let rhs = dst.mul(&m.column(i), &m.column(j));
            if lhs != rhs {
                return Some(format!("product {} · {} not preserved", src.basis[i], src.basis[j]));
            }
        }
    }
    None
}

/// A presheaf of unital algebras `R: C^op → k-Alg`. `maps[f]` is the matrix
/// of `R(f): R(cod f) → R(dom f)` (rows: rank of `R(dom f)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresheaf {
    category: FiniteCategory,
    ring: BaseRing,
    algebras: Vec<FiniteAlgebra>,
    maps: Vec<Matrix>,
}

impl AlgebraPresheaf {
    /// Checks shapes only; laws are checked by [`validate_presheaf`].
    pub fn new(category: FiniteCategory, ring: BaseRing, algebras: Vec<FiniteAlgebra>, maps: Vec<Matrix>) -> Result<Self> {
        if algebras.len() != category.num_objects() || maps.len() != category.num_morphisms() {
            return Err(Error::Format("presheaf needs one algebra per object and one map per morphism".into()));
        }
        if let Some(a) = algebras.iter().find(|a| a.ring != ring) {
            return Err(Error::Format(format!("algebra over Z/{} in a presheaf over Z/{}", a.ring.modulus(), ring.modulus())));
        }
        for (f, m) in maps.iter().enumerate() {
            let want = (algebras[category.dom(f)].dim(), algebras[category.cod(f)].dim());
            if (m.rows(), m.cols()) != want {
                return Err(Error::Format(format!(
                    "matrix for `{}` is {}×{}, expected {}×{}",
                    category.morphism_name(f),
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
            if m.as_flat().iter().any(|&c| !ring.in_range(c)) {
                return Err(Error::Format(format!("matrix for `{}` has an entry outside Z/{}", category.morphism_name(f), ring.modulus())));
            }
        }
        Ok(AlgebraPresheaf { category, ring, algebras, maps })
    }

    /// Every object gets `algebra`, every morphism the identity.
    pub fn constant(category: FiniteCategory, algebra: FiniteAlgebra) -> Self {
        let d = algebra.dim();
        AlgebraPresheaf {
            ring: algebra.ring,
            maps: vec![Matrix::identity(d); category.num_morphisms()],
            algebras: vec![algebra; category.num_objects()],
            category,
        }
    }

    pub fn category(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn algebra(&self, x: usize) -> &FiniteAlgebra {
        &self.algebras[x]
    }

    pub fn algebras(&self) -> &[FiniteAlgebra] {
        &self.algebras
    }

    /// `R(f): R(cod f) → R(dom f)`.
    pub fn map(&self, f: usize) -> &Matrix {
        &self.maps[f]
    }
}

/// Checks that each object carries a valid algebra, each `R(f)` is a unital
/// homomorphism, `R(id) = id` and `R(g∘f) = R(f)·R(g)`.
pub fn validate_presheaf(r: &AlgebraPresheaf) -> ValidationReport {
    let mut report = ValidationReport::new();
    let cat = &r.category;
    let k = r.ring;
    for (x, a) in r.algebras.iter().enumerate() {
        let sub = validate_algebra(a);
        for v in sub.violations {
            report.push(v.rule, format!("at `{}`: {}", cat.object_name(x), v.detail));
        }
    }
    for f in 0..cat.num_morphisms() {
        let (src, dst) = (&r.algebras[cat.cod(f)], &r.algebras[cat.dom(f)]);
        if let Some(why) = homomorphism_failure(src, dst, &r.maps[f]) {
            report.push("homomorphism", format!("R({}): {why}", cat.morphism_name(f)));
        }
        if cat.is_identity(f) && r.maps[f] != Matrix::identity(src.dim()) {
            report.push("functoriality", format!("R({}) is not the identity", cat.morphism_name(f)));
        }
    }
    for g in 0..cat.num_morphisms() {
        for f in 0..cat.num_morphisms() {
            if let Some(h) = cat.compose(g, f) {
                if r.maps[h] != r.maps[f].mul(k, &r.maps[g]) {
                    report.push(
                        "functoriality",
                        format!(
                            "R({} ∘ {}) ≠ R({}) R({})",
                            cat.morphism_name(g),
                            cat.morphism_name(f),
                            cat.morphism_name(f),
                            cat.morphism_name(g)
                        ),
                    );
                }
            }
        }
    }
    report
}

/// `R|_D`: the same algebras and maps on the retained indices.
pub fn restrict_presheaf(r: &AlgebraPresheaf, d: &FullSubcategory) -> Result<AlgebraPresheaf> {
    if d.parent() != &r.category {
        return Err(Error::NotStrictlyFull);
    }
    AlgebraPresheaf::new(
        d.as_category().clone(),
        r.ring,
        d.objects().iter().map(|&x| r.algebras[x].clone()).collect(),
        d.morphisms().iter().map(|&f| r.maps[f].clone()).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn f2() -> BaseRing {
        BaseRing::new(2).unwrap()
    }

    #[test]
    fn small_algebras_validate() {
        assert!(validate_algebra(&FiniteAlgebra::scalars(f2())).passes());
        assert!(validate_algebra(&FiniteAlgebra::product_of_scalars(f2(), 2)).passes());
        assert!(validate_algebra(&FiniteAlgebra::zero(f2())).passes());
    }

    #[test]
    fn non_associative_table_is_caught() {
        // b1 b1 = b2, b2 b1 = b1, everything else 0; unit deliberately absent
        // from the basis, so only associativity matters for the witness
        let t = vec![vec![vec![0, 1], vec![0, 0]], vec![vec![1, 0], vec![0, 0]]];
        let a = FiniteAlgebra::new(f2(), vec!["b1".into(), "b2".into()], t, vec![0, 0]).unwrap();
        let report = validate_algebra(&a);
        // (b1 b1) b1 = b2 b1 = b1, but b1 (b1 b1) = b1 b2 = 0
        assert!(report.violations.iter().any(|v| v.rule == "associativity" && v.detail.starts_with("(b1 b1) b1")));
    }

    #[test]
    fn presheaf_examples() {
        assert!(validate_presheaf(&fixtures::a2_f2()).passes());
        assert!(validate_presheaf(&fixtures::a2_mixed()).passes());

        let p = fixtures::a2_f2();
        let a = p.category().morphism_index("a").unwrap();
        let mut maps: Vec<Matrix> = (0..3).map(|f| p.map(f).clone()).collect();
        maps[a] = Matrix::zeros(1, 1);
        let broken = AlgebraPresheaf::new(p.category().clone(), p.ring(), p.algebras().to_vec(), maps).unwrap();
        let report = validate_presheaf(&broken);
        assert!(report.violations.iter().any(|v| v.detail.contains("unit not preserved")));
    }

    #[test]
    fn restriction_examples() {
        let p = fixtures::a2_f2();
        let cat = p.category().clone();
        let one = restrict_presheaf(&p, &cat.full_subcategory(&[0]).unwrap()).unwrap();
        assert_eq!(one, AlgebraPresheaf::constant(fixtures::terminal_category_named("1", "id1"), FiniteAlgebra::scalars(f2())));

        let all = restrict_presheaf(&p, &cat.full_subcategory(&[0, 1]).unwrap()).unwrap();
        assert_eq!(all, p);

        let m = fixtures::a2_mixed();
        let two = restrict_presheaf(&m, &m.category().full_subcategory(&[1]).unwrap()).unwrap();
        assert_eq!(two.algebra(0), &FiniteAlgebra::product_of_scalars(f2(), 2));
        assert!(validate_presheaf(&two).passes());

        let other = fixtures::terminal_category().full_subcategory(&[0]).unwrap();
        assert!(matches!(restrict_presheaf(&p, &other), Err(Error::NotStrictlyFull)));
    }

    #[test]
    fn functoriality_is_matrix_product() {
        for r in fixtures::all_presheaves() {
            let cat = r.category();
            for g in 0..cat.num_morphisms() {
                for f in 0..cat.num_morphisms() {
                    if let Some(h) = cat.compose(g, f) {
                        assert_eq!(r.map(h), &r.map(f).mul(r.ring(), r.map(g)));
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_preserves_validity() {
        for r in fixtures::all_presheaves() {
            for d in r.category().full_subcategories().unwrap() {
                assert!(validate_presheaf(&restrict_presheaf(&r, &d).unwrap()).passes());
            }
        }
    }

    #[test]
    fn corner_and_quotient_of_t2() {
        let site = crate::grskew::SkewAlgebra::build(&fixtures::a2_f2()).unwrap();
        let a = site.algebra();
        let e2 = site.block_idempotent(1);
        let (corner, _) = a.corner(&e2).unwrap();
        assert_eq!(corner.dim(), 1);
        assert!(validate_algebra(&corner).passes());

        let ideal = crate::torsion::ideal_generated_by(a, std::slice::from_ref(&e2)).unwrap();
        assert_eq!(ideal.dim(), 2);
        let (q, _, proj) = a.quotient(ideal.space()).unwrap();
        assert_eq!(q.dim(), 1);
        assert!(validate_algebra(&q).passes());
        // projection is an algebra map
        for i in 0..3 {
            for j in 0..3 {
                let lhs = proj.apply(a.ring(), &a.mul(&a.basis_vector(i), &a.basis_vector(j)));
                let rhs = q.mul(&proj.column(i), &proj.column(j));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
