//! Finite right modules over a finite algebra, given by one action matrix
//! per basis element of the algebra.
//!
//! Vectors are columns and `v · b = actions[b] v`, so a module satisfies
//! `actions[ab] = actions[b] · actions[a]`. Maps between modules are
//! matrices with rows indexed by the target.

use crate::algebra::FiniteAlgebra;
use crate::linalg::{self, invariant_closure, invariant_subspaces, Matrix, Subspace};
use crate::report::ValidationReport;
use crate::ring::BaseRing;
use crate::{Budget, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Module {
    ring: BaseRing,
    dim: usize,
    actions: Vec<Matrix>,
}

impl Module {
    pub fn new(ring: BaseRing, dim: usize, actions: Vec<Matrix>) -> Result<Self> {
        for (b, m) in actions.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::TypeMismatch(format!(
                    "action of basis element {b} is {}x{}, module has dimension {dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.as_flat().iter().any(|&x| !ring.in_range(x)) {
                return Err(Error::TypeMismatch(format!("action of basis element {b} has an entry out of range")));
            }
        }
        Ok(Module { ring, dim, actions })
    }

    pub fn zero(a: &FiniteAlgebra) -> Self {
        Module {
            ring: a.ring(),
            dim: 0,
            actions: vec![Matrix::zeros(0, 0); a.dim()],
        }
    }

    /// A acting on itself by right multiplication.
    pub fn regular(a: &FiniteAlgebra) -> Self {
        Module {
            ring: a.ring(),
            dim: a.dim(),
            actions: (0..a.dim()).map(|b| a.right_mul_matrix(&a.basis_vector(b))).collect(),
        }
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn action(&self, b: usize) -> &Matrix {
        &self.actions[b]
    }

    /// Matrix of `v ↦ v · a` for an algebra element `a` in basis coordinates.
    pub fn act_by(&self, a: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (b, &c) in a.iter().enumerate() {
            if c != 0 {
                m.add_scaled(self.ring, c, &self.actions[b]);
            }
        }
        m
    }

    pub fn act(&self, v: &[u32], a: &[u32]) -> Vec<u32> {
        self.act_by(a).apply(self.ring, v)
    }

    /// Smallest submodule containing `start`.
    pub fn closure(&self, start: &Subspace) -> Subspace {
        invariant_closure(self.ring, start, &self.actions)
    }

    pub fn is_submodule(&self, s: &Subspace) -> bool {
        let k = self.ring;
        s.ambient() == self.dim && self.actions.iter().all(|m| s.image(k, m).is_subspace_of(k, s))
    }

    /// Every submodule, in canonical order.
    pub fn submodules(&self, budget: Budget) -> Result<Vec<Subspace>> {
        self.ring.require_field()?;
        invariant_subspaces(self.ring, &Subspace::full(self.dim), &self.actions, budget)
    }

    /// The submodule `s` as a module in its echelon basis, with the inclusion.
    pub fn submodule(&self, s: &Subspace) -> (Module, Matrix) {
        let k = self.ring;
        assert!(self.is_submodule(s), "not a submodule");
        let actions = self
            .actions
            .iter()
            .map(|m| {
                let cols: Vec<Vec<u32>> = s
                    .basis()
                    .iter()
                    .map(|w| s.coordinates(k, &m.apply(k, w)).expect("submodule is stable"))
                    .collect();
                Matrix::from_columns(s.dim(), &cols)
            })
            .collect();
        (
            Module {
                ring: k,
                dim: s.dim(),
                actions,
            },
            s.basis_matrix(),
        )
    }

    /// `self / s`, on the echelon complement of `s`, with the projection.
    pub fn quotient(&self, s: &Subspace) -> (Module, Matrix) {
        let k = self.ring;
        assert!(self.is_submodule(s), "not a submodule");
        let reps = Subspace::full(self.dim).complement_of(k, s);
        let q = reps.len();
        let all = Matrix::from_columns(self.dim, &reps).hstack(&s.basis_matrix());
        let inv = all.inverse(k).expect("complement and submodule span the module");
        let projection = inv.block(0, 0, q, self.dim);
        let lift = Matrix::from_columns(self.dim, &reps);
        let actions = self.actions.iter().map(|m| projection.mul(k, &m.mul(k, &lift))).collect();
        (Module { ring: k, dim: q, actions }, projection)
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        let n = self.dim + other.dim;
        let actions = self
            .actions
            .iter()
            .zip(&other.actions)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(n, n);
                m.set_block(0, 0, a);
                m.set_block(self.dim, self.dim, b);
                m
            })
            .collect();
        Module {
            ring: self.ring,
            dim: n,
            actions,
        }
    }

    /// The same module in a new basis: columns of `p` are the new basis
    /// vectors written in the old one.
    pub fn change_basis(&self, p: &Matrix) -> Option<Module> {
        let k = self.ring;
        let inv = p.inverse(k)?;
        Some(Module {
            ring: k,
            dim: self.dim,
            actions: self.actions.iter().map(|m| inv.mul(k, &m.mul(k, p))).collect(),
        })
    }

    /// `self · I` for a subspace `I` of the algebra (a right ideal gives a
    /// submodule).
    pub fn times_ideal(&self, ideal: &Subspace) -> Subspace {
        let k = self.ring;
        Subspace::span(
            k,
            self.dim,
            ideal
                .basis()
                .iter()
                .flat_map(|i| {
                    let m = self.act_by(i);
                    (0..self.dim).map(move |j| m.column(j))
                })
                .collect::<Vec<_>>(),
        )
    }

    /// `{m : m · i = 0 for all i ∈ I}`.
    pub fn annihilated_by(&self, ideal: &Subspace) -> Subspace {
        let k = self.ring;
        let mut s = Subspace::full(self.dim);
        for i in ideal.basis() {
            s = s.intersect(k, &Subspace::span(k, self.dim, linalg::kernel(k, &self.act_by(i))));
        }
        s
    }

    /// Cheap isomorphism invariants: dimension and the rank of each action.
    pub fn fingerprint(&self) -> (usize, Vec<usize>) {
        (self.dim, self.actions.iter().map(|m| m.rank(self.ring)).collect())
    }
}

/// Checks that the action is unital and associative on every basis pair.
pub fn validate_module(a: &FiniteAlgebra, m: &Module) -> ValidationReport {
    let mut report = ValidationReport::new();
    let k = a.ring();
    if m.ring != k {
        report.push("base ring", format!("module over Z/{} for an algebra over Z/{}", m.ring.modulus(), k.modulus()));
        return report;
    }
    if m.actions.len() != a.dim() {
        report.push("shape", format!("{} action matrices for an algebra of dimension {}", m.actions.len(), a.dim()));
        return report;
    }
    if m.act_by(a.unit()) != Matrix::identity(m.dim) {
        report.push("unit", "the unit does not act as the identity");
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = m.act_by(a.basis_product(i, j));
            let rhs = m.actions[j].mul(k, &m.actions[i]);
            if lhs != rhs {
                report.push(
                    "associativity",
                    format!("(v·{0})·{1} ≠ v·({0} {1})", a.basis_names()[i], a.basis_names()[j]),
                );
            }
        }
    }
    report
}

/// Basis of the null space of a linear map given by its values on unit
/// vectors.
pub(crate) fn solve_homogeneous(k: BaseRing, unknowns: usize, f: impl Fn(&[u32]) -> Vec<u32>) -> Vec<Vec<u32>> {
    if unknowns == 0 {
        return Vec::new();
    }
    let cols: Vec<Vec<u32>> = (0..unknowns).map(|u| f(&linalg::unit_vector(unknowns, u))).collect();
    let rows = cols[0].len();
    if rows == 0 {
        return (0..unknowns).map(|u| linalg::unit_vector(unknowns, u)).collect();
    }
    linalg::kernel(k, &Matrix::from_columns(rows, &cols))
}

/// Basis of `Hom_A(m, n)` as `n.dim() × m.dim()` matrices.
pub fn hom_space(m: &Module, n: &Module) -> Vec<Matrix> {
    let k = m.ring;
    let (p, q) = (n.dim, m.dim);
    solve_homogeneous(k, p * q, |x| {
        let phi = Matrix::from_flat(p, q, x.to_vec());
        let mut eqs = Vec::with_capacity(m.actions.len() * p * q);
        for (a, b) in m.actions.iter().zip(&n.actions) {
            eqs.extend_from_slice(b.mul(k, &phi).sub(k, &phi.mul(k, a)).as_flat());
        }
        eqs
    })
    .into_iter()
    .map(|v| Matrix::from_flat(p, q, v))
    .collect()
}

pub fn hom_dim(m: &Module, n: &Module) -> usize {
    hom_space(m, n).len()
}

pub fn is_homomorphism(m: &Module, n: &Module, phi: &Matrix) -> bool {
    let k = m.ring;
    phi.rows() == n.dim
        && phi.cols() == m.dim
        && m.actions.iter().zip(&n.actions).all(|(a, b)| b.mul(k, phi) == phi.mul(k, a))
}

fn flatten_combination(k: BaseRing, coeffs: &[u32], basis: &[Matrix], rows: usize, cols: usize) -> Matrix {
    let mut out = Matrix::zeros(rows, cols);
    for (&c, b) in coeffs.iter().zip(basis) {
        if c != 0 {
            out.add_scaled(k, c, b);
        }
    }
    out
}

/// An isomorphism `m → n`, if one exists, by exhaustive search over
/// `Hom(m, n)`.
pub fn find_isomorphism(m: &Module, n: &Module, budget: Budget) -> Result<Option<Matrix>> {
    if m.fingerprint() != n.fingerprint() {
        return Ok(None);
    }
    let k = m.ring;
    let basis = hom_space(m, n);
    let space = Subspace::full(basis.len());
    budget.check("searching for an isomorphism", space.element_count(k))?;
    for c in space.elements(k) {
        let phi = flatten_combination(k, &c, &basis, n.dim, m.dim);
        if phi.is_invertible(k) {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

pub fn is_isomorphic(m: &Module, n: &Module, budget: Budget) -> Result<bool> {
    Ok(find_isomorphism(m, n, budget)?.is_some())
}

/// A projective module mapping onto `m`: one copy of `eA` for each basis
/// vector of `m·e`, over a complete set of orthogonal idempotents.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub projective: Module,
    pub cover: Matrix,
    pub syzygy: Module,
    pub inclusion: Matrix,
}

/// `0 → Ω → P → m → 0`. The idempotents must be orthogonal and sum to 1;
/// `[unit]` always works.
pub fn presentation(a: &FiniteAlgebra, idempotents: &[Vec<u32>], m: &Module) -> Result<Presentation> {
    let k = a.ring();
    k.require_field()?;
    let regular = Module::regular(a);
    let mut projective: Option<Module> = None;
    let mut cover_cols: Vec<Vec<u32>> = Vec::new();
    for e in idempotents {
        let summand = Subspace::column_space(k, &a.left_mul_matrix(e));
        let (ea, _) = regular.submodule(&summand);
        let block = Subspace::column_space(k, &m.act_by(e));
        for v in block.basis() {
            projective = Some(match projective {
                None => ea.clone(),
                Some(p) => p.direct_sum(&ea),
            });
            cover_cols.extend(summand.basis().iter().map(|w| m.act(v, w)));
        }
    }
    let projective = projective.unwrap_or_else(|| Module::zero(a));
    let cover = Matrix::from_columns(m.dim, &cover_cols);
    if cover.rank(k) != m.dim {
        return Err(Error::Precondition("idempotents do not sum to the unit".into()));
    }
    let omega = Subspace::span(k, projective.dim, linalg::kernel(k, &cover));
    let (syzygy, inclusion) = projective.submodule(&omega);
    Ok(Presentation {
        projective,
        cover,
        syzygy,
        inclusion,
    })
}

/// `dim Ext¹(m, n) = dim Hom(Ω, n) − rank(Hom(P, n) → Hom(Ω, n))`.
pub fn ext1_dim(a: &FiniteAlgebra, idempotents: &[Vec<u32>], m: &Module, n: &Module) -> Result<usize> {
    let k = a.ring();
    let pres = presentation(a, idempotents, m)?;
    let on_omega = hom_dim(&pres.syzygy, n);
    let restricted: Vec<Vec<u32>> = hom_space(&pres.projective, n)
        .iter()
        .map(|phi| phi.mul(k, &pres.inclusion).as_flat().to_vec())
        .collect();
    let rank = Subspace::span(k, n.dim * pres.syzygy.dim, restricted).dim();
    Ok(on_omega - rank)
}

/// A splitting of the cover `P → m`, if `m` is projective.
pub fn projective_splitting(a: &FiniteAlgebra, idempotents: &[Vec<u32>], m: &Module) -> Result<Option<Matrix>> {
    let k = a.ring();
    let pres = presentation(a, idempotents, m)?;
    let basis = hom_space(m, &pres.projective);
    let composites: Vec<Vec<u32>> = basis.iter().map(|s| pres.cover.mul(k, s).as_flat().to_vec()).collect();
    let target = Matrix::identity(m.dim);
    let system = Matrix::from_columns(m.dim * m.dim, &composites);
    Ok(linalg::solve(k, &system, target.as_flat())
        .map(|c| flatten_combination(k, &c, &basis, pres.projective.dim, m.dim)))
}

pub fn is_projective(a: &FiniteAlgebra, idempotents: &[Vec<u32>], m: &Module) -> Result<bool> {
    Ok(projective_splitting(a, idempotents, m)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::grskew::SkewAlgebra;

    fn t2() -> SkewAlgebra {
        SkewAlgebra::build(&fixtures::a2_f2()).unwrap()
    }

    /// For T₂: the top of the two-dimensional projective `e_2 A` and its
    /// radical, which is the simple projective `e_1 A`.
    fn simples(s: &SkewAlgebra) -> (Module, Module) {
        let a = s.algebra();
        let reg = Module::regular(a);
        let k = a.ring();
        let p1 = Subspace::column_space(k, &a.left_mul_matrix(&s.block_idempotent(0)));
        let p2 = Subspace::column_space(k, &a.left_mul_matrix(&s.block_idempotent(1)));
        let (p1m, _) = reg.submodule(&p1);
        let (p2m, _) = reg.submodule(&p2);
        assert_eq!(p1m.dim(), 1);
        let rad = p2m.times_ideal(&s.hom_space(0, 1));
        assert_eq!(rad.dim(), 1);
        let (top, _) = p2m.quotient(&rad);
        (top, p1m)
    }

    #[test]
    fn regular_module_validates() {
        for p in fixtures::all_presheaves() {
            let s = SkewAlgebra::build(&p).unwrap();
            assert!(validate_module(s.algebra(), &Module::regular(s.algebra())).passes());
        }
    }

    #[test]
    fn hom_examples() {
        let s = t2();
        let a = s.algebra();
        let reg = Module::regular(a);
        assert_eq!(hom_dim(&reg, &reg), 3);
        let (s1, s2) = simples(&s);
        assert_eq!(hom_dim(&s1, &s2), 0);
        assert_eq!(hom_dim(&s2, &s1), 0);
        assert_eq!(hom_dim(&Module::zero(a), &s1), 0);
        assert_eq!(hom_dim(&s1, &s1), 1);
    }

    #[test]
    fn ext_examples() {
        let s = t2();
        let a = s.algebra();
        let ids = s.block_idempotents();
        let (s1, s2) = simples(&s);
        assert_eq!(ext1_dim(a, &ids, &s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(a, &ids, &s2, &s1).unwrap(), 0);
        assert_eq!(ext1_dim(a, &ids, &s1, &Module::zero(a)).unwrap(), 0);
        let reg = Module::regular(a);
        for n in [&s1, &s2, &reg] {
            assert_eq!(ext1_dim(a, &ids, &reg, n).unwrap(), 0);
        }
        // the trivial idempotent set gives the same answer
        assert_eq!(ext1_dim(a, &[a.unit().to_vec()], &s1, &s2).unwrap(), 1);
    }

    #[test]
    fn projectivity() {
        let s = t2();
        let a = s.algebra();
        let ids = s.block_idempotents();
        let (s1, s2) = simples(&s);
        assert!(!is_projective(a, &ids, &s1).unwrap());
        assert!(is_projective(a, &ids, &s2).unwrap());
        assert!(is_projective(a, &ids, &Module::regular(a)).unwrap());
    }

    #[test]
    fn submodules_and_quotients() {
        let s = t2();
        let a = s.algebra();
        let reg = Module::regular(a);
        let subs = reg.submodules(Budget::default()).unwrap();
        // right ideals of T₂(F₂)
        assert!(subs.len() >= 5);
        for sub in &subs {
            let (m, inc) = reg.submodule(sub);
            assert!(validate_module(a, &m).passes());
            assert!(is_homomorphism(&m, &reg, &inc));
            let (q, proj) = reg.quotient(sub);
            assert!(validate_module(a, &q).passes());
            assert!(is_homomorphism(&reg, &q, &proj));
            assert_eq!(m.dim() + q.dim(), 3);
        }
    }

    #[test]
    fn isomorphism_search() {
        let s = t2();
        let (s1, s2) = simples(&s);
        let b = Budget::default();
        assert!(is_isomorphic(&s1, &s1, b).unwrap());
        assert!(!is_isomorphic(&s1, &s2, b).unwrap());
        let sum = s1.direct_sum(&s2);
        let flipped = s2.direct_sum(&s1);
        assert!(is_isomorphic(&sum, &flipped, b).unwrap());
        let p = Matrix::from_rows(&[vec![1, 1], vec![0, 1]], 2).unwrap();
        assert!(is_isomorphic(&sum, &sum.change_basis(&p).unwrap(), b).unwrap());
    }
}
