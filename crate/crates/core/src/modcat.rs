//! Presheaves of R-modules, the equivalence with right R[C]-modules, and
//! the sheaf, torsion and perpendicularity predicates for a linear
//! topology.

use serde::Serialize;

use crate::algebra::AlgebraPresheaf;
use crate::grskew::{LinearSieve, LinearTopology, SkewAlgebra};
use crate::linalg::{Matrix, Subspace};
use crate::module::{ext1_dim, hom_dim, hom_space, validate_module, Module};
use crate::report::ValidationReport;
use crate::ring::BaseRing;
use crate::{Budget, Error, Result};

/// `M(x)` of rank `ranks[x]` with one action matrix per basis element of
/// `R(x)`, and `M(f): M(cod f) → M(dom f)` of shape `rank dom × rank cod`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresheaf {
    pub ring: BaseRing,
    pub ranks: Vec<usize>,
    pub actions: Vec<Vec<Matrix>>,
    pub maps: Vec<Matrix>,
}

impl ModulePresheaf {
    pub fn zero(r: &AlgebraPresheaf) -> Self {
        let cat = r.category();
        ModulePresheaf {
            ring: r.ring(),
            ranks: vec![0; cat.num_objects()],
            actions: (0..cat.num_objects()).map(|x| vec![Matrix::zeros(0, 0); r.algebra(x).dim()]).collect(),
            maps: vec![Matrix::zeros(0, 0); cat.num_morphisms()],
        }
    }

    pub fn total_dim(&self) -> usize {
        self.ranks.iter().sum()
    }

    fn offsets(&self) -> Vec<usize> {
        self.ranks
            .iter()
            .scan(0, |acc, &r| {
                let o = *acc;
                *acc += r;
                Some(o)
            })
            .collect()
    }

    /// Action of an element of `R(x)` on `M(x)`.
    pub fn act_by(&self, x: usize, s: &[u32]) -> Matrix {
        let mut m = Matrix::zeros(self.ranks[x], self.ranks[x]);
        for (b, &c) in s.iter().enumerate() {
            if c != 0 {
                m.add_scaled(self.ring, c, &self.actions[x][b]);
            }
        }
        m
    }
}

/// Shapes, functoriality, each `M(x)` a unital right `R(x)`-module, and
/// `M(f)(m·s) = M(f)(m)·R(f)(s)`.
pub fn validate_module_presheaf(r: &AlgebraPresheaf, m: &ModulePresheaf) -> ValidationReport {
    let mut report = ValidationReport::new();
    let cat = r.category();
    let k = r.ring();
    if m.ring != k {
        report.push("base ring", "module and algebras have different base rings");
        return report;
    }
    if m.ranks.len() != cat.num_objects() || m.actions.len() != cat.num_objects() || m.maps.len() != cat.num_morphisms() {
        report.push("shape", "module data does not match the category");
        return report;
    }
    for x in 0..cat.num_objects() {
        let n = m.ranks[x];
        if m.actions[x].len() != r.algebra(x).dim() || m.actions[x].iter().any(|a| a.rows() != n || a.cols() != n) {
            report.push("shape", format!("action at `{}` has the wrong shape", cat.object_name(x)));
        }
    }
    for f in 0..cat.num_morphisms() {
        let (d, c) = (m.ranks[cat.dom(f)], m.ranks[cat.cod(f)]);
        if m.maps[f].rows() != d || m.maps[f].cols() != c {
            report.push("shape", format!("M({}) must be {d}x{c}", cat.morphism_name(f)));
        }
    }
    if !report.passes() {
        return report;
    }
    for x in 0..cat.num_objects() {
        let module = Module::new(k, m.ranks[x], m.actions[x].clone()).expect("shapes checked");
        for v in validate_module(r.algebra(x), &module).violations {
            report.push(v.rule, format!("at `{}`: {}", cat.object_name(x), v.detail));
        }
        if m.maps[cat.identity(x)] != Matrix::identity(m.ranks[x]) {
            report.push("identity", format!("M({}) is not the identity", cat.morphism_name(cat.identity(x))));
        }
    }
    for g in 0..cat.num_morphisms() {
        for f in 0..cat.num_morphisms() {
            if let Some(h) = cat.compose(g, f) {
                if m.maps[h] != m.maps[f].mul(k, &m.maps[g]) {
                    report.push(
                        "functoriality",
                        format!("M({}) ≠ M({}) M({})", cat.morphism_name(h), cat.morphism_name(f), cat.morphism_name(g)),
                    );
                }
            }
        }
    }
    for f in 0..cat.num_morphisms() {
        let (x, y) = (cat.dom(f), cat.cod(f));
        for s in 0..r.algebra(y).dim() {
            let lhs = m.maps[f].mul(k, &m.actions[y][s]);
            let rhs = m.act_by(x, &r.map(f).column(s)).mul(k, &m.maps[f]);
            if lhs != rhs {
                report.push(
                    "compatibility",
                    format!("M({})(m·{}) ≠ M({0})(m)·R({0})({1})", cat.morphism_name(f), r.algebra(y).basis_names()[s]),
                );
            }
        }
    }
    report
}

/// Ψ: the R[C]-module `⊕ₓ M(x)`, where `r f` (f: x → y) sends the `M(y)`
/// block to the `M(x)` block by `m ↦ M(f)(m)·r`.
pub fn psi_to_gr(skew: &SkewAlgebra, m: &ModulePresheaf) -> Result<Module> {
    validate_module_presheaf(skew.presheaf(), m).into_result("presheaf of modules")?;
    let k = skew.ring();
    let cat = skew.category();
    let n = m.total_dim();
    let off = m.offsets();
    let actions = (0..skew.dim())
        .map(|b| {
            let (f, i) = skew.entry(b);
            let (x, y) = (cat.dom(f), cat.cod(f));
            let block = m.actions[x][i].mul(k, &m.maps[f]);
            let mut a = Matrix::zeros(n, n);
            a.set_block(off[x], off[y], &block);
            a
        })
        .collect();
    Module::new(k, n, actions)
}

/// Φ: `M(x) = V·e_x` in its echelon basis, `M(f)` the action of `1 f`,
/// and `r ∈ R(x)` acting as `r id_x`. Also returns the basis change
/// (columns: the block bases, in object order) with
/// `Ψ(Φ(V)) = V.change_basis(P)`.
pub fn phi_from_gr(skew: &SkewAlgebra, v: &Module) -> Result<(ModulePresheaf, Matrix)> {
    let report = validate_module(skew.algebra(), v);
    report.into_result("R[C]-module")?;
    let k = skew.ring();
    let cat = skew.category();
    let r = skew.presheaf();
    let blocks: Vec<Subspace> = (0..cat.num_objects())
        .map(|x| Subspace::column_space(k, &v.act_by(&skew.block_idempotent(x))))
        .collect();
    let total: usize = blocks.iter().map(|b| b.dim()).sum();
    if total != v.dim() {
        return Err(Error::Precondition("block idempotents do not decompose the module".into()));
    }
    let restrict = |op: &Matrix, from: &Subspace, to: &Subspace| -> Matrix {
        let cols: Vec<Vec<u32>> = from
            .basis()
            .iter()
            .map(|w| to.coordinates(k, &op.apply(k, w)).expect("action respects blocks"))
            .collect();
        Matrix::from_columns(to.dim(), &cols)
    };
    let actions = (0..cat.num_objects())
        .map(|x| {
            let id = cat.identity(x);
            (0..r.algebra(x).dim())
                .map(|i| restrict(v.action(skew.basis_index(id, i)), &blocks[x], &blocks[x]))
                .collect()
        })
        .collect();
    let maps = (0..cat.num_morphisms())
        .map(|f| {
            let (x, y) = (cat.dom(f), cat.cod(f));
            let one_f = one_at(skew, f);
            restrict(&v.act_by(&one_f), &blocks[y], &blocks[x])
        })
        .collect();
    let presheaf = ModulePresheaf {
        ring: k,
        ranks: blocks.iter().map(|b| b.dim()).collect(),
        actions,
        maps,
    };
    let cols: Vec<Vec<u32>> = blocks.iter().flat_map(|b| b.basis().to_vec()).collect();
    Ok((presheaf, Matrix::from_columns(v.dim(), &cols)))
}

/// `1_{R(dom f)} f` as an element of R[C].
pub fn one_at(skew: &SkewAlgebra, f: usize) -> Vec<u32> {
    let x = skew.category().dom(f);
    let mut v = vec![0; skew.dim()];
    for (i, &c) in skew.presheaf().algebra(x).unit().iter().enumerate() {
        v[skew.basis_index(f, i)] = c;
    }
    v
}

/// Per-object components `M(x) → N(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransformation {
    pub components: Vec<Matrix>,
}

pub fn is_natural(r: &AlgebraPresheaf, m: &ModulePresheaf, n: &ModulePresheaf, t: &NatTransformation) -> bool {
    let cat = r.category();
    let k = r.ring();
    (0..cat.num_objects()).all(|x| {
        let c = &t.components[x];
        c.rows() == n.ranks[x]
            && c.cols() == m.ranks[x]
            && m.actions[x].iter().zip(&n.actions[x]).all(|(a, b)| b.mul(k, c) == c.mul(k, a))
    }) && (0..cat.num_morphisms()).all(|f| {
        let (x, y) = (cat.dom(f), cat.cod(f));
        n.maps[f].mul(k, &t.components[y]) == t.components[x].mul(k, &m.maps[f])
    })
}

/// Ψ on maps: the block diagonal matrix.
pub fn psi_map(m: &ModulePresheaf, n: &ModulePresheaf, t: &NatTransformation) -> Matrix {
    let (om, on) = (m.offsets(), n.offsets());
    let mut out = Matrix::zeros(n.total_dim(), m.total_dim());
    for (x, c) in t.components.iter().enumerate() {
        out.set_block(on[x], om[x], c);
    }
    out
}

/// Φ on maps between modules of the form Ψ(M), Ψ(N): the diagonal blocks.
pub fn phi_map(m: &ModulePresheaf, n: &ModulePresheaf, phi: &Matrix) -> NatTransformation {
    let (om, on) = (m.offsets(), n.offsets());
    NatTransformation {
        components: (0..m.ranks.len()).map(|x| phi.block(on[x], om[x], n.ranks[x], m.ranks[x])).collect(),
    }
}

/// Basis of the natural transformations `M → N`.
pub fn hom_modules(skew: &SkewAlgebra, m: &ModulePresheaf, n: &ModulePresheaf) -> Result<Vec<NatTransformation>> {
    let (pm, pn) = (psi_to_gr(skew, m)?, psi_to_gr(skew, n)?);
    Ok(hom_space(&pm, &pn).iter().map(|phi| phi_map(m, n, phi)).collect())
}

pub fn describe(skew: &SkewAlgebra, v: &[u32]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(b, &c)| {
            let name = &skew.basis_names()[b];
            if c == 1 {
                name.clone()
            } else {
                format!("{c}·{name}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Spanning elements of a linear sieve, as readable sums of basis names.
pub fn describe_sieve(skew: &SkewAlgebra, t: &LinearSieve) -> Vec<String> {
    t.space.basis().iter().map(|v| describe(skew, v)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SheafFailure {
    pub object: String,
    pub cover: Vec<String>,
    pub kernel_dim: usize,
    pub cokernel_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SheafWitness {
    pub is_sheaf: bool,
    pub failures: Vec<SheafFailure>,
}

fn regular_piece(skew: &SkewAlgebra, space: &Subspace) -> Module {
    Module::regular(skew.algebra()).submodule(space).0
}

/// Restriction `Hom(hom(−, x), V) → Hom(T, V)` must be bijective for every
/// cover `T`.
pub fn is_sheaf(skew: &SkewAlgebra, v: &Module, j: &LinearTopology) -> SheafWitness {
    let k = skew.ring();
    let cat = skew.category();
    let mut failures = Vec::new();
    for x in 0..skew.num_objects() {
        let rep_space = skew.representable(x);
        let rep = regular_piece(skew, &rep_space);
        let on_rep = hom_space(&rep, v);
        for t in j.covers(x) {
            let cover = regular_piece(skew, &t.space);
            let inclusion_cols: Vec<Vec<u32>> = t
                .space
                .basis()
                .iter()
                .map(|w| rep_space.coordinates(k, w).expect("cover lies in the representable"))
                .collect();
            let inclusion = Matrix::from_columns(rep_space.dim(), &inclusion_cols);
            let restricted = Subspace::span(
                k,
                v.dim() * t.space.dim(),
                on_rep.iter().map(|phi| phi.mul(k, &inclusion).as_flat().to_vec()),
            );
            let rank = restricted.dim();
            let (kernel_dim, cokernel_dim) = (on_rep.len() - rank, hom_dim(&cover, v) - rank);
            if kernel_dim != 0 || cokernel_dim != 0 {
                failures.push(SheafFailure {
                    object: cat.object_name(x).to_string(),
                    cover: describe_sieve(skew, t),
                    kernel_dim,
                    cokernel_dim,
                });
            }
        }
    }
    SheafWitness {
        is_sheaf: failures.is_empty(),
        failures,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsionWitness {
    pub is_torsion: bool,
    /// An element of the `object` block with no annihilating cover.
    pub object: Option<String>,
    pub element: Option<Vec<u32>>,
}

/// Every element of every block `V·e_x` is killed by some cover of `x`.
pub fn is_torsion(skew: &SkewAlgebra, v: &Module, j: &LinearTopology, budget: Budget) -> Result<TorsionWitness> {
    let k = skew.ring();
    for x in 0..skew.num_objects() {
        let block = Subspace::column_space(k, &v.act_by(&skew.block_idempotent(x)));
        let killed: Vec<Subspace> = j
            .covers(x)
            .iter()
            .map(|t| v.annihilated_by(&t.space).intersect(k, &block))
            .collect();
        if killed.iter().any(|s| block.is_subspace_of(k, s)) {
            continue;
        }
        budget.check("enumerating a module block", block.element_count(k))?;
        if let Some(m) = block.elements(k).find(|m| !killed.iter().any(|s| s.contains(k, m))) {
            return Ok(TorsionWitness {
                is_torsion: false,
                object: Some(skew.category().object_name(x).to_string()),
                element: Some(m),
            });
        }
    }
    Ok(TorsionWitness {
        is_torsion: true,
        object: None,
        element: None,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PerpendicularFailure {
    pub object: String,
    pub cover: Vec<String>,
    pub hom_dim: usize,
    pub ext1_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerpendicularWitness {
    pub perpendicular: bool,
    pub failures: Vec<PerpendicularFailure>,
}

/// The quotient `hom(−, x)/T` as an R[C]-module.
pub fn representable_quotient(skew: &SkewAlgebra, t: &LinearSieve) -> Module {
    let k = skew.ring();
    let rep_space = skew.representable(t.target);
    let rep = regular_piece(skew, &rep_space);
    let coords = Subspace::span(
        k,
        rep_space.dim(),
        t.space.basis().iter().map(|w| rep_space.coordinates(k, w).expect("cover lies in the representable")),
    );
    rep.quotient(&coords).0
}

/// `Hom(Q, V) = 0` and `Ext¹(Q, V) = 0` for every `Q = hom(−, x)/T`, T a cover.
pub fn perpendicular_check(skew: &SkewAlgebra, v: &Module, j: &LinearTopology) -> Result<PerpendicularWitness> {
    let ids = skew.block_idempotents();
    let mut failures = Vec::new();
    for x in 0..skew.num_objects() {
        for t in j.covers(x) {
            let q = representable_quotient(skew, t);
            let (h, e) = (hom_dim(&q, v), ext1_dim(skew.algebra(), &ids, &q, v)?);
            if h != 0 || e != 0 {
                failures.push(PerpendicularFailure {
                    object: skew.category().object_name(x).to_string(),
                    cover: describe_sieve(skew, t),
                    hom_dim: h,
                    ext1_dim: e,
                });
            }
        }
    }
    Ok(PerpendicularWitness {
        perpendicular: failures.is_empty(),
        failures,
    })
}
