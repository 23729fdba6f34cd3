//! Every module of dimension at most `d` over a finite algebra, up to
//! isomorphism.
//!
//! A nonzero module E has a simple submodule S, so it is an extension of
//! a smaller module Q by S: on `S ⊕ Q` the action of `b` is
//! `[[S_b, c_b], [0, Q_b]]`. The admissible `c` form a linear space Z and
//! those that only change the splitting form a subspace B, so running over
//! a complement of B in Z and all smaller Q reaches every E.

use std::collections::BTreeMap;

use crate::algebra::FiniteAlgebra;
use crate::linalg::{Matrix, Subspace};
use crate::module::{find_isomorphism, hom_dim, solve_homogeneous, Module};
use crate::ring::BaseRing;
use crate::{Budget, Result};

/// Cocycles and coboundaries for extensions of `q` by `s`, as flat vectors
/// holding `c_0, …, c_{n−1}` (each `s.dim() × q.dim()`, row-major).
pub struct ExtensionSpace {
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
}

pub fn extension_space(a: &FiniteAlgebra, s: &Module, q: &Module) -> ExtensionSpace {
    let k = a.ring();
    let (ds, dq, n) = (s.dim(), q.dim(), a.dim());
    let block = ds * dq;
    let total = n * block;
    let split = |x: &[u32]| -> Vec<Matrix> { (0..n).map(|b| Matrix::from_flat(ds, dq, x[b * block..(b + 1) * block].to_vec())).collect() };
    let z = solve_homogeneous(k, total, |x| {
        let c = split(x);
        let mut eqs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                // c_{ij} = S_j c_i + c_j Q_i
                let mut lhs = Matrix::zeros(ds, dq);
                for (t, &coef) in a.basis_product(i, j).iter().enumerate() {
                    if coef != 0 {
                        lhs.add_scaled(k, coef, &c[t]);
                    }
                }
                let rhs = s.action(j).mul(k, &c[i]).add(k, &c[j].mul(k, q.action(i)));
                eqs.extend_from_slice(lhs.sub(k, &rhs).as_flat());
            }
        }
        let mut unit = Matrix::zeros(ds, dq);
        for (t, &coef) in a.unit().iter().enumerate() {
            if coef != 0 {
                unit.add_scaled(k, coef, &c[t]);
            }
        }
        eqs.extend_from_slice(unit.as_flat());
        eqs
    });
    let cocycles = Subspace::span(k, total, z);
    let coboundaries = Subspace::span(
        k,
        total,
        (0..block).map(|u| {
            let h = Matrix::from_flat(ds, dq, crate::linalg::unit_vector(block, u));
            (0..n)
                .flat_map(|b| s.action(b).mul(k, &h).sub(k, &h.mul(k, q.action(b))).as_flat().to_vec())
                .collect::<Vec<u32>>()
        }),
    );
    ExtensionSpace { cocycles, coboundaries }
}

/// The module on `s ⊕ q` given by the cocycle `c`.
pub fn extension_module(k: BaseRing, s: &Module, q: &Module, c: &[u32]) -> Module {
    let (ds, dq) = (s.dim(), q.dim());
    let block = ds * dq;
    let actions = (0..s.actions().len())
        .map(|b| {
            let mut m = Matrix::zeros(ds + dq, ds + dq);
            m.set_block(0, 0, s.action(b));
            m.set_block(0, ds, &Matrix::from_flat(ds, dq, c[b * block..(b + 1) * block].to_vec()));
            m.set_block(ds, ds, q.action(b));
            m
        })
        .collect();
    Module::new(k, ds + dq, actions).expect("shapes agree")
}

/// Pairwise non-isomorphic simple modules: the composition factors of A.
pub fn simple_modules(a: &FiniteAlgebra, budget: Budget) -> Result<Vec<Module>> {
    a.ring().require_field()?;
    let mut found: Vec<Module> = Vec::new();
    let mut pending = vec![Module::regular(a)];
    while let Some(m) = pending.pop() {
        if m.is_zero() {
            continue;
        }
        let sub = minimal_submodule(&m, budget)?;
        let (s, _) = m.submodule(&sub);
        let (q, _) = m.quotient(&sub);
        let mut new = true;
        for t in &found {
            if find_isomorphism(&s, t, budget)?.is_some() {
                new = false;
                break;
            }
        }
        if new {
            found.push(s);
        }
        pending.push(q);
    }
    found.sort_by_key(|m| m.dim());
    Ok(found)
}

/// A nonzero submodule of least dimension.
pub fn minimal_submodule(m: &Module, budget: Budget) -> Result<Subspace> {
    let k = m.ring();
    let full = Subspace::full(m.dim());
    budget.check("searching for a simple submodule", full.element_count(k))?;
    let mut best = full.clone();
    for v in full.elements(k) {
        if crate::linalg::is_zero(&v) || v.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let c = m.closure(&Subspace::span(k, m.dim(), [v]));
        if c.dim() < best.dim() {
            best = c;
            if best.dim() == 1 {
                break;
            }
        }
    }
    Ok(best)
}

/// All modules of dimension ≤ `bound`, one per isomorphism class, sorted by
/// dimension (the zero module first).
#[derive(Clone, Debug)]
pub struct Universe {
    pub algebra: FiniteAlgebra,
    pub bound: usize,
    pub members: Vec<Module>,
    budget: Budget,
}

impl Universe {
    pub fn build(a: &FiniteAlgebra, bound: usize, budget: Budget) -> Result<Self> {
        let k = a.ring();
        k.require_field()?;
        let simples = simple_modules(a, budget)?;
        let mut by_dim: Vec<Vec<Module>> = vec![Vec::new(); bound + 1];
        by_dim[0].push(Module::zero(a));
        for n in 1..=bound {
            let mut here: Vec<Module> = Vec::new();
            for s in simples.iter().filter(|s| s.dim() <= n) {
                for q in by_dim[n - s.dim()].clone() {
                    let ext = extension_space(a, s, &q);
                    let reps = ext.cocycles.complement_of(k, &ext.coboundaries);
                    let classes = Subspace::span(k, ext.cocycles.ambient(), reps);
                    budget.check("enumerating extension classes", classes.element_count(k))?;
                    for c in classes.elements(k) {
                        let e = extension_module(k, s, &q, &c);
                        let mut new = true;
                        for t in &here {
                            if find_isomorphism(&e, t, budget)?.is_some() {
                                new = false;
                                break;
                            }
                        }
                        if new {
                            budget.check("collecting modules", here.len() as u128 + 1)?;
                            here.push(e);
                        }
                    }
                }
            }
            by_dim[n] = here;
        }
        Ok(Universe {
            algebra: a.clone(),
            bound,
            members: by_dim.into_iter().flatten().collect(),
            budget,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    /// Index of the member isomorphic to `m`; `None` when `m` is too big.
    pub fn identify(&self, m: &Module) -> Result<Option<usize>> {
        if m.dim() > self.bound {
            return Ok(None);
        }
        for (i, t) in self.members.iter().enumerate() {
            if find_isomorphism(m, t, self.budget)?.is_some() {
                return Ok(Some(i));
            }
        }
        panic!("universe is missing a module of dimension {}", m.dim());
    }

    /// `hom[i][j] = dim Hom(members[i], members[j])`.
    pub fn hom_table(&self) -> Vec<Vec<usize>> {
        self.members
            .iter()
            .map(|m| self.members.iter().map(|n| hom_dim(m, n)).collect())
            .collect()
    }

    /// For each member, every submodule as `(sub index, quotient index,
    /// splits)`, where `splits` says the member is the direct sum of the two.
    pub fn submodule_table(&self) -> Result<Vec<Vec<SubEntry>>> {
        let sums = self.sum_table()?;
        self.members
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let mut seen = BTreeMap::new();
                for sub in m.submodules(self.budget)? {
                    let (s, _) = m.submodule(&sub);
                    let (q, _) = m.quotient(&sub);
                    let si = self.identify(&s)?.expect("submodule is small");
                    let qi = self.identify(&q)?.expect("quotient is small");
                    seen.entry((si, qi)).or_insert(SubEntry {
                        sub: si,
                        quotient: qi,
                        splits: sums[si][qi] == Some(i),
                    });
                }
                Ok(seen.into_values().collect())
            })
            .collect()
    }

    /// `sum[i][j]`: index of `members[i] ⊕ members[j]`, when small enough.
    pub fn sum_table(&self) -> Result<Vec<Vec<Option<usize>>>> {
        self.members
            .iter()
            .map(|m| self.members.iter().map(|n| self.identify(&m.direct_sum(n))).collect())
            .collect()
    }
}

/// Hom dimensions, submodule data and direct sums over a universe.
#[derive(Clone, Debug)]
pub struct Tables {
    pub hom: Vec<Vec<usize>>,
    pub subs: Vec<Vec<SubEntry>>,
    pub sums: Vec<Vec<Option<usize>>>,
}

impl Tables {
    pub fn build(u: &Universe) -> Result<Self> {
        Ok(Tables {
            hom: u.hom_table(),
            subs: u.submodule_table()?,
            sums: u.sum_table()?,
        })
    }

    /// `⊥Y`: members with no nonzero map into `Y`.
    pub fn left_perp(&self, y: &[bool]) -> Vec<bool> {
        (0..y.len()).map(|a| (0..y.len()).all(|b| !y[b] || self.hom[a][b] == 0)).collect()
    }

    /// `X⊥`: members with no nonzero map from `X`.
    pub fn right_perp(&self, x: &[bool]) -> Vec<bool> {
        (0..x.len()).map(|b| (0..x.len()).all(|a| !x[a] || self.hom[a][b] == 0)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubEntry {
    pub sub: usize,
    pub quotient: usize,
    pub splits: bool,
}
