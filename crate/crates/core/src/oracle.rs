//! Brute-force searches kept independent of the main algorithms: torsion
//! theories by exhaustive search over classes of a universe, and Ext¹ by
//! counting extensions.

use std::collections::BTreeSet;

use crate::algebra::FiniteAlgebra;
use crate::error::saturating_pow;
use crate::grskew::{LinearTopology, SkewAlgebra};
use crate::linalg::{Matrix, Subspace};
use crate::modcat::is_torsion;
use crate::module::{ext1_dim, hom_dim, validate_module, Module};
use crate::universe::{Tables, Universe};
use crate::{Budget, Result};

/// Number of classes searched: every subset of the nonzero members.
pub fn search_size(u: &Universe) -> u128 {
    saturating_pow(2, u.len().saturating_sub(1))
}

fn classes(u: &Universe, budget: Budget) -> Result<impl Iterator<Item = Vec<bool>>> {
    budget.check("searching classes of modules", search_size(u))?;
    let n = u.len();
    Ok((0..search_size(u) as u64).map(move |mask| (0..n).map(|i| i == 0 || mask >> (i - 1) & 1 == 1).collect()))
}

/// Some submodule of each member lies in `x` with quotient in `y`.
fn has_sequences(t: &Tables, x: &[bool], y: &[bool]) -> bool {
    t.subs.iter().all(|entries| entries.iter().any(|e| x[e.sub] && y[e.quotient]))
}

/// The unique such submodule also splits off.
fn sequences_split(t: &Tables, x: &[bool], y: &[bool]) -> bool {
    t.subs
        .iter()
        .all(|entries| entries.iter().filter(|e| x[e.sub] && y[e.quotient]).all(|e| e.splits))
}

fn is_torsion_pair(t: &Tables, x: &[bool], y: &[bool]) -> bool {
    t.left_perp(y) == x && t.right_perp(x) == y && has_sequences(t, x, y)
}

/// Torsion classes `X` of torsion pairs `(X, X⊥)` closed under submodules.
pub fn hereditary_torsion_classes(u: &Universe, t: &Tables, budget: Budget) -> Result<Vec<Vec<bool>>> {
    Ok(classes(u, budget)?
        .filter(|x| {
            let closed = (0..x.len()).all(|i| !x[i] || t.subs[i].iter().all(|e| x[e.sub]));
            closed && is_torsion_pair(t, x, &t.right_perp(x))
        })
        .collect())
}

/// Middle classes `Y` with both `(⊥Y, Y)` and `(Y, Y⊥)` torsion pairs.
pub fn ttf_classes(u: &Universe, t: &Tables, budget: Budget) -> Result<Vec<Vec<bool>>> {
    Ok(classes(u, budget)?
        .filter(|y| is_torsion_pair(t, &t.left_perp(y), y) && is_torsion_pair(t, y, &t.right_perp(y)))
        .collect())
}

/// TTF middle classes whose two canonical sequences always split.
pub fn split_ttf_classes(u: &Universe, t: &Tables, budget: Budget) -> Result<Vec<Vec<bool>>> {
    Ok(ttf_classes(u, t, budget)?
        .into_iter()
        .filter(|y| {
            let (x, z) = (t.left_perp(y), t.right_perp(y));
            sequences_split(t, &x, y) && sequences_split(t, y, &z)
        })
        .collect())
}

/// `dim Ext¹(m, n)` by listing every block upper-triangular action on
/// `n ⊕ m` that is a module and every change of splitting.
pub fn ext1_by_extensions(a: &FiniteAlgebra, m: &Module, n: &Module, budget: Budget) -> Result<usize> {
    let k = a.ring();
    let (dn, dm) = (n.dim(), m.dim());
    let block = dn * dm;
    let unknowns = a.dim() * block;
    let all = Subspace::full(unknowns);
    budget.check("listing candidate extensions", all.element_count(k))?;
    let mut cocycles = 0u128;
    for c in all.elements(k) {
        let actions = (0..a.dim())
            .map(|b| {
                let mut e = Matrix::zeros(dn + dm, dn + dm);
                e.set_block(0, 0, n.action(b));
                e.set_block(0, dn, &Matrix::from_flat(dn, dm, c[b * block..(b + 1) * block].to_vec()));
                e.set_block(dn, dn, m.action(b));
                e
            })
            .collect();
        let e = Module::new(k, dn + dm, actions)?;
        if validate_module(a, &e).passes() {
            cocycles += 1;
        }
    }
    let hs = Subspace::full(block);
    budget.check("listing changes of splitting", hs.element_count(k))?;
    let coboundaries: BTreeSet<Vec<u32>> = hs
        .elements(k)
        .map(|h| {
            let h = Matrix::from_flat(dn, dm, h);
            (0..a.dim())
                .flat_map(|b| n.action(b).mul(k, &h).sub(k, &h.mul(k, m.action(b))).as_flat().to_vec())
                .collect()
        })
        .collect();
    let mut ratio = cocycles / coboundaries.len() as u128;
    let p = k.modulus() as u128;
    let mut dim = 0;
    while ratio > 1 {
        ratio /= p;
        dim += 1;
    }
    Ok(dim)
}

/// `Hom(T, v) = 0 = Ext¹(T, v)` for every torsion member `T` of the universe.
pub fn perpendicular_to_all_torsion(skew: &SkewAlgebra, u: &Universe, lt: &LinearTopology, v: &Module, budget: Budget) -> Result<bool> {
    let ids = skew.block_idempotents();
    for t in &u.members {
        if is_torsion(skew, t, lt, budget)?.is_torsion && (hom_dim(t, v) != 0 || ext1_dim(skew.algebra(), &ids, t, v)? != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn oracle_counts_on_small_algebras() {
        let b = Budget::default();
        for (p, htp, ttf, sttf) in [
            (fixtures::terminal_f2(), 2, 2, 2),
            (fixtures::terminal_f2xf2(), 4, 4, 4),
            (fixtures::a2_f2(), 4, 4, 2),
        ] {
            let s = SkewAlgebra::build(&p).unwrap();
            let u = Universe::build(s.algebra(), 3, b).unwrap();
            let t = Tables::build(&u).unwrap();
            assert_eq!(hereditary_torsion_classes(&u, &t, b).unwrap().len(), htp);
            assert_eq!(ttf_classes(&u, &t, b).unwrap().len(), ttf);
            assert_eq!(split_ttf_classes(&u, &t, b).unwrap().len(), sttf);
        }
    }

    #[test]
    fn ext_by_extensions_on_t2_simples() {
        let s = SkewAlgebra::build(&fixtures::a2_f2()).unwrap();
        let a = s.algebra();
        let u = Universe::build(a, 1, Budget::default()).unwrap();
        // the simple at vertex 2 is the top of hom(−, 2), whose radical is
        // the simple at vertex 1
        let at1 = u.members.iter().find(|m| m.dim() == 1 && m.act_by(&[0, 1, 0]).is_zero()).unwrap();
        let at2 = u.members.iter().find(|m| m.dim() == 1 && m.act_by(&[1, 0, 0]).is_zero()).unwrap();
        assert_eq!(ext1_by_extensions(a, at2, at1, Budget::default()).unwrap(), 1);
        assert_eq!(ext1_by_extensions(a, at1, at2, Budget::default()).unwrap(), 0);
    }
}
