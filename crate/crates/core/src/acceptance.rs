//! The end-to-end acceptance suite, shared by `torsite selftest` and the
//! `acceptance` integration test. Each criterion runs against the built-in
//! fixtures and must finish inside its time limit.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::{validate_algebra, AlgebraPresheaf};
use crate::fixtures;
use crate::grskew::{end_generator_iso, enumerate_linear_topologies, linearize_topology, GrCategory, SkewAlgebra};
use crate::modcat::{is_sheaf, perpendicular_check, phi_from_gr, psi_to_gr};
use crate::module::ext1_dim;
use crate::oracle;
use crate::recollement::verify_recollement;
use crate::topology::{enumerate_topologies, subcategory_topology};
use crate::torsion::{center, enumerate_idempotent_ideals};
use crate::universe::{Tables, Universe};
use crate::{Budget, Result};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub number: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {}: {} ({} ms, limit {} ms) {}",
            self.number,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )
    }
}

type Check = fn(Budget) -> Result<(bool, String)>;

/// `(number, title, time limit, check)` for every criterion.
pub fn criteria() -> Vec<(usize, &'static str, Duration, Check)> {
    let s = Duration::from_secs;
    vec![
        (1, "skew algebras are associative with the expected dimensions", s(1), skew_algebras as Check),
        (2, "End of the generator is the skew algebra", s(1), end_generator),
        (3, "topologies are exactly the subcategory topologies", s(5), subcategory_topologies),
        (4, "module presheaves and skew-algebra modules round trip", s(30), round_trips),
        (5, "sheaves are the perpendicular modules", s(300), sheaves_are_perpendicular),
        (6, "linear topologies match hereditary torsion pairs", s(300), hereditary_counts),
        (7, "idempotent ideals match TTF triples", s(300), ttf_counts),
        (8, "central idempotents match split TTF triples", s(60), split_ttf_counts),
        (9, "recollements along 0, 1 and a vertex idempotent", s(60), recollements),
        (10, "Ext¹ agrees with counting extensions", s(60), ext_agrees),
    ]
}

pub fn run_criterion(number: usize, budget: Budget) -> Option<CriterionResult> {
    let (number, title, limit, check) = criteria().into_iter().find(|c| c.0 == number)?;
    let start = Instant::now();
    let outcome = check(budget);
    let elapsed = start.elapsed();
    let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Some(CriterionResult {
        number,
        title,
        passed: ok && elapsed <= limit,
        detail: if elapsed > limit { format!("{detail}; over the time limit") } else { detail },
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.as_millis(),
    })
}

pub fn run_all(budget: Budget) -> Vec<CriterionResult> {
    criteria().iter().filter_map(|c| run_criterion(c.0, budget)).collect()
}

/// The four small fixtures the criteria are stated over.
fn core_fixtures() -> Vec<(&'static str, AlgebraPresheaf)> {
    vec![
        ("terminal_f2", fixtures::terminal_f2()),
        ("a2_f2", fixtures::a2_f2()),
        ("c2_f2", fixtures::c2_f2()),
        ("terminal_f2xf2", fixtures::terminal_f2xf2()),
    ]
}

fn skew_algebras(_: Budget) -> Result<(bool, String)> {
    let mut dims = Vec::new();
    let mut ok = true;
    for (_, r) in core_fixtures() {
        let s = SkewAlgebra::build(&r)?;
        ok &= validate_algebra(s.algebra()).passes();
        dims.push(s.dim());
    }
    ok &= dims == [1, 3, 2, 2];
    Ok((ok, format!("dims {dims:?}")))
}

fn end_generator(_: Budget) -> Result<(bool, String)> {
    let mut pairs = 0;
    let mut ok = true;
    for r in fixtures::all_presheaves() {
        let w = end_generator_iso(&GrCategory::build(&r)?, &SkewAlgebra::build(&r)?);
        ok &= w.passes();
        pairs += w.pairs_checked;
    }
    Ok((ok, format!("{pairs} basis pairs")))
}

fn subcategory_topologies(budget: Budget) -> Result<(bool, String)> {
    let mut counts = Vec::new();
    let mut ok = true;
    for cat in fixtures::cauchy_complete_categories() {
        let mut found = enumerate_topologies(&cat, budget)?;
        let mut from_d = cat
            .full_subcategories()?
            .iter()
            .map(|d| subcategory_topology(&cat, d))
            .collect::<Result<Vec<_>>>()?;
        found.sort();
        from_d.sort();
        from_d.dedup();
        ok &= found == from_d;
        counts.push(found.len());
    }
    ok &= enumerate_topologies(&fixtures::terminal_category(), budget)?.len() == 2;
    ok &= enumerate_topologies(&fixtures::a2_category(), budget)?.len() == 4;
    Ok((ok, format!("counts {counts:?}")))
}

fn round_trips(budget: Budget) -> Result<(bool, String)> {
    let mut n = 0;
    let mut ok = true;
    for (_, r) in core_fixtures() {
        let s = SkewAlgebra::build(&r)?;
        for v in &Universe::build(s.algebra(), 3, budget)?.members {
            let (m, basis) = phi_from_gr(&s, v)?;
            let back = psi_to_gr(&s, &m)?;
            ok &= v.change_basis(&basis).as_ref() == Some(&back);
            ok &= phi_from_gr(&s, &back)?.0 == m;
            n += 1;
        }
    }
    Ok((ok, format!("{n} modules")))
}

fn sheaves_are_perpendicular(budget: Budget) -> Result<(bool, String)> {
    let mut cases = 0;
    let mut mismatches = 0;
    for (_, r) in core_fixtures() {
        let s = SkewAlgebra::build(&r)?;
        let u = Universe::build(s.algebra(), 3, budget)?;
        for j in enumerate_topologies(r.category(), budget)? {
            let lt = linearize_topology(&s, &j, budget)?;
            for v in &u.members {
                if is_sheaf(&s, v, &lt).is_sheaf != perpendicular_check(&s, v, &lt)?.perpendicular {
                    mismatches += 1;
                }
                cases += 1;
            }
        }
    }
    // against every torsion module rather than the representable quotients
    let r = fixtures::terminal_f2();
    let s = SkewAlgebra::build(&r)?;
    let u = Universe::build(s.algebra(), 2, budget)?;
    for j in enumerate_topologies(r.category(), budget)? {
        let lt = linearize_topology(&s, &j, budget)?;
        for v in &u.members {
            if perpendicular_check(&s, v, &lt)?.perpendicular != oracle::perpendicular_to_all_torsion(&s, &u, &lt, v, budget)? {
                mismatches += 1;
            }
            cases += 1;
        }
    }
    Ok((mismatches == 0, format!("{cases} cases, {mismatches} mismatches")))
}

fn universe_and_tables(r: &AlgebraPresheaf, budget: Budget) -> Result<(SkewAlgebra, Universe, Tables)> {
    let s = SkewAlgebra::build(r)?;
    let u = Universe::build(s.algebra(), 3, budget)?;
    let t = Tables::build(&u)?;
    Ok((s, u, t))
}

fn hereditary_counts(budget: Budget) -> Result<(bool, String)> {
    let mut found = Vec::new();
    for (r, want) in [(fixtures::terminal_f2(), 2), (fixtures::terminal_f2xf2(), 4)] {
        let (s, u, t) = universe_and_tables(&r, budget)?;
        let linear = enumerate_linear_topologies(&s, budget)?.len();
        let brute = oracle::hereditary_torsion_classes(&u, &t, budget)?.len();
        found.push((linear, brute, want));
    }
    Ok((found.iter().all(|&(l, b, w)| l == w && b == w), format!("(linear, brute force, expected) {found:?}")))
}

fn ttf_counts(budget: Budget) -> Result<(bool, String)> {
    let (s, u, t) = universe_and_tables(&fixtures::a2_f2(), budget)?;
    let ideals = enumerate_idempotent_ideals(s.algebra(), budget)?.len();
    let brute = oracle::ttf_classes(&u, &t, budget)?.len();
    Ok((ideals == 4 && brute == 4, format!("{ideals} idempotent ideals, {brute} TTF triples")))
}

fn split_ttf_counts(budget: Budget) -> Result<(bool, String)> {
    let mut found = Vec::new();
    for (r, want) in [(fixtures::a2_f2(), 2), (fixtures::terminal_f2xf2(), 4)] {
        let (s, u, t) = universe_and_tables(&r, budget)?;
        let central = center(s.algebra(), budget)?.idempotents.len();
        let brute = oracle::split_ttf_classes(&u, &t, budget)?.len();
        found.push((central, brute, want));
    }
    Ok((found.iter().all(|&(c, b, w)| c == w && b == w), format!("(central idempotents, brute force, expected) {found:?}")))
}

fn recollements(budget: Budget) -> Result<(bool, String)> {
    let s = SkewAlgebra::build(&fixtures::a2_f2())?;
    let a = s.algebra();
    // the vertex whose idempotent generates the two-dimensional ideal
    let vertex = s.block_idempotent(0);
    let mut ok = true;
    let mut details = Vec::new();
    for e in [a.zero_vector(), a.unit().to_vec(), vertex] {
        let report = verify_recollement(a, &e, 3, budget)?;
        ok &= report.passes;
        let cases: usize = report.checks.iter().map(|c| c.cases).sum();
        details.push(format!("{e:?}: {cases} cases"));
    }
    Ok((ok, details.join(", ")))
}

fn ext_agrees(budget: Budget) -> Result<(bool, String)> {
    let s = SkewAlgebra::build(&fixtures::a2_f2())?;
    let a = s.algebra();
    let ids = s.block_idempotents();
    let u = Universe::build(a, 2, budget)?;
    let mut pairs = 0;
    let mut mismatches = 0;
    for m in &u.members {
        for n in &u.members {
            if ext1_dim(a, &ids, m, n)? != oracle::ext1_by_extensions(a, m, n, budget)? {
                mismatches += 1;
            }
            pairs += 1;
        }
    }
    Ok((mismatches == 0, format!("{pairs} pairs, {mismatches} mismatches")))
}
