//! Sieves and Grothendieck topologies on a finite category.
//!
//! A sieve is a bitmask over the global morphism index, so set operations
//! and canonical ordering are integer operations.

use std::collections::BTreeSet;

use crate::fincat::{FiniteCategory, FullSubcategory};
use crate::report::ValidationReport;
use crate::{Budget, Error, Result};

/// Largest morphism count a sieve bitmask can address.
pub const MAX_MORPHISMS: usize = 64;

/// A right-closed set of morphisms with codomain `target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sieve {
    pub target: usize,
    pub members: u64,
}

impl Sieve {
    pub fn contains(&self, f: usize) -> bool {
        self.members >> f & 1 == 1
    }

    pub fn members(&self) -> Vec<usize> {
        (0..MAX_MORPHISMS).filter(|&f| self.contains(f)).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn maximal(cat: &FiniteCategory, x: usize) -> Sieve {
        Sieve {
            target: x,
            members: mask_of(&cat.morphisms_into(x)),
        }
    }

    pub fn empty(x: usize) -> Sieve {
        Sieve { target: x, members: 0 }
    }

    pub fn is_subset_of(&self, other: &Sieve) -> bool {
        self.members & !other.members == 0
    }

    /// Every member has codomain `target` and `g ∈ S ⇒ g∘f ∈ S`.
    pub fn is_valid(&self, cat: &FiniteCategory) -> bool {
        let n = cat.num_morphisms();
        if n < MAX_MORPHISMS && self.members >> n != 0 {
            return false;
        }
        self.members().into_iter().all(|g| {
            cat.cod(g) == self.target
                && (0..n).all(|f| cat.compose(g, f).is_none_or(|h| self.contains(h)))
        })
    }

    pub fn names(&self, cat: &FiniteCategory) -> Vec<String> {
        self.members().into_iter().map(|f| cat.morphism_name(f).to_string()).collect()
    }
}

fn mask_of(fs: &[usize]) -> u64 {
    fs.iter().fold(0, |m, &f| m | 1 << f)
}

fn check_size(cat: &FiniteCategory) -> Result<()> {
    if cat.num_morphisms() > MAX_MORPHISMS {
        return Err(Error::BudgetExceeded {
            what: "indexing sieves by bitmask",
            needed: cat.num_morphisms() as u128,
            limit: MAX_MORPHISMS as u64,
        });
    }
    Ok(())
}

/// All sieves on `x`, ordered by member bitmask.
pub fn sieves_on(cat: &FiniteCategory, x: usize) -> Result<Vec<Sieve>> {
    check_size(cat)?;
    if x >= cat.num_objects() {
        return Err(Error::UnknownObject(format!("#{x}")));
    }
    let into = cat.morphisms_into(x);
    Budget::default().check_power("enumerating subsets of Hom(-, x)", 2, into.len())?;
    let mut out: Vec<Sieve> = (0u64..1 << into.len())
        .map(|bits| Sieve {
            target: x,
            members: into
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .fold(0, |m, (_, &f)| m | 1 << f),
        })
        .filter(|s| s.is_valid(cat))
        .collect();
    out.sort();
    Ok(out)
}

/// `f*(S) = { g : f∘g ∈ S }`, a sieve on `dom f`.
pub fn pullback_sieve(cat: &FiniteCategory, s: &Sieve, f: usize) -> Result<Sieve> {
    if f >= cat.num_morphisms() {
        return Err(Error::UnknownMorphism(format!("#{f}")));
    }
    if cat.cod(f) != s.target {
        return Err(Error::TypeMismatch(format!(
            "cannot pull a sieve on `{}` back along `{}`",
            cat.object_name(s.target),
            cat.morphism_name(f)
        )));
    }
    let y = cat.dom(f);
    let members = cat
        .morphisms_into(y)
        .into_iter()
        .filter(|&g| s.contains(cat.compose(f, g).expect("cod g = dom f")))
        .fold(0, |m, g| m | 1 << g);
    Ok(Sieve { target: y, members })
}

/// A covering-sieve assignment, one set per object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrothendieckTopology {
    covers: Vec<BTreeSet<Sieve>>,
}

impl GrothendieckTopology {
    pub fn new(covers: Vec<BTreeSet<Sieve>>) -> Self {
        GrothendieckTopology { covers }
    }

    /// Only maximal sieves cover.
    pub fn trivial(cat: &FiniteCategory) -> Self {
        GrothendieckTopology {
            covers: (0..cat.num_objects()).map(|x| BTreeSet::from([Sieve::maximal(cat, x)])).collect(),
        }
    }

    pub fn covers(&self, x: usize) -> &BTreeSet<Sieve> {
        &self.covers[x]
    }

    pub fn num_objects(&self) -> usize {
        self.covers.len()
    }

    pub fn is_cover(&self, s: &Sieve) -> bool {
        self.covers.get(s.target).is_some_and(|c| c.contains(s))
    }
}

/// Checks maximality, pullback stability and transitivity, with witnesses.
pub fn is_topology(cat: &FiniteCategory, j: &GrothendieckTopology) -> ValidationReport {
    let mut report = ValidationReport::new();
    if let Err(e) = check_size(cat) {
        report.push("size", e.to_string());
        return report;
    }
    if j.num_objects() != cat.num_objects() {
        report.push("shape", format!("{} cover sets for {} objects", j.num_objects(), cat.num_objects()));
        return report;
    }
    for x in 0..cat.num_objects() {
        for s in j.covers(x) {
            if s.target != x || !s.is_valid(cat) {
                report.push("invalid sieve", format!("{:?} listed at `{}`", s.names(cat), cat.object_name(x)));
            }
        }
    }
    if !report.passes() {
        return report;
    }

    for x in 0..cat.num_objects() {
        let name = cat.object_name(x);
        if !j.is_cover(&Sieve::maximal(cat, x)) {
            report.push("maximality", format!("maximal sieve on `{name}` does not cover"));
        }
        for s in j.covers(x) {
            for f in cat.morphisms_into(x) {
                let pb = pullback_sieve(cat, s, f).expect("f targets x");
                if !j.is_cover(&pb) {
                    report.push(
                        "stability",
                        format!(
                            "pullback of {:?} on `{name}` along `{}` is {:?}, not a cover of `{}`",
                            s.names(cat),
                            cat.morphism_name(f),
                            pb.names(cat),
                            cat.object_name(cat.dom(f))
                        ),
                    );
                }
            }
        }
        let all = match sieves_on(cat, x) {
            Ok(all) => all,
            Err(e) => {
                report.push("size", e.to_string());
                continue;
            }
        };
        for s2 in &all {
            if j.is_cover(s2) {
                continue;
            }
            let witness = j.covers(x).iter().find(|s1| {
                s1.members().into_iter().all(|f| {
                    let pb = pullback_sieve(cat, s2, f).expect("f targets x");
                    j.is_cover(&pb)
                })
            });
            if let Some(s1) = witness {
                report.push(
                    "transitivity",
                    format!(
                        "{:?} on `{name}` is locally covered over {:?} but is not a cover",
                        s2.names(cat),
                        s1.names(cat)
                    ),
                );
            }
        }
    }
    report
}

/// Every topology on `cat`, in canonical order. Candidates per object are
/// the cover sets containing the maximal sieve, pruned by the consequence
/// "the empty sieve covers ⇒ every sieve covers".
pub fn enumerate_topologies(cat: &FiniteCategory, budget: Budget) -> Result<Vec<GrothendieckTopology>> {
    check_size(cat)?;
    let mut per_object: Vec<Vec<BTreeSet<Sieve>>> = Vec::new();
    let mut total: u128 = 1;
    for x in 0..cat.num_objects() {
        let all = sieves_on(cat, x)?;
        let max = Sieve::maximal(cat, x);
        let others: Vec<Sieve> = all.iter().copied().filter(|s| *s != max).collect();
        budget.check_power("enumerating cover sets", 2, others.len())?;
        let mut cands = Vec::new();
        for bits in 0u64..1 << others.len() {
            let mut set = BTreeSet::from([max]);
            set.extend(others.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, s)| *s));
            if set.contains(&Sieve::empty(x)) && set.len() != all.len() {
                continue;
            }
            cands.push(set);
        }
        total = total.saturating_mul(cands.len() as u128);
        budget.check("enumerating candidate topologies", total)?;
        per_object.push(cands);
    }

    let mut out = Vec::new();
    let mut choice = vec![0usize; per_object.len()];
    loop {
        let j = GrothendieckTopology::new(choice.iter().zip(&per_object).map(|(&c, cs)| cs[c].clone()).collect());
        if is_topology(cat, &j).passes() {
            out.push(j);
        }
        // odometer over the per-object candidate lists
        let mut i = 0;
        loop {
            if i == choice.len() {
                out.sort();
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < per_object[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// `J^D(x)`: the sieves on `x` containing every morphism `d → x` with `d ∈ D`.
pub fn subcategory_topology(cat: &FiniteCategory, d: &FullSubcategory) -> Result<GrothendieckTopology> {
    if d.parent() != cat {
        return Err(Error::NotStrictlyFull);
    }
    let covers = (0..cat.num_objects())
        .map(|x| {
            let required = mask_of(
                &cat.morphisms_into(x)
                    .into_iter()
                    .filter(|&f| d.contains_object(cat.dom(f)))
                    .collect::<Vec<_>>(),
            );
            Ok(sieves_on(cat, x)?
                .into_iter()
                .filter(|s| s.members & required == required)
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GrothendieckTopology::new(covers))
}

/// The first full subcategory `D` (in object-bitmask order) with `J^D = J`.
pub fn matching_subcategory(cat: &FiniteCategory, j: &GrothendieckTopology) -> Result<Option<FullSubcategory>> {
    for d in cat.full_subcategories()? {
        if &subcategory_topology(cat, &d)? == j {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sieve(cat: &FiniteCategory, x: &str, names: &[&str]) -> Sieve {
        let fs: Vec<usize> = names.iter().map(|n| cat.morphism_index(n).unwrap()).collect();
        Sieve {
            target: cat.object_index(x).unwrap(),
            members: mask_of(&fs),
        }
    }

    #[test]
    fn sieves_on_examples() {
        let t = fixtures::terminal_category();
        assert_eq!(sieves_on(&t, 0).unwrap(), vec![sieve(&t, "*", &[]), sieve(&t, "*", &["id"])]);

        let a2 = fixtures::a2_category();
        assert_eq!(
            sieves_on(&a2, 1).unwrap(),
            vec![sieve(&a2, "2", &[]), sieve(&a2, "2", &["a"]), sieve(&a2, "2", &["id2", "a"])]
        );
        assert_eq!(sieves_on(&a2, 0).unwrap(), vec![sieve(&a2, "1", &[]), sieve(&a2, "1", &["id1"])]);
        assert!(!sieve(&a2, "2", &["id2"]).is_valid(&a2));
        assert!(sieves_on(&a2, 7).is_err());
    }

    #[test]
    fn pullback_examples() {
        let a2 = fixtures::a2_category();
        let a = a2.morphism_index("a").unwrap();
        let max2 = Sieve::maximal(&a2, 1);
        assert_eq!(pullback_sieve(&a2, &max2, a).unwrap(), Sieve::maximal(&a2, 0));
        assert_eq!(pullback_sieve(&a2, &sieve(&a2, "2", &["a"]), a).unwrap(), sieve(&a2, "1", &["id1"]));
        assert_eq!(pullback_sieve(&a2, &Sieve::empty(1), a).unwrap(), Sieve::empty(0));
        assert!(matches!(pullback_sieve(&a2, &Sieve::maximal(&a2, 0), a), Err(Error::TypeMismatch(_))));
    }

    #[test]
    fn is_topology_examples() {
        for cat in fixtures::all_categories() {
            assert!(is_topology(&cat, &GrothendieckTopology::trivial(&cat)).passes());
        }
        let t = fixtures::terminal_category();
        let j = GrothendieckTopology::new(vec![BTreeSet::from([Sieve::maximal(&t, 0), Sieve::empty(0)])]);
        assert!(is_topology(&t, &j).passes());

        let a2 = fixtures::a2_category();
        let bad = GrothendieckTopology::new(vec![
            BTreeSet::from([Sieve::maximal(&a2, 0)]),
            BTreeSet::from([Sieve::maximal(&a2, 1), Sieve::empty(1)]),
        ]);
        let report = is_topology(&a2, &bad);
        assert!(report.has_rule("stability"));
        assert!(report.violations.iter().any(|v| v.detail.contains("along `a`")));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_topologies(&fixtures::terminal_category(), Budget::default()).unwrap().len(), 2);
        assert_eq!(enumerate_topologies(&fixtures::a2_category(), Budget::default()).unwrap().len(), 4);
        assert_eq!(enumerate_topologies(&FiniteCategory::empty(), Budget::default()).unwrap().len(), 1);
        assert!(enumerate_topologies(&fixtures::a3_category(), Budget::new(4)).is_err());
    }

    #[test]
    fn subcategory_topology_examples() {
        let a2 = fixtures::a2_category();
        let d1 = a2.full_subcategory(&[0]).unwrap();
        let j = subcategory_topology(&a2, &d1).unwrap();
        assert_eq!(j.covers(0), &BTreeSet::from([Sieve::maximal(&a2, 0)]));
        assert_eq!(j.covers(1), &BTreeSet::from([sieve(&a2, "2", &["a"]), Sieve::maximal(&a2, 1)]));

        let all = a2.full_subcategory(&[0, 1]).unwrap();
        assert_eq!(subcategory_topology(&a2, &all).unwrap(), GrothendieckTopology::trivial(&a2));

        let none = a2.full_subcategory(&[]).unwrap();
        let j0 = subcategory_topology(&a2, &none).unwrap();
        for x in 0..2 {
            assert_eq!(j0.covers(x).len(), sieves_on(&a2, x).unwrap().len());
        }

        let foreign = fixtures::terminal_category().full_subcategory(&[0]).unwrap();
        assert!(matches!(subcategory_topology(&a2, &foreign), Err(Error::NotStrictlyFull)));
    }

    #[test]
    fn subcategory_topologies_are_topologies() {
        for cat in fixtures::all_categories() {
            for d in cat.full_subcategories().unwrap() {
                let j = subcategory_topology(&cat, &d).unwrap();
                assert!(is_topology(&cat, &j).passes(), "{d:?}");
            }
        }
    }

    #[test]
    fn enumeration_matches_subcategory_topologies() {
        for cat in fixtures::cauchy_complete_categories() {
            assert!(cat.num_morphisms() <= 6);
            let enumerated: BTreeSet<_> = enumerate_topologies(&cat, Budget::default()).unwrap().into_iter().collect();
            let from_d: BTreeSet<_> = cat
                .full_subcategories()
                .unwrap()
                .iter()
                .map(|d| subcategory_topology(&cat, d).unwrap())
                .collect();
            assert_eq!(enumerated, from_d);
            assert_eq!(enumerated.len(), 1 << cat.num_objects());
        }
    }

    #[test]
    fn split_free_idempotent_gives_extra_topology() {
        // {1, e} with e∘e = e: the cover set {{e}, max} is a topology not of the form J^D
        let cat = fixtures::idempotent_monoid_category();
        let tops = enumerate_topologies(&cat, Budget::default()).unwrap();
        assert_eq!(tops.len(), 3);
        let odd = tops.iter().find(|j| j.covers(0).len() == 2).unwrap();
        assert_eq!(matching_subcategory(&cat, odd).unwrap(), None);
    }

    #[test]
    fn empty_cover_forces_everything() {
        for cat in fixtures::all_categories() {
            for j in enumerate_topologies(&cat, Budget::default()).unwrap() {
                for x in 0..cat.num_objects() {
                    if j.is_cover(&Sieve::empty(x)) {
                        assert_eq!(j.covers(x).len(), sieves_on(&cat, x).unwrap().len());
                    }
                }
            }
        }
    }

    #[test]
    fn pullback_preserves_maximality_and_closure() {
        for cat in fixtures::all_categories() {
            for x in 0..cat.num_objects() {
                for s in sieves_on(&cat, x).unwrap() {
                    for f in cat.morphisms_into(x) {
                        let pb = pullback_sieve(&cat, &s, f).unwrap();
                        assert!(pb.is_valid(&cat));
                        if s == Sieve::maximal(&cat, x) {
                            assert_eq!(pb, Sieve::maximal(&cat, cat.dom(f)));
                        }
                    }
                }
            }
        }
    }
}
