//! Finite categories given by explicit composition tables.
//!
//! Objects and morphisms are addressed by dense indices in declaration
//! order; every downstream enumeration iterates in that order.

use std::collections::BTreeMap;

use crate::report::ValidationReport;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// Unchecked category data, as read from a file or built by hand.
/// `compose[(g, f)] = h` records `g ∘ f = h`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoryTable {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identity: Vec<Option<usize>>,
    pub compose: BTreeMap<(usize, usize), usize>,
}

impl CategoryTable {
    fn name(&self, f: usize) -> &str {
        self.morphisms.get(f).map(|m| m.name.as_str()).unwrap_or("?")
    }
}

/// Checks the category axioms, reporting every violation with its witnesses.
pub fn validate_category(raw: &CategoryTable) -> ValidationReport {
    let mut report = ValidationReport::new();
    let n_obj = raw.objects.len();
    let n_mor = raw.morphisms.len();

    for (i, a) in raw.objects.iter().enumerate() {
        if raw.objects[..i].contains(a) {
            report.push("duplicate name", format!("object `{a}` declared twice"));
        }
    }
    for (i, m) in raw.morphisms.iter().enumerate() {
        if raw.morphisms[..i].iter().any(|o| o.name == m.name) {
            report.push("duplicate name", format!("morphism `{}` declared twice", m.name));
        }
        if m.dom >= n_obj || m.cod >= n_obj {
            report.push("ill-typed morphism", format!("`{}` has an endpoint outside the object list", m.name));
        }
    }
    if !report.passes() {
        return report;
    }

    if raw.identity.len() != n_obj {
        report.push("missing identity", format!("{} identities for {} objects", raw.identity.len(), n_obj));
        return report;
    }
    for (x, id) in raw.identity.iter().enumerate() {
        match id {
            None => report.push("missing identity", format!("object `{}` has no identity", raw.objects[x])),
            Some(i) if *i >= n_mor => report.push("missing identity", format!("identity of `{}` is out of range", raw.objects[x])),
            Some(i) => {
                let m = &raw.morphisms[*i];
                if m.dom != x || m.cod != x {
                    report.push("ill-typed identity", format!("`{}` is not an endomorphism of `{}`", m.name, raw.objects[x]));
                }
            }
        }
    }

    for (&(g, f), &h) in &raw.compose {
        if g >= n_mor || f >= n_mor || h >= n_mor {
            report.push("ill-typed composition", format!("index out of range in ({g}, {f}) -> {h}"));
            continue;
        }
        let (mg, mf, mh) = (&raw.morphisms[g], &raw.morphisms[f], &raw.morphisms[h]);
        if mg.dom != mf.cod {
            report.push(
                "ill-typed composition",
                format!("composition given for non-composable ({}, {})", mg.name, mf.name),
            );
        } else if mh.dom != mf.dom || mh.cod != mg.cod {
            report.push(
                "ill-typed composition",
                format!("{} ∘ {} = {} has the wrong domain or codomain", mg.name, mf.name, mh.name),
            );
        }
    }

    for g in 0..n_mor {
        for f in 0..n_mor {
            if raw.morphisms[g].dom == raw.morphisms[f].cod && !raw.compose.contains_key(&(g, f)) {
                report.push(
                    "composition undefined",
                    format!("composition undefined for ({}, {})", raw.name(g), raw.name(f)),
                );
            }
        }
    }
    if !report.passes() {
        return report;
    }

    for (f, m) in raw.morphisms.iter().enumerate() {
        let id_cod = raw.identity[m.cod].unwrap();
        let id_dom = raw.identity[m.dom].unwrap();
        if raw.compose[&(id_cod, f)] != f {
            report.push("identity law", format!("{} ∘ {} ≠ {}", raw.name(id_cod), m.name, m.name));
        }
        if raw.compose[&(f, id_dom)] != f {
            report.push("identity law", format!("{} ∘ {} ≠ {}", m.name, raw.name(id_dom), m.name));
        }
    }
    for h in 0..n_mor {
        for g in 0..n_mor {
            if raw.morphisms[h].dom != raw.morphisms[g].cod {
                continue;
            }
            let hg = raw.compose[&(h, g)];
            for f in 0..n_mor {
                if raw.morphisms[g].dom != raw.morphisms[f].cod {
                    continue;
                }
                let left = raw.compose[&(h, raw.compose[&(g, f)])];
                let right = raw.compose[&(hg, f)];
                if left != right {
                    report.push(
                        "associativity",
                        format!(
                            "{h} ∘ ({g} ∘ {f}) = {} but ({h} ∘ {g}) ∘ {f} = {}",
                            raw.name(left),
                            raw.name(right),
                            h = raw.name(h),
                            g = raw.name(g),
                            f = raw.name(f)
                        ),
                    );
                }
            }
        }
    }
    report
}

/// A validated finite category. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteCategory {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    // dense (g, f) table, row-major in g
    compose: Vec<Option<usize>>,
}

impl TryFrom<CategoryTable> for FiniteCategory {
    type Error = Error;

    fn try_from(raw: CategoryTable) -> Result<Self> {
        validate_category(&raw).into_result("category")?;
        let n = raw.morphisms.len();
        let mut compose = vec![None; n * n];
        for (&(g, f), &h) in &raw.compose {
            compose[g * n + f] = Some(h);
        }
        Ok(FiniteCategory {
            identity: raw.identity.iter().map(|i| i.unwrap()).collect(),
            objects: raw.objects,
            morphisms: raw.morphisms,
            compose,
        })
    }
}

impl FiniteCategory {
    pub fn empty() -> Self {
        FiniteCategory {
            objects: Vec::new(),
            morphisms: Vec::new(),
            identity: Vec::new(),
            compose: Vec::new(),
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn object_name(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.morphisms[f].name
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn morphism_index(&self, name: &str) -> Result<usize> {
        self.morphisms
            .iter()
            .position(|m| m.name == name)
            .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    #[inline]
    pub fn dom(&self, f: usize) -> usize {
        self.morphisms[f].dom
    }

    #[inline]
    pub fn cod(&self, f: usize) -> usize {
        self.morphisms[f].cod
    }

    #[inline]
    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.dom(f)] == f
    }

    /// `g ∘ f`, defined exactly when `dom g = cod f`.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g * self.morphisms.len() + f]
    }

    /// Morphisms `x → y` in index order.
    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.num_morphisms())
            .filter(|&f| self.dom(f) == x && self.cod(f) == y)
            .collect()
    }

    /// Morphisms with codomain `x`, in index order.
    pub fn morphisms_into(&self, x: usize) -> Vec<usize> {
        (0..self.num_morphisms()).filter(|&f| self.cod(f) == x).collect()
    }

    pub fn table(&self) -> CategoryTable {
        let n = self.num_morphisms();
        let mut compose = BTreeMap::new();
        for g in 0..n {
            for f in 0..n {
                if let Some(h) = self.compose(g, f) {
                    compose.insert((g, f), h);
                }
            }
        }
        CategoryTable {
            objects: self.objects.clone(),
            morphisms: self.morphisms.clone(),
            identity: self.identity.iter().map(|&i| Some(i)).collect(),
            compose,
        }
    }

    pub fn idempotent_endomorphisms(&self) -> Vec<usize> {
        (0..self.num_morphisms())
            .filter(|&f| self.dom(f) == self.cod(f) && self.compose(f, f) == Some(f))
            .collect()
    }

    pub fn full_subcategory(&self, objs: &[usize]) -> Result<FullSubcategory> {
        let mut objects: Vec<usize> = objs.to_vec();
        objects.sort_unstable();
        objects.dedup();
        if let Some(&bad) = objects.iter().find(|&&x| x >= self.num_objects()) {
            return Err(Error::UnknownObject(format!("#{bad}")));
        }
        let inside = |x: usize| objects.binary_search(&x).is_ok();
        let morphisms: Vec<usize> = (0..self.num_morphisms())
            .filter(|&f| inside(self.dom(f)) && inside(self.cod(f)))
            .collect();

        let obj_pos = |x: usize| objects.binary_search(&x).unwrap();
        let mor_pos = |f: usize| morphisms.binary_search(&f).unwrap();
        let mut table = CategoryTable {
            objects: objects.iter().map(|&x| self.objects[x].clone()).collect(),
            morphisms: morphisms
                .iter()
                .map(|&f| Morphism {
                    name: self.morphisms[f].name.clone(),
                    dom: obj_pos(self.dom(f)),
                    cod: obj_pos(self.cod(f)),
                })
                .collect(),
            identity: objects.iter().map(|&x| Some(mor_pos(self.identity(x)))).collect(),
            compose: BTreeMap::new(),
        };
        for &g in &morphisms {
            for &f in &morphisms {
                if let Some(h) = self.compose(g, f) {
                    table.compose.insert((mor_pos(g), mor_pos(f)), mor_pos(h));
                }
            }
        }
        Ok(FullSubcategory {
            parent: self.clone(),
            category: FiniteCategory::try_from(table)?,
            objects,
            morphisms,
        })
    }

    pub fn full_subcategory_by_names(&self, names: &[&str]) -> Result<FullSubcategory> {
        let idx = names.iter().map(|n| self.object_index(n)).collect::<Result<Vec<_>>>()?;
        self.full_subcategory(&idx)
    }

    /// All strictly full subcategories, ordered by the bitmask of their objects.
    pub fn full_subcategories(&self) -> Result<Vec<FullSubcategory>> {
        let n = self.num_objects();
        if n > 20 {
            return Err(Error::BudgetExceeded {
                what: "enumerating full subcategories",
                needed: 1u128 << n.min(127),
                limit: 1 << 20,
            });
        }
        (0u32..(1 << n))
            .map(|mask| {
                let objs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                self.full_subcategory(&objs)
            })
            .collect()
    }
}

/// A strictly full subcategory: every parent morphism between its objects.
/// Keeps both the parent indices and a standalone reindexed category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FullSubcategory {
    parent: FiniteCategory,
    category: FiniteCategory,
    objects: Vec<usize>,
    morphisms: Vec<usize>,
}

impl FullSubcategory {
    pub fn parent(&self) -> &FiniteCategory {
        &self.parent
    }

    /// The subcategory as a category in its own right; index `i` here is
    /// parent object `objects()[i]`.
    pub fn as_category(&self) -> &FiniteCategory {
        &self.category
    }

    /// Parent indices of the retained objects, ascending.
    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    /// Parent indices of the retained morphisms, ascending.
    pub fn morphisms(&self) -> &[usize] {
        &self.morphisms
    }

    pub fn contains_object(&self, x: usize) -> bool {
        self.objects.binary_search(&x).is_ok()
    }

    pub fn object_names(&self) -> Vec<&str> {
        self.objects.iter().map(|&x| self.parent.object_name(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn terminal_and_a2_validate() {
        assert!(validate_category(&fixtures::terminal_category().table()).passes());
        assert!(validate_category(&fixtures::a2_category().table()).passes());
    }

    #[test]
    fn missing_composition_is_reported() {
        let mut t = fixtures::a2_category().table();
        let cat = fixtures::a2_category();
        let id2 = cat.morphism_index("id2").unwrap();
        let a = cat.morphism_index("a").unwrap();
        t.compose.remove(&(id2, a));
        let report = validate_category(&t);
        assert!(!report.passes());
        assert!(report
            .violations
            .iter()
            .any(|v| v.detail == "composition undefined for (id2, a)"));
    }

    #[test]
    fn broken_identity_law_is_reported() {
        let mut t = fixtures::c2_category().table();
        // 1 ∘ g := 1
        t.compose.insert((0, 1), 0);
        assert!(validate_category(&t).has_rule("identity law"));
    }

    #[test]
    fn broken_associativity_is_reported() {
        // one object, morphisms 1, u, v with u∘v = u, v∘u = v, u∘u = v, v∘v = u
        let mut t = CategoryTable {
            objects: vec!["*".into()],
            morphisms: ["1", "u", "v"]
                .iter()
                .map(|n| Morphism { name: n.to_string(), dom: 0, cod: 0 })
                .collect(),
            identity: vec![Some(0)],
            compose: BTreeMap::new(),
        };
        for f in 0..3 {
            t.compose.insert((0, f), f);
            t.compose.insert((f, 0), f);
        }
        t.compose.insert((1, 2), 1);
        t.compose.insert((2, 1), 2);
        t.compose.insert((1, 1), 2);
        t.compose.insert((2, 2), 1);
        assert!(validate_category(&t).has_rule("associativity"));
    }

    #[test]
    fn ill_typed_composition_entry() {
        let mut t = fixtures::a2_category().table();
        // a ∘ a is not composable in A2
        t.compose.insert((2, 2), 2);
        assert!(validate_category(&t).has_rule("ill-typed composition"));
    }

    #[test]
    fn full_subcategories_of_a2() {
        let a2 = fixtures::a2_category();
        let whole = a2.full_subcategory(&[0, 1]).unwrap();
        assert_eq!(whole.as_category(), &a2);

        let one = a2.full_subcategory(&[0]).unwrap();
        assert_eq!(one.as_category().num_objects(), 1);
        assert_eq!(one.as_category().num_morphisms(), 1);
        assert_eq!(one.morphisms(), &[0]);

        let none = a2.full_subcategory(&[]).unwrap();
        assert_eq!(none.as_category(), &FiniteCategory::empty());

        assert!(matches!(a2.full_subcategory(&[5]), Err(Error::UnknownObject(_))));
    }

    #[test]
    fn idempotents() {
        assert_eq!(fixtures::terminal_category().idempotent_endomorphisms(), vec![0]);
        let a2 = fixtures::a2_category();
        assert_eq!(a2.idempotent_endomorphisms(), vec![a2.identity(0), a2.identity(1)]);
        // g∘g = 1 ≠ g
        assert_eq!(fixtures::c2_category().idempotent_endomorphisms(), vec![0]);
        let e = fixtures::idempotent_monoid_category();
        assert_eq!(e.idempotent_endomorphisms(), vec![0, 1]);
    }

    #[test]
    fn every_fixture_category_is_total_and_contains_identities() {
        for cat in fixtures::all_categories() {
            for g in 0..cat.num_morphisms() {
                for f in 0..cat.num_morphisms() {
                    let composable = cat.dom(g) == cat.cod(f);
                    assert_eq!(cat.compose(g, f).is_some(), composable);
                    if let Some(h) = cat.compose(g, f) {
                        assert_eq!(cat.dom(h), cat.dom(f));
                        assert_eq!(cat.cod(h), cat.cod(g));
                    }
                }
            }
            let idem = cat.idempotent_endomorphisms();
            for x in 0..cat.num_objects() {
                assert!(idem.contains(&cat.identity(x)));
            }
        }
    }
}
