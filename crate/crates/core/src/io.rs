//! JSON reading and writing for categories, presheaves of algebras,
//! topologies and module presheaves.
//!
//! Every file may carry a `schema` string; when present it must name the
//! matching format. Matrices are lists of rows.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{AlgebraPresheaf, FiniteAlgebra};
use crate::fincat::{CategoryTable, FiniteCategory, Morphism};
use crate::linalg::Matrix;
use crate::modcat::ModulePresheaf;
use crate::ring::BaseRing;
use crate::topology::{GrothendieckTopology, Sieve};
use crate::{Error, Result};

pub const CATEGORY_SCHEMA: &str = "torsite/category/v1";
pub const PRESHEAF_SCHEMA: &str = "torsite/presheaf/v1";
pub const TOPOLOGY_SCHEMA: &str = "torsite/topology/v1";
pub const MODULE_SCHEMA: &str = "torsite/module/v1";

/// Reads a file as JSON; syntax errors carry line and column.
pub fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value, what: &str) -> Result<T> {
    T::deserialize(v).map_err(|e| Error::Format(format!("{what}: {e}")))
}

fn check_schema(schema: &Option<String>, want: &str) -> Result<()> {
    match schema {
        Some(s) if s != want => Err(Error::Format(format!("schema `{s}`, expected `{want}`"))),
        _ => Ok(()),
    }
}

pub fn schema_of(v: &Value) -> Option<&str> {
    v.get("schema").and_then(Value::as_str)
}

fn matrix(rows: &[Vec<u32>], shape: (usize, usize), what: &str) -> Result<Matrix> {
    let m = if rows.is_empty() {
        Some(Matrix::zeros(0, shape.1))
    } else {
        Matrix::from_rows(rows, shape.1)
    };
    match m {
        Some(m) if (m.rows(), m.cols()) == shape => Ok(m),
        _ => Err(Error::Format(format!("{what}: expected a {}×{} matrix", shape.0, shape.1))),
    }
}

fn check_entries(k: BaseRing, m: &Matrix, what: &str) -> Result<()> {
    match m.as_flat().iter().find(|&&c| !k.in_range(c)) {
        Some(c) => Err(Error::Format(format!("{what}: entry {c} is outside Z/{}", k.modulus()))),
        None => Ok(()),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismEntry {
    name: String,
    dom: String,
    cod: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryFile {
    #[serde(default)]
    schema: Option<String>,
    objects: Vec<String>,
    morphisms: Vec<MorphismEntry>,
    identity: BTreeMap<String, String>,
    #[serde(default)]
    compose: Vec<[String; 3]>,
}

/// Parses and validates a category. Only `id ∘ id = id` may be left out of
/// the composition list.
pub fn parse_category(v: &Value) -> Result<FiniteCategory> {
    let file: CategoryFile = from_value(v, "category")?;
    check_schema(&file.schema, CATEGORY_SCHEMA)?;
    let obj = |n: &str| file.objects.iter().position(|o| o == n).ok_or_else(|| Error::UnknownObject(n.to_string()));
    let mut table = CategoryTable {
        objects: file.objects.clone(),
        ..Default::default()
    };
    for m in &file.morphisms {
        table.morphisms.push(Morphism {
            name: m.name.clone(),
            dom: obj(&m.dom)?,
            cod: obj(&m.cod)?,
        });
    }
    let mor = |n: &str| {
        table
            .morphisms
            .iter()
            .position(|m| m.name == n)
            .ok_or_else(|| Error::UnknownMorphism(n.to_string()))
    };
    let mut identity = vec![None; file.objects.len()];
    for (x, id) in &file.identity {
        identity[obj(x)?] = Some(mor(id)?);
    }
    let mut compose = BTreeMap::new();
    for [g, f, h] in &file.compose {
        let key = (mor(g)?, mor(f)?);
        let h = mor(h)?;
        if compose.insert(key, h).is_some_and(|old| old != h) {
            return Err(Error::Format(format!("composite `{g}` ∘ `{f}` given twice")));
        }
    }
    for id in identity.iter().flatten() {
        compose.entry((*id, *id)).or_insert(*id);
    }
    table.identity = identity;
    table.compose = compose;
    FiniteCategory::try_from(table)
}

/// Writes every defined composite, so the output reads back unchanged.
pub fn category_to_json(cat: &FiniteCategory) -> Value {
    let name = |f: usize| cat.morphism_name(f).to_string();
    let mut compose = Vec::new();
    for g in 0..cat.num_morphisms() {
        for f in 0..cat.num_morphisms() {
            if let Some(h) = cat.compose(g, f) {
                compose.push(json!([name(g), name(f), name(h)]));
            }
        }
    }
    json!({
        "schema": CATEGORY_SCHEMA,
        "objects": cat.objects(),
        "morphisms": cat.morphisms().iter().map(|m| json!({
            "name": m.name,
            "dom": cat.object_name(m.dom),
            "cod": cat.object_name(m.cod),
        })).collect::<Vec<_>>(),
        "identity": (0..cat.num_objects())
            .map(|x| (cat.object_name(x).to_string(), Value::from(name(cat.identity(x)))))
            .collect::<serde_json::Map<_, _>>(),
        "compose": compose,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Base {
    modulus: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraEntry {
    basis: Vec<String>,
    unit: Vec<u32>,
    mul: Vec<Vec<Vec<u32>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MapEntry {
    matrix: Vec<Vec<u32>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresheafFile {
    #[serde(default)]
    schema: Option<String>,
    category: Value,
    base: Base,
    objects: BTreeMap<String, AlgebraEntry>,
    #[serde(default)]
    morphisms: BTreeMap<String, MapEntry>,
}

fn parse_algebra(k: BaseRing, name: &str, e: &AlgebraEntry) -> Result<FiniteAlgebra> {
    let n = e.basis.len();
    let bad = |what: &str| Error::Format(format!("algebra at `{name}`: {what}"));
    if e.unit.len() != n {
        return Err(bad("unit has the wrong length"));
    }
    if e.mul.len() != n || e.mul.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
        return Err(bad("mul must be an n×n table of length-n vectors"));
    }
    if e.unit.iter().chain(e.mul.iter().flatten().flatten()).any(|&c| !k.in_range(c)) {
        return Err(bad("coefficient outside the base ring"));
    }
    FiniteAlgebra::new(k, e.basis.clone(), e.mul.clone(), e.unit.clone())
}

/// Parses a presheaf of algebras with its category inline. Identity
/// matrices may be omitted. Laws are checked by `validate_presheaf`.
pub fn parse_presheaf(v: &Value) -> Result<AlgebraPresheaf> {
    let file: PresheafFile = from_value(v, "presheaf")?;
    check_schema(&file.schema, PRESHEAF_SCHEMA)?;
    let cat = parse_category(&file.category)?;
    let k = BaseRing::new(file.base.modulus)?;
    for name in file.objects.keys() {
        cat.object_index(name)?;
    }
    for name in file.morphisms.keys() {
        cat.morphism_index(name)?;
    }
    let mut algebras = Vec::new();
    for x in 0..cat.num_objects() {
        let name = cat.object_name(x);
        let entry = file
            .objects
            .get(name)
            .ok_or_else(|| Error::Format(format!("no algebra given for object `{name}`")))?;
        algebras.push(parse_algebra(k, name, entry)?);
    }
    let mut maps = Vec::new();
    for f in 0..cat.num_morphisms() {
        let name = cat.morphism_name(f);
        let shape = (algebras[cat.dom(f)].dim(), algebras[cat.cod(f)].dim());
        let m = match file.morphisms.get(name) {
            Some(e) => matrix(&e.matrix, shape, &format!("morphism `{name}`"))?,
            None if cat.is_identity(f) => Matrix::identity(shape.0),
            None => return Err(Error::Format(format!("no matrix given for morphism `{name}`"))),
        };
        maps.push(m);
    }
    AlgebraPresheaf::new(cat, k, algebras, maps)
}

pub fn algebra_to_json(a: &FiniteAlgebra) -> Value {
    let n = a.dim();
    json!({
        "basis": a.basis_names(),
        "unit": a.unit(),
        "mul": (0..n).map(|i| (0..n).map(|j| a.basis_product(i, j).to_vec()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

pub fn presheaf_to_json(r: &AlgebraPresheaf) -> Value {
    let cat = r.category();
    json!({
        "schema": PRESHEAF_SCHEMA,
        "category": category_to_json(cat),
        "base": {"modulus": r.ring().modulus()},
        "objects": (0..cat.num_objects())
            .map(|x| (cat.object_name(x).to_string(), algebra_to_json(r.algebra(x))))
            .collect::<serde_json::Map<_, _>>(),
        "morphisms": (0..cat.num_morphisms())
            .map(|f| (cat.morphism_name(f).to_string(), json!({"matrix": r.map(f).to_rows()})))
            .collect::<serde_json::Map<_, _>>(),
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TopologyFile {
    #[serde(default)]
    schema: Option<String>,
    covers: BTreeMap<String, Vec<Vec<String>>>,
}

/// Parses covering sieves by morphism names. Accepts `{"covers": …}` or the
/// bare object → sieves map. Objects left out get only their maximal sieve.
/// The axioms are checked by `is_topology`.
pub fn parse_topology(cat: &FiniteCategory, v: &Value) -> Result<GrothendieckTopology> {
    let covers: BTreeMap<String, Vec<Vec<String>>> = if v.get("covers").is_some() {
        let file: TopologyFile = from_value(v, "topology")?;
        check_schema(&file.schema, TOPOLOGY_SCHEMA)?;
        file.covers
    } else {
        from_value(v, "topology")?
    };
    let mut sets: Vec<BTreeSet<Sieve>> = (0..cat.num_objects()).map(|x| BTreeSet::from([Sieve::maximal(cat, x)])).collect();
    let mut given = vec![false; cat.num_objects()];
    for (name, sieves) in &covers {
        let x = cat.object_index(name)?;
        if !given[x] {
            sets[x].clear();
            given[x] = true;
        }
        for names in sieves {
            let mut members = 0u64;
            for n in names {
                let f = cat.morphism_index(n)?;
                if cat.cod(f) != x {
                    return Err(Error::Format(format!("sieve on `{name}` contains `{n}`, whose codomain is not `{name}`")));
                }
                members |= 1 << f;
            }
            sets[x].insert(Sieve { target: x, members });
        }
    }
    Ok(GrothendieckTopology::new(sets))
}

/// Morphism names of a sieve, sorted.
pub fn sieve_names(cat: &FiniteCategory, s: &Sieve) -> Vec<String> {
    let mut names = s.names(cat);
    names.sort();
    names
}

/// Object → sieves, each a sorted name list; sieves listed in sorted order.
pub fn topology_covers_json(cat: &FiniteCategory, j: &GrothendieckTopology) -> Value {
    (0..cat.num_objects())
        .map(|x| {
            let mut sieves: Vec<Vec<String>> = j.covers(x).iter().map(|s| sieve_names(cat, s)).collect();
            sieves.sort();
            (cat.object_name(x).to_string(), json!(sieves))
        })
        .collect::<serde_json::Map<_, _>>()
        .into()
}

pub fn topology_to_json(cat: &FiniteCategory, j: &GrothendieckTopology) -> Value {
    json!({"schema": TOPOLOGY_SCHEMA, "covers": topology_covers_json(cat, j)})
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ActionEntry {
    List(Vec<Vec<Vec<u32>>>),
    Named(BTreeMap<String, Vec<Vec<u32>>>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleObject {
    rank: usize,
    #[serde(default)]
    action: Option<ActionEntry>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<Vec<u32>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    #[serde(default)]
    schema: Option<String>,
    objects: BTreeMap<String, ModuleObject>,
}

/// Parses a module presheaf over `r`.
///
/// Under object `y`, `action` lists the matrix of each basis element of
/// `R(y)` on `M(y)` (as a list in basis order or keyed by basis name), and
/// `maps` gives `M(f): M(y) → M(dom f)` for morphisms `f` with codomain `y`.
/// Identity maps may be omitted, and so may any map with a zero-rank end;
/// a missing action is allowed only at rank zero. Laws are checked by
/// `validate_module_presheaf`.
pub fn parse_module(r: &AlgebraPresheaf, v: &Value) -> Result<ModulePresheaf> {
    let file: ModuleFile = from_value(v, "module")?;
    check_schema(&file.schema, MODULE_SCHEMA)?;
    let cat = r.category();
    let k = r.ring();
    let mut ranks = vec![0; cat.num_objects()];
    for (name, o) in &file.objects {
        ranks[cat.object_index(name)?] = o.rank;
    }
    let mut actions = Vec::new();
    for (x, &n) in ranks.iter().enumerate() {
        let name = cat.object_name(x);
        let alg = r.algebra(x);
        let what = |b: &str| format!("action of `{b}` at `{name}`");
        let rows: Vec<Vec<Vec<u32>>> = match file.objects.get(name).and_then(|o| o.action.as_ref()) {
            None if n == 0 => vec![Vec::new(); alg.dim()],
            None => return Err(Error::Format(format!("no action given at `{name}`"))),
            Some(ActionEntry::List(l)) => {
                if l.len() != alg.dim() {
                    return Err(Error::Format(format!("`{name}` needs {} action matrices", alg.dim())));
                }
                l.clone()
            }
            Some(ActionEntry::Named(m)) => {
                if let Some(b) = m.keys().find(|b| !alg.basis_names().contains(b)) {
                    return Err(Error::Format(format!("`{b}` is not a basis element of the algebra at `{name}`")));
                }
                let mut l = Vec::new();
                for b in alg.basis_names() {
                    l.push(m.get(b).cloned().ok_or_else(|| Error::Format(format!("{} is missing", what(b))))?);
                }
                l
            }
        };
        let mut mats = Vec::new();
        for (b, rows) in alg.basis_names().iter().zip(&rows) {
            let m = matrix(rows, (n, n), &what(b))?;
            check_entries(k, &m, &what(b))?;
            mats.push(m);
        }
        actions.push(mats);
    }
    let mut maps: Vec<Option<Matrix>> = vec![None; cat.num_morphisms()];
    for (name, o) in &file.objects {
        let y = cat.object_index(name)?;
        for (fname, rows) in &o.maps {
            let f = cat.morphism_index(fname)?;
            if cat.cod(f) != y {
                return Err(Error::Format(format!("map `{fname}` listed under `{name}`, but its codomain is `{}`", cat.object_name(cat.cod(f)))));
            }
            let what = format!("map `{fname}`");
            let m = matrix(rows, (ranks[cat.dom(f)], ranks[y]), &what)?;
            check_entries(k, &m, &what)?;
            maps[f] = Some(m);
        }
    }
    let maps = maps
        .into_iter()
        .enumerate()
        .map(|(f, m)| {
            let (d, c) = (ranks[cat.dom(f)], ranks[cat.cod(f)]);
            match m {
                Some(m) => Ok(m),
                None if cat.is_identity(f) => Ok(Matrix::identity(d)),
                None if d == 0 || c == 0 => Ok(Matrix::zeros(d, c)),
                None => Err(Error::Format(format!("no matrix given for map `{}`", cat.morphism_name(f)))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ModulePresheaf { ring: k, ranks, actions, maps })
}

pub fn module_to_json(r: &AlgebraPresheaf, m: &ModulePresheaf) -> Value {
    let cat = r.category();
    let objects: serde_json::Map<String, Value> = (0..cat.num_objects())
        .map(|y| {
            let maps: serde_json::Map<String, Value> = (0..cat.num_morphisms())
                .filter(|&f| cat.cod(f) == y && !cat.is_identity(f))
                .map(|f| (cat.morphism_name(f).to_string(), json!(m.maps[f].to_rows())))
                .collect();
            let action: Vec<Vec<Vec<u32>>> = m.actions[y].iter().map(Matrix::to_rows).collect();
            (cat.object_name(y).to_string(), json!({"rank": m.ranks[y], "action": action, "maps": maps}))
        })
        .collect();
    json!({"schema": MODULE_SCHEMA, "objects": objects})
}

/// An algebra element from text: comma-separated coordinates (`1,0,0`) or a
/// sum of basis names with optional coefficients (`1@id1 + 2*1@a`).
pub fn parse_element(a: &FiniteAlgebra, text: &str) -> Result<Vec<u32>> {
    let k = a.ring();
    let text = text.trim();
    let bad = |what: String| Error::Format(format!("element `{text}`: {what}"));
    if text.is_empty() {
        return Err(bad("empty".into()));
    }
    if text == "0" {
        return Ok(a.zero_vector());
    }
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.iter().all(|p| p.parse::<u32>().is_ok()) && (parts.len() > 1 || a.dim() == 1) {
        let v: Vec<u32> = parts.iter().map(|p| p.parse().unwrap()).collect();
        if v.len() != a.dim() {
            return Err(bad(format!("expected {} coordinates", a.dim())));
        }
        if v.iter().any(|&c| !k.in_range(c)) {
            return Err(bad("coordinate outside the base ring".into()));
        }
        return Ok(v);
    }
    let mut v = a.zero_vector();
    for term in text.split('+').map(str::trim) {
        let (c, name) = match term.split_once('*') {
            Some((c, n)) => (c.trim().parse::<u32>().map_err(|_| bad(format!("bad coefficient in `{term}`")))?, n.trim()),
            None => (1, term),
        };
        let b = a
            .basis_names()
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| bad(format!("unknown basis element `{name}`")))?;
        v[b] = k.add(v[b], k.reduce(c as i64));
    }
    Ok(v)
}

/// Pretty JSON with a trailing newline. Key order is fixed by the maps
/// used to build the value, so equal inputs give equal bytes.
pub fn to_pretty<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}
