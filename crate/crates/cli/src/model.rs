//! JSON model files: a presented category with optional gradings, functors,
//! grading morphisms, walks and families.

use std::collections::BTreeMap;
use std::sync::Arc;

use kgrad::grading::quotient_grading;
use kgrad::grpkit::GroupElement;
use kgrad::linrep::{format_scalar, Matrix};
use kgrad::{
    build_category, AbelianGroup, BasisRef, FieldSpec, Functor, Grading, GroupHom, LinComb, Morphism, Path,
    PresentedCategory, Quiver, Scalar, Walk,
};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed JSON: {0}")]
    Parse(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unresolved reference at {path}: {name}")]
    UnresolvedReference { path: String, name: String },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

fn schema(path: impl Into<String>, message: impl ToString) -> ModelError {
    ModelError::Schema { path: path.into(), message: message.to_string() }
}

fn unresolved(path: impl Into<String>, name: &str) -> ModelError {
    ModelError::UnresolvedReference { path: path.into(), name: name.to_string() }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum FieldJson {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        p: u64,
    },
}

/// A scalar: an integer literal or an expression over the parameters.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum Coef {
    Int(i64),
    Expr(String),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ArrowJson {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// `coef * path`, the path listed in written order (last applied first).
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coef: Coef,
    pub path: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct RelationJson {
    pub src: String,
    pub tgt: String,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    #[serde(default)]
    pub free: Vec<i64>,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct QuotientJson {
    pub grading: String,
    pub images: Vec<ElementJson>,
}

/// A grading given by arrow degrees, by base changes and basis degrees
/// (`"x->y"` and `"x->y#i"` keys, identity and zero when absent), or as the
/// push-forward of another grading along a group map.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct GradingJson {
    pub name: String,
    pub group: GroupJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrow_degrees: Option<BTreeMap<String, ElementJson>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub base_change: BTreeMap<String, Vec<Vec<Coef>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub degrees: BTreeMap<String, ElementJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_of: Option<QuotientJson>,
}

/// A functor given by arrow images. Coefficients may use the source
/// parameters `q` and the target parameters `q'`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FunctorJson {
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub target_params: BTreeMap<String, String>,
    pub arrow_images: BTreeMap<String, Vec<TermJson>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub name: String,
    pub source: String,
    pub target: String,
    /// Images of the canonical generators of the source group.
    pub mu: Vec<ElementJson>,
    /// Functor name; the identity when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct WalkJson {
    pub name: String,
    pub grading: String,
    pub steps: Vec<(String, i8)>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    pub name: String,
    pub gradings: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub field: FieldJson,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<RelationJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gradings: Vec<GradingJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub functors: Vec<FunctorJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<MorphismJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub walks: Vec<WalkJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilyJson>,
}

/// Parses a model without resolving references.
pub fn parse_model_str(text: &str) -> Result<ModelFile, ModelError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_syntax() || inner.is_eof() {
            ModelError::Parse(inner.to_string())
        } else {
            let path = if path == "." { "$".to_string() } else { format!("$.{path}") };
            schema(path, inner)
        }
    })
}

/// Parses a model file and checks that it resolves with its default parameters.
pub fn parse_model(path: &std::path::Path) -> Result<ModelFile, ModelError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ModelError::Io { path: path.display().to_string(), message: e.to_string() })?;
    let file = parse_model_str(&text)?;
    resolve(&file, &BTreeMap::new())?;
    Ok(file)
}

pub fn emit_model(file: &ModelFile) -> String {
    serde_json::to_string_pretty(file).expect("model serializes")
}

/// A model with every reference resolved.
#[derive(Clone, Debug)]
pub struct Model {
    pub file: ModelFile,
    pub params: BTreeMap<String, Scalar>,
    pub category: Arc<PresentedCategory>,
    pub gradings: Vec<(String, Grading)>,
    pub functors: Vec<(String, Functor)>,
    pub morphisms: Vec<ModelMorphism>,
    pub walks: Vec<(String, usize, Walk)>,
    pub families: Vec<ModelFamily>,
}

#[derive(Clone, Debug)]
pub struct ModelMorphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub mu: GroupHom,
    pub witness: Functor,
}

#[derive(Clone, Debug)]
pub struct ModelFamily {
    pub name: String,
    pub gradings: Vec<usize>,
    pub morphisms: Vec<usize>,
}

impl Model {
    pub fn grading(&self, name: &str) -> Option<&Grading> {
        self.gradings.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    pub fn grading_index(&self, name: &str) -> Option<usize> {
        self.gradings.iter().position(|(n, _)| n == name)
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.category.quiver().vertex(name).ok()
    }
}

fn eval_coef(c: &Coef, env: &BTreeMap<String, Scalar>, f: &FieldSpec, path: &str) -> Result<Scalar, ModelError> {
    let v = match c {
        Coef::Int(i) => Scalar::from_integer((*i).into()),
        Coef::Expr(s) => expr::eval(s, env).map_err(|e| schema(path, e))?,
    };
    f.embed(&v).map_err(|e| schema(path, e))
}

fn field_of(file: &ModelFile) -> Result<FieldSpec, ModelError> {
    match &file.field {
        FieldJson::Named(s) if s == "Q" => Ok(FieldSpec::Rationals),
        FieldJson::Named(s) => Err(schema("$.field", format!("unknown field '{s}', expected \"Q\" or {{\"Fp\": p}}"))),
        FieldJson::Prime { p } => FieldSpec::prime(*p).map_err(|e| schema("$.field", e)),
    }
}

/// Parameter values: file defaults overridden by `overrides`.
pub fn parameters(
    file: &ModelFile,
    overrides: &BTreeMap<String, Scalar>,
) -> Result<BTreeMap<String, Scalar>, ModelError> {
    let mut out = BTreeMap::new();
    for (k, v) in &file.params {
        let val = expr::eval(v, &BTreeMap::new()).map_err(|e| schema(format!("$.params.{k}"), e))?;
        out.insert(k.clone(), val);
    }
    for (k, v) in overrides {
        if !out.contains_key(k) {
            return Err(unresolved("parameters", k));
        }
        out.insert(k.clone(), v.clone());
    }
    Ok(out)
}

fn build_path(q: &Quiver, ids: &[String], at: Option<usize>, path: &str) -> Result<Path, ModelError> {
    if ids.is_empty() {
        return at.map(Path::trivial).ok_or_else(|| schema(path, "empty path"));
    }
    let arrows = ids
        .iter()
        .enumerate()
        .map(|(i, id)| q.arrow(id).map_err(|_| unresolved(format!("{path}[{i}]"), id)))
        .collect::<Result<Vec<_>, _>>()?;
    Path::new(q, arrows).map_err(|e| schema(path, e))
}

fn category_with(file: &ModelFile, params: &BTreeMap<String, Scalar>) -> Result<PresentedCategory, ModelError> {
    let field = field_of(file)?;
    if file.vertices.is_empty() {
        return Err(schema("$.vertices", "no vertices"));
    }
    for (i, a) in file.arrows.iter().enumerate() {
        for (end, v) in [("src", &a.src), ("tgt", &a.tgt)] {
            if !file.vertices.contains(v) {
                return Err(unresolved(format!("$.arrows[{i}].{end}"), v));
            }
        }
    }
    let arrows: Vec<(&str, &str, &str)> =
        file.arrows.iter().map(|a| (a.id.as_str(), a.src.as_str(), a.tgt.as_str())).collect();
    let quiver = Quiver::new(&file.vertices.iter().map(String::as_str).collect::<Vec<_>>(), &arrows)
        .map_err(|e| schema("$", e))?;
    let mut relations = Vec::with_capacity(file.relations.len());
    for (i, r) in file.relations.iter().enumerate() {
        let at = format!("$.relations[{i}]");
        let src = quiver.vertex(&r.src).map_err(|_| unresolved(format!("{at}.src"), &r.src))?;
        let tgt = quiver.vertex(&r.tgt).map_err(|_| unresolved(format!("{at}.tgt"), &r.tgt))?;
        let mut terms = Vec::with_capacity(r.terms.len());
        for (k, t) in r.terms.iter().enumerate() {
            let tp = format!("{at}.terms[{k}]");
            let p = build_path(&quiver, &t.path, Some(src), &format!("{tp}.path"))?;
            if p.src() != src || p.tgt() != tgt {
                return Err(schema(format!("{tp}.path"), format!("path does not run from {} to {}", r.src, r.tgt)));
            }
            terms.push((eval_coef(&t.coef, params, &field, &format!("{tp}.coef"))?, p));
        }
        relations.push(LinComb::new(&field, src, tgt, terms).map_err(|e| schema(&at, e))?);
    }
    build_category(quiver, relations, file.bound, field).map_err(|e| schema("$", e))
}

/// Builds the category of `file` with the given parameter overrides.
pub fn build_model_category(
    file: &ModelFile,
    overrides: &BTreeMap<String, Scalar>,
) -> Result<Arc<PresentedCategory>, ModelError> {
    let params = parameters(file, overrides)?;
    Ok(Arc::new(category_with(file, &params)?))
}

fn group_of(g: &GroupJson, path: &str) -> Result<AbelianGroup, ModelError> {
    AbelianGroup::new(g.rank, g.torsion.clone()).map_err(|e| schema(path, e))
}

fn element_of(g: &AbelianGroup, e: &ElementJson, path: &str) -> Result<GroupElement, ModelError> {
    let free = e.free.iter().map(|&x| BigInt::from(x)).collect();
    let torsion = e.torsion.iter().map(|&x| BigInt::from(x)).collect();
    g.element(free, torsion).map_err(|err| schema(path, err))
}

/// Splits `"x->y"` into object indices.
fn hom_key(cat: &PresentedCategory, key: &str, path: &str) -> Result<(usize, usize), ModelError> {
    let (a, b) = key.split_once("->").ok_or_else(|| schema(path, format!("expected \"x->y\", got \"{key}\"")))?;
    let q = cat.quiver();
    let x = q.vertex(a).map_err(|_| unresolved(path, a))?;
    let y = q.vertex(b).map_err(|_| unresolved(path, b))?;
    Ok((x, y))
}

/// Parses a basis label `"x->y#i"` against a grading's category.
pub fn basis_ref(cat: &PresentedCategory, label: &str, path: &str) -> Result<BasisRef, ModelError> {
    let (pair, index) =
        label.rsplit_once('#').ok_or_else(|| schema(path, format!("expected \"x->y#i\", got \"{label}\"")))?;
    let (x, y) = hom_key(cat, pair, path)?;
    let i: usize = index.parse().map_err(|_| schema(path, format!("bad index in \"{label}\"")))?;
    if i >= cat.dim(x, y) {
        return Err(unresolved(path, label));
    }
    Ok(BasisRef::new(x, y, i))
}

fn resolve_grading(
    cat: &Arc<PresentedCategory>,
    g: &GradingJson,
    params: &BTreeMap<String, Scalar>,
    done: &[(String, Grading)],
    at: &str,
) -> Result<Grading, ModelError> {
    let group = group_of(&g.group, &format!("{at}.group"))?;
    let forms =
        [g.arrow_degrees.is_some(), !g.base_change.is_empty() || !g.degrees.is_empty(), g.quotient_of.is_some()];
    if forms.iter().filter(|b| **b).count() > 1 {
        return Err(schema(at, "give one of arrow_degrees, base_change/degrees or quotient_of"));
    }
    if let Some(qj) = &g.quotient_of {
        let Some((_, base)) = done.iter().find(|(n, _)| n == &qj.grading) else {
            return Err(unresolved(format!("{at}.quotient_of.grading"), &qj.grading));
        };
        let images = qj
            .images
            .iter()
            .enumerate()
            .map(|(i, e)| element_of(&group, e, &format!("{at}.quotient_of.images[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let pi =
            GroupHom::new(base.group().clone(), group, images).map_err(|e| schema(format!("{at}.quotient_of"), e))?;
        return quotient_grading(base, &pi).map_err(|e| schema(format!("{at}.quotient_of"), e));
    }
    if let Some(ad) = &g.arrow_degrees {
        let q = cat.quiver();
        for k in ad.keys() {
            if q.arrow(k).is_err() {
                return Err(unresolved(format!("{at}.arrow_degrees"), k));
            }
        }
        let degrees = q
            .arrows()
            .iter()
            .map(|a| {
                let e = ad
                    .get(&a.id)
                    .ok_or_else(|| schema(format!("{at}.arrow_degrees"), format!("missing arrow {}", a.id)))?;
                element_of(&group, e, &format!("{at}.arrow_degrees.{}", a.id))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Grading::from_arrow_degrees(cat.clone(), group, &degrees).map_err(|e| schema(at, e));
    }
    let f = cat.field();
    let n = cat.num_objects();
    let mut bases: Vec<Matrix> = cat.hom_pairs().map(|(x, y)| Matrix::identity(cat.dim(x, y))).collect();
    let mut degrees: Vec<Vec<GroupElement>> = cat.hom_pairs().map(|(x, y)| vec![group.zero(); cat.dim(x, y)]).collect();
    for (key, rows) in &g.base_change {
        let p = format!("{at}.base_change.{key}");
        let (x, y) = hom_key(cat, key, &p)?;
        let d = cat.dim(x, y);
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(schema(&p, format!("expected a {d}x{d} matrix")));
        }
        let rows = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, c)| eval_coef(c, params, f, &format!("{p}[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        bases[x * n + y] = Matrix::from_rows(rows, d);
    }
    for (label, e) in &g.degrees {
        let p = format!("{at}.degrees.{label}");
        let r = basis_ref(cat, label, &p)?;
        degrees[r.src * n + r.tgt][r.index] = element_of(&group, e, &p)?;
    }
    Grading::new(cat.clone(), group, bases, degrees).map_err(|e| schema(at, e))
}

fn resolve_functor(
    file: &ModelFile,
    cat: &Arc<PresentedCategory>,
    params: &BTreeMap<String, Scalar>,
    fj: &FunctorJson,
    at: &str,
) -> Result<Functor, ModelError> {
    let mut target_params = params.clone();
    for (k, v) in &fj.target_params {
        if !params.contains_key(k) {
            return Err(unresolved(format!("{at}.target_params"), k));
        }
        let val = expr::eval(v, params).map_err(|e| schema(format!("{at}.target_params.{k}"), e))?;
        target_params.insert(k.clone(), val);
    }
    let target = if fj.target_params.is_empty() { cat.clone() } else { Arc::new(category_with(file, &target_params)?) };
    let mut env = params.clone();
    for (k, v) in &target_params {
        env.insert(format!("{k}'"), v.clone());
    }
    let q = cat.quiver();
    for k in fj.arrow_images.keys() {
        if q.arrow(k).is_err() {
            return Err(unresolved(format!("{at}.arrow_images"), k));
        }
    }
    let f = cat.field();
    let mut images = Vec::with_capacity(q.arrows().len());
    for a in q.arrows() {
        let p = format!("{at}.arrow_images.{}", a.id);
        let terms = fj.arrow_images.get(&a.id).ok_or_else(|| schema(&p, "missing arrow image"))?;
        let mut m = Morphism { src: a.src, tgt: a.tgt, coords: vec![Scalar::zero(); target.dim(a.src, a.tgt)] };
        for (k, t) in terms.iter().enumerate() {
            let tp = format!("{p}[{k}]");
            let path = build_path(target.quiver(), &t.path, Some(a.src), &format!("{tp}.path"))?;
            if path.src() != a.src || path.tgt() != a.tgt {
                return Err(schema(format!("{tp}.path"), "path is not parallel to the arrow"));
            }
            let c = eval_coef(&t.coef, &env, f, &format!("{tp}.coef"))?;
            for (x, v) in m.coords.iter_mut().zip(target.path_morphism(&path).coords) {
                *x = f.add(x, &f.mul(&c, &v));
            }
        }
        images.push(m);
    }
    Functor::from_arrow_images(cat.clone(), target, &images).map_err(|e| schema(at, e))
}

/// Resolves every reference of `file` with parameter overrides.
pub fn resolve(file: &ModelFile, overrides: &BTreeMap<String, Scalar>) -> Result<Model, ModelError> {
    let params = parameters(file, overrides)?;
    let category = Arc::new(category_with(file, &params)?);
    let mut gradings: Vec<(String, Grading)> = Vec::new();
    for (i, g) in file.gradings.iter().enumerate() {
        let at = format!("$.gradings[{i}]");
        if g.name == "trivial" || gradings.iter().any(|(n, _)| n == &g.name) {
            return Err(schema(format!("{at}.name"), format!("duplicate grading name '{}'", g.name)));
        }
        let x = resolve_grading(&category, g, &params, &gradings, &at)?;
        gradings.push((g.name.clone(), x));
    }
    gradings.push(("trivial".into(), Grading::trivial(category.clone())));

    let mut functors: Vec<(String, Functor)> = Vec::new();
    for (i, fj) in file.functors.iter().enumerate() {
        let at = format!("$.functors[{i}]");
        if fj.name == "identity" || functors.iter().any(|(n, _)| n == &fj.name) {
            return Err(schema(format!("{at}.name"), format!("duplicate functor name '{}'", fj.name)));
        }
        functors.push((fj.name.clone(), resolve_functor(file, &category, &params, fj, &at)?));
    }

    let find = |name: &str, path: String| -> Result<usize, ModelError> {
        gradings.iter().position(|(n, _)| n == name).ok_or_else(|| unresolved(path, name))
    };
    let mut morphisms = Vec::new();
    for (i, m) in file.morphisms.iter().enumerate() {
        let at = format!("$.morphisms[{i}]");
        let source = find(&m.source, format!("{at}.source"))?;
        let target = find(&m.target, format!("{at}.target"))?;
        let (gs, gt) = (gradings[source].1.group(), gradings[target].1.group());
        if m.mu.len() != gs.num_generators() {
            return Err(schema(format!("{at}.mu"), format!("expected {} generator images", gs.num_generators())));
        }
        let images =
            m.mu.iter()
                .enumerate()
                .map(|(k, e)| element_of(gt, e, &format!("{at}.mu[{k}]")))
                .collect::<Result<Vec<_>, _>>()?;
        let mu = GroupHom::new(gs.clone(), gt.clone(), images).map_err(|e| schema(format!("{at}.mu"), e))?;
        let witness = match &m.witness {
            None => Functor::identity(category.clone()),
            Some(w) => functors
                .iter()
                .find(|(n, _)| n == w)
                .map(|(_, f)| f.clone())
                .ok_or_else(|| unresolved(format!("{at}.witness"), w))?,
        };
        morphisms.push(ModelMorphism { name: m.name.clone(), source, target, mu, witness });
    }

    let mut walks = Vec::new();
    for (i, w) in file.walks.iter().enumerate() {
        let at = format!("$.walks[{i}]");
        let g = find(&w.grading, format!("{at}.grading"))?;
        let steps = w
            .steps
            .iter()
            .enumerate()
            .map(|(k, (label, s))| {
                if *s != 1 && *s != -1 {
                    return Err(schema(format!("{at}.steps[{k}]"), "direction must be 1 or -1"));
                }
                Ok((basis_ref(&category, label, &format!("{at}.steps[{k}]"))?, *s))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if steps.is_empty() {
            return Err(schema(format!("{at}.steps"), "empty walk"));
        }
        let walk = Walk::new(steps).map_err(|e| schema(format!("{at}.steps"), e))?;
        walks.push((w.name.clone(), g, walk));
    }

    let mut families = Vec::new();
    for (i, fam) in file.families.iter().enumerate() {
        let at = format!("$.families[{i}]");
        let members = fam
            .gradings
            .iter()
            .enumerate()
            .map(|(k, n)| find(n, format!("{at}.gradings[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let morphs = fam
            .morphisms
            .iter()
            .enumerate()
            .map(|(k, n)| {
                let p = format!("{at}.morphisms[{k}]");
                let idx =
                    morphisms.iter().position(|m: &ModelMorphism| &m.name == n).ok_or_else(|| unresolved(&p, n))?;
                let m = &morphisms[idx];
                if !members.contains(&m.source) || !members.contains(&m.target) {
                    return Err(schema(p, format!("morphism '{n}' leaves the family")));
                }
                Ok(idx)
            })
            .collect::<Result<Vec<_>, _>>()?;
        families.push(ModelFamily { name: fam.name.clone(), gradings: members, morphisms: morphs });
    }

    Ok(Model { file: file.clone(), params, category, gradings, functors, morphisms, walks, families })
}

pub fn element_json(e: &GroupElement) -> ElementJson {
    let small = |v: &[BigInt]| v.iter().map(|x| i64::try_from(x).expect("degree fits in i64")).collect();
    ElementJson { free: small(&e.free), torsion: small(&e.torsion) }
}

pub fn group_json(g: &AbelianGroup) -> GroupJson {
    GroupJson {
        rank: g.rank(),
        torsion: g.torsion().iter().map(|d| u64::try_from(d).expect("invariant fits in u64")).collect(),
    }
}

/// A grading as model JSON: arrow degrees when the path basis is homogeneous
/// and degrees are additive along paths, otherwise base changes and degrees.
pub fn grading_json(name: &str, x: &Grading) -> GradingJson {
    let cat = x.category();
    let g = x.group();
    let label = |a: usize, b: usize| format!("{}->{}", cat.object_name(a), cat.object_name(b));
    let mut base_change = BTreeMap::new();
    let mut degrees = BTreeMap::new();
    for (a, b) in cat.hom_pairs() {
        let m = x.base_change(a, b);
        if !m.is_identity() {
            let rows = (0..m.rows()).map(|i| m.row(i).iter().map(scalar_coef).collect()).collect();
            base_change.insert(label(a, b), rows);
        }
        for (i, d) in x.degrees(a, b).iter().enumerate() {
            if !d.is_zero() {
                degrees.insert(x.label(&BasisRef::new(a, b, i)), element_json(d));
            }
        }
    }
    if base_change.is_empty() {
        let q = cat.quiver();
        let arrow_deg: Option<Vec<GroupElement>> = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(k, ar)| {
                let h = cat.hom(ar.src, ar.tgt);
                (0..h.dim()).find(|&i| h.basis_path(i).arrows() == [k]).map(|i| x.degrees(ar.src, ar.tgt)[i].clone())
            })
            .collect();
        if let Some(ad) = arrow_deg {
            if let Ok(y) = Grading::from_arrow_degrees(cat.clone(), g.clone(), &ad) {
                if cat.hom_pairs().all(|(a, b)| y.degrees(a, b) == x.degrees(a, b)) {
                    return GradingJson {
                        name: name.into(),
                        group: group_json(g),
                        arrow_degrees: Some(
                            q.arrows().iter().map(|a| a.id.clone()).zip(ad.iter().map(element_json)).collect(),
                        ),
                        base_change: BTreeMap::new(),
                        degrees: BTreeMap::new(),
                        quotient_of: None,
                    };
                }
            }
        }
    }
    GradingJson {
        name: name.into(),
        group: group_json(g),
        arrow_degrees: None,
        base_change,
        degrees,
        quotient_of: None,
    }
}

fn scalar_coef(c: &Scalar) -> Coef {
    match i64::try_from(c.numer()) {
        Ok(i) if c.is_integer() => Coef::Int(i),
        _ => Coef::Expr(format_scalar(c)),
    }
}
