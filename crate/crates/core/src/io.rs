//! Canonical JSON interchange.
//!
//! Field elements are written as strings (`"2"`, `"1,0,2"` for extension
//! coefficients low degree first, `"3/4"` for rationals). Loading also
//! accepts bare integers and reduces residues, so `"4"` over `F_3` becomes
//! `"1"`. Saving a loaded document reproduces canonical input byte for byte.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{Group, InvAlgebra};
use crate::darrow::{DoubleArrow, QObject};
use crate::decide::{DecisionReport, SpringerReport, WittReport};
use crate::endoring::{EndoRing, HermClassSet};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldDescriptor};
use crate::form::{Adjoints, GBilinearForm, Gram, SesqForm, SesqSystem};
use crate::linalg::Matrix;
use crate::module::RightModule;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Str(String),
    Int(i64),
}

type VecJson = Vec<Scalar>;
type MatJson = Vec<Vec<Scalar>>;
type GramJson = Vec<Vec<Vec<Scalar>>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub unit: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub field: FieldDescriptor,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: VecJson,
    pub structure: Vec<Vec<VecJson>>,
    /// Column `i` holds the coordinates of `σ(a_i)`.
    pub involution: MatJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub algebra: AlgebraJson,
    pub dim: usize,
    pub action: Vec<MatJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    pub module: ModuleJson,
    pub gram: GramJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BilinearJson {
    pub module: ModuleJson,
    pub gram_k: MatJson,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemJson {
    pub module: ModuleJson,
    pub grams: Vec<GramJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectJson {
    #[serde(rename = "V")]
    pub v: ModuleJson,
    #[serde(rename = "W")]
    pub w: ModuleJson,
    pub arrows: Vec<[MatJson; 2]>,
}

/// Any object the interchange format can hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Field(Field),
    Group(Group),
    Algebra(InvAlgebra),
    Module(RightModule),
    Form(SesqForm),
    Bilinear(GBilinearForm),
    System(SesqSystem),
    Object(DoubleArrow),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Field(_) => "field",
            Document::Group(_) => "group",
            Document::Algebra(_) => "algebra",
            Document::Module(_) => "module",
            Document::Form(_) => "form",
            Document::Bilinear(_) => "bilinear",
            Document::System(_) => "system",
            Document::Object(_) => "object",
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(parse_err)
}

/// Parses and validates a document, detecting its kind from its keys.
pub fn parse_document(text: &str) -> Result<Document> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("top level must be a JSON object".into()))?;
    let has = |key: &str| obj.contains_key(key);
    if has("gram") {
        form_from_json(&from_value(v)?).map(Document::Form)
    } else if has("gram_k") {
        bilinear_from_json(&from_value(v)?).map(Document::Bilinear)
    } else if has("grams") {
        system_from_json(&from_value(v)?).map(Document::System)
    } else if has("arrows") {
        object_from_json(&from_value(v)?).map(Document::Object)
    } else if has("action") {
        module_from_json(&from_value(v)?).map(Document::Module)
    } else if has("structure") {
        algebra_from_json(&from_value(v)?).map(Document::Algebra)
    } else if has("table") {
        group_from_json(&from_value(v)?).map(Document::Group)
    } else if has("kind") {
        Field::from_descriptor(&from_value(v)?).map(Document::Field)
    } else {
        Err(Error::Parse("unrecognised document".into()))
    }
}

/// Canonical pretty-printed JSON with a trailing newline.
pub fn to_canonical(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

pub fn document_to_string(doc: &Document) -> String {
    match doc {
        Document::Field(k) => to_canonical(&k.descriptor()),
        Document::Group(g) => to_canonical(&group_to_json(g)),
        Document::Algebra(a) => to_canonical(&algebra_to_json(a)),
        Document::Module(m) => to_canonical(&module_to_json(m)),
        Document::Form(s) => to_canonical(&form_to_json(s)),
        Document::Bilinear(b) => to_canonical(&bilinear_to_json(b)),
        Document::System(s) => to_canonical(&system_to_json(s)),
        Document::Object(o) => to_canonical(&object_to_json(o)),
    }
}

pub fn load(path: &std::path::Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

pub fn save(doc: &Document, path: &std::path::Path) -> Result<()> {
    std::fs::write(path, document_to_string(doc)).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn scalar(k: &Field, s: &Scalar) -> Result<Elem> {
    match s {
        Scalar::Str(t) => k.parse_elem(t),
        Scalar::Int(i) => Ok(k.from_i64(*i)),
    }
}

fn vec_in(k: &Field, v: &[Scalar]) -> Result<Vec<Elem>> {
    v.iter().map(|s| scalar(k, s)).collect()
}

fn mat_in(k: &Field, m: &MatJson, rows: usize, cols: usize) -> Result<Matrix> {
    if m.len() != rows || m.iter().any(|r| r.len() != cols) {
        return Err(Error::BadDimension(format!("expected a {rows}x{cols} matrix")));
    }
    let data = m.iter().map(|r| vec_in(k, r)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows, cols, data))
}

fn gram_in(k: &Field, g: &GramJson) -> Result<Gram> {
    g.iter()
        .map(|row| row.iter().map(|a| vec_in(k, a)).collect())
        .collect()
}

fn vec_out(k: &Field, v: &[Elem]) -> VecJson {
    v.iter().map(|x| Scalar::Str(k.format_elem(x))).collect()
}

fn mat_out(k: &Field, m: &Matrix) -> MatJson {
    (0..m.rows()).map(|i| vec_out(k, m.row(i))).collect()
}

fn gram_out(k: &Field, g: &Gram) -> GramJson {
    g.iter().map(|row| row.iter().map(|a| vec_out(k, a)).collect()).collect()
}

pub fn group_from_json(g: &GroupJson) -> Result<Group> {
    Group::new(g.elements.clone(), g.table.clone(), g.unit)
}

pub fn group_to_json(g: &Group) -> GroupJson {
    GroupJson {
        elements: g.elements().to_vec(),
        table: g.table().to_vec(),
        unit: g.unit(),
    }
}

pub fn algebra_from_json(a: &AlgebraJson) -> Result<InvAlgebra> {
    let k = Field::from_descriptor(&a.field)?;
    let d = a.dim;
    if a.basis.len() != d || a.unit.len() != d {
        return Err(Error::BadDimension(format!("algebra of dimension {d} needs {d} basis names and unit coordinates")));
    }
    if a.structure.len() != d || a.structure.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
        return Err(Error::BadDimension(format!("structure must be {d}x{d}x{d}")));
    }
    let structure = a
        .structure
        .iter()
        .map(|row| row.iter().map(|c| vec_in(&k, c)).collect())
        .collect::<Result<Vec<_>>>()?;
    let alg = InvAlgebra::new(
        k.clone(),
        a.basis.clone(),
        structure,
        vec_in(&k, &a.unit)?,
        mat_in(&k, &a.involution, d, d)?,
    )?;
    match &a.group {
        Some(g) => alg.with_group(group_from_json(g)?),
        None => Ok(alg),
    }
}

pub fn algebra_to_json(a: &InvAlgebra) -> AlgebraJson {
    let k = a.field();
    AlgebraJson {
        field: k.descriptor(),
        dim: a.dim(),
        basis: a.basis_names().to_vec(),
        unit: vec_out(k, a.unit()),
        structure: a
            .structure()
            .iter()
            .map(|row| row.iter().map(|c| vec_out(k, c)).collect())
            .collect(),
        involution: mat_out(k, a.involution()),
        group: a.group().map(group_to_json),
    }
}

pub fn module_from_json(m: &ModuleJson) -> Result<RightModule> {
    let alg = Arc::new(algebra_from_json(&m.algebra)?);
    let k = alg.field().clone();
    if m.action.len() != alg.dim() {
        return Err(Error::NotAModule(format!("expected {} action matrices", alg.dim())));
    }
    let action = m
        .action
        .iter()
        .map(|a| mat_in(&k, a, m.dim, m.dim))
        .collect::<Result<Vec<_>>>()?;
    RightModule::new(alg, m.dim, action)
}

pub fn module_to_json(m: &RightModule) -> ModuleJson {
    let k = m.field();
    ModuleJson {
        algebra: algebra_to_json(m.algebra()),
        dim: m.dim(),
        action: m.action().iter().map(|a| mat_out(k, a)).collect(),
    }
}

pub fn form_from_json(f: &FormJson) -> Result<SesqForm> {
    let m = module_from_json(&f.module)?;
    let gram = gram_in(m.field(), &f.gram)?;
    SesqForm::new(m, gram)
}

pub fn form_to_json(s: &SesqForm) -> FormJson {
    FormJson {
        module: module_to_json(s.module()),
        gram: gram_out(s.field(), s.gram()),
    }
}

pub fn bilinear_from_json(b: &BilinearJson) -> Result<GBilinearForm> {
    let m = module_from_json(&b.module)?;
    let n = m.dim();
    let g = mat_in(m.field(), &b.gram_k, n, n)?;
    GBilinearForm::new(m, g)
}

pub fn bilinear_to_json(b: &GBilinearForm) -> BilinearJson {
    BilinearJson {
        module: module_to_json(b.module()),
        gram_k: mat_out(b.module().field(), b.gram_k()),
    }
}

pub fn system_from_json(s: &SystemJson) -> Result<SesqSystem> {
    let m = module_from_json(&s.module)?;
    let grams = s
        .grams
        .iter()
        .map(|g| gram_in(m.field(), g))
        .collect::<Result<Vec<_>>>()?;
    SesqSystem::new(m, grams)
}

pub fn system_to_json(s: &SesqSystem) -> SystemJson {
    let k = s.module().field();
    SystemJson {
        module: module_to_json(s.module()),
        grams: s.forms().iter().map(|f| gram_out(k, f.gram())).collect(),
    }
}

pub fn object_from_json(o: &ObjectJson) -> Result<DoubleArrow> {
    let v = module_from_json(&o.v)?;
    let w = module_from_json(&o.w)?;
    let k = v.field().clone();
    let arrows = o
        .arrows
        .iter()
        .map(|[f, g]| Ok((mat_in(&k, f, w.dim(), v.dim())?, mat_in(&k, g, w.dim(), v.dim())?)))
        .collect::<Result<Vec<_>>>()?;
    DoubleArrow::new(v, w, arrows)
}

pub fn object_to_json(o: &DoubleArrow) -> ObjectJson {
    let k = o.field();
    ObjectJson {
        v: module_to_json(o.v()),
        w: module_to_json(o.w()),
        arrows: o
            .arrows()
            .iter()
            .map(|(f, g)| [mat_out(k, f), mat_out(k, g)])
            .collect(),
    }
}

fn mat_value(k: &Field, m: &Matrix) -> Value {
    serde_json::to_value(mat_out(k, m)).expect("serialisable")
}

fn elem_value(k: &Field, v: &[Elem]) -> Value {
    serde_json::to_value(vec_out(k, v)).expect("serialisable")
}

/// Reports leave out wall-clock time so that reruns serialise identically.
pub fn decision_json(k: &Field, r: &DecisionReport) -> Value {
    json!({
        "verdict": r.verdict.name(),
        "status": r.verdict.status(),
        "method": r.method.name(),
        "search_size": r.search_size,
        "witness": r.verdict.witness().map(|w| mat_value(k, w)),
    })
}

pub fn adjoints_json(k: &Field, a: &Adjoints) -> Value {
    json!({
        "dual_dim": a.dual.dim(),
        "left": mat_value(k, &a.left),
        "right": mat_value(k, &a.right),
    })
}

pub fn qobject_json(q: &QObject) -> Value {
    let k = q.object.field();
    json!({
        "object": serde_json::to_value(object_to_json(&q.object)).expect("serialisable"),
        "eta": [mat_value(k, &q.eta.phi), mat_value(k, &q.eta.psi)],
    })
}

pub fn endoring_json(e: &EndoRing) -> Value {
    let k = e.object().field();
    json!({
        "dim": e.dim(),
        "basis": e.basis().iter().map(|b| json!([mat_value(k, &b.phi), mat_value(k, &b.psi)])).collect::<Vec<_>>(),
        "structure": e.structure().iter().map(|row| row.iter().map(|c| elem_value(k, c)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "unit": elem_value(k, e.unit()),
        "involution": e.involution().map(|m| mat_value(k, m)),
    })
}

pub fn classes_json(k: &Field, c: &HermClassSet) -> Value {
    json!({
        "count": c.len(),
        "units": c.units,
        "representatives": c.representatives.iter().map(|r| elem_value(k, r)).collect::<Vec<_>>(),
        "orbit_sizes": c.orbit_sizes,
    })
}

pub fn witt_json(r: &WittReport) -> Value {
    json!({
        "field": r.field,
        "seed": r.seed,
        "trials": r.trials,
        "planted": r.planted,
        "sums_isometric": r.sums_isometric,
        "bases_isometric": r.bases_isometric,
        "undecided": r.undecided,
        "violations": r.violations,
        "counterexamples": r.counterexamples.iter().map(|c| json!({
            "trial": c.trial,
            "s": serde_json::to_value(form_to_json(&c.s)).expect("serialisable"),
            "s1": serde_json::to_value(form_to_json(&c.s1)).expect("serialisable"),
            "s2": serde_json::to_value(form_to_json(&c.s2)).expect("serialisable"),
        })).collect::<Vec<_>>(),
    })
}

pub fn springer_json(r: &SpringerReport) -> Value {
    json!({
        "base_field": r.base_field,
        "extension_field": r.extension_field,
        "degree": r.degree,
        "odd_degree": r.degree % 2 == 1,
        "base": r.base.name(),
        "extension": r.extension.name(),
        "violation": r.violation,
    })
}

pub fn summands_json(classes: &[SesqForm]) -> Value {
    json!({
        "count": classes.len(),
        "classes": classes.iter().map(|c| json!({
            "dim": c.dim(),
            "gram": gram_out(c.field(), c.gram()),
        })).collect::<Vec<_>>(),
    })
}
