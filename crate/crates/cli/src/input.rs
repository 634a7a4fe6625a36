//! The JSON input document: raw serde form, resolution into library types, and the
//! canonical serialization used for round trips.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use berline::{
    format_scalar, parse_scalar, Arrow, ArrowId, ChainMap, Cochain, ComplexFiber, FiniteGroupoid,
    LineRep, Matrix, ObjectId, Rational, RepUpToWeakHomotopy, Trivialization, VectorRep,
};
use serde::{Deserialize, Serialize};

use crate::report::{raw_graded, raw_matrix};

/// Rows of rational strings.
pub type RawMatrix = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawDocument {
    pub groupoid: RawGroupoid,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<BTreeMap<String, RawFiber>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<BTreeMap<String, RawAction>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cochain: Option<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGroupoid {
    pub objects: Vec<String>,
    pub arrows: Vec<RawArrow>,
    pub identities: BTreeMap<String, String>,
    pub inverses: BTreeMap<String, String>,
    /// Triples `[g, h, g·h]` for every composable pair (`source(g) = target(h)`).
    pub compose: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawArrow {
    pub id: String,
    pub source: String,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFiber {
    /// Lowest degree; the fiber occupies `lo .. lo + dims.len()`.
    #[serde(default)]
    pub lo: i32,
    pub dims: Vec<usize>,
    /// `∂^i : C^i -> C^{i+1}` keyed by `i`; missing degrees are zero.
    #[serde(default)]
    pub differentials: BTreeMap<String, RawMatrix>,
}

/// Per-arrow action: a scalar (line representation), a matrix (vector representation),
/// or matrices keyed by degree (representation on complexes).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawAction {
    Scalar(String),
    Matrix(RawMatrix),
    Graded(BTreeMap<String, RawMatrix>),
}

/// A parsing or resolution failure. Each message names the JSON field path and the
/// offending identifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub messages: Vec<String>,
}

impl SchemaError {
    fn one(message: impl Into<String>) -> Self {
        SchemaError {
            messages: vec![message.into()],
        }
    }
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.messages.join("\n"))
    }
}

impl std::error::Error for SchemaError {}

/// The representation section, resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Representation {
    Line(LineRep<Rational>),
    Vector(VectorRep<Rational>),
    Homotopy(RepUpToWeakHomotopy<Rational>),
}

impl Representation {
    pub fn kind(&self) -> &'static str {
        match self {
            Representation::Line(_) => "line",
            Representation::Vector(_) => "vector",
            Representation::Homotopy(_) => "homotopy",
        }
    }
}

/// A fully resolved input document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputDocument {
    pub groupoid: FiniteGroupoid,
    pub complex: Option<Vec<Arc<ComplexFiber<Rational>>>>,
    pub rep: Option<Representation>,
    pub sigma: Option<Trivialization<Rational>>,
    pub cochain: Option<Cochain<Rational>>,
}

/// Reads and resolves a document from disk.
pub fn parse(path: &Path) -> Result<InputDocument, SchemaError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SchemaError::one(format!("cannot read {}: {e}", path.display())))?;
    parse_str(&text)
}

pub fn parse_str(text: &str) -> Result<InputDocument, SchemaError> {
    let raw: RawDocument = serde_json::from_str(text)
        .map_err(|e| SchemaError::one(format!("line {} column {}: {e}", e.line(), e.column())))?;
    resolve(&raw)
}

fn scalar(path: &str, text: &str) -> Result<Rational, String> {
    parse_scalar(text).map_err(|e| format!("{path}: {e}"))
}

fn nonzero(path: &str, text: &str) -> Result<Rational, String> {
    let v = scalar(path, text)?;
    if v == Rational::from_integer(0.into()) {
        return Err(format!("{path}: value must be nonzero"));
    }
    Ok(v)
}

fn matrix(
    path: &str,
    raw: &RawMatrix,
    rows: usize,
    cols: usize,
) -> Result<Matrix<Rational>, String> {
    if raw.len() != rows {
        return Err(format!("{path}: expected {rows} rows, found {}", raw.len()));
    }
    let mut data = Vec::with_capacity(rows * cols);
    for (r, row) in raw.iter().enumerate() {
        if row.len() != cols {
            return Err(format!(
                "{path}: row {} has {} entries, expected {cols}",
                r + 1,
                row.len()
            ));
        }
        for entry in row {
            data.push(scalar(path, entry)?);
        }
    }
    Ok(Matrix::from_vec(rows, cols, data).expect("length checked"))
}

fn degree_key(path: &str, key: &str) -> Result<i32, String> {
    key.parse::<i32>()
        .map_err(|_| format!("{path}: degree key {key:?} is not an integer"))
}

struct Names<'a> {
    objects: BTreeMap<&'a str, ObjectId>,
    arrows: BTreeMap<&'a str, ArrowId>,
}

impl Names<'_> {
    fn object(&self, path: &str, name: &str) -> Result<ObjectId, String> {
        self.objects
            .get(name)
            .copied()
            .ok_or_else(|| format!("{path}: unknown object {name:?}"))
    }

    fn arrow(&self, path: &str, name: &str) -> Result<ArrowId, String> {
        self.arrows
            .get(name)
            .copied()
            .ok_or_else(|| format!("{path}: unknown arrow {name:?}"))
    }
}

fn resolve_groupoid(raw: &RawGroupoid) -> Result<FiniteGroupoid, SchemaError> {
    let mut errors = Vec::new();
    let mut objects = BTreeMap::new();
    for (k, name) in raw.objects.iter().enumerate() {
        if objects.insert(name.as_str(), ObjectId(k)).is_some() {
            errors.push(format!("groupoid.objects: duplicate object {name:?}"));
        }
    }
    let mut arrows_by_name = BTreeMap::new();
    for (k, a) in raw.arrows.iter().enumerate() {
        if arrows_by_name.insert(a.id.as_str(), ArrowId(k)).is_some() {
            errors.push(format!("groupoid.arrows: duplicate arrow {:?}", a.id));
        }
    }
    let names = Names {
        objects,
        arrows: arrows_by_name,
    };
    let mut arrows = Vec::new();
    for a in &raw.arrows {
        let path = format!("groupoid.arrows.{}", a.id);
        match (
            names.object(&format!("{path}.source"), &a.source),
            names.object(&format!("{path}.target"), &a.target),
        ) {
            (Ok(s), Ok(t)) => arrows.push(Arrow {
                name: a.id.clone(),
                source: s,
                target: t,
            }),
            (s, t) => errors.extend(s.err().into_iter().chain(t.err())),
        }
    }
    let mut identity = Vec::new();
    for x in &raw.objects {
        match raw.identities.get(x) {
            None => errors.push(format!("groupoid.identities: object {x:?} has no identity")),
            Some(e) => match names.arrow(&format!("groupoid.identities.{x}"), e) {
                Ok(e) => identity.push(e),
                Err(m) => errors.push(m),
            },
        }
    }
    for x in raw.identities.keys() {
        if !names.objects.contains_key(x.as_str()) {
            errors.push(format!("groupoid.identities: unknown object {x:?}"));
        }
    }
    let mut inverse = Vec::new();
    for a in &raw.arrows {
        match raw.inverses.get(&a.id) {
            None => errors.push(format!(
                "groupoid.inverses: arrow {:?} has no inverse",
                a.id
            )),
            Some(i) => match names.arrow(&format!("groupoid.inverses.{}", a.id), i) {
                Ok(i) => inverse.push(i),
                Err(m) => errors.push(m),
            },
        }
    }
    for a in raw.inverses.keys() {
        if !names.arrows.contains_key(a.as_str()) {
            errors.push(format!("groupoid.inverses: unknown arrow {a:?}"));
        }
    }
    let mut compose = Vec::new();
    for triple in &raw.compose {
        let path = format!(
            "groupoid.compose [{}, {}, {}]",
            triple[0], triple[1], triple[2]
        );
        let ids: Result<Vec<ArrowId>, String> =
            triple.iter().map(|n| names.arrow(&path, n)).collect();
        match ids {
            Ok(ids) => compose.push((ids[0], ids[1], ids[2])),
            Err(m) => errors.push(m),
        }
    }
    if !errors.is_empty() {
        return Err(SchemaError { messages: errors });
    }
    FiniteGroupoid::from_tables(raw.objects.clone(), arrows, identity, inverse, compose)
        .map_err(|e| SchemaError::one(format!("groupoid: {e}")))
}

fn resolve_fiber(object: &str, raw: &RawFiber) -> Result<ComplexFiber<Rational>, String> {
    let path = format!("complex.{object}");
    let dim = |i: i32| {
        let k = i - raw.lo;
        if k < 0 || k as usize >= raw.dims.len() {
            0
        } else {
            raw.dims[k as usize]
        }
    };
    let mut given = BTreeMap::new();
    for (key, m) in &raw.differentials {
        let i = degree_key(&format!("{path}.differentials"), key)?;
        let dpath = format!("{path}.differentials.{key} (object {object:?}, degree {i})");
        given.insert(i, matrix(&dpath, m, dim(i + 1), dim(i))?);
    }
    // Out-of-range keys can only carry empty matrices, which were shape-checked above.
    let hi = raw.lo + raw.dims.len() as i32 - 1;
    let differentials = (raw.lo..hi)
        .map(|i| {
            given
                .remove(&i)
                .unwrap_or_else(|| Matrix::zeros(dim(i + 1), dim(i)))
        })
        .collect();
    let dims = if raw.dims.is_empty() {
        vec![0]
    } else {
        raw.dims.clone()
    };
    ComplexFiber::new(raw.lo, dims, differentials).map_err(|e| format!("{path}: {e}"))
}

fn resolve_rep(
    g: &FiniteGroupoid,
    names: &Names,
    complex: Option<&Vec<Arc<ComplexFiber<Rational>>>>,
    raw: &BTreeMap<String, RawAction>,
) -> Result<Representation, SchemaError> {
    let mut errors = Vec::new();
    for name in raw.keys() {
        if let Err(m) = names.arrow("rep", name) {
            errors.push(m);
        }
    }
    for a in g.arrows() {
        if !raw.contains_key(g.arrow_name(a)) {
            errors.push(format!("rep: arrow {:?} has no action", g.arrow_name(a)));
        }
    }
    if !errors.is_empty() {
        return Err(SchemaError { messages: errors });
    }
    let action = |a: ArrowId| &raw[g.arrow_name(a)];
    let path = |a: ArrowId| format!("rep.{}", g.arrow_name(a));

    if let Some(fibers) = complex {
        let mut maps = Vec::new();
        for a in g.arrows() {
            let (s, t) = (g.source(a), g.target(a));
            let (src, tgt) = (&fibers[s.0], &fibers[t.0]);
            let RawAction::Graded(by_degree) = action(a) else {
                errors.push(format!(
                    "{}: expected matrices keyed by degree since a complex section is present",
                    path(a)
                ));
                continue;
            };
            let mut components = BTreeMap::new();
            for (key, m) in by_degree {
                let built = degree_key(&path(a), key).and_then(|i| {
                    let p = format!(
                        "{}.{key} (arrow {:?}, degree {i})",
                        path(a),
                        g.arrow_name(a)
                    );
                    matrix(&p, m, tgt.dim(i), src.dim(i)).map(|m| (i, m))
                });
                match built {
                    Ok((i, m)) => {
                        components.insert(i, m);
                    }
                    Err(m) => errors.push(m),
                }
            }
            match ChainMap::new(src.clone(), tgt.clone(), components) {
                Ok(m) => maps.push(m),
                Err(e) => errors.push(format!("{}: {e}", path(a))),
            }
        }
        if !errors.is_empty() {
            return Err(SchemaError { messages: errors });
        }
        return RepUpToWeakHomotopy::new(g.clone(), fibers.clone(), maps)
            .map(Representation::Homotopy)
            .map_err(|e| SchemaError::one(format!("rep: {e}")));
    }

    let all_scalars = g
        .arrows()
        .all(|a| matches!(action(a), RawAction::Scalar(_)));
    if all_scalars {
        let mut values = Vec::new();
        for a in g.arrows() {
            let RawAction::Scalar(s) = action(a) else {
                unreachable!()
            };
            match nonzero(&path(a), s) {
                Ok(v) => values.push(v),
                Err(m) => errors.push(m),
            }
        }
        if !errors.is_empty() {
            return Err(SchemaError { messages: errors });
        }
        return LineRep::new(g.clone(), values)
            .map(Representation::Line)
            .map_err(|e| SchemaError::one(format!("rep: {e}")));
    }

    // Vector representation: each object's dimension is read off its identity arrow.
    let mut dims = Vec::new();
    for x in g.objects() {
        let e = g.identity(x);
        match action(e) {
            RawAction::Matrix(m) => dims.push(m.len()),
            _ => {
                errors.push(format!(
                    "{}: expected a matrix (mixing scalars and matrices without a complex section)",
                    path(e)
                ));
                dims.push(0);
            }
        }
    }
    let mut matrices = Vec::new();
    for a in g.arrows() {
        let (s, t) = (g.source(a), g.target(a));
        match action(a) {
            RawAction::Matrix(m) => {
                let p = format!(
                    "{} (arrow {:?} from {:?} to {:?})",
                    path(a),
                    g.arrow_name(a),
                    g.object_name(s),
                    g.object_name(t)
                );
                match matrix(&p, m, dims[t.0], dims[s.0]) {
                    Ok(m) => matrices.push(m),
                    Err(m) => errors.push(m),
                }
            }
            _ => errors.push(format!(
                "{}: expected a matrix (mixing scalars and matrices without a complex section)",
                path(a)
            )),
        }
    }
    if !errors.is_empty() {
        return Err(SchemaError { messages: errors });
    }
    VectorRep::new(g.clone(), dims, matrices)
        .map(Representation::Vector)
        .map_err(|e| SchemaError::one(format!("rep: {e}")))
}

fn per_object(
    section: &str,
    g: &FiniteGroupoid,
    names: &Names,
    raw: &BTreeMap<String, String>,
) -> Result<Vec<Rational>, SchemaError> {
    let mut errors = Vec::new();
    for name in raw.keys() {
        if let Err(m) = names.object(section, name) {
            errors.push(m);
        }
    }
    let mut values = Vec::new();
    for x in g.objects() {
        let name = g.object_name(x);
        match raw.get(name) {
            None => errors.push(format!("{section}: object {name:?} has no value")),
            Some(v) => match nonzero(&format!("{section}.{name}"), v) {
                Ok(v) => values.push(v),
                Err(m) => errors.push(m),
            },
        }
    }
    if errors.is_empty() {
        Ok(values)
    } else {
        Err(SchemaError { messages: errors })
    }
}

fn per_arrow(
    section: &str,
    g: &FiniteGroupoid,
    names: &Names,
    raw: &BTreeMap<String, String>,
) -> Result<Vec<Rational>, SchemaError> {
    let mut errors = Vec::new();
    for name in raw.keys() {
        if let Err(m) = names.arrow(section, name) {
            errors.push(m);
        }
    }
    let mut values = Vec::new();
    for a in g.arrows() {
        let name = g.arrow_name(a);
        match raw.get(name) {
            None => errors.push(format!("{section}: arrow {name:?} has no value")),
            Some(v) => match nonzero(&format!("{section}.{name}"), v) {
                Ok(v) => values.push(v),
                Err(m) => errors.push(m),
            },
        }
    }
    if errors.is_empty() {
        Ok(values)
    } else {
        Err(SchemaError { messages: errors })
    }
}

/// Resolves identifiers, parses rationals and checks shapes. Laws are not checked here.
pub fn resolve(raw: &RawDocument) -> Result<InputDocument, SchemaError> {
    let groupoid = resolve_groupoid(&raw.groupoid)?;
    let names = Names {
        objects: groupoid
            .objects()
            .map(|x| (groupoid.object_name(x), x))
            .collect(),
        arrows: groupoid
            .arrows()
            .map(|a| (groupoid.arrow_name(a), a))
            .collect(),
    };

    let complex = match &raw.complex {
        None => None,
        Some(fibers) => {
            let mut errors = Vec::new();
            for name in fibers.keys() {
                if let Err(m) = names.object("complex", name) {
                    errors.push(m);
                }
            }
            let mut out = Vec::new();
            for x in groupoid.objects() {
                let name = groupoid.object_name(x);
                match fibers.get(name) {
                    None => errors.push(format!("complex: object {name:?} has no fiber")),
                    Some(f) => match resolve_fiber(name, f) {
                        Ok(c) => out.push(Arc::new(c)),
                        Err(m) => errors.push(m),
                    },
                }
            }
            if !errors.is_empty() {
                return Err(SchemaError { messages: errors });
            }
            Some(out)
        }
    };

    let rep = match &raw.rep {
        None => None,
        Some(r) => Some(resolve_rep(&groupoid, &names, complex.as_ref(), r)?),
    };
    let sigma = match &raw.sigma {
        None => None,
        Some(s) => Some(
            Trivialization::new(per_object("sigma", &groupoid, &names, s)?)
                .expect("values are nonzero"),
        ),
    };
    let cochain = match &raw.cochain {
        None => None,
        Some(c) => Some(
            Cochain::on_arrows(&groupoid, &per_arrow("cochain", &groupoid, &names, c)?)
                .expect("values are nonzero"),
        ),
    };
    Ok(InputDocument {
        groupoid,
        complex,
        rep,
        sigma,
        cochain,
    })
}

impl InputDocument {
    /// Canonical raw form: rationals in lowest terms, every table entry spelled out,
    /// zero matrices omitted where the format allows.
    pub fn to_raw(&self) -> RawDocument {
        let g = &self.groupoid;
        let groupoid = RawGroupoid {
            objects: g.objects().map(|x| g.object_name(x).to_string()).collect(),
            arrows: g
                .arrows()
                .map(|a| RawArrow {
                    id: g.arrow_name(a).to_string(),
                    source: g.object_name(g.source(a)).to_string(),
                    target: g.object_name(g.target(a)).to_string(),
                })
                .collect(),
            identities: g
                .objects()
                .map(|x| {
                    (
                        g.object_name(x).to_string(),
                        g.arrow_name(g.identity(x)).to_string(),
                    )
                })
                .collect(),
            inverses: g
                .arrows()
                .map(|a| {
                    (
                        g.arrow_name(a).to_string(),
                        g.arrow_name(g.inverse(a)).to_string(),
                    )
                })
                .collect(),
            compose: g
                .composition_table()
                .into_iter()
                .map(|(a, b, ab)| [a, b, ab].map(|x| g.arrow_name(x).to_string()))
                .collect(),
        };
        let complex = self.complex.as_ref().map(|fibers| {
            g.objects()
                .map(|x| {
                    let c = &fibers[x.0];
                    let differentials = (c.lo()..c.hi())
                        .map(|i| (i, c.differential(i)))
                        .filter(|(_, d)| !d.is_zero())
                        .map(|(i, d)| (i.to_string(), raw_matrix(&d)))
                        .collect();
                    (
                        g.object_name(x).to_string(),
                        RawFiber {
                            lo: c.lo(),
                            dims: c.dims().to_vec(),
                            differentials,
                        },
                    )
                })
                .collect()
        });
        let rep = self.rep.as_ref().map(|r| {
            g.arrows()
                .map(|a| {
                    let action = match r {
                        Representation::Line(l) => RawAction::Scalar(format_scalar(l.action(a))),
                        Representation::Vector(v) => RawAction::Matrix(raw_matrix(v.action(a))),
                        Representation::Homotopy(h) => RawAction::Graded(
                            raw_graded(&h.action(a).components())
                                .into_iter()
                                .map(|(i, m)| (i.to_string(), m))
                                .collect(),
                        ),
                    };
                    (g.arrow_name(a).to_string(), action)
                })
                .collect()
        });
        let sigma = self.sigma.as_ref().map(|s| {
            g.objects()
                .map(|x| (g.object_name(x).to_string(), format_scalar(s.scale(x))))
                .collect()
        });
        let cochain = self.cochain.as_ref().map(|c| {
            g.arrows()
                .map(|a| (g.arrow_name(a).to_string(), format_scalar(c.at_arrow(a))))
                .collect()
        });
        RawDocument {
            groupoid,
            complex,
            rep,
            sigma,
            cochain,
        }
    }

    /// Canonical pretty JSON.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_raw()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn arrow(&self, name: &str) -> Option<ArrowId> {
        self.groupoid.arrow_by_name(name)
    }

    /// Names of sections present, for messages.
    pub fn sections(&self) -> BTreeSet<&'static str> {
        let mut s = BTreeSet::from(["groupoid"]);
        if self.complex.is_some() {
            s.insert("complex");
        }
        if self.rep.is_some() {
            s.insert("rep");
        }
        if self.sigma.is_some() {
            s.insert("sigma");
        }
        if self.cochain.is_some() {
            s.insert("cochain");
        }
        s
    }
}
