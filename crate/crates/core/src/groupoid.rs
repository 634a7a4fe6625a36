//! Finite groupoids, their nerves, and multiplicative cochains.
//!
//! Composition is written `g·h` and defined when `s(g) = t(h)`; then `s(g·h) = s(h)` and
//! `t(g·h) = t(g)`. A composable k-tuple `(g₁, …, g_k)` satisfies `s(g_i) = t(g_{i+1})`.
//! Cochains take values in the nonzero elements of a field, and the coboundary is the
//! multiplicative form of the usual alternating sum.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::scalar::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: ObjectId,
    pub target: ObjectId,
}

/// A finite groupoid given by explicit tables. Construction only checks that indices are in
/// range; [`FiniteGroupoid::validate`] checks the laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identity: Vec<ArrowId>,
    inverse: Vec<ArrowId>,
    /// `compose[g * n + h]` is `g·h` when defined.
    compose: Vec<Option<ArrowId>>,
}

impl FiniteGroupoid {
    /// `compose` lists triples `(g, h, g·h)`.
    pub fn from_tables(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identity: Vec<ArrowId>,
        inverse: Vec<ArrowId>,
        compose: impl IntoIterator<Item = (ArrowId, ArrowId, ArrowId)>,
    ) -> Result<Self> {
        let n_obj = objects.len();
        let n = arrows.len();
        let bad = |msg: String| Err(Error::InvalidGroupoid(msg));
        if let Some(a) = arrows
            .iter()
            .find(|a| a.source.0 >= n_obj || a.target.0 >= n_obj)
        {
            return bad(format!("arrow {} has an unknown endpoint", a.name));
        }
        if identity.len() != n_obj {
            return bad(format!(
                "{} identities for {} objects",
                identity.len(),
                n_obj
            ));
        }
        if inverse.len() != n {
            return bad(format!("{} inverses for {} arrows", inverse.len(), n));
        }
        if let Some(a) = identity.iter().chain(&inverse).find(|a| a.0 >= n) {
            return bad(format!("arrow index {} out of range", a.0));
        }
        let mut table = vec![None; n * n];
        for (g, h, gh) in compose {
            if g.0 >= n || h.0 >= n || gh.0 >= n {
                return bad("composition table refers to an unknown arrow".into());
            }
            let slot = &mut table[g.0 * n + h.0];
            if slot.is_some_and(|prev| prev != gh) {
                return bad(format!(
                    "composite {}·{} given twice",
                    arrows[g.0].name, arrows[h.0].name
                ));
            }
            *slot = Some(gh);
        }
        Ok(FiniteGroupoid {
            objects,
            arrows,
            identity,
            inverse,
            compose: table,
        })
    }

    /// The group with elements `names` (identity first is not required) and multiplication
    /// table `mul[a][b] = a·b`, as a one-object groupoid.
    pub fn from_group(object: &str, names: &[&str], mul: &[Vec<usize>]) -> Result<Self> {
        let n = names.len();
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| Error::InvalidGroupoid("group table has no unit".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mul[a][b] == unit)
                    .map(ArrowId)
                    .ok_or_else(|| Error::InvalidGroupoid(format!("{} has no inverse", names[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        let arrows = names
            .iter()
            .map(|name| Arrow {
                name: name.to_string(),
                source: ObjectId(0),
                target: ObjectId(0),
            })
            .collect();
        let compose = (0..n).flat_map(|a| (0..n).map(move |b| (a, b)));
        Self::from_tables(
            vec![object.to_string()],
            arrows,
            vec![ArrowId(unit)],
            inverse,
            compose
                .map(|(a, b)| (ArrowId(a), ArrowId(b), ArrowId(mul[a][b])))
                .collect::<Vec<_>>(),
        )
    }

    /// The cyclic group of order `n` on one object; element `k` is named `g{k}` (`e` for 0).
    pub fn cyclic(n: usize) -> Self {
        let names: Vec<String> = (0..n)
            .map(|k| if k == 0 { "e".into() } else { format!("g{k}") })
            .collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mul: Vec<Vec<usize>> = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::from_group("*", &refs, &mul).expect("cyclic group table is valid")
    }

    /// The groupoid with exactly one arrow between any two objects.
    pub fn pair(objects: &[&str]) -> Self {
        Self::transitive(objects, &["e"], &[vec![0]]).expect("pair groupoid is valid")
    }

    /// `objects × objects × group`: arrow `(i, j, a)` goes from `j` to `i`, and
    /// `(i, j, a)·(j, k, b) = (i, k, ab)`. Every connected groupoid is equivalent to one of these.
    /// Names are `i<-j:a`, or `i<-j` for the trivial group.
    #[allow(clippy::needless_range_loop)]
    pub fn transitive(objects: &[&str], group: &[&str], mul: &[Vec<usize>]) -> Result<Self> {
        let m = group.len();
        let unit = (0..m)
            .find(|&e| (0..m).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| Error::InvalidGroupoid("group table has no unit".into()))?;
        let inv = |a: usize| (0..m).find(|&b| mul[a][b] == unit).expect("group inverse");
        let n = objects.len();
        let id = |i: usize, j: usize, a: usize| (i * n + j) * m + a;
        let mut arrows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for g in group {
                    arrows.push(Arrow {
                        name: if m == 1 {
                            format!("{}<-{}", objects[i], objects[j])
                        } else {
                            format!("{}<-{}:{}", objects[i], objects[j], g)
                        },
                        source: ObjectId(j),
                        target: ObjectId(i),
                    });
                }
            }
        }
        let identity = (0..n).map(|i| ArrowId(id(i, i, unit))).collect();
        let mut inverse = vec![ArrowId(0); arrows.len()];
        let mut compose = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for a in 0..m {
                    inverse[id(i, j, a)] = ArrowId(id(j, i, inv(a)));
                    for k in 0..n {
                        for b in 0..m {
                            compose.push((
                                ArrowId(id(i, j, a)),
                                ArrowId(id(j, k, b)),
                                ArrowId(id(i, k, mul[a][b])),
                            ));
                        }
                    }
                }
            }
        }
        Self::from_tables(
            objects.iter().map(|s| s.to_string()).collect(),
            arrows,
            identity,
            inverse,
            compose,
        )
    }

    /// Action groupoid of a group acting on a finite set: arrow `(a, x)` goes from `x` to
    /// `a·x`, and `(b, a·x)·(a, x) = (ba, x)`. `act[a][x]` is the image of `x` under `a`.
    #[allow(clippy::needless_range_loop)]
    pub fn action(
        points: &[&str],
        group: &[&str],
        mul: &[Vec<usize>],
        act: &[Vec<usize>],
    ) -> Result<Self> {
        let m = group.len();
        let n = points.len();
        let unit = (0..m)
            .find(|&e| (0..m).all(|a| mul[e][a] == a && mul[a][e] == a))
            .ok_or_else(|| Error::InvalidGroupoid("group table has no unit".into()))?;
        let inv = |a: usize| (0..m).find(|&b| mul[a][b] == unit).expect("group inverse");
        let id = |a: usize, x: usize| a * n + x;
        let mut arrows = Vec::new();
        for a in 0..m {
            for x in 0..n {
                arrows.push(Arrow {
                    name: format!("{}@{}", group[a], points[x]),
                    source: ObjectId(x),
                    target: ObjectId(act[a][x]),
                });
            }
        }
        let identity = (0..n).map(|x| ArrowId(id(unit, x))).collect();
        let inverse = (0..m)
            .flat_map(|a| (0..n).map(move |x| (a, x)))
            .map(|(a, x)| ArrowId(id(inv(a), act[a][x])))
            .collect();
        let mut compose = Vec::new();
        for a in 0..m {
            for x in 0..n {
                for b in 0..m {
                    compose.push((
                        ArrowId(id(b, act[a][x])),
                        ArrowId(id(a, x)),
                        ArrowId(id(mul[b][a], x)),
                    ));
                }
            }
        }
        Self::from_tables(
            points.iter().map(|s| s.to_string()).collect(),
            arrows,
            identity,
            inverse,
            compose,
        )
    }

    /// Disjoint union; object and arrow names get the prefix `{k}.` for the k-th part.
    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> Self {
        let mut objects = Vec::new();
        let mut arrows = Vec::new();
        let mut identity = Vec::new();
        let mut inverse = Vec::new();
        let mut compose = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            let (o_off, a_off) = (objects.len(), arrows.len());
            objects.extend(p.objects.iter().map(|o| format!("{k}.{o}")));
            arrows.extend(p.arrows.iter().map(|a| Arrow {
                name: format!("{k}.{}", a.name),
                source: ObjectId(a.source.0 + o_off),
                target: ObjectId(a.target.0 + o_off),
            }));
            identity.extend(p.identity.iter().map(|a| ArrowId(a.0 + a_off)));
            inverse.extend(p.inverse.iter().map(|a| ArrowId(a.0 + a_off)));
            for (g, h, gh) in p.composition_table() {
                compose.push((
                    ArrowId(g.0 + a_off),
                    ArrowId(h.0 + a_off),
                    ArrowId(gh.0 + a_off),
                ));
            }
        }
        Self::from_tables(objects, arrows, identity, inverse, compose)
            .expect("union of valid tables")
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> + '_ {
        (0..self.objects.len()).map(ObjectId)
    }

    pub fn arrows(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn object_name(&self, x: ObjectId) -> &str {
        &self.objects[x.0]
    }

    pub fn arrow_name(&self, g: ArrowId) -> &str {
        &self.arrows[g.0].name
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjectId> {
        self.objects.iter().position(|o| o == name).map(ObjectId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    pub fn arrow(&self, g: ArrowId) -> &Arrow {
        &self.arrows[g.0]
    }

    pub fn source(&self, g: ArrowId) -> ObjectId {
        self.arrows[g.0].source
    }

    pub fn target(&self, g: ArrowId) -> ObjectId {
        self.arrows[g.0].target
    }

    pub fn identity(&self, x: ObjectId) -> ArrowId {
        self.identity[x.0]
    }

    pub fn inverse(&self, g: ArrowId) -> ArrowId {
        self.inverse[g.0]
    }

    pub fn is_identity(&self, g: ArrowId) -> bool {
        self.identity.contains(&g)
    }

    /// `g·h` from the table (only meaningful when `s(g) = t(h)`).
    pub fn compose(&self, g: ArrowId, h: ArrowId) -> Option<ArrowId> {
        self.compose[g.0 * self.arrows.len() + h.0]
    }

    /// Like [`compose`](Self::compose) but panics when the table has no entry; for use on
    /// validated groupoids.
    pub fn mul(&self, g: ArrowId, h: ArrowId) -> ArrowId {
        self.compose(g, h).unwrap_or_else(|| {
            panic!(
                "{}·{} is not defined",
                self.arrow_name(g),
                self.arrow_name(h)
            )
        })
    }

    /// All table entries `(g, h, g·h)` in index order.
    pub fn composition_table(&self) -> Vec<(ArrowId, ArrowId, ArrowId)> {
        let n = self.arrows.len();
        (0..n * n)
            .filter_map(|k| self.compose[k].map(|gh| (ArrowId(k / n), ArrowId(k % n), gh)))
            .collect()
    }

    pub fn composable(&self, g: ArrowId, h: ArrowId) -> bool {
        self.source(g) == self.target(h)
    }

    /// Exhaustive check of the groupoid axioms.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let name = |g: ArrowId| self.arrow_name(g).to_string();
        for x in self.objects() {
            let e = self.identity(x);
            if self.source(e) != x || self.target(e) != x {
                report.push(
                    "identity endpoints",
                    format!(
                        "identity {} of object {} is not a loop at it",
                        name(e),
                        self.object_name(x)
                    ),
                );
            }
        }
        for g in self.arrows() {
            for h in self.arrows() {
                let defined = self.compose(g, h);
                match (self.composable(g, h), defined) {
                    (true, None) => report.push(
                        "composition defined",
                        format!("{}·{} is missing", name(g), name(h)),
                    ),
                    (false, Some(_)) => report.push(
                        "composition defined",
                        format!("{}·{} given for a non-composable pair", name(g), name(h)),
                    ),
                    (true, Some(gh)) => {
                        if self.source(gh) != self.source(h) || self.target(gh) != self.target(g) {
                            report.push(
                                "composition endpoints",
                                format!(
                                    "{}·{} = {} has the wrong endpoints",
                                    name(g),
                                    name(h),
                                    name(gh)
                                ),
                            );
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if !report.is_valid() {
            return report;
        }
        for g in self.arrows() {
            let (s, t) = (self.source(g), self.target(g));
            if self.mul(self.identity(t), g) != g || self.mul(g, self.identity(s)) != g {
                report.push("unit law", format!("identities do not fix {}", name(g)));
            }
            let gi = self.inverse(g);
            if self.source(gi) != t || self.target(gi) != s {
                report.push(
                    "inverse law",
                    format!(
                        "inverse {} of {} has the wrong endpoints",
                        name(gi),
                        name(g)
                    ),
                );
                continue;
            }
            if self.mul(g, gi) != self.identity(t) || self.mul(gi, g) != self.identity(s) {
                report.push(
                    "inverse law",
                    format!("{} and {} do not compose to identities", name(g), name(gi)),
                );
            }
        }
        for g in self.arrows() {
            for h in self.arrows().filter(|&h| self.composable(g, h)) {
                let gh = self.mul(g, h);
                for k in self.arrows().filter(|&k| self.composable(h, k)) {
                    if self.mul(gh, k) != self.mul(g, self.mul(h, k)) {
                        report.push(
                            "associativity",
                            format!("({}, {}, {})", name(g), name(h), name(k)),
                        );
                    }
                }
            }
        }
        report
    }

    /// Composable k-tuples in lexicographic index order. `k = 0` yields no tuples;
    /// use [`objects`](Self::objects) for degree 0.
    pub fn composable_tuples(&self, k: usize) -> Vec<ComposableTuple> {
        if k == 0 {
            return Vec::new();
        }
        let mut out: Vec<Vec<ArrowId>> = self.arrows().map(|g| vec![g]).collect();
        for _ in 1..k {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    let last = *prefix.last().unwrap();
                    self.arrows()
                        .filter(move |&h| self.composable(last, h))
                        .map(move |h| {
                            let mut t = prefix.clone();
                            t.push(h);
                            t
                        })
                })
                .collect();
        }
        out.into_iter().map(ComposableTuple).collect()
    }

    /// Simplex count in degree k: objects for k = 0.
    pub fn nerve_size(&self, k: usize) -> usize {
        if k == 0 {
            self.object_count()
        } else {
            self.composable_tuples(k).len()
        }
    }

    /// Connected components as lists of objects, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<ObjectId>> {
        let forest = SpanningForest::new(self);
        let mut comps: BTreeMap<ObjectId, Vec<ObjectId>> = BTreeMap::new();
        for x in self.objects() {
            comps.entry(forest.root[x.0]).or_default().push(x);
        }
        comps.into_values().collect()
    }
}

/// A composable chain `(g₁, …, g_k)` with `s(g_i) = t(g_{i+1})`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComposableTuple(pub Vec<ArrowId>);

impl ComposableTuple {
    pub fn arrows(&self) -> &[ArrowId] {
        &self.0
    }
}

/// Where a cochain is evaluated: objects in degree 0, tuples above.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Simplex {
    Object(ObjectId),
    Tuple(ComposableTuple),
}

/// A function on composable k-tuples (objects for k = 0) with nonzero values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain<K> {
    degree: usize,
    values: BTreeMap<Simplex, K>,
}

impl<K: Field> Cochain<K> {
    /// Builds a cochain from a function on the nerve; fails on zero values.
    pub fn from_fn(
        g: &FiniteGroupoid,
        degree: usize,
        mut f: impl FnMut(&Simplex) -> K,
    ) -> Result<Self> {
        let simplices: Vec<Simplex> = if degree == 0 {
            g.objects().map(Simplex::Object).collect()
        } else {
            g.composable_tuples(degree)
                .into_iter()
                .map(Simplex::Tuple)
                .collect()
        };
        let mut values = BTreeMap::new();
        for s in simplices {
            let v = f(&s);
            if v.is_zero() {
                return Err(Error::ZeroValue(format!(
                    "cochain value at {}",
                    describe(g, &s)
                )));
            }
            values.insert(s, v);
        }
        Ok(Cochain { degree, values })
    }

    /// Degree-0 cochain from per-object values.
    pub fn on_objects(g: &FiniteGroupoid, values: &[K]) -> Result<Self> {
        if values.len() != g.object_count() {
            return Err(Error::DimensionMismatch {
                op: "Cochain::on_objects",
                detail: format!("{} values for {} objects", values.len(), g.object_count()),
            });
        }
        Self::from_fn(g, 0, |s| match s {
            Simplex::Object(x) => values[x.0].clone(),
            Simplex::Tuple(_) => unreachable!(),
        })
    }

    /// Degree-1 cochain from per-arrow values.
    pub fn on_arrows(g: &FiniteGroupoid, values: &[K]) -> Result<Self> {
        if values.len() != g.arrow_count() {
            return Err(Error::DimensionMismatch {
                op: "Cochain::on_arrows",
                detail: format!("{} values for {} arrows", values.len(), g.arrow_count()),
            });
        }
        Self::from_fn(g, 1, |s| match s {
            Simplex::Tuple(t) => values[t.0[0].0].clone(),
            Simplex::Object(_) => unreachable!(),
        })
    }

    pub fn constant(g: &FiniteGroupoid, degree: usize, value: K) -> Result<Self> {
        Self::from_fn(g, degree, |_| value.clone())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, s: &Simplex) -> Option<&K> {
        self.values.get(s)
    }

    pub fn at_object(&self, x: ObjectId) -> &K {
        &self.values[&Simplex::Object(x)]
    }

    pub fn at_arrow(&self, g: ArrowId) -> &K {
        &self.values[&Simplex::Tuple(ComposableTuple(vec![g]))]
    }

    pub fn at_tuple(&self, t: &[ArrowId]) -> &K {
        &self.values[&Simplex::Tuple(ComposableTuple(t.to_vec()))]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &K)> {
        self.values.iter()
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() * b.clone())
    }

    /// Pointwise quotient.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() / b.clone())
    }

    pub fn recip(&self) -> Self {
        Cochain {
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|(s, v)| (s.clone(), v.recip()))
                .collect(),
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&K, &K) -> K) -> Result<Self> {
        if self.degree != other.degree
            || self.values.len() != other.values.len()
            || !self.values.keys().eq(other.values.keys())
        {
            return Err(Error::DimensionMismatch {
                op: "Cochain",
                detail: "cochains live on different domains".into(),
            });
        }
        Ok(Cochain {
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(other.values.values())
                .map(|((s, a), b)| (s.clone(), f(a, b)))
                .collect(),
        })
    }

    /// True when every value is one.
    pub fn is_one(&self) -> bool {
        self.values.values().all(|v| v.is_one())
    }

    /// Values on single arrows in arrow order (degree 1 only).
    pub fn arrow_values(&self) -> Vec<K> {
        assert_eq!(
            self.degree, 1,
            "arrow_values on a degree-{} cochain",
            self.degree
        );
        self.values.values().cloned().collect()
    }

    /// Values on objects in object order (degree 0 only).
    pub fn object_values(&self) -> Vec<K> {
        assert_eq!(
            self.degree, 0,
            "object_values on a degree-{} cochain",
            self.degree
        );
        self.values.values().cloned().collect()
    }
}

fn describe(g: &FiniteGroupoid, s: &Simplex) -> String {
    match s {
        Simplex::Object(x) => format!("object {}", g.object_name(*x)),
        Simplex::Tuple(t) => {
            let names: Vec<&str> = t.0.iter().map(|&a| g.arrow_name(a)).collect();
            format!("({})", names.join(", "))
        }
    }
}

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for ArrowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Multiplicative coboundary.
///
/// Degree 0: `(δf)(g) = f(s(g)) / f(t(g))`.
/// Degree k ≥ 1: `(δf)(g₁,…,g_{k+1}) = f(g₂,…,g_{k+1}) · ∏_{i=1}^{k} f(…, g_i g_{i+1}, …)^{(-1)^i}
/// · f(g₁,…,g_k)^{(-1)^{k+1}}`.
pub fn coboundary<K: Field>(g: &FiniteGroupoid, f: &Cochain<K>) -> Result<Cochain<K>> {
    let k = f.degree;
    let value_at = |s: Simplex| -> Result<K> {
        f.get(&s).cloned().ok_or_else(|| Error::Precondition {
            op: "coboundary",
            detail: format!("cochain is not defined at {}", describe(g, &s)),
        })
    };
    let tuple = |t: Vec<ArrowId>| Simplex::Tuple(ComposableTuple(t));
    let mut values = BTreeMap::new();
    for t in g.composable_tuples(k + 1) {
        let t = t.0;
        let value = if k == 0 {
            value_at(Simplex::Object(g.source(t[0])))? / value_at(Simplex::Object(g.target(t[0])))?
        } else {
            let mut value = value_at(tuple(t[1..].to_vec()))?;
            for i in 1..=k {
                let composite = g.compose(t[i - 1], t[i]).ok_or_else(|| {
                    Error::InvalidGroupoid(format!(
                        "{}·{} undefined",
                        g.arrow_name(t[i - 1]),
                        g.arrow_name(t[i])
                    ))
                })?;
                let mut face = t[..i - 1].to_vec();
                face.push(composite);
                face.extend_from_slice(&t[i + 1..]);
                let v = value_at(tuple(face))?;
                value = if i % 2 == 0 { value * v } else { value / v };
            }
            let last = value_at(tuple(t[..k].to_vec()))?;
            if (k + 1).is_multiple_of(2) {
                value * last
            } else {
                value / last
            }
        };
        values.insert(tuple(t), value);
    }
    Ok(Cochain {
        degree: k + 1,
        values,
    })
}

/// True iff `φ(g)φ(h) = φ(g·h)` for every composable pair.
pub fn is_cocycle_1<K: Field>(g: &FiniteGroupoid, phi: &Cochain<K>) -> bool {
    first_cocycle_failure(g, phi).is_none()
}

fn first_cocycle_failure<K: Field>(
    g: &FiniteGroupoid,
    phi: &Cochain<K>,
) -> Option<(ArrowId, ArrowId)> {
    if phi.degree != 1 {
        return None;
    }
    g.composable_tuples(2).into_iter().find_map(|t| {
        let (a, b) = (t.0[0], t.0[1]);
        let lhs = phi.at_arrow(a).clone() * phi.at_arrow(b).clone();
        (lhs != *phi.at_arrow(g.mul(a, b))).then_some((a, b))
    })
}

fn require_cocycle<K: Field>(g: &FiniteGroupoid, phi: &Cochain<K>) -> Result<()> {
    if phi.degree != 1 {
        return Err(Error::NotACocycle(format!(
            "expected a degree-1 cochain, got degree {}",
            phi.degree
        )));
    }
    if let Some((a, b)) = first_cocycle_failure(g, phi) {
        return Err(Error::NotACocycle(format!(
            "φ({})φ({}) ≠ φ({}·{})",
            g.arrow_name(a),
            g.arrow_name(b),
            g.arrow_name(a),
            g.arrow_name(b)
        )));
    }
    Ok(())
}

/// Breadth-first forest over the object graph, arrows usable in both directions.
struct SpanningForest {
    root: Vec<ObjectId>,
    /// Objects in visiting order, each with the arrow that reached it (None for roots).
    order: Vec<(ObjectId, Option<ArrowId>)>,
}

impl SpanningForest {
    fn new(g: &FiniteGroupoid) -> Self {
        let n = g.object_count();
        let mut root: Vec<Option<ObjectId>> = vec![None; n];
        let mut order = Vec::with_capacity(n);
        for start in g.objects() {
            if root[start.0].is_some() {
                continue;
            }
            root[start.0] = Some(start);
            order.push((start, None));
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for a in g.arrows() {
                    let other = if g.target(a) == x {
                        g.source(a)
                    } else if g.source(a) == x {
                        g.target(a)
                    } else {
                        continue;
                    };
                    if root[other.0].is_none() {
                        root[other.0] = Some(start);
                        order.push((other, Some(a)));
                        queue.push_back(other);
                    }
                }
            }
        }
        SpanningForest {
            root: root
                .into_iter()
                .map(|r| r.expect("every object visited"))
                .collect(),
            order,
        }
    }
}

/// A degree-1 cocycle with a decision on whether it is a coboundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport<K> {
    pub cocycle: Cochain<K>,
    pub is_coboundary: bool,
    /// `f` with `δf = cocycle`, normalized to 1 at the smallest object of each component.
    pub witness: Option<Cochain<K>>,
    /// Arrows where the propagated `f` fails, with the ratio `φ(g) / (δf)(g)`.
    pub obstructions: Vec<(ArrowId, K)>,
}

impl<K: Field> ClassReport<K> {
    /// Rescaling `r = 1/f` of the trivialization that makes the cocycle identically one:
    /// if `φ_σ = δf` then `φ_{rσ} = φ_σ · δr ≡ 1`.
    pub fn invariant_rescaling(&self) -> Option<Cochain<K>> {
        self.witness.as_ref().map(Cochain::recip)
    }
}

/// Decides whether a 1-cocycle is a coboundary by propagating `f(s(g)) = φ(g) f(t(g))` along
/// a breadth-first spanning forest and checking every remaining arrow.
pub fn coboundary_solve_1<K: Field>(
    g: &FiniteGroupoid,
    phi: &Cochain<K>,
) -> Result<ClassReport<K>> {
    require_cocycle(g, phi)?;
    let forest = SpanningForest::new(g);
    let mut f: Vec<Option<K>> = vec![None; g.object_count()];
    for &(x, via) in &forest.order {
        let value = match via {
            None => K::one(),
            Some(a) => {
                let (s, t) = (g.source(a), g.target(a));
                if s == x {
                    phi.at_arrow(a).clone() * f[t.0].clone().expect("parent set")
                } else {
                    f[s.0].clone().expect("parent set") / phi.at_arrow(a).clone()
                }
            }
        };
        f[x.0] = Some(value);
    }
    let f: Vec<K> = f
        .into_iter()
        .map(|v| v.expect("all objects reached"))
        .collect();
    let witness = Cochain::on_objects(g, &f)?;
    let delta = coboundary(g, &witness)?;
    let obstructions: Vec<(ArrowId, K)> = g
        .arrows()
        .filter_map(|a| {
            let ratio = phi.at_arrow(a).clone() / delta.at_arrow(a).clone();
            (!ratio.is_one()).then_some((a, ratio))
        })
        .collect();
    let is_coboundary = obstructions.is_empty();
    Ok(ClassReport {
        cocycle: phi.clone(),
        is_coboundary,
        witness: is_coboundary.then_some(witness),
        obstructions,
    })
}

/// Whether two 1-cocycles differ by a coboundary.
pub fn class_equal<K: Field>(g: &FiniteGroupoid, a: &Cochain<K>, b: &Cochain<K>) -> Result<bool> {
    require_cocycle(g, a)?;
    require_cocycle(g, b)?;
    Ok(coboundary_solve_1(g, &a.div(b)?)?.is_coboundary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn frac(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn fixtures_are_valid() {
        assert!(fixtures::z2().validate().is_valid());
        assert!(fixtures::pair2().validate().is_valid());
        assert!(fixtures::z3().validate().is_valid());
        assert!(fixtures::s3_action().validate().is_valid());
    }

    #[test]
    fn z2_with_idempotent_tau_is_invalid() {
        // τ·τ = τ breaks the inverse law (and the unit-law check still passes).
        let g = FiniteGroupoid::from_tables(
            vec!["*".into()],
            vec![
                Arrow {
                    name: "1".into(),
                    source: ObjectId(0),
                    target: ObjectId(0),
                },
                Arrow {
                    name: "tau".into(),
                    source: ObjectId(0),
                    target: ObjectId(0),
                },
            ],
            vec![ArrowId(0)],
            vec![ArrowId(0), ArrowId(1)],
            [
                (ArrowId(0), ArrowId(0), ArrowId(0)),
                (ArrowId(0), ArrowId(1), ArrowId(1)),
                (ArrowId(1), ArrowId(0), ArrowId(1)),
                (ArrowId(1), ArrowId(1), ArrowId(1)),
            ],
        )
        .unwrap();
        let report = g.validate();
        assert!(report.has("inverse law"));
        assert!(report.to_string().contains("tau"));
    }

    #[test]
    fn missing_composite_is_reported() {
        let p = fixtures::pair2();
        let table: Vec<_> = p.composition_table().into_iter().skip(1).collect();
        let broken = FiniteGroupoid::from_tables(
            p.objects().map(|x| p.object_name(x).to_string()).collect(),
            p.arrows().map(|a| p.arrow(a).clone()).collect(),
            p.objects().map(|x| p.identity(x)).collect(),
            p.arrows().map(|a| p.inverse(a)).collect(),
            table,
        )
        .unwrap();
        assert!(broken.validate().has("composition defined"));
    }

    #[test]
    fn tuple_counts() {
        let pair = fixtures::pair2();
        assert_eq!(pair.composable_tuples(1).len(), 4);
        assert_eq!(pair.nerve_size(0), 2);
        let z2 = fixtures::z2();
        assert_eq!(z2.composable_tuples(2).len(), 4);
        // Brute force over all ordered pairs, filtering by endpoints.
        let brute = pair
            .arrows()
            .flat_map(|a| pair.arrows().map(move |b| (a, b)))
            .filter(|&(a, b)| pair.source(a) == pair.target(b))
            .count();
        assert_eq!(brute, 8);
        assert_eq!(pair.composable_tuples(2).len(), 8);
        for t in pair.composable_tuples(3) {
            assert!(t.0.windows(2).all(|w| pair.composable(w[0], w[1])));
        }
    }

    #[test]
    fn coboundary_examples() {
        let pair = fixtures::pair2();
        let c = Cochain::constant(&pair, 0, q(7)).unwrap();
        assert!(coboundary(&pair, &c).unwrap().is_one());

        let f = Cochain::on_objects(&pair, &[q(2), q(3)]).unwrap();
        let df = coboundary(&pair, &f).unwrap();
        let g = pair.arrow_by_name("g").unwrap();
        assert_eq!(*df.at_arrow(g), frac(2, 3));

        let z2 = fixtures::z2();
        let sign = Cochain::on_arrows(&z2, &[q(1), q(-1)]).unwrap();
        let d = coboundary(&z2, &sign).unwrap();
        assert_eq!(d.iter().count(), 4);
        assert!(d.is_one());
    }

    #[test]
    fn degree_two_coboundary_formula() {
        // δf(a, b, c) = f(b, c) f(ab, c)^{-1} f(a, bc) f(a, b)^{-1} on Z3.
        let z3 = fixtures::z3();
        let f = Cochain::from_fn(&z3, 2, |s| {
            let Simplex::Tuple(t) = s else { unreachable!() };
            q(2 + (t.0[0].0 * 3 + t.0[1].0) as i64)
        })
        .unwrap();
        let df = coboundary(&z3, &f).unwrap();
        for t in z3.composable_tuples(3) {
            let [a, b, c] = [t.0[0], t.0[1], t.0[2]];
            let expected = f.at_tuple(&[b, c]).clone() / f.at_tuple(&[z3.mul(a, b), c]).clone()
                * f.at_tuple(&[a, z3.mul(b, c)]).clone()
                / f.at_tuple(&[a, b]).clone();
            assert_eq!(*df.at_tuple(&t.0), expected);
        }
        assert!(coboundary(&z3, &df).unwrap().is_one());
    }

    #[test]
    fn cocycle_examples() {
        let pair = fixtures::pair2();
        let mut vals = vec![q(1); 4];
        vals[pair.arrow_by_name("g").unwrap().0] = q(2);
        vals[pair.arrow_by_name("g_inv").unwrap().0] = frac(1, 2);
        assert!(is_cocycle_1(
            &pair,
            &Cochain::on_arrows(&pair, &vals).unwrap()
        ));

        let z2 = fixtures::z2();
        assert!(is_cocycle_1(
            &z2,
            &Cochain::on_arrows(&z2, &[q(1), q(-1)]).unwrap()
        ));
        assert!(!is_cocycle_1(
            &z2,
            &Cochain::on_arrows(&z2, &[q(1), q(2)]).unwrap()
        ));
    }

    #[test]
    fn solve_on_pair2() {
        let pair = fixtures::pair2();
        let mut vals = vec![q(1); 4];
        vals[pair.arrow_by_name("g").unwrap().0] = q(2);
        vals[pair.arrow_by_name("g_inv").unwrap().0] = frac(1, 2);
        let phi = Cochain::on_arrows(&pair, &vals).unwrap();
        let report = coboundary_solve_1(&pair, &phi).unwrap();
        assert!(report.is_coboundary);
        let w = report.witness.unwrap();
        // (2, 1) up to the per-component constant; normalized so f(x) = 1.
        assert_eq!(w.object_values(), vec![q(1), frac(1, 2)]);
        assert_eq!(
            w.object_values()[0].clone() / w.object_values()[1].clone(),
            q(2) / q(1)
        );
        assert_eq!(coboundary(&pair, &w).unwrap(), phi);
    }

    #[test]
    fn solve_on_z2() {
        let z2 = fixtures::z2();
        let sign = Cochain::on_arrows(&z2, &[q(1), q(-1)]).unwrap();
        let report = coboundary_solve_1(&z2, &sign).unwrap();
        assert!(!report.is_coboundary);
        assert!(report.witness.is_none());
        assert_eq!(report.obstructions, vec![(ArrowId(1), q(-1))]);

        let one = Cochain::constant(&z2, 1, q(1)).unwrap();
        let report = coboundary_solve_1(&z2, &one).unwrap();
        assert!(report.is_coboundary);
        assert!(report.witness.unwrap().is_one());

        let not = Cochain::on_arrows(&z2, &[q(1), q(2)]).unwrap();
        assert!(matches!(
            coboundary_solve_1(&z2, &not),
            Err(Error::NotACocycle(_))
        ));
    }

    #[test]
    fn class_equal_examples() {
        let z2 = fixtures::z2();
        let sign = Cochain::on_arrows(&z2, &[q(1), q(-1)]).unwrap();
        let one = Cochain::constant(&z2, 1, q(1)).unwrap();
        assert!(!class_equal(&z2, &sign, &one).unwrap());
        assert!(class_equal(&z2, &sign, &sign).unwrap());

        let s3 = fixtures::s3_action();
        let f = Cochain::on_objects(&s3, &[q(2), q(-5), frac(1, 3)]).unwrap();
        let phi = Cochain::constant(&s3, 1, q(1)).unwrap();
        let twisted = phi.mul(&coboundary(&s3, &f).unwrap()).unwrap();
        assert!(class_equal(&s3, &phi, &twisted).unwrap());
    }

    #[test]
    fn components_of_union() {
        let u =
            FiniteGroupoid::disjoint_union(&[fixtures::pair2(), fixtures::z2(), fixtures::pair2()]);
        assert!(u.validate().is_valid());
        let comps = u.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0], vec![ObjectId(0), ObjectId(1)]);
        assert_eq!(comps[1], vec![ObjectId(2)]);
    }

    #[test]
    fn witness_from_solving_a_coboundary() {
        let u = FiniteGroupoid::disjoint_union(&[fixtures::pair2(), fixtures::s3_action()]);
        let f = Cochain::on_objects(&u, &[q(3), q(-1), q(2), frac(7, 2), q(-4)]).unwrap();
        let phi = coboundary(&u, &f).unwrap();
        let report = coboundary_solve_1(&u, &phi).unwrap();
        assert!(report.is_coboundary);
        assert_eq!(
            coboundary(&u, report.witness.as_ref().unwrap()).unwrap(),
            phi
        );
        let rescale = report.invariant_rescaling().unwrap();
        let fixed = phi.mul(&coboundary(&u, &rescale).unwrap()).unwrap();
        assert!(fixed.is_one());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_nonzero() -> impl Strategy<Value = Rational> {
            (1i64..=6, 1i64..=4, any::<bool>())
                .prop_map(|(n, d, neg)| frac(if neg { -n } else { n }, d))
        }

        proptest! {
            #[test]
            fn one_object_coboundaries_are_trivial(signs in proptest::collection::vec(any::<bool>(), 1)) {
                let z2 = fixtures::z2();
                let v = if signs[0] { q(-1) } else { q(1) };
                let phi = Cochain::on_arrows(&z2, &[q(1), v.clone()]).unwrap();
                let report = coboundary_solve_1(&z2, &phi).unwrap();
                prop_assert_eq!(report.is_coboundary, phi.is_one());
            }

            #[test]
            fn delta_delta_on_s3(vals in proptest::collection::vec(small_nonzero(), 18)) {
                let s3 = fixtures::s3_action();
                let f = Cochain::on_arrows(&s3, &vals).unwrap();
                let dd = coboundary(&s3, &coboundary(&s3, &f).unwrap()).unwrap();
                prop_assert!(dd.is_one());
            }
        }
    }
}
