//! Representations of finite groupoids: strict ones on lines and vector spaces, and
//! representations up to weak homotopy on cochain complexes, with their characteristic
//! and modular classes.
//!
//! Over a finite discrete base every coordinate bundle is trivial, so orientability and
//! superorientability hold automatically. Trivializations default to the standard
//! coordinate elements; the resulting classes do not depend on this choice.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complexes::{
    are_homotopic, berezinian_class_with, decompose, verify_chain_map, verify_complex,
    BerTrivialization, BlockForm, ChainMap, ComplexFiber, Homotopy, ScanOrder,
};
use crate::error::{Error, Result};
use crate::groupoid::{
    class_equal, coboundary_solve_1, ArrowId, ClassReport, Cochain, FiniteGroupoid, ObjectId,
};
use crate::linalg::Matrix;
use crate::report::ValidationReport;
use crate::scalar::Field;

/// A representation on the trivial line bundle: one nonzero scalar per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineRep<K> {
    groupoid: FiniteGroupoid,
    action: Vec<K>,
}

impl<K: Field> LineRep<K> {
    /// Checks lengths and nonvanishing; functoriality is left to [`verify_line_rep`].
    pub fn new(groupoid: FiniteGroupoid, action: Vec<K>) -> Result<Self> {
        if action.len() != groupoid.arrow_count() {
            return Err(Error::DimensionMismatch {
                op: "LineRep::new",
                detail: format!(
                    "{} scalars for {} arrows",
                    action.len(),
                    groupoid.arrow_count()
                ),
            });
        }
        if let Some(g) = groupoid.arrows().find(|g| action[g.0].is_zero()) {
            return Err(Error::ZeroValue(format!(
                "line representation at arrow {}",
                groupoid.arrow_name(g)
            )));
        }
        Ok(LineRep { groupoid, action })
    }

    pub fn trivial(groupoid: FiniteGroupoid) -> Self {
        let action = vec![K::one(); groupoid.arrow_count()];
        LineRep { groupoid, action }
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn action(&self, g: ArrowId) -> &K {
        &self.action[g.0]
    }

    pub fn actions(&self) -> &[K] {
        &self.action
    }
}

/// A representation on coordinate spaces `K^{dims[x]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorRep<K> {
    groupoid: FiniteGroupoid,
    dims: Vec<usize>,
    action: Vec<Matrix<K>>,
}

impl<K: Field> VectorRep<K> {
    /// Checks shapes; laws are left to [`verify_vector_rep`].
    pub fn new(groupoid: FiniteGroupoid, dims: Vec<usize>, action: Vec<Matrix<K>>) -> Result<Self> {
        if dims.len() != groupoid.object_count() || action.len() != groupoid.arrow_count() {
            return Err(Error::DimensionMismatch {
                op: "VectorRep::new",
                detail: format!(
                    "{} dims and {} matrices for {} objects and {} arrows",
                    dims.len(),
                    action.len(),
                    groupoid.object_count(),
                    groupoid.arrow_count()
                ),
            });
        }
        for g in groupoid.arrows() {
            let shape = (dims[groupoid.target(g).0], dims[groupoid.source(g).0]);
            if action[g.0].shape() != shape {
                return Err(Error::DimensionMismatch {
                    op: "VectorRep::new",
                    detail: format!(
                        "arrow {} acts by a {}x{} matrix, expected {}x{}",
                        groupoid.arrow_name(g),
                        action[g.0].rows(),
                        action[g.0].cols(),
                        shape.0,
                        shape.1
                    ),
                });
            }
        }
        Ok(VectorRep {
            groupoid,
            dims,
            action,
        })
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn dim(&self, x: ObjectId) -> usize {
        self.dims[x.0]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn action(&self, g: ArrowId) -> &Matrix<K> {
        &self.action[g.0]
    }

    /// The same representation on complexes concentrated in `degree`.
    pub fn in_degree(&self, degree: i32) -> RepUpToWeakHomotopy<K> {
        let fibers: Vec<Arc<ComplexFiber<K>>> = self
            .dims
            .iter()
            .map(|&d| Arc::new(ComplexFiber::concentrated(degree, d)))
            .collect();
        let action = self
            .groupoid
            .arrows()
            .map(|g| {
                let (s, t) = (self.groupoid.source(g), self.groupoid.target(g));
                ChainMap::new(
                    fibers[s.0].clone(),
                    fibers[t.0].clone(),
                    BTreeMap::from([(degree, self.action[g.0].clone())]),
                )
                .expect("shapes were checked on construction")
            })
            .collect();
        RepUpToWeakHomotopy {
            groupoid: self.groupoid.clone(),
            fibers,
            action,
        }
    }
}

/// Per-arrow chain maps between per-object complexes, unital and functorial up to
/// chain homotopy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepUpToWeakHomotopy<K> {
    groupoid: FiniteGroupoid,
    fibers: Vec<Arc<ComplexFiber<K>>>,
    action: Vec<ChainMap<K>>,
}

impl<K: Field> RepUpToWeakHomotopy<K> {
    /// Checks that each chain map runs between the fibers over its endpoints.
    pub fn new(
        groupoid: FiniteGroupoid,
        fibers: Vec<Arc<ComplexFiber<K>>>,
        action: Vec<ChainMap<K>>,
    ) -> Result<Self> {
        if fibers.len() != groupoid.object_count() || action.len() != groupoid.arrow_count() {
            return Err(Error::DimensionMismatch {
                op: "RepUpToWeakHomotopy::new",
                detail: format!(
                    "{} fibers and {} chain maps for {} objects and {} arrows",
                    fibers.len(),
                    action.len(),
                    groupoid.object_count(),
                    groupoid.arrow_count()
                ),
            });
        }
        for g in groupoid.arrows() {
            let (s, t) = (groupoid.source(g), groupoid.target(g));
            let m = &action[g.0];
            if **m.source() != *fibers[s.0] || **m.target() != *fibers[t.0] {
                return Err(Error::InvalidRepresentation(format!(
                    "arrow {} does not map the fiber over {} to the fiber over {}",
                    groupoid.arrow_name(g),
                    groupoid.object_name(s),
                    groupoid.object_name(t)
                )));
            }
        }
        Ok(RepUpToWeakHomotopy {
            groupoid,
            fibers,
            action,
        })
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn fiber(&self, x: ObjectId) -> &Arc<ComplexFiber<K>> {
        &self.fibers[x.0]
    }

    pub fn fibers(&self) -> &[Arc<ComplexFiber<K>>] {
        &self.fibers
    }

    pub fn action(&self, g: ArrowId) -> &ChainMap<K> {
        &self.action[g.0]
    }

    /// All differentials vanish, so the representation is a graded strict one.
    pub fn has_zero_differentials(&self) -> bool {
        self.fibers
            .iter()
            .all(|c| c.degrees().all(|i| c.differential(i).is_zero()))
    }

    /// Smallest degree interval containing every fiber.
    pub fn degree_span(&self) -> (i32, i32) {
        let lo = self.fibers.iter().map(|c| c.lo()).min().unwrap_or(0);
        let hi = self.fibers.iter().map(|c| c.hi()).max().unwrap_or(0);
        (lo, hi)
    }
}

/// Per-object nonzero scales of the chosen determinant or Berezinian elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trivialization<K> {
    scales: Vec<K>,
}

impl<K: Field> Trivialization<K> {
    pub fn new(scales: Vec<K>) -> Result<Self> {
        if let Some(i) = scales.iter().position(|s| s.is_zero()) {
            return Err(Error::ZeroValue(format!(
                "trivialization scale of object #{i}"
            )));
        }
        Ok(Trivialization { scales })
    }

    /// The standard coordinate elements.
    pub fn standard(objects: usize) -> Self {
        Trivialization {
            scales: vec![K::one(); objects],
        }
    }

    pub fn scale(&self, x: ObjectId) -> &K {
        &self.scales[x.0]
    }

    pub fn scales(&self) -> &[K] {
        &self.scales
    }

    pub fn ber(&self, x: ObjectId) -> BerTrivialization<K> {
        BerTrivialization::new(self.scales[x.0].clone()).expect("scales are nonzero")
    }

    /// `f · σ` for a degree-0 cochain `f`.
    pub fn rescaled(&self, f: &Cochain<K>) -> Result<Self> {
        if f.degree() != 0 || f.object_values().len() != self.scales.len() {
            return Err(Error::DimensionMismatch {
                op: "Trivialization::rescaled",
                detail: "expected a degree-0 cochain on the same objects".into(),
            });
        }
        Ok(Trivialization {
            scales: self
                .scales
                .iter()
                .zip(f.object_values())
                .map(|(s, v)| s.clone() * v)
                .collect(),
        })
    }

    fn check_len(&self, g: &FiniteGroupoid) -> Result<()> {
        if self.scales.len() != g.object_count() {
            return Err(Error::DimensionMismatch {
                op: "Trivialization",
                detail: format!(
                    "{} scales for {} objects",
                    self.scales.len(),
                    g.object_count()
                ),
            });
        }
        Ok(())
    }
}

fn pair_name(g: &FiniteGroupoid, a: ArrowId, b: ArrowId) -> String {
    format!("({}, {})", g.arrow_name(a), g.arrow_name(b))
}

pub fn verify_line_rep<K: Field>(r: &LineRep<K>) -> ValidationReport {
    let g = &r.groupoid;
    let mut report = ValidationReport::new();
    for a in g.arrows() {
        if r.action(a).is_zero() {
            report.push(
                "invertibility",
                format!("arrow {} acts by 0", g.arrow_name(a)),
            );
        }
    }
    for x in g.objects() {
        let e = g.identity(x);
        if !r.action(e).is_one() {
            report.push(
                "unitality",
                format!("identity {} acts by {}", g.arrow_name(e), r.action(e)),
            );
        }
    }
    for t in g.composable_tuples(2) {
        let (a, b) = (t.0[0], t.0[1]);
        let lhs = r.action(a).clone() * r.action(b).clone();
        if lhs != *r.action(g.mul(a, b)) {
            report.push(
                "functoriality",
                format!("Δ fails on {}", pair_name(g, a, b)),
            );
        }
    }
    report
}

pub fn verify_vector_rep<K: Field>(r: &VectorRep<K>) -> ValidationReport {
    let g = &r.groupoid;
    let mut report = ValidationReport::new();
    for a in g.arrows() {
        let m = r.action(a);
        if !m.is_square() || m.det().map_or(true, |d| d.is_zero()) {
            report.push(
                "invertibility",
                format!("arrow {} acts by a singular matrix", g.arrow_name(a)),
            );
        }
    }
    for x in g.objects() {
        let e = g.identity(x);
        if !r.action(e).is_identity() {
            report.push(
                "unitality",
                format!("identity {} does not act by the identity", g.arrow_name(e)),
            );
        }
    }
    for t in g.composable_tuples(2) {
        let (a, b) = (t.0[0], t.0[1]);
        if &(r.action(a) * r.action(b)) != r.action(g.mul(a, b)) {
            report.push(
                "functoriality",
                format!("Δ fails on {}", pair_name(g, a, b)),
            );
        }
    }
    report
}

/// `φ_σ(g) = Δ_g · σ(s(g)) / σ(t(g))`.
pub fn characteristic_function<K: Field>(
    r: &LineRep<K>,
    sigma: &Trivialization<K>,
) -> Result<Cochain<K>> {
    let g = &r.groupoid;
    sigma.check_len(g)?;
    let values: Vec<K> = g
        .arrows()
        .map(|a| {
            r.action(a).clone() * sigma.scale(g.source(a)).clone()
                / sigma.scale(g.target(a)).clone()
        })
        .collect();
    Cochain::on_arrows(g, &values)
}

/// Pointwise product of two line representations of the same groupoid.
pub fn tensor<K: Field>(a: &LineRep<K>, b: &LineRep<K>) -> Result<LineRep<K>> {
    if a.groupoid != b.groupoid {
        return Err(Error::GroupoidMismatch(
            "tensor factors live on different groupoids".into(),
        ));
    }
    let action = a
        .action
        .iter()
        .zip(&b.action)
        .map(|(x, y)| x.clone() * y.clone())
        .collect();
    LineRep::new(a.groupoid.clone(), action)
}

/// `|φ_σ|`, the square root of `|φ|` of the tensor square; a cocycle with positive values.
pub fn abs_plus_function<K: Field>(
    r: &LineRep<K>,
    sigma: &Trivialization<K>,
) -> Result<Cochain<K>> {
    let phi = characteristic_function(r, sigma)?;
    let values: Vec<K> = phi.arrow_values().iter().map(|v| v.abs()).collect();
    Cochain::on_arrows(&r.groupoid, &values)
}

/// Action on the top exterior power: `g ↦ det Δ_g`.
pub fn det_representation<K: Field>(r: &VectorRep<K>) -> Result<LineRep<K>> {
    let g = &r.groupoid;
    let action = g
        .arrows()
        .map(|a| {
            let d = r.action(a).det()?;
            if d.is_zero() {
                return Err(Error::InvalidRepresentation(format!(
                    "arrow {} acts by a singular matrix",
                    g.arrow_name(a)
                )));
            }
            Ok(d)
        })
        .collect::<Result<Vec<_>>>()?;
    LineRep::new(g.clone(), action)
}

/// Modular class of a vector representation. Trivial iff some rescaling of `σ` is invariant.
pub fn modular_class_vector<K: Field>(
    r: &VectorRep<K>,
    sigma: &Trivialization<K>,
) -> Result<ClassReport<K>> {
    let det = det_representation(r)?;
    coboundary_solve_1(&r.groupoid, &characteristic_function(&det, sigma)?)
}

/// Outcome of [`verify_ruth`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuthReport<K> {
    pub report: ValidationReport,
    /// `Ω_{g,h}` with `Δ_g Δ_h - Δ_{g·h} = ∂Ω + Ω∂`, for every pair where one was found.
    pub certificates: BTreeMap<(ArrowId, ArrowId), Homotopy<K>>,
}

impl<K> RuthReport<K> {
    pub fn is_valid(&self) -> bool {
        self.report.is_valid()
    }
}

/// Checks complexes, chain maps, unitality, and solves for a homotopy on every composable pair.
pub fn verify_ruth<K: Field>(r: &RepUpToWeakHomotopy<K>) -> RuthReport<K> {
    let g = &r.groupoid;
    let mut report = ValidationReport::new();
    let mut certificates = BTreeMap::new();
    for x in g.objects() {
        let c = verify_complex(&r.fibers[x.0]);
        if !c.is_valid() {
            report.push("complex", format!("fiber over {}: {}", g.object_name(x), c));
        }
    }
    if !report.is_valid() {
        return RuthReport {
            report,
            certificates,
        };
    }
    let mut chain_ok = vec![true; g.arrow_count()];
    for a in g.arrows() {
        if !verify_chain_map(r.action(a)).is_valid() {
            chain_ok[a.0] = false;
            report.push(
                "chain map",
                format!("Δ_{} does not commute with ∂", g.arrow_name(a)),
            );
        }
    }
    for x in g.objects() {
        let e = g.identity(x);
        if *r.action(e) != ChainMap::identity(r.fibers[x.0].clone()) {
            report.push(
                "unitality",
                format!("Δ_{} is not the identity", g.arrow_name(e)),
            );
        }
    }
    for t in g.composable_tuples(2) {
        let (a, b) = (t.0[0], t.0[1]);
        let ab = g.mul(a, b);
        if !(chain_ok[a.0] && chain_ok[b.0] && chain_ok[ab.0]) {
            continue;
        }
        let composite = r.action(a).after(r.action(b)).expect("endpoints match");
        match are_homotopic(&composite, r.action(ab)) {
            Ok(Some(h)) => {
                certificates.insert((a, b), h);
            }
            Ok(None) => report.push(
                "homotopy functoriality",
                format!(
                    "Δ_{}Δ_{} is not homotopic to Δ_{}",
                    g.arrow_name(a),
                    g.arrow_name(b),
                    g.arrow_name(ab)
                ),
            ),
            Err(e) => report.push(
                "homotopy functoriality",
                format!("{}: {e}", pair_name(g, a, b)),
            ),
        }
    }
    RuthReport {
        report,
        certificates,
    }
}

/// Checks a supplied `Ω` for the pair `(a, b)`: `Δ_a Δ_b - Δ_{a·b} = ∂Ω + Ω∂`.
pub fn verify_certificate<K: Field>(
    r: &RepUpToWeakHomotopy<K>,
    a: ArrowId,
    b: ArrowId,
    omega: &Homotopy<K>,
) -> Result<bool> {
    let g = &r.groupoid;
    if !g.composable(a, b) {
        return Err(Error::Precondition {
            op: "verify_certificate",
            detail: format!("{} is not composable", pair_name(g, a, b)),
        });
    }
    let lhs = r
        .action(a)
        .after(r.action(b))?
        .try_sub(r.action(g.mul(a, b)))?;
    let rhs = omega.boundary(lhs.source(), lhs.target())?;
    Ok(lhs == rhs)
}

fn require_equal_graded_dims<K: Field>(r: &RepUpToWeakHomotopy<K>) -> Result<()> {
    let g = &r.groupoid;
    for a in g.arrows() {
        let (s, t) = (g.source(a), g.target(a));
        if !r.fibers[s.0].same_graded_dims(&r.fibers[t.0]) {
            return Err(Error::InvalidRepresentation(format!(
                "fibers over {} and {} (joined by arrow {}) differ in graded dimension",
                g.object_name(s),
                g.object_name(t),
                g.arrow_name(a)
            )));
        }
    }
    Ok(())
}

/// The induced representation on the Berezinian line, with `σ` folded in: the scalar of
/// arrow `g` is `Ber_σ` of an invertible replacement of `Δ_g`.
pub fn induced_ber_rep<K: Field>(
    r: &RepUpToWeakHomotopy<K>,
    sigma: &Trivialization<K>,
) -> Result<LineRep<K>> {
    induced_ber_rep_with(r, sigma, ScanOrder::Natural)
}

pub fn induced_ber_rep_with<K: Field>(
    r: &RepUpToWeakHomotopy<K>,
    sigma: &Trivialization<K>,
    order: ScanOrder,
) -> Result<LineRep<K>> {
    let g = &r.groupoid;
    sigma.check_len(g)?;
    require_equal_graded_dims(r)?;
    let action = g
        .arrows()
        .map(|a| {
            berezinian_class_with(
                r.action(a),
                &sigma.ber(g.source(a)),
                &sigma.ber(g.target(a)),
                order,
            )
            .map_err(|e| match e {
                Error::NotHomotopyEquivalence { degree } => Error::Inconsistent(format!(
                    "Δ_{} is not a homotopy equivalence (cohomology degree {degree}); \
                     a unital representation up to weak homotopy cannot have such an arrow",
                    g.arrow_name(a)
                )),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let line = LineRep::new(g.clone(), action)?;
    let check = verify_line_rep(&line);
    if !check.is_valid() {
        return Err(Error::Inconsistent(format!(
            "induced Berezinian representation is not strict: {check}"
        )));
    }
    Ok(line)
}

/// Modular class of a representation up to weak homotopy. The cocycle in the report is the
/// Berezinian function `g ↦ Ber_σ(Δ_g)`.
pub fn modular_class_ruth<K: Field>(
    r: &RepUpToWeakHomotopy<K>,
    sigma: &Trivialization<K>,
) -> Result<ClassReport<K>> {
    let line = induced_ber_rep(r, sigma)?;
    let phi = characteristic_function(&line, &Trivialization::standard(r.groupoid.object_count()))?;
    coboundary_solve_1(&r.groupoid, &phi)
}

/// Induced strict representation on `H^i`, in the cohomology bases of the fiber
/// decompositions.
pub fn cohomology_representation<K: Field>(
    r: &RepUpToWeakHomotopy<K>,
    degree: i32,
) -> Result<VectorRep<K>> {
    let g = &r.groupoid;
    let decs = r
        .fibers
        .iter()
        .map(|c| decompose(c))
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = decs.iter().map(|d| d.cohomology_dim(degree)).collect();
    let mut action = Vec::with_capacity(g.arrow_count());
    for a in g.arrows() {
        let (s, t) = (g.source(a), g.target(a));
        if dims[s.0] != dims[t.0] {
            return Err(Error::Inconsistent(format!(
                "dim H^{degree} differs across arrow {} ({} vs {})",
                g.arrow_name(a),
                dims[s.0],
                dims[t.0]
            )));
        }
        let blocks = BlockForm::new(r.action(a), &decs[s.0], &decs[t.0]);
        action.push(blocks.cohomology_block(degree));
    }
    let rep = VectorRep::new(g.clone(), dims, action)?;
    let check = verify_vector_rep(&rep);
    if !check.is_valid() {
        return Err(Error::Inconsistent(format!(
            "induced representation on H^{degree} is not strict: {check}"
        )));
    }
    Ok(rep)
}

/// Compares the modular class of `r` with the alternating product of the modular classes of
/// its cohomology representations. Both sides are computed independently.
pub fn regular_factorization_check<K: Field>(
    r: &RepUpToWeakHomotopy<K>,
    sigma: &Trivialization<K>,
) -> Result<bool> {
    let g = &r.groupoid;
    let total = modular_class_ruth(r, sigma)?.cocycle;
    let standard = Trivialization::standard(g.object_count());
    let (lo, hi) = r.degree_span();
    let mut product = Cochain::constant(g, 1, K::one())?;
    for i in lo..=hi {
        let h = cohomology_representation(r, i)?;
        let phi = characteristic_function(&det_representation(&h)?, &standard)?;
        product = if i.rem_euclid(2) == 0 {
            product.mul(&phi)?
        } else {
            product.div(&phi)?
        };
    }
    class_equal(g, &total, &product)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groupoid::{coboundary, is_cocycle_1};
    use crate::Rational;

    type M = Matrix<Rational>;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn ones(g: &FiniteGroupoid) -> Trivialization<Rational> {
        Trivialization::standard(g.object_count())
    }

    fn pair2_line(v: i64) -> LineRep<Rational> {
        let p = fixtures::pair2();
        let mut a = vec![q(1); 4];
        a[p.arrow_by_name("g").unwrap().0] = q(v);
        a[p.arrow_by_name("g_inv").unwrap().0] = q(1) / q(v);
        LineRep::new(p, a).unwrap()
    }

    #[test]
    fn verify_line_rep_examples() {
        assert!(verify_line_rep(&LineRep::<Rational>::trivial(fixtures::z2())).is_valid());
        assert!(verify_line_rep(&fixtures::z2_sign::<Rational>()).is_valid());
        let bad = LineRep::new(fixtures::z2(), vec![q(1), q(2)]).unwrap();
        let report = verify_line_rep(&bad);
        assert!(report.has("functoriality"));
        assert!(report.to_string().contains("(tau, tau)"));
        assert!(LineRep::new(fixtures::z2(), vec![q(1), q(0)]).is_err());
    }

    #[test]
    fn verify_vector_rep_catches_singular_and_nonunital() {
        let z2 = fixtures::z2();
        let r = VectorRep::new(z2.clone(), vec![2], vec![M::identity(2), M::zeros(2, 2)]).unwrap();
        let report = verify_vector_rep(&r);
        assert!(report.has("invertibility"));
        assert!(report.has("functoriality"));
        let r = VectorRep::new(
            z2,
            vec![1],
            vec![M::from_i64(&[&[2]]), M::from_i64(&[&[1]])],
        )
        .unwrap();
        assert!(verify_vector_rep(&r).has("unitality"));
    }

    #[test]
    fn characteristic_function_examples() {
        let r = pair2_line(5);
        let p = r.groupoid().clone();
        let g = p.arrow_by_name("g").unwrap();
        let phi = characteristic_function(&r, &ones(&p)).unwrap();
        assert_eq!(*phi.at_arrow(g), q(5));
        assert!(is_cocycle_1(&p, &phi));

        let sigma = Trivialization::new(vec![q(2), q(1)]).unwrap();
        let phi2 = characteristic_function(&r, &sigma).unwrap();
        assert_eq!(*phi2.at_arrow(g), q(10));
        assert!(class_equal(&p, &phi2, &phi).unwrap());
        // φ_{fσ} = φ_σ · δf with f = (2, 1).
        let f = Cochain::on_objects(&p, &[q(2), q(1)]).unwrap();
        assert_eq!(phi2, phi.mul(&coboundary(&p, &f).unwrap()).unwrap());

        let z2 = fixtures::z2();
        let s = characteristic_function(&fixtures::z2_sign::<Rational>(), &ones(&z2)).unwrap();
        assert_eq!(*s.at_arrow(ArrowId(1)), q(-1));
    }

    #[test]
    fn tensor_examples() {
        let sign = fixtures::z2_sign::<Rational>();
        let triv = LineRep::trivial(fixtures::z2());
        assert_eq!(tensor(&sign, &triv).unwrap(), sign);
        assert_eq!(tensor(&sign, &sign).unwrap(), triv);
        assert!(tensor(&sign, &pair2_line(2)).is_err());

        let (a, b) = (pair2_line(3), pair2_line(-7));
        let p = a.groupoid().clone();
        let sigma = Trivialization::new(vec![q(2), q(-3)]).unwrap();
        let sq = Trivialization::new(vec![q(4), q(9)]).unwrap();
        let lhs = characteristic_function(&tensor(&a, &b).unwrap(), &sq).unwrap();
        let rhs = characteristic_function(&a, &sigma)
            .unwrap()
            .mul(&characteristic_function(&b, &sigma).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        let _ = p;
    }

    #[test]
    fn abs_plus_examples() {
        let z2 = fixtures::z2();
        let plus = abs_plus_function(&fixtures::z2_sign::<Rational>(), &ones(&z2)).unwrap();
        assert!(plus.is_one());
        let pos = pair2_line(3);
        let p = pos.groupoid().clone();
        assert_eq!(
            abs_plus_function(&pos, &ones(&p)).unwrap(),
            characteristic_function(&pos, &ones(&p)).unwrap()
        );
        let neg = pair2_line(-2);
        let g = p.arrow_by_name("g").unwrap();
        let plus = abs_plus_function(&neg, &ones(&p)).unwrap();
        assert_eq!(*plus.at_arrow(g), q(2));
        assert!(is_cocycle_1(&p, &plus));
    }

    #[test]
    fn det_representation_examples() {
        let z2 = fixtures::z2();
        let swap = VectorRep::new(
            z2.clone(),
            vec![2],
            vec![M::identity(2), M::from_i64(&[&[0, 1], &[1, 0]])],
        )
        .unwrap();
        assert!(verify_vector_rep(&swap).is_valid());
        let det = det_representation(&swap).unwrap();
        assert_eq!(det, fixtures::z2_sign());

        let line = VectorRep::new(
            z2.clone(),
            vec![1],
            vec![M::identity(1), M::from_i64(&[&[-1]])],
        )
        .unwrap();
        assert_eq!(det_representation(&line).unwrap().actions(), &[q(1), q(-1)]);

        let p = fixtures::pair2();
        let g = p.arrow_by_name("g").unwrap();
        let mut action = vec![M::identity(2); 4];
        action[g.0] = M::from_i64(&[&[2, 0], &[0, 3]]);
        action[p.arrow_by_name("g_inv").unwrap().0] =
            M::from_i64(&[&[2, 0], &[0, 3]]).inverse().unwrap().unwrap();
        let r = VectorRep::new(p, vec![2, 2], action).unwrap();
        assert_eq!(*det_representation(&r).unwrap().action(g), q(6));

        let report = modular_class_vector(&swap, &ones(&z2)).unwrap();
        assert!(!report.is_coboundary);
        let report = modular_class_vector(&r, &ones(r.groupoid())).unwrap();
        assert!(report.is_coboundary);
        let triv = VectorRep::new(z2.clone(), vec![3], vec![M::identity(3); 2]).unwrap();
        let report = modular_class_vector(&triv, &ones(&z2)).unwrap();
        assert!(report.witness.unwrap().is_one());
    }

    #[test]
    fn verify_ruth_examples() {
        let z2 = fixtures::z2();
        let swap = VectorRep::new(
            z2.clone(),
            vec![2],
            vec![M::identity(2), M::from_i64(&[&[0, 1], &[1, 0]])],
        )
        .unwrap();
        let report = verify_ruth(&swap.in_degree(0));
        assert!(report.is_valid());
        assert!(report.certificates.values().all(|h| h.is_zero()));

        let acyc = fixtures::z2_acyclic_zero::<Rational>();
        let report = verify_ruth(&acyc);
        assert!(report.is_valid(), "{}", report.report);
        let (tau, _) = (ArrowId(1), ());
        let omega = &report.certificates[&(tau, tau)];
        assert!(verify_certificate(&acyc, tau, tau, omega).unwrap());
        let fake = Homotopy::zero(acyc.fiber(ObjectId(0)), acyc.fiber(ObjectId(0)));
        assert!(!verify_certificate(&acyc, tau, tau, &fake).unwrap());

        let c = Arc::new(ComplexFiber::concentrated(0, 1));
        let two = ChainMap::new(
            c.clone(),
            c.clone(),
            BTreeMap::from([(0, M::from_i64(&[&[2]]))]),
        )
        .unwrap();
        let bad = RepUpToWeakHomotopy::new(z2, vec![c.clone()], vec![ChainMap::identity(c), two])
            .unwrap();
        let report = verify_ruth(&bad);
        assert!(report.report.has("homotopy functoriality"));
        assert!(report.report.to_string().contains("Δ_tauΔ_tau"));
    }

    #[test]
    fn induced_ber_rep_examples() {
        let z2 = fixtures::z2();
        let swap = VectorRep::new(
            z2.clone(),
            vec![2],
            vec![M::identity(2), M::from_i64(&[&[0, 1], &[1, 0]])],
        )
        .unwrap();
        assert_eq!(
            induced_ber_rep(&swap.in_degree(0), &ones(&z2)).unwrap(),
            det_representation(&swap).unwrap()
        );

        let acyc = fixtures::z2_acyclic_zero::<Rational>();
        assert_eq!(
            induced_ber_rep(&acyc, &ones(&z2)).unwrap().actions(),
            &[q(1), q(1)]
        );

        let odd = fixtures::z2_sign_odd::<Rational>();
        assert_eq!(
            induced_ber_rep(&odd, &ones(&z2)).unwrap().actions(),
            &[q(1), q(-1)]
        );
    }

    #[test]
    fn induced_ber_rep_rejects_unequal_fibers() {
        let p = fixtures::pair2();
        let a = Arc::new(ComplexFiber::concentrated(0, 1));
        let b = Arc::new(ComplexFiber::concentrated(0, 2));
        let r = RepUpToWeakHomotopy::new(
            p.clone(),
            vec![a.clone(), b.clone()],
            vec![
                ChainMap::identity(a.clone()),
                ChainMap::identity(b.clone()),
                ChainMap::zero(a.clone(), b.clone()),
                ChainMap::zero(b, a),
            ],
        )
        .unwrap();
        let err = induced_ber_rep(&r, &ones(&p)).unwrap_err();
        assert!(err.to_string().contains("arrow g"));
    }

    #[test]
    fn induced_ber_rep_flags_degenerate_arrows() {
        let z2 = fixtures::z2();
        let c = Arc::new(ComplexFiber::concentrated(0, 1));
        let r = RepUpToWeakHomotopy::new(
            z2.clone(),
            vec![c.clone()],
            vec![ChainMap::identity(c.clone()), ChainMap::zero(c.clone(), c)],
        )
        .unwrap();
        assert!(matches!(
            induced_ber_rep(&r, &ones(&z2)),
            Err(Error::Inconsistent(_))
        ));
    }

    #[test]
    fn modular_class_ruth_examples() {
        let z2 = fixtures::z2();
        let odd = fixtures::z2_sign_odd::<Rational>();
        let report = modular_class_ruth(&odd, &ones(&z2)).unwrap();
        assert!(!report.is_coboundary);
        assert_eq!(report.obstructions, vec![(ArrowId(1), q(-1))]);

        let acyc = fixtures::z2_acyclic_zero::<Rational>();
        let report = modular_class_ruth(&acyc, &ones(&z2)).unwrap();
        assert!(report.cocycle.is_one());
        assert!(report.is_coboundary);
    }

    #[test]
    fn cohomology_representation_examples() {
        let z2 = fixtures::z2();
        let swap = VectorRep::new(
            z2.clone(),
            vec![2],
            vec![M::identity(2), M::from_i64(&[&[0, 1], &[1, 0]])],
        )
        .unwrap();
        assert_eq!(
            cohomology_representation(&swap.in_degree(0), 0).unwrap(),
            swap
        );

        let acyc = fixtures::z2_acyclic_zero::<Rational>();
        let h0 = cohomology_representation(&acyc, 0).unwrap();
        assert_eq!(h0.dims(), &[0]);

        // Fiber K^2 -> K -> 0 with ∂⁰ = [1 0]; τ acts by -1 on the kernel direction.
        let c = Arc::new(
            ComplexFiber::new(
                0,
                vec![2, 1, 0],
                vec![M::from_i64(&[&[1, 0]]), M::zeros(0, 1)],
            )
            .unwrap(),
        );
        let tau = ChainMap::new(
            c.clone(),
            c.clone(),
            BTreeMap::from([
                (0, M::from_i64(&[&[1, 0], &[0, -1]])),
                (1, M::from_i64(&[&[1]])),
            ]),
        )
        .unwrap();
        let r = RepUpToWeakHomotopy::new(
            z2.clone(),
            vec![c.clone()],
            vec![ChainMap::identity(c), tau],
        )
        .unwrap();
        assert!(verify_ruth(&r).is_valid());
        let h0 = cohomology_representation(&r, 0).unwrap();
        let h1 = cohomology_representation(&r, 1).unwrap();
        assert_eq!((h0.dims(), h1.dims()), (&[1usize][..], &[0usize][..]));
        assert_eq!(*h0.action(ArrowId(1)), M::from_i64(&[&[-1]]));
        assert!(regular_factorization_check(&r, &ones(&z2)).unwrap());
        assert!(!modular_class_ruth(&r, &ones(&z2)).unwrap().is_coboundary);
    }

    #[test]
    fn regular_factorization_trivial_cases() {
        let z2 = fixtures::z2();
        let swap = VectorRep::new(
            z2.clone(),
            vec![2],
            vec![M::identity(2), M::from_i64(&[&[0, 1], &[1, 0]])],
        )
        .unwrap();
        assert!(regular_factorization_check(&swap.in_degree(0), &ones(&z2)).unwrap());
        assert!(regular_factorization_check(&fixtures::z2_acyclic_zero(), &ones(&z2)).unwrap());
        assert!(regular_factorization_check(&fixtures::z2_sign_odd(), &ones(&z2)).unwrap());
    }

    #[test]
    fn one_degree_reduction_matches_vector_class() {
        let z2 = fixtures::z2();
        let swap = VectorRep::new(
            z2.clone(),
            vec![2],
            vec![M::identity(2), M::from_i64(&[&[0, 1], &[1, 0]])],
        )
        .unwrap();
        let sigma = Trivialization::new(vec![q(3)]).unwrap();
        assert_eq!(
            modular_class_ruth(&swap.in_degree(0), &sigma).unwrap(),
            modular_class_vector(&swap, &sigma).unwrap()
        );
    }
}
