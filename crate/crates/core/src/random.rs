//! Random generators for property tests: small exact scalars, matrices, complexes in
//! controlled position, chain maps with prescribed cohomology behavior, groupoids, cochains,
//! and representations (strict and up to weak homotopy).
//!
//! Every generator takes an explicit [`Rng`], so seeded runs are reproducible.

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complexes::{ChainMap, ComplexFiber, Homotopy};
use crate::groupoid::{ArrowId, Cochain, FiniteGroupoid, ObjectId};
use crate::linalg::Matrix;
use crate::reps::{LineRep, RepUpToWeakHomotopy, Trivialization};
use crate::scalar::Field;

/// `p/q` with `|p| ≤ 4`, `1 ≤ q ≤ 3`; zero about one time in nine.
pub fn scalar<K: Field, R: Rng + ?Sized>(rng: &mut R) -> K {
    let p = rng.gen_range(-4..=4);
    let q = rng.gen_range(1..=3);
    K::from_i64(p) / K::from_i64(q)
}

pub fn nonzero_scalar<K: Field, R: Rng + ?Sized>(rng: &mut R) -> K {
    let p = *[-4, -3, -2, -1, 1, 2, 3, 4].choose(rng).unwrap();
    let q = rng.gen_range(1..=3);
    K::from_i64(p) / K::from_i64(q)
}

/// Entries from [`scalar`], with roughly half of them zero to keep ranks varied.
pub fn matrix<K: Field, R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix<K> {
    let data = (0..rows * cols)
        .map(|_| {
            if rng.gen_bool(0.4) {
                K::zero()
            } else {
                scalar(rng)
            }
        })
        .collect();
    Matrix::from_vec(rows, cols, data).expect("length matches")
}

/// `Π·L·U` with unit lower `L`, upper `U` with nonzero diagonal and a random row
/// permutation `Π`; invertible by construction.
pub fn invertible<K: Field, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix<K> {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            if c < r {
                l[(r, c)] = scalar(rng);
            } else if c == r {
                u[(r, c)] = nonzero_scalar(rng);
            } else {
                u[(r, c)] = scalar(rng);
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut p = Matrix::zeros(n, n);
    for (r, &c) in perm.iter().enumerate() {
        p[(r, c)] = K::one();
    }
    &p * &(&l * &u)
}

/// Boundary and cohomology ranks of a bounded complex. Degree `i` splits as
/// `B^i ⊕ H^i ⊕ L^i` with `dim L^i = dim B^{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexShape {
    lo: i32,
    /// `b[k] = dim B^{lo+k}` for `k` in `0..=len`, with `b[0] = b[len] = 0`.
    boundaries: Vec<usize>,
    cohomology: Vec<usize>,
}

impl ComplexShape {
    pub fn new(lo: i32, boundaries: Vec<usize>, cohomology: Vec<usize>) -> Self {
        assert_eq!(
            boundaries.len(),
            cohomology.len() + 1,
            "one more boundary rank than degrees"
        );
        assert!(
            boundaries.first() == Some(&0) && boundaries.last() == Some(&0),
            "no boundaries enter or leave the range"
        );
        ComplexShape {
            lo,
            boundaries,
            cohomology,
        }
    }

    /// Degrees `lo..=hi`, each of dimension at most `max_dim`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, lo: i32, hi: i32, max_dim: usize) -> Self {
        Self::random_with(rng, lo, hi, max_dim, false)
    }

    /// Like [`random`](Self::random) with no cohomology.
    pub fn random_acyclic<R: Rng + ?Sized>(rng: &mut R, lo: i32, hi: i32, max_dim: usize) -> Self {
        Self::random_with(rng, lo, hi, max_dim, true)
    }

    fn random_with<R: Rng + ?Sized>(
        rng: &mut R,
        lo: i32,
        hi: i32,
        max_dim: usize,
        acyclic: bool,
    ) -> Self {
        let len = (hi - lo + 1) as usize;
        let mut boundaries = vec![0];
        let mut cohomology = Vec::with_capacity(len);
        for k in 0..len {
            let room = max_dim - boundaries[k];
            let next = if k + 1 == len {
                0
            } else {
                rng.gen_range(0..=room)
            };
            cohomology.push(if acyclic {
                0
            } else {
                rng.gen_range(0..=room - next)
            });
            boundaries.push(next);
        }
        ComplexShape {
            lo,
            boundaries,
            cohomology,
        }
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.cohomology.len() as i32 - 1
    }

    pub fn boundary_dim(&self, i: i32) -> usize {
        self.index(i).map_or(0, |k| self.boundaries[k])
    }

    pub fn cohomology_dim(&self, i: i32) -> usize {
        self.index(i).map_or(0, |k| self.cohomology[k])
    }

    pub fn dim(&self, i: i32) -> usize {
        match self.index(i) {
            Some(k) => self.boundaries[k] + self.cohomology[k] + self.boundaries[k + 1],
            None => 0,
        }
    }

    fn index(&self, i: i32) -> Option<usize> {
        (self.lo..=self.hi())
            .contains(&i)
            .then(|| (i - self.lo) as usize)
    }

    /// `∂^i` in block coordinates: the identity from `L^i` onto `B^{i+1}`.
    fn standard_differential<K: Field>(&self, i: i32) -> Matrix<K> {
        let (rows, cols) = (self.dim(i + 1), self.dim(i));
        let b = self.boundary_dim(i + 1);
        let mut d = Matrix::zeros(rows, cols);
        for k in 0..b {
            d[(k, cols - b + k)] = K::one();
        }
        d
    }
}

/// A complex together with the per-degree frames `P^i` that put it in block form:
/// `∂^i = P^{i+1} ∂_std^i (P^i)^{-1}`.
#[derive(Debug, Clone)]
pub struct Presented<K> {
    pub shape: ComplexShape,
    pub frames: Vec<Matrix<K>>,
    pub fiber: Arc<ComplexFiber<K>>,
}

impl<K: Field> Presented<K> {
    pub fn new(shape: ComplexShape, frames: Vec<Matrix<K>>) -> Self {
        let lo = shape.lo();
        let inverses: Vec<Matrix<K>> = frames
            .iter()
            .map(|p| p.inverse().unwrap().expect("frames are invertible"))
            .collect();
        let dims = (lo..=shape.hi()).map(|i| shape.dim(i)).collect();
        let differentials = (lo..shape.hi())
            .map(|i| {
                let k = (i - lo) as usize;
                &(&frames[k + 1] * &shape.standard_differential(i)) * &inverses[k]
            })
            .collect();
        let fiber = Arc::new(ComplexFiber::new(lo, dims, differentials).expect("shapes agree"));
        Presented {
            shape,
            frames,
            fiber,
        }
    }

    pub fn frame(&self, i: i32) -> Matrix<K> {
        let k = i - self.shape.lo();
        if k < 0 || k as usize >= self.frames.len() {
            Matrix::identity(0)
        } else {
            self.frames[k as usize].clone()
        }
    }
}

/// A complex of the given shape in random position.
pub fn presented<K: Field, R: Rng + ?Sized>(rng: &mut R, shape: ComplexShape) -> Presented<K> {
    let frames = (shape.lo()..=shape.hi())
        .map(|i| invertible(rng, shape.dim(i)))
        .collect();
    Presented::new(shape, frames)
}

/// A random complex in degrees `lo..=hi` with dimensions at most `max_dim`.
pub fn complex<K: Field, R: Rng + ?Sized>(
    rng: &mut R,
    lo: i32,
    hi: i32,
    max_dim: usize,
) -> Presented<K> {
    let shape = ComplexShape::random(rng, lo, hi, max_dim);
    presented(rng, shape)
}

/// Which blocks of a generated chain map are forced invertible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    /// Anything goes, including maps that lose cohomology.
    Arbitrary,
    /// Cohomology blocks invertible; boundary blocks arbitrary (often singular or zero).
    Equivalence,
    /// Every diagonal block invertible, so the map is a chain isomorphism.
    Isomorphism,
}

/// The chain map with block form
/// `[[X^i, C, D], [0, A^i, E], [0, 0, X^{i+1}]]` between two presentations of the same shape.
/// `x[i]` and `a[i]` give the diagonal blocks; the off-diagonal blocks come from `upper`.
pub fn chain_map_from_blocks<K: Field>(
    src: &Presented<K>,
    tgt: &Presented<K>,
    x: &BTreeMap<i32, Matrix<K>>,
    a: &BTreeMap<i32, Matrix<K>>,
    mut upper: impl FnMut(usize, usize) -> Matrix<K>,
) -> ChainMap<K> {
    assert_eq!(src.shape, tgt.shape, "presentations must share a shape");
    let shape = &src.shape;
    let components = (shape.lo()..=shape.hi())
        .map(|i| {
            let (b, h, l) = (
                shape.boundary_dim(i),
                shape.cohomology_dim(i),
                shape.boundary_dim(i + 1),
            );
            let n = b + h + l;
            let mut t = Matrix::zeros(n, n);
            let xb = x.get(&i).cloned().unwrap_or_else(|| Matrix::zeros(b, b));
            let xl = x
                .get(&(i + 1))
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(l, l));
            let ah = a.get(&i).cloned().unwrap_or_else(|| Matrix::zeros(h, h));
            t.set_block(0, 0, &xb);
            t.set_block(b, b, &ah);
            t.set_block(b + h, b + h, &xl);
            t.set_block(0, b, &upper(b, h));
            t.set_block(0, b + h, &upper(b, l));
            t.set_block(b, b + h, &upper(h, l));
            let src_inv = src.frame(i).inverse().unwrap().expect("invertible frame");
            (i, &(&tgt.frame(i) * &t) * &src_inv)
        })
        .collect();
    ChainMap::new(src.fiber.clone(), tgt.fiber.clone(), components).expect("shapes agree")
}

/// A random chain map between two presentations of the same shape.
pub fn chain_map<K: Field, R: Rng + ?Sized>(
    rng: &mut R,
    src: &Presented<K>,
    tgt: &Presented<K>,
    kind: MapKind,
) -> ChainMap<K> {
    let shape = &src.shape;
    let zero_upper = rng.gen_bool(0.2);
    let mut x = BTreeMap::new();
    let mut a = BTreeMap::new();
    for i in shape.lo()..=shape.hi() {
        let (b, h) = (shape.boundary_dim(i), shape.cohomology_dim(i));
        x.insert(
            i,
            match kind {
                MapKind::Isomorphism => invertible(rng, b),
                _ if rng.gen_bool(0.25) => Matrix::zeros(b, b),
                _ => matrix(rng, b, b),
            },
        );
        a.insert(
            i,
            match kind {
                MapKind::Arbitrary => matrix(rng, h, h),
                _ => invertible(rng, h),
            },
        );
    }
    chain_map_from_blocks(src, tgt, &x, &a, |r, c| {
        if zero_upper {
            Matrix::zeros(r, c)
        } else {
            matrix(rng, r, c)
        }
    })
}

/// A random homotopy `Ω^i : C^i -> D^{i-1}`.
pub fn homotopy<K: Field, R: Rng + ?Sized>(
    rng: &mut R,
    src: &ComplexFiber<K>,
    tgt: &ComplexFiber<K>,
) -> Homotopy<K> {
    let lo = src.lo().min(tgt.lo());
    let hi = src.hi().max(tgt.hi());
    let components = (lo..=hi + 1)
        .map(|i| (i, matrix(rng, tgt.dim(i - 1), src.dim(i))))
        .collect();
    Homotopy::new(src, tgt, components).expect("shapes agree")
}

fn cyclic_table(m: usize) -> Vec<Vec<usize>> {
    (0..m)
        .map(|a| (0..m).map(|b| (a + b) % m).collect())
        .collect()
}

/// A disjoint union of small transitive groupoids with at most `max_arrows` arrows in total.
pub fn groupoid<R: Rng + ?Sized>(rng: &mut R, max_arrows: usize) -> FiniteGroupoid {
    assert!(max_arrows >= 1);
    let mut parts = Vec::new();
    let mut used = 0;
    loop {
        let objects = rng.gen_range(1..=3usize);
        let order = rng.gen_range(1..=4usize);
        let size = objects * objects * order;
        if used + size > max_arrows {
            if parts.is_empty() {
                continue;
            }
            break;
        }
        let names: Vec<String> = (0..objects).map(|k| format!("o{k}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let group: Vec<String> = (0..order).map(|k| format!("c{k}")).collect();
        let group: Vec<&str> = group.iter().map(String::as_str).collect();
        parts.push(
            FiniteGroupoid::transitive(&names, &group, &cyclic_table(order))
                .expect("cyclic table is a group"),
        );
        used += size;
        if rng.gen_bool(0.4) {
            break;
        }
    }
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        FiniteGroupoid::disjoint_union(&parts)
    }
}

pub fn cochain<K: Field, R: Rng + ?Sized>(
    rng: &mut R,
    g: &FiniteGroupoid,
    degree: usize,
) -> Cochain<K> {
    Cochain::from_fn(g, degree, |_| nonzero_scalar(rng)).expect("values are nonzero")
}

pub fn trivialization<K: Field, R: Rng + ?Sized>(
    rng: &mut R,
    g: &FiniteGroupoid,
) -> Trivialization<K> {
    Trivialization::new((0..g.object_count()).map(|_| nonzero_scalar(rng)).collect())
        .expect("values are nonzero")
}

/// For each component: its root, and for every object `x` an arrow `root -> x`.
#[derive(Debug, Clone)]
pub struct Transport {
    pub root: Vec<ObjectId>,
    pub path: Vec<ArrowId>,
}

impl Transport {
    pub fn new(g: &FiniteGroupoid) -> Self {
        let n = g.object_count();
        let mut root = vec![ObjectId(usize::MAX); n];
        let mut path = vec![ArrowId(usize::MAX); n];
        for x in g.objects() {
            if root[x.0].0 != usize::MAX {
                continue;
            }
            root[x.0] = x;
            path[x.0] = g.identity(x);
            let mut queue = VecDeque::from([x]);
            while let Some(y) = queue.pop_front() {
                for a in g.arrows().filter(|&a| g.source(a) == y) {
                    let z = g.target(a);
                    if root[z.0].0 == usize::MAX {
                        root[z.0] = x;
                        path[z.0] = g.mul(a, path[y.0]);
                        queue.push_back(z);
                    }
                }
            }
        }
        Transport { root, path }
    }

    /// `p_t⁻¹·g·p_s`, an arrow in the isotropy group of the root.
    pub fn to_root(&self, g: &FiniteGroupoid, a: ArrowId) -> ArrowId {
        let (s, t) = (g.source(a), g.target(a));
        g.mul(g.inverse(self.path[t.0]), g.mul(a, self.path[s.0]))
    }
}

/// Arrows of the isotropy group at `x`, in index order.
pub fn isotropy(g: &FiniteGroupoid, x: ObjectId) -> Vec<ArrowId> {
    g.arrows()
        .filter(|&a| g.source(a) == x && g.target(a) == x)
        .collect()
}

/// Building blocks of isotropy representations with rational matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsotropyBlock {
    /// The trivial character.
    Trivial,
    /// The sign of left multiplication: the determinant of the regular representation.
    Sign,
    /// The regular representation.
    Regular,
}

fn isotropy_matrix<K: Field>(
    g: &FiniteGroupoid,
    group: &[ArrowId],
    block: IsotropyBlock,
    a: ArrowId,
) -> Matrix<K> {
    let n = group.len();
    let mut regular = Matrix::zeros(n, n);
    for (c, &b) in group.iter().enumerate() {
        let r = group
            .iter()
            .position(|&x| x == g.mul(a, b))
            .expect("isotropy group is closed");
        regular[(r, c)] = K::one();
    }
    match block {
        IsotropyBlock::Trivial => Matrix::identity(1),
        IsotropyBlock::Sign => Matrix::scalar(1, regular.det().expect("square")),
        IsotropyBlock::Regular => regular,
    }
}

/// An isotropy representation of dimension `dims(root)` at each root, made from `allowed`
/// blocks in a random frame, transported along `transport` and then conjugated per object by
/// `frames[x]`. Returns one matrix per arrow.
pub fn strict_action<K: Field, R: Rng + ?Sized>(
    rng: &mut R,
    g: &FiniteGroupoid,
    transport: &Transport,
    dims: impl Fn(ObjectId) -> usize,
    allowed: &[IsotropyBlock],
    frames: &[Matrix<K>],
) -> Vec<Matrix<K>> {
    // Per component: isotropy group at the root, its blocks, a random frame.
    type RootData<K> = (Vec<ArrowId>, Vec<IsotropyBlock>, Matrix<K>);
    let mut per_root: BTreeMap<ObjectId, RootData<K>> = BTreeMap::new();
    for &root in &transport.root {
        let dim = dims(root);
        per_root.entry(root).or_insert_with(|| {
            let group = isotropy(g, root);
            let mut blocks = Vec::new();
            let mut filled = 0;
            while filled < dim {
                let mut block = *allowed.choose(rng).expect("at least one block kind");
                if block == IsotropyBlock::Regular && filled + group.len() > dim {
                    block = IsotropyBlock::Trivial;
                }
                filled += if block == IsotropyBlock::Regular {
                    group.len()
                } else {
                    1
                };
                blocks.push(block);
            }
            let frame = invertible(rng, dim);
            (group, blocks, frame)
        });
    }
    g.arrows()
        .map(|a| {
            let (s, t) = (g.source(a), g.target(a));
            let (group, blocks, frame) = &per_root[&transport.root[s.0]];
            let b = transport.to_root(g, a);
            let rho = blocks
                .iter()
                .map(|&k| isotropy_matrix(g, group, k, b))
                .reduce(|acc, m| acc.direct_sum(&m))
                .unwrap_or_else(|| Matrix::identity(0));
            let rho = &(frame * &rho) * &frame.inverse().unwrap().unwrap();
            let src_inv = frames[s.0].inverse().unwrap().expect("invertible frame");
            &(&frames[t.0] * &rho) * &src_inv
        })
        .collect()
}

/// A random strict line representation: a ±1 isotropy character transported along a tree,
/// times the coboundary of a random 0-cochain.
pub fn line_rep<K: Field, R: Rng + ?Sized>(rng: &mut R, g: &FiniteGroupoid) -> LineRep<K> {
    let transport = Transport::new(g);
    let frames: Vec<Matrix<K>> = g
        .objects()
        .map(|_| Matrix::scalar(1, nonzero_scalar(rng)))
        .collect();
    let action = strict_action(
        rng,
        g,
        &transport,
        |_| 1,
        &[IsotropyBlock::Trivial, IsotropyBlock::Sign],
        &frames,
    );
    LineRep::new(
        g.clone(),
        action.into_iter().map(|m| m[(0, 0)].clone()).collect(),
    )
    .expect("values are nonzero")
}

/// Options for [`weak_rep`].
#[derive(Debug, Clone)]
pub struct WeakRepOptions {
    pub lo: i32,
    pub hi: i32,
    pub max_dim: usize,
    pub blocks: Vec<IsotropyBlock>,
    /// Probability that a non-identity arrow acts by zero on the acyclic part.
    pub zero_acyclic: f64,
    /// Fibers with no cohomology at all, one fiber shared by every object of a component.
    pub acyclic: bool,
}

impl Default for WeakRepOptions {
    fn default() -> Self {
        WeakRepOptions {
            lo: 0,
            hi: 2,
            max_dim: 3,
            blocks: vec![
                IsotropyBlock::Trivial,
                IsotropyBlock::Sign,
                IsotropyBlock::Regular,
            ],
            zero_acyclic: 0.3,
            acyclic: false,
        }
    }
}

/// A random representation up to weak homotopy. Each component gets one complex shape;
/// every object gets its own presentation of it. The cohomology blocks carry a strict
/// representation, while the boundary and off-diagonal blocks are arbitrary per arrow
/// (zero with probability `zero_acyclic`), so functoriality generally holds only up to
/// homotopy.
pub fn weak_rep<K: Field, R: Rng + ?Sized>(
    rng: &mut R,
    g: &FiniteGroupoid,
    options: &WeakRepOptions,
) -> RepUpToWeakHomotopy<K> {
    let transport = Transport::new(g);
    let mut shapes: BTreeMap<ObjectId, ComplexShape> = BTreeMap::new();
    for &root in &transport.root {
        shapes.entry(root).or_insert_with(|| {
            ComplexShape::random_with(
                rng,
                options.lo,
                options.hi,
                options.max_dim,
                options.acyclic,
            )
        });
    }
    let mut shared: BTreeMap<ObjectId, Presented<K>> = BTreeMap::new();
    let presentations: Vec<Presented<K>> = g
        .objects()
        .map(|x| {
            let root = transport.root[x.0];
            if !options.acyclic {
                return presented(rng, shapes[&root].clone());
            }
            shared
                .entry(root)
                .or_insert_with(|| presented(rng, shapes[&root].clone()))
                .clone()
        })
        .collect();

    // Per degree, a strict action on the cohomology blocks.
    let mut cohomology: BTreeMap<i32, Vec<Matrix<K>>> = BTreeMap::new();
    for i in options.lo..=options.hi {
        let by_object: Vec<usize> = g
            .objects()
            .map(|x| presentations[x.0].shape.cohomology_dim(i))
            .collect();
        let frames: Vec<Matrix<K>> = by_object.iter().map(|&d| Matrix::identity(d)).collect();
        let action = strict_action(
            rng,
            g,
            &transport,
            |root| by_object[root.0],
            &options.blocks,
            &frames,
        );
        cohomology.insert(i, action);
    }

    let action = g
        .arrows()
        .map(|a| {
            let (s, t) = (g.source(a), g.target(a));
            let (src, tgt) = (&presentations[s.0], &presentations[t.0]);
            if g.is_identity(a) {
                return ChainMap::identity(src.fiber.clone());
            }
            let zero = rng.gen_bool(options.zero_acyclic);
            let shape = &src.shape;
            let mut x = BTreeMap::new();
            let mut h = BTreeMap::new();
            for i in shape.lo()..=shape.hi() {
                let b = shape.boundary_dim(i);
                x.insert(
                    i,
                    if zero {
                        Matrix::zeros(b, b)
                    } else {
                        matrix(rng, b, b)
                    },
                );
                h.insert(i, cohomology[&i][a.0].clone());
            }
            chain_map_from_blocks(src, tgt, &x, &h, |r, c| {
                if zero {
                    Matrix::zeros(r, c)
                } else {
                    matrix(rng, r, c)
                }
            })
        })
        .collect();
    RepUpToWeakHomotopy::new(
        g.clone(),
        presentations.into_iter().map(|p| p.fiber).collect(),
        action,
    )
    .expect("chain maps run between the right fibers")
}

/// `Δ'_g = Q_t Δ_g Q_s⁻¹` for random chain automorphisms `Q_x` of each fiber.
/// Returns the twisted representation and the `Q_x`.
pub fn twist<K: Field, R: Rng + ?Sized>(
    rng: &mut R,
    r: &RepUpToWeakHomotopy<K>,
) -> (RepUpToWeakHomotopy<K>, Vec<ChainMap<K>>) {
    let g = r.groupoid();
    let autos: Vec<ChainMap<K>> = g.objects().map(|x| automorphism(rng, r.fiber(x))).collect();
    let inverses: Vec<ChainMap<K>> = autos
        .iter()
        .map(|q| q.inverse().expect("automorphism"))
        .collect();
    let action = g
        .arrows()
        .map(|a| {
            let (s, t) = (g.source(a), g.target(a));
            autos[t.0]
                .after(&r.action(a).after(&inverses[s.0]).unwrap())
                .unwrap()
        })
        .collect();
    let twisted = RepUpToWeakHomotopy::new(g.clone(), r.fibers().to_vec(), action)
        .expect("fibers are unchanged");
    (twisted, autos)
}

/// A random chain automorphism of an arbitrary complex, found by presenting it in block form.
pub fn automorphism<K: Field, R: Rng + ?Sized>(
    rng: &mut R,
    c: &Arc<ComplexFiber<K>>,
) -> ChainMap<K> {
    let decomposition = crate::complexes::decompose(c).expect("complex");
    let shape = ComplexShape::new(
        c.lo(),
        (c.lo()..=c.hi() + 1)
            .map(|i| decomposition.boundary_dim(i))
            .collect(),
        c.degrees()
            .map(|i| decomposition.cohomology_dim(i))
            .collect(),
    );
    let frames = c
        .degrees()
        .map(|i| decomposition.at(i).expect("in range").basis.clone())
        .collect();
    let p = Presented::new(shape, frames);
    assert_eq!(*p.fiber, **c, "block form reproduces the complex");
    let q = chain_map(rng, &p, &p, MapKind::Isomorphism);
    ChainMap::new(c.clone(), c.clone(), q.components()).expect("same complex")
}
