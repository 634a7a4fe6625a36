//! Small named groupoids and representations used throughout the tests and the CLI examples.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complexes::{ChainMap, ComplexFiber};
use crate::groupoid::{Arrow, ArrowId, FiniteGroupoid, ObjectId};
use crate::linalg::Matrix;
use crate::reps::{LineRep, RepUpToWeakHomotopy};
use crate::scalar::Field;

/// `{1, tau}` on one object `*`.
pub fn z2() -> FiniteGroupoid {
    FiniteGroupoid::from_group("*", &["1", "tau"], &[vec![0, 1], vec![1, 0]]).expect("Z2 table")
}

/// `{1, r, r2}` on one object `*`.
pub fn z3() -> FiniteGroupoid {
    FiniteGroupoid::from_group(
        "*",
        &["1", "r", "r2"],
        &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
    )
    .expect("Z3 table")
}

/// Objects `x, y`; arrows `1_x, 1_y, g: x -> y, g_inv: y -> x`.
pub fn pair2() -> FiniteGroupoid {
    let arrow = |name: &str, s: usize, t: usize| Arrow {
        name: name.into(),
        source: ObjectId(s),
        target: ObjectId(t),
    };
    let [ex, ey, g, gi] = [0, 1, 2, 3].map(ArrowId);
    FiniteGroupoid::from_tables(
        vec!["x".into(), "y".into()],
        vec![
            arrow("1_x", 0, 0),
            arrow("1_y", 1, 1),
            arrow("g", 0, 1),
            arrow("g_inv", 1, 0),
        ],
        vec![ex, ey],
        vec![ex, ey, gi, g],
        [
            (ex, ex, ex),
            (ey, ey, ey),
            (g, ex, g),
            (ey, g, g),
            (gi, ey, gi),
            (ex, gi, gi),
            (g, gi, ey),
            (gi, g, ex),
        ],
    )
    .expect("PAIR2 table")
}

/// Permutations of `{0, 1, 2}` as image arrays, with their cycle names.
pub const S3_ELEMENTS: [(&str, [usize; 3]); 6] = [
    ("e", [0, 1, 2]),
    ("(01)", [1, 0, 2]),
    ("(02)", [2, 1, 0]),
    ("(12)", [0, 2, 1]),
    ("(012)", [1, 2, 0]),
    ("(021)", [2, 0, 1]),
];

/// The symmetric group `S3` acting on the points `p0, p1, p2`. Arrow `a@px` goes from `px`
/// to `a(px)`.
pub fn s3_action() -> FiniteGroupoid {
    let perms: Vec<[usize; 3]> = S3_ELEMENTS.iter().map(|(_, p)| *p).collect();
    let index = |p: [usize; 3]| {
        perms
            .iter()
            .position(|&q| q == p)
            .expect("closed under product")
    };
    // mul[b][a] = b ∘ a
    let mul: Vec<Vec<usize>> = perms
        .iter()
        .map(|b| {
            perms
                .iter()
                .map(|a| index([b[a[0]], b[a[1]], b[a[2]]]))
                .collect()
        })
        .collect();
    let act: Vec<Vec<usize>> = perms.iter().map(|p| p.to_vec()).collect();
    let names: Vec<&str> = S3_ELEMENTS.iter().map(|(n, _)| *n).collect();
    FiniteGroupoid::action(&["p0", "p1", "p2"], &names, &mul, &act).expect("S3 action table")
}

/// The acyclic two-term fiber `K --1--> K` in degrees 0 and 1.
pub fn acyclic_fiber<K: Field>() -> ComplexFiber<K> {
    ComplexFiber::acyclic_pair(0, 1)
}

/// Sign representation of `Z2` on a line: `tau ↦ -1`.
pub fn z2_sign<K: Field>() -> LineRep<K> {
    LineRep::new(z2(), vec![K::one(), -K::one()]).expect("sign rep")
}

/// The sign representation placed on a one-dimensional fiber in degree 1.
pub fn z2_sign_odd<K: Field>() -> RepUpToWeakHomotopy<K> {
    let g = z2();
    let fiber = Arc::new(ComplexFiber::concentrated(1, 1));
    let tau = ChainMap::new(
        fiber.clone(),
        fiber.clone(),
        BTreeMap::from([(1, Matrix::scalar(1, -K::one()))]),
    )
    .expect("shape");
    RepUpToWeakHomotopy::new(g, vec![fiber.clone()], vec![ChainMap::identity(fiber), tau])
        .expect("odd sign rep")
}

/// `Z2` acting on the acyclic fiber with `tau` acting by zero: a unital representation up to
/// weak homotopy that is not a strict representation.
pub fn z2_acyclic_zero<K: Field>() -> RepUpToWeakHomotopy<K> {
    let fiber = Arc::new(acyclic_fiber());
    RepUpToWeakHomotopy::new(
        z2(),
        vec![fiber.clone()],
        vec![
            ChainMap::identity(fiber.clone()),
            ChainMap::zero(fiber.clone(), fiber),
        ],
    )
    .expect("acyclic rep")
}
