//! Built-in example models: the worked examples shipped with the CLI as
//! JSON fixtures and exercised by the acceptance suite.

use crate::characters::PointCollection;
use crate::exact_linalg::Int;
use num::Zero;

/// Data of a gauged model fixture: the collection ν, the R-charge subset,
/// the grading covector 𝔫, and optionally an explicit superpotential
/// given by exponent vectors.
#[derive(Debug, Clone)]
pub struct FixtureModel {
    pub name: &'static str,
    pub nu: PointCollection,
    pub point_names: Vec<String>,
    pub r_charge: Vec<usize>,
    pub nvec: Option<Vec<Int>>,
    /// explicit monomials as exponent vectors over the coordinates, or
    /// None for "auto" (the full height-one slice with generic coefficients)
    pub monomials: Option<Vec<Vec<i64>>>,
}

fn e(dim: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0i64; dim];
    v[i] = 1;
    v
}

/// Degree-d hypersurfaces in P^n: ν = {e_1, .., e_n, -Σe_i + d e_{n+1}, e_{n+1}}.
pub fn orlov(n: usize, d: i64) -> FixtureModel {
    let dim = n + 1;
    let mut pts: Vec<Vec<i64>> = (0..n).map(|i| e(dim, i)).collect();
    let mut v = vec![-1i64; n];
    v.push(d);
    pts.push(v);
    pts.push(e(dim, n));
    let mut names: Vec<String> = (1..=n + 1).map(|i| format!("x{i}")).collect();
    names.push("u".into());
    FixtureModel {
        name: "orlov",
        nu: PointCollection::from_i64(dim, &pts).unwrap(),
        point_names: names,
        r_charge: vec![n + 1],
        nvec: Some(e(dim, n).iter().map(|&x| Int::from(x)).collect()),
        monomials: None,
    }
}

/// Singular cubic (3n+1)-folds (d = 3): 3n+5 points in Z^{3n+3}.
pub fn singular_cubics(n: usize) -> FixtureModel {
    let dim = 3 * n + 3;
    let mut pts: Vec<Vec<i64>> = (0..3 * n + 2).map(|i| e(dim, i)).collect();
    let mut v = vec![-1i64; 3 * n + 2];
    v.push(3);
    pts.push(v);
    let mut v = vec![0i64; dim];
    for x in v.iter_mut().take(n) {
        *x = -1;
    }
    v[dim - 1] = 1;
    pts.push(v);
    pts.push(e(dim, dim - 1));
    let mut names: Vec<String> = (1..=3 * n + 4).map(|i| format!("x{i}")).collect();
    names.push("u".into());
    FixtureModel {
        name: "singular_cubics",
        nu: PointCollection::from_i64(dim, &pts).unwrap(),
        point_names: names,
        r_charge: vec![3 * n + 4],
        nvec: Some(e(dim, dim - 1).iter().map(|&x| Int::from(x)).collect()),
        monomials: None,
    }
}

/// R_2 for the singular-cubics model: {v_1..v_n, v_{3n+4}}.
pub fn singular_cubics_r2(n: usize) -> Vec<usize> {
    let mut r: Vec<usize> = (0..n).collect();
    r.push(3 * n + 3);
    r
}

/// Degree-d (2d-2)-folds containing two planes: 2d+3 points in Z^{2d}.
pub fn two_planes(d: usize) -> FixtureModel {
    let dim = 2 * d;
    let mut pts: Vec<Vec<i64>> = (0..2 * d - 1).map(|i| e(dim, i)).collect();
    let mut v = vec![-1i64; 2 * d - 1];
    v.push(d as i64);
    pts.push(v);
    let mut v = vec![0i64; dim];
    v[2 * d - 4] = 1;
    v[2 * d - 3] = 1;
    v[2 * d - 2] = 1;
    v[2 * d - 1] = -1;
    pts.push(v);
    let mut v = vec![0i64; dim];
    v[2 * d - 4] = -1;
    v[2 * d - 3] = -1;
    v[2 * d - 2] = -1;
    v[2 * d - 1] = 2;
    pts.push(v);
    pts.push(e(dim, dim - 1));
    let mut names: Vec<String> = (1..=2 * d).map(|i| format!("x{i}")).collect();
    names.extend(["u1".into(), "u2".into(), "u3".to_string()]);
    FixtureModel {
        name: "two_planes",
        nu: PointCollection::from_i64(dim, &pts).unwrap(),
        point_names: names,
        r_charge: vec![2 * d, 2 * d + 1],
        nvec: Some(e(dim, dim - 1).iter().map(|&x| Int::from(x)).collect()),
        monomials: None,
    }
}

/// R_2 for the two-planes model: {a}.
pub fn two_planes_r2(d: usize) -> Vec<usize> {
    vec![2 * d + 2]
}

/// The semi-orthogonal-decomposition example with a geometric FCY piece:
/// 8 points in Z^6 and an explicit 10-term superpotential.
pub fn sod_fcy() -> FixtureModel {
    let pts = vec![
        vec![1, 0, 0, 0, 0, 0],
        vec![0, 1, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 0],
        vec![0, 1, 0, 2, 1, 2],
        vec![-1, -2, -1, -2, 0, 0],
        vec![0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, -1, 1],
        vec![0, 0, 0, 0, 0, 1],
    ];
    // w = x8 x6 (x1^2 x2 + x2^3 + x3^2 x4 + x4^3 + x4 x5^2)
    //   + x8 x7 (x1^2 + x2^2 + x3^2 + x4^2 + x5^2)
    let monomials = vec![
        vec![2, 1, 0, 0, 0, 1, 0, 1],
        vec![0, 3, 0, 0, 0, 1, 0, 1],
        vec![0, 0, 2, 1, 0, 1, 0, 1],
        vec![0, 0, 0, 3, 0, 1, 0, 1],
        vec![0, 0, 0, 1, 2, 1, 0, 1],
        vec![2, 0, 0, 0, 0, 0, 1, 1],
        vec![0, 2, 0, 0, 0, 0, 1, 1],
        vec![0, 0, 2, 0, 0, 0, 1, 1],
        vec![0, 0, 0, 2, 0, 0, 1, 1],
        vec![0, 0, 0, 0, 2, 0, 1, 1],
    ];
    FixtureModel {
        name: "sod_fcy",
        nu: PointCollection::from_i64(6, &pts).unwrap(),
        point_names: (1..=8).map(|i| format!("x{i}")).collect(),
        r_charge: vec![7],
        nvec: Some(vec![
            Int::zero(),
            Int::zero(),
            Int::zero(),
            Int::zero(),
            Int::zero(),
            Int::from(1),
        ]),
        monomials: Some(monomials),
    }
}

/// R_2 for the sod-fcy model: {v_6, v_7}.
pub fn sod_fcy_r2() -> Vec<usize> {
    vec![5, 6]
}

/// The nine-point example with two maximal vector-bundle splittings.
pub fn under_construction() -> FixtureModel {
    let pts = vec![
        vec![1, 0, 0, 0, 0, 0], // v1
        vec![0, 1, 2, 0, 0, 0], // v2
        vec![0, 0, 0, 2, 1, 0], // v3
        vec![0, 0, 0, 0, 0, 1], // v4
        vec![1, 1, 0, 0, 0, 0], // v5
        vec![0, 0, 1, 1, 0, 0], // v6
        vec![0, 0, 0, 0, 1, 1], // v7
        vec![1, 1, 1, 0, 0, 0], // a1
        vec![0, 0, 0, 1, 1, 1], // a2
    ];
    let names = vec![
        "x1".into(),
        "x2".into(),
        "x3".into(),
        "x4".into(),
        "x5".into(),
        "x6".into(),
        "x7".into(),
        "x8".into(),
        "x9".to_string(),
    ];
    // W = c1 x1x5x8 + c2 x2x5x8 + c3 x1^2x6x8 + c4 x2^2x6x8
    //   + c5 x3^2x6x9 + c6 x4^2x6x9 + c7 x3x7x9 + c8 x4x7x9
    let monomials = vec![
        vec![1, 0, 0, 0, 1, 0, 0, 1, 0],
        vec![0, 1, 0, 0, 1, 0, 0, 1, 0],
        vec![2, 0, 0, 0, 0, 1, 0, 1, 0],
        vec![0, 2, 0, 0, 0, 1, 0, 1, 0],
        vec![0, 0, 2, 0, 0, 1, 0, 0, 1],
        vec![0, 0, 0, 2, 0, 1, 0, 0, 1],
        vec![0, 0, 1, 0, 0, 0, 1, 0, 1],
        vec![0, 0, 0, 1, 0, 0, 1, 0, 1],
    ];
    FixtureModel {
        name: "under_construction",
        nu: PointCollection::from_i64(6, &pts).unwrap(),
        point_names: names,
        r_charge: vec![7, 8],
        nvec: Some(vec![Int::from(1); 6]),
        monomials: Some(monomials),
    }
}

/// R_2 for the under-construction model: {v_5, v_6, v_7}.
pub fn under_construction_r2() -> Vec<usize> {
    vec![4, 5, 6]
}
