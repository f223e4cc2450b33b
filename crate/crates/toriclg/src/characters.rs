//! Gauge-group and character-lattice computations.
//!
//! A point collection ν in N determines the right exact sequence
//! `M -> Z^ν -> coker -> 0` whose cokernel is the character lattice of the
//! abelian gauge group S_ν. Everything here lives on the character side:
//! per-point weights, the (anti)canonical character, the extended R-charge
//! lattice, the group H, and the R-swap shear.

use crate::exact_linalg::{
    cokernel, int, solve_integer, AbelianPresentation, Int, IntMatrix, Rat, RatVector,
};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CharacterError {
    #[error("point collection invalid: {0}")]
    InvalidCollection(String),
    #[error("collection is not geometric: points {0} and {1} generate the same ray")]
    NotGeometric(usize, usize),
    #[error("witness mismatch: class relation does not reduce")]
    WitnessMismatch,
    #[error("trivial divisor character at point {0}")]
    TrivialDivisorCharacter(usize),
    #[error("swap relation fails: the two R-sets have different point sums")]
    SwapRelationFails,
    #[error("index out of range: {0}")]
    IndexOutOfRange(usize),
}

/// The set ν of distinct nonzero lattice points in N.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCollection {
    ambient_rank: usize,
    points: Vec<Vec<Int>>,
}

impl PointCollection {
    pub fn new(ambient_rank: usize, points: Vec<Vec<Int>>) -> Result<Self, CharacterError> {
        let mut seen = BTreeSet::new();
        for (i, p) in points.iter().enumerate() {
            if p.len() != ambient_rank {
                return Err(CharacterError::InvalidCollection(format!(
                    "point {i} has wrong rank"
                )));
            }
            if p.iter().all(|x| x.is_zero()) {
                return Err(CharacterError::InvalidCollection(format!("point {i} is zero")));
            }
            if !seen.insert(p.clone()) {
                return Err(CharacterError::InvalidCollection(format!(
                    "duplicate point {p:?}"
                )));
            }
        }
        Ok(PointCollection { ambient_rank, points })
    }

    pub fn from_i64(ambient_rank: usize, pts: &[Vec<i64>]) -> Result<Self, CharacterError> {
        PointCollection::new(
            ambient_rank,
            pts.iter()
                .map(|p| p.iter().map(|&x| int(x)).collect())
                .collect(),
        )
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Int>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[Int] {
        &self.points[i]
    }

    /// Each point generates a distinct ray (required by chamber machinery).
    pub fn check_geometric(&self) -> Result<(), CharacterError> {
        let prim: Vec<Vec<Int>> = self
            .points
            .iter()
            .map(|p| crate::exact_linalg::primitivize(p))
            .collect();
        for i in 0..prim.len() {
            for j in i + 1..prim.len() {
                if prim[i] == prim[j] {
                    return Err(CharacterError::NotGeometric(i, j));
                }
            }
        }
        Ok(())
    }

    /// Matrix of the map f_ν : M -> Z^ν, one row per point.
    pub fn f_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows(&self.points)
    }

    /// Restrict to a subset of points (preserving order).
    pub fn subset(&self, keep: &[usize]) -> Result<PointCollection, CharacterError> {
        let mut pts = Vec::new();
        for &i in keep {
            if i >= self.points.len() {
                return Err(CharacterError::IndexOutOfRange(i));
            }
            pts.push(self.points[i].clone());
        }
        PointCollection::new(self.ambient_rank, pts)
    }
}

/// A character of S_ν in the chosen presentation coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Character {
    pub free: Vec<Int>,
    pub torsion: Vec<Int>,
}

impl Character {
    pub fn zero(free_rank: usize, torsion_rank: usize) -> Self {
        Character {
            free: vec![Int::zero(); free_rank],
            torsion: vec![Int::zero(); torsion_rank],
        }
    }

    pub fn free_as_rat(&self) -> Vec<Rat> {
        self.free.iter().map(|x| Rat::from_integer(x.clone())).collect()
    }

    pub fn is_torsion(&self) -> bool {
        self.free.iter().all(|x| x.is_zero())
    }
}

/// Character with the extra Z summand coming from R-charge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtendedCharacter {
    pub base: Character,
    pub r_weight: Int,
}

/// The character lattice coker(f_ν) with per-point weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterLattice {
    pub nu: PointCollection,
    pub presentation: AbelianPresentation,
    pub weights: Vec<Character>,
}

/// Ŝ_ν = coker(f_ν) with deterministic coordinates fixed by the Smith
/// pivoting rules; the weight of a point is the image of its unit vector.
pub fn character_lattice(nu: &PointCollection) -> CharacterLattice {
    let f = nu.f_matrix();
    let pres = cokernel(&f);
    let weights = (0..nu.len())
        .map(|i| {
            let (free, torsion) = pres.weight_of(i);
            Character { free, torsion }
        })
        .collect();
    CharacterLattice {
        nu: nu.clone(),
        presentation: pres,
        weights,
    }
}

impl CharacterLattice {
    pub fn free_rank(&self) -> usize {
        self.presentation.free_rank
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.presentation.invariant_factors
    }

    pub fn weight(&self, i: usize) -> &Character {
        &self.weights[i]
    }

    /// Free parts of all weights as a matrix row per point.
    pub fn free_weight_rows(&self) -> Vec<Vec<Int>> {
        self.weights.iter().map(|w| w.free.clone()).collect()
    }

    pub fn sum_of_weights(&self) -> Character {
        let mut free = vec![Int::zero(); self.free_rank()];
        let mut torsion = vec![Int::zero(); self.invariant_factors().len()];
        for w in &self.weights {
            for (a, b) in free.iter_mut().zip(&w.free) {
                *a += b;
            }
            for (k, (a, b)) in torsion.iter_mut().zip(&w.torsion).enumerate() {
                *a = num::integer::mod_floor(&*a + b, self.invariant_factors()[k].clone());
                let _ = k;
            }
        }
        Character { free, torsion }
    }
}

/// The character −χ_K = Σ_i χ_{D_i} (sum of all weights).
pub fn anticanonical_character(cl: &CharacterLattice) -> Character {
    cl.sum_of_weights()
}

/// χ_K as a character of S_ν × G_m: (−Σ χ_{D_i}, −|R|).
pub fn chi_k_extended(cl: &CharacterLattice, r_set: &[usize]) -> ExtendedCharacter {
    let sum = cl.sum_of_weights();
    let free = sum.free.iter().map(|x| -x.clone()).collect();
    let torsion = sum
        .torsion
        .iter()
        .zip(cl.invariant_factors())
        .map(|(x, d)| num::integer::mod_floor(-x.clone(), d.clone()))
        .collect();
    ExtendedCharacter {
        base: Character { free, torsion },
        r_weight: -int(r_set.len() as i64),
    }
}

/// Partition of ν by the height pairing against the Gorenstein witness m.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightPartition {
    pub height_one: Vec<usize>,
    pub other: Vec<usize>,
    pub heights: Vec<Rat>,
}

pub fn height_partition(nu: &PointCollection, m: &RatVector) -> HeightPartition {
    let mut height_one = Vec::new();
    let mut other = Vec::new();
    let mut heights = Vec::new();
    for (i, p) in nu.points().iter().enumerate() {
        let h = m.dot_int(p);
        if h == Rat::one() {
            height_one.push(i);
        } else {
            other.push(i);
        }
        heights.push(h);
    }
    HeightPartition {
        height_one,
        other,
        heights,
    }
}

/// The reduction of χ_K to the R-charge coordinate:
/// `t = -Σ_{ν≠1} <m, v_i> + |ν≠1| - |R|`, verified against the class
/// relation by solving rationally in the span of the I_∅-relations.
pub fn class_relation_reduce(
    cl: &CharacterLattice,
    r_set: &[usize],
    m: &RatVector,
    partition: &HeightPartition,
) -> Result<Rat, CharacterError> {
    let mut t = Rat::zero();
    for &i in &partition.other {
        let h = m.dot_int(cl.nu.point(i));
        if h != partition.heights[i] {
            return Err(CharacterError::WitnessMismatch);
        }
        t -= h;
    }
    t += Rat::from_integer(int(partition.other.len() as i64));
    t -= Rat::from_integer(int(r_set.len() as i64));

    // verification: χ_K - (0, t) must lie in the rational span of the
    // relation vectors (weight_j, [j in R]) for j in ν≠1
    let chi = chi_k_extended(cl, r_set);
    let mut target: Vec<Rat> = chi.base.free_as_rat();
    target.push(Rat::from_integer(chi.r_weight.clone()) - &t);
    let gens: Vec<Vec<Int>> = partition
        .other
        .iter()
        .map(|&j| {
            let mut v = cl.weight(j).free.clone();
            v.push(if r_set.contains(&j) { Int::one() } else { Int::zero() });
            v
        })
        .collect();
    match crate::exact_linalg::in_rational_span(&gens, &target) {
        Some(_) => Ok(t),
        None => Err(CharacterError::WitnessMismatch),
    }
}

/// Presentation of Ĥ = (Ŝ_ν ⊕ Z) / im(p̂) together with the relation
/// vectors p̂(e_j) = (χ_{D_j}, [v_j ∈ R]) for j ∈ ν ∖ Σ(1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPresentation {
    pub presentation: AbelianPresentation,
    /// relations as extended characters in the Ŝ_ν ⊕ Z coordinates
    pub relations: Vec<ExtendedCharacter>,
    /// images in Ĥ of the extended weights (w_i, [i ∈ R]) of all points
    pub induced_weights: Vec<(Vec<Int>, Vec<Int>)>,
}

/// Ĥ as the cokernel of p̂. The quotient is computed upstairs on
/// Z^{ν} ⊕ Z, adding one relation column per I_∅ point, so no quotient
/// coordinates are needed.
pub fn h_presentation(
    cl: &CharacterLattice,
    sigma_rays: &[usize],
    r_set: &[usize],
) -> Result<HPresentation, CharacterError> {
    let n = cl.nu.len();
    let sigma: BTreeSet<usize> = sigma_rays.iter().cloned().collect();
    let i_empty: Vec<usize> = (0..n).filter(|i| !sigma.contains(i)).collect();
    for &j in &i_empty {
        let w = cl.weight(j);
        if w.free.iter().all(|x| x.is_zero()) && w.torsion.iter().all(|x| x.is_zero()) {
            return Err(CharacterError::TrivialDivisorCharacter(j));
        }
    }
    // relations upstairs in Z^{n+1}: columns of f_ν extended by 0, plus
    // (e_j, r_j) per I_∅ point
    let f = cl.nu.f_matrix(); // n x d
    let d = f.cols();
    let mut rel_cols: Vec<Vec<Int>> = Vec::new();
    for c in 0..d {
        let mut col = f.col(c);
        col.push(Int::zero());
        rel_cols.push(col);
    }
    for &j in &i_empty {
        let mut col = vec![Int::zero(); n + 1];
        col[j] = Int::one();
        col[n] = if r_set.contains(&j) { Int::one() } else { Int::zero() };
        rel_cols.push(col);
    }
    let rel = IntMatrix::from_rows(&rel_cols).transpose(); // (n+1) x (d+|I|)
    let pres = cokernel(&rel);
    let relations = i_empty
        .iter()
        .map(|&j| ExtendedCharacter {
            base: cl.weight(j).clone(),
            r_weight: if r_set.contains(&j) { Int::one() } else { Int::zero() },
        })
        .collect();
    let induced_weights = (0..n)
        .map(|i| {
            let mut e = vec![Int::zero(); n + 1];
            e[i] = Int::one();
            if r_set.contains(&i) {
                e[n] = Int::one();
            }
            pres.apply(&e)
        })
        .collect();
    Ok(HPresentation {
        presentation: pres,
        relations,
        induced_weights,
    })
}

/// The R-swap shear: a one-parameter subgroup β of S_ν with
/// `<β, w_i> = [i ∈ R2] − [i ∈ R1]`, which exists exactly when the two
/// R-sets have equal point sums. The extended weight table transforms by
/// `(w, b) ↦ (w, b + <β, w>)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RSwap {
    pub beta: Vec<Int>,
    pub table_before: Vec<(Character, Int)>,
    pub table_after: Vec<(Character, Int)>,
}

pub fn r_swap(
    cl: &CharacterLattice,
    r1: &[usize],
    r2: &[usize],
) -> Result<RSwap, CharacterError> {
    let d = cl.nu.ambient_rank();
    let mut sum1 = vec![Int::zero(); d];
    let mut sum2 = vec![Int::zero(); d];
    for &i in r1 {
        for (a, b) in sum1.iter_mut().zip(cl.nu.point(i)) {
            *a += b;
        }
    }
    for &i in r2 {
        for (a, b) in sum2.iter_mut().zip(cl.nu.point(i)) {
            *a += b;
        }
    }
    if sum1 != sum2 {
        return Err(CharacterError::SwapRelationFails);
    }
    let n = cl.nu.len();
    let rhs: Vec<Int> = (0..n)
        .map(|i| {
            let in1 = r1.contains(&i);
            let in2 = r2.contains(&i);
            int(i64::from(in2) - i64::from(in1))
        })
        .collect();
    let w = IntMatrix::from_rows(&cl.free_weight_rows()); // n x free_rank
    let beta = solve_integer(&w, &rhs).ok_or(CharacterError::SwapRelationFails)?;
    let table_before: Vec<(Character, Int)> = (0..n)
        .map(|i| {
            (
                cl.weight(i).clone(),
                int(i64::from(r1.contains(&i))),
            )
        })
        .collect();
    let table_after: Vec<(Character, Int)> = table_before
        .iter()
        .map(|(w, b)| {
            let shear: Int = w.free.iter().zip(&beta).map(|(a, c)| a * c).sum();
            (w.clone(), b + shear)
        })
        .collect();
    // by construction this equals the R2 table
    debug_assert!(table_after
        .iter()
        .enumerate()
        .all(|(i, (_, b))| *b == int(i64::from(r2.contains(&i)))));
    Ok(RSwap {
        beta,
        table_before,
        table_after,
    })
}

/// Search for a unimodular change of basis (plus a torsion mix) carrying
/// computed weights onto an expected table; weight coordinates are
/// basis-dependent so paper tables are matched this way.
pub mod basis_match {
    use super::*;
    use crate::exact_linalg::{solve_rational, LinalgError};

    /// B with B * computed_free_i = expected_free_i for all i, |det B| = 1,
    /// plus per-torsion-row mixes L with
    /// expected_tors = computed_tors + L * computed_free (mod factor).
    #[derive(Debug, Clone, PartialEq, Eq)]
    pub struct BasisChange {
        pub free_map: IntMatrix,
        pub torsion_mix: Vec<Vec<Int>>,
    }

    impl BasisChange {
        pub fn apply_free(&self, v: &[Int]) -> Vec<Int> {
            self.free_map.mul_vec(v)
        }

        /// Transport a covector (one-parameter subgroup) to the new basis:
        /// pairings are preserved by the inverse transpose.
        pub fn apply_covector(&self, lambda: &[Int]) -> Vec<Int> {
            let rhs = RatVector(
                lambda
                    .iter()
                    .map(|x| Rat::from_integer(x.clone()))
                    .collect(),
            );
            let x = solve_rational(&self.free_map.transpose(), &rhs).expect("unimodular transpose");
            x.0.iter().map(|r| r.numer().clone()).collect()
        }
    }

    pub fn find(
        computed: &[(Vec<Int>, Vec<Int>)],
        expected: &[(Vec<Int>, Vec<Int>)],
        factors: &[Int],
    ) -> Option<BasisChange> {
        if computed.len() != expected.len() || computed.is_empty() {
            return None;
        }
        let r = computed[0].0.len();
        if expected[0].0.len() != r {
            return None;
        }
        // pick r linearly independent computed free weights
        let mut chosen: Vec<usize> = Vec::new();
        for i in 0..computed.len() {
            let mut trial = chosen.clone();
            trial.push(i);
            let m = IntMatrix::from_rows(
                &trial
                    .iter()
                    .map(|&k| computed[k].0.clone())
                    .collect::<Vec<_>>(),
            );
            if m.rank() == trial.len() {
                chosen = trial;
            }
            if chosen.len() == r {
                break;
            }
        }
        if chosen.len() != r {
            return None;
        }
        // solve B * w_k = e_k columnwise: B = E * W^{-1}
        let wmat = IntMatrix::from_rows(
            &chosen
                .iter()
                .map(|&k| computed[k].0.clone())
                .collect::<Vec<_>>(),
        )
        .transpose();
        let mut b_rows = Vec::new();
        for row in 0..r {
            // row of B satisfies W^T * b_row^T = (expected row entries)
            let rhs = RatVector(
                chosen
                    .iter()
                    .map(|&k| Rat::from_integer(expected[k].0[row].clone()))
                    .collect(),
            );
            let sol = match solve_rational(&wmat.transpose(), &rhs) {
                Ok(s) => s,
                Err(LinalgError::Underdetermined) | Err(_) => return None,
            };
            if sol.0.iter().any(|x| !x.denom().is_one()) {
                return None;
            }
            b_rows.push(sol.0.iter().map(|x| x.numer().clone()).collect::<Vec<Int>>());
        }
        let b = IntMatrix::from_rows(&b_rows);
        if b.det().abs() != Int::one() {
            return None;
        }
        for (c, e) in computed.iter().zip(expected) {
            if b.mul_vec(&c.0) != e.0 {
                return None;
            }
        }
        // torsion mixes, one row per invariant factor, entries searched
        // modulo the factor
        let tcount = factors.len();
        let mut torsion_mix = Vec::new();
        for t in 0..tcount {
            let d = &factors[t];
            let mut found = None;
            let mut l = vec![Int::zero(); r];
            'search: loop {
                let ok = computed.iter().zip(expected).all(|(c, e)| {
                    let mix: Int = l.iter().zip(&c.0).map(|(a, b)| a * b).sum();
                    let lhs = num::integer::mod_floor(c.1[t].clone() + mix, d.clone());
                    lhs == num::integer::mod_floor(e.1[t].clone(), d.clone())
                });
                if ok {
                    found = Some(l.clone());
                    break;
                }
                // increment base-d counter
                let mut k = 0;
                loop {
                    if k == r {
                        break 'search;
                    }
                    l[k] += 1;
                    if l[k] < *d {
                        break;
                    }
                    l[k] = Int::zero();
                    k += 1;
                }
            }
            torsion_mix.push(found?);
        }
        Some(BasisChange {
            free_map: b,
            torsion_mix,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::{rat, rat_int};

    /// §6.3-style collection: singular cubic (3n+1)-folds (d = 3).
    pub fn singular_cubics_points(n: usize) -> PointCollection {
        let dim = 3 * n + 3;
        let mut pts: Vec<Vec<i64>> = Vec::new();
        for i in 0..3 * n + 2 {
            let mut e = vec![0i64; dim];
            e[i] = 1;
            pts.push(e);
        }
        let mut v = vec![-1i64; 3 * n + 2];
        v.push(3);
        pts.push(v);
        let mut v = vec![0i64; dim];
        for x in v.iter_mut().take(n) {
            *x = -1;
        }
        v[dim - 1] = 1;
        pts.push(v);
        let mut a = vec![0i64; dim];
        a[dim - 1] = 1;
        pts.push(a);
        PointCollection::from_i64(dim, &pts).unwrap()
    }

    /// §6.4-style collection: degree-d (2d-2)-folds containing two planes.
    pub fn two_planes_points(d: usize) -> PointCollection {
        let dim = 2 * d;
        let mut pts: Vec<Vec<i64>> = Vec::new();
        for i in 0..2 * d - 1 {
            let mut e = vec![0i64; dim];
            e[i] = 1;
            pts.push(e);
        }
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
        let mut a = vec![0i64; dim];
        a[dim - 1] = 1;
        pts.push(a);
        PointCollection::from_i64(dim, &pts).unwrap()
    }

    /// The 8-point collection of the geometric-FCY SOD example.
    pub fn sod_fcy_points() -> PointCollection {
        PointCollection::from_i64(
            6,
            &[
                vec![1, 0, 0, 0, 0, 0],
                vec![0, 1, 0, 0, 0, 0],
                vec![0, 0, 1, 0, 0, 0],
                vec![0, 1, 0, 2, 1, 2],
                vec![-1, -2, -1, -2, 0, 0],
                vec![0, 0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, -1, 1],
                vec![0, 0, 0, 0, 0, 1],
            ],
        )
        .unwrap()
    }

    #[test]
    fn weights_singular_cubics() {
        for n in [1usize, 2] {
            let nu = singular_cubics_points(n);
            nu.check_geometric().unwrap();
            let cl = character_lattice(&nu);
            assert_eq!(cl.free_rank(), 2);
            assert!(cl.invariant_factors().is_empty());
            // match the printed table up to unimodular change of basis
            let mut expected: Vec<(Vec<Int>, Vec<Int>)> = Vec::new();
            for _ in 0..n {
                expected.push((vec![int(1), int(1)], vec![]));
            }
            for _ in n..3 * n + 3 {
                expected.push((vec![int(1), int(0)], vec![]));
            }
            expected.push((vec![int(0), int(1)], vec![]));
            expected.push((vec![int(-3), int(-1)], vec![]));
            let computed: Vec<(Vec<Int>, Vec<Int>)> = cl
                .weights
                .iter()
                .map(|w| (w.free.clone(), w.torsion.clone()))
                .collect();
            let change = basis_match::find(&computed, &expected, &[]).expect("basis change");
            // anticanonical character lands on (3n, n) in the paper basis
            let anti = anticanonical_character(&cl);
            assert_eq!(
                change.apply_free(&anti.free),
                vec![int(3 * n as i64), int(n as i64)]
            );
        }
    }

    #[test]
    fn weights_two_planes() {
        for d in [3usize, 4] {
            let nu = two_planes_points(d);
            nu.check_geometric().unwrap();
            let cl = character_lattice(&nu);
            assert_eq!(cl.free_rank(), 3);
            assert!(cl.invariant_factors().is_empty());
            let mut expected: Vec<(Vec<Int>, Vec<Int>)> = Vec::new();
            for _ in 0..2 * d - 4 {
                expected.push((vec![int(1), int(0), int(0)], vec![]));
            }
            for _ in 0..3 {
                expected.push((vec![int(1), int(0), int(1)], vec![]));
            }
            expected.push((vec![int(1), int(0), int(0)], vec![])); // x_{2d}
            expected.push((vec![int(0), int(1), int(0)], vec![])); // u_1
            expected.push((vec![int(0), int(1), int(1)], vec![])); // u_2
            expected.push((vec![int(-(d as i64)), int(-1), int(-2)], vec![])); // u_3
            let computed: Vec<(Vec<Int>, Vec<Int>)> = cl
                .weights
                .iter()
                .map(|w| (w.free.clone(), w.torsion.clone()))
                .collect();
            let change = basis_match::find(&computed, &expected, &[]).expect("basis change");
            let anti = anticanonical_character(&cl);
            assert_eq!(
                change.apply_free(&anti.free),
                vec![int(d as i64), int(1), int(2)]
            );
        }
    }

    #[test]
    fn weights_sod_fcy() {
        let nu = sod_fcy_points();
        let cl = character_lattice(&nu);
        assert_eq!(cl.free_rank(), 2);
        assert_eq!(cl.invariant_factors(), &[int(2)]);
        let expected: Vec<(Vec<Int>, Vec<Int>)> = vec![
            (vec![int(1), int(1)], vec![int(1)]),  // x1
            (vec![int(1), int(1)], vec![int(0)]),  // x2
            (vec![int(1), int(1)], vec![int(1)]),  // x3
            (vec![int(1), int(1)], vec![int(0)]),  // x4
            (vec![int(1), int(1)], vec![int(1)]),  // x5
            (vec![int(-1), int(0)], vec![int(0)]), // x6
            (vec![int(0), int(1)], vec![int(0)]),  // x7
            (vec![int(-2), int(-3)], vec![int(0)]), // x8
        ];
        let computed: Vec<(Vec<Int>, Vec<Int>)> = cl
            .weights
            .iter()
            .map(|w| (w.free.clone(), w.torsion.clone()))
            .collect();
        assert!(basis_match::find(&computed, &expected, &[int(2)]).is_some());
    }

    #[test]
    fn anticanonical_trivial_for_simplex() {
        let nu = PointCollection::from_i64(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let cl = character_lattice(&nu);
        assert_eq!(cl.free_rank(), 0);
        let anti = anticanonical_character(&cl);
        assert!(anti.free.is_empty());
    }

    #[test]
    fn chi_k_extended_properties() {
        let nu = singular_cubics_points(1);
        let cl = character_lattice(&nu);
        for r_set in [vec![], vec![7usize], vec![0, 6]] {
            let chi = chi_k_extended(&cl, &r_set);
            let anti = anticanonical_character(&cl);
            assert_eq!(
                chi.base.free,
                anti.free.iter().map(|x| -x.clone()).collect::<Vec<_>>()
            );
            assert_eq!(chi.r_weight, int(-(r_set.len() as i64)));
        }
    }

    #[test]
    fn class_relation_examples() {
        // Orlov n=5, d=3 with R = {a}: t = -2 + 1 - 1 = -2
        let mut pts: Vec<Vec<i64>> = Vec::new();
        for i in 0..5 {
            let mut e = vec![0i64; 6];
            e[i] = 1;
            pts.push(e);
        }
        pts.push(vec![-1, -1, -1, -1, -1, 3]);
        let mut a = vec![0i64; 6];
        a[5] = 1;
        pts.push(a);
        let nu = PointCollection::from_i64(6, &pts).unwrap();
        let cl = character_lattice(&nu);
        let m = RatVector(vec![
            rat_int(1),
            rat_int(1),
            rat_int(1),
            rat_int(1),
            rat_int(1),
            rat_int(2),
        ]);
        let part = height_partition(&nu, &m);
        assert_eq!(part.other, vec![6]);
        let t = class_relation_reduce(&cl, &[6], &m, &part).unwrap();
        assert_eq!(t, rat_int(-2));

        // empty ν≠1 and empty R: t = 0
        let simple = PointCollection::from_i64(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let scl = character_lattice(&simple);
        let sm = RatVector::from_i64(&[1, 1]);
        let spart = height_partition(&simple, &sm);
        assert!(spart.other.is_empty());
        assert_eq!(class_relation_reduce(&scl, &[], &sm, &spart).unwrap(), rat_int(0));

        // sod-fcy with R = {v8}: t = -2 + 1 - 1 = -2
        let nu = sod_fcy_points();
        let cl = character_lattice(&nu);
        let m = RatVector(vec![
            rat_int(1),
            rat_int(1),
            rat_int(1),
            rat(-5, 2),
            rat_int(1),
            rat_int(2),
        ]);
        let part = height_partition(&nu, &m);
        assert_eq!(part.other, vec![7]);
        let t = class_relation_reduce(&cl, &[7], &m, &part).unwrap();
        assert_eq!(t, rat_int(-2));
    }

    #[test]
    fn h_presentation_examples() {
        // Orlov n=2, d=3: Ŝ_ν = Z with weights (1,1,1,-3); I_∅ = {a}, R = {a}
        // gives Ĥ = Z^2 / (-3, 1) ≅ Z
        let nu = PointCollection::from_i64(
            3,
            &[vec![1, 0, 0], vec![0, 1, 0], vec![-1, -1, 3], vec![0, 0, 1]],
        )
        .unwrap();
        let cl = character_lattice(&nu);
        let h = h_presentation(&cl, &[0, 1, 2], &[3]).unwrap();
        assert_eq!(h.presentation.free_rank, 1);
        assert!(h.presentation.invariant_factors.is_empty());
        assert_eq!(h.relations.len(), 1);
        assert_eq!(h.relations[0].r_weight, int(1));

        // I_∅ = ∅: Ĥ = Ŝ_ν ⊕ Z
        let h = h_presentation(&cl, &[0, 1, 2, 3], &[3]).unwrap();
        assert_eq!(h.presentation.free_rank, cl.free_rank() + 1);
        assert!(h.relations.is_empty());

        // singular cubics with Σ(1) = ν_{=1}, R = R2: rank 2
        let nu = singular_cubics_points(1);
        let cl = character_lattice(&nu);
        let sigma: Vec<usize> = (0..7).collect();
        let r2 = vec![0usize, 6];
        let h = h_presentation(&cl, &sigma, &r2).unwrap();
        assert_eq!(h.presentation.free_rank, 2);
        assert!(h.presentation.invariant_factors.is_empty());
    }

    #[test]
    fn h_presentation_rejects_trivial_character() {
        // extremal point in I_∅ has zero character: ν = basis of Z^2,
        // leaving out e_2 from Σ(1)
        let nu = PointCollection::from_i64(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        let cl = character_lattice(&nu);
        let err = h_presentation(&cl, &[0], &[]);
        assert_eq!(err, Err(CharacterError::TrivialDivisorCharacter(1)));
    }

    #[test]
    fn r_swap_examples() {
        // sod-fcy: R1 = {v8}, R2 = {v6, v7}; v6 + v7 = v8
        let nu = sod_fcy_points();
        let cl = character_lattice(&nu);
        let swap = r_swap(&cl, &[7], &[5, 6]).unwrap();
        assert_eq!(swap.table_after[5].1, int(1));
        assert_eq!(swap.table_after[6].1, int(1));
        assert_eq!(swap.table_after[7].1, int(0));

        // identity swap
        let swap = r_swap(&cl, &[7], &[7]).unwrap();
        assert!(swap.beta.iter().all(|x| x.is_zero()));

        // two-planes: R1 = {v_{2d+1}, v_{2d+2}}, R2 = {a}
        let d = 3;
        let nu = two_planes_points(d);
        let cl = character_lattice(&nu);
        let n = nu.len();
        let swap = r_swap(&cl, &[n - 3, n - 2], &[n - 1]).unwrap();
        assert_eq!(swap.table_after[n - 1].1, int(1));
        assert_eq!(swap.table_after[n - 3].1, int(0));

        // failing precondition
        let err = r_swap(&cl, &[0], &[1]);
        assert_eq!(err.unwrap_err(), CharacterError::SwapRelationFails);
    }

    #[test]
    fn exactness_of_weights() {
        // for every basis vector m of M, Σ <m, v_i> * weight_i = 0
        for nu in [singular_cubics_points(1), sod_fcy_points()] {
            let cl = character_lattice(&nu);
            let d = nu.ambient_rank();
            for k in 0..d {
                let mut free_acc = vec![Int::zero(); cl.free_rank()];
                let mut tors_acc = vec![Int::zero(); cl.invariant_factors().len()];
                for (i, p) in nu.points().iter().enumerate() {
                    let coeff = p[k].clone();
                    for (a, b) in free_acc.iter_mut().zip(&cl.weight(i).free) {
                        *a += &coeff * b;
                    }
                    for (a, b) in tors_acc.iter_mut().zip(&cl.weight(i).torsion) {
                        *a += &coeff * b;
                    }
                }
                assert!(free_acc.iter().all(|x| x.is_zero()));
                for (x, f) in tors_acc.iter().zip(cl.invariant_factors()) {
                    assert!((x % f).is_zero());
                }
            }
        }
    }

    #[test]
    fn equality_of_snus_bundle_fans() {
        use crate::polyhedra::{bundle_fan, Fan, TorusDivisor};
        // S_{Σ(1)} ≅ S_{Σ_{D_1..D_t}(1)}: same free rank and factors
        let p2 = Fan::from_i64(
            2,
            &[vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        );
        let divisor_sets: Vec<Vec<TorusDivisor>> = vec![
            vec![TorusDivisor::from_i64(&[-1, 0, 0])],
            vec![TorusDivisor::from_i64(&[-1, -1, -1])],
            vec![
                TorusDivisor::from_i64(&[-2, 0, 0]),
                TorusDivisor::from_i64(&[0, -1, -1]),
            ],
        ];
        let base_nu = PointCollection::new(2, p2.ray_generators.clone()).unwrap();
        let base_cl = character_lattice(&base_nu);
        for divs in divisor_sets {
            let lifted = bundle_fan(&p2, &divs);
            let nu = PointCollection::new(lifted.ambient_rank, lifted.ray_generators.clone())
                .unwrap();
            let cl = character_lattice(&nu);
            assert_eq!(cl.free_rank(), base_cl.free_rank());
            assert_eq!(cl.invariant_factors(), base_cl.invariant_factors());
        }
    }
}
