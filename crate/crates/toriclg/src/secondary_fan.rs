//! The GKZ / secondary fan of a point collection: chamber enumeration,
//! chamber-to-fan translation, irrelevant ideals, wall data, character
//! placement, and wall-crossing paths.
//!
//! Chambers live in the rational vector space spanned by the free part of
//! the character lattice; torsion is reported but never enters cone
//! arithmetic. Full enumeration is supported for gkz rank <= 3, which
//! covers every instance of interest here; query operations work on the
//! enumerated fan.

use crate::characters::CharacterLattice;
use crate::exact_linalg::{
    dot, int, int_to_rat_vec, kernel_basis, primitivize, solve_rational, Int, IntMatrix, Rat,
    RatVector,
};
use crate::lp::{feasible_point, Constraint};
use crate::polyhedra::{Cone, Fan};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GkzError {
    #[error("gkz rank {0} too large for full enumeration (max 3)")]
    RankTooLarge(usize),
    #[error("degenerate cell sample; exact arrangement produced a non-generic point")]
    DegenerateSample,
    #[error("character lies outside the support of the secondary fan")]
    OutsideSupport,
    #[error("unknown chamber id {0}")]
    UnknownChamber(usize),
    #[error("no anchored path after {0} perturbation attempts")]
    NoAnchoredPath(usize),
    #[error("inconsistent chamber: {0}")]
    InconsistentChamber(String),
    #[error("point collection error: {0}")]
    Points(#[from] crate::characters::CharacterError),
}

/// A maximal GKZ cone with its GIT and fan data.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Chamber {
    pub id: usize,
    /// the cone Γ in the free character space
    pub cone: Cone,
    /// interior integer sample: sum of the primitive extreme rays
    pub sample: Vec<Int>,
    /// minimal semistable index subsets; the monomials Π_{i∈S} x_i
    /// generate the irrelevant ideal
    pub irrelevant_generators: Vec<Vec<usize>>,
    /// the simplicial fan Σ with Σ(1) ⊆ ν associated to the chamber
    pub fan: Fan,
    /// indices of the fan rays inside ν
    pub ray_points: Vec<usize>,
    /// ν-indices not appearing in any maximal cone
    pub i_empty: Vec<usize>,
}

/// A codimension-one cone between two chambers, with the primitive
/// one-parameter subgroup λ oriented positively on `chamber_plus`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Wall {
    pub chamber_minus: usize,
    pub chamber_plus: usize,
    pub lambda: Vec<Int>,
    /// μ = -Σ_i <λ, weight_i> = <λ, χ_K>
    pub mu: Int,
    /// generators of the shared codimension-one cone
    pub span_generators: Vec<Vec<Int>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SecondaryFan {
    pub gkz_rank: usize,
    /// free parts of the point weights (the support generators π(e_i))
    pub weights: Vec<Vec<Int>>,
    /// set when the character lattice has torsion that the fan ignores
    pub torsion_dropped: bool,
    /// invariant factors of the torsion subgroup, carried for reporting
    pub torsion_factors: Vec<Int>,
    /// torsion residues of the point weights, carried for reporting
    pub torsion_weights: Vec<Vec<Int>>,
    pub chambers: Vec<Chamber>,
    pub walls: Vec<Wall>,
}

/// Which side embeds fully-faithfully under an elementary wall crossing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CrossingDirection {
    /// μ < 0: the minus side embeds into the plus side
    MinusIntoPlus,
    /// μ > 0: the plus side embeds into the minus side
    PlusIntoMinus,
    /// μ = 0: equivalence
    Equivalence,
}

/// Presentation of S_0 = S_ν / λ(G_m) with the weights induced on the
/// λ-fixed coordinates.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct S0Presentation {
    pub free_rank: usize,
    pub invariant_factors: Vec<Int>,
    /// for each point of ν: Some((free, torsion)) when the coordinate is
    /// λ-fixed, None otherwise
    pub weights: Vec<Option<(Vec<Int>, Vec<Int>)>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossingReport {
    pub chamber_minus: usize,
    pub chamber_plus: usize,
    pub lambda: Vec<Int>,
    pub mu: Int,
    pub direction: CrossingDirection,
    /// |μ|, the number of orthogonal summands produced by the crossing
    pub orthogonal_count: Int,
    /// λ-weights of the orthogonal summands D(ℓ), listed from the theorem's
    /// index range
    pub orthogonal_weights: Vec<Int>,
    /// indices i with <λ, weight_i> = 0
    pub fixed_coordinates: Vec<usize>,
    pub s0: S0Presentation,
}

/// One step of a wall-crossing path, oriented along the travel direction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathStep {
    pub wall_index: usize,
    pub from_chamber: usize,
    pub to_chamber: usize,
    /// λ re-oriented toward `to_chamber`
    pub lambda_toward_to: Vec<Int>,
    /// μ with respect to that orientation
    pub mu_toward_to: Int,
}

/// Minimal semistable supports of a generic character: by Carathéodory and
/// genericity these are exactly the independent r-subsets whose cone
/// contains χ with strictly positive coefficients.
fn minimal_semistable_sets(
    weights: &[Vec<Int>],
    chi: &[Rat],
    rank: usize,
) -> Result<Vec<Vec<usize>>, GkzError> {
    let n = weights.len();
    let mut out = Vec::new();
    let mut idx: Vec<usize> = Vec::new();
    fn rec(
        weights: &[Vec<Int>],
        chi: &[Rat],
        rank: usize,
        start: usize,
        idx: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        degenerate: &mut bool,
    ) {
        if idx.len() == rank {
            let m = IntMatrix::from_rows(&idx.iter().map(|&i| weights[i].clone()).collect::<Vec<_>>())
                .transpose();
            match solve_rational(&m, &RatVector(chi.to_vec())) {
                Ok(c) => {
                    if c.0.iter().all(|x| x.is_positive()) {
                        out.push(idx.clone());
                    } else if c.0.iter().all(|x| !x.is_negative()) {
                        // on the boundary of this weight cone, hence on a
                        // weight ray: the sample is not generic
                        *degenerate = true;
                    }
                }
                Err(_) => {} // dependent columns or inconsistent: skip
            }
            return;
        }
        for i in start..weights.len() {
            idx.push(i);
            rec(weights, chi, rank, i + 1, idx, out, degenerate);
            idx.pop();
        }
    }
    let mut degenerate = false;
    rec(weights, chi, rank, 0, &mut idx, &mut out, &mut degenerate);
    let _ = n;
    if degenerate {
        return Err(GkzError::DegenerateSample);
    }
    Ok(out)
}

/// Intersection of the weight cones over a family of index subsets.
fn family_cone(weights: &[Vec<Int>], rank: usize, family: &[Vec<usize>]) -> Cone {
    let mut constraints: Vec<Vec<Int>> = Vec::new();
    for s in family {
        let c = Cone::new(
            rank,
            s.iter().map(|&i| weights[i].clone()).collect(),
        );
        constraints.extend(c.facet_normals().iter().cloned());
    }
    Cone::new(rank, crate::polyhedra::hrep_generators(&constraints, rank))
}

/// The GKZ cone of a (fan, I_∅) pair:
/// `Γ = ∩_{σ max} Cone(π(e_ρ) : u_ρ ∈ I_∅ or ρ ∉ σ)`.
pub fn gamma_cone(
    fan_point_sets: &[Vec<usize>],
    i_empty: &[usize],
    cl: &CharacterLattice,
) -> Cone {
    let rank = cl.free_rank();
    let n = cl.nu.len();
    let weights = cl.free_weight_rows();
    let mut constraints: Vec<Vec<Int>> = Vec::new();
    if fan_point_sets.is_empty() {
        // empty intersection convention: the whole support
        return Cone::new(rank, weights);
    }
    for sigma in fan_point_sets {
        let in_sigma: BTreeSet<usize> = sigma.iter().cloned().collect();
        let gens: Vec<Vec<Int>> = (0..n)
            .filter(|i| i_empty.contains(i) || !in_sigma.contains(i))
            .map(|i| weights[i].clone())
            .collect();
        let c = Cone::new(rank, gens);
        constraints.extend(c.facet_normals().iter().cloned());
    }
    Cone::new(rank, crate::polyhedra::hrep_generators(&constraints, rank))
}

/// Full chamber and wall enumeration (gkz rank <= 3).
pub fn enumerate_chambers(cl: &CharacterLattice) -> Result<SecondaryFan, GkzError> {
    cl.nu.check_geometric()?;
    let rank = cl.free_rank();
    if rank > 3 {
        return Err(GkzError::RankTooLarge(rank));
    }
    let weights = cl.free_weight_rows();
    let torsion_dropped = !cl.invariant_factors().is_empty();
    let torsion_factors = cl.invariant_factors().to_vec();
    let torsion_weights: Vec<Vec<Int>> = cl.weights.iter().map(|w| w.torsion.clone()).collect();
    if rank == 0 {
        return Ok(SecondaryFan {
            gkz_rank: 0,
            weights,
            torsion_dropped,
            torsion_factors,
            torsion_weights,
            chambers: vec![],
            walls: vec![],
        });
    }
    let samples = cell_samples(&weights, rank)?;
    // group cells by their minimal semistable family; rank-2 candidate
    // midpoints of wrap-around ray pairs may land on a weight ray, which is
    // harmless because every true sector also produces a clean midpoint
    let mut by_family: BTreeMap<Vec<Vec<usize>>, Vec<Rat>> = BTreeMap::new();
    for s in samples {
        let mut fam = match minimal_semistable_sets(&weights, &s, rank) {
            Ok(f) => f,
            Err(GkzError::DegenerateSample) if rank == 2 => continue,
            Err(e) => return Err(e),
        };
        fam.sort();
        if fam.is_empty() {
            continue; // outside the support (possible for pointed support)
        }
        by_family.entry(fam).or_insert(s);
    }
    let mut chambers: Vec<Chamber> = Vec::new();
    for (family, cell_sample) in by_family {
        let cone = family_cone(&weights, rank, &family);
        let extremes = cone.extreme_generators();
        let sample: Vec<Int> = {
            let mut acc = vec![Int::zero(); rank];
            for r in &extremes {
                for (a, b) in acc.iter_mut().zip(r) {
                    *a += b;
                }
            }
            acc
        };
        // sanity: the integer sample reproduces the family
        let mut fam2 = minimal_semistable_sets(&weights, &int_to_rat_vec(&sample), rank)?;
        fam2.sort();
        if fam2 != family {
            return Err(GkzError::InconsistentChamber(format!(
                "ray-sum sample disagrees with cell sample {cell_sample:?}"
            )));
        }
        let (fan, ray_points, i_empty) = chamber_fan(cl, &family);
        chambers.push(Chamber {
            id: 0,
            cone,
            sample,
            irrelevant_generators: family,
            fan,
            ray_points,
            i_empty,
        });
    }
    // canonical order: by sorted ray lists
    chambers.sort_by_key(|c| {
        let mut rays = c.cone.generators().to_vec();
        rays.sort();
        rays
    });
    for (i, c) in chambers.iter_mut().enumerate() {
        c.id = i;
    }
    // roundtrip validation against the alternate GKZ cone definition
    for c in &chambers {
        let sigma_point_sets: Vec<Vec<usize>> = c
            .fan
            .max_cones
            .iter()
            .map(|mc| mc.iter().map(|&ri| c.ray_points[ri]).collect())
            .collect();
        let gamma = gamma_cone(&sigma_point_sets, &c.i_empty, cl);
        if !gamma.same_cone(&c.cone) {
            return Err(GkzError::InconsistentChamber(format!(
                "gamma cone roundtrip failed for chamber {}",
                c.id
            )));
        }
    }
    let walls = find_walls(&chambers, &weights, rank);
    Ok(SecondaryFan {
        gkz_rank: rank,
        weights,
        torsion_dropped,
        torsion_factors,
        torsion_weights,
        chambers,
        walls,
    })
}

/// Interior sample points, one per full-dimensional cell of the arrangement
/// of weight-spanned hyperplanes restricted to the support.
fn cell_samples(weights: &[Vec<Int>], rank: usize) -> Result<Vec<Vec<Rat>>, GkzError> {
    match rank {
        1 => {
            let mut out = Vec::new();
            if weights.iter().any(|w| w[0].is_positive()) {
                out.push(vec![Rat::one()]);
            }
            if weights.iter().any(|w| w[0].is_negative()) {
                out.push(vec![-Rat::one()]);
            }
            Ok(out)
        }
        2 => {
            // distinct primitive rays sorted by angle; cells are the sectors
            // between consecutive rays inside the support
            let mut rays: Vec<Vec<Int>> = weights
                .iter()
                .map(|w| primitivize(w))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            rays.sort_by(angle_cmp);
            let support = Cone::new(2, weights.to_vec());
            let m = rays.len();
            let mut out = Vec::new();
            // cyclic consecutive pairs; sectors outside the support are
            // filtered by the interior test, duplicates collapse later when
            // cells are merged by their semistable families
            for i in 0..m {
                let j = (i + 1) % m;
                if i == j {
                    continue;
                }
                let mid: Vec<Rat> = rays[i]
                    .iter()
                    .zip(&rays[j])
                    .map(|(a, b)| Rat::from_integer(a + b))
                    .collect();
                if mid.iter().all(|x| x.is_zero()) {
                    // opposite rays bound two halfplane sectors: probe both
                    for sign in [1i64, -1] {
                        let p: Vec<Rat> = vec![
                            Rat::from_integer(&rays[i][0] - int(sign) * &rays[i][1]),
                            Rat::from_integer(&rays[i][1] + int(sign) * &rays[i][0]),
                        ];
                        if support.contains_rat_interior(&p) {
                            out.push(p);
                        }
                    }
                    continue;
                }
                if support.contains_rat_interior(&mid) {
                    out.push(mid);
                }
            }
            Ok(out)
        }
        3 => {
            // hyperplane normals spanned by weight pairs
            let mut normals: BTreeSet<Vec<Int>> = BTreeSet::new();
            for i in 0..weights.len() {
                for j in i + 1..weights.len() {
                    let n = cross3(&weights[i], &weights[j]);
                    if n.iter().all(|x| x.is_zero()) {
                        continue;
                    }
                    normals.insert(canonical_sign(&primitivize(&n)));
                }
            }
            let normals: Vec<Vec<Int>> = normals.into_iter().collect();
            let support = Cone::new(3, weights.to_vec());
            let base: Vec<Constraint> = support
                .facet_normals()
                .iter()
                .map(|f| Constraint::ge(int_to_rat_vec(f), Rat::one()))
                .collect();
            let mut out = Vec::new();
            let mut signs: Vec<bool> = Vec::new();
            branch_cells(&normals, &base, &mut signs, &mut out);
            Ok(out)
        }
        _ => Err(GkzError::RankTooLarge(rank)),
    }
}

fn branch_cells(
    normals: &[Vec<Int>],
    base: &[Constraint],
    signs: &mut Vec<bool>,
    out: &mut Vec<Vec<Rat>>,
) {
    let k = signs.len();
    let mut cons: Vec<Constraint> = base.to_vec();
    for (i, &s) in signs.iter().enumerate() {
        let row: Vec<Rat> = if s {
            int_to_rat_vec(&normals[i])
        } else {
            normals[i].iter().map(|x| Rat::from_integer(-x.clone())).collect()
        };
        cons.push(Constraint::ge(row, Rat::one()));
    }
    match feasible_point(3, &cons) {
        None => {}
        Some(p) => {
            if k == normals.len() {
                out.push(p);
            } else {
                signs.push(true);
                branch_cells(normals, base, signs, out);
                signs.pop();
                signs.push(false);
                branch_cells(normals, base, signs, out);
                signs.pop();
            }
        }
    }
}

fn cross3(a: &[Int], b: &[Int]) -> Vec<Int> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn canonical_sign(v: &[Int]) -> Vec<Int> {
    for x in v {
        if x.is_positive() {
            return v.to_vec();
        }
        if x.is_negative() {
            return v.iter().map(|y| -y.clone()).collect();
        }
    }
    v.to_vec()
}

/// Angular order in the plane: upper half (including positive x-axis)
/// before lower half, counterclockwise within each.
fn angle_cmp(a: &Vec<Int>, b: &Vec<Int>) -> std::cmp::Ordering {
    fn half(v: &[Int]) -> u8 {
        if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
            0
        } else {
            1
        }
    }
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    let cross = &a[0] * &b[1] - &a[1] * &b[0];
    if cross.is_positive() {
        std::cmp::Ordering::Less
    } else if cross.is_negative() {
        std::cmp::Ordering::Greater
    } else {
        std::cmp::Ordering::Equal
    }
}

/// Fan of a chamber: maximal cones are the complements of the minimal
/// semistable sets; I_∅ collects the points appearing in every one of them.
fn chamber_fan(cl: &CharacterLattice, family: &[Vec<usize>]) -> (Fan, Vec<usize>, Vec<usize>) {
    let n = cl.nu.len();
    let mut in_all: Vec<bool> = vec![true; n];
    for s in family {
        let sset: BTreeSet<usize> = s.iter().cloned().collect();
        for i in 0..n {
            if !sset.contains(&i) {
                in_all[i] = false;
            }
        }
    }
    let i_empty: Vec<usize> = (0..n).filter(|&i| in_all[i]).collect();
    let ray_points: Vec<usize> = (0..n).filter(|&i| !in_all[i]).collect();
    let point_to_ray: BTreeMap<usize, usize> = ray_points
        .iter()
        .enumerate()
        .map(|(r, &p)| (p, r))
        .collect();
    let rays: Vec<Vec<Int>> = ray_points
        .iter()
        .map(|&p| cl.nu.point(p).to_vec())
        .collect();
    let max_cones: Vec<Vec<usize>> = family
        .iter()
        .map(|s| {
            let sset: BTreeSet<usize> = s.iter().cloned().collect();
            (0..n)
                .filter(|i| !sset.contains(i) && !i_empty.contains(i))
                .map(|p| point_to_ray[&p])
                .collect()
        })
        .collect();
    (
        Fan::new(cl.nu.ambient_rank(), rays, max_cones),
        ray_points,
        i_empty,
    )
}

/// Smallest parameter strictly after `after` at which the segment
/// `a + t(b-a)` leaves the cone, or None when it never does.
fn exit_param(cone: &Cone, a: &[Rat], b: &[Rat], after: &Rat) -> Option<Rat> {
    let mut t_exit: Option<Rat> = None;
    for f in cone.facet_normals() {
        let fa: Rat = f
            .iter()
            .zip(a)
            .map(|(x, y)| Rat::from_integer(x.clone()) * y)
            .sum();
        let fb: Rat = f
            .iter()
            .zip(b)
            .map(|(x, y)| Rat::from_integer(x.clone()) * y)
            .sum();
        let slope = &fb - &fa;
        if slope.is_negative() {
            let cross = -&fa / &slope;
            if &cross > after {
                t_exit = Some(match t_exit {
                    None => cross,
                    Some(old) => {
                        if cross < old {
                            cross
                        } else {
                            old
                        }
                    }
                });
            }
        }
    }
    t_exit
}

fn find_walls(chambers: &[Chamber], weights: &[Vec<Int>], rank: usize) -> Vec<Wall> {
    let mut walls = Vec::new();
    for i in 0..chambers.len() {
        for j in i + 1..chambers.len() {
            let inter = chambers[i].cone.intersection(&chambers[j].cone);
            let span: Vec<Vec<Int>> = inter.generators().to_vec();
            let dim = inter.dim();
            if dim + 1 != rank {
                continue;
            }
            let lambda = if span.is_empty() {
                vec![Int::one()] // rank 1: the wall is the origin
            } else {
                let m = IntMatrix::from_rows(&span);
                let ker = kernel_basis(&m);
                debug_assert_eq!(ker.len(), 1);
                primitivize(&ker[0])
            };
            // orient positively on chamber j, then name sides accordingly
            let pairing = dot(&lambda, &chambers[j].sample);
            let (lambda, plus, minus) = if pairing.is_positive() {
                (lambda, j, i)
            } else {
                (lambda.iter().map(|x| -x.clone()).collect(), j, i)
            };
            // the other side must be strictly negative, otherwise the
            // "wall" is a shared boundary face of the support
            if !dot(&lambda, &chambers[minus].sample).is_negative() {
                continue;
            }
            let mu = -weights.iter().map(|w| dot(&lambda, w)).sum::<Int>();
            walls.push(Wall {
                chamber_minus: minus,
                chamber_plus: plus,
                lambda,
                mu,
                span_generators: span,
            });
        }
    }
    walls
}

impl SecondaryFan {
    pub fn chamber(&self, id: usize) -> Result<&Chamber, GkzError> {
        self.chambers.get(id).ok_or(GkzError::UnknownChamber(id))
    }

    /// χ_K = -Σ weights (free part).
    pub fn chi_k_free(&self) -> Vec<Int> {
        let rank = self.gkz_rank;
        let mut acc = vec![Int::zero(); rank];
        for w in &self.weights {
            for (a, b) in acc.iter_mut().zip(w) {
                *a -= b;
            }
        }
        acc
    }

    /// Chambers whose closure contains χ; the interior one is flagged.
    pub fn locate(&self, chi: &[Rat]) -> Result<(Vec<usize>, Option<usize>), GkzError> {
        let support = Cone::new(self.gkz_rank, self.weights.clone());
        if !support.contains_rat(chi) {
            return Err(GkzError::OutsideSupport);
        }
        let mut closure = Vec::new();
        let mut interior = None;
        for c in &self.chambers {
            if c.cone.contains_rat(chi) {
                closure.push(c.id);
                if c.cone.contains_rat_interior(chi) {
                    interior = Some(c.id);
                }
            }
        }
        Ok((closure, interior))
    }

    /// Elementary wall-crossing data. Direction: the side containing χ_K
    /// embeds fully-faithfully into the other; μ = 0 is an equivalence.
    pub fn wall_crossing(&self, wall: &Wall) -> CrossingReport {
        let mu = wall.mu.clone();
        let direction = if mu.is_zero() {
            CrossingDirection::Equivalence
        } else if mu.is_positive() {
            CrossingDirection::PlusIntoMinus
        } else {
            CrossingDirection::MinusIntoPlus
        };
        let fixed: Vec<usize> = (0..self.weights.len())
            .filter(|&i| dot(&wall.lambda, &self.weights[i]).is_zero())
            .collect();
        let orthogonal_count = mu.abs();
        // λ-weights ℓ of the summands D(ℓ): -μ-d+1 .. -d at d = 0 for
        // μ > 0 and -d .. μ-d+1 at d = 0 for μ < 0
        let mut orthogonal_weights = Vec::new();
        if mu.is_positive() {
            let mut l = Int::one() - &mu;
            while !l.is_positive() {
                orthogonal_weights.push(l.clone());
                l += 1;
            }
        } else if mu.is_negative() {
            let mut l: Int = mu.clone() + 1;
            while !l.is_positive() {
                orthogonal_weights.push(l.clone());
                l += 1;
            }
        }
        self.crossing_from_parts(wall, direction, fixed, orthogonal_count, orthogonal_weights)
    }

    fn crossing_from_parts(
        &self,
        wall: &Wall,
        direction: CrossingDirection,
        fixed: Vec<usize>,
        orthogonal_count: Int,
        orthogonal_weights: Vec<Int>,
    ) -> CrossingReport {
        // S_0 character lattice: λ^⊥ in the free part, torsion untouched
        let lam = IntMatrix::from_rows(&[wall.lambda.clone()]);
        let basis = kernel_basis(&lam); // (rank-1) saturated basis vectors
        let bmat = IntMatrix::from_rows(&basis).transpose();
        let weights = (0..self.weights.len())
            .map(|i| {
                if !fixed.contains(&i) {
                    return None;
                }
                let rhs = RatVector(int_to_rat_vec(&self.weights[i]));
                let coeffs = solve_rational(&bmat, &rhs).expect("fixed weight in wall span");
                Some((
                    coeffs
                        .0
                        .iter()
                        .map(|r| {
                            debug_assert!(r.denom().is_one());
                            r.numer().clone()
                        })
                        .collect::<Vec<Int>>(),
                    self.torsion_of(i),
                ))
            })
            .collect();
        CrossingReport {
            chamber_minus: wall.chamber_minus,
            chamber_plus: wall.chamber_plus,
            lambda: wall.lambda.clone(),
            mu: wall.mu.clone(),
            direction,
            orthogonal_count,
            orthogonal_weights,
            fixed_coordinates: fixed,
            s0: S0Presentation {
                free_rank: self.gkz_rank - 1,
                invariant_factors: self.torsion_factors.clone(),
                weights,
            },
        }
    }

    fn torsion_of(&self, i: usize) -> Vec<Int> {
        self.torsion_weights
            .get(i)
            .cloned()
            .unwrap_or_default()
    }

    /// Straight-segment wall path between two chambers, deterministically
    /// perturbed to avoid codimension-two cones. With an anchor, every
    /// crossed wall must contain the anchor or be crossed toward it.
    pub fn path(
        &self,
        from: usize,
        to: usize,
        anchor: Option<&[Int]>,
    ) -> Result<Vec<PathStep>, GkzError> {
        let from_c = self.chamber(from)?;
        let to_c = self.chamber(to)?;
        if from == to {
            return Ok(vec![]);
        }
        let a0 = int_to_rat_vec(&from_c.sample);
        let b0 = int_to_rat_vec(&to_c.sample);
        let mut attempts = 0usize;
        let max_attempts = 48usize;
        let mut denom = int(64);
        let mut dir = 0usize;
        loop {
            let (a, b) = if attempts == 0 {
                (a0.clone(), b0.clone())
            } else {
                // rational offsets along a fixed lexicographic schedule
                let mut b = b0.clone();
                let eps = Rat::new(Int::one(), denom.clone());
                let coord = dir % self.gkz_rank;
                let sign = if (dir / self.gkz_rank) % 2 == 0 { 1 } else { -1 };
                b[coord] += Rat::from_integer(int(sign)) * eps;
                (a0.clone(), b)
            };
            attempts += 1;
            match self.walk(from, to, &a, &b, anchor) {
                Ok(steps) => return Ok(steps),
                Err(GkzError::NoAnchoredPath(_)) | Err(GkzError::DegenerateSample) => {
                    if attempts >= max_attempts {
                        return Err(GkzError::NoAnchoredPath(attempts));
                    }
                    dir += 1;
                    if dir % (2 * self.gkz_rank) == 0 {
                        denom = &denom * int(4);
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }

    fn walk(
        &self,
        from: usize,
        to: usize,
        a: &[Rat],
        b: &[Rat],
        anchor: Option<&[Int]>,
    ) -> Result<Vec<PathStep>, GkzError> {
        // b must still lie in the target chamber's interior
        if !self.chambers[to].cone.contains_rat_interior(b) {
            return Err(GkzError::DegenerateSample);
        }
        let mut current = from;
        let mut t = Rat::zero();
        let mut steps: Vec<PathStep> = Vec::new();
        let max_steps = self.chambers.len() + 2;
        while current != to {
            if steps.len() > max_steps {
                return Err(GkzError::DegenerateSample);
            }
            let t_exit = match exit_param(&self.chambers[current].cone, a, b, &t) {
                None => return Err(GkzError::DegenerateSample),
                Some(x) => x,
            };
            if t_exit >= Rat::one() {
                return Err(GkzError::DegenerateSample);
            }
            let x: Vec<Rat> = a
                .iter()
                .zip(b)
                .map(|(p, q)| p + (q - p) * &t_exit)
                .collect();
            // the crossing point must lie on exactly one incident wall
            let mut hit: Option<usize> = None;
            for (wi, w) in self.walls.iter().enumerate() {
                if w.chamber_minus != current && w.chamber_plus != current {
                    continue;
                }
                let wall_cone = Cone::new(self.gkz_rank, w.span_generators.clone());
                let on_wall = if w.span_generators.is_empty() {
                    x.iter().all(|c| c.is_zero())
                } else {
                    // membership in the closed wall cone requires the point
                    // to pair to zero with λ and lie in the cone
                    let lam_pair: Rat = w
                        .lambda
                        .iter()
                        .zip(&x)
                        .map(|(l, c)| Rat::from_integer(l.clone()) * c)
                        .sum();
                    lam_pair.is_zero() && wall_cone.contains_rat(&x)
                };
                if on_wall {
                    if hit.is_some() {
                        return Err(GkzError::DegenerateSample);
                    }
                    hit = Some(wi);
                }
            }
            let wi = hit.ok_or(GkzError::DegenerateSample)?;
            let w = &self.walls[wi];
            let next = if w.chamber_minus == current {
                w.chamber_plus
            } else {
                w.chamber_minus
            };
            let toward_next_sign = if w.chamber_plus == next { 1 } else { -1 };
            let lambda_toward: Vec<Int> = w
                .lambda
                .iter()
                .map(|l| l * int(toward_next_sign))
                .collect();
            let mu_toward = &w.mu * int(toward_next_sign);
            if let Some(anchor) = anchor {
                if dot(&lambda_toward, anchor).is_negative() {
                    return Err(GkzError::NoAnchoredPath(1));
                }
            }
            // probe strictly between this wall and the exit of the entered
            // chamber: the segment must run inside it, not graze a corner
            let next_exit = exit_param(&self.chambers[next].cone, a, b, &t_exit)
                .unwrap_or_else(Rat::one);
            if next_exit <= t_exit {
                return Err(GkzError::DegenerateSample);
            }
            let probe_t = (&t_exit + &next_exit) / Rat::from_integer(int(2));
            let probe: Vec<Rat> = a
                .iter()
                .zip(b)
                .map(|(p, q)| p + (q - p) * &probe_t)
                .collect();
            if !self.chambers[next].cone.contains_rat(&probe) {
                return Err(GkzError::DegenerateSample);
            }
            steps.push(PathStep {
                wall_index: wi,
                from_chamber: current,
                to_chamber: next,
                lambda_toward_to: lambda_toward,
                mu_toward_to: mu_toward,
            });
            current = next;
            t = t_exit;
        }
        Ok(steps)
    }

    /// DOT rendering of the chamber graph; node labels are the irrelevant
    /// ideals, edge labels carry λ and μ.
    pub fn to_dot(&self, point_names: &[String]) -> String {
        let mut out = String::from("graph secondary_fan {\n");
        for c in &self.chambers {
            let ideal = c
                .irrelevant_generators
                .iter()
                .map(|s| {
                    s.iter()
                        .map(|&i| point_names[i].clone())
                        .collect::<Vec<_>>()
                        .join("*")
                })
                .collect::<Vec<_>>()
                .join(", ");
            out.push_str(&format!(
                "  c{} [label=\"Γ{}\\n⟨{}⟩\"];\n",
                c.id, c.id, ideal
            ));
        }
        for w in &self.walls {
            out.push_str(&format!(
                "  c{} -- c{} [label=\"λ={:?} μ={}\"];\n",
                w.chamber_minus,
                w.chamber_plus,
                w.lambda.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                w.mu
            ));
        }
        out.push_str("}\n");
        out
    }
}
