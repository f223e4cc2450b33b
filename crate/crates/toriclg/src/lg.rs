//! Top-level gauged Landau-Ginzburg analysis: classification and
//! fractional Calabi-Yau dimensions, Orlov-type phase comparisons,
//! superpotential and complete-intersection extraction, alternate
//! splittings, and the stratum-compatibility checks used by the crepant
//! resolution arguments.

use crate::characters::{
    character_lattice, height_partition, CharacterError, CharacterLattice, HeightPartition,
    PointCollection,
};
use crate::exact_linalg::{
    dot, int, int_to_rat_vec, smith_normal_form, solve_rational, Int, IntMatrix, Rat, RatVector,
};
use crate::polyhedra::{
    bundle_fan, cayley_cone, gorenstein_classify, is_nef, slice_points, Cone, Fan,
    GorensteinKind, GorensteinWitness, HPolytope, PolyhedraError, TorusDivisor,
};
use crate::secondary_fan::{CrossingReport, GkzError, PathStep, SecondaryFan};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LgError {
    #[error("cone of the collection is not Q-Gorenstein; no height-1 witness on generators {failing:?}")]
    NotQGorenstein { failing: Vec<usize> },
    #[error("mixed heights on the non-unit partition: {table:?}")]
    MixedHeights { table: Vec<(usize, Rat)> },
    #[error("grading covector is required for this operation")]
    MissingNvec,
    #[error("monomial {0} is not linear in exactly one grouping coordinate")]
    MonomialNotLinear(usize),
    #[error("monomial {0} has exponents inconsistent with the point collection")]
    MonomialInconsistent(usize),
    #[error("support mismatch: Cone(nu) is not the bundle-fan support")]
    SupportMismatch,
    #[error("divisor {0} is not nef")]
    DivisorNotNef(usize),
    #[error("the R-charge set does not match the bundle fiber coordinates")]
    RChargeMismatch,
    #[error("alternate splitting vectors do not sum to the grading covector")]
    SplitSumMismatch,
    #[error("alternate splitting vectors do not extend to a Z-basis")]
    NotBasisExtension,
    #[error("projection of point {0} is not primitive")]
    NonPrimitiveProjection(usize),
    #[error("splitting vector {0} does not pair to one with the witness")]
    HeightNotOneSplitting(usize),
    #[error("chamber {0} does not satisfy the required phase shape")]
    BadChamber(usize),
    #[error("polyhedral error: {0}")]
    Polyhedra(#[from] PolyhedraError),
    #[error("character error: {0}")]
    Character(#[from] CharacterError),
    #[error("secondary fan error: {0}")]
    Gkz(#[from] GkzError),
}

/// Coefficient tag of a superpotential monomial: an opaque generic symbol
/// or an explicit rational. No genericity is ever verified.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Generic(String),
    Explicit { num: i64, den: i64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    /// the lattice point m in M
    pub point: Vec<Int>,
    /// exponents over the coordinates of ν
    pub exponents: Vec<Int>,
    pub coeff: Coefficient,
}

/// A gauged LG model: the collection ν, the R-charge subset, an optional
/// superpotential (None means the full height-one slice with generic
/// coefficients), and the grading covector 𝔫.
#[derive(Debug, Clone)]
pub struct GaugedLGSpec {
    pub nu: PointCollection,
    pub r_charge: Vec<usize>,
    pub nvec: Option<Vec<Int>>,
    pub monomials: Option<Vec<Monomial>>,
    pub critical_proper_asserted: bool,
    pub ci_regular_asserted: bool,
}

impl GaugedLGSpec {
    pub fn new(nu: PointCollection, r_charge: Vec<usize>) -> Self {
        GaugedLGSpec {
            nu,
            r_charge,
            nvec: None,
            monomials: None,
            critical_proper_asserted: false,
            ci_regular_asserted: false,
        }
    }

    pub fn cone(&self) -> Cone {
        Cone::new(self.nu.ambient_rank(), self.nu.points().to_vec())
    }

    /// Build a monomial from exponents, solving for the lattice point.
    pub fn monomial_from_exponents(
        &self,
        exps: &[Int],
        coeff: Coefficient,
        index: usize,
    ) -> Result<Monomial, LgError> {
        let f = self.nu.f_matrix();
        let rhs = RatVector(int_to_rat_vec(exps));
        let m = solve_rational(&f, &rhs).map_err(|_| LgError::MonomialInconsistent(index))?;
        if m.0.iter().any(|x| !x.denom().is_one()) {
            return Err(LgError::MonomialInconsistent(index));
        }
        let point: Vec<Int> = m.0.iter().map(|x| x.numer().clone()).collect();
        Ok(Monomial {
            point,
            exponents: exps.to_vec(),
            coeff,
        })
    }
}

/// The combinatorial classification of a gauged LG model.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub gorenstein: GorensteinWitness,
    pub heights: Vec<Rat>,
    pub nu_eq1: Vec<usize>,
    pub nu_neq1: Vec<usize>,
    /// smallest d with d * m integral
    pub torsion_order: Int,
    pub fcy_dimension: Rat,
    pub is_cy: bool,
    pub quasi_cy: bool,
    /// properness of the critical locus cannot be decided here; the user
    /// assertion is echoed with every report
    pub critical_proper_asserted: bool,
}

/// Fractional Calabi-Yau dimension by the literal formula
/// `-2 Σ_{ν≠1} <m, v> + 2|ν≠1| - 2|R| + dim N`, applied to the supplied
/// collection and R-set exactly as given (no implicit reduction).
pub fn classify(spec: &GaugedLGSpec, hilbert_budget: &Int) -> Result<ClassificationReport, LgError> {
    let cone = spec.cone();
    let witness = gorenstein_classify(&cone, hilbert_budget)?;
    if witness.kind == GorensteinKind::None {
        let failing = failing_generators(&cone);
        return Err(LgError::NotQGorenstein { failing });
    }
    let m = witness.m_vector.clone().expect("witness present");
    let partition = height_partition(&spec.nu, &m);
    let mut fcy = Rat::zero();
    for &i in &partition.other {
        fcy -= Rat::from_integer(int(2)) * &partition.heights[i];
    }
    fcy += Rat::from_integer(int(2 * partition.other.len() as i64));
    fcy -= Rat::from_integer(int(2 * spec.r_charge.len() as i64));
    fcy += Rat::from_integer(int(spec.nu.ambient_rank() as i64));
    let torsion_order = m
        .0
        .iter()
        .fold(Int::one(), |acc, x| num::integer::lcm(acc, x.denom().clone()));
    let cl = character_lattice(&spec.nu);
    let quasi_cy = cl.sum_of_weights().free.iter().all(|x| x.is_zero());
    Ok(ClassificationReport {
        gorenstein: witness,
        heights: partition.heights.clone(),
        nu_eq1: partition.height_one,
        nu_neq1: partition.other,
        torsion_order: torsion_order.clone(),
        fcy_dimension: fcy,
        is_cy: torsion_order.is_one(),
        quasi_cy,
        critical_proper_asserted: spec.critical_proper_asserted,
    })
}

fn failing_generators(cone: &Cone) -> Vec<usize> {
    let extremes = cone.extreme_generators();
    // solve on a maximal independent subset, then name the generators that
    // miss height one
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..extremes.len() {
        let mut trial = chosen.clone();
        trial.push(i);
        let m = IntMatrix::from_rows(
            &trial.iter().map(|&k| extremes[k].clone()).collect::<Vec<_>>(),
        );
        if m.rank() == trial.len() {
            chosen = trial;
        }
    }
    let mat = IntMatrix::from_rows(
        &chosen.iter().map(|&k| extremes[k].clone()).collect::<Vec<_>>(),
    );
    let ones = RatVector(vec![Rat::one(); chosen.len()]);
    match solve_rational(&mat, &ones) {
        Ok(m0) => (0..extremes.len())
            .filter(|&i| m0.dot_int(&extremes[i]) != Rat::one())
            .collect(),
        Err(_) => (0..extremes.len()).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrlovCase {
    /// all heights on ν≠1 exceed one: the LG phase embeds into the
    /// geometric phase
    EmbedsIntoGeometric,
    /// all heights below one: the geometric phase embeds into the LG phase
    GeometricEmbeds,
    /// ν≠1 empty: equivalence
    Equivalence,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrlovComparison {
    pub case: OrlovCase,
    /// the anchor character used for the path (±χ_K), when any
    pub anchor: Option<Vec<Int>>,
    pub path: Vec<PathStep>,
    pub per_wall: Vec<CrossingReport>,
    pub total_orthogonal: Int,
    /// heights of the ν≠1 points, the data behind the case selection
    pub height_table: Vec<(usize, Rat)>,
}

/// Compare the LG phase of `sigma_chamber` with the geometric phase of
/// `tilde_chamber` along an anchored wall path.
pub fn orlov_compare(
    spec: &GaugedLGSpec,
    tilde_chamber: usize,
    sigma_chamber: usize,
    fan: &SecondaryFan,
    hilbert_budget: &Int,
) -> Result<OrlovComparison, LgError> {
    let tilde = fan.chamber(tilde_chamber)?;
    let sigma = fan.chamber(sigma_chamber)?;
    // tilde: all points are rays
    if !tilde.i_empty.is_empty() || tilde.ray_points.len() != spec.nu.len() {
        return Err(LgError::BadChamber(tilde_chamber));
    }
    let report = classify(spec, hilbert_budget)?;
    let m = report
        .gorenstein
        .m_vector
        .clone()
        .expect("witness from classify");
    let partition = height_partition(&spec.nu, &m);
    // sigma: rays inside ν_{=1} and full support
    let eq1: BTreeSet<usize> = partition.height_one.iter().cloned().collect();
    if !sigma.ray_points.iter().all(|p| eq1.contains(p)) {
        return Err(LgError::BadChamber(sigma_chamber));
    }
    let sigma_cone = Cone::new(
        spec.nu.ambient_rank(),
        sigma
            .ray_points
            .iter()
            .map(|&p| spec.nu.point(p).to_vec())
            .collect(),
    );
    if !sigma_cone.same_cone(&spec.cone()) {
        return Err(LgError::BadChamber(sigma_chamber));
    }
    let case = case_of(&partition)?;
    let chi_k = fan.chi_k_free();
    let anchor: Option<Vec<Int>> = match case {
        OrlovCase::EmbedsIntoGeometric => Some(chi_k.iter().map(|x| -x.clone()).collect()),
        OrlovCase::GeometricEmbeds => Some(chi_k.clone()),
        OrlovCase::Equivalence => None,
    };
    let path = fan.path(sigma_chamber, tilde_chamber, anchor.as_deref())?;
    let per_wall: Vec<CrossingReport> = path
        .iter()
        .map(|s| fan.wall_crossing(&fan.walls[s.wall_index]))
        .collect();
    let total_orthogonal: Int = per_wall.iter().map(|r| r.mu.abs()).sum();
    let height_table = partition
        .other
        .iter()
        .map(|&i| (i, partition.heights[i].clone()))
        .collect();
    Ok(OrlovComparison {
        case,
        anchor,
        path,
        per_wall,
        total_orthogonal,
        height_table,
    })
}

fn case_of(partition: &HeightPartition) -> Result<OrlovCase, LgError> {
    if partition.other.is_empty() {
        return Ok(OrlovCase::Equivalence);
    }
    let above = partition
        .other
        .iter()
        .all(|&i| partition.heights[i] > Rat::one());
    let below = partition
        .other
        .iter()
        .all(|&i| partition.heights[i] < Rat::one());
    if above {
        Ok(OrlovCase::EmbedsIntoGeometric)
    } else if below {
        Ok(OrlovCase::GeometricEmbeds)
    } else {
        Err(LgError::MixedHeights {
            table: partition
                .other
                .iter()
                .map(|&i| (i, partition.heights[i].clone()))
                .collect(),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct XiEnumeration {
    pub monomials: Vec<Monomial>,
    /// group index per monomial: position of its linear R-coordinate in the
    /// supplied R-set
    pub groups: Vec<usize>,
    pub group_sizes: Vec<usize>,
}

/// All height-one lattice points of σ∨ with generic coefficients, grouped
/// by the R-coordinate each is linear in.
pub fn xi_enumerate(spec: &GaugedLGSpec) -> Result<XiEnumeration, LgError> {
    let nvec = spec.nvec.as_ref().ok_or(LgError::MissingNvec)?;
    let sigma = spec.cone();
    let dual = sigma.dual();
    let pts = slice_points(&dual, &RatVector(int_to_rat_vec(nvec)), &Rat::one())?;
    let mut monomials = Vec::new();
    let mut groups = Vec::new();
    let mut group_sizes = vec![0usize; spec.r_charge.len()];
    for (k, p) in pts.iter().enumerate() {
        let exps: Vec<Int> = spec
            .nu
            .points()
            .iter()
            .map(|v| dot(p, v))
            .collect();
        let g = unique_linear_group(&exps, &spec.r_charge).ok_or(LgError::MonomialNotLinear(k))?;
        group_sizes[g] += 1;
        groups.push(g);
        monomials.push(Monomial {
            point: p.clone(),
            exponents: exps,
            coeff: Coefficient::Generic(format!("c{}", k + 1)),
        });
    }
    Ok(XiEnumeration {
        monomials,
        groups,
        group_sizes,
    })
}

fn unique_linear_group(exps: &[Int], grouping: &[usize]) -> Option<usize> {
    let mut found = None;
    for (gi, &coord) in grouping.iter().enumerate() {
        let e = &exps[coord];
        if e.is_one() {
            if found.is_some() {
                return None;
            }
            found = Some(gi);
        } else if !e.is_zero() {
            return None;
        }
    }
    found
}

/// The effective monomial list: the explicit superpotential when present,
/// otherwise the full Ξ with generic coefficients.
pub fn effective_monomials(spec: &GaugedLGSpec) -> Result<Vec<Monomial>, LgError> {
    match &spec.monomials {
        Some(ms) => Ok(ms.clone()),
        None => Ok(xi_enumerate(spec)?.monomials),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Section {
    /// index of the grouping coordinate this section belongs to
    pub grouping_coordinate: usize,
    /// monomials with exponents restricted to the non-grouping coordinates
    pub monomials: Vec<(Vec<Int>, Coefficient)>,
}

/// Decompose `w = Σ u_j f_j` by the grouping coordinates; every monomial
/// must be linear in exactly one of them.
pub fn superpotential_decompose(
    spec: &GaugedLGSpec,
    grouping: &[usize],
) -> Result<Vec<Section>, LgError> {
    let monomials = effective_monomials(spec)?;
    let rest: Vec<usize> = (0..spec.nu.len())
        .filter(|i| !grouping.contains(i))
        .collect();
    let mut sections: Vec<Section> = grouping
        .iter()
        .map(|&g| Section {
            grouping_coordinate: g,
            monomials: Vec::new(),
        })
        .collect();
    for (k, mono) in monomials.iter().enumerate() {
        let g = unique_linear_group(&mono.exponents, grouping)
            .ok_or(LgError::MonomialNotLinear(k))?;
        let restricted: Vec<Int> = rest.iter().map(|&i| mono.exponents[i].clone()).collect();
        sections[g].monomials.push((restricted, mono.coeff.clone()));
    }
    Ok(sections)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CIExtraction {
    pub sections: Vec<Section>,
    pub nef_flags: Vec<bool>,
    pub cayley_dual_consistent: bool,
    /// regularity of the complete intersection is a user assertion, never
    /// computed
    pub regularity_asserted: bool,
    pub zero_potential: bool,
}

/// Extract the complete-intersection data of a model whose cone is the
/// support of a bundle fan over `base` with the given nef divisors.
pub fn ci_extract(
    spec: &GaugedLGSpec,
    base: &Fan,
    divisors: &[TorusDivisor],
) -> Result<CIExtraction, LgError> {
    let t = divisors.len();
    let neg: Vec<TorusDivisor> = divisors
        .iter()
        .map(|d| TorusDivisor(d.0.iter().map(|x| -x.clone()).collect()))
        .collect();
    let lifted = bundle_fan(base, &neg);
    let support = lifted.support_cone();
    if !support.same_cone(&spec.cone()) {
        return Err(LgError::SupportMismatch);
    }
    // R must be exactly the fiber coordinates e_1..e_t
    let d = spec.nu.ambient_rank();
    let mut fiber_indices = Vec::new();
    for j in 0..t {
        let mut e = vec![Int::zero(); d];
        e[d - t + j] = Int::one();
        let idx = spec
            .nu
            .points()
            .iter()
            .position(|p| *p == e)
            .ok_or(LgError::RChargeMismatch)?;
        fiber_indices.push(idx);
    }
    let mut sorted_r = spec.r_charge.clone();
    sorted_r.sort_unstable();
    let mut sorted_fib = fiber_indices.clone();
    sorted_fib.sort_unstable();
    if sorted_r != sorted_fib {
        return Err(LgError::RChargeMismatch);
    }
    let mut nef_flags = Vec::new();
    for (i, div) in divisors.iter().enumerate() {
        let rep = is_nef(base, div)?;
        if !rep.nef {
            return Err(LgError::DivisorNotNef(i));
        }
        nef_flags.push(rep.nef);
    }
    let monomials = effective_monomials(spec)?;
    let zero_potential = monomials.is_empty();
    let sections = superpotential_decompose(spec, &fiber_indices)?;
    // section-membership inequality <m_base, u_rho> >= -a_irho, which is
    // the nonnegativity of the lifted exponents
    for (j, sec) in sections.iter().enumerate() {
        for (mono, _) in &sec.monomials {
            let _ = j;
            if mono.iter().any(|e| e.is_negative()) {
                return Err(LgError::MonomialInconsistent(j));
            }
        }
    }
    // Cayley-duality: dual of the support equals the Cayley cone of the
    // divisor polytopes
    let polys: Vec<HPolytope> = divisors
        .iter()
        .map(|div| HPolytope {
            normals: base.ray_generators.clone(),
            offsets: div.0.iter().map(|a| Rat::from_integer(a.clone())).collect(),
        })
        .collect();
    let cayley = cayley_cone(&polys)?;
    let cayley_dual_consistent = support.dual().same_cone(&cayley);
    Ok(CIExtraction {
        sections,
        nef_flags,
        cayley_dual_consistent,
        regularity_asserted: spec.ci_regular_asserted,
        zero_potential,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplittingClassification {
    pub case: OrlovCase,
    /// s = number of alternate splitting vectors
    pub length: usize,
    /// ⟨m, n⟩, which the comparison corollary requires to equal `length`
    pub index_pairing: Rat,
    pub index_matches_length: bool,
    /// the Ξ partition sizes under the alternate grouping
    pub xi_partition: Vec<usize>,
    /// vertices of the polytopes Δ'_i (rational coordinates)
    pub delta_vertices: Vec<Vec<Vec<Rat>>>,
    /// vertices of the Minkowski sum of the projected Δ'_i
    pub minkowski_vertices: Vec<Vec<Rat>>,
}

/// Classify an alternate splitting e'_1..e'_s of the grading covector.
pub fn splitting_classify(
    spec: &GaugedLGSpec,
    alternate: &[Vec<Int>],
    hilbert_budget: &Int,
) -> Result<SplittingClassification, LgError> {
    let nvec = spec.nvec.as_ref().ok_or(LgError::MissingNvec)?;
    let d = spec.nu.ambient_rank();
    let s = alternate.len();
    // Σ e'_i = n
    let mut sum = vec![Int::zero(); d];
    for e in alternate {
        for (a, b) in sum.iter_mut().zip(e) {
            *a += b;
        }
    }
    if sum != *nvec {
        return Err(LgError::SplitSumMismatch);
    }
    // Z-basis extension: all Smith invariants of the column matrix are 1
    let cols = IntMatrix::from_rows(alternate).transpose();
    let snf = smith_normal_form(&cols);
    let diag = snf.diagonal();
    if diag.len() != s || diag.iter().any(|x| !x.is_one()) {
        return Err(LgError::NotBasisExtension);
    }
    // heights of the splitting vectors must be one
    let report = classify(spec, hilbert_budget)?;
    let m = report.gorenstein.m_vector.clone().expect("witness");
    for (i, e) in alternate.iter().enumerate() {
        if m.dot_int(e) != Rat::one() {
            return Err(LgError::HeightNotOneSplitting(i));
        }
    }
    // identify which ν points are the splitting vectors; the remaining
    // points project to the quotient N / <e'_i>
    let split_points: Vec<usize> = alternate
        .iter()
        .map(|e| {
            spec.nu
                .points()
                .iter()
                .position(|p| p == e)
                .ok_or(LgError::NotBasisExtension)
        })
        .collect::<Result<_, _>>()?;
    // quotient coordinates: last d-s rows of U from the Smith form of the
    // splitting columns (U maps <e'_i> onto the first s coordinates)
    let proj_rows: Vec<Vec<Int>> = (s..d).map(|r| snf.u.row(r)).collect();
    let proj = if proj_rows.is_empty() {
        IntMatrix::zero(0, d)
    } else {
        IntMatrix::from_rows(&proj_rows)
    };
    for (i, p) in spec.nu.points().iter().enumerate() {
        if split_points.contains(&i) {
            continue;
        }
        let q = proj.mul_vec(p);
        if q.iter().all(|x| x.is_zero()) {
            return Err(LgError::NonPrimitiveProjection(i));
        }
        let g = crate::exact_linalg::vec_gcd(&q);
        if !g.is_one() {
            return Err(LgError::NonPrimitiveProjection(i));
        }
    }
    // the case is read from the heights of the non-splitting points
    let rest: Vec<usize> = (0..spec.nu.len())
        .filter(|i| !split_points.contains(i))
        .collect();
    let heights: Vec<Rat> = rest.iter().map(|&i| m.dot_int(spec.nu.point(i))).collect();
    let all_one = heights.iter().all(|h| *h == Rat::one());
    let all_ge = heights.iter().all(|h| *h >= Rat::one());
    let all_le = heights.iter().all(|h| *h <= Rat::one());
    let case = if all_one {
        OrlovCase::Equivalence
    } else if all_ge {
        OrlovCase::EmbedsIntoGeometric
    } else if all_le {
        OrlovCase::GeometricEmbeds
    } else {
        return Err(LgError::MixedHeights {
            table: rest
                .iter()
                .zip(&heights)
                .map(|(&i, h)| (i, h.clone()))
                .collect(),
        });
    };
    let index_pairing = RatVector(int_to_rat_vec(nvec)).0.iter().zip(&m.0).map(|(a, b)| a * b).sum::<Rat>();
    // partition of the model's superpotential under the alternate grouping
    let monomials = effective_monomials(spec)?;
    let mut xi_partition = vec![0usize; s];
    for (k, mono) in monomials.iter().enumerate() {
        let pairings: Vec<Int> = alternate.iter().map(|e| dot(&mono.point, e)).collect();
        let g = unique_linear_group_values(&pairings).ok_or(LgError::MonomialNotLinear(k))?;
        xi_partition[g] += 1;
    }
    // Δ'_i = σ∨ ∩ {⟨·, e'_j⟩ = δ_ij}, computed as H-polytopes
    let sigma_dual_normals: Vec<Vec<Int>> = spec.nu.points().to_vec();
    let mut delta_vertices = Vec::new();
    let mut projected: Vec<Vec<Vec<Rat>>> = Vec::new();
    // dual quotient: drop the first s coordinates of the (U^{-T}) basis;
    // concretely pair with the projection section rows
    for i in 0..s {
        let mut normals = sigma_dual_normals.clone();
        let mut offsets = vec![Rat::zero(); normals.len()];
        for (j, e) in alternate.iter().enumerate() {
            let delta = if j == i { Rat::one() } else { Rat::zero() };
            normals.push(e.clone());
            offsets.push(-delta.clone());
            normals.push(e.iter().map(|x| -x.clone()).collect());
            offsets.push(delta);
        }
        let poly = HPolytope { normals, offsets };
        let (vertices, _recession) = poly.vertices()?;
        // project to L^*: functionals modulo the span of the duals of e'_j:
        // in the Smith basis this drops the first s dual coordinates, i.e.
        // pairs with the section columns of U^{-1} past position s
        let proj_vs: Vec<Vec<Rat>> = vertices
            .iter()
            .map(|v| {
                (s..d)
                    .map(|k| {
                        // coordinate along the k-th basis vector of N in
                        // Smith coordinates: pair v with column k of U^{-1}
                        let col = uinv_col(&snf.u, k);
                        v.iter()
                            .zip(&col)
                            .map(|(a, b)| a * Rat::from_integer(b.clone()))
                            .sum::<Rat>()
                    })
                    .collect()
            })
            .collect();
        delta_vertices.push(vertices);
        projected.push(proj_vs);
    }
    // Minkowski sum of the projected polytopes: sums of vertex tuples,
    // reduced to hull vertices
    let mut sums: Vec<Vec<Rat>> = vec![vec![Rat::zero(); d - s]];
    for p in &projected {
        let mut next = Vec::new();
        for base_pt in &sums {
            for v in p {
                next.push(
                    base_pt
                        .iter()
                        .zip(v)
                        .map(|(a, b)| a + b)
                        .collect::<Vec<Rat>>(),
                );
            }
        }
        sums = next;
    }
    let minkowski_vertices = hull_vertices(&sums);
    Ok(SplittingClassification {
        case,
        length: s,
        index_pairing: index_pairing.clone(),
        index_matches_length: index_pairing == Rat::from_integer(int(s as i64)),
        xi_partition,
        delta_vertices,
        minkowski_vertices,
    })
}

fn unique_linear_group_values(pairings: &[Int]) -> Option<usize> {
    let mut found = None;
    for (i, p) in pairings.iter().enumerate() {
        if p.is_one() {
            if found.is_some() {
                return None;
            }
            found = Some(i);
        } else if !p.is_zero() {
            return None;
        }
    }
    found
}

fn uinv_col(u: &IntMatrix, k: usize) -> Vec<Int> {
    let n = u.rows();
    let mut e = vec![Rat::zero(); n];
    e[k] = Rat::one();
    let x = solve_rational(u, &RatVector(e)).expect("unimodular");
    x.0.iter().map(|r| r.numer().clone()).collect()
}

/// Vertices of the convex hull of a point set, via the homogenization cone.
fn hull_vertices(points: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if points.is_empty() {
        return vec![];
    }
    let dim = points[0].len();
    if dim == 0 {
        return vec![vec![]];
    }
    // a point is a vertex iff it is not in the hull of the others; decide
    // by LP feasibility of convex combinations
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if points[..i].contains(p) {
            continue;
        }
        let others: Vec<&Vec<Rat>> = points
            .iter()
            .enumerate()
            .filter(|(j, q)| *j != i && *q != p)
            .map(|(_, q)| q)
            .collect();
        if others.is_empty() {
            out.push(p.clone());
            continue;
        }
        // solve Σ c_j q_j = p, Σ c_j = 1, c_j >= 0
        let nv = others.len();
        let mut cons = Vec::new();
        for k in 0..dim {
            let row: Vec<Rat> = others.iter().map(|q| q[k].clone()).collect();
            cons.push(crate::lp::Constraint::eq(row, p[k].clone()));
        }
        cons.push(crate::lp::Constraint::eq(
            vec![Rat::one(); nv],
            Rat::one(),
        ));
        for j in 0..nv {
            let mut row = vec![Rat::zero(); nv];
            row[j] = Rat::one();
            cons.push(crate::lp::Constraint::ge(row, Rat::zero()));
        }
        if crate::lp::feasible_point(nv, &cons).is_none() {
            out.push(p.clone());
        }
    }
    out
}

/// Emptiness of `S ∩ (U \ V)` for coordinate-subspace strata: `S = Z(C) ∩ U`
/// with `U, V` complements of monomial zero sets. Decided on index sets: a
/// witness support exists iff some U-generator avoids `C` and contains no
/// V-generator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CcrStratumReport {
    pub stratum: String,
    pub disjoint: bool,
    /// a witness generator of the U-ideal when not disjoint
    pub witness: Option<Vec<usize>>,
}

pub fn ccr_compatibility(
    u_ideal: &[Vec<usize>],
    v_ideal: &[Vec<usize>],
    strata: &[(String, Vec<usize>)],
) -> Vec<CcrStratumReport> {
    strata
        .iter()
        .map(|(name, c)| {
            let cset: BTreeSet<usize> = c.iter().cloned().collect();
            let witness = u_ideal.iter().find(|su| {
                su.iter().all(|i| !cset.contains(i))
                    && v_ideal.iter().all(|sv| {
                        !sv.iter().all(|i| su.contains(i))
                    })
            });
            CcrStratumReport {
                stratum: name.clone(),
                disjoint: witness.is_none(),
                witness: witness.cloned(),
            }
        })
        .collect()
}
