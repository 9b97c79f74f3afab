//! The superspecial locus `V(c_{p-1}, c_{2p-1}, c_{p-2}, c_{2p-2})`: point
//! enumeration over `F_{p^k}`, Jacobian ranks, and the end-to-end
//! multiplicity-one check.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{build_extension, ExtField, Field, Fq, PrimeModulus, MAX_EXT_DEGREE};
use crate::ideal::{analyze_superspecial_ideal, superspecial_generators, IdealAnalysis};
use crate::linalg::Matrix;
use crate::{FpTriPoly, FqMatrix};

/// Column labels of the Jacobian, in column order.
pub const COLUMN_NAMES: [&str; 4] = ["c_p-1", "c_2p-1", "c_p-2", "c_2p-2"];

/// A common zero of the four entries, with coordinates in `F_{p^k}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocusPoint {
    pub coords: [Fq; 3],
}

impl LocusPoint {
    pub fn degree(&self) -> usize {
        self.coords[0].field().degree()
    }

    pub fn frobenius(&self) -> LocusPoint {
        LocusPoint { coords: self.coords.map(Fq::frobenius) }
    }

    /// Coordinates permuted so that `z_i` takes the value of `z_{perm[i-1]}`.
    pub fn permute(&self, perm: [usize; 3]) -> LocusPoint {
        LocusPoint { coords: perm.map(|i| self.coords[i - 1]) }
    }

    pub fn texts(&self) -> [String; 3] {
        self.coords.map(|c| c.to_string())
    }
}

/// `{0, 1, λ1, λ2, λ3}` has five distinct elements.
pub fn check_branch_points(point: &LocusPoint) -> bool {
    let f = point.coords[0].field();
    let mut all = vec![f.zero(), f.one()];
    all.extend(point.coords);
    all.sort();
    all.windows(2).all(|w| w[0] != w[1])
}

/// Polynomials split by their `z1` exponent for fast evaluation on a grid.
struct Nested {
    dims: [usize; 3],
    terms: Vec<([usize; 3], u64)>,
}

impl Nested {
    fn new(f: &FpTriPoly) -> Self {
        let dims = [1, 2, 3].map(|v| f.var_degree(v).unwrap_or(0) as usize + 1);
        let terms = f.terms().map(|(m, c)| (m.0.map(|e| e as usize), c.value() as u64)).collect();
        Nested { dims, terms }
    }

    /// Coefficients in `(z2, z3)` after substituting `z1 = λ1`.
    fn fix_first(&self, field: ExtField, pow1: &[Fq]) -> Vec<Fq> {
        let [_, d2, d3] = self.dims;
        let mut out = vec![field.zero(); d2 * d3];
        for &([a, b, c], coef) in &self.terms {
            out[b * d3 + c] += pow1[a].scale(coef);
        }
        out
    }

    /// Coefficients in `z3` after also substituting `z2 = λ2`.
    fn fix_second(&self, field: ExtField, bi: &[Fq], pow2: &[Fq]) -> Vec<Fq> {
        let [_, d2, d3] = self.dims;
        let mut out = vec![field.zero(); d3];
        for b in 0..d2 {
            if pow2[b].is_zero() {
                continue;
            }
            for c in 0..d3 {
                out[c] += bi[b * d3 + c] * pow2[b];
            }
        }
        out
    }
}

fn horner(coeffs: &[Fq], x: Fq) -> Fq {
    coeffs.iter().rev().fold(x.field().zero(), |acc, &c| acc * x + c)
}

fn powers(x: Fq, n: usize) -> Vec<Fq> {
    let mut out = Vec::with_capacity(n);
    let mut acc = x.field().one();
    for _ in 0..n {
        out.push(acc);
        acc *= x;
    }
    out
}

/// All common zeros of `gens` in `field^3`, sorted by coordinates. The
/// last generator is scanned first; the others are only evaluated at its
/// zeros.
pub fn common_zeros(field: ExtField, gens: &[FpTriPoly]) -> Vec<LocusPoint> {
    let Some((first, rest)) = gens.split_last() else {
        return Vec::new();
    };
    let q = field.order().expect("enumerable field");
    if first.is_zero() {
        return brute_force_zeros(field, rest);
    }
    let nested = Nested::new(first);
    let mut found: Vec<LocusPoint> = (0..q)
        .into_par_iter()
        .flat_map_iter(|i1| {
            let l1 = field.element_at(i1);
            let bi = nested.fix_first(field, &powers(l1, nested.dims[0]));
            let mut local = Vec::new();
            for i2 in 0..q {
                let l2 = field.element_at(i2);
                let uni = nested.fix_second(field, &bi, &powers(l2, nested.dims[1]));
                if uni.iter().all(|c| c.is_zero()) {
                    for i3 in 0..q {
                        let pt = [l1, l2, field.element_at(i3)];
                        if rest.iter().all(|g| g.evaluate(&field, &pt).is_zero()) {
                            local.push(LocusPoint { coords: pt });
                        }
                    }
                    continue;
                }
                for i3 in 0..q {
                    let l3 = field.element_at(i3);
                    if horner(&uni, l3).is_zero() {
                        let pt = [l1, l2, l3];
                        if rest.iter().all(|g| g.evaluate(&field, &pt).is_zero()) {
                            local.push(LocusPoint { coords: pt });
                        }
                    }
                }
            }
            local
        })
        .collect();
    found.sort();
    found
}

fn brute_force_zeros(field: ExtField, gens: &[FpTriPoly]) -> Vec<LocusPoint> {
    let els: Vec<Fq> = field.elements().collect();
    let mut out = Vec::new();
    for &a in &els {
        for &b in &els {
            for &c in &els {
                let pt = [a, b, c];
                if gens.iter().all(|g| g.evaluate(&field, &pt).is_zero()) {
                    out.push(LocusPoint { coords: pt });
                }
            }
        }
    }
    out
}

/// Points of the superspecial locus with coordinates in `F_{p^k}`.
pub fn enumerate_points(p: PrimeModulus, k: usize) -> Result<Vec<LocusPoint>> {
    let field = build_extension(p, k)?;
    Ok(common_zeros(field, &superspecial_generators(p)?))
}

/// Gradients of a list of polynomials, evaluated pointwise.
pub struct JacobianSystem {
    partials: Vec<[FpTriPoly; 3]>,
}

impl JacobianSystem {
    pub fn new(gens: &[FpTriPoly]) -> Self {
        JacobianSystem { partials: gens.iter().map(|g| [1, 2, 3].map(|v| g.partial_derivative(v))).collect() }
    }

    pub fn superspecial(p: PrimeModulus) -> Result<Self> {
        Ok(Self::new(&superspecial_generators(p)?))
    }

    /// Row `l` is `d/dz_l`; column `c` is generator `c`.
    pub fn at(&self, point: &LocusPoint) -> FqMatrix {
        let field = point.coords[0].field();
        let rows = (0..3)
            .map(|l| self.partials.iter().map(|d| d[l].evaluate(&field, &point.coords)).collect())
            .collect();
        Matrix::from_rows(field, rows)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JacobianAtPoint {
    pub matrix: FqMatrix,
    pub rank: usize,
    /// Ranks of the column pairs `(c_{p-1}, c_{2p-1})` and `(c_{p-2}, c_{2p-2})`.
    pub pair_ranks: [usize; 2],
}

impl JacobianAtPoint {
    pub fn new(matrix: FqMatrix) -> Self {
        let rank = matrix.rank();
        let pair_ranks = [matrix.select_columns(&[0, 1]).rank(), matrix.select_columns(&[2, 3]).rank()];
        JacobianAtPoint { matrix, rank, pair_ranks }
    }

    /// `(1-λ_k)`-weighted rows vanish in the `c_{ip-2}` columns and
    /// `(λ_k-λ_k^2)`-weighted rows vanish in the `c_{ip-1}` columns.
    pub fn contiguity_dependencies_hold(&self, point: &LocusPoint) -> bool {
        let f = point.coords[0].field();
        let weighted = |w: [Fq; 3], col: usize| {
            (0..3).fold(f.zero(), |acc, l| acc + w[l] * *self.matrix.get(l, col))
        };
        let w2 = point.coords.map(|x| f.one() - x);
        let w1 = point.coords.map(|x| x - x * x);
        [2, 3].iter().all(|&c| weighted(w2, c).is_zero()) && [0, 1].iter().all(|&c| weighted(w1, c).is_zero())
    }

    /// `d_i c_{p-1} * d_i c_{2p-2} - d_i c_{2p-1} * d_i c_{p-2}` for `i = 1, 2, 3`.
    pub fn determinant_like(&self) -> [Fq; 3] {
        let m = &self.matrix;
        [0, 1, 2].map(|i| *m.get(i, 0) * *m.get(i, 3) - *m.get(i, 1) * *m.get(i, 2))
    }
}

pub fn jacobian_at(p: PrimeModulus, point: &LocusPoint) -> Result<JacobianAtPoint> {
    Ok(JacobianAtPoint::new(JacobianSystem::superspecial(p)?.at(point)))
}

/// The default extension schedule.
pub const DEFAULT_SCHEDULE: [usize; 2] = [2, 4];

pub fn validate_schedule(schedule: &[usize]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::InvalidParameter("extension schedule is empty".into()));
    }
    if let Some(&k) = schedule.iter().find(|&&k| k == 0 || k > MAX_EXT_DEGREE) {
        return Err(Error::InvalidExtensionDegree(k));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(format!("extension schedule {schedule:?} is not increasing")));
    }
    Ok(())
}

/// Result of searching the schedule for as many points as the quotient
/// dimension.
#[derive(Clone, Debug)]
pub struct Located {
    pub analysis: IdealAnalysis,
    pub searched: Vec<usize>,
    /// Degree whose point count was kept (the matching one, or the last searched).
    pub degree: usize,
    pub points: Vec<LocusPoint>,
    pub counts_match: bool,
}

pub fn locate(p: PrimeModulus, schedule: &[usize]) -> Result<Located> {
    validate_schedule(schedule)?;
    let analysis = analyze_superspecial_ideal(p)?;
    let d = analysis.quotient.dim();
    let mut searched = Vec::new();
    let mut last = (schedule[0], Vec::new());
    for &k in schedule {
        searched.push(k);
        let pts = enumerate_points(p, k)?;
        let matched = pts.len() == d;
        last = (k, pts);
        if matched {
            break;
        }
    }
    let counts_match = last.1.len() == d;
    Ok(Located { analysis, searched, degree: last.0, points: last.1, counts_match })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PointRecord {
    pub lambda: [String; 3],
    pub rank: usize,
    pub pair_ranks: [usize; 2],
    pub branch_points_ok: bool,
    pub contiguity_dependencies_ok: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LocusReport {
    pub p: u32,
    pub extension_degrees: Vec<usize>,
    pub k: usize,
    pub modulus: String,
    pub quotient_dim: usize,
    pub groebner_size: usize,
    pub min_poly_degrees: Vec<usize>,
    pub point_count: usize,
    pub radical: bool,
    pub ranks_all_three: bool,
    pub pair_ranks_ok: bool,
    pub branch_points_ok: bool,
    pub contiguity_dependencies_ok: bool,
    pub counts_match: bool,
    pub incomplete_enumeration: bool,
    pub points: Vec<PointRecord>,
}

impl LocusReport {
    /// Every check passed and the enumeration is complete.
    pub fn pass(&self) -> bool {
        self.radical
            && self.counts_match
            && self.ranks_all_three
            && self.pair_ranks_ok
            && self.branch_points_ok
            && self.contiguity_dependencies_ok
    }
}

fn modulus_text(field: ExtField) -> String {
    field.modulus_poly().to_text("x")
}

/// Groebner basis, radical test, point search along the schedule, and the
/// rank and branch-point checks at every point found.
pub fn verify_multiplicity_one(p: PrimeModulus, schedule: &[usize]) -> Result<LocusReport> {
    let located = locate(p, schedule)?;
    let system = JacobianSystem::superspecial(p)?;
    let points: Vec<PointRecord> = located
        .points
        .par_iter()
        .map(|pt| {
            let j = JacobianAtPoint::new(system.at(pt));
            PointRecord {
                lambda: pt.texts(),
                rank: j.rank,
                pair_ranks: j.pair_ranks,
                branch_points_ok: check_branch_points(pt),
                contiguity_dependencies_ok: j.contiguity_dependencies_hold(pt),
            }
        })
        .collect();
    let report = located.analysis.report();
    Ok(LocusReport {
        p: p.get(),
        extension_degrees: located.searched,
        k: located.degree,
        modulus: modulus_text(build_extension(p, located.degree)?),
        quotient_dim: report.quotient_dim,
        groebner_size: report.groebner_size,
        min_poly_degrees: report.min_poly_degrees,
        point_count: points.len(),
        radical: report.radical,
        ranks_all_three: points.iter().all(|r| r.rank == 3),
        pair_ranks_ok: points.iter().all(|r| r.pair_ranks == [2, 2]),
        branch_points_ok: points.iter().all(|r| r.branch_points_ok),
        contiguity_dependencies_ok: points.iter().all(|r| r.contiguity_dependencies_ok),
        counts_match: located.counts_match,
        incomplete_enumeration: !located.counts_match,
        points,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExpectationPoint {
    pub lambda: [String; 3],
    pub values: [String; 3],
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ExpectationReport {
    pub p: u32,
    pub k: usize,
    pub complete: bool,
    pub point_count: usize,
    pub failures: usize,
    pub pass: bool,
    pub points: Vec<ExpectationPoint>,
}

/// Evaluates the three determinant-like expressions at every point found
/// along the schedule. A failing point is a finding, not an error.
pub fn check_expectation(p: PrimeModulus, schedule: &[usize]) -> Result<ExpectationReport> {
    let located = locate(p, schedule)?;
    let system = JacobianSystem::superspecial(p)?;
    let points: Vec<ExpectationPoint> = located
        .points
        .par_iter()
        .map(|pt| {
            let vals = JacobianAtPoint::new(system.at(pt)).determinant_like();
            ExpectationPoint {
                lambda: pt.texts(),
                values: vals.map(|v| v.to_string()),
                pass: vals.iter().all(|v| v.is_zero()),
            }
        })
        .collect();
    let failures = points.iter().filter(|e| !e.pass).count();
    Ok(ExpectationReport {
        p: p.get(),
        k: located.degree,
        complete: located.counts_match,
        point_count: points.len(),
        failures,
        pass: failures == 0,
        points,
    })
}
