//! The Lauricella operators `D_l`, `E_lm`, the Gauss operator, and residual
//! checks of the differential and contiguity relations satisfied by the
//! Cartier-Manin entries.

use serde::Serialize;

use crate::cartier::{cm_entries, entry_name, hasse_polynomial};
use crate::error::{Error, Result};
use crate::field::{Fp, PrimeModulus};
use crate::poly::{TriPoly, UniPoly};
use crate::{FpTriPoly, FpUniPoly};

/// `a = 5/2 - j`, `b_k = 1/2`, `c = 3 - j` as elements of `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OperatorParams {
    pub j: usize,
    pub a: Fp,
    pub b: [Fp; 3],
    pub c: Fp,
}

impl OperatorParams {
    pub fn for_column(p: PrimeModulus, j: usize) -> Result<Self> {
        if !(1..=2).contains(&j) {
            return Err(Error::InvalidParameter(format!("j must be 1 or 2, got {j}")));
        }
        let half = p.elem(2).inverse()?;
        let a = p.elem_i64(5 - 2 * j as i64) * half;
        Ok(OperatorParams { j, a, b: [half; 3], c: p.elem_i64(3 - j as i64) })
    }
}

/// `a = b = 1/2`, `c = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussParams {
    pub a: Fp,
    pub b: Fp,
    pub c: Fp,
}

impl GaussParams {
    pub fn legendre(p: PrimeModulus) -> Result<Self> {
        let half = p.elem(2).inverse()?;
        Ok(GaussParams { a: half, b: half, c: p.elem(1) })
    }
}

fn one_minus_var(w: &FpTriPoly, var: usize) -> FpTriPoly {
    w - &w.mul_var(var)
}

fn check_var(l: usize) {
    assert!((1..=3).contains(&l), "variable index {l} out of range");
}

/// `z_l(1-z_l)d_l^2 w + sum_{k!=l} z_k(1-z_l)d_l d_k w + (c-(a+b_l+1)z_l)d_l w
///  - sum_{k!=l} b_l z_k d_k w - a b_l w`.
pub fn apply_d(l: usize, params: &OperatorParams, w: &FpTriPoly) -> FpTriPoly {
    check_var(l);
    let p = *w.field();
    let (a, bl, c) = (params.a, params.b[l - 1], params.c);
    let dl = w.partial_derivative(l);
    let mut out = one_minus_var(&dl.partial_derivative(l).mul_var(l), l);
    for k in (1..=3).filter(|&k| k != l) {
        let dk = w.partial_derivative(k);
        out = &out + &one_minus_var(&dl.partial_derivative(k).mul_var(k), l);
        out = &out - &dk.mul_var(k).scale(&bl);
    }
    out = &out + &dl.scale(&c);
    out = &out - &dl.mul_var(l).scale(&(a + bl + p.elem(1)));
    &out - &w.scale(&(a * bl))
}

/// `(z_l - z_m) d_l d_m w - b_m d_l w + b_l d_m w`.
pub fn apply_e(l: usize, m: usize, params: &OperatorParams, w: &FpTriPoly) -> FpTriPoly {
    check_var(l);
    check_var(m);
    let dl = w.partial_derivative(l);
    let dlm = dl.partial_derivative(m);
    let mixed = &dlm.mul_var(l) - &dlm.mul_var(m);
    let first = &mixed - &dl.scale(&params.b[m - 1]);
    &first + &w.partial_derivative(m).scale(&params.b[l - 1])
}

/// `z(1-z)w'' + (c-(a+b+1)z)w' - ab w`.
pub fn apply_gauss_operator(params: &GaussParams, w: &FpUniPoly) -> FpUniPoly {
    let p = *w.field();
    let z = UniPoly::x(p);
    let z_one_minus_z = &z - &(&z * &z);
    let linear = UniPoly::new(p, vec![params.c, -(params.a + params.b + p.elem(1))]);
    let d1 = w.derivative();
    let d2 = d1.derivative();
    let lhs = &(&z_one_minus_z * &d2) + &(&linear * &d1);
    &lhs - &w.scale(&(params.a * params.b))
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Residual {
    pub target: String,
    pub relation: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckSummary {
    pub pass: bool,
    pub checked: usize,
    pub residuals: Vec<Residual>,
}

impl CheckSummary {
    fn from_results(results: Vec<(String, String, FpTriPoly)>) -> Self {
        let checked = results.len();
        let residuals: Vec<Residual> = results
            .into_iter()
            .filter(|(_, _, r)| !r.is_zero())
            .map(|(target, relation, r)| Residual { target, relation, residual: r.to_text() })
            .collect();
        CheckSummary { pass: residuals.is_empty(), checked, residuals }
    }
}

/// Every `D_l` and `E_lm` (with the parameters for column `j`) applied to `w`.
pub fn operator_residuals(params: &OperatorParams, w: &FpTriPoly) -> Vec<(String, FpTriPoly)> {
    let mut out = Vec::with_capacity(6);
    for l in 1..=3 {
        out.push((format!("D_{l}"), apply_d(l, params, w)));
    }
    for (l, m) in [(1, 2), (1, 3), (2, 3)] {
        out.push((format!("E_{l}{m}"), apply_e(l, m, params, w)));
    }
    out
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PdeReport {
    pub p: u32,
    #[serde(rename = "theorem_A")]
    pub operators: CheckSummary,
    pub gauss: GaussSummary,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GaussSummary {
    pub pass: bool,
    pub residual: String,
}

impl PdeReport {
    pub fn pass(&self) -> bool {
        self.operators.pass && self.gauss.pass
    }
}

/// Applies the six operators for column `j` to every entry `c_{ip-j}`, and the
/// Gauss operator to `H_p`.
pub fn verify_annihilation(p: PrimeModulus) -> Result<PdeReport> {
    let cm = cm_entries(p, 2)?;
    let mut results = Vec::new();
    for i in 1..=2 {
        for j in 1..=2 {
            let params = OperatorParams::for_column(p, j)?;
            for (op, r) in operator_residuals(&params, cm.entry(i, j)) {
                results.push((entry_name(i, j), op, r));
            }
        }
    }
    let g = apply_gauss_operator(&GaussParams::legendre(p)?, &hasse_polynomial(p));
    Ok(PdeReport {
        p: p.get(),
        operators: CheckSummary::from_results(results),
        gauss: GaussSummary { pass: g.is_zero(), residual: g.to_text("t") },
    })
}

/// `sum_k g_k * d_k w`.
fn first_order(g: [&FpTriPoly; 3], w: &FpTriPoly) -> FpTriPoly {
    let mut out = TriPoly::zero(*w.field());
    for k in 1..=3 {
        out = &out + &(g[k - 1] * &w.partial_derivative(k));
    }
    out
}

struct Coefficients {
    z: [FpTriPoly; 3],
    one_minus_z: [FpTriPoly; 3],
    z_sq_minus_z: [FpTriPoly; 3],
    half: Fp,
    sum_z: FpTriPoly,
}

impl Coefficients {
    fn new(p: PrimeModulus) -> Result<Self> {
        let z = [1, 2, 3].map(|k| TriPoly::var(p, k));
        let one = TriPoly::one(p);
        let one_minus_z = z.clone().map(|zk| &one - &zk);
        let z_sq_minus_z = z.clone().map(|zk| &(&zk * &zk) - &zk);
        let sum_z = &(&z[0] + &z[1]) + &z[2];
        Ok(Coefficients { z, one_minus_z, z_sq_minus_z, half: p.elem(2).inverse()?, sum_z })
    }
}

fn refs(a: &[FpTriPoly; 3]) -> [&FpTriPoly; 3] {
    [&a[0], &a[1], &a[2]]
}

/// Left side of the contiguity relation `which` for the pair
/// `(c1, c2) = (c_{ip-1}, c_{ip-2})`:
/// 1. `sum (z_k^2-z_k) d_k c1 + 1/2 (z1+z2+z3-2) c1 + 1/2 c2`
/// 2. `sum (1-z_k) d_k c2 - 1/2 (c1+c2)`
pub fn contiguity_residual_of(which: u8, c1: &FpTriPoly, c2: &FpTriPoly) -> Result<FpTriPoly> {
    let p = *c1.field();
    let k = Coefficients::new(p)?;
    match which {
        1 => {
            let shifted = &k.sum_z - &TriPoly::constant(p, p.elem(2));
            let t = first_order(refs(&k.z_sq_minus_z), c1);
            let t = &t + &(&shifted * c1).scale(&k.half);
            Ok(&t + &c2.scale(&k.half))
        }
        2 => {
            let t = first_order(refs(&k.one_minus_z), c2);
            Ok(&t - &(c1 + c2).scale(&k.half))
        }
        _ => Err(Error::InvalidParameter(format!("relation must be 1 or 2, got {which}"))),
    }
}

/// Left side of the predicted relation `which`:
/// 1. `-(sum (1-z_k) d_k - 1) c2 - (sum z_k(1-z_k) d_k - 1/2 sum z_k + 1/2) c1`
/// 2. `(sum z_k d_k + 1/2) c2 - (sum z_k d_k + 1) c1`
pub fn predicted_relation_residual_of(which: u8, c1: &FpTriPoly, c2: &FpTriPoly) -> Result<FpTriPoly> {
    let p = *c1.field();
    let k = Coefficients::new(p)?;
    match which {
        1 => {
            let first = &first_order(refs(&k.one_minus_z), c2) - c2;
            let z_one_minus_z = [0, 1, 2].map(|i| -&k.z_sq_minus_z[i]);
            let mut second = first_order(refs(&z_one_minus_z), c1);
            second = &second - &(&k.sum_z * c1).scale(&k.half);
            second = &second + &c1.scale(&k.half);
            Ok(-(&first + &second))
        }
        2 => {
            let first = &first_order(refs(&k.z), c2) + &c2.scale(&k.half);
            let second = &first_order(refs(&k.z), c1) + c1;
            Ok(&first - &second)
        }
        _ => Err(Error::InvalidParameter(format!("relation must be 1 or 2, got {which}"))),
    }
}

fn row_pair(p: PrimeModulus, i: usize) -> Result<(FpTriPoly, FpTriPoly)> {
    if !(1..=2).contains(&i) {
        return Err(Error::InvalidParameter(format!("i must be 1 or 2, got {i}")));
    }
    let cm = cm_entries(p, 2)?;
    Ok((cm.entry(i, 1).clone(), cm.entry(i, 2).clone()))
}

pub fn contiguity_residual(p: PrimeModulus, i: usize, which: u8) -> Result<FpTriPoly> {
    let (c1, c2) = row_pair(p, i)?;
    contiguity_residual_of(which, &c1, &c2)
}

pub fn predicted_relation_residual(p: PrimeModulus, i: usize, which: u8) -> Result<FpTriPoly> {
    let (c1, c2) = row_pair(p, i)?;
    predicted_relation_residual_of(which, &c1, &c2)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ContiguityReport {
    pub p: u32,
    pub contiguity: CheckSummary,
    pub predicted: CheckSummary,
}

impl ContiguityReport {
    pub fn pass(&self) -> bool {
        self.contiguity.pass && self.predicted.pass
    }
}

pub fn verify_contiguity(p: PrimeModulus) -> Result<ContiguityReport> {
    let mut contiguity = Vec::new();
    let mut predicted = Vec::new();
    for i in 1..=2 {
        let target = format!("row {i}");
        for which in 1..=2u8 {
            contiguity.push((target.clone(), format!("contiguity ({which})"), contiguity_residual(p, i, which)?));
            predicted.push((target.clone(), format!("predicted ({which})"), predicted_relation_residual(p, i, which)?));
        }
    }
    Ok(ContiguityReport {
        p: p.get(),
        contiguity: CheckSummary::from_results(contiguity),
        predicted: CheckSummary::from_results(predicted),
    })
}
