//! Rosenhain curve polynomials, their Cartier-Manin entries, and the
//! genus-one Hasse polynomial.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeModulus};
use crate::poly::{CoeffPoly, TriPoly, UniPoly};
use crate::{FpTriPoly, FpUniPoly};

/// The curve `y^2 = x(x-1)(x-z1)...(x-z_{2g-1})` over `F_p` with symbolic
/// branch points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RosenhainCurve {
    pub p: PrimeModulus,
    pub genus: u32,
}

impl RosenhainCurve {
    pub fn new(p: PrimeModulus, genus: u32) -> Result<Self> {
        if !(1..=2).contains(&genus) {
            return Err(Error::InvalidParameter(format!("genus must be 1 or 2, got {genus}")));
        }
        Ok(RosenhainCurve { p, genus })
    }

    /// `f(x)` as a polynomial in `x` over `F_p[z1, z2, z3]`.
    pub fn f(&self) -> CoeffPoly<PrimeModulus> {
        let p = self.p;
        let mut f = CoeffPoly::linear_root(p, TriPoly::zero(p));
        f = &f * &CoeffPoly::linear_root(p, TriPoly::one(p));
        for k in 1..=(2 * self.genus - 1) as usize {
            f = &f * &CoeffPoly::linear_root(p, TriPoly::var(p, k));
        }
        f
    }
}

/// `f(x) = x(x-1)(x-z1)...(x-z_{2g-1})`.
pub fn rosenhain_f(p: PrimeModulus, genus: u32) -> Result<CoeffPoly<PrimeModulus>> {
    Ok(RosenhainCurve::new(p, genus)?.f())
}

/// The entries `c_{ip-j}` (`1 <= i, j <= g`), the `x^{ip-j}` coefficients of
/// `f(x)^{(p-1)/2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartierManinData {
    pub p: PrimeModulus,
    pub genus: u32,
    entries: Vec<Vec<FpTriPoly>>,
}

impl CartierManinData {
    /// `c_{ip-j}`, with `i` and `j` counted from 1.
    pub fn entry(&self, i: usize, j: usize) -> &FpTriPoly {
        &self.entries[i - 1][j - 1]
    }

    /// The `x`-exponent `ip - j` of an entry.
    pub fn exponent(&self, i: usize, j: usize) -> usize {
        i * self.p.get() as usize - j
    }

    /// Entries keyed by their conventional names (`c_p-1`, `c_2p-2`, ...), row-major.
    pub fn named_entries(&self) -> Vec<(String, &FpTriPoly)> {
        let g = self.genus as usize;
        let mut out = Vec::new();
        for i in 1..=g {
            for j in 1..=g {
                out.push((entry_name(i, j), self.entry(i, j)));
            }
        }
        out
    }

    /// The genus-one entry as a polynomial in `z1`.
    pub fn as_univariate(&self) -> Option<FpUniPoly> {
        if self.genus != 1 {
            return None;
        }
        let c = self.entry(1, 1);
        let deg = c.var_degree(1).unwrap_or(0) as usize;
        let mut coeffs = vec![self.p.zero(); deg + 1];
        for (m, v) in c.terms() {
            debug_assert_eq!(m.0[1] + m.0[2], 0);
            coeffs[m.0[0] as usize] = *v;
        }
        Some(UniPoly::new(self.p, coeffs))
    }

    pub fn report(&self) -> CmReport {
        CmReport {
            p: self.p.get(),
            g: self.genus,
            entries: self.named_entries().into_iter().map(|(n, c)| (n, c.to_text())).collect(),
        }
    }
}

/// `c_p-1`, `c_p-2`, `c_2p-1`, ...
pub fn entry_name(i: usize, j: usize) -> String {
    if i == 1 {
        format!("c_p-{j}")
    } else {
        format!("c_{i}p-{j}")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CmReport {
    pub p: u32,
    pub g: u32,
    pub entries: std::collections::BTreeMap<String, String>,
}

fn compute_entries(p: PrimeModulus, genus: u32) -> Result<CartierManinData> {
    let expanded = rosenhain_f(p, genus)?.power(p.half() as u64);
    let g = genus as usize;
    let entries = (1..=g)
        .map(|i| (1..=g).map(|j| expanded.coeff(i * p.get() as usize - j)).collect())
        .collect();
    Ok(CartierManinData { p, genus, entries })
}

/// Memoized per `(p, g)`; concurrent callers may both compute, and the first
/// insert wins (the values are identical).
pub fn cm_entries(p: PrimeModulus, genus: u32) -> Result<Arc<CartierManinData>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<CartierManinData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(p.get(), genus)) {
        return Ok(hit.clone());
    }
    let data = Arc::new(compute_entries(p, genus)?);
    Ok(cache.lock().unwrap().entry((p.get(), genus)).or_insert(data).clone())
}

/// `H_p(t) = sum_{i=0}^{(p-1)/2} binom((p-1)/2, i)^2 t^i` over `F_p`.
pub fn hasse_polynomial(p: PrimeModulus) -> FpUniPoly {
    let e = p.half() as u64;
    let mut coeffs = Vec::with_capacity(e as usize + 1);
    let mut binom = p.elem(1);
    for i in 0..=e {
        coeffs.push(binom * binom);
        if i < e {
            binom = binom * p.elem(e - i) * p.elem(i + 1).inverse().expect("i + 1 <= e < p");
        }
    }
    UniPoly::new(p, coeffs)
}

/// All odd primes in `[3, max]`.
pub fn odd_primes_up_to(max: u64) -> Vec<PrimeModulus> {
    (3..=max).step_by(2).filter_map(|n| PrimeModulus::new(n).ok()).collect()
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SeparabilityEntry {
    pub p: u32,
    pub degree: usize,
    pub separable: bool,
    /// `gcd(H_p, H_p')` when it is nontrivial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repeated_factor: Option<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SeparabilityReport {
    pub p_max: u64,
    pub all_separable: bool,
    pub primes: Vec<SeparabilityEntry>,
}

/// Checks `gcd(H_p, H_p') = 1` for every odd prime `p <= p_max`.
pub fn igusa_separability_scan(p_max: u64) -> SeparabilityReport {
    use rayon::prelude::*;
    let primes: Vec<SeparabilityEntry> = odd_primes_up_to(p_max)
        .into_par_iter()
        .map(|p| {
            let h = hasse_polynomial(p);
            let g = h.gcd(&h.derivative());
            let separable = h.is_squarefree();
            SeparabilityEntry {
                p: p.get(),
                degree: h.degree().unwrap_or(0),
                separable,
                repeated_factor: (!separable).then(|| g.to_text("t")),
            }
        })
        .collect();
    SeparabilityReport { p_max, all_separable: primes.iter().all(|e| e.separable), primes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;

    fn prime(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    fn parse(p: u64, s: &str) -> FpTriPoly {
        TriPoly::parse(prime(p), s).unwrap()
    }

    #[test]
    fn rosenhain_f_examples() {
        let f1 = rosenhain_f(prime(7), 1).unwrap();
        assert_eq!(f1.degree(), Some(3));
        assert_eq!(f1.coeff(3), parse(7, "1"));
        assert_eq!(f1.coeff(2), parse(7, "-1 + -1*z1"));
        assert_eq!(f1.coeff(1), parse(7, "1*z1"));
        assert!(f1.coeff(0).is_zero());

        let f2 = rosenhain_f(prime(7), 2).unwrap();
        assert_eq!(f2.coeff(5), parse(7, "1"));
        assert!(f2.coeff(0).is_zero());
        assert_eq!(f2.coeff(2), parse(7, "-1*z1*z2 + -1*z1*z3 + -1*z2*z3 + -1*z1*z2*z3"));
        assert!(rosenhain_f(prime(7), 3).is_err());
    }

    #[test]
    fn p3_entries() {
        let cm = cm_entries(prime(3), 2).unwrap();
        assert_eq!(cm.entry(2, 1), &parse(3, "1"));
        assert_eq!(cm.entry(1, 2), &parse(3, "1*z1*z2*z3"));
        assert_eq!(cm.entry(2, 2), &parse(3, "-1 + -1*z1 + -1*z2 + -1*z3"));
        assert_eq!(cm.entry(1, 1), &parse(3, "-1*z1*z2 + -1*z1*z3 + -1*z2*z3 + -1*z1*z2*z3"));
        assert_eq!(cm.exponent(2, 2), 4);
    }

    #[test]
    fn cache_returns_the_same_data() {
        let a = cm_entries(prime(5), 2).unwrap();
        let b = cm_entries(prime(5), 2).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }

    /// Independent oracle: expand `f^e` as `(x^2 - x)^e * prod_k (x - z_k)^e`
    /// with binomial coefficients computed over the integers.
    fn entry_by_binomials(p: u64, exponent: usize) -> FpTriPoly {
        let e = (p - 1) / 2;
        let m = prime(p);
        let binom = |n: u64, k: u64| -> i64 {
            let mut b: i128 = 1;
            for i in 0..k {
                b = b * (n - i) as i128 / (i + 1) as i128;
            }
            (b % p as i128) as i64
        };
        let sign = |k: u64| if k % 2 == 0 { 1 } else { -1 };
        let mut out = TriPoly::zero(m);
        // (x^2 - x)^e = sum_a binom(e,a) (-1)^{e-a} x^{e+a}
        for a in 0..=e {
            let base_deg = (e + a) as usize;
            let base_coeff = binom(e, a) * sign(e - a);
            for n1 in 0..=e {
                for n2 in 0..=e {
                    for n3 in 0..=e {
                        let deg = base_deg + (3 * e - n1 - n2 - n3) as usize;
                        if deg != exponent {
                            continue;
                        }
                        let c = base_coeff
                            * binom(e, n1) % p as i64
                            * binom(e, n2) % p as i64
                            * binom(e, n3) % p as i64
                            * sign(n1 + n2 + n3);
                        out.add_term(Monomial([n1 as u32, n2 as u32, n3 as u32]), m.elem_i64(c));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn entries_match_binomial_expansion() {
        for p in [3u64, 5, 7, 11] {
            let cm = cm_entries(prime(p), 2).unwrap();
            for i in 1..=2 {
                for j in 1..=2 {
                    assert_eq!(cm.entry(i, j), &entry_by_binomials(p, cm.exponent(i, j)), "p={p} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn entries_are_symmetric_and_bounded() {
        for p in [5u64, 7, 11] {
            let cm = cm_entries(prime(p), 2).unwrap();
            let half = (p as u32 - 1) / 2;
            for (_, c) in cm.named_entries() {
                assert!(c.is_symmetric());
                for v in 1..=3 {
                    assert!(c.var_degree(v).unwrap_or(0) <= half);
                }
            }
        }
    }

    #[test]
    fn hasse_examples() {
        let h3 = hasse_polynomial(prime(3));
        assert_eq!(h3.coeffs(), &[prime(3).elem(1), prime(3).elem(1)]);
        let h5 = hasse_polynomial(prime(5));
        assert_eq!(h5.coeffs(), &[prime(5).elem(1), prime(5).elem(4), prime(5).elem(1)]);
        for p in odd_primes_up_to(60) {
            let h = hasse_polynomial(p);
            assert_eq!(h.degree(), Some(p.half() as usize));
            assert_eq!(h.leading(), Some(&p.elem(1)));
        }
    }

    /// The x^{p-1} coefficient of (x(x-1)(x-t))^e is (-1)^e H_p(t).
    #[test]
    fn genus_one_entry_is_signed_hasse_polynomial() {
        for p in odd_primes_up_to(31) {
            let c = cm_entries(p, 1).unwrap().as_univariate().unwrap();
            let sign = if p.half() % 2 == 0 { 1 } else { -1 };
            assert_eq!(c, hasse_polynomial(p).scale(&p.elem_i64(sign)), "p = {p}");
        }
    }

    #[test]
    fn separability_scan_examples() {
        let r = igusa_separability_scan(3);
        assert_eq!(r.primes.len(), 1);
        assert!(r.all_separable);
        let r = igusa_separability_scan(5);
        assert_eq!(r.primes.iter().map(|e| (e.p, e.separable)).collect::<Vec<_>>(), vec![(3, true), (5, true)]);
        assert!(igusa_separability_scan(2).primes.is_empty());
    }
}
