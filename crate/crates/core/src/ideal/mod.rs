//! Groebner bases over `F_p[z1, z2, z3]` and the quotient-algebra tools used
//! to decide whether a zero-dimensional ideal is radical.

mod quotient;

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, HashSet};

use serde::Serialize;

use crate::cartier::cm_entries;
use crate::error::Result;
use crate::field::{Fp, PrimeModulus};
use crate::poly::{Monomial, TriPoly};
use crate::{FpTriPoly, FpUniPoly};

pub use quotient::{elimination_min_poly, is_radical_zero_dim, quotient_algebra, QuotientAlgebra};

const EXP_BITS: u32 = 21;
const EXP_MASK: u64 = (1 << EXP_BITS) - 1;

/// Monomial orders with `z1 > z2 > z3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    /// Packs a monomial into an integer whose natural order is this order.
    /// The packing is additive: `key(m * q) = key(m) + shift(q)` (wrapping).
    #[inline]
    pub fn key(self, m: Monomial) -> u64 {
        let [a, b, c] = m.0.map(|e| e as u64);
        debug_assert!(a.max(b).max(c) < EXP_MASK);
        match self {
            MonomialOrder::Grevlex => {
                ((a + b + c) << (2 * EXP_BITS)) | ((EXP_MASK - c) << EXP_BITS) | (EXP_MASK - b)
            }
            MonomialOrder::Lex => (a << (2 * EXP_BITS)) | (b << EXP_BITS) | c,
        }
    }

    /// Offset with `key(m * q) = key(m).wrapping_add(shift(q))`.
    #[inline]
    pub fn shift(self, q: Monomial) -> u64 {
        let [a, b, c] = q.0.map(|e| e as u64);
        match self {
            MonomialOrder::Grevlex => ((a + b + c) << (2 * EXP_BITS))
                .wrapping_sub(c << EXP_BITS)
                .wrapping_sub(b),
            MonomialOrder::Lex => self.key(q),
        }
    }

    #[inline]
    pub fn decode(self, key: u64) -> Monomial {
        let hi = key >> (2 * EXP_BITS);
        let mid = (key >> EXP_BITS) & EXP_MASK;
        let lo = key & EXP_MASK;
        match self {
            MonomialOrder::Grevlex => {
                let (c, b) = (EXP_MASK - mid, EXP_MASK - lo);
                Monomial([(hi - b - c) as u32, b as u32, c as u32])
            }
            MonomialOrder::Lex => Monomial([hi as u32, mid as u32, lo as u32]),
        }
    }

    pub fn cmp(self, a: Monomial, b: Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

/// Terms sorted by strictly decreasing key; coefficients nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Terms(Vec<(u64, Fp)>);

impl Terms {
    fn from_poly(order: MonomialOrder, f: &FpTriPoly) -> Self {
        let mut t: Vec<(u64, Fp)> = f.terms().map(|(m, c)| (order.key(*m), *c)).collect();
        t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Terms(t)
    }

    fn to_poly(&self, order: MonomialOrder, p: PrimeModulus) -> FpTriPoly {
        TriPoly::from_terms(p, self.0.iter().map(|&(k, c)| (order.decode(k), c)))
    }

    fn lead_key(&self) -> Option<u64> {
        self.0.first().map(|t| t.0)
    }

    fn monic(mut self) -> Self {
        if let Some(&(_, lc)) = self.0.first() {
            let inv = lc.inverse().expect("nonzero leading coefficient");
            for t in &mut self.0 {
                t.1 *= inv;
            }
        }
        self
    }
}

/// Reduction context: monic reducers with their leading monomials, searched in
/// insertion order.
struct Reducers<'a> {
    order: MonomialOrder,
    polys: Vec<&'a Terms>,
    leads: Vec<Monomial>,
}

impl<'a> Reducers<'a> {
    fn new(order: MonomialOrder) -> Self {
        Reducers { order, polys: Vec::new(), leads: Vec::new() }
    }

    fn push(&mut self, t: &'a Terms) {
        self.leads.push(self.order.decode(t.lead_key().expect("nonzero reducer")));
        self.polys.push(t);
    }

    /// Full normal form; the highest remaining term is always reduced first.
    fn reduce(&self, f: &Terms, p: PrimeModulus) -> Terms {
        let mut heap: BinaryHeap<(u64, u32)> = f.0.iter().map(|&(k, c)| (k, c.value())).collect();
        let mut rem = Vec::new();
        while let Some((key, c)) = heap.pop() {
            let mut c = p.elem(c as u64);
            while heap.peek().is_some_and(|t| t.0 == key) {
                c += p.elem(heap.pop().unwrap().1 as u64);
            }
            if c.is_zero() {
                continue;
            }
            let m = self.order.decode(key);
            match self.leads.iter().position(|l| l.divides(m)) {
                Some(i) => {
                    let g = self.polys[i];
                    let delta = key.wrapping_sub(g.0[0].0);
                    for &(gk, gc) in &g.0[1..] {
                        heap.push((gk.wrapping_add(delta), (-(c * gc)).value()));
                    }
                }
                None => rem.push((key, c)),
            }
        }
        Terms(rem)
    }
}

/// A reduced Groebner basis: monic generators sorted by increasing leading
/// monomial, none of whose terms is divisible by another generator's leading
/// monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    field: PrimeModulus,
    order: MonomialOrder,
    terms: Vec<Terms>,
    generators: Vec<FpTriPoly>,
}

impl GroebnerBasis {
    pub fn field(&self) -> PrimeModulus {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[FpTriPoly] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.terms.iter().map(|t| self.order.decode(t.lead_key().unwrap())).collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.leading_monomials().first() == Some(&Monomial::ONE)
    }

    pub fn normal_form(&self, f: &FpTriPoly) -> FpTriPoly {
        let mut r = Reducers::new(self.order);
        for t in &self.terms {
            r.push(t);
        }
        r.reduce(&Terms::from_poly(self.order, f), self.field).to_poly(self.order, self.field)
    }

    pub fn contains(&self, f: &FpTriPoly) -> bool {
        self.normal_form(f).is_zero()
    }
}

pub fn normal_form(f: &FpTriPoly, basis: &GroebnerBasis) -> FpTriPoly {
    basis.normal_form(f)
}

fn s_polynomial(order: MonomialOrder, p: PrimeModulus, f: &Terms, g: &Terms) -> Terms {
    let (fk, gk) = (f.0[0].0, g.0[0].0);
    let lcm = order.decode(fk).lcm(order.decode(gk));
    let lk = order.key(lcm);
    let (df, dg) = (lk.wrapping_sub(fk), lk.wrapping_sub(gk));
    let mut heap: BinaryHeap<(u64, u32)> = BinaryHeap::new();
    for &(k, c) in &f.0[1..] {
        heap.push((k.wrapping_add(df), c.value()));
    }
    for &(k, c) in &g.0[1..] {
        heap.push((k.wrapping_add(dg), (-c).value()));
    }
    let mut out = Vec::new();
    while let Some((key, c)) = heap.pop() {
        let mut c = p.elem(c as u64);
        while heap.peek().is_some_and(|t| t.0 == key) {
            c += p.elem(heap.pop().unwrap().1 as u64);
        }
        if !c.is_zero() {
            out.push((key, c));
        }
    }
    Terms(out)
}

/// Buchberger's algorithm with the normal selection strategy (smallest pair
/// lcm first, ties by generator index) and both of Buchberger's criteria,
/// followed by minimalization and interreduction.
pub fn buchberger(p: PrimeModulus, generators: &[FpTriPoly], order: MonomialOrder) -> GroebnerBasis {
    let mut basis: Vec<Terms> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    // (lcm key, j, i) with i < j, awaiting treatment.
    let mut queue: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let add = |t: Terms,
               basis: &mut Vec<Terms>,
               leads: &mut Vec<Monomial>,
               queue: &mut BTreeSet<(u64, usize, usize)>,
               pending: &mut HashSet<(usize, usize)>| {
        let lead = order.decode(t.lead_key().unwrap());
        let j = basis.len();
        for (i, &li) in leads.iter().enumerate() {
            queue.insert((order.key(li.lcm(lead)), j, i));
            pending.insert((i, j));
        }
        basis.push(t);
        leads.push(lead);
    };

    let unit = |p: PrimeModulus| GroebnerBasis {
        field: p,
        order,
        terms: vec![Terms(vec![(order.key(Monomial::ONE), p.elem(1))])],
        generators: vec![TriPoly::one(p)],
    };

    for g in generators {
        let t = {
            let mut r = Reducers::new(order);
            for b in &basis {
                r.push(b);
            }
            r.reduce(&Terms::from_poly(order, g), p)
        };
        if t.0.is_empty() {
            continue;
        }
        if t.lead_key() == Some(order.key(Monomial::ONE)) {
            return unit(p);
        }
        add(t.monic(), &mut basis, &mut leads, &mut queue, &mut pending);
    }

    while let Some((lk, j, i)) = queue.pop_first() {
        pending.remove(&(i, j));
        let lcm = order.decode(lk);
        if leads[i].is_coprime(leads[j]) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].divides(lcm)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(order, p, &basis[i], &basis[j]);
        let r = {
            let mut red = Reducers::new(order);
            for b in &basis {
                red.push(b);
            }
            red.reduce(&s, p)
        };
        if r.0.is_empty() {
            continue;
        }
        if r.lead_key() == Some(order.key(Monomial::ONE)) {
            return unit(p);
        }
        add(r.monic(), &mut basis, &mut leads, &mut queue, &mut pending);
    }

    finish(p, order, basis)
}

/// Drops generators whose leading monomial is divisible by another's, then
/// reduces every tail against the rest.
fn finish(p: PrimeModulus, order: MonomialOrder, basis: Vec<Terms>) -> GroebnerBasis {
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by_key(|&i| (basis[i].lead_key().unwrap(), i));
    let mut kept: Vec<usize> = Vec::new();
    for i in idx {
        let li = order.decode(basis[i].lead_key().unwrap());
        if !kept.iter().any(|&k| order.decode(basis[k].lead_key().unwrap()).divides(li)) {
            kept.push(i);
        }
    }
    let minimal: Vec<&Terms> = kept.iter().map(|&i| &basis[i]).collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (n, g) in minimal.iter().enumerate() {
        let mut r = Reducers::new(order);
        for (m, h) in minimal.iter().enumerate() {
            if m != n {
                r.push(h);
            }
        }
        let tail = r.reduce(&Terms(g.0[1..].to_vec()), p);
        let mut t = vec![g.0[0]];
        t.extend(tail.0);
        reduced.push(Terms(t));
    }
    let generators = reduced.iter().map(|t| t.to_poly(order, p)).collect();
    GroebnerBasis { field: p, order, terms: reduced, generators }
}

/// Checks, outside the algorithm's bookkeeping, that every S-polynomial of
/// the basis (formed with ordinary polynomial arithmetic) reduces to zero.
pub fn s_polynomials_reduce_to_zero(basis: &GroebnerBasis) -> bool {
    let order = basis.order;
    let lead = |f: &FpTriPoly| -> (Monomial, Fp) {
        f.terms()
            .max_by(|a, b| order.cmp(*a.0, *b.0))
            .map(|(m, c)| (*m, *c))
            .expect("nonzero generator")
    };
    let gens = basis.generators();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (mi, ci) = lead(&gens[i]);
            let (mj, cj) = lead(&gens[j]);
            let l = mi.lcm(mj);
            let s = &gens[i].mul_term(mi.quotient_of(l).unwrap(), &ci.inverse().unwrap())
                - &gens[j].mul_term(mj.quotient_of(l).unwrap(), &cj.inverse().unwrap());
            if !basis.normal_form(&s).is_zero() {
                return false;
            }
        }
    }
    true
}

/// The four entries in Jacobian column order `c_{p-1}, c_{2p-1}, c_{p-2}, c_{2p-2}`.
pub fn superspecial_generators(p: PrimeModulus) -> Result<[FpTriPoly; 4]> {
    let cm = cm_entries(p, 2)?;
    Ok([cm.entry(1, 1).clone(), cm.entry(2, 1).clone(), cm.entry(1, 2).clone(), cm.entry(2, 2).clone()])
}

/// Groebner basis, quotient algebra and elimination polynomials of the ideal
/// generated by the four Cartier-Manin entries.
#[derive(Clone, Debug)]
pub struct IdealAnalysis {
    pub p: PrimeModulus,
    pub basis: GroebnerBasis,
    pub quotient: QuotientAlgebra,
    pub min_polys: [FpUniPoly; 3],
    pub radical: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdealReport {
    pub p: u32,
    pub groebner_size: usize,
    pub quotient_dim: usize,
    pub radical: bool,
    pub min_poly_degrees: Vec<usize>,
}

impl IdealAnalysis {
    pub fn report(&self) -> IdealReport {
        IdealReport {
            p: self.p.get(),
            groebner_size: self.basis.len(),
            quotient_dim: self.quotient.dim(),
            radical: self.radical,
            min_poly_degrees: self.min_polys.iter().map(|m| m.degree().unwrap_or(0)).collect(),
        }
    }
}

pub fn analyze_superspecial_ideal(p: PrimeModulus) -> Result<IdealAnalysis> {
    let gens = superspecial_generators(p)?;
    let basis = buchberger(p, &gens, MonomialOrder::Grevlex);
    let quotient = quotient_algebra(&basis)?;
    let min_polys = [1, 2, 3].map(|v| elimination_min_poly(&quotient, v));
    let radical = min_polys.iter().all(|m| m.is_squarefree());
    Ok(IdealAnalysis { p, basis, quotient, min_polys, radical })
}
