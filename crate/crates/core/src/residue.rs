//! Rational maps over the residue field: Frobenius factorization, orbit
//! classification of residue classes, and enumeration of maps whose fibers
//! over `{0, 1, ∞}` stay inside a prescribed finite set.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{FiniteField, ResidueElem, ResidueField};
use crate::poly::Poly;
use crate::scalar::Coefficient;
use crate::tree::DirectionClass;

/// A point of `P¹` over the residue field. Tangent directions at a type II
/// point are identified with these.
pub type P1Point = DirectionClass;

/// `num / den` over the residue field, with coprime parts and monic `den`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ResidueRationalMap {
    num: Poly<ResidueElem>,
    den: Poly<ResidueElem>,
    field: ResidueField,
}

impl ResidueRationalMap {
    pub fn new(num: Poly<ResidueElem>, den: Poly<ResidueElem>, field: ResidueField) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::constant(field.zero()));
        }
        let g = num.gcd(&den);
        let (num, den) =
            if g.degree().is_some_and(|d| d > 0) { (num.div_rem(&g).0, den.div_rem(&g).0) } else { (num, den) };
        let inv = field.one() / den.leading().unwrap().clone();
        Ok(ResidueRationalMap { num: num.scale(&inv), den: den.scale(&inv), field })
    }

    pub fn polynomial(p: Poly<ResidueElem>, field: ResidueField) -> Self {
        Self::new(p, Poly::constant(field.one()), field).expect("nonzero denominator")
    }

    pub fn constant(c: ResidueElem) -> Self {
        let field = c.field();
        ResidueRationalMap { num: Poly::constant(c), den: Poly::constant(field.one()), field }
    }

    /// `z^d` over the given field.
    pub fn monomial(field: ResidueField, d: usize) -> Self {
        Self::polynomial(Poly::monomial(field.one(), d), field)
    }

    pub fn num(&self) -> &Poly<ResidueElem> {
        &self.num
    }

    pub fn den(&self) -> &Poly<ResidueElem> {
        &self.den
    }

    pub fn field(&self) -> ResidueField {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn eval(&self, z: &P1Point) -> P1Point {
        match z {
            DirectionClass::Residue(c) => {
                let d = self.den.eval(c);
                if d.is_zero() {
                    DirectionClass::Infinity
                } else {
                    DirectionClass::Residue(self.num.eval(c) / d)
                }
            }
            DirectionClass::Infinity => {
                let dn = self.num.degree().unwrap_or(0);
                let dd = self.den.degree().unwrap_or(0);
                match dn.cmp(&dd) {
                    Ordering::Greater => DirectionClass::Infinity,
                    Ordering::Less => DirectionClass::Residue(self.field.zero()),
                    Ordering::Equal => {
                        let n = self.num.leading().cloned().unwrap_or_else(|| self.field.zero());
                        DirectionClass::Residue(n / self.den.leading().unwrap().clone())
                    }
                }
            }
        }
    }

    /// Whether the formal derivative `(N′D − ND′)/D²` vanishes identically.
    pub fn derivative_vanishes(&self) -> bool {
        let w = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        w.is_zero()
    }

    /// Nonconstant with a nonzero derivative.
    pub fn is_separable(&self) -> bool {
        self.degree() > 0 && !self.derivative_vanishes()
    }

    /// Local multiplicity at `z` (ramification index), using `z ↦ 1/z` at
    /// infinity.
    pub fn multiplicity(&self, z: &P1Point) -> usize {
        if self.degree() == 0 {
            return 0;
        }
        match z {
            DirectionClass::Residue(c) => mult_at(&self.num, &self.den, c),
            DirectionClass::Infinity => {
                let d = self.degree();
                let (n, m) = (reverse(&self.num, d), reverse(&self.den, d));
                mult_at(&n, &m, &self.field.zero())
            }
        }
    }

    pub fn is_critical(&self, z: &P1Point) -> bool {
        self.multiplicity(z) >= 2
    }

    /// `R(z^{p^n})` with the same coefficients.
    pub fn precompose_frobenius(&self, n: u32) -> Self {
        let p = self.field.characteristic() as usize;
        let k = p.pow(n);
        let spread = |f: &Poly<ResidueElem>| {
            let mut c = vec![self.field.zero(); f.degree().unwrap_or(0) * k + 1];
            for (i, a) in f.coeffs().iter().enumerate() {
                c[i * k] = a.clone();
            }
            Poly::new(c)
        };
        ResidueRationalMap { num: spread(&self.num), den: spread(&self.den), field: self.field }
    }

    pub fn to_json(&self) -> Value {
        let coeffs = |p: &Poly<ResidueElem>| -> Vec<String> { p.coeffs().iter().map(|c| c.to_string()).collect() };
        json!({"num": coeffs(&self.num), "den": coeffs(&self.den)})
    }

    fn sort_key(&self) -> (&[ResidueElem], &[ResidueElem]) {
        (self.num.coeffs(), self.den.coeffs())
    }
}

fn reverse(p: &Poly<ResidueElem>, d: usize) -> Poly<ResidueElem> {
    let mut c = p.coeffs().to_vec();
    let zero = p.coeffs()[0].zero_like();
    c.resize(d + 1, zero);
    c.reverse();
    Poly::new(c)
}

/// Multiplicity at `c` of `N/D`, assuming coprime parts.
fn mult_at(num: &Poly<ResidueElem>, den: &Poly<ResidueElem>, c: &ResidueElem) -> usize {
    let d = den.eval(c);
    let f = if d.is_zero() {
        den.clone()
    } else {
        let w = num.eval(c) / d;
        num - &den.scale(&w)
    };
    f.taylor_shift(c).order().unwrap_or(usize::MAX)
}

impl PartialOrd for ResidueRationalMap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic by numerator coefficients, then denominator coefficients.
impl Ord for ResidueRationalMap {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for ResidueRationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ResidueRationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Writes `R = R_sep(z^{p^n})` with `R_sep` separable and `n` maximal.
/// In residue characteristic 0 this is `(R, 0)`.
pub fn frobenius_factor(r: &ResidueRationalMap) -> (ResidueRationalMap, u32) {
    let p = r.field.characteristic() as usize;
    if p == 0 {
        return (r.clone(), 0);
    }
    let mut cur = r.clone();
    let mut n = 0;
    while cur.degree() > 0 && cur.num.support().chain(cur.den.support()).all(|e| e % p == 0) {
        let shrink = |f: &Poly<ResidueElem>| Poly::new(f.coeffs().iter().step_by(p).cloned().collect());
        cur = ResidueRationalMap { num: shrink(&cur.num), den: shrink(&cur.den), field: cur.field };
        n += 1;
    }
    (cur, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitVerdict {
    #[serde(rename = "non-preperiodic")]
    NonPreperiodic,
    #[serde(rename = "non-preperiodic (budget)")]
    NonPreperiodicBudget,
    #[serde(rename = "preperiodic-to-critical-cycle")]
    PreperiodicCritical,
    #[serde(rename = "preperiodic-to-noncritical-cycle")]
    PreperiodicNoncritical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitClassification {
    pub verdict: OrbitVerdict,
    /// Points before the cycle (the whole computed orbit when no cycle was found).
    pub prefix: Vec<P1Point>,
    pub cycle: Vec<P1Point>,
    /// Critical points lying on the cycle.
    pub critical_on_cycle: Vec<P1Point>,
}

/// Limits for orbits over an infinite residue field.
#[derive(Clone, Copy, Debug)]
pub struct OrbitBudget {
    pub max_steps: usize,
    pub max_bits: u64,
}

impl Default for OrbitBudget {
    fn default() -> Self {
        OrbitBudget { max_steps: 64, max_bits: 4096 }
    }
}

fn point_bits(z: &P1Point) -> u64 {
    match z {
        DirectionClass::Residue(ResidueElem::Q(q)) => q.numer().bits() + q.denom().bits(),
        _ => 0,
    }
}

/// Escape radius of a polynomial over `Q`: beyond it `|P(z)| > |z|`.
fn escape_radius(r: &ResidueRationalMap) -> Option<BigRational> {
    if !r.is_polynomial() || r.degree() < 2 {
        return None;
    }
    let c: Vec<BigRational> = r.num.coeffs().iter().map(|c| c.as_rational().cloned()).collect::<Option<_>>()?;
    let lead = c.last().unwrap().abs();
    let rest: BigRational = c[..c.len() - 1].iter().map(|a| a.abs()).sum();
    Some(BigRational::one() + (BigRational::one() + rest) / lead)
}

/// Classifies the forward orbit of `z` under `r`.
///
/// Over a finite field the orbit always closes up. Over `Q`, a cycle found
/// within the budget is reported as such, strict growth beyond the escape
/// radius certifies non-preperiodicity, and otherwise the soft verdict
/// [`OrbitVerdict::NonPreperiodicBudget`] is returned.
pub fn classify_direction(r: &ResidueRationalMap, z: &P1Point, budget: OrbitBudget) -> OrbitClassification {
    let finite = r.field.order().is_some();
    let escape = if finite { None } else { escape_radius(r) };
    let mut seen: HashMap<P1Point, usize> = HashMap::new();
    let mut orbit: Vec<P1Point> = Vec::new();
    let mut cur = z.clone();
    loop {
        if let Some(&start) = seen.get(&cur) {
            let cycle = orbit[start..].to_vec();
            let critical: Vec<P1Point> = cycle.iter().filter(|c| r.is_critical(c)).cloned().collect();
            let verdict = if critical.is_empty() {
                OrbitVerdict::PreperiodicNoncritical
            } else {
                OrbitVerdict::PreperiodicCritical
            };
            return OrbitClassification {
                verdict,
                prefix: orbit[..start].to_vec(),
                cycle,
                critical_on_cycle: critical,
            };
        }
        if let (Some(bound), DirectionClass::Residue(ResidueElem::Q(q))) = (&escape, &cur) {
            if q.abs() > *bound {
                orbit.push(cur);
                return OrbitClassification {
                    verdict: OrbitVerdict::NonPreperiodic,
                    prefix: orbit,
                    cycle: vec![],
                    critical_on_cycle: vec![],
                };
            }
        }
        if !finite && (orbit.len() >= budget.max_steps || point_bits(&cur) > budget.max_bits) {
            orbit.push(cur);
            return OrbitClassification {
                verdict: OrbitVerdict::NonPreperiodicBudget,
                prefix: orbit,
                cycle: vec![],
                critical_on_cycle: vec![],
            };
        }
        seen.insert(cur.clone(), orbit.len());
        let next = r.eval(&cur);
        orbit.push(cur);
        cur = next;
    }
}

/// Ramification data of one enumerated map over `{0, 1, ∞}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberCount {
    pub degree: usize,
    /// Number of distinct points in the three fibers.
    pub points: usize,
    /// `Σ (e − 1)` over those points.
    pub ramification: usize,
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub q: u32,
    pub set: Vec<P1Point>,
    pub d_max: usize,
    pub maps: Vec<ResidueRationalMap>,
    pub fibers: Vec<FiberCount>,
    pub max_degree: usize,
    /// Every map has degree at most `#S − 2`.
    pub bound_satisfied: bool,
    /// `points ≤ #S` and `ramification ≤ 2·deg − 2` for every map.
    pub ramification_consistent: bool,
}

fn targets(field: ResidueField) -> [P1Point; 3] {
    [DirectionClass::Residue(field.zero()), DirectionClass::Residue(field.one()), DirectionClass::Infinity]
}

fn linear(field: ResidueField, root: &ResidueElem) -> Poly<ResidueElem> {
    Poly::new(vec![-root.clone(), field.one()])
}

fn product(field: ResidueField, roots: &[ResidueElem]) -> Poly<ResidueElem> {
    roots.iter().fold(Poly::constant(field.one()), |acc, r| &acc * &linear(field, r))
}

/// Multisets of size `k` drawn from `items` (indices non-decreasing).
fn multisets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i].clone());
            go(items, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Whether `f` is a constant times a product of `(z − s)` with `s ∈ roots`.
fn splits_over(f: &Poly<ResidueElem>, roots: &[ResidueElem], field: ResidueField) -> bool {
    let mut f = f.clone();
    for s in roots {
        let l = linear(field, s);
        loop {
            if f.degree().unwrap_or(0) == 0 {
                break;
            }
            let (q, rem) = f.div_rem(&l);
            if !rem.is_zero() {
                break;
            }
            f = q;
        }
    }
    f.degree() == Some(0)
}

/// Fibers of `r` over `0, 1, ∞` lie in `set`, checked by factoring
/// `N − wD` over the finite part of `set` and comparing degrees at `∞`.
fn fibers_split(r: &ResidueRationalMap, set: &[P1Point]) -> bool {
    let field = r.field;
    let finite: Vec<ResidueElem> = set
        .iter()
        .filter_map(|p| match p {
            DirectionClass::Residue(c) => Some(c.clone()),
            DirectionClass::Infinity => None,
        })
        .collect();
    let has_inf = set.contains(&DirectionClass::Infinity);
    let d = r.degree();
    for w in targets(field) {
        let f = match &w {
            DirectionClass::Residue(c) => &r.num - &r.den.scale(c),
            DirectionClass::Infinity => r.den.clone(),
        };
        if f.is_zero() || !splits_over(&f, &finite, field) {
            return false;
        }
        if f.degree().unwrap_or(0) < d && !has_inf {
            return false;
        }
    }
    true
}

/// `Σ_{s ∈ S, R(s) = w} mult_s(R) = deg R` for each `w ∈ {0, 1, ∞}`.
fn fibers_counted(r: &ResidueRationalMap, set: &[P1Point]) -> bool {
    let d = r.degree();
    targets(r.field)
        .iter()
        .all(|w| set.iter().filter(|s| r.eval(s) == *w).map(|s| r.multiplicity(s)).sum::<usize>() == d)
}

fn fiber_count(r: &ResidueRationalMap, set: &[P1Point]) -> FiberCount {
    let ts = targets(r.field);
    let pts: Vec<&P1Point> = set.iter().filter(|s| ts.contains(&r.eval(s))).collect();
    FiberCount { degree: r.degree(), points: pts.len(), ramification: pts.iter().map(|s| r.multiplicity(s) - 1).sum() }
}

fn validate_set(q: u32, set: &[P1Point]) -> Result<(FiniteField, Vec<P1Point>)> {
    let f = FiniteField::with_order(q)?;
    if q > 9 {
        return Err(Error::InvalidParameters(format!("q = {q} exceeds 9")));
    }
    let field = ResidueField::Fp(f);
    let mut s: Vec<P1Point> = Vec::new();
    for p in set {
        if let DirectionClass::Residue(c) = p {
            if c.field() != field {
                return Err(Error::InvalidParameters(format!("{c} is not in F_{q}")));
            }
        }
        if !s.contains(p) {
            s.push(p.clone());
        }
    }
    Ok((f, s))
}

/// All separable `R` over `F_q` with `1 ≤ deg R ≤ d_max` and
/// `R⁻¹{0, 1, ∞} ⊆ S`, built from the normal form
/// `a·∏(T − z_i) / ∏(T − z′_j)` with `z_i, z′_j ∈ S` and `R(z″) = 1` for
/// some `z″ ∈ S`. Sorted lexicographically by coefficients.
pub fn enumerate_restricted_maps(q: u32, set: &[P1Point], d_max: usize) -> Result<Enumeration> {
    if d_max == 0 {
        return Err(Error::InvalidParameters("d_max must be at least 1".into()));
    }
    let (f, set) = validate_set(q, set)?;
    let field = ResidueField::Fp(f);
    let finite: Vec<ResidueElem> =
        set.iter().filter_map(|p| if let DirectionClass::Residue(c) = p { Some(c.clone()) } else { None }).collect();
    let mut found: BTreeSet<ResidueRationalMap> = BTreeSet::new();
    for m in 0..=d_max {
        for k in 0..=d_max {
            if m.max(k) == 0 {
                continue;
            }
            for zeros in multisets(&finite, m) {
                for poles in multisets(&finite, k) {
                    if zeros.iter().any(|z| poles.contains(z)) {
                        continue;
                    }
                    let n0 = product(field, &zeros);
                    let d0 = product(field, &poles);
                    for z in &set {
                        let a = match z {
                            DirectionClass::Infinity if m == k => field.one(),
                            DirectionClass::Infinity => continue,
                            DirectionClass::Residue(c) => {
                                let (nv, dv) = (n0.eval(c), d0.eval(c));
                                if nv.is_zero() || dv.is_zero() {
                                    continue;
                                }
                                dv / nv
                            }
                        };
                        let r = ResidueRationalMap::new(n0.scale(&a), d0.clone(), field)?;
                        if r.is_separable() && fibers_split(&r, &set) {
                            found.insert(r);
                        }
                    }
                }
            }
        }
    }
    Ok(summarize(q, set, d_max, found.into_iter().collect()))
}

/// Exhaustive search over all `N` of degree `≤ d_max` and monic `D`, used as
/// an oracle for [`enumerate_restricted_maps`] at small sizes.
pub fn enumerate_restricted_maps_brute_force(q: u32, set: &[P1Point], d_max: usize) -> Result<Enumeration> {
    let (f, set) = validate_set(q, set)?;
    let field = ResidueField::Fp(f);
    let elems: Vec<ResidueElem> = field.elements().unwrap();
    let tuples = |len: usize| -> Vec<Vec<ResidueElem>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|t| {
                    elems.iter().map(move |e| {
                        let mut t = t.clone();
                        t.push(e.clone());
                        t
                    })
                })
                .collect();
        }
        out
    };
    let mut dens = Vec::new();
    for k in 0..=d_max {
        for mut t in tuples(k) {
            t.push(field.one());
            dens.push(Poly::new(t));
        }
    }
    let mut found = BTreeSet::new();
    for n in tuples(d_max + 1) {
        let num = Poly::new(n);
        if num.is_zero() {
            continue;
        }
        for den in &dens {
            if num.gcd(den).degree() != Some(0) {
                continue;
            }
            let r = ResidueRationalMap { num: num.clone(), den: den.clone(), field };
            let d = r.degree();
            if d == 0 || d > d_max || !r.is_separable() {
                continue;
            }
            if fibers_counted(&r, &set) {
                found.insert(r);
            }
        }
    }
    Ok(summarize(q, set, d_max, found.into_iter().collect()))
}

fn summarize(q: u32, set: Vec<P1Point>, d_max: usize, maps: Vec<ResidueRationalMap>) -> Enumeration {
    let bound = set.len().saturating_sub(2);
    let fibers: Vec<FiberCount> = maps.iter().map(|r| fiber_count(r, &set)).collect();
    let max_degree = maps.iter().map(|r| r.degree()).max().unwrap_or(0);
    let ramification_consistent = fibers.iter().all(|c| {
        c.points <= set.len() && c.ramification + 2 <= 2 * c.degree && c.points == 3 * c.degree - c.ramification
    });
    Enumeration {
        q,
        set,
        d_max,
        bound_satisfied: maps.iter().all(|r| r.degree() <= bound),
        maps,
        fibers,
        max_degree,
        ramification_consistent,
    }
}

impl ResidueRationalMap {
    /// `Σ c_i z^i / Σ d_j z^j` from coefficient lists, lowest degree first.
    pub fn from_coeffs(field: ResidueField, num: Vec<ResidueElem>, den: Vec<ResidueElem>) -> Result<Self> {
        Self::new(Poly::new(num), Poly::new(den), field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> ResidueField {
        ResidueField::Fp(FiniteField::prime(p).unwrap())
    }

    fn poly(field: ResidueField, c: &[i64]) -> Poly<ResidueElem> {
        Poly::new(c.iter().map(|&x| field.int(x)).collect())
    }

    #[test]
    fn frobenius_examples() {
        let f2 = gf(2);
        let (r, n) = frobenius_factor(&ResidueRationalMap::monomial(f2, 2));
        assert_eq!((r, n), (ResidueRationalMap::monomial(f2, 1), 1));
        let (r, n) = frobenius_factor(&ResidueRationalMap::monomial(f2, 3));
        assert_eq!((r, n), (ResidueRationalMap::monomial(f2, 3), 0));
        let f3 = gf(3);
        let z9z3 = ResidueRationalMap::polynomial(poly(f3, &[0, 0, 0, 1, 0, 0, 0, 0, 0, 1]), f3);
        let (r, n) = frobenius_factor(&z9z3);
        assert_eq!(r, ResidueRationalMap::polynomial(poly(f3, &[0, 1, 0, 1]), f3));
        assert_eq!(n, 1);
        assert_eq!(r.precompose_frobenius(1), z9z3);
    }

    #[test]
    fn classification_examples() {
        let f3 = gf(3);
        let sq = ResidueRationalMap::monomial(f3, 2);
        let c = classify_direction(&sq, &DirectionClass::Residue(f3.int(0)), OrbitBudget::default());
        assert_eq!(c.verdict, OrbitVerdict::PreperiodicCritical);
        let c = classify_direction(&sq, &DirectionClass::Residue(f3.int(2)), OrbitBudget::default());
        assert_eq!(c.verdict, OrbitVerdict::PreperiodicNoncritical);
        assert_eq!(c.prefix, vec![DirectionClass::Residue(f3.int(2))]);
        assert_eq!(c.cycle, vec![DirectionClass::Residue(f3.int(1))]);
        let q = ResidueField::Q;
        let c = classify_direction(
            &ResidueRationalMap::monomial(q, 2),
            &DirectionClass::Residue(q.int(2)),
            OrbitBudget::default(),
        );
        assert_eq!(c.verdict, OrbitVerdict::NonPreperiodic);
    }

    #[test]
    fn infinity_ramification_uses_inverted_coordinate() {
        let f5 = gf(5);
        let sq = ResidueRationalMap::monomial(f5, 2);
        assert_eq!(sq.multiplicity(&DirectionClass::Infinity), 2);
        let mobius = ResidueRationalMap::new(poly(f5, &[1]), poly(f5, &[0, 1]), f5).unwrap();
        assert_eq!(mobius.multiplicity(&DirectionClass::Infinity), 1);
        assert_eq!(mobius.eval(&DirectionClass::Infinity), DirectionClass::Residue(f5.zero()));
    }

    #[test]
    fn three_point_sets_over_small_fields() {
        for q in [2, 3] {
            let f = ResidueField::Fp(FiniteField::with_order(q).unwrap());
            let s = targets(f).to_vec();
            let e = enumerate_restricted_maps(q, &s, 3).unwrap();
            assert_eq!(e.maps.len(), 6, "q={q}");
            assert!(e.bound_satisfied && e.ramification_consistent);
            let b = enumerate_restricted_maps_brute_force(q, &s, 3).unwrap();
            assert_eq!(e.maps, b.maps);
        }
    }

    #[test]
    fn two_point_sets_give_nothing() {
        let f = gf(5);
        let s = vec![DirectionClass::Residue(f.zero()), DirectionClass::Infinity];
        assert!(enumerate_restricted_maps(5, &s, 3).unwrap().maps.is_empty());
    }
}
