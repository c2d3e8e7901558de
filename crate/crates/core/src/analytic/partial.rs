use serde_json::{json, Value};

use super::RationalMap;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::poly::Poly;
use crate::scalar::Coefficient;

/// `Σ_{i=1}^{m} a_i / (z − pole)^i`, with `coeffs[i − 1] = a_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalPart {
    pub pole: FieldElement,
    pub coeffs: Vec<FieldElement>,
}

/// A polynomial plus principal parts at the poles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub polynomial: Poly<FieldElement>,
    pub parts: Vec<PrincipalPart>,
    one: FieldElement,
}

fn linear(pole: &FieldElement) -> Poly<FieldElement> {
    Poly::new(vec![-pole.clone(), pole.one_like()])
}

/// First `n` coefficients of the power series `a(u)/b(u)`, `b(0) ≠ 0`.
fn series_quotient(a: &Poly<FieldElement>, b: &Poly<FieldElement>, n: usize) -> Vec<FieldElement> {
    let zero = b.coeffs()[0].zero_like();
    let get = |p: &Poly<FieldElement>, i: usize| p.coeff(i).cloned().unwrap_or_else(|| zero.clone());
    let b0 = b.coeffs()[0].clone();
    let mut g: Vec<FieldElement> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = get(a, k);
        for l in 1..=k {
            acc = acc - get(b, l) * g[k - l].clone();
        }
        g.push(acc / b0.clone());
    }
    g
}

/// Splits `R = N/D` into a polynomial part and principal parts at the given
/// poles. `D` must be a constant times `∏ (z − z_j)^{m_j}`.
pub fn partial_fractions(r: &RationalMap, poles: &[FieldElement]) -> Result<PartialFractions> {
    let mut rest = r.den().clone();
    let mut mults = Vec::new();
    for z in poles {
        if mults.iter().any(|(p, _): &(FieldElement, usize)| p == z) {
            continue;
        }
        let l = linear(z);
        let mut m = 0;
        while rest.degree().unwrap_or(0) > 0 {
            let (q, rem) = rest.div_rem(&l);
            if !rem.is_zero() {
                break;
            }
            rest = q;
            m += 1;
        }
        if m > 0 {
            mults.push((z.clone(), m));
        }
    }
    if rest.degree() != Some(0) {
        return Err(Error::NotSplit);
    }
    let (polynomial, rem) = r.num().div_rem(r.den());
    let mut parts = Vec::new();
    for (z, m) in &mults {
        // R − poly = rem/D = rem / ((z − z_j)^m Q_j)
        let q = r.den().div_rem(&linear(z).pow(*m)).0;
        let g = series_quotient(&rem.taylor_shift(z), &q.taylor_shift(z), *m);
        let coeffs = (1..=*m).map(|i| g[m - i].clone()).collect();
        parts.push(PrincipalPart { pole: z.clone(), coeffs });
    }
    Ok(PartialFractions { polynomial, parts, one: r.den().coeffs()[0].one_like() })
}

impl PartialFractions {
    /// The decomposition as a single fraction `(num, den)` with
    /// `den = ∏ (z − z_j)^{m_j}`.
    pub fn recombine(&self) -> (Poly<FieldElement>, Poly<FieldElement>) {
        let den = self
            .parts
            .iter()
            .fold(Poly::constant(self.one.clone()), |acc, p| &acc * &linear(&p.pole).pow(p.coeffs.len()));
        let mut num = &self.polynomial * &den;
        for p in &self.parts {
            let m = p.coeffs.len();
            let others = den.div_rem(&linear(&p.pole).pow(m)).0;
            for (i, a) in p.coeffs.iter().enumerate() {
                let k = i + 1;
                let term = &others * &linear(&p.pole).pow(m - k);
                num = &num + &term.scale(a);
            }
        }
        (num, den)
    }

    /// `N·den == num·D`.
    pub fn matches(&self, r: &RationalMap) -> bool {
        let (num, den) = self.recombine();
        &num * r.den() == &den * r.num()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "polynomial": self.polynomial.coeffs().iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "parts": self.parts.iter().map(|p| json!({
                "pole": p.pole.to_json(),
                "coeffs": p.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FieldDescriptor;

    #[test]
    fn textbook_splits() {
        let d = FieldDescriptor::padic(2).unwrap();
        let p = |c: &[i64]| Poly::new(c.iter().map(|&x| d.int(x)).collect());
        // 1/(z(z−1)) = 1/(z−1) − 1/z
        let r = RationalMap::new(p(&[1]), p(&[0, -1, 1])).unwrap();
        let pf = partial_fractions(&r, &[d.zero(), d.one()]).unwrap();
        assert!(pf.polynomial.is_zero());
        assert_eq!(pf.parts[0].coeffs, vec![d.int(-1)]);
        assert_eq!(pf.parts[1].coeffs, vec![d.int(1)]);
        assert!(pf.matches(&r));
        // z²/(z−1) = z + 1 + 1/(z−1)
        let r = RationalMap::new(p(&[0, 0, 1]), p(&[-1, 1])).unwrap();
        let pf = partial_fractions(&r, &[d.one()]).unwrap();
        assert_eq!(pf.polynomial, p(&[1, 1]));
        assert_eq!(pf.parts[0].coeffs, vec![d.one()]);
        // (z²+1)/z² = 1 + 1/z²
        let r = RationalMap::new(p(&[1, 0, 1]), p(&[0, 0, 1])).unwrap();
        let pf = partial_fractions(&r, &[d.zero()]).unwrap();
        assert_eq!(pf.polynomial, p(&[1]));
        assert_eq!(pf.parts[0].coeffs, vec![d.zero(), d.one()]);
        assert!(pf.matches(&r));
    }

    #[test]
    fn unsplit_denominator() {
        let d = FieldDescriptor::padic(3).unwrap();
        let r = RationalMap::new(Poly::constant(d.one()), Poly::new(vec![d.one(), d.zero(), d.one()])).unwrap();
        assert_eq!(partial_fractions(&r, &[d.zero()]), Err(Error::NotSplit));
    }
}
