//! Flat, order-aware term lists over arbitrary-precision integers.
//!
//! The basis engines and the resultant cascade work fraction-freely on
//! primitive integer representatives; conversion to and from the public
//! rational [`Polynomial`] happens at module boundaries.

use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Rat};
use crate::vars::VarList;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;

/// Term list sorted strictly descending with respect to a monomial order
/// fixed by the caller; no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TermList {
    pub terms: Vec<(Monomial, BigInt)>,
}

impl TermList {
    pub fn zero() -> Self {
        TermList { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TermList {
            terms: vec![(Monomial::one(nvars), c)],
        }
    }

    pub fn leading(&self) -> (&Monomial, &BigInt) {
        let (m, c) = &self.terms[0];
        (m, c)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn max_total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn from_unsorted(mut terms: Vec<(Monomial, BigInt)>, ord: &MonomialOrder) -> Self {
        terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 += c;
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            if !c.is_zero() {
                out.push((m, c));
            }
        }
        TermList { terms: out }
    }

    /// Clear denominators and keep an integer representative (not stripped).
    pub fn from_poly(p: &Polynomial, ord: &MonomialOrder) -> Self {
        let mut den = BigInt::one();
        for (_, c) in p.terms() {
            den = den.lcm(c.denom());
        }
        let terms = p
            .terms()
            .map(|(m, c)| (m.clone(), c.numer() * (&den / c.denom())))
            .collect();
        Self::from_unsorted(terms, ord)
    }

    pub fn to_poly(&self, vars: &VarList) -> Polynomial {
        Polynomial::from_terms(
            vars.clone(),
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Rat::from_integer(c.clone()))),
        )
    }

    pub fn neg(&self) -> Self {
        TermList {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self, ord: &MonomialOrder) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match ord.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        TermList { terms: out }
    }

    pub fn sub(&self, other: &Self, ord: &MonomialOrder) -> Self {
        self.add(&other.neg(), ord)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TermList {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TermList {
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self, ord: &MonomialOrder) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = other.leading();
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = self.leading();
            return other.mul_term(m, c);
        }
        let mut terms: Vec<(Monomial, BigInt)> =
            Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Self::from_unsorted(terms, ord)
    }

    pub fn pow(&self, k: u32, ord: &MonomialOrder) -> Self {
        let n = self
            .terms
            .first()
            .map(|(m, _)| m.nvars())
            .unwrap_or(0);
        let mut acc = TermList::constant(n.max(1), BigInt::one());
        if self.is_zero() && k > 0 {
            return Self::zero();
        }
        if let Some((m, _)) = self.terms.first() {
            acc = TermList::constant(m.nvars(), BigInt::one());
        }
        for _ in 0..k {
            acc = acc.mul(self, ord);
        }
        acc
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the integer content; sign untouched.
    pub fn primitive(&self) -> Self {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        TermList {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &g)).collect(),
        }
    }

    /// Primitive with positive leading coefficient under `ord`.
    pub fn normalized(&self, _ord: &MonomialOrder) -> Self {
        let p = self.primitive();
        if p.is_zero() {
            return p;
        }
        if p.terms[0].1.is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Exact division by `d`; panics if the quotient does not exist (callers
    /// invoke it only where the algebra guarantees exactness).
    pub fn exact_div(&self, d: &Self, ord: &MonomialOrder) -> Self {
        assert!(!d.is_zero(), "division by zero term list");
        if self.is_zero() {
            return Self::zero();
        }
        if d.terms.len() == 1 && d.terms[0].0.is_one() {
            let c = &d.terms[0].1;
            return TermList {
                terms: self
                    .terms
                    .iter()
                    .map(|(m, k)| {
                        let (q, r) = k.div_rem(c);
                        assert!(r.is_zero(), "inexact scalar division");
                        (m.clone(), q)
                    })
                    .collect(),
            };
        }
        let (dm, dc) = (d.terms[0].0.clone(), d.terms[0].1.clone());
        let mut rem = self.clone();
        let mut q: Vec<(Monomial, BigInt)> = Vec::new();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading();
            assert!(dm.divides(rm), "inexact polynomial division (monomial)");
            let (qc, rr) = rc.div_rem(&dc);
            assert!(rr.is_zero(), "inexact polynomial division (coefficient)");
            let qm = dm.div(rm);
            rem = rem.sub(&d.mul_term(&qm, &qc), ord);
            q.push((qm, qc));
        }
        TermList { terms: q }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn tl(src: &str, ord: &MonomialOrder) -> TermList {
        let v = VarList::new(["x", "y"]);
        TermList::from_poly(&parse_polynomial(src, v).unwrap(), ord)
    }

    #[test]
    fn mul_then_exact_div_round_trips() {
        let ord = MonomialOrder::DegRevLex;
        let a = tl("3*x^2 - y + 1", &ord);
        let b = tl("x*y - 2", &ord);
        let prod = a.mul(&b, &ord);
        assert_eq!(prod.exact_div(&b, &ord), a);
        assert_eq!(prod.exact_div(&a, &ord), b);
    }

    #[test]
    fn primitive_strips_content() {
        let ord = MonomialOrder::DegRevLex;
        let a = tl("6*x - 9*y", &ord);
        assert_eq!(a.primitive(), tl("2*x - 3*y", &ord));
        let b = tl("-2*x + 4", &ord);
        assert_eq!(b.normalized(&ord), tl("x - 2", &ord));
    }
}
