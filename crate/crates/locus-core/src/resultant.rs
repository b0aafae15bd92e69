//! Univariate resultants over a multivariate integer coefficient ring via
//! the subresultant pseudo-remainder cascade.
//!
//! The cascade keeps intermediate coefficients at subresultant size through
//! the known exact divisions. Signs are not tracked: every consumer
//! normalizes the result up to sign and content anyway.

use crate::intpoly::TermList;
use crate::monomial::MonomialOrder;
use num_bigint::BigInt;
use num_traits::One;

/// Dense polynomial in the eliminated variable; coefficients are term lists
/// over the remaining variables. Invariant: the top entry is nonzero unless
/// the whole polynomial is zero.
#[derive(Clone, Debug)]
pub struct UniPoly {
    pub coeffs: Vec<TermList>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<TermList>) -> Self {
        while coeffs.last().is_some_and(TermList::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        debug_assert!(!self.coeffs.is_empty());
        self.coeffs.len() - 1
    }

    pub fn lc(&self) -> &TermList {
        self.coeffs.last().expect("nonzero")
    }

    fn scale(&self, c: &TermList, ord: &MonomialOrder) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|k| k.mul(c, ord)).collect())
    }
}

fn pow_n(base: &TermList, k: u32, nvars: usize, ord: &MonomialOrder) -> TermList {
    let mut acc = TermList::constant(nvars, BigInt::one());
    for _ in 0..k {
        acc = acc.mul(base, ord);
    }
    acc
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
fn prem(a: &UniPoly, b: &UniPoly, nvars: usize, ord: &MonomialOrder) -> UniPoly {
    let db = b.degree();
    let c = b.lc().clone();
    let mut r = a.clone();
    let mut n = a.degree() as i64 - db as i64 + 1;
    while !r.is_zero() && r.degree() >= db {
        let k = r.degree() - db;
        let s = r.lc().clone();
        // r := c*r - s*x^k*b, cancelling the leading coefficient
        let mut coeffs: Vec<TermList> = r.coeffs.iter().map(|t| t.mul(&c, ord)).collect();
        for (i, bc) in b.coeffs.iter().enumerate() {
            let prod = bc.mul(&s, ord);
            coeffs[i + k] = coeffs[i + k].sub(&prod, ord);
        }
        r = UniPoly::new(coeffs);
        n -= 1;
    }
    if n > 0 {
        r = r.scale(&pow_n(&c, n as u32, nvars, ord), ord);
    }
    r
}

/// Resultant of `a` and `b` with respect to the eliminated variable, up to
/// sign. Zero iff the inputs share a factor of positive degree in that
/// variable.
pub fn resultant(a: &UniPoly, b: &UniPoly, nvars: usize, ord: &MonomialOrder) -> TermList {
    assert!(!a.is_zero() && !b.is_zero(), "resultant of zero polynomial");
    let one = TermList::constant(nvars, BigInt::one());

    let (mut f, mut g) = if a.degree() >= b.degree() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    if g.degree() == 0 {
        return pow_n(&g.coeffs[0], f.degree() as u32, nvars, ord);
    }

    let mut lcf = one.clone();
    let mut h = one;
    loop {
        let delta = (f.degree() - g.degree()) as u32;
        let r = prem(&f, &g, nvars, ord);
        if r.is_zero() {
            return TermList::zero();
        }
        let denom = lcf.mul(&pow_n(&h, delta, nvars, ord), ord);
        let next = UniPoly::new(r.coeffs.iter().map(|c| c.exact_div(&denom, ord)).collect());
        f = g;
        g = next;
        lcf = f.lc().clone();
        h = match delta {
            0 => h,
            1 => lcf.clone(),
            _ => pow_n(&lcf, delta, nvars, ord).exact_div(&pow_n(&h, delta - 1, nvars, ord), ord),
        };
        if g.degree() == 0 {
            let s = f.degree() as u32;
            let num = pow_n(&g.coeffs[0], s, nvars, ord);
            return if s >= 1 {
                num.exact_div(&pow_n(&h, s - 1, nvars, ord), ord)
            } else {
                num
            };
        }
    }
}

/// View a polynomial as univariate in variable `var` with coefficients in
/// the remaining variables (exponent of `var` zeroed out, arity kept).
pub fn as_unipoly_in(p: &crate::poly::Polynomial, var: usize, ord: &MonomialOrder) -> UniPoly {
    let tl = TermList::from_poly(p, ord);
    let deg = tl
        .terms
        .iter()
        .map(|(m, _)| m.exp(var) as usize)
        .max()
        .unwrap_or(0);
    let mut buckets: Vec<Vec<(crate::monomial::Monomial, BigInt)>> = vec![Vec::new(); deg + 1];
    for (m, c) in &tl.terms {
        let k = m.exp(var) as usize;
        let mut e = m.exps().to_vec();
        e[var] = 0;
        buckets[k].push((
            crate::monomial::Monomial::new(smallvec::SmallVec::from_vec(e)),
            c.clone(),
        ));
    }
    UniPoly::new(
        buckets
            .into_iter()
            .map(|t| TermList::from_unsorted(t, ord))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::vars::VarList;

    #[test]
    fn eliminates_shared_root_locus() {
        // Res_x(x^2 - y, x - y) = y^2 - y up to sign
        let v = VarList::new(["x", "y"]);
        let ord = MonomialOrder::DegRevLex;
        let a = as_unipoly_in(&parse_polynomial("x^2 - y", v.clone()).unwrap(), 0, &ord);
        let b = as_unipoly_in(&parse_polynomial("x - y", v.clone()).unwrap(), 0, &ord);
        let r = resultant(&a, &b, 2, &ord).normalized(&ord);
        let expect = TermList::from_poly(&parse_polynomial("y^2 - y", v).unwrap(), &ord)
            .normalized(&ord);
        assert_eq!(r, expect);
    }

    #[test]
    fn common_factor_gives_zero() {
        let v = VarList::new(["x", "y"]);
        let ord = MonomialOrder::DegRevLex;
        let a = as_unipoly_in(
            &parse_polynomial("(x - y)*(x + 1)", v.clone()).unwrap(),
            0,
            &ord,
        );
        let b = as_unipoly_in(
            &parse_polynomial("(x - y)*(x + 2)", v.clone()).unwrap(),
            0,
            &ord,
        );
        assert!(resultant(&a, &b, 2, &ord).is_zero());
    }

    #[test]
    fn matches_sylvester_on_integer_case() {
        // Res_x(2x^2+3x+5, x^2+x+1) = 7: product of 2w^2+3w+5 over roots of x^2+x+1
        let v = VarList::new(["x"]);
        let ord = MonomialOrder::DegRevLex;
        let a = as_unipoly_in(&parse_polynomial("2*x^2 + 3*x + 5", v.clone()).unwrap(), 0, &ord);
        let b = as_unipoly_in(&parse_polynomial("x^2 + x + 1", v.clone()).unwrap(), 0, &ord);
        let r = resultant(&a, &b, 1, &ord);
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.terms[0].1.magnitude().to_string(), "7");
    }

    #[test]
    fn degree_swap_is_handled() {
        let v = VarList::new(["x", "y"]);
        let ord = MonomialOrder::DegRevLex;
        let a = as_unipoly_in(&parse_polynomial("x - y", v.clone()).unwrap(), 0, &ord);
        let b = as_unipoly_in(&parse_polynomial("x^3 - y", v.clone()).unwrap(), 0, &ord);
        let r = resultant(&a, &b, 2, &ord).normalized(&ord);
        let expect = TermList::from_poly(&parse_polynomial("y^3 - y", v).unwrap(), &ord)
            .normalized(&ord);
        assert_eq!(r, expect);
    }
}
