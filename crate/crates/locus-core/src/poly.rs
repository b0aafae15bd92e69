//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a canonically ordered map with no zero coefficients, so
//! structural equality is semantic equality. Values are immutable after
//! construction; every operation returns a fresh polynomial.

use crate::monomial::Monomial;
use crate::vars::VarList;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable lists differ: ({0}) vs ({1})")]
    VarMismatch(String, String),
    #[error("missing variable `{0}` in substitution")]
    MissingSubstitution(String),
    #[error("operation undefined for the zero polynomial")]
    ZeroInput,
}

/// deg 0 = -infinity, every other degree is a natural number.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// ord 0 = +infinity, every other order is a natural number.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Order {
    Finite(u32),
    Infinity,
}

impl Order {
    pub fn finite(self) -> Option<u32> {
        match self {
            Order::Infinity => None,
            Order::Finite(d) => Some(d),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarList,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(vars: VarList) -> Self {
        Polynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: VarList, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(p.vars.len()), c);
        }
        p
    }

    pub fn one(vars: VarList) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn var(vars: VarList, i: usize) -> Self {
        let m = Monomial::var(vars.len(), i);
        Self::from_terms(vars, [(m, Rat::one())])
    }

    /// Build from (monomial, coefficient) pairs; repeated monomials are
    /// accumulated and zeros dropped.
    pub fn from_terms(vars: VarList, terms: impl IntoIterator<Item = (Monomial, Rat)>) -> Self {
        let mut map: BTreeMap<Monomial, Rat> = BTreeMap::new();
        let n = vars.len();
        for (m, c) in terms {
            assert_eq!(m.nvars(), n, "monomial arity mismatch");
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().clone() + c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        Polynomial { vars, terms: map }
    }

    pub fn vars(&self) -> &VarList {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    fn check_vars(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarMismatch(
                self.vars.to_string(),
                other.vars.to_string(),
            ))
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().clone() + c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        Ok(Polynomial {
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_vars(other)?;
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get().clone() + c;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        Ok(Polynomial {
            vars: self.vars.clone(),
            terms: acc,
        })
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.vars.clone());
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.vars.clone());
        for _ in 0..k {
            acc = acc.mul(self).expect("same vars");
        }
        acc
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.degree())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Least total degree among terms; the paper's `ord`.
    pub fn order_of_vanishing(&self) -> Order {
        self.terms
            .keys()
            .map(|m| m.degree())
            .min()
            .map_or(Order::Infinity, Order::Finite)
    }

    /// Sum of the terms of minimal total degree. Homogeneous by construction.
    pub fn lowest_degree_form(&self) -> Result<Polynomial, PolyError> {
        let d = match self.order_of_vanishing() {
            Order::Infinity => return Err(PolyError::ZeroInput),
            Order::Finite(d) => d,
        };
        Ok(Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Replace every variable by its image; all images must live in one ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        for im in images {
            if im.vars != target {
                return Err(PolyError::VarMismatch(
                    target.to_string(),
                    im.vars.to_string(),
                ));
            }
        }
        // Cache powers of each image that actually occur.
        let mut powers: Vec<BTreeMap<u32, Polynomial>> = vec![BTreeMap::new(); images.len()];
        let mut out = Polynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target.clone(), c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = powers[i]
                    .entry(e)
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                term = term.mul(&pw)?;
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars());
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn partial_derivative(&self, i: usize) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] = e - 1;
            let nm = Monomial::new(smallvec::SmallVec::from_vec(exps));
            let nc = c * Rat::from_integer(BigInt::from(e));
            terms.insert(nm, nc);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// A linear form a_1 x_1 + ... + a_m x_m.
    pub fn linear_form(vars: VarList, coeffs: &[Rat]) -> Polynomial {
        assert_eq!(coeffs.len(), vars.len());
        let n = vars.len();
        Polynomial::from_terms(
            vars,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    /// Reinterpret over a larger variable list that contains the current one
    /// as a prefix.
    pub fn lift_to(&self, bigger: &VarList) -> Polynomial {
        let n = self.nvars();
        assert!(bigger.len() >= n && bigger.names()[..n] == *self.vars.names());
        let extra = bigger.len() - n;
        Polynomial::from_terms(
            bigger.clone(),
            self.terms.iter().map(|(m, c)| {
                let mut e = m.exps().to_vec();
                e.extend(std::iter::repeat(0).take(extra));
                (Monomial::new(smallvec::SmallVec::from_vec(e)), c.clone())
            }),
        )
    }

    /// Primitive integer form: clears denominators and strips integer
    /// content. Returns zero for zero.
    pub fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let mut content = BigInt::zero();
        for c in self.terms.values() {
            let int = c.numer() * (&den / c.denom());
            content = num_integer::gcd(content, int);
        }
        let scale = Rat::new(den, content);
        self.scale(&scale)
    }

    /// Primitive form with positive coefficient on the degrevlex-leading
    /// monomial: the canonical representative up to rational scaling.
    pub fn normalized_primitive(&self) -> Polynomial {
        let p = self.primitive_part();
        match p.terms.iter().next_back() {
            Some((_, c)) if c.is_negative() => p.neg(),
            _ => p,
        }
    }

    /// Leading (monomial, coefficient) with respect to canonical degrevlex.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::parse::print_polynomial(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> VarList {
        VarList::new(["x", "y"])
    }

    fn p(src: &str, vars: &VarList) -> Polynomial {
        crate::parse::parse_polynomial(src, vars.clone()).unwrap()
    }

    #[test]
    fn add_cancels() {
        let v = xy();
        // (x + 1) + (-x) = 1
        let a = p("x + 1", &v);
        let b = p("-x", &v);
        assert_eq!(a.add(&b).unwrap(), p("1", &v));
        // 0 + p = p
        let z = Polynomial::zero(v.clone());
        assert_eq!(z.add(&a).unwrap(), a);
        // (x^2+y) + (x^2-y) = 2x^2, by hand expansion
        let c = p("x^2 + y", &v).add(&p("x^2 - y", &v)).unwrap();
        assert_eq!(c, p("2*x^2", &v));
    }

    #[test]
    fn mul_basics() {
        let v = xy();
        let prod = p("x + y", &v).mul(&p("x - y", &v)).unwrap();
        assert_eq!(prod, p("x^2 - y^2", &v));
        let z = Polynomial::zero(v.clone());
        assert!(p("x + y", &v).mul(&z).unwrap().is_zero());
        // (x+1)^3 by repeated multiplication, against binomial coefficients
        let cube = p("x + 1", &v).pow(3);
        assert_eq!(cube, p("x^3 + 3*x^2 + 3*x + 1", &v));
    }

    #[test]
    fn var_mismatch_is_an_error() {
        let a = Polynomial::var(xy(), 0);
        let b = Polynomial::var(VarList::new(["u", "v"]), 0);
        assert!(matches!(a.add(&b), Err(PolyError::VarMismatch(_, _))));
        assert!(matches!(a.mul(&b), Err(PolyError::VarMismatch(_, _))));
    }

    #[test]
    fn substitute_plugs_in() {
        let yv = VarList::new(["y1", "y2"]);
        let zv = VarList::new(["z"]);
        let f = p("y1 + y2", &yv);
        let images = vec![p("z^2", &zv), p("z^3", &zv)];
        assert_eq!(f.substitute(&images).unwrap(), p("z^2 + z^3", &zv));
        // identity substitution
        let v = xy();
        let g = p("x^2*y - 3*x", &v);
        let id = vec![Polynomial::var(v.clone(), 0), Polynomial::var(v.clone(), 1)];
        assert_eq!(g.substitute(&id).unwrap(), g);
    }

    #[test]
    fn substitute_quadric_cone_parametrization() {
        // y^2 - 4xz at (x,y,z) = (t^2, 2ts, s^2) vanishes identically.
        let v = VarList::new(["x", "y", "z"]);
        let ts = VarList::new(["t", "s"]);
        let cone = p("y^2 - 4*x*z", &v);
        let images = vec![p("t^2", &ts), p("2*t*s", &ts), p("s^2", &ts)];
        assert!(cone.substitute(&images).unwrap().is_zero());
    }

    #[test]
    fn degree_and_order() {
        let v = xy();
        assert_eq!(Polynomial::zero(v.clone()).degree(), Degree::NegInfinity);
        assert_eq!(
            Polynomial::zero(v.clone()).order_of_vanishing(),
            Order::Infinity
        );
        let q = p("x^2*y + x^5", &v);
        assert_eq!(q.degree(), Degree::Finite(5));
        assert_eq!(q.order_of_vanishing(), Order::Finite(3));
        assert_eq!(p("7", &v).order_of_vanishing(), Order::Finite(0));
    }

    #[test]
    fn lowest_form() {
        let v = xy();
        assert_eq!(
            p("y^2 - x^3", &v).lowest_degree_form().unwrap(),
            p("y^2", &v)
        );
        assert_eq!(p("x + x^2", &v).lowest_degree_form().unwrap(), p("x", &v));
        let h = p("x^2 + x*y + y^2", &v);
        assert_eq!(h.lowest_degree_form().unwrap(), h);
        assert!(Polynomial::zero(v).lowest_degree_form().is_err());
    }

    #[test]
    fn primitive_normalization() {
        let v = xy();
        let q = p("2/3*x^2 - 4/3*y", &v);
        assert_eq!(q.normalized_primitive(), p("x^2 - 2*y", &v));
        let r = p("-x^2 + y", &v);
        assert_eq!(r.normalized_primitive(), p("x^2 - y", &v));
    }

    #[test]
    fn derivative() {
        let v = xy();
        assert_eq!(
            p("x^2*y + y^3", &v).partial_derivative(0),
            p("2*x*y", &v)
        );
        assert_eq!(
            p("x^2*y + y^3", &v).partial_derivative(1),
            p("x^2 + 3*y^2", &v)
        );
    }
}
