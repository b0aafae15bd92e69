//! Local computations at the origin: Mora standard bases with respect to the
//! antigraded ordering, colengths of zero-dimensional ideals in the local
//! ring, and tangent cone ideals.

use crate::error::{Error, Result};
use crate::groebner::IdealBasis;
use crate::intpoly::TermList;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;

const LOCAL_ORDER: MonomialOrder = MonomialOrder::AntiDegRevLex;

/// Standard basis with respect to antigraded degrevlex. Leading monomials
/// generate the leading-term ideal of the ideal in the localization at 0.
#[derive(Clone, Debug)]
pub struct StandardBasis {
    pub generators: Vec<Polynomial>,
    pub ordering: MonomialOrder,
}

/// Vector-space dimension of the local ring modulo an ideal.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn is_finite(&self) -> bool {
        matches!(self, Colength::Finite(_))
    }
}

fn leading(p: &TermList) -> (&Monomial, &num_bigint::BigInt) {
    p.leading()
}

/// Degree of the tail above the leading term; zero for monomials and for
/// homogeneous polynomials.
fn ecart(p: &TermList) -> u32 {
    p.max_total_degree() - leading(p).0.degree()
}

/// Mora's weak normal form: the divisor of minimal ecart is preferred and
/// the intermediate remainder itself joins the reducer set whenever its
/// ecart is exceeded. This is what makes reduction terminate for local
/// orderings.
fn mora_weak_nf(f: TermList, basis: &[TermList]) -> TermList {
    let ord = &LOCAL_ORDER;
    let mut reducers: Vec<TermList> = basis.to_vec();
    let mut h = f.primitive();
    while !h.is_zero() {
        let (hm, hc) = {
            let (m, c) = leading(&h);
            (m.clone(), c.clone())
        };
        let mut pick: Option<usize> = None;
        for (k, g) in reducers.iter().enumerate() {
            if leading(g).0.divides(&hm) {
                let better = match pick {
                    None => true,
                    Some(b) => ecart(g) < ecart(&reducers[b]),
                };
                if better {
                    pick = Some(k);
                }
            }
        }
        let Some(k) = pick else {
            return h;
        };
        if ecart(&reducers[k]) > ecart(&h) {
            reducers.push(h.clone());
        }
        let g = &reducers[k];
        let (gm, gc) = leading(g);
        let d = num_integer::gcd(hc.clone(), gc.clone());
        let scale = gc / &d;
        let mult = &hc / &d;
        h = h.scale(&scale).sub(&g.mul_term(&gm.div(&hm), &mult), ord);
        h = h.primitive();
    }
    h
}

fn spoly_local(f: &TermList, g: &TermList) -> TermList {
    let ord = &LOCAL_ORDER;
    let (fm, fc) = leading(f);
    let (gm, gc) = leading(g);
    let l = fm.lcm(gm);
    let d = num_integer::gcd(fc.clone(), gc.clone());
    let a = f.mul_term(&fm.div(&l), &(gc / &d));
    let b = g.mul_term(&gm.div(&l), &(fc / &d));
    a.sub(&b, ord)
}

/// Standard basis by the Buchberger loop with Mora's normal form.
pub fn mora_standard_basis(generators: &[Polynomial]) -> Result<StandardBasis> {
    let vars = generators
        .first()
        .ok_or_else(|| Error::validation("empty generator list"))?
        .vars()
        .clone();
    let mut basis: Vec<TermList> = Vec::new();
    for g in generators {
        if g.vars() != &vars {
            return Err(Error::validation("generators over different variable lists"));
        }
        if !g.is_zero() {
            basis.push(TermList::from_poly(g, &LOCAL_ORDER).primitive());
        }
    }
    if basis.is_empty() {
        return Err(Error::validation("all generators are zero"));
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some(pos) = pick_pair(&pairs, &basis) {
        let (i, j) = pairs.swap_remove(pos);
        if leading(&basis[i]).0.is_coprime_with(leading(&basis[j]).0) {
            continue;
        }
        let s = spoly_local(&basis[i], &basis[j]);
        if s.is_zero() {
            continue;
        }
        let r = mora_weak_nf(s, &basis);
        if !r.is_zero() {
            basis.push(r.normalized(&LOCAL_ORDER));
            let new = basis.len() - 1;
            for i in 0..new {
                pairs.push((i, new));
            }
        }
    }

    // drop elements whose leading monomial is covered by another
    let mut keep = vec![true; basis.len()];
    for a in 0..basis.len() {
        if !keep[a] {
            continue;
        }
        for b in 0..basis.len() {
            if a != b
                && keep[b]
                && leading(&basis[b]).0.divides(leading(&basis[a]).0)
                && (leading(&basis[b]).0 != leading(&basis[a]).0 || b < a)
            {
                keep[a] = false;
                break;
            }
        }
    }
    let mut out: Vec<TermList> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    out.sort_by(|a, b| LOCAL_ORDER.cmp(leading(b).0, leading(a).0));
    Ok(StandardBasis {
        generators: out
            .iter()
            .map(|t| t.normalized(&LOCAL_ORDER).to_poly(&vars))
            .collect(),
        ordering: LOCAL_ORDER,
    })
}

fn pick_pair(pairs: &[(usize, usize)], basis: &[TermList]) -> Option<usize> {
    // normal strategy: smallest lcm degree, then pair index
    pairs
        .iter()
        .enumerate()
        .min_by_key(|(_, &(i, j))| {
            let l = leading(&basis[i]).0.lcm(leading(&basis[j]).0);
            (l.degree(), i, j)
        })
        .map(|(k, _)| k)
}

pub fn leading_monomials(sb: &StandardBasis) -> Vec<Monomial> {
    sb.generators
        .iter()
        .map(|g| {
            g.terms()
                .max_by(|a, b| LOCAL_ORDER.cmp(a.0, b.0))
                .map(|(m, _)| m.clone())
                .unwrap()
        })
        .collect()
}

/// Staircase count of monomials outside the leading-term ideal; infinite
/// exactly when some variable has no pure power among the leading terms.
pub fn colength(generators: &[Polynomial]) -> Result<Colength> {
    let sb = mora_standard_basis(generators)?;
    Ok(colength_of_basis(&sb))
}

pub fn colength_of_basis(sb: &StandardBasis) -> Colength {
    let lms = leading_monomials(sb);
    let n = match sb.generators.first() {
        Some(g) => g.nvars(),
        None => return Colength::Infinite,
    };
    // a unit leading term means the ideal is the whole local ring
    if lms.iter().any(|m| m.is_one()) {
        return Colength::Finite(0);
    }
    let mut bounds = vec![None::<u32>; n];
    for m in &lms {
        let support: Vec<usize> = (0..n).filter(|&i| m.exp(i) > 0).collect();
        if support.len() == 1 {
            let k = support[0];
            let e = m.exp(k);
            bounds[k] = Some(bounds[k].map_or(e, |b| b.min(e)));
        }
    }
    if bounds.iter().any(Option::is_none) {
        return Colength::Infinite;
    }
    let bounds: Vec<u32> = bounds.into_iter().map(Option::unwrap).collect();
    // enumerate the box and count monomials not divisible by any leading term
    let mut count = 0u64;
    let mut idx = vec![0u32; n];
    loop {
        let mono = Monomial::new(smallvec::SmallVec::from_slice(&idx));
        if !lms.iter().any(|m| m.divides(&mono)) {
            count += 1;
        }
        // advance odometer
        let mut k = 0;
        loop {
            if k == n {
                return Colength::Finite(count);
            }
            idx[k] += 1;
            if idx[k] < bounds[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Ideal of the Whitney tangent cone at 0: generated by the lowest-degree
/// forms of a standard basis with respect to the degree-compatible local
/// ordering. Generators are homogeneous; the flag is not set because they
/// need not be a Groebner basis of the cone ideal.
pub fn tangent_cone_ideal(generators: &[Polynomial]) -> Result<IdealBasis> {
    let sb = mora_standard_basis(generators)?;
    let forms: Vec<Polynomial> = sb
        .generators
        .iter()
        .map(|g| g.lowest_degree_form().map(|f| f.normalized_primitive()))
        .collect::<std::result::Result<_, _>>()?;
    Ok(IdealBasis::new(forms, MonomialOrder::DegRevLex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::vars::VarList;

    fn zv() -> VarList {
        VarList::new(["z1", "z2"])
    }

    fn p(src: &str) -> Polynomial {
        parse_polynomial(src, zv()).unwrap()
    }

    fn lm_strings(sb: &StandardBasis) -> Vec<String> {
        leading_monomials(sb)
            .iter()
            .map(|m| {
                crate::parse::print_polynomial(&Polynomial::from_terms(
                    zv(),
                    [(m.clone(), crate::poly::rat(1))],
                ))
            })
            .collect()
    }

    #[test]
    fn coordinate_ideal_is_its_own_basis() {
        let sb = mora_standard_basis(&[p("z1"), p("z2")]).unwrap();
        assert_eq!(sb.generators, vec![p("z1"), p("z2")]);
    }

    #[test]
    fn cusp_is_principal() {
        let sb = mora_standard_basis(&[p("z2^2 - z1^3")]).unwrap();
        assert_eq!(sb.generators.len(), 1);
        assert_eq!(lm_strings(&sb), vec!["z2^2"]);
    }

    #[test]
    fn local_unit_is_invertible() {
        // z1 - z1^2 = z1(1 - z1): the unit 1 - z1 is invisible locally,
        // so leading monomials are {z1, z2}.
        let sb = mora_standard_basis(&[p("z1 - z1^2"), p("z2")]).unwrap();
        let mut lms = lm_strings(&sb);
        lms.sort();
        assert_eq!(lms, vec!["z1", "z2"]);
    }

    #[test]
    fn colength_examples() {
        assert_eq!(colength(&[p("z1"), p("z2")]).unwrap(), Colength::Finite(1));
        // staircase of (z1^2, z2^3) is the 2 x 3 box
        assert_eq!(
            colength(&[p("z1^2"), p("z2^3")]).unwrap(),
            Colength::Finite(6)
        );
        assert_eq!(colength(&[p("z1^2")]).unwrap(), Colength::Infinite);
    }

    #[test]
    fn colength_monomial_boxes_match_product() {
        for a in 1..=4u32 {
            for b in 1..=4u32 {
                let ia = p(&format!("z1^{}", a));
                let ib = p(&format!("z2^{}", b));
                assert_eq!(
                    colength(&[ia, ib]).unwrap(),
                    Colength::Finite((a as u64) * (b as u64))
                );
            }
        }
    }

    #[test]
    fn tangent_cones() {
        let tc = tangent_cone_ideal(&[p("z2^2 - z1^3")]).unwrap();
        assert_eq!(tc.generators, vec![p("z2^2")]);
        let tc2 = tangent_cone_ideal(&[p("z2 - z1^2")]).unwrap();
        assert_eq!(tc2.generators, vec![p("z2")]);
        let tc3 = tangent_cone_ideal(&[p("z1")]).unwrap();
        assert_eq!(tc3.generators, vec![p("z1")]);
        for b in [&tc, &tc2, &tc3] {
            assert!(b.generators.iter().all(|g| g.is_homogeneous()));
        }
    }
}
