//! Effective Bertini families: hyperplanes cut out by kernel points of row
//! tuples, codimension-s subspace families, and the symbolic
//! transversality/smoothness verifier behind the witness search.

use crate::error::{Error, Result};
use crate::groebner::vanishes_only_at_origin;
use crate::linsys::{kernel_line, tuples, FormSystem, TupleIndex};
use crate::poly::{Polynomial, Rat};
use crate::vars::VarList;
use num_traits::Zero;

/// A linear section (one or more independent forms) together with where it
/// came from: the row tuple and the kernel vector(s) that induced it.
#[derive(Clone, Debug)]
pub struct LinearSection {
    pub forms: Vec<Vec<Rat>>,
    pub tuple: TupleIndex,
    pub kernel: Vec<Rat>,
    /// Set when the leading blocks of a multi-section are linearly
    /// dependent; such sections are kept but skipped by witness searches.
    pub degenerate: bool,
}

/// A cone whose smoothness away from the origin has been verified, together
/// with its claimed dimension and the expected Jacobian rank at smooth
/// points.
#[derive(Clone, Debug)]
pub struct SmoothConeSpec {
    pub generators: Vec<Polynomial>,
    pub claimed_dim: usize,
    pub claimed_rank: usize,
}

impl SmoothConeSpec {
    /// Validate homogeneity and the smoothness hypothesis: the generators
    /// together with all rank-sized Jacobian minors must cut out at most
    /// the origin. The theorem's hypothesis is machine-checked, not trusted.
    pub fn validate(&self) -> Result<()> {
        if self.generators.is_empty() {
            return Err(Error::validation("cone needs generators"));
        }
        for g in &self.generators {
            if !g.is_homogeneous() {
                return Err(Error::HypothesisFailed(format!(
                    "cone generator is not homogeneous: {}",
                    crate::parse::print_polynomial(g)
                )));
            }
        }
        let m = self.generators[0].nvars();
        if self.claimed_rank == 0 || self.claimed_rank > m {
            return Err(Error::HypothesisFailed(format!(
                "claimed Jacobian rank {} out of range for ambient {}",
                self.claimed_rank, m
            )));
        }
        let jac = jacobian(&self.generators);
        let mut gens = self.generators.clone();
        gens.extend(matrix_minors(&jac, self.claimed_rank)?);
        if vanishes_only_at_origin(&gens)? {
            Ok(())
        } else {
            Err(Error::HypothesisFailed(
                "cone is singular away from the origin".into(),
            ))
        }
    }

    pub fn vars(&self) -> &VarList {
        self.generators[0].vars()
    }
}

pub fn jacobian(gens: &[Polynomial]) -> Vec<Vec<Polynomial>> {
    gens.iter()
        .map(|g| (0..g.nvars()).map(|i| g.partial_derivative(i)).collect())
        .collect()
}

fn poly_det(m: &[Vec<Polynomial>]) -> Result<Polynomial> {
    let n = m.len();
    let vars = m[0][0].vars().clone();
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let mut acc = Polynomial::zero(vars);
    for col in 0..n {
        let sub: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter_map(|(c, p)| (c != col).then(|| p.clone()))
                    .collect()
            })
            .collect();
        let cofactor = m[0][col].mul(&poly_det(&sub)?)?;
        acc = if col % 2 == 0 {
            acc.add(&cofactor)?
        } else {
            acc.sub(&cofactor)?
        };
    }
    Ok(acc)
}

/// All k x k minors of a polynomial matrix.
pub fn matrix_minors(mat: &[Vec<Polynomial>], k: usize) -> Result<Vec<Polynomial>> {
    let rows = mat.len();
    let cols = mat.first().map(|r| r.len()).unwrap_or(0);
    let mut out = Vec::new();
    if k == 0 || k > rows || k > cols {
        return Ok(out);
    }
    for rt in tuples(rows, k) {
        for ct in tuples(cols, k) {
            let sub: Vec<Vec<Polynomial>> = rt
                .zero_based()
                .iter()
                .map(|&r| ct.zero_based().iter().map(|&c| mat[r][c].clone()).collect())
                .collect();
            out.push(poly_det(&sub)?);
        }
    }
    Ok(out)
}

/// Count for the hyperplane family:
/// l = 2 d^{m-q} [(m-q)(d-1) + 1]^{q-1} + m - 1.
pub fn count_bertini(d: u64, m: u64, q: u64) -> Result<u64> {
    if d < 1 || q < 1 || m < q {
        return Err(Error::Parameter(format!(
            "need d >= 1 and m >= q >= 1 (d={}, m={}, q={})",
            d, m, q
        )));
    }
    let overflow = || Error::Parameter("count overflow".into());
    let base = (m - q)
        .checked_mul(d - 1)
        .and_then(|x| x.checked_add(1))
        .ok_or_else(overflow)?;
    let pow = base.checked_pow((q - 1) as u32).ok_or_else(overflow)?;
    let dmq = d.checked_pow((m - q) as u32).ok_or_else(overflow)?;
    2u64.checked_mul(dmq)
        .and_then(|x| x.checked_mul(pow))
        .and_then(|x| x.checked_add(m - 1))
        .ok_or_else(overflow)
}

/// Count for the multi-section family:
/// l = d^{m-q} [(m-q)(d-1) + q - 1] + m(q-1) - 1.
pub fn count_bertini_multi(d: u64, m: u64, q: u64) -> Result<u64> {
    if d < 1 || q < 2 || m < q {
        return Err(Error::Parameter(format!(
            "multi-section count needs d >= 1 and m >= q >= 2 (d={}, m={}, q={})",
            d, m, q
        )));
    }
    let overflow = || Error::Parameter("count overflow".into());
    let inner = (m - q)
        .checked_mul(d - 1)
        .and_then(|x| x.checked_add(q - 1))
        .ok_or_else(overflow)?;
    let dmq = d.checked_pow((m - q) as u32).ok_or_else(overflow)?;
    dmq.checked_mul(inner)
        .and_then(|x| x.checked_add(m.checked_mul(q - 1)?))
        .and_then(|x| x.checked_sub(1))
        .ok_or_else(overflow)
}

/// One hyperplane per (m-1)-tuple of rows: the section a.x = 0 where a spans
/// the common kernel of the chosen rows.
pub fn hyperplane_family(system: &FormSystem) -> Result<Vec<LinearSection>> {
    let m = system.ambient;
    if system.len() + 1 < m {
        return Err(Error::Parameter("system shorter than m - 1".into()));
    }
    let mut out = Vec::new();
    for t in tuples(system.len(), m - 1) {
        let rows = system.select(&t);
        let a = kernel_line(&rows).ok_or_else(|| {
            Error::validation(format!(
                "degenerate tuple {} in an allegedly independent system",
                t
            ))
        })?;
        out.push(LinearSection {
            forms: vec![a.clone()],
            tuple: t,
            kernel: a,
            degenerate: false,
        });
    }
    Ok(out)
}

/// Codimension-s sections on C^m from a system on C^{m(q-1)}: the kernel
/// line of each (m(q-1)-1)-tuple splits into q-1 blocks of length m; the
/// first s blocks are the section forms. Dependent leading blocks are
/// flagged, not dropped.
pub fn subspace_family(
    system: &FormSystem,
    m: usize,
    q: usize,
    s: usize,
) -> Result<Vec<LinearSection>> {
    if q < 2 || s < 1 || s > q - 1 {
        return Err(Error::Parameter(format!(
            "need q - 1 >= s >= 1 (q={}, s={})",
            q, s
        )));
    }
    let ambient = m * (q - 1);
    if system.ambient != ambient {
        return Err(Error::validation(format!(
            "system ambient {} does not match m(q-1) = {}",
            system.ambient, ambient
        )));
    }
    let mut out = Vec::new();
    for t in tuples(system.len(), ambient - 1) {
        let rows = system.select(&t);
        let a = kernel_line(&rows).ok_or_else(|| {
            Error::validation(format!("degenerate tuple {} in subspace family", t))
        })?;
        let blocks: Vec<Vec<Rat>> = (0..q - 1)
            .map(|b| a[b * m..(b + 1) * m].to_vec())
            .collect();
        let forms: Vec<Vec<Rat>> = blocks[..s].to_vec();
        let degenerate = rank(&forms) < s;
        out.push(LinearSection {
            forms,
            tuple: t,
            kernel: a,
            degenerate,
        });
    }
    Ok(out)
}

fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let cols = a[0].len();
    let mut r = 0usize;
    for c in 0..cols {
        if r >= a.len() {
            break;
        }
        if let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) {
            a.swap(p, r);
            let pv = a[r][c].clone();
            for j in c..cols {
                a[r][j] /= &pv;
            }
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..cols {
                        let sub = &a[r][j] * &f;
                        a[i][j] -= sub;
                    }
                }
            }
            r += 1;
        }
    }
    r
}

/// True iff the section meets the cone transversally at every nonzero
/// intersection point and the sliced set is smooth there: the ideal of the
/// bad locus (cone + section + all (rank+s)-minors of the stacked Jacobian)
/// cuts out at most the origin.
pub fn check_transversal_smooth(cone: &SmoothConeSpec, section: &LinearSection) -> Result<bool> {
    cone.validate()?;
    let vars = cone.vars().clone();
    let s = section.forms.len();
    if s == 0 || section.forms.iter().any(|f| f.len() != vars.len()) {
        return Err(Error::validation("section forms do not match the ambient space"));
    }
    let mut stacked = jacobian(&cone.generators);
    for f in &section.forms {
        stacked.push(
            f.iter()
                .map(|c| Polynomial::constant(vars.clone(), c.clone()))
                .collect(),
        );
    }
    let mut gens = cone.generators.clone();
    for f in &section.forms {
        gens.push(Polynomial::linear_form(vars.clone(), f));
    }
    gens.extend(matrix_minors(&stacked, cone.claimed_rank + s)?);
    vanishes_only_at_origin(&gens)
}

/// Scan the whole family in order; each entry is (section, passed).
/// Degenerate sections are recorded as failed without being checked.
pub fn bertini_scan(
    cone: &SmoothConeSpec,
    family: &[LinearSection],
) -> Result<Vec<(TupleIndex, bool)>> {
    cone.validate()?;
    let mut out = Vec::with_capacity(family.len());
    for sec in family {
        let ok = if sec.degenerate {
            false
        } else {
            check_transversal_smooth(cone, sec)?
        };
        out.push((sec.tuple.clone(), ok));
    }
    Ok(out)
}

/// Lexicographically first section passing the transversality check.
pub fn find_bertini_witness<'f>(
    cone: &SmoothConeSpec,
    family: &'f [LinearSection],
) -> Result<Option<&'f LinearSection>> {
    cone.validate()?;
    for sec in family {
        if sec.degenerate {
            continue;
        }
        if check_transversal_smooth(cone, sec)? {
            return Ok(Some(sec));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linsys::vandermonde_system;
    use crate::parse::parse_polynomial;
    use crate::poly::rat;

    fn xyz() -> VarList {
        VarList::new(["x", "y", "z"])
    }

    fn quadric_cone() -> SmoothConeSpec {
        SmoothConeSpec {
            generators: vec![parse_polynomial("y^2 - 4*x*z", xyz()).unwrap()],
            claimed_dim: 2,
            claimed_rank: 1,
        }
    }

    #[test]
    fn counts() {
        assert_eq!(count_bertini(2, 3, 2).unwrap(), 10);
        for m in 2..6 {
            assert_eq!(count_bertini(1, m, 1).unwrap(), m + 1);
        }
        assert_eq!(count_bertini_multi(2, 3, 2).unwrap(), 6);
    }

    #[test]
    fn hyperplane_family_kernels() {
        // m=2, rows (1,1),(1,2): tuple (1) gives the hyperplane x1 - x2 = 0
        let sys = vandermonde_system(2, 3, &[rat(1), rat(2), rat(3)]).unwrap();
        let fam = hyperplane_family(&sys).unwrap();
        assert_eq!(fam.len(), 3);
        assert_eq!(fam[0].forms[0], vec![rat(1), rat(-1)]);
        // family size (s choose m-1) on a bigger system
        let sys10 = vandermonde_system(3, 10, &crate::linsys::default_nodes(10)).unwrap();
        assert_eq!(hyperplane_family(&sys10).unwrap().len(), 45);
        // every kernel vector annihilates its chosen rows exactly
        for sec in hyperplane_family(&sys10).unwrap() {
            for &i in &sec.tuple.zero_based() {
                let dot: Rat = sys10.rows[i]
                    .iter()
                    .zip(&sec.kernel)
                    .map(|(a, b)| a * b)
                    .sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn quadric_precheck_passes_singular_fails() {
        assert!(quadric_cone().validate().is_ok());
        let singular = SmoothConeSpec {
            generators: vec![parse_polynomial("x*y", xyz()).unwrap()],
            claimed_dim: 2,
            claimed_rank: 1,
        };
        assert!(matches!(
            singular.validate(),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn tangent_section_fails_generic_section_passes() {
        let cone = quadric_cone();
        // tangent hyperplane at (1,2,1): x - y + z = 0 is not transversal
        let tangent = LinearSection {
            forms: vec![vec![rat(1), rat(-1), rat(1)]],
            tuple: TupleIndex(vec![1]),
            kernel: vec![rat(1), rat(-1), rat(1)],
            degenerate: false,
        };
        assert!(!check_transversal_smooth(&cone, &tangent).unwrap());
        // y = 0 slices the cone into the two coordinate lines xz = 0,
        // each meeting it transversally
        let flat = LinearSection {
            forms: vec![vec![rat(0), rat(1), rat(0)]],
            tuple: TupleIndex(vec![1]),
            kernel: vec![rat(0), rat(1), rat(0)],
            degenerate: false,
        };
        assert!(check_transversal_smooth(&cone, &flat).unwrap());
        // rescaling a section does not change the verdict
        let scaled = LinearSection {
            forms: vec![vec![rat(0), crate::poly::ratio(-7, 3), rat(0)]],
            tuple: TupleIndex(vec![1]),
            kernel: vec![rat(0), crate::poly::ratio(-7, 3), rat(0)],
            degenerate: false,
        };
        assert!(check_transversal_smooth(&cone, &scaled).unwrap());
    }

    #[test]
    fn linear_cone_transversal_to_coordinate_section() {
        // cone {x1 = 0} in C^2, section x2 = 0
        let v = VarList::new(["x1", "x2"]);
        let cone = SmoothConeSpec {
            generators: vec![parse_polynomial("x1", v.clone()).unwrap()],
            claimed_dim: 1,
            claimed_rank: 1,
        };
        let sec = LinearSection {
            forms: vec![vec![rat(0), rat(1)]],
            tuple: TupleIndex(vec![1]),
            kernel: vec![rat(0), rat(1)],
            degenerate: false,
        };
        assert!(check_transversal_smooth(&cone, &sec).unwrap());
    }

    #[test]
    fn witness_search_on_empty_family() {
        let cone = quadric_cone();
        assert!(find_bertini_witness(&cone, &[]).unwrap().is_none());
    }

    #[test]
    fn subspace_family_reduces_to_hyperplanes_at_q2() {
        // q = 2: blocks of one, so sections are the hyperplane kernels
        let sys = vandermonde_system(2, 3, &[rat(1), rat(2), rat(3)]).unwrap();
        let hf = hyperplane_family(&sys).unwrap();
        let sf = subspace_family(&sys, 2, 2, 1).unwrap();
        assert_eq!(hf.len(), sf.len());
        for (h, s) in hf.iter().zip(&sf) {
            assert_eq!(h.forms, s.forms);
            assert!(!s.degenerate);
        }
    }

    #[test]
    fn subspace_family_blocks() {
        // m=2, q=3, s=1: ambient 4, kernel of each 3-tuple splits in 2 blocks
        let sys = vandermonde_system(4, 5, &crate::linsys::default_nodes(5)).unwrap();
        let fam = subspace_family(&sys, 2, 3, 1).unwrap();
        assert_eq!(fam.len(), 10); // C(5, 3)
        for sec in &fam {
            assert_eq!(sec.forms.len(), 1);
            assert_eq!(sec.forms[0].len(), 2);
            assert_eq!(sec.kernel.len(), 4);
            // the kernel annihilates the chosen rows
            for &i in &sec.tuple.zero_based() {
                let dot: Rat = sys.rows[i]
                    .iter()
                    .zip(&sec.kernel)
                    .map(|(a, b)| a * b)
                    .sum();
                assert!(dot.is_zero());
            }
        }
    }
}
