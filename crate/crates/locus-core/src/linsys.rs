//! Independent linear-form systems (Vandermonde rows), the explicit counts
//! used by the search procedures, tuple enumeration, the vanishing-tuple
//! search, and the kernel-point construction.

use crate::error::{Error, Result};
use crate::groebner::{self};
use crate::poly::{Polynomial, Rat};
use crate::vars::VarList;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Strictly increasing 1-based index tuple.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TupleIndex(pub Vec<usize>);

impl TupleIndex {
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.iter().any(|&i| i == 0) {
            return Err(Error::validation("tuple must be strictly increasing and 1-based"));
        }
        Ok(TupleIndex(indices))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 0-based positions.
    pub fn zero_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i - 1).collect()
    }
}

impl fmt::Display for TupleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// All k-subsets of {1..n} as 1-based tuples in lexicographic order.
pub fn tuples(n: usize, k: usize) -> Vec<TupleIndex> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(TupleIndex(Vec::new()));
        return out;
    }
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(TupleIndex(cur.clone()));
        // advance to the next combination in lex order
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - (k - 1 - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A system of s linear forms on C^m, rows over the rationals. When built
/// from Vandermonde nodes the node list is kept for provenance and for the
/// kernel-point construction.
#[derive(Clone, Debug)]
pub struct FormSystem {
    pub ambient: usize,
    pub rows: Vec<Vec<Rat>>,
    pub nodes: Option<Vec<Rat>>,
}

impl FormSystem {
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let ambient = rows
            .first()
            .map(|r| r.len())
            .ok_or_else(|| Error::validation("form system needs at least one row"))?;
        if rows.iter().any(|r| r.len() != ambient) {
            return Err(Error::validation("rows of unequal length"));
        }
        Ok(FormSystem {
            ambient,
            rows,
            nodes: None,
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.rows[i]
    }

    /// Row as a linear polynomial over the given variables.
    pub fn form(&self, i: usize, vars: &VarList) -> Polynomial {
        Polynomial::linear_form(vars.clone(), &self.rows[i])
    }

    pub fn select(&self, tuple: &TupleIndex) -> Vec<Vec<Rat>> {
        tuple.zero_based().iter().map(|&i| self.rows[i].clone()).collect()
    }
}

/// Vandermonde system: row j = (1, a_j, a_j^2, ..., a_j^{m-1}).
pub fn vandermonde_system(m: usize, s: usize, nodes: &[Rat]) -> Result<FormSystem> {
    if s < m {
        return Err(Error::Parameter(format!(
            "need at least as many rows as the ambient dimension (s={} < m={})",
            s, m
        )));
    }
    vandermonde_rows(m, s, nodes)
}

/// Vandermonde rows without the s >= m requirement: any s distinct-node
/// rows are linearly independent, and the dimension-test families are
/// allowed to be shorter than the ambient dimension.
pub fn vandermonde_rows(m: usize, s: usize, nodes: &[Rat]) -> Result<FormSystem> {
    if nodes.len() != s {
        return Err(Error::Parameter(format!(
            "expected {} nodes, got {}",
            s,
            nodes.len()
        )));
    }
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i] == nodes[j] {
                return Err(Error::validation(format!(
                    "duplicate Vandermonde node {}",
                    nodes[i]
                )));
            }
        }
    }
    let rows = nodes
        .iter()
        .map(|a| {
            let mut row = Vec::with_capacity(m);
            let mut pw = Rat::one();
            for _ in 0..m {
                row.push(pw.clone());
                pw *= a;
            }
            row
        })
        .collect();
    Ok(FormSystem {
        ambient: m,
        rows,
        nodes: Some(nodes.to_vec()),
    })
}

/// Default integer nodes 1..s.
pub fn default_nodes(s: usize) -> Vec<Rat> {
    (1..=s as i64).map(crate::poly::rat).collect()
}

/// Exact determinant by fraction-free elimination.
pub fn determinant(mat: &[Vec<Rat>]) -> Rat {
    let n = mat.len();
    let mut a: Vec<Vec<Rat>> = mat.to_vec();
    let mut det = Rat::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let Some(p) = pivot else {
            return Rat::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pv = a[col][col].clone();
        det *= &pv;
        for r in col + 1..n {
            let factor = a[r][col].clone() / &pv;
            for c in col..n {
                let sub = &a[col][c] * &factor;
                a[r][c] -= sub;
            }
        }
    }
    det
}

/// True iff every maximal minor (m rows out of s) is nonzero.
pub fn check_independent(system: &FormSystem) -> Result<bool> {
    let m = system.ambient;
    let s = system.len();
    if s < m {
        return Err(Error::Parameter(format!(
            "independence needs s >= m (s={}, m={})",
            s, m
        )));
    }
    for t in tuples(s, m) {
        let minor = system.select(&t);
        if determinant(&minor).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Main count: l = d(m-q) + q. The lemma assumes m >= 2; m = 1 (forcing
/// q = 1, l = 1) is accepted as the trivially true boundary case.
pub fn count_main_lemma(d: u64, m: u64, q: u64) -> Result<u64> {
    if d < 1 || q < 1 || m < q {
        return Err(Error::Parameter(format!(
            "need d >= 1 and m >= q >= 1 (d={}, m={}, q={})",
            d, m, q
        )));
    }
    d.checked_mul(m - q)
        .and_then(|x| x.checked_add(q))
        .ok_or_else(|| Error::Parameter("count overflow".into()))
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)?;
        acc /= i + 1;
    }
    Some(acc)
}

/// Every-subtuple count: l_k = k + d(m-1) C(k, q) - d(q-1).
pub fn count_every_subtuple(d: u64, m: u64, q: u64, k: u64) -> Result<u64> {
    if d < 1 || q < 1 || k < q || m < 2 {
        return Err(Error::Parameter(format!(
            "need d >= 1, k >= q >= 1, m >= 2 (d={}, m={}, q={}, k={})",
            d, m, q, k
        )));
    }
    let c = binomial(k, q).ok_or_else(|| Error::Parameter("count overflow".into()))?;
    let mid = d
        .checked_mul(m - 1)
        .and_then(|x| x.checked_mul(c))
        .ok_or_else(|| Error::Parameter("count overflow".into()))?;
    k.checked_add(mid)
        .and_then(|x| x.checked_sub(d * (q - 1)))
        .ok_or_else(|| Error::Parameter("count overflow".into()))
}

/// The three counts of the exponent pipeline.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LojCounts {
    /// Forms on C^m probing the image: d^n (m-n) + n.
    pub l_l: u64,
    /// Probe forms on C^n for the augmented (always proper) map:
    /// n + [(d^n+1)^n - 1] n (n-1).
    pub l_n: u64,
    /// Probe forms for an already proper map: (d^n - 1) n (n-1) + n.
    pub l_n_proper: u64,
}

pub fn count_loj(n: u64, m: u64, d: u64) -> Result<LojCounts> {
    if n < 1 || m < n || d < 1 {
        return Err(Error::Parameter(format!(
            "need m >= n >= 1 and d >= 1 (n={}, m={}, d={})",
            n, m, d
        )));
    }
    let overflow = || Error::Parameter("count overflow".into());
    let dn = d.checked_pow(n.try_into().map_err(|_| overflow())?).ok_or_else(overflow)?;
    let l_l = dn.checked_mul(m - n).and_then(|x| x.checked_add(n)).ok_or_else(overflow)?;
    let dn1n = dn
        .checked_add(1)
        .and_then(|x| x.checked_pow(n as u32))
        .ok_or_else(overflow)?;
    let l_n = (dn1n - 1)
        .checked_mul(n)
        .and_then(|x| x.checked_mul(n - 1))
        .and_then(|x| x.checked_add(n))
        .ok_or_else(overflow)?;
    let l_n_proper = (dn - 1)
        .checked_mul(n)
        .and_then(|x| x.checked_mul(n - 1))
        .and_then(|x| x.checked_add(n))
        .ok_or_else(overflow)?;
    Ok(LojCounts { l_l, l_n, l_n_proper })
}

/// Lexicographically first q-tuple of rows whose common zero locus meets
/// the cone only at the origin; `None` when no tuple works.
pub fn find_vanishing_tuple(
    cone: &[Polynomial],
    system: &FormSystem,
    q: usize,
) -> Result<Option<TupleIndex>> {
    let vars = cone
        .first()
        .ok_or_else(|| Error::validation("empty cone"))?
        .vars()
        .clone();
    if vars.len() != system.ambient {
        return Err(Error::validation("cone and system ambient dimensions differ"));
    }
    for g in cone {
        if !g.is_homogeneous() {
            return Err(Error::validation(format!(
                "cone generator is not homogeneous: {}",
                crate::parse::print_polynomial(g)
            )));
        }
    }
    for t in tuples(system.len(), q) {
        let mut gens: Vec<Polynomial> = cone.to_vec();
        for &i in &t.zero_based() {
            gens.push(system.form(i, &vars));
        }
        if groebner::vanishes_only_at_origin(&gens)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Solve A x = b exactly; `None` when A is singular.
pub fn solve_linear(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(pivot, col);
        let pv = m[col][col].clone();
        for c in col..=n {
            m[col][c] /= &pv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let sub = &m[col][c] * &f;
                    m[r][c] -= sub;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// One-dimensional kernel of a full-rank (m-1) x m matrix, normalized so the
/// first nonzero coordinate is 1. `None` if the kernel is not a line.
pub fn kernel_line(rows: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let m = rows.first()?.len();
    if rows.len() + 1 != m {
        return None;
    }
    // row-reduce and read off the free column
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..m {
        if r >= a.len() {
            break;
        }
        if let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) {
            a.swap(p, r);
            let pv = a[r][c].clone();
            for j in c..m {
                a[r][j] /= &pv;
            }
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..m {
                        let sub = &a[r][j] * &f;
                        a[i][j] -= sub;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
    }
    if r != rows.len() {
        return None; // rank deficient: kernel bigger than a line
    }
    let free = (0..m).find(|c| !pivot_cols.contains(c)).unwrap();
    let mut v = vec![Rat::zero(); m];
    v[free] = Rat::one();
    for (&pc, row) in pivot_cols.iter().zip(&a) {
        v[pc] = -row[free].clone();
    }
    // normalize first nonzero coordinate to 1
    let lead = v.iter().position(|x| !x.is_zero()).unwrap();
    let inv = v[lead].clone();
    for x in v.iter_mut() {
        *x /= &inv;
    }
    Some(v)
}

/// The unique point F with F_0 = 1 on the intersection of the Vandermonde
/// hyperplanes at the given nodes, by exact linear solve cross-checked
/// against the interpolation formula (the solve is authoritative).
pub fn kernel_point(nodes: &[Rat]) -> Result<Vec<Rat>> {
    validate_kernel_nodes(nodes)?;
    let f = kernel_point_solve(nodes)?;
    debug_assert_eq!(f, kernel_point_closed_form(nodes)?);
    Ok(f)
}

fn validate_kernel_nodes(nodes: &[Rat]) -> Result<()> {
    if nodes.is_empty() {
        return Err(Error::Parameter("need at least one node".into()));
    }
    if nodes.iter().any(Rat::is_zero) {
        return Err(Error::validation("kernel-point nodes must be nonzero"));
    }
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if nodes[i] == nodes[j] {
                return Err(Error::validation("kernel-point nodes must be distinct"));
            }
        }
    }
    Ok(())
}

/// Linear-solve route: N_{a_j}(F) = 0 with F_0 = 1 becomes
/// sum_k a_j^k F_k = -1 over k = 1..m-1.
pub fn kernel_point_solve(nodes: &[Rat]) -> Result<Vec<Rat>> {
    validate_kernel_nodes(nodes)?;
    let n = nodes.len();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for node in nodes {
        let mut row = Vec::with_capacity(n);
        let mut pw = node.clone();
        for _ in 0..n {
            row.push(pw.clone());
            pw *= node;
        }
        a.push(row);
        b.push(-Rat::one());
    }
    let x = solve_linear(&a, &b)
        .ok_or_else(|| Error::validation("degenerate node set for kernel point"))?;
    let mut f = Vec::with_capacity(n + 1);
    f.push(Rat::one());
    f.extend(x);
    Ok(f)
}

/// Interpolation-formula route:
/// F_k = (-1)^{n-k+1} sum_j [a_j prod_{i != j}(a_j - a_i)]^{-1} e_{n-k}(a without a_j).
pub fn kernel_point_closed_form(nodes: &[Rat]) -> Result<Vec<Rat>> {
    validate_kernel_nodes(nodes)?;
    let n = nodes.len();
    let mut f = vec![Rat::zero(); n + 1];
    f[0] = Rat::one();
    for k in 1..=n {
        let mut sum = Rat::zero();
        for j in 0..n {
            let mut denom = nodes[j].clone();
            for i in 0..n {
                if i != j {
                    denom *= nodes[j].clone() - &nodes[i];
                }
            }
            let others: Vec<&Rat> = (0..n).filter(|&i| i != j).map(|i| &nodes[i]).collect();
            let e = elementary_symmetric(&others, n - k);
            sum += e / denom;
        }
        let sign = if (n - k + 1) % 2 == 0 { Rat::one() } else { -Rat::one() };
        f[k] = sign * sum;
    }
    Ok(f)
}

fn elementary_symmetric(vals: &[&Rat], k: usize) -> Rat {
    // e_k via the product recurrence
    let mut e = vec![Rat::zero(); k + 1];
    e[0] = Rat::one();
    for v in vals {
        for j in (1..=k).rev() {
            let add = e[j - 1].clone() * *v;
            e[j] += add;
        }
    }
    e[k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::poly::{rat, ratio};

    #[test]
    fn tuple_enumeration_is_lexicographic() {
        let ts = tuples(4, 2);
        let printed: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
        assert_eq!(printed, vec!["(1,2)", "(1,3)", "(1,4)", "(2,3)", "(2,4)", "(3,4)"]);
        assert_eq!(tuples(3, 0).len(), 1);
        assert!(tuples(2, 3).is_empty());
    }

    #[test]
    fn vandermonde_rows() {
        let s = vandermonde_system(2, 3, &[rat(1), rat(2), rat(3)]).unwrap();
        assert_eq!(s.rows[0], vec![rat(1), rat(1)]);
        assert_eq!(s.rows[1], vec![rat(1), rat(2)]);
        assert_eq!(s.rows[2], vec![rat(1), rat(3)]);
        // 3x3 Vandermonde determinant = (2-1)(3-1)(3-2) = 2
        let v3 = vandermonde_system(3, 3, &[rat(1), rat(2), rat(3)]).unwrap();
        assert_eq!(determinant(&v3.rows), rat(2));
        assert!(vandermonde_system(2, 3, &[rat(1), rat(1), rat(2)]).is_err());
        assert!(vandermonde_system(3, 2, &[rat(1), rat(2)]).is_err());
    }

    #[test]
    fn independence_checks() {
        let vdm = vandermonde_system(2, 5, &default_nodes(5)).unwrap();
        assert!(check_independent(&vdm).unwrap());
        let good = FormSystem::from_rows(vec![
            vec![rat(1), rat(0)],
            vec![rat(0), rat(1)],
            vec![rat(1), rat(1)],
        ])
        .unwrap();
        assert!(check_independent(&good).unwrap());
        let bad = FormSystem::from_rows(vec![
            vec![rat(1), rat(0)],
            vec![rat(2), rat(0)],
            vec![rat(0), rat(1)],
        ])
        .unwrap();
        assert!(!check_independent(&bad).unwrap());
    }

    #[test]
    fn counts() {
        assert_eq!(count_main_lemma(2, 2, 1).unwrap(), 3);
        assert_eq!(count_main_lemma(1, 5, 3).unwrap(), 5);
        assert_eq!(count_main_lemma(3, 2, 1).unwrap(), 4);
        // k = q collapses to the main count
        for (d, m, q) in [(1, 2, 1), (2, 3, 2), (3, 4, 2), (2, 2, 1)] {
            assert_eq!(
                count_every_subtuple(d, m, q, q).unwrap(),
                count_main_lemma(d, m, q).unwrap()
            );
        }
        assert_eq!(count_every_subtuple(1, 2, 1, 2).unwrap(), 4);
        assert_eq!(count_every_subtuple(2, 3, 2, 2).unwrap(), 4);
        let c = count_loj(2, 2, 2).unwrap();
        assert_eq!((c.l_l, c.l_n), (2, 50));
        assert_eq!(count_loj(1, 2, 3).unwrap().l_n, 1);
        let c2 = count_loj(2, 3, 1).unwrap();
        assert_eq!((c2.l_l, c2.l_n), (3, 8));
        assert_eq!(count_loj(2, 2, 3).unwrap().l_n, 200);
    }

    #[test]
    fn vanishing_tuple_optimality_witness() {
        // C0 = (x1+x2)(x1+2x2), Vandermonde nodes (1,2,3):
        // tuples (1),(2) fail, (3) succeeds.
        let v = VarList::new(["x1", "x2"]);
        let cone = vec![parse_polynomial("(x1 + x2)*(x1 + 2*x2)", v.clone()).unwrap()];
        let sys = vandermonde_system(2, 3, &[rat(1), rat(2), rat(3)]).unwrap();
        let t = find_vanishing_tuple(&cone, &sys, 1).unwrap();
        assert_eq!(t, Some(TupleIndex(vec![3])));
        // origin-only cone succeeds immediately
        let cone0 = vec![
            parse_polynomial("x1", v.clone()).unwrap(),
            parse_polynomial("x2", v.clone()).unwrap(),
        ];
        let t0 = find_vanishing_tuple(&cone0, &sys, 1).unwrap();
        assert_eq!(t0, Some(TupleIndex(vec![1])));
        // non-homogeneous generators are rejected
        let badcone = vec![parse_polynomial("x1 + 1", v).unwrap()];
        assert!(find_vanishing_tuple(&badcone, &sys, 1).is_err());
    }

    #[test]
    fn kernel_points() {
        // m=3, nodes (1,2): F = (1, -3/2, 1/2)
        let f = kernel_point(&[rat(1), rat(2)]).unwrap();
        assert_eq!(f, vec![rat(1), ratio(-3, 2), ratio(1, 2)]);
        // m=2, single node a: F = (1, -1/a)
        let g = kernel_point(&[rat(5)]).unwrap();
        assert_eq!(g, vec![rat(1), ratio(-1, 5)]);
        // defining property on a random-ish node set
        let nodes = [rat(2), rat(-3), ratio(7, 2)];
        let h = kernel_point(&nodes).unwrap();
        for a in &nodes {
            let mut acc = Rat::zero();
            let mut pw = Rat::one();
            for coord in &h {
                acc += coord * &pw;
                pw *= a;
            }
            assert!(acc.is_zero());
        }
        assert!(kernel_point(&[rat(0), rat(1)]).is_err());
        assert!(kernel_point(&[rat(1), rat(1)]).is_err());
    }

    #[test]
    fn closed_form_matches_solve_small() {
        for nodes in [
            vec![rat(1)],
            vec![rat(1), rat(2)],
            vec![rat(1), rat(2), rat(3)],
            vec![ratio(1, 2), rat(-2), rat(4), rat(7)],
        ] {
            assert_eq!(
                kernel_point_solve(&nodes).unwrap(),
                kernel_point_closed_form(&nodes).unwrap()
            );
        }
    }
}
