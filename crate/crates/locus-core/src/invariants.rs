//! The headline pipelines: local multiplicity by minimal colengths over
//! linear-form tuples, the local Lojasiewicz exponent through image
//! polynomials and their Newton data, and the local dimension / finiteness
//! tests built from the same machinery.

use crate::error::{Error, Result};
use crate::files::MapSpec;
use crate::groebner::{elimination_generator, vanishes_only_at_origin, ImagePolynomial};
use crate::intpoly::TermList;
use crate::linsys::{
    count_loj, default_nodes, tuples, vandermonde_rows, vandermonde_system, FormSystem, TupleIndex,
};
use crate::local::{colength, Colength};
use crate::monomial::MonomialOrder;
use crate::poly::{rat, Polynomial, Rat};
use crate::resultant::{as_unipoly_in, resultant, UniPoly};
use crate::vars::VarList;
use num_traits::{One, Zero};
use rayon::prelude::*;

/// Fixed evaluation window: pruning decisions happen at window boundaries,
/// so results and reports do not depend on the worker count.
const SCAN_WINDOW: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridRoute {
    /// Substitute one variable along t = N(z) and take a subresultant
    /// cascade; Newton data of the resultant equals that of the generator.
    Fast,
    /// Full block-order elimination at every grid point.
    Elimination,
}

#[derive(Clone, Copy, Debug)]
pub struct PipelineOptions {
    pub jobs: usize,
    pub grid_route: GridRoute,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            jobs: 1,
            grid_route: GridRoute::Fast,
        }
    }
}

// ---------------------------------------------------------------------------
// delta
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DeltaValue {
    Finite(Rat),
    Infinity,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeltaOutcome {
    pub r_plus_1: u32,
    pub delta: DeltaValue,
}

impl DeltaOutcome {
    /// 1/Delta, with 1/infinity = 0.
    pub fn reciprocal(&self) -> Rat {
        match &self.delta {
            DeltaValue::Finite(d) => Rat::one() / d.clone(),
            DeltaValue::Infinity => Rat::zero(),
        }
    }
}

/// Newton data of P = sum_j P_j(y) t^j: the regularity order r+1 is the
/// least j with P_j(0) != 0, and Delta = min_{j <= r} ord P_j / (r+1-j).
/// Fails with `NotRegular` when P(0, t) vanishes identically.
pub fn delta(p: &Polynomial, t_index: usize) -> Result<DeltaOutcome> {
    if p.is_zero() {
        return Err(Error::validation("delta of the zero polynomial"));
    }
    let r_plus_1 = p
        .terms()
        .filter(|(m, _)| m.degree() == m.exp(t_index))
        .map(|(m, _)| m.exp(t_index))
        .min()
        .ok_or(Error::NotRegular)?;
    let mut best: Option<Rat> = None;
    for (m, _) in p.terms() {
        let j = m.exp(t_index);
        if j >= r_plus_1 {
            continue;
        }
        let ydeg = m.degree() - j;
        let v = Rat::new(ydeg.into(), (r_plus_1 - j).into());
        if best.as_ref().is_none_or(|b| v < *b) {
            best = Some(v);
        }
    }
    Ok(DeltaOutcome {
        r_plus_1,
        delta: best.map_or(DeltaValue::Infinity, DeltaValue::Finite),
    })
}

/// Delta of an image polynomial (t is its last variable).
pub fn delta_of_image(p: &ImagePolynomial) -> Result<DeltaOutcome> {
    delta(&p.p, p.p.nvars() - 1)
}

// ---------------------------------------------------------------------------
// shared map validation and composition helpers
// ---------------------------------------------------------------------------

fn validate_local_map(f: &MapSpec) -> Result<()> {
    if f.m() < f.n() {
        return Err(Error::validation(format!(
            "need at least as many components as variables (m={} < n={})",
            f.m(),
            f.n()
        )));
    }
    if let Some(i) = f.zero_component() {
        return Err(Error::validation(format!(
            "component {} is identically zero; zero components are rejected",
            i + 1
        )));
    }
    if !f.vanishes_at_origin() {
        return Err(Error::validation(
            "the map must vanish at the origin (every component has zero constant term)",
        ));
    }
    Ok(())
}

/// Rows of rationals composed with a component list: row . comps.
fn linear_combine(rows: &[Vec<Rat>], comps: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let vars = comps[0].vars().clone();
    rows.iter()
        .map(|row| {
            let mut acc = Polynomial::zero(vars.clone());
            for (c, comp) in row.iter().zip(comps) {
                if !c.is_zero() {
                    acc = acc.add(&comp.scale(c))?;
                }
            }
            Ok(acc)
        })
        .collect()
}

fn checked_pow(d: u64, n: usize) -> Result<u64> {
    d.checked_pow(n as u32)
        .ok_or_else(|| Error::Parameter("degree power overflow".into()))
}

/// The proper augmentation: k-th component gets + z_k^{d^n + 1}.
pub fn build_h(f: &MapSpec, l_rows: &[Vec<Rat>], d: u32) -> Result<Vec<Polynomial>> {
    if u64::from(d) < u64::from(f.max_component_degree()) {
        return Err(Error::validation(format!(
            "degree bound {} is below the actual degree {}",
            d,
            f.max_component_degree()
        )));
    }
    let n = f.n();
    if l_rows.len() != n {
        return Err(Error::validation("need exactly n rows for the augmentation"));
    }
    let e64 = checked_pow(u64::from(d), n)? + 1;
    let e: u32 = e64
        .try_into()
        .map_err(|_| Error::Parameter("augmentation exponent overflow".into()))?;
    let combos = linear_combine(l_rows, &f.components)?;
    combos
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let zk = Polynomial::var(f.vars.clone(), k);
            c.add(&zk.pow(e)).map_err(Into::into)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// multiplicity
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct MultiplicityReport {
    pub value: Colength,
    pub witness: Option<TupleIndex>,
    pub per_tuple: Vec<(TupleIndex, Colength)>,
    pub l: u64,
    pub nodes: Vec<Rat>,
}

fn colength_leq(a: &Colength, b: &Colength) -> bool {
    match (a, b) {
        (Colength::Finite(x), Colength::Finite(y)) => x <= y,
        (Colength::Finite(_), Colength::Infinite) => true,
        (Colength::Infinite, Colength::Finite(_)) => false,
        (Colength::Infinite, Colength::Infinite) => true,
    }
}

fn multiplicity_core(f: &MapSpec, l: u64) -> Result<MultiplicityReport> {
    validate_local_map(f)?;
    let l_usize: usize = l
        .try_into()
        .map_err(|_| Error::Parameter("system length overflow".into()))?;
    let nodes = default_nodes(l_usize);
    let system = vandermonde_system(f.m(), l_usize, &nodes)?;
    let mut per_tuple = Vec::new();
    let mut best: Option<(Colength, TupleIndex)> = None;
    for t in tuples(l_usize, f.n()) {
        let combos = linear_combine(&system.select(&t), &f.components)?;
        let c = colength(&combos)?;
        if best
            .as_ref()
            .map(|(b, _)| !colength_leq(b, &c))
            .unwrap_or(true)
        {
            best = Some((c, t.clone()));
        }
        per_tuple.push((t, c));
    }
    let (value, witness) = best.expect("at least one tuple");
    let witness = match value {
        Colength::Infinite => None,
        Colength::Finite(_) => Some(witness),
    };
    Ok(MultiplicityReport {
        value,
        witness,
        per_tuple,
        l,
        nodes,
    })
}

/// Local multiplicity as the minimal colength over n-tuples from an
/// independent system of length d^n (m-n) + n.
pub fn multiplicity(f: &MapSpec) -> Result<MultiplicityReport> {
    validate_local_map(f)?;
    let dn = checked_pow(u64::from(f.degree_bound), f.n())?;
    let l = dn * ((f.m() - f.n()) as u64) + f.n() as u64;
    multiplicity_core(f, l)
}

/// Variant with a user-supplied degree bound for the image closure:
/// l = d_image (m-n) + n.
pub fn multiplicity_with_image_degree(f: &MapSpec, d_image: u64) -> Result<MultiplicityReport> {
    if d_image == 0 {
        return Err(Error::Parameter("image degree must be positive".into()));
    }
    let l = d_image * ((f.m() - f.n()) as u64) + f.n() as u64;
    multiplicity_core(f, l)
}

// ---------------------------------------------------------------------------
// the (s, i) exponent grid
// ---------------------------------------------------------------------------

struct ExponentGrid<'a> {
    /// Proper (or to-be-probed) map: n components in n variables.
    h: Vec<Polynomial>,
    zvars: VarList,
    n: usize,
    n_system: &'a FormSystem,
    options: PipelineOptions,
    /// Augmented maps cannot produce non-regular image polynomials; a
    /// non-regular result is then an internal bug rather than user error.
    augmented: bool,
}

/// Evaluate a term list over (aux, param) at param = a, requiring the aux
/// slot to be absent.
fn eval_param(t: &TermList, param_index: usize, a: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for (m, c) in &t.terms {
        let mut v = Rat::from_integer(c.clone());
        for _ in 0..m.exp(param_index) {
            v *= a;
        }
        acc += v;
    }
    acc
}

impl<'a> ExponentGrid<'a> {
    /// Indices i with V(h) cut by N_i only at the origin. Exact: the fast
    /// parametric route defers every ambiguous node to the auxiliary-variable
    /// radical test, which is also the route for n != 2.
    fn survivors(&self) -> Result<Vec<usize>> {
        let l_n = self.n_system.len();
        if self.n == 1 {
            // N_i = c z with c != 0: a nonzero zero of h never lies on it.
            return Ok((0..l_n).collect());
        }
        if self.n == 2 {
            if let Some(v) = self.survivors_fast_two_vars()? {
                return Ok(v);
            }
        }
        (0..l_n)
            .filter_map(|i| match self.slow_survivor_test(i) {
                Ok(true) => Some(Ok(i)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
            .collect()
    }

    fn slow_survivor_test(&self, i: usize) -> Result<bool> {
        let mut gens = self.h.clone();
        gens.push(self.n_system.form(i, &self.zvars));
        vanishes_only_at_origin(&gens)
    }

    /// n = 2 fast path. Vandermonde probes are z1 + a z2; a bad witness has
    /// p2 != 0, so the bad-node locus is the vanishing of a single resultant
    /// in the node parameter. `None` means the shape assumptions failed and
    /// the caller should use the per-index route.
    fn survivors_fast_two_vars(&self) -> Result<Option<Vec<usize>>> {
        let Some(nodes) = &self.n_system.nodes else {
            return Ok(None);
        };
        // rows must be (1, a)
        for (row, a) in self.n_system.rows.iter().zip(nodes) {
            if row.len() != 2 || !row[0].is_one() || row[1] != *a {
                return Ok(None);
            }
        }
        let ord = MonomialOrder::DegRevLex;
        let ring = VarList::new(["_s", "_a"]);
        let s_var = Polynomial::var(ring.clone(), 0);
        let a_var = Polynomial::var(ring.clone(), 1);
        let images = vec![a_var.mul(&s_var)?.neg(), s_var.clone()];
        let mut stripped = Vec::with_capacity(2);
        for hj in &self.h {
            let g = hj.substitute(&images)?;
            if g.is_zero() {
                return Ok(None);
            }
            // strip the guaranteed s-power (h vanishes at 0)
            let v = g
                .terms()
                .map(|(m, _)| m.exp(0))
                .min()
                .unwrap_or(0);
            let strip = Polynomial::from_terms(
                ring.clone(),
                g.terms().map(|(m, c)| {
                    let mut e = m.exps().to_vec();
                    e[0] -= v;
                    (
                        crate::monomial::Monomial::new(smallvec::SmallVec::from_vec(e)),
                        c.clone(),
                    )
                }),
            );
            stripped.push(strip);
        }
        let u1 = as_unipoly_in(&stripped[0], 0, &ord);
        let u2 = as_unipoly_in(&stripped[1], 0, &ord);
        if u1.is_zero() || u2.is_zero() {
            return Ok(None);
        }
        let lc1 = u1.lc().clone();
        let lc2 = u2.lc().clone();
        let res = resultant(&u1, &u2, 2, &ord);
        if res.is_zero() {
            return Ok(None);
        }
        let mut out = Vec::new();
        for (i, a) in nodes.iter().enumerate() {
            let decided_fast = !eval_param(&lc1, 1, a).is_zero()
                && !eval_param(&lc2, 1, a).is_zero();
            if decided_fast && !eval_param(&res, 1, a).is_zero() {
                out.push(i);
            } else if self.slow_survivor_test(i)? {
                out.push(i);
            }
        }
        Ok(Some(out))
    }

    fn delta_at(&self, i: usize) -> Result<DeltaOutcome> {
        match self.options.grid_route {
            GridRoute::Fast => self.delta_fast(i),
            GridRoute::Elimination => self.delta_elimination(i),
        }
    }

    fn delta_elimination(&self, i: usize) -> Result<DeltaOutcome> {
        let img = elimination_generator(&self.h, &self.n_system.form(i, &self.zvars))?;
        delta_of_image(&img)
    }

    /// Fast route: substitute one variable along t = N(z); for n = 2 the
    /// remaining elimination is a single subresultant cascade whose output
    /// is a constant multiple of a power of the generator, and Newton data
    /// is invariant under both. Falls back to the full elimination whenever
    /// its shape conditions are not met.
    fn delta_fast(&self, i: usize) -> Result<DeltaOutcome> {
        let row = self.n_system.row(i).to_vec();
        match self.n {
            1 => {
                // P = y1 - h(t/c)
                let c = &row[0];
                if c.is_zero() {
                    return Err(Error::validation("zero probe form"));
                }
                let yt = VarList::y_t(1);
                let t = Polynomial::var(yt.clone(), 1);
                let image = t.scale(&(Rat::one() / c.clone()));
                let composed = self.h[0].substitute(&[image])?;
                let p = Polynomial::var(yt, 0).sub(&composed)?;
                delta(&p, 1)
            }
            2 => {
                let k = row
                    .iter()
                    .position(|c| !c.is_zero())
                    .ok_or_else(|| Error::validation("zero probe form"))?;
                let other = 1 - k;
                // ring (_e0, y1, y2, t); z_k = (t - c_other _e0)/c_k, z_other = _e0
                let ring = VarList::new(["_e0", "y1", "y2", "t"]);
                let e0 = Polynomial::var(ring.clone(), 0);
                let t = Polynomial::var(ring.clone(), 3);
                let zk = t
                    .sub(&e0.scale(&row[other]))?
                    .scale(&(Rat::one() / row[k].clone()));
                let mut images = vec![Polynomial::zero(ring.clone()); 2];
                images[k] = zk;
                images[other] = e0;
                let ord = MonomialOrder::DegRevLex;
                let mut unis: Vec<UniPoly> = Vec::with_capacity(2);
                for (j, hj) in self.h.iter().enumerate() {
                    let yj = Polynomial::var(ring.clone(), 1 + j);
                    let g = yj.sub(&hj.substitute(&images)?)?;
                    unis.push(as_unipoly_in(&g, 0, &ord));
                }
                let shape_ok = unis.iter().all(|u| {
                    u.degree() == 0
                        || (u.lc().num_terms() == 1 && u.lc().terms[0].0.is_one())
                }) && unis.iter().any(|u| u.degree() >= 1);
                if !shape_ok {
                    return self.delta_elimination(i);
                }
                let res = resultant(&unis[0], &unis[1], 4, &ord);
                if res.is_zero() {
                    return Err(Error::validation(
                        "internal: image resultant vanished identically",
                    ));
                }
                let drop = [true, false, false, false];
                let yt = VarList::y_t(2);
                let p = Polynomial::from_terms(
                    yt,
                    res.terms
                        .iter()
                        .map(|(m, c)| (m.project_out(&drop), Rat::from_integer(c.clone()))),
                );
                delta(&p, 2)
            }
            _ => self.delta_elimination(i),
        }
    }

    /// Max of 1/Delta over the given indices, with the lexicographically
    /// first witness. An optional bail bound abandons the scan at a window
    /// boundary once the running max strictly exceeds it (the scan then only
    /// certifies "greater than the bound").
    fn scan(&self, indices: &[usize], bail: Option<&Rat>) -> Result<InnerScan> {
        let mut best: Option<(Rat, usize, DeltaOutcome)> = None;
        for window in indices.chunks(SCAN_WINDOW) {
            let outcomes: Vec<Result<DeltaOutcome>> = if self.options.jobs > 1 {
                window.par_iter().map(|&i| self.delta_at(i)).collect()
            } else {
                window.iter().map(|&i| self.delta_at(i)).collect()
            };
            for (&i, outcome) in window.iter().zip(outcomes) {
                let outcome = match outcome {
                    Err(Error::NotRegular) if self.augmented => {
                        panic!("augmented image polynomial not regular in t (bug)")
                    }
                    other => other?,
                };
                let v = outcome.reciprocal();
                if best.as_ref().map(|(b, _, _)| v > *b).unwrap_or(true) {
                    best = Some((v, i, outcome));
                }
            }
            if let (Some(bound), Some((running, _, _))) = (bail, best.as_ref()) {
                if running > bound {
                    return Ok(InnerScan {
                        best,
                        bailed: true,
                    });
                }
            }
        }
        Ok(InnerScan { best, bailed: false })
    }
}

struct InnerScan {
    best: Option<(Rat, usize, DeltaOutcome)>,
    bailed: bool,
}

// ---------------------------------------------------------------------------
// Lojasiewicz exponent
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct PerTupleExponent {
    pub s: TupleIndex,
    /// Inner max of 1/Delta; `None` when the tuple was abandoned early
    /// because its partial max already exceeded the best minimum.
    pub value: Option<Rat>,
    pub witness_i: Option<usize>,
    pub survivors: usize,
    pub pruned: bool,
}

#[derive(Clone, Debug)]
pub struct ExponentReport {
    pub value: Rat,
    pub witness_s: TupleIndex,
    pub witness_i: usize,
    pub winning_p: ImagePolynomial,
    pub r_plus_1: u32,
    pub delta: Rat,
    pub per_s: Vec<PerTupleExponent>,
    pub l_l: u64,
    pub l_n: u64,
    pub l_nodes: Vec<Rat>,
    pub n_nodes: Vec<Rat>,
    pub d: u32,
    pub proper: bool,
}

/// The exponent of a map finite at the origin, as the min over n-tuples of
/// image-probing forms of the max over surviving probe directions of
/// 1/Delta of the image polynomial.
pub fn lojasiewicz(f: &MapSpec, options: PipelineOptions) -> Result<ExponentReport> {
    lojasiewicz_impl(f, options, false)
}

/// Variant for maps the caller asserts to be proper (m = n): skips the
/// power augmentation and uses the smaller probe count; properness is
/// validated by demanding every image polynomial be regular in t.
pub fn lojasiewicz_proper(f: &MapSpec, options: PipelineOptions) -> Result<ExponentReport> {
    lojasiewicz_impl(f, options, true)
}

fn lojasiewicz_impl(
    f: &MapSpec,
    options: PipelineOptions,
    proper: bool,
) -> Result<ExponentReport> {
    validate_local_map(f)?;
    if proper && f.m() != f.n() {
        return Err(Error::validation(
            "the proper variant needs a map with m = n",
        ));
    }
    let d = f.degree_bound;
    if d < 1 || d < f.max_component_degree() {
        return Err(Error::validation(format!(
            "degree bound {} invalid for a map of degree {}",
            d,
            f.max_component_degree()
        )));
    }
    // finiteness precheck: Delta is meaningless for non-finite maps
    let mult = multiplicity(f)?;
    if !mult.value.is_finite() {
        return Err(Error::NotFinite);
    }

    let n = f.n();
    let counts = count_loj(n as u64, f.m() as u64, u64::from(d))?;
    let l_n = if proper { counts.l_n_proper } else { counts.l_n };
    let l_l_usize: usize = counts
        .l_l
        .try_into()
        .map_err(|_| Error::Parameter("l_L overflow".into()))?;
    let l_n_usize: usize = l_n
        .try_into()
        .map_err(|_| Error::Parameter("l_N overflow".into()))?;
    let l_nodes = default_nodes(l_l_usize);
    let l_system = vandermonde_system(f.m(), l_l_usize, &l_nodes)?;
    let n_nodes = default_nodes(l_n_usize);
    let n_system = vandermonde_system(n, l_n_usize, &n_nodes)?;

    let mut per_s: Vec<PerTupleExponent> = Vec::new();
    let mut best: Option<(Rat, TupleIndex, usize)> = None;
    for s in tuples(l_l_usize, n) {
        let rows = l_system.select(&s);
        let h = if proper {
            linear_combine(&rows, &f.components)?
        } else {
            build_h(f, &rows, d)?
        };
        let grid = ExponentGrid {
            h,
            zvars: f.vars.clone(),
            n,
            n_system: &n_system,
            options,
            augmented: !proper,
        };
        if proper {
            // properness validation: every probe must give a t-regular P
            for i in 0..l_n_usize {
                let _ = grid.delta_at(i)?;
            }
        }
        let survivors = grid.survivors()?;
        if survivors.is_empty() {
            return Err(Error::validation(
                "internal: no surviving probe directions; the probe count theorem excludes this",
            ));
        }
        let bail = best.as_ref().map(|(v, _, _)| v.clone());
        let scan = grid.scan(&survivors, bail.as_ref())?;
        let n_survivors = survivors.len();
        if scan.bailed {
            per_s.push(PerTupleExponent {
                s,
                value: None,
                witness_i: None,
                survivors: n_survivors,
                pruned: true,
            });
            continue;
        }
        let (v, i, _) = scan.best.expect("nonempty survivor scan");
        if best
            .as_ref()
            .map(|(b, _, _)| v < *b)
            .unwrap_or(true)
        {
            best = Some((v.clone(), s.clone(), i));
        }
        per_s.push(PerTupleExponent {
            s,
            value: Some(v),
            witness_i: Some(i + 1),
            survivors: n_survivors,
            pruned: false,
        });
    }

    let (value, witness_s, witness_i0) = best.expect("at least one tuple");
    // recompute the winner through the elimination route and cross-check
    let rows = l_system.select(&witness_s);
    let h = if proper {
        linear_combine(&rows, &f.components)?
    } else {
        build_h(f, &rows, d)?
    };
    let winning_p = elimination_generator(&h, &n_system.form(witness_i0, &f.vars))?;
    let outcome = delta_of_image(&winning_p)?;
    assert_eq!(
        outcome.reciprocal(),
        value,
        "fast-route and elimination-route Newton data disagree (bug)"
    );

    let dn = checked_pow(u64::from(d), n)?;
    assert!(value > Rat::zero(), "exponent must be positive");
    assert!(
        value <= rat(dn as i64),
        "exponent exceeds the d^n bound (bug)"
    );

    Ok(ExponentReport {
        value,
        witness_s,
        witness_i: witness_i0 + 1,
        r_plus_1: outcome.r_plus_1,
        delta: match outcome.delta {
            DeltaValue::Finite(x) => x,
            DeltaValue::Infinity => unreachable!("winner has finite Delta"),
        },
        winning_p,
        per_s,
        l_l: counts.l_l,
        l_n,
        l_nodes,
        n_nodes,
        d,
        proper,
    })
}

// ---------------------------------------------------------------------------
// exponent of an explicitly proper map (internal engine for the threshold)
// ---------------------------------------------------------------------------

enum ProperExponent {
    Exact(Rat),
    /// The scan bailed: the exponent strictly exceeds the bail bound.
    GreaterThanBound,
}

/// Exponent of a proper map h: C^n -> C^n of degree d_h, by the direct
/// probe family (no augmentation). With a bail bound, the scan may stop
/// early once the exponent provably exceeds the bound.
fn proper_exponent(
    h: &[Polynomial],
    d_h: u64,
    options: PipelineOptions,
    bail: Option<&Rat>,
) -> Result<ProperExponent> {
    let n = h.len();
    let zvars = h[0].vars().clone();
    let overflow = || Error::Parameter("count overflow".into());
    let dhn = d_h.checked_pow(n as u32).ok_or_else(overflow)?;
    let l_n = (dhn - 1)
        .checked_mul((n * (n - 1)) as u64)
        .and_then(|x| x.checked_add(n as u64))
        .ok_or_else(overflow)?;
    let l_n_usize: usize = l_n.try_into().map_err(|_| overflow())?;
    let n_nodes = default_nodes(l_n_usize);
    let n_system = vandermonde_system(n, l_n_usize, &n_nodes)?;
    // single n-tuple of image probes: an invertible recombination
    let l_system = vandermonde_system(n, n, &default_nodes(n))?;
    let recombined = linear_combine(&l_system.rows, h)?;
    let grid = ExponentGrid {
        h: recombined,
        zvars,
        n,
        n_system: &n_system,
        options,
        augmented: true,
    };
    let survivors = grid.survivors()?;
    if survivors.is_empty() {
        return Err(Error::validation(
            "internal: proper map lost every probe direction",
        ));
    }
    let scan = grid.scan(&survivors, bail)?;
    let (v, _, _) = scan.best.expect("nonempty scan");
    Ok(if scan.bailed {
        ProperExponent::GreaterThanBound
    } else {
        ProperExponent::Exact(v)
    })
}

// ---------------------------------------------------------------------------
// dimension and finiteness
// ---------------------------------------------------------------------------

/// Colength route: true iff dim_0 V(f) >= q + 1, decided by whether the
/// minimal colength over the double tuple family exceeds d^n.
pub fn dim0_at_least(f: &MapSpec, q: usize) -> Result<bool> {
    validate_local_map(f)?;
    let (n, m) = (f.n(), f.m());
    if q >= n {
        return Err(Error::Parameter(format!(
            "need n > q >= 0 (n={}, q={})",
            n, q
        )));
    }
    let d = u64::from(f.degree_bound.max(1));
    let dn = checked_pow(d, n)?;
    let a = dn * ((m - n) as u64) + n as u64;
    let b = dn * ((n - q) as u64) + q as u64;
    let a_usize: usize = a.try_into().map_err(|_| Error::Parameter("overflow".into()))?;
    let b_usize: usize = b.try_into().map_err(|_| Error::Parameter("overflow".into()))?;
    let l_system = vandermonde_rows(m + q, a_usize, &default_nodes(a_usize))?;
    let m_system = vandermonde_system(n, b_usize, &default_nodes(b_usize))?;

    for k in tuples(b_usize, q) {
        // components of (f, M_k)
        let mut comps = f.components.clone();
        for &j in &k.zero_based() {
            comps.push(m_system.form(j, &f.vars));
        }
        for i in tuples(a_usize, n) {
            let combos = linear_combine(&l_system.select(&i), &comps)?;
            let c = colength(&combos)?;
            if let Colength::Finite(v) = c {
                if v <= dn {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalDimension {
    pub dim: usize,
    pub finite: bool,
}

/// Largest q with dim >= q, scanning q = n-1 down to 0; the map is finite
/// at the origin exactly when the local dimension is 0.
pub fn local_dimension(f: &MapSpec) -> Result<LocalDimension> {
    validate_local_map(f)?;
    for q in (0..f.n()).rev() {
        if dim0_at_least(f, q)? {
            return Ok(LocalDimension {
                dim: q + 1,
                finite: false,
            });
        }
    }
    Ok(LocalDimension {
        dim: 0,
        finite: true,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdClass {
    AtLeastQPlus1,
    AtMostQ,
}

/// Exponent-threshold route: dim_0 V(f) >= q+1 iff the minimal exponent of
/// the augmented combined maps is at least d^n + 1.
pub fn finiteness_threshold_test(
    f: &MapSpec,
    q: usize,
    options: PipelineOptions,
) -> Result<ThresholdClass> {
    validate_local_map(f)?;
    let (n, m) = (f.n(), f.m());
    if q > n {
        return Err(Error::Parameter(format!("need 0 <= q <= n (q={}, n={})", q, n)));
    }
    let d = u64::from(f.degree_bound.max(1));
    let dn = checked_pow(d, n)?;
    let e64 = dn + 1;
    let e: u32 = e64
        .try_into()
        .map_err(|_| Error::Parameter("augmentation exponent overflow".into()))?;
    let l_l = dn * ((m - n) as u64) + n as u64;
    let l_m = dn * ((n - q) as u64) + q as u64;
    let l_l_usize: usize = l_l.try_into().map_err(|_| Error::Parameter("overflow".into()))?;
    let l_m_usize: usize = l_m.try_into().map_err(|_| Error::Parameter("overflow".into()))?;
    let l_system = vandermonde_rows(m + q, l_l_usize, &default_nodes(l_l_usize))?;
    let m_system = vandermonde_system(n, l_m_usize, &default_nodes(l_m_usize))?;
    let threshold = rat(dn as i64);

    for s in tuples(l_l_usize, n) {
        for k in tuples(l_m_usize, q) {
            let mut comps = f.components.clone();
            for &j in &k.zero_based() {
                comps.push(m_system.form(j, &f.vars));
            }
            let mut h = linear_combine(&l_system.select(&s), &comps)?;
            for (idx, hj) in h.iter_mut().enumerate() {
                let zk = Polynomial::var(f.vars.clone(), idx);
                *hj = hj.add(&zk.pow(e))?;
            }
            match proper_exponent(&h, e64, options, Some(&threshold))? {
                ProperExponent::Exact(v) => {
                    if v <= threshold {
                        return Ok(ThresholdClass::AtMostQ);
                    }
                }
                ProperExponent::GreaterThanBound => {
                    // this pair exceeds d^n; it cannot push the min below
                }
            }
        }
    }
    Ok(ThresholdClass::AtLeastQPlus1)
}

/// Local dimension via the threshold route only (for method cross-checks).
pub fn local_dimension_threshold(f: &MapSpec, options: PipelineOptions) -> Result<LocalDimension> {
    validate_local_map(f)?;
    for q in (0..f.n()).rev() {
        if finiteness_threshold_test(f, q, options)? == ThresholdClass::AtLeastQPlus1 {
            return Ok(LocalDimension {
                dim: q + 1,
                finite: false,
            });
        }
    }
    Ok(LocalDimension {
        dim: 0,
        finite: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::files::MapSpec;
    use crate::parse::{parse_polynomial, print_polynomial};

    fn map(vars: &[&str], comps: &[&str]) -> MapSpec {
        MapSpec::from_parts(
            vars.iter().map(|s| s.to_string()).collect(),
            &comps.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn delta_examples() {
        let yt = VarList::y_t(1);
        let p = parse_polynomial("t^2 - y1", yt.clone()).unwrap();
        let out = delta(&p, 1).unwrap();
        assert_eq!(out.r_plus_1, 2);
        assert_eq!(out.delta, DeltaValue::Finite(crate::poly::ratio(1, 2)));
        assert_eq!(out.reciprocal(), rat(2));

        let q = parse_polynomial("t - y1", yt.clone()).unwrap();
        let out2 = delta(&q, 1).unwrap();
        assert_eq!(out2.delta, DeltaValue::Finite(rat(1)));

        // the non-regular example: P(0,t) = 0 identically
        let yt2 = VarList::y_t(2);
        let bad =
            parse_polynomial("t^3*(y1^2 + y2^2) - t*y1^2 + y1^3", yt2).unwrap();
        assert!(matches!(delta(&bad, 2), Err(Error::NotRegular)));
    }

    #[test]
    fn delta_is_insensitive_to_powers_and_units() {
        // delta(P^k) = delta(P); a unit factor does not change it either
        let yt = VarList::y_t(1);
        let p = parse_polynomial("t^2 - y1", yt.clone()).unwrap();
        let base = delta(&p, 1).unwrap().delta;
        for k in 2..4u32 {
            let pk = p.pow(k);
            assert_eq!(delta(&pk, 1).unwrap().delta, base);
        }
        let unit = parse_polynomial("3 + y1 + t", yt.clone()).unwrap();
        let pu = p.mul(&unit).unwrap();
        assert_eq!(delta(&pu, 1).unwrap().delta, base);
    }

    #[test]
    fn build_h_shapes() {
        // f = (z1, z2), d = 1: H = (z1 + z2 + z1^2, z1 + 2 z2 + z2^2)
        let f = map(&["z1", "z2"], &["z1", "z2"]);
        let sys = vandermonde_system(2, 2, &default_nodes(2)).unwrap();
        let h = build_h(&f, &sys.rows, 1).unwrap();
        assert_eq!(print_polynomial(&h[0]), "z1^2 + z1 + z2");
        assert_eq!(print_polynomial(&h[1]), "z2^2 + z1 + 2*z2");
        // f = (z^2, z^3): n=1, m=2, d=3 -> exponent 4
        let g = map(&["z"], &["z^2", "z^3"]);
        let sys1 = crate::linsys::vandermonde_rows(2, 1, &default_nodes(1)).unwrap();
        let h1 = build_h(&g, &sys1.rows, 3).unwrap();
        assert_eq!(print_polynomial(&h1[0]), "z^4 + z^3 + z^2");
        // degree bound below the map degree is an error
        assert!(build_h(&g, &sys1.rows, 2).is_err());
    }

    #[test]
    fn multiplicity_examples() {
        let id = map(&["z1", "z2"], &["z1", "z2"]);
        assert_eq!(multiplicity(&id).unwrap().value, Colength::Finite(1));

        let cusp2 = map(&["z1", "z2"], &["z1^2", "z2^3"]);
        let rep = multiplicity(&cusp2).unwrap();
        assert_eq!(rep.value, Colength::Finite(6));
        assert_eq!(rep.l, 2);

        let curve = map(&["z"], &["z^2", "z^3"]);
        let rep2 = multiplicity(&curve).unwrap();
        assert_eq!(rep2.value, Colength::Finite(2));
        assert_eq!(rep2.l, 4);
        assert_eq!(rep2.witness, Some(TupleIndex(vec![1])));
        // per-tuple table covers all four probes with the same value
        assert_eq!(rep2.per_tuple.len(), 4);
        assert!(rep2
            .per_tuple
            .iter()
            .all(|(_, c)| *c == Colength::Finite(2)));

        let axes = map(&["z1", "z2"], &["z1*z2", "z1^2*z2"]);
        assert_eq!(multiplicity(&axes).unwrap().value, Colength::Infinite);
    }

    #[test]
    fn multiplicity_rejects_bad_maps() {
        let shifted = map(&["z1", "z2"], &["z1 + 1", "z2"]);
        assert!(multiplicity(&shifted).is_err());
        let withzero = map(&["z1", "z2"], &["z1", "0"]);
        assert!(multiplicity(&withzero).is_err());
    }

    #[test]
    fn multiplicity_image_degree_variant() {
        // image of (z^2, z^3) has degree-bound 3: l = 3(2-1)+1 = 4, same value
        let curve = map(&["z"], &["z^2", "z^3"]);
        let rep = multiplicity_with_image_degree(&curve, 3).unwrap();
        assert_eq!(rep.l, 4);
        assert_eq!(rep.value, Colength::Finite(2));
    }

    #[test]
    fn lojasiewicz_identity() {
        let id = map(&["z1", "z2"], &["z1", "z2"]);
        let rep = lojasiewicz(&id, PipelineOptions::default()).unwrap();
        assert_eq!(rep.value, rat(1));
        assert_eq!(rep.l_l, 2);
        assert_eq!(rep.l_n, 8);
        assert!(rep.winning_p.identity_checked);
    }

    #[test]
    fn lojasiewicz_curve_map() {
        // (z^2, z^3): C -> C^2 has exponent 2
        let curve = map(&["z"], &["z^2", "z^3"]);
        let rep = lojasiewicz(&curve, PipelineOptions::default()).unwrap();
        assert_eq!(rep.value, rat(2));
        assert_eq!(rep.l_l, 4);
        assert_eq!(rep.l_n, 1);
    }

    #[test]
    fn lojasiewicz_rejects_non_finite() {
        let axes = map(&["z1", "z2"], &["z1*z2", "z1^2*z2"]);
        assert!(matches!(
            lojasiewicz(&axes, PipelineOptions::default()),
            Err(Error::NotFinite)
        ));
    }

    #[test]
    fn grid_routes_agree_on_identity() {
        let id = map(&["z1", "z2"], &["z1", "z2"]);
        let fast = lojasiewicz(&id, PipelineOptions::default()).unwrap();
        let slow = lojasiewicz(
            &id,
            PipelineOptions {
                jobs: 1,
                grid_route: GridRoute::Elimination,
            },
        )
        .unwrap();
        assert_eq!(fast.value, slow.value);
        assert_eq!(fast.witness_s, slow.witness_s);
        assert_eq!(fast.witness_i, slow.witness_i);
        assert_eq!(fast.winning_p.p, slow.winning_p.p);
    }

    #[test]
    fn proper_variant_identity() {
        let id = map(&["z1", "z2"], &["z1", "z2"]);
        let rep = lojasiewicz_proper(&id, PipelineOptions::default()).unwrap();
        assert_eq!(rep.value, rat(1));
        assert!(rep.proper);
        assert_eq!(rep.l_n, 2); // (1-1)*2 + 2
    }

    #[test]
    fn dim0_examples() {
        let axes = map(&["z1", "z2"], &["z1*z2", "z1^2*z2"]);
        assert!(dim0_at_least(&axes, 0).unwrap());
        let id = map(&["z1", "z2"], &["z1", "z2"]);
        assert!(!dim0_at_least(&id, 0).unwrap());
        let mixed = map(&["z1", "z2"], &["z1*z2", "z1 + z2"]);
        assert!(!dim0_at_least(&mixed, 0).unwrap());
    }

    #[test]
    fn local_dimension_catalogue() {
        let id = map(&["z1", "z2"], &["z1", "z2"]);
        assert_eq!(
            local_dimension(&id).unwrap(),
            LocalDimension { dim: 0, finite: true }
        );
        let axes = map(&["z1", "z2"], &["z1*z2", "z1^2*z2"]);
        assert_eq!(
            local_dimension(&axes).unwrap(),
            LocalDimension { dim: 1, finite: false }
        );
    }

    #[test]
    fn threshold_identity_is_at_most_zero() {
        let id = map(&["z1", "z2"], &["z1", "z2"]);
        assert_eq!(
            finiteness_threshold_test(&id, 0, PipelineOptions::default()).unwrap(),
            ThresholdClass::AtMostQ
        );
    }
}
