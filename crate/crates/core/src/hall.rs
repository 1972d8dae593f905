//! Multiplication in the exact engine: Hall polynomials by direct submodule
//! enumeration, the classical product identity on cluster variables, chains
//! of elementary degenerations with their rational weights, and expansion of
//! Laurent polynomials in the basis indexed by exceptional objects.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::category::{
    exceptional_from_lambda, ext1_dim_cc, is_exceptional, middle_chi, middle_terms, CCObject,
};
use crate::ccmap::x_of;
use crate::context::QuiverContext;
use crate::error::{Error, Result};
use crate::ffalg::FMatrix;
use crate::filtration::{find_epsilon, graded_leading};
use crate::grassmann::{counting_primes, interpolate_integer_poly, walk_submodules, QPoly};
use crate::laurent::LaurentPoly;
use crate::quiver::IntVec;
use crate::rep::{cokernel_rep, IsoType, Rep};

/// Number of submodules Y of X with Y ≅ N and X/Y ≅ M, as an exact
/// polynomial in the field size: counted over enough primes and
/// interpolated, with one held-out prime as a check.
pub fn hall_polynomial(
    ctx: &QuiverContext,
    m: &IsoType,
    n: &IsoType,
    x: &IsoType,
) -> Result<QPoly> {
    let rank = ctx.rank();
    let dm = m.dim_vec(rank);
    let dn = n.dim_vec(rank);
    let dx = x.dim_vec(rank);
    if dm.add(&dn) != dx {
        return Err(Error::DimensionMismatch(format!(
            "dim {dm} + dim {dn} ≠ dim {dx}"
        )));
    }
    // The count is the size of a locally closed subset of Gr_e(X), so its
    // degree is bounded by that Grassmannian's dimension.
    let degree_bound: i64 = (0..rank).map(|i| dn[i] * (dx[i] - dn[i])).sum();
    let need = degree_bound as usize + 2; // nodes plus one held-out prime
    let primes = counting_primes(ctx, need);
    let budget = ctx.config.grassmann_budget;
    let mut points = Vec::with_capacity(need);
    for &p in &primes {
        points.push((p, count_hall_at_prime(ctx, m, n, x, p, budget)?));
    }
    let poly = interpolate_integer_poly(&points[..need - 1])?;
    let (held_out, fresh) = points[need - 1];
    if poly.eval_big(held_out as i64) != BigInt::from(fresh) {
        return Err(Error::Interpolation(format!(
            "submodule-pair count fails at held-out prime {held_out}"
        )));
    }
    Ok(poly)
}

fn count_hall_at_prime(
    ctx: &QuiverContext,
    m: &IsoType,
    n: &IsoType,
    x: &IsoType,
    p: u64,
    budget: u128,
) -> Result<u128> {
    let rank = ctx.rank();
    let ambient = ctx.rep_of(x, p)?;
    let e = n.dim_vec(rank);
    let mut hits: u128 = 0;
    walk_submodules(&ambient, &e, budget, &mut |bases: &[Option<FMatrix>]| {
        let sub = sub_rep(&ambient, bases);
        if ctx.decompose(&sub)? != *n {
            return Ok(());
        }
        let inclusion: Vec<FMatrix> = bases
            .iter()
            .map(|b| b.as_ref().expect("complete placement").clone())
            .collect();
        let quotient = cokernel_rep(&inclusion, &sub, &ambient);
        if ctx.decompose(&quotient)? == *m {
            hits += 1;
        }
        Ok(())
    })?;
    Ok(hits)
}

/// The subrepresentation spanned by the chosen per-vertex bases.
fn sub_rep(ambient: &Rep, bases: &[Option<FMatrix>]) -> Rep {
    let dims: Vec<usize> = bases
        .iter()
        .map(|b| b.as_ref().expect("complete placement").cols)
        .collect();
    let mats: Vec<FMatrix> = ambient
        .arrows
        .iter()
        .zip(&ambient.mats)
        .map(|(&(s, t), big)| {
            let bs = bases[s].as_ref().unwrap();
            let bt = bases[t].as_ref().unwrap();
            bt.solve_columns(&big.mul(bs))
                .expect("the walker only yields arrow-stable placements")
        })
        .collect();
    Rep {
        p: ambient.p,
        dims,
        arrows: ambient.arrows.clone(),
        mats,
    }
}

/// Coefficients of the product b_{e'}·b_e of the dimension-vector sums in
/// the specialized Hall algebra: for each iso type X of total dimension
/// e' + e, the sum over all (M, N) of the Hall polynomial at q = 1.
pub fn b_product(
    ctx: &QuiverContext,
    e_prime: &IntVec,
    e: &IntVec,
) -> Result<BTreeMap<IsoType, i64>> {
    let quotients = ctx.iso_types_with_dim(e_prime)?;
    let subs = ctx.iso_types_with_dim(e)?;
    let totals = ctx.iso_types_with_dim(&e_prime.add(e))?;
    let mut out = BTreeMap::new();
    for x in totals {
        let mut coeff = 0i64;
        for m in &quotients {
            for n in &subs {
                coeff += hall_polynomial(ctx, m, n, &x)?.at_one();
            }
        }
        out.insert(x, coeff);
    }
    Ok(out)
}

/// Outcome of checking the product identity on one ordered pair of objects.
#[derive(Clone, Debug)]
pub struct MultiplicationReport {
    pub ext_dim: i64,
    pub holds: bool,
    pub lhs: LaurentPoly,
    pub rhs: LaurentPoly,
}

impl MultiplicationReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ext_dim": self.ext_dim,
            "holds": self.holds,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
        })
    }
}

/// Check the multiplication identity for the pair (n, m): with no
/// extensions the variables multiply to the variable of the direct sum;
/// otherwise dim Ext¹ times the product equals the χ-weighted sum of the
/// variables of the middle terms from both extension directions.
pub fn verify_multiplication(
    ctx: &QuiverContext,
    n: &CCObject,
    m: &CCObject,
) -> Result<MultiplicationReport> {
    let d = ext1_dim_cc(ctx, n, m)?;
    let xn = x_of(ctx, n)?;
    let xm = x_of(ctx, m)?;
    if d == 0 {
        let lhs = xn.mul(&xm);
        let rhs = x_of(ctx, &n.union(m))?;
        let holds = lhs == rhs;
        return Ok(MultiplicationReport {
            ext_dim: 0,
            holds,
            lhs,
            rhs,
        });
    }
    let lhs = xn.mul(&xm).scale(&BigInt::from(d));
    let mut weights: BTreeMap<CCObject, i64> = BTreeMap::new();
    for (y, chi) in middle_chi(ctx, n, m)? {
        *weights.entry(y).or_insert(0) += chi;
    }
    for (y, chi) in middle_chi(ctx, m, n)? {
        *weights.entry(y).or_insert(0) += chi;
    }
    let mut rhs = LaurentPoly::zero(ctx.rank());
    for (y, w) in &weights {
        if *w == 0 {
            continue;
        }
        rhs = rhs.add(&x_of(ctx, y)?.scale(&BigInt::from(*w)));
    }
    let holds = lhs == rhs;
    Ok(MultiplicationReport {
        ext_dim: d,
        holds,
        lhs,
        rhs,
    })
}

/// One elementary degeneration: replace the summand pair (first, second) by
/// a nonsplit middle term of a triangle with class in Ext¹(first, second).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElementaryStep {
    pub from: CCObject,
    pub to: CCObject,
    pub first: CCObject,
    pub second: CCObject,
    pub middle: CCObject,
    /// χ of the projectivized classes with this middle term.
    pub c: i64,
    /// Multiplicity of `first` in `from`.
    pub z_first: u32,
    /// Multiplicity of `second` in `from`.
    pub z_second: u32,
}

impl ElementaryStep {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "from": self.from.to_json(),
            "to": self.to.to_json(),
            "first": self.first.to_json(),
            "second": self.second.to_json(),
            "middle": self.middle.to_json(),
            "c": self.c,
            "z_first": self.z_first,
            "z_second": self.z_second,
        })
    }
}

/// All elementary degenerations out of `x`: every unordered pair of distinct
/// indecomposable summand types with extensions between them contributes its
/// middle-term classes, in both extension directions.
pub fn elementary_degenerations(ctx: &QuiverContext, x: &CCObject) -> Result<Vec<ElementaryStep>> {
    let summands = x.summands();
    let mut steps = Vec::new();
    for i in 0..summands.len() {
        for j in i + 1..summands.len() {
            let (u, mu) = &summands[i];
            let (v, mv) = &summands[j];
            if ext1_dim_cc(ctx, u, v)? == 0 {
                continue;
            }
            for (first, mult_first, second, mult_second) in
                [(u, *mu, v, *mv), (v, *mv, u, *mu)]
            {
                let tc = middle_terms(ctx, first, second)?;
                for (middle, poly) in &tc.by_middle {
                    let mut to = x.clone();
                    to.remove_single(first);
                    to.remove_single(second);
                    let to = to.union(middle);
                    steps.push(ElementaryStep {
                        from: x.clone(),
                        to,
                        first: first.clone(),
                        second: second.clone(),
                        middle: middle.clone(),
                        c: poly.at_one(),
                        z_first: mult_first,
                        z_second: mult_second,
                    });
                }
            }
        }
    }
    Ok(steps)
}

/// The normalization of the per-step denominator in degeneration chains.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChainConvention {
    /// Divide by dim Ext¹ of the object with itself in the orbit category.
    ClusterExt,
    /// Divide by half of that. Ext¹(x, x) is symmetric, hence always even.
    ModuleExt,
}

impl ChainConvention {
    pub fn label(&self) -> &'static str {
        match self {
            ChainConvention::ClusterExt => "cluster_ext",
            ChainConvention::ModuleExt => "module_ext",
        }
    }
}

/// Weights of all exceptional objects reachable from `x` by degeneration
/// chains: each chain contributes the product over its steps of
/// c·z_first·z_second divided by the per-step denominator. An exceptional
/// object yields itself with weight one (the empty chain).
fn r_distribution(
    ctx: &QuiverContext,
    x: &CCObject,
    convention: ChainConvention,
    memo: &mut BTreeMap<CCObject, BTreeMap<CCObject, BigRational>>,
) -> Result<BTreeMap<CCObject, BigRational>> {
    if let Some(dist) = memo.get(x) {
        return Ok(dist.clone());
    }
    let mut dist: BTreeMap<CCObject, BigRational> = BTreeMap::new();
    if is_exceptional(ctx, x)? {
        dist.insert(x.clone(), BigRational::one());
    } else {
        let self_ext = ext1_dim_cc(ctx, x, x)?;
        let denom = match convention {
            ChainConvention::ClusterExt => self_ext,
            ChainConvention::ModuleExt => {
                debug_assert_eq!(self_ext % 2, 0);
                self_ext / 2
            }
        };
        for step in elementary_degenerations(ctx, x)? {
            if step.c == 0 {
                continue;
            }
            let down = ext1_dim_cc(ctx, &step.to, &step.to)?;
            if down >= self_ext {
                return Err(Error::Internal(format!(
                    "degeneration {x} ⇝ {} does not lower the self-extension dimension",
                    step.to
                )));
            }
            let num = BigInt::from(step.c)
                * BigInt::from(step.z_first)
                * BigInt::from(step.z_second);
            let ratio = BigRational::new(num, BigInt::from(denom));
            for (k, w) in r_distribution(ctx, &step.to, convention, memo)? {
                let add = &ratio * &w;
                *dist.entry(k).or_insert_with(BigRational::zero) += add;
            }
        }
    }
    memo.insert(x.clone(), dist.clone());
    Ok(dist)
}

/// The chain weight r(x, k) for an exceptional target k. r(x, x) = 1 by the
/// empty chain; otherwise the memoized sum over all descending chains.
pub fn r_coefficient(
    ctx: &QuiverContext,
    x: &CCObject,
    k: &CCObject,
    convention: ChainConvention,
) -> Result<BigRational> {
    if !is_exceptional(ctx, k)? {
        return Err(Error::InvalidInput(format!(
            "chain target {k} has self-extensions"
        )));
    }
    if x == k {
        return Ok(BigRational::one());
    }
    let mut memo = BTreeMap::new();
    let dist = r_distribution(ctx, x, convention, &mut memo)?;
    Ok(dist.get(k).cloned().unwrap_or_else(BigRational::zero))
}

/// A finite linear combination of exceptional objects with rational
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BasisExpansion {
    pub coeffs: BTreeMap<CCObject, BigRational>,
}

impl BasisExpansion {
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .coeffs
            .iter()
            .map(|(k, v)| serde_json::json!({ "object": k.to_json(), "coeff": v.to_string() }))
            .collect();
        serde_json::json!(entries)
    }

    /// All coefficients integral (as they must be for products of cluster
    /// variables).
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }
}

/// Expand a Laurent polynomial in the basis of cluster variables of
/// exceptional objects by repeated leading-term elimination: the graded
/// leading exponent must be the index vector of an exceptional object whose
/// variable then cancels it. Fails with `NotInSpan` when the leading
/// exponent is no index vector or the iteration cap is reached.
pub fn expand_in_basis(ctx: &QuiverContext, p: &LaurentPoly) -> Result<BasisExpansion> {
    let eps = find_epsilon(ctx)?.ok_or_else(|| {
        Error::Unsupported("no grading form exists for this orientation".into())
    })?;
    let mut residual = p.clone();
    let mut coeffs: BTreeMap<CCObject, BigRational> = BTreeMap::new();
    let cap = ctx.config.expansion_cap;
    for iteration in 0..cap {
        if residual.is_zero() {
            let mut check = LaurentPoly::zero(ctx.rank());
            for (k, w) in &coeffs {
                debug_assert!(w.is_integer());
                check = check.add(&x_of(ctx, k)?.scale(&w.to_integer()));
            }
            if check != *p {
                return Err(Error::Internal(
                    "basis expansion does not reconstruct its input".into(),
                ));
            }
            return Ok(BasisExpansion { coeffs });
        }
        let lead = graded_leading(&residual, &eps)?;
        let k = match exceptional_from_lambda(ctx, &lead.exponent) {
            Ok(k) => k,
            Err(Error::InvalidInput(_)) => return Err(Error::NotInSpan(iteration)),
            Err(e) => return Err(e),
        };
        residual = residual.sub(&x_of(ctx, &k)?.scale(&lead.coefficient));
        let w = BigRational::from(lead.coefficient);
        let entry = coeffs.entry(k).or_insert_with(BigRational::zero);
        *entry += w;
        if entry.is_zero() {
            return Err(Error::Internal(
                "a basis coefficient cancelled to zero during expansion".into(),
            ));
        }
    }
    Err(Error::NotInSpan(cap))
}

/// The product of two objects in the degeneration (Hall-style) algebra:
/// the weights r(m ⊕ n, k) over all reachable exceptional objects k.
pub fn hall_multiply(
    ctx: &QuiverContext,
    m: &CCObject,
    n: &CCObject,
    convention: ChainConvention,
) -> Result<BasisExpansion> {
    let x = m.union(n);
    let mut memo = BTreeMap::new();
    let dist = r_distribution(ctx, &x, convention, &mut memo)?;
    Ok(BasisExpansion {
        coeffs: dist.into_iter().filter(|(_, w)| !w.is_zero()).collect(),
    })
}

/// Sweep of chain weights over all objects with bounded summand
/// multiplicities: the minimum weight under each convention, with
/// nonnegativity recorded (never asserted).
#[derive(Clone, Debug)]
pub struct ChainSweepReport {
    pub multiplicity_bound: u32,
    pub objects_checked: usize,
    pub pairs_checked: usize,
    pub min_cluster: BigRational,
    pub min_module: BigRational,
    pub all_nonnegative_cluster: bool,
    pub all_nonnegative_module: bool,
}

impl ChainSweepReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "multiplicity_bound": self.multiplicity_bound,
            "objects_checked": self.objects_checked,
            "pairs_checked": self.pairs_checked,
            "min_cluster": self.min_cluster.to_string(),
            "min_module": self.min_module.to_string(),
            "all_nonnegative_cluster": self.all_nonnegative_cluster,
            "all_nonnegative_module": self.all_nonnegative_module,
        })
    }
}

pub fn chain_weight_sweep(ctx: &QuiverContext, bound: u32) -> Result<ChainSweepReport> {
    let mut candidates: Vec<CCObject> = ctx
        .roots
        .iter()
        .map(|r| CCObject::single_module(r.clone()))
        .collect();
    for i in 0..ctx.rank() {
        candidates.push(CCObject::single_sp(i));
    }
    let total: u128 = (bound as u128 + 1).pow(candidates.len() as u32);
    if total > ctx.config.expansion_cap as u128 {
        return Err(Error::BudgetExceeded {
            what: "chain-weight sweep".into(),
            estimate: total,
            cap: ctx.config.expansion_cap as u128,
        });
    }
    let mut memo_cluster = BTreeMap::new();
    let mut memo_module = BTreeMap::new();
    let mut report = ChainSweepReport {
        multiplicity_bound: bound,
        objects_checked: 0,
        pairs_checked: 0,
        min_cluster: BigRational::one(),
        min_module: BigRational::one(),
        all_nonnegative_cluster: true,
        all_nonnegative_module: true,
    };
    let mut mults = vec![0u32; candidates.len()];
    loop {
        let mut x = CCObject::zero();
        for (cand, &mult) in candidates.iter().zip(&mults) {
            for _ in 0..mult {
                x = x.union(cand);
            }
        }
        report.objects_checked += 1;
        let dist_c = r_distribution(ctx, &x, ChainConvention::ClusterExt, &mut memo_cluster)?;
        let dist_m = r_distribution(ctx, &x, ChainConvention::ModuleExt, &mut memo_module)?;
        report.pairs_checked += dist_c.len();
        for w in dist_c.values() {
            if *w < report.min_cluster {
                report.min_cluster = w.clone();
            }
            if w.is_negative() {
                report.all_nonnegative_cluster = false;
            }
        }
        for w in dist_m.values() {
            if *w < report.min_module {
                report.min_module = w.clone();
            }
            if w.is_negative() {
                report.all_nonnegative_module = false;
            }
        }
        // Odometer over multiplicity patterns.
        let mut k = 0;
        while k < mults.len() {
            mults[k] += 1;
            if mults[k] <= bound {
                break;
            }
            mults[k] = 0;
            k += 1;
        }
        if k == mults.len() {
            break;
        }
    }
    Ok(report)
}
