//! Per-quiver context: the indecomposable table in Hom-compatible order,
//! Hom/Ext dimension matrices, cached explicit representations, and the
//! engine configuration. Built once, then used immutably.

use std::collections::BTreeMap;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::category::{CCObject, TriangleCount};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quiver::{euler_form, ArChart, IntVec, Quiver};
use crate::rep::{hom_dim, indecomposable, IsoType, Rep};

/// Tunable limits and counting primes. Serialized as part of report
/// artifacts so results are reproducible.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(default)]
pub struct EngineConfig {
    /// Primes used for point counts and polynomial interpolation, ascending.
    pub primes: Vec<u64>,
    /// Cap on enumerated subspace tuples per Grassmannian count.
    pub grassmann_budget: u128,
    /// Cap on enumerated projective-space points per extension-class scan.
    pub extension_budget: u128,
    /// Iteration cap for basis expansions.
    pub expansion_cap: usize,
    /// Node cap for the exchange-graph search.
    pub exchange_cap: usize,
    /// Largest rank admitted to full tilting-object enumeration.
    pub tilting_rank_cap: usize,
    /// Sample count for randomized cone-membership checks.
    pub fan_samples: usize,
    /// Seed for every randomized check (fixed default keeps runs reproducible).
    pub rng_seed: u64,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            primes: vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53],
            grassmann_budget: 5_000_000,
            extension_budget: 2_000_000,
            expansion_cap: 10_000,
            exchange_cap: 100_000,
            tilting_rank_cap: 6,
            fan_samples: 20,
            rng_seed: 0x00c1_a57e,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if self.primes.is_empty() {
            return Err(Error::InvalidInput("config needs at least one prime".into()));
        }
        for &p in &self.primes {
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
        }
        let mut sorted = self.primes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.primes.len() {
            return Err(Error::InvalidInput("duplicate primes in config".into()));
        }
        Ok(())
    }
}

/// Everything derived from one quiver that the rest of the engine consumes:
/// the chart of indecomposables, a Hom-compatible total order on them, the
/// integer Hom/Ext dimension tables, and a per-prime cache of explicit
/// representations.
pub struct QuiverContext {
    pub quiver: Quiver,
    pub chart: ArChart,
    pub config: EngineConfig,
    /// Positive roots in Hom-compatible order: Hom(Z_k, Z_l) ≠ 0 ⟹ k ≤ l.
    pub roots: Vec<IntVec>,
    /// Index of each root in `roots`.
    pub root_index: BTreeMap<IntVec, usize>,
    /// hom[k][l] = dim Hom(Z_k, Z_l).
    pub hom: Vec<Vec<i64>>,
    /// ext[k][l] = dim Ext¹(Z_k, Z_l) over the path algebra.
    pub ext: Vec<Vec<i64>>,
    pub proj_dims: Vec<IntVec>,
    pub inj_dims: Vec<IntVec>,
    rep_cache: Mutex<BTreeMap<(u64, usize), Rep>>,
    /// Laurent values of indecomposable modules, filled on first use.
    pub(crate) laurent_cache: Mutex<BTreeMap<IntVec, LaurentPoly>>,
    /// Middle-term distributions per ordered object pair, filled on first use.
    pub(crate) triangle_cache: Mutex<BTreeMap<(CCObject, CCObject), TriangleCount>>,
}

impl QuiverContext {
    pub fn new(quiver: Quiver) -> Result<QuiverContext> {
        QuiverContext::with_config(quiver, EngineConfig::default())
    }

    pub fn with_config(quiver: Quiver, config: EngineConfig) -> Result<QuiverContext> {
        config.validate()?;
        let chart = ArChart::build(&quiver);
        let chart_roots = chart.roots.clone();
        let m = chart_roots.len();

        // Hom and Ext dimensions between indecomposables from the Euler form.
        // For a representation-directed algebra at most one of Hom(X,Y),
        // Ext¹(X,Y) is nonzero for indecomposables X, Y, so both are clipped
        // readings of ⟨dim X, dim Y⟩ = hom − ext.
        let pair = |a: &IntVec, b: &IntVec| euler_form(&quiver, a, b);
        let hom_of = |a: &IntVec, b: &IntVec| pair(a, b).max(0);
        let ext_of = |a: &IntVec, b: &IntVec| (-pair(a, b)).max(0);

        // Order the roots so that nonzero Hom only points forward.
        let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut in_deg = vec![0usize; m];
        for i in 0..m {
            for j in 0..m {
                if i != j && hom_of(&chart_roots[i], &chart_roots[j]) > 0 {
                    out_edges[i].push(j);
                    in_deg[j] += 1;
                }
            }
        }
        let mut heap = std::collections::BinaryHeap::new();
        for (i, &d) in in_deg.iter().enumerate() {
            if d == 0 {
                heap.push(std::cmp::Reverse(i));
            }
        }
        let mut order = Vec::with_capacity(m);
        while let Some(std::cmp::Reverse(i)) = heap.pop() {
            order.push(i);
            for &j in &out_edges[i] {
                in_deg[j] -= 1;
                if in_deg[j] == 0 {
                    heap.push(std::cmp::Reverse(j));
                }
            }
        }
        if order.len() != m {
            return Err(Error::Internal(
                "nonzero-Hom relation between indecomposables has a cycle".into(),
            ));
        }
        let roots: Vec<IntVec> = order.iter().map(|&i| chart_roots[i].clone()).collect();
        let root_index: BTreeMap<IntVec, usize> = roots
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        let hom: Vec<Vec<i64>> = roots
            .iter()
            .map(|a| roots.iter().map(|b| hom_of(a, b)).collect())
            .collect();
        let ext: Vec<Vec<i64>> = roots
            .iter()
            .map(|a| roots.iter().map(|b| ext_of(a, b)).collect())
            .collect();
        // Unitriangularity in the chosen order — the property decompose needs.
        for k in 0..m {
            if hom[k][k] != 1 {
                return Err(Error::Internal(format!(
                    "Hom table diagonal must be 1, got {} at {}",
                    hom[k][k], roots[k]
                )));
            }
            for l in 0..k {
                if hom[k][l] != 0 {
                    return Err(Error::Internal(
                        "Hom table is not triangular in the chosen order".into(),
                    ));
                }
            }
        }
        let proj_dims = quiver.projective_dims();
        let inj_dims = quiver.injective_dims();
        Ok(QuiverContext {
            quiver,
            chart,
            config,
            roots,
            root_index,
            hom,
            ext,
            proj_dims,
            inj_dims,
            rep_cache: Mutex::new(BTreeMap::new()),
            laurent_cache: Mutex::new(BTreeMap::new()),
            triangle_cache: Mutex::new(BTreeMap::new()),
        })
    }

    pub fn rank(&self) -> usize {
        self.quiver.rank()
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    /// Index of a root in the Hom-compatible order.
    pub fn index_of(&self, root: &IntVec) -> Result<usize> {
        self.root_index
            .get(root)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("{root} is not a positive root")))
    }

    pub fn hom_roots(&self, a: &IntVec, b: &IntVec) -> Result<i64> {
        Ok(self.hom[self.index_of(a)?][self.index_of(b)?])
    }

    pub fn ext_roots(&self, a: &IntVec, b: &IntVec) -> Result<i64> {
        Ok(self.ext[self.index_of(a)?][self.index_of(b)?])
    }

    /// The cached explicit representation of the k-th indecomposable at p.
    pub fn indec_rep(&self, k: usize, p: u64) -> Result<Rep> {
        {
            let cache = self.rep_cache.lock().unwrap();
            if let Some(r) = cache.get(&(p, k)) {
                return Ok(r.clone());
            }
        }
        let rep = indecomposable(&self.quiver, &self.roots[k], p)?;
        let mut cache = self.rep_cache.lock().unwrap();
        Ok(cache.entry((p, k)).or_insert(rep).clone())
    }

    /// Materialize a multiset of indecomposables as one representation.
    pub fn rep_of(&self, t: &IsoType, p: u64) -> Result<Rep> {
        let mut acc = Rep::zero(&self.quiver, p);
        for (root, &mult) in &t.module {
            let k = self.index_of(root)?;
            let summand = self.indec_rep(k, p)?;
            for _ in 0..mult {
                acc = acc.direct_sum(&summand);
            }
        }
        Ok(acc)
    }

    /// Krull–Schmidt multiplicities of a representation, read off from the
    /// Hom-dimension linear system (triangular in the root order).
    pub fn decompose(&self, m: &Rep) -> Result<IsoType> {
        let count = self.roots.len();
        let mut h = vec![0i64; count];
        for k in 0..count {
            let z = self.indec_rep(k, m.p)?;
            h[k] = hom_dim(&z, m)? as i64;
        }
        let mut mult = vec![0i64; count];
        for k in (0..count).rev() {
            let mut v = h[k];
            for l in (k + 1)..count {
                v -= self.hom[k][l] * mult[l];
            }
            if v < 0 {
                return Err(Error::Internal(format!(
                    "negative multiplicity for {} while decomposing",
                    self.roots[k]
                )));
            }
            mult[k] = v;
        }
        let mut t = IsoType::empty();
        let mut total = IntVec::zeros(self.rank());
        for (k, &v) in mult.iter().enumerate() {
            if v > 0 {
                t.add(self.roots[k].clone(), v as u32);
                total = total.add(&self.roots[k].scale(v));
            }
        }
        if total != m.dim_vec() {
            return Err(Error::Internal(
                "decomposition does not add up to the dimension vector".into(),
            ));
        }
        Ok(t)
    }

    /// Translation of a multiset of indecomposables; +1 needs no projective
    /// summand, −1 no injective summand.
    pub fn ar_translate(&self, t: &IsoType, direction: i64) -> Result<IsoType> {
        crate::rep::ar_translate(&self.chart, t, direction)
    }

    /// Total self-extension dimension of a multiset, additive over summands.
    pub fn self_ext(&self, t: &IsoType) -> Result<i64> {
        let mut total = 0;
        for (a, &ma) in &t.module {
            for (b, &mb) in &t.module {
                total += (ma as i64) * (mb as i64) * self.ext_roots(a, b)?;
            }
        }
        Ok(total)
    }

    /// The unique multiset of indecomposables with dimension vector `d` and
    /// no self-extensions, found by searching ext-orthogonal root multisets.
    pub fn exceptional_module(&self, d: &IntVec) -> Result<IsoType> {
        if d.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "dimension vector length {} vs rank {}",
                d.len(),
                self.rank()
            )));
        }
        if !d.is_nonneg() {
            return Err(Error::InvalidInput(format!(
                "dimension vector {d} has a negative entry"
            )));
        }
        if d.is_zero() {
            return Ok(IsoType::empty());
        }
        // Tallest roots first makes the greedy descent hit quickly.
        let mut by_height: Vec<usize> = (0..self.roots.len()).collect();
        by_height.sort_by_key(|&k| std::cmp::Reverse(self.roots[k].height()));
        let mut chosen: Vec<(usize, i64)> = Vec::new();
        if self.search_rigid(&by_height, 0, d.clone(), &mut chosen) {
            let mut t = IsoType::empty();
            for &(k, mult) in &chosen {
                t.add(self.roots[k].clone(), mult as u32);
            }
            debug_assert_eq!(self.self_ext(&t).unwrap(), 0);
            return Ok(t);
        }
        Err(Error::Internal(format!(
            "no rigid multiset found for {d}; every dimension vector must carry one"
        )))
    }

    fn search_rigid(
        &self,
        order: &[usize],
        pos: usize,
        remaining: IntVec,
        chosen: &mut Vec<(usize, i64)>,
    ) -> bool {
        if remaining.is_zero() {
            return true;
        }
        if pos == order.len() {
            return false;
        }
        let k = order[pos];
        let root = &self.roots[k];
        let compatible = chosen
            .iter()
            .all(|&(c, _)| self.ext[k][c] == 0 && self.ext[c][k] == 0);
        let mut max_mult = 0;
        if compatible {
            max_mult = (0..self.rank())
                .filter(|&i| root[i] > 0)
                .map(|i| remaining[i] / root[i])
                .min()
                .unwrap_or(0);
        }
        for mult in (0..=max_mult).rev() {
            if mult > 0 {
                chosen.push((k, mult));
            }
            let rest = remaining.sub(&root.scale(mult));
            if rest.is_nonneg() && self.search_rigid(order, pos + 1, rest, chosen) {
                return true;
            }
            if mult > 0 {
                chosen.pop();
            }
        }
        false
    }

    /// Every multiset of indecomposables whose dimension vectors sum to `d`.
    pub fn iso_types_with_dim(&self, d: &IntVec) -> Result<Vec<IsoType>> {
        if d.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "dimension vector length {} vs rank {}",
                d.len(),
                self.rank()
            )));
        }
        if !d.is_nonneg() {
            return Err(Error::InvalidInput(format!(
                "dimension vector {d} has a negative entry"
            )));
        }
        let mut out = Vec::new();
        let mut chosen: Vec<(usize, i64)> = Vec::new();
        self.enumerate_multisets(0, d.clone(), &mut chosen, &mut out);
        Ok(out)
    }

    fn enumerate_multisets(
        &self,
        pos: usize,
        remaining: IntVec,
        chosen: &mut Vec<(usize, i64)>,
        out: &mut Vec<IsoType>,
    ) {
        if remaining.is_zero() {
            let mut t = IsoType::empty();
            for &(k, mult) in chosen.iter() {
                t.add(self.roots[k].clone(), mult as u32);
            }
            out.push(t);
            return;
        }
        if pos == self.roots.len() {
            return;
        }
        let root = &self.roots[pos];
        let max_mult = (0..self.rank())
            .filter(|&i| root[i] > 0)
            .map(|i| remaining[i] / root[i])
            .min()
            .unwrap_or(0);
        for mult in 0..=max_mult {
            if mult > 0 {
                chosen.push((pos, mult));
            }
            let rest = remaining.sub(&root.scale(mult));
            if rest.is_nonneg() {
                self.enumerate_multisets(pos + 1, rest, chosen, out);
            }
            if mult > 0 {
                chosen.pop();
            }
        }
    }

    /// Human-readable name for a root: simple, projective, injective, or raw.
    pub fn name_of_root(&self, root: &IntVec) -> String {
        if let Some(i) = root.as_simple() {
            return format!("S{}", i + 1);
        }
        for (i, p) in self.proj_dims.iter().enumerate() {
            if p == root {
                return format!("P{}", i + 1);
            }
        }
        for (i, inj) in self.inj_dims.iter().enumerate() {
            if inj == root {
                return format!("I{}", i + 1);
            }
        }
        format!("root:{root}")
    }
}
