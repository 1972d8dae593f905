//! Dynkin quivers and the integer linear algebra attached to them.
//!
//! - [`Quiver`]: a validated orientation of a simply-laced Dynkin diagram
//!   (A1..A8, D4..D6, E6, E7, E8), vertices numbered as supplied by the user.
//! - [`euler_form`]: ⟨d,e⟩ = Σᵢ dᵢeᵢ − Σ_{a:i→j} dᵢe_j, the homological Euler form.
//! - [`Quiver::coxeter`]: the Coxeter transformation Φ = −E⁻¹Eᵀ, calibrated so that
//!   Φ(dim M) = dim τM for non-projective indecomposables and Φ(dim Pᵢ) = −dim Iᵢ.
//! - [`positive_roots`]: all positive roots, listed in an order compatible with the
//!   Hom-ordering on indecomposables (τ-orbit slices of the AR quiver).
//! - [`b_matrix`]: the antisymmetric exchange matrix of the orientation.
//!
//! Vertices are 0-based internally; all serialized forms are 1-based.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Signed integer vector indexed by quiver vertices.
///
/// Doubles as a dimension vector when all coordinates are ≥ 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntVec(pub Vec<i64>);

impl IntVec {
    pub fn zeros(n: usize) -> Self {
        IntVec(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        IntVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_positive(&self) -> bool {
        self.is_nonneg() && !self.is_zero()
    }

    /// Coordinatewise ≤.
    pub fn le(&self, other: &IntVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: i64) -> IntVec {
        IntVec(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> IntVec {
        self.scale(-1)
    }

    pub fn dot(&self, other: &IntVec) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Some(i) iff the vector is the i-th standard basis vector.
    pub fn as_simple(&self) -> Option<usize> {
        let mut hit = None;
        for (i, &x) in self.0.iter().enumerate() {
            match x {
                0 => {}
                1 if hit.is_none() => hit = Some(i),
                _ => return None,
            }
        }
        hit
    }

    /// Parse the `Display` format back: "[1,2,1]".
    pub fn parse(s: &str) -> crate::error::Result<IntVec> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| crate::error::Error::InvalidInput(format!("bad vector `{s}`")))?;
        if inner.trim().is_empty() {
            return Ok(IntVec(vec![]));
        }
        let parts: std::result::Result<Vec<i64>, _> =
            inner.split(',').map(|t| t.trim().parse::<i64>()).collect();
        parts
            .map(IntVec)
            .map_err(|_| crate::error::Error::InvalidInput(format!("bad vector `{s}`")))
    }
}

impl std::ops::Index<usize> for IntVec {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

impl std::ops::IndexMut<usize> for IntVec {
    fn index_mut(&mut self, i: usize) -> &mut i64 {
        &mut self.0[i]
    }
}

impl fmt::Debug for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for IntVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Dense square integer matrix, used for Euler/Coxeter/B matrices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IMat {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl IMat {
    pub fn zeros(n: usize) -> Self {
        IMat {
            n,
            rows: vec![vec![0; n]; n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zeros(n);
        for i in 0..n {
            m.rows[i][i] = 1;
        }
        m
    }

    pub fn transpose(&self) -> IMat {
        let mut t = IMat::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.rows[j][i] = self.rows[i][j];
            }
        }
        t
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        let mut m = IMat::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                let a = self.rows[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..self.n {
                    m.rows[i][j] += a * other.rows[k][j];
                }
            }
        }
        m
    }

    pub fn neg(&self) -> IMat {
        let mut m = self.clone();
        for r in &mut m.rows {
            for x in r.iter_mut() {
                *x = -*x;
            }
        }
        m
    }

    /// Matrix-vector product (column vector convention).
    pub fn apply(&self, v: &IntVec) -> IntVec {
        assert_eq!(v.len(), self.n, "matrix/vector size mismatch");
        IntVec(
            self.rows
                .iter()
                .map(|r| r.iter().zip(&v.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }
}

/// Supported simply-laced Dynkin types.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn parse(label: &str) -> Result<DynkinType> {
        let label = label.trim();
        let (family, rank) = label.split_at(1);
        let rank: usize = rank
            .parse()
            .map_err(|_| Error::UnsupportedType(label.to_string()))?;
        let t = match family {
            "A" | "a" => DynkinType::A(rank),
            "D" | "d" => DynkinType::D(rank),
            "E" | "e" => DynkinType::E(rank),
            _ => return Err(Error::UnsupportedType(label.to_string())),
        };
        match t {
            DynkinType::A(n) if (1..=8).contains(&n) => Ok(t),
            DynkinType::D(n) if (4..=6).contains(&n) => Ok(t),
            DynkinType::E(n) if (6..=8).contains(&n) => Ok(t),
            _ => Err(Error::UnsupportedType(label.to_string())),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    /// Number of positive roots of the root system.
    pub fn positive_root_count(&self) -> usize {
        match *self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(8) => 120,
            DynkinType::E(_) => unreachable!(),
        }
    }

    /// Canonical (1-based) undirected edges of the diagram, used for presets.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        match *self {
            DynkinType::A(n) => (1..n).map(|i| (i, i + 1)).collect(),
            DynkinType::D(n) => {
                // Chain 1..n−2, with both n−1 and n attached to n−2.
                let mut e: Vec<(usize, usize)> = (1..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 2, n - 1));
                e.push((n - 2, n));
                e
            }
            DynkinType::E(n) => {
                // Chain 1−3−4−5−6(−7(−8)), with 2 attached to 4.
                let mut e = vec![(1, 3), (3, 4), (2, 4)];
                for i in 4..n {
                    e.push((i, i + 1));
                }
                e
            }
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DynkinType::A(n) => write!(f, "A{}", n),
            DynkinType::D(n) => write!(f, "D{}", n),
            DynkinType::E(n) => write!(f, "E{}", n),
        }
    }
}

/// A validated Dynkin quiver. Arrows are stored 0-based as (source, target).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quiver {
    pub dynkin: DynkinType,
    pub n: usize,
    pub arrows: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    #[serde(rename = "type")]
    type_label: String,
    arrows: Vec<[usize; 2]>,
}

/// Build a quiver, checking that the arrows orient the declared diagram.
///
/// Arrows use 1-based vertex numbers, exactly as in serialized form.
pub fn build_quiver(type_label: &str, arrows: &[(usize, usize)]) -> Result<Quiver> {
    let dynkin = DynkinType::parse(type_label)?;
    let n = dynkin.rank();
    if arrows.len() != n.saturating_sub(1) {
        return Err(Error::QuiverShape(format!(
            "{} needs {} arrows, got {}",
            dynkin,
            n - 1,
            arrows.len()
        )));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut adj: Vec<Vec<usize>> = vec![vec![]; n];
    for &(s, t) in arrows {
        if s == 0 || t == 0 || s > n || t > n {
            return Err(Error::QuiverShape(format!(
                "arrow ({},{}) out of range 1..={}",
                s, t, n
            )));
        }
        if s == t {
            return Err(Error::QuiverShape(format!("self-loop at {}", s)));
        }
        let key = (s.min(t), s.max(t));
        if !seen.insert(key) {
            return Err(Error::QuiverShape(format!(
                "repeated edge between {} and {} (not a tree orientation)",
                key.0, key.1
            )));
        }
        adj[s - 1].push(t - 1);
        adj[t - 1].push(s - 1);
    }
    // Connectivity: n−1 distinct undirected edges + connected ⟹ tree.
    if n > 0 {
        let mut vis = vec![false; n];
        let mut stack = vec![0usize];
        vis[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !vis[w] {
                    vis[w] = true;
                    stack.push(w);
                }
            }
        }
        if vis.iter().any(|&b| !b) {
            return Err(Error::QuiverShape("graph is not connected".into()));
        }
    }
    check_shape(dynkin, &adj)?;
    Ok(Quiver {
        dynkin,
        n,
        arrows: arrows.iter().map(|&(s, t)| (s - 1, t - 1)).collect(),
    })
}

/// Verify that the undirected tree has the shape of the declared diagram
/// (path for A; one trivalent vertex with prescribed leg lengths for D/E).
fn check_shape(dynkin: DynkinType, adj: &[Vec<usize>]) -> Result<()> {
    let n = dynkin.rank();
    let degrees: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let max_deg = degrees.iter().copied().max().unwrap_or(0);
    match dynkin {
        DynkinType::A(_) => {
            if max_deg > 2 {
                return Err(Error::QuiverShape(format!(
                    "type {} is a path but a vertex has degree {}",
                    dynkin, max_deg
                )));
            }
            Ok(())
        }
        DynkinType::D(_) | DynkinType::E(_) => {
            if max_deg != 3 || degrees.iter().filter(|&&d| d == 3).count() != 1 {
                return Err(Error::QuiverShape(format!(
                    "type {} needs exactly one trivalent vertex",
                    dynkin
                )));
            }
            let center = degrees.iter().position(|&d| d == 3).unwrap();
            let mut legs: Vec<usize> = adj[center]
                .iter()
                .map(|&start| {
                    let mut len = 1;
                    let (mut prev, mut cur) = (center, start);
                    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            legs.sort_unstable_by(|a, b| b.cmp(a));
            let want = match dynkin {
                DynkinType::D(m) => vec![m - 3, 1, 1],
                DynkinType::E(6) => vec![2, 2, 1],
                DynkinType::E(7) => vec![3, 2, 1],
                DynkinType::E(8) => vec![4, 2, 1],
                _ => unreachable!(),
            };
            let mut want = want;
            want.sort_unstable_by(|a, b| b.cmp(a));
            if legs != want {
                return Err(Error::QuiverShape(format!(
                    "type {} needs leg lengths {:?}, got {:?}",
                    dynkin, want, legs
                )));
            }
            let _ = n;
            Ok(())
        }
    }
}

/// Orientation presets selectable by name.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Preset {
    /// Every vertex is a source or a sink (exists for every tree).
    Alternating,
    /// A-type chains oriented i+1 → i (so vertex 1 is the unique sink).
    Linear,
}

/// Build a quiver from a named orientation of the canonical diagram.
pub fn preset_quiver(type_label: &str, preset: Preset) -> Result<Quiver> {
    let dynkin = DynkinType::parse(type_label)?;
    let edges = dynkin.canonical_edges();
    let arrows: Vec<(usize, usize)> = match preset {
        Preset::Linear => match dynkin {
            DynkinType::A(_) => edges.iter().map(|&(a, b)| (b, a)).collect(),
            _ => {
                return Err(Error::Unsupported(format!(
                    "linear preset is defined for A types only, not {}",
                    dynkin
                )))
            }
        },
        Preset::Alternating => {
            // 2-color the tree from vertex 1; color-0 vertices become sources.
            let n = dynkin.rank();
            let mut adj: Vec<Vec<usize>> = vec![vec![]; n];
            for &(a, b) in &edges {
                adj[a - 1].push(b - 1);
                adj[b - 1].push(a - 1);
            }
            let mut color = vec![usize::MAX; n];
            color[0] = 0;
            let mut queue = std::collections::VecDeque::from([0usize]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if color[w] == usize::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    }
                }
            }
            edges
                .iter()
                .map(|&(a, b)| {
                    if color[a - 1] == 0 {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect()
        }
    };
    build_quiver(type_label, &arrows)
}

/// Parse the compact arrow syntax "1->2,3->2,4->2".
pub fn parse_arrows(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let (a, b) = part
                .trim()
                .split_once("->")
                .ok_or_else(|| Error::InvalidInput(format!("bad arrow syntax: {:?}", part)))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad vertex in {:?}", part)))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

impl Quiver {
    /// Vertex count.
    pub fn rank(&self) -> usize {
        self.n
    }

    /// Simple root α_i (0-based vertex).
    pub fn simple(&self, i: usize) -> IntVec {
        IntVec::unit(self.n, i)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != v)
    }

    /// The same diagram with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            dynkin: self.dynkin,
            n: self.n,
            arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect(),
        }
    }

    /// Reverse all arrows at one vertex (BGP reflection at a sink or source).
    pub fn reflect(&self, v: usize) -> Quiver {
        Quiver {
            dynkin: self.dynkin,
            n: self.n,
            arrows: self
                .arrows
                .iter()
                .map(|&(s, t)| if s == v || t == v { (t, s) } else { (s, t) })
                .collect(),
        }
    }

    /// Vertices in sink-first topological order: every arrow points from a
    /// later vertex to an earlier one.
    pub fn sink_first_order(&self) -> Vec<usize> {
        let mut out_deg: Vec<usize> = vec![0; self.n];
        for &(s, _) in &self.arrows {
            out_deg[s] += 1;
        }
        let mut order = Vec::with_capacity(self.n);
        let mut ready: Vec<usize> = (0..self.n).filter(|&v| out_deg[v] == 0).collect();
        ready.sort_unstable();
        let mut ready = std::collections::BinaryHeap::from(
            ready.into_iter().map(std::cmp::Reverse).collect::<Vec<_>>(),
        );
        let mut removed = vec![false; self.n];
        while let Some(std::cmp::Reverse(v)) = ready.pop() {
            order.push(v);
            removed[v] = true;
            for &(s, t) in &self.arrows {
                if t == v && !removed[s] {
                    out_deg[s] -= 1;
                    if out_deg[s] == 0 {
                        ready.push(std::cmp::Reverse(s));
                    }
                }
            }
        }
        assert_eq!(order.len(), self.n, "acyclic quiver must topo-sort fully");
        order
    }

    /// Euler matrix E[i][j] = δ_ij − #(arrows i→j).
    pub fn euler_matrix(&self) -> IMat {
        let mut e = IMat::identity(self.n);
        for &(s, t) in &self.arrows {
            e.rows[s][t] -= 1;
        }
        e
    }

    /// Inverse of the Euler matrix. For an acyclic quiver E = I − N with N the
    /// arrow-count matrix (nilpotent), so E⁻¹ = I + N + N² + … counts paths.
    pub fn euler_inverse(&self) -> IMat {
        let mut nil = IMat::zeros(self.n);
        for &(s, t) in &self.arrows {
            nil.rows[s][t] += 1;
        }
        let mut inv = IMat::identity(self.n);
        let mut power = IMat::identity(self.n);
        for _ in 0..self.n {
            power = power.mul(&nil);
            if power.rows.iter().all(|r| r.iter().all(|&x| x == 0)) {
                break;
            }
            for i in 0..self.n {
                for j in 0..self.n {
                    inv.rows[i][j] += power.rows[i][j];
                }
            }
        }
        debug_assert_eq!(inv.mul(&self.euler_matrix()), IMat::identity(self.n));
        inv
    }

    /// Coxeter transformation Φ = −E⁻¹Eᵀ (acts as dim M ↦ dim τM on
    /// non-projective indecomposables; sends dim Pᵢ to −dim Iᵢ).
    pub fn coxeter_matrix(&self) -> IMat {
        self.euler_inverse().mul(&self.euler_matrix().transpose()).neg()
    }

    /// Inverse Coxeter transformation Φ⁻¹ = −E⁻ᵀE.
    pub fn coxeter_inverse_matrix(&self) -> IMat {
        self.euler_inverse()
            .transpose()
            .mul(&self.euler_matrix())
            .neg()
    }

    /// dim Pᵢ for every vertex: (dim Pᵢ)_j = 1 iff a directed path i ⇝ j exists.
    pub fn projective_dims(&self) -> Vec<IntVec> {
        (0..self.n).map(|i| self.reach_from(i, false)).collect()
    }

    /// dim Iᵢ for every vertex: (dim Iᵢ)_j = 1 iff a directed path j ⇝ i exists.
    pub fn injective_dims(&self) -> Vec<IntVec> {
        (0..self.n).map(|i| self.reach_from(i, true)).collect()
    }

    fn reach_from(&self, start: usize, backwards: bool) -> IntVec {
        let mut v = IntVec::zeros(self.n);
        let mut stack = vec![start];
        v[start] = 1;
        while let Some(x) = stack.pop() {
            for &(s, t) in &self.arrows {
                let (from, to) = if backwards { (t, s) } else { (s, t) };
                if from == x && v[to] == 0 {
                    v[to] = 1;
                    stack.push(to);
                }
            }
        }
        v
    }

    /// Apply Φ^power to a vector.
    pub fn coxeter(&self, d: &IntVec, power: i64) -> IntVec {
        let m = if power >= 0 {
            self.coxeter_matrix()
        } else {
            self.coxeter_inverse_matrix()
        };
        let mut v = d.clone();
        for _ in 0..power.unsigned_abs() {
            v = m.apply(&v);
        }
        v
    }

    /// JSON serialization, 1-based arrows.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.dynkin.to_string(),
            "arrows": self.arrows.iter().map(|&(s,t)| [s+1, t+1]).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Quiver> {
        let q: QuiverJson = serde_json::from_value(v.clone())?;
        let arrows: Vec<(usize, usize)> = q.arrows.iter().map(|a| (a[0], a[1])).collect();
        build_quiver(&q.type_label, &arrows)
    }

    /// Compact arrow string "1->2,3->2".
    pub fn arrows_compact(&self) -> String {
        self.arrows
            .iter()
            .map(|&(s, t)| format!("{}->{}", s + 1, t + 1))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// The homological Euler form ⟨d,e⟩ = Σᵢ dᵢeᵢ − Σ_{a:i→j} dᵢe_j.
pub fn euler_form(q: &Quiver, d: &IntVec, e: &IntVec) -> i64 {
    assert_eq!(d.len(), q.n, "euler_form: left vector length");
    assert_eq!(e.len(), q.n, "euler_form: right vector length");
    let mut total = d.dot(e);
    for &(s, t) in &q.arrows {
        total -= d[s] * e[t];
    }
    total
}

/// Symmetrized Euler (Tits) form; orientation-independent.
pub fn tits_form(q: &Quiver, d: &IntVec) -> i64 {
    euler_form(q, d, d)
}

/// Exchange matrix: b_ij = +1 if i→j, −1 if j→i, 0 otherwise.
pub fn b_matrix(q: &Quiver) -> IMat {
    let mut b = IMat::zeros(q.n);
    for &(s, t) in &q.arrows {
        b.rows[s][t] += 1;
        b.rows[t][s] -= 1;
    }
    b
}

/// Per-quiver chart of the AR translate on dimension vectors.
///
/// Each τ⁻¹-orbit starts at a projective and ends at an injective; slots are
/// addressed as (t, i) meaning (Φ⁻¹)ᵗ(dim Pᵢ). The concatenation of all slots,
/// sorted by slice t and then by sink-first vertex order, lists every positive
/// root once, in an order compatible with the Hom-ordering on indecomposables.
#[derive(Clone, Debug)]
pub struct ArChart {
    /// orbit_dims[i][t] = (Φ⁻¹)ᵗ(dim Pᵢ), all positive.
    pub orbit_dims: Vec<Vec<IntVec>>,
    /// Roots in slice order (the canonical enumeration order).
    pub roots: Vec<IntVec>,
    /// Root → (t, i) slot.
    pub slot: BTreeMap<IntVec, (usize, usize)>,
    /// nakayama[i] = j when the orbit of Pᵢ ends at I_j.
    pub nakayama: Vec<usize>,
    /// Positions of roots in `roots` (for ⪯-compatible numbering).
    pub position: BTreeMap<IntVec, usize>,
}

impl ArChart {
    pub fn build(q: &Quiver) -> ArChart {
        let phi_inv = q.coxeter_inverse_matrix();
        let projectives = q.projective_dims();
        let injectives = q.injective_dims();
        let mut orbit_dims: Vec<Vec<IntVec>> = Vec::with_capacity(q.n);
        let mut nakayama = vec![usize::MAX; q.n];
        for i in 0..q.n {
            let mut orbit = vec![projectives[i].clone()];
            loop {
                let next = phi_inv.apply(orbit.last().unwrap());
                if !next.is_positive() {
                    break;
                }
                orbit.push(next);
            }
            let last = orbit.last().unwrap();
            nakayama[i] = injectives
                .iter()
                .position(|inj| inj == last)
                .expect("every τ⁻¹-orbit must end at an injective");
            orbit_dims.push(orbit);
        }
        let order = q.sink_first_order();
        let max_t = orbit_dims.iter().map(|o| o.len()).max().unwrap_or(0);
        let mut roots = Vec::new();
        let mut slot = BTreeMap::new();
        for t in 0..max_t {
            for &i in &order {
                if t < orbit_dims[i].len() {
                    let d = orbit_dims[i][t].clone();
                    slot.insert(d.clone(), (t, i));
                    roots.push(d);
                }
            }
        }
        assert_eq!(
            roots.len(),
            q.dynkin.positive_root_count(),
            "τ⁻¹-orbits of {} must enumerate every positive root exactly once",
            q.dynkin
        );
        let position = roots
            .iter()
            .enumerate()
            .map(|(k, d)| (d.clone(), k))
            .collect();
        ArChart {
            orbit_dims,
            roots,
            slot,
            nakayama,
            position,
        }
    }

    pub fn is_root(&self, d: &IntVec) -> bool {
        self.slot.contains_key(d)
    }

    pub fn is_projective(&self, d: &IntVec) -> bool {
        matches!(self.slot.get(d), Some(&(0, _)))
    }

    pub fn is_injective(&self, d: &IntVec) -> bool {
        match self.slot.get(d) {
            Some(&(t, i)) => t + 1 == self.orbit_dims[i].len(),
            None => false,
        }
    }

    /// dim τM for a non-projective root (None for projectives).
    pub fn tau(&self, d: &IntVec) -> Option<IntVec> {
        let &(t, i) = self.slot.get(d)?;
        if t == 0 {
            None
        } else {
            Some(self.orbit_dims[i][t - 1].clone())
        }
    }

    /// dim τ⁻¹M for a non-injective root (None for injectives).
    pub fn tau_inv(&self, d: &IntVec) -> Option<IntVec> {
        let &(t, i) = self.slot.get(d)?;
        self.orbit_dims[i].get(t + 1).cloned()
    }

    /// For an injective root, which SP slot S⁻¹ sends it to: I_j ↦ j.
    pub fn injective_index(&self, d: &IntVec) -> Option<usize> {
        let &(t, i) = self.slot.get(d)?;
        if t + 1 == self.orbit_dims[i].len() {
            Some(self.nakayama[i])
        } else {
            None
        }
    }
}

/// All positive roots, in the AR slice order (compatible with Hom-ordering).
pub fn positive_roots(q: &Quiver) -> Vec<IntVec> {
    ArChart::build(q).roots
}

/// Startup calibration of the Coxeter convention for one quiver: Φ maps each
/// projective dim vector to −(dim I_i) and every other positive root to a
/// positive root.
pub fn calibrate_coxeter(q: &Quiver) -> Result<()> {
    let chart = ArChart::build(q);
    let phi = q.coxeter_matrix();
    let injectives = q.injective_dims();
    for (i, p) in q.projective_dims().iter().enumerate() {
        let img = phi.apply(p);
        if img != injectives[i].neg() {
            return Err(Error::Internal(format!(
                "Coxeter calibration: Φ(dim P_{}) = {} ≠ −dim I_{}",
                i + 1,
                img,
                i + 1
            )));
        }
    }
    for d in &chart.roots {
        if !chart.is_projective(d) {
            let img = phi.apply(d);
            if !chart.is_root(&img) {
                return Err(Error::Internal(format!(
                    "Coxeter calibration: Φ({}) = {} is not a positive root",
                    d, img
                )));
            }
            if chart.tau(d).as_ref() != Some(&img) {
                return Err(Error::Internal(format!(
                    "Coxeter calibration: Φ({}) disagrees with the orbit chart",
                    d
                )));
            }
        }
    }
    Ok(())
}
