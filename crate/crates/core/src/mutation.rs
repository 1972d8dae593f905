//! Seeds, the exchange relation, matrix mutation, and breadth-first
//! enumeration of the exchange graph, cross-checked against the category:
//! cluster variables are exactly the Laurent values of indecomposables and
//! clusters correspond to the maximal rigid objects.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::category::{tilting_objects, CCObject};
use crate::ccmap::{denominator_signed, x_of};
use crate::context::QuiverContext;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quiver::b_matrix;

/// A cluster of m Laurent polynomials (entries past the first n are frozen)
/// together with an m×n exchange matrix whose top n×n block is
/// antisymmetric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub cluster: Vec<LaurentPoly>,
    pub matrix: Vec<Vec<i64>>,
}

impl Seed {
    /// Seed of a quiver: initial variables x₁..x_n and the exchange matrix
    /// with b_ij = +1 per arrow i→j.
    pub fn initial(ctx: &QuiverContext) -> Seed {
        let n = ctx.rank();
        let b = b_matrix(&ctx.quiver);
        Seed {
            cluster: (0..n).map(|i| LaurentPoly::variable(i, n)).collect(),
            matrix: b.rows,
        }
    }

    /// Principal-coefficient seed: n mutable variables, n frozen ones, and
    /// an identity block stacked under the exchange matrix.
    pub fn with_principal_coefficients(ctx: &QuiverContext) -> Seed {
        let n = ctx.rank();
        let b = b_matrix(&ctx.quiver);
        let mut matrix = b.rows;
        for i in 0..n {
            let mut row = vec![0; n];
            row[i] = 1;
            matrix.push(row);
        }
        Seed {
            cluster: (0..2 * n).map(|i| LaurentPoly::variable(i, 2 * n)).collect(),
            matrix,
        }
    }

    /// Number of mutable directions.
    pub fn mutable_count(&self) -> usize {
        self.matrix.first().map_or(0, |r| r.len())
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.cluster.len();
        let n = self.mutable_count();
        if self.matrix.len() != m || n > m {
            return Err(Error::InvalidInput(format!(
                "matrix shape {}×{n} does not fit a cluster of {m}",
                self.matrix.len()
            )));
        }
        for row in &self.matrix {
            if row.len() != n {
                return Err(Error::InvalidInput("ragged exchange matrix".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.matrix[i][j] != -self.matrix[j][i] {
                    return Err(Error::InvalidInput(
                        "top square block must be antisymmetric".into(),
                    ));
                }
            }
        }
        for p in &self.cluster {
            if p.n != m {
                return Err(Error::InvalidInput(
                    "cluster entries must live in one ambient variable set".into(),
                ));
            }
        }
        Ok(())
    }

    /// The unordered mutable part, the identity of a cluster.
    fn key(&self) -> BTreeSet<LaurentPoly> {
        self.cluster[..self.mutable_count()].iter().cloned().collect()
    }
}

fn poly_power(p: &LaurentPoly, k: i64) -> LaurentPoly {
    let mut out = LaurentPoly::one(p.n);
    for _ in 0..k {
        out = out.mul(p);
    }
    out
}

/// One mutation step in direction j (0-based, j < n): the variable at j is
/// exchanged via the two-monomial relation and divided out exactly, and the
/// matrix follows the standard rule. Involutive.
pub fn mutate(s: &Seed, j: usize) -> Result<Seed> {
    let m = s.cluster.len();
    let n = s.mutable_count();
    if j >= n {
        return Err(Error::InvalidInput(format!(
            "mutation direction {} out of range (n = {n})",
            j + 1
        )));
    }
    let ambient = s.cluster.first().map_or(0, |p| p.n);
    let mut pos = LaurentPoly::one(ambient);
    let mut neg = LaurentPoly::one(ambient);
    for i in 0..m {
        let b = s.matrix[i][j];
        if b > 0 {
            pos = pos.mul(&poly_power(&s.cluster[i], b));
        } else if b < 0 {
            neg = neg.mul(&poly_power(&s.cluster[i], -b));
        }
    }
    let new_var = pos.add(&neg).div_exact(&s.cluster[j])?;
    let mut cluster = s.cluster.clone();
    cluster[j] = new_var;
    let mut matrix = vec![vec![0i64; n]; m];
    for i in 0..m {
        for k in 0..n {
            let b = s.matrix[i][k];
            matrix[i][k] = if i == j || k == j {
                -b
            } else {
                let bij = s.matrix[i][j];
                let bjk = s.matrix[j][k];
                b + (bij.abs() * bjk + bij * bjk.abs()) / 2
            };
        }
    }
    Ok(Seed { cluster, matrix })
}

/// The exchange graph grown breadth-first from a seed. Nodes are clusters
/// (unordered mutable variable sets); an edge joins clusters one mutation
/// apart.
pub struct ExchangeGraph {
    pub nodes: Vec<Seed>,
    pub edges: Vec<(usize, usize)>,
    /// Every mutable cluster variable encountered, deduplicated and sorted.
    pub variables: Vec<LaurentPoly>,
}

pub fn exchange_graph(ctx: &QuiverContext, seed: &Seed) -> Result<ExchangeGraph> {
    seed.validate()?;
    let cap = ctx.config.exchange_cap;
    let mut nodes: Vec<Seed> = vec![seed.clone()];
    let mut index: BTreeMap<BTreeSet<LaurentPoly>, usize> = BTreeMap::new();
    index.insert(seed.key(), 0);
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(cur) = queue.pop_front() {
        for j in 0..nodes[cur].mutable_count() {
            let next = mutate(&nodes[cur], j)?;
            let key = next.key();
            let idx = match index.get(&key) {
                Some(&idx) => idx,
                None => {
                    if nodes.len() >= cap {
                        return Err(Error::BudgetExceeded {
                            what: "exchange graph not closed within budget".into(),
                            estimate: nodes.len() as u128 + 1,
                            cap: cap as u128,
                        });
                    }
                    let idx = nodes.len();
                    nodes.push(next);
                    index.insert(key, idx);
                    queue.push_back(idx);
                    idx
                }
            };
            if idx != cur {
                edges.insert((cur.min(idx), cur.max(idx)));
            }
        }
    }
    let mut variables: BTreeSet<LaurentPoly> = BTreeSet::new();
    for node in &nodes {
        for p in &node.cluster[..node.mutable_count()] {
            variables.insert(p.clone());
        }
    }
    Ok(ExchangeGraph {
        nodes,
        edges: edges.into_iter().collect(),
        variables: variables.into_iter().collect(),
    })
}

impl ExchangeGraph {
    /// Node label: the sorted signed denominator vectors of the cluster.
    fn label(&self, idx: usize) -> Vec<String> {
        let node = &self.nodes[idx];
        let mut dens: Vec<String> = node.cluster[..node.mutable_count()]
            .iter()
            .map(|p| denominator_signed(p).to_string())
            .collect();
        dens.sort();
        dens
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph exchange {\n");
        for i in 0..self.nodes.len() {
            out.push_str(&format!("  n{} [label=\"{}\"];\n", i, self.label(i).join(" ")));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("  n{a} -- n{b};\n"));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<serde_json::Value> = (0..self.nodes.len())
            .map(|i| serde_json::json!({ "id": i, "label": self.label(i) }))
            .collect();
        let links: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|&(a, b)| serde_json::json!({ "source": a, "target": b }))
            .collect();
        serde_json::json!({ "nodes": nodes, "links": links })
    }
}

/// Cross-check between the two realizations: cluster variables from the
/// exchange graph versus Laurent values of indecomposable objects, and
/// clusters versus maximal rigid objects.
pub struct VariablesReport {
    pub node_count: usize,
    pub edge_count: usize,
    pub variable_count: usize,
    pub object_count: usize,
    pub tilting_count: usize,
    pub variables_match: bool,
    pub clusters_match: bool,
}

impl VariablesReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "nodes": self.node_count,
            "edges": self.edge_count,
            "cluster_variables": self.variable_count,
            "indecomposable_objects": self.object_count,
            "tilting_objects": self.tilting_count,
            "variables_match": self.variables_match,
            "clusters_match": self.clusters_match,
        })
    }
}

pub fn variables_vs_objects(ctx: &QuiverContext) -> Result<VariablesReport> {
    let graph = exchange_graph(ctx, &Seed::initial(ctx))?;
    let graph_vars: BTreeSet<LaurentPoly> = graph.variables.iter().cloned().collect();
    let mut object_vars: BTreeSet<LaurentPoly> = BTreeSet::new();
    for root in &ctx.roots {
        object_vars.insert(x_of(ctx, &CCObject::single_module(root.clone()))?);
    }
    for i in 0..ctx.rank() {
        object_vars.insert(x_of(ctx, &CCObject::single_sp(i))?);
    }
    let variables_match = graph_vars == object_vars;

    let tilts = tilting_objects(ctx)?;
    let node_keys: BTreeSet<BTreeSet<LaurentPoly>> =
        graph.nodes.iter().map(|s| s.key()).collect();
    let mut clusters_match = tilts.len() == graph.nodes.len();
    for t in &tilts {
        let mut key: BTreeSet<LaurentPoly> = BTreeSet::new();
        for (piece, mult) in t.summands() {
            debug_assert_eq!(mult, 1);
            key.insert(x_of(ctx, &piece)?);
        }
        if !node_keys.contains(&key) {
            clusters_match = false;
        }
    }
    Ok(VariablesReport {
        node_count: graph.nodes.len(),
        edge_count: graph.edges.len(),
        variable_count: graph_vars.len(),
        object_count: object_vars.len(),
        tilting_count: tilts.len(),
        variables_match,
        clusters_match,
    })
}
