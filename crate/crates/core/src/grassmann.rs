//! Submodule Grassmannians: exact point counts over prime fields, Lagrange
//! interpolation to an integer polynomial in q, and Euler characteristics
//! via evaluation at q = 1.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::context::QuiverContext;
use crate::error::{Error, Result};
use crate::ffalg::{gaussian_binomial, subspaces, FMatrix};
use crate::quiver::IntVec;
use crate::rep::{IsoType, Rep};

/// Integer polynomial in q, dense coefficients low-to-high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct QPoly {
    pub coeffs: Vec<i64>,
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: i64) -> QPoly {
        QPoly { coeffs: vec![c] }.normalized()
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> QPoly {
        QPoly { coeffs }.normalized()
    }

    fn normalized(mut self) -> QPoly {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval_big(&self, x: i64) -> BigInt {
        let mut acc = BigInt::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Value at q = 1 (the Euler characteristic when self is a point count).
    pub fn at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(0)
                    + other.coeffs.get(i).copied().unwrap_or(0)
            })
            .collect();
        QPoly { coeffs }.normalized()
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).copied().unwrap_or(0)
                    - other.coeffs.get(i).copied().unwrap_or(0)
            })
            .collect();
        QPoly { coeffs }.normalized()
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly { coeffs }.normalized()
    }

    /// 1 + q + … + q^{d−1}, the projective-space point count of dimension d.
    pub fn projective_count(d: usize) -> QPoly {
        QPoly {
            coeffs: vec![1; d],
        }
    }
}

impl std::fmt::Display for QPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Number of subrepresentation tuples of `m` with dimension vector `e`:
/// subspaces U_i ⊆ M_i with dim U_i = e_i and M_a(U_s) ⊆ U_t per arrow.
pub fn count_submodules(m: &Rep, e: &IntVec, budget: u128) -> Result<u128> {
    walk_submodules(m, e, budget, &mut |_| Ok(()))
}

/// Enumerate the same subrepresentations, calling `visit` once per complete
/// placement with the per-vertex basis column matrices (all entries `Some`).
/// Returns the number of placements visited.
pub(crate) fn walk_submodules(
    m: &Rep,
    e: &IntVec,
    budget: u128,
    visit: &mut dyn FnMut(&[Option<FMatrix>]) -> Result<()>,
) -> Result<u128> {
    let n = m.dims.len();
    if e.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "ambient has {n} vertices, e has {}",
            e.len()
        )));
    }
    for i in 0..n {
        if e[i] < 0 || e[i] > m.dims[i] as i64 {
            return Err(Error::InvalidInput(format!(
                "e = {e} out of range for dimension vector {}",
                m.dim_vec()
            )));
        }
    }
    // A priori work estimate: product of Gaussian binomials (saturating).
    let mut estimate: u128 = 1;
    for i in 0..n {
        match gaussian_binomial(m.dims[i], e[i] as usize, m.p) {
            Some(b) => estimate = estimate.saturating_mul(b),
            None => estimate = u128::MAX,
        }
    }
    // Order vertices to check arrow stability as early as possible: greedily
    // pick the vertex with the most arrows into the already-placed set.
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let mut chosen = usize::MAX;
        let mut chosen_key = (0usize, 0usize, 0usize);
        for v in 0..n {
            if placed[v] {
                continue;
            }
            let linked = m
                .arrows
                .iter()
                .filter(|&&(s, t)| (s == v && placed[t]) || (t == v && placed[s]))
                .count();
            let incident = m
                .arrows
                .iter()
                .filter(|&&(s, t)| s == v || t == v)
                .count();
            let key = (linked, incident, n - v);
            if chosen == usize::MAX || key > chosen_key {
                chosen = v;
                chosen_key = key;
            }
        }
        placed[chosen] = true;
        order.push(chosen);
    }

    let mut visited: u128 = 0;
    let mut bases: Vec<Option<FMatrix>> = vec![None; n];
    let count = count_rec(
        m,
        e,
        &order,
        0,
        &mut bases,
        budget,
        estimate,
        &mut visited,
        visit,
    )?;
    Ok(count)
}

#[allow(clippy::too_many_arguments)]
fn count_rec(
    m: &Rep,
    e: &IntVec,
    order: &[usize],
    depth: usize,
    bases: &mut Vec<Option<FMatrix>>,
    budget: u128,
    estimate: u128,
    visited: &mut u128,
    visit: &mut dyn FnMut(&[Option<FMatrix>]) -> Result<()>,
) -> Result<u128> {
    if depth == order.len() {
        visit(bases)?;
        return Ok(1);
    }
    let v = order[depth];
    let stream = subspaces(m.dims[v], e[v] as usize, m.p, budget)?;
    let mut total = 0u128;
    for basis in stream {
        *visited += 1;
        if *visited > budget {
            return Err(Error::BudgetExceeded {
                what: "submodule enumeration".into(),
                estimate,
                cap: budget,
            });
        }
        let mat = basis_matrix(&basis, m.dims[v], m.p);
        bases[v] = Some(mat);
        if arrows_stable(m, v, bases) {
            total += count_rec(
                m,
                e,
                order,
                depth + 1,
                bases,
                budget,
                estimate,
                visited,
                visit,
            )?;
        }
        bases[v] = None;
    }
    Ok(total)
}

/// Column matrix of basis row-vectors.
fn basis_matrix(basis: &[Vec<u64>], ambient: usize, p: u64) -> FMatrix {
    let mut mat = FMatrix::zeros(ambient, basis.len(), p);
    for (c, vector) in basis.iter().enumerate() {
        for (r, &x) in vector.iter().enumerate() {
            mat.set(r, c, x);
        }
    }
    mat
}

/// Check every arrow whose endpoints are both chosen and touch vertex `v`.
fn arrows_stable(m: &Rep, v: usize, bases: &[Option<FMatrix>]) -> bool {
    for (k, &(s, t)) in m.arrows.iter().enumerate() {
        if s != v && t != v {
            continue;
        }
        let (bs, bt) = match (&bases[s], &bases[t]) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        let image = m.mats[k].mul(bs);
        if bt.solve_columns(&image).is_none() {
            return false;
        }
    }
    true
}

fn next_prime(mut n: u64) -> u64 {
    loop {
        n += 1;
        let mut d = 2;
        let mut prime = n >= 2;
        while d * d <= n {
            if n % d == 0 {
                prime = false;
                break;
            }
            d += 1;
        }
        if prime {
            return n;
        }
    }
}

/// The configured primes, extended with further primes until `want` are
/// available.
pub fn counting_primes(ctx: &QuiverContext, want: usize) -> Vec<u64> {
    let mut primes = ctx.config.primes.clone();
    primes.sort_unstable();
    while primes.len() < want {
        primes.push(next_prime(*primes.last().unwrap_or(&1)));
    }
    primes.truncate(want);
    primes
}

/// Exact Lagrange interpolation through (x_i, y_i); errors unless every
/// coefficient is an integer fitting i64.
pub fn interpolate_integer_poly(points: &[(u64, u128)]) -> Result<QPoly> {
    let k = points.len();
    let mut acc = vec![BigRational::zero(); k];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        // Build the i-th Lagrange basis polynomial scaled by y_i.
        let mut basis = vec![BigRational::zero(); k];
        basis[0] = BigRational::from(BigInt::from(yi));
        let mut deg = 0usize;
        for (j, &(xj, _)) in points.iter().enumerate() {
            if j == i {
                continue;
            }
            let denom = BigRational::from(BigInt::from(xi as i64 - xj as i64));
            // basis *= (x − x_j) / (x_i − x_j)
            let mut next = vec![BigRational::zero(); k];
            for (d, val) in basis.iter().enumerate().take(deg + 1) {
                if val.is_zero() {
                    continue;
                }
                let scaled = val / &denom;
                next[d + 1] += &scaled;
                next[d] -= &scaled * BigRational::from(BigInt::from(xj));
            }
            basis = next;
            deg += 1;
        }
        for d in 0..k {
            acc[d] += &basis[d];
        }
    }
    let mut coeffs = Vec::with_capacity(k);
    for (d, c) in acc.iter().enumerate() {
        if !c.is_integer() {
            return Err(Error::Interpolation(format!(
                "coefficient of q^{d} is non-integral ({c})"
            )));
        }
        let as_int = c.to_integer();
        let small = as_int.to_i64().ok_or_else(|| {
            Error::Interpolation(format!("coefficient of q^{d} overflows ({as_int})"))
        })?;
        coeffs.push(small);
    }
    Ok(QPoly::from_coeffs(coeffs))
}

/// The point-count polynomial of Gr_e over the finite fields: counts at
/// enough primes for the degree bound D = Σᵢ eᵢ(dᵢ − eᵢ), interpolated
/// exactly, then verified against a held-out prime.
pub fn grassmann_poly(ctx: &QuiverContext, t: &IsoType, e: &IntVec) -> Result<QPoly> {
    let d = t.dim_vec(ctx.rank());
    let degree_bound: i64 = (0..ctx.rank()).map(|i| e[i] * (d[i] - e[i])).sum();
    if degree_bound < 0 {
        return Err(Error::InvalidInput(format!(
            "e = {e} is not between 0 and {d}"
        )));
    }
    let need = degree_bound as usize + 2; // D+1 nodes plus one held-out
    let primes = counting_primes(ctx, need);
    let budget = ctx.config.grassmann_budget;
    let mut points = Vec::with_capacity(need - 1);
    for &p in primes.iter().take(need - 1) {
        let rep = ctx.rep_of(t, p)?;
        points.push((p, count_submodules(&rep, e, budget)?));
    }
    let poly = interpolate_integer_poly(&points)?;
    let held_out = primes[need - 1];
    let fresh = count_submodules(&ctx.rep_of(t, held_out)?, e, budget)?;
    if poly.eval_big(held_out as i64) != BigInt::from(fresh) {
        return Err(Error::Interpolation(format!(
            "held-out prime {held_out} disagrees: poly gives {}, direct count {fresh}",
            poly.eval_big(held_out as i64)
        )));
    }
    Ok(poly)
}

/// χ(Gr_e(M)): the count polynomial at q = 1. Nonnegative, and strictly
/// positive whenever the variety is nonempty.
pub fn euler_char(ctx: &QuiverContext, t: &IsoType, e: &IntVec) -> Result<i64> {
    let poly = grassmann_poly(ctx, t, e)?;
    let chi = poly.at_one();
    if chi < 0 {
        return Err(Error::Internal(format!(
            "negative Euler characteristic {chi} for e={e}"
        )));
    }
    if chi == 0 && !poly.is_zero() {
        return Err(Error::Internal(format!(
            "vanishing Euler characteristic on a nonempty variety (e={e})"
        )));
    }
    Ok(chi)
}

/// All e with 0 ≤ e ≤ d, lexicographic.
pub fn sub_dimension_vectors(d: &IntVec) -> Vec<IntVec> {
    let mut out = vec![IntVec::zeros(d.len())];
    for i in 0..d.len() {
        let mut next = Vec::with_capacity(out.len() * (d[i] as usize + 1));
        for base in &out {
            for v in 0..=d[i] {
                let mut e = base.clone();
                e[i] = v;
                next.push(e);
            }
        }
        out = next;
    }
    out
}
