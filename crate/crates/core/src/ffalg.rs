//! Dense exact linear algebra over small prime fields F_p.
//!
//! - [`FMatrix`]: row-major matrix with entries reduced mod p (p ≤ 64).
//! - [`FMatrix::kernel_basis`]: reduced-echelon basis of the null space.
//! - [`subspaces`]: a deterministic stream of all sub_dim-dimensional
//!   subspaces of F_p^ambient, each given by its reduced column echelon basis,
//!   guarded by a Gaussian-binomial work estimate.
//!
//! Everything here is by-value and pure; no global state.

use crate::error::{Error, Result};

/// Modular inverse by Fermat (p prime, x ≠ 0).
fn inv_mod(x: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Dense matrix over F_p, row major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FMatrix {
    pub rows: usize,
    pub cols: usize,
    pub p: u64,
    data: Vec<u64>,
}

impl FMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u64) -> Self {
        assert!(p >= 2 && p <= 64, "prime out of supported range: {}", p);
        FMatrix {
            rows,
            cols,
            p,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, p: u64) -> Self {
        let mut m = FMatrix::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<u64>>, p: u64) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = FMatrix::zeros(r, c, p);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x % self.p;
    }

    /// Entry set from a signed integer (reduced into [0, p)).
    pub fn set_signed(&mut self, i: usize, j: usize, x: i64) {
        let p = self.p as i64;
        self.set(i, j, (x.rem_euclid(p)) as u64);
    }

    pub fn transpose(&self) -> FMatrix {
        let mut t = FMatrix::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        assert_eq!(self.p, other.p, "field mismatch in mul");
        let mut m = FMatrix::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = m.get(i, j);
                    m.set(i, j, (cur + a * other.get(k, j)) % self.p);
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "shape mismatch in apply");
        (0..self.rows)
            .map(|i| {
                v.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &x)| (acc + self.get(i, j) * x) % self.p)
            })
            .collect()
    }

    /// In-place Gauss–Jordan to reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    let (a, b) = (self.get(r, j), self.get(pr, j));
                    self.set(r, j, b);
                    self.set(pr, j, a);
                }
            }
            let inv = inv_mod(self.get(r, c), p);
            for j in 0..self.cols {
                self.set(r, j, self.get(r, j) * inv % p);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let f = self.get(i, c);
                    for j in 0..self.cols {
                        let x = (self.get(i, j) + (p - f) * self.get(r, j)) % p;
                        self.set(i, j, x);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Reduced-echelon basis of {v : Mv = 0}; rank + nullity = cols.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0u64; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    // In rref: x_pc + Σ_free m[r][f] x_f = 0.
                    v[pc] = (p - m.get(r, fc)) % p;
                }
                v
            })
            .collect()
    }

    /// Column space basis in reduced column echelon form (canonical subspace
    /// representation used throughout).
    pub fn column_space_echelon(&self) -> Vec<Vec<u64>> {
        let mut t = self.transpose();
        let pivots = t.rref_in_place();
        (0..pivots.len())
            .map(|r| (0..t.cols).map(|j| t.get(r, j)).collect())
            .collect()
    }

    /// Solve A·X = RHS column by column; None if any column is inconsistent.
    pub fn solve_columns(&self, rhs: &FMatrix) -> Option<FMatrix> {
        assert_eq!(self.rows, rhs.rows, "solve_columns shape mismatch");
        assert_eq!(self.p, rhs.p, "solve_columns field mismatch");
        let p = self.p;
        // Row reduce [A | RHS] once.
        let mut aug = FMatrix::zeros(self.rows, self.cols + rhs.cols, p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            for j in 0..rhs.cols {
                aug.set(i, self.cols + j, rhs.get(i, j));
            }
        }
        let pivots = aug.rref_in_place();
        // Inconsistent iff a pivot lands in the RHS block.
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = FMatrix::zeros(self.cols, rhs.cols, p);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, aug.get(r, self.cols + j));
            }
        }
        Some(x)
    }
}

/// Projection with kernel = column space of `gens`, plus a section.
///
/// `proj` is a (ambient − rank) × ambient matrix of full row rank with
/// proj·gens = 0; `free` lists the coordinates on which the canonical section
/// (place the value on the free coordinates, zero elsewhere) lives.
pub struct CokernelProjection {
    pub proj: FMatrix,
    pub free: Vec<usize>,
}

/// Build the quotient map F_p^ambient → F_p^ambient / span(columns of gens).
pub fn cokernel_projection(gens: &FMatrix) -> CokernelProjection {
    let p = gens.p;
    let ambient = gens.rows;
    // Reduced row echelon basis of the column span.
    let mut t = gens.transpose();
    let pivots = t.rref_in_place();
    let rank = pivots.len();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let free: Vec<usize> = (0..ambient).filter(|c| !pivot_set.contains(c)).collect();
    let mut proj = FMatrix::zeros(ambient - rank, ambient, p);
    for (r, &f) in free.iter().enumerate() {
        proj.set(r, f, 1);
        for (k, &pc) in pivots.iter().enumerate() {
            // Subtract the span component: ker proj = row space of t.
            proj.set(r, pc, (p - t.get(k, f)) % p);
        }
    }
    CokernelProjection { proj, free }
}

/// Exact Gaussian binomial [a choose s]_p as u128; None on overflow.
///
/// Uses the integer Pascal recurrence [a s] = [a−1 s−1] + p^s·[a−1 s], so all
/// intermediate values are integers.
pub fn gaussian_binomial(a: usize, s: usize, p: u64) -> Option<u128> {
    if s > a {
        return Some(0);
    }
    let p = p as u128;
    // row[k] = [m choose k]_p for the current m.
    let mut row: Vec<u128> = vec![1];
    for _m in 1..=a {
        let mut next = vec![1u128];
        for k in 1..row.len() {
            let shifted = p.checked_pow(k as u32)?.checked_mul(row[k])?;
            next.push(row[k - 1].checked_add(shifted)?);
        }
        if next.len() <= _m {
            next.push(1);
        }
        row = next;
    }
    Some(row[s])
}

/// Stream of all sub_dim-dimensional subspaces of F_p^ambient.
///
/// Each subspace is produced exactly once, as its reduced column echelon basis
/// (a list of `sub_dim` vectors of length `ambient`). Enumeration walks pivot
/// column sets lexicographically, then free entries in odometer order.
pub struct SubspaceStream {
    ambient: usize,
    sub_dim: usize,
    p: u64,
    pivot_sets: Vec<Vec<usize>>,
    pivot_idx: usize,
    free_positions: Vec<(usize, usize)>,
    free_values: Vec<u64>,
    exhausted_current: bool,
}

/// All subspaces of dimension `sub_dim` in F_p^`ambient` as a stream.
///
/// The Gaussian binomial count is estimated first and checked against
/// `budget`; the budget error reports the estimate.
pub fn subspaces(
    ambient: usize,
    sub_dim: usize,
    p: u64,
    budget: u128,
) -> Result<SubspaceStream> {
    if sub_dim > ambient {
        return Err(Error::InvalidInput(format!(
            "subspace dimension {} exceeds ambient {}",
            sub_dim, ambient
        )));
    }
    let count = gaussian_binomial(ambient, sub_dim, p).ok_or_else(|| Error::BudgetExceeded {
        what: "subspaces".into(),
        estimate: u128::MAX,
        cap: budget,
    })?;
    if count > budget {
        return Err(Error::BudgetExceeded {
            what: "subspaces".into(),
            estimate: count,
            cap: budget,
        });
    }
    let mut pivot_sets = Vec::new();
    let mut choose = vec![0usize; sub_dim];
    // Lexicographic k-subsets of {0..ambient−1}.
    fn next_combination(c: &mut [usize], nvals: usize) -> bool {
        let k = c.len();
        if k == 0 {
            return false;
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if c[i] + 1 <= nvals - (k - i) {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }
    if sub_dim == 0 {
        pivot_sets.push(vec![]);
    } else {
        for (i, slot) in choose.iter_mut().enumerate() {
            *slot = i;
        }
        pivot_sets.push(choose.clone());
        while next_combination(&mut choose, ambient) {
            pivot_sets.push(choose.clone());
        }
    }
    let mut stream = SubspaceStream {
        ambient,
        sub_dim,
        p,
        pivot_sets,
        pivot_idx: 0,
        free_positions: vec![],
        free_values: vec![],
        exhausted_current: true,
    };
    stream.load_pivot_set();
    Ok(stream)
}

impl SubspaceStream {
    fn load_pivot_set(&mut self) {
        if self.pivot_idx >= self.pivot_sets.len() {
            return;
        }
        let pivots = &self.pivot_sets[self.pivot_idx];
        // Free entries of the reduced column echelon form: row r of basis
        // vector k may be nonzero when r is not a pivot row and r > pivots[k]
        // is false... — concretely: entry (k, r) is free iff r ∉ pivots and
        // r < pivots ordering allows nonzero below the pivot.
        // Convention (reduced COLUMN echelon, pivots sorted ascending): basis
        // vector k has a 1 in row pivots[k], zeros in all other pivot rows,
        // zeros in rows before pivots[k], and free entries in non-pivot rows
        // after pivots[k].
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        self.free_positions = (0..self.sub_dim)
            .flat_map(|k| {
                let pk = pivots[k];
                let pivot_set = pivot_set.clone();
                (pk + 1..self.ambient)
                    .filter(move |r| !pivot_set.contains(r))
                    .map(move |r| (k, r))
            })
            .collect();
        self.free_values = vec![0; self.free_positions.len()];
        self.exhausted_current = false;
    }

    fn current_basis(&self) -> Vec<Vec<u64>> {
        let pivots = &self.pivot_sets[self.pivot_idx];
        let mut basis = vec![vec![0u64; self.ambient]; self.sub_dim];
        for (k, &pc) in pivots.iter().enumerate() {
            basis[k][pc] = 1;
        }
        for (&(k, r), &val) in self.free_positions.iter().zip(&self.free_values) {
            basis[k][r] = val;
        }
        basis
    }
}

impl Iterator for SubspaceStream {
    type Item = Vec<Vec<u64>>;

    fn next(&mut self) -> Option<Vec<Vec<u64>>> {
        if self.pivot_idx >= self.pivot_sets.len() {
            return None;
        }
        if self.exhausted_current {
            self.pivot_idx += 1;
            if self.pivot_idx >= self.pivot_sets.len() {
                return None;
            }
            self.load_pivot_set();
        }
        let basis = self.current_basis();
        // Odometer step over free values.
        let mut i = 0;
        loop {
            if i == self.free_values.len() {
                self.exhausted_current = true;
                break;
            }
            self.free_values[i] += 1;
            if self.free_values[i] < self.p {
                break;
            }
            self.free_values[i] = 0;
            i += 1;
        }
        Some(basis)
    }
}
