//! Grading forms on the Laurent ring that turn cluster variables into
//! polynomials with a single dominant monomial: search for a valid form,
//! graded leading terms, exact sampling of the fan of tilting cones, and the
//! leading-term statement for principal coefficients.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{lambda_vector, tilting_objects};
use crate::context::QuiverContext;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::mutation::{exchange_graph, Seed};
use crate::quiver::{b_matrix, IntVec, Quiver};

/// An integer linear form that is strictly negative on every edge direction
/// Bᵀαᵢ of the support cones. Grading exponents by such a form makes the
/// support cone of each cluster variable hang strictly below its apex, so
/// leading terms are well defined and multiplicative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EpsilonForm {
    pub coeffs: IntVec,
}

impl EpsilonForm {
    /// The grade of an exponent vector.
    pub fn value(&self, v: &IntVec) -> i64 {
        self.coeffs.dot(v)
    }

    /// Strict negativity on all cone edge directions (the rows of the
    /// exchange matrix).
    pub fn is_valid(&self, q: &Quiver) -> bool {
        let b = b_matrix(q);
        let n = q.rank();
        (0..n).all(|i| (0..n).map(|j| self.coeffs[j] * b.rows[i][j]).sum::<i64>() < 0)
    }
}

/// Search for a valid form: the source/sink sign pattern first (sources
/// positive, sinks negative — an immediate hit for alternating
/// orientations), then exact enumeration of integer boxes of growing radius
/// up to 16. `Ok(None)` certifies that the whole box holds no valid form
/// (rank one, or a linear A₃, where two cone edges are opposite). A box
/// too large to exhaust reports `BudgetExceeded` rather than guessing.
pub fn find_epsilon(ctx: &QuiverContext) -> Result<Option<EpsilonForm>> {
    let q = &ctx.quiver;
    let n = q.rank();
    let mut pattern = IntVec::zeros(n);
    for v in 0..n {
        if q.is_source(v) {
            pattern[v] = 1;
        } else if q.is_sink(v) {
            pattern[v] = -1;
        }
    }
    let candidate = EpsilonForm { coeffs: pattern };
    if candidate.is_valid(q) {
        return Ok(Some(candidate));
    }
    const RADIUS: i64 = 16;
    const CANDIDATE_CAP: u128 = 2_000_000;
    let box_size = |r: i64| (2 * r as u128 + 1).pow(n as u32);
    for r in 1..=RADIUS {
        if box_size(r) > CANDIDATE_CAP {
            return Err(Error::BudgetExceeded {
                what: "filtration form search".into(),
                estimate: box_size(RADIUS),
                cap: CANDIDATE_CAP,
            });
        }
        // Odometer over [−r, r]^n. Smaller boxes are rescanned, which is
        // cheap next to the outermost pass.
        let mut eps = vec![-r; n];
        loop {
            let form = EpsilonForm {
                coeffs: IntVec(eps.clone()),
            };
            if form.is_valid(q) {
                return Ok(Some(form));
            }
            let mut k = 0;
            while k < n {
                eps[k] += 1;
                if eps[k] <= r {
                    break;
                }
                eps[k] = -r;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    Ok(None)
}

/// The dominant term of a Laurent polynomial under a grading form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Leading {
    pub exponent: IntVec,
    pub coefficient: BigInt,
    /// Whether the top grade is attained by a single support point.
    pub unique: bool,
}

/// Largest support point in the (grade, lex) order with its coefficient.
pub fn graded_leading(p: &LaurentPoly, eps: &EpsilonForm) -> Result<Leading> {
    if p.is_zero() {
        return Err(Error::InvalidInput(
            "the zero polynomial has no leading term".into(),
        ));
    }
    let mut best: Option<(i64, &IntVec)> = None;
    let mut top_count = 0usize;
    for exp in p.terms.keys() {
        let g = eps.value(exp);
        match best {
            None => {
                best = Some((g, exp));
                top_count = 1;
            }
            Some((bg, bexp)) => {
                if g > bg {
                    best = Some((g, exp));
                    top_count = 1;
                } else if g == bg {
                    top_count += 1;
                    if exp > bexp {
                        best = Some((g, exp));
                    }
                }
            }
        }
    }
    let (_, exp) = best.unwrap();
    Ok(Leading {
        exponent: exp.clone(),
        coefficient: p.terms[exp].clone(),
        unique: top_count == 1,
    })
}

/// Summary of exact-arithmetic sampling of the fan of tilting cones.
#[derive(Clone, Debug)]
pub struct FanReport {
    pub samples: usize,
    pub unique_cone_hits: usize,
    pub boundary_resamples: usize,
    pub cone_count: usize,
}

impl FanReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "samples": self.samples,
            "unique_cone_hits": self.unique_cone_hits,
            "boundary_resamples": self.boundary_resamples,
            "cone_count": self.cone_count,
        })
    }
}

enum ConePosition {
    Interior,
    Boundary,
    Outside,
}

/// Solve Λa = x for the cone with columns `cols` and classify the point by
/// the signs of the coordinates. The matrix must be invertible.
fn cone_position(cols: &[Vec<BigRational>], x: &[BigRational], n: usize) -> ConePosition {
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
            row.push(x[r].clone());
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .expect("cone matrix is invertible");
        aug.swap(col, piv);
        let p = aug[col][col].clone();
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let f = &aug[r][col] / &p;
            for c in col..=n {
                let sub = &f * &aug[col][c];
                aug[r][c] = &aug[r][c] - &sub;
            }
        }
    }
    let mut boundary = false;
    for r in 0..n {
        let a = &aug[r][n] / &aug[r][r];
        if a.is_negative() {
            return ConePosition::Outside;
        }
        if a.is_zero() {
            boundary = true;
        }
    }
    if boundary {
        ConePosition::Boundary
    } else {
        ConePosition::Interior
    }
}

fn determinant(cols: &[Vec<BigRational>], n: usize) -> BigRational {
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut det = BigRational::from(BigInt::from(1));
    for col in 0..n {
        let piv = match (col..n).find(|&r| !m[r][col].is_zero()) {
            Some(p) => p,
            None => return BigRational::zero(),
        };
        if piv != col {
            m.swap(col, piv);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for c in col..n {
                let sub = &f * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
    }
    det
}

/// Sample seeded random rational points and require each to land in the
/// interior of exactly one tilting cone. Points on a cone boundary (some
/// coordinate exactly zero in the cone's basis) are resampled and tallied.
/// Every cone must be simplicial; ranks above four are out of scope for
/// this sampling argument.
pub fn fan_check(ctx: &QuiverContext, samples: usize, seed: u64) -> Result<FanReport> {
    let n = ctx.rank();
    if n > 4 {
        return Err(Error::Unsupported(format!(
            "fan sampling is restricted to rank ≤ 4, got rank {n}"
        )));
    }
    let tilts = tilting_objects(ctx)?;
    let mut cones: Vec<Vec<Vec<BigRational>>> = Vec::new();
    for t in &tilts {
        let mut cols: Vec<Vec<BigRational>> = Vec::new();
        for (s, mult) in t.summands() {
            if mult != 1 {
                return Err(Error::Internal(format!(
                    "tilting object {t} has a repeated summand"
                )));
            }
            let l = lambda_vector(ctx, &s);
            cols.push((0..n).map(|i| BigRational::from(BigInt::from(l[i]))).collect());
        }
        if cols.len() != n {
            return Err(Error::Internal(format!(
                "tilting object {t} has {} summands, expected {n}",
                cols.len()
            )));
        }
        if determinant(&cols, n).is_zero() {
            return Err(Error::Internal(format!(
                "the index vectors of {t} are linearly dependent; its cone is not simplicial"
            )));
        }
        cones.push(cols);
    }

    let mut unique_cone_hits = 0usize;
    let mut boundary_resamples = 0usize;
    for k in 0..samples {
        // One independent, reproducible stream per sample index.
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        loop {
            let x: Vec<BigRational> = (0..n)
                .map(|_| {
                    let num = rng.gen_range(-10_000i64..=10_000);
                    let den = rng.gen_range(1i64..=64);
                    BigRational::new(BigInt::from(num), BigInt::from(den))
                })
                .collect();
            let mut interior = 0usize;
            let mut on_boundary = false;
            for cols in &cones {
                match cone_position(cols, &x, n) {
                    ConePosition::Interior => interior += 1,
                    ConePosition::Boundary => on_boundary = true,
                    ConePosition::Outside => {}
                }
            }
            if on_boundary {
                boundary_resamples += 1;
                continue;
            }
            if interior == 1 {
                unique_cone_hits += 1;
            }
            break;
        }
    }
    Ok(FanReport {
        samples,
        unique_cone_hits,
        boundary_resamples,
        cone_count: cones.len(),
    })
}

/// Report on the leading terms of the cluster variables with principal
/// coefficients: every mutable variable, graded by the form pulled back
/// along the frozen-to-one specialization, must have a unique top monomial
/// with coefficient one, and specializing the frozen block to one must
/// reproduce the plain variables.
#[derive(Clone, Debug)]
pub struct ToricReport {
    pub variable_count: usize,
    pub all_unitary: bool,
    pub projection_matches: bool,
    pub offenders: Vec<String>,
}

impl ToricReport {
    pub fn passed(&self) -> bool {
        self.all_unitary && self.projection_matches
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "variable_count": self.variable_count,
            "all_unitary": self.all_unitary,
            "projection_matches": self.projection_matches,
            "offenders": self.offenders,
        })
    }
}

/// Specialize the frozen block (coordinates n and up) to one.
fn forget_frozen(p: &LaurentPoly, n: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero(n);
    for (exp, c) in &p.terms {
        LaurentPoly::insert_term(&mut out.terms, IntVec(exp.0[..n].to_vec()), c.clone());
    }
    out
}

pub fn toric_leading_check(ctx: &QuiverContext) -> Result<ToricReport> {
    let eps = find_epsilon(ctx)?.ok_or_else(|| {
        Error::Unsupported("no grading form exists for this orientation".into())
    })?;
    let n = ctx.rank();
    let lifted = exchange_graph(ctx, &Seed::with_principal_coefficients(ctx))?;
    let plain = exchange_graph(ctx, &Seed::initial(ctx))?;

    let mut all_unitary = true;
    let mut offenders = Vec::new();
    for var in &lifted.variables {
        // The pulled-back grade reads only the unfrozen block.
        let mut top_grade = i64::MIN;
        let mut top_points: Vec<&IntVec> = Vec::new();
        for exp in var.terms.keys() {
            let g: i64 = (0..n).map(|i| eps.coeffs[i] * exp[i]).sum();
            match g.cmp(&top_grade) {
                std::cmp::Ordering::Greater => {
                    top_grade = g;
                    top_points = vec![exp];
                }
                std::cmp::Ordering::Equal => top_points.push(exp),
                std::cmp::Ordering::Less => {}
            }
        }
        let unitary =
            top_points.len() == 1 && var.terms[top_points[0]] == BigInt::from(1);
        if !unitary {
            all_unitary = false;
            offenders.push(var.to_string());
        }
    }

    let projected: BTreeSet<LaurentPoly> =
        lifted.variables.iter().map(|v| forget_frozen(v, n)).collect();
    let plain_set: BTreeSet<LaurentPoly> = plain.variables.iter().cloned().collect();
    let projection_matches = projected == plain_set;

    Ok(ToricReport {
        variable_count: lifted.variables.len(),
        all_unitary,
        projection_matches,
        offenders,
    })
}
