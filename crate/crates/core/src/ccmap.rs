//! The character map from category objects to Laurent polynomials: shifted
//! projectives go to plain variables, modules expand as Euler-characteristic
//! weighted sums over submodule dimension vectors, and direct sums multiply.

use num_bigint::BigInt;
use num_traits::One;

use crate::category::CCObject;
use crate::context::QuiverContext;
use crate::error::Result;
use crate::grassmann::{euler_char, sub_dimension_vectors};
use crate::laurent::LaurentPoly;
use crate::quiver::{euler_form, IntVec};
use crate::rep::IsoType;

/// x^v: the monomial whose exponent at vertex i is ⟨α_i, v⟩. Sends the
/// dimension vector of the injective at j to the plain variable x_j.
pub fn x_power(ctx: &QuiverContext, v: &IntVec) -> LaurentPoly {
    let n = ctx.rank();
    let mut exp = IntVec::zeros(n);
    for i in 0..n {
        exp[i] = euler_form(&ctx.quiver, &ctx.quiver.simple(i), v);
    }
    LaurentPoly::monomial(exp, BigInt::one())
}

fn x_of_module_root(ctx: &QuiverContext, root: &IntVec) -> Result<LaurentPoly> {
    if let Some(hit) = ctx.laurent_cache.lock().unwrap().get(root) {
        return Ok(hit.clone());
    }
    let n = ctx.rank();
    let t = IsoType::single(root.clone());
    let mut out = LaurentPoly::zero(n);
    for e in sub_dimension_vectors(root) {
        let chi = euler_char(ctx, &t, &e)?;
        if chi == 0 {
            continue;
        }
        let rest = root.sub(&e);
        let mut exp = IntVec::zeros(n);
        for i in 0..n {
            let alpha = ctx.quiver.simple(i);
            exp[i] =
                -euler_form(&ctx.quiver, &e, &alpha) - euler_form(&ctx.quiver, &alpha, &rest);
        }
        out = out.add(&LaurentPoly::monomial(exp, BigInt::from(chi)));
    }
    ctx.laurent_cache
        .lock()
        .unwrap()
        .insert(root.clone(), out.clone());
    Ok(out)
}

/// The Laurent value of an object: the variable x_i for each shifted
/// projective, the submodule-sum expansion for each indecomposable module
/// summand, multiplied across the direct sum.
pub fn x_of(ctx: &QuiverContext, x: &CCObject) -> Result<LaurentPoly> {
    let n = ctx.rank();
    let mut out = LaurentPoly::one(n);
    for (root, &mult) in &x.module.module {
        let base = x_of_module_root(ctx, root)?;
        for _ in 0..mult {
            out = out.mul(&base);
        }
    }
    for (&i, &mult) in &x.sp {
        out = out.mul_monomial(&IntVec::unit(n, i).scale(mult as i64), &BigInt::one());
    }
    Ok(out)
}

/// Exponent vector of the monomial denominator in lowest terms: the
/// componentwise maximum of the negated exponents, clipped at zero.
pub fn denominator(p: &LaurentPoly) -> IntVec {
    match p.min_exponent() {
        Some(min) => IntVec(min.0.iter().map(|&e| (-e).max(0)).collect()),
        None => IntVec::zeros(p.n),
    }
}

/// Unclipped variant: −(componentwise minimum exponent). Distinguishes the
/// plain variables (vertex i ↦ −e_i) from each other and from constants, so
/// it serves as a graph label.
pub fn denominator_signed(p: &LaurentPoly) -> IntVec {
    match p.min_exponent() {
        Some(min) => min.neg(),
        None => IntVec::zeros(p.n),
    }
}
