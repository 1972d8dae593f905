//! Sparse multivariate Laurent polynomials with exact integer coefficients.
//! Exponent vectors are ordered lexicographically, which gives every
//! polynomial a canonical form and a well-defined leading term.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quiver::IntVec;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct LaurentPoly {
    /// Number of variables; every exponent vector has this length.
    pub n: usize,
    /// Exponent vector → nonzero coefficient.
    pub terms: BTreeMap<IntVec, BigInt>,
}

impl LaurentPoly {
    pub fn zero(n: usize) -> LaurentPoly {
        LaurentPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> LaurentPoly {
        LaurentPoly::monomial(IntVec::zeros(n), BigInt::one())
    }

    pub fn constant(n: usize, c: BigInt) -> LaurentPoly {
        LaurentPoly::monomial(IntVec::zeros(n), c)
    }

    pub fn monomial(exp: IntVec, coef: BigInt) -> LaurentPoly {
        let n = exp.len();
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        LaurentPoly { n, terms }
    }

    /// The variable x_{i+1} (0-based index) in n variables.
    pub fn variable(i: usize, n: usize) -> LaurentPoly {
        LaurentPoly::monomial(IntVec::unit(n, i), BigInt::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&IntVec::zeros(self.n))
                .map_or(false, |c| c.is_one())
    }

    pub fn coeff(&self, exp: &IntVec) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Lexicographically largest exponent with its coefficient.
    pub fn leading(&self) -> Option<(&IntVec, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn support(&self) -> Vec<IntVec> {
        self.terms.keys().cloned().collect()
    }

    /// Componentwise minimum of the exponents (the negated denominator).
    pub fn min_exponent(&self) -> Option<IntVec> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let mut min = first.clone();
        for e in it {
            for i in 0..self.n {
                if e[i] < min[i] {
                    min[i] = e[i];
                }
            }
        }
        Some(min)
    }

    pub(crate) fn insert_term(terms: &mut BTreeMap<IntVec, BigInt>, exp: IntVec, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        match terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + coef;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_term(&mut terms, e.clone(), c.clone());
        }
        LaurentPoly { n: self.n, terms }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.n, other.n, "variable count mismatch");
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                Self::insert_term(&mut terms, e1.add(e2), c1 * c2);
            }
        }
        LaurentPoly { n: self.n, terms }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.n);
        }
        LaurentPoly {
            n: self.n,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiply by a single monomial (exact, invertible).
    pub fn mul_monomial(&self, exp: &IntVec, coef: &BigInt) -> LaurentPoly {
        if coef.is_zero() {
            return LaurentPoly::zero(self.n);
        }
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(exp), c * coef))
                .collect(),
        }
    }

    /// Exact division: self = q · divisor with integer coefficients, or an
    /// error. Both polynomials are shifted to nonnegative exponents and the
    /// quotient is recovered by lexicographic leading-term elimination,
    /// which terminates because lex is a well-order on monomials.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly> {
        assert_eq!(self.n, divisor.n, "variable count mismatch");
        if divisor.is_zero() {
            return Err(Error::DivisionNotExact("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero(self.n));
        }
        let shift_self = self.min_exponent().expect("nonzero");
        let shift_div = divisor.min_exponent().expect("nonzero");
        let a = self.mul_monomial(&shift_self.neg(), &BigInt::one());
        let b = divisor.mul_monomial(&shift_div.neg(), &BigInt::one());
        let mut rem = a;
        let mut quotient = BTreeMap::new();
        let (lead_exp, lead_coef) = {
            let (e, c) = b.leading().expect("nonzero");
            (e.clone(), c.clone())
        };
        while let Some((r_exp, r_coef)) = rem.leading() {
            let step_exp = r_exp.sub(&lead_exp);
            if !step_exp.is_nonneg() {
                return Err(Error::DivisionNotExact(format!(
                    "leading monomial {r_exp} not divisible by {lead_exp}"
                )));
            }
            let (q, r) = r_coef.div_rem(&lead_coef);
            if !r.is_zero() {
                return Err(Error::DivisionNotExact(format!(
                    "coefficient {r_coef} not divisible by {lead_coef}"
                )));
            }
            let step = b.mul_monomial(&step_exp, &q);
            rem = rem.sub(&step);
            Self::insert_term(&mut quotient, step_exp, q);
        }
        let q = LaurentPoly {
            n: self.n,
            terms: quotient,
        };
        // Undo the monomial shifts: self/divisor = x^{s_a − s_b} · (A/B).
        Ok(q.mul_monomial(&shift_self.sub(&shift_div), &BigInt::one()))
    }

    /// Value at x₁ = … = x_n = 1: the sum of the coefficients.
    pub fn at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                serde_json::json!({
                    "exp": e.0.clone(),
                    "coef": c.to_string(),
                })
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    pub fn from_json(n: usize, v: &serde_json::Value) -> Result<LaurentPoly> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::InvalidInput("polynomial JSON must be an array".into()))?;
        let mut out = LaurentPoly::zero(n);
        for entry in arr {
            let exp_arr = entry
                .get("exp")
                .and_then(|e| e.as_array())
                .ok_or_else(|| Error::InvalidInput("term needs an `exp` array".into()))?;
            let exp = IntVec(
                exp_arr
                    .iter()
                    .map(|x| {
                        x.as_i64()
                            .ok_or_else(|| Error::InvalidInput("bad exponent".into()))
                    })
                    .collect::<Result<Vec<i64>>>()?,
            );
            if exp.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "exponent length {} vs {n}",
                    exp.len()
                )));
            }
            let coef_str = entry
                .get("coef")
                .and_then(|c| c.as_str())
                .ok_or_else(|| Error::InvalidInput("term needs a string `coef`".into()))?;
            let coef: BigInt = coef_str
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad coefficient `{coef_str}`")))?;
            out = out.add(&LaurentPoly::monomial(exp, coef));
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, coef) in self.terms.iter().rev() {
            let negative = coef.is_negative();
            let abs = coef.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let vars: Vec<String> = exp
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, vars.join("*"))?;
            }
        }
        Ok(())
    }
}
