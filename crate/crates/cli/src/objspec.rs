//! Parser for the object specification mini-language used on the command line.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! object  := "0" | term ("+" term)*
//! term    := (mult "*")? atom
//! mult    := positive integer
//! atom    := "S" idx | "P" idx | "I" idx | "SP" idx | "root:" vector
//! idx     := 1-based vertex number
//! vector  := "[" int ("," int)* "]"
//! ```
//!
//! `S`/`P`/`I` name the simple, projective, and injective module at a vertex;
//! `SP` names a shifted projective; `root:[...]` addresses an indecomposable
//! module directly by its dimension vector. Examples: `2*S1+S2`, `SP2`,
//! `root:[1,2,1,1] + P1`.

use cluster_core::category::CCObject;
use cluster_core::context::QuiverContext;
use cluster_core::quiver::IntVec;
use cluster_core::rep::IsoType;
use cluster_core::{Error, Result};

/// Parse a cluster-category object description such as `2*S1+SP2`.
pub fn parse_object(ctx: &QuiverContext, spec: &str) -> Result<CCObject> {
    let trimmed = spec.trim();
    if trimmed.is_empty() {
        return Err(Error::InvalidInput("empty object specification".into()));
    }
    if trimmed == "0" {
        return Ok(CCObject::zero());
    }
    let mut out = CCObject::zero();
    for raw_term in trimmed.split('+') {
        let term = raw_term.trim();
        if term.is_empty() {
            return Err(Error::InvalidInput(format!(
                "empty summand in object specification '{spec}'"
            )));
        }
        let (mult, atom) = split_multiplicity(term)?;
        add_atom(ctx, &mut out, atom, mult)?;
    }
    Ok(out)
}

/// Parse a description that must denote a module (no shifted projectives).
pub fn parse_module(ctx: &QuiverContext, spec: &str) -> Result<IsoType> {
    let obj = parse_object(ctx, spec)?;
    if !obj.sp.is_empty() {
        return Err(Error::InvalidInput(format!(
            "'{spec}' contains shifted projectives; a module was expected"
        )));
    }
    Ok(obj.module)
}

fn split_multiplicity(term: &str) -> Result<(u32, &str)> {
    match term.split_once('*') {
        Some((count, atom)) => {
            let mult: u32 = count.trim().parse().map_err(|_| {
                Error::InvalidInput(format!("invalid multiplicity '{}'", count.trim()))
            })?;
            if mult == 0 {
                return Err(Error::InvalidInput(format!(
                    "zero multiplicity in '{term}'"
                )));
            }
            Ok((mult, atom.trim()))
        }
        None => Ok((1, term)),
    }
}

fn add_atom(ctx: &QuiverContext, out: &mut CCObject, atom: &str, mult: u32) -> Result<()> {
    let rank = ctx.rank();
    if let Some(rest) = atom.strip_prefix("root:") {
        let v = IntVec::parse(rest.trim())?;
        ctx.index_of(&v).map_err(|_| {
            Error::InvalidInput(format!("'{}' is not a root of this quiver", rest.trim()))
        })?;
        out.module.add(v, mult);
        return Ok(());
    }
    if let Some(rest) = atom.strip_prefix("SP") {
        let idx = parse_index(rest, atom, rank)?;
        out.add_sp(idx - 1, mult);
        return Ok(());
    }
    if let Some(rest) = atom.strip_prefix('S') {
        let idx = parse_index(rest, atom, rank)?;
        out.module.add(IntVec::unit(rank, idx - 1), mult);
        return Ok(());
    }
    if let Some(rest) = atom.strip_prefix('P') {
        let idx = parse_index(rest, atom, rank)?;
        out.module.add(ctx.proj_dims[idx - 1].clone(), mult);
        return Ok(());
    }
    if let Some(rest) = atom.strip_prefix('I') {
        let idx = parse_index(rest, atom, rank)?;
        out.module.add(ctx.inj_dims[idx - 1].clone(), mult);
        return Ok(());
    }
    Err(Error::InvalidInput(format!(
        "unrecognized object atom '{atom}' (expected S<i>, P<i>, I<i>, SP<i>, root:[...], or 0)"
    )))
}

fn parse_index(rest: &str, atom: &str, rank: usize) -> Result<usize> {
    let idx: usize = rest
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("invalid vertex index in '{atom}'")))?;
    if idx == 0 || idx > rank {
        return Err(Error::InvalidInput(format!(
            "vertex index {idx} out of range 1..={rank} in '{atom}'"
        )));
    }
    Ok(idx)
}

/// Human-readable name for an object, using vertex-based names where they
/// exist (`S1`, `P2`, `I2`, `SP1`) and dimension vectors otherwise.
pub fn object_name(ctx: &QuiverContext, x: &CCObject) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (root, &mult) in &x.module.module {
        let name = ctx.name_of_root(root);
        if mult == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{mult}*{name}"));
        }
    }
    for (&i, &mult) in &x.sp {
        if mult == 1 {
            parts.push(format!("SP{}", i + 1));
        } else {
            parts.push(format!("{mult}*SP{}", i + 1));
        }
    }
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use cluster_core::quiver::{preset_quiver, Preset};

    fn ctx(label: &str) -> QuiverContext {
        QuiverContext::new(preset_quiver(label, Preset::Alternating).unwrap()).unwrap()
    }

    #[test]
    fn named_atoms_resolve_to_the_expected_modules() {
        let c = ctx("A3");
        let s2 = parse_object(&c, "S2").unwrap();
        assert_eq!(s2, CCObject::single_module(IntVec::unit(3, 1)));

        let p1 = parse_object(&c, "P1").unwrap();
        assert_eq!(p1, CCObject::single_module(c.proj_dims[0].clone()));

        let i2 = parse_object(&c, "I2").unwrap();
        assert_eq!(i2, CCObject::single_module(c.inj_dims[1].clone()));

        let sp3 = parse_object(&c, " SP3 ").unwrap();
        assert_eq!(sp3, CCObject::single_sp(2));

        assert_eq!(parse_object(&c, "0").unwrap(), CCObject::zero());
    }

    #[test]
    fn sums_multiplicities_and_root_vectors_combine() {
        let c = ctx("A2");
        let obj = parse_object(&c, "2*S1 + S2 + 3*SP2").unwrap();
        let mut expect = CCObject::zero();
        expect.module.add(IntVec::unit(2, 0), 2);
        expect.module.add(IntVec::unit(2, 1), 1);
        expect.add_sp(1, 3);
        assert_eq!(obj, expect);

        let via_root = parse_object(&c, "root:[1,1]").unwrap();
        let direct = CCObject::single_module(IntVec::parse("[1,1]").unwrap());
        assert_eq!(via_root, direct);

        // The same atom repeated accumulates.
        let doubled = parse_object(&c, "S1+S1").unwrap();
        assert_eq!(doubled, parse_object(&c, "2*S1").unwrap());
    }

    #[test]
    fn malformed_specifications_are_rejected() {
        let c = ctx("A2");
        for bad in [
            "", "S0", "S3", "SP9", "Q1", "root:[1]", "root:[2,2]", "0*S1", "x*S1", "S1+",
        ] {
            assert!(parse_object(&c, bad).is_err(), "accepted {bad:?}");
        }
        // Modules must not contain shifted projectives.
        assert!(parse_module(&c, "SP1").is_err());
        assert!(parse_module(&c, "S1+S2").is_ok());
    }

    #[test]
    fn names_round_trip_through_the_parser() {
        let c = ctx("A3");
        for spec in ["S1", "P2", "2*S1 + S3", "SP1 + 2*SP2", "root:[1,1,0]"] {
            let obj = parse_object(&c, spec).unwrap();
            let name = object_name(&c, &obj);
            assert_eq!(parse_object(&c, &name).unwrap(), obj, "spec {spec}");
        }
        assert_eq!(object_name(&c, &CCObject::zero()), "0");
    }
}
