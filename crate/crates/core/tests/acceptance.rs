//! End-to-end acceptance suite. One test per shipped guarantee; each asserts
//! exact values (integer/rational arithmetic throughout), enforces its
//! wall-clock budget, and prints a PASS line with the measured runtime.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cluster_core::category::{
    exceptional_from_lambda, ext1_dim_cc, is_exceptional, lambda_vector, middle_chi,
    middle_terms, module_extension_chi_elementary, module_extension_middles, CCObject,
};
use cluster_core::ccmap::{denominator, x_of};
use cluster_core::context::QuiverContext;
use cluster_core::error::Error;
use cluster_core::filtration::{fan_check, find_epsilon, graded_leading, toric_leading_check};
use cluster_core::grassmann::{euler_char, grassmann_poly, sub_dimension_vectors, QPoly};
use cluster_core::hall::{
    b_product, expand_in_basis, hall_multiply, verify_multiplication, ChainConvention,
};
use cluster_core::laurent::LaurentPoly;
use cluster_core::mutation::variables_vs_objects;
use cluster_core::quiver::{build_quiver, preset_quiver, IntVec, Preset};
use cluster_core::rep::IsoType;

fn alt(label: &str) -> QuiverContext {
    QuiverContext::new(preset_quiver(label, Preset::Alternating).unwrap()).unwrap()
}

fn lin(label: &str) -> QuiverContext {
    QuiverContext::new(preset_quiver(label, Preset::Linear).unwrap()).unwrap()
}

fn explicit(label: &str, arrows: &[(usize, usize)]) -> QuiverContext {
    QuiverContext::new(build_quiver(label, arrows).unwrap()).unwrap()
}

fn mod_obj(v: Vec<i64>) -> CCObject {
    CCObject::single_module(IntVec(v))
}

/// All indecomposable objects: one per positive root, one per shifted
/// projective.
fn indec_objects(c: &QuiverContext) -> Vec<CCObject> {
    c.roots
        .iter()
        .map(|r| CCObject::single_module(r.clone()))
        .chain((0..c.rank()).map(CCObject::single_sp))
        .collect()
}

fn finish(started: Instant, limit_s: f64, line: &str) {
    let secs = started.elapsed().as_secs_f64();
    assert!(
        secs < limit_s,
        "{line}: runtime {secs:.1}s exceeded the {limit_s}s budget"
    );
    println!("PASS {line} [{secs:.2}s]");
}

#[test]
fn a01_doubled_rank_two_pair_extension_strata() {
    let t = Instant::now();
    let c = explicit("A2", &[(2, 1)]);
    let s1 = IntVec(vec![1, 0]);
    let s2 = IntVec(vec![0, 1]);
    let p2 = IntVec(vec![1, 1]);
    let mut n = CCObject::single_module(s2.clone());
    n.module.add(s2.clone(), 1);
    let mut m = CCObject::single_module(s1.clone());
    m.module.add(s1.clone(), 1);

    // Extension classes of n by m, stratified by middle term.
    let tc = middle_terms(&c, &n, &m).unwrap();
    assert_eq!(tc.ext_dim, 4);
    let mut mixed = CCObject::single_module(s1.clone());
    mixed.module.add(s2.clone(), 1);
    mixed.module.add(p2.clone(), 1);
    let mut two_p2 = CCObject::single_module(p2.clone());
    two_p2.module.add(p2.clone(), 1);
    let mut expected = BTreeMap::new();
    expected.insert(mixed.clone(), QPoly::from_coeffs(vec![1, 2, 1]));
    expected.insert(two_p2.clone(), QPoly::from_coeffs(vec![0, -1, 0, 1]));
    assert_eq!(tc.by_middle, expected);

    // The opposite direction degenerates pairs instead of gluing them.
    let dual = middle_terms(&c, &m, &n).unwrap();
    assert_eq!(dual.ext_dim, 4);
    let mut pair = CCObject::single_module(s1.clone());
    pair.module.add(s2.clone(), 1);
    let mut expected_dual = BTreeMap::new();
    expected_dual.insert(pair, QPoly::from_coeffs(vec![1, 2, 1]));
    expected_dual.insert(CCObject::zero(), QPoly::from_coeffs(vec![0, -1, 0, 1]));
    assert_eq!(dual.by_middle, expected_dual);

    // Frozen point counts at small field sizes.
    for (q, rank_one, full_rank) in [(2, 9, 6), (3, 16, 24), (5, 36, 120), (7, 64, 336)] {
        assert_eq!(tc.by_middle[&mixed].eval_big(q), BigInt::from(rank_one));
        assert_eq!(tc.by_middle[&two_p2].eval_big(q), BigInt::from(full_rank));
    }

    // Exact product identities.
    let xs1 = x_of(&c, &mod_obj(vec![1, 0])).unwrap();
    let xs2 = x_of(&c, &mod_obj(vec![0, 1])).unwrap();
    let xp2 = x_of(&c, &mod_obj(vec![1, 1])).unwrap();
    assert_eq!(xs2.mul(&xs1), xp2.add(&LaurentPoly::one(2)));
    let lhs = x_of(&c, &n).unwrap().mul(&x_of(&c, &m).unwrap());
    let rhs = x_of(&c, &two_p2)
        .unwrap()
        .add(&xp2.scale(&BigInt::from(2)))
        .add(&LaurentPoly::one(2));
    assert_eq!(lhs, rhs);
    finish(t, 5.0, "doubled rank-two pair: strata counts and product identity");
}

#[test]
fn a02_rank_four_central_pair_extension_strata() {
    let t = Instant::now();
    let c = explicit("D4", &[(1, 2), (3, 2), (4, 2)]);
    let socle = mod_obj(vec![0, 1, 0, 0]);
    let big = mod_obj(vec![1, 1, 1, 1]);

    // Module extensions of the big injective by the central simple: a
    // projective line of classes with one generic and three special middles.
    let tc = middle_terms(&c, &big, &socle).unwrap();
    assert_eq!(tc.ext_dim, 2);
    let sincere = mod_obj(vec![1, 2, 1, 1]);
    let split_a = mod_obj(vec![0, 1, 1, 1]).union(&mod_obj(vec![1, 1, 0, 0]));
    let split_b = mod_obj(vec![1, 1, 0, 1]).union(&mod_obj(vec![0, 1, 1, 0]));
    let split_c = mod_obj(vec![1, 1, 1, 0]).union(&mod_obj(vec![0, 1, 0, 1]));
    let mut expected = BTreeMap::new();
    expected.insert(sincere.clone(), QPoly::from_coeffs(vec![-2, 1]));
    for y in [&split_a, &split_b, &split_c] {
        expected.insert(y.clone(), QPoly::from_coeffs(vec![1]));
    }
    assert_eq!(tc.by_middle, expected);

    // Dual direction: the generic middle is a lone shifted projective.
    let dual = middle_terms(&c, &socle, &big).unwrap();
    assert_eq!(dual.ext_dim, 2);
    let sp2 = CCObject::single_sp(1);
    let mut expected_dual = BTreeMap::new();
    expected_dual.insert(sp2.clone(), QPoly::from_coeffs(vec![-2, 1]));
    expected_dual.insert(
        CCObject::single_sp(0).union(&mod_obj(vec![1, 0, 0, 0])),
        QPoly::from_coeffs(vec![1]),
    );
    expected_dual.insert(
        CCObject::single_sp(2).union(&mod_obj(vec![0, 0, 1, 0])),
        QPoly::from_coeffs(vec![1]),
    );
    expected_dual.insert(
        CCObject::single_sp(3).union(&mod_obj(vec![0, 0, 0, 1])),
        QPoly::from_coeffs(vec![1]),
    );
    assert_eq!(dual.by_middle, expected_dual);

    // Frozen generic-stratum counts at small field sizes.
    for (q, generic) in [(3, 1), (5, 3), (7, 5)] {
        assert_eq!(tc.by_middle[&sincere].eval_big(q), BigInt::from(generic));
        assert_eq!(dual.by_middle[&sp2].eval_big(q), BigInt::from(generic));
    }

    // Final closed-form identity for the product of the two variables.
    let lhs = x_of(&c, &socle).unwrap().mul(&x_of(&c, &big).unwrap());
    let rhs = x_of(&c, &sincere)
        .unwrap()
        .add(&LaurentPoly::one(4).scale(&BigInt::from(3)))
        .add(&x_of(&c, &sp2).unwrap());
    assert_eq!(lhs, rhs);
    finish(t, 60.0, "rank-four central pair: strata counts and product identity");
}

#[test]
fn a03_one_dimensional_extension_pairs_multiply_binomially() {
    let t = Instant::now();
    let mut pairs_checked = 0usize;
    for label in ["A2", "A3", "A4", "D4"] {
        let c = alt(label);
        let objs = indec_objects(&c);
        let mut seen_here = 0usize;
        for i in 0..objs.len() {
            for j in i + 1..objs.len() {
                if ext1_dim_cc(&c, &objs[i], &objs[j]).unwrap() != 1 {
                    continue;
                }
                let fwd = middle_chi(&c, &objs[i], &objs[j]).unwrap();
                let bwd = middle_chi(&c, &objs[j], &objs[i]).unwrap();
                assert_eq!(fwd.len(), 1, "{label}: pair ({}, {})", objs[i], objs[j]);
                assert_eq!(bwd.len(), 1, "{label}: pair ({}, {})", objs[i], objs[j]);
                assert!(fwd.values().all(|&v| v == 1));
                assert!(bwd.values().all(|&v| v == 1));
                assert_ne!(
                    fwd.keys().next().unwrap(),
                    bwd.keys().next().unwrap(),
                    "{label}: the two middles of ({}, {}) must differ",
                    objs[i],
                    objs[j]
                );
                let report = verify_multiplication(&c, &objs[i], &objs[j]).unwrap();
                assert_eq!(report.ext_dim, 1);
                assert!(report.holds, "{label}: pair ({}, {})", objs[i], objs[j]);
                seen_here += 1;
            }
        }
        // Rank-two and rank-three counts are forced by the face numbers of
        // the corresponding cluster complexes (10 − 5 and 36 − 21).
        match label {
            "A2" => assert_eq!(seen_here, 5),
            "A3" => assert_eq!(seen_here, 15),
            _ => assert!(seen_here > 0),
        }
        pairs_checked += seen_here;
    }
    finish(
        t,
        300.0,
        &format!("binomial products on {pairs_checked} one-dimensional extension pairs"),
    );
}

#[test]
fn a04_product_identity_for_all_extension_pairs() {
    let t = Instant::now();
    let contexts = [
        alt("A2"),
        lin("A3"),
        alt("A3"),
        alt("A4"),
        alt("D4"),
    ];
    let mut pairs_checked = 0usize;
    for c in &contexts {
        let objs = indec_objects(c);
        let mut seen_here = 0usize;
        for n in &objs {
            for m in &objs {
                if n == m || ext1_dim_cc(c, n, m).unwrap() == 0 {
                    continue;
                }
                let report = verify_multiplication(c, n, m).unwrap();
                assert!(report.ext_dim > 0);
                assert!(
                    report.holds,
                    "{} pair ({n}, {m}): {} times the product must equal the weighted middle sum",
                    c.quiver.dynkin, report.ext_dim
                );
                seen_here += 1;
            }
        }
        assert!(seen_here > 0, "{}: no extension pairs found", c.quiver.dynkin);
        pairs_checked += seen_here;
    }
    finish(
        t,
        600.0,
        &format!("product identity on {pairs_checked} ordered extension pairs"),
    );
}

#[test]
fn a05_denominators_read_off_dimension_vectors() {
    let t = Instant::now();
    let mut modules_checked = 0usize;
    for label in ["A2", "A3", "A4", "D4", "D5"] {
        let c = alt(label);
        for root in &c.roots {
            let p = x_of(&c, &CCObject::single_module(root.clone())).unwrap();
            assert_eq!(
                denominator(&p),
                *root,
                "{label}: denominator of the variable of {root}"
            );
            modules_checked += 1;
        }
    }
    assert_eq!(modules_checked, 3 + 6 + 10 + 12 + 20);
    finish(
        t,
        120.0,
        &format!("denominator vectors of all {modules_checked} indecomposable modules"),
    );
}

#[test]
fn a06_nonnegative_coefficients_and_counts() {
    let t = Instant::now();
    let mut polys_checked = 0usize;
    let mut grassmannians_checked = 0usize;
    for label in ["A2", "A3", "A4", "D4", "D5"] {
        let c = alt(label);
        for root in &c.roots {
            let p = x_of(&c, &CCObject::single_module(root.clone())).unwrap();
            assert!(
                p.terms.values().all(|coef| *coef > BigInt::zero()),
                "{label}: negative Laurent coefficient in the variable of {root}"
            );
            polys_checked += 1;
            let iso = IsoType::single(root.clone());
            for e in sub_dimension_vectors(root) {
                let counts = grassmann_poly(&c, &iso, &e).unwrap();
                let chi = euler_char(&c, &iso, &e).unwrap();
                assert!(chi >= 0, "{label}: negative count for {root} at {e}");
                if !counts.is_zero() {
                    assert!(chi > 0, "{label}: visible stratum with zero count at {e}");
                }
                grassmannians_checked += 1;
            }
        }
    }
    finish(
        t,
        120.0,
        &format!(
            "nonnegativity of {polys_checked} variables and {grassmannians_checked} point counts"
        ),
    );
}

#[test]
fn a07_variable_and_cluster_counts_match_enumeration() {
    let t = Instant::now();
    for (label, variables, clusters) in
        [("A2", 5, 5), ("A3", 9, 14), ("A4", 14, 42), ("D4", 16, 50)]
    {
        let c = alt(label);
        let report = variables_vs_objects(&c).unwrap();
        assert_eq!(report.variable_count, variables, "{label} variable count");
        assert_eq!(report.object_count, variables, "{label} object count");
        assert_eq!(
            c.root_count() + c.rank(),
            variables,
            "{label}: variables must match almost-positive roots"
        );
        assert_eq!(report.node_count, clusters, "{label} cluster count");
        assert_eq!(report.tilting_count, clusters, "{label} rigid-object count");
        assert!(report.variables_match, "{label}: variable sets differ");
        assert!(report.clusters_match, "{label}: cluster sets differ");
    }
    finish(t, 300.0, "variable and cluster counts across four types");
}

#[test]
fn a08_grading_separates_the_basis() {
    let t = Instant::now();
    let c = alt("A3");
    let eps = find_epsilon(&c).unwrap().expect("a grading form must exist");

    // Every indecomposable variable leads with its index vector, coefficient
    // one, uniquely.
    let objs = indec_objects(&c);
    for z in &objs {
        let lead = graded_leading(&x_of(&c, z).unwrap(), &eps).unwrap();
        assert_eq!(lead.exponent, lambda_vector(&c, z), "leading exponent of {z}");
        assert_eq!(lead.coefficient, BigInt::from(1));
        assert!(lead.unique, "tied leading monomial for {z}");
    }

    // Index vectors in the box of sup-norm radius three are pairwise
    // distinct: no vector has two preimages among exceptional objects.
    let mut found = 0usize;
    for x in -3..=3i64 {
        for y in -3..=3i64 {
            for z in -3..=3i64 {
                let v = IntVec(vec![x, y, z]);
                match exceptional_from_lambda(&c, &v) {
                    Ok(k) => {
                        assert!(is_exceptional(&c, &k).unwrap());
                        assert_eq!(lambda_vector(&c, &k), v, "index round trip for {k}");
                        found += 1;
                    }
                    Err(Error::InvalidInput(_)) => {}
                    Err(e) => panic!("index vector {v} is ambiguous: {e}"),
                }
            }
        }
    }
    assert!(found > objs.len(), "the box must contain all indecomposables");

    // Products of two indecomposable variables expand with integer
    // coefficients and zero residual.
    let mut products = 0usize;
    for i in 0..objs.len() {
        for j in i..objs.len() {
            let p = x_of(&c, &objs[i]).unwrap().mul(&x_of(&c, &objs[j]).unwrap());
            let expansion = expand_in_basis(&c, &p).unwrap();
            assert!(
                expansion.is_integral(),
                "fractional coefficient expanding ({}) times ({})",
                objs[i],
                objs[j]
            );
            products += 1;
        }
    }
    finish(
        t,
        300.0,
        &format!("grading separates the basis; {products} products expanded ({found} index vectors in the box)"),
    );
}

#[test]
fn a09_cone_decomposition_covers_generic_points() {
    let t = Instant::now();
    for (label, cones) in [("A2", 5), ("A3", 14)] {
        let c = alt(label);
        let report = fan_check(&c, 200, c.config.rng_seed).unwrap();
        assert_eq!(report.cone_count, cones, "{label} cone count");
        assert_eq!(report.samples, 200);
        assert_eq!(
            report.unique_cone_hits, 200,
            "{label}: every generic point must land in exactly one cone"
        );
        println!(
            "  {label}: {} boundary resamples over {} points",
            report.boundary_resamples, report.samples
        );
    }
    finish(t, 60.0, "simplicial cone decompositions cover generic points");
}

#[test]
fn a10_specialized_product_matches_point_counts() {
    let t = Instant::now();
    let mut coefficients_checked = 0usize;
    for label in ["A2", "A3"] {
        let c = alt(label);
        let n = c.rank();
        let vectors = nonneg_vectors(n, 4);
        for e_prime in &vectors {
            for e in &vectors {
                let total: i64 = e_prime.0.iter().sum::<i64>() + e.0.iter().sum::<i64>();
                if total > 4 {
                    continue;
                }
                for (x, coeff) in b_product(&c, e_prime, e).unwrap() {
                    assert_eq!(
                        coeff,
                        euler_char(&c, &x, e).unwrap(),
                        "{label}: coefficient of {x} in the product for ({e_prime}, {e})"
                    );
                    coefficients_checked += 1;
                }
            }
        }
    }
    assert!(coefficients_checked > 200);
    finish(
        t,
        120.0,
        &format!("{coefficients_checked} specialized product coefficients match point counts"),
    );
}

/// All vectors in ℕ^n with coordinate sum at most `total`.
fn nonneg_vectors(n: usize, total: i64) -> Vec<IntVec> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; n];
    fill(&mut out, &mut cur, 0, total);
    return out;

    fn fill(out: &mut Vec<IntVec>, cur: &mut Vec<i64>, pos: usize, left: i64) {
        if pos == cur.len() {
            out.push(IntVec(cur.clone()));
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            fill(out, cur, pos + 1, left - v);
        }
        cur[pos] = 0;
    }
}

#[test]
fn a11_block_counts_reduce_to_pair_formula() {
    let t = Instant::now();
    let mut pairs_checked = 0usize;
    for label in ["A2", "A3"] {
        let c = alt(label);
        let mut rng = ChaCha8Rng::seed_from_u64(c.config.rng_seed ^ 0xb10c);
        let mut draws = 0usize;
        let mut accepted = 0usize;
        while accepted < 25 {
            draws += 1;
            assert!(draws < 10_000, "sampler failed to find admissible pairs");
            let n = random_type(&c, &mut rng);
            let m = random_type(&c, &mut rng);
            let parts: u32 = n.module.values().sum::<u32>() + m.module.values().sum::<u32>();
            if parts < 3 {
                continue; // keep at least one side decomposable
            }
            let mut block_dim = 0i64;
            for (zn, &cn) in n.module.iter() {
                for (zm, &cm) in m.module.iter() {
                    block_dim += i64::from(cn) * i64::from(cm) * ext_dim_between(&c, zn, zm);
                }
            }
            if block_dim < 1 || block_dim > 4 {
                continue;
            }
            let direct = module_extension_middles(&c, &n, &m).unwrap();
            let reduced = module_extension_chi_elementary(&c, &n, &m).unwrap();
            let direct_chi: BTreeMap<IsoType, i64> = direct
                .iter()
                .map(|(y, poly)| (y.clone(), poly.at_one()))
                .filter(|(_, chi)| *chi != 0)
                .collect();
            assert_eq!(
                direct_chi, reduced,
                "{label}: block counts for ({n}) by ({m}) must reduce to the pair formula"
            );
            accepted += 1;
        }
        pairs_checked += accepted;
    }
    assert_eq!(pairs_checked, 50);
    finish(
        t,
        300.0,
        &format!("{pairs_checked} random extension blocks reduce to the pair formula"),
    );
}

fn random_type(c: &QuiverContext, rng: &mut ChaCha8Rng) -> IsoType {
    let mut t = IsoType::empty();
    for _ in 0..rng.gen_range(1..=2) {
        let root = c.roots[rng.gen_range(0..c.roots.len())].clone();
        t.add(root, rng.gen_range(1..=2));
    }
    t
}

/// Dimension of the forward module-extension block: extensions of a by b.
fn ext_dim_between(c: &QuiverContext, a: &IntVec, b: &IntVec) -> i64 {
    c.ext_roots(a, b).unwrap()
}

#[test]
fn a12_principal_lifts_have_unitary_leading_terms() {
    let t = Instant::now();
    for (label, variables) in [("A2", 5), ("A3", 9)] {
        let c = alt(label);
        let report = toric_leading_check(&c).unwrap();
        assert_eq!(report.variable_count, variables, "{label} lifted variables");
        assert!(report.all_unitary, "{label}: offenders {:?}", report.offenders);
        assert!(report.projection_matches, "{label}: projection mismatch");
        assert!(report.offenders.is_empty());
    }
    finish(t, 60.0, "principal-coefficient lifts lead with unitary monomials");
}

#[test]
fn a13_chain_products_match_expansions() {
    let t = Instant::now();
    // Rank two: exact agreement on every pair of indecomposables.
    let c = explicit("A2", &[(2, 1)]);
    let objs = indec_objects(&c);
    for i in 0..objs.len() {
        for j in i..objs.len() {
            let product = x_of(&c, &objs[i]).unwrap().mul(&x_of(&c, &objs[j]).unwrap());
            let expanded = expand_in_basis(&c, &product).unwrap();
            let chains = hall_multiply(&c, &objs[i], &objs[j], ChainConvention::ModuleExt).unwrap();
            assert_eq!(
                expanded, chains,
                "rank two pair ({}, {}) must agree",
                objs[i], objs[j]
            );
        }
    }

    // Larger types: archive a full comparison report; itemize any mismatch.
    let archive = Path::new(env!("CARGO_TARGET_TMPDIR"));
    let mut total_mismatches = 0usize;
    for (label, file) in [("A3", "chain_comparison_a3.json"), ("D4", "chain_comparison_d4.json")] {
        let c = alt(label);
        let objs = indec_objects(&c);
        let mut records = Vec::new();
        let mut mismatches = 0usize;
        for i in 0..objs.len() {
            for j in i..objs.len() {
                let product =
                    x_of(&c, &objs[i]).unwrap().mul(&x_of(&c, &objs[j]).unwrap());
                let expanded = expand_in_basis(&c, &product).unwrap();
                let chains =
                    hall_multiply(&c, &objs[i], &objs[j], ChainConvention::ModuleExt).unwrap();
                let mut disagreements = Vec::new();
                let keys: std::collections::BTreeSet<&CCObject> =
                    expanded.coeffs.keys().chain(chains.coeffs.keys()).collect();
                for k in keys {
                    let from_expansion = expanded.coeffs.get(k);
                    let from_chains = chains.coeffs.get(k);
                    if from_expansion != from_chains {
                        disagreements.push(serde_json::json!({
                            "object": k.to_string(),
                            "expansion": from_expansion.map(|v| v.to_string()),
                            "chains": from_chains.map(|v| v.to_string()),
                        }));
                    }
                }
                if !disagreements.is_empty() {
                    mismatches += 1;
                }
                records.push(serde_json::json!({
                    "first": objs[i].to_string(),
                    "second": objs[j].to_string(),
                    "agree": disagreements.is_empty(),
                    "expansion": expanded.to_json(),
                    "chains": chains.to_json(),
                    "disagreements": disagreements,
                }));
            }
        }
        let expected_records = objs.len() * (objs.len() + 1) / 2;
        assert_eq!(records.len(), expected_records, "{label}: report incomplete");
        let report = serde_json::json!({
            "type": label,
            "convention": ChainConvention::ModuleExt.label(),
            "pairs": records,
            "mismatch_count": mismatches,
        });
        let path = archive.join(file);
        std::fs::write(&path, serde_json::to_string_pretty(&report).unwrap()).unwrap();
        // Read back to confirm the archive is complete and well formed.
        let reread: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(
            reread["pairs"].as_array().unwrap().len(),
            expected_records,
            "{label}: archived report incomplete"
        );
        println!(
            "  {label}: {} pairs compared, {} mismatches, archived at {}",
            expected_records,
            mismatches,
            path.display()
        );
        total_mismatches += mismatches;
    }
    finish(
        t,
        600.0,
        &format!("chain products agree on rank two; reports archived ({total_mismatches} larger-type mismatches)"),
    );
}
