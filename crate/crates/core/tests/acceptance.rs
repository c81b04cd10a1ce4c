//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails. Runs without the libtest harness so
//! the lines are never captured.

use std::time::{Duration, Instant};

use semiloop::fingroup::are_isomorphic;
use semiloop::numerics::{
    circle_samples, disk_identity_residuals, disk_samples, polar_identity_residuals,
    BOUNDARY_RADIUS, DISK_BOUNDARY_TOLERANCE, DISK_TOLERANCE, INTERIOR_RADIUS, PDH2_SHIFT,
    POLAR_TOLERANCE, TAU_TOLERANCE,
};
use semiloop::semidirect::{external_product, heisenberg_spec, validate_external};
use semiloop::sweep::{
    catalog_sweep, loop_sweep, mutation_sweep, sampled_loop_sweep, Category, CatalogSweep,
    LoopChecks, LoopSweep, SweepConfig,
};
use semiloop::transversal::triangular_decomposition;

const SEED: u64 = 20_240_601;
const BUDGET: Duration = Duration::from_secs(300);

struct Outcome {
    number: usize,
    pass: bool,
    summary: String,
}

fn report(out: &mut Vec<Outcome>, number: usize, pass: bool, summary: String) {
    println!(
        "criterion {number}: {} {summary}",
        if pass { "PASS" } else { "FAIL" }
    );
    out.push(Outcome {
        number,
        pass,
        summary,
    });
}

fn first_of(c: &CatalogSweep, l: Option<&LoopSweep>, cat: Category) -> String {
    c.violations
        .iter()
        .chain(l.into_iter().flat_map(|l| l.violations.iter()))
        .find(|v| v.category == cat)
        .map(|v| format!("; first: {v}"))
        .unwrap_or_default()
}

fn heisenberg_matches_triangular(p: usize) -> Result<(), String> {
    let spec = heisenberg_spec(p).map_err(|e| e.to_string())?;
    let diag = validate_external(&spec);
    if let Some(f) = diag.first_failure() {
        return Err(format!("p={p}: {} fails at {:?}", f.name, f.witness));
    }
    let g = external_product(&spec).map_err(|e| e.to_string())?;
    let t = triangular_decomposition(p).map_err(|e| e.to_string())?;
    are_isomorphic(&g.group, t.group())
        .map(|_| ())
        .ok_or_else(|| format!("p={p}: no isomorphism to the unitriangular group"))
}

fn main() {
    let mut out = Vec::new();

    let start = Instant::now();
    let catalog = catalog_sweep(&SweepConfig {
        max_order: 12,
        cap: 512,
        jobs: None,
    })
    .expect("catalog sweep runs");
    let catalog_time = start.elapsed();
    println!(
        "catalog sweep: {} groups, {} (G,H) pairs, {} decompositions, {} corefree, {:.2?}",
        catalog.groups, catalog.pairs, catalog.decompositions, catalog.corefree, catalog_time
    );

    let start = Instant::now();
    let loops = loop_sweep(5, LoopChecks::ALL, None).expect("loop sweep runs");
    println!(
        "loop sweep: {:?} loops per order, {} with Bruck1, {:.2?}",
        loops.per_order,
        loops.bruck1_loops,
        start.elapsed()
    );

    let bad = catalog.count(Category::InternalIdentities);
    report(
        &mut out,
        1,
        bad == 0 && catalog_time <= BUDGET,
        format!(
            "identity rows over {} decompositions of orders <= 12: {bad} violations in {catalog_time:.2?}{}",
            catalog.decompositions,
            first_of(&catalog, None, Category::InternalIdentities)
        ),
    );

    let bad = catalog.count(Category::AutomorphismCharacterization);
    report(
        &mut out,
        2,
        bad == 0,
        format!(
            "pseudo-automorphism and automorphism rows: {bad} violations{}",
            first_of(&catalog, None, Category::AutomorphismCharacterization)
        ),
    );

    let (bad_g, bad_l) = (catalog.count(Category::Tau), loops.count(Category::Tau));
    report(
        &mut out,
        3,
        bad_g + bad_l == 0,
        format!(
            "tau relations: {bad_g} violations in the catalog sweep, {bad_l} over {} loops of order <= 5{}",
            loops.loops(),
            first_of(&catalog, Some(&loops), Category::Tau)
        ),
    );

    let (bad_g, bad_l) = (catalog.count(Category::Products), loops.count(Category::Products));
    report(
        &mut out,
        4,
        bad_g + bad_l == 0,
        format!(
            "standard products over {} loops: {bad_l} failures; quotient sequences: {bad_g} failures{}",
            loops.loops(),
            first_of(&catalog, Some(&loops), Category::Products)
        ),
    );

    let heis: Vec<Result<(), String>> = [3, 5, 7].into_iter().map(heisenberg_matches_triangular).collect();
    let mutations = mutation_sweep(1200, SEED);
    let heis_errors: Vec<&String> = heis.iter().filter_map(|r| r.as_ref().err()).collect();
    report(
        &mut out,
        5,
        heis_errors.is_empty() && mutations.normalized >= 1000 && mutations.discrepancies.is_empty(),
        format!(
            "Heisenberg p=3,5,7: {}; {} mutated specs ({} TC holds, {} TC fails): {} discrepancies{}",
            if heis_errors.is_empty() { "all isomorphic".to_string() } else { format!("{heis_errors:?}") },
            mutations.normalized,
            mutations.tc_holds,
            mutations.tc_fails,
            mutations.discrepancies.len(),
            mutations.discrepancies.first().map(|v| format!("; first: {v}")).unwrap_or_default()
        ),
    );

    let sampled = sampled_loop_sweep(
        6,
        10_000,
        SEED,
        LoopChecks {
            standard_product: false,
            lmlt_tau: false,
            inverse_property: true,
        },
        None,
    )
    .expect("sampled sweep runs");
    let (bad_e, bad_s) = (
        loops.count(Category::InverseProperty),
        sampled.count(Category::InverseProperty),
    );
    report(
        &mut out,
        6,
        bad_e + bad_s == 0 && sampled.loops() >= 10_000,
        format!(
            "inverse-property equivalences: {bad_e} violations over {} loops of order <= 5, {bad_s} over {} sampled loops of order 6",
            loops.loops(),
            sampled.loops()
        ),
    );

    let disk = disk_identity_residuals(&disk_samples(10_000, SEED, INTERIOR_RADIUS));
    let edge = disk_identity_residuals(&circle_samples(10_000, SEED, BOUNDARY_RADIUS));
    let polar = polar_identity_residuals(1_000, SEED, PDH2_SHIFT);
    report(
        &mut out,
        7,
        disk.max() < DISK_TOLERANCE
            && edge.max() < DISK_BOUNDARY_TOLERANCE
            && polar.failures == 0
            && polar.max_identity() < POLAR_TOLERANCE
            && polar.unitarity < POLAR_TOLERANCE
            && polar.tau < TAU_TOLERANCE,
        format!(
            "disk max residual {:.1e} (|z| <= {INTERIOR_RADIUS}), {:.1e} at |z| = {BOUNDARY_RADIUS}; \
             polar max residual {:.1e}, unitarity {:.1e}, tau {:.1e}, {} singular samples",
            disk.max(),
            edge.max(),
            polar.max_identity(),
            polar.unitarity,
            polar.tau,
            polar.failures
        ),
    );

    let t = triangular_decomposition(3).expect("triangular decomposition over F3");
    let n = t.induced_loop().order();
    let l_nontrivial = (0..n).any(|x| (0..n).any(|y| t.l(x, y) != 0));
    let sigma_trivial = t.subgroup().iter().all(|h| t.sigma(h).is_identity());
    let h_normal = t.group().is_normal(t.subgroup());
    report(
        &mut out,
        8,
        l_nontrivial && sigma_trivial && h_normal && t.subgroup().len() > 1,
        format!(
            "unitriangular F3 decomposition: l nontrivial {l_nontrivial}, sigma trivial on H {sigma_trivial}, H normal {h_normal}"
        ),
    );

    let structure = catalog.count(Category::Structure);
    println!("additional structure checks in the catalog sweep: {structure} violations");

    let failed: Vec<String> = out
        .iter()
        .filter(|o| !o.pass)
        .map(|o| format!("{}: {}", o.number, o.summary))
        .collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", out.len());
    } else {
        eprintln!("failed criteria:\n{}", failed.join("\n"));
        std::process::exit(1);
    }
}
