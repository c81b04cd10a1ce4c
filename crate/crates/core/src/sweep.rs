//! Exhaustive and sampled checks of the structure theorems over small
//! groups and loops.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fingroup::{cyclic, direct_product, small_group_catalog, FiniteGroup, IndexSet};
use crate::finloop::{enumerate_left_loops, loop_of_group, random_left_loop, FiniteLeftLoop};
use crate::identities::verify_aip_equivalences;
use crate::perm::Permutation;
use crate::semidirect::{standard_product, validate_external, ExternalSpec, StdProductSpec};
use crate::transversal::{
    decompose, internal_sequence_check, lmlt_tau_check, tau_analysis, verify_internal_idents,
};

/// What a violation contradicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    /// Group condition, quotient condition and loop identity disagree.
    InternalIdentities,
    /// Pseudo-automorphism and automorphism characterizations disagree.
    AutomorphismCharacterization,
    /// A relation about the map `τ`.
    Tau,
    /// `G/N` is not rebuilt from the loop and `σ(H)`, or a standard
    /// product fails to be a group.
    Products,
    /// Anything else: table invariants, inverse transversals, remarks.
    Structure,
    /// Equivalent forms of the automorphic inverse property disagree.
    InverseProperty,
    /// TC disagrees with `S7 ∧ S8 ∧ S9`.
    ExternalConditions,
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Category::InternalIdentities => "internal-identities",
            Category::AutomorphismCharacterization => "automorphism-characterization",
            Category::Tau => "tau",
            Category::Products => "products",
            Category::Structure => "structure",
            Category::InverseProperty => "inverse-property",
            Category::ExternalConditions => "external-conditions",
        })
    }
}

/// One failed check, with enough to rebuild the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub category: Category,
    pub recipe: String,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.category, self.recipe, self.detail)
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Largest group order in the catalog sweep (at most 16).
    pub max_order: usize,
    /// Transversals per `(G, H)`; 0 means all of them.
    pub cap: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_order: 8,
            cap: 512,
            jobs: None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct CatalogSweep {
    pub groups: usize,
    pub pairs: usize,
    pub decompositions: usize,
    /// Decompositions whose subgroup has trivial core.
    pub corefree: usize,
    /// Decompositions on which `τ` is an automorphism.
    pub tau_automorphisms: usize,
    pub violations: Vec<Violation>,
}

impl CatalogSweep {
    pub fn count(&self, category: Category) -> usize {
        self.violations.iter().filter(|v| v.category == category).count()
    }
}

fn run_in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

struct Item<'a> {
    name: &'a str,
    group: &'a FiniteGroup,
    h: IndexSet,
    b: IndexSet,
}

#[derive(Default)]
struct ItemOutcome {
    corefree: bool,
    tau_automorphism: bool,
    violations: Vec<Violation>,
}

fn check_item(item: &Item<'_>) -> ItemOutcome {
    let recipe = format!("{} H={:?} B={:?}", item.name, item.h.members(), item.b.members());
    let mut out = ItemOutcome::default();
    let mut flag = |category, detail: String| {
        out.violations.push(Violation {
            category,
            recipe: recipe.clone(),
            detail,
        })
    };
    let d = match decompose(item.group, &item.h, &item.b) {
        Ok(d) => d,
        Err(e) => {
            flag(Category::Structure, format!("decompose failed: {e}"));
            return out;
        }
    };
    match verify_internal_idents(&d) {
        Ok(r) => {
            for row in r.identity_violations() {
                flag(Category::InternalIdentities, row.to_string());
            }
            for row in r.aut_violations() {
                flag(Category::AutomorphismCharacterization, row.to_string());
            }
            for row in r.remark_rows.iter().filter(|r| !r.consistent()) {
                flag(Category::Structure, row.to_string());
            }
        }
        Err(e) => flag(Category::InternalIdentities, format!("check failed: {e}")),
    }
    let tau = tau_analysis(&d);
    for v in tau.violations() {
        flag(Category::Tau, v);
    }
    match internal_sequence_check(&d) {
        Ok(r) => {
            for v in r.violations() {
                flag(Category::Products, v);
            }
        }
        Err(e) => flag(Category::Products, format!("sequence check failed: {e}")),
    }
    if !d.left_inverse_report().consistent() {
        flag(
            Category::Structure,
            format!("inverse transversal: {:?}", d.left_inverse_report()),
        );
    }
    for v in d.invariant_violations() {
        flag(Category::Structure, v);
    }
    out.corefree = d.is_corefree();
    out.tau_automorphism = tau.automorphism;
    out
}

/// Every catalog group up to `max_order`, every subgroup, and up to `cap`
/// unital transversals of each.
pub fn catalog_sweep(config: &SweepConfig) -> Result<CatalogSweep> {
    if config.max_order > 16 {
        return Err(Error::TooLarge {
            what: "catalog sweep order",
            size: config.max_order,
            limit: 16,
        });
    }
    let catalog = small_group_catalog(config.max_order);
    let mut summary = CatalogSweep {
        groups: catalog.len(),
        ..Default::default()
    };
    let mut items = Vec::new();
    for entry in &catalog {
        for h in entry.group.all_subgroups() {
            summary.pairs += 1;
            for b in entry.group.select_unital_transversals(&h, config.cap)? {
                items.push(Item {
                    name: &entry.name,
                    group: &entry.group,
                    h: h.clone(),
                    b,
                });
            }
        }
    }
    summary.decompositions = items.len();
    let outcomes: Vec<ItemOutcome> =
        run_in_pool(config.jobs, || items.par_iter().map(check_item).collect())?;
    for o in outcomes {
        summary.corefree += o.corefree as usize;
        summary.tau_automorphisms += o.tau_automorphism as usize;
        summary.violations.extend(o.violations);
    }
    Ok(summary)
}

#[derive(Clone, Debug, Default)]
pub struct LoopSweep {
    /// Loops checked per order, starting at order 1.
    pub per_order: Vec<usize>,
    pub bruck1_loops: usize,
    pub violations: Vec<Violation>,
}

impl LoopSweep {
    pub fn loops(&self) -> usize {
        self.per_order.iter().sum()
    }

    pub fn count(&self, category: Category) -> usize {
        self.violations.iter().filter(|v| v.category == category).count()
    }
}

/// Which per-loop checks a loop sweep runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LoopChecks {
    /// The standard product with `LMlt₁` is a group of order `|LMlt|`.
    pub standard_product: bool,
    /// `τ` on `LMlt` against the Bruck identities.
    pub lmlt_tau: bool,
    /// Equivalent forms of the automorphic inverse property.
    pub inverse_property: bool,
}

impl LoopChecks {
    pub const ALL: LoopChecks = LoopChecks {
        standard_product: true,
        lmlt_tau: true,
        inverse_property: true,
    };
}

fn loop_recipe(b: &FiniteLeftLoop) -> String {
    let rows: Vec<String> = b
        .rows()
        .iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    format!("loop {} [{}]", b.order(), rows.join(" / "))
}

fn check_loop(b: &FiniteLeftLoop, checks: LoopChecks) -> (bool, Vec<Violation>) {
    let mut out = Vec::new();
    let mut flag = |category, detail: String| {
        out.push(Violation {
            category,
            recipe: loop_recipe(b),
            detail,
        })
    };
    let mut bruck1 = false;
    if checks.standard_product {
        let spec = StdProductSpec::with_lmlt1(b.clone());
        match standard_product(&spec) {
            Ok(g) => {
                let expected = b.order() * spec.h().order();
                if g.group.order() != expected || !g.factorization_holds() {
                    flag(
                        Category::Products,
                        format!("product of order {} is not a factorized group", g.group.order()),
                    );
                }
            }
            Err(e) => flag(Category::Products, format!("standard product: {e}")),
        }
    }
    if checks.lmlt_tau {
        match lmlt_tau_check(b) {
            Ok(r) => {
                bruck1 = r.bruck1;
                for v in r.violations() {
                    flag(Category::Tau, v);
                }
            }
            Err(e) => flag(Category::Tau, format!("left multiplication group: {e}")),
        }
    }
    if checks.inverse_property {
        for (clause, what) in verify_aip_equivalences(b).violations {
            flag(Category::InverseProperty, format!("clause {clause}: {what}"));
        }
    }
    (bruck1, out)
}

/// Every left loop of order at most `max_order` (at most 5).
pub fn loop_sweep(max_order: usize, checks: LoopChecks, jobs: Option<usize>) -> Result<LoopSweep> {
    let mut summary = LoopSweep::default();
    for n in 1..=max_order {
        let loops: Vec<FiniteLeftLoop> = enumerate_left_loops(n)?.collect();
        summary.per_order.push(loops.len());
        let outcomes: Vec<(bool, Vec<Violation>)> = run_in_pool(jobs, || {
            loops.par_iter().map(|b| check_loop(b, checks)).collect()
        })?;
        for (bruck1, v) in outcomes {
            summary.bruck1_loops += bruck1 as usize;
            summary.violations.extend(v);
        }
    }
    Ok(summary)
}

/// `samples` uniformly random left loops of order `n`, each drawn from its
/// own seed so the run does not depend on scheduling.
pub fn sampled_loop_sweep(
    n: usize,
    samples: usize,
    seed: u64,
    checks: LoopChecks,
    jobs: Option<usize>,
) -> Result<LoopSweep> {
    let outcomes: Vec<(bool, Vec<Violation>)> = run_in_pool(jobs, || {
        (0..samples as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i);
                check_loop(&random_left_loop(n, &mut rng), checks)
            })
            .collect()
    })?;
    let mut summary = LoopSweep {
        per_order: (1..=n).map(|k| if k == n { samples } else { 0 }).collect(),
        ..Default::default()
    };
    for (bruck1, v) in outcomes {
        summary.bruck1_loops += bruck1 as usize;
        summary.violations.extend(v);
    }
    Ok(summary)
}

#[derive(Clone, Debug, Default)]
pub struct MutationSweep {
    pub specs: usize,
    /// Specs satisfying the normalizations, where the comparison is made.
    pub normalized: usize,
    pub tc_holds: usize,
    pub tc_fails: usize,
    pub discrepancies: Vec<Violation>,
}

/// Values of `l` and `m` are drawn from `values`; `sigma[h]` is negation on
/// the plane for the `h` in `negating`.
struct PlaneFamily {
    name: &'static str,
    b: FiniteLeftLoop,
    h: FiniteGroup,
    sigma: Vec<Permutation>,
    values: Vec<usize>,
}

const P: usize = 3;

fn plane_family(name: &'static str, h: FiniteGroup, negating: impl Fn(usize) -> bool) -> PlaneFamily {
    let plane = direct_product(&cyclic(P), &cyclic(P));
    let b = loop_of_group(&plane);
    let neg = Permutation::new((0..P * P).map(|x| plane.inv(x)).collect())
        .expect("negation is a permutation");
    let sigma = (0..h.order())
        .map(|k| if negating(k) { neg.clone() } else { Permutation::identity(P * P) })
        .collect();
    // kernel of h ↦ σ_h, where l and m must live for S1 and S2
    let values = (0..h.order()).filter(|&k| !negating(k)).collect();
    PlaneFamily {
        name,
        b,
        h,
        sigma,
        values,
    }
}

fn split(x: usize) -> (usize, usize) {
    (x / P, x % P)
}

impl PlaneFamily {
    /// Coefficient `c ∈ F₃` embedded in the kernel.
    fn embed(&self, c: usize) -> usize {
        self.values[c % self.values.len()]
    }

    fn bilinear(&self, a: [usize; 4]) -> Vec<Vec<usize>> {
        (0..P * P)
            .map(|x| {
                (0..P * P)
                    .map(|y| {
                        let (x1, x2) = split(x);
                        let (y1, y2) = split(y);
                        let c = a[0] * x1 * y1 + a[1] * x1 * y2 + a[2] * x2 * y1 + a[3] * x2 * y2;
                        self.embed(c % P)
                    })
                    .collect()
            })
            .collect()
    }

    fn spec(&self, l: Vec<Vec<usize>>, m: Vec<Vec<usize>>) -> ExternalSpec {
        ExternalSpec::new(self.b.clone(), self.h.clone(), self.sigma.clone(), l, m)
            .expect("shapes are fixed")
    }

    fn mutated(&self, rng: &mut ChaCha8Rng) -> (String, ExternalSpec) {
        let n = P * P;
        let k = self.h.order();
        let form = [0; 4].map(|_| rng.gen_range(0..P));
        let mut l = self.bilinear(form);
        let mut m = vec![vec![0; k]; n];
        let kind = rng.gen_range(0..5);
        let what = match kind {
            0 => "bilinear",
            1 => {
                // add the coboundary of f with f(0) = 0
                let f: Vec<usize> = (0..n).map(|x| if x == 0 { 0 } else { rng.gen_range(0..P) }).collect();
                for x in 0..n {
                    for y in 0..n {
                        let (x1, x2) = split(x);
                        let (y1, y2) = split(y);
                        let s = ((x1 + y1) % P) * P + (x2 + y2) % P;
                        let c = l[x][y] / self.step() + f[x] + f[y] + 2 * f[s];
                        l[x][y] = self.embed(c % P);
                    }
                }
                "coboundary"
            }
            2 => {
                let x = rng.gen_range(1..n);
                let y = rng.gen_range(1..n);
                l[x][y] = self.values[rng.gen_range(0..self.values.len())];
                "l-entry"
            }
            3 => {
                let x = rng.gen_range(1..n);
                let h = rng.gen_range(1..k);
                m[x][h] = self.values[rng.gen_range(0..self.values.len())];
                "m-entry"
            }
            _ => {
                for _ in 0..rng.gen_range(1..4) {
                    let x = rng.gen_range(1..n);
                    let y = rng.gen_range(1..n);
                    l[x][y] = self.values[rng.gen_range(0..self.values.len())];
                    let h = rng.gen_range(1..k);
                    m[x][h] = self.values[rng.gen_range(0..self.values.len())];
                }
                "mixed"
            }
        };
        let recipe = format!(
            "{} form={form:?} {what} l={:?} m={:?}",
            self.name, l, m
        );
        (recipe, self.spec(l, m))
    }

    /// Spacing of the kernel inside `H`, so `embed(c) = c·step`.
    fn step(&self) -> usize {
        self.values.get(1).copied().unwrap_or(1)
    }
}

/// Mutated external specs over the plane `F₃²`, each compared on TC versus
/// `S7 ∧ S8 ∧ S9`.
///
/// Two families: `H = Z₃` acting trivially, and `H = Z₆` acting through
/// negation with `l, m` in the kernel. Each draw starts from a bilinear `l`
/// and then adds a coboundary, perturbs single entries of `l` or `m`, or
/// leaves it alone.
pub fn mutation_sweep(count: usize, seed: u64) -> MutationSweep {
    let families = [
        plane_family("trivial Z3", cyclic(3), |_| false),
        plane_family("negating Z6", cyclic(6), |k| k % 2 == 1),
    ];
    let results: Vec<(String, crate::semidirect::ExternalDiagnostics)> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let fam = &families[(i % 2) as usize];
            let (recipe, spec) = fam.mutated(&mut rng);
            (recipe, validate_external(&spec))
        })
        .collect();
    let mut out = MutationSweep {
        specs: count,
        ..Default::default()
    };
    for (recipe, diag) in results {
        if !diag.normalized() {
            continue;
        }
        out.normalized += 1;
        if diag.holds("TC") {
            out.tc_holds += 1;
        } else {
            out.tc_fails += 1;
        }
        if !diag.tc_consistent() {
            let show = |c: &str| if diag.holds(c) { "holds" } else { "fails" };
            out.discrepancies.push(Violation {
                category: Category::ExternalConditions,
                recipe,
                detail: format!(
                    "TC {} but S7 {}, S8 {}, S9 {}",
                    show("TC"),
                    show("S7"),
                    show("S8"),
                    show("S9")
                ),
            });
        }
    }
    out
}
