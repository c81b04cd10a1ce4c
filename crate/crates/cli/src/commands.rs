use std::io::Write;

use semiloop::finloop::{enumerate_left_loops, left_loop_count};
use semiloop::identities::IdentityReport;
use semiloop::semidirect::{external_product, heisenberg_spec, standard_product, StdProductSpec};
use semiloop::sweep::{
    catalog_sweep, loop_sweep, mutation_sweep, sampled_loop_sweep, Category, LoopChecks,
    SweepConfig, Violation,
};
use semiloop::transversal::{check_g_conditions, tau_analysis, GCondition, TransversalDecomposition};
use semiloop::{decompose, IdentityTag, IndexSet, PermGroup, Permutation};

use crate::args::{Cli, Command, Format};
use crate::error::{CliError, CliResult};
use crate::files::{join, ExternalSpecFile, TableFile, TableKind};

/// Whether the checked property held. Input errors are `Err`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Holds,
    Fails,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Fails => 1,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Holds
        } else {
            Status::Fails
        }
    }
}

/// Exit code for a finished command: 0 holds, 1 fails, 2 bad input.
pub fn exit_code(result: &CliResult<Status>) -> i32 {
    match result {
        Ok(s) => s.exit_code(),
        Err(_) => 2,
    }
}

type Out<'a> = &'a mut dyn Write;

fn io(e: std::io::Error) -> CliError {
    CliError::Io {
        path: "standard output".into(),
        message: e.to_string(),
    }
}

pub fn run(cli: &Cli, out: Out<'_>) -> CliResult<Status> {
    match &cli.command {
        Command::Check { path, identities } => check(path, identities, cli.format, out),
        Command::Decompose {
            group,
            subgroup,
            transversal,
            all_transversals,
            limit,
            write_loop,
        } => {
            let g = TableFile::load(group)?.expect_kind(TableKind::Group)?.to_group()?;
            let h = IndexSet::new(subgroup.iter().copied());
            if *all_transversals {
                all_decompositions(&g, &h, *limit, cli.format, out)
            } else {
                let b = IndexSet::new(transversal.iter().flatten().copied());
                let d = decompose(&g, &h, &b)?;
                if let Some(path) = write_loop {
                    write_file(path, &TableFile::from_loop(d.induced_loop()).render())?;
                }
                describe(&d, cli.format, out)
            }
        }
        Command::Build {
            standard,
            external,
            heisenberg,
            output,
        } => {
            let table = build(standard.as_deref(), external.as_deref(), *heisenberg)?;
            match output {
                Some(path) => write_file(path, &table.render())?,
                None => out.write_all(table.render().as_bytes()).map_err(io)?,
            }
            Ok(Status::Holds)
        }
        Command::VerifyTheorems {
            max_order,
            cap,
            loop_order,
            samples,
            mutations,
        } => verify(
            &VerifyOptions {
                max_order: *max_order,
                cap: *cap,
                loop_order: *loop_order,
                samples: *samples,
                mutations: *mutations,
                seed: cli.seed,
                jobs: cli.jobs,
            },
            cli.format,
            out,
        ),
        Command::Enumerate { n, limit, count } => enumerate(*n, *limit, *count, cli.format, out),
    }
}

fn write_file(path: &str, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })
}

fn tuple(w: &[usize]) -> String {
    format!("({})", w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
}

fn check(path: &str, identities: &[String], format: Format, out: Out<'_>) -> CliResult<Status> {
    let b = TableFile::load(path)?.expect_kind(TableKind::Loop)?.to_loop()?;
    let tags: Vec<IdentityTag> = if identities.is_empty() {
        IdentityTag::ALL.to_vec()
    } else {
        identities
            .iter()
            .map(|s| s.parse::<IdentityTag>())
            .collect::<semiloop::Result<_>>()?
    };
    let report = IdentityReport::for_tags(&b, &tags);
    if format == Format::Csv {
        writeln!(out, "identity,holds,witness").map_err(io)?;
    }
    for (tag, c) in report.entries() {
        let w = c.witness.as_deref().map(tuple).unwrap_or_default();
        match format {
            Format::Text if c.holds => writeln!(out, "{tag}: holds"),
            Format::Text => writeln!(out, "{tag}: fails at {w}"),
            Format::Csv => writeln!(out, "{tag},{},{w}", c.holds),
        }
        .map_err(io)?;
    }
    Ok(Status::from_bool(report.all_hold()))
}

fn tau_lines(d: &TransversalDecomposition) -> Vec<(&'static str, bool)> {
    let t = tau_analysis(d);
    vec![
        ("tau_bijective", t.tau_injective && t.tau_surjective),
        ("tau_involution", t.tau_involution),
        ("tau_semi_automorphism", t.semi_automorphism),
        ("tau_automorphism", t.automorphism),
        ("strong_br", t.strong_br),
        ("relations_consistent", t.violations().is_empty()),
    ]
}

fn describe(d: &TransversalDecomposition, format: Format, out: Out<'_>) -> CliResult<Status> {
    let b = d.induced_loop();
    let n = b.order();
    let conds = check_g_conditions(d);
    let hs = d.subgroup().members();
    let w = |out: Out<'_>, s: String| writeln!(out, "{s}").map_err(io);
    match format {
        Format::Text => {
            if let Some(orig) = d.normalized_from() {
                w(out, format!("# transversal {:?} normalized to contain the identity", orig.members()))?;
            }
            w(out, format!("transversal {:?}", d.transversal().members()))?;
            w(out, format!("core {:?}", d.core().members()))?;
            w(out, TableFile::from_loop(b).render().trim_end().to_string())?;
            w(out, "l".into())?;
            for x in 0..n {
                w(out, join(&(0..n).map(|y| d.l(x, y)).collect::<Vec<_>>()))?;
            }
            w(out, format!("sigma over H = {hs:?}"))?;
            for &h in hs {
                w(out, join(d.sigma(h).images()))?;
            }
            w(out, "m".into())?;
            for x in 0..n {
                w(out, join(&hs.iter().map(|&h| d.m(x, h)).collect::<Vec<_>>()))?;
            }
            for c in GCondition::ALL {
                match conds.witness(c) {
                    None => w(out, format!("{c}: holds"))?,
                    Some(wit) => w(out, format!("{c}: fails at {wit}"))?,
                }
            }
            for (name, v) in tau_lines(d) {
                w(out, format!("{name}: {v}"))?;
            }
        }
        Format::Csv => {
            w(out, "key,value".into())?;
            w(out, format!("transversal,{}", join(d.transversal().members())))?;
            w(out, format!("core,{}", join(d.core().members())))?;
            for x in 0..n {
                w(out, format!("loop_row_{x},{}", join(&b.rows()[x])))?;
            }
            for c in GCondition::ALL {
                w(out, format!("{c},{}", conds.holds(c)))?;
            }
            for (name, v) in tau_lines(d) {
                w(out, format!("{name},{v}"))?;
            }
        }
    }
    Ok(Status::Holds)
}

fn all_decompositions(
    g: &semiloop::FiniteGroup,
    h: &IndexSet,
    limit: usize,
    format: Format,
    out: Out<'_>,
) -> CliResult<Status> {
    if !g.is_subgroup(h) {
        return Err(semiloop::Error::NotSubgroup {
            reason: format!("{:?} is not closed", h.members()),
        }
        .into());
    }
    let names: Vec<&str> = GCondition::ALL.iter().map(|c| c.name()).collect();
    if format == Format::Csv {
        writeln!(out, "transversal,{},tau_automorphism", names.join(",")).map_err(io)?;
    }
    for b in g.enumerate_unital_transversals(h, limit)? {
        let d = decompose(g, h, &b)?;
        let conds = check_g_conditions(&d);
        let tau = tau_analysis(&d).automorphism;
        let flags: Vec<bool> = GCondition::ALL.iter().map(|&c| conds.holds(c)).collect();
        match format {
            Format::Text => {
                let held: Vec<&str> = names
                    .iter()
                    .zip(&flags)
                    .filter(|(_, &f)| f)
                    .map(|(n, _)| *n)
                    .collect();
                writeln!(out, "{:?}: {} tau_automorphism={tau}", b.members(), held.join(" "))
            }
            Format::Csv => writeln!(
                out,
                "{},{},{tau}",
                join(b.members()),
                flags.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
        .map_err(io)?;
    }
    Ok(Status::Holds)
}

fn acting_group(b: &semiloop::FiniteLeftLoop, spec: &str) -> CliResult<PermGroup> {
    Ok(match spec {
        "lmlt1" => b.lmlt1(),
        "aut" => b.automorphism_group()?,
        "psaut" => b.pseudo_automorphism_perm_group()?,
        "trivial" => PermGroup::trivial(b.order()),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
                path: path.to_string(),
                message: e.to_string(),
            })?;
            let mut gens = Vec::new();
            for (i, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let images = line
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| CliError::Parse {
                        line: i + 1,
                        message: e.to_string(),
                    })
                    .map_err(|e| e.in_file(path))?;
                gens.push(Permutation::new(images)?);
            }
            PermGroup::closure_with_degree(b.order(), &gens)?
        }
    })
}

fn build(
    standard: Option<&[String]>,
    external: Option<&str>,
    heisenberg: Option<usize>,
) -> CliResult<TableFile> {
    let (product, what) = if let Some([loop_path, hspec]) = standard {
        let b = TableFile::load(loop_path)?.expect_kind(TableKind::Loop)?.to_loop()?;
        let h = acting_group(&b, hspec)?;
        let spec = StdProductSpec::new(b, h)?;
        (standard_product(&spec)?, format!("standard product of {loop_path} with {hspec}"))
    } else if let Some(path) = external {
        let spec = ExternalSpecFile::load(path)?.to_spec()?;
        (external_product(&spec)?, format!("external product from {path}"))
    } else if let Some(p) = heisenberg {
        let spec = heisenberg_spec(p)?;
        (external_product(&spec)?, format!("plane over F_{p} extended by F_{p}"))
    } else {
        return Err(CliError::Input("nothing to build".into()));
    };
    let labels = product.pair_labels();
    let group = product.group.with_labels(labels)?;
    Ok(TableFile::from_group(&group)
        .with_comment(what)
        .with_comment(format!(
            "order {} = {} x {}; element (x,h) has index x*{} + h",
            group.order(),
            product.b_order,
            product.h_order,
            product.h_order
        )))
}

pub struct VerifyOptions {
    pub max_order: usize,
    pub cap: usize,
    pub loop_order: usize,
    pub samples: usize,
    pub mutations: usize,
    pub seed: u64,
    pub jobs: Option<usize>,
}

fn verify(o: &VerifyOptions, format: Format, out: Out<'_>) -> CliResult<Status> {
    if o.loop_order > 5 {
        return Err(CliError::Input("--loop-order is at most 5".into()));
    }
    let catalog = catalog_sweep(&SweepConfig {
        max_order: o.max_order,
        cap: o.cap,
        jobs: o.jobs,
    })?;
    let loops = loop_sweep(o.loop_order, LoopChecks::ALL, o.jobs)?;
    let sampled = sampled_loop_sweep(
        6,
        o.samples,
        o.seed,
        LoopChecks {
            standard_product: false,
            lmlt_tau: false,
            inverse_property: true,
        },
        o.jobs,
    )?;
    let mutations = mutation_sweep(o.mutations, o.seed);

    let cats = [
        Category::InternalIdentities,
        Category::AutomorphismCharacterization,
        Category::Tau,
        Category::Products,
        Category::Structure,
    ];
    let mut rows: Vec<(String, usize, usize)> = cats
        .iter()
        .map(|&c| (format!("catalog {c}"), catalog.decompositions, catalog.count(c)))
        .collect();
    for c in [Category::Tau, Category::Products, Category::InverseProperty] {
        rows.push((format!("loops {c}"), loops.loops(), loops.count(c)));
    }
    rows.push((
        "sampled order-6 inverse-property".into(),
        sampled.loops(),
        sampled.count(Category::InverseProperty),
    ));
    rows.push((
        "mutated external specs".into(),
        mutations.normalized,
        mutations.discrepancies.len(),
    ));
    let all: Vec<&Violation> = catalog
        .violations
        .iter()
        .chain(&loops.violations)
        .chain(&sampled.violations)
        .chain(&mutations.discrepancies)
        .collect();

    let w = |out: Out<'_>, s: String| writeln!(out, "{s}").map_err(io);
    match format {
        Format::Text => {
            w(
                out,
                format!(
                    "catalog up to order {}: {} groups, {} subgroup pairs, {} decompositions",
                    o.max_order, catalog.groups, catalog.pairs, catalog.decompositions
                ),
            )?;
            w(out, format!("left loops up to order {}: {}", o.loop_order, loops.loops()))?;
            for (name, items, bad) in &rows {
                w(out, format!("  {name}: {items} checked, {bad} violations"))?;
            }
            for v in &all {
                w(out, format!("violation {v}"))?;
            }
            w(out, format!("total violations: {}", all.len()))?;
        }
        Format::Csv => {
            w(out, "check,items,violations".into())?;
            for (name, items, bad) in &rows {
                w(out, format!("{name},{items},{bad}"))?;
            }
        }
    }
    Ok(Status::from_bool(all.is_empty()))
}

fn enumerate(
    n: usize,
    limit: Option<usize>,
    count: bool,
    format: Format,
    out: Out<'_>,
) -> CliResult<Status> {
    if count {
        if n == 0 {
            return Err(CliError::Input("loop order must be positive".into()));
        }
        match left_loop_count(n) {
            Some(c) => writeln!(out, "{c}"),
            None => writeln!(out, "more than 2^128"),
        }
        .map_err(io)?;
        return Ok(Status::Holds);
    }
    let loops = enumerate_left_loops(n)?.take(limit.unwrap_or(usize::MAX));
    for (i, b) in loops.enumerate() {
        match format {
            Format::Text => {
                if i > 0 {
                    writeln!(out).map_err(io)?;
                }
                out.write_all(TableFile::from_loop(&b).render().as_bytes())
            }
            Format::Csv => writeln!(
                out,
                "{}",
                b.flat_table().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            ),
        }
        .map_err(io)?;
    }
    Ok(Status::Holds)
}
