use std::fmt;

use super::{quotient_decomposition, subgroup_respects, TransversalDecomposition};
use crate::error::Result;
use crate::identities::{check_al, check_identity, check_pseudo_al, IdentityTag};

/// Conditions on a transversal, checked by multiplying in `G` (`N` is the
/// core of `H`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GCondition {
    /// `B⁻¹ ⊆ BN`
    Lip,
    /// `{x² : x ∈ B} ⊆ BN`
    Lap,
    /// `xBx ⊆ BN`
    Bol,
    /// `x{y²}x ⊆ BN`
    W,
    /// `xy²x ∈ (x·y)²N`
    Br,
    /// for each `h` some `c` with `chBh⁻¹ ⊆ BN`
    PsAl,
    /// `hBh⁻¹ ⊆ BN`
    Al,
    /// `x²B ⊆ BN`
    Lc,
    /// `xBx⁻¹ ⊆ BN`
    Lcc,
    /// `1 ∈ B` and `xBx ⊆ B`
    Twisted,
}

impl GCondition {
    pub const ALL: [GCondition; 10] = [
        GCondition::Lip,
        GCondition::Lap,
        GCondition::Bol,
        GCondition::W,
        GCondition::Br,
        GCondition::PsAl,
        GCondition::Al,
        GCondition::Lc,
        GCondition::Lcc,
        GCondition::Twisted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GCondition::Lip => "G-LIP",
            GCondition::Lap => "G-LAP",
            GCondition::Bol => "G-Bol",
            GCondition::W => "G-W",
            GCondition::Br => "G-Br",
            GCondition::PsAl => "G-PsAl",
            GCondition::Al => "G-Al",
            GCondition::Lc => "G-LC",
            GCondition::Lcc => "G-LCC",
            GCondition::Twisted => "twisted",
        }
    }

    /// The loop identity this condition corresponds to, if any.
    pub fn loop_identity(self) -> Option<IdentityTag> {
        Some(match self {
            GCondition::Lip => IdentityTag::Lip,
            GCondition::Lap => IdentityTag::Lap,
            GCondition::Bol => IdentityTag::Bol,
            GCondition::W => IdentityTag::W,
            GCondition::Br => IdentityTag::Bruck1,
            GCondition::PsAl => IdentityTag::PseudoAl,
            GCondition::Al => IdentityTag::Al,
            GCondition::Lc => IdentityTag::Lc,
            GCondition::Lcc => IdentityTag::Lcc,
            GCondition::Twisted => return None,
        })
    }
}

impl fmt::Display for GCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Each condition with the first failing tuple of group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GConditionReport {
    pub entries: Vec<(GCondition, Option<String>)>,
}

impl GConditionReport {
    pub fn holds(&self, c: GCondition) -> bool {
        self.entries
            .iter()
            .any(|(k, w)| *k == c && w.is_none())
    }

    pub fn witness(&self, c: GCondition) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| *k == c)
            .and_then(|(_, w)| w.as_deref())
    }
}

fn first_pair(
    elems: &[usize],
    fails: impl Fn(usize, usize) -> bool,
    label: &str,
) -> Option<String> {
    for &x in elems {
        for &y in elems {
            if fails(x, y) {
                return Some(format!("{label}=({x},{y})"));
            }
        }
    }
    None
}

pub fn check_g_conditions(d: &TransversalDecomposition) -> GConditionReport {
    let g = d.group();
    let elems = d.transversal().members();
    let bn = |a: usize| d.in_bn(a);
    let sq = |a: usize| g.mul(a, a);
    let mut entries = Vec::with_capacity(GCondition::ALL.len());
    for c in GCondition::ALL {
        let w = match c {
            GCondition::Lip => elems
                .iter()
                .find(|&&x| !bn(g.inv(x)))
                .map(|x| format!("x={x}")),
            GCondition::Lap => elems.iter().find(|&&x| !bn(sq(x))).map(|x| format!("x={x}")),
            GCondition::Bol => first_pair(elems, |x, y| !bn(g.product(&[x, y, x])), "(x,y)"),
            GCondition::W => first_pair(elems, |x, y| !bn(g.product(&[x, sq(y), x])), "(x,y)"),
            GCondition::Br => first_pair(
                elems,
                |x, y| {
                    let xy = d.element(d.induced_loop().mul(d.rep(x), d.rep(y)));
                    let lhs = g.product(&[x, sq(y), x]);
                    !d.in_core(g.mul(g.inv(sq(xy)), lhs))
                },
                "(x,y)",
            ),
            GCondition::PsAl => d
                .subgroup()
                .iter()
                .find(|&h| {
                    let hi = g.inv(h);
                    !elems
                        .iter()
                        .any(|&c| elems.iter().all(|&x| bn(g.product(&[c, h, x, hi]))))
                })
                .map(|h| format!("h={h}")),
            GCondition::Al => {
                let mut found = None;
                'outer: for h in d.subgroup().iter() {
                    let hi = g.inv(h);
                    for &x in elems {
                        if !bn(g.product(&[h, x, hi])) {
                            found = Some(format!("(h,x)=({h},{x})"));
                            break 'outer;
                        }
                    }
                }
                found
            }
            GCondition::Lc => first_pair(elems, |x, y| !bn(g.mul(sq(x), y)), "(x,y)"),
            GCondition::Lcc => {
                first_pair(elems, |x, y| !bn(g.product(&[x, y, g.inv(x)])), "(x,y)")
            }
            GCondition::Twisted => {
                if !d.transversal().contains(0) {
                    Some("identity missing".to_string())
                } else {
                    let inb = d.transversal().mask(g.order());
                    first_pair(elems, |x, y| !inb[g.product(&[x, y, x])], "(x,y)")
                }
            }
        };
        entries.push((c, w));
    }
    GConditionReport { entries }
}

/// One equivalence: the values of each route, which should all agree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceRow {
    pub name: String,
    pub routes: Vec<(&'static str, bool)>,
}

impl EquivalenceRow {
    pub fn consistent(&self) -> bool {
        self.routes.windows(2).all(|w| w[0].1 == w[1].1)
    }
}

impl fmt::Display for EquivalenceRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.name)?;
        for (route, v) in &self.routes {
            write!(f, " {route}={v}")?;
        }
        Ok(())
    }
}

/// The identity rows (G-condition, G/N-condition, loop identity) and the
/// automorphism rows, each computed along independent routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InternalIdentsReport {
    pub identity_rows: Vec<EquivalenceRow>,
    pub aut_rows: Vec<EquivalenceRow>,
    pub pseudo_rows: Vec<EquivalenceRow>,
    pub remark_rows: Vec<EquivalenceRow>,
}

impl InternalIdentsReport {
    pub fn rows(&self) -> impl Iterator<Item = &EquivalenceRow> {
        self.identity_rows
            .iter()
            .chain(&self.aut_rows)
            .chain(&self.pseudo_rows)
            .chain(&self.remark_rows)
    }

    pub fn identity_violations(&self) -> Vec<String> {
        bad(&self.identity_rows)
    }

    /// Violations among the automorphism rows and the per-element rows.
    pub fn aut_violations(&self) -> Vec<String> {
        let mut out = bad(&self.aut_rows);
        out.extend(bad(&self.pseudo_rows));
        out
    }

    pub fn violations(&self) -> Vec<String> {
        self.rows()
            .filter(|r| !r.consistent())
            .map(|r| r.to_string())
            .collect()
    }
}

fn bad(rows: &[EquivalenceRow]) -> Vec<String> {
    rows.iter()
        .filter(|r| !r.consistent())
        .map(|r| r.to_string())
        .collect()
}

fn row(name: impl Into<String>, routes: Vec<(&'static str, bool)>) -> EquivalenceRow {
    EquivalenceRow {
        name: name.into(),
        routes,
    }
}

pub fn verify_internal_idents(d: &TransversalDecomposition) -> Result<InternalIdentsReport> {
    let b = d.induced_loop();
    let here = check_g_conditions(d);
    let quotient = quotient_decomposition(d, d.core())?;
    let there = check_g_conditions(&quotient.decomposition);
    let identity = |t: IdentityTag| check_identity(b, t).holds;

    let mut identity_rows = Vec::new();
    for c in [
        GCondition::Lip,
        GCondition::Lap,
        GCondition::Bol,
        GCondition::W,
        GCondition::Br,
    ] {
        let tag = c.loop_identity().expect("identity condition");
        identity_rows.push(row(
            c.name(),
            vec![
                ("G", here.holds(c)),
                ("G/N", there.holds(c)),
                ("loop", identity(tag)),
            ],
        ));
    }

    let g0 = d.group().generated_subgroup(d.transversal())?;
    let sub = subgroup_respects(d, &g0)?.expect("⟨B⟩ respects the decomposition");
    let at_g0 = check_g_conditions(&sub.decomposition);
    let aut_rows = vec![
        row(
            "PsAl quotient",
            vec![
                ("G", here.holds(GCondition::PsAl)),
                ("G/N", there.holds(GCondition::PsAl)),
            ],
        ),
        row(
            "PsAl generated",
            vec![("G0", at_g0.holds(GCondition::PsAl)), ("loop", check_pseudo_al(b))],
        ),
        row(
            "Al quotient",
            vec![
                ("G", here.holds(GCondition::Al)),
                ("G/N", there.holds(GCondition::Al)),
            ],
        ),
        row(
            "Al generated",
            vec![("G0", at_g0.holds(GCondition::Al)), ("loop", check_al(b))],
        ),
    ];

    let pseudo_rows = pseudo_lemma_rows(d);

    let mut remark_rows = Vec::new();
    for c in [GCondition::Lc, GCondition::Lcc] {
        let tag = c.loop_identity().expect("identity condition");
        remark_rows.push(row(
            c.name(),
            vec![
                ("G", here.holds(c)),
                ("G/N", there.holds(c)),
                ("loop", identity(tag)),
            ],
        ));
    }
    if d.is_corefree() {
        remark_rows.push(row(
            "twisted subgroup (corefree)",
            vec![
                ("twisted", here.holds(GCondition::Twisted)),
                ("loop Bol", identity(IdentityTag::Bol)),
            ],
        ));
    }
    remark_rows.push(row(
        "quotient corefree",
        vec![("expected", true), ("actual", quotient.decomposition.is_corefree())],
    ));

    Ok(InternalIdentsReport {
        identity_rows,
        aut_rows,
        pseudo_rows,
        remark_rows,
    })
}

/// For each `h ∈ H`, three descriptions of `σ_h` being a
/// pseudo-automorphism, and three of it being an automorphism.
fn pseudo_lemma_rows(d: &TransversalDecomposition) -> Vec<EquivalenceRow> {
    let g = d.group();
    let b = d.induced_loop();
    let n = b.order();
    let elems = d.transversal().members();
    let mut rows = Vec::new();
    for h in d.subgroup().iter() {
        let phi = d.sigma(h);
        let hi = g.inv(h);
        let conj_in_bn = |c: usize| {
            elems
                .iter()
                .all(|&x| d.in_bn(g.product(&[c, h, x, hi])))
        };
        let via_tables = |c: usize| {
            (0..n).all(|x| d.in_core(g.mul(d.l(c, phi.apply(x)), d.m(x, h))))
        };
        rows.push(row(
            format!("pseudo-automorphism h={h}"),
            vec![
                ("loop", b.is_pseudo_automorphism(phi)),
                ("conjugates", elems.iter().any(|&c| conj_in_bn(c))),
                ("tables", (0..n).any(via_tables)),
            ],
        ));
        rows.push(row(
            format!("automorphism h={h}"),
            vec![
                ("loop", b.is_automorphism(phi)),
                ("conjugates", conj_in_bn(0)),
                ("tables", (0..n).all(|x| d.in_core(d.m(x, h)))),
            ],
        ));
    }
    rows
}
