//! Loop identities checked pointwise over all tuples, the characterizations
//! through left translations, and the implications between them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::finloop::FiniteLeftLoop;
use crate::perm::Permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityTag {
    RightLoop,
    Loop,
    Lip,
    Lap,
    Bol,
    W,
    Aip,
    Bruck1,
    Bruck2,
    Lc,
    Lcc,
    Al,
    PseudoAl,
    Kikkawa,
    BruckLoop,
    BLoop,
}

impl IdentityTag {
    pub const ALL: [IdentityTag; 16] = [
        IdentityTag::RightLoop,
        IdentityTag::Loop,
        IdentityTag::Lip,
        IdentityTag::Lap,
        IdentityTag::Bol,
        IdentityTag::W,
        IdentityTag::Aip,
        IdentityTag::Bruck1,
        IdentityTag::Bruck2,
        IdentityTag::Lc,
        IdentityTag::Lcc,
        IdentityTag::Al,
        IdentityTag::PseudoAl,
        IdentityTag::Kikkawa,
        IdentityTag::BruckLoop,
        IdentityTag::BLoop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityTag::RightLoop => "right_loop",
            IdentityTag::Loop => "loop",
            IdentityTag::Lip => "LIP",
            IdentityTag::Lap => "LAP",
            IdentityTag::Bol => "Bol",
            IdentityTag::W => "W",
            IdentityTag::Aip => "AIP",
            IdentityTag::Bruck1 => "Bruck1",
            IdentityTag::Bruck2 => "Bruck2",
            IdentityTag::Lc => "LC",
            IdentityTag::Lcc => "LCC",
            IdentityTag::Al => "A_l",
            IdentityTag::PseudoAl => "pseudo_A_l",
            IdentityTag::Kikkawa => "Kikkawa",
            IdentityTag::BruckLoop => "Bruck_loop",
            IdentityTag::BLoop => "B_loop",
        }
    }
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '-'))
            .collect::<String>()
            .to_ascii_lowercase();
        IdentityTag::ALL
            .into_iter()
            .find(|t| t.name().replace('_', "").to_ascii_lowercase() == key)
            .or(match key.as_str() {
                "rightloop" => Some(IdentityTag::RightLoop),
                "pseudoal" | "psal" => Some(IdentityTag::PseudoAl),
                "bruck" => Some(IdentityTag::BruckLoop),
                "bloop" => Some(IdentityTag::BLoop),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidArgument(format!("unknown identity tag '{s}'")))
    }
}

/// Outcome of one identity check; `witness` is the lexicographically least
/// violating tuple when the identity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl IdentityCheck {
    fn from_witness(witness: Option<Vec<usize>>) -> Self {
        IdentityCheck {
            holds: witness.is_none(),
            witness,
        }
    }
}

/// Least tuple in `{0..n-1}^arity` (lexicographic) for which `ok` fails.
fn first_violation(n: usize, arity: usize, mut ok: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    let mut t = vec![0usize; arity];
    if n == 0 {
        return None;
    }
    loop {
        if !ok(&t) {
            return Some(t);
        }
        let mut pos = arity;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < n {
                break;
            }
            t[pos] = 0;
        }
    }
}

fn first_failure(checks: impl IntoIterator<Item = IdentityCheck>) -> IdentityCheck {
    checks
        .into_iter()
        .find(|c| !c.holds)
        .unwrap_or(IdentityCheck {
            holds: true,
            witness: None,
        })
}

/// Least pair `x < x'` with `f(x) = f(x')`, i.e. a witness that `f` is not
/// injective (equivalently not bijective on a finite set).
fn collision(f: &[usize]) -> Option<Vec<usize>> {
    let n = f.len();
    for x in 0..n {
        for x2 in x + 1..n {
            if f[x] == f[x2] {
                return Some(vec![x, x2]);
            }
        }
    }
    None
}

pub fn check_identity(b: &FiniteLeftLoop, which: IdentityTag) -> IdentityCheck {
    let n = b.order();
    let m = |x: usize, y: usize| b.mul(x, y);
    let rho = b.right_inverse_map();
    let w = match which {
        IdentityTag::RightLoop | IdentityTag::Loop => right_loop_witness(b),
        IdentityTag::Lip => first_violation(n, 2, |t| m(rho[t[0]], m(t[0], t[1])) == t[1]),
        IdentityTag::Lap => {
            first_violation(n, 2, |t| m(t[0], m(t[0], t[1])) == m(m(t[0], t[0]), t[1]))
        }
        IdentityTag::Bol => first_violation(n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            m(x, m(y, m(x, z))) == m(m(x, m(y, x)), z)
        }),
        IdentityTag::W => first_violation(n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            let yy = m(y, y);
            m(x, m(yy, m(x, z))) == m(m(x, m(yy, x)), z)
        }),
        IdentityTag::Aip => first_violation(n, 2, |t| rho[m(t[0], t[1])] == m(rho[t[0]], rho[t[1]])),
        IdentityTag::Bruck1 => first_violation(n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            let xy = m(x, y);
            m(x, m(y, m(y, m(x, z)))) == m(xy, m(xy, z))
        }),
        IdentityTag::Bruck2 => first_violation(n, 2, |t| {
            let (x, y) = (t[0], t[1]);
            let xy = m(x, y);
            m(x, m(y, m(y, x))) == m(xy, xy)
        }),
        IdentityTag::Lc => first_violation(n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            m(x, m(x, m(y, z))) == m(m(x, m(x, y)), z)
        }),
        IdentityTag::Lcc => first_violation(n, 3, |t| {
            let (x, y, z) = (t[0], t[1], t[2]);
            m(x, m(y, b.left_divide(x, z))) == m(m(x, m(y, rho[x])), z)
        }),
        IdentityTag::Al => al_witness(b),
        IdentityTag::PseudoAl => first_violation(n, 2, |t| {
            let inner = b.inner_mapping(t[0], t[1]);
            (0..n).any(|c| b.is_companion(&inner, c))
        }),
        IdentityTag::Kikkawa => {
            return first_failure(
                [IdentityTag::Al, IdentityTag::Lip, IdentityTag::Aip].map(|t| check_identity(b, t)),
            )
        }
        IdentityTag::BruckLoop => {
            return first_failure([IdentityTag::Bol, IdentityTag::Aip].map(|t| check_identity(b, t)))
        }
        IdentityTag::BLoop => {
            let bruck = check_identity(b, IdentityTag::BruckLoop);
            if !bruck.holds {
                return bruck;
            }
            collision(&b.squares())
        }
    };
    IdentityCheck::from_witness(w)
}

fn right_loop_witness(b: &FiniteLeftLoop) -> Option<Vec<usize>> {
    let n = b.order();
    for x in 0..n {
        for x2 in x + 1..n {
            for y in 0..n {
                if b.mul(x, y) == b.mul(x2, y) {
                    return Some(vec![x, x2, y]);
                }
            }
        }
    }
    None
}

fn al_witness(b: &FiniteLeftLoop) -> Option<Vec<usize>> {
    let n = b.order();
    for x in 0..n {
        for y in 0..n {
            let f = b.inner_images(x, y);
            for u in 0..n {
                for v in 0..n {
                    if f[b.mul(u, v)] != b.mul(f[u], f[v]) {
                        return Some(vec![x, y, u, v]);
                    }
                }
            }
        }
    }
    None
}

pub fn check_al(b: &FiniteLeftLoop) -> bool {
    check_identity(b, IdentityTag::Al).holds
}

pub fn check_pseudo_al(b: &FiniteLeftLoop) -> bool {
    check_identity(b, IdentityTag::PseudoAl).holds
}

pub fn check_kikkawa(b: &FiniteLeftLoop) -> bool {
    check_identity(b, IdentityTag::Kikkawa).holds
}

pub fn check_b_loop(b: &FiniteLeftLoop) -> bool {
    check_identity(b, IdentityTag::BLoop).holds
}

/// Every identity flag with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    checks: Vec<(IdentityTag, IdentityCheck)>,
}

impl IdentityReport {
    pub fn new(b: &FiniteLeftLoop) -> Self {
        Self::for_tags(b, &IdentityTag::ALL)
    }

    pub fn for_tags(b: &FiniteLeftLoop, tags: &[IdentityTag]) -> Self {
        IdentityReport {
            checks: tags.iter().map(|&t| (t, check_identity(b, t))).collect(),
        }
    }

    pub fn get(&self, tag: IdentityTag) -> Option<&IdentityCheck> {
        self.checks.iter().find(|(t, _)| *t == tag).map(|(_, c)| c)
    }

    /// Panics if `tag` was not part of the report.
    pub fn holds(&self, tag: IdentityTag) -> bool {
        self.get(tag).expect("tag not in report").holds
    }

    pub fn entries(&self) -> &[(IdentityTag, IdentityCheck)] {
        &self.checks
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|(_, c)| c.holds)
    }
}

/// Membership in `L(B)`: `Some(a)` when `f = L_a`.
fn as_translation(b: &FiniteLeftLoop, f: &[usize]) -> Option<usize> {
    let a = f[0];
    (0..b.order()).all(|z| b.mul(a, z) == f[z]).then_some(a)
}

/// The same identities decided through translation sets: each holds iff
/// the corresponding composite of left translations lies in `L(B)`.
pub mod translation_form {
    use super::*;

    fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
        g.iter().map(|&v| f[v]).collect()
    }

    fn l(b: &FiniteLeftLoop, x: usize) -> Vec<usize> {
        b.left_translation(x).images().to_vec()
    }

    fn l_inv(b: &FiniteLeftLoop, x: usize) -> Vec<usize> {
        (0..b.order()).map(|z| b.left_divide(x, z)).collect()
    }

    /// LIP ⇔ `L_x⁻¹ ∈ L(B)` for all `x`.
    pub fn lip(b: &FiniteLeftLoop) -> bool {
        (0..b.order()).all(|x| as_translation(b, &l_inv(b, x)).is_some())
    }

    /// LAP ⇔ `L_x² ∈ L(B)`.
    pub fn lap(b: &FiniteLeftLoop) -> bool {
        (0..b.order()).all(|x| as_translation(b, &compose(&l(b, x), &l(b, x))).is_some())
    }

    /// Bol ⇔ `L_x L_y L_x ∈ L(B)`.
    pub fn bol(b: &FiniteLeftLoop) -> bool {
        let n = b.order();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let f = compose(&compose(&l(b, x), &l(b, y)), &l(b, x));
                as_translation(b, &f).is_some()
            })
        })
    }

    /// W ⇔ `L_x L_{y·y} L_x ∈ L(B)`.
    pub fn w(b: &FiniteLeftLoop) -> bool {
        let n = b.order();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let f = compose(&compose(&l(b, x), &l(b, b.mul(y, y))), &l(b, x));
                as_translation(b, &f).is_some()
            })
        })
    }

    /// LC ⇔ `L_x L_x L_y ∈ L(B)`.
    pub fn lc(b: &FiniteLeftLoop) -> bool {
        let n = b.order();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let f = compose(&compose(&l(b, x), &l(b, x)), &l(b, y));
                as_translation(b, &f).is_some()
            })
        })
    }

    /// LCC ⇔ `L_x L_y L_x⁻¹ ∈ L(B)`.
    pub fn lcc(b: &FiniteLeftLoop) -> bool {
        let n = b.order();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let f = compose(&compose(&l(b, x), &l(b, y)), &l_inv(b, x));
                as_translation(b, &f).is_some()
            })
        })
    }

    /// Bruck1 ⇔ `L_x L_y L_y L_x = L_{x·y} L_{x·y}`.
    pub fn bruck1(b: &FiniteLeftLoop) -> bool {
        let n = b.order();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let lhs = compose(&compose(&compose(&l(b, x), &l(b, y)), &l(b, y)), &l(b, x));
                let xy = l(b, b.mul(x, y));
                lhs == compose(&xy, &xy)
            })
        })
    }

    /// AIP ⇔ `ρ L_x λ ∈ L(B)` for all `x` (with `ρ` bijective), since
    /// `ρ L_x λ (z) = (x·λz)^ρ` and AIP says it is `x^ρ·z`.
    pub fn aip(b: &FiniteLeftLoop) -> bool {
        let rho = b.right_inverse_map();
        let Some(lambda) = b.left_inverse_map() else {
            return super::check_identity(b, IdentityTag::Aip).holds;
        };
        (0..b.order()).all(|x| {
            let f: Vec<usize> = lambda.iter().map(|&lz| rho[b.mul(x, lz)]).collect();
            as_translation(b, &f) == Some(rho[x])
        })
    }
}

/// Violated clauses of the four AIP-related implications, by number.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AipEquivalenceReport {
    pub violations: Vec<(u8, String)>,
}

impl AipEquivalenceReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// (1) Bruck1 ⇒ (LIP ⇔ AIP); (2) Kikkawa ⇒ Bruck1;
/// (3) LAP ∧ Bruck2 ⇒ (Bruck1 ⇔ W); (4) Bol ⇒ (AIP ⇔ Bruck1).
pub fn verify_aip_equivalences(b: &FiniteLeftLoop) -> AipEquivalenceReport {
    let r = IdentityReport::for_tags(
        b,
        &[
            IdentityTag::Lip,
            IdentityTag::Lap,
            IdentityTag::Bol,
            IdentityTag::W,
            IdentityTag::Aip,
            IdentityTag::Bruck1,
            IdentityTag::Bruck2,
            IdentityTag::Al,
        ],
    );
    let h = |t| r.holds(t);
    use IdentityTag::*;
    let kikkawa = h(Al) && h(Lip) && h(Aip);
    let mut out = AipEquivalenceReport::default();
    let mut flag = |clause: u8, ok: bool, what: &str| {
        if !ok {
            out.violations.push((clause, what.to_string()));
        }
    };
    flag(1, !h(Bruck1) || h(Lip) == h(Aip), "Bruck1 holds but LIP and AIP differ");
    flag(2, !kikkawa || h(Bruck1), "Kikkawa loop without Bruck1");
    flag(
        3,
        !(h(Lap) && h(Bruck2)) || h(Bruck1) == h(W),
        "LAP and Bruck2 hold but Bruck1 and W differ",
    );
    flag(4, !h(Bol) || h(Aip) == h(Bruck1), "Bol loop where AIP and Bruck1 differ");
    out
}

/// A W-loop whose squaring map is onto is a Bol loop; `false` only on a
/// counterexample.
pub fn w_with_onto_squares_is_bol(b: &FiniteLeftLoop) -> bool {
    let onto = crate::finloop::is_bijection(&b.squares());
    !(onto && check_identity(b, IdentityTag::W).holds) || check_identity(b, IdentityTag::Bol).holds
}

/// For a Bol loop, `(x·y)·(ρx·ρy)` is a companion of `L(x,y)`; `false`
/// only on a counterexample.
pub fn bol_inner_companions_hold(b: &FiniteLeftLoop) -> bool {
    if !check_identity(b, IdentityTag::Bol).holds {
        return true;
    }
    let rho = b.right_inverse_map();
    let n = b.order();
    (0..n).all(|x| {
        (0..n).all(|y| {
            let c = b.mul(b.mul(x, y), b.mul(rho[x], rho[y]));
            b.is_companion(&b.inner_mapping(x, y), c)
        })
    })
}

/// Inner mapping as a permutation, for callers holding only identity data.
pub fn inner_mapping(b: &FiniteLeftLoop, x: usize, y: usize) -> Permutation {
    b.inner_mapping(x, y)
}
