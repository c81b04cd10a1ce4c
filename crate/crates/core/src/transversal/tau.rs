use super::{check_g_conditions, decompose, GCondition, TransversalDecomposition};
use crate::error::Result;
use crate::fingroup::IndexSet;
use crate::finloop::{is_bijection, FiniteLeftLoop};
use crate::identities::{check_identity, IdentityTag};

/// Everything known about `τ(ah) = a⁻¹h` on one decomposition, each fact
/// computed directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauReport {
    pub tau_injective: bool,
    pub tau_surjective: bool,
    pub rho_injective: bool,
    pub rho_surjective: bool,
    pub tau_involution: bool,
    /// `x·x^ρ·x^ρ·x = 1` in `G` for every `x ∈ B`
    pub involution_condition: bool,
    /// `τ(aba) = τ(a)τ(b)τ(a)`
    pub semi_automorphism: bool,
    /// `(xyx)² = (x·(y·x))²` for `x, y ∈ B`
    pub squares_agree: bool,
    pub squaring_injective: bool,
    pub loop_bol: bool,
    pub automorphism: bool,
    /// `xy²x = (x·y)²`
    pub strong_br: bool,
    /// `σ_h(y)² = hy²h⁻¹`
    pub sig_square: bool,
    pub corefree: bool,
    pub generated: bool,
    pub g_bol: bool,
    pub g_al: bool,
    pub g_lip: bool,
    pub g_br: bool,
    /// `gBτ(g)⁻¹ ⊆ BN` for every `g`
    pub twisted_by_tau: bool,
    /// `τ(B) ⊆ BN`
    pub tau_b_in_bn: bool,
}

impl TauReport {
    /// Each stated relation that fails, by name.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut need = |ok: bool, what: &str| {
            if !ok {
                out.push(what.to_string());
            }
        };
        need(self.tau_injective == self.rho_injective, "τ injective ⇔ ρ injective");
        need(self.tau_surjective == self.rho_surjective, "τ surjective ⇔ ρ surjective");
        need(
            (self.tau_injective && self.tau_surjective)
                == (self.rho_injective && self.rho_surjective),
            "τ bijective ⇔ ρ bijective",
        );
        need(
            self.tau_involution == self.involution_condition,
            "τ² = I ⇔ x·x^ρ·x^ρ·x = 1",
        );
        need(
            !self.semi_automorphism || self.squares_agree,
            "τ semi-automorphism ⇒ (xyx)² = (x·(y·x))²",
        );
        need(
            !(self.squaring_injective && self.semi_automorphism) || self.loop_bol,
            "injective squaring and τ semi-automorphism ⇒ Bol",
        );
        need(
            self.automorphism == (self.strong_br && self.sig_square),
            "τ automorphism ⇔ strong Br ∧ σ-squares",
        );
        need(
            !(self.corefree && self.g_al) || self.automorphism == self.strong_br,
            "corefree and G-Al ⇒ (τ automorphism ⇔ strong Br)",
        );
        need(
            !self.generated || self.automorphism == self.strong_br,
            "G = ⟨B⟩ ⇒ (τ automorphism ⇔ strong Br)",
        );
        need(
            (self.g_bol && self.g_al) == self.twisted_by_tau,
            "G-Bol ∧ G-Al ⇔ gBτ(g)⁻¹ ⊆ BN",
        );
        need(self.g_lip == self.tau_b_in_bn, "G-LIP ⇔ τ(B) ⊆ BN");
        need(!self.strong_br || self.g_br, "strong Br ⇒ G-Br");
        out
    }
}

pub fn tau_analysis(d: &TransversalDecomposition) -> TauReport {
    let g = d.group();
    let b = d.induced_loop();
    let n = b.order();
    let order = g.order();
    let tau = d.tau_map();
    let el = |x: usize| d.element(x);
    let sq = |a: usize| g.mul(a, a);

    let mut hit = vec![false; order];
    for &t in tau {
        hit[t] = true;
    }
    let tau_surjective = hit.iter().all(|&v| v);
    let tau_injective = is_bijection(tau);
    let rho = b.right_inverse_map();
    let mut rho_hit = vec![0usize; n];
    for &r in &rho {
        rho_hit[r] += 1;
    }
    let rho_injective = rho_hit.iter().all(|&c| c <= 1);
    let rho_surjective = rho_hit.iter().all(|&c| c >= 1);

    let tau_involution = (0..order).all(|a| tau[tau[a]] == a);
    let involution_condition = (0..n).all(|x| {
        let r = el(rho[x]);
        g.product(&[el(x), r, r, el(x)]) == 0
    });

    let semi_automorphism = (0..order).all(|a| {
        (0..order).all(|c| tau[g.product(&[a, c, a])] == g.product(&[tau[a], tau[c], tau[a]]))
    });
    let squares_agree = (0..n).all(|x| {
        (0..n).all(|y| {
            let prod = g.product(&[el(x), el(y), el(x)]);
            let lp = el(b.mul(x, b.mul(y, x)));
            sq(prod) == sq(lp)
        })
    });
    let squaring_injective = is_bijection(&(0..order).map(sq).collect::<Vec<_>>());
    let loop_bol = check_identity(b, IdentityTag::Bol).holds;

    let automorphism = tau_injective
        && (0..order).all(|a| (0..order).all(|c| tau[g.mul(a, c)] == g.mul(tau[a], tau[c])));
    let strong_br = (0..n).all(|x| {
        (0..n).all(|y| g.product(&[el(x), sq(el(y)), el(x)]) == sq(el(b.mul(x, y))))
    });
    let sig_square = d.subgroup().iter().all(|h| {
        let hi = g.inv(h);
        (0..n).all(|y| sq(el(d.sigma(h).apply(y))) == g.product(&[h, sq(el(y)), hi]))
    });

    let conds = check_g_conditions(d);
    let elems = d.transversal().members();
    let twisted_by_tau = (0..order).all(|a| {
        let ti = g.inv(tau[a]);
        elems.iter().all(|&x| d.in_bn(g.product(&[a, x, ti])))
    });
    let tau_b_in_bn = elems.iter().all(|&x| d.in_bn(tau[x]));
    let generated = g
        .generated_subgroup(d.transversal())
        .map(|s| s.len() == order)
        .unwrap_or(false);

    TauReport {
        tau_injective,
        tau_surjective,
        rho_injective,
        rho_surjective,
        tau_involution,
        involution_condition,
        semi_automorphism,
        squares_agree,
        squaring_injective,
        loop_bol,
        automorphism,
        strong_br,
        sig_square,
        corefree: d.is_corefree(),
        generated,
        g_bol: conds.holds(GCondition::Bol),
        g_al: conds.holds(GCondition::Al),
        g_lip: conds.holds(GCondition::Lip),
        g_br: conds.holds(GCondition::Br),
        twisted_by_tau,
        tau_b_in_bn,
    }
}

/// `LMlt(B) = L(B)·LMlt₁(B)` as a decomposition of its Cayley table.
pub fn lmlt_decomposition(b: &FiniteLeftLoop) -> Result<TransversalDecomposition> {
    let lmlt = b.lmlt();
    let image = lmlt.to_cayley();
    let translations: IndexSet = b
        .left_translations()
        .iter()
        .map(|t| lmlt.index_of(t).expect("generator"))
        .collect();
    let stabilizer: IndexSet = image
        .elements
        .iter()
        .enumerate()
        .filter(|(_, p)| p.apply(0) == 0)
        .map(|(i, _)| i)
        .collect();
    decompose(&image.group, &stabilizer, &translations)
}

/// `τ(L_x φ) = L_x⁻¹ φ` on the left multiplication group versus the Bruck
/// identities of the loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LmltTauReport {
    pub bruck1: bool,
    pub bruck_loop: bool,
    pub squaring_injective: bool,
    pub tau_automorphism: bool,
}

impl LmltTauReport {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.bruck1 != self.tau_automorphism {
            out.push(format!(
                "Bruck1 is {} but τ automorphism is {}",
                self.bruck1, self.tau_automorphism
            ));
        }
        if self.squaring_injective && self.bruck_loop != self.tau_automorphism {
            out.push(format!(
                "squaring injective, Bruck loop is {} but τ automorphism is {}",
                self.bruck_loop, self.tau_automorphism
            ));
        }
        out
    }
}

pub fn lmlt_tau_check(b: &FiniteLeftLoop) -> Result<LmltTauReport> {
    let d = lmlt_decomposition(b)?;
    let g = d.group();
    let order = g.order();
    let tau = d.tau_map();
    // a bijection respecting right multiplication by the generators L_x
    // respects all products
    let tau_automorphism = is_bijection(tau)
        && (0..order).all(|a| {
            d.transversal()
                .iter()
                .all(|s| tau[g.mul(a, s)] == g.mul(tau[a], tau[s]))
        });
    let squaring_injective =
        is_bijection(&(0..order).map(|a| g.mul(a, a)).collect::<Vec<_>>());
    Ok(LmltTauReport {
        bruck1: check_identity(b, IdentityTag::Bruck1).holds,
        bruck_loop: check_identity(b, IdentityTag::BruckLoop).holds,
        squaring_injective,
        tau_automorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::super::tests::z4_example;
    use super::*;
    use crate::fingroup::{cyclic, dihedral};
    use crate::finloop::{enumerate_left_loops, loop_of_group};

    #[test]
    fn abelian_with_trivial_h_is_inversion() {
        let g = cyclic(6);
        let d = decompose(&g, &IndexSet::singleton(0), &IndexSet::full(6)).unwrap();
        for a in 0..6 {
            assert_eq!(d.tau(a), g.inv(a));
        }
        let r = tau_analysis(&d);
        assert!(r.automorphism && r.violations().is_empty());
    }

    #[test]
    fn z4_example_tau() {
        let d = z4_example();
        let r = tau_analysis(&d);
        assert!(r.tau_involution && r.automorphism, "{r:?}");
        assert!(check_identity(d.induced_loop(), IdentityTag::Bruck1).holds);
        assert!(r.violations().is_empty());
    }

    #[test]
    fn lmlt_tau_full_check_agrees_with_generator_check() {
        for b in enumerate_left_loops(4).unwrap() {
            let d = lmlt_decomposition(&b).unwrap();
            let full = tau_analysis(&d).automorphism;
            assert_eq!(lmlt_tau_check(&b).unwrap().tau_automorphism, full);
        }
    }

    #[test]
    fn lmlt_tau_on_groups() {
        // in a group, Bruck1 says xy = yx
        let r = lmlt_tau_check(&loop_of_group(&cyclic(5))).unwrap();
        assert!(r.bruck1 && r.tau_automorphism);
        let r = lmlt_tau_check(&loop_of_group(&dihedral(3))).unwrap();
        assert!(r.violations().is_empty(), "{r:?}");
    }
}
