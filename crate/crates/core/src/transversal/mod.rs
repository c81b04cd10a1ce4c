//! Internal semidirect products: a group factored as `G = BH` with `B` a
//! unital left transversal of the subgroup `H`.

mod conditions;
mod tau;
mod triangular;

pub use conditions::{
    check_g_conditions, verify_internal_idents, GCondition, GConditionReport, InternalIdentsReport,
};
pub use tau::{lmlt_decomposition, lmlt_tau_check, tau_analysis, LmltTauReport, TauReport};
pub use triangular::{a_point, center_point, triangular_decomposition, triangular_index};

use crate::error::{Error, Result};
use crate::fingroup::{FiniteGroup, IndexSet};
use crate::finloop::FiniteLeftLoop;
use crate::perm::{PermGroup, Permutation};
use crate::semidirect::{standard_product, StdProductSpec};

/// `G = BH` together with every table derived from it. Loop elements are
/// positions in `B` (sorted, so the identity is 0); `H`-valued tables hold
/// elements of `G`.
#[derive(Clone, Debug)]
pub struct TransversalDecomposition {
    g: FiniteGroup,
    h: IndexSet,
    b: IndexSet,
    normalized_from: Option<IndexSet>,
    loop_: FiniteLeftLoop,
    rep: Vec<usize>,
    hpart: Vec<usize>,
    in_h: Vec<bool>,
    sigma: Vec<Permutation>,
    l: Vec<usize>,
    // m[x * |G| + h], meaningful for h in H only
    m: Vec<usize>,
    core: IndexSet,
    in_core: Vec<bool>,
    tau: Vec<usize>,
}

/// Splits `G = BH`. A transversal that misses the identity is replaced by
/// its normalization; [`TransversalDecomposition::normalized_from`] then
/// returns the original.
pub fn decompose(g: &FiniteGroup, h: &IndexSet, b: &IndexSet) -> Result<TransversalDecomposition> {
    if !g.is_subgroup(h) {
        return Err(Error::NotSubgroup {
            reason: format!("{h} is not closed in a group of order {}", g.order()),
        });
    }
    if let Some(reason) = g.transversal_problem(h, b)? {
        return Err(Error::NotTransversal { reason });
    }
    let (b, normalized_from) = if b.contains(0) {
        (b.clone(), None)
    } else {
        (g.normalize_transversal(h, b)?, Some(b.clone()))
    };
    let order = g.order();
    let n = b.len();
    let elems = b.members();
    let mut rep = vec![usize::MAX; order];
    let mut hpart = vec![usize::MAX; order];
    for (i, &x) in elems.iter().enumerate() {
        for k in h.iter() {
            let p = g.mul(x, k);
            rep[p] = i;
            hpart[p] = k;
        }
    }
    let in_h = h.mask(order);
    let mut table = vec![0; n * n];
    let mut l = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let p = g.mul(elems[i], elems[j]);
            table[i * n + j] = rep[p];
            l[i * n + j] = hpart[p];
        }
    }
    let loop_ = FiniteLeftLoop::validate(table.chunks(n).map(|r| r.to_vec()).collect())?;
    let sigma: Vec<Permutation> = (0..order)
        .map(|a| Permutation::from_images_unchecked(elems.iter().map(|&x| rep[g.mul(a, x)]).collect()))
        .collect();
    let mut m = vec![usize::MAX; n * order];
    for i in 0..n {
        for k in h.iter() {
            let moved = elems[sigma[k].apply(i)];
            m[i * order + k] = g.product(&[g.inv(moved), k, elems[i], g.inv(k)]);
        }
    }
    let core = g.core(h)?;
    let in_core = core.mask(order);
    let tau = (0..order).map(|a| g.mul(g.inv(elems[rep[a]]), hpart[a])).collect();
    let d = TransversalDecomposition {
        g: g.clone(),
        h: h.clone(),
        b,
        normalized_from,
        loop_,
        rep,
        hpart,
        in_h,
        sigma,
        l,
        m,
        core,
        in_core,
        tau,
    };
    if let Some(v) = d.invariant_violations().first() {
        return Err(Error::InvalidArgument(format!("decomposition invariant failed: {v}")));
    }
    Ok(d)
}

impl TransversalDecomposition {
    pub fn group(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn subgroup(&self) -> &IndexSet {
        &self.h
    }

    pub fn transversal(&self) -> &IndexSet {
        &self.b
    }

    /// The transversal as given, if it had to be normalized.
    pub fn normalized_from(&self) -> Option<&IndexSet> {
        self.normalized_from.as_ref()
    }

    pub fn induced_loop(&self) -> &FiniteLeftLoop {
        &self.loop_
    }

    /// Group element of loop element `x`.
    pub fn element(&self, x: usize) -> usize {
        self.b.members()[x]
    }

    /// Loop element representing the coset `gH`.
    pub fn rep(&self, g: usize) -> usize {
        self.rep[g]
    }

    /// The `H` factor of `g = element(rep(g))·h`.
    pub fn h_part(&self, g: usize) -> usize {
        self.hpart[g]
    }

    pub fn in_h(&self, g: usize) -> bool {
        self.in_h[g]
    }

    /// `l(x,y) = (x·y)⁻¹xy`.
    pub fn l(&self, x: usize, y: usize) -> usize {
        self.l[x * self.loop_.order() + y]
    }

    /// `σ_g`, acting on loop elements by `σ_g(x)H = gxH`.
    pub fn sigma(&self, g: usize) -> &Permutation {
        &self.sigma[g]
    }

    /// `m(x,h) = σ_h(x)⁻¹ h x h⁻¹`, for `h ∈ H`.
    pub fn m(&self, x: usize, h: usize) -> usize {
        assert!(self.in_h[h], "{h} is not in H");
        self.m[x * self.g.order() + h]
    }

    pub fn core(&self) -> &IndexSet {
        &self.core
    }

    pub fn in_core(&self, g: usize) -> bool {
        self.in_core[g]
    }

    pub fn is_corefree(&self) -> bool {
        self.core.len() == 1
    }

    /// `g ∈ BN`, with `N` the core.
    pub fn in_bn(&self, g: usize) -> bool {
        self.in_core[self.hpart[g]]
    }

    /// `τ(ah) = a⁻¹h`.
    pub fn tau(&self, g: usize) -> usize {
        self.tau[g]
    }

    pub fn tau_map(&self) -> &[usize] {
        &self.tau
    }

    /// `σ(H)` as a permutation group on the loop.
    pub fn sigma_of_h(&self) -> PermGroup {
        let mut images: Vec<Permutation> = self.h.iter().map(|k| self.sigma[k].clone()).collect();
        images.sort();
        images.dedup();
        PermGroup::from_elements(self.loop_.order(), &images).expect("σ is a homomorphism")
    }

    /// Recomputes every structural invariant from the group table and
    /// lists the ones that fail.
    pub fn invariant_violations(&self) -> Vec<String> {
        let g = &self.g;
        let b = &self.loop_;
        let n = b.order();
        let order = g.order();
        let mut out = Vec::new();
        for a in 0..order {
            let x = self.element(self.rep[a]);
            if g.mul(x, self.hpart[a]) != a || !self.in_h[self.hpart[a]] {
                out.push(format!("factorization of {a}"));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let lxy = self.l(x, y);
                if !self.in_h[lxy] {
                    out.push(format!("l({x},{y}) = {lxy} outside H"));
                }
                if self.sigma[lxy].images() != b.inner_images(x, y).as_slice() {
                    out.push(format!("σ of l({x},{y}) is not L({x},{y})"));
                }
            }
            if self.l(0, x) != 0 || self.l(x, 0) != 0 {
                out.push(format!("l(1,{x}) or l({x},1) nontrivial"));
            }
            if self.sigma[self.element(x)] != b.left_translation(x) {
                out.push(format!("σ of {x} is not its left translation"));
            }
        }
        // σ is a homomorphism: enough to test products with B ∪ H, which
        // generate G
        for a in 0..order {
            for s in self.b.iter().chain(self.h.iter()) {
                let lhs = &self.sigma[g.mul(a, s)];
                if *lhs != self.sigma[a].compose_unchecked(&self.sigma[s]) {
                    out.push(format!("σ fails to be multiplicative at ({a},{s})"));
                }
            }
            if self.in_core[a] != self.sigma[a].is_identity() {
                out.push(format!("kernel of σ and core disagree at {a}"));
            }
        }
        for k in self.h.iter() {
            if self.sigma[k].apply(0) != 0 {
                out.push(format!("σ_{k} moves the identity"));
            }
            let phi = &self.sigma[k];
            for x in 0..n {
                let mxk = self.m(x, k);
                if !self.in_h[mxk] {
                    out.push(format!("m({x},{k}) outside H"));
                }
                let mu = b.deviation(x, phi).expect("same degree");
                if self.sigma[mxk] != mu {
                    out.push(format!("σ of m({x},{k}) is not the deviation"));
                }
            }
            if self.m(0, k) != 0 {
                out.push(format!("m(1,{k}) nontrivial"));
            }
        }
        for x in 0..n {
            if self.m(x, 0) != 0 {
                out.push(format!("m({x},1) nontrivial"));
            }
        }
        out
    }

    /// `xhyk = (x·σ_h(y))·l(x,σ_h(y))·m(y,h)·h·k`, as (loop element,
    /// element of `H`).
    pub fn factored_group_product(&self, x: usize, h: usize, y: usize, k: usize) -> Result<(usize, usize)> {
        let n = self.loop_.order();
        for (v, bound) in [(x, n), (y, n)] {
            if v >= bound {
                return Err(Error::IndexOutOfRange { index: v, size: bound });
            }
        }
        for v in [h, k] {
            if v >= self.g.order() || !self.in_h[v] {
                return Err(Error::InvalidArgument(format!("{v} is not in H")));
            }
        }
        let sy = self.sigma[h].apply(y);
        let part = self.g.product(&[self.l(x, sy), self.m(y, h), h, k]);
        Ok((self.loop_.mul(x, sy), part))
    }

    /// The three conditions equivalent to every loop element having a
    /// unique left inverse, each computed on its own.
    pub fn left_inverse_report(&self) -> LeftInverseReport {
        let g = &self.g;
        let elems = self.b.members();
        let index = g.order() / self.h.len();
        // B meets every right coset Hg exactly once
        let right_transversal = elems.len() == index
            && elems
                .iter()
                .enumerate()
                .all(|(i, &x)| elems[..i].iter().all(|&y| !self.in_h[g.mul(x, g.inv(y))]));
        let inverses: IndexSet = elems.iter().map(|&x| g.inv(x)).collect();
        let inverse_left_transversal = g.is_left_transversal(&self.h, &inverses);
        let rho = self.loop_.right_inverse_map();
        let rho_bijective = crate::finloop::is_bijection(&rho);
        LeftInverseReport {
            right_transversal,
            inverse_left_transversal,
            rho_bijective,
        }
    }
}

pub fn check_left_inverse_transversal(d: &TransversalDecomposition) -> LeftInverseReport {
    d.left_inverse_report()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LeftInverseReport {
    pub right_transversal: bool,
    pub inverse_left_transversal: bool,
    pub rho_bijective: bool,
}

impl LeftInverseReport {
    pub fn consistent(&self) -> bool {
        self.right_transversal == self.inverse_left_transversal
            && self.inverse_left_transversal == self.rho_bijective
    }

    pub fn holds(&self) -> bool {
        self.right_transversal && self.inverse_left_transversal && self.rho_bijective
    }
}

/// A decomposition of `G/K` together with the maps relating it to the
/// original.
#[derive(Clone, Debug)]
pub struct QuotientDecomposition {
    pub decomposition: TransversalDecomposition,
    /// `g ↦ gK`
    pub projection: Vec<usize>,
    /// loop element of `D` ↦ loop element of the quotient
    pub loop_map: Vec<usize>,
}

/// `G/K = B_K (H/K)` for a normal `K ⊆ H`.
pub fn quotient_decomposition(d: &TransversalDecomposition, k: &IndexSet) -> Result<QuotientDecomposition> {
    let g = &d.g;
    if !k.is_subset(&d.h) {
        return Err(Error::InvalidArgument(format!("{k} is not contained in H")));
    }
    let q = g.quotient(k)?;
    let proj = &q.projection;
    let hq: IndexSet = d.h.iter().map(|x| proj[x]).collect();
    let bq: IndexSet = d.b.iter().map(|x| proj[x]).collect();
    let qd = decompose(&q.group, &hq, &bq)?;
    let n = d.loop_.order();
    let loop_map: Vec<usize> = (0..n)
        .map(|x| qd.b.position(proj[d.element(x)]).expect("image of B"))
        .collect();
    for x in 0..n {
        for y in 0..n {
            let (u, v) = (loop_map[x], loop_map[y]);
            if qd.loop_.mul(u, v) != loop_map[d.loop_.mul(x, y)] || qd.l(u, v) != proj[d.l(x, y)] {
                return Err(Error::InvalidArgument(format!(
                    "quotient operation disagrees at ({x},{y})"
                )));
            }
        }
    }
    Ok(QuotientDecomposition {
        decomposition: qd,
        projection: q.projection,
        loop_map,
    })
}

/// Restriction of a decomposition to a subgroup, with the embedding of its
/// group elements.
#[derive(Clone, Debug)]
pub struct SubDecomposition {
    pub decomposition: TransversalDecomposition,
    /// element of the subgroup ↦ element of `G`
    pub embedding: Vec<usize>,
    /// loop element of the restriction ↦ loop element of `D`
    pub loop_embedding: Vec<usize>,
}

/// `G₁` respects `G = BH` when every element of `G₁` factors with both
/// parts in `G₁`; then `G₁ = (B ∩ G₁)(H ∩ G₁)`.
pub fn subgroup_respects(d: &TransversalDecomposition, g1: &IndexSet) -> Result<Option<SubDecomposition>> {
    let g = &d.g;
    if !g.is_subgroup(g1) {
        return Err(Error::NotSubgroup {
            reason: format!("{g1} is not closed"),
        });
    }
    let mask = g1.mask(g.order());
    if !g1.iter().all(|a| mask[d.element(d.rep[a])] && mask[d.hpart[a]]) {
        return Ok(None);
    }
    let sub = g.subgroup_as_group(g1)?;
    let local = |s: &IndexSet| -> IndexSet { s.iter().filter(|&a| mask[a]).map(|a| g1.position(a).expect("in G₁")).collect() };
    let h1 = local(&d.h);
    let b1 = local(&d.b);
    let decomposition = decompose(&sub, &h1, &b1)?;
    let embedding = g1.members().to_vec();
    let loop_embedding = decomposition
        .b
        .iter()
        .map(|a| d.rep[embedding[a]])
        .collect();
    Ok(Some(SubDecomposition {
        decomposition,
        embedding,
        loop_embedding,
    }))
}

/// Outcome of comparing `G/N` with the standard product over `σ(H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceReport {
    pub sigma_h_order: usize,
    /// `hN ↦ σ_h` is a well-defined isomorphism `H/N → σ(H)`
    pub h_mod_n_isomorphic: bool,
    /// `xh ↦ (x, σ_h)` is a homomorphism onto `B ⋊ σ(H)` with kernel `N`
    pub g_mod_n_isomorphic: bool,
    /// `G ≅ LMlt(B)` as abstract groups
    pub isomorphic_to_lmlt: bool,
    /// `N` trivial and `⟨B⟩ = G`
    pub corefree_and_generated: bool,
}

impl SequenceReport {
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.h_mod_n_isomorphic {
            out.push("H/N is not isomorphic to σ(H) via hN ↦ σ_h".to_string());
        }
        if !self.g_mod_n_isomorphic {
            out.push("G/N is not isomorphic to B ⋊ σ(H) via xh ↦ (x,σ_h)".to_string());
        }
        if self.isomorphic_to_lmlt != self.corefree_and_generated {
            out.push(format!(
                "G ≅ LMlt is {} but (corefree and generated) is {}",
                self.isomorphic_to_lmlt, self.corefree_and_generated
            ));
        }
        out
    }
}

pub fn internal_sequence_check(d: &TransversalDecomposition) -> Result<SequenceReport> {
    let g = &d.g;
    let order = g.order();
    let sh = d.sigma_of_h();
    let k = sh.order();
    let sh_table = sh.to_cayley().group;
    let idx = |a: usize| sh.index_of(&d.sigma[a]).expect("σ(H)");
    // H/N → σ(H): a homomorphism on H with kernel N, onto σ(H)
    let h_mod_n_isomorphic = d.h.iter().all(|a| {
        d.h.iter().all(|b| idx(g.mul(a, b)) == sh_table.mul(idx(a), idx(b)))
    }) && d.h.iter().all(|a| (idx(a) == 0) == d.in_core[a])
        && d.h.len() / d.core.len() == k;
    let spec = StdProductSpec::new(d.loop_.clone(), sh.clone())?;
    let prod = standard_product(&spec)?;
    let map: Vec<usize> = (0..order)
        .map(|a| d.rep[a] * k + idx(d.hpart[a]))
        .collect();
    let kernel_is_core = (0..order).all(|a| (map[a] == 0) == d.in_core[a]);
    let onto = prod.group.order() * d.core.len() == order;
    let g_mod_n_isomorphic =
        kernel_is_core && onto && g.homomorphism_witness(&prod.group, &map).is_none();
    let lmlt = d.loop_.lmlt();
    let isomorphic_to_lmlt = lmlt.order() == order
        && crate::fingroup::are_isomorphic(g, &lmlt.to_cayley().group).is_some();
    let generated = g.generated_subgroup(&d.b)?.len() == order;
    Ok(SequenceReport {
        sigma_h_order: k,
        h_mod_n_isomorphic,
        g_mod_n_isomorphic,
        isomorphic_to_lmlt,
        corefree_and_generated: d.is_corefree() && generated,
    })
}
