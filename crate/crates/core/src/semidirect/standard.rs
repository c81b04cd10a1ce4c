use std::fmt;

use super::ProductGroup;
use crate::error::{Error, Result};
use crate::fingroup::FiniteGroup;
use crate::finloop::FiniteLeftLoop;
use crate::identities::{check_al, check_pseudo_al};
use crate::perm::{PermGroup, Permutation};

/// A left loop together with a transassociant acting on its carrier.
#[derive(Clone, Debug)]
pub struct StdProductSpec {
    b: FiniteLeftLoop,
    h: PermGroup,
}

impl StdProductSpec {
    pub fn new(b: FiniteLeftLoop, h: PermGroup) -> Result<Self> {
        if h.degree() != b.order() {
            return Err(Error::DegreeMismatch {
                left: b.order(),
                right: h.degree(),
            });
        }
        if let Some(why) = b.transassociant_witness(&h) {
            return Err(Error::NotTransassociant {
                reason: why.to_string(),
            });
        }
        Ok(StdProductSpec { b, h })
    }

    /// `H = LMlt₁(B)`, which is always a transassociant.
    pub fn with_lmlt1(b: FiniteLeftLoop) -> Self {
        let h = b.lmlt1();
        StdProductSpec { b, h }
    }

    pub fn b(&self) -> &FiniteLeftLoop {
        &self.b
    }

    pub fn h(&self) -> &PermGroup {
        &self.h
    }

    /// `(x,φ)(y,ψ) = (x·φ(y), L(x,φ(y)) ∘ μ_y(φ) ∘ φ ∘ ψ)` on explicit
    /// permutations.
    pub fn multiply(
        &self,
        x: usize,
        phi: &Permutation,
        y: usize,
        psi: &Permutation,
    ) -> Result<(usize, Permutation)> {
        self.b.factored_product(x, phi, y, psi)
    }
}

/// Cayley table of `B ⋊ H`, with `(x, φ)` at index `x·|H| + i` where `φ` is
/// element `i` of `H` (identity first).
pub fn standard_product(spec: &StdProductSpec) -> Result<ProductGroup> {
    let b = &spec.b;
    let h = &spec.h;
    let n = b.order();
    let k = h.order();
    let hc = h.to_cayley().group;
    let lookup = |p: &Permutation| -> Result<usize> {
        h.index_of(p).ok_or_else(|| Error::NotTransassociant {
            reason: format!("[{p}] escapes the group"),
        })
    };
    let mut inner = vec![0; n * n];
    for x in 0..n {
        for z in 0..n {
            inner[x * n + z] = lookup(&b.inner_mapping(x, z))?;
        }
    }
    let mut dev = vec![0; n * k];
    for y in 0..n {
        for (i, phi) in h.elements().iter().enumerate() {
            dev[y * k + i] = lookup(&b.deviation(y, phi)?)?;
        }
    }
    let size = n * k;
    let mut table = vec![0; size * size];
    for x in 0..n {
        for (i, phi) in h.elements().iter().enumerate() {
            let row = (x * k + i) * size;
            for y in 0..n {
                let fy = phi.apply(y);
                let front = hc.mul(inner[x * n + fy], dev[y * k + i]);
                let front = hc.mul(front, i);
                let base = b.mul(x, fy) * k;
                for j in 0..k {
                    table[row + y * k + j] = base + hc.mul(front, j);
                }
            }
        }
    }
    let rows = table.chunks(size).map(|r| r.to_vec()).collect();
    let group = FiniteGroup::validate(rows)?;
    Ok(ProductGroup {
        group,
        b_order: n,
        h_order: k,
    })
}

/// Which simplified product formula applies to a standard product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductForm {
    /// `B` a group and `H ≤ Aut(B)`: `(x·φ(y), φψ)`.
    Classical,
    /// `B` a group: `(x·φ(y), μ_y(φ)φψ)`.
    Rotary,
    /// `B` an A_l loop and `H ≤ Aut(B)`: `(x·φ(y), L(x,φ(y))φψ)`.
    Affine,
    /// `B` pseudo-A_l and `H ≤ PsAut(B)`:
    /// `(x·φ(y), L(x,φ(y)) L(c,φ(y))⁻¹ φψ)` with `c` a companion of `φ`.
    PseudoAffine,
    General,
}

impl fmt::Display for ProductForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductForm::Classical => "classical",
            ProductForm::Rotary => "rotary",
            ProductForm::Affine => "affine",
            ProductForm::PseudoAffine => "pseudo-affine",
            ProductForm::General => "general",
        })
    }
}

pub fn specialize_product_form(spec: &StdProductSpec) -> ProductForm {
    let b = &spec.b;
    let in_aut = spec.h.elements().iter().all(|p| b.is_automorphism(p));
    if b.is_associative() {
        return if in_aut {
            ProductForm::Classical
        } else {
            ProductForm::Rotary
        };
    }
    if in_aut && check_al(b) {
        return ProductForm::Affine;
    }
    if check_pseudo_al(b) && spec.h.elements().iter().all(|p| b.is_pseudo_automorphism(p)) {
        return ProductForm::PseudoAffine;
    }
    ProductForm::General
}

/// The product computed by the simplified formula of `form`. Only meaningful
/// when [`specialize_product_form`] reports `form` (or a stronger form).
pub fn simplified_product(
    spec: &StdProductSpec,
    form: ProductForm,
    x: usize,
    phi: &Permutation,
    y: usize,
    psi: &Permutation,
) -> Result<(usize, Permutation)> {
    let b = &spec.b;
    let fy = phi.apply(y);
    let first = b.mul(x, fy);
    let tail = phi.compose(psi)?;
    let second = match form {
        ProductForm::Classical => tail,
        ProductForm::Rotary => b.deviation(y, phi)?.compose(&tail)?,
        ProductForm::Affine => b.inner_mapping(x, fy).compose(&tail)?,
        ProductForm::PseudoAffine => {
            let c = b
                .pseudo_automorphism_companions(phi)?
                .members()
                .first()
                .copied()
                .ok_or_else(|| Error::InvalidArgument(format!("[{phi}] has no companion")))?;
            b.inner_mapping(x, fy)
                .compose(&b.inner_mapping(c, fy).inverse())?
                .compose(&tail)?
        }
        ProductForm::General => return b.factored_product(x, phi, y, psi),
    };
    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{are_isomorphic, cyclic, dihedral};
    use crate::finloop::{enumerate_left_loops, loop_of_group, validate_left_loop};

    fn order_five_loop() -> FiniteLeftLoop {
        validate_left_loop(vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ])
        .unwrap()
    }

    #[test]
    fn trivial_loop_gives_h() {
        let b = validate_left_loop(vec![vec![0]]).unwrap();
        let spec = StdProductSpec::new(b, PermGroup::trivial(1)).unwrap();
        assert_eq!(standard_product(&spec).unwrap().group.order(), 1);
        let z3 = loop_of_group(&cyclic(3));
        let aut = z3.automorphism_group().unwrap();
        let spec = StdProductSpec::new(z3, aut).unwrap();
        let g = standard_product(&spec).unwrap();
        assert!(are_isomorphic(&g.group, &dihedral(3)).is_some());
    }

    #[test]
    fn trivial_h_over_a_group_gives_b() {
        let d = dihedral(3);
        let spec = StdProductSpec::new(loop_of_group(&d), PermGroup::trivial(6)).unwrap();
        let g = standard_product(&spec).unwrap();
        assert_eq!(g.group.flat_table(), d.flat_table());
    }

    #[test]
    fn lmlt1_product_is_lmlt() {
        let b = order_five_loop();
        let spec = StdProductSpec::with_lmlt1(b.clone());
        let g = standard_product(&spec).unwrap();
        let lmlt = b.lmlt().to_cayley().group;
        assert!(are_isomorphic(&g.group, &lmlt).is_some());
    }

    #[test]
    fn non_transassociant_rejected() {
        assert!(matches!(
            StdProductSpec::new(order_five_loop(), PermGroup::trivial(5)),
            Err(Error::NotTransassociant { .. })
        ));
    }

    #[test]
    fn form_examples() {
        let z5 = loop_of_group(&cyclic(5));
        let aut = z5.automorphism_group().unwrap();
        let spec = StdProductSpec::new(z5.clone(), aut).unwrap();
        assert_eq!(specialize_product_form(&spec), ProductForm::Classical);
        let spec = StdProductSpec::new(z5, PermGroup::trivial(5)).unwrap();
        assert_eq!(specialize_product_form(&spec), ProductForm::Classical);
        let spec = StdProductSpec::with_lmlt1(order_five_loop());
        assert_eq!(specialize_product_form(&spec), ProductForm::General);
    }

    #[test]
    fn rotary_form_for_group_with_non_automorphic_transassociant() {
        // Z4 with H = Sym₁ (all of it is a transassociant over a group)
        let z4 = loop_of_group(&cyclic(4));
        let sym1 = PermGroup::symmetric(4).stabilizer_of_zero();
        let spec = StdProductSpec::new(z4, sym1).unwrap();
        assert_eq!(specialize_product_form(&spec), ProductForm::Rotary);
        check_simplified_agrees(&spec);
    }

    fn check_simplified_agrees(spec: &StdProductSpec) {
        let form = specialize_product_form(spec);
        let n = spec.b().order();
        for phi in spec.h().elements() {
            for psi in spec.h().elements() {
                for x in 0..n {
                    for y in 0..n {
                        assert_eq!(
                            simplified_product(spec, form, x, phi, y, psi).unwrap(),
                            spec.multiply(x, phi, y, psi).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn simplified_forms_agree_on_small_loops() {
        let mut seen = std::collections::BTreeSet::new();
        for b in enumerate_left_loops(4).unwrap() {
            let spec = StdProductSpec::with_lmlt1(b.clone());
            seen.insert(specialize_product_form(&spec).to_string());
            check_simplified_agrees(&spec);
            if let Ok(aut) = b.automorphism_group() {
                if let Ok(spec) = StdProductSpec::new(b.clone(), aut) {
                    seen.insert(specialize_product_form(&spec).to_string());
                    check_simplified_agrees(&spec);
                }
            }
        }
        assert!(seen.contains("affine"), "{seen:?}");
        assert!(seen.contains("classical"), "{seen:?}");
    }
}
