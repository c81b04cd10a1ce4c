//! Standard and external semidirect products of a left loop with a group.

mod external;
mod standard;

pub use external::{
    external_product, external_projection, heisenberg_spec, validate_external, ConditionOutcome,
    ExternalDiagnostics, ExternalProjection, ExternalSpec, EXTERNAL_CONDITIONS,
};
pub use standard::{
    simplified_product, specialize_product_form, standard_product, ProductForm, StdProductSpec,
};

use crate::fingroup::{FiniteGroup, IndexSet};

/// A product group on pairs `(x, h)`, stored at index `x·|H| + h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductGroup {
    pub group: FiniteGroup,
    pub b_order: usize,
    pub h_order: usize,
}

impl ProductGroup {
    pub fn index(&self, x: usize, h: usize) -> usize {
        x * self.h_order + h
    }

    pub fn pair(&self, g: usize) -> (usize, usize) {
        (g / self.h_order, g % self.h_order)
    }

    /// Labels of the form `(x,h)`.
    pub fn pair_labels(&self) -> Vec<String> {
        (0..self.group.order())
            .map(|g| {
                let (x, h) = self.pair(g);
                format!("({x},{h})")
            })
            .collect()
    }

    /// The copy `{(0, h)}` of the acting group.
    pub fn acting_subgroup(&self) -> IndexSet {
        IndexSet::new(0..self.h_order)
    }

    /// The copy `{(x, e)}` of the loop.
    pub fn loop_transversal(&self) -> IndexSet {
        IndexSet::new((0..self.b_order).map(|x| x * self.h_order))
    }

    /// `{(0,h)}` is a subgroup and every element factors as `(x,e)(0,h)`.
    pub fn factorization_holds(&self) -> bool {
        let g = &self.group;
        if !g.is_subgroup(&self.acting_subgroup()) {
            return false;
        }
        (0..self.b_order).all(|x| {
            (0..self.h_order).all(|h| g.mul(self.index(x, 0), self.index(0, h)) == self.index(x, h))
        })
    }
}
