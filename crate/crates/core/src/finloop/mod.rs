//! Finite left loops: translations, division, inverses, inner mappings,
//! deviations, multiplication groups and (pseudo-)automorphisms.
//!
//! Permutations compose right to left: `f ∘ g` applies `g` first.

mod automorphisms;
mod enumerate;

use std::fmt;

use crate::error::{Error, Result};
use crate::fingroup::{
    associativity_witness, check_identity_at_zero, check_row_bijective, flatten_square, IndexSet,
};
use crate::perm::{PermGroup, Permutation};

pub use automorphisms::{loop_homomorphisms, PsAutWitness, EXHAUSTIVE_AUT_LIMIT, SEARCH_AUT_LIMIT};
pub use enumerate::{
    enumerate_left_loops, left_loop_count, random_left_loop, LeftLoopIter, EXHAUSTIVE_LOOP_LIMIT,
};

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLeftLoop {
    n: usize,
    table: Vec<usize>,
    // ldiv[x * n + y] = x \ y
    ldiv: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl fmt::Debug for FiniteLeftLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLeftLoop")
            .field("n", &self.n)
            .field("rows", &self.rows())
            .finish()
    }
}

/// Why a permutation group fails to be a transassociant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransassociantFailure {
    MovesIdentity { phi: Permutation },
    MissingInnerMapping { x: usize, y: usize },
    EscapingDeviation { x: usize, phi: Permutation },
}

impl fmt::Display for TransassociantFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransassociantFailure::MovesIdentity { phi } => {
                write!(f, "[{phi}] does not fix the identity")
            }
            TransassociantFailure::MissingInnerMapping { x, y } => {
                write!(f, "inner mapping L({x},{y}) is not in the group")
            }
            TransassociantFailure::EscapingDeviation { x, phi } => {
                write!(f, "deviation of [{phi}] at {x} is not in the group")
            }
        }
    }
}

impl FiniteLeftLoop {
    pub fn validate(rows: Vec<Vec<usize>>) -> Result<FiniteLeftLoop> {
        let (n, table) = flatten_square(rows)?;
        check_identity_at_zero(n, &table)?;
        for x in 0..n {
            check_row_bijective(n, &table, x)?;
        }
        Ok(FiniteLeftLoop::from_flat_unchecked(n, table))
    }

    /// Trusted constructor: identity at 0 and bijective rows are assumed.
    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<usize>) -> FiniteLeftLoop {
        let mut ldiv = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                ldiv[x * n + table[x * n + y]] = y;
            }
        }
        FiniteLeftLoop {
            n,
            table,
            ldiv,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "{} labels for a loop of order {}",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    /// `x \ y`, the unique `z` with `x·z = y`.
    #[inline]
    pub fn left_divide(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.n + y]
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn left_translation(&self, x: usize) -> Permutation {
        Permutation::from_images_unchecked(self.table[x * self.n..(x + 1) * self.n].to_vec())
    }

    pub fn left_translations(&self) -> Vec<Permutation> {
        (0..self.n).map(|x| self.left_translation(x)).collect()
    }

    /// `ρ(x) = x \ 0`.
    pub fn right_inverse_map(&self) -> Vec<usize> {
        (0..self.n).map(|x| self.left_divide(x, 0)).collect()
    }

    /// `λ = ρ⁻¹`, present exactly when `ρ` is a bijection; then `λ(x)·x = 0`.
    pub fn left_inverse_map(&self) -> Option<Vec<usize>> {
        let rho = self.right_inverse_map();
        let mut lambda = vec![usize::MAX; self.n];
        for (x, &r) in rho.iter().enumerate() {
            if lambda[r] != usize::MAX {
                return None;
            }
            lambda[r] = x;
        }
        Some(lambda)
    }

    pub fn is_right_loop(&self) -> bool {
        (0..self.n).all(|y| {
            let mut seen = vec![false; self.n];
            (0..self.n).all(|x| !std::mem::replace(&mut seen[self.mul(x, y)], true))
        })
    }

    pub fn is_associative(&self) -> bool {
        associativity_witness(self.n, &self.table).is_none()
    }

    /// Least `(x, a, y)` found by Light's test with `(x·a)·y ≠ x·(a·y)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        associativity_witness(self.n, &self.table)
    }

    /// `L(x,y) = L_{x·y}⁻¹ ∘ L_x ∘ L_y`, as an image vector.
    pub fn inner_images(&self, x: usize, y: usize) -> Vec<usize> {
        let xy = self.mul(x, y);
        (0..self.n)
            .map(|z| self.left_divide(xy, self.mul(x, self.mul(y, z))))
            .collect()
    }

    pub fn inner_mapping(&self, x: usize, y: usize) -> Permutation {
        Permutation::from_images_unchecked(self.inner_images(x, y))
    }

    /// `μ_x(φ) = L_{φ(x)}⁻¹ ∘ φ ∘ L_x ∘ φ⁻¹`.
    pub fn deviation(&self, x: usize, phi: &Permutation) -> Result<Permutation> {
        self.check_degree(phi)?;
        let inv = phi.inverse();
        let fx = phi.apply(x);
        Ok(Permutation::from_images_unchecked(
            (0..self.n)
                .map(|z| self.left_divide(fx, phi.apply(self.mul(x, inv.apply(z)))))
                .collect(),
        ))
    }

    pub(crate) fn check_degree(&self, phi: &Permutation) -> Result<()> {
        if phi.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: phi.degree(),
            });
        }
        Ok(())
    }

    /// Left multiplication group, the closure of all left translations.
    pub fn lmlt(&self) -> PermGroup {
        PermGroup::closure_with_degree(self.n, &self.left_translations()).expect("same degree")
    }

    /// Identity stabilizer of [`Self::lmlt`].
    pub fn lmlt1(&self) -> PermGroup {
        self.lmlt().stabilizer_of_zero()
    }

    /// Closure of all left inner mappings; equals [`Self::lmlt1`].
    pub fn inner_mapping_group(&self) -> PermGroup {
        let gens: Vec<Permutation> = (1..self.n)
            .flat_map(|x| (1..self.n).map(move |y| (x, y)))
            .map(|(x, y)| self.inner_mapping(x, y))
            .filter(|p| !p.is_identity())
            .collect();
        PermGroup::closure_with_degree(self.n, &gens).expect("same degree")
    }

    /// Does `c·φ(x·y) = (c·φ(x))·φ(y)` hold for all `x, y`?
    pub fn is_companion(&self, phi: &Permutation, c: usize) -> bool {
        let f = phi.images();
        (0..self.n).all(|x| {
            let cfx = self.mul(c, f[x]);
            (0..self.n).all(|y| self.mul(c, f[self.mul(x, y)]) == self.mul(cfx, f[y]))
        })
    }

    /// All companions `c` of `φ`; empty unless `φ` is a pseudo-automorphism.
    pub fn pseudo_automorphism_companions(&self, phi: &Permutation) -> Result<IndexSet> {
        self.check_degree(phi)?;
        if self.n > 0 && phi.apply(0) != 0 {
            return Ok(IndexSet::default());
        }
        Ok((0..self.n).filter(|&c| self.is_companion(phi, c)).collect())
    }

    pub fn is_automorphism(&self, phi: &Permutation) -> bool {
        phi.degree() == self.n && (self.n == 0 || phi.apply(0) == 0) && self.is_companion(phi, 0)
    }

    pub fn is_pseudo_automorphism(&self, phi: &Permutation) -> bool {
        phi.degree() == self.n
            && (self.n == 0 || phi.apply(0) == 0)
            && (0..self.n).any(|c| self.is_companion(phi, c))
    }

    /// First reason `h` is not a transassociant, or `None` if it is one.
    pub fn transassociant_witness(&self, h: &PermGroup) -> Option<TransassociantFailure> {
        if h.degree() != self.n {
            return Some(TransassociantFailure::MovesIdentity {
                phi: h.elements().first().cloned().unwrap_or_else(|| Permutation::identity(0)),
            });
        }
        if let Some(phi) = h.elements().iter().find(|p| self.n > 0 && p.apply(0) != 0) {
            return Some(TransassociantFailure::MovesIdentity { phi: phi.clone() });
        }
        for x in 0..self.n {
            for y in 0..self.n {
                if !h.contains(&self.inner_mapping(x, y)) {
                    return Some(TransassociantFailure::MissingInnerMapping { x, y });
                }
            }
        }
        for x in 0..self.n {
            for phi in h.elements() {
                let mu = self.deviation(x, phi).expect("degree checked");
                if !h.contains(&mu) {
                    return Some(TransassociantFailure::EscapingDeviation {
                        x,
                        phi: phi.clone(),
                    });
                }
            }
        }
        None
    }

    pub fn is_transassociant(&self, h: &PermGroup) -> bool {
        self.transassociant_witness(h).is_none()
    }

    /// `(L_x φ)(L_y ψ) = L_{x·φ(y)} [L(x,φ(y)) μ_y(φ) φ ψ]`, returned as the
    /// pair `(x·φ(y), L(x,φ(y)) ∘ μ_y(φ) ∘ φ ∘ ψ)`.
    pub fn factored_product(
        &self,
        x: usize,
        phi: &Permutation,
        y: usize,
        psi: &Permutation,
    ) -> Result<(usize, Permutation)> {
        self.check_degree(phi)?;
        self.check_degree(psi)?;
        for p in [phi, psi] {
            if self.n > 0 && p.apply(0) != 0 {
                return Err(Error::InvalidArgument(format!(
                    "[{p}] does not fix the identity"
                )));
            }
        }
        let fy = phi.apply(y);
        let inner = self.inner_mapping(x, fy);
        let mu = self.deviation(y, phi)?;
        let second = inner
            .compose_unchecked(&mu)
            .compose_unchecked(phi)
            .compose_unchecked(psi);
        Ok((self.mul(x, fy), second))
    }

    /// Splits `φ ∈ LMlt` as `L_{φ(0)} ∘ ψ` with `ψ(0) = 0`.
    pub fn factor_translation(&self, phi: &Permutation) -> Result<(usize, Permutation)> {
        self.check_degree(phi)?;
        let x = phi.apply(0);
        let psi: Vec<usize> = (0..self.n)
            .map(|z| self.left_divide(x, phi.apply(z)))
            .collect();
        Ok((x, Permutation::from_images_unchecked(psi)))
    }

    /// Squaring map `x ↦ x·x`.
    pub fn squares(&self) -> Vec<usize> {
        (0..self.n).map(|x| self.mul(x, x)).collect()
    }
}

pub fn validate_left_loop(rows: Vec<Vec<usize>>) -> Result<FiniteLeftLoop> {
    FiniteLeftLoop::validate(rows)
}

/// The left loop underlying a group table.
pub fn loop_of_group(g: &crate::fingroup::FiniteGroup) -> FiniteLeftLoop {
    FiniteLeftLoop::from_flat_unchecked(g.order(), g.flat_table().to_vec())
}

pub(crate) fn is_bijection(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter()
        .all(|&v| v < map.len() && !std::mem::replace(&mut seen[v], true))
}
