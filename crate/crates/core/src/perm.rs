//! Permutations of a finite carrier `{0..n-1}` and the groups they generate.
//!
//! Composition is "right acts first": `f.compose(&g)` is the map
//! `i -> f(g(i))`. Every product of translations in this crate is written in
//! that order, so `L_{xy}^{-1} L_x L_y` reads as
//! `inv(L_xy).compose(L_x).compose(L_y)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::fingroup::FiniteGroup;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.images, f)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.images {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its image table, `images[i] = phi(i)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (position, &value) in images.iter().enumerate() {
            if value >= n || seen[value] {
                return Err(Error::NotAPermutation { position, value });
            }
            seen[value] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    #[inline]
    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }
}

/// Same as [`Permutation::compose`], panicking on a degree mismatch.
impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.compose_unchecked(rhs)
    }
}

pub fn compose(f: &Permutation, g: &Permutation) -> Result<Permutation> {
    f.compose(g)
}

pub fn inverse(f: &Permutation) -> Permutation {
    f.inverse()
}

/// A finite permutation group, stored as the full element list.
///
/// Elements are kept in breadth-first discovery order starting from the
/// identity, which also fixes the indexing used by [`PermGroup::to_cayley`].
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    // BFS tree: element i = elements[parent[i].0] ∘ generators[parent[i].1]
    parent: Vec<(usize, usize)>,
    // right_mult[i * k + g] = index of elements[i] ∘ generators[g]
    right_mult: Vec<usize>,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.elements.iter().all(|e| other.contains(e))
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    /// Smallest group containing `gens`, computed by breadth-first right
    /// multiplication by the generators.
    pub fn closure(gens: &[Permutation]) -> Result<PermGroup> {
        let degree = gens.first().map(Permutation::degree).ok_or_else(|| {
            Error::InvalidArgument("closure needs a generator or an explicit degree".into())
        })?;
        PermGroup::closure_with_degree(degree, gens)
    }

    pub fn closure_with_degree(degree: usize, gens: &[Permutation]) -> Result<PermGroup> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        let generators: Vec<Permutation> = gens.to_vec();
        let k = generators.len();
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut parent = vec![(0, usize::MAX)];
        let mut right_mult = Vec::new();
        let mut head = 0;
        while head < elements.len() {
            for (gi, g) in generators.iter().enumerate() {
                let p = elements[head].compose_unchecked(g);
                let next = elements.len();
                let idx = *index.entry(p.clone()).or_insert(next);
                if idx == next {
                    elements.push(p);
                    parent.push((head, gi));
                }
                right_mult.push(idx);
            }
            head += 1;
        }
        debug_assert_eq!(right_mult.len(), elements.len() * k);
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
            parent,
            right_mult,
        })
    }

    /// Group from an element list already known to be closed; generators are
    /// chosen greedily from `elems` in order. Errors if the closure is larger.
    pub fn from_elements(degree: usize, elems: &[Permutation]) -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut group = PermGroup::closure_with_degree(degree, &gens)?;
        for e in elems {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: e.degree(),
                });
            }
            if !group.contains(e) {
                gens.push(e.clone());
                group = PermGroup::closure_with_degree(degree, &gens)?;
            }
        }
        if group.order() != dedup_count(elems) {
            return Err(Error::NotSubgroup {
                reason: format!(
                    "element set of size {} generates a group of order {}",
                    dedup_count(elems),
                    group.order()
                ),
            });
        }
        Ok(group)
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::closure_with_degree(degree, &[]).expect("no generators")
    }

    /// The full symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> PermGroup {
        let mut gens = Vec::new();
        if degree >= 2 {
            let mut t: Vec<usize> = (0..degree).collect();
            t.swap(0, 1);
            gens.push(Permutation::from_images_unchecked(t));
            let cycle: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
            gens.push(Permutation::from_images_unchecked(cycle));
        }
        PermGroup::closure_with_degree(degree, &gens).expect("consistent degree")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    /// `{φ ∈ G : φ(0) = 0}`.
    pub fn stabilizer_of_zero(&self) -> PermGroup {
        let fixed: Vec<Permutation> = self
            .elements
            .iter()
            .filter(|p| self.degree == 0 || p.apply(0) == 0)
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, &fixed).expect("stabilizer is a subgroup")
    }

    /// Checks closure under composition and inverses directly.
    pub fn is_closed(&self) -> bool {
        let id = Permutation::identity(self.degree);
        if !self.contains(&id) {
            return false;
        }
        self.elements.iter().all(|a| {
            self.contains(&a.inverse())
                && self
                    .elements
                    .iter()
                    .all(|b| self.contains(&a.compose_unchecked(b)))
        })
    }

    /// Cayley table of the group, indexed like [`PermGroup::elements`]
    /// (identity first).
    pub fn to_cayley(&self) -> CayleyImage {
        let n = self.order();
        let k = self.generators.len();
        let mut table = vec![0usize; n * n];
        for i in 0..n {
            let row = &mut table[i * n..(i + 1) * n];
            row[0] = i;
            for j in 1..n {
                let (p, g) = self.parent[j];
                row[j] = self.right_mult[row[p] * k + g];
            }
        }
        CayleyImage {
            group: FiniteGroup::from_flat_unchecked(n, table),
            elements: self.elements.clone(),
        }
    }
}

fn dedup_count(elems: &[Permutation]) -> usize {
    let mut v: Vec<&Permutation> = elems.iter().collect();
    v.sort();
    v.dedup();
    v.len()
}

/// A permutation group as an abstract Cayley table plus the labeling
/// `index -> permutation`.
#[derive(Clone, Debug)]
pub struct CayleyImage {
    pub group: FiniteGroup,
    pub elements: Vec<Permutation>,
}

pub fn closure(gens: &[Permutation]) -> Result<PermGroup> {
    PermGroup::closure(gens)
}

pub fn stabilizer_of_zero(g: &PermGroup) -> PermGroup {
    g.stabilizer_of_zero()
}

pub fn to_cayley(g: &PermGroup) -> CayleyImage {
    g.to_cayley()
}
