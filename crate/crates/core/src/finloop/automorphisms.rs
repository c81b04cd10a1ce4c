use std::collections::BTreeMap;

use super::FiniteLeftLoop;
use crate::error::{Error, Result};
use crate::fingroup::IndexSet;
use crate::perm::{PermGroup, Permutation};

/// Largest order for which Aut/PsAut are found by filtering all of `Sym₁`.
pub const EXHAUSTIVE_AUT_LIMIT: usize = 8;
/// Largest order accepted by the generator-based search.
pub const SEARCH_AUT_LIMIT: usize = 32;

/// A pseudo-automorphism together with all of its companions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsAutWitness {
    pub phi: Permutation,
    pub companions: IndexSet,
}

/// Visits every bijective `f` with `f(0) = 0` and `f(x·y) = f(x) ∘ f(y)`,
/// where `·` is `src` and `∘` is `dst` (flat tables of order `n`). The
/// visitor returns `true` to stop early.
///
/// Backtracks over images of successive generators; each assignment is
/// propagated through the product closure of the mapped set and rejected on
/// the first inconsistency.
pub fn loop_homomorphisms(
    n: usize,
    src: &[usize],
    dst: &[usize],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if n == 0 {
        visit(&map);
        return;
    }
    map[0] = 0;
    used[0] = true;
    let mut domain = vec![0usize];
    search(n, src, dst, &mut map, &mut used, &mut domain, visit);
}

fn search(
    n: usize,
    src: &[usize],
    dst: &[usize],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    domain: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let Some(g) = (0..n).find(|&x| map[x] == usize::MAX) else {
        return visit(map);
    };
    for target in 0..n {
        if used[target] {
            continue;
        }
        let mark = domain.len();
        map[g] = target;
        used[target] = true;
        domain.push(g);
        if propagate(n, src, dst, map, used, domain, mark)
            && search(n, src, dst, map, used, domain, visit)
        {
            return true;
        }
        for &x in &domain[mark..] {
            used[map[x]] = false;
            map[x] = usize::MAX;
        }
        domain.truncate(mark);
    }
    false
}

/// Closes the mapped set under products, pairing every element added since
/// `fresh_from` with every mapped element.
fn propagate(
    n: usize,
    src: &[usize],
    dst: &[usize],
    map: &mut [usize],
    used: &mut [bool],
    domain: &mut Vec<usize>,
    fresh_from: usize,
) -> bool {
    let mut i = fresh_from;
    while i < domain.len() {
        let a = domain[i];
        let mut j = 0;
        while j <= i {
            let b = domain[j];
            for (x, y) in [(a, b), (b, a)] {
                let p = src[x * n + y];
                let q = dst[map[x] * n + map[y]];
                if map[p] == usize::MAX {
                    if used[q] {
                        return false;
                    }
                    map[p] = q;
                    used[q] = true;
                    domain.push(p);
                } else if map[p] != q {
                    return false;
                }
            }
            j += 1;
        }
        i += 1;
    }
    true
}

/// Every permutation of `{1..n-1}` extended by `0 ↦ 0`, in lexicographic order.
fn sym1(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = Some((0..n).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let next = {
            let mut v = out.clone();
            // next lexicographic permutation of v[1..]
            let tail = &mut v[1.min(n)..];
            let k = tail.windows(2).rposition(|w| w[0] < w[1]);
            match k {
                None => None,
                Some(k) => {
                    let l = tail.iter().rposition(|&t| t > tail[k]).expect("exists");
                    tail.swap(k, l);
                    tail[k + 1..].reverse();
                    Some(v)
                }
            }
        };
        current = next;
        Some(out)
    })
}

impl FiniteLeftLoop {
    /// `x ∘_c y = c \ ((c·x)·y)`; `φ` is a pseudo-automorphism with companion
    /// `c` exactly when it is an isomorphism from `(B,·)` to `(B,∘_c)`.
    fn companion_table(&self, c: usize) -> Vec<usize> {
        let n = self.n;
        let mut t = vec![0; n * n];
        for x in 0..n {
            let cx = self.mul(c, x);
            for y in 0..n {
                t[x * n + y] = self.left_divide(c, self.mul(cx, y));
            }
        }
        t
    }

    fn check_aut_size(&self) -> Result<()> {
        if self.n > SEARCH_AUT_LIMIT {
            return Err(Error::TooLarge {
                what: "automorphism search",
                size: self.n,
                limit: SEARCH_AUT_LIMIT,
            });
        }
        Ok(())
    }

    /// `Aut(B)`: exhaustive filter of `Sym₁` up to order
    /// [`EXHAUSTIVE_AUT_LIMIT`], generator search up to [`SEARCH_AUT_LIMIT`].
    pub fn automorphism_group(&self) -> Result<PermGroup> {
        self.check_aut_size()?;
        let elems = if self.n <= EXHAUSTIVE_AUT_LIMIT {
            self.automorphisms_exhaustive()
        } else {
            self.automorphisms_by_search()
        };
        PermGroup::from_elements(self.n, &elems)
    }

    pub(crate) fn automorphisms_exhaustive(&self) -> Vec<Permutation> {
        sym1(self.n)
            .map(Permutation::from_images_unchecked)
            .filter(|p| self.is_companion(p, 0))
            .collect()
    }

    pub(crate) fn automorphisms_by_search(&self) -> Vec<Permutation> {
        let mut out = Vec::new();
        loop_homomorphisms(self.n, &self.table, &self.table, &mut |m| {
            out.push(Permutation::from_images_unchecked(m.to_vec()));
            false
        });
        out.sort();
        out
    }

    /// `PsAut(B)` with the full companion set of each element, sorted by
    /// permutation.
    pub fn pseudo_automorphism_group(&self) -> Result<Vec<PsAutWitness>> {
        self.check_aut_size()?;
        Ok(if self.n <= EXHAUSTIVE_AUT_LIMIT {
            self.pseudo_automorphisms_exhaustive()
        } else {
            self.pseudo_automorphisms_by_search()
        })
    }

    pub(crate) fn pseudo_automorphisms_exhaustive(&self) -> Vec<PsAutWitness> {
        sym1(self.n)
            .map(Permutation::from_images_unchecked)
            .filter_map(|phi| {
                let companions: IndexSet =
                    (0..self.n).filter(|&c| self.is_companion(&phi, c)).collect();
                (!companions.is_empty()).then_some(PsAutWitness { phi, companions })
            })
            .collect()
    }

    pub(crate) fn pseudo_automorphisms_by_search(&self) -> Vec<PsAutWitness> {
        let mut found: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for c in 0..self.n {
            let target = self.companion_table(c);
            loop_homomorphisms(self.n, &self.table, &target, &mut |m| {
                found.entry(m.to_vec()).or_default().push(c);
                false
            });
        }
        found
            .into_iter()
            .map(|(images, cs)| PsAutWitness {
                phi: Permutation::from_images_unchecked(images),
                companions: IndexSet::new(cs),
            })
            .collect()
    }

    /// The pseudo-automorphisms as a permutation group.
    pub fn pseudo_automorphism_perm_group(&self) -> Result<PermGroup> {
        let elems: Vec<Permutation> = self
            .pseudo_automorphism_group()?
            .into_iter()
            .map(|w| w.phi)
            .collect();
        PermGroup::from_elements(self.n, &elems)
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::order_five_loop;
    use super::sym1;
    use super::super::*;
    use crate::fingroup::{cyclic, dihedral, direct_product};

    #[test]
    fn sym1_counts() {
        assert_eq!(sym1(1).count(), 1);
        assert_eq!(sym1(4).count(), 6);
        assert_eq!(sym1(6).count(), 120);
        assert!(sym1(5).all(|v| v[0] == 0));
    }

    #[test]
    fn automorphism_examples() {
        let z3 = loop_of_group(&cyclic(3));
        let aut = z3.automorphism_group().unwrap();
        assert_eq!(aut.order(), 2);
        assert!(aut.contains(&Permutation::new(vec![0, 2, 1]).unwrap()));
        let trivial = validate_left_loop(vec![vec![0]]).unwrap();
        assert_eq!(trivial.automorphism_group().unwrap().order(), 1);
    }

    #[test]
    fn aut_inside_psaut_inside_sym1() {
        for b in [
            order_five_loop(),
            loop_of_group(&dihedral(3)),
            loop_of_group(&direct_product(&cyclic(2), &cyclic(2))),
        ] {
            let aut = b.automorphism_group().unwrap();
            let ps = b.pseudo_automorphism_perm_group().unwrap();
            assert!(aut.is_subgroup_of(&ps));
            assert!(ps.elements().iter().all(|p| p.apply(0) == 0));
            for w in b.pseudo_automorphism_group().unwrap() {
                assert_eq!(w.companions.contains(0), aut.contains(&w.phi));
            }
        }
    }

    #[test]
    fn search_agrees_with_exhaustive_filter() {
        let mut loops = vec![order_five_loop(), loop_of_group(&dihedral(4))];
        loops.extend(enumerate_left_loops(4).unwrap().step_by(7));
        for b in loops {
            assert_eq!(b.automorphisms_exhaustive(), b.automorphisms_by_search());
            assert_eq!(
                b.pseudo_automorphisms_exhaustive(),
                b.pseudo_automorphisms_by_search()
            );
        }
    }

    #[test]
    fn search_handles_larger_orders() {
        let b = loop_of_group(&direct_product(&cyclic(2), &direct_product(&cyclic(2), &cyclic(4))));
        assert_eq!(b.order(), 16);
        // |Aut(Z2 x Z2 x Z4)| = 192
        assert_eq!(b.automorphism_group().unwrap().order(), 192);
        let too_big = loop_of_group(&cyclic(33));
        assert!(matches!(
            too_big.automorphism_group(),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn group_automorphisms_match_group_search() {
        let g = dihedral(4);
        let b = loop_of_group(&g);
        assert_eq!(
            b.automorphism_group().unwrap().order(),
            crate::fingroup::automorphisms(&g).len()
        );
    }
}
