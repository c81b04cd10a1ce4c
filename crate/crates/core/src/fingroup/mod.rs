//! Finite groups given by Cayley tables, with the subgroup, coset and
//! quotient machinery used by transversal decompositions.
//!
//! The identity is always index 0.

mod catalog;
mod iso;

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

pub use catalog::{
    cyclic, dicyclic, dihedral, direct_product, semidirect_by_cyclic, small_group_catalog,
    CatalogGroup,
};
pub use iso::{are_isomorphic, automorphisms};

/// A sorted, duplicate-free set of element indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(Vec<usize>);

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl IndexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        IndexSet(v)
    }

    pub fn singleton(x: usize) -> Self {
        IndexSet(vec![x])
    }

    pub fn full(n: usize) -> Self {
        IndexSet((0..n).collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// Position of `x` within the sorted member list.
    pub fn position(&self, x: usize) -> Option<usize> {
        self.0.binary_search(&x).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    pub(crate) fn check_within(&self, n: usize) -> Result<()> {
        match self.0.last() {
            Some(&x) if x >= n => Err(Error::IndexOutOfRange { index: x, size: n }),
            _ => Ok(()),
        }
    }

    /// Membership mask over `{0..n-1}`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.0 {
            m[x] = true;
        }
        m
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexSet::new(iter)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a Cayley table: square, in range, identity at 0, inverses,
    /// associativity. Associativity is decided by Light's test over a
    /// generating set of the table, which is exact.
    pub fn validate(rows: Vec<Vec<usize>>) -> Result<FiniteGroup> {
        let (n, table) = flatten_square(rows)?;
        check_identity_at_zero(n, &table)?;
        let mut inverses = vec![usize::MAX; n];
        for x in 0..n {
            let row = &table[x * n..(x + 1) * n];
            let y = row
                .iter()
                .position(|&v| v == 0)
                .ok_or(Error::NoInverse { x })?;
            if table[y * n + x] != 0 {
                return Err(Error::NoInverse { x });
            }
            inverses[x] = y;
        }
        for x in 0..n {
            check_row_bijective(n, &table, x)?;
        }
        if let Some((x, y, z)) = associativity_witness(n, &table) {
            return Err(Error::NotAssociative { x, y, z });
        }
        Ok(FiniteGroup {
            n,
            table,
            inverses,
            labels: None,
        })
    }

    /// Trusted constructor for tables produced by this crate.
    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<usize>) -> FiniteGroup {
        let mut inverses = vec![0; n];
        for x in 0..n {
            for y in 0..n {
                if table[x * n + y] == 0 {
                    inverses[x] = y;
                    break;
                }
            }
        }
        FiniteGroup {
            n,
            table,
            inverses,
            labels: None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "{} labels for a group of order {}",
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
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, elems: &[usize]) -> usize {
        elems.iter().fold(0, |acc, &e| self.mul(acc, e))
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n.max(1)).take(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Sorted multiset of element orders; an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.n).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    pub fn is_subgroup(&self, s: &IndexSet) -> bool {
        if s.check_within(self.n).is_err() || !s.contains(0) {
            return false;
        }
        let mask = s.mask(self.n);
        s.iter().all(|a| {
            mask[self.inv(a)] && s.iter().all(|b| mask[self.mul(a, b)])
        })
    }

    pub fn is_normal(&self, k: &IndexSet) -> bool {
        self.normality_witness(k).is_none()
    }

    fn normality_witness(&self, k: &IndexSet) -> Option<(usize, usize)> {
        let mask = k.mask(self.n);
        for g in 0..self.n {
            for x in k.iter() {
                if !mask[self.conjugate(g, x)] {
                    return Some((x, g));
                }
            }
        }
        None
    }

    fn require_subgroup(&self, s: &IndexSet) -> Result<()> {
        s.check_within(self.n)?;
        if !self.is_subgroup(s) {
            return Err(Error::NotSubgroup {
                reason: format!("{s} is not closed or misses the identity"),
            });
        }
        Ok(())
    }

    /// `∩_g gHg⁻¹`, the largest normal subgroup of `G` inside `H`.
    pub fn core(&self, h: &IndexSet) -> Result<IndexSet> {
        self.require_subgroup(h)?;
        let mask = h.mask(self.n);
        Ok(h.iter()
            .filter(|&x| (0..self.n).all(|g| mask[self.conjugate(self.inv(g), x)]))
            .collect())
    }

    /// Left cosets `gH`, ordered by least element.
    pub fn left_cosets(&self, h: &IndexSet) -> Result<Vec<IndexSet>> {
        self.require_subgroup(h)?;
        let mut assigned = vec![false; self.n];
        let mut blocks = Vec::new();
        for g in 0..self.n {
            if assigned[g] {
                continue;
            }
            let block: IndexSet = h.iter().map(|x| self.mul(g, x)).collect();
            for x in block.iter() {
                assigned[x] = true;
            }
            blocks.push(block);
        }
        Ok(blocks)
    }

    /// For each element, the index of its left coset in [`Self::left_cosets`].
    fn coset_labels(&self, cosets: &[IndexSet]) -> Vec<usize> {
        let mut label = vec![0; self.n];
        for (i, c) in cosets.iter().enumerate() {
            for x in c.iter() {
                label[x] = i;
            }
        }
        label
    }

    pub(crate) fn transversal_problem(&self, h: &IndexSet, b: &IndexSet) -> Result<Option<String>> {
        let cosets = self.left_cosets(h)?;
        if b.check_within(self.n).is_err() {
            return Ok(Some(format!("{b} has an index out of range")));
        }
        let label = self.coset_labels(&cosets);
        let mut hit = vec![None; cosets.len()];
        for x in b.iter() {
            if let Some(prev) = hit[label[x]] {
                return Ok(Some(format!(
                    "{prev} and {x} represent the same coset {}",
                    cosets[label[x]]
                )));
            }
            hit[label[x]] = Some(x);
        }
        if let Some(i) = hit.iter().position(Option::is_none) {
            return Ok(Some(format!("no representative for coset {}", cosets[i])));
        }
        Ok(None)
    }

    pub fn is_left_transversal(&self, h: &IndexSet, b: &IndexSet) -> bool {
        matches!(self.transversal_problem(h, b), Ok(None))
    }

    pub fn is_unital_transversal(&self, h: &IndexSet, b: &IndexSet) -> bool {
        b.contains(0) && self.is_left_transversal(h, b)
    }

    /// Replaces a left transversal `B` by `B e⁻¹`, where `e` is the
    /// representative of `H` itself; the result contains the identity.
    pub fn normalize_transversal(&self, h: &IndexSet, b: &IndexSet) -> Result<IndexSet> {
        if let Some(reason) = self.transversal_problem(h, b)? {
            return Err(Error::NotTransversal { reason });
        }
        let e = b.iter().find(|&x| h.contains(x)).expect("H is a coset");
        let e_inv = self.inv(e);
        Ok(b.iter().map(|x| self.mul(x, e_inv)).collect())
    }

    /// Number of unital transversals: `|H|^(#cosets - 1)`, saturating.
    pub fn count_unital_transversals(&self, h: &IndexSet) -> Result<u128> {
        let k = self.left_cosets(h)?.len();
        let mut total: u128 = 1;
        for _ in 1..k {
            total = total.saturating_mul(h.len() as u128);
        }
        Ok(total)
    }

    /// All unital transversals, ordered lexicographically by the tuple of
    /// chosen representatives (cosets by least element, representatives
    /// ascending within a coset). `limit == 0` means no limit.
    pub fn enumerate_unital_transversals(
        &self,
        h: &IndexSet,
        limit: usize,
    ) -> Result<Vec<IndexSet>> {
        let cosets = self.left_cosets(h)?;
        let others = &cosets[1..];
        let mut out = Vec::new();
        let mut choice = vec![0usize; others.len()];
        loop {
            if limit != 0 && out.len() >= limit {
                break;
            }
            out.push(
                std::iter::once(0)
                    .chain(others.iter().zip(&choice).map(|(c, &i)| c.members()[i]))
                    .collect(),
            );
            // odometer, last coset fastest
            let mut pos = others.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                choice[pos] += 1;
                if choice[pos] < others[pos].len() {
                    break;
                }
                choice[pos] = 0;
            }
        }
        Ok(out)
    }

    /// At most `cap` unital transversals, evenly strided through the
    /// enumeration order when there are more than `cap`.
    pub fn select_unital_transversals(&self, h: &IndexSet, cap: usize) -> Result<Vec<IndexSet>> {
        let total = self.count_unital_transversals(h)?;
        if cap == 0 || total <= cap as u128 {
            return self.enumerate_unital_transversals(h, 0);
        }
        let cosets = self.left_cosets(h)?;
        let others = &cosets[1..];
        let radix = h.len() as u128;
        Ok((0..cap as u128)
            .map(|i| {
                let mut code = i * total / cap as u128;
                let mut picks = vec![0usize; others.len()];
                for slot in picks.iter_mut().rev() {
                    *slot = (code % radix) as usize;
                    code /= radix;
                }
                std::iter::once(0)
                    .chain(others.iter().zip(&picks).map(|(c, &j)| c.members()[j]))
                    .collect()
            })
            .collect())
    }

    /// `⟨S⟩`.
    pub fn generated_subgroup(&self, s: &IndexSet) -> Result<IndexSet> {
        s.check_within(self.n)?;
        let gens: Vec<usize> = s.iter().filter(|&x| x != 0).collect();
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut out = vec![0];
        while let Some(a) = queue.pop_front() {
            for &g in &gens {
                let p = self.mul(a, g);
                if !seen[p] {
                    seen[p] = true;
                    out.push(p);
                    queue.push_back(p);
                }
            }
        }
        Ok(IndexSet::new(out))
    }

    /// Every subgroup, ordered by (order, members).
    pub fn all_subgroups(&self) -> Vec<IndexSet> {
        let mut subs: Vec<IndexSet> = (0..self.n)
            .map(|a| self.generated_subgroup(&IndexSet::singleton(a)).expect("in range"))
            .collect();
        subs.sort();
        subs.dedup();
        let mut frontier = subs.clone();
        while !frontier.is_empty() {
            let mut fresh = Vec::new();
            for a in &frontier {
                for b in &subs {
                    if a.is_subset(b) || b.is_subset(a) {
                        continue;
                    }
                    let joined = self
                        .generated_subgroup(&a.iter().chain(b.iter()).collect())
                        .expect("in range");
                    if subs.binary_search(&joined).is_err() && !fresh.contains(&joined) {
                        fresh.push(joined);
                    }
                }
            }
            for f in &fresh {
                if let Err(pos) = subs.binary_search(f) {
                    subs.insert(pos, f.clone());
                }
            }
            frontier = fresh;
        }
        subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        subs
    }

    /// `G/K` with cosets indexed by least element (so `K` itself is 0).
    pub fn quotient(&self, k: &IndexSet) -> Result<Quotient> {
        self.require_subgroup(k)?;
        if let Some((element, by)) = self.normality_witness(k) {
            return Err(Error::NotNormal { element, by });
        }
        let cosets = self.left_cosets(k)?;
        let projection = self.coset_labels(&cosets);
        let m = cosets.len();
        let mut table = vec![0; m * m];
        for i in 0..m {
            let a = cosets[i].members()[0];
            for j in 0..m {
                let b = cosets[j].members()[0];
                table[i * m + j] = projection[self.mul(a, b)];
            }
        }
        Ok(Quotient {
            group: FiniteGroup::from_flat_unchecked(m, table),
            projection,
            cosets,
        })
    }

    /// Checks that `map` is a homomorphism `self -> target`, returning the
    /// first failing pair.
    pub fn homomorphism_witness(
        &self,
        target: &FiniteGroup,
        map: &[usize],
    ) -> Option<(usize, usize)> {
        for a in 0..self.n {
            for b in 0..self.n {
                if map[self.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_isomorphism(&self, target: &FiniteGroup, map: &[usize]) -> bool {
        if map.len() != self.n || target.order() != self.n {
            return false;
        }
        let mut hit = vec![false; self.n];
        for &v in map {
            if v >= self.n || hit[v] {
                return false;
            }
            hit[v] = true;
        }
        self.homomorphism_witness(target, map).is_none()
    }

    /// Subgroup `S` of `self` re-indexed as a group of its own, with the
    /// members in sorted order (identity first).
    pub fn subgroup_as_group(&self, s: &IndexSet) -> Result<FiniteGroup> {
        self.require_subgroup(s)?;
        let m = s.len();
        let mut table = vec![0; m * m];
        for (i, a) in s.iter().enumerate() {
            for (j, b) in s.iter().enumerate() {
                table[i * m + j] = s.position(self.mul(a, b)).expect("closed");
            }
        }
        Ok(FiniteGroup::from_flat_unchecked(m, table))
    }
}

/// A quotient group together with the projection `g -> [gK]`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<usize>,
    pub cosets: Vec<IndexSet>,
}

pub fn validate_group(rows: Vec<Vec<usize>>) -> Result<FiniteGroup> {
    FiniteGroup::validate(rows)
}

pub fn is_subgroup(g: &FiniteGroup, s: &IndexSet) -> bool {
    g.is_subgroup(s)
}

pub fn core(g: &FiniteGroup, h: &IndexSet) -> Result<IndexSet> {
    g.core(h)
}

pub fn left_cosets(g: &FiniteGroup, h: &IndexSet) -> Result<Vec<IndexSet>> {
    g.left_cosets(h)
}

pub fn is_unital_transversal(g: &FiniteGroup, h: &IndexSet, b: &IndexSet) -> bool {
    g.is_unital_transversal(h, b)
}

pub fn normalize_transversal(g: &FiniteGroup, h: &IndexSet, b: &IndexSet) -> Result<IndexSet> {
    g.normalize_transversal(h, b)
}

pub fn enumerate_unital_transversals(
    g: &FiniteGroup,
    h: &IndexSet,
    limit: usize,
) -> Result<Vec<IndexSet>> {
    g.enumerate_unital_transversals(h, limit)
}

pub fn generated_subgroup(g: &FiniteGroup, s: &IndexSet) -> Result<IndexSet> {
    g.generated_subgroup(s)
}

pub fn quotient(g: &FiniteGroup, k: &IndexSet) -> Result<Quotient> {
    g.quotient(k)
}

pub(crate) fn flatten_square(rows: Vec<Vec<usize>>) -> Result<(usize, Vec<usize>)> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    let mut table = Vec::with_capacity(n * n);
    for (row, r) in rows.into_iter().enumerate() {
        if r.len() != n {
            return Err(Error::NotSquare {
                row,
                len: r.len(),
                expected: n,
            });
        }
        for (col, &value) in r.iter().enumerate() {
            if value >= n {
                return Err(Error::EntryOutOfRange { row, col, value });
            }
        }
        table.extend(r);
    }
    Ok((n, table))
}

pub(crate) fn check_identity_at_zero(n: usize, table: &[usize]) -> Result<()> {
    for x in 0..n {
        if table[x] != x || table[x * n] != x {
            return Err(Error::IdentityViolation { x });
        }
    }
    Ok(())
}

pub(crate) fn check_row_bijective(n: usize, table: &[usize], row: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &v in &table[row * n..(row + 1) * n] {
        if seen[v] {
            return Err(Error::RowNotBijective { row, value: v });
        }
        seen[v] = true;
    }
    Ok(())
}

/// Greedy generating set of the magma `(table)`: each new generator is the
/// least element outside the sub-magma generated so far.
pub(crate) fn magma_generators(n: usize, table: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; n];
    let mut members: Vec<usize> = Vec::new();
    let mut gens = Vec::new();
    for x in 0..n {
        if inside[x] {
            continue;
        }
        gens.push(x);
        inside[x] = true;
        members.push(x);
        // close under the product; `done` marks the prefix already paired
        let mut done = members.len() - 1;
        while done < members.len() {
            let c = members[done];
            let mut i = 0;
            while i <= done {
                let d = members[i];
                for p in [table[c * n + d], table[d * n + c]] {
                    if !inside[p] {
                        inside[p] = true;
                        members.push(p);
                    }
                }
                i += 1;
            }
            done += 1;
        }
    }
    gens
}

/// Least-generator witness of non-associativity by Light's test, or `None`.
///
/// The elements `a` with `(xa)y = x(ay)` for all `x, y` form a sub-magma, so
/// checking the generators is enough.
pub(crate) fn associativity_witness(n: usize, table: &[usize]) -> Option<(usize, usize, usize)> {
    for a in magma_generators(n, table) {
        for x in 0..n {
            let xa = table[x * n + a];
            for y in 0..n {
                if table[xa * n + y] != table[x * n + table[a * n + y]] {
                    return Some((x, a, y));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn z(n: usize) -> FiniteGroup {
        cyclic(n)
    }

    fn s(v: &[usize]) -> IndexSet {
        IndexSet::new(v.iter().copied())
    }

    fn brute_associative(n: usize, t: &[usize]) -> bool {
        (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|w| t[t[x * n + y] * n + w] == t[x * n + t[y * n + w]]))
        })
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate_group(vec![vec![0]]).unwrap().order(), 1);
        let z4: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        assert!(validate_group(z4).is_ok());
        assert_eq!(
            validate_group(vec![vec![0, 1], vec![1, 1]]),
            Err(Error::NoInverse { x: 1 })
        );
        assert!(matches!(
            validate_group(vec![vec![0, 1], vec![1]]),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            validate_group(vec![vec![0, 2], vec![1, 0]]),
            Err(Error::EntryOutOfRange { .. })
        ));
        assert!(matches!(validate_group(vec![]), Err(Error::EmptyTable)));
    }

    #[test]
    fn validate_catches_nonassociative_latin_square() {
        // loop of order 5 that is not a group
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            validate_group(rows),
            Err(Error::NotAssociative { .. })
        ));
    }

    #[test]
    fn subgroup_examples() {
        let g = z(4);
        assert!(g.is_subgroup(&s(&[0])));
        assert!(g.is_subgroup(&s(&[0, 2])));
        assert!(!g.is_subgroup(&s(&[0, 1])));
        assert!(!g.is_subgroup(&s(&[1, 3])));
    }

    #[test]
    fn core_examples() {
        assert_eq!(z(4).core(&s(&[0, 2])).unwrap(), s(&[0, 2]));
        let d6 = dihedral(3);
        let order_two = d6
            .all_subgroups()
            .into_iter()
            .find(|h| h.len() == 2)
            .unwrap();
        assert_eq!(d6.core(&order_two).unwrap(), s(&[0]));
        assert_eq!(d6.core(&s(&[0])).unwrap(), s(&[0]));
        assert!(z(4).core(&s(&[0, 1])).is_err());
    }

    #[test]
    fn coset_examples() {
        let g = z(4);
        assert_eq!(g.left_cosets(&s(&[0, 2])).unwrap(), vec![s(&[0, 2]), s(&[1, 3])]);
        assert_eq!(g.left_cosets(&s(&[0])).unwrap().len(), 4);
        assert_eq!(g.left_cosets(&IndexSet::full(4)).unwrap().len(), 1);
    }

    #[test]
    fn transversal_examples() {
        let g = z(4);
        let h = s(&[0, 2]);
        assert!(g.is_unital_transversal(&h, &s(&[0, 1])));
        assert!(!g.is_unital_transversal(&h, &s(&[0, 2])));
        assert!(!g.is_unital_transversal(&h, &s(&[2, 1])));
        assert!(g.is_unital_transversal(&s(&[0]), &IndexSet::full(4)));

        assert_eq!(g.normalize_transversal(&h, &s(&[0, 1])).unwrap(), s(&[0, 1]));
        assert_eq!(g.normalize_transversal(&h, &s(&[2, 1])).unwrap(), s(&[0, 3]));
        assert_eq!(g.normalize_transversal(&h, &s(&[2, 3])).unwrap(), s(&[0, 1]));
        assert!(g.normalize_transversal(&h, &s(&[0, 2])).is_err());
    }

    #[test]
    fn enumerate_transversal_examples() {
        let g = z(4);
        assert_eq!(
            g.enumerate_unital_transversals(&s(&[0, 2]), 0).unwrap(),
            vec![s(&[0, 1]), s(&[0, 3])]
        );
        assert_eq!(
            g.enumerate_unital_transversals(&IndexSet::full(4), 0).unwrap(),
            vec![s(&[0])]
        );
        assert_eq!(
            g.enumerate_unital_transversals(&s(&[0]), 0).unwrap(),
            vec![IndexSet::full(4)]
        );
        assert_eq!(g.enumerate_unital_transversals(&s(&[0, 2]), 1).unwrap().len(), 1);
    }

    #[test]
    fn transversal_counts_match_formula_on_small_catalog() {
        for entry in small_group_catalog(12) {
            let g = &entry.group;
            for h in g.all_subgroups() {
                let all = g.enumerate_unital_transversals(&h, 0).unwrap();
                assert_eq!(all.len() as u128, g.count_unital_transversals(&h).unwrap());
                for b in &all {
                    assert!(g.is_unital_transversal(&h, b));
                }
                let picked = g.select_unital_transversals(&h, 7).unwrap();
                assert_eq!(picked.len(), all.len().min(7));
                for b in &picked {
                    assert!(g.is_unital_transversal(&h, b));
                }
            }
        }
    }

    #[test]
    fn generated_subgroup_examples() {
        let g = z(4);
        assert_eq!(g.generated_subgroup(&s(&[0])).unwrap(), s(&[0]));
        assert_eq!(g.generated_subgroup(&s(&[1])).unwrap(), IndexSet::full(4));
        assert_eq!(g.generated_subgroup(&s(&[2])).unwrap(), s(&[0, 2]));
    }

    #[test]
    fn quotient_examples() {
        let g = z(4);
        let q = g.quotient(&s(&[0])).unwrap();
        assert!(are_isomorphic(&q.group, &g).is_some());
        let q = g.quotient(&s(&[0, 2])).unwrap();
        assert_eq!(q.group.order(), 2);
        assert!(g.homomorphism_witness(&q.group, &q.projection).is_none());
        assert_eq!(g.quotient(&IndexSet::full(4)).unwrap().group.order(), 1);
        let d6 = dihedral(3);
        let order_two = d6.all_subgroups().into_iter().find(|h| h.len() == 2).unwrap();
        assert!(matches!(d6.quotient(&order_two), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn subgroups_of_small_groups() {
        assert_eq!(z(4).all_subgroups().len(), 3);
        assert_eq!(dihedral(3).all_subgroups().len(), 6);
        let v4 = direct_product(&z(2), &z(2));
        assert_eq!(v4.all_subgroups().len(), 5);
        let z2_cubed = direct_product(&v4, &z(2));
        assert_eq!(z2_cubed.all_subgroups().len(), 16);
    }

    #[test]
    fn light_test_agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..400 {
            let n = rng.gen_range(1..6);
            let mut t = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    t[x * n + y] = if x == 0 {
                        y
                    } else if y == 0 {
                        x
                    } else {
                        rng.gen_range(0..n)
                    };
                }
            }
            assert_eq!(associativity_witness(n, &t).is_none(), brute_associative(n, &t));
        }
        for entry in small_group_catalog(8) {
            let g = &entry.group;
            assert!(brute_associative(g.order(), g.flat_table()));
        }
    }
}
