use std::collections::VecDeque;

use super::FiniteGroup;

/// Generators picked greedily, highest element order first, together with a
/// BFS word for every element: `element = parent * gens[g]`.
struct Words {
    gens: Vec<usize>,
    // (element, parent, generator slot), in BFS order, identity excluded
    steps: Vec<(usize, usize, usize)>,
    // number of leading steps that live in the subgroup of the first i gens
    prefix_len: Vec<usize>,
}

fn words(g: &FiniteGroup) -> Words {
    let n = g.order();
    let mut by_order: Vec<usize> = (1..n).collect();
    by_order.sort_by_key(|&a| (std::cmp::Reverse(g.element_order(a)), a));
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    let mut steps = Vec::new();
    let mut prefix_len = vec![0];
    for a in by_order {
        if inside[a] {
            continue;
        }
        gens.push(a);
        // re-close: right-multiply every member by every generator
        let mut queue: VecDeque<usize> = members.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for (slot, &s) in gens.iter().enumerate() {
                let p = g.mul(x, s);
                if !inside[p] {
                    inside[p] = true;
                    members.push(p);
                    steps.push((p, x, slot));
                    queue.push_back(p);
                }
            }
        }
        prefix_len.push(steps.len());
        if members.len() == n {
            break;
        }
    }
    Words {
        gens,
        steps,
        prefix_len,
    }
}

/// Extends an assignment of generator images to the subgroup generated by
/// the first `k` generators; `None` if it is not an injective homomorphism
/// there.
fn extend(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    w: &Words,
    images: &[usize],
    k: usize,
    map: &mut [usize],
) -> bool {
    let n = g1.order();
    map.iter_mut().for_each(|m| *m = usize::MAX);
    map[0] = 0;
    let mut used = vec![false; n];
    used[0] = true;
    let mut members = vec![0];
    for &(e, parent, slot) in &w.steps[..w.prefix_len[k]] {
        let v = g2.mul(map[parent], images[slot]);
        if used[v] {
            return false;
        }
        used[v] = true;
        map[e] = v;
        members.push(e);
    }
    // edges of the Cayley graph on the generated subgroup
    members.iter().all(|&x| {
        (0..k).all(|slot| map[g1.mul(x, w.gens[slot])] == g2.mul(map[x], images[slot]))
    })
}

fn search(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    w: &Words,
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    map: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let k = images.len();
    if k == w.gens.len() {
        return visit(map);
    }
    for &c in &candidates[k] {
        images.push(c);
        if extend(g1, g2, w, images, k + 1, map) && search(g1, g2, w, candidates, images, map, visit)
        {
            return true;
        }
        images.pop();
    }
    false
}

fn run(g1: &FiniteGroup, g2: &FiniteGroup, visit: &mut dyn FnMut(&[usize]) -> bool) {
    if g1.order() != g2.order() || g1.order_profile() != g2.order_profile() {
        return;
    }
    let w = words(g1);
    let orders2: Vec<usize> = (0..g2.order()).map(|a| g2.element_order(a)).collect();
    let candidates: Vec<Vec<usize>> = w
        .gens
        .iter()
        .map(|&a| {
            let o = g1.element_order(a);
            (1..g2.order()).filter(|&b| orders2[b] == o).collect()
        })
        .collect();
    let mut map = vec![usize::MAX; g1.order()];
    if w.gens.is_empty() {
        map[0] = 0;
        visit(&map);
        return;
    }
    search(g1, g2, &w, &candidates, &mut Vec::new(), &mut map, visit);
}

/// An isomorphism `g1 -> g2` as an index map, if one exists.
///
/// Backtracking over images of a generating set, pruned by element orders.
pub fn are_isomorphic(g1: &FiniteGroup, g2: &FiniteGroup) -> Option<Vec<usize>> {
    let mut found = None;
    run(g1, g2, &mut |m| {
        found = Some(m.to_vec());
        true
    });
    found
}

/// Every automorphism of `g`, as index maps.
pub fn automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    run(g, g, &mut |m| {
        out.push(m.to_vec());
        false
    });
    out
}

#[cfg(test)]
mod tests {
    use super::super::*;

    #[test]
    fn isomorphism_examples() {
        let z4 = cyclic(4);
        let m = are_isomorphic(&z4, &z4).unwrap();
        assert!(z4.is_isomorphism(&z4, &m));
        let v4 = direct_product(&cyclic(2), &cyclic(2));
        assert!(are_isomorphic(&z4, &v4).is_none());
        assert!(are_isomorphic(&cyclic(1), &cyclic(1)).is_some());
        let z6 = cyclic(6);
        let z2z3 = direct_product(&cyclic(2), &cyclic(3));
        let m = are_isomorphic(&z6, &z2z3).unwrap();
        assert!(z6.is_isomorphism(&z2z3, &m));
        assert!(are_isomorphic(&z6, &dihedral(3)).is_none());
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&cyclic(1)).len(), 1);
        assert_eq!(automorphisms(&cyclic(3)).len(), 2);
        assert_eq!(automorphisms(&cyclic(8)).len(), 4);
        let v4 = direct_product(&cyclic(2), &cyclic(2));
        assert_eq!(automorphisms(&v4).len(), 6);
        assert_eq!(automorphisms(&dihedral(4)).len(), 8);
        assert_eq!(automorphisms(&dicyclic(2)).len(), 24);
        let z2_cubed = direct_product(&v4, &cyclic(2));
        assert_eq!(automorphisms(&z2_cubed).len(), 168);
    }

    #[test]
    fn dihedral_vs_quaternion() {
        assert!(are_isomorphic(&dihedral(4), &dicyclic(2)).is_none());
        assert_eq!(dihedral(4).order_profile(), {
            let mut v = vec![1, 2, 2, 2, 2, 2, 4, 4];
            v.sort();
            v
        });
    }
}
