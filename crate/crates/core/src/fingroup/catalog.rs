use std::sync::OnceLock;

use super::{are_isomorphic, automorphisms, FiniteGroup};

/// Largest order covered by [`small_group_catalog`].
pub const CATALOG_MAX_ORDER: usize = 16;

#[derive(Clone, Debug)]
pub struct CatalogGroup {
    pub name: String,
    pub group: FiniteGroup,
}

/// `Z_n` with `a * b = a + b mod n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n > 0, "cyclic group of order 0");
    let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    FiniteGroup::from_flat_unchecked(n, table)
}

/// `G x H`, with `(a, b)` at index `a * |H| + b`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (n, m) = (g.order(), h.order());
    let size = n * m;
    let mut table = vec![0; size * size];
    for i in 0..size {
        for j in 0..size {
            table[i * size + j] = g.mul(i / m, j / m) * m + h.mul(i % m, j % m);
        }
    }
    FiniteGroup::from_flat_unchecked(size, table)
}

/// `N ⋊ Z_m` where the generator of `Z_m` acts by the automorphism `phi`
/// (`phi^m` must be the identity). `(a, k)` sits at index `a * m + k` and
/// `(a, k)(b, j) = (a phi^k(b), k + j)`.
pub fn semidirect_by_cyclic(normal: &FiniteGroup, phi: &[usize], m: usize) -> FiniteGroup {
    let n = normal.order();
    let mut powers = vec![(0..n).collect::<Vec<usize>>()];
    for k in 1..=m {
        let prev = &powers[k - 1];
        powers.push((0..n).map(|b| phi[prev[b]]).collect());
    }
    assert!(
        powers[m].iter().enumerate().all(|(i, &v)| i == v),
        "automorphism order does not divide {m}"
    );
    let size = n * m;
    let mut table = vec![0; size * size];
    for i in 0..size {
        let (a, k) = (i / m, i % m);
        for j in 0..size {
            let (b, l) = (j / m, j % m);
            table[i * size + j] = normal.mul(a, powers[k][b]) * m + (k + l) % m;
        }
    }
    FiniteGroup::from_flat_unchecked(size, table)
}

/// Dihedral group of order `2n`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let base = cyclic(n);
    let negate: Vec<usize> = (0..n).map(|a| (n - a) % n).collect();
    semidirect_by_cyclic(&base, &negate, 2)
}

/// Dicyclic group of order `4n`: `<a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>`.
/// `a^k x^j` sits at index `2k + j`. `dicyclic(2)` is the quaternion group.
pub fn dicyclic(n: usize) -> FiniteGroup {
    assert!(n > 0, "dicyclic group needs n >= 1");
    let r = 2 * n;
    let size = 2 * r;
    let mut table = vec![0; size * size];
    for i in 0..size {
        let (k, j) = (i / 2, i % 2);
        for t in 0..size {
            let (l, s) = (t / 2, t % 2);
            let (exp, x) = match (j, s) {
                (0, _) => (k + l, s),
                (_, 0) => (k + r - l, 1),
                _ => (k + r - l + n, 0),
            };
            table[i * size + t] = (exp % r) * 2 + x;
        }
    }
    FiniteGroup::from_flat_unchecked(size, table)
}

fn build_catalog() -> Vec<CatalogGroup> {
    let mut classes: Vec<CatalogGroup> = Vec::new();
    let push = |classes: &mut Vec<CatalogGroup>, name: String, group: FiniteGroup| {
        let profile = group.order_profile();
        let abelian = group.is_abelian();
        let known = classes.iter().any(|c| {
            c.group.order() == group.order()
                && c.group.is_abelian() == abelian
                && c.group.order_profile() == profile
                && are_isomorphic(&c.group, &group).is_some()
        });
        if !known {
            classes.push(CatalogGroup { name, group });
        }
    };
    for order in 1..=CATALOG_MAX_ORDER {
        push(&mut classes, format!("C{order}"), cyclic(order));
        let smaller: Vec<CatalogGroup> = classes
            .iter()
            .filter(|c| c.group.order() > 1 && c.group.order() < order && order % c.group.order() == 0)
            .cloned()
            .collect();
        for base in smaller {
            let m = order / base.group.order();
            for (idx, phi) in automorphisms(&base.group).into_iter().enumerate() {
                let mut power = phi.clone();
                for _ in 1..m {
                    power = power.iter().map(|&v| phi[v]).collect();
                }
                if power.iter().enumerate().any(|(i, &v)| i != v) {
                    continue;
                }
                let name = if idx == 0 {
                    format!("{}xC{m}", base.name)
                } else {
                    format!("{}:C{m}[{idx}]", base.name)
                };
                push(&mut classes, name, semidirect_by_cyclic(&base.group, &phi, m));
            }
        }
        if order % 4 == 0 && order >= 8 {
            let name = if order == 8 { "Q8".to_string() } else { format!("Dic{order}") };
            push(&mut classes, name, dicyclic(order / 4));
        }
    }
    classes
}

/// One representative per isomorphism class of groups of order at most
/// `max_order` (at most [`CATALOG_MAX_ORDER`]), ordered by group order.
///
/// Built from cyclic groups, every `N ⋊ Z_m` over smaller catalog groups,
/// and the dicyclic family, deduplicated by isomorphism.
pub fn small_group_catalog(max_order: usize) -> Vec<CatalogGroup> {
    static CATALOG: OnceLock<Vec<CatalogGroup>> = OnceLock::new();
    assert!(
        max_order <= CATALOG_MAX_ORDER,
        "catalog only covers orders up to {CATALOG_MAX_ORDER}"
    );
    CATALOG
        .get_or_init(build_catalog)
        .iter()
        .filter(|c| c.group.order() <= max_order)
        .cloned()
        .collect()
}
