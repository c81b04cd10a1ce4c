//! Hand-computed values and brute-force oracles written independently of
//! the library's own algorithms.

use std::collections::BTreeSet;

use semiloop::fingroup::{are_isomorphic, cyclic, direct_product, small_group_catalog};
use semiloop::finloop::{enumerate_left_loops, left_loop_count, loop_of_group};
use semiloop::numerics::{disk_add, disk_gyr, Complex64, DiskPoint};
use semiloop::semidirect::{external_product, heisenberg_spec};
use semiloop::transversal::{a_point, center_point, triangular_decomposition};
use semiloop::{decompose, FiniteGroup, IndexSet, PermGroup, Permutation};

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

/// Composition as a plain table lookup: `(f∘g)(i) = f[g[i]]`.
fn compose_table(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&i| f[i]).collect()
}

/// All permutations of `0..n`, lexicographic.
fn all_perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_perms(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Closure by repeated products until nothing new appears.
fn closure_oracle(gens: &[Vec<usize>], n: usize) -> BTreeSet<Vec<usize>> {
    let mut set: BTreeSet<Vec<usize>> = gens.iter().cloned().collect();
    set.insert((0..n).collect());
    loop {
        let current: Vec<_> = set.iter().cloned().collect();
        let mut grew = false;
        for a in &current {
            for b in &current {
                grew |= set.insert(compose_table(a, b));
            }
        }
        if !grew {
            return set;
        }
    }
}

#[test]
fn permutation_tables() {
    let f = perm(&[1, 2, 0]);
    let g = perm(&[1, 0, 2]);
    assert_eq!(f.compose(&g).unwrap().images(), compose_table(&[1, 2, 0], &[1, 0, 2]));
    assert_eq!(f.compose(&g).unwrap().images(), &[2, 1, 0]);
    assert_eq!(f.inverse().images(), &[2, 0, 1]);
    assert_eq!(g.inverse(), g);
}

#[test]
fn closures_match_repeated_products() {
    let cases: [&[&[usize]]; 3] = [&[&[1, 2, 0]], &[&[1, 0, 2], &[0, 2, 1]], &[&[1, 0, 2, 3], &[1, 2, 3, 0]]];
    for gens in cases {
        let n = gens[0].len();
        let gv: Vec<Vec<usize>> = gens.iter().map(|g| g.to_vec()).collect();
        let oracle = closure_oracle(&gv, n);
        let group = PermGroup::closure(&gens.iter().map(|g| perm(g)).collect::<Vec<_>>()).unwrap();
        let got: BTreeSet<Vec<usize>> = group.elements().iter().map(|p| p.images().to_vec()).collect();
        assert_eq!(got, oracle);
    }
    let s3 = PermGroup::symmetric(3);
    let stab: BTreeSet<Vec<usize>> = s3.stabilizer_of_zero().elements().iter().map(|p| p.images().to_vec()).collect();
    let oracle: BTreeSet<Vec<usize>> = all_perms(3).into_iter().filter(|p| p[0] == 0).collect();
    assert_eq!(stab, oracle);
}

#[test]
fn core_is_intersection_of_conjugates() {
    let g = PermGroup::symmetric(3).to_cayley().group;
    for h in g.all_subgroups() {
        let mut core: BTreeSet<usize> = (0..6).collect();
        for a in 0..6 {
            let conj: BTreeSet<usize> = h.iter().map(|x| g.product(&[a, x, g.inv(a)])).collect();
            core = core.intersection(&conj).copied().collect();
        }
        assert_eq!(g.core(&h).unwrap().members(), core.into_iter().collect::<Vec<_>>());
    }
}

#[test]
fn z4_coset_arithmetic() {
    let z4 = cyclic(4);
    let h = IndexSet::new([0, 2]);
    assert!(z4.is_subgroup(&h));
    assert!(!z4.is_subgroup(&IndexSet::new([0, 1])));
    assert!(z4.is_unital_transversal(&h, &IndexSet::new([0, 1])));
    assert!(!z4.is_unital_transversal(&h, &IndexSet::new([0, 2])));
    // multiply each representative by the inverse of the one in H
    assert_eq!(z4.normalize_transversal(&h, &IndexSet::new([2, 1])).unwrap().members(), &[0, 3]);
    assert_eq!(z4.normalize_transversal(&h, &IndexSet::new([2, 3])).unwrap().members(), &[0, 1]);
    let all: Vec<Vec<usize>> = z4
        .enumerate_unital_transversals(&h, 0)
        .unwrap()
        .iter()
        .map(|b| b.members().to_vec())
        .collect();
    assert_eq!(all, vec![vec![0, 1], vec![0, 3]]);
    assert_eq!(z4.generated_subgroup(&IndexSet::new([2])).unwrap().members(), &[0, 2]);

    let d = decompose(&z4, &h, &IndexSet::new([0, 1])).unwrap();
    // 1 + 1 = 2 lies in H, so the loop product is 0 and l(1,1) = 2
    assert_eq!(d.induced_loop().mul(1, 1), 0);
    assert_eq!(d.l(1, 1), 2);
    assert_eq!(d.core().members(), &[0, 2]);
}

#[test]
fn left_loop_counts() {
    // rows other than row 0 are permutations with x·0 = x
    let fact = |k: u128| (1..=k).product::<u128>();
    for n in 1..=5u128 {
        assert_eq!(left_loop_count(n as usize), Some(fact(n - 1).pow((n - 1) as u32)));
    }
    // every order-4 table with identity 0 and bijective rows, read off
    // directly from the enumeration
    let perms = all_perms(4);
    let rows_for = |x: usize| perms.iter().filter(move |p| p[0] == x).cloned();
    let mut oracle = BTreeSet::new();
    for r1 in rows_for(1) {
        for r2 in rows_for(2) {
            for r3 in rows_for(3) {
                oracle.insert(vec![vec![0, 1, 2, 3], r1.clone(), r2.clone(), r3]);
            }
        }
    }
    let got: BTreeSet<Vec<Vec<usize>>> = enumerate_left_loops(4).unwrap().map(|b| b.rows()).collect();
    assert_eq!(got, oracle);
}

#[test]
fn non_injective_right_inverse_has_no_left_inverse() {
    let witness = enumerate_left_loops(5)
        .unwrap()
        .find(|b| {
            let rho: Vec<usize> = (0..5).map(|x| (0..5).find(|&y| b.mul(x, y) == 0).unwrap()).collect();
            rho.iter().collect::<BTreeSet<_>>().len() < 5
        })
        .expect("some order-5 loop has a non-injective right inverse");
    assert!(witness.left_inverse_map().is_none());
}

#[test]
fn small_automorphism_and_multiplication_groups() {
    let z3 = loop_of_group(&cyclic(3));
    assert_eq!(z3.automorphism_group().unwrap().order(), 2);
    assert_eq!(z3.lmlt().order(), 3);
    for b in enumerate_left_loops(4).unwrap() {
        assert_eq!(b.lmlt().order(), 4 * b.lmlt1().order());
    }
}

#[test]
fn catalog_matches_group_counts() {
    // number of groups of each order up to 12
    let known = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5];
    let catalog = small_group_catalog(12);
    for (i, &k) in known.iter().enumerate() {
        let n = i + 1;
        assert_eq!(catalog.iter().filter(|c| c.group.order() == n).count(), k, "order {n}");
    }
    let four: Vec<_> = catalog.iter().filter(|c| c.group.order() == 4).collect();
    assert!(are_isomorphic(&four[0].group, &four[1].group).is_none());
    assert!(catalog.iter().any(|c| c.group.order() == 6 && !c.group.is_abelian()));
}

/// Upper unitriangular `[[1,a,c],[0,1,b],[0,0,1]]` over `F_p` as `(a,b,c)`.
fn unitriangular(p: usize) -> (FiniteGroup, Vec<(usize, usize, usize)>) {
    let elems: Vec<(usize, usize, usize)> = (0..p)
        .flat_map(|a| (0..p).flat_map(move |b| (0..p).map(move |c| (a, b, c))))
        .collect();
    let idx = |t: (usize, usize, usize)| elems.iter().position(|&e| e == t).unwrap();
    let rows = elems
        .iter()
        .map(|&(a, b, c)| {
            elems
                .iter()
                .map(|&(a2, b2, c2)| idx(((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p)))
                .collect()
        })
        .collect();
    (FiniteGroup::validate(rows).unwrap(), elems)
}

#[test]
fn heisenberg_groups_are_unitriangular() {
    for p in [3, 5, 7] {
        let spec = heisenberg_spec(p).unwrap();
        let g = external_product(&spec).unwrap();
        assert_eq!(g.group.order(), p * p * p);
        let (oracle, _) = unitriangular(p);
        assert!(are_isomorphic(&g.group, &oracle).is_some(), "p = {p}");
        let t = triangular_decomposition(p).unwrap();
        assert!(are_isomorphic(&g.group, t.group()).is_some(), "p = {p}");
    }
}

#[test]
fn heisenberg_product_formula_over_f3() {
    let p = 3;
    let spec = heisenberg_spec(p).unwrap();
    let half = 2; // 2·2 = 1 in F₃
    for x in 0..9 {
        for y in 0..9 {
            for (h, k) in [(0, 0), (1, 2), (2, 2)] {
                let (x1, x2) = (x / 3, x % 3);
                let (y1, y2) = (y / 3, y % 3);
                let third = (h + k + half * (x1 * y2 + 2 * x2 * y1)) % p;
                let plane = ((x1 + y1) % 3) * 3 + (x2 + y2) % 3;
                assert_eq!(spec.multiply(x, h, y, k), (plane, third));
            }
        }
    }
    // the plane itself is Z₃ × Z₃
    let plane = direct_product(&cyclic(3), &cyclic(3));
    assert_eq!(spec.b().flat_table(), loop_of_group(&plane).flat_table());
}

#[test]
fn triangular_corner_by_matrix_multiplication() {
    let p = 3;
    let d = triangular_decomposition(p).unwrap();
    let (_, elems) = unitriangular(p);
    // A(1,0)·A(0,1) = [[1,1,1],[0,1,1],[0,0,1]] while A(1,1) has corner 1·1/2 = 2,
    // so l = A(1,1)⁻¹·A(1,0)·A(0,1) is the corner matrix M(1 − 2) = M(2)
    let a10 = a_point(p, 1, 0);
    let a01 = a_point(p, 0, 1);
    let bx = d.induced_loop();
    let x = d.transversal().position(a10).unwrap();
    let y = d.transversal().position(a01).unwrap();
    assert_eq!(d.element(bx.mul(x, y)), a_point(p, 1, 1));
    assert_eq!(d.l(x, y), center_point(p, 2));
    assert_eq!(elems.len(), 27);
}

#[test]
fn disk_values_by_hand() {
    let p = |re: f64, im: f64| DiskPoint::new(Complex64::new(re, im)).unwrap();
    // (0.5 + 0.5)/(1 + 0.25)
    assert!((disk_add(p(0.5, 0.0), p(0.5, 0.0)).z() - Complex64::new(0.8, 0.0)).norm() < 1e-15);
    // (1 − 0.15i)/(1 + 0.15i) = (1 − 0.15i)²/1.0225
    let expected = Complex64::new((1.0 - 0.0225) / 1.0225, -0.3 / 1.0225);
    assert!((disk_gyr(p(0.5, 0.0), p(0.0, 0.3)) - expected).norm() < 1e-15);
    assert!((expected - Complex64::new(0.955990, -0.293398)).norm() < 1e-6);
}

/// The counterexample to injectivity of `σ`, kept as its own test.
#[test]
fn unitriangular_f3_has_nontrivial_l_with_trivial_sigma_on_normal_h() {
    let t = triangular_decomposition(3).unwrap();
    assert!(t.group().is_normal(t.subgroup()));
    assert_eq!(t.subgroup().len(), 3);
    for h in t.subgroup().iter() {
        assert!(t.sigma(h).is_identity());
    }
    assert!((0..9).any(|x| (0..9).any(|y| t.l(x, y) != 0)));
}
