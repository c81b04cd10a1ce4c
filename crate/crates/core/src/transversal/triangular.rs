use super::{decompose, TransversalDecomposition};
use crate::error::{Error, Result};
use crate::fingroup::{FiniteGroup, IndexSet};

/// Index of the unitriangular matrix `[[1,x,y],[0,1,z],[0,0,1]]` over `F_p`.
pub fn triangular_index(p: usize, x: usize, y: usize, z: usize) -> usize {
    (x % p) * p * p + (y % p) * p + z % p
}

/// `A(x₁,x₂)`: the matrix with `x = x₁`, `z = x₂` and `y = x₁x₂/2`.
pub fn a_point(p: usize, x1: usize, x2: usize) -> usize {
    let half = p.div_ceil(2);
    triangular_index(p, x1, x1 % p * (x2 % p) % p * half, x2)
}

/// `M(c)`: the central matrix with only the corner entry `c`.
pub fn center_point(p: usize, c: usize) -> usize {
    triangular_index(p, 0, c, 0)
}

fn is_odd_prime(p: usize) -> bool {
    p >= 3 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Upper unitriangular 3×3 matrices over `F_p` split as the transversal
/// `{A(x₁,x₂)}` times the center `{M(c)}`. The induced loop is
/// the plane under addition while `l` is a nontrivial symplectic form and
/// `σ` is trivial on the normal subgroup `H`, so `σ` is not injective.
pub fn triangular_decomposition(p: usize) -> Result<TransversalDecomposition> {
    if !is_odd_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
    }
    let order = p * p * p;
    let mut rows = Vec::with_capacity(order);
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                let mut row = Vec::with_capacity(order);
                for u in 0..p {
                    for v in 0..p {
                        for w in 0..p {
                            row.push(triangular_index(p, x + u, y + v + x * w, z + w));
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    let g = FiniteGroup::validate(rows)?;
    let h: IndexSet = (0..p).map(|c| center_point(p, c)).collect();
    let b: IndexSet = (0..p)
        .flat_map(|x1| (0..p).map(move |x2| a_point(p, x1, x2)))
        .collect();
    let d = decompose(&g, &h, &b)?;

    let half = p.div_ceil(2);
    let loop_el = |x1: usize, x2: usize| d.rep(a_point(p, x1, x2));
    for x1 in 0..p {
        for x2 in 0..p {
            for y1 in 0..p {
                for y2 in 0..p {
                    let (u, v) = (loop_el(x1, x2), loop_el(y1, y2));
                    assert_eq!(
                        d.induced_loop().mul(u, v),
                        loop_el((x1 + y1) % p, (x2 + y2) % p),
                        "loop is the plane"
                    );
                    let form = (x1 * y2 + p * p - x2 * y1) % p * half % p;
                    assert_eq!(d.l(u, v), center_point(p, form), "l is the halved form");
                }
            }
        }
    }
    assert!(g.is_normal(&h));
    assert!(h.iter().all(|c| d.sigma(c).is_identity()));
    assert!(!g.is_subgroup(&b));
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{are_isomorphic, cyclic, direct_product};
    use crate::finloop::loop_of_group;
    use crate::semidirect::{external_product, heisenberg_spec};

    #[test]
    fn corner_value_over_f3() {
        let d = triangular_decomposition(3).unwrap();
        let (u, v) = (d.rep(a_point(3, 1, 0)), d.rep(a_point(3, 0, 1)));
        assert_eq!(d.l(u, v), center_point(3, 2));
    }

    #[test]
    fn induced_loop_is_z3_squared() {
        let d = triangular_decomposition(3).unwrap();
        let plane = loop_of_group(&direct_product(&cyclic(3), &cyclic(3)));
        let b = d.induced_loop();
        assert!(b.is_associative());
        assert!(crate::fingroup::are_isomorphic(
            &FiniteGroup::validate(b.rows()).unwrap(),
            &FiniteGroup::validate(plane.rows()).unwrap()
        )
        .is_some());
    }

    #[test]
    fn matches_the_external_construction() {
        for p in [3, 5] {
            let d = triangular_decomposition(p).unwrap();
            let ext = external_product(&heisenberg_spec(p).unwrap()).unwrap();
            assert!(are_isomorphic(d.group(), &ext.group).is_some());
        }
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert!(triangular_decomposition(2).is_err());
        assert!(triangular_decomposition(9).is_err());
    }
}
