use super::{standard_product, ProductGroup, StdProductSpec};
use crate::error::{Error, Result};
use crate::fingroup::{cyclic, FiniteGroup, IndexSet};
use crate::finloop::FiniteLeftLoop;
use crate::perm::{PermGroup, Permutation};

/// Condition names in the order [`validate_external`] reports them.
pub const EXTERNAL_CONDITIONS: [&str; 12] = [
    "Hom", "Fix", "S1", "S2", "S3", "S4", "S5", "S6", "S7", "S8", "S9", "TC",
];

/// Data `(σ, l, m)` for an external product of a left loop `B` with a group
/// `H`. Tables hold indices into `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalSpec {
    b: FiniteLeftLoop,
    h: FiniteGroup,
    sigma: Vec<Permutation>,
    l: Vec<usize>,
    m: Vec<usize>,
}

impl ExternalSpec {
    /// Checks shapes only: `|H|` permutations of degree `|B|`, an `|B|×|B|`
    /// table `l` and an `|B|×|H|` table `m` with entries in `H`.
    pub fn new(
        b: FiniteLeftLoop,
        h: FiniteGroup,
        sigma: Vec<Permutation>,
        l: Vec<Vec<usize>>,
        m: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = b.order();
        let k = h.order();
        if sigma.len() != k {
            return Err(Error::InvalidArgument(format!(
                "sigma has {} entries, H has order {k}",
                sigma.len()
            )));
        }
        for s in &sigma {
            if s.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: s.degree(),
                });
            }
        }
        let l = flatten(l, n, n, k, "l")?;
        let m = flatten(m, n, k, k, "m")?;
        Ok(ExternalSpec { b, h, sigma, l, m })
    }

    pub fn b(&self) -> &FiniteLeftLoop {
        &self.b
    }

    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn sigma(&self, h: usize) -> &Permutation {
        &self.sigma[h]
    }

    pub fn l(&self, x: usize, y: usize) -> usize {
        self.l[x * self.b.order() + y]
    }

    pub fn m(&self, x: usize, h: usize) -> usize {
        self.m[x * self.h.order() + h]
    }

    pub fn l_rows(&self) -> Vec<Vec<usize>> {
        self.l.chunks(self.b.order()).map(|r| r.to_vec()).collect()
    }

    pub fn m_rows(&self) -> Vec<Vec<usize>> {
        self.m.chunks(self.h.order()).map(|r| r.to_vec()).collect()
    }

    pub fn set_l(&mut self, x: usize, y: usize, v: usize) -> Result<()> {
        let n = self.b.order();
        self.check_entry(x, y, n, v)?;
        self.l[x * n + y] = v;
        Ok(())
    }

    pub fn set_m(&mut self, x: usize, h: usize, v: usize) -> Result<()> {
        let k = self.h.order();
        self.check_entry(x, h, k, v)?;
        self.m[x * k + h] = v;
        Ok(())
    }

    fn check_entry(&self, row: usize, col: usize, cols: usize, v: usize) -> Result<()> {
        let n = self.b.order();
        let k = self.h.order();
        if row >= n || col >= cols || v >= k {
            return Err(Error::EntryOutOfRange {
                row,
                col,
                value: v,
            });
        }
        Ok(())
    }

    /// `(x,h)(y,k) = (x·σ_h(y), l(x,σ_h(y))·m(y,h)·h·k)`.
    pub fn multiply(&self, x: usize, h: usize, y: usize, k: usize) -> (usize, usize) {
        let g = &self.h;
        let sy = self.sigma[h].apply(y);
        let part = g.product(&[self.l(x, sy), self.m(y, h), h, k]);
        (self.b.mul(x, sy), part)
    }

    /// The closed-form inverse `(σ_{h⁻¹}(ρx), m(ρx,h⁻¹)·h⁻¹·l(x,ρx)⁻¹)`.
    pub fn inverse_formula(&self, x: usize, h: usize) -> (usize, usize) {
        let g = &self.h;
        let rx = self.b.left_divide(x, 0);
        let hi = g.inv(h);
        let part = g.product(&[self.m(rx, hi), hi, g.inv(self.l(x, rx))]);
        (self.sigma[hi].apply(rx), part)
    }
}

fn flatten(
    rows: Vec<Vec<usize>>,
    nrows: usize,
    ncols: usize,
    bound: usize,
    what: &str,
) -> Result<Vec<usize>> {
    if rows.len() != nrows {
        return Err(Error::InvalidArgument(format!(
            "{what} has {} rows, expected {nrows}",
            rows.len()
        )));
    }
    let mut flat = Vec::with_capacity(nrows * ncols);
    for (r, row) in rows.into_iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::NotSquare {
                row: r,
                len: row.len(),
                expected: ncols,
            });
        }
        for (c, &v) in row.iter().enumerate() {
            if v >= bound {
                return Err(Error::EntryOutOfRange {
                    row: r,
                    col: c,
                    value: v,
                });
            }
        }
        flat.extend(row);
    }
    Ok(flat)
}

/// Outcome of one condition: `None` when it holds, otherwise the
/// lexicographically first failing tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionOutcome {
    pub name: &'static str,
    pub witness: Option<String>,
}

impl ConditionOutcome {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalDiagnostics {
    pub conditions: Vec<ConditionOutcome>,
}

impl ExternalDiagnostics {
    pub fn get(&self, name: &str) -> Option<&ConditionOutcome> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn holds(&self, name: &str) -> bool {
        self.get(name).is_some_and(|c| c.holds())
    }

    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds())
    }

    pub fn first_failure(&self) -> Option<&ConditionOutcome> {
        self.conditions.iter().find(|c| !c.holds())
    }

    /// The normalizations under which TC and `S7 ∧ S8 ∧ S9` are compared.
    pub fn normalized(&self) -> bool {
        ["Hom", "Fix", "S3", "S4", "S6"].iter().all(|c| self.holds(c))
    }

    /// TC agrees with `S7 ∧ S8 ∧ S9`. Vacuously true when the normalizations
    /// fail.
    pub fn tc_consistent(&self) -> bool {
        !self.normalized()
            || self.holds("TC") == (self.holds("S7") && self.holds("S8") && self.holds("S9"))
    }
}

/// Precomputed images used by every condition.
struct Tables<'a> {
    spec: &'a ExternalSpec,
    n: usize,
    k: usize,
    // inner[(x*n + y)*n + z] = L(x,y)(z)
    inner: Vec<usize>,
    // mu[(y*k + h)*n + z] = μ_y(σ_h)(z)
    mu: Vec<usize>,
}

impl<'a> Tables<'a> {
    fn new(spec: &'a ExternalSpec) -> Self {
        let b = &spec.b;
        let n = b.order();
        let k = spec.h.order();
        let mut inner = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                inner.extend(b.inner_images(x, y));
            }
        }
        let mut mu = Vec::with_capacity(n * k * n);
        for y in 0..n {
            for s in &spec.sigma {
                mu.extend_from_slice(b.deviation(y, s).expect("degree checked").images());
            }
        }
        Tables {
            spec,
            n,
            k,
            inner,
            mu,
        }
    }

    fn inner(&self, x: usize, y: usize, z: usize) -> usize {
        self.inner[(x * self.n + y) * self.n + z]
    }

    fn mu(&self, y: usize, h: usize, z: usize) -> usize {
        self.mu[(y * self.k + h) * self.n + z]
    }

    fn sig(&self, h: usize, z: usize) -> usize {
        self.spec.sigma[h].apply(z)
    }

    fn hom(&self) -> Option<String> {
        let g = &self.spec.h;
        for h in 0..self.k {
            for k in 0..self.k {
                let hk = g.mul(h, k);
                if (0..self.n).any(|z| self.sig(hk, z) != self.sig(h, self.sig(k, z))) {
                    return Some(format!("(h,k)=({h},{k})"));
                }
            }
        }
        None
    }

    fn fix(&self) -> Option<String> {
        (0..self.k)
            .find(|&h| self.sig(h, 0) != 0)
            .map(|h| format!("h={h}"))
    }

    fn s1(&self) -> Option<String> {
        let s = self.spec;
        for x in 0..self.n {
            for y in 0..self.n {
                let lxy = s.l(x, y);
                if (0..self.n).any(|z| self.sig(lxy, z) != self.inner(x, y, z)) {
                    return Some(format!("(x,y)=({x},{y})"));
                }
            }
        }
        None
    }

    fn s2(&self) -> Option<String> {
        let s = self.spec;
        for x in 0..self.n {
            for h in 0..self.k {
                let mxh = s.m(x, h);
                if (0..self.n).any(|z| self.sig(mxh, z) != self.mu(x, h, z)) {
                    return Some(format!("(x,h)=({x},{h})"));
                }
            }
        }
        None
    }

    fn s3_to_s6(&self) -> [Option<String>; 4] {
        let s = self.spec;
        [
            (0..self.n).find(|&x| s.l(0, x) != 0).map(|x| format!("x={x}")),
            (0..self.n).find(|&x| s.m(x, 0) != 0).map(|x| format!("x={x}")),
            (0..self.n).find(|&x| s.l(x, 0) != 0).map(|x| format!("x={x}")),
            (0..self.k).find(|&h| s.m(0, h) != 0).map(|h| format!("h={h}")),
        ]
    }

    /// `l(x·y, L(x,y)z) m(z, l(x,y)) l(x,y) = l(x, y·z) l(y,z)`
    fn s7(&self) -> Option<String> {
        let s = self.spec;
        let b = &s.b;
        let g = &s.h;
        for x in 0..self.n {
            for y in 0..self.n {
                let lxy = s.l(x, y);
                let xy = b.mul(x, y);
                for z in 0..self.n {
                    let lhs = g.product(&[s.l(xy, self.inner(x, y, z)), s.m(z, lxy), lxy]);
                    let rhs = g.mul(s.l(x, b.mul(y, z)), s.l(y, z));
                    if lhs != rhs {
                        return Some(format!("(x,y,z)=({x},{y},{z})"));
                    }
                }
            }
        }
        None
    }

    /// `m(x,hk) = m(σ_k x, h) h m(x,k) h⁻¹`
    fn s8(&self) -> Option<String> {
        let s = self.spec;
        let g = &s.h;
        for x in 0..self.n {
            for h in 0..self.k {
                for k in 0..self.k {
                    let lhs = s.m(x, g.mul(h, k));
                    let rhs = g.product(&[s.m(self.sig(k, x), h), h, s.m(x, k), g.inv(h)]);
                    if lhs != rhs {
                        return Some(format!("(x,h,k)=({x},{h},{k})"));
                    }
                }
            }
        }
        None
    }

    /// `l(σ_h x, μ_x(σ_h)σ_h y) m(y, m(x,h)h) m(x,h) = m(x·y,h) h l(x,y) h⁻¹`
    fn s9(&self) -> Option<String> {
        let s = self.spec;
        let b = &s.b;
        let g = &s.h;
        for x in 0..self.n {
            for y in 0..self.n {
                for h in 0..self.k {
                    let mxh = s.m(x, h);
                    let moved = self.mu(x, h, self.sig(h, y));
                    let lhs = g.product(&[
                        s.l(self.sig(h, x), moved),
                        s.m(y, g.mul(mxh, h)),
                        mxh,
                    ]);
                    let rhs = g.product(&[s.m(b.mul(x, y), h), h, s.l(x, y), g.inv(h)]);
                    if lhs != rhs {
                        return Some(format!("(x,y,h)=({x},{y},{h})"));
                    }
                }
            }
        }
        None
    }

    /// The H-components of `((x,h)(y,k))(z,t)` and `(x,h)((y,k)(z,t))`
    /// after cancelling `kt` on the right, written out term by term.
    fn tc(&self) -> Option<String> {
        let s = self.spec;
        let b = &s.b;
        let g = &s.h;
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    for h in 0..self.k {
                        let hy = self.sig(h, y);
                        let xhy = b.mul(x, hy);
                        let lead = s.l(x, hy);
                        let myh = s.m(y, h);
                        let hinv = g.inv(h);
                        for k in 0..self.k {
                            let hk = g.mul(h, k);
                            let turned = self.mu(y, h, self.sig(hk, z));
                            let lhs = g.product(&[
                                s.l(xhy, self.inner(x, hy, turned)),
                                s.m(z, g.product(&[lead, myh, hk])),
                                lead,
                                myh,
                            ]);
                            let kz = self.sig(k, z);
                            let rhs = g.product(&[
                                s.l(x, b.mul(hy, turned)),
                                s.m(b.mul(y, kz), h),
                                h,
                                s.l(y, kz),
                                s.m(z, k),
                                hinv,
                            ]);
                            if lhs != rhs {
                                return Some(format!(
                                    "(x,y,z,h,k)=({x},{y},{z},{h},{k})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

/// Evaluates every condition over all tuples, TC included on its own.
pub fn validate_external(spec: &ExternalSpec) -> ExternalDiagnostics {
    let t = Tables::new(spec);
    let [s3, s4, s5, s6] = t.s3_to_s6();
    let witnesses = [
        t.hom(),
        t.fix(),
        t.s1(),
        t.s2(),
        s3,
        s4,
        s5,
        s6,
        t.s7(),
        t.s8(),
        t.s9(),
        t.tc(),
    ];
    ExternalDiagnostics {
        conditions: EXTERNAL_CONDITIONS
            .iter()
            .zip(witnesses)
            .map(|(&name, witness)| ConditionOutcome { name, witness })
            .collect(),
    }
}

/// The group `B ⋊ H` on pairs, `(x,h)` at index `x·|H| + h`.
pub fn external_product(spec: &ExternalSpec) -> Result<ProductGroup> {
    let diag = validate_external(spec);
    if let Some(bad) = diag.first_failure() {
        return Err(Error::ExternalCondition {
            condition: bad.name.to_string(),
            witness: bad.witness.clone().unwrap_or_default(),
        });
    }
    let n = spec.b.order();
    let k = spec.h.order();
    let size = n * k;
    let mut rows = Vec::with_capacity(size);
    for x in 0..n {
        for h in 0..k {
            let mut row = Vec::with_capacity(size);
            for y in 0..n {
                for j in 0..k {
                    let (u, v) = spec.multiply(x, h, y, j);
                    row.push(u * k + v);
                }
            }
            rows.push(row);
        }
    }
    Ok(ProductGroup {
        group: FiniteGroup::validate(rows)?,
        b_order: n,
        h_order: k,
    })
}

/// The epimorphism `(x,h) ↦ (x,σ_h)` onto the standard product with `σ(H)`.
#[derive(Clone, Debug)]
pub struct ExternalProjection {
    pub source: ProductGroup,
    pub target: ProductGroup,
    pub image_of_h: PermGroup,
    pub map: Vec<usize>,
    pub kernel: IndexSet,
}

pub fn external_projection(spec: &ExternalSpec) -> Result<ExternalProjection> {
    let source = external_product(spec)?;
    let n = spec.b.order();
    let image_of_h = PermGroup::from_elements(n, &spec.sigma)?;
    let std_spec = StdProductSpec::new(spec.b.clone(), image_of_h.clone())?;
    let target = standard_product(&std_spec)?;
    let k = spec.h.order();
    let kk = image_of_h.order();
    let map: Vec<usize> = (0..n * k)
        .map(|g| {
            let (x, h) = (g / k, g % k);
            x * kk + image_of_h.index_of(&spec.sigma[h]).expect("σ_h in σ(H)")
        })
        .collect();
    if let Some((a, b)) = source.group.homomorphism_witness(&target.group, &map) {
        return Err(Error::InvalidArgument(format!(
            "projection is not a homomorphism at ({a},{b})"
        )));
    }
    let kernel = IndexSet::new((0..n * k).filter(|&g| map[g] == 0));
    Ok(ExternalProjection {
        source,
        target,
        image_of_h,
        map,
        kernel,
    })
}

/// `F_p² ⋊ F_p` with trivial action, trivial `m` and
/// `l((x₁,x₂),(y₁,y₂)) = (x₁y₂ − x₂y₁)/2`; `(x₁,x₂)` is index `x₁·p + x₂`.
pub fn heisenberg_spec(p: usize) -> Result<ExternalSpec> {
    if p < 3 || !(2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d)) {
        return Err(Error::InvalidArgument(format!(
            "{p} is not an odd prime"
        )));
    }
    let n = p * p;
    let half = p.div_ceil(2);
    let plane = crate::fingroup::direct_product(&cyclic(p), &cyclic(p));
    let b = crate::finloop::loop_of_group(&plane);
    let h = cyclic(p);
    let sigma = vec![Permutation::identity(n); p];
    let l = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let (x1, x2) = (x / p, x % p);
                    let (y1, y2) = (y / p, y % p);
                    let det = (x1 * y2 + p * p - x2 * y1) % p;
                    det * half % p
                })
                .collect()
        })
        .collect();
    let m = vec![vec![0; p]; n];
    ExternalSpec::new(b, h, sigma, l, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingroup::{are_isomorphic, direct_product};
    use crate::finloop::loop_of_group;

    fn direct_spec() -> ExternalSpec {
        let b = loop_of_group(&cyclic(3));
        let h = cyclic(2);
        ExternalSpec::new(
            b,
            h,
            vec![Permutation::identity(3); 2],
            vec![vec![0; 3]; 3],
            vec![vec![0; 2]; 3],
        )
        .unwrap()
    }

    #[test]
    fn shape_errors() {
        let b = loop_of_group(&cyclic(3));
        let h = cyclic(2);
        assert!(ExternalSpec::new(
            b.clone(),
            h.clone(),
            vec![Permutation::identity(3)],
            vec![vec![0; 3]; 3],
            vec![vec![0; 2]; 3]
        )
        .is_err());
        assert!(ExternalSpec::new(
            b,
            h,
            vec![Permutation::identity(3); 2],
            vec![vec![0; 3]; 3],
            vec![vec![0; 2]; 2]
        )
        .is_err());
    }

    #[test]
    fn trivial_data_gives_direct_product() {
        let spec = direct_spec();
        assert!(validate_external(&spec).all_hold());
        let g = external_product(&spec).unwrap();
        let expected = direct_product(&cyclic(3), &cyclic(2));
        assert_eq!(g.group.flat_table(), expected.flat_table());
        assert!(g.factorization_holds());
    }

    #[test]
    fn classical_action_passes() {
        // Z3 with H = Z2 acting by inversion
        let b = loop_of_group(&cyclic(3));
        let inv = Permutation::new(vec![0, 2, 1]).unwrap();
        let spec = ExternalSpec::new(
            b,
            cyclic(2),
            vec![Permutation::identity(3), inv],
            vec![vec![0; 3]; 3],
            vec![vec![0; 2]; 3],
        )
        .unwrap();
        let g = external_product(&spec).unwrap();
        assert!(!g.group.is_abelian());
        assert_eq!(g.group.order(), 6);
    }

    #[test]
    fn heisenberg_formula() {
        let spec = heisenberg_spec(3).unwrap();
        let diag = validate_external(&spec);
        assert!(diag.all_hold(), "{diag:?}");
        let g = external_product(&spec).unwrap();
        assert_eq!(g.group.order(), 27);
        // (x1,x2,x3)(y1,y2,y3) = (x1+y1, x2+y2, x3+y3+(x1y2-x2y1)/2), with 1/2 = 2
        for a in 0..27 {
            for c in 0..27 {
                let (x1, x2, x3) = (a / 9, a / 3 % 3, a % 3);
                let (y1, y2, y3) = (c / 9, c / 3 % 3, c % 3);
                let z3 = (x3 + y3 + 2 * (x1 * y2 + 9 - x2 * y1)) % 3;
                let expect = (x1 + y1) % 3 * 9 + (x2 + y2) % 3 * 3 + z3;
                assert_eq!(g.group.mul(a, c), expect);
            }
        }
        assert!(heisenberg_spec(4).is_err());
        assert!(heisenberg_spec(2).is_err());
    }

    #[test]
    fn heisenberg_projection_kernel() {
        let spec = heisenberg_spec(3).unwrap();
        let proj = external_projection(&spec).unwrap();
        assert_eq!(proj.image_of_h.order(), 1);
        assert_eq!(proj.kernel, IndexSet::new(0..3));
        assert_eq!(proj.target.group.order(), 9);
        assert!(are_isomorphic(
            &proj.target.group,
            &direct_product(&cyclic(3), &cyclic(3))
        )
        .is_some());
    }

    #[test]
    fn injective_sigma_projection_is_isomorphism() {
        let b = loop_of_group(&cyclic(3));
        let inv = Permutation::new(vec![0, 2, 1]).unwrap();
        let spec = ExternalSpec::new(
            b,
            cyclic(2),
            vec![Permutation::identity(3), inv],
            vec![vec![0; 3]; 3],
            vec![vec![0; 2]; 3],
        )
        .unwrap();
        let proj = external_projection(&spec).unwrap();
        assert_eq!(proj.kernel.len(), 1);
        assert!(proj.source.group.is_isomorphism(&proj.target.group, &proj.map));
    }

    #[test]
    fn corrupted_l_reports_s1_or_s7() {
        let mut spec = heisenberg_spec(3).unwrap();
        let old = spec.l(1, 3);
        spec.set_l(1, 3, (old + 1) % 3).unwrap();
        let diag = validate_external(&spec);
        assert!(!diag.holds("S7") || !diag.holds("S1") || !diag.holds("TC"));
        assert!(diag.tc_consistent());
        match external_product(&spec) {
            Err(Error::ExternalCondition { condition, witness }) => {
                assert!(!condition.is_empty() && !witness.is_empty())
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inverse_formulas_match() {
        for spec in [heisenberg_spec(3).unwrap(), direct_spec()] {
            let g = external_product(&spec).unwrap();
            let k = spec.h().order();
            for x in 0..spec.b().order() {
                for h in 0..k {
                    let (u, v) = spec.inverse_formula(x, h);
                    assert_eq!(g.group.inv(x * k + h), u * k + v);
                }
            }
        }
    }
}
