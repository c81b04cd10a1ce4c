use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

const SINGULAR: f64 = 1e-12;
const CHECK: f64 = 1e-10;

/// A 2×2 complex matrix, row major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        let r = |v| Complex64::new(v, 0.0);
        Mat2::new(r(a), r(b), r(c), r(d))
    }

    pub fn identity() -> Self {
        Mat2::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn diag(a: f64, d: f64) -> Self {
        Mat2::real(a, 0.0, 0.0, d)
    }

    pub fn scale(self, s: Complex64) -> Self {
        let m = self.0;
        Mat2::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn adjoint(self) -> Self {
        let m = self.0;
        Mat2::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn det(self) -> Complex64 {
        let m = self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn inverse(self) -> Result<Self> {
        let det = self.det();
        if det.norm() <= SINGULAR {
            return Err(Error::Numerical(format!("singular matrix, det {det}")));
        }
        let m = self.0;
        Ok(Mat2::new(m[1][1], -m[0][1], -m[1][0], m[0][0]).scale(1.0 / det))
    }

    /// Largest entry modulus.
    pub fn sup_norm(self) -> f64 {
        self.0.iter().flatten().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn distance(self, other: Mat2) -> f64 {
        (self - other).sup_norm()
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2::new(a[0][0] + b[0][0], a[0][1] + b[0][1], a[1][0] + b[1][0], a[1][1] + b[1][1])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        self + o.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let (a, b) = (self.0, o.0);
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

/// A positive definite Hermitian 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pdh2(Mat2);

impl Pdh2 {
    pub fn new(m: Mat2) -> Result<Self> {
        if m.distance(m.adjoint()) > SINGULAR * m.sup_norm().max(1.0) {
            return Err(Error::Numerical("matrix is not Hermitian".into()));
        }
        let (lo, _) = eigenvalues(m);
        if lo.is_nan() || lo <= 0.0 {
            return Err(Error::Numerical(format!("smallest eigenvalue {lo} is not positive")));
        }
        Ok(Pdh2(m))
    }

    pub fn identity() -> Self {
        Pdh2(Mat2::identity())
    }

    pub fn matrix(self) -> Mat2 {
        self.0
    }

    pub fn inverse(self) -> Pdh2 {
        Pdh2(self.0.inverse().expect("positive definite"))
    }
}

/// Eigenvalues of a Hermitian matrix, smallest first.
fn eigenvalues(m: Mat2) -> (f64, f64) {
    let half = m.trace().re / 2.0;
    let det = m.det().re;
    let hi = half + (half * half - det).max(0.0).sqrt();
    if hi <= 0.0 {
        return (hi, hi);
    }
    (det / hi, hi)
}

/// Principal square root. For a 2×2 positive matrix with `s = √det` and
/// `t = √(tr + 2s)` it is `(A + sI)/t`.
pub fn pd_sqrt(a: Pdh2) -> Result<Pdh2> {
    let m = a.0;
    let (lo, _) = eigenvalues(m);
    if lo <= SINGULAR {
        return Err(Error::Numerical(format!("smallest eigenvalue {lo} is not positive")));
    }
    let s = m.det().re.sqrt();
    let t = (m.trace().re + 2.0 * s).sqrt();
    let root = (m + Mat2::identity().scale(s.into())).scale((1.0 / t).into());
    // keep exact Hermitian symmetry
    Ok(Pdh2(hermitian_part(root)))
}

fn hermitian_part(m: Mat2) -> Mat2 {
    (m + m.adjoint()).scale(0.5.into())
}

fn is_unitary(u: Mat2) -> bool {
    (u * u.adjoint()).distance(Mat2::identity()) <= CHECK
}

/// Polar factors of an invertible `M = PU` without forming `MM*`.
///
/// With `d = det M`, `P + |d|P⁻¹ = tr(P)·I` for 2×2 positive `P`, so
/// `N = M + (|d|/d̄)·adj(M)* = tr(P)·U` and `|det N| = tr(P)²`.
fn polar_factors(m: Mat2) -> Result<(Mat2, Mat2)> {
    let d = m.det();
    if !(d.norm() > 0.0 && d.norm().is_finite()) {
        return Err(Error::Numerical("matrix is singular".into()));
    }
    let [[a, b], [c, e]] = m.0;
    let adj_star = Mat2::new(e, -b, -c, a).adjoint();
    let n = m + adj_star.scale(d.norm() / d.conj());
    let t = n.det().norm().sqrt();
    let u = n.scale((1.0 / t).into());
    let p = hermitian_part(m * u.adjoint());
    Ok((p, u))
}

/// `M = AU` with `A = (MM*)^{1/2}` and `U = A⁻¹M` unitary.
pub fn polar_decompose(m: Mat2) -> Result<(Pdh2, Mat2)> {
    if m.det().norm() <= SINGULAR {
        return Err(Error::Numerical("matrix is singular".into()));
    }
    let (a, u) = polar_factors(m)?;
    let scale = m.sup_norm().max(1.0);
    if !is_unitary(u) || (a * u).distance(m) > CHECK * scale {
        return Err(Error::Numerical("polar factors lost accuracy".into()));
    }
    Ok((Pdh2::new(a)?, u))
}

/// `A ⊙ B = (AB²A)^{1/2}`, taken as the positive polar factor of `AB`
/// since `(AB)(AB)* = AB²A`.
pub fn polar_op(a: Pdh2, b: Pdh2) -> Result<Pdh2> {
    Pdh2::new(polar_factors(a.0 * b.0)?.0)
}

/// `(AB²A)^{-1/2}AB`, the unitary with `(A ⊙ B)·l(A,B) = AB`.
pub fn polar_l(a: Pdh2, b: Pdh2) -> Result<Mat2> {
    let l = polar_factors(a.0 * b.0)?.1;
    if !is_unitary(l) {
        return Err(Error::Numerical("l(A,B) is not unitary".into()));
    }
    Ok(l)
}

/// `τ(AU) = A⁻¹U` through the polar factors.
pub fn polar_tau(m: Mat2) -> Result<Mat2> {
    let (a, u) = polar_decompose(m)?;
    Ok(a.inverse().0 * u)
}

/// `XX* + εI` for a random complex `X` with entries in the unit square.
pub fn random_pdh2<R: Rng + ?Sized>(rng: &mut R, eps: f64) -> Pdh2 {
    let x = random_matrix(rng);
    Pdh2::new(hermitian_part(x * x.adjoint() + Mat2::identity().scale(eps.into())))
        .expect("positive by construction")
}

pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    Mat2::new(c(), c(), c(), c())
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PolarResiduals {
    pub bol: f64,
    pub aip: f64,
    pub bruck1: f64,
    pub lip: f64,
    pub lap: f64,
    /// `(A ⊙ B)·l(A,B)` against `AB`.
    pub factorization: f64,
    /// `l(A,B)l(A,B)*` against `I`.
    pub unitarity: f64,
    /// `A ⊙ A` against `A²`.
    pub squares: f64,
    /// `τ(M)` from the polar factors against `(M*)⁻¹`.
    pub tau: f64,
    /// Samples whose intermediate matrices were too close to singular.
    pub failures: usize,
}

impl PolarResiduals {
    /// The largest loop-identity residual.
    pub fn max_identity(&self) -> f64 {
        [self.bol, self.aip, self.bruck1, self.lip, self.lap, self.factorization, self.squares]
            .into_iter()
            .fold(0.0, f64::max)
    }

    fn merge(self, o: PolarResiduals) -> PolarResiduals {
        PolarResiduals {
            bol: self.bol.max(o.bol),
            aip: self.aip.max(o.aip),
            bruck1: self.bruck1.max(o.bruck1),
            lip: self.lip.max(o.lip),
            lap: self.lap.max(o.lap),
            factorization: self.factorization.max(o.factorization),
            unitarity: self.unitarity.max(o.unitarity),
            squares: self.squares.max(o.squares),
            tau: self.tau.max(o.tau),
            failures: self.failures + o.failures,
        }
    }
}

/// Relative distance, so that residuals do not scale with the entries.
fn rel(a: Mat2, b: Mat2) -> f64 {
    a.distance(b) / a.sup_norm().max(b.sup_norm()).max(1.0)
}

fn sample_residuals(a: Pdh2, b: Pdh2, c: Pdh2, m: Mat2) -> Result<PolarResiduals> {
    let op = polar_op;
    let ab = op(a, b)?;
    let l = polar_l(a, b)?;
    let (ai, bi) = (a.inverse(), b.inverse());
    Ok(PolarResiduals {
        bol: rel(
            op(a, op(b, op(a, c)?)?)?.0,
            op(op(a, op(b, a)?)?, c)?.0,
        ),
        aip: rel(ab.inverse().0, op(ai, bi)?.0),
        bruck1: rel(
            op(a, op(b, op(b, op(a, c)?)?)?)?.0,
            op(ab, op(ab, c)?)?.0,
        ),
        lip: rel(op(ai, ab)?.0, b.0),
        lap: rel(op(a, op(a, b)?)?.0, op(op(a, a)?, b)?.0),
        factorization: rel(ab.0 * l, a.0 * b.0),
        unitarity: (l * l.adjoint()).distance(Mat2::identity()),
        squares: rel(op(a, a)?.0, a.0 * a.0),
        tau: rel(polar_tau(m)?, m.adjoint().inverse()?),
        failures: 0,
    })
}

/// Residuals on `count` seeded triples of positive matrices, plus one random
/// invertible matrix per triple for `τ`.
pub fn polar_identity_residuals(count: usize, seed: u64, eps: f64) -> PolarResiduals {
    (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let a = random_pdh2(&mut rng, eps);
            let b = random_pdh2(&mut rng, eps);
            let c = random_pdh2(&mut rng, eps);
            let m = random_matrix(&mut rng);
            sample_residuals(a, b, c, m).unwrap_or(PolarResiduals {
                failures: 1,
                ..Default::default()
            })
        })
        .reduce(PolarResiduals::default, PolarResiduals::merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_roots() {
        let i = Pdh2::identity();
        assert_eq!(pd_sqrt(i).unwrap(), i);
        let r = pd_sqrt(Pdh2::new(Mat2::diag(4.0, 1.0)).unwrap()).unwrap();
        assert!(r.matrix().distance(Mat2::diag(2.0, 1.0)) < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let a = random_pdh2(&mut rng, 1e-3);
            let r = pd_sqrt(a).unwrap().matrix();
            assert!(rel(r * r, a.matrix()) < 1e-10);
        }
        assert!(Pdh2::new(Mat2::diag(1.0, 0.0)).is_err());
        assert!(pd_sqrt(Pdh2::new(Mat2::diag(1.0, 1e-13)).unwrap()).is_err());
        assert!(Pdh2::new(Mat2::real(1.0, 2.0, 0.0, 1.0)).is_err());
    }

    #[test]
    fn polar_examples() {
        let (a, u) = polar_decompose(Mat2::diag(2.0, 1.0)).unwrap();
        assert!(a.matrix().distance(Mat2::diag(2.0, 1.0)) < 1e-12);
        assert!(u.distance(Mat2::identity()) < 1e-12);
        let rot = Mat2::real(0.6, -0.8, 0.8, 0.6);
        let (a, u) = polar_decompose(rot).unwrap();
        assert!(a.matrix().distance(Mat2::identity()) < 1e-12);
        assert!(u.distance(rot) < 1e-12);
        assert!(polar_decompose(Mat2::real(1.0, 2.0, 2.0, 4.0)).is_err());
    }

    #[test]
    fn operation_examples() {
        let b = Pdh2::new(Mat2::real(2.0, 0.5, 0.5, 1.0)).unwrap();
        let r = polar_op(Pdh2::identity(), b).unwrap();
        assert!(r.matrix().distance(b.matrix()) < 1e-12);
        let a = Pdh2::new(Mat2::diag(3.0, 0.5)).unwrap();
        let d = Pdh2::new(Mat2::diag(2.0, 4.0)).unwrap();
        assert!(polar_op(a, d).unwrap().matrix().distance(Mat2::diag(6.0, 2.0)) < 1e-12);
        assert!(polar_l(a, d).unwrap().distance(Mat2::identity()) < 1e-12);
    }

    #[test]
    fn polar_factor_matches_square_root_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let a = random_pdh2(&mut rng, 1.0);
            let b = random_pdh2(&mut rng, 1.0);
            let (am, bm) = (a.matrix(), b.matrix());
            let direct = pd_sqrt(Pdh2::new(hermitian_part(am * bm * bm * am)).unwrap()).unwrap();
            assert!(rel(direct.matrix(), polar_op(a, b).unwrap().matrix()) < 1e-12);
        }
    }

    #[test]
    fn residuals_small() {
        let r = polar_identity_residuals(200, 9, 1e-3);
        assert_eq!(r.failures, 0);
        assert!(r.max_identity() < 1e-8 && r.tau < 1e-10, "{r:?}");

    }
}
