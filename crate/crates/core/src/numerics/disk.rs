use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Points this close to the unit circle are rejected.
pub const BOUNDARY_GUARD: f64 = 1e-12;

/// A point of the open unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(z: Complex64) -> Result<Self> {
        if !(z.re.is_finite() && z.im.is_finite()) || z.norm() >= 1.0 - BOUNDARY_GUARD {
            return Err(Error::Numerical(format!("{z} is not inside the disk")));
        }
        Ok(DiskPoint(z))
    }

    pub fn from_polar(r: f64, theta: f64) -> Result<Self> {
        DiskPoint::new(Complex64::from_polar(r, theta))
    }

    pub const ORIGIN: DiskPoint = DiskPoint(Complex64::new(0.0, 0.0));

    pub fn z(self) -> Complex64 {
        self.0
    }
}

fn mobius(x: Complex64, y: Complex64) -> Complex64 {
    let den = 1.0 + x.conj() * y;
    assert!(den.norm() > BOUNDARY_GUARD, "denominator vanishes for interior points");
    (x + y) / den
}

/// `(x + y)/(1 + x̄y)`.
pub fn disk_add(x: DiskPoint, y: DiskPoint) -> DiskPoint {
    DiskPoint(mobius(x.0, y.0))
}

/// The `u` with `x ⊕ u = w`, by inverting the Möbius map in `u`.
pub fn disk_left_divide(x: DiskPoint, w: DiskPoint) -> DiskPoint {
    let den = 1.0 - x.0.conj() * w.0;
    assert!(den.norm() > BOUNDARY_GUARD, "denominator vanishes for interior points");
    DiskPoint((w.0 - x.0) / den)
}

/// `(1 + xȳ)/(1 + x̄y)`, the rotation by which `L(x,y)` acts.
pub fn disk_gyr(x: DiskPoint, y: DiskPoint) -> Complex64 {
    (1.0 + x.0 * y.0.conj()) / (1.0 + x.0.conj() * y.0)
}

/// `L_{x⊕y}⁻¹ L_x L_y` applied to `z`, from the operation alone.
pub fn disk_inner_map(x: DiskPoint, y: DiskPoint, z: DiskPoint) -> DiskPoint {
    disk_left_divide(disk_add(x, y), disk_add(x, disk_add(y, z)))
}

fn right_inverse(x: DiskPoint) -> DiskPoint {
    disk_left_divide(x, DiskPoint::ORIGIN)
}

/// Largest deviation seen for each identity, in modulus.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DiskResiduals {
    pub bol: f64,
    pub aip: f64,
    pub bruck1: f64,
    pub lip: f64,
    pub lap: f64,
    /// `disk_gyr(x,y)·z` against the inner map.
    pub gyr: f64,
    /// `|disk_gyr| − 1`.
    pub unimodular: f64,
    /// `|x ⊕ y|` closest to 1.
    pub max_modulus: f64,
}

impl DiskResiduals {
    /// The largest identity residual.
    pub fn max(&self) -> f64 {
        [self.bol, self.aip, self.bruck1, self.lip, self.lap, self.gyr]
            .into_iter()
            .fold(0.0, f64::max)
    }

    fn merge(self, o: DiskResiduals) -> DiskResiduals {
        DiskResiduals {
            bol: self.bol.max(o.bol),
            aip: self.aip.max(o.aip),
            bruck1: self.bruck1.max(o.bruck1),
            lip: self.lip.max(o.lip),
            lap: self.lap.max(o.lap),
            gyr: self.gyr.max(o.gyr),
            unimodular: self.unimodular.max(o.unimodular),
            max_modulus: self.max_modulus.max(o.max_modulus),
        }
    }
}

fn triple_residuals(x: DiskPoint, y: DiskPoint, z: DiskPoint) -> DiskResiduals {
    let add = disk_add;
    let d = |a: DiskPoint, b: DiskPoint| (a.0 - b.0).norm();
    let xy = add(x, y);
    let g = disk_gyr(x, y);
    DiskResiduals {
        bol: d(add(x, add(y, add(x, z))), add(add(x, add(y, x)), z)),
        aip: d(right_inverse(xy), add(right_inverse(x), right_inverse(y))),
        bruck1: d(add(x, add(y, add(y, add(x, z)))), add(xy, add(xy, z))),
        lip: d(add(right_inverse(x), add(x, y)), y),
        lap: d(add(x, add(x, y)), add(add(x, x), y)),
        gyr: (g * z.0 - disk_inner_map(x, y, z).0).norm(),
        unimodular: (g.norm() - 1.0).abs(),
        max_modulus: xy.0.norm(),
    }
}

/// Residuals over the cyclic triples `(sᵢ, sᵢ₊₁, sᵢ₊₂)` and the diagonal
/// triples `(sᵢ, sᵢ, sᵢ₊₁)` of the samples.
pub fn disk_identity_residuals(samples: &[DiskPoint]) -> DiskResiduals {
    let n = samples.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let (x, y, z) = (samples[i], samples[(i + 1) % n], samples[(i + 2) % n]);
            triple_residuals(x, y, z).merge(triple_residuals(x, x, y))
        })
        .reduce(DiskResiduals::default, DiskResiduals::merge)
}

/// Points uniform in area on the disk of radius `max_radius`, one seed
/// stream per index.
pub fn disk_samples(count: usize, seed: u64, max_radius: f64) -> Vec<DiskPoint> {
    (0..count as u64)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let r2: f64 = rng.gen();
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            DiskPoint::from_polar(max_radius * r2.sqrt(), theta).expect("inside the disk")
        })
        .collect()
}

/// Points on the circle of radius `radius`.
pub fn circle_samples(count: usize, seed: u64, radius: f64) -> Vec<DiskPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            DiskPoint::from_polar(radius, theta).expect("inside the disk")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn examples() {
        let y = p(0.2, -0.7);
        assert_eq!(disk_add(DiskPoint::ORIGIN, y), y);
        assert!((disk_add(p(0.5, 0.0), p(0.5, 0.0)).z() - 0.8).norm() < 1e-15);
        let x = p(0.3, 0.4);
        assert!(disk_add(x, p(-0.3, -0.4)).z().norm() < 1e-12);
        assert_eq!(disk_gyr(x, DiskPoint::ORIGIN), Complex64::new(1.0, 0.0));
        assert!((disk_gyr(x, x) - 1.0).norm() < 1e-15);
        let g = disk_gyr(p(0.5, 0.0), p(0.0, 0.3));
        assert!((g - Complex64::new(0.955990, -0.293398)).norm() < 1e-6);
    }

    #[test]
    fn rejects_outside() {
        assert!(DiskPoint::new(Complex64::new(1.0, 0.0)).is_err());
        assert!(DiskPoint::new(Complex64::new(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn origin_only_gives_zero() {
        let r = disk_identity_residuals(&[DiskPoint::ORIGIN]);
        assert_eq!(r.max(), 0.0);
    }

    #[test]
    fn left_division_inverts() {
        for s in disk_samples(200, 3, 1.0).windows(2) {
            let w = disk_add(s[0], disk_left_divide(s[0], s[1]));
            assert!((w.z() - s[1].z()).norm() < 1e-10);
        }
    }

    #[test]
    fn residuals_small() {
        let r = disk_identity_residuals(&disk_samples(1000, 11, super::super::INTERIOR_RADIUS));
        assert!(r.max() < 1e-9, "{r:?}");
        assert!(r.unimodular < 1e-12 && r.max_modulus < 1.0);
        let r = disk_identity_residuals(&circle_samples(1000, 11, 0.999));
        assert!(r.max() < 1e-7, "{r:?}");
    }
}
