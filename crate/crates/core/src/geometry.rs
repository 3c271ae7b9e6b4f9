//! Reduced-unit conventions and the two-qubit donor geometry.
//!
//! Lengths are measured in Bohr radii of the substrate and time in Bohr radii
//! over the sound speed, so the reduced sound speed is 1 and the temperature
//! enters only through the dimensionless ratio `tau`.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::kernel::Spin;
use crate::{Error, Result};

/// Donor-pair distances closer than this are merged, in Bohr radii.
pub const DISTANCE_DEDUP_TOL: f64 = 1e-9;

/// A 3-vector in units of the Bohr radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl From<[f64; 3]> for Vec3 {
    fn from(v: [f64; 3]) -> Self {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<Vec3> for [f64; 3] {
    fn from(v: Vec3) -> Self {
        [v.x, v.y, v.z]
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, rhs: f64) -> Vec3 {
        Vec3::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

/// Dimensionless substrate temperature `tau = T / T_s`.
///
/// Every microscopic substrate constant (mass density, deformation constant,
/// sound speed) enters the dynamics only through this single ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubstrateContext {
    tau: f64,
}

impl SubstrateContext {
    pub fn new(tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau < 0.0 {
            return Err(Error::InvalidInput(format!(
                "temperature ratio tau must be finite and non-negative, got {tau}"
            )));
        }
        Ok(Self { tau })
    }

    pub fn tau(self) -> f64 {
        self.tau
    }
}

/// Positions and inter-donor vectors of the two charge qubits.
///
/// Qubit `b` occupies the donor sites `r_b - d_b/2` (its minus site) and
/// `r_b + d_b/2` (its plus site). Both inter-donor vectors must be non-zero
/// and the qubit separation must exceed either inter-donor distance, so
/// cross tunneling between the qubits can be neglected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitGeometry {
    r1: Vec3,
    r2: Vec3,
    d1: Vec3,
    d2: Vec3,
}

impl QubitGeometry {
    pub fn new(r1: Vec3, r2: Vec3, d1: Vec3, d2: Vec3) -> Result<Self> {
        for (name, v) in [("r1", r1), ("r2", r2), ("d1", d1), ("d2", d2)] {
            if !v.is_finite() {
                return Err(Error::InvalidGeometry(format!("{name} has a non-finite component")));
            }
        }
        if d1.norm() == 0.0 || d2.norm() == 0.0 {
            return Err(Error::InvalidGeometry(
                "inter-donor vectors d1, d2 must have non-zero length".into(),
            ));
        }
        let sep = (r1 - r2).norm();
        let d_max = d1.norm().max(d2.norm());
        if sep <= d_max {
            return Err(Error::InvalidGeometry(format!(
                "qubit separation |r1 - r2| = {sep} must exceed the largest inter-donor \
                 distance {d_max} to suppress cross tunneling"
            )));
        }
        Ok(Self { r1, r2, d1, d2 })
    }

    pub fn r1(&self) -> Vec3 {
        self.r1
    }

    pub fn r2(&self) -> Vec3 {
        self.r2
    }

    pub fn d1(&self) -> Vec3 {
        self.d1
    }

    pub fn d2(&self) -> Vec3 {
        self.d2
    }

    /// Donor site of qubit `b` (1 or 2) with localization label `m`.
    pub(crate) fn site(&self, qubit: usize, m: Spin) -> Vec3 {
        let (r, d) = if qubit == 1 { (self.r1, self.d1) } else { (self.r2, self.d2) };
        r + d * m.value()
    }

    /// The four donor sites in fixed order: qubit-1 minus site, qubit-1 plus
    /// site, qubit-2 minus site, qubit-2 plus site.
    pub fn donor_positions(&self) -> [Vec3; 4] {
        [
            self.site(1, Spin::Minus),
            self.site(1, Spin::Plus),
            self.site(2, Spin::Minus),
            self.site(2, Spin::Plus),
        ]
    }

    /// Distinct pairwise donor distances, self-distance included.
    pub fn distance_set(&self) -> DonorDistanceSet {
        DonorDistanceSet::from_sites(&self.donor_positions())
    }
}

impl Default for QubitGeometry {
    /// Default configuration: qubits 20 Bohr radii apart along x, both
    /// inter-donor distances 10 Bohr radii, `d2` rotated 45 degrees from
    /// `d1` in the xy plane.
    fn default() -> Self {
        let half_sqrt2 = 10.0 * std::f64::consts::FRAC_1_SQRT_2;
        Self {
            r1: Vec3::new(0.0, 0.0, 0.0),
            r2: Vec3::new(20.0, 0.0, 0.0),
            d1: Vec3::new(10.0, 0.0, 0.0),
            d2: Vec3::new(half_sqrt2, half_sqrt2, 0.0),
        }
    }
}

/// Sorted, deduplicated donor-pair distances.
///
/// These are the radii where the inter-donor rate has derivative kinks in
/// time, so they double as mandatory quadrature breakpoints. Zero (the
/// self-distance of every site) is always the first entry.
#[derive(Debug, Clone, PartialEq)]
pub struct DonorDistanceSet {
    values: Vec<f64>,
}

impl DonorDistanceSet {
    fn from_sites(sites: &[Vec3; 4]) -> Self {
        let mut values = vec![0.0];
        for i in 0..4 {
            for j in (i + 1)..4 {
                values.push((sites[i] - sites[j]).norm());
            }
        }
        values.sort_by(f64::total_cmp);
        values.dedup_by(|a, b| (*a - *b).abs() <= DISTANCE_DEDUP_TOL);
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max(&self) -> f64 {
        *self.values.last().expect("distance set always holds 0")
    }
}
