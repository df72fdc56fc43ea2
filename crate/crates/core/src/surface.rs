//! Numerical model of a polarized surface: Picard lattice, intersection form,
//! canonical class, ampleness on the builtin surfaces and the adjunction genus.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, serde_qvec, Q};

/// A rational divisor class written in the lattice basis of its surface.
///
/// On the plane the basis is the line class `H`; on a Hirzebruch surface it
/// is `(M, F)` with `M^2 = -m` and `F` a fiber.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(#[serde(with = "serde_qvec")] pub Vec<Q>);

impl DivisorClass {
    pub fn new(coefficients: Vec<Q>) -> Self {
        DivisorClass(coefficients)
    }

    pub fn from_ints(coefficients: &[i64]) -> Self {
        DivisorClass(coefficients.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![Q::zero(); rank])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.0
    }

    pub fn scale(&self, k: &Q) -> Self {
        DivisorClass(self.0.iter().map(|c| c * k).collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Q, &Q) -> Q) -> Self {
        assert_eq!(self.len(), other.len(), "divisor classes of different rank");
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }
}

impl Index<usize> for DivisorClass {
    type Output = Q;
    fn index(&self, i: usize) -> &Q {
        &self.0[i]
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SurfaceKind {
    #[serde(rename = "p2")]
    ProjectivePlane,
    Hirzebruch { m: u32 },
    Custom,
}

/// Picard lattice with intersection form, canonical class and `chi(O_X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    kind: SurfaceKind,
    intersection: Vec<Vec<i64>>,
    canonical: DivisorClass,
    chi_structure_sheaf: i64,
}

impl SurfaceModel {
    /// The projective plane with basis `H` (a line).
    pub fn p2() -> Self {
        SurfaceModel {
            kind: SurfaceKind::ProjectivePlane,
            intersection: vec![vec![1]],
            canonical: DivisorClass::from_ints(&[-3]),
            chi_structure_sheaf: 1,
        }
    }

    /// The Hirzebruch surface `F_m` with basis `(M, F)`.
    pub fn hirzebruch(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::WrongSurface {
                expected: "a Hirzebruch parameter m >= 1",
            });
        }
        let m = i64::from(m);
        Ok(SurfaceModel {
            kind: SurfaceKind::Hirzebruch { m: m as u32 },
            intersection: vec![vec![-m, 1], vec![1, 0]],
            canonical: DivisorClass::from_ints(&[-2, -(m + 2)]),
            chi_structure_sheaf: 1,
        })
    }

    /// A surface given only by lattice data. Ampleness is not decidable on it.
    pub fn custom(intersection: Vec<Vec<i64>>, canonical: DivisorClass, chi: i64) -> Result<Self> {
        let n = intersection.len();
        if n == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for row in &intersection {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
        }
        if (0..n).any(|i| (0..i).any(|j| intersection[i][j] != intersection[j][i])) {
            return Err(Error::AsymmetricMatrix);
        }
        if canonical.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: canonical.len(),
            });
        }
        Ok(SurfaceModel {
            kind: SurfaceKind::Custom,
            intersection,
            canonical,
            chi_structure_sheaf: chi,
        })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn picard_rank(&self) -> usize {
        self.intersection.len()
    }

    pub fn intersection_matrix(&self) -> &[Vec<i64>] {
        &self.intersection
    }

    pub fn canonical_class(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn chi_structure_sheaf(&self) -> i64 {
        self.chi_structure_sheaf
    }

    pub fn is_p2(&self) -> bool {
        self.kind == SurfaceKind::ProjectivePlane
    }

    pub fn hirzebruch_parameter(&self) -> Option<u32> {
        match self.kind {
            SurfaceKind::Hirzebruch { m } => Some(m),
            _ => None,
        }
    }

    pub fn zero_class(&self) -> DivisorClass {
        DivisorClass::zero(self.picard_rank())
    }

    pub fn check(&self, c: &DivisorClass) -> Result<()> {
        if c.len() != self.picard_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.picard_rank(),
                found: c.len(),
            });
        }
        Ok(())
    }

    /// `a^T M b` for the intersection matrix `M`.
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Q> {
        self.check(a)?;
        self.check(b)?;
        let mut total = Q::zero();
        for (i, row) in self.intersection.iter().enumerate() {
            if a[i].is_zero() {
                continue;
            }
            let mut row_dot = Q::zero();
            for (j, &m) in row.iter().enumerate() {
                if m != 0 {
                    row_dot += &b[j] * int(m);
                }
            }
            total += &a[i] * row_dot;
        }
        Ok(total)
    }

    pub fn self_intersection(&self, a: &DivisorClass) -> Result<Q> {
        self.intersect(a, a)
    }

    /// Ampleness on the plane (positive multiple of a line) and on `F_m`
    /// (`aM + bF` with `a > 0` and `b > am`).
    pub fn is_ample(&self, c: &DivisorClass) -> Result<bool> {
        self.check(c)?;
        match self.kind {
            SurfaceKind::ProjectivePlane => Ok(c[0].is_positive()),
            SurfaceKind::Hirzebruch { m } => {
                let (a, b) = (&c[0], &c[1]);
                Ok(a.is_positive() && *b > a * int(i64::from(m)))
            }
            SurfaceKind::Custom => Err(Error::UnsupportedSurface),
        }
    }

    /// Arithmetic genus by adjunction, `1 + (C^2 + K.C)/2`.
    pub fn genus_of_curve(&self, c: &DivisorClass) -> Result<Q> {
        let c2 = self.self_intersection(c)?;
        let kc = self.intersect(&self.canonical, c)?;
        Ok(int(1) + (c2 + kc) / int(2))
    }

    /// Builds `aM + bF` on a Hirzebruch surface (or `a H` on the plane when `b` is ignored).
    pub fn class2(a: i64, b: i64) -> DivisorClass {
        DivisorClass::from_ints(&[a, b])
    }
}
