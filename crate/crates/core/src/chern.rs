//! Chern-character arithmetic on a fixed Picard lattice.
//!
//! Characters are `(ch0, ch1, ch2)` with an integer rank, a rational divisor
//! class and a rational `ch2`. Everything is exact; slopes and discriminants
//! are twisted by a pair `(H, D)` of an ample class and an arbitrary
//! rational divisor.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{hilbert_p2, int, is_integer, q, serde_q, Q};
use crate::surface::{DivisorClass, SurfaceModel};

/// Numerical K-class `(ch0, ch1, ch2)`. The rank may be negative for shifted objects.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChernCharacter {
    pub ch0: i64,
    pub ch1: DivisorClass,
    #[serde(with = "serde_q")]
    pub ch2: Q,
}

impl ChernCharacter {
    pub fn new(ch0: i64, ch1: DivisorClass, ch2: Q) -> Self {
        ChernCharacter { ch0, ch1, ch2 }
    }

    /// A character on the plane: rank, degree of `ch1` in multiples of `H`, and `ch2`.
    pub fn p2(ch0: i64, degree: Q, ch2: Q) -> Self {
        ChernCharacter {
            ch0,
            ch1: DivisorClass::new(vec![degree]),
            ch2,
        }
    }

    /// Same as [`ChernCharacter::p2`] with integer degree.
    pub fn p2i(ch0: i64, degree: i64, ch2: Q) -> Self {
        Self::p2(ch0, int(degree), ch2)
    }

    pub fn zero(surface: &SurfaceModel) -> Self {
        ChernCharacter::new(0, surface.zero_class(), Q::zero())
    }

    pub fn rank(&self) -> Q {
        int(self.ch0)
    }

    /// The `H`-degree of `ch1` on the plane.
    pub fn p2_degree(&self) -> Result<&Q> {
        if self.ch1.len() != 1 {
            return Err(Error::WrongSurface {
                expected: "a character on the projective plane",
            });
        }
        Ok(&self.ch1[0])
    }

    /// Rank and first Chern class integral, and (on the plane) integral Euler characteristic.
    ///
    /// This is a flag, not a gate: shifted and formal classes legitimately fail it.
    pub fn is_sheaf_like(&self, surface: &SurfaceModel) -> bool {
        if !self.ch1.coefficients().iter().all(is_integer) {
            return false;
        }
        match euler_characteristic(surface, self) {
            Ok(chi) => is_integer(&chi),
            Err(_) => false,
        }
    }
}

/// The polarization `H` together with the twisting divisor `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistContext {
    h: DivisorClass,
    d: DivisorClass,
    h_squared: Q,
}

impl TwistContext {
    pub fn new(surface: &SurfaceModel, h: DivisorClass, d: DivisorClass) -> Result<Self> {
        surface.check(&d)?;
        let h_squared = surface.self_intersection(&h)?;
        if !h_squared.is_positive() {
            return Err(Error::NonPositiveH(h_squared.to_string()));
        }
        Ok(TwistContext { h, d, h_squared })
    }

    /// `H` with `D = 0`.
    pub fn untwisted(surface: &SurfaceModel, h: DivisorClass) -> Result<Self> {
        let zero = surface.zero_class();
        Self::new(surface, h, zero)
    }

    /// The line class on the plane with no twist.
    pub fn p2_standard() -> Self {
        Self::untwisted(&SurfaceModel::p2(), DivisorClass::from_ints(&[1]))
            .expect("H = line is ample")
    }

    /// `H` with `D` chosen by [`minimizing_twist`] for `v`.
    pub fn minimizing(surface: &SurfaceModel, h: DivisorClass, v: &ChernCharacter) -> Result<Self> {
        let d = minimizing_twist(surface, v, &h)?;
        Self::new(surface, h, d)
    }

    pub fn with_twist(&self, d: DivisorClass) -> Self {
        assert_eq!(d.len(), self.d.len());
        TwistContext {
            h: self.h.clone(),
            d,
            h_squared: self.h_squared.clone(),
        }
    }

    pub fn h(&self) -> &DivisorClass {
        &self.h
    }

    pub fn d(&self) -> &DivisorClass {
        &self.d
    }

    pub fn h_squared(&self) -> &Q {
        &self.h_squared
    }
}

/// `ch^D = exp(-D) ch`, with the rank promoted to a rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedCharacter {
    pub ch0: Q,
    pub ch1: DivisorClass,
    pub ch2: Q,
}

pub fn twist(surface: &SurfaceModel, v: &ChernCharacter, d: &DivisorClass) -> Result<TwistedCharacter> {
    surface.check(&v.ch1)?;
    surface.check(d)?;
    let r = v.rank();
    let ch1 = &v.ch1 - &d.scale(&r);
    let ch2 = &v.ch2 - surface.intersect(d, &v.ch1)? + surface.self_intersection(d)? * &r / int(2);
    Ok(TwistedCharacter { ch0: r, ch1, ch2 })
}

/// `ch(E ⊗ L) = ch(E) exp(L)`.
pub fn tensor_line(surface: &SurfaceModel, v: &ChernCharacter, l: &DivisorClass) -> Result<ChernCharacter> {
    surface.check(&v.ch1)?;
    surface.check(l)?;
    let r = v.rank();
    let ch1 = &v.ch1 + &l.scale(&r);
    let ch2 = &v.ch2 + surface.intersect(l, &v.ch1)? + surface.self_intersection(l)? * &r / int(2);
    Ok(ChernCharacter::new(v.ch0, ch1, ch2))
}

/// Homological shift `[1]`: negates every component.
pub fn shift(v: &ChernCharacter) -> ChernCharacter {
    ChernCharacter::new(-v.ch0, -&v.ch1, -&v.ch2)
}

pub fn add(a: &ChernCharacter, b: &ChernCharacter) -> ChernCharacter {
    ChernCharacter::new(a.ch0 + b.ch0, &a.ch1 + &b.ch1, &a.ch2 + &b.ch2)
}

/// Twisted slope `mu_{H,D} = H.ch1^D / (H^2 ch0)`.
pub fn slope(surface: &SurfaceModel, v: &ChernCharacter, ctx: &TwistContext) -> Result<Q> {
    if v.ch0 == 0 {
        return Err(Error::RankZero);
    }
    let t = twist(surface, v, ctx.d())?;
    Ok(surface.intersect(ctx.h(), &t.ch1)? / (ctx.h_squared() * &t.ch0))
}

/// Twisted discriminant `Delta_{H,D} = mu^2/2 - ch2^D / (H^2 ch0)`.
pub fn discriminant(surface: &SurfaceModel, v: &ChernCharacter, ctx: &TwistContext) -> Result<Q> {
    if v.ch0 == 0 {
        return Err(Error::RankZero);
    }
    let t = twist(surface, v, ctx.d())?;
    let mu = surface.intersect(ctx.h(), &t.ch1)? / (ctx.h_squared() * &t.ch0);
    Ok(&mu * &mu / int(2) - &t.ch2 / (ctx.h_squared() * &t.ch0))
}

/// `Delta = c1^2 / (2 r^2) - ch2 / r`, using the lattice pairing.
pub fn classical_discriminant(surface: &SurfaceModel, v: &ChernCharacter) -> Result<Q> {
    if v.ch0 == 0 {
        return Err(Error::RankZero);
    }
    let r = v.rank();
    let c1sq = surface.self_intersection(&v.ch1)?;
    Ok(c1sq / (int(2) * &r * &r) - &v.ch2 / &r)
}

/// The twist `D` realising `H^2 Delta_{H,D}(v) = Delta(v)`.
///
/// Writes `ch1 = eH + eps` with `H.eps = 0` and returns `eps / ch0`.
pub fn minimizing_twist(surface: &SurfaceModel, v: &ChernCharacter, h: &DivisorClass) -> Result<DivisorClass> {
    if v.ch0 == 0 {
        return Err(Error::RankZero);
    }
    let h2 = surface.self_intersection(h)?;
    if !h2.is_positive() {
        return Err(Error::NonPositiveH(h2.to_string()));
    }
    let e = surface.intersect(h, &v.ch1)? / &h2;
    let eps = &v.ch1 - &h.scale(&e);
    Ok(eps.scale(&(int(1) / v.rank())))
}

/// `ch(i_* F) = (0, rC, deg F - r C^2 / 2)` for a rank `r`, degree `e` sheaf on `C`.
pub fn pushforward(surface: &SurfaceModel, c: &DivisorClass, r: i64, e: &Q) -> Result<ChernCharacter> {
    let c2 = surface.self_intersection(c)?;
    Ok(ChernCharacter::new(0, c.scale(&int(r)), e - int(r) * c2 / int(2)))
}

/// Hirzebruch-Riemann-Roch on any surface model: `chi = ch2 - K.c1/2 + r chi(O)`.
pub fn euler_characteristic(surface: &SurfaceModel, v: &ChernCharacter) -> Result<Q> {
    let kc1 = surface.intersect(surface.canonical_class(), &v.ch1)?;
    Ok(&v.ch2 - kc1 / int(2) + v.rank() * int(surface.chi_structure_sheaf()))
}

/// Riemann-Roch on the plane: `chi = r + 3 deg(c1)/2 + ch2`.
pub fn euler_char_p2(v: &ChernCharacter) -> Result<Q> {
    let e = v.p2_degree()?;
    Ok(v.rank() + q(3, 2) * e + &v.ch2)
}

/// Slope and discriminant of a character on the plane with `H` a line and `D = 0`.
pub fn p2_invariants(v: &ChernCharacter) -> Result<(Q, Q)> {
    let e = v.p2_degree()?;
    if v.ch0 == 0 {
        return Err(Error::RankZero);
    }
    let r = v.rank();
    let mu = e / &r;
    let delta = &mu * &mu / int(2) - &v.ch2 / &r;
    Ok((mu, delta))
}

/// Euler pairing on the plane, `chi(v, w) = r_v r_w (P(mu_w - mu_v) - Delta_v - Delta_w)`.
pub fn euler_pairing_p2(v: &ChernCharacter, w: &ChernCharacter) -> Result<Q> {
    let (mu_v, d_v) = p2_invariants(v)?;
    let (mu_w, d_w) = p2_invariants(w)?;
    Ok(v.rank() * w.rank() * (hilbert_p2(&(mu_w - mu_v)) - d_v - d_w))
}

/// Bogomolov inequality `Delta_{H,D} >= 0`. Requires positive rank.
pub fn bogomolov_ok(surface: &SurfaceModel, v: &ChernCharacter, ctx: &TwistContext) -> Result<bool> {
    if v.ch0 <= 0 {
        return Err(Error::RankZero);
    }
    Ok(!discriminant(surface, v, ctx)?.is_negative())
}
