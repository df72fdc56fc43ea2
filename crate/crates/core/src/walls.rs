//! Central charges and numerical walls in the `(s, t)` upper half-plane.
//!
//! A point `(s, t)` is stored by `s` and `t^2`: walls are semicircles with
//! rational centers and rational squared radii, and their points with rational
//! `s` usually have irrational `t`.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::chern::{discriminant, shift, slope, tensor_line, twist, ChernCharacter, TwistContext};
use crate::error::{Error, Result};
use crate::quadratic::{sign_with_two_roots, QuadraticNumber};
use crate::rational::{int, serde_q, Q};
use crate::surface::{DivisorClass, SurfaceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WallKind {
    Semicircle,
    Empty,
    Vertical,
}

/// A numerical wall. For `Vertical` walls `center` is the common slope and
/// `radius_sq` is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wall {
    #[serde(with = "serde_q")]
    pub center: Q,
    #[serde(with = "serde_q")]
    pub radius_sq: Q,
    pub kind: WallKind,
}

impl Wall {
    pub fn from_center(center: Q, radius_sq: Q) -> Self {
        let kind = if radius_sq.is_positive() {
            WallKind::Semicircle
        } else {
            WallKind::Empty
        };
        Wall {
            center,
            radius_sq,
            kind,
        }
    }

    pub fn vertical(slope: Q) -> Self {
        Wall {
            center: slope,
            radius_sq: Q::zero(),
            kind: WallKind::Vertical,
        }
    }

    pub fn is_semicircle(&self) -> bool {
        self.kind == WallKind::Semicircle
    }

    /// Endpoints `center ∓ √radius_sq` on the `s`-axis.
    pub fn feet(&self) -> Option<(QuadraticNumber, QuadraticNumber)> {
        if !self.is_semicircle() {
            return None;
        }
        let foot = |sign: i64| {
            QuadraticNumber::new(self.center.clone(), int(sign), self.radius_sq.clone())
                .expect("semicircle has positive radius")
        };
        Some((foot(-1), foot(1)))
    }

    /// `t^2` of the wall point above `s`, when `s` lies strictly between the feet.
    pub fn t_squared_at(&self, s: &Q) -> Option<Q> {
        if !self.is_semicircle() {
            return None;
        }
        let ds = s - &self.center;
        let t2 = &self.radius_sq - &ds * &ds;
        t2.is_positive().then_some(t2)
    }

    fn kind_name(&self) -> &'static str {
        match self.kind {
            WallKind::Semicircle => "a semicircle",
            WallKind::Empty => "empty",
            WallKind::Vertical => "vertical",
        }
    }
}

/// A point of the upper half-plane, kept as `(s, t^2)` with `t^2 > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityPoint {
    s: Q,
    t_squared: Q,
}

impl StabilityPoint {
    pub fn new(s: Q, t: Q) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::NonPositiveT((&t * &t).to_string()));
        }
        let t_squared = &t * &t;
        Ok(StabilityPoint { s, t_squared })
    }

    pub fn from_t_squared(s: Q, t_squared: Q) -> Result<Self> {
        if !t_squared.is_positive() {
            return Err(Error::NonPositiveT(t_squared.to_string()));
        }
        Ok(StabilityPoint { s, t_squared })
    }

    pub fn s(&self) -> &Q {
        &self.s
    }

    pub fn t_squared(&self) -> &Q {
        &self.t_squared
    }
}

/// `Z_{s,t}(v) = -ch2^{D+sH} + t^2 H^2 ch0 / 2 + i H.ch1^{D+sH}`, as `(Re, Im)`.
pub fn central_charge(
    surface: &SurfaceModel,
    v: &ChernCharacter,
    ctx: &TwistContext,
    p: &StabilityPoint,
) -> Result<(Q, Q)> {
    let d = ctx.d() + &ctx.h().scale(p.s());
    let t = twist(surface, v, &d)?;
    let re = -&t.ch2 + p.t_squared() * ctx.h_squared() * &t.ch0 / int(2);
    let im = surface.intersect(ctx.h(), &t.ch1)?;
    Ok((re, im))
}

/// `-Re Z / Im Z`, the slope read off the central charge for any class.
pub fn charge_slope(surface: &SurfaceModel, v: &ChernCharacter, ctx: &TwistContext, p: &StabilityPoint) -> Result<Q> {
    let (re, im) = central_charge(surface, v, ctx, p)?;
    if im.is_zero() {
        return Err(Error::ZeroImaginaryPart);
    }
    Ok(-re / im)
}

/// `((mu - s)^2 - t^2 - 2 Delta) / (mu - s)` for a class of nonzero rank.
///
/// This normalisation is twice [`charge_slope`]; it is only ever compared
/// against itself.
pub fn bridgeland_slope(
    surface: &SurfaceModel,
    v: &ChernCharacter,
    ctx: &TwistContext,
    p: &StabilityPoint,
) -> Result<Q> {
    let mu = slope(surface, v, ctx)?;
    let delta = discriminant(surface, v, ctx)?;
    let ds = mu - p.s();
    if ds.is_zero() {
        return Err(Error::SlopeEqualsS);
    }
    Ok((&ds * &ds - p.t_squared() - int(2) * delta) / ds)
}

/// `(ch2 - (D + sH).ch1) / (H.ch1)` for a rank-zero class; independent of `t`.
pub fn bridgeland_slope_rank0(surface: &SurfaceModel, v: &ChernCharacter, ctx: &TwistContext, s: &Q) -> Result<Q> {
    if v.ch0 != 0 {
        return Err(Error::NonZeroRank(v.ch0));
    }
    let im = surface.intersect(ctx.h(), &v.ch1)?;
    if im.is_zero() {
        return Err(Error::ZeroImaginaryPart);
    }
    let d = ctx.d() + &ctx.h().scale(s);
    Ok((&v.ch2 - surface.intersect(&d, &v.ch1)?) / im)
}

/// The numerical wall where `v` and `w` have equal Bridgeland slope.
pub fn wall(surface: &SurfaceModel, v: &ChernCharacter, w: &ChernCharacter, ctx: &TwistContext) -> Result<Wall> {
    let mu_v = slope(surface, v, ctx)?;
    let mu_w = slope(surface, w, ctx)?;
    let delta_v = discriminant(surface, v, ctx)?;
    let delta_w = discriminant(surface, w, ctx)?;
    if mu_v == mu_w {
        return Ok(Wall::vertical(mu_v));
    }
    let center = (&mu_v + &mu_w) / int(2) - (&delta_v - &delta_w) / (&mu_v - &mu_w);
    let ds = &mu_v - &center;
    let radius_sq = &ds * &ds - int(2) * delta_v;
    Ok(Wall::from_center(center, radius_sq))
}

fn check_restriction_input(surface: &SurfaceModel, v: &ChernCharacter, c: &DivisorClass, ctx: &TwistContext) -> Result<Q> {
    if v.ch0 <= 0 {
        return Err(Error::RankZero);
    }
    let hc = surface.intersect(ctx.h(), c)?;
    if !hc.is_positive() {
        return Err(Error::NonPositiveHC(hc.to_string()));
    }
    Ok(hc)
}

/// The wall `W(E, E(-C)[1])`, computed as a generic two-class wall.
pub fn restriction_wall(surface: &SurfaceModel, v: &ChernCharacter, c: &DivisorClass, ctx: &TwistContext) -> Result<Wall> {
    check_restriction_input(surface, v, c, ctx)?;
    let twisted = shift(&tensor_line(surface, v, &-c)?);
    wall(surface, v, &twisted, ctx)
}

/// The restriction wall alongside the two closed forms of its center.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionWallForms {
    pub wall: Wall,
    /// `C.ch1^D / (r H.C) - C^2 / (2 H.C)`.
    #[serde(with = "serde_q")]
    pub curve_form: Q,
    /// `mu - C.H / (2 H^2)`; equal to the curve form when `C` is proportional to `H`.
    #[serde(with = "serde_q")]
    pub polarization_form: Q,
    pub forms_agree: bool,
}

pub fn restriction_wall_forms(
    surface: &SurfaceModel,
    v: &ChernCharacter,
    c: &DivisorClass,
    ctx: &TwistContext,
) -> Result<RestrictionWallForms> {
    let hc = check_restriction_input(surface, v, c, ctx)?;
    let w = restriction_wall(surface, v, c, ctx)?;
    let t = twist(surface, v, ctx.d())?;
    let c2 = surface.self_intersection(c)?;
    let curve_form = surface.intersect(c, &t.ch1)? / (v.rank() * &hc) - c2 / (int(2) * &hc);
    let polarization_form = slope(surface, v, ctx)? - &hc / (int(2) * ctx.h_squared());
    let forms_agree = curve_form == polarization_form;
    Ok(RestrictionWallForms {
        wall: w,
        curve_form,
        polarization_form,
        forms_agree,
    })
}

/// Half-open range `[lo, hi)` of `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Window {
    #[serde(with = "serde_q")]
    pub lo: Q,
    #[serde(with = "serde_q")]
    pub hi: Q,
}

impl Window {
    pub fn contains(&self, s: &Q) -> bool {
        &self.lo <= s && s < &self.hi
    }

    pub fn is_empty(&self) -> bool {
        self.lo >= self.hi
    }
}

/// Values of `s` with `mu(E(-C)) <= s < mu(E)`, where both `E` and `E(-C)[1]`
/// lie in the tilted heart numerically.
pub fn category_window(surface: &SurfaceModel, v: &ChernCharacter, c: &DivisorClass, ctx: &TwistContext) -> Result<Window> {
    if v.ch0 <= 0 {
        return Err(Error::RankZero);
    }
    let mu = slope(surface, v, ctx)?;
    let ch = surface.intersect(c, ctx.h())? / ctx.h_squared();
    Ok(Window {
        lo: &mu - ch,
        hi: mu,
    })
}

/// Center `mu - 1/(2r(r-1)H^2) - r(r-1)H^2 Delta`, bounding every subsheaf wall.
pub fn gieseker_bound_wall(surface: &SurfaceModel, v: &ChernCharacter, ctx: &TwistContext) -> Result<Wall> {
    if v.ch0 < 2 {
        return Err(Error::RankTooSmall { rank: v.ch0, min: 2 });
    }
    let r = v.rank();
    let rr = &r * (&r - int(1));
    let h2 = ctx.h_squared();
    let mu = slope(surface, v, ctx)?;
    let delta = discriminant(surface, v, ctx)?;
    let center = &mu - int(1) / (int(2) * &rr * h2) - &rr * h2 * &delta;
    let ds = &mu - &center;
    let radius_sq = &ds * &ds - int(2) * delta;
    Ok(Wall::from_center(center, radius_sq))
}

/// Whether `w1` lies outside `w2`: its center is not to the right and its
/// left foot is strictly to the left.
pub fn is_outside(w1: &Wall, w2: &Wall) -> Result<bool> {
    for w in [w1, w2] {
        if !w.is_semicircle() {
            return Err(Error::DegenerateWall(w.kind_name()));
        }
    }
    if w1.center > w2.center {
        return Ok(false);
    }
    // left foot 2 - left foot 1 = (c2 - c1) + √R1 - √R2 > 0
    let sign = sign_with_two_roots(
        &(&w2.center - &w1.center),
        &int(1),
        &w1.radius_sq,
        &int(-1),
        &w2.radius_sq,
    );
    Ok(sign == Ordering::Greater)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::{add, p2_invariants};
    use crate::rational::q;
    use proptest::prelude::*;

    fn p2() -> SurfaceModel {
        SurfaceModel::p2()
    }

    fn ctx() -> TwistContext {
        TwistContext::p2_standard()
    }

    fn v(r: i64, e: i64, ch2: Q) -> ChernCharacter {
        ChernCharacter::p2i(r, e, ch2)
    }

    fn hd(d: i64) -> DivisorClass {
        DivisorClass::from_ints(&[d])
    }

    fn pt(s: Q, t: Q) -> StabilityPoint {
        StabilityPoint::new(s, t).unwrap()
    }

    #[test]
    fn central_charge_examples() {
        let z = central_charge(&p2(), &v(1, 0, int(0)), &ctx(), &pt(int(-1), int(1))).unwrap();
        assert_eq!(z, (int(0), int(1)));
        let z = central_charge(&p2(), &v(0, 0, int(0)), &ctx(), &pt(q(3, 7), int(2))).unwrap();
        assert_eq!(z, (int(0), int(0)));
        for (s, t) in [(int(0), int(1)), (q(-5, 2), q(1, 3)), (int(4), int(9))] {
            let z = central_charge(&p2(), &v(0, 1, q(-1, 2)), &ctx(), &pt(s, t)).unwrap();
            assert_eq!(z.1, int(1));
        }
        assert!(StabilityPoint::new(int(0), int(0)).is_err());
        assert!(StabilityPoint::from_t_squared(int(0), int(-1)).is_err());
    }

    #[test]
    fn bridgeland_slope_examples() {
        let p = pt(q(-5, 2), int(1));
        assert_eq!(bridgeland_slope(&p2(), &v(2, 0, int(-2)), &ctx(), &p).unwrap(), q(13, 10));
        assert_eq!(bridgeland_slope(&p2(), &v(-2, 10, int(-23)), &ctx(), &p).unwrap(), q(-13, 10));
        // t^2 = (mu - s)^2 - 2 Delta gives slope zero.
        let p = StabilityPoint::from_t_squared(q(-5, 2), q(25, 4) - int(2)).unwrap();
        assert_eq!(bridgeland_slope(&p2(), &v(2, 0, int(-2)), &ctx(), &p).unwrap(), int(0));
        assert_eq!(
            bridgeland_slope(&p2(), &v(2, 0, int(-2)), &ctx(), &pt(int(0), int(1))),
            Err(Error::SlopeEqualsS)
        );
        assert_eq!(
            bridgeland_slope(&p2(), &v(0, 1, int(0)), &ctx(), &pt(int(0), int(1))),
            Err(Error::RankZero)
        );
    }

    #[test]
    fn rank_zero_slope_examples() {
        let c = v(0, 1, q(-1, 2));
        assert_eq!(bridgeland_slope_rank0(&p2(), &c, &ctx(), &int(0)).unwrap(), q(-1, 2));
        let c8 = v(0, 8, int(-12));
        assert_eq!(bridgeland_slope_rank0(&p2(), &c8, &ctx(), &q(-5, 2)).unwrap(), int(1));
        for s in [q(-7, 3), int(2), q(11, 5)] {
            let at_s = bridgeland_slope_rank0(&p2(), &c8, &ctx(), &s).unwrap();
            let at_0 = bridgeland_slope_rank0(&p2(), &c8, &ctx(), &int(0)).unwrap();
            assert_eq!(at_s - at_0, -s);
        }
        assert_eq!(
            bridgeland_slope_rank0(&p2(), &v(0, 0, int(1)), &ctx(), &int(0)),
            Err(Error::ZeroImaginaryPart)
        );
        assert_eq!(
            bridgeland_slope_rank0(&p2(), &v(1, 0, int(0)), &ctx(), &int(0)),
            Err(Error::NonZeroRank(1))
        );
    }

    #[test]
    fn wall_examples() {
        let w = wall(&p2(), &v(2, 0, int(-2)), &v(-2, 10, int(-23)), &ctx()).unwrap();
        assert_eq!(w, Wall::from_center(q(-5, 2), q(17, 4)));
        assert_eq!(w.kind, WallKind::Semicircle);
        let x = v(3, 1, q(-5, 6));
        assert_eq!(wall(&p2(), &x, &x, &ctx()).unwrap().kind, WallKind::Vertical);
        let w = wall(&p2(), &v(2, 0, int(-2)), &v(1, 0, int(0)), &ctx()).unwrap();
        assert_eq!(w.kind, WallKind::Vertical);
        assert_eq!(w.center, int(0));
        assert_eq!(
            wall(&p2(), &v(0, 1, int(0)), &v(1, 0, int(0)), &ctx()),
            Err(Error::RankZero)
        );
    }

    #[test]
    fn wall_serializes_as_strings() {
        let w = Wall::from_center(q(-5, 2), q(17, 4));
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"center":"-5/2","radius_sq":"17/4","kind":"semicircle"}"#);
        let back: Wall = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn restriction_wall_examples() {
        let e = v(2, 0, int(-2));
        let w = restriction_wall(&p2(), &e, &hd(5), &ctx()).unwrap();
        assert_eq!((w.center, w.radius_sq), (q(-5, 2), q(17, 4)));
        let w = restriction_wall(&p2(), &e, &hd(4), &ctx()).unwrap();
        assert_eq!((w.center, w.radius_sq, w.kind), (int(-2), int(2), WallKind::Semicircle));
        let w = restriction_wall(&p2(), &e, &hd(2), &ctx()).unwrap();
        assert_eq!(w.kind, WallKind::Empty);
        assert_eq!(
            restriction_wall(&p2(), &e, &hd(0), &ctx()),
            Err(Error::NonPositiveHC("0".into()))
        );
        assert_eq!(
            restriction_wall(&p2(), &v(0, 1, int(0)), &hd(3), &ctx()),
            Err(Error::RankZero)
        );
    }

    #[test]
    fn restriction_forms_disagree_off_the_polarization_ray() {
        let f1 = SurfaceModel::hirzebruch(1).unwrap();
        let h = SurfaceModel::class2(1, 2);
        let ctx = TwistContext::untwisted(&f1, h).unwrap();
        let e = ChernCharacter::new(2, SurfaceModel::class2(1, 1), int(-1));
        let fiber_heavy = SurfaceModel::class2(1, 5);
        let forms = restriction_wall_forms(&f1, &e, &fiber_heavy, &ctx).unwrap();
        assert_eq!(forms.wall.center, forms.curve_form);
        assert!(!forms.forms_agree);
        let along_h = restriction_wall_forms(&f1, &e, &SurfaceModel::class2(2, 4), &ctx).unwrap();
        assert!(along_h.forms_agree);
        assert_eq!(along_h.wall.center, along_h.polarization_form);
    }

    #[test]
    fn category_window_examples() {
        let e = v(2, 0, int(-2));
        let win = category_window(&p2(), &e, &hd(5), &ctx()).unwrap();
        assert_eq!((win.lo.clone(), win.hi.clone()), (int(-5), int(0)));
        assert!(win.contains(&q(-5, 2)));
        assert!(!win.contains(&int(0)));
        assert!(category_window(&p2(), &e, &hd(0), &ctx()).unwrap().is_empty());
    }

    #[test]
    fn gieseker_wall_examples() {
        let e = v(2, 0, int(-2));
        let g = gieseker_bound_wall(&p2(), &e, &ctx()).unwrap();
        assert_eq!(g.center, q(-9, 4));
        assert_eq!(g.radius_sq, q(49, 16));
        let r = restriction_wall(&p2(), &e, &hd(5), &ctx()).unwrap();
        assert!(r.center < g.center);
        let flat = gieseker_bound_wall(&p2(), &v(2, 2, int(1)), &ctx()).unwrap();
        assert_eq!(flat.center, int(1) - q(1, 4));
        assert_eq!(
            gieseker_bound_wall(&p2(), &v(1, 0, int(0)), &ctx()),
            Err(Error::RankTooSmall { rank: 1, min: 2 })
        );
    }

    #[test]
    fn outside_examples() {
        let a = Wall::from_center(q(-5, 2), q(17, 4));
        let b = Wall::from_center(q(-9, 4), q(49, 16));
        assert!(is_outside(&a, &b).unwrap());
        assert!(!is_outside(&b, &a).unwrap());
        assert!(!is_outside(&a, &a).unwrap());
        let inner = Wall::from_center(int(-3), int(1));
        let outer = Wall::from_center(int(-3), int(4));
        assert!(is_outside(&outer, &inner).unwrap());
        assert!(!is_outside(&inner, &outer).unwrap());
        let empty = Wall::from_center(int(0), int(-1));
        assert_eq!(is_outside(&a, &empty), Err(Error::DegenerateWall("empty")));
        assert_eq!(is_outside(&Wall::vertical(int(0)), &a), Err(Error::DegenerateWall("vertical")));
    }

    #[test]
    fn feet_and_heights() {
        let w = Wall::from_center(q(-9, 4), q(49, 16));
        let (l, r) = w.feet().unwrap();
        assert_eq!(l, QuadraticNumber::rational(int(-4)));
        assert_eq!(r, QuadraticNumber::rational(q(-1, 2)));
        assert_eq!(w.t_squared_at(&q(-9, 4)), Some(q(49, 16)));
        assert_eq!(w.t_squared_at(&int(-4)), None);
    }

    fn sheaf_char() -> impl Strategy<Value = ChernCharacter> {
        (1i64..6, -12i64..12, -40i64..40).prop_map(|(r, e, chi)| {
            // ch2 = chi - r - 3e/2 keeps chi integral.
            v(r, e, int(chi) - int(r) - q(3 * e, 2))
        })
    }

    fn any_char() -> impl Strategy<Value = ChernCharacter> {
        (prop_oneof![-5i64..=-1, 1i64..=5], -12i64..12, -30i64..30, 1i64..4)
            .prop_map(|(r, e, n, d)| v(r, e, q(n, d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn restriction_wall_closed_form(x in sheaf_char(), d in 1i64..30) {
            let (mu, delta) = p2_invariants(&x).unwrap();
            prop_assume!(delta.is_positive());
            let w = restriction_wall(&p2(), &x, &hd(d), &ctx()).unwrap();
            prop_assert_eq!(&w.center, &(&mu - q(d, 2)));
            prop_assert_eq!(&w.radius_sq, &(q(d * d, 4) - int(2) * &delta));
            prop_assert_eq!(w.kind == WallKind::Empty, int(d * d) <= int(8) * &delta);
            let forms = restriction_wall_forms(&p2(), &x, &hd(d), &ctx()).unwrap();
            prop_assert!(forms.forms_agree);
            let win = category_window(&p2(), &x, &hd(d), &ctx()).unwrap();
            prop_assert!(win.contains(&w.center));
        }
    }

    proptest! {
        #[test]
        fn slopes_agree_on_walls(x in any_char(), y in any_char(), k in 1i64..6) {
            let w = wall(&p2(), &x, &y, &ctx()).unwrap();
            prop_assume!(w.kind == WallKind::Semicircle);
            let (mx, _) = p2_invariants(&x).unwrap();
            let (my, _) = p2_invariants(&y).unwrap();
            let mut checked = 0;
            for j in -k..=k {
                // Rational s across the wall, skipping points off it or at either slope.
                let s = &w.center + q(j, 2 * k + 1);
                if let Some(t2) = w.t_squared_at(&s) {
                    if s == mx || s == my {
                        continue;
                    }
                    let p = StabilityPoint::from_t_squared(s, t2).unwrap();
                    let a = bridgeland_slope(&p2(), &x, &ctx(), &p).unwrap();
                    let b = bridgeland_slope(&p2(), &y, &ctx(), &p).unwrap();
                    prop_assert_eq!(&a, &b);
                    prop_assert_eq!(charge_slope(&p2(), &x, &ctx(), &p).unwrap() * int(2), a);
                    checked += 1;
                }
            }
            let _ = checked;
        }

        #[test]
        fn wall_is_symmetric(x in any_char(), y in any_char()) {
            prop_assert_eq!(wall(&p2(), &x, &y, &ctx()).unwrap(), wall(&p2(), &y, &x, &ctx()).unwrap());
        }

        #[test]
        fn imaginary_part_positive_right_of_slope(x in sheaf_char(), num in -40i64..40, t in 1i64..5) {
            let (mu, _) = p2_invariants(&x).unwrap();
            let s = q(num, 3);
            prop_assume!(mu > s);
            let (_, im) = central_charge(&p2(), &x, &ctx(), &pt(s, int(t))).unwrap();
            prop_assert!(im.is_positive());
        }

        #[test]
        fn restriction_object_shares_the_wall_phase(x in sheaf_char(), d in 1i64..12, j in -3i64..=3) {
            // On W(E, E(-C)[1]) the cone i_*E|_C has the same charge slope as E.
            let w = restriction_wall(&p2(), &x, &hd(d), &ctx()).unwrap();
            prop_assume!(w.kind == WallKind::Semicircle);
            let s = &w.center + q(j, 7);
            let (mu, _) = p2_invariants(&x).unwrap();
            prop_assume!(s != mu);
            if let Some(t2) = w.t_squared_at(&s) {
                let p = StabilityPoint::from_t_squared(s.clone(), t2).unwrap();
                let cone = add(&x, &shift(&tensor_line(&p2(), &x, &hd(-d)).unwrap()));
                prop_assert_eq!(cone.ch0, 0);
                let lhs = charge_slope(&p2(), &x, &ctx(), &p).unwrap();
                prop_assert_eq!(lhs, bridgeland_slope_rank0(&p2(), &cone, &ctx(), &s).unwrap());
            }
        }

        #[test]
        fn restriction_wall_empty_iff_small_degree(r in 1i64..6, delta in (0i64..80).prop_map(|n| q(n, 8)), d in 1i64..20) {
            // Build v with the prescribed Delta and slope zero.
            let x = ChernCharacter::p2(r, int(0), -&delta * int(r));
            let w = restriction_wall(&p2(), &x, &hd(d), &ctx()).unwrap();
            prop_assert_eq!(w.kind == WallKind::Empty, int(d * d) <= int(8) * delta);
        }
    }
}
