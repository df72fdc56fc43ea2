//! Restriction criteria: inequalities in `(v, C)` that guarantee `E|_C` is
//! (semi)stable, evaluated exactly and compared degree by degree.
//!
//! None of the criteria can check their own geometric hypotheses (stability
//! of `E`, integrality or genericity of `C`); those are listed verbatim in
//! every report.

use std::fmt;

use num_integer::binomial;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::chern::{classical_discriminant, discriminant, slope, twist, ChernCharacter, TwistContext};
use crate::error::{Error, Result};
use crate::p2x::has_picard_rank_two;
use crate::rational::{int, q, serde_q, Q};
use crate::surface::{DivisorClass, SurfaceModel};
use crate::walls::{gieseker_bound_wall, restriction_wall};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CriterionName {
    Flenner,
    Bogomolov,
    Langer,
    GeneralSurface,
    PlaneGeneral,
    HirzebruchLemma,
}

impl CriterionName {
    pub const ALL: [CriterionName; 6] = [
        CriterionName::Flenner,
        CriterionName::Bogomolov,
        CriterionName::Langer,
        CriterionName::GeneralSurface,
        CriterionName::PlaneGeneral,
        CriterionName::HirzebruchLemma,
    ];

    /// Stable machine identifier used in CSV output.
    pub fn id(self) -> &'static str {
        match self {
            CriterionName::Flenner => "flenner",
            CriterionName::Bogomolov => "bogomolov",
            CriterionName::Langer => "langer",
            CriterionName::GeneralSurface => "general_surface",
            CriterionName::PlaneGeneral => "plane_general",
            CriterionName::HirzebruchLemma => "hirzebruch_lemma",
        }
    }
}

impl fmt::Display for CriterionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Conclusion {
    Stable,
    Semistable,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::Stable => "stable",
            Conclusion::Semistable => "semistable",
        })
    }
}

/// A second inequality evaluated on the same data, for cross-checking.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Companion {
    pub label: String,
    #[serde(with = "serde_q")]
    pub lhs: Q,
    #[serde(with = "serde_q")]
    pub rhs: Q,
    pub satisfied: bool,
}

impl Companion {
    fn new(label: &str, lhs: Q, rhs: Q) -> Self {
        Companion {
            label: label.to_string(),
            satisfied: lhs > rhs,
            lhs,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub name: CriterionName,
    /// `d` when the curve class is `dH` for an integer `d`.
    pub degree: Option<i64>,
    #[serde(with = "serde_q")]
    pub lhs: Q,
    #[serde(with = "serde_q")]
    pub rhs: Q,
    pub satisfied: bool,
    pub conclusion: Conclusion,
    pub hypotheses: Vec<String>,
    pub companions: Vec<Companion>,
}

impl CriterionReport {
    fn new(name: CriterionName, degree: Option<i64>, lhs: Q, rhs: Q, conclusion: Conclusion, hypotheses: &[&str]) -> Self {
        CriterionReport {
            name,
            degree,
            satisfied: lhs > rhs,
            lhs,
            rhs,
            conclusion,
            hypotheses: hypotheses.iter().map(|s| s.to_string()).collect(),
            companions: Vec::new(),
        }
    }
}

fn check_degree(d: i64) -> Result<()> {
    if d < 1 {
        return Err(Error::BadDegree(d));
    }
    Ok(())
}

fn check_rank(v: &ChernCharacter, min: i64) -> Result<Q> {
    if v.ch0 < min {
        return Err(Error::RankTooSmall { rank: v.ch0, min });
    }
    Ok(v.rank())
}

fn positive_h_squared(surface: &SurfaceModel, h: &DivisorClass) -> Result<Q> {
    let h2 = surface.self_intersection(h)?;
    if !h2.is_positive() {
        return Err(Error::NonPositiveH(h2.to_string()));
    }
    Ok(h2)
}

/// `d - 1/d > H^2 max{(r^2-1)/4, 1} - 2`, concluding semistability.
pub fn flenner(surface: &SurfaceModel, v: &ChernCharacter, h: &DivisorClass, d: i64) -> Result<CriterionReport> {
    check_degree(d)?;
    let r = check_rank(v, 1)?;
    let h2 = positive_h_squared(surface, h)?;
    let lhs = int(d) - q(1, d);
    let quarter = (&r * &r - int(1)) / int(4);
    let rhs = h2 * std::cmp::max(quarter, int(1)) - int(2);
    Ok(CriterionReport::new(
        CriterionName::Flenner,
        Some(d),
        lhs,
        rhs,
        Conclusion::Semistable,
        &["E mu_H-semistable, user-asserted", "C general of class dH"],
    ))
}

/// `2d > C(r, r/2) C(r-2, r/2 - 1) r Δ + 1`, concluding stability.
pub fn bogomolov_restriction(surface: &SurfaceModel, v: &ChernCharacter, h: &DivisorClass, d: i64) -> Result<CriterionReport> {
    check_degree(d)?;
    let r = check_rank(v, 2)?;
    positive_h_squared(surface, h)?;
    let half_r = v.ch0 / 2;
    let coefficient = binomial(v.ch0, half_r) * binomial(v.ch0 - 2, half_r - 1);
    let delta = classical_discriminant(surface, v)?;
    let rhs = int(coefficient) * r * delta + int(1);
    Ok(CriterionReport::new(
        CriterionName::Bogomolov,
        Some(d),
        int(2 * d),
        rhs,
        Conclusion::Stable,
        &["E mu_H-stable, user-asserted", "C smooth of class dH, user-asserted"],
    ))
}

/// `d/2 > r(r-1)Δ + 1/(2r(r-1)H^2)`; the conclusion copies the strictness of the input.
pub fn langer(surface: &SurfaceModel, v: &ChernCharacter, h: &DivisorClass, d: i64, input: Conclusion) -> Result<CriterionReport> {
    check_degree(d)?;
    let r = check_rank(v, 2)?;
    let h2 = positive_h_squared(surface, h)?;
    let rr = &r * (&r - int(1));
    let delta = classical_discriminant(surface, v)?;
    let rhs = &rr * delta + int(1) / (int(2) * &rr * h2);
    Ok(CriterionReport::new(
        CriterionName::Langer,
        Some(d),
        q(d, 2),
        rhs,
        input,
        &[stability_hypothesis(input), "C in |dH|, user-asserted"],
    ))
}

fn stability_hypothesis(input: Conclusion) -> &'static str {
    match input {
        Conclusion::Stable => "E mu_H-stable, user-asserted",
        Conclusion::Semistable => "E mu_H-semistable, user-asserted",
    }
}

/// If `c` is `dH` for a rational `d`, returns `d`.
fn multiple_of(surface: &SurfaceModel, c: &DivisorClass, h: &DivisorClass, h2: &Q) -> Result<Option<Q>> {
    let d = surface.intersect(c, h)? / h2;
    Ok((h.scale(&d) == *c).then_some(d))
}

/// `C^2/(2H.C) - ch1^D.C/(rH.C) + mu > r(r-1)H^2 Δ_{H,D} + 1/(2r(r-1)H^2)`.
///
/// The report carries two companions: the same test read off the walls
/// (restriction-wall center left of the Gieseker-bound center), and, when
/// `C = dH`, the simplified degree inequality at the minimizing twist.
pub fn general_surface(
    surface: &SurfaceModel,
    v: &ChernCharacter,
    c: &DivisorClass,
    ctx: &TwistContext,
    input: Conclusion,
) -> Result<CriterionReport> {
    let r = check_rank(v, 2)?;
    let hc = surface.intersect(ctx.h(), c)?;
    if !hc.is_positive() {
        return Err(Error::NonPositiveHC(hc.to_string()));
    }
    let h2 = ctx.h_squared();
    let rr = &r * (&r - int(1));
    let t = twist(surface, v, ctx.d())?;
    let c2 = surface.self_intersection(c)?;
    let mu = slope(surface, v, ctx)?;
    let lhs = &c2 / (int(2) * &hc) - surface.intersect(&t.ch1, c)? / (&r * &hc) + &mu;
    let delta = discriminant(surface, v, ctx)?;
    let rhs = &rr * h2 * &delta + int(1) / (int(2) * &rr * h2);

    let multiple = multiple_of(surface, c, ctx.h(), h2)?;
    let degree = multiple
        .as_ref()
        .filter(|d| d.is_integer())
        .and_then(|d| d.to_integer().to_i64());
    let mut report = CriterionReport::new(
        CriterionName::GeneralSurface,
        degree,
        lhs,
        rhs,
        input,
        &[
            match input {
                Conclusion::Stable => "E mu_{H,D}-stable, user-asserted",
                Conclusion::Semistable => "E mu_{H,D}-semistable, user-asserted",
            },
            "C integral, user-asserted",
        ],
    );
    let restriction = restriction_wall(surface, v, c, ctx)?;
    let gieseker = gieseker_bound_wall(surface, v, ctx)?;
    report.companions.push(Companion::new(
        "wall centers: gieseker_bound > restriction",
        gieseker.center,
        restriction.center,
    ));
    if let Some(d) = multiple {
        let classical = classical_discriminant(surface, v)?;
        report.companions.push(Companion::new(
            "class dH at the minimizing twist: d/2 > r(r-1)Delta + 1/(2r(r-1)H^2)",
            d / int(2),
            &rr * classical + int(1) / (int(2) * &rr * h2),
        ));
    }
    Ok(report)
}

/// `d^2 > 8Δ + 4` on the plane, for a general sheaf in its moduli space.
///
/// Whether the moduli space has Picard rank two (`Δ > δ(μ)`) is recorded as
/// a hypothesis line; [`plane_general_strict`] turns a failure into an error.
pub fn plane_general(v: &ChernCharacter, d: i64, depth: u32) -> Result<CriterionReport> {
    check_degree(d)?;
    v.p2_degree()?;
    check_rank(v, 1)?;
    let delta = classical_discriminant(&SurfaceModel::p2(), v)?;
    let picard = match has_picard_rank_two(v, depth) {
        Ok(true) => "moduli space has Picard rank 2: verified (Delta > delta(mu))".to_string(),
        Ok(false) => "moduli space has Picard rank 2: NOT verified (Delta <= delta(mu))".to_string(),
        Err(e) => format!("moduli space has Picard rank 2: undecided ({e})"),
    };
    let mut report = CriterionReport::new(
        CriterionName::PlaneGeneral,
        Some(d),
        int(d * d),
        int(8) * delta + int(4),
        Conclusion::Stable,
        &["E general in moduli", "C integral of degree d, user-asserted"],
    );
    report.hypotheses.push(picard);
    Ok(report)
}

/// [`plane_general`], refusing characters whose moduli space is not known to have Picard rank two.
pub fn plane_general_strict(v: &ChernCharacter, d: i64, depth: u32) -> Result<CriterionReport> {
    let report = plane_general(v, d, depth)?;
    if !has_picard_rank_two(v, depth)? {
        let (mu, delta) = crate::chern::p2_invariants(v)?;
        return Err(Error::NotPicardRankTwo {
            delta: delta.to_string(),
            dlp: crate::p2x::dlp_delta(&mu, depth)?.to_string(),
        });
    }
    Ok(report)
}

/// `d > 2r(r-1)(ab - a^2 m) Δ_H` on `F_m` with `H = aM + bF`, taken as written.
///
/// The constant differs from `H^2 = 2ab - a^2 m`, so the report attaches the
/// general-surface evaluation of the same data (`C = dH`, no twist).
pub fn hirzebruch_lemma(surface: &SurfaceModel, v: &ChernCharacter, h: &DivisorClass, d: i64) -> Result<CriterionReport> {
    check_degree(d)?;
    let m = surface.hirzebruch_parameter().ok_or(Error::WrongSurface {
        expected: "a Hirzebruch surface",
    })?;
    if !surface.is_ample(h)? {
        return Err(Error::NotAmple);
    }
    let r = check_rank(v, 2)?;
    let (a, b) = (&h[0], &h[1]);
    let constant = a * b - a * a * int(i64::from(m));
    let ctx = TwistContext::untwisted(surface, h.clone())?;
    let delta = discriminant(surface, v, &ctx)?;
    let rhs = int(2) * &r * (&r - int(1)) * constant * delta;
    let mut report = CriterionReport::new(
        CriterionName::HirzebruchLemma,
        Some(d),
        int(d),
        rhs,
        Conclusion::Semistable,
        &["E mu_H-semistable, user-asserted", "C integral of class dH, user-asserted"],
    );
    let general = general_surface(surface, v, &h.scale(&int(d)), &ctx, Conclusion::Semistable)?;
    report.companions.push(Companion::new("general surface theorem, C = dH, D = 0", general.lhs, general.rhs));
    Ok(report)
}

/// Everything a criterion needs, so that sweeps can treat them uniformly.
#[derive(Debug, Clone)]
pub struct CriterionInput {
    pub surface: SurfaceModel,
    pub v: ChernCharacter,
    pub ctx: TwistContext,
    pub input: Conclusion,
    pub depth: u32,
}

impl CriterionInput {
    pub fn new(surface: SurfaceModel, v: ChernCharacter, ctx: TwistContext) -> Self {
        CriterionInput {
            surface,
            v,
            ctx,
            input: Conclusion::Semistable,
            depth: crate::p2x::DEFAULT_DEPTH,
        }
    }

    /// The criterion evaluated on a curve of class `dH`.
    pub fn evaluate(&self, name: CriterionName, d: i64) -> Result<CriterionReport> {
        let (s, v, h) = (&self.surface, &self.v, self.ctx.h());
        match name {
            CriterionName::Flenner => flenner(s, v, h, d),
            CriterionName::Bogomolov => bogomolov_restriction(s, v, h, d),
            CriterionName::Langer => langer(s, v, h, d, self.input),
            CriterionName::GeneralSurface => {
                check_degree(d)?;
                general_surface(s, v, &h.scale(&int(d)), &self.ctx, self.input)
            }
            CriterionName::PlaneGeneral => {
                if !s.is_p2() {
                    return Err(Error::WrongSurface {
                        expected: "the projective plane",
                    });
                }
                plane_general(v, d, self.depth)
            }
            CriterionName::HirzebruchLemma => hirzebruch_lemma(s, v, h, d),
        }
    }

    /// Whether the criterion makes sense for this input at all.
    pub fn applies(&self, name: CriterionName) -> bool {
        self.evaluate(name, 1).is_ok()
    }

    /// Smallest `d` in `[1, d_max]` satisfying the criterion.
    pub fn minimal_degree(&self, name: CriterionName, d_max: i64) -> Result<Option<i64>> {
        for d in 1..=d_max {
            if self.evaluate(name, d)?.satisfied {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }

    /// Every applicable criterion at every `d` in `[1, d_max]`, grouped by criterion.
    pub fn compare(&self, d_max: i64) -> Result<Vec<CriterionReport>> {
        let mut rows = Vec::new();
        for name in CriterionName::ALL {
            if !self.applies(name) {
                continue;
            }
            for d in 1..=d_max {
                rows.push(self.evaluate(name, d)?);
            }
        }
        Ok(rows)
    }

    /// Per applicable criterion, the row at its minimal degree (or `None`).
    pub fn minimal_rows(&self, d_max: i64) -> Result<Vec<(CriterionName, Option<CriterionReport>)>> {
        let mut out = Vec::new();
        for name in CriterionName::ALL {
            if !self.applies(name) {
                continue;
            }
            let row = match self.minimal_degree(name, d_max)? {
                Some(d) => Some(self.evaluate(name, d)?),
                None => None,
            };
            out.push((name, row));
        }
        Ok(out)
    }
}

pub const CSV_HEADER: &str = "criterion,name,d,lhs,rhs,satisfied,conclusion";

/// One CSV line (no trailing newline) in the `CSV_HEADER` layout.
pub fn csv_row(report: &CriterionReport) -> String {
    let d = report.degree.map(|d| d.to_string()).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{}",
        report.name.id(),
        report.name,
        d,
        report.lhs,
        report.rhs,
        report.satisfied,
        report.conclusion
    )
}

pub fn to_csv(rows: &[CriterionReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::minimizing_twist;
    use proptest::prelude::*;

    fn v(r: i64, e: i64, ch2: Q) -> ChernCharacter {
        ChernCharacter::p2i(r, e, ch2)
    }

    fn line() -> DivisorClass {
        DivisorClass::from_ints(&[1])
    }

    fn plane_input(x: ChernCharacter) -> CriterionInput {
        CriterionInput::new(SurfaceModel::p2(), x, TwistContext::p2_standard())
    }

    /// A custom rank-one lattice with `H^2 = n`, for the H^2 != 1 examples.
    fn lattice(n: i64) -> SurfaceModel {
        SurfaceModel::custom(vec![vec![n]], DivisorClass::from_ints(&[0]), 1).unwrap()
    }

    /// A character of slope zero with classical discriminant `delta`.
    fn with_delta(r: i64, delta: Q) -> ChernCharacter {
        ChernCharacter::p2(r, int(0), -delta * int(r))
    }

    #[test]
    fn flenner_examples() {
        let s = SurfaceModel::p2();
        let a = flenner(&s, &with_delta(2, int(1)), &line(), 1).unwrap();
        assert_eq!((a.lhs.clone(), a.rhs.clone(), a.satisfied), (int(0), int(-1), true));
        let b = flenner(&s, &with_delta(3, int(1)), &line(), 2).unwrap();
        assert_eq!((b.lhs.clone(), b.rhs.clone(), b.satisfied), (q(3, 2), int(0), true));
        let x = CriterionInput::new(lattice(3), with_delta(5, int(1)), TwistContext::untwisted(&lattice(3), line()).unwrap());
        assert_eq!(x.evaluate(CriterionName::Flenner, 1).unwrap().rhs, int(16));
        assert_eq!(x.minimal_degree(CriterionName::Flenner, 100).unwrap(), Some(17));
        assert_eq!(flenner(&s, &with_delta(2, int(1)), &line(), 0), Err(Error::BadDegree(0)));
        assert_eq!(a.conclusion, Conclusion::Semistable);
    }

    #[test]
    fn bogomolov_examples() {
        let x = plane_input(with_delta(2, int(1)));
        assert_eq!(x.evaluate(CriterionName::Bogomolov, 1).unwrap().rhs, int(5));
        assert_eq!(x.minimal_degree(CriterionName::Bogomolov, 10).unwrap(), Some(3));
        let y = plane_input(with_delta(3, int(1)));
        assert_eq!(y.evaluate(CriterionName::Bogomolov, 1).unwrap().rhs, int(10));
        assert_eq!(y.minimal_degree(CriterionName::Bogomolov, 10).unwrap(), Some(6));
        let z = plane_input(with_delta(2, int(0)));
        assert_eq!(z.minimal_degree(CriterionName::Bogomolov, 10).unwrap(), Some(1));
        assert_eq!(
            bogomolov_restriction(&SurfaceModel::p2(), &v(1, 0, int(0)), &line(), 3),
            Err(Error::RankTooSmall { rank: 1, min: 2 })
        );
        // r = 4: C(4,2) C(2,1) = 12.
        let w = plane_input(with_delta(4, int(1)));
        assert_eq!(w.evaluate(CriterionName::Bogomolov, 1).unwrap().rhs, int(12 * 4 + 1));
    }

    #[test]
    fn langer_examples() {
        assert_eq!(plane_input(with_delta(2, int(1))).minimal_degree(CriterionName::Langer, 100).unwrap(), Some(5));
        assert_eq!(plane_input(with_delta(2, int(10))).minimal_degree(CriterionName::Langer, 100).unwrap(), Some(41));
        let x = plane_input(with_delta(3, int(1)));
        assert_eq!(x.evaluate(CriterionName::Langer, 1).unwrap().rhs, int(6) + q(1, 12));
        assert_eq!(x.minimal_degree(CriterionName::Langer, 100).unwrap(), Some(13));
    }

    #[test]
    fn general_surface_examples() {
        let s = SurfaceModel::p2();
        let e = v(2, 0, int(-2));
        let a = general_surface(&s, &e, &DivisorClass::from_ints(&[5]), &TwistContext::p2_standard(), Conclusion::Stable).unwrap();
        assert_eq!((a.lhs.clone(), a.rhs.clone(), a.satisfied), (q(5, 2), q(9, 4), true));
        assert_eq!(a.degree, Some(5));
        assert!(a.companions.iter().all(|c| c.satisfied));
        let b = general_surface(&s, &e, &DivisorClass::from_ints(&[4]), &TwistContext::p2_standard(), Conclusion::Stable).unwrap();
        assert_eq!((b.lhs.clone(), b.satisfied), (int(2), false));

        let f1 = SurfaceModel::hirzebruch(1).unwrap();
        let h = SurfaceModel::class2(1, 2);
        let ctx = TwistContext::untwisted(&f1, h.clone()).unwrap();
        let w = ChernCharacter::new(2, SurfaceModel::class2(2, 4), int(0));
        assert_eq!(discriminant(&f1, &w, &ctx).unwrap(), q(1, 2));
        let c = general_surface(&f1, &w, &h, &ctx, Conclusion::Semistable).unwrap();
        assert_eq!(c.lhs, q(1, 2));
        assert_eq!(c.rhs, q(37, 12));
        assert!(!c.satisfied);
        // With Δ_H = 1/3 the right side is 25/12.
        let w3 = ChernCharacter::new(2, SurfaceModel::class2(2, 4), int(1));
        assert_eq!(discriminant(&f1, &w3, &ctx).unwrap(), q(1, 3));
        assert_eq!(general_surface(&f1, &w3, &h, &ctx, Conclusion::Semistable).unwrap().rhs, q(25, 12));
        assert_eq!(
            general_surface(&s, &v(1, 0, int(0)), &line(), &TwistContext::p2_standard(), Conclusion::Stable),
            Err(Error::RankTooSmall { rank: 1, min: 2 })
        );
    }

    #[test]
    fn plane_general_examples() {
        assert_eq!(plane_input(v(2, 0, int(-2))).minimal_degree(CriterionName::PlaneGeneral, 20).unwrap(), Some(4));
        assert_eq!(plane_input(with_delta(2, int(10))).minimal_degree(CriterionName::PlaneGeneral, 20).unwrap(), Some(10));
        let x = plane_input(v(2, 1, q(-3, 2)));
        assert_eq!(x.evaluate(CriterionName::PlaneGeneral, 1).unwrap().rhs, int(11));
        assert_eq!(x.minimal_degree(CriterionName::PlaneGeneral, 20).unwrap(), Some(4));
        let verified = plane_general(&v(2, 1, q(-3, 2)), 4, 8).unwrap();
        assert!(verified.hypotheses.iter().any(|h| h.contains("verified (Delta > delta")));
        let on_curve = plane_general(&v(2, 0, int(-2)), 4, 8).unwrap();
        assert!(on_curve.hypotheses.iter().any(|h| h.contains("NOT verified")));
        assert!(matches!(plane_general_strict(&v(2, 0, int(-2)), 4, 8), Err(Error::NotPicardRankTwo { .. })));
        assert!(plane_general_strict(&v(2, 1, q(-3, 2)), 4, 8).unwrap().satisfied);
        let f1 = SurfaceModel::hirzebruch(1).unwrap();
        assert!(matches!(
            plane_general(&ChernCharacter::new(2, SurfaceModel::class2(0, 0), int(-2)), 4, 8),
            Err(Error::WrongSurface { .. })
        ));
        let fx = CriterionInput::new(
            f1.clone(),
            ChernCharacter::new(2, f1.zero_class(), int(-2)),
            TwistContext::untwisted(&f1, SurfaceModel::class2(1, 2)).unwrap(),
        );
        assert!(!fx.applies(CriterionName::PlaneGeneral));
    }

    #[test]
    fn hirzebruch_lemma_examples() {
        let f1 = SurfaceModel::hirzebruch(1).unwrap();
        let h = SurfaceModel::class2(1, 2);
        let w = ChernCharacter::new(2, SurfaceModel::class2(2, 4), int(1));
        let a = hirzebruch_lemma(&f1, &w, &h, 1).unwrap();
        assert_eq!(a.rhs, q(4, 3));
        let x = CriterionInput::new(f1.clone(), w, TwistContext::untwisted(&f1, h.clone()).unwrap());
        assert_eq!(x.minimal_degree(CriterionName::HirzebruchLemma, 20).unwrap(), Some(2));
        let flat = CriterionInput::new(
            f1.clone(),
            ChernCharacter::new(2, SurfaceModel::class2(2, 4), int(3)),
            TwistContext::untwisted(&f1, h.clone()).unwrap(),
        );
        assert_eq!(discriminant(&f1, &flat.v, &flat.ctx).unwrap(), int(0));
        assert_eq!(flat.minimal_degree(CriterionName::HirzebruchLemma, 20).unwrap(), Some(1));

        let f2 = SurfaceModel::hirzebruch(2).unwrap();
        let h2 = SurfaceModel::class2(1, 3);
        let y = CriterionInput::new(
            f2.clone(),
            ChernCharacter::new(2, f2.zero_class(), int(-8)),
            TwistContext::untwisted(&f2, h2.clone()).unwrap(),
        );
        assert_eq!(discriminant(&f2, &y.v, &y.ctx).unwrap(), int(1));
        assert_eq!(y.minimal_degree(CriterionName::HirzebruchLemma, 20).unwrap(), Some(5));
        let rep = y.evaluate(CriterionName::HirzebruchLemma, 5).unwrap();
        assert_eq!(rep.companions.len(), 1);
        assert_eq!(
            hirzebruch_lemma(&f2, &y.v, &SurfaceModel::class2(1, 2), 3),
            Err(Error::NotAmple)
        );
        assert!(matches!(
            hirzebruch_lemma(&SurfaceModel::p2(), &v(2, 0, int(-2)), &line(), 3),
            Err(Error::WrongSurface { .. })
        ));
    }

    #[test]
    fn compare_regression() {
        let x = plane_input(v(2, 0, int(-2)));
        let mins: Vec<_> = x
            .minimal_rows(10)
            .unwrap()
            .into_iter()
            .map(|(n, r)| (n, r.and_then(|r| r.degree)))
            .collect();
        assert_eq!(
            mins,
            vec![
                (CriterionName::Flenner, Some(1)),
                (CriterionName::Bogomolov, Some(3)),
                (CriterionName::Langer, Some(5)),
                (CriterionName::GeneralSurface, Some(5)),
                (CriterionName::PlaneGeneral, Some(4)),
            ]
        );
        assert!(x.compare(0).unwrap().is_empty());
        let rows = x.compare(2).unwrap();
        assert_eq!(rows.len(), 10);
        let csv = to_csv(&rows[..2]);
        assert_eq!(
            csv,
            "criterion,name,d,lhs,rhs,satisfied,conclusion\nflenner,Flenner,1,0,-1,true,semistable\nflenner,Flenner,2,3/2,-1,true,semistable\n"
        );
        assert_eq!(x.minimal_degree(CriterionName::Langer, 1).unwrap(), None);
    }

    #[test]
    fn plane_general_never_worse_than_langer_for_rank_two() {
        for delta in 1..=20 {
            let x = plane_input(with_delta(2, int(delta)));
            let pg = x.minimal_degree(CriterionName::PlaneGeneral, 200).unwrap().unwrap();
            let la = x.minimal_degree(CriterionName::Langer, 200).unwrap().unwrap();
            assert!(pg <= la, "Delta = {delta}: {pg} > {la}");
        }
    }

    fn f_char() -> impl Strategy<Value = ChernCharacter> {
        (2i64..6, -10i64..10, -10i64..10, -40i64..40, 1i64..4)
            .prop_map(|(r, a, b, n, d)| ChernCharacter::new(r, SurfaceModel::class2(a, b), q(n, d)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn corollary_matches_theorem_at_minimizing_twist(m in 1u32..3, x in f_char(), hb in 0i64..4, d in 1i64..15) {
            let s = SurfaceModel::hirzebruch(m).unwrap();
            let h = SurfaceModel::class2(1, i64::from(m) + 1 + hb);
            let dmin = minimizing_twist(&s, &x, &h).unwrap();
            let ctx = TwistContext::new(&s, h.clone(), dmin).unwrap();
            let rep = general_surface(&s, &x, &h.scale(&int(d)), &ctx, Conclusion::Semistable).unwrap();
            let cor = rep.companions.iter().find(|c| c.label.starts_with("class dH")).unwrap();
            // Same inequality after subtracting the common term.
            prop_assert_eq!(&rep.lhs - &rep.rhs, &cor.lhs - &cor.rhs);
            prop_assert_eq!(rep.satisfied, cor.satisfied);
        }

        #[test]
        fn verdict_matches_wall_centers(m in 1u32..3, x in f_char(), ca in 0i64..4, cb in 0i64..8, dx in -3i64..3, dy in -3i64..3) {
            let s = SurfaceModel::hirzebruch(m).unwrap();
            let h = SurfaceModel::class2(1, i64::from(m) + 1);
            let ctx = TwistContext::new(&s, h.clone(), DivisorClass::new(vec![q(dx, 2), q(dy, 3)])).unwrap();
            let c = SurfaceModel::class2(ca, cb);
            prop_assume!(s.intersect(&h, &c).unwrap().is_positive());
            let rep = general_surface(&s, &x, &c, &ctx, Conclusion::Semistable).unwrap();
            let rw = restriction_wall(&s, &x, &c, &ctx).unwrap();
            let gw = gieseker_bound_wall(&s, &x, &ctx).unwrap();
            prop_assert_eq!(rep.satisfied, rw.center < gw.center);
            prop_assert_eq!(rep.satisfied, rep.lhs > rep.rhs);
        }
    }
}
