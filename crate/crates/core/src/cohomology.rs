//! Cohomology of general sheaves on the plane and on Hirzebruch surfaces, of
//! their restrictions to curves, and the Brill-Noether numbers that compare
//! the two.
//!
//! Restrictions are read off the long exact sequence of
//! `0 -> E(-C) -> E -> E|_C -> 0`. Writing `a_i = h^i(E(-C))`, `b_i = h^i(E)`
//! and `k` for the rank of the connecting map `H^0(E|_C) -> H^1(E(-C))`:
//!
//! ```text
//! h0(E|_C) = b0 - a0 + k
//! h1(E|_C) = b1 - a1 + k + a2 - b2
//! ```
//!
//! `k` is forced when `a1 = 0` (then `k = 0`) or `b1 = 0` (then `k = a1`);
//! otherwise the sequence alone does not decide it.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::chern::{classical_discriminant, euler_char_p2, euler_characteristic, p2_invariants, tensor_line, ChernCharacter, TwistContext};
use crate::criteria::{general_surface, plane_general, Conclusion};
use crate::error::{Error, Result};
use crate::rational::{int, is_integer, q, serde_q, Q};
use crate::surface::{DivisorClass, SurfaceModel};

/// Upper bound on the number of `E -> E(-M)` peeling steps on `F_m`.
pub const PEEL_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Betti {
    Known(Q),
    Undetermined,
}

impl Betti {
    pub fn known(&self) -> Option<&Q> {
        match self {
            Betti::Known(x) => Some(x),
            Betti::Undetermined => None,
        }
    }

    fn is_nonzero(&self) -> bool {
        matches!(self, Betti::Known(x) if !x.is_zero())
    }
}

impl From<Q> for Betti {
    fn from(x: Q) -> Self {
        Betti::Known(x)
    }
}

impl fmt::Display for Betti {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Betti::Known(x) => write!(f, "{x}"),
            Betti::Undetermined => f.write_str("undetermined"),
        }
    }
}

impl Serialize for Betti {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub h0: Betti,
    pub h1: Betti,
    pub h2: Betti,
}

impl BettiTable {
    pub fn new(h0: Q, h1: Q, h2: Q) -> Self {
        BettiTable {
            h0: h0.into(),
            h1: h1.into(),
            h2: h2.into(),
        }
    }

    /// The table with all three groups known.
    pub fn values(&self) -> Option<[Q; 3]> {
        Some([self.h0.known()?.clone(), self.h1.known()?.clone(), self.h2.known()?.clone()])
    }

    /// `h0 - h1 + h2` when all three are known.
    pub fn euler_characteristic(&self) -> Option<Q> {
        self.values().map(|[a, b, c]| a - b + c)
    }

    fn dual(self) -> Self {
        BettiTable {
            h0: self.h2,
            h1: self.h1,
            h2: self.h0,
        }
    }

    /// Degrees `i` with `h^i` known and nonzero.
    fn nonzero_degrees(&self) -> Vec<u8> {
        [&self.h0, &self.h1, &self.h2]
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_nonzero())
            .map(|(i, _)| i as u8)
            .collect()
    }
}

/// Cohomology of the general sheaf of rank at least two on the plane: at most
/// one group is nonzero, chosen by the sign of `χ` and whether `μ > -3`.
pub fn gh_betti_p2(v: &ChernCharacter) -> Result<BettiTable> {
    let (mu, _) = p2_invariants(v)?;
    if v.ch0 < 2 {
        return Err(Error::RankTooSmall { rank: v.ch0, min: 2 });
    }
    let chi = euler_char_p2(v)?;
    let zero = Q::zero;
    Ok(if chi.is_negative() {
        BettiTable::new(zero(), -chi, zero())
    } else if mu > int(-3) {
        BettiTable::new(chi, zero(), zero())
    } else {
        BettiTable::new(zero(), zero(), chi)
    })
}

/// Result of the Hirzebruch computation with the branches it went through.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HirzebruchBetti {
    pub table: BettiTable,
    pub peels: usize,
    pub trace: Vec<String>,
}

fn hirzebruch_classes(surface: &SurfaceModel) -> Result<(u32, DivisorClass, DivisorClass)> {
    let m = surface.hirzebruch_parameter().ok_or(Error::WrongSurface {
        expected: "a Hirzebruch surface",
    })?;
    Ok((m, SurfaceModel::class2(1, 0), SurfaceModel::class2(0, 1)))
}

/// Betti numbers of a general stable sheaf on `F_m`, with `ν = c1 / r`:
///
/// - `ν.F = -1`: only `h1 = -χ`;
/// - `ν.F > -1`: `h2 = 0`; if `ν.M >= -1` a single group carries `χ`,
///   otherwise `h0(E) = h0(E(-M))` is peeled until `ν.M >= -1`;
/// - `ν.F < -1`: Serre duality with `K = -2M - (m+2)F` for rank at least two,
///   undetermined `h1, h2` for line bundles.
pub fn ch_betti_hirzebruch(surface: &SurfaceModel, v: &ChernCharacter) -> Result<HirzebruchBetti> {
    let (_, m_class, f_class) = hirzebruch_classes(surface)?;
    if v.ch0 <= 0 {
        return Err(Error::RankZero);
    }
    let r = v.rank();
    let nu_f = surface.intersect(&v.ch1, &f_class)? / &r;
    let nu_m = surface.intersect(&v.ch1, &m_class)? / &r;
    let chi = euler_characteristic(surface, v)?;
    let minus_one = int(-1);
    let mut trace = vec![format!("nu.F = {nu_f}, nu.M = {nu_m}, chi = {chi}")];
    let zero = Q::zero;

    if nu_f == minus_one {
        trace.push("nu.F = -1: only h1 survives".into());
        return Ok(HirzebruchBetti {
            table: BettiTable::new(zero(), -chi, zero()),
            peels: 0,
            trace,
        });
    }
    if nu_f > minus_one {
        if nu_m >= minus_one {
            trace.push("nu.F > -1, nu.M >= -1: single group, sign of chi".into());
            let table = if chi.is_negative() {
                BettiTable::new(zero(), -chi, zero())
            } else {
                BettiTable::new(chi, zero(), zero())
            };
            return Ok(HirzebruchBetti { table, peels: 0, trace });
        }
        trace.push("nu.F > -1, nu.M < -1: h0(E) = h0(E(-M))".into());
        let (h0, peels) = peeled_h0(surface, v, &m_class, &f_class)?;
        trace.push(format!("{peels} peel(s), h0 = {h0}"));
        let h1 = &h0 - &chi;
        let table = if h1.is_negative() {
            trace.push("h0 - chi < 0: inconsistent with a general stable sheaf".into());
            BettiTable {
                h0: Betti::Undetermined,
                h1: Betti::Undetermined,
                h2: Betti::Known(zero()),
            }
        } else {
            BettiTable::new(h0, h1, zero())
        };
        return Ok(HirzebruchBetti { table, peels, trace });
    }
    if v.ch0 == 1 {
        trace.push("nu.F < -1 for a line bundle: h0 = 0, the rest undetermined".into());
        return Ok(HirzebruchBetti {
            table: BettiTable {
                h0: Betti::Known(zero()),
                h1: Betti::Undetermined,
                h2: Betti::Undetermined,
            },
            peels: 0,
            trace,
        });
    }
    trace.push("nu.F < -1: Serre duality with E^v(K)".into());
    let dual = ChernCharacter::new(v.ch0, -&v.ch1, v.ch2.clone());
    let dual = tensor_line(surface, &dual, surface.canonical_class())?;
    let inner = ch_betti_hirzebruch(surface, &dual)?;
    trace.extend(inner.trace.into_iter().map(|t| format!("dual: {t}")));
    Ok(HirzebruchBetti {
        table: inner.table.dual(),
        peels: inner.peels,
        trace,
    })
}

/// `h0` by repeated `E -> E(-M)` until `ν.M >= -1` (then `max(χ, 0)`) or `ν.F <= -1` (then 0).
fn peeled_h0(surface: &SurfaceModel, v: &ChernCharacter, m_class: &DivisorClass, f_class: &DivisorClass) -> Result<(Q, usize)> {
    let r = v.rank();
    let minus_m = -m_class;
    let mut cur = v.clone();
    for peels in 0..=PEEL_LIMIT {
        let nu_f = surface.intersect(&cur.ch1, f_class)? / &r;
        let nu_m = surface.intersect(&cur.ch1, m_class)? / &r;
        if nu_f <= int(-1) {
            return Ok((Q::zero(), peels));
        }
        if nu_m >= int(-1) {
            let chi = euler_characteristic(surface, &cur)?;
            return Ok((std::cmp::max(chi, Q::zero()), peels));
        }
        cur = tensor_line(surface, &cur, &minus_m)?;
    }
    Err(Error::NonTermination(PEEL_LIMIT))
}

/// Betti numbers of the general sheaf on a supported surface.
pub fn general_betti(surface: &SurfaceModel, v: &ChernCharacter) -> Result<BettiTable> {
    if surface.is_p2() {
        gh_betti_p2(v)
    } else if surface.hirzebruch_parameter().is_some() {
        Ok(ch_betti_hirzebruch(surface, v)?.table)
    } else {
        Err(Error::UnsupportedSurface)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictedBetti {
    pub sheaf: BettiTable,
    pub twisted: BettiTable,
    #[serde(with = "serde_q")]
    pub h0: Q,
    #[serde(with = "serde_q")]
    pub h1: Q,
    /// `(i, j)` with `H^i(E)` and `H^j(E(-C))` the nonzero groups, when unique.
    pub case: Option<(u8, u8)>,
}

/// `h0(E|_C)` and `h1(E|_C)` for the general `E`, or `UndeterminedCase`.
pub fn restricted_betti(surface: &SurfaceModel, v: &ChernCharacter, c: &DivisorClass) -> Result<RestrictedBetti> {
    let sheaf = general_betti(surface, v)?;
    let twisted = general_betti(surface, &tensor_line(surface, v, &-c)?)?;
    let case = match (sheaf.nonzero_degrees().as_slice(), twisted.nonzero_degrees().as_slice()) {
        ([i], [j]) => Some((*i, *j)),
        _ => None,
    };
    let index = |t: &BettiTable| t.nonzero_degrees().first().copied().unwrap_or(0);
    let (Some([b0, b1, b2]), Some([a0, a1, a2])) = (sheaf.values(), twisted.values()) else {
        return Err(Error::UndeterminedCase {
            e_index: index(&sheaf),
            twist_index: index(&twisted),
            h0_lo: "unknown".into(),
            h0_hi: "unknown".into(),
        });
    };
    let k = if a1.is_zero() {
        Q::zero()
    } else if b1.is_zero() {
        a1.clone()
    } else {
        let lo = std::cmp::max(&a1 - &b1, Q::zero());
        return Err(Error::UndeterminedCase {
            e_index: index(&sheaf),
            twist_index: index(&twisted),
            h0_lo: (&b0 - &a0 + lo).to_string(),
            h0_hi: (&b0 - &a0 + &a1).to_string(),
        });
    };
    let h0 = &b0 - &a0 + &k;
    let h1 = &b1 - &a1 + &k + &a2 - &b2;
    Ok(RestrictedBetti {
        sheaf,
        twisted,
        h0,
        h1,
        case,
    })
}

fn hypothesis_failed(reason: impl Into<String>, rho: Option<&Q>) -> Error {
    Error::HypothesisFailed {
        reason: reason.into(),
        rho: rho.map(|r| r.to_string()),
    }
}

/// `h0(E|_C) = r + 3e/2 + ch2` and `h1(E|_C) = r + (3/2)(e - dr) + ch2 - de + rd^2/2`
/// on a plane curve of degree `d`, valid when `H^0(E) != 0` and `H^2(E(-C)) != 0`.
pub fn restricted_closed_form_p2(v: &ChernCharacter, d: i64) -> Result<(Q, Q)> {
    if d < 1 {
        return Err(Error::BadDegree(d));
    }
    let e = v.p2_degree()?.clone();
    let chi = euler_char_p2(v)?;
    if !is_integer(&chi) {
        return Err(hypothesis_failed(format!("chi(E) = {chi} is not an integer"), None));
    }
    let sheaf = gh_betti_p2(v)?;
    let twisted = gh_betti_p2(&tensor_line(&SurfaceModel::p2(), v, &DivisorClass::from_ints(&[-d]))?)?;
    if !sheaf.h0.is_nonzero() {
        return Err(hypothesis_failed("H^0(E) = 0 for the general E", None));
    }
    if !twisted.h2.is_nonzero() {
        return Err(hypothesis_failed("H^2(E(-C)) = 0 for the general E", None));
    }
    let (r, dq) = (v.rank(), int(d));
    let h0 = &r + q(3, 2) * &e + &v.ch2;
    let h1 = &r + q(3, 2) * (&e - &dq * &r) + &v.ch2 - &dq * &e + &r * &dq * &dq / int(2);
    Ok((h0, h1))
}

/// `r^2(g-1) + 1 - k(k - e + r(g-1))`.
pub fn brill_noether_rho(r: &Q, e: &Q, g: &Q, k: &Q) -> Q {
    let g1 = g - int(1);
    r * r * &g1 + int(1) - k * (k - e + r * &g1)
}

/// The same number as `dim U_C(r, e) - k(k - χ)` with `χ = e + r(1 - g)`.
pub fn brill_noether_rho_via_chi(r: &Q, e: &Q, g: &Q, k: &Q) -> Q {
    let dim_u = r * r * (g - int(1)) + int(1);
    let chi = e + r * (int(1) - g);
    dim_u - k * (k - chi)
}

/// Which hypotheses of an unexpected-sections statement hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gate {
    pub label: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BnReport {
    #[serde(with = "serde_q")]
    pub r: Q,
    #[serde(with = "serde_q")]
    pub e: Q,
    #[serde(with = "serde_q")]
    pub g: Q,
    #[serde(with = "serde_q")]
    pub k: Q,
    #[serde(with = "serde_q")]
    pub rho: Q,
    pub violating: bool,
    pub gates: Vec<Gate>,
    pub hypotheses: Vec<String>,
}

impl BnReport {
    pub fn gates_pass(&self) -> bool {
        self.gates.iter().all(|g| g.passed)
    }

    fn first_failure(&self) -> Option<&Gate> {
        self.gates.iter().find(|g| !g.passed)
    }
}

fn gate(label: &str, passed: bool) -> Gate {
    Gate {
        label: label.to_string(),
        passed,
    }
}

/// Brill-Noether data of `E|_C` for a plane curve of degree `d`, with `k = h0(E|_C)`
/// from the exact sequence. Always returns the numbers; gates are reported, not enforced.
pub fn brill_noether_report_p2(v: &ChernCharacter, d: i64, depth: u32) -> Result<BnReport> {
    if d < 1 {
        return Err(Error::BadDegree(d));
    }
    let p2 = SurfaceModel::p2();
    let deg = v.p2_degree()?.clone();
    let c = DivisorClass::from_ints(&[d]);
    let restricted = restricted_betti(&p2, v, &c)?;
    let r = v.rank();
    let e = int(d) * deg;
    let g = p2.genus_of_curve(&c)?;
    let k = restricted.h0.clone();
    let rho = brill_noether_rho(&r, &e, &g, &k);
    let chi = euler_char_p2(v)?;
    let closed_form = restricted.sheaf.h0.is_nonzero() && restricted.twisted.h2.is_nonzero();
    let stable_restriction = plane_general(v, d, depth)?;
    let gates = vec![
        gate("H^0(E) != 0 and H^2(E(-C)) != 0", closed_form),
        gate("chi(E) > r", chi > r),
        gate("d^2 > 8 Delta + 4 (restriction stable)", stable_restriction.satisfied),
    ];
    let mut hypotheses = vec!["E general in moduli".to_string(), "C general of degree d".to_string()];
    hypotheses.extend(stable_restriction.hypotheses.into_iter().filter(|h| h.contains("Picard")));
    Ok(BnReport {
        violating: rho.is_negative(),
        r,
        e,
        g,
        k,
        rho,
        gates,
        hypotheses,
    })
}

/// [`brill_noether_report_p2`] that fails with the diagnostic `ρ` when a gate fails.
pub fn unexpected_sections_p2(v: &ChernCharacter, d: i64, depth: u32) -> Result<BnReport> {
    let report = brill_noether_report_p2(v, d, depth)?;
    if let Some(failed) = report.first_failure() {
        return Err(hypothesis_failed(failed.label.clone(), Some(&report.rho)));
    }
    Ok(report)
}

/// First `d <= d_max` at which every gate passes and `ρ < 0`.
pub fn first_violating_degree_p2(v: &ChernCharacter, d_max: i64, depth: u32) -> Result<Option<i64>> {
    for d in 1..=d_max {
        match brill_noether_report_p2(v, d, depth) {
            Ok(r) if r.gates_pass() && r.violating => return Ok(Some(d)),
            Ok(_) | Err(Error::UndeterminedCase { .. }) => {}
            Err(other) => return Err(other),
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HirzebruchBnReport {
    pub report: BnReport,
    /// `r^2(g-1) + 1`.
    #[serde(with = "serde_q")]
    pub lhs: Q,
    /// `χ(χ - e + rg)`, taken as written.
    #[serde(with = "serde_q")]
    pub rhs: Q,
    pub inequality_holds: bool,
}

/// On `F_m` with `H = aM + bF`, tests `r^2(g-1) + 1 < χ(χ - e + rg)` for `C = dH`,
/// `e = c1.C`, `g` the genus of `C`. The report's `ρ` uses `k = χ(E)`.
pub fn unexpected_sections_hirzebruch(surface: &SurfaceModel, v: &ChernCharacter, h: &DivisorClass, d: i64) -> Result<HirzebruchBnReport> {
    let report = hirzebruch_bn_report(surface, v, h, d)?;
    if let Some(failed) = report.report.first_failure() {
        return Err(hypothesis_failed(failed.label.clone(), Some(&report.report.rho)));
    }
    Ok(report)
}

/// [`unexpected_sections_hirzebruch`] without enforcing the gates.
pub fn hirzebruch_bn_report(surface: &SurfaceModel, v: &ChernCharacter, h: &DivisorClass, d: i64) -> Result<HirzebruchBnReport> {
    if d < 1 {
        return Err(Error::BadDegree(d));
    }
    let (_, _, f_class) = hirzebruch_classes(surface)?;
    if !surface.is_ample(h)? {
        return Err(Error::NotAmple);
    }
    if v.ch0 < 1 {
        return Err(Error::RankZero);
    }
    let c = h.scale(&int(d));
    let r = v.rank();
    let e = surface.intersect(&v.ch1, &c)?;
    let g = surface.genus_of_curve(&c)?;
    let chi = euler_characteristic(surface, v)?;
    let lhs = &r * &r * (&g - int(1)) + int(1);
    let rhs = &chi * (&chi - &e + &r * &g);
    let inequality_holds = lhs < rhs;
    let rho = brill_noether_rho(&r, &e, &g, &chi);

    let betti = ch_betti_hirzebruch(surface, v)?.table;
    let only_h0 = betti.h0.is_nonzero() && betti.h1 == Betti::Known(Q::zero()) && betti.h2 == Betti::Known(Q::zero());
    let nu_f_negative = surface.intersect(&v.ch1, &f_class)?.is_negative();
    let stable_restriction = if v.ch0 >= 2 {
        let ctx = TwistContext::minimizing(surface, h.clone(), v)?;
        general_surface(surface, v, &c, &ctx, Conclusion::Semistable)?.satisfied
    } else {
        false
    };
    let gates = vec![
        gate("a >= 2", h[0] >= int(2)),
        gate("nu.F < 0", nu_f_negative),
        gate("E has only H^0", only_h0),
        gate("chi(E) > r", chi > r),
        gate("restriction (semi)stable by the general surface theorem", stable_restriction),
    ];
    let report = BnReport {
        violating: inequality_holds && stable_restriction,
        r,
        e,
        g,
        k: chi,
        rho,
        gates,
        hypotheses: vec!["E general in moduli".into(), "C general in |dH|".into()],
    };
    Ok(HirzebruchBnReport {
        report,
        lhs,
        rhs,
        inequality_holds,
    })
}

/// Expected dimension `2r^2 Δ - (r^2 - 1)χ(O_X)` of the moduli space.
pub fn ogrady_dimension(surface: &SurfaceModel, v: &ChernCharacter) -> Result<Q> {
    if v.ch0 <= 0 {
        return Err(Error::RankZero);
    }
    let r2 = int(v.ch0 * v.ch0);
    let delta = classical_discriminant(surface, v)?;
    Ok(int(2) * &r2 * delta - (r2 - int(1)) * int(surface.chi_structure_sheaf()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionDims {
    #[serde(with = "serde_q")]
    pub moduli: Q,
    #[serde(with = "serde_q")]
    pub curve_moduli: Q,
    #[serde(with = "serde_q")]
    pub codimension: Q,
}

/// Dimension of `M(v)`, of `U_C(r, e)` (`r^2(g-1) + 1`), and their difference.
pub fn restriction_map_dims(surface: &SurfaceModel, v: &ChernCharacter, c: &DivisorClass) -> Result<RestrictionDims> {
    let moduli = if surface.is_p2() {
        let (_, delta) = p2_invariants(v)?;
        crate::p2x::expected_dimension(v.ch0, &delta)
    } else {
        ogrady_dimension(surface, v)?
    };
    let g = surface.genus_of_curve(c)?;
    let r = v.rank();
    let curve_moduli = &r * &r * (g - int(1)) + int(1);
    Ok(RestrictionDims {
        codimension: &curve_moduli - &moduli,
        moduli,
        curve_moduli,
    })
}

/// Number of integer values in a closed rational range, for diagnostics.
pub fn integer_count(lo: &Q, hi: &Q) -> i64 {
    let n = hi.floor() - lo.ceil() + int(1);
    n.to_integer().to_i64().unwrap_or(0).max(0)
}
