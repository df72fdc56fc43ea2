//! Exceptional bundles on the projective plane and the invariants built on them.
//!
//! Exceptional slopes are generated from the integers by the dyadic rule
//! `ε((2p+1)/2^(q+1)) = ε(p/2^q) ⋆ ε((p+1)/2^q)` with
//! `α ⋆ β = (α+β)/2 + (Δ_β - Δ_α)/(3 + α - β)`. The rank of `E_α` is the
//! denominator of `α`, and `Δ_α = (1 - 1/r^2)/2`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::chern::{p2_invariants, ChernCharacter};
use crate::error::{Error, Result};
use crate::quadratic::QuadraticNumber;
use crate::rational::{floor, half, hilbert_p2, int, q, serde_display, serde_q, Q};

/// Search depth used when the caller has no preference.
pub const DEFAULT_DEPTH: u32 = 12;
/// Hard cap on enumeration depth; level `q` holds `2^q` slopes per unit interval.
pub const MAX_ENUMERATION_DEPTH: u32 = 16;

/// Position `p / 2^q` in the dyadic generation tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DyadicAddress {
    pub p: i64,
    pub q: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalSlope {
    #[serde(with = "serde_q")]
    pub alpha: Q,
    #[serde(serialize_with = "serde_display")]
    pub rank: BigInt,
    #[serde(with = "serde_q")]
    pub discriminant: Q,
    pub dyadic: DyadicAddress,
}

impl ExceptionalSlope {
    fn from_alpha(alpha: Q, dyadic: DyadicAddress) -> Self {
        let rank = alpha.denom().clone();
        let discriminant = exceptional_discriminant(&rank);
        ExceptionalSlope {
            alpha,
            rank,
            discriminant,
            dyadic,
        }
    }

    fn integer(n: i64) -> Self {
        Self::from_alpha(int(n), DyadicAddress { p: n, q: 0 })
    }

    fn translate(&self, n: i64) -> Self {
        let shift = i64::checked_shl(n, self.dyadic.q).expect("dyadic address overflow");
        ExceptionalSlope {
            alpha: &self.alpha + int(n),
            rank: self.rank.clone(),
            discriminant: self.discriminant.clone(),
            dyadic: DyadicAddress {
                p: self.dyadic.p + shift,
                q: self.dyadic.q,
            },
        }
    }

    /// Half-width of the interval `I_α`.
    pub fn x_alpha(&self) -> QuadraticNumber {
        x_alpha(self)
    }

    /// Open interval `(α - x_α, α + x_α)`.
    pub fn interval(&self) -> (QuadraticNumber, QuadraticNumber) {
        let x = x_alpha(self);
        (x.neg().add_rational(&self.alpha), x.add_rational(&self.alpha))
    }

    pub fn interval_contains(&self, x: &QuadraticNumber) -> bool {
        let (lo, hi) = self.interval();
        lo < *x && *x < hi
    }

    /// `(r, rα, r(α^2/2 - Δ_α))` when the rank fits a machine integer.
    pub fn character(&self) -> Option<ChernCharacter> {
        let r = self.rank.to_i64()?;
        let rq = int(r);
        let ch2 = &rq * (&self.alpha * &self.alpha / int(2) - &self.discriminant);
        Some(ChernCharacter::p2(r, &rq * &self.alpha, ch2))
    }
}

fn exceptional_discriminant(rank: &BigInt) -> Q {
    let r = Q::from_integer(rank.clone());
    half() * (int(1) - int(1) / (&r * &r))
}

fn star(a: &ExceptionalSlope, b: &ExceptionalSlope) -> Q {
    (&a.alpha + &b.alpha) / int(2) + (&b.discriminant - &a.discriminant) / (int(3) + &a.alpha - &b.alpha)
}

/// `ε(p / 2^q)`.
pub fn exceptional_from_dyadic(p: i64, q: u32) -> Result<ExceptionalSlope> {
    if q > 62 || (q > 0 && p % 2 == 0) {
        return Err(Error::BadDyadic { p, q });
    }
    let n = p.div_euclid(1 << q);
    let k = p.rem_euclid(1 << q);
    if q == 0 {
        return Ok(ExceptionalSlope::integer(p));
    }
    // Binary descent from [ε(0), ε(1)] towards k / 2^q.
    let mut lo = ExceptionalSlope::integer(0);
    let mut hi = ExceptionalSlope::integer(1);
    let (mut lo_pos, mut level) = (0i64, 0u32);
    loop {
        level += 1;
        let mid_pos = 2 * lo_pos + 1;
        let alpha = star(&lo, &hi);
        let mid = ExceptionalSlope::from_alpha(alpha, DyadicAddress { p: mid_pos, q: level });
        let target = k >> (q - level);
        let exact = k & ((1i64 << (q - level)) - 1) == 0;
        if exact && target == mid_pos {
            return Ok(mid.translate(n));
        }
        if k < mid_pos << (q - level) {
            hi = mid;
            lo_pos *= 2;
        } else {
            lo = mid;
            lo_pos = mid_pos;
        }
    }
}

/// Exceptional slopes `ε(p/2^q)` in `[0, 1]` for all `q <= depth`, in increasing order.
fn unit_table(depth: u32) -> Vec<ExceptionalSlope> {
    let mut level = vec![ExceptionalSlope::integer(0), ExceptionalSlope::integer(1)];
    for qd in 1..=depth {
        let mut next = Vec::with_capacity(2 * level.len() - 1);
        for (i, pair) in level.windows(2).enumerate() {
            next.push(pair[0].clone());
            let alpha = star(&pair[0], &pair[1]);
            next.push(ExceptionalSlope::from_alpha(
                alpha,
                DyadicAddress {
                    p: 2 * i as i64 + 1,
                    q: qd,
                },
            ));
        }
        next.push(level.last().expect("nonempty").clone());
        level = next;
    }
    level
}

/// All exceptional slopes of depth at most `depth` strictly inside `(lo, hi)`, sorted.
pub fn enumerate_exceptional(depth: u32, lo: &Q, hi: &Q) -> Result<Vec<ExceptionalSlope>> {
    if depth > MAX_ENUMERATION_DEPTH {
        return Err(Error::DepthTooLarge(depth, MAX_ENUMERATION_DEPTH));
    }
    if lo >= hi {
        return Ok(Vec::new());
    }
    let table = unit_table(depth);
    let first = floor(lo).to_i64().ok_or(Error::DepthTooLarge(depth, MAX_ENUMERATION_DEPTH))?;
    let last = floor(hi).to_i64().ok_or(Error::DepthTooLarge(depth, MAX_ENUMERATION_DEPTH))?;
    let mut out = Vec::new();
    for n in first..=last {
        // Skip the right endpoint of each unit copy; it is the next copy's left endpoint.
        for e in &table[..table.len() - 1] {
            let t = e.translate(n);
            if &t.alpha > lo && &t.alpha < hi {
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// `x_α = (3 - √(5 + 8Δ_α)) / 2`.
pub fn x_alpha(e: &ExceptionalSlope) -> QuadraticNumber {
    QuadraticNumber::new(q(3, 2), q(-1, 2), int(5) + int(8) * &e.discriminant)
        .expect("5 + 8Δ_α > 0")
}

fn plane_rank_positive(v: &ChernCharacter) -> Result<(Q, Q)> {
    let (mu, delta) = p2_invariants(v)?;
    if v.ch0 < 0 {
        return Err(Error::RankZero);
    }
    Ok((mu, delta))
}

/// The larger root `μ_0 = (-3 + √(5 + 8Δ))/2 - μ` of `P(x + μ) - Δ = 1/2`.
pub fn mu0(v: &ChernCharacter) -> Result<QuadraticNumber> {
    let (mu, delta) = plane_rank_positive(v)?;
    mu0_from_invariants(&mu, &delta)
}

pub fn mu0_from_invariants(mu: &Q, delta: &Q) -> Result<QuadraticNumber> {
    let radicand = int(5) + int(8) * delta;
    if radicand.is_negative() {
        return Err(Error::NoRealRoot(radicand.to_string()));
    }
    QuadraticNumber::new(q(-3, 2) - mu, half(), radicand)
}

/// The exceptional slope whose open interval contains `x`.
///
/// Descends the generation tree between consecutive integers; gives up with
/// `DepthExceeded` once `depth` levels are exhausted (points of the Cantor-like
/// complement are never captured).
pub fn find_interval(x: &QuadraticNumber, depth: u32) -> Result<ExceptionalSlope> {
    let n = x.floor().to_i64().ok_or(Error::DepthExceeded(depth))?;
    let mut lo = ExceptionalSlope::integer(n);
    let mut hi = ExceptionalSlope::integer(n + 1);
    for e in [&lo, &hi] {
        if e.interval_contains(x) {
            return Ok(e.clone());
        }
    }
    let mut lo_pos = 0i64;
    for level in 1..=depth {
        let mid_pos = 2 * lo_pos + 1;
        let alpha = star(&lo, &hi);
        let mid = ExceptionalSlope::from_alpha(alpha, DyadicAddress { p: mid_pos + (n << level), q: level });
        if mid.interval_contains(x) {
            return Ok(mid);
        }
        if x.compare_rational(&mid.alpha) == Ordering::Less {
            hi = mid;
            lo_pos *= 2;
        } else {
            lo = mid;
            lo_pos = mid_pos;
        }
    }
    Err(Error::DepthExceeded(depth))
}

/// `δ(μ) = P(-|μ - α|) - Δ_α` for the exceptional `α` with `μ ∈ I_α`.
pub fn dlp_delta(mu: &Q, depth: u32) -> Result<Q> {
    let e = find_interval(&QuadraticNumber::rational(mu.clone()), depth)?;
    let gap = (mu - &e.alpha).abs();
    Ok(hilbert_p2(&-gap) - &e.discriminant)
}

/// `Δ(v) > δ(μ(v))`, the condition for the moduli space to have Picard rank two.
pub fn has_picard_rank_two(v: &ChernCharacter, depth: u32) -> Result<bool> {
    let (mu, delta) = plane_rank_positive(v)?;
    Ok(delta > dlp_delta(&mu, depth)?)
}

/// `r^2 (2Δ - 1) + 1` with no existence check.
pub fn expected_dimension(rank: i64, delta: &Q) -> Q {
    int(rank * rank) * (int(2) * delta - int(1)) + int(1)
}

/// Dimension of the moduli space, after checking `Δ >= δ(μ)`.
pub fn moduli_dimension_p2(v: &ChernCharacter, depth: u32) -> Result<Q> {
    let (mu, delta) = plane_rank_positive(v)?;
    let dlp = dlp_delta(&mu, depth)?;
    if delta < dlp {
        return Err(Error::BelowDlpCurve {
            delta: delta.to_string(),
            dlp: dlp.to_string(),
        });
    }
    Ok(expected_dimension(v.ch0, &delta))
}

/// The exceptional slope whose interval contains `μ_0(v)`.
pub fn corresponding_exceptional(v: &ChernCharacter, depth: u32) -> Result<ExceptionalSlope> {
    find_interval(&mu0(v)?, depth)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingSign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrthogonalInvariants {
    #[serde(with = "serde_q")]
    pub mu_plus: Q,
    #[serde(with = "serde_q")]
    pub delta_plus: Q,
    pub exceptional: ExceptionalSlope,
    /// `χ(v, E_α) = r r_α (P(α - μ) - Δ - Δ_α)`.
    #[serde(with = "serde_q")]
    pub pairing: Q,
    pub case: PairingSign,
}

/// The associated quadratic `Q_u(x) = P(x + μ_u) - Δ_u`.
pub fn associated_quadratic(mu: &Q, delta: &Q, x: &Q) -> Q {
    hilbert_p2(&(x + mu)) - delta
}

pub fn orthogonal_invariants(v: &ChernCharacter, depth: u32) -> Result<OrthogonalInvariants> {
    let (mu, delta) = plane_rank_positive(v)?;
    let e = corresponding_exceptional(v, depth)?;
    let (alpha, d_alpha) = (&e.alpha, &e.discriminant);
    let pairing = v.rank() * Q::from_integer(e.rank.clone()) * (hilbert_p2(&(alpha - &mu)) - &delta - d_alpha);
    let (case, mu_plus) = match pairing.cmp(&Q::zero()) {
        Ordering::Less => {
            // Q_v meets the parabola of slope -α.
            let denom = &mu + alpha;
            if denom.is_zero() {
                return Err(Error::SingularCase("mu(v) + alpha = 0"));
            }
            let m = (&delta - d_alpha) / denom - q(3, 2) + (alpha - &mu) / int(2);
            (PairingSign::Negative, m)
        }
        Ordering::Equal => (PairingSign::Zero, alpha.clone()),
        Ordering::Greater => {
            // Q_v meets the parabola of slope -α - 3 with the same discriminant.
            let denom = &mu + alpha + int(3);
            if denom.is_zero() {
                return Err(Error::SingularCase("mu(v) + alpha + 3 = 0"));
            }
            let m = (&delta - d_alpha) / denom + (alpha - &mu) / int(2);
            (PairingSign::Positive, m)
        }
    };
    let delta_plus = match case {
        PairingSign::Zero => d_alpha.clone(),
        _ => associated_quadratic(&mu, &delta, &mu_plus),
    };
    Ok(OrthogonalInvariants {
        mu_plus,
        delta_plus,
        exceptional: e,
        pairing,
        case,
    })
}

/// `s_0 = -μ^+ - 3/2`.
pub fn effective_wall_center(v: &ChernCharacter, depth: u32) -> Result<Q> {
    let inv = orthogonal_invariants(v, depth)?;
    Ok(-inv.mu_plus - q(3, 2))
}

/// `√(2Δ + 1) - 3/2 - μ`. Informative only: it is known to fail for some
/// characters whose pairing with the exceptional bundle is not negative.
pub fn mu_plus_bound(v: &ChernCharacter) -> Result<QuadraticNumber> {
    let (mu, delta) = plane_rank_positive(v)?;
    if delta.is_negative() {
        return Err(Error::NegativeDiscriminant(delta.to_string()));
    }
    QuadraticNumber::new(q(-3, 2) - mu, Q::one(), int(2) * delta + int(1))
}
