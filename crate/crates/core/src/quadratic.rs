//! Exact numbers of the form `a + b√n` with rational `a`, `b` and a
//! nonnegative integer radicand.
//!
//! Ordering is decided by sign algebra alone: isolate the radical, compare
//! squares, track signs. Numbers living in different quadratic fields (two
//! distinct radicands) are compared the same way with one extra squaring.
//! No decimal approximation ever decides a comparison; [`QuadraticNumber::to_decimal`]
//! exists for display only and is itself computed with integer square roots.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{floor as qfloor, Q};

/// Primes below this bound are stripped from radicands as squares.
const SQUARE_SIEVE_LIMIT: u64 = 4096;

#[derive(Debug, Clone)]
pub struct QuadraticNumber {
    a: Q,
    b: Q,
    n: BigInt,
}

impl QuadraticNumber {
    pub fn rational(a: Q) -> Self {
        QuadraticNumber {
            a,
            b: Q::zero(),
            n: BigInt::zero(),
        }
    }

    /// `a + b√radicand` for a nonnegative rational radicand.
    pub fn new(a: Q, b: Q, radicand: Q) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::NoRealRoot(radicand.to_string()));
        }
        if b.is_zero() || radicand.is_zero() {
            return Ok(Self::rational(a));
        }
        // √(p/q) = √(pq)/q
        let (p, q) = (radicand.numer().clone(), radicand.denom().clone());
        let (square, free) = square_part(&(p * &q));
        let b = b * Q::new(square, q);
        if free.is_one() {
            return Ok(Self::rational(a + b));
        }
        Ok(QuadraticNumber { a, b, n: free })
    }

    /// `√x` for a nonnegative rational.
    pub fn sqrt(x: Q) -> Result<Self> {
        Self::new(Q::zero(), Q::one(), x)
    }

    pub fn a(&self) -> &Q {
        &self.a
    }

    pub fn b(&self) -> &Q {
        &self.b
    }

    /// Radicand; zero for rational values.
    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.is_rational().then_some(&self.a)
    }

    fn n_q(&self) -> Q {
        Q::from_integer(self.n.clone())
    }

    pub fn signum(&self) -> Ordering {
        sign_with_root(&self.a, &self.b, &self.n_q())
    }

    pub fn add_rational(&self, x: &Q) -> Self {
        QuadraticNumber {
            a: &self.a + x,
            b: self.b.clone(),
            n: self.n.clone(),
        }
    }

    pub fn scale(&self, k: &Q) -> Self {
        if k.is_zero() {
            return Self::rational(Q::zero());
        }
        QuadraticNumber {
            a: &self.a * k,
            b: &self.b * k,
            n: self.n.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Q::one())
    }

    /// Sum, defined when both operands live in the same field.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let n = self.common_radicand(other)?;
        let b = &self.b + &other.b;
        let n = if b.is_zero() { BigInt::zero() } else { n };
        Some(QuadraticNumber {
            a: &self.a + &other.a,
            b,
            n,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.checked_add(&other.neg())
    }

    /// Product, defined when both operands live in the same field.
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let n = self.common_radicand(other)?;
        let nq = Q::from_integer(n.clone());
        let a = &self.a * &other.a + &self.b * &other.b * &nq;
        let b = &self.a * &other.b + &self.b * &other.a;
        let n = if b.is_zero() { BigInt::zero() } else { n };
        Some(QuadraticNumber { a, b, n })
    }

    fn common_radicand(&self, other: &Self) -> Option<BigInt> {
        match (self.is_rational(), other.is_rational()) {
            (true, true) => Some(BigInt::zero()),
            (true, false) => Some(other.n.clone()),
            (false, true) => Some(self.n.clone()),
            (false, false) => (self.n == other.n).then(|| self.n.clone()),
        }
    }

    /// Exact comparison, valid across different radicands.
    pub fn compare(&self, other: &Self) -> Ordering {
        let da = &self.a - &other.a;
        if self.n == other.n || other.is_rational() || self.is_rational() {
            let (b, n) = if self.is_rational() {
                (-&other.b, other.n_q())
            } else if other.is_rational() {
                (self.b.clone(), self.n_q())
            } else {
                (&self.b - &other.b, self.n_q())
            };
            return sign_with_root(&da, &b, &n);
        }
        sign_with_two_roots(&da, &self.b, &self.n_q(), &-&other.b, &other.n_q())
    }

    pub fn compare_rational(&self, x: &Q) -> Ordering {
        sign_with_root(&(&self.a - x), &self.b, &self.n_q())
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return qfloor(&self.a);
        }
        // Estimate √n by isqrt(n 4^t) / 2^t with 2^t well above |b|, then fix up exactly.
        let b_mag = self.b.abs().ceil().to_integer();
        let t = b_mag.bits() + 2;
        let scaled = (&self.n << (2 * t)).sqrt();
        let approx = &self.a + &self.b * Q::new(scaled, BigInt::one() << t);
        let mut k = qfloor(&approx);
        while self.compare_rational(&Q::from_integer(k.clone())) == Ordering::Less {
            k -= 1;
        }
        while self.compare_rational(&Q::from_integer(&k + 1)) != Ordering::Less {
            k += 1;
        }
        k
    }

    /// Decimal expansion rounded toward negative infinity, `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = Q::from_integer(BigInt::from(10u32).pow(digits as u32));
        let scaled = self.scale(&scale).floor();
        format_scaled(&scaled, digits)
    }
}

fn format_scaled(x: &BigInt, digits: usize) -> String {
    let neg = x.sign() == Sign::Minus;
    let mut s = x.abs().to_string();
    if digits == 0 {
        return if neg { format!("-{s}") } else { s };
    }
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let (int_part, frac) = s.split_at(s.len() - digits);
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac)
}

impl PartialEq for QuadraticNumber {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for QuadraticNumber {}

impl PartialOrd for QuadraticNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl From<Q> for QuadraticNumber {
    fn from(a: Q) -> Self {
        Self::rational(a)
    }
}

/// `(A+B√n)/D` over a common denominator, or the plain rational.
impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.a);
        }
        let d = self.a.denom().lcm(self.b.denom());
        let big_a = (&self.a * Q::from_integer(d.clone())).to_integer();
        let big_b = (&self.b * Q::from_integer(d.clone())).to_integer();
        let sign = if big_b.is_negative() { '-' } else { '+' };
        let body = format!("{}{}{}√{}", big_a, sign, big_b.abs(), self.n);
        if d.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{d}")
        }
    }
}

fn sign_of(x: &Q) -> Ordering {
    x.cmp(&Q::zero())
}

/// Sign of `a + b√n` for rationals `a`, `b` and `n >= 0`.
pub fn sign_with_root(a: &Q, b: &Q, n: &Q) -> Ordering {
    let sa = sign_of(a);
    let sb = if n.is_zero() { Ordering::Equal } else { sign_of(b) };
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    match (a * a).cmp(&(b * b * n)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `a + b√n + c√m` for rationals and nonnegative radicands `n`, `m`.
pub fn sign_with_two_roots(a: &Q, b: &Q, n: &Q, c: &Q, m: &Q) -> Ordering {
    let su = sign_with_root(a, b, n);
    let sw = sign_with_root(&Q::zero(), c, m);
    if sw == Ordering::Equal {
        return su;
    }
    if su == Ordering::Equal || su == sw {
        return sw;
    }
    // |a + b√n| vs |c√m|: compare squares, (a^2 + b^2 n - c^2 m) + 2ab√n.
    let lead = a * a + b * b * n - c * c * m;
    let cross = Q::from_integer(BigInt::from(2)) * a * b;
    match sign_with_root(&lead, &cross, n) {
        Ordering::Greater => su,
        Ordering::Less => sw,
        Ordering::Equal => Ordering::Equal,
    }
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = SQUARE_SIEVE_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Splits `n >= 0` into `s^2 f`, returning `(s, f)`.
///
/// `f` is square-free whenever it is below `SQUARE_SIEVE_LIMIT^3`; larger
/// cofactors may keep squares of big primes, which only affects display.
fn square_part(n: &BigInt) -> (BigInt, BigInt) {
    if n.is_zero() {
        return (BigInt::one(), BigInt::zero());
    }
    if let Some(small) = n.to_u64() {
        let (s, f) = square_part_u64(small);
        return (BigInt::from(s), BigInt::from(f));
    }
    let mut s = BigInt::one();
    let mut f = n.clone();
    for &p in small_primes() {
        let p2 = BigInt::from(p * p);
        while (&f % &p2).is_zero() {
            f /= &p2;
            s *= p;
        }
    }
    let r = f.sqrt();
    if &r * &r == f {
        s *= r;
        f = BigInt::one();
    }
    (s, f)
}

fn square_part_u64(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut f = n;
    for &p in small_primes() {
        let p2 = p * p;
        if p2 > f {
            break;
        }
        while f.is_multiple_of(p2) {
            f /= p2;
            s *= p;
        }
    }
    let r = f.sqrt();
    if r * r == f {
        s *= r;
        f = 1;
    }
    (s, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};
    use proptest::prelude::*;

    fn qn(a: Q, b: Q, n: i64) -> QuadraticNumber {
        QuadraticNumber::new(a, b, int(n)).unwrap()
    }

    #[test]
    fn normalizes_radicands() {
        let x = qn(int(0), int(1), 12);
        assert_eq!(x.n(), &BigInt::from(3));
        assert_eq!(x.b(), &int(2));
        let y = QuadraticNumber::new(int(0), int(1), q(221, 25)).unwrap();
        assert_eq!(y.n(), &BigInt::from(221));
        assert_eq!(y.b(), &q(1, 5));
        let z = qn(int(1), int(3), 16);
        assert!(z.is_rational());
        assert_eq!(z.a(), &int(13));
        assert_eq!(qn(int(2), int(0), 7).n(), &BigInt::zero());
        assert!(QuadraticNumber::new(int(0), int(1), int(-1)).is_err());
    }

    #[test]
    fn square_free_for_moderate_radicands() {
        let (s, f) = square_part(&BigInt::from(4093u64 * 4093 * 7));
        assert_eq!((s, f), (BigInt::from(4093), BigInt::from(7)));
        let (s, f) = square_part(&BigInt::from(1_000_003u64 * 1_000_003));
        assert_eq!((s, f), (BigInt::from(1_000_003), BigInt::one()));
        let big = BigInt::from(3u32).pow(80) * BigInt::from(11u32);
        let (s, f) = square_part(&big);
        assert_eq!(s, BigInt::from(3u32).pow(40));
        assert_eq!(f, BigInt::from(11));
    }

    #[test]
    fn sign_examples() {
        // (-3 + √13)/2 < (3 - √5)/2
        let mu0 = QuadraticNumber::new(q(-3, 2), q(1, 2), int(13)).unwrap();
        let x0 = QuadraticNumber::new(q(3, 2), q(-1, 2), int(5)).unwrap();
        assert_eq!(mu0.compare(&x0), Ordering::Less);
        // |-2 + √3| < (3 - √5)/2
        let y = qn(int(-2), int(1), 3);
        assert_eq!(y.compare(&x0.neg()), Ordering::Greater);
        assert_eq!(y.compare(&x0), Ordering::Less);
        assert_eq!(qn(int(0), int(1), 2).compare(&QuadraticNumber::rational(q(3, 2))), Ordering::Less);
        assert_eq!(qn(int(1), int(-1), 2).signum(), Ordering::Less);
    }

    #[test]
    fn two_root_signs() {
        // √2 + √3 - √10 > 0 (3.146 vs 3.162?): √2+√3 = 3.1462 < √10 = 3.1623
        let s = sign_with_two_roots(&int(0), &int(1), &int(2), &int(1), &int(3));
        assert_eq!(s, Ordering::Greater);
        let x = qn(int(0), int(1), 2).checked_add(&qn(int(0), int(0), 1)).unwrap();
        assert_eq!(x.compare(&qn(int(0), int(1), 2)), Ordering::Equal);
        // √2 + √3 vs √10 through compare on a same-field sum.
        let lhs = qn(int(5), int(2), 6); // (√2 + √3)^2
        assert_eq!(lhs.compare_rational(&int(10)), Ordering::Less);
        // Exact tie across fields: 2√2 = √8 normalizes to the same field.
        assert_eq!(qn(int(0), int(2), 2), qn(int(0), int(1), 8));
    }

    #[test]
    fn floor_and_decimals() {
        let phi = QuadraticNumber::new(q(1, 2), q(1, 2), int(5)).unwrap();
        assert_eq!(phi.floor(), BigInt::from(1));
        assert_eq!(phi.to_decimal(6), "1.618033");
        assert_eq!(phi.neg().to_decimal(3), "-1.619");
        let x0 = QuadraticNumber::new(q(3, 2), q(-1, 2), int(5)).unwrap();
        assert_eq!(x0.to_decimal(6), "0.381966");
        assert_eq!(x0.neg().floor(), BigInt::from(-1));
        assert_eq!(QuadraticNumber::rational(q(-7, 2)).to_decimal(2), "-3.50");
        assert_eq!(QuadraticNumber::rational(q(1, 3)).to_decimal(0), "0");
        let huge = QuadraticNumber::new(int(0), Q::from_integer(BigInt::from(10u32).pow(50)), int(2)).unwrap();
        assert_eq!(huge.floor().to_string(), "141421356237309504880168872420969807856967187537694");
    }

    #[test]
    fn display_forms() {
        let mu0 = QuadraticNumber::new(q(-3, 2), q(1, 2), int(13)).unwrap();
        assert_eq!(mu0.to_string(), "(-3+1√13)/2");
        let x0 = QuadraticNumber::new(q(3, 2), q(-1, 2), int(5)).unwrap();
        assert_eq!(x0.to_string(), "(3-1√5)/2");
        assert_eq!(qn(int(-2), int(1), 3).to_string(), "-2+1√3");
        assert_eq!(QuadraticNumber::rational(q(2, 5)).to_string(), "2/5");
    }

    #[test]
    fn field_arithmetic() {
        let x = qn(int(1), int(1), 2);
        let y = qn(int(-1), int(1), 2);
        assert_eq!(x.checked_mul(&y).unwrap(), QuadraticNumber::rational(int(1)));
        assert!(x.checked_add(&qn(int(0), int(1), 3)).is_none());
        assert_eq!(x.checked_sub(&x).unwrap(), QuadraticNumber::rational(int(0)));
    }

    /// Independent oracle: floor(10^k x) from integer square roots, ±1 ulp.
    fn decimal_bracket(a: &Q, b: &Q, n: i64, k: u32) -> (BigInt, BigInt) {
        let scale = BigInt::from(10u32).pow(k);
        let sa = (a * Q::from_integer(scale.clone())).floor().to_integer();
        // b√n 10^k = sign(b) √(b^2 n 10^2k)
        let inner = b * b * int(n) * Q::from_integer(&scale * &scale);
        let root = inner.floor().to_integer().sqrt();
        let (lo, hi) = if b.is_negative() {
            (-(&root) - 2, -(&root) + 1)
        } else {
            (root.clone() - 1, root + 2)
        };
        (sa.clone() + lo, sa + 1 + hi)
    }

    fn qstrat() -> impl Strategy<Value = Q> {
        (-2000i64..2000, 1i64..50).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn comparison_agrees_with_decimal_oracle(
            a1 in qstrat(), b1 in qstrat(), n1 in 0i64..500,
            a2 in qstrat(), b2 in qstrat(), n2 in 0i64..500,
        ) {
            let x = QuadraticNumber::new(a1.clone(), b1.clone(), int(n1)).unwrap();
            let y = QuadraticNumber::new(a2.clone(), b2.clone(), int(n2)).unwrap();
            let (xl, xh) = decimal_bracket(&a1, &b1, n1, 60);
            let (yl, yh) = decimal_bracket(&a2, &b2, n2, 60);
            if xh < yl {
                prop_assert_eq!(x.compare(&y), Ordering::Less);
            } else if yh < xl {
                prop_assert_eq!(x.compare(&y), Ordering::Greater);
            }
            prop_assert_eq!(x.compare(&y), y.compare(&x).reverse());
        }

        #[test]
        fn comparison_is_transitive(
            xs in proptest::collection::vec((qstrat(), qstrat(), 0i64..40), 3)
        ) {
            let v: Vec<_> = xs.into_iter().map(|(a, b, n)| QuadraticNumber::new(a, b, int(n)).unwrap()).collect();
            let mut sorted = v.clone();
            sorted.sort();
            for w in sorted.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
            prop_assert!(sorted[0] <= sorted[2]);
        }

        #[test]
        fn floor_brackets_value(a in qstrat(), b in qstrat(), n in 0i64..1000) {
            let x = QuadraticNumber::new(a, b, int(n)).unwrap();
            let k = Q::from_integer(x.floor());
            prop_assert_ne!(x.compare_rational(&k), Ordering::Less);
            prop_assert_eq!(x.compare_rational(&(k + int(1))), Ordering::Less);
        }
    }
}
