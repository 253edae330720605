//! Exact rational and cyclotomic-field arithmetic.
//!
//! Every character value in the library is an element of some Q(zeta_n),
//! represented in the power basis 1, zeta_n, ..., zeta_n^(phi(n)-1) with
//! arbitrary-precision rational coefficients, reduced modulo the n-th
//! cyclotomic polynomial. Equality is decided exactly; zero tests are exact.
//! Elements of different orders combine in the field of order lcm(n, m).
//!
//! There is no floating-point path. The only inequality tests the library
//! ever needs (trace bounds) are done with exact rational interval
//! enclosures, see [`Cyclotomic::real_interval`].

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

/// Arbitrary-precision rational number, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// `n/d` as a [`Rational`].
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Render as `"num/den"`, or `"num"` when the denominator is 1.
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"num"` or `"num/den"`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let mut parts = s.splitn(2, '/');
    let num: BigInt = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
    let den: BigInt = match parts.next() {
        Some(d) => d
            .trim()
            .parse()
            .map_err(|e| format!("bad denominator in {s:?}: {e}"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(num, den))
}

/// Euler phi of `n`.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut ds = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

// Cyclotomic polynomials Phi_n, as integer coefficient vectors (low degree
// first), computed by dividing x^n - 1 by all Phi_d, d | n, d < n.
static CYCLO_POLY: Lazy<Mutex<HashMap<u32, Vec<BigInt>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    if let Some(p) = CYCLO_POLY.lock().unwrap().get(&n) {
        return p.clone();
    }
    let poly = if n == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        // x^n - 1
        let mut num = vec![BigInt::zero(); (n + 1) as usize];
        num[0] = BigInt::from(-1);
        num[n as usize] = BigInt::one();
        for d in divisors(n) {
            if d < n {
                num = poly_div_exact(&num, &cyclotomic_poly(d));
            }
        }
        num
    };
    CYCLO_POLY.lock().unwrap().insert(n, poly.clone());
    poly
}

// Exact division of integer polynomials (divisor monic).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd].clone();
        if !c.is_zero() {
            quot[i] = c.clone();
            for j in 0..=dd {
                rem[i + j] -= &c * &den[j];
            }
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact poly division");
    quot
}

/// An exact element of the cyclotomic field Q(zeta_order).
///
/// Stored in the power basis zeta^0 .. zeta^(phi(order)-1), reduced modulo
/// the cyclotomic polynomial, so that zero has an all-zero coefficient
/// vector and equality (after moving both operands to the lcm order) is
/// coefficientwise. Values are immutable; all operations are pure.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>, // length phi(order)
}

impl Cyclotomic {
    /// The zero element (order 1).
    pub fn zero() -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    /// The unit element (order 1).
    pub fn one() -> Self {
        Cyclotomic::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Cyclotomic::from_rational(rat_int(n))
    }

    /// zeta_n^e.
    pub fn root_of_unity(n: u32, e: i64) -> Self {
        assert!(n >= 1);
        let e = e.rem_euclid(n as i64) as u32;
        let mut raw = vec![Rational::zero(); n as usize];
        raw[e as usize] = Rational::one();
        Cyclotomic::from_raw(n, raw).shrink()
    }

    // Build from a raw coefficient vector on zeta^0..zeta^(len-1), reducing
    // modulo Phi_order.
    fn from_raw(order: u32, raw: Vec<Rational>) -> Self {
        let phi = euler_phi(order) as usize;
        let modp = cyclotomic_poly(order);
        let mut rem = raw;
        if rem.len() < phi {
            rem.resize(phi, Rational::zero());
        }
        // divide by the monic integer polynomial Phi_order
        for i in (phi..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = rem[i].clone();
            for j in 0..phi {
                let t = &c * Rational::from(modp[j].clone());
                rem[i - phi + j] -= t;
            }
            rem[i] = Rational::zero();
        }
        rem.truncate(phi);
        Cyclotomic { order, coeffs: rem }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficient of zeta^e in the reduced power-basis representation.
    pub fn coeff(&self, e: usize) -> Rational {
        self.coeffs.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when the element lies in Q. In the power basis this is exactly
    /// the vanishing of all coefficients beyond zeta^0.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    /// The element as a rational number, when it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    // Re-express in Q(zeta_m), n | m, by the exponent map e -> e*(m/n).
    fn promote(&self, m: u32) -> Cyclotomic {
        if m == self.order {
            return self.clone();
        }
        assert!(m % self.order == 0);
        let step = (m / self.order) as usize;
        let mut raw = vec![Rational::zero(); m as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[e * step] += c;
            }
        }
        Cyclotomic::from_raw(m, raw)
    }

    fn common_order(&self, other: &Cyclotomic) -> u32 {
        (self.order as u64).lcm(&(other.order as u64)) as u32
    }

    pub fn add(&self, other: &Cyclotomic) -> Cyclotomic {
        let m = self.common_order(other);
        let a = self.promote(m);
        let b = other.promote(m);
        let coeffs = a
            .coeffs
            .iter()
            .zip(b.coeffs.iter())
            .map(|(x, y)| x + y)
            .collect();
        Cyclotomic { order: m, coeffs }
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero();
        }
        if let Some(r) = self.as_rational() {
            return other.scale(&r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(&r);
        }
        let m = self.common_order(other);
        let a = self.promote(m);
        let b = other.promote(m);
        let mut raw = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        Cyclotomic::from_raw(m, raw)
    }

    /// Apply the Galois automorphism zeta -> zeta^a, gcd(a, order) = 1.
    pub fn galois(&self, a: u32) -> Cyclotomic {
        let n = self.order;
        assert!(
            (a % n).gcd(&n) == 1,
            "galois exponent {a} not coprime to order {n}"
        );
        let mut raw = vec![Rational::zero(); n as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                raw[(e * a as usize) % n as usize] += c;
            }
        }
        Cyclotomic::from_raw(n, raw)
    }

    /// Complex conjugation: zeta^e -> zeta^(n-e), extended linearly.
    pub fn conj(&self) -> Cyclotomic {
        if self.order == 1 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    /// `self * conj(self)`, the square of the complex absolute value
    /// (a totally real cyclotomic element).
    pub fn norm_squared(&self) -> Cyclotomic {
        self.mul(&self.conj())
    }

    /// Re-express in the smallest cyclotomic field Q(zeta_d), d | order,
    /// that contains the element. The result is canonical: Q(zeta_a) meets
    /// Q(zeta_b) in Q(zeta_gcd(a,b)), so the minimal divisor order is unique.
    pub fn shrink(&self) -> Cyclotomic {
        if self.order == 1 {
            return self.clone();
        }
        for d in divisors(self.order) {
            if d == self.order {
                break;
            }
            if let Some(c) = self.try_descend(d) {
                return c;
            }
        }
        self.clone()
    }

    // Try to write the element in Q(zeta_d); returns None when it is not
    // in that subfield. Solves a small exact linear system expressing the
    // element over the embedded power basis of Q(zeta_d).
    fn try_descend(&self, d: u32) -> Option<Cyclotomic> {
        let phi_n = self.coeffs.len();
        let phi_d = euler_phi(d) as usize;
        // columns: embeddings of zeta_d^j, j < phi_d; last column: target
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(phi_d + 1);
        for j in 0..phi_d {
            let basis = Cyclotomic::from_raw(d, {
                let mut raw = vec![Rational::zero(); d as usize];
                raw[j] = Rational::one();
                raw
            })
            .promote(self.order);
            cols.push(basis.coeffs);
        }
        cols.push(self.coeffs.clone());
        // Gaussian elimination on the phi_n x (phi_d + 1) system
        let mut mat: Vec<Vec<Rational>> = (0..phi_n)
            .map(|r| cols.iter().map(|c| c[r].clone()).collect())
            .collect();
        let rows = phi_n;
        let ncols = phi_d + 1;
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; phi_d];
        let mut r = 0;
        for c in 0..phi_d {
            if r >= rows {
                break;
            }
            let piv = (r..rows).find(|&i| !mat[i][c].is_zero());
            let Some(piv) = piv else { continue };
            mat.swap(r, piv);
            let inv = mat[r][c].clone();
            for x in mat[r][c..].iter_mut() {
                *x = &*x / &inv;
            }
            for i in 0..rows {
                if i != r && !mat[i][c].is_zero() {
                    let f = mat[i][c].clone();
                    for cc in c..ncols {
                        let t = &f * &mat[r][cc];
                        mat[i][cc] -= t;
                    }
                }
            }
            pivot_of_col[c] = Some(r);
            r += 1;
        }
        // consistency: every row beyond the pivots must have zero RHS
        for i in 0..rows {
            let all_zero = (0..phi_d).all(|c| mat[i][c].is_zero());
            if all_zero && !mat[i][phi_d].is_zero() {
                return None;
            }
        }
        let mut coeffs = vec![Rational::zero(); phi_d];
        for c in 0..phi_d {
            if let Some(pr) = pivot_of_col[c] {
                coeffs[c] = mat[pr][phi_d].clone();
            }
        }
        Some(Cyclotomic { order: d, coeffs })
    }

    /// Deterministic text key of the canonical (shrunk) form; used to
    /// deduplicate trace tables.
    pub fn canonical_key(&self) -> String {
        let s = self.shrink();
        let mut out = format!("o{}", s.order);
        for (e, c) in s.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.push_str(&format!(";{}:{}", e, rational_string(c)));
            }
        }
        out
    }

    /// Exact rational interval enclosure `[lo, hi]` of the real part.
    ///
    /// Used only for inequality assertions (the trace-bound checks); all
    /// equality decisions in the library are exact. `precision` is the
    /// number of Taylor terms for cos; the enclosure tightens as it grows.
    pub fn real_interval(&self, precision: u32) -> (Rational, Rational) {
        let n = self.order;
        let (mut lo, mut hi) = (Rational::zero(), Rational::zero());
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (clo, chi) = cos_2pi_interval(e as u32, n, precision);
            let (a, b) = (c * &clo, c * &chi);
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            lo += a;
            hi += b;
        }
        (lo, hi)
    }
}

// Enclosure of pi accurate to ~50 digits.
fn pi_interval() -> (Rational, Rational) {
    let lo = parse_rational(
        "31415926535897932384626433832795028841971693993751/10000000000000000000000000000000000000000000000000",
    )
    .unwrap();
    let hi = parse_rational(
        "31415926535897932384626433832795028841971693993752/10000000000000000000000000000000000000000000000000",
    )
    .unwrap();
    (lo, hi)
}

// Enclosure of cos(2*pi*e/n) with `terms` Taylor terms.
fn cos_2pi_interval(e: u32, n: u32, terms: u32) -> (Rational, Rational) {
    let (pi_lo, pi_hi) = pi_interval();
    let t = rat(e as i64, n as i64);
    // x in [2*pi_lo*t, 2*pi_hi*t], 0 <= t < 1 so 0 <= x < 2*pi
    let x_lo = &pi_lo * &t * rat_int(2);
    let x_hi = &pi_hi * &t * rat_int(2);
    // cos on [x_lo, x_hi]: evaluate Taylor with remainder at both ends and
    // widen by the interval width (|cos'| <= 1).
    let width = &x_hi - &x_lo;
    let (c_lo, c_hi) = cos_taylor_interval(&x_lo, terms);
    (c_lo - &width, c_hi + &width)
}

// Taylor enclosure of cos(x) at rational x, |x| < 7.
fn cos_taylor_interval(x: &Rational, terms: u32) -> (Rational, Rational) {
    let x2 = x * x;
    let mut term = Rational::one();
    let mut sum = Rational::one();
    let mut k: i64 = 0;
    for _ in 0..terms {
        k += 1;
        term = &term * &x2 / rat_int((2 * k - 1) * (2 * k));
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
    }
    // remainder bound: next term magnitude * 2 (valid once 2k+2 > |x|)
    let next = &term * &x2 / rat_int((2 * k + 1) * (2 * k + 2));
    let bound = next.abs() * rat_int(2);
    (&sum - &bound, &sum + &bound)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let m = self.common_order(other);
        let a = self.promote(m);
        let b = other.promote(m);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.shrink();
        if s.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in s.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if e == 0 {
                write!(f, "{}", rational_string(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", rational_string(&mag))?;
                }
                write!(f, "z{}", s.order)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let s = self.shrink();
        let coeffs: Vec<(u32, String)> = s
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u32, rational_string(c)))
            .collect();
        let mut st = ser.serialize_struct("Cyclotomic", 2)?;
        st.serialize_field("order", &s.order)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        struct Repr {
            order: u32,
            coeffs: Vec<(u32, String)>,
        }
        let r = Repr::deserialize(de)?;
        if r.order == 0 {
            return Err(serde::de::Error::custom("cyclotomic order must be >= 1"));
        }
        let mut raw = vec![Rational::zero(); r.order.max(1) as usize];
        for (e, s) in r.coeffs {
            if e >= r.order {
                return Err(serde::de::Error::custom("exponent out of range"));
            }
            raw[e as usize] = parse_rational(&s).map_err(serde::de::Error::custom)?;
        }
        Ok(Cyclotomic::from_raw(r.order, raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u32, e: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, e)
    }

    #[test]
    fn rational_add() {
        let a = Cyclotomic::from_rational(rat(1, 2));
        let b = Cyclotomic::from_rational(rat(1, 3));
        assert_eq!(a.add(&b).as_rational().unwrap(), rat(5, 6));
    }

    #[test]
    fn cube_roots_sum_to_minus_one() {
        // 1 + z3 + z3^2 = 0
        let s = z(3, 1).add(&z(3, 2));
        assert_eq!(s, Cyclotomic::from_int(-1));
    }

    #[test]
    fn conjugate_pair_cancels() {
        assert!(z(4, 1).add(&z(4, 3)).is_zero());
    }

    #[test]
    fn i_squared() {
        assert_eq!(z(4, 1).mul(&z(4, 1)), Cyclotomic::from_int(-1));
    }

    #[test]
    fn zeta6_relations() {
        assert_eq!(z(6, 1).mul(&z(6, 2)), Cyclotomic::from_int(-1));
        // zeta_6 = 1 + zeta_3 = -zeta_3^2
        assert_eq!(z(6, 1), Cyclotomic::from_int(1).add(&z(3, 1)));
        assert_eq!(z(6, 1), z(3, 2).neg());
    }

    #[test]
    fn zero_annihilates() {
        let x = z(8, 3).add(&Cyclotomic::from_rational(rat(7, 5)));
        assert!(Cyclotomic::zero().mul(&x).is_zero());
    }

    #[test]
    fn conj_examples() {
        assert_eq!(z(3, 1).conj(), z(3, 2));
        let r = Cyclotomic::from_rational(rat(5, 7));
        assert_eq!(r.conj(), r);
        // conj(1 + i) = 1 - i
        let x = Cyclotomic::from_int(1).add(&z(4, 1));
        assert_eq!(x.conj(), Cyclotomic::from_int(1).sub(&z(4, 1)));
    }

    #[test]
    fn shrink_descends_to_minimal_field() {
        // zeta_12^3 = i lives in Q(zeta_4)
        let x = z(12, 3);
        assert_eq!(x.order(), 4);
        // zeta_12^4 = zeta_3
        assert_eq!(z(12, 4).order(), 3);
        // 2 zeta_5 - 2 zeta_5 = 0 shrinks to order 1
        let y = z(5, 1).scale(&rat_int(2)).sub(&z(5, 1).scale(&rat_int(2)));
        assert_eq!(y.shrink().order(), 1);
    }

    #[test]
    fn mixed_order_equality() {
        // zeta_6^2 == zeta_3
        assert_eq!(z(6, 2), z(3, 1));
        assert_eq!(z(6, 3), Cyclotomic::from_int(-1));
    }

    #[test]
    fn serde_round_trip() {
        let x = z(8, 1).scale(&rat(3, 2)).add(&Cyclotomic::from_rational(rat(-1, 7)));
        let js = serde_json::to_string(&x).unwrap();
        let back: Cyclotomic = serde_json::from_str(&js).unwrap();
        assert_eq!(x, back);
        assert!(js.contains("\"order\""));
    }

    #[test]
    fn real_interval_encloses_golden_ratio_cosine() {
        // 2 cos(2 pi / 5) = (sqrt(5) - 1)/2 ~ 0.618...
        let x = z(5, 1).add(&z(5, 4));
        let (lo, hi) = x.real_interval(40);
        assert!(lo < rat(62, 100) && hi > rat(61, 100));
        assert!(&hi - &lo < rat(1, 1_000_000));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn conj_is_multiplicative(n in 1u32..24, e1 in 0i64..24, e2 in 0i64..24,
                                  a in -5i64..5, b in -5i64..5) {
            let x = z(n, e1).scale(&rat_int(a)).add(&Cyclotomic::from_int(1));
            let y = z(n, e2).scale(&rat_int(b)).sub(&z(n, e1));
            prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
            prop_assert_eq!(x.conj().conj(), x.clone());
        }

        #[test]
        fn roots_have_unit_norm(n in 1u32..30, e in 0i64..30) {
            let x = z(n, e);
            prop_assert_eq!(x.norm_squared(), Cyclotomic::one());
        }

        #[test]
        fn shrink_is_idempotent(n in 1u32..24, e in 0i64..24, c in -4i64..4) {
            let x = z(n, e).scale(&rat_int(c)).add(&z(n, 1));
            let s = x.shrink();
            prop_assert_eq!(s.shrink(), s.clone());
            prop_assert_eq!(s, x);
        }

        #[test]
        fn add_mul_distribute(e1 in 0i64..12, e2 in 0i64..12, e3 in 0i64..12) {
            let (x, y, w) = (z(12, e1), z(12, e2), z(12, e3));
            prop_assert_eq!(x.mul(&y.add(&w)), x.mul(&y).add(&x.mul(&w)));
        }
    }
}
