//! Exact arithmetic in cyclotomic fields ℚ(ζ_e).
//!
//! Values are stored against the power basis `1, ζ, …, ζ^{φ(e)-1}` of
//! ℚ(ζ_e), i.e. as polynomials reduced modulo the e-th cyclotomic
//! polynomial Φ_e. That reduction is deterministic and the representation
//! at a fixed conductor is unique, so equality of values reduces to
//! coefficient equality after lifting both sides to a common conductor.
//! A value whose higher coefficients vanish is collapsed to conductor 1;
//! full conductor minimisation is available separately and is applied to
//! every value that is serialised.
//!
//! Serialised form: `E(e):c0 + c1*z^1 + …` where `z` is the conductor-e
//! root; round-trips are bit-exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Euler totient.
pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Coefficients (ascending, monic) of the e-th cyclotomic polynomial,
/// memoised globally.
fn cyclotomic_poly(e: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&e) {
        return p.clone();
    }
    // Φ_e = (x^e − 1) / Π_{d|e, d<e} Φ_d, computed by exact division.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); (e + 1) as usize];
    num[0] = BigInt::from(-1);
    num[e as usize] = BigInt::one();
    for d in divisors(e) {
        if d == e {
            continue;
        }
        let phi_d = cyclotomic_poly(d);
        num = poly_div_exact(&num, &phi_d);
    }
    let result = Arc::new(num);
    cache.lock().unwrap().insert(e, result.clone());
    result
}

/// Exact division of integer polynomials (divisor monic).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[i] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let t = dc * &c;
            rem[i + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quot
}

/// An exact element of ℚ(ζ_conductor), canonical at its conductor.
#[derive(Clone)]
pub struct Cyclotomic {
    conductor: u64,
    /// Canonical coefficients, length φ(conductor).
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Cyclotomic::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![BigRational::from_integer(BigInt::from(n))],
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// The root of unity ζ_e^k.
    pub fn root_of_unity(e: u64, k: u64) -> Self {
        assert!(e >= 1);
        let mut poly = vec![BigRational::zero(); e as usize];
        poly[(k % e) as usize] = BigRational::one();
        Cyclotomic::from_power_poly(e, poly)
    }

    /// Σ_j coeffs[j]·ζ_e^j for an arbitrary coefficient list (indices mod e).
    pub fn from_root_sum(e: u64, coeffs: &[BigRational]) -> Self {
        let mut poly = vec![BigRational::zero(); e as usize];
        for (j, c) in coeffs.iter().enumerate() {
            poly[j % e as usize] += c;
        }
        Cyclotomic::from_power_poly(e, poly)
    }

    /// Integer-coefficient variant of [`Cyclotomic::from_root_sum`]; the
    /// canonical reduction runs in BigInt arithmetic, skipping the rational
    /// normalisation that dominates on hot paths.
    pub fn from_root_sum_int(e: u64, coeffs: &[BigInt]) -> Self {
        let mut poly = vec![BigInt::zero(); e as usize];
        for (j, c) in coeffs.iter().enumerate() {
            poly[j % e as usize] += c;
        }
        let phi = totient(e) as usize;
        if e > 1 {
            let modulus = cyclotomic_poly(e);
            reduce_mod_int(&mut poly, &modulus);
            poly.truncate(phi);
        }
        poly.resize(phi, BigInt::zero());
        Cyclotomic {
            conductor: e,
            coeffs: poly.into_iter().map(BigRational::from_integer).collect(),
        }
        .collapse_rational()
    }

    /// Canonicalises a polynomial in ζ_e of degree < e.
    fn from_power_poly(e: u64, poly: Vec<BigRational>) -> Self {
        Self::from_power_poly_at(e, poly).collapse_rational()
    }

    /// As [`Cyclotomic::from_power_poly`] but keeps the conductor at `e`
    /// even when the value is rational.
    fn from_power_poly_at(e: u64, mut poly: Vec<BigRational>) -> Self {
        debug_assert!(poly.len() <= e as usize);
        let phi = totient(e) as usize;
        if e > 1 {
            let modulus = cyclotomic_poly(e);
            reduce_mod(&mut poly, &modulus);
            poly.truncate(phi);
        }
        poly.resize(phi, BigRational::zero());
        Cyclotomic {
            conductor: e,
            coeffs: poly,
        }
    }

    /// Drops to conductor 1 when all non-constant coefficients vanish.
    fn collapse_rational(mut self) -> Self {
        if self.conductor > 1 && self.coeffs[1..].iter().all(|c| c.is_zero()) {
            self.coeffs.truncate(1);
            self.conductor = 1;
        }
        self
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.conductor == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// The same value re-expressed at a conductor `target` with
    /// `conductor | target`. The result stays at the target conductor,
    /// which keeps mixed-conductor arithmetic from cycling.
    pub fn lift_to(&self, target: u64) -> Cyclotomic {
        assert_eq!(target % self.conductor, 0, "not a conductor multiple");
        if target == self.conductor {
            return self.clone();
        }
        let step = target / self.conductor;
        let mut poly = vec![BigRational::zero(); target as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[j * step as usize] = c.clone();
            }
        }
        Cyclotomic::from_power_poly_at(target, poly)
    }

    /// Complex conjugate, induced by ζ ↦ ζ⁻¹.
    pub fn conjugate(&self) -> Cyclotomic {
        if self.conductor == 1 {
            return self.clone();
        }
        let e = self.conductor;
        let mut poly = vec![BigRational::zero(); e as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = if j == 0 { 0 } else { (e as usize) - j };
                poly[idx] = c.clone();
            }
        }
        Cyclotomic::from_power_poly(e, poly)
    }

    /// Galois automorphism ζ ↦ ζ^k for gcd(k, e) = 1.
    pub fn galois(&self, k: u64) -> Cyclotomic {
        let e = self.conductor;
        assert_eq!(num::integer::gcd(k, e), 1, "k must be coprime to conductor");
        if e == 1 {
            return self.clone();
        }
        let mut poly = vec![BigRational::zero(); e as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(j as u64 * k % e) as usize] = c.clone();
            }
        }
        Cyclotomic::from_power_poly(e, poly)
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        if q.is_zero() {
            return Cyclotomic::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
        .collapse_rational()
    }

    /// Rewrites the value at the smallest conductor that contains it.
    pub fn minimized(&self) -> Cyclotomic {
        if self.conductor == 1 {
            return self.clone();
        }
        for d in divisors(self.conductor) {
            if d == self.conductor {
                break;
            }
            if let Some(v) = self.try_express_at(d) {
                return v;
            }
        }
        self.clone()
    }

    /// Attempts to solve `Σ_j b_j · lift(ζ_d^j) = self` over ℚ.
    fn try_express_at(&self, d: u64) -> Option<Cyclotomic> {
        let e = self.conductor;
        let phi_e = self.coeffs.len();
        let phi_d = totient(d) as usize;
        // Augmented matrix [L | v], columns = lifted basis monomials of ℚ(ζ_d).
        let mut rows: Vec<Vec<BigRational>> =
            vec![vec![BigRational::zero(); phi_d + 1]; phi_e];
        for j in 0..phi_d {
            let lifted = Cyclotomic::root_of_unity(d, j as u64).lift_to(e);
            for (i, c) in lifted.coeffs.iter().enumerate() {
                rows[i][j] = c.clone();
            }
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            rows[i][phi_d] = c.clone();
        }
        let sol = solve_exact(rows, phi_d)?;
        Some(
            Cyclotomic {
                conductor: d,
                coeffs: sol,
            }
            .collapse_rational(),
        )
    }

    /// Deterministic serialisation at the stored conductor. Rational values
    /// always sit at conductor 1, so the output is canonical per value and
    /// round-trips bit-exactly through [`Cyclotomic::parse`].
    pub fn serialize(&self) -> String {
        let mut terms: Vec<String> = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j == 0 {
                terms.push(format!("{c}"));
            } else {
                terms.push(format!("{c}*z^{j}"));
            }
        }
        if terms.is_empty() {
            terms.push("0".to_string());
        }
        format!("E({}):{}", self.conductor, terms.join(" + "))
    }

    /// Parses the `E(e):…` form produced by [`Cyclotomic::serialize`].
    pub fn parse(text: &str) -> Result<Cyclotomic> {
        let bad = |msg: String| Error::Parse { line: 0, msg };
        let rest = text
            .strip_prefix("E(")
            .ok_or_else(|| bad(format!("missing E( prefix in '{text}'")))?;
        let close = rest
            .find("):")
            .ok_or_else(|| bad(format!("missing '):' in '{text}'")))?;
        let e: u64 = rest[..close]
            .parse()
            .map_err(|_| bad(format!("bad conductor in '{text}'")))?;
        if e == 0 {
            return Err(bad("conductor must be positive".into()));
        }
        let body = &rest[close + 2..];
        let mut poly = vec![BigRational::zero(); e as usize];
        for term in body.split(" + ") {
            let term = term.trim();
            if term.is_empty() {
                return Err(bad(format!("empty term in '{text}'")));
            }
            if let Some((coeff, power)) = term.split_once("*z^") {
                let c: BigRational = coeff
                    .parse()
                    .map_err(|_| bad(format!("bad coefficient '{coeff}'")))?;
                let j: u64 = power
                    .parse()
                    .map_err(|_| bad(format!("bad exponent '{power}'")))?;
                if j >= e {
                    return Err(bad(format!("exponent {j} out of range for E({e})")));
                }
                poly[j as usize] += c;
            } else {
                let c: BigRational = term
                    .parse()
                    .map_err(|_| bad(format!("bad constant term '{term}'")))?;
                poly[0] += c;
            }
        }
        Ok(Cyclotomic::from_power_poly(e, poly))
    }
}

/// Accumulates weighted products `Σ w · a · conj(b)` of cyclotomic values in
/// the unreduced power-sum representation at a fixed conductor, deferring the
/// canonical reduction to a single step at the end. Integer-coefficient
/// inputs (the overwhelmingly common case: character values are algebraic
/// integers) accumulate in BigInt arithmetic; rational inputs fall back to a
/// parallel rational accumulator.
pub(crate) struct RootSumAccumulator {
    conductor: u64,
    ints: Vec<BigInt>,
    rats: Option<Vec<BigRational>>,
}

impl RootSumAccumulator {
    pub(crate) fn new(conductor: u64) -> Self {
        RootSumAccumulator {
            conductor,
            ints: vec![BigInt::zero(); conductor as usize],
            rats: None,
        }
    }

    /// `self += weight · a · conj(b)`; both conductors must divide the
    /// accumulator's.
    pub(crate) fn add_weighted_product(&mut self, a: &Cyclotomic, b: &Cyclotomic, weight: u64) {
        let e = self.conductor;
        debug_assert_eq!(e % a.conductor, 0);
        debug_assert_eq!(e % b.conductor, 0);
        let step_a = (e / a.conductor) as usize;
        let step_b = (e / b.conductor) as usize;
        let integral = a.coeffs.iter().all(|c| c.denom().is_one())
            && b.coeffs.iter().all(|c| c.denom().is_one());
        let w = BigInt::from(weight);
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                // conj(b) carries cb at exponent -j
                let idx = (i * step_a + (e as usize - j * step_b % e as usize) % e as usize)
                    % e as usize;
                if integral {
                    self.ints[idx] += ca.numer() * cb.numer() * &w;
                } else {
                    let rats = self
                        .rats
                        .get_or_insert_with(|| vec![BigRational::zero(); e as usize]);
                    rats[idx] += ca * cb * BigRational::from_integer(w.clone());
                }
            }
        }
    }

    pub(crate) fn finish(self) -> Cyclotomic {
        let from_ints = Cyclotomic::from_root_sum_int(self.conductor, &self.ints);
        match self.rats {
            None => from_ints,
            Some(rats) => &from_ints + &Cyclotomic::from_root_sum(self.conductor, &rats),
        }
    }
}

/// Reduces a rational polynomial in place modulo a monic integer polynomial.
fn reduce_mod(poly: &mut Vec<BigRational>, modulus: &[BigInt]) {
    let deg_m = modulus.len() - 1;
    while poly.len() > deg_m {
        let lead = poly.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let top = poly.len() - deg_m;
        for (j, mc) in modulus.iter().take(deg_m).enumerate() {
            if !mc.is_zero() {
                let t = &lead * BigRational::from_integer(mc.clone());
                poly[top + j] -= t;
            }
        }
    }
    while poly.len() < deg_m {
        poly.push(BigRational::zero());
    }
}

/// Integer counterpart of [`reduce_mod`].
fn reduce_mod_int(poly: &mut Vec<BigInt>, modulus: &[BigInt]) {
    let deg_m = modulus.len() - 1;
    while poly.len() > deg_m {
        let lead = poly.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let top = poly.len() - deg_m;
        for (j, mc) in modulus.iter().take(deg_m).enumerate() {
            if !mc.is_zero() {
                poly[top + j] -= mc * &lead;
            }
        }
    }
    while poly.len() < deg_m {
        poly.push(BigInt::zero());
    }
}

/// Gaussian elimination on an augmented matrix with `cols` unknowns.
/// Returns the (unique, since columns are independent) solution, or `None`
/// when inconsistent.
fn solve_exact(mut rows: Vec<Vec<BigRational>>, cols: usize) -> Option<Vec<BigRational>> {
    let n = rows.len();
    let mut pivot_row_of_col = vec![usize::MAX; cols];
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &inv;
        }
        for i in 0..n {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..=cols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        pivot_row_of_col[c] = r;
        r += 1;
    }
    // Inconsistent when a zero row has nonzero RHS.
    for row in rows.iter().skip(r) {
        if !row[cols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![BigRational::zero(); cols];
    for c in 0..cols {
        if pivot_row_of_col[c] == usize::MAX {
            return None; // dependent column: lifted basis is independent, so this is unreachable
        }
        sol[c] = rows[pivot_row_of_col[c]][cols].clone();
    }
    Some(sol)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let m = num::integer::lcm(self.conductor, other.conductor);
        self.lift_to(m).coeffs == other.lift_to(m).coeffs
    }
}

impl Eq for Cyclotomic {}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor == rhs.conductor {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            return Cyclotomic {
                conductor: self.conductor,
                coeffs,
            }
            .collapse_rational();
        }
        let m = num::integer::lcm(self.conductor, rhs.conductor);
        &self.lift_to(m) + &rhs.lift_to(m)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        // Rational fast paths dominate in character-table arithmetic.
        if self.conductor == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.conductor == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let m = num::integer::lcm(self.conductor, rhs.conductor);
        let a = self.lift_to(m);
        let b = rhs.lift_to(m);
        let mut poly = vec![BigRational::zero(); m as usize];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                poly[(i + j) % m as usize] += ca * cb;
            }
        }
        Cyclotomic::from_power_poly(m, poly)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

/// Numeric sign helper used when printing rationals in reports.
pub fn rational_is_negative(q: &BigRational) -> bool {
    q.is_negative()
}
