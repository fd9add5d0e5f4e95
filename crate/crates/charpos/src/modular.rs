//! Modular machinery behind character table computation: prime selection,
//! GF(p) linear algebra, and the lift from modular character residues back
//! to exact cyclotomic values.

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// A prime field GF(p) carrying a primitive e-th root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModularField {
    pub prime: u64,
    /// Smallest residue of multiplicative order exactly `exponent`.
    pub root: u64,
    pub exponent: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2·√(group_order)`, together
/// with the smallest primitive e-th root mod p.
pub fn choose_dixon_prime(group_order: u64, exponent: u64) -> ModularField {
    assert!(exponent >= 1);
    let mut p = exponent + 1;
    loop {
        // strict bound p > 2√|G|  ⇔  p² > 4|G|
        if p >= 2 && is_prime(p) && p * p > 4 * group_order {
            break;
        }
        p += exponent;
    }
    let root = (1..p)
        .find(|&z| multiplicative_order(z, p) == exponent)
        .expect("a primitive root exists since e | p-1");
    ModularField {
        prime: p,
        root,
        exponent,
    }
}

fn multiplicative_order(z: u64, p: u64) -> u64 {
    let mut acc = z % p;
    let mut k = 1;
    while acc != 1 {
        acc = acc * z % p;
        k += 1;
        if k > p {
            return 0;
        }
    }
    k
}

#[inline]
pub fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[inline]
pub fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Recovers the exact value Σ_j m_j ζ_o^j from the residues of that value on
/// the powers of a fixed order-`o` element: `residues[s] ≡ Σ_j m_j z_o^{js}`.
///
/// The multiplicities come out of the inverse discrete Fourier transform
/// mod p and must land in `[0, residues[0]]` (the degree); anything else
/// means the wrong prime was chosen or the residues are corrupt.
pub fn lift_value(residues: &[u64], field: &ModularField, order: u64) -> Result<Cyclotomic> {
    let p = field.prime;
    let o = order;
    assert_eq!(residues.len() as u64, o);
    assert_eq!(
        field.exponent % o,
        0,
        "element order must divide the field exponent"
    );
    let degree = residues[0];
    if degree >= p {
        return Err(Error::LiftOutOfRange(format!(
            "degree residue {degree} not reduced mod {p}"
        )));
    }
    let z_o = mod_pow(field.root, field.exponent / o, p);
    let z_o_inv = mod_inv(z_o, p);
    let o_inv = mod_inv(o % p, p);
    let mut inv_powers = Vec::with_capacity(o as usize);
    inv_powers.push(1u64);
    for s in 1..o {
        inv_powers.push(inv_powers[(s - 1) as usize] * z_o_inv % p);
    }
    let mut mults = Vec::with_capacity(o as usize);
    for j in 0..o {
        let mut acc = 0u64;
        for (s, &r) in residues.iter().enumerate() {
            let w = inv_powers[(j * s as u64 % o) as usize];
            acc = (acc + r * w) % p;
        }
        let m = acc * o_inv % p;
        if m > degree {
            return Err(Error::LiftOutOfRange(format!(
                "multiplicity {m} exceeds degree {degree} at power {j}"
            )));
        }
        mults.push(num::BigInt::from(m));
    }
    Ok(Cyclotomic::from_root_sum_int(o, &mults))
}

/// Dense GF(p) matrix stored row-major.
pub type FpMatrix = Vec<Vec<u64>>;

/// Reduced row echelon form in place; returns pivot column per row.
pub fn rref(mat: &mut FpMatrix, p: u64) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| mat[i][c] != 0) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = mod_inv(mat[r][c], p);
        for x in mat[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && mat[i][c] != 0 {
                let f = mat[i][c];
                for j in 0..cols {
                    mat[i][j] = (mat[i][j] + (p - f) * mat[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    mat.truncate(r);
    pivots
}

/// Characteristic polynomial det(λI − A) over GF(p), monic, coefficients
/// ascending. Computed by similarity reduction to upper Hessenberg form
/// followed by the leading-minor recurrence.
pub fn charpoly(a: &FpMatrix, p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else {
            continue;
        };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = mod_inv(h[k + 1][k], p);
        for i in k + 2..n {
            let f = h[i][k] * inv % p;
            if f == 0 {
                continue;
            }
            for j in 0..n {
                h[i][j] = (h[i][j] + (p - f) * h[k + 1][j]) % p;
            }
            for r in 0..n {
                h[r][k + 1] = (h[r][k + 1] + f * h[r][i]) % p;
            }
        }
    }
    // p_m(λ) = (λ − h_mm)·p_{m-1}(λ) − Σ_i h_im·(subdiagonal product)·p_{i-1}(λ)
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let mut cur = vec![0u64; m + 1];
        let diag = h[m - 1][m - 1] % p;
        for (idx, &c) in polys[m - 1].iter().enumerate() {
            cur[idx + 1] = (cur[idx + 1] + c) % p;
            cur[idx] = (cur[idx] + (p - diag) * c) % p;
        }
        let mut beta = 1u64;
        for i in (1..m).rev() {
            beta = beta * h[i][i - 1] % p;
            if beta == 0 {
                break;
            }
            let coeff = h[i - 1][m - 1] % p * beta % p;
            if coeff == 0 {
                continue;
            }
            for (idx, &c) in polys[i - 1].iter().enumerate() {
                cur[idx] = (cur[idx] + (p - coeff) * c) % p;
            }
        }
        polys.push(cur);
    }
    polys.pop().expect("n ≥ 0")
}

/// Horner evaluation of a GF(p) polynomial.
pub fn poly_eval(poly: &[u64], x: u64, p: u64) -> u64 {
    poly.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p)
}

/// Basis of the right nullspace `{x : A·x = 0}`, deterministic: one vector
/// per free column in ascending column order.
pub fn nullspace(mat: &FpMatrix, p: u64) -> Vec<Vec<u64>> {
    if mat.is_empty() {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut work = mat.clone();
    let pivots = rref(&mut work, p);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            // x_pc = -A[row][free]
            v[pc] = (p - work[row][free]) % p;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigInt, BigRational};

    #[test]
    fn dixon_prime_examples() {
        // |G| = 6, e = 6: 7 ≡ 1 (mod 6) and 7 > 2√6.
        assert_eq!(choose_dixon_prime(6, 6).prime, 7);
        // |G| = 8, e = 4: 5 ≡ 1 (mod 4) fails the size bound, 13 works.
        assert_eq!(choose_dixon_prime(8, 4).prime, 13);
        // |G| = 1, e = 1: smallest prime strictly above 2.
        assert_eq!(choose_dixon_prime(1, 1).prime, 3);
    }

    #[test]
    fn chosen_root_has_exact_order() {
        for (order, e) in [(6, 6), (8, 4), (24, 12), (60, 30), (96, 96)] {
            let f = choose_dixon_prime(order, e);
            assert_eq!(f.prime % e, 1 % e);
            assert_eq!(multiplicative_order(f.root, f.prime), e);
            assert!(f.prime * f.prime > 4 * order);
        }
    }

    #[test]
    fn lift_constant_value() {
        let f = choose_dixon_prime(6, 6);
        // χ(g^s) = 3 for all s: the value is the rational integer 3.
        let lifted = lift_value(&[3, 3, 3], &f, 3).unwrap();
        assert_eq!(lifted, Cyclotomic::from_integer(3));
    }

    #[test]
    fn lift_zero_value() {
        let f = choose_dixon_prime(4, 2);
        // 1 + ζ_2 = 0: residues at powers are (2, 0).
        let lifted = lift_value(&[2, 0], &f, 2).unwrap();
        assert!(lifted.is_zero());
    }

    #[test]
    fn lift_cube_root() {
        // Forward transform of ζ_3 then inversion recovers ζ_3 exactly.
        let f = choose_dixon_prime(3, 3);
        let p = f.prime;
        let z = mod_pow(f.root, f.exponent / 3, p);
        let residues: Vec<u64> = (0..3).map(|s| mod_pow(z, s, p)).collect();
        let lifted = lift_value(&residues, &f, 3).unwrap();
        assert_eq!(lifted, Cyclotomic::root_of_unity(3, 1));
    }

    #[test]
    fn lift_round_trip_exhaustive_small() {
        // lift ∘ reduce is the identity on Σ m_j ζ^j for all e ≤ 6, m_j ≤ 4.
        for e in 1u64..=6 {
            let f = choose_dixon_prime(400, e); // generous prime > 2·degree bound
            let p = f.prime;
            let z = mod_pow(f.root, f.exponent / e, p);
            let mut mults = vec![0u64; e as usize];
            loop {
                let residues: Vec<u64> = (0..e)
                    .map(|s| {
                        mults
                            .iter()
                            .enumerate()
                            .fold(0u64, |acc, (j, &m)| {
                                (acc + m * mod_pow(z, j as u64 * s % e, p)) % p
                            })
                    })
                    .collect();
                // skip patterns whose residue at the identity is below some m_j:
                // those are not characters (degree bound) and lifting rejects them.
                let degree: u64 = mults.iter().sum();
                if degree > 0 {
                    let expected = Cyclotomic::from_root_sum(
                        e,
                        &mults
                            .iter()
                            .map(|&m| BigRational::from_integer(BigInt::from(m)))
                            .collect::<Vec<_>>(),
                    );
                    let lifted = lift_value(&residues, &f, e).unwrap();
                    assert_eq!(lifted, expected);
                }
                // odometer over m_j ∈ 0..=4
                let mut i = 0;
                loop {
                    if i == mults.len() {
                        break;
                    }
                    mults[i] += 1;
                    if mults[i] <= 4 {
                        break;
                    }
                    mults[i] = 0;
                    i += 1;
                }
                if i == mults.len() {
                    break;
                }
            }
        }
    }

    #[test]
    fn nullspace_of_singular_matrix() {
        let p = 7;
        // rows: x + 2y + 3z = 0 taken twice (rank 1)
        let mat = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let basis = nullspace(&mat, p);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            let dot = (v[0] + 2 * v[1] + 3 * v[2]) % p;
            assert_eq!(dot, 0);
        }
    }
}
