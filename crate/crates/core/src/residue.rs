//! Exact arithmetic over `Z_q`: factorization, unit-group enumeration, Euler
//! phi, and CRT splitting/recombination. Everything here is pure integer
//! arithmetic on immutable values.
//!
//! The degenerate modulus `q = 1` is allowed throughout: `Z_1^*` is treated
//! as the single residue `0`, which counts as a unit. The pipeline's `W`
//! collapses to 1 at realistic scales and this convention keeps every stage
//! total.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// An integer modulus with its prime factorization and unit-group size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredModulus {
    pub q: u64,
    /// `(prime, exponent)` pairs with primes strictly increasing.
    pub factors: Vec<(u64, u32)>,
    pub phi: u64,
}

impl FactoredModulus {
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Trial-division factorization. `q = 1` yields the empty factor list and
/// `phi = 1`.
pub fn factorize(q: u64) -> FactoredModulus {
    assert!(q >= 1, "modulus must be positive");
    let mut rest = q;
    let mut factors = Vec::new();
    let mut phi: u64 = 1;
    let mut p: u64 = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0u32;
            let mut pe: u64 = 1;
            while rest % p == 0 {
                rest /= p;
                e += 1;
                pe *= p;
            }
            phi *= pe / p * (p - 1);
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        phi *= rest - 1;
        factors.push((rest, 1));
    }
    FactoredModulus { q, factors, phi }
}

/// The unit group `Z_q^*`, enumerated in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitList {
    pub q: u64,
    pub elements: Vec<u64>,
}

impl UnitList {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        if self.q == 1 {
            x == 0
        } else {
            x < self.q && gcd(x, self.q) == 1
        }
    }
}

/// All residues coprime to `q`, ascending. For `q = 1` this is `{0}`.
pub fn units(q: u64) -> UnitList {
    assert!(q >= 1, "modulus must be positive");
    if q == 1 {
        return UnitList { q, elements: vec![0] };
    }
    let elements = (1..q).filter(|&x| gcd(x, q) == 1).collect();
    UnitList { q, elements }
}

/// Reduces `x` mod a coprime split `q = q1 * q2` to its two components.
pub fn crt_split(x: u64, q1: u64, q2: u64) -> Result<(u64, u64)> {
    if gcd(q1, q2) != 1 {
        return Err(Error::NonCoprimeModuli { q1, q2 });
    }
    Ok((x % q1, x % q2))
}

/// Inverse of [`crt_split`]: the unique residue mod `q1 * q2` reducing to
/// `(r1, r2)`.
pub fn crt_combine(r1: u64, r2: u64, q1: u64, q2: u64) -> Result<u64> {
    if gcd(q1, q2) != 1 {
        return Err(Error::NonCoprimeModuli { q1, q2 });
    }
    if q1 == 1 {
        return Ok(r2 % q2);
    }
    if q2 == 1 {
        return Ok(r1 % q1);
    }
    let q = q1 * q2;
    // x = r1 + q1 * t with t = (r2 - r1) * q1^{-1} mod q2.
    let inv = mod_inverse(q1 % q2, q2).expect("coprime moduli have inverses");
    let diff = (r2 % q2 + q2 - r1 % q2) % q2;
    let t = diff * inv % q2;
    Ok((r1 % q1 + q1 * t) % q)
}

/// Inverse of `a` mod `m`, or `None` when `gcd(a, m) != 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    let m = m as i128;
    Some(((old_s % m + m) % m) as u64)
}

/// Order of `a` in `Z_m^*`. Panics if `gcd(a, m) != 1`.
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    assert!(m >= 2 && gcd(a % m, m) == 1);
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * (a % m) % m;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        let f = factorize(105);
        assert_eq!(f.factors, vec![(3, 1), (5, 1), (7, 1)]);
        assert_eq!(f.phi, 48);
        assert!(f.is_squarefree());

        let f = factorize(25);
        assert_eq!(f.factors, vec![(5, 2)]);
        assert_eq!(f.phi, 20);
        assert!(!f.is_squarefree());

        let f = factorize(1);
        assert_eq!(f.factors, vec![]);
        assert_eq!(f.phi, 1);
    }

    #[test]
    fn units_examples() {
        assert_eq!(units(15).elements, vec![1, 2, 4, 7, 8, 11, 13, 14]);
        assert_eq!(units(2).elements, vec![1]);
        assert_eq!(units(3).elements, vec![1, 2]);
        assert_eq!(units(1).elements, vec![0]);
    }

    #[test]
    fn crt_examples() {
        assert_eq!(crt_split(7, 3, 5).unwrap(), (1, 2));
        assert_eq!(crt_combine(1, 2, 3, 5).unwrap(), 7);
        assert_eq!(crt_split(0, 3, 5).unwrap(), (0, 0));
        assert!(matches!(
            crt_split(1, 6, 4),
            Err(Error::NonCoprimeModuli { .. })
        ));
    }

    #[test]
    fn unit_count_matches_phi() {
        for q in 1..=10_000u64 {
            assert_eq!(units(q).len() as u64, factorize(q).phi, "q={q}");
        }
    }

    #[test]
    fn crt_round_trip_and_unit_preservation() {
        for q in 2..=1000u64 {
            // Every coprime split q = q1*q2 with 1 < q1, q2 < q.
            for d in 2..q {
                if q % d != 0 {
                    continue;
                }
                let (q1, q2) = (d, q / d);
                if gcd(q1, q2) != 1 || q2 == 1 {
                    continue;
                }
                for x in 0..q {
                    let (r1, r2) = crt_split(x, q1, q2).unwrap();
                    assert_eq!(crt_combine(r1, r2, q1, q2).unwrap(), x);
                    assert_eq!(
                        gcd(x, q) == 1,
                        gcd(r1, q1) == 1 && gcd(r2, q2) == 1,
                        "unit preservation failed at x={x}, split {q1}x{q2}"
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_and_order() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
        assert_eq!(multiplicative_order(4, 7), 3); // 4, 2, 1
        assert_eq!(multiplicative_order(2, 7), 3);
    }
}
