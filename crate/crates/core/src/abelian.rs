//! Finite abelian groups `⊕ Z/o_j` given by cyclic orders, brought to
//! invariant-factor form with explicit coordinate changes.
//!
//! Everything here works with residues, never with unimodular integer
//! transforms, so entries stay below the group exponent.

use crate::error::{Error, Result};
use crate::intmat::{diagonalize_mod, gcd_i64, mod_inverse, IntegerMatrix, Track};

/// Invariant factors `f_0 | f_1 | ...` (all `> 1`) of `⊕ Z/o_j`, with the
/// maps between the two bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub factors: Vec<i64>,
    /// `coordinates[l][j]`: the `l`-th canonical coordinate of `x` is
    /// `Σ_j coordinates[l][j] x_j mod factors[l]`.
    pub coordinates: Vec<Vec<i64>>,
    /// `generators[l][j]`: the `l`-th canonical generator in the old basis.
    pub generators: Vec<Vec<i64>>,
}

fn primes_of(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn prime_power_part(n: i64, p: i64) -> i64 {
    let mut q = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        q *= p;
    }
    q
}

/// Canonical form of `⊕ Z/o_j`; orders `≤ 1` contribute nothing.
pub fn canonical_form(orders: &[i64]) -> Result<CanonicalForm> {
    if orders.iter().any(|&o| o < 1) {
        return Err(Error::Shape("cyclic orders must be positive".into()));
    }
    let k = orders.len();
    let mut primes: Vec<i64> = orders.iter().flat_map(|&o| primes_of(o)).collect();
    primes.sort_unstable();
    primes.dedup();

    // for each prime, indices sorted by decreasing p-part: rank l uses entry l
    let ranked: Vec<Vec<(usize, i64)>> = primes
        .iter()
        .map(|&p| {
            let mut parts: Vec<(usize, i64)> = (0..k)
                .map(|j| (j, prime_power_part(orders[j], p)))
                .filter(|&(_, q)| q > 1)
                .collect();
            parts.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            parts
        })
        .collect();
    let count = ranked.iter().map(Vec::len).max().unwrap_or(0);

    let mut factors = Vec::with_capacity(count);
    let mut coordinates = Vec::with_capacity(count);
    let mut generators = Vec::with_capacity(count);
    for l in 0..count {
        let pieces: Vec<(usize, i64)> = ranked.iter().filter_map(|r| r.get(l).copied()).collect();
        let f: i64 = pieces.iter().map(|&(_, q)| q).product();
        let mut coord = vec![0i64; k];
        let mut gen = vec![0i64; k];
        for &(j, q) in &pieces {
            let cofactor = orders[j] / q;
            // (o_j / q) e_j generates the q-part of Z/o_j
            gen[j] = (gen[j] + cofactor) % orders[j];
            // x_j = c (o_j / q) in the q-part, so c = x_j · (o_j / q)⁻¹ mod q
            let inv = mod_inverse(cofactor % q, q).unwrap_or(0);
            // idempotent picking the q-part of Z/f
            let rest = f / q;
            let idem = rest as i128 * mod_inverse(rest % q, q).unwrap_or(0) as i128 % f as i128;
            coord[j] = ((coord[j] as i128 + inv as i128 * idem) % f as i128) as i64;
        }
        factors.push(f);
        coordinates.push(coord);
        generators.push(gen);
    }
    // ascending order gives the divisibility chain
    factors.reverse();
    coordinates.reverse();
    generators.reverse();
    Ok(CanonicalForm {
        factors,
        coordinates,
        generators,
    })
}

/// Invariant factors of the subgroup of `⊕ Z/d_j` generated by `gens`.
pub fn subgroup_structure(factors: &[i64], gens: &[Vec<i64>]) -> Result<Vec<i64>> {
    let k = factors.len();
    if k == 0 || gens.is_empty() {
        return Ok(vec![]);
    }
    if factors.iter().any(|&d| d < 1) {
        return Err(Error::Shape("cyclic orders must be positive".into()));
    }
    let n = factors
        .iter()
        .fold(1i64, |acc, &d| acc / gcd_i64(acc, d) * d);
    // embed Z/d_j into Z/n by multiplication with n / d_j
    let mut m = IntegerMatrix::zeros(k, gens.len());
    for (c, g) in gens.iter().enumerate() {
        if g.len() != k {
            return Err(Error::Shape("class coordinate length mismatch".into()));
        }
        for (row, &v) in g.iter().enumerate() {
            let scaled =
                (v.rem_euclid(factors[row]) as i128 * (n / factors[row]) as i128) % n as i128;
            m.set(row, c, scaled as i64);
        }
    }
    let none = Track {
        u: false,
        u_inv: false,
        v: false,
        v_inv: false,
    };
    // the image of a diagonal map d_i on Z/n is cyclic of order n / gcd(d_i, n)
    let orders: Vec<i64> = diagonalize_mod(&m, n, none)?
        .diagonal()
        .into_iter()
        .map(|d| n / gcd_i64(d, n))
        .collect();
    Ok(canonical_form(&orders)?.factors)
}
