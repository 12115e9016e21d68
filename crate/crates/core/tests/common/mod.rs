//! Exhaustive cochain enumeration shared by the cohomology oracles.

use std::collections::HashSet;

use quandlekit::FiniteGroup;

/// Enumerates all normalized exponent cochains mod `m` and keeps the cocycles.
pub fn brute_cocycles(g: &FiniteGroup, m: i64) -> Vec<Vec<i64>> {
    let n = g.order();
    let e = g.identity();
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != e && b != e)
        .collect();
    let total = (m as u64).pow(free.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut v = vec![0i64; n * n];
        let mut c = code;
        for &(a, b) in &free {
            v[a * n + b] = (c % m as u64) as i64;
            c /= m as u64;
        }
        let ok = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|k| {
                    let lhs = v[a * n + b] + v[g.mul(a, b) * n + k];
                    let rhs = v[b * n + k] + v[a * n + g.mul(b, k)];
                    (lhs - rhs).rem_euclid(m) == 0
                })
            })
        });
        if ok {
            out.push(v);
        }
    }
    out
}

/// Distinct coboundaries `δβ mod m` for `β` with values in `Z/big`,
/// keeping only those whose values are multiples of `big / m`.
pub fn brute_coboundaries(g: &FiniteGroup, m: i64, big: i64) -> HashSet<Vec<i64>> {
    let n = g.order();
    let e = g.identity();
    let scale = big / m;
    let nonid: Vec<usize> = (0..n).filter(|&x| x != e).collect();
    let total = (big as u64).pow(nonid.len() as u32);
    let mut out = HashSet::new();
    for code in 0..total {
        let mut beta = vec![0i64; n];
        let mut c = code;
        for &x in &nonid {
            beta[x] = (c % big as u64) as i64;
            c /= big as u64;
        }
        let d: Vec<i64> = (0..n * n)
            .map(|i| (beta[g.mul(i / n, i % n)] - beta[i / n] - beta[i % n]).rem_euclid(big))
            .collect();
        if d.iter().all(|x| x % scale == 0) {
            out.insert(d.iter().map(|x| x / scale).collect());
        }
    }
    out
}
