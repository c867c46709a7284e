//! Global assembly: `ζ(s) = ∏_p δ_p(p^{-s}) · ζ(s)^3` as a table of
//! Dirichlet coefficients `a_1..a_N`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactnum::{pow, vp};
use crate::localzeta::{delta, ValuationProfile};
use crate::polyring::{tetra, IntPolynomial, RenderStyle};

/// Number of ordered triples `(u, v, w)` with `uvw = n`.
pub fn d3(n: u64) -> BigInt {
    assert!(n >= 1, "d3 is defined for n >= 1");
    smallest_factor_walk(n)
        .into_iter()
        .map(|(_, k)| tetra(k as usize))
        .product()
}

/// Factorization of `n` by trial division (n is at most the table size).
fn smallest_factor_walk(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut k = 0;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletTable {
    limit: u64,
    /// `coefficients[n - 1] = a_n`
    coefficients: Vec<BigInt>,
    /// For each bad prime, `δ_p` and the local coefficients `a_{p^k}`,
    /// `k = 0..=⌊log_p N⌋`.
    local: BTreeMap<u64, (IntPolynomial, Vec<BigInt>)>,
    profiles: BTreeMap<u64, ValuationProfile>,
}

impl DirichletTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `a_n` for `1 <= n <= N`.
    pub fn get(&self, n: u64) -> Option<&BigInt> {
        n.checked_sub(1).and_then(|i| self.coefficients.get(i as usize))
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn bad_primes(&self) -> Vec<u64> {
        self.local.keys().copied().collect()
    }

    pub fn delta(&self, p: u64) -> Option<&IntPolynomial> {
        self.local.get(&p).map(|(d, _)| d)
    }

    pub fn local_coefficients(&self, p: u64) -> Option<&[BigInt]> {
        self.local.get(&p).map(|(_, v)| v.as_slice())
    }

    pub fn profiles(&self) -> &BTreeMap<u64, ValuationProfile> {
        &self.profiles
    }

    /// `{"N":..,"coefficients":[..],"bad_primes":[..],"delta":{"p":[..]}}`
    pub fn to_json(&self) -> String {
        let join = |v: &[BigInt]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        let deltas: Vec<String> = self
            .local
            .iter()
            .map(|(p, (d, _))| format!("\"{p}\":[{}]", join(d.coeffs())))
            .collect();
        let primes: Vec<String> = self.local.keys().map(|p| p.to_string()).collect();
        format!(
            "{{\"N\":{},\"coefficients\":[{}],\"bad_primes\":[{}],\"delta\":{{{}}}}}",
            self.limit,
            join(&self.coefficients),
            primes.join(","),
            deltas.join(",")
        )
    }

    /// `n,a_n` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,a_n\n");
        for (i, a) in self.coefficients.iter().enumerate() {
            out.push_str(&format!("{},{}\n", i + 1, a));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, a) in self.coefficients.iter().enumerate() {
            out.push_str(&format!("a_{} = {}\n", i + 1, a));
        }
        out
    }
}

/// Coefficient table up to `limit` from the profiles at the bad primes.
pub fn assemble(profiles: &BTreeMap<u64, ValuationProfile>, limit: u64) -> Result<DirichletTable> {
    if limit == 0 {
        return Err(Error::InvalidInput("table limit must be at least 1".into()));
    }
    let mut local = BTreeMap::new();
    for (&p, prof) in profiles {
        if prof.p() != p {
            return Err(Error::InvalidInput(format!("profile {prof} filed under p={p}")));
        }
        let mut kmax = 0usize;
        while pow(p, kmax as u32 + 1) <= BigInt::from(limit) {
            kmax += 1;
        }
        let d = delta(prof)?;
        let series = d.expand_over_cube(kmax);
        local.insert(p, (d, series));
    }
    let coefficients = (1..=limit)
        .map(|n| {
            smallest_factor_walk(n)
                .into_iter()
                .map(|(p, k)| match local.get(&p) {
                    Some((_, series)) => series[k as usize].clone(),
                    None => tetra(k as usize),
                })
                .product()
        })
        .collect();
    Ok(DirichletTable {
        limit,
        coefficients,
        local,
        profiles: profiles.clone(),
    })
}

/// `c · p^{-ks}`, folding `|c| = p^e` into `p^{e-ks}`.
fn render_dirichlet_term(p: u64, k: usize, c: &BigInt, latex: bool) -> String {
    let mag = c.abs();
    if k == 0 {
        return mag.to_string();
    }
    let ks = if k == 1 { "s".to_string() } else { format!("{k}s") };
    let e = vp(&mag, p).finite().unwrap_or(0);
    if pow(p, e) == mag {
        return if e == 0 {
            format!("{p}^{{-{ks}}}")
        } else {
            format!("{p}^{{{e}-{ks}}}")
        };
    }
    let dot = if latex { "\\cdot " } else { "·" };
    format!("{mag}{dot}{p}^{{-{ks}}}")
}

/// `δ_p(p^{-s})` in ascending powers, e.g. `1-2^{-s}+2^{1-2s}`.
pub fn render_local_factor(p: u64, d: &IntPolynomial, latex: bool) -> String {
    let mut out = String::new();
    for (k, c) in d.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        out.push_str(&render_dirichlet_term(p, k, c, latex));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The zeta function as a product of explicit local factors times `ζ(s)^3`.
pub fn zeta_string(profiles: &BTreeMap<u64, ValuationProfile>, style: RenderStyle) -> Result<String> {
    let latex = style == RenderStyle::Latex;
    let mut factors = Vec::new();
    for (&p, prof) in profiles {
        let d = delta(prof)?;
        if d == IntPolynomial::one() {
            continue;
        }
        factors.push(format!("({})", render_local_factor(p, &d, latex)));
    }
    factors.push(if latex { "\\zeta(s)^3".into() } else { "ζ(s)^3".into() });
    Ok(factors.join(if latex { "\\cdot " } else { "·" }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn petersen_profiles() -> BTreeMap<u64, ValuationProfile> {
        [2u64, 3, 5]
            .into_iter()
            .map(|p| (p, ValuationProfile::new(p, 0, 1).unwrap()))
            .collect()
    }

    fn d3_brute(n: u64) -> u64 {
        let mut c = 0;
        for u in 1..=n {
            for v in 1..=n {
                if n.is_multiple_of(u * v) {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn d3_values() {
        assert_eq!(d3(1), BigInt::one());
        assert_eq!(d3(7), BigInt::from(3));
        assert_eq!(d3(12), BigInt::from(18));
        for n in 1..=300 {
            assert_eq!(d3(n), BigInt::from(d3_brute(n)), "n={n}");
        }
    }

    #[test]
    fn petersen_table() {
        let t = assemble(&petersen_profiles(), 30).unwrap();
        assert_eq!(t.get(1), Some(&BigInt::one()));
        assert_eq!(t.get(30), Some(&BigInt::from(8)));
        assert_eq!(t.get(7), Some(&BigInt::from(3)));
        assert_eq!(t.get(31), None);
        assert_eq!(t.bad_primes(), vec![2, 3, 5]);
        assert_eq!(t.local_coefficients(2).unwrap().len(), 5);
    }

    #[test]
    fn empty_profiles_give_d3() {
        let t = assemble(&BTreeMap::new(), 100).unwrap();
        for n in 1..=100 {
            assert_eq!(t.get(n).unwrap(), &d3(n));
        }
        assert!(assemble(&BTreeMap::new(), 0).is_err());
    }

    #[test]
    fn multiplicative() {
        let mut profiles = petersen_profiles();
        profiles.insert(7, ValuationProfile::new(7, 1, 2).unwrap());
        let t = assemble(&profiles, 400).unwrap();
        for m in 1..=400u64 {
            for n in 1..=(400 / m) {
                if num_integer::gcd(m, n) == 1 {
                    assert_eq!(t.get(m * n).unwrap(), &(t.get(m).unwrap() * t.get(n).unwrap()));
                }
            }
        }
    }

    #[test]
    fn zeta_strings() {
        let s = zeta_string(&petersen_profiles(), RenderStyle::Latex).unwrap();
        assert_eq!(
            s,
            "(1-2^{-s}+2^{1-2s})\\cdot (1-3^{-s}+3^{1-2s})\\cdot (1-5^{-s}+5^{1-2s})\\cdot \\zeta(s)^3"
        );
        assert_eq!(zeta_string(&BTreeMap::new(), RenderStyle::Text).unwrap(), "ζ(s)^3");
        let c4: BTreeMap<_, _> = [(2, ValuationProfile::new(2, 1, 2).unwrap())].into();
        let s = zeta_string(&c4, RenderStyle::Text).unwrap();
        assert!(s.starts_with("(1-2^{1-s}+3·2^{-2s}"), "{s}");
        assert!(s.ends_with("+2^{4-8s})·ζ(s)^3"), "{s}");
    }

    #[test]
    fn serializations() {
        let t = assemble(&petersen_profiles(), 4).unwrap();
        assert_eq!(
            t.to_json(),
            "{\"N\":4,\"coefficients\":[1,2,2,5],\"bad_primes\":[2,3,5],\
             \"delta\":{\"2\":[1,-1,2],\"3\":[1,-1,3],\"5\":[1,-1,5]}}"
        );
        assert_eq!(t.to_csv(), "n,a_n\n1,1\n2,2\n3,2\n4,5\n");
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["coefficients"][3], 5);
    }
}
