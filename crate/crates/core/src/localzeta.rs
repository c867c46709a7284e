//! Local zeta function of `Z_p[x]/x(x-α)(x-β)` in closed form.
//!
//! Every ideal of the local ring has a type `(r1, r2, r3)` and index
//! `p^(r1+r2+r3)`. For fixed `(r2, r3)` the number of ideals of type
//! `(r1, r2, r3)` is a step function of `r1`, which is stored as an
//! [`ETermList`]: a list of `(coeff, r1_min)` pairs, each contributing `coeff`
//! ideals for every `r1 >= r1_min`. The `(r3, r2)` quadrant splits into six
//! regions plus a zero region; inside each region the term list is either
//! constant along the unbounded directions or only finitely many points are
//! involved, so summing `x^(r1+r2+r3)` gives a finite sum of geometric terms
//! `coeff * x^shift / (1-x)^d` and hence
//! `ζ_R = N(x) / (1-x)^3` with `N` a polynomial.
//!
//! Valuations use the normalized profile `a = [α] = [β] <= c = [β-α]`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{is_prime, pow, pow_floor};
use crate::polyring::{IntPolynomial, SeriesPrefix};

/// `(p, a, c)` with `a = [α] = [β]` and `c = [β - α]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValuationProfile {
    p: u64,
    a: u32,
    c: u32,
}

impl ValuationProfile {
    pub fn new(p: u64, a: u32, c: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidProfile(format!("{p} is not prime")));
        }
        if a > c {
            return Err(Error::InvalidProfile(format!("[α] = {a} exceeds [β-α] = {c}")));
        }
        Ok(ValuationProfile { p, a, c })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    /// `max(0, r3 - c)`, the smallest valuation of an admissible `a3`.
    fn m(&self, r3: u32) -> u32 {
        r3.saturating_sub(self.c)
    }
}

impl fmt::Display for ValuationProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, a={}, c={})", self.p, self.a, self.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealType {
    pub r1: u32,
    pub r2: u32,
    pub r3: u32,
}

impl IdealType {
    pub fn new(r1: u32, r2: u32, r3: u32) -> Self {
        IdealType { r1, r2, r3 }
    }

    pub fn weight(&self) -> u32 {
        self.r1 + self.r2 + self.r3
    }
}

impl fmt::Display for IdealType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r1, self.r2, self.r3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionTag {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    Zero,
}

impl RegionTag {
    pub const ALL: [RegionTag; 7] = [
        RegionTag::R1,
        RegionTag::R2,
        RegionTag::R3,
        RegionTag::R4,
        RegionTag::R5,
        RegionTag::R6,
        RegionTag::Zero,
    ];

    /// Whether `(r3, r2)` satisfies this region's defining inequalities.
    pub fn contains(self, profile: &ValuationProfile, r3: u32, r2: u32) -> bool {
        let (a, c) = (profile.a, profile.c);
        match self {
            RegionTag::R1 => r2 >= c + a && r3 >= c + a,
            RegionTag::R2 => r3 >= c && c <= r2 && r2 < (c + a).min(r3),
            RegionTag::R3 => a <= r3 && r3 < c + a && r3 + a <= r2,
            RegionTag::R4 => r3 < a && a + r3 <= r2,
            RegionTag::R5 => r3 <= r2 && r2 < a,
            RegionTag::R6 => r3 < c + a && a.max(r3) <= r2 && r2 < a + r3,
            RegionTag::Zero => r2 < r3.min(c),
        }
    }
}

impl fmt::Display for RegionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RegionTag::R1 => "R1",
            RegionTag::R2 => "R2",
            RegionTag::R3 => "R3",
            RegionTag::R4 => "R4",
            RegionTag::R5 => "R5",
            RegionTag::R6 => "R6",
            RegionTag::Zero => "ZERO",
        };
        f.write_str(s)
    }
}

/// `coeff` ideals of type `(r1, r2, r3)` for every `r1 >= r1_min`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ETerm {
    pub coeff: BigInt,
    pub r1_min: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ETermList(pub Vec<ETerm>);

impl ETermList {
    fn push(&mut self, coeff: BigInt, r1_min: u32) {
        self.0.push(ETerm { coeff, r1_min });
    }

    /// Sort by `r1_min`, merge equal thresholds and drop zero coefficients.
    fn normalize(mut self) -> Self {
        self.0.sort_by_key(|t| t.r1_min);
        let mut merged: Vec<ETerm> = Vec::with_capacity(self.0.len());
        for t in self.0 {
            match merged.last_mut() {
                Some(last) if last.r1_min == t.r1_min => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        ETermList(merged)
    }

    pub fn terms(&self) -> &[ETerm] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of ideals of type `(r1, r2, r3)` for the `(r2, r3)` this list
    /// was built for.
    pub fn count_at(&self, r1: u32) -> BigInt {
        self.0.iter().filter(|t| t.r1_min <= r1).map(|t| &t.coeff).sum()
    }

    /// `(coeff, r1_min)` pairs with small coefficients, for tests and display.
    pub fn as_pairs(&self) -> Vec<(BigInt, u32)> {
        self.0.iter().map(|t| (t.coeff.clone(), t.r1_min)).collect()
    }
}

/// `coeff * x^xshift / (1 - x)^denom_deg`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeomTerm {
    pub coeff: BigInt,
    pub xshift: u32,
    pub denom_deg: u32,
}

impl GeomTerm {
    /// Numerator over the common denominator `(1-x)^3`.
    pub fn over_cube(&self) -> IntPolynomial {
        debug_assert!((1..=3).contains(&self.denom_deg));
        &IntPolynomial::monomial(self.coeff.clone(), self.xshift as usize)
            * &IntPolynomial::one_minus_x_pow(3 - self.denom_deg)
    }
}

/// The region containing `(r3, r2)`.
pub fn region_of(profile: &ValuationProfile, r3: u32, r2: u32) -> Result<RegionTag> {
    let mut hits = RegionTag::ALL.iter().copied().filter(|t| t.contains(profile, r3, r2));
    match (hits.next(), hits.next()) {
        (Some(tag), None) => Ok(tag),
        (None, _) => Err(Error::Internal(format!(
            "no region contains (r3={r3}, r2={r2}) for {profile}"
        ))),
        (Some(t1), Some(t2)) => Err(Error::Internal(format!(
            "(r3={r3}, r2={r2}) lies in both {t1} and {t2} for {profile}"
        ))),
    }
}

/// Number of residues `a3 mod p^r3` in the admissible set with `[a3] = i`
/// (valid when `r3 <= r2`).
pub fn sbar_size(profile: &ValuationProfile, r2: u32, r3: u32, i: u32) -> Result<BigInt> {
    if r3 > r2 {
        return Err(Error::InvalidInput(format!(
            "sbar_size needs r3 <= r2, got r2={r2}, r3={r3}"
        )));
    }
    if i < profile.m(r3) || i > r3 {
        return Err(Error::InvalidInput(format!(
            "sbar_size index {i} outside [{}, {r3}]",
            profile.m(r3)
        )));
    }
    let t = r3 as i64 - i as i64;
    Ok(pow_floor(profile.p, t) - pow_floor(profile.p, t - 1))
}

/// Size of the class `X_j` of residues with `[a3] = r2 - a` and
/// `[p^r2 - α a3] = r2 + j`, for `(r3, r2)` in region R6.
pub fn xj_size(profile: &ValuationProfile, r2: u32, r3: u32, j: u32) -> Result<BigInt> {
    if !RegionTag::R6.contains(profile, r3, r2) {
        return Err(Error::InvalidInput(format!(
            "xj_size needs (r3={r3}, r2={r2}) in R6 for {profile}"
        )));
    }
    let k = (r3 + profile.a - r2) as i64;
    if j as i64 > k {
        return Err(Error::InvalidInput(format!("xj_size index {j} exceeds {k}")));
    }
    let p = profile.p;
    let j = j as i64;
    Ok(if j == 0 {
        pow_floor(p, k) - 2 * pow_floor(p, k - 1)
    } else {
        pow_floor(p, k - j) - pow_floor(p, k - j - 1)
    })
}

/// The term list for the ideals with fixed `(r2, r3)`.
pub fn e_terms(profile: &ValuationProfile, r2: u32, r3: u32) -> Result<ETermList> {
    let (p, a, c) = (profile.p, profile.a, profile.c);
    let m = profile.m(r3);
    let mut out = ETermList::default();
    match region_of(profile, r3, r2)? {
        RegionTag::Zero => {}
        RegionTag::R1 => out.push(pow(p, 2 * a + c), 2 * a),
        RegionTag::R2 => out.push(pow(p, r2 + a), r2 - c + a),
        RegionTag::R3 => {
            for i in m..a {
                out.push(pow(p, a + i) * sbar_size(profile, r2, r3, i)?, a + i);
            }
            out.push(pow(p, a + r3), 2 * a);
        }
        RegionTag::R4 => {
            for i in 0..=r3 {
                out.push(pow(p, a + i) * sbar_size(profile, r2, r3, i)?, a + i);
            }
        }
        RegionTag::R5 => out.push(pow(p, r2 + r3), r2),
        RegionTag::R6 => {
            let cap = (2 * a).min(r3 + a);
            // residues with [a3] < r2 - a
            for i in m..(r2 - a) {
                let l = (a + i).min(cap);
                out.push(pow(p, l) * sbar_size(profile, r2, r3, i)?, l);
            }
            // [a3] = r2 - a, split by [p^r2 - α a3] = r2 + j
            let k = r3 + a - r2;
            for j in 0..=k {
                let mj = (r2 + j).min(cap);
                out.push(pow(p, mj) * xj_size(profile, r2, r3, j)?, mj);
            }
            // [a3] > r2 - a
            let n = r2.min(cap);
            out.push(pow(p, n) * pow(p, k - 1), n);
        }
    }
    Ok(out.normalize())
}

/// Number of ideals of the given type in the local ring.
pub fn count_type(profile: &ValuationProfile, t: IdealType) -> Result<BigInt> {
    Ok(e_terms(profile, t.r2, t.r3)?.count_at(t.r1))
}

/// The geometric terms whose sum is `ζ_R` as a power series in `x`.
pub fn geometric_terms(profile: &ValuationProfile) -> Result<Vec<GeomTerm>> {
    let (a, c) = (profile.a, profile.c);
    let mut out = Vec::new();
    let mut emit = |tag: RegionTag, r2: u32, r3: u32, denom_deg: u32| -> Result<()> {
        let found = region_of(profile, r3, r2)?;
        if found != tag {
            return Err(Error::Internal(format!(
                "expected (r3={r3}, r2={r2}) in {tag}, found {found}"
            )));
        }
        for t in e_terms(profile, r2, r3)?.0 {
            out.push(GeomTerm {
                coeff: t.coeff,
                xshift: t.r1_min + r2 + r3,
                denom_deg,
            });
        }
        Ok(())
    };

    // R1: r1, r2, r3 all unbounded.
    emit(RegionTag::R1, a + c, a + c, 3)?;
    // R2: r2 finite in [c, c+a), r3 >= r2 + 1 unbounded.
    for r2 in c..(c + a) {
        emit(RegionTag::R2, r2, r2 + 1, 2)?;
    }
    // R3: r3 finite in [a, a+c), r2 >= r3 + a unbounded.
    for r3 in a..(a + c) {
        emit(RegionTag::R3, r3 + a, r3, 2)?;
    }
    // R4: r3 finite in [0, a), r2 >= r3 + a unbounded.
    for r3 in 0..a {
        emit(RegionTag::R4, r3 + a, r3, 2)?;
    }
    // R5 and R6 are finite sets; only r1 is unbounded.
    for r2 in 0..a {
        for r3 in 0..=r2 {
            emit(RegionTag::R5, r2, r3, 1)?;
        }
    }
    for r3 in 0..(a + c) {
        for r2 in a.max(r3)..(a + r3) {
            emit(RegionTag::R6, r2, r3, 1)?;
        }
    }
    Ok(out)
}

/// `N(x)` with `ζ_R(s) = N(x) / (1 - x)^3`, `x = p^{-s}`.
pub fn local_numerator(profile: &ValuationProfile) -> Result<IntPolynomial> {
    Ok(geometric_terms(profile)?
        .iter()
        .fold(IntPolynomial::zero(), |acc, g| &acc + &g.over_cube()))
}

/// The local factor `δ_p(x)`: the numerator of the local zeta function over
/// the trivial factor `(1 - x)^{-3}`.
pub fn delta(profile: &ValuationProfile) -> Result<IntPolynomial> {
    local_numerator(profile)
}

/// Number of ideals of index `p^k` for `k = 0..=kmax`, summed directly from
/// per-type counts.
pub fn local_counts_by_type(profile: &ValuationProfile, kmax: u32) -> Result<SeriesPrefix> {
    let mut series = vec![BigInt::zero(); kmax as usize + 1];
    for r3 in 0..=kmax {
        for r2 in 0..=(kmax - r3) {
            let terms = e_terms(profile, r2, r3)?;
            if terms.is_empty() {
                continue;
            }
            for r1 in 0..=(kmax - r3 - r2) {
                series[(r1 + r2 + r3) as usize] += terms.count_at(r1);
            }
        }
    }
    Ok(series)
}

/// Closed-form numerator, checked against the per-type series truncated at
/// `x^K` with `K = 2(2a+c) + 6`.
pub fn local_numerator_verified(profile: &ValuationProfile) -> Result<IntPolynomial> {
    let numerator = local_numerator(profile)?;
    let k = 2 * (2 * profile.a + profile.c) + 6;
    let series = local_counts_by_type(profile, k)?;
    let cleared = &IntPolynomial::new(series) * &IntPolynomial::one_minus_x_pow(3);
    for i in 0..=k as usize {
        if cleared.coeff(i) != numerator.coeff(i) {
            return Err(Error::Internal(format!(
                "closed form and per-type series disagree at x^{i} for {profile}: {} vs {}",
                numerator.coeff(i),
                cleared.coeff(i)
            )));
        }
    }
    if numerator.degree().unwrap_or(0) > k as usize {
        return Err(Error::Internal(format!(
            "numerator degree exceeds check window for {profile}"
        )));
    }
    Ok(numerator)
}

/// Coefficients of `ζ_R` up to `x^k`.
pub fn local_series(profile: &ValuationProfile, k: usize) -> Result<SeriesPrefix> {
    Ok(delta(profile)?.expand_over_cube(k))
}

/// `δ_p(0) = 1`, checked cheaply.
pub fn has_unit_constant_term(poly: &IntPolynomial) -> bool {
    poly.coeff(0).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(p: u64, a: u32, c: u32) -> ValuationProfile {
        ValuationProfile::new(p, a, c).unwrap()
    }

    fn pairs(v: &[(i64, u32)]) -> Vec<(BigInt, u32)> {
        v.iter().map(|&(c, r)| (BigInt::from(c), r)).collect()
    }

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn profile_validation() {
        assert!(ValuationProfile::new(4, 0, 1).is_err());
        assert!(ValuationProfile::new(2, 3, 1).is_err());
        assert!(ValuationProfile::new(2, 1, 1).is_ok());
    }

    #[test]
    fn region_examples() {
        assert_eq!(region_of(&prof(2, 1, 2), 5, 9).unwrap(), RegionTag::R1);
        assert_eq!(region_of(&prof(2, 1, 2), 1, 1).unwrap(), RegionTag::R6);
        assert_eq!(region_of(&prof(2, 1, 2), 2, 2).unwrap(), RegionTag::R6);
        assert_eq!(region_of(&prof(2, 0, 1), 1, 0).unwrap(), RegionTag::Zero);
    }

    #[test]
    fn r6_of_profile_112_is_two_points() {
        let pr = prof(2, 1, 2);
        let mut pts = Vec::new();
        for r3 in 0..12 {
            for r2 in 0..12 {
                if region_of(&pr, r3, r2).unwrap() == RegionTag::R6 {
                    pts.push((r3, r2));
                }
            }
        }
        assert_eq!(pts, vec![(1, 1), (2, 2)]);
    }

    #[test]
    fn sbar_examples() {
        // residues 3 and 6 mod 9
        assert_eq!(sbar_size(&prof(3, 1, 1), 2, 2, 1).unwrap(), BigInt::from(2));
        assert_eq!(sbar_size(&prof(7, 2, 3), 4, 4, 4).unwrap(), BigInt::one());
        assert_eq!(sbar_size(&prof(2, 1, 2), 3, 2, 0).unwrap(), BigInt::from(2));
        assert!(sbar_size(&prof(2, 1, 1), 3, 3, 1).is_err()); // i < m = 2
        assert!(sbar_size(&prof(2, 1, 2), 1, 2, 0).is_err()); // r3 > r2
    }

    #[test]
    fn xj_examples() {
        assert_eq!(xj_size(&prof(2, 1, 2), 1, 1, 0).unwrap(), BigInt::zero());
        assert_eq!(xj_size(&prof(2, 1, 2), 1, 1, 1).unwrap(), BigInt::one());
        assert_eq!(xj_size(&prof(5, 1, 1), 1, 1, 0).unwrap(), BigInt::from(3));
        assert!(xj_size(&prof(5, 1, 1), 1, 1, 2).is_err());
        assert!(xj_size(&prof(5, 1, 1), 3, 3, 0).is_err());
    }

    #[test]
    fn xj_partition_sbar() {
        for p in [2u64, 3, 5] {
            for a in 0..=4 {
                for c in a..=6 {
                    let pr = prof(p, a, c);
                    for r3 in 0..(a + c) {
                        for r2 in a.max(r3)..(a + r3) {
                            let k = r3 + a - r2;
                            let total: BigInt = (0..=k).map(|j| xj_size(&pr, r2, r3, j).unwrap()).sum();
                            assert_eq!(total, sbar_size(&pr, r2, r3, r2 - a).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn e_term_examples() {
        assert_eq!(
            e_terms(&prof(2, 1, 2), 1, 1).unwrap().as_pairs(),
            pairs(&[(2, 1), (4, 2)])
        );
        assert_eq!(e_terms(&prof(2, 0, 1), 0, 0).unwrap().as_pairs(), pairs(&[(1, 0)]));
        assert_eq!(e_terms(&prof(3, 1, 1), 5, 5).unwrap().as_pairs(), pairs(&[(27, 2)]));
        assert!(e_terms(&prof(2, 0, 1), 0, 1).unwrap().is_empty());
    }

    #[test]
    fn count_type_examples() {
        for pr in [prof(2, 0, 1), prof(3, 1, 1), prof(5, 2, 3)] {
            assert_eq!(count_type(&pr, IdealType::new(0, 0, 0)).unwrap(), BigInt::one());
        }
        assert_eq!(
            count_type(&prof(2, 0, 1), IdealType::new(0, 0, 1)).unwrap(),
            BigInt::zero()
        );
        assert_eq!(
            count_type(&prof(2, 1, 2), IdealType::new(1, 1, 1)).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn numerator_examples() {
        assert_eq!(local_numerator(&prof(5, 0, 1)).unwrap(), poly(&[1, -1, 5]));
        for p in [2, 3, 13] {
            assert_eq!(local_numerator(&prof(p, 0, 0)).unwrap(), poly(&[1]));
        }
        assert_eq!(
            local_numerator(&prof(3, 1, 1)).unwrap(),
            poly(&[1, -2, 4, 3, 12, -18, 27])
        );
        assert_eq!(delta(&prof(7, 0, 2)).unwrap(), poly(&[1, -1, 7, -7, 49]));
    }

    #[test]
    fn verified_numerator_on_grid() {
        for p in [2u64, 3, 5] {
            for a in 0..=3 {
                for c in a..=4 {
                    let pr = prof(p, a, c);
                    assert_eq!(
                        local_numerator_verified(&pr).unwrap(),
                        local_numerator(&pr).unwrap(),
                        "{pr}"
                    );
                }
            }
        }
    }
}
