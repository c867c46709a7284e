//! Self-checks run by `ideal-zeta verify`: frozen closed forms, closed form
//! against enumeration, and structural properties of the region split.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::Result;
use crate::localzeta::{count_type, delta, local_series, region_of, ValuationProfile};
use crate::oracle::{CubicRingSpec, Enumerator};
use crate::polyring::IntPolynomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Golden,
    Oracle,
    Regions,
    Structure,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Golden, Suite::Oracle, Suite::Regions, Suite::Structure];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Golden => "golden",
            Suite::Oracle => "oracle",
            Suite::Regions => "regions",
            Suite::Structure => "structure",
        }
    }
}

/// Outcome of one named check. `detail` holds the first counterexample on
/// failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, failure: Option<String>, ok: impl Into<String>) -> Self {
        Check {
            suite,
            name: name.into(),
            passed: failure.is_none(),
            detail: failure.unwrap_or_else(|| ok.into()),
        }
    }
}

/// Realizations `(α, β, p)` of the standard profile set with the profile
/// each is expected to have.
pub const STANDARD_REALIZATIONS: [(i64, i64, u64, u32, u32); 7] = [
    (1, 3, 2, 0, 1),
    (1, 4, 3, 0, 1),
    (1, 10, 3, 0, 2),
    (3, 6, 3, 1, 1),
    (2, -2, 2, 1, 2),
    (3, 12, 3, 1, 2),
    (9, 18, 3, 2, 2),
];

/// `δ_2` for the profile `(2, 1, 2)`, fixed by enumeration of the ring
/// `Z[x]/x(x-2)(x+2)` through index `2^8`.
pub const DELTA_2_1_2: [i64; 9] = [1, -2, 3, 0, 2, 0, 12, -16, 16];

/// `δ_3` for `(3, 1, 2)`; the terms through `x^6` are fixed by enumeration.
pub const DELTA_3_1_2: [i64; 9] = [1, -2, 4, 3, 3, 9, 36, -54, 81];

/// `(1 - x) Σ_{j<k} p^j x^{2j} + p^k x^{2k}`.
pub fn expected_unramified_pair(p: u64, k: u32) -> IntPolynomial {
    let one_minus_x = IntPolynomial::from_i64(&[1, -1]);
    let mut sum = IntPolynomial::zero();
    for j in 0..k {
        sum = sum + IntPolynomial::monomial(BigInt::from(p).pow(j), 2 * j as usize);
    }
    &one_minus_x * &sum + IntPolynomial::monomial(BigInt::from(p).pow(k), 2 * k as usize)
}

/// `[1, -2, p+1, p²-2p, p²+p, -2p², p³]`.
pub fn expected_equal_valuation(p: u64) -> IntPolynomial {
    let p = p as i64;
    IntPolynomial::from_i64(&[1, -2, p + 1, p * p - 2 * p, p * p + p, -2 * p * p, p * p * p])
}

fn golden() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7, 11] {
        let mut fail = None;
        for k in 0..=5 {
            let got = delta(&ValuationProfile::new(p, 0, k)?)?;
            let want = expected_unramified_pair(p, k);
            if got != want {
                fail = Some(format!("(p={p}, a=0, c={k}): got {got}, expected {want}"));
                break;
            }
        }
        out.push(Check::new(
            Suite::Golden,
            format!("delta(p={p}, 0, k) for k <= 5"),
            fail,
            "6 profiles",
        ));
    }
    for p in [2u64, 3, 5, 7] {
        let got = delta(&ValuationProfile::new(p, 1, 1)?)?;
        let want = expected_equal_valuation(p);
        let fail = (got != want).then(|| format!("got {got}, expected {want}"));
        out.push(Check::new(
            Suite::Golden,
            format!("delta(p={p}, 1, 1)"),
            fail,
            want.to_string(),
        ));
    }
    for (p, frozen) in [(2u64, &DELTA_2_1_2), (3, &DELTA_3_1_2)] {
        let got = delta(&ValuationProfile::new(p, 1, 2)?)?;
        let want = IntPolynomial::from_i64(frozen);
        let fail = (got != want).then(|| format!("got {got}, expected {want}"));
        out.push(Check::new(
            Suite::Golden,
            format!("delta(p={p}, 1, 2)"),
            fail,
            want.to_string(),
        ));
    }
    Ok(out)
}

/// Closed-form type counts and series against enumeration for one ring.
pub fn compare_with_oracle(enumerator: &Enumerator, profile: &ValuationProfile, kmax: u32) -> Result<Option<String>> {
    let p = profile.p();
    let mut series = vec![BigInt::from(0); kmax as usize + 1];
    for (t, n) in enumerator.per_type_counts(p, kmax)? {
        let formula = count_type(profile, t)?;
        if formula != BigInt::from(n) {
            return Ok(Some(format!("type {t}: formula {formula}, enumeration {n}")));
        }
        series[t.weight() as usize] += n;
    }
    let closed = local_series(profile, kmax as usize)?;
    if closed != series {
        return Ok(Some(format!("series: closed form {closed:?}, enumeration {series:?}")));
    }
    Ok(None)
}

fn oracle_suite(kmax: u32) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (alpha, beta, p, a, c) in STANDARD_REALIZATIONS {
        let spec = CubicRingSpec::new(alpha, beta)?;
        let profile = ValuationProfile::new(p, a, c)?;
        let name = format!("ring ({alpha},{beta}) at p={p}, profile {profile}");
        let actual = crate::spectra::profiles_from_roots(&[BigInt::from(0), BigInt::from(alpha), BigInt::from(beta)])?;
        let fail = if actual.get(&p) != Some(&profile) {
            Some(format!("ring has profile {:?} at {p}", actual.get(&p)))
        } else {
            compare_with_oracle(&Enumerator::from_env(spec)?, &profile, kmax)?
        };
        out.push(Check::new(
            Suite::Oracle,
            name,
            fail,
            format!("all types of weight <= {kmax}"),
        ));
    }
    let first = Enumerator::from_env(CubicRingSpec::new(2, -2)?)?.local_counts(2, kmax)?;
    let second = Enumerator::from_env(CubicRingSpec::new(2, 6)?)?.local_counts(2, kmax)?;
    let fail = (first != second).then(|| format!("(2,-2): {first:?}, (2,6): {second:?}"));
    out.push(Check::new(
        Suite::Oracle,
        "rings (2,-2) and (2,6) share local counts at 2",
        fail,
        format!("{first:?}"),
    ));
    Ok(out)
}

/// Every profile with `a <= c`, `a <= amax`, `c <= cmax` at the prime `p`.
pub fn profile_grid(p: u64, amax: u32, cmax: u32) -> Vec<ValuationProfile> {
    let mut out = Vec::new();
    for a in 0..=amax {
        for c in a..=cmax {
            out.push(ValuationProfile::new(p, a, c).expect("a <= c and p prime"));
        }
    }
    out
}

fn regions() -> Result<Vec<Check>> {
    let mut fail = None;
    let mut cells = 0usize;
    'grid: for p in [2u64, 3] {
        for profile in profile_grid(p, 4, 6) {
            let bound = 2 * (profile.a() + profile.c()) + 4;
            for r3 in 0..=bound {
                for r2 in 0..=bound {
                    cells += 1;
                    if let Err(e) = region_of(&profile, r3, r2) {
                        fail = Some(format!("{profile} at (r3={r3}, r2={r2}): {e}"));
                        break 'grid;
                    }
                }
            }
        }
    }
    Ok(vec![Check::new(
        Suite::Regions,
        "each (r3, r2) lies in exactly one region, a <= 4, c <= 6",
        fail,
        format!("{cells} cells"),
    )])
}

fn structure() -> Result<Vec<Check>> {
    let mut constant = None;
    let mut positive = None;
    let mut degree = None;
    let mut count = 0;
    for p in [2u64, 3, 5] {
        for profile in profile_grid(p, 4, 6) {
            count += 1;
            let d = delta(&profile)?;
            if constant.is_none() && !d.coeff(0).is_one() {
                constant = Some(format!("{profile}: constant term {}", d.coeff(0)));
            }
            if positive.is_none() {
                let s = d.expand_over_cube(40);
                if let Some(k) = s.iter().position(|v| !v.is_positive()) {
                    positive = Some(format!("{profile}: coefficient of x^{k} is {}", s[k]));
                }
            }
            let want = 2 * (2 * profile.a() + profile.c()) as usize;
            if degree.is_none() && d.degree() != Some(want) {
                degree = Some(format!("{profile}: degree {:?}, 2(2a+c) = {want}", d.degree()));
            }
        }
    }
    let ok = format!("{count} profiles at p in {{2,3,5}}");
    Ok(vec![
        Check::new(Suite::Structure, "delta(0) = 1", constant, ok.clone()),
        Check::new(
            Suite::Structure,
            "series coefficients positive through x^40",
            positive,
            ok.clone(),
        ),
        Check::new(Suite::Structure, "deg delta = 2(2a+c)", degree, ok),
    ])
}

/// Runs one suite. `kmax` bounds the enumeration in the oracle suite.
pub fn run_suite(suite: Suite, kmax: u32) -> Result<Vec<Check>> {
    match suite {
        Suite::Golden => golden(),
        Suite::Oracle => oracle_suite(kmax),
        Suite::Regions => regions(),
        Suite::Structure => structure(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_forms() {
        assert_eq!(expected_unramified_pair(5, 1).to_string(), "5x^2-x+1");
        assert_eq!(expected_unramified_pair(3, 0), IntPolynomial::one());
        assert_eq!(
            expected_equal_valuation(2),
            IntPolynomial::from_i64(&[1, -2, 3, 0, 6, -8, 8])
        );
    }

    #[test]
    fn cheap_suites_pass() {
        for suite in [Suite::Golden, Suite::Regions, Suite::Structure] {
            for c in run_suite(suite, 0).unwrap() {
                assert!(c.passed, "{}: {}", c.name, c.detail);
            }
        }
    }

    #[test]
    fn oracle_suite_small() {
        for c in run_suite(Suite::Oracle, 3).unwrap() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn profile_grid_size() {
        assert_eq!(profile_grid(2, 4, 6).len(), 7 + 6 + 5 + 4 + 3);
    }
}
