//! Brute-force ideal enumeration for `Z[x]/x(x-α)(x-β)`.
//!
//! Sublattices of full rank are enumerated in Hermite normal form
//!
//! ```text
//! v1 = (d1, a1, a2)    0 <= a1 < d2, 0 <= a2 < d3
//! v2 = ( 0, d2, a3)    0 <= a3 < d3
//! v3 = ( 0,  0, d3)
//! ```
//!
//! in coordinates over `{1, x, x(x-α)}`, and each one is tested for closure
//! under multiplication by `x`. None of the local theory is used here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{is_prime, pow, prime_divisors};
use crate::localzeta::IdealType;

/// Default number of candidate bases one enumeration call may visit.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "IDEAL_ZETA_BUDGET";

/// Upper bound on any budget; keeps the reduced kernel inside `i128`.
pub const MAX_BUDGET: u64 = 1_000_000_000_000_000;

/// The ring `Z[x]/x(x-α)(x-β)` with `0, α, β` pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CubicRingSpec {
    alpha: BigInt,
    beta: BigInt,
}

impl CubicRingSpec {
    pub fn new(alpha: impl Into<BigInt>, beta: impl Into<BigInt>) -> Result<Self> {
        let (alpha, beta) = (alpha.into(), beta.into());
        if alpha.is_zero() || beta.is_zero() || alpha == beta {
            return Err(Error::InvalidInput(format!(
                "0, α = {alpha}, β = {beta} must be pairwise distinct"
            )));
        }
        Ok(CubicRingSpec { alpha, beta })
    }

    pub fn alpha(&self) -> &BigInt {
        &self.alpha
    }

    pub fn beta(&self) -> &BigInt {
        &self.beta
    }

    /// `αβ(β - α)`
    pub fn discriminant_product(&self) -> BigInt {
        &self.alpha * &self.beta * (&self.beta - &self.alpha)
    }

    /// Primes dividing `αβ(β - α)`.
    pub fn bad_primes(&self) -> Vec<u64> {
        prime_divisors(&self.discriminant_product()).expect("product is nonzero")
    }
}

/// Coordinate basis in which a lattice is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordinateBasis {
    /// `{1, x, x(x-α)}`
    Shifted,
    /// `{1, x, x^2}`
    Power,
}

/// Multiplication-by-`x` matrix: `action[i]` is the image of the `i`-th
/// basis vector.
fn x_action(spec: &CubicRingSpec, basis: CoordinateBasis) -> [[BigInt; 3]; 3] {
    let (a, b) = (spec.alpha.clone(), spec.beta.clone());
    let z = BigInt::zero;
    let o = BigInt::one;
    match basis {
        // x·1 = x, x·x = x(x-α) + αx, x·x(x-α) = βx(x-α)  (mod f)
        CoordinateBasis::Shifted => [[z(), o(), z()], [z(), a, o()], [z(), z(), b]],
        // x·x^2 = (α+β)x^2 - αβx  (mod f)
        CoordinateBasis::Power => [[z(), o(), z()], [z(), z(), o()], [z(), -(&a * &b), a + b]],
    }
}

/// Lower-triangular lattice basis; see the module docs for the layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HNFBasis {
    pub d: [BigInt; 3],
    pub a1: BigInt,
    pub a2: BigInt,
    pub a3: BigInt,
}

impl HNFBasis {
    /// Builds a reduced basis, rejecting non-positive diagonals and
    /// off-diagonal entries outside their ranges.
    pub fn new(d: [i64; 3], a1: i64, a2: i64, a3: i64) -> Result<Self> {
        if d.iter().any(|&x| x <= 0) {
            return Err(Error::InvalidInput(format!("diagonal {d:?} must be positive")));
        }
        if !(0..d[1]).contains(&a1) || !(0..d[2]).contains(&a2) || !(0..d[2]).contains(&a3) {
            return Err(Error::InvalidInput(format!(
                "off-diagonal ({a1}, {a2}, {a3}) not reduced for diagonal {d:?}"
            )));
        }
        Ok(HNFBasis {
            d: d.map(BigInt::from),
            a1: a1.into(),
            a2: a2.into(),
            a3: a3.into(),
        })
    }

    pub fn index(&self) -> BigInt {
        &self.d[0] * &self.d[1] * &self.d[2]
    }

    fn rows(&self) -> [[BigInt; 3]; 3] {
        let z = BigInt::zero;
        [
            [self.d[0].clone(), self.a1.clone(), self.a2.clone()],
            [z(), self.d[1].clone(), self.a3.clone()],
            [z(), z(), self.d[2].clone()],
        ]
    }

    /// Whether `w` lies in the lattice (triangular back-substitution).
    fn contains(&self, w: &[BigInt; 3]) -> bool {
        let rows = self.rows();
        let mut w = w.clone();
        for i in 0..3 {
            let (q, r) = w[i].div_rem(&rows[i][i]);
            if !r.is_zero() {
                return false;
            }
            for j in i..3 {
                w[j] -= &q * &rows[i][j];
            }
        }
        true
    }
}

/// Closure under `x` in the `{1, x, x(x-α)}` coordinates, written out as the
/// three divisibility conditions.
pub fn is_ideal(spec: &CubicRingSpec, h: &HNFBasis) -> bool {
    let [d1, d2, d3] = &h.d;
    let first = d1 + &spec.alpha * &h.a1;
    if !first.is_multiple_of(d2) {
        return false;
    }
    if !(d2 + (&spec.beta - &spec.alpha) * &h.a3).is_multiple_of(d3) {
        return false;
    }
    let q = first / d2;
    (&h.a1 + &spec.beta * &h.a2 - q * &h.a3).is_multiple_of(d3)
}

/// Closure under `x` for a lattice written in the given coordinates, checked
/// by explicit membership of each image vector.
pub fn is_ideal_in(spec: &CubicRingSpec, basis: CoordinateBasis, h: &HNFBasis) -> bool {
    let action = x_action(spec, basis);
    h.rows().iter().all(|v| {
        let mut w = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
        for (i, vi) in v.iter().enumerate() {
            for j in 0..3 {
                w[j] += vi * &action[i][j];
            }
        }
        h.contains(&w)
    })
}

/// Budget-guarded ideal counter for one ring.
#[derive(Debug, Clone)]
pub struct Enumerator {
    spec: CubicRingSpec,
    budget: u64,
}

impl Enumerator {
    pub fn new(spec: CubicRingSpec) -> Self {
        Enumerator {
            spec,
            budget: DEFAULT_BUDGET,
        }
    }

    /// Budget from [`BUDGET_ENV`] when set and valid, else the default.
    pub fn from_env(spec: CubicRingSpec) -> Result<Self> {
        let budget = match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidInput(format!("{BUDGET_ENV}={v} is not a non-negative integer")))?,
            Err(_) => DEFAULT_BUDGET,
        };
        Ok(Self::new(spec).with_budget(budget))
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget.min(MAX_BUDGET);
        self
    }

    pub fn spec(&self) -> &CubicRingSpec {
        &self.spec
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    fn check_budget(&self, needed: u128) -> Result<()> {
        if needed > self.budget as u128 {
            Err(Error::BudgetExceeded {
                needed,
                budget: self.budget as u128,
            })
        } else {
            Ok(())
        }
    }

    /// Ideals with diagonal `(d1, d2, d3)`, all reduced off-diagonals tried.
    fn count_diagonal(&self, d1: u64, d2: u64, d3: u64) -> u64 {
        let kernel = Kernel::new(&self.spec, d1, d2, d3);
        (0..d3).into_par_iter().map(|a3| kernel.count_a3(a3)).sum()
    }

    /// Ideals of type `(r1, r2, r3)` at the prime `p`, i.e. with diagonal
    /// `(p^r1, p^r2, p^r3)`.
    pub fn count_type(&self, p: u64, t: IdealType) -> Result<u64> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        let d2 = pow(p, t.r2);
        let d3 = pow(p, t.r3);
        let needed = &d2 * &d3 * &d3;
        self.check_budget(needed.to_u128().unwrap_or(u128::MAX))?;
        let to_u64 = |v: BigInt| {
            v.to_u64().ok_or(Error::BudgetExceeded {
                needed: u128::MAX,
                budget: self.budget as u128,
            })
        };
        let d1 = to_u64(pow(p, t.r1))?;
        Ok(self.count_diagonal(d1, to_u64(d2)?, to_u64(d3)?))
    }

    /// Counts of every type with `r1 + r2 + r3 <= kmax`, ordered by
    /// `(weight, r1, r2, r3)`.
    pub fn per_type_counts(&self, p: u64, kmax: u32) -> Result<Vec<(IdealType, u64)>> {
        let mut types = Vec::new();
        for k in 0..=kmax {
            for r1 in 0..=k {
                for r2 in 0..=(k - r1) {
                    types.push(IdealType::new(r1, r2, k - r1 - r2));
                }
            }
        }
        types.into_iter().map(|t| Ok((t, self.count_type(p, t)?))).collect()
    }

    /// Number of ideals of index `p^k` for `k = 0..=kmax`.
    pub fn local_counts(&self, p: u64, kmax: u32) -> Result<Vec<u64>> {
        let mut out = vec![0u64; kmax as usize + 1];
        for (t, n) in self.per_type_counts(p, kmax)? {
            out[t.weight() as usize] += n;
        }
        Ok(out)
    }

    fn diagonals(n: u64) -> Vec<(u64, u64, u64)> {
        let mut out = Vec::new();
        for d1 in (1..=n).filter(|d| n.is_multiple_of(*d)) {
            let rest = n / d1;
            for d2 in (1..=rest).filter(|d| rest.is_multiple_of(*d)) {
                out.push((d1, d2, rest / d2));
            }
        }
        out
    }

    fn global_budget(&self, n: u64) -> Result<Vec<(u64, u64, u64)>> {
        let diags = Self::diagonals(n);
        let needed: u128 = diags
            .iter()
            .map(|&(_, d2, d3)| d2 as u128 * d3 as u128 * d3 as u128)
            .sum();
        self.check_budget(needed)?;
        Ok(diags)
    }

    /// Number of ideals of index `n`.
    pub fn global_count(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::InvalidInput("index must be positive".into()));
        }
        Ok(self
            .global_budget(n)?
            .into_iter()
            .map(|(d1, d2, d3)| self.count_diagonal(d1, d2, d3))
            .sum())
    }

    /// Number of ideals of index `n`, enumerated in the given coordinates
    /// with the generic membership test.
    pub fn global_count_in(&self, basis: CoordinateBasis, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::InvalidInput("index must be positive".into()));
        }
        let mut total = 0u64;
        for (d1, d2, d3) in self.global_budget(n)? {
            let d = [d1 as i64, d2 as i64, d3 as i64];
            total += (0..d3 as i64)
                .into_par_iter()
                .map(|a3| {
                    let mut c = 0u64;
                    for a1 in 0..d2 as i64 {
                        for a2 in 0..d3 as i64 {
                            let h = HNFBasis::new(d, a1, a2, a3).expect("reduced by construction");
                            if is_ideal_in(&self.spec, basis, &h) {
                                c += 1;
                            }
                        }
                    }
                    c
                })
                .sum::<u64>();
        }
        Ok(total)
    }
}

/// The three closure conditions with `α`, `β` reduced modulo `d2·d3`, which
/// is all the conditions depend on; the reduced values fit in `i128`.
struct Kernel {
    d1: i128,
    d2: i128,
    d3: i128,
    alpha: i128,
    beta: i128,
    beta_minus_alpha: i128,
}

impl Kernel {
    fn new(spec: &CubicRingSpec, d1: u64, d2: u64, d3: u64) -> Self {
        let modulus = BigInt::from(d2) * BigInt::from(d3);
        let red = |v: &BigInt| v.mod_floor(&modulus).to_i128().expect("reduced below modulus");
        let d3i = d3 as i128;
        Kernel {
            d1: red(&BigInt::from(d1)),
            d2: d2 as i128,
            d3: d3i,
            alpha: red(&spec.alpha),
            beta: red(&spec.beta),
            beta_minus_alpha: (&spec.beta - &spec.alpha)
                .mod_floor(&BigInt::from(d3))
                .to_i128()
                .unwrap(),
        }
    }

    fn count_a3(&self, a3: u64) -> u64 {
        let a3 = a3 as i128;
        if (self.d2 + self.beta_minus_alpha * a3) % self.d3 != 0 {
            return 0;
        }
        let mut count = 0;
        for a1 in 0..self.d2 {
            let first = self.d1 + self.alpha * a1;
            if first % self.d2 != 0 {
                continue;
            }
            let q = (first / self.d2) % self.d3;
            let base = (a1 - q * a3).rem_euclid(self.d3);
            for a2 in 0..self.d3 {
                if (base + self.beta * a2) % self.d3 == 0 {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Ideals of type `t` at `p`, with the default budget.
pub fn oracle_count_type(spec: &CubicRingSpec, p: u64, t: IdealType) -> Result<u64> {
    Enumerator::new(spec.clone()).count_type(p, t)
}

/// Ideals of index `p^k`, `k = 0..=kmax`, with the default budget.
pub fn oracle_local_counts(spec: &CubicRingSpec, p: u64, kmax: u32) -> Result<Vec<u64>> {
    Enumerator::new(spec.clone()).local_counts(p, kmax)
}

/// Ideals of index `n`, with the default budget.
pub fn oracle_global_count(spec: &CubicRingSpec, n: u64) -> Result<u64> {
    Enumerator::new(spec.clone()).global_count(n)
}
