//! Dense integer polynomials in `x = p^{-s}` and their expansion over the
//! local denominator `(1 - x)^3`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial with exact integer coefficients; `coeffs[i]` multiplies `x^i`.
/// The last stored coefficient is never zero; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

/// Coefficients of `x^0..=x^K` of a formal power series.
pub type SeriesPrefix = Vec<BigInt>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    Text,
    Latex,
    Json,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `(1 - x)^e`
    pub fn one_minus_x_pow(e: u32) -> Self {
        let base = IntPolynomial::from_i64(&[1, -1]);
        (0..e).fold(IntPolynomial::one(), |acc, _| &acc * &base)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Exact division by a monic polynomial: returns `(quotient, remainder)`.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPolynomial::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd].clone();
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    /// First `k + 1` coefficients of `self(x) / (1 - x)^3`.
    ///
    /// Uses `1/(1-x)^3 = sum_m (m+1)(m+2)/2 x^m`.
    pub fn expand_over_cube(&self, k: usize) -> SeriesPrefix {
        (0..=k)
            .map(|n| {
                self.coeffs
                    .iter()
                    .enumerate()
                    .take_while(|(j, _)| *j <= n)
                    .map(|(j, f)| f * tetra(n - j))
                    .sum()
            })
            .collect()
    }

    /// Render in descending degree order.
    pub fn render(&self, style: RenderStyle) -> String {
        match style {
            RenderStyle::Json => {
                let arr: Vec<String> = if self.is_zero() {
                    vec!["0".into()]
                } else {
                    self.coeffs.iter().map(|c| c.to_string()).collect()
                };
                format!("{{\"coeffs\":[{}]}}", arr.join(","))
            }
            RenderStyle::Text | RenderStyle::Latex => {
                if self.is_zero() {
                    return "0".into();
                }
                let mut out = String::new();
                for (i, c) in self.coeffs.iter().enumerate().rev() {
                    if c.is_zero() {
                        continue;
                    }
                    if c.is_negative() {
                        out.push('-');
                    } else if !out.is_empty() {
                        out.push('+');
                    }
                    let mag = c.abs();
                    if i == 0 || !mag.is_one() {
                        out.push_str(&mag.to_string());
                    }
                    match (i, style) {
                        (0, _) => {}
                        (1, _) => out.push('x'),
                        (_, RenderStyle::Latex) => out.push_str(&format!("x^{{{i}}}")),
                        _ => out.push_str(&format!("x^{i}")),
                    }
                }
                out
            }
        }
    }
}

/// `(m+1)(m+2)/2`, the coefficient of `x^m` in `(1-x)^{-3}`.
pub(crate) fn tetra(m: usize) -> BigInt {
    let m = BigInt::from(m);
    (&m + 1u32) * (&m + 2u32) / 2u32
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(RenderStyle::Text))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: IntPolynomial) -> IntPolynomial {
        &self + &rhs
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: IntPolynomial) -> IntPolynomial {
        &self * &rhs
    }
}
