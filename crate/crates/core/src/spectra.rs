//! Integer matrices, their characteristic and minimal polynomials, and the
//! valuation profiles of matrices with three distinct integer eigenvalues.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{factor, prime_divisors, vp};
use crate::localzeta::ValuationProfile;
use crate::oracle::CubicRingSpec;
use crate::polyring::IntPolynomial;

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Parse("empty matrix".into()));
        }
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::Parse(format!(
                "non-square matrix: row {} has {} entries, expected {n}",
                i + 1,
                r.len()
            )));
        }
        Ok(IntMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            entries: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Adjacency matrix of a simple graph on `n` vertices.
    pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut m = Self::zeros(n);
        for &(u, v) in edges {
            m.entries[u * n + v] = BigInt::one();
            m.entries[v * n + u] = BigInt::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Symmetric 0/1 with zero diagonal.
    pub fn is_simple_graph(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            self.get(i, i).is_zero()
                && (0..n).all(|j| {
                    let v = self.get(i, j);
                    (v.is_zero() || v.is_one()) && v == self.get(j, i)
                })
        })
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    /// `P B P^T` for the permutation `perm` (row `i` of the result is row
    /// `perm[i]` of `self`).
    pub fn permuted(&self, perm: &[usize]) -> IntMatrix {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = self.get(perm[i], perm[j]).clone();
            }
        }
        out
    }

    /// `f(B)` by Horner's rule.
    pub fn eval_poly(&self, f: &IntPolynomial) -> IntMatrix {
        let n = self.n;
        let mut acc = Self::zeros(n);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc.entries[i * n + i] += c;
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Auto,
    Matrix,
    Graph6,
}

/// Parses a dense whitespace-separated matrix or a graph6 line.
pub fn parse_matrix(input: &str, format: InputFormat) -> Result<IntMatrix> {
    match format {
        InputFormat::Matrix => parse_dense(input),
        InputFormat::Graph6 => parse_graph6(input),
        InputFormat::Auto => {
            if looks_like_graph6(input) {
                parse_graph6(input)
            } else {
                parse_dense(input)
            }
        }
    }
}

fn looks_like_graph6(input: &str) -> bool {
    let body = input.trim();
    let body = body.strip_prefix(">>graph6<<").unwrap_or(body);
    !body.is_empty() && body.bytes().all(|b| (63..=126).contains(&b))
}

fn parse_dense(input: &str) -> Result<IntMatrix> {
    let rows = input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .map(|tok| {
                    tok.parse::<BigInt>()
                        .map_err(|_| Error::Parse(format!("not an integer: {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(rows)
}

/// Decodes one graph6 line (optional `>>graph6<<` header).
pub fn parse_graph6(input: &str) -> Result<IntMatrix> {
    let line = input.trim();
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    if let Some(b) = bytes.iter().find(|b| !(63..=126).contains(*b)) {
        return Err(Error::Parse(format!("invalid graph6 byte 0x{b:02x}")));
    }
    let (n, rest) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.get(1) != Some(&126) {
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 size field".into()));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(Error::Parse("truncated graph6 size field".into()));
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[8..])
    };
    if n == 0 {
        return Err(Error::Parse("graph6 graph has no vertices".into()));
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    if rest.len() != expected {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {expected} for {n} vertices",
            rest.len()
        )));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(IntMatrix::adjacency(n, &edges))
}

/// Encodes a simple graph's adjacency matrix as graph6 (no header).
pub fn to_graph6(m: &IntMatrix) -> Result<String> {
    if !m.is_simple_graph() {
        return Err(Error::InvalidInput("graph6 needs a simple graph".into()));
    }
    let n = m.dim();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + 63));
    }
    let mut bits = Vec::new();
    for j in 1..n {
        for i in 0..j {
            bits.push(m.get(i, j).is_one());
        }
    }
    for chunk in bits.chunks(6) {
        let mut v = 0u8;
        for (k, &b) in chunk.iter().enumerate() {
            if b {
                v |= 1 << (5 - k);
            }
        }
        out.push(v + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 is ASCII"))
}

/// `det(xI - B)` by Berkowitz's division-free algorithm.
pub fn char_poly(m: &IntMatrix) -> IntPolynomial {
    let n = m.dim();
    // Coefficient vector, highest degree first: [1, c_{n-1}, ..., c_0].
    let mut poly: Vec<BigInt> = vec![BigInt::one(), -m.get(0, 0).clone()];
    for r in 1..n {
        // Leading principal (r+1)x(r+1) block: A = [[A_r, C], [R, a_rr]].
        let a_rr = m.get(r, r).clone();
        let row: Vec<BigInt> = (0..r).map(|j| m.get(r, j).clone()).collect();
        let mut col: Vec<BigInt> = (0..r).map(|i| m.get(i, r).clone()).collect();
        // Toeplitz column: 1, -a_rr, -R C, -R A C, ..., -R A^{r-1} C.
        let mut t = vec![BigInt::one(), -a_rr];
        for _ in 0..r {
            let rc: BigInt = row.iter().zip(&col).map(|(x, y)| x * y).sum();
            t.push(-rc);
            col = (0..r).map(|i| (0..r).map(|j| m.get(i, j) * &col[j]).sum()).collect();
        }
        // New polynomial = Toeplitz(t) * poly, a (r+2) x (r+1) lower-triangular product.
        let next: Vec<BigInt> = (0..r + 2)
            .map(|i| {
                (0..=r.min(i))
                    .filter(|&j| i - j < t.len())
                    .map(|j| &t[i - j] * &poly[j])
                    .sum()
            })
            .collect();
        poly = next;
    }
    poly.reverse();
    IntPolynomial::new(poly)
}

/// Least-degree monic polynomial annihilating `m`: the first linear
/// dependency among `I, B, B^2, ...`, found by integer Gauss-Jordan
/// elimination on the flattened powers.
pub fn min_poly(m: &IntMatrix) -> IntPolynomial {
    let n = m.dim();
    // Reduced rows: (pivot column in the flattened vector, vector, combination
    // of powers it represents). Each row is kept with integer entries.
    let mut basis: Vec<(usize, Vec<BigInt>, Vec<BigInt>)> = Vec::new();
    let mut power = IntMatrix::identity(n);
    for k in 0..=n {
        let mut v = power.entries.clone();
        let mut comb = vec![BigInt::zero(); k + 1];
        comb[k] = BigInt::one();
        for (pc, bv, bc) in &basis {
            if v[*pc].is_zero() {
                continue;
            }
            // v <- piv*v - v[pc]*bv
            let piv = &bv[*pc];
            let f = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(bv) {
                *x = &*x * piv - &f * y;
            }
            comb.resize(comb.len().max(bc.len()), BigInt::zero());
            for (i, c) in comb.iter_mut().enumerate() {
                *c = &*c * piv - &f * bc.get(i).cloned().unwrap_or_default();
            }
            reduce_pair(&mut v, &mut comb);
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pc) => basis.push((pc, v, comb)),
            None => {
                // comb · (I, B, ..., B^k) = 0 with comb[k] != 0.
                let lead = comb[k].clone();
                let coeffs: Vec<BigInt> = comb
                    .iter()
                    .map(|c| {
                        debug_assert!(c.is_multiple_of(&lead));
                        c / &lead
                    })
                    .collect();
                return IntPolynomial::new(coeffs);
            }
        }
        power = power.mul(m);
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

/// Divide a (vector, combination) pair by the gcd of all its entries.
fn reduce_pair(v: &mut [BigInt], comb: &mut [BigInt]) {
    let g = v.iter().chain(comb.iter()).fold(BigInt::zero(), |g, x| g.gcd(x));
    if g > BigInt::one() {
        v.iter_mut().for_each(|x| *x /= &g);
        comb.iter_mut().for_each(|x| *x /= &g);
    }
}

/// Spectral summary of a three-eigenvalue integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumReport {
    pub char_poly: IntPolynomial,
    pub min_poly: IntPolynomial,
    /// Sorted ascending.
    pub eigenvalues: [BigInt; 3],
    /// `(λ2 - λ1, λ3 - λ1)`: the ring is `Z[x]/x(x-α)(x-β)`.
    pub shifted_pair: (BigInt, BigInt),
    pub bad_primes: Vec<u64>,
    pub profiles: BTreeMap<u64, ValuationProfile>,
}

impl SpectrumReport {
    pub fn ring(&self) -> CubicRingSpec {
        CubicRingSpec::new(self.shifted_pair.0.clone(), self.shifted_pair.1.clone()).expect("eigenvalues are distinct")
    }
}

/// Valuation profiles at the bad primes of the root triple `{0, α, β}`,
/// from the valuations of the three pairwise differences.
pub fn profiles_from_roots(roots: &[BigInt; 3]) -> Result<BTreeMap<u64, ValuationProfile>> {
    let diffs = [&roots[1] - &roots[0], &roots[2] - &roots[0], &roots[2] - &roots[1]];
    if diffs.iter().any(Zero::is_zero) {
        return Err(Error::InvalidInput("roots must be distinct".into()));
    }
    let product: BigInt = diffs.iter().product();
    let mut out = BTreeMap::new();
    for p in prime_divisors(&product)? {
        let mut vals: Vec<u32> = diffs.iter().map(|d| vp(d, p).finite().expect("nonzero")).collect();
        vals.sort_unstable();
        if vals[0] != vals[1] {
            return Err(Error::Internal(format!(
                "ultrametric violated at p={p}: valuations {vals:?}"
            )));
        }
        out.insert(p, ValuationProfile::new(p, vals[0], vals[2])?);
    }
    Ok(out)
}

/// Integer roots of a monic integer polynomial, with multiplicity, ascending.
fn integer_roots(f: &IntPolynomial) -> Result<Vec<BigInt>> {
    let mut f = f.clone();
    let mut roots = Vec::new();
    while f.degree().unwrap_or(0) > 0 && f.coeff(0).is_zero() {
        roots.push(BigInt::zero());
        f = IntPolynomial::new(f.coeffs()[1..].to_vec());
    }
    if f.degree().unwrap_or(0) > 0 {
        let c0 = f.coeff(0);
        let mut candidates = Vec::new();
        for d in divisors(&c0)? {
            candidates.push(d.clone());
            candidates.push(-d);
        }
        for r in candidates {
            while f.degree().unwrap_or(0) > 0 && f.eval(&r).is_zero() {
                let (q, _) = f.div_rem_monic(&IntPolynomial::new(vec![-r.clone(), BigInt::one()]));
                f = q;
                roots.push(r.clone());
            }
        }
    }
    if f.degree().unwrap_or(0) > 0 {
        return Err(Error::NonIntegralSpectrum(format!("factor {f} has no integer roots")));
    }
    roots.sort();
    Ok(roots)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor(n)? {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= p;
            }
        }
        divs = next;
    }
    Ok(divs)
}

/// Characteristic and minimal polynomials, eigenvalues and the valuation
/// profiles of the ring generated by `m`.
pub fn analyze(m: &IntMatrix) -> Result<SpectrumReport> {
    let cp = char_poly(m);
    let mp = min_poly(m);
    if !m.eval_poly(&mp).is_zero() {
        return Err(Error::Internal("minimal polynomial does not annihilate".into()));
    }
    let (_, rem) = cp.div_rem_monic(&mp);
    if !rem.is_zero() {
        return Err(Error::Internal(
            "minimal polynomial does not divide characteristic polynomial".into(),
        ));
    }
    let deg = mp.degree().unwrap_or(0);
    if deg != 3 {
        return Err(Error::NotThreeEigenvalues(deg));
    }
    let roots = integer_roots(&mp)?;
    if roots[0] == roots[1] || roots[1] == roots[2] {
        return Err(Error::RepeatedEigenvalue(mp.to_string()));
    }
    let eigenvalues: [BigInt; 3] = roots.try_into().expect("three roots");
    let profiles = profiles_from_roots(&eigenvalues)?;
    let shifted_pair = (&eigenvalues[1] - &eigenvalues[0], &eigenvalues[2] - &eigenvalues[0]);
    Ok(SpectrumReport {
        char_poly: cp,
        min_poly: mp,
        bad_primes: profiles.keys().copied().collect(),
        eigenvalues,
        shifted_pair,
        profiles,
    })
}

/// Small named graphs used by tests and the CLI documentation.
pub mod graphs {
    use super::IntMatrix;

    pub fn cycle(n: usize) -> IntMatrix {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        IntMatrix::adjacency(n, &edges)
    }

    pub fn complete(n: usize) -> IntMatrix {
        let edges: Vec<_> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
        IntMatrix::adjacency(n, &edges)
    }

    /// Outer 5-cycle 0..5, inner pentagram 5..10, spokes i -- i+5.
    pub fn petersen() -> IntMatrix {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        IntMatrix::adjacency(10, &edges)
    }

    /// Complete multipartite graph with `parts` parts of size `size`.
    pub fn complete_multipartite(parts: usize, size: usize) -> IntMatrix {
        let n = parts * size;
        let edges: Vec<_> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i / size != j / size)
            .collect();
        IntMatrix::adjacency(n, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::graphs::*;
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn parse_dense_and_graph6() {
        let k2 = parse_matrix("0 1\n1 0", InputFormat::Auto).unwrap();
        assert_eq!(k2, complete(2));
        let c4 = parse_matrix("Cl", InputFormat::Auto).unwrap();
        assert_eq!(c4, cycle(4));
        assert_eq!(parse_matrix(">>graph6<<Cl\n", InputFormat::Graph6).unwrap(), cycle(4));
        assert!(matches!(
            parse_matrix("0 1\n1", InputFormat::Auto),
            Err(Error::Parse(_))
        ));
        assert!(parse_matrix("0 x\n1 0", InputFormat::Matrix).is_err());
        assert!(parse_matrix("Cll", InputFormat::Graph6).is_err());
        assert!(parse_matrix("C", InputFormat::Graph6).is_err());
    }

    #[test]
    fn graph6_roundtrip() {
        for m in [
            cycle(4),
            petersen(),
            complete(7),
            complete_multipartite(3, 2),
            cycle(70),
        ] {
            let s = to_graph6(&m).unwrap();
            assert_eq!(parse_graph6(&s).unwrap(), m);
        }
        assert_eq!(to_graph6(&cycle(4)).unwrap(), "Cl");
        assert_eq!(to_graph6(&petersen()).unwrap().len(), 1 + 8);
    }

    #[test]
    fn characteristic_polynomials() {
        assert_eq!(char_poly(&IntMatrix::identity(3)), poly(&[-1, 3, -3, 1]));
        assert_eq!(char_poly(&cycle(4)), poly(&[0, 0, -4, 0, 1]));
        assert_eq!(char_poly(&IntMatrix::zeros(2)), poly(&[0, 0, 1]));
        // Petersen: (x-3)(x-1)^5(x+2)^4
        let expected = [(poly(&[-3, 1]), 1), (poly(&[-1, 1]), 5), (poly(&[2, 1]), 4)]
            .iter()
            .fold(IntPolynomial::one(), |acc, (f, e)| (0..*e).fold(acc, |a, _| &a * f));
        assert_eq!(char_poly(&petersen()), expected);
        // trace -1, principal 2x2 minors 6 - 47 - 22, determinant -154
        let m = IntMatrix::from_i64(&[vec![2, -1, 7], vec![0, 3, 1], vec![5, 4, -6]]).unwrap();
        assert_eq!(char_poly(&m), poly(&[154, -63, 1, 1]));
    }

    #[test]
    fn minimal_polynomials() {
        assert_eq!(min_poly(&petersen()), poly(&[6, -5, -2, 1]));
        assert_eq!(min_poly(&cycle(4)), poly(&[0, -4, 0, 1]));
        assert_eq!(min_poly(&IntMatrix::identity(3)), poly(&[-1, 1]));
        assert_eq!(min_poly(&IntMatrix::zeros(3)), poly(&[0, 1]));
        let jordan = IntMatrix::from_i64(&[vec![2, 1, 0], vec![0, 2, 0], vec![0, 0, 5]]).unwrap();
        assert_eq!(
            min_poly(&jordan),
            &(&poly(&[-2, 1]) * &poly(&[-2, 1])) * &poly(&[-5, 1])
        );
    }

    #[test]
    fn analyze_petersen() {
        let r = analyze(&petersen()).unwrap();
        assert_eq!(r.eigenvalues, [b(-2), b(1), b(3)]);
        assert_eq!(r.bad_primes, vec![2, 3, 5]);
        for p in [2, 3, 5] {
            assert_eq!(r.profiles[&p], ValuationProfile::new(p, 0, 1).unwrap());
        }
        assert_eq!(r.shifted_pair, (b(3), b(5)));
    }

    #[test]
    fn analyze_c4() {
        let r = analyze(&cycle(4)).unwrap();
        assert_eq!(r.eigenvalues, [b(-2), b(0), b(2)]);
        assert_eq!(r.bad_primes, vec![2]);
        assert_eq!(r.profiles[&2], ValuationProfile::new(2, 1, 2).unwrap());
    }

    #[test]
    fn analyze_rejections() {
        assert!(matches!(analyze(&complete(4)), Err(Error::NotThreeEigenvalues(2))));
        // x^3 - 2 has no integer root
        let companion = IntMatrix::from_i64(&[vec![0, 0, 2], vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert!(matches!(analyze(&companion), Err(Error::NonIntegralSpectrum(_))));
        let jordan = IntMatrix::from_i64(&[vec![2, 1, 0], vec![0, 2, 0], vec![0, 0, 5]]).unwrap();
        assert!(matches!(analyze(&jordan), Err(Error::RepeatedEigenvalue(_))));
    }

    #[test]
    fn analyze_is_permutation_invariant() {
        let m = petersen();
        let base = analyze(&m).unwrap();
        for perm in [[9, 8, 7, 6, 5, 4, 3, 2, 1, 0], [3, 1, 4, 0, 5, 9, 2, 6, 8, 7]] {
            assert_eq!(analyze(&m.permuted(&perm)).unwrap(), base);
        }
    }

    #[test]
    fn profiles_are_shift_invariant() {
        for (al, be) in [(1i64, 3i64), (2, -2), (12, 30), (-9, 18), (5, 45)] {
            let base = profiles_from_roots(&[b(0), b(al), b(be)]).unwrap();
            assert_eq!(profiles_from_roots(&[b(0), b(-al), b(be - al)]).unwrap(), base);
            assert_eq!(profiles_from_roots(&[b(0), b(-be), b(al - be)]).unwrap(), base);
        }
    }
}
