//! Sparse polynomials in `x1, x2, …` with arbitrary-precision integer
//! coefficients.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector with trailing zeros trimmed.
///
/// Ordered by total degree ascending, then lexicographically descending
/// (`x1` before `x2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Self(exps)
    }

    pub fn one() -> Self {
        Self(Vec::new())
    }

    /// `x_i` (1-indexed).
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i];
        e[i - 1] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// Exponent of `x_i` (1-indexed).
    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() { (&self.0, &other.0) } else { (&other.0, &self.0) };
        let mut e = long.clone();
        for (a, b) in e.iter_mut().zip(short) {
            *a += b;
        }
        Monomial(e)
    }

    fn with_exponent(&self, i: usize, value: u32) -> Monomial {
        let mut e = self.0.clone();
        if e.len() < i {
            e.resize(i, 0);
        }
        e[i - 1] = value;
        Monomial::new(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // trimmed vectors compare like their zero-padded forms
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i), 1)
    }

    pub fn term(m: Monomial, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The lex-smallest term among those of lowest total degree.
    ///
    /// For a Grothendieck polynomial this is `x^code(π)` with coefficient 1,
    /// which is what the basis expansion cancels against.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        let d = self.terms.keys().next()?.degree();
        self.terms.iter().take_while(|(m, _)| m.degree() == d).last()
    }

    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(Monomial::num_vars).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Polynomial, c: &BigInt) {
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect() }
    }

    /// Sets every variable beyond `x_t` to zero.
    pub fn truncate(&self, t: usize) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().filter(|(m, _)| m.num_vars() <= t).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Sum of the terms of minimal total degree.
    pub fn lowest_degree_part(&self) -> Result<Polynomial> {
        let d = self.terms.keys().next().ok_or(Error::ZeroPolynomial)?.degree();
        Ok(Polynomial {
            terms: self
                .terms
                .iter()
                .take_while(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    /// Exchanges `x_i` and `x_{i+1}`.
    pub fn swap_adjacent(&self, i: usize) -> Polynomial {
        Polynomial::from_terms(self.terms.iter().map(|(m, c)| {
            let (a, b) = (m.exponent(i), m.exponent(i + 1));
            (m.with_exponent(i, b).with_exponent(i + 1, a), c.clone())
        }))
    }

    /// Exact quotient by `x_i - x_{i+1}`.
    ///
    /// Synthetic division in `x_i` over the remaining variables; a non-zero
    /// remainder is reported as [`Error::NonExactDivision`].
    pub fn div_by_var_difference(&self, i: usize) -> Result<Polynomial> {
        // group as Σ_k g_k · x_i^k with g_k free of x_i
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            by_power.entry(m.exponent(i)).or_default().add_term(m.with_exponent(i, 0), c.clone());
        }
        let Some(&top) = by_power.keys().next_back() else {
            return Ok(Polynomial::zero());
        };
        let y = Monomial::var(i + 1);
        // q_{k-1} = g_k + y q_k, remainder = g_0 + y q_0
        let mut quotient = Polynomial::zero();
        let mut carry = Polynomial::zero();
        for k in (0..=top).rev() {
            let mut coeff = carry.mul_monomial(&y);
            if let Some(g) = by_power.get(&k) {
                coeff = &coeff + g;
            }
            if k == 0 {
                if !coeff.is_zero() {
                    return Err(Error::NonExactDivision(i));
                }
            } else {
                for (m, c) in &coeff.terms {
                    quotient.add_term(m.with_exponent(i, k - 1), c.clone());
                }
                carry = coeff;
            }
        }
        Ok(quotient)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Polynomial { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for Polynomial {
    /// Canonical order, e.g. `x1 + x2 - x1*x2`; zero prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (k, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| match e {
                        1 => format!("x{}", i + 1),
                        _ => format!("x{}^{}", i + 1, e),
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses sums of terms like `3*x1^2*x2`, `- x3`, `7`.
    fn from_str(text: &str) -> Result<Self> {
        let fail = |reason: String| Error::PolyParse { text: text.to_string(), reason };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(fail("empty input".into()));
        }
        let mut poly = Polynomial::zero();
        let mut chunks = Vec::new();
        let mut start = 0;
        for (k, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && k > 0 && !compact[..k].ends_with('^') {
                chunks.push(&compact[start..k]);
                start = k;
            }
        }
        chunks.push(&compact[start..]);
        for chunk in chunks {
            let (sign, body) = match chunk.as_bytes().first() {
                Some(b'-') => (-1, &chunk[1..]),
                Some(b'+') => (1, &chunk[1..]),
                _ => (1, chunk),
            };
            if body.is_empty() {
                return Err(fail("dangling sign".into()));
            }
            let mut coeff = BigInt::from(sign);
            let mut exps: Vec<u32> = Vec::new();
            for factor in body.split('*') {
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, pow) = match var.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (var, "1"),
                    };
                    let idx: usize =
                        idx.parse().ok().filter(|&i| i >= 1).ok_or_else(|| fail(format!("bad variable {factor:?}")))?;
                    let pow: u32 = pow.parse().map_err(|_| fail(format!("bad exponent {factor:?}")))?;
                    if exps.len() < idx {
                        exps.resize(idx, 0);
                    }
                    exps[idx - 1] += pow;
                } else {
                    let c: BigInt = factor.parse().map_err(|_| fail(format!("bad factor {factor:?}")))?;
                    coeff *= c;
                }
            }
            poly.add_term(Monomial::new(exps), coeff);
        }
        Ok(poly)
    }
}
