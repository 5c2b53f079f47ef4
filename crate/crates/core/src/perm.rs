//! Finitely supported permutations of the positive integers.
//!
//! A [`Permutation`] stores its one-line notation with trailing fixed points
//! trimmed, so every element of S_∞ has exactly one stored window and the
//! identity stores nothing. Positions and values are 1-indexed throughout.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn identity() -> Self {
        Self { values: Vec::new() }
    }

    /// Builds a permutation from one-line notation `π(1), …, π(n)`.
    pub fn from_one_line(values: Vec<usize>) -> Result<Self> {
        if values.contains(&0) {
            return Err(Error::ZeroEntry);
        }
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v > n || seen[v - 1] {
                return Err(Error::NotBijection(values));
            }
            seen[v - 1] = true;
        }
        Ok(Self::from_trusted(values))
    }

    /// Trims a vector already known to be a bijection of `1..=len`.
    fn from_trusted(mut values: Vec<usize>) -> Self {
        while values.last().is_some_and(|&v| v == values.len()) {
            values.pop();
        }
        Self { values }
    }

    /// Every element of S_n, in lexicographic order of one-line notation.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n).permutations(n).map(Self::from_trusted)
    }

    /// Length of the stored window; 0 for the identity.
    pub fn window(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// One-line notation padded with fixed points up to `n`.
    pub fn padded(&self, n: usize) -> Vec<usize> {
        let mut v = self.values.clone();
        v.extend(self.values.len() + 1..=n);
        v
    }

    pub fn is_identity(&self) -> bool {
        self.values.is_empty()
    }

    /// `π(i)` for any position `i ≥ 1`.
    pub fn at(&self, i: usize) -> usize {
        debug_assert!(i >= 1);
        self.values.get(i - 1).copied().unwrap_or(i)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self::from_trusted(inv)
    }

    /// Number of inversions, i.e. Coxeter length.
    pub fn length(&self) -> usize {
        let v = &self.values;
        (0..v.len()).map(|i| v[i + 1..].iter().filter(|&&w| w < v[i]).count()).sum()
    }

    pub fn descents(&self) -> impl Iterator<Item = usize> + '_ {
        self.values.windows(2).enumerate().filter(|(_, w)| w[0] > w[1]).map(|(i, _)| i + 1)
    }

    /// Largest `l` with `π(l) > π(l+1)`.
    pub fn last_descent(&self) -> Option<usize> {
        self.descents().last()
    }

    /// The position of the unique descent, if there is exactly one.
    pub fn grassmannian_descent(&self) -> Option<usize> {
        let mut d = self.descents();
        match (d.next(), d.next()) {
            (Some(s), None) => Some(s),
            _ => None,
        }
    }

    /// True iff the permutation avoids the pattern 2143.
    pub fn is_vexillary(&self) -> bool {
        let v = &self.values;
        !v.iter().enumerate().tuple_combinations().any(|((_, &a), (_, &b), (_, &c), (_, &d))| b < a && a < d && d < c)
    }

    pub fn lehmer_code(&self) -> LehmerCode {
        let v = &self.values;
        let entries = (0..v.len()).map(|i| v[i + 1..].iter().filter(|&&w| w < v[i]).count()).collect();
        LehmerCode::new(entries)
    }

    pub fn from_lehmer(code: &LehmerCode) -> Permutation {
        let entries = code.entries();
        let n = entries.iter().enumerate().map(|(i, &c)| i + 1 + c).max().unwrap_or(0).max(entries.len());
        let mut available: Vec<usize> = (1..=n).collect();
        let mut values = Vec::with_capacity(n);
        for i in 0..n {
            let c = entries.get(i).copied().unwrap_or(0);
            values.push(available.remove(c));
        }
        Self::from_trusted(values)
    }

    /// Block sum of permutation matrices: `σ` in the first `n` slots and
    /// `α` shifted by `n` in the next `n`.
    pub fn star(sigma: &Permutation, alpha: &Permutation, n: usize) -> Result<Permutation> {
        for p in [sigma, alpha] {
            if p.window() > n {
                return Err(Error::WindowExceeds { perm: p.clone(), n });
            }
        }
        let mut values = sigma.padded(n);
        values.extend(alpha.padded(n).into_iter().map(|v| v + n));
        Ok(Self::from_trusted(values))
    }

    /// `N`-stabilization: fixes `1..=N` and shifts the rest of the permutation by `N`.
    pub fn stabilize(&self, n: usize) -> Permutation {
        let mut values: Vec<usize> = (1..=n).collect();
        values.extend(self.values.iter().map(|v| v + n));
        Self::from_trusted(values)
    }

    /// Conjugation by the longest element of S_n.
    pub fn w0_conjugate(&self, n: usize) -> Result<Permutation> {
        if self.window() > n {
            return Err(Error::WindowExceeds { perm: self.clone(), n });
        }
        let values = (1..=n).map(|i| n + 1 - self.at(n + 1 - i)).collect();
        Ok(Self::from_trusted(values))
    }

    /// Right multiplication by the transposition `t_{i↔j}`: swaps the entries
    /// in positions `i` and `j`.
    ///
    /// Panics if `i == j` or either position is zero.
    pub fn transpose(&self, i: usize, j: usize) -> Permutation {
        assert!(i != j && i >= 1 && j >= 1, "transpose needs two distinct positions");
        let mut values = self.padded(i.max(j));
        values.swap(i - 1, j - 1);
        Self::from_trusted(values)
    }
}

/// Single-digit runs are written compactly; multi-digit entries stand alone
/// between commas.
fn write_one_line(values: &[usize]) -> String {
    let mut out = String::new();
    let mut prev_wide = false;
    for (k, &v) in values.iter().enumerate() {
        let wide = v >= 10;
        if k > 0 && (wide || prev_wide) {
            out.push(',');
        }
        out.push_str(&v.to_string());
        prev_wide = wide;
    }
    out
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return f.write_str("1");
        }
        f.write_str(&write_one_line(&self.values))
    }
}

impl Permutation {
    /// One-line text of the window padded with fixed points to at least `n`
    /// entries, e.g. `4213` in S_6 is `421356`. Falls back to the canonical
    /// text when the padding is empty.
    pub fn to_padded_string(&self, n: usize) -> String {
        let values = self.padded(n.max(self.window()));
        if values.is_empty() {
            return "1".into();
        }
        write_one_line(&values)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts compact digit strings (`4317625`), comma lists (`1,2,3`), and
    /// the mixed form produced by `Display` (`123469857,10`).
    fn from_str(text: &str) -> Result<Self> {
        Self::parse_with_width(text).map(|(p, _)| p)
    }
}

impl Permutation {
    /// Parses like [`FromStr`] and also returns the number of entries as
    /// written, including trailing fixed points (6 for `432156`).
    pub fn parse_with_width(text: &str) -> Result<(Self, usize)> {
        let fail = |reason: &str| Error::PermParse { text: text.to_string(), reason: reason.to_string() };
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(fail("empty input"));
        }
        if trimmed.starts_with('-') || trimmed.contains(",-") {
            return Err(Error::ZeroEntry);
        }
        let tokens: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if tokens.iter().any(|t| t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit())) {
            return Err(fail("expected digits separated by commas"));
        }

        // Each multi-character token is either one number or a run of digits.
        let ambiguous: Vec<usize> = (0..tokens.len()).filter(|&k| tokens[k].len() > 1).collect();
        if ambiguous.len() > 20 {
            return Err(fail("too many multi-digit tokens"));
        }
        let mut valid = Vec::new();
        let mut last_err = None;
        for mask in 0u32..(1 << ambiguous.len()) {
            let mut values = Vec::new();
            let mut ok = true;
            for (k, tok) in tokens.iter().enumerate() {
                let as_run = ambiguous.iter().position(|&a| a == k).is_some_and(|bit| mask & (1 << bit) != 0);
                if as_run {
                    values.extend(tok.bytes().map(|b| (b - b'0') as usize));
                } else {
                    match tok.parse::<usize>() {
                        Ok(v) => values.push(v),
                        Err(_) => ok = false,
                    }
                }
            }
            if !ok {
                continue;
            }
            let width = values.len();
            match Permutation::from_one_line(values) {
                Ok(p) => valid.push((p, width)),
                Err(e) => last_err = Some(e),
            }
        }
        valid.dedup();
        match valid.len() {
            0 => Err(last_err.unwrap_or_else(|| fail("no valid reading"))),
            1 => Ok(valid.pop().unwrap()),
            _ => valid
                .into_iter()
                .find(|(p, w)| p.to_padded_string(*w) == trimmed)
                .ok_or_else(|| fail("ambiguous digit grouping")),
        }
    }
}

/// Inversion counts `c_i = #{j > i : π(j) < π(i)}` with trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LehmerCode(Vec<usize>);

impl LehmerCode {
    pub fn new(mut entries: Vec<usize>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        Self(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}
