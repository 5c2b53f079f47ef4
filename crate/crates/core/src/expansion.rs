use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::perm::Permutation;

/// Finite map from permutations to non-zero integer coefficients: a linear
/// combination of basis elements indexed by S_∞.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpansionMap {
    coeffs: BTreeMap<Permutation, BigInt>,
}

impl ExpansionMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(p: Permutation, c: impl Into<BigInt>) -> Self {
        let mut m = Self::new();
        m.add(p, c);
        m
    }

    /// Adds `c` to the coefficient of `p`, dropping it if the sum is zero.
    pub fn add(&mut self, p: Permutation, c: impl Into<BigInt>) {
        let c = c.into();
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(p).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    pub fn get(&self, p: &Permutation) -> BigInt {
        self.coeffs.get(p).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &BigInt)> {
        self.coeffs.iter()
    }

    /// Entries sorted by `(length, text)`, the order used for output.
    pub fn sorted(&self) -> Vec<(&Permutation, &BigInt)> {
        self.sorted_padded(0).into_iter().map(|(p, c, _)| (p, c)).collect()
    }

    /// Entries with their text padded to `n`, sorted by `(length, text)`.
    fn sorted_padded(&self, n: usize) -> Vec<(&Permutation, &BigInt, String)> {
        let mut v: Vec<_> = self.coeffs.iter().map(|(p, c)| (p, c, p.to_padded_string(n))).collect();
        v.sort_by(|a, b| (a.0.length(), &a.2).cmp(&(b.0.length(), &b.2)));
        v
    }

    /// Only the entries whose permutation has the given length.
    pub fn restrict_to_length(&self, len: usize) -> ExpansionMap {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(p, _)| p.length() == len)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> ExpansionMap {
        let mut out = Self::new();
        for (p, v) in &self.coeffs {
            out.add(p.clone(), v * c);
        }
        out
    }

    /// JSON object keyed by permutation text in `(length, text)` order.
    /// Coefficients outside the `i64` range are written as decimal strings.
    pub fn to_json(&self) -> Value {
        self.to_json_padded(0)
    }

    /// Like [`to_json`](Self::to_json), with keys padded to `n` entries.
    pub fn to_json_padded(&self, n: usize) -> Value {
        let mut obj = Map::new();
        for (_, c, key) in self.sorted_padded(n) {
            let v = match c.to_i64() {
                Some(i) => Value::from(i),
                None => Value::from(c.to_string()),
            };
            obj.insert(key, v);
        }
        Value::Object(obj)
    }
}

impl FromIterator<(Permutation, BigInt)> for ExpansionMap {
    fn from_iter<I: IntoIterator<Item = (Permutation, BigInt)>>(iter: I) -> Self {
        let mut m = Self::new();
        for (p, c) in iter {
            m.add(p, c);
        }
        m
    }
}

impl ExpansionMap {
    /// `[421356] + [341256] - [431256]` style text with permutations padded
    /// to `n` entries, `0` when empty.
    pub fn to_padded_string(&self, n: usize) -> String {
        if self.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (_, c, text)) in self.sorted_padded(n).into_iter().enumerate() {
            let neg = c < &BigInt::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            out.push_str(match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            if mag != BigInt::from(1) {
                out.push_str(&mag.to_string());
            }
            out.push('[');
            out.push_str(&text);
            out.push(']');
        }
        out
    }
}

impl fmt::Display for ExpansionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_padded_string(0))
    }
}
