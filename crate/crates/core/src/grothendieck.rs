//! Grothendieck and Schubert polynomials, and expansion in the Grothendieck
//! basis.
//!
//! Two independent constructions are provided. [`Grothendieck::polynomial`]
//! recurses on the K-theoretic transition formula
//!
//! ```text
//! G_γ = G_γ' + (x_g − 1) · Σ_{I ⊆ P} (−1)^{|I|} G_{γ' t_I}
//! ```
//!
//! where `g` is the last descent, `γ' = γ t_{g↔m}` removes the maximal corner
//! and `P` are the positions `a < g` with `ℓ(γ' t_{a↔g}) = ℓ(γ') + 1`.
//! [`grothendieck_dd`] starts from the top class of S_n and applies isobaric
//! divided differences.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::diagram::transition_pair;
use crate::error::{Error, Result};
use crate::expansion::ExpansionMap;
use crate::perm::{LehmerCode, Permutation};
use crate::poly::{Monomial, Polynomial};

/// Default cap on the number of basis subtractions in [`expand_in_basis`].
pub const DEFAULT_EXPANSION_CEILING: usize = 1_000_000;

/// Memoized transition-formula construction.
///
/// The cache tolerates concurrent readers and racing inserts of the same
/// value; results never depend on interleaving.
#[derive(Default)]
pub struct Grothendieck {
    cache: RwLock<HashMap<Permutation, Arc<Polynomial>>>,
}

impl Grothendieck {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide instance used by the free functions of this module.
    pub fn global() -> &'static Grothendieck {
        static GLOBAL: OnceLock<Grothendieck> = OnceLock::new();
        GLOBAL.get_or_init(Grothendieck::new)
    }

    pub fn cached(&self) -> usize {
        self.cache.read().unwrap().len()
    }

    pub fn polynomial(&self, p: &Permutation) -> Arc<Polynomial> {
        if let Some(hit) = self.cache.read().unwrap().get(p) {
            return Arc::clone(hit);
        }
        let value = Arc::new(self.compute(p));
        let mut cache = self.cache.write().unwrap();
        Arc::clone(cache.entry(p.clone()).or_insert(value))
    }

    fn compute(&self, p: &Permutation) -> Polynomial {
        let Ok(pair) = transition_pair(p) else {
            return Polynomial::one();
        };
        let g = pair.g;
        let reduced = &pair.reduced;
        let base_len = reduced.length();
        let raising: Vec<usize> = (1..g).filter(|&a| reduced.transpose(a, g).length() == base_len + 1).collect();

        // Σ over subsets I of (−1)^{|I|} G_{γ' t_{i1↔g} ⋯ t_{ik↔g}}, indices increasing
        let mut alternating = Polynomial::zero();
        for mask in 0u64..(1 << raising.len()) {
            let mut q = reduced.clone();
            for (bit, &a) in raising.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    q = q.transpose(a, g);
                }
            }
            let sign = if mask.count_ones() % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            alternating.add_scaled(&self.polynomial(&q), &sign);
        }
        let xg_minus_one = &Polynomial::var(g) - &Polynomial::one();
        &*self.polynomial(reduced) + &(&xg_minus_one * &alternating)
    }

    /// `Σ c_π G_π`.
    pub fn recombine(&self, map: &ExpansionMap) -> Polynomial {
        let mut out = Polynomial::zero();
        for (p, c) in map.iter() {
            out.add_scaled(&self.polynomial(p), c);
        }
        out
    }

    /// Expands `f` in the Grothendieck basis by repeatedly cancelling the
    /// lex-smallest lowest-degree term `c·x^e` with `c·G_π`, `π` the
    /// permutation with Lehmer code `e`.
    pub fn expand(&self, f: &Polynomial, ceiling: usize) -> Result<ExpansionMap> {
        let mut rest = f.clone();
        let mut out = ExpansionMap::new();
        for _ in 0..ceiling {
            let Some((m, c)) = rest.leading_term() else {
                return Ok(out);
            };
            let (m, c) = (m.clone(), c.clone());
            let code = LehmerCode::new(m.exponents().iter().map(|&e| e as usize).collect());
            let pi = Permutation::from_lehmer(&code);
            let basis = self.polynomial(&pi);
            match basis.leading_term() {
                Some((lead, one)) if *lead == m && one.is_one() => {}
                _ => return Err(Error::LeadingTerm(pi)),
            }
            rest.add_scaled(&basis, &-c.clone());
            out.add(pi, c);
        }
        if rest.is_zero() {
            Ok(out)
        } else {
            Err(Error::ExpansionDiverged(ceiling))
        }
    }
}

/// Grothendieck polynomial via the transition recursion, memoized globally.
pub fn grothendieck(p: &Permutation) -> Arc<Polynomial> {
    Grothendieck::global().polynomial(p)
}

/// Schubert polynomial: the lowest-degree part of the Grothendieck polynomial.
pub fn schubert(p: &Permutation) -> Polynomial {
    grothendieck(p).lowest_degree_part().expect("Grothendieck polynomials are non-zero")
}

pub fn expand_in_basis(f: &Polynomial) -> Result<ExpansionMap> {
    Grothendieck::global().expand(f, DEFAULT_EXPANSION_CEILING)
}

/// Structure constants `C_{σ,ρ}^π` from `G_σ G_ρ = Σ C_{σ,ρ}^π G_π`.
pub fn structure_constants(sigma: &Permutation, rho: &Permutation) -> Result<ExpansionMap> {
    let product = &*grothendieck(sigma) * &*grothendieck(rho);
    expand_in_basis(&product)
}

/// Isobaric divided difference `π_i f = ∂_i((1 − x_{i+1}) f)`.
pub fn isobaric_divided_difference(f: &Polynomial, i: usize) -> Result<Polynomial> {
    let g = &(&Polynomial::one() - &Polynomial::var(i + 1)) * f;
    let diff = &g - &g.swap_adjacent(i);
    diff.div_by_var_difference(i)
}

/// Grothendieck polynomial from the top class `Π x_i^{n−i}` of S_n by
/// isobaric divided differences.
pub fn grothendieck_dd(p: &Permutation, n: usize) -> Result<Polynomial> {
    if p.window() > n {
        return Err(Error::WindowExceeds { perm: p.clone(), n });
    }
    let mut memo = HashMap::new();
    dd_rec(&p.padded(n), n, &mut memo)
}

fn dd_rec(w: &[usize], n: usize, memo: &mut HashMap<Vec<usize>, Polynomial>) -> Result<Polynomial> {
    if let Some(hit) = memo.get(w) {
        return Ok(hit.clone());
    }
    let value = match (0..n.saturating_sub(1)).find(|&k| w[k] < w[k + 1]) {
        None => {
            let exps = (1..=n).map(|i| (n - i) as u32).collect();
            Polynomial::term(Monomial::new(exps), 1)
        }
        // w = u s_i with u(i) > u(i+1), so G_w = π_i G_u
        Some(k) => {
            let mut u = w.to_vec();
            u.swap(k, k + 1);
            let above = dd_rec(&u, n, memo)?;
            isobaric_divided_difference(&above, k + 1)?
        }
    };
    memo.insert(w.to_vec(), value.clone());
    Ok(value)
}

/// Convenience for tests and tools: is `Σ c_π G_π` equal to `f`?
pub fn reproduces(map: &ExpansionMap, f: &Polynomial) -> bool {
    let diff = &Grothendieck::global().recombine(map) - f;
    diff.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{k_march, pivot_rows};

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn poly(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn map(entries: &[(&str, i64)]) -> ExpansionMap {
        entries.iter().map(|&(s, c)| (p(s), BigInt::from(c))).collect()
    }

    #[test]
    fn transition_examples() {
        assert_eq!(*grothendieck(&Permutation::identity()), Polynomial::one());
        assert_eq!(*grothendieck(&p("21")), poly("x1"));
        assert_eq!(*grothendieck(&p("132")), poly("x1 + x2 - x1*x2"));
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(grothendieck_dd(&Permutation::identity(), 4).unwrap(), Polynomial::one());
        assert_eq!(grothendieck_dd(&p("321"), 3).unwrap(), poly("x1^2*x2"));
        assert_eq!(grothendieck_dd(&p("132"), 3).unwrap(), poly("x1 + x2 - x1*x2"));
        assert!(matches!(grothendieck_dd(&p("4321"), 3), Err(Error::WindowExceeds { .. })));
    }

    #[test]
    fn schubert_examples() {
        assert_eq!(schubert(&p("132")), poly("x1 + x2"));
        assert_eq!(schubert(&Permutation::identity()), Polynomial::one());
        assert_eq!(schubert(&p("321")), poly("x1^2*x2"));
    }

    #[test]
    fn expansion_examples() {
        let f = poly("x1^2 + x1*x2 - x1^2*x2");
        assert_eq!(expand_in_basis(&f).unwrap(), map(&[("312", 1), ("231", 1), ("321", -1)]));
        assert!(expand_in_basis(&Polynomial::zero()).unwrap().is_empty());
        for q in Permutation::all(4) {
            assert_eq!(expand_in_basis(&grothendieck(&q)).unwrap(), ExpansionMap::singleton(q, 1));
        }
    }

    #[test]
    fn expansion_ceiling_is_enforced() {
        let f = poly("x1 + x2");
        assert_eq!(Grothendieck::new().expand(&f, 1), Err(Error::ExpansionDiverged(1)));
    }

    #[test]
    fn structure_constant_examples() {
        assert_eq!(
            structure_constants(&p("321"), &p("132")).unwrap(),
            map(&[("421356", 1), ("341256", 1), ("431256", -1)])
        );
        assert_eq!(structure_constants(&Permutation::identity(), &p("2413")).unwrap(), map(&[("2413", 1)]));
        assert_eq!(structure_constants(&p("21"), &p("132")).unwrap(), map(&[("231", 1), ("312", 1), ("321", -1)]));
    }

    #[test]
    fn constructions_agree_and_stabilize_on_s4() {
        for q in Permutation::all(4) {
            let dd = grothendieck_dd(&q, 4).unwrap();
            assert_eq!(*grothendieck(&q), dd, "{q}");
            assert_eq!(grothendieck_dd(&q, 5).unwrap(), dd, "{q}");
        }
    }

    #[test]
    fn leading_term_is_lehmer_monomial() {
        for q in Permutation::all(5) {
            let g = grothendieck(&q);
            let (m, c) = g.leading_term().unwrap();
            let code: Vec<usize> = m.exponents().iter().map(|&e| e as usize).collect();
            assert_eq!(LehmerCode::new(code), q.lehmer_code());
            assert!(c.is_one());
            let s = schubert(&q);
            assert!(s.is_homogeneous());
            assert_eq!(s.leading_term().unwrap().0.degree() as usize, q.length());
        }
    }

    #[test]
    fn star_factorization() {
        let id = Permutation::identity();
        for s in Permutation::all(3) {
            for r in Permutation::all(3) {
                let lhs = &*grothendieck(&s) * &*grothendieck(&Permutation::star(&id, &r, 3).unwrap());
                assert_eq!(lhs, *grothendieck(&Permutation::star(&s, &r, 3).unwrap()), "{s} {r}");
            }
        }
    }

    #[test]
    fn empty_subset_cancels_after_truncation() {
        for q in Permutation::all(4).filter(|q| !q.is_identity()) {
            let g = q.last_descent().unwrap();
            let rows = pivot_rows(&q).unwrap();
            let mut rhs = Polynomial::zero();
            for mask in 1u32..(1 << rows.len()) {
                let subset: Vec<usize> = (0..rows.len()).filter(|b| mask & (1 << b) != 0).map(|b| rows[b]).collect();
                let sign = if subset.len() % 2 == 1 { BigInt::one() } else { -BigInt::one() };
                let tau = k_march(&q, &subset).unwrap();
                rhs.add_scaled(&grothendieck(&tau).truncate(g - 1), &sign);
            }
            assert_eq!(grothendieck(&q).truncate(g - 1), rhs, "{q}");
        }
    }

    #[test]
    fn recombination_round_trip() {
        let m = map(&[("2413", 3), ("321", -2), ("1342", 5)]);
        let f = Grothendieck::global().recombine(&m);
        assert_eq!(expand_in_basis(&f).unwrap(), m);
        assert!(reproduces(&m, &f));
    }

    #[test]
    fn concurrent_cache_is_consistent() {
        let engine = Grothendieck::new();
        let perms: Vec<Permutation> = Permutation::all(5).collect();
        std::thread::scope(|s| {
            for _ in 0..4 {
                s.spawn(|| {
                    for q in perms.iter().rev() {
                        engine.polynomial(q);
                    }
                });
            }
        });
        for q in &perms {
            assert_eq!(*engine.polynomial(q), *grothendieck(q));
        }
    }
}
