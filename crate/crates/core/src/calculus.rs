//! Truncation Schubert problems: detection, products read off marching
//! trees, and verification against the polynomial oracle.
//!
//! Fix `α ∈ S_n` and `t` such that `KT_t(id ⋆_n α)` has exactly one labeled
//! leaf `ρ`. Then for any `σ ∈ S_n` with last descent at most `t`, the
//! structure constant `C_{σ,ρ}^π` is `(−1)^{ℓσ+ℓρ−ℓπ}` times the number of
//! π-leaves of `KT_t(σ ⋆_n α)`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expansion::ExpansionMap;
use crate::grothendieck::{expand_in_basis, grothendieck, structure_constants};
use crate::perm::Permutation;
use crate::tree::{unique_labeled_leaf_with, Mode, TreeBuilder, DEFAULT_NODE_CEILING};

/// Largest window the polynomial oracle is asked to handle by default.
pub const DEFAULT_ORACLE_WINDOW: usize = 8;

/// Resource settings shared by the operations of this module.
#[derive(Clone, Debug)]
pub struct Options {
    pub node_ceiling: usize,
    pub parallel: bool,
    pub oracle_window: usize,
}

impl Default for Options {
    fn default() -> Self {
        Self { node_ceiling: DEFAULT_NODE_CEILING, parallel: false, oracle_window: DEFAULT_ORACLE_WINDOW }
    }
}

impl Options {
    fn builder(&self, t: usize, mode: Mode) -> TreeBuilder {
        TreeBuilder::new(t, mode).ceiling(self.node_ceiling).parallel(self.parallel)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationProblem {
    pub sigma: Permutation,
    pub alpha: Permutation,
    pub n: usize,
    pub t: usize,
    /// The single labeled leaf of `KT_t(id ⋆_n α)`.
    pub rho: Permutation,
}

impl TruncationProblem {
    /// `σ ⋆_n α`, the root of the tree that computes the product.
    pub fn star(&self) -> Permutation {
        Permutation::star(&self.sigma, &self.alpha, self.n).expect("checked by detect")
    }

    /// Width used when printing results: the ambient `S_{2n}`.
    pub fn ambient(&self) -> usize {
        2 * self.n
    }

    pub fn to_json(&self) -> Value {
        json!({
            "sigma": self.sigma.to_padded_string(self.n),
            "alpha": self.alpha.to_padded_string(self.n),
            "n": self.n,
            "t": self.t,
            "rho": self.rho.to_padded_string(self.ambient()),
        })
    }
}

pub fn detect(sigma: &Permutation, alpha: &Permutation, n: usize, t: usize) -> Result<Option<TruncationProblem>> {
    detect_with(sigma, alpha, n, t, &Options::default())
}

/// Returns the problem when `last_descent(σ) ≤ t` and `α` has a unique
/// labeled leaf at `t`, `None` otherwise.
pub fn detect_with(
    sigma: &Permutation,
    alpha: &Permutation,
    n: usize,
    t: usize,
    opts: &Options,
) -> Result<Option<TruncationProblem>> {
    if t == 0 || t > 2 * n {
        return Err(Error::TruncationOutOfRange { t, max: 2 * n });
    }
    for p in [sigma, alpha] {
        if p.window() > n {
            return Err(Error::WindowExceeds { perm: p.clone(), n });
        }
    }
    if sigma.last_descent().is_some_and(|d| d > t) {
        return Ok(None);
    }
    let Some(rho) = unique_labeled_leaf_with(alpha, n, &opts.builder(t, Mode::K))? else {
        return Ok(None);
    };
    Ok(Some(TruncationProblem { sigma: sigma.clone(), alpha: alpha.clone(), n, t, rho }))
}

pub fn truncation_product(problem: &TruncationProblem, mode: Mode) -> Result<ExpansionMap> {
    truncation_product_with(problem, mode, &Options::default())
}

/// Structure constants `C_{σ,ρ}^π` read off the leaves of the tree of
/// `σ ⋆_n α`. In cohomology mode only `ℓπ = ℓσ + ℓρ` survives, with
/// positive coefficients.
pub fn truncation_product_with(problem: &TruncationProblem, mode: Mode, opts: &Options) -> Result<ExpansionMap> {
    let tree = opts.builder(problem.t, mode).build(&problem.star())?;
    let base = problem.sigma.length() + problem.rho.length();
    Ok(match mode {
        Mode::K => tree.signed_expansion(base),
        Mode::Cohomology => tree
            .leaf_summary()
            .counts
            .into_iter()
            .filter(|(p, _)| p.length() == base)
            .map(|(p, c)| (p, BigInt::from(c)))
            .collect(),
    })
}

/// `r_t(G_γ)` in the Grothendieck basis, read off `KT_t(γ)`.
pub fn truncate_grothendieck_via_tree(gamma: &Permutation, t: usize) -> Result<ExpansionMap> {
    let tree = TreeBuilder::new(t, Mode::K).build(gamma)?;
    Ok(tree.signed_expansion(gamma.length()))
}

/// One permutation on which the three computations disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub perm: Permutation,
    pub tree: BigInt,
    pub oracle: BigInt,
    pub truncated: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub problem: TruncationProblem,
    pub mode: Mode,
    /// Read off the tree of `σ ⋆_n α`.
    pub tree_expansion: ExpansionMap,
    /// `G_σ G_ρ` expanded in the basis.
    pub oracle_expansion: ExpansionMap,
    /// `G_σ · r_t(G_{id ⋆_n α})` expanded in the basis, with the sign
    /// `(−1)^{ℓρ−ℓα}` relating it to `G_σ G_ρ` removed.
    pub truncated_expansion: ExpansionMap,
    pub discrepancies: Vec<Discrepancy>,
}

impl VerificationReport {
    pub fn matches(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let w = self.problem.ambient();
        let discrepancies: Vec<Value> = self
            .discrepancies
            .iter()
            .map(|d| {
                json!({
                    "perm": d.perm.to_padded_string(w),
                    "tree": d.tree.to_string(),
                    "oracle": d.oracle.to_string(),
                    "truncated": d.truncated.to_string(),
                })
            })
            .collect();
        json!({
            "problem": self.problem.to_json(),
            "mode": mode_name(self.mode),
            "tree_expansion": self.tree_expansion.to_json_padded(w),
            "oracle_expansion": self.oracle_expansion.to_json_padded(w),
            "truncated_expansion": self.truncated_expansion.to_json_padded(w),
            "match": self.matches(),
            "discrepancies": discrepancies,
        })
    }
}

pub fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::K => "K",
        Mode::Cohomology => "cohomology",
    }
}

pub fn verify(problem: &TruncationProblem, mode: Mode) -> Result<VerificationReport> {
    verify_with(problem, mode, &Options::default())
}

/// Three-way comparison of the tree product, the direct product `G_σ G_ρ`
/// and the product with the truncated polynomial `r_t(G_{id ⋆_n α})`.
pub fn verify_with(problem: &TruncationProblem, mode: Mode, opts: &Options) -> Result<VerificationReport> {
    let star_alpha = Permutation::star(&Permutation::identity(), &problem.alpha, problem.n)?;
    let window = problem.star().window().max(problem.rho.window());
    if window > opts.oracle_window {
        return Err(Error::OracleCeiling { window, ceiling: opts.oracle_window });
    }

    let tree_expansion = truncation_product_with(problem, mode, opts)?;
    let mut oracle_expansion = structure_constants(&problem.sigma, &problem.rho)?;
    let truncated = &*grothendieck(&problem.sigma) * &grothendieck(&star_alpha).truncate(problem.t);
    let sign = if (problem.rho.length() + problem.alpha.length()).is_multiple_of(2) { 1 } else { -1 };
    let mut truncated_expansion = expand_in_basis(&truncated)?.scale(&BigInt::from(sign));
    if mode == Mode::Cohomology {
        let degree = problem.sigma.length() + problem.rho.length();
        oracle_expansion = oracle_expansion.restrict_to_length(degree);
        truncated_expansion = truncated_expansion.restrict_to_length(degree);
    }

    let mut support: Vec<&Permutation> = tree_expansion
        .iter()
        .chain(oracle_expansion.iter())
        .chain(truncated_expansion.iter())
        .map(|(p, _)| p)
        .collect();
    support.sort();
    support.dedup();
    let discrepancies = support
        .into_iter()
        .filter_map(|p| {
            let (a, b, c) = (tree_expansion.get(p), oracle_expansion.get(p), truncated_expansion.get(p));
            (a != b || b != c).then(|| Discrepancy { perm: p.clone(), tree: a, oracle: b, truncated: c })
        })
        .collect();

    Ok(VerificationReport {
        problem: problem.clone(),
        mode,
        tree_expansion,
        oracle_expansion,
        truncated_expansion,
        discrepancies,
    })
}

/// Sign convention check: `(−1)^{ℓσ+ℓρ−ℓπ} C_{σ,ρ}^π ≥ 0` for every entry.
pub fn has_alternating_signs(sigma: &Permutation, rho: &Permutation, map: &ExpansionMap) -> bool {
    let base = sigma.length() + rho.length();
    map.iter().all(|(p, c)| {
        let even = (base + p.length()).is_multiple_of(2);
        if even {
            *c > BigInt::zero()
        } else {
            *c < BigInt::zero()
        }
    })
}
