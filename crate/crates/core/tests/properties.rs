use num_bigint::BigInt;
use proptest::prelude::*;
use schubert_core::calculus::{detect, truncation_product, verify};
use schubert_core::grothendieck::{expand_in_basis, structure_constants, Grothendieck};
use schubert_core::tree::Mode;
use schubert_core::{ExpansionMap, Permutation};

fn s3_problems() -> Vec<schubert_core::calculus::TruncationProblem> {
    let mut out = Vec::new();
    for sigma in Permutation::all(3) {
        for alpha in Permutation::all(3) {
            for t in 1..=6 {
                if let Some(pr) = detect(&sigma, &alpha, 3, t).unwrap() {
                    out.push(pr);
                }
            }
        }
    }
    out
}

#[test]
fn cohomology_is_the_top_layer_of_k() {
    for pr in s3_problems() {
        let k = truncation_product(&pr, Mode::K).unwrap();
        let h = truncation_product(&pr, Mode::Cohomology).unwrap();
        let layer = k.restrict_to_length(pr.sigma.length() + pr.rho.length());
        assert_eq!(h, layer, "{pr:?}");
        assert!(h.iter().all(|(_, c)| *c > BigInt::from(0)));
        assert!(verify(&pr, Mode::Cohomology).unwrap().matches());
    }
}

#[test]
fn w0_conjugation_symmetry() {
    for sigma in Permutation::all(3) {
        for rho in Permutation::all(3) {
            let c = structure_constants(&sigma, &rho).unwrap();
            let n = c.iter().map(|(p, _)| p.window()).max().unwrap_or(0).max(3);
            let conj = |p: &Permutation| p.w0_conjugate(n).unwrap();
            let d = structure_constants(&conj(&sigma), &conj(&rho)).unwrap();
            for pi in Permutation::all(n) {
                assert_eq!(c.get(&pi), d.get(&conj(&pi)), "{sigma} {rho} {pi}");
            }
        }
    }
}

fn s4() -> Vec<Permutation> {
    Permutation::all(4).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn expansion_inverts_recombination(coeffs in prop::collection::vec((0usize..24, -3i64..=3), 1..6)) {
        let perms = s4();
        let map: ExpansionMap = coeffs.iter().map(|&(k, c)| (perms[k].clone(), BigInt::from(c))).collect();
        let f = Grothendieck::global().recombine(&map);
        prop_assert_eq!(expand_in_basis(&f).unwrap(), map);
    }
}
