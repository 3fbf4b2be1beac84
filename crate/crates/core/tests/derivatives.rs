mod common;

use std::collections::BTreeSet;

use common::*;
use pomset_kleene::automaton::{ForkPair, StateSpace, Tracer, DEFAULT_STATE_CAP};
use pomset_kleene::derivatives::{
    candidate_forks, delta_deriv, expr_to_pa, expr_to_pa_over, gamma_deriv, SyntacticStateSpace,
};
use pomset_kleene::expr::Expr;
use pomset_kleene::language::{all_pomsets, enumerate_language};
use pomset_kleene::normal::{normalize, NormalExpr};
use pomset_kleene::pomset::Pomset;
use pomset_kleene::Symbol;
use proptest::prelude::*;

fn sigma_of(e: &Expr) -> Vec<Symbol> {
    e.alphabet().into_iter().collect()
}

/// All accepted pomsets of size at most `n`, decided by the compiled
/// automaton over `sigma`.
fn automaton_language(e: &Expr, sigma: &[Symbol], n: usize) -> BTreeSet<Pomset> {
    let c = expr_to_pa_over(e, sigma.iter().cloned(), DEFAULT_STATE_CAP).unwrap();
    let mut tracer = Tracer::new(&c.pa);
    all_pomsets(sigma, n)
        .into_iter()
        .filter(|u| tracer.accepts(&c.start, u))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn derivatives_respect_congruence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sigma = alphabet(3);
        let e = random_expr(&mut r, 3, 6);
        let f = congruent_variant(&mut r, &e, &sigma);
        for a in &sigma {
            prop_assert_eq!(normalize(&delta_deriv(&e, a)), normalize(&delta_deriv(&f, a)));
        }
        for fork in candidate_forks(&normalize(&e)) {
            let (g, h) = (fork.lo().to_expr(), fork.hi().to_expr());
            prop_assert_eq!(normalize(&gamma_deriv(&e, &g, &h)), normalize(&gamma_deriv(&f, &g, &h)));
            // the fork itself up to congruence
            let g2 = congruent_variant(&mut r, &g, &sigma);
            prop_assert_eq!(normalize(&gamma_deriv(&e, &g, &h)), normalize(&gamma_deriv(&e, &h, &g2)));
        }
        prop_assert_eq!(e.nullable(), f.nullable());
    }

    #[test]
    fn syntactic_space_is_normalized_derivation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = random_expr(&mut r, 3, 6);
        let space = SyntacticStateSpace::new(alphabet(3));
        let q = normalize(&e);
        for a in alphabet(3) {
            prop_assert_eq!(space.delta(&q, &a), normalize(&delta_deriv(&e, &a)));
        }
        for fork in candidate_forks(&q) {
            prop_assert_eq!(space.gamma(&q, &fork), normalize(&gamma_deriv(&e, &fork.lo().to_expr(), &fork.hi().to_expr())));
        }
    }

    #[test]
    fn compiled_automata_are_sound(seed in any::<u64>()) {
        let e = random_expr(&mut rng(seed), 3, 6);
        let sigma = sigma_of(&e);
        let expected: BTreeSet<Pomset> = enumerate_language(&e, 4).into_iter().collect();
        prop_assert_eq!(automaton_language(&e, &sigma, 4), expected);
    }

    #[test]
    fn languages_compose(seed in any::<u64>()) {
        let mut r = rng(seed);
        let e = random_expr(&mut r, 2, 4);
        let f = random_expr(&mut r, 2, 4);
        let sigma = alphabet(2);
        let (le, lf) = (automaton_language(&e, &sigma, 4), automaton_language(&f, &sigma, 4));
        let union: BTreeSet<Pomset> = le.union(&lf).cloned().collect();
        prop_assert_eq!(automaton_language(&Expr::plus(e.clone(), f.clone()), &sigma, 4), union);
        let seq: BTreeSet<Pomset> = le.iter().flat_map(|u| lf.iter().map(move |v| u.seq(v))).filter(|w| w.size() <= 4).collect();
        prop_assert_eq!(automaton_language(&Expr::dot(e.clone(), f.clone()), &sigma, 4), seq);
        let par: BTreeSet<Pomset> = le.iter().flat_map(|u| lf.iter().map(move |v| u.par(v))).filter(|w| w.size() <= 4).collect();
        prop_assert_eq!(automaton_language(&Expr::par(e.clone(), f.clone()), &sigma, 4), par);
    }

    #[test]
    fn compiled_states_are_well_behaved(seed in any::<u64>()) {
        let e = random_expr(&mut rng(seed), 3, 6);
        let c = expr_to_pa(&e, DEFAULT_STATE_CAP).unwrap();
        let pa = &c.pa;
        let all: BTreeSet<usize> = pa.states().collect();
        prop_assert!(pa.is_closed(&all));
        let order = pa.fork_order().unwrap();
        let sigma = sigma_of(&e);
        let words = all_pomsets(&sigma, 4);
        let mut tracer = Tracer::new(pa);
        for q in pa.states() {
            let label: &NormalExpr = &c.states[q];
            prop_assert_eq!(pa.name(q), label.to_string());
            prop_assert_eq!(pa.is_final(q), label.nullable());
            for fork in pa.support(q) {
                for comp in [fork.lo(), fork.hi()] {
                    prop_assert!(c.states[*comp].parallel_depth() < label.parallel_depth());
                }
            }
            for lo in order.below(q) {
                prop_assert!(c.states[*lo].parallel_depth() < label.parallel_depth());
            }
            if q != pa.sink() {
                // the sink is the only state with an empty language
                prop_assert!(!label.to_expr().is_empty());
                let witness = words.iter().any(|u| tracer.accepts(&q, u))
                    || !enumerate_language(&label.to_expr(), 2 * label.to_expr().size()).is_empty();
                prop_assert!(witness);
            }
        }
    }
}

#[test]
fn compile_examples() {
    let zero = expr_to_pa(&expr("0"), DEFAULT_STATE_CAP).unwrap();
    assert_eq!(zero.pa.num_states(), 1);

    let a = expr_to_pa(&expr("a"), DEFAULT_STATE_CAP).unwrap();
    let names: BTreeSet<String> = a.state_labels().iter().cloned().collect();
    assert_eq!(names, ["0", "1", "a"].map(String::from).into());

    let c = expr_to_pa(&expr(COOKIE_EXPR), DEFAULT_STATE_CAP).unwrap();
    let sigma = sigma_of(&expr(COOKIE_EXPR));
    let mut tracer = Tracer::new(&c.pa);
    let accepted: Vec<String> = all_pomsets(&sigma, 6)
        .into_iter()
        .filter(|u| tracer.accepts(&c.start, u))
        .map(|u| u.to_string())
        .collect();
    assert_eq!(accepted, [COOKIE]);
}

#[test]
fn candidate_fork_examples() {
    let n = |s: &str| normalize(&expr(s));
    assert_eq!(
        candidate_forks(&n("a || b")),
        BTreeSet::from([ForkPair::new(n("a"), n("b"))])
    );
    assert!(candidate_forks(&n("a . b")).is_empty());
    assert_eq!(
        candidate_forks(&n("(a || b) + (a || 0)")),
        candidate_forks(&n("a || b"))
    );
}

#[test]
fn sink_behaviour() {
    let space = SyntacticStateSpace::new(alphabet(2));
    let zero = NormalExpr::zero();
    assert_eq!(space.sink(), zero);
    assert!(!space.is_final(&zero));
    for a in alphabet(2) {
        assert_eq!(space.delta(&zero, &a), zero);
    }
    let fork = ForkPair::new(normalize(&expr("a")), zero.clone());
    assert_eq!(space.gamma(&normalize(&expr("a || 0 + b")), &fork), zero);
}
