//! Measure-layer checks: weights against an independent exact-rational
//! evaluator, normalization, consistency, the partition recursion, norm
//! profiles and transition classification.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use hcgibbs::gibbs::{
    boundedness_norms, check_consistency, detect_transition, hamiltonian, local_factor, measure,
    partition_function, unnormalized_weight, verify_compatibility, verify_partition_recursion,
    Activity, BoundaryLaw, Gauge, ModelParams, Transition,
};
use hcgibbs::{build_tree, enumerate_admissible, Configuration, TreeLayout};
use padic::{log_p, EpElement, PadicNumber, Prime, Valuation};

const N: u32 = 64;

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn model(p: u64, k: u32, num: i64, den: i64) -> ModelParams {
    let lambda = Activity::from_rational(&num.into(), &den.into(), prime(p), N).unwrap();
    ModelParams::new(k, lambda)
}

fn ep(num: i64, den: i64, p: u64) -> EpElement {
    EpElement::new(PadicNumber::from_rational(&num.into(), &den.into(), prime(p), N).unwrap())
        .unwrap()
}

fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Independent oracle: evaluates the weight of a configuration in exact
/// rational arithmetic for a translation-invariant rational law.
/// The root pair is induced through the same compatibility product.
fn rational_weight(
    layout: &TreeLayout,
    volume: u32,
    config: &Configuration,
    lambda: &BigRational,
    z1: &BigRational,
    z2: &BigRational,
) -> BigRational {
    let occupied = config.states().iter().filter(|&&s| s >= 1).count();
    let mut w = lambda.pow(occupied as i32);
    let arity = layout.children(0).len() as i32;
    for x in layout.level_range(volume) {
        let (w1, w2) = if x == 0 {
            let one = BigRational::one();
            let f1 = lambda * ((&one + z1) / (z1 + z2)).pow(arity);
            let f2 = lambda * ((&one + z2) / (z1 + z2)).pow(arity);
            (f1, f2)
        } else {
            (z1.clone(), z2.clone())
        };
        w *= match config.state(x) {
            0 => BigRational::one(),
            1 => w1 / lambda,
            _ => w2 / lambda,
        };
    }
    w
}

fn assert_matches_rational(x: &PadicNumber, r: &BigRational, p: u64, tol: i64) {
    if r.is_zero() {
        assert!(x.is_zero_to(tol), "expected ~0, got {x}");
        return;
    }
    let want = PadicNumber::from_rational(r.numer(), r.denom(), prime(p), N).unwrap();
    assert!(
        x.sub(&want).is_zero_to(tol),
        "padic {x} != rational {r} at tolerance {tol}"
    );
}

#[test]
fn hamiltonian_examples() {
    let m = model(5, 2, 6, 1);
    let layout = build_tree(2, 1).unwrap();
    let _ = layout;
    let all_vacant = Configuration::new(vec![0, 1, 2, 1]).unwrap();
    // all-vacant: zero occupied vertices
    let zero_occ = Configuration::new(vec![0, 0, 0, 0]).unwrap();
    assert!(hamiltonian(&m, &zero_occ).unwrap().is_exact_zero());

    // activity exactly 1: the Hamiltonian vanishes identically
    let m1 = model(5, 2, 1, 1);
    assert!(hamiltonian(&m1, &all_vacant).unwrap().is_exact_zero());

    // all-occupied on V_1: 4 * log(lambda)
    let all_one = Configuration::new(vec![1, 1, 1, 1]).unwrap();
    let h = hamiltonian(&m, &all_one).unwrap();
    let want = log_p(m.lambda().padic()).unwrap().scale(4);
    assert!(h.sub(&want).is_zero_like());
}

#[test]
fn weight_examples() {
    let layout = build_tree(2, 1).unwrap();

    // Volume 0, vacant root: the weight is the unit gauge.
    let m = model(5, 2, 6, 1);
    let law = BoundaryLaw::trivial(prime(5), N);
    let layout0 = build_tree(2, 0).unwrap();
    let w =
        unnormalized_weight(&m, &law, &layout0, 0, &Configuration::new(vec![0]).unwrap()).unwrap();
    assert_eq!(w.mantissa().unwrap(), &1u32.into());

    // Trivial model: every admissible configuration weighs 1.
    let m1 = model(5, 2, 1, 1);
    let law1 = BoundaryLaw::trivial(prime(5), N);
    for config in enumerate_admissible(&layout, 1, &[], 16).unwrap() {
        let w = unnormalized_weight(&m1, &law1, &layout, 1, &config).unwrap();
        assert_eq!(w.mantissa().unwrap(), &1u32.into(), "config {config}");
        assert_eq!(w.valuation(), Valuation::Finite(0));
    }

    // Inadmissible configurations are rejected.
    let bad = Configuration::new(vec![1, 2, 1, 1]).unwrap();
    assert!(unnormalized_weight(&m1, &law1, &layout, 1, &bad).is_err());
}

#[test]
fn weights_match_exact_rational_oracle() {
    // lambda = -24 at p = 5 with the rational law z' = (-3/2, -3/2).
    let m = model(5, 2, -24, 1);
    let law = BoundaryLaw::diagonal(ep(-3, 2, 5));
    let layout = build_tree(2, 2).unwrap();
    let lam = rat(-24, 1);
    let z = rat(-3, 2);

    for volume in 0..=2u32 {
        let mut z_rat = BigRational::zero();
        for config in enumerate_admissible(&layout, volume, &[], 16).unwrap() {
            let got = unnormalized_weight(&m, &law, &layout, volume, &config).unwrap();
            let want = rational_weight(&layout, volume, &config, &lam, &z, &z);
            assert_matches_rational(&got, &want, 5, 56);
            z_rat += want;
        }
        let z_got = partition_function(&m, &law, &layout, volume).unwrap();
        assert_matches_rational(&z_got, &z_rat, 5, 56);
    }
}

#[test]
fn partition_examples() {
    // k = 2, volume 0, trivial model: 1 + 1 + 1.
    let m = model(5, 2, 1, 1);
    let law = BoundaryLaw::trivial(prime(5), N);
    let layout = build_tree(2, 2).unwrap();
    let z0 = partition_function(&m, &law, &layout, 0).unwrap();
    assert_eq!(z0.mantissa().unwrap(), &3u32.into());

    // Volume 1: all weights are 1, so Z counts admissible configurations.
    let z1 = partition_function(&m, &law, &layout, 1).unwrap();
    let count = enumerate_admissible(&layout, 1, &[], 16).unwrap().count();
    assert_eq!(count, 24);
    let want = PadicNumber::from_integer(24, prime(5), N);
    assert!(z1.sub(&want).is_zero_like());

    // Determinism across precision: recompute at double precision.
    let m_wide = ModelParams::new(
        2,
        Activity::from_rational(&1.into(), &1.into(), prime(5), 2 * N).unwrap(),
    );
    let law_wide = BoundaryLaw::trivial(prime(5), 2 * N);
    let z1_wide = partition_function(&m_wide, &law_wide, &layout, 1).unwrap();
    assert!(z1_wide.sub(&z1).is_zero_like());
    assert_eq!(z1_wide.mantissa_mod(N), z1.mantissa_mod(N));
}

#[test]
fn measures_normalize_to_one() {
    // Normalization identity for a nontrivial rational law.
    let m = model(5, 2, -24, 1);
    let law = BoundaryLaw::diagonal(ep(-3, 2, 5));
    let layout = build_tree(2, 1).unwrap();
    let mut total = PadicNumber::zero(prime(5));
    for config in enumerate_admissible(&layout, 1, &[], 16).unwrap() {
        let mu = measure(&m, &law, &layout, 1, &config).unwrap();
        assert!(
            mu.value.norm().is_one(),
            "|mu| = {} for {config}",
            mu.value.norm()
        );
        total = total.add(&mu.value);
    }
    let one = PadicNumber::one(prime(5), N);
    assert!(
        total.sub(&one).is_zero_to(m.tolerance_exp()),
        "sum = {total}"
    );
}

#[test]
fn measure_of_fully_pinned_configuration_is_conditional_one() {
    // When the inner volume is fixed completely and only one extension is
    // admissible, the marginal of that extension equals the inner measure.
    let m = model(5, 2, 1, 1);
    let law = BoundaryLaw::trivial(prime(5), N);
    let layout = build_tree(1, 1).unwrap(); // order 1: root + 2 children
    let config = Configuration::new(vec![0, 1, 1]).unwrap();
    let mu = measure(&m, &law, &layout, 1, &config).unwrap();
    assert!(!mu.value.is_zero_like());
}

#[test]
fn consistency_exact_for_trivial_law_and_sharp_for_perturbed() {
    let m = model(5, 2, 1, 1);
    let law = BoundaryLaw::trivial(prime(5), N);
    let layout = build_tree(2, 2).unwrap();
    for n in [1u32, 2] {
        let report = check_consistency(&m, &law, &layout, n).unwrap();
        assert!(
            report.passes(m.tolerance_exp()),
            "n={n}: {:?}",
            report.max_defect_norm()
        );
    }

    // Perturbing one entry off the solution leaves a defect of the
    // perturbation's order at the outer volume.
    let perturbed = law.perturbed(&m, &layout, 1).unwrap();
    let report = check_consistency(&m, &perturbed, &layout, 2).unwrap();
    match report.max_defect.valuation() {
        Valuation::Finite(v) => assert!(v <= 2, "defect too small: p^-{v}"),
        other => panic!("expected a genuine defect, got {other:?}"),
    }
}

#[test]
fn compatibility_residuals() {
    let m = model(5, 2, 1, 1);
    let layout = build_tree(2, 3).unwrap();

    // The trivial law solves the fixed-point equation at activity 1.
    let law = BoundaryLaw::trivial(prime(5), N);
    let report = verify_compatibility(&m, &law, &layout).unwrap();
    assert!(report.passes(m.tolerance_exp()));

    // A generic pair does not.
    let m6 = model(5, 2, 6, 1);
    let generic = BoundaryLaw::translation_invariant(ep(6, 1, 5), ep(11, 1, 5));
    let report = verify_compatibility(&m6, &generic, &layout).unwrap();
    assert!(!report.passes(m6.tolerance_exp()));
    assert!(matches!(
        report.max_residual.valuation(),
        Valuation::Finite(v) if v <= 2
    ));
}

#[test]
fn local_factor_values_and_norms() {
    let layout = build_tree(2, 2).unwrap();

    // Unit law at activity 1: a(x) = (1 + 1)^2 = 4 off the root, 8 at it.
    let m = model(5, 2, 1, 1);
    let law = BoundaryLaw::trivial(prime(5), N);
    let a1 = local_factor(&m, &law, &layout, 1).unwrap();
    assert_eq!(a1.mantissa().unwrap(), &4u32.into());
    assert!(a1.norm().is_one());
    let a0 = local_factor(&m, &law, &layout, 0).unwrap();
    assert_eq!(a0.mantissa().unwrap(), &8u32.into());

    // p = 2: |a(x)| = 2^-k at non-root vertices.
    let m2 = model(2, 2, 1, 1);
    let law2 = BoundaryLaw::trivial(prime(2), N);
    let a = local_factor(&m2, &law2, &layout, 1).unwrap();
    assert!(a.norm().is_pow(-2));

    // Requesting a local factor where compatibility fails is an error.
    let m6 = model(5, 2, 6, 1);
    let bad = BoundaryLaw::trivial(prime(5), N);
    assert!(local_factor(&m6, &bad, &layout, 1).is_err());
}

#[test]
fn partition_recursion_for_rational_laws() {
    // Trivial law at p in {2, 5}; both sides enumerated independently.
    for p in [2u64, 5] {
        let m = model(p, 2, 1, 1);
        let law = BoundaryLaw::trivial(prime(p), N);
        let layout = build_tree(2, 2).unwrap();
        let report = verify_partition_recursion(&m, &law, &layout, 1).unwrap();
        assert!(
            report.difference.is_zero_like(),
            "p={p}: {} vs {}",
            report.lhs,
            report.rhs
        );
    }
}

#[test]
fn boundedness_profiles() {
    // Odd p: everything has norm 1 and the family is bounded.
    let m = model(5, 2, 1, 1);
    let law = BoundaryLaw::trivial(prime(5), N);
    let layout = build_tree(2, 2).unwrap();
    for n in [1u32, 2] {
        let report = boundedness_norms(&m, &law, &layout, n).unwrap();
        assert!(report.bounded);
        assert!(report.znorm.is_one());
        assert!(report.munorm.is_one());
        assert!(report.measured_znorm.unwrap().is_one(), "n={n}");
        assert!(report.measured_munorm.unwrap().is_one());
    }

    // p = 3 keeps the unit profile; the enumerated normalizer picks up the
    // root-boundary factor 3 that the closed form does not count.
    let m3 = model(3, 2, 1, 1);
    let law3 = BoundaryLaw::trivial(prime(3), N);
    let report = boundedness_norms(&m3, &law3, &layout, 1).unwrap();
    assert!(report.bounded);
    assert!(report.znorm.is_one());
    assert!(report.measured_znorm.unwrap().is_pow(-1));

    // p = 2: profile 2^(-k |V_(n-1)|); measured is one factor of 2^-1 lower
    // (the root has k + 1 children, not k).
    let m2 = model(2, 2, 1, 1);
    let law2 = BoundaryLaw::trivial(prime(2), N);
    let report = boundedness_norms(&m2, &law2, &layout, 2).unwrap();
    assert!(!report.bounded);
    assert_eq!(report.znorm, rat(1, 256));
    assert_eq!(report.munorm, rat(256, 1));
    assert!(report.measured_znorm.unwrap().is_pow(-9));
    assert!(report.measured_munorm.unwrap().is_pow(9));
}

#[test]
fn gauge_leaves_measures_invariant() {
    let m = model(5, 2, -24, 1);
    let layout = build_tree(2, 1).unwrap();
    let base = BoundaryLaw::diagonal(ep(-3, 2, 5));
    let gauges: Vec<EpElement> = (0..layout.vertex_count())
        .map(|x| ep(1 + 5 * (x as i64 + 1), 1, 5))
        .collect();
    let gauged = BoundaryLaw::diagonal(ep(-3, 2, 5)).with_gauge(Gauge::PerVertex(gauges));
    for config in enumerate_admissible(&layout, 1, &[], 16).unwrap() {
        let plain = measure(&m, &base, &layout, 1, &config).unwrap();
        let fancy = measure(&m, &gauged, &layout, 1, &config).unwrap();
        assert!(
            plain.value.sub(&fancy.value).is_zero_to(m.tolerance_exp()),
            "gauge changed mu({config})"
        );
    }
}

#[test]
fn state_swap_symmetry() {
    // Swapping z1' <-> z2' and relabeling states 1 <-> 2 fixes every measure.
    let m = model(5, 2, 6, 1);
    let layout = build_tree(2, 1).unwrap();
    let law_ab = BoundaryLaw::translation_invariant(ep(6, 1, 5), ep(11, 1, 5));
    let law_ba = BoundaryLaw::translation_invariant(ep(11, 1, 5), ep(6, 1, 5));
    for config in enumerate_admissible(&layout, 1, &[], 16).unwrap() {
        let swapped = Configuration::new(
            config
                .states()
                .iter()
                .map(|&s| match s {
                    1 => 2,
                    2 => 1,
                    other => other,
                })
                .collect(),
        )
        .unwrap();
        let a = measure(&m, &law_ab, &layout, 1, &config).unwrap();
        let b = measure(&m, &law_ba, &layout, 1, &swapped).unwrap();
        assert!(a.value.sub(&b.value).is_zero_to(m.tolerance_exp()));
    }
}

#[test]
fn transition_detection() {
    assert_eq!(detect_transition(prime(5), 3, 0), Transition::Quasi);
    assert_eq!(detect_transition(prime(5), 1, 2), Transition::Quasi);
    assert_eq!(detect_transition(prime(5), 1, 0), Transition::None);
    assert_eq!(detect_transition(prime(2), 3, 2), Transition::None);
}
