use proptest::prelude::*;

use tabsum::identities::box_probability_cumulative;
use tabsum::partitions::Cell;
use tabsum::sampler::{trial_seed, EntryHistogram, Sampler};
use tabsum::{factorial, norm_sq, pochhammer, ExactScalar, GaussianExact, MeasureSpec, Partition};

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| ExactScalar::new(n, d))
}

fn gaussian() -> impl Strategy<Value = GaussianExact> {
    (scalar(), scalar()).prop_map(|(re, im)| GaussianExact::new(re, im))
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0usize..9, 0..8).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #[test]
    fn pochhammer_splits(x in scalar(), m in 0usize..=20, n in 0usize..=20) {
        let shifted = &x + &ExactScalar::from(m);
        prop_assert_eq!(pochhammer(&x, m + n), pochhammer(&x, m) * pochhammer(&shifted, n));
    }

    #[test]
    fn gaussian_pochhammer_splits(z in gaussian(), m in 0usize..=8, n in 0usize..=8) {
        let shifted = &z + &ExactScalar::from(m);
        prop_assert_eq!(pochhammer(&z, m + n), &pochhammer(&z, m) * &pochhammer(&shifted, n));
    }

    #[test]
    fn pochhammer_of_one_is_factorial(n in 0usize..=50) {
        prop_assert_eq!(pochhammer(&ExactScalar::one(), n), ExactScalar::from(factorial(n)));
    }

    #[test]
    fn norm_is_conjugation_invariant(z in gaussian()) {
        prop_assert_eq!(norm_sq(&z), norm_sq(&z.conj()));
        prop_assert_eq!((&z * &z.conj()).into_real(), Some(norm_sq(&z)));
    }

    #[test]
    fn conjugate_pochhammers_multiply_to_real(z in gaussian(), n in 0usize..=10) {
        let p = &pochhammer(&z, n) * &pochhammer(&z.conj(), n);
        prop_assert!(p.is_real());
        prop_assert!(!p.into_real().unwrap().is_negative());
    }

    #[test]
    fn conjugation_is_an_involution(mu in partition()) {
        let conj = mu.conjugate();
        prop_assert_eq!(conj.size(), mu.size());
        prop_assert_eq!(conj.length(), mu.row(1));
        prop_assert_eq!(conj.conjugate(), mu);
    }

    #[test]
    fn corners_differ_by_one(mu in partition()) {
        prop_assert_eq!(mu.addable_cells().len(), mu.removable_cells().len() + 1);
        for cell in mu.addable_cells() {
            prop_assert_eq!(mu.with_cell(cell).unwrap().without_cell(cell).unwrap(), mu.clone());
        }
    }

    #[test]
    fn partition_round_trip(mu in partition()) {
        prop_assert_eq!(mu.to_string().parse::<Partition>().unwrap(), mu);
    }

    #[test]
    fn scalar_round_trip(x in scalar()) {
        prop_assert_eq!(x.to_string().parse::<ExactScalar>().unwrap(), x);
    }

    #[test]
    fn gaussian_round_trip(z in gaussian()) {
        prop_assert_eq!(z.to_string().parse::<GaussianExact>().unwrap(), z);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn paths_are_reproducible_and_grow_by_one(seed in any::<u64>(), t in 1i64..5) {
        let s = Sampler::new(MeasureSpec::KingmanT { t: ExactScalar::new(t, 2) }).unwrap();
        let a = s.grow_path(15, seed);
        prop_assert_eq!(&a, &s.grow_path(15, seed));
        for (n, w) in a.diagrams.windows(2).enumerate() {
            prop_assert_eq!(w[1].size(), n + 1);
            prop_assert!(Partition::added_cell(&w[0], &w[1]).is_some());
        }
    }

    #[test]
    fn cumulative_box_probabilities_stay_in_unit_interval(n in 1usize..10, th in 1i64..6) {
        let spec = MeasureSpec::PlancherelJack { theta: ExactScalar::new(th, 2) };
        let r = box_probability_cumulative(&spec, Cell::new(2, 2), n).unwrap();
        prop_assert!(r.is_monotone());
        let s = r.final_sum();
        prop_assert!(!s.is_negative() && s <= ExactScalar::one());
    }
}

#[test]
fn histograms_match_single_paths() {
    // each trial is an independent path seeded by its index, whatever thread runs it
    let s = Sampler::new(MeasureSpec::PlancherelJack { theta: ExactScalar::one() }).unwrap();
    let cell = Cell::new(2, 1);
    let hist = s.entry_distribution(cell, 12, 300, 9);
    let mut manual = EntryHistogram::new(cell, 12);
    for i in 0..300 {
        let path = s.grow_path(12, trial_seed(9, i));
        manual.record(path.diagrams.iter().position(|mu| mu.contains(cell)));
    }
    assert_eq!(hist, manual);
}
