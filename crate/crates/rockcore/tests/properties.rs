use proptest::prelude::*;

use rockcore::exactlin::integer_rank;
use rockcore::lr::{lr_coeff, lr_expand};
use rockcore::partitions::{
    dominance, p_core, p_quotient, p_weight, partitions_of, reconstruct, Dominance, Partition,
};
use rockcore::weyl::{kostka, weyl_dim};

fn partition(max_size: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..=6, 0..=max_size).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn same_size_pair() -> impl Strategy<Value = (Partition, Partition)> {
    (0usize..=10).prop_flat_map(|n| {
        let all = partitions_of(n);
        (prop::sample::select(all.clone()), prop::sample::select(all))
    })
}

proptest! {
    #[test]
    fn core_quotient_round_trip(lam in partition(8), p in 2usize..=5, extra in 0usize..4) {
        let m = lam.len() + extra;
        let core = p_core(&lam, p).unwrap();
        let q = p_quotient(&lam, p, m).unwrap();
        prop_assert_eq!(q.weight(), p_weight(&lam, p).unwrap());
        prop_assert_eq!(reconstruct(&core, &q.components, p, m).unwrap(), lam);
    }

    #[test]
    fn parse_display_round_trip(lam in partition(8)) {
        prop_assert_eq!(lam.to_string().parse::<Partition>().unwrap(), lam);
    }

    #[test]
    fn conjugation_reverses_dominance((a, b) in same_size_pair()) {
        let d = dominance(&a, &b).unwrap();
        let flipped = match d {
            Dominance::Less => Dominance::Greater,
            Dominance::Greater => Dominance::Less,
            other => other,
        };
        prop_assert_eq!(dominance(&a.conjugate(), &b.conjugate()).unwrap(), flipped);
    }

    #[test]
    fn lr_expansion_matches_coefficients(mu in partition(3), nu in partition(3)) {
        for (lam, c) in lr_expand(&mu, &nu) {
            prop_assert_eq!(lr_coeff(&lam, &mu, &nu), c);
            prop_assert_eq!(lr_coeff(&lam, &nu, &mu), c);
        }
    }

    #[test]
    fn weyl_dim_is_sum_of_kostka(lam in partition(3), n in 1usize..=3) {
        prop_assume!(lam.len() <= n);
        // sum of K_{λ,c} over all compositions c of |λ| with n parts
        fn comps(total: usize, parts: usize) -> Vec<Vec<usize>> {
            if parts == 1 {
                return vec![vec![total]];
            }
            (0..=total)
                .flat_map(|first| {
                    comps(total - first, parts - 1).into_iter().map(move |mut rest| {
                        rest.insert(0, first);
                        rest
                    })
                })
                .collect()
        }
        let total: u64 = comps(lam.size(), n).iter().map(|c| kostka(&lam, c)).sum();
        prop_assert_eq!(weyl_dim(&lam, n), total);
    }

    #[test]
    fn rank_is_transpose_invariant(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..5), c in prop::sample::select(vec![0u64, 2, 3, 5])) {
        let t: Vec<Vec<i64>> = (0..4).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
        prop_assert_eq!(integer_rank(&rows, c).unwrap(), integer_rank(&t, c).unwrap());
    }
}
