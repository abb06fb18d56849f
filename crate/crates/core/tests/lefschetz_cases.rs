//! Cross-strategy and bound checks for the Lefschetz deciders on small
//! random corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use artin_core::lefschetz::{
    green_restriction_dim, jordan_partition, mult_map_rank, wlp_check, LinearForm, Strategy,
    Verdict, WlpOptions,
};
use artin_core::poly::Polynomial;
use artin_core::{FieldSpec, GradedIdeal};

fn random_artinian(field: &FieldSpec, rng: &mut ChaCha8Rng) -> GradedIdeal {
    loop {
        let count = rng.gen_range(3..=5);
        let gens: Vec<Polynomial> = (0..count)
            .map(|_| {
                let d = rng.gen_range(1..=3);
                Polynomial::random_form(field, 3, d, rng)
            })
            .collect();
        let Ok(ideal) = GradedIdeal::new(field.clone(), 3, gens) else { continue };
        if ideal.is_artinian(10).is_ok() {
            return ideal;
        }
    }
}

#[test]
fn exhaustive_and_random_strategies_agree_on_small_fields() {
    for p in [2u64, 3] {
        let field = FieldSpec::prime(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        for case in 0..25 {
            let ideal = random_artinian(&field, &mut rng);
            let exhaustive =
                wlp_check(&ideal, Strategy::Exhaustive, WlpOptions::default()).unwrap();
            let sampled = wlp_check(
                &ideal,
                Strategy::Random { trials: 40, seed: case },
                WlpOptions::default(),
            )
            .unwrap();
            match exhaustive.verdict {
                // a failure certificate means sampling can never find a witness
                Verdict::Fails => assert_eq!(sampled.verdict, Verdict::Undetermined),
                // with 40 draws against at most 13 classes, a witness shows up
                Verdict::Holds => assert_eq!(sampled.verdict, Verdict::Holds, "case {case}"),
                Verdict::Undetermined => unreachable!("exhaustive is decisive"),
            }
        }
    }
}

#[test]
fn jordan_parts_count_detects_wlp_for_the_compressed_shape() {
    // for h = (1,3,6,6,3,1): a WLP witness gives 6 Jordan parts, the failing
    // general form gives 7; the parts always sum to 20
    let f3 = FieldSpec::prime(3).unwrap();
    let f101 = FieldSpec::prime(101).unwrap();
    let gens = |field: &FieldSpec| -> Vec<Polynomial> {
        ["x^2*y", "x^2*z", "y^3", "z^3", "x^4 + y^2*z^2"]
            .iter()
            .map(|s| artin_core::poly::parse_polynomial(s, field, &["x", "y", "z"]).unwrap())
            .collect()
    };
    // characteristic 101: WLP holds, a general form has 6 parts
    let a101 = GradedIdeal::new(f101.clone(), 3, gens(&f101)).unwrap();
    let l = artin_core::lefschetz::linear_form_from_ints(&f101, &[1, 7, 13]).unwrap();
    let p = jordan_partition(&a101, &l).unwrap();
    assert_eq!(p.total(), 20);
    assert_eq!(p.parts().len(), 6);
    // characteristic 3: failure, the general form has 7 parts
    let a3 = GradedIdeal::new(f3.clone(), 3, gens(&f3)).unwrap();
    let l = artin_core::lefschetz::linear_form_from_ints(&f3, &[1, 1, 2]).unwrap();
    let p = jordan_partition(&a3, &l).unwrap();
    assert_eq!(p.total(), 20);
    assert_eq!(p.parts().len(), 7);
}

#[test]
fn green_bound_on_compressed_prefixes() {
    // quotients with h-prefix (1,3,6,6): the restriction to a random line has
    // dim <= 1 in degree 3 and the middle map has rank >= 5
    let f101 = FieldSpec::prime(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for case in 0..25 {
        let gens: Vec<Polynomial> =
            (0..4).map(|_| Polynomial::random_form(&f101, 3, 3, &mut rng)).collect();
        let Ok(ideal) = GradedIdeal::new(f101.clone(), 3, gens) else { continue };
        let h = ideal.hilbert_function(4);
        if h[..4] != [1, 3, 6, 6] {
            continue;
        }
        let l = LinearForm::random(&f101, 3, &mut rng);
        let value = green_restriction_dim(&ideal, &l, 3).unwrap();
        assert!(value <= 1, "case {case}: green value {value}");
        let rank = mult_map_rank(&ideal, &l, 2, 1).rank;
        assert!(rank >= 5, "case {case}: middle rank {rank}");
        assert_eq!(rank, 6 - value);
    }
}
