use puro_core::level::{self, LevelAlgebra};
use puro_core::macaulay::{self, IntSeq};
use puro_core::monomial::OrderIdeal;
use puro_core::purity::{self, PurityStatus, SearchBudget};
use puro_core::simplicial::{self, FVector};

fn budget() -> SearchBudget {
    SearchBudget::new(5_000_000, 60.0, 32).unwrap()
}

// Every witness the decider returns must rebuild the sequence it was asked about,
// both as an order ideal and as a level algebra.
#[test]
fn witnesses_round_trip() {
    for h in [
        vec![1, 3, 5, 4],
        vec![1, 3, 6, 6, 3],
        vec![1, 4, 7, 6],
        vec![1, 49, 81, 79, 81],
    ] {
        let h = IntSeq::new(h);
        let v = purity::decide_pure(&h, &budget()).unwrap();
        assert_eq!(v.status, PurityStatus::Pure, "{h}");
        let w = v.witness.unwrap();
        let o = OrderIdeal::closure(&w).unwrap();
        assert!(o.is_pure());
        assert_eq!(o.h_vector(), h);
        let a = LevelAlgebra::from_inverse_system(&w).unwrap();
        assert_eq!(a.hilbert(), h);
        assert_eq!(a.socle_type() as u64, h.socle_type());
    }
}

#[test]
fn fast_paths_agree_with_search() {
    let plain = budget().without_fast_paths();
    for h in purity::o_sequences(3, 3, None, None) {
        if h.codim() != 3 {
            continue;
        }
        let a = purity::decide_pure(&h, &budget()).unwrap();
        let b = purity::decide_pure(&h, &plain).unwrap();
        assert_eq!(a.status, b.status, "{h}: {:?} vs {:?}", a.route, b.route);
    }
}

#[test]
fn non_o_sequences_are_never_pure() {
    let h = IntSeq::new(vec![1, 2, 4]);
    assert!(!macaulay::is_o_sequence(&h));
    assert_eq!(
        purity::decide_pure(&h, &budget()).unwrap().status,
        PurityStatus::NotPure
    );
}

#[test]
fn characteristic_example() {
    let a = LevelAlgebra::from_ideal(&level::char_example_ideal()).unwrap();
    let rep = a.wlp_report();
    assert!(rep.wlp_char0);
    assert_eq!(rep.failing_primes, vec![2, 5, 7]);
    assert!(!rep.passes_in_char(5));
    assert!(rep.passes_in_char(3));
}

// Pure type-2 complexes: the closed f-vector matches the facets, the h-vector
// is the monomial count and the sequence satisfies the inequality chain.
#[test]
fn type_two_complexes() {
    for e in 2..=8u64 {
        for h in 0..e {
            let f = simplicial::pure_f_type2(e, h).unwrap();
            assert_eq!(
                simplicial::f_vector_of(&simplicial::type2_facets(e as usize, h as usize).unwrap())
                    .unwrap(),
                f
            );
            let hv = simplicial::f_to_h(&f).unwrap();
            assert_eq!(simplicial::h_to_f(&hv, f.dim_plus_one()).unwrap(), f);
            assert!(simplicial::type2_inequality_check(&f));
        }
    }
    let boundary = FVector::new(vec![1, 4, 6, 4]).unwrap();
    assert_eq!(simplicial::f_to_h(&boundary).unwrap(), vec![1, 1, 1, 1]);
}
