use proptest::prelude::*;

use monopole_core::algebra::{Exact, Spin};
use monopole_core::model::{
    abelian_ansatz, doublet_ansatz, doublet_half_eigen_ansatz, is_minimal_j, minimal_j, Background, GridConfig, ModelConfig, Profile, Symbol, WaveOperator,
};
use monopole_core::wigner::HalfInt;
use monopole_core::Error;

/// Doubled helicity weights of the field components.
fn weights(spin: Spin) -> Vec<i32> {
    match spin {
        Spin::Half => vec![1, -1, 1, -1],
        Spin::One => vec![0, 2, 0, -2, 2, 0, -2, 2, 0, -2],
    }
}

fn spin_strategy() -> impl Strategy<Value = Spin> {
    prop_oneof![Just(Spin::Half), Just(Spin::One)]
}

#[test]
fn abelian_half_labels() {
    let a = abelian_ansatz(Spin::Half, HalfInt(2), HalfInt(3), HalfInt(1)).unwrap();
    let sig: Vec<i32> = a.slots.iter().map(|s| s.label.sigma.0).collect();
    assert_eq!(sig, vec![1, 3, 1, 3]);
}

#[test]
fn minimal_half_keeps_two_components() {
    let a = abelian_ansatz(Spin::Half, HalfInt(1), HalfInt(0), HalfInt(0)).unwrap();
    let comps: Vec<usize> = a.slots.iter().map(|s| s.comp).collect();
    assert_eq!(comps, vec![0, 2]);
    assert!(is_minimal_j(Spin::Half, HalfInt(1), HalfInt(0)));
    let b = abelian_ansatz(Spin::Half, HalfInt(-1), HalfInt(0), HalfInt(0)).unwrap();
    assert_eq!(b.slots.iter().map(|s| s.comp).collect::<Vec<_>>(), vec![1, 3]);
}

#[test]
fn quantization_errors() {
    assert!(abelian_ansatz(Spin::Half, HalfInt(1), HalfInt(1), HalfInt(1)).is_err());
    assert!(abelian_ansatz(Spin::One, HalfInt(2), HalfInt(1), HalfInt(1)).is_err());
    assert!(doublet_ansatz(Spin::One, HalfInt(2), HalfInt(0)).is_err());
    assert!(doublet_ansatz(Spin::Half, HalfInt(1), HalfInt(1)).is_err());
    assert!(abelian_ansatz(Spin::Half, HalfInt(1), HalfInt(2), HalfInt(3)).is_err());
}

#[test]
fn eigen_doublet_reuses_upper_functions() {
    let a = doublet_half_eigen_ansatz(HalfInt(2), HalfInt(0), -1).unwrap();
    assert_eq!(a.slots.len(), 8);
    assert_eq!(a.slots[4].symbol, Symbol::f(4));
    assert_eq!(a.slots[4].coeff, Exact::int(-1));
    assert_eq!(a.live_symbols().len(), 4);
}

#[test]
fn tabulated_profile_round_trips() {
    let cfg = ModelConfig {
        spin: Spin::One,
        background: Background::Doublet {
            profile: Profile::Tabulated {
                r: vec![0.0, 1.0, 2.0],
                w: vec![1.0, 0.5, 0.1],
            },
        },
        mass: 1.0,
        energy: 0.3,
        j: HalfInt(3),
        m: HalfInt(1),
        grid: GridConfig::default(),
        seed: 7,
    };
    let back = ModelConfig::from_json(&cfg.to_json().unwrap()).unwrap();
    assert_eq!(back, cfg);
    let Background::Doublet { profile } = back.background else { panic!() };
    assert!((profile.eval(1.5) - 0.3).abs() < 1e-15);
}

proptest! {
    #[test]
    fn abelian_slots_follow_the_helicities(spin in spin_strategy(), l in -5i32..=5, j in 0i32..=9, k in 0i32..=9) {
        let (lambda, jj) = (HalfInt(l), HalfInt(j));
        let parity_ok = match spin {
            Spin::Half => (j + l) % 2 != 0,
            Spin::One => (j - l) % 2 == 0,
        };
        let m = HalfInt(j - 2 * (k % (j + 1)));
        let sig: Vec<i32> = weights(spin).iter().map(|w| l - w).collect();
        let any = sig.iter().any(|s| s.abs() <= j);
        match abelian_ansatz(spin, lambda, jj, m) {
            Ok(a) => {
                prop_assert!(parity_ok && any);
                prop_assert!(jj.0 >= minimal_j(spin, lambda).0);
                for (c, s) in sig.iter().enumerate() {
                    let slot = a.slot_of_comp(c);
                    prop_assert_eq!(slot.is_some(), s.abs() <= j, "component {}", c);
                    if let Some(slot) = slot {
                        prop_assert_eq!(slot.label.sigma.0, *s);
                        prop_assert_eq!(slot.label.mp, -m);
                        prop_assert_eq!(slot.symbol, Symbol::f(c as u8 + 1));
                    }
                }
            }
            Err(e) => {
                prop_assert!(matches!(e, Error::Quantization(_)));
                prop_assert!(!parity_ok || !any);
            }
        }
    }

    #[test]
    fn minimal_j_is_the_first_admissible(spin in spin_strategy(), l in -6i32..=6) {
        let lambda = HalfInt(l);
        let j0 = minimal_j(spin, lambda);
        prop_assert!(abelian_ansatz(spin, lambda, j0, j0).is_ok());
        if j0.0 >= 2 {
            prop_assert!(abelian_ansatz(spin, lambda, j0 - HalfInt(2), j0 - HalfInt(2)).is_err());
        }
        // below the generic range some components are truncated
        let a = abelian_ansatz(spin, lambda, j0, j0).unwrap();
        if l != 0 && is_minimal_j(spin, lambda, j0) {
            prop_assert!(!a.vacuous.is_empty());
        }
    }

    #[test]
    fn doublet_sectors_use_opposite_charges(spin in spin_strategy(), j in 0i32..=7) {
        match doublet_ansatz(spin, HalfInt(j), HalfInt(j)) {
            Ok(a) => {
                let d = spin.dim();
                for s in &a.slots {
                    let (iso, c) = (s.comp / d, s.comp % d);
                    let l = if iso == 0 { -1 } else { 1 };
                    prop_assert_eq!(s.label.sigma.0, l - weights(spin)[c]);
                }
            }
            Err(_) => prop_assert_eq!(j % 2 == 0, spin == Spin::One),
        }
    }

    #[test]
    fn config_round_trips(l in -4i32..=4, e in -3.0..3.0f64, mass in 0.0..3.0f64, seed in any::<u64>()) {
        let j = minimal_j(Spin::Half, HalfInt(l)) + HalfInt(2);
        let cfg = ModelConfig {
            spin: Spin::Half,
            background: Background::Abelian { lambda: HalfInt(l) },
            mass,
            energy: e,
            j,
            m: j,
            grid: GridConfig::default(),
            seed,
        };
        prop_assert_eq!(ModelConfig::from_json(&cfg.to_json().unwrap()).unwrap(), cfg);
    }
}

#[test]
fn invalid_configs_are_rejected() {
    let bad = [
        r#"{"spin": "1/2", "background": {"kind": "abelian", "lambda": "1/4"}, "j": "1/2"}"#,
        r#"{"spin": "1/2", "background": {"kind": "abelian", "lambda": "1"}, "j": "1"}"#,
        r#"{"spin": "1", "background": {"kind": "doublet", "profile": {"kind": "exponential", "w0": 1.0, "scale": -1.0}}, "j": "1/2", "m": "1/2"}"#,
        r#"{"spin": "1", "background": {"kind": "doublet", "profile": {"kind": "tabulated", "r": [0.0, 1.0], "w": [1.0]}}, "j": "1/2", "m": "1/2"}"#,
    ];
    for text in bad {
        assert!(ModelConfig::from_json(text).is_err(), "{text}");
    }
}

#[test]
fn charge_flip_negates_lambda() {
    let h = WaveOperator::new(Spin::One, Background::Abelian { lambda: HalfInt(3) }, 1.0, 0.5).unwrap();
    let f = h.charge_flipped().unwrap();
    assert_eq!(f.background.lambda(), Some(HalfInt(-3)));
    // the doublet carries no Abelian charge to flip
    let d = WaveOperator::new(Spin::One, Background::Doublet { profile: Profile::default() }, 1.0, 0.5).unwrap();
    assert_eq!(d.charge_flipped().unwrap().background, d.background);
}

#[test]
fn eigen_doublet_rejects_bad_delta() {
    assert!(doublet_half_eigen_ansatz(HalfInt(2), HalfInt(0), 0).is_err());
    for delta in [1, -1] {
        let a = doublet_half_eigen_ansatz(HalfInt(2), HalfInt(0), delta).unwrap();
        let lower: Vec<_> = a.slots.iter().filter(|s| s.comp >= 4).collect();
        assert!(!lower.is_empty());
        assert!(lower.iter().all(|s| s.coeff == Exact::int(delta)));
        assert!(a.slots.iter().filter(|s| s.comp < 4).all(|s| s.coeff == Exact::one()));
    }
}
