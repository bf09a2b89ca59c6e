use acgeom::distance::{connes_distance, connes_distance_oracle, AlgebraState, GridSpec};
use acgeom::finite_triple::two_point_triple;
use acgeom::matrix::{c, re, ComplexMatrix};
use acgeom::FiniteTriple;
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn mass() -> impl Strategy<Value = num_complex::Complex64> {
    (0.2f64..5.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, th)| c(r * th.cos(), r * th.sin()))
}

fn d(t: &FiniteTriple, a: f64, b: f64) -> f64 {
    connes_distance(
        t,
        &AlgebraState::two_sheet(a).unwrap(),
        &AlgebraState::two_sheet(b).unwrap(),
    )
    .unwrap()
    .value
}

/// Diagonal algebra `ℂ³` with a Hermitian `D`.
fn three_point(entries: [f64; 6]) -> FiniteTriple {
    let [a, b, e, f, g, h] = entries;
    let dirac = ComplexMatrix::from_rows(&[
        vec![re(0.0), c(a, b), c(e, f)],
        vec![c(a, -b), re(0.0), c(g, h)],
        vec![c(e, -f), c(g, -h), re(0.0)],
    ])
    .unwrap();
    let generators = (0..3)
        .map(|i| {
            let mut d = [0.0; 3];
            d[i] = 1.0;
            ComplexMatrix::from_real_diagonal(&d)
        })
        .collect();
    FiniteTriple::new(3, generators, dirac, None, None, vec![]).unwrap()
}

proptest! {
    #![proptest_config(config(100))]

    #[test]
    fn symmetric(m in mass(), x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let t = two_point_triple(m);
        prop_assert!((d(&t, x, y) - d(&t, y, x)).abs() < 1e-9);
    }

    #[test]
    fn triangle_inequality(m in mass(), x in 0.0f64..1.0, y in 0.0f64..1.0, z in 0.0f64..1.0) {
        let t = two_point_triple(m);
        prop_assert!(d(&t, x, y) + d(&t, y, z) - d(&t, x, z) >= -1e-9);
    }

    #[test]
    fn inverse_scaling(m in mass(), s in 0.1f64..10.0, x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let base = d(&two_point_triple(m), x, y);
        let scaled = d(&two_point_triple(m * s), x, y);
        prop_assert!((scaled - base / s).abs() < 1e-9);
    }

    #[test]
    fn separates_points(m in mass(), x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let t = two_point_triple(m);
        prop_assert!(d(&t, x, x).abs() < 1e-12);
        if (x - y).abs() > 1e-6 {
            prop_assert!(d(&t, x, y) > 0.0);
        }
    }

    #[test]
    fn matches_mixed_closed_form(m in mass(), x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let t = two_point_triple(m);
        prop_assert!((d(&t, x, y) - (x - y).abs() / m.norm()).abs() < 1e-9);
    }
}

proptest! {
    #![proptest_config(config(8))]

    #[test]
    fn three_point_optimizer_matches_oracle(
        entries in prop::array::uniform6(0.3f64..1.5),
        w1 in prop::array::uniform3(0.0f64..1.0),
        w2 in prop::array::uniform3(0.0f64..1.0),
    ) {
        let t = three_point(entries);
        let norm = |w: [f64; 3]| {
            let s: f64 = w.iter().sum::<f64>() + 1e-9;
            AlgebraState::new(w.iter().map(|x| (x + 1e-9 / 3.0) / s).collect()).unwrap()
        };
        let (a, b) = (norm(w1), norm(w2));
        let step = 1e-2;
        let opt = connes_distance(&t, &a, &b).unwrap().value;
        let oracle = connes_distance_oracle(&t, &a, &b, &GridSpec::with_step(step)).unwrap();
        prop_assert!((opt - oracle).abs() <= 2.0 * step, "optimizer {opt}, oracle {oracle}");
    }
}

#[test]
fn complex_coefficients_never_beat_self_adjoint() {
    for m in [re(1.0), c(0.3, 1.2), re(4.0)] {
        let t = two_point_triple(m);
        let (a, b) = (
            AlgebraState::pure(0, 2).unwrap(),
            AlgebraState::pure(1, 2).unwrap(),
        );
        let real = connes_distance(&t, &a, &b).unwrap().value;
        let grid = GridSpec {
            complex: true,
            ..GridSpec::with_step(1e-2)
        };
        let complex = connes_distance_oracle(&t, &a, &b, &grid).unwrap();
        assert!(
            complex <= real + 1e-9,
            "complex {complex} > self-adjoint {real}"
        );
    }
}
