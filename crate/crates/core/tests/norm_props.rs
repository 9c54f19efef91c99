//! Norm-axiom property suite: homogeneity, monotonicity, the triangle
//! inequality for the Luxemburg norm, weak-vs-strong embeddings, and the
//! behaviour of norms under equivalent Young functions.

use num_complex::Complex64;
use orlab_core::gridfn::GridFunction;
use orlab_core::norms::{lp_norm, luxemburg_norm, weak_lp_norm, weak_orlicz_norm};
use orlab_core::young::{check_equivalence, make_builtin, BuiltinYoung, YoungFunction};
use proptest::prelude::*;

const N: usize = 32;
const EXTENT: f64 = 4.0;

fn grid_from(values: Vec<(f64, f64)>) -> GridFunction {
    let vals: Vec<Complex64> = values
        .into_iter()
        .map(|(re, im)| Complex64::new(re, im))
        .collect();
    GridFunction::new(1, EXTENT, N, vals).unwrap()
}

fn arb_grid() -> impl Strategy<Value = GridFunction> {
    proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), N).prop_map(grid_from)
}

fn phis() -> Vec<YoungFunction> {
    vec![
        make_builtin(BuiltinYoung::Power(1.7)).unwrap(),
        make_builtin(BuiltinYoung::Counterexample).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn absolute_homogeneity(f in arb_grid(), c in -5.0f64..5.0) {
        let scaled = f.map(|v| v * c);
        for phi in phis() {
            let a = luxemburg_norm(&scaled, &phi).unwrap().value;
            let b = luxemburg_norm(&f, &phi).unwrap().value;
            prop_assert!(
                (a - c.abs() * b).abs() <= 1e-9 * (1.0 + a.max(b)),
                "{}: |{c}|·{b} vs {a}",
                phi.label()
            );
        }
    }

    #[test]
    fn pointwise_monotonicity(f in arb_grid(), g in arb_grid()) {
        // |f| <= |g| pointwise implies the norm ordering; build such a pair.
        let smaller = f
            .values()
            .iter()
            .zip(g.values())
            .map(|(&u, &v)| if u.norm() <= v.norm() { u } else { v })
            .collect::<Vec<_>>();
        let smaller = GridFunction::new(1, EXTENT, N, smaller).unwrap();
        for phi in phis() {
            let a = luxemburg_norm(&smaller, &phi).unwrap().value;
            let b = luxemburg_norm(&g, &phi).unwrap().value;
            prop_assert!(a <= b * (1.0 + 1e-9) + 1e-12);
        }
    }

    #[test]
    fn triangle_inequality(f in arb_grid(), g in arb_grid()) {
        let sum = f
            .linear_combination(Complex64::new(1.0, 0.0), &g, Complex64::new(1.0, 0.0))
            .unwrap();
        for phi in phis() {
            let a = luxemburg_norm(&sum, &phi).unwrap().value;
            let b = luxemburg_norm(&f, &phi).unwrap().value
                + luxemburg_norm(&g, &phi).unwrap().value;
            prop_assert!(a <= b * (1.0 + 1e-9) + 1e-12, "{}: {a} > {b}", phi.label());
        }
    }

    #[test]
    fn weak_norms_sit_below_strong_norms(f in arb_grid()) {
        for p in [1.0, 1.5, 2.0, 4.0] {
            prop_assert!(weak_lp_norm(&f, p).unwrap() <= lp_norm(&f, p).unwrap() + 1e-12);
        }
        for phi in phis() {
            let weak = weak_orlicz_norm(&f, &phi).unwrap().value;
            let strong = luxemburg_norm(&f, &phi).unwrap().value;
            prop_assert!(weak <= strong * (1.0 + 1e-6) + 1e-12);
        }
    }

    #[test]
    fn luxemburg_matches_lp_for_power_functions(f in arb_grid(), p in 1.0f64..4.0) {
        let phi = make_builtin(BuiltinYoung::Power(p)).unwrap();
        let lux = luxemburg_norm(&f, &phi).unwrap();
        let lp = lp_norm(&f, p).unwrap();
        prop_assert!((lux.value - lp).abs() <= 1e-9 * lp.max(1.0));
        if lux.value > 0.0 {
            prop_assert!(lux.modular_at_value <= 1.0 + 1e-6);
            prop_assert!(lux.modular_at_value >= 1.0 - 1e-6);
        }
    }
}

/// Norms under equivalent Young functions differ by at most the equivalence
/// constant; the measured factor is recorded in the test output.
#[test]
fn equivalence_controls_norms() {
    use orlab_core::grid::{GridConfig, Spacing};
    let phi = make_builtin(BuiltinYoung::Power(2.0)).unwrap();
    let scaled = YoungFunction::from_pieces(
        "3t^2",
        vec![orlab_core::young::Piece {
            start: 0.0,
            expr: orlab_core::young::PieceExpr::Power {
                coeff: 3.0,
                exponent: 2.0,
            },
        }],
    )
    .unwrap();
    let cfg = GridConfig::new(1e-6, 1e6, 20_000, Spacing::Log).unwrap();
    let eq = check_equivalence(&phi, &scaled, &cfg).unwrap();
    assert!(eq.equivalent);

    let f = GridFunction::from_fn_1d(4.0, 64, |x| {
        Complex64::new((1.3 * x).sin() * (-0.2 * x * x).exp(), 0.4 * x.cos())
    })
    .unwrap();
    let a = luxemburg_norm(&f, &phi).unwrap().value;
    let b = luxemburg_norm(&f, &scaled).unwrap().value;
    let factor = (a / b).max(b / a);
    println!(
        "equivalence constant {:.6}, measured norm factor {factor:.6}",
        eq.constant
    );
    assert!(factor <= eq.constant.max(1.0) * (1.0 + 1e-6));
}
