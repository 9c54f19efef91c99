//! Operator-level property suite: linearity, the spectral bound, and
//! multiplier composition over random inputs.

use num_complex::Complex64;
use orlab_core::gridfn::GridFunction;
use orlab_core::norms::lp_norm;
use orlab_core::operators::apply_multiplier;
use orlab_core::spectral;
use orlab_core::symbols::{build_symbol, SymbolDescriptor};
use proptest::prelude::*;

const N: usize = 32;
const EXTENT: f64 = 4.0;

fn arb_grid() -> impl Strategy<Value = GridFunction> {
    proptest::collection::vec((-2.0f64..2.0, -2.0f64..2.0), N).prop_map(|v| {
        let vals: Vec<Complex64> = v
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        GridFunction::new(1, EXTENT, N, vals).unwrap()
    })
}

fn catalog() -> Vec<SymbolDescriptor> {
    vec![
        build_symbol("identity", &[], 1, None).unwrap(),
        build_symbol("sgn", &[], 1, None).unwrap(),
        build_symbol("riesz", &[0.0], 1, None).unwrap(),
        build_symbol("unimodular-power", &[1.0], 1, None).unwrap(),
        build_symbol("sg-power", &[0.0, -1.0], 1, None).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiplier_linearity(f in arb_grid(), g in arb_grid(), are in -2.0f64..2.0, aim in -2.0f64..2.0) {
        let alpha = Complex64::new(are, aim);
        let beta = Complex64::new(-aim, 0.7);
        let combo = f.linear_combination(alpha, &g, beta).unwrap();
        for a in catalog() {
            let lhs = apply_multiplier(&a, &combo).unwrap();
            let rhs = apply_multiplier(&a, &f)
                .unwrap()
                .linear_combination(alpha, &apply_multiplier(&a, &g).unwrap(), beta)
                .unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-9);
        }
    }

    #[test]
    fn spectral_bound(f in arb_grid()) {
        for a in catalog() {
            let g = apply_multiplier(&a, &f).unwrap();
            let sup = (0..N)
                .map(|k| {
                    a.multiplier_value(&[], &[spectral::frequency(k, N, EXTENT)])
                        .unwrap()
                        .norm()
                })
                .fold(0.0f64, f64::max);
            let bound = sup * lp_norm(&f, 2.0).unwrap();
            prop_assert!(lp_norm(&g, 2.0).unwrap() <= bound * (1.0 + 1e-10) + 1e-12);
        }
    }

    #[test]
    fn multiplier_composition(f in arb_grid()) {
        let a = build_symbol("unimodular-power", &[0.8], 1, None).unwrap();
        let b = build_symbol("sg-power", &[0.0, -0.5], 1, None).unwrap();
        let product = {
            let (a, b) = (a.clone(), b.clone());
            SymbolDescriptor::from_xi_fn("a*b", 1, move |xi| {
                let va = a.value_at(&[], xi);
                let vb = b.value_at(&[], xi);
                if va.re.is_finite() { va * vb } else { Complex64::new(0.0, 0.0) }
            })
        };
        let lhs = apply_multiplier(&product, &f).unwrap();
        let rhs = apply_multiplier(&a, &apply_multiplier(&b, &f).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-10);
    }
}
