use std::sync::Arc;

use hsys_core::checks::sampling::{random_params, rng};
use hsys_core::coupling::*;
use hsys_core::params::{critical_exponent, SystemParams};
use hsys_core::radial::*;
use hsys_core::roots::log_space;
use proptest::prelude::*;

fn params_strategy() -> impl Strategy<Value = SystemParams> {
    (any::<u64>(), 0.0f64..1.0, 0.0f64..3.0).prop_map(|(seed, f, k)| {
        let mut p = random_params(&mut rng(seed), (0.0, 0.0));
        let floor = kappa_floor(p.alpha, p.beta, p.lambda, p.mu, p.alpha + p.beta).unwrap();
        p.kappa = floor * (0.05 + 0.9 * f) + k;
        p
    })
}

fn g_oracle(t: f64, p: &SystemParams) -> f64 {
    // Direct formula, no frame switching.
    let q = critical_exponent(p.n, p.s1).unwrap();
    (1.0 + t * t) / (p.lambda + p.mu * t.powf(q) + q * p.kappa * t.powf(p.beta)).powf(2.0 / q)
}

#[test]
fn g_examples() {
    let p = SystemParams::equal_weights(3, 1.0, 2.0, 1.0, 1.0, 1.0);
    assert!((g_eval(1.0, &p).unwrap() - 2.0 / 6f64.sqrt()).abs() < 1e-15);
    assert_eq!(g_eval(0.0, &p).unwrap(), 1.0);
    assert_eq!(g_eval(f64::INFINITY, &p).unwrap(), 1.0);
    assert!(g_eval(-1.0, &p).is_err());
    let distinct = SystemParams::with_alpha(3, 0.5, 1.0, 2.0, 1.0, 1.0, 1.0);
    assert!(matches!(
        g_eval(1.0, &distinct),
        Err(hsys_core::Error::UnsupportedRegime(_))
    ));
}

#[test]
fn at_floor_is_singular() {
    let mut p = SystemParams::equal_weights(3, 1.0, 2.0, 2.0, 2.0, 0.0);
    p.kappa = kappa_floor(2.0, 2.0, 2.0, 2.0, 4.0).unwrap();
    assert!(matches!(
        minimize_g(&p),
        Err(hsys_core::Error::SingularInput(_))
    ));
    assert_eq!(
        classify(&p, &DomainConstants::supplied(1.0)).rule,
        Rule::FloorBoundary
    );
}

#[test]
fn flat_case() {
    let p = SystemParams::equal_weights(3, 1.0, 2.0, 2.0, 2.0, 1.0);
    let m = minimize_g(&p).unwrap();
    assert!(m.flat);
    assert_eq!(m.t0, ExtT::Finite(1.0));
    let r = analyze(&p, &DomainConstants::supplied(1.0)).unwrap();
    // C = S^{1/2} (2 + 2 + 4)^{-1/4} with S = 2^{-1/2}.
    assert!((r.extremal_coefficient.unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn young_against_scan() {
    for &(a, b, l, m) in &[
        (2.0, 2.0, 1.0, 1.0),
        (1.5, 2.5, 0.3, 4.0),
        (3.1, 1.2, 7.0, 0.2),
    ] {
        let k = young_best_constant(a, b, l, m).unwrap();
        let scan_min = log_space(1e-6, 1e6, 200_001)
            .into_iter()
            .map(|t: f64| (l + m * t.powf(a + b)) / t.powf(b))
            .fold(f64::INFINITY, f64::min);
        assert!(k <= scan_min * (1.0 + 1e-14));
        assert!((scan_min - k) / k < 1e-8);
    }
}

/// `m_λ` is the energy `½‖U_λ‖² - (λ/p)∫U_λ^p/|x|^s` of `U_λ`, which
/// solves `-ΔU = λU^{p-1}/|x|^s`.
#[test]
fn scalar_ground_state_consistency() {
    for &(n, s, lambda) in &[(3u32, 1.0, 1.0), (3, 0.5, 2.5), (4, 1.2, 0.4)] {
        let d = DomainConstants::whole_space(n, s).unwrap();
        let q = critical_exponent(n, s).unwrap();
        let grid = Arc::new(default_grid());
        let u = normalized_scalar_extremal(grid, n, s, d.mu_s)
            .unwrap()
            .scaled(u_lambda_scale(lambda, &d, n, s).unwrap());
        let res = scalar_residual(&u, n, &[(lambda, q, s)]);
        assert!(res.relative < 1e-4, "residual {}", res.relative);
        let psi = 0.5 * gradient_energy(&u, n).unwrap()
            - lambda / q * weighted_lp_integral(&u, q, s, n).unwrap();
        let m = m_lambda(lambda, &d, n, s).unwrap();
        assert!((psi - m).abs() / m < 1e-3, "psi {psi} vs m {m}");
    }
}

/// The extremal built from `t0` has energy `c0 = (1/2 - 1/p) S^{p/(p-2)}`.
#[test]
fn extremal_energy_matches_ground_level() {
    let cases = [
        SystemParams::equal_weights(3, 1.0, 2.0, 1.0, 1.0, 1.0),
        SystemParams::equal_weights(3, 1.0, 2.5, 1.0, 2.0, 0.5),
        SystemParams::equal_weights(3, 1.0, 2.0, 3.0, 1.0, 1.0),
        SystemParams::equal_weights(4, 0.5, 1.2, 0.7, 0.9, -0.05),
        SystemParams::equal_weights(3, 1.0, 2.0, 2.0, 2.0, 1.0),
    ];
    for p in cases {
        let d = DomainConstants::whole_space(p.n, p.s1).unwrap();
        let r = analyze(&p, &d).unwrap();
        let pair = extremal_pair(&r.extremal.unwrap(), &p, &d, Arc::new(default_grid())).unwrap();
        let phi = pair_functionals(&pair, &p).unwrap().phi(&p).unwrap();
        let c0 = r.ground_energy.unwrap();
        assert!((phi - c0).abs() / c0 < 1e-3, "{p:?}: {phi} vs {c0}");
        let res = pde_residual(&pair, &p).unwrap();
        assert!(res.relative < 1e-4);
    }
}

#[test]
fn energies_are_monotone() {
    let d = DomainConstants::supplied(2.0);
    let ls = log_space(0.1, 10.0, 50);
    for w in ls.windows(2) {
        assert!(m_lambda(w[1], &d, 3, 1.0).unwrap() < m_lambda(w[0], &d, 3, 1.0).unwrap());
        assert!(
            ground_state_energy(w[1], 4, 0.7).unwrap() > ground_state_energy(w[0], 4, 0.7).unwrap()
        );
    }
}

#[test]
fn sign_changing_ledger() {
    let e = sign_changing_energy(1, 3, 1.0, 1.0).unwrap();
    assert_eq!(e.cell_count, 4.0);
    assert!((e.c_k - 1.0).abs() < 1e-15);
    assert!(sign_changing_energy(0, 3, 1.0, 1.0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn g_matches_direct_formula_and_swap(p in params_strategy(), x in -6.0f64..6.0) {
        let t = 10f64.powf(x);
        let g = g_eval(t, &p).unwrap();
        let direct = g_oracle(t, &p);
        prop_assert!((g - direct).abs() <= 1e-12 * direct);
        let swapped = g_eval(1.0 / t, &p.swapped()).unwrap();
        prop_assert!((g - swapped).abs() <= 1e-13 * g);
    }

    #[test]
    fn endpoints(p in params_strategy()) {
        let q = critical_exponent(p.n, p.s1).unwrap();
        let m = minimize_g(&p).unwrap();
        prop_assert!((m.g_zero - p.lambda.powf(-2.0 / q)).abs() <= 1e-15 * m.g_zero);
        prop_assert!((m.g_infinity - p.mu.powf(-2.0 / q)).abs() <= 1e-15 * m.g_infinity);
        prop_assert!((g_eval(1e-300, &p).unwrap() - m.g_zero).abs() <= 1e-12 * m.g_zero);
    }

    #[test]
    fn sharp_never_exceeds_bound(p in params_strategy(), mu_s in 0.1f64..10.0) {
        let d = DomainConstants::supplied(mu_s);
        let s = sharp_constant(&p, &d).unwrap();
        let b = semi_trivial_bound(&p, &d).unwrap();
        prop_assert!(s <= b * (1.0 + 1e-14));
        let m = minimize_g(&p).unwrap();
        if m.t0.is_endpoint() {
            prop_assert!((s - b).abs() <= 1e-14 * b);
        } else if !m.flat {
            prop_assert!(s < b);
        }
    }

    #[test]
    fn interior_minimizers_are_stationary(p in params_strategy()) {
        let q = critical_exponent(p.n, p.s1).unwrap();
        let m = minimize_g(&p).unwrap();
        for t in m.global_minimizers().filter_map(ExtT::finite).filter(|&t| t > 0.0) {
            let scale = p.lambda.max(p.mu * t.powf(q - 2.0)).max(p.kappa.abs() * (p.alpha * t.powf(p.beta)).max(p.beta * t.powf(p.beta - 2.0)));
            prop_assert!(h_eval(t, &p).unwrap().abs() <= 1e-10 * scale);
            let dt = 1e-4 * t;
            let gp = (g_eval(t + dt, &p).unwrap() - g_eval(t - dt, &p).unwrap()) / (2.0 * dt);
            prop_assert!(gp.abs() * t <= 1e-6 * m.g_min);
        }
    }

    #[test]
    fn derivative_sign_is_minus_h(p in params_strategy(), x in -3.0f64..3.0) {
        let t = 10f64.powf(x);
        let h = h_eval(t, &p).unwrap();
        let dt = 1e-6 * t;
        let gp = (g_oracle(t + dt, &p) - g_oracle(t - dt, &p)) / (2.0 * dt);
        let scale = p.lambda.max(p.mu * t.powf(2.0)).max(1.0);
        prop_assume!(h.abs() > 1e-5 * scale && gp.abs() * t > 1e-8 * g_oracle(t, &p));
        prop_assert_eq!(gp.signum(), -h.signum());
    }

    #[test]
    fn dense_scan_never_beats_minimum(p in params_strategy()) {
        let m = minimize_g(&p).unwrap();
        let dense = log_space(1e-8, 1e8, 50_000)
            .into_iter()
            .map(|t| g_oracle(t, &p))
            .fold(m.g_zero.min(m.g_infinity), f64::min);
        prop_assert!(dense >= m.g_min * (1.0 - 1e-12));
        prop_assert!(dense <= m.g_min * (1.0 + 1e-6));
    }

    #[test]
    fn classification_is_scale_invariant(p in params_strategy(), c in 0.1f64..10.0) {
        let d = DomainConstants::supplied(1.0);
        let mut q = p;
        q.lambda *= c;
        q.mu *= c;
        q.kappa *= c;
        prop_assert_eq!(classify(&p, &d).kind, classify(&q, &d).kind);
        // g scales by c^{-2/p}; the minimizer does not move.
        let (a, b) = (minimize_g(&p).unwrap(), minimize_g(&q).unwrap());
        let e = critical_exponent(p.n, p.s1).unwrap();
        prop_assert!((b.g_min - a.g_min * c.powf(-2.0 / e)).abs() <= 1e-12 * b.g_min);
    }

    #[test]
    fn young_inequality_pointwise(a in 1.01f64..4.0, b in 1.01f64..4.0, l in 0.1f64..10.0, m in 0.1f64..10.0, u in 1e-3f64..1e3, v in 1e-3f64..1e3) {
        let k = young_best_constant(a, b, l, m).unwrap();
        let lhs = k * u.powf(a) * v.powf(b);
        let rhs = l * u.powf(a + b) + m * v.powf(a + b);
        prop_assert!(lhs <= rhs * (1.0 + 1e-13));
    }

    #[test]
    fn nonpositive_coupling_is_plateau(p in params_strategy(), f in 0.0f64..1.0) {
        let mut p = p;
        let floor = kappa_floor(p.alpha, p.beta, p.lambda, p.mu, p.alpha + p.beta).unwrap();
        p.kappa = f * floor;
        let d = DomainConstants::supplied(1.0);
        prop_assert_eq!(sharp_constant(&p, &d).unwrap(), semi_trivial_bound(&p, &d).unwrap());
        if f > 0.0 {
            prop_assert_eq!(classify(&p, &d).kind, AttainmentKind::SemiTrivialOnly);
        }
    }
}
