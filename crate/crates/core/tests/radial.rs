use std::f64::consts::PI;
use std::sync::Arc;

use hsys_core::checks::sampling::{random_bump, random_pair, rng};
use hsys_core::params::{critical_exponent, SystemParams};
use hsys_core::radial::*;
use hsys_core::Error;
use proptest::prelude::*;
use statrs::function::gamma::{gamma, ln_gamma};

/// `∫_0^∞ r^{a-1} (1 + r^q)^{-b} dr = B(a/q, b - a/q) / q`.
fn beta_integral(a: f64, q: f64, b: f64) -> f64 {
    let x = a / q;
    let y = b - x;
    (ln_gamma(x) + ln_gamma(y) - ln_gamma(x + y)).exp() / q
}

fn omega(n: u32) -> f64 {
    2.0 * PI.powf(n as f64 / 2.0) / gamma(n as f64 / 2.0)
}

/// Exponents `(q, k)` of the shape `(1 + r^q)^{-k}`.
fn shape(n: u32, s: f64) -> (f64, f64) {
    let q = 2.0 - s;
    (q, (n as f64 - 2.0) / q)
}

const CASES: [(u32, f64); 5] = [(3, 0.0), (3, 1.0), (4, 0.5), (5, 1.5), (3, 1.7)];

#[test]
fn sphere_area_examples() {
    assert!((sphere_area(3) - 4.0 * PI).abs() < 1e-13);
    assert!((sphere_area(4) - 2.0 * PI * PI).abs() < 1e-13);
    assert!((sphere_area(5) - omega(5)).abs() < 1e-13);
}

#[test]
fn power_integrals_against_beta() {
    for (n, s) in CASES {
        let grid = Arc::new(sharp_constant_grid(n, s).unwrap());
        let u = instanton_on(grid, n, s, 1.0).unwrap();
        let c = instanton_normalization(n, s, 1.0).unwrap().c;
        let (q, k) = shape(n, s);
        let p = critical_exponent(n, s).unwrap();
        let expect = omega(n) * c.powf(p) * beta_integral(n as f64 - s, q, k * p);
        let got = weighted_lp_integral(&u, p, s, n).unwrap();
        assert!(
            (got - expect).abs() / expect < 1e-9,
            "N={n} s={s}: {got} vs {expect}"
        );
    }
}

#[test]
fn gradient_energy_against_beta() {
    for (n, s) in CASES {
        let grid = Arc::new(sharp_constant_grid(n, s).unwrap());
        let u = instanton_on(grid, n, s, 1.0).unwrap();
        let c = instanton_normalization(n, s, 1.0).unwrap().c;
        let (q, k) = shape(n, s);
        // |U'|² = c²k²q² r^{2q-2} (1+r^q)^{-2k-2}.
        let expect = omega(n)
            * (c * k * q).powi(2)
            * beta_integral(2.0 * q - 2.0 + n as f64, q, 2.0 * k + 2.0);
        let got = gradient_energy(&u, n).unwrap();
        assert!(
            (got - expect).abs() / expect < 1e-8,
            "N={n} s={s}: {got} vs {expect}"
        );
    }
}

#[test]
fn instanton_solves_its_equation() {
    for (n, s) in CASES {
        let grid = Arc::new(sharp_constant_grid(n, s).unwrap());
        let u = instanton_on(grid, n, s, 1.0).unwrap();
        let p = critical_exponent(n, s).unwrap();
        let r = scalar_residual(&u, n, &[(1.0, p, s)]);
        assert!(r.relative < 1e-4, "N={n} s={s}: {}", r.relative);
    }
}

#[test]
fn gradient_energy_converges() {
    // The default grid already sits at round-off, so refinement is
    // measured from a coarse start.
    let coarse = make_grid(1e-6, 1e6, 160).unwrap();
    let fine = coarse.refined();
    let (n, s) = (3, 1.0);
    let c = instanton_normalization(n, s, 1.0).unwrap().c;
    let expect = omega(n) * c * c * beta_integral(3.0, 1.0, 4.0);
    let err = |g: RadialGrid| {
        let u = instanton_on(Arc::new(g), n, s, 1.0).unwrap();
        (gradient_energy(&u, n).unwrap() - expect).abs()
    };
    let (e1, e2) = (err(coarse), err(fine));
    assert!(e1 > 0.0 && e1 / e2 >= 3.0, "{e1:e} -> {e2:e}");
}

#[test]
fn divergent_integrals_are_reported() {
    let grid = Arc::new(default_grid());
    let one = RadialProfile::from_fn(grid.clone(), |_| 1.0).unwrap();
    assert!(matches!(
        weighted_lp_integral(&one, 2.0, 0.0, 3),
        Err(Error::Divergent(_))
    ));
    let hardy = RadialProfile::from_fn(grid, |r| r.powf(-0.5)).unwrap();
    assert!(matches!(
        weighted_lp_integral(&hardy, 4.0, 1.0, 3),
        Err(Error::Divergent(_))
    ));
}

#[test]
fn decay_slopes() {
    let u = instanton(3, 1.0, 1.0).unwrap();
    assert!((decay_slope(&u, (1e4, 1e6)).unwrap() + 1.0).abs() < 1e-3);
    let u = instanton(4, 0.0, 1.0).unwrap();
    assert!((decay_slope(&u, (1e4, 1e6)).unwrap() + 2.0).abs() < 1e-3);
    assert!(decay_slope(&u, (1e4, 1e7)).is_err());
}

#[test]
fn kelvin_is_an_involution() {
    let grid = Arc::new(default_grid());
    let u = random_bump(&grid, &mut rng(5)).unwrap();
    for n in [3, 4, 5] {
        let back = kelvin(&kelvin(&u, n).unwrap(), n).unwrap();
        let scale = u.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let worst = back
            .values()
            .iter()
            .zip(u.values())
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        assert!(worst <= 1e-13 * scale);
    }
}

#[test]
fn kelvin_maps_instanton_family() {
    // (ε + r^q)^{-k} goes to (1 + ε r^q)^{-k}.
    for (n, s, eps) in [(3u32, 1.0, 1.0), (3, 1.0, 4.0), (4, 0.5, 0.3)] {
        let u = instanton(n, s, eps).unwrap();
        let c = instanton_normalization(n, s, eps).unwrap().c;
        let (q, k) = shape(n, s);
        let ku = kelvin(&u, n).unwrap();
        for (&r, &v) in ku.grid().nodes().iter().zip(ku.values()).step_by(97) {
            let expect = c * (1.0 + eps * r.powf(q)).powf(-k);
            assert!(
                (v - expect).abs() <= 1e-12 * expect.max(1e-300),
                "r={r}: {v} vs {expect}"
            );
        }
    }
}

#[test]
fn dilation_preserves_critical_quantities() {
    let (n, s) = (3, 1.0);
    let p = critical_exponent(n, s).unwrap();
    let u = instanton(n, s, 1.0).unwrap();
    let (g0, b0) = (
        gradient_energy(&u, n).unwrap(),
        weighted_lp_integral(&u, p, s, n).unwrap(),
    );
    for sigma in [0.1, 0.5, 2.0, 10.0] {
        let d = dilate(&u, sigma, n).unwrap();
        let g = gradient_energy(&d, n).unwrap();
        let b = weighted_lp_integral(&d, p, s, n).unwrap();
        assert!((g - g0).abs() / g0 < 1e-6, "sigma {sigma}: {g} vs {g0}");
        assert!((b - b0).abs() / b0 < 1e-6, "sigma {sigma}: {b} vs {b0}");
    }
    assert!(matches!(dilate(&u, 1e3, n), Err(Error::Extrapolation(_))));
}

#[test]
fn csv_round_trip() {
    let u = instanton(3, 1.0, 1.0).unwrap();
    let back = RadialProfile::from_csv(&u.to_csv()).unwrap();
    assert_eq!(back.values(), u.values());
    assert!(RadialProfile::from_csv("x,y\n1,2\n").is_err());
    assert!(RadialProfile::from_csv("r,u\n1,2\n3\n").is_err());
}

#[test]
fn sharp_constant_closed_form() {
    // μ_0 in R^3 equals 3(π/2)^{4/3}.
    let mu0 = scalar_sharp_constant(3, 0.0).unwrap();
    let expect = 3.0 * (PI / 2.0).powf(4.0 / 3.0);
    assert!((mu0 - expect).abs() / expect < 1e-9);
    assert_eq!(scalar_sharp_constant(3, 2.0).unwrap(), 0.25);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn mass_split_sums_to_one(seed in any::<u64>(), x in -3.0f64..3.0) {
        let grid = Arc::new(make_grid(1e-6, 1e6, 1024).unwrap());
        let mut r = rng(seed);
        let pair = random_pair(&grid, &mut r).unwrap();
        let p = SystemParams::equal_weights(3, 1.0, 2.0, 1.0, 1.5, 0.7);
        let (i, o) = mass_split(&pair, &p, x.exp()).unwrap();
        prop_assert!((i + o - 1.0).abs() <= 1e-12);
        prop_assert!(i >= 0.0 && o >= 0.0);
    }

    #[test]
    fn balancing_hits_one_half(seed in any::<u64>()) {
        // Wide enough that the dilation stays within the extrapolation limit.
        let grid = Arc::new(make_grid(1e-20, 1e20, 16384).unwrap());
        let pair = random_pair(&grid, &mut rng(seed)).unwrap();
        let p = SystemParams::equal_weights(4, 0.5, 1.2, 1.0, 1.0, 0.3);
        let (b, sigma) = rescale_to_balance(&pair, &p).unwrap();
        prop_assert!(sigma > 0.0);
        let (i, _) = mass_split(&b, &p, 1.0).unwrap();
        prop_assert!((i - 0.5).abs() <= 1e-8);
    }

    #[test]
    fn nehari_data_scales(seed in any::<u64>(), c in 0.1f64..10.0) {
        let grid = Arc::new(make_grid(1e-6, 1e6, 512).unwrap());
        let pair = random_pair(&grid, &mut rng(seed)).unwrap();
        let p = SystemParams::equal_weights(3, 0.5, 2.0, 1.0, 1.0, 0.4);
        let a = pair_functionals(&pair.scaled(c, c), &p).unwrap();
        let b = pair_functionals(&pair, &p).unwrap().scaled(c, &p).unwrap();
        prop_assert!((a.a - b.a).abs() <= 1e-12 * a.a);
        prop_assert!((a.b - b.b).abs() <= 1e-12 * a.b);
        prop_assert!((a.c - b.c).abs() <= 1e-12 * a.c);
    }
}
