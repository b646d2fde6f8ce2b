use proptest::prelude::*;
use turan_bessel::bessel::oracle::{oracle_j, oracle_j_prime, oracle_y};
use turan_bessel::bessel::{bessel_j, bessel_j_prime, bessel_y, jtilde, normalized_j};
use turan_bessel::{Order, Precision};

fn ord(nu: f64) -> Order {
    Order::new(nu).unwrap()
}

#[test]
fn j_grid_matches_oracle() {
    let p = Precision::default();
    let mut worst = 0.0_f64;
    for i in 0..=30 {
        let nu = -0.95 + i as f64 * 0.235;
        for k in 1..=80 {
            let x = 0.5 * k as f64;
            let got = bessel_j(ord(nu), x, &p).unwrap();
            let want = oracle_j(nu, x, 40).unwrap().to_f64();
            let err = (got.value - want).abs();
            worst = worst.max(err);
            assert!(err <= 1e-13, "J_{nu}({x}): {} vs {want}", got.value);
            assert!(err <= got.abs_err.max(2.0 * f64::EPSILON * want.abs()), "J_{nu}({x}) err {err} > claimed {}", got.abs_err);
        }
    }
    eprintln!("worst J error {worst:e}");
}

#[test]
fn shifted_negative_orders_match_oracle() {
    for &nu in &[-1.3, -2.5, -4.75, -6.9, -9.2] {
        for &x in &[0.4, 2.0, 7.0, 11.9, 12.5, 25.0, 39.0] {
            let got = bessel_j(ord(nu), x, &Precision::default()).unwrap();
            let want = oracle_j(nu, x, 40).unwrap().to_f64();
            let tol = 1e-13 * want.abs().max(1.0);
            assert!((got.value - want).abs() <= tol, "J_{nu}({x}): {} vs {want}", got.value);
        }
    }
}

#[test]
fn large_arguments_for_zero_tables() {
    for &nu in &[0.0, 1.5, 5.0] {
        for &x in &[60.0, 150.0, 320.0] {
            let got = bessel_j(ord(nu), x, &Precision::default()).unwrap();
            let want = oracle_j(nu, x, 40).unwrap().to_f64();
            assert!((got.value - want).abs() < 1e-13, "J_{nu}({x}): {} vs {want}", got.value);
        }
    }
}

#[test]
fn y_grid_matches_oracle() {
    let p = Precision::default();
    for i in 0..=24 {
        let nu = -2.9 + i as f64 * 0.25;
        for k in 1..=40 {
            let x = 0.05 + k as f64;
            let got = bessel_y(ord(nu), x, &p).unwrap();
            let want = oracle_y(nu, x, 40).unwrap().to_f64();
            let tol = 1e-12 * want.abs().max(1.0);
            assert!((got.value - want).abs() <= tol, "Y_{nu}({x}): {} vs {want}", got.value);
        }
    }
}

#[test]
fn j_prime_matches_oracle() {
    for &nu in &[-0.5, 0.0, 0.7, 2.0, 4.5] {
        for &x in &[0.3, 3.0, 14.0, 33.0] {
            let got = bessel_j_prime(ord(nu), x, &Precision::default()).unwrap();
            let want = oracle_j_prime(nu, x, 40).unwrap().to_f64();
            assert!((got.value - want).abs() < 1e-13 * want.abs().max(1.0));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn three_term_recurrence(nu in -0.99f64..6.0, x in 0.05f64..40.0) {
        let p = Precision::default();
        let jm = bessel_j(ord(nu - 1.0), x, &p).unwrap().value;
        let j0 = bessel_j(ord(nu), x, &p).unwrap().value;
        let jp = bessel_j(ord(nu + 1.0), x, &p).unwrap().value;
        let res = jm + jp - 2.0 * nu / x * j0;
        prop_assert!(res.abs() <= 1e-12 * (1.0 + (2.0 * nu / x * j0).abs()));
    }

    #[test]
    fn wronskian(nu in -0.99f64..5.0, x in 0.2f64..40.0) {
        let p = Precision::default();
        let j1 = bessel_j(ord(nu + 1.0), x, &p).unwrap().value;
        let j0 = bessel_j(ord(nu), x, &p).unwrap().value;
        let y1 = bessel_y(ord(nu + 1.0), x, &p).unwrap().value;
        let y0 = bessel_y(ord(nu), x, &p).unwrap().value;
        let w = j1 * y0 - j0 * y1;
        let target = 2.0 / (std::f64::consts::PI * x);
        let scale = (j1 * y0).abs() + (j0 * y1).abs();
        prop_assert!((w - target).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn normalized_and_jtilde_agree(nu in -0.9f64..5.0, t in 0.01f64..20.0) {
        // J̃_ν(x²/4) = 𝒥_ν(x) / Γ(ν+1)
        let p = Precision::default();
        let x = t;
        let a = jtilde(ord(nu), 0, x * x / 4.0, &p).unwrap().value;
        let b = normalized_j(ord(nu), 0, x, &p).unwrap().value
            * turan_bessel::gamma::rgamma(nu + 1.0);
        prop_assert!((a - b).abs() <= 1e-13 * b.abs().max(1.0));
    }
}
