use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use resolvent::exact_core::{binom_u, ceil_div, factorial, nat, HighPrecisionReal as Hpr, Rational};
use resolvent::planes::{find_point, quadric_k_plane, run_pipeline, solve_all, SliceConfig};
use resolvent::polar::{cone_type, cone_type_chain, contains_plane, HSystem, IntersectionType};
use resolvent::poly::HPoly;
use resolvent::sample::{complex_form, rational_form, rng, small_rational};
use resolvent::tschirnhaus::{build_tschirnhaus, GeneralPoly};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

/// Multiplicative binomial, independent of the library's table.
fn binom_oracle(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn form(seed: u64, n: usize, d: u32) -> HPoly<Rational> {
    rational_form(&mut rng(seed), n, d, 0.7)
}

fn point(seed: u64, n: usize) -> Vec<Rational> {
    let mut r = rng(seed ^ 0xabcd);
    (0..n).map(|_| small_rational(&mut r)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pascal_rule(n in 1u64..120, k in 1u64..120) {
        prop_assert_eq!(binom_u(n, k), binom_u(n - 1, k - 1) + binom_u(n - 1, k));
        prop_assert_eq!(binom_u(n, k), binom_oracle(n, k));
    }

    #[test]
    fn ceil_div_matches_u128(a in 0u64..u64::MAX, b in 1u64..u64::MAX) {
        let want = u128::from(a).div_ceil(u128::from(b));
        prop_assert_eq!(ceil_div(&nat(a), &nat(b)).unwrap(), BigUint::from(want));
    }

    #[test]
    fn hpr_encloses_rationals(a in rational(), b in rational(), prec in 64u32..300) {
        let (x, y) = (Hpr::from_rational(&a, prec), Hpr::from_rational(&b, prec));
        for (h, exact) in [(x.add(&y), &a + &b), (x.mul(&y), &a * &b), (x.sub(&y), &a - &b)] {
            let gap = (h.midpoint() - exact).abs();
            prop_assert!(gap <= h.error_radius());
        }
        if a != b {
            prop_assert_eq!(x.try_cmp(&y).unwrap(), a.cmp(&b));
        }
    }

    #[test]
    fn scaling_is_c_to_the_degree(seed: u64, n in 2usize..5, d in 1u32..5, c in rational()) {
        let f = form(seed, n, d);
        let x = point(seed, n);
        let cx: Vec<Rational> = x.iter().map(|v| v * &c).collect();
        let scale = (0..d).fold(Rational::one(), |acc, _| acc * &c);
        prop_assert_eq!(f.evaluate(&cx).unwrap(), f.evaluate(&x).unwrap() * scale);
    }

    #[test]
    fn euler_identity(seed: u64, n in 2usize..5, d in 1u32..5) {
        let f = form(seed, n, d);
        let x = point(seed, n);
        let mut lhs = Rational::zero();
        for (j, xj) in x.iter().enumerate() {
            lhs += f.partial(j).unwrap().evaluate(&x).unwrap() * xj;
        }
        prop_assert_eq!(lhs, f.evaluate(&x).unwrap() * q(i64::from(d), 1));
    }

    #[test]
    fn polar_endpoints(seed: u64, n in 2usize..5, d in 1u32..5) {
        let f = form(seed, n, d);
        let p = point(seed, n);
        let y = point(seed.wrapping_add(1), n);
        let d_fact = Rational::from_integer(BigInt::from(factorial(u64::from(d))));
        prop_assert_eq!(f.polar(&p, 0).unwrap().evaluate(&y).unwrap(), f.evaluate(&y).unwrap() * d_fact);
        prop_assert_eq!(f.polar(&p, d).unwrap().evaluate(&y).unwrap(), f.evaluate(&p).unwrap());
    }

    #[test]
    fn render_parse_round_trip(seed: u64, n in 1usize..5, d in 0u32..5) {
        let f = form(seed, n, d);
        let back: HPoly<Rational> = HPoly::parse_in(&f.to_string(), n, d).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn technical_identity(seed: u64, n in 2usize..6, d in 1u32..6, l in rational(), m in rational()) {
        let f = form(seed, n, d);
        let (mut p, mut q) = (point(seed, n), point(seed.wrapping_add(7), n));
        p[0] = Rational::one();
        q[0] = Rational::one();
        prop_assert!(f.technical_identity_check(&p, &q, &l, &m).unwrap());
    }

    #[test]
    fn chain_type_multiplicities(d in 1u32..8, k in 0u32..12) {
        let t = cone_type_chain(d, k);
        for j in 1..=d {
            let want: u64 = binom_oracle(u64::from(k + d - j), u64::from(d - j)).try_into().unwrap();
            prop_assert_eq!(t.count(j), want);
        }
        // hockey stick: sum_j C(k+d-j, d-j) = C(k+d, d-1)
        let total: u64 = binom_oracle(u64::from(k + d), u64::from(d - 1)).try_into().unwrap();
        prop_assert_eq!(t.total(), total);
        let base = IntersectionType::from_degrees(&(1..=d).collect::<Vec<_>>());
        prop_assert_eq!(cone_type(&base, k), t);
    }

    #[test]
    fn cone_types_grow(degrees in proptest::collection::vec(1u32..6, 1..5), k in 0u32..6) {
        let t = IntersectionType::from_degrees(&degrees);
        let (a, b) = (cone_type(&t, k), cone_type(&t, k + 1));
        for j in 1..=t.max_degree() {
            prop_assert!(b.count(j) >= a.count(j));
        }
        prop_assert_eq!(a.max_degree(), t.max_degree());
    }

    #[test]
    fn tschirnhaus_is_homogeneous(seed in 0u64..1000, n in 2usize..6, c in rational()) {
        let p = GeneralPoly::random_rooted(n, seed);
        let t = build_tschirnhaus(&p, n.min(3)).unwrap();
        let w = point(seed, n);
        let cw: Vec<Rational> = w.iter().map(|v| v * &c).collect();
        for (m, b) in t.b.iter().enumerate() {
            let scale = (0..=m).fold(Rational::one(), |acc, _| acc * &c);
            prop_assert_eq!(b.evaluate(&cw).unwrap(), b.evaluate(&w).unwrap() * scale);
        }
        // w = e_0 is the identity transformation: (z-1)^n
        let mut e0 = vec![Rational::zero(); n];
        e0[0] = Rational::one();
        for (m, b) in t.b.iter().enumerate() {
            let sign = if m % 2 == 0 { -1 } else { 1 };
            let c = BigInt::from(binom_oracle(n as u64, m as u64 + 1)) * sign;
            prop_assert_eq!(b.evaluate(&e0).unwrap(), Rational::from_integer(c));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn point_finding_is_deterministic(seed: u64, l in 1usize..3) {
        let mut r = rng(seed);
        let polys: Vec<HPoly<Complex64>> = (0..l).map(|_| complex_form(&mut r, l + 2, 2)).collect();
        let v = HSystem::new(l + 1, polys).unwrap();
        let cfg = SliceConfig::with_seed(seed);
        let (a, b) = (find_point(&v, &cfg), find_point(&v, &cfg));
        prop_assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }
}

#[test]
fn pipeline_is_deterministic() {
    let cfg = SliceConfig::with_seed(41);
    let a = serde_json::to_string(&run_pipeline(9, 1, &cfg).unwrap()).unwrap();
    let b = serde_json::to_string(&run_pipeline(9, 1, &cfg).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn solution_count_is_degree_product() {
    for seed in 0..20u64 {
        let mut r = rng(seed);
        let degrees: Vec<u32> = (0..1 + seed as usize % 3)
            .map(|i| 2 + (i as u32 + seed as u32) % 2)
            .collect();
        let l = degrees.len();
        let polys: Vec<HPoly<Complex64>> = degrees.iter().map(|&d| complex_form(&mut r, l + 1, d)).collect();
        let v = HSystem::new(l, polys).unwrap();
        let sol = solve_all(&v, &SliceConfig::with_seed(seed)).unwrap();
        let product: u64 = degrees.iter().map(|&d| u64::from(d)).product();
        assert_eq!(sol.degree, product);
        assert_eq!(sol.points.len() as u64, product, "seed {seed}, degrees {degrees:?}");
        assert!(sol.residuals.iter().all(|&r| r <= 1e-10), "{:?}", sol.residuals);
    }
}

#[test]
fn quadric_planes_lie_on_quadrics() {
    for seed in 0..50u64 {
        let l = 1 + seed as usize % 2;
        let k = 1 + seed as usize % 3;
        let r = (k + 1) * l + k;
        let mut g = rng(seed);
        let polys: Vec<HPoly<Complex64>> = (0..l).map(|_| complex_form(&mut g, r + 1, 2)).collect();
        let v = HSystem::new(r, polys).unwrap();
        let plane = quadric_k_plane(&v, k, None, &SliceConfig::with_seed(seed)).unwrap();
        assert!(plane.plane_residual <= 1e-6, "seed {seed}");
        assert!(contains_plane(&v, &plane.points, 1e-6).unwrap());
    }
}
