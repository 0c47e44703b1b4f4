use algroot::arith::rat;
use algroot::bench::{gen_laguerre, gen_mignotte, gen_random, gen_wilkinson, laguerre_poly, run_benchmark, write_csv, BenchSpec, Family};
use algroot::introot::isolate;
use algroot::poly::{bipoly_from_rows, IntPoly};
use algroot::{solve, Method, Sign, SolveOptions};

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

#[test]
fn random_is_deterministic() {
    let a = gen_random(2, 3, 10, 1).unwrap();
    let b = gen_random(2, 3, 10, 1).unwrap();
    assert_eq!(a.bipoly(), b.bipoly());
    assert_eq!(a.alpha().poly(), b.alpha().poly());
    assert_ne!(gen_random(2, 3, 10, 2).unwrap().bipoly(), a.bipoly());
}

#[test]
fn random_quadratic_has_irrational_real_roots() {
    for seed in 0..20 {
        let b = gen_random(2, 3, 10, seed).unwrap();
        let a = b.alpha().poly();
        let disc = a.coeff(1) * a.coeff(1) - a.coeff(2) * a.coeff(0) * 4;
        assert!(disc > 0.into());
        let r = num_integer::Roots::sqrt(&disc);
        assert_ne!(&r * &r, disc);
        assert!(b.eta() < 2);
    }
}

#[test]
fn random_solvers_agree() {
    let b = gen_random(3, 10, 10, 7).unwrap();
    let counts: Vec<usize> = Method::ALL
        .iter()
        .map(|&m| solve(&b, m, &SolveOptions::default()).unwrap().roots.len())
        .collect();
    assert!(counts.iter().all(|&c| c == counts[0]), "{counts:?}");
}

#[test]
fn laguerre_polynomials() {
    // 2 L_2 = x^2 - 4x + 2
    assert_eq!(laguerre_poly(2), p(&[2, -4, 1]));
    // 6 L_3 = -x^3 + 9x^2 - 18x + 6
    assert_eq!(laguerre_poly(3), p(&[6, -18, 9, -1]));
}

#[test]
fn laguerre_small_cases() {
    let b = gen_laguerre(2, 1).unwrap();
    // alpha + 1 - y, alpha = 2 - sqrt 2
    assert_eq!(b.bipoly(), &bipoly_from_rows(&[&[1, 1], &[-1]]));
    let r = solve(&b, Method::Sturm, &SolveOptions::default()).unwrap();
    assert_eq!(r.roots.len(), 1);
    assert!(r.roots[0].contains(&rat(15858, 10000)));
    let b = gen_laguerre(2, 2).unwrap();
    // y^2 - 2(alpha + 2) y + (alpha + 1)(alpha + 2), alpha^2 = 4 alpha - 2
    assert_eq!(b.bipoly(), &bipoly_from_rows(&[&[0, 7], &[-4, -2], &[1]]));
    for m in Method::ALL {
        let r = solve(&b, m, &SolveOptions::default()).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots.iter().all(|x| x.lo() >= &rat(0, 1)));
    }
}

#[test]
fn wilkinson_small_cases() {
    let b = gen_wilkinson(2, 1).unwrap();
    assert_eq!(b.bipoly(), &bipoly_from_rows(&[&[0, -1], &[1]]));
    let b = gen_wilkinson(2, 2).unwrap();
    // y^2 - 3 alpha y + 2 alpha^2 with alpha^2 = 4 alpha - 2
    assert_eq!(b.bipoly(), &bipoly_from_rows(&[&[-4, 8], &[0, -3], &[1]]));
    let b = gen_wilkinson(2, 3).unwrap();
    let r = solve(&b, Method::Bitstream, &SolveOptions::default()).unwrap();
    let expect = [rat(5858, 10000), rat(11716, 10000), rat(17574, 10000)];
    assert_eq!(r.roots.len(), 3);
    for (root, e) in r.roots.iter().zip(&expect) {
        assert!(root.lo() < e && e < &(root.hi() + rat(1, 1000)));
    }
}

#[test]
fn mignotte_small_cases() {
    let b = gen_mignotte(3, 4, 3).unwrap();
    assert_eq!(b.alpha().poly(), &p(&[-1, 0, -3, 1]));
    assert_eq!(b.alpha().poly().sign_at_rational(&rat(3, 1)), Sign::Negative);
    assert_eq!(b.alpha().poly().sign_at_rational(&rat(4, 1)), Sign::Positive);
    assert_eq!(b.bipoly(), &bipoly_from_rows(&[&[-2], &[0, 4], &[0, 0, -2], &[], &[1]]));
    assert!(gen_mignotte(2, 4, 3).is_err());
    assert!(gen_mignotte(3, 2, 3).is_err());
}

#[test]
fn csv_is_reproducible_without_timings() {
    let spec = BenchSpec {
        family: Family::Random,
        ms: vec![2],
        ns: vec![4],
        repetitions: 1,
        seed: 3,
        record_times: false,
        ..Default::default()
    };
    let render = || {
        let rows = run_benchmark(&spec).unwrap();
        assert!(rows.iter().all(|r| r.agree && r.status == "ok"));
        let mut out = Vec::new();
        write_csv(&rows, &mut out).unwrap();
        out
    };
    let a = render();
    assert_eq!(a, render());
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("family,m,n,method,"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn laguerre_defining_polynomial_roots() {
    let r = isolate(&laguerre_poly(5));
    assert_eq!(r.roots.len(), 5);
    assert!(r.roots[0].lo() >= &rat(0, 1));
}
