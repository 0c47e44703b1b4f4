use proptest::prelude::*;

use super::*;
use crate::arith::{rat, Integer, Sign};

fn p(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn lift(f: &IntPoly) -> BiPoly {
    f.map(|c| IntPoly::constant(c.clone()))
}

/// Fraction-free Gaussian elimination (Bareiss) over an integral domain.
fn det<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::r_one();
    }
    let mut negate = false;
    let mut prev = R::r_one();
    for k in 0..n - 1 {
        if m[k][k].r_is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].r_is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return R::r_zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].r_mul(&m[k][k]).r_sub(&m[i][k].r_mul(&m[k][j]));
                m[i][j] = v.r_div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.r_neg()
    } else {
        d
    }
}

/// Determinantal subresultant `S_j(f, g)`, `deg f = p >= deg g = q >= j`.
/// Built from the rows `x^i f` (`i < q - j`) and `x^i g` (`i < p - j`); the last
/// column collects the terms of degree `<= j` of each row.
fn det_subres<R: Ring>(f: &Poly<R>, g: &Poly<R>, j: usize) -> Poly<R> {
    let (pd, qd) = (f.deg(), g.deg());
    let n = pd + qd - 2 * j;
    let top = pd + qd - j - 1;
    let mut rows: Vec<Poly<R>> = Vec::new();
    for i in (0..qd - j).rev() {
        rows.push(f.shift(i));
    }
    for i in (0..pd - j).rev() {
        rows.push(g.shift(i));
    }
    let m: Vec<Vec<Poly<R>>> = rows
        .iter()
        .map(|r| {
            let mut row: Vec<Poly<R>> = (0..n - 1).map(|c| Poly::constant(r.coeff(top - c))).collect();
            row.push(Poly::new((0..=j).map(|i| r.coeff(i)).collect()));
            row
        })
        .collect();
    det(m)
}

#[test]
fn eval_at_rational_examples() {
    assert_eq!(p(&[-2, 0, 1]).eval_rational(&rat(0, 1)), rat(-2, 1));
    assert_eq!(p(&[-2, 0, 1]).eval_rational(&rat(3, 2)), rat(1, 4));
    assert_eq!(p(&[-6, 11, -6, 1]).eval_rational(&rat(2, 1)), rat(0, 1));
}

#[test]
fn square_free_examples() {
    assert_eq!(square_free_part(&p(&[1, -2, 1])), p(&[-1, 1]));
    assert_eq!(square_free_part(&p(&[-2, 0, 1])), p(&[-2, 0, 1]));
    let y4m3 = p(&[-3, 0, 0, 0, 1]);
    assert_eq!(square_free_part(&(&y4m3 * &y4m3)), y4m3);
    assert_eq!(square_free_part(&p(&[2, -4, 2])), p(&[-1, 1]));
}

#[test]
fn yun_examples() {
    // (x-1)^2 (x+2) = x^3 - 3x + 2
    let f = yun_squarefree_factorization(&p(&[2, -3, 0, 1]));
    assert_eq!(f.factors, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 2)]);
    let f = yun_squarefree_factorization(&p(&[-2, 0, 1]));
    assert_eq!(f.factors, vec![(p(&[-2, 0, 1]), 1)]);
    let y4m3 = p(&[-3, 0, 0, 0, 1]);
    let f = yun_squarefree_factorization(&(&y4m3 * &y4m3));
    assert_eq!(f.factors, vec![(y4m3, 2)]);
    let g = p(&[-6, 2, 4]); // 2 (2x + 3)(x - 1)... times -1 in content below
    let f = yun_squarefree_factorization(&-&g);
    assert_eq!(f.expand(), -&g);
    assert_eq!(f.content, Integer::from(-2));
}

#[test]
fn gcd_examples() {
    let a = p(&[-1, 1]);
    let b = p(&[2, 1]);
    let c = p(&[5, 0, 1]);
    assert_eq!(gcd(&(&a * &b), &(&a * &c)), a);
    assert_eq!(gcd(&b.scale_int(&Integer::from(6)), &c), IntPoly::one());
    assert_eq!(gcd(&IntPoly::zero(), &b.scale_int(&Integer::from(-3))), b);
}

#[test]
fn reduce_mod_examples() {
    let r = reduce_mod(&[p(&[0, 0, 1])], &p(&[-2, 0, 1]));
    assert_eq!(r, vec![p(&[2])]);
    let r = reduce_mod(&[p(&[0, 0, 0, 1])], &p(&[-3, 0, 1]));
    assert_eq!(r, vec![p(&[0, 3])]);
    let r = reduce_mod(&[p(&[0, 1, 0, 0, 1])], &p(&[-1, -1, 1]));
    assert_eq!(r, vec![p(&[2, 4])]);
    // Non-monic: 2x^2 - 1 with x^2 -> (1/2); common denominator 2 for both.
    let r = reduce_mod(&[p(&[0, 0, 1]), p(&[3])], &p(&[-1, 0, 2]));
    assert_eq!(r, vec![p(&[1]), p(&[6])]);
    // Negative leading coefficient must not flip signs.
    let r = reduce_mod(&[p(&[0, 0, 1])], &p(&[2, 0, -1]));
    assert_eq!(r, vec![p(&[2])]);
}

#[test]
fn prem_identity() {
    let a = p(&[3, -1, 4, 1, -5, 9]);
    let b = p(&[2, 6, -5]);
    let r = prem(&a, &b);
    assert!(r.deg() < b.deg());
    // lc(b)^(e) a - r is divisible by b
    let e = a.deg() - b.deg() + 1;
    let lhs = &a.scale_int(&num_traits::pow(b.lc(), e)) - &r;
    let q = lhs.div_exact(&b);
    assert_eq!(&q * &b, lhs);
    for j in 0..b.deg() {
        assert_eq!(prem_coeff(&a, &b, j), r.coeff(j));
    }
}

#[test]
fn resultant_examples() {
    let b = bipoly_from_rows(&[&[0, 0, -1], &[], &[], &[], &[1]]);
    let y4m3 = p(&[-3, 0, 0, 0, 1]);
    assert_eq!(resultant_bivariate(&b, &p(&[-3, 0, 1])), &y4m3 * &y4m3);
    let b = bipoly_from_rows(&[&[0, -1], &[1]]);
    assert_eq!(resultant_bivariate(&b, &p(&[-2, 1])), p(&[-2, 1]));
    let b = bipoly_from_rows(&[&[0, -1], &[], &[1]]);
    assert_eq!(resultant_bivariate(&b, &p(&[-2, 0, 1])), p(&[-2, 0, 0, 0, 1]));
    // deg_x B = 0: B^(deg A)
    let b = bipoly_from_rows(&[&[], &[1]]);
    assert_eq!(resultant_bivariate(&b, &p(&[-2, 0, 1])), p(&[0, 0, 1]));
    let b = bipoly_from_rows(&[&[], &[0, 1]]);
    assert_eq!(resultant_bivariate(&b, &p(&[-2, 1])), p(&[0, 2]));
}

#[test]
fn bivariate_resultant_matches_sylvester() {
    let b = bipoly_from_rows(&[&[1, 2, -1], &[0, 3], &[-2, 0, 1], &[1, 1]]);
    let a = p(&[-5, 1, 0, 2]);
    // Sylvester matrix in x with Z[y] entries, A first.
    let bx = transpose(&b);
    let ax: BiPoly = a.map(|c| IntPoly::constant(c.clone()));
    let s = det_subres(&ax, &bx, 0);
    assert_eq!(resultant_bivariate(&b, &a), s.lc());
}

#[test]
fn sturm_habicht_examples() {
    let s = signed_remainder_seq(&lift(&p(&[-2, 0, 1])), &lift(&p(&[0, 2])));
    assert_eq!(s.elements, vec![lift(&p(&[-2, 0, 1])), lift(&p(&[0, 2])), lift(&p(&[8]))]);
    let at0 = eval_seq_at_rational(&s, &EvalPoint::Finite(rat(0, 1)));
    assert_eq!(at0, vec![p(&[-2]), IntPoly::zero(), p(&[8])]);
    let inf: Vec<Sign> = eval_seq_at_rational(&s, &EvalPoint::PosInf)
        .iter()
        .map(|c| Sign::of_int(&c.lc()))
        .collect();
    assert_eq!(inf, vec![Sign::Positive; 3]);

    let s = signed_remainder_seq(&lift(&p(&[0, 1])), &lift(&p(&[1])));
    assert_eq!(s.elements, vec![lift(&p(&[0, 1])), lift(&p(&[1]))]);

    let b = bipoly_from_rows(&[&[0, 0, -1], &[], &[], &[], &[1]]);
    let db = b.derivative();
    let s = signed_remainder_seq(&b, &db);
    let last = s.last();
    assert_eq!(last.deg(), 0);
    let res = resultant(&b, &db);
    let l = last.coeff(0);
    assert!(l == res || l == -&res, "{l} vs {res}");
    let at2 = eval_seq_at_rational(&s, &EvalPoint::Finite(rat(2, 1)));
    assert_eq!(at2[0], p(&[16, 0, -1]));
    assert_eq!(at2[1], p(&[32]));
}

#[test]
fn json_polynomials() {
    let f = p(&[-2, 0, 1]);
    assert_eq!(serde_json::to_string(&f).unwrap(), r#"["-2","0","1"]"#);
    let back: IntPoly = serde_json::from_str(r#"["-2","0","1","0"]"#).unwrap();
    assert_eq!(back, f);
}

fn small_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| IntPoly::from_i64s(&c))
}

fn univariate_sturm_count(f: &IntPoly, a: &Rational, b: &Rational) -> usize {
    let s = signed_remainder_seq(&lift(f), &lift(&f.derivative()));
    let sign = |c: &IntPoly| Sign::of_int(&c.coeff(0));
    let fixed = fix_sturm_signs(s.select_nondefective(sign), sign);
    let polys: Vec<IntPoly> = fixed.iter().map(|(e, _)| e.map(|c| c.coeff(0))).collect();
    sturm_variations(&polys, a) - sturm_variations(&polys, b)
}

proptest! {
    #[test]
    fn resultant_is_sylvester_determinant(f in small_poly(6, 20), g in small_poly(6, 20)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let (a, b) = if f.deg() >= g.deg() { (f, g) } else { (g, f) };
        prop_assume!(a.deg() >= 1);
        let d = det_subres(&a, &b, 0).coeff(0);
        prop_assert_eq!(resultant(&a, &b), d.clone());
        let sign = if a.deg() % 2 == 1 && b.deg() % 2 == 1 { -d } else { d };
        prop_assert_eq!(resultant(&b, &a), sign);
    }

    #[test]
    fn chain_matches_determinants(f in small_poly(7, 9), g in small_poly(6, 9)) {
        prop_assume!(!f.is_zero() && !g.is_zero() && f.deg() > g.deg());
        let chain = subresultant_chain(&f, &g);
        prop_assert_eq!(&chain[0].poly, &f);
        prop_assert_eq!(&chain[1].poly, &g);
        for j in 0..=g.deg() {
            if j + 1 == f.deg() {
                continue;
            }
            let d = det_subres(&f, &g, j);
            let entry = chain.iter().find(|e| e.index == j);
            match entry {
                Some(e) => {
                    prop_assert_eq!(&e.poly, &d, "S_{}", j);
                    prop_assert_eq!(e.defective, e.poly.deg() < j);
                }
                None => prop_assert!(d.is_zero(), "missing S_{} = {:?}", j, d),
            }
        }
    }

    #[test]
    fn sturm_counts_match_classical(f in small_poly(8, 12), a in -40i64..40, w in 1i64..40) {
        prop_assume!(f.deg() >= 1 && f.is_square_free());
        let lo = rat(a, 4);
        let hi = rat(a + w, 4);
        let classical = sturm_sequence(&f, &f.derivative());
        let expect = sturm_variations(&classical, &lo) - sturm_variations(&classical, &hi);
        prop_assert_eq!(univariate_sturm_count(&f, &lo, &hi), expect);
    }

    #[test]
    fn yun_reconstructs(parts in prop::collection::vec((small_poly(3, 6), 1usize..4), 1..4), c in 1i64..5) {
        let mut f = IntPoly::constant(Integer::from(c));
        for (q, k) in &parts {
            if q.is_zero() {
                continue;
            }
            for _ in 0..*k {
                f = &f * q;
            }
        }
        prop_assume!(f.deg() >= 1);
        let y = yun_squarefree_factorization(&f);
        prop_assert_eq!(y.expand(), f.clone());
        for w in y.factors.windows(2) {
            prop_assert!(w[0].1 < w[1].1);
        }
        for (i, (a, _)) in y.factors.iter().enumerate() {
            prop_assert!(a.is_square_free());
            prop_assert!(a.lc() > Integer::from(0));
            for (b, _) in &y.factors[i + 1..] {
                prop_assert_eq!(gcd(a, b), IntPoly::one());
            }
        }
        let sfp = square_free_part(&f);
        prop_assert!(sfp.is_square_free());
        let _ = f.div_exact(&sfp);
    }
}
