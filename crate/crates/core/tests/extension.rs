use std::cmp::Ordering;

use algroot::algebraic::{make_algebraic, RealAlgebraic};
use algroot::arith::{lg_ceil_u64, rat, Dyadic, DyadicInterval};
use algroot::extfield::{reduce_mod_a, AlgPoly};
use algroot::introot::isolate;
use algroot::poly::{modp, square_free_part, subst_y, BiPoly, IntPoly};
use algroot::Sign;
use proptest::prelude::*;

fn poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|c| IntPoly::from_i64s(&c))
}

/// A random real algebraic number, or `None` if the polynomial has no real root.
fn algebraic(c: &[i64], pick: usize) -> Option<RealAlgebraic> {
    let a = square_free_part(&IntPoly::from_i64s(c));
    if a.deg() == 0 {
        return None;
    }
    let roots = isolate(&a).roots;
    let r = roots.get(pick % roots.len().max(1))?;
    Some(make_algebraic(&a, r.lo(), r.hi()).unwrap())
}

fn closed_forms() -> Vec<RealAlgebraic> {
    vec![
        make_algebraic(&IntPoly::from_i64s(&[-2, 0, 1]), &rat(1, 1), &rat(2, 1)).unwrap(),
        make_algebraic(&IntPoly::from_i64s(&[-3, 0, 1]), &rat(1, 1), &rat(2, 1)).unwrap(),
        make_algebraic(&IntPoly::from_i64s(&[2, -4, 1]), &rat(0, 1), &rat(1, 1)).unwrap(),
    ]
}

fn eval(g: &IntPoly, x: &DyadicInterval, bits: i64) -> DyadicInterval {
    DyadicInterval::eval_int_poly(g.coeffs(), x, -bits)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sign_at_agrees_with_interval_evaluation(
        a in prop::collection::vec(-20i64..=20, 3..7),
        pick in 0usize..6,
        g in poly(7, 50),
    ) {
        let Some(alpha) = algebraic(&a, pick) else { return Ok(()) };
        let s = alpha.sign_at(&g);
        for k in [8u32, 16, 32, 64, 128, 256] {
            let v = eval(&g, &alpha.approximate(k), k as i64 + 64);
            if let Some(t) = v.certain_sign().filter(|t| *t != Sign::Zero) {
                prop_assert_eq!(t, s);
            }
        }
        prop_assert_eq!(alpha.sign_at(alpha.poly()), Sign::Zero);
        prop_assert_eq!(alpha.sign_at(&(alpha.poly() * &g)), Sign::Zero);
    }

    #[test]
    fn approximations_nest(a in prop::collection::vec(-20i64..=20, 3..7), pick in 0usize..6) {
        let Some(alpha) = algebraic(&a, pick) else { return Ok(()) };
        let mut prev = alpha.approximate(0);
        for l in 1..90 {
            let cur = alpha.approximate(l);
            prop_assert!(cur.is_subset_of(&prev), "{l}: {cur:?} not in {prev:?}");
            prop_assert!(cur.width_at_most(l as i64));
            prev = cur;
        }
    }

    #[test]
    fn compare_is_consistent(
        a in prop::collection::vec(-20i64..=20, 3..6),
        b in prop::collection::vec(-20i64..=20, 3..6),
        i in 0usize..5,
        j in 0usize..5,
    ) {
        let (Some(x), Some(y)) = (algebraic(&a, i), algebraic(&b, j)) else { return Ok(()) };
        let c = x.compare(&y);
        prop_assert_eq!(y.compare(&x), c.reverse());
        prop_assert_eq!(x.compare(&x), Ordering::Equal);
        let (ex, ey) = (x.approximate(60), y.approximate(60));
        if ex.hi() < ey.lo() {
            prop_assert_eq!(c, Ordering::Less);
        } else if ey.hi() < ex.lo() {
            prop_assert_eq!(c, Ordering::Greater);
        }
        if c == Ordering::Equal {
            prop_assert!(!(ex.hi() < ey.lo() || ey.hi() < ex.lo()));
        }
    }

    #[test]
    fn endpoint_sign_matches_closed_forms(
        rows in prop::collection::vec(poly(3, 30), 2..6),
        p in -40i64..40,
        d in 1i64..9,
        which in 0usize..3,
    ) {
        let alpha = closed_forms().swap_remove(which);
        let raw = BiPoly::new(rows);
        let Ok(b) = AlgPoly::new(alpha.clone(), &raw) else { return Ok(()) };
        let q = rat(p, d);
        let s = b.endpoint_sign(&q);
        // d^n B(x, q) evaluated directly from the unreduced rows
        let v = eval(&subst_y(&raw, &q), &alpha.approximate(160), 200);
        prop_assert!(v.width_at_most(128));
        if let Some(t) = v.certain_sign().filter(|t| *t != Sign::Zero) {
            prop_assert_eq!(t, s);
        }
    }

    #[test]
    fn reduction_preserves_signs(
        rows in prop::collection::vec(poly(6, 40), 1..5),
        a in prop::collection::vec(-20i64..=20, 3..6),
        pick in 0usize..5,
    ) {
        let Some(alpha) = algebraic(&a, pick) else { return Ok(()) };
        let reduced = reduce_mod_a(&rows, alpha.poly());
        for (before, after) in rows.iter().zip(&reduced) {
            prop_assert!(after.is_zero() || after.deg() < alpha.degree());
            prop_assert_eq!(alpha.sign_at(before), alpha.sign_at(after));
        }
    }

    #[test]
    fn coefficient_enclosures_shrink(
        rows in prop::collection::vec(poly(4, 1000), 2..5),
        a in prop::collection::vec(-20i64..=20, 3..6),
        pick in 0usize..5,
    ) {
        let Some(alpha) = algebraic(&a, pick) else { return Ok(()) };
        let Ok(b) = AlgPoly::new(alpha, &BiPoly::new(rows)) else { return Ok(()) };
        for i in 0..=b.degree() {
            let mut prev = b.coeff_enclosure(i, 4);
            for l in 5..70u32 {
                let cur = b.coeff_enclosure(i, l);
                prop_assert!(cur.width_at_most(l as i64));
                // cur and prev both hold b_i(alpha), and cur has width <= 2^-l
                let slack = Dyadic::pow2(-(l as i64));
                let widened = DyadicInterval::new(prev.lo() - &slack, prev.hi() + &slack);
                prop_assert!(cur.is_subset_of(&widened));
                prev = cur;
            }
        }
    }

    #[test]
    fn coefficient_magnitudes_in_bracket(
        rows in prop::collection::vec(poly(3, 60), 1..5),
        a in prop::collection::vec(-30i64..=30, 3..6),
        pick in 0usize..5,
    ) {
        let ai = IntPoly::from_i64s(&a);
        prop_assume!(ai.deg() >= 2 && modp::irreducible_certificate(&ai));
        let Some(alpha) = algebraic(&a, pick) else { return Ok(()) };
        let m = alpha.degree() as u64;
        let reduced: Vec<IntPoly> = reduce_mod_a(&rows, alpha.poly());
        let sigma = rows.iter().map(|r| r.bitsize(false)).max().unwrap();
        let tau = ai.bitsize(false);
        let e = (m * sigma + m * tau + 5 * m * lg_ceil_u64(m)) as i64;
        for (raw, bi) in rows.iter().zip(&reduced) {
            if raw.deg() >= alpha.degree() || alpha.sign_at(bi) == Sign::Zero {
                continue;
            }
            let v = eval(raw, &alpha.approximate((e + 64) as u32), e + 128);
            prop_assert!(v.mag() <= Dyadic::pow2(e));
            prop_assert!(v.mag() >= Dyadic::pow2(-e));
        }
    }
}

#[test]
fn closed_form_coefficients() {
    // b(x) = x - 1 at 2 - sqrt 2 is 1 - sqrt 2 < 0
    let alpha = closed_forms().swap_remove(2);
    assert_eq!(alpha.sign_at(&IntPoly::from_i64s(&[-1, 1])), Sign::Negative);
    let b = AlgPoly::new(alpha, &BiPoly::new(vec![IntPoly::from_i64s(&[0, 1]), IntPoly::from_i64s(&[1])])).unwrap();
    // y + alpha at y = -1/2 is positive, at y = -1 is negative
    assert_eq!(b.endpoint_sign(&rat(-1, 2)), Sign::Positive);
    assert_eq!(b.endpoint_sign(&rat(-1, 1)), Sign::Negative);
    let e = b.coeff_enclosure(0, 100);
    let bracket = DyadicInterval::enclose(&rat(5857864376, 10_000_000_000), &rat(5857864377, 10_000_000_000), -40);
    assert!(e.width_at_most(100) && e.is_subset_of(&bracket));
}
