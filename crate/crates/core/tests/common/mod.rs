//! Test-side generators and independent oracles.
#![allow(dead_code)]

use grho::dyadic::Dyadic;
use grho::element::{GElement, GenKind, Grho, Token};
use grho::labelling::HalfPos;
use grho::plmap::{dyadic_interpolate, Interval, PlHomeo};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use rand::Rng;

pub fn d(s: &str) -> Dyadic {
    s.parse().unwrap()
}

/// A random dyadic in `[-span, span]` with denominator at most `2^6`.
pub fn random_dyadic(rng: &mut impl Rng, span: i64) -> Dyadic {
    let e = rng.gen_range(0..=6u32);
    let m = rng.gen_range(-(span << e)..=(span << e));
    Dyadic::new(m, e)
}

/// A random element of F' supported in `[1/32, 31/32]`.
pub fn random_fprime(rng: &mut impl Rng) -> PlHomeo {
    let grid = |rng: &mut dyn rand::RngCore| {
        let mut a = rng.gen_range(2..30i64);
        let mut b = rng.gen_range(2..30i64);
        while a == b {
            b = rng.gen_range(2..30i64);
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        Interval::new(Dyadic::new(a, 5), Dyadic::new(b, 5)).unwrap()
    };
    let src = grid(rng);
    let dst = grid(rng);
    dyadic_interpolate(&src, &dst)
        .extend_to_homeo(&Interval::new(Dyadic::new(1, 5), Dyadic::new(31, 5)).unwrap())
        .unwrap()
        .extend_by_identity(&Interval::unit())
        .unwrap()
}

/// A random element fixing a neighbourhood of every integer: a lambda-image or a
/// special element of a random F' map.
pub fn random_integer_fixing(g: &Grho, rng: &mut impl Rng) -> GElement {
    let f = random_fprime(rng);
    if rng.gen_bool(0.5) {
        g.lambda_hom(&f).unwrap()
    } else {
        let l = rng.gen_range(1..=3usize);
        let occ = g.labelling().occurring_contexts(l).unwrap();
        let w = occ[rng.gen_range(0..occ.len())].0.clone();
        g.special(&w, l, &f).unwrap()
    }
}

/// Generator action read directly off the labelling and the H-maps, without tables.
pub fn generator_oracle(g: &Grho, t: Token, x: &Dyadic) -> Dyadic {
    let rho = g.labelling();
    let nu = &g.nu()[t.index as usize - 1];
    let nu = if t.inverse { nu.inverse() } else { nu.clone() };
    let one = Dyadic::one();
    match t.kind {
        GenKind::Zeta => {
            let n = Dyadic::from(x.floor_i64());
            if rho.letter(HalfPos(2 * x.floor_i64() + 1)).is_positive() {
                &n + &nu.evaluate(&(x - &n)).unwrap()
            } else {
                &n + &one - nu.evaluate(&(&n + &one - x)).unwrap()
            }
        }
        GenKind::Chi => {
            let half = d("1/2");
            let n = (x + &half).floor_i64();
            let lo = Dyadic::from(n) - &half;
            let hi = Dyadic::from(n) + &half;
            if rho.letter(HalfPos(2 * n)).is_positive() {
                &lo + &nu.evaluate(&(x - &lo)).unwrap()
            } else {
                &hi - &nu.evaluate(&(&hi - x)).unwrap()
            }
        }
    }
}

/// Every slope of the map is a power of two, recomputed from its nodes.
pub fn slopes_are_powers_of_two(m: &PlHomeo) -> bool {
    m.nodes().windows(2).all(|w| {
        let s = (w[1].1.to_rational() - w[0].1.to_rational()) / (w[1].0.to_rational() - w[0].0.to_rational());
        if !s.is_positive() {
            return false;
        }
        let (mut n, mut den) = (s.numer().clone(), s.denom().clone());
        let two = num_bigint::BigInt::from(2);
        while (&n % &two).is_zero() {
            n /= &two;
        }
        while (&den % &two).is_zero() {
            den /= &two;
        }
        n.is_one() && den.is_one()
    })
}

/// `flip(f)(x) = 1 - f(1 - x)`, checked on the nodes of both maps.
pub fn is_flip_of(a: &PlHomeo, b: &PlHomeo) -> bool {
    let one = Dyadic::one();
    let check = |p: &PlHomeo, q: &PlHomeo| {
        p.nodes()
            .iter()
            .all(|(x, y)| q.evaluate(&(&one - x)).map(|v| &one - &v == *y).unwrap_or(false))
    };
    check(a, b) && check(b, a)
}

pub fn rational(n: i64, den: i64) -> BigRational {
    BigRational::new(n.into(), den.into())
}
