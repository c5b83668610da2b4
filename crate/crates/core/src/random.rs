//! Seeded random test data: PBW elements, polynomials and rational functions.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalars::{Scalar, Var};
use crate::uqsu2::{PbwMonomial, UqElement};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_int(rng: &mut impl Rng) -> Scalar {
    let n = loop {
        let n: i64 = rng.gen_range(-4..=4);
        if n != 0 {
            break n;
        }
    };
    Scalar::from_i64(n)
}

/// A coefficient in ℚ(q^{1/2}): a small integer times a power of `q^{1/2}`.
pub fn q_coefficient(rng: &mut impl Rng) -> Scalar {
    &small_int(rng) * &Scalar::q_half_pow(rng.gen_range(-2..=2))
}

/// A nonzero element with up to three PBW terms of `X`-degree at most `max_degree`.
pub fn pbw_element(rng: &mut impl Rng, max_degree: u32) -> UqElement {
    loop {
        let mut u = UqElement::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let plus = rng.gen_range(0..=max_degree);
            let minus = rng.gen_range(0..=max_degree - plus);
            let k = rng.gen_range(-2..=2);
            u.add_term(PbwMonomial::new(plus, k, minus), q_coefficient(rng));
        }
        if !u.is_zero() {
            return u;
        }
    }
}

/// A polynomial in `vars` of total degree at most `degree` with small integer coefficients.
pub fn polynomial(rng: &mut impl Rng, vars: &[Var], degree: u32) -> Scalar {
    let mut acc = Scalar::zero();
    let terms = rng.gen_range(1..=4);
    for _ in 0..terms {
        let mut mono = small_int(rng);
        let mut left = rng.gen_range(0..=degree);
        while left > 0 {
            let v = *vars.choose(rng).expect("at least one variable");
            mono = &mono * &Scalar::var(v);
            left -= 1;
        }
        acc = &acc + &mono;
    }
    acc
}

/// A nonzero polynomial.
pub fn nonzero_polynomial(rng: &mut impl Rng, vars: &[Var], degree: u32) -> Scalar {
    loop {
        let p = polynomial(rng, vars, degree);
        if !p.is_zero() {
            return p;
        }
    }
}

/// `numerator / (v + k)` or a plain polynomial, nonzero.
pub fn rational(rng: &mut impl Rng, vars: &[Var], degree: u32) -> Scalar {
    let num = nonzero_polynomial(rng, vars, degree);
    if rng.gen_bool(0.5) {
        return num;
    }
    let v = *vars.choose(rng).expect("at least one variable");
    let den = &Scalar::var(v) + &Scalar::from_i64(rng.gen_range(1..=3));
    &num / &den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let a: Vec<UqElement> = (0..5).map(|_| pbw_element(&mut rng(7), 3)).collect();
        let b: Vec<UqElement> = (0..5).map(|_| pbw_element(&mut rng(7), 3)).collect();
        assert_eq!(a, b);
        let mut r = rng(1);
        for _ in 0..20 {
            assert!(pbw_element(&mut r, 3).degree() <= 3);
        }
    }
}
