//! Deterministic seeded sampling of forms, group elements, and factored
//! octics for the verification suites.

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::binform::{discriminant, BinaryForm, Gl2Element};
use crate::rat::{rint, Rat};
use crate::roottype::{FactoredOctic, LinearFactor, QuadraticFactor, RootType};

/// Seed used by the verification suites unless overridden.
pub const DEFAULT_SEED: u64 = 0x474c_3253;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A rational with numerator in `[-max_num, max_num]` and denominator in
/// `[1, max_den]`.
pub fn random_rat(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rat {
    let n = rng.gen_range(-max_num..=max_num);
    let d = rng.gen_range(1..=max_den);
    Rat::new(n.into(), d.into())
}

/// A random octic with small rational coefficients.
pub fn random_octic(rng: &mut ChaCha8Rng) -> BinaryForm {
    BinaryForm::new(8, (0..9).map(|_| random_rat(rng, 9, 4)).collect()).unwrap()
}

/// A random octic with eight distinct projective roots (nonzero
/// discriminant), found by resampling.
pub fn random_octic_distinct(rng: &mut ChaCha8Rng) -> BinaryForm {
    loop {
        let v = random_octic(rng);
        if !discriminant(&v).unwrap().is_zero() {
            return v;
        }
    }
}

/// A random octic with a repeated root: `(x - r y)^2` times a random
/// sextic.
pub fn random_octic_repeated(rng: &mut ChaCha8Rng) -> BinaryForm {
    let r = random_rat(rng, 5, 2);
    let lin = BinaryForm::from_monomial(vec![Rat::one(), -r]);
    let sextic = loop {
        let s = BinaryForm::new(6, (0..7).map(|_| random_rat(rng, 9, 4)).collect()).unwrap();
        if !s.is_zero() {
            break s;
        }
    };
    lin.mul(&lin).mul(&sextic)
}

/// A random invertible rational 2x2 matrix with small entries.
pub fn random_gl2(rng: &mut ChaCha8Rng) -> Gl2Element {
    loop {
        let entries = [
            [random_rat(rng, 4, 2), random_rat(rng, 4, 2)],
            [random_rat(rng, 4, 2), random_rat(rng, 4, 2)],
        ];
        if let Ok(g) = Gl2Element::new(entries) {
            return g;
        }
    }
}

/// A random factored representative of a nontrivial root type: distinct
/// random integer roots and distinct irreducible quadratics.
pub fn random_factored(rng: &mut ChaCha8Rng, rt: &RootType) -> Option<FactoredOctic> {
    if rt.is_trivial() {
        return None;
    }
    let mut roots: Vec<i64> = Vec::new();
    while roots.len() < rt.real_parts().len() {
        let r = rng.gen_range(-9..=9i64);
        if !roots.contains(&r) {
            roots.push(r);
        }
    }
    let linear = rt
        .real_parts()
        .iter()
        .zip(&roots)
        .map(|(&m, &r)| LinearFactor {
            g: Rat::one(),
            h: rint(r),
            mult: m,
        })
        .collect();
    let mut quads: Vec<(i64, i64)> = Vec::new();
    while quads.len() < rt.pair_parts().len() {
        let b = rng.gen_range(-3..=3i64);
        let c = rng.gen_range(1..=9i64) + (b * b) / 4;
        if !quads.contains(&(b, c)) {
            quads.push((b, c));
        }
    }
    let quadratic = rt
        .pair_parts()
        .iter()
        .zip(&quads)
        .map(|(&m, &(b, c))| QuadraticFactor {
            b: rint(b),
            c: rint(c),
            mult: m,
        })
        .collect();
    Some(FactoredOctic::new(Rat::one(), linear, quadratic).expect("valid by construction"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roottype::{classify_exact, enumerate_types};

    #[test]
    fn sampling_is_deterministic() {
        let mut a = seeded_rng(7);
        let mut b = seeded_rng(7);
        assert_eq!(random_octic(&mut a), random_octic(&mut b));
    }

    #[test]
    fn distinct_and_repeated_samples() {
        let mut rng = seeded_rng(DEFAULT_SEED);
        for _ in 0..5 {
            let v = random_octic_distinct(&mut rng);
            assert!(!discriminant(&v).unwrap().is_zero());
            let w = random_octic_repeated(&mut rng);
            assert!(discriminant(&w).unwrap().is_zero());
        }
    }

    #[test]
    fn random_factored_classifies_back() {
        let mut rng = seeded_rng(DEFAULT_SEED);
        for t in enumerate_types() {
            if t.is_trivial() {
                continue;
            }
            let f = random_factored(&mut rng, &t).unwrap();
            assert_eq!(classify_exact(&f.expand()).unwrap(), t);
        }
    }
}
