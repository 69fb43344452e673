//! Binary forms over the exact rationals.
//!
//! A form of degree `n` lives in the space `V_n` of homogeneous degree-`n`
//! polynomials in `x, y`. Coordinates are taken in the binomial-scaled basis,
//! so `v = (v_{-n}, v_{-n+2}, ..., v_n)` stands for
//! `sum_k v_{2k-n} * C(n,k) * x^{n-k} * y^k`; for degree 4 this is
//! `v_{-4} x^4 + v_{-2} 4x^3y + v_0 6x^2y^2 + v_2 4xy^3 + v_4 y^4`.
//!
//! The module provides the Clebsch--Gordan pairings `<u,v>_p` (transvectants),
//! the `sl(2)` generator actions, the substitution action of `GL(2)`, basis
//! conversion, and the discriminant of a binary octic. All values are
//! immutable and all operations are pure functions.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::QMatrix;
use crate::rat::{binom, factorial, rat_from_str, rat_to_f64, rat_to_string, Rat};
use crate::Gl2Error;

/// Coefficient ring for the generic transvectant: the same differential
/// formula acts on plain rationals, on polynomial coefficients, and on
/// differential forms (where `mul` is the wedge product and need not
/// commute; the left factor always comes from the first argument).
pub trait CgCoeff: Clone {
    fn cg_zero_like(&self) -> Self;
    fn cg_add(&self, other: &Self) -> Self;
    fn cg_mul(&self, other: &Self) -> Self;
    fn cg_scale(&self, r: &Rat) -> Self;
    fn cg_is_zero(&self) -> bool;
}

impl CgCoeff for Rat {
    fn cg_zero_like(&self) -> Self {
        Rat::zero()
    }
    fn cg_add(&self, other: &Self) -> Self {
        self + other
    }
    fn cg_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn cg_scale(&self, r: &Rat) -> Self {
        self * r
    }
    fn cg_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// `d/dx` on a monomial coefficient list of homogeneous degree `deg`.
/// Entry `i` of a list is the coefficient of `x^(deg-i) y^i`.
fn deriv_x<T: CgCoeff>(u: &[T], deg: usize) -> Vec<T> {
    (0..deg)
        .map(|i| u[i].cg_scale(&Rat::from_integer(((deg - i) as i64).into())))
        .collect()
}

/// `d/dy` on a monomial coefficient list of homogeneous degree `deg`.
fn deriv_y<T: CgCoeff>(u: &[T], deg: usize) -> Vec<T> {
    (0..deg)
        .map(|i| u[i + 1].cg_scale(&Rat::from_integer(((i + 1) as i64).into())))
        .collect()
}

/// `d^p u / dx^a dy^b` with `a + b = p`, on monomial coefficients.
fn deriv_mixed<T: CgCoeff>(u: &[T], deg: usize, a: usize, b: usize) -> Vec<T> {
    let mut cur = u.to_vec();
    let mut d = deg;
    for _ in 0..b {
        cur = deriv_y(&cur, d);
        d -= 1;
    }
    for _ in 0..a {
        cur = deriv_x(&cur, d);
        d -= 1;
    }
    cur
}

fn poly_mul<T: CgCoeff>(u: &[T], v: &[T], zero: &T) -> Vec<T> {
    let mut out = vec![zero.clone(); u.len() + v.len() - 1];
    for (i, a) in u.iter().enumerate() {
        if a.cg_is_zero() {
            continue;
        }
        for (j, b) in v.iter().enumerate() {
            out[i + j] = out[i + j].cg_add(&a.cg_mul(b));
        }
    }
    out
}

/// The Clebsch--Gordan pairing on monomial coefficient lists:
/// `<u,v>_p = (1/p!) sum_k (-1)^k C(p,k) (d^p u/dx^(p-k)dy^k)(d^p v/dx^k dy^(p-k))`.
///
/// `u` has degree `m`, `v` degree `n`, and the result degree `m + n - 2p`.
pub fn transvectant<T: CgCoeff>(
    u: &[T],
    m: usize,
    v: &[T],
    n: usize,
    p: usize,
) -> Result<Vec<T>, Gl2Error> {
    if u.len() != m + 1 || v.len() != n + 1 {
        return Err(Gl2Error::LengthMismatch {
            expected: m + 1,
            got: u.len(),
        });
    }
    if p > m.min(n) {
        return Err(Gl2Error::PairingOutOfRange { p, m, n });
    }
    let zero = u[0].cg_zero_like();
    let inv_pfact = factorial(p).recip();
    let mut acc = vec![zero.clone(); m + n - 2 * p + 1];
    for k in 0..=p {
        let du = deriv_mixed(u, m, p - k, k);
        let dv = deriv_mixed(v, n, k, p - k);
        let prod = poly_mul(&du, &dv, &zero);
        let mut c = binom(p, k) * &inv_pfact;
        if k % 2 == 1 {
            c = -c;
        }
        for (slot, t) in acc.iter_mut().zip(prod.iter()) {
            *slot = slot.cg_add(&t.cg_scale(&c));
        }
    }
    Ok(acc)
}

/// Generators of `sl(2)`: `X = y d/dx`, `Y = -x d/dy`, `H = x d/dx - y d/dy`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sl2Gen {
    X,
    Y,
    H,
}

/// An invertible 2x2 rational matrix acting on forms by substitution.
#[derive(Clone, Debug, PartialEq)]
pub struct Gl2Element {
    entries: [[Rat; 2]; 2],
}

impl Gl2Element {
    pub fn new(entries: [[Rat; 2]; 2]) -> Result<Self, Gl2Error> {
        let g = Gl2Element { entries };
        if g.det().is_zero() {
            return Err(Gl2Error::Singular);
        }
        Ok(g)
    }

    pub fn identity() -> Self {
        Gl2Element {
            entries: [
                [Rat::one(), Rat::zero()],
                [Rat::zero(), Rat::one()],
            ],
        }
    }

    pub fn diag(a: Rat, d: Rat) -> Result<Self, Gl2Error> {
        Self::new([[a, Rat::zero()], [Rat::zero(), d]])
    }

    pub fn det(&self) -> Rat {
        &self.entries[0][0] * &self.entries[1][1] - &self.entries[0][1] * &self.entries[1][0]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn compose(&self, other: &Gl2Element) -> Gl2Element {
        let mut m = [
            [Rat::zero(), Rat::zero()],
            [Rat::zero(), Rat::zero()],
        ];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = &self.entries[i][0] * &other.entries[0][j]
                    + &self.entries[i][1] * &other.entries[1][j];
            }
        }
        Gl2Element { entries: m }
    }
}

/// An element of `V_n` in binomial-scaled coordinates `v_{-n}, ..., v_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Rat>,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    degree: usize,
    basis: String,
    coeffs: Vec<String>,
}

impl BinaryForm {
    /// Builds a form from its binomial-scaled coordinates.
    pub fn new(degree: usize, coeffs: Vec<Rat>) -> Result<Self, Gl2Error> {
        if coeffs.len() != degree + 1 {
            return Err(Gl2Error::LengthMismatch {
                expected: degree + 1,
                got: coeffs.len(),
            });
        }
        Ok(BinaryForm { degree, coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            degree,
            coeffs: vec![Rat::zero(); degree + 1],
        }
    }

    /// The monomial `x^(n-k) y^k` as an element of `V_n`.
    pub fn monomial(degree: usize, k: usize) -> Self {
        let mut mono = vec![Rat::zero(); degree + 1];
        mono[k] = Rat::one();
        Self::from_monomial(mono)
    }

    /// Builds a form from plain monomial coefficients
    /// (`mono[k]` multiplies `x^(n-k) y^k`).
    pub fn from_monomial(mono: Vec<Rat>) -> Self {
        let degree = mono.len() - 1;
        let coeffs = mono
            .into_iter()
            .enumerate()
            .map(|(k, a)| a / binom(degree, k))
            .collect();
        BinaryForm { degree, coeffs }
    }

    /// Monomial coefficients (`result[k]` multiplies `x^(n-k) y^k`).
    pub fn to_monomial(&self) -> Vec<Rat> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, v)| v * binom(self.degree, k))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Binomial-scaled coordinates, ordered `v_{-n}, ..., v_n`.
    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The coordinate of weight `w` (so `w = 2k - n`).
    pub fn coeff_weight(&self, w: i64) -> &Rat {
        let k = (w + self.degree as i64) / 2;
        &self.coeffs[k as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, other.degree);
        BinaryForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> BinaryForm {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self) -> BinaryForm {
        self.scale(&-Rat::one())
    }

    /// Product of two forms (degree adds).
    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let a = self.to_monomial();
        let b = other.to_monomial();
        BinaryForm::from_monomial(poly_mul(&a, &b, &Rat::zero()))
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mono = self.to_monomial();
        let mut acc = Rat::zero();
        for (k, a) in mono.iter().enumerate() {
            let mut t = a.clone();
            for _ in 0..self.degree - k {
                t *= x;
            }
            for _ in 0..k {
                t *= y;
            }
            acc += t;
        }
        acc
    }

    pub fn to_monomial_f64(&self) -> Vec<f64> {
        self.to_monomial().iter().map(rat_to_f64).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(FormJson {
            degree: self.degree,
            basis: "binomial".to_string(),
            coeffs: self.coeffs.iter().map(rat_to_string).collect(),
        })
        .expect("form serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, Gl2Error> {
        let f: FormJson = serde_json::from_value(v.clone())
            .map_err(|e| Gl2Error::Parse(format!("bad form JSON: {e}")))?;
        if f.basis != "binomial" {
            return Err(Gl2Error::Parse(format!("unknown basis `{}`", f.basis)));
        }
        let coeffs = f
            .coeffs
            .iter()
            .map(|s| rat_from_str(s))
            .collect::<Result<Vec<_>, _>>()?;
        BinaryForm::new(f.degree, coeffs)
    }
}

/// The Clebsch--Gordan pairing `<u,v>_p : V_m x V_n -> V_{m+n-2p}`.
pub fn pair(u: &BinaryForm, v: &BinaryForm, p: usize) -> Result<BinaryForm, Gl2Error> {
    let mono = transvectant(
        &u.to_monomial(),
        u.degree,
        &v.to_monomial(),
        v.degree,
        p,
    )?;
    Ok(BinaryForm::from_monomial(mono))
}

/// Action of an `sl(2)` generator as a differential operator.
pub fn sl2_act(gen: Sl2Gen, u: &BinaryForm) -> BinaryForm {
    let m = u.degree;
    let a = u.to_monomial();
    let mut b = vec![Rat::zero(); m + 1];
    match gen {
        Sl2Gen::X => {
            // y d/dx : x^(m-i) y^i -> (m-i) x^(m-i-1) y^(i+1)
            for i in 0..m {
                b[i + 1] = &a[i] * Rat::from_integer(((m - i) as i64).into());
            }
        }
        Sl2Gen::Y => {
            // -x d/dy : x^(m-i) y^i -> -i x^(m-i+1) y^(i-1)
            for i in 1..=m {
                b[i - 1] = -&a[i] * Rat::from_integer((i as i64).into());
            }
        }
        Sl2Gen::H => {
            for i in 0..=m {
                b[i] = &a[i] * Rat::from_integer((m as i64 - 2 * i as i64).into());
            }
        }
    }
    BinaryForm::from_monomial(b)
}

/// Substitution action `gl2_act(g, v)(x, y) = v((x, y) * g)`, i.e.
/// `x -> g11 x + g21 y`, `y -> g12 x + g22 y` (row-vector right action).
pub fn gl2_act(g: &Gl2Element, u: &BinaryForm) -> BinaryForm {
    let m = u.degree;
    let a = u.to_monomial();
    // Powers of the two substituted linear forms, as monomial lists.
    let lin1 = [g.entry(0, 0).clone(), g.entry(1, 0).clone()];
    let lin2 = [g.entry(0, 1).clone(), g.entry(1, 1).clone()];
    let mut pow1: Vec<Vec<Rat>> = vec![vec![Rat::one()]];
    let mut pow2: Vec<Vec<Rat>> = vec![vec![Rat::one()]];
    for k in 0..m {
        pow1.push(poly_mul(&pow1[k], &lin1, &Rat::zero()));
        pow2.push(poly_mul(&pow2[k], &lin2, &Rat::zero()));
    }
    let mut out = vec![Rat::zero(); m + 1];
    for (k, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = poly_mul(&pow1[m - k], &pow2[k], &Rat::zero());
        for (i, t) in term.iter().enumerate() {
            out[i] += c * t;
        }
    }
    BinaryForm::from_monomial(out)
}

/// Resultant of two homogeneous forms given by monomial coefficient lists,
/// as the Sylvester determinant. Vanishes exactly when the forms share a
/// projective root, including at infinity.
pub fn resultant(p: &[Rat], q: &[Rat]) -> Rat {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut s = QMatrix::zeros(size, size);
    for i in 0..n {
        for (j, c) in p.iter().enumerate() {
            s[(i, i + j)] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in q.iter().enumerate() {
            s[(n + i, i + j)] = c.clone();
        }
    }
    s.det()
}

/// Discriminant of a binary octic, realized as the resultant of its two
/// partial derivatives (a 14x14 Sylvester determinant). Homogeneous of
/// degree 14 in the coefficients; zero exactly on forms with a repeated
/// projective root.
pub fn discriminant(v: &BinaryForm) -> Result<Rat, Gl2Error> {
    if v.degree() != 8 {
        return Err(Gl2Error::DegreeMismatch {
            expected: 8,
            got: v.degree(),
        });
    }
    let mono = v.to_monomial();
    let vx = deriv_x(&mono, 8);
    let vy = deriv_y(&mono, 8);
    Ok(resultant(&vx, &vy))
}

/// Gram matrix of the full pairing `<.,.>_n` on the coordinate basis of `V_n`.
pub fn gram_matrix(n: usize) -> QMatrix {
    QMatrix::from_fn(n + 1, n + 1, |i, j| {
        let ei = BinaryForm::new(n, unit_vec(n + 1, i)).unwrap();
        let ej = BinaryForm::new(n, unit_vec(n + 1, j)).unwrap();
        pair(&ei, &ej, n).unwrap().coeffs()[0].clone()
    })
}

fn unit_vec(len: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); len];
    v[i] = Rat::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rint, rq};
    use num_traits::One;
    use proptest::prelude::*;

    fn x_pow(n: usize) -> BinaryForm {
        BinaryForm::monomial(n, 0)
    }

    fn y_pow(n: usize) -> BinaryForm {
        BinaryForm::monomial(n, n)
    }

    #[test]
    fn pairing_examples() {
        // <x^2, y^2>_2 = 2 by direct evaluation of the defining sum.
        let p = pair(&x_pow(2), &y_pow(2), 2).unwrap();
        assert_eq!(p.degree(), 0);
        assert_eq!(p.coeffs()[0], rint(2));

        // <x^4, y^4>_4 = 24: only the k = 0 term survives, (1/4!) 24 * 24.
        let p = pair(&x_pow(4), &y_pow(4), 4).unwrap();
        assert_eq!(p.coeffs()[0], rint(24));

        // <u, u>_1 = 0 by antisymmetry.
        let u = BinaryForm::new(4, vec![rint(3), rq(1, 2), rint(-2), rint(5), rint(7)]).unwrap();
        assert!(pair(&u, &u, 1).unwrap().is_zero());

        // p out of range
        assert!(matches!(
            pair(&x_pow(2), &y_pow(4), 3),
            Err(Gl2Error::PairingOutOfRange { .. })
        ));
    }

    #[test]
    fn sl2_examples() {
        assert_eq!(sl2_act(Sl2Gen::X, &x_pow(4)).to_monomial()[1], rint(4)); // 4x^3y
        assert!(sl2_act(Sl2Gen::X, &x_pow(4))
            .to_monomial()
            .iter()
            .enumerate()
            .all(|(i, c)| i == 1 || c.is_zero()));
        // H(x^3 y) = 2 x^3 y
        let x3y = BinaryForm::monomial(4, 1);
        assert_eq!(sl2_act(Sl2Gen::H, &x3y), x3y.scale(&rint(2)));
        // Y(y^4) = -4 x y^3
        let got = sl2_act(Sl2Gen::Y, &y_pow(4));
        assert_eq!(got.to_monomial()[3], rint(-4));
    }

    #[test]
    fn gl2_examples() {
        let u = BinaryForm::new(4, vec![rint(1), rint(2), rint(3), rint(4), rint(5)]).unwrap();
        assert_eq!(gl2_act(&Gl2Element::identity(), &u), u);

        // (x, y) -> (2x, y/2) sends x^4 to 16 x^4.
        let g = Gl2Element::diag(rint(2), rq(1, 2)).unwrap();
        assert_eq!(gl2_act(&g, &x_pow(4)), x_pow(4).scale(&rint(16)));

        assert!(Gl2Element::new([
            [rint(1), rint(2)],
            [rint(2), rint(4)]
        ])
        .is_err());
    }

    #[test]
    fn gl2_is_group_action() {
        let g = Gl2Element::new([[rint(2), rint(1)], [rint(-1), rint(3)]]).unwrap();
        let h = Gl2Element::new([[rq(1, 2), rint(0)], [rint(5), rint(1)]]).unwrap();
        let u = BinaryForm::new(4, vec![rint(1), rint(0), rint(-2), rq(3, 4), rint(1)]).unwrap();
        let lhs = gl2_act(&g.compose(&h), &u);
        let rhs = gl2_act(&g, &gl2_act(&h, &u));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn monomial_round_trip() {
        // v_0 = 1 in V_4 is 6 x^2 y^2.
        let mut coeffs = vec![Rat::zero(); 5];
        coeffs[2] = rint(1);
        let v = BinaryForm::new(4, coeffs).unwrap();
        assert_eq!(
            v.to_monomial(),
            vec![rint(0), rint(0), rint(6), rint(0), rint(0)]
        );
        assert!(BinaryForm::zero(6).to_monomial().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn discriminant_basics() {
        assert!(discriminant(&x_pow(8)).unwrap().is_zero());

        // Eight distinct rational linear factors.
        let mut v = BinaryForm::from_monomial(vec![Rat::one()]);
        for r in [0i64, 1, -1, 2, -2, 3, -3, 4] {
            let lin = BinaryForm::from_monomial(vec![rint(1), rint(-r)]);
            v = v.mul(&lin);
        }
        assert_eq!(v.degree(), 8);
        let d = discriminant(&v).unwrap();
        assert!(!d.is_zero());

        // Scaling law disc(t v) = t^14 disc(v).
        let t = rq(3, 2);
        let dt = discriminant(&v.scale(&t)).unwrap();
        let mut t14 = Rat::one();
        for _ in 0..14 {
            t14 *= &t;
        }
        assert_eq!(dt, d * t14);

        assert!(discriminant(&x_pow(4)).is_err());
    }

    /// disc(v) = 0 exactly when some square-free factor repeats,
    /// including at infinity.
    #[test]
    fn discriminant_vanishes_iff_repeated_factor() {
        use crate::roottype::classify_exact;
        use crate::sampling;
        let mut rng = sampling::seeded_rng(sampling::DEFAULT_SEED);
        for _ in 0..8 {
            let v = sampling::random_octic(&mut rng);
            let repeated = classify_exact(&v)
                .unwrap()
                .real_parts()
                .iter()
                .chain(classify_exact(&v).unwrap().pair_parts())
                .any(|&m| m >= 2);
            assert_eq!(
                discriminant(&v).unwrap().is_zero(),
                repeated || v.is_zero(),
                "disagreement on {:?}",
                v.coeffs()
            );
        }
        // a doubled root at infinity: y^2 times a distinct-root sextic
        let y2 = BinaryForm::monomial(2, 2);
        let mut sextic = BinaryForm::from_monomial(vec![Rat::one()]);
        for r in [1i64, 2, 3, 4, 5, 6] {
            sextic = sextic.mul(&BinaryForm::from_monomial(vec![rint(1), rint(-r)]));
        }
        assert!(discriminant(&y2.mul(&sextic)).unwrap().is_zero());
    }

    /// The pairing is SL(2)- but not GL(2)-equivariant; under the scaling
    /// substitution (x, y) -> (c x, c y) the covariance is
    /// pair(g u, g v, p) = c^(2p) g(pair(u, v, p)).
    #[test]
    fn scaling_covariance_per_p() {
        let c = rq(3, 2);
        let g = Gl2Element::diag(c.clone(), c.clone()).unwrap();
        let u = BinaryForm::new(4, vec![rint(1), rint(-2), rq(1, 3), rint(0), rint(5)]).unwrap();
        let v = BinaryForm::new(6, (0..7).map(|i| rint(i as i64 - 3)).collect()).unwrap();
        for p in 0..=4usize {
            let lhs = pair(&gl2_act(&g, &u), &gl2_act(&g, &v), p).unwrap();
            let mut c2p = Rat::one();
            for _ in 0..2 * p {
                c2p *= &c;
            }
            let rhs = gl2_act(&g, &pair(&u, &v, p).unwrap()).scale(&c2p);
            assert_eq!(lhs, rhs, "p = {p}");
        }
    }

    #[test]
    fn gram_nondegenerate_through_degree_ten() {
        for n in 0..=10 {
            let g = gram_matrix(n);
            assert!(!g.det().is_zero(), "Gram matrix singular for V_{n}");
        }
    }

    fn arb_form(degree: usize) -> impl Strategy<Value = BinaryForm> {
        proptest::collection::vec((-20i64..=20, 1i64..=6), degree + 1).prop_map(move |cs| {
            BinaryForm::new(degree, cs.into_iter().map(|(n, d)| rq(n, d)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn pairing_symmetry(u in arb_form(4), v in arb_form(6), p in 0usize..=4) {
            let a = pair(&u, &v, p).unwrap();
            let mut b = pair(&v, &u, p).unwrap();
            if p % 2 == 1 {
                b = b.neg();
            }
            prop_assert_eq!(a, b);
        }

        #[test]
        fn sl2_equivariance(u in arb_form(4), v in arb_form(4), p in 0usize..=4) {
            for gen in [Sl2Gen::X, Sl2Gen::Y, Sl2Gen::H] {
                let lhs = sl2_act(gen, &pair(&u, &v, p).unwrap());
                let rhs = pair(&sl2_act(gen, &u), &v, p).unwrap()
                    .add(&pair(&u, &sl2_act(gen, &v), p).unwrap());
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn monomial_basis_round_trips(u in arb_form(8)) {
            let back = BinaryForm::from_monomial(u.to_monomial());
            prop_assert_eq!(back, u);
        }
    }
}
