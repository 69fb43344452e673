//! The conformal-symplectic group `CSp(3)` and the Hessian PDE side.
//!
//! Group elements are 6x6 rational matrices in block form `(B C / A D)`
//! acting on the Lagrangian-Grassmannian chart of symmetric 3x3 matrices
//! by `U -> (A + D U)(B + C U)^-1`; the projection to the chart is
//! `g -> A B^-1`. Exponentials of nilpotent algebra elements generate the
//! chart images whose single polynomial relation is the represented PDE:
//! the flat family gives the wave equation, the rational-normal-cone
//! family the first dKP flow. Leading symbols, hyperbolicity (split
//! signature, decided exactly by Descartes counting on the characteristic
//! polynomial), and the rational-normal-cone section of a hyperbolic
//! symbol complete the picture.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::binform::BinaryForm;
use crate::exterior::Poly;
use crate::linalg::QMatrix;
use crate::rat::{rat_to_f64, rat_to_string, rint, rq, sign, Rat};
use crate::sampling;
use crate::Gl2Error;

/// Coordinate names on the chart, in the fixed variable order.
pub const U_NAMES: [&str; 6] = ["U11", "U12", "U13", "U22", "U23", "U33"];

const U13: usize = 2;
const U22: usize = 3;
const U23: usize = 4;
const U33: usize = 5;

pub fn sym_from_entries(e: &[Rat; 6]) -> QMatrix {
    let mut m = QMatrix::zeros(3, 3);
    let idx = [(0, 0, 0), (1, 0, 1), (2, 0, 2), (3, 1, 1), (4, 1, 2), (5, 2, 2)];
    for &(k, i, j) in &idx {
        m[(i, j)] = e[k].clone();
        m[(j, i)] = e[k].clone();
    }
    m
}

pub fn sym_to_entries(m: &QMatrix) -> [Rat; 6] {
    [
        m[(0, 0)].clone(),
        m[(0, 1)].clone(),
        m[(0, 2)].clone(),
        m[(1, 1)].clone(),
        m[(1, 2)].clone(),
        m[(2, 2)].clone(),
    ]
}

/// A validated element of `CSp(3)` in block form `(B C / A D)` with
/// conformal factor `lambda`.
#[derive(Clone, Debug)]
pub struct CSp3Element {
    pub b: QMatrix,
    pub c: QMatrix,
    pub a: QMatrix,
    pub d: QMatrix,
    pub lambda: Rat,
}

impl CSp3Element {
    /// Reassembles the 6x6 matrix.
    pub fn matrix(&self) -> QMatrix {
        QMatrix::from_fn(6, 6, |i, j| match (i < 3, j < 3) {
            (true, true) => self.b[(i, j)].clone(),
            (true, false) => self.c[(i, j - 3)].clone(),
            (false, true) => self.a[(i - 3, j)].clone(),
            (false, false) => self.d[(i - 3, j - 3)].clone(),
        })
    }
}

fn block(m: &QMatrix, row0: usize, col0: usize) -> QMatrix {
    QMatrix::from_fn(3, 3, |i, j| m[(row0 + i, col0 + j)].clone())
}

/// Validates the block relations `A^t B = B^t A`, `D^t C = C^t D`, and
/// `D^t B - C^t A = lambda I` and returns the element with its factor.
pub fn check_conformal_symplectic(m: &QMatrix) -> Result<CSp3Element, Gl2Error> {
    assert_eq!((m.rows, m.cols), (6, 6), "expected a 6x6 matrix");
    let b = block(m, 0, 0);
    let c = block(m, 0, 3);
    let a = block(m, 3, 0);
    let d = block(m, 3, 3);
    let skew1 = a.transpose().mul(&b).sub(&b.transpose().mul(&a));
    if !skew1.is_zero() {
        return Err(Gl2Error::NotConformalSymplectic("A^t B - B^t A != 0".into()));
    }
    let skew2 = d.transpose().mul(&c).sub(&c.transpose().mul(&d));
    if !skew2.is_zero() {
        return Err(Gl2Error::NotConformalSymplectic("D^t C - C^t D != 0".into()));
    }
    let s = d.transpose().mul(&b).sub(&c.transpose().mul(&a));
    let lambda = s[(0, 0)].clone();
    if s != QMatrix::identity(3).scale(&lambda) || lambda.is_zero() {
        return Err(Gl2Error::NotConformalSymplectic(
            "D^t B - C^t A is not a nonzero multiple of the identity".into(),
        ));
    }
    Ok(CSp3Element { b, c, a, d, lambda })
}

/// The chart action `g(U) = (A + D U)(B + C U)^-1`; errors when the
/// chart breaks down (`B + C U` singular).
pub fn act_lagrangian(g: &CSp3Element, u: &QMatrix) -> Result<QMatrix, Gl2Error> {
    assert!(u.is_symmetric(), "chart points are symmetric matrices");
    let denom = g.b.add(&g.c.mul(u));
    let inv = denom.inverse().map_err(|_| Gl2Error::ChartBreakdown)?;
    let out = g.a.add(&g.d.mul(u)).mul(&inv);
    if !out.is_symmetric() {
        return Err(Gl2Error::NotSymmetric);
    }
    Ok(out)
}

/// The bundle projection `g -> g(0) = A B^-1`.
pub fn project(g: &CSp3Element) -> Result<QMatrix, Gl2Error> {
    act_lagrangian(g, &QMatrix::zeros(3, 3))
}

/// Exponential of a nilpotent 6x6 matrix; the series must terminate by
/// the sixth power.
pub fn exp_nilpotent(m: &QMatrix) -> Result<QMatrix, Gl2Error> {
    assert_eq!((m.rows, m.cols), (6, 6));
    let mut sum = QMatrix::identity(6);
    let mut power = QMatrix::identity(6);
    let mut fact = Rat::one();
    for k in 1..=6 {
        power = power.mul(m);
        if power.is_zero() {
            return Ok(sum);
        }
        if k == 6 {
            return Err(Gl2Error::NotNilpotent);
        }
        fact *= rint(k);
        sum = sum.add(&power.scale(&fact.recip()));
    }
    Ok(sum)
}

/// The flat algebra element `(0 0 / alpha 0)` with `alpha` the symmetric
/// Hankel matrix of the five parameters.
pub fn eta_flat(v: &[Rat; 5]) -> QMatrix {
    let mut m = QMatrix::zeros(6, 6);
    for i in 0..3 {
        for j in 0..3 {
            m[(3 + i, j)] = v[i + j].clone();
        }
    }
    m
}

/// The rational-normal-cone algebra element: the flat Hankel block plus
/// the single `-v4` twist entry and its transpose partner.
pub fn eta_dkp(v: &[Rat; 5]) -> QMatrix {
    let mut m = eta_flat(v);
    m[(2, 0)] = -v[4].clone();
    m[(3, 5)] = v[4].clone();
    m
}

/// Which one-parameter family of chart points to reconstruct from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaBuilder {
    Flat,
    Dkp1,
}

impl EtaBuilder {
    pub fn eta(&self, v: &[Rat; 5]) -> QMatrix {
        match self {
            EtaBuilder::Flat => eta_flat(v),
            EtaBuilder::Dkp1 => eta_dkp(v),
        }
    }

    /// The chart point `U(v) = project(exp(eta(v)))`.
    pub fn hessian_point(&self, v: &[Rat; 5]) -> Result<QMatrix, Gl2Error> {
        let g = check_conformal_symplectic(&exp_nilpotent(&self.eta(v))?)?;
        project(&g)
    }
}

/// A polynomial relation in the six chart coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct PdeRelation {
    poly: Poly,
}

impl PdeRelation {
    pub fn from_poly(poly: Poly) -> Self {
        assert_eq!(poly.nvars(), 6);
        PdeRelation { poly }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn eval(&self, u: &QMatrix) -> Rat {
        self.poly.eval(&sym_to_entries(u))
    }

    /// Gradient with respect to the six chart coordinates.
    pub fn gradient(&self, u: &QMatrix) -> [Rat; 6] {
        let vals = sym_to_entries(u);
        std::array::from_fn(|i| self.poly.partial(i).eval(&vals))
    }

    /// Scales so that the `U22` coefficient is one when present (the
    /// evolution-form convention the representative equations are
    /// displayed in); otherwise normalizes the trailing coefficient.
    pub fn normalize(&self) -> PdeRelation {
        let mut exp = vec![0i32; 6];
        exp[U22] = 1;
        let u22_coeff = self
            .poly
            .terms()
            .find(|(e, _)| **e == exp)
            .map(|(_, c)| c.clone());
        let scale = match u22_coeff {
            Some(c) if !c.is_zero() => c,
            _ => self
                .poly
                .terms()
                .last()
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rat::one),
        };
        PdeRelation {
            poly: self.poly.scale(&scale.recip()),
        }
    }

    /// True when the two relations agree up to a nonzero scale.
    pub fn proportional_to(&self, other: &PdeRelation) -> bool {
        self.normalize().poly == other.normalize().poly
    }

    /// Canonical text: terms ordered by total degree, then position.
    pub fn render(&self) -> String {
        use num_traits::Signed;
        let mut terms: Vec<(&Vec<i32>, &Rat)> = self.poly.terms().collect();
        if terms.is_empty() {
            return "0 = 0".to_string();
        }
        terms.sort_by_key(|(e, _)| (e.iter().sum::<i32>(), (*e).clone()));
        let mut out = String::new();
        for (idx, (e, c)) in terms.iter().enumerate() {
            let mut mono = String::new();
            for (i, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                if p == 1 {
                    mono.push_str(U_NAMES[i]);
                } else {
                    mono.push_str(&format!("{}^{}", U_NAMES[i], p));
                }
            }
            let lead = if idx == 0 {
                if c.is_negative() { "-" } else { "" }
            } else if c.is_negative() {
                " - "
            } else {
                " + "
            };
            out.push_str(lead);
            let a = c.abs();
            if mono.is_empty() {
                out.push_str(&rat_to_string(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", rat_to_string(&a), mono));
            }
        }
        format!("{out} = 0")
    }
}

/// The wave relation `U22 - U13`.
pub fn wave_relation() -> PdeRelation {
    PdeRelation::from_poly(Poly::var(6, U22).sub(&Poly::var(6, U13)))
}

/// The first dKP flow relation `U22 - U13 + 1/2 U33^2`.
pub fn dkp_relation() -> PdeRelation {
    let u33sq = Poly::var(6, U33).mul(&Poly::var(6, U33));
    PdeRelation::from_poly(
        Poly::var(6, U22)
            .sub(&Poly::var(6, U13))
            .add(&u33sq.scale(&rq(1, 2))),
    )
}

fn monomials_up_to(deg: i32) -> Vec<Vec<i32>> {
    fn go(slot: usize, left: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if slot == 6 {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[slot] = e;
            go(slot + 1, left - e, cur, out);
        }
        cur[slot] = 0;
    }
    let mut out = Vec::new();
    go(0, deg, &mut vec![0; 6], &mut out);
    out.sort();
    out.dedup();
    out
}

fn random_params(rng: &mut rand_chacha::ChaCha8Rng) -> [Rat; 5] {
    std::array::from_fn(|_| sampling::random_rat(rng, 12, 3))
}

/// Recovers the lowest-degree polynomial relation satisfied by a chart
/// family: samples the parameters on a seeded rational grid sized to
/// twice the monomial count, solves the exact vanishing system, and
/// demands a one-dimensional solution space at the minimal degree.
pub fn reconstruct_relation(
    builder: EtaBuilder,
    max_degree: usize,
    seed: u64,
) -> Result<PdeRelation, Gl2Error> {
    let monomials = monomials_up_to(max_degree as i32);
    let mut rng = sampling::seeded_rng(seed);
    let samples: Vec<[Rat; 6]> = (0..2 * monomials.len())
        .map(|_| {
            let u = builder.hessian_point(&random_params(&mut rng))?;
            Ok(sym_to_entries(&u))
        })
        .collect::<Result<_, Gl2Error>>()?;

    let eval_mono = |e: &[i32], u: &[Rat; 6]| -> Rat {
        let mut t = Rat::one();
        for (i, &p) in e.iter().enumerate() {
            for _ in 0..p {
                t *= &u[i];
            }
        }
        t
    };

    for d in 1..=max_degree {
        let monos: Vec<&Vec<i32>> = monomials
            .iter()
            .filter(|e| e.iter().sum::<i32>() <= d as i32)
            .collect();
        let mat = QMatrix::from_fn(samples.len(), monos.len(), |s, m| {
            eval_mono(monos[m], &samples[s])
        });
        let kernel = mat.null_space();
        match kernel.len() {
            0 => continue,
            1 => {
                let mut poly = Poly::zero(6);
                for (m, coeff) in monos.iter().zip(&kernel[0]) {
                    if !coeff.is_zero() {
                        let mut term = Poly::constant(6, coeff.clone());
                        for (i, &p) in m.iter().enumerate() {
                            if p != 0 {
                                term = term.mul(&Poly::var_pow(6, i, p));
                            }
                        }
                        poly = poly.add(&term);
                    }
                }
                return Ok(PdeRelation::from_poly(poly).normalize());
            }
            n => return Err(Gl2Error::RelationAmbiguous(n)),
        }
    }
    Err(Gl2Error::RelationNotFound)
}

/// Exact vanishing of a relation on `count` fresh out-of-sample points.
pub fn vanishes_on_fresh_samples(
    rel: &PdeRelation,
    builder: EtaBuilder,
    count: usize,
    seed: u64,
) -> Result<bool, Gl2Error> {
    let mut rng = sampling::seeded_rng(seed ^ 0x5eed_0f5a);
    for _ in 0..count {
        let u = builder.hessian_point(&random_params(&mut rng))?;
        if !rel.eval(&u).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Leading symbol from a gradient, in the quadric convention: diagonal
/// entries are the matching partials, off-diagonal entries carry 1/2.
pub fn pde_symbol(gradient: &[Rat; 6]) -> QMatrix {
    let h = rq(1, 2);
    let mut m = QMatrix::zeros(3, 3);
    m[(0, 0)] = gradient[0].clone();
    m[(1, 1)] = gradient[U22].clone();
    m[(2, 2)] = gradient[U33].clone();
    let off = [(0, 1, 1), (0, 2, U13), (1, 2, U23)];
    for &(i, j, k) in &off {
        m[(i, j)] = &gradient[k] * &h;
        m[(j, i)] = m[(i, j)].clone();
    }
    m
}

/// Exact hyperbolicity: nonsingular with split signature `(2,1)` or
/// `(1,2)`. Sign counts come from Descartes' rule applied to the
/// characteristic polynomial, which is exact here because symmetric
/// matrices have only real eigenvalues.
pub fn is_hyperbolic(m: &QMatrix) -> bool {
    assert!(m.is_symmetric());
    let det = m.det();
    if det.is_zero() {
        return false;
    }
    let tr = &m[(0, 0)] + &m[(1, 1)] + &m[(2, 2)];
    let m2 = &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(0, 1)]
        + &m[(0, 0)] * &m[(2, 2)]
        - &m[(0, 2)] * &m[(0, 2)]
        + &m[(1, 1)] * &m[(2, 2)]
        - &m[(1, 2)] * &m[(1, 2)];
    // char poly: lambda^3 + c2 lambda^2 + c1 lambda + c0
    let signs = [1, sign(&-tr), sign(&m2), sign(&-det)];
    let mut positives = 0;
    let mut last = 0;
    for s in signs {
        if s != 0 {
            if last != 0 && s != last {
                positives += 1;
            }
            last = s;
        }
    }
    positives == 1 || positives == 2
}

/// Float variant with a stated tolerance on eigenvalue magnitudes.
pub fn is_hyperbolic_f64(m: &[[f64; 3]; 3], tol: f64) -> bool {
    let mat = nalgebra::Matrix3::from_fn(|i, j| m[i][j]);
    let eig = mat.symmetric_eigenvalues();
    let scale = eig.iter().fold(0.0f64, |a, &e| a.max(e.abs()));
    if scale == 0.0 {
        return false;
    }
    let mut pos = 0;
    for &e in eig.iter() {
        if e.abs() <= tol * scale {
            return false;
        }
        if e > 0.0 {
            pos += 1;
        }
    }
    pos == 1 || pos == 2
}

/// The rational normal cone cut out of the Veronese cone by a hyperbolic
/// symbol: `q(s,t) = sum_a col_a sqrt(radicand_a) w_a(s,t)` with
/// `w = (s^2 - t^2, 2st, s^2 + t^2)`. Columns and radicands are exact;
/// the square roots stay symbolic.
#[derive(Clone, Debug)]
pub struct ConeCurve {
    pub cols: [[Rat; 3]; 3],
    pub radicands: [Rat; 3],
    /// +1 when the symbol has signature (2,1); -1 for (1,2).
    pub sign: i32,
}

impl ConeCurve {
    /// Exact certificate that `tr(A q q^t) = 0` identically in `(s,t)`:
    /// the columns are A-orthogonal and the scaled diagonal values are
    /// `sign * (+1, +1, -1)`, so the trace collapses to
    /// `sign (w1^2 + w2^2 - w3^2) = 0`.
    pub fn isotropy_certificate(&self, a: &QMatrix) -> bool {
        let col = |k: usize| QMatrix::from_fn(3, 1, |i, _| self.cols[k][i].clone());
        for i in 0..3 {
            for j in 0..3 {
                let v = col(i).transpose().mul(a).mul(&col(j))[(0, 0)].clone();
                let expect = if i != j {
                    Rat::zero()
                } else {
                    let unit = rint(if i == 2 { -self.sign } else { self.sign } as i64);
                    unit / &self.radicands[i]
                };
                if v != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Float curve point.
    pub fn eval_f64(&self, s: f64, t: f64) -> [f64; 3] {
        let w = [s * s - t * t, 2.0 * s * t, s * s + t * t];
        let mut out = [0.0; 3];
        for a in 0..3 {
            let r = rat_to_f64(&self.radicands[a]).sqrt();
            for i in 0..3 {
                out[i] += rat_to_f64(&self.cols[a][i]) * r * w[a];
            }
        }
        out
    }

    /// Coefficients in `(s^4, s^3 t, s^2 t^2, s t^3, t^4)` of the six
    /// quartic entry-forms of `q q^t`, in float for rank checks.
    pub fn entry_quartics_f64(&self) -> [[f64; 5]; 6] {
        // each w_a as a quadratic in (s^2, st, t^2)
        let w = [[1.0, 0.0, -1.0], [0.0, 2.0, 0.0], [1.0, 0.0, 1.0]];
        let mut q = [[0.0f64; 3]; 3];
        for a in 0..3 {
            let r = rat_to_f64(&self.radicands[a]).sqrt();
            for i in 0..3 {
                for c in 0..3 {
                    q[i][c] += rat_to_f64(&self.cols[a][i]) * r * w[a][c];
                }
            }
        }
        let pairs = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
        let mut out = [[0.0f64; 5]; 6];
        for (slot, &(i, j)) in pairs.iter().enumerate() {
            for a in 0..3 {
                for b in 0..3 {
                    out[slot][a + b] += q[i][a] * q[j][b];
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "basis": ["s^2-t^2", "2st", "s^2+t^2"],
            "columns": self
                .cols
                .iter()
                .map(|c| c.iter().map(rat_to_string).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "radicands": self.radicands.iter().map(rat_to_string).collect::<Vec<_>>(),
            "sign": self.sign,
        })
    }
}

/// Congruence-diagonalizes a hyperbolic symbol and returns the isotropic
/// curve of its Veronese-cone section.
pub fn cone_from_symbol(a: &QMatrix) -> Result<ConeCurve, Gl2Error> {
    if !is_hyperbolic(a) {
        return Err(Gl2Error::NotHyperbolic);
    }
    let mut m = a.clone();
    let mut l = QMatrix::identity(3);
    // symmetric Gaussian congruence: L^t A L = diag
    for i in 0..3 {
        if m[(i, i)].is_zero() {
            if let Some(j) = (i + 1..3).find(|&j| !m[(j, j)].is_zero()) {
                let mut p = QMatrix::identity(3);
                p[(i, i)] = Rat::zero();
                p[(j, j)] = Rat::zero();
                p[(i, j)] = Rat::one();
                p[(j, i)] = Rat::one();
                m = p.transpose().mul(&m).mul(&p);
                l = l.mul(&p);
            } else if let Some(j) = (i + 1..3).find(|&j| !m[(i, j)].is_zero()) {
                // col_i += col_j turns the pivot into 2 m_ij
                let mut e = QMatrix::identity(3);
                e[(j, i)] = Rat::one();
                m = e.transpose().mul(&m).mul(&e);
                l = l.mul(&e);
            } else {
                return Err(Gl2Error::NotHyperbolic);
            }
        }
        for j in i + 1..3 {
            if m[(i, j)].is_zero() {
                continue;
            }
            let f = -(&m[(i, j)] / &m[(i, i)]);
            let mut e = QMatrix::identity(3);
            e[(i, j)] = f;
            m = e.transpose().mul(&m).mul(&e);
            l = l.mul(&e);
        }
    }
    let d: Vec<Rat> = (0..3).map(|i| m[(i, i)].clone()).collect();
    let positives = d.iter().filter(|x| x.is_positive()).count();
    let curve_sign: i32 = if positives == 2 { 1 } else { -1 };
    // order the columns so the effective signs run (+, +, -)
    let mut same: Vec<usize> = Vec::new();
    let mut opposite: Vec<usize> = Vec::new();
    for (i, di) in d.iter().enumerate() {
        if sign(di) == curve_sign {
            same.push(i);
        } else {
            opposite.push(i);
        }
    }
    let order = [same[0], same[1], opposite[0]];
    let mut cols: [[Rat; 3]; 3] = Default::default();
    let mut radicands: [Rat; 3] = [Rat::one(), Rat::one(), Rat::one()];
    for (slot, &src) in order.iter().enumerate() {
        for i in 0..3 {
            cols[slot][i] = l[(i, src)].clone();
        }
        radicands[slot] = d[src].abs().recip();
    }
    Ok(ConeCurve {
        cols,
        radicands,
        sign: curve_sign,
    })
}

/// Pointwise type of the induced planar hyperbolic PDE, decided by
/// whether `x = 0` or `y = 0` is a root of the octic (vanishing of the
/// extreme coefficients).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanarType {
    MongeAmpere,
    Goursat,
    Generic,
}

impl std::fmt::Display for PlanarType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PlanarType::MongeAmpere => "MongeAmpere",
            PlanarType::Goursat => "Goursat",
            PlanarType::Generic => "Generic",
        };
        write!(f, "{s}")
    }
}

pub fn classify_planar_type(v: &BinaryForm) -> Result<PlanarType, Gl2Error> {
    if v.degree() != 8 {
        return Err(Gl2Error::DegreeMismatch {
            expected: 8,
            got: v.degree(),
        });
    }
    let lo = v.coeff_weight(-8).is_zero();
    let hi = v.coeff_weight(8).is_zero();
    Ok(match (lo, hi) {
        (true, true) => PlanarType::MongeAmpere,
        (false, false) => PlanarType::Generic,
        _ => PlanarType::Goursat,
    })
}

// ---- the named representative PDEs ----

/// The five representative equations, keyed by the root type they
/// realize. Each has the evolution form `U22 = U13 + G(U23, U33)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedPde {
    Wave,
    Dkp1,
    Type71,
    Type62,
    Type611,
}

impl NamedPde {
    pub const ALL: [NamedPde; 5] = [
        NamedPde::Wave,
        NamedPde::Dkp1,
        NamedPde::Type71,
        NamedPde::Type62,
        NamedPde::Type611,
    ];

    pub fn from_key(key: &str) -> Result<Self, Gl2Error> {
        match key {
            "wave" | "{0}" => Ok(NamedPde::Wave),
            "dkp1" | "{8}" => Ok(NamedPde::Dkp1),
            "71" | "{7,1}" => Ok(NamedPde::Type71),
            "62" | "{6,2}" => Ok(NamedPde::Type62),
            "611" | "{6,1,1}" => Ok(NamedPde::Type611),
            other => Err(Gl2Error::Parse(format!("unknown PDE name `{other}`"))),
        }
    }

    pub fn key(&self) -> &'static str {
        match self {
            NamedPde::Wave => "wave",
            NamedPde::Dkp1 => "dkp1",
            NamedPde::Type71 => "71",
            NamedPde::Type62 => "62",
            NamedPde::Type611 => "611",
        }
    }

    pub fn root_type_label(&self) -> &'static str {
        match self {
            NamedPde::Wave => "{0}",
            NamedPde::Dkp1 => "{8}",
            NamedPde::Type71 => "{7,1}",
            NamedPde::Type62 => "{6,2}",
            NamedPde::Type611 => "{6,1,1}",
        }
    }

    pub fn display_equation(&self) -> &'static str {
        match self {
            NamedPde::Wave => "u22 = u13",
            NamedPde::Dkp1 => "u22 = u13 - 1/2 u33^2",
            NamedPde::Type71 => "u22 = u13 - 1/48 u33 + 1/2 u33 u23",
            NamedPde::Type62 => "u22 = u13 + 7 u23 / (5 u33 - 14)",
            NamedPde::Type611 => {
                "u22 = u13 + 7 u23 (u23 - u33)/(5 u33 - 14) \
                 + 49 (-u33^2 + 14 u33 - 28)/(12 (5 u33 - 14)) \
                 - 49/6 (-(5 u33 - 14)/14)^(2/5)"
            }
        }
    }

    /// `G(U23, U33)` so that `F = U22 - U13 - G`. The last type's branch
    /// point requires `-(5 U33 - 14)/14` to be a rational fifth power,
    /// which the on-locus sampler guarantees.
    fn g_value(&self, u23: &Rat, u33: &Rat) -> Result<Rat, Gl2Error> {
        match self {
            NamedPde::Wave => Ok(Rat::zero()),
            NamedPde::Dkp1 => Ok(-(u33 * u33) / rint(2)),
            NamedPde::Type71 => Ok(-u33 / rint(48) + u33 * u23 / rint(2)),
            NamedPde::Type62 => {
                let q = rint(5) * u33 - rint(14);
                if q.is_zero() {
                    return Err(Gl2Error::Pole);
                }
                Ok(rint(7) * u23 / q)
            }
            NamedPde::Type611 => {
                let q = rint(5) * u33 - rint(14);
                if q.is_zero() {
                    return Err(Gl2Error::Pole);
                }
                let z = -&q / rint(14);
                let r = rat_fifth_root(&z).ok_or_else(|| {
                    Gl2Error::Invalid(
                        "branch value -(5 u33 - 14)/14 is not a rational fifth power".into(),
                    )
                })?;
                let t1 = rint(7) * u23 * (u23 - u33) / &q;
                let t2 =
                    rint(49) * (-(u33 * u33) + rint(14) * u33 - rint(28)) / (rint(12) * &q);
                let t3 = -rq(49, 6) * &r * &r;
                Ok(t1 + t2 + t3)
            }
        }
    }

    fn g_gradient(&self, u23: &Rat, u33: &Rat) -> Result<(Rat, Rat), Gl2Error> {
        match self {
            NamedPde::Wave => Ok((Rat::zero(), Rat::zero())),
            NamedPde::Dkp1 => Ok((Rat::zero(), -u33.clone())),
            NamedPde::Type71 => Ok((u33 / rint(2), -rq(1, 48) + u23 / rint(2))),
            NamedPde::Type62 => {
                let q = rint(5) * u33 - rint(14);
                if q.is_zero() {
                    return Err(Gl2Error::Pole);
                }
                Ok((rint(7) / &q, rint(-35) * u23 / (&q * &q)))
            }
            NamedPde::Type611 => {
                let q = rint(5) * u33 - rint(14);
                if q.is_zero() {
                    return Err(Gl2Error::Pole);
                }
                let z = -&q / rint(14);
                let r = rat_fifth_root(&z).ok_or_else(|| {
                    Gl2Error::Invalid(
                        "branch value -(5 u33 - 14)/14 is not a rational fifth power".into(),
                    )
                })?;
                if r.is_zero() {
                    return Err(Gl2Error::Pole);
                }
                let d23 = rint(7) * (rint(2) * u23 - u33) / &q;
                let qq = &q * &q;
                let part1 = rint(-7) * u23 / &q - rint(35) * u23 * (u23 - u33) / &qq;
                let part2 = rq(49, 12)
                    * ((rint(-2) * u33 + rint(14)) * &q
                        - rint(5) * (-(u33 * u33) + rint(14) * u33 - rint(28)))
                    / &qq;
                // d/du33 of -(49/6) z^(2/5) with z = -(5 u33 - 14)/14
                let part3 = rq(7, 6) / (&r * &r * &r);
                Ok((d23, part1 + part2 + part3))
            }
        }
    }

    /// Deterministic on-locus sample; points stay away from poles and on
    /// the rational branch.
    pub fn sample_point(&self, idx: usize) -> Result<[Rat; 6], Gl2Error> {
        let i = idx as i64;
        let u11 = rq(i - 2, 2);
        let u12 = rq(2 * i + 1, 3);
        let u13 = rq(i * i - 3, 4);
        let u23 = rq(i + 1, 2);
        let u33 = match self {
            NamedPde::Type62 => rint(3 + i), // 5 u33 - 14 = 1 + 5 i > 0
            NamedPde::Type611 => {
                // u33 = 14 (1 - t^5)/5 keeps the branch value a rational
                // fifth power
                let t = rq(i + 1, 2);
                let t5 = &t * &t * &t * &t * &t;
                rq(14, 5) * (Rat::one() - t5)
            }
            _ => rq(i - 1, 2),
        };
        let u22 = &u13 + self.g_value(&u23, &u33)?;
        Ok([u11, u12, u13, u22, u23, u33])
    }

    /// Value of `F = U22 - U13 - G` at a chart point.
    pub fn value(&self, u: &[Rat; 6]) -> Result<Rat, Gl2Error> {
        Ok(&u[U22] - &u[U13] - self.g_value(&u[U23], &u[U33])?)
    }

    /// Exact gradient of `F` at a chart point.
    pub fn gradient(&self, u: &[Rat; 6]) -> Result<[Rat; 6], Gl2Error> {
        let (g23, g33) = self.g_gradient(&u[U23], &u[U33])?;
        Ok([
            Rat::zero(),
            Rat::zero(),
            -Rat::one(),
            Rat::one(),
            -g23,
            -g33,
        ])
    }

    /// Leading symbol at a chart point.
    pub fn symbol_at(&self, u: &[Rat; 6]) -> Result<QMatrix, Gl2Error> {
        Ok(pde_symbol(&self.gradient(u)?))
    }
}

/// Exact rational fifth root, when one exists.
fn rat_fifth_root(z: &Rat) -> Option<Rat> {
    let num = int_fifth_root(z.numer())?;
    let den = int_fifth_root(z.denom())?;
    Some(Rat::new(num, den))
}

fn int_fifth_root(n: &BigInt) -> Option<BigInt> {
    if n.is_zero() {
        return Some(BigInt::zero());
    }
    let negative = n.is_negative();
    let target = n.abs();
    let mut lo = BigInt::zero();
    let mut hi = &target + BigInt::one();
    while lo < hi {
        let mid: BigInt = (&lo + &hi) / 2;
        match mid.pow(5).cmp(&target) {
            std::cmp::Ordering::Equal => {
                return Some(if negative { -mid } else { mid });
            }
            std::cmp::Ordering::Less => lo = mid + BigInt::one(),
            std::cmp::Ordering::Greater => hi = mid,
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hankel_params() -> [Rat; 5] {
        [rint(2), rq(1, 2), rint(-1), rint(3), rq(5, 3)]
    }

    #[test]
    fn identity_is_conformal_symplectic() {
        let g = check_conformal_symplectic(&QMatrix::identity(6)).unwrap();
        assert_eq!(g.lambda, rint(1));
    }

    #[test]
    fn random_matrix_is_rejected() {
        let mut m = QMatrix::identity(6);
        m[(3, 1)] = rint(2); // asymmetric A block breaks A^t B = B^t A
        assert!(check_conformal_symplectic(&m).is_err());
    }

    #[test]
    fn exp_of_flat_eta() {
        let eta = eta_flat(&hankel_params());
        // strictly lower block: the square vanishes, exp = I + eta
        let e = exp_nilpotent(&eta).unwrap();
        assert_eq!(e, QMatrix::identity(6).add(&eta));
        let g = check_conformal_symplectic(&e).unwrap();
        assert_eq!(g.lambda, rint(1));
        // the projection recovers the Hankel matrix itself
        let u = project(&g).unwrap();
        let v = hankel_params();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(u[(i, j)], v[i + j]);
            }
        }
        // Hankel pattern spot checks
        assert_eq!(eta[(3, 1)], v[1]);
        assert_eq!(eta[(3, 2)], v[2]);
        assert_eq!(eta[(4, 1)], v[2]);
    }

    #[test]
    fn exp_rejects_non_nilpotent() {
        assert!(exp_nilpotent(&QMatrix::identity(6)).is_err());
    }

    #[test]
    fn exp_of_dkp_eta_matches_displayed_matrix() {
        let v = hankel_params();
        assert_eq!(eta_dkp(&v)[(2, 0)], -v[4].clone());
        let e = exp_nilpotent(&eta_dkp(&v)).unwrap();
        let (vm4, vm2, v0, v2, v4) =
            (v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone());
        let half = rq(1, 2);
        let sixth = rq(1, 6);
        let expect = QMatrix::from_rows(vec![
            vec![rint(1), rint(0), rint(0), rint(0), rint(0), rint(0)],
            vec![rint(0), rint(1), rint(0), rint(0), rint(0), rint(0)],
            vec![-v4.clone(), rint(0), rint(1), rint(0), rint(0), rint(0)],
            vec![
                &vm4 - &sixth * &v4 * &v4 * &v4,
                &vm2 + &half * &v4 * &v2,
                &v0 + &half * &v4 * &v4,
                rint(1),
                rint(0),
                v4.clone(),
            ],
            vec![
                &vm2 - &half * &v4 * &v2,
                v0.clone(),
                v2.clone(),
                rint(0),
                rint(1),
                rint(0),
            ],
            vec![
                &v0 - &half * &v4 * &v4,
                v2.clone(),
                v4.clone(),
                rint(0),
                rint(0),
                rint(1),
            ],
        ]);
        assert_eq!(e, expect);
        assert_eq!(check_conformal_symplectic(&e).unwrap().lambda, rint(1));
    }

    #[test]
    fn dkp_projection_entries() {
        let v = hankel_params();
        let g = check_conformal_symplectic(&exp_nilpotent(&eta_dkp(&v)).unwrap()).unwrap();
        let u = project(&g).unwrap();
        // U11 = v-4 - 1/6 v4^3 + (v0 + 1/2 v4^2) v4
        let expect = &v[0] - rq(1, 6) * &v[4] * &v[4] * &v[4]
            + (&v[2] + rq(1, 2) * &v[4] * &v[4]) * &v[4];
        assert_eq!(u[(0, 0)], expect);
        assert_eq!(u[(1, 1)], v[2]);
        assert_eq!(u[(2, 2)], v[4]);
        // definitional consistency: project(g) = act(g, 0)
        assert_eq!(u, act_lagrangian(&g, &QMatrix::zeros(3, 3)).unwrap());
    }

    #[test]
    fn fiber_with_zero_a_fixes_origin() {
        // unipotent with symmetric gamma block and A = 0
        let mut m = QMatrix::identity(6);
        m[(0, 3)] = rint(2);
        m[(1, 4)] = rint(5);
        m[(0, 4)] = rint(1);
        m[(1, 3)] = rint(1);
        let g = check_conformal_symplectic(&m).unwrap();
        assert!(project(&g).unwrap().is_zero());
    }

    #[test]
    fn action_is_a_group_action() {
        let v1 = hankel_params();
        let v2 = [rint(1), rint(0), rq(2, 3), rint(-2), rint(1)];
        let g = check_conformal_symplectic(&exp_nilpotent(&eta_dkp(&v1)).unwrap()).unwrap();
        let h = check_conformal_symplectic(&exp_nilpotent(&eta_dkp(&v2)).unwrap()).unwrap();
        let gh = check_conformal_symplectic(&g.matrix().mul(&h.matrix())).unwrap();
        assert_eq!(gh.lambda, &g.lambda * &h.lambda);
        let u = sym_from_entries(&[rint(1), rint(0), rint(2), rint(-1), rint(1), rint(3)]);
        let lhs = act_lagrangian(&gh, &u).unwrap();
        let rhs = act_lagrangian(&g, &act_lagrangian(&h, &u).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn reconstruct_wave_and_dkp() {
        let wave = reconstruct_relation(EtaBuilder::Flat, 1, sampling::DEFAULT_SEED).unwrap();
        assert!(wave.proportional_to(&wave_relation()), "{}", wave.render());

        let dkp = reconstruct_relation(EtaBuilder::Dkp1, 2, sampling::DEFAULT_SEED).unwrap();
        assert!(dkp.proportional_to(&dkp_relation()), "{}", dkp.render());

        // the dkp family satisfies no affine relation
        assert!(matches!(
            reconstruct_relation(EtaBuilder::Dkp1, 1, sampling::DEFAULT_SEED),
            Err(Gl2Error::RelationNotFound)
        ));

        // exact out-of-sample vanishing
        assert!(vanishes_on_fresh_samples(&wave, EtaBuilder::Flat, 100, 1).unwrap());
        assert!(vanishes_on_fresh_samples(&dkp, EtaBuilder::Dkp1, 100, 1).unwrap());
    }

    #[test]
    fn wave_symbol_is_hyperbolic() {
        let u = [rint(0), rint(0), rint(0), rint(0), rint(0), rint(0)];
        let sym = NamedPde::Wave.symbol_at(&u).unwrap();
        assert_eq!(sym[(1, 1)], rint(1));
        assert_eq!(sym[(0, 2)], rq(-1, 2));
        assert!(is_hyperbolic(&sym));
        // Laplace control: the identity is definite, not hyperbolic
        assert!(!is_hyperbolic(&QMatrix::identity(3)));
        assert!(!is_hyperbolic(&QMatrix::zeros(3, 3)));
        // dKP at the origin has the wave symbol
        let dkp_sym = NamedPde::Dkp1.symbol_at(&u).unwrap();
        assert_eq!(dkp_sym, sym);
    }

    #[test]
    fn named_pdes_hyperbolic_on_locus() {
        for pde in NamedPde::ALL {
            for idx in 0..10 {
                let u = pde.sample_point(idx).unwrap();
                assert!(
                    pde.value(&u).unwrap().is_zero(),
                    "{:?} point {idx} is on the locus",
                    pde
                );
                let sym = pde.symbol_at(&u).unwrap();
                assert!(is_hyperbolic(&sym), "{:?} at point {idx}", pde);
                // in this evolution frame the symbol determinant is -1/4
                assert_eq!(sym.det(), rq(-1, 4));
            }
        }
    }

    #[test]
    fn is_hyperbolic_f64_agrees() {
        let m = [[0.0, 0.0, -0.5], [0.0, 1.0, 0.0], [-0.5, 0.0, 0.0]];
        assert!(is_hyperbolic_f64(&m, 1e-12));
        let id = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        assert!(!is_hyperbolic_f64(&id, 1e-12));
        let sing = [[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 0.0]];
        assert!(!is_hyperbolic_f64(&sing, 1e-12));
    }

    #[test]
    fn cone_of_wave_symbol() {
        let u = [rint(0), rint(0), rint(0), rint(0), rint(0), rint(0)];
        let sym = NamedPde::Wave.symbol_at(&u).unwrap();
        let cone = cone_from_symbol(&sym).unwrap();
        assert!(cone.isotropy_certificate(&sym));
        // image points satisfy the quadric Z2^2 = Z1 Z3 cut out by the
        // wave symbol (tr(A qq^t) with A = diag-free frame)
        for (s, t) in [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, -3.0)] {
            let p = cone.eval_f64(s, t);
            let quad = p[1] * p[1] - p[0] * p[2];
            let scale: f64 = p.iter().map(|x| x * x).sum::<f64>().max(1.0);
            assert!(quad.abs() <= 1e-9 * scale, "({s},{t}): {quad}");
        }
        // the six quartic entry-forms span a 5-dimensional space
        assert_eq!(quartic_rank(&cone.entry_quartics_f64()), 5);
    }

    #[test]
    fn cone_of_random_hyperbolic_symbols() {
        let mut rng = sampling::seeded_rng(sampling::DEFAULT_SEED);
        let mut tested = 0;
        while tested < 10 {
            let e: [Rat; 6] = std::array::from_fn(|_| sampling::random_rat(&mut rng, 6, 3));
            let m = sym_from_entries(&e);
            if !is_hyperbolic(&m) {
                continue;
            }
            tested += 1;
            let cone = cone_from_symbol(&m).unwrap();
            assert!(cone.isotropy_certificate(&m));
            assert_eq!(quartic_rank(&cone.entry_quartics_f64()), 5);
        }
        assert!(cone_from_symbol(&QMatrix::identity(3)).is_err());
    }

    fn quartic_rank(rows: &[[f64; 5]; 6]) -> usize {
        let mut m: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        let scale = m
            .iter()
            .flat_map(|r| r.iter())
            .fold(0.0f64, |a, x| a.max(x.abs()))
            .max(1e-300);
        let mut rank = 0;
        for c in 0..5 {
            let Some(p) = (rank..6)
                .max_by(|&a, &b| m[a][c].abs().partial_cmp(&m[b][c].abs()).unwrap())
            else {
                break;
            };
            if m[p][c].abs() <= 1e-9 * scale {
                continue;
            }
            m.swap(rank, p);
            for r in 0..6 {
                if r != rank {
                    let f = m[r][c] / m[rank][c];
                    for k in c..5 {
                        m[r][k] -= f * m[rank][k];
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    #[test]
    fn planar_type_examples() {
        // x^7 y: both x = 0 and y = 0 are roots
        let mut mono = vec![Rat::zero(); 9];
        mono[1] = rint(1);
        let v = BinaryForm::from_monomial(mono);
        assert_eq!(classify_planar_type(&v).unwrap(), PlanarType::MongeAmpere);

        // x^8: only x = 0
        assert_eq!(
            classify_planar_type(&BinaryForm::monomial(8, 0)).unwrap(),
            PlanarType::Goursat
        );

        // (x^2 + y^2)^4: neither
        let q = BinaryForm::from_monomial(vec![rint(1), rint(0), rint(1)]);
        let v = q.mul(&q).mul(&q).mul(&q);
        assert_eq!(classify_planar_type(&v).unwrap(), PlanarType::Generic);
    }

    #[test]
    fn fifth_roots() {
        assert_eq!(rat_fifth_root(&rint(32)), Some(rint(2)));
        assert_eq!(rat_fifth_root(&rq(-1, 243)), Some(rq(-1, 3)));
        assert_eq!(rat_fifth_root(&rint(33)), None);
        assert_eq!(rat_fifth_root(&Rat::zero()), Some(Rat::zero()));
    }
}
