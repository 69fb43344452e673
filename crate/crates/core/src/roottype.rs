//! Root types of real binary octics.
//!
//! A nontrivial root type is a partition of 8 with complex-conjugate pair
//! markings, written `{4,[2,2]}` style; conjugate roots of a real form share
//! multiplicity, so a pair block is stored as a single integer. The zero
//! polynomial gets the distinguished trivial type `{0}`.
//!
//! The exact classifier works over the rationals with square-free
//! factorization and Sturm sequences (the root at infinity is read off the
//! degree drop of the dehomogenization); the numeric classifier clusters
//! companion-matrix eigenvalues with a multiplicity-adaptive tolerance.
//! The degeneration (closure) order is generated by root-collision moves
//! and every cover edge can be witnessed by a one-parameter family.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::binform::BinaryForm;
use crate::rat::{rat_to_f64, rint, sign, Rat};
use crate::Gl2Error;

/// A root type: real parts and complex-pair parts, each sorted descending.
/// `{0}` is represented by two empty lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootType {
    real: Vec<u8>,
    pairs: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
struct RootTypeJson {
    real: Vec<u8>,
    #[serde(rename = "complexPairs")]
    complex_pairs: Vec<u8>,
}

impl RootType {
    pub fn new(mut real: Vec<u8>, mut pairs: Vec<u8>) -> Result<Self, Gl2Error> {
        let total: u32 = real.iter().map(|&r| r as u32).sum::<u32>()
            + 2 * pairs.iter().map(|&p| p as u32).sum::<u32>();
        if !(total == 8 || (total == 0 && real.is_empty() && pairs.is_empty())) {
            return Err(Gl2Error::Invalid(format!(
                "root-type parts sum to {total}, expected 8"
            )));
        }
        if real.contains(&0) || pairs.contains(&0) {
            return Err(Gl2Error::Invalid("zero part in root type".into()));
        }
        real.sort_unstable_by(|a, b| b.cmp(a));
        pairs.sort_unstable_by(|a, b| b.cmp(a));
        Ok(RootType { real, pairs })
    }

    pub fn trivial() -> Self {
        RootType {
            real: Vec::new(),
            pairs: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.real.is_empty() && self.pairs.is_empty()
    }

    pub fn real_parts(&self) -> &[u8] {
        &self.real
    }

    pub fn pair_parts(&self) -> &[u8] {
        &self.pairs
    }

    /// Number of distinct complex roots.
    pub fn distinct_roots(&self) -> usize {
        self.real.len() + 2 * self.pairs.len()
    }

    /// Dimension of the stratum: `k + 1` for `k` distinct roots, `0` for
    /// the trivial type.
    pub fn dimension(&self) -> usize {
        if self.is_trivial() {
            0
        } else {
            self.distinct_roots() + 1
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(RootTypeJson {
            real: self.real.clone(),
            complex_pairs: self.pairs.clone(),
        })
        .expect("root type serialization cannot fail")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, Gl2Error> {
        let j: RootTypeJson = serde_json::from_value(v.clone())
            .map_err(|e| Gl2Error::Parse(format!("bad root-type JSON: {e}")))?;
        RootType::new(j.real, j.complex_pairs)
    }

    /// Parses the brace notation, e.g. `{4,[2,2]}`, `{1,1,1,1,1,1,1,1}`,
    /// or `{0}`.
    pub fn parse(s: &str) -> Result<Self, Gl2Error> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        if inner.trim() == "0" {
            return Ok(RootType::trivial());
        }
        let mut real = Vec::new();
        let mut pairs = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            if let Some(stripped) = rest.strip_prefix('[') {
                let end = stripped
                    .find(']')
                    .ok_or_else(|| Gl2Error::Parse(format!("unterminated pair in `{s}`")))?;
                let body = &stripped[..end];
                let parts: Vec<&str> = body.split(',').map(str::trim).collect();
                if parts.len() != 2 || parts[0] != parts[1] {
                    return Err(Gl2Error::Parse(format!(
                        "pair block `[{body}]` must repeat one part"
                    )));
                }
                let val: u8 = parts[0]
                    .parse()
                    .map_err(|_| Gl2Error::Parse(format!("bad part `{}`", parts[0])))?;
                pairs.push(val);
                rest = stripped[end + 1..].trim_start_matches(',').trim();
            } else {
                let end = rest.find(',').unwrap_or(rest.len());
                let tok = rest[..end].trim();
                let val: u8 = tok
                    .parse()
                    .map_err(|_| Gl2Error::Parse(format!("bad part `{tok}`")))?;
                real.push(val);
                rest = rest[end..].trim_start_matches(',').trim();
            }
        }
        RootType::new(real, pairs)
    }
}

impl std::fmt::Display for RootType {
    /// Renders parts sorted descending, real parts before an equal pair.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "{{0}}");
        }
        let mut items: Vec<(u8, bool)> = self
            .real
            .iter()
            .map(|&r| (r, false))
            .chain(self.pairs.iter().map(|&p| (p, true)))
            .collect();
        items.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        write!(f, "{{")?;
        for (i, (v, is_pair)) in items.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if *is_pair {
                write!(f, "[{v},{v}]")?;
            } else {
                write!(f, "{v}")?;
            }
        }
        write!(f, "}}")
    }
}

fn partitions(n: u8) -> Vec<Vec<u8>> {
    fn go(n: u8, max: u8, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        let top = n.min(max);
        for p in (1..=top).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All 55 root types: 54 nontrivial ones plus `{0}`.
pub fn enumerate_types() -> Vec<RootType> {
    let mut out = vec![RootType::trivial()];
    for p in 0..=4u8 {
        let m = 8 - 2 * p;
        for real in partitions(m) {
            for pairs in partitions(p) {
                out.push(RootType::new(real.clone(), pairs).unwrap());
            }
        }
    }
    out
}

/// A linear factor `(g x - h y)^mult`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFactor {
    pub g: Rat,
    pub h: Rat,
    pub mult: u8,
}

/// An irreducible quadratic factor `(x^2 + b xy + c y^2)^mult`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticFactor {
    pub b: Rat,
    pub c: Rat,
    pub mult: u8,
}

/// A degree-8 form given by its real factorization.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredOctic {
    pub scale: Rat,
    pub linear: Vec<LinearFactor>,
    pub quadratic: Vec<QuadraticFactor>,
}

impl FactoredOctic {
    pub fn new(
        scale: Rat,
        linear: Vec<LinearFactor>,
        quadratic: Vec<QuadraticFactor>,
    ) -> Result<Self, Gl2Error> {
        if scale.is_zero() {
            return Err(Gl2Error::Invalid("zero scale".into()));
        }
        let total: u32 = linear.iter().map(|l| l.mult as u32).sum::<u32>()
            + 2 * quadratic.iter().map(|q| q.mult as u32).sum::<u32>();
        if total != 8 {
            return Err(Gl2Error::Invalid(format!(
                "factor multiplicities sum to {total}, expected 8"
            )));
        }
        for l in &linear {
            if l.g.is_zero() && l.h.is_zero() {
                return Err(Gl2Error::Invalid("zero linear factor".into()));
            }
        }
        for (i, a) in linear.iter().enumerate() {
            for b in &linear[i + 1..] {
                if (&a.g * &b.h - &a.h * &b.g).is_zero() {
                    return Err(Gl2Error::Invalid("proportional linear factors".into()));
                }
            }
        }
        for q in &quadratic {
            if sign(&(&q.b * &q.b - rint(4) * &q.c)) >= 0 {
                return Err(Gl2Error::Invalid("reducible quadratic factor".into()));
            }
        }
        for (i, a) in quadratic.iter().enumerate() {
            for b in &quadratic[i + 1..] {
                if a.b == b.b && a.c == b.c {
                    return Err(Gl2Error::Invalid("repeated quadratic factor".into()));
                }
            }
        }
        Ok(FactoredOctic {
            scale,
            linear,
            quadratic,
        })
    }

    /// The root type realized by this factorization.
    pub fn root_type(&self) -> RootType {
        RootType::new(
            self.linear.iter().map(|l| l.mult).collect(),
            self.quadratic.iter().map(|q| q.mult).collect(),
        )
        .expect("validated factorization")
    }

    /// Multiplies out the factorization.
    pub fn expand(&self) -> BinaryForm {
        self.expand_raw()
    }

    /// The expansion with one power of linear factor `i` removed
    /// (degree 7).
    pub fn expand_without_linear(&self, i: usize) -> BinaryForm {
        let mut parts = self.clone();
        parts.linear[i].mult -= 1;
        parts.expand_raw()
    }

    /// The expansion with one power of quadratic factor `i` removed
    /// (degree 6).
    pub fn expand_without_quadratic(&self, i: usize) -> BinaryForm {
        let mut parts = self.clone();
        parts.quadratic[i].mult -= 1;
        parts.expand_raw()
    }

    fn expand_raw(&self) -> BinaryForm {
        let mut acc = BinaryForm::from_monomial(vec![self.scale.clone()]);
        for l in &self.linear {
            let lin = BinaryForm::from_monomial(vec![l.g.clone(), -l.h.clone()]);
            for _ in 0..l.mult {
                acc = acc.mul(&lin);
            }
        }
        for q in &self.quadratic {
            let quad = BinaryForm::from_monomial(vec![Rat::one(), q.b.clone(), q.c.clone()]);
            for _ in 0..q.mult {
                acc = acc.mul(&quad);
            }
        }
        acc
    }
}

// ---- exact univariate helpers (coefficients ascending in the variable) ----

fn utrim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn udeg(p: &[Rat]) -> usize {
    p.len().saturating_sub(1)
}

fn uderiv(p: &[Rat]) -> Vec<Rat> {
    if p.len() <= 1 {
        return Vec::new();
    }
    (1..p.len()).map(|i| &p[i] * rint(i as i64)).collect()
}

fn urem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert!(!b.is_empty());
    let mut r = utrim(a.to_vec());
    let db = udeg(b);
    let lead = b[db].clone();
    while !r.is_empty() && udeg(&r) >= db {
        let dr = udeg(&r);
        let f = &r[dr] / &lead;
        for i in 0..=db {
            let v = &r[dr - db + i] - &f * &b[i];
            r[dr - db + i] = v;
        }
        r = utrim(r);
    }
    r
}

fn udiv_exact(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    // exact quotient; the remainder is known to vanish
    let db = udeg(b);
    let lead = b[db].clone();
    let mut r = utrim(a.to_vec());
    let mut q = vec![Rat::zero(); a.len().saturating_sub(db)];
    while !r.is_empty() && udeg(&r) >= db {
        let dr = udeg(&r);
        let f = &r[dr] / &lead;
        q[dr - db] = f.clone();
        for i in 0..=db {
            let v = &r[dr - db + i] - &f * &b[i];
            r[dr - db + i] = v;
        }
        r = utrim(r);
    }
    debug_assert!(r.is_empty(), "inexact polynomial division");
    utrim(q)
}

fn umonic(p: &[Rat]) -> Vec<Rat> {
    if p.is_empty() {
        return Vec::new();
    }
    let lead = p[udeg(p)].clone();
    p.iter().map(|c| c / &lead).collect()
}

fn ugcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut x = utrim(a.to_vec());
    let mut y = utrim(b.to_vec());
    while !y.is_empty() {
        let r = urem(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        x
    } else {
        umonic(&x)
    }
}

fn usub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    utrim(out)
}

/// Yun's square-free decomposition: returns `(factor, multiplicity)` with
/// the factors monic, square-free, and pairwise coprime.
fn squarefree_decomposition(f: &[Rat]) -> Vec<(Vec<Rat>, usize)> {
    let f = utrim(f.to_vec());
    if f.is_empty() || udeg(&f) == 0 {
        return Vec::new();
    }
    let df = uderiv(&f);
    let a0 = ugcd(&f, &df);
    if udeg(&a0) == 0 {
        return vec![(umonic(&f), 1)];
    }
    let mut out = Vec::new();
    let mut c = udiv_exact(&f, &a0);
    let mut d = usub(&udiv_exact(&df, &a0), &uderiv(&c));
    let mut i = 1;
    loop {
        let ai = ugcd(&c, &d);
        if udeg(&ai) > 0 {
            out.push((ai.clone(), i));
        }
        let ai_use = if ai.is_empty() { vec![Rat::one()] } else { ai };
        c = udiv_exact(&c, &ai_use);
        if c.is_empty() || udeg(&c) == 0 {
            break;
        }
        d = usub(&udiv_exact(&d, &ai_use), &uderiv(&c));
        i += 1;
    }
    out
}

/// Number of distinct real roots of a square-free rational polynomial,
/// counted by the Sturm chain over `(-inf, +inf)`.
fn sturm_real_roots(f: &[Rat]) -> usize {
    let f = utrim(f.to_vec());
    if f.is_empty() || udeg(&f) == 0 {
        return 0;
    }
    let mut chain = vec![f.clone(), uderiv(&f)];
    loop {
        let n = chain.len();
        let r = urem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.iter().map(|c| -c).collect());
    }
    let variations = |at_plus_infinity: bool| -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for p in &chain {
            let d = udeg(p);
            let mut s = sign(&p[d]);
            if !at_plus_infinity && d % 2 == 1 {
                s = -s;
            }
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    };
    variations(false) - variations(true)
}

/// Exact classification of a rational octic into its root type.
///
/// Square-free decomposition over the rationals, Sturm counting of real
/// roots per square-free factor, with the root at infinity read off the
/// degree deficiency of the dehomogenization at `y = 1`.
pub fn classify_exact(v: &BinaryForm) -> Result<RootType, Gl2Error> {
    if v.degree() != 8 {
        return Err(Gl2Error::DegreeMismatch {
            expected: 8,
            got: v.degree(),
        });
    }
    if v.is_zero() {
        return Ok(RootType::trivial());
    }
    let mono = v.to_monomial();
    let inf_mult = mono.iter().take_while(|c| c.is_zero()).count();
    // f(t) = v(t, 1): coefficient of t^j is mono[8 - j]
    let f: Vec<Rat> = (0..=(8 - inf_mult)).map(|j| mono[8 - j].clone()).collect();
    let f = utrim(f);
    let mut real = Vec::new();
    let mut pairs = Vec::new();
    if inf_mult > 0 {
        real.push(inf_mult as u8);
    }
    for (factor, mult) in squarefree_decomposition(&f) {
        let r = sturm_real_roots(&factor);
        let p = (udeg(&factor) - r) / 2;
        for _ in 0..r {
            real.push(mult as u8);
        }
        for _ in 0..p {
            pairs.push(mult as u8);
        }
    }
    RootType::new(real, pairs)
}

// ---- numeric classification ----

type C64 = num_complex::Complex<f64>;

/// Complex roots of a float polynomial (ascending coefficients, nonzero
/// leading coefficient) by Durand--Kerner iteration with a fixed cap.
///
/// For an m-fold root the iterates settle on a splinter ring of radius
/// about `machine_eps^(1/m)` around it, which is exactly the input the
/// multiplicity-adaptive clustering expects.
fn poly_roots(coeffs: &[f64]) -> Vec<C64> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = coeffs[d];
    let monic: Vec<f64> = coeffs[..d].iter().map(|c| c / lead).collect();
    let eval = |z: C64| -> C64 {
        let mut acc = C64::new(1.0, 0.0);
        for i in (0..d).rev() {
            acc = acc * z + C64::new(monic[i], 0.0);
        }
        acc
    };
    // Fujiwara bound on root magnitudes
    let radius = 2.0
        * (0..d)
            .map(|i| monic[i].abs().powf(1.0 / (d - i) as f64))
            .fold(0.0f64, f64::max)
            .max(1e-3);
    let mut z: Vec<C64> = (0..d)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.35;
            C64::new(radius * angle.cos(), radius * angle.sin())
        })
        .collect();
    for _ in 0..2000 {
        let mut max_step = 0.0f64;
        for k in 0..d {
            let mut denom = C64::new(1.0, 0.0);
            for j in 0..d {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                z[k] += C64::new(1e-8 * radius, 1e-8 * radius);
                continue;
            }
            let step = eval(z[k]) / denom;
            z[k] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * (1.0 + radius) {
            break;
        }
    }
    z
}

/// Numeric classification of float monomial coefficients
/// (`mono[k]` multiplies `x^(8-k) y^k`) with tolerance `eps`.
///
/// Roots are clustered with the multiplicity-adaptive threshold
/// `eps^(1/m)` for a candidate cluster of size `m` (an exact m-fold root
/// computed in floats splinters by roughly `machine_eps^(1/m)`, so a flat
/// threshold cannot recover multiplicities). Any gap within a factor of
/// two of its applicable threshold makes the clustering ambiguous.
/// Conjugate pairs are detected through cluster centers; the root at
/// infinity through leading-coefficient collapse relative to the
/// coefficient norm.
pub fn classify_numeric(mono: &[f64; 9], eps: f64) -> Result<RootType, Gl2Error> {
    if eps <= 0.0 {
        return Err(Gl2Error::Invalid("tolerance must be positive".into()));
    }
    let norm = mono.iter().fold(0.0f64, |a, c| a.max(c.abs()));
    if norm == 0.0 {
        return Ok(RootType::trivial());
    }
    // Leading-coefficient collapse is a statement about the coefficient
    // vector, not about root distances, so it is tested at accumulated-
    // roundoff scale (capped by eps for very strict tolerances).
    let collapse = norm * eps.min(1e-12);
    let inf_mult = mono.iter().take_while(|c| c.abs() <= collapse).count();
    let deg = 8 - inf_mult;
    let f: Vec<f64> = (0..=deg).map(|j| mono[8 - j]).collect();
    let roots = poly_roots(&f);

    // Single-linkage dendrogram, cut at the coarsest partition in which
    // every cluster of size m has diameter at most eps^(1/m). An exact
    // m-fold root splinters in floats by roughly machine_eps^(1/m), so a
    // flat threshold cannot recover multiplicities; conversely a merge
    // chain with pairwise thresholds can never assemble the splinter ring.
    let linkage = |a: &[C64], b: &[C64]| -> f64 {
        let mut d = f64::INFINITY;
        for x in a {
            for y in b {
                d = d.min((x - y).norm());
            }
        }
        d
    };
    let diameter = |a: &[C64]| -> f64 {
        let mut d = 0.0f64;
        for (i, x) in a.iter().enumerate() {
            for y in &a[i + 1..] {
                d = d.max((x - y).norm());
            }
        }
        d
    };
    let mut chain: Vec<Vec<Vec<C64>>> = Vec::new();
    let mut current: Vec<Vec<C64>> = roots.into_iter().map(|r| vec![r]).collect();
    chain.push(current.clone());
    while current.len() > 1 {
        let mut best = (0usize, 1usize, f64::INFINITY);
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let d = linkage(&current[i], &current[j]);
                if d < best.2 {
                    best = (i, j, d);
                }
            }
        }
        let merged = current.swap_remove(best.1);
        current[best.0].extend(merged);
        chain.push(current.clone());
    }
    // cut the chain at the coarsest partition consistent with the
    // tolerance; the answer must be stable under halving and doubling of
    // eps, otherwise the clustering is reported as ambiguous
    let cut = |tol: f64| -> Option<usize> {
        chain
            .iter()
            .rposition(|p| p.iter().all(|c| diameter(c) <= tol.powf(1.0 / c.len() as f64)))
    };
    let Some(idx) = cut(eps) else {
        return Err(Gl2Error::AmbiguousClustering);
    };
    if cut(eps / 2.0) != Some(idx) || cut(eps * 2.0) != Some(idx) {
        return Err(Gl2Error::AmbiguousClustering);
    }
    let clusters = chain[idx].clone();

    let center = |c: &[C64]| -> C64 {
        let s: C64 = c.iter().sum();
        s / C64::new(c.len() as f64, 0.0)
    };
    let mut real = Vec::new();
    let mut pairs = Vec::new();
    if inf_mult > 0 {
        real.push(inf_mult as u8);
    }
    let mut used = vec![false; clusters.len()];
    for i in 0..clusters.len() {
        if used[i] {
            continue;
        }
        let ci = center(&clusters[i]);
        if ci.im.abs() <= eps.powf(1.0 / clusters[i].len() as f64) {
            used[i] = true;
            real.push(clusters[i].len() as u8);
            continue;
        }
        // find the conjugate partner
        let mut partner = None;
        for (j, cl) in clusters.iter().enumerate() {
            if j == i || used[j] || cl.len() != clusters[i].len() {
                continue;
            }
            let thr = eps.powf(1.0 / (2 * clusters[i].len()) as f64);
            if (center(cl) - ci.conj()).norm() <= thr {
                partner = Some(j);
                break;
            }
        }
        let Some(j) = partner else {
            return Err(Gl2Error::AmbiguousClustering);
        };
        used[i] = true;
        used[j] = true;
        pairs.push(clusters[i].len() as u8);
    }
    RootType::new(real, pairs)
}

/// Renders a rational octic to float monomial coefficients and classifies.
pub fn classify_numeric_form(v: &BinaryForm, eps: f64) -> Result<RootType, Gl2Error> {
    if v.degree() != 8 {
        return Err(Gl2Error::DegreeMismatch {
            expected: 8,
            got: v.degree(),
        });
    }
    let mono = v.to_monomial();
    let mut m = [0.0; 9];
    for (slot, c) in m.iter_mut().zip(mono.iter()) {
        *slot = rat_to_f64(c);
    }
    classify_numeric(&m, eps)
}

/// Deterministic rational representative of a nontrivial root type:
/// real roots at distinct small odd integers starting from 1, complex
/// pairs as `x^2 + xy + c y^2` with distinct `c > 1/4`.
pub fn sample_representative(rt: &RootType) -> Result<FactoredOctic, Gl2Error> {
    if rt.is_trivial() {
        return Err(Gl2Error::TrivialType);
    }
    const POSITIONS: [i64; 8] = [1, 3, -3, 5, -5, 7, -7, 9];
    let linear = rt
        .real_parts()
        .iter()
        .enumerate()
        .map(|(i, &m)| LinearFactor {
            g: Rat::one(),
            h: rint(POSITIONS[i]),
            mult: m,
        })
        .collect();
    let quadratic = rt
        .pair_parts()
        .iter()
        .enumerate()
        .map(|(i, &m)| QuadraticFactor {
            b: Rat::one(),
            c: rint(1 + i as i64),
            mult: m,
        })
        .collect();
    FactoredOctic::new(Rat::one(), linear, quadratic)
}

// ---- degeneration poset ----

/// Results of the four root-collision moves applied once.
fn single_moves(rt: &RootType) -> Vec<RootType> {
    let mut out = Vec::new();
    let real = rt.real_parts();
    let pairs = rt.pair_parts();
    // (i) merge two real parts
    for i in 0..real.len() {
        for j in i + 1..real.len() {
            let mut r: Vec<u8> = real.to_vec();
            let b = r.remove(j);
            r[i] += b;
            out.push(RootType::new(r, pairs.to_vec()).unwrap());
        }
    }
    // (ii) a pair lands on the real axis
    for i in 0..pairs.len() {
        let mut p = pairs.to_vec();
        let v = p.remove(i);
        let mut r = real.to_vec();
        r.push(2 * v);
        out.push(RootType::new(r, p).unwrap());
    }
    // (iii) merge two pairs
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let mut p = pairs.to_vec();
            let b = p.remove(j);
            p[i] += b;
            out.push(RootType::new(real.to_vec(), p).unwrap());
        }
    }
    // (iv) a pair collides with a real root
    for i in 0..pairs.len() {
        for j in 0..real.len() {
            let mut p = pairs.to_vec();
            let v = p.remove(i);
            let mut r = real.to_vec();
            r[j] += 2 * v;
            out.push(RootType::new(r, p).unwrap());
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The degeneration order on the 54 nontrivial types.
pub struct DegenerationPoset {
    /// Nontrivial types, sorted.
    pub nodes: Vec<RootType>,
    /// `le[a][b]` is true when the closure of stratum `a` contains
    /// stratum `b`. Reflexive.
    le: Vec<Vec<bool>>,
}

impl DegenerationPoset {
    pub fn index_of(&self, rt: &RootType) -> Option<usize> {
        self.nodes.iter().position(|n| n == rt)
    }

    /// True when the closure of `a` contains `b`.
    pub fn degenerates_to(&self, a: &RootType, b: &RootType) -> bool {
        let (ia, ib) = (self.index_of(a).unwrap(), self.index_of(b).unwrap());
        self.le[ia][ib]
    }

    /// Cover (Hasse) edges as `(higher, lower)` index pairs.
    pub fn cover_edges(&self) -> Vec<(usize, usize)> {
        let n = self.nodes.len();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !self.le[a][b] {
                    continue;
                }
                let has_mid =
                    (0..n).any(|m| m != a && m != b && self.le[a][m] && self.le[m][b]);
                if !has_mid {
                    covers.push((a, b));
                }
            }
        }
        covers
    }
}

/// Builds the order generated by the four collision moves, closed
/// transitively.
pub fn degeneration_poset() -> DegenerationPoset {
    let mut nodes: Vec<RootType> = enumerate_types()
        .into_iter()
        .filter(|t| !t.is_trivial())
        .collect();
    nodes.sort();
    let n = nodes.len();
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
        row[i] = true;
    }
    for i in 0..n {
        for m in single_moves(&nodes[i]) {
            let j = nodes.iter().position(|t| *t == m).unwrap();
            le[i][j] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if le[i][k] {
                for j in 0..n {
                    if le[k][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
    }
    DegenerationPoset { nodes, le }
}

/// A one-parameter family witnessing a cover edge: `member` lies in the
/// higher type at the given `t > 0`, while `limit` (the `t = 0` form)
/// lies in the lower type.
pub struct EdgeWitness {
    pub member: FactoredOctic,
    pub limit: BinaryForm,
}

/// Constructs a witness family for a single collision move from `high`
/// to `low`, with parameter value `t` for the member.
pub fn cover_witness(high: &RootType, low: &RootType, t: &Rat) -> Result<EdgeWitness, Gl2Error> {
    if t.is_zero() || t.is_negative() {
        return Err(Gl2Error::Invalid(
            "witness parameter must be positive".into(),
        ));
    }
    let reals = high.real_parts();
    let pairs = high.pair_parts();
    // the colliding roots act around 0; spectators sit at centers >= 2,
    // spaced by 2, far beyond the 1e-6^(1/8) clustering radius
    let spectator = |i: usize| rint(2 * (i as i64 + 1));

    let build = |lin_t: Vec<LinearFactor>,
                 quad_t: Vec<QuadraticFactor>,
                 lin_0: Vec<LinearFactor>,
                 quad_0: Vec<QuadraticFactor>|
     -> Result<EdgeWitness, Gl2Error> {
        let member = FactoredOctic::new(Rat::one(), lin_t, quad_t)?;
        let limit = FactoredOctic {
            scale: Rat::one(),
            linear: lin_0,
            quadratic: quad_0,
        }
        .expand_raw();
        Ok(EdgeWitness { member, limit })
    };

    let lin_at = |pos: Rat, mult: u8| LinearFactor {
        g: Rat::one(),
        h: pos,
        mult,
    };
    // quadratic factor with roots a +- i b
    let quad_at = |a: Rat, bi: Rat, mult: u8| QuadraticFactor {
        b: rint(-2) * &a,
        c: &a * &a + &bi * &bi,
        mult,
    };

    // (i) merge two real parts r, s -> r + s
    for i in 0..reals.len() {
        for j in i + 1..reals.len() {
            let mut r: Vec<u8> = reals.to_vec();
            let b = r.remove(j);
            r[i] += b;
            if &RootType::new(r, pairs.to_vec()).unwrap() == low {
                let mut lin_t =
                    vec![lin_at(Rat::zero(), reals[i]), lin_at(t.clone(), reals[j])];
                let mut lin_0 = vec![lin_at(Rat::zero(), reals[i] + reals[j])];
                for (s, &m) in reals.iter().enumerate() {
                    if s != i && s != j {
                        lin_t.push(lin_at(spectator(s), m));
                        lin_0.push(lin_at(spectator(s), m));
                    }
                }
                let quads: Vec<QuadraticFactor> = pairs
                    .iter()
                    .enumerate()
                    .map(|(s, &m)| quad_at(-spectator(s), rint(1 + s as i64), m))
                    .collect();
                return build(lin_t, quads.clone(), lin_0, quads);
            }
        }
    }
    // (ii) pair [r,r] -> real 2r
    for i in 0..pairs.len() {
        let mut p = pairs.to_vec();
        let v = p.remove(i);
        let mut r = reals.to_vec();
        r.push(2 * v);
        if &RootType::new(r, p).unwrap() == low {
            let lin: Vec<LinearFactor> = reals
                .iter()
                .enumerate()
                .map(|(s, &m)| lin_at(spectator(s), m))
                .collect();
            let mut quad_t = vec![quad_at(Rat::zero(), t.clone(), pairs[i])];
            let mut lin_0 = lin.clone();
            lin_0.push(lin_at(Rat::zero(), 2 * pairs[i]));
            let mut quad_0 = Vec::new();
            for (s, &m) in pairs.iter().enumerate() {
                if s != i {
                    let q = quad_at(-spectator(s), rint(1 + s as i64), m);
                    quad_t.push(q.clone());
                    quad_0.push(q);
                }
            }
            return build(lin, quad_t, lin_0, quad_0);
        }
    }
    // (iii) merge two pairs [r,r], [s,s] -> [r+s, r+s]
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            let mut p = pairs.to_vec();
            let b = p.remove(j);
            p[i] += b;
            if &RootType::new(reals.to_vec(), p).unwrap() == low {
                let lin: Vec<LinearFactor> = reals
                    .iter()
                    .enumerate()
                    .map(|(s, &m)| lin_at(spectator(s), m))
                    .collect();
                let mut quad_t = vec![
                    quad_at(Rat::zero(), Rat::one(), pairs[i]),
                    quad_at(t.clone(), Rat::one(), pairs[j]),
                ];
                let mut quad_0 =
                    vec![quad_at(Rat::zero(), Rat::one(), pairs[i] + pairs[j])];
                for (s, &m) in pairs.iter().enumerate() {
                    if s != i && s != j {
                        let q = quad_at(-spectator(s), rint(2 + s as i64), m);
                        quad_t.push(q.clone());
                        quad_0.push(q);
                    }
                }
                return build(lin.clone(), quad_t, lin, quad_0);
            }
        }
    }
    // (iv) pair [s,s] collides with real r -> real r + 2s
    for i in 0..pairs.len() {
        for j in 0..reals.len() {
            let mut p = pairs.to_vec();
            let v = p.remove(i);
            let mut r = reals.to_vec();
            r[j] += 2 * v;
            if &RootType::new(r, p).unwrap() == low {
                let mut lin_t = vec![lin_at(Rat::zero(), reals[j])];
                let mut lin_0 = vec![lin_at(Rat::zero(), reals[j] + 2 * pairs[i])];
                for (s, &m) in reals.iter().enumerate() {
                    if s != j {
                        lin_t.push(lin_at(spectator(s), m));
                        lin_0.push(lin_at(spectator(s), m));
                    }
                }
                let mut quad_t = vec![quad_at(Rat::zero(), t.clone(), pairs[i])];
                let mut quad_0 = Vec::new();
                for (s, &m) in pairs.iter().enumerate() {
                    if s != i {
                        let q = quad_at(-spectator(s), rint(1 + s as i64), m);
                        quad_t.push(q.clone());
                        quad_0.push(q);
                    }
                }
                return build(lin_t, quad_t, lin_0, quad_0);
            }
        }
    }
    Err(Gl2Error::Invalid(format!(
        "no single collision move realizes {high} -> {low}"
    )))
}

/// DOT rendering of the Hasse diagram, nodes rank-grouped by dimension,
/// with the trivial type as the bottom node under the rational normal
/// cone (the only stratum whose closure covers `{0}`).
pub fn hasse_dot(poset: &DegenerationPoset) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let _ = writeln!(s, "digraph strata {{");
    let _ = writeln!(s, "  rankdir=TB;");
    let _ = writeln!(s, "  node [shape=box];");
    for d in (0..=9usize).rev() {
        let group: Vec<usize> = (0..poset.nodes.len())
            .filter(|&i| poset.nodes[i].dimension() == d)
            .collect();
        if group.is_empty() && d != 0 {
            continue;
        }
        let _ = writeln!(s, "  {{ rank=same;");
        if d == 0 {
            let _ = writeln!(s, "    \"{{0}}\" [label=\"{{0}}\\ndim 0\"];");
        }
        for i in group {
            let n = &poset.nodes[i];
            let _ = writeln!(s, "    \"{}\" [label=\"{}\\ndim {}\"];", n, n, d);
        }
        let _ = writeln!(s, "  }}");
    }
    for (a, b) in poset.cover_edges() {
        let _ = writeln!(s, "  \"{}\" -> \"{}\";", poset.nodes[a], poset.nodes[b]);
    }
    let cone = RootType::new(vec![8], vec![]).unwrap();
    let _ = writeln!(s, "  \"{}\" -> \"{{0}}\";", cone);
    let _ = writeln!(s, "}}");
    s
}
