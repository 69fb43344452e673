//! A small exterior-calculus kernel.
//!
//! Differential forms live on an abstract coframe of up to 16 generators;
//! a form is a sum of terms, each a multivariate (Laurent) polynomial
//! coefficient times a strictly increasing wedge monomial of generators.
//! Wedge monomials are bitmasks, so canonical normalization is automatic:
//! repeated generators vanish and reordering is a sign.
//!
//! The exterior derivative is rule-driven: the caller supplies `d` of every
//! generator and of every coefficient variable, and the kernel extends by
//! linearity and the graded Leibniz rule. This one kernel serves both the
//! structure-equation coframe (polynomial coefficients in the nine torsion
//! variables) and the integrated coordinate coframe of the symmetry
//! reduction (Laurent coefficients in the chart functions).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::binform::{transvectant, CgCoeff};
use crate::rat::{binom, rat_to_string, Rat};
use crate::Gl2Error;

/// Sparse multivariate polynomial over `Rat` with integer (possibly
/// negative) exponents. Terms are kept sorted by exponent vector, with
/// zero coefficients dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, r: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !r.is_zero() {
            p.terms.insert(vec![0; nvars], r);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    /// `x_i^e`, with `e` allowed to be negative.
    pub fn var_pow(nvars: usize, i: usize, e: i32) -> Self {
        assert!(i < nvars);
        let mut exp = vec![0; nvars];
        exp[i] = e;
        let mut p = Poly::zero(nvars);
        p.terms.insert(exp, Rat::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    fn insert(&mut self, exp: Vec<i32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(exp, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> Poly {
        if r.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = &*c * r;
        }
        out
    }

    /// Partial derivative with respect to variable `i` (Laurent-aware).
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[i] -= 1;
            out.insert(exp, c * Rat::from_integer((e[i] as i64).into()));
        }
        out
    }

    /// Exact evaluation; all exponents must be nonnegative unless the
    /// corresponding value is nonzero.
    pub fn eval(&self, vals: &[Rat]) -> Rat {
        assert_eq!(vals.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                let base = if p > 0 { vals[i].clone() } else { vals[i].recip() };
                for _ in 0..p.unsigned_abs() {
                    t *= &base;
                }
            }
            acc += t;
        }
        acc
    }

    /// Total degree of the highest term, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Rat)> {
        self.terms.iter()
    }

    pub fn render(&self, var_names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            let mut mono = String::new();
            for (i, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                if p == 1 {
                    mono.push_str(var_names[i]);
                } else {
                    let _ = write!(mono, "{}^{}", var_names[i], p);
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
                let _ = write!(out, "{}*{}", rat_to_string(&a), mono);
            }
        }
        out
    }
}

/// Sign and combined mask of a wedge of two increasing wedge monomials;
/// `None` when a generator repeats.
fn wedge_masks(a: u16, b: u16) -> Option<(u16, i32)> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    Some((a | b, if inversions.is_multiple_of(2) { 1 } else { -1 }))
}

/// A differential form on an abstract coframe: map from wedge-monomial
/// bitmask to polynomial coefficient, canonically normalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorExpr {
    ngens: usize,
    nvars: usize,
    terms: BTreeMap<u16, Poly>,
}

impl ExteriorExpr {
    pub fn zero(ngens: usize, nvars: usize) -> Self {
        assert!(ngens <= 16);
        ExteriorExpr {
            ngens,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// A 0-form with the given coefficient.
    pub fn from_poly(ngens: usize, p: Poly) -> Self {
        let mut e = Self::zero(ngens, p.nvars());
        if !p.is_zero() {
            e.terms.insert(0, p);
        }
        e
    }

    pub fn constant(ngens: usize, nvars: usize, r: Rat) -> Self {
        Self::from_poly(ngens, Poly::constant(nvars, r))
    }

    /// The `i`-th coframe generator as a 1-form.
    pub fn gen(ngens: usize, nvars: usize, i: usize) -> Self {
        assert!(i < ngens);
        let mut e = Self::zero(ngens, nvars);
        e.terms.insert(1 << i, Poly::one(nvars));
        e
    }

    pub fn term(ngens: usize, p: Poly, mask: u16) -> Self {
        let mut e = Self::zero(ngens, p.nvars());
        if !p.is_zero() {
            e.terms.insert(mask, p);
        }
        e
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Form degree when homogeneous and nonzero.
    pub fn form_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.count_ones());
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn insert(&mut self, mask: u16, p: Poly) {
        if p.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mask) {
            Entry::Vacant(slot) => {
                slot.insert(p);
            }
            Entry::Occupied(mut slot) => {
                let s = slot.get().add(&p);
                if s.is_zero() {
                    slot.remove();
                } else {
                    *slot.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &ExteriorExpr) -> ExteriorExpr {
        assert_eq!((self.ngens, self.nvars), (other.ngens, other.nvars));
        let mut out = self.clone();
        for (m, p) in &other.terms {
            out.insert(*m, p.clone());
        }
        out
    }

    pub fn neg(&self) -> ExteriorExpr {
        let mut out = self.clone();
        for p in out.terms.values_mut() {
            *p = p.neg();
        }
        out
    }

    pub fn sub(&self, other: &ExteriorExpr) -> ExteriorExpr {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &Rat) -> ExteriorExpr {
        if r.is_zero() {
            return ExteriorExpr::zero(self.ngens, self.nvars);
        }
        let mut out = self.clone();
        for p in out.terms.values_mut() {
            *p = p.scale(r);
        }
        out
    }

    pub fn mul_poly(&self, q: &Poly) -> ExteriorExpr {
        let mut out = ExteriorExpr::zero(self.ngens, self.nvars);
        for (m, p) in &self.terms {
            out.insert(*m, p.mul(q));
        }
        out
    }

    /// Exterior product with canonical normalization.
    pub fn wedge(&self, other: &ExteriorExpr) -> ExteriorExpr {
        assert_eq!((self.ngens, self.nvars), (other.ngens, other.nvars));
        let mut out = ExteriorExpr::zero(self.ngens, self.nvars);
        for (ma, pa) in &self.terms {
            for (mb, pb) in &other.terms {
                if let Some((m, s)) = wedge_masks(*ma, *mb) {
                    let mut c = pa.mul(pb);
                    if s < 0 {
                        c = c.neg();
                    }
                    out.insert(m, c);
                }
            }
        }
        out
    }

    /// Rule-driven exterior derivative. `rules` must provide `d` of every
    /// generator and every coefficient variable.
    pub fn d(&self, rules: &StructureRules) -> ExteriorExpr {
        assert_eq!(rules.gen_rules.len(), self.ngens);
        assert_eq!(rules.var_rules.len(), self.nvars);
        let mut out = ExteriorExpr::zero(self.ngens, self.nvars);
        for (mask, p) in &self.terms {
            // d(coefficient) ^ wedge monomial
            for i in 0..self.nvars {
                let dp = p.partial(i);
                if dp.is_zero() || rules.var_rules[i].is_zero() {
                    continue;
                }
                let dc = rules.var_rules[i].mul_poly(&dp);
                out = out.add(&dc.wedge(&ExteriorExpr::term(
                    self.ngens,
                    Poly::one(self.nvars),
                    *mask,
                )));
            }
            // coefficient * d(wedge monomial), one generator at a time;
            // moving d past the leading 1-forms costs the Koszul sign
            let mut mm = *mask;
            while mm != 0 {
                let j = mm.trailing_zeros() as u16;
                mm &= mm - 1;
                let bit = 1u16 << j;
                let prefix = mask & (bit - 1);
                let suffix = mask & !(bit | (bit - 1));
                let rule = &rules.gen_rules[j as usize];
                if rule.is_zero() {
                    continue;
                }
                let mut c = p.clone();
                if prefix.count_ones() % 2 == 1 {
                    c = c.neg();
                }
                let pre = ExteriorExpr::term(self.ngens, c, prefix);
                let suf = ExteriorExpr::term(self.ngens, Poly::one(self.nvars), suffix);
                out = out.add(&pre.wedge(rule).wedge(&suf));
            }
        }
        out
    }

    /// Replaces every generator by a 1-form image, extending by wedge
    /// products; coefficients pass through unchanged.
    pub fn substitute_gens(&self, images: &[ExteriorExpr]) -> ExteriorExpr {
        assert_eq!(images.len(), self.ngens);
        let mut out = ExteriorExpr::zero(self.ngens, self.nvars);
        for (mask, p) in &self.terms {
            let mut acc = ExteriorExpr::from_poly(self.ngens, p.clone());
            for j in 0..self.ngens {
                if mask & (1 << j) != 0 {
                    acc = acc.wedge(&images[j]);
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Evaluates all coefficient polynomials at the given variable values,
    /// producing a form with constant coefficients.
    pub fn eval_coeffs(&self, vals: &[Rat]) -> ExteriorExpr {
        let mut out = ExteriorExpr::zero(self.ngens, self.nvars);
        for (m, p) in &self.terms {
            out.insert(*m, Poly::constant(self.nvars, p.eval(vals)));
        }
        out
    }

    pub fn coeff(&self, mask: u16) -> Poly {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(|| Poly::zero(self.nvars))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u16, &Poly)> {
        self.terms.iter()
    }

    /// Canonical text rendering (sorted terms) for golden-file tests.
    pub fn render(&self, gen_names: &[&str], var_names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (mask, p) in &self.terms {
            let mut gens = Vec::new();
            for j in 0..self.ngens {
                if mask & (1 << j) != 0 {
                    gens.push(gen_names[j]);
                }
            }
            let coeff = p.render(var_names);
            if gens.is_empty() {
                parts.push(coeff);
            } else if coeff == "1" {
                parts.push(gens.join("^"));
            } else {
                parts.push(format!("({}) {}", coeff, gens.join("^")));
            }
        }
        parts.join("  +  ")
    }
}

impl CgCoeff for ExteriorExpr {
    fn cg_zero_like(&self) -> Self {
        ExteriorExpr::zero(self.ngens, self.nvars)
    }
    fn cg_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn cg_mul(&self, other: &Self) -> Self {
        self.wedge(other)
    }
    fn cg_scale(&self, r: &Rat) -> Self {
        ExteriorExpr::scale(self, r)
    }
    fn cg_is_zero(&self) -> bool {
        ExteriorExpr::is_zero(self)
    }
}

/// `d` of every coframe generator and every coefficient variable.
#[derive(Clone, Debug)]
pub struct StructureRules {
    pub gen_rules: Vec<ExteriorExpr>,
    pub var_rules: Vec<ExteriorExpr>,
}

impl StructureRules {
    pub fn new(gen_rules: Vec<ExteriorExpr>, var_rules: Vec<ExteriorExpr>) -> Self {
        StructureRules {
            gen_rules,
            var_rules,
        }
    }
}

/// A `V_n`-valued differential form: `n + 1` components of equal form
/// degree, in the binomial-scaled basis (same convention as `BinaryForm`).
#[derive(Clone, Debug, PartialEq)]
pub struct PolyValuedForm {
    degree: usize,
    comps: Vec<ExteriorExpr>,
}

impl PolyValuedForm {
    pub fn new(degree: usize, comps: Vec<ExteriorExpr>) -> Result<Self, Gl2Error> {
        if comps.len() != degree + 1 {
            return Err(Gl2Error::LengthMismatch {
                expected: degree + 1,
                got: comps.len(),
            });
        }
        Ok(PolyValuedForm { degree, comps })
    }

    pub fn zero(degree: usize, ngens: usize, nvars: usize) -> Self {
        PolyValuedForm {
            degree,
            comps: vec![ExteriorExpr::zero(ngens, nvars); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn comps(&self) -> &[ExteriorExpr] {
        &self.comps
    }

    pub fn comp(&self, k: usize) -> &ExteriorExpr {
        &self.comps[k]
    }

    pub fn add(&self, other: &PolyValuedForm) -> PolyValuedForm {
        assert_eq!(self.degree, other.degree);
        PolyValuedForm {
            degree: self.degree,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, r: &Rat) -> PolyValuedForm {
        PolyValuedForm {
            degree: self.degree,
            comps: self.comps.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn neg(&self) -> PolyValuedForm {
        self.scale(&-Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn d(&self, rules: &StructureRules) -> PolyValuedForm {
        PolyValuedForm {
            degree: self.degree,
            comps: self.comps.iter().map(|c| c.d(rules)).collect(),
        }
    }

    fn to_monomial(&self) -> Vec<ExteriorExpr> {
        self.comps
            .iter()
            .enumerate()
            .map(|(k, c)| c.scale(&binom(self.degree, k)))
            .collect()
    }

    fn from_monomial(degree: usize, mono: Vec<ExteriorExpr>) -> PolyValuedForm {
        let comps = mono
            .into_iter()
            .enumerate()
            .map(|(k, c)| c.scale(&binom(degree, k).recip()))
            .collect();
        PolyValuedForm { degree, comps }
    }
}

/// The Clebsch--Gordan pairing extended to form-valued arguments via the
/// wedge product; satisfies `<u,v>_p = (-1)^(rs+p) <v,u>_p` for form
/// degrees `r`, `s`.
pub fn pair_forms(
    u: &PolyValuedForm,
    v: &PolyValuedForm,
    p: usize,
) -> Result<PolyValuedForm, Gl2Error> {
    let mono = transvectant(
        &u.to_monomial(),
        u.degree,
        &v.to_monomial(),
        v.degree,
        p,
    )?;
    Ok(PolyValuedForm::from_monomial(
        u.degree + v.degree - 2 * p,
        mono,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rint, rq};
    use proptest::prelude::*;

    const NG: usize = 5;
    const NV: usize = 2;

    fn g(i: usize) -> ExteriorExpr {
        ExteriorExpr::gen(NG, NV, i)
    }

    #[test]
    fn wedge_basics() {
        // g0 ^ g0 = 0
        assert!(g(0).wedge(&g(0)).is_zero());
        // g2 ^ g4 = -(g4 ^ g2) after normalization
        assert_eq!(g(2).wedge(&g(4)), g(4).wedge(&g(2)).neg());
        // (T0 g2) ^ g1 = -T0 (g1 ^ g2)
        let t0 = Poly::var(NV, 0);
        let lhs = g(2).mul_poly(&t0).wedge(&g(1));
        let rhs = g(1).wedge(&g(2)).mul_poly(&t0).neg();
        assert_eq!(lhs, rhs);
        // normalization kills symmetric sums
        assert!(g(2).wedge(&g(4)).add(&g(4).wedge(&g(2))).is_zero());
    }

    #[test]
    fn poly_partials_and_eval() {
        // p = 3 x0^2 x1 - x1
        let p = Poly::var_pow(NV, 0, 2)
            .mul(&Poly::var(NV, 1))
            .scale(&rint(3))
            .sub(&Poly::var(NV, 1));
        assert_eq!(
            p.partial(0),
            Poly::var(NV, 0).mul(&Poly::var(NV, 1)).scale(&rint(6))
        );
        assert_eq!(p.eval(&[rint(2), rint(1)]), rint(11));
        // Laurent derivative: d/dx (x^-1) = -x^-2
        let inv = Poly::var_pow(1, 0, -1);
        assert_eq!(inv.partial(0), Poly::var_pow(1, 0, -2).neg());
    }

    #[test]
    fn d_with_coordinate_rules() {
        // Coordinates x0, x1 with generators dx0, dx1 (ngens = nvars = 2).
        let gens = 2;
        let rules = StructureRules::new(
            vec![ExteriorExpr::zero(gens, 2); 2],
            vec![
                ExteriorExpr::gen(gens, 2, 0),
                ExteriorExpr::gen(gens, 2, 1),
            ],
        );
        // d(x0 x1 dx1) = x1 dx0 ^ dx1
        let e = ExteriorExpr::gen(gens, 2, 1)
            .mul_poly(&Poly::var(2, 0).mul(&Poly::var(2, 1)));
        let de = e.d(&rules);
        let expect = ExteriorExpr::gen(gens, 2, 0)
            .wedge(&ExteriorExpr::gen(gens, 2, 1))
            .mul_poly(&Poly::var(2, 1));
        assert_eq!(de, expect);
        // d^2 = 0 for coordinate rules
        assert!(de.d(&rules).is_zero());
    }

    fn tautological() -> PolyValuedForm {
        PolyValuedForm::new(4, (0..5).map(g).collect()).unwrap()
    }

    #[test]
    fn tautological_even_pairings_vanish() {
        let w = tautological();
        for p in [0usize, 2, 4] {
            assert!(pair_forms(&w, &w, p).unwrap().is_zero(), "p = {p}");
        }
        for p in [1usize, 3] {
            assert!(!pair_forms(&w, &w, p).unwrap().is_zero(), "p = {p}");
        }
    }

    #[test]
    fn scalar_pairing_is_componentwise_wedge() {
        // <lambda, w>_0 with lambda a V_0-valued 1-form is lambda ^ w^k.
        let lam = ExteriorExpr::gen(6, NV, 5);
        let lam_form =
            PolyValuedForm::new(0, vec![lam.clone()]).unwrap();
        let w = PolyValuedForm::new(
            4,
            (0..5).map(|i| ExteriorExpr::gen(6, NV, i)).collect(),
        )
        .unwrap();
        let paired = pair_forms(&lam_form, &w, 0).unwrap();
        for k in 0..5 {
            assert_eq!(paired.comp(k), &lam.wedge(w.comp(k)));
        }
    }

    /// Independent expansion of <w,w>_1 = 2 w_x ^ w_y on raw monomial
    /// lists, done with no shared code path beyond the wedge itself.
    #[test]
    fn omega_omega_one_matches_direct_expansion() {
        let w = tautological();
        let got = pair_forms(&w, &w, 1).unwrap();

        // w in monomial coefficients: [w0, 4w1, 6w2, 4w3, w4] on x^4..y^4.
        let mono: Vec<ExteriorExpr> = vec![
            g(0),
            g(1).scale(&rint(4)),
            g(2).scale(&rint(6)),
            g(3).scale(&rint(4)),
            g(4),
        ];
        // w_x: degree 3 list, w_x[i] = (4-i) mono[i];  w_y[i] = (i+1) mono[i+1]
        let wx: Vec<ExteriorExpr> = (0..4)
            .map(|i| mono[i].scale(&rint(4 - i as i64)))
            .collect();
        let wy: Vec<ExteriorExpr> = (0..4)
            .map(|i| mono[i + 1].scale(&rint(i as i64 + 1)))
            .collect();
        // product wx ^ wy as degree-6 monomial list, times 2
        let mut prod = vec![ExteriorExpr::zero(NG, NV); 7];
        for i in 0..4 {
            for j in 0..4 {
                prod[i + j] = prod[i + j].add(&wx[i].wedge(&wy[j]));
            }
        }
        for (k, slot) in prod.iter_mut().enumerate() {
            *slot = slot.scale(&(rint(2) / binom(6, k)));
        }
        for k in 0..7 {
            assert_eq!(got.comp(k), &prod[k], "component {k}");
        }
    }

    fn arb_expr(deg: u32) -> impl Strategy<Value = ExteriorExpr> {
        // a random homogeneous form of the given degree with small
        // polynomial coefficients
        let masks: Vec<u16> = (0u16..32)
            .filter(|m| m.count_ones() == deg)
            .collect();
        proptest::collection::vec(
            (proptest::sample::select(masks), -5i64..=5, 0usize..NV, 0i32..3),
            1..4,
        )
        .prop_map(|terms| {
            let mut e = ExteriorExpr::zero(NG, NV);
            for (mask, c, v, pw) in terms {
                let p = Poly::var_pow(NV, v, pw).scale(&rint(c));
                e = e.add(&ExteriorExpr::term(NG, p, mask));
            }
            e
        })
    }

    /// Coordinate rules on a coframe of differentials: d(x_i) = dx_i,
    /// d(dx_i) = 0. With these, d must square to zero on arbitrary
    /// expressions and obey the graded Leibniz rule.
    fn coord_rules() -> StructureRules {
        StructureRules::new(
            vec![ExteriorExpr::zero(NG, NV); NG],
            (0..NV).map(|i| ExteriorExpr::gen(NG, NV, i)).collect(),
        )
    }

    fn arb_any_expr() -> impl Strategy<Value = ExteriorExpr> {
        proptest::collection::vec(
            (0u16..(1 << NG), -4i64..=4, 0usize..NV, 0i32..3),
            1..5,
        )
        .prop_map(|terms| {
            let mut e = ExteriorExpr::zero(NG, NV);
            for (mask, c, v, pw) in terms {
                let p = Poly::var_pow(NV, v, pw).scale(&rint(c));
                e = e.add(&ExteriorExpr::term(NG, p, mask));
            }
            e
        })
    }

    fn arb_graded_pair() -> impl Strategy<Value = (ExteriorExpr, ExteriorExpr, u32, u32)> {
        (0u32..3, 0u32..3).prop_flat_map(|(da, db)| {
            (arb_expr(da), arb_expr(db), Just(da), Just(db))
        })
    }

    proptest! {
        #[test]
        fn wedge_graded_anticommutativity((a, b, da, db) in arb_graded_pair()) {
            let lhs = a.wedge(&b);
            let mut rhs = b.wedge(&a);
            if (da * db) % 2 == 1 {
                rhs = rhs.neg();
            }
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn wedge_associativity(a in arb_expr(1), b in arb_expr(1), c in arb_expr(1)) {
            prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
        }

        #[test]
        fn d_squares_to_zero_on_anything(e in arb_any_expr()) {
            let rules = coord_rules();
            prop_assert!(e.d(&rules).d(&rules).is_zero());
        }

        #[test]
        fn d_is_an_antiderivation((a, b, da, _db) in arb_graded_pair()) {
            let rules = coord_rules();
            let lhs = a.wedge(&b).d(&rules);
            let mut second = a.wedge(&b.d(&rules));
            if da % 2 == 1 {
                second = second.neg();
            }
            let rhs = a.d(&rules).wedge(&b).add(&second);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn pair_forms_symmetry_sign() {
        // <u,v>_p = (-1)^(rs+p) <v,u>_p over random-ish small forms
        let u1 = PolyValuedForm::new(2, vec![g(0), g(2).scale(&rint(3)), g(4)]).unwrap();
        let v1 = PolyValuedForm::new(
            2,
            vec![g(1).scale(&rq(1, 2)), g(3), g(0).scale(&rint(-2))],
        )
        .unwrap();
        for p in 0..=2 {
            let a = pair_forms(&u1, &v1, p).unwrap();
            let b = pair_forms(&v1, &u1, p).unwrap();
            let sign = if (1 + p) % 2 == 0 { 1 } else { -1 }; // r = s = 1
            let expect = if sign == 1 { b.clone() } else { b.neg() };
            assert_eq!(a, expect, "r=s=1 p={p}");
        }
        // 0-form against 1-form: sign (-1)^p
        let t = PolyValuedForm::new(
            2,
            (0..3)
                .map(|i| ExteriorExpr::from_poly(NG, Poly::var(NV, i % NV)))
                .collect(),
        )
        .unwrap();
        for p in 0..=2 {
            let a = pair_forms(&t, &v1, p).unwrap();
            let b = pair_forms(&v1, &t, p).unwrap();
            let expect = if p % 2 == 0 { b.clone() } else { b.neg() };
            assert_eq!(a, expect, "r=0 s=1 p={p}");
        }
    }

    #[test]
    fn render_is_stable() {
        let e = g(0)
            .wedge(&g(2))
            .mul_poly(&Poly::var(NV, 0))
            .add(&g(1).wedge(&g(2)).scale(&rint(-2)));
        assert_eq!(
            e.render(&["a", "b", "c", "d", "e"], &["t", "u"]),
            "(t) a^c  +  (-2) b^c"
        );
    }
}
