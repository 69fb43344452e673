//! Structure equations of a 2,3-integrable GL(2)-structure.
//!
//! The abstract coframe has nine generators, ordered
//! `w-4 < w-2 < w0 < w2 < w4 < lam < ph-2 < ph0 < ph2`, and the coefficient
//! ring is the polynomial ring in the nine torsion coordinates
//! `T-8, ..., T8`. This module encodes:
//!
//! - the 9x9 torsion matrix `J(T)` (the `w` columns carry a hidden factor
//!   of 1/9216 relative to their integer listings),
//! - the full exterior-derivative rules `dw`, `dlam = 0`, `dph`, `dT`,
//! - the master closure check `d^2 = 0` on all nine generators and all nine
//!   torsion coordinates, with a mutation-guarded variant,
//! - the 5x5 connection matrix in the `V_4` representation,
//! - the absorption constants of the first-order equivalence problem,
//! - the bi-secant torsion obstruction and the curvature components.

use num_traits::Zero;

use crate::binform::{pair, BinaryForm};
use crate::exterior::{pair_forms, ExteriorExpr, Poly, PolyValuedForm, StructureRules};
use crate::linalg::QMatrix;
use crate::rat::{rint, rq, Rat};
use crate::Gl2Error;

/// Number of coframe generators.
pub const NGENS: usize = 9;
/// Number of torsion variables.
pub const NVARS: usize = 9;

/// Generator names in canonical order.
pub const GEN_NAMES: [&str; 9] = [
    "w-4", "w-2", "w0", "w2", "w4", "lam", "ph-2", "ph0", "ph2",
];
/// Torsion variable names.
pub const VAR_NAMES: [&str; 9] = [
    "T-8", "T-6", "T-4", "T-2", "T0", "T2", "T4", "T6", "T8",
];

/// Generator index of `lam`.
pub const LAM: usize = 5;
/// Generator index of `ph-2`.
pub const PHM2: usize = 6;
/// Generator index of `ph0`.
pub const PH0: usize = 7;
/// Generator index of `ph2`.
pub const PH2: usize = 8;

fn tvar(i: usize) -> Poly {
    Poly::var(NVARS, i)
}

fn egen(i: usize) -> ExteriorExpr {
    ExteriorExpr::gen(NGENS, NVARS, i)
}

/// Quadratic entries of the five `w` columns of `J(T) / 9216`, listed as
/// `(coefficient, weight_a, weight_b)` for `coefficient * T_a * T_b`.
/// Row order is `dT-8, ..., dT8`; weights are even integers in [-8, 8].
type QuadEntry = (i64, i64, i64);

const OMEGA_COLUMNS: [[&[QuadEntry]; 9]; 5] = [
    // w-4 column
    [
        &[(280, -8, 4), (-280, -6, 2)],
        &[(-245, -4, 2), (70, -8, 6), (175, -6, 4)],
        &[(70, -4, 4), (-210, -2, 2), (130, -6, 6), (10, -8, 8)],
        &[(-175, 0, 2), (-35, -2, 4), (35, -6, 8), (175, -4, 6)],
        &[(84, -4, 8), (196, -2, 6), (-140, 2, 2), (-140, 0, 4)],
        &[(-350, 2, 4), (175, 0, 6), (175, -2, 8)],
        &[(350, 0, 8), (-350, 4, 4)],
        &[(700, 2, 8), (-700, 6, 4)],
        &[(-1400, 6, 6), (1400, 8, 4)],
    ],
    // w-2 column
    [
        &[(-1400, -8, 2), (1400, -6, 0)],
        &[(-385, -8, 4), (-840, -6, 2), (1225, -4, 0)],
        &[(-280, -4, 2), (1050, -2, 0), (-70, -8, 6), (-700, -6, 4)],
        &[(-910, -4, 4), (280, -2, 2), (875, 0, 0), (-240, -6, 6), (-5, -8, 8)],
        &[(1540, 0, 2), (-952, -2, 4), (-28, -6, 8), (-560, -4, 6)],
        &[(-105, -4, 8), (-1120, -2, 6), (1400, 2, 2), (-175, 0, 4)],
        &[(2100, 2, 4), (-1750, 0, 6), (-350, -2, 8)],
        &[(2450, 4, 4), (-1050, 0, 8), (-1400, 2, 6)],
        &[(-2800, 2, 8), (2800, 6, 4)],
    ],
    // w0 column
    [
        &[(-2800, -6, -2), (2800, -8, 0)],
        &[(-2450, -4, -2), (875, -8, 2), (1575, -6, 0)],
        &[(210, -8, 4), (-2100, -2, -2), (1540, -6, 2), (350, -4, 0)],
        &[(1890, -4, 2), (-2625, -2, 0), (35, -8, 6), (700, -6, 4)],
        &[(1568, -4, 4), (336, -2, 2), (-2100, 0, 0), (192, -6, 6), (4, -8, 8)],
        &[(-2625, 0, 2), (1890, -2, 4), (35, -6, 8), (700, -4, 6)],
        &[(210, -4, 8), (1540, -2, 6), (-2100, 2, 2), (350, 0, 4)],
        &[(-2450, 2, 4), (1575, 0, 6), (875, -2, 8)],
        &[(2800, 0, 8), (-2800, 2, 6)],
    ],
    // w2 column
    [
        &[(2800, -4, -6), (-2800, -2, -8)],
        &[(-1400, -6, -2), (-1050, -8, 0), (2450, -4, -4)],
        &[(2100, -4, -2), (-350, -8, 2), (-1750, -6, 0)],
        &[(-105, -8, 4), (1400, -2, -2), (-1120, -6, 2), (-175, -4, 0)],
        &[(-952, -4, 2), (1540, -2, 0), (-28, -8, 6), (-560, -6, 4)],
        &[(-910, -4, 4), (280, -2, 2), (875, 0, 0), (-240, -6, 6), (-5, -8, 8)],
        &[(1050, 0, 2), (-280, -2, 4), (-70, -6, 8), (-700, -4, 6)],
        &[(1225, 0, 4), (-385, -4, 8), (-840, -2, 6)],
        &[(1400, 0, 6), (-1400, -2, 8)],
    ],
    // w4 column
    [
        &[(1400, -4, -8), (-1400, -6, -6)],
        &[(-700, -4, -6), (700, -2, -8)],
        &[(-350, -4, -4), (350, -8, 0)],
        &[(-350, -4, -2), (175, -8, 2), (175, -6, 0)],
        &[(84, -8, 4), (-140, -2, -2), (196, -6, 2), (-140, -4, 0)],
        &[(-35, -4, 2), (-175, -2, 0), (35, -8, 6), (175, -6, 4)],
        &[(70, -4, 4), (-210, -2, 2), (130, -6, 6), (10, -8, 8)],
        &[(70, -6, 8), (-245, -2, 4), (175, -4, 6)],
        &[(-280, -2, 6), (280, -4, 8)],
    ],
];

fn weight_index(w: i64) -> usize {
    ((w + 8) / 2) as usize
}

/// The 9x9 matrix `J(T)` with symbolic polynomial entries; column order
/// `(w-4, w-2, w0, w2, w4, lam, ph-2, ph0, ph2)`.
#[derive(Clone, Debug)]
pub struct TorsionMatrix {
    entries: Vec<Vec<Poly>>,
}

impl TorsionMatrix {
    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.entries[row][col]
    }

    /// Negates one entry; the closure check must then fail. Used as a
    /// mutation guard against vacuously-passing verifications.
    pub fn negate_entry(&mut self, row: usize, col: usize) {
        self.entries[row][col] = self.entries[row][col].neg();
    }

    /// Evaluates all entries at a torsion value `v` in `V_8`.
    pub fn eval(&self, v: &BinaryForm) -> QMatrix {
        let vals = v.coeffs().to_vec();
        QMatrix::from_fn(9, 9, |i, j| self.entries[i][j].eval(&vals))
    }
}

/// Builds the symbolic matrix. The quadratic `w` columns carry a common
/// factor `9216 = 2^10 3^2` on top of the integer tables above (the tables
/// pair against `9216 w^c`). The closure check certifies this
/// normalization: dividing by the factor instead breaks `d^2 = 0`.
pub fn jmatrix_symbolic() -> TorsionMatrix {
    let scale = rint(9216);
    let mut entries = vec![vec![Poly::zero(NVARS); 9]; 9];
    for (col, col_data) in OMEGA_COLUMNS.iter().enumerate() {
        for (row, terms) in col_data.iter().enumerate() {
            let mut p = Poly::zero(NVARS);
            for &(c, wa, wb) in terms.iter() {
                let t = tvar(weight_index(wa))
                    .mul(&tvar(weight_index(wb)))
                    .scale(&rint(c));
                p = p.add(&t);
            }
            entries[row][col] = p.scale(&scale);
        }
    }
    for row in 0..9 {
        let w = 2 * row as i64 - 8;
        // lam column: the identity map on T
        entries[row][LAM] = tvar(row);
        // ph-2 column: -(16 - 2 row) T_{w+2}
        if row < 8 {
            entries[row][PHM2] = tvar(row + 1).scale(&rint(-(16 - 2 * row as i64)));
        }
        // ph0 column: (16 - 4 row) T_w, vanishing in the middle row
        if row != 4 {
            entries[row][PH0] = tvar(row).scale(&rint(16 - 4 * row as i64));
        }
        // ph2 column: 2 row T_{w-2}
        if row > 0 {
            entries[row][PH2] = tvar(row - 1).scale(&rint(2 * row as i64));
        }
        debug_assert_eq!(weight_index(w), row);
    }
    TorsionMatrix { entries }
}

/// `J(v)` evaluated at a degree-8 form, as an exact rational matrix.
pub fn jmatrix(v: &BinaryForm) -> Result<QMatrix, Gl2Error> {
    if v.degree() != 8 {
        return Err(Gl2Error::DegreeMismatch {
            expected: 8,
            got: v.degree(),
        });
    }
    Ok(jmatrix_symbolic().eval(v))
}

/// The tautological `V_4`-valued 1-form on the structure coframe.
pub fn omega_form() -> PolyValuedForm {
    PolyValuedForm::new(4, (0..5).map(egen).collect()).unwrap()
}

/// The connection `V_2`-valued 1-form `(ph-2, ph0, ph2)`.
pub fn phi_form() -> PolyValuedForm {
    PolyValuedForm::new(2, vec![egen(PHM2), egen(PH0), egen(PH2)]).unwrap()
}

/// The scaling 1-form `lam` as a `V_0`-valued form.
pub fn lambda_form() -> PolyValuedForm {
    PolyValuedForm::new(0, vec![egen(LAM)]).unwrap()
}

/// The torsion as a `V_8`-valued 0-form with symbolic coordinates.
pub fn torsion_form() -> PolyValuedForm {
    PolyValuedForm::new(
        8,
        (0..9)
            .map(|i| ExteriorExpr::from_poly(NGENS, tvar(i)))
            .collect(),
    )
    .unwrap()
}

fn structure_rules_with(j: &TorsionMatrix) -> StructureRules {
    let omega = omega_form();
    let phi = phi_form();
    let lam = lambda_form();
    let t = torsion_form();

    let ww1 = pair_forms(&omega, &omega, 1).unwrap();
    let ww3 = pair_forms(&omega, &omega, 3).unwrap();

    // dw = -<ph,w>_1 - <lam,w>_0 + <T, <w,w>_1>_5
    let domega = pair_forms(&phi, &omega, 1)
        .unwrap()
        .neg()
        .add(&pair_forms(&lam, &omega, 0).unwrap().neg())
        .add(&pair_forms(&t, &ww1, 5).unwrap());

    // dph = -1/2 <ph,ph>_1 - 2080 <<T,T>_8, <w,w>_3>_0
    //       + 64 <<T,T>_6, <w,w>_3>_2 - 88/7 <<T,T>_6, <w,w>_1>_4
    //       + 24/7 <<T,T>_4, <w,w>_1>_6
    let tt8 = pair_forms(&t, &t, 8).unwrap();
    let tt6 = pair_forms(&t, &t, 6).unwrap();
    let tt4 = pair_forms(&t, &t, 4).unwrap();
    let dphi = pair_forms(&phi, &phi, 1)
        .unwrap()
        .scale(&rq(-1, 2))
        .add(&pair_forms(&tt8, &ww3, 0).unwrap().scale(&rint(-2080)))
        .add(&pair_forms(&tt6, &ww3, 2).unwrap().scale(&rint(64)))
        .add(&pair_forms(&tt6, &ww1, 4).unwrap().scale(&rq(-88, 7)))
        .add(&pair_forms(&tt4, &ww1, 6).unwrap().scale(&rq(24, 7)));

    let mut gen_rules = Vec::with_capacity(9);
    for k in 0..5 {
        gen_rules.push(domega.comp(k).clone());
    }
    gen_rules.push(ExteriorExpr::zero(NGENS, NVARS)); // dlam = 0
    for k in 0..3 {
        gen_rules.push(dphi.comp(k).clone());
    }

    // dT_i = sum_j J_ij gen_j
    let var_rules = (0..9)
        .map(|i| {
            let mut acc = ExteriorExpr::zero(NGENS, NVARS);
            for jcol in 0..9 {
                let cell = j.entry(i, jcol);
                if !cell.is_zero() {
                    acc = acc.add(&egen(jcol).mul_poly(cell));
                }
            }
            acc
        })
        .collect();

    StructureRules::new(gen_rules, var_rules)
}

/// The full exterior-derivative rules of the integrable structure:
/// `d` of all nine generators and all nine torsion coordinates.
pub fn structure_rules() -> StructureRules {
    structure_rules_with(&jmatrix_symbolic())
}

/// Outcome of the `d^2 = 0` verification: one entry per generator and per
/// torsion coordinate, each with its residual.
pub struct ClosureReport {
    pub residuals: Vec<(String, ExteriorExpr)>,
}

impl ClosureReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(|(_, r)| r.is_zero())
    }

    pub fn zero_map(&self) -> Vec<(String, bool)> {
        self.residuals
            .iter()
            .map(|(n, r)| (n.clone(), r.is_zero()))
            .collect()
    }
}

/// Computes all 18 residuals `d(d(gen))` and `d(d(T_i))` under the given
/// torsion matrix.
pub fn verify_closure_with(j: &TorsionMatrix) -> ClosureReport {
    let rules = structure_rules_with(j);
    let mut residuals = Vec::with_capacity(18);
    for (i, name) in GEN_NAMES.iter().enumerate() {
        let r = rules.gen_rules[i].d(&rules);
        residuals.push((format!("d2 {name}"), r));
    }
    for (i, name) in VAR_NAMES.iter().enumerate() {
        let r = rules.var_rules[i].d(&rules);
        residuals.push((format!("d2 {name}"), r));
    }
    ClosureReport { residuals }
}

/// The master closure check with the built-in torsion matrix.
pub fn verify_closure() -> ClosureReport {
    verify_closure_with(&jmatrix_symbolic())
}

/// True when at least one residual is nonzero under the given matrix.
/// Checks the torsion residual of `first_row` before anything else, so a
/// mutation in that row is usually detected without a full scan.
pub fn closure_broken(j: &TorsionMatrix, first_row: usize) -> bool {
    let rules = structure_rules_with(j);
    if !rules.var_rules[first_row].d(&rules).is_zero() {
        return true;
    }
    for r in &rules.gen_rules {
        if !r.d(&rules).is_zero() {
            return true;
        }
    }
    for (i, r) in rules.var_rules.iter().enumerate() {
        if i != first_row && !r.d(&rules).is_zero() {
            return true;
        }
    }
    false
}

/// Connection-matrix entry table in the `V_4` representation: each entry is
/// a linear combination `(c_phm2, c_ph0, c_ph2, c_lam)`.
const CONN_TABLE: [[(i64, i64, i64, i64); 5]; 5] = [
    [(0, -8, 0, 1), (8, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)],
    [(0, 0, -2, 0), (0, -4, 0, 1), (6, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)],
    [(0, 0, 0, 0), (0, 0, -4, 0), (0, 0, 0, 1), (4, 0, 0, 0), (0, 0, 0, 0)],
    [(0, 0, 0, 0), (0, 0, 0, 0), (0, 0, -6, 0), (0, 4, 0, 1), (2, 0, 0, 0)],
    [(0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0), (0, 0, -8, 0), (0, 8, 0, 1)],
];

/// The 5x5 matrix of `u -> <ph,u>_1 + lam u` on `V_4`, evaluated at a
/// rational connection value `ph` in `V_2` and scalar `lam`.
pub fn connection_matrix(phi: &BinaryForm, lam: &Rat) -> Result<QMatrix, Gl2Error> {
    if phi.degree() != 2 {
        return Err(Gl2Error::DegreeMismatch {
            expected: 2,
            got: phi.degree(),
        });
    }
    let c = phi.coeffs();
    Ok(QMatrix::from_fn(5, 5, |i, j| {
        let (a, b, d, l) = CONN_TABLE[i][j];
        &c[0] * rint(a) + &c[1] * rint(b) + &c[2] * rint(d) + lam * rint(l)
    }))
}

/// The same matrix with symbolic 1-form entries on the structure coframe.
pub fn connection_matrix_sym() -> Vec<Vec<ExteriorExpr>> {
    (0..5)
        .map(|i| {
            (0..5)
                .map(|j| {
                    let (a, b, d, l) = CONN_TABLE[i][j];
                    egen(PHM2)
                        .scale(&rint(a))
                        .add(&egen(PH0).scale(&rint(b)))
                        .add(&egen(PH2).scale(&rint(d)))
                        .add(&egen(LAM).scale(&rint(l)))
                })
                .collect()
        })
        .collect()
}

/// Essential torsion of a generic pseudo-connection, one component per
/// irreducible module.
#[derive(Clone, Debug)]
pub struct FullTorsion {
    pub t2: BinaryForm,
    pub t6: BinaryForm,
    pub t8: BinaryForm,
    pub t10: BinaryForm,
}

impl FullTorsion {
    pub fn new(
        t2: BinaryForm,
        t6: BinaryForm,
        t8: BinaryForm,
        t10: BinaryForm,
    ) -> Result<Self, Gl2Error> {
        for (t, d) in [(&t2, 2), (&t6, 6), (&t8, 8), (&t10, 10)] {
            if t.degree() != d {
                return Err(Gl2Error::DegreeMismatch {
                    expected: d,
                    got: t.degree(),
                });
            }
        }
        Ok(FullTorsion { t2, t6, t8, t10 })
    }

    pub fn zero() -> Self {
        FullTorsion {
            t2: BinaryForm::zero(2),
            t6: BinaryForm::zero(6),
            t8: BinaryForm::zero(8),
            t10: BinaryForm::zero(10),
        }
    }

    pub fn from_t8(t8: BinaryForm) -> Result<Self, Gl2Error> {
        Self::new(BinaryForm::zero(2), BinaryForm::zero(6), t8, BinaryForm::zero(10))
    }
}

/// The unabsorbable bi-secant torsion components `(tau^-2, tau^0, tau^2)`.
/// `tau^0` vanishes for all `GL(2)`-translates exactly when the torsion is
/// pure `T_8`.
pub fn bisecant_obstruction(ft: &FullTorsion) -> (Rat, Rat, Rat) {
    let tm2 = rint(48) * ft.t2.coeff_weight(-2)
        + rint(8640) * ft.t6.coeff_weight(-2)
        + rint(322_560) * ft.t8.coeff_weight(-2)
        - rint(4_838_400) * ft.t10.coeff_weight(-2);
    let t0 = rint(-96) * ft.t2.coeff_weight(0) + rint(23_040) * ft.t6.coeff_weight(0)
        - rint(4_838_400) * ft.t10.coeff_weight(0);
    let tp2 = rint(48) * ft.t2.coeff_weight(2) + rint(8640) * ft.t6.coeff_weight(2)
        - rint(322_560) * ft.t8.coeff_weight(2)
        - rint(4_838_400) * ft.t10.coeff_weight(2);
    (tm2, t0, tp2)
}

/// Second-order invariants of the 2,3-integrable case; all are quadratic
/// functions of the torsion.
#[derive(Clone, Debug)]
pub struct CurvatureComponents {
    pub q4: BinaryForm,
    pub q8: BinaryForm,
    pub s4: BinaryForm,
    pub s8: BinaryForm,
    pub r20: Rat,
}

/// `Q_4 = <T,T>_6`, `Q_8 = <T,T>_4`, with `7 S_8 = 24 Q_8`,
/// `21 S_4 = 8 Q_4`, and `R^2_0 = -2080 <T,T>_8`.
pub fn curvature_components(t: &BinaryForm) -> Result<CurvatureComponents, Gl2Error> {
    if t.degree() != 8 {
        return Err(Gl2Error::DegreeMismatch {
            expected: 8,
            got: t.degree(),
        });
    }
    let q4 = pair(t, t, 6)?;
    let q8 = pair(t, t, 4)?;
    let s4 = q4.scale(&rq(8, 21));
    let s8 = q8.scale(&rq(24, 7));
    let r20 = pair(t, t, 8)?.coeffs()[0].clone() * rint(-2080);
    Ok(CurvatureComponents { q4, q8, s4, s8, r20 })
}

/// Solves the two skewing identities of the equivalence method for the
/// absorption constants, returning
/// `(a2, b2, a4, b4, a6, b6, c4, d4)`.
pub fn absorption_constants() -> Result<[Rat; 8], Gl2Error> {
    // Coframe: the five components of the tautological form.
    // Variables: P2 (3), P4 (5), P6 (7), Q4 (5).
    const NG: usize = 5;
    const NV: usize = 20;
    let gen = |i: usize| ExteriorExpr::gen(NG, NV, i);
    let vform = |deg: usize, base: usize| {
        PolyValuedForm::new(
            deg,
            (0..=deg)
                .map(|k| ExteriorExpr::from_poly(NG, Poly::var(NV, base + k)))
                .collect(),
        )
        .unwrap()
    };

    let omega = PolyValuedForm::new(4, (0..5).map(gen).collect()).unwrap();
    let p2 = vform(2, 0);
    let p4 = vform(4, 3);
    let p6 = vform(6, 8);
    let q4 = vform(4, 15);

    let ww1 = pair_forms(&omega, &omega, 1)?;
    let ww3 = pair_forms(&omega, &omega, 3)?;

    // P(w) = <P2,w>_2 + <P4,w>_3 + <P6,w>_4, a V_2-valued 1-form.
    let p_of_w = pair_forms(&p2, &omega, 2)?
        .add(&pair_forms(&p4, &omega, 3)?)
        .add(&pair_forms(&p6, &omega, 4)?);
    let lhs_p = pair_forms(&p_of_w, &omega, 1)?;
    let basis_p = [
        pair_forms(&p2, &ww3, 0)?, // a2
        pair_forms(&p2, &ww1, 2)?, // b2
        pair_forms(&p4, &ww3, 1)?, // a4
        pair_forms(&p4, &ww1, 3)?, // b4
        pair_forms(&p6, &ww3, 2)?, // a6
        pair_forms(&p6, &ww1, 4)?, // b6
    ];
    let sol_p = solve_components(&lhs_p, &basis_p)?;

    // Q(w) = <Q4,w>_4, a scalar-valued 1-form.
    let q_of_w = pair_forms(&q4, &omega, 4)?;
    let lhs_q = pair_forms(&q_of_w, &omega, 0)?;
    let basis_q = [
        pair_forms(&q4, &ww3, 1)?, // c4
        pair_forms(&q4, &ww1, 3)?, // d4
    ];
    let sol_q = solve_components(&lhs_q, &basis_q)?;

    Ok([
        sol_p[0].clone(),
        sol_p[1].clone(),
        sol_p[2].clone(),
        sol_p[3].clone(),
        sol_p[4].clone(),
        sol_p[5].clone(),
        sol_q[0].clone(),
        sol_q[1].clone(),
    ])
}

/// Expresses `lhs` as a unique linear combination of `basis`, comparing
/// coefficients over every (component, wedge monomial, coefficient
/// monomial) slot.
fn solve_components(
    lhs: &PolyValuedForm,
    basis: &[PolyValuedForm],
) -> Result<Vec<Rat>, Gl2Error> {
    use std::collections::BTreeMap;
    // one linear constraint per (component, wedge monomial, coefficient
    // monomial) slot
    type Slot = (usize, u16, Vec<i32>);
    let width = basis.len();
    let mut rows: BTreeMap<Slot, (Vec<Rat>, Rat)> = BTreeMap::new();
    for (bi, b) in basis.iter().enumerate() {
        for (k, comp) in b.comps().iter().enumerate() {
            for (mask, pol) in comp.terms() {
                for (exp, c) in pol.terms() {
                    rows.entry((k, *mask, exp.clone()))
                        .or_insert_with(|| (vec![Rat::zero(); width], Rat::zero()))
                        .0[bi] = c.clone();
                }
            }
        }
    }
    for (k, comp) in lhs.comps().iter().enumerate() {
        for (mask, pol) in comp.terms() {
            for (exp, c) in pol.terms() {
                rows.entry((k, *mask, exp.clone()))
                    .or_insert_with(|| (vec![Rat::zero(); width], Rat::zero()))
                    .1 = c.clone();
            }
        }
    }
    let mat = QMatrix::from_rows(rows.values().map(|(r, _)| r.clone()).collect());
    let rhs: Vec<Rat> = rows.values().map(|(_, v)| v.clone()).collect();
    if mat.rank() != width {
        return Err(Gl2Error::InconsistentSystem);
    }
    mat.solve(&rhs)
}
