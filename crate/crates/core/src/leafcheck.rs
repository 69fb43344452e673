//! Rank and tangency checks for the leaf classification.
//!
//! For a nontrivial octic `v` with `k` distinct complex roots, the matrix
//! `J(v)` must have rank `k + 1`, its determinant must vanish together
//! with the discriminant, and the column span of `J(v)` must equal the
//! tangent space of the root-type stratum at `v`. All ranks are computed
//! by exact Gaussian elimination over the rationals; there are no
//! thresholds anywhere in this module.

use num_traits::Zero;

use crate::binform::{discriminant, BinaryForm};
use crate::linalg::QMatrix;
use crate::rat::{rat_to_string, Rat};
use crate::roottype::{FactoredOctic, RootType};
use crate::structeq::jmatrix;
use crate::Gl2Error;

/// Outcome of the tangent-space comparison at one representative.
#[derive(Clone, Debug)]
pub struct TangencyReport {
    pub root_type: RootType,
    pub k: usize,
    pub rank_j: usize,
    pub rank_tangent: usize,
    pub rank_joint: usize,
    pub verdict: bool,
}

impl TangencyReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rootType": self.root_type.to_string(),
            "k": self.k,
            "rankJ": self.rank_j,
            "rankTangent": self.rank_tangent,
            "rankJoint": self.rank_joint,
            "verdict": self.verdict,
        })
    }
}

/// Spanning set of the tangent space of the stratum at `v = expand(f)`:
/// for each distinct linear factor `l`, the forms `x v/l` and `y v/l`;
/// for each irreducible quadratic factor `q`, the forms `xy v/q` and
/// `y^2 v/q`; plus `v` itself for the scale direction. Multiplicity
/// prefactors are omitted as they do not change the span.
pub fn tangent_basis(f: &FactoredOctic) -> Vec<BinaryForm> {
    let x = BinaryForm::from_monomial(vec![Rat::from_integer(1.into()), Rat::zero()]);
    let y = BinaryForm::from_monomial(vec![Rat::zero(), Rat::from_integer(1.into())]);
    let mut basis = Vec::new();
    for i in 0..f.linear.len() {
        let w = f.expand_without_linear(i);
        basis.push(x.mul(&w));
        basis.push(y.mul(&w));
    }
    for i in 0..f.quadratic.len() {
        let w = f.expand_without_quadratic(i);
        basis.push(x.mul(&y.mul(&w)));
        basis.push(y.mul(&y.mul(&w)));
    }
    basis.push(f.expand());
    basis
}

fn columns_matrix(forms: &[BinaryForm]) -> QMatrix {
    QMatrix::from_fn(9, forms.len(), |i, j| forms[j].coeffs()[i].clone())
}

/// Compares the column span of `J(v)` with the tangent space of the root
/// type at `v`, by exact ranks of each matrix and of their concatenation.
pub fn verify_leaf_tangency(f: &FactoredOctic) -> Result<TangencyReport, Gl2Error> {
    verify_leaf_tangency_with(f, &jmatrix(&f.expand())?)
}

/// Same check against a caller-supplied matrix; used by the mutation
/// control, which must turn the verdict false.
pub fn verify_leaf_tangency_with(
    f: &FactoredOctic,
    j: &QMatrix,
) -> Result<TangencyReport, Gl2Error> {
    let rt = f.root_type();
    let k = rt.distinct_roots();
    let tangent = columns_matrix(&tangent_basis(f));
    let rank_j = j.rank();
    let rank_tangent = tangent.rank();
    let rank_joint = j.hcat(&tangent).rank();
    let verdict = rank_j == k + 1 && rank_tangent == k + 1 && rank_joint == k + 1;
    Ok(TangencyReport {
        root_type: rt,
        k,
        rank_j,
        rank_tangent,
        rank_joint,
        verdict,
    })
}

/// `rank J(v) = k + 1` for the factored representative.
pub fn verify_rank_law(f: &FactoredOctic) -> Result<bool, Gl2Error> {
    let j = jmatrix(&f.expand())?;
    Ok(j.rank() == f.root_type().distinct_roots() + 1)
}

/// Checks that `det J(v) / disc(v)` is one and the same constant across
/// all `distinct` samples (by cross-multiplication, avoiding division),
/// that `det J = disc = 0` on the `repeated` samples, and returns the
/// measured constant.
pub fn verify_det_disc_ratio(
    distinct: &[BinaryForm],
    repeated: &[BinaryForm],
) -> Result<Rat, Gl2Error> {
    if distinct.len() < 2 {
        return Err(Gl2Error::Invalid(
            "need at least two samples with distinct roots".into(),
        ));
    }
    let data: Vec<(Rat, Rat)> = distinct
        .iter()
        .map(|v| Ok((jmatrix(v)?.det(), discriminant(v)?)))
        .collect::<Result<_, Gl2Error>>()?;
    for (_, disc) in &data {
        if disc.is_zero() {
            return Err(Gl2Error::Invalid(
                "sample with vanishing discriminant in the distinct set".into(),
            ));
        }
    }
    let (d0, s0) = &data[0];
    for (di, si) in &data[1..] {
        if d0 * si != di * s0 {
            return Err(Gl2Error::Invalid(format!(
                "det J / disc is not constant: {} vs {}",
                rat_to_string(&(d0 / s0)),
                rat_to_string(&(di / si)),
            )));
        }
    }
    for v in repeated {
        if !jmatrix(v)?.det().is_zero() || !discriminant(v)?.is_zero() {
            return Err(Gl2Error::Invalid(
                "repeated-root sample with nonzero det J or disc".into(),
            ));
        }
    }
    Ok(d0 / s0)
}
