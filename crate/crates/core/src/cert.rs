//! Linear-independence certificates for VC-bounded uniform families.
//!
//! Evaluation matrices are laid out with one row per evaluation point `v_A`
//! and one column per polynomial, so entry `(r, c)` is `poly_c(v_{A_r})`.
//! In that layout the triangular criterion reads "lower-triangular with a
//! nonzero diagonal".

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::poly::{f_poly, g_poly, h_poly, y_poly, MultilinearPoly};
use crate::subset::{binomial, binomial_prefix_sum, Subset};
use crate::system::SetSystem;

/// Witness sets `B_i ⊊ F_i` with `F_i ∩ F ≠ B_i` for every member `F`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct WitnessAssignment(Vec<Subset>);

impl WitnessAssignment {
    /// Wraps explicit witnesses after checking them against `family`.
    pub fn new(family: &SetSystem, witnesses: Vec<Subset>) -> Result<Self> {
        let w = Self(witnesses);
        w.validate(family)?;
        Ok(w)
    }

    pub fn as_slice(&self) -> &[Subset] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Subset {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, family: &SetSystem) -> Result<()> {
        if self.0.len() != family.len() {
            return Err(Error::Precondition(format!(
                "{} witnesses for {} members",
                self.0.len(),
                family.len()
            )));
        }
        for (index, (&b, &fi)) in self.0.iter().zip(family.members()).enumerate() {
            if !b.is_proper_subset_of(fi) {
                return Err(Error::InvalidWitness {
                    index,
                    message: format!("{b} is not a proper subset of {fi}"),
                });
            }
            if let Some(j) = family.members().iter().position(|&f| fi.intersection(f) == b) {
                return Err(Error::InvalidWitness {
                    index,
                    message: format!("{b} is the trace of member {j} on {fi}"),
                });
            }
        }
        Ok(())
    }
}

/// For each member, the first subset in (size, mask) order that is not a
/// trace of the family on that member.
pub fn find_witnesses(family: &SetSystem, d: usize) -> Result<WitnessAssignment> {
    family.require_uniform(d + 1)?;
    let mut out = Vec::with_capacity(family.len());
    for (index, &fi) in family.members().iter().enumerate() {
        let traces = family.trace(fi);
        let witness = (0..=fi.len())
            .flat_map(|k| fi.k_subsets(k))
            .find(|b| !traces.contains(b))
            .ok_or(Error::Shattered { index, set: fi, d })?;
        out.push(witness);
    }
    Ok(WitnessAssignment(out))
}

/// Builds `matrix[r][c] = polys[c](vectors[r])`.
pub fn eval_matrix(vectors: &[Subset], polys: &[MultilinearPoly]) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> = vectors
        .par_iter()
        .map(|&v| polys.iter().map(|p| p.eval(v)).collect())
        .collect();
    IntMatrix::from_fn(vectors.len(), polys.len(), |r, c| rows[r][c].clone())
}

/// Where the triangular criterion failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `polys[index](vectors[index]) == 0`.
    ZeroDiagonal { index: usize },
    /// `polys[poly](vectors[vector]) != 0` with `poly > vector`.
    NonzeroAfter { poly: usize, vector: usize, value: String },
}

/// Checks the triangular criterion directly by evaluation: each polynomial
/// is nonzero at its own point and vanishes at every earlier point.
pub fn triangular_criterion(polys: &[MultilinearPoly], vectors: &[Subset]) -> Result<(), Violation> {
    if polys.len() != vectors.len() {
        return Err(Violation::ZeroDiagonal {
            index: polys.len().min(vectors.len()),
        });
    }
    for (i, p) in polys.iter().enumerate() {
        if p.eval(vectors[i]).is_zero() {
            return Err(Violation::ZeroDiagonal { index: i });
        }
        for (j, &v) in vectors[..i].iter().enumerate() {
            let value = p.eval(v);
            if !value.is_zero() {
                return Err(Violation::NonzeroAfter {
                    poly: i,
                    vector: j,
                    value: value.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Same criterion read off an evaluation matrix.
fn matrix_violation(m: &IntMatrix) -> Option<Violation> {
    let above = m.first_above_diagonal();
    let zero = m.first_zero_diagonal();
    // Report whichever comes first in polynomial order.
    let above = above.map(|(r, c)| Violation::NonzeroAfter {
        poly: c,
        vector: r,
        value: m.get(r, c).to_string(),
    });
    match (above, zero) {
        (None, None) => None,
        (Some(v), None) => Some(v),
        (None, Some(i)) => Some(Violation::ZeroDiagonal { index: i }),
        (Some(Violation::NonzeroAfter { poly, vector, value }), Some(i)) => Some(if poly <= i {
            Violation::NonzeroAfter { poly, vector, value }
        } else {
            Violation::ZeroDiagonal { index: i }
        }),
        (Some(v), Some(_)) => Some(v),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum PolyLabel {
    #[serde(rename = "f")]
    F {
        index: usize,
        member: Subset,
        witness: Subset,
    },
    #[serde(rename = "h")]
    H { set: Subset },
    #[serde(rename = "g")]
    G { set: Subset },
    #[serde(rename = "y")]
    Y { y: Subset, z: Subset },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VectorRole {
    F,
    H,
    G,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VectorLabel {
    pub role: VectorRole,
    pub set: Subset,
}

/// Certificate that `f_{F_i}`, `h_H` and `g_G` are linearly independent in
/// the multilinear space of degree at most `d`, giving `|F| <= |∂_d F|`.
#[derive(Debug, Clone)]
pub struct ShadowCertificate {
    pub n: usize,
    pub d: usize,
    pub family: SetSystem,
    pub witnesses: WitnessAssignment,
    pub polys: Vec<MultilinearPoly>,
    pub poly_labels: Vec<PolyLabel>,
    pub vector_labels: Vec<VectorLabel>,
    pub matrix: IntMatrix,
    pub violation: Option<Violation>,
    pub max_degree: Option<usize>,
    pub rank: usize,
    pub shadow_size: usize,
    pub h_count: usize,
    pub g_count: usize,
}

impl ShadowCertificate {
    pub fn family_size(&self) -> usize {
        self.family.len()
    }

    pub fn row_count(&self) -> usize {
        self.polys.len()
    }

    /// `sum_{i<=d} C(n, i)`.
    pub fn space_dimension(&self) -> u128 {
        binomial_prefix_sum(self.n as u64, self.d as u64)
    }

    pub fn frankl_pach_bound(&self) -> u128 {
        binomial(self.n as u64, self.d as u64)
    }

    pub fn is_triangular(&self) -> bool {
        self.violation.is_none()
    }

    pub fn degrees_ok(&self) -> bool {
        self.max_degree.is_none_or(|deg| deg <= self.d)
    }

    /// `|F| + sum_{i<d} C(n,i) + (C(n,d) - |∂_d F|) <= sum_{i<=d} C(n,i)`.
    pub fn count_inequality_holds(&self) -> bool {
        (self.row_count() as u128) <= self.space_dimension()
    }

    pub fn passes(&self) -> bool {
        self.is_triangular()
            && self.degrees_ok()
            && self.rank == self.row_count()
            && self.count_inequality_holds()
            && self.family_size() <= self.shadow_size
            && self.family_size() as u128 <= self.frankl_pach_bound()
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            version: crate::VERSION,
            n: self.n,
            d: self.d,
            family: self.family.members().to_vec(),
            witnesses: self.witnesses.clone(),
            rows: self.vector_labels.clone(),
            columns: self.poly_labels.clone(),
            matrix: self.matrix.to_decimal_rows(),
            verdict: Verdict {
                pass: self.passes(),
                triangular: self.is_triangular(),
                first_violation: self.violation.clone(),
                degree_at_most_d: self.degrees_ok(),
                rank: self.rank,
                row_count: self.row_count(),
            },
            count: CountInequality {
                family_size: self.family_size(),
                h_count: self.h_count,
                g_count: self.g_count,
                lhs: self.row_count() as u128,
                space_dimension: self.space_dimension(),
                holds: self.count_inequality_holds(),
            },
            bounds: Bounds {
                family_size: self.family_size(),
                shadow_size: self.shadow_size,
                frankl_pach: self.frankl_pach_bound(),
                shadow_bound_holds: self.family_size() <= self.shadow_size,
                frankl_pach_holds: self.family_size() as u128 <= self.frankl_pach_bound(),
            },
        }
    }
}

/// JSON export; field order is the output key order.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateJson {
    pub version: &'static str,
    pub n: usize,
    pub d: usize,
    pub family: Vec<Subset>,
    pub witnesses: WitnessAssignment,
    pub rows: Vec<VectorLabel>,
    pub columns: Vec<PolyLabel>,
    pub matrix: Vec<Vec<String>>,
    pub verdict: Verdict,
    pub count: CountInequality,
    pub bounds: Bounds,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub pass: bool,
    pub triangular: bool,
    pub first_violation: Option<Violation>,
    pub degree_at_most_d: bool,
    pub rank: usize,
    pub row_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountInequality {
    pub family_size: usize,
    pub h_count: usize,
    pub g_count: usize,
    pub lhs: u128,
    pub space_dimension: u128,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Bounds {
    pub family_size: usize,
    pub shadow_size: usize,
    pub frankl_pach: u128,
    pub shadow_bound_holds: bool,
    pub frankl_pach_holds: bool,
}

/// Sets of size at most `d - 1` in (size, mask) order.
fn low_sets(family: &SetSystem, d: usize) -> Vec<Subset> {
    match d.checked_sub(1) {
        Some(top) => family.ground().subsets_up_to(top).collect(),
        None => Vec::new(),
    }
}

/// Builds and checks the shadow certificate for a `(d+1)`-uniform family of
/// VC-dimension at most `d`.
pub fn triangular_certificate(family: &SetSystem, d: usize) -> Result<ShadowCertificate> {
    let witnesses = find_witnesses(family, d)?;
    let n = family.n();
    let shadow = family.shadow(d);
    let h_sets = low_sets(family, d);
    let g_sets: Vec<Subset> = family
        .ground()
        .k_subsets(d)
        .filter(|g| shadow.members().binary_search(g).is_err())
        .collect();

    let mut polys = Vec::with_capacity(family.len() + h_sets.len() + g_sets.len());
    let mut poly_labels = Vec::with_capacity(polys.capacity());
    let mut vector_labels = Vec::with_capacity(polys.capacity());
    for (index, (&fi, &bi)) in family.members().iter().zip(witnesses.as_slice()).enumerate() {
        polys.push(f_poly(fi, bi)?);
        poly_labels.push(PolyLabel::F {
            index,
            member: fi,
            witness: bi,
        });
        vector_labels.push(VectorLabel {
            role: VectorRole::F,
            set: fi,
        });
    }
    for &h in &h_sets {
        polys.push(h_poly(h, n, d)?);
        poly_labels.push(PolyLabel::H { set: h });
        vector_labels.push(VectorLabel {
            role: VectorRole::H,
            set: h,
        });
    }
    for &g in &g_sets {
        polys.push(g_poly(g));
        poly_labels.push(PolyLabel::G { set: g });
        vector_labels.push(VectorLabel {
            role: VectorRole::G,
            set: g,
        });
    }

    let vectors: Vec<Subset> = vector_labels.iter().map(|v| v.set).collect();
    let matrix = eval_matrix(&vectors, &polys);
    let violation = matrix_violation(&matrix);
    let rank = matrix.rank();
    let max_degree = polys.iter().filter_map(MultilinearPoly::degree).max();

    Ok(ShadowCertificate {
        n,
        d,
        family: family.clone(),
        witnesses,
        polys,
        poly_labels,
        vector_labels,
        matrix,
        violation,
        max_degree,
        rank,
        shadow_size: shadow.len(),
        h_count: h_sets.len(),
        g_count: g_sets.len(),
    })
}

/// `|{i : F_i ∩ Y = Z = B_i}|`.
pub fn m0_count(family: &SetSystem, witnesses: &WitnessAssignment, y: Subset, z: Subset) -> usize {
    family
        .members()
        .iter()
        .zip(witnesses.as_slice())
        .filter(|(&fi, &bi)| bi == z && fi.intersection(y) == z)
        .count()
}

/// `(-1)^e` for a nonnegative exponent.
fn sign_power(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Closed form of `f_{F_i}(v_Y)` for `|Y| = d + 1`.
pub fn expected_t(d: usize, fi: Subset, bi: Subset, y: Subset) -> BigInt {
    if y.intersection(fi) == bi {
        sign_power(d + 1 - bi.len())
    } else {
        BigInt::zero()
    }
}

/// Closed form of `y_{Y,Z}(v_{F_i})`.
pub fn expected_r(d: usize, fi: Subset, y: Subset, z: Subset) -> BigInt {
    if y.intersection(fi) == z {
        sign_power(d + 1 - z.len())
    } else {
        BigInt::zero()
    }
}

/// The square matrix `D` obtained by adding `y_{Y,Z}` to the `f` and `h`
/// polynomials, evaluated at `v_Y`, the `v_{F_i}` and the `v_H`.
#[derive(Debug, Clone)]
pub struct ExtendedMatrix {
    pub d: usize,
    pub y: Subset,
    pub z: Subset,
    pub matrix: IntMatrix,
    /// `T_i = f_{F_i}(v_Y)`.
    pub t: Vec<BigInt>,
    /// `R_i = y_{Y,Z}(v_{F_i})`.
    pub r: Vec<BigInt>,
    pub m0: usize,
    pub family_size: usize,
    pub h_count: usize,
}

impl ExtendedMatrix {
    pub fn order(&self) -> usize {
        self.matrix.rows()
    }

    pub fn t_dot_r(&self) -> BigInt {
        self.t.iter().zip(&self.r).map(|(a, b)| a * b).sum()
    }

    pub fn determinant(&self) -> BigInt {
        self.matrix.determinant()
    }

    /// Checks the block layout entry by entry:
    ///
    /// ```text
    /// [ -1   T^T   0 ]
    /// [  R   -E    0 ]
    /// [  *    *    A ]   A lower-triangular, nonzero diagonal
    /// ```
    ///
    /// Returns a description of the first mismatch.
    pub fn layout_violation(&self, family: &SetSystem, witnesses: &WitnessAssignment) -> Option<String> {
        let m = self.family_size;
        let mat = &self.matrix;
        let minus_one = -BigInt::one();
        if *mat.get(0, 0) != minus_one {
            return Some(format!("corner is {}, expected -1", mat.get(0, 0)));
        }
        for i in 0..m {
            let fi = family.members()[i];
            let t = expected_t(self.d, fi, witnesses.get(i), self.y);
            if *mat.get(0, 1 + i) != t || self.t[i] != t {
                return Some(format!("T[{i}] is {}, expected {t}", mat.get(0, 1 + i)));
            }
            let r = expected_r(self.d, fi, self.y, self.z);
            if *mat.get(1 + i, 0) != r || self.r[i] != r {
                return Some(format!("R[{i}] is {}, expected {r}", mat.get(1 + i, 0)));
            }
            for j in 0..m {
                let want = if i == j { minus_one.clone() } else { BigInt::zero() };
                if *mat.get(1 + i, 1 + j) != want {
                    return Some(format!("middle block ({i},{j}) is {}", mat.get(1 + i, 1 + j)));
                }
            }
        }
        for r in 0..=m {
            for c in (1 + m)..self.order() {
                if !mat.get(r, c).is_zero() {
                    return Some(format!("upper-right block ({r},{c}) is {}", mat.get(r, c)));
                }
            }
        }
        let base = 1 + m;
        for r in 0..self.h_count {
            if mat.get(base + r, base + r).is_zero() {
                return Some(format!("A has zero diagonal at {r}"));
            }
            for c in (r + 1)..self.h_count {
                if !mat.get(base + r, base + c).is_zero() {
                    return Some(format!("A is not lower-triangular at ({r},{c})"));
                }
            }
        }
        None
    }

    pub fn summary(&self) -> DMatrixSummary {
        let det = self.determinant();
        let singular = det.is_zero();
        DMatrixSummary {
            version: crate::VERSION,
            y: self.y,
            z: self.z,
            order: self.order(),
            determinant: det.to_string(),
            m0: self.m0,
            t_dot_r: self.t_dot_r().to_string(),
            singular,
            consistent: singular == (self.m0 == 1),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DMatrixSummary {
    pub version: &'static str,
    pub y: Subset,
    pub z: Subset,
    pub order: usize,
    pub determinant: String,
    pub m0: usize,
    pub t_dot_r: String,
    pub singular: bool,
    /// Whether `singular <=> m0 == 1` held.
    pub consistent: bool,
}

/// Assembles `D` for a `(d+1)`-uniform family with valid witnesses, a
/// `(d+1)`-set `Y` outside the family and `Z ⊊ Y`.
pub fn extended_matrix(
    family: &SetSystem,
    witnesses: &WitnessAssignment,
    y: Subset,
    z: Subset,
) -> Result<ExtendedMatrix> {
    family.ground().check(y)?;
    let d = y
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::Precondition("Y must be nonempty".into()))?;
    family.require_uniform(d + 1)?;
    if family.contains(y) {
        return Err(Error::Precondition(format!("Y = {y} is a member of the family")));
    }
    witnesses.validate(family)?;
    let yp = y_poly(y, z)?;
    let n = family.n();
    let h_sets = low_sets(family, d);

    let mut polys = vec![yp];
    let mut vectors = vec![y];
    for (&fi, &bi) in family.members().iter().zip(witnesses.as_slice()) {
        polys.push(f_poly(fi, bi)?);
        vectors.push(fi);
    }
    for &h in &h_sets {
        polys.push(h_poly(h, n, d)?);
        vectors.push(h);
    }
    let matrix = eval_matrix(&vectors, &polys);
    let m = family.len();
    let t = (0..m).map(|i| matrix.get(0, 1 + i).clone()).collect();
    let r = (0..m).map(|i| matrix.get(1 + i, 0).clone()).collect();
    Ok(ExtendedMatrix {
        d,
        y,
        z,
        matrix,
        t,
        r,
        m0: m0_count(family, witnesses, y, z),
        family_size: m,
        h_count: h_sets.len(),
    })
}
