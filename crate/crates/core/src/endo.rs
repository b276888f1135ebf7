//! Endomorphisms induced by a generator matrix, ring-homomorphism validation
//! and mod-2 Lefschetz numbers.
//!
//! Row `i` of the generator matrix gives `f(x_i) = Σ_j a_ij x_j`. Every basis
//! monomial is sent to the product of its generator images reduced in the
//! algebra (the formal multiplicative extension). That map is defined for any
//! matrix; whether it is a ring homomorphism is checked separately over all
//! basis pairs.
//!
//! Per-degree matrices use the row-vector convention: row `s` of the degree-`d`
//! matrix is the image of the `s`-th basis element of degree `d`.

use serde::Serialize;

use crate::algebra::{GradedAlgebra, RingKind};
use crate::error::{Error, Result};
use crate::gf2::{Gf2, Gf2Matrix, Gf2Vector};

/// A square generator matrix checked against an algebra.
#[derive(Clone, Debug)]
pub struct GeneratorMatrix<'a> {
    algebra: &'a GradedAlgebra,
    matrix: Gf2Matrix,
    generator_basis: Vec<usize>,
}

impl<'a> GeneratorMatrix<'a> {
    pub fn new(algebra: &'a GradedAlgebra, matrix: Gf2Matrix) -> Result<Self> {
        let n = algebra.generators().len();
        if matrix.n_rows() != n || matrix.n_cols() != n {
            return Err(Error::Dimension(format!(
                "generator matrix is {}x{}, algebra {} has {n} generators",
                matrix.n_rows(),
                matrix.n_cols(),
                algebra.label()
            )));
        }
        if let Some(first) = algebra.generators().first() {
            if let Some(g) = algebra.generators().iter().find(|g| g.degree != first.degree) {
                return Err(Error::Domain(format!(
                    "generators {} and {} have different degrees",
                    first.name, g.name
                )));
            }
        }
        let generator_basis = (0..n)
            .map(|i| {
                algebra.generator_index(i).ok_or_else(|| {
                    Error::Domain(format!(
                        "generator {} is not a basis element",
                        algebra.generators()[i].name
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorMatrix {
            algebra,
            matrix,
            generator_basis,
        })
    }

    pub fn matrix(&self) -> &Gf2Matrix {
        &self.matrix
    }

    pub fn algebra(&self) -> &'a GradedAlgebra {
        self.algebra
    }

    /// Formal multiplicative extension to every basis monomial.
    pub fn induce(&self) -> InducedEndo {
        let alg = self.algebra;
        let n = self.generator_basis.len();
        let gen_images: Vec<Gf2Vector> = (0..n)
            .map(|i| {
                let mut v = alg.zero();
                for j in 0..n {
                    if self.matrix.get(i, j).is_one() {
                        v.flip(self.generator_basis[j]);
                    }
                }
                v
            })
            .collect();

        let images: Vec<Gf2Vector> = alg
            .basis()
            .iter()
            .map(|m| {
                let mut acc = alg.unit();
                for (g, e) in m.iter() {
                    for _ in 0..e {
                        acc = alg.mul(&acc, &gen_images[g]);
                    }
                }
                acc
            })
            .collect();

        let per_degree = (0..=alg.top_degree())
            .map(|d| {
                let range = alg.degree_range(d);
                let mut block = Gf2Matrix::zeros(range.len(), range.len());
                for (s, b) in range.clone().enumerate() {
                    for (t, c) in range.clone().enumerate() {
                        block.set(s, t, images[b].get(c));
                    }
                }
                block
            })
            .collect();

        let is_ring_hom = first_hom_violation(alg, &images).is_none();
        InducedEndo {
            images,
            per_degree,
            is_ring_hom,
        }
    }
}

/// Shorthand for `GeneratorMatrix::new(algebra, matrix.clone())?.induce()`.
pub fn induce(algebra: &GradedAlgebra, matrix: &Gf2Matrix) -> Result<InducedEndo> {
    Ok(GeneratorMatrix::new(algebra, matrix.clone())?.induce())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedEndo {
    images: Vec<Gf2Vector>,
    per_degree: Vec<Gf2Matrix>,
    is_ring_hom: bool,
}

impl InducedEndo {
    /// Image of basis element `b`.
    pub fn image(&self, b: usize) -> &Gf2Vector {
        &self.images[b]
    }

    pub fn per_degree_matrices(&self) -> &[Gf2Matrix] {
        &self.per_degree
    }

    pub fn is_ring_hom(&self) -> bool {
        self.is_ring_hom
    }

    /// Diagonal coefficient of basis element `b` under the map.
    pub fn diagonal(&self, b: usize) -> Gf2 {
        self.images[b].get(b)
    }

    /// Linear extension to an arbitrary element.
    pub fn apply(&self, x: &Gf2Vector) -> Gf2Vector {
        let mut out = Gf2Vector::zeros(x.len());
        for b in x.ones() {
            out.add_assign_vec(&self.images[b]);
        }
        out
    }
}

fn hom_defect(alg: &GradedAlgebra, images: &[Gf2Vector], u: usize, v: usize) -> Option<(Gf2Vector, Gf2Vector)> {
    let lhs = alg.mul(&images[u], &images[v]);
    let mut rhs = alg.zero();
    for w in alg.mul_basis(u, v).ones() {
        rhs.add_assign_vec(&images[w]);
    }
    (lhs != rhs).then_some((lhs, rhs))
}

fn first_hom_violation(alg: &GradedAlgebra, images: &[Gf2Vector]) -> Option<(usize, usize)> {
    let n = alg.len();
    (0..n)
        .flat_map(|u| (u..n).map(move |v| (u, v)))
        .find(|&(u, v)| hom_defect(alg, images, u, v).is_some())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomViolation {
    pub left: String,
    pub right: String,
    /// `f(u)·f(v)`
    pub product_of_images: String,
    /// `f(u·v)`
    pub image_of_product: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomCheck {
    pub is_ring_hom: bool,
    pub violations: Vec<HomViolation>,
}

/// Complete multiplicativity check over all unordered basis pairs.
pub fn validate_ring_hom(algebra: &GradedAlgebra, endo: &InducedEndo) -> HomCheck {
    let n = algebra.len();
    let mut violations = Vec::new();
    for u in 0..n {
        for v in u..n {
            if let Some((lhs, rhs)) = hom_defect(algebra, &endo.images, u, v) {
                violations.push(HomViolation {
                    left: algebra.render_basis(u),
                    right: algebra.render_basis(v),
                    product_of_images: algebra.render_element(&lhs),
                    image_of_product: algebra.render_element(&rhs),
                });
            }
        }
    }
    HomCheck {
        is_ring_hom: violations.is_empty(),
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzReport {
    pub coefficient_field: &'static str,
    pub traces: Vec<Gf2>,
    pub lefschetz: Gf2,
    pub is_ring_hom: bool,
}

/// Per-degree traces and their sum. Over GF(2) the signs `(−1)^d` vanish.
pub fn lefschetz(endo: &InducedEndo) -> LefschetzReport {
    let traces: Vec<Gf2> = endo.per_degree.iter().map(Gf2Matrix::trace).collect();
    LefschetzReport {
        coefficient_field: "GF(2)",
        lefschetz: traces.iter().copied().sum(),
        traces,
        is_ring_hom: endo.is_ring_hom,
    }
}

/// Predicted per-degree traces for the triple connected sum of `RP⁴`:
/// `(1, Σa_ii, Σa_ii², Σa_ii³, a₁₁⁴)`.
pub fn table1_traces(algebra: &GradedAlgebra, matrix: &Gf2Matrix) -> Result<[Gf2; 5]> {
    if algebra.kind() != (RingKind::ConnectedSum { n: 3, k: 2 }) {
        return Err(Error::Domain(format!(
            "trace table applies only to rpsum:n=3,k=2, not {}",
            algebra.label()
        )));
    }
    if matrix.n_rows() != 3 || matrix.n_cols() != 3 {
        return Err(Error::Dimension("trace table needs a 3x3 matrix".into()));
    }
    let diag_power_sum = |e: u32| (0..3).map(|i| matrix.get(i, i).pow(e)).sum::<Gf2>();
    Ok([
        Gf2::ONE,
        diag_power_sum(1),
        diag_power_sum(2),
        diag_power_sum(3),
        matrix.get(0, 0).pow(4),
    ])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Comparison {
    pub predicted: Vec<Gf2>,
    pub computed: Vec<Gf2>,
    #[serde(rename = "match")]
    pub matches: Vec<bool>,
}

impl Table1Comparison {
    pub fn all_match(&self) -> bool {
        self.matches.iter().all(|&m| m)
    }
}

pub fn compare_table1(algebra: &GradedAlgebra, matrix: &Gf2Matrix, report: &LefschetzReport) -> Result<Table1Comparison> {
    let predicted = table1_traces(algebra, matrix)?.to_vec();
    let computed = report.traces.clone();
    let matches = predicted.iter().zip(&computed).map(|(p, c)| p == c).collect();
    Ok(Table1Comparison {
        predicted,
        computed,
        matches,
    })
}

/// Basis monomial representing the top class, when the top degree is
/// one-dimensional. Traces there depend on this choice for maps that are not
/// ring homomorphisms.
pub fn top_representative(algebra: &GradedAlgebra) -> Option<String> {
    let top = algebra.degree_range(algebra.top_degree());
    (top.len() == 1).then(|| algebra.render_basis(top.start))
}
