//! Finite graded-commutative algebras over GF(2).
//!
//! An algebra is a closed object: a monomial basis grouped by degree and a
//! full multiplication table on that basis. Relations are baked in by the
//! constructors ([`connected_sum_ring`], [`truncated_poly_ring`],
//! [`tensor_product`]); there is no symbolic ideal machinery.
//!
//! Elements are [`Gf2Vector`]s over the global basis, which is ordered by
//! degree and then by the per-degree basis order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{Gf2, Gf2Matrix, Gf2Vector};

/// Upper bound on total basis size; the multiplication table is quadratic in it.
pub const MAX_BASIS_SIZE: usize = 512;

/// A monomial in the generators. Only nonzero exponents are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<usize, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn generator(i: usize) -> Self {
        Self::power(i, 1)
    }

    pub fn power(i: usize, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(i, e);
        }
        Monomial(m)
    }

    pub fn from_exponents(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut m = Monomial::one();
        for (i, e) in pairs {
            m = m.mul(&Monomial::power(i, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    /// `(generator, exponent)` pairs with nonzero exponent, by generator.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|(&i, &e)| (i, e))
    }

    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (&i, &e) in &other.0 {
            *out.entry(i).or_insert(0) += e;
        }
        Monomial(out)
    }

    fn shifted(&self, offset: usize) -> Monomial {
        Monomial(self.0.iter().map(|(&i, &e)| (i + offset, e)).collect())
    }

    pub fn degree(&self, generators: &[Generator]) -> usize {
        self.iter()
            .map(|(i, e)| generators[i].degree * e as usize)
            .sum()
    }

    pub fn render(&self, generators: &[Generator]) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.iter()
            .map(|(i, e)| {
                let name = generators
                    .get(i)
                    .map_or_else(|| format!("g{i}"), |g| g.name.clone());
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// A defining relation, kept for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `m = 0`
    Vanishes(Monomial),
    /// `a + b = 0`
    SumVanishes(Monomial, Monomial),
}

impl Relation {
    fn shifted(&self, offset: usize) -> Relation {
        match self {
            Relation::Vanishes(m) => Relation::Vanishes(m.shifted(offset)),
            Relation::SumVanishes(a, b) => Relation::SumVanishes(a.shifted(offset), b.shifted(offset)),
        }
    }

    pub fn render(&self, generators: &[Generator]) -> String {
        match self {
            Relation::Vanishes(m) => m.render(generators),
            Relation::SumVanishes(a, b) => {
                format!("{} + {}", a.render(generators), b.render(generators))
            }
        }
    }
}

/// How an algebra was built. Used to gate operations that only make sense
/// for one presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingKind {
    Point,
    /// `n` copies of `RP^{2k}` glued by connected sum.
    ConnectedSum { n: usize, k: usize },
    TruncatedPoly {
        n_gens: usize,
        gen_degree: usize,
        truncation: u32,
    },
    Tensor,
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    label: String,
    kind: RingKind,
    generators: Vec<Generator>,
    basis: Vec<Monomial>,
    degree_of: Vec<usize>,
    /// `offsets[d]..offsets[d + 1]` is the global index range of degree `d`.
    offsets: Vec<usize>,
    index: HashMap<Monomial, usize>,
    /// `mult[u * len + v]`
    mult: Vec<Gf2Vector>,
    generator_basis: Vec<Option<usize>>,
    relations: Vec<Relation>,
}

impl GradedAlgebra {
    fn from_parts(
        label: String,
        kind: RingKind,
        generators: Vec<Generator>,
        basis_by_degree: Vec<Vec<Monomial>>,
        relations: Vec<Relation>,
        mut product: impl FnMut(usize, usize, &[Monomial], &HashMap<Monomial, usize>) -> Gf2Vector,
    ) -> Result<Self> {
        match basis_by_degree.first() {
            Some(d0) if d0.len() == 1 && d0[0].is_one() => {}
            _ => {
                return Err(Error::Validation(
                    "degree 0 basis must be exactly {1}".into(),
                ))
            }
        }
        let len: usize = basis_by_degree.iter().map(Vec::len).sum();
        if len > MAX_BASIS_SIZE {
            return Err(Error::Capacity {
                what: "algebra basis size",
                requested: len,
                cap: MAX_BASIS_SIZE,
            });
        }
        let mut basis = Vec::with_capacity(len);
        let mut degree_of = Vec::with_capacity(len);
        let mut offsets = Vec::with_capacity(basis_by_degree.len() + 1);
        for (d, ms) in basis_by_degree.into_iter().enumerate() {
            offsets.push(basis.len());
            for m in ms {
                debug_assert_eq!(m.degree(&generators), d);
                degree_of.push(d);
                basis.push(m);
            }
        }
        offsets.push(basis.len());
        // Trim trailing empty degrees so top_degree is the last nonzero one.
        while offsets.len() > 2 && offsets[offsets.len() - 2] == offsets[offsets.len() - 1] {
            offsets.pop();
        }
        let index: HashMap<Monomial, usize> =
            basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        if index.len() != basis.len() {
            return Err(Error::Validation("duplicate basis monomial".into()));
        }
        let mut mult = Vec::with_capacity(len * len);
        for u in 0..len {
            for v in 0..len {
                mult.push(product(u, v, &basis, &index));
            }
        }
        let generator_basis = (0..generators.len())
            .map(|i| index.get(&Monomial::generator(i)).copied())
            .collect();
        Ok(GradedAlgebra {
            label,
            kind,
            generators,
            basis,
            degree_of,
            offsets,
            index,
            mult,
            generator_basis,
            relations,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn top_degree(&self) -> usize {
        self.offsets.len() - 2
    }

    pub fn degree_of(&self, b: usize) -> usize {
        self.degree_of[b]
    }

    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        if d > self.top_degree() {
            return 0..0;
        }
        self.offsets[d]..self.offsets[d + 1]
    }

    pub fn basis_in_degree(&self, d: usize) -> &[Monomial] {
        &self.basis[self.degree_range(d)]
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        (0..=self.top_degree())
            .map(|d| self.degree_range(d).len())
            .collect()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Basis index of generator `i`, when the generator is itself a basis
    /// monomial.
    pub fn generator_index(&self, i: usize) -> Option<usize> {
        self.generator_basis.get(i).copied().flatten()
    }

    /// Product of two basis elements.
    #[inline]
    pub fn mul_basis(&self, u: usize, v: usize) -> &Gf2Vector {
        &self.mult[u * self.basis.len() + v]
    }

    pub fn zero(&self) -> Gf2Vector {
        Gf2Vector::zeros(self.basis.len())
    }

    pub fn unit(&self) -> Gf2Vector {
        Gf2Vector::unit(self.basis.len(), 0)
    }

    pub fn basis_element(&self, b: usize) -> Gf2Vector {
        Gf2Vector::unit(self.basis.len(), b)
    }

    pub fn mul(&self, x: &Gf2Vector, y: &Gf2Vector) -> Gf2Vector {
        let mut out = self.zero();
        for u in x.ones() {
            for v in y.ones() {
                out.add_assign_vec(self.mul_basis(u, v));
            }
        }
        out
    }

    /// `x · b` for a basis element `b`.
    pub fn mul_by_basis(&self, x: &Gf2Vector, b: usize) -> Gf2Vector {
        let mut out = self.zero();
        for u in x.ones() {
            out.add_assign_vec(self.mul_basis(u, b));
        }
        out
    }

    pub fn pow(&self, x: &Gf2Vector, e: u32) -> Gf2Vector {
        let mut acc = self.unit();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Reduces an arbitrary monomial in the generators to a combination of
    /// basis monomials by multiplying out generator by generator.
    pub fn normal_form(&self, m: &Monomial) -> Result<Gf2Vector> {
        let mut acc = self.unit();
        for (g, e) in m.iter() {
            if g >= self.generators.len() {
                return Err(Error::Bounds {
                    index: g,
                    size: self.generators.len(),
                });
            }
            let Some(b) = self.generator_index(g) else {
                return Err(Error::Domain(format!(
                    "generator {} is not a basis element",
                    self.generators[g].name
                )));
            };
            for _ in 0..e {
                acc = self.mul_by_basis(&acc, b);
            }
        }
        Ok(acc)
    }

    pub fn euler(&self) -> EulerNumber {
        let chi = self
            .graded_dims()
            .iter()
            .enumerate()
            .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum();
        EulerNumber { chi }
    }

    pub fn render_basis(&self, b: usize) -> String {
        self.basis[b].render(&self.generators)
    }

    pub fn render_element(&self, x: &Gf2Vector) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        x.ones()
            .map(|b| self.render_basis(b))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn render_relations(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| r.render(&self.generators))
            .collect()
    }

    /// Exhaustive check of unit, commutativity, grading and associativity
    /// over all basis pairs and triples.
    pub fn check_ring_axioms(&self) -> AxiomReport {
        const MAX_VIOLATIONS: usize = 16;
        let n = self.len();
        let mut report = AxiomReport {
            unit: true,
            commutative: true,
            graded: true,
            associative: true,
            pairs_checked: 0,
            triples_checked: 0,
            violations: Vec::new(),
        };
        let note = |report: &mut AxiomReport, msg: String| {
            if report.violations.len() < MAX_VIOLATIONS {
                report.violations.push(msg);
            }
        };
        for u in 0..n {
            let e_u = self.basis_element(u);
            if self.mul_basis(0, u) != &e_u || self.mul_basis(u, 0) != &e_u {
                report.unit = false;
                note(&mut report, format!("1 is not a unit for {}", self.render_basis(u)));
            }
            for v in 0..n {
                report.pairs_checked += 1;
                let uv = self.mul_basis(u, v);
                if uv != self.mul_basis(v, u) {
                    report.commutative = false;
                    note(
                        &mut report,
                        format!("{} * {} is not commutative", self.render_basis(u), self.render_basis(v)),
                    );
                }
                let d = self.degree_of[u] + self.degree_of[v];
                if uv.ones().any(|w| self.degree_of[w] != d) {
                    report.graded = false;
                    note(
                        &mut report,
                        format!("{} * {} leaves degree {d}", self.render_basis(u), self.render_basis(v)),
                    );
                }
                for w in 0..n {
                    report.triples_checked += 1;
                    let left = self.mul_by_basis(uv, w);
                    let vw = self.mul_basis(v, w);
                    let mut right = self.zero();
                    for x in vw.ones() {
                        right.add_assign_vec(self.mul_basis(u, x));
                    }
                    if left != right {
                        report.associative = false;
                        note(
                            &mut report,
                            format!(
                                "({} * {}) * {} != {} * ({} * {})",
                                self.render_basis(u),
                                self.render_basis(v),
                                self.render_basis(w),
                                self.render_basis(u),
                                self.render_basis(v),
                                self.render_basis(w)
                            ),
                        );
                    }
                }
            }
        }
        report
    }

    /// The pairing `H^m × H^{top−m} → H^top` for every `m`, which requires a
    /// one-dimensional top degree.
    pub fn poincare_pairing(&self) -> Result<PoincareReport> {
        let top = self.top_degree();
        let top_range = self.degree_range(top);
        if top_range.len() != 1 {
            return Err(Error::Domain(format!(
                "top degree {top} has dimension {}, expected 1",
                top_range.len()
            )));
        }
        let top_class = top_range.start;
        let mut degrees = Vec::with_capacity(top + 1);
        for m in 0..=top {
            let lo = self.degree_range(m);
            let hi = self.degree_range(top - m);
            let nondegenerate = if lo.len() != hi.len() {
                false
            } else {
                let mut pairing = Gf2Matrix::zeros(lo.len(), hi.len());
                for (r, u) in lo.clone().enumerate() {
                    for (c, v) in hi.clone().enumerate() {
                        pairing.set(r, c, self.mul_basis(u, v).get(top_class));
                    }
                }
                pairing.det()? == Gf2::ONE
            };
            degrees.push(PairingDegree {
                degree: m,
                dim: lo.len(),
                dual_dim: hi.len(),
                nondegenerate,
            });
        }
        Ok(PoincareReport {
            top_degree: top,
            nondegenerate: degrees.iter().all(|d| d.nondegenerate),
            degrees,
        })
    }

    pub fn describe(&self) -> RingDescription {
        RingDescription {
            ring: self.label.clone(),
            kind: self.kind,
            generators: self.generators.clone(),
            graded_dims: self.graded_dims(),
            euler: self.euler().chi,
            relations: self.render_relations(),
            basis: (0..=self.top_degree())
                .map(|d| {
                    self.degree_range(d)
                        .map(|b| self.render_basis(b))
                        .collect()
                })
                .collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EulerNumber {
    pub chi: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub unit: bool,
    pub commutative: bool,
    pub graded: bool,
    pub associative: bool,
    pub pairs_checked: u64,
    pub triples_checked: u64,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.unit && self.commutative && self.graded && self.associative
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingDegree {
    pub degree: usize,
    pub dim: usize,
    pub dual_dim: usize,
    pub nondegenerate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareReport {
    pub top_degree: usize,
    pub nondegenerate: bool,
    pub degrees: Vec<PairingDegree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingDescription {
    pub ring: String,
    pub kind: RingKind,
    pub generators: Vec<Generator>,
    pub graded_dims: Vec<usize>,
    pub euler: i64,
    pub relations: Vec<String>,
    pub basis: Vec<Vec<String>>,
}

fn numbered_generators(n: usize, degree: usize) -> Vec<Generator> {
    (1..=n)
        .map(|i| Generator {
            name: format!("x{i}"),
            degree,
        })
        .collect()
}

fn single_basis_product(
    u: usize,
    v: usize,
    basis: &[Monomial],
    index: &HashMap<Monomial, usize>,
    reduce: impl Fn(Monomial) -> Option<Monomial>,
) -> Gf2Vector {
    let mut out = Gf2Vector::zeros(basis.len());
    if let Some(m) = reduce(basis[u].mul(&basis[v])) {
        let b = index[&m];
        out.set(b, Gf2::ONE);
    }
    out
}

/// The algebra of a point: `GF(2)` in degree 0.
pub fn point_algebra() -> GradedAlgebra {
    GradedAlgebra::from_parts(
        "point".into(),
        RingKind::Point,
        Vec::new(),
        vec![vec![Monomial::one()]],
        Vec::new(),
        |_, _, basis, _| Gf2Vector::unit(basis.len(), 0),
    )
    .expect("point algebra is well formed")
}

/// Mod-2 cohomology of the connected sum of `n` copies of `RP^{2k}`:
/// `Z₂[x₁..xₙ] / (x_i^{2k+1}, x_i^{2k} + x_j^{2k}, x_i x_j)` with `|x_i| = 1`.
///
/// The top class is represented by `x₁^{2k}`; every `x_i^{2k}` rewrites to it.
pub fn connected_sum_ring(n: usize, k: usize) -> Result<GradedAlgebra> {
    if n < 1 {
        return Err(Error::Domain("connected sum needs at least one summand".into()));
    }
    if k < 2 {
        return Err(Error::Unsupported(format!(
            "connected sum of RP^{} (presentation holds only for k >= 2)",
            2 * k
        )));
    }
    let top = 2 * k;
    let mut basis_by_degree = vec![vec![Monomial::one()]];
    for m in 1..top {
        basis_by_degree.push((0..n).map(|i| Monomial::power(i, m as u32)).collect());
    }
    basis_by_degree.push(vec![Monomial::power(0, top as u32)]);

    let mut relations: Vec<Relation> = (0..n)
        .map(|i| Relation::Vanishes(Monomial::power(i, top as u32 + 1)))
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            relations.push(Relation::SumVanishes(
                Monomial::power(i, top as u32),
                Monomial::power(j, top as u32),
            ));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            relations.push(Relation::Vanishes(Monomial::from_exponents([(i, 1), (j, 1)])));
        }
    }

    let reduce = move |m: Monomial| -> Option<Monomial> {
        match m.support_len() {
            0 => Some(m),
            1 => {
                let (_, e) = m.iter().next().unwrap();
                match (e as usize).cmp(&top) {
                    std::cmp::Ordering::Less => Some(m),
                    std::cmp::Ordering::Equal => Some(Monomial::power(0, e)),
                    std::cmp::Ordering::Greater => None,
                }
            }
            _ => None,
        }
    };
    GradedAlgebra::from_parts(
        format!("rpsum:n={n},k={k}"),
        RingKind::ConnectedSum { n, k },
        numbered_generators(n, 1),
        basis_by_degree,
        relations,
        |u, v, basis, index| single_basis_product(u, v, basis, index, reduce),
    )
}

/// `Z₂[x₁..xₙ] / (x_i^truncation)` with every generator in `gen_degree`.
/// `truncated_poly_ring(n, 2, 3)` is the cohomology of `(CP²)ⁿ`.
pub fn truncated_poly_ring(n_gens: usize, gen_degree: usize, truncation: u32) -> Result<GradedAlgebra> {
    if n_gens < 1 {
        return Err(Error::Domain("need at least one generator".into()));
    }
    if truncation < 2 {
        return Err(Error::Domain("truncation must be at least 2".into()));
    }
    if gen_degree == 0 || gen_degree % 2 != 0 {
        return Err(Error::Domain(format!(
            "generator degree must be even and positive, got {gen_degree}"
        )));
    }
    let size = (truncation as usize)
        .checked_pow(n_gens as u32)
        .filter(|&s| s <= MAX_BASIS_SIZE)
        .ok_or(Error::Capacity {
            what: "algebra basis size",
            requested: (truncation as usize).saturating_pow(n_gens as u32),
            cap: MAX_BASIS_SIZE,
        })?;
    let generators = numbered_generators(n_gens, gen_degree);
    let top = n_gens * (truncation as usize - 1) * gen_degree;
    let mut basis_by_degree = vec![Vec::new(); top + 1];
    for code in 0..size {
        let mut c = code;
        let mut m = Monomial::one();
        for i in 0..n_gens {
            m = m.mul(&Monomial::power(i, (c % truncation as usize) as u32));
            c /= truncation as usize;
        }
        basis_by_degree[m.degree(&generators)].push(m);
    }
    for ms in &mut basis_by_degree {
        ms.sort();
    }
    let relations = (0..n_gens)
        .map(|i| Relation::Vanishes(Monomial::power(i, truncation)))
        .collect();
    let reduce = move |m: Monomial| -> Option<Monomial> {
        let fits = m.iter().all(|(_, e)| e < truncation);
        fits.then_some(m)
    };
    GradedAlgebra::from_parts(
        format!("truncated:n={n_gens},deg={gen_degree},trunc={truncation}"),
        RingKind::TruncatedPoly {
            n_gens,
            gen_degree,
            truncation,
        },
        generators,
        basis_by_degree,
        relations,
        |u, v, basis, index| single_basis_product(u, v, basis, index, reduce),
    )
}

/// Künneth tensor product. The basis is all pairs of basis monomials, the
/// product is componentwise, and generators of `b` are renumbered after
/// those of `a`. Colliding generator names are replaced by `x1, x2, …`.
pub fn tensor_product(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    let shift = a.generators.len();
    let mut generators: Vec<Generator> = a.generators.iter().chain(&b.generators).cloned().collect();
    let mut names: Vec<&str> = generators.iter().map(|g| g.name.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    if names.len() != generators.len() {
        for (i, g) in generators.iter_mut().enumerate() {
            g.name = format!("x{}", i + 1);
        }
    }
    let size = a.len() * b.len();
    if size > MAX_BASIS_SIZE {
        return Err(Error::Capacity {
            what: "algebra basis size",
            requested: size,
            cap: MAX_BASIS_SIZE,
        });
    }
    let top = a.top_degree() + b.top_degree();
    let mut pairs_by_degree: Vec<Vec<(usize, usize)>> = vec![Vec::new(); top + 1];
    for p in 0..a.len() {
        for q in 0..b.len() {
            pairs_by_degree[a.degree_of(p) + b.degree_of(q)].push((p, q));
        }
    }
    let mut pair_slot: HashMap<(usize, usize), usize> = HashMap::with_capacity(size);
    let mut basis_by_degree = Vec::with_capacity(top + 1);
    let mut next = 0;
    for pairs in &pairs_by_degree {
        let mut ms = Vec::with_capacity(pairs.len());
        for &(p, q) in pairs {
            pair_slot.insert((p, q), next);
            next += 1;
            ms.push(a.basis[p].mul(&b.basis[q].shifted(shift)));
        }
        basis_by_degree.push(ms);
    }
    let slot_pair: Vec<(usize, usize)> = pairs_by_degree.into_iter().flatten().collect();
    let relations = a
        .relations
        .iter()
        .cloned()
        .chain(b.relations.iter().map(|r| r.shifted(shift)))
        .collect();
    GradedAlgebra::from_parts(
        format!("({})x({})", a.label, b.label),
        RingKind::Tensor,
        generators,
        basis_by_degree,
        relations,
        |u, v, basis, _| {
            let (p, q) = slot_pair[u];
            let (p2, q2) = slot_pair[v];
            let mut out = Gf2Vector::zeros(basis.len());
            for r in a.mul_basis(p, p2).ones() {
                for s in b.mul_basis(q, q2).ones() {
                    out.flip(pair_slot[&(r, s)]);
                }
            }
            out
        },
    )
}

/// Cohomology of `(CP²)ⁿ` built as the `n`-fold tensor power of the `CP²`
/// ring.
pub fn cp2_power(n: usize) -> Result<GradedAlgebra> {
    if n < 1 {
        return Err(Error::Domain("power must be at least 1".into()));
    }
    let cp2 = truncated_poly_ring(1, 2, 3)?;
    let mut acc = cp2.clone();
    for _ in 1..n {
        acc = tensor_product(&acc, &cp2)?;
    }
    acc.label = format!("cp2pow:n={n}");
    Ok(acc)
}

/// Ring specifier accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// `rpsum:n=<n>,k=<k>`
    RpSum { n: usize, k: usize },
    /// `cp2pow:n=<n>`
    Cp2Pow { n: usize },
}

impl RingSpec {
    pub fn build(&self) -> Result<GradedAlgebra> {
        match *self {
            RingSpec::RpSum { n, k } => connected_sum_ring(n, k),
            RingSpec::Cp2Pow { n } => cp2_power(n),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::RpSum { n, k } => write!(f, "rpsum:n={n},k={k}"),
            RingSpec::Cp2Pow { n } => write!(f, "cp2pow:n={n}"),
        }
    }
}

impl Serialize for RingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Domain(format!("ring spec {s:?}: {msg}"));
        let (family, params) = s
            .split_once(':')
            .ok_or_else(|| bad("expected <family>:<params>".into()))?;
        let mut values = BTreeMap::new();
        for part in params.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("parameter {part:?} is not key=value")))?;
            let value: usize = value
                .parse()
                .map_err(|_| bad(format!("parameter {key} is not a count: {value:?}")))?;
            if values.insert(key, value).is_some() {
                return Err(bad(format!("parameter {key} repeated")));
            }
        }
        let mut take = |key: &str| values.remove(key).ok_or_else(|| bad(format!("missing {key}")));
        let spec = match family {
            "rpsum" => RingSpec::RpSum {
                n: take("n")?,
                k: take("k")?,
            },
            "cp2pow" => RingSpec::Cp2Pow { n: take("n")? },
            other => return Err(bad(format!("unknown family {other:?}"))),
        };
        if let Some(extra) = values.keys().next() {
            return Err(bad(format!("unexpected parameter {extra}")));
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(alg: &GradedAlgebra, pairs: &[(usize, u32)]) -> Gf2Vector {
        alg.normal_form(&Monomial::from_exponents(pairs.iter().copied()))
            .unwrap()
    }

    #[test]
    fn rp4_triple_sum_dimensions() {
        let m = connected_sum_ring(3, 2).unwrap();
        assert_eq!(m.graded_dims(), vec![1, 3, 3, 3, 1]);
        assert_eq!(m.euler().chi, -1);
        assert_eq!(m.render_basis(m.degree_range(4).start), "x1^4");
    }

    #[test]
    fn single_rp4() {
        let m = connected_sum_ring(1, 2).unwrap();
        assert_eq!(m.graded_dims(), vec![1, 1, 1, 1, 1]);
        assert!(mono(&m, &[(0, 5)]).is_zero());
    }

    #[test]
    fn connected_sum_relations() {
        let m = connected_sum_ring(3, 2).unwrap();
        assert!(mono(&m, &[(0, 1), (1, 1)]).is_zero());
        assert_eq!(mono(&m, &[(1, 4)]), mono(&m, &[(0, 4)]));
        assert_eq!(mono(&m, &[(2, 4)]), m.basis_element(m.degree_range(4).start));
        assert!(mono(&m, &[(1, 5)]).is_zero());
        assert!(mono(&m, &[(0, 2), (2, 2)]).is_zero());
    }

    #[test]
    fn connected_sum_domain() {
        assert!(matches!(connected_sum_ring(3, 1), Err(Error::Unsupported(_))));
        assert!(matches!(connected_sum_ring(0, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn connected_sum_euler_formula() {
        for n in 1..=6 {
            let m = connected_sum_ring(n, 2).unwrap();
            assert_eq!(m.euler().chi, 2 - n as i64);
        }
    }

    #[test]
    fn cp2_ring() {
        let c = truncated_poly_ring(1, 2, 3).unwrap();
        assert_eq!(c.graded_dims(), vec![1, 0, 1, 0, 1]);
        assert_eq!(c.euler().chi, 3);
        let c2 = truncated_poly_ring(2, 2, 3).unwrap();
        assert_eq!(c2.len(), 9);
        assert_eq!(c2.euler().chi, 9);
    }

    #[test]
    fn truncated_rejects_odd_degree() {
        assert!(truncated_poly_ring(2, 1, 3).is_err());
        assert!(truncated_poly_ring(2, 2, 1).is_err());
        assert!(truncated_poly_ring(0, 2, 3).is_err());
    }

    #[test]
    fn tensor_with_point_is_identity() {
        let c = truncated_poly_ring(1, 2, 3).unwrap();
        let t = tensor_product(&point_algebra(), &c).unwrap();
        assert_eq!(t.graded_dims(), c.graded_dims());
        assert_eq!(t.basis(), c.basis());
        let t2 = tensor_product(&c, &point_algebra()).unwrap();
        assert_eq!(t2.basis(), c.basis());
    }

    #[test]
    fn tensor_square_of_cp2() {
        let c = truncated_poly_ring(1, 2, 3).unwrap();
        let t = tensor_product(&c, &c).unwrap();
        assert_eq!(t.graded_dims(), vec![1, 0, 2, 0, 3, 0, 2, 0, 1]);
        let names: Vec<_> = t.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["x1", "x2"]);
    }

    #[test]
    fn normal_form_idempotent_on_basis() {
        for alg in [connected_sum_ring(3, 2).unwrap(), cp2_power(2).unwrap()] {
            for b in 0..alg.len() {
                let nf = alg.normal_form(&alg.basis()[b]).unwrap();
                assert_eq!(nf, alg.basis_element(b));
                let again = nf
                    .ones()
                    .map(|c| alg.normal_form(&alg.basis()[c]).unwrap())
                    .fold(alg.zero(), |mut acc, v| {
                        acc.add_assign_vec(&v);
                        acc
                    });
                assert_eq!(again, nf);
            }
        }
    }

    #[test]
    fn normal_form_rejects_unknown_generator() {
        let m = connected_sum_ring(2, 2).unwrap();
        assert!(m.normal_form(&Monomial::generator(5)).is_err());
    }

    #[test]
    fn ring_spec_parsing() {
        assert_eq!(
            "rpsum:n=3,k=2".parse::<RingSpec>().unwrap(),
            RingSpec::RpSum { n: 3, k: 2 }
        );
        assert_eq!(
            "cp2pow:n=2".parse::<RingSpec>().unwrap(),
            RingSpec::Cp2Pow { n: 2 }
        );
        for bad in ["rpsum:n=3", "cp2:n=1", "cp2pow", "cp2pow:n=x", "cp2pow:n=1,m=2", "rpsum:n=1,n=2,k=2"] {
            assert!(bad.parse::<RingSpec>().is_err(), "{bad}");
        }
        assert_eq!(RingSpec::RpSum { n: 3, k: 2 }.to_string(), "rpsum:n=3,k=2");
    }

    #[test]
    fn relations_render() {
        let m = connected_sum_ring(2, 2).unwrap();
        assert_eq!(m.render_relations(), ["x1^5", "x2^5", "x1^4 + x2^4", "x1 x2"]);
    }

    #[test]
    fn capacity_guard() {
        assert!(matches!(cp2_power(6), Err(Error::Capacity { .. })));
        assert!(cp2_power(5).is_ok());
    }
}
