//! Euler characteristics of symmetric squares.
//!
//! Two independent routes:
//!
//! * the closed form `χ(X(2)) = (χ² + χ) / 2` ([`euler_sym_square`]);
//! * an equivariant count on a concrete complex ([`sym_square_oracle`]). The
//!   product `|K| × |K|` is modelled by the order complex of the product of
//!   face posets. The swap `(σ, τ) ↦ (τ, σ)` is a poset automorphism, so it
//!   acts simplicially on chains, and a chain fixed as a set is fixed
//!   pointwise, i.e. lies in the diagonal. Orbits per dimension are
//!   `fixed + (total − fixed) / 2` and their alternating sum is `χ(X(2))`.
//!
//! Chains are counted by dynamic programming over the poset; they are never
//! materialized.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on the number of product-poset elements.
pub const DEFAULT_POSET_CAP: usize = 5000;

pub type Vertex = i64;

/// `χ(X(2))` from `χ(X)`: `(χ² + χ) / 2`, always an integer.
pub fn euler_sym_square(chi: i64) -> Result<i64> {
    let wide = (chi as i128) * (chi as i128 + 1) / 2;
    i64::try_from(wide).map_err(|_| Error::Overflow("computing (chi^2 + chi) / 2"))
}

/// A finite abstract simplicial complex with every face stored explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<Vec<Vertex>>,
    /// All nonempty faces, sorted by dimension and then lexicographically.
    faces: Vec<Vec<Vertex>>,
}

fn normalize_simplex(s: &[Vertex]) -> Result<Vec<Vertex>> {
    if s.is_empty() {
        return Err(Error::Validation("empty simplex".into()));
    }
    let mut v = s.to_vec();
    v.sort_unstable();
    if v.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Validation(format!("simplex {s:?} repeats a vertex")));
    }
    Ok(v)
}

fn sort_faces(faces: &mut [Vec<Vertex>]) {
    faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

impl SimplicialComplex {
    /// The complex generated by `facets`: every nonempty subset of a facet.
    pub fn from_facets(facets: Vec<Vec<Vertex>>) -> Result<Self> {
        if facets.is_empty() {
            return Err(Error::Validation("complex has no facets".into()));
        }
        if facets.iter().any(|f| f.len() > 20) {
            return Err(Error::Capacity {
                what: "facet size",
                requested: facets.iter().map(Vec::len).max().unwrap_or(0),
                cap: 20,
            });
        }
        let facets = facets
            .iter()
            .map(|f| normalize_simplex(f))
            .collect::<Result<Vec<_>>>()?;
        let mut set: BTreeSet<Vec<Vertex>> = BTreeSet::new();
        for f in &facets {
            for mask in 1u32..(1 << f.len()) {
                set.insert(
                    f.iter()
                        .enumerate()
                        .filter(|(i, _)| mask >> i & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect(),
                );
            }
        }
        let mut faces: Vec<_> = set.into_iter().collect();
        sort_faces(&mut faces);
        Ok(SimplicialComplex { facets, faces })
    }

    /// A complex given by its full face list, which must be closed under
    /// taking nonempty subsets.
    pub fn from_faces(faces: Vec<Vec<Vertex>>) -> Result<Self> {
        let faces = faces
            .iter()
            .map(|f| normalize_simplex(f))
            .collect::<Result<BTreeSet<_>>>()?;
        if faces.is_empty() {
            return Err(Error::Validation("complex has no faces".into()));
        }
        for f in &faces {
            if f.len() < 2 {
                continue;
            }
            for skip in 0..f.len() {
                let sub: Vec<Vertex> = f
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                if !faces.contains(&sub) {
                    return Err(Error::Validation(format!(
                        "face {f:?} present but its boundary face {sub:?} is missing"
                    )));
                }
            }
        }
        let facets: Vec<Vec<Vertex>> = faces
            .iter()
            .filter(|f| {
                !faces
                    .iter()
                    .any(|g| g.len() > f.len() && f.iter().all(|v| g.binary_search(v).is_ok()))
            })
            .cloned()
            .collect();
        let mut faces: Vec<_> = faces.into_iter().collect();
        sort_faces(&mut faces);
        Ok(SimplicialComplex { facets, faces })
    }

    /// Parses one facet per line, vertices as whitespace-separated integers.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut facets = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let trimmed = line.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut facet = Vec::new();
            let mut seen = HashSet::new();
            let mut pos = 0;
            for token in line.split_whitespace() {
                let col = line[pos..].find(token).map_or(pos, |o| pos + o);
                pos = col + token.len();
                let v: Vertex = token.parse().map_err(|_| {
                    Error::parse(ln + 1, col + 1, format!("expected an integer vertex, found {token:?}"))
                })?;
                if !seen.insert(v) {
                    return Err(Error::parse(ln + 1, col + 1, format!("vertex {v} repeated in facet")));
                }
                facet.push(v);
            }
            facets.push(facet);
        }
        if facets.is_empty() {
            return Err(Error::parse(1, 1, "no facets found"));
        }
        Self::from_facets(facets)
    }

    /// Boundary of the `d`-simplex on vertices `0..=d`, a `(d−1)`-sphere.
    pub fn boundary_of_simplex(d: usize) -> Self {
        assert!(d >= 1, "boundary of a point is empty");
        let vs: Vec<Vertex> = (0..=d as Vertex).collect();
        let facets = (0..=d)
            .map(|skip| {
                vs.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        Self::from_facets(facets).expect("simplex boundary is well formed")
    }

    /// The 6-vertex triangulation of the real projective plane (the
    /// hemi-icosahedron).
    pub fn rp2_six_vertex() -> Self {
        let facets = [
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 6, 2],
            [2, 3, 5],
            [3, 4, 6],
            [4, 5, 2],
            [5, 6, 3],
            [6, 2, 4],
        ];
        Self::from_facets(facets.iter().map(|f| f.to_vec()).collect())
            .expect("triangulation is well formed")
    }

    pub fn facets(&self) -> &[Vec<Vertex>] {
        &self.facets
    }

    pub fn faces(&self) -> &[Vec<Vertex>] {
        &self.faces
    }

    pub fn dimension(&self) -> usize {
        self.faces.last().map_or(0, |f| f.len() - 1)
    }

    /// `f_d`: number of `d`-dimensional faces.
    pub fn face_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.dimension() + 1];
        for f in &self.faces {
            counts[f.len() - 1] += 1;
        }
        counts
    }

    pub fn euler(&self) -> i64 {
        alternating_sum(&self.face_counts())
    }

    /// Checks that the complex is a closed combinatorial surface: pure of
    /// dimension 2, every edge in exactly two triangles, every vertex link a
    /// single cycle.
    pub fn check_closed_surface(&self) -> SurfaceCheck {
        let pure_2d = self.facets.iter().all(|f| f.len() == 3);
        let mut edge_use: BTreeMap<(Vertex, Vertex), usize> = BTreeMap::new();
        for f in self.faces.iter().filter(|f| f.len() == 2) {
            edge_use.insert((f[0], f[1]), 0);
        }
        let mut links: BTreeMap<Vertex, Vec<(Vertex, Vertex)>> = BTreeMap::new();
        for t in self.faces.iter().filter(|f| f.len() == 3) {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                *edge_use.entry((a, b)).or_insert(0) += 1;
            }
            links.entry(t[0]).or_default().push((t[1], t[2]));
            links.entry(t[1]).or_default().push((t[0], t[2]));
            links.entry(t[2]).or_default().push((t[0], t[1]));
        }
        let edges_in_two_triangles = edge_use.values().all(|&c| c == 2);
        let vertices: Vec<Vertex> = self.faces.iter().filter(|f| f.len() == 1).map(|f| f[0]).collect();
        let vertex_links_are_cycles = vertices
            .iter()
            .all(|v| links.get(v).is_some_and(|edges| is_single_cycle(edges)));
        SurfaceCheck {
            pure_2d,
            edges_in_two_triangles,
            vertex_links_are_cycles,
            euler: self.euler(),
        }
    }
}

fn is_single_cycle(edges: &[(Vertex, Vertex)]) -> bool {
    let mut adj: HashMap<Vertex, Vec<Vertex>> = HashMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.len() < 3 || adj.values().any(|n| n.len() != 2) {
        return false;
    }
    // 2-regular: a single cycle iff connected.
    let start = *adj.keys().next().unwrap();
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == adj.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceCheck {
    pub pure_2d: bool,
    pub edges_in_two_triangles: bool,
    pub vertex_links_are_cycles: bool,
    pub euler: i64,
}

impl SurfaceCheck {
    pub fn is_closed_surface(&self) -> bool {
        self.pure_2d && self.edges_in_two_triangles && self.vertex_links_are_cycles
    }
}

fn alternating_sum(counts: &[u64]) -> i64 {
    counts
        .iter()
        .enumerate()
        .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum()
}

/// A finite poset with elements listed in a linear extension: every strict
/// lower neighbour-or-below of `x` has a smaller index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    /// `below[x]`: all elements strictly below `x`.
    below: Vec<Vec<usize>>,
}

impl Poset {
    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    pub fn below(&self, x: usize) -> &[usize] {
        &self.below[x]
    }

    /// Number of chains with `d + 1` elements, for each `d` (the face numbers
    /// of the order complex).
    pub fn chain_counts(&self) -> Result<Vec<u64>> {
        self.chain_counts_within(|_| true)
    }

    /// Chain counts of the subposet of elements satisfying `keep`.
    pub fn chain_counts_within(&self, keep: impl Fn(usize) -> bool) -> Result<Vec<u64>> {
        let n = self.len();
        let kept: Vec<bool> = (0..n).map(&keep).collect();
        let mut level: Vec<u64> = kept.iter().map(|&k| k as u64).collect();
        let mut counts = Vec::new();
        loop {
            let total = level
                .iter()
                .try_fold(0u64, |acc, &c| acc.checked_add(c))
                .ok_or(Error::Overflow("counting chains"))?;
            if total == 0 {
                break;
            }
            counts.push(total);
            let mut next = vec![0u64; n];
            for x in 0..n {
                if !kept[x] {
                    continue;
                }
                let mut s = 0u64;
                for &y in &self.below[x] {
                    s = s.checked_add(level[y]).ok_or(Error::Overflow("counting chains"))?;
                }
                next[x] = s;
            }
            level = next;
        }
        Ok(counts)
    }
}

/// Face poset of a complex, ordered by inclusion. Element `i` is
/// `complex.faces()[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacePoset {
    poset: Poset,
    dims: Vec<usize>,
}

impl FacePoset {
    pub fn of(complex: &SimplicialComplex) -> Self {
        let faces = complex.faces();
        let index: HashMap<&[Vertex], usize> =
            faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let below = faces
            .iter()
            .map(|f| {
                let mut sub: Vec<usize> = (1u32..(1 << f.len()) - 1)
                    .map(|mask| {
                        let s: Vec<Vertex> = f
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, &v)| v)
                            .collect();
                        index[s.as_slice()]
                    })
                    .collect();
                sub.sort_unstable();
                sub
            })
            .collect();
        FacePoset {
            poset: Poset { below },
            dims: faces.iter().map(|f| f.len() - 1).collect(),
        }
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    /// The product poset `P × P` with componentwise order, together with the
    /// swap involution. Fails if it would exceed `cap` elements.
    pub fn square(&self, cap: usize) -> Result<ProductPoset> {
        let f = self.len();
        let size = f * f;
        if size > cap {
            return Err(Error::Capacity {
                what: "product poset size",
                requested: size,
                cap,
            });
        }
        let mut pairs: Vec<(usize, usize)> = (0..f).flat_map(|i| (0..f).map(move |j| (i, j))).collect();
        pairs.sort_by_key(|&(i, j)| (self.dims[i] + self.dims[j], i, j));
        let mut slot = vec![0usize; size];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            slot[i * f + j] = k;
        }
        let below = pairs
            .iter()
            .map(|&(i, j)| {
                let down_i = self.poset.below[i].iter().copied().chain([i]);
                let mut out: Vec<usize> = down_i
                    .flat_map(|a| {
                        self.poset.below[j]
                            .iter()
                            .copied()
                            .chain([j])
                            .map(move |b| (a, b))
                    })
                    .filter(|&(a, b)| (a, b) != (i, j))
                    .map(|(a, b)| slot[a * f + b])
                    .collect();
                out.sort_unstable();
                out
            })
            .collect();
        let swap = pairs.iter().map(|&(i, j)| slot[j * f + i]).collect();
        Ok(ProductPoset {
            poset: Poset { below },
            pairs,
            swap,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductPoset {
    poset: Poset,
    pairs: Vec<(usize, usize)>,
    swap: Vec<usize>,
}

impl ProductPoset {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// Factor indices of element `x`.
    pub fn pair(&self, x: usize) -> (usize, usize) {
        self.pairs[x]
    }

    /// Image of `x` under `(σ, τ) ↦ (τ, σ)`.
    pub fn swap(&self, x: usize) -> usize {
        self.swap[x]
    }

    pub fn is_diagonal(&self, x: usize) -> bool {
        self.swap[x] == x
    }
}

/// Simplex counts of the order complex of `P × P`, by dimension.
pub fn order_complex_chain_counts(product: &ProductPoset) -> Result<Vec<u64>> {
    product.poset.chain_counts()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymSquareReport {
    pub chi_x: i64,
    #[serde(rename = "chi_XxX")]
    pub chi_x_times_x: i64,
    pub chi_diagonal: i64,
    /// Chains of length `d + 1` in the product poset.
    pub total: Vec<u64>,
    /// Chains fixed by the swap.
    pub fixed: Vec<u64>,
    pub orbit: Vec<u64>,
    pub chi_quotient: i64,
    /// `(χ² + χ) / 2` evaluated at `chi_x`.
    pub formula: i64,
    pub face_poset_size: usize,
    pub product_poset_size: usize,
    pub free_parts_even: bool,
    /// `2·chi_quotient = χ + χ²`
    pub identity_holds: bool,
}

/// Builds the product face poset, counts chains and swap-fixed chains per
/// dimension and derives the Euler characteristic of the quotient.
pub fn sym_square_oracle(complex: &SimplicialComplex, poset_cap: usize) -> Result<SymSquareReport> {
    let faces = FacePoset::of(complex);
    let product = faces.square(poset_cap)?;
    let total = order_complex_chain_counts(&product)?;
    let fixed = product.poset.chain_counts_within(|x| product.is_diagonal(x))?;
    let mut orbit = Vec::with_capacity(total.len());
    let mut free_parts_even = true;
    for (d, &t) in total.iter().enumerate() {
        let f = fixed.get(d).copied().unwrap_or(0);
        let free = t - f;
        free_parts_even &= free % 2 == 0;
        orbit.push(f + free / 2);
    }
    let chi_x = complex.euler();
    let chi_quotient = alternating_sum(&orbit);
    let formula = euler_sym_square(chi_x)?;
    Ok(SymSquareReport {
        chi_x,
        chi_x_times_x: alternating_sum(&total),
        chi_diagonal: alternating_sum(&fixed),
        total,
        fixed,
        orbit,
        chi_quotient,
        formula,
        face_poset_size: faces.len(),
        product_poset_size: product.len(),
        free_parts_even,
        identity_holds: 2 * chi_quotient as i128 == chi_x as i128 + (chi_x as i128).pow(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        assert_eq!(euler_sym_square(-1).unwrap(), 0);
        assert_eq!(euler_sym_square(2).unwrap(), 3);
        assert_eq!(euler_sym_square(1).unwrap(), 1);
        assert_eq!(euler_sym_square(0).unwrap(), 0);
        assert_eq!(euler_sym_square(-3).unwrap(), 3);
        assert!(euler_sym_square(i64::MAX).is_err());
    }

    #[test]
    fn sphere_face_counts() {
        let s1 = SimplicialComplex::boundary_of_simplex(2);
        assert_eq!(s1.face_counts(), [3, 3]);
        assert_eq!(s1.euler(), 0);
        let s2 = SimplicialComplex::boundary_of_simplex(3);
        assert_eq!(s2.face_counts(), [4, 6, 4]);
        assert_eq!(s2.euler(), 2);
    }

    #[test]
    fn rp2_is_a_closed_surface_with_euler_one() {
        let rp2 = SimplicialComplex::rp2_six_vertex();
        assert_eq!(rp2.face_counts(), [6, 15, 10]);
        let check = rp2.check_closed_surface();
        assert!(check.is_closed_surface(), "{check:?}");
        assert_eq!(check.euler, 1);
    }

    #[test]
    fn disk_is_not_closed() {
        let disk = SimplicialComplex::from_facets(vec![vec![0, 1, 2]]).unwrap();
        assert!(!disk.check_closed_surface().edges_in_two_triangles);
    }

    #[test]
    fn edge_product_is_contractible() {
        let edge = SimplicialComplex::from_facets(vec![vec![0, 1]]).unwrap();
        let counts = order_complex_chain_counts(&FacePoset::of(&edge).square(DEFAULT_POSET_CAP).unwrap()).unwrap();
        assert_eq!(alternating_sum(&counts), 1);
    }

    #[test]
    fn product_sizes() {
        let s1 = FacePoset::of(&SimplicialComplex::boundary_of_simplex(2));
        assert_eq!(s1.square(DEFAULT_POSET_CAP).unwrap().len(), 36);
        let s2 = FacePoset::of(&SimplicialComplex::boundary_of_simplex(3));
        assert_eq!(s2.square(DEFAULT_POSET_CAP).unwrap().len(), 196);
        let rp2 = FacePoset::of(&SimplicialComplex::rp2_six_vertex());
        assert_eq!(rp2.square(DEFAULT_POSET_CAP).unwrap().len(), 961);
        assert!(matches!(rp2.square(900), Err(Error::Capacity { .. })));
    }

    #[test]
    fn swap_is_an_involution() {
        let p = FacePoset::of(&SimplicialComplex::boundary_of_simplex(3))
            .square(DEFAULT_POSET_CAP)
            .unwrap();
        for x in 0..p.len() {
            assert_eq!(p.swap(p.swap(x)), x);
            let (i, j) = p.pair(x);
            assert_eq!(p.pair(p.swap(x)), (j, i));
            assert_eq!(p.is_diagonal(x), i == j);
        }
    }

    #[test]
    fn circle_oracle() {
        let r = sym_square_oracle(&SimplicialComplex::boundary_of_simplex(2), DEFAULT_POSET_CAP).unwrap();
        assert_eq!(r.chi_x_times_x, 0);
        assert_eq!(r.chi_quotient, 0);
        assert!(r.identity_holds && r.free_parts_even);
    }

    #[test]
    fn from_faces_requires_closure() {
        assert!(matches!(
            SimplicialComplex::from_faces(vec![vec![0, 1], vec![0]]),
            Err(Error::Validation(_))
        ));
        let k = SimplicialComplex::from_faces(vec![vec![0, 1], vec![0], vec![1], vec![1, 2], vec![2]]).unwrap();
        assert_eq!(k.facets(), [vec![0, 1], vec![1, 2]]);
        assert_eq!(k.euler(), 1);
    }

    #[test]
    fn parse_facet_file() {
        let k = SimplicialComplex::parse("# circle\n0 1\n1 2\n\n  2 0\n").unwrap();
        assert_eq!(k.euler(), 0);
        let err = SimplicialComplex::parse("0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 3, .. }), "{err}");
        let err = SimplicialComplex::parse("0 1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 5, .. }), "{err}");
        assert!(SimplicialComplex::parse("# nothing\n").is_err());
    }
}
