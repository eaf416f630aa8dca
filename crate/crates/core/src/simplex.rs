//! Lattice simplices and their associated finite abelian groups.
//!
//! For a simplex with vertices `v_0, ..., v_d` the group `Λ` consists of all
//! `λ ∈ (Q/Z)^{d+1}` with `Σ λ_i (v_i, 1)` integral. Writing `W` for the
//! matrix with rows `(v_i, 1)`, `Λ` is the row lattice of `W^{-1}` modulo
//! `Z^{d+1}`; a Smith decomposition `L W R = D` turns that into the
//! independent generators `row_i(L) / d_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, IntMatrix};

/// Default bound on the number of group elements we are willing to list.
pub const DEFAULT_ENUM_CAP: u64 = 1_000_000;

/// A full-dimensional lattice simplex with an ordered vertex list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatticeSimplex {
    vertices: Vec<Vec<BigInt>>,
}

impl LatticeSimplex {
    pub fn new(vertices: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = vertices.len();
        if n < 2 {
            return Err(Error::Degenerate(format!("{n} vertices do not span a simplex")));
        }
        let d = n - 1;
        if let Some(bad) = vertices.iter().find(|v| v.len() != d) {
            return Err(Error::Dimension(format!(
                "{n} vertices need {d} coordinates each, found {}",
                bad.len()
            )));
        }
        let s = Self { vertices };
        if exact::det(&s.edge_matrix())?.is_zero() {
            return Err(Error::Degenerate("vertices are affinely dependent".into()));
        }
        Ok(s)
    }

    pub fn from_i64<R: AsRef<[i64]>>(vertices: &[R]) -> Result<Self> {
        Self::new(
            vertices
                .iter()
                .map(|v| v.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// `conv(0, e_1, ..., e_d)`.
    pub fn unit(d: usize) -> Self {
        let mut vertices = vec![vec![BigInt::zero(); d]];
        for i in 0..d {
            let mut e = vec![BigInt::zero(); d];
            e[i] = BigInt::one();
            vertices.push(e);
        }
        Self { vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vec<BigInt>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &[BigInt] {
        &self.vertices[i]
    }

    /// The `d x d` matrix with rows `v_i - v_0`.
    pub fn edge_matrix(&self) -> IntMatrix {
        let v0 = &self.vertices[0];
        let rows = self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        IntMatrix::from_rows(rows).expect("simplex rows are rectangular")
    }

    /// The `(d+1) x (d+1)` matrix with rows `(v_i, 1)`.
    pub fn homogenized(&self) -> IntMatrix {
        let rows = self
            .vertices
            .iter()
            .map(|v| v.iter().cloned().chain(std::iter::once(BigInt::one())).collect())
            .collect();
        IntMatrix::from_rows(rows).expect("simplex rows are rectangular")
    }

    /// `r * self - t`.
    pub fn dilate_translate(&self, r: &BigInt, t: &[BigInt]) -> Result<Self> {
        if t.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "translate of length {} for a {}-simplex",
                t.len(),
                self.dim()
            )));
        }
        if !r.is_positive() {
            return Err(Error::Precondition(format!("dilation factor {r} must be positive")));
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(t).map(|(x, s)| r * x - s).collect())
            .collect();
        Ok(Self { vertices })
    }

    /// Reorders the vertices: the new vertex `i` is the old vertex `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.vertices.len()];
        if order.len() != seen.len() || order.iter().any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::Dimension("not a permutation of the vertex indices".into()));
        }
        Ok(Self { vertices: order.iter().map(|&i| self.vertices[i].clone()).collect() })
    }

    /// Whether `Σ λ_i (v_i, 1)` is integral.
    pub fn admits(&self, g: &GroupElement) -> bool {
        if g.len() != self.vertices.len() {
            return false;
        }
        let d = self.dim();
        (0..=d).all(|k| {
            let sum = self.vertices.iter().zip(g.coords()).fold(BigRational::zero(), |acc, (v, l)| {
                let x = if k < d { &v[k] } else { &BigInt::one() };
                acc + l * BigRational::from_integer(x.clone())
            });
            sum.is_integer()
        })
    }
}

impl fmt::Debug for LatticeSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv(")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        write!(f, ")")
    }
}

/// An element of `(Q/Z)^n`, stored with every coordinate in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<BigRational>,
}

impl GroupElement {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self { coords: coords.iter().map(exact::frac).collect() }
    }

    pub fn from_fractions(parts: &[(i64, i64)]) -> Self {
        Self::new(parts.iter().map(|&(n, d)| exact::ratio(n, d)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self { coords: vec![BigRational::zero(); n] }
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        Self::new(self.coords.iter().map(|a| a * &k).collect())
    }

    /// Additive order: the lcm of the coordinate denominators.
    pub fn order(&self) -> BigInt {
        exact::lcm_all(self.coords.iter().map(|c| c.denom()))
    }

    pub fn coordinate_sum(&self) -> BigRational {
        self.coords.iter().fold(BigRational::zero(), |acc, c| acc + c)
    }

    pub fn permuted(&self, order: &[usize]) -> Self {
        Self { coords: order.iter().map(|&i| self.coords[i].clone()).collect() }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A finite subgroup of `(Q/Z)^n` with independent generators.
///
/// `generators[i]` has order `invariant_factors[i]`, the factors form a
/// divisibility chain and only nontrivial factors are kept.
#[derive(Clone, Debug)]
pub struct LambdaGroup {
    ambient_len: usize,
    generators: Vec<GroupElement>,
    invariant_factors: Vec<BigInt>,
    order: BigInt,
    cap: u64,
    // listed on first use; None when the order exceeds the cap
    elements: OnceLock<Option<Vec<GroupElement>>>,
}

impl PartialEq for LambdaGroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_len == other.ambient_len
            && self.generators == other.generators
            && self.invariant_factors == other.invariant_factors
    }
}

impl Eq for LambdaGroup {}

impl LambdaGroup {
    fn assemble(ambient_len: usize, pairs: Vec<(BigInt, GroupElement)>, cap: u64) -> Self {
        let (invariant_factors, generators): (Vec<_>, Vec<_>) =
            pairs.into_iter().filter(|(d, _)| !d.is_one()).unzip();
        let order = invariant_factors.iter().product::<BigInt>();
        Self { ambient_len, generators, invariant_factors, order, cap, elements: OnceLock::new() }
    }

    /// The subgroup of `(Q/Z)^n` spanned by `gens`.
    pub fn generated_by(ambient_len: usize, gens: &[GroupElement], cap: u64) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != ambient_len) {
            return Err(Error::Dimension(format!(
                "generator of length {} in (Q/Z)^{ambient_len}",
                g.len()
            )));
        }
        let exponent = exact::lcm_all(gens.iter().map(GroupElement::order).collect::<Vec<_>>().iter());
        // N·L where L = Z^n + span(gens); rows N·e_j then N·g_i
        let mut rows = Vec::with_capacity(ambient_len + gens.len());
        for j in 0..ambient_len {
            let mut e = vec![BigInt::zero(); ambient_len];
            e[j] = exponent.clone();
            rows.push(e);
        }
        let n_rat = BigRational::from_integer(exponent.clone());
        for g in gens {
            rows.push(g.coords().iter().map(|c| (c * &n_rat).to_integer()).collect());
        }
        let smith = exact::smith_decompose(&IntMatrix::from_rows(rows)?)?;
        // N·L has basis d_i · row_i(R^{-1}); so L/Z^n = ⊕ Z/(N/d_i)
        let r_inv = exact::inverse_rational(&smith.right)?;
        let mut pairs: Vec<(BigInt, GroupElement)> = smith
            .diagonal
            .iter()
            .enumerate()
            .map(|(i, d)| {
                let scale = BigRational::new(d.clone(), exponent.clone());
                let g = GroupElement::new(r_inv.row(i).iter().map(|x| x * &scale).collect());
                (&exponent / d, g)
            })
            .collect();
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(Self::assemble(ambient_len, pairs, cap))
    }

    pub fn ambient_len(&self) -> usize {
        self.ambient_len
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    /// Largest invariant factor (1 for the trivial group).
    pub fn exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    /// All elements, if the order was within the enumeration cap.
    pub fn elements(&self) -> Option<&[GroupElement]> {
        self.elements
            .get_or_init(|| (self.order <= BigInt::from(self.cap)).then(|| self.enumerate()))
            .as_deref()
    }

    pub fn require_elements(&self) -> Result<&[GroupElement]> {
        self.elements().ok_or_else(|| Error::Capacity {
            what: format!("group of order {}", self.order),
            limit: self.cap,
        })
    }

    fn enumerate(&self) -> Vec<GroupElement> {
        let mut out = vec![GroupElement::zero(self.ambient_len)];
        for (g, d) in self.generators.iter().zip(&self.invariant_factors) {
            let k = d.to_usize().expect("order checked against cap");
            let mut multiples = Vec::with_capacity(k);
            let mut acc = GroupElement::zero(self.ambient_len);
            for _ in 0..k {
                multiples.push(acc.clone());
                acc = acc.add(g);
            }
            out = out.iter().flat_map(|x| multiples.iter().map(move |m| x.add(m))).collect();
        }
        out.sort();
        out
    }

    /// Least coordinate index on which every element vanishes.
    pub fn vanishing_coordinate(&self) -> Option<usize> {
        (0..self.ambient_len).find(|&i| self.generators.iter().all(|g| g.coords()[i].is_zero()))
    }

    pub fn contains(&self, x: &GroupElement) -> Result<bool> {
        Ok(self.require_elements()?.binary_search(x).is_ok())
    }

    /// The same group with coordinates reordered (`new[i] = old[order[i]]`).
    pub fn permuted(&self, order: &[usize]) -> Self {
        let elements = OnceLock::new();
        if let Some(Some(es)) = self.elements.get() {
            let mut moved: Vec<_> = es.iter().map(|e| e.permuted(order)).collect();
            moved.sort();
            let _ = elements.set(Some(moved));
        }
        Self {
            ambient_len: self.ambient_len,
            generators: self.generators.iter().map(|g| g.permuted(order)).collect(),
            invariant_factors: self.invariant_factors.clone(),
            order: self.order.clone(),
            cap: self.cap,
            elements,
        }
    }

    /// Same subgroup of `(Q/Z)^n`, irrespective of the chosen generators.
    pub fn same_subgroup(&self, other: &Self) -> Result<bool> {
        if self.ambient_len != other.ambient_len || self.order != other.order {
            return Ok(false);
        }
        Ok(self.require_elements()? == other.require_elements()?)
    }
}

/// `ℓ(H)` together with the Hermite matrix of a simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfSimplexForm {
    pub h: IntMatrix,
    pub nonstandard_rows: usize,
}

impl HnfSimplexForm {
    /// Largest (1-based) row index with a nontrivial diagonal entry.
    pub fn last_nonstandard_row(&self) -> Option<usize> {
        (0..self.h.rows()).rev().find(|&i| !self.h[(i, i)].is_one()).map(|i| i + 1)
    }
}

/// One facet `⟨normal, x⟩ <= offset` with primitive integral normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl Facet {
    pub fn evaluate(&self, x: &[BigInt]) -> BigInt {
        self.normal.iter().zip(x).map(|(a, b)| a * b).sum()
    }
}

/// Facet `i` is the one opposite vertex `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetPresentation {
    pub facets: Vec<Facet>,
}

pub fn normalized_volume(s: &LatticeSimplex) -> BigInt {
    exact::det(&s.edge_matrix()).expect("edge matrix is square").abs()
}

pub fn to_hnf_form(s: &LatticeSimplex) -> Result<HnfSimplexForm> {
    let h = exact::hnf_decompose(&s.edge_matrix())?.h;
    let nonstandard_rows = (0..h.rows()).filter(|&i| !h[(i, i)].is_one()).count();
    Ok(HnfSimplexForm { h, nonstandard_rows })
}

/// Checks lower-triangular shape, positive diagonal and `0 <= h_ij < h_ii`.
pub fn validate_herm(h: &IntMatrix) -> Result<()> {
    if !h.is_square() {
        return Err(Error::InvalidHerm(format!("{}x{} is not square", h.rows(), h.cols())));
    }
    for i in 0..h.rows() {
        if !h[(i, i)].is_positive() {
            return Err(Error::InvalidHerm(format!("diagonal entry {} at row {}", h[(i, i)], i + 1)));
        }
        for j in 0..h.cols() {
            let x = &h[(i, j)];
            if j > i && !x.is_zero() {
                return Err(Error::InvalidHerm(format!("nonzero entry above the diagonal at ({},{})", i + 1, j + 1)));
            }
            if j < i && (x.is_negative() || x >= &h[(i, i)]) {
                return Err(Error::InvalidHerm(format!(
                    "entry {x} at ({},{}) outside [0, {})",
                    i + 1,
                    j + 1,
                    h[(i, i)]
                )));
            }
        }
    }
    Ok(())
}

/// The simplex with vertices the origin followed by the rows of `h`.
pub fn simplex_from_hnf(h: &IntMatrix) -> Result<LatticeSimplex> {
    validate_herm(h)?;
    let mut vertices = vec![vec![BigInt::zero(); h.cols()]];
    vertices.extend(h.to_rows());
    LatticeSimplex::new(vertices)
}

pub fn lambda_group(s: &LatticeSimplex) -> Result<LambdaGroup> {
    lambda_group_with_cap(s, DEFAULT_ENUM_CAP)
}

pub fn lambda_group_with_cap(s: &LatticeSimplex, cap: u64) -> Result<LambdaGroup> {
    let w = s.homogenized();
    let smith = exact::smith_decompose(&w)?;
    if smith.diagonal.iter().any(Zero::is_zero) {
        return Err(Error::Degenerate("homogenized vertex matrix is singular".into()));
    }
    let pairs: Vec<(BigInt, GroupElement)> = smith
        .diagonal
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let g = GroupElement::new(
                smith.left.row(i).iter().map(|x| BigRational::new(x.clone(), d.clone())).collect(),
            );
            (d.clone(), g)
        })
        .collect();
    let group = LambdaGroup::assemble(s.dim() + 1, pairs, cap);
    for g in group.generators() {
        if !s.admits(g) {
            return Err(Error::Precondition(format!("generator {g:?} fails the membership condition")));
        }
    }
    Ok(group)
}

/// Least vertex index `i` with `λ_i = 0` on all of `Λ`; such a simplex is a
/// lattice pyramid with apex `v_i`.
pub fn is_lattice_pyramid(s: &LatticeSimplex) -> Result<Option<usize>> {
    Ok(lambda_group(s)?.vanishing_coordinate())
}

/// `conv(Δ × {0}, e_{d+1})`.
pub fn pyramid(s: &LatticeSimplex) -> LatticeSimplex {
    let d = s.dim();
    let mut vertices: Vec<Vec<BigInt>> = s
        .vertices
        .iter()
        .map(|v| v.iter().cloned().chain(std::iter::once(BigInt::zero())).collect())
        .collect();
    let mut apex = vec![BigInt::zero(); d + 1];
    apex[d] = BigInt::one();
    vertices.push(apex);
    LatticeSimplex { vertices }
}

pub fn facet_presentation(s: &LatticeSimplex) -> Result<FacetPresentation> {
    // barycentric coordinates are (x, 1) · W^{-1}; facet i is μ_i >= 0
    let w_inv = exact::inverse_rational(&s.homogenized())
        .map_err(|_| Error::Degenerate("homogenized vertex matrix is singular".into()))?;
    let d = s.dim();
    let facets = (0..=d)
        .map(|i| {
            let col = w_inv.column(i);
            let scale = exact::lcm_all(col.iter().map(|c| c.denom()));
            let scaled: Vec<BigInt> = col
                .iter()
                .map(|c| (c * BigRational::from_integer(scale.clone())).to_integer())
                .collect();
            let g = exact::gcd_all(scaled[..d].iter());
            let normal = scaled[..d].iter().map(|x| -(x / &g)).collect();
            let offset = &scaled[d] / &g;
            Facet { normal, offset }
        })
        .collect();
    Ok(FacetPresentation { facets })
}

/// Searches for a coordinate reordering `order` with
/// `a.permuted(order) == b` as subgroups. Candidates are pruned by the
/// multiset of values in each coordinate and by matching projections.
pub fn find_coordinate_permutation(a: &LambdaGroup, b: &LambdaGroup) -> Result<Option<Vec<usize>>> {
    if a.ambient_len != b.ambient_len {
        return Err(Error::Incomparable(format!(
            "groups in (Q/Z)^{} and (Q/Z)^{}",
            a.ambient_len, b.ambient_len
        )));
    }
    if a.order != b.order || a.invariant_factors != b.invariant_factors {
        return Ok(None);
    }
    let ea = a.require_elements()?;
    let eb = b.require_elements()?;
    let n = a.ambient_len;
    let denom = a.exponent();
    let to_table = |es: &[GroupElement]| -> Vec<Vec<u64>> {
        es.iter()
            .map(|e| {
                e.coords()
                    .iter()
                    .map(|c| {
                        (c * BigRational::from_integer(denom.clone()))
                            .to_integer()
                            .to_u64()
                            .expect("numerator below the exponent")
                    })
                    .collect()
            })
            .collect()
    };
    let ta = to_table(ea);
    let tb = to_table(eb);
    let column_signature = |t: &[Vec<u64>], j: usize| {
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for row in t {
            *counts.entry(row[j]).or_default() += 1;
        }
        counts
    };
    let sig_a: Vec<_> = (0..n).map(|j| column_signature(&ta, j)).collect();
    let sig_b: Vec<_> = (0..n).map(|j| column_signature(&tb, j)).collect();

    // order[i] = coordinate of Λ_1 placed at position i of Λ_2
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    if search_permutation(&ta, &tb, &sig_a, &sig_b, &mut order, &mut used) {
        Ok(Some(order))
    } else {
        Ok(None)
    }
}

fn projected(t: &[Vec<u64>], cols: &[usize]) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = t.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
    rows.sort_unstable();
    rows
}

fn search_permutation(
    ta: &[Vec<u64>],
    tb: &[Vec<u64>],
    sig_a: &[BTreeMap<u64, usize>],
    sig_b: &[BTreeMap<u64, usize>],
    order: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let k = order.len();
    let n = used.len();
    if k == n {
        return true;
    }
    let prefix_b: Vec<usize> = (0..=k).collect();
    for cand in 0..n {
        if used[cand] || sig_a[cand] != sig_b[k] {
            continue;
        }
        order.push(cand);
        if projected(ta, order) == projected(tb, &prefix_b) {
            used[cand] = true;
            if search_permutation(ta, tb, sig_a, sig_b, order, used) {
                return true;
            }
            used[cand] = false;
        }
        order.pop();
    }
    false
}

pub fn groups_equivalent(a: &LambdaGroup, b: &LambdaGroup) -> Result<bool> {
    Ok(find_coordinate_permutation(a, b)?.is_some())
}

/// Unimodular equivalence via the associated groups under vertex reordering.
pub fn unimodular_equivalent(a: &LatticeSimplex, b: &LatticeSimplex) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::Incomparable(format!("dimensions {} and {}", a.dim(), b.dim())));
    }
    groups_equivalent(&lambda_group(a)?, &lambda_group(b)?)
}

/// An element whose order is the group order, if the group is cyclic.
pub fn cyclic_generator(g: &LambdaGroup) -> Result<Option<GroupElement>> {
    let elements = g.require_elements()?;
    Ok(elements.iter().find(|e| &e.order() == g.order()).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn simplex(vs: &[&[i64]]) -> LatticeSimplex {
        LatticeSimplex::from_i64(vs).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn volumes() {
        assert_eq!(normalized_volume(&LatticeSimplex::unit(4)), BigInt::one());
        assert_eq!(normalized_volume(&simplex(&[&[0, 0], &[1, 0], &[2, 3]])), BigInt::from(3));
        let h = IntMatrix::from_i64(&[[1, 0, 0], [1, 2, 0], [0, 0, 2]]).unwrap();
        assert_eq!(normalized_volume(&simplex_from_hnf(&h).unwrap()), BigInt::from(4));
    }

    #[test]
    fn degenerate_and_malformed_inputs() {
        assert!(matches!(
            LatticeSimplex::from_i64(&[[0, 0], [1, 1], [2, 2]]),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            LatticeSimplex::from_i64(&[[0, 0], [1, 0], [1, 0]]),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            LatticeSimplex::from_i64(&[vec![0, 0], vec![1]]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn hnf_forms() {
        let f = to_hnf_form(&LatticeSimplex::unit(3)).unwrap();
        assert_eq!(f.h, IntMatrix::identity(3));
        assert_eq!(f.nonstandard_rows, 0);
        assert_eq!(f.last_nonstandard_row(), None);

        let f = to_hnf_form(&simplex(&[&[0, 0], &[1, 0], &[2, 3]])).unwrap();
        assert_eq!(f.h, IntMatrix::from_i64(&[[1, 0], [2, 3]]).unwrap());
        assert_eq!(f.nonstandard_rows, 1);
        assert_eq!(f.last_nonstandard_row(), Some(2));

        let s = simplex(&[&[0, 0], &[1, 2], &[3, 4]]);
        let f = to_hnf_form(&s).unwrap();
        validate_herm(&f.h).unwrap();
        assert_eq!(exact::det(&f.h).unwrap(), BigInt::from(2));
    }

    #[test]
    fn from_hnf() {
        assert_eq!(simplex_from_hnf(&IntMatrix::identity(2)).unwrap(), LatticeSimplex::unit(2));
        assert_eq!(
            simplex_from_hnf(&IntMatrix::from_i64(&[[1, 0], [2, 3]]).unwrap()).unwrap(),
            simplex(&[&[0, 0], &[1, 0], &[2, 3]])
        );
        assert_eq!(
            simplex_from_hnf(&IntMatrix::from_i64(&[[1, 0, 0], [1, 2, 0], [0, 0, 2]]).unwrap()).unwrap(),
            simplex(&[&[0, 0, 0], &[1, 0, 0], &[1, 2, 0], &[0, 0, 2]])
        );
        for bad in [
            IntMatrix::from_i64(&[[1, 1], [0, 1]]).unwrap(),
            IntMatrix::from_i64(&[[1, 0], [3, 3]]).unwrap(),
            IntMatrix::from_i64(&[[1, 0], [-1, 3]]).unwrap(),
            IntMatrix::from_i64(&[[0, 0], [0, 3]]).unwrap(),
        ] {
            assert!(matches!(simplex_from_hnf(&bad), Err(Error::InvalidHerm(_))), "{bad:?}");
        }
    }

    #[test]
    fn groups() {
        let g = lambda_group(&LatticeSimplex::unit(3)).unwrap();
        assert_eq!(g.order(), &BigInt::one());
        assert!(g.generators().is_empty());
        assert_eq!(g.elements().unwrap().len(), 1);

        let g = lambda_group(&simplex(&[&[0, 0], &[1, 0], &[2, 3]])).unwrap();
        assert_eq!(g.order(), &BigInt::from(3));
        let want = LambdaGroup::generated_by(3, &[GroupElement::from_fractions(&[(1, 3), (1, 3), (1, 3)])], DEFAULT_ENUM_CAP)
            .unwrap();
        assert!(g.same_subgroup(&want).unwrap());

        let g = lambda_group(&simplex(&[&[0, 0], &[2, 0], &[0, 1]])).unwrap();
        assert_eq!(
            g.elements().unwrap(),
            &[GroupElement::zero(3), GroupElement::from_fractions(&[(1, 2), (1, 2), (0, 1)])]
        );
        let s = simplex(&[&[0, 0], &[2, 0], &[0, 1]]);
        let v: Vec<_> = (0..3).map(|k| {
            let e = &g.elements().unwrap()[1];
            s.vertices().iter().zip(e.coords()).fold(BigRational::zero(), |acc, (v, l)| {
                let x = if k < 2 { v[k].clone() } else { BigInt::one() };
                acc + l * BigRational::from_integer(x)
            })
        }).collect();
        assert_eq!(v, vec![ratio(1, 1), ratio(0, 1), ratio(1, 1)]);
    }

    #[test]
    fn pyramid_detection() {
        assert_eq!(is_lattice_pyramid(&simplex(&[&[0, 0], &[2, 0], &[0, 1]])).unwrap(), Some(2));
        assert_eq!(is_lattice_pyramid(&simplex(&[&[0, 0], &[1, 0], &[2, 3]])).unwrap(), None);
        assert_eq!(is_lattice_pyramid(&LatticeSimplex::unit(2)).unwrap(), Some(0));
    }

    #[test]
    fn pyramid_construction() {
        let seg = simplex(&[&[0], &[2]]);
        let p = pyramid(&seg);
        assert_eq!(p, simplex(&[&[0, 0], &[2, 0], &[0, 1]]));
        assert_eq!(normalized_volume(&p), normalized_volume(&seg));
        assert_eq!(is_lattice_pyramid(&p).unwrap(), Some(2));
    }

    #[test]
    fn facets_unit_triangle() {
        let f = facet_presentation(&LatticeSimplex::unit(2)).unwrap();
        let got: Vec<(Vec<BigInt>, BigInt)> = f.facets.iter().map(|x| (x.normal.clone(), x.offset.clone())).collect();
        assert_eq!(
            got,
            vec![
                (ints(&[1, 1]), BigInt::from(1)),
                (ints(&[-1, 0]), BigInt::zero()),
                (ints(&[0, -1]), BigInt::zero()),
            ]
        );
    }

    #[test]
    fn facets_one_row_example() {
        // 3x1 - x2 = 3, -3x1 + 2x2 = 0, -x2 = 0
        let f = facet_presentation(&simplex(&[&[0, 0], &[1, 0], &[2, 3]])).unwrap();
        assert_eq!(f.facets[0], Facet { normal: ints(&[3, -1]), offset: 3.into() });
        assert_eq!(f.facets[1], Facet { normal: ints(&[-3, 2]), offset: 0.into() });
        assert_eq!(f.facets[2], Facet { normal: ints(&[0, -1]), offset: 0.into() });
    }

    #[test]
    fn equivalence_examples() {
        let s = simplex(&[&[0, 0], &[1, 0], &[2, 3]]);
        assert!(unimodular_equivalent(&s, &s).unwrap());
        let h = simplex_from_hnf(&IntMatrix::from_i64(&[[1, 0], [2, 3]]).unwrap()).unwrap();
        assert!(unimodular_equivalent(&s, &h).unwrap());

        let g1 = LambdaGroup::generated_by(
            4,
            &[
                GroupElement::from_fractions(&[(0, 1), (0, 1), (1, 2), (1, 2)]),
                GroupElement::from_fractions(&[(1, 2), (1, 2), (0, 1), (0, 1)]),
            ],
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        let g2 = LambdaGroup::generated_by(
            4,
            &[
                GroupElement::from_fractions(&[(1, 2), (0, 1), (0, 1), (1, 2)]),
                GroupElement::from_fractions(&[(0, 1), (1, 2), (1, 2), (0, 1)]),
            ],
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        assert!(!g1.same_subgroup(&g2).unwrap());
        let order = find_coordinate_permutation(&g1, &g2).unwrap().unwrap();
        assert!(g1.permuted(&order).same_subgroup(&g2).unwrap());
        // swapping coordinates 1 and 3 works
        assert!(g1.permuted(&[0, 3, 2, 1]).same_subgroup(&g2).unwrap());

        assert!(matches!(
            unimodular_equivalent(&LatticeSimplex::unit(2), &LatticeSimplex::unit(3)),
            Err(Error::Incomparable(_))
        ));
        // volume 3: a pyramid versus the non-pyramid triangle
        assert!(!unimodular_equivalent(&simplex(&[&[0, 0], &[3, 0], &[0, 1]]), &s).unwrap());
    }

    #[test]
    fn cyclic_generators() {
        let trivial = lambda_group(&LatticeSimplex::unit(2)).unwrap();
        assert_eq!(cyclic_generator(&trivial).unwrap(), Some(GroupElement::zero(3)));

        let g = lambda_group(&simplex(&[&[0, 0], &[1, 0], &[2, 3]])).unwrap();
        let c = cyclic_generator(&g).unwrap().unwrap();
        assert!(
            c == GroupElement::from_fractions(&[(1, 3), (1, 3), (1, 3)])
                || c == GroupElement::from_fractions(&[(2, 3), (2, 3), (2, 3)])
        );

        let klein = LambdaGroup::generated_by(
            4,
            &[
                GroupElement::from_fractions(&[(0, 1), (0, 1), (1, 2), (1, 2)]),
                GroupElement::from_fractions(&[(1, 2), (1, 2), (0, 1), (0, 1)]),
            ],
            DEFAULT_ENUM_CAP,
        )
        .unwrap();
        assert_eq!(klein.invariant_factors(), &[BigInt::from(2), BigInt::from(2)]);
        assert_eq!(cyclic_generator(&klein).unwrap(), None);
    }

    #[test]
    fn generated_by_invariant_factors() {
        // (1/2, 1/3, 1/6) has order 6 and generates Z/6
        let g = LambdaGroup::generated_by(3, &[GroupElement::from_fractions(&[(1, 2), (1, 3), (1, 6)])], 100).unwrap();
        assert_eq!(g.invariant_factors(), &[BigInt::from(6)]);
        assert_eq!(g.elements().unwrap().len(), 6);
        // above the cap nothing is listed
        let g = LambdaGroup::generated_by(2, &[GroupElement::from_fractions(&[(1, 7), (6, 7)])], 3).unwrap();
        assert_eq!(g.order(), &BigInt::from(7));
        assert!(g.elements().is_none());
        assert!(matches!(cyclic_generator(&g), Err(Error::Capacity { .. })));
    }
}
