//! Reflexivity, the Gorenstein property, and dual simplices.
//!
//! A lattice simplex `Δ` is Gorenstein of index `r` when `rΔ - t` is
//! reflexive for some lattice point `t`. With primitive facet inequalities
//! `⟨a_F, x⟩ <= b_F` of `Δ`, the facets of `rΔ - t` are
//! `⟨a_F, x⟩ <= r b_F - ⟨a_F, t⟩`, so reflexivity is the square-ish linear
//! system `⟨a_F, t⟩ = r b_F - 1` having an integral solution.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{self, RatMatrix};
use crate::simplex::{self, LatticeSimplex};

/// Default bound on the number of nodes visited by an interior-point scan.
pub const DEFAULT_SCAN_CAP: u64 = 10_000_000;

/// A full-dimensional simplex with rational vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSimplex {
    vertices: Vec<Vec<BigRational>>,
}

impl RationalSimplex {
    pub fn new(vertices: Vec<Vec<BigRational>>) -> Self {
        Self { vertices }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vec<BigRational>] {
        &self.vertices
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().flatten().all(BigRational::is_integer)
    }

    /// The same simplex as a lattice simplex, when every vertex is integral.
    pub fn to_lattice(&self) -> Option<LatticeSimplex> {
        if !self.is_integral() {
            return None;
        }
        LatticeSimplex::new(
            self.vertices.iter().map(|v| v.iter().map(BigRational::to_integer).collect()).collect(),
        )
        .ok()
    }
}

/// Proof that a simplex is Gorenstein: `reflexive = index * Δ - translate`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinCertificate {
    pub index: u32,
    pub translate: Vec<BigInt>,
    pub reflexive: LatticeSimplex,
    /// Vertex `i` is dual to the facet opposite vertex `i` of `reflexive`.
    pub dual: LatticeSimplex,
    pub dual_volume: BigInt,
}

/// Least `r <= d + 1` for which `rΔ - t` is reflexive for an integral `t`.
pub fn gorenstein_index(s: &LatticeSimplex) -> Result<Option<(u32, Vec<BigInt>)>> {
    let facets = simplex::facet_presentation(s)?.facets;
    let d = s.dim();
    let normals = RatMatrix::from_rows(
        facets
            .iter()
            .map(|f| f.normal.iter().map(|a| BigRational::from_integer(a.clone())).collect())
            .collect(),
    )?;
    for r in 1..=(d as u32 + 1) {
        let rhs: Vec<BigRational> = facets
            .iter()
            .map(|f| BigRational::from_integer(BigInt::from(r) * &f.offset - 1))
            .collect();
        let Some(t) = exact::solve_linear(&normals, &rhs)? else { continue };
        if t.iter().all(BigRational::is_integer) {
            return Ok(Some((r, t.iter().map(BigRational::to_integer).collect())));
        }
    }
    Ok(None)
}

fn require_origin_interior(p: &LatticeSimplex) -> Result<Vec<simplex::Facet>> {
    let facets = simplex::facet_presentation(p)?.facets;
    if facets.iter().any(|f| !f.offset.is_positive()) {
        return Err(Error::Precondition(format!("origin is not interior to {p:?}")));
    }
    Ok(facets)
}

/// With the origin interior, `P` is reflexive iff every primitive facet sits
/// at lattice distance one from the origin.
pub fn reflexive_check(p: &LatticeSimplex) -> Result<bool> {
    Ok(require_origin_interior(p)?.iter().all(|f| f.offset.is_one()))
}

pub fn dual_polytope(p: &LatticeSimplex) -> Result<RationalSimplex> {
    let facets = require_origin_interior(p)?;
    Ok(RationalSimplex::new(
        facets
            .iter()
            .map(|f| f.normal.iter().map(|a| BigRational::new(a.clone(), f.offset.clone())).collect())
            .collect(),
    ))
}

pub fn dual_normalized_volume(p: &LatticeSimplex) -> Result<BigInt> {
    let dual = dual_polytope(p)?
        .to_lattice()
        .ok_or_else(|| Error::Precondition(format!("dual of {p:?} is not a lattice simplex")))?;
    Ok(simplex::normalized_volume(&dual))
}

pub fn interior_lattice_points(p: &LatticeSimplex, cap: u64) -> Result<Vec<Vec<BigInt>>> {
    interior_lattice_points_up_to(p, cap, usize::MAX)
}

/// Lists at most `limit` interior lattice points of `p`.
///
/// The scan runs over the Hermite image `(x - v_0) U` of the simplex, whose
/// lower-triangular shape lets each coordinate's admissible range be read
/// off from the barycentric coordinates already fixed; `cap` bounds the
/// number of visited nodes.
pub fn interior_lattice_points_up_to(
    p: &LatticeSimplex,
    cap: u64,
    limit: usize,
) -> Result<Vec<Vec<BigInt>>> {
    let exact::HnfDecomposition { u, h } = exact::hnf_decompose(&p.edge_matrix())?;
    let u_inv = exact::inverse_rational(&u)?.map(BigRational::to_integer);
    let d = p.dim();
    let mut scan = TriangularScan {
        h: &h,
        cap,
        limit,
        visited: 0,
        y: vec![BigInt::zero(); d],
        mu: vec![BigRational::zero(); d],
        found: Vec::new(),
    };
    scan.descend(d)?;
    let v0 = p.vertex(0);
    scan.found
        .iter()
        .map(|y| {
            let x = u_inv.left_mul_vec(y)?;
            Ok(x.iter().zip(v0).map(|(a, b)| a + b).collect())
        })
        .collect()
}

struct TriangularScan<'a> {
    h: &'a exact::IntMatrix,
    cap: u64,
    limit: usize,
    visited: u64,
    y: Vec<BigInt>,
    mu: Vec<BigRational>,
    found: Vec<Vec<BigInt>>,
}

impl TriangularScan<'_> {
    /// Fixes coordinate `remaining - 1`; returns true once `limit` is hit.
    fn descend(&mut self, remaining: usize) -> Result<bool> {
        if remaining == 0 {
            self.found.push(self.y.clone());
            return Ok(self.found.len() >= self.limit);
        }
        let k = remaining - 1;
        let d = self.y.len();
        let mut offset = BigRational::zero();
        let mut used = BigRational::zero();
        for i in k + 1..d {
            offset += &self.mu[i] * BigRational::from_integer(self.h[(i, k)].clone());
            used += &self.mu[i];
        }
        let diag = BigRational::from_integer(self.h[(k, k)].clone());
        let upper = &offset + (BigRational::one() - used) * &diag;
        let lo: BigInt = offset.floor().to_integer() + 1;
        let hi: BigInt = upper.ceil().to_integer() - 1;
        let mut y = lo;
        while y <= hi {
            self.visited += 1;
            if self.visited > self.cap {
                return Err(Error::Capacity {
                    what: "interior lattice point scan".into(),
                    limit: self.cap,
                });
            }
            self.mu[k] = (BigRational::from_integer(y.clone()) - &offset) / &diag;
            self.y[k] = y.clone();
            if self.descend(k)? {
                return Ok(true);
            }
            y += 1;
        }
        Ok(false)
    }
}

/// Gorenstein certificate via [`gorenstein_index`], checked before return.
pub fn certificate(s: &LatticeSimplex) -> Result<Option<GorensteinCertificate>> {
    let Some((index, translate)) = gorenstein_index(s)? else { return Ok(None) };
    let reflexive = s.dilate_translate(&BigInt::from(index), &translate)?;
    if !reflexive_check(&reflexive)? {
        return Err(Error::Precondition(format!("{reflexive:?} failed the reflexivity check")));
    }
    let dual = dual_polytope(&reflexive)?
        .to_lattice()
        .ok_or_else(|| Error::Precondition("dual of a reflexive simplex is not integral".into()))?;
    for (i, w) in dual.vertices().iter().enumerate() {
        for (j, x) in reflexive.vertices().iter().enumerate() {
            let pairing: BigInt = w.iter().zip(x).map(|(a, b)| a * b).sum();
            let ok = if i == j { pairing < BigInt::one() } else { pairing.is_one() };
            if !ok {
                return Err(Error::Precondition(format!(
                    "dual vertex {i} pairs to {pairing} with vertex {j}"
                )));
            }
        }
    }
    let dual_volume = simplex::normalized_volume(&dual);
    Ok(Some(GorensteinCertificate { index, translate, reflexive, dual, dual_volume }))
}
