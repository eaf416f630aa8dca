//! Explicit families of simplices with closed-form Gorenstein data.
//!
//! Each family comes with a constructor, the generators of its group, and
//! where known the index, the dual reflexive simplex and its volume. The
//! classifiers list parameter tuples; deciding which of them are equivalent
//! is left to the catalog code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact;
use crate::serial::{decimal, decimal_rows, decimal_vec};
use crate::simplex::{GroupElement, LatticeSimplex};

fn q(n: i64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn unit_vector(d: usize, i: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); d];
    e[i] = BigInt::one();
    e
}

fn require_prime(p: u64) -> Result<()> {
    if exact::is_prime(&big(p)) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.to_string()))
    }
}

fn lattice(vertices: Vec<Vec<BigInt>>) -> LatticeSimplex {
    LatticeSimplex::new(vertices).expect("family vertices are affinely independent")
}

/// `A = (a_1, ..., a_d)` with `1 <= a_i <= a_d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OneRowSpec {
    #[serde(with = "decimal_vec")]
    a: Vec<BigInt>,
}

impl OneRowSpec {
    pub fn new(a: Vec<BigInt>) -> Result<Self> {
        let s = Self { a };
        s.check()?;
        Ok(s)
    }

    pub fn from_i64(a: &[i64]) -> Result<Self> {
        Self::new(a.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn check(&self) -> Result<()> {
        let Some(top) = self.a.last() else {
            return Err(Error::InvalidSpec("empty one-row sequence".into()));
        };
        if !top.is_positive() {
            return Err(Error::InvalidSpec(format!("last entry {top} must be positive")));
        }
        if let Some(x) = self.a.iter().find(|x| !x.is_positive() || *x > top) {
            return Err(Error::InvalidSpec(format!("entry {x} outside [1, {top}]")));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    /// `a_1, ..., a_d`.
    pub fn entries(&self) -> &[BigInt] {
        &self.a
    }

    /// `a_d`, which is also the normalized volume.
    pub fn top(&self) -> &BigInt {
        self.a.last().expect("checked nonempty")
    }

    /// The unique `a_0` in `[1, a_d]` with `a_d | a_0 + ... + a_{d-1} + 1`.
    pub fn a0(&self) -> BigInt {
        let top = self.top();
        let partial: BigInt = self.a[..self.dim() - 1].iter().sum::<BigInt>() + 1;
        let r = (-partial).mod_floor(top);
        if r.is_zero() {
            top.clone()
        } else {
            r
        }
    }

    /// `a_0, a_1, ..., a_{d-1}`.
    pub fn lower_entries(&self) -> Vec<BigInt> {
        std::iter::once(self.a0()).chain(self.a[..self.dim() - 1].iter().cloned()).collect()
    }

    /// Whether `1 <= a_0, ..., a_{d-1} < a_d`, i.e. the simplex is not a pyramid.
    pub fn is_pyramid_free(&self) -> bool {
        let top = self.top();
        self.lower_entries().iter().all(|x| x < top)
    }
}

/// `conv(0, e_1, ..., e_{d-1}, Σ (a_d - a_j) e_j + a_d e_d)`.
pub fn one_row_simplex(spec: &OneRowSpec) -> LatticeSimplex {
    let d = spec.dim();
    let top = spec.top();
    let mut vertices = vec![vec![BigInt::zero(); d]];
    vertices.extend((0..d - 1).map(|i| unit_vector(d, i)));
    let mut apex: Vec<BigInt> = spec.a[..d - 1].iter().map(|x| top - x).collect();
    apex.push(top.clone());
    vertices.push(apex);
    lattice(vertices)
}

/// `(a_0, a_1, ..., a_{d-1}, 1) / a_d`.
pub fn one_row_lambda_generator(spec: &OneRowSpec) -> GroupElement {
    let top = spec.top();
    GroupElement::new(
        spec.lower_entries()
            .into_iter()
            .chain(std::iter::once(BigInt::one()))
            .map(|x| BigRational::new(x, top.clone()))
            .collect(),
    )
}

/// Index of the one-row simplex: present iff every `a_i` divides `a_d`.
pub fn one_row_gorenstein(spec: &OneRowSpec) -> Result<Option<u32>> {
    if !spec.is_pyramid_free() {
        return Err(Error::Precondition(format!(
            "{:?} with a_0 = {} is a lattice pyramid",
            spec.a,
            spec.a0()
        )));
    }
    let top = spec.top();
    let lower = spec.lower_entries();
    if !lower.iter().all(|x| top.is_multiple_of(x)) {
        return Ok(None);
    }
    let total: BigInt = lower.iter().sum::<BigInt>() + 1;
    let r = total / top;
    Ok(Some(r.to_u32().ok_or_else(|| Error::Precondition(format!("index {r} out of range")))?))
}

fn require_one_row_index(spec: &OneRowSpec, r: u32) -> Result<()> {
    match one_row_gorenstein(spec)? {
        Some(k) if k == r => Ok(()),
        other => Err(Error::Precondition(format!(
            "{:?} has index {other:?}, not {r}",
            spec.a
        ))),
    }
}

/// Dual of `rΔ(A) - (1, ..., 1)` from the closed-form vertex list.
pub fn one_row_dual(spec: &OneRowSpec, r: u32) -> Result<LatticeSimplex> {
    require_one_row_index(spec, r)?;
    let d = spec.dim();
    let top = spec.top();
    let lower = spec.lower_entries();
    let mut vertices = Vec::with_capacity(d + 1);
    let mut last = vec![BigInt::zero(); d];
    last[d - 1] = -BigInt::one();
    vertices.push(last);
    for i in 1..d {
        let mut w = vec![BigInt::zero(); d];
        w[i - 1] = -(top / &lower[i]);
        w[d - 1] = (top - &lower[i]) / &lower[i];
        vertices.push(w);
    }
    let a0 = &lower[0];
    let mut w = vec![top / a0; d];
    let shift = BigInt::from(r) - BigInt::from(d) + 1;
    w[d - 1] = (shift * top - a0) / a0;
    vertices.push(w);
    Ok(lattice(vertices))
}

/// `r · Π_{i<d} a_d / a_i`.
pub fn one_row_dual_volume(spec: &OneRowSpec, r: u32) -> Result<BigInt> {
    require_one_row_index(spec, r)?;
    let top = spec.top();
    Ok(spec.lower_entries().iter().fold(BigInt::from(r), |acc, a| acc * (top / a)))
}

/// Reads a cyclic generator as a one-row sequence.
///
/// Returns the spec together with `order`, such that `g.permuted(order)`
/// generates the group of [`one_row_simplex`] of the spec.
pub fn one_row_normalization(g: &GroupElement) -> Result<(OneRowSpec, Vec<usize>)> {
    let n = g.len();
    if n < 2 {
        return Err(Error::Dimension(format!("generator with {n} coordinates")));
    }
    let m = g.order();
    for k in 0..n {
        let c = &g.coords()[k];
        if c.denom() != &m && !(m.is_one() && c.is_zero()) {
            continue;
        }
        // the numerator is coprime to m here, so exactly one unit sends it to 1
        let unit = c.numer().extended_gcd(&m).x.mod_floor(&m);
        let scaled = g.scale(&unit);
        let order: Vec<usize> = (0..n).filter(|&i| i != k).chain(std::iter::once(k)).collect();
        let moved = scaled.permuted(&order);
        let m_rat = BigRational::from_integer(m.clone());
        let mut a: Vec<BigInt> = moved.coords()[1..n - 1]
            .iter()
            .map(|x| {
                let v = (x * &m_rat).to_integer();
                if v.is_zero() {
                    m.clone()
                } else {
                    v
                }
            })
            .collect();
        a.push(m.clone());
        let spec = OneRowSpec::new(a)?;
        let lead = (&moved.coords()[0] * &m_rat).to_integer();
        let lead = if lead.is_zero() { m.clone() } else { lead };
        if lead != spec.a0() {
            continue;
        }
        if one_row_simplex(&spec).admits(&g.permuted(&order)) {
            return Ok((spec, order));
        }
    }
    Err(Error::NotCyclicNormalizable(format!("{g:?}")))
}

pub fn generator_to_one_row(g: &GroupElement) -> Result<OneRowSpec> {
    Ok(one_row_normalization(g)?.0)
}

/// Two nonstandard rows: `A = (a_1, ..., a_s)`, `B = (b_1, ..., b_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoRowSpec {
    #[serde(with = "decimal")]
    s: usize,
    #[serde(with = "decimal_vec")]
    a: Vec<BigInt>,
    #[serde(with = "decimal_vec")]
    b: Vec<BigInt>,
}

impl TwoRowSpec {
    pub fn new(s: usize, a: Vec<BigInt>, b: Vec<BigInt>) -> Result<Self> {
        let spec = Self { s, a, b };
        spec.check()?;
        Ok(spec)
    }

    pub fn from_i64(s: usize, a: &[i64], b: &[i64]) -> Result<Self> {
        Self::new(s, a.iter().map(|&x| x.into()).collect(), b.iter().map(|&x| x.into()).collect())
    }

    pub fn check(&self) -> Result<()> {
        let d = self.b.len();
        if self.s < 1 || self.s >= d {
            return Err(Error::InvalidSpec(format!("need 1 <= s < d, got s = {}, d = {d}", self.s)));
        }
        if self.a.len() != self.s {
            return Err(Error::InvalidSpec(format!("A has {} entries, expected {}", self.a.len(), self.s)));
        }
        for (name, row) in [("A", &self.a), ("B", &self.b)] {
            let top = row.last().expect("nonempty");
            if !top.is_positive() {
                return Err(Error::InvalidSpec(format!("last entry of {name} must be positive")));
            }
            if let Some(x) = row[..row.len() - 1].iter().find(|x| x.is_negative() || *x >= top) {
                return Err(Error::InvalidSpec(format!("entry {x} of {name} outside [0, {top})")));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn split(&self) -> usize {
        self.s
    }

    pub fn a(&self) -> &[BigInt] {
        &self.a
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    /// `a_s`.
    pub fn a_top(&self) -> &BigInt {
        &self.a[self.s - 1]
    }

    /// `b_d`.
    pub fn b_top(&self) -> &BigInt {
        &self.b[self.dim() - 1]
    }

    /// `b_s`.
    pub fn b_split(&self) -> &BigInt {
        &self.b[self.s - 1]
    }
}

pub fn two_row_simplex(spec: &TwoRowSpec) -> LatticeSimplex {
    let d = spec.dim();
    let s = spec.s;
    let mut vertices = vec![vec![BigInt::zero(); d]];
    for i in 1..=d {
        let v = if i == s {
            let mut v = spec.a.clone();
            v.resize(d, BigInt::zero());
            v
        } else if i == d {
            spec.b.clone()
        } else {
            unit_vector(d, i - 1)
        };
        vertices.push(v);
    }
    lattice(vertices)
}

/// Outcome of inspecting `b_s` for prime `a_s = p`, `b_d = q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BsReduction {
    /// `b_s = q - 1`: equivalent to this one-row simplex.
    OneRow(OneRowSpec),
    /// `b_s = 0`: the two-row form is needed.
    Essential,
    /// Any other `b_s` rules out the Gorenstein property.
    NotGorenstein,
}

pub fn two_row_bs_reduction(spec: &TwoRowSpec) -> Result<BsReduction> {
    let p = spec.a_top();
    let q = spec.b_top();
    if !exact::is_prime(p) || !exact::is_prime(q) {
        return Err(Error::Precondition(format!("a_s = {p} and b_d = {q} must be prime")));
    }
    let bs = spec.b_split();
    if bs.is_zero() {
        return Ok(BsReduction::Essential);
    }
    if bs != &(q - 1) {
        return Ok(BsReduction::NotGorenstein);
    }
    let d = spec.dim();
    let s = spec.s;
    let pq = p * q;
    let mut coords = vec![BigRational::zero(); d + 1];
    for i in 1..s {
        coords[i] = BigRational::new(&pq - &spec.a[i - 1] - p * &spec.b[i - 1], pq.clone());
    }
    coords[s] = BigRational::new(BigInt::one(), pq.clone());
    for i in s + 1..d {
        coords[i] = BigRational::new(q - &spec.b[i - 1], q.clone());
    }
    coords[d] = BigRational::new(BigInt::one(), q.clone());
    let rest: BigRational = coords.iter().sum();
    coords[0] = -rest;
    let g = GroupElement::new(coords);
    Ok(BsReduction::OneRow(generator_to_one_row(&g)?))
}

/// Non-pyramid Gorenstein simplices of prime volume `p` in dimension `d`:
/// at most one, with index `r = (d + 1) / p`.
pub fn classify_prime(p: u64, d: usize) -> Result<Vec<(u32, GroupElement)>> {
    require_prime(p)?;
    let n = d as u64 + 1;
    if d == 0 || n % p != 0 {
        return Ok(Vec::new());
    }
    let r = (n / p) as u32;
    Ok(vec![(r, GroupElement::new(vec![q(1, p); d + 1]))])
}

/// `A = (1, ..., 1, p)` in dimension `d`.
pub fn prime_one_row(p: u64, d: usize) -> Result<OneRowSpec> {
    let mut a = vec![BigInt::one(); d];
    a[d - 1] = big(p);
    OneRowSpec::new(a)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum PpShape {
    /// Cyclic of order `p^2`: `s` entries `1/p`, the rest `1/p^2`.
    Cyclic {
        #[serde(with = "decimal")]
        s: usize,
    },
    /// `Z/p × Z/p` with the coefficients `a_1, ..., a_{s-1}`.
    Elementary {
        #[serde(with = "decimal")]
        s: usize,
        #[serde(with = "decimal_vec")]
        a: Vec<u64>,
    },
}

/// A parameter tuple for volume `p^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PpSpec {
    #[serde(with = "decimal")]
    pub p: u64,
    #[serde(with = "decimal")]
    pub d: usize,
    #[serde(with = "decimal")]
    pub r: u32,
    pub shape: PpShape,
}

impl PpSpec {
    pub fn cyclic(p: u64, d: usize, s: usize) -> Result<Self> {
        require_prime(p)?;
        if d == 0 || s >= d {
            return Err(Error::InvalidSpec(format!("need 0 <= s <= d - 1, got s = {s}, d = {d}")));
        }
        let total = (d - s) as u64 + p * s as u64 + 1;
        if total % (p * p) != 0 {
            return Err(Error::InvalidSpec(format!("(d - s) + ps + 1 = {total} is not a multiple of p^2")));
        }
        Ok(Self { p, d, r: (total / (p * p)) as u32, shape: PpShape::Cyclic { s } })
    }

    pub fn elementary(p: u64, d: usize, s: usize, a: Vec<u64>) -> Result<Self> {
        require_prime(p)?;
        if (d as u64 + 1) % p != 0 {
            return Err(Error::InvalidSpec(format!("d + 1 = {} is not a multiple of {p}", d + 1)));
        }
        if s < 1 || s >= d {
            return Err(Error::InvalidSpec(format!("need 1 <= s <= d - 1, got s = {s}, d = {d}")));
        }
        if a.len() != s - 1 || a.iter().any(|&x| x < 1 || x >= p) {
            return Err(Error::InvalidSpec(format!("need s - 1 coefficients in [1, p - 1], got {a:?}")));
        }
        Ok(Self { p, d, r: ((d as u64 + 1) / p) as u32, shape: PpShape::Elementary { s, a } })
    }

    pub fn check(&self) -> Result<()> {
        let rebuilt = match &self.shape {
            PpShape::Cyclic { s } => Self::cyclic(self.p, self.d, *s)?,
            PpShape::Elementary { s, a } => Self::elementary(self.p, self.d, *s, a.clone())?,
        };
        if rebuilt.r != self.r {
            return Err(Error::InvalidSpec(format!("stated index {} but the arithmetic gives {}", self.r, rebuilt.r)));
        }
        Ok(())
    }

    /// The generator tuples, reduced into `[0, 1)`.
    pub fn generators(&self) -> Vec<GroupElement> {
        let p = self.p;
        let d = self.d;
        match &self.shape {
            PpShape::Cyclic { s } => {
                let coords = (0..=d).map(|i| if i < *s { q(1, p) } else { q(1, p * p) }).collect();
                vec![GroupElement::new(coords)]
            }
            PpShape::Elementary { s, a } => {
                let s = *s;
                let sum: i64 = a.iter().map(|&x| x as i64).sum();
                let mut first = vec![BigRational::zero(); d + 1];
                let mut second = vec![BigRational::zero(); d + 1];
                first[0] = q(2 - sum, p);
                second[0] = q(sum - 1, p);
                for (i, &ai) in a.iter().enumerate() {
                    first[i + 1] = q(ai as i64 + 1, p);
                    second[i + 1] = q(p as i64 - ai as i64, p);
                }
                second[s] = q(1, p);
                for x in first.iter_mut().skip(s + 1) {
                    *x = q(1, p);
                }
                vec![GroupElement::new(first), GroupElement::new(second)]
            }
        }
    }
}

/// Both cases of the volume `p^2` theorem in dimension `d`, unreduced.
pub fn classify_prime_squared(p: u64, d: usize) -> Result<Vec<PpSpec>> {
    require_prime(p)?;
    let mut out = Vec::new();
    if d == 0 {
        return Ok(out);
    }
    for s in 0..d {
        if let Ok(spec) = PpSpec::cyclic(p, d, s) {
            out.push(spec);
        }
    }
    if (d as u64 + 1) % p == 0 {
        for s in 1..d {
            for a in tuples(s - 1, 1, p - 1) {
                out.push(PpSpec::elementary(p, d, s, a)?);
            }
        }
    }
    Ok(out)
}

/// All tuples of length `n` with entries in `[lo, hi]`, lexicographically.
fn tuples(n: usize, lo: u64, hi: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (lo..=hi).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// A parameter tuple for volume `pq`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PqSpec {
    #[serde(with = "decimal")]
    pub p: u64,
    #[serde(with = "decimal")]
    pub q: u64,
    #[serde(with = "decimal")]
    pub s1: usize,
    #[serde(with = "decimal")]
    pub s2: usize,
    #[serde(with = "decimal")]
    pub s3: usize,
    #[serde(with = "decimal")]
    pub r: u32,
}

impl PqSpec {
    pub fn new(p: u64, q: u64, s1: usize, s2: usize, s3: usize) -> Result<Self> {
        require_prime(p)?;
        require_prime(q)?;
        if p == q {
            return Err(Error::InvalidSpec(format!("p = q = {p}")));
        }
        if s1 + s2 + s3 < 2 {
            return Err(Error::InvalidSpec("s1 + s2 + s3 must be at least 2".into()));
        }
        if s3 == 0 && (s1 == 0 || s2 == 0) {
            return Err(Error::InvalidSpec(format!(
                "generator for (s1, s2, s3) = ({s1}, {s2}, {s3}) does not have order pq"
            )));
        }
        let total = s1 as u64 * q + s2 as u64 * p + s3 as u64;
        if total % (p * q) != 0 {
            return Err(Error::InvalidSpec(format!("s1 q + s2 p + s3 = {total} is not a multiple of pq")));
        }
        Ok(Self { p, q, s1, s2, s3, r: (total / (p * q)) as u32 })
    }

    pub fn check(&self) -> Result<()> {
        let rebuilt = Self::new(self.p, self.q, self.s1, self.s2, self.s3)?;
        if rebuilt.r != self.r {
            return Err(Error::InvalidSpec(format!("stated index {} but the arithmetic gives {}", self.r, rebuilt.r)));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.s1 + self.s2 + self.s3 - 1
    }

    /// `(1/p, ..., 1/q, ..., 1/pq, ...)`.
    pub fn generator(&self) -> GroupElement {
        let coords = std::iter::repeat(q(1, self.p))
            .take(self.s1)
            .chain(std::iter::repeat(q(1, self.q)).take(self.s2))
            .chain(std::iter::repeat(q(1, self.p * self.q)).take(self.s3))
            .collect();
        GroupElement::new(coords)
    }
}

/// All `(s1, s2, s3)` with the index identity and a generator of order `pq`.
pub fn classify_pq(p: u64, q: u64, d: usize) -> Result<Vec<PqSpec>> {
    require_prime(p)?;
    require_prime(q)?;
    if p == q {
        return Err(Error::InvalidSpec(format!("p = q = {p}")));
    }
    let mut out = Vec::new();
    if d == 0 {
        return Ok(out);
    }
    for s1 in 0..=d + 1 {
        for s2 in 0..=d + 1 - s1 {
            if let Ok(spec) = PqSpec::new(p, q, s1, s2, d + 1 - s1 - s2) {
                out.push(spec);
            }
        }
    }
    Ok(out)
}

/// The power family: prime `p`, positions `1 <= s_1 < ... < s_l = d` and
/// coefficient rows, row `k` listing `a_{kj}` for the free `j < s_k`.
///
/// A column is free when it is not one of the positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerSpec {
    #[serde(with = "decimal")]
    p: u64,
    #[serde(with = "decimal_vec")]
    positions: Vec<usize>,
    #[serde(with = "decimal_rows")]
    coefficients: Vec<Vec<u64>>,
}

impl PowerSpec {
    pub fn new(p: u64, positions: Vec<usize>, coefficients: Vec<Vec<u64>>) -> Result<Self> {
        let spec = Self { p, positions, coefficients };
        spec.check()?;
        Ok(spec)
    }

    pub fn check(&self) -> Result<()> {
        let p = self.p;
        require_prime(p)?;
        let pos = &self.positions;
        if pos.is_empty() || pos[0] < 1 || pos.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSpec(format!("positions {pos:?} must be increasing and >= 1")));
        }
        if self.coefficients.len() != pos.len() {
            return Err(Error::InvalidSpec("one coefficient row per position".into()));
        }
        for (k, row) in self.coefficients.iter().enumerate() {
            let expected = self.free_below(pos[k]).count();
            if row.len() != expected {
                return Err(Error::InvalidSpec(format!(
                    "row {} has {} coefficients, expected {expected}",
                    k + 1,
                    row.len()
                )));
            }
            if let Some(x) = row.iter().find(|&&x| x < 1 || x >= p) {
                return Err(Error::InvalidSpec(format!("coefficient {x} outside [1, {}]", p - 1)));
            }
        }
        let d = self.dim();
        if (d as u64 + 1) % p != 0 {
            return Err(Error::InvalidSpec(format!("d + 1 = {} is not a multiple of {p}", d + 1)));
        }
        for j in self.free_below(d) {
            let sum = self.column_sum(j);
            if (sum + 1) % p != 0 {
                return Err(Error::InvalidSpec(format!("column {j} sums to {sum}, not -1 mod {p}")));
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn coefficient_rows(&self) -> &[Vec<u64>] {
        &self.coefficients
    }

    pub fn dim(&self) -> usize {
        *self.positions.last().expect("nonempty")
    }

    /// Number of nonstandard rows.
    pub fn rows(&self) -> usize {
        self.positions.len()
    }

    pub fn index(&self) -> u32 {
        ((self.dim() as u64 + 1) / self.p) as u32
    }

    fn is_position(&self, j: usize) -> bool {
        self.positions.binary_search(&j).is_ok()
    }

    /// Free columns `1 <= j < bound`.
    fn free_below(&self, bound: usize) -> impl Iterator<Item = usize> + '_ {
        (1..bound).filter(move |&j| !self.is_position(j))
    }

    /// `a_{kj}` for 0-based row `k` and free `j < s_k`.
    pub fn coefficient(&self, k: usize, j: usize) -> Option<u64> {
        let idx = self.free_below(self.positions[k]).position(|c| c == j)?;
        Some(self.coefficients[k][idx])
    }

    fn column_sum(&self, j: usize) -> u64 {
        (0..self.rows()).filter_map(|k| self.coefficient(k, j)).sum()
    }

    /// `t_j = (Σ_k a_{kj} + 1) / p` for a free column `j < d`.
    pub fn column_level(&self, j: usize) -> u64 {
        (self.column_sum(j) + 1) / self.p
    }

    /// Interior point of `rΔ`: 1 at the positions, `t_j` elsewhere.
    pub fn translate(&self) -> Vec<BigInt> {
        (1..=self.dim())
            .map(|j| if self.is_position(j) { BigInt::one() } else { big(self.column_level(j)) })
            .collect()
    }
}

/// Every valid power spec for `p`, `l` rows and dimension `d`.
pub fn enumerate_power_specs(p: u64, l: usize, d: usize) -> Result<Vec<PowerSpec>> {
    require_prime(p)?;
    if l == 0 || l > d || (d as u64 + 1) % p != 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for mut positions in combinations(d - 1, l - 1) {
        positions.push(d);
        let free: Vec<usize> = (1..d).filter(|j| !positions.contains(j)).collect();
        // per free column, the admissible values of the rows covering it
        let per_column: Vec<Vec<Vec<u64>>> = free
            .iter()
            .map(|&j| {
                let cover = positions.iter().filter(|&&s| s > j).count();
                tuples(cover, 1, p - 1)
                    .into_iter()
                    .filter(|t| (t.iter().sum::<u64>() + 1) % p == 0)
                    .collect()
            })
            .collect();
        if per_column.iter().any(Vec::is_empty) {
            continue;
        }
        let mut choice = vec![0usize; free.len()];
        'outer: loop {
            let mut rows: Vec<Vec<u64>> = vec![Vec::new(); l];
            for (c, &j) in free.iter().enumerate() {
                let values = &per_column[c][choice[c]];
                let covering = positions.iter().enumerate().filter(|(_, &s)| s > j).map(|(k, _)| k);
                for (k, &v) in covering.zip(values) {
                    rows[k].push(v);
                }
            }
            out.push(PowerSpec::new(p, positions.clone(), rows)?);
            for c in (0..free.len()).rev() {
                choice[c] += 1;
                if choice[c] < per_column[c].len() {
                    continue 'outer;
                }
                choice[c] = 0;
            }
            break;
        }
    }
    Ok(out)
}

/// Increasing `k`-subsets of `1..=n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// The explicit simplex of the family together with its index.
pub fn power_simplex(spec: &PowerSpec) -> (LatticeSimplex, u32) {
    let d = spec.dim();
    let mut vertices = vec![vec![BigInt::zero(); d]];
    for i in 1..=d {
        match spec.positions.iter().position(|&s| s == i) {
            None => vertices.push(unit_vector(d, i - 1)),
            Some(k) => {
                let mut v = vec![BigInt::zero(); d];
                for j in spec.free_below(i) {
                    v[j - 1] = big(spec.coefficient(k, j).expect("free column below s_k"));
                }
                v[i - 1] = big(spec.p);
                vertices.push(v);
            }
        }
    }
    (lattice(vertices), spec.index())
}

/// One generator per position: `(p - a_{kj}) / p` on free `j < s_k`, `1/p`
/// at `s_k`, and coordinate 0 balancing the sum.
pub fn power_generators(spec: &PowerSpec) -> Vec<GroupElement> {
    let d = spec.dim();
    let p = spec.p;
    (0..spec.rows())
        .map(|k| {
            let sk = spec.positions[k];
            let mut coords = vec![BigRational::zero(); d + 1];
            for j in spec.free_below(sk) {
                let a = spec.coefficient(k, j).expect("free column below s_k");
                coords[j] = q(p as i64 - a as i64, p);
            }
            coords[sk] = q(1, p);
            let rest: BigRational = coords.iter().sum();
            coords[0] = -rest;
            GroupElement::new(coords)
        })
        .collect()
}

/// Closed-form dual of `rΔ - t'` for the power family.
pub fn power_dual(spec: &PowerSpec) -> LatticeSimplex {
    let d = spec.dim();
    let p = big(spec.p);
    let mut vertices = Vec::with_capacity(d + 1);
    for &s in &spec.positions {
        let mut w = vec![BigInt::zero(); d];
        w[s - 1] = -BigInt::one();
        vertices.push(w);
    }
    for i in spec.free_below(d) {
        let mut w = vec![BigInt::zero(); d];
        w[i - 1] = -&p;
        for (k, &s) in spec.positions.iter().enumerate() {
            if s > i {
                w[s - 1] = big(spec.coefficient(k, i).expect("row covers column"));
            }
        }
        vertices.push(w);
    }
    let mut w = vec![BigInt::zero(); d];
    for j in spec.free_below(d) {
        w[j - 1] = p.clone();
    }
    for (k, &s) in spec.positions.iter().enumerate() {
        let used: u64 = spec.free_below(s).map(|j| spec.coefficient(k, j).expect("free column")).sum();
        w[s - 1] = BigInt::one() - big(used);
    }
    vertices.push(w);
    lattice(vertices)
}

/// A member of one of the explicit families.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyInstance {
    OneRow(OneRowSpec),
    TwoRow(TwoRowSpec),
    Power(PowerSpec),
    Pq(PqSpec),
    Pp(PpSpec),
}

impl FamilyInstance {
    /// Re-validates after deserialization.
    pub fn check(&self) -> Result<()> {
        match self {
            Self::OneRow(s) => s.check(),
            Self::TwoRow(s) => s.check(),
            Self::Power(s) => s.check(),
            Self::Pq(s) => s.check(),
            Self::Pp(s) => s.check(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::OneRow(_) => "one_row",
            Self::TwoRow(_) => "two_row",
            Self::Power(_) => "power",
            Self::Pq(_) => "pq",
            Self::Pp(_) => "pp",
        }
    }

    /// A concrete simplex whose group is generated by [`Self::generators`]
    /// up to a reordering of the vertices.
    pub fn simplex(&self) -> Result<LatticeSimplex> {
        match self {
            Self::OneRow(s) => Ok(one_row_simplex(s)),
            Self::TwoRow(s) => Ok(two_row_simplex(s)),
            Self::Power(s) => Ok(power_simplex(s).0),
            Self::Pq(s) if s.s3 == 0 => {
                let (p, q) = (s.p as i64, s.q as i64);
                let mut a = vec![p - 1; s.s1 - 1];
                a.push(p);
                let mut b = vec![0; s.s1];
                b.extend(std::iter::repeat(q - 1).take(s.s2 - 2));
                b.push(q);
                Ok(two_row_simplex(&TwoRowSpec::from_i64(s.s1, &a, &b)?))
            }
            Self::Pq(s) => Ok(one_row_simplex(&generator_to_one_row(&s.generator())?)),
            Self::Pp(s) => match &s.shape {
                PpShape::Cyclic { .. } => Ok(one_row_simplex(&generator_to_one_row(&s.generators()[0])?)),
                PpShape::Elementary { s: split, a } => {
                    let p = s.p as i64;
                    let d = s.d;
                    let mut top: Vec<i64> = a.iter().map(|&x| x as i64).collect();
                    top.push(p);
                    let mut b: Vec<i64> = a.iter().map(|&x| p - 1 - x as i64).collect();
                    b.push(0);
                    b.extend(std::iter::repeat(p - 1).take(d - split - 1));
                    b.push(p);
                    Ok(two_row_simplex(&TwoRowSpec::from_i64(*split, &top, &b)?))
                }
            },
        }
    }

    /// The generators the family statement attaches to this instance.
    pub fn generators(&self) -> Result<Vec<GroupElement>> {
        match self {
            Self::OneRow(s) => Ok(vec![one_row_lambda_generator(s)]),
            Self::TwoRow(s) => {
                Ok(crate::simplex::lambda_group(&two_row_simplex(s))?.generators().to_vec())
            }
            Self::Power(s) => Ok(power_generators(s)),
            Self::Pq(s) => Ok(vec![s.generator()]),
            Self::Pp(s) => Ok(s.generators()),
        }
    }

    /// The index asserted by the family, when it asserts one.
    pub fn claimed_index(&self) -> Result<Option<u32>> {
        match self {
            Self::OneRow(s) => one_row_gorenstein(s),
            Self::TwoRow(_) => Ok(None),
            Self::Power(s) => Ok(Some(s.index())),
            Self::Pq(s) => Ok(Some(s.r)),
            Self::Pp(s) => Ok(Some(s.r)),
        }
    }

    pub fn volume(&self) -> BigInt {
        match self {
            Self::OneRow(s) => s.top().clone(),
            Self::TwoRow(s) => s.a_top() * s.b_top(),
            Self::Power(s) => big(s.p).pow(s.rows() as u32),
            Self::Pq(s) => big(s.p * s.q),
            Self::Pp(s) => big(s.p * s.p),
        }
    }
}

/// Closed-form normalized volume of the dual reflexive simplex.
pub fn predicted_dual_volume(inst: &FamilyInstance) -> Result<BigInt> {
    match inst {
        FamilyInstance::OneRow(s) => {
            let r = one_row_gorenstein(s)?
                .ok_or_else(|| Error::Precondition(format!("{:?} is not Gorenstein", s.a)))?;
            one_row_dual_volume(s, r)
        }
        FamilyInstance::TwoRow(_) => {
            Err(Error::InvalidSpec("no closed form for a general two-row simplex".into()))
        }
        FamilyInstance::Power(s) => {
            Ok(BigInt::from(s.index()) * big(s.p).pow((s.dim() - s.rows() + 1) as u32))
        }
        FamilyInstance::Pq(s) => {
            let pe = (s.s1 + s.s3 - 1) as u32;
            let qe = (s.s2 + s.s3 - 1) as u32;
            Ok(BigInt::from(s.r) * big(s.p).pow(pe) * big(s.q).pow(qe))
        }
        FamilyInstance::Pp(s) => {
            let e = match s.shape {
                PpShape::Cyclic { s: split } => 2 * s.d - split,
                PpShape::Elementary { .. } => s.d - 1,
            };
            Ok(BigInt::from(s.r) * big(s.p).pow(e as u32))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gorenstein;
    use crate::simplex::{self, LambdaGroup};

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn elem(parts: &[(i64, i64)]) -> GroupElement {
        GroupElement::from_fractions(parts)
    }

    fn sorted(s: &LatticeSimplex) -> Vec<Vec<BigInt>> {
        let mut v = s.vertices().to_vec();
        v.sort();
        v
    }

    fn one(a: &[i64]) -> OneRowSpec {
        OneRowSpec::from_i64(a).unwrap()
    }

    #[test]
    fn one_row_construction() {
        assert_eq!(one_row_simplex(&one(&[3])).vertices(), &[ints(&[0]), ints(&[3])]);
        assert_eq!(one_row_simplex(&one(&[1, 3])), LatticeSimplex::from_i64(&[[0, 0], [1, 0], [2, 3]]).unwrap());
        assert_eq!(
            one_row_simplex(&one(&[1, 1, 2])),
            LatticeSimplex::from_i64(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 2]]).unwrap()
        );
        assert_eq!(simplex::normalized_volume(&one_row_simplex(&one(&[2, 3, 5]))), BigInt::from(5));
        assert!(OneRowSpec::from_i64(&[4, 3]).is_err());
        assert!(OneRowSpec::from_i64(&[0, 3]).is_err());
        assert!(OneRowSpec::from_i64(&[]).is_err());
    }

    #[test]
    fn one_row_generators() {
        assert_eq!(one_row_lambda_generator(&one(&[1, 3])), elem(&[(1, 3), (1, 3), (1, 3)]));
        assert_eq!(one(&[1, 1, 2]).a0(), BigInt::one());
        assert_eq!(one_row_lambda_generator(&one(&[1, 1, 2])), elem(&[(1, 2); 4]));
        let pyr = one(&[1, 2]);
        assert_eq!(pyr.a0(), BigInt::from(2));
        assert!(!pyr.is_pyramid_free());
        assert_eq!(one_row_lambda_generator(&pyr), elem(&[(0, 1), (1, 2), (1, 2)]));
        for a in [&[1, 3][..], &[1, 1, 2], &[2, 3, 4], &[1, 2, 5, 7]] {
            let spec = one(a);
            let s = one_row_simplex(&spec);
            let g = one_row_lambda_generator(&spec);
            assert!(s.admits(&g));
            let from_gen = LambdaGroup::generated_by(spec.dim() + 1, &[g], 1000).unwrap();
            assert!(from_gen.same_subgroup(&simplex::lambda_group(&s).unwrap()).unwrap());
        }
    }

    #[test]
    fn one_row_index() {
        assert_eq!(one_row_gorenstein(&one(&[1, 3])).unwrap(), Some(1));
        assert_eq!(one_row_gorenstein(&one(&[1, 1, 2])).unwrap(), Some(2));
        assert_eq!(one_row_gorenstein(&one(&[2, 3, 4])).unwrap(), None);
        assert_eq!(one_row_gorenstein(&one(&[3])).unwrap(), None);
        assert!(matches!(one_row_gorenstein(&one(&[1, 2])), Err(Error::Precondition(_))));
    }

    #[test]
    fn one_row_duals() {
        let d = one_row_dual(&one(&[1, 3]), 1).unwrap();
        assert_eq!(sorted(&d), vec![ints(&[-3, 2]), ints(&[0, -1]), ints(&[3, -1])]);
        assert!(one_row_dual(&one(&[1, 3]), 2).is_err());
        assert!(one_row_dual(&one(&[3]), 1).is_err());
        for (a, r) in [(&[1, 3][..], 1), (&[1, 1, 2], 2), (&[1, 1, 1, 1, 2], 3)] {
            let spec = one(a);
            let reflexive = one_row_simplex(&spec).dilate_translate(&BigInt::from(r), &vec![BigInt::one(); spec.dim()]).unwrap();
            let geometric = gorenstein::dual_polytope(&reflexive).unwrap().to_lattice().unwrap();
            assert_eq!(sorted(&one_row_dual(&spec, r).unwrap()), sorted(&geometric));
            assert_eq!(one_row_dual_volume(&spec, r).unwrap(), gorenstein::dual_normalized_volume(&reflexive).unwrap());
        }
        assert_eq!(one_row_dual_volume(&one(&[1, 3]), 1).unwrap(), BigInt::from(9));
        assert_eq!(one_row_dual_volume(&one(&[1, 1, 2]), 2).unwrap(), BigInt::from(16));
    }

    #[test]
    fn normalizing_generators() {
        assert_eq!(generator_to_one_row(&elem(&[(1, 3), (1, 3), (1, 3)])).unwrap(), one(&[1, 3]));
        let spec = generator_to_one_row(&elem(&[(1, 2), (1, 4), (1, 4)])).unwrap();
        assert_eq!(spec, one(&[1, 4]));
        assert_eq!(spec.a0(), BigInt::from(2));
        let pyr = generator_to_one_row(&elem(&[(0, 1), (1, 2), (1, 2)])).unwrap();
        assert_eq!(pyr, one(&[1, 2]));
        assert!(!pyr.is_pyramid_free());
        // a unit scaling is needed: 2/5 becomes 1/5 after multiplying by 3
        let g = elem(&[(1, 5), (2, 5), (2, 5)]);
        let (spec, order) = one_row_normalization(&g).unwrap();
        assert!(one_row_simplex(&spec).admits(&g.permuted(&order)));
        // coordinate sum not integral: not a group element of any simplex
        assert!(matches!(
            generator_to_one_row(&elem(&[(1, 3), (1, 3), (0, 1)])),
            Err(Error::NotCyclicNormalizable(_))
        ));
    }

    #[test]
    fn two_row_construction() {
        let s = two_row_simplex(&TwoRowSpec::from_i64(2, &[1, 2], &[0, 0, 2]).unwrap());
        assert_eq!(s, LatticeSimplex::from_i64(&[[0, 0, 0], [1, 0, 0], [1, 2, 0], [0, 0, 2]]).unwrap());
        assert_eq!(simplex::normalized_volume(&s), BigInt::from(4));
        let s = two_row_simplex(&TwoRowSpec::from_i64(1, &[2], &[0, 3]).unwrap());
        assert_eq!(s, LatticeSimplex::from_i64(&[[0, 0], [2, 0], [0, 3]]).unwrap());
        assert_eq!(simplex::normalized_volume(&s), BigInt::from(6));
        let s = two_row_simplex(&TwoRowSpec::from_i64(2, &[1, 2], &[0, 0, 2, 3]).unwrap());
        assert_eq!(simplex::normalized_volume(&s), BigInt::from(6));
        assert!(TwoRowSpec::from_i64(2, &[2, 2], &[0, 0, 2]).is_err());
        assert!(TwoRowSpec::from_i64(3, &[1, 1, 2], &[0, 0, 2]).is_err());
    }

    #[test]
    fn bs_reduction() {
        let spec = TwoRowSpec::from_i64(1, &[2], &[1, 3]).unwrap();
        assert_eq!(two_row_bs_reduction(&spec).unwrap(), BsReduction::NotGorenstein);
        assert_eq!(gorenstein::gorenstein_index(&two_row_simplex(&spec)).unwrap(), None);

        let spec = TwoRowSpec::from_i64(1, &[2], &[2, 3]).unwrap();
        let BsReduction::OneRow(c) = two_row_bs_reduction(&spec).unwrap() else { panic!("expected a one-row form") };
        assert_eq!(c.top(), &BigInt::from(6));
        assert!(simplex::unimodular_equivalent(&one_row_simplex(&c), &two_row_simplex(&spec)).unwrap());

        let spec = TwoRowSpec::from_i64(1, &[2], &[0, 3]).unwrap();
        assert_eq!(two_row_bs_reduction(&spec).unwrap(), BsReduction::Essential);
        let spec = TwoRowSpec::from_i64(1, &[4], &[0, 3]).unwrap();
        assert!(matches!(two_row_bs_reduction(&spec), Err(Error::Precondition(_))));
    }

    #[test]
    fn prime_classifier() {
        assert_eq!(classify_prime(3, 2).unwrap(), vec![(1, elem(&[(1, 3); 3]))]);
        assert!(classify_prime(2, 2).unwrap().is_empty());
        assert_eq!(classify_prime(2, 3).unwrap(), vec![(2, elem(&[(1, 2); 4]))]);
        assert!(matches!(classify_prime(4, 3), Err(Error::NotPrime(_))));
    }

    #[test]
    fn prime_squared_classifier() {
        let out = classify_prime_squared(2, 3).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(out[0], PpSpec { p: 2, d: 3, r: 1, shape: PpShape::Cyclic { s: 0 } });
        assert_eq!(out[0].generators(), vec![elem(&[(1, 4); 4])]);
        assert_eq!(out[1].shape, PpShape::Elementary { s: 1, a: vec![] });
        assert_eq!(out[1].r, 2);
        assert_eq!(out[1].generators(), vec![elem(&[(0, 1), (0, 1), (1, 2), (1, 2)]), elem(&[(1, 2), (1, 2), (0, 1), (0, 1)])]);
        assert_eq!(out[2].shape, PpShape::Elementary { s: 2, a: vec![1] });

        let out = classify_prime_squared(2, 2).unwrap();
        assert_eq!(out, vec![PpSpec { p: 2, d: 2, r: 1, shape: PpShape::Cyclic { s: 1 } }]);
        assert_eq!(out[0].generators(), vec![elem(&[(1, 2), (1, 4), (1, 4)])]);

        let out = classify_prime_squared(3, 2).unwrap();
        assert_eq!(out, vec![PpSpec { p: 3, d: 2, r: 1, shape: PpShape::Elementary { s: 1, a: vec![] } }]);
        assert!(matches!(classify_prime_squared(6, 2), Err(Error::NotPrime(_))));
    }

    #[test]
    fn pq_classifier() {
        let out = classify_pq(2, 3, 2).unwrap();
        assert_eq!(out, vec![PqSpec { p: 2, q: 3, s1: 1, s2: 1, s3: 1, r: 1 }]);
        assert_eq!(out[0].generator(), elem(&[(1, 2), (1, 3), (1, 6)]));
        assert!(classify_pq(2, 3, 5).unwrap().iter().any(|s| (s.s1, s.s2, s.s3, s.r) == (0, 0, 6, 1)));
        assert!(classify_pq(2, 3, 1).unwrap().is_empty());
        assert!(PqSpec::new(2, 3, 0, 3, 0).is_err());
        assert!(classify_pq(3, 3, 2).is_err());
        assert!(matches!(classify_pq(2, 9, 2), Err(Error::NotPrime(_))));
    }

    #[test]
    fn power_family() {
        let spec = PowerSpec::new(2, vec![1, 3], vec![vec![], vec![1]]).unwrap();
        let (s, r) = power_simplex(&spec);
        assert_eq!(r, 2);
        assert_eq!(simplex::normalized_volume(&s), BigInt::from(4));
        assert_eq!(spec.column_level(2), 1);
        let gens = power_generators(&spec);
        assert_eq!(gens, vec![elem(&[(1, 2), (1, 2), (0, 1), (0, 1)]), elem(&[(0, 1), (0, 1), (1, 2), (1, 2)])]);
        let stated = LambdaGroup::generated_by(4, &gens, 100).unwrap();
        assert!(stated.same_subgroup(&simplex::lambda_group(&s).unwrap()).unwrap());
        let cert = gorenstein::certificate(&s).unwrap().unwrap();
        assert_eq!(cert.index, 2);
        let reflexive = s.dilate_translate(&BigInt::from(r), &spec.translate()).unwrap();
        let geometric = gorenstein::dual_polytope(&reflexive).unwrap().to_lattice().unwrap();
        assert_eq!(sorted(&power_dual(&spec)), sorted(&geometric));
        assert_eq!(predicted_dual_volume(&FamilyInstance::Power(spec)).unwrap(), BigInt::from(8));

        assert!(PowerSpec::new(2, vec![1, 3], vec![vec![], vec![2]]).is_err());
        assert!(PowerSpec::new(2, vec![2, 3], vec![vec![1], vec![1]]).is_err());
        assert!(PowerSpec::new(2, vec![3, 1], vec![vec![], vec![]]).is_err());
    }

    #[test]
    fn power_family_p3() {
        let specs = enumerate_power_specs(3, 2, 5).unwrap();
        assert!(!specs.is_empty());
        let spec = specs.iter().find(|s| s.positions() == [2, 5]).unwrap();
        let (s, r) = power_simplex(spec);
        assert_eq!(r, 2);
        assert_eq!(simplex::normalized_volume(&s), BigInt::from(9));
        assert_eq!(gorenstein::gorenstein_index(&s).unwrap().unwrap().0, 2);
    }

    #[test]
    fn power_with_one_row_matches_prime_family() {
        let spec = PowerSpec::new(2, vec![3], vec![vec![1, 1]]).unwrap();
        let dual = power_dual(&spec);
        let one_row = one_row_dual(&prime_one_row(2, 3).unwrap(), 2).unwrap();
        assert_eq!(sorted(&dual), sorted(&one_row));
        assert_eq!(enumerate_power_specs(2, 1, 3).unwrap(), vec![spec]);
    }

    #[test]
    fn dual_volume_closed_forms() {
        let pq = FamilyInstance::Pq(PqSpec::new(2, 3, 1, 1, 1).unwrap());
        assert_eq!(predicted_dual_volume(&pq).unwrap(), BigInt::from(6));
        let pp = FamilyInstance::Pp(PpSpec::cyclic(2, 2, 1).unwrap());
        assert_eq!(predicted_dual_volume(&pp).unwrap(), BigInt::from(8));
        let pp = FamilyInstance::Pp(PpSpec::elementary(2, 3, 1, vec![]).unwrap());
        assert_eq!(predicted_dual_volume(&pp).unwrap(), BigInt::from(8));
        let two = FamilyInstance::TwoRow(TwoRowSpec::from_i64(1, &[2], &[0, 3]).unwrap());
        assert!(predicted_dual_volume(&two).is_err());
    }

    #[test]
    fn realized_instances_carry_the_stated_groups() {
        let mut instances: Vec<FamilyInstance> = Vec::new();
        instances.extend(classify_prime_squared(2, 3).unwrap().into_iter().map(FamilyInstance::Pp));
        instances.extend(classify_prime_squared(3, 5).unwrap().into_iter().map(FamilyInstance::Pp));
        instances.extend(classify_pq(2, 3, 5).unwrap().into_iter().map(FamilyInstance::Pq));
        instances.extend(classify_pq(2, 5, 6).unwrap().into_iter().map(FamilyInstance::Pq));
        for inst in &instances {
            let s = inst.simplex().unwrap();
            let actual = simplex::lambda_group(&s).unwrap();
            let stated = LambdaGroup::generated_by(s.dim() + 1, &inst.generators().unwrap(), 10_000).unwrap();
            assert!(simplex::groups_equivalent(&actual, &stated).unwrap(), "{inst:?}");
            assert_eq!(simplex::normalized_volume(&s), inst.volume());
            assert_eq!(actual.vanishing_coordinate(), None, "{inst:?}");
            let (r, _) = gorenstein::gorenstein_index(&s).unwrap().unwrap();
            assert_eq!(Some(r), inst.claimed_index().unwrap(), "{inst:?}");
        }
    }

    #[test]
    fn json_kind_tag() {
        let inst = FamilyInstance::Pq(PqSpec::new(2, 3, 1, 1, 1).unwrap());
        let text = serde_json::to_string(&inst).unwrap();
        assert!(text.starts_with(r#"{"kind":"pq","p":"2""#), "{text}");
        let back: FamilyInstance = serde_json::from_str(&text).unwrap();
        assert_eq!(back, inst);
        let pp = FamilyInstance::Pp(PpSpec::elementary(3, 5, 3, vec![1, 2]).unwrap());
        let back: FamilyInstance = serde_json::from_str(&serde_json::to_string(&pp).unwrap()).unwrap();
        assert_eq!(back, pp);
        let bad: FamilyInstance = serde_json::from_str(r#"{"kind":"one_row","a":["4","3"]}"#).unwrap();
        assert!(bad.check().is_err());
    }
}
