//! Ground truth by exhaustion.
//!
//! Every lattice simplex of volume `m` is equivalent to the simplex spanned
//! by the origin and the rows of some `H` in `Herm(d, m)`. The catalog
//! walks all of them, decides the Gorenstein property along a route that
//! shares nothing with [`gorenstein::gorenstein_index`] (interior points of
//! dilations, facets from minors), and merges equivalent simplices.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{self, IntMatrix};
use crate::families::{self, FamilyInstance, OneRowSpec, PowerSpec};
use crate::gorenstein::{self, GorensteinCertificate};
use crate::simplex::{self, LambdaGroup, LatticeSimplex};

/// Default bound on `|Herm(d, m)|` for a catalog run.
pub const DEFAULT_MAX_ENUM: u64 = 10_000_000;

/// Environment variable overriding [`DEFAULT_MAX_ENUM`].
pub const MAX_ENUM_VAR: &str = "GORLAT_MAX_ENUM";

pub fn enumeration_cap() -> u64 {
    std::env::var(MAX_ENUM_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ENUM)
}

/// Ordered factorizations of `m` into `d` positive factors, lexicographically.
pub fn ordered_factorizations(m: u64, d: usize) -> Vec<Vec<u64>> {
    fn go(m: u64, d: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if d == 0 {
            if m == 1 {
                out.push(cur.clone());
            }
            return;
        }
        for f in 1..=m {
            if m % f == 0 {
                cur.push(f);
                go(m / f, d - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if m >= 1 {
        go(m, d, &mut Vec::with_capacity(d), &mut out);
    }
    out
}

/// `|Herm(d, m)| = Σ_diag Π_i h_ii^(i-1)`, saturating.
pub fn herm_count(d: usize, m: u64) -> u128 {
    ordered_factorizations(m, d)
        .iter()
        .map(|diag| {
            diag.iter().enumerate().fold(1u128, |acc, (i, &h)| {
                acc.saturating_mul((h as u128).saturating_pow(i as u32))
            })
        })
        .fold(0u128, u128::saturating_add)
}

/// `Herm(d, m)` in lexicographic order of the diagonal, then of the
/// sub-diagonal entries read row by row.
pub struct HermEnumeration {
    d: usize,
    diagonals: Vec<Vec<u64>>,
    diag_idx: usize,
    /// Sub-diagonal entries row by row, with their exclusive bounds.
    filling: Vec<u64>,
    bounds: Vec<u64>,
    fresh: bool,
}

impl HermEnumeration {
    pub fn new(d: usize, m: u64) -> Self {
        let mut e = Self {
            d,
            diagonals: ordered_factorizations(m, d),
            diag_idx: 0,
            filling: Vec::new(),
            bounds: Vec::new(),
            fresh: true,
        };
        e.load_diagonal();
        e
    }

    fn load_diagonal(&mut self) {
        self.filling.clear();
        self.bounds.clear();
        if let Some(diag) = self.diagonals.get(self.diag_idx) {
            for (i, &h) in diag.iter().enumerate() {
                for _ in 0..i {
                    self.filling.push(0);
                    self.bounds.push(h);
                }
            }
        }
        self.fresh = true;
    }

    fn current(&self) -> IntMatrix {
        let diag = &self.diagonals[self.diag_idx];
        let mut rows = vec![vec![BigInt::zero(); self.d]; self.d];
        let mut k = 0;
        for i in 0..self.d {
            for j in 0..i {
                rows[i][j] = BigInt::from(self.filling[k]);
                k += 1;
            }
            rows[i][i] = BigInt::from(diag[i]);
        }
        IntMatrix::from_rows(rows).expect("square")
    }

    fn advance_filling(&mut self) -> bool {
        for k in (0..self.filling.len()).rev() {
            self.filling[k] += 1;
            if self.filling[k] < self.bounds[k] {
                return true;
            }
            self.filling[k] = 0;
        }
        false
    }
}

impl Iterator for HermEnumeration {
    type Item = IntMatrix;

    fn next(&mut self) -> Option<IntMatrix> {
        loop {
            if self.diag_idx >= self.diagonals.len() {
                return None;
            }
            if self.fresh {
                self.fresh = false;
                return Some(self.current());
            }
            if self.advance_filling() {
                return Some(self.current());
            }
            self.diag_idx += 1;
            self.load_diagonal();
        }
    }
}

pub fn enumerate_herm(d: usize, m: u64) -> HermEnumeration {
    HermEnumeration::new(d, m)
}

/// `(-1)^k` times the minor of `rows` with column `k` removed, for each `k`:
/// a normal vector of the hyperplane spanned by the rows.
fn cofactor_normal(rows: &[Vec<BigInt>], d: usize) -> Result<Vec<BigInt>> {
    if d == 1 {
        return Ok(vec![BigInt::one()]);
    }
    (0..d)
        .map(|k| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, x)| x.clone()).collect())
                .collect();
            let det = exact::det(&IntMatrix::from_rows(minor)?)?;
            Ok(if k % 2 == 0 { det } else { -det })
        })
        .collect()
}

fn facet_edges(s: &LatticeSimplex, skip: usize) -> Vec<Vec<BigInt>> {
    let others: Vec<&[BigInt]> = (0..=s.dim()).filter(|&j| j != skip).map(|j| s.vertex(j)).collect();
    let base = others[0];
    others[1..].iter().map(|v| v.iter().zip(base).map(|(a, b)| a - b).collect()).collect()
}

/// Lattice distance from the origin to each facet, computed from minors.
/// Facet `i` is opposite vertex `i`; a nonpositive value means the origin is
/// not strictly inside.
pub fn facet_distances_by_minors(s: &LatticeSimplex) -> Result<Vec<BigInt>> {
    let d = s.dim();
    (0..=d)
        .map(|i| {
            let normal = cofactor_normal(&facet_edges(s, i), d)?;
            let g = exact::gcd_all(normal.iter());
            let base = s.vertex(if i == 0 { 1 } else { 0 });
            let dot = |v: &[BigInt]| normal.iter().zip(v).map(|(a, b)| a * b).sum::<BigInt>();
            let level = dot(base);
            let apex = dot(s.vertex(i));
            // orient so that the opposite vertex lies below the facet
            let b = if apex < level { level } else { -level };
            Ok(b / g)
        })
        .collect()
}

/// Least `i` such that vertex `i` sits at lattice height one over the
/// opposite facet, via the gcd of the facet's maximal minors.
pub fn pyramid_by_heights(s: &LatticeSimplex) -> Result<Option<usize>> {
    let d = s.dim();
    let volume = simplex::normalized_volume(s);
    for i in 0..=d {
        let normal = cofactor_normal(&facet_edges(s, i), d)?;
        if exact::gcd_all(normal.iter()) == volume {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Gorenstein index by scanning interior points of `rΔ`.
///
/// The number of interior points of `rΔ` never decreases with `r`, so the
/// scan stops at the first dilation with two or more.
pub fn brute_force_index(s: &LatticeSimplex, scan_cap: u64) -> Result<Option<(u32, Vec<BigInt>)>> {
    let d = s.dim();
    let zero = vec![BigInt::zero(); d];
    for r in 1..=(d as u32 + 1) {
        let dilated = s.dilate_translate(&BigInt::from(r), &zero)?;
        let points = gorenstein::interior_lattice_points_up_to(&dilated, scan_cap, 2)?;
        match points.len() {
            0 => continue,
            1 => {
                let t = points.into_iter().next().expect("one point");
                let centered = dilated.dilate_translate(&BigInt::one(), &t)?;
                if facet_distances_by_minors(&centered)?.iter().all(One::is_one) {
                    return Ok(Some((r, t)));
                }
            }
            _ => return Ok(None),
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub h: IntMatrix,
    pub dim: usize,
    pub volume: BigInt,
    /// Apex index when the simplex is a lattice pyramid.
    pub pyramid: Option<usize>,
    pub certificate: Option<GorensteinCertificate>,
    pub invariant_factors: Vec<BigInt>,
    /// Position in the catalog of this entry's class representative.
    pub class_id: usize,
    pub group: LambdaGroup,
}

impl CatalogEntry {
    pub fn simplex(&self) -> LatticeSimplex {
        simplex::simplex_from_hnf(&self.h).expect("catalog matrices are valid")
    }

    pub fn is_gorenstein(&self) -> bool {
        self.certificate.is_some()
    }

    pub fn index(&self) -> Option<u32> {
        self.certificate.as_ref().map(|c| c.index)
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub dim: usize,
    pub volume: u64,
    pub entries: Vec<CatalogEntry>,
    /// Disagreements between independent computations of the same datum.
    pub inconsistencies: Vec<String>,
}

impl Catalog {
    /// Non-pyramid Gorenstein entries.
    pub fn essential_gorenstein(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.iter().filter(|e| e.pyramid.is_none() && e.is_gorenstein())
    }
}

fn flat(h: &IntMatrix) -> Vec<BigInt> {
    h.row_iter().flatten().cloned().collect()
}

fn analyze_entry(h: IntMatrix) -> Result<(CatalogEntry, Vec<String>)> {
    let s = simplex::simplex_from_hnf(&h)?;
    let group = simplex::lambda_group(&s)?;
    let volume = simplex::normalized_volume(&s);
    let pyramid = group.vanishing_coordinate();
    let certificate = gorenstein::certificate(&s)?;
    let mut issues = Vec::new();
    let label = format!("{:?}", h.to_rows());
    if &volume != group.order() {
        issues.push(format!("{label}: volume {volume} but group order {}", group.order()));
    }
    if pyramid.is_some() != pyramid_by_heights(&s)?.is_some() {
        issues.push(format!("{label}: pyramid tests disagree"));
    }
    let brute = brute_force_index(&s, gorenstein::DEFAULT_SCAN_CAP)?;
    let linear = certificate.as_ref().map(|c| (c.index, c.translate.clone()));
    if brute != linear {
        issues.push(format!("{label}: interior scan gives {brute:?}, linear system gives {linear:?}"));
    }
    let entry = CatalogEntry {
        dim: s.dim(),
        volume,
        pyramid,
        certificate,
        invariant_factors: group.invariant_factors().to_vec(),
        class_id: 0,
        group,
        h,
    };
    Ok((entry, issues))
}

/// Cheap invariant of the equivalence class, used to bucket candidates.
fn class_signature(e: &CatalogEntry) -> Result<(bool, Option<u32>, Vec<BigInt>, Vec<Vec<(BigInt, usize)>>)> {
    let elements = e.group.require_elements()?;
    let mut columns: Vec<Vec<(BigInt, usize)>> = (0..e.group.ambient_len())
        .map(|j| {
            let mut counts: BTreeMap<BigInt, usize> = BTreeMap::new();
            let exp = num_rational::BigRational::from_integer(e.group.exponent());
            for x in elements {
                *counts.entry((&x.coords()[j] * &exp).to_integer()).or_default() += 1;
            }
            counts.into_iter().collect()
        })
        .collect();
    columns.sort();
    Ok((e.pyramid.is_some(), e.index(), e.invariant_factors.clone(), columns))
}

pub fn brute_force_catalog(d: usize, m: u64, dedupe: bool) -> Result<Catalog> {
    brute_force_catalog_with_cap(d, m, dedupe, enumeration_cap())
}

/// Analyzes every `H ∈ Herm(d, m)`; with `dedupe`, keeps one entry per
/// equivalence class, the one with the lexicographically least `H`.
pub fn brute_force_catalog_with_cap(d: usize, m: u64, dedupe: bool, cap: u64) -> Result<Catalog> {
    if d == 0 || m == 0 {
        return Err(Error::Precondition(format!("need d >= 1 and m >= 1, got d = {d}, m = {m}")));
    }
    let total = herm_count(d, m);
    if total > cap as u128 {
        return Err(Error::Capacity { what: format!("|Herm({d}, {m})| = {total}"), limit: cap });
    }
    let matrices: Vec<IntMatrix> = enumerate_herm(d, m).collect();
    let analyzed: Vec<(CatalogEntry, Vec<String>)> =
        matrices.into_par_iter().map(analyze_entry).collect::<Result<_>>()?;
    let mut inconsistencies = Vec::new();
    let mut entries = Vec::with_capacity(analyzed.len());
    for (e, issues) in analyzed {
        entries.push(e);
        inconsistencies.extend(issues);
    }

    // class assignment: first member in enumeration order opens the class
    let mut buckets: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    let mut class_of = vec![0usize; entries.len()];
    for i in 0..entries.len() {
        let sig = class_signature(&entries[i])?;
        let reps = buckets.entry(sig).or_default();
        let mut found = None;
        for &r in reps.iter() {
            if simplex::groups_equivalent(&entries[r].group, &entries[i].group)? {
                found = Some(r);
                break;
            }
        }
        match found {
            Some(r) => class_of[i] = r,
            None => {
                reps.push(i);
                class_of[i] = i;
            }
        }
    }
    // representative: least H among the members
    let mut best: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, &c) in class_of.iter().enumerate() {
        let slot = best.entry(c).or_insert(i);
        if flat(&entries[i].h) < flat(&entries[*slot].h) {
            *slot = i;
        }
    }
    for (i, c) in class_of.iter().enumerate() {
        entries[i].class_id = best[c];
    }
    if dedupe {
        let keep: Vec<bool> = (0..entries.len()).map(|i| entries[i].class_id == i).collect();
        let mut renumber = BTreeMap::new();
        let mut kept = Vec::new();
        for (i, e) in entries.into_iter().enumerate() {
            if keep[i] {
                renumber.insert(i, kept.len());
                kept.push(e);
            }
        }
        for e in kept.iter_mut() {
            e.class_id = renumber[&e.class_id];
        }
        entries = kept;
    }
    Ok(Catalog { dim: d, volume: m, entries, inconsistencies })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classifier {
    Prime,
    PrimeSquared,
    Pq,
}

impl Classifier {
    pub fn name(self) -> &'static str {
        match self {
            Self::Prime => "prime",
            Self::PrimeSquared => "prime-squared",
            Self::Pq => "pq",
        }
    }

    /// The classifier's predictions for volume `m` in dimension `d`.
    pub fn predict(self, d: usize, m: u64) -> Result<Vec<FamilyInstance>> {
        let factors = prime_factors(m);
        match (self, factors.as_slice()) {
            (Self::Prime, [p]) => families::classify_prime(*p, d)?
                .into_iter()
                .map(|_| Ok(FamilyInstance::OneRow(families::prime_one_row(*p, d)?)))
                .collect(),
            (Self::PrimeSquared, [p, p2]) if p == p2 => {
                Ok(families::classify_prime_squared(*p, d)?.into_iter().map(FamilyInstance::Pp).collect())
            }
            (Self::Pq, [p, q]) if p != q => {
                Ok(families::classify_pq(*p, *q, d)?.into_iter().map(FamilyInstance::Pq).collect())
            }
            _ => Err(Error::Precondition(format!("the {} classifier does not apply to volume {m}", self.name()))),
        }
    }
}

/// Prime factors with multiplicity, ascending.
pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= m {
        while m % k == 0 {
            out.push(k);
            m /= k;
        }
        k += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

#[derive(Clone, Debug)]
pub struct CrossCheckReport {
    pub dim: usize,
    pub volume: u64,
    pub classifier: Classifier,
    /// Catalog representative and the predictions equivalent to it.
    pub matched: Vec<(IntMatrix, Vec<FamilyInstance>)>,
    /// Predictions with no equivalent catalog class, or whose realization
    /// contradicts the prediction.
    pub missing: Vec<(FamilyInstance, String)>,
    /// Non-pyramid Gorenstein classes that no prediction accounts for.
    pub unpredicted: Vec<IntMatrix>,
    pub inconsistencies: Vec<String>,
    pub elapsed: Duration,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.unpredicted.is_empty() && self.inconsistencies.is_empty()
    }

    pub fn discrepancies(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (inst, why) in &self.missing {
            out.push(format!("predicted but missing: {inst:?} ({why})"));
        }
        for h in &self.unpredicted {
            out.push(format!("found but unpredicted: {:?}", h.to_rows()));
        }
        out.extend(self.inconsistencies.iter().cloned());
        out
    }
}

/// Problems with a prediction as a simplex in its own right.
fn realization_problems(inst: &FamilyInstance, m: u64) -> Result<(LatticeSimplex, LambdaGroup, Vec<String>)> {
    let s = inst.simplex()?;
    let group = simplex::lambda_group(&s)?;
    let mut problems = Vec::new();
    if simplex::normalized_volume(&s) != BigInt::from(m) {
        problems.push(format!("volume {} instead of {m}", simplex::normalized_volume(&s)));
    }
    if group.vanishing_coordinate().is_some() {
        problems.push("realization is a lattice pyramid".into());
    }
    let stated = LambdaGroup::generated_by(s.dim() + 1, &inst.generators()?, simplex::DEFAULT_ENUM_CAP)?;
    if !simplex::groups_equivalent(&group, &stated)? {
        problems.push("realization does not carry the stated group".into());
    }
    let index = gorenstein::certificate(&s)?.map(|c| c.index);
    if index != inst.claimed_index()? {
        problems.push(format!("index {index:?} instead of {:?}", inst.claimed_index()?));
    }
    Ok((s, group, problems))
}

pub fn cross_check(d: usize, m: u64, classifier: Classifier) -> Result<CrossCheckReport> {
    let start = Instant::now();
    let predictions = classifier.predict(d, m)?;
    let catalog = brute_force_catalog(d, m, true)?;
    let found: Vec<&CatalogEntry> = catalog.essential_gorenstein().collect();
    let mut matched: Vec<(IntMatrix, Vec<FamilyInstance>)> =
        found.iter().map(|e| (e.h.clone(), Vec::new())).collect();
    let mut missing = Vec::new();
    for inst in predictions {
        let (_, group, problems) = realization_problems(&inst, m)?;
        if !problems.is_empty() {
            missing.push((inst, problems.join("; ")));
            continue;
        }
        let mut hit = None;
        for (k, e) in found.iter().enumerate() {
            if simplex::groups_equivalent(&e.group, &group)? {
                hit = Some(k);
                break;
            }
        }
        match hit {
            Some(k) if found[k].index() == inst.claimed_index()? => matched[k].1.push(inst),
            Some(k) => {
                let why = format!("class {:?} has index {:?}", found[k].h.to_rows(), found[k].index());
                missing.push((inst, why));
            }
            None => missing.push((inst, "no equivalent non-pyramid Gorenstein class".into())),
        }
    }
    let unpredicted = matched.iter().filter(|(_, v)| v.is_empty()).map(|(h, _)| h.clone()).collect();
    matched.retain(|(_, v)| !v.is_empty());
    Ok(CrossCheckReport {
        dim: d,
        volume: m,
        classifier,
        matched,
        missing,
        unpredicted,
        inconsistencies: catalog.inconsistencies,
        elapsed: start.elapsed(),
    })
}

/// Non-pyramid Gorenstein classes of volume `p^l` in dimension `d` that
/// are not equivalent to any member of the power family with `l` rows.
pub fn power_family_extras(p: u64, l: usize, d: usize) -> Result<Vec<IntMatrix>> {
    let m = p.checked_pow(l as u32).ok_or_else(|| Error::Precondition("volume overflows".into()))?;
    let groups: Vec<LambdaGroup> = families::enumerate_power_specs(p, l, d)?
        .iter()
        .map(|s| simplex::lambda_group(&families::power_simplex(s).0))
        .collect::<Result<_>>()?;
    let catalog = brute_force_catalog(d, m, true)?;
    let mut extras = Vec::new();
    for e in catalog.essential_gorenstein() {
        let mut covered = false;
        for g in &groups {
            if simplex::groups_equivalent(&e.group, g)? {
                covered = true;
                break;
            }
        }
        if !covered {
            extras.push(e.h.clone());
        }
    }
    Ok(extras)
}

/// Closed-form dual volume against the dual of the certified reflexive
/// translate of the realized simplex.
pub fn check_dual_volume(inst: &FamilyInstance) -> Result<Vec<String>> {
    let s = inst.simplex()?;
    let predicted = families::predicted_dual_volume(inst)?;
    let Some(cert) = gorenstein::certificate(&s)? else {
        return Ok(vec![format!("{inst:?}: realization is not Gorenstein")]);
    };
    if cert.dual_volume != predicted {
        return Ok(vec![format!("{inst:?}: predicted dual volume {predicted}, geometric {}", cert.dual_volume)]);
    }
    Ok(Vec::new())
}

/// Every claim the power family makes about one instance.
pub fn check_power_spec(spec: &PowerSpec) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    let (s, r) = families::power_simplex(spec);
    let d = spec.dim();
    let p = spec.p();
    let l = spec.rows();
    if d as u64 != r as u64 * p - 1 {
        problems.push(format!("d = {d} but r p - 1 = {}", r as u64 * p - 1));
    }
    let volume = simplex::normalized_volume(&s);
    if volume != BigInt::from(p).pow(l as u32) {
        problems.push(format!("volume {volume}, expected {p}^{l}"));
    }
    let actual = simplex::lambda_group(&s)?;
    let stated = LambdaGroup::generated_by(d + 1, &families::power_generators(spec), simplex::DEFAULT_ENUM_CAP)?;
    if !actual.same_subgroup(&stated)? {
        problems.push("group is not generated by the stated rows".into());
    }
    match gorenstein::certificate(&s)? {
        None => problems.push("not Gorenstein".into()),
        Some(cert) => {
            if cert.index != r {
                problems.push(format!("index {} instead of {r}", cert.index));
            }
            if cert.translate != spec.translate() {
                problems.push(format!("interior point {:?} instead of {:?}", cert.translate, spec.translate()));
            }
            let mut geometric = cert.dual.vertices().to_vec();
            let mut closed = families::power_dual(spec).vertices().to_vec();
            geometric.sort();
            closed.sort();
            if geometric != closed {
                problems.push("dual vertices differ from the closed form".into());
            }
            let expected = BigInt::from(r) * BigInt::from(p).pow((d - l + 1) as u32);
            if cert.dual_volume != expected {
                problems.push(format!("dual volume {} instead of {expected}", cert.dual_volume));
            }
        }
    }
    Ok(problems.into_iter().map(|x| format!("{spec:?}: {x}")).collect())
}

/// `Pyr(Δ)` has index one more than `Δ` and the same volume.
pub fn check_pyramid_law(s: &LatticeSimplex) -> Result<Vec<String>> {
    let Some(base) = gorenstein::certificate(s)? else {
        return Ok(vec![format!("{s:?} is not Gorenstein")]);
    };
    let lifted = simplex::pyramid(s);
    let mut problems = Vec::new();
    if simplex::normalized_volume(&lifted) != simplex::normalized_volume(s) {
        problems.push(format!("{s:?}: pyramid changes the volume"));
    }
    match gorenstein::certificate(&lifted)? {
        Some(c) if c.index == base.index + 1 => {}
        other => problems.push(format!(
            "{s:?}: pyramid index {:?}, expected {}",
            other.map(|c| c.index),
            base.index + 1
        )),
    }
    Ok(problems)
}

/// Seeded random Gorenstein members of the one-row, power and pq families.
pub fn sample_family_instances(n: usize, seed: u64) -> Result<Vec<FamilyInstance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut power_pool = Vec::new();
    for p in [2u64, 3] {
        for l in 1..=3 {
            for d in 1..=7 {
                power_pool.extend(families::enumerate_power_specs(p, l, d)?);
            }
        }
    }
    let mut pq_pool = Vec::new();
    for (p, q) in [(2u64, 3u64), (2, 5), (3, 5), (2, 7)] {
        for d in 1..=7 {
            pq_pool.extend(families::classify_pq(p, q, d)?);
        }
    }
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let inst = match out.len() % 3 {
            0 => FamilyInstance::OneRow(random_gorenstein_one_row(&mut rng)?),
            1 => FamilyInstance::Power(power_pool.choose(&mut rng).expect("nonempty pool").clone()),
            _ => FamilyInstance::Pq(pq_pool.choose(&mut rng).expect("nonempty pool").clone()),
        };
        out.push(inst);
    }
    Ok(out)
}

fn random_gorenstein_one_row(rng: &mut ChaCha8Rng) -> Result<OneRowSpec> {
    loop {
        let d = rng.gen_range(1..=5usize);
        let top: u64 = rng.gen_range(2..=12);
        let divisors: Vec<u64> = (1..top).filter(|k| top % k == 0).collect();
        let mut a: Vec<BigInt> = (0..d - 1).map(|_| BigInt::from(*divisors.choose(rng).expect("1 divides"))).collect();
        a.push(BigInt::from(top));
        let spec = OneRowSpec::new(a)?;
        if spec.is_pyramid_free() && families::one_row_gorenstein(&spec)?.is_some() {
            return Ok(spec);
        }
    }
}

/// Seeded random full-dimensional simplex with coordinates in `[-bound, bound]`.
pub fn random_simplex(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> LatticeSimplex {
    loop {
        let vertices: Vec<Vec<BigInt>> = (0..=d)
            .map(|_| (0..d).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
            .collect();
        if let Ok(s) = LatticeSimplex::new(vertices) {
            return s;
        }
    }
}

/// Seeded random nonsingular square matrix with entries in `[-bound, bound]`.
pub fn random_nonsingular(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> IntMatrix {
    loop {
        let rows: Vec<Vec<BigInt>> =
            (0..d).map(|_| (0..d).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect()).collect();
        let m = IntMatrix::from_rows(rows).expect("square");
        if !exact::det(&m).expect("square").is_zero() {
            return m;
        }
    }
}

/// Whether `h` satisfies the Hermite shape: lower triangular, positive
/// diagonal, `0 <= h_ij < h_ii` left of the diagonal.
pub fn has_hermite_shape(h: &IntMatrix) -> bool {
    let n = h.rows();
    (0..n).all(|i| {
        h[(i, i)].is_positive()
            && (0..n).all(|j| match j.cmp(&i) {
                std::cmp::Ordering::Greater => h[(i, j)].is_zero(),
                std::cmp::Ordering::Less => !h[(i, j)].is_negative() && h[(i, j)] < h[(i, i)],
                std::cmp::Ordering::Equal => true,
            })
    })
}
