//! Bohr sets, large spectra, the normalized convolution mass `σ`, and the
//! progression and Bohr-set characterizations of the spectral gap.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::f64::consts::PI;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{difference_count, rep_count, reverse_difference_count};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupDescriptor};
use crate::repr::{op_norm, IrrepCatalog, UnitaryRepresentation};
use crate::report::{BoundReport, Params};
use crate::scalar::{ratio_int, ratio_to_f64, Ratio};
use crate::spectra::laplace_spectrum_dense;
use crate::subset::{GroupFunction, GroupSubset};

/// Slack on `‖ρ(g) − I‖ ≤ δ` absorbing rounding in the matrix entries.
pub const BOHR_TOLERANCE: f64 = 1e-9;

/// Progression scans are exhaustive up to this modulus.
pub const EXHAUSTIVE_SCAN_LIMIT: usize = 300;

/// Number of random progressions examined in sampled scans.
pub const SAMPLED_PROGRESSIONS: usize = 100_000;

/// `log_{3/2} 2`.
pub fn log_three_halves_two() -> f64 {
    2f64.ln() / 1.5f64.ln()
}

type Rep = UnitaryRepresentation<f64>;

/// `‖ρ(g) − I‖` for every element.
pub fn distances(rho: &Rep) -> Vec<f64> {
    rho.group().elements().map(|g| rho.distance_from_identity(g)).collect()
}

/// A Bohr set together with its defining data.
#[derive(Clone, Debug)]
pub struct BohrSet {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub radius: f64,
    pub members: GroupSubset,
}

impl BohrSet {
    /// `{g : ‖γ(g) − I‖ ≤ δ for all γ}`.
    pub fn new(reps: &[&Rep], delta: f64) -> Result<Self> {
        let first = reps.first().ok_or(Error::EmptyRepList)?;
        if !(delta > 0.0 && delta <= 2.0) {
            return Err(Error::DeltaOutOfRange { delta, range: "(0, 2]".into() });
        }
        let group = first.group().clone();
        if reps.iter().any(|r| **r.group() != *group) {
            return Err(Error::GroupMismatch);
        }
        let dist: Vec<Vec<f64>> = reps.iter().map(|r| distances(r)).collect();
        let members = GroupSubset::from_predicate(&group, |g| dist.iter().all(|d| d[g] <= delta + BOHR_TOLERANCE));
        Ok(BohrSet {
            labels: reps.iter().map(|r| r.label().to_string()).collect(),
            dims: reps.iter().map(|r| r.dim()).collect(),
            radius: delta,
            members,
        })
    }

    pub fn single(rho: &Rep, delta: f64) -> Result<Self> {
        Self::new(&[rho], delta)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Identity, symmetry and conjugation invariance.
    pub fn structural_check(&self) -> bool {
        let g = self.members.group();
        self.members.contains(g.identity())
            && self.members.is_symmetric()
            && (g.order() > 256 || g.elements().all(|x| self.members.conjugate_by(x) == self.members))
    }
}

/// `|{g : d(g) ≤ r}|` from precomputed distances.
fn count_within(dist: &[f64], r: f64) -> usize {
    dist.iter().filter(|&&d| d <= r + BOHR_TOLERANCE).count()
}

/// `σ^{(d)}_P(f) = ‖f‖₁^{−d} Σ_{x∈P} f^{(d)}(x)` for nonnegative `f`.
pub fn sigma_d(p: &GroupSubset, f: &GroupFunction<f64>, d: usize) -> Result<f64> {
    if f.values().iter().any(|&v| v < 0.0) {
        return Err(Error::NegativeValues);
    }
    let mass: f64 = f.values().iter().sum();
    if mass <= 0.0 {
        return Err(Error::ZeroMass);
    }
    let fd = f.iterated_convolution(d)?;
    let inside: f64 = p.elements().iter().map(|&x| fd.get(x)).sum();
    Ok(inside / mass.powi(d as i32))
}

/// `σ` over `P` from exact convolution counts with total `mass`.
pub fn sigma_from_counts(p: &GroupSubset, counts: &GroupFunction<i128>, mass: i128) -> f64 {
    let inside: i128 = p.elements().iter().map(|&x| *counts.get(x)).sum();
    inside as f64 / mass as f64
}

/// `{a + jq mod N : 0 ≤ j < l}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Progression {
    pub modulus: usize,
    pub start: usize,
    pub step: usize,
    pub length: usize,
}

impl Progression {
    pub fn elements(&self) -> Vec<usize> {
        (0..self.length).map(|j| (self.start + j * self.step) % self.modulus).collect()
    }

    pub fn to_subset(&self, group: &Arc<FiniteGroup>) -> GroupSubset {
        GroupSubset::from_elements(group, &self.elements()).expect("residues are in range")
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|p| p * p <= n).all(|p| !n.is_multiple_of(p))
}

fn cyclic_modulus(g: &FiniteGroup) -> Result<usize> {
    match g.descriptor() {
        GroupDescriptor::Cyclic { n } => Ok(*n),
        _ => Err(Error::HypothesisFail(format!("{} is not a cyclic group Z/N", g.label()))),
    }
}

fn prime_modulus(g: &FiniteGroup) -> Result<usize> {
    let n = cyclic_modulus(g)?;
    if is_prime(n) {
        Ok(n)
    } else {
        Err(Error::HypothesisFail(format!("modulus {n} is not prime")))
    }
}

/// `|Σ_{a∈A} e^{2πira/N}|`.
pub fn exponential_sum(a: &GroupSubset, r: usize) -> f64 {
    let n = a.group().order() as f64;
    let (re, im) = a.elements().iter().fold((0.0, 0.0), |(re, im), &x| {
        let t = 2.0 * PI * ((r * x) % a.group().order()) as f64 / n;
        (re + t.cos(), im + t.sin())
    });
    re.hypot(im)
}

/// Interval `[a, a + l]` with `l < δN` missing fewer than `ε|A|` elements of `A`,
/// given `|Â(1)| ≥ (1 − 2ε(1 − cos πδ))|A|`.
pub fn concentrated_interval(a: &GroupSubset, eps: f64, delta: f64) -> Result<Progression> {
    let n = prime_modulus(a.group())?;
    if !(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 0.5) {
        return Err(Error::HypothesisFail(format!("need ε ∈ (0,1), δ ∈ (0,1/2); got ε={eps}, δ={delta}")));
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let size = a.len() as f64;
    let need = (1.0 - 2.0 * eps * (1.0 - (PI * delta).cos())) * size;
    let have = exponential_sum(a, 1);
    if have < need {
        return Err(Error::HypothesisFail(format!("|Â(1)| = {have} < {need}")));
    }
    // largest integer l with l < δN
    let dn = delta * n as f64;
    let l_max = if dn.fract() == 0.0 { dn as usize - 1 } else { dn.floor() as usize };
    let ind = a.indicator();
    // shortest qualifying interval; lengths up to l_max + 1
    for length in 1..=(l_max + 1) {
        let mut inside: usize = (0..length).filter(|&j| ind[j % n]).count();
        for start in 0..n {
            if ((a.len() - inside) as f64) < eps * size {
                return Ok(Progression { modulus: n, start, step: 1, length });
            }
            inside -= ind[start] as usize;
            inside += ind[(start + length) % n] as usize;
        }
    }
    Err(Error::SearchExhausted(format!("no interval of length ≤ {} misses fewer than ε|A| = {}", l_max + 1, eps * size)))
}

/// How progressions are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Exhaustive up to [`EXHAUSTIVE_SCAN_LIMIT`], sampled above.
    Auto { seed: u64 },
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

impl Default for ScanMode {
    fn default() -> Self {
        ScanMode::Auto { seed: 0 }
    }
}

/// Largest `σ` over progressions of length at most `cap` in `Z/N`, N prime.
///
/// `σ` is monotone in `P`, so only progressions of length exactly `cap` are
/// examined; for each step they are windows sliding along one cycle.
pub fn max_sigma_progressions(weights: &[i128], mass: i128, cap: usize, mode: ScanMode) -> (f64, Progression) {
    let n = weights.len();
    if cap == 0 {
        return (0.0, Progression { modulus: n, start: 0, step: 1, length: 0 });
    }
    if cap >= n {
        return (1.0, Progression { modulus: n, start: 0, step: 1, length: n });
    }
    let exhaustive = match mode {
        ScanMode::Exhaustive => true,
        ScanMode::Auto { .. } => n <= EXHAUSTIVE_SCAN_LIMIT,
        ScanMode::Sampled { .. } => false,
    };
    let best = if exhaustive {
        (1..n)
            .into_par_iter()
            .map(|q| {
                let mut sum: i128 = (0..cap).map(|j| weights[(j * q) % n]).sum();
                let mut best = (sum, 0usize);
                for a in 1..n {
                    // window starting at a·q: drop (a−1)q, add (a−1+cap)q
                    sum -= weights[((a - 1) * q) % n];
                    sum += weights[((a - 1 + cap) * q) % n];
                    if sum > best.0 {
                        best = (sum, a);
                    }
                }
                (best.0, Progression { modulus: n, start: (best.1 * q) % n, step: q, length: cap })
            })
            .reduce(|| (i128::MIN, Progression { modulus: n, start: 0, step: 1, length: cap }), pick_max)
    } else {
        let (samples, seed) = match mode {
            ScanMode::Sampled { samples, seed } => (samples, seed),
            ScanMode::Auto { seed } => (SAMPLED_PROGRESSIONS, seed),
            ScanMode::Exhaustive => unreachable!(),
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let picks: Vec<(usize, usize)> = (0..samples).map(|_| (rng.gen_range(0..n), rng.gen_range(1..n))).collect();
        picks
            .into_par_iter()
            .map(|(a, q)| {
                let sum: i128 = (0..cap).map(|j| weights[(a + j * q) % n]).sum();
                (sum, Progression { modulus: n, start: a, step: q, length: cap })
            })
            .reduce(|| (i128::MIN, Progression { modulus: n, start: 0, step: 1, length: cap }), pick_max)
    };
    (best.0 as f64 / mass as f64, best.1)
}

fn pick_max(a: (i128, Progression), b: (i128, Progression)) -> (i128, Progression) {
    // deterministic tie-break on (step, start)
    if b.0 > a.0 || (b.0 == a.0 && (b.1.step, b.1.start) < (a.1.step, a.1.start)) {
        b
    } else {
        a
    }
}

/// `⌊δN⌋`, the length cap of `|P| ≤ δN`.
fn length_cap(delta: f64, n: usize) -> usize {
    (delta * n as f64 + 1e-12).floor() as usize
}

fn params(b: &GroupSubset, d: usize) -> Params {
    Params {
        group: b.group().label().to_string(),
        order: b.group().order(),
        set_size: b.len(),
        d: Some(d),
        ..Default::default()
    }
}

/// Result of a progression scan for `B` in `Z/N`.
#[derive(Clone, Debug, Serialize)]
pub struct ProgressionScan {
    pub max_sigma: f64,
    pub argmax: Progression,
    pub cap: usize,
}

/// Largest `σ^{(d)}_P(B)` over progressions with `|P| ≤ δN`.
pub fn scan_progressions(b: &GroupSubset, d: usize, delta: f64, mode: ScanMode) -> Result<ProgressionScan> {
    let n = prime_modulus(b.group())?;
    let counts = rep_count(b, d)?;
    let mass = (b.len() as i128).pow(d as u32);
    let cap = length_cap(delta, n);
    let (max_sigma, argmax) = max_sigma_progressions(counts.values(), mass, cap, mode);
    Ok(ProgressionScan { max_sigma, argmax, cap })
}

/// `1 − max_{r≠0} |B̂(r)|/|B|`: the spectral gap of `Cay(B)` in an abelian group.
///
/// Cyclic groups sum characters directly; other groups use the dense spectrum.
pub fn modulus_gap(b: &GroupSubset) -> Result<f64> {
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    match b.group().descriptor() {
        GroupDescriptor::Cyclic { n: 1 } => Ok(1.0),
        GroupDescriptor::Cyclic { n } => {
            let worst = (1..*n).map(|r| exponential_sum(b, r)).fold(0.0, f64::max);
            Ok(1.0 - worst / b.len() as f64)
        }
        _ => Ok(laplace_spectrum_dense::<f64>(b)?.lambda_mod),
    }
}

/// `λ₁ ≥ (2α/d)(1 − cos(πδ/d))` when every progression with `|P| ≤ δN` has
/// `σ^{(d)}_P(B) ≤ 1 − α`. With `alpha = None`, `α` is the scanned value.
pub fn progression_gap_forward(b: &GroupSubset, d: usize, delta: f64, alpha: Option<f64>, mode: ScanMode) -> Result<BoundReport> {
    if d == 0 {
        return Err(Error::KZero);
    }
    if !(delta > 0.0 && delta < 1.0) || delta >= d as f64 / 2.0 {
        return Err(Error::HypothesisFail(format!("need δ ∈ (0,1) and δ < d/2; got δ={delta}, d={d}")));
    }
    let scan = scan_progressions(b, d, delta, mode)?;
    let measured_alpha = 1.0 - scan.max_sigma;
    let alpha = match alpha {
        Some(a) if a > measured_alpha + 1e-12 => {
            return Err(Error::HypothesisFail(format!("σ reaches {} > 1 − α = {}", scan.max_sigma, 1.0 - a)))
        }
        Some(a) => a,
        None => measured_alpha,
    };
    let bound = 2.0 * alpha / d as f64 * (1.0 - (PI * delta / d as f64).cos());
    Ok(BoundReport::lower("progression_gap_forward", params(b, d), bound, modulus_gap(b)?))
}

/// `σ^{(d)}_P(B) ≤ 1 − α` for `|P| ≤ δN`, with `α = (1 − (1 − λ₁)^d − πδ)/2`.
pub fn progression_gap_reverse(b: &GroupSubset, d: usize, delta: f64, mode: ScanMode) -> Result<(f64, BoundReport)> {
    if d == 0 {
        return Err(Error::KZero);
    }
    let lambda = modulus_gap(b)?;
    let alpha = (1.0 - (1.0 - lambda).powi(d as i32) - PI * delta) / 2.0;
    let scan = scan_progressions(b, d, delta, mode)?;
    let report = BoundReport::upper("progression_gap_reverse", params(b, d), 1.0 - alpha, scan.max_sigma, alpha <= 0.0);
    Ok((alpha, report))
}

fn counts_at_least(count: &GroupFunction<i128>, g: &Ratio, omega: &GroupSubset) -> bool {
    count.group().elements().all(|x| omega.contains(x) || ratio_int(*count.get(x)) >= *g)
}

/// Abelian basis bound `λ₁ ≥ g(N − 2|Ω|)/(d|B|^d)·(1 − cos(π/2d))` and its
/// large-`Ω` companion `λ₁ ≥ εgN/(d|B|^d)·(1 − cos(επ/2d))`, `ε = 1 − |Ω|/N`.
pub fn abelian_basis_bounds(b: &GroupSubset, d: usize, g: &Ratio, omega: &GroupSubset) -> Result<Vec<BoundReport>> {
    let n = prime_modulus(b.group())?;
    if d < 2 || *g < ratio_int(1) {
        return Err(Error::HypothesisFail("need d ≥ 2 and g ≥ 1".into()));
    }
    if !counts_at_least(&rep_count(b, d)?, g, omega) {
        return Err(Error::HypothesisFail(format!("B^({d}) < g outside Ω")));
    }
    let gf = ratio_to_f64(g);
    let bd = (b.len() as f64).powi(d as i32);
    let lambda = modulus_gap(b)?;
    let p = Params { g: Some(gf), omega: Some(omega.len()), ..params(b, d) };
    let first = gf * (n as f64 - 2.0 * omega.len() as f64) / (d as f64 * bd) * (1.0 - (PI / (2.0 * d as f64)).cos());
    let eps = 1.0 - omega.len() as f64 / n as f64;
    let second = eps * gf * n as f64 / (d as f64 * bd) * (1.0 - (eps * PI / (2.0 * d as f64)).cos());
    Ok(vec![
        BoundReport::lower("abelian_basis", p.clone(), first, lambda),
        BoundReport::lower("abelian_basis_large_omega", p, second, lambda),
    ])
}

/// Largest `σ^{(d)}_{Bohr(ρ,δ)}(B ∗ B⁻¹)` over nontrivial `ρ`.
pub fn max_sigma_bohr(b: &GroupSubset, d: usize, delta: f64, catalog: &IrrepCatalog<f64>) -> Result<f64> {
    let counts = difference_count(b, d)?;
    let mass = (b.len() as i128).pow(2 * d as u32);
    let sigmas: Vec<f64> = catalog
        .nontrivial()
        .map(|rho| BohrSet::single(rho, delta).map(|p| sigma_from_counts(&p.members, &counts, mass)))
        .collect::<Result<_>>()?;
    Ok(sigmas.into_iter().fold(0.0, f64::max))
}

/// `λ₁ ≥ αδ/(2d²)` when every nontrivial `Bohr(ρ, δ)` has `σ^{(d)}(B∗B⁻¹) ≤ 1 − α`.
pub fn bohr_gap_forward(b: &GroupSubset, d: usize, delta: f64, catalog: &IrrepCatalog<f64>) -> Result<BoundReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::DeltaOutOfRange { delta, range: "(0, 1)".into() });
    }
    let alpha = 1.0 - max_sigma_bohr(b, d, delta, catalog)?;
    let bound = alpha * delta / (2.0 * (d * d) as f64);
    let measured = laplace_spectrum_dense::<f64>(b)?.lambda1;
    Ok(BoundReport::lower("bohr_gap_forward", params(b, d), bound, measured))
}

/// `σ^{(d)}_{Bohr(ρ,δ)}(B∗B⁻¹) ≤ 1 − α` with `α = (1 − (1 − λ₁*)^d − δ)/2`.
pub fn bohr_gap_reverse(b: &GroupSubset, d: usize, delta: f64, catalog: &IrrepCatalog<f64>) -> Result<(f64, BoundReport)> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::DeltaOutOfRange { delta, range: "(0, 1)".into() });
    }
    let star = laplace_spectrum_dense::<f64>(b)?.lambda1_star;
    let alpha = (1.0 - (1.0 - star).powi(d as i32) - delta) / 2.0;
    let sigma = max_sigma_bohr(b, d, delta, catalog)?;
    Ok((alpha, BoundReport::upper("bohr_gap_reverse", params(b, d), 1.0 - alpha, sigma, alpha <= 0.0)))
}

/// `1 − ‖Â(ρ)‖/|A|`, the smallest admissible `ε` for the tail bound.
pub fn measured_eps(a: &GroupSubset, rho: &Rep) -> Result<f64> {
    Ok(1.0 - op_norm(&rho.fourier_set(a)?) / a.len() as f64)
}

/// Tail `Σ_{g∉Bohr(ρ,δ)} (A∗A⁻¹)(g)` against `(2ε/δ)|A|²`, given `‖Â(ρ)‖ ≥ (1 − ε)|A|`.
pub fn bohr_tail(a: &GroupSubset, rho: &Rep, eps: f64, delta: f64) -> Result<BoundReport> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let size = a.len() as f64;
    let norm = op_norm(&rho.fourier_set(a)?);
    if norm < (1.0 - eps) * size - BOHR_TOLERANCE {
        return Err(Error::HypothesisFail(format!("‖Â(ρ)‖ = {norm} < (1 − ε)|A| = {}", (1.0 - eps) * size)));
    }
    let bohr = BohrSet::single(rho, delta)?;
    let diff = difference_count(a, 1)?;
    let tail: i128 = a.group().elements().filter(|&g| !bohr.members.contains(g)).map(|g| *diff.get(g)).sum();
    let bound = 2.0 * eps / delta * size * size;
    let p = Params { group: a.group().label().to_string(), order: a.group().order(), set_size: a.len(), ..Default::default() };
    Ok(BoundReport::upper("bohr_tail", p, bound, tail as f64, bound >= size * size))
}

/// Radii below which Bohr sets of `ρ` are small.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SizeThresholds {
    pub dim: usize,
    /// `|Bohr(ρ, δ)| ≤ |Γ|/2` for `δ ≤ delta_half`.
    pub delta_half: f64,
    /// `δ_ε = coefficient · ε^{log_{3/2} 2}`.
    pub eps_coefficient: f64,
}

impl SizeThresholds {
    pub fn delta_eps(&self, eps: f64) -> f64 {
        self.eps_coefficient * eps.powf(log_three_halves_two())
    }
}

pub fn bohr_size_thresholds(rho: &Rep) -> Result<SizeThresholds> {
    if rho.is_trivial() {
        return Err(Error::TrivialRep);
    }
    let d = rho.dim();
    Ok(if d == 1 {
        SizeThresholds { dim: 1, delta_half: 3f64.sqrt() / 2.0, eps_coefficient: 3f64.sqrt() }
    } else {
        let frac = 1.0 - 1.0 / d as f64;
        SizeThresholds { dim: d, delta_half: (frac / 2.0).sqrt(), eps_coefficient: (2.0 * frac).sqrt() }
    })
}

fn order_params(g: &FiniteGroup, label: &str) -> Params {
    Params { group: format!("{}:{label}", g.label()), order: g.order(), ..Default::default() }
}

/// `|Bohr(ρ, δ_half)| ≤ |Γ|/2`.
pub fn check_half_size(rho: &Rep) -> Result<BoundReport> {
    let t = bohr_size_thresholds(rho)?;
    let size = BohrSet::single(rho, t.delta_half)?.len();
    let n = rho.group().order() as f64;
    Ok(BoundReport::upper("bohr_half_size", order_params(rho.group(), rho.label()), n / 2.0, size as f64, false))
}

/// `|Bohr(ρ, δ_ε)| ≤ ε|Γ|`, after certifying that no proper normal subgroup
/// has index at most `1/ε`.
pub fn check_eps_size(rho: &Rep, eps: f64) -> Result<BoundReport> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::HypothesisFail(format!("need ε ∈ (0, 1/2], got {eps}")));
    }
    let t = bohr_size_thresholds(rho)?;
    let g = rho.group();
    if let Some(index) = normal_subgroup_min_index(g, usize::MAX)? {
        if index as f64 <= 1.0 / eps {
            return Err(Error::HypothesisFail(format!("normal subgroup of index {index} ≤ 1/ε")));
        }
    }
    let size = BohrSet::single(rho, t.delta_eps(eps))?.len();
    let n = g.order() as f64;
    Ok(BoundReport::upper("bohr_eps_size", order_params(g, rho.label()), eps * n, size as f64, false))
}

/// Smallest index `≤ cap` of a proper normal subgroup, if any.
///
/// Abelian groups use the smallest prime factor of the order. Other groups
/// enumerate normal subgroups as closures of unions of conjugacy classes,
/// which requires `|Γ| ≤ 200`.
pub fn normal_subgroup_min_index(g: &FiniteGroup, cap: usize) -> Result<Option<usize>> {
    let n = g.order();
    if n == 1 {
        return Ok(None);
    }
    let index = if g.is_abelian() {
        (2..=n).find(|&p| n.is_multiple_of(p)).expect("n ≥ 2 has a prime factor")
    } else {
        if n > 200 {
            return Err(Error::GroupTooLarge { order: n, limit: 200 });
        }
        let largest = normal_subgroups(g).into_iter().map(|h| h.len()).filter(|&s| s < n).max().unwrap_or(1);
        n / largest
    };
    Ok((index <= cap).then_some(index))
}

/// All normal subgroups, as sorted element lists.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Vec<Elem>> {
    let classes = g.conjugacy_classes();
    let closure = |seed: &BTreeSet<Elem>| -> BTreeSet<Elem> {
        let mut h = seed.clone();
        h.insert(g.identity());
        let mut queue: VecDeque<Elem> = h.iter().copied().collect();
        let gens: Vec<Elem> = h.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = g.op(x, s);
                if h.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        h
    };
    let trivial: BTreeSet<Elem> = [g.identity()].into_iter().collect();
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut queue = VecDeque::from([trivial]);
    let mut out = Vec::new();
    while let Some(h) = queue.pop_front() {
        let key: Vec<Elem> = h.iter().copied().collect();
        if !seen.insert(key.clone()) {
            continue;
        }
        out.push(key);
        for c in &classes {
            if !h.contains(&c[0]) {
                let mut seed = h.clone();
                seed.extend(c.iter().copied());
                queue.push_back(closure(&seed));
            }
        }
    }
    out.sort_by_key(|h| (h.len(), h.clone()));
    out
}

/// Representations with `‖Â(ρ)‖ ≥ ε|A|`, as catalog indices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpecSet {
    pub threshold: f64,
    pub members: Vec<usize>,
}

pub fn spec_eps(a: &GroupSubset, eps: f64, catalog: &IrrepCatalog<f64>) -> Result<SpecSet> {
    let norms = normalized_norms(a, catalog)?;
    Ok(SpecSet {
        threshold: eps,
        members: norms.iter().enumerate().filter(|(_, &v)| v >= eps - BOHR_TOLERANCE).map(|(i, _)| i).collect(),
    })
}

/// `‖Â(ρ)‖/|A|` for every catalog entry.
pub fn normalized_norms(a: &GroupSubset, catalog: &IrrepCatalog<f64>) -> Result<Vec<f64>> {
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let size = a.len() as f64;
    Ok(catalog.transform_set(a)?.iter().map(|m| op_norm(m) / size).collect())
}

/// `Spec_{1−ε₁}(A)·Spec_{1−ε₂}(A) ⊆ Spec_{1−ε₁−ε₂}(A)` over all character pairs.
///
/// The report's measured value is the smallest normalized coefficient among
/// products of pairs; the bound is `1 − ε₁ − ε₂`.
pub fn spec_product_check(a: &GroupSubset, eps1: f64, eps2: f64, catalog: &IrrepCatalog<f64>) -> Result<BoundReport> {
    let g = a.group();
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let norms = normalized_norms(a, catalog)?;
    let left = spec_eps(a, 1.0 - eps1, catalog)?.members;
    let right = spec_eps(a, 1.0 - eps2, catalog)?.members;
    // abelian catalogs index characters like elements: χ_r χ_s = χ_{r+s}
    let worst = left
        .iter()
        .flat_map(|&r| right.iter().map(move |&s| (r, s)))
        .map(|(r, s)| norms[g.op(r, s)])
        .fold(f64::INFINITY, f64::min);
    let target = 1.0 - eps1 - eps2;
    let p = Params { group: g.label().to_string(), order: g.order(), set_size: a.len(), ..Default::default() };
    Ok(BoundReport::lower("spec_product", p, target, worst.min(1.0)))
}

/// `Bohr(δ₁)·Bohr(δ₂) ⊆ Bohr(δ₁ + δ₂)`; measured value counts violations.
pub fn check_sum_rule(reps: &[&Rep], delta1: f64, delta2: f64) -> Result<BoundReport> {
    let b1 = BohrSet::new(reps, delta1)?;
    let b2 = BohrSet::new(reps, delta2)?;
    let sum = (delta1 + delta2).min(2.0);
    let target = BohrSet::new(reps, sum)?;
    let product = b1.members.product(&b2.members)?;
    let violations = product.elements().iter().filter(|&&x| !target.members.contains(x)).count();
    let g = b1.members.group();
    let p = Params { group: g.label().to_string(), order: g.order(), set_size: product.len(), ..Default::default() };
    Ok(BoundReport::upper("bohr_sum_rule", p, 0.0, violations as f64, delta1 + delta2 >= 2.0))
}

/// `|Bohr(ρ,δ)²| ≤ 2^{21d²/2}|Bohr(ρ,δ)|` for `δ ∈ (0, 2/5]`.
pub fn check_doubling(rho: &Rep, delta: f64) -> Result<BoundReport> {
    if !(delta > 0.0 && delta <= 0.4) {
        return Err(Error::DeltaOutOfRange { delta, range: "(0, 2/5]".into() });
    }
    let b = BohrSet::single(rho, delta)?;
    let ratio = b.members.product(&b.members)?.len() as f64 / b.len() as f64;
    let d = rho.dim() as f64;
    let bound = 2f64.powf(21.0 * d * d / 2.0);
    let vacuous = bound >= rho.group().order() as f64;
    Ok(BoundReport::upper("bohr_doubling", order_params(rho.group(), rho.label()), bound, ratio, vacuous))
}

/// Greedy covering: `X ⊆ Bohr(δ)` maximal with disjoint `x·Bohr(δ/4)`, so
/// that `Bohr(δ) ⊆ Bohr(δ/2)·X`. Fails if the containment does not hold.
pub fn ruzsa_covering(rho: &Rep, delta: f64) -> Result<(Vec<Elem>, BoundReport)> {
    if !(delta > 0.0 && delta <= 0.4) {
        return Err(Error::DeltaOutOfRange { delta, range: "(0, 2/5]".into() });
    }
    let g = rho.group();
    let big = BohrSet::single(rho, delta)?.members;
    let half = BohrSet::single(rho, delta / 2.0)?.members;
    let quarter = BohrSet::single(rho, delta / 4.0)?.members;
    let mut taken = GroupSubset::empty(g);
    let mut x = Vec::new();
    for c in big.elements() {
        let translate = GroupSubset::from_elements(g, &[c])?.product(&quarter)?;
        if translate.intersection(&taken)?.is_empty() {
            taken = taken.union(&translate)?;
            x.push(c);
        }
    }
    let xs = GroupSubset::from_elements(g, &x)?;
    let covered = big.is_subset_of(&half.product(&xs)?) && big.is_subset_of(&xs.product(&half)?);
    let d = rho.dim() as f64;
    let bound = 2f64.powf(25.0 * d * d);
    let measured = if covered { x.len() as f64 } else { f64::INFINITY };
    let vacuous = bound >= g.order() as f64;
    Ok((x, BoundReport::upper("bohr_covering", order_params(g, rho.label()), bound, measured, vacuous)))
}

/// `|Bohr({ρ_j}, δ_k)| ≥ |Γ|⁻¹ Π_j |Bohr(ρ_j, δ_j/2)|` for ascending radii.
pub fn check_multi_bohr(reps: &[&Rep], radii: &[f64]) -> Result<BoundReport> {
    if reps.is_empty() || reps.len() != radii.len() {
        return Err(Error::EmptyRepList);
    }
    if radii.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::DeltaOutOfRange { delta: radii[0], range: "radii must be ascending".into() });
    }
    let joint = BohrSet::new(reps, *radii.last().expect("nonempty"))?.len() as f64;
    let n = reps[0].group().order() as f64;
    let product: f64 = reps
        .iter()
        .zip(radii)
        .map(|(r, &d)| BohrSet::single(r, d / 2.0).map(|b| b.len() as f64))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .product();
    let g = reps[0].group();
    Ok(BoundReport::lower("multi_bohr", order_params(g, &format!("{}reps", reps.len())), product / n, joint))
}

/// `1/(100d²)`.
pub fn kappa_max(dim: usize) -> f64 {
    1.0 / (100.0 * (dim * dim) as f64)
}

/// Regularity of `Bohr(ρ, δ)`, checked at every radius where the size can change.
pub fn is_regular(rho: &Rep, delta: f64) -> bool {
    is_regular_with(&distances(rho), rho.dim(), delta)
}

fn is_regular_with(dist: &[f64], dim: usize, delta: f64) -> bool {
    let km = kappa_max(dim);
    let c = 100.0 * (dim * dim) as f64;
    let base = count_within(dist, delta) as f64;
    let ok = |kappa: f64, size: f64| (size - base).abs() <= c * kappa.abs() * base + 1e-12;
    // window endpoints
    if !ok(km, count_within(dist, (1.0 + km) * delta) as f64) || !ok(-km, count_within(dist, (1.0 - km) * delta) as f64) {
        return false;
    }
    let lo = (1.0 - km) * delta;
    let hi = (1.0 + km) * delta;
    for &r in dist {
        if r > delta + BOHR_TOLERANCE && r <= hi + BOHR_TOLERANCE {
            // smallest dilation that picks up the elements at distance r
            if !ok(r / delta - 1.0, count_within(dist, r) as f64) {
                return false;
            }
        } else if r >= lo - BOHR_TOLERANCE && r <= delta + BOHR_TOLERANCE {
            // contractions just below r drop every element at distance in [r, δ]
            let dropped = dist.iter().filter(|&&x| x >= r - BOHR_TOLERANCE && x <= delta + BOHR_TOLERANCE).count();
            if dropped as f64 > c * (1.0 - r / delta).max(0.0) * base + 1e-12 {
                return false;
            }
        }
    }
    true
}

/// Some `δ₁ ∈ [δ, 2δ]` with `Bohr(ρ, δ₁)` regular, for `δ ∈ (0, 1/2]`.
///
/// Sizes are constant between consecutive critical radii, so one interior
/// point per gap (plus the endpoints) covers every distinct Bohr set.
pub fn find_regular(rho: &Rep, delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta <= 0.5) {
        return Err(Error::DeltaOutOfRange { delta, range: "(0, 1/2]".into() });
    }
    let dist = distances(rho);
    let mut critical: Vec<f64> = dist.iter().copied().filter(|&r| r > delta && r < 2.0 * delta).collect();
    critical.push(delta);
    critical.push(2.0 * delta);
    critical.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    critical.dedup_by(|a, b| (*a - *b).abs() <= BOHR_TOLERANCE);
    let mut candidates = vec![delta];
    for w in critical.windows(2) {
        candidates.push((w[0] + w[1]) / 2.0);
    }
    candidates.push(2.0 * delta);
    candidates
        .into_iter()
        .find(|&r| is_regular_with(&dist, rho.dim(), r))
        .ok_or_else(|| Error::NoneFound(format!("no regular radius in [{delta}, {}]", 2.0 * delta)))
}

/// `Spec_ε(B) ⊆ Spec_{1−2κ/ε}(B′)` for a regular `B = Bohr(ρ, δ)` and
/// `B′ = Bohr(ρ, δ′)` with `δ′ ≤ κδ/(100d²)`.
pub fn spec_regular_check(
    rho: &Rep,
    delta: f64,
    delta_prime: f64,
    kappa: f64,
    eps: f64,
    catalog: &IrrepCatalog<f64>,
) -> Result<BoundReport> {
    if !is_regular(rho, delta) {
        return Err(Error::NotRegular);
    }
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(Error::RangeViolation(format!("κ = {kappa} outside (0, 1)")));
    }
    let cap = kappa * delta / (100.0 * (rho.dim() * rho.dim()) as f64);
    if !(delta_prime > 0.0 && delta_prime <= cap * (1.0 + 1e-12)) {
        return Err(Error::RangeViolation(format!("δ′ = {delta_prime} exceeds κδ/(100d²) = {cap}")));
    }
    let b = BohrSet::single(rho, delta)?.members;
    let b_prime = BohrSet::single(rho, delta_prime)?.members;
    let left = spec_eps(&b, eps, catalog)?.members;
    let norms = normalized_norms(&b_prime, catalog)?;
    let worst = left.iter().map(|&i| norms[i]).fold(1.0, f64::min);
    let target = 1.0 - 2.0 * kappa / eps;
    let g = rho.group();
    let p = Params { group: format!("{}:{}", g.label(), rho.label()), order: g.order(), set_size: b.len(), ..Default::default() };
    Ok(BoundReport::lower("spec_regular", p, target, worst))
}

/// Nonabelian basis bound `λ₁ ≥ g(|Γ| − 2|Ω|)/(8d²|B|^{2d})`, given
/// `(B∗B⁻¹)^{(d)} ≥ g` (or the reversed product) off `Ω`.
pub fn nonabelian_basis(b: &GroupSubset, d: usize, g: &Ratio, omega: &GroupSubset) -> Result<BoundReport> {
    check_difference_hypothesis(b, d, g, omega)?;
    let n = b.group().order() as f64;
    let gf = ratio_to_f64(g);
    let bound = gf * (n - 2.0 * omega.len() as f64) / (8.0 * (d * d) as f64 * (b.len() as f64).powi(2 * d as i32));
    let measured = laplace_spectrum_dense::<f64>(b)?.lambda1;
    let p = Params { g: Some(gf), omega: Some(omega.len()), ..params(b, d) };
    Ok(BoundReport::lower("nonabelian_basis", p, bound, measured))
}

/// `λ₁ ≥ ε^{log_{3/2} 3} g|Γ|/(16d²|B|^{2d})` with `ε = 1 − |Ω|/|Γ|`, given
/// no proper normal subgroup of index at most `2/ε`.
pub fn nonabelian_basis_large_omega(b: &GroupSubset, d: usize, g: &Ratio, omega: &GroupSubset) -> Result<BoundReport> {
    check_difference_hypothesis(b, d, g, omega)?;
    let n = b.group().order() as f64;
    let eps = 1.0 - omega.len() as f64 / n;
    if let Some(index) = normal_subgroup_min_index(b.group(), usize::MAX)? {
        if index as f64 <= 2.0 / eps {
            return Err(Error::HypothesisFail(format!("normal subgroup of index {index} ≤ 2/ε = {}", 2.0 / eps)));
        }
    }
    let gf = ratio_to_f64(g);
    let exponent = 3f64.ln() / 1.5f64.ln();
    let bound = eps.powf(exponent) * gf * n / (16.0 * (d * d) as f64 * (b.len() as f64).powi(2 * d as i32));
    let measured = laplace_spectrum_dense::<f64>(b)?.lambda1;
    let p = Params { g: Some(gf), omega: Some(omega.len()), ..params(b, d) };
    Ok(BoundReport::lower("nonabelian_basis_large_omega", p, bound, measured))
}

fn check_difference_hypothesis(b: &GroupSubset, d: usize, g: &Ratio, omega: &GroupSubset) -> Result<()> {
    if d < 2 || *g < ratio_int(1) {
        return Err(Error::HypothesisFail("need d ≥ 2 and g ≥ 1".into()));
    }
    if counts_at_least(&difference_count(b, d)?, g, omega) || counts_at_least(&reverse_difference_count(b, d)?, g, omega) {
        Ok(())
    } else {
        Err(Error::HypothesisFail(format!("(B·B⁻¹)^({d}) < g outside Ω")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Verdict;

    fn cyclic(n: usize) -> (Arc<FiniteGroup>, IrrepCatalog<f64>) {
        let g = FiniteGroup::cyclic(n).unwrap();
        let c = IrrepCatalog::for_group(&g).unwrap();
        (g, c)
    }

    fn set(g: &Arc<FiniteGroup>, xs: &[usize]) -> GroupSubset {
        GroupSubset::from_elements(g, xs).unwrap()
    }

    #[test]
    fn bohr_examples() {
        let (g, c) = cyclic(12);
        assert_eq!(BohrSet::single(&c.reps()[1], 1.0).unwrap().members.elements(), vec![0, 1, 2, 10, 11]);
        assert!(BohrSet::single(&c.reps()[1], 2.0).unwrap().members.is_full());
        assert!(BohrSet::new(&[], 1.0).is_err());
        let b = BohrSet::single(&c.reps()[5], 0.3).unwrap();
        assert!(b.members.contains(g.identity()) && b.structural_check());
        let d = FiniteGroup::dihedral(6).unwrap();
        let cd = IrrepCatalog::<f64>::for_group(&d).unwrap();
        for rho in cd.nontrivial() {
            assert!(BohrSet::single(rho, 0.9).unwrap().structural_check());
        }
    }

    #[test]
    fn sigma_examples() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let f: GroupFunction<f64> = set(&g, &[0, 1]).to_function();
        assert!((sigma_d(&set(&g, &[1]), &f, 2).unwrap() - 0.5).abs() < 1e-15);
        assert!((sigma_d(&GroupSubset::full(&g), &f, 3).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(sigma_d(&GroupSubset::empty(&g), &f, 2).unwrap(), 0.0);
        let neg = GroupFunction::new(&g, vec![-1.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(sigma_d(&g_full(&g), &neg, 1), Err(Error::NegativeValues));
        let zero = GroupFunction::<f64>::zero(&g);
        assert_eq!(sigma_d(&g_full(&g), &zero, 1), Err(Error::ZeroMass));
    }

    fn g_full(g: &Arc<FiniteGroup>) -> GroupSubset {
        GroupSubset::full(g)
    }

    #[test]
    fn interval_examples() {
        let (g, _) = cyclic(101);
        let mut xs: Vec<usize> = (0..10).collect();
        xs.push(50);
        let a = set(&g, &xs);
        let p = concentrated_interval(&a, 0.3, 0.3).unwrap();
        let covered = p.elements().iter().filter(|&&x| a.contains(x)).count();
        assert!(p.length <= 30 && ((a.len() - covered) as f64) < 0.3 * 11.0);
        let interval = set(&g, &(10..30).collect::<Vec<_>>());
        let q = concentrated_interval(&interval, 0.2, 0.3).unwrap();
        assert_eq!(q.length, 17);
        // a spread-out set violates the hypothesis
        let spread = set(&g, &[0, 25, 50, 75]);
        assert!(matches!(concentrated_interval(&spread, 0.1, 0.25), Err(Error::HypothesisFail(_))));
    }

    #[test]
    fn progression_scan_matches_brute_force() {
        let (g, _) = cyclic(31);
        let b = set(&g, &[0, 3, 4, 9, 17, 22]);
        let counts = rep_count(&b, 2).unwrap();
        let cap = 7;
        let (best, p) = max_sigma_progressions(counts.values(), 36, cap, ScanMode::Exhaustive);
        let mut brute: f64 = 0.0;
        for a in 0..31 {
            for q in 1..31 {
                let prog = Progression { modulus: 31, start: a, step: q, length: cap };
                let s: i128 = prog.elements().iter().map(|&x| counts.get(x)).sum();
                brute = brute.max(s as f64 / 36.0);
            }
        }
        assert!((best - brute).abs() < 1e-15);
        let s: i128 = p.elements().iter().map(|&x| counts.get(x)).sum();
        assert!((s as f64 / 36.0 - best).abs() < 1e-15);
    }

    #[test]
    fn progression_gap_examples() {
        let (g, _) = cyclic(61);
        let full = GroupSubset::full(&g);
        let r = progression_gap_forward(&full, 1, 0.2, None, ScanMode::Exhaustive).unwrap();
        assert!(r.holds);
        assert!(matches!(progression_gap_forward(&full, 1, 0.5, None, ScanMode::Exhaustive), Err(Error::HypothesisFail(_))));
        let (alpha, rev) = progression_gap_reverse(&set(&g, &[0]), 1, 0.1, ScanMode::Exhaustive).unwrap();
        assert!((alpha + PI * 0.1 / 2.0).abs() < 1e-12);
        assert_eq!(rev.verdict, Verdict::VacuousPass);
        let (alpha, rev) = progression_gap_reverse(&full, 2, 0.1, ScanMode::Exhaustive).unwrap();
        assert!((alpha - (1.0 - PI * 0.1) / 2.0).abs() < 1e-9);
        assert_eq!(rev.verdict, Verdict::Pass);
    }

    #[test]
    fn character_gap_matches_dense() {
        let (g, _) = cyclic(23);
        let b = set(&g, &[1, 2, 7, 15]);
        let dense = laplace_spectrum_dense::<f64>(&b).unwrap().lambda_mod;
        assert!((modulus_gap(&b).unwrap() - dense).abs() < 1e-12);
    }

    #[test]
    fn spec_examples() {
        let (g, c) = cyclic(10);
        let a = set(&g, &[0, 5]);
        assert_eq!(spec_eps(&a, 1.0, &c).unwrap().members, vec![0, 2, 4, 6, 8]);
        assert_eq!(spec_eps(&a, 0.0, &c).unwrap().members.len(), 10);
        assert_eq!(spec_eps(&GroupSubset::full(&g), 0.5, &c).unwrap().members, vec![0]);
        let r = spec_product_check(&a, 0.0, 0.0, &c).unwrap();
        assert!(r.holds);
        let v = spec_product_check(&a, 0.6, 0.5, &c).unwrap();
        assert_eq!(v.verdict, Verdict::VacuousPass);
    }

    #[test]
    fn thresholds() {
        let (_, c) = cyclic(7);
        let t = bohr_size_thresholds(&c.reps()[1]).unwrap();
        assert!((t.delta_half - 3f64.sqrt() / 2.0).abs() < 1e-15);
        assert!(BohrSet::single(&c.reps()[1], t.delta_half).unwrap().len() <= 3);
        assert_eq!(bohr_size_thresholds(&c.reps()[0]), Err(Error::TrivialRep));
        let d = FiniteGroup::dihedral(5).unwrap();
        let cd = IrrepCatalog::<f64>::for_group(&d).unwrap();
        let two_dim = cd.reps().iter().find(|r| r.dim() == 2).unwrap();
        assert!((bohr_size_thresholds(two_dim).unwrap().delta_half - 0.5).abs() < 1e-15);
    }

    #[test]
    fn normal_subgroup_indices() {
        assert_eq!(normal_subgroup_min_index(&FiniteGroup::cyclic(13).unwrap(), 100).unwrap(), Some(13));
        assert_eq!(normal_subgroup_min_index(&FiniteGroup::cyclic(12).unwrap(), 100).unwrap(), Some(2));
        assert_eq!(normal_subgroup_min_index(&FiniteGroup::dihedral(4).unwrap(), 100).unwrap(), Some(2));
        assert_eq!(normal_subgroup_min_index(&FiniteGroup::alternating5(), 100).unwrap(), Some(60));
        assert_eq!(normal_subgroup_min_index(&FiniteGroup::alternating5(), 10).unwrap(), None);
        assert_eq!(normal_subgroups(&FiniteGroup::dihedral(4).unwrap()).len(), 6);
        let big = FiniteGroup::dihedral(101).unwrap();
        assert!(matches!(normal_subgroup_min_index(&big, 10), Err(Error::GroupTooLarge { .. })));
    }

    #[test]
    fn regularity() {
        let (_, c) = cyclic(64);
        let rho = &c.reps()[1];
        let d1 = find_regular(rho, 0.2).unwrap();
        assert!((0.2..=0.4).contains(&d1));
        assert!(is_regular(rho, d1));
        // a radius equal to a distance sits on a jump
        let r = rho.distance_from_identity(3);
        assert!(!is_regular(rho, r));
        assert!(find_regular(rho, 0.6).is_err());
    }

    #[test]
    fn calculus() {
        let (_, c) = cyclic(101);
        let rho = &c.reps()[1];
        assert!(check_sum_rule(&[rho], 0.3, 0.5).unwrap().holds);
        assert_eq!(check_sum_rule(&[rho], 1.0, 1.0).unwrap().verdict, Verdict::VacuousPass);
        let dbl = check_doubling(rho, 0.3).unwrap();
        assert!(dbl.holds && dbl.measured <= 2f64.powf(10.5));
        assert!(check_doubling(rho, 0.5).is_err());
        let (x, cov) = ruzsa_covering(rho, 0.3).unwrap();
        assert!(cov.holds && !x.is_empty());
        let d = FiniteGroup::dihedral(8).unwrap();
        let cd = IrrepCatalog::<f64>::for_group(&d).unwrap();
        let nontrivial: Vec<&Rep> = cd.nontrivial().collect();
        assert!(check_multi_bohr(&[nontrivial[0], nontrivial[3]], &[0.8, 0.8]).unwrap().holds);
    }
}
