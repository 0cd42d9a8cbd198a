//! Spectral-gap lower bounds for Cayley graphs and regular graphs.
//!
//! Formula sides are exact rationals whenever their inputs are integers;
//! measured sides come from the dense eigensolver.

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::repr::IrrepCatalog;
use crate::report::{BoundReport, Params};
use crate::scalar::{ratio, ratio_int, ratio_pow, ratio_to_f64, Ratio};
use crate::spectra::{laplace_spectrum_dense, weighted_spectrum_dense};
use crate::subset::{GroupFunction, GroupSubset};

/// `B^{(d)}(x)`: number of ways to write `x` as a product of `d` elements of `B`.
pub fn rep_count(b: &GroupSubset, d: usize) -> Result<GroupFunction<i128>> {
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    b.to_function::<i128>().iterated_convolution(d)
}

/// `(B ∗ B⁻¹)^{(d)}`.
pub fn difference_count(b: &GroupSubset, d: usize) -> Result<GroupFunction<i128>> {
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    let f = b.to_function::<i128>();
    f.convolve(&b.inverse().to_function())?.iterated_convolution(d)
}

/// `(B⁻¹ ∗ B)^{(d)}`.
pub fn reverse_difference_count(b: &GroupSubset, d: usize) -> Result<GroupFunction<i128>> {
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    b.inverse().to_function::<i128>().convolve(&b.to_function())?.iterated_convolution(d)
}

/// `Ω = {x : count(x) < g}`.
pub fn below_threshold(count: &GroupFunction<i128>, g: &Ratio) -> GroupSubset {
    GroupSubset::from_predicate(count.group(), |x| ratio_int(*count.get(x)) < *g)
}

/// Minimal exceptional set `{x : B^{(d)}(x) < g}`.
pub fn exceptional_set(b: &GroupSubset, d: usize, g: &Ratio) -> Result<GroupSubset> {
    Ok(below_threshold(&rep_count(b, d)?, g))
}

/// `1/(2d²|S|)`.
pub fn bound_diameter(set_size: usize, d: usize) -> Ratio {
    ratio(1, 2 * (d * d * set_size) as i128)
}

/// `|Γ|/(d|S|^d)`.
pub fn bound_basis(order: usize, set_size: usize, d: usize) -> Ratio {
    ratio_int(order as i64) / (ratio_int(d as i64) * ratio_pow(&ratio_int(set_size as i64), d as u32))
}

/// `g|Γ|/(d(m + g|Ω|)^d) − g|Ω|/m` with `m` the mass of the generating weight.
pub fn bound_basis_g_mass(order: usize, mass: &Ratio, d: usize, g: &Ratio, omega: usize) -> Ratio {
    let om = ratio_int(omega as i64);
    let first = g * ratio_int(order as i64) / (ratio_int(d as i64) * ratio_pow(&(mass + g * &om), d as u32));
    first - g * om / mass
}

/// `g|Γ|/(d(|B| + g|Ω|)^d) − g|Ω|/|B|`.
pub fn bound_basis_g(order: usize, set_size: usize, d: usize, g: &Ratio, omega: usize) -> Ratio {
    bound_basis_g_mass(order, &ratio_int(set_size as i64), d, g, omega)
}

/// The same bound for the weight `B₁ ∗ B₂` of mass `|B₁||B₂|`.
pub fn bound_basis_g_pair(order: usize, size1: usize, size2: usize, d: usize, g: &Ratio, omega: usize) -> Ratio {
    bound_basis_g_mass(order, &ratio_int((size1 * size2) as i64), d, g, omega)
}

/// The singular-gap form: mass `|B|²`.
pub fn bound_basis_g_star(order: usize, set_size: usize, d: usize, g: &Ratio, omega: usize) -> Ratio {
    bound_basis_g_pair(order, set_size, set_size, d, g, omega)
}

/// `|B|(1 − g|Γ|/(d|B|^{2d}))^{1/2}`.
pub fn bound_coefficient_decay(order: usize, set_size: usize, d: usize, g: &Ratio) -> f64 {
    let b = ratio_int(set_size as i64);
    let inner = Ratio::one() - g * ratio_int(order as i64) / (ratio_int(d as i64) * ratio_pow(&b, 2 * d as u32));
    set_size as f64 * ratio_to_f64(&inner).max(0.0).sqrt()
}

/// `(1 − |Γ|/(d|B|^{2d}))^{k/2} |B|^{k+1}`.
pub fn uniformity_bound(order: usize, set_size: usize, d: usize, k: usize) -> f64 {
    let b = ratio_int(set_size as i64);
    let inner = Ratio::one() - ratio_int(order as i64) / (ratio_int(d as i64) * ratio_pow(&b, 2 * d as u32));
    ratio_to_f64(&inner).max(0.0).powf(k as f64 / 2.0) * (set_size as f64).powi(k as i32 + 1)
}

/// `|S|^{d−1} < 2d|Γ|`: the regime where the basis bound beats the diameter bound.
pub fn basis_beats_diameter_regime(order: usize, set_size: usize, d: usize) -> bool {
    ratio_pow(&ratio_int(set_size as i64), d as u32 - 1) < ratio_int((2 * d * order) as i64)
}

fn params(b: &GroupSubset) -> Params {
    Params { group: b.group().label().to_string(), order: b.group().order(), set_size: b.len(), ..Default::default() }
}

fn lambda1(b: &GroupSubset) -> Result<f64> {
    Ok(laplace_spectrum_dense::<f64>(b)?.lambda1)
}

/// Diameter bound `λ₁ ≥ 1/(2d²|S|)` with `d` the diameter of `Cay(S)`.
pub fn check_diameter(s: &GroupSubset) -> Result<BoundReport> {
    let d = s.diameter()?;
    let bound = ratio_to_f64(&bound_diameter(s.len(), d));
    Ok(BoundReport::lower("diameter", Params { d: Some(d), ..params(s) }, bound, lambda1(s)?))
}

/// Basis bound `λ₁ ≥ |Γ|/(d|S|^d)` with `d` the diameter of `Cay(S)`.
pub fn check_basis(s: &GroupSubset) -> Result<BoundReport> {
    let d = s.diameter()?;
    let bound = ratio_to_f64(&bound_basis(s.group().order(), s.len(), d));
    Ok(BoundReport::lower("basis", Params { d: Some(d), ..params(s) }, bound, lambda1(s)?))
}

/// With `Ω` empty the argument works for every `d ≥ 1`; shifting `Ω` into the
/// weight needs `d ≥ 2` (at `d = 1` the bound fails, e.g. Z/12, B = {0,2,3,7}).
fn check_hypothesis(count: &GroupFunction<i128>, d: usize, g: &Ratio, omega: &GroupSubset, what: &str) -> Result<()> {
    if !omega.is_empty() && d < 2 {
        return Err(Error::HypothesisFail(format!("a nonempty exceptional set needs d >= 2, got d = {d}")));
    }
    let bad = count.group().elements().find(|&x| !omega.contains(x) && ratio_int(*count.get(x)) < *g);
    match bad {
        Some(x) => Err(Error::HypothesisFail(format!("{what}({x}) = {} is below g = {g}", count.get(x)))),
        None => Ok(()),
    }
}

fn g_f64(g: &Ratio) -> Option<f64> {
    Some(ratio_to_f64(g))
}

/// Exceptional-set bound for `λ₁(Cay(B))`, given `B^{(d)} >= g` off `Ω`.
pub fn check_basis_g(b: &GroupSubset, d: usize, g: &Ratio, omega: &GroupSubset) -> Result<BoundReport> {
    check_hypothesis(&rep_count(b, d)?, d, g, omega, "B^(d)")?;
    let bound = ratio_to_f64(&bound_basis_g(b.group().order(), b.len(), d, g, omega.len()));
    let p = Params { d: Some(d), g: g_f64(g), omega: Some(omega.len()), ..params(b) };
    Ok(BoundReport::lower("basis_g", p, bound, lambda1(b)?))
}

/// [`check_basis_g`] with the minimal exceptional set for `g`.
pub fn check_basis_g_auto(b: &GroupSubset, d: usize, g: &Ratio) -> Result<BoundReport> {
    let omega = exceptional_set(b, d, g)?;
    check_basis_g(b, d, g, &omega)
}

/// Bound for the weighted graph `Cay(B₁ ∗ B₂)`, given `(B₁ ∗ B₂)^{(d)} >= g` off `Ω`.
pub fn check_basis_g_pair(b1: &GroupSubset, b2: &GroupSubset, d: usize, g: &Ratio, omega: &GroupSubset) -> Result<BoundReport> {
    if b1.is_empty() || b2.is_empty() {
        return Err(Error::EmptySet);
    }
    let w = b1.to_function::<i128>().convolve(&b2.to_function())?;
    check_hypothesis(&w.iterated_convolution(d)?, d, g, omega, "(B1*B2)^(d)")?;
    let bound = ratio_to_f64(&bound_basis_g_pair(b1.group().order(), b1.len(), b2.len(), d, g, omega.len()));
    let measured = weighted_spectrum_dense(&w.map(|&v| v as f64))?.lambda1;
    let p = Params { d: Some(d), g: g_f64(g), omega: Some(omega.len()), set_size: b1.len() * b2.len(), ..params(b1) };
    Ok(BoundReport::lower("basis_g_pair", p, bound, measured))
}

/// Singular-gap bound `λ₁*(Cay(B))`, given `(B ∗ B⁻¹)^{(d)} >= g` off `Ω`.
pub fn check_basis_g_star(b: &GroupSubset, d: usize, g: &Ratio, omega: &GroupSubset) -> Result<BoundReport> {
    check_hypothesis(&difference_count(b, d)?, d, g, omega, "(B*B^-1)^(d)")?;
    let bound = ratio_to_f64(&bound_basis_g_star(b.group().order(), b.len(), d, g, omega.len()));
    let measured = laplace_spectrum_dense::<f64>(b)?.lambda1_star;
    let p = Params { d: Some(d), g: g_f64(g), omega: Some(omega.len()), ..params(b) };
    Ok(BoundReport::lower("basis_g_star", p, bound, measured))
}

/// Upper bound on `max_{ρ≠1} ‖B̂(ρ)‖` from `(B ∗ B⁻¹)^{(d)} >= g` (or the
/// reversed product) everywhere.
pub fn check_coefficient_decay(b: &GroupSubset, d: usize, g: &Ratio, catalog: &IrrepCatalog<f64>) -> Result<BoundReport> {
    let everywhere = GroupSubset::empty(b.group());
    if check_hypothesis(&difference_count(b, d)?, d, g, &everywhere, "").is_err() {
        check_hypothesis(&reverse_difference_count(b, d)?, d, g, &everywhere, "(B^-1*B)^(d)")?;
    }
    let bound = bound_coefficient_decay(b.group().order(), b.len(), d, g);
    let measured = catalog.set_norm(b)?;
    let vacuous = bound >= b.len() as f64;
    let p = Params { d: Some(d), g: g_f64(g), ..params(b) };
    Ok(BoundReport::upper("norm_from_basis", p, bound, measured, vacuous))
}

/// Deviation of `B^{(k+2)}` from `|B|^{k+2}/|Γ|` against its explicit bound.
pub fn uniformity_check(b: &GroupSubset, d: usize, k: usize) -> Result<BoundReport> {
    let one = Ratio::one();
    let everywhere = GroupSubset::empty(b.group());
    if check_hypothesis(&difference_count(b, d)?, d, &one, &everywhere, "").is_err() {
        check_hypothesis(&reverse_difference_count(b, d)?, d, &one, &everywhere, "(B^-1*B)^(d)")?;
    }
    let counts = rep_count(b, k + 2)?;
    let n = b.group().order();
    let mean = ratio_pow(&ratio_int(b.len() as i64), k as u32 + 2) / ratio_int(n as i64);
    let deviation = counts
        .values()
        .iter()
        .map(|&c| {
            let diff = ratio_int(c) - &mean;
            if diff < Ratio::zero() { -diff } else { diff }
        })
        .max()
        .unwrap_or_else(Ratio::zero);
    let bound = uniformity_bound(n, b.len(), d, k);
    let p = Params { d: Some(d), g: Some(1.0), ..params(b) };
    Ok(BoundReport::upper(&format!("uniformity_k{k}"), p, bound, ratio_to_f64(&deviation), false))
}

/// An undirected or directed graph with constant in- and out-degree.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularGraph {
    adjacency: Vec<Vec<bool>>,
    valency: usize,
}

impl RegularGraph {
    pub fn new(adjacency: Vec<Vec<bool>>) -> Result<Self> {
        let n = adjacency.len();
        if n == 0 || adjacency.iter().any(|r| r.len() != n) {
            return Err(Error::NotRegularGraph("adjacency must be a nonempty square matrix".into()));
        }
        let valency = adjacency[0].iter().filter(|&&b| b).count();
        for (i, r) in adjacency.iter().enumerate() {
            let row = r.iter().filter(|&&b| b).count();
            let col = (0..n).filter(|&j| adjacency[j][i]).count();
            if row != valency || col != valency {
                return Err(Error::NotRegularGraph(format!("vertex {i} has degrees ({row}, {col}), expected {valency}")));
            }
        }
        if valency == 0 {
            return Err(Error::NotRegularGraph("valency must be positive".into()));
        }
        Ok(RegularGraph { adjacency, valency })
    }

    /// Vertices `Z/n`, edges `x → x + c` for `c` in `connections`.
    pub fn circulant(n: usize, connections: &[usize]) -> Result<Self> {
        let mut adj = vec![vec![false; n]; n];
        for (x, row) in adj.iter_mut().enumerate() {
            for &c in connections {
                row[(x + c) % n] = true;
            }
        }
        Self::new(adj)
    }

    /// The Cayley graph `x → xs`.
    pub fn from_cayley(s: &GroupSubset) -> Result<Self> {
        let g = s.group();
        let elems = s.elements();
        let mut adj = vec![vec![false; g.order()]; g.order()];
        for (x, row) in adj.iter_mut().enumerate() {
            for &e in &elems {
                row[g.op(x, e)] = true;
            }
        }
        Self::new(adj)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Self::circulant(n, &[1, n - 1])
    }

    /// All-ones adjacency (complete graph with a loop at every vertex).
    pub fn complete_with_loops(n: usize) -> Result<Self> {
        Self::new(vec![vec![true; n]; n])
    }

    pub fn vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn valency(&self) -> usize {
        self.valency
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.vertices();
        (0..n).all(|i| (0..i).all(|j| self.adjacency[i][j] == self.adjacency[j][i]))
    }
}

/// `M^d`: number of walks of length `d` between each pair of vertices.
pub fn graph_paths(graph: &RegularGraph, d: usize) -> Result<Vec<Vec<i128>>> {
    if d == 0 {
        return Err(Error::KZero);
    }
    let n = graph.vertices();
    let m: Vec<Vec<i128>> = graph.adjacency.iter().map(|r| r.iter().map(|&b| b as i128).collect()).collect();
    let mut acc = m.clone();
    for _ in 1..d {
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = acc[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    if m[k][j] != 0 {
                        next[i][j] = next[i][j].checked_add(a).ok_or_else(|| Error::Numerical("walk count overflow".into()))?;
                    }
                }
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// `g|V|/(d𝒱^d)`.
pub fn bound_graph(vertices: usize, valency: usize, d: usize, g: &Ratio) -> Ratio {
    g * ratio_int(vertices as i64) / (ratio_int(d as i64) * ratio_pow(&ratio_int(valency as i64), d as u32))
}

/// Variational gap of `I − M/𝒱` on mean-zero functions.
pub fn graph_lambda1(graph: &RegularGraph) -> f64 {
    let n = graph.vertices();
    let v = graph.valency as f64;
    let m = DMatrix::<f64>::from_fn(n, n, |i, j| graph.adjacency[i][j] as u8 as f64 / v);
    let h = DMatrix::<f64>::identity(n, n) - (&m + m.transpose()) * 0.5;
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    ev.get(1).copied().unwrap_or(1.0)
}

/// `λ₁(G) >= g|V|/(d𝒱^d)` given at least `g` walks of length `d` between all pairs.
pub fn check_graph(graph: &RegularGraph, d: usize, g: &Ratio, label: &str) -> Result<BoundReport> {
    let paths = graph_paths(graph, d)?;
    let min = paths.iter().flatten().copied().min().unwrap_or(0);
    if ratio_int(min) < *g {
        return Err(Error::HypothesisFail(format!("only {min} walks of length {d} between some pair, need {g}")));
    }
    let bound = ratio_to_f64(&bound_graph(graph.vertices(), graph.valency, d, g));
    let p = Params {
        group: label.to_string(),
        order: graph.vertices(),
        set_size: graph.valency,
        d: Some(d),
        g: g_f64(g),
        omega: None,
    };
    Ok(BoundReport::lower("graph_paths", p, bound, graph_lambda1(graph)))
}

/// Smallest `d` with every entry of `M^d` positive, searched up to `|V|²`.
pub fn covering_depth(graph: &RegularGraph) -> Option<usize> {
    let n = graph.vertices();
    let mut reach = graph.adjacency.clone();
    for d in 1..=n * n {
        if reach.iter().flatten().all(|&b| b) {
            return Some(d);
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in (0..n).filter(|&k| reach[i][k]) {
                for (cell, &edge) in next[i].iter_mut().zip(&graph.adjacency[k]) {
                    *cell |= edge;
                }
            }
        }
        reach = next;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::report::Verdict;
    use std::sync::Arc;

    fn set(g: &Arc<FiniteGroup>, xs: &[usize]) -> GroupSubset {
        GroupSubset::from_elements(g, xs).unwrap()
    }

    #[test]
    fn exceptional_set_needs_two_steps() {
        let g = FiniteGroup::cyclic(12).unwrap();
        let b = set(&g, &[0, 2, 3, 7]);
        let one = Ratio::one();
        let omega = below_threshold(&difference_count(&b, 1).unwrap(), &one);
        assert_eq!(omega.elements(), vec![6]);
        // the formula would claim 12/17 − 1/16 ≈ 0.6434 against λ₁* ≈ 0.6417
        assert!(matches!(check_basis_g_star(&b, 1, &one, &omega), Err(Error::HypothesisFail(_))));
        let none = GroupSubset::empty(&g);
        let full = below_threshold(&difference_count(&b, 2).unwrap(), &one);
        assert!(full.is_empty());
        assert!(check_basis_g_star(&b, 2, &one, &none).unwrap().verdict != Verdict::Fail);
    }

    #[test]
    fn rep_count_examples() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let b = set(&g, &[0, 1]);
        assert_eq!(rep_count(&b, 2).unwrap().values(), &[1, 2, 1, 0]);
        assert_eq!(rep_count(&b, 1).unwrap().values(), &[1, 1, 0, 0]);
        assert_eq!(rep_count(&b, 5).unwrap().total(), 32);
        assert_eq!(exceptional_set(&b, 2, &Ratio::one()).unwrap().elements(), vec![3]);
        assert!(exceptional_set(&b, 2, &ratio_int(5)).unwrap().is_full());
    }

    #[test]
    fn formula_examples() {
        assert_eq!(bound_basis(7, 4, 2), ratio(7, 32));
        assert_eq!(bound_diameter(4, 2), ratio(1, 32));
        assert_eq!(bound_basis_g(4, 2, 2, &Ratio::one(), 1), ratio(-5, 18));
        // perfect equidistribution: g = |B|^d/|Γ|
        assert_eq!(bound_basis_g(4, 4, 2, &ratio(16, 4), 0), ratio(1, 2));
        assert_eq!(bound_basis_g(7, 4, 2, &Ratio::one(), 0), bound_basis(7, 4, 2));
    }

    #[test]
    fn z7_basis_checks() {
        let g = FiniteGroup::cyclic(7).unwrap();
        let s = set(&g, &[0, 1, 2, 4]);
        let r = check_basis(&s).unwrap();
        assert_eq!(r.d, Some(2));
        assert!(r.holds);
        assert!((r.bound - 0.21875).abs() < 1e-15);
        assert!(check_diameter(&s).unwrap().holds);
        let full = check_basis(&GroupSubset::full(&g)).unwrap();
        assert!((full.bound - 1.0).abs() < 1e-15 && full.slack.abs() < 1e-9);
    }

    #[test]
    fn hypothesis_failures() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let b = set(&g, &[0, 1]);
        let empty = GroupSubset::empty(&g);
        assert!(matches!(check_basis_g(&b, 2, &Ratio::one(), &empty), Err(Error::HypothesisFail(_))));
        let omega = set(&g, &[3]);
        let r = check_basis_g(&b, 2, &Ratio::one(), &omega).unwrap();
        assert_eq!(r.verdict, crate::report::Verdict::VacuousPass);
    }

    #[test]
    fn coefficient_decay_examples() {
        let g = FiniteGroup::cyclic(7).unwrap();
        let cat = IrrepCatalog::for_group(&g).unwrap();
        let full = GroupSubset::full(&g);
        let r = check_coefficient_decay(&full, 1, &ratio_int(7), &cat).unwrap();
        assert!(r.bound.abs() < 1e-12 && r.measured.abs() < 1e-9 && r.holds);
        let r = check_coefficient_decay(&full, 1, &Ratio::one(), &cat).unwrap();
        assert!((r.bound - 7.0 * (6.0f64 / 7.0).sqrt()).abs() < 1e-12);
        let b = set(&g, &[0, 1, 3, 5]);
        assert!(check_coefficient_decay(&b, 2, &Ratio::one(), &cat).unwrap().holds);
        assert!(matches!(check_coefficient_decay(&set(&g, &[0]), 2, &Ratio::one(), &cat), Err(Error::HypothesisFail(_))));
    }

    #[test]
    fn uniformity_examples() {
        let g = FiniteGroup::cyclic(11).unwrap();
        let full = GroupSubset::full(&g);
        assert_eq!(uniformity_check(&full, 1, 3).unwrap().measured, 0.0);
        let b = set(&g, &[0, 1, 3, 7]);
        for k in [0, 2, 4] {
            assert!(uniformity_check(&b, 2, k).unwrap().holds);
        }
    }

    #[test]
    fn graphs() {
        let k = RegularGraph::complete_with_loops(6).unwrap();
        let r = check_graph(&k, 1, &Ratio::one(), "K6").unwrap();
        assert!((r.bound - 1.0).abs() < 1e-15 && (r.measured - 1.0).abs() < 1e-12);
        let c5 = RegularGraph::cycle(5).unwrap();
        assert!(matches!(check_graph(&c5, 2, &Ratio::one(), "C5"), Err(Error::HypothesisFail(_))));
        assert_eq!(covering_depth(&c5), Some(4));
        assert!(RegularGraph::new(vec![vec![true, true], vec![false, true]]).is_err());
        // odd steps only: bipartite, never covered
        assert_eq!(covering_depth(&RegularGraph::circulant(8, &[1, 7]).unwrap()), None);
        let circ = RegularGraph::circulant(32, &[1, 31, 2, 30]).unwrap();
        let d = covering_depth(&circ).unwrap();
        let min = graph_paths(&circ, d).unwrap().iter().flatten().copied().min().unwrap();
        assert!(check_graph(&circ, d, &ratio_int(min), "circ32").unwrap().holds);
    }
}
