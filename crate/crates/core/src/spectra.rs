//! Laplace spectra of Cayley graphs, computed densely and block-wise.
//!
//! For a nonnegative weight `w` on the group the Markov operator is
//! `M(x, y) = w(x⁻¹y)`, the Laplace operator is `Δ = I − M/‖w‖₁` and the
//! singular operator is `I − MMᵀ/‖w‖₁²`. A set `S` is the weight `1_S`.
//!
//! `λ₁` is always the variational quantity `min ⟨Δf, f⟩` over unit mean-zero
//! `f`, i.e. the bottom of the Hermitian part of `Δ` off the constants.

use nalgebra::{ComplexField, DMatrix, Schur, SymmetricEigen};
use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::repr::{CMatrix, IrrepCatalog};
use crate::scalar::{modulus, real, to_f64, FromFraction, Ratio, Real};
use crate::subset::{GroupFunction, GroupSubset};

/// Which computation produced a spectrum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpectrumPath {
    Dense,
    Blocks,
}

/// Laplace and singular spectra of one Cayley graph.
#[derive(Clone, Debug)]
pub struct SpectrumReport<T: Real> {
    pub path: SpectrumPath,
    /// Eigenvalues of `Δ`: `λ₀` first, then `λ₁` (smallest real part), then by modulus.
    pub eigenvalues: Vec<Complex<T>>,
    /// Eigenvalues of `I − MMᵀ/‖w‖₁²`, ascending.
    pub star_eigenvalues: Vec<T>,
    /// Variational spectral gap.
    pub lambda1: T,
    /// First nontrivial singular gap.
    pub lambda1_star: T,
    /// `1 − max_{j≥1} |1 − λ_j|`; equals `λ₁` whenever `M` is normal with real spectrum.
    pub lambda_mod: T,
}

impl<T: Real> SpectrumReport<T> {
    fn assemble(path: SpectrumPath, mut eigenvalues: Vec<Complex<T>>, mut star: Vec<T>, lambda1: T) -> Self {
        order_eigenvalues(&mut eigenvalues);
        star.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        let lambda1_star = star.get(1).copied().unwrap_or_else(T::one);
        let one = Complex::new(T::one(), T::zero());
        let radius = eigenvalues.iter().skip(1).map(|&l| modulus(one - l)).fold(T::zero(), |a, b| a.max(b));
        let lambda_mod = if eigenvalues.len() > 1 { T::one() - radius } else { T::one() };
        SpectrumReport { path, eigenvalues, star_eigenvalues: star, lambda1, lambda1_star, lambda_mod }
    }

    /// Nontrivial eigenvalues `λ₁, …` (drops `λ₀`).
    pub fn nontrivial(&self) -> &[Complex<T>] {
        &self.eigenvalues[1.min(self.eigenvalues.len())..]
    }

    /// Real parts, ascending.
    pub fn sorted_real(&self) -> Vec<T> {
        let mut v: Vec<T> = self.eigenvalues.iter().map(|z| z.re).collect();
        v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        v
    }
}

/// `λ₀` (nearest zero) first, then the smallest real part, then by modulus and argument.
fn order_eigenvalues<T: Real>(ev: &mut [Complex<T>]) {
    if ev.is_empty() {
        return;
    }
    let zero_idx = (0..ev.len())
        .min_by(|&a, &b| modulus(ev[a]).partial_cmp(&modulus(ev[b])).expect("finite"))
        .expect("nonempty");
    ev.swap(0, zero_idx);
    if ev.len() < 2 {
        return;
    }
    let rest = &mut ev[1..];
    let first = (0..rest.len())
        .min_by(|&a, &b| rest[a].re.partial_cmp(&rest[b].re).expect("finite"))
        .expect("nonempty");
    rest.swap(0, first);
    rest[1..].sort_by(|a, b| {
        let key = |z: &Complex<T>| (to_f64(modulus(*z)), to_f64(z.im.atan2(z.re)));
        key(a).partial_cmp(&key(b)).expect("finite")
    });
}

fn weights_of<T: Real>(s: &GroupSubset) -> Result<GroupFunction<T>> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    let values = s.indicator().iter().map(|&b| if b { T::one() } else { T::zero() }).collect();
    GroupFunction::new(s.group(), values)
}

fn mass<T: Real>(w: &GroupFunction<T>) -> Result<T> {
    if w.values().iter().any(|&v| v < T::zero()) {
        return Err(Error::NegativeValues);
    }
    let m = w.values().iter().fold(T::zero(), |a, &b| a + b);
    if m <= T::zero() {
        return Err(Error::ZeroMass);
    }
    Ok(m)
}

/// `M(x, y) = S(x⁻¹y)`; rows sum to `|S|`.
pub fn markov_matrix<T: Real>(s: &GroupSubset) -> Result<DMatrix<T>> {
    Ok(weighted_markov_matrix(&weights_of::<T>(s)?))
}

/// `M(x, y) = w(x⁻¹y)`.
pub fn weighted_markov_matrix<T: Real>(w: &GroupFunction<T>) -> DMatrix<T> {
    let g = w.group();
    let n = g.order();
    let mut m = DMatrix::<T>::zeros(n, n);
    for x in 0..n {
        let xi = g.inv(x);
        for y in 0..n {
            m[(x, y)] = *w.get(g.op(xi, y));
        }
    }
    m
}

fn symmetric_eigenvalues<T: Real>(m: DMatrix<T>) -> Vec<T> {
    SymmetricEigen::new(m).eigenvalues.iter().copied().collect()
}

/// Dense spectrum of `Cay(S)`.
pub fn laplace_spectrum_dense<T: Real>(s: &GroupSubset) -> Result<SpectrumReport<T>> {
    weighted_spectrum_dense(&weights_of::<T>(s)?)
}

/// Dense spectrum of the weighted Cayley graph of `w`.
pub fn weighted_spectrum_dense<T: Real>(w: &GroupFunction<T>) -> Result<SpectrumReport<T>> {
    let total = mass(w)?;
    let n = w.group().order();
    let m = weighted_markov_matrix(w) / total;
    let eye = DMatrix::<T>::identity(n, n);
    let symmetric = (0..n).all(|i| (0..i).all(|j| m[(i, j)] == m[(j, i)]));
    let eigenvalues: Vec<Complex<T>> = if symmetric {
        symmetric_eigenvalues(&eye - &m).into_iter().map(|l| Complex::new(l, T::zero())).collect()
    } else {
        let one = Complex::new(T::one(), T::zero());
        general_eigenvalues(&m)?.into_iter().map(|mu| one - mu).collect()
    };
    let half: T = real(0.5);
    let hermitian = &eye - (&m + m.transpose()) * half;
    let mut herm = symmetric_eigenvalues(hermitian);
    herm.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let lambda1 = herm.get(1).copied().unwrap_or_else(T::one);
    let star = symmetric_eigenvalues(&eye - &m * m.transpose());
    Ok(SpectrumReport::assemble(SpectrumPath::Dense, eigenvalues, star, lambda1))
}

/// Block spectrum of `Cay(S)` from the Fourier coefficients `Ŝ(ρ)`.
pub fn laplace_spectrum_blocks<T: Real>(s: &GroupSubset, catalog: &IrrepCatalog<T>) -> Result<SpectrumReport<T>> {
    weighted_spectrum_blocks(&weights_of::<T>(s)?, catalog)
}

/// Block spectrum of the weighted Cayley graph of `w`.
pub fn weighted_spectrum_blocks<T: Real>(w: &GroupFunction<T>, catalog: &IrrepCatalog<T>) -> Result<SpectrumReport<T>> {
    if **w.group() != **catalog.group() {
        return Err(Error::GroupMismatch);
    }
    let total = mass(w)?;
    let f = w.map(|&v| Complex::new(v / total, T::zero()));
    struct Block<T: Real> {
        dim: usize,
        trivial: bool,
        eig: Vec<Complex<T>>,
        star: Vec<T>,
        herm_min: T,
    }
    let blocks: Vec<Block<T>> = catalog
        .reps()
        .par_iter()
        .map(|r| {
            let a = r.fourier(&f)?;
            let d = r.dim();
            let eye = CMatrix::<T>::identity(d, d);
            let one = Complex::new(T::one(), T::zero());
            let eig = complex_eigenvalues(&a)?.into_iter().map(|mu| one - mu).collect();
            let star = hermitian_eigenvalues(&eye - &a * a.adjoint());
            let half = Complex::new(real::<T>(0.5), T::zero());
            let herm = hermitian_eigenvalues(&eye - (&a + a.adjoint()) * half);
            let herm_min = herm.iter().copied().fold(herm[0], |x, y| x.min(y));
            Ok(Block { dim: d, trivial: r.is_trivial(), eig, star, herm_min })
        })
        .collect::<Result<_>>()?;
    let mut eigenvalues = Vec::new();
    let mut star = Vec::new();
    let mut lambda1: Option<T> = None;
    for b in &blocks {
        for _ in 0..b.dim {
            eigenvalues.extend_from_slice(&b.eig);
            star.extend_from_slice(&b.star);
        }
        if !b.trivial {
            lambda1 = Some(lambda1.map_or(b.herm_min, |l| l.min(b.herm_min)));
        }
    }
    Ok(SpectrumReport::assemble(SpectrumPath::Blocks, eigenvalues, star, lambda1.unwrap_or_else(T::one)))
}

/// Eigenvalues of a small complex matrix.
pub fn complex_eigenvalues<T: Real>(a: &CMatrix<T>) -> Result<Vec<Complex<T>>> {
    match a.nrows() {
        1 => Ok(vec![a[(0, 0)]]),
        2 => {
            let two = Complex::new(real::<T>(2.0), T::zero());
            let half_tr = (a[(0, 0)] + a[(1, 1)]) / two;
            let det = a[(0, 0)] * a[(1, 1)] - a[(0, 1)] * a[(1, 0)];
            let disc = ComplexField::sqrt(half_tr * half_tr - det);
            Ok(vec![half_tr + disc, half_tr - disc])
        }
        n => {
            let eye = CMatrix::<T>::identity(n, n);
            for shift in SCHUR_SHIFTS {
                let c = Complex::new(real::<T>(shift), T::zero());
                let shifted = a + &eye * c;
                if let Some(schur) = Schur::try_new(shifted, T::default_epsilon(), SCHUR_SWEEPS * n) {
                    return Ok(schur.eigenvalues().map(|v| v.iter().map(|&z| z - c).collect()).unwrap_or_default());
                }
            }
            Err(Error::Numerical("complex Schur decomposition did not converge".into()))
        }
    }
}

/// Diagonal shifts tried in turn. QR sweeps can stall on matrices whose
/// eigenvalues share one modulus (permutation matrices); a shift breaks the tie.
const SCHUR_SHIFTS: [f64; 4] = [0.0, 0.37, -0.61, 1.3];
const SCHUR_SWEEPS: usize = 100;

/// Eigenvalues of a general real square matrix.
pub fn general_eigenvalues<T: Real>(m: &DMatrix<T>) -> Result<Vec<Complex<T>>> {
    let n = m.nrows();
    let eye = DMatrix::<T>::identity(n, n);
    for shift in SCHUR_SHIFTS {
        let c = real::<T>(shift);
        if let Some(schur) = Schur::try_new(m + &eye * c, T::default_epsilon(), SCHUR_SWEEPS * n.max(1)) {
            let (_, t) = schur.unpack();
            return Ok(quasi_triangular_eigenvalues(&t).into_iter().map(|z| z - Complex::new(c, T::zero())).collect());
        }
    }
    Err(Error::Numerical("real Schur decomposition did not converge".into()))
}

/// Eigenvalues of a real Schur factor: 1×1 blocks and 2×2 rotation blocks on the diagonal.
/// A nearly repeated real pair can leave a discriminant of either sign within rounding, so
/// its sign picks a real or conjugate pair rather than feeding a negative number to `sqrt`.
fn quasi_triangular_eigenvalues<T: Real>(t: &DMatrix<T>) -> Vec<Complex<T>> {
    let n = t.nrows();
    let mut out = Vec::with_capacity(n);
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)] != T::zero() {
            let half_tr = (t[(i, i)] + t[(i + 1, i + 1)]) * real::<T>(0.5);
            let det = t[(i, i)] * t[(i + 1, i + 1)] - t[(i, i + 1)] * t[(i + 1, i)];
            let disc = half_tr * half_tr - det;
            if disc >= T::zero() {
                let r = disc.sqrt();
                out.push(Complex::new(half_tr + r, T::zero()));
                out.push(Complex::new(half_tr - r, T::zero()));
            } else {
                let r = (-disc).sqrt();
                out.push(Complex::new(half_tr, r));
                out.push(Complex::new(half_tr, -r));
            }
            i += 2;
        } else {
            out.push(Complex::new(t[(i, i)], T::zero()));
            i += 1;
        }
    }
    out
}

fn hermitian_eigenvalues<T: Real>(h: CMatrix<T>) -> Vec<T> {
    if h.nrows() == 1 {
        return vec![h[(0, 0)].re];
    }
    SymmetricEigen::new(h).eigenvalues.iter().copied().collect()
}

/// First nontrivial eigenvalue of `I − MMᵀ/|S|²`.
pub fn lambda1_star<T: Real>(s: &GroupSubset) -> Result<T> {
    let w = weights_of::<T>(s)?;
    let total = mass(&w)?;
    let m = weighted_markov_matrix(&w) / total;
    let n = m.nrows();
    let mut star = symmetric_eigenvalues(DMatrix::<T>::identity(n, n) - &m * m.transpose());
    star.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    Ok(star.get(1).copied().unwrap_or_else(T::one))
}

/// Largest distance between matched elements of two equal-size multisets,
/// or `None` when the sizes differ. Matching is greedy nearest-neighbour.
pub fn multiset_distance<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Option<T> {
    if a.len() != b.len() {
        return None;
    }
    let mut used = vec![false; b.len()];
    let mut worst = T::zero();
    for &x in a {
        let (j, dist) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, &y)| (j, modulus(x - y)))
            .min_by(|p, q| p.1.partial_cmp(&q.1).expect("finite"))?;
        used[j] = true;
        worst = worst.max(dist);
    }
    Some(worst)
}

/// Groups ascending values into clusters whose consecutive gaps are `<= tol`.
pub fn cluster_sizes<T: Real>(values: &[T], tol: T) -> Vec<(T, usize)> {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let mut out: Vec<(T, usize)> = Vec::new();
    let mut prev: Option<T> = None;
    for x in v {
        match (prev, out.last_mut()) {
            (Some(p), Some(last)) if x - p <= tol => last.1 += 1,
            _ => out.push((x, 1)),
        }
        prev = Some(x);
    }
    out
}

/// `f_B(x) = B(x) − |B|/|Γ|`.
pub fn balanced_function<V: FromFraction + Clone + Zero>(b: &GroupSubset) -> GroupFunction<V> {
    let n = b.group().order() as i128;
    let size = b.len() as i128;
    let values = b
        .indicator()
        .iter()
        .map(|&m| V::from_fraction(if m { n - size } else { -size }, n))
        .collect();
    GroupFunction::new(b.group(), values).expect("length matches")
}

/// Both sides of `|Γ|·T_k(f_B) = |B|^{2k} Σ_{j≥1} |1 − λ_j|^{2k}`.
#[derive(Clone, Debug, Serialize)]
pub struct TkReport {
    pub k: usize,
    /// `T_k(f_B) = Σ_x f_B^{(k)}(x)²`, exact.
    #[serde(skip)]
    pub convolution_exact: Ratio,
    pub convolution: f64,
    /// `|Γ|⁻¹ |B|^{2k} Σ_{j≥1} |1 − λ_j|^{2k}` from the dense spectrum.
    pub spectral: f64,
    pub relative_error: f64,
    /// `T₁(f_B) < |B|`.
    pub t1_below_size: bool,
}

/// `T_k` of the balanced function, by exact convolution and from the spectrum.
///
/// The two sides agree when the Markov operator of `B` is normal, which
/// covers abelian groups and symmetric sets.
pub fn t_k(b: &GroupSubset, k: usize) -> Result<TkReport> {
    if k == 0 {
        return Err(Error::KZero);
    }
    if b.is_empty() {
        return Err(Error::EmptySet);
    }
    let f: GroupFunction<Ratio> = balanced_function(b);
    let fk = f.iterated_convolution(k)?;
    let exact = fk.values().iter().fold(Ratio::zero(), |acc, v| acc + v * v);
    let t1 = f.values().iter().fold(Ratio::zero(), |acc, v| acc + v * v);
    let spec = laplace_spectrum_dense::<f64>(b)?;
    let size = b.len() as f64;
    let one = Complex::new(1.0, 0.0);
    let sum: f64 = spec.nontrivial().iter().map(|&l| (one - l).norm().powi(2 * k as i32)).sum();
    let spectral = size.powi(2 * k as i32) * sum / b.group().order() as f64;
    let convolution = crate::scalar::ratio_to_f64(&exact);
    let scale = convolution.abs().max(spectral.abs()).max(1.0);
    Ok(TkReport {
        k,
        convolution_exact: exact,
        convolution,
        spectral,
        relative_error: (convolution - spectral).abs() / scale,
        t1_below_size: t1 < crate::scalar::ratio_int(b.len() as i64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use std::f64::consts::PI;

    fn set(g: &std::sync::Arc<FiniteGroup>, xs: &[usize]) -> GroupSubset {
        GroupSubset::from_elements(g, xs).unwrap()
    }

    #[test]
    fn single_generator_spectrum_is_roots_of_unity() {
        // the Markov matrix is a permutation matrix: unshifted QR sweeps stall
        for n in [12, 30] {
            let g = FiniteGroup::cyclic(n).unwrap();
            let spec = laplace_spectrum_dense::<f64>(&set(&g, &[1])).unwrap();
            let expected: Vec<Complex<f64>> =
                (0..n).map(|k| Complex::new(1.0, 0.0) - Complex::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)).collect();
            assert!(multiset_distance(&spec.eigenvalues, &expected).unwrap() < 1e-9);
        }
        let d = FiniteGroup::dihedral(6).unwrap();
        assert_eq!(laplace_spectrum_dense::<f64>(&set(&d, &[1])).unwrap().eigenvalues.len(), 12);
    }

    #[test]
    fn repeated_real_eigenvalue_stays_finite() {
        // Z/15, {2,4,7,8,12}: the characters r = 5, 10 both give Ŝ(r) = −1
        let g = FiniteGroup::cyclic(15).unwrap();
        let s = set(&g, &[2, 4, 7, 8, 12]);
        let spec = laplace_spectrum_dense::<f64>(&s).unwrap();
        assert!(spec.eigenvalues.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        let expected: Vec<Complex<f64>> = (0..15)
            .map(|r| {
                let sum: Complex<f64> = s.elements().iter().map(|&x| Complex::from_polar(1.0, 2.0 * PI * (r * x) as f64 / 15.0)).sum();
                Complex::new(1.0, 0.0) - sum / 5.0
            })
            .collect();
        assert!(multiset_distance(&spec.eigenvalues, &expected).unwrap() < 1e-7);
    }

    #[test]
    fn markov_examples() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let m = markov_matrix::<f64>(&set(&g, &[1])).unwrap();
        // M(x, y) = 1 iff y = x + 1
        assert_eq!(m[(0, 1)], 1.0);
        assert_eq!(m[(2, 0)], 1.0);
        assert_eq!(m.sum(), 3.0);
        assert_eq!(markov_matrix::<f64>(&GroupSubset::identity(&g)).unwrap(), DMatrix::identity(3, 3));
        assert!(markov_matrix::<f64>(&GroupSubset::full(&g)).unwrap().iter().all(|&v| v == 1.0));
        assert_eq!(markov_matrix::<f64>(&GroupSubset::empty(&g)), Err(Error::EmptySet));
    }

    #[test]
    fn dense_examples() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let r = laplace_spectrum_dense::<f64>(&set(&g, &[1, 4])).unwrap();
        let mut want = vec![0.0, 1.0 - (2.0 * PI / 5.0).cos(), 1.0 - (2.0 * PI / 5.0).cos()];
        want.extend([1.0 - (4.0 * PI / 5.0).cos(); 2]);
        for (a, b) in r.sorted_real().iter().zip(&want) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!((r.lambda1 - want[1]).abs() < 1e-12);
        let full = laplace_spectrum_dense::<f64>(&GroupSubset::full(&g)).unwrap();
        assert!(full.eigenvalues[0].norm() < 1e-12);
        assert!(full.nontrivial().iter().all(|l| (l.re - 1.0).abs() < 1e-12));
        assert!((full.lambda1 - 1.0).abs() < 1e-12 && (full.lambda1_star - 1.0).abs() < 1e-12);
        let id = laplace_spectrum_dense::<f64>(&GroupSubset::identity(&g)).unwrap();
        assert!(id.eigenvalues.iter().all(|l| l.norm() < 1e-12));
        assert!(id.lambda1.abs() < 1e-12 && id.lambda1_star.abs() < 1e-12);
    }

    #[test]
    fn paths_agree() {
        let d = FiniteGroup::dihedral(6).unwrap();
        let cat = IrrepCatalog::<f64>::for_group(&d).unwrap();
        let s = set(&d, &[1, 5, 6, 8]);
        let dense = laplace_spectrum_dense::<f64>(&s).unwrap();
        let blocks = laplace_spectrum_blocks(&s, &cat).unwrap();
        assert!(multiset_distance(&dense.eigenvalues, &blocks.eigenvalues).unwrap() < 1e-9);
        assert!((dense.lambda1 - blocks.lambda1).abs() < 1e-9);
        assert!((dense.lambda1_star - blocks.lambda1_star).abs() < 1e-9);
        // non-symmetric set on a cyclic group
        let z = FiniteGroup::cyclic(9).unwrap();
        let cz = IrrepCatalog::<f64>::for_group(&z).unwrap();
        let t = set(&z, &[0, 1, 3]);
        let a = laplace_spectrum_dense::<f64>(&t).unwrap();
        let b = laplace_spectrum_blocks(&t, &cz).unwrap();
        assert!(multiset_distance(&a.eigenvalues, &b.eigenvalues).unwrap() < 1e-9);
        assert!((a.lambda1 - b.lambda1).abs() < 1e-9);
        assert!((a.lambda_mod - b.lambda_mod).abs() < 1e-9);
        assert!(a.lambda_mod <= a.lambda1 + 1e-12);
    }

    #[test]
    fn lambda1_star_character_oracle() {
        let g = FiniteGroup::cyclic(7).unwrap();
        let s = set(&g, &[1, 2, 4]);
        let max = (1..7)
            .map(|r| [1usize, 2, 4].iter().map(|&x| Complex::from_polar(1.0, 2.0 * PI * (r * x) as f64 / 7.0)).sum::<Complex<f64>>().norm())
            .fold(0.0, f64::max);
        assert!((lambda1_star::<f64>(&s).unwrap() - (1.0 - max * max / 9.0)).abs() < 1e-9);
    }

    #[test]
    fn balanced_function_is_mean_zero() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let f: GroupFunction<Ratio> = balanced_function(&set(&g, &[0, 1, 3]));
        assert!(f.total().is_zero());
        let h: GroupFunction<f64> = balanced_function(&set(&g, &[0, 1, 3]));
        assert!(h.total().abs() < 1e-12);
    }

    #[test]
    fn t_k_examples() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let r = t_k(&set(&g, &[0, 1, 3]), 2).unwrap();
        assert!(r.relative_error < 1e-8, "{r:?}");
        assert!(r.t1_below_size);
        let full = t_k(&GroupSubset::full(&g), 3).unwrap();
        assert!(full.convolution_exact.is_zero());
        assert_eq!(t_k(&GroupSubset::full(&g), 0).unwrap_err(), Error::KZero);
    }

    #[test]
    fn clustering() {
        let c = cluster_sizes(&[0.5, 0.1, 0.1 + 1e-9, 0.5 + 5e-7], 1e-6);
        assert_eq!(c.iter().map(|p| p.1).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn f32_spectrum() {
        let g = FiniteGroup::cyclic(8).unwrap();
        let r = laplace_spectrum_dense::<f32>(&set(&g, &[1, 7])).unwrap();
        assert!((r.lambda1 - (1.0 - (PI / 4.0).cos()) as f32).abs() < 1e-5);
    }
}
