//! Irreducible unitary representations of cataloged groups and the Fourier
//! transform `f̂(ρ) = Σ_g f(g) ρ(g)`.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupDescriptor, EXHAUSTIVE_AXIOM_LIMIT};
use crate::scalar::{modulus, real, root_of_unity, to_f64, Real};
use crate::subset::{GroupFunction, GroupSubset};

/// Dense complex matrix over the scalar `T`.
pub type CMatrix<T> = DMatrix<Complex<T>>;

/// Operator norm (largest singular value).
pub fn op_norm<T: Real>(m: &CMatrix<T>) -> T {
    if m.nrows() == 1 && m.ncols() == 1 {
        return modulus(m[(0, 0)]);
    }
    m.clone().svd(false, false).singular_values.max()
}

/// Hilbert–Schmidt (Frobenius) norm.
pub fn hs_norm<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt()
}

fn max_abs_entry<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().map(|z| modulus(*z)).fold(T::zero(), |a, b| a.max(b))
}

/// A unitary representation given by one matrix per element.
#[derive(Clone, Debug)]
pub struct UnitaryRepresentation<T: Real> {
    group: Arc<FiniteGroup>,
    label: String,
    dim: usize,
    matrices: Vec<CMatrix<T>>,
    is_trivial: bool,
    irreducible: bool,
}

/// Residuals of the defining identities of a representation.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RepValidation {
    pub label: String,
    pub dim: usize,
    pub is_trivial: bool,
    pub homomorphism_residual: f64,
    pub unitarity_residual: f64,
    /// `|Σ_g |tr ρ(g)|² − |Γ||`, only meaningful for irreducible ones.
    pub orthogonality_residual: f64,
}

impl RepValidation {
    pub fn passes(&self) -> bool {
        self.homomorphism_residual <= 1e-10 && self.unitarity_residual <= 1e-10 && self.orthogonality_residual <= 1e-8
    }
}

impl<T: Real> UnitaryRepresentation<T> {
    /// Wraps explicit matrices; nothing is checked until [`validate`](Self::validate).
    pub fn new(group: &Arc<FiniteGroup>, label: impl Into<String>, matrices: Vec<CMatrix<T>>, irreducible: bool) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::InvalidDescriptor(format!(
                "representation has {} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        let dim = matrices[0].nrows();
        if matrices.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::InvalidDescriptor("representation matrices differ in shape".into()));
        }
        let eye = CMatrix::<T>::identity(dim, dim);
        let is_trivial = matrices.iter().all(|m| max_abs_entry(&(m - &eye)) <= T::tolerance());
        Ok(UnitaryRepresentation { group: group.clone(), label: label.into(), dim, matrices, is_trivial, irreducible })
    }

    fn from_character(group: &Arc<FiniteGroup>, label: String, values: Vec<Complex<T>>) -> Self {
        let is_trivial = values.iter().all(|z| modulus(*z - Complex::new(T::one(), T::zero())) <= T::tolerance());
        UnitaryRepresentation {
            group: group.clone(),
            label,
            dim: 1,
            matrices: values.into_iter().map(|z| CMatrix::from_element(1, 1, z)).collect(),
            is_trivial,
            irreducible: true,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_trivial(&self) -> bool {
        self.is_trivial
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn matrix(&self, g: Elem) -> &CMatrix<T> {
        &self.matrices[g]
    }

    /// `‖ρ(g) − I‖`.
    pub fn distance_from_identity(&self, g: Elem) -> T {
        let eye = CMatrix::<T>::identity(self.dim, self.dim);
        op_norm(&(&self.matrices[g] - eye))
    }

    /// `f̂(ρ)`.
    pub fn fourier(&self, f: &GroupFunction<Complex<T>>) -> Result<CMatrix<T>> {
        if **f.group() != *self.group {
            return Err(Error::GroupMismatch);
        }
        let mut acc = CMatrix::<T>::zeros(self.dim, self.dim);
        for (g, v) in f.values().iter().enumerate() {
            if v.re != T::zero() || v.im != T::zero() {
                acc += &self.matrices[g] * *v;
            }
        }
        Ok(acc)
    }

    /// `Â(ρ) = Σ_{a∈A} ρ(a)`.
    pub fn fourier_set(&self, a: &GroupSubset) -> Result<CMatrix<T>> {
        if **a.group() != *self.group {
            return Err(Error::GroupMismatch);
        }
        let mut acc = CMatrix::<T>::zeros(self.dim, self.dim);
        for x in a.elements() {
            acc += &self.matrices[x];
        }
        Ok(acc)
    }

    pub fn validate(&self) -> RepValidation {
        let g = &self.group;
        let n = g.order();
        let eye = CMatrix::<T>::identity(self.dim, self.dim);
        let hom = |a: Elem, b: Elem| to_f64(max_abs_entry(&(&self.matrices[g.op(a, b)] - &self.matrices[a] * &self.matrices[b])));
        let mut homomorphism_residual = to_f64(max_abs_entry(&(&self.matrices[g.identity()] - &eye)));
        if n <= EXHAUSTIVE_AXIOM_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    homomorphism_residual = homomorphism_residual.max(hom(a, b));
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x7e9);
            for _ in 0..10_000 {
                let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                homomorphism_residual = homomorphism_residual.max(hom(a, b));
            }
        }
        let unitarity_residual = self
            .matrices
            .iter()
            .map(|m| to_f64(max_abs_entry(&(m * m.adjoint() - &eye))))
            .fold(0.0, f64::max);
        let trace_sum: f64 = self.matrices.iter().map(|m| to_f64(m.trace().norm_sqr())).sum();
        RepValidation {
            label: self.label.clone(),
            dim: self.dim,
            is_trivial: self.is_trivial,
            homomorphism_residual,
            unitarity_residual,
            orthogonality_residual: if self.irreducible { (trace_sum - n as f64).abs() } else { 0.0 },
        }
    }
}

/// A complete list of irreducible unitary representations.
#[derive(Clone, Debug)]
pub struct IrrepCatalog<T: Real> {
    group: Arc<FiniteGroup>,
    reps: Vec<UnitaryRepresentation<T>>,
}

impl<T: Real> IrrepCatalog<T> {
    /// Catalog for cyclic, abelian-product and dihedral groups.
    pub fn for_group(group: &Arc<FiniteGroup>) -> Result<Self> {
        let reps = match group.descriptor() {
            GroupDescriptor::Cyclic { n } => cyclic_characters(group, &[*n]),
            GroupDescriptor::AbelianProduct { factors } => cyclic_characters(group, factors),
            GroupDescriptor::Dihedral { n } => dihedral_irreps(group, *n),
            _ => return Err(Error::NotCataloged(group.label().to_string())),
        };
        Ok(IrrepCatalog { group: group.clone(), reps })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn reps(&self) -> &[UnitaryRepresentation<T>] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn nontrivial(&self) -> impl Iterator<Item = &UnitaryRepresentation<T>> {
        self.reps.iter().filter(|r| !r.is_trivial())
    }

    /// `Σ_ρ d_ρ²`; equals `|Γ|` for a complete catalog.
    pub fn dimension_sum(&self) -> usize {
        self.reps.iter().map(|r| r.dim * r.dim).sum()
    }

    /// Smallest dimension of a nontrivial irreducible representation.
    pub fn d_min(&self) -> Option<usize> {
        self.nontrivial().map(|r| r.dim).min()
    }

    pub fn validate(&self) -> Vec<RepValidation> {
        self.reps.par_iter().map(|r| r.validate()).collect()
    }

    /// `f̂(ρ)` for every `ρ`, in catalog order.
    pub fn transform(&self, f: &GroupFunction<Complex<T>>) -> Result<Vec<CMatrix<T>>> {
        self.reps.par_iter().map(|r| r.fourier(f)).collect()
    }

    /// `Â(ρ)` for every `ρ`, in catalog order.
    pub fn transform_set(&self, a: &GroupSubset) -> Result<Vec<CMatrix<T>>> {
        self.reps.par_iter().map(|r| r.fourier_set(a)).collect()
    }

    /// `f(g) = |Γ|⁻¹ Σ_ρ d_ρ tr(f̂(ρ) ρ(g⁻¹))`.
    pub fn inverse(&self, coeffs: &[CMatrix<T>]) -> Result<GroupFunction<Complex<T>>> {
        if coeffs.len() != self.reps.len() {
            return Err(Error::IncompleteCatalog { got: coeffs.len(), expected: self.reps.len() });
        }
        let g = &self.group;
        let scale: T = real(1.0 / g.order() as f64);
        let values = g
            .elements()
            .map(|x| {
                let xi = g.inv(x);
                self.reps.iter().zip(coeffs).fold(Complex::new(T::zero(), T::zero()), |acc, (r, c)| {
                    let tr = (c * r.matrix(xi)).trace();
                    acc + tr * real::<T>(r.dim as f64)
                }) * scale
            })
            .collect();
        GroupFunction::new(g, values)
    }

    /// `max_{ρ≠1} ‖Â(ρ)‖`.
    pub fn set_norm(&self, a: &GroupSubset) -> Result<T> {
        let norms: Vec<T> = self
            .reps
            .par_iter()
            .filter(|r| !r.is_trivial())
            .map(|r| r.fourier_set(a).map(|m| op_norm(&m)))
            .collect::<Result<_>>()?;
        Ok(norms.into_iter().fold(T::zero(), |x, y| x.max(y)))
    }
}

/// Characters of `Z/n₁ × … × Z/n_k`; character `r` is indexed like the element `r`.
fn cyclic_characters<T: Real>(group: &Arc<FiniteGroup>, factors: &[usize]) -> Vec<UnitaryRepresentation<T>> {
    let coords: Vec<Vec<usize>> = group.elements().map(|x| group.product_coordinates(x).expect("abelian law")).collect();
    (0..group.order())
        .into_par_iter()
        .map(|r| {
            let rc = &coords[r];
            let values = coords
                .iter()
                .map(|xc| {
                    let mut angle = T::zero();
                    for ((&ri, &xi), &n) in rc.iter().zip(xc).zip(factors) {
                        angle += real::<T>(((ri * xi) % n) as f64 / n as f64);
                    }
                    let theta = angle * T::two_pi();
                    Complex::new(theta.cos(), theta.sin())
                })
                .collect();
            let label = format!("chi{rc:?}");
            UnitaryRepresentation::from_character(group, label, values)
        })
        .collect()
}

fn dihedral_irreps<T: Real>(group: &Arc<FiniteGroup>, n: usize) -> Vec<UnitaryRepresentation<T>> {
    let one = T::one();
    let mut reps = Vec::new();
    let mut signs: Vec<(i8, i8, &str)> = vec![(1, 1, "trivial"), (1, -1, "sign")];
    if n.is_multiple_of(2) {
        signs.push((-1, 1, "alt_r"));
        signs.push((-1, -1, "alt_rs"));
    }
    for (rv, sv, name) in signs {
        let values = group
            .elements()
            .map(|x| {
                let (k, f) = (x % n, x / n);
                let mut v = if rv < 0 && k % 2 == 1 { -one } else { one };
                if sv < 0 && f == 1 {
                    v = -v;
                }
                Complex::new(v, T::zero())
            })
            .collect();
        reps.push(UnitaryRepresentation::from_character(group, name.to_string(), values));
    }
    for j in 1..=(n - 1) / 2 {
        let matrices = group
            .elements()
            .map(|x| {
                let (k, f) = (x % n, x / n);
                let w: Complex<T> = root_of_unity((j * k) as i64, n as u64);
                let (c, s) = (w.re, w.im);
                let z = T::zero();
                let flip = if f == 1 { -one } else { one };
                // rotation by 2πjk/n, then the reflection diag(1, −1)
                CMatrix::from_row_slice(
                    2,
                    2,
                    &[Complex::new(c, z), Complex::new(-s * flip, z), Complex::new(s, z), Complex::new(c * flip, z)],
                )
            })
            .collect();
        reps.push(UnitaryRepresentation {
            group: group.clone(),
            label: format!("rot{j}"),
            dim: 2,
            matrices,
            is_trivial: false,
            irreducible: true,
        });
    }
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn catalog(g: &Arc<FiniteGroup>) -> IrrepCatalog<f64> {
        IrrepCatalog::for_group(g).unwrap()
    }

    #[test]
    fn catalogs_are_complete_and_valid() {
        for g in [
            FiniteGroup::cyclic(1).unwrap(),
            FiniteGroup::cyclic(12).unwrap(),
            FiniteGroup::abelian_product(&[2, 6]).unwrap(),
            FiniteGroup::dihedral(5).unwrap(),
            FiniteGroup::dihedral(6).unwrap(),
        ] {
            let c = catalog(&g);
            assert_eq!(c.dimension_sum(), g.order());
            assert_eq!(c.reps().iter().filter(|r| r.is_trivial()).count(), 1);
            for v in c.validate() {
                assert!(v.passes(), "{v:?}");
            }
        }
        let a5 = FiniteGroup::alternating5();
        assert!(matches!(IrrepCatalog::<f64>::for_group(&a5), Err(Error::NotCataloged(_))));
    }

    #[test]
    fn d_min_values() {
        assert_eq!(catalog(&FiniteGroup::cyclic(9).unwrap()).d_min(), Some(1));
        assert_eq!(catalog(&FiniteGroup::dihedral(7).unwrap()).d_min(), Some(1));
        assert_eq!(catalog(&FiniteGroup::cyclic(1).unwrap()).d_min(), None);
    }

    #[test]
    fn fourier_examples() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let c = catalog(&g);
        let s = GroupSubset::from_elements(&g, &[0, 2]).unwrap();
        let m = c.reps()[1].fourier_set(&s).unwrap();
        assert!(modulus(m[(0, 0)]) < 1e-12);
        let d = FiniteGroup::dihedral(6).unwrap();
        let cd = catalog(&d);
        let full = GroupSubset::full(&d);
        for r in cd.nontrivial() {
            assert!(op_norm(&r.fourier_set(&full).unwrap()) < 1e-9);
        }
        let delta = GroupFunction::delta(&d, d.identity(), Complex64::new(1.0, 0.0));
        for (r, m) in cd.reps().iter().zip(cd.transform(&delta).unwrap()) {
            assert!(max_abs_entry(&(m - CMatrix::identity(r.dim(), r.dim()))) < 1e-12);
        }
    }

    #[test]
    fn inverse_recovers_delta_on_a_rotation() {
        // The pairing must use ρ(g⁻¹); tr(f̂ ρ(g)) would return the delta at g⁻¹.
        let d = FiniteGroup::dihedral(4).unwrap();
        let c = catalog(&d);
        let f = GroupFunction::delta(&d, 1, Complex64::new(1.0, 0.0));
        let back = c.inverse(&c.transform(&f).unwrap()).unwrap();
        for x in d.elements() {
            let want = if x == 1 { 1.0 } else { 0.0 };
            assert!((back.get(x) - Complex64::new(want, 0.0)).norm() < 1e-10);
        }
        assert_eq!(c.inverse(&[]).unwrap_err(), Error::IncompleteCatalog { got: 0, expected: 5 });
    }

    #[test]
    fn set_norm_examples() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let c = catalog(&g);
        let s = GroupSubset::from_elements(&g, &[1, 4]).unwrap();
        // |Ŝ(r)| = |2cos(2πr/5)|; the maximum sits at r = 2, the minimum at r = 1.
        let want = (2.0 * (4.0 * std::f64::consts::PI / 5.0).cos()).abs();
        assert!((c.set_norm(&s).unwrap() - want).abs() < 1e-12);
        let smallest = c.nontrivial().map(|r| op_norm(&r.fourier_set(&s).unwrap())).fold(f64::MAX, f64::min);
        assert!((smallest - 2.0 * (2.0 * std::f64::consts::PI / 5.0).cos()).abs() < 1e-12);
        assert!(c.set_norm(&GroupSubset::full(&g)).unwrap() < 1e-12);
        assert!((c.set_norm(&GroupSubset::identity(&g)).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn f32_catalog() {
        let d = FiniteGroup::dihedral(5).unwrap();
        let c = IrrepCatalog::<f32>::for_group(&d).unwrap();
        for v in c.validate() {
            assert!(v.homomorphism_residual < 1e-5);
        }
    }
}
