//! The endomorphism ring `E` of a double-arrow object, its involution
//! `~f = η₀⁻¹ f* η₀`, and the ring-level computations used to classify
//! hermitian forms: units, radical, radical quotient, and congruence
//! classes of symmetric units.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::algebra::{AlgElem, InvAlgebra};
use crate::darrow::{
    da_dual_morphism, da_isomorphic, herm_pushforward, q_of_form, DAMorphism, DoubleArrow, Duals,
    MorphismSpace, QObject, Search,
};
use crate::enumerate::{checked_size, index_of, vector_at};
use crate::error::{Error, Result};
use crate::form::SesqSystem;
use crate::linalg::{Matrix, Subspace};

/// `End(Q₀)` as a `k`-algebra under composition, `x·y = x ∘ y`.
#[derive(Clone, Debug)]
pub struct EndoRing {
    object: DoubleArrow,
    space: MorphismSpace,
    basis: Vec<DAMorphism>,
    structure: Vec<Vec<AlgElem>>,
    unit: AlgElem,
    involution: Option<Matrix>,
}

impl EndoRing {
    pub fn compute(object: &DoubleArrow) -> EndoRing {
        let k = object.field();
        let space = MorphismSpace::new(object, object).expect("same algebra");
        let basis = space.basis_morphisms(k);
        let structure = basis
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|y| space.coords(k, &x.compose(k, y)).expect("E is closed under composition"))
                    .collect()
            })
            .collect();
        let unit = space
            .coords(k, &DAMorphism::identity(object))
            .expect("identity is an endomorphism");
        EndoRing {
            object: object.clone(),
            space,
            basis,
            structure,
            unit,
            involution: None,
        }
    }

    /// Attaches `~f = η₀⁻¹ f* η₀` for a unimodular hermitian `η₀` on `Q₀`.
    pub fn with_involution(mut self, duals: &Duals, eta0: &DAMorphism) -> Result<EndoRing> {
        let k = self.object.field().clone();
        let eta_inv = eta0.inverse(&k).ok_or(Error::NotUnimodular)?;
        let cols: Vec<AlgElem> = self
            .basis
            .iter()
            .map(|f| {
                let fs = da_dual_morphism(f, duals, duals);
                let t = eta_inv.compose(&k, &fs).compose(&k, eta0);
                self.space.coords(&k, &t).ok_or(Error::NotInvolution(
                    "η₀⁻¹ f* η₀ is not an endomorphism".into(),
                ))
            })
            .collect::<Result<_>>()?;
        self.involution = Some(Matrix::from_columns(&k, self.basis.len(), &cols));
        self.to_algebra()?;
        Ok(self)
    }

    pub fn object(&self) -> &DoubleArrow {
        &self.object
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DAMorphism] {
        &self.basis
    }

    pub fn structure(&self) -> &[Vec<AlgElem>] {
        &self.structure
    }

    pub fn unit(&self) -> &AlgElem {
        &self.unit
    }

    pub fn involution(&self) -> Option<&Matrix> {
        self.involution.as_ref()
    }

    pub fn element(&self, coords: &[crate::field::Elem]) -> DAMorphism {
        self.space.combine(self.object.field(), coords)
    }

    pub fn coords(&self, f: &DAMorphism) -> Option<AlgElem> {
        self.space.coords(self.object.field(), f)
    }

    /// `(E, ~)` as an algebra with involution; validated.
    pub fn to_algebra(&self) -> Result<InvAlgebra> {
        let inv = self.involution.clone().ok_or(Error::MissingInvolution)?;
        let names = (0..self.dim()).map(|i| format!("f{i}")).collect();
        InvAlgebra::new(
            self.object.field().clone(),
            names,
            self.structure.clone(),
            self.unit.clone(),
            inv,
        )
    }
}

/// The endomorphism ring of `q(s)` with the involution induced by `(e_V, id)`.
pub fn endo_of_form(q0: &QObject) -> Result<EndoRing> {
    EndoRing::compute(&q0.object).with_involution(&q0.duals, &q0.eta)
}

/// Invertible elements, in canonical order.
pub fn units_enumerate(e: &InvAlgebra, cap: u64) -> Result<Vec<AlgElem>> {
    let k = e.field();
    let size = checked_size(k, e.dim(), cap)?;
    Ok((0..size as u128)
        .into_par_iter()
        .map(|i| vector_at(k, e.dim(), i))
        .filter(|x| e.is_invertible(x))
        .collect())
}

fn is_nilpotent(e: &InvAlgebra, x: &[crate::field::Elem]) -> bool {
    let k = e.field();
    let l = e.left_mult(x);
    let mut p = l.clone();
    for _ in 1..e.dim() {
        p = p.mul(k, &l);
    }
    p.is_zero(k)
}

/// Jacobson radical. Finite fields: `x ∈ rad` iff `1 − a x` is invertible for
/// every `a`. Characteristic 0: kernel of `(x, y) ↦ tr(L_{xy})`.
pub fn radical(e: &InvAlgebra, cap: u64) -> Result<Subspace> {
    let k = e.field();
    let d = e.dim();
    if !k.is_finite() {
        let tr = |m: &Matrix| {
            (0..d).fold(k.zero(), |acc, i| k.add(&acc, &m[(i, i)]))
        };
        let t = Matrix::from_fn(d, d, |i, j| {
            tr(&e.left_mult(&e.mul(&e.basis_elem(i), &e.basis_elem(j))))
        });
        return Ok(t.nullspace(k));
    }
    let size = checked_size(k, d, cap)?;
    let one = e.one();
    let mut found: Vec<AlgElem> = Vec::new();
    let mut span = Subspace::span(k, d, &[]);
    let basis: Vec<AlgElem> = (0..d).map(|i| e.basis_elem(i)).collect();
    for i in 0..size as u128 {
        let x = vector_at(k, d, i);
        // one representative per coset of the radical found so far
        if e.is_zero(&x) || span.reduce(k, &x) != x || !is_nilpotent(e, &x) {
            continue;
        }
        let cheap = basis
            .iter()
            .all(|b| is_nilpotent(e, &e.mul(b, &x)) && is_nilpotent(e, &e.mul(&x, b)));
        if !cheap {
            continue;
        }
        let quasi_regular = (0..size as u128).into_par_iter().all(|j| {
            let a = vector_at(k, d, j);
            e.is_invertible(&e.sub(&one, &e.mul(&a, &x)))
        });
        if quasi_regular {
            found.push(x);
            span = Subspace::span(k, d, &found);
        }
    }
    Ok(span)
}

/// Whether `ideal` is a two-sided nilpotent ideal.
pub fn is_nilpotent_ideal(e: &InvAlgebra, ideal: &Subspace) -> bool {
    let k = e.field();
    let d = e.dim();
    let two_sided = ideal.basis().iter().all(|x| {
        (0..d).all(|i| {
            let b = e.basis_elem(i);
            ideal.contains(k, &e.mul(&b, x)) && ideal.contains(k, &e.mul(x, &b))
        })
    });
    if !two_sided {
        return false;
    }
    let mut power: Vec<AlgElem> = ideal.basis().to_vec();
    for _ in 0..=d {
        let sub = Subspace::span(k, d, &power);
        if sub.dim() == 0 {
            return true;
        }
        power = sub
            .basis()
            .iter()
            .flat_map(|x| ideal.basis().iter().map(move |y| (x, y)))
            .map(|(x, y)| e.mul(x, y))
            .collect();
    }
    false
}

/// `E / I` with the induced involution, on the basis elements outside the
/// echelon pivots of `I`.
pub fn quotient(e: &InvAlgebra, ideal: &Subspace) -> Result<InvAlgebra> {
    let k = e.field();
    let d = e.dim();
    if ideal.dim() == 0 {
        return Ok(e.clone());
    }
    for x in ideal.basis() {
        if !ideal.contains(k, &e.sigma(x)) {
            return Err(Error::RadicalNotStable);
        }
    }
    let keep: Vec<usize> = (0..d).filter(|i| !ideal.positions().contains(i)).collect();
    let project = |x: &[crate::field::Elem]| -> AlgElem {
        let r = ideal.reduce(k, x);
        keep.iter().map(|&i| r[i].clone()).collect()
    };
    let structure = keep
        .iter()
        .map(|&i| {
            keep.iter()
                .map(|&j| project(&e.structure()[i][j]))
                .collect()
        })
        .collect();
    let inv_cols: Vec<AlgElem> = keep
        .iter()
        .map(|&i| project(&e.sigma(&e.basis_elem(i))))
        .collect();
    let names = keep.iter().map(|&i| e.basis_names()[i].clone()).collect();
    InvAlgebra::new(
        k.clone(),
        names,
        structure,
        project(e.unit()),
        Matrix::from_columns(k, keep.len(), &inv_cols),
    )
}

pub fn quotient_radical(e: &InvAlgebra, cap: u64) -> Result<InvAlgebra> {
    quotient(e, &radical(e, cap)?)
}

/// Congruence classes of `E⁺ = {f ∈ E× : ~f = f}` under `f ↦ ~g f g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermClassSet {
    pub representatives: Vec<AlgElem>,
    pub orbit_sizes: Vec<usize>,
    pub units: usize,
}

impl HermClassSet {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

pub fn herm_classes(e: &InvAlgebra, cap: u64) -> Result<HermClassSet> {
    let k = e.field();
    let units = units_enumerate(e, cap)?;
    let plus: Vec<&AlgElem> = units.iter().filter(|f| e.sigma(f) == **f).collect();
    let mut seen: HashSet<u128> = HashSet::new();
    let mut representatives = Vec::new();
    let mut orbit_sizes = Vec::new();
    for f in plus {
        if seen.contains(&index_of(k, f)) {
            continue;
        }
        let orbit: HashSet<u128> = units
            .par_iter()
            .map(|g| index_of(k, &e.mul(&e.mul(&e.sigma(g), f), g)))
            .collect();
        orbit_sizes.push(orbit.len());
        seen.extend(orbit);
        representatives.push(f.clone());
    }
    Ok(HermClassSet {
        representatives,
        orbit_sizes,
        units: units.len(),
    })
}

/// First unit `g` in canonical order with `~g f g = f'`.
pub fn congruence_decide(e: &InvAlgebra, f: &AlgElem, f2: &AlgElem, cap: u64) -> Result<Option<AlgElem>> {
    let k = e.field();
    let size = checked_size(k, e.dim(), cap)?;
    Ok((0..size as u128).into_par_iter().find_map_first(|i| {
        let g = vector_at(k, e.dim(), i);
        (e.mul(&e.mul(&e.sigma(&g), f), &g) == *f2 && e.is_invertible(&g)).then_some(g)
    }))
}

/// `η₀⁻¹ η_M` for a form whose object is isomorphic to `Q₀`, together with
/// the isomorphism `q(s) → Q₀` used.
#[derive(Clone, Debug)]
pub struct Transfer {
    pub class: AlgElem,
    pub iso: DAMorphism,
    pub q: QObject,
}

pub fn transfer_class(s: &SesqSystem, q0: &QObject, e: &EndoRing, cap: u64) -> Result<Transfer> {
    let q = q_of_form(s)?;
    let iso = match da_isomorphic(&q.object, &q0.object, cap, 0, 0)? {
        Search::Found(iso) => iso,
        _ => return Err(Error::NotIsomorphicToQ0),
    };
    transfer_along(q, q0, e, iso)
}

/// `η₀⁻¹ η_M` along a given isomorphism `q(s) → Q₀`.
pub fn transfer_along(q: QObject, q0: &QObject, e: &EndoRing, iso: DAMorphism) -> Result<Transfer> {
    let k = q0.object.field().clone();
    let eta_m = herm_pushforward(&q.duals, &q.eta, &q0.duals, &iso)?;
    let eta0_inv = q0.eta.inverse(&k).ok_or(Error::NotUnimodular)?;
    let f = eta0_inv.compose(&k, &eta_m);
    let class = e.coords(&f).ok_or(Error::NotHermitian)?;
    Ok(Transfer { class, iso, q })
}
