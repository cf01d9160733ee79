//! Double arrows `(V, W, [(f_i, g_i)])` with `f_i, g_i : V → W`, their
//! duality `(W*, V*, [(g_i*, f_i*)])`, hermitian pairs, and the passage
//! between forms and hermitian objects.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::enumerate::{checked_size, Odometer};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::form::{random_elem, SesqForm, SesqSystem};
use crate::linalg::{LinearSystem, Matrix, Subspace, Term, VarBlock, Vector};
use crate::module::{dual_hom, dual_module, evaluation_map, DualModule, RightModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleArrow {
    v: RightModule,
    w: RightModule,
    arrows: Vec<(Matrix, Matrix)>,
}

impl DoubleArrow {
    pub fn new(v: RightModule, w: RightModule, arrows: Vec<(Matrix, Matrix)>) -> Result<DoubleArrow> {
        if !v.same_algebra(&w) {
            return Err(Error::AlgebraMismatch);
        }
        if arrows.is_empty() {
            return Err(Error::BadDimension("a double arrow needs at least one pair".into()));
        }
        for (f, g) in &arrows {
            if !v.is_hom_to(&w, f) || !v.is_hom_to(&w, g) {
                return Err(Error::NotAMorphism);
            }
        }
        Ok(DoubleArrow { v, w, arrows })
    }

    pub fn v(&self) -> &RightModule {
        &self.v
    }

    pub fn w(&self) -> &RightModule {
        &self.w
    }

    pub fn arrows(&self) -> &[(Matrix, Matrix)] {
        &self.arrows
    }

    pub fn field(&self) -> &Field {
        self.v.field()
    }
}

/// A pair `(φ : V → V', ψ : W → W')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DAMorphism {
    pub phi: Matrix,
    pub psi: Matrix,
}

impl DAMorphism {
    pub fn identity(m: &DoubleArrow) -> DAMorphism {
        let k = m.field();
        DAMorphism {
            phi: Matrix::identity(k, m.v.dim()),
            psi: Matrix::identity(k, m.w.dim()),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, k: &Field, other: &DAMorphism) -> DAMorphism {
        DAMorphism {
            phi: self.phi.mul(k, &other.phi),
            psi: self.psi.mul(k, &other.psi),
        }
    }

    pub fn inverse(&self, k: &Field) -> Option<DAMorphism> {
        Some(DAMorphism {
            phi: self.phi.inverse(k)?,
            psi: self.psi.inverse(k)?,
        })
    }

    pub fn is_invertible(&self, k: &Field) -> bool {
        self.phi.is_invertible(k) && self.psi.is_invertible(k)
    }
}

/// Duals and evaluation maps attached to one object.
#[derive(Clone, Debug)]
pub struct Duals {
    pub vd: DualModule,
    pub wd: DualModule,
    pub vdd: DualModule,
    pub wdd: DualModule,
    pub e_v: Matrix,
    pub e_w: Matrix,
    /// `M* = (W*, V*, [(g_i*, f_i*)])`.
    pub dual: DoubleArrow,
}

impl Duals {
    pub fn new(m: &DoubleArrow) -> Duals {
        let vd = dual_module(&m.v);
        let wd = dual_module(&m.w);
        let vdd = dual_module(vd.module());
        let wdd = dual_module(wd.module());
        let e_v = evaluation_map(&m.v, &vd, &vdd);
        let e_w = evaluation_map(&m.w, &wd, &wdd);
        let arrows = m
            .arrows
            .iter()
            .map(|(f, g)| (dual_hom(g, &vd, &wd), dual_hom(f, &vd, &wd)))
            .collect();
        let dual = DoubleArrow {
            v: wd.module().clone(),
            w: vd.module().clone(),
            arrows,
        };
        Duals {
            vd,
            wd,
            vdd,
            wdd,
            e_v,
            e_w,
            dual,
        }
    }

    /// `E_M = (e_V, e_W) : M → M**`.
    pub fn unit(&self) -> DAMorphism {
        DAMorphism {
            phi: self.e_v.clone(),
            psi: self.e_w.clone(),
        }
    }

    /// Dual of a hermitian-shaped pair `(φ : V → W*, ψ : W → V*)`, which is
    /// `(ψ*, φ*) : M** → M*`.
    pub fn dual_of_pair(&self, h: &DAMorphism) -> DAMorphism {
        DAMorphism {
            phi: dual_hom(&h.psi, &self.wd, &self.vdd),
            psi: dual_hom(&h.phi, &self.vd, &self.wdd),
        }
    }
}

pub fn da_dual(m: &DoubleArrow) -> DoubleArrow {
    Duals::new(m).dual
}

/// Dual of a morphism `(φ, ψ) : M → M'`, namely `(ψ*, φ*) : M'* → M*`.
pub fn da_dual_morphism(mor: &DAMorphism, src: &Duals, dst: &Duals) -> DAMorphism {
    DAMorphism {
        phi: dual_hom(&mor.psi, &src.wd, &dst.wd),
        psi: dual_hom(&mor.phi, &src.vd, &dst.vd),
    }
}

pub fn da_morphism_check(m: &DoubleArrow, m2: &DoubleArrow, mor: &DAMorphism) -> bool {
    let k = m.field();
    m.arrows.len() == m2.arrows.len()
        && m.v.is_hom_to(&m2.v, &mor.phi)
        && m.w.is_hom_to(&m2.w, &mor.psi)
        && m.arrows.iter().zip(&m2.arrows).all(|((f, g), (f2, g2))| {
            f2.mul(k, &mor.phi) == mor.psi.mul(k, f) && g2.mul(k, &mor.phi) == mor.psi.mul(k, g)
        })
}

/// `φ = ψ* e_V` and `ψ = φ* e_W`.
pub fn herm_check(m: &DoubleArrow, duals: &Duals, h: &DAMorphism) -> Result<bool> {
    if !da_morphism_check(m, &duals.dual, h) {
        return Err(Error::NotAMorphism);
    }
    let k = m.field();
    let hd = duals.dual_of_pair(h);
    Ok(hd.phi.mul(k, &duals.e_v) == h.phi && hd.psi.mul(k, &duals.e_w) == h.psi)
}

/// The object `q(s) = (V, V*, [(s_ℓ, s_r)])` of a form or system, with
/// its hermitian pair `(e_V, id)`.
#[derive(Clone, Debug)]
pub struct QObject {
    pub object: DoubleArrow,
    pub duals: Duals,
    pub eta: DAMorphism,
}

pub fn q_of_form(s: &SesqSystem) -> Result<QObject> {
    let v = s.module().clone();
    let k = v.field().clone();
    let vd = dual_module(&v);
    let arrows = s
        .forms()
        .iter()
        .map(|f| (f.left_adjoint(&vd), f.right_adjoint(&vd)))
        .collect();
    let object = DoubleArrow {
        v,
        w: vd.module().clone(),
        arrows,
    };
    let duals = Duals::new(&object);
    if !duals.e_v.is_invertible(&k) {
        return Err(Error::NotReflexive);
    }
    let eta = DAMorphism {
        phi: duals.e_v.clone(),
        psi: Matrix::identity(&k, duals.vd.dim()),
    };
    Ok(QObject { object, duals, eta })
}

/// Which arrow of each pair `form_of_herm` reads the left adjoint from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GMode {
    /// `s_ℓ := ψ f_i`; inverts `q_of_form` exactly.
    First,
    /// `s_ℓ := ψ g_i`; yields the σ-transpose of the original form.
    Second,
}

/// Forms on `V` recovered from a hermitian pair, one per arrow pair. The
/// object's `W` must be identified with `V*` through `ψ`, so `ψ f_i` lands in
/// the stored `V*` basis.
pub fn form_of_herm(m: &DoubleArrow, duals: &Duals, h: &DAMorphism, mode: GMode) -> Result<SesqSystem> {
    if !herm_check(m, duals, h)? {
        return Err(Error::NotHermitian);
    }
    let k = m.field();
    let vd = &duals.vd;
    let n = m.v.dim();
    let forms = m
        .arrows
        .iter()
        .map(|(f, g)| {
            let arrow = match mode {
                GMode::First => f,
                GMode::Second => g,
            };
            let sl = h.psi.mul(k, arrow);
            let funcs: Vec<Matrix> = (0..n).map(|i| vd.functional(&sl.col(i))).collect();
            let gram = (0..n)
                .map(|i| (0..n).map(|c| funcs[i].col(c)).collect())
                .collect();
            SesqForm::new(m.v.clone(), gram)
        })
        .collect::<Result<Vec<_>>>()?;
    SesqSystem::from_forms(forms)
}

/// `F(φ) = (φ, φ*⁻¹)` for an isometry `φ : (V, s) → (V', s')`.
pub fn f_on_morphism(s: &SesqSystem, t: &SesqSystem, phi: &Matrix) -> Result<DAMorphism> {
    let k = s.module().field();
    if s.len() != t.len()
        || !s
            .forms()
            .iter()
            .zip(t.forms())
            .all(|(a, b)| crate::form::is_isometry_by_adjoints(a, b, phi))
    {
        return Err(Error::NotAnIsometry);
    }
    let vd = dual_module(s.module());
    let wd = dual_module(t.module());
    let phi_star = dual_hom(phi, &vd, &wd);
    let psi = phi_star.inverse(k).ok_or(Error::NotAnIsometry)?;
    Ok(DAMorphism {
        phi: phi.clone(),
        psi,
    })
}

/// `η = φ*⁻¹ ∘ h ∘ φ⁻¹` on `M₀` for an isomorphism `φ : M → M₀`.
pub fn herm_pushforward(
    duals: &Duals,
    h: &DAMorphism,
    duals0: &Duals,
    iso: &DAMorphism,
) -> Result<DAMorphism> {
    let field = duals.vd.module().field().clone();
    let inv = iso.inverse(&field).ok_or(Error::NotInvertible)?;
    // φ₂* : W₀* → W*, φ₁* : V₀* → V*
    let phi2_star = dual_hom(&iso.psi, &duals.wd, &duals0.wd);
    let phi1_star = dual_hom(&iso.phi, &duals.vd, &duals0.vd);
    let phi2_star_inv = phi2_star.inverse(&field).ok_or(Error::NotInvertible)?;
    let phi1_star_inv = phi1_star.inverse(&field).ok_or(Error::NotInvertible)?;
    Ok(DAMorphism {
        phi: phi2_star_inv.mul(&field, &h.phi).mul(&field, &inv.phi),
        psi: phi1_star_inv.mul(&field, &h.psi).mul(&field, &inv.psi),
    })
}

/// Outcome of a search that may be exhaustive or only sampled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    None,
    Undecided,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }
}

/// The `k`-space of morphisms `M → M'`.
#[derive(Clone, Debug)]
pub struct MorphismSpace {
    phi: VarBlock,
    psi: VarBlock,
    space: Subspace,
}

impl MorphismSpace {
    pub fn new(m: &DoubleArrow, m2: &DoubleArrow) -> Result<MorphismSpace> {
        if !m.v.same_algebra(&m2.v) {
            return Err(Error::AlgebraMismatch);
        }
        let k = m.field();
        let (n1, n2, p1, p2) = (m.v.dim(), m2.v.dim(), m.w.dim(), m2.w.dim());
        let phi = VarBlock::new(0, n2, n1);
        let psi = VarBlock::new(phi.len(), p2, p1);
        let mut sys = LinearSystem::new(k, phi.len() + psi.len());
        if m.arrows.len() != m2.arrows.len() {
            return Ok(MorphismSpace {
                phi,
                psi,
                space: Subspace::span(k, phi.len() + psi.len(), &[]),
            });
        }
        let t = |var, left, right, negate| Term {
            var,
            left,
            right,
            negate,
        };
        for (r1, r2) in m.v.action().iter().zip(m2.v.action()) {
            sys.matrix_equation(n2, n1, &[t(phi, None, Some(r1), false), t(phi, Some(r2), None, true)]);
        }
        for (r1, r2) in m.w.action().iter().zip(m2.w.action()) {
            sys.matrix_equation(p2, p1, &[t(psi, None, Some(r1), false), t(psi, Some(r2), None, true)]);
        }
        for ((f, g), (f2, g2)) in m.arrows.iter().zip(&m2.arrows) {
            for (a, a2) in [(f, f2), (g, g2)] {
                sys.matrix_equation(
                    p2,
                    n1,
                    &[t(phi, Some(a2), None, false), t(psi, None, Some(a), true)],
                );
            }
        }
        Ok(MorphismSpace {
            phi,
            psi,
            space: sys.solve(),
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn combine(&self, k: &Field, coeffs: &[Elem]) -> DAMorphism {
        let v = self.space.combine(k, coeffs);
        DAMorphism {
            phi: self.phi.extract(&v),
            psi: self.psi.extract(&v),
        }
    }

    pub fn basis_morphisms(&self, k: &Field) -> Vec<DAMorphism> {
        (0..self.dim())
            .map(|i| {
                let mut c = vec![k.zero(); self.dim()];
                c[i] = k.one();
                self.combine(k, &c)
            })
            .collect()
    }

    /// Coordinates of a morphism in this basis.
    pub fn coords(&self, k: &Field, mor: &DAMorphism) -> Option<Vector> {
        let mut v = vec![k.zero(); self.phi.len() + self.psi.len()];
        self.phi.write(&mor.phi, &mut v);
        self.psi.write(&mor.psi, &mut v);
        self.space.coords(k, &v)
    }
}

/// First isomorphism `M → M'` in canonical coefficient order (finite
/// fields), or a seeded random search (infinite fields).
pub fn da_isomorphic(m: &DoubleArrow, m2: &DoubleArrow, cap: u64, trials: usize, seed: u64) -> Result<Search<DAMorphism>> {
    let space = MorphismSpace::new(m, m2)?;
    let k = m.field();
    if m.v.dim() != m2.v.dim() || m.w.dim() != m2.w.dim() || m.arrows.len() != m2.arrows.len() {
        return Ok(Search::None);
    }
    if !k.is_finite() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let c: Vec<Elem> = (0..space.dim()).map(|_| random_elem(k, &mut rng)).collect();
            let mor = space.combine(k, &c);
            if mor.is_invertible(k) {
                return Ok(Search::Found(mor));
            }
        }
        return Ok(Search::Undecided);
    }
    checked_size(k, space.dim(), cap)?;
    for c in Odometer::new(k, space.dim()) {
        let mor = space.combine(k, &c);
        if mor.is_invertible(k) {
            return Ok(Search::Found(mor));
        }
    }
    Ok(Search::None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Group, InvAlgebra};
    use crate::form::random_form;
    use std::sync::Arc;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn scalar(k: &Field, c: i64) -> SesqSystem {
        let alg = Arc::new(InvAlgebra::base_field(k));
        let m = RightModule::free(alg, 1);
        SesqForm::new(m, vec![vec![vec![k.from_i64(c)]]]).unwrap().into()
    }

    #[test]
    fn q_of_scalar_forms() {
        let k = f3();
        let q1 = q_of_form(&scalar(&k, 1)).unwrap();
        assert_eq!(q1.object.arrows()[0].0, Matrix::from_ints(&k, &[&[1]]));
        assert_eq!(q1.object.arrows()[0].1, Matrix::from_ints(&k, &[&[1]]));
        assert_eq!(q1.eta.phi, Matrix::from_ints(&k, &[&[1]]));
        let q2 = q_of_form(&scalar(&k, 2)).unwrap();
        assert_eq!(q2.object.arrows()[0].0, Matrix::from_ints(&k, &[&[2]]));
        assert!(herm_check(&q2.object, &q2.duals, &q2.eta).unwrap());
        let zero = DAMorphism {
            phi: Matrix::zeros(&k, 1, 1),
            psi: Matrix::zeros(&k, 1, 1),
        };
        assert!(herm_check(&q2.object, &q2.duals, &zero).unwrap());
        let skew = DAMorphism {
            phi: q2.eta.phi.clone(),
            psi: Matrix::from_ints(&k, &[&[2]]),
        };
        assert!(!matches!(herm_check(&q2.object, &q2.duals, &skew), Ok(true)));
    }

    #[test]
    fn object_iso_without_isometry() {
        let k = f3();
        let q1 = q_of_form(&scalar(&k, 1)).unwrap();
        let q2 = q_of_form(&scalar(&k, 2)).unwrap();
        let iso = da_isomorphic(&q2.object, &q1.object, 1000, 0, 0).unwrap().found().unwrap();
        assert!(da_morphism_check(&q2.object, &q1.object, &iso));
        let planted = DAMorphism {
            phi: Matrix::from_ints(&k, &[&[2]]),
            psi: Matrix::from_ints(&k, &[&[1]]),
        };
        assert!(da_morphism_check(&q2.object, &q1.object, &planted));
        let eta = herm_pushforward(&q2.duals, &q2.eta, &q1.duals, &planted).unwrap();
        assert_eq!(eta.phi, Matrix::from_ints(&k, &[&[2]]));
        assert_eq!(eta.psi, Matrix::from_ints(&k, &[&[2]]));
        assert!(herm_check(&q1.object, &q1.duals, &eta).unwrap());
    }

    #[test]
    fn round_trip_and_transpose_mode() {
        let k = f3();
        let alg = Arc::new(InvAlgebra::group_ring(&k, &Group::cyclic(2)).unwrap());
        let m = RightModule::free(alg, 1);
        for seed in 0..10 {
            let s = random_form(&m, seed, false, 1).unwrap();
            let sys: SesqSystem = s.clone().into();
            let q = q_of_form(&sys).unwrap();
            let back = form_of_herm(&q.object, &q.duals, &q.eta, GMode::First).unwrap();
            assert_eq!(back.forms()[0], s);
            let lit = form_of_herm(&q.object, &q.duals, &q.eta, GMode::Second).unwrap();
            assert_eq!(lit.forms()[0], s.sigma_transpose());
        }
    }

    #[test]
    fn double_dual_and_unit_identity() {
        let k = f3();
        let alg = Arc::new(InvAlgebra::group_ring(&k, &Group::cyclic(2)).unwrap());
        let m = RightModule::free(alg, 1);
        let s = random_form(&m, 3, true, 50).unwrap();
        let q = q_of_form(&s.into()).unwrap();
        let d1 = &q.duals;
        let d2 = Duals::new(&d1.dual);
        let mdd = &d2.dual;
        assert!(da_morphism_check(&q.object, mdd, &d1.unit()));
        let d3 = Duals::new(mdd);
        let e_star = da_dual_morphism(&d1.unit(), &q.duals, &d3);
        let e_of_dual = d2.unit();
        let comp = e_star.compose(&k, &e_of_dual);
        assert_eq!(comp, DAMorphism::identity(&d1.dual));
    }

    #[test]
    fn f_on_witness_morphism() {
        let k = f3();
        let alg = Arc::new(InvAlgebra::base_field(&k));
        let m = RightModule::free(alg, 2);
        let g = |a: i64| {
            vec![
                vec![vec![k.from_i64(a)], vec![k.zero()]],
                vec![vec![k.zero()], vec![k.from_i64(a)]],
            ]
        };
        let s: SesqSystem = SesqForm::new(m.clone(), g(1)).unwrap().into();
        let t: SesqSystem = SesqForm::new(m.clone(), g(2)).unwrap().into();
        let w = Matrix::from_ints(&k, &[&[1, 1], &[1, 2]]);
        let fm = f_on_morphism(&s, &t, &w).unwrap();
        let qs = q_of_form(&s).unwrap();
        let qt = q_of_form(&t).unwrap();
        assert!(da_morphism_check(&qs.object, &qt.object, &fm));
        assert_eq!(
            f_on_morphism(&s, &t, &Matrix::identity(&k, 2)).err(),
            Some(Error::NotAnIsometry)
        );
        let id = f_on_morphism(&s, &s, &Matrix::identity(&k, 2)).unwrap();
        assert_eq!(id, DAMorphism::identity(&qs.object));
    }
}
