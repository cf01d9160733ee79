//! Sesquilinear forms `s(xa, yb) = σ(a) s(x, y) b`, stored as Gram arrays
//! with `G[i][j] = s(e_i, e_j)` (row index = first argument).

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgElem, InvAlgebra};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{LinearSystem, Matrix, Subspace, Term, VarBlock, Vector};
use crate::module::{dual_module, DualModule, RightModule};

pub type Gram = Vec<Vec<AlgElem>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesqForm {
    module: RightModule,
    gram: Gram,
}

/// Adjoints `s_ℓ, s_r : V → V*` in the functional basis of `dual`.
#[derive(Clone, Debug)]
pub struct Adjoints {
    pub dual: DualModule,
    pub left: Matrix,
    pub right: Matrix,
}

impl SesqForm {
    /// `form_validate`: checks both compatibility families exactly.
    pub fn new(module: RightModule, gram: Gram) -> Result<SesqForm> {
        check_gram(&module, &gram)?;
        Ok(SesqForm { module, gram })
    }

    pub fn zero(module: RightModule) -> SesqForm {
        let n = module.dim();
        let z = module.algebra().zero();
        SesqForm {
            gram: vec![vec![z; n]; n],
            module,
        }
    }

    pub fn module(&self) -> &RightModule {
        &self.module
    }

    pub fn algebra(&self) -> &Arc<InvAlgebra> {
        self.module.algebra()
    }

    pub fn field(&self) -> &Field {
        self.module.field()
    }

    pub fn gram(&self) -> &Gram {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// `s(x, y)` for coordinate vectors.
    pub fn eval(&self, x: &[Elem], y: &[Elem]) -> AlgElem {
        let k = self.field();
        let alg = self.algebra();
        let mut acc = alg.zero();
        for (i, xi) in x.iter().enumerate() {
            if k.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if k.is_zero(yj) {
                    continue;
                }
                let c = k.mul(xi, yj);
                acc = alg.add(&acc, &alg.scale(&c, &self.gram[i][j]));
            }
        }
        acc
    }

    /// Matrix of `s_ℓ : x ↦ s(x, ·)`.
    pub fn left_adjoint(&self, dual: &DualModule) -> Matrix {
        let k = self.field();
        let d = self.algebra().dim();
        let cols: Vec<Vector> = (0..self.dim())
            .map(|i| {
                let f = Matrix::from_fn(d, self.dim(), |t, c| self.gram[i][c][t].clone());
                dual.coords_of(&f).expect("s(e_i, ·) is A-linear")
            })
            .collect();
        Matrix::from_columns(k, dual.dim(), &cols)
    }

    /// Matrix of `s_r : x ↦ σ(s(·, x))`.
    pub fn right_adjoint(&self, dual: &DualModule) -> Matrix {
        let k = self.field();
        let alg = self.algebra();
        let cols: Vec<Vector> = (0..self.dim())
            .map(|i| {
                let fcols: Vec<Vector> = (0..self.dim())
                    .map(|c| alg.sigma(&self.gram[c][i]))
                    .collect();
                let f = Matrix::from_columns(k, alg.dim(), &fcols);
                dual.coords_of(&f).expect("σ(s(·, e_i)) is A-linear")
            })
            .collect();
        Matrix::from_columns(k, dual.dim(), &cols)
    }

    pub fn adjoints(&self) -> Adjoints {
        let dual = dual_module(&self.module);
        let left = self.left_adjoint(&dual);
        let right = self.right_adjoint(&dual);
        Adjoints { dual, left, right }
    }

    /// `unimodular_check`: `s_ℓ` is bijective.
    pub fn is_unimodular(&self) -> bool {
        let dual = dual_module(&self.module);
        self.left_adjoint(&dual).is_invertible(self.field())
    }

    pub fn orth_sum(&self, other: &SesqForm) -> Result<SesqForm> {
        let module = self.module.direct_sum(&other.module)?;
        let n1 = self.dim();
        let n = module.dim();
        let z = self.algebra().zero();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i < n1, j < n1) {
                        (true, true) => self.gram[i][j].clone(),
                        (false, false) => other.gram[i - n1][j - n1].clone(),
                        _ => z.clone(),
                    })
                    .collect()
            })
            .collect();
        Ok(SesqForm { module, gram })
    }

    /// `s_L` on `V ⊗ L`, over an algebra already extended to `L`.
    pub fn extend(&self, algebra_l: Arc<InvAlgebra>) -> Result<SesqForm> {
        let k = self.field();
        let l = algebra_l.field().clone();
        let module = self.module.extend(algebra_l)?;
        let gram = embed_gram(k, &l, &self.gram)?;
        SesqForm::new(module, gram)
    }

    /// `(x, y) ↦ σ(s(y, x))`.
    pub fn sigma_transpose(&self) -> SesqForm {
        let alg = self.algebra();
        let n = self.dim();
        let gram = (0..n)
            .map(|i| (0..n).map(|j| alg.sigma(&self.gram[j][i])).collect())
            .collect();
        SesqForm {
            module: self.module.clone(),
            gram,
        }
    }

    /// Gram of `(x, y) ↦ s(Φx, Φy)` for `Φ : U → V` (columns in `V`).
    pub fn pullback_gram(&self, phi: &Matrix) -> Gram {
        let k = self.field();
        let alg = self.algebra();
        let m = phi.cols();
        let n = self.dim();
        let mut out = vec![vec![alg.zero(); m]; m];
        // H[a][j] = Σ_b G[a][b] Φ[b][j]
        let mut h = vec![vec![alg.zero(); m]; n];
        for a in 0..n {
            for j in 0..m {
                let mut acc = alg.zero();
                for b in 0..n {
                    let c = &phi[(b, j)];
                    if !k.is_zero(c) {
                        acc = alg.add(&acc, &alg.scale(c, &self.gram[a][b]));
                    }
                }
                h[a][j] = acc;
            }
        }
        for i in 0..m {
            for j in 0..m {
                let mut acc = alg.zero();
                for a in 0..n {
                    let c = &phi[(a, i)];
                    if !k.is_zero(c) {
                        acc = alg.add(&acc, &alg.scale(c, &h[a][j]));
                    }
                }
                out[i][j] = acc;
            }
        }
        out
    }

    /// The form `s'` on `target` with `s'(Φx, Φy) = s(x, y)`, for an
    /// invertible module map `Φ : V → target`.
    pub fn transport(&self, phi: &Matrix, target: &RightModule) -> Result<SesqForm> {
        let k = self.field();
        if !self.module.is_hom_to(target, phi) {
            return Err(Error::NotAMorphism);
        }
        let inv = phi.inverse(k).ok_or(Error::NotInvertible)?;
        let gram = self.pullback_gram(&inv);
        Ok(SesqForm {
            module: target.clone(),
            gram,
        })
    }

    /// Restriction to the submodule spanned by `vectors`, in its echelon basis.
    pub fn restrict(&self, vectors: &[Vector]) -> Result<SesqForm> {
        let k = self.field();
        let span = Subspace::span(k, self.dim(), vectors);
        let module = self.module.submodule(span.basis())?;
        let b = Matrix::from_columns(k, self.dim(), span.basis());
        let gram = self.pullback_gram(&b);
        Ok(SesqForm { module, gram })
    }
}

/// Entrywise Gram transport: `Σ Φ[a][i] Φ[b][j] G'[a][b] = G[i][j]`, plus
/// `Φ` invertible and `A`-linear.
pub fn is_isometry(s: &SesqForm, t: &SesqForm, phi: &Matrix) -> bool {
    let k = s.field();
    s.module.same_algebra(&t.module)
        && s.module.is_hom_to(&t.module, phi)
        && phi.is_invertible(k)
        && t.pullback_gram(phi) == s.gram
}

/// The same test phrased through adjoints: `s_ℓ = Φ* s'_ℓ Φ`.
pub fn is_isometry_by_adjoints(s: &SesqForm, t: &SesqForm, phi: &Matrix) -> bool {
    let k = s.field();
    if !(s.module.same_algebra(&t.module)
        && s.module.is_hom_to(&t.module, phi)
        && phi.is_invertible(k))
    {
        return false;
    }
    let vd = dual_module(&s.module);
    let wd = dual_module(&t.module);
    let sl = s.left_adjoint(&vd);
    let tl = t.left_adjoint(&wd);
    let phi_star = crate::module::dual_hom(phi, &vd, &wd);
    phi_star.mul(k, &tl).mul(k, phi) == sl
}

fn check_gram(module: &RightModule, gram: &Gram) -> Result<()> {
    let alg = module.algebra();
    let k = alg.field();
    let n = module.dim();
    let d = alg.dim();
    if gram.len() != n
        || gram
            .iter()
            .any(|r| r.len() != n || r.iter().any(|a| a.len() != d))
    {
        return Err(Error::NotSesquilinear(format!(
            "gram must be {n}x{n} with {d} coordinates per entry"
        )));
    }
    for b in 0..d {
        let r = &module.action()[b];
        let bel = alg.basis_elem(b);
        let sb = alg.sigma(&bel);
        for i in 0..n {
            for j in 0..n {
                let mut lhs = alg.zero();
                for m in 0..n {
                    let c = &r[(m, j)];
                    if !k.is_zero(c) {
                        lhs = alg.add(&lhs, &alg.scale(c, &gram[i][m]));
                    }
                }
                if lhs != alg.mul(&gram[i][j], &bel) {
                    return Err(Error::NotSesquilinear(format!(
                        "s(e_{i}, e_{j}·{0}) ≠ s(e_{i}, e_{j})·{0}",
                        alg.basis_names()[b]
                    )));
                }
                let mut lhs = alg.zero();
                for m in 0..n {
                    let c = &r[(m, i)];
                    if !k.is_zero(c) {
                        lhs = alg.add(&lhs, &alg.scale(c, &gram[m][j]));
                    }
                }
                if lhs != alg.mul(&sb, &gram[i][j]) {
                    return Err(Error::NotSesquilinear(format!(
                        "s(e_{i}·{0}, e_{j}) ≠ σ({0}) s(e_{i}, e_{j})",
                        alg.basis_names()[b]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Several forms on one module, transported simultaneously by isometries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesqSystem {
    module: RightModule,
    forms: Vec<SesqForm>,
}

impl SesqSystem {
    pub fn new(module: RightModule, grams: Vec<Gram>) -> Result<SesqSystem> {
        let forms = grams
            .into_iter()
            .map(|g| SesqForm::new(module.clone(), g))
            .collect::<Result<Vec<_>>>()?;
        Ok(SesqSystem { module, forms })
    }

    pub fn from_forms(forms: Vec<SesqForm>) -> Result<SesqSystem> {
        let module = forms
            .first()
            .map(|f| f.module.clone())
            .ok_or_else(|| Error::BadDimension("a system needs at least one form".into()))?;
        if forms.iter().any(|f| f.module != module) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(SesqSystem { module, forms })
    }

    pub fn module(&self) -> &RightModule {
        &self.module
    }

    pub fn forms(&self) -> &[SesqForm] {
        &self.forms
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn extend(&self, algebra_l: Arc<InvAlgebra>) -> Result<SesqSystem> {
        let forms = self
            .forms
            .iter()
            .map(|f| f.extend(algebra_l.clone()))
            .collect::<Result<Vec<_>>>()?;
        SesqSystem::from_forms(forms)
    }
}

impl From<SesqForm> for SesqSystem {
    fn from(s: SesqForm) -> SesqSystem {
        SesqSystem {
            module: s.module.clone(),
            forms: vec![s],
        }
    }
}

/// The `k`-space of all valid Gram arrays on a module.
#[derive(Clone, Debug)]
pub struct FormSpace {
    module: RightModule,
    space: Subspace,
}

impl FormSpace {
    pub fn new(module: &RightModule) -> FormSpace {
        let alg = module.algebra();
        let k = alg.field();
        let n = module.dim();
        let d = alg.dim();
        let var = |i: usize, j: usize, t: usize| (i * n + j) * d + t;
        let nvars = n * n * d;
        let mut sys = LinearSystem::new(k, nvars);
        for b in 0..d {
            let r = &module.action()[b];
            let right = alg.right_mult(&alg.basis_elem(b));
            let left = alg.left_mult(&alg.sigma(&alg.basis_elem(b)));
            for i in 0..n {
                for j in 0..n {
                    for t in 0..d {
                        let mut row = vec![k.zero(); nvars];
                        for m in 0..n {
                            let v = var(i, m, t);
                            row[v] = k.add(&row[v], &r[(m, j)]);
                        }
                        for u in 0..d {
                            let v = var(i, j, u);
                            row[v] = k.sub(&row[v], &right[(t, u)]);
                        }
                        sys.push(row);
                        let mut row = vec![k.zero(); nvars];
                        for m in 0..n {
                            let v = var(m, j, t);
                            row[v] = k.add(&row[v], &r[(m, i)]);
                        }
                        for u in 0..d {
                            let v = var(i, j, u);
                            row[v] = k.sub(&row[v], &left[(t, u)]);
                        }
                        sys.push(row);
                    }
                }
            }
        }
        FormSpace {
            module: module.clone(),
            space: sys.solve(),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn module(&self) -> &RightModule {
        &self.module
    }

    pub fn combine(&self, coeffs: &[Elem]) -> SesqForm {
        let k = self.module.field();
        let v = self.space.combine(k, coeffs);
        let n = self.module.dim();
        let d = self.module.algebra().dim();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| v[(i * n + j) * d..(i * n + j + 1) * d].to_vec())
                    .collect()
            })
            .collect();
        SesqForm {
            module: self.module.clone(),
            gram,
        }
    }
}

/// Uniform element of a finite field; small integers in `[-3, 3]` over `Q`.
pub fn random_elem<R: Rng>(k: &Field, rng: &mut R) -> Elem {
    match k.order() {
        Some(q) => k.element(rng.random_range(0..q)),
        None => k.from_i64(rng.random_range(-3..=3)),
    }
}

/// Seeded random form; with `require_unimodular`, resamples until unimodular.
pub fn random_form(
    module: &RightModule,
    seed: u64,
    require_unimodular: bool,
    max_tries: usize,
) -> Result<SesqForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_form_with(module, &FormSpace::new(module), &mut rng, require_unimodular, max_tries)
}

pub fn random_form_with<R: Rng>(
    module: &RightModule,
    space: &FormSpace,
    rng: &mut R,
    require_unimodular: bool,
    max_tries: usize,
) -> Result<SesqForm> {
    let k = module.field();
    for _ in 0..max_tries.max(1) {
        let coeffs: Vec<Elem> = (0..space.dim()).map(|_| random_elem(k, rng)).collect();
        let s = space.combine(&coeffs);
        if !require_unimodular || s.is_unimodular() {
            return Ok(s);
        }
    }
    Err(Error::NoUnimodularFound(max_tries))
}

/// `G`-invariant `k`-bilinear form on a module over a group ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GBilinearForm {
    module: RightModule,
    gram_k: Matrix,
}

impl GBilinearForm {
    pub fn new(module: RightModule, gram_k: Matrix) -> Result<GBilinearForm> {
        let alg = module.algebra();
        let group = alg.group().ok_or(Error::NotAGroupRing)?;
        let k = alg.field();
        let n = module.dim();
        if gram_k.rows() != n || gram_k.cols() != n {
            return Err(Error::BadDimension(format!("bilinear gram must be {n}x{n}")));
        }
        for g in 0..group.order() {
            let r = &module.action()[g];
            if r.transpose().mul(k, &gram_k).mul(k, r) != gram_k {
                return Err(Error::NotInvariant(group.elements()[g].clone()));
            }
        }
        Ok(GBilinearForm { module, gram_k })
    }

    pub fn module(&self) -> &RightModule {
        &self.module
    }

    pub fn gram_k(&self) -> &Matrix {
        &self.gram_k
    }

    /// `S(x, y) = Σ_g b(x·g, y) g`.
    pub fn to_sesq(&self) -> SesqForm {
        let alg = self.module.algebra();
        let k = alg.field();
        let n = self.module.dim();
        let d = alg.dim();
        let coeff: Vec<Matrix> = (0..d)
            .map(|g| self.module.action()[g].transpose().mul(k, &self.gram_k))
            .collect();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..d).map(|g| coeff[g][(i, j)].clone()).collect())
                    .collect()
            })
            .collect();
        SesqForm::new(self.module.clone(), gram).expect("invariant bilinear forms give sesquilinear forms")
    }

    /// Isometry of `G`-bilinear forms: `Φ` is `G`-equivariant, invertible and
    /// `Φᵀ B' Φ = B`.
    pub fn is_isometry(&self, other: &GBilinearForm, phi: &Matrix) -> bool {
        let k = self.module.field();
        self.module.is_hom_to(&other.module, phi)
            && phi.is_invertible(k)
            && phi.transpose().mul(k, &other.gram_k).mul(k, phi) == self.gram_k
    }
}

/// The `k`-space of `G`-invariant bilinear forms on a module over a group ring.
#[derive(Clone, Debug)]
pub struct BilinearSpace {
    module: RightModule,
    block: VarBlock,
    space: Subspace,
}

impl BilinearSpace {
    pub fn new(module: &RightModule) -> Result<BilinearSpace> {
        let alg = module.algebra();
        let group = alg.group().ok_or(Error::NotAGroupRing)?;
        let k = alg.field();
        let n = module.dim();
        let block = VarBlock::new(0, n, n);
        let mut sys = LinearSystem::new(k, block.len());
        for g in 0..group.order() {
            let r = &module.action()[g];
            let rt = r.transpose();
            sys.matrix_equation(
                n,
                n,
                &[
                    Term {
                        var: block,
                        left: Some(&rt),
                        right: Some(r),
                        negate: false,
                    },
                    Term {
                        var: block,
                        left: None,
                        right: None,
                        negate: true,
                    },
                ],
            );
        }
        Ok(BilinearSpace {
            module: module.clone(),
            block,
            space: sys.solve(),
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn combine(&self, coeffs: &[Elem]) -> GBilinearForm {
        let v = self.space.combine(self.module.field(), coeffs);
        GBilinearForm {
            module: self.module.clone(),
            gram_k: self.block.extract(&v),
        }
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> GBilinearForm {
        let k = self.module.field();
        let c: Vec<Elem> = (0..self.dim()).map(|_| random_elem(k, rng)).collect();
        self.combine(&c)
    }
}

pub fn gbilinear_to_sesq(b: &GBilinearForm) -> SesqForm {
    b.to_sesq()
}

/// `P ∘ S`: the coefficient of the group unit in each Gram entry.
pub fn sesq_to_gbilinear(s: &SesqForm) -> Result<GBilinearForm> {
    let alg = s.algebra();
    let group = alg.group().ok_or(Error::NotAGroupRing)?;
    let e = group.unit();
    let n = s.dim();
    let b = Matrix::from_fn(n, n, |i, j| s.gram[i][j][e].clone());
    GBilinearForm::new(s.module.clone(), b)
}

/// Coefficient-wise embedding of a Gram array into a larger field.
pub(crate) fn embed_gram(k: &Field, l: &Field, g: &Gram) -> Result<Gram> {
    g.iter()
        .map(|row| {
            row.iter()
                .map(|a| a.iter().map(|c| k.embed(l, c)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Group;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn scalar_form(k: &Field, rows: &[&[i64]]) -> SesqForm {
        let alg = Arc::new(InvAlgebra::base_field(k));
        let m = RightModule::free(alg, rows.len());
        let gram = rows
            .iter()
            .map(|r| r.iter().map(|&x| vec![k.from_i64(x)]).collect())
            .collect();
        SesqForm::new(m, gram).unwrap()
    }

    #[test]
    fn adjoint_readings_over_f3() {
        let k = f3();
        let s = scalar_form(&k, &[&[1, 2], &[0, 1]]);
        let adj = s.adjoints();
        assert_eq!(adj.left, Matrix::from_ints(&k, &[&[1, 0], &[2, 1]]));
        assert_eq!(adj.right, Matrix::from_ints(&k, &[&[1, 2], &[0, 1]]));
        let (_, vdd, ev) = crate::module::double_dual_map(s.module());
        let sl_star = crate::module::dual_hom(&adj.left, &adj.dual, &vdd);
        assert_eq!(sl_star.mul(&k, &ev), adj.right);
    }

    #[test]
    fn unimodularity() {
        let k = f3();
        assert!(scalar_form(&k, &[&[1, 0], &[0, 1]]).is_unimodular());
        assert!(!scalar_form(&k, &[&[1, 0], &[0, 0]]).is_unimodular());
        let z = SesqForm::zero(scalar_form(&k, &[&[1]]).module().clone());
        assert!(z.adjoints().left.is_zero(&k));
    }

    #[test]
    fn sigma_symmetric_adjoints_agree() {
        let k = f3();
        let s = scalar_form(&k, &[&[1, 2], &[2, 0]]);
        let adj = s.adjoints();
        assert_eq!(adj.left, adj.right);
    }

    #[test]
    fn gbilinear_bridge_c2() {
        let k = f3();
        let alg = Arc::new(InvAlgebra::group_ring(&k, &Group::cyclic(2)).unwrap());
        let m = RightModule::regular(alg.clone());
        let b = GBilinearForm::new(m.clone(), Matrix::identity(&k, 2)).unwrap();
        let s = b.to_sesq();
        assert_eq!(s.gram()[0][0], vec![k.one(), k.zero()]);
        assert_eq!(sesq_to_gbilinear(&s).unwrap(), b);
        let bad = Matrix::from_ints(&k, &[&[1, 0], &[0, 0]]);
        assert!(matches!(GBilinearForm::new(m, bad), Err(Error::NotInvariant(_))));
        let plain = scalar_form(&k, &[&[1]]);
        assert_eq!(sesq_to_gbilinear(&plain).err(), Some(Error::NotAGroupRing));
    }

    #[test]
    fn invariant_space_of_regular_c2() {
        let k = f3();
        let alg = Arc::new(InvAlgebra::group_ring(&k, &Group::cyclic(2)).unwrap());
        let space = BilinearSpace::new(&RightModule::regular(alg)).unwrap();
        assert_eq!(space.dim(), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let b = space.random(&mut rng);
            assert!(GBilinearForm::new(b.module().clone(), b.gram_k().clone()).is_ok());
            assert_eq!(sesq_to_gbilinear(&b.to_sesq()).unwrap(), b);
        }
    }

    #[test]
    fn planted_violation_rejected() {
        let k = f3();
        let alg = Arc::new(InvAlgebra::group_ring(&k, &Group::cyclic(2)).unwrap());
        let m = RightModule::regular(alg);
        let gram = vec![
            vec![vec![k.one(), k.zero()], vec![k.zero(), k.one()]],
            vec![vec![k.zero(), k.one()], vec![k.one(), k.one()]],
        ];
        assert!(matches!(SesqForm::new(m, gram), Err(Error::NotSesquilinear(_))));
    }

    #[test]
    fn random_form_is_deterministic_and_valid() {
        let k = f3();
        let alg = Arc::new(InvAlgebra::group_ring(&k, &Group::cyclic(2)).unwrap());
        let m = RightModule::free(alg, 2);
        let a = random_form(&m, 7, true, 100).unwrap();
        let b = random_form(&m, 7, true, 100).unwrap();
        assert_eq!(a, b);
        assert!(SesqForm::new(m.clone(), a.gram().clone()).is_ok());
        let base = Arc::new(InvAlgebra::base_field(&k));
        assert_eq!(FormSpace::new(&RightModule::free(base.clone(), 3)).dim(), 9);
        let z = random_form(&RightModule::zero(base), 1, true, 1).unwrap();
        assert!(z.is_unimodular());
    }

    #[test]
    fn isometry_checks_agree_on_witness() {
        let k = f3();
        let s = scalar_form(&k, &[&[1, 0], &[0, 1]]);
        let t = scalar_form(&k, &[&[2, 0], &[0, 2]]);
        let phi = Matrix::from_ints(&k, &[&[1, 1], &[1, 2]]);
        assert!(is_isometry(&s, &t, &phi));
        assert!(is_isometry_by_adjoints(&s, &t, &phi));
        let id = Matrix::identity(&k, 2);
        assert!(!is_isometry(&s, &t, &id));
        assert!(!is_isometry_by_adjoints(&s, &t, &id));
    }

    #[test]
    fn orth_sum_adjoints_are_block_sums() {
        let k = f3();
        let s = scalar_form(&k, &[&[1]]);
        let t = scalar_form(&k, &[&[2]]);
        let u = s.orth_sum(&t).unwrap();
        assert_eq!(u.gram()[1][1], vec![k.from_i64(2)]);
        assert!(u.is_unimodular());
        let adj = u.adjoints();
        let expected = Matrix::block_diag(&k, &s.adjoints().left, &t.adjoints().left);
        assert_eq!(adj.left, expected);
    }

    #[test]
    fn transport_yields_isometry() {
        let k = f3();
        let s = scalar_form(&k, &[&[1, 2], &[0, 1]]);
        let phi = Matrix::from_ints(&k, &[&[1, 1], &[0, 2]]);
        let t = s.transport(&phi, s.module()).unwrap();
        assert!(is_isometry(&s, &t, &phi));
    }
}
