//! Right modules over an [`InvAlgebra`], presented as `k`-spaces with one
//! action matrix per algebra basis element.
//!
//! Coordinates are columns: `x·a_i` has coordinates `R_i x`. Since the
//! action is on the right, `R(a_i a_j) = R_j R_i`.
//!
//! Duals are computed, never assumed: `V* = Hom_A(V, A)` is solved for as a
//! space of concrete `k`-linear maps `V → A`, and carries the twisted right
//! action `(f·a)(x) = σ(a) f(x)`.

use std::sync::Arc;

use crate::algebra::{AlgElem, InvAlgebra};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{LinearSystem, Matrix, Subspace, Term, VarBlock, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RightModule {
    algebra: Arc<InvAlgebra>,
    dim: usize,
    action: Vec<Matrix>,
}

impl RightModule {
    /// Validates `R(1) = I` and `R(a_i a_j) = R_j R_i` on all basis pairs.
    pub fn new(algebra: Arc<InvAlgebra>, dim: usize, action: Vec<Matrix>) -> Result<RightModule> {
        let k = algebra.field().clone();
        let d = algebra.dim();
        if action.len() != d {
            return Err(Error::NotAModule(format!(
                "expected {d} action matrices, got {}",
                action.len()
            )));
        }
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::NotAModule(format!("action matrices must be {dim}x{dim}")));
        }
        let m = RightModule {
            algebra,
            dim,
            action,
        };
        if m.act(m.algebra.unit()) != Matrix::identity(&k, dim) {
            return Err(Error::NotAModule("unit does not act as the identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = m.act(&m.algebra.structure()[i][j]);
                let rhs = m.action[j].mul(&k, &m.action[i]);
                if lhs != rhs {
                    return Err(Error::NotAModule(format!(
                        "x·({0}{1}) ≠ (x·{0})·{1}",
                        m.algebra.basis_names()[i],
                        m.algebra.basis_names()[j]
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn zero(algebra: Arc<InvAlgebra>) -> RightModule {
        let k = algebra.field().clone();
        let action = vec![Matrix::zeros(&k, 0, 0); algebra.dim()];
        RightModule {
            algebra,
            dim: 0,
            action,
        }
    }

    /// `A` as a right module over itself.
    pub fn regular(algebra: Arc<InvAlgebra>) -> RightModule {
        let action = (0..algebra.dim())
            .map(|i| algebra.right_mult(&algebra.basis_elem(i)))
            .collect();
        let dim = algebra.dim();
        RightModule {
            algebra,
            dim,
            action,
        }
    }

    /// `A^r`.
    pub fn free(algebra: Arc<InvAlgebra>, rank: usize) -> RightModule {
        let reg = RightModule::regular(algebra.clone());
        (0..rank).fold(RightModule::zero(algebra), |acc, _| {
            acc.direct_sum(&reg).expect("same algebra")
        })
    }

    pub fn algebra(&self) -> &Arc<InvAlgebra> {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn same_algebra(&self, other: &RightModule) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra
    }

    /// Matrix of `x ↦ x·a`.
    pub fn act(&self, a: &[Elem]) -> Matrix {
        let k = self.field();
        let mut m = Matrix::zeros(k, self.dim, self.dim);
        for (c, r) in a.iter().zip(&self.action) {
            m.add_scaled(k, c, r);
        }
        m
    }

    pub fn direct_sum(&self, other: &RightModule) -> Result<RightModule> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        let k = self.field();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| Matrix::block_diag(k, a, b))
            .collect();
        Ok(RightModule {
            algebra: self.algebra.clone(),
            dim: self.dim + other.dim,
            action,
        })
    }

    /// `V ⊗_k L` over an already-extended algebra.
    pub fn extend(&self, algebra_l: Arc<InvAlgebra>) -> Result<RightModule> {
        let k = self.field();
        let l = algebra_l.field().clone();
        let action = self
            .action
            .iter()
            .map(|m| embed_matrix(k, &l, m))
            .collect::<Result<Vec<_>>>()?;
        RightModule::new(algebra_l, self.dim, action)
    }

    /// Whether `t` (target × source) intertwines the actions.
    pub fn is_hom_to(&self, target: &RightModule, t: &Matrix) -> bool {
        let k = self.field();
        t.rows() == target.dim
            && t.cols() == self.dim
            && self
                .action
                .iter()
                .zip(&target.action)
                .all(|(rs, rt)| t.mul(k, rs) == rt.mul(k, t))
    }

    /// Restriction to a submodule spanned by `basis` (columns), which must be
    /// stable under the action.
    pub fn submodule(&self, basis: &[Vector]) -> Result<RightModule> {
        let k = self.field();
        let span = Subspace::span(k, self.dim, basis);
        let b = span.basis().to_vec();
        let mut action = Vec::with_capacity(self.action.len());
        for r in &self.action {
            let cols = b
                .iter()
                .map(|v| {
                    span.coords(k, &r.apply(k, v))
                        .ok_or_else(|| Error::NotAModule("span is not a submodule".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            action.push(Matrix::from_columns(k, b.len(), &cols));
        }
        RightModule::new(self.algebra.clone(), b.len(), action)
    }
}

pub(crate) fn embed_matrix(k: &Field, l: &Field, m: &Matrix) -> Result<Matrix> {
    let mut out = Matrix::zeros(l, m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[(i, j)] = k.embed(l, &m[(i, j)])?;
        }
    }
    Ok(out)
}

/// A `k`-basis of `Hom_A(V, W)`.
///
/// Unknown matrices are vectorised column-reversed, and the nullspace basis
/// is listed with the last free variable first. As a result the first
/// `column_prefix[c]` coefficients alone determine columns `0..=c` of every
/// combination, which the isometry search exploits.
#[derive(Clone, Debug)]
pub struct HomSpace {
    rows: usize,
    cols: usize,
    block: VarBlock,
    space: Subspace,
    basis: Vec<Matrix>,
    column_prefix: Vec<usize>,
}

impl HomSpace {
    fn from_solution(k: &Field, block: VarBlock, space: Subspace) -> HomSpace {
        let d = space.dim();
        let basis = (0..d)
            .rev()
            .map(|t| block.extract(&space.basis()[t]))
            .collect();
        let col_of = |pos: usize| block.cols - 1 - (pos - block.offset) / block.rows;
        let cols_of_coeffs: Vec<usize> = (0..d).rev().map(|t| col_of(space.positions()[t])).collect();
        let column_prefix = (0..block.cols)
            .map(|c| cols_of_coeffs.iter().filter(|&&x| x <= c).count())
            .collect();
        let _ = k;
        HomSpace {
            rows: block.rows,
            cols: block.cols,
            block,
            space,
            basis,
            column_prefix,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Number of leading coefficients that determine columns `0..=c`.
    pub fn column_prefix(&self) -> &[usize] {
        &self.column_prefix
    }

    pub fn combine(&self, k: &Field, coeffs: &[Elem]) -> Matrix {
        assert_eq!(coeffs.len(), self.dim());
        let mut m = Matrix::zeros(k, self.rows, self.cols);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            m.add_scaled(k, c, b);
        }
        m
    }

    pub fn coords(&self, k: &Field, m: &Matrix) -> Option<Vector> {
        if m.rows() != self.rows || m.cols() != self.cols {
            return None;
        }
        let mut v = vec![k.zero(); self.block.len()];
        self.block.write(m, &mut v);
        let mut c = self.space.coords(k, &v)?;
        c.reverse();
        Some(c)
    }
}

pub fn hom_space(v: &RightModule, w: &RightModule) -> Result<HomSpace> {
    if !v.same_algebra(w) {
        return Err(Error::AlgebraMismatch);
    }
    let k = v.field();
    let mut block = VarBlock::new(0, w.dim, v.dim);
    block.reversed_columns = true;
    let mut sys = LinearSystem::new(k, block.len());
    if !block.is_empty() {
        for (rv, rw) in v.action.iter().zip(&w.action) {
            sys.matrix_equation(
                w.dim,
                v.dim,
                &[
                    Term {
                        var: block,
                        left: None,
                        right: Some(rv),
                        negate: false,
                    },
                    Term {
                        var: block,
                        left: Some(rw),
                        right: None,
                        negate: true,
                    },
                ],
            );
        }
    }
    Ok(HomSpace::from_solution(k, block, sys.solve()))
}

/// `V*` together with the functionals `V → A` its basis stands for.
#[derive(Clone, Debug)]
pub struct DualModule {
    module: RightModule,
    functionals: HomSpace,
}

impl DualModule {
    pub fn module(&self) -> &RightModule {
        &self.module
    }

    pub fn functionals(&self) -> &HomSpace {
        &self.functionals
    }

    pub fn dim(&self) -> usize {
        self.module.dim
    }

    /// The functional with coordinates `f`, as an `dim A × dim V` matrix.
    pub fn functional(&self, f: &[Elem]) -> Matrix {
        self.functionals.combine(self.module.field(), f)
    }

    /// Coordinates of a concrete `A`-linear functional.
    pub fn coords_of(&self, f: &Matrix) -> Option<Vector> {
        self.functionals.coords(self.module.field(), f)
    }

    /// `f(x)` for `f` in coordinates.
    pub fn eval(&self, f: &[Elem], x: &[Elem]) -> AlgElem {
        self.functional(f).apply(self.module.field(), x)
    }
}

pub fn dual_module(v: &RightModule) -> DualModule {
    let alg = v.algebra.clone();
    let k = alg.field().clone();
    let reg = RightModule::regular(alg.clone());
    let functionals = hom_space(v, &reg).expect("same algebra");
    let m = functionals.dim();
    let action = (0..alg.dim())
        .map(|i| {
            let twist = alg.left_mult(&alg.sigma(&alg.basis_elem(i)));
            let cols: Vec<Vector> = functionals
                .basis()
                .iter()
                .map(|f| {
                    functionals
                        .coords(&k, &twist.mul(&k, f))
                        .expect("σ(a)·f is A-linear")
                })
                .collect();
            Matrix::from_columns(&k, m, &cols)
        })
        .collect();
    let module = RightModule::new(alg, m, action).expect("dual action is a module action");
    DualModule {
        module,
        functionals,
    }
}

/// Matrix of `e_V : V → V**`, `e_V(x)(f) = σ(f(x))`, in the stored bases.
pub fn evaluation_map(v: &RightModule, vd: &DualModule, vdd: &DualModule) -> Matrix {
    let alg = &v.algebra;
    let k = v.field();
    let cols: Vec<Vector> = (0..v.dim)
        .map(|c| {
            let fcols: Vec<Vector> = vd
                .functionals
                .basis()
                .iter()
                .map(|f| alg.sigma(&f.col(c)))
                .collect();
            let g = Matrix::from_columns(k, alg.dim(), &fcols);
            vdd.coords_of(&g).expect("evaluation functional is A-linear")
        })
        .collect();
    Matrix::from_columns(k, vdd.dim(), &cols)
}

/// `e_V`, with `V*` and `V**` computed on the way.
pub fn double_dual_map(v: &RightModule) -> (DualModule, DualModule, Matrix) {
    let vd = dual_module(v);
    let vdd = dual_module(&vd.module);
    let e = evaluation_map(v, &vd, &vdd);
    (vd, vdd, e)
}

pub fn reflexive_check(v: &RightModule) -> bool {
    let (_, _, e) = double_dual_map(v);
    e.is_invertible(v.field())
}

/// `T* : W* → V*`, `T*(f) = f ∘ T`, for `T : V → W`.
pub fn dual_hom(t: &Matrix, vd: &DualModule, wd: &DualModule) -> Matrix {
    let k = vd.module.field();
    let cols: Vec<Vector> = wd
        .functionals
        .basis()
        .iter()
        .map(|f| vd.coords_of(&f.mul(k, t)).expect("f∘T is A-linear"))
        .collect();
    Matrix::from_columns(k, vd.dim(), &cols)
}
