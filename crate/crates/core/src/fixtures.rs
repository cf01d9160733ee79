//! Small algebras, modules and forms used by the suites, the CLI gallery and
//! the benchmarks.

use std::sync::Arc;

use crate::algebra::{Group, InvAlgebra};
use crate::error::Result;
use crate::field::Field;
use crate::form::{SesqForm, SesqSystem};
use crate::linalg::Matrix;
use crate::module::RightModule;

pub fn base_algebra(k: &Field) -> Arc<InvAlgebra> {
    Arc::new(InvAlgebra::base_field(k))
}

pub fn cyclic_group_ring(k: &Field, n: usize) -> Arc<InvAlgebra> {
    Arc::new(InvAlgebra::group_ring(k, &Group::cyclic(n)).expect("cyclic group ring"))
}

/// Module over `k[C_n]` on which the generator acts by `gen` (basis element
/// `g^i` acts by `gen^i`).
pub fn cyclic_module(alg: &Arc<InvAlgebra>, gen: &Matrix) -> Result<RightModule> {
    let k = alg.field();
    let mut action = Vec::with_capacity(alg.dim());
    let mut p = Matrix::identity(k, gen.rows());
    for _ in 0..alg.dim() {
        action.push(p.clone());
        p = p.mul(k, gen);
    }
    RightModule::new(alg.clone(), gen.rows(), action)
}

/// Row vectors `k^n` as a right module over `M_n(k)`: `x·a = xa`.
pub fn matrix_row_module(alg: &Arc<InvAlgebra>, n: usize) -> Result<RightModule> {
    let k = alg.field();
    let action = (0..n * n)
        .map(|idx| {
            let (i, j) = (idx / n, idx % n);
            let mut m = Matrix::zeros(k, n, n);
            m[(j, i)] = k.one();
            m
        })
        .collect();
    RightModule::new(alg.clone(), n, action)
}

fn ints(k: &Field, rows: &[&[i64]]) -> Matrix {
    Matrix::from_ints(k, rows)
}

/// One- and two-dimensional modules over `k`, `k[C_2]` and `k[C_3]`.
pub fn small_module_library(k: &Field) -> Vec<(Arc<InvAlgebra>, Vec<RightModule>)> {
    let mut out = Vec::new();
    let base = base_algebra(k);
    out.push((base.clone(), vec![RightModule::free(base.clone(), 1), RightModule::free(base, 2)]));

    let c2 = cyclic_group_ring(k, 2);
    let mut mods = Vec::new();
    let triv = cyclic_module(&c2, &ints(k, &[&[1]])).expect("trivial");
    mods.push(triv.clone());
    if k.characteristic() != 2 {
        let sign = cyclic_module(&c2, &ints(k, &[&[-1]])).expect("sign");
        mods.push(sign.clone());
        mods.push(triv.direct_sum(&sign).expect("same algebra"));
        mods.push(sign.direct_sum(&sign).expect("same algebra"));
    }
    mods.push(RightModule::regular(c2.clone()));
    mods.push(triv.direct_sum(&triv).expect("same algebra"));
    out.push((c2, mods));

    let c3 = cyclic_group_ring(k, 3);
    let mut mods = Vec::new();
    let roots: Vec<_> = k.elements().filter(|w| !k.is_zero(w) && k.is_one(&k.pow(w, 3))).collect();
    let ones: Vec<RightModule> = roots
        .iter()
        .map(|w| cyclic_module(&c3, &Matrix::scalar(k, 1, w)).expect("character"))
        .collect();
    mods.extend(ones.iter().cloned());
    if let Some(t) = ones.first() {
        mods.push(t.direct_sum(t).expect("same algebra"));
    }
    if k.characteristic() == 3 {
        mods.push(cyclic_module(&c3, &ints(k, &[&[1, 1], &[0, 1]])).expect("Jordan block"));
    } else if roots.len() == 1 {
        mods.push(cyclic_module(&c3, &ints(k, &[&[0, -1], &[1, -1]])).expect("companion of x²+x+1"));
    } else if ones.len() > 1 {
        mods.push(ones[0].direct_sum(&ones[1]).expect("same algebra"));
    }
    out.push((c3, mods));
    out
}

/// Modules of dimension at most 4 over `F_3`, `F_5`, `F_3[C_2]`, `F_2[C_3]`
/// and `M_2(F_3)`.
pub fn round_trip_library() -> Vec<RightModule> {
    let f2 = Field::prime(2).unwrap();
    let f3 = Field::prime(3).unwrap();
    let f5 = Field::prime(5).unwrap();
    let mut out = Vec::new();
    for k in [&f3, &f5] {
        let a = base_algebra(k);
        for n in 1..=4 {
            out.push(RightModule::free(a.clone(), n));
        }
    }
    let c2 = cyclic_group_ring(&f3, 2);
    let triv = cyclic_module(&c2, &ints(&f3, &[&[1]])).unwrap();
    let sign = cyclic_module(&c2, &ints(&f3, &[&[-1]])).unwrap();
    let reg = RightModule::regular(c2.clone());
    out.push(triv.clone());
    out.push(sign.clone());
    out.push(reg.clone());
    out.push(triv.direct_sum(&sign).unwrap().direct_sum(&triv).unwrap());
    out.push(reg.direct_sum(&reg).unwrap());

    let c3 = cyclic_group_ring(&f2, 3);
    let t3 = cyclic_module(&c3, &ints(&f2, &[&[1]])).unwrap();
    let comp = cyclic_module(&c3, &ints(&f2, &[&[0, 1], &[1, 1]])).unwrap();
    out.push(t3.clone());
    out.push(comp.clone());
    out.push(RightModule::regular(c3.clone()));
    out.push(comp.direct_sum(&comp).unwrap());
    out.push(t3.direct_sum(&comp).unwrap());

    let m2 = Arc::new(InvAlgebra::matrix_algebra(&f3, 2).unwrap());
    let row = matrix_row_module(&m2, 2).unwrap();
    out.push(row.clone());
    out.push(row.direct_sum(&row).unwrap());
    out
}

/// `A = k`, Gram matrix given by integer rows.
pub fn gram_form(k: &Field, rows: &[&[i64]]) -> SesqForm {
    let m = RightModule::free(base_algebra(k), rows.len());
    let gram = rows
        .iter()
        .map(|r| r.iter().map(|&x| vec![k.from_i64(x)]).collect())
        .collect();
    SesqForm::new(m, gram).expect("every Gram matrix is sesquilinear over k")
}

/// `⟨c⟩` over `k`.
pub fn scalar_form(k: &Field, c: i64) -> SesqForm {
    gram_form(k, &[&[c]])
}

pub fn system(s: &SesqForm) -> SesqSystem {
    s.clone().into()
}
