//! Finite-dimensional algebras with involution, presented by structure
//! constants over a base field that the involution fixes pointwise.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{vec_add, vec_scale, vec_sub, LinearSystem, Matrix, Subspace, Vector};

/// Coordinates of an algebra element in the algebra's basis.
pub type AlgElem = Vector;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    unit: usize,
    inverse: Vec<usize>,
}

impl Group {
    pub fn new(elements: Vec<String>, table: Vec<Vec<usize>>, unit: usize) -> Result<Group> {
        let n = elements.len();
        let bad = |m: &str| Err(Error::NotAGroup(m.to_string()));
        if n == 0 {
            return bad("empty group");
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return bad("table shape does not match element list");
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return bad("table entry out of range");
        }
        if unit >= n {
            return bad("unit index out of range");
        }
        for g in 0..n {
            if table[unit][g] != g || table[g][unit] != g {
                return bad("unit is not neutral");
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| table[g][h] == unit && table[h][g] == unit) {
                Some(h) => inverse[g] = h,
                None => return bad(&format!("{} has no inverse", elements[g])),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad("table is not associative");
                    }
                }
            }
        }
        Ok(Group {
            elements,
            table,
            unit,
            inverse,
        })
    }

    /// Cyclic group of order `n` with elements `e, g, g^2, ...`.
    pub fn cyclic(n: usize) -> Group {
        let elements = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{i}"),
            })
            .collect();
        let table = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        Group::new(elements, table, 0).expect("cyclic group table")
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

/// `(A, σ)` over `k`: `a_i a_j = Σ_m structure[i][j][m] a_m` and
/// `σ(a_i) = Σ_m involution[m][i] a_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvAlgebra {
    field: Field,
    basis: Vec<String>,
    structure: Vec<Vec<AlgElem>>,
    unit: AlgElem,
    involution: Matrix,
    group: Option<Group>,
}

impl InvAlgebra {
    /// Validates every axiom exactly on basis elements.
    pub fn new(
        field: Field,
        basis: Vec<String>,
        structure: Vec<Vec<AlgElem>>,
        unit: AlgElem,
        involution: Matrix,
    ) -> Result<InvAlgebra> {
        let a = InvAlgebra::from_parts(field, basis, structure, unit, involution)?;
        a.check_axioms()?;
        Ok(a)
    }

    /// Shape checks only; the axioms are the caller's responsibility.
    pub(crate) fn from_parts(
        field: Field,
        basis: Vec<String>,
        structure: Vec<Vec<AlgElem>>,
        unit: AlgElem,
        involution: Matrix,
    ) -> Result<InvAlgebra> {
        let d = basis.len();
        let shape_ok = d > 0
            && structure.len() == d
            && structure
                .iter()
                .all(|r| r.len() == d && r.iter().all(|c| c.len() == d))
            && unit.len() == d
            && involution.rows() == d
            && involution.cols() == d;
        if !shape_ok {
            return Err(Error::BadDimension(format!(
                "inconsistent algebra data for {d} basis elements"
            )));
        }
        Ok(InvAlgebra {
            field,
            basis,
            structure,
            unit,
            involution,
            group: None,
        })
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.dim();
        let k = &self.field;
        for i in 0..d {
            let b = self.basis_elem(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::BadUnit);
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = &self.structure[i][j];
                for l in 0..d {
                    let left = self.mul(ij, &self.basis_elem(l));
                    let right = self.mul(&self.basis_elem(i), &self.structure[j][l]);
                    if left != right {
                        return Err(Error::NotAssociative(i, j, l));
                    }
                }
            }
        }
        if self.involution.mul(k, &self.involution) != Matrix::identity(k, d) {
            return Err(Error::NotInvolution("σ² is not the identity".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.sigma(&self.structure[i][j]);
                let rhs = self.mul(&self.sigma(&self.basis_elem(j)), &self.sigma(&self.basis_elem(i)));
                if lhs != rhs {
                    return Err(Error::NotInvolution(format!(
                        "σ({0}{1}) ≠ σ({1})σ({0})",
                        self.basis[i], self.basis[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The base field as a one-dimensional algebra with trivial involution.
    pub fn base_field(k: &Field) -> InvAlgebra {
        InvAlgebra::new(
            k.clone(),
            vec!["1".into()],
            vec![vec![vec![k.one()]]],
            vec![k.one()],
            Matrix::identity(k, 1),
        )
        .expect("base field algebra")
    }

    /// `k[G]` with the canonical involution `g ↦ g⁻¹`.
    pub fn group_ring(k: &Field, group: &Group) -> Result<InvAlgebra> {
        let n = group.order();
        let e = |i: usize| {
            let mut v = vec![k.zero(); n];
            v[i] = k.one();
            v
        };
        let structure = (0..n)
            .map(|i| (0..n).map(|j| e(group.mul(i, j))).collect())
            .collect();
        let mut inv = Matrix::zeros(k, n, n);
        for g in 0..n {
            inv[(group.inverse(g), g)] = k.one();
        }
        let mut a = InvAlgebra::new(
            k.clone(),
            group.elements().to_vec(),
            structure,
            e(group.unit()),
            inv,
        )?;
        a.group = Some(group.clone());
        Ok(a)
    }

    /// `M_n(k)` with the transpose involution; basis `E_ij` at index `i*n+j`.
    pub fn matrix_algebra(k: &Field, n: usize) -> Result<InvAlgebra> {
        if n == 0 {
            return Err(Error::BadDimension("matrix size must be at least 1".into()));
        }
        let d = n * n;
        let e = |i: usize| {
            let mut v = vec![k.zero(); d];
            v[i] = k.one();
            v
        };
        let mut structure = vec![vec![vec![k.zero(); d]; d]; d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    structure[i * n + j][j * n + l] = e(i * n + l);
                }
            }
        }
        let mut unit = vec![k.zero(); d];
        let mut inv = Matrix::zeros(k, d, d);
        for i in 0..n {
            unit[i * n + i] = k.one();
            for j in 0..n {
                inv[(j * n + i, i * n + j)] = k.one();
            }
        }
        let names = (0..n)
            .flat_map(|i| (0..n).map(move |j| format!("E{}{}", i + 1, j + 1)))
            .collect();
        InvAlgebra::new(k.clone(), names, structure, unit, inv)
    }

    /// Attaches group data after checking that the algebra really is `k[G]`
    /// with its canonical involution.
    pub fn with_group(self, group: Group) -> Result<InvAlgebra> {
        let expected = InvAlgebra::group_ring(&self.field, &group)?;
        if expected.structure != self.structure
            || expected.unit != self.unit
            || expected.involution != self.involution
        {
            return Err(Error::NotAGroupRing);
        }
        Ok(expected.with_names(self.basis))
    }

    fn with_names(mut self, names: Vec<String>) -> InvAlgebra {
        self.basis = names;
        self
    }

    /// `A_L = A ⊗_k L`, `σ_L = σ ⊗ id`.
    pub fn extend(&self, l: &Field) -> Result<InvAlgebra> {
        let k = &self.field;
        let emb = |x: &Elem| k.embed(l, x);
        let emb_vec = |v: &AlgElem| v.iter().map(emb).collect::<Result<Vec<_>>>();
        let structure = self
            .structure
            .iter()
            .map(|r| r.iter().map(emb_vec).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = emb_vec(&self.unit)?;
        let d = self.dim();
        let mut inv = Matrix::zeros(l, d, d);
        for i in 0..d {
            for j in 0..d {
                inv[(i, j)] = emb(&self.involution[(i, j)])?;
            }
        }
        let mut a = InvAlgebra::from_parts(l.clone(), self.basis.clone(), structure, unit, inv)?;
        a.group = self.group.clone();
        Ok(a)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn structure(&self) -> &[Vec<AlgElem>] {
        &self.structure
    }

    pub fn unit(&self) -> &AlgElem {
        &self.unit
    }

    pub fn involution(&self) -> &Matrix {
        &self.involution
    }

    pub fn group(&self) -> Option<&Group> {
        self.group.as_ref()
    }

    pub fn zero(&self) -> AlgElem {
        vec![self.field.zero(); self.dim()]
    }

    pub fn one(&self) -> AlgElem {
        self.unit.clone()
    }

    pub fn basis_elem(&self, i: usize) -> AlgElem {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn scalar(&self, c: &Elem) -> AlgElem {
        vec_scale(&self.field, c, &self.unit)
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> AlgElem {
        vec_add(&self.field, a, b)
    }

    pub fn sub(&self, a: &[Elem], b: &[Elem]) -> AlgElem {
        vec_sub(&self.field, a, b)
    }

    pub fn scale(&self, c: &Elem, a: &[Elem]) -> AlgElem {
        vec_scale(&self.field, c, a)
    }

    pub fn is_zero(&self, a: &[Elem]) -> bool {
        a.iter().all(|x| self.field.is_zero(x))
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> AlgElem {
        let k = &self.field;
        let d = self.dim();
        let mut out = self.zero();
        for i in 0..d {
            if k.is_zero(&a[i]) {
                continue;
            }
            for j in 0..d {
                if k.is_zero(&b[j]) {
                    continue;
                }
                let c = k.mul(&a[i], &b[j]);
                for (o, s) in out.iter_mut().zip(&self.structure[i][j]) {
                    if !k.is_zero(s) {
                        *o = k.add(o, &k.mul(&c, s));
                    }
                }
            }
        }
        out
    }

    pub fn sigma(&self, a: &[Elem]) -> AlgElem {
        self.involution.apply(&self.field, a)
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mult(&self, a: &[Elem]) -> Matrix {
        let cols: Vec<_> = (0..self.dim())
            .map(|j| self.mul(a, &self.basis_elem(j)))
            .collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    /// Matrix of `x ↦ x·a`.
    pub fn right_mult(&self, a: &[Elem]) -> Matrix {
        let cols: Vec<_> = (0..self.dim())
            .map(|j| self.mul(&self.basis_elem(j), a))
            .collect();
        Matrix::from_columns(&self.field, self.dim(), &cols)
    }

    /// One-sided invertibility suffices in a finite-dimensional algebra.
    pub fn is_invertible(&self, a: &[Elem]) -> bool {
        self.left_mult(a).is_invertible(&self.field)
    }

    pub fn inverse(&self, a: &[Elem]) -> Option<AlgElem> {
        let inv = self.left_mult(a).inverse(&self.field)?;
        Some(inv.apply(&self.field, &self.unit))
    }

    /// Basis of the center.
    pub fn center(&self) -> Subspace {
        let d = self.dim();
        let k = &self.field;
        let mut sys = LinearSystem::new(k, d);
        // z a_j - a_j z = 0, linear in the coordinates of z
        for j in 0..d {
            for m in 0..d {
                let row = (0..d)
                    .map(|i| k.sub(&self.structure[i][j][m], &self.structure[j][i][m]))
                    .collect();
                sys.push(row);
            }
        }
        sys.solve()
    }
}
