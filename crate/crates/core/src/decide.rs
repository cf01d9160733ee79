//! Isometry deciders and the empirical suites built on them.
//!
//! The exhaustive decider walks `Hom_A(V, V')` column by column: the hom
//! space basis is ordered so that a prefix of the coefficients fixes the
//! first columns of `Φ`, which lets every Gram entry be checked as soon as
//! both of its columns are known. Visiting order is the canonical
//! lexicographic order on coefficient vectors, so the first witness found is
//! the one a plain sweep would find.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::InvAlgebra;
use crate::darrow::{da_isomorphic, q_of_form, DAMorphism, Search};
use crate::endoring::{congruence_decide, endo_of_form, transfer_along};
use crate::enumerate::{checked_size, Odometer};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::form::{is_isometry, random_elem, FormSpace, GBilinearForm, SesqForm, SesqSystem};
use crate::linalg::{dot, Matrix, Subspace, Vector};
use crate::module::{hom_space, HomSpace, RightModule};

pub const DEFAULT_CAP: u64 = 1_000_000;

/// Random combinations tried over infinite fields before giving up.
pub const RANDOM_TRIALS: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Isometric(Matrix),
    NotIsometric,
    Undecided,
}

impl Verdict {
    pub fn is_isometric(&self) -> bool {
        matches!(self, Verdict::Isometric(_))
    }

    pub fn witness(&self) -> Option<&Matrix> {
        match self {
            Verdict::Isometric(m) => Some(m),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Isometric(_) => "found",
            Verdict::NotIsometric => "none",
            Verdict::Undecided => "undecided",
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Isometric(_) => "isometric",
            Verdict::NotIsometric => "not_isometric",
            Verdict::Undecided => "undecided",
        }
    }

    /// `Some(true/false)` when decided.
    pub fn decided(&self) -> Option<bool> {
        match self {
            Verdict::Isometric(_) => Some(true),
            Verdict::NotIsometric => Some(false),
            Verdict::Undecided => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Bruteforce,
    Transfer,
    Random,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Bruteforce => "bruteforce",
            Method::Transfer => "transfer",
            Method::Random => "random",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecisionReport {
    pub verdict: Verdict,
    pub method: Method,
    /// Candidates examined by the search.
    pub search_size: u64,
    pub elapsed: Duration,
}

impl DecisionReport {
    fn new(verdict: Verdict, method: Method, search_size: u64, start: Instant) -> DecisionReport {
        DecisionReport {
            verdict,
            method,
            search_size,
            elapsed: start.elapsed(),
        }
    }
}

/// Depth-first search for an invertible `Φ ∈ Hom_A(V, V')` whose columns
/// satisfy `check(columns, c)` each time column `c` is fixed.
struct FrameSearch<'a> {
    k: &'a Field,
    hom: &'a HomSpace,
    /// `basis_cols[t][c]`: column `c` of the `t`-th hom basis element.
    basis_cols: Vec<Vec<Vector>>,
    cap: u64,
    visited: u64,
}

impl<'a> FrameSearch<'a> {
    fn new(k: &'a Field, hom: &'a HomSpace, cap: u64) -> FrameSearch<'a> {
        let (_, cols) = hom.shape();
        let basis_cols = hom
            .basis()
            .iter()
            .map(|b| (0..cols).map(|c| b.col(c)).collect())
            .collect();
        FrameSearch {
            k,
            hom,
            basis_cols,
            cap,
            visited: 0,
        }
    }

    fn run<F>(&mut self, check: &F) -> Result<Option<Matrix>>
    where
        F: Fn(&[Vector], usize) -> bool,
    {
        let (rows, cols) = self.hom.shape();
        if rows != cols {
            return Ok(None);
        }
        let mut coeffs = vec![self.k.zero(); self.hom.dim()];
        let mut frame: Vec<Vector> = Vec::with_capacity(cols);
        if self.descend(0, &mut coeffs, &mut frame, check)? {
            Ok(Some(self.hom.combine(self.k, &coeffs)))
        } else {
            Ok(None)
        }
    }

    fn descend<F>(&mut self, c: usize, coeffs: &mut [Elem], frame: &mut Vec<Vector>, check: &F) -> Result<bool>
    where
        F: Fn(&[Vector], usize) -> bool,
    {
        let (rows, cols) = self.hom.shape();
        if c == cols {
            return Ok(true);
        }
        let prefix = self.hom.column_prefix();
        let lo = if c == 0 { 0 } else { prefix[c - 1] };
        let hi = prefix[c];
        for block in Odometer::new(self.k, hi - lo) {
            self.visited += 1;
            if self.visited > self.cap {
                return Err(Error::too_large(format!("more than {} search nodes", self.cap), self.cap));
            }
            coeffs[lo..hi].clone_from_slice(&block);
            let mut col = vec![self.k.zero(); rows];
            for t in 0..hi {
                let a = &coeffs[t];
                if self.k.is_zero(a) {
                    continue;
                }
                for (x, y) in col.iter_mut().zip(&self.basis_cols[t][c]) {
                    if !self.k.is_zero(y) {
                        *x = self.k.add(x, &self.k.mul(a, y));
                    }
                }
            }
            frame.push(col);
            let ok = check(frame, c) && Subspace::span(self.k, rows, frame).dim() == c + 1;
            if ok && self.descend(c + 1, coeffs, frame, check)? {
                return Ok(true);
            }
            frame.pop();
        }
        for x in coeffs[lo..hi].iter_mut() {
            *x = self.k.zero();
        }
        Ok(false)
    }
}

fn same_shape(s: &SesqSystem, t: &SesqSystem) -> Result<bool> {
    if !s.module().same_algebra(t.module()) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(s.module().dim() == t.module().dim() && s.len() == t.len())
}

/// Ranks of `s_ℓ + c·s_r` for every `c ∈ k` and every member; preserved by
/// isometries since both adjoints transform as `Φ* (·) Φ`.
fn rank_profile(s: &SesqSystem) -> Vec<usize> {
    let k = s.module().field();
    let scalars: Vec<Elem> = match k.order() {
        Some(q) if q <= 64 => k.elements().collect(),
        _ => vec![k.zero(), k.one(), k.from_i64(-1)],
    };
    let mut out = Vec::new();
    for f in s.forms() {
        let adj = f.adjoints();
        for c in &scalars {
            out.push(adj.left.add(k, &adj.right.scale(k, c)).rank(k));
        }
    }
    out
}

fn frame_check<'a>(s: &'a SesqSystem, t: &'a SesqSystem) -> impl Fn(&[Vector], usize) -> bool + 'a {
    move |frame: &[Vector], c: usize| {
        let x = &frame[c];
        s.forms().iter().zip(t.forms()).all(|(sf, tf)| {
            (0..=c).all(|i| {
                tf.eval(&frame[i], x) == sf.gram()[i][c] && (i == c || tf.eval(x, &frame[i]) == sf.gram()[c][i])
            })
        })
    }
}

fn verify_witness(s: &SesqSystem, t: &SesqSystem, phi: &Matrix) -> bool {
    s.forms().iter().zip(t.forms()).all(|(a, b)| is_isometry(a, b, phi))
}

/// Exhaustive (pruned) search for `Φ : V → V'` with `s'(Φx, Φy) = s(x, y)`
/// for every member. Over infinite fields only a seeded random search runs,
/// and a miss is reported as undecided.
pub fn isometry_bruteforce(s: &SesqSystem, t: &SesqSystem, cap: u64) -> Result<DecisionReport> {
    let start = Instant::now();
    if !same_shape(s, t)? {
        return Ok(DecisionReport::new(Verdict::NotIsometric, Method::Bruteforce, 0, start));
    }
    let k = s.module().field();
    let hom = hom_space(s.module(), t.module())?;
    if !k.is_finite() {
        return Ok(random_search(s, t, &hom, RANDOM_TRIALS, start));
    }
    if rank_profile(s) != rank_profile(t) {
        return Ok(DecisionReport::new(Verdict::NotIsometric, Method::Bruteforce, 0, start));
    }
    let mut search = FrameSearch::new(k, &hom, cap);
    let found = search.run(&frame_check(s, t))?;
    let verdict = match found {
        Some(phi) => {
            assert!(verify_witness(s, t, &phi), "search produced an invalid witness");
            Verdict::Isometric(phi)
        }
        None => Verdict::NotIsometric,
    };
    Ok(DecisionReport::new(verdict, Method::Bruteforce, search.visited, start))
}

fn random_search(s: &SesqSystem, t: &SesqSystem, hom: &HomSpace, trials: usize, start: Instant) -> DecisionReport {
    let k = s.module().field();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for i in 0..trials {
        let c: Vec<Elem> = (0..hom.dim()).map(|_| random_elem(k, &mut rng)).collect();
        let phi = hom.combine(k, &c);
        if verify_witness(s, t, &phi) {
            return DecisionReport::new(Verdict::Isometric(phi), Method::Random, i as u64 + 1, start);
        }
    }
    DecisionReport::new(Verdict::Undecided, Method::Random, trials as u64, start)
}

/// Decides isometry through the hermitian category: with `Q₀ = q(s)`, an
/// isometry exists iff `q(s') ≅ Q₀` and the transferred classes of `s` and
/// `s'` are congruent in `(End(Q₀), ~)`.
pub fn isometry_transfer(s: &SesqSystem, t: &SesqSystem, cap: u64) -> Result<DecisionReport> {
    let start = Instant::now();
    if !same_shape(s, t)? {
        return Ok(DecisionReport::new(Verdict::NotIsometric, Method::Transfer, 0, start));
    }
    let k = s.module().field().clone();
    if !k.is_finite() {
        return Ok(DecisionReport::new(Verdict::Undecided, Method::Transfer, 0, start));
    }
    let q0 = q_of_form(s)?;
    let qt = q_of_form(t)?;
    let iso = match da_isomorphic(&qt.object, &q0.object, cap, 0, 0)? {
        Search::Found(iso) => iso,
        _ => return Ok(DecisionReport::new(Verdict::NotIsometric, Method::Transfer, 0, start)),
    };
    let e = endo_of_form(&q0)?;
    let alg = e.to_algebra()?;
    let size = checked_size(&k, alg.dim(), cap)?;
    let id = DAMorphism::identity(&q0.object);
    let f = transfer_along(q0.clone(), &q0, &e, id.clone())?.class;
    let f2 = transfer_along(qt, &q0, &e, iso.clone())?.class;
    let verdict = match congruence_decide(&alg, &f, &f2, cap)? {
        None => Verdict::NotIsometric,
        Some(g) => {
            // ~g f g = f', so g∘iso : q(t) → Q₀ pulls η₀f back to η_t and
            // its first component inverts to an isometry V → V'.
            let gm = e.element(&g);
            let lambda = gm.compose(&k, &iso);
            let inv = lambda.phi.inverse(&k).ok_or(Error::NotInvertible)?;
            if !verify_witness(s, t, &inv) {
                return Err(Error::NotAnIsometry);
            }
            Verdict::Isometric(inv)
        }
    };
    Ok(DecisionReport::new(verdict, Method::Transfer, size, start))
}

/// Isometry of `G`-invariant bilinear forms: a `G`-equivariant invertible
/// `Φ` with `Φᵀ B' Φ = B`.
pub fn gbilinear_isometric(b: &GBilinearForm, b2: &GBilinearForm, cap: u64) -> Result<DecisionReport> {
    let start = Instant::now();
    if !b.module().same_algebra(b2.module()) {
        return Err(Error::AlgebraMismatch);
    }
    if b.module().dim() != b2.module().dim() {
        return Ok(DecisionReport::new(Verdict::NotIsometric, Method::Bruteforce, 0, start));
    }
    let k = b.module().field();
    if !k.is_finite() {
        return Ok(DecisionReport::new(Verdict::Undecided, Method::Bruteforce, 0, start));
    }
    let hom = hom_space(b.module(), b2.module())?;
    let gram = b.gram_k();
    let gram2 = b2.gram_k();
    let check = |frame: &[Vector], c: usize| {
        let x = &frame[c];
        let bx = gram2.apply(k, x);
        let xb = gram2.transpose().apply(k, x);
        (0..=c).all(|i| dot(k, &frame[i], &bx) == gram[(i, c)] && dot(k, &frame[i], &xb) == gram[(c, i)])
    };
    let mut search = FrameSearch::new(k, &hom, cap);
    let verdict = match search.run(&check)? {
        Some(phi) => {
            assert!(b.is_isometry(b2, &phi));
            Verdict::Isometric(phi)
        }
        None => Verdict::NotIsometric,
    };
    Ok(DecisionReport::new(verdict, Method::Bruteforce, search.visited, start))
}

/// Deterministic per-trial generator: stream `index` of the master seed.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Random invertible module endomorphism, by rejection sampling on `End(V)`.
pub fn random_automorphism<R: Rng>(m: &RightModule, rng: &mut R) -> Matrix {
    let k = m.field();
    let hom = hom_space(m, m).expect("same module");
    loop {
        let c: Vec<Elem> = (0..hom.dim()).map(|_| random_elem(k, rng)).collect();
        let phi = hom.combine(k, &c);
        if phi.is_invertible(k) {
            return phi;
        }
    }
}

/// One Witt trial whose conclusion failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittCounterexample {
    pub trial: u64,
    pub s: SesqForm,
    pub s1: SesqForm,
    pub s2: SesqForm,
}

#[derive(Clone, Debug)]
pub struct WittReport {
    pub field: String,
    pub seed: u64,
    pub trials: u64,
    pub planted: u64,
    pub sums_isometric: u64,
    pub bases_isometric: u64,
    pub undecided: u64,
    pub violations: u64,
    pub counterexamples: Vec<WittCounterexample>,
    pub elapsed: Duration,
}

enum TrialOutcome {
    Decided {
        planted: bool,
        sums: bool,
        bases: bool,
    },
    Undecided,
}

/// Seeded trials of `s₁ ⊕ s ≃ s₂ ⊕ s ⟹ s₁ ≃ s₂` over small algebras and
/// modules from `library`. Half the trials plant `s₂` as a transport of
/// `s₁`; the rest draw `s₂` independently on the module of `s₁`.
pub fn witt_cancellation_check(
    library: &[(std::sync::Arc<InvAlgebra>, Vec<RightModule>)],
    trials: u64,
    seed: u64,
    cap: u64,
) -> Result<WittReport> {
    let start = Instant::now();
    let k = library
        .first()
        .map(|(a, _)| a.field().clone())
        .ok_or_else(|| Error::BadDimension("empty fixture library".into()))?;
    if k.characteristic() == 2 {
        return Err(Error::CharacteristicTwo);
    }
    if !k.is_finite() {
        return Err(Error::InfiniteField);
    }
    let outcomes: Vec<(TrialOutcome, (SesqForm, SesqForm, SesqForm))> = (0..trials)
        .into_par_iter()
        .map(|i| witt_trial(library, seed, i, cap))
        .collect::<Result<Vec<_>>>()?;
    let mut report = WittReport {
        field: k.name(),
        seed,
        trials,
        planted: 0,
        sums_isometric: 0,
        bases_isometric: 0,
        undecided: 0,
        violations: 0,
        counterexamples: Vec::new(),
        elapsed: Duration::ZERO,
    };
    for (i, (outcome, (s, s1, s2))) in outcomes.into_iter().enumerate() {
        match outcome {
            TrialOutcome::Undecided => report.undecided += 1,
            TrialOutcome::Decided { planted, sums, bases } => {
                report.planted += planted as u64;
                report.sums_isometric += sums as u64;
                report.bases_isometric += bases as u64;
                if sums && !bases {
                    report.violations += 1;
                    report.counterexamples.push(WittCounterexample {
                        trial: i as u64,
                        s,
                        s1,
                        s2,
                    });
                }
            }
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

type TrialResult = (TrialOutcome, (SesqForm, SesqForm, SesqForm));

fn witt_trial(
    library: &[(std::sync::Arc<InvAlgebra>, Vec<RightModule>)],
    seed: u64,
    index: u64,
    cap: u64,
) -> Result<TrialResult> {
    let mut rng = trial_rng(seed, index);
    let (_, modules) = &library[rng.random_range(0..library.len())];
    let m = &modules[rng.random_range(0..modules.len())];
    let m1 = &modules[rng.random_range(0..modules.len())];
    let s = crate::form::random_form_with(m, &FormSpace::new(m), &mut rng, false, 1)?;
    let space1 = FormSpace::new(m1);
    let s1 = crate::form::random_form_with(m1, &space1, &mut rng, false, 1)?;
    let planted = rng.random_bool(0.5);
    let s2 = if planted {
        let phi = random_automorphism(m1, &mut rng);
        s1.transport(&phi, m1)?
    } else {
        crate::form::random_form_with(m1, &space1, &mut rng, false, 1)?
    };
    let sum1: SesqSystem = s1.orth_sum(&s)?.into();
    let sum2: SesqSystem = s2.orth_sum(&s)?.into();
    let decide = |a: &SesqSystem, b: &SesqSystem| -> Result<Option<bool>> {
        match isometry_bruteforce(a, b, cap) {
            Ok(r) => Ok(r.verdict.decided()),
            Err(Error::EnumTooLarge { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let sums = decide(&sum1, &sum2)?;
    let bases = decide(&s1.clone().into(), &s2.clone().into())?;
    let outcome = match (sums, bases) {
        (Some(sums), Some(bases)) => TrialOutcome::Decided {
            planted,
            sums,
            bases,
        },
        _ => TrialOutcome::Undecided,
    };
    Ok((outcome, (s, s1, s2)))
}

#[derive(Clone, Debug)]
pub struct SpringerReport {
    pub base_field: String,
    pub extension_field: String,
    pub degree: usize,
    pub base: Verdict,
    pub extension: Verdict,
    /// Odd degree, isometric over the extension, yet not over the base.
    pub violation: bool,
    pub elapsed: Duration,
}

/// Decides isometry over `F_q` and over its degree-`d` extension.
pub fn springer_check(s: &SesqSystem, t: &SesqSystem, d: usize, cap: u64) -> Result<SpringerReport> {
    let start = Instant::now();
    let alg = s.module().algebra();
    let k = alg.field();
    if !k.is_finite() {
        return Err(Error::InfiniteField);
    }
    let l = Field::extension_of_degree(k.characteristic(), k.degree() * d)?;
    if !k.can_embed_into(&l) {
        return Err(Error::NoEmbedding(k.name(), l.name()));
    }
    let alg_l = std::sync::Arc::new(alg.extend(&l)?);
    let s_l = s.extend(alg_l.clone())?;
    let t_l = t.extend(alg_l)?;
    let base = isometry_bruteforce(s, t, cap)?.verdict;
    let extension = isometry_bruteforce(&s_l, &t_l, cap)?.verdict;
    let violation = d % 2 == 1 && extension.is_isometric() && base == Verdict::NotIsometric;
    Ok(SpringerReport {
        base_field: k.name(),
        extension_field: l.name(),
        degree: d,
        base,
        extension,
        violation,
        elapsed: start.elapsed(),
    })
}

/// Isometry classes of orthogonal summands `(eV, s|eV)` for idempotents
/// `e ∈ End_A(V)` with `s(eV, (1−e)V) = 0 = s((1−e)V, eV)`, ordered by
/// dimension and then by first appearance.
pub fn summand_enumerate(s: &SesqForm, cap: u64) -> Result<Vec<SesqForm>> {
    let v = s.module();
    let k = v.field();
    let n = v.dim();
    let hom = hom_space(v, v)?;
    let size = checked_size(k, hom.dim(), cap)?;
    let id = Matrix::identity(k, n);
    let zero = s.algebra().zero();
    let summands: Vec<Matrix> = (0..size as u128)
        .into_par_iter()
        .filter_map(|i| {
            let c = crate::enumerate::vector_at(k, hom.dim(), i);
            let e = hom.combine(k, &c);
            if e.mul(k, &e) != e {
                return None;
            }
            let f = id.sub(k, &e);
            let orthogonal = (0..n).all(|x| {
                (0..n).all(|y| {
                    s.eval(&e.col(x), &f.col(y)) == zero && s.eval(&f.col(x), &e.col(y)) == zero
                })
            });
            orthogonal.then_some(e)
        })
        .collect();
    let mut classes: Vec<SesqForm> = Vec::new();
    for e in summands {
        let cols: Vec<Vector> = (0..n).map(|j| e.col(j)).collect();
        let r = s.restrict(&cols)?;
        let mut new = true;
        for c in &classes {
            if c.dim() == r.dim()
                && isometry_bruteforce(&c.clone().into(), &r.clone().into(), cap)?
                    .verdict
                    .is_isometric()
            {
                new = false;
                break;
            }
        }
        if new {
            classes.push(r);
        }
    }
    classes.sort_by_key(|c| c.dim());
    Ok(classes)
}
