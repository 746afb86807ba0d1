//! Reduced Freudenthal algebras `H3(C, Γ)` and the maps from flags to their trace forms.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::composition::{build_flag_tower, cd_mul, CDTower, CompositionError, ZornElement};
use crate::flags::FlagDescriptor;
use crate::matrix::Matrix;
use crate::qforms::{diagonalize_gram, qform_equivalent, QForm, QFormError};
use crate::scalars::{Field, FieldCtx, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreudenthalError {
    #[error("characteristic {0} is not allowed (need char != 2, 3)")]
    BadCharacteristic(u64),
    #[error("Gamma entries must be nonzero")]
    ZeroGamma,
    #[error("entry ({0}, {1}) violates the Gamma-hermitian condition")]
    NotHermitian(usize, usize),
    #[error("expected {expected} coordinates per entry, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("internal error: {0} fails")]
    IdentityFailed(&'static str),
    #[error("trace form {gram} is not equivalent to the formula {formula}")]
    CertificationFailed { gram: String, formula: String },
    #[error(transparent)]
    Composition(#[from] CompositionError),
    #[error(transparent)]
    QForm(#[from] QFormError),
}

/// A composition algebra in coordinates: a Cayley-Dickson tower or Zorn's vector matrices.
#[derive(Debug, Clone, PartialEq)]
pub enum CompAlgebra<F: Field> {
    Tower(CDTower<F>),
    Zorn(F::Ctx),
}

impl<F: Field> CompAlgebra<F> {
    pub fn ctx(&self) -> &F::Ctx {
        match self {
            CompAlgebra::Tower(t) => t.ctx(),
            CompAlgebra::Zorn(c) => c,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            CompAlgebra::Tower(t) => t.dim(),
            CompAlgebra::Zorn(_) => 8,
        }
    }

    pub fn scalar(&self, s: &F) -> Vec<F> {
        let z = F::zero_in(self.ctx());
        let mut v = vec![z; self.dim()];
        v[0] = s.clone();
        if let CompAlgebra::Zorn(_) = self {
            v[7] = s.clone();
        }
        v
    }

    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        match self {
            CompAlgebra::Tower(t) => {
                let x = t.element(a.to_vec()).expect("length");
                let y = t.element(b.to_vec()).expect("length");
                cd_mul(&x, &y).expect("same tower").coords().to_vec()
            }
            CompAlgebra::Zorn(_) => ZornElement::from_coords(a).mul(&ZornElement::from_coords(b)).coords(),
        }
    }

    pub fn conj(&self, a: &[F]) -> Vec<F> {
        match self {
            CompAlgebra::Tower(t) => t.element(a.to_vec()).expect("length").conj().coords().to_vec(),
            CompAlgebra::Zorn(_) => ZornElement::from_coords(a).conj().coords(),
        }
    }

    pub fn norm(&self, a: &[F]) -> F {
        match self {
            CompAlgebra::Tower(t) => t.element(a.to_vec()).expect("length").norm(),
            CompAlgebra::Zorn(_) => ZornElement::from_coords(a).norm(),
        }
    }

    /// `t(a) = a + ā` as a scalar.
    pub fn trace(&self, a: &[F]) -> F {
        match self {
            CompAlgebra::Tower(_) => a[0].clone() + &a[0],
            CompAlgebra::Zorn(_) => a[0].clone() + &a[7],
        }
    }

    /// The polar form `b_N(x, y) = N(x+y) - N(x) - N(y)` as a diagonal form.
    pub fn polar_form(&self) -> Result<QForm<F>, QFormError> {
        let n = self.dim();
        let ctx = self.ctx();
        let unit = |k: usize| {
            let mut v = vec![F::zero_in(ctx); n];
            v[k] = F::one_in(ctx);
            v
        };
        let g = Matrix::from_fn(ctx, n, n, |r, c| {
            let (a, b) = (unit(r), unit(c));
            let s: Vec<F> = a.iter().zip(&b).map(|(x, y)| x.clone() + y).collect();
            self.norm(&s) - self.norm(&a) - self.norm(&b)
        });
        Ok(diagonalize_gram(&g)?.form)
    }
}

impl<F: Field> fmt::Display for CompAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompAlgebra::Tower(t) => {
                let l: Vec<String> = t.lambdas().iter().map(|x| x.to_string()).collect();
                write!(f, "CD({})", l.join(", "))
            }
            CompAlgebra::Zorn(_) => write!(f, "Zorn"),
        }
    }
}

/// `H3(C, Γ) = {X ∈ M3(C) : Γ⁻¹ X̄ᵗ Γ = X}` with `X·Y = (XY + YX)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FreudenthalAlgebra<F: Field> {
    comp: CompAlgebra<F>,
    gamma: [F; 3],
}

#[derive(Debug, Clone, PartialEq)]
pub struct FreudenthalElement<F: Field> {
    alg: FreudenthalAlgebra<F>,
    /// Row-major 3x3 entries, each a coordinate vector in `C`.
    entries: Vec<Vec<F>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CubicData<F: Field> {
    pub t: F,
    pub s: F,
    pub n: F,
    pub adjoint: FreudenthalElement<F>,
}

impl<F: Field> FreudenthalAlgebra<F> {
    pub fn new(comp: CompAlgebra<F>, gamma: [F; 3]) -> Result<Self, FreudenthalError> {
        let ch = F::characteristic(comp.ctx());
        if ch == 2 || ch == 3 {
            return Err(FreudenthalError::BadCharacteristic(ch));
        }
        if gamma.iter().any(|g| g.eq_zero()) {
            return Err(FreudenthalError::ZeroGamma);
        }
        Ok(FreudenthalAlgebra { comp, gamma })
    }

    pub fn with_identity_gamma(comp: CompAlgebra<F>) -> Result<Self, FreudenthalError> {
        let one = F::one_in(comp.ctx());
        Self::new(comp, [one.clone(), one.clone(), one])
    }

    pub fn comp(&self) -> &CompAlgebra<F> {
        &self.comp
    }

    pub fn gamma(&self) -> &[F; 3] {
        &self.gamma
    }

    pub fn ctx(&self) -> &F::Ctx {
        self.comp.ctx()
    }

    pub fn dim(&self) -> usize {
        3 * (self.comp.dim() + 1)
    }

    /// `x_ji` forced by `x_ij`: `γ_j⁻¹ x̄_ij γ_i`.
    fn partner(&self, i: usize, j: usize, x: &[F]) -> Vec<F> {
        let r = self.gamma[i].div(&self.gamma[j]);
        self.comp.conj(x).into_iter().map(|c| c * &r).collect()
    }

    pub fn make_hermitian_element(&self, entries: Vec<Vec<F>>) -> Result<FreudenthalElement<F>, FreudenthalError> {
        let d = self.comp.dim();
        if entries.len() != 9 {
            return Err(FreudenthalError::WrongLength { expected: 9, got: entries.len() });
        }
        if let Some(e) = entries.iter().find(|e| e.len() != d) {
            return Err(FreudenthalError::WrongLength { expected: d, got: e.len() });
        }
        for i in 0..3 {
            for j in 0..3 {
                if self.partner(i, j, &entries[3 * i + j]) != entries[3 * j + i] {
                    return Err(FreudenthalError::NotHermitian(j + 1, i + 1));
                }
            }
        }
        Ok(FreudenthalElement { alg: self.clone(), entries })
    }

    /// Diagonal scalars `d` and upper entries `(x_12, x_13, x_23)`.
    pub fn element_from_upper(&self, d: [F; 3], upper: [Vec<F>; 3]) -> Result<FreudenthalElement<F>, FreudenthalError> {
        let zero = vec![F::zero_in(self.ctx()); self.comp.dim()];
        let mut e = vec![zero; 9];
        for (k, s) in d.iter().enumerate() {
            e[4 * k] = self.comp.scalar(s);
        }
        for ((i, j), x) in [(0, 1), (0, 2), (1, 2)].into_iter().zip(upper) {
            if x.len() != self.comp.dim() {
                return Err(FreudenthalError::WrongLength { expected: self.comp.dim(), got: x.len() });
            }
            e[3 * j + i] = self.partner(i, j, &x);
            e[3 * i + j] = x;
        }
        self.make_hermitian_element(e)
    }

    pub fn scalar_matrix(&self, s: &F) -> FreudenthalElement<F> {
        let z = F::zero_in(self.ctx());
        let zero = vec![z; self.comp.dim()];
        self.element_from_upper([s.clone(), s.clone(), s.clone()], [zero.clone(), zero.clone(), zero]).expect("scalar")
    }

    pub fn identity(&self) -> FreudenthalElement<F> {
        self.scalar_matrix(&F::one_in(self.ctx()))
    }

    /// The diagonal idempotent `E_kk`.
    pub fn idempotent(&self, k: usize) -> FreudenthalElement<F> {
        let ctx = self.ctx();
        let mut d = [F::zero_in(ctx), F::zero_in(ctx), F::zero_in(ctx)];
        d[k] = F::one_in(ctx);
        let zero = vec![F::zero_in(ctx); self.comp.dim()];
        self.element_from_upper(d, [zero.clone(), zero.clone(), zero]).expect("diagonal")
    }

    /// `E_11, E_22, E_33`, then `u ↦ (x_ij = u)` for `ij = 12, 13, 23` and `u` running over the
    /// coordinate basis of `C`.
    pub fn basis(&self) -> Vec<FreudenthalElement<F>> {
        let ctx = self.ctx();
        let n = self.comp.dim();
        let mut out: Vec<_> = (0..3).map(|k| self.idempotent(k)).collect();
        let z = F::zero_in(ctx);
        for slot in 0..3 {
            for k in 0..n {
                let mut upper = [vec![z.clone(); n], vec![z.clone(); n], vec![z.clone(); n]];
                upper[slot][k] = F::one_in(ctx);
                out.push(self.element_from_upper([z.clone(), z.clone(), z.clone()], upper).expect("basis"));
            }
        }
        out
    }

    pub fn random<R: Rng>(&self, rng: &mut R, bound: i64) -> FreudenthalElement<F> {
        let ctx = self.ctx();
        let mut r = || F::from_int(ctx, rng.gen_range(-bound..=bound));
        let d = [r(), r(), r()];
        let n = self.comp.dim();
        let upper = [(); 3].map(|_| (0..n).map(|_| r()).collect::<Vec<F>>());
        self.element_from_upper(d, upper).expect("hermitian by construction")
    }
}

impl<F: Field> FreudenthalElement<F> {
    pub fn algebra(&self) -> &FreudenthalAlgebra<F> {
        &self.alg
    }

    pub fn entry(&self, i: usize, j: usize) -> &[F] {
        &self.entries[3 * i + j]
    }

    pub fn entries(&self) -> &[Vec<F>] {
        &self.entries
    }

    fn zip(&self, o: &Self, f: impl Fn(&F, &F) -> F) -> Self {
        let entries =
            self.entries.iter().zip(&o.entries).map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect()).collect();
        FreudenthalElement { alg: self.alg.clone(), entries }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.clone() + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.clone() - b)
    }

    pub fn scale(&self, c: &F) -> Self {
        let entries = self.entries.iter().map(|e| e.iter().map(|x| x.clone() * c).collect()).collect();
        FreudenthalElement { alg: self.alg.clone(), entries }
    }

    fn matmul(&self, o: &Self) -> Vec<Vec<F>> {
        let c = &self.alg.comp;
        let n = c.dim();
        let ctx = c.ctx();
        let mut out = vec![vec![F::zero_in(ctx); n]; 9];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let p = c.mul(self.entry(i, k), o.entry(k, j));
                    for (t, x) in out[3 * i + j].iter_mut().zip(p) {
                        *t = t.clone() + x;
                    }
                }
            }
        }
        out
    }

    pub fn jordan_mul(&self, o: &Self) -> Result<Self, FreudenthalError> {
        if self.alg != o.alg {
            return Err(FreudenthalError::AlgebraMismatch);
        }
        let half = F::half(self.alg.ctx());
        let a = self.matmul(o);
        let b = o.matmul(self);
        let entries =
            a.into_iter().zip(b).map(|(x, y)| x.into_iter().zip(y).map(|(p, q)| (p + q) * &half).collect()).collect();
        Ok(FreudenthalElement { alg: self.alg.clone(), entries })
    }

    /// Generic trace: the sum of the diagonal scalars.
    pub fn trace(&self) -> F {
        let c = &self.alg.comp;
        let half = F::half(c.ctx());
        (0..3).fold(F::zero_in(c.ctx()), |acc, k| acc + &(c.trace(self.entry(k, k)) * &half))
    }

    /// `T`, `S`, `N` and `X#`, with the cubic identity and `X·X# = N I` checked.
    pub fn cubic_data(&self) -> Result<CubicData<F>, FreudenthalError> {
        let ctx = self.alg.ctx().clone();
        let x2 = self.jordan_mul(self)?;
        let x3 = self.jordan_mul(&x2)?;
        let t = self.trace();
        let t2 = x2.trace();
        let t3 = x3.trace();
        let half = F::half(&ctx);
        let sixth = F::from_int(&ctx, 6).inv().expect("char != 2, 3");
        let s = (t.square() - &t2) * &half;
        let n = (t.pow(3) - &(F::from_int(&ctx, 3) * &t * &t2) + &(F::from_int(&ctx, 2) * &t3)) * &sixth;
        let adjoint = x2.sub(&self.scale(&t)).add(&self.alg.scalar_matrix(&s));
        let cubic = x3.sub(&x2.scale(&t)).add(&self.scale(&s)).sub(&self.alg.scalar_matrix(&n));
        if !cubic.is_zero() {
            return Err(FreudenthalError::IdentityFailed("X^3 - T X^2 + S X - N I = 0"));
        }
        if self.jordan_mul(&adjoint)? != self.alg.scalar_matrix(&n) {
            return Err(FreudenthalError::IdentityFailed("X.X# = N I"));
        }
        Ok(CubicData { t, s, n, adjoint })
    }

    /// `X × Y = (X+Y)# - X# - Y#`.
    pub fn cross(&self, o: &Self) -> Result<Self, FreudenthalError> {
        let s = self.add(o).cubic_data()?.adjoint;
        Ok(s.sub(&self.cubic_data()?.adjoint).sub(&o.cubic_data()?.adjoint))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.iter().all(|x| x.eq_zero()))
    }
}

/// `T_A(X, Y) = T(X·Y)`.
pub fn trace_bilinear<F: Field>(x: &FreudenthalElement<F>, y: &FreudenthalElement<F>) -> Result<F, FreudenthalError> {
    Ok(x.jordan_mul(y)?.trace())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceFormReport<F: Field> {
    /// Diagonalization of the Gram matrix of `T_A` on [`FreudenthalAlgebra::basis`].
    pub gram_form: QForm<F>,
    /// `<1,1,1> ⊥ b_N ⊗ <γ3⁻¹γ2, γ1⁻¹γ3, γ2⁻¹γ1>`.
    pub formula: QForm<F>,
    /// `None` when equivalence cannot be decided over the field.
    pub certified: Option<bool>,
}

pub fn algebra_trace_form<F: Field>(alg: &FreudenthalAlgebra<F>) -> Result<TraceFormReport<F>, FreudenthalError> {
    let ctx = alg.ctx();
    let basis = alg.basis();
    let n = basis.len();
    debug_assert_eq!(n, alg.dim());
    let mut gram = Matrix::zeros(ctx, n, n);
    for r in 0..n {
        for c in r..n {
            let v = trace_bilinear(&basis[r], &basis[c])?;
            gram[(r, c)] = v.clone();
            gram[(c, r)] = v;
        }
    }
    let gram_form = diagonalize_gram(&gram)?.form;
    let g = &alg.gamma;
    let twist = QForm::new(ctx, vec![g[1].div(&g[2]), g[2].div(&g[0]), g[0].div(&g[1])])?;
    let formula = QForm::from_ints(ctx, &[1, 1, 1])?.perp(&alg.comp.polar_form()?.tensor(&twist));
    let certified = match F::describe(ctx) {
        FieldCtx::Rationals | FieldCtx::PrimeField(_) => {
            let ok = qform_equivalent(&gram_form, &formula)?;
            if !ok {
                return Err(FreudenthalError::CertificationFailed {
                    gram: gram_form.to_string(),
                    formula: formula.to_string(),
                });
            }
            Some(true)
        }
        FieldCtx::QuadExt(_) => None,
    };
    Ok(TraceFormReport { gram_form, formula, certified })
}

#[derive(Debug, Clone)]
pub struct FreudenthalFlag {
    /// `<1,1,1> ⊥ <-c, -d, cd>` with `<<c, d>>` the quaternion norm.
    pub dim6: QForm<Rational>,
    /// Trace form of `H3(k, Γ6)` realizing `dim6`; carries the polar factor `b_N = <2>`.
    pub dim6_algebra: TraceFormReport<Rational>,
    /// `<1,1,1> ⊥ N_K ⊗ <-b1, -c1, b1 c1>` with `N_C = N_K ⊗ <<b1, c1>>`.
    pub dim9: QForm<Rational>,
    pub dim9_algebra: TraceFormReport<Rational>,
    pub b1: Rational,
    pub c1: Rational,
    /// `H3(k,Γ) ⊂ H3(K,Γ) ⊂ H3(Q,Γ) ⊂ H3(C,Γ)`.
    pub tower: Vec<FreudenthalAlgebra<Rational>>,
    pub inclusions_verified: bool,
}

fn embed<F: Field>(x: &FreudenthalElement<F>, big: &FreudenthalAlgebra<F>) -> FreudenthalElement<F> {
    let n = big.comp.dim();
    let z = F::zero_in(big.ctx());
    let entries = x
        .entries
        .iter()
        .map(|e| {
            let mut v = e.clone();
            v.resize(n, z.clone());
            v
        })
        .collect();
    FreudenthalElement { alg: big.clone(), entries }
}

/// Freudenthal algebras of dimension 6 and 9 and the 4-flag of reduced algebras attached to a flag.
pub fn orbit_to_freudenthal<R: Rng>(
    flag: &FlagDescriptor,
    gamma: [Rational; 3],
    rng: &mut R,
) -> Result<FreudenthalFlag, FreudenthalError> {
    let i = flag.i.clone();
    let ym = flag.normal_form.ys()[flag.pattern - 1].clone();
    let one = Rational::one_in(&());
    let ones = QForm::from_ints(&(), &[1, 1, 1])?;

    // <<c, d>> = <1, -c, -d, cd> with (c, d) = (-i, -y_m).
    let (c, d) = (-i.clone(), -ym.clone());
    let dim6 = ones.perp(&QForm::new(&(), vec![-c.clone(), -d.clone(), c.clone() * &d])?);
    let g6 = [one.clone(), i.clone() * &ym, ym.clone()];
    let h6 = FreudenthalAlgebra::new(CompAlgebra::Tower(CDTower::new(&(), vec![])?), g6)?;
    let dim6_algebra = algebra_trace_form(&h6)?;

    let tower = build_flag_tower(&i, &ym, flag.octonion_class)?;
    let lam = tower.c.lambdas().to_vec();
    let (b1, c1) = (lam[1].clone(), lam[2].clone());
    let nk = QForm::new(&(), vec![one.clone(), i.clone()])?;
    let dim9 = ones.perp(&nk.tensor(&QForm::new(&(), vec![-b1.clone(), -c1.clone(), b1.clone() * &c1])?));
    let g9 = [one.clone(), -(c1.clone() * &b1), -c1.clone()];
    let h9 = FreudenthalAlgebra::new(CompAlgebra::Tower(tower.k.clone()), g9)?;
    let dim9_algebra = algebra_trace_form(&h9)?;

    let algebras: Vec<FreudenthalAlgebra<Rational>> = (0..=3)
        .map(|k| FreudenthalAlgebra::new(CompAlgebra::Tower(tower.c.truncate(k)), gamma.clone()))
        .collect::<Result<_, _>>()?;
    let mut inclusions_verified = true;
    for w in algebras.windows(2) {
        for _ in 0..5 {
            let x = w[0].random(rng, 4);
            let y = w[0].random(rng, 4);
            let lhs = embed(&x.jordan_mul(&y)?, &w[1]);
            let rhs = embed(&x, &w[1]).jordan_mul(&embed(&y, &w[1]))?;
            inclusions_verified &= lhs == rhs && w[1].make_hermitian_element(embed(&x, &w[1]).entries).is_ok();
        }
    }
    Ok(FreudenthalFlag { dim6, dim6_algebra, dim9, dim9_algebra, b1, c1, tower: algebras, inclusions_verified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flags::flag_of_point;
    use crate::orbits::NormalFormX;
    use crate::scalars::{Fp, Modulus};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64) -> Rational {
        Rational::from_int(&(), n)
    }

    fn tower(l: &[i64]) -> CompAlgebra<Rational> {
        CompAlgebra::Tower(CDTower::new(&(), l.iter().map(|&x| r(x)).collect()).unwrap())
    }

    fn alg(c: CompAlgebra<Rational>, g: [i64; 3]) -> FreudenthalAlgebra<Rational> {
        FreudenthalAlgebra::new(c, g.map(r)).unwrap()
    }

    fn all_algebras() -> Vec<CompAlgebra<Rational>> {
        vec![
            tower(&[]),
            tower(&[1]),
            tower(&[1, 1]),
            tower(&[-1, -1]),
            CompAlgebra::Zorn(()),
            tower(&[-1, -1, -1]),
            tower(&[-1, -3, 2]),
        ]
    }

    #[test]
    fn hermitian_condition() {
        let a = alg(tower(&[1, 1]), [1, 1, 1]);
        assert!(a.make_hermitian_element(a.identity().entries).is_ok());
        let u = vec![r(1), r(2), r(3), r(4)];
        let x = a.element_from_upper([r(0), r(0), r(0)], [u.clone(), vec![r(0); 4], vec![r(0); 4]]).unwrap();
        assert_eq!(x.entry(1, 0), a.comp().conj(&u).as_slice());
        let mut bad = a.identity().entries;
        bad[0] = vec![r(1), r(1), r(0), r(0)];
        assert_eq!(a.make_hermitian_element(bad), Err(FreudenthalError::NotHermitian(1, 1)));
        let p3 = Modulus::new(3).unwrap();
        let c = CompAlgebra::Tower(CDTower::<Fp>::new(&p3, vec![]).unwrap());
        let one = Fp::new(p3, 1);
        assert_eq!(FreudenthalAlgebra::new(c, [one, one, one]), Err(FreudenthalError::BadCharacteristic(3)));
    }

    #[test]
    fn jordan_basics() {
        let a = alg(tower(&[-1, -1]), [1, 2, 3]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = a.random(&mut rng, 5);
        let y = a.random(&mut rng, 5);
        assert_eq!(x.jordan_mul(&a.identity()).unwrap(), x);
        assert_eq!(x.jordan_mul(&y).unwrap(), y.jordan_mul(&x).unwrap());
        assert!(a.idempotent(0).jordan_mul(&a.idempotent(1)).unwrap().is_zero());
    }

    #[test]
    fn cubic_examples() {
        let a = alg(tower(&[1]), [1, 1, 1]);
        let c = a.identity().cubic_data().unwrap();
        assert_eq!((c.t, c.s, c.n), (r(3), r(3), r(1)));
        assert_eq!(c.adjoint, a.identity());
        let z = vec![r(0); 2];
        let x = a.element_from_upper([r(2), r(3), r(5)], [z.clone(), z.clone(), z]).unwrap();
        let c = x.cubic_data().unwrap();
        assert_eq!((c.t, c.s, c.n), (r(10), r(31), r(30)));
        let c = a.idempotent(0).cubic_data().unwrap();
        assert_eq!(c.n, r(0));
        assert!(c.adjoint.is_zero());
        let e = a.idempotent(1).add(&a.idempotent(2));
        assert_eq!(e.cubic_data().unwrap().adjoint, a.idempotent(0));
    }

    #[test]
    fn cubic_identity_everywhere() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for c in all_algebras() {
            for _ in 0..40 {
                let g = [(); 3].map(|_| {
                    let v = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    r(v)
                });
                let a = FreudenthalAlgebra::new(c.clone(), g).unwrap();
                let x = a.random(&mut rng, 4);
                let cd = x.cubic_data().unwrap();
                assert_eq!(x.cross(&x).unwrap(), cd.adjoint.scale(&r(2)));
            }
        }
    }

    #[test]
    fn trace_form_certified() {
        let a = alg(tower(&[]), [1, 1, 1]);
        let rep = algebra_trace_form(&a).unwrap();
        assert_eq!(rep.gram_form.dim(), 6);
        assert_eq!(rep.certified, Some(true));

        let rep = algebra_trace_form(&alg(tower(&[1]), [1, 1, 1])).unwrap();
        assert_eq!(rep.gram_form.dim(), 9);
        assert!(crate::qforms::is_isotropic(&rep.gram_form).unwrap());

        let rep = algebra_trace_form(&alg(tower(&[-1, -1]), [1, 1, 1])).unwrap();
        assert_eq!(rep.gram_form.dim(), 15);
        assert_eq!(crate::qforms::qform_invariants(&rep.gram_form).unwrap().signature, (15, 0));

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for c in all_algebras() {
            let g = [(); 3].map(|_| r(rng.gen_range(1..=6) * if rng.gen_bool(0.5) { 1 } else { -1 }));
            let a = FreudenthalAlgebra::new(c.clone(), g).unwrap();
            assert_eq!(a.basis().len(), a.dim());
            assert_eq!(a.dim(), 3 * (c.dim() + 1));
            assert_eq!(algebra_trace_form(&a).unwrap().certified, Some(true));
        }
    }

    #[test]
    fn flag_to_freudenthal() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let ham = flag_of_point(&NormalFormX::from_ints(&(), [0, 1, 1, 1]).unwrap(), 1).unwrap();
        let out = orbit_to_freudenthal(&ham, [r(1), r(1), r(1)], &mut rng).unwrap();
        assert!(qform_equivalent(&out.dim6, &QForm::from_ints(&(), &[1; 6]).unwrap()).unwrap());
        assert_eq!(out.dim6_algebra.certified, Some(true));
        assert_eq!(out.dim9_algebra.certified, Some(true));
        assert!(out.inclusions_verified);
        assert_eq!(out.tower.iter().map(|a| a.dim()).collect::<Vec<_>>(), vec![6, 9, 15, 27]);

        let split = flag_of_point(&NormalFormX::from_ints(&(), [0, 1, -1, -1]).unwrap(), 2).unwrap();
        let out = orbit_to_freudenthal(&split, [r(1), r(2), r(-1)], &mut rng).unwrap();
        // The <-c, -d, cd> part of a split quaternion is isotropic.
        assert!(crate::qforms::is_isotropic(&QForm::new(&(), out.dim6.diag()[3..].to_vec()).unwrap()).unwrap());
        assert!(out.inclusions_verified);
    }
}
