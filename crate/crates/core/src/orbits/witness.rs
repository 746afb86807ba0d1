use super::{split_form, NormalFormX, OrbitError};
use crate::matrix::Matrix;
use crate::scalars::Field;
use crate::wedge::{act_product, check_symplectic, join_components, sl3_block, TriVector};

/// The explicit group elements used in the orbit arguments.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness<F: Field> {
    /// `g = [[α, β], [γ, δ]]` moving the split point onto the normal form; needs `sqrt(-i)`.
    ThmCdG { i: F, y0: F, y1: F, y2: F, y3: F },
    /// The chain `g, g1, g2` reducing `(-e123 - 2 sqrt(-i) e456, (a,0,0,1,0,0))`; needs `sqrt(a)`
    /// and a square root of `sqrt(-i)`.
    SpPvChain { a: F, i: F },
    /// `diag(C, C^{-t})`, `C = diag(1, C1)`, on `(-e123 - y0 e456, (q,0,0,1,0,0))`.
    Sl2Embed { c1: Matrix<F>, y0: F, q: F },
    /// `diag(A, A^{-t})` on `-e123 - y0 e456`.
    Sl3Embed { a: Matrix<F>, y0: F },
}

impl<F: Field> Witness<F> {
    pub fn case_id(&self) -> &'static str {
        match self {
            Witness::ThmCdG { .. } => "thmCD_g",
            Witness::SpPvChain { .. } => "spPV_chain",
            Witness::Sl2Embed { .. } => "sl2_embed",
            Witness::Sl3Embed { .. } => "sl3_embed",
        }
    }
}

/// An element `(g, α, β)` of `GSp6 × GL1²` with its similitude factor.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessStep<F: Field> {
    pub name: String,
    pub g: Matrix<F>,
    pub x_scale: F,
    pub v_scale: F,
    pub lambda: Option<F>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessReport<F: Field> {
    pub case_id: String,
    pub steps: Vec<WitnessStep<F>>,
    pub source: TriVector<F>,
    pub target: TriVector<F>,
    pub image: TriVector<F>,
    pub in_group: bool,
    pub verified: bool,
}

fn root<F: Field>(a: &F) -> Result<F, OrbitError> {
    a.sqrt().ok_or_else(|| OrbitError::MissingRoot(a.to_string()))
}

fn diag<F: Field>(d: &[F]) -> Matrix<F> {
    Matrix::diagonal(&d[0].ctx(), d)
}

fn step<F: Field>(name: &str, g: Matrix<F>, x_scale: F, v_scale: F) -> WitnessStep<F> {
    let lambda = check_symplectic(&g).ok().map(|s| s.lambda);
    WitnessStep { name: name.to_string(), g, x_scale, v_scale, lambda }
}

fn nonzero<F: Field>(x: &F, what: &str) -> Result<(), OrbitError> {
    if x.eq_zero() {
        Err(OrbitError::Precondition(format!("{what} must be nonzero")))
    } else {
        Ok(())
    }
}

pub fn paper_witness<F: Field>(w: &Witness<F>) -> Result<WitnessReport<F>, OrbitError> {
    let (steps, source, target) = match w {
        Witness::ThmCdG { i, y0, y1, y2, y3 } => {
            let ctx = i.ctx();
            let nf = NormalFormX::new(y0.clone(), y1.clone(), y2.clone(), y3.clone())?;
            nonzero(i, "i")?;
            if nf.f1() != *i {
                return Err(OrbitError::Precondition("y1 y2 y3 must equal y0^2/4 + i".into()));
            }
            let s = root(&-i.clone())?;
            let n = |k: i64| F::from_int(&ctx, k);
            let p = y0.clone() + &(n(2) * &s);
            let m = y0.clone() - &(n(2) * &s);
            nonzero(&p, "y0 + 2 sqrt(-i)")?;
            let u = p.div(&(n(4) * &s));
            let alpha = diag(&[u.clone(), n(1), n(1)]);
            let beta = diag(&[-(n(2) * y1).div(&p), -y2.div(&(n(2) * &s)), -y3.div(&(n(2) * &s))]);
            let gamma = diag(&[
                -(y0.square() + &(n(4) * i)).div(&(n(8) * &s * y1)),
                -m.div(&(n(2) * y2)),
                -m.div(&(n(2) * y3)),
            ]);
            let delta = diag(&[n(1), u.clone(), u]);
            let g = Matrix::from_blocks(&alpha, &beta, &gamma, &delta);
            let v_src = vec![(n(4) * &s).div(&p), n(0), n(0), -p.div(&(n(2) * y1)), n(0), n(0)];
            let source = join_components(&split_form(&(n(2) * &s)), &v_src);
            let target = join_components(&nf.to_trivector(), &nf.pattern(1)?);
            (vec![step("g", g, n(1), n(1))], source, target)
        }
        Witness::SpPvChain { a, i } => {
            let ctx = a.ctx();
            nonzero(a, "a")?;
            nonzero(i, "i")?;
            let n = |k: i64| F::from_int(&ctx, k);
            let ra = root(a)?;
            let rai = ra.inv().expect("nonzero");
            let s = root(&-i.clone())?;
            let c = root(&s)?;
            let ci = c.inv().expect("nonzero");
            let g = diag(&[rai.clone(), ra.clone(), n(1), ra, rai.clone(), n(1)]);
            let g1 = Matrix::identity(&ctx, 6);
            let g2 = diag(&[n(1), n(1), c, n(1), n(1), ci.clone()]);
            let source = join_components(&split_form(&(n(2) * &s)), &[a.clone(), n(0), n(0), n(1), n(0), n(0)]);
            let target = join_components(&split_form(&n(2)), &[n(1), n(0), n(0), n(1), n(0), n(0)]);
            let steps = vec![step("g", g, n(1), n(1)), step("g1", g1, n(1), rai), step("g2", g2, ci, n(1))];
            (steps, source, target)
        }
        Witness::Sl2Embed { c1, y0, q } => {
            let ctx = y0.ctx();
            if c1.rows() != 2 || c1.cols() != 2 {
                return Err(OrbitError::Precondition("C1 must be 2x2".into()));
            }
            let mut c = Matrix::identity(&ctx, 3);
            for r in 0..2 {
                for k in 0..2 {
                    c[(r + 1, k + 1)] = c1[(r, k)].clone();
                }
            }
            let g = sl3_block(&c).ok_or_else(|| OrbitError::Precondition("C1 must be invertible".into()))?;
            let n = |k: i64| F::from_int(&ctx, k);
            let t = join_components(&split_form(y0), &[q.clone(), n(0), n(0), n(1), n(0), n(0)]);
            (vec![step("g", g, n(1), n(1))], t.clone(), t)
        }
        Witness::Sl3Embed { a, y0 } => {
            let ctx = y0.ctx();
            if a.rows() != 3 || a.cols() != 3 {
                return Err(OrbitError::Precondition("A must be 3x3".into()));
            }
            let g = sl3_block(a).ok_or_else(|| OrbitError::Precondition("A must be invertible".into()))?;
            let t = split_form(y0);
            (vec![step("g", g, F::one_in(&ctx), F::one_in(&ctx))], t.clone(), t)
        }
    };
    let in_group = steps.iter().all(|s| s.lambda.is_some());
    let image = steps.iter().fold(source.clone(), |t, s| act_product(&s.g, &s.x_scale, &s.v_scale, &t));
    let verified = in_group && image == target;
    Ok(WitnessReport { case_id: w.case_id().to_string(), steps, source, target, image, in_group, verified })
}
