//! The symplectic space `(V6, J)` and the module `∧³V6 = X ⊕ V6`.
//!
//! Basis vectors `e_i e_j e_l` (`i < j < l`, indices 1..6) are ordered
//! lexicographically. `J(e_i, e_{i+3}) = 1`.

mod symplectic;
mod zcoords;

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use thiserror::Error;

pub use symplectic::{
    check_symplectic, h_a, m_j, random_sp6, sl3_block, symplectic_generators, GroupClass, SympElement,
};
pub use zcoords::{z_identify, z_to_trivector, ZCoords};

use crate::matrix::Matrix;
use crate::scalars::{Field, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WedgeError {
    #[error("matrix is not a symplectic similitude")]
    NotSimilitude,
    #[error("expected a 6x6 matrix, got {0}x{1}")]
    BadShape(usize, usize),
    #[error("cannot parse trivector `{0}`: {1}")]
    Parse(String, String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The 20 sorted index triples, 0-based.
pub const TRIPLES: [[usize; 3]; 20] = {
    let mut out = [[0usize; 3]; 20];
    let mut n = 0;
    let mut i = 0;
    while i < 6 {
        let mut j = i + 1;
        while j < 6 {
            let mut l = j + 1;
            while l < 6 {
                out[n] = [i, j, l];
                n += 1;
                l += 1;
            }
            j += 1;
        }
        i += 1;
    }
    out
};

/// Position of `e_a e_b e_c` (0-based, any order) in the basis with the sign of
/// the sorting permutation, or `None` when an index repeats.
pub fn triple_index(a: usize, b: usize, c: usize) -> Option<(usize, i8)> {
    if a == b || b == c || a == c {
        return None;
    }
    let mut t = [a, b, c];
    let mut sign = 1i8;
    for _ in 0..2 {
        for k in 0..2 {
            if t[k] > t[k + 1] {
                t.swap(k, k + 1);
                sign = -sign;
            }
        }
    }
    let idx = TRIPLES.iter().position(|x| *x == t).expect("sorted triple");
    Some((idx, sign))
}

/// `J(e_a, e_b)`, 0-based.
#[inline]
pub fn j_form(a: usize, b: usize) -> i64 {
    if b == a + 3 && a < 3 {
        1
    } else if a == b + 3 && b < 3 {
        -1
    } else {
        0
    }
}

/// An element of `∧³V6`.
#[derive(Clone, PartialEq)]
pub struct TriVector<F: Field> {
    ctx: F::Ctx,
    coords: Vec<F>,
}

impl<F: Field> fmt::Debug for TriVector<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl<F: Field> TriVector<F> {
    pub fn zero(ctx: &F::Ctx) -> Self {
        TriVector { ctx: ctx.clone(), coords: vec![F::zero_in(ctx); 20] }
    }

    pub fn from_coords(ctx: &F::Ctx, coords: Vec<F>) -> Self {
        assert_eq!(coords.len(), 20, "a trivector has 20 coordinates");
        TriVector { ctx: ctx.clone(), coords }
    }

    /// Sum of `c * e_{ijl}` with 1-based, possibly unsorted, indices.
    pub fn from_terms(ctx: &F::Ctx, terms: &[(F, [usize; 3])]) -> Self {
        let mut t = Self::zero(ctx);
        for (c, [i, j, l]) in terms {
            t.add_term(c, i - 1, j - 1, l - 1);
        }
        t
    }

    pub fn from_int_terms(ctx: &F::Ctx, terms: &[(i64, [usize; 3])]) -> Self {
        let terms: Vec<(F, [usize; 3])> = terms.iter().map(|&(c, t)| (F::from_int(ctx, c), t)).collect();
        Self::from_terms(ctx, &terms)
    }

    /// Adds `c * e_a e_b e_c` with 0-based indices; repeated indices contribute nothing.
    pub fn add_term(&mut self, c: &F, a: usize, b: usize, d: usize) {
        if let Some((idx, s)) = triple_index(a, b, d) {
            let t = if s > 0 { self.coords[idx].clone() + c } else { self.coords[idx].clone() - c };
            self.coords[idx] = t;
        }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coords(&self) -> &[F] {
        &self.coords
    }

    /// Coefficient `x_{ijl}` with 1-based indices in any order.
    pub fn get(&self, i: usize, j: usize, l: usize) -> F {
        match triple_index(i - 1, j - 1, l - 1) {
            Some((idx, s)) if s > 0 => self.coords[idx].clone(),
            Some((idx, _)) => -self.coords[idx].clone(),
            None => F::zero_in(&self.ctx),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a.clone() + b).collect();
        TriVector { ctx: self.ctx.clone(), coords }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a.clone() - b).collect();
        TriVector { ctx: self.ctx.clone(), coords }
    }

    pub fn scale(&self, c: &F) -> Self {
        TriVector { ctx: self.ctx.clone(), coords: self.coords.iter().map(|a| a.clone() * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.eq_zero())
    }

    /// Signed terms `c*e{ijl}` joined by `+`/`-`; `0` for the zero vector.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coords.iter().enumerate() {
            if c.eq_zero() {
                continue;
            }
            let [i, j, l] = TRIPLES[k];
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
                _ => (false, s),
            };
            let body = if body.contains(['+', '-']) || body.contains("sqrt") { format!("({body})") } else { body };
            let sep = match (out.is_empty(), neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            out.push_str(&format!("{sep}{body}*e{}{}{}", i + 1, j + 1, l + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn parse(ctx: &F::Ctx, s: &str) -> Result<Self, WedgeError> {
        parse_trivector(ctx, s)
    }

    /// Map from sorted index strings ("123") to scalar strings; zero coordinates are omitted.
    pub fn to_json_map(&self) -> BTreeMap<String, String> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.eq_zero())
            .map(|(k, c)| {
                let [i, j, l] = TRIPLES[k];
                (format!("{}{}{}", i + 1, j + 1, l + 1), c.to_string())
            })
            .collect()
    }

    pub fn from_json_map(ctx: &F::Ctx, m: &BTreeMap<String, String>) -> Result<Self, WedgeError> {
        let mut t = Self::zero(ctx);
        for (k, v) in m {
            let idx =
                parse_indices(k).ok_or_else(|| WedgeError::Parse(k.clone(), "expected three digits 1-6".into()))?;
            let c = F::parse(ctx, v)?;
            if triple_index(idx[0], idx[1], idx[2]).is_none() {
                return Err(WedgeError::Parse(k.clone(), "repeated index".into()));
            }
            t.add_term(&c, idx[0], idx[1], idx[2]);
        }
        Ok(t)
    }
}

fn parse_indices(s: &str) -> Option<[usize; 3]> {
    let d: Vec<usize> = s.chars().map(|c| c.to_digit(10).map(|x| x as usize)).collect::<Option<_>>()?;
    if d.len() != 3 || d.iter().any(|&x| !(1..=6).contains(&x)) {
        return None;
    }
    Some([d[0] - 1, d[1] - 1, d[2] - 1])
}

fn parse_trivector<F: Field>(ctx: &F::Ctx, s: &str) -> Result<TriVector<F>, WedgeError> {
    let err = |why: &str| WedgeError::Parse(s.to_string(), why.to_string());
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(err("empty input"));
    }
    if t == "0" {
        return Ok(TriVector::zero(ctx));
    }
    // Split at top-level signs that start a new term.
    let bytes: Vec<char> = t.chars().collect();
    let mut terms: Vec<String> = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for (k, &c) in bytes.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let prev = if k > 0 { Some(bytes[k - 1]) } else { None };
        let boundary = depth == 0
            && (c == '+' || c == '-')
            && k > 0
            && !matches!(prev, Some('*') | Some('/') | Some('(') | Some('+') | Some('-'));
        if boundary {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    terms.push(cur);
    if depth != 0 {
        return Err(err("unbalanced parentheses"));
    }

    let mut out = TriVector::zero(ctx);
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(r) => (true, r.to_string()),
            None => (false, term.strip_prefix('+').unwrap_or(&term).to_string()),
        };
        let epos = body.rfind('e').ok_or_else(|| err("each term needs a basis vector e{ijl}"))?;
        let idx = parse_indices(&body[epos + 1..])
            .ok_or_else(|| err("basis vector must be e followed by three digits 1-6"))?;
        let coef_str = &body[..epos];
        let coef = if coef_str.is_empty() {
            F::one_in(ctx)
        } else {
            let c =
                coef_str.strip_suffix('*').ok_or_else(|| err("expected `*` between coefficient and basis vector"))?;
            let c = c.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(c);
            F::parse(ctx, c)?
        };
        let coef = if neg { -coef } else { coef };
        if triple_index(idx[0], idx[1], idx[2]).is_none() {
            return Err(err("repeated index in a basis vector"));
        }
        out.add_term(&coef, idx[0], idx[1], idx[2]);
    }
    Ok(out)
}

/// `ψ(v1∧v2∧v3) = J(v2,v3)v1 − J(v1,v3)v2 + J(v1,v2)v3`.
pub fn contract_psi<F: Field>(t: &TriVector<F>) -> Vec<F> {
    let mut out = vec![F::zero_in(&t.ctx); 6];
    for (k, c) in t.coords.iter().enumerate() {
        if c.eq_zero() {
            continue;
        }
        let [a, b, d] = TRIPLES[k];
        for (coef, target) in [(j_form(b, d), a), (-j_form(a, d), b), (j_form(a, b), d)] {
            if coef != 0 {
                let v = out[target].clone() + &(c.clone() * &F::from_int(&t.ctx, coef));
                out[target] = v;
            }
        }
    }
    out
}

/// The spanning vector `s_m` (1-based `m`) with `ψ(s_m) = 2 e_m`.
pub fn spanning_vector<F: Field>(ctx: &F::Ctx, m: usize) -> TriVector<F> {
    let m0 = m - 1;
    let planes: [[usize; 2]; 2] = match m0 % 3 {
        0 => [[1, 4], [2, 5]],
        1 => [[0, 3], [2, 5]],
        _ => [[0, 3], [1, 4]],
    };
    let mut t = TriVector::zero(ctx);
    let one = F::one_in(ctx);
    for [a, b] in planes {
        t.add_term(&one, m0, a, b);
    }
    t
}

/// The section `ι: V6 → ∧³V6` with `ψ∘ι = id`, `ι(e_m) = s_m / 2`.
pub fn section_iota<F: Field>(ctx: &F::Ctx, v: &[F]) -> TriVector<F> {
    assert_eq!(v.len(), 6);
    let half = F::half(ctx);
    let mut t = TriVector::zero(ctx);
    for (m, c) in v.iter().enumerate() {
        if !c.eq_zero() {
            t = t.add(&spanning_vector(ctx, m + 1).scale(&(c.clone() * &half)));
        }
    }
    t
}

/// `(x, v)` with `v = ψ(T)` and `x = T − ι(v) ∈ ker ψ`.
pub fn split_components<F: Field>(t: &TriVector<F>) -> (TriVector<F>, Vec<F>) {
    let v = contract_psi(t);
    let x = t.sub(&section_iota(&t.ctx, &v));
    (x, v)
}

/// `x + ι(v)`.
pub fn join_components<F: Field>(x: &TriVector<F>, v: &[F]) -> TriVector<F> {
    x.add(&section_iota(&x.ctx, v))
}

/// The third compound matrix of `g`: its action on `∧³`.
pub fn wedge3_matrix<F: Field>(g: &Matrix<F>) -> Matrix<F> {
    assert!(g.rows() == 6 && g.cols() == 6);
    let minor = |r: [usize; 3], c: [usize; 3]| -> F {
        let e = |i: usize, j: usize| g[(r[i], c[j])].clone();
        e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
    };
    Matrix::from_fn(g.ctx(), 20, 20, |r, c| minor(TRIPLES[r], TRIPLES[c]))
}

/// `e_i∧e_j∧e_l ↦ g e_i ∧ g e_j ∧ g e_l`.
pub fn act_wedge3<F: Field>(g: &Matrix<F>, t: &TriVector<F>) -> TriVector<F> {
    TriVector::from_coords(&t.ctx, wedge3_matrix(g).mul_vec(&t.coords))
}

/// Action on `X ⊕ V6` with `∧³` on the X-part and the standard representation on
/// the V6-part, scaled by `(alpha, beta)` from `GL1²`.
pub fn act_product<F: Field>(g: &Matrix<F>, alpha: &F, beta: &F, t: &TriVector<F>) -> TriVector<F> {
    let (x, v) = split_components(t);
    let gx = act_wedge3(g, &x).scale(alpha);
    let gv: Vec<F> = g.mul_vec(&v).into_iter().map(|c| c * beta).collect();
    join_components(&gx, &gv)
}

/// [`act_product`] with trivial `GL1²` part.
pub fn act_decomposed<F: Field>(g: &Matrix<F>, t: &TriVector<F>) -> TriVector<F> {
    let one = F::one_in(g.ctx());
    act_product(g, &one, &one, t)
}

/// Derivation action of `ξ ∈ gl6` on `∧³`.
pub fn act_lie<F: Field>(xi: &Matrix<F>, t: &TriVector<F>) -> TriVector<F> {
    let mut out = TriVector::zero(&t.ctx);
    for (k, c) in t.coords.iter().enumerate() {
        if c.eq_zero() {
            continue;
        }
        let tr = TRIPLES[k];
        for slot in 0..3 {
            for r in 0..6 {
                let a = &xi[(r, tr[slot])];
                if a.eq_zero() {
                    continue;
                }
                let mut idx = tr;
                idx[slot] = r;
                out.add_term(&(a.clone() * c), idx[0], idx[1], idx[2]);
            }
        }
    }
    out
}

/// The 20x6 matrix of `ψ`.
pub fn psi_matrix<F: Field>(ctx: &F::Ctx) -> Matrix<F> {
    let mut m = Matrix::zeros(ctx, 6, 20);
    for k in 0..20 {
        let mut e = TriVector::zero(ctx);
        e.coords[k] = F::one_in(ctx);
        for (r, c) in contract_psi(&e).into_iter().enumerate() {
            m[(r, k)] = c;
        }
    }
    m
}

/// Basis of `X = ker ψ` (14 vectors).
pub fn kernel_basis<F: Field>(ctx: &F::Ctx) -> Vec<TriVector<F>> {
    psi_matrix::<F>(ctx).nullspace().into_iter().map(|v| TriVector::from_coords(ctx, v)).collect()
}

pub fn random_trivector<F: Field, R: Rng>(ctx: &F::Ctx, rng: &mut R, bound: i64) -> TriVector<F> {
    TriVector::from_coords(ctx, (0..20).map(|_| F::from_int(ctx, rng.gen_range(-bound..=bound))).collect())
}
