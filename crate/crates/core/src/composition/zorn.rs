//! Zorn's vector matrices `[[a, x], [y, b]]` with `N = ab - x·y`.

use crate::scalars::Field;

#[derive(Debug, Clone, PartialEq)]
pub struct ZornElement<F: Field> {
    pub a: F,
    pub x: [F; 3],
    pub y: [F; 3],
    pub b: F,
}

fn dot<F: Field>(u: &[F; 3], v: &[F; 3]) -> F {
    u[0].clone() * &v[0] + u[1].clone() * &v[1] + u[2].clone() * &v[2]
}

fn cross<F: Field>(u: &[F; 3], v: &[F; 3]) -> [F; 3] {
    [
        u[1].clone() * &v[2] - u[2].clone() * &v[1],
        u[2].clone() * &v[0] - u[0].clone() * &v[2],
        u[0].clone() * &v[1] - u[1].clone() * &v[0],
    ]
}

fn lin<F: Field>(s: &F, u: &[F; 3], t: &F, v: &[F; 3]) -> [F; 3] {
    std::array::from_fn(|i| s.clone() * &u[i] + t.clone() * &v[i])
}

impl<F: Field> ZornElement<F> {
    pub fn new(a: F, x: [F; 3], y: [F; 3], b: F) -> Self {
        ZornElement { a, x, y, b }
    }

    pub fn from_ints(ctx: &F::Ctx, a: i64, x: [i64; 3], y: [i64; 3], b: i64) -> Self {
        let f = |n: i64| F::from_int(ctx, n);
        ZornElement { a: f(a), x: x.map(f), y: y.map(f), b: f(b) }
    }

    /// Coordinates `(a, x1, x2, x3, y1, y2, y3, b)`.
    pub fn from_coords(c: &[F]) -> Self {
        assert_eq!(c.len(), 8);
        ZornElement {
            a: c[0].clone(),
            x: [c[1].clone(), c[2].clone(), c[3].clone()],
            y: [c[4].clone(), c[5].clone(), c[6].clone()],
            b: c[7].clone(),
        }
    }

    pub fn coords(&self) -> Vec<F> {
        let mut v = vec![self.a.clone()];
        v.extend(self.x.iter().cloned());
        v.extend(self.y.iter().cloned());
        v.push(self.b.clone());
        v
    }

    pub fn one(ctx: &F::Ctx) -> Self {
        Self::from_ints(ctx, 1, [0; 3], [0; 3], 1)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_coords(&self.coords().into_iter().map(|t| t * c).collect::<Vec<_>>())
    }

    pub fn norm(&self) -> F {
        self.a.clone() * &self.b - dot(&self.x, &self.y)
    }

    pub fn conj(&self) -> Self {
        ZornElement {
            a: self.b.clone(),
            x: self.x.clone().map(|t| -t),
            y: self.y.clone().map(|t| -t),
            b: self.a.clone(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let x = lin(&self.a, &o.x, &o.b, &self.x);
        let yy = cross(&self.y, &o.y);
        let y = lin(&o.a, &self.y, &self.b, &o.y);
        let xx = cross(&self.x, &o.x);
        ZornElement {
            a: self.a.clone() * &o.a + dot(&self.x, &o.y),
            x: std::array::from_fn(|i| x[i].clone() - &yy[i]),
            y: std::array::from_fn(|i| y[i].clone() + &xx[i]),
            b: self.b.clone() * &o.b + dot(&self.y, &o.x),
        }
    }
}

/// Product and the norm of the left factor.
pub fn zorn_ops<F: Field>(u: &ZornElement<F>, v: &ZornElement<F>) -> (ZornElement<F>, F) {
    (u.mul(v), u.norm())
}
