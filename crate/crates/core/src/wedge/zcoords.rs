use super::TriVector;
use crate::matrix::Matrix;
use crate::scalars::Field;

/// The coordinates `(x0, y0, (a_ij), (b_ij))` of `∧³V6 ≅ Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZCoords<F: Field> {
    pub x0: F,
    pub y0: F,
    pub a: Matrix<F>,
    pub b: Matrix<F>,
}

/// `a_rc` reads `e1e2e3` with slot `c` replaced by `e_{r+3}`; `b_rc` reads `e4e5e6` with slot
/// `c` replaced by `e_r`.
fn slot_triple(base: [usize; 3], c: usize, v: usize) -> [usize; 3] {
    let mut t = base;
    t[c] = v;
    t
}

pub fn z_identify<F: Field>(t: &TriVector<F>) -> ZCoords<F> {
    let ctx = t.ctx();
    let a = Matrix::from_fn(ctx, 3, 3, |r, c| {
        let [i, j, l] = slot_triple([1, 2, 3], c, r + 4);
        t.get(i, j, l)
    });
    let b = Matrix::from_fn(ctx, 3, 3, |r, c| {
        let [i, j, l] = slot_triple([4, 5, 6], c, r + 1);
        t.get(i, j, l)
    });
    ZCoords { x0: -t.get(1, 2, 3), y0: -t.get(4, 5, 6), a, b }
}

pub fn z_to_trivector<F: Field>(z: &ZCoords<F>) -> TriVector<F> {
    let ctx = z.a.ctx().clone();
    let mut t = TriVector::zero(&ctx);
    t.add_term(&-z.x0.clone(), 0, 1, 2);
    t.add_term(&-z.y0.clone(), 3, 4, 5);
    for r in 0..3 {
        for c in 0..3 {
            let [i, j, l] = slot_triple([0, 1, 2], c, r + 3);
            t.add_term(&z.a[(r, c)], i, j, l);
            let [i, j, l] = slot_triple([3, 4, 5], c, r);
            t.add_term(&z.b[(r, c)], i, j, l);
        }
    }
    t
}
