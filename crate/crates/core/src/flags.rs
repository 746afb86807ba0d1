//! Maximal flags `k ⊂ K ⊂ Q ⊂ C` attached to semistable normal-form points over Q.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::composition::{build_flag_tower, CompositionError, OctonionClass};
use crate::invariants::f2;
use crate::orbits::{lie_stabilizer, normal_form_point, quaternion_norm_from_stabilizer, NormalFormX, OrbitError};
use crate::qforms::{
    class_to_int, hermitian_trace_form, hilbert_symbol_int, is_pfister_shape, qform_equivalent, qform_invariants,
    square_class, HermitianForm, Place, QForm, QFormError,
};
use crate::scalars::{Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlagError {
    #[error("f1 = 0: the point is not semistable")]
    F1Zero,
    #[error("f2 = 0 for pattern {0}: the point is not semistable")]
    F2Zero(usize),
    #[error("not a Pfister form: {0}")]
    NotPfister(String),
    #[error("dimension {0} is not 2, 4 or 8")]
    BadDimension(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Orbit(#[from] OrbitError),
    #[error(transparent)]
    QForm(#[from] QFormError),
    #[error(transparent)]
    Composition(#[from] CompositionError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompositionClass {
    /// `K = Q(sqrt(-d))` for the norm `<1, d>`, `d` squarefree.
    Quadratic {
        d: BigInt,
        split: bool,
    },
    Quaternion {
        ramified: BTreeSet<Place>,
    },
    Octonion(OctonionClass),
}

impl fmt::Display for CompositionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompositionClass::Quadratic { split: true, .. } => write!(f, "QxQ"),
            CompositionClass::Quadratic { d, .. } => write!(f, "Q(sqrt({}))", -d),
            CompositionClass::Quaternion { ramified } if ramified.is_empty() => write!(f, "M2(Q)"),
            CompositionClass::Quaternion { ramified } => {
                let places: Vec<String> = ramified.iter().map(|p| p.to_string()).collect();
                write!(f, "quaternion division algebra ramified at {{{}}}", places.join(", "))
            }
            CompositionClass::Octonion(OctonionClass::Split) => write!(f, "Zorn(Q)"),
            CompositionClass::Octonion(OctonionClass::Division) => write!(f, "division octonions"),
        }
    }
}

/// Places where a 4-dimensional Pfister form is anisotropic.
pub fn quaternion_ramification(q: &QForm<Rational>) -> Result<BTreeSet<Place>, FlagError> {
    let inv = qform_invariants(q)?;
    let m1 = BigInt::from(-1);
    let mut out = BTreeSet::new();
    for (&v, &h) in &inv.hasse {
        if h != hilbert_symbol_int(&m1, &m1, v)? {
            out.insert(v);
        }
    }
    Ok(out)
}

pub fn classify_composition_form(q: &QForm<Rational>) -> Result<CompositionClass, FlagError> {
    if ![2, 4, 8].contains(&q.dim()) {
        return Err(FlagError::BadDimension(q.dim()));
    }
    if !is_pfister_shape(q)? {
        return Err(FlagError::NotPfister(q.to_string()));
    }
    Ok(match q.dim() {
        2 => {
            let (neg, primes) = square_class(&q.det())?;
            let d = class_to_int(neg, &primes);
            let split = (-d.clone()) == BigInt::from(1);
            CompositionClass::Quadratic { d, split }
        }
        4 => CompositionClass::Quaternion { ramified: quaternion_ramification(q)? },
        _ => {
            let (p, n) = qform_invariants(q)?.signature;
            CompositionClass::Octonion(if p > 0 && n > 0 { OctonionClass::Split } else { OctonionClass::Division })
        }
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlagDescriptor {
    pub normal_form: NormalFormX<Rational>,
    pub pattern: usize,
    /// `f1` of the point.
    pub i: Rational,
    /// Squarefree part of `i`; `K = Q(sqrt(-i))`.
    pub i_class: BigInt,
    pub split: bool,
    pub h: HermitianForm<Rational>,
    pub quadratic_norm: QForm<Rational>,
    pub quaternion_norm: QForm<Rational>,
    pub octonion_norm: QForm<Rational>,
    pub quadratic_class: CompositionClass,
    pub quaternion_class: CompositionClass,
    pub octonion_class: OctonionClass,
}

impl FlagDescriptor {
    pub fn quaternion_ramification(&self) -> BTreeSet<Place> {
        match &self.quaternion_class {
            CompositionClass::Quaternion { ramified } => ramified.clone(),
            _ => unreachable!("quaternion class"),
        }
    }

    /// Trace form of `h = diag(y1, y2, y3)`.
    pub fn h_trace_form(&self) -> QForm<Rational> {
        hermitian_trace_form(&self.h)
    }
}

/// The flag of `(x, v)` with `x` in normal form and `v` the `m`-th pattern `(2, -y0/y_m)`.
pub fn flag_of_point(nf: &NormalFormX<Rational>, m: usize) -> Result<FlagDescriptor, FlagError> {
    let i = nf.f1();
    if i.eq_zero() {
        return Err(FlagError::F1Zero);
    }
    let v = nf.pattern(m)?;
    let point = normal_form_point(nf, &v);
    if f2(&point).eq_zero() {
        return Err(FlagError::F2Zero(m));
    }
    let (neg, primes) = square_class(&i)?;
    let i_class = class_to_int(neg, &primes);
    let split = (-i.clone()).is_square().map_err(QFormError::from)?;
    let one = Rational::one_in(&());
    let h = HermitianForm::new(i.clone(), nf.ys().map(|y| y.clone()).to_vec())?;
    let quadratic_norm = QForm::new(&(), vec![one.clone(), i.clone()])?;
    let ym = nf.ys()[m - 1].clone();
    let quaternion_norm = hermitian_trace_form(&HermitianForm::new(i.clone(), vec![one.clone(), ym.clone()])?);
    let mut full = vec![one];
    full.extend(nf.ys().map(|y| y.clone()));
    let octonion_norm = hermitian_trace_form(&HermitianForm::new(i.clone(), full)?);

    let quadratic_class = classify_composition_form(&quadratic_norm)?;
    let quaternion_class = classify_composition_form(&quaternion_norm)?;
    let CompositionClass::Octonion(octonion_class) = classify_composition_form(&octonion_norm)? else {
        unreachable!("dimension 8")
    };

    let extracted = quaternion_norm_from_stabilizer(&lie_stabilizer(&point))?;
    if !qform_equivalent(&extracted, &quaternion_norm)? {
        return Err(FlagError::Inconsistent(format!(
            "stabilizer gives {extracted}, trace form gives {quaternion_norm}"
        )));
    }
    let tower = build_flag_tower(&i, &ym, octonion_class)?;
    if !qform_equivalent(&tower.q.norm_form(), &quaternion_norm)?
        || !qform_equivalent(&tower.c.norm_form(), &octonion_norm)?
    {
        return Err(FlagError::Inconsistent("Cayley-Dickson tower disagrees with the trace forms".into()));
    }
    Ok(FlagDescriptor {
        normal_form: nf.clone(),
        pattern: m,
        i,
        i_class,
        split,
        h,
        quadratic_norm,
        quaternion_norm,
        octonion_norm,
        quadratic_class,
        quaternion_class,
        octonion_class,
    })
}

/// Isomorphism of flags, decided on classifying data.
pub fn flags_equal(a: &FlagDescriptor, b: &FlagDescriptor) -> Result<bool, FlagError> {
    Ok(a.i_class == b.i_class
        && qform_equivalent(&a.h_trace_form(), &b.h_trace_form())?
        && a.quaternion_ramification() == b.quaternion_ramification()
        && a.octonion_class == b.octonion_class)
}
