#![allow(dead_code)]

use dunkl_core::builders::OperatorName;
use dunkl_core::cli::{Atom, Expr, Func};
use dunkl_core::opalg::{LaurentPolynomial, Monomial, OperatorElement, VarFactor};
use dunkl_core::scalars::{rat, BaseNumber, Scalar};
use dunkl_core::states::GaussState;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub fn small_rat() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

/// Sparse elements of Q(i, sqrt2): each component is zero half the time.
pub fn base_number() -> impl Strategy<Value = BaseNumber> {
    let comp = || prop_oneof![Just(rat(0, 1)), small_rat()];
    (comp(), comp(), comp(), comp()).prop_map(|(p, q, r, s)| BaseNumber::new(p, q, r, s))
}

pub fn nonzero_base_number() -> impl Strategy<Value = BaseNumber> {
    base_number().prop_filter("nonzero", |b| !b.is_zero())
}

pub fn scalar(nparams: usize) -> impl Strategy<Value = Scalar> {
    prop::collection::vec((prop::collection::vec(0u32..=2, nparams), base_number()), 0..4)
        .prop_map(move |terms| Scalar::from_terms(nparams, terms).expect("arity matches"))
}

pub fn var_factor() -> impl Strategy<Value = VarFactor> {
    (any::<bool>(), 0u32..=2, -2i32..=2).prop_map(|(reflect, deriv, xpow)| VarFactor { reflect, deriv, xpow })
}

pub fn operator(nvars: usize, nparams: usize) -> impl Strategy<Value = OperatorElement> {
    prop::collection::vec((prop::collection::vec(var_factor(), nvars), scalar(nparams)), 1..4).prop_map(
        move |terms| {
            let mut acc = OperatorElement::zero(nvars, nparams);
            for (fs, c) in terms {
                acc = &acc + &OperatorElement::monomial(Monomial::new(fs), c);
            }
            acc
        },
    )
}

pub fn laurent(nvars: usize, nparams: usize, lo: i32, hi: i32) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((prop::collection::vec(lo..=hi, nvars), scalar(nparams)), 1..4)
        .prop_map(move |terms| LaurentPolynomial::from_terms(nvars, nparams, terms))
}

pub fn gauss_state(nvars: usize, nparams: usize) -> impl Strategy<Value = GaussState> {
    laurent(nvars, nparams, -2, 3).prop_map(GaussState::new)
}

pub fn polynomial_state(nvars: usize, nparams: usize) -> impl Strategy<Value = GaussState> {
    laurent(nvars, nparams, 0, 4).prop_map(GaussState::new)
}

/// Parameter values strictly above -1/2.
pub fn admissible_mu() -> impl Strategy<Value = BigRational> {
    (-1i64..=12, 1i64..=4)
        .prop_map(|(n, d)| rat(n, d))
        .prop_filter("mu > -1/2", |m| *m > rat(-1, 2))
}

/// Random DSL trees over two variables; divisions and negative powers only by `x_i`.
pub fn leaf() -> impl Strategy<Value = Expr> {
    let atoms = prop_oneof![
        (0i64..=7).prop_map(|n| Atom::Int(BigInt::from(n))),
        (1usize..=2).prop_map(Atom::X),
        (1usize..=2).prop_map(Atom::D),
        (1usize..=2).prop_map(Atom::R),
        (1usize..=2).prop_map(Atom::Mu),
        Just(Atom::I),
        Just(Atom::Sqrt2),
        prop::sample::select(vec![
            OperatorName::JPlus,
            OperatorName::JMinus,
            OperatorName::JZero,
            OperatorName::APlus(1),
            OperatorName::AMinus(2),
            OperatorName::DunklDerivative(1),
            OperatorName::SusyCharge1D(2),
            OperatorName::FPlus,
        ])
        .prop_map(Atom::Named),
    ];
    atoms.prop_map(Expr::Atom)
}

pub fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 12, 2, |inner| {
        let b = |e| Box::new(e);
        prop_oneof![
            inner.clone().prop_map(move |e| Expr::Neg(b(e))),
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| Expr::Add(b(l), b(r))),
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| Expr::Sub(b(l), b(r))),
            (inner.clone(), inner.clone()).prop_map(move |(l, r)| Expr::Mul(b(l), b(r))),
            (inner.clone(), 0i32..=2).prop_map(move |(e, n)| Expr::Pow(b(e), n)),
            ((1usize..=2), -2i32..=-1).prop_map(move |(v, n)| Expr::Pow(b(Expr::Atom(Atom::X(v))), n)),
            (inner.clone(), (1usize..=2)).prop_map(move |(e, v)| Expr::Div(b(e), b(Expr::Atom(Atom::X(v))))),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Call(Func::Comm, vec![l, r])),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Expr::Call(Func::Acomm, vec![l, r])),
            inner.prop_map(|e| Expr::Call(Func::Adjoint, vec![e])),
        ]
    })
}
