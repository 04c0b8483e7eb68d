//! Gaussian-envelope states `p(x)·exp(-|x|²/2)` with Laurent `p`.
//!
//! The Dunkl operators act on these states polynomially, so spectra,
//! degeneracies and ladder coefficients come out exactly.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::builders::{BuildError, Mu, OperatorName, Registry};
use crate::opalg::{LaurentPolynomial, OpError, OperatorElement};
use crate::scalars::{int, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("result has a pole: negative power of x in {0}")]
    Pole(String),
    #[error("zero state")]
    ZeroState,
    #[error("variable count mismatch: operator has {op}, state has {state}")]
    VariableMismatch { op: usize, state: usize },
    #[error("spectrum tables support 1 or 2 dimensions, got {0}")]
    Dimension(usize),
    #[error("states are not linearly reducible over the coefficient ring")]
    NotReducible,
    #[error(transparent)]
    Build(#[from] BuildError),
}

impl From<OpError> for StateError {
    fn from(e: OpError) -> Self {
        StateError::Build(e.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussState {
    p: LaurentPolynomial,
}

impl GaussState {
    pub fn new(p: LaurentPolynomial) -> Self {
        GaussState { p }
    }

    /// `exp(-|x|²/2)` itself.
    pub fn ground(nvars: usize, nparams: usize) -> Self {
        GaussState::new(LaurentPolynomial::one(nvars, nparams))
    }

    pub fn polynomial(&self) -> &LaurentPolynomial {
        &self.p
    }

    pub fn nvars(&self) -> usize {
        self.p.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        GaussState::new(self.p.scale(s))
    }

    /// `A·s`. Fails if a polynomial state is sent to a state with a pole.
    pub fn apply(&self, a: &OperatorElement) -> Result<GaussState, StateError> {
        let out = self.apply_laurent(a)?;
        if self.p.is_polynomial() && !out.p.is_polynomial() {
            return Err(StateError::Pole(out.p.to_string()));
        }
        Ok(out)
    }

    /// `A·s` without the pole check; Laurent states map to Laurent states.
    pub fn apply_laurent(&self, a: &OperatorElement) -> Result<GaussState, StateError> {
        if a.nvars() != self.nvars() {
            return Err(StateError::VariableMismatch {
                op: a.nvars(),
                state: self.nvars(),
            });
        }
        let nvars = self.nvars();
        let nparams = self.p.nparams();
        let mut out = LaurentPolynomial::zero(nvars, nparams);
        for (m, c) in a.terms() {
            for (exps, s) in self.p.terms() {
                // Per variable: R, then ∂ with the envelope rule ∂(f e) = (f' - x f) e, then x^a.
                let mut acc: Vec<(BigRational, Vec<i32>)> = vec![(BigRational::from_integer(1.into()), Vec::new())];
                for (fac, &k) in m.factors().iter().zip(exps) {
                    let sign = if fac.reflect && k.rem_euclid(2) == 1 { -1 } else { 1 };
                    let mut poly: Vec<(BigRational, i32)> = vec![(int(sign), k)];
                    for _ in 0..fac.deriv {
                        poly = envelope_derivative(&poly);
                    }
                    let mut next = Vec::with_capacity(acc.len() * poly.len());
                    for (c0, e0) in &acc {
                        for (c1, e1) in &poly {
                            let mut e = e0.clone();
                            e.push(e1 + fac.xpow);
                            next.push((c0 * c1, e));
                        }
                    }
                    acc = next;
                }
                let cs = c * s;
                for (k, e) in acc {
                    out.add_term(e, cs.scale_rational(&k));
                }
            }
        }
        Ok(GaussState::new(out))
    }

    /// `λ` with `self = λ·other`, if one exists in the coefficient ring.
    pub fn ratio_to(&self, other: &GaussState) -> Result<Option<Scalar>, StateError> {
        let (lead, lc) = other.p.leading().ok_or(StateError::ZeroState)?;
        let Some(num) = self.p.coefficient(lead) else {
            return Ok(self.is_zero().then(|| Scalar::zero(other.p.nparams())));
        };
        let Some(lambda) = num.try_div(lc) else {
            return Ok(None);
        };
        Ok((other.scale(&lambda) == *self).then_some(lambda))
    }
}

/// One-variable `(f e)' = (f' - x f) e` on sparse coefficient lists.
fn envelope_derivative(poly: &[(BigRational, i32)]) -> Vec<(BigRational, i32)> {
    let mut out: Vec<(BigRational, i32)> = Vec::with_capacity(poly.len() * 2);
    let mut push = |c: BigRational, e: i32| {
        if c.is_zero() {
            return;
        }
        if let Some(slot) = out.iter_mut().find(|(_, k)| *k == e) {
            slot.0 += c;
        } else {
            out.push((c, e));
        }
    };
    for (c, e) in poly {
        push(c * int(i64::from(*e)), e - 1);
        push(-c.clone(), e + 1);
    }
    out.retain(|(c, _)| !c.is_zero());
    out
}

/// `Π_i (A+_i)^{n_i}` applied to the ground state, unnormalized.
pub fn fock(reg: &Registry, occupations: &[u32]) -> Result<GaussState, StateError> {
    let dims = reg.dims();
    if occupations.len() != dims {
        return Err(StateError::VariableMismatch {
            op: dims,
            state: occupations.len(),
        });
    }
    let mut s = GaussState::ground(dims, dims);
    for (v, &n) in occupations.iter().enumerate() {
        let ap = reg.build(OperatorName::APlus(v + 1))?;
        for _ in 0..n {
            s = s.apply(&ap)?;
        }
    }
    Ok(s)
}

/// `λ` with `A s = λ s`, or `None` when `s` is not an eigenstate.
pub fn eigencheck(a: &OperatorElement, s: &GaussState) -> Result<Option<Scalar>, StateError> {
    if s.is_zero() {
        return Err(StateError::ZeroState);
    }
    s.apply_laurent(a)?.ratio_to(s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumRow {
    pub level: u32,
    pub energy: Scalar,
    pub degeneracy: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumTable {
    pub dims: usize,
    pub rows: Vec<SpectrumRow>,
    /// Ladder coefficients `c_k` for each variable, `k = 1..=max(levels, 1)`.
    pub ladder: Vec<Vec<Scalar>>,
    pub admissible: bool,
}

/// Energy levels of the Dunkl oscillator in `dims ∈ {1, 2}` dimensions.
///
/// Every level `N` is populated by the Fock states with total occupation `N`;
/// each must be an eigenstate of the Hamiltonian with one common energy, and
/// the degeneracy is their rank.
pub fn spectrum_table(dims: usize, mu: &[BigRational], max_level: u32) -> Result<SpectrumTable, StateError> {
    if !(1..=2).contains(&dims) {
        return Err(StateError::Dimension(dims));
    }
    let reg = Registry::new(dims, Mu::Numeric(mu.to_vec()))?;
    let h = match dims {
        1 => reg.build(OperatorName::Hamiltonian1D(1))?,
        _ => reg.build(OperatorName::Hamiltonian2D)?,
    };
    let mut rows = Vec::new();
    for level in 0..=max_level {
        let occupations: Vec<Vec<u32>> = match dims {
            1 => vec![vec![level]],
            _ => (0..=level).map(|n1| vec![n1, level - n1]).collect(),
        };
        let mut energy: Option<Scalar> = None;
        let mut states = Vec::new();
        for occ in occupations {
            let s = fock(&reg, &occ)?;
            let lambda = eigencheck(&h, &s)?.ok_or(StateError::NotReducible)?;
            match &energy {
                Some(e) if *e != lambda => return Err(StateError::NotReducible),
                _ => energy = Some(lambda),
            }
            states.push(s);
        }
        rows.push(SpectrumRow {
            level,
            energy: energy.expect("at least one state per level"),
            degeneracy: rank(&states)?,
        });
    }
    let ladder = (1..=dims)
        .map(|v| ladder_coefficients_in(&reg, v, max_level.max(1)))
        .collect::<Result<Vec<_>, _>>()?;
    let admissible = ladder.iter().flatten().all(is_positive);
    Ok(SpectrumTable {
        dims,
        rows,
        ladder,
        admissible,
    })
}

/// Rank by echelon reduction on leading monomials.
pub fn rank(states: &[GaussState]) -> Result<usize, StateError> {
    let mut basis: Vec<LaurentPolynomial> = Vec::new();
    for s in states {
        let mut p = s.polynomial().clone();
        'reduce: while !p.is_zero() {
            let (lead, lc) = p.leading().map(|(e, c)| (e.to_vec(), c.clone())).expect("nonzero");
            for b in &basis {
                let (bl, bc) = b.leading().expect("basis element nonzero");
                if bl == lead.as_slice() {
                    let f = lc.try_div(bc).ok_or(StateError::NotReducible)?;
                    p = &p - &b.scale(&f);
                    continue 'reduce;
                }
            }
            basis.push(p);
            break;
        }
    }
    Ok(basis.len())
}

/// `c_k` with `A- fock(k) = c_k fock(k-1)` for the 1D oscillator, `k = 1..=max_n`.
pub fn ladder_norm_coefficients(max_n: u32, mu: &Mu) -> Result<Vec<Scalar>, StateError> {
    let reg = Registry::new(1, mu.clone())?;
    ladder_coefficients_in(&reg, 1, max_n)
}

fn ladder_coefficients_in(reg: &Registry, var: usize, max_n: u32) -> Result<Vec<Scalar>, StateError> {
    let dims = reg.dims();
    let ap = reg.build(OperatorName::APlus(var))?;
    let am = reg.build(OperatorName::AMinus(var))?;
    let mut prev = GaussState::ground(dims, dims);
    let mut out = Vec::new();
    for _ in 1..=max_n {
        let next = prev.apply(&ap)?;
        let lowered = next.apply(&am)?;
        out.push(lowered.ratio_to(&prev)?.ok_or(StateError::NotReducible)?);
        prev = next;
    }
    Ok(out)
}

/// True for a constant, real, strictly positive scalar.
pub fn is_positive(s: &Scalar) -> bool {
    s.as_constant()
        .and_then(|c| c.as_rational().map(|q| q.is_positive()))
        .unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn reg1() -> Registry {
        Registry::parametric(1)
    }

    #[test]
    fn ground_state_annihilated() {
        let r = reg1();
        let g = GaussState::ground(1, 1);
        assert!(g.apply(&r.build(OperatorName::AMinus(1)).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn ground_energy() {
        let r = reg1();
        let g = GaussState::ground(1, 1);
        let e = eigencheck(&r.build(OperatorName::Hamiltonian1D(1)).unwrap(), &g).unwrap().unwrap();
        assert_eq!(e, &r.mu(1) + &r.q(1, 2));
    }

    #[test]
    fn reflection_parity_of_fock_states() {
        let r = reg1();
        let s = fock(&r, &[3]).unwrap();
        assert_eq!(s.apply(&r.r(1)).unwrap(), s.scale(&Scalar::from_int(1, -1)));
    }

    #[test]
    fn fock_shapes() {
        let r = reg1();
        assert_eq!(fock(&r, &[0]).unwrap(), GaussState::ground(1, 1));
        let f1 = fock(&r, &[1]).unwrap();
        assert_eq!(f1.polynomial().len(), 1);
        assert_eq!(f1.polynomial().leading().unwrap().0, &[1]);
    }

    #[test]
    fn fock_2_1_energy() {
        let r = Registry::parametric(2);
        let s = fock(&r, &[2, 1]).unwrap();
        let e = eigencheck(&r.build(OperatorName::Hamiltonian2D).unwrap(), &s).unwrap().unwrap();
        assert_eq!(e, &(&r.q(4, 1) + &r.mu(1)) + &r.mu(2));
    }

    #[test]
    fn not_an_eigenstate() {
        let r = reg1();
        let xd = &r.x(1) * &r.d(1);
        let g = GaussState::ground(1, 1);
        assert_eq!(eigencheck(&xd, &g).unwrap(), None);
        assert!(matches!(
            eigencheck(&xd, &GaussState::new(LaurentPolynomial::zero(1, 1))),
            Err(StateError::ZeroState)
        ));
    }

    #[test]
    fn pole_is_reported() {
        let r = reg1();
        let g = GaussState::ground(1, 1);
        assert!(matches!(g.apply(&r.x_pow(1, -1)), Err(StateError::Pole(_))));
    }

    #[test]
    fn first_ladder_coefficient() {
        let c = ladder_norm_coefficients(3, &Mu::Parametric).unwrap();
        let mu = Scalar::param(1, 0);
        assert_eq!(c[0], &Scalar::one(1) + &mu.scale_rational(&rat(2, 1)));
        assert_eq!(c[1], Scalar::from_int(1, 2));
        let neg = ladder_norm_coefficients(1, &Mu::Numeric(vec![rat(-3, 4)])).unwrap();
        assert_eq!(neg[0], Scalar::from_rational(1, rat(-1, 2)));
        assert!(!is_positive(&neg[0]));
    }

    #[test]
    fn spectrum_example() {
        let t = spectrum_table(2, &[rat(1, 3), rat(1, 2)], 3).unwrap();
        let last = &t.rows[3];
        assert_eq!(last.energy, Scalar::from_rational(2, rat(29, 6)));
        assert_eq!(last.degeneracy, 4);
        assert!(t.admissible);
        assert!(matches!(spectrum_table(3, &[], 1), Err(StateError::Dimension(3))));
    }

    #[test]
    fn rank_detects_dependence() {
        let r = Registry::parametric(2);
        let a = fock(&r, &[1, 0]).unwrap();
        let b = a.scale(&Scalar::from_int(2, 3));
        assert_eq!(rank(&[a.clone(), b]).unwrap(), 1);
        assert_eq!(rank(&[a, fock(&r, &[0, 1]).unwrap()]).unwrap(), 2);
    }
}
