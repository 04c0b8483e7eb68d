//! Registry of the named operators of the Dunkl oscillator model.
//!
//! Each [`OperatorName`] builds to an [`OperatorElement`] over `dims`
//! variables, with coefficients polynomial in `mu1..mu_dims` (or with some
//! parameters fixed to rationals, see [`Mu`]). Composite operators are
//! assembled by multiplying previously built parts.

use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::opalg::{LaurentPolynomial, OpError, OperatorElement};
use crate::scalars::{rat, BaseNumber, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("unknown operator name `{0}`")]
    UnknownName(String),
    #[error("{name} needs variable {index} but the dimension is {dims}")]
    IndexOutOfRange { name: String, index: usize, dims: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("superpotential parity violated: {0}")]
    Parity(&'static str),
    #[error("superpotential must depend on a single variable")]
    NotUnivariate,
    #[error("{0} parameter values given for dimension {1}")]
    TooManyValues(usize, usize),
    #[error(transparent)]
    Op(#[from] OpError),
}

/// How the deformation parameters enter the built operators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Mu {
    /// Every `mu_i` stays symbolic.
    #[default]
    Parametric,
    /// `mu_1..mu_k` fixed to the given rationals; later parameters stay symbolic.
    Numeric(Vec<BigRational>),
}

impl Mu {
    pub fn is_parametric(&self) -> bool {
        matches!(self, Mu::Parametric)
    }
}

/// Variable indices are 1-based, as in the DSL (`x1`, `A+_2`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorName {
    DunklDerivative(usize),
    Hamiltonian1D(usize),
    Hamiltonian2D,
    APlus(usize),
    AMinus(usize),
    AZero(usize),
    BPlus(usize),
    BMinus(usize),
    JPlus,
    JMinus,
    JZero,
    CasimirSD,
    PParity,
    GaugedH(usize),
    GaugedAPlus(usize),
    GaugedAMinus(usize),
    ConformalQ(usize),
    ConformalS(usize),
    ConformalH(usize),
    ConformalK(usize),
    ConformalD(usize),
    GaugedH2D,
    KPlus,
    KMinus,
    K0,
    K1,
    K2,
    E0,
    E1,
    E2,
    FPlus,
    FMinus,
    SusyCharge1D(usize),
    SusyH1D(usize),
    SusyChargeND(usize),
    SusyHND(usize),
}

impl OperatorName {
    /// Highest variable index the operator touches.
    pub fn max_var(&self) -> usize {
        use OperatorName::*;
        match *self {
            DunklDerivative(i) | Hamiltonian1D(i) | APlus(i) | AMinus(i) | AZero(i) | BPlus(i)
            | BMinus(i) | GaugedH(i) | GaugedAPlus(i) | GaugedAMinus(i) | ConformalQ(i)
            | ConformalS(i) | ConformalH(i) | ConformalK(i) | ConformalD(i) | SusyCharge1D(i)
            | SusyH1D(i) => i,
            SusyChargeND(n) | SusyHND(n) => n,
            Hamiltonian2D | JPlus | JMinus | JZero | CasimirSD | PParity | GaugedH2D | KPlus
            | KMinus | K0 | K1 | K2 | E0 | E1 | E2 | FPlus | FMinus => 2,
        }
    }

    /// Parses a DSL identifier such as `J+`, `A-_1`, `D1`, `Q_susy`.
    /// `dims` resolves the dimension of `Q_susy` and `H_susy`.
    pub fn from_ident(ident: &str, dims: usize) -> Option<Self> {
        use OperatorName::*;
        let fixed = match ident {
            "H" => Some(Hamiltonian2D),
            "J+" => Some(JPlus),
            "J-" => Some(JMinus),
            "J0" => Some(JZero),
            "C" => Some(CasimirSD),
            "P" => Some(PParity),
            "Htilde" => Some(GaugedH2D),
            "K+" => Some(KPlus),
            "K-" => Some(KMinus),
            "K0" => Some(K0),
            "K1" => Some(K1),
            "K2" => Some(K2),
            "E0" => Some(E0),
            "E1" => Some(E1),
            "E2" => Some(E2),
            "F+" => Some(FPlus),
            "F-" => Some(FMinus),
            "Q_susy" => Some(SusyChargeND(dims)),
            "H_susy" => Some(SusyHND(dims)),
            _ => None,
        };
        if fixed.is_some() {
            return fixed;
        }
        let (base, index) = split_index(ident)?;
        let ctor: fn(usize) -> OperatorName = match base {
            "D" => DunklDerivative,
            "H" => Hamiltonian1D,
            "A+" => APlus,
            "A-" => AMinus,
            "A0" => AZero,
            "B+" => BPlus,
            "B-" => BMinus,
            "Ht" => GaugedH,
            "At+" => GaugedAPlus,
            "At-" => GaugedAMinus,
            "Qc" => ConformalQ,
            "Sc" => ConformalS,
            "Hc" => ConformalH,
            "Kc" => ConformalK,
            "Dc" => ConformalD,
            "Q" => SusyCharge1D,
            "Hs" => SusyH1D,
            _ => return None,
        };
        Some(ctor(index))
    }

    /// The DSL identifier; inverse of [`OperatorName::from_ident`].
    pub fn ident(&self) -> String {
        use OperatorName::*;
        match *self {
            DunklDerivative(i) => format!("D_{i}"),
            Hamiltonian1D(i) => format!("H_{i}"),
            Hamiltonian2D => "H".into(),
            APlus(i) => format!("A+_{i}"),
            AMinus(i) => format!("A-_{i}"),
            AZero(i) => format!("A0_{i}"),
            BPlus(i) => format!("B+_{i}"),
            BMinus(i) => format!("B-_{i}"),
            JPlus => "J+".into(),
            JMinus => "J-".into(),
            JZero => "J0".into(),
            CasimirSD => "C".into(),
            PParity => "P".into(),
            GaugedH(i) => format!("Ht_{i}"),
            GaugedAPlus(i) => format!("At+_{i}"),
            GaugedAMinus(i) => format!("At-_{i}"),
            ConformalQ(i) => format!("Qc_{i}"),
            ConformalS(i) => format!("Sc_{i}"),
            ConformalH(i) => format!("Hc_{i}"),
            ConformalK(i) => format!("Kc_{i}"),
            ConformalD(i) => format!("Dc_{i}"),
            GaugedH2D => "Htilde".into(),
            KPlus => "K+".into(),
            KMinus => "K-".into(),
            K0 => "K0".into(),
            K1 => "K1".into(),
            K2 => "K2".into(),
            E0 => "E0".into(),
            E1 => "E1".into(),
            E2 => "E2".into(),
            FPlus => "F+".into(),
            FMinus => "F-".into(),
            SusyCharge1D(i) => format!("Q_{i}"),
            SusyH1D(i) => format!("Hs_{i}"),
            SusyChargeND(_) => "Q_susy".into(),
            SusyHND(_) => "H_susy".into(),
        }
    }
}

impl fmt::Display for OperatorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ident())
    }
}

/// `D1` / `D_1` -> ("D", 1). Only single-letter bases may omit the underscore.
fn split_index(ident: &str) -> Option<(&str, usize)> {
    if let Some((base, idx)) = ident.rsplit_once('_') {
        let i: usize = idx.parse().ok()?;
        return (i > 0).then_some((base, i));
    }
    let digits = ident.len() - ident.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (base, idx) = ident.split_at(ident.len() - digits);
    if digits == 0 || !matches!(base, "D" | "H" | "Q") {
        return None;
    }
    let i: usize = idx.parse().ok()?;
    (i > 0).then_some((base, i))
}

/// A superpotential pair `(V, W)` in one variable, `V` even and `W` odd.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperpotentialPair {
    v: LaurentPolynomial,
    w: LaurentPolynomial,
}

impl SuperpotentialPair {
    /// Both potentials must be univariate Laurent polynomials in the first
    /// variable with one variable total.
    pub fn new(v: LaurentPolynomial, w: LaurentPolynomial) -> Result<Self, BuildError> {
        if v.nvars() != 1 || w.nvars() != 1 {
            return Err(BuildError::NotUnivariate);
        }
        if v.terms().any(|(e, _)| e[0].rem_euclid(2) != 0) {
            return Err(BuildError::Parity("V must be even"));
        }
        if w.terms().any(|(e, _)| e[0].rem_euclid(2) != 1) {
            return Err(BuildError::Parity("W must be odd"));
        }
        Ok(SuperpotentialPair { v, w })
    }

    pub fn v(&self) -> &LaurentPolynomial {
        &self.v
    }

    pub fn w(&self) -> &LaurentPolynomial {
        &self.w
    }
}

/// Builds named operators over a fixed dimension and parameter mode.
#[derive(Debug, Clone)]
pub struct Registry {
    dims: usize,
    mu: Mu,
}

impl Registry {
    pub fn new(dims: usize, mu: Mu) -> Result<Self, BuildError> {
        if dims == 0 {
            return Err(BuildError::ZeroDimension);
        }
        if let Mu::Numeric(v) = &mu {
            if v.len() > dims {
                return Err(BuildError::TooManyValues(v.len(), dims));
            }
        }
        Ok(Registry { dims, mu })
    }

    pub fn parametric(dims: usize) -> Self {
        Self::new(dims, Mu::Parametric).expect("nonzero dimension")
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn mu_mode(&self) -> &Mu {
        &self.mu
    }

    pub fn zero(&self) -> OperatorElement {
        OperatorElement::zero(self.dims, self.dims)
    }

    pub fn one(&self) -> OperatorElement {
        OperatorElement::one(self.dims, self.dims)
    }

    /// `x_i^a`, 1-based `i`.
    pub fn x_pow(&self, i: usize, a: i32) -> OperatorElement {
        OperatorElement::x_pow(self.dims, self.dims, i - 1, a)
    }

    pub fn x(&self, i: usize) -> OperatorElement {
        self.x_pow(i, 1)
    }

    pub fn d(&self, i: usize) -> OperatorElement {
        OperatorElement::d(self.dims, self.dims, i - 1)
    }

    pub fn r(&self, i: usize) -> OperatorElement {
        OperatorElement::r(self.dims, self.dims, i - 1)
    }

    /// The parameter `mu_i` as a scalar, already specialized if numeric.
    pub fn mu(&self, i: usize) -> Scalar {
        match &self.mu {
            Mu::Numeric(v) if i <= v.len() => Scalar::from_rational(self.dims, v[i - 1].clone()),
            _ => Scalar::param(self.dims, i - 1),
        }
    }

    pub fn scalar(&self, c: BaseNumber) -> Scalar {
        Scalar::constant(self.dims, c)
    }

    pub fn q(&self, num: i64, den: i64) -> Scalar {
        Scalar::from_rational(self.dims, rat(num, den))
    }

    /// `s · 1` as an operator.
    pub fn c(&self, s: Scalar) -> OperatorElement {
        OperatorElement::from_scalar(self.dims, s)
    }

    fn need(&self, name: OperatorName) -> Result<(), BuildError> {
        let idx = name.max_var();
        let low = match name {
            OperatorName::SusyChargeND(n) | OperatorName::SusyHND(n) => n,
            _ => 1,
        };
        if low == 0 {
            return Err(BuildError::ZeroDimension);
        }
        if idx > self.dims {
            return Err(BuildError::IndexOutOfRange {
                name: name.ident(),
                index: idx,
                dims: self.dims,
            });
        }
        Ok(())
    }

    pub fn build_named(&self, ident: &str) -> Result<OperatorElement, BuildError> {
        let name = OperatorName::from_ident(ident, self.dims)
            .ok_or_else(|| BuildError::UnknownName(ident.to_string()))?;
        self.build(name)
    }

    pub fn build(&self, name: OperatorName) -> Result<OperatorElement, BuildError> {
        use OperatorName::*;
        self.need(name)?;
        let half = self.q(1, 2);
        let inv_sqrt2 = self.scalar(BaseNumber::inv_sqrt2());
        Ok(match name {
            DunklDerivative(i) => {
                // ∂ + (μ/x)(1 - R)
                let xi = self.x_pow(i, -1);
                &self.d(i) + &(&xi - &(&xi * &self.r(i))).scale(&self.mu(i))
            }
            Hamiltonian1D(i) | AZero(i) => {
                let dk = self.build(DunklDerivative(i))?;
                (&self.x_pow(i, 2) - &dk.pow(2)).scale(&half)
            }
            Hamiltonian2D => &self.build(Hamiltonian1D(1))? + &self.build(Hamiltonian1D(2))?,
            APlus(i) => (&self.x(i) - &self.build(DunklDerivative(i))?).scale(&inv_sqrt2),
            AMinus(i) => (&self.x(i) + &self.build(DunklDerivative(i))?).scale(&inv_sqrt2),
            BPlus(i) => self.build(APlus(i))?.pow(2).scale(&half),
            BMinus(i) => self.build(AMinus(i))?.pow(2).scale(&half),
            JPlus => &self.build(APlus(1))? * &self.build(AMinus(2))?,
            JMinus => &self.build(AMinus(1))? * &self.build(APlus(2))?,
            JZero => &self.build(Hamiltonian1D(1))? - &self.build(Hamiltonian1D(2))?,
            CasimirSD => {
                let j0 = self.build(JZero)?;
                let jp = self.build(JPlus)?;
                let jm = self.build(JMinus)?;
                let two = self.q(2, 1);
                let refl = &self.r(1).scale(&self.mu(1)) + &self.r(2).scale(&self.mu(2));
                let p = &self.r(1) * &self.r(2);
                let mu12 = &(&self.mu(1) * &self.mu(2)) * &self.q(4, 1);
                &(&(&j0.pow(2) + &jp.anticommutator(&jm)?.scale(&two)) + &refl.scale(&two)) + &p.scale(&mu12)
            }
            PParity => &self.r(1) * &self.r(2),
            GaugedH(i) => self.gauged_h(i),
            GaugedAPlus(i) => {
                // (x - ∂ + (μ/x) R)/√2
                let t = &self.x_pow(i, -1) * &self.r(i);
                (&(&self.x(i) - &self.d(i)) + &t.scale(&self.mu(i))).scale(&inv_sqrt2)
            }
            GaugedAMinus(i) => {
                let t = &self.x_pow(i, -1) * &self.r(i);
                (&(&self.x(i) + &self.d(i)) - &t.scale(&self.mu(i))).scale(&inv_sqrt2)
            }
            ConformalQ(i) => {
                // (∂R - μ/x)/√2
                let dr = &self.d(i) * &self.r(i);
                (&dr - &self.x_pow(i, -1).scale(&self.mu(i))).scale(&inv_sqrt2)
            }
            ConformalS(i) => {
                let c = self.scalar(&BaseNumber::i() * &BaseNumber::inv_sqrt2());
                (&self.x(i) * &self.r(i)).scale(&c)
            }
            ConformalH(i) => self.build(ConformalQ(i))?.pow(2),
            ConformalK(i) => self.build(ConformalS(i))?.pow(2),
            ConformalD(i) => {
                let q = self.build(ConformalQ(i))?;
                let s = self.build(ConformalS(i))?;
                q.anticommutator(&s)?.scale(&self.q(-1, 2))
            }
            GaugedH2D => {
                // -½(∂1² + ∂2²) + ½(x1² + x2² + μ1²/x1² + μ2²/x2²) - μ1/(2x1²) R1 - μ2/(2x2²) R2
                let mut h = self.zero();
                for i in 1..=2 {
                    let mu = self.mu(i);
                    let kin = &self.x_pow(i, 2) - &self.d(i).pow(2);
                    let sing = self.x_pow(i, -2).scale(&mu.pow(2));
                    let refl = (&self.x_pow(i, -2) * &self.r(i)).scale(&mu);
                    h = &h + &(&(&kin + &sing) - &refl).scale(&half);
                }
                h
            }
            KPlus => self.build(JPlus)?.pow(2),
            KMinus => self.build(JMinus)?.pow(2),
            K0 | E0 => self.build(JZero)?.scale(&self.q(1, 8)),
            K1 => {
                let j0sq = self.build(JZero)?.pow(2).scale(&half);
                (&(&self.build(KPlus)? + &self.build(KMinus)?) + &j0sq).scale(&self.q(1, 8))
            }
            K2 => self.build(K0)?.commutator(&self.build(K1)?)?,
            E1 => {
                let jp2 = self.build(JPlus)?.pow(2);
                let jm2 = self.build(JMinus)?.pow(2);
                let j0sq = self.build(JZero)?.pow(2).scale(&half);
                (&(&jp2 + &jm2) + &j0sq).scale(&self.q(1, 8))
            }
            E2 => {
                let jp2 = self.build(JPlus)?.pow(2);
                let jm2 = self.build(JMinus)?.pow(2);
                (&jp2 - &jm2).scale(&self.q(1, 16))
            }
            FPlus => self.build(JPlus)?,
            FMinus => self.build(JMinus)?,
            SusyCharge1D(i) => {
                // (∂R + x - μ/x)/√2
                let dr = &self.d(i) * &self.r(i);
                let w = &self.x(i) - &self.x_pow(i, -1).scale(&self.mu(i));
                (&dr + &w).scale(&inv_sqrt2)
            }
            SusyH1D(i) => {
                // H̃_i - R_i/2 - μ_i, written out from the displayed formula
                &(&self.gauged_h(i) - &self.r(i).scale(&half)) - &self.c(self.mu(i))
            }
            SusyChargeND(n) => self.build_susy_nd(n)?.0,
            SusyHND(n) => self.build_susy_nd(n)?.1,
        })
    }

    /// ½(-∂² + x² + μ²/x² - (μ/x²) R)
    fn gauged_h(&self, i: usize) -> OperatorElement {
        let mu = self.mu(i);
        let kin = &self.x_pow(i, 2) - &self.d(i).pow(2);
        let sing = self.x_pow(i, -2).scale(&mu.pow(2));
        let refl = (&self.x_pow(i, -2) * &self.r(i)).scale(&mu);
        (&(&kin + &sing) - &refl).scale(&self.q(1, 2))
    }

    /// Supercharge `Σ_i Q_i R_{i+1}⋯R_n` and Hamiltonian `Σ_i Q_i²`.
    pub fn build_susy_nd(&self, n: usize) -> Result<(OperatorElement, OperatorElement), BuildError> {
        if n == 0 {
            return Err(BuildError::ZeroDimension);
        }
        if n > self.dims {
            return Err(BuildError::IndexOutOfRange {
                name: "Q_susy".into(),
                index: n,
                dims: self.dims,
            });
        }
        let mut charge = self.zero();
        let mut ham = self.zero();
        for i in 1..=n {
            let qi = self.build(OperatorName::SusyCharge1D(i))?;
            let tail = ((i + 1)..=n).fold(self.one(), |acc, k| &acc * &self.r(k));
            charge = &charge + &(&qi * &tail);
            ham = &ham + &qi.pow(2);
        }
        Ok((charge, ham))
    }

    /// Embeds a univariate Laurent polynomial as a multiplication operator in variable `i`.
    pub fn embed(&self, f: &LaurentPolynomial, i: usize) -> Result<OperatorElement, BuildError> {
        if f.nvars() != 1 {
            return Err(BuildError::NotUnivariate);
        }
        let mut out = self.zero();
        for (e, c) in f.terms() {
            let c = self.lift_scalar(c)?;
            out = &out + &self.x_pow(i, e[0]).scale(&c);
        }
        Ok(out)
    }

    /// Reinterprets a scalar over any arity `≤ dims` in this registry's arity,
    /// specializing numeric parameters.
    fn lift_scalar(&self, c: &Scalar) -> Result<Scalar, BuildError> {
        if c.nparams() > self.dims {
            return Err(BuildError::TooManyValues(c.nparams(), self.dims));
        }
        let mut out = self.zero_scalar();
        for (e, b) in c.terms() {
            let mut t = self.scalar(b.clone());
            for (k, &p) in e.iter().enumerate() {
                t = &t * &self.mu(k + 1).pow(p);
            }
            out += &t;
        }
        Ok(out)
    }

    fn zero_scalar(&self) -> Scalar {
        Scalar::zero(self.dims)
    }

    /// `Q = (1/√2)(∂ + V)R + (1/√2)W` acting in variable `i`.
    pub fn generic_supercharge(&self, vw: &SuperpotentialPair, i: usize) -> Result<OperatorElement, BuildError> {
        self.need(OperatorName::DunklDerivative(i))?;
        let v = self.embed(vw.v(), i)?;
        let w = self.embed(vw.w(), i)?;
        let inv_sqrt2 = self.scalar(BaseNumber::inv_sqrt2());
        Ok((&(&(&self.d(i) + &v) * &self.r(i)) + &w).scale(&inv_sqrt2))
    }

    /// `½(-∂² + V² + W² + V' - W'R)`, assembled independently of the charge.
    pub fn generic_susy_hamiltonian(&self, vw: &SuperpotentialPair, i: usize) -> Result<OperatorElement, BuildError> {
        self.need(OperatorName::DunklDerivative(i))?;
        let v = self.embed(vw.v(), i)?;
        let w = self.embed(vw.w(), i)?;
        let dv = self.embed(&vw.v().derivative(0), i)?;
        let dw = self.embed(&vw.w().derivative(0), i)?;
        let sum = &(&(&(&v.pow(2) + &w.pow(2)) + &dv) - &self.d(i).pow(2)) - &(&dw * &self.r(i));
        Ok(sum.scale(&self.q(1, 2)))
    }

    /// Image of `A` under conjugation by the gauge factor `Π|x_i|^{μ_i}`.
    /// The map fixes `x_i` and `R_i` and sends `∂_i` to `∂_i - μ_i/x_i`.
    pub fn gauge_transform(&self, a: &OperatorElement) -> Result<OperatorElement, BuildError> {
        let images: Vec<_> = (1..=self.dims)
            .map(|i| &self.d(i) - &self.x_pow(i, -1).scale(&self.mu(i)))
            .collect();
        Ok(a.map_derivatives(&images)?)
    }

    /// `γ1 = 3 - H² - 2μ1² - 2μ2²` (operator-valued through `H`).
    pub fn gamma1(&self) -> Result<OperatorElement, BuildError> {
        let h = self.build(OperatorName::Hamiltonian2D)?;
        let m = &(&self.mu(1).pow(2) + &self.mu(2).pow(2)) * &self.q(2, 1);
        Ok(&(&self.c(self.q(3, 1)) - &h.pow(2)) - &self.c(m))
    }

    /// `γ2 = 2μ1² - 2μ2²`.
    pub fn gamma2(&self) -> OperatorElement {
        self.c(&(&self.mu(1).pow(2) - &self.mu(2).pow(2)) * &self.q(2, 1))
    }

    /// `δ = (H² - 1)/2`.
    pub fn delta(&self) -> Result<OperatorElement, BuildError> {
        let h = self.build(OperatorName::Hamiltonian2D)?;
        Ok((&h.pow(2) - &self.one()).scale(&self.q(1, 2)))
    }

    /// `ω1 = 3/2 - H²/2 - μ1² - μ2²`.
    pub fn omega1(&self) -> Result<OperatorElement, BuildError> {
        let h = self.build(OperatorName::Hamiltonian2D)?;
        let m = &self.mu(1).pow(2) + &self.mu(2).pow(2);
        Ok(&(&self.c(self.q(3, 2)) - &h.pow(2).scale(&self.q(1, 2))) - &self.c(m))
    }

    /// `ω2 = μ1² - μ2²`.
    pub fn omega2(&self) -> OperatorElement {
        self.c(&self.mu(1).pow(2) - &self.mu(2).pow(2))
    }

    /// `μ1 R1 + μ2 R2`.
    pub fn reflection_sum(&self) -> OperatorElement {
        &self.r(1).scale(&self.mu(1)) + &self.r(2).scale(&self.mu(2))
    }

    /// `μ1 R1 - μ2 R2`.
    pub fn reflection_difference(&self) -> OperatorElement {
        &self.r(1).scale(&self.mu(1)) - &self.r(2).scale(&self.mu(2))
    }
}
