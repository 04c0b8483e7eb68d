//! Registry of relation families verified as exactly-zero residuals.
//!
//! Every family is realized in the Dunkl oscillator model: both sides of each
//! identity are built from [`Registry`] operators and their difference is
//! normal-ordered. A parametric pass is a proof for all values of the
//! deformation parameters.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::builders::{BuildError, Mu, OperatorName, Registry, SuperpotentialPair};
use crate::opalg::{LaurentPolynomial, OpError, OperatorElement};
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("unknown relation family `{0}`")]
    UnknownFamily(String),
    #[error("expected {expected} parameter values, got {found}")]
    Arity { expected: usize, found: usize },
    #[error(transparent)]
    Build(#[from] BuildError),
}

impl From<OpError> for RelationError {
    fn from(e: OpError) -> Self {
        RelationError::Build(e.into())
    }
}

macro_rules! families {
    ($($variant:ident => $id:literal, $desc:literal;)*) => {
        /// Relation family identifiers, in checking order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
        pub enum FamilyId {
            $($variant,)*
        }

        impl FamilyId {
            pub const ALL: &'static [FamilyId] = &[$(FamilyId::$variant,)*];

            pub fn as_str(&self) -> &'static str {
                match self {
                    $(FamilyId::$variant => $id,)*
                }
            }

            pub fn description(&self) -> &'static str {
                match self {
                    $(FamilyId::$variant => $desc,)*
                }
            }
        }

        impl FromStr for FamilyId {
            type Err = RelationError;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($id => Ok(FamilyId::$variant),)*
                    _ => Err(RelationError::UnknownFamily(s.to_string())),
                }
            }
        }
    };
}

families! {
    Sl12 => "sl12", "sl_{-1}(2) relations of the parabosonic ladder operators";
    Su11 => "su11", "su(1,1) relations of the bilinears B± with A0";
    Osp12Grading => "osp12-grading", "osp(1|2) grading by R_i and mixed [B±, A∓] relations";
    Sd2Conserved => "sd2-conserved", "H commutes with J±, J0 and the reflections";
    Sd2 => "sd2", "Schwinger-Dunkl algebra sd(2)";
    CasimirSd2 => "casimir-sd2", "sd(2) Casimir C = H² - 1; centrality of C and P = R1R2";
    GaugeSl12 => "gauge-sl12", "gauge-rotated ladder operators satisfy sl_{-1}(2)";
    Conformal => "conformal", "osp(1|2) conformal realization: translations, dilations, special conformal";
    Gauge2d => "gauge-2d", "2D gauge-rotated Hamiltonian as a singular oscillator with reflections";
    KReflection => "k-reflection", "K± = J±² commute with the reflections";
    Cubic => "cubic", "cubic algebra of K±, J0";
    Hahn => "hahn", "Hahn algebra with reflections for K0, K1, K2";
    SuperOdd => "super-odd", "Hahn superalgebra: odd/odd anticommutators";
    SuperEvenOdd => "super-evenodd", "Hahn superalgebra: even/odd commutators";
    SuperEven => "super-even", "Hahn superalgebra: even part and grading";
    SuperCasimir => "super-casimir", "C commutes with E0, E1, E2, F±";
    SusyDefining => "susy-defining", "H = ½{Q, Q†}, [Q, H] = [Q†, H] = 0";
    Susy1d => "susy-1d", "1D supersymmetric Dunkl oscillator";
    SusyGeneric => "susy-generic", "Dunkl supercharge with even V and odd W squares to the SUSY Hamiltonian";
    SusyNd => "susy-nd", "n-dimensional supercharge: Q² = Σ Q_i² for n = 1, 2, 3";
    SusyKInvariance => "susy-k-invariance", "K± and J0² commute with the 2D SUSY Hamiltonian";
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FamilyId {
    /// Families whose identities must hold before this one's structure constants make sense.
    pub fn prerequisites(&self) -> &'static [FamilyId] {
        use FamilyId::*;
        match self {
            Cubic | Hahn | SuperOdd | SuperEvenOdd | SuperEven | SuperCasimir => &[Sd2Conserved, CasimirSd2],
            _ => &[],
        }
    }
}

pub fn list_families() -> &'static [FamilyId] {
    FamilyId::ALL
}

/// One asserted identity `lhs = rhs`.
#[derive(Debug, Clone)]
pub struct Identity {
    pub label: String,
    pub lhs: OperatorElement,
    pub rhs: OperatorElement,
}

/// A family with its identities built in one realization.
#[derive(Debug, Clone)]
pub struct RelationFamily {
    pub id: FamilyId,
    pub mode: Mu,
    pub identities: Vec<Identity>,
}

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub label: String,
    pub residual: OperatorElement,
    pub passed: bool,
}

impl IdentityReport {
    pub fn term_count(&self) -> usize {
        self.residual.len()
    }
}

#[derive(Debug, Clone)]
pub struct RelationReport {
    pub family: FamilyId,
    pub mode: Mu,
    pub identities: Vec<IdentityReport>,
    pub elapsed: Duration,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.identities.iter().all(|r| r.passed)
    }
}

/// Options for [`check`].
#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    /// Deliberately corrupt one identity of the family (negative control).
    pub perturb: bool,
}

struct Builder<'a> {
    reg: &'a Registry,
    out: Vec<Identity>,
}

impl<'a> Builder<'a> {
    fn eq(&mut self, label: impl Into<String>, lhs: OperatorElement, rhs: OperatorElement) {
        self.out.push(Identity {
            label: label.into(),
            lhs,
            rhs,
        });
    }

    fn zero(&mut self, label: impl Into<String>, lhs: OperatorElement) {
        let z = self.reg.zero();
        self.eq(label, lhs, z);
    }

    fn b(&self, name: OperatorName) -> Result<OperatorElement, RelationError> {
        Ok(self.reg.build(name)?)
    }
}

fn comm(a: &OperatorElement, b: &OperatorElement) -> Result<OperatorElement, RelationError> {
    Ok(a.commutator(b)?)
}

fn acomm(a: &OperatorElement, b: &OperatorElement) -> Result<OperatorElement, RelationError> {
    Ok(a.anticommutator(b)?)
}

fn expected_arity(id: FamilyId) -> usize {
    match id {
        FamilyId::SusyNd => 3,
        _ => 2,
    }
}

/// Builds the identities of one family. `perturb` corrupts one right-hand side.
pub fn build_family(id: FamilyId, mode: &Mu, perturb: bool) -> Result<RelationFamily, RelationError> {
    if let Mu::Numeric(v) = mode {
        if v.len() != 2 {
            return Err(RelationError::Arity { expected: 2, found: v.len() });
        }
    }
    let reg = Registry::new(expected_arity(id), mode.clone())?;
    let mut b = Builder { reg: &reg, out: Vec::new() };
    populate(id, &mut b, perturb)?;
    if perturb && !matches!(id, FamilyId::Hahn | FamilyId::Sd2) {
        // Generic negative control: shift the first right-hand side by the identity.
        if let Some(first) = b.out.first_mut() {
            first.rhs = &first.rhs + &reg.one();
        }
    }
    Ok(RelationFamily {
        id,
        mode: mode.clone(),
        identities: b.out,
    })
}

fn populate(id: FamilyId, b: &mut Builder<'_>, perturb: bool) -> Result<(), RelationError> {
    use OperatorName::*;
    let reg = b.reg;
    match id {
        FamilyId::Sl12 => {
            for i in 1..=2 {
                let (ap, am, a0, r) = (b.b(APlus(i))?, b.b(AMinus(i))?, b.b(AZero(i))?, reg.r(i));
                b.eq(format!("[A0_{i}, A+_{i}] = A+_{i}"), comm(&a0, &ap)?, ap.clone());
                b.eq(format!("[A0_{i}, A-_{i}] = -A-_{i}"), comm(&a0, &am)?, -&am);
                b.eq(format!("{{A+_{i}, A-_{i}}} = 2 A0_{i}"), acomm(&ap, &am)?, a0.scale(&reg.q(2, 1)));
                b.zero(format!("{{A+_{i}, R{i}}} = 0"), acomm(&ap, &r)?);
                b.zero(format!("{{A-_{i}, R{i}}} = 0"), acomm(&am, &r)?);
                b.zero(format!("[A0_{i}, R{i}] = 0"), comm(&a0, &r)?);
            }
        }
        FamilyId::Su11 => {
            for i in 1..=2 {
                let (bp, bm, a0) = (b.b(BPlus(i))?, b.b(BMinus(i))?, b.b(AZero(i))?);
                b.eq(format!("[B-_{i}, B+_{i}] = A0_{i}"), comm(&bm, &bp)?, a0.clone());
                b.eq(format!("[A0_{i}, B+_{i}] = 2 B+_{i}"), comm(&a0, &bp)?, bp.scale(&reg.q(2, 1)));
                b.eq(format!("[A0_{i}, B-_{i}] = -2 B-_{i}"), comm(&a0, &bm)?, bm.scale(&reg.q(-2, 1)));
            }
        }
        FamilyId::Osp12Grading => {
            for i in 1..=2 {
                let (ap, am, a0) = (b.b(APlus(i))?, b.b(AMinus(i))?, b.b(AZero(i))?);
                let (bp, bm, r) = (b.b(BPlus(i))?, b.b(BMinus(i))?, reg.r(i));
                b.zero(format!("[B+_{i}, R{i}] = 0"), comm(&bp, &r)?);
                b.zero(format!("[B-_{i}, R{i}] = 0"), comm(&bm, &r)?);
                b.zero(format!("[A0_{i}, R{i}] = 0"), comm(&a0, &r)?);
                b.zero(format!("{{A+_{i}, R{i}}} = 0"), acomm(&ap, &r)?);
                b.zero(format!("{{A-_{i}, R{i}}} = 0"), acomm(&am, &r)?);
                b.eq(format!("[B+_{i}, A-_{i}] = -A+_{i}"), comm(&bp, &am)?, -&ap);
                b.eq(format!("[B-_{i}, A+_{i}] = A-_{i}"), comm(&bm, &ap)?, am.clone());
                b.zero(format!("[B+_{i}, A+_{i}] = 0"), comm(&bp, &ap)?);
                b.zero(format!("[B-_{i}, A-_{i}] = 0"), comm(&bm, &am)?);
            }
        }
        FamilyId::Sd2Conserved => {
            let h = b.b(Hamiltonian2D)?;
            for name in [JPlus, JMinus, JZero] {
                let j = b.b(name)?;
                b.zero(format!("[H, {name}] = 0"), comm(&h, &j)?);
            }
            for i in 1..=2 {
                b.zero(format!("[H, R{i}] = 0"), comm(&h, &reg.r(i))?);
            }
        }
        FamilyId::Sd2 => {
            let (jp, jm, j0, h) = (b.b(JPlus)?, b.b(JMinus)?, b.b(JZero)?, b.b(Hamiltonian2D)?);
            b.eq("[J0, J+] = 2 J+", comm(&j0, &jp)?, jp.scale(&reg.q(2, 1)));
            b.eq("[J0, J-] = -2 J-", comm(&j0, &jm)?, jm.scale(&reg.q(-2, 1)));
            for i in 1..=2 {
                let r = reg.r(i);
                b.zero(format!("{{J+, R{i}}} = 0"), acomm(&jp, &r)?);
                b.zero(format!("{{J-, R{i}}} = 0"), acomm(&jm, &r)?);
                b.zero(format!("[J0, R{i}] = 0"), comm(&j0, &r)?);
                b.eq(format!("R{i}^2 = 1"), r.pow(2), reg.one());
            }
            // Negative control: J0 coefficient 1 -> 2.
            let lead = if perturb { j0.scale(&reg.q(2, 1)) } else { j0.clone() };
            let rhs = &(&lead + &(&j0 * &reg.reflection_sum())) - &(&h * &reg.reflection_difference());
            b.eq("[J+, J-] = J0 + J0(mu1 R1 + mu2 R2) - H(mu1 R1 - mu2 R2)", comm(&jp, &jm)?, rhs);
        }
        FamilyId::CasimirSd2 => {
            let (c, h, p) = (b.b(CasimirSD)?, b.b(Hamiltonian2D)?, b.b(PParity)?);
            b.eq("C = H^2 - 1", c.clone(), &h.pow(2) - &reg.one());
            for name in [JPlus, JMinus, JZero] {
                let j = b.b(name)?;
                b.zero(format!("[C, {name}] = 0"), comm(&c, &j)?);
                b.zero(format!("[P, {name}] = 0"), comm(&p, &j)?);
            }
            for i in 1..=2 {
                b.zero(format!("[C, R{i}] = 0"), comm(&c, &reg.r(i))?);
                b.zero(format!("[P, R{i}] = 0"), comm(&p, &reg.r(i))?);
            }
        }
        FamilyId::GaugeSl12 => {
            for i in 1..=2 {
                let (ap, am, h, r) = (b.b(GaugedAPlus(i))?, b.b(GaugedAMinus(i))?, b.b(GaugedH(i))?, reg.r(i));
                b.eq(format!("[Ht_{i}, At+_{i}] = At+_{i}"), comm(&h, &ap)?, ap.clone());
                b.eq(format!("[Ht_{i}, At-_{i}] = -At-_{i}"), comm(&h, &am)?, -&am);
                b.eq(format!("{{At+_{i}, At-_{i}}} = 2 Ht_{i}"), acomm(&ap, &am)?, h.scale(&reg.q(2, 1)));
                b.zero(format!("{{At+_{i}, R{i}}} = 0"), acomm(&ap, &r)?);
                b.zero(format!("{{At-_{i}, R{i}}} = 0"), acomm(&am, &r)?);
                b.zero(format!("[Ht_{i}, R{i}] = 0"), comm(&h, &r)?);
                // The same operators as images of the Dunkl ones under |x|^mu conjugation.
                b.eq(format!("G H_{i} G^-1 = Ht_{i}"), reg.gauge_transform(&b.b(Hamiltonian1D(i))?)?, h.clone());
                b.eq(format!("G A+_{i} G^-1 = At+_{i}"), reg.gauge_transform(&b.b(APlus(i))?)?, ap.clone());
                b.eq(format!("G A-_{i} G^-1 = At-_{i}"), reg.gauge_transform(&b.b(AMinus(i))?)?, am.clone());
            }
        }
        FamilyId::Conformal => {
            let i_unit = reg.scalar(crate::scalars::BaseNumber::i());
            for i in 1..=2 {
                let (q, s) = (b.b(ConformalQ(i))?, b.b(ConformalS(i))?);
                let (hc, kc, dc) = (b.b(ConformalH(i))?, b.b(ConformalK(i))?, b.b(ConformalD(i))?);
                let r = reg.r(i);
                b.eq(format!("[Hc_{i}, Dc_{i}] = i Hc_{i}"), comm(&hc, &dc)?, hc.scale(&i_unit));
                b.eq(
                    format!("[Hc_{i}, Kc_{i}] = 2i Dc_{i}"),
                    comm(&hc, &kc)?,
                    dc.scale(&(&i_unit * &reg.q(2, 1))),
                );
                b.eq(format!("[Dc_{i}, Kc_{i}] = i Kc_{i}"), comm(&dc, &kc)?, kc.scale(&i_unit));
                b.zero(format!("{{Qc_{i}, R{i}}} = 0"), acomm(&q, &r)?);
                b.zero(format!("{{Sc_{i}, R{i}}} = 0"), acomm(&s, &r)?);
                b.zero(format!("[Hc_{i}, R{i}] = 0"), comm(&hc, &r)?);
                b.zero(format!("[Kc_{i}, R{i}] = 0"), comm(&kc, &r)?);
                b.zero(format!("[Dc_{i}, R{i}] = 0"), comm(&dc, &r)?);
                b.eq(format!("Ht_{i} = Hc_{i} + Kc_{i}"), b.b(GaugedH(i))?, &hc + &kc);

                let (ap, am) = (b.b(GaugedAPlus(i))?, b.b(GaugedAMinus(i))?);
                b.eq(
                    format!("Qc_{i} = (At-_{i} - At+_{i}) R{i} / 2"),
                    q.clone(),
                    (&(&am - &ap) * &r).scale(&reg.q(1, 2)),
                );
                let two_i_inv = reg.scalar(crate::scalars::BaseNumber::i().scale(&crate::scalars::rat(-1, 2)));
                b.eq(
                    format!("Sc_{i} = R{i} (At+_{i} + At-_{i}) / 2i"),
                    s.clone(),
                    (&r * &(&ap + &am)).scale(&two_i_inv),
                );
                let mu = reg.mu(i);
                let hc_explicit = (&(&reg.x_pow(i, -2).scale(&mu.pow(2)) - &reg.d(i).pow(2))
                    - &(&reg.x_pow(i, -2) * &r).scale(&mu))
                    .scale(&reg.q(1, 2));
                b.eq(format!("Hc_{i} = (-d^2 + mu^2/x^2 - mu/x^2 R)/2"), hc.clone(), hc_explicit);
                b.eq(format!("Kc_{i} = x^2/2"), kc.clone(), reg.x_pow(i, 2).scale(&reg.q(1, 2)));
                let dc_explicit = (&(&reg.x(i) * &reg.d(i)) + &reg.c(reg.q(1, 2))).scale(&i_unit.scale_rational(&crate::scalars::rat(1, 2)));
                b.eq(format!("Dc_{i} = (i/2)(x d + 1/2)"), dc, dc_explicit);
            }
        }
        FamilyId::Gauge2d => {
            let ht = b.b(GaugedH2D)?;
            b.eq("Htilde = Ht_1 + Ht_2", ht.clone(), &b.b(GaugedH(1))? + &b.b(GaugedH(2))?);
            b.eq("G H G^-1 = Htilde", reg.gauge_transform(&b.b(Hamiltonian2D)?)?, ht);
        }
        FamilyId::KReflection => {
            for name in [KPlus, KMinus] {
                let k = b.b(name)?;
                for i in 1..=2 {
                    b.zero(format!("[{name}, R{i}] = 0"), comm(&k, &reg.r(i))?);
                }
            }
        }
        FamilyId::Cubic => {
            let (kp, km, j0, h) = (b.b(KPlus)?, b.b(KMinus)?, b.b(JZero)?, b.b(Hamiltonian2D)?);
            b.eq("[J0, K+] = 4 K+", comm(&j0, &kp)?, kp.scale(&reg.q(4, 1)));
            b.eq("[J0, K-] = -4 K-", comm(&j0, &km)?, km.scale(&reg.q(-4, 1)));
            let two = reg.q(2, 1);
            let t1 = &reg.gamma1()? + &reg.reflection_sum().scale(&two);
            let t2 = &reg.gamma2() - &reg.reflection_difference().scale(&two);
            let rhs = &(&j0.pow(3) + &(&j0 * &t1)) + &(&h * &t2);
            b.eq(
                "[K-, K+] = J0^3 + J0(g1 + 2mu1 R1 + 2mu2 R2) + H(g2 + 2mu2 R2 - 2mu1 R1)",
                comm(&km, &kp)?,
                rhs,
            );
        }
        FamilyId::Hahn => {
            let (k0, k1, k2, h) = (b.b(K0)?, b.b(K1)?, b.b(K2)?, b.b(Hamiltonian2D)?);
            let two = reg.q(2, 1);
            b.eq("[K0, K1] = K2", comm(&k0, &k1)?, k2.clone());
            let t1 = &reg.gamma1()? + &reg.reflection_sum().scale(&two);
            let t2 = &reg.gamma2() - &reg.reflection_difference().scale(&two);
            let rhs = &(&acomm(&k0, &k1)? + &(&k0 * &t1).scale(&reg.q(1, 8))) + &(&h * &t2).scale(&reg.q(1, 64));
            b.eq(
                "[K1, K2] = {K0, K1} + K0(g1 + 2mu1 R1 + 2mu2 R2)/8 + H(g2 + 2mu2 R2 - 2mu1 R1)/64",
                comm(&k1, &k2)?,
                rhs,
            );
            // Negative control: 1/4 -> 1/3.
            let c = if perturb { reg.q(1, 3) } else { reg.q(1, 4) };
            b.eq("[K2, K0] = K0^2 - K1/4", comm(&k2, &k0)?, &k0.pow(2) - &k1.scale(&c));
        }
        FamilyId::SuperOdd => {
            let (fp, fm) = (b.b(FPlus)?, b.b(FMinus)?);
            let (e0, e1, e2) = (b.b(E0)?, b.b(E1)?, b.b(E2)?);
            let base = &e1.scale(&reg.q(8, 1)) - &e0.pow(2).scale(&reg.q(32, 1));
            b.eq("{F+, F+} = 8E1 + 16E2 - 32E0^2", acomm(&fp, &fp)?, &base + &e2.scale(&reg.q(16, 1)));
            b.eq("{F-, F-} = 8E1 - 16E2 - 32E0^2", acomm(&fm, &fm)?, &base - &e2.scale(&reg.q(16, 1)));
            let p = &reg.r(1) * &reg.r(2);
            let mu12 = &(&reg.mu(1) * &reg.mu(2)) * &reg.q(2, 1);
            let rhs = &(&(&e0.pow(2).scale(&reg.q(-32, 1)) - &reg.reflection_sum()) - &p.scale(&mu12)) + &reg.delta()?;
            b.eq(
                "{F+, F-} = -32E0^2 - mu1 R1 - mu2 R2 - 2mu1mu2 R1R2 + delta",
                acomm(&fp, &fm)?,
                rhs,
            );
        }
        FamilyId::SuperEvenOdd => {
            let (fp, fm) = (b.b(FPlus)?, b.b(FMinus)?);
            let (e0, e1, e2) = (b.b(E0)?, b.b(E1)?, b.b(E2)?);
            let m = reg.reflection_sum();
            b.eq("[E0, F+] = F+/4", comm(&e0, &fp)?, fp.scale(&reg.q(1, 4)));
            b.eq("[E0, F-] = -F-/4", comm(&e0, &fm)?, fm.scale(&reg.q(-1, 4)));
            for (sign, f, g, fname, gname) in [(1i64, &fp, &fm, "F+", "F-"), (-1, &fm, &fp, "F-", "F+")] {
                // The anticommutator difference flips with the sign: the exchange
                // x1 <-> x2, mu1 <-> mu2 swaps F+ and F- and negates E0.
                let diff = (&acomm(&e0, f)? - &acomm(&e0, g)?).scale(&reg.q(sign, 1));
                let rhs1 = &diff - &(g * &m).scale(&reg.q(1, 4));
                let (first, second) = if sign > 0 { (fname, gname) } else { (gname, fname) };
                b.eq(
                    format!("[E1, {fname}] = {{E0, {first}}} - {{E0, {second}}} - {gname}(mu1 R1 + mu2 R2)/4"),
                    comm(&e1, f)?,
                    rhs1,
                );
                let rhs2 = &acomm(&e0, g)?.scale(&reg.q(1, 2)) + &(g * &m).scale(&reg.q(sign, 8));
                let pm = if sign > 0 { "+" } else { "-" };
                b.eq(
                    format!("[E2, {fname}] = {{E0, {gname}}}/2 {pm} {gname}(mu1 R1 + mu2 R2)/8"),
                    comm(&e2, f)?,
                    rhs2,
                );
            }
        }
        FamilyId::SuperEven => {
            let (e0, e1, e2, h) = (b.b(E0)?, b.b(E1)?, b.b(E2)?, b.b(Hamiltonian2D)?);
            b.eq("[E0, E1] = E2", comm(&e0, &e1)?, e2.clone());
            let t1 = &reg.omega1()? + &reg.reflection_sum();
            let t2 = &reg.omega2() - &reg.reflection_difference();
            let rhs = &(&acomm(&e0, &e1)? + &(&e0 * &t1).scale(&reg.q(1, 4))) + &(&h * &t2).scale(&reg.q(1, 32));
            b.eq(
                "[E1, E2] = {E0, E1} + E0(w1 + mu1 R1 + mu2 R2)/4 + H(w2 + mu2 R2 - mu1 R1)/32",
                comm(&e1, &e2)?,
                rhs,
            );
            b.eq("[E2, E0] = E0^2 - E1/4", comm(&e2, &e0)?, &e0.pow(2) - &e1.scale(&reg.q(1, 4)));
            for i in 1..=2 {
                let r = reg.r(i);
                for (name, e) in [("E0", &e0), ("E1", &e1), ("E2", &e2)] {
                    b.zero(format!("[{name}, R{i}] = 0"), comm(e, &r)?);
                }
                for name in [FPlus, FMinus] {
                    b.zero(format!("{{{name}, R{i}}} = 0"), acomm(&b.b(name)?, &r)?);
                }
            }
        }
        FamilyId::SuperCasimir => {
            let c = b.b(CasimirSD)?;
            for name in [E0, E1, E2, FPlus, FMinus] {
                b.zero(format!("[C, {name}] = 0"), comm(&c, &b.b(name)?)?);
            }
        }
        FamilyId::SusyDefining => {
            let models = [
                ("1D", b.b(SusyCharge1D(1))?, b.b(SusyH1D(1))?),
                ("2D", b.b(SusyChargeND(2))?, b.b(SusyHND(2))?),
            ];
            for (tag, q, h) in models {
                let qd = q.adjoint();
                b.eq(format!("{tag}: H = {{Q, Q^dag}}/2"), h.clone(), acomm(&q, &qd)?.scale(&reg.q(1, 2)));
                b.zero(format!("{tag}: [Q, H] = 0"), comm(&q, &h)?);
                b.zero(format!("{tag}: [Q^dag, H] = 0"), comm(&qd, &h)?);
            }
        }
        FamilyId::Susy1d => {
            for i in 1..=2 {
                let (q, h) = (b.b(SusyCharge1D(i))?, b.b(SusyH1D(i))?);
                b.eq(format!("Hs_{i} = Q_{i}^2"), h.clone(), q.pow(2));
                b.eq(format!("Q_{i}^dag = Q_{i}"), q.adjoint(), q.clone());
                let offset = &(&b.b(GaugedH(i))? - &reg.r(i).scale(&reg.q(1, 2))) - &reg.c(reg.mu(i));
                b.eq(format!("Hs_{i} = Ht_{i} - R{i}/2 - mu{i}"), h.clone(), offset);
                b.zero(format!("[Hs_{i}, Ht_{i}] = 0"), comm(&h, &b.b(GaugedH(i))?)?);
            }
        }
        FamilyId::SusyGeneric => {
            for (label, vw) in superpotential_samples() {
                let q = reg.generic_supercharge(&vw, 1)?;
                b.eq(
                    format!("{label}: Q^2 = (-d^2 + V^2 + W^2 + V' - W'R)/2"),
                    q.pow(2),
                    reg.generic_susy_hamiltonian(&vw, 1)?,
                );
                b.eq(format!("{label}: Q^dag = Q"), q.adjoint(), q.clone());
            }
            let dunkl = &superpotential_samples()[1].1;
            b.eq("V=0, W=x-mu/x gives Q_1", reg.generic_supercharge(dunkl, 1)?, b.b(SusyCharge1D(1))?);
        }
        FamilyId::SusyNd => {
            for n in 1..=3 {
                let (q, h) = reg.build_susy_nd(n)?;
                let sum = (1..=n).try_fold(reg.zero(), |acc, i| -> Result<_, RelationError> {
                    Ok(&acc + &b.b(SusyH1D(i))?)
                })?;
                b.eq(format!("n={n}: Q^2 = sum Q_i^2"), q.pow(2), h.clone());
                b.eq(format!("n={n}: sum Q_i^2 = sum Hs_i"), h, sum);
                b.eq(format!("n={n}: Q^dag = Q"), q.adjoint(), q);
            }
        }
        FamilyId::SusyKInvariance => {
            let hs = b.b(SusyHND(2))?;
            // The SUSY Hamiltonian lives in the gauge-rotated frame; carry K± and J0 there.
            for name in [KPlus, KMinus] {
                let k = reg.gauge_transform(&b.b(name)?)?;
                b.zero(format!("[G {name} G^-1, H_susy] = 0"), comm(&k, &hs)?);
            }
            let j0 = reg.gauge_transform(&b.b(JZero)?)?;
            b.zero("[(G J0 G^-1)^2, H_susy] = 0", comm(&j0.pow(2), &hs)?);
            // Equivalently, in the Dunkl frame H_susy corresponds to H - (R1 + R2)/2 - mu1 - mu2.
            let h = b.b(Hamiltonian2D)?;
            let shift = &(&reg.r(1) + &reg.r(2)).scale(&reg.q(1, 2)) + &reg.c(&reg.mu(1) + &reg.mu(2));
            let dunkl_frame = &h - &shift;
            b.eq("G (H - (R1+R2)/2 - mu1 - mu2) G^-1 = H_susy", reg.gauge_transform(&dunkl_frame)?, hs.clone());
            for name in [KPlus, KMinus] {
                b.zero(format!("[{name}, H - (R1+R2)/2 - mu1 - mu2] = 0"), comm(&b.b(name)?, &dunkl_frame)?);
            }
        }
    }
    Ok(())
}

/// Sample superpotential pairs `(V, W)`, all with the required parities.
pub fn superpotential_samples() -> Vec<(&'static str, SuperpotentialPair)> {
    let one = Scalar::one(1);
    let mu = Scalar::param(1, 0);
    let poly = |terms: Vec<(i32, Scalar)>| LaurentPolynomial::from_terms(1, 1, terms.into_iter().map(|(e, c)| (vec![e], c)));
    let pair = |v, w| SuperpotentialPair::new(v, w).expect("sample parities");
    vec![
        ("V=0, W=0", pair(poly(vec![]), poly(vec![]))),
        ("V=0, W=x-mu/x", pair(poly(vec![]), poly(vec![(1, one.clone()), (-1, -&mu)]))),
        ("V=x^2, W=x", pair(poly(vec![(2, one.clone())]), poly(vec![(1, one.clone())]))),
        (
            "V=mu+x^-2, W=x^3-mu/x",
            pair(poly(vec![(0, mu.clone()), (-2, one.clone())]), poly(vec![(3, one.clone()), (-1, -&mu)])),
        ),
    ]
}

/// Verifies one family.
pub fn check(id: FamilyId, mode: &Mu, opts: &CheckOptions) -> Result<RelationReport, RelationError> {
    let start = Instant::now();
    let fam = build_family(id, mode, opts.perturb)?;
    let identities = fam
        .identities
        .into_iter()
        .map(|ident| {
            let residual = &ident.lhs - &ident.rhs;
            IdentityReport {
                label: ident.label,
                passed: residual.is_zero(),
                residual,
            }
        })
        .collect();
    Ok(RelationReport {
        family: id,
        mode: mode.clone(),
        identities,
        elapsed: start.elapsed(),
    })
}

/// Verifies every family. Prerequisite families run first; the rest run in
/// parallel. Reports come back in registry order.
pub fn check_all(mode: &Mu, opts: &CheckOptions) -> Result<Vec<RelationReport>, RelationError> {
    check_many(FamilyId::ALL, mode, opts)
}

pub fn check_many(ids: &[FamilyId], mode: &Mu, opts: &CheckOptions) -> Result<Vec<RelationReport>, RelationError> {
    let is_prereq = |id: &FamilyId| FamilyId::ALL.iter().any(|f| f.prerequisites().contains(id));
    let mut reports: Vec<Option<RelationReport>> = vec![None; ids.len()];
    for (k, id) in ids.iter().enumerate().filter(|(_, id)| is_prereq(id)) {
        reports[k] = Some(check(*id, mode, opts)?);
    }
    let rest: Vec<(usize, FamilyId)> = ids
        .iter()
        .enumerate()
        .filter(|(_, id)| !is_prereq(id))
        .map(|(k, id)| (k, *id))
        .collect();
    let done = rest
        .par_iter()
        .map(|(k, id)| check(*id, mode, opts).map(|r| (*k, r)))
        .collect::<Result<Vec<_>, _>>()?;
    for (k, r) in done {
        reports[k] = Some(r);
    }
    Ok(reports.into_iter().map(|r| r.expect("every family checked")).collect())
}

/// Parses `"1/3,1/2"` style parameter lists.
pub fn parse_mu_values(s: &str) -> Result<Vec<BigRational>, String> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<BigRational>().map_err(|_| format!("invalid rational `{t}`"))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use OperatorName::*;

    #[test]
    fn registry_lists_families() {
        let ids: Vec<_> = list_families().iter().map(FamilyId::as_str).collect();
        assert!(ids.contains(&"hahn"));
        assert!(ids.contains(&"susy-nd"));
        assert!(ids.len() >= 15);
        for id in list_families() {
            assert_eq!(id.as_str().parse::<FamilyId>().unwrap(), *id);
        }
        assert!(matches!("nope".parse::<FamilyId>(), Err(RelationError::UnknownFamily(_))));
    }

    #[test]
    fn prerequisites_come_first() {
        for (k, id) in FamilyId::ALL.iter().enumerate() {
            for p in id.prerequisites() {
                let pk = FamilyId::ALL.iter().position(|f| f == p).unwrap();
                assert!(pk < k, "{p} must precede {id}");
            }
        }
    }

    #[test]
    fn total_identity_count() {
        let total: usize = FamilyId::ALL
            .iter()
            .filter(|id| !matches!(id, FamilyId::Cubic | FamilyId::Hahn | FamilyId::SuperEven | FamilyId::SuperEvenOdd | FamilyId::SuperOdd | FamilyId::SuperCasimir))
            .map(|id| build_family(*id, &Mu::Parametric, false).unwrap().identities.len())
            .sum();
        assert!(total >= 20);
    }

    #[test]
    fn sd2_parametric() {
        let rep = check(FamilyId::Sd2, &Mu::Parametric, &CheckOptions::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.identities.iter().filter(|r| !r.passed).map(|r| &r.label).collect::<Vec<_>>());
    }

    #[test]
    fn sd2_perturbed_fails() {
        let rep = check(FamilyId::Sd2, &Mu::Parametric, &CheckOptions { perturb: true }).unwrap();
        assert!(!rep.passed());
        assert!(rep.identities.iter().any(|r| r.term_count() > 0));
    }

    #[test]
    fn numeric_arity_checked() {
        let r = check(FamilyId::Sl12, &Mu::Numeric(vec![rat(1, 3)]), &CheckOptions::default());
        assert!(matches!(r, Err(RelationError::Arity { expected: 2, found: 1 })));
    }

    #[test]
    fn small_families_pass_numeric() {
        let mode = Mu::Numeric(vec![rat(-1, 3), rat(5, 2)]);
        for id in [FamilyId::Sl12, FamilyId::Su11, FamilyId::Conformal, FamilyId::SusyNd] {
            let rep = check(id, &mode, &CheckOptions::default()).unwrap();
            assert!(rep.passed(), "{id}");
        }
    }

    #[test]
    fn mu_list_parsing() {
        assert_eq!(parse_mu_values("1/3, -1/2").unwrap(), vec![rat(1, 3), rat(-1, 2)]);
        assert!(parse_mu_values("a").is_err());
    }

    #[test]
    fn uncorrected_variants_do_not_hold() {
        let reg = Registry::parametric(2);
        let b = |n| reg.build(n).unwrap();
        let (e0, e1, e2, fp, fm) = (b(E0), b(E1), b(E2), b(FPlus), b(FMinus));
        let m = reg.reflection_sum();
        // [E1, F-] with the anticommutator difference unflipped.
        let naive = &(&acomm(&e0, &fm).unwrap() - &acomm(&e0, &fp).unwrap()) - &(&fp * &m).scale(&reg.q(1, 4));
        assert!(!(&comm(&e1, &fm).unwrap() - &naive).is_zero());
        // [E1, E2] with {E0, E2} in place of {E0, E1}.
        let t1 = &reg.omega1().unwrap() + &m;
        let t2 = &reg.omega2() - &reg.reflection_difference();
        let tail = &(&e0 * &t1).scale(&reg.q(1, 4)) + &(&b(Hamiltonian2D) * &t2).scale(&reg.q(1, 32));
        let with_e2 = &acomm(&e0, &e2).unwrap() + &tail;
        let with_e1 = &acomm(&e0, &e1).unwrap() + &tail;
        let lhs = comm(&e1, &e2).unwrap();
        assert!(!(&lhs - &with_e2).is_zero());
        assert_eq!(lhs, with_e1);
    }
}
