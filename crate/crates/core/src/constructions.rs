//! Constructions that build new pairs out of old ones.
//!
//! Constructions whose theorem has a checkable hypothesis validate their
//! inputs first and return [`Error::Refused`] with the failing report.
//! Outputs are never trusted: callers re-run the checkers on them.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear::{identity, tau, tau12, LinMap, TensorSpace};
use crate::scalar::Scalar;
use crate::structures::{check_endo_op, check_rota_baxter, coder_pair_checks, der_pair_checks};
use crate::structures::{
    first_failure, CheckReport, CoDerComodule, CoDerPair, CoalgebraFlavor, Comodule, DerPair,
    EndoOp, HomAlgebra, HomCoalgebra, RotaBaxterData,
};

fn c(g: &LinMap, f: &LinMap) -> LinMap {
    g.compose(f).expect("construction maps compose")
}

fn plus(a: &LinMap, b: &LinMap) -> LinMap {
    a.add(b).expect("summands share spaces")
}

fn minus(a: &LinMap, b: &LinMap) -> LinMap {
    a.sub(b).expect("operands share spaces")
}

fn refuse_on_failure(reports: Vec<CheckReport>) -> Result<()> {
    match first_failure(reports) {
        Some(report) => Err(Error::Refused(report)),
        None => Ok(()),
    }
}

fn validate_as(pair: &CoDerPair, flavor: CoalgebraFlavor) -> Result<()> {
    let coalg = pair.coalg().with_flavor(flavor);
    let relabeled = CoDerPair::new(coalg, pair.phi().clone())?;
    refuse_on_failure(coder_pair_checks(&relabeled))
}

/// The space `K^l ⊕ K^r` with its block embeddings and projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumSpace {
    left: usize,
    right: usize,
}

impl SumSpace {
    pub fn new(left: usize, right: usize) -> Self {
        Self { left, right }
    }

    pub fn left_dim(&self) -> usize {
        self.left
    }

    pub fn right_dim(&self) -> usize {
        self.right
    }

    pub fn dim(&self) -> usize {
        self.left + self.right
    }

    pub fn space(&self) -> TensorSpace {
        TensorSpace::power(self.dim(), 1)
    }

    pub fn inl(&self) -> LinMap {
        LinMap::from_fn(TensorSpace::power(self.left, 1), self.space(), |r, c| {
            unit(r == c)
        })
    }

    pub fn inr(&self) -> LinMap {
        LinMap::from_fn(TensorSpace::power(self.right, 1), self.space(), |r, c| {
            unit(r == c + self.left)
        })
    }

    pub fn pil(&self) -> LinMap {
        self.inl().transpose()
    }

    pub fn pir(&self) -> LinMap {
        self.inr().transpose()
    }

    /// `a ⊕ b = i_L a π_L + i_R b π_R`.
    pub fn block_diag(&self, a: &LinMap, b: &LinMap) -> LinMap {
        plus(
            &c(&self.inl(), &c(a, &self.pil())),
            &c(&self.inr(), &c(b, &self.pir())),
        )
    }
}

fn unit(on: bool) -> Scalar {
    if on {
        Scalar::one()
    } else {
        Scalar::zero()
    }
}

/// Adjoint comodule on `M = L ⊗ L`: `ρ = (Δ ⊗ α) + τ¹²(α ⊗ Δ)` read as
/// `M → L ⊗ M`, `β = α ⊗ α`, `φ_M = φ ⊗ α + α ⊗ φ`.
///
/// Refused unless the pair passes the Hom-Lie suite and `φα = αφ`; the
/// coderivation identity on `M` needs the commutation.
pub fn adjoint_comodule(pair: &CoDerPair) -> Result<CoDerComodule> {
    validate_as(pair, CoalgebraFlavor::Lie)?;
    let commute = crate::structures::check_phi_commutes_alpha(pair);
    if !commute.passed() {
        return Err(Error::Refused(commute));
    }
    let n = pair.n();
    let (delta, alpha, phi) = (pair.coalg().delta(), pair.coalg().alpha(), pair.phi());
    let rho = plus(&delta.tensor(alpha), &c(&tau12(n), &alpha.tensor(delta))).reinterpret(
        TensorSpace::power(n * n, 1),
        TensorSpace::from_factors(vec![n, n * n]),
    )?;
    let m = TensorSpace::power(n * n, 1);
    let beta = alpha.tensor(alpha).reinterpret(m.clone(), m.clone())?;
    let phi_m = plus(&phi.tensor(alpha), &alpha.tensor(phi)).reinterpret(m.clone(), m)?;
    let base = pair.coalg().with_flavor(CoalgebraFlavor::Lie);
    let pair = CoDerPair::new(base.clone(), phi.clone())?;
    CoDerComodule::new(pair, Comodule::new(base, rho, beta)?, phi_m)
}

/// `Δ̃ = Δ + ρ − τρ` on `L ⊕ M`, with `α̃ = α ⊕ β` and `φ̃ = φ_L ⊕ φ_M`.
///
/// Never refuses: the output passes the Hom-Lie suite exactly when the
/// comodule is valid, and callers rely on seeing both outcomes.
pub fn semidirect_coalgebra(pair: &CoDerPair, comodule: &CoDerComodule) -> Result<CoDerPair> {
    if comodule.pair().coalg().delta() != pair.coalg().delta()
        || comodule.pair().coalg().alpha() != pair.coalg().alpha()
    {
        return Err(Error::Argument(
            "comodule is over a different coalgebra".to_string(),
        ));
    }
    let (n, m) = (pair.n(), comodule.comodule().m());
    let sum = SumSpace::new(n, m);
    let big = sum.dim();
    let (il, im) = (sum.inl(), sum.inr());
    let rho = comodule.comodule().rho();
    let embedded_rho = c(&c(&il.tensor(&im), rho), &sum.pir());
    let delta = plus(
        &c(&c(&il.tensor(&il), pair.coalg().delta()), &sum.pil()),
        &minus(&embedded_rho, &c(&tau(big), &embedded_rho)),
    )
    .reinterpret(sum.space(), TensorSpace::power(big, 2))?;
    let alpha = sum.block_diag(pair.coalg().alpha(), comodule.comodule().beta());
    let phi = sum.block_diag(pair.phi(), comodule.phi_m());
    CoDerPair::new(HomCoalgebra::new(delta, alpha, CoalgebraFlavor::Lie)?, phi)
}

/// Block-diagonal `Δ`, `α`, `φ` on `L₁ ⊕ L₂`. Both pairs must pass their
/// suites and share a flavor.
pub fn direct_sum_coder_pairs(p1: &CoDerPair, p2: &CoDerPair) -> Result<CoDerPair> {
    if p1.flavor() != p2.flavor() {
        return Err(Error::FlavorMismatch {
            expected: p1.flavor().tag(),
            found: p2.flavor().tag(),
        });
    }
    refuse_on_failure(coder_pair_checks(p1))?;
    refuse_on_failure(coder_pair_checks(p2))?;
    let sum = SumSpace::new(p1.n(), p2.n());
    let (i1, i2) = (sum.inl(), sum.inr());
    let delta = plus(
        &c(&c(&i1.tensor(&i1), p1.coalg().delta()), &sum.pil()),
        &c(&c(&i2.tensor(&i2), p2.coalg().delta()), &sum.pir()),
    )
    .reinterpret(sum.space(), TensorSpace::power(sum.dim(), 2))?;
    let alpha = sum.block_diag(p1.coalg().alpha(), p2.coalg().alpha());
    let phi = sum.block_diag(p1.phi(), p2.phi());
    CoDerPair::new(HomCoalgebra::new(delta, alpha, p1.flavor())?, phi)
}

/// Blockwise bracket, twist and derivation on `L ⊕ K`.
pub fn direct_sum_der_pairs(p1: &DerPair, p2: &DerPair) -> Result<DerPair> {
    let (f1, f2) = (p1.alg().flavor(), p2.alg().flavor());
    if f1 != f2 {
        return Err(Error::FlavorMismatch {
            expected: f1.tag(),
            found: f2.tag(),
        });
    }
    refuse_on_failure(der_pair_checks(p1))?;
    refuse_on_failure(der_pair_checks(p2))?;
    let sum = SumSpace::new(p1.n(), p2.n());
    let (p1m, p2m) = (sum.pil(), sum.pir());
    let mu = plus(
        &c(&sum.inl(), &c(p1.alg().mu(), &p1m.tensor(&p1m))),
        &c(&sum.inr(), &c(p2.alg().mu(), &p2m.tensor(&p2m))),
    )
    .reinterpret(TensorSpace::power(sum.dim(), 2), sum.space())?;
    let alpha = sum.block_diag(p1.alg().alpha(), p2.alg().alpha());
    let phi = sum.block_diag(p1.phi(), p2.phi());
    DerPair::new(HomAlgebra::new(mu, alpha, f1)?, phi)
}

/// `[x + X, y + Y] = ([x, y], ρ(x)Y − ρ(y)X)` on `L ⊕ V`, twist `α ⊕ A`,
/// derivation `φ_L ⊕ φ_V`. Never refuses; see [`semidirect_coalgebra`].
pub fn semidirect_algebra(
    pair: &DerPair,
    rep: &crate::structures::Representation,
) -> Result<DerPair> {
    if rep.pair().alg().mu() != pair.alg().mu() || rep.pair().alg().alpha() != pair.alg().alpha() {
        return Err(Error::Argument(
            "representation is over a different algebra".to_string(),
        ));
    }
    let (n, v) = (pair.n(), rep.v());
    let sum = SumSpace::new(n, v);
    let big = sum.dim();
    let (pl, pv) = (sum.pil(), sum.pir());
    let acting = c(&sum.inr(), &c(rep.action(), &pl.tensor(&pv)));
    let mu = plus(
        &c(&sum.inl(), &c(pair.alg().mu(), &pl.tensor(&pl))),
        &minus(&acting, &c(&acting, &tau(big))),
    )
    .reinterpret(TensorSpace::power(big, 2), sum.space())?;
    let alpha = sum.block_diag(pair.alg().alpha(), rep.a_op());
    let phi = sum.block_diag(pair.phi(), rep.phi_v());
    DerPair::new(
        HomAlgebra::new(mu, alpha, crate::structures::AlgebraFlavor::Lie)?,
        phi,
    )
}

fn antisymmetrized(pair: &CoDerPair) -> Result<CoDerPair> {
    let delta = pair.coalg().delta();
    let lie = minus(delta, &c(&tau(pair.n()), delta));
    CoDerPair::new(
        HomCoalgebra::new(lie, pair.coalg().alpha().clone(), CoalgebraFlavor::Lie)?,
        pair.phi().clone(),
    )
}

/// `Δ = Δ₀ − τΔ₀` of a Hom-pre-Lie CoDer pair.
pub fn commutator_pre_lie_to_lie(pair: &CoDerPair) -> Result<CoDerPair> {
    validate_as(pair, CoalgebraFlavor::PreLie)?;
    antisymmetrized(pair)
}

/// `Δ_C = Δ − τΔ` of a Hom-coassociative CoDer pair.
pub fn commutator_ass_to_lie(pair: &CoDerPair) -> Result<CoDerPair> {
    validate_as(pair, CoalgebraFlavor::Coassociative)?;
    antisymmetrized(pair)
}

/// `Δ̃ = (R ⊗ 1)Δ − τ(1 ⊗ R)Δ + λΔ` for `λ ∈ {0, −1}`, a Hom-pre-Lie pair.
pub fn rb_twist(pair: &CoDerPair, rb: &RotaBaxterData) -> Result<CoDerPair> {
    let with_delta = if rb.weight.is_zero() {
        false
    } else if rb.weight == -Scalar::one() {
        true
    } else {
        return Err(Error::UnsupportedWeight(rb.weight.clone()));
    };
    validate_as(pair, CoalgebraFlavor::Coassociative)?;
    let coalg = pair.coalg();
    refuse_on_failure(vec![
        check_rota_baxter(coalg, rb)?,
        CheckReport::compare(
            "rota_baxter.commutes_with_coderivation",
            &c(pair.phi(), &rb.r),
            &c(&rb.r, pair.phi()),
        ),
    ])?;
    let n = pair.n();
    let one = identity(n, 1);
    let delta = coalg.delta();
    let mut twisted = minus(
        &c(&rb.r.tensor(&one), delta),
        &c(&tau(n), &c(&one.tensor(&rb.r), delta)),
    );
    if with_delta {
        twisted = minus(&twisted, delta);
    }
    CoDerPair::new(
        HomCoalgebra::new(twisted, coalg.alpha().clone(), CoalgebraFlavor::PreLie)?,
        pair.phi().clone(),
    )
}

/// The two operator identities `(R ⊗ 1)(α ⊗ φ)Δ = (α ⊗ φ)(R ⊗ 1)Δ` and
/// `τ(1 ⊗ R)(α ⊗ φ)Δ = (φ ⊗ α)τ(1 ⊗ R)Δ`.
pub fn verify_rb_commutation(pair: &CoDerPair, rb: &RotaBaxterData) -> Result<CheckReport> {
    let n = pair.n();
    crate::structures::check_rota_baxter(pair.coalg(), rb)?;
    let one = identity(n, 1);
    let (delta, alpha, phi, r) = (
        pair.coalg().delta(),
        pair.coalg().alpha(),
        pair.phi(),
        &rb.r,
    );
    let r1 = r.tensor(&one);
    let a_phi = alpha.tensor(phi);
    let swap_r = c(&tau(n), &one.tensor(r));
    let reports = vec![
        CheckReport::compare(
            "rb_commutation.left",
            &c(&r1, &c(&a_phi, delta)),
            &c(&a_phi, &c(&r1, delta)),
        ),
        CheckReport::compare(
            "rb_commutation.swapped",
            &c(&swap_r, &c(&a_phi, delta)),
            &c(&phi.tensor(alpha), &c(&swap_r, delta)),
        ),
    ];
    Ok(first_failure(reports).unwrap_or_else(|| CheckReport::pass("rb_commutation")))
}

/// `Δ_c = (1 ⊗ T)Δ − (T ⊗ 1)τΔ`. `T` must be an idempotent endomorphism
/// operator commuting with `φ`, whatever flags `endo` carries.
pub fn endo_twist(pair: &CoDerPair, endo: &EndoOp) -> Result<CoDerPair> {
    validate_as(pair, CoalgebraFlavor::Coassociative)?;
    let strict = EndoOp {
        t: endo.t.clone(),
        require_idempotent: true,
        require_commute_phi: true,
    };
    refuse_on_failure(vec![check_endo_op(
        pair.coalg(),
        &strict,
        Some(pair.phi()),
    )?])?;
    let n = pair.n();
    let one = identity(n, 1);
    let delta = pair.coalg().delta();
    let twisted = minus(
        &c(&one.tensor(&endo.t), delta),
        &c(&endo.t.tensor(&one), &c(&tau(n), delta)),
    );
    CoDerPair::new(
        HomCoalgebra::new(twisted, pair.coalg().alpha().clone(), CoalgebraFlavor::Lie)?,
        pair.phi().clone(),
    )
}
