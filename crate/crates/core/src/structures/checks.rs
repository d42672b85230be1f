use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linear::{identity, perm_operator_on, tau, tau12, xi, xi_sq, LinMap, TensorSpace};

use super::{
    expect_endo, expect_map, AlgebraFlavor, CheckReport, CoDerComodule, CoDerPair, CoalgebraFlavor,
    Comodule, DerPair, EndoOp, HomAlgebra, HomCoalgebra, Representation, RotaBaxterData,
};

// Structures are shape-checked on construction, so composites of their own
// maps cannot fail.
fn c(g: &LinMap, f: &LinMap) -> LinMap {
    g.compose(f).expect("structure maps compose")
}

fn plus(a: &LinMap, b: &LinMap) -> LinMap {
    a.add(b).expect("summands share spaces")
}

fn minus(a: &LinMap, b: &LinMap) -> LinMap {
    a.sub(b).expect("operands share spaces")
}

fn cyclic_sum(n: usize, x: &LinMap) -> LinMap {
    plus(&plus(x, &c(&xi(n), x)), &c(&xi_sq(n), x))
}

pub fn check_skew(coalg: &HomCoalgebra) -> CheckReport {
    let n = coalg.n();
    let delta = coalg.delta();
    CheckReport::compare("skew_symmetry", delta, &c(&tau(n), delta).neg())
}

/// `(1 + ξ + ξ²)(α ⊗ Δ)Δ = 0`.
pub fn check_hom_co_jacobi(coalg: &HomCoalgebra) -> CheckReport {
    let n = coalg.n();
    let delta = coalg.delta();
    let x = c(&coalg.alpha().tensor(delta), delta);
    CheckReport::vanishes("hom_co_jacobi", &cyclic_sum(n, &x))
}

/// `(α ⊗ Δ)Δ = (Δ ⊗ α)Δ`.
pub fn check_hom_coassoc(coalg: &HomCoalgebra) -> CheckReport {
    let (delta, alpha) = (coalg.delta(), coalg.alpha());
    CheckReport::compare(
        "hom_coassociativity",
        &c(&alpha.tensor(delta), delta),
        &c(&delta.tensor(alpha), delta),
    )
}

/// `(α ⊗ α)Δ = Δα`.
pub fn check_multiplicative(coalg: &HomCoalgebra) -> CheckReport {
    let (delta, alpha) = (coalg.delta(), coalg.alpha());
    CheckReport::compare(
        "multiplicativity",
        &c(&alpha.tensor(alpha), delta),
        &c(delta, alpha),
    )
}

/// `(1 − τ¹²)((Δ ⊗ α)Δ − (α ⊗ Δ)Δ) = 0`.
pub fn check_hom_pre_lie(coalg: &HomCoalgebra) -> CheckReport {
    let (delta, alpha) = (coalg.delta(), coalg.alpha());
    let defect = minus(
        &c(&delta.tensor(alpha), delta),
        &c(&alpha.tensor(delta), delta),
    );
    let symmetrized = minus(&defect, &c(&tau12(coalg.n()), &defect));
    CheckReport::vanishes("hom_pre_lie", &symmetrized)
}

/// `Δφ = (φ ⊗ α)Δ + (α ⊗ φ)Δ`.
pub fn check_coderivation(coalg: &HomCoalgebra, phi: &LinMap) -> Result<CheckReport> {
    expect_endo("phi", phi, coalg.n())?;
    Ok(coderivation_report(coalg, phi))
}

fn coderivation_report(coalg: &HomCoalgebra, phi: &LinMap) -> CheckReport {
    let (delta, alpha) = (coalg.delta(), coalg.alpha());
    let rhs = plus(&c(&phi.tensor(alpha), delta), &c(&alpha.tensor(phi), delta));
    CheckReport::compare("coderivation", &c(delta, phi), &rhs)
}

/// Advisory only: `φα = αφ`. The pair axioms never require it.
pub fn check_phi_commutes_alpha(pair: &CoDerPair) -> CheckReport {
    let (phi, alpha) = (pair.phi(), pair.coalg().alpha());
    CheckReport::compare("phi_commutes_alpha", &c(phi, alpha), &c(alpha, phi))
}

/// The axioms of the coalgebra's flavor, plus multiplicativity. Unchecked
/// coalgebras have none.
pub fn coalgebra_checks(coalg: &HomCoalgebra) -> Vec<CheckReport> {
    match coalg.flavor() {
        CoalgebraFlavor::Lie => vec![
            check_skew(coalg),
            check_hom_co_jacobi(coalg),
            check_multiplicative(coalg),
        ],
        CoalgebraFlavor::Coassociative => {
            vec![check_hom_coassoc(coalg), check_multiplicative(coalg)]
        }
        CoalgebraFlavor::PreLie => vec![check_hom_pre_lie(coalg), check_multiplicative(coalg)],
        CoalgebraFlavor::Unchecked => Vec::new(),
    }
}

/// Full suite of a CoDer pair: flavor axioms, multiplicativity, coderivation.
pub fn coder_pair_checks(pair: &CoDerPair) -> Vec<CheckReport> {
    let mut reports = coalgebra_checks(pair.coalg());
    reports.push(coderivation_report(pair.coalg(), pair.phi()));
    reports
}

/// Skew-symmetry, multiplicativity and the cyclic Hom-Jacobi identity.
pub fn check_hom_lie_algebra(alg: &HomAlgebra) -> CheckReport {
    let n = alg.n();
    let (mu, alpha) = (alg.mu(), alg.alpha());
    let skew = CheckReport::compare("hom_lie_algebra.skew_symmetry", &c(mu, &tau(n)), &mu.neg());
    if !skew.passed() {
        return skew;
    }
    let mult = check_algebra_multiplicative(alg);
    if !mult.passed() {
        return CheckReport::from_parts("hom_lie_algebra.multiplicativity", mult.witness);
    }
    let jacobi = c(&c(mu, &alpha.tensor(mu)), &cyclic_sum_dual(n));
    let report = CheckReport::vanishes("hom_lie_algebra.hom_jacobi", &jacobi);
    if !report.passed() {
        return report;
    }
    CheckReport::pass("hom_lie_algebra")
}

fn cyclic_sum_dual(n: usize) -> LinMap {
    plus(&plus(&identity(n, 3), &xi(n)), &xi_sq(n))
}

/// `αμ = μ(α ⊗ α)`.
pub fn check_algebra_multiplicative(alg: &HomAlgebra) -> CheckReport {
    let (mu, alpha) = (alg.mu(), alg.alpha());
    CheckReport::compare(
        "multiplicativity",
        &c(alpha, mu),
        &c(mu, &alpha.tensor(alpha)),
    )
}

/// `μ(μ ⊗ α) = μ(α ⊗ μ)`.
pub fn check_hom_assoc_algebra(alg: &HomAlgebra) -> CheckReport {
    let (mu, alpha) = (alg.mu(), alg.alpha());
    CheckReport::compare(
        "hom_associativity",
        &c(mu, &mu.tensor(alpha)),
        &c(mu, &alpha.tensor(mu)),
    )
}

pub fn algebra_checks(alg: &HomAlgebra) -> Vec<CheckReport> {
    match alg.flavor() {
        AlgebraFlavor::Lie => vec![check_hom_lie_algebra(alg)],
        AlgebraFlavor::Associative => vec![
            check_hom_assoc_algebra(alg),
            check_algebra_multiplicative(alg),
        ],
        AlgebraFlavor::Unchecked => Vec::new(),
    }
}

/// `φμ = μ(φ ⊗ α) + μ(α ⊗ φ)`.
pub fn check_derivation(alg: &HomAlgebra, phi: &LinMap) -> Result<CheckReport> {
    expect_endo("phi", phi, alg.n())?;
    Ok(derivation_report(alg, phi))
}

fn derivation_report(alg: &HomAlgebra, phi: &LinMap) -> CheckReport {
    let (mu, alpha) = (alg.mu(), alg.alpha());
    let rhs = plus(&c(mu, &phi.tensor(alpha)), &c(mu, &alpha.tensor(phi)));
    CheckReport::compare("derivation", &c(phi, mu), &rhs)
}

pub fn der_pair_checks(pair: &DerPair) -> Vec<CheckReport> {
    let mut reports = algebra_checks(pair.alg());
    reports.push(derivation_report(pair.alg(), pair.phi()));
    reports
}

/// Both comodule axioms: `ρβ = (α ⊗ β)ρ` and
/// `(Δ ⊗ β)ρ = (α ⊗ ρ)ρ − (τ ⊗ id_M)(α ⊗ ρ)ρ`.
pub fn check_comodule(comodule: &Comodule) -> CheckReport {
    let base = comodule.base();
    let (n, m) = (base.n(), comodule.m());
    let (rho, beta, alpha) = (comodule.rho(), comodule.beta(), base.alpha());
    let twist = CheckReport::compare(
        "comodule.twist_compatibility",
        &c(rho, beta),
        &c(&alpha.tensor(beta), rho),
    );
    if !twist.passed() {
        return twist;
    }
    let iterated = c(&alpha.tensor(rho), rho);
    let swap = perm_operator_on(&TensorSpace::from_factors(vec![n, n, m]), &[1, 0, 2])
        .expect("fixed permutation");
    let rhs = minus(&iterated, &c(&swap, &iterated));
    let lhs = c(&base.delta().tensor(beta), rho);
    let coaction = CheckReport::compare("comodule.coaction_identity", &lhs, &rhs);
    if !coaction.passed() {
        return coaction;
    }
    CheckReport::pass("comodule")
}

/// `ρφ_M = (φ_L ⊗ β)ρ + (α ⊗ φ_M)ρ`.
pub fn check_coder_comodule(comodule: &CoDerComodule) -> CheckReport {
    let inner = comodule.comodule();
    let (rho, beta) = (inner.rho(), inner.beta());
    let alpha = inner.base().alpha();
    let (phi_l, phi_m) = (comodule.pair().phi(), comodule.phi_m());
    let rhs = plus(&c(&phi_l.tensor(beta), rho), &c(&alpha.tensor(phi_m), rho));
    CheckReport::compare("coder_comodule", &c(rho, phi_m), &rhs)
}

/// `(R ⊗ R)Δ = (1 ⊗ R)ΔR + (R ⊗ 1)ΔR + λΔR` and `Rα = αR`.
pub fn check_rota_baxter(coalg: &HomCoalgebra, rb: &RotaBaxterData) -> Result<CheckReport> {
    let n = coalg.n();
    expect_endo("R", &rb.r, n)?;
    let (delta, alpha, r) = (coalg.delta(), coalg.alpha(), &rb.r);
    let one = identity(n, 1);
    let delta_r = c(delta, r);
    let rhs = plus(
        &plus(&c(&one.tensor(r), &delta_r), &c(&r.tensor(&one), &delta_r)),
        &delta_r.scale(&rb.weight),
    );
    let identity_report = CheckReport::compare("rota_baxter", &c(&r.tensor(r), delta), &rhs);
    if !identity_report.passed() {
        return Ok(identity_report);
    }
    let commute = CheckReport::compare(
        "rota_baxter.commutes_with_twist",
        &c(r, alpha),
        &c(alpha, r),
    );
    if !commute.passed() {
        return Ok(commute);
    }
    Ok(CheckReport::pass("rota_baxter"))
}

/// `ΔT = (T ⊗ T)Δ`, `Tα = αT`, and when flagged `T² = T`, `Tφ = φT`.
pub fn check_endo_op(
    coalg: &HomCoalgebra,
    endo: &EndoOp,
    phi: Option<&LinMap>,
) -> Result<CheckReport> {
    let n = coalg.n();
    let t = &endo.t;
    expect_endo("T", t, n)?;
    let phi = match (endo.require_commute_phi, phi) {
        (true, None) => return Err(Error::MissingOperator("phi")),
        (true, Some(phi)) => {
            expect_endo("phi", phi, n)?;
            Some(phi)
        }
        (false, _) => None,
    };
    let (delta, alpha) = (coalg.delta(), coalg.alpha());
    let mut reports = vec![
        CheckReport::compare(
            "endomorphism_operator.coalgebra_morphism",
            &c(delta, t),
            &c(&t.tensor(t), delta),
        ),
        CheckReport::compare(
            "endomorphism_operator.commutes_with_twist",
            &c(t, alpha),
            &c(alpha, t),
        ),
    ];
    if endo.require_idempotent {
        reports.push(CheckReport::compare(
            "endomorphism_operator.idempotent",
            &c(t, t),
            t,
        ));
    }
    if let Some(phi) = phi {
        reports.push(CheckReport::compare(
            "endomorphism_operator.commutes_with_coderivation",
            &c(t, phi),
            &c(phi, t),
        ));
    }
    Ok(first_or_pass("endomorphism_operator", reports))
}

fn first_or_pass(name: &str, reports: Vec<CheckReport>) -> CheckReport {
    super::first_failure(reports).unwrap_or_else(|| CheckReport::pass(name))
}

/// `(h ⊗ h)Δ₁ = Δ₂h`, `hα₁ = α₂h`, `hφ₁ = φ₂h`.
pub fn check_pair_morphism(src: &CoDerPair, dst: &CoDerPair, h: &LinMap) -> Result<CheckReport> {
    expect_map(
        "h",
        h,
        &TensorSpace::power(src.n(), 1),
        &TensorSpace::power(dst.n(), 1),
    )?;
    let (s, d) = (src.coalg(), dst.coalg());
    let reports = vec![
        CheckReport::compare(
            "pair_morphism.coalgebra_morphism",
            &c(&h.tensor(h), s.delta()),
            &c(d.delta(), h),
        ),
        CheckReport::compare("pair_morphism.twist", &c(h, s.alpha()), &c(d.alpha(), h)),
        CheckReport::compare(
            "pair_morphism.coderivation",
            &c(h, src.phi()),
            &c(dst.phi(), h),
        ),
    ];
    Ok(first_or_pass("pair_morphism", reports))
}

/// The Hom-Lie representation laws with `A` as module twist, and
/// `φ_V ρ(x) − ρ(α x) φ_V = ρ(φ_L x) A`.
pub fn check_representation(rep: &Representation) -> CheckReport {
    let pair = rep.pair();
    let (n, v) = (pair.n(), rep.v());
    let (mu, alpha, phi_l) = (pair.alg().mu(), pair.alg().alpha(), pair.phi());
    let (act, a_op, phi_v) = (rep.action(), rep.a_op(), rep.phi_v());
    let iterated = c(act, &alpha.tensor(act));
    let swap = perm_operator_on(&TensorSpace::from_factors(vec![n, n, v]), &[1, 0, 2])
        .expect("fixed permutation");
    let reports = vec![
        CheckReport::compare(
            "representation.twist_compatibility",
            &c(act, &alpha.tensor(a_op)),
            &c(a_op, act),
        ),
        CheckReport::compare(
            "representation.bracket_law",
            &c(act, &mu.tensor(a_op)),
            &minus(&iterated, &c(&iterated, &swap)),
        ),
        CheckReport::compare(
            "representation.derivation_compatibility",
            &minus(&c(phi_v, act), &c(act, &alpha.tensor(phi_v))),
            &c(act, &phi_l.tensor(a_op)),
        ),
    ];
    first_or_pass("representation", reports)
}
