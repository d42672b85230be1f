//! Structure types and one exact checker per axiom.
//!
//! A structure only validates its shapes on construction. Whether it
//! actually satisfies the axioms of its flavor is decided by the checkers,
//! which return a [`CheckReport`] instead of failing.

mod bundle;
mod checks;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linear::{LinMap, TensorSpace};
use crate::scalar::Scalar;

pub use self::bundle::{check_bundle, Bundle, ModuleData, Side};
pub use self::checks::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoalgebraFlavor {
    Lie,
    Coassociative,
    PreLie,
    Unchecked,
}

impl CoalgebraFlavor {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Lie => "lie",
            Self::Coassociative => "coassociative",
            Self::PreLie => "pre_lie",
            Self::Unchecked => "unchecked",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        Ok(match tag {
            "lie" => Self::Lie,
            "coassociative" => Self::Coassociative,
            "pre_lie" => Self::PreLie,
            "unchecked" => Self::Unchecked,
            other => return Err(Error::UnknownFlavor(other.to_string())),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraFlavor {
    Lie,
    Associative,
    Unchecked,
}

impl AlgebraFlavor {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Lie => "lie",
            Self::Associative => "associative",
            Self::Unchecked => "unchecked",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        Ok(match tag {
            "lie" => Self::Lie,
            "associative" => Self::Associative,
            "unchecked" => Self::Unchecked,
            other => return Err(Error::UnknownFlavor(other.to_string())),
        })
    }
}

fn expect_map(
    what: &'static str,
    map: &LinMap,
    domain: &TensorSpace,
    codomain: &TensorSpace,
) -> Result<()> {
    if map.domain() != domain {
        return Err(Error::Dimension {
            op: what,
            left: map.domain().clone(),
            right: domain.clone(),
        });
    }
    if map.codomain() != codomain {
        return Err(Error::Dimension {
            op: what,
            left: map.codomain().clone(),
            right: codomain.clone(),
        });
    }
    Ok(())
}

fn expect_endo(what: &'static str, map: &LinMap, n: usize) -> Result<()> {
    let space = TensorSpace::power(n, 1);
    expect_map(what, map, &space, &space)
}

fn base_dim_of(what: &'static str, map: &LinMap) -> Result<usize> {
    match (map.domain().arity(), map.domain().base_dim()) {
        (1, Some(n)) => Ok(n),
        _ => Err(Error::Argument(format!(
            "{what} must be defined on a single space, got {}",
            map.domain()
        ))),
    }
}

/// `Δ(e_i) = Σ c · e_j ⊗ e_k` from `(i, j, k, c)` terms.
pub fn delta_from_terms(n: usize, terms: &[(usize, usize, usize, Scalar)]) -> LinMap {
    let mut delta = LinMap::zero(TensorSpace::power(n, 1), TensorSpace::power(n, 2));
    for (i, j, k, c) in terms {
        let row = j * n + k;
        let value = delta.entry(row, *i) + c;
        delta.set(row, *i, value);
    }
    delta
}

/// `[e_i, e_j] = Σ c · e_k` from `(i, j, k, c)` terms. Only the listed
/// products are set; skew partners must be listed explicitly.
pub fn mu_from_terms(n: usize, terms: &[(usize, usize, usize, Scalar)]) -> LinMap {
    let mut mu = LinMap::zero(TensorSpace::power(n, 2), TensorSpace::power(n, 1));
    for (i, j, k, c) in terms {
        let col = i * n + j;
        let value = mu.entry(*k, col) + c;
        mu.set(*k, col, value);
    }
    mu
}

/// A Hom-coalgebra `(L, Δ, α)` together with the flavor it claims.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomCoalgebra {
    delta: LinMap,
    alpha: LinMap,
    flavor: CoalgebraFlavor,
}

impl HomCoalgebra {
    pub fn new(delta: LinMap, alpha: LinMap, flavor: CoalgebraFlavor) -> Result<Self> {
        let n = base_dim_of("delta", &delta)?;
        expect_map(
            "delta",
            &delta,
            &TensorSpace::power(n, 1),
            &TensorSpace::power(n, 2),
        )?;
        expect_endo("alpha", &alpha, n)?;
        Ok(Self {
            delta,
            alpha,
            flavor,
        })
    }

    /// Untwisted structure, `α = id`.
    pub fn classical(delta: LinMap, flavor: CoalgebraFlavor) -> Result<Self> {
        let n = base_dim_of("delta", &delta)?;
        Self::new(delta, crate::linear::identity(n, 1), flavor)
    }

    pub fn n(&self) -> usize {
        self.alpha.cols()
    }

    pub fn delta(&self) -> &LinMap {
        &self.delta
    }

    pub fn alpha(&self) -> &LinMap {
        &self.alpha
    }

    pub fn flavor(&self) -> CoalgebraFlavor {
        self.flavor
    }

    pub fn with_flavor(&self, flavor: CoalgebraFlavor) -> Self {
        Self {
            flavor,
            ..self.clone()
        }
    }
}

/// A Hom-coalgebra with a chosen α-coderivation `φ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoDerPair {
    coalg: HomCoalgebra,
    phi: LinMap,
}

impl CoDerPair {
    pub fn new(coalg: HomCoalgebra, phi: LinMap) -> Result<Self> {
        expect_endo("phi", &phi, coalg.n())?;
        Ok(Self { coalg, phi })
    }

    pub fn coalg(&self) -> &HomCoalgebra {
        &self.coalg
    }

    pub fn phi(&self) -> &LinMap {
        &self.phi
    }

    pub fn n(&self) -> usize {
        self.coalg.n()
    }

    pub fn flavor(&self) -> CoalgebraFlavor {
        self.coalg.flavor
    }
}

/// A Hom-algebra `(L, μ, α)`, `μ : L ⊗ L → L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomAlgebra {
    mu: LinMap,
    alpha: LinMap,
    flavor: AlgebraFlavor,
}

impl HomAlgebra {
    pub fn new(mu: LinMap, alpha: LinMap, flavor: AlgebraFlavor) -> Result<Self> {
        let n = alpha.cols();
        expect_endo("alpha", &alpha, n)?;
        expect_map(
            "mu",
            &mu,
            &TensorSpace::power(n, 2),
            &TensorSpace::power(n, 1),
        )?;
        Ok(Self { mu, alpha, flavor })
    }

    pub fn classical(mu: LinMap, flavor: AlgebraFlavor) -> Result<Self> {
        let n = mu.rows();
        Self::new(mu, crate::linear::identity(n, 1), flavor)
    }

    pub fn n(&self) -> usize {
        self.alpha.cols()
    }

    pub fn mu(&self) -> &LinMap {
        &self.mu
    }

    pub fn alpha(&self) -> &LinMap {
        &self.alpha
    }

    pub fn flavor(&self) -> AlgebraFlavor {
        self.flavor
    }
}

/// A Hom-algebra with a chosen α-derivation `φ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DerPair {
    alg: HomAlgebra,
    phi: LinMap,
}

impl DerPair {
    pub fn new(alg: HomAlgebra, phi: LinMap) -> Result<Self> {
        expect_endo("phi", &phi, alg.n())?;
        Ok(Self { alg, phi })
    }

    pub fn alg(&self) -> &HomAlgebra {
        &self.alg
    }

    pub fn phi(&self) -> &LinMap {
        &self.phi
    }

    pub fn n(&self) -> usize {
        self.alg.n()
    }
}

/// A comodule `(M, ρ, β)` over a Hom-coalgebra, with `ρ : M → L ⊗ M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Comodule {
    base: HomCoalgebra,
    rho: LinMap,
    beta: LinMap,
}

impl Comodule {
    pub fn new(base: HomCoalgebra, rho: LinMap, beta: LinMap) -> Result<Self> {
        let m = beta.cols();
        expect_endo("beta", &beta, m)?;
        expect_map(
            "rho",
            &rho,
            &TensorSpace::power(m, 1),
            &TensorSpace::from_factors(alloc::vec![base.n(), m]),
        )?;
        Ok(Self { base, rho, beta })
    }

    pub fn base(&self) -> &HomCoalgebra {
        &self.base
    }

    pub fn rho(&self) -> &LinMap {
        &self.rho
    }

    pub fn beta(&self) -> &LinMap {
        &self.beta
    }

    pub fn m(&self) -> usize {
        self.beta.cols()
    }
}

/// A comodule of a CoDer pair carrying its own coderivation `φ_M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoDerComodule {
    pair: CoDerPair,
    comodule: Comodule,
    phi_m: LinMap,
}

impl CoDerComodule {
    pub fn new(pair: CoDerPair, comodule: Comodule, phi_m: LinMap) -> Result<Self> {
        if comodule.base() != pair.coalg() {
            return Err(Error::Argument(
                "comodule and pair are over different coalgebras".to_string(),
            ));
        }
        expect_endo("phi_m", &phi_m, comodule.m())?;
        Ok(Self {
            pair,
            comodule,
            phi_m,
        })
    }

    pub fn pair(&self) -> &CoDerPair {
        &self.pair
    }

    pub fn comodule(&self) -> &Comodule {
        &self.comodule
    }

    pub fn phi_m(&self) -> &LinMap {
        &self.phi_m
    }
}

/// A representation `(V; ρ_A, φ_V)` of a Hom-Lie Der pair, stored as the
/// action map `L ⊗ V → V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    pair: DerPair,
    action: LinMap,
    a_op: LinMap,
    phi_v: LinMap,
}

impl Representation {
    pub fn new(pair: DerPair, action: LinMap, a_op: LinMap, phi_v: LinMap) -> Result<Self> {
        let v = a_op.cols();
        expect_endo("a_op", &a_op, v)?;
        expect_endo("phi_v", &phi_v, v)?;
        expect_map(
            "action",
            &action,
            &TensorSpace::from_factors(alloc::vec![pair.n(), v]),
            &TensorSpace::power(v, 1),
        )?;
        Ok(Self {
            pair,
            action,
            a_op,
            phi_v,
        })
    }

    /// `V = L`, acting by the bracket, with `A = α` and `φ_V = φ_L`.
    pub fn adjoint(pair: &DerPair) -> Self {
        let n = pair.n();
        let action = pair
            .alg()
            .mu()
            .reinterpret(
                TensorSpace::from_factors(alloc::vec![n, n]),
                TensorSpace::power(n, 1),
            )
            .expect("bracket has the adjoint action's shape");
        Self {
            pair: pair.clone(),
            action,
            a_op: pair.alg().alpha().clone(),
            phi_v: pair.phi().clone(),
        }
    }

    pub fn pair(&self) -> &DerPair {
        &self.pair
    }

    pub fn action(&self) -> &LinMap {
        &self.action
    }

    pub fn a_op(&self) -> &LinMap {
        &self.a_op
    }

    pub fn phi_v(&self) -> &LinMap {
        &self.phi_v
    }

    pub fn v(&self) -> usize {
        self.a_op.cols()
    }
}

/// Rota-Baxter operator `R` of weight `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotaBaxterData {
    pub r: LinMap,
    pub weight: Scalar,
}

/// Endomorphism operator `T` with the optional extra requirements
/// `T² = T` and `Tφ = φT`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EndoOp {
    pub t: LinMap,
    pub require_idempotent: bool,
    pub require_commute_phi: bool,
}

/// The basis input on which an identity failed, with both sides evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub input: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
}

/// Outcome of one identity check. Fails exactly when a witness is present.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CheckReport {
    pub identity_name: String,
    passed: bool,
    witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass(identity_name: impl Into<String>) -> Self {
        Self {
            identity_name: identity_name.into(),
            passed: true,
            witness: None,
        }
    }

    pub fn fail(identity_name: impl Into<String>, witness: Witness) -> Self {
        Self {
            identity_name: identity_name.into(),
            passed: false,
            witness: Some(witness),
        }
    }

    pub fn from_parts(identity_name: impl Into<String>, witness: Option<Witness>) -> Self {
        match witness {
            Some(w) => Self::fail(identity_name, w),
            None => Self::pass(identity_name),
        }
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    /// Compares two maps with equal spaces column by column; the first
    /// differing basis input becomes the witness.
    pub fn compare(identity_name: impl Into<String>, lhs: &LinMap, rhs: &LinMap) -> Self {
        debug_assert_eq!(lhs.domain(), rhs.domain());
        debug_assert_eq!(lhs.codomain(), rhs.codomain());
        for col in 0..lhs.cols() {
            let (l, r) = (lhs.column(col), rhs.column(col));
            if l != r {
                return Self::fail(
                    identity_name,
                    Witness {
                        input: lhs.domain().tuple_of(col),
                        lhs: l,
                        rhs: r,
                    },
                );
            }
        }
        Self::pass(identity_name)
    }

    /// Checks that `map` is the zero map.
    pub fn vanishes(identity_name: impl Into<String>, map: &LinMap) -> Self {
        let zero = LinMap::zero(map.domain().clone(), map.codomain().clone());
        Self::compare(identity_name, map, &zero)
    }
}

/// True when every report passed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(CheckReport::passed)
}

/// The first failing report, if any.
pub fn first_failure(reports: Vec<CheckReport>) -> Option<CheckReport> {
    reports.into_iter().find(|r| !r.passed())
}
