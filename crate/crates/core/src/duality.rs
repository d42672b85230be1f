//! Dualization between coalgebra-side and algebra-side structures.
//!
//! Under dual bases every structure map is replaced by its transpose:
//! `μ = Δᵀ`, `α* = αᵀ`, `φ* = φᵀ`, and a coaction `ρ : M → L ⊗ M` becomes
//! the action `ρᵀ : L* ⊗ M* → M*`. Transposition is an involution, so
//! dualizing twice returns the original matrices.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linear::LinMap;
use crate::structures::{
    check_coder_comodule, check_comodule, check_representation, coder_pair_checks, der_pair_checks,
    first_failure, AlgebraFlavor, Bundle, CheckReport, CoDerComodule, CoDerPair, CoalgebraFlavor,
    Comodule, DerPair, HomAlgebra, HomCoalgebra, Representation, Side,
};

const BASIS_NOTE: &str =
    "dual basis e_i* of the canonical basis; every map transposed, twist included";

fn refuse_on_failure(reports: Vec<CheckReport>) -> Result<()> {
    match first_failure(reports) {
        Some(report) => Err(Error::Refused(report)),
        None => Ok(()),
    }
}

fn coalgebra_to_algebra_flavor(flavor: CoalgebraFlavor) -> AlgebraFlavor {
    match flavor {
        CoalgebraFlavor::Lie => AlgebraFlavor::Lie,
        CoalgebraFlavor::Coassociative => AlgebraFlavor::Associative,
        CoalgebraFlavor::PreLie | CoalgebraFlavor::Unchecked => AlgebraFlavor::Unchecked,
    }
}

fn algebra_to_coalgebra_flavor(flavor: AlgebraFlavor) -> CoalgebraFlavor {
    match flavor {
        AlgebraFlavor::Lie => CoalgebraFlavor::Lie,
        AlgebraFlavor::Associative => CoalgebraFlavor::Coassociative,
        AlgebraFlavor::Unchecked => CoalgebraFlavor::Unchecked,
    }
}

/// `μ = Δᵀ`, `α* = αᵀ`. Pre-Lie coalgebras dualize to unchecked algebras.
pub fn dualize_coalgebra(coalg: &HomCoalgebra) -> HomAlgebra {
    HomAlgebra::new(
        coalg.delta().transpose(),
        coalg.alpha().transpose(),
        coalgebra_to_algebra_flavor(coalg.flavor()),
    )
    .expect("transposed cobracket is a bracket")
}

/// `Δ = μᵀ`, `α* = αᵀ`.
pub fn dualize_algebra(alg: &HomAlgebra) -> HomCoalgebra {
    HomCoalgebra::new(
        alg.mu().transpose(),
        alg.alpha().transpose(),
        algebra_to_coalgebra_flavor(alg.flavor()),
    )
    .expect("transposed bracket is a cobracket")
}

/// The Der pair `(L*, Δᵀ, φᵀ, αᵀ)`; refused unless the pair passes its suite.
pub fn dualize_coder_pair(pair: &CoDerPair) -> Result<DerPair> {
    refuse_on_failure(coder_pair_checks(pair))?;
    DerPair::new(dualize_coalgebra(pair.coalg()), pair.phi().transpose())
}

pub fn dualize_der_pair(pair: &DerPair) -> Result<CoDerPair> {
    refuse_on_failure(der_pair_checks(pair))?;
    CoDerPair::new(dualize_algebra(pair.alg()), pair.phi().transpose())
}

/// The representation of the dual Der pair on `M*` with action `ρᵀ`,
/// `A = βᵀ`, `φ_V = φ_Mᵀ`.
pub fn dualize_comodule(comodule: &CoDerComodule) -> Result<Representation> {
    let inner = comodule.comodule();
    refuse_on_failure(alloc::vec![
        check_comodule(inner),
        check_coder_comodule(comodule)
    ])?;
    Representation::new(
        dualize_coder_pair(comodule.pair())?,
        inner.rho().transpose(),
        inner.beta().transpose(),
        comodule.phi_m().transpose(),
    )
}

pub fn dualize_representation(rep: &Representation) -> Result<CoDerComodule> {
    refuse_on_failure(alloc::vec![check_representation(rep)])?;
    let pair = dualize_der_pair(rep.pair())?;
    let comodule = Comodule::new(
        pair.coalg().clone(),
        rep.action().transpose(),
        rep.a_op().transpose(),
    )?;
    CoDerComodule::new(pair, comodule, rep.phi_v().transpose())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    CoalgebraToAlgebra,
    AlgebraToCoalgebra,
}

impl Direction {
    pub fn tag(self) -> &'static str {
        match self {
            Direction::CoalgebraToAlgebra => "coalgebra_to_algebra",
            Direction::AlgebraToCoalgebra => "algebra_to_coalgebra",
        }
    }
}

/// Records which bundle was dualized into which, by content fingerprint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityCertificate {
    pub source_id: String,
    pub target_id: String,
    pub direction: Direction,
    pub note: &'static str,
}

impl DualityCertificate {
    pub fn new(source: &Bundle, target: &Bundle) -> Self {
        let direction = if source.is_coalgebra() {
            Direction::CoalgebraToAlgebra
        } else {
            Direction::AlgebraToCoalgebra
        };
        Self {
            source_id: fingerprint(source),
            target_id: fingerprint(target),
            direction,
            note: BASIS_NOTE,
        }
    }
}

/// SHA-256 over a canonical text rendering of the bundle's flavor and
/// matrices, as lowercase hex.
pub fn fingerprint(bundle: &Bundle) -> String {
    let mut text = format!("{}|{}|", bundle.dimension, bundle.flavor);
    let side = match &bundle.side {
        Side::Coalgebra { delta } => ("delta", delta),
        Side::Algebra { mu } => ("mu", mu),
    };
    let module = bundle.module.as_ref();
    let named = [
        Some(side),
        bundle.alpha.as_ref().map(|m| ("alpha", m)),
        bundle.phi.as_ref().map(|m| ("phi", m)),
        bundle.r.as_ref().map(|m| ("R", m)),
        bundle.t.as_ref().map(|m| ("T", m)),
        module.map(|m| ("structure", &m.structure)),
        module.map(|m| ("twist", &m.twist)),
        module.and_then(|m| m.derivation.as_ref().map(|d| ("derivation", d))),
    ];
    for (name, map) in named.into_iter().flatten() {
        render(&mut text, name, map);
    }
    if let Some(lambda) = &bundle.lambda {
        let _ = write!(text, "lambda={lambda}|");
    }
    let digest = Sha256::digest(text.as_bytes());
    let mut hex = String::with_capacity(64);
    for byte in digest {
        let _ = write!(hex, "{byte:02x}");
    }
    hex
}

fn render(out: &mut String, name: &str, map: &LinMap) {
    let _ = write!(out, "{name}:{}x{}:", map.rows(), map.cols());
    for entry in map.entries() {
        let _ = write!(out, "{entry},");
    }
    out.push('|');
}

/// Dualizes whatever a bundle holds: a coalgebra, pair or comodule, or
/// their algebra-side counterparts. `R`, `T` and `λ` have no dual here.
pub fn dualize_bundle(bundle: &Bundle) -> Result<(Bundle, DualityCertificate)> {
    if bundle.r.is_some() || bundle.t.is_some() {
        return Err(Error::Argument(
            "bundles carrying R or T cannot be dualized".to_string(),
        ));
    }
    let dual = match (&bundle.side, &bundle.module, &bundle.phi) {
        (Side::Coalgebra { .. }, Some(_), _) => {
            Bundle::from_representation(&dualize_comodule(&bundle.coder_comodule()?)?)
        }
        (Side::Coalgebra { .. }, None, Some(_)) => {
            Bundle::from_der_pair(&dualize_coder_pair(&bundle.coder_pair()?)?)
        }
        (Side::Coalgebra { .. }, None, None) => {
            Bundle::from_algebra(&dualize_coalgebra(&bundle.coalgebra()?))
        }
        (Side::Algebra { .. }, Some(_), _) => {
            Bundle::from_coder_comodule(&dualize_representation(&bundle.representation()?)?)
        }
        (Side::Algebra { .. }, None, Some(_)) => {
            Bundle::from_coder_pair(&dualize_der_pair(&bundle.der_pair()?)?)
        }
        (Side::Algebra { .. }, None, None) => {
            Bundle::from_coalgebra(&dualize_algebra(&bundle.algebra()?))
        }
    };
    let certificate = DualityCertificate::new(bundle, &dual);
    Ok((dual, certificate))
}
