use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linear::{identity, LinMap, TensorSpace};
use crate::scalar::Scalar;

use super::checks::*;
use super::{
    AlgebraFlavor, CheckReport, CoDerComodule, CoDerPair, CoalgebraFlavor, Comodule, DerPair,
    EndoOp, HomAlgebra, HomCoalgebra, Representation, RotaBaxterData,
};

/// Which side of the duality a bundle lives on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Coalgebra { delta: LinMap },
    Algebra { mu: LinMap },
}

/// A comodule (coalgebra side) or representation (algebra side) attached to
/// a bundle. `structure` is `ρ : M → L ⊗ M` or the action `L ⊗ V → V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleData {
    pub dim: usize,
    pub structure: LinMap,
    pub twist: LinMap,
    pub derivation: Option<LinMap>,
}

/// Everything a bundle file can carry, before any axiom is checked.
///
/// `flavor` stays a raw tag until [`check_bundle`] or one of the typed
/// accessors interprets it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bundle {
    pub dimension: usize,
    pub flavor: String,
    pub side: Side,
    pub alpha: Option<LinMap>,
    pub phi: Option<LinMap>,
    pub r: Option<LinMap>,
    pub t: Option<LinMap>,
    pub lambda: Option<Scalar>,
    pub module: Option<ModuleData>,
}

impl Bundle {
    fn empty(dimension: usize, flavor: &str, side: Side) -> Self {
        Self {
            dimension,
            flavor: flavor.to_string(),
            side,
            alpha: None,
            phi: None,
            r: None,
            t: None,
            lambda: None,
            module: None,
        }
    }

    pub fn from_coalgebra(coalg: &HomCoalgebra) -> Self {
        let mut bundle = Self::empty(
            coalg.n(),
            coalg.flavor().tag(),
            Side::Coalgebra {
                delta: coalg.delta().clone(),
            },
        );
        bundle.alpha = Some(coalg.alpha().clone());
        bundle
    }

    pub fn from_coder_pair(pair: &CoDerPair) -> Self {
        let mut bundle = Self::from_coalgebra(pair.coalg());
        bundle.phi = Some(pair.phi().clone());
        bundle
    }

    pub fn from_coder_comodule(comodule: &CoDerComodule) -> Self {
        let mut bundle = Self::from_coder_pair(comodule.pair());
        let inner = comodule.comodule();
        bundle.module = Some(ModuleData {
            dim: inner.m(),
            structure: inner.rho().clone(),
            twist: inner.beta().clone(),
            derivation: Some(comodule.phi_m().clone()),
        });
        bundle
    }

    pub fn from_algebra(alg: &HomAlgebra) -> Self {
        let mut bundle = Self::empty(
            alg.n(),
            alg.flavor().tag(),
            Side::Algebra {
                mu: alg.mu().clone(),
            },
        );
        bundle.alpha = Some(alg.alpha().clone());
        bundle
    }

    pub fn from_der_pair(pair: &DerPair) -> Self {
        let mut bundle = Self::from_algebra(pair.alg());
        bundle.phi = Some(pair.phi().clone());
        bundle
    }

    pub fn from_representation(rep: &Representation) -> Self {
        let mut bundle = Self::from_der_pair(rep.pair());
        bundle.module = Some(ModuleData {
            dim: rep.v(),
            structure: rep.action().clone(),
            twist: rep.a_op().clone(),
            derivation: Some(rep.phi_v().clone()),
        });
        bundle
    }

    pub fn is_coalgebra(&self) -> bool {
        matches!(self.side, Side::Coalgebra { .. })
    }

    fn alpha_or_identity(&self) -> LinMap {
        self.alpha
            .clone()
            .unwrap_or_else(|| identity(self.dimension, 1))
    }

    fn phi_or_zero(&self) -> LinMap {
        self.phi.clone().unwrap_or_else(|| {
            let space = TensorSpace::power(self.dimension, 1);
            LinMap::zero(space.clone(), space)
        })
    }

    pub fn coalgebra(&self) -> Result<HomCoalgebra> {
        let Side::Coalgebra { delta } = &self.side else {
            return Err(Error::FlavorMismatch {
                expected: "coalgebra bundle",
                found: "algebra bundle",
            });
        };
        HomCoalgebra::new(
            delta.clone(),
            self.alpha_or_identity(),
            CoalgebraFlavor::from_tag(&self.flavor)?,
        )
    }

    /// The CoDer pair; a missing `phi` means `φ = 0`.
    pub fn coder_pair(&self) -> Result<CoDerPair> {
        CoDerPair::new(self.coalgebra()?, self.phi_or_zero())
    }

    pub fn coder_comodule(&self) -> Result<CoDerComodule> {
        let pair = self.coder_pair()?;
        let module = self.module.as_ref().ok_or(Error::MissingOperator("rho"))?;
        let comodule = Comodule::new(
            pair.coalg().clone(),
            module.structure.clone(),
            module.twist.clone(),
        )?;
        let phi_m = module.derivation.clone().unwrap_or_else(|| {
            let space = TensorSpace::power(module.dim, 1);
            LinMap::zero(space.clone(), space)
        });
        CoDerComodule::new(pair, comodule, phi_m)
    }

    pub fn algebra(&self) -> Result<HomAlgebra> {
        let Side::Algebra { mu } = &self.side else {
            return Err(Error::FlavorMismatch {
                expected: "algebra bundle",
                found: "coalgebra bundle",
            });
        };
        HomAlgebra::new(
            mu.clone(),
            self.alpha_or_identity(),
            AlgebraFlavor::from_tag(&self.flavor)?,
        )
    }

    pub fn der_pair(&self) -> Result<DerPair> {
        DerPair::new(self.algebra()?, self.phi_or_zero())
    }

    pub fn representation(&self) -> Result<Representation> {
        let pair = self.der_pair()?;
        let module = self
            .module
            .as_ref()
            .ok_or(Error::MissingOperator("action"))?;
        let phi_v = module.derivation.clone().unwrap_or_else(|| {
            let space = TensorSpace::power(module.dim, 1);
            LinMap::zero(space.clone(), space)
        });
        Representation::new(pair, module.structure.clone(), module.twist.clone(), phi_v)
    }

    pub fn rota_baxter(&self) -> Result<Option<RotaBaxterData>> {
        let Some(r) = &self.r else { return Ok(None) };
        let weight = self
            .lambda
            .clone()
            .ok_or(Error::MissingOperator("lambda"))?;
        Ok(Some(RotaBaxterData {
            r: r.clone(),
            weight,
        }))
    }

    /// A bundle's `T` is read as an endo-twist operator: idempotence is
    /// required, and commutation with `φ` whenever `φ` is present.
    pub fn endo_op(&self) -> Option<EndoOp> {
        self.t.as_ref().map(|t| EndoOp {
            t: t.clone(),
            require_idempotent: true,
            require_commute_phi: self.phi.is_some(),
        })
    }
}

/// Runs every checker that applies to the bundle: the flavor axioms, then
/// one check per optional operator present.
pub fn check_bundle(bundle: &Bundle) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    match &bundle.side {
        Side::Coalgebra { .. } => {
            let coalg = bundle.coalgebra()?;
            reports.extend(coalgebra_checks(&coalg));
            if let Some(phi) = &bundle.phi {
                reports.push(check_coderivation(&coalg, phi)?);
            }
            if let Some(rb) = bundle.rota_baxter()? {
                reports.push(check_rota_baxter(&coalg, &rb)?);
            }
            if let Some(endo) = bundle.endo_op() {
                reports.push(check_endo_op(&coalg, &endo, bundle.phi.as_ref())?);
            }
            if bundle.module.is_some() {
                let comodule = bundle.coder_comodule()?;
                reports.push(check_comodule(comodule.comodule()));
                reports.push(check_coder_comodule(&comodule));
            }
        }
        Side::Algebra { .. } => {
            let alg = bundle.algebra()?;
            reports.extend(algebra_checks(&alg));
            if let Some(phi) = &bundle.phi {
                reports.push(check_derivation(&alg, phi)?);
            }
            if bundle.r.is_some() || bundle.t.is_some() {
                return Err(Error::Argument(
                    "R and T are only defined for coalgebra bundles".to_string(),
                ));
            }
            if bundle.module.is_some() {
                reports.push(check_representation(&bundle.representation()?));
            }
        }
    }
    Ok(reports)
}
