//! Coderivation spaces as kernels, grid search for Rota-Baxter and
//! endomorphism operators, and seeded generation of valid pairs.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{
    adjoint_comodule, direct_sum_coder_pairs, rb_twist, semidirect_coalgebra,
};
use crate::error::{Error, Result};
use crate::linear::{identity, LinMap, TensorSpace};
use crate::scalar::{int, Scalar};
use crate::structures::{
    all_passed, check_endo_op, check_rota_baxter, coder_pair_checks, delta_from_terms,
    CoDerComodule, CoDerPair, CoalgebraFlavor, Comodule, EndoOp, HomAlgebra, HomCoalgebra,
    RotaBaxterData,
};

/// Largest grid search attempted.
pub const SEARCH_LIMIT: u128 = 10_000_000;

/// A basis of a space of operators on `K^n` cut out by a linear identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpaceBasis {
    pub n: usize,
    pub basis: Vec<LinMap>,
    pub identity_name: &'static str,
}

impl OperatorSpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The `n × n` matrix whose row-major flattening is `v`.
pub fn unvec(n: usize, v: &[Scalar]) -> LinMap {
    let space = TensorSpace::power(n, 1);
    LinMap::from_fn(space.clone(), space, |r, c| v[r * n + c].clone())
}

fn elementary(n: usize, i: usize, j: usize) -> LinMap {
    let space = TensorSpace::power(n, 1);
    LinMap::from_fn(space.clone(), space, |r, c| {
        if (r, c) == (i, j) {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    })
}

/// Stacks the row-major flattenings of `images` as columns of a map
/// `K^{n²} → K^{len}`.
fn operator_from_images(n: usize, images: Vec<LinMap>) -> LinMap {
    let len = images[0].entries().len();
    let codomain = TensorSpace::power(len, 1);
    LinMap::from_fn(TensorSpace::power(n, 2), codomain, |r, c| {
        images[c].entries()[r].clone()
    })
}

fn on_elementary(n: usize, f: impl Fn(&LinMap) -> LinMap) -> LinMap {
    let images = (0..n * n)
        .map(|k| f(&elementary(n, k / n, k % n)))
        .collect();
    operator_from_images(n, images)
}

fn c(g: &LinMap, f: &LinMap) -> LinMap {
    g.compose(f).expect("operator maps compose")
}

/// `φ ↦ Δφ − (φ ⊗ α)Δ − (α ⊗ φ)Δ` on row-major flattened `φ`.
pub fn coderivation_operator(coalg: &HomCoalgebra) -> LinMap {
    let (delta, alpha) = (coalg.delta(), coalg.alpha());
    on_elementary(coalg.n(), |phi| {
        c(delta, phi)
            .sub(&c(&phi.tensor(alpha), delta))
            .and_then(|d| d.sub(&c(&alpha.tensor(phi), delta)))
            .expect("same spaces")
    })
}

/// `φ ↦ φμ − μ(φ ⊗ α) − μ(α ⊗ φ)` on row-major flattened `φ`.
pub fn derivation_operator(alg: &HomAlgebra) -> LinMap {
    let (mu, alpha) = (alg.mu(), alg.alpha());
    on_elementary(alg.n(), |phi| {
        c(phi, mu)
            .sub(&c(mu, &phi.tensor(alpha)))
            .and_then(|d| d.sub(&c(mu, &alpha.tensor(phi))))
            .expect("same spaces")
    })
}

fn basis_of(n: usize, operator: &LinMap, identity_name: &'static str) -> OperatorSpaceBasis {
    OperatorSpaceBasis {
        n,
        basis: operator
            .kernel_basis()
            .iter()
            .map(|v| unvec(n, v))
            .collect(),
        identity_name,
    }
}

pub fn coderivation_basis(coalg: &HomCoalgebra) -> OperatorSpaceBasis {
    basis_of(coalg.n(), &coderivation_operator(coalg), "coderivation")
}

pub fn derivation_basis(alg: &HomAlgebra) -> OperatorSpaceBasis {
    basis_of(alg.n(), &derivation_operator(alg), "derivation")
}

/// Coderivations that also commute with `α`.
pub fn commuting_coderivation_basis(coalg: &HomCoalgebra) -> OperatorSpaceBasis {
    let n = coalg.n();
    let alpha = coalg.alpha();
    let coder = coderivation_operator(coalg);
    let commutator = on_elementary(n, |phi| {
        c(phi, alpha).sub(&c(alpha, phi)).expect("same spaces")
    });
    let rows = coder.rows() + commutator.rows();
    let stacked = LinMap::from_fn(
        TensorSpace::power(n, 2),
        TensorSpace::power(rows, 1),
        |r, col| {
            if r < coder.rows() {
                coder.entry(r, col).clone()
            } else {
                commutator.entry(r - coder.rows(), col).clone()
            }
        },
    );
    basis_of(n, &stacked, "coderivation_commuting_with_twist")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchKind {
    RotaBaxter(Scalar),
    Endo,
}

/// Number of `n × n` matrices over a grid of `grid_len` values, saturating.
pub fn candidate_count(n: usize, grid_len: usize) -> u128 {
    let mut total: u128 = 1;
    for _ in 0..n * n {
        total = total.saturating_mul(grid_len as u128);
    }
    total
}

/// Every grid matrix `X` with `Xα = αX` satisfying the kind's quadratic
/// identity, in lexicographic order of row-major entries.
///
/// Candidates are screened modulo a large prime and survivors re-checked
/// exactly.
pub fn search_operators(
    coalg: &HomCoalgebra,
    kind: &SearchKind,
    grid: &[Scalar],
) -> Result<Vec<LinMap>> {
    let n = coalg.n();
    let mut values = grid.to_vec();
    values.sort();
    values.dedup();
    let candidates = candidate_count(n, values.len());
    if candidates > SEARCH_LIMIT {
        return Err(Error::SearchGuard {
            candidates,
            limit: SEARCH_LIMIT,
        });
    }
    if values.is_empty() {
        return Ok(Vec::new());
    }
    let screen = ModScreen::new(coalg, kind, &values);
    let mut found = Vec::new();
    let mut digits = vec![0usize; n * n];
    loop {
        if screen.as_ref().is_none_or(|s| s.admits(&digits)) {
            let x = unvec(
                n,
                &digits
                    .iter()
                    .map(|&d| values[d].clone())
                    .collect::<Vec<_>>(),
            );
            if exact_admits(coalg, kind, &x)? {
                found.push(x);
            }
        }
        if !advance(&mut digits, values.len()) {
            break;
        }
    }
    Ok(found)
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn exact_admits(coalg: &HomCoalgebra, kind: &SearchKind, x: &LinMap) -> Result<bool> {
    Ok(match kind {
        SearchKind::RotaBaxter(weight) => check_rota_baxter(
            coalg,
            &RotaBaxterData {
                r: x.clone(),
                weight: weight.clone(),
            },
        )?
        .passed(),
        SearchKind::Endo => check_endo_op(
            coalg,
            &EndoOp {
                t: x.clone(),
                require_idempotent: false,
                require_commute_phi: false,
            },
            None,
        )?
        .passed(),
    })
}

const P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn add_mod(a: u64, b: u64) -> u64 {
    (a + b) % P
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

fn reduce_mod(x: &Scalar) -> Option<u64> {
    let p = BigInt::from(P);
    let numer = x.numer().mod_floor(&p).to_u64()?;
    let denom = x.denom().mod_floor(&p).to_u64()?;
    if denom == 0 {
        return None;
    }
    Some(mul_mod(numer, pow_mod(denom, P - 2)))
}

/// The structure maps reduced modulo `P`, so candidates can be rejected
/// with machine arithmetic. A true identity over `Q` also holds mod `P`.
struct ModScreen {
    n: usize,
    delta: Vec<u64>,
    alpha: Vec<u64>,
    grid: Vec<u64>,
    weight: Option<u64>,
}

impl ModScreen {
    fn new(coalg: &HomCoalgebra, kind: &SearchKind, grid: &[Scalar]) -> Option<Self> {
        let reduce_all = |xs: &[Scalar]| xs.iter().map(reduce_mod).collect::<Option<Vec<_>>>();
        let weight = match kind {
            SearchKind::RotaBaxter(w) => Some(reduce_mod(w)?),
            SearchKind::Endo => None,
        };
        Some(Self {
            n: coalg.n(),
            delta: reduce_all(coalg.delta().entries())?,
            alpha: reduce_all(coalg.alpha().entries())?,
            grid: reduce_all(grid)?,
            weight,
        })
    }

    fn admits(&self, digits: &[usize]) -> bool {
        let n = self.n;
        let x: Vec<u64> = digits.iter().map(|&d| self.grid[d]).collect();
        let at = |m: &[u64], r: usize, c: usize, cols: usize| m[r * cols + c];
        for i in 0..n {
            for j in 0..n {
                let (mut xa, mut ax) = (0, 0);
                for k in 0..n {
                    xa = add_mod(xa, mul_mod(at(&x, i, k, n), at(&self.alpha, k, j, n)));
                    ax = add_mod(ax, mul_mod(at(&self.alpha, i, k, n), at(&x, k, j, n)));
                }
                if xa != ax {
                    return false;
                }
            }
        }
        let d = |row: usize, col: usize| self.delta[row * n + col];
        let mut dx = vec![0u64; n * n];
        for l in 0..n {
            for (row, slot) in dx.iter_mut().enumerate() {
                let mut s = 0;
                for k in 0..n {
                    s = add_mod(s, mul_mod(d(row, k), x[k * n + l]));
                }
                *slot = s;
            }
            for a in 0..n {
                for b in 0..n {
                    let mut xx = 0;
                    for cc in 0..n {
                        for dd in 0..n {
                            let coeff = mul_mod(x[a * n + cc], x[b * n + dd]);
                            xx = add_mod(xx, mul_mod(coeff, d(cc * n + dd, l)));
                        }
                    }
                    let rhs = match self.weight {
                        None => dx[a * n + b],
                        Some(w) => {
                            let mut s = mul_mod(w, dx[a * n + b]);
                            for k in 0..n {
                                s = add_mod(s, mul_mod(x[b * n + k], dx[a * n + k]));
                                s = add_mod(s, mul_mod(x[a * n + k], dx[k * n + b]));
                            }
                            s
                        }
                    };
                    if xx != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Rota-Baxter operators of `pair` over `grid` that also commute with `φ`.
pub fn rb_operators(pair: &CoDerPair, weight: &Scalar, grid: &[Scalar]) -> Result<Vec<LinMap>> {
    let found = search_operators(pair.coalg(), &SearchKind::RotaBaxter(weight.clone()), grid)?;
    Ok(found
        .into_iter()
        .filter(|r| c(r, pair.phi()) == c(pair.phi(), r))
        .collect())
}

/// Idempotent endomorphism operators of `pair` over `grid` commuting with `φ`.
pub fn idempotent_endo_operators(pair: &CoDerPair, grid: &[Scalar]) -> Result<Vec<LinMap>> {
    let found = search_operators(pair.coalg(), &SearchKind::Endo, grid)?;
    Ok(found
        .into_iter()
        .filter(|t| c(t, t) == *t && c(t, pair.phi()) == c(pair.phi(), t))
        .collect())
}

pub fn default_grid() -> Vec<Scalar> {
    vec![int(-1), int(0), int(1)]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Zero,
    ClassicalDual,
    Twist,
    SumClosure,
    SemidirectClosure,
}

impl Strategy {
    pub const ALL: [Strategy; 5] = [
        Strategy::Zero,
        Strategy::ClassicalDual,
        Strategy::Twist,
        Strategy::SumClosure,
        Strategy::SemidirectClosure,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Strategy::Zero => "zero",
            Strategy::ClassicalDual => "classical_dual",
            Strategy::Twist => "twist",
            Strategy::SumClosure => "sum_closure",
            Strategy::SemidirectClosure => "semidirect_closure",
        }
    }

    pub fn from_tag(tag: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|s| s.tag() == tag)
            .ok_or_else(|| Error::Argument(format!("unknown generation strategy `{tag}`")))
    }
}

/// What to generate. `dim` is the exact dimension of the output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenerationRecipe {
    pub flavor: CoalgebraFlavor,
    pub strategy: Strategy,
    pub seed: u64,
    pub dim: usize,
}

/// Duals of the classical Lie algebras used as seeds: abelian, the
/// non-abelian 2-dimensional algebra, the Heisenberg algebra, and their
/// direct sums up to dimension 4.
pub fn classical_lie_seeds(n: usize) -> Vec<LinMap> {
    let l2 = || delta_from_terms(2, &[(1, 0, 1, int(1)), (1, 1, 0, int(-1))]);
    let heisenberg = || delta_from_terms(3, &[(2, 0, 1, int(1)), (2, 1, 0, int(-1))]);
    let mut seeds = vec![zero_delta(n)];
    match n {
        2 => seeds.push(l2()),
        3 => {
            seeds.push(heisenberg());
            seeds.push(block_delta(&l2(), &zero_delta(1)));
        }
        4 => {
            seeds.push(block_delta(&l2(), &l2()));
            seeds.push(block_delta(&heisenberg(), &zero_delta(1)));
            seeds.push(block_delta(&l2(), &zero_delta(2)));
        }
        _ => {}
    }
    seeds
}

/// Classical coassociative seeds: group-like coalgebras, the small
/// two-dimensional ones, and the dual of `K[x]/(x³)`.
pub fn classical_coassociative_seeds(n: usize) -> Vec<LinMap> {
    let grouplike = |n: usize| {
        let terms: Vec<_> = (0..n).map(|i| (i, i, i, int(1))).collect();
        delta_from_terms(n, &terms)
    };
    let left = || delta_from_terms(2, &[(0, 0, 0, int(1)), (1, 0, 1, int(1))]);
    let right = || delta_from_terms(2, &[(0, 0, 0, int(1)), (1, 1, 0, int(1))]);
    let divided = || {
        delta_from_terms(
            2,
            &[(0, 0, 0, int(1)), (1, 0, 1, int(1)), (1, 1, 0, int(1))],
        )
    };
    let truncated = || {
        let mut terms = Vec::new();
        for k in 0..3 {
            for i in 0..=k {
                terms.push((k, i, k - i, int(1)));
            }
        }
        delta_from_terms(3, &terms)
    };
    let mut seeds = vec![zero_delta(n)];
    if n >= 1 {
        seeds.push(grouplike(n));
    }
    match n {
        2 => seeds.extend([left(), right(), divided()]),
        3 => {
            seeds.push(truncated());
            seeds.push(block_delta(&left(), &grouplike(1)));
            seeds.push(block_delta(&divided(), &zero_delta(1)));
        }
        4 => {
            seeds.push(block_delta(&left(), &divided()));
            seeds.push(block_delta(&truncated(), &grouplike(1)));
        }
        _ => {}
    }
    seeds
}

fn zero_delta(n: usize) -> LinMap {
    LinMap::zero(TensorSpace::power(n, 1), TensorSpace::power(n, 2))
}

fn block_delta(d1: &LinMap, d2: &LinMap) -> LinMap {
    let (a, b) = (d1.cols(), d2.cols());
    let sum = crate::constructions::SumSpace::new(a, b);
    let (i1, i2) = (sum.inl(), sum.inr());
    c(&c(&i1.tensor(&i1), d1), &sum.pil())
        .add(&c(&c(&i2.tensor(&i2), d2), &sum.pir()))
        .expect("same spaces")
        .reinterpret(sum.space(), TensorSpace::power(a + b, 2))
        .expect("flattened square")
}

/// Seeded generator of valid CoDer pairs, with grid searches cached per
/// coalgebra.
#[derive(Default)]
pub struct Generator {
    morphisms: BTreeMap<Vec<Scalar>, Vec<LinMap>>,
    pre_lie: BTreeMap<usize, Vec<LinMap>>,
}

impl Generator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Classical seeds of the flavor: Lie duals, coassociative coalgebras,
    /// and for pre-Lie the coassociative seeds plus their Rota-Baxter twists.
    pub fn seeds(&mut self, flavor: CoalgebraFlavor, n: usize) -> Vec<HomCoalgebra> {
        let deltas = match flavor {
            CoalgebraFlavor::Lie => classical_lie_seeds(n),
            CoalgebraFlavor::Coassociative | CoalgebraFlavor::Unchecked => {
                classical_coassociative_seeds(n)
            }
            CoalgebraFlavor::PreLie => self.pre_lie_seeds(n),
        };
        deltas
            .into_iter()
            .map(|d| HomCoalgebra::classical(d, flavor).expect("seed shapes"))
            .collect()
    }

    fn pre_lie_seeds(&mut self, n: usize) -> Vec<LinMap> {
        if let Some(seeds) = self.pre_lie.get(&n) {
            return seeds.clone();
        }
        let mut seeds = classical_coassociative_seeds(n);
        if n <= 2 {
            for delta in classical_coassociative_seeds(n) {
                let coalg = HomCoalgebra::classical(delta, CoalgebraFlavor::Coassociative)
                    .expect("seed shapes");
                let space = TensorSpace::power(n, 1);
                let pair =
                    CoDerPair::new(coalg, LinMap::zero(space.clone(), space)).expect("seed shapes");
                for weight in [int(0), int(-1)] {
                    for r in rb_operators(&pair, &weight, &default_grid()).unwrap_or_default() {
                        let rb = RotaBaxterData {
                            r,
                            weight: weight.clone(),
                        };
                        if let Ok(twisted) = rb_twist(&pair, &rb) {
                            let d = twisted.coalg().delta().clone();
                            if !seeds.contains(&d) {
                                seeds.push(d);
                            }
                        }
                    }
                }
            }
        }
        self.pre_lie.insert(n, seeds.clone());
        seeds
    }

    /// Coalgebra morphisms of a classical seed, used as Yau twists.
    fn morphisms_of(&mut self, coalg: &HomCoalgebra) -> Vec<LinMap> {
        let key = coalg.delta().entries().to_vec();
        if let Some(found) = self.morphisms.get(&key) {
            return found.clone();
        }
        let n = coalg.n();
        let grid = default_grid();
        let found = if candidate_count(n, grid.len()) <= 20_000 {
            search_operators(coalg, &SearchKind::Endo, &grid).unwrap_or_default()
        } else {
            diagonal_morphisms(coalg, &grid)
        };
        self.morphisms.insert(key, found.clone());
        found
    }

    pub fn generate(&mut self, recipe: &GenerationRecipe) -> Result<CoDerPair> {
        let mut rng = ChaCha8Rng::seed_from_u64(recipe.seed);
        let pair = self.build(recipe.flavor, recipe.strategy, recipe.dim, &mut rng)?;
        if !all_passed(&coder_pair_checks(&pair)) {
            return Err(Error::Generation(format!(
                "{} output failed validation",
                recipe.strategy.tag()
            )));
        }
        Ok(pair)
    }

    fn build(
        &mut self,
        flavor: CoalgebraFlavor,
        strategy: Strategy,
        dim: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<CoDerPair> {
        if dim == 0 {
            return Err(Error::Generation("dimension must be positive".into()));
        }
        match strategy {
            Strategy::Zero => {
                let space = TensorSpace::power(dim, 1);
                CoDerPair::new(
                    HomCoalgebra::classical(zero_delta(dim), flavor)?,
                    LinMap::zero(space.clone(), space),
                )
            }
            Strategy::ClassicalDual => {
                let seed = self.pick_seed(flavor, dim, rng)?;
                with_random_coderivation(seed, rng)
            }
            Strategy::Twist => {
                let seed = self.pick_seed(flavor, dim, rng)?;
                let morphisms = self.morphisms_of(&seed);
                let alpha = morphisms[rng.random_range(0..morphisms.len())].clone();
                let twisted = HomCoalgebra::new(c(seed.delta(), &alpha), alpha, flavor)?;
                with_random_coderivation(twisted, rng)
            }
            Strategy::SumClosure => {
                if dim < 2 {
                    return Err(Error::Generation(
                        "a direct sum needs dimension at least 2".into(),
                    ));
                }
                let left = rng.random_range(1..dim);
                let p1 = self.build(flavor, Strategy::Twist, left, rng)?;
                let p2 = self.build(flavor, Strategy::Twist, dim - left, rng)?;
                direct_sum_coder_pairs(&p1, &p2)
            }
            Strategy::SemidirectClosure => {
                if flavor != CoalgebraFlavor::Lie {
                    return Err(Error::Generation(
                        "semidirect closure only produces lie pairs".into(),
                    ));
                }
                let comodule = self.comodule_of_total_dim(dim, rng)?;
                semidirect_coalgebra(comodule.pair(), &comodule)
            }
        }
    }

    fn pick_seed(
        &mut self,
        flavor: CoalgebraFlavor,
        dim: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<HomCoalgebra> {
        let seeds = self.seeds(flavor, dim);
        if seeds.is_empty() {
            return Err(Error::Generation(format!(
                "no {} seed of dimension {dim}",
                flavor.tag()
            )));
        }
        Ok(seeds[rng.random_range(0..seeds.len())].clone())
    }

    /// A valid CoDer comodule over a twisted Hom-Lie pair of dimension `n`:
    /// coadjoint, adjoint or zero, chosen by the seed.
    pub fn comodule(&mut self, seed: u64, n: usize) -> Result<CoDerComodule> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let kind = rng.random_range(0..3);
        let m = rng.random_range(1..=3);
        self.comodule_of_kind(n, kind, m, &mut rng)
    }

    fn comodule_of_total_dim(&mut self, dim: usize, rng: &mut ChaCha8Rng) -> Result<CoDerComodule> {
        let mut options = Vec::new();
        for n in 1..dim {
            options.push((n, 2, dim - n));
            if 2 * n == dim {
                options.push((n, 0, n));
            }
            if n + n * n == dim {
                options.push((n, 1, n * n));
            }
        }
        if options.is_empty() {
            return Err(Error::Generation(
                "a semidirect product needs dimension at least 2".into(),
            ));
        }
        let (n, kind, m) = options[rng.random_range(0..options.len())];
        self.comodule_of_kind(n, kind, m, rng)
    }

    fn comodule_of_kind(
        &mut self,
        n: usize,
        kind: usize,
        m: usize,
        rng: &mut ChaCha8Rng,
    ) -> Result<CoDerComodule> {
        let base = self.build(CoalgebraFlavor::Lie, Strategy::Twist, n, rng)?;
        let coalg = base.coalg().clone();
        match kind {
            0 => {
                let rho = coalg.delta().reinterpret(
                    TensorSpace::power(n, 1),
                    TensorSpace::from_factors(vec![n, n]),
                )?;
                let comodule = Comodule::new(coalg.clone(), rho, coalg.alpha().clone())?;
                CoDerComodule::new(base.clone(), comodule, base.phi().clone())
            }
            1 => {
                let commuting = commuting_coderivation_basis(&coalg);
                let phi = random_combination(n, &commuting.basis, rng);
                adjoint_comodule(&CoDerPair::new(coalg, phi)?)
            }
            _ => {
                let space = TensorSpace::power(m, 1);
                let scale = int(rng.random_range(-2..=2));
                let comodule = Comodule::new(
                    coalg,
                    LinMap::zero(space.clone(), TensorSpace::from_factors(vec![n, m])),
                    identity(m, 1).scale(&scale),
                )?;
                let phi_m = random_square(m, rng);
                CoDerComodule::new(base, comodule, phi_m)
            }
        }
    }
}

/// Diagonal grid matrices that are coalgebra morphisms; the fallback when
/// the full grid is too large.
fn diagonal_morphisms(coalg: &HomCoalgebra, grid: &[Scalar]) -> Vec<LinMap> {
    let n = coalg.n();
    let mut digits = vec![0usize; n];
    let mut found = Vec::new();
    loop {
        let space = TensorSpace::power(n, 1);
        let t = LinMap::from_fn(space.clone(), space, |r, col| {
            if r == col {
                grid[digits[r]].clone()
            } else {
                Scalar::zero()
            }
        });
        if c(coalg.delta(), &t) == c(&t.tensor(&t), coalg.delta()) {
            found.push(t);
        }
        if !advance(&mut digits, grid.len()) {
            break;
        }
    }
    found
}

fn random_combination(n: usize, basis: &[LinMap], rng: &mut ChaCha8Rng) -> LinMap {
    let space = TensorSpace::power(n, 1);
    let mut phi = LinMap::zero(space.clone(), space);
    for b in basis {
        let coeff = int(rng.random_range(-2..=2));
        phi = phi.add(&b.scale(&coeff)).expect("same spaces");
    }
    phi
}

fn random_square(m: usize, rng: &mut ChaCha8Rng) -> LinMap {
    let space = TensorSpace::power(m, 1);
    LinMap::from_fn(space.clone(), space, |_, _| int(rng.random_range(-2..=2)))
}

fn with_random_coderivation(coalg: HomCoalgebra, rng: &mut ChaCha8Rng) -> Result<CoDerPair> {
    let basis = coderivation_basis(&coalg);
    let phi = random_combination(coalg.n(), &basis.basis, rng);
    CoDerPair::new(coalg, phi)
}

/// One-shot generation with a fresh cache.
pub fn generate(recipe: &GenerationRecipe) -> Result<CoDerPair> {
    Generator::new().generate(recipe)
}
