//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use homcoder::document::{parse, serialize};
use homcoder::report::parse_reports;
use homcoder_core::constructions::{
    adjoint_comodule, commutator_ass_to_lie, commutator_pre_lie_to_lie, endo_twist, rb_twist,
    semidirect_coalgebra, verify_rb_commutation,
};
use homcoder_core::duality::{dualize_coder_pair, dualize_comodule, dualize_der_pair};
use homcoder_core::linear::identity;
use homcoder_core::solver::{
    classical_lie_seeds, coderivation_basis, default_grid, idempotent_endo_operators, rb_operators,
    GenerationRecipe, Generator, Strategy,
};
use homcoder_core::structures::{
    all_passed, check_bundle, check_coder_comodule, check_coderivation, check_comodule,
    check_hom_co_jacobi, check_hom_pre_lie, check_representation, check_skew, coalgebra_checks,
    coder_pair_checks, delta_from_terms, der_pair_checks,
};
use homcoder_core::{
    int, ratio, CoDerComodule, CoDerPair, CoalgebraFlavor, Comodule, EndoOp, HomCoalgebra, LinMap,
    RotaBaxterData, Scalar, TensorSpace,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;

/// Index of the pair, the operator with its weight, and whether it is the
/// trivial operator of that weight.
type RbInstance = (usize, RotaBaxterData, bool);

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

/// Distinct valid pairs of `flavor` with `1 <= dim <= max_dim`, cycling
/// through dimensions, strategies and seeds.
fn generate_pairs(
    generator: &mut Generator,
    flavor: CoalgebraFlavor,
    max_dim: usize,
    count: usize,
) -> Result<Vec<CoDerPair>, String> {
    let mut seen = HashSet::new();
    let mut pairs = Vec::new();
    let mut attempts = 0u64;
    while pairs.len() < count {
        if attempts > 50 * count as u64 {
            return Err(format!(
                "only {} distinct {} pairs after {attempts} attempts",
                pairs.len(),
                flavor.tag()
            ));
        }
        let strategy = Strategy::ALL[(attempts % 5) as usize];
        let dim = 1 + (attempts / 5) as usize % max_dim;
        let recipe = GenerationRecipe {
            flavor,
            strategy,
            seed: attempts,
            dim,
        };
        attempts += 1;
        let Ok(pair) = generator.generate(&recipe) else {
            continue;
        };
        let key = (
            pair.coalg().delta().clone(),
            pair.coalg().alpha().clone(),
            pair.phi().clone(),
        );
        if seen.insert(key) {
            pairs.push(pair);
        }
    }
    Ok(pairs)
}

fn criterion_1(generator: &mut Generator) -> Verdict {
    let start = Instant::now();
    let pairs = generate_pairs(generator, CoalgebraFlavor::PreLie, 4, 200)?;
    for (i, pair) in pairs.iter().enumerate() {
        ensure(all_passed(&coder_pair_checks(pair)), || {
            format!("input {i} is not a valid pre-Lie pair")
        })?;
        let lie = commutator_pre_lie_to_lie(pair).map_err(|e| format!("input {i}: {e}"))?;
        let reports = coder_pair_checks(&lie);
        let names: Vec<&str> = reports.iter().map(|r| r.identity_name.as_str()).collect();
        ensure(
            names
                == [
                    "skew_symmetry",
                    "hom_co_jacobi",
                    "multiplicativity",
                    "coderivation",
                ],
            || format!("unexpected suite {names:?}"),
        )?;
        if let Some(bad) = reports.iter().find(|r| !r.passed()) {
            return Err(format!("input {i}: {} failed", bad.identity_name));
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    ensure(elapsed < 10.0, || format!("took {elapsed:.1} s"))?;
    Ok(format!(
        "{} pre-Lie pairs, zero failures, {elapsed:.2} s",
        pairs.len()
    ))
}

/// Rota-Baxter operators per pair and weight: the full grid search at
/// dimension <= 3, the trivial operator at dimension 4 where the grid
/// exceeds the search guard.
fn rb_instances(pairs: &[CoDerPair]) -> Result<Vec<RbInstance>, String> {
    let mut out = Vec::new();
    for (i, pair) in pairs.iter().enumerate() {
        let n = pair.n();
        let space = TensorSpace::power(n, 1);
        for (weight, trivial) in [
            (int(-1), LinMap::identity(space.clone())),
            (int(0), LinMap::zero(space.clone(), space.clone())),
        ] {
            let ops = if n <= 3 {
                rb_operators(pair, &weight, &default_grid())
                    .map_err(|e| format!("pair {i}: {e}"))?
            } else {
                vec![trivial.clone()]
            };
            ensure(ops.contains(&trivial), || {
                format!("pair {i}: trivial operator missing at weight {weight}")
            })?;
            for r in ops {
                let is_trivial = r == trivial;
                out.push((
                    i,
                    RotaBaxterData {
                        r,
                        weight: weight.clone(),
                    },
                    is_trivial,
                ));
            }
        }
    }
    Ok(out)
}

fn criterion_2(pairs: &[CoDerPair], instances: &[RbInstance]) -> Verdict {
    let mut trivial = 0;
    for (i, rb, is_trivial) in instances {
        let out = rb_twist(&pairs[*i], rb).map_err(|e| format!("pair {i}, R = {:?}: {e}", rb.r))?;
        ensure(check_hom_pre_lie(out.coalg()).passed(), || {
            format!("pair {i}: output not pre-Lie")
        })?;
        let coder = check_coderivation(out.coalg(), out.phi()).map_err(|e| e.to_string())?;
        ensure(coder.passed(), || {
            format!("pair {i}: phi is not a coderivation of the output")
        })?;
        trivial += usize::from(*is_trivial);
    }
    ensure(trivial == 2 * pairs.len(), || {
        format!("{trivial} trivial cases for {} pairs", pairs.len())
    })?;
    Ok(format!(
        "{} Hom-Ass pairs, {} (pair, R, weight) twists incl. {trivial} trivial, zero failures",
        pairs.len(),
        instances.len()
    ))
}

fn perturb(rng: &mut ChaCha8Rng, map: &LinMap) -> LinMap {
    let steps = [int(1), int(-1), ratio(1, 2), int(2), ratio(-1, 3)];
    let mut out = map.clone();
    let (r, c) = (
        rng.random_range(0..map.rows()),
        rng.random_range(0..map.cols()),
    );
    let step = steps[rng.random_range(0..steps.len())].clone();
    out.set(r, c, map.entry(r, c) + step);
    out
}

fn criterion_3(generator: &mut Generator) -> Verdict {
    let mut valid = Vec::new();
    let mut seed = 0u64;
    while valid.len() < 100 {
        ensure(seed < 1000, || {
            format!("only {} valid comodules", valid.len())
        })?;
        let n = 1 + (seed % 3) as usize;
        if let Ok(comodule) = generator.comodule(seed, n) {
            valid.push(comodule);
        }
        seed += 1;
    }
    for (i, comodule) in valid.iter().enumerate() {
        ensure(
            check_comodule(comodule.comodule()).passed() && check_coder_comodule(comodule).passed(),
            || format!("generated comodule {i} is invalid"),
        )?;
        let out = semidirect_coalgebra(comodule.pair(), comodule).map_err(|e| e.to_string())?;
        ensure(all_passed(&coder_pair_checks(&out)), || {
            format!("valid input {i}: semidirect output fails a check")
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut broken, mut tries) = (0, 0);
    while broken < 100 {
        tries += 1;
        ensure(tries < 10_000, || {
            format!("only {broken} breaking perturbations found")
        })?;
        let source = &valid[rng.random_range(0..valid.len())];
        let inner = source.comodule();
        let (rho, phi_m) = if rng.random_bool(0.5) {
            (perturb(&mut rng, inner.rho()), source.phi_m().clone())
        } else {
            (inner.rho().clone(), perturb(&mut rng, source.phi_m()))
        };
        let comodule = Comodule::new(inner.base().clone(), rho, inner.beta().clone())
            .map_err(|e| e.to_string())?;
        let candidate = CoDerComodule::new(source.pair().clone(), comodule, phi_m)
            .map_err(|e| e.to_string())?;
        if check_comodule(candidate.comodule()).passed()
            && check_coder_comodule(&candidate).passed()
        {
            continue;
        }
        broken += 1;
        let out = semidirect_coalgebra(candidate.pair(), &candidate).map_err(|e| e.to_string())?;
        ensure(!all_passed(&coder_pair_checks(&out)), || {
            format!("perturbation {broken}: broken comodule but semidirect output passes")
        })?;
    }
    Ok(format!(
        "{} valid inputs pass, {broken} breaking perturbations all detected ({tries} tried)",
        valid.len()
    ))
}

fn criterion_4(generator: &mut Generator) -> Verdict {
    let pairs = generate_pairs(generator, CoalgebraFlavor::Lie, 4, 200)?;
    let mut comodules = 0;
    for (i, pair) in pairs.iter().enumerate() {
        let dual = dualize_coder_pair(pair).map_err(|e| format!("pair {i}: {e}"))?;
        ensure(all_passed(&der_pair_checks(&dual)), || {
            format!("pair {i}: dual fails")
        })?;
        let back = dualize_der_pair(&dual).map_err(|e| format!("pair {i}: {e}"))?;
        ensure(back == *pair, || format!("pair {i}: double dual differs"))?;
        let (phi, alpha) = (pair.phi(), pair.coalg().alpha());
        let commuting = phi.compose(alpha).unwrap() == alpha.compose(phi).unwrap();
        match adjoint_comodule(pair) {
            Ok(adjoint) => {
                let rep = dualize_comodule(&adjoint).map_err(|e| format!("pair {i}: {e}"))?;
                ensure(check_representation(&rep).passed(), || {
                    format!("pair {i}: dual of the adjoint comodule fails")
                })?;
                comodules += 1;
            }
            Err(e) => ensure(!commuting, || {
                format!("pair {i}: adjoint comodule refused: {e}")
            })?,
        }
    }
    ensure(comodules >= 100, || {
        format!("only {comodules} adjoint comodules")
    })?;
    Ok(format!(
        "{} Lie pairs dualize and double-dualize exactly; {comodules} dual adjoint modules pass",
        pairs.len()
    ))
}

fn criterion_5() -> Verdict {
    let l2 = HomCoalgebra::classical(
        delta_from_terms(2, &[(1, 0, 1, int(1)), (1, 1, 0, int(-1))]),
        CoalgebraFlavor::Lie,
    )
    .unwrap();
    let basis = coderivation_basis(&l2);
    ensure(basis.dim() == 2, || {
        format!("L2: dimension {}", basis.dim())
    })?;
    // Hand-solved: phi(e0) = 0 and phi(e1) is arbitrary.
    for phi in &basis.basis {
        ensure(phi.column(0).iter().all(|x| *x == int(0)), || {
            "L2: phi(e0) != 0".into()
        })?;
    }
    let mut checked = basis.basis.clone();

    let grouplike = HomCoalgebra::classical(
        delta_from_terms(1, &[(0, 0, 0, int(1))]),
        CoalgebraFlavor::Coassociative,
    )
    .unwrap();
    let dim = coderivation_basis(&grouplike).dim();
    ensure(dim == 0, || format!("group-like: dimension {dim}"))?;

    for n in 1..=4 {
        let zero = HomCoalgebra::classical(
            LinMap::zero(TensorSpace::power(n, 1), TensorSpace::power(n, 2)),
            CoalgebraFlavor::Lie,
        )
        .unwrap();
        let basis = coderivation_basis(&zero);
        ensure(basis.dim() == n * n, || {
            format!("zero dim {n}: dimension {}", basis.dim())
        })?;
        for phi in &basis.basis {
            ensure(check_coderivation(&zero, phi).unwrap().passed(), || {
                "zero basis element fails".into()
            })?;
        }
        checked.extend(basis.basis);
    }
    for phi in &coderivation_basis(&l2).basis {
        ensure(check_coderivation(&l2, phi).unwrap().passed(), || {
            "L2 basis element fails".into()
        })?;
    }
    Ok(format!(
        "L2: 2, group-like: 0, zero: n^2 for n <= 4; {} basis elements verified",
        checked.len()
    ))
}

fn criterion_6(pairs: &[CoDerPair], instances: &[RbInstance]) -> Verdict {
    ensure(instances.len() >= 100, || {
        format!("only {} instances", instances.len())
    })?;
    for (i, rb, _) in instances {
        let pair = &pairs[*i];
        ensure(
            rb.r.compose(pair.phi()).unwrap() == pair.phi().compose(&rb.r).unwrap(),
            || format!("pair {i}: R does not commute with phi"),
        )?;
        let report = verify_rb_commutation(pair, rb).map_err(|e| e.to_string())?;
        ensure(report.passed(), || {
            format!("pair {i}: {} failed", report.identity_name)
        })?;
    }
    Ok(format!(
        "{} commuting (pair, R, weight) instances, zero failures",
        instances.len()
    ))
}

fn criterion_7(pairs: &[CoDerPair]) -> Verdict {
    let mut twisted = 0;
    for (i, pair) in pairs.iter().enumerate() {
        let n = pair.n();
        let id = EndoOp {
            t: identity(n, 1),
            require_idempotent: true,
            require_commute_phi: true,
        };
        let via_endo = endo_twist(pair, &id).map_err(|e| format!("pair {i}: {e}"))?;
        let via_commutator = commutator_ass_to_lie(pair).map_err(|e| format!("pair {i}: {e}"))?;
        ensure(via_endo == via_commutator, || {
            format!("pair {i}: T = id differs from commutator")
        })?;

        let space = TensorSpace::power(n, 1);
        let ops = if n <= 3 {
            idempotent_endo_operators(pair, &default_grid()).map_err(|e| e.to_string())?
        } else {
            vec![
                LinMap::identity(space.clone()),
                LinMap::zero(space.clone(), space),
            ]
        };
        for t in ops {
            let endo = EndoOp {
                t,
                require_idempotent: true,
                require_commute_phi: true,
            };
            let out = endo_twist(pair, &endo).map_err(|e| format!("pair {i}: {e}"))?;
            ensure(all_passed(&coder_pair_checks(&out)), || {
                format!("pair {i}: twisted output fails")
            })?;
            twisted += 1;
        }
    }
    Ok(format!(
        "T = id matches the commutator on {} pairs; {twisted} idempotent twists pass",
        pairs.len()
    ))
}

/// Coefficient of `e_j ⊗ e_k` in `Δ(e_i)`.
fn coeff(delta: &LinMap, n: usize, i: usize, j: usize, k: usize) -> Scalar {
    delta.entry(j * n + k, i).clone()
}

fn oracle_skew(delta: &LinMap, n: usize) -> bool {
    (0..n).all(|i| {
        (0..n).all(|j| (0..n).all(|k| coeff(delta, n, i, j, k) == -coeff(delta, n, i, k, j)))
    })
}

fn oracle_co_jacobi(delta: &LinMap, n: usize) -> bool {
    let t = |i: usize, a: usize, b: usize, c: usize| -> Scalar {
        (0..n)
            .map(|k| coeff(delta, n, i, a, k) * coeff(delta, n, k, b, c))
            .sum()
    };
    (0..n).all(|i| {
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| t(i, a, b, c) + t(i, b, c, a) + t(i, c, a, b) == int(0)))
        })
    })
}

fn criterion_8() -> Verdict {
    let l2 = delta_from_terms(2, &[(1, 0, 1, int(1)), (1, 1, 0, int(-1))]);
    let heisenberg = delta_from_terms(3, &[(2, 0, 1, int(1)), (2, 1, 0, int(-1))]);
    let mut seeds = 0;
    let mut rejected = 0;
    for n in 1..=4 {
        let library = classical_lie_seeds(n);
        let abelian = LinMap::zero(TensorSpace::power(n, 1), TensorSpace::power(n, 2));
        ensure(library.contains(&abelian), || {
            format!("dim {n}: abelian seed missing")
        })?;
        if n == 2 {
            ensure(library.contains(&l2), || "L2 seed missing".into())?;
        }
        if n == 3 {
            ensure(library.contains(&heisenberg), || {
                "Heisenberg seed missing".into()
            })?;
        }
        for delta in library {
            seeds += 1;
            ensure(
                oracle_skew(&delta, n) && oracle_co_jacobi(&delta, n),
                || format!("dim {n}: seed is not a Lie coalgebra"),
            )?;
            let coalg = HomCoalgebra::classical(delta.clone(), CoalgebraFlavor::Lie).unwrap();
            ensure(all_passed(&coalgebra_checks(&coalg)), || {
                format!("dim {n}: seed rejected")
            })?;
            let zero = LinMap::zero(TensorSpace::power(n, 1), TensorSpace::power(n, 1));
            ensure(check_coderivation(&coalg, &zero).unwrap().passed(), || {
                "phi = 0 rejected".into()
            })?;
            for r in 0..delta.rows() {
                for c in 0..delta.cols() {
                    for step in [int(1), ratio(-1, 2)] {
                        let mut bad = delta.clone();
                        bad.set(r, c, delta.entry(r, c) + step);
                        let (skew, jacobi) = (oracle_skew(&bad, n), oracle_co_jacobi(&bad, n));
                        let coalg = HomCoalgebra::classical(bad, CoalgebraFlavor::Lie).unwrap();
                        ensure(
                            check_skew(&coalg).passed() == skew
                                && check_hom_co_jacobi(&coalg).passed() == jacobi,
                            || format!("dim {n}: checker disagrees with oracle at ({r}, {c})"),
                        )?;
                        if !(skew && jacobi) {
                            ensure(!all_passed(&coalgebra_checks(&coalg)), || "accepted".into())?;
                            rejected += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{seeds} classical seeds accepted; {rejected} breaking perturbations rejected"
    ))
}

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "bundle"))
        .collect();
    files.sort();
    files
}

fn cli(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = homcoder::run(
        std::iter::once("homcoder").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap())
}

fn criterion_9() -> Verdict {
    let files = corpus();
    let (mut passing, mut failing) = (0, 0);
    for file in &files {
        let name = file.display().to_string();
        let text = fs::read_to_string(file).map_err(|e| e.to_string())?;
        let doc = parse(&text).map_err(|e| format!("{name}: {e}"))?;
        ensure(serialize(&doc) == text, || {
            format!("{name}: not byte-identical")
        })?;
        let reports = check_bundle(&doc.bundle).map_err(|e| e.to_string())?;
        let expected = if all_passed(&reports) { 0 } else { 1 };
        let (code, _) = cli(&["check", &name]);
        ensure(code == expected, || {
            format!("{name}: exit {code}, library says {expected}")
        })?;
        if expected == 0 {
            passing += 1
        } else {
            failing += 1
        }
        let (_, json) = cli(&["check", "--json", &name]);
        ensure(
            parse_reports(&json).map_err(|e| e.to_string())? == reports,
            || format!("{name}: --json reports differ"),
        )?;
    }
    ensure(passing > 0 && failing > 0, || {
        "corpus lacks a passing or failing bundle".into()
    })?;
    let dir = std::env::temp_dir().join(format!("homcoder-acceptance-{}", std::process::id()));
    fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let bad = dir.join("bad.bundle");
    let l2 = fs::read_to_string(files.iter().find(|f| f.ends_with("l2.bundle")).unwrap()).unwrap();
    fs::write(&bad, l2.replace("\"-1\"", "\"1/0\"")).map_err(|e| e.to_string())?;
    let bad = bad.display().to_string();
    let missing = dir.join("missing.bundle").display().to_string();
    let cases: [(&[&str], i32); 3] = [
        (&["check", &missing], 2),
        (&["check", &bad], 2),
        (&["bogus"], 2),
    ];
    for (args, expected) in cases {
        let (code, _) = cli(args);
        ensure(code == expected, || {
            format!("{args:?}: exit {code}, expected {expected}")
        })?;
    }
    let _ = fs::remove_dir_all(&dir);
    Ok(format!(
        "{} corpus files round-trip; exit codes 0 ({passing}), 1 ({failing}), 2 verified; --json parses back",
        files.len()
    ))
}

fn main() {
    let mut generator = Generator::new();
    let hom_ass = generate_pairs(&mut generator, CoalgebraFlavor::Coassociative, 4, 60);
    let rb = hom_ass
        .as_ref()
        .map_err(Clone::clone)
        .and_then(|pairs| rb_instances(pairs));
    let with_ass = |f: &dyn Fn(&[CoDerPair], &[RbInstance]) -> Verdict| match (&hom_ass, &rb) {
        (Ok(pairs), Ok(instances)) => f(pairs, instances),
        (Err(e), _) | (_, Err(e)) => Err(e.clone()),
    };

    let results: Vec<(&str, Verdict)> = vec![
        (
            "closure of the pre-Lie commutator",
            criterion_1(&mut generator),
        ),
        ("Rota-Baxter twist", with_ass(&criterion_2)),
        (
            "semidirect product equivalence",
            criterion_3(&mut generator),
        ),
        ("duality", criterion_4(&mut generator)),
        ("solver ground truth", criterion_5()),
        ("Rota-Baxter commutation identities", with_ass(&criterion_6)),
        (
            "endomorphism twist",
            with_ass(&|pairs, _| criterion_7(pairs)),
        ),
        ("classical degeneration", criterion_8()),
        ("CLI contract", criterion_9()),
    ];
    let mut failed = 0;
    for (i, (name, verdict)) in results.iter().enumerate() {
        match verdict {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {reason}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
