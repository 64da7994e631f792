//! The acceptance suite: one test per criterion, each running its full
//! randomized trial family at the stated sizes and printing a single
//! PASS/FAIL line (visible with `--nocapture`).
//!
//! Every criterion asserts exact oracle agreement — no tolerances are
//! involved anywhere, because all answers are discrete.

use redlab_core::harness::gen::{gen_planted, gen_random_bp, GenParams, PlantedKind};
use redlab_core::harness::{
    gen_pipeline_instance, pipeline_specs, run_pipeline, run_trial, FaultInjection, Instance,
    ReductionId, TrialReport,
};
use redlab_core::oracles::OracleCaps;

fn caps() -> OracleCaps {
    OracleCaps::trial()
}

struct SuiteOutcome {
    total: usize,
    failures: Vec<TrialReport>,
    bound_checks: usize,
    elapsed: std::time::Duration,
}

fn run_suite(
    name: &str,
    instances: impl Iterator<Item = (u64, ReductionId, Instance)>,
) -> SuiteOutcome {
    let caps = caps();
    let started = std::time::Instant::now();
    let mut total = 0;
    let mut bound_checks = 0;
    let mut failures = Vec::new();
    for (seed, id, instance) in instances {
        let mut report =
            run_trial(id, &instance, &caps, FaultInjection::None).expect("trial setup");
        report.seed = seed;
        total += 1;
        bound_checks += report.size_bounds.len();
        if !report.pass {
            failures.push(report);
        }
    }
    let outcome = SuiteOutcome { total, failures, bound_checks, elapsed: started.elapsed() };
    println!(
        "acceptance {name}: {} ({}/{} trials pass, {} bound checks, {:.1}s)",
        if outcome.failures.is_empty() { "PASS" } else { "FAIL" },
        outcome.total - outcome.failures.len(),
        outcome.total,
        outcome.bound_checks,
        outcome.elapsed.as_secs_f64()
    );
    for f in outcome.failures.iter().take(3) {
        println!("  failing trial: {f:?}");
    }
    outcome
}

#[test]
fn criterion_1_barrington_suite() {
    // 500 normalized circuits, n <= 10, depth <= 6: width exactly 5,
    // length <= 4^depth, evaluation agreement on all 2^n inputs
    let instances = (0..500u64).map(|seed| {
        let params = GenParams {
            num_vars: 1 + (seed % 10) as u32,
            depth: 1 + (seed % 6) as u32,
            ..GenParams::default()
        };
        let inst = gen_planted(PlantedKind::CircuitDepthBounded, &params, seed).unwrap();
        (seed, ReductionId::BarringtonTransform, inst)
    });
    let outcome = run_suite("1 barrington", instances);
    assert!(outcome.failures.is_empty());
    assert_eq!(outcome.total, 500);
}

#[test]
fn criterion_2_resolution_elimination_suite() {
    // 500 planted tree-depth instances, c <= 3, n <= 16: equisatisfiability
    // plus the clause-count and arity bounds on every instance
    let instances = (0..500u64).map(|seed| {
        let params = GenParams {
            num_vars: 3 + (seed % 6) as u32,
            modulator_size: 4 + (seed % 5) as u32,
            clauses: 5 + (seed % 5) as u32,
            depth: 1 + (seed % 3) as u32,
            ..GenParams::default()
        };
        let inst = gen_planted(PlantedKind::CnfTdModulator, &params, seed).unwrap();
        (seed, ReductionId::EliminateTreedepthModulator, inst)
    });
    let outcome = run_suite("2 resolution-elimination", instances);
    assert!(outcome.failures.is_empty());
    assert_eq!(outcome.total, 500);
}

#[test]
fn criterion_3_hub_maxsat_suite() {
    // 300 weighted hub instances, sigma, delta <= 3, n <= 18: the exact
    // optimum identity maxsat(out) + offset = maxsat(in)
    let instances = (0..300u64).map(|seed| {
        // dummy neighbor padding adds up to components * delta variables,
        // so the component budget stays small to fit the enumeration cap
        let params = GenParams {
            num_vars: 3 + (seed % 3) as u32,
            modulator_size: 3 + (seed % 4) as u32,
            sigma: 1 + (seed % 3) as u32,
            delta: 1 + (seed % 3) as u32,
            weighted: true,
            ..GenParams::default()
        };
        let inst = gen_planted(PlantedKind::CnfHub, &params, seed).unwrap();
        (seed, ReductionId::EliminateHubMaxsat, inst)
    });
    let outcome = run_suite("3 hub-maxsat", instances);
    assert!(outcome.failures.is_empty());
    assert_eq!(outcome.total, 300);
}

fn dag_params(n: u32, m: u32) -> GenParams {
    GenParams { num_vars: n, annotation_vars: m, density: 0.35, ..GenParams::default() }
}

#[test]
fn criterion_4_annotated_reachability_suites() {
    // five reductions, >= 100 instances each, per-assignment equivalence
    // checked exhaustively over all 2^m assignments
    let mut families: Vec<(ReductionId, Vec<(u64, Instance)>)> = Vec::new();
    families.push((
        ReductionId::AnnnonreachTo2satBackdoor,
        (0..100u64)
            .map(|s| {
                (s, gen_planted(PlantedKind::AnnotatedDag, &dag_params(8, 6 + (s % 3) as u32), s).unwrap())
            })
            .collect(),
    ));
    families.push((
        ReductionId::TwosatBackdoorToAnnnonreach,
        (0..100u64)
            .map(|s| {
                let params = GenParams {
                    num_vars: 4,
                    modulator_size: 6,
                    clauses: 8,
                    arity: 4,
                    ..GenParams::default()
                };
                (s, gen_planted(PlantedKind::Cnf2satBackdoor, &params, s).unwrap())
            })
            .collect(),
    ));
    families.push((
        ReductionId::LogpwSatToAnnreach,
        (0..100u64)
            .map(|s| {
                let params = GenParams {
                    num_vars: 6,
                    modulator_size: 6,
                    clauses: 7,
                    width: 2,
                    ..GenParams::default()
                };
                (s, gen_planted(PlantedKind::CnfPwModulator, &params, s).unwrap())
            })
            .collect(),
    ));
    families.push((
        ReductionId::AnnreachToLogpwSat,
        (0..100u64)
            .map(|s| (s, gen_planted(PlantedKind::AnnotatedDag, &dag_params(6, 6), s).unwrap()))
            .collect(),
    ));
    families.push((
        ReductionId::ComplementAnnotated,
        (0..100u64)
            .map(|s| {
                (s, gen_planted(PlantedKind::AnnotatedDag, &dag_params(3 + (s % 4) as u32, 6), s).unwrap())
            })
            .collect(),
    ));
    let mut all_ok = true;
    for (id, family) in families {
        let outcome = run_suite(
            &format!("4 reach [{}]", id.name()),
            family.into_iter().map(|(s, inst)| (s, id, inst)),
        );
        all_ok &= outcome.failures.is_empty() && outcome.total >= 100;
    }
    assert!(all_ok);
}

#[test]
fn criterion_5_horn_circuit_suites() {
    // 300 instances per direction; Horn backdoor certificates of the
    // circuit-to-formula direction verify syntactically on all
    let forward = (0..300u64).map(|seed| {
        let params = GenParams {
            num_vars: 4 + (seed % 3) as u32,
            modulator_size: 5 + (seed % 4) as u32,
            clauses: 8 + (seed % 4) as u32,
            arity: 4,
            ..GenParams::default()
        };
        let inst = gen_planted(PlantedKind::CnfHornBackdoor, &params, seed).unwrap();
        (seed, ReductionId::HornbackdoorToCircuit, inst)
    });
    let backward = (0..300u64).map(|seed| {
        let params = GenParams {
            num_vars: 4 + (seed % 7) as u32,
            depth: 6 + (seed % 6) as u32,
            and_not_basis: false,
            ..GenParams::default()
        };
        let inst = gen_planted(PlantedKind::CircuitDepthBounded, &params, seed).unwrap();
        (seed, ReductionId::CircuitToHornbackdoor, inst)
    });
    let a = run_suite("5 horn [hornbackdoor-to-circuit]", forward);
    let b = run_suite("5 horn [circuit-to-hornbackdoor]", backward);
    assert!(a.failures.is_empty() && a.total == 300);
    assert!(b.failures.is_empty() && b.total == 300);
}

#[test]
fn criterion_6_application_suites() {
    let mut all_ok = true;
    // coloring <-> SAT with tree-depth modulators
    let coloring = (0..100u64).map(|seed| {
        let params = GenParams {
            num_vars: 4,
            modulator_size: 3,
            sigma: 2,
            delta: 2,
            density: 0.5,
            ..GenParams::default()
        };
        let inst = gen_planted(PlantedKind::CnfHub, &params, seed).unwrap();
        (seed, ReductionId::QcoloringToSatTd, inst)
    });
    all_ok &= run_suite("6 apps [qcoloring-to-sat-td]", coloring).failures.is_empty();

    // max-cut threshold sweep over every t, on the weighted gadget stage
    let maxcut = (0..100u64).map(|seed| {
        let inst = Instance::Cnf(redlab_core::harness::gen::gen_tiny_cnf(seed));
        (seed, ReductionId::MaxsatToMaxcut, inst)
    });
    all_ok &= run_suite("6 apps [maxsat-to-maxcut sweep]", maxcut).failures.is_empty();
    let cut_to_sat = (0..100u64).map(|seed| {
        let params =
            GenParams { num_vars: 9, density: 0.45, weighted: true, ..GenParams::default() };
        let inst = gen_planted(PlantedKind::Graph, &params, seed).unwrap();
        (seed, ReductionId::MaxcutToMaxsat, inst)
    });
    all_ok &= run_suite("6 apps [maxcut-to-maxsat]", cut_to_sat).failures.is_empty();

    // SAT with pathwidth modulator -> coloring (the CSP chain)
    let chain = (0..100u64).map(|seed| {
        let params = GenParams {
            num_vars: 4,
            modulator_size: 2,
            clauses: 4,
            arity: 3,
            width: 1,
            ..GenParams::default()
        };
        let inst = gen_planted(PlantedKind::CnfPwModulator, &params, seed).unwrap();
        (seed, ReductionId::PwmodSatToQcoloring, inst)
    });
    all_ok &= run_suite("6 apps [pwmod-sat-to-qcoloring]", chain).failures.is_empty();

    // k-neighborhood-cut, both directions, plus the dominating-set remark
    let knc_fwd = (0..100u64).map(|seed| {
        let inst = gen_planted(PlantedKind::AnnotatedDag, &dag_params(6, 6), seed).unwrap();
        (seed, ReductionId::AnnnonreachToKnc, inst)
    });
    all_ok &= run_suite("6 apps [annnonreach-to-knc]", knc_fwd).failures.is_empty();
    let knc_bwd = (0..100u64).map(|seed| {
        let params = GenParams {
            num_vars: 5 + (seed % 4) as u32,
            annotation_vars: 0,
            density: 0.3,
            ..GenParams::default()
        };
        let inst = gen_planted(PlantedKind::AnnotatedDag, &params, seed).unwrap();
        (seed, ReductionId::KncToAnnnonreach, inst)
    });
    all_ok &= run_suite("6 apps [knc-to-annnonreach]", knc_bwd).failures.is_empty();
    let domset = (0..100u64).map(|seed| {
        let params = GenParams { num_vars: 7, density: 0.35, ..GenParams::default() };
        let inst = gen_planted(PlantedKind::Graph, &params, seed).unwrap();
        (seed, ReductionId::DominatingToKnc, inst)
    });
    all_ok &= run_suite("6 apps [dominating-to-knc]", domset).failures.is_empty();

    // degenerate deletion -> circuit satisfiability
    let degdel = (0..100u64).map(|seed| {
        let params = GenParams {
            num_vars: 5 + (seed % 5) as u32,
            density: 0.5,
            ..GenParams::default()
        };
        let inst = gen_planted(PlantedKind::Graph, &params, seed).unwrap();
        (seed, ReductionId::DegdelToCircuitsat, inst)
    });
    all_ok &= run_suite("6 apps [degdel-to-circuitsat]", degdel).failures.is_empty();

    assert!(all_ok);
}

#[test]
fn criterion_7_pipeline_suites() {
    // every theorem chain preserves answers on >= 50 instances
    let caps = caps();
    let started = std::time::Instant::now();
    let mut all_ok = true;
    for spec in pipeline_specs() {
        let mut pass = 0;
        for seed in 0..50u64 {
            let instance = gen_pipeline_instance(&spec, seed).unwrap();
            let report = run_pipeline(&spec, instance, seed, &caps).unwrap();
            if report.pass {
                pass += 1;
            } else if pass == seed as usize {
                println!("  failing pipeline trial: {report:?}");
            }
        }
        println!(
            "acceptance 7 pipeline [{}]: {} ({pass}/50)",
            spec.name,
            if pass == 50 { "PASS" } else { "FAIL" }
        );
        all_ok &= pass == 50;
    }
    println!("acceptance 7 pipelines total: {:.1}s", started.elapsed().as_secs_f64());
    assert!(all_ok);
}

#[test]
fn criterion_8_certificate_and_bound_audit() {
    // every reduction declaring a structural bound asserts it per instance;
    // zero violations across a representative re-run of each family
    let families: Vec<(ReductionId, u64)> = vec![
        (ReductionId::BarringtonTransform, 40),
        (ReductionId::EliminateTreedepthModulator, 40),
        (ReductionId::EliminateHubMaxsat, 40),
        (ReductionId::HubToTreedepthCert, 40),
        (ReductionId::ReduceArityTo3, 40),
        (ReductionId::BuildPsiR, 30),
        (ReductionId::WeightKFormulaToCircuit, 20),
        (ReductionId::BalanceFormula, 20),
        (ReductionId::ComplementAnnotated, 20),
        (ReductionId::QcoloringToSatTd, 20),
        (ReductionId::MaxsatToMaxcut, 20),
        (ReductionId::PwmodSatToQcoloring, 20),
        (ReductionId::KncToAnnnonreach, 20),
    ];
    let caps = caps();
    let started = std::time::Instant::now();
    let mut bound_checks = 0usize;
    let mut cert_checks = 0usize;
    let mut violations = Vec::new();
    for (id, trials) in families {
        for seed in 0..trials {
            let report =
                redlab_core::harness::run_seeded_trial(id, seed, &caps, FaultInjection::None)
                    .expect("trial setup");
            bound_checks += report.size_bounds.len();
            cert_checks += report.certificate_checks.len();
            for b in &report.size_bounds {
                if !b.pass {
                    violations.push(format!("{} seed {seed}: {b:?}", report.reduction_id));
                }
            }
            for (name, ok) in &report.certificate_checks {
                if !ok {
                    violations.push(format!("{} seed {seed}: cert {name}", report.reduction_id));
                }
            }
        }
    }
    println!(
        "acceptance 8 certificate-and-bound-audit: {} ({bound_checks} bound checks, {cert_checks} certificate checks, {} violations, {:.1}s)",
        if violations.is_empty() { "PASS" } else { "FAIL" },
        violations.len(),
        started.elapsed().as_secs_f64()
    );
    for v in violations.iter().take(5) {
        println!("  violation: {v}");
    }
    assert!(violations.is_empty());
    assert!(bound_checks > 0 && cert_checks > 0);
}

#[test]
fn criterion_9_fault_injection() {
    // for each suite family, some corrupted-output run must report failure
    // (guards against vacuous equivalence checks)
    let representatives = [
        ReductionId::BarringtonTransform,
        ReductionId::EliminateTreedepthModulator,
        ReductionId::EliminateHubMaxsat,
        ReductionId::BpToCnfPw5,
        ReductionId::BuildPsiR,
        ReductionId::AnnnonreachTo2satBackdoor,
        ReductionId::TwosatBackdoorToAnnnonreach,
        ReductionId::LogpwSatToAnnreach,
        ReductionId::AnnreachToLogpwSat,
        ReductionId::ComplementAnnotated,
        ReductionId::HornbackdoorToCircuit,
        ReductionId::CircuitToHornbackdoor,
        ReductionId::QcoloringToSatTd,
        ReductionId::MaxsatToMaxcut,
        ReductionId::PwmodSatToQcoloring,
        ReductionId::AnnnonreachToKnc,
        ReductionId::KncToAnnnonreach,
        ReductionId::DegdelToCircuitsat,
    ];
    let caps = caps();
    let started = std::time::Instant::now();
    let mut undetected = Vec::new();
    for id in representatives {
        let mut detected = false;
        for seed in 0..30u64 {
            let report =
                redlab_core::harness::run_seeded_trial(id, seed, &caps, FaultInjection::Corrupt)
                    .expect("trial setup");
            if !report.pass {
                detected = true;
                break;
            }
        }
        if !detected {
            undetected.push(id.name());
        }
    }
    println!(
        "acceptance 9 fault-injection: {} ({} families, {:.1}s)",
        if undetected.is_empty() { "PASS" } else { "FAIL" },
        representatives.len(),
        started.elapsed().as_secs_f64()
    );
    for u in &undetected {
        println!("  corruption not detected by: {u}");
    }
    assert!(undetected.is_empty());
}

#[test]
fn bp_to_cnf_small_program_suite() {
    // supplementary: 200 random small branching programs, projection of
    // satisfying assignments equals the accepted-input set
    let instances = (0..200u64)
        .map(|seed| (seed, Instance::BranchingProgram(gen_random_bp(3, 4, 4, seed))));
    let outcome =
        run_suite("(supplement) bp-to-cnf-pw5", instances.map(|(s, i)| (s, ReductionId::BpToCnfPw5, i)));
    assert!(outcome.failures.is_empty());
}
