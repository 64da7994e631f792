//! Command-line front end: generate certified instances, apply reductions,
//! run oracles, verify certificates, and drive equivalence trials.
//!
//! Exit codes: 0 = all checks pass, 1 = a semantic failure was detected,
//! 2 = usage or parse errors.

use clap::{Parser, Subcommand};
use redlab_core::harness::{
    gen_pipeline_instance, pipeline_by_name, pipeline_specs, run_pipeline, Bundle,
    FaultInjection, GenParams, Instance, PlantedKind, Provenance, ReductionId,
};
use redlab_core::instance::{primal_graph, StructureCertificate};
use redlab_core::oracles::OracleCaps;
use redlab_core::{Error, Result};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "redlab",
    about = "A laboratory for answer-preserving reductions between satisfiability-style problems",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance with a planted, verified structure certificate.
    Gen {
        /// cnf-td-modulator | cnf-hub | cnf-2sat-backdoor | cnf-horn-backdoor |
        /// cnf-pw-modulator | circuit-depth-bounded | annotated-dag | graph
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Generator knobs as key=value (n, mod, m, k, c, w, sigma, delta,
        /// ann, density, weighted, monotone, and_not_basis).
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Output bundle path (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Export CNF instances as DIMACS instead of a bundle.
        #[arg(long)]
        dimacs: bool,
    },
    /// Apply one reduction to a bundled instance.
    Reduce {
        /// Reduction id, e.g. barrington-transform (see `check-equivalence --list`).
        #[arg(long)]
        id: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Weight parameter for the weighted reductions.
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Color count for the coloring reductions.
        #[arg(long, default_value_t = 3)]
        q: u32,
        /// Threshold for max-sat style reductions.
        #[arg(long, default_value_t = 1)]
        t: u64,
        /// Accuracy parameter feeding the (gamma, rho) selectors.
        #[arg(long, default_value_t = 1.0)]
        epsilon: f64,
    },
    /// Run a ground-truth oracle on a bundled instance.
    Solve {
        /// sat | maxsat | 2sat | horn | weight-k | ann-reach | ann-nonreach |
        /// coloring | maxcut | degeneracy | tree-depth | pathwidth
        #[arg(long)]
        oracle: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 3)]
        q: u32,
        #[arg(long, default_value_t = 2)]
        r: u32,
    },
    /// Verify the certificate attached to a bundled instance.
    VerifyCert {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run seeded equivalence trials for one reduction.
    CheckEquivalence {
        #[arg(long, required_unless_present = "list")]
        id: Option<String>,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// List the known reduction ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Run a named reduction pipeline end to end on seeded instances.
    Pipeline {
        #[arg(long, required_unless_present = "list")]
        spec: Option<String>,
        #[arg(long, default_value_t = 20)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// List the known pipelines and exit.
        #[arg(long)]
        list: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::Parse { .. } | Error::Precondition(_) | Error::Serde(_) => 2,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}

fn load_instance(path: &PathBuf) -> Result<Instance> {
    let text = std::fs::read_to_string(path)?;
    // DIMACS files start with comments or a problem line
    let looks_dimacs = text
        .lines()
        .find(|l| !l.trim().is_empty())
        .map(|l| l.starts_with('c') || l.starts_with('p'))
        .unwrap_or(false);
    if looks_dimacs {
        return Ok(Instance::Cnf(redlab_core::harness::dimacs::import_dimacs(&text)?));
    }
    Ok(Bundle::from_json(&text)?.instance)
}

fn write_instance(instance: Instance, path: Option<&PathBuf>, provenance: Provenance) -> Result<()> {
    let bundle = Bundle::with_provenance(instance, provenance);
    match path {
        Some(p) => bundle.write_file(p)?,
        None => println!("{}", bundle.to_json()?),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    let caps = OracleCaps::trial();
    match cli.command {
        Command::Gen { kind, seed, params, out, dimacs } => {
            let kind = PlantedKind::parse(&kind)?;
            let mut gen_params = GenParams::default();
            for p in &params {
                let (key, value) = p
                    .split_once('=')
                    .ok_or_else(|| Error::precondition(format!("expected key=value, got {p:?}")))?;
                gen_params.set(key, value)?;
            }
            let instance = redlab_core::harness::gen_planted(kind, &gen_params, seed)?;
            if dimacs {
                let Instance::Cnf(f) = &instance else {
                    return Err(Error::precondition("--dimacs needs a cnf kind"));
                };
                let text = redlab_core::harness::dimacs::export_dimacs(f);
                match out {
                    Some(p) => std::fs::write(p, text)?,
                    None => print!("{text}"),
                }
            } else {
                let provenance = Provenance {
                    generator: Some(format!("{kind:?}")),
                    seed: Some(seed),
                    reduction_trail: vec![],
                    notes: vec![],
                };
                write_instance(instance, out.as_ref(), provenance)?;
            }
            Ok(true)
        }
        Command::Reduce { id, input, out, k, q, t, epsilon } => {
            let id = ReductionId::parse(&id)?;
            let instance = load_instance(&input)?;
            let (result, note) = apply_reduction(id, instance, k, q, t, epsilon)?;
            let provenance = Provenance {
                generator: None,
                seed: None,
                reduction_trail: vec![id.name()],
                notes: note.into_iter().collect(),
            };
            write_instance(result, Some(&out), provenance)?;
            Ok(true)
        }
        Command::Solve { oracle, input, k, q, r } => {
            let instance = load_instance(&input)?;
            let verdict = solve(&oracle, &instance, k, q, r, &caps)?;
            println!("{verdict}");
            Ok(true)
        }
        Command::VerifyCert { input } => {
            let instance = load_instance(&input)?;
            let ok = match &instance {
                Instance::Cnf(f) => {
                    if f.certificate.is_none() {
                        return Err(Error::precondition("no certificate attached"));
                    }
                    f.verify_certificate()
                }
                other => {
                    return Err(Error::precondition(format!(
                        "no certificate on a {} instance",
                        other.kind_name()
                    )))
                }
            };
            println!("certificate: {}", if ok { "VALID" } else { "INVALID" });
            Ok(ok)
        }
        Command::CheckEquivalence { id, trials, seed, json, list } => {
            if list {
                for id in ReductionId::ALL {
                    println!("{}", id.name());
                }
                return Ok(true);
            }
            let id = ReductionId::parse(&id.unwrap())?;
            let mut all_pass = true;
            for s in seed..seed + trials {
                let report = redlab_core::harness::run_seeded_trial(id, s, &caps, FaultInjection::None)?;
                all_pass &= report.pass;
                if json {
                    println!("{}", serde_json::to_string(&report)?);
                } else {
                    println!(
                        "{} seed={} {} | in: {} | out: {} [{} ms]",
                        report.reduction_id,
                        report.seed,
                        if report.pass { "PASS" } else { "FAIL" },
                        report.oracle_verdict_in,
                        report.oracle_verdict_out,
                        report.elapsed_ms
                    );
                }
            }
            println!("{}: {}", id.name(), if all_pass { "ALL PASS" } else { "FAILURES DETECTED" });
            Ok(all_pass)
        }
        Command::Pipeline { spec, trials, seed, json, list } => {
            if list {
                for p in pipeline_specs() {
                    println!("{}", p.name);
                }
                return Ok(true);
            }
            let spec = pipeline_by_name(&spec.unwrap())?;
            let mut all_pass = true;
            for s in seed..seed + trials {
                let instance = gen_pipeline_instance(&spec, s)?;
                let report = run_pipeline(&spec, instance, s, &caps)?;
                all_pass &= report.pass;
                if json {
                    println!("{}", serde_json::to_string(&report)?);
                } else {
                    println!(
                        "{} seed={} {} | in: {} | out: {}",
                        report.reduction_id,
                        report.seed,
                        if report.pass { "PASS" } else { "FAIL" },
                        report.oracle_verdict_in,
                        report.oracle_verdict_out
                    );
                }
            }
            println!("pipeline {}: {}", spec.name, if all_pass { "ALL PASS" } else { "FAILURES DETECTED" });
            Ok(all_pass)
        }
    }
}

/// Applies a reduction to a loaded instance, returning the result and an
/// optional provenance note (offsets, targets, parameter bindings).
fn apply_reduction(
    id: ReductionId,
    instance: Instance,
    k: u32,
    q: u32,
    t: u64,
    epsilon: f64,
) -> Result<(Instance, Option<String>)> {
    use redlab_core::reductions::apps;
    use redlab_core::reductions::circuit as rc;
    use redlab_core::reductions::horn;
    use redlab_core::reductions::modulator as rm;
    use redlab_core::reductions::reach;

    let want = |kind: &str| Error::precondition(format!("{} expects a {kind} input", id.name()));
    Ok(match (id, instance) {
        (ReductionId::EliminateTreedepthModulator, Instance::Cnf(f)) => {
            (Instance::Cnf(rm::eliminate_treedepth_modulator(&f)?), None)
        }
        (ReductionId::HubToTreedepthCert, Instance::Cnf(mut f)) => {
            let cert = f.certificate.clone().ok_or_else(|| want("hub-certified cnf"))?;
            let td = rm::hub_to_treedepth_cert(&primal_graph(&f), &cert)?;
            f.certificate = Some(td);
            (Instance::Cnf(f), Some("hub converted to tree-depth forest".into()))
        }
        (ReductionId::EliminateHubMaxsat, Instance::Cnf(f)) => {
            let out = rm::eliminate_hub_maxsat(&f)?;
            let note = format!(
                "maxsat(out) + {} = maxsat(in); dummy neighbors {:?}",
                out.target_offset, out.dummy_neighbors
            );
            (Instance::Cnf(out.cnf), Some(note))
        }
        (ReductionId::ReduceArityTo3, Instance::Cnf(f)) => {
            (Instance::Cnf(rm::reduce_arity_to_3(&f)?), None)
        }
        (ReductionId::BarringtonTransform, Instance::Circuit(c)) => {
            (Instance::BranchingProgram(rc::barrington_transform(&c)?), None)
        }
        (ReductionId::BpToCnfPw5, Instance::BranchingProgram(bp)) => {
            (Instance::Cnf(rc::bp_to_cnf_pw5(&bp)?), None)
        }
        (ReductionId::BuildPsiR, Instance::Cnf(f)) => {
            let out = rc::build_psi_r(&f)?;
            let note = format!("inputs map to modulator variables {:?}", out.modulator_map);
            (Instance::Circuit(out.circuit), Some(note))
        }
        (ReductionId::FormulaToWeightK, Instance::Circuit(c)) => {
            let out = rc::formula_to_weight_k(&c, k)?;
            (Instance::Circuit(out.circuit), Some(format!("weight parameter k={}", out.k)))
        }
        (ReductionId::WeightKFormulaToCircuit, Instance::Circuit(c)) => {
            let out = rc::weight_k_formula_to_circuit(&c, k)?;
            (Instance::Circuit(out.circuit), Some(format!("{} index bits per group", out.bits)))
        }
        (ReductionId::BalanceFormula, Instance::Circuit(c)) => {
            (Instance::Circuit(rc::balance_formula(&c)?), None)
        }
        (ReductionId::MaxsatToLindepthCircuit, Instance::Cnf(f)) => {
            (Instance::Circuit(rc::maxsat_to_lindepth_circuit(&f, t)?), Some(format!("threshold t={t}")))
        }
        (ReductionId::AnnnonreachTo2satBackdoor, Instance::AnnotatedDag(d)) => {
            (Instance::Cnf(reach::annnonreach_to_2satbackdoor(&d)?), None)
        }
        (ReductionId::TwosatBackdoorToAnnnonreach, Instance::Cnf(f)) => {
            let out = reach::twosatbackdoor_to_annnonreach(&f)?;
            let note = format!("annotation variables map to backdoor {:?}", out.backdoor_map);
            (Instance::AnnotatedDag(out.dag), Some(note))
        }
        (ReductionId::LogpwSatToAnnreach, Instance::Cnf(f)) => {
            let out = reach::logpw_sat_to_annreach(&f)?;
            let note = format!("annotation variables map to modulator {:?}", out.modulator_map);
            (Instance::AnnotatedDag(out.dag), Some(note))
        }
        (ReductionId::AnnreachToLogpwSat, Instance::AnnotatedDag(d)) => {
            (Instance::Cnf(reach::annreach_to_logpw_sat(&d)?), None)
        }
        (ReductionId::ComplementAnnotated, Instance::AnnotatedDag(d)) => {
            let (out, stats) = reach::complement_annotated(&d)?;
            let note = format!(
                "vertices {} (raw {} <= bound {})",
                stats.vertices, stats.raw_vertices, stats.vertex_bound
            );
            (Instance::AnnotatedDag(out), Some(note))
        }
        (ReductionId::TwosatBackdoorToCircuit, Instance::Cnf(f)) => {
            let out = reach::twosatbackdoor_to_circuit(&f)?;
            let note = format!("inputs map to backdoor {:?}", out.backdoor_map);
            (Instance::Circuit(out.circuit), Some(note))
        }
        (ReductionId::HornbackdoorToCircuit, Instance::Cnf(f)) => {
            let out = horn::hornbackdoor_to_circuit(&f)?;
            let note = format!("inputs map to backdoor {:?}", out.backdoor_map);
            (Instance::Circuit(out.circuit), Some(note))
        }
        (ReductionId::CircuitToHornbackdoor, Instance::Circuit(c)) => {
            (Instance::Cnf(horn::circuit_to_hornbackdoor(&c)?), None)
        }
        (ReductionId::WeightkMonotoneToCircuitsat, Instance::Circuit(c)) => {
            let out = horn::weightk_monotone_to_circuitsat(&c, k)?;
            (Instance::Circuit(out.circuit), Some(format!("ask weight-{} satisfiability", out.k)))
        }
        (ReductionId::CircuitsatToWeightk, Instance::Circuit(c)) => {
            let out = horn::circuitsat_to_weightk(&c, k)?;
            (Instance::Circuit(out.circuit), Some(format!("{} index bits per group", out.bits)))
        }
        (ReductionId::QcoloringToSatTd, Instance::Cnf(f)) => {
            // the graph is the primal graph of a certified cnf; hub
            // certificates are converted to tree-depth form first
            let g = primal_graph(&f);
            let cert = match f.certificate {
                Some(c @ StructureCertificate::TreeDepthForest { .. }) => c,
                Some(c @ StructureCertificate::Hub { .. }) => rm::hub_to_treedepth_cert(&g, &c)?,
                _ => return Err(want("cnf with a tree-depth or hub certificate")),
            };
            let (gamma, rho) =
                apps::choose_gamma_rho(q, epsilon, apps::GammaRhoDirection::ColoringToSat)?;
            let out = apps::qcoloring_to_sat_td(&g, &cert, q, gamma, rho)?;
            let note = format!(
                "q={q} gamma={gamma} rho={rho} new modulator size {}",
                out.modulator_size
            );
            (Instance::Cnf(out.cnf), Some(note))
        }
        (ReductionId::MaxcutToMaxsat, Instance::Graph(g)) => {
            let out = apps::maxcut_to_maxsat(&g, None)?;
            let note = format!("maxsat = {} + maxcut", out.total_edge_weight);
            (Instance::Cnf(out.cnf), Some(note))
        }
        (ReductionId::MaxsatToMaxcut, Instance::Cnf(f)) => {
            let out = apps::maxsat_to_maxcut(&f, t)?;
            let note = format!("cut target {} (weighted stage target {})", out.cut_target, out.weighted_target);
            (Instance::Graph(out.graph), Some(note))
        }
        (ReductionId::PwmodSatToQcoloring, Instance::Cnf(f)) => {
            let (gamma, rho) =
                apps::choose_gamma_rho(q, epsilon, apps::GammaRhoDirection::SatToColoring)?;
            let out = apps::pwmod_sat_to_qcoloring(&f, q, gamma, rho)?;
            let note = format!(
                "q={q} gamma={gamma} rho={rho} modulator={} clique={:?}",
                out.modulator_size, out.clique
            );
            (Instance::Graph(out.graph), Some(note))
        }
        (ReductionId::AnnnonreachToKnc, Instance::AnnotatedDag(d)) => {
            let out = apps::annnonreach_to_knc(&d, k)?;
            let note = format!("s={} t={} k={}", out.source, out.sink, out.k);
            (Instance::Graph(out.graph), Some(note))
        }
        (ReductionId::KncToAnnnonreach, Instance::Graph(g)) => {
            if !g.directed {
                return Err(want("directed graph"));
            }
            let out = apps::knc_to_annnonreach(&g, 1, g.vertex_count, k)?;
            let note = format!("terminals 1 and {}; {} bits per group", g.vertex_count, out.bits);
            (Instance::AnnotatedDag(out.dag), Some(note))
        }
        (ReductionId::DominatingToKnc, Instance::Graph(g)) => {
            let out = apps::dominating_to_knc(&g, k)?;
            let note = format!("s={} t={} k={}", out.source, out.sink, out.k);
            (Instance::Graph(out.graph), Some(note))
        }
        (ReductionId::DegdelToCircuitsat, Instance::Graph(g)) => {
            (Instance::Circuit(apps::degdel_to_circuitsat(&g, 2, k)?), Some("r=2".into()))
        }
        (id, other) => {
            return Err(Error::precondition(format!(
                "{} cannot consume a {} instance",
                id.name(),
                other.kind_name()
            )))
        }
    })
}

fn solve(
    oracle: &str,
    instance: &Instance,
    k: u32,
    q: u32,
    r: u32,
    caps: &OracleCaps,
) -> Result<String> {
    use redlab_core::oracles as o;
    let want = |kind: &str| Error::precondition(format!("oracle {oracle} expects a {kind}"));
    Ok(match (oracle, instance) {
        ("sat", Instance::Cnf(f)) => match o::solve_sat_bruteforce(f, caps)? {
            Some(a) => format!("SAT {a}"),
            None => "UNSAT".into(),
        },
        ("sat", Instance::Circuit(c)) => {
            let hit = redlab_core::instance::Assignment::enumerate(c.num_inputs)
                .find(|a| o::eval_circuit(c, a));
            match hit {
                Some(a) => format!("SAT {a}"),
                None => "UNSAT".into(),
            }
        }
        ("sat", Instance::BranchingProgram(b)) => {
            let hit = redlab_core::instance::Assignment::enumerate(b.num_vars)
                .find(|a| o::eval_branching_program(b, a));
            match hit {
                Some(a) => format!("ACCEPTS {a}"),
                None => "REJECTS ALL".into(),
            }
        }
        ("maxsat", Instance::Cnf(f)) => {
            let (a, w) = o::solve_maxsat_bruteforce(f, caps)?;
            format!("OPTIMUM {w} {a}")
        }
        ("2sat", Instance::Cnf(f)) => match o::solve_2sat_poly(f)? {
            Some(a) => format!("SAT {a}"),
            None => "UNSAT".into(),
        },
        ("horn", Instance::Cnf(f)) => match o::solve_horn_poly(f)? {
            Some(a) => format!("SAT {a}"),
            None => "UNSAT".into(),
        },
        ("weight-k", Instance::Cnf(f)) => match o::solve_weight_k_sat(f, k, caps)? {
            Some(a) => format!("SAT weight={k} {a}"),
            None => format!("NO weight-{k} model"),
        },
        ("weight-k", Instance::Circuit(c)) => match o::solve_weight_k_sat(c, k, caps)? {
            Some(a) => format!("SAT weight={k} {a}"),
            None => format!("NO weight-{k} model"),
        },
        ("ann-reach", Instance::AnnotatedDag(d)) => match o::solve_ann_reach(d, caps)? {
            Some(a) => format!("YES {a}"),
            None => "NO".into(),
        },
        ("ann-nonreach", Instance::AnnotatedDag(d)) => match o::solve_ann_nonreach(d, caps)? {
            Some(a) => format!("YES {a}"),
            None => "NO".into(),
        },
        ("coloring", Instance::Graph(g)) => match o::solve_qcoloring_bruteforce(g, q, caps)? {
            Some(c) => format!("COLORABLE {c:?}"),
            None => format!("NOT {q}-COLORABLE"),
        },
        ("maxcut", Instance::Graph(g)) => {
            let (sides, w) = o::solve_maxcut_bruteforce(g, caps)?;
            format!("MAXCUT {w} {sides:?}")
        }
        ("degeneracy", Instance::Graph(g)) => format!("DEGENERACY {}", o::degeneracy(g)),
        ("degdel", Instance::Graph(g)) => match o::solve_degdel_bruteforce(g, r, k, caps)? {
            Some(s) => format!("DELETABLE {s:?}"),
            None => "NO DELETION SET".into(),
        },
        ("tree-depth", Instance::Graph(g)) => {
            format!("TREE-DEPTH {}", o::tree_depth_bruteforce(g, caps)?)
        }
        ("pathwidth", Instance::Graph(g)) => {
            format!("PATHWIDTH {}", o::pathwidth_bruteforce(g, caps)?)
        }
        ("sat" | "maxsat" | "2sat" | "horn" | "weight-k", _) => return Err(want("cnf")),
        ("ann-reach" | "ann-nonreach", _) => return Err(want("annotated dag")),
        ("coloring" | "maxcut" | "degeneracy" | "degdel" | "tree-depth" | "pathwidth", _) => {
            return Err(want("graph"))
        }
        (other, _) => return Err(Error::precondition(format!("unknown oracle {other:?}"))),
    })
}
