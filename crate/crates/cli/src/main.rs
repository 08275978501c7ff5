//! Batch command-line front end: every engine is exposed as a subcommand
//! with text and versioned-JSON output. Exit codes: 0 pass/success,
//! 1 validation failure, 2 input error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use skelcat::abelian;
use skelcat::catalog::{self, CatalogKey};
use skelcat::cond;
use skelcat::fusion::{validate_fusion_ring, ObjectVector};
use skelcat::hopf;
use skelcat::json as wire;
use skelcat::modules;
use skelcat::monad;
use skelcat::pointed;
use skelcat::skel;
use skelcat::solver;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "skelcat", version, about = "Skeletal calculus for fusion categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunConfig,
}

#[derive(Args, Clone)]
struct RunConfig {
    /// Residual tolerance (also from SKELCAT_TOLERANCE).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Seed for every randomized component.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Restarts for the Hopf-structure solver.
    #[arg(long, global = true, default_value_t = 100)]
    restarts: u32,
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for solver restarts (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

impl RunConfig {
    fn tolerance(&self) -> f64 {
        self.tolerance
            .or_else(|| {
                std::env::var("SKELCAT_TOLERANCE").ok().and_then(|s| s.parse().ok())
            })
            .unwrap_or(skelcat::DEFAULT_TOL)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate a fusion ring (catalog entry or JSON file).
    CheckRing {
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long)]
        input: Option<String>,
    },
    /// Pentagon (and hexagon, when braided) check for skeletal data.
    CheckPentagon {
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        input: Option<String>,
    },
    /// Check the identity tensor functor on built-in skeletal data.
    CheckFunctor {
        #[arg(long)]
        identity_on: String,
    },
    /// Heptagon and triangle checks for a Hopf monad.
    CheckHopfMonad {
        /// Build the monad from a built-in Hopf algebra (2+e, 1+VecZ3, 2+tau).
        #[arg(long)]
        from_hopf: Option<String>,
        /// Trivial Z_n action on built-in skeletal data, as `n:skel-key`.
        #[arg(long)]
        trivial_action: Option<String>,
    },
    /// Verify every Hopf axiom for a built-in structure.
    VerifyHopf {
        #[arg(long)]
        builtin: String,
    },
    /// Multi-start search for Hopf structures on `1 ⊕ Vec_Zp`.
    SolveHopf {
        #[arg(long)]
        p: u32,
        /// Derive the comultiplication of powers from the generator.
        #[arg(long)]
        generator: bool,
        #[arg(long, default_value_t = 500)]
        max_iterations: u32,
    },
    /// Irreducible modules and the module fusion ring of a built-in Hopf algebra.
    Modules {
        #[arg(long)]
        builtin: String,
    },
    /// Condense an algebra object in a braided catalog entry.
    Condense {
        #[arg(long)]
        catalog: String,
        /// Additive object expression such as `A+C` or `11+tt`.
        #[arg(long)]
        algebra: String,
    },
    /// Tensor product of Vec_Z2 bimodule labels, or the whole table.
    BimoduleProduct {
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[arg(long)]
        table: bool,
        /// The two worked D(Z2) self-products.
        #[arg(long)]
        dz2: bool,
    },
    /// Primality/condensability/simplicity of a pointed class.
    SimpleCheck {
        /// Class expression: omega_p_k(p,k,u), omega_2_k(k,u), e_k(k), f_k(k).
        #[arg(long)]
        class: String,
    },
    /// Normal-algebra analysis of su(2)_k.
    Su2k {
        #[arg(long)]
        k: u32,
    },
    /// List catalog keys.
    Catalog,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.run.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.run.threads).build_global();
    }
    match run(&cli) {
        Ok(Outcome { pass, report }) => {
            if cli.run.json {
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "pass": pass,
                    "seed": cli.run.seed,
                    "tolerance": cli.run.tolerance(),
                    "report": report,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            if cli.run.json {
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "error": msg,
                });
                println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}

struct Outcome {
    pass: bool,
    report: Value,
}

fn text(cli: &Cli, line: impl AsRef<str>) {
    if !cli.run.json {
        println!("{}", line.as_ref());
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    let tol = cli.run.tolerance();
    match &cli.command {
        Command::CheckRing { catalog: cat, input } => {
            let ring = match (cat, input) {
                (Some(key), None) => {
                    let key = CatalogKey::parse(key).map_err(|e| e.to_string())?;
                    catalog::builtin_ring(&key).map_err(|e| e.to_string())?
                }
                (None, Some(path)) => {
                    let textv = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                    let v: Value = serde_json::from_str(&textv).map_err(|e| e.to_string())?;
                    wire::fusion_ring_from_json(&v)?
                }
                _ => return Err("pass exactly one of --catalog or --input".into()),
            };
            let report = validate_fusion_ring(&ring, tol).map_err(|e| e.to_string())?;
            text(cli, format!("{report}"));
            Ok(Outcome { pass: report.pass(), report: serde_json::to_value(&report).unwrap() })
        }
        Command::CheckPentagon { builtin, input } => {
            let data = match (builtin, input) {
                (Some(key), None) => {
                    let key = skel::SkelKey::parse(key).map_err(|e| e.to_string())?;
                    skel::builtin_skeletal(&key).map_err(|e| e.to_string())?
                }
                (None, Some(path)) => {
                    let textv = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                    let v: Value = serde_json::from_str(&textv).map_err(|e| e.to_string())?;
                    wire::skeletal_from_json(&v)?
                }
                _ => return Err("pass exactly one of --builtin or --input".into()),
            };
            let mut report = skel::check_pentagon(&data, tol).map_err(|e| e.to_string())?;
            if data.has_braiding() {
                let hex = skel::check_hexagon(&data, tol).map_err(|e| e.to_string())?;
                report.merge("hexagon", hex);
            }
            text(cli, format!("{report}"));
            Ok(Outcome { pass: report.pass(), report: serde_json::to_value(&report).unwrap() })
        }
        Command::CheckFunctor { identity_on } => {
            let key = skel::SkelKey::parse(identity_on).map_err(|e| e.to_string())?;
            let data = skel::builtin_skeletal(&key).map_err(|e| e.to_string())?;
            let f = monad::identity_functor(&data);
            let report = monad::check_tensor_functor(&f, tol).map_err(|e| e.to_string())?;
            text(cli, format!("{report}"));
            Ok(Outcome { pass: report.pass(), report: serde_json::to_value(&report).unwrap() })
        }
        Command::CheckHopfMonad { from_hopf, trivial_action } => {
            let data = match (from_hopf, trivial_action) {
                (Some(name), None) => {
                    let h = hopf::builtin_hopf(name).map_err(|e| e.to_string())?;
                    monad::from_hopf_algebra(&h).map_err(|e| e.to_string())?
                }
                (None, Some(spec)) => {
                    let (n, key) = spec
                        .split_once(':')
                        .ok_or_else(|| "expected n:skel-key".to_string())?;
                    let n: u32 = n.parse().map_err(|_| "bad group order".to_string())?;
                    let key = skel::SkelKey::parse(key).map_err(|e| e.to_string())?;
                    let skel_data = skel::builtin_skeletal(&key).map_err(|e| e.to_string())?;
                    let group = skelcat::groups::FiniteGroup::cyclic(n);
                    let action = vec![(0..skel_data.rank()).collect::<Vec<_>>(); n as usize];
                    monad::from_group_action(&skel_data, &group, &action)
                        .map_err(|e| e.to_string())?
                }
                _ => return Err("pass exactly one of --from-hopf or --trivial-action".into()),
            };
            let report = monad::check_hopf_monad(&data, tol).map_err(|e| e.to_string())?;
            text(cli, format!("{report}"));
            let mut doc = serde_json::to_value(&report).unwrap();
            if let Value::Object(map) = &mut doc {
                map.insert("monad".into(), wire::monad_to_json(&data));
            }
            Ok(Outcome { pass: report.pass(), report: doc })
        }
        Command::VerifyHopf { builtin } => {
            let h = hopf::builtin_hopf(builtin).map_err(|e| e.to_string())?;
            let report = hopf::check_hopf_axioms(&h, tol).map_err(|e| e.to_string())?;
            let order = hopf::antipode_order(&h, 64, 1e-7);
            let integral = hopf::find_integral(&h, tol).map_err(|e| e.to_string())?;
            let flags = hopf::structure_flags(&h, tol).map_err(|e| e.to_string())?;
            text(cli, format!("{report}"));
            text(cli, format!("antipode order: {:?}", order));
            text(
                cli,
                format!(
                    "integral: {:?} with counit value {:.6} (semisimple: {})",
                    integral.vector, integral.counit_value.re, integral.semisimple
                ),
            );
            text(cli, format!("commutative: {}, cocommutative: {}", flags.commutative, flags.cocommutative));
            let doc = json!({
                "axioms": serde_json::to_value(&report).unwrap(),
                "antipode_order": order,
                "semisimple": integral.semisimple,
                "commutative": flags.commutative,
                "cocommutative": flags.cocommutative,
                "structure": wire::hopf_to_json(&h),
            });
            Ok(Outcome { pass: report.pass(), report: doc })
        }
        Command::SolveHopf { p, generator, max_iterations } => {
            let alg = hopf::one_plus_vec_zp_algebra(*p);
            let config = solver::SolverConfig {
                restarts: cli.run.restarts,
                seed: cli.run.seed,
                max_iterations: *max_iterations,
                generator_power: if *generator { Some(*p) } else { None },
                ..Default::default()
            };
            let out = solver::solve_hopf_structures(&alg, &config).map_err(|e| e.to_string())?;
            let converged = out.log.iter().filter(|l| l.converged).count();
            text(
                cli,
                format!(
                    "orbits found: {} ({} of {} restarts converged)",
                    out.orbits.len(),
                    converged,
                    cli.run.restarts
                ),
            );
            for (i, orbit) in out.orbits.iter().enumerate() {
                text(
                    cli,
                    format!(
                        "  orbit {}: antipode order {:?}, {} hits",
                        i, orbit.fingerprint.antipode_order, orbit.hits
                    ),
                );
            }
            if out.orbits.is_empty() {
                text(
                    cli,
                    format!(
                        "no Hopf structure found after {} restarts (search outcome, not a proof)",
                        cli.run.restarts
                    ),
                );
            }
            let doc = json!({
                "orbits": out.orbits.iter().map(|o| json!({
                    "fingerprint": serde_json::to_value(&o.fingerprint).unwrap(),
                    "hits": o.hits,
                    "structure": wire::hopf_to_json(&o.representative),
                })).collect::<Vec<_>>(),
                "log": serde_json::to_value(&out.log).unwrap(),
            });
            Ok(Outcome { pass: true, report: doc })
        }
        Command::Modules { builtin } => {
            let h = hopf::builtin_hopf(builtin).map_err(|e| e.to_string())?;
            let irr = modules::irreducible_modules(&h, cli.run.seed).map_err(|e| e.to_string())?;
            let ring = modules::module_fusion_ring(&h, &irr).map_err(|e| e.to_string())?;
            let reg = modules::regular_decomposition(&h, &irr).map_err(|e| e.to_string())?;
            let ambient = h.ambient();
            for (i, m) in irr.iter().enumerate() {
                text(
                    cli,
                    format!("M{i}: underlying object {}", ambient.ring.format_object(&m.object)),
                );
            }
            text(cli, format!("module fusion ring labels: {:?}", ring.labels));
            for a in 0..ring.rank() {
                for b in 0..ring.rank() {
                    let obj = ObjectVector(ring.n[a][b].clone());
                    text(cli, format!("  M{a} x M{b} = {}", ring.format_object(&obj)));
                }
            }
            text(cli, format!("regular module decomposes with multiplicities {reg:?}"));
            let valid = validate_fusion_ring(&ring, tol).map_err(|e| e.to_string())?;
            let doc = json!({
                "irreducible_objects": irr
                    .iter()
                    .map(|m| wire::object_to_json(&ambient.ring, &m.object))
                    .collect::<Vec<_>>(),
                "fusion_ring": wire::fusion_ring_to_json(&ring),
                "regular_decomposition": reg,
            });
            Ok(Outcome { pass: valid.pass(), report: doc })
        }
        Command::Condense { catalog: cat, algebra } => {
            let key = CatalogKey::parse(cat).map_err(|e| e.to_string())?;
            let ring = catalog::builtin_ring(&key).map_err(|e| e.to_string())?;
            let twists = catalog::builtin_twists(&key);
            let algebra_obj = ring.parse_object(algebra).map_err(|e| e.to_string())?;
            let input = cond::BraidedInput::new(ring, twists).map_err(|e| e.to_string())?;
            let screen = cond::check_condensable(&input, &algebra_obj);
            text(cli, format!("condensable screen: {screen}"));
            if !screen.pass() {
                return Ok(Outcome {
                    pass: false,
                    report: serde_json::to_value(&screen).unwrap(),
                });
            }
            let res = cond::condense(&input, &algebra_obj).map_err(|e| e.to_string())?;
            text(cli, format!("condensed rank: {}", res.condensed.rank()));
            for (c, row) in res.d.iter().enumerate() {
                let img: Vec<String> = input
                    .ring
                    .labels
                    .iter()
                    .zip(row)
                    .filter(|(_, &m)| m > 0)
                    .map(|(l, &m)| if m == 1 { l.clone() } else { format!("{m}{l}") })
                    .collect();
                text(cli, format!("  E({}) = {}", res.condensed.labels[c], img.join("+")));
            }
            if let Some(confined) = &res.confined {
                let names: Vec<&str> = res
                    .condensed
                    .labels
                    .iter()
                    .zip(confined)
                    .filter(|(_, &c)| c)
                    .map(|(l, _)| l.as_str())
                    .collect();
                text(cli, format!("confined simples: {names:?}"));
            }
            let (t, shape) = cond::comonad_object_map(&res);
            match &shape {
                cond::ComonadShape::Tensor { w } => {
                    text(cli, format!("T = ({}) ⊗ -", res.condensed.format_object(w)));
                }
                cond::ComonadShape::Blocks { blocks } => {
                    for (members, w) in blocks {
                        let names: Vec<&str> =
                            members.iter().map(|&c| res.condensed.labels[c].as_str()).collect();
                        text(
                            cli,
                            format!("T acts by ({}) ⊗ - on {names:?}", res.condensed.format_object(w)),
                        );
                    }
                }
                cond::ComonadShape::Irregular => text(cli, "T has no tensor block form"),
            }
            let doc = json!({
                "condensed": wire::fusion_ring_to_json(&res.condensed),
                "D": res.d,
                "E": res.e,
                "T": t,
                "confined": res.confined,
                "fusion_solutions": res.fusion_solutions,
                "comonad_shape": serde_json::to_value(&shape).unwrap(),
            });
            Ok(Outcome { pass: true, report: doc })
        }
        Command::BimoduleProduct { left, right, table, dz2 } => {
            let labels = abelian::z2_bimodule_labels();
            let find = |name: &str| -> Result<abelian::ModuleCatLabel, String> {
                labels
                    .iter()
                    .find(|(n, _)| n == name)
                    .map(|(_, l)| l.clone())
                    .ok_or_else(|| format!("unknown label {name}; use M2, M1,1, M1,2, M4, M2,1, M2,2"))
            };
            let mut doc = serde_json::Map::new();
            if *table {
                let mut grid = Vec::new();
                text(cli, format!("{:8}{}", "", labels.iter().map(|(n, _)| format!("{n:>8}")).collect::<String>()));
                for (ln, ll) in &labels {
                    let mut row = Vec::new();
                    let mut cells = String::new();
                    for (_, rl) in &labels {
                        let prod = abelian::bimodule_tensor(ll, rl, 1).map_err(|e| e.to_string())?;
                        let name = abelian::identify_z2_label(&prod.label)
                            .unwrap_or_else(|| "?".to_string());
                        let cell = if prod.multiplicity == 1 {
                            name.clone()
                        } else {
                            format!("{}{}", prod.multiplicity, name)
                        };
                        cells.push_str(&format!("{cell:>8}"));
                        row.push(json!({"multiplicity": prod.multiplicity, "label": name}));
                    }
                    text(cli, format!("{ln:8}{cells}"));
                    grid.push(Value::Array(row));
                }
                doc.insert("table".into(), Value::Array(grid));
            }
            if let (Some(l), Some(r)) = (left, right) {
                let prod = abelian::bimodule_tensor(&find(l)?, &find(r)?, 1).map_err(|e| e.to_string())?;
                let name = abelian::identify_z2_label(&prod.label).unwrap_or_else(|| "?".into());
                text(cli, format!("{l} x {r} = {}·{name}", prod.multiplicity));
                doc.insert(
                    "product".into(),
                    json!({"multiplicity": prod.multiplicity, "label": name}),
                );
            }
            if *dz2 {
                let out = abelian::dz2_bimodule_products().map_err(|e| e.to_string())?;
                text(
                    cli,
                    format!(
                        "D(Z2) module (0 x Z2): M ⊠ M = {}·M (same label: {})",
                        out.second_axis.0, out.second_axis.1
                    ),
                );
                text(
                    cli,
                    format!(
                        "D(Z2) module (Z2 x 0): M ⊠ M has multiplicity {} on (Z2x0, Z2x0)",
                        out.first_axis.0
                    ),
                );
                doc.insert("dz2".into(), serde_json::to_value(&out).map_err(|e| e.to_string())?);
            }
            Ok(Outcome { pass: true, report: Value::Object(doc) })
        }
        Command::SimpleCheck { class } => {
            let class = pointed::PointedClass::parse(class).map_err(|e| e.to_string())?;
            let form = pointed::build_pointed(&class).map_err(|e| e.to_string())?;
            let nondeg = form.is_nondegenerate();
            text(cli, format!("nondegenerate: {nondeg}"));
            let cond_subs = pointed::condensable_subgroups(&form);
            text(cli, format!("condensable subgroups: {}", cond_subs.len()));
            let (prime, factors) = pointed::is_prime_pointed(&form).map_err(|e| e.to_string())?;
            text(cli, format!("prime: {prime}"));
            let (simple, witness) = pointed::is_simple(&form).map_err(|e| e.to_string())?;
            text(cli, format!("simple: {simple}"));
            if let Some(w) = &witness {
                text(cli, format!("witness: {w:?}"));
            }
            let doc = json!({
                "nondegenerate": nondeg,
                "condensable_subgroups": cond_subs.len(),
                "prime": prime,
                "factors": factors.map(|(h1, h2)| json!([h1.elements, h2.elements])),
                "simple": simple,
                "witness": witness.map(|w| serde_json::to_value(&w).unwrap()),
            });
            Ok(Outcome { pass: true, report: doc })
        }
        Command::Su2k { k } => {
            let report = pointed::su2k_report(*k);
            text(
                cli,
                format!(
                    "su(2)_{k}: condensable 0+k: {}, splits: {}, simple: {}",
                    report.condensable_0k, report.splits, report.simple
                ),
            );
            Ok(Outcome { pass: true, report: serde_json::to_value(&report).unwrap() })
        }
        Command::Catalog => {
            text(cli, "fusion ring catalog keys:");
            for name in CatalogKey::all_names() {
                text(cli, format!("  {name}"));
            }
            text(cli, "skeletal data keys: VecZ(n), VecG(n1,...), Fib, DZn(n), Pointed(class)");
            text(cli, "built-in Hopf algebras: 2+e, 1+VecZ3, 2+tau");
            Ok(Outcome {
                pass: true,
                report: json!({
                    "rings": CatalogKey::all_names(),
                    "skeletal": ["VecZ(n)", "VecG(n1,...)", "Fib", "DZn(n)", "Pointed(class)"],
                    "hopf": ["2+e", "1+VecZ3", "2+tau"],
                }),
            })
        }
    }
}
