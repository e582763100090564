use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use invariant_orders::extension::{
    extend_step, invariant_linear_extension, invariant_linear_preorder_extension, leq_g,
    leq_g_witness, powerset_preorder, strong_invariance_violation, ExtensionError,
};
use invariant_orders::io::{
    parse_action_capped, parse_cone, parse_relation_capped, to_json, BoundedSearchJson, GordanJson,
    IoError, MembershipJson, RelationJson, WeightOrderJson,
};
use invariant_orders::lattice::{
    separating_extension, weight_extension, ConeError, ConeOrder, GordanCertificate,
    MembershipCertificate,
};
use invariant_orders::relation::{Relation, RelationError, DEFAULT_RELATION_CAP};
use invariant_orders::{PermAction, Universe};

/// Largest relation the tool itself emits (the powerset of 5 points).
const EMITTED_RELATION_CAP: usize = 32;

#[derive(Parser)]
#[command(
    name = "invord",
    version,
    about = "Invariant order extension under abelian group actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RelationOut {
    /// Print only the one-line chain summary.
    #[arg(long, conflicts_with = "dot")]
    summary: bool,
    /// Print the Hasse diagram as DOT.
    #[arg(long)]
    dot: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a relation and, given an action, check its invariance.
    Check {
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        action: Option<PathBuf>,
    },
    /// Orbits of the action and the finite-orbit condition.
    Orbits {
        #[arg(long)]
        action: PathBuf,
    },
    /// Orbit equivalence ~G, or a single pair.
    Simg {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        pair: Option<String>,
        #[command(flatten)]
        out: RelationOut,
    },
    /// The invariant preorder ≤G, or a single pair with its witness.
    Leqg {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        pair: Option<String>,
        #[command(flatten)]
        out: RelationOut,
    },
    /// Invariant linear extension of a partial order, or one extension step.
    ExtendLinear {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        relation: PathBuf,
        #[arg(long)]
        pair: Option<String>,
        #[command(flatten)]
        out: RelationOut,
    },
    /// Invariant linear preorder extending a preorder.
    ExtendPreorder {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        relation: PathBuf,
        #[command(flatten)]
        out: RelationOut,
    },
    /// Invariant linear preorder on subsets extending inclusion.
    PowersetOrder {
        #[arg(long)]
        action: PathBuf,
        #[command(flatten)]
        out: RelationOut,
    },
    /// Check `x ≤ y ⇔ g·x ≤ y` for all group elements.
    StrongInvariance {
        #[arg(long)]
        action: PathBuf,
        #[arg(long)]
        relation: PathBuf,
    },
    /// Pointedness of a cone order, with its certificate.
    ConeCheck {
        #[arg(long)]
        cone: PathBuf,
    },
    /// Rational cone membership of a vector, optionally with a bounded
    /// integer search.
    ConeMember {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
        #[arg(long)]
        bound: Option<u64>,
    },
    /// A weight-matrix linear order extending the cone order.
    ConeExtend {
        #[arg(long)]
        cone: PathBuf,
    },
    /// A weight-matrix linear order extending the cone order with x < y.
    ConeSeparate {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Hasse diagram of a relation as DOT.
    ExportDot {
        #[arg(long)]
        relation: PathBuf,
    },
}

enum Failure {
    /// A mathematical precondition failed; the value carries the witness.
    Math(String, Value),
    Input(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_action(path: &Path) -> Result<PermAction, Failure> {
    Ok(parse_action_capped(&read(path)?, DEFAULT_RELATION_CAP)?)
}

fn load_relation(path: &Path, cap: usize) -> Result<Relation, Failure> {
    Ok(parse_relation_capped(&read(path)?, cap)?)
}

fn load_cone(path: &Path) -> Result<ConeOrder, Failure> {
    Ok(parse_cone(&read(path)?)?)
}

fn same_universe(a: &PermAction, r: &Relation) -> Result<(), Failure> {
    if a.universe().size() == r.size() {
        Ok(())
    } else {
        Err(Failure::Input(
            RelationError::UniverseMismatch {
                left: a.universe().size(),
                right: r.size(),
            }
            .to_string(),
        ))
    }
}

fn index(u: &Universe, token: &str) -> Result<usize, Failure> {
    let token = token.trim();
    let i = match token.parse::<usize>() {
        Ok(i) => i,
        Err(_) => u
            .labels()
            .iter()
            .position(|l| l == token)
            .ok_or_else(|| Failure::Input(format!("unknown element {token:?}")))?,
    };
    if i < u.size() {
        Ok(i)
    } else {
        Err(Failure::Input(format!("element {i} out of range")))
    }
}

fn parse_pair(u: &Universe, s: &str) -> Result<(usize, usize), Failure> {
    match s.split_once(',') {
        Some((a, b)) => Ok((index(u, a)?, index(u, b)?)),
        None => Err(Failure::Input(format!("expected x,y, got {s:?}"))),
    }
}

fn parse_vector(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::Input(format!("malformed integer {t:?} in {s:?}")))
        })
        .collect()
}

fn element_json(a: &PermAction, g: usize) -> Value {
    let e = a.element(g);
    json!({
        "index": g,
        "word": e.word.iter().map(|&i| a.generators()[i].name.clone()).collect::<Vec<_>>(),
        "map": e.perm.as_slice(),
    })
}

fn relation_output(r: &Relation, out: &RelationOut) -> Outcome {
    if out.summary {
        Ok(format!("{}\n", r.summary()))
    } else if out.dot {
        r.to_dot().map_err(|e| Failure::Input(e.to_string()))
    } else {
        Ok(to_json(&RelationJson::from_relation(r).with_summary(r)))
    }
}

fn extension_failure(a: &PermAction, e: ExtensionError) -> Failure {
    let message = e.to_string();
    let witness = match &e {
        ExtensionError::NotInvariant(v) => json!({
            "error": "NotInvariant",
            "generator": a.generators()[v.generator].name,
            "pair": [v.x, v.y],
        }),
        ExtensionError::Inadmissible { x, y, witness } => json!({
            "error": "Inadmissible",
            "pair": [x, y],
            "reverse": [witness.x, witness.y],
            "elements": witness.elements.iter().map(|&g| element_json(a, g)).collect::<Vec<_>>(),
        }),
        ExtensionError::OrbitCondition(w) => json!({
            "error": "OrbitCondition",
            "element": element_json(a, w.element),
            "orbit": w.orbit,
        }),
        ExtensionError::NonAbelian => json!({ "error": "NonAbelian" }),
        ExtensionError::Relation(r) => json!({ "error": "Relation", "message": r.to_string() }),
        ExtensionError::Action(r) => json!({ "error": "Action", "message": r.to_string() }),
    };
    Failure::Math(message, witness)
}

fn cone_failure(e: ConeError) -> Failure {
    let message = e.to_string();
    match e {
        ConeError::NotPointed(l) => Failure::Math(
            message,
            serde_json::to_value(GordanJson::from(&GordanCertificate::ZeroCombo(l))).unwrap(),
        ),
        ConeError::NotSeparable(q) => Failure::Math(
            message,
            serde_json::to_value(MembershipJson::from(&MembershipCertificate::Combo(q))).unwrap(),
        ),
        _ => Failure::Input(message),
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Check { relation, action } => {
            let r = load_relation(&relation, EMITTED_RELATION_CAP)?;
            let class = r.classify();
            let mut report = json!({
                "kind": class.kind().name(),
                "kinds": class.kinds().iter().map(|k| k.name()).collect::<Vec<_>>(),
                "reflexive": class.reflexive,
                "symmetric": class.symmetric,
                "antisymmetric": class.antisymmetric,
                "transitive": class.transitive,
                "total": class.total,
            });
            if let Some(path) = action {
                let a = load_action(&path)?;
                same_universe(&a, &r)?;
                let v = r
                    .invariance_violation(&a)
                    .map_err(|e| Failure::Input(e.to_string()))?;
                report["invariant"] = json!(v.is_none());
                if let Some(v) = v {
                    report["violation"] = json!({
                        "generator": a.generators()[v.generator].name,
                        "pair": [v.x, v.y],
                    });
                    return Err(Failure::Math("relation is not invariant".into(), report));
                }
            }
            Ok(to_json(&report))
        }
        Command::Orbits { action } => {
            let a = load_action(&action)?;
            let witness = a.finite_orbit_witness();
            let mut report = json!({
                "groupOrder": a.order(),
                "abelian": a.is_abelian(),
                "orbits": a.orbits().classes(),
                "orbitCondition": witness.is_none(),
            });
            if let Some(w) = witness {
                report["witness"] = json!({
                    "element": element_json(&a, w.element),
                    "orbit": w.orbit,
                });
            }
            Ok(to_json(&report))
        }
        Command::Simg { action, pair, out } => {
            let a = load_action(&action)?;
            let sim = a.sim_g();
            match pair {
                Some(p) => {
                    let (x, y) = parse_pair(a.universe(), &p)?;
                    Ok(to_json(
                        &json!({ "pair": [x, y], "related": sim.contains(x, y) }),
                    ))
                }
                None => relation_output(&sim, &out),
            }
        }
        Command::Leqg {
            action,
            relation,
            pair,
            out,
        } => {
            let a = load_action(&action)?;
            let r = load_relation(&relation, DEFAULT_RELATION_CAP)?;
            same_universe(&a, &r)?;
            match pair {
                Some(p) => {
                    let (x, y) = parse_pair(a.universe(), &p)?;
                    let w = leq_g_witness(&a, &r, x, y).map_err(|e| extension_failure(&a, e))?;
                    let mut report = json!({ "pair": [x, y], "related": w.is_some() });
                    if let Some(w) = w {
                        report["elements"] = json!(w
                            .elements
                            .iter()
                            .map(|&g| element_json(&a, g))
                            .collect::<Vec<_>>());
                    }
                    Ok(to_json(&report))
                }
                None => {
                    let g = leq_g(&a, &r).map_err(|e| extension_failure(&a, e))?;
                    relation_output(&g, &out)
                }
            }
        }
        Command::ExtendLinear {
            action,
            relation,
            pair,
            out,
        } => {
            let a = load_action(&action)?;
            let r = load_relation(&relation, DEFAULT_RELATION_CAP)?;
            same_universe(&a, &r)?;
            let result = match pair {
                Some(p) => {
                    let (x, y) = parse_pair(a.universe(), &p)?;
                    extend_step(&a, &r, x, y)
                }
                None => invariant_linear_extension(&a, &r),
            };
            relation_output(&result.map_err(|e| extension_failure(&a, e))?, &out)
        }
        Command::ExtendPreorder {
            action,
            relation,
            out,
        } => {
            let a = load_action(&action)?;
            let r = load_relation(&relation, DEFAULT_RELATION_CAP)?;
            same_universe(&a, &r)?;
            let ext = invariant_linear_preorder_extension(&a, &r)
                .map_err(|e| extension_failure(&a, e))?;
            relation_output(&ext.relation, &out)
        }
        Command::PowersetOrder { action, out } => {
            let a = load_action(&action)?;
            let p = powerset_preorder(&a).map_err(|e| match e {
                ExtensionError::Action(inner) => Failure::Input(inner.to_string()),
                other => extension_failure(&a, other),
            })?;
            relation_output(&p.relation, &out)
        }
        Command::StrongInvariance { action, relation } => {
            let a = load_action(&action)?;
            let r = load_relation(&relation, DEFAULT_RELATION_CAP)?;
            same_universe(&a, &r)?;
            let v = strong_invariance_violation(&r, &a).map_err(|e| extension_failure(&a, e))?;
            match v {
                None => Ok(to_json(&json!({ "stronglyInvariant": true }))),
                Some(v) => Err(Failure::Math(
                    "relation is not strongly invariant".into(),
                    json!({
                        "stronglyInvariant": false,
                        "element": element_json(&a, v.element),
                        "pair": [v.x, v.y],
                    }),
                )),
            }
        }
        Command::ConeCheck { cone } => {
            let c = load_cone(&cone)?;
            let cert = c.gordan_certificate();
            let body = to_json(&GordanJson::from(&cert));
            if cert.is_positive() {
                Ok(body)
            } else {
                Err(Failure::Math(
                    "cone order is not antisymmetric".into(),
                    serde_json::to_value(GordanJson::from(&cert)).unwrap(),
                ))
            }
        }
        Command::ConeMember {
            cone,
            vector,
            bound,
        } => {
            let c = load_cone(&cone)?;
            let d = parse_vector(&vector)?;
            let cert = c.member(&d).map_err(cone_failure)?;
            let mut report = json!({
                "vector": d,
                "member": cert.is_member(),
                "certificate": serde_json::to_value(MembershipJson::from(&cert)).unwrap(),
            });
            if let Some(b) = bound {
                let found = c.monoid_member_bounded(&d, b).map_err(cone_failure)?;
                report["bounded"] = serde_json::to_value(BoundedSearchJson::from(&found)).unwrap();
            }
            Ok(to_json(&report))
        }
        Command::ConeExtend { cone } => {
            let c = load_cone(&cone)?;
            let w = weight_extension(&c).map_err(cone_failure)?;
            Ok(to_json(&WeightOrderJson::from(&w)))
        }
        Command::ConeSeparate { cone, x, y } => {
            let c = load_cone(&cone)?;
            let (x, y) = (parse_vector(&x)?, parse_vector(&y)?);
            let w = separating_extension(&c, &x, &y).map_err(cone_failure)?;
            Ok(to_json(&WeightOrderJson::from(&w)))
        }
        Command::ExportDot { relation } => {
            let r = load_relation(&relation, EMITTED_RELATION_CAP)?;
            r.to_dot()
                .map_err(|e| Failure::Math(e.to_string(), json!({ "error": "NotPreorder" })))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Math(message, witness)) => {
            print!("{}", to_json(&witness));
            eprintln!("invord: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Input(message)) => {
            eprintln!("invord: {message}");
            ExitCode::from(2)
        }
    }
}
