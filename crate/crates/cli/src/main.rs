//! `modbranch` command-line interface.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use modbranch::branching::{label_correspondence, socle_of_i_restriction, Label};
use modbranch::crystal::build_graph;
use modbranch::embeddings::{b_ap_membership, f_v, gamma, gamma_inverse};
use modbranch::fock::{self, enumerate_flotw, FockCrystal};
use modbranch::hall::{canonical_basis, HallAlgebra, HallElement};
use modbranch::hecke::{verify_bernstein, verify_example_6_2, verify_presentation};
use modbranch::multiseg_crystal::{self, crystal_graph_binf, Convention};
use modbranch::{
    ChargedMultiPartition, CrystalGraph, DimensionVector, Error, ErrorClass, Modulus, Multicharge,
    Multisegment, Result,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "modbranch",
    version,
    about = "Crystals, Hall algebras and Hecke algebra checks for the modular branching rule"
)]
struct Cli {
    /// The modulus e (order of the root of unity).
    #[arg(long, global = true, default_value_t = 3)]
    e: i64,
    /// Multicharge as comma-separated integers, e.g. 0,1.
    #[arg(long, global = true, default_value = "0")]
    charge: String,
    /// Rank bound (graphs) or exact rank (listings).
    #[arg(long, global = true, default_value_t = 3)]
    rank: usize,
    #[arg(long, global = true, default_value = "tail")]
    convention: Convention,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Crystal graph of B(infinity) on aperiodic multisegments up to --rank.
    BinfGraph,
    /// Uglov component of the empty multipartition in the Fock crystal of --charge.
    FockGraph,
    /// FLOTW multipartitions of rank --rank for --charge.
    FlotwList,
    /// Whether --input is a Kleshchev multipartition.
    KleshchevTest {
        #[arg(long)]
        input: String,
    },
    /// Whether --input lies in the Uglov component, and whether it is FLOTW.
    UglovTest {
        #[arg(long)]
        input: String,
    },
    /// Gamma from FLOTW to Kleshchev labels (or back with --inverse).
    GammaMap {
        #[arg(long)]
        input: String,
        #[arg(long)]
        inverse: bool,
    },
    /// The embedding f_v of a FLOTW multipartition.
    FvMap {
        #[arg(long)]
        input: String,
    },
    /// Whether a multisegment lies in f_v(Phi(v)), with its preimage.
    BapTest {
        #[arg(long)]
        input: String,
    },
    /// A product in the Hall algebra: the monomial --word, or u_left * u_right.
    HallProduct {
        /// Comma-separated colours, e.g. 0,1,2.
        #[arg(long, conflicts_with_all = ["left", "right"])]
        word: Option<String>,
        #[arg(long, requires = "right")]
        left: Option<String>,
        #[arg(long, requires = "left")]
        right: Option<String>,
    },
    /// Canonical basis of the weight space --weight (alpha-coefficients 0..e-1).
    CanonicalBasis {
        #[arg(long)]
        weight: String,
    },
    /// Relation checks for the polynomial representation of H_n.
    HeckeVerify {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Crystal prediction of the socle of i-restriction of D_psi.
    Branch {
        /// Multisegment label, in text or JSON form.
        #[arg(long)]
        label: String,
        /// Colour; all colours when omitted.
        #[arg(long)]
        i: Option<i64>,
    },
    /// The Kleshchev, FLOTW and multisegment labels of one simple module.
    Labels {
        #[arg(long, value_enum)]
        from: LabelKind,
        #[arg(long)]
        input: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LabelKind {
    Kleshchev,
    Flotw,
    Multisegment,
}

struct Ctx {
    e: Modulus,
    charge_text: String,
    rank: usize,
    conv: Convention,
    format: Format,
    seed: u64,
}

impl Ctx {
    fn charge(&self) -> Result<Multicharge> {
        Multicharge::new(parse_ints(&self.charge_text, "charge")?)
    }

    fn multipartition(&self, text: &str) -> Result<ChargedMultiPartition> {
        ChargedMultiPartition::parse(text, &self.charge()?)
    }

    fn no_dot(&self) -> Result<()> {
        if self.format == Format::Dot {
            return Err(Error::Invalid(
                "--format dot is only available for graph commands".into(),
            ));
        }
        Ok(())
    }
}

fn parse_ints(text: &str, what: &str) -> Result<Vec<i64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("{what}: `{s}` is not an integer")))
        })
        .collect()
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (k, c) in r.iter().enumerate() {
            widths[k] = widths[k].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (k, c) in cells.iter().enumerate() {
            if k + 1 == cells.len() {
                s.push_str(c);
            } else {
                let _ = write!(s, "{c}{}  ", " ".repeat(widths[k] - c.chars().count()));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn graph_output(g: &CrystalGraph, format: Format) -> String {
    match format {
        Format::Json => pretty(&g.to_json()),
        Format::Dot => g.to_dot(),
        Format::Table => g.to_table(),
    }
}

fn hall_rows(x: &HallElement) -> Vec<Vec<String>> {
    x.pbw_terms()
        .into_iter()
        .map(|(p, c)| vec![p.to_string(), c.to_string()])
        .collect()
}

fn run(cli: Cli) -> Result<String> {
    let ctx = Ctx {
        e: Modulus::new(cli.e)?,
        charge_text: cli.charge,
        rank: cli.rank,
        conv: cli.convention,
        format: cli.format,
        seed: cli.seed,
    };
    let e = ctx.e;
    match cli.command {
        Command::BinfGraph => Ok(graph_output(
            &crystal_graph_binf(e, ctx.conv, ctx.rank)?,
            ctx.format,
        )),
        Command::FockGraph => {
            let charge = ctx.charge()?;
            if ctx.rank > fock::MAX_ENUM_RANK {
                return Err(Error::BoundExceeded {
                    what: "rank",
                    got: ctx.rank,
                    limit: fock::MAX_ENUM_RANK,
                });
            }
            Ok(graph_output(
                &build_graph(&FockCrystal::new(e, charge), ctx.rank)?,
                ctx.format,
            ))
        }
        Command::FlotwList => {
            ctx.no_dot()?;
            let set = enumerate_flotw(e, &ctx.charge()?, ctx.rank)?;
            Ok(match ctx.format {
                Format::Json => pretty(&json!({
                    "charge": set.charge.values(),
                    "rank": set.rank,
                    "members": set.members.iter().map(ChargedMultiPartition::to_json).collect::<Vec<_>>(),
                })),
                _ => {
                    let mut out = format!(
                        "{} FLOTW multipartitions of rank {} for charge {}\n",
                        set.members.len(),
                        set.rank,
                        set.charge
                    );
                    for lam in &set.members {
                        let _ = writeln!(out, "{lam}");
                    }
                    out
                }
            })
        }
        Command::KleshchevTest { input } => {
            ctx.no_dot()?;
            let lam = ctx.multipartition(&input)?;
            let yes = fock::is_kleshchev(&lam, e);
            Ok(match ctx.format {
                Format::Json => pretty(&json!({"input": lam.to_json(), "kleshchev": yes})),
                _ => format!("{lam} kleshchev: {yes}\n"),
            })
        }
        Command::UglovTest { input } => {
            ctx.no_dot()?;
            let lam = ctx.multipartition(&input)?;
            let uglov = fock::is_uglov(&lam, e);
            let flotw = if lam.charge().is_normalized(e) {
                Some(fock::is_flotw(&lam, e)?)
            } else {
                None
            };
            Ok(match ctx.format {
                Format::Json => {
                    pretty(&json!({"input": lam.to_json(), "uglov": uglov, "flotw": flotw}))
                }
                _ => {
                    let f = flotw.map_or("n/a (charge not in V_l)".to_string(), |b| b.to_string());
                    format!("{lam} uglov: {uglov} flotw: {f}\n")
                }
            })
        }
        Command::GammaMap { input, inverse } => {
            ctx.no_dot()?;
            let lam = ctx.multipartition(&input)?;
            let (out, from, to) = if inverse {
                (gamma_inverse(&lam, e)?, "kleshchev", "flotw")
            } else {
                (gamma(&lam, e)?, "flotw", "kleshchev")
            };
            Ok(match ctx.format {
                Format::Json => pretty(&json!({from: lam.to_json(), to: out.to_json()})),
                _ => format!("{lam} -> {out}\n"),
            })
        }
        Command::FvMap { input } => {
            ctx.no_dot()?;
            let lam = ctx.multipartition(&input)?;
            let psi = f_v(&lam, e)?;
            Ok(match ctx.format {
                Format::Json => {
                    pretty(&json!({"input": lam.to_json(), "multisegment": psi.to_json()}))
                }
                _ => format!("{psi}\n"),
            })
        }
        Command::BapTest { input } => {
            ctx.no_dot()?;
            let psi = Multisegment::parse(e, &input)?;
            let pre = b_ap_membership(&psi, &ctx.charge()?, e)?;
            Ok(match ctx.format {
                Format::Json => pretty(&json!({
                    "multisegment": psi.to_json(),
                    "member": pre.is_some(),
                    "preimage": pre.as_ref().map(ChargedMultiPartition::to_json),
                })),
                _ => match pre {
                    Some(lam) => format!("{psi} member: true preimage: {lam}\n"),
                    None => format!("{psi} member: false\n"),
                },
            })
        }
        Command::HallProduct { word, left, right } => {
            ctx.no_dot()?;
            let alg = HallAlgebra::new(e);
            let (what, x) = match (word, left, right) {
                (Some(w), _, _) => {
                    let letters: Vec<_> = parse_ints(&w, "word")?
                        .into_iter()
                        .map(|i| e.residue(i))
                        .collect();
                    let name: String = letters.iter().map(|i| format!("f{i}")).collect();
                    (name, alg.monomial(&letters)?)
                }
                (None, Some(l), Some(r)) => {
                    let (l, r) = (Multisegment::parse(e, &l)?, Multisegment::parse(e, &r)?);
                    (
                        format!("u{l} u{r}"),
                        alg.product(&HallElement::basis(l), &HallElement::basis(r))?,
                    )
                }
                _ => {
                    return Err(Error::Invalid(
                        "give --word, or both --left and --right".into(),
                    ))
                }
            };
            if let Some(bad) = alg.validations().iter().find(|v| !v.passed()) {
                return Err(Error::Invariant(format!(
                    "Hall polynomial failed its held-out check: {bad:?}"
                )));
            }
            Ok(match ctx.format {
                Format::Json => pretty(&x.to_json()),
                _ => format!(
                    "{what} =\n{}",
                    table(&["multisegment", "coefficient"], &hall_rows(&x))
                ),
            })
        }
        Command::CanonicalBasis { weight } => {
            ctx.no_dot()?;
            let entries: Vec<u32> = parse_ints(&weight, "weight")?
                .into_iter()
                .map(|x| {
                    u32::try_from(x)
                        .map_err(|_| Error::Invalid(format!("weight entry {x} is negative")))
                })
                .collect::<Result<_>>()?;
            let alpha = DimensionVector::from_entries(e, entries)?;
            let basis = canonical_basis(&HallAlgebra::new(e), &alpha)?;
            Ok(match ctx.format {
                Format::Json => pretty(&Value::Array(
                    basis
                        .elements
                        .iter()
                        .map(|(psi, g)| {
                            json!({
                                "label": psi.to_json(),
                                "label_string": psi.to_string(),
                                "monomial": g.monomial_string(),
                                "expansion": g.element.to_json(),
                            })
                        })
                        .collect(),
                )),
                _ => {
                    let rows: Vec<Vec<String>> = basis
                        .elements
                        .iter()
                        .map(|(psi, g)| {
                            vec![psi.to_string(), g.monomial_string(), g.element.to_string()]
                        })
                        .collect();
                    table(&["label", "monomial", "PBW expansion"], &rows)
                }
            })
        }
        Command::HeckeVerify { n, trials } => {
            ctx.no_dot()?;
            let pres = verify_presentation(n, trials, ctx.seed)?;
            let bern = verify_bernstein(n, trials.min(50).max(1), ctx.seed)?;
            let mut rows = vec![
                (
                    "presentation",
                    pres.passed(),
                    pres.checks,
                    pres.failures.clone(),
                ),
                (
                    "bernstein",
                    bern.passed(),
                    bern.checks,
                    bern.failures.clone(),
                ),
            ];
            if e.get() == 3 {
                let ex = verify_example_6_2()?;
                let failures = ex
                    .checks
                    .iter()
                    .filter(|c| !c.passed())
                    .map(|c| format!("{}: expected {}, got {}", c.name, c.expected, c.got))
                    .collect();
                rows.push(("example e=3 n=2", ex.passed(), ex.checks.len(), failures));
            }
            let all = rows.iter().all(|r| r.1);
            let text = match ctx.format {
                Format::Json => pretty(&json!({
                    "n": n,
                    "seed": ctx.seed,
                    "passed": all,
                    "checks": rows.iter().map(|(name, ok, k, f)| json!({"name": name, "passed": ok, "checks": k, "failures": f})).collect::<Vec<_>>(),
                })),
                _ => {
                    let t: Vec<Vec<String>> = rows
                        .iter()
                        .map(|(name, ok, k, _)| {
                            vec![
                                name.to_string(),
                                k.to_string(),
                                if *ok { "pass" } else { "FAIL" }.into(),
                            ]
                        })
                        .collect();
                    let mut s = table(&["check", "count", "result"], &t);
                    for f in rows.iter().flat_map(|r| r.3.iter()) {
                        let _ = writeln!(s, "  {f}");
                    }
                    s
                }
            };
            if all {
                Ok(text)
            } else {
                print!("{text}");
                Err(Error::Invariant("relation check failed".into()))
            }
        }
        Command::Branch { label, i } => {
            ctx.no_dot()?;
            let psi = Multisegment::parse(e, &label)?;
            psi.require_aperiodic()?;
            let colours: Vec<_> = match i {
                Some(i) => vec![e.residue(i)],
                None => e.residues().collect(),
            };
            let mut rows = Vec::new();
            for c in colours {
                let soc = socle_of_i_restriction(&psi, c, ctx.conv)?;
                let eps = multiseg_crystal::epsilon(&psi, c, ctx.conv)?;
                rows.push((c, eps, soc));
            }
            Ok(match ctx.format {
                Format::Json => pretty(&json!({
                    "label": psi.to_json(),
                    "convention": ctx.conv.to_string(),
                    "kind": "crystal prediction",
                    "restrictions": rows.iter().map(|(c, eps, soc)| json!({
                        "i": c.value(),
                        "epsilon": eps,
                        "socle": soc.as_ref().map(Multisegment::to_json),
                    })).collect::<Vec<_>>(),
                })),
                _ => {
                    let t: Vec<Vec<String>> = rows
                        .iter()
                        .map(|(c, eps, soc)| {
                            let s = soc
                                .as_ref()
                                .map_or("0".to_string(), |m| format!("D{}", render(m, ctx.conv)));
                            vec![c.to_string(), eps.to_string(), s]
                        })
                        .collect();
                    format!(
                        "crystal prediction for D{} ({} convention)\n{}",
                        render(&psi, ctx.conv),
                        ctx.conv,
                        table(&["i", "epsilon", "socle of i-restriction"], &t)
                    )
                }
            })
        }
        Command::Labels { from, input } => {
            ctx.no_dot()?;
            let charge = ctx.charge()?;
            let label = match from {
                LabelKind::Kleshchev => Label::Kleshchev(ctx.multipartition(&input)?),
                LabelKind::Flotw => Label::Flotw(ctx.multipartition(&input)?),
                LabelKind::Multisegment => Label::Multisegment(Multisegment::parse(e, &input)?),
            };
            let t = label_correspondence(&label, &charge, e)?;
            Ok(match ctx.format {
                Format::Json => pretty(&t.to_json()),
                _ => format!("{t}\n"),
            })
        }
    }
}

fn render(psi: &Multisegment, conv: Convention) -> String {
    match conv {
        Convention::Head => psi.to_string(),
        Convention::Tail => psi.tail_string(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err.class() {
                ErrorClass::Domain => 1,
                ErrorClass::Resource => 2,
                ErrorClass::Internal => 3,
            })
        }
    }
}
