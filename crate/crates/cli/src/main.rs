//! Batch JSON front end: every decision procedure of the library as a
//! subcommand. Output is a single JSON envelope on stdout with sorted keys,
//! byte-stable across runs.
//!
//! Exit codes: 0 computed; 1 a yes/no query answered "no"/"none" under
//! `--assert`; 2 invalid input; 3 internal consistency failure.

use std::io::Read as _;
use std::process::exit;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use birwedge::abelian::{dual, FinGenAbGroup};
use birwedge::classify::{
    birationally_equivalent, class_lower_bound_semidirect, count_classes, katsylo_fails,
    monomial_witness, product_counterexample, semidirect_counterexample,
    semidirect_counterexample_sufficient, RepSpec,
};
use birwedge::error::Error;
use birwedge::exterior::{class_of, is_generator, replay, synthesize_elem_ops, wedge};
use birwedge::json as bj;
use birwedge::matrix::{pfaffian_congruence_check, snf};
use birwedge::qtorus::{
    brauer_equivalent, commutator_form, default_prime, heisenberg, k_isomorphic, span_check,
    wedge_criterion,
};
use birwedge::selftest::run_selftest;
use birwedge::symplectic::{det_mod_n1, is_symplectic, preserves_form, SymplecticSpace};

#[derive(Parser)]
#[command(name = "birwedge", version, about = "Exact birational classification arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Exit 1 when a yes/no decision answers "no" or a search finds nothing.
    #[arg(long, global = true)]
    assert: bool,

    /// Also write the JSON envelope to this file.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct GroupArg {
    /// Group as JSON, e.g. '{"factors":[2,4]}'.
    #[arg(long)]
    group: String,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form of an integer matrix.
    Snf {
        /// Matrix as a JSON array of rows; read from stdin when omitted.
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Wedge of a character tuple, its sign class, and generator status.
    Wedge {
        #[command(flatten)]
        group: GroupArg,
        /// Tuple as JSON, e.g. '[{"coords":[1,0]},{"coords":[0,1]}]'.
        #[arg(long)]
        tuple: String,
    },
    /// Synthesize elementary operations carrying one generating tuple to another.
    Elemops {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Unimodular witness matrix for tuples with wedges equal up to sign.
    GlzWitness {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Check form preservation and the determinant congruence on a standard
    /// symplectic space.
    SymplecticCheck {
        /// Base group A0 as JSON; the space is A0 x A0* with the standard form.
        #[arg(long)]
        base: String,
        /// Candidate matrix acting by row images on the interleaved generators.
        #[arg(long)]
        matrix: String,
    },
    /// Decide birational equivalence of two faithful representations.
    ClassifyEquiv {
        #[command(flatten)]
        group: GroupArg,
        /// First character tuple.
        #[arg(long)]
        chars_v: String,
        /// Second character tuple.
        #[arg(long)]
        chars_w: String,
    },
    /// Count birational equivalence classes and list representatives.
    ClassifyCount {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        dim: usize,
    },
    /// The failure predicate for equal-dimensional linear representations.
    Katsylo {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Search for twist exponents violating the +-1 product condition.
    Counterexample {
        /// Single modulus (semidirect search); pairs with --r.
        #[arg(long, conflicts_with = "chain")]
        n: Option<u64>,
        /// Exponent for the single-modulus search.
        #[arg(long, requires = "n")]
        r: Option<u32>,
        /// Comma-separated moduli chain for the product search.
        #[arg(long, requires = "powers")]
        chain: Option<String>,
        /// Comma-separated exponents matching --chain.
        #[arg(long)]
        powers: Option<String>,
        /// Rank of an extra torus factor (validated only).
        #[arg(long, default_value_t = 0)]
        torus_rank: usize,
    },
    /// Quantum-torus verdicts: k-isomorphism, Brauer equivalence, wedge criterion.
    Qtorus {
        /// Comma-separated degrees, e.g. 2,4.
        #[arg(long)]
        degrees: String,
        /// Comma-separated exponents, e.g. 1,3.
        #[arg(long)]
        exponents: String,
    },
    /// Heisenberg representation over a prime field: span and commutator form.
    Heisenberg {
        /// Finite base group A as JSON.
        #[arg(long)]
        base: String,
        /// Prime p with p = 1 (mod exp A); smallest admissible when omitted.
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Run the exhaustive oracle suites at bounded sizes.
    Selftest {
        /// Rough ceiling on enumeration sizes.
        #[arg(long, default_value_t = 64)]
        bound: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    let (envelope, code) = match execute(&cli.command, cli.assert) {
        Ok((input, result, statement, verdict)) => {
            let code = match verdict {
                Some(false) if cli.assert => 1,
                _ => 0,
            };
            (
                bj::object(vec![
                    ("schema", json!(1)),
                    ("command", json!(command_name(&cli.command))),
                    ("input", input),
                    ("result", result),
                    ("provenance", json!({ "statement": statement })),
                ]),
                code,
            )
        }
        Err(e) => {
            let code = match e {
                Error::Internal(_) => 3,
                _ => 2,
            };
            (
                bj::object(vec![
                    ("schema", json!(1)),
                    ("command", json!(command_name(&cli.command))),
                    ("error", json!(e.to_string())),
                ]),
                code,
            )
        }
    };
    let text = serde_json::to_string(&envelope).expect("serializable envelope");
    println!("{text}");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            exit(2);
        }
    }
    exit(code);
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Snf { .. } => "snf",
        Command::Wedge { .. } => "wedge",
        Command::Elemops { .. } => "elemops",
        Command::GlzWitness { .. } => "glz-witness",
        Command::SymplecticCheck { .. } => "symplectic-check",
        Command::ClassifyEquiv { .. } => "classify-equiv",
        Command::ClassifyCount { .. } => "classify-count",
        Command::Katsylo { .. } => "katsylo",
        Command::Counterexample { .. } => "counterexample",
        Command::Qtorus { .. } => "qtorus",
        Command::Heisenberg { .. } => "heisenberg",
        Command::Selftest { .. } => "selftest",
    }
}

fn parse_json(s: &str) -> Result<Value, Error> {
    serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("malformed JSON: {e}")))
}

fn parse_int_list(s: &str) -> Result<Vec<BigInt>, Error> {
    s.split(',')
        .map(|p| {
            BigInt::from_str(p.trim())
                .map_err(|_| Error::InvalidInput(format!("not an integer: {p:?}")))
        })
        .collect()
}

fn parse_group(s: &str) -> Result<FinGenAbGroup, Error> {
    bj::value_to_group(&parse_json(s)?)
}

fn parse_tuple(
    s: &str,
    g: &FinGenAbGroup,
) -> Result<Vec<birwedge::abelian::GroupElement>, Error> {
    bj::value_to_char_tuple(&parse_json(s)?, g)
}

type Outcome = (Value, Value, &'static str, Option<bool>);

fn execute(cmd: &Command, _assert: bool) -> Result<Outcome, Error> {
    match cmd {
        Command::Snf { matrix } => {
            let text = match matrix {
                Some(s) => s.clone(),
                None => {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {e}")))?;
                    buf
                }
            };
            let m = bj::value_to_matrix(&parse_json(&text)?)?;
            let result = snf(&m);
            Ok((
                bj::object(vec![("matrix", bj::matrix_to_value(&m))]),
                bj::snf_to_value(&result),
                "e.fg-abel",
                None,
            ))
        }
        Command::Wedge { group, tuple } => {
            let g = parse_group(&group.group)?;
            let t = parse_tuple(tuple, &g)?;
            let w = wedge(&t)?;
            let class = class_of(&w);
            Ok((
                bj::object(vec![
                    ("group", bj::group_to_value(&g)),
                    ("tuple", bj::char_tuple_to_value(&t)),
                ]),
                bj::object(vec![
                    ("wedge", bj::wedge_to_value(&w)),
                    ("class", bj::wedge_to_value(class.representative())),
                    ("is_generator", json!(is_generator(&w))),
                ]),
                "lem.wedge-cyclic",
                None,
            ))
        }
        Command::Elemops { group, from, to } => {
            let g = parse_group(&group.group)?;
            let a = parse_tuple(from, &g)?;
            let b = parse_tuple(to, &g)?;
            let input = bj::object(vec![
                ("group", bj::group_to_value(&g)),
                ("from", bj::char_tuple_to_value(&a)),
                ("to", bj::char_tuple_to_value(&b)),
            ]);
            match synthesize_elem_ops(&a, &b) {
                Ok(ops) => {
                    let replay_ok = replay(&ops, &a)? == b;
                    if !replay_ok {
                        return Err(Error::Internal("replay check failed".into()));
                    }
                    Ok((
                        input,
                        bj::object(vec![
                            ("synthesizable", json!(true)),
                            (
                                "ops",
                                Value::Array(ops.iter().map(bj::elem_op_to_value).collect()),
                            ),
                            ("replay_ok", json!(true)),
                        ]),
                        "lem.elem-ops",
                        Some(true),
                    ))
                }
                Err(Error::WedgeMismatch(why)) => Ok((
                    input,
                    bj::object(vec![
                        ("synthesizable", json!(false)),
                        ("reason", json!(why)),
                    ]),
                    "lem.elem-ops",
                    Some(false),
                )),
                Err(e) => Err(e),
            }
        }
        Command::GlzWitness { group, from, to } => {
            let g = parse_group(&group.group)?;
            let a = parse_tuple(from, &g)?;
            let b = parse_tuple(to, &g)?;
            let input = bj::object(vec![
                ("group", bj::group_to_value(&g)),
                ("from", bj::char_tuple_to_value(&a)),
                ("to", bj::char_tuple_to_value(&b)),
            ]);
            match birwedge::exterior::glz_witness(&a, &b) {
                Ok(n) => Ok((
                    input,
                    bj::object(vec![
                        ("equivalent", json!(true)),
                        ("witness", bj::matrix_to_value(&n)),
                    ]),
                    "cor.gl-d",
                    Some(true),
                )),
                Err(Error::WedgeMismatch(why)) => Ok((
                    input,
                    bj::object(vec![
                        ("equivalent", json!(false)),
                        ("reason", json!(why)),
                    ]),
                    "cor.gl-d",
                    Some(false),
                )),
                Err(e) => Err(e),
            }
        }
        Command::SymplecticCheck { base, matrix } => {
            let base = parse_group(base)?;
            let c = bj::value_to_matrix(&parse_json(matrix)?)?;
            let s = SymplecticSpace::standard(&base)?;
            let preserved = preserves_form(&c, &s)?;
            let input = bj::object(vec![
                ("base", bj::group_to_value(&base)),
                ("matrix", bj::matrix_to_value(&c)),
            ]);
            let mut fields = vec![
                ("symplectic", json!(is_symplectic(s.form())?)),
                ("preserves_form", json!(preserved)),
            ];
            if preserved {
                fields.push(("det_mod_n1", bj::bigint_to_value(&det_mod_n1(&c, &s)?)));
                if !base.factors().is_empty() {
                    let pf = pfaffian_congruence_check(&c, base.factors())?;
                    fields.push(("pfaffian_route", bj::bigint_to_value(&pf)));
                }
            }
            Ok((
                input,
                bj::object(fields),
                "lem.sympl-det",
                Some(preserved),
            ))
        }
        Command::ClassifyEquiv { group, chars_v, chars_w } => {
            let g = parse_group(&group.group)?;
            let gd = dual(&g);
            let v = RepSpec::new(g.clone(), parse_tuple(chars_v, &gd)?)?;
            let w = RepSpec::new(g.clone(), parse_tuple(chars_w, &gd)?)?;
            let eq = birationally_equivalent(&v, &w)?;
            let input = bj::object(vec![
                ("group", bj::group_to_value(&g)),
                ("chars_v", bj::char_tuple_to_value(v.chars())),
                ("chars_w", bj::char_tuple_to_value(w.chars())),
            ]);
            let mut fields = vec![("equivalent", json!(eq))];
            if eq {
                fields.push(("witness", bj::matrix_to_value(&monomial_witness(&v, &w)?)));
            }
            Ok((input, bj::object(fields), "thm6.1", Some(eq)))
        }
        Command::ClassifyCount { group, dim } => {
            let g = parse_group(&group.group)?;
            let cc = count_classes(&g, *dim)?;
            Ok((
                bj::object(vec![
                    ("group", bj::group_to_value(&g)),
                    ("dim", json!(dim)),
                ]),
                bj::object(vec![
                    ("count", bj::bigint_to_value(&cc.count)),
                    (
                        "representatives",
                        Value::Array(
                            cc.representatives
                                .iter()
                                .map(|t| bj::char_tuple_to_value(t))
                                .collect(),
                        ),
                    ),
                ]),
                "thm6.2",
                None,
            ))
        }
        Command::Katsylo { group } => {
            let g = parse_group(&group.group)?;
            let fails = katsylo_fails(&g);
            Ok((
                bj::object(vec![("group", bj::group_to_value(&g))]),
                bj::object(vec![("fails", json!(fails))]),
                "thm6.2",
                Some(fails),
            ))
        }
        Command::Counterexample { n, r, chain, powers, torus_rank } => match (n, chain) {
            (Some(n), _) => {
                let r = r.ok_or_else(|| Error::InvalidInput("--n requires --r".into()))?;
                let m = semidirect_counterexample(*n, r)?;
                let sufficient = semidirect_counterexample_sufficient(*n, r)?;
                let bound = class_lower_bound_semidirect(*n, r)?;
                let found = m.is_some();
                let mut fields = vec![("found", json!(found))];
                if let Some(m) = &m {
                    fields.push(("m", bj::bigint_to_value(m)));
                }
                fields.push(("sufficient_criterion", json!(sufficient)));
                fields.push(("class_lower_bound", bj::bigint_to_value(&bound)));
                Ok((
                    bj::object(vec![("n", json!(n)), ("r", json!(r))]),
                    bj::object(fields),
                    "prop8.1",
                    Some(found),
                ))
            }
            (None, Some(chain)) => {
                let powers = powers
                    .as_ref()
                    .ok_or_else(|| Error::InvalidInput("--chain requires --powers".into()))?;
                let ns = parse_int_list(chain)?;
                let rs = parse_int_list(powers)?;
                if ns.len() != rs.len() {
                    return Err(Error::InvalidInput(
                        "--chain and --powers must have the same length".into(),
                    ));
                }
                use num_bigint::Sign;
                let to_small = |b: &BigInt| -> Option<u64> {
                    match b.to_u64_digits() {
                        (Sign::Plus, digits) if digits.len() == 1 => Some(digits[0]),
                        _ => None,
                    }
                };
                let params: Vec<(u64, u32)> = ns
                    .iter()
                    .zip(&rs)
                    .map(|(n, r)| Some((to_small(n)?, u32::try_from(to_small(r)?).ok()?)))
                    .collect::<Option<_>>()
                    .ok_or_else(|| Error::InvalidInput("moduli and powers must be positive".into()))?;
                let ms = product_counterexample(&params, *torus_rank)?;
                let found = ms.is_some();
                let mut fields = vec![("found", json!(found))];
                if let Some(ms) = &ms {
                    fields.push((
                        "exponents",
                        Value::Array(ms.iter().map(bj::bigint_to_value).collect()),
                    ));
                }
                Ok((
                    bj::object(vec![
                        ("chain", json!(chain)),
                        ("powers", json!(powers)),
                        ("torus_rank", json!(torus_rank)),
                    ]),
                    bj::object(fields),
                    "rem8.2",
                    Some(found),
                ))
            }
            (None, None) => Err(Error::InvalidInput(
                "provide either --n/--r or --chain/--powers".into(),
            )),
        },
        Command::Qtorus { degrees, exponents } => {
            let spec = birwedge::qtorus::QuantumTorusSpec::new(
                parse_int_list(degrees)?,
                parse_int_list(exponents)?,
            )?;
            let k = k_isomorphic(&spec);
            Ok((
                bj::qtorus_spec_to_value(&spec),
                bj::object(vec![
                    ("k_isomorphic", json!(k)),
                    ("brauer", json!(brauer_equivalent(&spec))),
                    ("wedge_criterion", json!(wedge_criterion(&spec)?)),
                ]),
                "thm3",
                Some(k),
            ))
        }
        Command::Heisenberg { base, prime } => {
            let base = parse_group(base)?;
            let p = match prime {
                Some(p) => *p,
                None => default_prime(&base)?,
            };
            let h = heisenberg(&base, p)?;
            let form = commutator_form(&h)?;
            let span = span_check(&h);
            Ok((
                bj::object(vec![
                    ("base", bj::group_to_value(&base)),
                    ("prime", json!(p)),
                ]),
                bj::object(vec![
                    ("prime", json!(p)),
                    ("root", json!(h.root())),
                    ("span", json!(span)),
                    ("commutator_symplectic", json!(is_symplectic(&form)?)),
                    ("gram", bj::gram_to_value(form.gram())),
                ]),
                "lem.sympl-H",
                Some(span),
            ))
        }
        Command::Selftest { bound } => {
            let reports = run_selftest(*bound);
            let all_passed = reports.iter().all(|r| r.passed);
            let result = Value::Array(
                reports
                    .iter()
                    .map(|r| {
                        bj::object(vec![
                            ("suite", json!(r.name)),
                            ("passed", json!(r.passed)),
                            ("cases", json!(r.cases)),
                            ("detail", json!(r.detail)),
                        ])
                    })
                    .collect(),
            );
            if !all_passed {
                // surface the report, then signal internal failure
                let envelope = bj::object(vec![
                    ("schema", json!(1)),
                    ("command", json!("selftest")),
                    ("input", bj::object(vec![("bound", json!(bound))])),
                    ("result", result),
                    ("provenance", json!({"statement": "internal"})),
                ]);
                println!("{}", serde_json::to_string(&envelope).expect("serializable"));
                exit(3);
            }
            Ok((
                bj::object(vec![("bound", json!(bound))]),
                result,
                "internal",
                None,
            ))
        }
    }
}
