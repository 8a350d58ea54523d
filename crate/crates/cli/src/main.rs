//! `schur`: command-line front end for schur-core.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use schur_core::constructions::{
    build_family_with, classify_4p, cyclotomic, subdirect_product, subdirect_target,
    tensor_product, wreath_product, FamilyDescriptor, Twist,
};
use schur_core::isomorphism::{
    algebraic_isos, aut_sring, catalog, cayley_isos, combinatorial_isos,
    find_inducing_isomorphism_fast, separability_check, AlgebraicIso,
};
use schur_core::sring::schur_closure;
use schur_core::verify::{paper_verify, VerifyConfig};
use schur_core::wl::{cayley_graph, wl2_refine, wl_dimension_experiment};
use schur_core::{AbelianGroup, ElementSet, Error, GroupMorphism, GroupRingVector, SRing};

use output::{strip_timings, Out};

#[derive(Parser, Debug)]
#[command(name = "schur", version, about = "Schur rings over finite abelian groups")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (0 = one per core). Never changes the output.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// All S-rings over a group up to Cayley isomorphism.
    Enumerate {
        group: String,
        /// Write one interchange file per S-ring into this directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Load and validate an S-ring file (`-` for stdin).
    Validate {
        file: PathBuf,
        /// Also print the nonzero structure constants.
        #[arg(long)]
        constants: bool,
    },
    /// Schur closure of a set of seeds.
    Closure {
        group: String,
        /// Seed set as comma-separated element indices; repeatable.
        #[arg(long = "set")]
        sets: Vec<String>,
        /// Seed vector as comma-separated coefficients, one per element; repeatable.
        #[arg(long = "vector")]
        vectors: Vec<String>,
    },
    /// S-ring constructions.
    #[command(subcommand)]
    Product(Product),
    /// Isomorphisms between two S-rings.
    #[command(subcommand)]
    Iso(Iso),
    /// Order (and, when small, members) of Aut(A).
    Aut { file: PathBuf },
    /// Separability of every S-ring over a group, or of one S-ring.
    Separability {
        group: Option<String>,
        #[arg(long, conflicts_with = "group")]
        sring: Option<PathBuf>,
    },
    /// Case of an S-ring over a group of order 4p.
    Classify { file: PathBuf },
    /// 2-dimensional Weisfeiler-Leman refinement.
    #[command(subcommand)]
    Wl(Wl),
    /// Run the verification battery.
    PaperVerify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum Product {
    /// A1 ⊗ A2.
    Tensor { a1: PathBuf, a2: PathBuf },
    /// A_L ≀ A_{G/L}; A_L over the presentation of L, A_Q over that of G/L.
    Wreath {
        #[arg(long)]
        group: String,
        /// Elements of L.
        #[arg(long)]
        subgroup: String,
        a_l: PathBuf,
        a_q: PathBuf,
    },
    /// cyc(K, G) for K generated by the given automorphisms.
    Cyclotomic {
        group: String,
        /// Images of the canonical generators; repeatable.
        #[arg(long = "aut")]
        auts: Vec<String>,
    },
    /// A(C_u, C_v, ψ) with ψ(1) = 1 + W scaled by `psi`.
    Subdirect {
        #[arg(long)]
        u: u32,
        #[arg(long)]
        v: u32,
        /// ψ maps the generator of C_u to the coset of this element of C_v.
        #[arg(long, default_value_t = 1)]
        psi: usize,
    },
    /// A family S-ring, e.g. `family:i=1,p=7,k=3`.
    Family {
        descriptor: String,
        /// Glue with ξ (σ^j -> θ^-j) instead of ψ.
        #[arg(long)]
        xi: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Iso {
    Algebraic {
        a: PathBuf,
        b: PathBuf,
        /// Stop after this many (0 = all).
        #[arg(long, default_value_t = 0)]
        limit: usize,
    },
    Cayley { a: PathBuf, b: PathBuf },
    Combinatorial {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 0)]
        limit: usize,
    },
    /// Search a combinatorial isomorphism inducing the class map `phi`.
    Induce {
        a: PathBuf,
        b: PathBuf,
        /// Class-index images, comma-separated.
        #[arg(long)]
        phi: String,
    },
}

#[derive(Subcommand, Debug)]
enum Wl {
    /// Stable colouring of Cay(G, X).
    Refine {
        group: String,
        /// Connection set.
        #[arg(long = "set", default_value = "")]
        set: String,
    },
    /// Does 2-WL separate all non-isomorphic Cayley graphs of order n?
    Experiment {
        #[arg(long)]
        order: usize,
        /// All connection sets, not only inverse-closed ones.
        #[arg(long)]
        directed: bool,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [2u32, 3, 5, 7])]
    primes: Vec<u32>,
    /// Check keys to skip, e.g. `wl`.
    #[arg(long, value_delimiter = ',')]
    skip: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1000)]
    instances: usize,
}

/// Outcome of a command: exit 0, or 1 for a found property violation.
enum Verdict {
    Ok,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = Out::new(cli.format);
    match run(cli.command, &mut out) {
        Ok(Verdict::Ok) => ExitCode::SUCCESS,
        Ok(Verdict::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(
            Error::InvariantViolation(_)
            | Error::NotPartition(_)
            | Error::MissingIdentityClass
            | Error::NotInverseClosed { .. }
            | Error::ClosureViolated { .. }
            | Error::ClassificationGap(_),
        ) => 1,
        _ => 2,
    }
}

fn parse_group(s: &str) -> anyhow::Result<AbelianGroup> {
    Ok(s.parse::<AbelianGroup>()?)
}

fn parse_list(s: &str) -> anyhow::Result<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().with_context(|| format!("bad integer `{t}`")))
        .collect()
}

fn parse_indices(s: &str, bound: usize) -> anyhow::Result<Vec<usize>> {
    parse_list(s)?
        .into_iter()
        .map(|x| {
            if x < 0 || x as usize >= bound {
                bail!(Error::Usage(format!("index {x} is out of range 0..{bound}")))
            }
            Ok(x as usize)
        })
        .collect()
}

fn parse_set(g: &AbelianGroup, s: &str) -> anyhow::Result<ElementSet> {
    Ok(parse_indices(s, g.order())?.into_iter().collect())
}

fn load(path: &Path) -> anyhow::Result<SRing> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(Error::from)?
    } else {
        std::fs::read_to_string(path)
            .map_err(Error::from)
            .with_context(|| format!("reading {}", path.display()))?
    };
    Ok(SRing::from_json(&text)?)
}

fn run(command: Command, out: &mut Out) -> anyhow::Result<Verdict> {
    match command {
        Command::Enumerate { group, out: dir } => {
            let g = parse_group(&group)?;
            let all = catalog(&g)?;
            if let Some(dir) = &dir {
                std::fs::create_dir_all(dir).map_err(Error::from)?;
            }
            for (i, a) in all.iter().enumerate() {
                if let Some(dir) = &dir {
                    let path = dir.join(format!("sring_{i:03}.json"));
                    std::fs::write(&path, a.to_json() + "\n").map_err(Error::from)?;
                }
                out.sring_line(i, a);
            }
            out.line(&format!("count={}", all.len()));
        }
        Command::Validate { file, constants } => {
            let a = load(&file)?;
            out.value(
                &json!({
                    "valid": true,
                    "group": a.group().to_string(),
                    "rank": a.rank(),
                    "classes": a.class_lists(),
                }),
                &format!("valid: rank {} over {}", a.rank(), a.group()),
            );
            if constants {
                let cs: Vec<_> = a.constants().nonzero().collect();
                let text = cs
                    .iter()
                    .map(|(i, j, k, c)| format!("c[{i},{j}->{k}] = {c}"))
                    .collect::<Vec<_>>()
                    .join("\n");
                out.value(&json!({ "constants": cs }), &text);
            }
        }
        Command::Closure {
            group,
            sets,
            vectors,
        } => {
            let g = parse_group(&group)?;
            let mut seeds = Vec::new();
            for s in &sets {
                seeds.push(GroupRingVector::indicator(g.order(), parse_set(&g, s)?));
            }
            for v in &vectors {
                let coeffs = parse_list(v)?;
                if coeffs.len() != g.order() {
                    bail!(Error::Usage(format!(
                        "a vector needs {} coefficients, got {}",
                        g.order(),
                        coeffs.len()
                    )));
                }
                seeds.push(GroupRingVector { coeffs });
            }
            out.sring(&schur_closure(&g, &seeds));
        }
        Command::Product(p) => product(p, out)?,
        Command::Iso(i) => return iso(i, out),
        Command::Aut { file } => {
            let a = load(&file)?;
            let aut = aut_sring(&a)?;
            let members = aut
                .members
                .as_ref()
                .map(|m| m.iter().map(|f| f.map.clone()).collect::<Vec<_>>());
            out.value(
                &json!({ "order": aut.order.to_string(), "members": members }),
                &format!("|Aut(A)| = {}", aut.order),
            );
        }
        Command::Separability { group, sring } => {
            let subjects: Vec<SRing> = match (group, sring) {
                (_, Some(path)) => vec![load(&path)?],
                (Some(g), None) => catalog(&parse_group(&g)?)?.to_vec(),
                (None, None) => bail!(Error::Usage("give a group or --sring FILE".into())),
            };
            let reports = subjects
                .par_iter()
                .map(separability_check)
                .collect::<Result<Vec<_>, _>>()?;
            let mut separable = true;
            for r in &reports {
                let bad: Vec<_> = r.counterexamples().collect();
                separable &= bad.is_empty();
                let mut v = serde_json::to_value(r).expect("serializable");
                strip_timings(&mut v);
                let mut text = format!(
                    "{:?}: {} algebraic isomorphisms, {}",
                    r.subject.classes,
                    r.entries.len(),
                    if bad.is_empty() { "all induced" } else { "NOT separable" }
                );
                for e in bad {
                    text += &format!(
                        "\n  counterexample: target {} #{} φ = {:?}",
                        e.target_group, e.target_index, e.phi
                    );
                }
                out.value(&v, &text);
            }
            out.line(&format!(
                "separable={} srings={}",
                separable,
                reports.len()
            ));
            if !separable {
                return Ok(Verdict::Violation);
            }
        }
        Command::Classify { file } => {
            let a = load(&file)?;
            let case = classify_4p(&a)?;
            out.value(&serde_json::to_value(&case).expect("serializable"), &case.to_string());
        }
        Command::Wl(Wl::Refine { group, set }) => {
            let g = parse_group(&group)?;
            let x = parse_set(&g, &set)?;
            let s = wl2_refine(&cayley_graph(&g, x)?);
            out.value(
                &json!({
                    "rounds": s.rounds,
                    "colors": s.coloring.num_colors(),
                    "histogram": s.histogram(),
                }),
                &format!(
                    "{} colours after {} rounds; histogram {:?}",
                    s.coloring.num_colors(),
                    s.rounds,
                    s.histogram()
                ),
            );
        }
        Command::Wl(Wl::Experiment { order, directed }) => {
            let r = wl_dimension_experiment(order, !directed)?;
            let mut v = serde_json::to_value(&r).expect("serializable");
            strip_timings(&mut v);
            out.value(
                &v,
                &format!(
                    "order {} ({}): groups {:?}, graphs {}, pairs {}, 2-WL classes {}, isomorphism classes {}, failures {}",
                    r.order,
                    if r.directed { "directed" } else { "undirected" },
                    r.groups,
                    r.graph_count,
                    r.pair_count,
                    r.wl_classes,
                    r.iso_classes,
                    r.wl_indistinguishable_nonisomorphic.len()
                ),
            );
            if !r.passed() {
                return Ok(Verdict::Violation);
            }
        }
        Command::PaperVerify(args) => {
            let cfg = VerifyConfig {
                primes: args.primes,
                skip: args.skip,
                seed: args.seed,
                uniq_instances: args.instances,
            };
            let checks = paper_verify(&cfg)?;
            for c in &checks {
                out.value(&serde_json::to_value(c).expect("serializable"), &c.to_string());
            }
            if !schur_core::verify::all_passed(&checks) {
                return Ok(Verdict::Violation);
            }
        }
    }
    Ok(Verdict::Ok)
}

fn product(p: Product, out: &mut Out) -> anyhow::Result<()> {
    match p {
        Product::Tensor { a1, a2 } => out.sring(&tensor_product(&load(&a1)?, &load(&a2)?)?),
        Product::Wreath {
            group,
            subgroup,
            a_l,
            a_q,
        } => {
            let g = parse_group(&group)?;
            let l = g.subgroup(parse_set(&g, &subgroup)?)?;
            out.sring(&wreath_product(&load(&a_l)?, &load(&a_q)?, &g, &l)?);
        }
        Product::Cyclotomic { group, auts } => {
            let g = parse_group(&group)?;
            let gens = auts
                .iter()
                .map(|s| {
                    let imgs = parse_indices(s, g.order())?;
                    Ok(GroupMorphism::new(&g, &g, &imgs)?)
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            out.sring(&cyclotomic(&generated(&g, &gens)?, &g)?);
        }
        Product::Subdirect { u, v, psi } => {
            let (cu, cv) = (AbelianGroup::cyclic(u)?, AbelianGroup::cyclic(v)?);
            let target = subdirect_target(&cv, u as usize)?;
            let image = target
                .project(psi % cv.order())
                .expect("the target section is all of V");
            let hom = GroupMorphism::new(&cu, &target.quotient, &[image])?;
            let pairs = subdirect_product(&cu, &cv, &hom)?;
            out.value(
                &json!({ "order": pairs.len(), "pairs": pairs }),
                &format!("|A(C{u}, C{v}, ψ)| = {}\n{:?}", pairs.len(), pairs),
            );
        }
        Product::Family { descriptor, xi } => {
            let d: FamilyDescriptor = descriptor.parse()?;
            let twist = if xi { Twist::Xi } else { Twist::Psi };
            out.sring(&build_family_with(&d, twist)?);
        }
    }
    Ok(())
}

/// Closure of a set of automorphisms under composition.
fn generated(g: &AbelianGroup, gens: &[GroupMorphism]) -> anyhow::Result<Vec<GroupMorphism>> {
    let mut all = vec![GroupMorphism::identity(g)];
    let mut i = 0;
    while i < all.len() {
        for s in gens {
            let next = all[i].then(s)?;
            if !all.iter().any(|f| f.table == next.table) {
                all.push(next);
            }
        }
        i += 1;
    }
    Ok(all)
}

fn iso(i: Iso, out: &mut Out) -> anyhow::Result<Verdict> {
    match i {
        Iso::Algebraic { a, b, limit } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let mut isos = algebraic_isos(&a, &b);
            if limit > 0 {
                isos.truncate(limit);
            }
            out.maps(isos.iter().map(|p| &p.map), "algebraic isomorphisms");
        }
        Iso::Cayley { a, b } => {
            let isos = cayley_isos(&load(&a)?, &load(&b)?)?;
            out.maps(isos.iter().map(|f| &f.map), "Cayley isomorphisms");
        }
        Iso::Combinatorial { a, b, limit } => {
            let isos = combinatorial_isos(&load(&a)?, &load(&b)?, limit);
            out.maps(isos.iter().map(|f| &f.map), "combinatorial isomorphisms with f(e) = e");
        }
        Iso::Induce { a, b, phi } => {
            let (a, b) = (load(&a)?, load(&b)?);
            let map = parse_indices(&phi, a.rank())?;
            let phi = AlgebraicIso::new(a.into(), b.into(), map)
                .map_err(|e| Error::Usage(format!("--phi is not an algebraic isomorphism: {e}")))?;
            let f = find_inducing_isomorphism_fast(&phi)?;
            let text = match &f {
                Some(f) => format!("induced by {:?}", f.map),
                None => "not induced by any combinatorial isomorphism".into(),
            };
            out.value(&json!({ "inducing": f.as_ref().map(|f| &f.map) }), &text);
            if f.is_none() {
                return Ok(Verdict::Violation);
            }
        }
    }
    Ok(Verdict::Ok)
}
