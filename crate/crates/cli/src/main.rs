use clap::{Parser, Subcommand};
use endofix::classify::{
    classify, cohopf_demo, enumerate_types, hopfian_demo, witness, WitnessAvailability,
};
use endofix::prodgrp::{
    brute_force_fix, fix, fix_type2, infer_fix_phi, AmbientSpec, Endomorphism, FixPhi,
    FixReport, SubgroupType,
};
use endofix::text::{
    format_endo_file, format_vector, parse_ambient, parse_basis, parse_element, parse_endo_file,
    EndoEntry, EndoFile,
};
use endofix::{Error, Result};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Endomorphisms and fixed subgroups of F_n x Z^m and surface x Z^m.
#[derive(Parser)]
#[command(name = "endofix", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Apply an endomorphism to an element such as "(x1 x2, [0])".
    Apply {
        file: PathBuf,
        element: String,
        #[arg(long)]
        name: Option<String>,
    },
    /// Compute the fixed subgroup.
    Fix {
        file: PathBuf,
        /// File listing a basis of the fixed subgroup of the base map.
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long)]
        name: Option<String>,
    },
    /// Print mono / epi / auto verdicts.
    Check {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Print the inverse automorphism as an endomorphism file.
    Invert {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Classify a subgroup type, e.g. `classify "free n=2 m=1" F4`.
    Classify { group: String, subgroup: String },
    /// Classify every type up to the given bounds.
    Enumerate {
        group: String,
        #[arg(long, default_value_t = 4)]
        rank: u64,
        #[arg(long, default_value_t = 0)]
        genus: u64,
        #[arg(long)]
        infinite: bool,
    },
    /// Print an endomorphism file realizing the type as a fixed subgroup.
    Witness { group: String, subgroup: String },
    /// Hopfian and co-Hopfian demonstrations.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
    /// Exhaustively list fixed elements up to word length and exponent bound.
    Oracle {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        len: usize,
        #[arg(long, default_value_t = 1)]
        abel: i64,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// Random endomorphisms: every epimorphism must be injective.
    Hopfian {
        #[arg(long, default_value = "free n=2 m=2")]
        group: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// A proper self-embedding of F_n x Z.
    Cohopf {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::MissingData(format!("{}: {}", path.display(), e)))
}

fn load(path: &Path) -> Result<EndoFile> {
    parse_endo_file(&read(path)?)
}

fn verdict_word(v: endofix::Verdict3) -> String {
    v.to_string()
}

fn report_lines(report: &FixReport) -> String {
    let mut out = String::new();
    match &report.index {
        Some(idx) => writeln!(out, "type={} s={} index={}", report.subgroup, report.s, idx),
        None => writeln!(out, "type={} s={}", report.subgroup, report.s),
    }
    .unwrap();
    if let Some(b) = report.p_basis() {
        for w in b {
            writeln!(out, "basis {}", w).unwrap();
        }
    }
    for a in &report.central_basis {
        writeln!(out, "central {}", format_vector(a)).unwrap();
    }
    for ca in &report.solution_basis {
        writeln!(out, "solution (c,a) {}", format_vector(ca)).unwrap();
    }
    out
}

fn cmd_fix(file: &EndoFile, entry: &EndoEntry, basis: Option<&Path>) -> Result<String> {
    let amb = &file.ambient;
    let report = match &entry.endo {
        Endomorphism::Type1(e) => {
            let fix_phi = match basis {
                Some(p) => FixPhi::Basis(parse_basis(&read(p)?, amb.base_rank())?),
                None => match &entry.fix_phi {
                    Some(f) => f.clone(),
                    None => infer_fix_phi(amb, e.phi()).ok_or_else(|| {
                        Error::MissingData(
                            "fixed subgroup of phi unknown: add 'fixphi = ..' or --basis".into(),
                        )
                    })?,
                },
            };
            fix(amb, e, &fix_phi)?
        }
        Endomorphism::Type2(e) => fix_type2(amb, e)?,
        Endomorphism::Composite(_) => {
            return Err(Error::InvalidEndomorphism("composite endomorphism".into()))
        }
    };
    Ok(report_lines(&report))
}

fn run(cli: Cli) -> Result<String> {
    match cli.cmd {
        Cmd::Apply {
            file,
            element,
            name,
        } => {
            let f = load(&file)?;
            let e = parse_element(&element, &f.ambient)?;
            let img = f.entry(name.as_deref())?.endo.apply(&f.ambient, &e)?;
            Ok(format!("{}\n", img))
        }
        Cmd::Fix { file, basis, name } => {
            let f = load(&file)?;
            cmd_fix(&f, f.entry(name.as_deref())?, basis.as_deref())
        }
        Cmd::Check { file, name } => {
            let f = load(&file)?;
            let e = &f.entry(name.as_deref())?.endo;
            let amb = &f.ambient;
            Ok(format!(
                "mono={} epi={} auto={}\n",
                verdict_word(e.is_mono(amb)),
                verdict_word(e.is_epi(amb)),
                verdict_word(e.is_auto(amb))
            ))
        }
        Cmd::Invert { file, name } => {
            let f = load(&file)?;
            let entry = f.entry(name.as_deref())?;
            let inv = entry.endo.invert(&f.ambient)?;
            format_endo_file(&EndoFile {
                ambient: f.ambient.clone(),
                entries: vec![EndoEntry {
                    name: entry.name.as_ref().map(|n| format!("{}_inv", n)),
                    endo: inv,
                    fix_phi: None,
                }],
            })
        }
        Cmd::Classify { group, subgroup } => {
            let amb = parse_ambient(&group)?;
            let t: SubgroupType = subgroup.parse()?;
            Ok(format!("{}\n", classify(&amb, &t)?))
        }
        Cmd::Enumerate {
            group,
            rank,
            genus,
            infinite,
        } => {
            let amb = parse_ambient(&group)?;
            let mut out = String::new();
            for t in enumerate_types(&amb, rank, genus, infinite) {
                writeln!(out, "{}", classify(&amb, &t)?).unwrap();
            }
            Ok(out)
        }
        Cmd::Witness { group, subgroup } => {
            let amb = parse_ambient(&group)?;
            let t: SubgroupType = subgroup.parse()?;
            match witness(&amb, &t)? {
                Some(r) => {
                    let body = format_endo_file(&EndoFile {
                        ambient: amb,
                        entries: vec![EndoEntry {
                            name: None,
                            endo: r.endo,
                            fix_phi: r.fix_phi,
                        }],
                    })?;
                    Ok(format!("# expected {}: {}\n{}", r.expected, r.provenance, body))
                }
                None => {
                    let v = classify(&amb, &t)?;
                    debug_assert_eq!(v.witness, WitnessAvailability::Cited);
                    Ok(format!("# {}: realized by a construction not reproduced here\n", t))
                }
            }
        }
        Cmd::Demo {
            which: Demo::Hopfian {
                group,
                trials,
                seed,
            },
        } => {
            let amb = parse_ambient(&group)?;
            let r = hopfian_demo(&amb, trials, seed);
            Ok(format!(
                "trials={} epi={} mono={} epi_unknown={} inverted={} violations={}\n",
                r.trials, r.epi, r.mono, r.epi_unknown, r.inverted, r.violations
            ))
        }
        Cmd::Demo {
            which: Demo::Cohopf { n },
        } => {
            let amb = AmbientSpec::free(n, 1);
            let c = cohopf_demo(&amb)?;
            let yn = |b: bool| if b { "yes" } else { "no" };
            let body = format_endo_file(&EndoFile {
                ambient: amb,
                entries: vec![EndoEntry {
                    name: None,
                    endo: Endomorphism::Type1(c.endo.clone()),
                    fix_phi: None,
                }],
            })?;
            Ok(format!(
                "image_rank={} mono={} x2_in_image={} proper={}\n{}",
                c.image_rank,
                c.mono,
                yn(c.x2_in_image),
                yn(c.is_proper_embedding()),
                body
            ))
        }
        Cmd::Oracle {
            file,
            len,
            abel,
            name,
        } => {
            let f = load(&file)?;
            let e = &f.entry(name.as_deref())?.endo;
            let fixed = brute_force_fix(&f.ambient, e, len, abel)?;
            let mut out = format!("count={}\n", fixed.len());
            for x in fixed {
                writeln!(out, "{}", x).unwrap();
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
