//! Command-line front end: validate, analyze, build, transform, glue,
//! enumerate and tabulate elliptic triangulations.
//!
//! Exit codes: 0 success, 2 validation failure, 3 domain error, 4 open or
//! unknown query.

use clap::{Parser, Subcommand, ValueEnum};
use elliptic_core::analysis::{classify, Signature};
use elliptic_core::builder::{self, Disc, TruncSpec};
use elliptic_core::enumerate;
use elliptic_core::formulas;
use elliptic_core::rewrites::{self, GlueMethod, RewriteKind};
use elliptic_core::surface::{parse_face_list, parse_face_list_raw, validate_faces, Surface};
use elliptic_core::{atlas, catalog, export};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "elliptic",
    about = "Elliptic triangulations of spheres and discs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format for read commands.
    #[arg(long, global = true, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a face-list file and report every invariant check.
    Validate { file: String },
    /// Classify a face-list file: signature, face numbers, boundary data.
    Analyze { file: String },
    /// Run a constructive builder.
    Build {
        #[command(subcommand)]
        what: BuildCmd,
    },
    /// Add or peel a belt.
    Belt {
        #[arg(value_parser = ["add", "peel"])]
        op: String,
        file: String,
        /// Number of belts when adding.
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Cut the corner at a boundary vertex of degree four.
    Corner {
        #[arg(value_parser = ["cut"])]
        op: String,
        file: String,
        #[arg(long)]
        at: u32,
    },
    /// Evaluate a closed-form count.
    Formula {
        #[arg(long)]
        name: String,
        /// Comma-separated integer parameters.
        #[arg(long)]
        params: String,
    },
    /// Apply a configuration rewrite.
    Rewrite {
        file: String,
        #[arg(long)]
        kind: String,
        /// Pin the site by its vertex tuple, comma separated.
        #[arg(long)]
        site: Option<String>,
        /// List the sites instead of rewriting.
        #[arg(long)]
        list: bool,
    },
    /// Face or edge fullering.
    Fuller {
        file: String,
        #[arg(long, value_parser = ["face", "edge"])]
        mode: String,
    },
    /// Glue two patches into a sphere.
    Glue {
        file1: String,
        file2: String,
        #[arg(long, value_parser = ["strip", "a", "b", "c"])]
        method: String,
        #[arg(long, default_value_t = 0)]
        belts: usize,
        /// Pin the boundary alignment: `offset` or `offset,r` for reflected.
        #[arg(long)]
        alignment: Option<String>,
    },
    /// Connected sum over a chosen triangle of each summand.
    Consum {
        #[arg(long)]
        t1: String,
        #[arg(long)]
        tri1: String,
        #[arg(long)]
        t2: String,
        #[arg(long)]
        tri2: String,
    },
    /// Fixture tables.
    Catalog {
        #[arg(value_parser = ["list", "show"])]
        op: String,
        id: Option<String>,
    },
    /// Exhaustive generation.
    Enumerate {
        #[command(subcommand)]
        what: EnumCmd,
    },
    /// Existence of a closed type.
    Exists {
        /// a3,a4,a5
        #[arg(long = "type")]
        type_tuple: String,
        #[arg(long)]
        n6: usize,
        #[arg(long, default_value_t = 9)]
        cap: usize,
    },
    /// The full existence table.
    Atlas {
        #[arg(long, default_value_t = 20)]
        max_n6: usize,
        #[arg(long, default_value_t = 9)]
        enum_cap: usize,
    },
    /// Convert a face-list file.
    Export {
        file: String,
        #[arg(long, value_parser = ["facelist", "json", "off"])]
        to: String,
    },
}

#[derive(Subcommand)]
enum BuildCmd {
    /// Three-corner patch: --h with optional --k/--l interior distances.
    P030 {
        #[arg(long)]
        h: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        l: usize,
    },
    /// Two-corner patch (degenerate for r = 0).
    P200 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
    /// Corner-truncated kinds 1..7.
    Trunc {
        #[arg(long = "type")]
        kind: usize,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        c1: Option<usize>,
        #[arg(long)]
        c2: Option<usize>,
        #[arg(long)]
        c3: Option<usize>,
        #[arg(long)]
        u: Option<usize>,
        #[arg(long)]
        v: Option<usize>,
    },
    /// Named family patch.
    Family {
        #[arg(long)]
        name: char,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        m: usize,
    },
}

#[derive(Subcommand)]
enum EnumCmd {
    Closed {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        elliptic: bool,
        #[arg(long, default_value_t = 10)]
        cap: usize,
        /// Cross-validate with the reference generator.
        #[arg(long)]
        naive: bool,
        /// Write each class as a face-list file plus a summary document.
        #[arg(long)]
        out: Option<String>,
    },
    Patches {
        #[arg(long)]
        b: usize,
        /// a3,a4,a5 filter.
        #[arg(long = "type")]
        type_tuple: Option<String>,
        #[arg(long)]
        max_f1: Option<usize>,
        #[arg(long, default_value_t = 9)]
        cap: usize,
        /// Write each class as a face-list file plus a summary document.
        #[arg(long)]
        out: Option<String>,
    },
}

/// One canonical face-list file per object plus a summary document.
fn write_archive(dir: &str, objects: &[Surface]) -> Result<(), String> {
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    let mut index = Vec::new();
    for (i, s) in objects.iter().enumerate() {
        let name = format!("{i:04}.tri");
        std::fs::write(
            std::path::Path::new(dir).join(&name),
            export::to_face_list(s),
        )
        .map_err(|e| e.to_string())?;
        let notation = classify(s).map(|sig| sig.notation()).unwrap_or_default();
        index.push(serde_json::json!({ "file": name, "signature": notation }));
    }
    std::fs::write(
        std::path::Path::new(dir).join("index.json"),
        serde_json::to_string_pretty(&serde_json::json!({ "objects": index })).unwrap() + "\n",
    )
    .map_err(|e| e.to_string())
}

fn read_surface(path: &str) -> Result<Surface, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    parse_face_list(&text).map_err(|e| e.to_string())
}

fn emit(surface: &Surface, format: Format) {
    match format {
        Format::Text => print!("{}", export::to_face_list(surface)),
        Format::Json => print!("{}", export::to_json(surface)),
    }
}

fn parse_tuple3(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| format!("bad tuple {s}")))
        .collect::<Result<_, _>>()?;
    if parts.len() != 3 {
        return Err(format!("expected a3,a4,a5, got {s}"));
    }
    Ok((parts[0], parts[1], parts[2]))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let format = cli.format;
    match cli.command {
        Command::Validate { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| e.to_string())?;
            let fl = parse_face_list_raw(&text).map_err(|e| e.to_string())?;
            let report = validate_faces(&fl);
            if format == Format::Json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!("kind: {}", report.kind);
                for c in &report.checks {
                    println!(
                        "{} {}{}",
                        if c.passed { "pass" } else { "FAIL" },
                        c.name,
                        if c.details.is_empty() {
                            String::new()
                        } else {
                            format!(" ({})", c.details)
                        }
                    );
                }
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Analyze { file } => {
            let surface = read_surface(&file)?;
            match classify(&surface) {
                Ok(sig) => {
                    if format == Format::Json {
                        print!("{}", export::to_json(&surface));
                    } else {
                        match sig {
                            Signature::Closed(c) => println!("{}", c.notation()),
                            Signature::Patch(p) => println!("{}", p.notation()),
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Build { what } => {
            let patch = match what {
                BuildCmd::P030 { h, k, l } => {
                    builder::build_030(h, k, l).map_err(|e| e.to_string())?
                }
                BuildCmd::P200 { k, r } => {
                    match builder::build_200(k, r).map_err(|e| e.to_string())? {
                        Disc::Proper(p) => p,
                        Disc::Graph { vertices, edges } => {
                            println!(
                                "degenerate core: path on {:?} with edges {:?}",
                                vertices, edges
                            );
                            return Ok(ExitCode::SUCCESS);
                        }
                        Disc::Points(pts) => {
                            println!("degenerate core: points {:?}", pts);
                            return Ok(ExitCode::SUCCESS);
                        }
                    }
                }
                BuildCmd::Trunc {
                    kind,
                    h,
                    k,
                    l,
                    c,
                    c1,
                    c2,
                    c3,
                    u,
                    v,
                } => {
                    let need = |x: Option<usize>, name: &str| {
                        x.ok_or(format!("--{name} required for this kind"))
                    };
                    let spec = match kind {
                        1 => TruncSpec::Kind1 {
                            h: need(h, "h")?,
                            c: need(c, "c")?,
                        },
                        2 => TruncSpec::Kind2 {
                            h: need(h, "h")?,
                            k: need(k, "k")?,
                            c: need(c, "c")?,
                        },
                        3 => TruncSpec::Kind3 {
                            h: need(h, "h")?,
                            k: need(k, "k")?,
                            l: need(l, "l")?,
                            c: need(c, "c")?,
                        },
                        4 => TruncSpec::Kind4 {
                            h: need(h, "h")?,
                            c1: need(c1, "c1")?,
                            c2: need(c2, "c2")?,
                        },
                        5 => TruncSpec::Kind5 {
                            h: need(h, "h")?,
                            k: need(k, "k")?,
                            c1: need(c1, "c1")?,
                            c2: need(c2, "c2")?,
                        },
                        6 => TruncSpec::Kind6 {
                            h: need(h, "h")?,
                            c1: need(c1, "c1")?,
                            c2: need(c2, "c2")?,
                            c3: need(c3, "c3")?,
                        },
                        7 => TruncSpec::Kind7 {
                            u: need(u, "u")?,
                            v: need(v, "v")?,
                        },
                        other => return Err(format!("unknown kind {other}")),
                    };
                    builder::truncate_type(spec).map_err(|e| e.to_string())?
                }
                BuildCmd::Family { name, k, m } => {
                    builder::family_patch(name, k, m).map_err(|e| e.to_string())?
                }
            };
            emit(&Surface::Patch(patch), format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Belt { op, file, count } => {
            let surface = read_surface(&file)?;
            let Surface::Patch(p) = surface else {
                return Err("belts apply to patches".to_string());
            };
            match op.as_str() {
                "add" => {
                    let out = builder::add_belts(&p, count).map_err(|e| e.to_string())?;
                    emit(&Surface::Patch(out), format);
                }
                _ => match builder::peel_belt(&p).map_err(|e| e.to_string())? {
                    Disc::Proper(out) => emit(&Surface::Patch(out), format),
                    Disc::Graph { vertices, edges } => {
                        println!("graph residue: {:?} / {:?}", vertices, edges)
                    }
                    Disc::Points(pts) => println!("point residue: {:?}", pts),
                },
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Corner { op: _, file, at } => {
            let surface = read_surface(&file)?;
            let Surface::Patch(p) = surface else {
                return Err("corner cutting applies to patches".to_string());
            };
            let out = builder::cut_corner(&p, at).map_err(|e| e.to_string())?;
            emit(&Surface::Patch(out), format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Formula { name, params } => {
            let ps: Vec<i64> = if params.is_empty() {
                Vec::new()
            } else {
                params
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| format!("bad parameter {x}")))
                    .collect::<Result<_, _>>()?
            };
            let need = |n: usize| -> Result<(), String> {
                if ps.len() == n {
                    Ok(())
                } else {
                    Err(format!("{name} takes {n} parameters"))
                }
            };
            let out: Result<String, formulas::FormulaDomainError> = match name.as_str() {
                "n030" => {
                    need(3)?;
                    formulas::n_030(ps[0], ps[1], ps[2]).map(|n| format!("N = {n}"))
                }
                "type1" => {
                    need(2)?;
                    formulas::n_type1(ps[0], ps[1]).map(|(n, b)| format!("N = {n}, b = {b}"))
                }
                "type2" => {
                    need(3)?;
                    formulas::n_type2(ps[0], ps[1], ps[2])
                        .map(|d| format!("N = {}, h = {}, k = {}, l = {}", d.n, d.h, d.k, d.l))
                }
                "type3" => {
                    need(4)?;
                    formulas::n_type3(ps[0], ps[1], ps[2], ps[3]).map(|d| {
                        format!(
                            "printed N = {}, construction N = {}, h = {}",
                            d.printed, d.construction, d.h
                        )
                    })
                }
                "type4" => {
                    need(5)?;
                    formulas::n_type4(ps[0], ps[1], ps[2], ps[3], ps[4])
                        .map(|(n, h)| format!("N = {n}, h = {h}"))
                }
                "type5" => {
                    need(4)?;
                    formulas::n_type5(ps[0], ps[1], ps[2], ps[3])
                        .map(|d| format!("N = {}, h = {}, k = {}, l = {}", d.n, d.h, d.k, d.l))
                }
                "type6" => {
                    need(6)?;
                    formulas::n_type6(ps[0], ps[1], ps[2], ps[3], ps[4], ps[5])
                        .map(|(n, h)| format!("N = {n}, h = {h}"))
                }
                "type7" => {
                    need(2)?;
                    formulas::n_type7(ps[0], ps[1]).map(|(n, b)| format!("N = {n}, b = {b}"))
                }
                fam if fam.len() == 1 => {
                    need(2)?;
                    let c = fam.chars().next().unwrap().to_ascii_uppercase();
                    formulas::family_signature(c, ps[0], ps[1])
                        .map(|(n, b)| format!("(1,1,1,{n})_{b}"))
                }
                other => return Err(format!("unknown formula {other}")),
            };
            match out {
                Ok(s) => {
                    println!("{s}");
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    eprintln!("{e}");
                    Ok(ExitCode::from(3))
                }
            }
        }
        Command::Rewrite {
            file,
            kind,
            site,
            list,
        } => {
            let surface = read_surface(&file)?;
            let Surface::Closed(t) = surface else {
                return Err("rewrites apply to closed triangulations".to_string());
            };
            let kind: RewriteKind = kind.parse()?;
            let sites = rewrites::find_sites(&t, kind);
            if list {
                for s in &sites {
                    println!("{:?}", s.vertices);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let site = match site {
                Some(spec) => {
                    let vs: Vec<u32> = spec
                        .split(',')
                        .map(|x| x.trim().parse().map_err(|_| format!("bad site {spec}")))
                        .collect::<Result<_, _>>()?;
                    sites
                        .iter()
                        .find(|s| s.vertices == vs)
                        .cloned()
                        .ok_or_else(|| format!("no {kind:?} site at {spec}"))?
                }
                None => sites.first().cloned().ok_or("no site found")?,
            };
            let out = rewrites::apply_rewrite(&t, &site).map_err(|e| e.to_string())?;
            emit(&Surface::Closed(out), format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Fuller { file, mode } => {
            let surface = read_surface(&file)?;
            let out = match (&surface, mode.as_str()) {
                (Surface::Closed(t), "face") => {
                    Surface::Closed(rewrites::face_fullering(t).map_err(|e| e.to_string())?)
                }
                (Surface::Closed(t), _) => {
                    Surface::Closed(rewrites::edge_fullering(t).map_err(|e| e.to_string())?)
                }
                (Surface::Patch(p), "edge") => {
                    Surface::Patch(rewrites::edge_fullering_patch(p).map_err(|e| e.to_string())?)
                }
                (Surface::Patch(_), _) => {
                    return Err("face fullering applies to closed triangulations".to_string())
                }
            };
            emit(&out, format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Glue {
            file1,
            file2,
            method,
            belts,
            alignment,
        } => {
            let s1 = read_surface(&file1)?;
            let s2 = read_surface(&file2)?;
            let (Surface::Patch(p1), Surface::Patch(p2)) = (&s1, &s2) else {
                return Err("gluing applies to patches".to_string());
            };
            let align = match alignment {
                None => None,
                Some(a) => {
                    let parts: Vec<&str> = a.split(',').collect();
                    let offset: usize =
                        parts[0].parse().map_err(|_| format!("bad alignment {a}"))?;
                    Some((offset, parts.get(1) == Some(&"r")))
                }
            };
            let out = match method.as_str() {
                "strip" => {
                    let outcome = rewrites::glue_strip(
                        &Disc::Proper(p1.clone()),
                        &Disc::Proper(p2.clone()),
                        belts,
                        align,
                    )
                    .map_err(|e| e.to_string())?;
                    if let Some(over) = &outcome.not_elliptic {
                        eprintln!("seam not elliptic at {:?}", over);
                    }
                    outcome.triangulation
                }
                m => {
                    let method = match m {
                        "a" => GlueMethod::A,
                        "b" => GlueMethod::B,
                        _ => GlueMethod::C,
                    };
                    rewrites::glue_method(p1, p2, method).map_err(|e| e.to_string())?
                }
            };
            emit(&Surface::Closed(out), format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Consum { t1, tri1, t2, tri2 } => {
            let parse_tri = |s: &str| -> Result<[u32; 3], String> {
                let vs: Vec<u32> = s
                    .split(',')
                    .map(|x| x.trim().parse().map_err(|_| format!("bad triangle {s}")))
                    .collect::<Result<_, _>>()?;
                if vs.len() != 3 {
                    return Err(format!("bad triangle {s}"));
                }
                Ok([vs[0], vs[1], vs[2]])
            };
            let (Surface::Closed(a), Surface::Closed(b)) = (read_surface(&t1)?, read_surface(&t2)?)
            else {
                return Err("connected sums apply to closed triangulations".to_string());
            };
            let out = rewrites::connected_sum(&a, parse_tri(&tri1)?, &b, parse_tri(&tri2)?, None)
                .map_err(|e| e.to_string())?;
            emit(&Surface::Closed(out), format);
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { op, id } => {
            match op.as_str() {
                "list" => {
                    if format == Format::Json {
                        let ids: Vec<&str> = catalog::all().iter().map(|e| e.id.as_str()).collect();
                        println!("{}", serde_json::to_string_pretty(&ids).unwrap());
                    } else {
                        for e in catalog::all() {
                            println!("{}", e.id);
                        }
                    }
                }
                _ => {
                    let id = id.ok_or("catalog show needs an id")?;
                    let entry = catalog::get(&id).ok_or(format!("unknown entry {id}"))?;
                    let surface = entry.surface().map_err(|e| e.to_string())?;
                    emit(&surface, format);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { what } => match what {
            EnumCmd::Closed {
                n,
                elliptic,
                cap,
                naive,
                out,
            } => {
                let result =
                    enumerate::enumerate_closed(n, elliptic, cap).map_err(|e| e.to_string())?;
                if let Some(dir) = &out {
                    let surfaces: Vec<Surface> = result
                        .objects
                        .iter()
                        .map(|t| Surface::Closed(t.clone()))
                        .collect();
                    write_archive(dir, &surfaces)?;
                }
                if format == Format::Json {
                    let tally: Vec<_> = result
                        .tally()
                        .into_iter()
                        .map(|(sig, count)| {
                            serde_json::json!({ "signature": sig.notation(), "count": count })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&serde_json::json!({
                            "n": n,
                            "classes": result.objects.len(),
                            "elapsed_ms": result.elapsed_ms,
                            "tally": tally,
                        }))
                        .unwrap()
                    );
                    return Ok(ExitCode::SUCCESS);
                }
                println!(
                    "n = {}: {} classes in {} ms ({} candidates, {} duplicates)",
                    n,
                    result.objects.len(),
                    result.elapsed_ms,
                    result.stats.candidates,
                    result.stats.duplicates
                );
                for (sig, count) in result.tally() {
                    println!("  {} x{}", sig.notation(), count);
                }
                if naive {
                    let reference =
                        enumerate::enumerate_closed_naive(n).map_err(|e| e.to_string())?;
                    let full =
                        enumerate::enumerate_closed(n, false, cap).map_err(|e| e.to_string())?;
                    println!(
                        "reference generator: {} classes, {}",
                        reference.objects.len(),
                        if reference.codes == full.codes {
                            "agree"
                        } else {
                            "DISAGREE"
                        }
                    );
                }
                Ok(ExitCode::SUCCESS)
            }
            EnumCmd::Patches {
                b,
                type_tuple,
                max_f1,
                cap,
                out,
            } => {
                let filter = type_tuple.as_deref().map(parse_tuple3).transpose()?;
                let max_f1 = max_f1.unwrap_or(b + 6);
                let result = enumerate::enumerate_patches(b, max_f1, filter, cap)
                    .map_err(|e| e.to_string())?;
                if let Some(dir) = &out {
                    let surfaces: Vec<Surface> = result
                        .objects
                        .iter()
                        .map(|p| Surface::Patch(p.clone()))
                        .collect();
                    write_archive(dir, &surfaces)?;
                }
                println!(
                    "b = {}, f1 <= {}: {} classes in {} ms",
                    b,
                    max_f1,
                    result.objects.len(),
                    result.elapsed_ms
                );
                for p in &result.objects {
                    let sig = classify(&Surface::Patch(p.clone()));
                    if let Ok(Signature::Patch(sig)) = sig {
                        println!("  {}", sig.notation());
                    }
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Exists {
            type_tuple,
            n6,
            cap,
        } => {
            let (a3, a4, a5) = parse_tuple3(&type_tuple)?;
            let verdict =
                enumerate::check_existence(a3, a4, a5, n6, cap).map_err(|e| e.to_string())?;
            if format == Format::Json {
                let doc = match &verdict {
                    enumerate::Existence::Exists {
                        witness,
                        provenance,
                    } => serde_json::json!({
                        "status": "exists",
                        "provenance": provenance,
                        "witness": witness
                            .triangles()
                            .iter()
                            .map(|t| t.to_vec())
                            .collect::<Vec<_>>(),
                    }),
                    enumerate::Existence::NotExistsEnumerated { n } => {
                        serde_json::json!({
                            "status": "not-exists", "by": "enumeration", "vertices": n,
                        })
                    }
                    enumerate::Existence::NotExistsCited { source } => {
                        serde_json::json!({
                            "status": "not-exists", "by": "citation", "source": source,
                        })
                    }
                    enumerate::Existence::Unknown => serde_json::json!({ "status": "unknown" }),
                };
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
                return Ok(match verdict {
                    enumerate::Existence::Unknown => ExitCode::from(4),
                    _ => ExitCode::SUCCESS,
                });
            }
            match verdict {
                enumerate::Existence::Exists {
                    witness,
                    provenance,
                } => {
                    println!("exists ({provenance})");
                    emit(&Surface::Closed(witness), format);
                    Ok(ExitCode::SUCCESS)
                }
                enumerate::Existence::NotExistsEnumerated { n } => {
                    println!("does not exist (exhausted all triangulations on {n} vertices)");
                    Ok(ExitCode::SUCCESS)
                }
                enumerate::Existence::NotExistsCited { source } => {
                    println!("does not exist (cited: {source})");
                    Ok(ExitCode::SUCCESS)
                }
                enumerate::Existence::Unknown => {
                    println!("unknown");
                    Ok(ExitCode::from(4))
                }
            }
        }
        Command::Atlas { max_n6, enum_cap } => {
            let rows = atlas::atlas(max_n6, enum_cap);
            if format == Format::Json {
                let doc: Vec<_> = rows
                    .iter()
                    .map(|r| {
                        let cells: Vec<_> = r
                            .cells
                            .iter()
                            .map(|(n, s)| serde_json::json!({ "n6": n, "status": s.label() }))
                            .collect();
                        serde_json::json!({
                            "type": [r.type_tuple.0, r.type_tuple.1, r.type_tuple.2],
                            "cells": cells,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&doc).unwrap());
            } else {
                print!("{}", atlas::render(&rows));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { file, to } => {
            let surface = read_surface(&file)?;
            match to.as_str() {
                "facelist" => print!("{}", export::to_face_list(&surface)),
                "json" => print!("{}", export::to_json(&surface)),
                _ => print!("{}", export::to_off(&surface)),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    // Dying quietly on a closed pipe beats a panic from println.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
    }
}
