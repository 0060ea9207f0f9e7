use std::path::Path;

use serde_json::{json, Value};

use eigentree::associahedron::{catalan, embed_config, folding_degree};
use eigentree::moduli::{enumerate_complex, euler_characteristic, fiber_counts, orientability, tile_count};
use eigentree::periods::{cell_volume, zeta2_period, PeriodEstimate};
use eigentree::spectra::{eigen, normal_form, resolve_tree, stratum, SymmetricMatrix};
use eigentree::trees::{forget_planarity, parse_newick, write_newick, PlanarMetricTree};
use eigentree::treespace::{
    count_binary_topologies, dh_matching, dh_tree, suspension, tn_skeleton, Matching, SuspensionCell,
};
use eigentree::{CoverSpec, ModuliError};

use crate::output::{csv, json, number, Format};
use crate::{CliError, Command, OptTreeInput, TreeInput};

fn lib<E: Into<eigentree::Error>>(e: E) -> CliError {
    CliError::Lib(e.into())
}

fn read(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        return std::io::read_to_string(std::io::stdin())
            .map_err(|source| CliError::Io { path: "stdin".into(), source });
    }
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn tree_from(newick: &Option<String>, file: &Option<std::path::PathBuf>) -> Result<Option<PlanarMetricTree>, CliError> {
    let text = match (newick, file) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => read(p)?,
        (None, None) => return Ok(None),
    };
    parse_newick(text.trim()).map(Some).map_err(lib)
}

fn unsupported(command: &str, format: Format) -> CliError {
    CliError::Usage(format!("{command} has no {} output", format.name()))
}

pub fn dispatch(command: &Command, format: Option<Format>, digits: usize) -> Result<String, CliError> {
    match command {
        Command::Eigen { matrix, tol, jacobi_tol } => eigen_cmd(matrix, *tol, *jacobi_tol, format, digits),
        Command::Embed { tree } => embed_cmd(tree, format, digits),
        Command::Dh { tree, matching } => dh_cmd(tree, matching.as_deref(), format),
        Command::TnGraph { n } => tn_graph(*n, format),
        Command::Counts { n } => counts(*n, format),
        Command::Complex { n, cover } => complex(*n, *cover, format),
        Command::Fold { n } => fold(*n, format),
        Command::Degree { n, samples, seed } => degree(*n, *samples, *seed, format),
        Command::Period { nodes } => estimate("period", zeta2_period(*nodes).map_err(lib)?, format, digits),
        Command::Volume { n, samples, seed } => {
            estimate("volume", cell_volume(*n, *samples, *seed).map_err(lib)?, format, digits)
        }
    }
}

fn eigen_cmd(path: &Path, tol: f64, jacobi_tol: f64, format: Option<Format>, digits: usize) -> Result<String, CliError> {
    if !(jacobi_tol > 0.0) {
        return Err(CliError::Usage(format!("--jacobi-tol must be positive, got {jacobi_tol}")));
    }
    let q = SymmetricMatrix::parse(&read(path)?).map_err(lib)?;
    let e = eigen(&q, jacobi_tol).map_err(lib)?;
    let s = &e.spectrum;
    let strata = stratum(s, tol).map_err(lib)?;
    let degenerate = !(s.spread() > 0.0);
    let nf = if degenerate { None } else { Some(normal_form(s).map_err(lib)?) };
    let tree = if degenerate { None } else { Some(resolve_tree(s).map_err(lib)?.newick()) };
    match format.unwrap_or(Format::Json) {
        Format::Json => Ok(json(
            "eigen",
            json!({
                "n": q.n(),
                "spectrum": s.values(),
                "offset": s.values()[0],
                "scale": s.spread(),
                "delta": nf.as_ref().map(|f| f.delta.deltas().to_vec()),
                "stratum": { "tol": tol, "blocks": strata.blocks },
                "tree": tree,
                "sweeps": e.sweeps,
            }),
            digits,
        )),
        Format::Csv => {
            let mut block = vec![0; s.len()];
            for (b, members) in strata.blocks.iter().enumerate() {
                for &k in members {
                    block[k - 1] = b + 1;
                }
            }
            let rows: Vec<Vec<String>> = (0..s.len())
                .map(|k| {
                    let gap = nf
                        .as_ref()
                        .and_then(|f| f.delta.deltas().get(k).map(|&d| number(d, digits)))
                        .unwrap_or_default();
                    vec![(k + 1).to_string(), number(s.values()[k], digits), gap, block[k].to_string()]
                })
                .collect();
            Ok(csv(&["index", "eigenvalue", "gap", "block"], &rows))
        }
        Format::Newick => match tree {
            Some(t) => Ok(format!("{t}\n")),
            None => Err(lib(eigentree::SpectraError::Degenerate)),
        },
        f => Err(unsupported("eigen", f)),
    }
}

fn embed_cmd(input: &TreeInput, format: Option<Format>, digits: usize) -> Result<String, CliError> {
    let tree = tree_from(&input.newick, &input.tree)?.expect("clap requires a tree");
    let c = embed_config(&tree).map_err(lib)?;
    match format.unwrap_or(Format::Json) {
        Format::Json => Ok(json(
            "embed",
            json!({ "n": c.points().len(), "tree": write_newick(&tree), "points": c.points(), "gaps": c.gaps() }),
            digits,
        )),
        Format::Csv => {
            let header: Vec<String> = (1..=c.points().len()).map(|k| format!("v{k}")).collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            Ok(csv(&header, &[c.points().iter().map(|&x| number(x, digits)).collect()]))
        }
        f => Err(unsupported("embed", f)),
    }
}

fn parse_matching(text: &str) -> Result<Matching, CliError> {
    let nums = text
        .split(|c: char| !c.is_ascii_digit())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|_| CliError::Usage(format!("bad item {s:?} in matching"))))
        .collect::<Result<Vec<u32>, _>>()?;
    if nums.is_empty() || nums.len() % 2 == 1 {
        return Err(CliError::Usage(format!("matching {text:?} does not list pairs")));
    }
    Ok(Matching::new(nums.chunks(2).map(|p| (p[0], p[1]))))
}

fn dh_cmd(input: &OptTreeInput, matching: Option<&str>, format: Option<Format>) -> Result<String, CliError> {
    let (tree, m) = match (tree_from(&input.newick, &input.tree)?, matching) {
        (Some(t), None) => {
            let t = forget_planarity(&t);
            let m = dh_matching(&t).map_err(lib)?;
            (t, m)
        }
        (None, Some(s)) => {
            let m = parse_matching(s)?;
            let n = m.pairs().len() + 1;
            (dh_tree(&m, n).map_err(lib)?, m)
        }
        _ => return Err(CliError::Usage("dh needs a tree (--newick/--tree) or --matching".into())),
    };
    let newick = write_newick(tree.representative());
    match format.unwrap_or(Format::Json) {
        Format::Json => Ok(json("dh", json!({ "n": tree.leaf_count(), "tree": newick, "matching": m.pairs() }), 17)),
        Format::Csv => {
            let rows: Vec<Vec<String>> = m.pairs().iter().map(|(a, b)| vec![a.to_string(), b.to_string()]).collect();
            Ok(csv(&["a", "b"], &rows))
        }
        Format::Newick => Ok(format!("{newick}\n")),
        f => Err(unsupported("dh", f)),
    }
}

fn tn_graph(n: usize, format: Option<Format>) -> Result<String, CliError> {
    let t = tn_skeleton(n).map_err(lib)?;
    match format.unwrap_or(Format::Dot) {
        Format::Dot => Ok(t.to_dot()),
        Format::Json => {
            let names: Vec<String> = (0..t.vertices.len()).map(|v| t.vertex_name(v)).collect();
            Ok(json(
                "tn-graph",
                json!({
                    "n": n,
                    "vertices": names,
                    "edges": t.one_skeleton().edges(),
                    "f_vector": t.f_vector(),
                    "euler_characteristic": t.euler_characteristic(),
                }),
                17,
            ))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = t
                .one_skeleton()
                .edges()
                .into_iter()
                .map(|(a, b)| vec![format!("\"{}\"", t.vertex_name(a)), format!("\"{}\"", t.vertex_name(b))])
                .collect();
            Ok(csv(&["source", "target"], &rows))
        }
        f => Err(unsupported("tn-graph", f)),
    }
}

fn counts(n: usize, format: Option<Format>) -> Result<String, CliError> {
    if n < 3 {
        return Err(CliError::Usage(format!("counts needs n >= 3, got {n}")));
    }
    let overflow = || lib(ModuliError::Resource(format!("counts overflow at n = {n}")));
    let cat = catalan(n).map_err(lib)?;
    let topologies = count_binary_topologies(n).map_err(lib)?;
    let tiles_or = (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k)).ok_or_else(overflow)?;
    let cubes_or = tiles_or.checked_mul(cat).ok_or_else(overflow)?;
    // the Euler characteristic needs the complex itself, which stops at n = 5
    let chi_or = if n <= 5 {
        Some(euler_characteristic(&enumerate_complex(n, CoverSpec::Orientation).map_err(lib)?))
    } else {
        None
    };
    match format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let row = vec![
                n.to_string(),
                cat.to_string(),
                topologies.to_string(),
                (tiles_or / 2).to_string(),
                tiles_or.to_string(),
                cubes_or.to_string(),
                chi_or.map(|c| c.to_string()).unwrap_or_default(),
            ];
            Ok(csv(&["n", "catalan", "topologies", "tiles_full", "tiles_or", "cubes_or", "chi_or"], &[row]))
        }
        Format::Json => Ok(json(
            "counts",
            json!({
                "n": n,
                "catalan": cat.to_string(),
                "topologies": topologies.to_string(),
                "tiles_full": (tiles_or / 2).to_string(),
                "tiles_or": tiles_or.to_string(),
                "cubes_or": cubes_or.to_string(),
                "chi_or": chi_or,
            }),
            17,
        )),
        f => Err(unsupported("counts", f)),
    }
}

fn complex(n: usize, cover: CoverSpec, format: Option<Format>) -> Result<String, CliError> {
    let c = enumerate_complex(n, cover).map_err(lib)?;
    match format.unwrap_or(Format::Json) {
        Format::Dot => Ok(c.to_dot()),
        Format::Json => {
            let orientable = if n == 4 { Some(orientability(&c).map_err(lib)?) } else { None };
            Ok(json(
                "complex",
                json!({
                    "n": n,
                    "cover": cover,
                    "counts": c.counts(),
                    "tiles": tile_count(&c),
                    "euler_characteristic": euler_characteristic(&c),
                    "orientable": orientable,
                    "cells": c.cells,
                    "boundary": c.boundary,
                }),
                17,
            ))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = c
                .counts()
                .iter()
                .enumerate()
                .map(|(d, k)| vec![d.to_string(), k.to_string()])
                .collect();
            Ok(csv(&["dimension", "cells"], &rows))
        }
        f => Err(unsupported("complex", f)),
    }
}

fn fold(n: usize, format: Option<Format>) -> Result<String, CliError> {
    let c = enumerate_complex(n, CoverSpec::Orientation).map_err(lib)?;
    let counts = fiber_counts(&c).map_err(lib)?;
    let sus = suspension(n).map_err(lib)?;
    let describe = |cell: &SuspensionCell| -> (String, Vec<String>) {
        match *cell {
            SuspensionCell::Lifted { dim, simplex, cone } => (
                format!("{cone:?}").to_lowercase(),
                sus.base.simplices[dim][simplex].iter().map(|&v| sus.base.vertex_name(v)).collect(),
            ),
            other => (format!("{other:?}"), Vec::new()),
        }
    };
    match format.unwrap_or(Format::Json) {
        Format::Json => {
            let targets: Vec<Value> = counts
                .iter()
                .map(|(cell, k)| {
                    let (cone, clades) = describe(cell);
                    json!({ "cone": cone, "clades": clades, "fiber": k })
                })
                .collect();
            Ok(json("fold", json!({ "n": n, "targets": targets }), 17))
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = counts
                .iter()
                .map(|(cell, k)| {
                    let (cone, clades) = describe(cell);
                    vec![cone, format!("\"{}\"", clades.join(" ")), k.to_string()]
                })
                .collect();
            Ok(csv(&["cone", "clades", "fiber"], &rows))
        }
        f => Err(unsupported("fold", f)),
    }
}

fn degree(n: usize, samples: usize, seed: u64, format: Option<Format>) -> Result<String, CliError> {
    let d = folding_degree(n, samples, seed).map_err(lib)?;
    match format.unwrap_or(Format::Json) {
        Format::Json => Ok(json("degree", json!({ "n": n, "samples": samples, "seed": seed, "degree": d }), 17)),
        Format::Csv => Ok(csv(
            &["n", "samples", "seed", "degree"],
            &[vec![n.to_string(), samples.to_string(), seed.to_string(), d.to_string()]],
        )),
        f => Err(unsupported("degree", f)),
    }
}

fn estimate(command: &str, e: PeriodEstimate, format: Option<Format>, digits: usize) -> Result<String, CliError> {
    match format.unwrap_or(Format::Json) {
        Format::Json => Ok(json(command, serde_json::to_value(&e).expect("serialisable"), digits)),
        Format::Csv => {
            let method = serde_json::to_value(e.method).expect("serialisable");
            Ok(csv(
                &["value", "error_bound", "method", "samples_or_nodes", "seed"],
                &[vec![
                    number(e.value, digits),
                    number(e.error_bound, digits),
                    method.as_str().unwrap_or_default().to_string(),
                    e.samples_or_nodes.to_string(),
                    e.seed.map(|s| s.to_string()).unwrap_or_default(),
                ]],
            ))
        }
        f => Err(unsupported(command, f)),
    }
}
