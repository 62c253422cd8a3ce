//! Command-line surface: group facts, single posets, full catalogs,
//! isomorphism verdicts, a-function tables, dimension tables, essential
//! orders of multiplicity data, and golden-catalog verification.
//!
//! Exit codes: 0 success, 1 computation failure (including verify
//! mismatches), 2 argument errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::coxeter::{build_group, CoxeterDatum, CoxeterError, ParabolicSubset, DEFAULT_CAP};
use crate::hecke::{a_function, a_table_csv, AMethod, HeckeError};
use crate::homdim::{BlockContext, BlockSpec, HomdimError};
use crate::stratorder::{StratData, StratError};
use crate::wposet::{canonical_form, catalog, is_isomorphic, IsoMode, WeightedPoset, WposetError};

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
    #[error(transparent)]
    Poset(#[from] WposetError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Homdim(#[from] HomdimError),
    #[error(transparent)]
    Strat(#[from] StratError),
    #[error("{0}")]
    Message(String),
}

#[derive(Parser)]
#[command(
    name = "costrata",
    about = "Weighted coset posets, Hecke a-functions, and homological dimension tables for finite Weyl groups",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print order, longest-element length, and reflection count of a
    /// Weyl type such as A3, B2, or A2xA1
    Group { type_name: String },
    /// Print one weighted double-coset poset
    Poset {
        #[arg(long = "type")]
        type_name: String,
        /// Left quotient generators, e.g. "s1,s3", "none", "all"
        #[arg(long = "G", default_value = "none")]
        g: String,
        /// Right parabolic generators
        #[arg(long = "S", default_value = "none")]
        s: String,
        #[arg(long, value_parser = ["json", "dot"], default_value = "json")]
        format: String,
    },
    /// Write the full S x G grid of weighted posets as JSON files
    Catalog {
        #[arg(long = "type")]
        type_name: String,
        /// Output directory (created if missing)
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide isomorphism of two weighted-poset JSON files
    Iso {
        file_a: PathBuf,
        file_b: PathBuf,
        /// Require the vertex weights to match as well
        #[arg(long)]
        weighted: bool,
    },
    /// Print the a-function table of a Weyl type
    Afun {
        #[arg(long = "type")]
        type_name: String,
        #[arg(long, value_parser = ["hecke", "rsk", "auto"], default_value = "auto")]
        method: String,
        /// Emit CSV (word,length,a); default is aligned text
        #[arg(long)]
        csv: bool,
    },
    /// Print the finitistic dimension and the per-representative
    /// tilting/injective dimension table of a regular block
    Homdim {
        #[arg(long = "type")]
        type_name: String,
        #[arg(long = "G", default_value = "none")]
        g: String,
    },
    /// Compute the essential order of multiplicity data in a JSON file
    /// and run its consistency checks
    Essorder { file: PathBuf },
    /// Recompute every catalog poset of the reference figures and diff
    /// against the golden files (canonical forms); nonzero exit on any
    /// mismatch
    Verify {
        /// Directory holding the golden catalogs (a2, b2, g2, a3, b3)
        #[arg(long)]
        figures: PathBuf,
    },
}

/// Runs the CLI on explicit arguments (the first is the program name),
/// writing to the supplied streams. Returns the process exit code.
pub fn run<I>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = String>,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                return 2;
            }
            // --help and --version land here
            let _ = write!(out, "{rendered}");
            return 0;
        }
    };
    match execute(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Group { type_name } => cmd_group(&type_name, out),
        Command::Poset {
            type_name,
            g,
            s,
            format,
        } => cmd_poset(&type_name, &g, &s, &format, out),
        Command::Catalog { type_name, out: dir } => cmd_catalog(&type_name, &dir, out),
        Command::Iso {
            file_a,
            file_b,
            weighted,
        } => cmd_iso(&file_a, &file_b, weighted, out),
        Command::Afun {
            type_name,
            method,
            csv,
        } => cmd_afun(&type_name, &method, csv, out),
        Command::Homdim { type_name, g } => cmd_homdim(&type_name, &g, out),
        Command::Essorder { file } => cmd_essorder(&file, out),
        Command::Verify { figures } => cmd_verify(&figures, out),
    }
}

fn parse_pair(
    type_name: &str,
    g: &str,
    s: &str,
) -> Result<(CoxeterDatum, ParabolicSubset, ParabolicSubset), CliError> {
    let datum = CoxeterDatum::parse(type_name)?;
    let g_set = ParabolicSubset::parse(datum.rank(), g)?;
    let s_set = ParabolicSubset::parse(datum.rank(), s)?;
    Ok((datum, g_set, s_set))
}

fn cmd_group(type_name: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let datum = CoxeterDatum::parse(type_name)?;
    writeln!(out, "type {}", datum.name())?;
    if datum.order() <= DEFAULT_CAP as u128 {
        let group = build_group(&datum)?;
        let w0 = group.longest_element(&ParabolicSubset::full(group.rank()));
        writeln!(out, "order {}", group.order())?;
        writeln!(out, "longest_length {}", group.length(w0))?;
        writeln!(out, "reflections {}", group.reflections().len())?;
        writeln!(out, "source enumerated")?;
    } else {
        writeln!(out, "order {}", datum.order())?;
        writeln!(out, "longest_length {}", datum.positive_root_count())?;
        writeln!(out, "reflections {}", datum.positive_root_count())?;
        writeln!(out, "source formula")?;
    }
    Ok(0)
}

fn cmd_poset(
    type_name: &str,
    g: &str,
    s: &str,
    format: &str,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let (datum, g_set, s_set) = parse_pair(type_name, g, s)?;
    let group = build_group(&datum)?;
    let poset = crate::cosets::coset_poset(&group, &g_set, &s_set)?;
    match format {
        "dot" => write!(out, "{}", poset.to_dot())?,
        _ => writeln!(out, "{}", poset.to_json())?,
    }
    Ok(0)
}

fn cell_file_name(s_set: &ParabolicSubset, g_set: &ParabolicSubset) -> String {
    format!("S_{}__G_{}.json", s_set.label(), g_set.label())
}

fn cmd_catalog(type_name: &str, dir: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let datum = CoxeterDatum::parse(type_name)?;
    let group = build_group(&datum)?;
    let grid = catalog(&group)?;
    fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    for cell in &grid.cells {
        let name = cell_file_name(&cell.s_set, &cell.g_set);
        fs::write(dir.join(&name), cell.poset.to_json() + "\n")?;
        files.push(serde_json::json!({
            "file": name,
            "s": cell.s_set.label(),
            "g": cell.g_set.label(),
        }));
    }
    let index = serde_json::json!({
        "type": grid.type_name,
        "rank": datum.rank(),
        "cells": files,
    });
    fs::write(dir.join("index.json"), index.to_string() + "\n")?;
    writeln!(
        out,
        "wrote {} posets and index.json to {}",
        grid.cells.len(),
        dir.display()
    )?;
    Ok(0)
}

fn read_poset(path: &Path) -> Result<WeightedPoset, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Message(format!("{}: {e}", path.display())))?;
    Ok(WeightedPoset::from_json(&text)?)
}

fn cmd_iso(
    file_a: &Path,
    file_b: &Path,
    weighted: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let a = read_poset(file_a)?;
    let b = read_poset(file_b)?;
    let mode = if weighted {
        IsoMode::Weighted
    } else {
        IsoMode::Unweighted
    };
    match is_isomorphic(&a, &b, mode) {
        Some(witness) => {
            writeln!(out, "isomorphic")?;
            let images: Vec<String> = witness.iter().map(u32::to_string).collect();
            writeln!(out, "witness {}", images.join(" "))?;
        }
        None => writeln!(out, "not isomorphic")?,
    }
    Ok(0)
}

fn cmd_afun(
    type_name: &str,
    method: &str,
    csv: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let datum = CoxeterDatum::parse(type_name)?;
    let group = build_group(&datum)?;
    let method = AMethod::parse(method)
        .ok_or_else(|| CliError::Message(format!("unknown method {method}")))?;
    let table = a_function(&group, method)?;
    if csv {
        write!(out, "{}", a_table_csv(&group, &table))?;
    } else {
        writeln!(out, "word length a")?;
        for w in group.elements() {
            writeln!(
                out,
                "{} {} {}",
                group.word_string(w),
                group.length(w),
                table.value(w)
            )?;
        }
    }
    Ok(0)
}

fn cmd_homdim(type_name: &str, g: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let (datum, g_set, s_set) = parse_pair(type_name, g, "none")?;
    let ctx = BlockContext::new(BlockSpec::new(datum.clone(), g_set, s_set))?;
    writeln!(out, "type {}", datum.name())?;
    writeln!(out, "G {}", g_set.label())?;
    writeln!(out, "finitistic_dimension {}", ctx.finitistic_dimension()?)?;
    writeln!(out, "word,length,a,tilting,injective")?;
    for row in ctx.dimension_table()? {
        writeln!(
            out,
            "{},{},{},{},{}",
            row.word, row.length, row.a_value, row.tilting, row.injective
        )?;
    }
    Ok(0)
}

fn cmd_essorder(file: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = fs::read_to_string(file)
        .map_err(|e| CliError::Message(format!("{}: {e}", file.display())))?;
    let data = StratData::from_json(&text)?;
    let order = data.essential_order()?;
    writeln!(out, "labels {}", data.size())?;
    for &(lo, hi) in order.covers() {
        writeln!(
            out,
            "cover {} {}",
            data.labels[lo as usize], data.labels[hi as usize]
        )?;
    }
    let weights: Vec<String> = data
        .weight_function()
        .iter()
        .map(u64::to_string)
        .collect();
    writeln!(out, "weights {}", weights.join(" "))?;
    let verdict = |ok: bool| if ok { "pass" } else { "fail" };
    writeln!(out, "check idempotence {}", verdict(data.check_idempotence()?))?;
    writeln!(
        out,
        "check duality_filtration {}",
        verdict(data.check_duality_filtration())
    )?;
    match data.check_cartan_row() {
        Ok(report) => writeln!(
            out,
            "check cartan_row {} ({} maximal labels)",
            verdict(report.all_ok()),
            report.rows.len()
        )?,
        Err(StratError::MissingProjData) => {
            writeln!(out, "check cartan_row skip (no projective data)")?
        }
        Err(e) => return Err(e.into()),
    }
    match data.check_reciprocity() {
        Ok(ok) => writeln!(out, "check reciprocity {}", verdict(ok))?,
        Err(StratError::MissingProjData) => {
            writeln!(out, "check reciprocity skip (no projective data)")?
        }
        Err(StratError::MissingEndoData) => {
            writeln!(out, "check reciprocity skip (no endomorphism dimensions)")?
        }
        Err(e) => return Err(e.into()),
    }
    Ok(0)
}

/// The five reference catalogs: CLI type name and golden subdirectory.
const VERIFY_TYPES: [(&str, &str); 5] = [
    ("A2", "a2"),
    ("B2", "b2"),
    ("G2", "g2"),
    ("A3", "a3"),
    ("B3", "b3"),
];

fn cmd_verify(figures: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut total = 0usize;
    let mut mismatches = 0usize;
    for (type_name, subdir) in VERIFY_TYPES {
        let datum = CoxeterDatum::parse(type_name)?;
        let group = build_group(&datum)?;
        let grid = catalog(&group)?;
        let mut ok_cells = 0usize;
        for cell in &grid.cells {
            total += 1;
            let path = figures.join(subdir).join(cell_file_name(&cell.s_set, &cell.g_set));
            let verdict = match fs::read_to_string(&path) {
                Err(e) => Some(format!("golden file unreadable: {e}")),
                Ok(text) => match WeightedPoset::from_json(&text) {
                    Err(e) => Some(format!("golden file invalid: {e}")),
                    Ok(golden) => {
                        if canonical_form(&golden).signature
                            == canonical_form(&cell.poset).signature
                        {
                            None
                        } else if is_isomorphic(&golden, &cell.poset, IsoMode::Weighted)
                            .is_some()
                        {
                            Some(
                                "canonical forms differ yet posets are isomorphic \
                                 (canonicalization defect)"
                                    .to_string(),
                            )
                        } else {
                            Some(format!(
                                "posets differ: computed {} vertices, golden {}",
                                cell.poset.size(),
                                golden.size()
                            ))
                        }
                    }
                },
            };
            match verdict {
                None => ok_cells += 1,
                Some(reason) => {
                    mismatches += 1;
                    writeln!(
                        out,
                        "mismatch {type_name} S={} G={}: {reason}",
                        cell.s_set.label(),
                        cell.g_set.label()
                    )?;
                }
            }
        }
        writeln!(out, "{type_name} {ok_cells}/{} match", grid.cells.len())?;
    }
    writeln!(out, "verified {total} cells, {mismatches} mismatches")?;
    Ok(if mismatches == 0 { 0 } else { 1 })
}
