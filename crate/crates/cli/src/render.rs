//! Plain-text tables and JSON views for single-algebra commands.

use std::io::Write;

use serde_json::json;

use lietriv::report::{CheckOutcome, Status};
use lietriv::Result;

use crate::suite::Context;
use crate::Format;

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Error => "ERROR",
    }
}

fn braces(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Rows `algebra  module  check  status` and a summary line.
pub fn results_table(results: &[CheckOutcome]) -> String {
    let header = ["algebra", "module", "check", "status"];
    let body: Vec<[String; 4]> = results
        .iter()
        .map(|r| {
            [
                r.algebra.clone(),
                r.module.clone(),
                r.check.clone(),
                status_word(r.status).to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: [&str; 4]| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(header);
    for row in &body {
        s += &line([&row[0], &row[1], &row[2], &row[3]]);
    }
    let count = |st: Status| results.iter().filter(|r| r.status == st).count();
    s += &format!(
        "{} checks: {} passed, {} failed, {} errors\n",
        results.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Error)
    );
    s
}

pub fn algebra_info(ctx: &Context, format: Format, out: &mut dyn Write) -> Result<()> {
    let (alg, p) = (&ctx.alg, &ctx.principal);
    let exps = p.exponents();
    match format {
        Format::Json => {
            let v = json!({
                "algebra": ctx.label,
                "type": alg.kind().to_string(),
                "rank": alg.rank(),
                "dimension": alg.dim(),
                "matrix_size": alg.matrix_size(),
                "exponents": exps,
                "coxeter": p.coxeter(),
                "basis": alg.basis_labels(),
            });
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&v).expect("plain json")
            );
        }
        Format::Table => {
            let _ = writeln!(out, "algebra      {}", ctx.label);
            let _ = writeln!(out, "rank         {}", alg.rank());
            let _ = writeln!(out, "dimension    {}", alg.dim());
            let _ = writeln!(out, "matrix size  {}", alg.matrix_size());
            let _ = writeln!(out, "exponents    {}", braces(&exps));
            let _ = writeln!(out, "coxeter      {}", p.coxeter());
            let _ = writeln!(out, "basis        {}", alg.basis_labels().join(" "));
        }
    }
    Ok(())
}

pub fn principal_show(ctx: &Context, format: Format, out: &mut dyn Write) -> Result<()> {
    let (alg, p) = (&ctx.alg, &ctx.principal);
    let t = &p.triple;
    match format {
        Format::Json => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&p.dump()).expect("plain json")
            );
        }
        Format::Table => {
            let _ = writeln!(out, "x = {}", alg.format_element(&t.x));
            let _ = writeln!(out, "h = {}", alg.format_element(&t.h));
            let _ = writeln!(out, "y = {}", alg.format_element(&t.y));
            let dims: Vec<String> = p
                .grading
                .dims()
                .iter()
                .map(|(m, d)| format!("{m}:{d}"))
                .collect();
            let _ = writeln!(out, "grading dims {}", dims.join(" "));
            for c in &p.decomposition.components {
                let _ = writeln!(
                    out,
                    "W(m={}) highest = {}",
                    c.exponent,
                    alg.format_element(c.highest())
                );
            }
        }
    }
    Ok(())
}
