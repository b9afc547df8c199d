use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;

use crate::query::{Report, TransformReport};
use segre_core::{ConstructionCertificate, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

pub fn render(report: &Report, format: Format) -> Result<String, String> {
    match format {
        Format::Json => to_json(report),
        Format::Csv => to_csv(report),
        Format::Text => Ok(to_text(report)),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    let mut out = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    out.push('\n');
    Ok(out)
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn opt<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map(ToString::to_string).unwrap_or_default()
}

fn to_text(report: &Report) -> String {
    let mut out = String::new();
    match report {
        Report::Bound(b) => {
            let _ = writeln!(out, "g={} r={} k={}", b.g, b.r, b.k);
            let _ = writeln!(out, "hirschowitz  {}", b.hirschowitz);
            let _ = writeln!(out, "mukai_sakai  {}", b.mukai_sakai);
            if let Some(segre) = b.segre {
                let _ = writeln!(out, "segre        {segre}");
            }
        }
        Report::Smax(t) => {
            let _ = writeln!(out, "g={} r={} d={}", t.g, t.r, t.d);
            for row in &t.rows {
                let _ = writeln!(
                    out,
                    "k={:<3} eps={:<3} s_max={:<6} valid_s=[{}]",
                    row.k,
                    row.eps,
                    row.s_max,
                    join(&row.valid_s, ", ")
                );
            }
        }
        Report::Strata(t) => {
            let _ = writeln!(out, "g={} r={} d={}", t.g, t.r, t.d);
            let _ = writeln!(
                out,
                "{:>3} {:>6} {:>4} {:>6} {:>6} {:>6} {:>6}  generic",
                "k", "s", "eps", "d1", "dim", "codim", "locus"
            );
            for x in &t.strata {
                let _ = writeln!(
                    out,
                    "{:>3} {:>6} {:>4} {:>6} {:>6} {:>6} {:>6}  {}",
                    x.k,
                    x.s,
                    x.eps,
                    x.d1,
                    x.dim,
                    x.codim,
                    x.locus_dim,
                    if x.is_generic { "yes" } else { "no" }
                );
            }
        }
        Report::Construct(c) => certificate_text(&mut out, c),
        Report::Transform(t) => transform_text(&mut out, t),
        Report::Verify(v) => {
            let _ = writeln!(out, "seed={} trials={}", v.seed, v.trials);
            for c in &v.checks {
                let status = if c.failures == 0 { "ok" } else { "FAILED" };
                let _ = write!(out, "{:<32} {:>8} cases  {status}", c.name, c.cases);
                if let Some(first) = &c.first_failure {
                    let _ = write!(out, " ({} failures, first {first})", c.failures);
                }
                out.push('\n');
            }
            let _ = writeln!(out, "{}", if v.passed { "all checks passed" } else { "some checks failed" });
        }
    }
    out
}

fn chain_text(values: &[Rational]) -> String {
    if values.is_empty() {
        "vacuous".into()
    } else {
        join(values, " >= ")
    }
}

fn certificate_text(out: &mut String, c: &ConstructionCertificate) {
    let _ = writeln!(out, "g={} r={} d={} k={} s={}", c.g, c.r, c.d, c.k, c.s);
    let _ = writeln!(
        out,
        "N_k={} d_tilde={} window=[{}, {}] genus_bound_met={}",
        c.n_k, c.d_tilde, c.window.0, c.window.1, c.meets_genus_bound
    );
    for p in &c.per_i {
        let _ = writeln!(
            out,
            "i={:<3} lb={:<6} ({:?}; direct {}, dual {}) s_i_max={:<6} chain[{:?}]: {} {}",
            p.i,
            p.worst_case_lb,
            p.reduction,
            p.direct_lb,
            p.dual_lb,
            p.s_i_max,
            p.chain_reduction,
            chain_text(&p.paper_chain.values),
            if p.paper_chain.positive { "positive" } else { "not positive" }
        );
    }
    let _ = writeln!(out, "verdict: {:?}", c.verdict);
    for note in &c.notes {
        let _ = writeln!(out, "note: {note}");
    }
}

fn transform_text(out: &mut String, t: &TransformReport) {
    let _ = writeln!(out, "g={} r={} filtered={}", t.g, t.r, t.filtered);
    for stage in &t.stages {
        let locus: Vec<String> = stage
            .locus
            .intervals
            .iter()
            .map(|iv| format!("[{},{}]", iv.lo, iv.hi))
            .collect();
        let _ = writeln!(
            out,
            "{:>3} step={:<12} d={:<6} s=({}) locus={}",
            stage.index,
            opt(&stage.applied),
            stage.profile.d(),
            join(stage.profile.values(), ", "),
            locus.join("")
        );
    }
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().has_headers(true).from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, String> {
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

fn write_rows<T: Serialize>(rows: impl IntoIterator<Item = T>) -> Result<String, String> {
    let mut w = csv_writer();
    for row in rows {
        w.serialize(row).map_err(|e| e.to_string())?;
    }
    finish(w)
}

fn to_csv(report: &Report) -> Result<String, String> {
    match report {
        Report::Bound(b) => {
            #[derive(Serialize)]
            struct Row {
                g: i64,
                r: i64,
                k: i64,
                hirschowitz: i64,
                mukai_sakai: i64,
                segre: String,
            }
            write_rows([Row {
                g: b.g,
                r: b.r,
                k: b.k,
                hirschowitz: b.hirschowitz,
                mukai_sakai: b.mukai_sakai,
                segre: opt(&b.segre),
            }])
        }
        Report::Smax(t) => {
            #[derive(Serialize)]
            struct Row {
                g: i64,
                r: i64,
                d: i64,
                k: i64,
                eps: i64,
                s_max: i64,
                valid_s: String,
            }
            write_rows(t.rows.iter().map(|row| Row {
                g: t.g,
                r: t.r,
                d: t.d,
                k: row.k,
                eps: row.eps,
                s_max: row.s_max,
                valid_s: join(&row.valid_s, ";"),
            }))
        }
        Report::Strata(t) => {
            if t.strata.is_empty() {
                return Ok("g,r,d,k,s,eps,d1,dim,codim,locus_dim,is_generic\n".into());
            }
            write_rows(&t.strata)
        }
        Report::Construct(c) => {
            #[derive(Serialize)]
            struct Row {
                g: i64,
                r: i64,
                d: i64,
                k: i64,
                s: i64,
                n_k: i64,
                d_tilde: i64,
                i: i64,
                reduction: String,
                s_i_max: i64,
                worst_case_lb: i64,
                direct_lb: i64,
                dual_lb: i64,
                passes: bool,
                chain_reduction: String,
                chain: String,
                chain_positive: bool,
                verdict: String,
            }
            let verdict = format!("{:?}", c.verdict);
            let mut w = csv_writer();
            if c.per_i.is_empty() {
                w.write_record([
                    "g", "r", "d", "k", "s", "n_k", "d_tilde", "i", "reduction", "s_i_max",
                    "worst_case_lb", "direct_lb", "dual_lb", "passes", "chain_reduction", "chain",
                    "chain_positive", "verdict",
                ])
                .map_err(|e| e.to_string())?;
                let head = [c.g, c.r, c.d, c.k, c.s, c.n_k, c.d_tilde].map(|v| v.to_string());
                let mut record: Vec<String> = head.to_vec();
                record.extend(std::iter::repeat_n(String::new(), 10));
                record.push(verdict);
                w.write_record(&record).map_err(|e| e.to_string())?;
                return finish(w);
            }
            for p in &c.per_i {
                w.serialize(Row {
                    g: c.g,
                    r: c.r,
                    d: c.d,
                    k: c.k,
                    s: c.s,
                    n_k: c.n_k,
                    d_tilde: c.d_tilde,
                    i: p.i,
                    reduction: format!("{:?}", p.reduction).to_lowercase(),
                    s_i_max: p.s_i_max,
                    worst_case_lb: p.worst_case_lb,
                    direct_lb: p.direct_lb,
                    dual_lb: p.dual_lb,
                    passes: p.passes,
                    chain_reduction: format!("{:?}", p.chain_reduction).to_lowercase(),
                    chain: join(&p.paper_chain.values, ";"),
                    chain_positive: p.paper_chain.positive,
                    verdict: verdict.clone(),
                })
                .map_err(|e| e.to_string())?;
            }
            finish(w)
        }
        Report::Transform(t) => {
            #[derive(Serialize)]
            struct Row {
                index: usize,
                requested: String,
                applied: String,
                d: i64,
                s: String,
                locus_lo: String,
                locus_hi: String,
            }
            write_rows(t.stages.iter().map(|st| Row {
                index: st.index,
                requested: opt(&st.requested).replace(',', ";"),
                applied: opt(&st.applied).replace(',', ";"),
                d: st.profile.d(),
                s: join(st.profile.values(), ";"),
                locus_lo: join(&st.locus.intervals.iter().map(|iv| iv.lo).collect::<Vec<_>>(), ";"),
                locus_hi: join(&st.locus.intervals.iter().map(|iv| iv.hi).collect::<Vec<_>>(), ";"),
            }))
        }
        Report::Verify(v) => {
            #[derive(Serialize)]
            struct Row<'a> {
                seed: u64,
                trials: u64,
                check: &'a str,
                cases: u64,
                failures: u64,
                first_failure: String,
            }
            write_rows(v.checks.iter().map(|c| Row {
                seed: v.seed,
                trials: v.trials,
                check: &c.name,
                cases: c.cases,
                failures: c.failures,
                first_failure: opt(&c.first_failure),
            }))
        }
    }
}
