//! Command-line front end. [`run`] returns the process exit code: 0 for
//! success or a true answer, 1 for a false answer or failed verification,
//! 2 for usage errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::action::{verify_action_relations, ActionTable};
use crate::braid::{orbifold_presentation, BraidWord, OrbifoldSignature, SearchLimits, Side};
use crate::coxeter::{CoxeterDiagram, Family};
use crate::embeddings::{
    erase_point, fill_puncture, quotient_class, table1_embedding, thm21_check, thm22_isomorphism_check,
    Table1Row,
};
use crate::garside::GarsideGroup;
use crate::render::{render_ascii, render_svg, RenderOptions};
use crate::weyl::{coset_class_via_weyl, weyl_image};

#[derive(Parser, Debug)]
#[command(name = "orbibraid", version, about = "Artin groups as orbifold braid groups")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct SigArgs {
    /// Orbifold signature, e.g. "n=4;left=cone2;right=puncture".
    #[arg(long)]
    pub sig: Option<String>,
    /// Embedding row whose orbifold to use (with --n).
    #[arg(long)]
    pub row: Option<String>,
    /// Strand count for --row.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print an Artin presentation (diagram such as "Dt5") or, with --sig/--row, the orbifold presentation.
    Present {
        diagram: Option<String>,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Image of an Artin word under the standard embedding on n strands.
    Embed { family: String, n: usize, word: String },
    /// Certify every defining relation of the embedding.
    Verify {
        family: String,
        n: usize,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Search budget in visited words per relation.
        #[arg(long, default_value_t = 200_000)]
        nodes: usize,
    },
    /// Verify every embedding row for all valid n up to --nmax.
    VerifyAll {
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        #[arg(long, default_value_t = 200_000)]
        nodes: usize,
    },
    /// Garside normal form in a spherical Artin group.
    Nf { family: String, rank: usize, word: String },
    /// Word problem in a spherical Artin group: `eq A 2 "g1 g2 g1" -- "g2 g1 g2"`.
    Eq {
        family: String,
        rank: usize,
        left: String,
        #[arg(last = true)]
        right: String,
    },
    /// Class of a braid in the quotient by the row's Artin group.
    Coset {
        word: String,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Image in the (affine) Weyl group.
    Weyl {
        word: String,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Images of the free-product generators under the braid.
    Act {
        word: String,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Try to prove two braids distinct via the outer action.
    Distinct {
        left: String,
        #[arg(last = true)]
        right: String,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// Fill a puncture or erase a special point.
    Map {
        #[arg(value_parser = ["fill", "erase"])]
        op: String,
        side: String,
        word: String,
        #[command(flatten)]
        sig: SigArgs,
    },
    /// The Garside element of a spherical Artin group.
    Delta { family: String, rank: usize },
    /// Draw a braid (ASCII, or SVG to a file).
    Render {
        word: String,
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        svg: Option<std::path::PathBuf>,
    },
    /// Conjugation by Δ in Z_n(k), and centrality of Δ² (odd n) or Δ (even n).
    Thm21 { n: usize },
    /// The central element z = τΔ of Z_n(k), n odd: z² = Δ² and z outside A(D_n).
    Thm22 { n: usize },
}

type Res = Result<i32, String>;

fn signature(a: &SigArgs) -> Result<OrbifoldSignature, String> {
    match (&a.sig, &a.row) {
        (Some(s), None) => s.parse().map_err(|e| format!("{e}")),
        (None, Some(r)) => {
            let row: Table1Row = r.parse().map_err(|e| format!("{e}"))?;
            let n = a.n.ok_or("--row needs --n")?;
            if n < row.min_n() {
                return Err(format!("row {row} needs n >= {}", row.min_n()));
            }
            Ok(row.signature(n))
        }
        _ => Err("give exactly one of --sig or --row/--n".to_string()),
    }
}

fn word(a: &SigArgs, text: &str) -> Result<BraidWord, String> {
    BraidWord::parse(signature(a)?, text).map_err(|e| format!("{e}"))
}

fn diagram(family: &str, rank: usize) -> Result<CoxeterDiagram, String> {
    let f: Family = family.parse().map_err(|e| format!("{e}"))?;
    CoxeterDiagram::classical(f, rank).map_err(|e| format!("{e}"))
}

fn garside(family: &str, rank: usize) -> Result<(CoxeterDiagram, GarsideGroup), String> {
    let d = diagram(family, rank)?;
    let g = GarsideGroup::new(d.family(), rank).map_err(|e| format!("{e}"))?;
    Ok((d, g))
}

fn row(family: &str) -> Result<Table1Row, String> {
    family.parse().map_err(|e| format!("{e}"))
}

fn side(s: &str) -> Result<Side, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn emit(out: &mut dyn Write, json: bool, value: serde_json::Value, text: &str) -> Result<(), String> {
    let r = if json { writeln!(out, "{value}") } else { write!(out, "{text}") };
    r.map_err(|e| e.to_string())
}

fn code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Res {
    let json = cli.json;
    match cli.command {
        Command::Present { diagram: d, sig } => {
            if let Some(text) = d {
                let d: CoxeterDiagram = text.parse().map_err(|e| format!("{e}"))?;
                let p = d.artin_presentation();
                let mut s = format!("{d}: {} generators\n", p.generator_count);
                for r in &p.relations {
                    s += &format!("{} = {}\n", d.format_word(&r.lhs), d.format_word(&r.rhs));
                }
                emit(out, json, d.to_json(), &s)?;
            } else {
                let sig = signature(&sig)?;
                let p = orbifold_presentation(&sig);
                let fmt = |ls: &[crate::braid::BraidLetter]| {
                    if ls.is_empty() {
                        return "1".to_string();
                    }
                    ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
                };
                let mut s = format!("{sig}\n");
                let mut rels = Vec::new();
                for r in &p.relations {
                    s += &format!("{}: {} = {}\n", r.kind, fmt(&r.lhs), fmt(&r.rhs));
                    rels.push(json!({"relation": r.kind.to_string(), "lhs": fmt(&r.lhs), "rhs": fmt(&r.rhs)}));
                }
                emit(out, json, json!({"signature": sig.to_string(), "relations": rels}), &s)?;
            }
            Ok(0)
        }
        Command::Embed { family, n, word } => {
            let spec = table1_embedding(row(&family)?, n).map_err(|e| format!("{e}"))?;
            let a = spec.diagram.parse_word(&word).map_err(|e| format!("{e}"))?;
            let b = spec.apply(&a).map_err(|e| format!("{e}"))?;
            emit(out, json, json!({"signature": b.signature().to_string(), "word": b.to_string()}), &format!("{b}\n"))?;
            Ok(0)
        }
        Command::Verify { family, n, depth, nodes } => {
            let spec = table1_embedding(row(&family)?, n).map_err(|e| format!("{e}"))?;
            let rep = spec.verify(SearchLimits { max_nodes: nodes, ..SearchLimits::with_depth(depth) });
            let mut s = String::new();
            for r in &rep.relations {
                let d = r.depth.map_or("-".to_string(), |d| d.to_string());
                s += &format!("{:<5} depth {:>2}  {}\n", if r.certified { "ok" } else { "FAIL" }, d, r.relation);
            }
            emit(out, json, serde_json::to_value(&rep.relations).unwrap(), &s)?;
            Ok(code(rep.all_certified()))
        }
        Command::VerifyAll { nmax, depth, nodes } => {
            let mut s = format!("{:<8} {:<32} {:<10} {:>3}  verified\n", "row", "orbifold", "quotient", "n");
            let mut rows = Vec::new();
            let mut all = true;
            for r in Table1Row::ALL {
                for n in r.min_n()..=nmax {
                    let spec = table1_embedding(r, n).map_err(|e| format!("{e}"))?;
                    let rep = spec.verify(SearchLimits { max_nodes: nodes, ..SearchLimits::with_depth(depth) });
                    let ok = rep.all_certified();
                    all &= ok;
                    let mark = if ok { "yes".to_string() } else { format!("no ({} open)", rep.failures().len()) };
                    s += &format!("{:<8} {:<32} {:<10} {:>3}  {}\n", r.label(), r.features(), r.quotient(), n, mark);
                    rows.push(json!({"row": r.to_string(), "n": n, "features": r.features(),
                        "quotient": r.quotient(), "verified": ok, "max_depth": rep.max_depth()}));
                }
            }
            emit(out, json, json!(rows), &s)?;
            Ok(code(all))
        }
        Command::Nf { family, rank, word } => {
            let (d, g) = garside(&family, rank)?;
            let w = d.parse_word(&word).map_err(|e| format!("{e}"))?;
            let nf = g.normal_form(&w).map_err(|e| format!("{e}"))?;
            let text = format!("{nf}\n{}\n", d.format_word(&g.nf_word(&nf)));
            emit(out, json, json!({"nf": nf, "word": d.format_word(&g.nf_word(&nf))}), &text)?;
            Ok(0)
        }
        Command::Eq { family, rank, left, right } => {
            let (d, g) = garside(&family, rank)?;
            let u = d.parse_word(&left).map_err(|e| format!("{e}"))?;
            let v = d.parse_word(&right).map_err(|e| format!("{e}"))?;
            let eq = g.equal(&u, &v).map_err(|e| format!("{e}"))?;
            emit(out, json, json!({"equal": eq}), &format!("{}\n", if eq { "equal" } else { "different" }))?;
            Ok(code(eq))
        }
        Command::Coset { word: text, sig } => {
            let r: Table1Row = match &sig.row {
                Some(r) => row(r)?,
                None => return Err("coset needs --row/--n".to_string()),
            };
            let w = word(&sig, &text)?;
            let q = quotient_class(&w, r);
            let c = coset_class_via_weyl(&w, r);
            let text = format!("{q} in {}\nweyl: {c}\n", r.quotient());
            emit(out, json, json!({"class": q, "via_weyl": c, "in_subgroup": q.is_trivial()}), &text)?;
            Ok(code(q == c))
        }
        Command::Weyl { word: text, sig } => {
            let w = word(&sig, &text)?;
            let im = weyl_image(&w);
            emit(out, json, serde_json::to_value(&im).unwrap(), &format!("{im}\n"))?;
            Ok(0)
        }
        Command::Act { word: text, sig } => {
            let w = word(&sig, &text)?;
            let t = ActionTable::new_unchecked(w.signature());
            let act = t.word_action(&w).map_err(|e| e.to_string())?;
            let lines = t.format_action(&act);
            let report = verify_action_relations(&w.signature());
            let mut s = lines.join("\n") + "\n";
            if !report.passed() {
                s += &format!("note: outer class is not an invariant here ({} fail)\n", report.failures().join(", "));
            }
            emit(out, json, json!({"images": lines, "well_defined": report.passed()}), &s)?;
            Ok(0)
        }
        Command::Distinct { left, right, sig } => {
            let u = word(&sig, &left)?;
            let v = word(&sig, &right)?;
            let (distinct, why) = match ActionTable::new(u.signature()) {
                Ok(t) => {
                    let d = t.outclass(&u).map_err(|e| e.to_string())? != t.outclass(&v).map_err(|e| e.to_string())?;
                    (d, String::new())
                }
                Err(e) => (false, e.to_string()),
            };
            let text = if distinct {
                "proven distinct\n".to_string()
            } else if why.is_empty() {
                "not distinguished\n".to_string()
            } else {
                format!("not distinguished: {why}\n")
            };
            emit(out, json, json!({"distinct": distinct}), &text)?;
            Ok(code(distinct))
        }
        Command::Map { op, side: sd, word: text, sig } => {
            let w = word(&sig, &text)?;
            let sd = side(&sd)?;
            let m = if op == "fill" { fill_puncture(&w, sd) } else { erase_point(&w, sd) }.map_err(|e| e.to_string())?;
            emit(out, json, json!({"signature": m.signature().to_string(), "word": m.to_string()}),
                &format!("{}\n{m}\n", m.signature()))?;
            Ok(0)
        }
        Command::Delta { family, rank } => {
            let (d, g) = garside(&family, rank)?;
            let dw = g.delta_word();
            let nf = g.normal_form(&dw).map_err(|e| format!("{e}"))?;
            let text = format!("{}\n{nf}\nw0 = {}\n", d.format_word(&dw), g.longest_element());
            emit(out, json, json!({"word": d.format_word(&dw), "nf": nf}), &text)?;
            Ok(0)
        }
        Command::Render { word: text, sig, svg } => {
            let w = word(&sig, &text)?;
            match svg {
                Some(path) => {
                    std::fs::write(&path, render_svg(&w, &RenderOptions::default())).map_err(|e| e.to_string())?;
                    writeln!(out, "wrote {}", path.display()).map_err(|e| e.to_string())?;
                }
                None => write!(out, "{}", render_ascii(&w)).map_err(|e| e.to_string())?,
            }
            Ok(0)
        }
        Command::Thm21 { n } => {
            let r = thm21_check(n).map_err(|e| format!("{e}"))?;
            emit(out, json, serde_json::to_value(&r).unwrap(), &r.to_string())?;
            Ok(code(r.passed()))
        }
        Command::Thm22 { n } => {
            let r = thm22_isomorphism_check(n).map_err(|e| format!("{e}"))?;
            emit(out, json, serde_json::to_value(&r).unwrap(), &r.to_string())?;
            Ok(code(r.passed()))
        }
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(c) => c,
        Err(m) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}
