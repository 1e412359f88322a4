//! Text, JSON and LaTeX renderings of components and Poincaré polynomials.

use std::collections::BTreeMap;

use mzero_core::schema::{format_rational, to_document, Basis};
use mzero_core::symfunc::{poincare_from, to_schur_basis};
use mzero_core::tpoly::Rational;
use mzero_core::{BiSymFunc, Partition, TPoly};
use num_traits::{One, Signed};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

/// One computed component ready for output.
#[derive(Clone, Debug)]
pub struct Row {
    pub m: usize,
    pub n: usize,
    pub value: BiSymFunc,
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub basis: Basis,
    pub format: Format,
    pub tmax: Option<i32>,
    pub poincare_only: bool,
    /// Show the Poincaré polynomial alongside the characteristic.
    pub with_poincare: bool,
}

fn clip_poly(p: &TPoly, tmax: Option<i32>) -> TPoly {
    match tmax {
        Some(hi) => TPoly::from_pairs(p.terms().filter(|(e, _)| *e <= hi).map(|(e, c)| (e, c.clone()))),
        None => p.clone(),
    }
}

fn clip(f: &BiSymFunc, tmax: Option<i32>) -> BiSymFunc {
    match tmax {
        Some(_) => f.map_coeffs(|_, _, c| clip_poly(c, tmax)),
        None => f.clone(),
    }
}

fn expansion(f: &BiSymFunc, basis: Basis) -> BTreeMap<(Partition, Partition), TPoly> {
    match basis {
        Basis::Schur => to_schur_basis(f),
        Basis::PowerSum => f.terms().clone(),
    }
}

fn coefficient_vector(p: &TPoly) -> Value {
    match p.to_int_vec() {
        Some(v) => json!(v),
        None => json!(p.terms().map(|(e, c)| (e, format_rational(c))).collect::<Vec<_>>()),
    }
}

fn rational_text(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn t_power(e: i32, latex: bool) -> String {
    match (e, latex) {
        (0, _) => String::new(),
        (1, _) => "t".into(),
        (e, true) => format!("t^{{{e}}}"),
        (e, false) => format!("t^{e}"),
    }
}

/// `1 + 26t^2 - t^3`.
pub fn poly_text(p: &TPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let t = t_power(e, false);
        let coef = rational_text(&a);
        if t.is_empty() {
            out.push_str(&coef);
        } else if a.is_one() {
            out.push_str(&t);
        } else if a.is_integer() {
            out.push_str(&format!("{coef}{t}"));
        } else {
            out.push_str(&format!("({coef}){t}"));
        }
    }
    out
}

fn latex_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

/// `1+26t^{2}-t^{3}`.
pub fn poly_latex(p: &TPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in p.terms().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let a = c.abs();
        let t = t_power(e, true);
        if t.is_empty() || !a.is_one() {
            out.push_str(&latex_rational(&a));
        }
        out.push_str(&t);
    }
    out
}

fn partition_text(l: &Partition) -> String {
    let parts: Vec<String> = l.parts().iter().map(|p| p.to_string()).collect();
    parts.join(",")
}

/// `2,1^2` for the partition (2,1,1).
fn partition_latex(l: &Partition) -> String {
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &p in l.parts() {
        match groups.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => groups.push((p, 1)),
        }
    }
    let parts: Vec<String> = groups
        .into_iter()
        .map(|(p, k)| if k == 1 { p.to_string() } else { format!("{p}^{k}") })
        .collect();
    parts.join(",")
}

fn letter(basis: Basis) -> char {
    match basis {
        Basis::Schur => 's',
        Basis::PowerSum => 'p',
    }
}

fn symbols_text(l1: &Partition, l2: &Partition, basis: Basis) -> String {
    let x = letter(basis);
    let f = |l: &Partition| {
        if l.is_empty() {
            "1".to_string()
        } else {
            format!("{x}[{}]", partition_text(l))
        }
    };
    format!("{}⊗{}", f(l1), f(l2))
}

fn symbols_latex(l1: &Partition, l2: &Partition, basis: Basis) -> String {
    let x = letter(basis);
    let mut out = String::new();
    for (i, l) in [(1, l1), (2, l2)] {
        if !l.is_empty() {
            out.push_str(&format!("{x}^{{({i})}}_{{{}}}", partition_latex(l)));
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

/// One line per basis element: `(1 + t^2) s[2]⊗s[2]`.
pub fn characteristic_text(f: &BiSymFunc, basis: Basis) -> Vec<String> {
    expansion(f, basis)
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((l1, l2), c)| {
            let sym = symbols_text(&l1, &l2, basis);
            if c.is_one() {
                sym
            } else if c.len() == 1 {
                format!("{} {sym}", poly_text(&c))
            } else {
                format!("({}) {sym}", poly_text(&c))
            }
        })
        .collect()
}

/// The characteristic as a sum grouped by power of `t`, terms sorted by
/// `(t-exponent, λ1, λ2)`.
pub fn characteristic_latex(f: &BiSymFunc, basis: Basis) -> String {
    let mut by_exp: BTreeMap<i32, Vec<(Partition, Partition, Rational)>> = BTreeMap::new();
    for ((l1, l2), c) in expansion(f, basis) {
        for (e, v) in c.terms() {
            by_exp.entry(e).or_default().push((l1.clone(), l2.clone(), v.clone()));
        }
    }
    if by_exp.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, terms)) in by_exp.into_iter().enumerate() {
        let negative = terms.iter().all(|(_, _, v)| v.is_negative());
        if negative {
            out.push_str(if i == 0 { "-" } else { " - " });
        } else if i > 0 {
            out.push_str(" + ");
        }
        let t = t_power(e, true);
        let term = |c: &Rational, l1: &Partition, l2: &Partition| {
            let sym = symbols_latex(l1, l2, basis);
            if c.is_one() {
                sym
            } else {
                format!("{}{sym}", latex_rational(c))
            }
        };
        if terms.len() == 1 {
            let (l1, l2, v) = &terms[0];
            let c = if negative { -v } else { v.clone() };
            let coef = if c.is_one() { String::new() } else { latex_rational(&c) };
            out.push_str(&format!("{coef}{t}{}", symbols_latex(l1, l2, basis)));
            continue;
        }
        let mut body = String::new();
        for (j, (l1, l2, v)) in terms.iter().enumerate() {
            let c = if negative { -v } else { v.clone() };
            if c.is_negative() {
                body.push_str(if j == 0 { "-" } else { " - " });
            } else if j > 0 {
                body.push_str(" + ");
            }
            body.push_str(&term(&c.abs(), l1, l2));
        }
        out.push_str(&format!("{t}\\left( {body} \\right)"));
    }
    out
}

fn row_poincare(row: &Row, opts: &Options) -> TPoly {
    clip_poly(&poincare_from(&row.value, row.m, row.n), opts.tmax)
}

pub fn render_rows(rows: &[Row], opts: &Options) -> String {
    match opts.format {
        Format::Text => render_text(rows, opts),
        Format::Json => render_json(rows, opts),
        Format::Latex => render_latex(rows, opts),
    }
}

fn render_text(rows: &[Row], opts: &Options) -> String {
    let mut out = String::new();
    for row in rows {
        if opts.poincare_only {
            out.push_str(&format!("({},{}) {}\n", row.m, row.n, poly_text(&row_poincare(row, opts))));
            continue;
        }
        out.push_str(&format!("({},{})\n", row.m, row.n));
        let f = clip(&row.value, opts.tmax);
        let lines = characteristic_text(&f, opts.basis);
        if lines.is_empty() {
            out.push_str("  0\n");
        }
        for line in lines {
            out.push_str(&format!("  {line}\n"));
        }
        if opts.with_poincare {
            out.push_str(&format!("  poincare: {}\n", poly_text(&row_poincare(row, opts))));
        }
    }
    out
}

fn row_json(row: &Row, opts: &Options) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("m".into(), json!(row.m));
    obj.insert("n".into(), json!(row.n));
    if !opts.poincare_only {
        let doc = to_document(&clip(&row.value, opts.tmax), opts.basis);
        obj.insert("characteristic".into(), serde_json::to_value(doc).expect("documents serialize"));
    }
    if opts.poincare_only || opts.with_poincare {
        obj.insert("poincare".into(), coefficient_vector(&row_poincare(row, opts)));
    }
    Value::Object(obj)
}

fn render_json(rows: &[Row], opts: &Options) -> String {
    let value = match rows {
        [row] => row_json(row, opts),
        _ => Value::Array(rows.iter().map(|r| row_json(r, opts)).collect()),
    };
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

fn render_latex(rows: &[Row], opts: &Options) -> String {
    let mut out = String::new();
    for row in rows {
        let p = poly_latex(&row_poincare(row, opts));
        if opts.poincare_only {
            out.push_str(&format!("({},{}) & {p} \\\\ \\hline\n", row.m, row.n));
            continue;
        }
        let ch = characteristic_latex(&clip(&row.value, opts.tmax), opts.basis);
        if opts.with_poincare {
            out.push_str(&format!("({},{}) & {ch} & {p} \\\\ \\hline\n", row.m, row.n));
        } else {
            out.push_str(&format!("({},{}) & {ch} \\\\ \\hline\n", row.m, row.n));
        }
    }
    out
}
