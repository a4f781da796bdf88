//! The problem file format.
//!
//! ```text
//! # comment
//! field GF 7            # or: field QQ
//! vars z1 z2
//! order degrevlex       # optional; lex or degrevlex
//! matrix 1 2
//! z1, z2
//! ```
//!
//! After the header comes exactly one body: `matrix r c` or `ncmatrix r c`
//! followed by `r` rows; a trajectory (`window T1 .. Tn`, then
//! `point i1 .. in : v1 .. vr` for every point in lexicographic order); an
//! S-set (`states m`, `generators ...`, `trans j : a -> b`, optional
//! `value a : v1 .. vr`); or `filtration` / `tower` with `dims d0 d1 ...`
//! and `map i : entries` given row-major.

use std::fmt;

use kerrep::behavior::{Trajectory, Window};
use kerrep::duality::{FilteredSpace, FinVect, LinMap, Tower};
use kerrep::expr::{parse_row, ExprError};
use kerrep::freealg::{FreeMatrix, FreePoly, FreeRing, NcTrajectory, SSetTrunc};
use kerrep::linalg::Matrix;
use kerrep::{FieldSpec, Poly, PolyMatrix, Ring, Scalar, TermOrder};

const MAX_MATRIX_SIDE: usize = 256;
const MAX_POINTS: usize = 200_000;
const MAX_STATES: usize = 100_000;
const MAX_COMPONENTS: usize = 64;
const MAX_VARS: usize = 64;
const MAX_LEVELS: usize = 64;
const MAX_LEVEL_DIM: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Matrix(PolyMatrix),
    NcMatrix(FreeMatrix),
    Trajectory(Trajectory),
    SSet { sset: SSetTrunc, values: Option<NcTrajectory> },
    Filtration(FilteredSpace),
    Tower(Tower),
}

impl Body {
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Matrix(_) => "matrix",
            Body::NcMatrix(_) => "ncmatrix",
            Body::Trajectory(_) => "trajectory",
            Body::SSet { .. } => "S-set",
            Body::Filtration(_) => "filtration",
            Body::Tower(_) => "tower",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub order: TermOrder,
    pub body: Body,
}

impl Problem {
    pub fn ring(&self) -> Ring {
        Ring::new(self.field, self.vars.len())
    }
}

struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    fn err(&self, byte: usize, message: impl Into<String>) -> ParseError {
        let column = self.text[..byte.min(self.text.len())].chars().count() + 1;
        ParseError { line: self.no, column, message: message.into() }
    }

    /// Whitespace-separated words with their byte offsets.
    fn words(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in self.text.char_indices() {
            match (c.is_whitespace(), start) {
                (true, Some(s)) => {
                    out.push((s, &self.text[s..i]));
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((s, &self.text[s..]));
        }
        out
    }

    fn end(&self) -> usize {
        self.text.trim_end().len()
    }

    fn expr_err(&self, base: usize, e: ExprError) -> ParseError {
        self.err(base + e.offset, e.message)
    }
}

fn parse_count(line: &Line, (off, w): (usize, &str), max: usize, what: &str) -> Result<usize, ParseError> {
    let n: usize = w.parse().map_err(|_| line.err(off, format!("expected a nonnegative integer for {}", what)))?;
    if n > max {
        return Err(line.err(off, format!("{} {} exceeds the limit {}", what, n, max)));
    }
    Ok(n)
}

fn parse_scalar(field: FieldSpec, line: &Line, (off, w): (usize, &str)) -> Result<Scalar, ParseError> {
    field.parse_scalar(w).map_err(|e| line.err(off, e.to_string()))
}

fn expect_words(line: &Line, words: &[(usize, &str)], n: usize, usage: &str) -> Result<(), ParseError> {
    if words.len() != n {
        let at = words.get(n).map_or(line.end(), |w| w.0);
        return Err(line.err(at, format!("expected `{}`", usage)));
    }
    Ok(())
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `lhs : rhs` into the word lists of both sides.
fn split_colon<'a>(line: &Line<'a>, words: &[(usize, &'a str)], usage: &str) -> Result<(usize, usize), ParseError> {
    match words.iter().position(|w| w.1 == ":") {
        Some(p) => Ok((p, p + 1)),
        None => Err(line.err(line.end(), format!("expected `:` in `{}`", usage))),
    }
}

pub fn parse_problem_bytes(bytes: &[u8]) -> Result<Problem, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse_problem(text),
        Err(e) => {
            let valid = &bytes[..e.valid_up_to()];
            let line = valid.iter().filter(|&&b| b == b'\n').count() + 1;
            let last = valid.iter().rposition(|&b| b == b'\n').map_or(0, |p| p + 1);
            let column = std::str::from_utf8(&valid[last..]).map_or(1, |s| s.chars().count() + 1);
            Err(ParseError { line, column, message: "input is not valid UTF-8".into() })
        }
    }
}

pub fn parse_problem(text: &str) -> Result<Problem, ParseError> {
    let lines: Vec<Line> = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| {
            let l = l.strip_suffix('\r').unwrap_or(l);
            let l = match l.find('#') {
                Some(p) => &l[..p],
                None => l,
            };
            Line { no: i + 1, text: l }
        })
        .filter(|l| !l.text.trim().is_empty())
        .collect();
    let last_line = text.split('\n').count();
    let eof = |msg: &str| ParseError { line: last_line, column: 1, message: msg.into() };

    let mut it = lines.into_iter().peekable();
    let first = it.next().ok_or_else(|| eof("empty problem: expected `field QQ` or `field GF p`"))?;
    let field = parse_field(&first)?;

    let mut vars: Option<Vec<String>> = None;
    let mut order: Option<TermOrder> = None;
    while let Some(line) = it.peek() {
        let words = line.words();
        match words[0].1 {
            "vars" => {
                if vars.is_some() {
                    return Err(line.err(words[0].0, "duplicate `vars` line"));
                }
                vars = Some(parse_vars(line, &words)?);
            }
            "order" => {
                if order.is_some() {
                    return Err(line.err(words[0].0, "duplicate `order` line"));
                }
                expect_words(line, &words, 2, "order lex|degrevlex")?;
                order = Some(match words[1].1 {
                    "lex" => TermOrder::Lex,
                    "degrevlex" => TermOrder::DegRevLex,
                    _ => return Err(line.err(words[1].0, "unknown term order; expected `lex` or `degrevlex`")),
                });
            }
            "field" => return Err(line.err(words[0].0, "duplicate `field` line")),
            _ => break,
        }
        it.next();
    }
    let order = order.unwrap_or(TermOrder::DegRevLex);
    let head = it.next().ok_or_else(|| eof("missing body: expected matrix, ncmatrix, window, states, filtration or tower"))?;
    let rest: Vec<Line> = it.collect();
    let hw = head.words();
    let need_vars = |what: &str| -> Result<Vec<String>, ParseError> {
        vars.clone().ok_or_else(|| head.err(hw[0].0, format!("a {} needs a `vars` line in the header", what)))
    };
    let body = match hw[0].1 {
        "matrix" | "ncmatrix" => {
            let names = need_vars("matrix")?;
            let ring = Ring::new(field, names.len());
            parse_matrix(&head, &hw, &rest, ring, &names)?
        }
        "window" => {
            let names = need_vars("trajectory")?;
            Body::Trajectory(parse_trajectory(&head, &hw, &rest, field, names.len())?)
        }
        "states" => {
            let names = need_vars("S-set")?;
            parse_sset(&head, &hw, &rest, field, names.len())?
        }
        "filtration" | "tower" => parse_chain(&head, &hw, &rest, field)?,
        other => {
            return Err(head.err(hw[0].0, format!("unknown keyword `{}`", other.chars().take(32).collect::<String>())))
        }
    };
    Ok(Problem { field, vars: vars.unwrap_or_default(), order, body })
}

fn parse_field(line: &Line) -> Result<FieldSpec, ParseError> {
    let words = line.words();
    if words[0].1 != "field" {
        return Err(line.err(words[0].0, "expected `field QQ` or `field GF p` as the first line"));
    }
    match words.get(1).map(|w| w.1) {
        Some("QQ") => {
            expect_words(line, &words, 2, "field QQ")?;
            Ok(FieldSpec::rationals())
        }
        Some("GF") => {
            expect_words(line, &words, 3, "field GF p")?;
            let (off, w) = words[2];
            let p: u64 = w.parse().map_err(|_| line.err(off, "expected a prime modulus"))?;
            FieldSpec::prime(p).map_err(|_| line.err(off, format!("{} is not prime", p)))
        }
        _ => Err(line.err(words.get(1).map_or(line.end(), |w| w.0), "expected `QQ` or `GF p`")),
    }
}

fn parse_vars(line: &Line, words: &[(usize, &str)]) -> Result<Vec<String>, ParseError> {
    if words.len() < 2 {
        return Err(line.err(line.end(), "expected at least one variable name"));
    }
    if words.len() - 1 > MAX_VARS {
        return Err(line.err(words[MAX_VARS + 1].0, format!("at most {} variables", MAX_VARS)));
    }
    let mut out: Vec<String> = Vec::new();
    for &(off, w) in &words[1..] {
        if !is_identifier(w) {
            return Err(line.err(off, "variable names must be identifiers"));
        }
        if out.iter().any(|v| v == w) {
            return Err(line.err(off, format!("duplicate variable `{}`", w)));
        }
        out.push(w.to_string());
    }
    Ok(out)
}

fn no_trailing(rest: &[Line], what: &str) -> Result<(), ParseError> {
    match rest.first() {
        Some(l) => Err(l.err(l.text.len() - l.text.trim_start().len(), format!("unexpected line after the {}", what))),
        None => Ok(()),
    }
}

fn parse_matrix(head: &Line, hw: &[(usize, &str)], rest: &[Line], ring: Ring, names: &[String]) -> Result<Body, ParseError> {
    let nc = hw[0].1 == "ncmatrix";
    expect_words(head, hw, 3, &format!("{} rows cols", hw[0].1))?;
    let r = parse_count(head, hw[1], MAX_MATRIX_SIDE, "rows")?;
    let c = parse_count(head, hw[2], MAX_MATRIX_SIDE, "columns")?;
    let nrows = if c == 0 { 0 } else { r };
    if rest.len() < nrows {
        let at = rest.last().unwrap_or(head);
        return Err(ParseError { line: at.no, column: at.text.len() + 1, message: format!("expected {} matrix rows, found {}", r, rest.len()) });
    }
    no_trailing(&rest[nrows..], "matrix")?;
    let free = FreeRing::new(ring.field, ring.nvars);
    let mut prows: Vec<Vec<Poly>> = Vec::new();
    let mut frows: Vec<Vec<FreePoly>> = Vec::new();
    for line in &rest[..nrows] {
        let n = if nc {
            let row = parse_row(&free, names, line.text).map_err(|e| line.expr_err(0, e))?;
            let n = row.len();
            frows.push(row);
            n
        } else {
            let row = parse_row(&ring, names, line.text).map_err(|e| line.expr_err(0, e))?;
            let n = row.len();
            prows.push(row);
            n
        };
        if n != c {
            return Err(line.err(line.end(), format!("expected {} entries, found {}", c, n)));
        }
    }
    if nc {
        if c == 0 {
            return Ok(Body::NcMatrix(FreeMatrix { ring: free, rows: r, cols: 0, entries: Vec::new() }));
        }
        let m = FreeMatrix::from_rows(free, frows).map_err(|e| head.err(0, e.to_string()))?;
        Ok(Body::NcMatrix(m))
    } else {
        if c == 0 || r == 0 {
            return Ok(Body::Matrix(PolyMatrix::zero(ring, r, c)));
        }
        let m = PolyMatrix::from_rows(ring, prows).map_err(|e| head.err(0, e.to_string()))?;
        Ok(Body::Matrix(m))
    }
}

fn parse_trajectory(head: &Line, hw: &[(usize, &str)], rest: &[Line], field: FieldSpec, n: usize) -> Result<Trajectory, ParseError> {
    if hw.len() != n + 1 {
        return Err(head.err(hw.get(n + 1).map_or(head.end(), |w| w.0), format!("expected {} window bounds", n)));
    }
    let mut bounds = Vec::with_capacity(n);
    let mut total: usize = 1;
    for &w in &hw[1..] {
        let t = parse_count(head, w, MAX_POINTS, "window bound")?;
        total = total.saturating_mul(t + 1);
        if total > MAX_POINTS {
            return Err(head.err(w.0, format!("window has more than {} points", MAX_POINTS)));
        }
        bounds.push(t as u32);
    }
    let window = Window::new(bounds);
    let points = window.points();
    let mut r0 = None;
    let mut values = Vec::with_capacity(points.len());
    for (k, line) in rest.iter().enumerate() {
        let words = line.words();
        if words[0].1 != "point" {
            return Err(line.err(words[0].0, "expected `point i1 .. in : v1 .. vr`"));
        }
        let Some(expected) = points.get(k) else {
            return Err(line.err(words[0].0, "more points than the window holds"));
        };
        let (colon, vstart) = split_colon(line, &words, "point i1 .. in : v1 .. vr")?;
        if colon != n + 1 {
            return Err(line.err(words[colon.min(words.len() - 1)].0, format!("expected {} coordinates", n)));
        }
        for (j, &w) in words[1..colon].iter().enumerate() {
            let x: u32 = w.1.parse().map_err(|_| line.err(w.0, "expected a coordinate"))?;
            if x != expected[j] {
                return Err(line.err(w.0, format!("points must be listed in lexicographic order; expected {:?}", expected)));
            }
        }
        let vals = &words[vstart..];
        match r0 {
            None => {
                if vals.is_empty() || vals.len() > MAX_COMPONENTS {
                    return Err(line.err(line.end(), format!("expected between 1 and {} values", MAX_COMPONENTS)));
                }
                r0 = Some(vals.len());
            }
            Some(r) if r != vals.len() => {
                return Err(line.err(line.end(), format!("expected {} values, found {}", r, vals.len())));
            }
            _ => {}
        }
        values.push(vals.iter().map(|&w| parse_scalar(field, line, w)).collect::<Result<Vec<_>, _>>()?);
    }
    if values.len() != points.len() {
        let at = rest.last().unwrap_or(head);
        return Err(ParseError {
            line: at.no,
            column: at.text.len() + 1,
            message: format!("expected {} points, found {}", points.len(), values.len()),
        });
    }
    Trajectory::new(field, window, r0.unwrap_or(0), values).map_err(|e| head.err(0, e.to_string()))
}

fn parse_sset(head: &Line, hw: &[(usize, &str)], rest: &[Line], field: FieldSpec, n: usize) -> Result<Body, ParseError> {
    expect_words(head, hw, 2, "states m")?;
    let m = parse_count(head, hw[1], MAX_STATES, "states")?;
    let mut generators: Option<Vec<usize>> = None;
    let mut trans = Vec::new();
    let mut values: Vec<Option<Vec<Scalar>>> = vec![None; m];
    let mut r0 = None;
    let mut any_value = false;
    for line in rest {
        let words = line.words();
        let state = |w: (usize, &str)| -> Result<usize, ParseError> {
            let s: usize = w.1.parse().map_err(|_| line.err(w.0, "expected a state index"))?;
            if s >= m {
                return Err(line.err(w.0, format!("state {} out of range 0..{}", s, m)));
            }
            Ok(s)
        };
        match words[0].1 {
            "generators" => {
                if generators.is_some() {
                    return Err(line.err(words[0].0, "duplicate `generators` line"));
                }
                if words.len() < 2 {
                    return Err(line.err(line.end(), "expected at least one generator state"));
                }
                generators = Some(words[1..].iter().map(|&w| state(w)).collect::<Result<_, _>>()?);
            }
            "trans" => {
                expect_words(line, &words, 6, "trans j : a -> b")?;
                if words[2].1 != ":" || words[4].1 != "->" {
                    return Err(line.err(words[2].0, "expected `trans j : a -> b`"));
                }
                let j: usize = words[1].1.parse().map_err(|_| line.err(words[1].0, "expected a letter index"))?;
                if j == 0 || j > n {
                    return Err(line.err(words[1].0, format!("letter {} out of range 1..={}", j, n)));
                }
                let (a, b) = (state(words[3])?, state(words[5])?);
                if trans.iter().any(|&(l, x, y)| l == j - 1 && x == a && y != b) {
                    return Err(line.err(words[0].0, format!("conflicting transition for letter {} at state {}", j, a)));
                }
                trans.push((j - 1, a, b));
            }
            "value" => {
                let (colon, vstart) = split_colon(line, &words, "value a : v1 .. vr")?;
                if colon != 2 {
                    return Err(line.err(words[1.min(words.len() - 1)].0, "expected `value a : v1 .. vr`"));
                }
                let a = state(words[1])?;
                if values[a].is_some() {
                    return Err(line.err(words[1].0, format!("duplicate value for state {}", a)));
                }
                let vals = &words[vstart..];
                match r0 {
                    None if vals.is_empty() || vals.len() > MAX_COMPONENTS => {
                        return Err(line.err(line.end(), format!("expected between 1 and {} values", MAX_COMPONENTS)))
                    }
                    None => r0 = Some(vals.len()),
                    Some(r) if r != vals.len() => {
                        return Err(line.err(line.end(), format!("expected {} values, found {}", r, vals.len())))
                    }
                    _ => {}
                }
                values[a] = Some(vals.iter().map(|&w| parse_scalar(field, line, w)).collect::<Result<_, _>>()?);
                any_value = true;
            }
            other => {
                return Err(line.err(words[0].0, format!("unknown S-set line `{}`", other.chars().take(32).collect::<String>())))
            }
        }
    }
    let generators = generators.ok_or_else(|| head.err(hw[0].0, "S-set needs a `generators` line"))?;
    let sset = SSetTrunc::new(n, m, generators, &trans).map_err(|e| head.err(hw[0].0, e.to_string()))?;
    let values = if any_value {
        if let Some(s) = values.iter().position(Option::is_none) {
            return Err(head.err(hw[0].0, format!("state {} has no value", s)));
        }
        let vals: Vec<Vec<Scalar>> = values.into_iter().map(Option::unwrap).collect();
        Some(NcTrajectory::new(sset.clone(), r0.unwrap_or(0), vals).map_err(|e| head.err(hw[0].0, e.to_string()))?)
    } else {
        None
    };
    Ok(Body::SSet { sset, values })
}

fn parse_chain(head: &Line, hw: &[(usize, &str)], rest: &[Line], field: FieldSpec) -> Result<Body, ParseError> {
    let tower = hw[0].1 == "tower";
    expect_words(head, hw, 1, hw[0].1)?;
    let Some((dline, maps)) = rest.split_first() else {
        return Err(head.err(head.end(), "expected a `dims` line"));
    };
    let dw = dline.words();
    if dw[0].1 != "dims" {
        return Err(dline.err(dw[0].0, "expected `dims d0 d1 ...`"));
    }
    if dw.len() - 1 > MAX_LEVELS {
        return Err(dline.err(dw[MAX_LEVELS + 1].0, format!("at most {} levels", MAX_LEVELS)));
    }
    let dims: Vec<usize> = dw[1..].iter().map(|&w| parse_count(dline, w, MAX_LEVEL_DIM, "dimension")).collect::<Result<_, _>>()?;
    let levels: Vec<FinVect> = dims.iter().map(|&d| FinVect::new(field, d)).collect();
    let nmaps = dims.len().saturating_sub(1);
    let mut mats: Vec<Option<LinMap>> = vec![None; nmaps];
    for line in maps {
        let words = line.words();
        if words[0].1 != "map" {
            return Err(line.err(words[0].0, "expected `map i : entries`"));
        }
        let (colon, vstart) = split_colon(line, &words, "map i : entries")?;
        if colon != 2 {
            return Err(line.err(words[1.min(words.len() - 1)].0, "expected `map i : entries`"));
        }
        let i: usize = words[1].1.parse().map_err(|_| line.err(words[1].0, "expected a map index"))?;
        if i >= nmaps {
            return Err(line.err(words[1].0, format!("map index {} out of range 0..{}", i, nmaps)));
        }
        if mats[i].is_some() {
            return Err(line.err(words[1].0, format!("duplicate map {}", i)));
        }
        let (rows, cols) = if tower { (dims[i], dims[i + 1]) } else { (dims[i + 1], dims[i]) };
        let entries = &words[vstart..];
        if entries.len() != rows * cols {
            return Err(line.err(line.end(), format!("expected {} entries ({}x{} row-major), found {}", rows * cols, rows, cols, entries.len())));
        }
        let vals: Vec<Scalar> = entries.iter().map(|&w| parse_scalar(field, line, w)).collect::<Result<_, _>>()?;
        let mut m = Matrix::zero(field, rows, cols);
        for (k, v) in vals.into_iter().enumerate() {
            m.set(k / cols, k % cols, v);
        }
        mats[i] = Some(LinMap::from_matrix(m));
    }
    if let Some(i) = mats.iter().position(Option::is_none) {
        return Err(head.err(hw[0].0, format!("missing map {}", i)));
    }
    let mats: Vec<LinMap> = mats.into_iter().map(Option::unwrap).collect();
    if tower {
        Tower::new(field, levels, mats).map(Body::Tower).map_err(|e| head.err(hw[0].0, e.to_string()))
    } else {
        FilteredSpace::new(field, levels, mats).map(Body::Filtration).map_err(|e| head.err(hw[0].0, e.to_string()))
    }
}

pub fn fmt_scalar(s: &Scalar) -> String {
    let (neg, mag) = s.signed_parts();
    if neg {
        format!("-{}", mag)
    } else {
        mag
    }
}

pub fn fmt_field(f: FieldSpec) -> String {
    match f.modulus() {
        Some(p) => format!("GF {}", p),
        None => "QQ".into(),
    }
}

fn fmt_order(o: TermOrder) -> &'static str {
    match o {
        TermOrder::Lex => "lex",
        TermOrder::DegRevLex => "degrevlex",
    }
}

/// Trajectory body lines (`window ...` and `point ...`).
pub fn fmt_trajectory(w: &Trajectory) -> String {
    let mut out = String::new();
    let bounds: Vec<String> = w.window.bounds.iter().map(u32::to_string).collect();
    out.push_str(&format!("window {}\n", bounds.join(" ")));
    for (t, v) in w.window.points().iter().zip(&w.values) {
        let coords: Vec<String> = t.iter().map(u32::to_string).collect();
        let vals: Vec<String> = v.iter().map(fmt_scalar).collect();
        out.push_str(&format!("point {} : {}\n", coords.join(" "), vals.join(" ")));
    }
    out
}

pub fn fmt_matrix_rows(m: &PolyMatrix, names: &[String]) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        if m.cols() == 0 {
            break;
        }
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).fmt_with(names)).collect();
        out.push_str(&row.join(", "));
        out.push('\n');
    }
    out
}

fn fmt_entries(m: &Matrix) -> String {
    let mut v = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            v.push(fmt_scalar(m.get(i, j)));
        }
    }
    v.join(" ")
}

fn fmt_chain(kind: &str, dims: &[usize], maps: &[LinMap]) -> String {
    let mut out = format!("{}\n", kind);
    let d: Vec<String> = dims.iter().map(usize::to_string).collect();
    out.push_str(&format!("dims {}\n", d.join(" ")));
    for (i, m) in maps.iter().enumerate() {
        let e = fmt_entries(&m.matrix);
        if e.is_empty() {
            out.push_str(&format!("map {} :\n", i));
        } else {
            out.push_str(&format!("map {} : {}\n", i, e));
        }
    }
    out
}

pub fn fmt_tower(t: &Tower) -> String {
    fmt_chain("tower", &t.dims(), &t.transitions)
}

pub fn fmt_filtration(f: &FilteredSpace) -> String {
    fmt_chain("filtration", &f.dims(), &f.inclusions)
}

/// Canonical text of a problem; parsing it gives back an equal problem.
pub fn print_problem(p: &Problem) -> String {
    let mut out = format!("field {}\n", fmt_field(p.field));
    if !p.vars.is_empty() {
        out.push_str(&format!("vars {}\n", p.vars.join(" ")));
    }
    out.push_str(&format!("order {}\n", fmt_order(p.order)));
    match &p.body {
        Body::Matrix(m) => {
            out.push_str(&format!("matrix {} {}\n", m.rows(), m.cols()));
            out.push_str(&fmt_matrix_rows(m, &p.vars));
        }
        Body::NcMatrix(m) => {
            out.push_str(&format!("ncmatrix {} {}\n", m.rows, m.cols));
            for i in 0..m.rows {
                if m.cols == 0 {
                    break;
                }
                let row: Vec<String> = (0..m.cols).map(|j| m.get(i, j).fmt_with(&p.vars)).collect();
                out.push_str(&row.join(", "));
                out.push('\n');
            }
        }
        Body::Trajectory(w) => out.push_str(&fmt_trajectory(w)),
        Body::SSet { sset, values } => {
            out.push_str(&format!("states {}\n", sset.nstates()));
            let g: Vec<String> = sset.generators().iter().map(usize::to_string).collect();
            out.push_str(&format!("generators {}\n", g.join(" ")));
            for (l, a, b) in sset.transitions() {
                out.push_str(&format!("trans {} : {} -> {}\n", l + 1, a, b));
            }
            if let Some(v) = values {
                for (a, vals) in v.values.iter().enumerate() {
                    let s: Vec<String> = vals.iter().map(fmt_scalar).collect();
                    out.push_str(&format!("value {} : {}\n", a, s.join(" ")));
                }
            }
        }
        Body::Filtration(f) => out.push_str(&fmt_filtration(f)),
        Body::Tower(t) => out.push_str(&fmt_tower(t)),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(text: &str) -> ParseError {
        parse_problem(text).unwrap_err()
    }

    #[test]
    fn matrix_files() {
        let p = parse_problem("field GF 7\nvars z\nmatrix 1 1\nz^2 - z - 1\n").unwrap();
        assert_eq!(p.field, FieldSpec::prime(7).unwrap());
        let Body::Matrix(m) = &p.body else { panic!() };
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(m.get(0, 0).fmt_with(&p.vars), "z^2 - z - 1");

        let p = parse_problem("field QQ\nvars z1 z2\nmatrix 1 2\nz1  z2\n").unwrap();
        let Body::Matrix(m) = &p.body else { panic!() };
        assert_eq!(m.cols(), 2);

        let p = parse_problem("field QQ\nvars z\nmatrix 1 0\n").unwrap();
        assert_eq!(p.body, Body::Matrix(PolyMatrix::zero(p.ring(), 1, 0)));
    }

    #[test]
    fn header_errors() {
        let e = err("field GF 4\nvars z\nmatrix 1 1\nz\n");
        assert_eq!((e.line, e.column), (1, 10));
        assert!(e.message.contains("4 is not prime"));
        assert_eq!(err("").line, 1);
        assert_eq!(err("# only a comment\n").message, "empty problem: expected `field QQ` or `field GF p`");
        assert_eq!(err("vars z\n").column, 1);
        assert_eq!(err("field QQ\nvars z z\nmatrix 1 1\nz\n").column, 8);
        assert!(err("field QQ\nvars z\n").message.starts_with("missing body"));
        assert!(err("field QQ\nmatrix 1 1\n1\n").message.contains("vars"));
        assert!(err("field QQ\nvars z\nfield QQ\n").message.contains("duplicate"));
        assert!(err("field QQ extra\n").message.contains("field QQ"));
    }

    #[test]
    fn body_errors_report_positions() {
        let e = err("field QQ\nvars z\nmatrix 1 1\nz x\n");
        assert_eq!(e.line, 4);
        let e = err("field QQ\nvars z\nmatrix 1 1\n2 z\n");
        assert_eq!((e.line, e.message.as_str()), (4, "expected 1 entries, found 2"));
        let e = err("field QQ\nvars z\nmatrix 1 1\ny\n");
        assert_eq!((e.line, e.column), (4, 1));
        assert!(e.message.contains("unknown variable"));
        let e = err("field QQ\nvars z\nmatrix 2 1\nz\n");
        assert!(e.message.contains("expected 2 matrix rows"));
        let e = err("field QQ\nvars z\nmatrix 1 1\nz\nz\n");
        assert_eq!(e.line, 5);
        let e = err("field QQ\nvars z\nmatrix 999 1\n");
        assert_eq!((e.line, e.column), (3, 8));
    }

    #[test]
    fn trajectories() {
        let text = "field QQ\nvars z\nwindow 2\npoint 0 : 1\npoint 1 : 1\npoint 2 : 2\n";
        let p = parse_problem(text).unwrap();
        let Body::Trajectory(w) = &p.body else { panic!() };
        assert_eq!(w.scalars().len(), 3);
        assert_eq!(print_problem(&p), "field QQ\nvars z\norder degrevlex\nwindow 2\npoint 0 : 1\npoint 1 : 1\npoint 2 : 2\n");
        let e = err("field QQ\nvars z\nwindow 2\npoint 0 : 1\npoint 2 : 1\n");
        assert_eq!((e.line, e.column), (5, 7));
        let e = err("field QQ\nvars z\nwindow 2\npoint 0 : 1\n");
        assert!(e.message.contains("expected 3 points"));
        let e = err("field QQ\nvars z1 z2\nwindow 1\n");
        assert!(e.message.contains("2 window bounds"));
        let e = err("field QQ\nvars z\nwindow 1\npoint 0 : 1 2\npoint 1 : 1\n");
        assert!(e.message.contains("expected 2 values"));
    }

    #[test]
    fn ssets() {
        let text = "field QQ\nvars a b\nstates 3\ngenerators 0\ntrans 1 : 0 -> 1\ntrans 2 : 0 -> 2\nvalue 0 : 1\nvalue 1 : 1\nvalue 2 : 1\n";
        let p = parse_problem(text).unwrap();
        let Body::SSet { sset, values } = &p.body else { panic!() };
        assert_eq!(sset.nstates(), 3);
        assert!(values.is_some());
        assert_eq!(parse_problem(&print_problem(&p)).unwrap(), p);
        assert!(err("field QQ\nvars a\nstates 2\ngenerators 0\n").message.contains("not reachable"));
        assert!(err("field QQ\nvars a\nstates 2\ngenerators 0\ntrans 2 : 0 -> 1\n").message.contains("out of range"));
        assert!(err("field QQ\nvars a\nstates 2\ngenerators 0\ntrans 1 : 0 -> 1\nvalue 0 : 1\n").message.contains("no value"));
    }

    #[test]
    fn chains() {
        let text = "field GF 2\nfiltration\ndims 1 2\nmap 0 : 1 0\n";
        let p = parse_problem(text).unwrap();
        let Body::Filtration(f) = &p.body else { panic!() };
        assert_eq!(f.dims(), [1, 2]);
        assert_eq!(parse_problem(&print_problem(&p)).unwrap(), p);
        assert!(err("field GF 2\nfiltration\ndims 2 2\nmap 0 : 1 1 1 1\n").message.contains("not injective"));
        assert!(err("field GF 2\ntower\ndims 2 1\nmap 0 : 1\n").message.contains("expected 2 entries"));
        let p = parse_problem("field GF 3\ntower\ndims 0 0\nmap 0 :\n").unwrap();
        assert_eq!(parse_problem(&print_problem(&p)).unwrap(), p);
    }

    #[test]
    fn invalid_utf8() {
        let e = parse_problem_bytes(b"field QQ\nva\xffrs z\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
    }

    #[test]
    fn printing_is_idempotent() {
        for text in [
            "field GF 7\nvars z\nmatrix 1 1\n  -z + z^2 -1 \n",
            "field QQ\nvars x y\norder lex\nmatrix 2 2\n(x+y)^2, 1/2*x\n0 y*x\n",
            "field QQ\nvars a b\nncmatrix 1 2\na*b - b*a, (a+b)*(a+b)\n",
        ] {
            let once = print_problem(&parse_problem(text).unwrap());
            let twice = print_problem(&parse_problem(&once).unwrap());
            assert_eq!(once, twice);
        }
    }
}
