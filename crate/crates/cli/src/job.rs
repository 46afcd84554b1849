//! Job files.
//!
//! ```text
//! ring t(1) x(2);
//! shift [0];
//! module [[t1 - x1*x2], [dx1 + x2*dt1], [dx2 + x1*dt1]];
//! command bfunction route=t0;
//! ```
//!
//! Options are `key=value` pairs: `route=t0|h`, `depth=<int>`,
//! `window=k0,k1`, `f=[op, ...]`, `with=[[op, ...], ...]`,
//! `weights=[[int, ...], ...]` and `tie=grevlex|lex`. Lines starting with `#`
//! are comments.

use std::fmt;
use std::str::FromStr;

use dmod_core::groebner::Route;
use dmod_core::order::Tie;
use dmod_core::text::{parse_at, parse_vector_at};
use dmod_core::{DmodError, Extension, Operator, Result, Ring, RingSpec, ShiftVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Gb,
    Resolution,
    Bfunction,
    Restrict,
    Tensor,
    Localize,
    Localcohom,
    Bsato,
    Annfs,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Gb,
        Command::Resolution,
        Command::Bfunction,
        Command::Restrict,
        Command::Tensor,
        Command::Localize,
        Command::Localcohom,
        Command::Bsato,
        Command::Annfs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Gb => "gb",
            Command::Resolution => "resolution",
            Command::Bfunction => "bfunction",
            Command::Restrict => "restrict",
            Command::Tensor => "tensor",
            Command::Localize => "localize",
            Command::Localcohom => "localcohom",
            Command::Bsato => "bsato",
            Command::Annfs => "annfs",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Command, String> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown command `{s}`"))
    }
}

#[derive(Clone, Debug, Default)]
pub struct JobOptions {
    pub route: Option<Route>,
    pub depth: Option<usize>,
    pub window: Option<(i64, i64)>,
    /// Polynomials for the functor commands.
    pub f: Vec<Operator>,
    /// Second module for `tensor`.
    pub with: Vec<Operator>,
    pub weights: Vec<Vec<i64>>,
    pub tie: Option<Tie>,
}

#[derive(Clone, Debug)]
pub struct JobFile {
    pub ring: Ring,
    pub shift: Option<ShiftVector>,
    pub module: Vec<Operator>,
    pub command: Command,
    pub options: JobOptions,
}

impl JobFile {
    pub fn rank(&self) -> usize {
        self.module.first().map_or(0, |g| g.rank)
    }

    pub fn shift_or_zero(&self) -> ShiftVector {
        self.shift.clone().unwrap_or_else(|| ShiftVector::zero(self.rank()))
    }
}

pub fn parse_route(s: &str) -> std::result::Result<Route, String> {
    match s {
        "t0" => Ok(Route::T0),
        "h" => Ok(Route::H),
        _ => Err(format!("unknown route `{s}` (expected t0 or h)")),
    }
}

pub fn parse_window(s: &str) -> std::result::Result<(i64, i64), String> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let a: i64 = a.parse().map_err(|_| format!("bad window bound `{a}`"))?;
            let b: i64 = b.parse().map_err(|_| format!("bad window bound `{b}`"))?;
            if a > b {
                return Err(format!("empty window [{a}, {b}]"));
            }
            Ok((a, b))
        }
        _ => Err(format!("window must be `k0,k1`, got `{s}`")),
    }
}

pub fn parse_ints(s: &str) -> std::result::Result<Vec<i64>, String> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<i64>().map_err(|_| format!("bad integer `{p}`")))
        .collect()
}

struct Src<'a> {
    text: &'a str,
}

impl Src<'_> {
    fn line_col(&self, off: usize) -> (usize, usize) {
        let before = &self.text[..off.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rfind('\n').map_or(before.chars().count(), |p| before[p + 1..].chars().count()) + 1;
        (line, col)
    }

    fn err(&self, off: usize, msg: impl Into<String>) -> DmodError {
        let (line, col) = self.line_col(off);
        DmodError::Parse { line, col, msg: msg.into() }
    }
}

/// Splits `[a, [b], c]`-style text at top-level commas inside the outer
/// brackets, returning (offset, piece) pairs relative to `s`.
fn split_list(s: &str) -> std::result::Result<Vec<(usize, &str)>, (usize, String)> {
    let t = s.trim_end();
    let start = s.len() - s.trim_start().len();
    if !t[start..].starts_with('[') || !t.ends_with(']') {
        return Err((start, "expected a bracketed list".into()));
    }
    let (open, close) = (start + 1, t.len() - 1);
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut piece = open;
    for (i, c) in s[open..close].char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((piece, &s[piece..open + i]));
                piece = open + i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return Err((open + i, "unbalanced bracket".into()));
        }
    }
    if depth != 0 {
        return Err((close, "unbalanced bracket".into()));
    }
    if !s[piece..close].trim().is_empty() || !out.is_empty() {
        out.push((piece, &s[piece..close]));
    }
    Ok(out)
}

fn leading_ws(s: &str) -> usize {
    s.len() - s.trim_start().len()
}

fn parse_ring(src: &Src, off: usize, body: &str) -> Result<Ring> {
    let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || src.err(off, format!("expected `ring t(<d>) x(<n>) [h|t0]`, got `ring {}`", body.trim()));
    let rest = compact.strip_prefix("t(").ok_or_else(bad)?;
    let (d, rest) = rest.split_once(')').ok_or_else(bad)?;
    let rest = rest.strip_prefix("x(").ok_or_else(bad)?;
    let (n, rest) = rest.split_once(')').ok_or_else(bad)?;
    let d: usize = d.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    let ext = match rest {
        "" => Extension::None,
        "h" => Extension::H,
        "t0" => Extension::T0,
        _ => return Err(bad()),
    };
    Ok(RingSpec::new(d, n, ext).into_ring())
}

fn parse_rows(src: &Src, ring: &Ring, off: usize, body: &str) -> Result<Vec<Operator>> {
    let rows = split_list(body).map_err(|(o, m)| src.err(off + o, m))?;
    if rows.is_empty() {
        return Err(src.err(off, "the module needs at least one generator"));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (o, row) in rows {
        let lead = leading_ws(row);
        let g = parse_vector_at(ring, row.trim(), src.line_col(off + o + lead))?;
        if let Some(first) = out.first().map(|g: &Operator| g.rank) {
            if g.rank != first {
                return Err(src.err(off + o, format!("row of length {} after rows of length {first}", g.rank)));
            }
        }
        out.push(g);
    }
    Ok(out)
}

fn parse_ops(src: &Src, ring: &Ring, off: usize, body: &str) -> Result<Vec<Operator>> {
    let items = split_list(body).map_err(|(o, m)| src.err(off + o, m))?;
    items.into_iter().map(|(o, item)| parse_at(ring, item.trim(), src.line_col(off + o + leading_ws(item)))).collect()
}

/// `key=value` pairs where a value may be a bracketed list containing spaces.
#[allow(clippy::type_complexity)]
fn split_options(s: &str) -> std::result::Result<Vec<(usize, &str, usize, &str)>, (usize, String)> {
    let mut out = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let k0 = i;
        while i < b.len() && b[i] != b'=' && !b[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= b.len() || b[i] != b'=' {
            return Err((k0, format!("expected `key=value`, got `{}`", &s[k0..i])));
        }
        let key = &s[k0..i];
        i += 1;
        let v0 = i;
        let mut depth = 0i32;
        while i < b.len() && (depth > 0 || !b[i].is_ascii_whitespace()) {
            match b[i] {
                b'[' => depth += 1,
                b']' => depth -= 1,
                _ => {}
            }
            i += 1;
        }
        if depth != 0 {
            return Err((v0, "unbalanced bracket".into()));
        }
        out.push((k0, key, v0, &s[v0..i]));
    }
    Ok(out)
}

fn parse_command(src: &Src, ring: &Ring, off: usize, body: &str) -> Result<(Command, JobOptions)> {
    let lead = leading_ws(body);
    let rest = &body[lead..];
    let name_len = rest.find(char::is_whitespace).unwrap_or(rest.len());
    let command: Command = rest[..name_len].parse().map_err(|m: String| src.err(off + lead, m))?;
    let opts_off = off + lead + name_len;
    let mut opts = JobOptions::default();
    let pairs = split_options(&rest[name_len..]).map_err(|(o, m)| src.err(opts_off + o, m))?;
    for (ko, key, vo, value) in pairs {
        let at = opts_off + vo;
        let wrap = |m: String| src.err(at, m);
        match key {
            "route" => opts.route = Some(parse_route(value).map_err(wrap)?),
            "depth" => opts.depth = Some(value.parse().map_err(|_| wrap(format!("bad depth `{value}`")))?),
            "window" => opts.window = Some(parse_window(value).map_err(wrap)?),
            "f" => opts.f = parse_ops(src, ring, at, value)?,
            "with" => opts.with = parse_rows(src, ring, at, value)?,
            "weights" => {
                let rows = split_list(value).map_err(|(o, m)| src.err(at + o, m))?;
                opts.weights =
                    rows.into_iter().map(|(_, r)| parse_ints(r).map_err(wrap)).collect::<Result<Vec<_>>>()?;
            }
            "tie" => {
                opts.tie = Some(match value {
                    "grevlex" => Tie::Grevlex,
                    "lex" => Tie::Lex,
                    _ => return Err(wrap(format!("unknown tie-break `{value}`"))),
                })
            }
            _ => return Err(src.err(opts_off + ko, format!("unknown option `{key}`"))),
        }
    }
    Ok((command, opts))
}

/// Parses a job file.
pub fn parse(text: &str) -> Result<JobFile> {
    // Comments are blanked so that offsets stay valid.
    let cleaned: String = text
        .split_inclusive('\n')
        .map(|line| match line.find('#') {
            Some(p) => {
                format!("{}{}", &line[..p], " ".repeat(line[p..].trim_end_matches('\n').len()))
                    + if line.ends_with('\n') { "\n" } else { "" }
            }
            None => line.to_string(),
        })
        .collect();
    let src = Src { text: &cleaned };
    let mut ring: Option<Ring> = None;
    let mut shift = None;
    let mut module: Option<Vec<Operator>> = None;
    let mut command = None;
    let mut off = 0;
    for stmt in cleaned.split(';') {
        let here = off;
        off += stmt.len() + 1;
        if stmt.trim().is_empty() {
            continue;
        }
        let lead = leading_ws(stmt);
        let s = &stmt[lead..];
        let kw_len = s.find(|c: char| c.is_whitespace() || c == '[').unwrap_or(s.len());
        let (kw, body) = (&s[..kw_len], &s[kw_len..]);
        let body_off = here + lead + kw_len;
        let need_ring = || ring.clone().ok_or_else(|| src.err(here + lead, "`ring` must come first"));
        match kw {
            "ring" if ring.is_none() => ring = Some(parse_ring(&src, body_off, body)?),
            "shift" => {
                need_ring()?;
                shift = Some(ShiftVector(parse_ints(body).map_err(|m| src.err(body_off, m))?));
            }
            "module" => module = Some(parse_rows(&src, &need_ring()?, body_off, body)?),
            "command" => {
                if module.is_none() {
                    return Err(src.err(here + lead, "`module` must come before `command`"));
                }
                command = Some(parse_command(&src, &need_ring()?, body_off, body)?);
            }
            _ => return Err(src.err(here + lead, format!("unexpected statement `{kw}`"))),
        }
    }
    let end = cleaned.len();
    let ring = ring.ok_or_else(|| src.err(end, "missing `ring` declaration"))?;
    let module = module.ok_or_else(|| src.err(end, "missing `module` declaration"))?;
    let (command, options) = command.ok_or_else(|| src.err(end, "missing `command`"))?;
    if let Some(m) = &shift {
        if m.len() != module[0].rank {
            return Err(DmodError::Dimension(format!("shift of length {} for rank {}", m.len(), module[0].rank)));
        }
    }
    Ok(JobFile { ring, shift, module, command, options })
}
