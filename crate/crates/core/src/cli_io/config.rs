//! Run configuration: flat `[section]` blocks of `key = value` lines.
//!
//! ```text
//! [solution]
//! family = dirac          # dirac | weyl | transverse
//! species = particle      # dirac only
//! theta = 0
//! phi = 0
//!
//! [f]
//! kind = gaussian
//! a = 1
//! k = 1
//! w0 = 0
//! ```
//!
//! Every key not listed under its section is rejected. Defaults: `q = 1`,
//! `order = 4`, `h = 0.01`, `points = 6`, `half_width = 1`,
//! `threshold = 1e-6`, `field_threshold = 1e-7`, `gauge_samples = 20`,
//! `seed = 1`, `w_min = -5`, `w_max = 5`, `rows = 1001`, `map_points = 41`,
//! `map_half_width = 2`, `r1 = 1`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::Path;

use crate::em_gauge::{GaugeFunction, Monomial};
use crate::error::Error;
use crate::fd::{FDSpec, Order};
use crate::profiles::{Direction, GaussianTerm, Profile1D, Profile2D, SuperGaussian};
use crate::solutions::{
    DiracSolution, Helicity, Sense, Solution, Species, WeylDirectionalSolution, WeylTransverseSolution,
};
use crate::verifier::{MassParameter, DEFAULT_FIELD_THRESHOLD, DEFAULT_RESIDUAL_THRESHOLD};

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub file: String,
    pub line: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.file)?;
        if let Some(l) = self.line {
            write!(f, ":{l}")?;
        }
        if let Some(k) = &self.key {
            write!(f, ": `{k}`")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    pub q: f64,
    pub gauge: GaugeFunction,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifySpec {
    pub fd: FDSpec,
    pub points: usize,
    pub half_width: f64,
    pub threshold: f64,
    pub field_threshold: f64,
    pub gauge_samples: usize,
    pub seed: u64,
}

impl Default for VerifySpec {
    fn default() -> Self {
        Self {
            fd: FDSpec::default(),
            points: 6,
            half_width: 1.0,
            threshold: DEFAULT_RESIDUAL_THRESHOLD,
            field_threshold: DEFAULT_FIELD_THRESHOLD,
            gauge_samples: 20,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub w_min: f64,
    pub w_max: f64,
    pub rows: usize,
    pub map_points: usize,
    pub map_half_width: f64,
    /// Numerator of the reciprocal profile column in field maps.
    pub r1: f64,
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            w_min: -5.0,
            w_max: 5.0,
            rows: 1001,
            map_points: 41,
            map_half_width: 2.0,
            r1: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub solution: Solution,
    pub mass: MassParameter,
    pub potential: PotentialSpec,
    pub verify: VerifySpec,
    pub output: OutputSpec,
}

impl RunConfig {
    pub fn new(solution: Solution) -> Self {
        Self {
            solution,
            mass: MassParameter::default(),
            potential: PotentialSpec {
                q: 1.0,
                gauge: GaugeFunction::Zero,
            },
            verify: VerifySpec::default(),
            output: OutputSpec::default(),
        }
    }
}

struct Entry {
    value: String,
    line: usize,
    used: bool,
}

struct Section {
    name: String,
    line: usize,
    entries: BTreeMap<String, Entry>,
}

struct Parser<'a> {
    file: &'a str,
    sections: BTreeMap<String, Section>,
}

const SECTIONS: [&str; 8] = ["solution", "f", "g", "h", "p", "potential", "verify", "output"];

type PResult<T> = std::result::Result<T, ConfigError>;

impl<'a> Parser<'a> {
    fn err(&self, line: Option<usize>, key: Option<&str>, message: impl Into<String>) -> ConfigError {
        ConfigError {
            file: self.file.to_string(),
            line,
            key: key.map(str::to_string),
            message: message.into(),
        }
    }

    fn lex(file: &'a str, text: &str) -> PResult<Self> {
        let mut p = Parser {
            file,
            sections: BTreeMap::new(),
        };
        let mut current: Option<String> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(rest) = body.strip_prefix('[') {
                let name = rest
                    .strip_suffix(']')
                    .ok_or_else(|| p.err(Some(line), None, "unterminated section header"))?
                    .trim()
                    .to_string();
                if !SECTIONS.contains(&name.as_str()) {
                    return Err(p.err(Some(line), None, format!("unknown section [{name}]")));
                }
                if p.sections.contains_key(&name) {
                    return Err(p.err(Some(line), None, format!("duplicate section [{name}]")));
                }
                p.sections.insert(
                    name.clone(),
                    Section {
                        name: name.clone(),
                        line,
                        entries: BTreeMap::new(),
                    },
                );
                current = Some(name);
                continue;
            }
            let (k, v) = body
                .split_once('=')
                .ok_or_else(|| p.err(Some(line), None, "expected `key = value`"))?;
            let (k, v) = (k.trim(), v.trim());
            let Some(sec) = current.as_ref() else {
                return Err(p.err(Some(line), Some(k), "key outside of any section"));
            };
            if k.is_empty() {
                return Err(p.err(Some(line), None, "empty key"));
            }
            let section = p.sections.get_mut(sec).unwrap();
            if section.entries.contains_key(k) {
                return Err(ConfigError {
                    file: file.to_string(),
                    line: Some(line),
                    key: Some(k.to_string()),
                    message: "duplicate key".into(),
                });
            }
            section.entries.insert(
                k.to_string(),
                Entry {
                    value: v.to_string(),
                    line,
                    used: false,
                },
            );
        }
        Ok(p)
    }

    fn has(&self, sec: &str) -> bool {
        self.sections.contains_key(sec)
    }

    fn raw(&mut self, sec: &str, key: &str) -> Option<(String, usize)> {
        let e = self.sections.get_mut(sec)?.entries.get_mut(key)?;
        e.used = true;
        Some((e.value.clone(), e.line))
    }

    fn line_of(&self, sec: &str, key: &str) -> Option<usize> {
        let s = self.sections.get(sec)?;
        s.entries.get(key).map(|e| e.line).or(Some(s.line))
    }

    fn opt<T>(&mut self, sec: &str, key: &str, conv: impl Fn(&str) -> Result<T, String>) -> PResult<Option<T>> {
        match self.raw(sec, key) {
            None => Ok(None),
            Some((v, line)) => conv(&v)
                .map(Some)
                .map_err(|m| self.err(Some(line), Some(key), m)),
        }
    }

    fn req<T>(&mut self, sec: &str, key: &str, conv: impl Fn(&str) -> Result<T, String>) -> PResult<T> {
        let line = self.sections.get(sec).map(|s| s.line);
        self.opt(sec, key, conv)?
            .ok_or_else(|| self.err(line, Some(key), format!("missing required key in [{sec}]")))
    }

    fn real(&mut self, sec: &str, key: &str) -> PResult<f64> {
        self.req(sec, key, parse_real)
    }

    fn real_or(&mut self, sec: &str, key: &str, default: f64) -> PResult<f64> {
        Ok(self.opt(sec, key, parse_real)?.unwrap_or(default))
    }

    fn finish(&self) -> PResult<()> {
        for s in self.sections.values() {
            if let Some((k, e)) = s.entries.iter().find(|(_, e)| !e.used) {
                return Err(self.err(Some(e.line), Some(k), format!("unknown key in [{}]", s.name)));
            }
        }
        Ok(())
    }

    /// Attach a domain validation error to the line of the offending key.
    fn domain(&self, sec: &str, e: Error) -> ConfigError {
        match &e {
            Error::InvalidParameter { name, reason } => {
                self.err(self.line_of(sec, name), Some(name), reason.clone())
            }
            _ => self.err(self.sections.get(sec).map(|s| s.line), None, e.to_string()),
        }
    }
}

fn parse_real(v: &str) -> Result<f64, String> {
    match v.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(format!("expected a finite number, got `{v}`")),
    }
}

fn parse_uint(v: &str) -> Result<u64, String> {
    v.parse::<u64>()
        .map_err(|_| format!("integer required, got `{v}`"))
}

fn parse_list(v: &str) -> Result<Vec<f64>, String> {
    v.split(',').map(|s| parse_real(s.trim())).collect()
}

fn parse_monomial(t: &str) -> Result<Monomial, String> {
    let mut parts = t.split('*').map(str::trim);
    let coef = parse_real(parts.next().unwrap_or(""))?;
    let mut powers = [0u32; 4];
    for f in parts {
        let (var, pow) = match f.split_once('^') {
            Some((v, p)) => (v.trim(), parse_uint(p.trim())? as u32),
            None => (f, 1),
        };
        let axis = match var {
            "t" => 0,
            "x" => 1,
            "y" => 2,
            "z" => 3,
            _ => return Err(format!("unknown variable `{var}` in term `{t}`")),
        };
        powers[axis] += pow;
    }
    Ok(Monomial { coef, powers })
}

fn parse_terms(v: &str) -> Result<Vec<Monomial>, String> {
    v.split(',').map(|t| parse_monomial(t.trim())).collect()
}

fn profile1d(p: &mut Parser, sec: &str) -> PResult<Profile1D> {
    let kind: String = p.req(sec, "kind", |v| Ok(v.to_string()))?;
    let kind_line = p.line_of(sec, "kind");
    let prof = match kind.as_str() {
        "constant" => Profile1D::constant(p.real(sec, "value")?),
        "gaussian" => Profile1D::gaussian(p.real(sec, "a")?, p.real(sec, "k")?, p.real_or(sec, "w0", 0.0)?),
        "offset-gaussian" => Profile1D::OffsetGaussian {
            b: p.real(sec, "b")?,
            term: GaussianTerm {
                a: p.real(sec, "a")?,
                k: p.real(sec, "k")?,
                w0: p.real_or(sec, "w0", 0.0)?,
            },
        },
        "sum-of-gaussians" => {
            let a = p.req(sec, "amplitudes", parse_list)?;
            let k = p.req(sec, "widths", parse_list)?;
            let w0 = p.req(sec, "centers", parse_list)?;
            if a.len() != k.len() || a.len() != w0.len() || a.is_empty() {
                return Err(p.err(
                    p.line_of(sec, "amplitudes"),
                    Some("amplitudes"),
                    "amplitudes, widths and centers need the same nonzero length",
                ));
            }
            Profile1D::SumOfGaussians(
                (0..a.len())
                    .map(|i| GaussianTerm {
                        a: a[i],
                        k: k[i],
                        w0: w0[i],
                    })
                    .collect(),
            )
        }
        "erf-chirp" => Profile1D::erf_chirp(p.real(sec, "e0")?, p.real(sec, "lambda")?, p.real_or(sec, "w0", 0.0)?),
        "linear" => Profile1D::linear_phase(p.real(sec, "energy")?),
        other => return Err(p.err(kind_line, Some("kind"), format!("unknown profile kind `{other}`"))),
    };
    prof.validate().map_err(|e| p.domain(sec, e))?;
    Ok(prof)
}

fn profile2d(p: &mut Parser) -> PResult<Profile2D> {
    let sec = "p";
    if !p.has(sec) {
        return Err(p.err(None, None, "transverse family needs a [p] section"));
    }
    let kind: String = p.req(sec, "kind", |v| Ok(v.to_string()))?;
    let exponent = |v: &str| -> Result<u32, String> {
        let n = parse_uint(v)?;
        if n == 0 || n > 16 {
            return Err(format!("integer exponent in 1..=16 required, got {n}"));
        }
        Ok(n as u32)
    };
    let sg = match kind.as_str() {
        "gaussian" | "super-gaussian" => {
            let (n1, n2) = if kind == "gaussian" {
                (1, 1)
            } else {
                (p.req(sec, "n1", exponent)?, p.req(sec, "n2", exponent)?)
            };
            SuperGaussian {
                a: p.real_or(sec, "a", 1.0)?,
                x0: p.real_or(sec, "x0", 0.0)?,
                y0: p.real_or(sec, "y0", 0.0)?,
                k1: p.real(sec, "k1")?,
                k2: p.real(sec, "k2")?,
                n1,
                n2,
            }
        }
        other => {
            return Err(p.err(p.line_of(sec, "kind"), Some("kind"), format!("unknown profile kind `{other}`")))
        }
    };
    let mut prof = Profile2D::SuperGaussian(sg);
    if let Some(r1) = p.opt(sec, "reciprocal", parse_real)? {
        prof = prof.reciprocal(r1);
    }
    prof.validate().map_err(|e| p.domain(sec, e))?;
    Ok(prof)
}

fn helicity(v: &str) -> Result<Helicity, String> {
    match v {
        "+" | "positive" => Ok(Helicity::Positive),
        "-" | "negative" => Ok(Helicity::Negative),
        _ => Err(format!("helicity must be + or -, got `{v}`")),
    }
}

fn solution(p: &mut Parser) -> PResult<(Solution, MassParameter)> {
    let sec = "solution";
    if !p.has(sec) {
        return Err(p.err(None, None, "missing [solution] section"));
    }
    let family: String = p.req(sec, "family", |v| Ok(v.to_string()))?;
    let direction = |p: &mut Parser| -> PResult<Direction> {
        let theta = p.real_or(sec, "theta", 0.0)?;
        let phi = p.real_or(sec, "phi", 0.0)?;
        Direction::new(theta, phi).map_err(|e| p.domain(sec, e))
    };
    let mut mass = MassParameter::default();
    let sol = match family.as_str() {
        "dirac" => {
            let species = p.req(sec, "species", |v| match v {
                "particle" => Ok(Species::Particle),
                "antiparticle" => Ok(Species::Antiparticle),
                _ => Err(format!("species must be particle or antiparticle, got `{v}`")),
            })?;
            let dir = direction(p)?;
            if let Some(m) = p.opt(sec, "mass", parse_real)? {
                mass = MassParameter::new(m).map_err(|e| p.domain(sec, e))?;
            }
            Solution::Dirac(DiracSolution {
                species,
                dir,
                f: section_profile(p, "f")?,
                g: section_profile(p, "g")?,
                h: section_profile(p, "h")?,
            })
        }
        "weyl" => Solution::WeylDirectional(WeylDirectionalSolution {
            helicity: p.req(sec, "helicity", helicity)?,
            dir: direction(p)?,
            f: section_profile(p, "f")?,
            h: section_profile(p, "h")?,
        }),
        "transverse" => Solution::WeylTransverse(WeylTransverseSolution {
            helicity: p.req(sec, "helicity", helicity)?,
            sense: p.req(sec, "sense", |v| match v {
                "+z" => Ok(Sense::PlusZ),
                "-z" => Ok(Sense::MinusZ),
                _ => Err(format!("sense must be +z or -z, got `{v}`")),
            })?,
            p: profile2d(p)?,
            f: section_profile(p, "f")?,
            h: section_profile(p, "h")?,
        }),
        other => {
            return Err(p.err(
                p.line_of(sec, "family"),
                Some("family"),
                format!("family must be dirac, weyl or transverse, got `{other}`"),
            ))
        }
    };
    Ok((sol, mass))
}

fn section_profile(p: &mut Parser, sec: &str) -> PResult<Profile1D> {
    if !p.has(sec) {
        return Err(p.err(None, None, format!("missing [{sec}] section")));
    }
    profile1d(p, sec)
}

fn potential(p: &mut Parser) -> PResult<PotentialSpec> {
    let sec = "potential";
    let q = p.real_or(sec, "q", 1.0)?;
    if q == 0.0 {
        return Err(p.err(p.line_of(sec, "q"), Some("q"), "charge must be nonzero"));
    }
    let kind = p.opt(sec, "gauge", |v| Ok(v.to_string()))?.unwrap_or_else(|| "zero".into());
    let gauge = match kind.as_str() {
        "zero" => GaugeFunction::Zero,
        "constant" => GaugeFunction::Constant(p.real(sec, "s0")?),
        "polynomial" => GaugeFunction::Polynomial(p.req(sec, "terms", parse_terms)?),
        "sinusoid" => {
            let kappa = p.req(sec, "kappa", |v| {
                let k = parse_list(v)?;
                k.try_into().map_err(|_| "kappa needs three components".to_string())
            })?;
            GaugeFunction::Sinusoid {
                s0: p.real(sec, "s0")?,
                kappa,
                omega: p.real_or(sec, "omega", 0.0)?,
                phase: p.real_or(sec, "phase", 0.0)?,
            }
        }
        other => {
            return Err(p.err(
                p.line_of(sec, "gauge"),
                Some("gauge"),
                format!("gauge must be zero, constant, polynomial or sinusoid, got `{other}`"),
            ))
        }
    };
    gauge.validate().map_err(|e| p.domain(sec, e))?;
    Ok(PotentialSpec { q, gauge })
}

fn positive(p: &Parser, sec: &str, key: &str, v: f64) -> PResult<f64> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(p.err(p.line_of(sec, key), Some(key), format!("must be positive, got {v}")))
    }
}

fn verify(p: &mut Parser) -> PResult<VerifySpec> {
    let sec = "verify";
    let d = VerifySpec::default();
    let order = p
        .opt(sec, "order", |v| {
            Order::from_int(parse_uint(v)? as u32).map_err(|e| e.to_string())
        })?
        .unwrap_or(d.fd.order);
    let h = p.real_or(sec, "h", d.fd.h())?;
    let h = positive(p, sec, "h", h)?;
    let points = p.opt(sec, "points", parse_uint)?.map_or(d.points, |n| n as usize);
    if points == 0 {
        return Err(p.err(p.line_of(sec, "points"), Some("points"), "must be at least 1"));
    }
    let half_width = p.real_or(sec, "half_width", d.half_width)?;
    if half_width < 0.0 {
        return Err(p.err(p.line_of(sec, "half_width"), Some("half_width"), "must be >= 0"));
    }
    let threshold = p.real_or(sec, "threshold", d.threshold)?;
    let threshold = positive(p, sec, "threshold", threshold)?;
    let field_threshold = p.real_or(sec, "field_threshold", d.field_threshold)?;
    let field_threshold = positive(p, sec, "field_threshold", field_threshold)?;
    Ok(VerifySpec {
        fd: FDSpec { order, step: [h; 4] },
        points,
        half_width,
        threshold,
        field_threshold,
        gauge_samples: p.opt(sec, "gauge_samples", parse_uint)?.map_or(d.gauge_samples, |n| n as usize),
        seed: p.opt(sec, "seed", parse_uint)?.unwrap_or(d.seed),
    })
}

fn output(p: &mut Parser) -> PResult<OutputSpec> {
    let sec = "output";
    let d = OutputSpec::default();
    let w_min = p.real_or(sec, "w_min", d.w_min)?;
    let w_max = p.real_or(sec, "w_max", d.w_max)?;
    if w_max <= w_min {
        return Err(p.err(p.line_of(sec, "w_max"), Some("w_max"), "must exceed w_min"));
    }
    let count = |p: &mut Parser, key: &str, default: usize| -> PResult<usize> {
        let n = p.opt(sec, key, parse_uint)?.map_or(default, |n| n as usize);
        if n < 2 {
            return Err(p.err(p.line_of(sec, key), Some(key), "need at least 2 samples"));
        }
        Ok(n)
    };
    let rows = count(p, "rows", d.rows)?;
    let map_points = count(p, "map_points", d.map_points)?;
    let map_half_width = p.real_or(sec, "map_half_width", d.map_half_width)?;
    let map_half_width = positive(p, sec, "map_half_width", map_half_width)?;
    let r1 = p.real_or(sec, "r1", d.r1)?;
    let r1 = positive(p, sec, "r1", r1)?;
    Ok(OutputSpec {
        w_min,
        w_max,
        rows,
        map_points,
        map_half_width,
        r1,
    })
}

/// Parse configuration text; `file` is only used in diagnostics.
pub fn parse_str(file: &str, text: &str) -> Result<RunConfig, ConfigError> {
    let mut p = Parser::lex(file, text)?;
    let (solution, mass) = solution(&mut p)?;
    let potential = potential(&mut p)?;
    let verify = verify(&mut p)?;
    let output = output(&mut p)?;
    for sec in ["g", "p"] {
        let needed = match sec {
            "g" => matches!(solution, Solution::Dirac(_)),
            _ => matches!(solution, Solution::WeylTransverse(_)),
        };
        if !needed {
            if let Some(s) = p.sections.get(sec) {
                return Err(p.err(Some(s.line), None, format!("section [{sec}] does not apply to this family")));
            }
        }
    }
    p.finish()?;
    Ok(RunConfig {
        solution,
        mass,
        potential,
        verify,
        output,
    })
}

pub fn parse_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError {
        file: name.clone(),
        line: None,
        key: None,
        message: e.to_string(),
    })?;
    parse_str(&name, &text)
}

fn join(v: impl Iterator<Item = f64>) -> String {
    v.map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn emit_profile1d(out: &mut String, sec: &str, p: &Profile1D) {
    let _ = writeln!(out, "\n[{sec}]");
    let mut kv = |k: &str, v: String| {
        let _ = writeln!(out, "{k} = {v}");
    };
    match p {
        Profile1D::Constant { value } => {
            kv("kind", "constant".into());
            kv("value", value.to_string());
        }
        Profile1D::Gaussian(t) => {
            kv("kind", "gaussian".into());
            kv("a", t.a.to_string());
            kv("k", t.k.to_string());
            kv("w0", t.w0.to_string());
        }
        Profile1D::OffsetGaussian { b, term } => {
            kv("kind", "offset-gaussian".into());
            kv("b", b.to_string());
            kv("a", term.a.to_string());
            kv("k", term.k.to_string());
            kv("w0", term.w0.to_string());
        }
        Profile1D::SumOfGaussians(ts) => {
            kv("kind", "sum-of-gaussians".into());
            kv("amplitudes", join(ts.iter().map(|t| t.a)));
            kv("widths", join(ts.iter().map(|t| t.k)));
            kv("centers", join(ts.iter().map(|t| t.w0)));
        }
        Profile1D::ErfChirp { e0, lambda, w0 } => {
            kv("kind", "erf-chirp".into());
            kv("e0", e0.to_string());
            kv("lambda", lambda.to_string());
            kv("w0", w0.to_string());
        }
        Profile1D::LinearPhase { energy } => {
            kv("kind", "linear".into());
            kv("energy", energy.to_string());
        }
    }
}

fn emit_profile2d(out: &mut String, p: &Profile2D) {
    let (sg, r1) = match p {
        Profile2D::SuperGaussian(sg) => (sg, None),
        Profile2D::Reciprocal { base, r1 } => match base.as_ref() {
            Profile2D::SuperGaussian(sg) => (sg, Some(*r1)),
            Profile2D::Reciprocal { .. } => unreachable!("nested reciprocal profiles are not configurable"),
        },
    };
    let _ = writeln!(out, "\n[p]");
    let _ = writeln!(out, "kind = super-gaussian");
    for (k, v) in [("a", sg.a), ("x0", sg.x0), ("y0", sg.y0), ("k1", sg.k1), ("k2", sg.k2)] {
        let _ = writeln!(out, "{k} = {v}");
    }
    let _ = writeln!(out, "n1 = {}\nn2 = {}", sg.n1, sg.n2);
    if let Some(r1) = r1 {
        let _ = writeln!(out, "reciprocal = {r1}");
    }
}

/// Render a configuration that [`parse_str`] reads back unchanged.
pub fn emit_config(cfg: &RunConfig) -> String {
    let mut out = String::from("[solution]\n");
    let dir = |out: &mut String, d: &Direction| {
        let _ = writeln!(out, "theta = {}\nphi = {}", d.theta(), d.phi());
    };
    match &cfg.solution {
        Solution::Dirac(s) => {
            let _ = writeln!(out, "family = dirac\nspecies = {}", s.species);
            dir(&mut out, &s.dir);
            let _ = writeln!(out, "mass = {}", cfg.mass.value());
            emit_profile1d(&mut out, "f", &s.f);
            emit_profile1d(&mut out, "g", &s.g);
            emit_profile1d(&mut out, "h", &s.h);
        }
        Solution::WeylDirectional(s) => {
            let _ = writeln!(out, "family = weyl\nhelicity = {}", s.helicity);
            dir(&mut out, &s.dir);
            emit_profile1d(&mut out, "f", &s.f);
            emit_profile1d(&mut out, "h", &s.h);
        }
        Solution::WeylTransverse(s) => {
            let _ = writeln!(out, "family = transverse\nhelicity = {}\nsense = {}", s.helicity, s.sense);
            emit_profile2d(&mut out, &s.p);
            emit_profile1d(&mut out, "f", &s.f);
            emit_profile1d(&mut out, "h", &s.h);
        }
    }
    let pot = &cfg.potential;
    let _ = writeln!(out, "\n[potential]\nq = {}", pot.q);
    match &pot.gauge {
        GaugeFunction::Zero => {
            let _ = writeln!(out, "gauge = zero");
        }
        GaugeFunction::Constant(s0) => {
            let _ = writeln!(out, "gauge = constant\ns0 = {s0}");
        }
        g @ GaugeFunction::Polynomial(_) => {
            let _ = writeln!(out, "gauge = polynomial\nterms = {g}");
        }
        GaugeFunction::Sinusoid {
            s0,
            kappa,
            omega,
            phase,
        } => {
            let _ = writeln!(
                out,
                "gauge = sinusoid\ns0 = {s0}\nkappa = {}\nomega = {omega}\nphase = {phase}",
                join(kappa.iter().cloned())
            );
        }
    }
    let v = &cfg.verify;
    let _ = writeln!(
        out,
        "\n[verify]\norder = {}\nh = {}\npoints = {}\nhalf_width = {}\nthreshold = {}\nfield_threshold = {}\ngauge_samples = {}\nseed = {}",
        v.fd.order.as_int(),
        v.fd.h(),
        v.points,
        v.half_width,
        v.threshold,
        v.field_threshold,
        v.gauge_samples,
        v.seed
    );
    let o = &cfg.output;
    let _ = writeln!(
        out,
        "\n[output]\nw_min = {}\nw_max = {}\nrows = {}\nmap_points = {}\nmap_half_width = {}\nr1 = {}",
        o.w_min, o.w_max, o.rows, o.map_points, o.map_half_width, o.r1
    );
    out
}
