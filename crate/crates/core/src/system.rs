//! JSON system description files.
//!
//! ```json
//! { "domain": "[0,1]",
//!   "preamble": [],
//!   "cycle": [ { "pieces": [ { "on": "[0,1/2]", "slope": "2", "intercept": "0" },
//!                            { "on": "(1/2,1]", "slope": "-2", "intercept": "2" } ] } ] }
//! ```
//!
//! Every number is a string holding an exact rational. JSON numbers are
//! rejected outright, since `0.1` has no exact binary value. A map entry may
//! instead be `{ "quadratic": { "a": "-4", "b": "4", "c": "0" } }`; such
//! systems load for the float estimator only.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::mc::{FloatMap, FloatSchedule};
use crate::plmap::{PLMap, Piece};
use crate::rational::{int, parse_rational, to_f64, Rational};
use crate::schedule::{bundled_example, Schedule, BUNDLED_EXAMPLES};

/// `x ↦ a·x² + b·x + c`, checked exactly to map the domain into itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticMap {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl QuadraticMap {
    pub fn eval(&self, x: &Rational) -> Rational {
        (&self.a * x + &self.b) * x + &self.c
    }

    /// Exact range on `[lo, hi]`: the extremes sit at the endpoints or at
    /// the vertex `−b/(2a)`.
    pub fn range_on(&self, domain: &Interval) -> (Rational, Rational) {
        let mut candidates = vec![self.eval(domain.lo()), self.eval(domain.hi())];
        if self.a != int(0) {
            let v = -&self.b / (int(2) * &self.a);
            if domain.contains(&v) {
                candidates.push(self.eval(&v));
            }
        }
        let lo = candidates.iter().min().cloned().expect("nonempty");
        let hi = candidates.iter().max().cloned().expect("nonempty");
        (lo, hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapEntry {
    PiecewiseLinear(PLMap),
    Quadratic(QuadraticMap),
}

impl MapEntry {
    fn to_float(&self) -> FloatMap {
        match self {
            MapEntry::PiecewiseLinear(m) => FloatMap::from_plmap(m),
            MapEntry::Quadratic(q) => FloatMap::Quadratic {
                a: to_f64(&q.a),
                b: to_f64(&q.b),
                c: to_f64(&q.c),
            },
        }
    }
}

/// A loaded system file, before deciding which engine consumes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemDescription {
    pub source: String,
    pub domain: Interval,
    pub preamble: Vec<MapEntry>,
    pub cycle: Vec<MapEntry>,
}

impl SystemDescription {
    /// Parses file contents. `source` names the file in diagnostics.
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::SystemFile {
            path: source.to_string(),
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
            source: None,
        })?;
        Parser { source }.system(&value)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::SystemFile {
            path: path.display().to_string(),
            location: "file".into(),
            message: e.to_string(),
            source: None,
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn from_schedule(sch: &Schedule, source: &str) -> Self {
        let wrap = |ms: &[PLMap]| ms.iter().cloned().map(MapEntry::PiecewiseLinear).collect();
        Self {
            source: source.to_string(),
            domain: sch.domain().clone(),
            preamble: wrap(sch.preamble()),
            cycle: wrap(sch.cycle()),
        }
    }

    /// `true` when every map is piecewise linear.
    pub fn is_exact(&self) -> bool {
        self.entries()
            .all(|(_, m)| matches!(m, MapEntry::PiecewiseLinear(_)))
    }

    fn entries(&self) -> impl Iterator<Item = (String, &MapEntry)> {
        let pre = self
            .preamble
            .iter()
            .enumerate()
            .map(|(i, m)| (format!("preamble[{i}]"), m));
        let cyc = self
            .cycle
            .iter()
            .enumerate()
            .map(|(i, m)| (format!("cycle[{i}]"), m));
        pre.chain(cyc)
    }

    /// The exact schedule. Fails on any closed-form entry.
    pub fn to_schedule(&self) -> Result<Schedule> {
        let pl = |ms: &[MapEntry], section: &str| -> Result<Vec<PLMap>> {
            ms.iter()
                .enumerate()
                .map(|(i, m)| match m {
                    MapEntry::PiecewiseLinear(p) => Ok(p.clone()),
                    MapEntry::Quadratic(_) => Err(Error::SystemFile {
                        path: self.source.clone(),
                        location: format!("{section}[{i}]"),
                        message: "quadratic maps are accepted by the Monte Carlo \
                                  estimator only; exact analyses need piecewise-linear maps"
                            .into(),
                        source: None,
                    }),
                })
                .collect()
        };
        Schedule::new(pl(&self.preamble, "preamble")?, pl(&self.cycle, "cycle")?)
    }

    pub fn to_float(&self) -> FloatSchedule {
        FloatSchedule::new(
            (to_f64(self.domain.lo()), to_f64(self.domain.hi())),
            self.preamble.iter().map(MapEntry::to_float).collect(),
            self.cycle.iter().map(MapEntry::to_float).collect(),
            !self.is_exact(),
        )
        .expect("validated on load")
    }
}

/// Loads an exact schedule from a JSON file.
pub fn parse_system_file(path: impl AsRef<Path>) -> Result<Schedule> {
    SystemDescription::read(path)?.to_schedule()
}

/// A bundled example name or a path to a system file.
pub fn resolve_system(name_or_path: &str) -> Result<SystemDescription> {
    if BUNDLED_EXAMPLES.contains(&name_or_path) {
        let sch = bundled_example(name_or_path)?;
        return Ok(SystemDescription::from_schedule(&sch, name_or_path));
    }
    if Path::new(name_or_path).exists() {
        return SystemDescription::read(name_or_path);
    }
    Err(Error::UnknownExample(name_or_path.to_string()))
}

fn map_to_json(m: &MapEntry) -> Value {
    match m {
        MapEntry::PiecewiseLinear(p) => json!({
            "pieces": p.pieces().iter().map(|pc| json!({
                "on": pc.on.to_string(),
                "slope": pc.slope.to_string(),
                "intercept": pc.intercept.to_string(),
            })).collect::<Vec<_>>()
        }),
        MapEntry::Quadratic(q) => json!({
            "quadratic": { "a": q.a.to_string(), "b": q.b.to_string(), "c": q.c.to_string() }
        }),
    }
}

impl SystemDescription {
    pub fn to_json(&self) -> Value {
        json!({
            "domain": self.domain.to_string(),
            "preamble": self.preamble.iter().map(map_to_json).collect::<Vec<_>>(),
            "cycle": self.cycle.iter().map(map_to_json).collect::<Vec<_>>(),
        })
    }
}

/// Serializes an exact schedule in the file format.
pub fn schedule_to_json(sch: &Schedule) -> Value {
    SystemDescription::from_schedule(sch, "").to_json()
}

struct Parser<'a> {
    source: &'a str,
}

impl Parser<'_> {
    fn fail(&self, location: &str, message: impl Into<String>, source: Option<Error>) -> Error {
        Error::SystemFile {
            path: self.source.to_string(),
            location: location.to_string(),
            message: message.into(),
            source: source.map(Box::new),
        }
    }

    fn object<'v>(&self, v: &'v Value, at: &str) -> Result<&'v Map<String, Value>> {
        v.as_object()
            .ok_or_else(|| self.fail(at, format!("expected an object, found {}", kind(v)), None))
    }

    fn field<'v>(&self, obj: &'v Map<String, Value>, key: &str, at: &str) -> Result<&'v Value> {
        obj.get(key)
            .ok_or_else(|| self.fail(at, format!("missing field \"{key}\""), None))
    }

    fn reject_unknown(&self, obj: &Map<String, Value>, allowed: &[&str], at: &str) -> Result<()> {
        match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(self.fail(at, format!("unknown field \"{k}\""), None)),
            None => Ok(()),
        }
    }

    fn string<'v>(&self, v: &'v Value, at: &str) -> Result<&'v str> {
        match v {
            Value::String(s) => Ok(s),
            Value::Number(n) => Err(self.fail(
                at,
                format!(
                    "found the JSON number {n}; write exact values as strings, \
                     for example \"1/2\" instead of 0.5"
                ),
                None,
            )),
            other => Err(self.fail(at, format!("expected a string, found {}", kind(other)), None)),
        }
    }

    fn rational(&self, v: &Value, at: &str) -> Result<Rational> {
        let s = self.string(v, at)?;
        parse_rational(s).map_err(|e| self.fail(at, e.to_string(), Some(e)))
    }

    fn interval(&self, v: &Value, at: &str) -> Result<Interval> {
        let s = self.string(v, at)?;
        s.parse::<Interval>()
            .map_err(|e| self.fail(at, e.to_string(), Some(e)))
    }

    fn system(&self, v: &Value) -> Result<SystemDescription> {
        let obj = self.object(v, "top level")?;
        self.reject_unknown(obj, &["domain", "preamble", "cycle"], "top level")?;
        let domain = self.interval(self.field(obj, "domain", "top level")?, "domain")?;
        if !domain.is_closed() || domain.is_degenerate() {
            let e = Error::BadDomain(domain);
            return Err(self.fail("domain", e.to_string(), Some(e)));
        }
        let preamble = match obj.get("preamble") {
            Some(p) => self.maps(p, "preamble", &domain)?,
            None => Vec::new(),
        };
        let cycle = self.maps(self.field(obj, "cycle", "top level")?, "cycle", &domain)?;
        if cycle.is_empty() {
            let e = Error::EmptyCycle;
            return Err(self.fail("cycle", e.to_string(), Some(e)));
        }
        Ok(SystemDescription {
            source: self.source.to_string(),
            domain,
            preamble,
            cycle,
        })
    }

    fn maps(&self, v: &Value, section: &str, domain: &Interval) -> Result<Vec<MapEntry>> {
        let arr = v.as_array().ok_or_else(|| {
            self.fail(section, format!("expected an array, found {}", kind(v)), None)
        })?;
        arr.iter()
            .enumerate()
            .map(|(i, m)| self.map(m, &format!("{section}[{i}]"), domain))
            .collect()
    }

    fn map(&self, v: &Value, at: &str, domain: &Interval) -> Result<MapEntry> {
        let obj = self.object(v, at)?;
        if let Some(q) = obj.get("quadratic") {
            self.reject_unknown(obj, &["quadratic"], at)?;
            return self.quadratic(q, &format!("{at}.quadratic"), domain);
        }
        self.reject_unknown(obj, &["pieces"], at)?;
        let list_at = format!("{at}.pieces");
        let list = self.field(obj, "pieces", at)?.as_array().ok_or_else(|| {
            self.fail(&list_at, "expected an array of pieces", None)
        })?;
        let mut pieces = Vec::with_capacity(list.len());
        for (j, p) in list.iter().enumerate() {
            let pat = format!("{list_at}[{j}]");
            let po = self.object(p, &pat)?;
            self.reject_unknown(po, &["on", "slope", "intercept"], &pat)?;
            let on = self.interval(self.field(po, "on", &pat)?, &format!("{pat}.on"))?;
            let slope = self.rational(self.field(po, "slope", &pat)?, &format!("{pat}.slope"))?;
            let intercept =
                self.rational(self.field(po, "intercept", &pat)?, &format!("{pat}.intercept"))?;
            pieces.push(Piece::new(on, slope, intercept));
        }
        let neighbours = pieces.clone();
        PLMap::new(domain.clone(), pieces)
            .map(MapEntry::PiecewiseLinear)
            .map_err(|e| {
                let location = match &e {
                    Error::PieceOverlap { first, second, .. } => {
                        format!("{list_at}[{first}] and {list_at}[{second}]")
                    }
                    Error::NotSelfMap { piece, .. } => format!("{list_at}[{piece}]"),
                    Error::PieceGap { missing } => gap_location(&list_at, &neighbours, missing),
                    _ => list_at.clone(),
                };
                self.fail(&location, e.to_string(), Some(e))
            })
    }

    fn quadratic(&self, v: &Value, at: &str, domain: &Interval) -> Result<MapEntry> {
        let obj = self.object(v, at)?;
        self.reject_unknown(obj, &["a", "b", "c"], at)?;
        let coef = |k: &str| self.rational(self.field(obj, k, at)?, &format!("{at}.{k}"));
        let q = QuadraticMap {
            a: coef("a")?,
            b: coef("b")?,
            c: coef("c")?,
        };
        let (lo, hi) = q.range_on(domain);
        if &lo < domain.lo() || &hi > domain.hi() {
            return Err(self.fail(
                at,
                format!("range [{lo},{hi}] escapes the domain {domain}"),
                None,
            ));
        }
        Ok(MapEntry::Quadratic(q))
    }
}

/// Names the pieces bordering the first uncovered stretch.
fn gap_location(list_at: &str, pieces: &[Piece], missing: &crate::set::IntervalSet) -> String {
    let Some(first) = missing.parts().first() else {
        return list_at.to_string();
    };
    let before = pieces.iter().position(|p| p.on.hi() == first.lo());
    let after = pieces.iter().position(|p| p.on.lo() == first.hi());
    let mut s = String::new();
    match (before, after) {
        (Some(b), Some(a)) => write!(s, "between {list_at}[{b}] and {list_at}[{a}]"),
        (Some(b), None) => write!(s, "after {list_at}[{b}]"),
        (None, Some(a)) => write!(s, "before {list_at}[{a}]"),
        (None, None) => write!(s, "{list_at}"),
    }
    .expect("writing to a String");
    s
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}
