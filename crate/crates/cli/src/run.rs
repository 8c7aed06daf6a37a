use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use nadyn::mc::{mc_correlation, mc_separation, FloatSet, SampleConfig};
use nadyn::metrics::{
    correlation_series, default_thresholds, density_one_intersection, density_stats, kvn_extract,
    CorrelationSeries, IndexSet,
};
use nadyn::rational::{parse_rational, to_f64};
use nadyn::schedule::PropagationBudget;
use nadyn::system::{resolve_system, SystemDescription};
use nadyn::topo::{
    hitting_set, mixing_verdict, sensitivity_certificate, sensitivity_constant,
    transitivity_verdict, weakmix_verdict,
};
use nadyn::verify::verify_bundled;
use nadyn::{Error, IntervalSet, Rational, Result, Schedule};
use serde_json::{json, Value};

use crate::args::{Cli, Command, SetPair, VerdictArgs};

const BUDGET_VAR: &str = "NADYN_BUDGET";

struct Budget {
    budget: PropagationBudget,
    source: &'static str,
}

impl Budget {
    fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_VAR) {
            Ok(raw) => {
                let n: usize = raw.trim().parse().map_err(|_| {
                    Error::InvalidArgument(format!("{BUDGET_VAR}={raw:?} is not a part count"))
                })?;
                Ok(Budget {
                    budget: PropagationBudget::new(n)?,
                    source: BUDGET_VAR,
                })
            }
            Err(_) => Ok(Budget {
                budget: PropagationBudget::default(),
                source: "default",
            }),
        }
    }

    fn echo(&self) -> Value {
        json!({ "max_parts": self.budget.max_parts(), "source": self.source })
    }
}

fn set(name: &str, text: &str) -> Result<IntervalSet> {
    text.parse().map_err(|e: Error| {
        Error::InvalidArgument(format!("--{name} {text:?}: {e}"))
    })
}

fn rational(name: &str, text: &str) -> Result<Rational> {
    parse_rational(text).map_err(|e| Error::InvalidArgument(format!("--{name}: {e}")))
}

fn rationals(name: &str, text: &str) -> Result<Vec<Rational>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| rational(name, s))
        .collect()
}

fn indices(name: &str, text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| Error::InvalidArgument(format!("--{name}: {s:?} is not an index")))
        })
        .collect()
}

fn exact(system: &str) -> Result<(SystemDescription, Schedule)> {
    let d = resolve_system(system)?;
    let s = d.to_schedule()?;
    Ok((d, s))
}

fn write_csv(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> Result<()>) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("{}: {e}", path.display()));
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    f(&mut w)?;
    w.flush().map_err(io)
}

fn series(
    system: &str,
    pair: &SetPair,
    horizon: usize,
    budget: &Budget,
) -> Result<(Value, CorrelationSeries)> {
    let (d, sch) = exact(system)?;
    let a = set("A", &pair.a)?;
    let b = set("B", &pair.b)?;
    let s = correlation_series(&sch, &a, &b, horizon, &budget.budget)?;
    let request = json!({
        "system": d.source,
        "A": a,
        "B": b,
        "N": horizon,
        "measure": "Lebesgue normalized by the domain length",
    });
    Ok((request, s))
}

fn verdict(
    args: &VerdictArgs,
    budget: &Budget,
    f: fn(&Schedule, &Rational, usize, &PropagationBudget) -> Result<nadyn::topo::Verdict>,
) -> Result<(Value, Value)> {
    let (d, sch) = exact(&args.system.system)?;
    let grid = rational("grid", &args.grid)?;
    let v = f(&sch, &grid, args.horizon, &budget.budget)?;
    let request = json!({ "system": d.source, "grid": grid.to_string(), "H": args.horizon });
    Ok((request, serde_json::to_value(v).expect("serializable")))
}

pub fn run(cli: &Cli) -> Result<()> {
    let budget = Budget::from_env()?;
    let (name, index_base, mut request, result) = dispatch(&cli.command, &budget)?;
    request["budget"] = budget.echo();
    let report = json!({
        "command": name,
        "request": request,
        "index_base": index_base,
        "result": result,
    });
    let text = serde_json::to_string_pretty(&report).expect("serializable") + "\n";
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::InvalidArgument(format!("stdout: {e}")))
        }
    }
}

fn dispatch(cmd: &Command, budget: &Budget) -> Result<(&'static str, u8, Value, Value)> {
    Ok(match cmd {
        Command::Eval { system, x, n } => {
            let (d, sch) = exact(&system.system)?;
            let x0 = rational("x", x)?;
            if !sch.domain().contains(&x0) {
                return Err(Error::OutOfDomain {
                    what: format!("x = {x0}"),
                    domain: sch.domain().clone(),
                });
            }
            let mut y = x0.clone();
            let mut orbit = vec![y.to_string()];
            for k in 0..*n {
                y = sch.map_at(k).eval(&y)?;
                orbit.push(y.to_string());
            }
            (
                "eval",
                0,
                json!({ "system": d.source, "x": x0.to_string(), "n": n }),
                json!({ "value": y.to_string(), "orbit": orbit }),
            )
        }
        Command::Image { system, set: s, n } => {
            let (d, sch) = exact(&system.system)?;
            let s = set("set", s)?;
            let img = sch.prefix_image_within(&s, *n, &budget.budget)?;
            (
                "image",
                0,
                json!({ "system": d.source, "set": s, "n": n }),
                json!({ "image": img, "measure": img.measure().to_string(), "parts": img.len() }),
            )
        }
        Command::Preimage { system, set: s, n } => {
            let (d, sch) = exact(&system.system)?;
            let s = set("set", s)?;
            let pre = sch.prefix_preimage(&s, *n, &budget.budget)?;
            (
                "preimage",
                0,
                json!({ "system": d.source, "set": s, "n": n }),
                json!({ "preimage": pre, "measure": pre.measure().to_string(), "parts": pre.len() }),
            )
        }
        Command::Correlate {
            system,
            pair,
            horizon,
            csv,
        } => {
            let (mut request, s) = series(&system.system, pair, *horizon, budget)?;
            if let Some(path) = csv {
                write_csv(path, |w| s.write_csv(w))?;
            }
            request["csv"] = csv.as_ref().map(|p| p.display().to_string()).into();
            ("correlate", 0, request, serde_json::to_value(&s).expect("serializable"))
        }
        Command::Cesaro {
            system,
            pair,
            horizon,
            csv,
        } => {
            let (mut request, s) = series(&system.system, pair, *horizon, budget)?;
            let averages = (1..=*horizon)
                .map(|n| s.cesaro_deviation(n).map(|r| r.to_string()))
                .collect::<Result<Vec<_>>>()?;
            if let Some(path) = csv {
                write_csv(path, |w| s.write_cesaro_csv(w))?;
            }
            request["csv"] = csv.as_ref().map(|p| p.display().to_string()).into();
            (
                "cesaro",
                1,
                request,
                json!({
                    "cesaro": averages,
                    "max_deviation": s.max_deviation().to_string(),
                    "product": s.product.to_string(),
                }),
            )
        }
        Command::Density {
            members,
            horizon,
            tail_start,
            with,
            cutoff,
        } => {
            let j1 = IndexSet::new(*horizon, indices("members", members)?)?;
            let stats = density_stats(&j1, *tail_start)?;
            let mut result = json!({
                "size": j1.len(),
                "density_at_horizon": j1.density_at_horizon().to_string(),
                "window": stats,
            });
            if let Some(w) = with {
                let j2 = IndexSet::new(*horizon, indices("with", w)?)?;
                result["intersection"] =
                    serde_json::to_value(density_one_intersection(&j1, &j2, *cutoff)?)
                        .expect("serializable");
            }
            (
                "density",
                0,
                json!({
                    "members": j1.members(),
                    "horizon": horizon,
                    "tail_start": tail_start,
                    "with": with,
                    "cutoff": cutoff,
                }),
                result,
            )
        }
        Command::Kvn {
            sequence,
            system,
            a,
            b,
            horizon,
            thresholds,
        } => {
            let thresholds = match thresholds {
                Some(t) => rationals("thresholds", t)?,
                None => default_thresholds(),
            };
            let (source, seq) = match (sequence, system) {
                (Some(s), _) => (json!({ "sequence": s }), rationals("sequence", s)?),
                (None, Some(sys)) => {
                    let pair = SetPair {
                        a: a.clone().expect("clap requires A"),
                        b: b.clone().expect("clap requires B"),
                    };
                    let (req, s) = series(sys, &pair, horizon.expect("clap requires N"), budget)?;
                    (json!({ "deviations_of": req }), s.deviations)
                }
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "give --sequence or --system with --A, --B and --N".into(),
                    ))
                }
            };
            let out = kvn_extract(&seq, &thresholds)?;
            let mut request = source;
            request["thresholds"] = thresholds.iter().map(|t| t.to_string()).collect();
            ("kvn", 0, request, serde_json::to_value(out).expect("serializable"))
        }
        Command::Hitting {
            system,
            u,
            v,
            horizon,
        } => {
            let (d, sch) = exact(&system.system)?;
            let (u, v) = (set("U", u)?, set("V", v)?);
            let h = hitting_set(&sch, &u, &v, *horizon, &budget.budget)?;
            (
                "hitting",
                1,
                json!({ "system": d.source, "U": u, "V": v, "H": horizon }),
                json!({ "members": h.members.members(), "first": h.first() }),
            )
        }
        Command::Transitivity(args) => {
            let (req, v) = verdict(args, budget, transitivity_verdict)?;
            ("transitivity", 1, req, v)
        }
        Command::Weakmix(args) => {
            let (req, v) = verdict(args, budget, weakmix_verdict)?;
            ("weakmix", 1, req, v)
        }
        Command::Mixing(args) => {
            let (req, v) = verdict(args, budget, mixing_verdict)?;
            ("mixing", 1, req, v)
        }
        Command::Sensitivity {
            system,
            delta,
            pair,
            scale,
            horizon,
        } => {
            let (d, sch) = exact(&system.system)?;
            let (delta, delta_source) = match (delta, pair) {
                (Some(dl), _) => (rational("delta", dl)?, json!("--delta")),
                (None, Some(p)) => {
                    let pts = rationals("pair", p)?;
                    let [x0, y0] = pts.as_slice() else {
                        return Err(Error::InvalidArgument("--pair needs two points".into()));
                    };
                    (sensitivity_constant(x0, y0)?, json!({ "pair": [x0.to_string(), y0.to_string()] }))
                }
                (None, None) => {
                    let (lo, hi) = (sch.domain().lo(), sch.domain().hi());
                    (
                        sensitivity_constant(lo, hi)?,
                        json!({ "pair": [lo.to_string(), hi.to_string()], "default": true }),
                    )
                }
            };
            let scale = rational("scale", scale)?;
            let out = sensitivity_certificate(&sch, &delta, &scale, *horizon, &budget.budget)?;
            (
                "sensitivity",
                1,
                json!({
                    "system": d.source,
                    "delta": delta.to_string(),
                    "delta_from": delta_source,
                    "scale": scale.to_string(),
                    "H": horizon,
                }),
                serde_json::to_value(out).expect("serializable"),
            )
        }
        Command::Mc {
            system,
            a,
            b,
            x,
            epsilon,
            n,
            samples,
            seed,
        } => {
            let d = resolve_system(&system.system)?;
            let f = d.to_float();
            let cfg = SampleConfig::new(*samples, *seed)?;
            let mut request = json!({
                "system": d.source,
                "n": n,
                "samples": samples,
                "seed": seed,
                "sampler": "uniform on the domain, ChaCha8",
            });
            let result = match (a, b, x, epsilon) {
                (Some(a), Some(b), _, _) => {
                    let (a, b) = (set("A", a)?, set("B", b)?);
                    request["A"] = json!(a);
                    request["B"] = json!(b);
                    let e = mc_correlation(&f, &FloatSet::from(&a), &FloatSet::from(&b), *n, &cfg);
                    json!({ "mode": "correlation", "estimate": e })
                }
                (_, _, Some(x), Some(eps)) => {
                    let (x, eps) = (rational("x", x)?, rational("epsilon", eps)?);
                    request["x"] = x.to_string().into();
                    request["epsilon"] = eps.to_string().into();
                    let s = mc_separation(&f, to_f64(&x), to_f64(&eps), *n, &cfg)?;
                    json!({ "mode": "separation", "separation": s, "estimate_only": f.estimate_only() })
                }
                _ => {
                    return Err(Error::InvalidArgument(
                        "give --A and --B, or --x and --epsilon".into(),
                    ))
                }
            };
            ("mc", 0, request, result)
        }
        Command::Verify { example } => {
            let r = verify_bundled(example, &budget.budget)?;
            (
                "verify",
                1,
                json!({ "example": example }),
                json!({ "passed": r.passed(), "report": r }),
            )
        }
    })
}
