use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use coha::braiding::ybe_check;
use coha::coha::{product_all, psi, shuffle_product, CohaElement};
use coha::diffrep::{faithfulness_probe, operator_relation_check};
use coha::exactpoly::{parse_poly, Rational};
use coha::kron::{normal_order, GenWord, Kronecker, RelationKind};
use coha::quiver::{builtin_quiver, parse_quiver, DimVector, Quiver, QuiverSpec, Stability};
use coha::semistable::Semistable;
use coha::symmetric::{monomial_symmetric, partitions, schur, Partition};

use crate::report::Report;
use crate::{Command, QuiverArg};

pub fn run(cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Product {
            quiver,
            left,
            dim_left,
            right,
            dim_right,
        } => product(quiver, left, dim_left, right, dim_right),
        Command::SstDims { quiver, dim, deg } => sst_dims(quiver, dim, *deg),
        Command::HnCheck { quiver, dim, deg } => hn_check(quiver, dim, *deg),
        Command::Relations { pmax, qmax } => relations(*pmax, *qmax),
        Command::Pbw { n, deg } => pbw(*n, *deg),
        Command::NormalOrder { word, no_check } => normal_order_cmd(word, !no_check),
        Command::Ybe { weight } => ybe(*weight),
        Command::DiffrepCheck { pmax, qmax, probe } => diffrep_check(*pmax, *qmax, *probe),
        Command::Faithfulness { n, weight } => faithfulness(*n, *weight),
        Command::SchurCheck { quiver, d, max } => schur_check(quiver, *d, *max),
    }
}

fn load_quiver(arg: &QuiverArg) -> Result<(Arc<Quiver>, Stability)> {
    let spec: QuiverSpec = match builtin_quiver(&arg.quiver) {
        Some(s) => s,
        None => {
            let text = std::fs::read_to_string(&arg.quiver).with_context(|| {
                format!("--quiver: '{}' is neither a built-in alias nor a readable file", arg.quiver)
            })?;
            parse_quiver(&text).with_context(|| format!("--quiver: {}", arg.quiver))?
        }
    };
    let n = spec.quiver.vertex_count();
    let theta = match &arg.theta {
        Some(t) => {
            let v = parse_list::<i64>(t).context("--theta")?;
            if v.len() != n {
                bail!("--theta: expected {n} entries, got {}", v.len());
            }
            Stability(v)
        }
        None => spec.stability_or_zero(),
    };
    Ok((Arc::new(spec.quiver), theta))
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| anyhow!("bad entry '{}' in '{s}'", x.trim())))
        .collect()
}

fn parse_dim(flag: &str, s: &str, q: &Quiver) -> Result<DimVector> {
    let v = parse_list::<u32>(s).with_context(|| format!("--{flag}"))?;
    q.dim(&v).map_err(|e| anyhow!("--{flag}: {e}"))
}

fn dim_text(d: &DimVector) -> String {
    d.0.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn product(q: &QuiverArg, left: &str, dl: &str, right: &str, dr: &str) -> Result<Report> {
    let (quiver, _) = load_quiver(q)?;
    let element = |flag: &str, poly: &str, dflag: &str, dim: &str| -> Result<CohaElement> {
        let p = parse_poly(poly).map_err(|e| anyhow!("--{flag}: {e}"))?;
        let d = parse_dim(dflag, dim, &quiver)?;
        CohaElement::new(quiver.clone(), d, p).map_err(|e| anyhow!("--{flag}: {e}"))
    };
    let f = element("left", left, "dim-left", dl)?;
    let g = element("right", right, "dim-right", dr)?;
    let h = shuffle_product(&f, &g)?;
    let mut r = Report::new("product", &["dim_vector", "polynomial"])
        .arg("quiver", q.quiver.as_str())
        .arg("left", left)
        .arg("dim_left", dl)
        .arg("right", right)
        .arg("dim_right", dr);
    r.push(vec![
        ("dim_vector", dim_text(h.dim()).into()),
        ("polynomial", h.poly().to_string().into()),
    ]);
    r.plain = Some(format!("{}\n", h.poly()));
    Ok(r)
}

fn sst_dims(q: &QuiverArg, dim: &str, deg: u32) -> Result<Report> {
    let (quiver, theta) = load_quiver(q)?;
    let d = parse_dim("dim", dim, &quiver)?;
    let s = Semistable::new(quiver, theta.clone())?;
    let mut r = Report::new("sst-dims", &["dim_vector", "degree", "total", "unstable", "semistable"])
        .arg("quiver", q.quiver.as_str())
        .arg("theta", theta.0.clone())
        .arg("dim", dim_text(&d))
        .arg("deg", deg);
    for m in 0..=deg {
        let u = s.unstable_subspace(&d, m)?;
        r.push(vec![
            ("dim_vector", dim_text(&d).into()),
            ("degree", m.into()),
            ("total", u.ambient_dimension().into()),
            ("unstable", u.dimension().into()),
            ("semistable", (u.ambient_dimension() - u.dimension()).into()),
        ]);
    }
    Ok(r)
}

fn hn_check(q: &QuiverArg, dim: &str, deg: u32) -> Result<Report> {
    let (quiver, theta) = load_quiver(q)?;
    let d = parse_dim("dim", dim, &quiver)?;
    let s = Semistable::new(quiver, theta.clone())?;
    let report = s.hn_dim_check(&d, deg)?;
    let mut r = Report::new("hn-check", &["dim_vector", "degree", "total", "strata_sum", "pass"])
        .arg("quiver", q.quiver.as_str())
        .arg("theta", theta.0.clone())
        .arg("dim", dim_text(&d))
        .arg("deg", deg);
    for row in report.rows {
        r.push(vec![
            ("dim_vector", dim_text(&d).into()),
            ("degree", row.degree.into()),
            ("total", row.total.into()),
            ("strata_sum", row.strata_sum.into()),
            ("pass", row.pass.into()),
        ]);
    }
    Ok(r)
}

fn relations(pmax: u32, qmax: u32) -> Result<Report> {
    let k = Kronecker::new();
    let mut r = Report::new("relations", &["kind", "p", "q", "degree", "exact_zero", "holds"])
        .arg("pmax", pmax)
        .arg("qmax", qmax);
    for kind in RelationKind::ALL {
        for p in 0..=pmax {
            for q in 0..=qmax {
                if !kind.admissible(p, q) {
                    continue;
                }
                let c = k.relation_check(kind, p, q)?;
                r.push(vec![
                    ("kind", kind.to_string().into()),
                    ("p", p.into()),
                    ("q", q.into()),
                    ("degree", c.degree.into()),
                    ("exact_zero", c.exact_zero.into()),
                    ("holds", c.holds.into()),
                ]);
            }
        }
    }
    Ok(r)
}

fn pbw(n: u32, deg: u32) -> Result<Report> {
    if n == 0 {
        bail!("--n: must be positive");
    }
    let report = Kronecker::new().pbw_check(n, deg)?;
    let mut r = Report::new(
        "pbw",
        &["n", "degree", "coh", "quotient_dim", "standard_monomials", "series_coefficient", "pass"],
    )
    .arg("n", n)
    .arg("deg", deg);
    for row in report.rows {
        r.push(vec![
            ("n", n.into()),
            ("degree", row.degree.into()),
            ("coh", row.coh.into()),
            ("quotient_dim", row.quotient_dim.into()),
            ("standard_monomials", row.standard_monomials.into()),
            ("series_coefficient", row.series_coefficient.into()),
            ("pass", row.pass.into()),
        ]);
    }
    Ok(r)
}

fn normal_order_cmd(word: &str, check: bool) -> Result<Report> {
    let w: GenWord = word.parse().map_err(|e| anyhow!("word: {e}"))?;
    let nf = normal_order(&w);
    let mut r = Report::new("normal-order", &["word", "coefficient"]).arg("word", w.to_string());
    for (v, c) in nf.terms() {
        r.push(vec![("word", v.to_string().into()), ("coefficient", c.to_string().into())]);
    }
    r.notes.push(format!("{w} = {nf}"));
    if check {
        let k = Kronecker::new();
        let direct = k.word_to_quotient(&w)?;
        let via = k.normal_form_to_quotient(&nf, w.len() as u32, w.weight())?;
        let agree = direct == via;
        r.pass &= agree;
        r = r.arg("quotient_check", agree);
    }
    Ok(r)
}

fn ybe(weight: u32) -> Result<Report> {
    let report = ybe_check(weight);
    let mut r = Report::new("ybe", &["tensor", "lhs", "rhs", "equal"]).arg("weight", weight);
    for c in &report.cases {
        let tensor: Vec<String> = c.tensor.iter().map(ToString::to_string).collect();
        r.push(vec![
            ("tensor", tensor.join("⊗").into()),
            ("lhs", c.lhs.to_string().into()),
            ("rhs", c.rhs.to_string().into()),
            ("equal", c.equal.into()),
        ]);
    }
    for (w, n, fails) in report.by_weight() {
        r.notes.push(format!("weight {w}: {n} triples, {fails} failures"));
    }
    Ok(r)
}

fn diffrep_check(pmax: u32, qmax: u32, probe: usize) -> Result<Report> {
    if probe == 0 {
        bail!("--probe: must be positive");
    }
    let mut r = Report::new("diffrep-check", &["kind", "p", "q", "probes", "failures", "pass"])
        .arg("pmax", pmax)
        .arg("qmax", qmax)
        .arg("probe", probe);
    for kind in RelationKind::ALL {
        for p in 0..=pmax {
            for q in 0..=qmax {
                if !kind.admissible(p, q) {
                    continue;
                }
                let c = operator_relation_check(kind, p, q, probe)?;
                r.push(vec![
                    ("kind", kind.to_string().into()),
                    ("p", p.into()),
                    ("q", q.into()),
                    ("probes", c.probes.into()),
                    ("failures", c.failures.len().into()),
                    ("pass", c.pass().into()),
                ]);
            }
        }
    }
    Ok(r)
}

fn faithfulness(n: u32, weight: u32) -> Result<Report> {
    let report = faithfulness_probe(n, weight);
    let mut r = Report::new("faithfulness", &["n", "weight", "monomials", "rank", "pass"])
        .arg("n", n)
        .arg("weight", weight);
    for row in &report.rows {
        r.push(vec![
            ("n", n.into()),
            ("weight", row.weight.into()),
            ("monomials", row.monomials.into()),
            ("rank", row.rank.into()),
            ("pass", (row.rank == row.monomials).into()),
        ]);
    }
    r.notes.push(format!("probe polynomials: {}", report.probes));
    Ok(r)
}

fn schur_check(alias: &str, d_max: usize, max: u32) -> Result<Report> {
    let quiver = match alias {
        "a1" | "l1" => Arc::new(builtin_quiver(alias).expect("built-in alias").quiver),
        other => bail!("--quiver: schur-check supports a1 and l1, got '{other}'"),
    };
    let mut r = Report::new("schur-check", &["d", "indices", "partition", "multiplier", "pass"])
        .arg("quiver", alias)
        .arg("d", d_max)
        .arg("max", max);
    for d in 1..=d_max {
        if alias == "a1" {
            for ks in increasing(d, max) {
                let factors: Vec<CohaElement> = ks.iter().map(|&k| psi(&quiver, 0, k)).collect();
                let product = product_all(&factors)?;
                let parts: Vec<u32> = ks.iter().rev().enumerate().map(|(i, &k)| k - (d - 1 - i) as u32).collect();
                let lambda = Partition::from_unsorted(parts);
                let expected = schur(&lambda, d)?;
                r.push(vec![
                    ("d", d.into()),
                    ("indices", list(&ks)),
                    ("partition", lambda.to_string().into()),
                    ("multiplier", "1".into()),
                    ("pass", (product.poly() == &expected).into()),
                ]);
            }
        } else {
            for size in 0..=max {
                for lambda in partitions(size, d) {
                    let ks = lambda.padded(d);
                    let factors: Vec<CohaElement> = ks.iter().map(|&k| psi(&quiver, 0, k)).collect();
                    let product = product_all(&factors)?;
                    let m = monomial_symmetric(&lambda, d)?;
                    let (lead, c) = m.leading_term().expect("nonzero monomial symmetric function");
                    let multiplier: Rational = product.poly().coeff(lead) / c;
                    let ok = multiplier > Rational::from_integer(0.into())
                        && multiplier.is_integer()
                        && product.poly() == &m.scale(&multiplier);
                    r.push(vec![
                        ("d", d.into()),
                        ("indices", list(&ks)),
                        ("partition", lambda.to_string().into()),
                        ("multiplier", multiplier.to_string().into()),
                        ("pass", ok.into()),
                    ]);
                }
            }
        }
    }
    Ok(r)
}

fn list(v: &[u32]) -> Value {
    json!(v.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

fn increasing(n: usize, max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Vec<u32>| {
                let start = t.last().map_or(0, |&l| l + 1);
                (start..=max).map(move |k| {
                    let mut t = t.clone();
                    t.push(k);
                    t
                })
            })
            .collect();
    }
    out
}
