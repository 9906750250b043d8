use std::collections::BTreeMap;

use clap::{Args, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wg_core::algebra::{laurent_expand, rational_to_string};
use wg_core::cache::{self, TableStore};
use wg_core::characters::{character_table, zonal_table};
use wg_core::counts::{
    calibrate_palindromic_convention, matching_monotone_counts, matching_monotone_series,
    monotone_counts, monotone_series, orthogonal_proper_count, orthogonal_proper_series,
    palindromic_monotone_counts, palindromic_monotone_series, proper_counts, proper_series,
    CountTable, Family, OrderConvention, ORTHOGONAL_PROPER_KMAX,
};
use wg_core::enumeration::{
    enumerate_orthogonal, enumerate_unitary, orthogonal_summary, theorem1_series, theorem3_series,
    unitary_summary,
};
use wg_core::weingarten::{gram_wg_orthogonal, gram_wg_unitary, weingarten, Group};
use wg_core::wick::{Ensemble, IndexedProduct};
use wg_core::{LaurentSeries, Partition, WgError};

use crate::output::{csv_table, json_line, series_rows, series_value};
use crate::verify::{self, Suite};
use crate::{Failure, Format, GlobalArgs};

type Out = Result<String, Failure>;

fn partition(s: &str) -> Result<Partition, Failure> {
    s.parse::<Partition>().map_err(Failure::Domain)
}

fn group(s: &str) -> Result<Group, Failure> {
    s.parse::<Group>().map_err(Failure::Domain)
}

fn log(global: &GlobalArgs, msg: impl FnOnce() -> String) {
    if global.verbose > 0 {
        eprintln!("{}", msg());
    }
}

fn render_series(format: Format, head: Value, series: &LaurentSeries) -> Out {
    match format {
        Format::Text => Ok(format!("{series}\n")),
        Format::Json => {
            let mut v = head;
            v["series"] = series_value(series);
            Ok(json_line(&v))
        }
        Format::Csv => csv_table(&["power", "coefficient"], &series_rows(series)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalForm {
    Rational,
    Series,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Character,
    Gram,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// unitary | orthogonal | orthogonal-shifted (u, o accepted).
    #[arg(long)]
    group: String,
    /// Cycletype or cosettype, e.g. `2,1`.
    #[arg(long)]
    partition: String,
    #[arg(long, value_enum, default_value_t = EvalForm::Rational)]
    form: EvalForm,
    /// Truncation: keep terms through `N^-order` (series form).
    #[arg(long)]
    order: Option<i64>,
    /// Dimension `N` (numeric form).
    #[arg(long = "n")]
    big_n: Option<i64>,
    /// Numeric route: character expansion or Gram matrix inversion.
    #[arg(long, value_enum, default_value_t = Route::Character)]
    route: Route,
}

pub fn eval(global: &GlobalArgs, a: EvalArgs) -> Out {
    let g = group(&a.group)?;
    let p = partition(&a.partition)?;
    let head = json!({"group": g.to_string(), "partition": p.to_string(), "form": a.form.to_possible_value().unwrap().get_name()});
    match a.form {
        EvalForm::Rational => {
            let f = weingarten(g, &p)?.value;
            let (expanded, factored) = (f.to_expanded_string(), f.to_factored_string());
            match global.format {
                Format::Text => Ok(format!("{expanded}\n")),
                Format::Json => {
                    let mut v = head;
                    v["expanded"] = json!(expanded);
                    v["factored"] = json!(factored);
                    Ok(json_line(&v))
                }
                Format::Csv => csv_table(
                    &["group", "partition", "expanded", "factored"],
                    &[vec![g.to_string(), p.to_string(), expanded, factored]],
                ),
            }
        }
        EvalForm::Series => {
            let order = a
                .order
                .ok_or_else(|| Failure::Usage("--form series requires --order".into()))?;
            let f = weingarten(g, &p)?.value;
            let series = laurent_expand(&f, order)?;
            render_series(global.format, head, &series)
        }
        EvalForm::Numeric => {
            let n = a
                .big_n
                .ok_or_else(|| Failure::Usage("--form numeric requires --n".into()))?;
            let value = match a.route {
                Route::Character => weingarten(g, &p)?.value.eval_int(n)?,
                Route::Gram => match g {
                    Group::Unitary => gram_wg_unitary(&p, n)?,
                    Group::Orthogonal => gram_wg_orthogonal(&p, n)?,
                    Group::OrthogonalShifted => gram_wg_orthogonal(&p, n + 1)?,
                },
            };
            let value = rational_to_string(&value);
            let route = a.route.to_possible_value().unwrap().get_name().to_string();
            match global.format {
                Format::Text => Ok(format!("{value}\n")),
                Format::Json => {
                    let mut v = head;
                    v["n"] = json!(n);
                    v["route"] = json!(route);
                    v["value"] = json!(value);
                    Ok(json_line(&v))
                }
                Format::Csv => csv_table(
                    &["group", "partition", "n", "route", "value"],
                    &[vec![
                        g.to_string(),
                        p.to_string(),
                        n.to_string(),
                        route,
                        value,
                    ]],
                ),
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CountsEmit {
    Counts,
    Series,
}

#[derive(Args, Debug)]
pub struct CountsArgs {
    /// monotone | proper | matching-monotone | palindromic-monotone | orthogonal-proper.
    #[arg(long)]
    family: String,
    #[arg(long)]
    partition: String,
    /// Largest length `k` (largest rank sum `d` for the proper families).
    #[arg(long, default_value_t = 6)]
    kmax: usize,
    #[arg(long, value_enum, default_value_t = CountsEmit::Counts)]
    emit: CountsEmit,
    /// Series truncation order (series emit).
    #[arg(long)]
    order: Option<i64>,
    /// Palindromic order convention; calibrated when omitted.
    #[arg(long)]
    convention: Option<String>,
}

fn orthogonal_proper_table(
    beta: &Partition,
    d_max: usize,
) -> Result<BTreeMap<(usize, usize), String>, WgError> {
    let mut out = BTreeMap::new();
    for d in 0..=d_max {
        for k in 0..=d.min(ORTHOGONAL_PROPER_KMAX) {
            out.insert(
                (k, d),
                rational_to_string(&orthogonal_proper_count(beta, k, d)?),
            );
        }
    }
    Ok(out)
}

pub fn counts(global: &GlobalArgs, a: CountsArgs) -> Out {
    let family: Family = a.family.parse()?;
    let p = partition(&a.partition)?;
    let convention = match (&a.convention, family) {
        (Some(c), Family::PalindromicMonotone) => c.parse::<OrderConvention>()?,
        (Some(_), _) => {
            return Err(Failure::Usage(
                "--convention applies to palindromic-monotone only".into(),
            ))
        }
        (None, _) => calibrate_palindromic_convention()?,
    };
    log(global, || format!("counting {family} for {p}"));
    if a.emit == CountsEmit::Series {
        let order = a
            .order
            .ok_or_else(|| Failure::Usage("--emit series requires --order".into()))?;
        let series = match family {
            Family::Monotone => monotone_series(&p, order)?,
            Family::Proper => proper_series(&p, order)?,
            Family::MatchingMonotone => matching_monotone_series(&p, order)?,
            Family::PalindromicMonotone => palindromic_monotone_series(&p, order, convention)?,
            Family::OrthogonalProper => orthogonal_proper_series(&p, order)?,
        };
        let head = json!({"family": family.to_string(), "partition": p.to_string()});
        return render_series(global.format, head, &series);
    }
    if family == Family::OrthogonalProper {
        // Rational values: the count of tuples in S_2n is divided by |H_n|.
        let table = orthogonal_proper_table(&p, a.kmax)?;
        return match global.format {
            Format::Text => Ok(table
                .iter()
                .map(|((k, d), v)| format!("{k} {d} {v}\n"))
                .collect()),
            Format::Json => {
                let entries: Vec<Value> = table
                    .iter()
                    .map(|((k, d), v)| json!({"k": k, "d": d, "value": v}))
                    .collect();
                Ok(json_line(
                    &json!({"family": family.to_string(), "partition": p.to_string(), "entries": entries}),
                ))
            }
            Format::Csv => csv_table(
                &["k", "d", "value"],
                &table
                    .iter()
                    .map(|((k, d), v)| vec![k.to_string(), d.to_string(), v.clone()])
                    .collect::<Vec<_>>(),
            ),
        };
    }
    let table: CountTable = match family {
        Family::Monotone => monotone_counts(&p, a.kmax)?,
        Family::Proper => proper_counts(&p, a.kmax)?,
        Family::MatchingMonotone => matching_monotone_counts(&p, a.kmax)?,
        Family::PalindromicMonotone => palindromic_monotone_counts(&p, a.kmax, convention)?,
        Family::OrthogonalProper => unreachable!("handled above"),
    };
    let d = |e: &wg_core::counts::CountEntry| e.d.map(|d| d.to_string()).unwrap_or_default();
    match global.format {
        Format::Text => Ok(table
            .entries
            .iter()
            .map(|e| match e.d {
                Some(d) => format!("{} {} {}\n", e.k, d, e.count),
                None => format!("{} {}\n", e.k, e.count),
            })
            .collect()),
        Format::Json => Ok(json_line(&table)),
        Format::Csv => csv_table(
            &["k", "d", "count"],
            &table
                .entries
                .iter()
                .map(|e| vec![e.k.to_string(), d(e), e.count.to_string()])
                .collect::<Vec<_>>(),
        ),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumerateEmit {
    Records,
    Census,
    /// Orthogonal only: census up to the orientation of each internal vertex.
    VertexCensus,
    Coefficient,
    Series,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    /// u | o (unitary | orthogonal).
    #[arg(long)]
    group: String,
    #[arg(long)]
    partition: String,
    /// Euler characteristic (lowest one kept, for the series emit).
    #[arg(long, allow_hyphen_values = true)]
    chi: i64,
    #[arg(long, value_enum, default_value_t = EnumerateEmit::Census)]
    emit: EnumerateEmit,
}

fn census_output(format: Format, census: &BTreeMap<Partition, u64>) -> Out {
    let map: serde_json::Map<String, Value> = census
        .iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    match format {
        Format::Text => Ok(census.iter().map(|(k, v)| format!("{k} {v}\n")).collect()),
        Format::Json => Ok(json_line(&map)),
        Format::Csv => csv_table(
            &["complement", "maps"],
            &census
                .iter()
                .map(|(k, v)| vec![k.to_string(), v.to_string()])
                .collect::<Vec<_>>(),
        ),
    }
}

pub fn enumerate(global: &GlobalArgs, a: EnumerateArgs) -> Out {
    let g = group(&a.group)?;
    let p = partition(&a.partition)?;
    let chi = a.chi;
    let unitary = match g {
        Group::Unitary => true,
        Group::Orthogonal => false,
        Group::OrthogonalShifted => {
            return Err(Failure::Usage("enumerate takes --group u or o".into()));
        }
    };
    log(global, || format!("enumerating {g} {p} at chi = {chi}"));
    let head = json!({"group": g.to_string(), "partition": p.to_string(), "chi": chi});
    match a.emit {
        EnumerateEmit::Records => records_output(global.format, unitary, &p, chi),
        EnumerateEmit::Census if unitary => {
            census_output(global.format, &unitary_summary(&p, chi)?.maps)
        }
        EnumerateEmit::Census => census_output(global.format, &orthogonal_summary(&p, chi)?.maps),
        EnumerateEmit::VertexCensus if unitary => Err(Failure::Usage(
            "--emit vertex-census applies to the orthogonal group only".into(),
        )),
        EnumerateEmit::VertexCensus => census_output(
            global.format,
            &orthogonal_summary(&p, chi)?.vertex_flip_census()?,
        ),
        EnumerateEmit::Coefficient => {
            let (coefficient, extra) = if unitary {
                let s = unitary_summary(&p, chi)?;
                (s.coefficient(), Some(s.sum_rule_value()))
            } else {
                (orthogonal_summary(&p, chi)?.coefficient(), None)
            };
            let c = rational_to_string(&coefficient);
            match global.format {
                Format::Text => Ok(format!("{c}\n")),
                Format::Json => {
                    let mut v = head;
                    v["coefficient"] = json!(c);
                    if let Some(e) = &extra {
                        v["sum_rule_value"] = json!(rational_to_string(e));
                    }
                    Ok(json_line(&v))
                }
                Format::Csv => csv_table(
                    &["group", "partition", "chi", "coefficient", "sum_rule_value"],
                    &[vec![
                        g.to_string(),
                        p.to_string(),
                        chi.to_string(),
                        c,
                        extra.map(|e| rational_to_string(&e)).unwrap_or_default(),
                    ]],
                ),
            }
        }
        EnumerateEmit::Series => {
            let series = if unitary {
                theorem1_series(&p, chi)?
            } else {
                theorem3_series(&p, chi)?
            };
            render_series(global.format, head, &series)
        }
    }
}

fn records_output(format: Format, unitary: bool, p: &Partition, chi: i64) -> Out {
    let n = p.weight();
    let (header, rows, values): (Vec<&str>, Vec<Vec<String>>, Vec<Value>) = if unitary {
        let recs = enumerate_unitary(p, chi)?;
        debug_assert!(recs.iter().all(|r| r.verify(n)));
        (
            vec!["m", "rho", "Pi", "tau1", "tau2", "chi"],
            recs.iter()
                .map(|r| {
                    vec![
                        r.m.to_string(),
                        r.rho.to_string(),
                        r.target.to_string(),
                        r.tau1.to_string(),
                        r.tau2.to_string(),
                        r.chi.to_string(),
                    ]
                })
                .collect(),
            recs.iter()
                .map(|r| serde_json::to_value(r).expect("record serializes"))
                .collect(),
        )
    } else {
        let recs = enumerate_orthogonal(p, chi)?;
        debug_assert!(recs.iter().all(|r| r.verify(n)));
        (
            vec!["m", "rho", "Pi", "theta", "f1", "f2", "chi", "chi_literal"],
            recs.iter()
                .map(|r| {
                    vec![
                        r.m.to_string(),
                        r.rho.to_string(),
                        r.target.to_string(),
                        r.theta.to_string(),
                        r.f1.to_string(),
                        r.f2.to_string(),
                        r.chi.to_string(),
                        r.chi_literal.to_string(),
                    ]
                })
                .collect(),
            recs.iter()
                .map(|r| serde_json::to_value(r).expect("record serializes"))
                .collect(),
        )
    };
    match format {
        Format::Json => Ok(values.iter().map(json_line).collect()),
        Format::Text => Ok(rows
            .iter()
            .map(|row| {
                let fields: Vec<String> = header
                    .iter()
                    .zip(row)
                    .map(|(h, v)| format!("{h}={v}"))
                    .collect();
                fields.join(" ") + "\n"
            })
            .collect()),
        Format::Csv => csv_table(&header, &rows),
    }
}

#[derive(Args, Debug)]
pub struct WickArgs {
    #[arg(long, value_parser = parse_ensemble)]
    kind: Ensemble,
    /// `;`-separated `row,col` factors; a trailing `*` conjugates a complex factor.
    #[arg(long)]
    factors: String,
    /// Variance parameter Ω (a positive rational).
    #[arg(long, default_value = "1")]
    omega: String,
}

fn parse_ensemble(s: &str) -> Result<Ensemble, String> {
    s.parse().map_err(|e: WgError| e.to_string())
}

pub fn wick(global: &GlobalArgs, a: WickArgs) -> Out {
    let product = IndexedProduct::parse(a.kind, &a.factors, &a.omega)?;
    let moment = rational_to_string(&product.moment());
    let omega = rational_to_string(product.omega());
    match global.format {
        Format::Text => Ok(format!("{moment}\n")),
        Format::Json => Ok(json_line(&json!({
            "kind": a.kind.to_string(),
            "factors": a.factors,
            "omega": omega,
            "moment": moment,
        }))),
        Format::Csv => csv_table(
            &["kind", "factors", "omega", "moment"],
            &[vec![a.kind.to_string(), a.factors, omega, moment]],
        ),
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::Small)]
    suite: Suite,
}

pub fn verify(global: &GlobalArgs, a: VerifyArgs) -> Out {
    let report = verify::run(a.suite, |c| {
        log(global, || {
            format!(
                "criterion {} {}: {}",
                c.id,
                c.name,
                if c.passed { "pass" } else { "FAIL" }
            )
        })
    });
    let passed = report.passed;
    let text = match global.format {
        Format::Json => json_line(&report),
        Format::Text => report.to_text(),
        Format::Csv => csv_table(
            &["id", "name", "tag", "passed", "computed", "expected"],
            &report
                .criteria
                .iter()
                .map(|c| {
                    vec![
                        c.id.to_string(),
                        c.name.to_string(),
                        c.tag.to_string(),
                        c.passed.to_string(),
                        c.computed.clone(),
                        c.expected.clone(),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    };
    if passed {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

#[derive(Args, Debug)]
pub struct CacheArgs {
    #[command(subcommand)]
    action: CacheAction,
}

#[derive(Subcommand, Debug)]
enum CacheAction {
    /// Print the cache directory.
    Path,
    /// List stored tables and whether they are current.
    List,
    /// Build and store the character and zonal tables up to a size.
    Warm {
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Delete every stored table.
    Clear,
}

pub fn cache(global: &GlobalArgs, a: CacheArgs) -> Out {
    let store = TableStore::new(&global.cache_dir);
    let dir = store.dir().display().to_string();
    match a.action {
        CacheAction::Path => match global.format {
            Format::Json => Ok(json_line(&json!({"dir": dir}))),
            Format::Text => Ok(format!("{dir}\n")),
            Format::Csv => csv_table(&["dir"], &[vec![dir]]),
        },
        CacheAction::List => {
            let entries = store.list()?;
            match global.format {
                Format::Json => Ok(json_line(&json!({"dir": dir, "entries": entries}))),
                Format::Text => Ok(entries
                    .iter()
                    .map(|e| {
                        format!(
                            "{} {} {}\n",
                            e.kind,
                            e.n,
                            if e.valid { "valid" } else { "stale" }
                        )
                    })
                    .collect()),
                Format::Csv => csv_table(
                    &["kind", "n", "valid", "path"],
                    &entries
                        .iter()
                        .map(|e| {
                            vec![
                                e.kind.clone(),
                                e.n.to_string(),
                                e.valid.to_string(),
                                e.path.display().to_string(),
                            ]
                        })
                        .collect::<Vec<_>>(),
                ),
            }
        }
        CacheAction::Warm { max_n } => {
            if global.no_cache {
                return Err(Failure::Usage("cache warm needs the cache enabled".into()));
            }
            cache::configure(Some(global.cache_dir.clone()));
            for n in 1..=max_n {
                log(global, || format!("building tables for n = {n}"));
                character_table(n)?;
                if n <= wg_core::characters::ZONAL_BOUND {
                    zonal_table(n)?;
                }
            }
            let written = store.list()?.len();
            match global.format {
                Format::Json => Ok(json_line(&json!({"dir": dir, "tables": written}))),
                Format::Text => Ok(format!("{written} tables in {dir}\n")),
                Format::Csv => csv_table(&["dir", "tables"], &[vec![dir, written.to_string()]]),
            }
        }
        CacheAction::Clear => {
            let removed = store.clear()?;
            match global.format {
                Format::Json => Ok(json_line(&json!({"dir": dir, "removed": removed}))),
                Format::Text => Ok(format!("removed {removed} tables from {dir}\n")),
                Format::Csv => csv_table(&["dir", "removed"], &[vec![dir, removed.to_string()]]),
            }
        }
    }
}
