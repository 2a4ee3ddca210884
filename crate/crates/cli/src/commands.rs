use num_complex::Complex64;
use resolvent::bounds::{self, BoundsError, BoundsRow};
use resolvent::exact_core::nat;
use resolvent::planes::{self, Check, LedgerCase, LedgerReport, PlanesError, SliceConfig, Status, CERTIFY_TOL};
use resolvent::polar::{is_k_polar_point, HSystem};
use resolvent::poly::{Field, HPoly};
use resolvent::sample::{complex_form, rng};
use resolvent::tschirnhaus::{build_tschirnhaus, GeneralPoly};
use resolvent::verify::{self, SuiteReport};
use serde_json::{json, Value};

use crate::args::*;
use crate::output::{check, Outcome, Rows};
use crate::CliError;

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Bounds(b) => bounds_cmd(b),
        Command::Check(c) => check_cmd(c, cli.precision),
        Command::Verify(v) => Ok(verify_cmd(v, cli.seed)),
        Command::Audit(AuditCmd::Ledger { case }) => audit(case),
        Command::Find(FindCmd::Plane { quadrics, k, dim }) => find_plane(*quadrics, *k, *dim, cli.seed),
        Command::Tschirnhaus(TschirnhausCmd::Build { n, upto }) => tschirnhaus(*n, *upto, cli.seed),
        Command::Pipeline(PipelineCmd::Run { n, depth }) => pipeline(*n, *depth, cli.seed),
    }
}

fn rows(header: &[&str], records: Vec<Vec<String>>) -> Rows {
    Rows {
        header: header.iter().map(|s| s.to_string()).collect(),
        records,
        json: None,
    }
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn bounds_cmd(cmd: &BoundsCmd) -> Result<Outcome, CliError> {
    let out = match cmd {
        BoundsCmd::G(M { m }) | BoundsCmd::F(M { m }) => {
            let (name, v) = match cmd {
                BoundsCmd::G(_) => ("G", bounds::g(*m)?),
                _ => ("F", bounds::f(*m)?),
            };
            let text = v.value.to_string();
            Outcome::rows(rows(
                &["function", "m", "value", "witness_d"],
                vec![vec![name.into(), m.to_string(), v.value.to_string(), opt(v.witness)]],
            ))
            .with_text(text)
        }
        BoundsCmd::Theta(Dk { d, k }) => {
            let v = bounds::theta(*d, *k)?;
            Outcome::rows(rows(
                &["d", "k", "theta"],
                vec![vec![d.to_string(), k.to_string(), v.to_string()]],
            ))
            .with_text(v.to_string())
        }
        BoundsCmd::Phi(Dk { d, k }) | BoundsCmd::WolfsonPhi(Dk { d, k }) => {
            let v = match cmd {
                BoundsCmd::Phi(_) => bounds::phi(*d, *k)?,
                _ => bounds::Phi(*d, *k)?,
            };
            let source = serde_json::to_value(v.source).expect("source serializes");
            let source = source.as_str().unwrap_or_default().to_string();
            Outcome::rows(rows(
                &["d", "k", "value", "source"],
                vec![vec![d.to_string(), k.to_string(), v.value.to_string(), source.clone()]],
            ))
            .with_text(format!("{} ({source})", v.value))
        }
        BoundsCmd::Psi(Dk { d, k }) => {
            let v = bounds::psi(*d, *k)?;
            let records = v
                .entries
                .iter()
                .enumerate()
                .map(|(i, e)| vec![i.to_string(), e.to_string()])
                .collect();
            let text: Vec<String> = v.entries.iter().map(ToString::to_string).collect();
            Outcome::rows(rows(&["i", "psi"], records)).with_text(text.join(" "))
        }
        BoundsCmd::Dims { d, r } => {
            let rr = nat(*r);
            let show = |x: Result<resolvent::Natural, BoundsError>| match x {
                Ok(v) => Ok(v.to_string()),
                Err(BoundsError::EmptyModuli(_)) => Ok("empty".to_string()),
                Err(e) => Err(e),
            };
            let cells = vec![
                show(bounds::dim_param_hyp(*d, &rr))?,
                show(bounds::dim_moduli_hyp(*d, &rr))?,
                show(bounds::dim_param_chain(*d, &rr))?,
                show(bounds::dim_moduli_chain(*d, &rr))?,
            ];
            let names = [
                "param_hypersurface",
                "moduli_hypersurface",
                "param_chain",
                "moduli_chain",
            ];
            let text: Vec<String> = names.iter().zip(&cells).map(|(n, c)| format!("{n}: {c}")).collect();
            let mut rec = vec![d.to_string(), r.to_string()];
            rec.extend(cells);
            let mut header = vec!["d", "r"];
            header.extend(names);
            Outcome::rows(rows(&header, vec![rec])).with_text(text.join("\n"))
        }
        BoundsCmd::Table1(Range { from, to }) => table(bounds::table1(*from, *to)?),
        BoundsCmd::Table2(Range { from, to }) => table(bounds::table2(*from, *to)?),
    };
    Ok(out)
}

fn table(rows: Vec<BoundsRow>) -> Outcome {
    let json = rows
        .iter()
        .map(|r| serde_json::to_value(r).expect("row serializes"))
        .collect();
    Outcome::rows(Rows {
        header: BoundsRow::CSV_HEADER.iter().map(|s| s.to_string()).collect(),
        records: rows.iter().map(|r| r.csv_record().to_vec()).collect(),
        json: Some(json),
    })
}

fn sweep(r: &bounds::SweepReport, range: &str) -> Check {
    let mut c = check(
        format!("{} for {range}", r.name),
        format!("{0}/{0} cases", r.cases),
        format!("{}/{} cases", r.cases - r.failures.len(), r.cases),
        r.ok(),
    );
    if !r.ok() {
        c.note = Some(format!("failing: {}", r.failures.join("; ")));
    }
    c
}

fn check_cmd(cmd: &CheckCmd, precision: u32) -> Result<Outcome, CliError> {
    let checks = match cmd {
        CheckCmd::Identities { max } => {
            let d_max = (*max).clamp(3, 20);
            vec![
                sweep(
                    &bounds::combinatorial_identity_sweep(*max),
                    &format!("1 <= r, d <= {max}"),
                ),
                sweep(
                    &bounds::theta_minimality_sweep(d_max, *max)?,
                    &format!("3 <= d <= {d_max}, 1 <= k <= {max}"),
                ),
                sweep(
                    &bounds::theta_upper_bound_sweep(*max)?,
                    &format!("4 <= d <= m-2, m <= {max}"),
                ),
            ]
        }
        CheckCmd::Analytic { max, d_max } => {
            let r = bounds::analytic_inequality_suite(*max, *d_max, precision)?;
            let families = [
                "stirling_lower",
                "stirling_upper",
                "log_central_binomial",
                "log_frak_c_lower",
            ];
            families
                .iter()
                .map(|fam| {
                    let of: Vec<_> = r.checks.iter().filter(|c| c.family == *fam).collect();
                    let bad: Vec<String> = of.iter().filter(|c| !c.pass).map(|c| c.parameter.to_string()).collect();
                    let range = if fam.starts_with("stirling") {
                        format!("1..={max}")
                    } else {
                        format!("4..={d_max}")
                    };
                    let mut c = check(
                        format!("{fam} over {range}"),
                        format!("{0}/{0}", of.len()),
                        format!("{}/{}", of.len() - bad.len(), of.len()),
                        bad.is_empty(),
                    );
                    if !bad.is_empty() {
                        c.note = Some(format!("failing at {}", bad.join(", ")));
                    }
                    c
                })
                .collect()
        }
        CheckCmd::Monotone { max } => {
            if *max < 5 {
                return Err(CliError::Usage("monotone needs --max >= 5".into()));
            }
            let mut checks = Vec::new();
            for m in 5..=*max {
                let r = bounds::psi_monotonicity_check(m)?;
                let aligned = r.steps.iter().filter(|s| s.method == "aligned").count();
                let bad: Vec<String> = r.steps.iter().filter(|s| !s.holds).map(|s| s.d.to_string()).collect();
                let mut c = check(
                    format!("psi chain nondecreasing in d at m = {m}"),
                    "holds",
                    if r.holds {
                        "holds".to_string()
                    } else {
                        format!("fails at d = {}", bad.join(", "))
                    },
                    r.holds,
                );
                if aligned > 0 {
                    c.note = Some(format!(
                        "{aligned} of {} links compared through the shared tail",
                        r.steps.len()
                    ));
                }
                checks.push(c);
            }
            checks
        }
        CheckCmd::Comparison { max, checkpoints } => {
            let r = bounds::comparison_check(*max)?;
            let expected: Vec<String> = bounds::EXPECTED_EQUALITY_SET
                .iter()
                .filter(|&&m| m <= *max)
                .map(ToString::to_string)
                .collect();
            let got: Vec<String> = r.equality_set.iter().map(ToString::to_string).collect();
            let mut checks = vec![
                check(
                    format!("G(m) <= F(m) for 1 <= m <= {max}"),
                    "holds",
                    verdict(r.g_le_f),
                    r.g_le_f,
                ),
                check(
                    format!("G(m) = F(m) exactly on the expected set, m <= {max}"),
                    format!("{{{}}}", expected.join(", ")),
                    format!("{{{}}}", got.join(", ")),
                    r.equality_set_matches(),
                ),
                check(
                    format!("G nondecreasing, m <= {max}"),
                    "holds",
                    verdict(r.g_nondecreasing),
                    r.g_nondecreasing,
                ),
                check(
                    format!("F nondecreasing, m <= {max}"),
                    "holds",
                    verdict(r.f_nondecreasing),
                    r.f_nondecreasing,
                ),
            ];
            if *checkpoints {
                for d in 11..=13 {
                    let c = bounds::ratio_checkpoint(d)?;
                    checks.push(check(
                        format!("F/G > {} at m = {}", d + 1, c.m),
                        format!("> {}", d + 1),
                        c.ratio_approx.clone().unwrap_or_default(),
                        c.holds,
                    ));
                }
            }
            checks
        }
    };
    Ok(Outcome::checks(checks))
}

fn verdict(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn suite(r: &SuiteReport, what: &str) -> Vec<Check> {
    let mut head = check(
        format!("{what} (seed {}, {} trials)", r.seed, r.trials),
        format!("{0}/{0}", r.trials),
        format!("{}/{}", r.passed, r.trials),
        r.ok(),
    );
    head.note = Some(format!("{} exact, {} complex", r.exact, r.trials - r.exact));
    let mut out = vec![head];
    out.extend(
        r.failures
            .iter()
            .map(|f| check(format!("trial {}", f.trial), "holds", &f.detail, false)),
    );
    out
}

fn verify_cmd(cmd: &VerifyCmd, seed: u64) -> Outcome {
    match cmd {
        VerifyCmd::PolarIdentity { trials } => Outcome::checks(suite(
            &verify::technical_identity_suite(*trials, seed),
            "polar expansion identity",
        )),
        VerifyCmd::Bertini { trials } => Outcome::checks(suite(
            &verify::bertini_suite(*trials, seed),
            "lines through cone points lie on V",
        )),
    }
}

fn audit(case: &str) -> Result<Outcome, CliError> {
    let reports: Vec<LedgerReport> = if case == "all" {
        let mut v = planes::audit_all()?;
        v.push(planes::wolfson_pipeline_audit()?);
        v
    } else {
        let c: LedgerCase = case.parse().map_err(CliError::Usage)?;
        vec![planes::audit_ledger(c)?]
    };
    let multi = reports.len() > 1;
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    for r in &reports {
        checks.extend(r.checks.iter().cloned().map(|mut c| {
            if multi {
                c.description = format!("{}: {}", r.case, c.description);
            }
            c
        }));
        let eta = r.eta.as_ref().map(|e| format!(", η = {e}")).unwrap_or_default();
        notes.push(format!(
            "{}: {}{eta}, max extension degree {}, {} flagged",
            r.case,
            if r.passed() { "PASS" } else { "FAIL" },
            r.max_extension_degree,
            r.count(Status::Flagged)
        ));
    }
    let summary: Vec<Value> = reports
        .iter()
        .map(|r| {
            json!({
                "case": r.case,
                "passed": r.passed(),
                "flagged": r.count(Status::Flagged),
                "eta": r.eta.as_ref().map(ToString::to_string),
                "max_extension_degree": r.max_extension_degree.to_string(),
            })
        })
        .collect();
    let mut out = Outcome::checks(checks).with_extra("cases", Value::Array(summary));
    out.notes = notes;
    Ok(out)
}

fn render_points(points: &[resolvent::poly::PPoint<Complex64>]) -> Value {
    json!(points
        .iter()
        .map(|p| p.coords().iter().map(Field::render).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn find_plane(quadrics: usize, k: usize, dim: usize, seed: u64) -> Result<Outcome, CliError> {
    if quadrics == 0 || dim == 0 {
        return Err(CliError::Usage("need --quadrics >= 1 and --dim >= 1".into()));
    }
    let mut r = rng(seed);
    let polys: Vec<HPoly<Complex64>> = (0..quadrics).map(|_| complex_form(&mut r, dim + 1, 2)).collect();
    let v = HSystem::new(dim, polys).map_err(PlanesError::from)?;
    let plane = planes::quadric_k_plane(&v, k, None, &SliceConfig::with_seed(seed))?;
    let polar = is_k_polar_point(&v, &plane.points, CERTIFY_TOL).map_err(PlanesError::from)?;
    let on = plane.plane_residual <= CERTIFY_TOL;
    let worst = plane.point_residuals.iter().copied().fold(0.0, f64::max);
    let checks = vec![
        check(
            format!("{k}-plane lies on {quadrics} quadrics in P^{dim}"),
            format!("<= {CERTIFY_TOL:e}"),
            format!("{:e}", plane.plane_residual),
            on,
        ),
        check("spanning points form a polar point", "true", polar, polar),
        check(
            "largest point residual",
            format!("<= {CERTIFY_TOL:e}"),
            format!("{worst:e}"),
            worst <= CERTIFY_TOL,
        ),
    ];
    let info = json!({
        "points": render_points(&plane.points),
        "solve_degrees": plane.solve_degrees,
        "point_residuals": plane.point_residuals,
        "plane_residual": plane.plane_residual,
    });
    Ok(Outcome::checks(checks).with_extra("plane", info))
}

fn tschirnhaus(n: usize, upto: usize, seed: u64) -> Result<Outcome, CliError> {
    let p = GeneralPoly::random_rooted(n, seed);
    let t = build_tschirnhaus(&p, upto).map_err(PlanesError::from)?;
    let records =
        t.b.iter()
            .enumerate()
            .map(|(i, b)| vec![(i + 1).to_string(), b.to_string()])
            .collect();
    let mut text = vec![format!("p = {}", render_poly(&p))];
    text.extend(t.b.iter().enumerate().map(|(i, b)| format!("b_{} = {b}", i + 1)));
    Ok(Outcome::rows(rows(&["m", "b"], records))
        .with_text(text.join("\n"))
        .with_extra("polynomial", json!(p.a.iter().map(Field::render).collect::<Vec<_>>())))
}

fn render_poly(p: &GeneralPoly<resolvent::Rational>) -> String {
    let n = p.degree();
    let mut s = format!("z^{n}");
    for (i, a) in p.a.iter().enumerate() {
        let e = n - i - 1;
        let mono = match e {
            0 => String::new(),
            1 => "*z".into(),
            _ => format!("*z^{e}"),
        };
        s.push_str(&format!(" + ({a}){mono}"));
    }
    s
}

fn pipeline(n: usize, depth: usize, seed: u64) -> Result<Outcome, CliError> {
    let r = planes::run_pipeline(n, depth, &SliceConfig::with_seed(seed))?;
    let mut checks: Vec<Check> = r
        .stages
        .iter()
        .map(|s| {
            let mut c = check(
                format!("{} ({}, P^{})", s.name, s.system_type, s.ambient),
                format!("<= {CERTIFY_TOL:e}"),
                format!("{:e}", s.residual),
                s.residual <= CERTIFY_TOL,
            );
            c.note = Some(format!(
                "solved at degree {}, ledger degree {}",
                s.solve_degree, s.ledger_degree
            ));
            c
        })
        .collect();
    let plane = ["point", "line", "plane"][depth];
    checks.push(check(
        format!("{plane} lies on H, b_1, b_2, b_3"),
        format!("<= {CERTIFY_TOL:e}"),
        format!("{:e}", r.plane_residual),
        r.plane_residual <= CERTIFY_TOL,
    ));
    checks.push(check(
        "spanning points form a polar point",
        "true",
        r.polar_point,
        r.polar_point,
    ));
    checks.push(check(
        format!("{plane} misses [1:0:...:0]"),
        "true",
        r.off_axis,
        r.off_axis,
    ));
    checks.push(check(
        "c_1, c_2, c_3 of the transformed polynomial vanish",
        format!("<= {CERTIFY_TOL:e}"),
        format!("{:e}", r.transformed_residual),
        r.transformed_residual <= CERTIFY_TOL,
    ));
    let report = serde_json::to_value(&r).expect("report serializes");
    Ok(Outcome::checks(checks).with_extra("report", report))
}
