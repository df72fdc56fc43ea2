//! `check`, `walls`, `exceptional` and `cohomology`.

use serde::Serialize;

use restrictor_core::chern::{euler_characteristic, tensor_line};
use restrictor_core::cohomology::{
    brill_noether_report_p2, ch_betti_hirzebruch, first_violating_degree_p2, general_betti, hirzebruch_bn_report,
    restricted_betti, restricted_closed_form_p2, restriction_map_dims, BettiTable, BnReport, RestrictionDims,
};
use restrictor_core::criteria::{general_surface, to_csv, CriterionInput, CriterionName, CriterionReport};
use restrictor_core::p2x::{self, ExceptionalSlope};
use restrictor_core::rational::{parse, serde_display, serde_q};
use restrictor_core::walls::{category_window, gieseker_bound_wall, is_outside, restriction_wall, Window};
use restrictor_core::{ChernCharacter, Error, SurfaceKind, Wall, WallKind, Q};

use crate::document::{OutputFormat, Problem};
use crate::render::{comments, csv, json, table};
use crate::svg::{diagram, Mark};
use crate::{CliError, Outcome, EXIT_SATISFIED, EXIT_UNDETERMINED, EXIT_UNSATISFIED};

const ASSUMPTIONS: &str = "C is integral, smooth and general in its class; E is general in its moduli space and (semi)stable";

fn unsupported(format: OutputFormat, command: &str) -> CliError {
    CliError::Input(format!("{command} has no {format:?} output"))
}

fn header_lines(p: &Problem, command: &str) -> Vec<String> {
    let surface = match p.surface.kind() {
        SurfaceKind::ProjectivePlane => "P2".to_string(),
        SurfaceKind::Hirzebruch { m } => format!("F_{m}"),
        SurfaceKind::Custom => "custom lattice".to_string(),
    };
    let twist = if p.twist_auto { " (minimizing)" } else { "" };
    let mut lines = vec![
        format!("restrictor {command}"),
        format!("surface {surface}; H = {}; D = {}{twist}", p.polarization(), p.ctx.d()),
        format!("v = (ch0, ch1, ch2) = ({}, {}, {})", p.v.ch0, p.v.ch1, p.v.ch2),
    ];
    if let Some(c) = &p.curve {
        let d = c.degree.map(|d| format!(" = {d}H")).unwrap_or_default();
        lines.push(format!("C = {}{d}", c.class));
    }
    lines.push(format!("assumes: {ASSUMPTIONS}"));
    lines
}

fn criterion_input(p: &Problem) -> CriterionInput {
    let mut input = CriterionInput::new(p.surface.clone(), p.v.clone(), p.ctx.clone());
    input.depth = p.depth;
    input
}

#[derive(Serialize)]
struct CheckJson<'a> {
    command: &'static str,
    reports: &'a [CriterionReport],
    skipped: &'a [Skipped],
}

#[derive(Serialize)]
struct Skipped {
    criterion: &'static str,
    reason: String,
}

/// Every criterion that applies to the document's curve. Exit 0 if any is satisfied.
pub fn check(p: &Problem, format: OutputFormat) -> Result<Outcome, CliError> {
    let curve = p.curve()?;
    let input = criterion_input(p);
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for name in CriterionName::ALL {
        let result = match curve.degree {
            Some(d) => input.evaluate(name, d),
            None if name == CriterionName::GeneralSurface => general_surface(&p.surface, &p.v, &curve.class, &p.ctx, input.input),
            None => Err(Error::WrongSurface {
                expected: "a curve of class dH",
            }),
        };
        match result {
            Ok(r) => reports.push(r),
            Err(e) => skipped.push(Skipped {
                criterion: name.id(),
                reason: e.to_string(),
            }),
        }
    }
    if reports.is_empty() {
        return Err(CliError::Input(format!(
            "no criterion applies: {}",
            skipped.iter().map(|s| format!("{}: {}", s.criterion, s.reason)).collect::<Vec<_>>().join("; ")
        )));
    }
    let code = if reports.iter().any(|r| r.satisfied) {
        EXIT_SATISFIED
    } else {
        EXIT_UNSATISFIED
    };
    let text = match format {
        OutputFormat::Csv => to_csv(&reports),
        OutputFormat::Json => json(&CheckJson {
            command: "check",
            reports: &reports,
            skipped: &skipped,
        }),
        OutputFormat::Table => {
            let mut hyps: Vec<&String> = reports.iter().flat_map(|r| &r.hypotheses).collect();
            hyps.sort();
            hyps.dedup();
            let mut head = header_lines(p, "check");
            head.extend(hyps.into_iter().map(|h| format!("criterion hypothesis: {h}")));
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.name.id().to_string(),
                        r.degree.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
                        r.lhs.to_string(),
                        r.rhs.to_string(),
                        r.satisfied.to_string(),
                        r.conclusion.to_string(),
                    ]
                })
                .collect();
            let mut out = comments(head);
            out += &table(&["criterion", "d", "lhs", "rhs", "satisfied", "conclusion"], &rows);
            for r in &reports {
                for c in &r.companions {
                    out += &format!("  {}: {} ({} vs {}) -> {}\n", r.name.id(), c.label, c.lhs, c.rhs, c.satisfied);
                }
            }
            for s in &skipped {
                out += &format!("  skipped {}: {}\n", s.criterion, s.reason);
            }
            out
        }
        OutputFormat::Svg => return Err(unsupported(format, "check")),
    };
    Ok(Outcome { text, code })
}

#[derive(Serialize)]
struct SweepRow {
    criterion: &'static str,
    minimal_d: Option<i64>,
    report: Option<CriterionReport>,
}

/// Minimal degree `d <= d_max` for each applicable criterion. Exit 0 if any exists.
pub fn sweep(p: &Problem, format: OutputFormat) -> Result<Outcome, CliError> {
    let input = criterion_input(p);
    let rows: Vec<SweepRow> = input
        .minimal_rows(p.d_max)?
        .into_iter()
        .map(|(name, report)| SweepRow {
            criterion: name.id(),
            minimal_d: report.as_ref().and_then(|r| r.degree),
            report,
        })
        .collect();
    let code = if rows.iter().any(|r| r.minimal_d.is_some()) {
        EXIT_SATISFIED
    } else {
        EXIT_UNSATISFIED
    };
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let (lhs, rhs, conclusion) = match &r.report {
                Some(rep) => (rep.lhs.to_string(), rep.rhs.to_string(), rep.conclusion.to_string()),
                None => Default::default(),
            };
            vec![
                r.criterion.to_string(),
                r.minimal_d.map(|d| d.to_string()).unwrap_or_default(),
                lhs,
                rhs,
                conclusion,
            ]
        })
        .collect();
    let header = ["criterion", "minimal_d", "lhs", "rhs", "conclusion"];
    let text = match format {
        OutputFormat::Csv => csv(&header, &cells),
        OutputFormat::Json => json(&rows),
        OutputFormat::Table => {
            let mut head = header_lines(p, "check --sweep");
            head.push(format!("d ranges over 1..={}", p.d_max));
            comments(head) + &table(&header, &cells)
        }
        OutputFormat::Svg => return Err(unsupported(format, "check --sweep")),
    };
    Ok(Outcome { text, code })
}

#[derive(Debug, Serialize)]
pub struct WallsReport {
    pub restriction: Wall,
    pub gieseker_bound: Option<Wall>,
    pub window: Window,
    #[serde(with = "restrictor_core::rational::serde_opt_q")]
    pub effective_center: Option<Q>,
    /// Whether the restriction wall lies outside the Gieseker-bound wall.
    pub restriction_outside_bound: Option<bool>,
    pub annotations: Vec<String>,
}

pub fn walls_report(p: &Problem) -> Result<WallsReport, CliError> {
    let curve = p.curve()?;
    let restriction = restriction_wall(&p.surface, &p.v, &curve.class, &p.ctx)?;
    let gieseker_bound = match gieseker_bound_wall(&p.surface, &p.v, &p.ctx) {
        Ok(w) => Some(w),
        Err(Error::RankTooSmall { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let window = category_window(&p.surface, &p.v, &curve.class, &p.ctx)?;
    let effective_center = if p.surface.is_p2() && p.v.ch0 >= 2 {
        p2x::effective_wall_center(&p.v, p.depth).ok()
    } else {
        None
    };
    let mut annotations = Vec::new();
    if restriction.kind == WallKind::Empty {
        annotations.push("no wall: d² ≤ 8Δ".to_string());
    }
    let restriction_outside_bound = match &gieseker_bound {
        Some(g) if restriction.is_semicircle() && g.is_semicircle() => Some(is_outside(&restriction, g)?),
        _ => None,
    };
    if let Some(g) = &gieseker_bound {
        if g.kind == WallKind::Empty {
            annotations.push("Gieseker-bound wall is empty".to_string());
        }
    }
    Ok(WallsReport {
        restriction,
        gieseker_bound,
        window,
        effective_center,
        restriction_outside_bound,
        annotations,
    })
}

pub fn walls(p: &Problem, format: OutputFormat) -> Result<Outcome, CliError> {
    let w = walls_report(p)?;
    let wall_row = |name: &str, wall: &Wall| {
        vec![
            name.to_string(),
            format!("{:?}", wall.kind).to_lowercase(),
            wall.center.to_string(),
            wall.radius_sq.to_string(),
            String::new(),
            String::new(),
        ]
    };
    let mut rows = vec![wall_row("restriction", &w.restriction)];
    if let Some(g) = &w.gieseker_bound {
        rows.push(wall_row("gieseker_bound", g));
    }
    rows.push(vec![
        "category_window".into(),
        "window".into(),
        String::new(),
        String::new(),
        w.window.lo.to_string(),
        w.window.hi.to_string(),
    ]);
    if let Some(c) = &w.effective_center {
        rows.push(vec![
            "effective_center".into(),
            "point".into(),
            c.to_string(),
            String::new(),
            String::new(),
            String::new(),
        ]);
    }
    let header = ["item", "kind", "center", "radius_sq", "lo", "hi"];
    let text = match format {
        OutputFormat::Csv => csv(&header, &rows),
        OutputFormat::Json => json(&w),
        OutputFormat::Table => {
            let mut head = header_lines(p, "walls");
            head.extend(w.annotations.iter().cloned());
            if let Some(n) = w.restriction_outside_bound {
                head.push(format!("restriction wall outside the Gieseker-bound wall: {n}"));
            }
            comments(head) + &table(&header, &rows)
        }
        OutputFormat::Svg => {
            let mut marks = vec![Mark::Arc {
                label: "restriction".into(),
                wall: w.restriction.clone(),
                color: "#c0392b",
            }];
            if let Some(g) = &w.gieseker_bound {
                marks.push(Mark::Arc {
                    label: "Gieseker bound".into(),
                    wall: g.clone(),
                    color: "#2471a3",
                });
            }
            marks.push(Mark::Vertical {
                label: "window lo".into(),
                s: w.window.lo.clone(),
                color: "#7f8c8d",
            });
            marks.push(Mark::Vertical {
                label: "window hi".into(),
                s: w.window.hi.clone(),
                color: "#7f8c8d",
            });
            if let Some(c) = &w.effective_center {
                marks.push(Mark::Tick {
                    label: "effective center".into(),
                    s: c.clone(),
                    color: "#27ae60",
                });
            }
            marks.extend(w.annotations.iter().cloned().map(Mark::Note));
            let title = format!("walls for v = ({}, {}, {})", p.v.ch0, p.v.ch1, p.v.ch2);
            diagram(&title, &marks)
        }
    };
    Ok(Outcome {
        text,
        code: EXIT_SATISFIED,
    })
}

/// Parses `"r,deg,ch2"` into a plane character.
pub fn parse_plane_character(s: &str) -> Result<ChernCharacter, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [r, deg, ch2] = parts.as_slice() else {
        return Err(CliError::Input(format!("expected \"r,deg,ch2\", got {s:?}")));
    };
    let r: i64 = r.parse().map_err(|_| CliError::Input(format!("rank {r:?} is not an integer")))?;
    Ok(ChernCharacter::p2(r, parse(deg)?, parse(ch2)?))
}

#[derive(Serialize)]
struct Mu0Row {
    #[serde(serialize_with = "serde_display")]
    mu0: restrictor_core::QuadraticNumber,
    exceptional: ExceptionalSlope,
}

fn slope_cells(e: &ExceptionalSlope) -> Vec<String> {
    let (lo, hi) = e.interval();
    vec![
        e.alpha.to_string(),
        e.rank.to_string(),
        e.discriminant.to_string(),
        e.dyadic.p.to_string(),
        e.dyadic.q.to_string(),
        lo.to_string(),
        hi.to_string(),
    ]
}

const SLOPE_HEADER: [&str; 7] = ["alpha", "rank", "discriminant", "p", "q", "interval_lo", "interval_hi"];

/// Exceptional slopes in the open window `(lo, hi)` up to the given depth.
pub fn exceptional(depth: u32, lo: &Q, hi: &Q, format: OutputFormat) -> Result<Outcome, CliError> {
    let slopes = p2x::enumerate_exceptional(depth, lo, hi)?;
    let rows: Vec<Vec<String>> = slopes.iter().map(slope_cells).collect();
    let text = match format {
        OutputFormat::Csv => csv(&SLOPE_HEADER, &rows),
        OutputFormat::Json => json(&slopes),
        OutputFormat::Table => comments([format!("exceptional slopes in ({lo}, {hi}) at depth <= {depth}")]) + &table(&SLOPE_HEADER, &rows),
        OutputFormat::Svg => return Err(unsupported(format, "exceptional")),
    };
    Ok(Outcome {
        text,
        code: EXIT_SATISFIED,
    })
}

/// `μ0(v)` and the exceptional slope whose interval contains it.
pub fn exceptional_mu0(v: &ChernCharacter, depth: u32, format: OutputFormat) -> Result<Outcome, CliError> {
    let mu0 = p2x::mu0(v)?;
    let e = p2x::find_interval(&mu0, depth)?;
    let mut header = vec!["mu0"];
    header.extend(SLOPE_HEADER);
    let mut row = vec![mu0.to_string()];
    row.extend(slope_cells(&e));
    let text = match format {
        OutputFormat::Csv => csv(&header, &[row]),
        OutputFormat::Json => json(&Mu0Row { mu0, exceptional: e }),
        OutputFormat::Table => table(&header, &[row]),
        OutputFormat::Svg => return Err(unsupported(format, "exceptional")),
    };
    Ok(Outcome {
        text,
        code: EXIT_SATISFIED,
    })
}

#[derive(Debug, Serialize)]
pub struct RestrictionValues {
    #[serde(with = "serde_q")]
    pub h0: Q,
    #[serde(with = "serde_q")]
    pub h1: Q,
}

#[derive(Debug, Serialize)]
pub struct CohomologyReport {
    pub sheaf: BettiTable,
    pub twisted: BettiTable,
    #[serde(with = "serde_q")]
    pub chi_sheaf: Q,
    #[serde(with = "serde_q")]
    pub chi_twisted: Q,
    pub restriction: Option<RestrictionValues>,
    /// `(i, j)` with `H^i(E)` and `H^j(E(-C))` the nonzero groups.
    pub case: Option<(u8, u8)>,
    pub undetermined: Option<String>,
    pub closed_form: Option<RestrictionValues>,
    pub closed_form_note: Option<String>,
    pub brill_noether: Option<BnReport>,
    pub brill_noether_note: Option<String>,
    pub first_violating_degree: Option<i64>,
    pub dims: Option<RestrictionDims>,
    pub trace: Vec<String>,
}

pub fn cohomology_report(p: &Problem) -> Result<CohomologyReport, CliError> {
    let curve = p.curve()?;
    let s = &p.surface;
    let twisted_v = tensor_line(s, &p.v, &-&curve.class)?;
    let sheaf = general_betti(s, &p.v)?;
    let twisted = general_betti(s, &twisted_v)?;
    let mut trace = Vec::new();
    if s.hirzebruch_parameter().is_some() {
        for (name, v) in [("E", &p.v), ("E(-C)", &twisted_v)] {
            let res = ch_betti_hirzebruch(s, v)?;
            trace.extend(res.trace.into_iter().map(|t| format!("{name}: {t}")));
        }
    }
    let (restriction, case, undetermined) = match restricted_betti(s, &p.v, &curve.class) {
        Ok(r) => (Some(RestrictionValues { h0: r.h0, h1: r.h1 }), r.case, None),
        Err(
            e @ Error::UndeterminedCase {
                e_index, twist_index, ..
            },
        ) => (None, Some((e_index, twist_index)), Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let (mut closed_form, mut closed_form_note) = (None, None);
    let (mut brill_noether, mut brill_noether_note, mut first_violating_degree) = (None, None, None);
    match (s.kind(), curve.degree) {
        (SurfaceKind::ProjectivePlane, Some(d)) => {
            match restricted_closed_form_p2(&p.v, d) {
                Ok((h0, h1)) => closed_form = Some(RestrictionValues { h0, h1 }),
                Err(e) => closed_form_note = Some(e.to_string()),
            }
            match brill_noether_report_p2(&p.v, d, p.depth) {
                Ok(r) => brill_noether = Some(r),
                Err(e) => brill_noether_note = Some(e.to_string()),
            }
            first_violating_degree = first_violating_degree_p2(&p.v, p.d_max, p.depth).ok().flatten();
        }
        (SurfaceKind::Hirzebruch { .. }, Some(d)) => match hirzebruch_bn_report(s, &p.v, p.polarization(), d) {
            Ok(r) => {
                brill_noether_note = Some(format!(
                    "r^2(g-1)+1 = {} vs chi(chi-e+rg) = {}: inequality {}",
                    r.lhs,
                    r.rhs,
                    if r.inequality_holds { "holds" } else { "fails" }
                ));
                brill_noether = Some(r.report);
            }
            Err(e) => brill_noether_note = Some(e.to_string()),
        },
        _ => {}
    }
    let dims = restriction_map_dims(s, &p.v, &curve.class).ok();
    Ok(CohomologyReport {
        chi_sheaf: euler_characteristic(s, &p.v)?,
        chi_twisted: euler_characteristic(s, &twisted_v)?,
        sheaf,
        twisted,
        restriction,
        case,
        undetermined,
        closed_form,
        closed_form_note,
        brill_noether,
        brill_noether_note,
        first_violating_degree,
        dims,
        trace,
    })
}

fn betti_cells(t: &BettiTable) -> [String; 3] {
    [t.h0.to_string(), t.h1.to_string(), t.h2.to_string()]
}

/// Key/value rows for CSV and table output, in a fixed order.
fn cohomology_rows(r: &CohomologyReport) -> Vec<Vec<String>> {
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut put = |k: &str, v: String| rows.push(vec![k.to_string(), v]);
    let [a, b, c] = betti_cells(&r.sheaf);
    put("h0(E)", a);
    put("h1(E)", b);
    put("h2(E)", c);
    let [a, b, c] = betti_cells(&r.twisted);
    put("h0(E(-C))", a);
    put("h1(E(-C))", b);
    put("h2(E(-C))", c);
    put("chi(E)", r.chi_sheaf.to_string());
    put("chi(E(-C))", r.chi_twisted.to_string());
    if let Some(x) = &r.restriction {
        put("h0(E|C)", x.h0.to_string());
        put("h1(E|C)", x.h1.to_string());
    }
    if let Some((i, j)) = r.case {
        put("case", format!("H^{i}(E) H^{j}(E(-C))"));
    }
    if r.undetermined.is_some() {
        put("h0(E|C)", "undetermined".into());
    }
    if let Some(x) = &r.closed_form {
        put("closed_form_h0", x.h0.to_string());
        put("closed_form_h1", x.h1.to_string());
    }
    if let Some(bn) = &r.brill_noether {
        put("bn_k", bn.k.to_string());
        put("bn_e", bn.e.to_string());
        put("bn_g", bn.g.to_string());
        put("rho", bn.rho.to_string());
        put("violating", bn.violating.to_string());
        for g in &bn.gates {
            put(&format!("gate: {}", g.label), g.passed.to_string());
        }
    }
    if let Some(d) = r.first_violating_degree {
        put("first_violating_d", d.to_string());
    }
    if let Some(d) = &r.dims {
        put("dim_M", d.moduli.to_string());
        put("dim_U", d.curve_moduli.to_string());
        put("codim", d.codimension.to_string());
    }
    rows
}

/// Exit 0 when `h0(E|_C)` is determined, 3 when the exact sequence leaves it open.
pub fn cohomology(p: &Problem, format: OutputFormat) -> Result<Outcome, CliError> {
    let r = cohomology_report(p)?;
    let code = if r.undetermined.is_some() {
        EXIT_UNDETERMINED
    } else {
        EXIT_SATISFIED
    };
    let rows = cohomology_rows(&r);
    let text = match format {
        OutputFormat::Csv => csv(&["quantity", "value"], &rows),
        OutputFormat::Json => json(&r),
        OutputFormat::Table => {
            let mut head = header_lines(p, "cohomology");
            for note in [&r.undetermined, &r.closed_form_note, &r.brill_noether_note].into_iter().flatten() {
                if !head.contains(note) {
                    head.push(note.clone());
                }
            }
            head.extend(r.trace.iter().map(|t| format!("trace {t}")));
            comments(head) + &table(&["quantity", "value"], &rows)
        }
        OutputFormat::Svg => return Err(unsupported(format, "cohomology")),
    };
    Ok(Outcome { text, code })
}
