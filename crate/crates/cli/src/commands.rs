use num_complex::Complex64;
use num_traits::ToPrimitive;

use torusq_core::exact::kashaev_with_precision;
use torusq_core::knot::alexander_coefficients;
use torusq_core::quadrature::{contour_shift_check, verify_lemma1, verify_lemma2, ContourSpec, IdentityCheck};
use torusq_core::series::fraction_string;
use torusq_core::{
    alexander, expansion, jones_ratio, torsion, validate_knot, volume_scan, x_tau_series, Color,
    Error, Precision, Result, TorusKnot,
};

use crate::args::{ColorArg, Command, KnotArgs};
use crate::output::{obj, Table, Val};

/// What a subcommand produces: one JSON object and one CSV table.
pub struct Report {
    pub json: Val,
    pub table: Table,
}

fn knot(a: KnotArgs) -> Result<TorusKnot> {
    validate_knot(a.m, a.p)
}

fn color(a: ColorArg) -> Result<Color> {
    Color::new(a.k)
}

fn head(kn: TorusKnot) -> Vec<(&'static str, Val)> {
    vec![("m", kn.m().into()), ("p", kn.p().into())]
}

fn with(mut base: Vec<(&'static str, Val)>, more: Vec<(&'static str, Val)>) -> Val {
    base.extend(more);
    obj(base)
}

pub fn run(cmd: &Command, precision: Precision) -> Result<Report> {
    match *cmd {
        Command::Jones { knot: ka, color: ca, h } => {
            let (kn, k) = (knot(ka)?, color(ca)?);
            let v = jones_ratio(kn, k, h)?;
            let mut table = Table::new(&["m", "p", "k", "h_re", "h_im", "re", "im", "abs"]);
            table.push(vec![
                kn.m().into(),
                kn.p().into(),
                k.get().into(),
                h.re.into(),
                h.im.into(),
                v.into(),
            ]);
            let json = with(
                head(kn),
                vec![("k", k.get().into()), ("h", h.into()), ("value", v.into())],
            );
            Ok(Report { json, table })
        }
        Command::Kashaev { knot: ka, color: ca } => {
            let (kn, k) = (knot(ka)?, color(ca)?);
            let v = kashaev_with_precision(kn, k, precision);
            let mut table = Table::new(&["m", "p", "k", "re", "im", "abs"]);
            table.push(vec![kn.m().into(), kn.p().into(), k.get().into(), v.into()]);
            let json = with(
                head(kn),
                vec![
                    ("k", k.get().into()),
                    ("re", v.re.into()),
                    ("im", v.im.into()),
                    ("abs", v.norm().into()),
                ],
            );
            Ok(Report { json, table })
        }
        Command::Alexander { knot: ka, t } => {
            let kn = knot(ka)?;
            let v = alexander(kn, t)?;
            let coeffs = alexander_coefficients(kn);
            let mut table = Table::new(&["m", "p", "t_re", "t_im", "re", "im", "abs"]);
            table.push(vec![kn.m().into(), kn.p().into(), t.re.into(), t.im.into(), v.into()]);
            let json = with(
                head(kn),
                vec![
                    ("t", t.into()),
                    ("value", v.into()),
                    ("coefficients", Val::List(coeffs.into_iter().map(Val::from).collect())),
                ],
            );
            Ok(Report { json, table })
        }
        Command::Torsion { knot: ka, z } => {
            let kn = knot(ka)?;
            let v = torsion(kn, z)?;
            let mut table = Table::new(&["m", "p", "z_re", "z_im", "re", "im", "abs"]);
            table.push(vec![kn.m().into(), kn.p().into(), z.re.into(), z.im.into(), v.into()]);
            let json = with(head(kn), vec![("z", z.into()), ("value", v.into())]);
            Ok(Report { json, table })
        }
        Command::Series { knot: ka, order } => {
            let kn = knot(ka)?;
            let s = x_tau_series(kn, order)?;
            let mut table = Table::new(&["n", "coefficient", "approx"]);
            let mut list = Vec::new();
            for (n, c) in s.coefficients().iter().enumerate() {
                let text = fraction_string(c);
                let approx = c.to_f64().unwrap_or(f64::NAN);
                table.push(vec![n.into(), text.clone().into(), approx.into()]);
                list.push(Val::from(text));
            }
            let json = with(
                head(kn),
                vec![("order", order.into()), ("coefficients", Val::List(list))],
            );
            Ok(Report { json, table })
        }
        Command::Expand { knot: ka, color: ca, n_max } => {
            let (kn, k) = (knot(ka)?, color(ca)?);
            let r = expansion(kn, k, n_max)?;
            let mut table = Table::new(&["kind", "index", "re", "im", "abs"]);
            table.push(vec!["exact".into(), Val::Null, r.exact.into()]);
            table.push(vec!["prefactor".into(), Val::Null, r.prefactor.into()]);
            for (j, v) in &r.residue_terms {
                table.push(vec!["residue".into(), (*j).into(), (*v).into()]);
            }
            for (n, v) in &r.tail_terms {
                table.push(vec!["tail".into(), (*n).into(), (*v).into()]);
            }
            table.push(vec!["reconstructed".into(), Val::Null, r.reconstructed.into()]);
            let indexed = |key: &'static str, items: &[(u64, Complex64)]| {
                Val::List(
                    items
                        .iter()
                        .map(|(i, v)| obj([(key, Val::from(*i)), ("value", Val::from(*v))]))
                        .collect(),
                )
            };
            let tails: Vec<(u64, Complex64)> =
                r.tail_terms.iter().map(|(n, v)| (*n as u64, *v)).collect();
            let json = with(
                head(kn),
                vec![
                    ("k", k.get().into()),
                    ("n_max", n_max.into()),
                    ("exact", r.exact.into()),
                    ("prefactor", r.prefactor.into()),
                    ("residue_terms", indexed("j", &r.residue_terms)),
                    ("tail_terms", indexed("n", &tails)),
                    ("reconstructed", r.reconstructed.into()),
                    ("abs_error", r.abs_error.into()),
                    ("rel_error", r.rel_error.into()),
                    ("optimal_truncation", r.optimal_truncation.into()),
                ],
            );
            Ok(Report { json, table })
        }
        Command::VerifyLemma1 { knot: ka, color: ca, h, phi, tol } => {
            let (kn, k) = (knot(ka)?, color(ca)?);
            let c = ContourSpec::for_lemma1(kn, k, h, phi, tol)?;
            Ok(identity_report(kn, k, &verify_lemma1(kn, k, h, &c)?))
        }
        Command::VerifyLemma2 { knot: ka, color: ca, phi, tol } => {
            let (kn, k) = (knot(ka)?, color(ca)?);
            let c = ContourSpec::for_lemma2(kn, k, phi, tol)?;
            Ok(identity_report(kn, k, &verify_lemma2(kn, k, &c)?))
        }
        Command::VerifyShift { knot: ka, color: ca, phi, tol } => {
            let (kn, k) = (knot(ka)?, color(ca)?);
            let s = contour_shift_check(kn, k, phi, tol)?;
            let mut table = Table::new(&["quantity", "re", "im", "abs"]);
            for (name, v) in [
                ("direct", s.direct),
                ("shifted", s.shifted),
                ("residue_sum", s.residue_sum),
                ("analytic_residue_sum", s.analytic_residue_sum),
            ] {
                table.push(vec![name.into(), v.into()]);
            }
            let json = with(
                head(kn),
                vec![
                    ("k", k.get().into()),
                    ("direct", s.direct.into()),
                    ("shifted", s.shifted.into()),
                    ("residue_sum", s.residue_sum.into()),
                    ("analytic_residue_sum", s.analytic_residue_sum.into()),
                    ("rel_diff", s.rel_diff.into()),
                    ("phi", s.phi.into()),
                    ("panels", s.nodes.into()),
                    ("precision_bits", s.precision_bits.into()),
                ],
            );
            Ok(Report { json, table })
        }
        Command::VolumeScan { knot: ka, kmin, kmax, kstep } => {
            let kn = knot(ka)?;
            if kstep == 0 {
                return Err(Error::InvalidArgument("--kstep must be positive".into()));
            }
            if kmin < 2 || kmax < kmin {
                return Err(Error::InvalidArgument(format!(
                    "need 2 <= kmin <= kmax (got kmin={kmin}, kmax={kmax})"
                )));
            }
            let ks: Vec<u64> = (kmin..=kmax).step_by(kstep as usize).collect();
            let scan = volume_scan(kn, &ks, precision)?;
            let mut table = Table::new(&["k", "abs", "log_abs_over_k"]);
            let mut rows = Vec::new();
            for r in &scan.rows {
                table.push(vec![r.k.into(), r.abs.into(), r.log_abs_over_k.into()]);
                rows.push(obj([
                    ("k", Val::from(r.k)),
                    ("abs", r.abs.into()),
                    ("log_abs_over_k", r.log_abs_over_k.into()),
                ]));
            }
            let json = with(
                head(kn),
                vec![
                    ("precision_bits", precision.bits().into()),
                    ("fitted_exponent", scan.fitted_exponent.into()),
                    ("fitted_limit", scan.fitted_limit.into()),
                    ("rows", Val::List(rows)),
                ],
            );
            Ok(Report { json, table })
        }
    }
}

fn identity_report(kn: TorusKnot, k: Color, r: &IdentityCheck) -> Report {
    let mut table = Table::new(&[
        "m", "p", "k", "lhs_re", "lhs_im", "lhs_abs", "rhs_re", "rhs_im", "rhs_abs", "rel_diff",
        "phi", "X", "panels",
    ]);
    table.push(vec![
        kn.m().into(),
        kn.p().into(),
        k.get().into(),
        r.lhs.into(),
        r.rhs.into(),
        r.rel_diff.into(),
        r.phi.into(),
        r.truncation.into(),
        r.nodes.into(),
    ]);
    let json = with(
        head(kn),
        vec![
            ("k", k.get().into()),
            ("lhs", r.lhs.into()),
            ("rhs", r.rhs.into()),
            ("rel_diff", r.rel_diff.into()),
            ("phi", r.phi.into()),
            ("X", r.truncation.into()),
            ("panels", r.nodes.into()),
            ("precision_bits", r.precision_bits.into()),
            ("quad_error", r.quad_error.into()),
        ],
    );
    Report { json, table }
}
