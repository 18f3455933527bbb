//! Report rows and their table/JSON renderings.

use std::io::Write;

use anyhow::Result;
use hwcy_core::hassewitt::FpPoly;
use hwcy_core::verify::{DualMumReport, VerificationReport};
use serde::Serialize;

/// `Pass`: `A_p(z(q))` is the expected constant. `Weak`: only
/// `A_p(z) = 1 + O(z^p)` holds. `Fail`: not even that, or an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Fail,
    Weak,
    Pass,
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub operator: String,
    pub p: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_mum: Option<DualMumReport>,
    /// Why the dual-MUM data is unavailable at this prime.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual_mum_skipped: Option<String>,
    /// `A_p(z) = sqrt(1 - 25000 z)^p` at an inert prime, for flagged operators.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sqrt_pattern: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Row {
    pub fn new(report: VerificationReport, dual: Option<Result<DualMumReport, String>>, sqrt_pattern: Option<bool>) -> Self {
        let (dual_mum, dual_mum_skipped) = match dual {
            Some(Ok(d)) => (Some(d), None),
            Some(Err(e)) => (None, Some(e)),
            None => (None, None),
        };
        let dual_ok = dual_mum.as_ref().is_none_or(|d| d.reversal_holds && d.unity_at_zero && d.unity_at_infinity);
        let weak = report.integrality_failures.is_empty()
            && report.unity.as_ref().is_some_and(|u| u.weak_form_holds)
            && dual_ok
            && sqrt_pattern != Some(false);
        let verdict = match (weak, report.passed()) {
            (true, true) => Verdict::Pass,
            (true, false) => Verdict::Weak,
            _ => Verdict::Fail,
        };
        Row {
            operator: report.operator.clone(),
            p: report.p,
            verdict,
            report: Some(report),
            dual_mum,
            dual_mum_skipped,
            sqrt_pattern,
            error: None,
        }
    }

    pub fn error(id: &str, p: u64, msg: String) -> Self {
        Row {
            operator: id.into(),
            p,
            verdict: Verdict::Fail,
            report: None,
            dual_mum: None,
            dual_mum_skipped: None,
            sqrt_pattern: None,
            error: Some(msg),
        }
    }

    fn cells(&self) -> [String; 7] {
        let dash = || "-".to_string();
        let Some(r) = &self.report else {
            let e = self.error.clone().unwrap_or_default();
            return [self.operator.clone(), self.p.to_string(), dash(), dash(), dash(), dash(), format!("ERROR {e}")];
        };
        let p = self.p;
        let weak = match &r.unity {
            _ if !r.integrality_failures.is_empty() => format!("non-integral z^{}", r.integrality_failures[0]),
            Some(u) if u.holds => format!("1+O(z^{})", u.order),
            Some(u) if u.weak_form_holds => format!("1+O(z^{})", u.first_deviation.unwrap_or(u.order)),
            Some(u) => format!("fails at z^{}", u.first_deviation.unwrap_or(0)),
            None => dash(),
        };
        let pth = match &r.pth_power {
            _ if r.unity.is_none() => dash(),
            Some(_) => "yes".into(),
            None => "no".into(),
        };
        let (constant, higher) = match &r.mirror {
            Some(m) => (
                signed(m.constant, p),
                match m.first_nonzero {
                    None => format!("0 to O(q^{})", m.order),
                    Some(k) => format!("nonzero q^{k}"),
                },
            ),
            None => (dash(), dash()),
        };
        let mut notes = Vec::new();
        match (&self.dual_mum, &self.dual_mum_skipped) {
            (Some(d), _) if d.reversal_holds && d.unity_at_zero && d.unity_at_infinity => notes.push("dual-MUM ok"),
            (Some(_), _) => notes.push("dual-MUM FAIL"),
            (None, Some(_)) => notes.push("dual-MUM n/a"),
            (None, None) => {}
        }
        match self.sqrt_pattern {
            Some(true) => notes.push("sqrt^p ok"),
            Some(false) => notes.push("sqrt^p FAIL"),
            None => {}
        }
        let status = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Weak => "WEAK",
            Verdict::Fail => "FAIL",
        };
        let status = if notes.is_empty() { status.to_string() } else { format!("{status} ({})", notes.join(", ")) };
        [self.operator.clone(), p.to_string(), weak, pth, constant, higher, status]
    }
}

/// `c` as the representative in `(-p/2, p/2]`.
fn signed(c: u64, p: u64) -> String {
    if c > p / 2 {
        format!("-{}", p - c)
    } else {
        c.to_string()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunSummary {
    pub z_order: usize,
    pub q_order: usize,
    pub candidates: Vec<u64>,
    pub rows: Vec<Row>,
}

const HEADER: [&str; 7] = ["operator", "p", "A_p(z)", "p-th power", "A_p(z(q)) const", "A_p(z(q)) higher", "status"];

impl RunSummary {
    /// Every row reaches at least `level`.
    pub fn reaches(&self, level: Verdict) -> bool {
        self.rows.iter().all(|r| r.verdict >= level)
    }

    fn count(&self, v: Verdict) -> usize {
        self.rows.iter().filter(|r| r.verdict == v).count()
    }

    pub fn write(&self, out: &mut dyn Write, json: bool) -> Result<()> {
        if json {
            writeln!(out, "{}", serde_json::to_string_pretty(self)?)?;
            return Ok(());
        }
        let q = if self.q_order == 0 { "off".to_string() } else { self.q_order.to_string() };
        writeln!(out, "# z_order {}, q_order {q}, {} candidate primes", self.z_order, self.candidates.len())?;
        let cells: Vec<[String; 7]> = self.rows.iter().map(Row::cells).collect();
        let mut width = HEADER.map(str::len);
        for row in &cells {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |row: &[String]| {
            let padded: Vec<String> = row.iter().zip(&width).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        writeln!(out, "{}", line(&HEADER.map(String::from)))?;
        for row in &cells {
            writeln!(out, "{}", line(row))?;
        }
        writeln!(
            out,
            "# {} checks: {} pass, {} weak form only, {} fail",
            self.rows.len(),
            self.count(Verdict::Pass),
            self.count(Verdict::Weak),
            self.count(Verdict::Fail)
        )?;
        Ok(())
    }
}

/// `unit*f1^e1*f2*...` with multi-term factors parenthesized.
pub fn factored(unit: u64, factors: &[(FpPoly, usize)], var: &str) -> String {
    let mut pieces = Vec::new();
    if unit != 1 || factors.is_empty() {
        pieces.push(unit.to_string());
    }
    for (g, e) in factors {
        let body = g.format_with(var);
        let multi = g.coeffs().iter().filter(|&&c| c != 0).count() > 1;
        let base = if multi && (factors.len() > 1 || *e > 1 || unit != 1) { format!("({body})") } else { body };
        pieces.push(if *e > 1 { format!("{base}^{e}") } else { base });
    }
    pieces.join("*")
}
