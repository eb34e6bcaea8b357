//! Spin geography: the restriction theorem for simply connected spin
//! complex surfaces, and the `Z(m,g)` tables.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeographyTag {
    NotInRange,
    ExceptionA,
    ExceptionB,
    Excluded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeographyVerdict {
    pub tag: GeographyTag,
    pub detail: String,
}

/// Classify `(chi, c1^2)` against `2 chi <= c1^2 < 3(chi - 5)`.
pub fn ppx_check(chi: i64, c1sq: i64, spin: bool) -> GeographyVerdict {
    let v = |tag, detail: String| GeographyVerdict { tag, detail };
    if !spin {
        return v(GeographyTag::NotInRange, "theorem applies to spin surfaces only".into());
    }
    if !(2 * chi <= c1sq && c1sq < 3 * (chi - 5)) {
        return v(
            GeographyTag::NotInRange,
            format!("c1^2 = {c1sq} outside [{}, {})", 2 * chi, 3 * (chi - 5)),
        );
    }
    if c1sq == 2 * (chi - 3) && c1sq % 8 == 0 && (c1sq / 8) % 2 != 0 {
        return v(GeographyTag::ExceptionA, format!("c1^2 = 2(chi - 3) = 8*{}", c1sq / 8));
    }
    if 3 * c1sq == 8 * (chi - 4) && chi.rem_euclid(3) == 1 {
        return v(GeographyTag::ExceptionB, "3 c1^2 = 8(chi - 4), chi = 1 mod 3".into());
    }
    v(GeographyTag::Excluded, "no simply connected spin complex surface has these numbers".into())
}

pub fn zmg_numbers(m: i64, g: i64) -> (i64, i64) {
    (8 * m + g - 1, 16 * m + 8 * g - 8)
}

/// `Z(m,g)` has the numbers of no spin complex surface.
pub fn zmg_restricted(m: i64, g: i64) -> bool {
    let (chi, c1sq) = zmg_numbers(m, g);
    ppx_check(chi, c1sq, true).tag == GeographyTag::Excluded
}

/// The printed shortcut: `5g < 8m - 10` and `g != m - 1 (mod 3)`.
pub fn zmg_closed_form(m: i64, g: i64) -> bool {
    5 * g < 8 * m - 10 && (g - (m - 1)).rem_euclid(3) != 0
}

/// Restricted `g` values for one `m` (all such `g` satisfy `c1^2 < 3(chi-5)`,
/// i.e. `5g < 8m - 10 + 5`, so the scan is finite).
pub fn restricted_list(m: i64) -> Vec<i64> {
    (1..=max_g(m)).filter(|&g| zmg_restricted(m, g)).collect()
}

pub fn closed_form_list(m: i64) -> Vec<i64> {
    (1..=max_g(m)).filter(|&g| zmg_closed_form(m, g)).collect()
}

fn max_g(m: i64) -> i64 {
    // 16m + 8g - 8 < 3(8m + g - 6)  <=>  5g < 8m - 10
    ((8 * m - 10) / 5).max(0) + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeographyRow {
    pub m: i64,
    pub g: i64,
    pub chi: i64,
    pub c1sq: i64,
    pub verdict: GeographyTag,
    pub restricted: bool,
    pub closed_form: bool,
    pub agree: bool,
}

pub fn geography_scan(m_range: std::ops::RangeInclusive<i64>, g_range: std::ops::RangeInclusive<i64>) -> Vec<GeographyRow> {
    let mut rows = Vec::new();
    for m in m_range {
        for g in g_range.clone() {
            let (chi, c1sq) = zmg_numbers(m, g);
            let verdict = ppx_check(chi, c1sq, true).tag;
            let restricted = verdict == GeographyTag::Excluded;
            let closed_form = zmg_closed_form(m, g);
            rows.push(GeographyRow { m, g, chi, c1sq, verdict, restricted, closed_form, agree: restricted == closed_form });
        }
    }
    rows
}

/// Where the theorem and the shortcut disagree: `g = m - 1 (mod 3)`,
/// `g != m - 1`, inside the range.
pub fn in_discrepancy_set(m: i64, g: i64) -> bool {
    g >= 1 && g != m - 1 && (g - (m - 1)).rem_euclid(3) == 0 && 5 * g < 8 * m - 10
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Json,
    Csv,
}

pub fn render_scan(rows: &[GeographyRow], fmt: TableFormat) -> Result<String> {
    match fmt {
        TableFormat::Json => Ok(serde_json::to_string_pretty(rows)?),
        TableFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| Error::Parse(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
        }
        TableFormat::Text => {
            let mut s = format!(
                "{:>3} {:>3} {:>5} {:>5}  {:<12} {:>10} {:>11} {:>5}\n",
                "m", "g", "chi", "c1^2", "verdict", "restricted", "closed_form", "agree"
            );
            for r in rows {
                let tag = serde_json::to_value(r.verdict)?;
                s.push_str(&format!(
                    "{:>3} {:>3} {:>5} {:>5}  {:<12} {:>10} {:>11} {:>5}\n",
                    r.m,
                    r.g,
                    r.chi,
                    r.c1sq,
                    tag.as_str().unwrap_or(""),
                    r.restricted,
                    r.closed_form,
                    r.agree
                ));
            }
            Ok(s)
        }
    }
}
