use serde::Serialize;
use serde_json::Value;

use wg_core::algebra::rational_to_string;
use wg_core::LaurentSeries;

use crate::Failure;

pub fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("outputs serialize");
    s.push('\n');
    s
}

pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Usage(format!("csv output: {e}"));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Usage(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn series_value(series: &LaurentSeries) -> Value {
    serde_json::to_value(series).expect("series serializes")
}

/// `(exponent, coefficient)` rows for every retained order, zeros included.
pub fn series_rows(series: &LaurentSeries) -> Vec<Vec<String>> {
    (series.leading_exponent()..=series.order())
        .map(|k| {
            let c = series.coefficient(k).expect("within order");
            vec![(-k).to_string(), rational_to_string(&c)]
        })
        .collect()
}
