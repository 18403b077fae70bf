//! Rendering helpers shared by the subcommands. Exact values never pass
//! through floating point: rationals serialize as numerator/denominator
//! strings with a decimal convenience field.

use serde_json::{json, Value};
use wreath_core::exact::to_decimal;
use wreath_core::spectra::OrderSpectrum;
use wreath_core::BigRational;

pub fn rational_json(x: &BigRational, digits: usize) -> Value {
    json!({
        "num": x.numer().to_string(),
        "den": x.denom().to_string(),
        "decimal": to_decimal(x, digits),
    })
}

pub fn rational_human(x: &BigRational, digits: usize) -> String {
    format!("{}/{} ≈ {}", x.numer(), x.denom(), to_decimal(x, digits))
}

pub fn spectrum_json(spec: &OrderSpectrum) -> Value {
    let mut map = serde_json::Map::new();
    for (order, count) in spec.orders() {
        map.insert(order.to_string(), Value::String(count.to_string()));
    }
    Value::Object(map)
}

pub fn print_json(value: &Value) {
    println!("{}", serde_json::to_string(value).expect("serializable"));
}

/// One CSV row of a trajectory; exact entries carry num/den, float entries
/// leave them empty.
pub fn csv_row(n: usize, exact: Option<&BigRational>, decimal: &str) -> String {
    match exact {
        Some(x) => format!("{n},{},{},{decimal}", x.numer(), x.denom()),
        None => format!("{n},,,{decimal}"),
    }
}

pub const CSV_HEADER: &str = "n,value_num,value_den,decimal";
