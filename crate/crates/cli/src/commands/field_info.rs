use anyhow::Result;
use serde::Serialize;
use serde_json::json;

use super::{config, field_and_dim};
use crate::output::{emit, Status, Table};
use crate::GlobalOpts;

/// Element listings stop here.
const LIST_LIMIT: u64 = 1024;

#[derive(Serialize)]
struct Element {
    index: u64,
    text: String,
    /// Coefficients of the representing polynomial, lowest degree first.
    coeffs: Vec<u32>,
}

#[derive(Serialize)]
struct FieldOut {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus, lowest degree first.
    modulus: Vec<u32>,
    elements_listed: bool,
    elements: Vec<Element>,
}

pub fn run(g: &GlobalOpts) -> Result<Status> {
    let (field, d) = field_and_dim(g)?;
    let cfg = config(g, "field-info", &field, d, json!({}));
    let listed = field.order() <= LIST_LIMIT;
    let mut elements = Vec::new();
    let mut table = Table::new(&["index", "element"]);
    if listed {
        for (i, a) in field.elements().enumerate() {
            let text = field.render(a);
            table.push(vec![i.to_string(), text.clone()]);
            elements.push(Element {
                index: i as u64,
                text,
                coeffs: field.coeffs(a),
            });
        }
    }
    let out = FieldOut {
        p: field.characteristic(),
        k: field.degree(),
        q: field.order(),
        modulus: field.modulus().to_vec(),
        elements_listed: listed,
        elements,
    };
    emit(&cfg, &out, &table)?;
    Ok(Status::Pass)
}
