//! Plain-text tables for terminal output.

use coarray_core::{CatalogEntry, CoarrayAnalysis, ComparisonReport, Definition, Provenance};

pub fn list(values: &[i64]) -> String {
    let items: Vec<String> = values.iter().map(i64::to_string).collect();
    format!("[{}]", items.join(", "))
}

/// Sorted integers with runs of three or more collapsed, e.g. `[-6..-4, -2, 0]`.
pub fn compact(values: &[i64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let mut j = i;
        while j + 1 < values.len() && values[j + 1] == values[j] + 1 {
            j += 1;
        }
        if j - i >= 2 {
            parts.push(format!("{}..{}", values[i], values[j]));
        } else {
            parts.extend(values[i..=j].iter().map(i64::to_string));
        }
        i = j + 1;
    }
    format!("[{}]", parts.join(", "))
}

fn holes_text(holes: &[i64]) -> String {
    if holes.is_empty() {
        "none".to_string()
    } else {
        list(holes)
    }
}

fn normalized(a: &CoarrayAnalysis) -> Vec<i64> {
    a.normalized().positions().iter().map(|&p| p as i64).collect()
}

fn rows(a: &CoarrayAnalysis) -> Vec<(&'static str, String)> {
    let pw = a.primary_weights();
    vec![
        ("Sensor positions", list(a.source().positions())),
        ("Normalized positions", list(&normalized(a))),
        ("Sensors (N)", a.sensor_count().to_string()),
        ("Aperture (A)", a.aperture().to_string()),
        ("DCA", list(a.dca())),
        ("DCA size", a.dca().len().to_string()),
        ("Holes", holes_text(a.holes())),
        ("Hole count", a.holes().len().to_string()),
        (
            "Primary weights",
            format!("w(1) = {}, w(2) = {}, w(3) = {}", pw.w1(), pw.w2(), pw.w3()),
        ),
    ]
}

/// Label/value table followed by the status line.
pub fn analysis_table(a: &CoarrayAnalysis, with_weights: bool) -> String {
    let rows = rows(a);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{k:<width$} : {v}\n"));
    }
    if with_weights {
        out.push_str("\n  lag  weight\n");
        for lw in a.weight_function().iter() {
            out.push_str(&format!("{:>5}  {:>6}\n", lw.lag, lw.weight));
        }
        out.push('\n');
    }
    out.push_str(a.status());
    out.push('\n');
    out
}

/// Three-column table: array A, array B, and A − B where it applies.
pub fn comparison_table(r: &ComparisonReport) -> String {
    let compact_dca = |a: &CoarrayAnalysis| {
        rows(a)
            .into_iter()
            .map(|(k, v)| if k == "DCA" { (k, compact(a.dca())) } else { (k, v) })
            .collect::<Vec<_>>()
    };
    let (ra, rb) = (compact_dca(&r.a), compact_dca(&r.b));
    let d = &r.deltas;
    let deltas: Vec<String> = vec![
        String::new(),
        String::new(),
        d.sensor_count.to_string(),
        d.aperture.to_string(),
        String::new(),
        (r.a.dca().len() as i64 - r.b.dca().len() as i64).to_string(),
        String::new(),
        d.hole_count.to_string(),
        format!(
            "({}, {}, {})",
            d.primary_weights[0], d.primary_weights[1], d.primary_weights[2]
        ),
    ];
    let mut table: Vec<[String; 4]> = vec![[
        String::new(),
        "A".to_string(),
        "B".to_string(),
        "A - B".to_string(),
    ]];
    for ((label, va), ((_, vb), dv)) in ra.into_iter().zip(rb.into_iter().zip(deltas)) {
        table.push([label.to_string(), va, vb, dv]);
    }
    table.push([
        "Status".to_string(),
        r.a.status().to_string(),
        r.b.status().to_string(),
        String::new(),
    ]);

    let widths: Vec<usize> = (0..4)
        .map(|c| table.iter().map(|row| row[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &table {
        let line = format!(
            "{:<w0$}   {:<w1$}   {:<w2$}   {}",
            row[0],
            row[1],
            row[2],
            row[3],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2]
        );
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(&format!(
        "Hole-set difference : {}\n",
        holes_text(&d.holes_symmetric_difference)
    ));
    out
}

pub fn catalog_list(entries: &[CatalogEntry]) -> String {
    let id_w = entries.iter().map(|e| e.id.len()).max().unwrap_or(2).max(2);
    let fam_w = entries
        .iter()
        .map(|e| e.family.label().len())
        .max()
        .unwrap_or(6)
        .max(6);
    let mut out = format!("{:<id_w$}  {:<fam_w$}  NAME\n", "ID", "FAMILY");
    for e in entries {
        out.push_str(&format!(
            "{:<id_w$}  {:<fam_w$}  {}\n",
            e.id,
            e.family.label(),
            e.name
        ));
    }
    out
}

fn provenance(p: Provenance) -> &'static str {
    match p {
        Provenance::Published => "published",
        Provenance::Derived => "derived",
    }
}

pub fn catalog_entry(e: &CatalogEntry) -> String {
    let mut out = String::new();
    out.push_str(&format!("Id         : {}\n", e.id));
    out.push_str(&format!("Name       : {}\n", e.name));
    out.push_str(&format!("Family     : {}\n", e.family.label()));
    match &e.definition {
        Definition::Positions(p) => out.push_str(&format!("Positions  : {}\n", list(p))),
        Definition::Ies(spec) => out.push_str(&format!("IES        : {{{spec}}}\n")),
    }
    if let Some(x) = &e.expected {
        out.push_str("Expected   :\n");
        if let Some(c) = &x.hole_free {
            out.push_str(&format!("  hole_free       = {} ({})\n", c.value, provenance(c.source)));
        }
        if let Some(c) = &x.holes {
            out.push_str(&format!("  holes           = {} ({})\n", list(&c.value), provenance(c.source)));
        }
        if let Some(c) = &x.aperture {
            out.push_str(&format!("  aperture        = {} ({})\n", c.value, provenance(c.source)));
        }
        if let Some(c) = &x.primary_weights {
            let [w1, w2, w3] = c.value;
            out.push_str(&format!(
                "  primary_weights = ({w1}, {w2}, {w3}) ({})\n",
                provenance(c.source)
            ));
        }
    }
    out
}
