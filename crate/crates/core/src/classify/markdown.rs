use std::fmt::Write;

use super::{
    ClassificationReport, CorollaryReport, NonexistenceReport, RemarkReport, RowReport, TablesReport, VerifyAllReport,
};

/// Human-readable rendering of a report.
pub trait ToMarkdown {
    fn to_markdown(&self) -> String;
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn opt(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "undecided (node cap)",
    }
}

impl ToMarkdown for ClassificationReport {
    fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "## Cover type {}, {} (n = {})\n", self.cover_type, self.group, self.n);
        let _ = writeln!(s, "- admissible vectors: {}", self.admissible_count);
        let _ = writeln!(s, "- classes under B_r x Aut(G)_H: {}", self.classes.len());
        let _ = writeln!(s, "- |Aut(G)_H| = {}", self.automorphisms);
        let _ = writeln!(s, "- complete: {}", self.complete);
        let _ = writeln!(s, "- result: {}\n", verdict(self.passed));
        if !self.classes.is_empty() {
            let _ = writeln!(s, "| class | signature | admissible members | orbit size | normal forms | representative |");
            let _ = writeln!(s, "|---|---|---|---|---|---|");
            for c in &self.classes {
                let forms = if c.normal_forms.is_empty() { "unmatched".to_string() } else { c.normal_forms.join(", ") };
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {}{} | {} | {} |",
                    c.index,
                    c.signature,
                    c.admissible_members,
                    c.orbit_size,
                    if c.exhausted { "" } else { "+" },
                    forms,
                    c.display
                );
            }
            s.push('\n');
        }
        for (id, m) in &self.matched_normal_forms {
            let status = match (m.admissible, m.class) {
                (false, _) => "not admissible".to_string(),
                (true, Some(c)) => format!("class {c}"),
                (true, None) => "no class".to_string(),
            };
            let _ = writeln!(s, "- normal form {id} `{}`: {status}", m.vector);
        }
        for note in &self.notes {
            let _ = writeln!(s, "- note: {note}");
        }
        s
    }
}

fn row_line(s: &mut String, r: &RowReport) {
    let v_prime = r.v_prime.as_ref().map(|c| {
        if c.passed {
            format!("{} ({})", c.expected, c.method)
        } else {
            format!("{} / computed {} ({})", c.expected, c.computed, c.detail.as_deref().unwrap_or(c.method))
        }
    });
    let cell = |c: &super::CellCheck| if c.passed { c.expected.clone() } else { format!("{} / computed {}", c.expected, c.computed) };
    let _ = writeln!(
        s,
        "| {}{} | {} | {} | {} | {} | {} |",
        r.subgroup,
        if r.condition == "all" { String::new() } else { format!(" ({})", r.condition) },
        cell(&r.v_quot),
        cell(&r.genus),
        cell(&r.delta),
        v_prime.unwrap_or_else(|| "-".into()),
        verdict(r.passed)
    );
}

impl ToMarkdown for TablesReport {
    fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "## Tables at n = {}\n", self.n);
        for t in &self.tables {
            let _ = writeln!(s, "### {} `v = {}` ({})\n", t.id, t.vector, verdict(t.passed));
            let _ = writeln!(s, "| H' | v_{{G/H'}} | g_{{C/H'}} | δ_{{H'}} | v_{{H'}} | |");
            let _ = writeln!(s, "|---|---|---|---|---|---|");
            row_line(&mut s, &t.heading);
            for r in &t.rows {
                row_line(&mut s, r);
            }
            s.push('\n');
        }
        if !self.not_applicable.is_empty() {
            let _ = writeln!(s, "- not applicable: {}", self.not_applicable.join(", "));
        }
        for note in &self.notes {
            let _ = writeln!(s, "- note: {note}");
        }
        let _ = writeln!(s, "- mismatched cells: {}", self.mismatched_cells());
        let _ = writeln!(s, "- result: {}", verdict(self.passed));
        s
    }
}

impl ToMarkdown for NonexistenceReport {
    fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "## Non-existence (n ≤ {})\n", self.n_max);
        let _ = writeln!(s, "| group | n | cover type | admissible |");
        let _ = writeln!(s, "|---|---|---|---|");
        for e in &self.entries {
            let _ = writeln!(s, "| {} | {} | {} | {} |", e.group, e.n, e.cover_type, e.admissible_count);
        }
        for note in &self.notes {
            let _ = writeln!(s, "- note: {note}");
        }
        let _ = writeln!(s, "\n- result: {}", verdict(self.passed));
        s
    }
}

impl ToMarkdown for CorollaryReport {
    fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "## Dimension pairs at n = {}\n", self.n);
        let _ = writeln!(s, "| cover type | vectors | strict pairs | allowed | arithmetic checks | result |");
        let _ = writeln!(s, "|---|---|---|---|---|---|");
        for e in &self.entries {
            let pairs = |p: &[(i64, i64)]| p.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" ");
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} ({} failed) | {} |",
                e.cover_type,
                e.vectors,
                pairs(&e.strict_pairs),
                pairs(&e.allowed_pairs),
                e.arithmetic_checks,
                e.arithmetic_failures.len(),
                verdict(e.passed)
            );
        }
        s
    }
}

impl ToMarkdown for RemarkReport {
    fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "## {} versus {} at n = {}\n", self.first, self.second, self.n);
        let _ = writeln!(s, "- same B_4 x Aut(G) orbit: {}", opt(self.equivalent_under_aut_g));
        let _ = writeln!(s, "- same B_4 x Aut(G)_H orbit: {}", opt(self.equivalent_under_aut_g_h));
        let _ = writeln!(s, "- witness is an automorphism: {}", self.witness_is_automorphism);
        let _ = writeln!(s, "- witness preserves H: {}", self.witness_preserves_h);
        let _ = writeln!(s, "- witness connects the braid orbits: {}", opt(self.witness_connects));
        let _ = writeln!(s, "- result: {}", verdict(self.passed));
        s
    }
}

impl ToMarkdown for VerifyAllReport {
    fn to_markdown(&self) -> String {
        let mut s = String::new();
        let ns: Vec<String> = self.n_values.iter().map(u32::to_string).collect();
        let _ = writeln!(s, "# Verification for n in {{{}}}\n", ns.join(", "));
        let _ = writeln!(s, "Overall: {}{}\n", verdict(self.passed), if self.complete { "" } else { " (incomplete)" });
        for c in &self.classifications {
            s.push_str(&c.to_markdown());
            s.push('\n');
        }
        for t in &self.tables {
            s.push_str(&t.to_markdown());
            s.push('\n');
        }
        s.push_str(&self.nonexistence.to_markdown());
        s.push('\n');
        for c in &self.corollary {
            s.push_str(&c.to_markdown());
            s.push('\n');
        }
        for r in &self.remark {
            s.push_str(&r.to_markdown());
            s.push('\n');
        }
        s
    }
}
