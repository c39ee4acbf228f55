use std::fmt::Write as _;

/// One named numeric check.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub note: String,
}

/// Ordered list of checks plus free-form notes that never affect pass/fail.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerificationReport {
    pub title: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), checks: Vec::new(), notes: Vec::new() }
    }

    /// Records a check; it passes exactly when `residual <= tolerance`.
    pub fn push(&mut self, name: impl Into<String>, residual: f64, tolerance: f64, note: impl Into<String>) -> bool {
        let residual = residual.abs();
        let passed = residual <= tolerance;
        self.checks.push(Check { name: name.into(), residual, tolerance, passed, note: note.into() });
        passed
    }

    /// Records a boolean condition as a check with residual 0 or 1.
    pub fn push_flag(&mut self, name: impl Into<String>, ok: bool, note: impl Into<String>) -> bool {
        self.push(name, if ok { 0.0 } else { 1.0 }, 0.0, note)
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
    }

    pub fn passed_count(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn failed_count(&self) -> usize {
        self.checks.len() - self.passed_count()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn summary(&self) -> String {
        format!("{}: {} passed, {} failed", self.title, self.passed_count(), self.failed_count())
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {}", self.title);
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{} {} residual={:.3e} tol={:.1e}{}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.residual,
                c.tolerance,
                if c.note.is_empty() { String::new() } else { format!("  {}", c.note) }
            );
        }
        for n in &self.notes {
            let _ = writeln!(s, "NOTE {n}");
        }
        let _ = writeln!(s, "{}", self.summary());
        s
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("name,residual,tolerance,passed,note\n");
        for c in &self.checks {
            let _ = writeln!(
                s,
                "{},{:.16e},{:.16e},{},{}",
                csv_field(&c.name),
                c.residual,
                c.tolerance,
                c.passed,
                csv_field(&c.note)
            );
        }
        s
    }
}

pub(crate) fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_iff_within_tolerance() {
        let mut r = VerificationReport::new("t");
        assert!(r.push("a", 1e-12, 1e-10, ""));
        assert!(!r.push("b", 1e-8, 1e-10, "x, y"));
        assert!(!r.push("c", f64::NAN, 1.0, ""));
        assert_eq!((r.passed_count(), r.failed_count()), (1, 2));
        assert!(r.to_csv().contains("\"x, y\""));
    }
}
