//! Human-readable rendering of labels and decompositions.
//!
//! The default style is plain ASCII (`delta([nu^{-3/2}rho, nu^{-1/2}rho])`);
//! the unicode style swaps in the usual symbols. Both are deterministic.

use crate::classical::{ConstituentLabel, MuStarTerm, SPLabel, TemperedPart};
use crate::decompose::{Decomposition, Role};
use crate::gl::MultiSegment;
use crate::segment::{CuspidalLine, Segment};

/// Symbol set for text output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Style {
    unicode: bool,
}

impl Style {
    pub fn ascii() -> Self {
        Style { unicode: false }
    }

    pub fn unicode() -> Self {
        Style { unicode: true }
    }

    fn delta(&self) -> &'static str {
        if self.unicode {
            "δ"
        } else {
            "delta"
        }
    }

    fn nu(&self) -> &'static str {
        if self.unicode {
            "ν"
        } else {
            "nu"
        }
    }

    fn times(&self) -> &'static str {
        if self.unicode {
            " × "
        } else {
            " x "
        }
    }

    fn rtimes(&self) -> &'static str {
        if self.unicode {
            " ⋊ "
        } else {
            " |x "
        }
    }

    fn otimes(&self) -> &'static str {
        if self.unicode {
            " ⊗ "
        } else {
            " (x) "
        }
    }

    fn line(&self, line: &CuspidalLine) -> String {
        if line.is_dual() {
            if self.unicode {
                format!("{}\u{0303}", line.name())
            } else {
                format!("{}~", line.name())
            }
        } else {
            line.name().to_owned()
        }
    }

    pub fn segment(&self, s: &Segment) -> String {
        if s.is_empty() {
            return "1".into();
        }
        let line = self.line(s.line());
        format!(
            "{}([{}^{{{}}}{}, {}^{{{}}}{}])",
            self.delta(),
            self.nu(),
            s.x(),
            line,
            self.nu(),
            s.y(),
            line
        )
    }

    /// A multisegment read as a product of standard modules.
    pub fn product(&self, m: &MultiSegment) -> String {
        if m.is_unit() {
            return "1".into();
        }
        let parts: Vec<String> = m.segments().iter().map(|s| self.segment(s)).collect();
        parts.join(self.times())
    }

    /// A multisegment read as an irreducible Langlands label.
    pub fn gl_label(&self, m: &MultiSegment) -> String {
        match m.len() {
            0 => "1".into(),
            1 => self.segment(&m.segments()[0]),
            _ => {
                let parts: Vec<String> = m.segments().iter().map(|s| self.segment(s)).collect();
                format!("L({})", parts.join(", "))
            }
        }
    }

    /// A strongly positive label, displayed through its inducing chain with
    /// the empty slots dropped.
    pub fn sp_label(&self, sp: &SPLabel) -> String {
        let chain: Vec<String> = sp.listed().map(|s| self.segment(s)).collect();
        format!(
            "sp({}{}{})",
            chain.join(self.times()),
            self.rtimes(),
            sp.base().name()
        )
    }

    pub fn tempered(&self, t: &TemperedPart) -> String {
        match t {
            TemperedPart::Cuspidal { base } => base.name().to_owned(),
            TemperedPart::StronglyPositive { label } => self.sp_label(label),
        }
    }

    /// A constituent with the tempered part rendered by `tempered_name`.
    fn constituent_named(&self, c: &ConstituentLabel, tempered_name: &str) -> String {
        if c.is_tempered() {
            return tempered_name.to_owned();
        }
        let parts: Vec<String> = c.negatives().segments().iter().map(|s| self.segment(s)).collect();
        format!("L({}; {})", parts.join(", "), tempered_name)
    }

    pub fn constituent(&self, c: &ConstituentLabel) -> String {
        self.constituent_named(c, &self.tempered(c.tempered()))
    }

    /// Multi-line rendering of a decomposition. Strongly positive tempered
    /// parts are abbreviated `sigma_k` and defined below the list.
    pub fn decomposition(&self, d: &Decomposition) -> String {
        let mut lines = Vec::new();
        lines.push(format!("case: {}", d.case().as_str()));
        lines.push(format!("length: {}", d.len()));
        lines.push("constituents:".into());
        let mut definitions: Vec<(String, String)> = Vec::new();
        for (idx, c) in d.constituents().iter().enumerate() {
            let tempered_name = match (&c.role, c.label.tempered()) {
                (_, TemperedPart::Cuspidal { base }) => base.name().to_owned(),
                (Role::Pi { k }, TemperedPart::StronglyPositive { label }) => {
                    let name = format!("sigma_{k}");
                    definitions.push((name.clone(), self.sp_label(label)));
                    name
                }
                (_, TemperedPart::StronglyPositive { label }) => {
                    let name = format!("sigma_{}", label.listed().count());
                    definitions.push((name.clone(), self.sp_label(label)));
                    name
                }
            };
            lines.push(format!(
                "{}. {}",
                idx + 1,
                self.constituent_named(&c.label, &tempered_name)
            ));
        }
        if !definitions.is_empty() {
            lines.push("where:".into());
            for (name, def) in definitions {
                lines.push(format!("{name} = {def}"));
            }
        }
        lines.join("\n")
    }

    /// One structural-formula term with its cut indices.
    pub fn mu_star_term(&self, t: &MuStarTerm) -> String {
        let c: Vec<String> = t.c().iter().map(|v| v.to_string()).collect();
        let d: Vec<String> = t.d().iter().map(|v| v.to_string()).collect();
        format!(
            "(c=({}), d=({})): {}{}{}{}{}{}{}",
            c.join(", "),
            d.join(", "),
            self.gl_label(t.gl_contragredient()),
            self.times(),
            self.gl_label(t.gl_positive()),
            self.otimes(),
            self.gl_label(t.middle()),
            self.rtimes(),
            t.base().name()
        )
    }
}
