use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::Invariants;
use crate::analysis::{class_group_in, extension_in, fiber_group_in, splits, Foundation, SplitResult};
use crate::error::Result;
use crate::structures::ParallelepipedStructure;

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub s: usize,
    /// Label of the least point `x_s` of the fiber over `s`.
    pub fiber_point: String,
    pub invariants: Invariants,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitSummary {
    pub s: usize,
    pub splits: bool,
    /// `(b, φ(b))`, the class given by its canonical quad.
    pub section: Option<Vec<(usize, [String; 4])>>,
    pub obstruction: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub points: usize,
    pub base: Invariants,
    pub fiber: Invariants,
    pub classes: Vec<ClassSummary>,
    pub splits: Vec<SplitSummary>,
    pub nil: bool,
}

/// Base, fiber and class groups, and the split verdict at every `s`.
pub fn analyze(s: &ParallelepipedStructure) -> Result<AnalysisReport> {
    let f = Foundation::new(s)?;
    let fg = fiber_group_in(&f)?;
    let label = |x: usize| s.ground().label(x);
    let mut classes = Vec::new();
    let mut split_rows = Vec::new();
    for t in 0..f.base.order() {
        let cg = class_group_in(&f, t)?;
        classes.push(ClassSummary { s: t, fiber_point: label(f.proj.rep(t)), invariants: cg.group.invariants() });
        let e = extension_in(&f, &fg, t)?;
        let row = match splits(&e)? {
            SplitResult::Section { images } => SplitSummary {
                s: t,
                splits: true,
                section: Some(images.iter().enumerate().map(|(b, &k)| (b, cg.reps[k].0.map(label))).collect()),
                obstruction: None,
            },
            SplitResult::NoSection { generator, order, lift_orders } => SplitSummary {
                s: t,
                splits: false,
                section: None,
                obstruction: Some(format!(
                    "base generator {generator} has order {order}; its lifts have orders {lift_orders:?}"
                )),
            },
        };
        split_rows.push(row);
    }
    let nil = split_rows.iter().all(|r| r.splits);
    Ok(AnalysisReport {
        points: s.size(),
        base: f.base.invariants(),
        fiber: fg.group.invariants(),
        classes,
        splits: split_rows,
        nil,
    })
}

impl AnalysisReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "points: {}", self.points);
        let _ = writeln!(out, "base group B: {}", self.base);
        let _ = writeln!(out, "fiber group F: {}", self.fiber);
        for c in &self.classes {
            let _ = writeln!(out, "P_{} (fiber point {}): {}", c.s, c.fiber_point, c.invariants);
        }
        for r in &self.splits {
            if r.splits {
                let _ = writeln!(out, "s = {}: splits", r.s);
                for (b, q) in r.section.iter().flatten() {
                    let _ = writeln!(out, "  phi({b}) = [{}]", q.join(","));
                }
            } else {
                let _ = writeln!(out, "s = {}: does not split ({})", r.s, r.obstruction.as_deref().unwrap_or(""));
            }
        }
        let _ = writeln!(out, "nil: {}", self.nil);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::counterexample;

    #[test]
    fn counterexample_report() {
        let r = analyze(&counterexample(3).unwrap()).unwrap();
        assert_eq!(r.base.0, vec![3]);
        assert_eq!(r.fiber.0, vec![3]);
        assert!(!r.nil);
        let text = r.render();
        assert!(text.contains("P_1 (fiber point (1,0)): [9]"), "{text}");
        assert!(text.contains("s = 0: splits"));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["splits"][1]["splits"], false);
    }
}
