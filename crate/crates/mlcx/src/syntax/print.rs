use super::expr::{shift, Expr, Hint, RcExpr};
use std::collections::BTreeSet;

/// Renders an expression in the surface syntax.  Bound variables are named
/// from their hints, freshened against free names and enclosing binders, so
/// `parse(print(e)) == e` (hints are ignored by equality).
pub fn print_expression(e: &RcExpr) -> String {
    let mut used: BTreeSet<String> = e.free_names();
    // Cell and base names live in other namespaces, but reusing them as
    // variable names would still confuse a reader.
    used.extend(e.basic_names());
    let mut printer = Printer {
        used,
        stack: vec![],
        out: String::new(),
    };
    printer.expr(e);
    printer.out
}

struct Printer {
    used: BTreeSet<String>,
    stack: Vec<String>,
    out: String,
}

impl Printer {
    fn fresh(&self, hint: &Hint, default: &str) -> String {
        let mut name = if hint.0.is_empty() {
            default.to_string()
        } else {
            hint.0.clone()
        };
        let taken = |n: &str, stack: &[String], used: &BTreeSet<String>| {
            used.contains(n)
                || stack.iter().any(|s| s == n)
                || matches!(
                    n,
                    "G" | "N" | "Id" | "Pi" | "Sigma" | "lam" | "app" | "pair" | "R" | "rec"
                        | "J" | "r" | "S"
                )
        };
        while taken(&name, &self.stack, &self.used) {
            name.push('\'');
        }
        name
    }

    fn push(&mut self, hint: &Hint, default: &str) -> String {
        let name = self.fresh(hint, default);
        self.stack.push(name.clone());
        name
    }

    fn pop(&mut self, n: usize) {
        for _ in 0..n {
            self.stack.pop();
        }
    }

    fn lit(&mut self, s: &str) {
        self.out.push_str(s);
    }

    fn expr(&mut self, e: &RcExpr) {
        match &**e {
            Expr::Bound(i) => {
                let name = self
                    .stack
                    .iter()
                    .rev()
                    .nth(*i)
                    .cloned()
                    .unwrap_or_else(|| format!("_b{}", i));
                self.lit(&name);
            }
            Expr::Free(n) => self.lit(n),
            Expr::Basic(n) => {
                self.lit("<");
                self.lit(n);
                self.lit(">");
            }
            Expr::Base(n) => {
                if n == "G" {
                    self.lit("G");
                } else {
                    self.lit("G ");
                    self.lit(n);
                }
            }
            Expr::Nat => self.lit("N"),
            Expr::Zero => self.lit("0"),
            Expr::Succ(x) => {
                self.lit("S(");
                self.expr(x);
                self.lit(")");
            }
            Expr::Refl(x) => {
                self.lit("r(");
                self.expr(x);
                self.lit(")");
            }
            Expr::Id(t, a, b) => {
                self.lit("Id(");
                self.expr(t);
                self.lit(", ");
                self.expr(a);
                self.lit(", ");
                self.expr(b);
                self.lit(")");
            }
            Expr::Pi(h, d, c) | Expr::Sigma(h, d, c) => {
                let head = if matches!(&**e, Expr::Pi(..)) { "Pi " } else { "Sigma " };
                self.lit(head);
                let dom_text = {
                    self.expr_to_string(d)
                };
                let v = self.push(h, "x");
                self.lit(&v);
                self.lit(":");
                self.lit(&dom_text);
                self.lit(". ");
                self.expr(c);
                self.pop(1);
            }
            Expr::Lam(h, d, c) => {
                self.lit("lam ");
                let dom_text = self.expr_to_string(d);
                let v = self.push(h, "x");
                self.lit(&v);
                self.lit(":");
                self.lit(&dom_text);
                self.lit(". ");
                self.expr(c);
                self.pop(1);
            }
            Expr::App(f, a) => {
                self.lit("app(");
                self.expr(f);
                self.lit(", ");
                self.expr(a);
                self.lit(")");
            }
            Expr::Pair(a, b) => {
                self.lit("pair(");
                self.expr(a);
                self.lit(", ");
                self.expr(b);
                self.lit(")");
            }
            Expr::SigElim {
                hx,
                dom0,
                hy,
                dom1,
                body,
                scrut,
            } => {
                self.lit("R([");
                let dom0_text = self.expr_to_string(dom0);
                let x = self.push(hx, "x");
                self.lit(&x);
                self.lit(":");
                self.lit(&dom0_text);
                self.lit(", ");
                let dom1_text = self.expr_to_string(dom1);
                let y = self.push(hy, "y");
                self.lit(&y);
                self.lit(":");
                self.lit(&dom1_text);
                self.lit("] ");
                self.expr(body);
                self.pop(2);
                self.lit(", ");
                self.expr(scrut);
                self.lit(")");
            }
            Expr::Rec {
                scrut,
                zero,
                hx,
                hy,
                step,
            } => {
                self.lit("rec(");
                self.expr(scrut);
                self.lit(", ");
                self.expr(zero);
                self.lit(", [");
                let x = self.push(hx, "x");
                let y = self.push(hy, "y");
                self.lit(&x);
                self.lit(", ");
                self.lit(&y);
                self.lit("] ");
                self.expr(step);
                self.pop(2);
                self.lit(")");
            }
            Expr::J {
                hx,
                hy,
                hz,
                dom,
                motive,
                hf,
                family,
                a,
                b,
                f,
            } => {
                self.lit("J([");
                let dom_text = self.expr_to_string(dom);
                let x = self.push(hx, "x");
                let y = self.push(hy, "y");
                self.lit(&x);
                self.lit(", ");
                self.lit(&y);
                self.lit(":");
                self.lit(&dom_text);
                self.lit(", ");
                // The z-annotation is the forced form Id(dom, x, y).
                let z_ann = Expr::Id(
                    shift(dom, 2),
                    Expr::Bound(1).rc(),
                    Expr::Bound(0).rc(),
                )
                .rc();
                let z_ann_text = self.expr_to_string(&z_ann);
                let z = self.push(hz, "z");
                self.lit(&z);
                self.lit(":");
                self.lit(&z_ann_text);
                self.lit("] ");
                self.expr(motive);
                self.pop(3);
                self.lit(", [");
                let fam_dom_text = self.expr_to_string(dom);
                let xf = self.push(hf, "x");
                self.lit(&xf);
                self.lit(":");
                self.lit(&fam_dom_text);
                self.lit("] ");
                self.expr(family);
                self.pop(1);
                self.lit(", ");
                self.expr(a);
                self.lit(", ");
                self.expr(b);
                self.lit(", ");
                self.expr(f);
                self.lit(")");
            }
        }
    }

    fn expr_to_string(&mut self, e: &RcExpr) -> String {
        let saved = std::mem::take(&mut self.out);
        self.expr(e);
        std::mem::replace(&mut self.out, saved)
    }
}
