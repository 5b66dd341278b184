//! Theories, judgement checking, normalization and definitional equality.
//!
//! Definitional equality is a sound, possibly incomplete decision procedure:
//! normal-form comparison, closed under the theory's ground equations and the
//! type-directed truncation collapse.  Truncation premises that require an
//! inhabitant are discharged either by a variable of the context or by an
//! explicit assumption passed through [`def_equal_assuming`].

mod check;
mod equal;
mod normalize;

pub use check::{check_context, check_term, check_type, infer_type, CheckResult, Rejection};
pub use equal::{def_equal, def_equal_assuming, equal_types};
pub use normalize::normalize;

use crate::globular::Gset;
use crate::syntax::{iterated_id_type, parse_equation, Expr, Name, RcExpr};
use std::fmt;
use std::sync::{Arc, OnceLock};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Omega,
    Level(usize),
}

impl Flavor {
    /// Identity types of at least this depth have definitionally unique
    /// inhabitants; `None` for the untruncated theory.
    pub fn collapse_depth(self) -> Option<usize> {
        match self {
            Flavor::Omega => None,
            Flavor::Level(n) => Some(n + 1),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Omega => write!(f, "omega"),
            Flavor::Level(n) => write!(f, "{}", n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: RcExpr,
    pub rhs: RcExpr,
    pub ty: RcExpr,
}

/// A type theory: base flavor, optionally an adjoined reflexive globular
/// set, and a list of closed equational axioms.
#[derive(Clone)]
pub struct Theory {
    pub flavor: Flavor,
    pub gset: Option<Arc<Gset>>,
    equations: Vec<Equation>,
    /// Oriented ground rewrite rules derived from the equations; built on
    /// first use and invisible to callers.
    rules: Arc<OnceLock<Vec<(RcExpr, RcExpr)>>>,
}

impl fmt::Debug for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Theory(flavor={}, gset={:?}, {} equations)",
            self.flavor,
            self.gset.as_ref().map(|g| &g.name),
            self.equations.len()
        )
    }
}

impl Theory {
    pub fn bare(flavor: Flavor) -> Theory {
        Theory {
            flavor,
            gset: None,
            equations: vec![],
            rules: Arc::new(OnceLock::new()),
        }
    }

    pub fn base_name(&self) -> Option<&str> {
        self.gset.as_ref().map(|g| g.name.as_str())
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// The declared type of a basic term, as an iterated identity type over
    /// the base, or `None` for unknown cells.
    pub fn basic_type(&self, cell: &str) -> Option<RcExpr> {
        let g = self.gset.as_ref()?;
        let id = g.lookup(cell)?;
        let c = g.cell(id);
        let base = Expr::Base(g.name.clone()).rc();
        let mut endpoints = Vec::new();
        for j in 0..c.dim {
            endpoints.push((
                self.cell_term(g.boundary(id, j, 0)),
                self.cell_term(g.boundary(id, j, 1)),
            ));
        }
        Some(iterated_id_type(&base, &endpoints))
    }

    /// The expression naming a cell: degenerate cells collapse to
    /// reflexivity terms on their base cell.
    pub fn cell_term(&self, id: usize) -> RcExpr {
        let g = self.gset.as_ref().expect("cell_term needs an adjoined gset");
        let c = g.cell(id);
        match c.degenerate_of {
            Some(base) => Expr::Refl(self.cell_term(base)).rc(),
            None => Expr::Basic(c.name.clone()).rc(),
        }
    }

    /// Extends the theory by one closed equation.  The typing
    /// side-conditions are checked; admissibility is the caller's claim.
    pub fn with_equation(&self, lhs: RcExpr, rhs: RcExpr, ty: RcExpr) -> Result<Theory, Rejection> {
        let ctx = crate::syntax::Context::empty();
        check::check_type_internal(self, &ctx, &ty)?;
        check::check_internal(self, &ctx, &lhs, &ty)?;
        check::check_internal(self, &ctx, &rhs, &ty)?;
        if !equation_type_ok(self, &ty) {
            return Err(Rejection::new(
                "equational extension",
                "equations must live at an iterated identity type over the base type",
            ));
        }
        let mut equations = self.equations.clone();
        equations.push(Equation { lhs, rhs, ty });
        Ok(Theory {
            flavor: self.flavor,
            gset: self.gset.clone(),
            equations,
            rules: Arc::new(OnceLock::new()),
        })
    }

    pub(crate) fn ground_rules(&self) -> &Vec<(RcExpr, RcExpr)> {
        self.rules
            .get_or_init(|| equal::orient_equations(self, &self.equations))
    }
}

fn equation_type_ok(theory: &Theory, ty: &RcExpr) -> bool {
    match &**ty {
        Expr::Base(n) => theory.base_name() == Some(n.as_str()),
        Expr::Id(inner, _, _) => equation_type_ok(theory, inner),
        _ => false,
    }
}

/// Number of identity-type layers on the outside of a type expression.
pub fn id_depth(ty: &RcExpr) -> usize {
    match &**ty {
        Expr::Id(inner, _, _) => 1 + id_depth(inner),
        _ => 0,
    }
}

/// The theory generated by a reflexive globular set: basic terms for every
/// cell at their iterated identity types, identity cells converting to
/// reflexivity terms, and, under a truncation flavor, the endpoint equations
/// forced by the cells one dimension above the collapse depth.
pub fn adjoin_globular(flavor: Flavor, g: &Gset) -> Theory {
    let mut theory = Theory {
        flavor,
        gset: Some(Arc::new(g.clone())),
        equations: vec![],
        rules: Arc::new(OnceLock::new()),
    };
    if let Flavor::Level(n) = flavor {
        let mut equations = vec![];
        for (id, cell) in g.explicit_cells() {
            if cell.dim == n + 1 {
                let (s, t) = (cell.src.unwrap(), cell.tgt.unwrap());
                let lhs = theory.cell_term(s);
                let rhs = theory.cell_term(t);
                let ty = theory
                    .basic_type(&g.cell(s).name)
                    .unwrap_or_else(|| boundary_type(&theory, g, s));
                let _ = id;
                equations.push(Equation { lhs, rhs, ty });
            }
        }
        theory.equations = equations;
    }
    theory
}

fn boundary_type(theory: &Theory, g: &Gset, cell: usize) -> RcExpr {
    // Degenerate boundary cells have no declared basic type; rebuild it from
    // their base cell.
    let c = g.cell(cell);
    match c.degenerate_of {
        Some(base) => {
            let inner = boundary_type(theory, g, base);
            let t = theory.cell_term(base);
            Expr::Id(inner, t.clone(), t).rc()
        }
        None => theory
            .basic_type(&c.name)
            .expect("explicit cells have declared types"),
    }
}

/// Parses a theory file: `theory v1 flavor=<omega|0|1|...>`, one optional
/// `gset <path>` line resolved through `load_gset`, then `eq` lines.
pub fn parse_theory_file(
    text: &str,
    load_gset: &dyn Fn(&str) -> Result<Gset, String>,
) -> Result<Theory, String> {
    let mut lines = text
        .lines()
        .map(|raw| match raw.find('#') {
            Some(i) => raw[..i].trim(),
            None => raw.trim(),
        })
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or("empty theory file")?;
    let Some(flavor_text) = header
        .strip_prefix("theory v1")
        .map(str::trim)
        .and_then(|rest| rest.strip_prefix("flavor="))
    else {
        return Err(format!("bad theory header: {:?}", header));
    };
    let flavor = match flavor_text.trim() {
        "omega" => Flavor::Omega,
        n => Flavor::Level(
            n.parse::<usize>()
                .map_err(|_| format!("bad flavor: {:?}", n))?,
        ),
    };
    let mut theory = Theory::bare(flavor);
    for line in lines {
        if let Some(path) = line.strip_prefix("gset ") {
            let g = load_gset(path.trim())?;
            theory = adjoin_globular(flavor, &g);
        } else if let Some(eq) = line.strip_prefix("eq ") {
            let (lhs, rhs, ty) = parse_equation(eq).map_err(|e| e.to_string())?;
            theory = theory
                .with_equation(lhs, rhs, ty)
                .map_err(|r| format!("equation rejected: {}", r))?;
        } else {
            return Err(format!("unrecognized theory line: {:?}", line));
        }
    }
    Ok(theory)
}

pub type CellName = Name;

#[cfg(test)]
mod tests;
