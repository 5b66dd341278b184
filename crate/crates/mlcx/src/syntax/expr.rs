use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub type Name = String;
pub type RcExpr = Arc<Expr>;

/// Surface name retained for a binder.  Two hints always compare equal, so
/// the derived comparisons on [`Expr`] are alpha-equivalence.
#[derive(Clone, Default)]
pub struct Hint(pub String);

impl Hint {
    pub fn new(s: &str) -> Self {
        Hint(s.to_string())
    }
}

impl PartialEq for Hint {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}
impl Eq for Hint {}
impl PartialOrd for Hint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Hint {
    fn cmp(&self, _: &Self) -> Ordering {
        Ordering::Equal
    }
}
impl Hash for Hint {
    fn hash<H: Hasher>(&self, _: &mut H) {}
}
impl fmt::Debug for Hint {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "{:?}", self.0)
    }
}

/// Expressions of the theory: terms and types in one inductive class.
///
/// Binding conventions (innermost binder = index 0):
/// - `Lam`, `Pi`, `Sigma`: body binds one variable.
/// - `SigElim`: `dom1` binds `x`; `body` binds `x, y` (so inside `body`,
///   `y = Bound(0)`, `x = Bound(1)`).
/// - `Rec`: `step` binds `x, y` (`y = Bound(0)`, `x = Bound(1)`).
/// - `J`: `motive` binds `x, y, z` (`z = Bound(0)`, `y = Bound(1)`,
///   `x = Bound(2)`); `family` binds one variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Expr {
    /// Bound variable (de Bruijn index).
    Bound(usize),
    /// Context variable, referenced by name.
    Free(Name),
    /// Basic term `<a>` adjoined from a globular-set cell.
    Basic(Name),
    /// Adjoined base type.
    Base(Name),
    Nat,
    Zero,
    Succ(RcExpr),
    Refl(RcExpr),
    Id(RcExpr, RcExpr, RcExpr),
    Pi(Hint, RcExpr, RcExpr),
    Sigma(Hint, RcExpr, RcExpr),
    Lam(Hint, RcExpr, RcExpr),
    App(RcExpr, RcExpr),
    Pair(RcExpr, RcExpr),
    SigElim {
        hx: Hint,
        dom0: RcExpr,
        hy: Hint,
        dom1: RcExpr,
        body: RcExpr,
        scrut: RcExpr,
    },
    Rec {
        scrut: RcExpr,
        zero: RcExpr,
        hx: Hint,
        hy: Hint,
        step: RcExpr,
    },
    J {
        hx: Hint,
        hy: Hint,
        hz: Hint,
        dom: RcExpr,
        motive: RcExpr,
        hf: Hint,
        family: RcExpr,
        a: RcExpr,
        b: RcExpr,
        f: RcExpr,
    },
}

impl Expr {
    pub fn rc(self) -> RcExpr {
        Arc::new(self)
    }

    pub fn free(n: &str) -> RcExpr {
        Expr::Free(n.to_string()).rc()
    }

    pub fn basic(n: &str) -> RcExpr {
        Expr::Basic(n.to_string()).rc()
    }

    pub fn base(n: &str) -> RcExpr {
        Expr::Base(n.to_string()).rc()
    }

    pub fn id(ty: RcExpr, a: RcExpr, b: RcExpr) -> RcExpr {
        Expr::Id(ty, a, b).rc()
    }

    pub fn refl(e: RcExpr) -> RcExpr {
        Expr::Refl(e).rc()
    }

    pub fn app(f: RcExpr, a: RcExpr) -> RcExpr {
        Expr::App(f, a).rc()
    }

    pub fn lam(h: &str, dom: RcExpr, body: RcExpr) -> RcExpr {
        Expr::Lam(Hint::new(h), dom, body).rc()
    }

    pub fn pi(h: &str, dom: RcExpr, cod: RcExpr) -> RcExpr {
        Expr::Pi(Hint::new(h), dom, cod).rc()
    }

    pub fn numeral(k: u64) -> RcExpr {
        let mut e = Expr::Zero.rc();
        for _ in 0..k {
            e = Expr::Succ(e).rc();
        }
        e
    }

    /// Reads back `S^k(0)` when the term is literally a numeral.
    pub fn as_numeral(&self) -> Option<u64> {
        match self {
            Expr::Zero => Some(0),
            Expr::Succ(e) => e.as_numeral().map(|k| k + 1),
            _ => None,
        }
    }

    /// Node count; hints and indices are free.
    pub fn size(&self) -> usize {
        match self {
            Expr::Bound(_) | Expr::Free(_) | Expr::Basic(_) | Expr::Base(_) | Expr::Nat
            | Expr::Zero => 1,
            Expr::Succ(e) | Expr::Refl(e) => 1 + e.size(),
            Expr::Id(t, a, b) => 1 + t.size() + a.size() + b.size(),
            Expr::Pi(_, d, c) | Expr::Sigma(_, d, c) | Expr::Lam(_, d, c) => {
                1 + d.size() + c.size()
            }
            Expr::App(f, a) | Expr::Pair(f, a) => 1 + f.size() + a.size(),
            Expr::SigElim {
                dom0,
                dom1,
                body,
                scrut,
                ..
            } => 1 + dom0.size() + dom1.size() + body.size() + scrut.size(),
            Expr::Rec { scrut, zero, step, .. } => 1 + scrut.size() + zero.size() + step.size(),
            Expr::J {
                dom,
                motive,
                family,
                a,
                b,
                f,
                ..
            } => 1 + dom.size() + motive.size() + family.size() + a.size() + b.size() + f.size(),
        }
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<Name>) {
        self.walk(&mut |e| {
            if let Expr::Free(n) = e {
                out.insert(n.clone());
            }
        });
    }

    pub fn mentions_free(&self, name: &str) -> bool {
        let mut found = false;
        self.walk(&mut |e| {
            if let Expr::Free(n) = e {
                if n == name {
                    found = true;
                }
            }
        });
        found
    }

    pub fn basic_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.walk(&mut |e| {
            if let Expr::Basic(n) = e {
                out.insert(n.clone());
            }
        });
        out
    }

    fn walk(&self, f: &mut impl FnMut(&Expr)) {
        f(self);
        match self {
            Expr::Bound(_) | Expr::Free(_) | Expr::Basic(_) | Expr::Base(_) | Expr::Nat
            | Expr::Zero => {}
            Expr::Succ(e) | Expr::Refl(e) => e.walk(f),
            Expr::Id(t, a, b) => {
                t.walk(f);
                a.walk(f);
                b.walk(f);
            }
            Expr::Pi(_, d, c) | Expr::Sigma(_, d, c) | Expr::Lam(_, d, c) => {
                d.walk(f);
                c.walk(f);
            }
            Expr::App(g, a) | Expr::Pair(g, a) => {
                g.walk(f);
                a.walk(f);
            }
            Expr::SigElim {
                dom0,
                dom1,
                body,
                scrut,
                ..
            } => {
                dom0.walk(f);
                dom1.walk(f);
                body.walk(f);
                scrut.walk(f);
            }
            Expr::Rec { scrut, zero, step, .. } => {
                scrut.walk(f);
                zero.walk(f);
                step.walk(f);
            }
            Expr::J {
                dom,
                motive,
                family,
                a,
                b,
                f: ff,
                ..
            } => {
                dom.walk(f);
                motive.walk(f);
                family.walk(f);
                a.walk(f);
                b.walk(f);
                ff.walk(f);
            }
        }
    }

    /// Structural map over immediate subexpressions, tracking how many
    /// binders each child sits under.
    fn map_children(&self, depth: usize, f: &mut impl FnMut(&RcExpr, usize) -> RcExpr) -> Expr {
        match self {
            Expr::Bound(i) => Expr::Bound(*i),
            Expr::Free(n) => Expr::Free(n.clone()),
            Expr::Basic(n) => Expr::Basic(n.clone()),
            Expr::Base(n) => Expr::Base(n.clone()),
            Expr::Nat => Expr::Nat,
            Expr::Zero => Expr::Zero,
            Expr::Succ(e) => Expr::Succ(f(e, depth)),
            Expr::Refl(e) => Expr::Refl(f(e, depth)),
            Expr::Id(t, a, b) => Expr::Id(f(t, depth), f(a, depth), f(b, depth)),
            Expr::Pi(h, d, c) => Expr::Pi(h.clone(), f(d, depth), f(c, depth + 1)),
            Expr::Sigma(h, d, c) => Expr::Sigma(h.clone(), f(d, depth), f(c, depth + 1)),
            Expr::Lam(h, d, c) => Expr::Lam(h.clone(), f(d, depth), f(c, depth + 1)),
            Expr::App(g, a) => Expr::App(f(g, depth), f(a, depth)),
            Expr::Pair(g, a) => Expr::Pair(f(g, depth), f(a, depth)),
            Expr::SigElim {
                hx,
                dom0,
                hy,
                dom1,
                body,
                scrut,
            } => Expr::SigElim {
                hx: hx.clone(),
                dom0: f(dom0, depth),
                hy: hy.clone(),
                dom1: f(dom1, depth + 1),
                body: f(body, depth + 2),
                scrut: f(scrut, depth),
            },
            Expr::Rec {
                scrut,
                zero,
                hx,
                hy,
                step,
            } => Expr::Rec {
                scrut: f(scrut, depth),
                zero: f(zero, depth),
                hx: hx.clone(),
                hy: hy.clone(),
                step: f(step, depth + 2),
            },
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
                f: ff,
            } => Expr::J {
                hx: hx.clone(),
                hy: hy.clone(),
                hz: hz.clone(),
                dom: f(dom, depth),
                motive: f(motive, depth + 3),
                hf: hf.clone(),
                family: f(family, depth + 1),
                a: f(a, depth),
                b: f(b, depth),
                f: f(ff, depth),
            },
        }
    }
}

fn transform(e: &RcExpr, depth: usize, f: &mut impl FnMut(&Expr, usize) -> Option<RcExpr>) -> RcExpr {
    if let Some(out) = f(e, depth) {
        return out;
    }
    e.map_children(depth, &mut |child, d| transform(child, d, f)).rc()
}

/// Shifts indices referring to binders outside the expression by `by`,
/// so the expression can be placed under `by` extra binders.
pub fn shift(e: &RcExpr, by: usize) -> RcExpr {
    if by == 0 {
        return e.clone();
    }
    transform(&e.clone(), 0, &mut |node, depth| match node {
        Expr::Bound(i) if *i >= depth => Some(Expr::Bound(i + by).rc()),
        _ => None,
    })
}

/// Whether every index points at a binder inside the expression.
pub fn locally_closed(e: &RcExpr) -> bool {
    fn check(e: &Expr, depth: usize) -> bool {
        match e {
            Expr::Bound(i) => *i < depth,
            Expr::Free(_) | Expr::Basic(_) | Expr::Base(_) | Expr::Nat | Expr::Zero => true,
            Expr::Succ(x) | Expr::Refl(x) => check(x, depth),
            Expr::Id(t, a, b) => check(t, depth) && check(a, depth) && check(b, depth),
            Expr::Pi(_, d, c) | Expr::Sigma(_, d, c) | Expr::Lam(_, d, c) => {
                check(d, depth) && check(c, depth + 1)
            }
            Expr::App(g, a) | Expr::Pair(g, a) => check(g, depth) && check(a, depth),
            Expr::SigElim {
                dom0,
                dom1,
                body,
                scrut,
                ..
            } => {
                check(dom0, depth)
                    && check(dom1, depth + 1)
                    && check(body, depth + 2)
                    && check(scrut, depth)
            }
            Expr::Rec { scrut, zero, step, .. } => {
                check(scrut, depth) && check(zero, depth) && check(step, depth + 2)
            }
            Expr::J {
                dom,
                motive,
                family,
                a,
                b,
                f,
                ..
            } => {
                check(dom, depth)
                    && check(motive, depth + 3)
                    && check(family, depth + 1)
                    && check(a, depth)
                    && check(b, depth)
                    && check(f, depth)
            }
        }
    }
    check(e, 0)
}

/// Replaces `Bound(depth + i)` by `args[i]`; every `args[i]` must be locally
/// closed, so no shifting is required.
pub fn instantiate(e: &RcExpr, args: &[RcExpr]) -> RcExpr {
    transform(&e.clone(), 0, &mut |node, depth| match node {
        Expr::Bound(i) if *i >= depth && *i - depth < args.len() => {
            Some(args[*i - depth].clone())
        }
        _ => None,
    })
}

/// Replaces `Bound(0)` (innermost binder) by `arg`.
pub fn open1(e: &RcExpr, arg: &RcExpr) -> RcExpr {
    instantiate(e, std::slice::from_ref(arg))
}

/// Turns the free variables `names` into bound indices so the result can be
/// placed under that many binders; `names[last]` becomes `Bound(0)`.
pub fn abstract_frees(e: &RcExpr, names: &[&str]) -> RcExpr {
    let k = names.len();
    transform(&e.clone(), 0, &mut |node, depth| match node {
        Expr::Free(n) => names
            .iter()
            .position(|m| m == n)
            .map(|pos| Expr::Bound(depth + (k - 1 - pos)).rc()),
        Expr::Bound(i) if *i >= depth => Some(Expr::Bound(i + k).rc()),
        _ => None,
    })
}

/// Capture-avoiding substitution of `s` for the context variable `v`.
pub fn substitute(e: &RcExpr, v: &str, s: &RcExpr) -> RcExpr {
    transform(&e.clone(), 0, &mut |node, _| match node {
        Expr::Free(n) if n == v => Some(s.clone()),
        _ => None,
    })
}

/// Whether `e1` and `e2` are identical up to bound-variable renaming.  Since
/// hints are ignored by `Eq`, this is plain structural equality.
pub fn alpha_equal(e1: &Expr, e2: &Expr) -> bool {
    e1 == e2
}

/// Result of formally substituting expressions for basic terms: every
/// `Basic(a)` occurrence is replaced by `map(a)` and every `Base` occurrence
/// is renamed to `base_rename`.
pub fn replace_basic(
    e: &RcExpr,
    map: &dyn Fn(&str) -> Option<RcExpr>,
    base_rename: &str,
) -> Result<RcExpr, Name> {
    let mut missing: Option<Name> = None;
    let out = transform(&e.clone(), 0, &mut |node, _| match node {
        Expr::Basic(n) => match map(n) {
            Some(img) => Some(img),
            None => {
                if missing.is_none() {
                    missing = Some(n.clone());
                }
                Some(Expr::Basic(n.clone()).rc())
            }
        },
        Expr::Base(_) => Some(Expr::Base(base_rename.to_string()).rc()),
        _ => None,
    });
    match missing {
        Some(n) => Err(n),
        None => Ok(out),
    }
}

/// Iterated identity type: `Id^0 = A`, `Id^{n+1}(..; a, b) = Id(Id^n(..), a, b)`.
pub fn iterated_id_type(a: &RcExpr, endpoints: &[(RcExpr, RcExpr)]) -> RcExpr {
    let mut ty = a.clone();
    for (l, r) in endpoints {
        ty = Expr::Id(ty, l.clone(), r.clone()).rc();
    }
    ty
}

/// Ordered variable declarations, each type scoped over the earlier ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    pub entries: Vec<(Name, RcExpr)>,
}

impl Context {
    pub fn empty() -> Self {
        Context { entries: vec![] }
    }

    pub fn push(&self, name: &str, ty: RcExpr) -> Self {
        let mut entries = self.entries.clone();
        entries.push((name.to_string(), ty));
        Context { entries }
    }

    pub fn lookup(&self, name: &str) -> Option<&RcExpr> {
        self.entries
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lookup(name).is_some()
    }

    /// A name not colliding with any declaration, derived from `base`.
    pub fn fresh(&self, base: &str) -> Name {
        let mut candidate = if base.is_empty() { "x".to_string() } else { base.to_string() };
        while self.contains(&candidate) {
            candidate.push('\'');
        }
        candidate
    }
}

/// One of the four judgement forms, paired with its context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Judgement {
    IsType(Context, RcExpr),
    HasType(Context, RcExpr, RcExpr),
    TypeEqual(Context, RcExpr, RcExpr),
    TermEqual(Context, RcExpr, RcExpr, RcExpr),
}
