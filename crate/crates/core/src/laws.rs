//! The law catalog: functor laws, the traditional monad laws, the Kleisli
//! laws derived from them, the bind-based (Wadler) laws, the agreement of
//! bind-derived combinators with native ones, and two map/Kleisli lemmas.
//!
//! Every law quantifies over finite carriers and function tables only, so
//! `∀ f : A -> M B` is a loop over tables. Premises of the form `f ≐ g` are
//! realized by grouping tables into equality classes.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::carrier::{Caps, CarrierDesc, FiniteType};
use crate::eqcheck::extify_eq;
use crate::error::{Error, Result};
use crate::monads::{Instance, Monad};
use crate::quant::{search, Binder, Mismatch, Outcome, Quantifier};
use crate::report::LawReport;
use crate::value::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Requires {
    Functor,
    Monad,
}

type Checker = fn(&Ctx<'_>) -> Result<(Vec<Binder>, Outcome)>;

pub struct Law {
    /// Short stable id, e.g. `T2`.
    pub id: &'static str,
    /// Lemma name, e.g. `triangleRight`.
    pub name: &'static str,
    pub statement: &'static str,
    /// Quantifier signature: which carriers and function spaces are enumerated.
    pub shape: &'static str,
    pub requires: Requires,
    /// Definitional (and therefore skipped) in the thin ADT profile.
    pub definitional_when_thin: bool,
    check: Checker,
}

impl std::fmt::Debug for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Law({} {})", self.id, self.name)
    }
}

/// The four type roles a law may range over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Domains {
    pub a: FiniteType,
    pub b: FiniteType,
    pub c: FiniteType,
    pub d: FiniteType,
}

impl Domains {
    pub fn new(sizes: [u32; 4]) -> Self {
        Domains {
            a: FiniteType::new("A", sizes[0]),
            b: FiniteType::new("B", sizes[1]),
            c: FiniteType::new("C", sizes[2]),
            d: FiniteType::new("D", sizes[3]),
        }
    }

    pub fn uniform(n: u32) -> Self {
        Domains::new([n; 4])
    }

    pub fn sizes(&self) -> BTreeMap<String, u32> {
        [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .map(|d| (d.name.clone(), d.size))
            .collect()
    }
}

struct Ctx<'a> {
    inst: &'a Instance,
    dom: &'a Domains,
    q: &'a Quantifier,
    caps: &'a Caps,
}

impl Ctx<'_> {
    fn monad(&self) -> Result<&dyn Monad> {
        self.inst
            .monad()
            .map(|m| m.as_ref())
            .ok_or_else(|| Error::Usage(format!("{} is not a monad", self.inst.name())))
    }

    /// `M X`, `M (M X)`, ... for `depth` applications.
    fn m(&self, x: &FiniteType, depth: usize) -> CarrierDesc {
        let f = self.inst.functor();
        (0..depth).fold(CarrierDesc::Base(x.clone()), |c, _| f.carrier_of(c))
    }

    fn carrier(&self, name: &str, x: &FiniteType, depth: usize) -> Result<Binder> {
        Binder::carrier(name, &self.m(x, depth), self.q, self.caps)
    }

    /// Plain functions `x -> y`.
    fn fns(&self, name: &str, x: &FiniteType, y: &FiniteType) -> Result<Binder> {
        Binder::functions(name, x, &CarrierDesc::Base(y.clone()), self.q, self.caps)
    }

    /// Kleisli arrows `x -> M y`.
    fn arrows(&self, name: &str, x: &FiniteType, y: &FiniteType) -> Result<Binder> {
        Binder::functions(name, x, &self.m(y, 1), self.q, self.caps)
    }
}

fn call(f: &Value) -> impl Fn(&Value) -> Result<Value> + '_ {
    move |x| f.apply(x)
}

fn ident(x: &Value) -> Result<Value> {
    Ok(x.clone())
}

/// Compares two results with the equality matching their shape: canonical
/// equality, lifted through any function tables the results are made of.
fn compare(lhs: Value, rhs: Value) -> Result<Option<Mismatch>> {
    let level = lhs.fn_depth().min(rhs.fn_depth());
    let verdict = extify_eq(level, &lhs, &rhs)?;
    Ok(verdict.witness.map(|w| Mismatch {
        extra: w.path.into_iter().enumerate().map(|(i, p)| (format!("e{i}"), p)).collect(),
        lhs,
        rhs,
    }))
}

fn run(binders: Vec<Binder>, pred: impl Fn(&[&Value]) -> Result<Option<Mismatch>> + Sync) -> Result<(Vec<Binder>, Outcome)> {
    let out = search(&binders, pred)?;
    Ok((binders, out))
}

fn f1_map_pres_id(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let f = cx.inst.functor();
    run(vec![cx.carrier("ma", &cx.dom.a, 1)?], |v| compare(f.map(&ident, v[0])?, v[0].clone()))
}

fn f2_map_pres_comp(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.inst.functor();
    let binders = vec![
        cx.fns("f", &cx.dom.a, &cx.dom.b)?,
        cx.fns("g", &cx.dom.b, &cx.dom.c)?,
        cx.carrier("ma", &cx.dom.a, 1)?,
    ];
    run(binders, |v| {
        let (f, g, ma) = (v[0], v[1], v[2]);
        let gf = |x: &Value| g.apply(&f.apply(x)?);
        let lhs = m.map(&gf, ma)?;
        let rhs = m.map(&call(g), &m.map(&call(f), ma)?)?;
        compare(lhs, rhs)
    })
}

fn f3_map_pres_ee(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.inst.functor();
    let fns = cx.fns("f", &cx.dom.a, &cx.dom.b)?;
    let (mas, _) = cx.q.select(crate::carrier::enumerate_carrier_with(&cx.m(&cx.dom.a, 1), cx.caps)?);
    let result_level = 1 + cx.m(&cx.dom.b, 1).fn_depth();
    let binders = vec![Binder::equal_pairs(["f", "g"], &fns)];
    run(binders, |v| {
        // map f and map g tabulated over the quantified carrier, compared
        // with the extify tower at the depth their results need
        let tab = |h: &Value| -> Result<Value> {
            Ok(Value::Fn(mas.iter().map(|ma| m.map(&call(h), ma)).collect::<Result<_>>()?))
        };
        let (lhs, rhs) = (tab(v[0])?, tab(v[1])?);
        let verdict = extify_eq(result_level, &lhs, &rhs)?;
        Ok(verdict.witness.map(|w| {
            let mut path = w.path.into_iter();
            let ma_idx = path.next().and_then(|p| p.as_atom().ok()).unwrap_or(0) as usize;
            let mut extra = vec![("ma".to_string(), mas[ma_idx].clone())];
            extra.extend(path.enumerate().map(|(i, p)| (format!("e{i}"), p)));
            Mismatch {
                extra,
                lhs: w.left,
                rhs: w.right,
            }
        }))
    })
}

fn t1_triangle_left(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    run(vec![cx.carrier("ma", &cx.dom.a, 1)?], |v| {
        compare(m.join(&m.pure(v[0].clone())?)?, v[0].clone())
    })
}

fn t2_triangle_right(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let pure = |x: &Value| m.pure(x.clone());
    run(vec![cx.carrier("ma", &cx.dom.a, 1)?], |v| {
        compare(m.join(&m.map(&pure, v[0])?)?, v[0].clone())
    })
}

fn t3_square(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let join = |x: &Value| m.join(x);
    run(vec![cx.carrier("mmma", &cx.dom.a, 3)?], |v| {
        let lhs = m.join(&m.join(v[0])?)?;
        let rhs = m.join(&m.map(&join, v[0])?)?;
        compare(lhs, rhs)
    })
}

fn t4_pure_nat_trans(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let binders = vec![cx.fns("f", &cx.dom.a, &cx.dom.b)?, Binder::domain("a", &cx.dom.a)];
    run(binders, |v| {
        let (f, a) = (v[0], v[1]);
        compare(m.map(&call(f), &m.pure(a.clone())?)?, m.pure(f.apply(a)?)?)
    })
}

fn t5_join_nat_trans(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let binders = vec![cx.fns("f", &cx.dom.a, &cx.dom.b)?, cx.carrier("mma", &cx.dom.a, 2)?];
    run(binders, |v| {
        let (f, mma) = (v[0], v[1]);
        let map_f = |x: &Value| m.map(&call(f), x);
        compare(m.map(&call(f), &m.join(mma)?)?, m.join(&m.map(&map_f, mma)?)?)
    })
}

fn kj_kleisli_join_map(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let binders = vec![
        cx.arrows("f", &cx.dom.a, &cx.dom.b)?,
        cx.arrows("g", &cx.dom.b, &cx.dom.c)?,
        Binder::domain("a", &cx.dom.a),
    ];
    run(binders, |v| {
        let (f, g, a) = (v[0], v[1], v[2]);
        let lhs = m.kleisli_at(&call(f), &call(g), a)?;
        let rhs = m.join(&m.map(&call(g), &f.apply(a)?)?)?;
        compare(lhs, rhs)
    })
}

fn bj_bind_join_map(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let binders = vec![cx.arrows("f", &cx.dom.a, &cx.dom.b)?, cx.carrier("ma", &cx.dom.a, 1)?];
    run(binders, |v| {
        let (f, ma) = (v[0], v[1]);
        compare(m.bind(ma, &call(f))?, m.join(&m.map(&call(f), ma)?)?)
    })
}

fn d1_pure_left_id_kleisli(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let pure = |x: &Value| m.pure(x.clone());
    let binders = vec![cx.arrows("f", &cx.dom.a, &cx.dom.b)?, Binder::domain("a", &cx.dom.a)];
    run(binders, |v| compare(m.kleisli_at(&pure, &call(v[0]), v[1])?, v[0].apply(v[1])?))
}

fn d2_pure_right_id_kleisli(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let pure = |x: &Value| m.pure(x.clone());
    let binders = vec![cx.arrows("f", &cx.dom.a, &cx.dom.b)?, Binder::domain("a", &cx.dom.a)];
    run(binders, |v| compare(m.kleisli_at(&call(v[0]), &pure, v[1])?, v[0].apply(v[1])?))
}

fn d3_kleisli_assoc(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let binders = vec![
        cx.arrows("f", &cx.dom.a, &cx.dom.b)?,
        cx.arrows("g", &cx.dom.b, &cx.dom.c)?,
        cx.arrows("h", &cx.dom.c, &cx.dom.d)?,
        Binder::domain("a", &cx.dom.a),
    ];
    run(binders, |v| {
        let (f, g, h, a) = (call(v[0]), call(v[1]), call(v[2]), v[3]);
        let fg = |x: &Value| m.kleisli_at(&f, &g, x);
        let gh = |x: &Value| m.kleisli_at(&g, &h, x);
        compare(m.kleisli_at(&fg, &h, a)?, m.kleisli_at(&f, &gh, a)?)
    })
}

fn d4_kleisli_pres_ee(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let fs = cx.arrows("f", &cx.dom.a, &cx.dom.b)?;
    let gs = cx.arrows("g", &cx.dom.b, &cx.dom.c)?;
    let binders = vec![
        Binder::equal_pairs(["f", "f'"], &fs),
        Binder::equal_pairs(["g", "g'"], &gs),
        Binder::domain("a", &cx.dom.a),
    ];
    run(binders, |v| {
        let lhs = m.kleisli_at(&call(v[0]), &call(v[2]), v[4])?;
        let rhs = m.kleisli_at(&call(v[1]), &call(v[3]), v[4])?;
        compare(lhs, rhs)
    })
}

fn d5_kleisli_leapfrog(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let binders = vec![
        cx.arrows("f", &cx.dom.a, &cx.dom.b)?,
        cx.arrows("g", &cx.dom.b, &cx.dom.c)?,
        Binder::domain("a", &cx.dom.a),
    ];
    run(binders, |v| {
        let (f, g, a) = (v[0], v[1], v[2]);
        let lhs = m.kleisli_at(&call(f), &call(g), a)?;
        let rhs = m.kleisli_at(&ident, &call(g), &f.apply(a)?)?;
        compare(lhs, rhs)
    })
}

fn w1_pure_left_id_bind(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let binders = vec![cx.arrows("f", &cx.dom.a, &cx.dom.b)?, Binder::domain("a", &cx.dom.a)];
    run(binders, |v| compare(m.bind(&m.pure(v[1].clone())?, &call(v[0]))?, v[0].apply(v[1])?))
}

fn w2_pure_right_id_bind(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let pure = |x: &Value| m.pure(x.clone());
    run(vec![cx.carrier("ma", &cx.dom.a, 1)?], |v| compare(m.bind(v[0], &pure)?, v[0].clone()))
}

fn w3_bind_assoc(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let binders = vec![
        cx.carrier("ma", &cx.dom.a, 1)?,
        cx.arrows("f", &cx.dom.a, &cx.dom.b)?,
        cx.arrows("g", &cx.dom.b, &cx.dom.c)?,
    ];
    run(binders, |v| {
        let (ma, f, g) = (v[0], call(v[1]), call(v[2]));
        let lhs = m.bind(&m.bind(ma, &f)?, &g)?;
        let inner = |a: &Value| m.bind(&f(a)?, &g);
        compare(lhs, m.bind(ma, &inner)?)
    })
}

fn w4_lift_pres_ee(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let fs = cx.arrows("f", &cx.dom.a, &cx.dom.b)?;
    let binders = vec![Binder::equal_pairs(["f", "g"], &fs), cx.carrier("ma", &cx.dom.a, 1)?];
    run(binders, |v| compare(m.bind(v[2], &call(v[0]))?, m.bind(v[2], &call(v[1]))?))
}

/// `map` derived from bind: `ma >>= (pure ∘ f)`.
fn map_via_bind(m: &dyn Monad, f: &dyn Fn(&Value) -> Result<Value>, ma: &Value) -> Result<Value> {
    m.bind(ma, &|x| m.pure(f(x)?))
}

/// `join` derived from bind: `mma >>= id`.
fn join_via_bind(m: &dyn Monad, mma: &Value) -> Result<Value> {
    m.bind(mma, &ident)
}

fn w5_triangle_right_from_bind(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let pure = |x: &Value| m.pure(x.clone());
    run(vec![cx.carrier("ma", &cx.dom.a, 1)?], |v| {
        compare(join_via_bind(m, &map_via_bind(m, &pure, v[0])?)?, v[0].clone())
    })
}

fn e1_map_from_bind(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let binders = vec![cx.fns("f", &cx.dom.a, &cx.dom.b)?, cx.carrier("ma", &cx.dom.a, 1)?];
    run(binders, |v| compare(map_via_bind(m, &call(v[0]), v[1])?, m.map(&call(v[0]), v[1])?))
}

fn e2_join_from_bind(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    run(vec![cx.carrier("mma", &cx.dom.a, 2)?], |v| compare(join_via_bind(m, v[0])?, m.join(v[0])?))
}

fn e3_kleisli_from_bind(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let binders = vec![
        cx.arrows("f", &cx.dom.a, &cx.dom.b)?,
        cx.arrows("g", &cx.dom.b, &cx.dom.c)?,
        Binder::domain("a", &cx.dom.a),
    ];
    run(binders, |v| {
        let (f, g, a) = (v[0], v[1], v[2]);
        compare(m.bind(&f.apply(a)?, &call(g))?, m.kleisli_at(&call(f), &call(g), a)?)
    })
}

fn l1_map_join(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let binders = vec![
        cx.fns("f", &cx.dom.b, &cx.dom.c)?,
        cx.arrows("g", &cx.dom.a, &cx.dom.b)?,
        cx.carrier("ma", &cx.dom.a, 1)?,
    ];
    run(binders, |v| {
        let (f, g, ma) = (call(v[0]), call(v[1]), v[2]);
        let lhs = m.map(&f, &m.join(&m.map(&g, ma)?)?)?;
        let map_f_after_g = |x: &Value| m.map(&f, &g(x)?);
        compare(lhs, m.join(&m.map(&map_f_after_g, ma)?)?)
    })
}

fn l2_map_kleisli(cx: &Ctx<'_>) -> Result<(Vec<Binder>, Outcome)> {
    let m = cx.monad()?;
    let binders = vec![
        cx.arrows("f", &cx.dom.a, &cx.dom.b)?,
        cx.arrows("g", &cx.dom.b, &cx.dom.c)?,
        cx.fns("h", &cx.dom.c, &cx.dom.d)?,
        Binder::domain("a", &cx.dom.a),
    ];
    run(binders, |v| {
        let (f, g, h, a) = (call(v[0]), call(v[1]), call(v[2]), v[3]);
        let lhs = m.map(&h, &m.kleisli_at(&f, &g, a)?)?;
        let map_h_after_g = |x: &Value| m.map(&h, &g(x)?);
        compare(lhs, m.kleisli_at(&f, &map_h_after_g, a)?)
    })
}

macro_rules! law {
    ($id:literal, $name:literal, $stmt:literal, $shape:literal, $req:ident, $thin:literal, $check:path) => {
        Law {
            id: $id,
            name: $name,
            statement: $stmt,
            shape: $shape,
            requires: Requires::$req,
            definitional_when_thin: $thin,
            check: $check,
        }
    };
}

static CATALOG: [Law; 25] = [
    law!("F1", "mapPresId", "map id ≐ id", "ma : M A", Functor, false, f1_map_pres_id),
    law!("F2", "mapPresComp", "map (g ∘ f) ≐ map g ∘ map f", "f : A -> B, g : B -> C, ma : M A", Functor, false, f2_map_pres_comp),
    law!("F3", "mapPresEE", "f ≐ g -> map f ≐ map g", "f ≐ g : A -> B, over M A", Functor, false, f3_map_pres_ee),
    law!("T1", "triangleLeft", "join ∘ pure ≐ id", "ma : M A", Monad, false, t1_triangle_left),
    law!("T2", "triangleRight", "join ∘ map pure ≐ id", "ma : M A", Monad, false, t2_triangle_right),
    law!("T3", "square", "join ∘ join ≐ join ∘ map join", "mmma : M (M (M A))", Monad, false, t3_square),
    law!("T4", "pureNatTrans", "map f ∘ pure ≐ pure ∘ f", "f : A -> B, a : A", Monad, false, t4_pure_nat_trans),
    law!("T5", "joinNatTrans", "map f ∘ join ≐ join ∘ map (map f)", "f : A -> B, mma : M (M A)", Monad, false, t5_join_nat_trans),
    law!("KJ", "kleisliJoinMapSpec", "f >=> g ≐ join ∘ map g ∘ f", "f : A -> M B, g : B -> M C, a : A", Monad, false, kj_kleisli_join_map),
    law!("BJ", "bindJoinMapSpec", "(>>= f) ≐ join ∘ map f", "f : A -> M B, ma : M A", Monad, false, bj_bind_join_map),
    law!("D1", "pureLeftIdKleisli", "(pure >=> f) ≐ f", "f : A -> M B, a : A", Monad, false, d1_pure_left_id_kleisli),
    law!("D2", "pureRightIdKleisli", "(f >=> pure) ≐ f", "f : A -> M B, a : A", Monad, false, d2_pure_right_id_kleisli),
    law!("D3", "kleisliAssoc", "((f >=> g) >=> h) ≐ (f >=> (g >=> h))", "f : A -> M B, g : B -> M C, h : C -> M D, a : A", Monad, false, d3_kleisli_assoc),
    law!("D4", "kleisliPresEE", "f ≐ f' -> g ≐ g' -> (f >=> g) ≐ (f' >=> g')", "f ≐ f' : A -> M B, g ≐ g' : B -> M C, a : A", Monad, false, d4_kleisli_pres_ee),
    law!("D5", "kleisliLeapfrog", "(f >=> g) ≐ (id >=> g) ∘ f", "f : A -> M B, g : B -> M C, a : A", Monad, false, d5_kleisli_leapfrog),
    law!("W1", "pureLeftIdBind", "(λ a ⇒ pure a >>= f) ≐ f", "f : A -> M B, a : A", Monad, false, w1_pure_left_id_bind),
    law!("W2", "pureRightIdBind", "(>>= pure) ≐ id", "ma : M A", Monad, false, w2_pure_right_id_bind),
    law!("W3", "bindAssoc", "(ma >>= f) >>= g = ma >>= (λ a ⇒ f a >>= g)", "ma : M A, f : A -> M B, g : B -> M C", Monad, false, w3_bind_assoc),
    law!("W4", "liftPresEE", "f ≐ g -> (>>= f) ≐ (>>= g)", "f ≐ g : A -> M B, ma : M A", Monad, false, w4_lift_pres_ee),
    law!("W5", "triangleRightFromBind", "join ∘ map pure ≐ id, with map and join derived from >>=", "ma : M A", Monad, false, w5_triangle_right_from_bind),
    law!("E1", "mapFromBindAgrees", "ma >>= (pure ∘ f) = map f ma", "f : A -> B, ma : M A", Monad, true, e1_map_from_bind),
    law!("E2", "joinFromBindAgrees", "mma >>= id = join mma", "mma : M (M A)", Monad, true, e2_join_from_bind),
    law!("E3", "kleisliFromBindAgrees", "f a >>= g = (f >=> g) a", "f : A -> M B, g : B -> M C, a : A", Monad, true, e3_kleisli_from_bind),
    law!("L1", "mapJoinLemma", "map f ∘ join ∘ map g ≐ join ∘ map (map f ∘ g)", "f : B -> C, g : A -> M B, ma : M A", Monad, false, l1_map_join),
    law!("L2", "mapKleisliLemma", "map h ∘ (f >=> g) ≐ f >=> (map h ∘ g)", "f : A -> M B, g : B -> M C, h : C -> D, a : A", Monad, false, l2_map_kleisli),
];

pub fn law_catalog() -> &'static [Law] {
    &CATALOG
}

/// Looks a law up by short id (`T2`) or lemma name (`triangleRight`).
pub fn find_law(key: &str) -> Result<&'static Law> {
    CATALOG
        .iter()
        .find(|l| l.id == key || l.name == key)
        .ok_or_else(|| Error::Config(format!("unknown law `{key}`")))
}

pub fn check_law(law: &Law, inst: &Instance, domains: &Domains, q: &Quantifier) -> Result<LawReport> {
    check_law_with(law, inst, domains, q, &Caps::default())
}

pub fn check_law_with(law: &Law, inst: &Instance, domains: &Domains, q: &Quantifier, caps: &Caps) -> Result<LawReport> {
    if law.requires == Requires::Monad && inst.monad().is_none() {
        return Err(Error::Config(format!("law {} needs a monad; {} is a functor", law.id, inst.name())));
    }
    let start = Instant::now();
    let cx = Ctx {
        inst,
        dom: domains,
        q,
        caps,
    };
    let (binders, outcome) = (law.check)(&cx)?;
    Ok(LawReport::from_outcome(
        law.id,
        law.name,
        inst.name(),
        domains.sizes(),
        &binders,
        outcome,
        start.elapsed(),
    ))
}

/// Thin: bind and Kleisli are derived, so their agreement laws are
/// definitional and skipped. Fat: every combinator is a primitive and
/// every relationship is checked.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Adt {
    Thin,
    #[default]
    Fat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteProfile {
    pub name: String,
    pub instance: String,
    /// Law ids or names; empty selects every law the instance supports.
    pub laws: Vec<String>,
    pub adt: Adt,
    pub sizes: [u32; 4],
    pub budget: u64,
    pub seed: u64,
}

impl SuiteProfile {
    pub fn new(name: &str, instance: &str, sizes: [u32; 4]) -> Self {
        SuiteProfile {
            name: name.to_string(),
            instance: instance.to_string(),
            laws: Vec::new(),
            adt: Adt::Fat,
            sizes,
            budget: Quantifier::default().budget,
            seed: 0,
        }
    }

    /// Resolves the selected laws in catalog order.
    pub fn selected_laws(&self, inst: &Instance) -> Result<Vec<&'static Law>> {
        let wanted = self.laws.iter().map(|k| find_law(k)).collect::<Result<Vec<_>>>()?;
        let explicit = !wanted.is_empty();
        let mut out = Vec::new();
        for law in law_catalog() {
            let picked = if explicit {
                wanted.iter().any(|w| w.id == law.id)
            } else {
                law.requires == Requires::Functor || inst.monad().is_some()
            };
            if !picked || (self.adt == Adt::Thin && law.definitional_when_thin) {
                continue;
            }
            out.push(law);
        }
        Ok(out)
    }
}

pub fn run_suite(inst: &Instance, profile: &SuiteProfile) -> Result<Vec<LawReport>> {
    run_suite_with(inst, profile, &Caps::default())
}

pub fn run_suite_with(inst: &Instance, profile: &SuiteProfile, caps: &Caps) -> Result<Vec<LawReport>> {
    if inst.name() != profile.instance {
        return Err(Error::Config(format!(
            "profile {} names instance {}, got {}",
            profile.name,
            profile.instance,
            inst.name()
        )));
    }
    let domains = Domains::new(profile.sizes);
    let q = Quantifier::new(profile.budget, profile.seed);
    profile
        .selected_laws(inst)?
        .into_iter()
        .map(|law| check_law_with(law, inst, &domains, &q, caps))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monads::{instance_by_name, InstanceConfig};
    use std::collections::BTreeSet;

    fn inst(name: &str) -> Instance {
        instance_by_name(name, &InstanceConfig::default()).unwrap()
    }

    #[test]
    fn catalog_has_25_unique_ids() {
        assert_eq!(law_catalog().len(), 25);
        let ids: BTreeSet<_> = law_catalog().iter().map(|l| l.id).collect();
        let names: BTreeSet<_> = law_catalog().iter().map(|l| l.name).collect();
        assert_eq!(ids.len(), 25);
        assert_eq!(names.len(), 25);
    }

    #[test]
    fn lookup_by_id_or_name() {
        assert_eq!(find_law("T2").unwrap().name, "triangleRight");
        assert_eq!(find_law("square").unwrap().id, "T3");
        assert!(find_law("T9").is_err());
    }

    #[test]
    fn f1_on_nondet_checks_seven_values() {
        let r = check_law(find_law("F1").unwrap(), &inst("nondet"), &Domains::uniform(2), &Quantifier::default()).unwrap();
        assert!(r.pass);
        assert_eq!(r.checked, 7);
        assert!(r.quantifiers[0].mode.is_exhaustive());
    }

    #[test]
    fn mutant_a_fails_triangle_right_at_the_two_element_sequence() {
        let r = check_law(find_law("T2").unwrap(), &inst("mutant-a"), &Domains::uniform(2), &Quantifier::default()).unwrap();
        assert!(!r.pass);
        let w = r.witness.unwrap();
        assert_eq!(w.get("ma"), Some("[#0,#1]"));
        assert_eq!((w.lhs.as_str(), w.rhs.as_str()), ("[#1,#0]", "[#0,#1]"));
    }

    #[test]
    fn mutant_a_passes_triangle_left() {
        let r = check_law(find_law("T1").unwrap(), &inst("mutant-a"), &Domains::uniform(2), &Quantifier::default()).unwrap();
        assert!(r.pass);
    }

    #[test]
    fn empty_domain_laws_pass() {
        let q = Quantifier::default();
        for name in ["identity", "maybe", "nondet", "simpleprob"] {
            for law in law_catalog() {
                let r = check_law(law, &inst(name), &Domains::uniform(0), &q).unwrap();
                assert!(r.pass, "{} {}", law.id, name);
            }
        }
        // a law quantifying over A directly is vacuous
        let r = check_law(find_law("T4").unwrap(), &inst("nondet"), &Domains::uniform(0), &q).unwrap();
        assert_eq!(r.checked, 0);
    }

    #[test]
    fn monad_laws_refuse_functors() {
        let err = check_law(find_law("T1").unwrap(), &inst("reader"), &Domains::uniform(2), &Quantifier::default());
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn thin_profile_skips_definitional_laws() {
        let mut p = SuiteProfile::new("thin", "maybe", [2; 4]);
        p.adt = Adt::Thin;
        let laws = p.selected_laws(&inst("maybe")).unwrap();
        assert_eq!(laws.len(), 22);
        assert!(laws.iter().all(|l| !l.id.starts_with('E')));
    }

    #[test]
    fn reader_suite_defaults_to_functor_laws() {
        let p = SuiteProfile::new("reader", "reader", [2; 4]);
        let reports = run_suite(&inst("reader"), &p).unwrap();
        let ids: Vec<_> = reports.iter().map(|r| r.law.as_str()).collect();
        assert_eq!(ids, ["F1", "F2", "F3"]);
        assert!(reports.iter().all(|r| r.pass));
    }

    #[test]
    fn suite_rejects_unknown_law_and_wrong_instance() {
        let mut p = SuiteProfile::new("x", "maybe", [2; 4]);
        p.laws = vec!["Z9".into()];
        assert!(run_suite(&inst("maybe"), &p).is_err());
        let p = SuiteProfile::new("x", "maybe", [2; 4]);
        assert!(run_suite(&inst("nondet"), &p).is_err());
    }
}
