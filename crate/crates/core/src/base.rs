//! Finite commutative quantales given by tables.
//!
//! A [`Quantale`] can only be obtained through [`Quantale::new`] (or a
//! builtin), which runs [`audit_laws`] first, so every operation on it is
//! total. Raw, unaudited data lives in [`QuantaleTables`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a quantale: a dense index into its element list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QElement(pub usize);

impl QElement {
    pub fn id(self) -> usize {
        self.0
    }
}

/// Unaudited quantale data. `leq[a][b]` reads `a ⊑ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuantaleTables {
    pub names: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub tensor: Vec<Vec<usize>>,
    pub unit: usize,
}

/// JSON form: `{"elements":[..], "leq":[[bool]], "tensor":[[name]], "unit":name}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantaleSpec {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub tensor: Vec<Vec<String>>,
    pub unit: String,
}

impl QuantaleSpec {
    pub fn into_tables(self) -> Result<QuantaleTables> {
        let index = |name: &str| {
            self.elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| Error::Invalid(format!("unknown element `{name}`")))
        };
        let tensor = self
            .tensor
            .iter()
            .map(|row| row.iter().map(|n| index(n)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let unit = index(&self.unit)?;
        Ok(QuantaleTables {
            names: self.elements.clone(),
            leq: self.leq,
            tensor,
            unit,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Reflexivity,
    Antisymmetry,
    Transitivity,
    BinaryJoins,
    Bottom,
    Associativity,
    Commutativity,
    Unit,
    Distributivity,
    BottomAbsorbing,
    Residuation,
}

impl Law {
    pub const ALL: [Law; 11] = [
        Law::Reflexivity,
        Law::Antisymmetry,
        Law::Transitivity,
        Law::BinaryJoins,
        Law::Bottom,
        Law::Associativity,
        Law::Commutativity,
        Law::Unit,
        Law::Distributivity,
        Law::BottomAbsorbing,
        Law::Residuation,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail {
        witness: Vec<usize>,
    },
    /// Not evaluated because a prerequisite law (joins) failed.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: Law,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub checks: Vec<LawCheck>,
}

impl LawReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.outcome == Outcome::Pass)
    }

    pub fn outcome(&self, law: Law) -> &Outcome {
        &self
            .checks
            .iter()
            .find(|c| c.law == law)
            .expect("every law is reported")
            .outcome
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawCheck> {
        self.checks.iter().filter(|c| c.outcome != Outcome::Pass)
    }
}

fn check_shape(t: &QuantaleTables) -> Result<()> {
    let n = t.names.len();
    if n == 0 {
        return Err(Error::MalformedQuantale("no elements".into()));
    }
    for (i, a) in t.names.iter().enumerate() {
        if t.names[..i].contains(a) {
            return Err(Error::MalformedQuantale(format!("duplicate element `{a}`")));
        }
    }
    let square = |rows: usize, cols: &[usize]| rows == n && cols.iter().all(|&c| c == n);
    if !square(t.leq.len(), &t.leq.iter().map(Vec::len).collect::<Vec<_>>())
        || !square(
            t.tensor.len(),
            &t.tensor.iter().map(Vec::len).collect::<Vec<_>>(),
        )
    {
        return Err(Error::MalformedQuantale(format!("tables must be {n}x{n}")));
    }
    if t.unit >= n || t.tensor.iter().flatten().any(|&e| e >= n) {
        return Err(Error::MalformedQuantale(
            "element index out of range".into(),
        ));
    }
    Ok(())
}

fn first<I: IntoIterator<Item = Vec<usize>>>(it: I) -> Outcome {
    match it.into_iter().next() {
        None => Outcome::Pass,
        Some(witness) => Outcome::Fail { witness },
    }
}

/// Least element of `set` under `leq`, if one exists.
fn least(leq: &[Vec<bool>], set: &[usize]) -> Option<usize> {
    set.iter()
        .copied()
        .find(|&u| set.iter().all(|&v| leq[u][v]))
}

/// Derived binary join table; `Err((a, b))` names a pair without a join.
fn derive_joins(t: &QuantaleTables) -> std::result::Result<Vec<Vec<usize>>, (usize, usize)> {
    let n = t.names.len();
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let ub: Vec<usize> = (0..n).filter(|&c| t.leq[a][c] && t.leq[b][c]).collect();
            join[a][b] = least(&t.leq, &ub).ok_or((a, b))?;
        }
    }
    Ok(join)
}

/// Checks every quantale law exhaustively. Failures are data, with a witness
/// tuple of element indices.
///
/// Panics only if the tables are not square or hold out-of-range indices;
/// use [`Quantale::new`] for a fallible entry point.
pub fn audit_laws(t: &QuantaleTables) -> LawReport {
    check_shape(t).expect("audit_laws needs well-shaped tables");
    let n = t.names.len();
    let leq = &t.leq;
    let ten = &t.tensor;
    let mut checks = Vec::new();
    let mut push = |law, outcome| checks.push(LawCheck { law, outcome });

    push(
        Law::Reflexivity,
        first((0..n).filter(|&a| !leq[a][a]).map(|a| vec![a])),
    );
    push(
        Law::Antisymmetry,
        first(
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && leq[a][b] && leq[b][a])
                .map(|(a, b)| vec![a, b]),
        ),
    );
    push(
        Law::Transitivity,
        first(
            triples(n)
                .filter(|&[a, b, c]| leq[a][b] && leq[b][c] && !leq[a][c])
                .map(Vec::from),
        ),
    );
    let joins = derive_joins(t);
    push(
        Law::BinaryJoins,
        match &joins {
            Ok(_) => Outcome::Pass,
            Err((a, b)) => Outcome::Fail {
                witness: vec![*a, *b],
            },
        },
    );
    let all: Vec<usize> = (0..n).collect();
    let bottom = least(leq, &all);
    push(
        Law::Bottom,
        if bottom.is_some() {
            Outcome::Pass
        } else {
            Outcome::Fail { witness: vec![] }
        },
    );
    push(
        Law::Associativity,
        first(
            triples(n)
                .filter(|&[a, b, c]| ten[ten[a][b]][c] != ten[a][ten[b][c]])
                .map(Vec::from),
        ),
    );
    push(
        Law::Commutativity,
        first(
            (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| ten[a][b] != ten[b][a])
                .map(|(a, b)| vec![a, b]),
        ),
    );
    let u = t.unit;
    push(
        Law::Unit,
        first(
            (0..n)
                .filter(|&a| ten[u][a] != a || ten[a][u] != a)
                .map(|a| vec![a]),
        ),
    );
    match (&joins, bottom) {
        (Ok(join), Some(bot)) => {
            push(
                Law::Distributivity,
                first(
                    triples(n)
                        .filter(|&[a, b, c]| {
                            ten[a][join[b][c]] != join[ten[a][b]][ten[a][c]]
                                || ten[join[b][c]][a] != join[ten[b][a]][ten[c][a]]
                        })
                        .map(Vec::from),
                ),
            );
            push(
                Law::BottomAbsorbing,
                first(
                    (0..n)
                        .filter(|&a| ten[a][bot] != bot || ten[bot][a] != bot)
                        .map(|a| vec![a]),
                ),
            );
            // {c : c⊗a ⊑ b} must have a greatest element.
            let residuals = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| {
                    let set: Vec<usize> = (0..n).filter(|&c| leq[ten[c][a]][b]).collect();
                    !set.iter().any(|&g| set.iter().all(|&c| leq[c][g]))
                });
            push(Law::Residuation, first(residuals.map(|(a, b)| vec![a, b])));
        }
        _ => {
            push(Law::Distributivity, Outcome::Skipped);
            push(Law::BottomAbsorbing, Outcome::Skipped);
            push(Law::Residuation, Outcome::Skipped);
        }
    }
    LawReport { checks }
}

fn triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| [a, b, c])))
}

/// A finite commutative unital quantale whose laws have been audited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quantale {
    names: Vec<String>,
    n: usize,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    tensor: Vec<usize>,
    hom: Vec<usize>,
    unit: usize,
    bottom: usize,
    top: usize,
}

/// Named builtin bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `({0,1}, ∧, 1, ∨)`.
    Boolean,
    /// `({0..N, ∞}, truncated +, 0)`, ordered by reversed numeric order.
    Tropical(u32),
}

impl Builtin {
    /// Parses `boolean`, `tropical(N)` or `tropical:N`.
    pub fn parse(s: &str) -> Option<Builtin> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("boolean") || s.eq_ignore_ascii_case("bool") {
            return Some(Builtin::Boolean);
        }
        let rest = s.strip_prefix("tropical")?;
        let digits = rest
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| rest.strip_prefix(':'))?;
        let n: u32 = digits.trim().parse().ok()?;
        (n >= 1).then_some(Builtin::Tropical(n))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::Boolean => write!(f, "boolean"),
            Builtin::Tropical(n) => write!(f, "tropical({n})"),
        }
    }
}

/// Builds a builtin quantale.
///
/// # Panics
/// Panics on `Tropical(0)`.
pub fn builtin(which: Builtin) -> Quantale {
    let tables = match which {
        Builtin::Boolean => QuantaleTables {
            names: vec!["0".into(), "1".into()],
            leq: vec![vec![true, true], vec![false, true]],
            tensor: vec![vec![0, 0], vec![0, 1]],
            unit: 1,
        },
        Builtin::Tropical(cap) => {
            assert!(cap >= 1, "tropical(N) needs N >= 1");
            let cap = cap as usize;
            let inf = cap + 1;
            let mut names: Vec<String> = (0..=cap).map(|i| i.to_string()).collect();
            names.push("inf".into());
            let num = |i: usize| if i == inf { u64::MAX } else { i as u64 };
            let leq = (0..=inf)
                .map(|a| (0..=inf).map(|b| num(a) >= num(b)).collect())
                .collect();
            let tensor = (0..=inf)
                .map(|a| {
                    (0..=inf)
                        .map(|b| {
                            if a == inf || b == inf {
                                inf
                            } else {
                                (a + b).min(cap)
                            }
                        })
                        .collect()
                })
                .collect();
            QuantaleTables {
                names,
                leq,
                tensor,
                unit: 0,
            }
        }
    };
    Quantale::new(tables).expect("builtin quantales satisfy the laws")
}

impl Quantale {
    /// Audits `tables` and, if every law holds, precomputes join, meet and
    /// residuation tables.
    pub fn new(tables: QuantaleTables) -> Result<Quantale> {
        check_shape(&tables)?;
        let report = audit_laws(&tables);
        if !report.all_pass() {
            let failed: Vec<String> = report
                .failures()
                .map(|c| format!("{:?} {:?}", c.law, c.outcome))
                .collect();
            return Err(Error::MalformedQuantale(failed.join("; ")));
        }
        let n = tables.names.len();
        let join2 = derive_joins(&tables).expect("audited");
        let all: Vec<usize> = (0..n).collect();
        let bottom = least(&tables.leq, &all).expect("audited");
        let top = all
            .iter()
            .copied()
            .find(|&t| all.iter().all(|&a| tables.leq[a][t]))
            .expect("finite lattice has a top");
        let mut q = Quantale {
            names: tables.names.clone(),
            n,
            leq: tables.leq.iter().flatten().copied().collect(),
            join: join2.iter().flatten().copied().collect(),
            meet: vec![0; n * n],
            tensor: tables.tensor.iter().flatten().copied().collect(),
            hom: vec![0; n * n],
            unit: tables.unit,
            bottom,
            top,
        };
        for a in 0..n {
            for b in 0..n {
                let lower = (0..n).filter(|&c| q.leq[c * n + a] && q.leq[c * n + b]);
                q.meet[a * n + b] = lower.fold(bottom, |acc, c| q.join[acc * n + c]);
                let below = (0..n).filter(|&c| q.leq[q.tensor[c * n + a] * n + b]);
                q.hom[a * n + b] = below.fold(bottom, |acc, c| q.join[acc * n + c]);
            }
        }
        Ok(q)
    }

    pub fn from_spec(spec: QuantaleSpec) -> Result<Quantale> {
        Quantale::new(spec.into_tables()?)
    }

    pub fn tables(&self) -> QuantaleTables {
        let n = self.n;
        QuantaleTables {
            names: self.names.clone(),
            leq: (0..n)
                .map(|a| self.leq[a * n..(a + 1) * n].to_vec())
                .collect(),
            tensor: (0..n)
                .map(|a| self.tensor[a * n..(a + 1) * n].to_vec())
                .collect(),
            unit: self.unit,
        }
    }

    pub fn to_spec(&self) -> QuantaleSpec {
        let t = self.tables();
        QuantaleSpec {
            elements: t.names.clone(),
            leq: t.leq,
            tensor: t
                .tensor
                .iter()
                .map(|row| row.iter().map(|&e| t.names[e].clone()).collect())
                .collect(),
            unit: t.names[t.unit].clone(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> impl Iterator<Item = QElement> + '_ {
        (0..self.n).map(QElement)
    }

    pub fn name(&self, e: QElement) -> &str {
        &self.names[e.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Option<QElement> {
        self.names.iter().position(|n| n == name).map(QElement)
    }

    pub fn unit(&self) -> QElement {
        QElement(self.unit)
    }

    pub fn bottom(&self) -> QElement {
        QElement(self.bottom)
    }

    pub fn top(&self) -> QElement {
        QElement(self.top)
    }

    pub fn leq(&self, a: QElement, b: QElement) -> bool {
        self.leq[a.0 * self.n + b.0]
    }

    pub fn join(&self, a: QElement, b: QElement) -> QElement {
        QElement(self.join[a.0 * self.n + b.0])
    }

    pub fn meet(&self, a: QElement, b: QElement) -> QElement {
        QElement(self.meet[a.0 * self.n + b.0])
    }

    pub fn tensor(&self, a: QElement, b: QElement) -> QElement {
        QElement(self.tensor[a.0 * self.n + b.0])
    }

    /// Residuation `[a, b] = ⋁{c : c⊗a ⊑ b}`.
    pub fn hom(&self, a: QElement, b: QElement) -> QElement {
        QElement(self.hom[a.0 * self.n + b.0])
    }

    /// n-ary join; the empty join is bottom.
    pub fn join_all<I: IntoIterator<Item = QElement>>(&self, it: I) -> QElement {
        it.into_iter()
            .fold(self.bottom(), |acc, e| self.join(acc, e))
    }

    /// n-ary meet; the empty meet is top.
    pub fn meet_all<I: IntoIterator<Item = QElement>>(&self, it: I) -> QElement {
        it.into_iter().fold(self.top(), |acc, e| self.meet(acc, e))
    }

    /// `I ⊑ a` and `a⊗a ⊑ a`: a monoid in the one-object base.
    pub fn is_monoid(&self, a: QElement) -> bool {
        self.leq(self.unit(), a) && self.leq(self.tensor(a, a), a)
    }

    /// `c ⊑ I` and `c ⊑ c⊗c`: a comonoid in the one-object base.
    pub fn is_comonoid(&self, c: QElement) -> bool {
        self.leq(c, self.unit()) && self.leq(c, self.tensor(c, c))
    }

    pub fn monoids(&self) -> Vec<QElement> {
        self.elements().filter(|&a| self.is_monoid(a)).collect()
    }

    pub fn comonoids(&self) -> Vec<QElement> {
        self.elements().filter(|&c| self.is_comonoid(c)).collect()
    }

    /// Largest comonoid below `c`: iterates `c ← c ∧ c⊗c` from `c ∧ I`.
    pub fn comonoid_interior(&self, c: QElement) -> QElement {
        let mut cur = self.meet(c, self.unit());
        loop {
            let next = self.meet(cur, self.tensor(cur, cur));
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tropical_value(q: &Quantale, e: QElement) -> Option<u64> {
        q.name(e).parse().ok()
    }

    #[test]
    fn boolean_residuation() {
        let q = builtin(Builtin::Boolean);
        let (zero, one) = (QElement(0), QElement(1));
        assert_eq!(q.hom(one, zero), zero);
        assert_eq!(q.hom(zero, zero), one);
        assert_eq!(q.hom(zero, one), one);
        assert_eq!(q.unit(), one);
        assert_eq!(q.size(), 2);
    }

    #[test]
    fn tropical_monus() {
        let q = builtin(Builtin::Tropical(10));
        let e = |s: &str| q.element(s).unwrap();
        assert_eq!(q.hom(e("3"), e("7")), e("4"));
        // exhaustive scan of {c : c+3 ≥ 7}, largest in the reversed order
        let best = q
            .elements()
            .filter(|&c| q.leq(q.tensor(c, e("3")), e("7")))
            .filter_map(|c| tropical_value(&q, c))
            .min();
        assert_eq!(best, Some(4));
    }

    #[test]
    fn tropical_builtin_shape_and_saturation() {
        let q = builtin(Builtin::Tropical(3));
        assert_eq!(q.names(), ["0", "1", "2", "3", "inf"]);
        assert_eq!(q.name(q.unit()), "0");
        assert_eq!(q.name(q.bottom()), "inf");
        assert_eq!(q.name(q.top()), "0");
        let e = |s: &str| q.element(s).unwrap();
        assert_eq!(q.tensor(e("2"), e("2")), e("3"));
        for a in 0..=3u64 {
            for b in 0..=3u64 {
                let got = q.tensor(e(&a.to_string()), e(&b.to_string()));
                assert_eq!(tropical_value(&q, got), Some((a + b).min(3)));
            }
        }
    }

    #[test]
    fn unit_is_left_identity_for_hom() {
        for q in [builtin(Builtin::Boolean), builtin(Builtin::Tropical(6))] {
            for b in q.elements() {
                assert_eq!(q.hom(q.unit(), b), b);
            }
        }
    }

    #[test]
    fn galois_property_and_variance() {
        for q in [builtin(Builtin::Boolean), builtin(Builtin::Tropical(5))] {
            for a in q.elements() {
                for b in q.elements() {
                    for c in q.elements() {
                        assert_eq!(q.leq(q.tensor(c, a), b), q.leq(c, q.hom(a, b)));
                    }
                }
            }
            for a in q.elements() {
                for a2 in q.elements().filter(|&a2| q.leq(a, a2)) {
                    for b in q.elements() {
                        assert!(q.leq(q.hom(a2, b), q.hom(a, b)));
                        assert!(q.leq(q.hom(b, a), q.hom(b, a2)));
                    }
                }
            }
            for a in q.elements() {
                assert_eq!(q.tensor(a, q.bottom()), q.bottom());
                assert!(q.leq(q.bottom(), a));
            }
            assert_eq!(q.join_all([]), q.bottom());
        }
    }

    #[test]
    fn audits_pass_for_builtins() {
        assert!(audit_laws(&builtin(Builtin::Boolean).tables()).all_pass());
        assert!(audit_laws(&builtin(Builtin::Tropical(10)).tables()).all_pass());
    }

    #[test]
    fn noncommutative_table_reports_witness() {
        // three-element chain 0 < m < 1 with a lopsided tensor
        let mut t = QuantaleTables {
            names: vec!["0".into(), "m".into(), "1".into()],
            leq: vec![
                vec![true, true, true],
                vec![false, true, true],
                vec![false, false, true],
            ],
            tensor: vec![vec![0, 0, 0], vec![0, 1, 1], vec![0, 1, 2]],
            unit: 2,
        };
        assert!(audit_laws(&t).all_pass());
        t.tensor[1][0] = 1;
        let report = audit_laws(&t);
        assert_eq!(
            report.outcome(Law::Commutativity),
            &Outcome::Fail {
                witness: vec![0, 1]
            }
        );
        assert!(matches!(Quantale::new(t), Err(Error::MalformedQuantale(_))));
    }

    #[test]
    fn missing_join_skips_dependent_laws() {
        // two incomparable elements, no top
        let t = QuantaleTables {
            names: vec!["a".into(), "b".into()],
            leq: vec![vec![true, false], vec![false, true]],
            tensor: vec![vec![0, 1], vec![1, 1]],
            unit: 0,
        };
        let report = audit_laws(&t);
        assert_eq!(
            report.outcome(Law::BinaryJoins),
            &Outcome::Fail {
                witness: vec![0, 1]
            }
        );
        assert_eq!(report.outcome(Law::Residuation), &Outcome::Skipped);
    }

    #[test]
    fn builtin_names_parse() {
        assert_eq!(Builtin::parse("boolean"), Some(Builtin::Boolean));
        assert_eq!(Builtin::parse("tropical(31)"), Some(Builtin::Tropical(31)));
        assert_eq!(Builtin::parse("tropical:4"), Some(Builtin::Tropical(4)));
        assert_eq!(Builtin::parse("tropical(0)"), None);
        assert_eq!(Builtin::parse("reals"), None);
    }

    #[test]
    fn spec_round_trip() {
        let q = builtin(Builtin::Tropical(4));
        let json = serde_json::to_string(&q.to_spec()).unwrap();
        let back: QuantaleSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(Quantale::from_spec(back).unwrap(), q);
    }

    #[test]
    fn comonoid_interior_of_tropical() {
        let q = builtin(Builtin::Tropical(5));
        let e = |s: &str| q.element(s).unwrap();
        assert_eq!(q.comonoid_interior(e("0")), e("0"));
        // 5 ⊗ 5 = 5 under saturation, so the cap is idempotent
        assert_eq!(q.comonoid_interior(e("1")), e("5"));
        assert_eq!(q.comonoid_interior(e("inf")), e("inf"));
    }
}
