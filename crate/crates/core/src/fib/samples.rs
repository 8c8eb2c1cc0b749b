//! Small categories and indexed categories used as test inputs: a zoo of
//! tiny categories, strict indexed categories `X ↦ S^{F X}`, and pseudo
//! ones obtained by replacing each fibre object with isomorphic copies.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::category::{FinCategory, FinFunctor, Morphism};
use super::indexed::{grothendieck, IndexedCategory};
use crate::error::Result;

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// `Z/2` as a one-object category.
pub fn cyclic2() -> FinCategory {
    FinCategory::monoid(names(&["1", "s"]), vec![vec![0, 1], vec![1, 0]], 0).expect("Z/2")
}

/// `{1, e}` with `e∘e = e`.
pub fn idempotent() -> FinCategory {
    FinCategory::monoid(names(&["1", "e"]), vec![vec![0, 1], vec![1, 1]], 0)
        .expect("idempotent monoid")
}

/// Two parallel arrows `a ⇉ b`.
pub fn parallel_pair() -> FinCategory {
    let morphisms = vec![
        Morphism {
            name: "1_a".into(),
            src: 0,
            dst: 0,
        },
        Morphism {
            name: "1_b".into(),
            src: 1,
            dst: 1,
        },
        Morphism {
            name: "u".into(),
            src: 0,
            dst: 1,
        },
        Morphism {
            name: "v".into(),
            src: 0,
            dst: 1,
        },
    ];
    FinCategory::build(names(&["a", "b"]), morphisms, vec![0, 1], |g, f| {
        if g < 2 {
            f
        } else {
            g
        }
    })
    .expect("parallel pair")
}

/// Bases with at most four morphisms.
pub fn base_zoo() -> Vec<FinCategory> {
    vec![
        FinCategory::terminal(),
        FinCategory::arrow(),
        FinCategory::discrete(names(&["p", "q"])),
        cyclic2(),
        idempotent(),
        parallel_pair(),
        FinCategory::discrete(names(&["p", "q", "r"])),
        FinCategory::from_preorder(names(&["0", "1", "p"]), |x, y| x == y || (x == 0 && y == 1))
            .expect("𝟚 + 1"),
    ]
}

/// Fibre building blocks with at most two objects.
pub fn fibre_zoo() -> Vec<FinCategory> {
    vec![
        FinCategory::terminal(),
        FinCategory::arrow(),
        FinCategory::discrete(names(&["p", "q"])),
        cyclic2(),
        idempotent(),
    ]
}

/// A functor into finite sets: `sizes[X] = |F X|`, `maps[f][i] = (F f)(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunctor {
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

/// Every functor `base → FinSet` with `1 ≤ |F X| ≤ max`.
pub fn set_functors(base: &FinCategory, max: usize) -> Vec<SetFunctor> {
    let no = base.object_count();
    let mut out = Vec::new();
    let mut sizes = vec![1usize; no];
    loop {
        let choices: Vec<usize> = (0..base.morphism_count())
            .map(|f| sizes[base.dst(f)].pow(sizes[base.src(f)] as u32))
            .collect();
        let total: usize = choices.iter().product();
        for mut k in 0..total {
            let maps: Vec<Vec<usize>> = (0..base.morphism_count())
                .map(|f| {
                    let (n, m) = (sizes[base.src(f)], sizes[base.dst(f)]);
                    let mut c = k % choices[f];
                    k /= choices[f];
                    (0..n)
                        .map(|_| {
                            let v = c % m;
                            c /= m;
                            v
                        })
                        .collect()
                })
                .collect();
            let functorial = (0..no)
                .all(|x| maps[base.id(x)].iter().enumerate().all(|(i, &j)| i == j))
                && (0..base.morphism_count()).all(|g| {
                    (0..base.morphism_count()).all(|f| match base.try_comp(g, f) {
                        Some(gf) => {
                            (0..sizes[base.src(f)]).all(|i| maps[gf][i] == maps[g][maps[f][i]])
                        }
                        None => true,
                    })
                });
            if functorial {
                out.push(SetFunctor {
                    sizes: sizes.clone(),
                    maps,
                });
            }
        }
        let mut i = 0;
        loop {
            if i == no {
                return out;
            }
            sizes[i] += 1;
            if sizes[i] <= max {
                break;
            }
            sizes[i] = 1;
            i += 1;
        }
    }
}

fn digits(mut k: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for i in (0..len).rev() {
        d[i] = k % radix;
        k /= radix;
    }
    d
}

fn undigits(d: &[usize], radix: usize) -> usize {
    d.iter().fold(0, |acc, &x| acc * radix + x)
}

/// The strict indexed category `X ↦ S^{F X}` with `M f = − ∘ F f`.
pub fn power_indexed(
    base: &Arc<FinCategory>,
    s: &FinCategory,
    f: &SetFunctor,
) -> Result<IndexedCategory> {
    let fibres: Vec<Arc<FinCategory>> = f.sizes.iter().map(|&n| Arc::new(s.power(n))).collect();
    let (so, sm) = (s.object_count(), s.morphism_count());
    let reindex = (0..base.morphism_count())
        .map(|m| {
            let (x, y) = (base.src(m), base.dst(m));
            let (nx, ny) = (f.sizes[x], f.sizes[y]);
            let pull = |k: usize, radix: usize| {
                let d = digits(k, radix, ny);
                let e: Vec<usize> = (0..nx).map(|i| d[f.maps[m][i]]).collect();
                undigits(&e, radix)
            };
            let ob = (0..fibres[y].object_count()).map(|k| pull(k, so)).collect();
            let mor = (0..fibres[y].morphism_count())
                .map(|k| pull(k, sm))
                .collect();
            FinFunctor::new(fibres[y].clone(), fibres[x].clone(), ob, mor)
        })
        .collect::<Result<Vec<_>>>()?;
    IndexedCategory::strict(base.clone(), fibres, reindex)
}

/// Replaces each object `A` of each fibre by `copies` isomorphic objects
/// `(A, i)` and lets reindexing land on the copy `choice(f, B, j)`. The
/// coherence isomorphisms become the copy-changing identities, so the
/// result is genuinely pseudo whenever the choices disagree.
pub fn fatten(
    m: &IndexedCategory,
    copies: usize,
    mut choice: impl FnMut(usize, usize, usize) -> usize,
) -> Result<IndexedCategory> {
    let base = m.base().clone();
    let k = copies;
    let fat: Vec<Arc<FinCategory>> = m
        .fibres()
        .iter()
        .map(|fib| {
            let objects = (0..fib.object_count() * k)
                .map(|o| format!("{}#{}", fib.objects()[o / k], o % k))
                .collect();
            let morphisms = (0..fib.morphism_count() * k * k)
                .map(|i| {
                    let (phi, a, b) = (i / (k * k), i / k % k, i % k);
                    Morphism {
                        name: format!("{}#{a}{b}", fib.morphism(phi).name),
                        src: fib.src(phi) * k + a,
                        dst: fib.dst(phi) * k + b,
                    }
                })
                .collect();
            let identity = (0..fib.object_count() * k)
                .map(|o| (fib.id(o / k) * k + o % k) * k + o % k)
                .collect();
            FinCategory::build(objects, morphisms, identity, |g, f| {
                let (pg, c) = (g / (k * k), g % k);
                let (pf, a) = (f / (k * k), f / k % k);
                (fib.comp(pg, pf) * k + a) * k + c
            })
            .map(Arc::new)
        })
        .collect::<Result<Vec<_>>>()?;
    let lift = |phi: usize, a: usize, b: usize| (phi * k + a) * k + b;
    // copy index chosen for Mf(B, j)
    let mut pick = BTreeMap::new();
    for f in 0..base.morphism_count() {
        let y = base.dst(f);
        for bb in 0..m.fibre(y).object_count() {
            for j in 0..k {
                pick.insert((f, bb, j), choice(f, bb, j) % k);
            }
        }
    }
    let reindex = (0..base.morphism_count())
        .map(|f| {
            let (x, y) = (base.src(f), base.dst(f));
            let r = m.reindex(f);
            let fy = m.fibre(y);
            let ob = (0..fy.object_count() * k)
                .map(|o| r.ob(o / k) * k + pick[&(f, o / k, o % k)])
                .collect();
            let mor = (0..fy.morphism_count() * k * k)
                .map(|i| {
                    let (phi, a, b) = (i / (k * k), i / k % k, i % k);
                    lift(
                        r.mor(phi),
                        pick[&(f, fy.src(phi), a)],
                        pick[&(f, fy.dst(phi), b)],
                    )
                })
                .collect();
            FinFunctor::new(fat[y].clone(), fat[x].clone(), ob, mor)
        })
        .collect::<Result<Vec<_>>>()?;
    let copy_of = |f: usize, o: usize| reindex[f].ob(o) % k;
    let mut delta = BTreeMap::new();
    for f in 0..base.morphism_count() {
        for g in 0..base.morphism_count() {
            let Some(gf) = base.try_comp(g, f) else {
                continue;
            };
            let z = base.dst(g);
            let comps = (0..m.fibre(z).object_count() * k)
                .map(|o| {
                    let c = o / k;
                    let via = reindex[g].ob(o);
                    let from = copy_of(f, via);
                    let to = copy_of(gf, o);
                    lift(m.delta(f, g, c), from, to)
                })
                .collect();
            delta.insert((f, g), comps);
        }
    }
    let gamma = (0..base.object_count())
        .map(|x| {
            (0..m.fibre(x).object_count() * k)
                .map(|o| lift(m.gamma(x, o / k), o % k, copy_of(base.id(x), o)))
                .collect()
        })
        .collect();
    IndexedCategory::new(base, fat, reindex, delta, gamma)
}

/// A random strict indexed category with base from [`base_zoo`] and fibres
/// `S^{F X}` with at most four objects, whose total category fits `cap`.
pub fn random_strict<R: Rng>(rng: &mut R, cap: usize) -> IndexedCategory {
    loop {
        let base = Arc::new(base_zoo().choose(rng).expect("zoo").clone());
        let s = fibre_zoo().choose(rng).expect("zoo").clone();
        let fs = set_functors(&base, 2);
        let Some(f) = fs.choose(rng) else { continue };
        let Ok(m) = power_indexed(&base, &s, f) else {
            continue;
        };
        if m.fibres().iter().all(|c| c.object_count() <= 4) && grothendieck(&m, cap).is_ok() {
            return m;
        }
    }
}

/// A random pseudo indexed category: a strict sample with fibres of at
/// most two objects, fattened with two copies and random choices.
pub fn random_pseudo<R: Rng>(rng: &mut R, cap: usize) -> IndexedCategory {
    loop {
        let base = Arc::new(base_zoo().choose(rng).expect("zoo").clone());
        let s = fibre_zoo().choose(rng).expect("zoo").clone();
        let fs: Vec<SetFunctor> = set_functors(&base, 1);
        let Some(f) = fs.choose(rng) else { continue };
        let Ok(m) = power_indexed(&base, &s, f) else {
            continue;
        };
        let draws: Vec<usize> = (0..256).map(|_| rng.gen_range(0..2)).collect();
        let mut i = 0;
        let Ok(p) = fatten(&m, 2, |_, _, _| {
            i += 1;
            draws[i % draws.len()]
        }) else {
            continue;
        };
        if !p.is_strict()
            && p.fibres().iter().all(|c| c.object_count() <= 4)
            && grothendieck(&p, cap).is_ok()
        {
            return p;
        }
    }
}

/// Base `𝟚`, the fibre over `0` a single object, the fibre over `1` two
/// discrete objects; reindexing is forced.
pub fn arrow_example() -> IndexedCategory {
    let base = Arc::new(FinCategory::arrow());
    let f0 = Arc::new(FinCategory::discrete(names(&["a"])));
    let f1 = Arc::new(FinCategory::discrete(names(&["b", "c"])));
    let fibres = vec![f0.clone(), f1.clone()];
    let reindex = (0..base.morphism_count())
        .map(|m| {
            let (x, y) = (base.src(m), base.dst(m));
            if x == y {
                FinFunctor::identity(&fibres[x])
            } else {
                FinFunctor::constant(&fibres[y], &fibres[x], 0)
            }
        })
        .collect();
    IndexedCategory::strict(base, fibres, reindex).expect("𝟚 example")
}

/// The span poset `d → a`, `d → b` (five morphisms).
pub fn span() -> FinCategory {
    FinCategory::from_preorder(names(&["d", "a", "b"]), |x, y| x == y || x == 0).expect("span")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_functor_counts() {
        // functors 𝟚 → FinSet with sizes ≤ 2: sum over (m, n) of n^m
        let fs = set_functors(&FinCategory::arrow(), 2);
        assert_eq!(fs.len(), 1 + 2 + 1 + 4);
        // Z/2 actions on sets of size ≤ 2: trivial on 1, and two on 2
        assert_eq!(set_functors(&cyclic2(), 2).len(), 3);
    }

    #[test]
    fn fattened_is_pseudo() {
        let m = arrow_example();
        let p = fatten(&m, 2, |f, b, j| f + b + j + 1).unwrap();
        assert!(!p.is_strict());
        assert_eq!(p.fibre(1).object_count(), 4);
    }
}
