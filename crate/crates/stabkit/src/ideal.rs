//! Independent ground truth: monomial ideal arithmetic, irreducible
//! decomposition by recursive generator splitting, and associated primes
//! read off the irredundant components. Everything here works directly on
//! `I_G^k`; nothing consults the formula side.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::{Error, Limits, Result};

/// A monomial as a dense exponent vector over the canonical vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a <= b)
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    /// `self / gcd(self, other)` — the colon quotient part.
    pub fn colon_part(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        )
    }

    pub fn support(&self) -> VertexSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Human-readable form like `x^2*y`; `1` for the unit.
    pub fn display(&self, g: &Graph) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(g.label(i).to_string()),
                _ => parts.push(format!("{}^{e}", g.label(i))),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A monomial ideal by its minimal generating set (sorted; no generator
/// divides another).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

fn minimize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_unstable();
    gens.dedup();
    let keep: Vec<bool> = gens
        .iter()
        .enumerate()
        .map(|(i, m)| {
            !gens
                .iter()
                .enumerate()
                .any(|(j, other)| j != i && other.divides(m) && (other != m || j < i))
        })
        .collect();
    gens.into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(m, _)| m)
        .collect()
}

impl MonomialIdeal {
    pub fn new(gens: Vec<Monomial>) -> MonomialIdeal {
        MonomialIdeal {
            gens: minimize(gens),
        }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|m| m.degree() == 0)
    }

    /// Membership: some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// The edge ideal: `x_u x_v` over all edges.
    pub fn edge_ideal(g: &Graph) -> MonomialIdeal {
        let gens = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let mut e = vec![0u32; g.len()];
                e[u] += 1;
                e[v] += 1;
                Monomial(e)
            })
            .collect();
        MonomialIdeal::new(gens)
    }

    /// Minimal generators of the `k`-fold product.
    pub fn power(&self, k: usize) -> Result<MonomialIdeal> {
        if k < 1 {
            return Err(Error::Input("ideal power requires k >= 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            let mut prods = Vec::with_capacity(acc.gens.len() * self.gens.len());
            for a in &acc.gens {
                for b in &self.gens {
                    prods.push(a.times(b));
                }
            }
            acc = MonomialIdeal::new(prods);
        }
        Ok(acc)
    }

    /// `(J : m)` for a monomial `m`.
    pub fn colon(&self, m: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.gens.iter().map(|g| g.colon_part(m)).collect())
    }

    /// Irredundant irreducible decomposition by recursive generator
    /// splitting: pick the first impure generator, split off its highest
    /// variable power, recurse on both sides, then drop components that
    /// contain another component. Each component is returned as its
    /// exponent vector (`0` marks an absent variable).
    ///
    /// The recursion is memoized on the minimized generator set, which
    /// collapses the shared subproblems; callers parallelize across ideals,
    /// not inside one decomposition.
    pub fn irreducible_decomposition(&self, limits: &Limits) -> Result<Vec<Monomial>> {
        let nvars = self.gens.first().map_or(0, |m| m.0.len());
        if nvars > 10 {
            return Err(Error::Resource(
                "irreducible decomposition is limited to 10 variables".into(),
            ));
        }
        if self.gens.is_empty() {
            return Err(Error::Input("cannot decompose the zero ideal".into()));
        }
        if self.is_unit() {
            return Err(Error::Input("cannot decompose the unit ideal".into()));
        }
        let mut memo: HashMap<Vec<Monomial>, Vec<Monomial>> = HashMap::new();
        let mut nodes = 0u64;
        let raw = split_rec(&self.gens, &mut memo, &mut nodes, limits.max_search_nodes)?;
        Ok(filter_redundant(raw))
    }

    /// Supports of the irredundant irreducible components.
    pub fn associated_primes(&self, limits: &Limits) -> Result<Vec<VertexSet>> {
        let comps = self.irreducible_decomposition(limits)?;
        let mut out: Vec<VertexSet> = comps.iter().map(|c| c.support()).collect();
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Intersection with another monomial ideal (pairwise lcm, minimized).
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(Monomial(
                    a.0.iter().zip(&b.0).map(|(&x, &y)| x.max(y)).collect(),
                ));
            }
        }
        MonomialIdeal::new(gens)
    }

    /// The irreducible ideal `m^a` as a generator set.
    pub fn from_component(a: &Monomial) -> MonomialIdeal {
        let n = a.0.len();
        let gens = a
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                let mut v = vec![0u32; n];
                v[i] = e;
                Monomial(v)
            })
            .collect();
        MonomialIdeal::new(gens)
    }
}

fn all_pure(gens: &[Monomial]) -> bool {
    gens.iter().all(|m| m.support().len() <= 1)
}

fn split_rec(
    gens: &[Monomial],
    memo: &mut HashMap<Vec<Monomial>, Vec<Monomial>>,
    nodes: &mut u64,
    budget: u64,
) -> Result<Vec<Monomial>> {
    if let Some(hit) = memo.get(gens) {
        return Ok(hit.clone());
    }
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::Resource(
            "irreducible decomposition exceeded its node budget".into(),
        ));
    }
    let result = if all_pure(gens) {
        // Pure-power generators on distinct variables: one component.
        let n = gens[0].0.len();
        let mut comp = vec![0u32; n];
        for m in gens {
            if let Some(i) = m.support().iter().next() {
                comp[i] = m.0[i];
            }
        }
        vec![Monomial(comp)]
    } else {
        let split_on = gens.iter().find(|m| m.support().len() > 1).unwrap();
        let var = {
            let max = *split_on.0.iter().max().unwrap();
            split_on.0.iter().position(|&e| e == max).unwrap()
        };
        let mut pure = Monomial::one(split_on.0.len());
        pure.0[var] = split_on.0[var];
        let rest = split_on.colon_part(&pure);
        let mut left: Vec<Monomial> = gens.to_vec();
        left.retain(|m| m != split_on);
        let mut right = left.clone();
        left.push(pure);
        right.push(rest);
        let mut out = split_rec(&minimize(left), memo, nodes, budget)?;
        out.extend(split_rec(&minimize(right), memo, nodes, budget)?);
        out.sort_unstable();
        out.dedup();
        out
    };
    memo.insert(gens.to_vec(), result.clone());
    Ok(result)
}

/// `m^a ⊆ m^b` iff for every `i` in the support of `a`: `0 < b_i <= a_i`.
fn component_contains(sub: &Monomial, sup: &Monomial) -> bool {
    sub.0
        .iter()
        .zip(&sup.0)
        .all(|(&a, &b)| a == 0 || (b > 0 && b <= a))
}

/// Drop every component that contains another one (its intersection
/// partner already cuts it out).
fn filter_redundant(comps: Vec<Monomial>) -> Vec<Monomial> {
    let keep: Vec<bool> = comps
        .iter()
        .enumerate()
        .map(|(i, sup)| {
            !comps
                .iter()
                .enumerate()
                .any(|(j, sub)| i != j && component_contains(sub, sup))
        })
        .collect();
    let mut out: Vec<Monomial> = comps
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(m, _)| m)
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::triangle_square_graph;

    fn limits() -> Limits {
        Limits::default()
    }

    fn triangle() -> Graph {
        Graph::from_edge_labels([("x", "y"), ("y", "z"), ("x", "z")]).unwrap()
    }

    #[test]
    fn edge_ideal_generators() {
        let t = triangle();
        let i = MonomialIdeal::edge_ideal(&t);
        assert_eq!(i.generators().len(), 3);
        let single = Graph::parse("x y\n").unwrap();
        assert_eq!(MonomialIdeal::edge_ideal(&single).generators().len(), 1);
        assert_eq!(MonomialIdeal::edge_ideal(&triangle_square_graph()).generators().len(), 9);
    }

    #[test]
    fn power_triangle_squared() {
        let i = MonomialIdeal::edge_ideal(&triangle());
        assert_eq!(i.power(1).unwrap(), i);
        let sq = i.power(2).unwrap();
        // Expanding all products of two generators and minimizing leaves
        // exactly these six, frozen from the direct expansion.
        let expect: Vec<Monomial> = vec![
            Monomial(vec![0, 2, 2]),
            Monomial(vec![1, 1, 2]),
            Monomial(vec![1, 2, 1]),
            Monomial(vec![2, 0, 2]),
            Monomial(vec![2, 1, 1]),
            Monomial(vec![2, 2, 0]),
        ];
        assert_eq!(sq.generators(), expect.as_slice());
        let single = MonomialIdeal::edge_ideal(&Graph::parse("x y\n").unwrap());
        let cubed = single.power(3).unwrap();
        assert_eq!(cubed.generators(), &[Monomial(vec![3, 3])]);
        assert!(single.power(0).is_err());
    }

    #[test]
    fn colon_cases() {
        // (xy, yz) : y = (x, z)
        let i = MonomialIdeal::new(vec![Monomial(vec![1, 1, 0]), Monomial(vec![0, 1, 1])]);
        let c = i.colon(&Monomial(vec![0, 1, 0]));
        assert_eq!(
            c.generators(),
            &[Monomial(vec![0, 0, 1]), Monomial(vec![1, 0, 0])]
        );
        // j : 1 = j
        assert_eq!(i.colon(&Monomial::one(3)), i);
        // triangle^2 : xyz = (x, y, z) — witnesses the maximal ideal.
        let sq = MonomialIdeal::edge_ideal(&triangle()).power(2).unwrap();
        let c = sq.colon(&Monomial(vec![1, 1, 1]));
        assert_eq!(c.generators().len(), 3);
        assert!(c.generators().iter().all(|m| m.degree() == 1));
    }

    #[test]
    fn colon_membership_identity() {
        let sq = MonomialIdeal::edge_ideal(&triangle()).power(2).unwrap();
        let inside = Monomial(vec![2, 2, 0]);
        let outside = Monomial(vec![1, 1, 0]);
        assert!(sq.contains(&inside));
        assert!(sq.colon(&inside).is_unit());
        assert!(!sq.contains(&outside));
        assert!(!sq.colon(&outside).is_unit());
    }

    #[test]
    fn decomposition_trivial_split() {
        // (x^2 y) = (x^2) ∩ (y)
        let i = MonomialIdeal::new(vec![Monomial(vec![2, 1])]);
        let comps = i.irreducible_decomposition(&limits()).unwrap();
        assert_eq!(comps, vec![Monomial(vec![0, 1]), Monomial(vec![2, 0])]);
    }

    #[test]
    fn decomposition_triangle() {
        let i = MonomialIdeal::edge_ideal(&triangle());
        let comps = i.irreducible_decomposition(&limits()).unwrap();
        assert_eq!(
            comps,
            vec![
                Monomial(vec![0, 1, 1]),
                Monomial(vec![1, 0, 1]),
                Monomial(vec![1, 1, 0]),
            ]
        );
    }

    #[test]
    fn decomposition_triangle_squared_contains_pure_square() {
        let sq = MonomialIdeal::edge_ideal(&triangle()).power(2).unwrap();
        let comps = sq.irreducible_decomposition(&limits()).unwrap();
        assert!(comps.contains(&Monomial(vec![2, 2, 2])));
        // Components intersect back to the ideal.
        let mut inter: Option<MonomialIdeal> = None;
        for c in &comps {
            let ideal = MonomialIdeal::from_component(c);
            inter = Some(match inter {
                None => ideal,
                Some(acc) => acc.intersect(&ideal),
            });
        }
        assert_eq!(inter.unwrap(), sq);
    }

    #[test]
    fn decomposition_is_irredundant() {
        // Removing any component changes the intersection.
        for k in [1usize, 2] {
            let ideal = MonomialIdeal::edge_ideal(&triangle()).power(k).unwrap();
            let comps = ideal.irreducible_decomposition(&limits()).unwrap();
            for skip in 0..comps.len() {
                let mut inter: Option<MonomialIdeal> = None;
                for (i, c) in comps.iter().enumerate() {
                    if i == skip {
                        continue;
                    }
                    let ci = MonomialIdeal::from_component(c);
                    inter = Some(match inter {
                        None => ci,
                        Some(acc) => acc.intersect(&ci),
                    });
                }
                assert_ne!(inter.unwrap(), ideal, "component {skip} is redundant");
            }
        }
    }

    #[test]
    fn associated_primes_small() {
        let t = triangle();
        let i = MonomialIdeal::edge_ideal(&t);
        let ass1 = i.associated_primes(&limits()).unwrap();
        assert_eq!(ass1.len(), 3);
        assert!(!ass1.contains(&t.vertex_set()));
        let ass2 = i.power(2).unwrap().associated_primes(&limits()).unwrap();
        assert_eq!(ass2.len(), 4);
        assert!(ass2.contains(&t.vertex_set()));
        for u in &ass1 {
            assert!(ass2.contains(u));
        }
    }

    #[test]
    fn display_form() {
        let t = triangle();
        assert_eq!(Monomial(vec![2, 1, 0]).display(&t), "x^2*y");
        assert_eq!(Monomial(vec![0, 0, 0]).display(&t), "1");
    }
}
