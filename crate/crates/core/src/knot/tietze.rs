use std::collections::{BTreeSet, HashSet};

use super::{Presentation, Word};

/// Default move budget.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Longest relator that may be used to eliminate a generator.
pub const MAX_ELIMINATION_LENGTH: usize = 16;

/// Simplified presentation plus bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TietzeOutcome {
    pub presentation: Presentation,
    pub moves: usize,
    /// The budget ran out before a fixpoint was reached.
    pub exhausted: bool,
}

struct Work {
    relators: Vec<Option<Vec<i32>>>,
    /// generator -> ids of relators mentioning it
    occurrences: Vec<BTreeSet<usize>>,
    alive: Vec<bool>,
    /// (length, id) of relators that may still eliminate a generator
    queue: BTreeSet<(usize, usize)>,
}

fn generator_of(l: i32) -> usize {
    l.unsigned_abs() as usize
}

fn reduce(letters: &[i32]) -> Vec<i32> {
    let mut w = Word::default();
    for &l in letters {
        w.push(l);
    }
    w.cyclically_reduced().0
}

impl Work {
    fn new(p: &Presentation) -> Self {
        let mut w = Work {
            relators: Vec::new(),
            occurrences: vec![BTreeSet::new(); p.n_generators + 1],
            alive: vec![true; p.n_generators + 1],
            queue: BTreeSet::new(),
        };
        w.alive[0] = false;
        for r in &p.relators {
            let id = w.relators.len();
            let letters = reduce(&r.0);
            for &l in &letters {
                w.occurrences[generator_of(l)].insert(id);
            }
            w.queue.insert((letters.len(), id));
            w.relators.push(Some(letters));
        }
        w
    }

    fn remove(&mut self, id: usize) {
        if let Some(letters) = self.relators[id].take() {
            self.queue.remove(&(letters.len(), id));
            for l in letters {
                self.occurrences[generator_of(l)].remove(&id);
            }
        }
    }

    /// Generator this relator can eliminate: one occurring exactly once,
    /// preferring the highest index.
    fn eliminable(letters: &[i32]) -> Option<usize> {
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for &l in letters {
            let g = generator_of(l);
            match counts.iter_mut().find(|(h, _)| *h == g) {
                Some((_, c)) => *c += 1,
                None => counts.push((g, 1)),
            }
        }
        counts
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(g, _)| g)
            .max()
    }

    /// Solves relator `id` for generator `g` and substitutes everywhere.
    fn eliminate(&mut self, id: usize, g: usize) {
        let letters = self.relators[id].clone().expect("live relator");
        let pos = letters.iter().position(|&l| generator_of(l) == g).unwrap();
        let (u, v) = (&letters[..pos], &letters[pos + 1..]);
        // u g v = 1  =>  g = u^-1 v^-1 ;  u g^-1 v = 1  =>  g = v u
        let replacement: Vec<i32> = if letters[pos] > 0 {
            u.iter()
                .rev()
                .map(|l| -l)
                .chain(v.iter().rev().map(|l| -l))
                .collect()
        } else {
            v.iter().chain(u.iter()).copied().collect()
        };
        let inverse: Vec<i32> = replacement.iter().rev().map(|l| -l).collect();
        self.remove(id);
        let targets: Vec<usize> = self.occurrences[g].iter().copied().collect();
        for rid in targets {
            let old = self.relators[rid].clone().unwrap();
            let mut expanded = Vec::with_capacity(old.len() + replacement.len());
            for &l in &old {
                if generator_of(l) == g {
                    expanded.extend_from_slice(if l > 0 { &replacement } else { &inverse });
                } else {
                    expanded.push(l);
                }
            }
            self.remove(rid);
            let new = reduce(&expanded);
            for &l in &new {
                self.occurrences[generator_of(l)].insert(rid);
            }
            self.queue.insert((new.len(), rid));
            self.relators[rid] = Some(new);
        }
        debug_assert!(self.occurrences[g].is_empty());
        self.alive[g] = false;
    }
}

/// Simplifies a presentation by Tietze moves, deterministically.
///
/// Relators are kept freely and cyclically reduced; empty ones are dropped.
/// Then, repeatedly, the shortest relator (ties by position) of length at
/// most [`MAX_ELIMINATION_LENGTH`] containing a generator exactly once is
/// solved for that generator (the highest-index such generator), which is
/// substituted everywhere and removed. Length-one relators thus kill their
/// generator and length-two relators identify two generators. Finally
/// relators equal up to rotation and inversion are deduplicated and the
/// surviving generators renumbered in order.
pub fn tietze_simplify(p: &Presentation, budget: usize) -> TietzeOutcome {
    let mut work = Work::new(p);
    let mut moves = 0;
    let mut exhausted = false;
    while let Some(&(len, id)) = work.queue.first() {
        if len > MAX_ELIMINATION_LENGTH {
            break;
        }
        if moves >= budget {
            exhausted = true;
            break;
        }
        work.queue.remove(&(len, id));
        if len == 0 {
            work.remove(id);
            work.relators[id] = None;
            moves += 1;
            continue;
        }
        let letters = work.relators[id].as_ref().unwrap();
        if let Some(g) = Work::eliminable(letters) {
            work.eliminate(id, g);
            moves += 1;
        }
    }

    // renumber surviving generators
    let mut new_index = vec![0i32; work.alive.len()];
    let mut n = 0;
    for (g, alive) in work.alive.iter().enumerate() {
        if *alive {
            n += 1;
            new_index[g] = n;
        }
    }
    let mut seen = HashSet::new();
    let mut relators = Vec::new();
    for letters in work.relators.into_iter().flatten() {
        if letters.is_empty() {
            continue;
        }
        let w = Word(
            letters
                .iter()
                .map(|&l| l.signum() * new_index[generator_of(l)])
                .collect(),
        );
        if seen.insert(w.cyclic_canonical()) {
            relators.push(w);
        } else {
            moves += 1;
        }
    }
    TietzeOutcome {
        presentation: Presentation {
            n_generators: n as usize,
            relators,
        },
        moves,
        exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::abelianization_invariants;

    fn pres(n: usize, rels: &[&[i32]]) -> Presentation {
        Presentation::new(
            n,
            rels.iter().map(|r| Word::new(r.iter().copied())).collect(),
        )
        .unwrap()
    }

    #[test]
    fn killing_a_generator() {
        let out = tietze_simplify(&pres(1, &[&[1]]), DEFAULT_BUDGET);
        assert_eq!(out.presentation, pres(0, &[]));
        assert!(!out.exhausted);
    }

    #[test]
    fn identifying_generators() {
        let out = tietze_simplify(&pres(2, &[&[1, -2]]), DEFAULT_BUDGET);
        assert_eq!(out.presentation, pres(1, &[]));
    }

    #[test]
    fn torsion_survives() {
        let out = tietze_simplify(&pres(2, &[&[1, 1], &[2, 1, -2, -1]]), DEFAULT_BUDGET);
        // b occurs twice in the commutator; nothing to eliminate
        assert_eq!(out.presentation.n_generators, 2);
        let out = tietze_simplify(&pres(2, &[&[1, 1], &[2]]), DEFAULT_BUDGET);
        assert_eq!(out.presentation, pres(1, &[&[1, 1]]));
    }

    #[test]
    fn trefoil_from_wirtinger() {
        // x1 x2 = x2 x3, x2 x3 = x3 x1, x3 x1 = x1 x2 (one redundant)
        let w = pres(3, &[&[1, 2, -3, -2], &[2, 3, -1, -3], &[3, 1, -2, -1]]);
        let out = tietze_simplify(&w, DEFAULT_BUDGET);
        assert_eq!(out.presentation.n_generators, 2);
        assert_eq!(out.presentation.relators.len(), 1);
        assert_eq!(out.presentation.relators[0].len(), 6);
        assert_eq!(abelianization_invariants(&w).rank, 1);
        assert_eq!(abelianization_invariants(&out.presentation).rank, 1);
    }

    #[test]
    fn duplicates_are_removed() {
        let out = tietze_simplify(
            &pres(2, &[&[1, 2, -1, -2], &[2, 1, -2, -1], &[-2, 1, 2, -1]]),
            DEFAULT_BUDGET,
        );
        assert_eq!(out.presentation.relators.len(), 1);
    }

    #[test]
    fn budget_is_respected() {
        let out = tietze_simplify(&pres(3, &[&[1], &[2], &[3]]), 2);
        assert!(out.exhausted);
        assert_eq!(out.presentation.n_generators, 1);
    }

    #[test]
    fn conjugated_relator_is_reduced() {
        let out = tietze_simplify(&pres(2, &[&[2, 1, -2]]), DEFAULT_BUDGET);
        assert_eq!(out.presentation, pres(1, &[]));
    }
}
