//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use csp_core::fingroup::{FinGroup, FreeHom, GElem, Group};
use csp_core::perm::Perm;
use csp_core::pipeline::spec::SpecFile;
use csp_core::words::Word;
use rand::Rng;

pub fn s3_spec() -> SpecFile {
    SpecFile::from_cycles(4, 2, &["(1 2)", "(2 3)"]).unwrap()
}

/// S₃ on a 3-cycle and a transposition; the convention check needs a
/// generator that is not an involution.
pub fn s3_rotation_spec() -> SpecFile {
    SpecFile::from_cycles(4, 2, &["(1 2 3)", "(1 2)"]).unwrap()
}

pub fn klein_spec() -> SpecFile {
    SpecFile::from_cycles(4, 2, &["(1 2)(3 4)", "(1 3)(2 4)"]).unwrap()
}

pub fn z3z3_spec() -> SpecFile {
    SpecFile::from_cycles(4, 2, &["(1 2 3)", "(4 5 6)"]).unwrap()
}

/// Permutation groups of order at most 24.
pub fn small_groups() -> Vec<(&'static str, FinGroup)> {
    let g = |d: usize, gens: &[&str]| FinGroup::perm_group_from_cycles(d, gens).unwrap();
    vec![
        ("Z2", g(2, &["(1 2)"])),
        ("Z3", g(3, &["(1 2 3)"])),
        ("Z4", g(4, &["(1 2 3 4)"])),
        ("V4", g(4, &["(1 2)(3 4)", "(1 3)(2 4)"])),
        ("Z6", g(5, &["(1 2 3)(4 5)"])),
        ("S3", g(3, &["(1 2)", "(2 3)"])),
        ("D4", g(4, &["(1 2 3 4)", "(1 3)"])),
        ("Q8", g(8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"])),
        ("Z3xZ3", g(6, &["(1 2 3)", "(4 5 6)"])),
        ("D5", g(5, &["(1 2 3 4 5)", "(2 5)(3 4)"])),
        ("A4", g(4, &["(1 2 3)", "(1 2)(3 4)"])),
        ("D6", g(6, &["(1 2 3 4 5 6)", "(2 6)(3 5)"])),
        ("S4", g(4, &["(1 2 3 4)", "(1 2)"])),
    ]
}

pub fn random_element<R: Rng>(rng: &mut R, g: &FinGroup) -> GElem {
    let e = g.enumerate(100_000).unwrap();
    e.elements()[rng.gen_range(0..e.len())].clone()
}

/// All reduced words of length at most `len`.
pub fn word_ball(rank: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::identity()];
    let mut frontier = vec![Vec::<i32>::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 1..=rank as i32 {
                for x in [g, -g] {
                    if w.last() == Some(&-x) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(x);
                    out.push(Word::reduce(&v, rank).unwrap());
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    out
}

/// ker f ⊆ ker g judged on a word ball: the relation f(w) ↦ g(w) must be a
/// function on the words sampled.
pub fn ball_containment<A: Group, B: Group>(f: &FreeHom<A>, g: &FreeHom<B>, ball: &[Word]) -> bool {
    let mut seen: HashMap<A::Elem, B::Elem> = HashMap::new();
    for w in ball {
        let (a, b) = (f.eval(w), g.eval(w));
        match seen.get(&a) {
            Some(prev) if *prev != b => return false,
            Some(_) => {}
            None => {
                seen.insert(a, b);
            }
        }
    }
    true
}

/// Plain breadth-first closure under right multiplication.
pub fn bfs_order<G: Group>(group: &G, gens: &[G::Elem], cap: usize) -> Option<usize> {
    let mut seen: HashSet<G::Elem> = HashSet::from([group.identity()]);
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = group.mul(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    Some(seen.len())
}

/// Left regular permutations indexed by `elems`, computed from scratch.
pub fn regular_perms(g: &FinGroup, elems: &[GElem], of: &[GElem]) -> Vec<Perm> {
    let index: HashMap<&GElem, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
    of.iter()
        .map(|x| Perm::from_images(elems.iter().map(|h| index[&g.mul(x, h)] as u32).collect()).unwrap())
        .collect()
}
