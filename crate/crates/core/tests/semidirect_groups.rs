#[path = "support/mod.rs"]
mod support;

use csp_core::fingroup::{check_kernel_containment, FinGroup, FreeHom, GElem, Group};
use csp_core::linear::FlVector;
use csp_core::semidirect::{Affine, LinByFin, SdElem};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::*;

fn s3_regular() -> (FinGroup, Vec<GElem>, Vec<csp_core::perm::Perm>) {
    let g = FinGroup::perm_group_from_cycles(3, &["(1 2)", "(2 3)"]).unwrap();
    let elems = g.enumerate(100).unwrap().elements().to_vec();
    let regs = regular_perms(&g, &elems, &elems);
    (g, elems, regs)
}

fn sd_elem() -> impl Strategy<Value = SdElem> {
    let (_, _, regs) = s3_regular();
    (prop::collection::vec(0u32..3, 6), 0..regs.len())
        .prop_map(move |(c, i)| SdElem::new(FlVector::from_coords(3, &c), regs[i].clone()).unwrap())
}

proptest! {
    #[test]
    fn semidirect_laws(a in sd_elem(), b in sd_elem(), c in sd_elem()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inv()).is_identity());
        prop_assert_eq!(a.pow(3), a.mul(&a).mul(&a));
        prop_assert_eq!(a.pow(-2), a.inv().mul(&a.inv()));
    }

    #[test]
    fn normal_form_is_a_homomorphism(seed in 0u64..500) {
        let (_, _, regs) = s3_regular();
        let gens = vec![
            SdElem::new(FlVector::unit(3, 6, 0), regs[1].clone()).unwrap(),
            SdElem::new(FlVector::zero(3, 6), regs[2].clone()).unwrap(),
        ];
        let g = LinByFin::from_generators(3, 6, &gens, 1000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (g.random_element(&mut rng), g.random_element(&mut rng));
        prop_assert!(g.contains(&x) && g.contains(&g.mul(&x, &y)));
        prop_assert_eq!(g.normalize(&x.mul(&y)), g.mul(&g.normalize(&x), &g.normalize(&y)));
    }
}

#[test]
fn linbyfin_orders_match_breadth_first_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, g) in small_groups().into_iter().filter(|(_, g)| g.order(100).unwrap() <= 8) {
        let elems = g.enumerate(100).unwrap().elements().to_vec();
        let regs = regular_perms(&g, &elems, g.generators());
        for ell in [2u32, 3] {
            let dim = elems.len();
            let gens: Vec<SdElem> = regs
                .iter()
                .map(|p| {
                    let c: Vec<u32> = (0..dim).map(|_| if rng.gen_bool(0.3) { rng.gen_range(0..ell) } else { 0 }).collect();
                    SdElem::new(FlVector::from_coords(ell, &c), p.clone()).unwrap()
                })
                .collect();
            let lbf = LinByFin::from_generators(ell, dim, &gens, 10_000).unwrap();
            let Some(bfs) = bfs_order(&Affine { ell, dim }, &gens, 200_000) else { continue };
            assert_eq!(lbf.order(), bfs.into(), "{name}, ell = {ell}");
        }
    }
}

#[test]
fn centers_match_brute_force() {
    let (_, _, regs) = s3_regular();
    let gens = vec![
        SdElem::new(FlVector::unit(2, 6, 0), regs[1].clone()).unwrap(),
        SdElem::new(FlVector::zero(2, 6), regs[3].clone()).unwrap(),
    ];
    let g = LinByFin::from_generators(2, 6, &gens, 1000).unwrap();
    let all = g.enumerate(10_000).unwrap();
    let brute = all.elements().iter().filter(|x| gens.iter().all(|y| g.commutes(x, y))).count();
    assert_eq!(g.center().unwrap().order(), brute.into());
    for x in all.elements().iter().step_by(7) {
        let c = g.centralizer(x).unwrap();
        let brute = all.elements().iter().filter(|y| g.commutes(x, y)).count();
        assert_eq!(c.order(), brute.into());
    }
}

#[test]
fn kernel_containment_matches_word_ball() {
    let ball = word_ball(2, 6);
    let groups = small_groups();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut seen = [0usize; 2];
    for _ in 0..40 {
        let (_, a) = &groups[rng.gen_range(0..groups.len())];
        let (_, b) = &groups[rng.gen_range(0..groups.len())];
        let f = FreeHom::new(2, a.clone(), vec![random_element(&mut rng, a), random_element(&mut rng, a)]).unwrap();
        let g = if rng.gen_bool(0.5) {
            FreeHom::new(2, b.clone(), vec![random_element(&mut rng, b), random_element(&mut rng, b)]).unwrap()
        } else {
            // f followed by a quotient map, so ker f ⊆ ker g holds
            let n = random_element(&mut rng, a);
            let (quot, proj) = a.quotient_by_normal_closure(&[n], 100_000).unwrap();
            f.map_target(quot, |x| proj.apply(x).unwrap()).unwrap()
        };
        let fast = check_kernel_containment(&f, &g, 100_000).unwrap();
        assert_eq!(fast, ball_containment(&f, &g, &ball));
        seen[fast as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}
