#[path = "support/mod.rs"]
mod support;

use csp_core::fingroup::{check_kernel_containment, enumerate, Group};
use csp_core::pipeline::certificate::{self, render, Verdict};
use csp_core::pipeline::centerless::{centerless_quotient, ensure_noncyclic};
use csp_core::pipeline::random_word;
use csp_core::pipeline::run::{run_witness, Mode};
use csp_core::pipeline::spec::SpecFile;
use csp_core::pipeline::witness::{
    aut_orbit, build_phi, diagonal_hom, is_geom_characteristic, orbit_is_closed, pullback_kernel, Orbit,
};
use csp_core::linear::FlVector;
use csp_core::perm::Perm;
use csp_core::semidirect::{Affine, SdElem};
use csp_core::words::pmod_lift_generators;
use csp_core::Error;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use support::*;

fn quick(mut spec: SpecFile) -> SpecFile {
    spec.options.samples = 500;
    spec
}

#[test]
fn diagonal_centralizer_exceeds_the_normal_closure() {
    let run = run_witness(&quick(s3_spec()), Mode::Auto).unwrap();
    let q = run.diag.group();
    let amb = Affine { ell: 2, dim: q.dim() };
    let all = enumerate(&amb, run.diag.q.images(), 10_000).unwrap();
    assert_eq!(q.order(), BigUint::from(all.len()));
    let x = &run.p0.lambda;
    let cent = all.elements().iter().filter(|y| amb.commutes(y, x)).count();
    let conjugates: Vec<_> = all.elements().iter().map(|y| amb.conj(y, x)).collect();
    let closure = enumerate(&amb, &conjugates, 10_000).unwrap().len();
    assert_eq!(run.centralizer.centralizer.order(), BigUint::from(cent));
    assert_eq!(BigUint::from(2u32).pow(run.p0.kernel.rank() as u32), BigUint::from(closure));
    assert_eq!((all.len(), cent, closure), (768, 128, 64));
    assert!(!run.centralizer.holds);
}

#[test]
fn a_center_in_p_is_caught_in_direct_mode() {
    let spec = quick(SpecFile::from_cycles(4, 2, &["(1 2)(4 5)", "(2 3)"]).unwrap());
    let run = run_witness(&spec, Mode::Direct).unwrap();
    assert_eq!(run.flags.get("p-centerless"), Some(false));
    assert!(!run.is_valid());
    assert!(render(&run).contains("status INVALID p-centerless"));
}

#[test]
fn a_single_homomorphism_is_not_geometrically_characteristic() {
    let spec = s3_spec().quotient_spec().unwrap();
    let phi = build_phi(&spec, 10_000).unwrap();
    let gens = pmod_lift_generators(4).unwrap();
    let alone = Orbit { members: vec![phi.hom.clone()], keys: vec![], generator_names: vec![] };
    let single = diagonal_hom(&alone, 10_000).unwrap();
    assert!(!is_geom_characteristic(&single.q, &gens, 10_000).unwrap());

    let orbit = aut_orbit(&phi, &gens, 1000).unwrap();
    assert!(orbit_is_closed(&phi, &orbit, &gens).unwrap());
    let mut partial = orbit.clone();
    partial.members.truncate(2);
    partial.keys.truncate(2);
    assert!(!orbit_is_closed(&phi, &partial, &gens).unwrap());
    let full = diagonal_hom(&orbit, 10_000).unwrap();
    assert!(is_geom_characteristic(&full.q, &gens, 10_000).unwrap());
}

#[test]
fn pullback_kills_lambda() {
    let spec = s3_spec().quotient_spec().unwrap();
    let pulled = pullback_kernel(spec.p()).unwrap();
    let big = spec.big_group();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let w = random_word(&mut rng, 3, 15);
        assert_eq!(pulled.eval(&w), spec.p().eval(&big.rho_n_lambda(&w).unwrap()));
    }
}

#[test]
fn cyclic_targets_are_refined() {
    let spec = SpecFile::from_cycles(4, 2, &["(1 2 3)", "(1 3 2)"]).unwrap().quotient_spec().unwrap();
    let (refined, m) = ensure_noncyclic(&spec, 10_000).unwrap();
    assert_eq!(m, Some(3));
    assert!(!refined.target().is_cyclic(10_000).unwrap());
    assert!(check_kernel_containment(refined.p(), spec.p(), 100_000).unwrap());
}

#[test]
fn centerless_stage_depends_on_the_prime() {
    let s3 = s3_spec().quotient_spec().unwrap();
    let c = centerless_quotient(&s3, 2_000_000, 1).unwrap();
    assert!(c.center_trivial && c.chain_commutes);
    assert!(!c.extra_centers.is_empty());

    // The cyclic quotient alone leaves a center: check its elements directly
    // by commutators in the ambient, modulo ⟨(Σ r, 1)⟩.
    let dim = c.s.dim();
    let ones = FlVector::all_ones(2, dim);
    let (first, _) = c.s.quotient_central_cyclic(&ones).unwrap();
    let z = first.center().unwrap();
    let amb = Affine { ell: 2, dim };
    let killed = |x: &SdElem| x.g().is_identity() && (x.v().is_zero() || *x.v() == ones);
    let mut nontrivial = 0;
    for d in z.directions.basis() {
        let x = SdElem::new(d.clone(), Perm::identity(dim)).unwrap();
        for g in c.s.generators() {
            let comm = amb.mul(&amb.mul(&x, g), &amb.mul(&amb.inv(&x), &amb.inv(g)));
            assert!(killed(&comm));
        }
        if !killed(&x) {
            nontrivial += 1;
        }
    }
    assert!(nontrivial > 0);

    // a finite ℓ-group always has a center, so ℓ = 2 cannot work for V4
    let v4 = klein_spec().quotient_spec().unwrap();
    assert!(matches!(centerless_quotient(&v4, 2_000_000, 1), Err(Error::CenterNotTrivial { .. })));
    let mut v4_three = klein_spec();
    v4_three.ell = 3;
    let c = centerless_quotient(&v4_three.quotient_spec().unwrap(), 2_000_000, 1).unwrap();
    assert!(c.center_trivial && c.chain_commutes);
    assert_eq!(c.r_order(), 108);
}

#[test]
fn certificates_reproduce_and_reject_edits() {
    let run = run_witness(&quick(s3_spec()), Mode::Auto).unwrap();
    let text = render(&run);
    assert_eq!(text, render(&run_witness(&quick(s3_spec()), Mode::Auto).unwrap()));
    assert_eq!(certificate::verify(&text).unwrap(), Verdict::Valid);

    let edited = text.replacen("orbit-size 6", "orbit-size 7", 1);
    assert!(matches!(certificate::verify(&edited), Err(Error::Invalid(_))));

    // an edit with a recomputed digest still fails the re-run
    use sha2::{Digest, Sha256};
    let body = &edited[..edited.rfind("certificate-digest ").unwrap()];
    let resealed = format!("{body}certificate-digest {}\n", hex::encode(Sha256::digest(body.as_bytes())));
    assert!(matches!(certificate::verify(&resealed).unwrap(), Verdict::Mismatch { .. }));
}
