//! Generic morphisms on a flat space and the hand-written low-arity inverse
//! expansions they must satisfy.

use ellipsoidal_core::linf::{BasedSpace, Element, LinfMorphism};
use ellipsoidal_core::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{rngs::StdRng, Rng, SeedableRng};

pub fn random_rational(rng: &mut StdRng) -> Rational {
    let n: i64 = rng.gen_range(-9..=9);
    let d: i64 = rng.gen_range(1..=7);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_element(rng: &mut StdRng, dim: usize) -> Element {
    let mut e = Element::zero();
    for i in 1..=dim {
        e.add_term(i, random_rational(rng));
    }
    e
}

/// Degree-zero space, invertible diagonal linear part, dense random higher
/// tables.
pub fn generic_diagonal(seed: u64, dim: usize, arity: usize) -> LinfMorphism {
    let mut rng = StdRng::seed_from_u64(seed);
    let v = BasedSpace::new("V", vec![0; dim]).unwrap();
    let mut phi = LinfMorphism::new(v.clone(), v, arity);
    for i in 1..=dim {
        let mut c = Rational::zero();
        while c.is_zero() {
            c = random_rational(&mut rng);
        }
        phi.set(&[i], Element::term(i, c)).unwrap();
    }
    for k in 2..=arity {
        for inputs in tuples(dim, k) {
            phi.set(&inputs, random_element(&mut rng, dim)).unwrap();
        }
    }
    phi
}

fn tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for t in tuples(dim, k - 1) {
        let lo = t.last().copied().unwrap_or(1);
        for i in lo..=dim {
            let mut t = t.clone();
            t.push(i);
            out.push(t);
        }
    }
    out
}

fn add(a: &Element, b: &Element) -> Element {
    let mut out = a.clone();
    out.add_scaled(b, &Rational::one());
    out
}

fn neg(a: &Element) -> Element {
    a.scaled(&-Rational::one())
}

/// Checks
/// `Ψ²(x,y) = -Ψ¹Φ²(Ψ¹x, Ψ¹y)` and
/// `Ψ³(x,y,z) = -Ψ¹Φ³(Ψ¹x,Ψ¹y,Ψ¹z) + Ψ¹Φ²(Ψ¹x, Ψ¹Φ²(Ψ¹y,Ψ¹z)) + (two more)`
/// on all basis triples. Returns the first mismatch.
pub fn check_low_arity(phi: &LinfMorphism, psi: &LinfMorphism) -> Result<(), String> {
    let dim = phi.source().dim();
    let p1 = |x: &Element| psi.apply(&[x]);
    let f2 = |x: &Element, y: &Element| phi.apply(&[x, y]);
    let f3 = |x: &Element, y: &Element, z: &Element| phi.apply(&[x, y, z]);
    let basis: Vec<Element> = (1..=dim).map(Element::basis).collect();
    for x in &basis {
        for y in &basis {
            let want = neg(&p1(&f2(&p1(x), &p1(y))));
            if psi.apply(&[x, y]) != want {
                return Err(format!("arity 2 at ({x}, {y})"));
            }
            for z in &basis {
                let t1 = neg(&p1(&f3(&p1(x), &p1(y), &p1(z))));
                let t2 = p1(&f2(&p1(x), &p1(&f2(&p1(y), &p1(z)))));
                let t3 = p1(&f2(&p1(y), &p1(&f2(&p1(x), &p1(z)))));
                let t4 = p1(&f2(&p1(z), &p1(&f2(&p1(x), &p1(y)))));
                let want = add(&add(&t1, &t2), &add(&t3, &t4));
                if psi.apply(&[x, y, z]) != want {
                    return Err(format!("arity 3 at ({x}, {y}, {z})"));
                }
            }
        }
    }
    Ok(())
}
