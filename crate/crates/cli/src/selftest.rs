//! A fast subset of the acceptance checks for smoke-testing a build.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use okada::half::enumerate_diagrams;
use okada::monoid::idempotent_count;
use okada::rewrite::normalize_with;
use okada::{
    diagram_to_perm, glue, normalize, perm_to_diagram, rs, rs_inverse, AlgebraElement, Permutation,
    Word,
};

use crate::Failure;

const IDEMPOTENTS: [u64; 9] = [1, 1, 2, 6, 22, 108, 594, 4116, 30500];

fn check(name: &str, f: impl FnOnce() -> Result<(), String>) -> bool {
    match f() {
        Ok(()) => {
            println!("PASS {name}");
            true
        }
        Err(e) => {
            println!("FAIL {name}: {e}");
            false
        }
    }
}

fn err(e: okada::Error) -> String {
    e.to_string()
}

pub fn run(max_n: usize, seed: u64) -> Result<(), Failure> {
    if max_n > 8 {
        return Err(Failure::Usage(format!("selftest supports --max-n <= 8, got {max_n}")));
    }
    let mut ok = true;
    ok &= check("dimension", || {
        for n in 0..=max_n {
            let ds = enumerate_diagrams(n);
            let f: usize = (1..=n).product();
            if ds.len() != f {
                return Err(format!("rank {n}: {} diagrams", ds.len()));
            }
            for d in &ds {
                if perm_to_diagram(&diagram_to_perm(d).map_err(err)?).map_err(err)? != *d {
                    return Err(format!("rank {n}: {d} does not round-trip"));
                }
            }
        }
        Ok(())
    });
    ok &= check("idempotents", || {
        for n in 0..=max_n {
            let c = idempotent_count(n);
            if c != IDEMPOTENTS[n] {
                return Err(format!("rank {n}: {c} idempotents, expected {}", IDEMPOTENTS[n]));
            }
        }
        Ok(())
    });
    ok &= check("relations", || {
        for n in 2..=max_n {
            let g = |i: usize| AlgebraElement::generator(i, n).map_err(err);
            for i in 1..n {
                let sq = g(i)?.multiply(&g(i)?).map_err(err)?;
                let want = g(i)?.scale(&okada::Polynomial::var(okada::Var::X(i)));
                if sq != want {
                    return Err(format!("E_{i}^2 in rank {n}"));
                }
                if i + 1 < n {
                    let lhs = g(i + 1)?.multiply(&g(i)?).map_err(err)?.multiply(&g(i + 1)?).map_err(err)?;
                    let want = g(i + 1)?.scale(&okada::Polynomial::var(okada::Var::Y(i)));
                    if lhs != want {
                        return Err(format!("E_{}E_{i}E_{} in rank {n}", i + 1, i + 1));
                    }
                }
                for j in i + 2..n {
                    let a = g(i)?.multiply(&g(j)?).map_err(err)?;
                    let b = g(j)?.multiply(&g(i)?).map_err(err)?;
                    if a != b {
                        return Err(format!("E_{i}E_{j} in rank {n}"));
                    }
                }
            }
        }
        Ok(())
    });
    ok &= check("confluence", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for n in 2..=max_n {
            for _ in 0..50 {
                let len = rng.gen_range(0..=3 * n);
                let letters: Vec<usize> = (0..len).map(|_| rng.gen_range(1..n)).collect();
                let w = Word::new(n, letters).map_err(err)?;
                let a = normalize(&w).map_err(err)?;
                let b = normalize_with(&w, &mut rng).map_err(err)?;
                if a != b {
                    return Err(format!("word {w}"));
                }
            }
        }
        Ok(())
    });
    ok &= check("rs", || {
        for n in 0..=max_n.min(6) {
            for sigma in Permutation::all(n) {
                let (p, q) = rs(&sigma).map_err(err)?;
                if rs_inverse(&p, &q).map_err(err)? != sigma {
                    return Err(format!("{sigma} does not round-trip"));
                }
                if rs(&sigma.inverse()).map_err(err)? != (q, p) {
                    return Err(format!("{sigma}: inverse does not swap the chains"));
                }
            }
        }
        Ok(())
    });
    ok &= check("gluing", || {
        for n in 0..=max_n.min(6) {
            for d in enumerate_diagrams(n) {
                if glue(&d.bra(), &d.ket()).map_err(err)? != d {
                    return Err(format!("{d}"));
                }
            }
        }
        Ok(())
    });
    if ok {
        Ok(())
    } else {
        Err(Failure::Invariant("selftest failed".into()))
    }
}
