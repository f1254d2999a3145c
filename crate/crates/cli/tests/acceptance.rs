//! Acceptance suite: one line per criterion, then a nonzero exit if any failed.

use std::collections::BTreeMap;
use std::process::Command;

use binfty_core::corpus::{self, Example};
use binfty_core::graded::Sign;
use binfty_core::infbialg::{
    check_triangle, check_unital_infinitesimal, counit_f, derived_structures_prime, enveloping,
    fundamental_bialgebra, round_trip_difference, shuffle_bialgebra,
};
use binfty_core::structures::{
    check_b_infinity, check_multibrace, quasi_shuffle_multibrace, quasi_trivial_b_infinity, shuffle_product,
};
use binfty_core::tcoalg::FiniteCoalgebra;
use binfty_core::twisting::{invert_twisting, twist_b_infinity, twisting_from_product};
use binfty_core::underlying::{
    borjeson_closed_form, check_defining_identities, check_iota_hom, derive_a_infinity, underlying_b_infinity,
};
use binfty_core::{GradedSpace, LawReport, MultiMap, TensorElement, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fail<E: std::fmt::Display>(context: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{context}: {e}")
}

fn require(report: &LawReport, context: &str) -> Result<usize, String> {
    match report.first_failure() {
        None => Ok(report.checked()),
        Some(_) => Err(format!("{context}:\n{report}")),
    }
}

fn examples() -> Result<Vec<Example>, String> {
    corpus::all().map_err(fail("corpus"))
}

fn derived_laws() -> Outcome {
    let mut checked = 0;
    for ex in examples()? {
        let s = underlying_b_infinity(&ex.algebra, 6).map_err(fail(ex.name))?;
        for r in check_b_infinity(&s, 5, 6, 6).map_err(fail(ex.name))? {
            checked += require(&r, ex.name)?;
        }
    }
    Ok(format!("{checked} instances"))
}

fn defining_identities() -> Outcome {
    let mut checked = 0;
    for ex in examples()? {
        let s = underlying_b_infinity(&ex.algebra, 6).map_err(fail(ex.name))?;
        let r = check_defining_identities(&ex.algebra, &s, 6).map_err(fail(ex.name))?;
        checked += require(&r, ex.name)?;
    }
    Ok(format!("{checked} instances"))
}

fn closed_form() -> Outcome {
    for ex in examples()? {
        let derived = derive_a_infinity(&ex.algebra, 6).map_err(fail(ex.name))?;
        for n in 1..=6 {
            let closed = borjeson_closed_form(&ex.algebra, n).map_err(fail(ex.name))?;
            if let Some((w, x, y)) = closed.first_difference(&derived.m(n)) {
                return Err(format!("{} m_{n} at {w:?}: {x:?} != {y:?}", ex.name));
            }
        }
    }
    Ok("4 algebras, n <= 6".into())
}

fn path_independence() -> Outcome {
    for ex in examples()? {
        let alg = &ex.algebra;
        let qt = quasi_trivial_b_infinity(alg.space(), alg.bullet(), alg.diff(), 5).map_err(fail(ex.name))?;
        let tau = twisting_from_product(alg.space(), alg.circ(), 5).map_err(fail(ex.name))?;
        let twisted = twist_b_infinity(&qt, &tau, 5).map_err(fail(ex.name))?;
        let direct = underlying_b_infinity(alg, 5).map_err(fail(ex.name))?;
        if let Some(d) = twisted.first_difference(&direct, 5) {
            return Err(format!("{}: {d}", ex.name));
        }
    }
    Ok("4 algebras, arities <= 5".into())
}

fn twisting_inverse() -> Outcome {
    let mut words = 0;
    for ex in examples()? {
        let sp = ex.algebra.space();
        let tau = twisting_from_product(sp, ex.algebra.circ(), 6).map_err(fail(ex.name))?;
        let inv = invert_twisting(&tau).map_err(fail(ex.name))?;
        for w in sp.words_up_to(6) {
            let id = TensorElement::basis(w.clone());
            let there = inv.apply_element(&tau.apply(&w.0).map_err(fail(ex.name))?).map_err(fail(ex.name))?;
            let back = tau.apply_element(&inv.apply(&w.0).map_err(fail(ex.name))?).map_err(fail(ex.name))?;
            if there != id || back != id {
                return Err(format!("{}: inverse fails on {w:?}", ex.name));
            }
            words += 1;
        }
        for n in 2..=6 {
            let sign = Sign::from_exponent((n - 1) as i64).to_rational();
            for w in sp.words(n) {
                let expected = tau.t(n).eval(&w.0).scaled(&sign);
                if inv.t(n).eval(&w.0) != expected {
                    return Err(format!("{}: u_{n} at {w:?} is not (-1)^(n-1) times the iterated product", ex.name));
                }
            }
        }
    }
    Ok(format!("{words} words"))
}

fn skew_space() -> GradedSpace {
    GradedSpace::new([("a", 0), ("b", 0)], None).expect("space")
}

/// `a•b = a`, `b•a = b`, everything else zero: `(a•b)•a = 0` but `a•(b•a) = a`.
fn skew_bullet(sp: &GradedSpace) -> Result<MultiMap, String> {
    let t = BTreeMap::from([
        (Word(vec![0, 1]), TensorElement::basis(Word::letter(0))),
        (Word(vec![1, 0]), TensorElement::basis(Word::letter(1))),
    ]);
    MultiMap::from_table(sp, "bullet", 2, 1, 0, t).map_err(fail("skew bullet"))
}

fn shuffle_laws() -> Outcome {
    let sp = GradedSpace::new([("x", 0), ("y", 1)], None).map_err(fail("space"))?;
    let words = sp.words_up_to(5);
    let sh = |u: &TensorElement, v: &TensorElement| shuffle_product(&sp, u, v, 5).map_err(fail("shuffle"));
    let mut cases = 0;
    for u in &words {
        for v in &words {
            if u.len() + v.len() > 5 {
                continue;
            }
            let (x, y) = (TensorElement::basis(u.clone()), TensorElement::basis(v.clone()));
            let sign = Sign::from_exponent(sp.word_degree(&u.0) * sp.word_degree(&v.0)).to_rational();
            if sh(&x, &y)? != sh(&y, &x)?.scaled(&sign) {
                return Err(format!("commutativity fails at {u:?}, {v:?}"));
            }
            for z in &words {
                if u.len() + v.len() + z.len() > 5 {
                    continue;
                }
                let z = TensorElement::basis(z.clone());
                if sh(&sh(&x, &y)?, &z)? != sh(&x, &sh(&y, &z)?)? {
                    return Err(format!("associativity fails at {u:?}, {v:?}, {z:?}"));
                }
                cases += 1;
            }
        }
    }
    let ext1 = corpus::ext1().map_err(fail("ext1"))?;
    let good = quasi_shuffle_multibrace(ext1.space(), ext1.bullet(), 6).map_err(fail("quasi-shuffle"))?;
    require(&check_multibrace(&good, 6).map_err(fail("quasi-shuffle"))?, "quasi-shuffle with associative bullet")?;
    let skew = skew_space();
    let bad = quasi_shuffle_multibrace(&skew, &skew_bullet(&skew)?, 3).map_err(fail("skew"))?;
    let report = check_multibrace(&bad, 3).map_err(fail("skew"))?;
    match report.first_failure() {
        Some(v) if v.case == "(1,1,1)" && v.counterexample.is_some() => {}
        other => return Err(format!("non-associative bullet: expected failure at (1,1,1), got {other:?}")),
    }
    Ok(format!("{cases} triples; negative witness at (1,1,1)"))
}

fn primitives() -> Outcome {
    let all = [("a", 0), ("b", 1), ("c", -1)];
    for dim in 1..=3 {
        let sp = GradedSpace::new(all[..dim].iter().copied(), None).map_err(fail("space"))?;
        let (c, _) = FiniteCoalgebra::tensor_coalgebra(&sp, 4).map_err(fail("coalgebra"))?;
        let found = c.primitives().map_err(fail("primitives"))?.len();
        if found != dim {
            return Err(format!("dim V = {dim} but Prim has dimension {found}"));
        }
    }
    Ok("dim V = 1, 2, 3 at cap 4".into())
}

fn iota_homomorphism() -> Outcome {
    let alg = corpus::ext1().map_err(fail("ext1"))?;
    let a = quasi_trivial_b_infinity(alg.space(), alg.bullet(), alg.diff(), 4).map_err(fail("ext1"))?;
    let r = check_iota_hom(&a, 4, 4).map_err(fail("iota"))?;
    Ok(format!("{} instances", require(&r, "iota")?))
}

fn infinitesimal_laws() -> Outcome {
    let v = GradedSpace::new([("x", 0), ("y", 1)], None).map_err(fail("space"))?;
    let (w, _) = fundamental_bialgebra(&v, 5).map_err(fail("fundamental"))?;
    let checked = require(&check_unital_infinitesimal(&w).map_err(fail("uib"))?, "fundamental bialgebra")?;
    let (small, _) = fundamental_bialgebra(&v, 3).map_err(fail("fundamental"))?;
    let (report, eq) = derived_structures_prime(&small).map_err(fail("prime"))?;
    require(&report, "prime structures on the fundamental bialgebra")?;
    if !(eq.agree() && eq.infinitesimal) {
        return Err(format!("fundamental bialgebra verdicts: {eq:?}"));
    }
    let (sh, _) = shuffle_bialgebra(&v, 3).map_err(fail("shuffle"))?;
    let (_, eq) = derived_structures_prime(&sh).map_err(fail("prime"))?;
    if !eq.agree() || eq.infinitesimal {
        return Err(format!("shuffle bialgebra verdicts: {eq:?}"));
    }
    Ok(format!("{checked} instances; verdicts agree"))
}

fn adjunction() -> Outcome {
    for ex in examples()? {
        let a = underlying_b_infinity(&ex.algebra, 4).map_err(fail(ex.name))?;
        require(&check_triangle(&a, 4).map_err(fail(ex.name))?, ex.name)?;
        if let Some(d) = round_trip_difference(&a, 4).map_err(fail(ex.name))? {
            return Err(format!("{}: round trip differs: {d}", ex.name));
        }
    }
    Ok("4 algebras, words <= 4".into())
}

fn radical() -> Outcome {
    let mut cases = 0;
    for ex in examples()? {
        let a = underlying_b_infinity(&ex.algebra, 3).map_err(fail(ex.name))?;
        let u = enveloping(&a, 3).map_err(fail(ex.name))?;
        let r = counit_f(&u.inf_bialgebra()).map_err(fail(ex.name))?;
        if !(r.injective && r.image_is_radical) {
            return Err(format!("U({}): {r:?}", ex.name));
        }
        cases += 1;
    }
    let all = [("x", 0), ("y", 1), ("z", 2)];
    for dim in 1..=3 {
        let v = GradedSpace::new(all[..dim].iter().copied(), None).map_err(fail("space"))?;
        let (w, _) = fundamental_bialgebra(&v, 3).map_err(fail("fundamental"))?;
        let r = counit_f(&w).map_err(fail("counit_f"))?;
        if !(r.injective && r.image_is_radical) {
            return Err(format!("fundamental bialgebra of dim {dim}: {r:?}"));
        }
        cases += 1;
    }
    Ok(format!("{cases} bialgebras"))
}

fn run(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_binfty"))
        .args(args)
        .output()
        .map_err(fail("binfty"))?;
    Ok((o.status.code().unwrap_or(-1), o.stdout))
}

fn cli_determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("binfty-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(fail("tempdir"))?;
    let result = (|| {
        let mut runs = 0;
        let names = ["poly3", "ext1", "dual2", "upper2"];
        for name in names {
            let path = dir.join(format!("{name}.json"));
            let p = path.to_str().expect("utf-8 path");
            let (c1, e1) = run(&["examples", "emit", name])?;
            let (c2, e2) = run(&["examples", "emit", name])?;
            if c1 != 0 || c2 != 0 || e1 != e2 {
                return Err(format!("emit {name} is not stable"));
            }
            std::fs::write(&path, &e1).map_err(fail("write"))?;
            let (code, _) = run(&["validate", p])?;
            if code != 0 {
                return Err(format!("emitted {name} does not validate (exit {code})"));
            }
            let u = dir.join(format!("u-{name}.json"));
            let u = u.to_str().expect("utf-8 path");
            run(&["examples", "emit", name, "--envelope", "3", "--output", u])?;
            let commands: [Vec<&str>; 6] = [
                vec!["validate", p],
                vec!["derive", p, "--max-arity", "4"],
                vec!["check", p, "--max-arity", "4"],
                vec!["check", p, "--max-arity", "4", "--format", "json"],
                vec!["primitives", u, "--cap", "3"],
                vec!["examples", "list"],
            ];
            for args in commands {
                let first = run(&args)?;
                let second = run(&args)?;
                if first.0 != 0 || first != second {
                    return Err(format!("{args:?}: exit {} / {}, outputs equal: {}", first.0, second.0, first.1 == second.1));
                }
                runs += 1;
            }
        }
        Ok(format!("{runs} command pairs byte-identical; 4 emitted files validate"))
    })();
    let _ = std::fs::remove_dir_all(&dir);
    result
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("derived-structure laws", derived_laws),
        ("defining identities", defining_identities),
        ("closed form vs recursion", closed_form),
        ("path independence", path_independence),
        ("twisting inverse", twisting_inverse),
        ("shuffle laws", shuffle_laws),
        ("primitives", primitives),
        ("iota homomorphism", iota_homomorphism),
        ("infinitesimal laws", infinitesimal_laws),
        ("adjunction at truncation", adjunction),
        ("radical", radical),
        ("cli determinism", cli_determinism),
    ];
    let results: Vec<Outcome> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria.iter().map(|(_, f)| scope.spawn(f)).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("panicked".into())))
            .collect()
    });
    let mut failed = 0;
    for (k, ((name, _), result)) in criteria.iter().zip(&results).enumerate() {
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: pass ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL\n{detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
