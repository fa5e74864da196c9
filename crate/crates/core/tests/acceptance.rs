//! One pass/fail line per acceptance criterion. Runs without the libtest
//! harness so every line is printed; exits nonzero if any criterion fails.

use std::process::Command;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use parallelepiped::algebra::{cube_group, CubeKind, FiniteGroup, Subgroup};
use parallelepiped::analysis::{analyze, fiber_group, in_structure_group, is_nil, nil_realization, structure_group_enumerate};
use parallelepiped::catalog::{
    abelian_structure, counterexample, find_isomorphism, group_structure, inverse_image, is_isomorphism, restrict,
    tensor_embed,
};
use parallelepiped::io::{build_structure, parse_structure, StructureFile};
use parallelepiped::norms::{
    csg_check, dft_oracle_u2, gram_matrix, transitivity_test, u2, u3, ComplexFunction, TransitivityVerdict,
};
use parallelepiped::structures::{strong_quotient, verify_cube, verify_grid, ParallelepipedStructure};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: parallelepiped::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

struct Suite {
    failed: usize,
}

impl Suite {
    fn run(&mut self, id: u32, name: &str, limit_s: Option<f64>, f: impl FnOnce() -> Outcome) {
        let t = Instant::now();
        let mut r = f();
        let secs = t.elapsed().as_secs_f64();
        if let (Ok(_), Some(limit)) = (&r, limit_s) {
            if secs >= limit {
                r = Err(format!("took {secs:.1} s, bound {limit} s"));
            }
        }
        match r {
            Ok(detail) => println!("[PASS] {id:>2} {name}: {detail} ({secs:.2} s)"),
            Err(detail) => {
                self.failed += 1;
                println!("[FAIL] {id:>2} {name}: {detail} ({secs:.2} s)");
            }
        }
    }
}

fn cyclic(n: usize) -> ParallelepipedStructure {
    abelian_structure(&FiniteGroup::cyclic(n).unwrap(), None).unwrap()
}

fn random_function(n: usize, rng: &mut ChaCha8Rng) -> ComplexFunction {
    ComplexFunction::new((0..n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect())
        .unwrap()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs())
}

fn axiom_suite() -> Outcome {
    let specs = [
        "abelian:cyclic:2",
        "abelian:cyclic:3",
        "abelian:cyclic:4",
        "abelian:prod:cyclic:2,cyclic:2",
        "abelian:cyclic:4,sub=2",
        "group:heis:2",
        "coset:heis:2,F=center,Gamma=4",
        "counterexample:3",
        "counterexample:5",
    ];
    let h = FiniteGroup::heisenberg(2).unwrap();
    let gamma = Subgroup::generated(&h, &[4]);
    ensure!(gamma.order() == 2, "Gamma has order {}", gamma.order());
    ensure!(gamma.intersection(&parallelepiped::algebra::center(&h)).is_trivial(), "Gamma meets the center");
    for spec in specs {
        let s = lib(build_structure(spec))?;
        let g = verify_grid(&s.grid());
        ensure!(g.passed(), "{spec}: {}", g.first_failure());
        let c = verify_cube(&s);
        ensure!(c.passed(), "{spec}: {}", c.first_failure());
        let out = Command::new(env!("CARGO_BIN_EXE_pp")).args(["verify", spec]).output().map_err(|e| e.to_string())?;
        ensure!(out.status.code() == Some(0), "pp verify {spec} exited {:?}", out.status.code());
    }
    Ok(format!("{} constructor outputs pass, pp verify exits 0", specs.len()))
}

fn exact_counts() -> Outcome {
    for n in [2u64, 3, 4] {
        let s = cyclic(n as usize);
        ensure!(s.quad_count() == n.pow(3), "N = {n}: |P| = {}", s.quad_count());
        ensure!(s.oct_count() == n.pow(4), "N = {n}: |Q| = {}", s.oct_count());
    }
    let e = lib(cube_group(&FiniteGroup::heisenberg(2).unwrap(), CubeKind::Edge2))?;
    ensure!(e.order() == 1024, "heisenberg edge group has order {}", e.order());
    Ok("|P| = N^3, |Q| = N^4 for N = 2,3,4; |G^[2,1]| = 1024".into())
}

fn seminorm_laws() -> Outcome {
    let tol = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let structures = [
        ("cyclic 8", cyclic(8)),
        ("cyclic 16", cyclic(16)),
        ("heisenberg 2", group_structure(&FiniteGroup::heisenberg(2).unwrap(), None).unwrap()),
        ("counterexample 3", counterexample(3).unwrap()),
    ];
    let mut checked = 0;
    for (name, s) in &structures {
        let n = s.size();
        let p = s.grid();
        for _ in 0..100 {
            let f = random_function(n, &mut rng);
            let g = random_function(n, &mut rng);
            let c = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let fg = lib(f.add(&g))?;
            for k in [2u8, 3] {
                let norm = |h: &ComplexFunction| -> Result<f64, String> {
                    Ok(if k == 2 { lib(u2(h, &p))?.norm } else { lib(u3(h, s))?.norm })
                };
                let (nf, ng) = (norm(&f)?, norm(&g)?);
                let nc = norm(&f.scale(c))?;
                ensure!(rel_close(nc, c.norm() * nf, tol), "{name} u{k}: homogeneity {nc} vs {}", c.norm() * nf);
                let nfg = norm(&fg)?;
                ensure!(nfg <= (nf + ng) * (1.0 + tol), "{name} u{k}: subadditivity {nfg} > {nf} + {ng}");
            }
            let fs: Vec<ComplexFunction> = (0..4).map(|_| random_function(n, &mut rng)).collect();
            let (lhs, rhs) = lib(csg_check([&fs[0], &fs[1], &fs[2], &fs[3]], &p))?;
            ensure!(lhs <= rhs * (1.0 + tol), "{name}: CSG {lhs} > {rhs}");
            checked += 1;
        }
    }
    Ok(format!("{checked} seeded functions over {} structures", structures.len()))
}

fn indicator_difference(n: usize, a: usize, b: usize) -> ComplexFunction {
    let mut v = vec![0.0; n];
    v[a] = 1.0;
    v[b] = -1.0;
    ComplexFunction::from_real(&v).unwrap()
}

fn norm_iff_strong() -> Outcome {
    // two-to-one pullback of cyclic 3: points 0 and 1 share a fiber
    let w = lib(inverse_image(&cyclic(3), &[0, 0, 1, 1, 2, 2]))?;
    ensure!(!w.grid().verify().strong, "pullback grid is strong");
    let f = indicator_difference(6, 0, 1);
    let v2 = lib(u2(&f, &w.grid()))?;
    let v3 = lib(u3(&f, &w))?;
    ensure!(v2.exact && v2.sum_re == 0.0 && v3.exact && v3.sum_re == 0.0, "pullback: sums {} {}", v2.sum_re, v3.sum_re);

    let s3 = group_structure(&FiniteGroup::symmetric(3).unwrap(), None).unwrap();
    ensure!(!s3.is_strong(), "S3 structure is strong");
    let q = lib(strong_quotient(&s3))?;
    let class = q.classes.iter().find(|c| c.len() > 1).ok_or("S3 quotient has no nontrivial class")?;
    let g = indicator_difference(6, class[0], class[1]);
    let z = lib(u3(&g, &s3))?;
    ensure!(z.exact && z.sum_re == 0.0, "S3: u3 sum {}", z.sum_re);

    let strong = [
        ("cyclic 2", cyclic(2)),
        ("cyclic 5", cyclic(5)),
        ("cyclic 8", cyclic(8)),
        ("2x2", abelian_structure(&lib(parallelepiped::io::parse_group("prod:cyclic:2,cyclic:2"))?, None).unwrap()),
        ("cyclic 3", cyclic(3)),
        ("cyclic 4", cyclic(4)),
    ];
    let mut pairs = 0;
    for (name, s) in &strong {
        let p = s.grid();
        ensure!(p.verify().strong, "{name}: P is weak");
        for a in 0..s.size() {
            for b in a + 1..s.size() {
                let v = lib(u2(&indicator_difference(s.size(), a, b), &p))?;
                ensure!(v.norm > 0.0, "{name}: u2(1_{a} - 1_{b}) = 0");
                pairs += 1;
            }
        }
    }
    Ok(format!("exact zeros on the pullback (u2, u3) and S3 (u3); {pairs} point pairs separated by u2"))
}

fn fourier_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut worst: f64 = 0.0;
    for n in [4usize, 8, 16, 64] {
        let p = cyclic(n).grid();
        for _ in 0..100 {
            let f = random_function(n, &mut rng);
            let a = lib(u2(&f, &p))?.norm;
            let b = lib(dft_oracle_u2(&f, &p))?;
            let rel = (a - b).abs() / a;
            ensure!(rel <= 1e-9, "N = {n}: {a} vs {b}");
            worst = worst.max(rel);
        }
    }
    Ok(format!("400 functions, worst relative error {worst:.1e}"))
}

fn trace_identities() -> Outcome {
    for n in [2usize, 3, 4] {
        let m = lib(gram_matrix(n, &cyclic(n).grid().quads()))?;
        ensure!(m.trace == (n * n) as u64, "n = {n}: trace {}", m.trace);
        ensure!(m.trace_sq == (n * n * n) as u64, "n = {n}: trace(M^2) {}", m.trace_sq);
        ensure!(m.satisfies_square_identity(), "n = {n}: M^2 != nM");
    }
    let text = include_str!("data/nontransitive_6.pg");
    let StructureFile::Grid(p) = lib(parse_structure(text, std::path::Path::new(".")))? else {
        return Err("witness is not a pgram file".into());
    };
    let m = lib(gram_matrix(p.size(), &p.quads()))?;
    match lib(transitivity_test(&m))? {
        TransitivityVerdict::PositivityFails { eigenvalue } => {
            ensure!(eigenvalue < -1e-3, "eigenvalue {eigenvalue}");
            Ok(format!("exact for n = 2,3,4; stored 6-point witness has eigenvalue {eigenvalue:.6}"))
        }
        v => Err(format!("witness verdict {v:?}")),
    }
}

fn counterexample_verdicts() -> Outcome {
    for p in [3u64, 5] {
        let r = lib(analyze(&lib(counterexample(p as usize))?))?;
        ensure!(r.base.0 == vec![p], "p = {p}: base {:?}", r.base.0);
        ensure!(r.fiber.0 == vec![p], "p = {p}: fiber {:?}", r.fiber.0);
        for c in &r.classes {
            if c.s != 0 {
                ensure!(c.invariants.0 == vec![p * p], "p = {p}, s = {}: {:?}", c.s, c.invariants.0);
            }
        }
        for sp in &r.splits {
            ensure!(sp.splits == (sp.s == 0), "p = {p}, s = {}: splits = {}", sp.s, sp.splits);
        }
        ensure!(!r.nil, "p = {p}: nil");
    }
    Ok("p = 3: [3], [3], [9]; p = 5: [5], [5], [25]; split only at s = 0; not nil".into())
}

fn embedding_resolution() -> Outcome {
    let s = lib(counterexample(3))?;
    let t = lib(tensor_embed(&s, &FiniteGroup::cyclic(9).unwrap(), None))?;
    let r = lib(analyze(&t.structure))?;
    ensure!(r.splits.iter().all(|x| x.splits), "some s does not split");
    ensure!(r.nil, "embedding is not nil");
    let back = lib(restrict(&t.structure, &t.embedding))?;
    let mut sorted = t.embedding.clone();
    sorted.sort_unstable();
    let map: Vec<usize> = t.embedding.iter().map(|y| sorted.binary_search(y).unwrap()).collect();
    ensure!(lib(is_isomorphism(&s, &back, &map))?, "restriction is not the original structure");
    let dir = std::env::temp_dir().join(format!("pp-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let pp = |args: &[&str]| Command::new(env!("CARGO_BIN_EXE_pp")).current_dir(&dir).args(args).output();
    pp(&["construct", "counterexample:3", "-o", "ce3.pp"]).map_err(|e| e.to_string())?;
    let o = pp(&["embed", "ce3.pp", "cyclic:9", "--expect", "nil"]).map_err(|e| e.to_string())?;
    let _ = std::fs::remove_dir_all(&dir);
    ensure!(o.status.code() == Some(0), "pp embed exited {:?}", o.status.code());
    Ok(format!("{} points, all {} classes split, nil; restriction matches exactly", t.structure.size(), r.splits.len()))
}

fn structure_group_membership() -> Outcome {
    let s = lib(counterexample(3))?;
    let fg = lib(fiber_group(&s))?;
    for u in &fg.action {
        ensure!(lib(in_structure_group(u, &s))?, "fiber action {u:?} is not a member");
    }
    let non_member = [4, 1, 2, 3, 0, 5, 6, 7, 8];
    ensure!(!lib(in_structure_group(&non_member, &s))?, "stored non-member passes");

    let h = FiniteGroup::heisenberg(2).unwrap();
    let c = lib(parallelepiped::catalog::coset_structure(
        &h,
        &parallelepiped::algebra::center(&h),
        &Subgroup::generated(&h, &[4]),
    ))?;
    ensure!(c.size() == 4, "coset structure has {} points", c.size());
    let members = lib(structure_group_enumerate(&c, 4))?;
    let transitive = (0..4).all(|y| members.iter().any(|g| g[0] == y));
    let nil = lib(is_nil(&c))?.nil;
    ensure!(transitive == nil, "transitive = {transitive}, split verdict = {nil}");
    let real = lib(nil_realization(&c, 4))?;
    ensure!(real.realized, "coset structure not rebuilt from its structure group");
    Ok(format!(
        "{} fiber translations are members; 4-point coset: |G| = {}, transitive = {transitive} = nil",
        fg.action.len(),
        members.len()
    ))
}

fn strong_quotient_correctness() -> Outcome {
    let s3 = group_structure(&FiniteGroup::symmetric(3).unwrap(), None).unwrap();
    let q = lib(strong_quotient(&s3))?;
    ensure!(q.structure.size() == 2, "quotient has {} points", q.structure.size());
    match lib(find_isomorphism(&q.structure, &cyclic(2)))? {
        Some(m) => Ok(format!("quotient of S3 is the cyclic 2 structure via {m:?}")),
        None => Err("no relabeling matches".into()),
    }
}

fn main() {
    let mut suite = Suite { failed: 0 };
    suite.run(1, "axiom suite", Some(60.0), axiom_suite);
    suite.run(2, "exact counts", None, exact_counts);
    suite.run(3, "seminorm laws", None, seminorm_laws);
    suite.run(4, "norm iff strong", None, norm_iff_strong);
    suite.run(5, "fourier oracle", Some(30.0), fourier_oracle);
    suite.run(6, "trace identities", None, trace_identities);
    suite.run(7, "counterexample verdicts", None, counterexample_verdicts);
    suite.run(8, "embedding resolution", None, embedding_resolution);
    suite.run(9, "structure group membership", Some(120.0), structure_group_membership);
    suite.run(10, "strong quotient", None, strong_quotient_correctness);
    println!("{} of 10 criteria pass", 10 - suite.failed);
    if suite.failed > 0 {
        std::process::exit(1);
    }
}
