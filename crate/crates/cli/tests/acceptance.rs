//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use primlat::classifier::{definite_catalog, genus_of, same_genus};
use primlat::discforms::{disc_bilinear, disc_quadratic, forms_isomorphic, milgram_signature, negate, ISOMORPHISM_LIMIT};
use primlat::lattice::is_primitive;
use primlat::oracle::{isometry_small, DEFAULT_BUDGET};
use primlat::surface::{
    blow_up_invariants, derive_invariants, enriques_class_row, enumerate_candidates, intersection_lattice,
    primitive_lattice, Embedding, ENRIQUES_CLASSES,
};
use primlat::{Block, BlockKind, Lattice, LatticeVector, NamedDecomposition, Parity, Signature};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn nd(s: &str) -> NamedDecomposition {
    s.parse().expect("valid decomposition")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed())
}

fn c1_k3_enriques() -> Outcome {
    let (r, dt) = timed(|| -> Result<(), String> {
        for ((b1, c1sq, c2), want) in [((0, 0, 24), "U^3 + E8(-1)^2"), ((0, 0, 12), "U + E8(-1)")] {
            let inv = derive_invariants(b1, c1sq, c2).map_err(|e| e.to_string())?;
            let h = intersection_lattice(&inv, Parity::Even).map_err(|e| e.to_string())?;
            check(h == nd(want), || format!("({b1},{c1sq},{c2}) gave {h}, expected {want}"))?;
        }
        Ok(())
    });
    r?;
    check(dt < Duration::from_secs(1), || format!("took {dt:?}"))?;
    Ok(format!("K3 -> U^3 + E8(-1)^2, Enriques -> U + E8(-1) in {dt:?}"))
}

type Row = (i64, i64, Vec<(i64, i64)>, Option<(usize, usize)>);

fn rows(c1sq: i64, with_st: bool) -> Vec<Row> {
    enumerate_candidates(c1sq)
        .into_iter()
        .map(|r| (r.chi, r.c2, r.pg_q, if with_st { r.st } else { None }))
        .collect()
}

fn c2_candidates_c1sq_1() -> Outcome {
    let want: Vec<Row> = vec![
        (1, 11, vec![(0, 0)], Some((0, 1))),
        (2, 23, vec![(1, 0)], Some((2, 2))),
        (3, 35, vec![(2, 0)], Some((4, 3))),
    ];
    let got = rows(1, true);
    check(got == want, || format!("got {got:?}"))?;
    Ok("3 rows (chi, c2, (p_g,q), (s,t)) exact".into())
}

fn c3_candidates_c1sq_2() -> Outcome {
    let want: Vec<Row> = vec![
        (1, 10, vec![(0, 0), (1, 1)], None),
        (2, 22, vec![(1, 0)], None),
        (3, 34, vec![(2, 0)], None),
        (4, 46, vec![(3, 0)], None),
    ];
    let got = rows(2, false);
    check(got == want, || format!("got {got:?}"))?;
    Ok("4 rows (chi, c2, (p_g,q)) exact".into())
}

fn c4_named() -> Outcome {
    let cases = [
        ("Kunev", (0, 1, 23), 1, "U^2 + E8(-1)^2", None),
        ("Horikawa-1", (0, 1, 35), 1, "U^4 + E8(-1)^3", None),
        ("Horikawa-2", (0, 2, 46), 2, "<2> + U^5 + E8(-1)^4", Some(Signature::new(6, 37))),
        ("p_g = q = 1", (2, 2, 10), 2, "<2> + U + E8(-1)", Some(Signature::new(2, 9))),
    ];
    for (label, (b1, c1sq, c2), hsq, want, sig) in cases {
        let inv = derive_invariants(b1, c1sq, c2).map_err(|e| e.to_string())?;
        let emb = Embedding {
            parity: Parity::Odd,
            hsq,
            h_characteristic: true,
            canonically_polarized: false,
        };
        let r = primitive_lattice(&inv, emb).map_err(|e| format!("{label}: {e}"))?;
        let want = nd(want);
        check(r.named.label() == Some(want.to_string()), || format!("{label}: named {:?}", r.named.label()))?;
        let g_expected = genus_of(&want.lattice().map_err(|e| e.to_string())?);
        let g_built = genus_of(&r.gram);
        let same = same_genus(&g_built, &g_expected).map_err(|e| e.to_string())?;
        check(same, || format!("{label}: constructed Gram not in the genus of {want}"))?;
        if let Some(s) = sig {
            check(g_built.signature() == s, || format!("{label}: signature {}", g_built.signature()))?;
        }
    }
    Ok("Kunev, Horikawa-1, Horikawa-2 (6,37), p_g=q=1 (2,9) named and genus-equal".into())
}

fn c5_enriques_complement() -> Outcome {
    let (r, dt) = timed(|| -> Result<(), String> {
        let ambient = nd("U + E8(-1)").lattice().map_err(|e| e.to_string())?;
        let mut ef = vec![0i64; 10];
        ef[0] = 1;
        ef[1] = 1;
        let c = ambient.orthogonal_complement(&LatticeVector::from(ef)).map_err(|e| e.to_string())?;
        let target = nd("<-2> + E8(-1)").lattice().map_err(|e| e.to_string())?;
        let same = same_genus(&genus_of(&c.lattice), &genus_of(&target)).map_err(|e| e.to_string())?;
        check(same, || "complement not in the genus of <-2> + E8(-1)".into())?;
        let o = isometry_small(&c.lattice, &target, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let w = o.witness().ok_or("no isometry found")?;
        check(w.verify(&c.lattice, &target), || "witness does not verify".into())
    });
    r?;
    check(dt < Duration::from_secs(60), || format!("took {dt:?}"))?;
    Ok(format!("(e+f)-perp in U + E8(-1) ~ <-2> + E8(-1), witness verified in {dt:?}"))
}

fn c6_definite_table() -> Outcome {
    let mut bad = Vec::new();
    for k in 1..=8i64 {
        let row = definite_catalog(k).map_err(|e| e.to_string())?;
        let rank_ok = row.lattice.rank() as i64 == 9 - k;
        let det_ok = row.lattice.det().magnitude().to_string() == k.to_string();
        let computed = disc_bilinear(&row.lattice);
        let form_ok = forms_isomorphic(&computed, &row.printed_form).map_err(|e| e.to_string())?;
        if !(rank_ok && det_ok && form_ok) {
            bad.push(format!(
                "row {k} ({}): rank {} det {} form {} vs printed {}",
                row.label,
                row.lattice.rank(),
                row.lattice.det(),
                computed.render(),
                row.printed_form_text
            ));
        }
    }
    check(bad.is_empty(), || bad.join("; "))?;
    Ok("8 rows: rank 9-k, |det| = k, printed forms match".into())
}

fn even_catalog() -> Vec<NamedDecomposition> {
    let mut kinds = vec![BlockKind::U];
    kinds.extend((1..=8).map(BlockKind::A));
    kinds.extend((4..=8).map(BlockKind::D));
    kinds.extend((6..=8).map(BlockKind::E));
    kinds.extend([2, -2, 4, -4, 6, -6, 8, -8].map(BlockKind::Diag));
    let mut out = Vec::new();
    for k in kinds {
        for s in [1i64, -1, 2, -2] {
            if let BlockKind::Diag(_) = k {
                if s.abs() != 1 {
                    continue;
                }
            }
            out.push(NamedDecomposition::new([Block::new(k, s, 1)]).unwrap());
        }
    }
    out
}

fn random_even_sum(rng: &mut ChaCha8Rng, catalog: &[NamedDecomposition]) -> NamedDecomposition {
    let mut d = NamedDecomposition::empty();
    for _ in 0..rng.gen_range(1..=4) {
        let b = &catalog[rng.gen_range(0..catalog.len())];
        if d.rank() + b.rank() <= 12 {
            d = d.plus(b);
        }
    }
    if d.is_empty() {
        d = nd("U");
    }
    d
}

fn c7_milgram() -> Outcome {
    let catalog = even_catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let sums: Vec<NamedDecomposition> = (0..100).map(|_| random_even_sum(&mut rng, &catalog)).collect();
    for d in catalog.iter().chain(&sums) {
        let l = d.lattice().map_err(|e| e.to_string())?;
        let q = disc_quadratic(&l).map_err(|e| format!("{d}: {e}"))?;
        let m = milgram_signature(&q).map_err(|e| format!("{d}: {e}"))? as i64;
        check(m == l.index().rem_euclid(8), || format!("{d}: Gauss sum {m}, index {}", l.index()))?;
    }
    Ok(format!("{} catalog lattices and 100 random sums (rank <= 12)", catalog.len()))
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

fn random_unimodular_gram(rng: &mut ChaCha8Rng) -> Lattice {
    let base = match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(2..=6);
            let d: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
            Lattice::diagonal(&d).unwrap()
        }
        1 => nd(["U", "U^2", "U^3"][rng.gen_range(0..3)]).lattice().unwrap(),
        _ => nd(["U + <1>", "U + <-1>^2", "U^2 + <1>^2", "U + <1>^3"][rng.gen_range(0..4)]).lattice().unwrap(),
    };
    let g = base.gram_i64().unwrap();
    let n = g.len();
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    for _ in 0..12 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = if rng.gen_bool(0.5) { 1 } else { -1 };
        for row in m.iter_mut() {
            row[i] += c * row[j];
        }
    }
    let mt: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect();
    Lattice::from_rows(&mat_mul(&mat_mul(&mt, &g), &m)).unwrap()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn c8_sublattices() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5a7d);
    let mut done = 0;
    let mut attempts = 0;
    while done < 200 {
        attempts += 1;
        if attempts > 200_000 {
            return Err(format!("only {done} samples drawn"));
        }
        let l = random_unimodular_gram(&mut rng);
        let n = l.rank();
        let k = rng.gen_range(1..=2usize.min(n - 1));
        let vs: Vec<Vec<i64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect();
        let content = if k == 1 {
            vs[0].iter().fold(0, |g, &x| gcd(g, x))
        } else {
            let mut g = 0;
            for i in 0..n {
                for j in i + 1..n {
                    g = gcd(g, vs[0][i] * vs[1][j] - vs[0][j] * vs[1][i]);
                }
            }
            g
        };
        if content != 1 {
            continue;
        }
        let basis: Vec<LatticeVector> = vs.into_iter().map(LatticeVector::from).collect();
        let s = match l.sublattice(&basis) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let det_s = s.det();
        let small = det_s.magnitude().to_string().parse::<u64>().is_ok_and(|d| d > 0 && d <= ISOMORPHISM_LIMIT);
        if !small {
            continue;
        }
        let t = l.orthogonal_complement_of(&basis).map_err(|e| e.to_string())?.lattice;
        check(t.det().magnitude() == det_s.magnitude(), || format!("|det S| = {det_s}, |det T| = {}", t.det()))?;
        let ok = forms_isomorphic(&disc_bilinear(&t), &negate(&disc_bilinear(&s))).map_err(|e| e.to_string())?;
        check(ok, || format!("S = {s}: disc forms do not negate"))?;
        done += 1;
    }
    Ok("200 primitive sublattices of rank 1-2: |det S| = |det T|, b_T = -b_S".into())
}

fn c9_characteristic_complements() -> Outcome {
    let mut count = 0;
    let mut skipped = 0;
    for rank in 1..=4u32 {
        for code in 0..4usize.pow(rank) {
            let d: Vec<i64> = (0..rank).map(|i| [1, -1, 3, -3][(code >> (2 * i)) & 3]).collect();
            let l = Lattice::diagonal(&d).unwrap();
            for vcode in 0..5usize.pow(rank) {
                let mut x = vcode;
                let v: Vec<i64> = (0..rank)
                    .map(|_| {
                        let c = (x % 5) as i64 - 2;
                        x /= 5;
                        c
                    })
                    .collect();
                let norm: i64 = v.iter().zip(&d).map(|(a, e)| a * a * e).sum();
                if norm == 0 {
                    continue;
                }
                let v = LatticeVector::from(v);
                if !is_primitive(&v).unwrap() {
                    skipped += 1;
                    continue;
                }
                let c = l.orthogonal_complement(&v).map_err(|e| e.to_string())?;
                let even = c.lattice.parity() == Parity::Even;
                let ch = l.is_characteristic(&v).map_err(|e| e.to_string())?;
                check(even == ch, || format!("{d:?}, v = {v}: complement even {even}, characteristic {ch}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} primitive vectors checked ({skipped} non-primitive skipped)"))
}

fn c10_blow_up() -> Outcome {
    let mut n = 0;
    for class in ENRIQUES_CLASSES {
        let row = enriques_class_row(class).map_err(|e| e.to_string())?;
        for (label, b1, c1sq, c2) in row.instances() {
            let inv = derive_invariants(b1, c1sq, c2).map_err(|e| format!("{label}: {e}"))?;
            let b = blow_up_invariants(&inv).map_err(|e| format!("{label}: {e}"))?;
            let delta = (b.c1sq - inv.c1sq, b.c2 - inv.c2, b.tau - inv.tau, b.b2 - inv.b2);
            check(delta == (-1, 1, -1, 1), || format!("{label}: delta {delta:?}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} instances over {} classes: delta (-1,+1,-1,+1)", ENRIQUES_CLASSES.len()))
}

fn c11_guards() -> Outcome {
    let cases = [
        (["0", "18", "6", "1", "false"], "ExoticBallQuotient"),
        (["0", "18", "6", "2", "true"], "ExoticBallQuotient"),
        (["2", "10", "2", "1", "false"], "OddComplementRankGuard"),
        (["2", "10", "2", "3", "false"], "OddComplementRankGuard"),
    ];
    for ([b1, c1sq, c2, hsq, ch], name) in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_primlat"))
            .args([
                "surface", "classify", "--b1", b1, "--c1sq", c1sq, "--c2", c2, "--h-sq", hsq, "--h-characteristic", ch,
                "--parity", "odd",
            ])
            .output()
            .map_err(|e| e.to_string())?;
        let stderr = String::from_utf8_lossy(&out.stderr);
        check(out.status.code() == Some(3), || format!("({b1},{c1sq},{c2}) exit {:?}", out.status.code()))?;
        check(stderr.contains(name), || format!("({b1},{c1sq},{c2}) stderr: {stderr}"))?;
        check(out.stdout.is_empty(), || format!("({b1},{c1sq},{c2}) printed a result"))?;
    }
    Ok("exotic profile and b2 = 4 odd non-characteristic case exit 3 with no lattice".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("K3/Enriques classification", c1_k3_enriques),
        ("c1^2 = 1 candidate table", c2_candidates_c1sq_1),
        ("c1^2 = 2 candidate table", c3_candidates_c1sq_2),
        ("named decompositions", c4_named),
        ("Enriques complement", c5_enriques_complement),
        ("definite table verification", c6_definite_table),
        ("Milgram consistency", c7_milgram),
        ("primitive sublattice suite", c8_sublattices),
        ("characteristic complement suite", c9_characteristic_complements),
        ("blow-up", c10_blow_up),
        ("guard behavior", c11_guards),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS  criterion {:>2}  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {:>2}  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
