//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test --release -p rockcore --test acceptance`.

use std::process::ExitCode;
use std::time::Instant;

use rockcore::decmat::{adjustment_matrix, full_decmatrix, rock_decmatrix};
use rockcore::doubles::{triangular_quiver, verify_double, Preset};
use rockcore::lr::{binomial, lr_coeff, syt_count};
use rockcore::partitions::{
    abacus_of, dominance, dominated_by, is_rouquier, p_core, p_quotient, p_weight, partitions_of,
    quotient_vector, reconstruct, rouquier_core, vector_dominance, RockBlock,
};
use rockcore::powersum::power_sum_complex;
use rockcore::schiver::{check_theta, OddForm, Quiver, StarConvention};
use rockcore::walk::{walk_complex, WalkAlgebra};
use rockcore::weyl::{block_submatrix, oracle_provider, schur_decmatrix};
use rockcore::wreath::wreath_localization;
use rockcore::{Label, LabeledMatrix, Partition};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1_abacus_figure() -> Outcome {
    let ab = abacus_of(&part("6,4,2,2,1,1"), 3, 15).map_err(err)?;
    let want: [Vec<usize>; 3] = [vec![0, 1, 2], (0..=4).collect(), (0..=6).collect()];
    for (s, w) in want.iter().enumerate() {
        ensure(ab.runner_rows(s) == *w, || {
            format!("runner {s}: {:?}", ab.runner_rows(s))
        })?;
    }
    Ok(())
}

fn c2_rouquier_examples() -> Outcome {
    let c = rouquier_core(3, 3).map_err(err)?;
    ensure(c == part("6,4,2,2,1,1"), || {
        format!("rouquier_core(3,3) = {c}")
    })?;
    ensure(is_rouquier(&c, 3, 3).map_err(err)?, || {
        "(6,4,2,2,1,1) not Rouquier".into()
    })?;
    let c = rouquier_core(2, 2).map_err(err)?;
    ensure(c == part("1"), || format!("rouquier_core(2,2) = {c}"))?;
    // the principal block of Σ_5 in characteristic 2
    let block = RockBlock::rouquier(2, 2).map_err(err)?;
    let sizes: Vec<usize> = block
        .partitions()
        .map_err(err)?
        .iter()
        .map(Partition::size)
        .collect();
    ensure(sizes.iter().all(|&s| s == 5), || {
        format!("block sizes {sizes:?}")
    })
}

fn c3_round_trips() -> Outcome {
    for p in [2, 3, 5] {
        for n in 0..=12 {
            for lam in partitions_of(n) {
                let core = p_core(&lam, p).map_err(err)?;
                let w = p_weight(&lam, p).map_err(err)?;
                ensure(core.size() + p * w == n, || {
                    format!("{lam} p={p}: |core| + pw ≠ |λ|")
                })?;
                // any bead count at least the length works
                for m in [lam.len(), lam.len() + 1, lam.len() + p + 2] {
                    let q = p_quotient(&lam, p, m).map_err(err)?;
                    ensure(q.weight() == w, || {
                        format!("{lam} p={p} m={m}: quotient weight")
                    })?;
                    let back = reconstruct(&core, &q.components, p, m).map_err(err)?;
                    ensure(back == lam, || {
                        format!("{lam} p={p} m={m} reconstructs to {back}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn c4_dominance_embedding() -> Outcome {
    for w in 1..=3 {
        let block = RockBlock::rouquier(3, w).map_err(err)?;
        let parts = block.partitions().map_err(err)?;
        let vecs = parts
            .iter()
            .map(|l| quotient_vector(&block.quotient(l)?, w))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        for (i, l) in parts.iter().enumerate() {
            for (j, m) in parts.iter().enumerate() {
                let a = dominance(l, m).map_err(err)?;
                let b = vector_dominance(&vecs[i], &vecs[j]).map_err(err)?;
                ensure(a == b, || {
                    format!("w={w} {l} vs {m}: {a:?} but quotient vectors give {b:?}")
                })?;
            }
        }
    }
    Ok(())
}

fn c5_lr_suite() -> Outcome {
    let by_size: Vec<Vec<Partition>> = (0..=8).map(partitions_of).collect();
    for a in 0..=8 {
        for b in 0..=8 - a {
            for mu in &by_size[a] {
                for nu in &by_size[b] {
                    let mut weighted: u128 = 0;
                    for lam in &by_size[a + b] {
                        let c = lr_coeff(lam, mu, nu);
                        ensure(c == lr_coeff(lam, nu, mu), || {
                            format!("c({lam};{mu},{nu}) not symmetric")
                        })?;
                        ensure(
                            c == lr_coeff(&lam.conjugate(), &mu.conjugate(), &nu.conjugate()),
                            || format!("c({lam};{mu},{nu}) not conjugation invariant"),
                        )?;
                        weighted += c as u128 * syt_count(lam);
                    }
                    // dimension count of Ind_{Σ_a×Σ_b}^{Σ_{a+b}} S^μ ⊠ S^ν
                    let want = binomial((a + b) as u128, a as u128) * syt_count(mu) * syt_count(nu);
                    ensure(weighted == want, || {
                        format!("sum rule fails for {mu}, {nu}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn label_partition(block: &RockBlock, l: &Label) -> Result<Partition, String> {
    match l {
        Label::Quotient(c) => block.reconstruct(c).map_err(err),
        Label::Partition(p) => Ok(p.clone()),
    }
}

fn c6_rock_unitriangular() -> Outcome {
    for (p, w) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let block = RockBlock::rouquier(p, w).map_err(err)?;
        let dec = rock_decmatrix(p, w).map_err(err)?;
        let rows = dec
            .row_labels
            .iter()
            .map(|l| label_partition(&block, l))
            .collect::<Result<Vec<_>, _>>()?;
        let cols = dec
            .col_labels
            .iter()
            .map(|l| label_partition(&block, l))
            .collect::<Result<Vec<_>, _>>()?;
        for (j, mu) in cols.iter().enumerate() {
            let diag = rows
                .iter()
                .position(|r| r == mu)
                .ok_or_else(|| format!("column {mu} has no row"))?;
            for (i, lam) in rows.iter().enumerate() {
                let d = dec.entries[i][j];
                if i == diag {
                    ensure(d == 1, || format!("p={p} w={w}: d[{mu},{mu}] = {d}"))?;
                } else if d != 0 {
                    ensure(i > diag && dominated_by(lam, mu) && lam != mu, || {
                        format!("p={p} w={w}: d[{lam},{mu}] = {d} off the dominance support")
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// Replace quotient labels by the partitions they index in the block.
fn relabel(m: &LabeledMatrix, block: &RockBlock) -> Result<LabeledMatrix, String> {
    let map = |ls: &[Label]| -> Result<Vec<Label>, String> {
        ls.iter()
            .map(|l| label_partition(block, l).map(Label::Partition))
            .collect()
    };
    LabeledMatrix::new(map(&m.row_labels)?, map(&m.col_labels)?, m.entries.clone()).map_err(err)
}

fn c7_full_vs_oracle() -> Outcome {
    let block = RockBlock::rouquier(2, 2).map_err(err)?;
    let full = relabel(
        &full_decmatrix(2, 2, &oracle_provider(2)).map_err(err)?,
        &block,
    )?;
    let oracle =
        block_submatrix(&schur_decmatrix(5, 5, 2).map_err(err)?, 2, &part("1")).map_err(err)?;
    ensure(full.row_labels.len() == oracle.row_labels.len(), || {
        "row counts differ".into()
    })?;
    // Specht rows λ, p-regular columns μ against Weyl rows λ', p-restricted columns μ'
    for (i, lam) in full.row_labels.iter().enumerate() {
        for (j, mu) in full.col_labels.iter().enumerate() {
            let (Label::Partition(l), Label::Partition(m)) = (lam, mu) else {
                unreachable!()
            };
            let want = oracle
                .get(
                    &Label::Partition(l.conjugate()),
                    &Label::Partition(m.conjugate()),
                )
                .ok_or_else(|| {
                    format!(
                        "oracle has no entry for ({}, {})",
                        l.conjugate(),
                        m.conjugate()
                    )
                })?;
            ensure(full.entries[i][j] == want, || {
                format!(
                    "[S^{l}:D^{m}] = {} but the oracle gives {want}",
                    full.entries[i][j]
                )
            })?;
        }
    }
    let restricted = oracle
        .col_labels
        .iter()
        .filter(|l| matches!(l, Label::Partition(m) if m.is_p_restricted(2)))
        .count();
    ensure(full.col_labels.len() == restricted, || {
        "column counts differ".into()
    })
}

fn c8_semisimple() -> Outcome {
    let adj = adjustment_matrix(5, 2, &oracle_provider(5)).map_err(err)?;
    ensure(adj.is_identity(), || {
        "adjustment matrix is not the identity".into()
    })?;
    let full = full_decmatrix(5, 2, &oracle_provider(5)).map_err(err)?;
    ensure(full == rock_decmatrix(5, 2).map_err(err)?, || {
        "full ≠ rock".into()
    })
}

fn c9_doubles() -> Outcome {
    for c in [0, 2] {
        for (preset, r) in [(Preset::S1, 4), (Preset::Tri(3), 1), (Preset::Schur(2), 2)] {
            let data = preset.build(r, c).map_err(err)?;
            let rep = verify_double(&preset.to_string(), &data, r, c).map_err(err)?;
            ensure(rep.passed(), || {
                format!("{preset} char {c}: {:?}", rep.failures())
            })?;
            for d in &rep.degrees {
                ensure(d.nilpotency_index.is_some_and(|k| k <= d.r + 1), || {
                    format!(
                        "{preset} r={} char {c}: 𝒩 nilpotency index {:?}",
                        d.r, d.nilpotency_index
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn cycle_length(perm: &[usize]) -> usize {
    let mut i = perm[0];
    let mut len = 1;
    while i != 0 && len <= perm.len() {
        i = perm[i];
        len += 1;
    }
    len
}

fn c10_triangular() -> Outcome {
    for n in 1..=4 {
        for c in [0, 2] {
            let rep = triangular_quiver(n, c).map_err(err)?;
            ensure(rep.passed(), || format!("n={n} char {c}: {:?}", rep.checks))?;
            ensure(rep.dim == n * (n + 1), || format!("n={n}: dim {}", rep.dim))?;
            let perm = rep
                .arrow_permutation
                .as_ref()
                .ok_or_else(|| format!("n={n}: arrows are not a permutation"))?;
            ensure(cycle_length(perm) == n, || {
                format!("n={n}: arrows {perm:?} are not an n-cycle")
            })?;
            // Loewy length n + 1: J^n ≠ 0 = J^{n+1}
            let dims = &rep.loewy.radical_power_dims;
            ensure(
                dims.len() == n + 2 && dims[n] > 0 && dims[n + 1] == 0,
                || format!("n={n}: J^k dims {dims:?}"),
            )?;
        }
    }
    Ok(())
}

fn c11_theta() -> Outcome {
    for c in [0, 2] {
        for n in 1..=2 {
            for check in
                check_theta(n, 2, c, OddForm::Exterior, StarConvention::default()).map_err(err)?
            {
                ensure(check.passed() && check.involutive == Some(true), || {
                    format!("n={n} char {c}: {check:?}")
                })?;
            }
        }
    }
    Ok(())
}

fn c12_wreath() -> Outcome {
    for r in 1..=3usize {
        let expected = (1usize << r) * (1..=r).product::<usize>();
        for c in [0, 2] {
            let rep = wreath_localization(r, r, c).map_err(err)?;
            ensure(
                rep.expected_dim == expected && rep.corner_dim == expected,
                || {
                    format!(
                        "r={r} char {c}: corner dimension {} (want {expected})",
                        rep.corner_dim
                    )
                },
            )?;
            ensure(rep.passed(), || format!("r={r} char {c}: {:?}", rep.checks))?;
        }
    }
    Ok(())
}

fn c13_walks() -> Outcome {
    for (n, r) in [(1, 1), (1, 2), (2, 2)] {
        for c in [0, 2] {
            for (alg, window) in [(WalkAlgebra::Schiver, r + 2), (WalkAlgebra::Double, r + 1)] {
                let rep = walk_complex(alg, n, r, window, c).map_err(err)?;
                ensure(rep.passed() && rep.complex.is_exact(), || {
                    format!("{alg:?} n={n} r={r} char {c}: {:?}", rep.complex)
                })?;
            }
        }
    }
    Ok(())
}

/// Semistandard tableaux of shape λ with entries ≤ n, counted row by row.
fn ssyt_count(lambda: &Partition, n: usize) -> usize {
    fn rows(shape: &[usize], n: usize, prev: Option<&[usize]>) -> usize {
        let Some((&len, rest)) = shape.split_first() else {
            return 1;
        };
        let mut total = 0;
        let mut row = vec![0; len];
        fill(&mut row, 0, n, prev, &mut |r| {
            total += rows(rest, n, Some(r))
        });
        total
    }
    fn fill(
        row: &mut Vec<usize>,
        k: usize,
        n: usize,
        above: Option<&[usize]>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if k == row.len() {
            f(row);
            return;
        }
        let lo = if k > 0 { row[k - 1] } else { 0 };
        let lo = above.map_or(lo, |a| lo.max(a[k] + 1));
        for v in lo..n {
            row[k] = v;
            fill(row, k + 1, n, above, f);
        }
    }
    rows(lambda.parts(), n, None)
}

fn c14_power_sums() -> Outcome {
    for r in 1..=3 {
        let rep = power_sum_complex(&Quiver::linear(1), 0, r, r).map_err(err)?;
        ensure(rep.passed(), || format!("r={r}: {:?}", rep.checks))?;
        for r1 in 1..=r {
            let want = ssyt_count(&Partition::hook(r1, r - r1), r);
            let got = rep.complex.homology[r1 - 1];
            ensure(got == want, || {
                format!(
                    "r={r}: H at C_{{{r1},{}}} has dim {got}, want {want}",
                    r - r1
                )
            })?;
        }
    }
    Ok(())
}

fn c15_oracle_self_check() -> Outcome {
    let m = schur_decmatrix(2, 2, 2).map_err(err)?;
    let labels = vec![Label::Partition(part("2")), Label::Partition(part("1,1"))];
    ensure(
        m.row_labels == labels && m.entries == vec![vec![1, 1], vec![0, 1]],
        || format!("{m:?}"),
    )?;
    for r in 1..=4 {
        for n in 1..=r {
            for p in [2u64, 3, 5, 7].into_iter().filter(|&p| p as usize > r) {
                let m = schur_decmatrix(n, r, p).map_err(err)?;
                ensure(m.is_identity(), || {
                    format!("schur_decmatrix({n},{r},{p}) is not the identity")
                })?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 15] = [
        ("abacus figure", c1_abacus_figure),
        ("Rouquier cores", c2_rouquier_examples),
        ("core/quotient round trips", c3_round_trips),
        ("dominance embedding", c4_dominance_embedding),
        ("Littlewood-Richardson suite", c5_lr_suite),
        ("Rock matrix unitriangular", c6_rock_unitriangular),
        ("full matrix vs Schur oracle", c7_full_vs_oracle),
        ("semisimple degeneration", c8_semisimple),
        ("double verification", c9_doubles),
        ("triangular double is a cycle", c10_triangular),
        ("theta automorphism", c11_theta),
        ("wreath localization", c12_wreath),
        ("walk complexes", c13_walks),
        ("power-sum complexes", c14_power_sums),
        ("oracle self-check", c15_oracle_self_check),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS criterion {}: {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
