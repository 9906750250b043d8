//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use wg_core::algebra::{frac, int, laurent_expand, RationalFunctionN};
use wg_core::combinatorics::{Domain, Label, Permutation};
use wg_core::counts::{
    all_partitions_up_to, calibrate_palindromic_convention, matching_monotone_counts,
    matching_monotone_series, monotone_counts, monotone_series, orthogonal_proper_series,
    palindromic_monotone_counts, palindromic_monotone_series, proper_count,
};
use wg_core::enumeration::{
    enumerate_orthogonal, enumerate_unitary, max_chi, orthogonal_summary, theorem1_series,
    theorem3_series, unitary_summary,
};
use wg_core::weingarten::{
    gram_wg_orthogonal, gram_wg_unitary, wg_orthogonal, wg_orthogonal_shifted, wg_unitary,
};
use wg_core::wick::{complex_wick_moment, real_wick_moment, Factor, IndexedProduct, Tag};
use wg_core::{BigRational, Partition, Result};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn show(v: &[BigRational]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn census(c: &BTreeMap<Partition, u64>) -> String {
    c.iter()
        .map(|(k, v)| format!("({k}):{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn ints(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| int(x)).collect()
}

/// Monotone transposition sequences in `S_n` whose product has cycletype `alpha`,
/// counted for a fixed target by brute force over all sequences of length `k`.
fn brute_monotone(alpha: &Partition, k: usize) -> u64 {
    let n = alpha.weight();
    let target = Permutation::standard(alpha);
    let mut count = 0;
    let mut stack = vec![(Permutation::identity(Domain::Plain(n)), 0usize, 1usize)];
    while let Some((perm, depth, last_t)) = stack.pop() {
        if depth == k {
            if perm == target {
                count += 1;
            }
            continue;
        }
        for t in last_t.max(2)..=n {
            for s in 1..t {
                let tr =
                    Permutation::transposition(Domain::Plain(n), Label::plain(s), Label::plain(t))
                        .unwrap();
                stack.push((perm.compose(&tr).unwrap(), depth + 1, t));
            }
        }
    }
    count
}

/// Sum over perfect matchings of the list of covariance products.
fn pairings_sum(items: &[usize], cov: &dyn Fn(usize, usize) -> i64) -> i64 {
    if items.is_empty() {
        return 1;
    }
    let first = items[0];
    let mut total = 0;
    for j in 1..items.len() {
        let c = cov(first, items[j]);
        if c != 0 {
            let rest: Vec<usize> = items[1..]
                .iter()
                .enumerate()
                .filter(|&(i, _)| i + 1 != j)
                .map(|(_, &x)| x)
                .collect();
            total += c * pairings_sum(&rest, cov);
        }
    }
    total
}

fn criterion_1() -> Result<(bool, String)> {
    let u = wg_unitary(&p("2"))?;
    let o = wg_orthogonal(&p("2"))?;
    let ok = u == RationalFunctionN::from_roots(int(-1), &[1, 0, -1])
        && o == RationalFunctionN::from_roots(int(-1), &[1, 0, -2]);
    Ok((
        ok,
        format!(
            "U = {}, O = {}",
            u.to_factored_string(),
            o.to_factored_string()
        ),
    ))
}

fn criterion_2() -> Result<(bool, String)> {
    let u = laurent_expand(&wg_unitary(&p("2"))?, 7)?
        .coefficient_range(3, 7)
        .unwrap_or_default();
    let o = laurent_expand(&wg_orthogonal_shifted(&p("2"))?, 5)?
        .coefficient_range(3, 5)
        .unwrap_or_default();
    let ok = u == ints(&[-1, 0, -1, 0, -1]) && o == ints(&[-1, 4, -13]);
    Ok((ok, format!("U ({}), shifted O ({})", show(&u), show(&o))))
}

fn criterion_3() -> Result<(bool, String)> {
    let mut checked = 0;
    let mut ok = true;
    for alpha in all_partitions_up_to(4) {
        let n = alpha.weight() as i64;
        let f = wg_unitary(&alpha)?;
        for big_n in n..=n + 2 {
            checked += 1;
            ok &= f.eval_int(big_n)? == gram_wg_unitary(&alpha, big_n)?;
        }
    }
    for beta in all_partitions_up_to(3) {
        let n = beta.weight() as i64;
        let f = wg_orthogonal(&beta)?;
        for big_n in [2 * n, 2 * n + 1] {
            checked += 1;
            ok &= f.eval_int(big_n)? == gram_wg_orthogonal(&beta, big_n)?;
        }
    }
    Ok((
        ok,
        format!("{checked} character-route values against Gram inversion"),
    ))
}

fn criterion_4() -> Result<(bool, String)> {
    let mut ok = true;
    let all = all_partitions_up_to(3);
    for alpha in &all {
        let order = alpha.weight() as i64 + 8;
        let expected = laurent_expand(&wg_unitary(alpha)?, order)?;
        ok &= monotone_series(alpha, order)?.agrees_through(&expected, order);
        let table = monotone_counts(alpha, 5)?;
        for k in 0..=5 {
            ok &= table.get(k) == Some(brute_monotone(alpha, k));
        }
    }
    Ok((
        ok,
        format!(
            "{} partitions through N^-(n+8); counts k <= 5 match brute force",
            all.len()
        ),
    ))
}

fn criterion_5() -> Result<(bool, String)> {
    let alpha = p("2");
    let top = enumerate_unitary(&alpha, 2)?;
    let s2 = unitary_summary(&alpha, 2)?.coefficient();
    let zero = unitary_summary(&alpha, 0)?;
    let expected: BTreeMap<Partition, u64> = [(p("2,2,2"), 21), (p("3,2"), 28), (p("4"), 8)]
        .into_iter()
        .collect();
    let series = theorem1_series(&alpha, 0)?;
    let ok = top.len() == 2
        && top.iter().all(|r| r.verify(2))
        && s2 == int(-1)
        && zero.maps == expected
        && zero.coefficient() == int(-1)
        && series.agrees_through(&laurent_expand(&wg_unitary(&alpha)?, 5)?, 5);
    Ok((
        ok,
        format!(
            "{} factorizations at chi=2; census {}; series {series}",
            top.len(),
            census(&zero.maps)
        ),
    ))
}

fn criterion_6() -> Result<(bool, String)> {
    let mut pairs = 0;
    let mut ok = true;
    let mut flagged = Vec::new();
    for alpha in all_partitions_up_to(3) {
        let (n, l) = (alpha.weight() as i64, alpha.len() as i64);
        let chi_min = 2 * l - 4;
        let monotone = monotone_counts(&alpha, (n + l - chi_min) as usize)?;
        for chi in (chi_min..=max_chi(&alpha)).filter(|c| c % 2 == 0) {
            let m = monotone.get((n + l - chi) as usize).unwrap() as i64;
            let value = unitary_summary(&alpha, chi)?.sum_rule_value();
            pairs += 1;
            ok &= value == int(if n % 2 == 0 { m } else { -m });
            let printed = if (n + l) % 2 == 0 { m } else { -m };
            if m != 0 && value != int(printed) {
                flagged.push(format!("{alpha}@{chi}"));
            }
        }
    }
    Ok((
        ok,
        format!("{pairs} pairs with sign (-1)^|alpha|; flag: printed sign (-1)^(n+l) fails at odd l: {}", flagged.join(" ")),
    ))
}

fn criterion_7() -> Result<(bool, String)> {
    let beta = p("2");
    let top = enumerate_orthogonal(&beta, 2)?;
    let pair = |a: &str, b: &str| vec![Label::parse(a).unwrap(), Label::parse(b).unwrap()];
    let theta = Permutation::from_cycles(
        Domain::Hatted(4),
        &[
            pair("1", "3h"),
            pair("2", "4h"),
            pair("4", "2h"),
            pair("3", "1h"),
        ],
    )?;
    let pi = Permutation::parse(Domain::Plain(4), "(1 2)(3 4)")?;
    let t: Vec<BigRational> = [2, 1, 0]
        .into_iter()
        .map(|chi| orthogonal_summary(&beta, chi).map(|s| s.coefficient()))
        .collect::<Result<_>>()?;
    let series = theorem3_series(&beta, 0)?;
    let one = orthogonal_summary(&beta, 1)?;
    let per_z: u64 = one.maps.values().sum();
    let flip = one.vertex_flip_census()?;
    let flip_total: u64 = flip.values().sum();
    let signed: i64 = flip
        .iter()
        .map(|(r, &c)| {
            if r.len() % 2 == 0 {
                c as i64
            } else {
                -(c as i64)
            }
        })
        .sum();
    let ok = top.len() == 4
        && top.iter().all(|r| r.verify(2) && r.target == pi)
        && top.iter().any(|r| r.theta == theta)
        && t == vec![frac(1, 2), int(-2), frac(13, 2)]
        && series.agrees_through(&laurent_expand(&wg_orthogonal_shifted(&beta)?, 5)?, 5)
        && per_z == 40
        && flip == [(p("2,2"), 8), (p("3"), 4)].into_iter().collect()
        && flip_total == 12
        && Some(int(signed)) == series.coefficient(4);
    Ok((
        ok,
        format!(
            "T = ({}); chi=1 census per z_rho total {per_z}, per z_rho 2^l(rho) {} total {flip_total} (normalization z_rho 2^l(rho) gives 12)",
            show(&t),
            census(&flip)
        ),
    ))
}

fn criterion_8() -> Result<(bool, String)> {
    let beta = p("2");
    let m = matching_monotone_counts(&beta, 4)?.counts();
    let conv = calibrate_palindromic_convention()?;
    let h = palindromic_monotone_counts(&beta, 3, conv)?.counts();
    let ok = m[1..] == [1, 1, 3, 5]
        && h[1..] == [1, 4, 13]
        && matching_monotone_series(&beta, 6)?
            .agrees_through(&laurent_expand(&wg_orthogonal(&beta)?, 6)?, 6)
        && palindromic_monotone_series(&beta, 5, conv)?
            .agrees_through(&laurent_expand(&wg_orthogonal_shifted(&beta)?, 5)?, 5);
    Ok((
        ok,
        format!(
            "matching-monotone {:?}, palindromic {:?} under {conv}",
            &m[1..],
            &h[1..]
        ),
    ))
}

fn criterion_9() -> Result<(bool, String)> {
    let mut ok = true;
    let mut identities = 0;
    for alpha in all_partitions_up_to(3) {
        let n = alpha.weight();
        let monotone = monotone_counts(&alpha, 4)?;
        let sign = if (n + alpha.len()) % 2 == 0 { 1 } else { -1 };
        for d in 0..=4 {
            let mut sum = int(0);
            for k in 0..=d {
                let v = proper_count(&alpha, k, d)?;
                ok &= v.is_integer() && v >= int(0);
                sum = if k % 2 == 0 { sum + v } else { sum - v };
            }
            identities += 1;
            ok &= sum == int(sign * monotone.get(d).unwrap() as i64);
        }
    }
    for beta in all_partitions_up_to(2) {
        let order = beta.weight() as i64 + 3;
        ok &= orthogonal_proper_series(&beta, order)?
            .agrees_through(&laurent_expand(&wg_orthogonal(&beta)?, order)?, order);
    }
    Ok((
        ok,
        format!("{identities} alternating-sum identities; orthogonal reconstruction for n <= 2"),
    ))
}

fn criterion_10() -> Result<(bool, String)> {
    let mut ok = true;
    for bits in 0u32..256 {
        let v: Vec<u32> = (0..8).map(|i| 1 + ((bits >> i) & 1)).collect();
        let f = |row, col, tag| Factor { row, col, tag };
        let z = [
            f(v[0], v[1], Tag::Z),
            f(v[2], v[3], Tag::ZConj),
            f(v[4], v[5], Tag::Z),
            f(v[6], v[7], Tag::ZConj),
        ];
        let cov_z = |i: usize, j: usize| {
            let (a, b) = (&z[i], &z[j]);
            i64::from(a.tag != b.tag && a.row == b.row && a.col == b.col)
        };
        let m = [
            f(v[0], v[1], Tag::M),
            f(v[2], v[3], Tag::M),
            f(v[4], v[5], Tag::M),
            f(v[6], v[7], Tag::M),
        ];
        let cov_m = |i: usize, j: usize| i64::from(m[i].row == m[j].row && m[i].col == m[j].col);
        let idx = [0, 1, 2, 3];
        ok &= complex_wick_moment(&IndexedProduct::new(z.to_vec(), int(1))?)
            == int(pairings_sum(&idx, &cov_z));
        ok &= real_wick_moment(&IndexedProduct::new(m.to_vec(), int(1))?)
            == int(pairings_sum(&idx, &cov_m));
    }
    Ok((
        ok,
        "all 256 index assignments over {1,2}, both ensembles".into(),
    ))
}

fn main() -> ExitCode {
    type Check = fn() -> Result<(bool, String)>;
    let checks: [(&str, Check); 10] = [
        ("closed forms", criterion_1),
        ("series", criterion_2),
        ("oracle equivalence", criterion_3),
        ("monotone identity", criterion_4),
        ("unitary enumeration", criterion_5),
        ("sum rule", criterion_6),
        ("orthogonal enumeration", criterion_7),
        ("matching and palindromic monotone", criterion_8),
        ("proper factorization identities", criterion_9),
        ("wick oracle", criterion_10),
    ];
    let mut failures = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        failures += usize::from(!ok);
        println!(
            "{} {:>2} {name} ({:.2}s): {detail}",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
