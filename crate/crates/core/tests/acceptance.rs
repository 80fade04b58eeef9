//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. `cargo test --test acceptance -- 3 5`
//! runs only criteria 3 and 5.

use extiso::abelian::{enumerate_abelian_automorphisms, primary_decomposition, AbelianAut, AbelianStructure};
use extiso::builders::{find_complement, reconstruct_abelian};
use extiso::cayley::{
    brute_force_iso, direct_product, enumerate_automorphisms, families, quotient_with_section, CayleyGroup,
    QuotientPresentation, Subgroup,
};
use extiso::cohomology::{
    assemble_product_cocycle, coboundary_witness, cocycle_space_dimensions, cohomologous, extract_extension_data,
    projection_complement, pseudo_congruent, same_class_up_to_aut_a, verify_extension_data, ExtensionData,
};
use extiso::corpus::{corpus, CorpusGroup};
use extiso::isoengine::{
    beta_instances, iso_auto, iso_central_radical, iso_elem_abelian_radical, iso_semisimple_product_code,
    iso_semisimple_product_small_aut_a, non_pc_fixture, non_pc_regression, p_times_top_order_count,
};
use extiso::{Caps, EngineConfig};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs()))
}

fn config() -> EngineConfig {
    EngineConfig::default()
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn arc(g: CayleyGroup) -> Arc<CayleyGroup> {
    Arc::new(g)
}

fn shuffled(g: &CayleyGroup, rng: &mut ChaCha8Rng) -> Arc<CayleyGroup> {
    let mut perm: Vec<usize> = g.elements().collect();
    perm.shuffle(rng);
    arc(g.relabel(&perm))
}

/// Row-reduced basis over GF(2) kept fully reduced, so a row is reduced by
/// XOR-ing the basis rows of the pivot columns it touches.
struct Gf2Rref {
    words: usize,
    rows: Vec<Vec<u64>>,
    pivot_row: Vec<Option<usize>>,
}

impl Gf2Rref {
    fn new(width: usize) -> Self {
        Self { words: width.div_ceil(64), rows: Vec::new(), pivot_row: vec![None; width] }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn bit(v: &[u64], c: usize) -> bool {
        v[c / 64] >> (c % 64) & 1 == 1
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let set: Vec<usize> =
            (0..self.words * 64).filter(|&c| c < self.pivot_row.len() && Self::bit(&v, c)).collect();
        for c in set {
            if let Some(r) = self.pivot_row[c] {
                for (x, y) in v.iter_mut().zip(&self.rows[r]) {
                    *x ^= y;
                }
            }
        }
        v
    }

    fn reduce_sparse(&self, cols: &[usize]) -> Vec<u64> {
        let mut v = vec![0u64; self.words];
        for &c in cols {
            v[c / 64] ^= 1 << (c % 64);
        }
        let touched: Vec<usize> = cols.iter().copied().filter(|&c| Self::bit(&v, c)).collect();
        for c in touched {
            if let Some(r) = self.pivot_row[c] {
                for (x, y) in v.iter_mut().zip(&self.rows[r]) {
                    *x ^= y;
                }
            }
        }
        v
    }

    fn insert_reduced(&mut self, v: Vec<u64>) -> bool {
        let Some(w) = v.iter().position(|&x| x != 0) else { return false };
        let c = w * 64 + v[w].trailing_zeros() as usize;
        for row in self.rows.iter_mut() {
            if Self::bit(row, c) {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x ^= y;
                }
            }
        }
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push(v);
        true
    }

    fn insert_sparse(&mut self, cols: &[usize]) -> bool {
        let v = self.reduce_sparse(cols);
        self.insert_reduced(v)
    }

    fn insert_dense(&mut self, v: Vec<u64>) -> bool {
        let v = self.reduce(v);
        self.insert_reduced(v)
    }

    fn contains_dense(&self, v: Vec<u64>) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

fn pack(bits: impl Iterator<Item = bool>, width: usize) -> Vec<u64> {
    let mut v = vec![0u64; width.div_ceil(64)];
    for (c, b) in bits.enumerate() {
        if b {
            v[c / 64] |= 1 << (c % 64);
        }
    }
    v
}

/// Normalized 2-coboundaries `Q x Q -> Z_2` on all `n^2` columns.
fn gf2_coboundaries(q: &CayleyGroup) -> Gf2Rref {
    let n = q.order();
    let mut b = Gf2Rref::new(n * n);
    for g in q.elements().filter(|&g| g != q.identity()) {
        let u = |x: usize| x == g;
        let row = pack((0..n * n).map(|c| u(c / n) ^ u(c % n) ^ u(q.mul(c / n, c % n))), n * n);
        b.insert_dense(row);
    }
    b
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let c = corpus().map_err(err)?;
    let cfg = config();
    let mut iso = 0;
    let mut pairs = 0;
    let mut routes = std::collections::BTreeMap::new();
    for g in &c {
        for h in &c {
            let v = iso_auto(&g.group, &h.group, &cfg).map_err(|e| format!("{} vs {}: {e}", g.name, h.name))?;
            let b = brute_force_iso(&g.group, &h.group, &cfg.caps).map_err(err)?;
            ensure(v.is_isomorphic() == b.is_some(), || {
                format!("{} vs {}: engine {} ({}), brute force {}", g.name, h.name, v.result, v.strategy, b.is_some())
            })?;
            if let Some(w) = &v.witness {
                ensure(w.is_isomorphism(&g.group, &h.group), || format!("{} vs {}: bad witness", g.name, h.name))?;
            }
            iso += usize::from(b.is_some());
            pairs += 1;
            *routes.entry(v.strategy).or_insert(0) += 1;
        }
    }
    within(start, Duration::from_secs(300))?;
    let routes: Vec<String> = routes.iter().map(|(s, n)| format!("{s} {n}")).collect();
    Ok(format!(
        "{} groups, {pairs} ordered pairs, {iso} isomorphic, {:.1}s [{}]",
        c.len(),
        start.elapsed().as_secs_f64(),
        routes.join(", ")
    ))
}

/// `Z_9` over `<3>` with projection `x -> i x mod 3`.
fn z9_extension(i: usize) -> Result<ExtensionData, String> {
    let g = arc(families::cyclic(9));
    let n = Subgroup::from_members(&g, &[0, 3, 6]).map_err(err)?;
    let q = arc(families::cyclic(3));
    let projection: Vec<u32> = (0..9).map(|x| (i * x % 3) as u32).collect();
    let section: Vec<u32> = (0..3).map(|t| (0..9).find(|&x| projection[x] as usize == t).unwrap() as u32).collect();
    let qp = QuotientPresentation::from_parts(g, n, q, projection, section).map_err(err)?;
    extract_extension_data(&qp).map_err(err)
}

fn criterion_2() -> Outcome {
    let caps = Caps::default();
    let ed1 = z9_extension(1)?;
    let ed2 = z9_extension(2)?;
    ensure(verify_extension_data(&ed1) && verify_extension_data(&ed2), || "extracted data are not cocycles".into())?;
    ensure(!cohomologous(&ed1, &ed2).map_err(err)?, || "the two extensions are equivalent".into())?;
    let aut_a = enumerate_abelian_automorphisms(&ed1.coefficient, &caps).map_err(err)?;
    let aut_q = enumerate_automorphisms(&ed1.quotient, &caps).map_err(err)?;
    let found = pseudo_congruent(&ed1, &ed2, &aut_a, &aut_q).map_err(err)?;
    ensure(found.is_some(), || "not pseudo-congruent".into())?;
    let z9 = families::cyclic(9);
    for ed in [&ed1, &ed2] {
        let g = reconstruct_abelian(ed).map_err(err)?;
        ensure(brute_force_iso(&g, &z9, &caps).map_err(err)?.is_some(), || "reconstruction is not Z9".into())?;
    }
    Ok("not equivalent, pseudo-congruent, both reconstruct to Z9".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let fx = non_pc_fixture(2);
    ensure(non_pc_regression(&fx, &Caps::default()).map_err(err)?, || "an automorphism carries one image to the other".into())?;
    let c1 = p_times_top_order_count(&fx.group, &fx.image1, 2);
    let c2 = p_times_top_order_count(&fx.group, &fx.image2, 2);
    ensure(c1 > 0 && c2 == 0, || format!("p-multiples of top-order elements: {c1} vs {c2}"))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("|G| = {}, no carrying automorphism, {:.1}s", fx.group.order(), start.elapsed().as_secs_f64()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let cfg = config();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5125);
    let sl = arc(families::sl2(5));
    let z2a5 = arc(direct_product(&families::cyclic(2), &families::alternating(5)));
    let mut cases = vec![(sl.clone(), z2a5.clone(), "SL(2,5) vs Z2xA5")];
    cases.push((sl.clone(), shuffled(&sl, &mut rng), "SL(2,5) vs relabel"));
    cases.push((z2a5.clone(), shuffled(&z2a5, &mut rng), "Z2xA5 vs relabel"));
    for (g, h, name) in &cases {
        ensure(g.center().len() == 2 && g.solvable_radical().members() == g.center().members(), || format!("{name}: rad != Z"))?;
        let v = iso_central_radical(g, h, &cfg).map_err(err)?;
        let b = brute_force_iso(g, h, &cfg.caps).map_err(err)?;
        ensure(v.is_isomorphic() == b.is_some(), || format!("{name}: engine {} vs brute force {}", v.result, b.is_some()))?;
    }
    ensure(!iso_central_radical(&sl, &z2a5, &cfg).map_err(err)?.is_isomorphic(), || "SL(2,5) ~ Z2xA5".into())?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("distinguished and identified, {:.1}s", start.elapsed().as_secs_f64()))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let a5 = families::alternating(5);
    let (z, b) = cocycle_space_dimensions(&a5, 2);
    // oracle: the cocycle identity for every triple, on all n^2 columns
    let n = a5.order();
    let e = a5.identity();
    let mut sys = Gf2Rref::new(n * n);
    for x in 0..n {
        sys.insert_sparse(&[e * n + x]);
        sys.insert_sparse(&[x * n + e]);
    }
    for x in 0..n {
        for y in 0..n {
            for w in 0..n {
                sys.insert_sparse(&[x * n + y, a5.mul(x, y) * n + w, y * n + w, x * n + a5.mul(y, w)]);
            }
        }
    }
    let z_oracle = n * n - sys.rank();
    let b_oracle = gf2_coboundaries(&a5).rank();
    ensure((z, b) == (z_oracle, b_oracle), || format!("engine ({z}, {b}) vs elimination ({z_oracle}, {b_oracle})"))?;
    ensure(b == 59 && z - b == 1, || format!("dim Z^2 = {z}, dim B^2 = {b}"))?;
    within(start, Duration::from_secs(120))?;
    Ok(format!("dim B^2 = {b}, dim Z^2 - dim B^2 = {}, {:.1}s", z - b, start.elapsed().as_secs_f64()))
}

fn all_subgroups(g: &CayleyGroup) -> Vec<Subgroup> {
    let mut seen = std::collections::HashSet::new();
    let mut out = vec![Subgroup::trivial(g)];
    seen.insert(out[0].members().to_vec());
    let mut i = 0;
    while i < out.len() {
        let s = out[i].clone();
        for x in g.elements().filter(|&x| !s.contains(x)) {
            let t = s.extended(g, &[x]);
            if seen.insert(t.members().to_vec()) {
                out.push(t);
            }
        }
        i += 1;
    }
    out
}

fn is_complement(g: &CayleyGroup, a: &Subgroup, h: &Subgroup) -> bool {
    h.len() * a.len() == g.order() && h.members().iter().all(|&x| x == g.identity() || !a.contains(x))
}

fn criterion_6() -> Outcome {
    let z4 = arc(families::cyclic(4));
    let two = Subgroup::from_members(&z4, &[0, 2]).map_err(err)?;
    ensure(find_complement(&z4, &two).map_err(err)?.is_none(), || "complement found in Z4".into())?;
    let s3 = arc(families::symmetric(3));
    let a3 = s3.commutator_subgroup();
    let h = find_complement(&s3, &a3).map_err(err)?.ok_or("no complement of A3")?;
    ensure(is_complement(&s3, &a3, &h), || "invalid complement of A3".into())?;
    let mut checked = 0;
    for CorpusGroup { name, group } in corpus().map_err(err)?.iter().filter(|c| c.group.order() <= 100) {
        let subs = all_subgroups(group);
        for a in group.normal_subgroups().iter().filter(|a| a.is_abelian(group)) {
            let found = find_complement(group, a).map_err(err)?;
            let exists = subs.iter().any(|h| is_complement(group, a, h));
            ensure(found.is_some() == exists, || format!("{name}, normal subgroup of order {}: {found:?} vs {exists}", a.len()))?;
            if let Some(h) = found {
                ensure(is_complement(group, a, &h), || format!("{name}: invalid complement"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (G, A) pairs"))
}

/// Per-factor classes of a central `Z_2` extension of `A_5^2`, by
/// elimination against the coboundaries.
fn factor_classes(factors: &[&ExtensionData], b: &Gf2Rref) -> Vec<bool> {
    let mut classes: Vec<bool> = factors
        .iter()
        .map(|f| {
            let n = f.q_order();
            !b.contains_dense(pack(f.cocycle.rows[0].iter().map(|&x| x % 2 == 1), n * n))
        })
        .collect();
    classes.sort();
    classes
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let cfg = config();
    let sl = arc(families::sl2(5));
    let qp = quotient_with_section(sl.clone(), &sl.center()).map_err(err)?;
    let nontrivial = extract_extension_data(&qp).map_err(err)?;
    let trivial = ExtensionData::trivial(nontrivial.coefficient.clone(), nontrivial.quotient.clone());
    let b = gf2_coboundaries(&nontrivial.quotient);
    let build = |f: &ExtensionData, g: &ExtensionData| -> Result<Arc<CayleyGroup>, String> {
        let ed = assemble_product_cocycle(vec![f.clone(), g.clone()]).map_err(err)?;
        reconstruct_abelian(&ed).map(arc).map_err(err)
    };
    let nt = build(&nontrivial, &trivial)?;
    let tn = build(&trivial, &nontrivial)?;
    let nn = build(&nontrivial, &nontrivial)?;
    ensure(nt.order() == 7200, || format!("order {}", nt.order()))?;
    let truth_nt_tn = factor_classes(&[&nontrivial, &trivial], &b) == factor_classes(&[&trivial, &nontrivial], &b);
    let truth_nt_nn = factor_classes(&[&nontrivial, &trivial], &b) == factor_classes(&[&nontrivial, &nontrivial], &b);
    ensure(truth_nt_tn && !truth_nt_nn, || "ground truth does not separate the cases".into())?;
    for (g, h, truth, name) in [(&nt, &tn, truth_nt_tn, "(n,t) vs (t,n)"), (&nt, &nn, truth_nt_nn, "(n,t) vs (n,n)")] {
        let v1 = iso_semisimple_product_small_aut_a(g, h, &cfg).map_err(|e| format!("{name} strategy 1: {e}"))?;
        let v2 = iso_semisimple_product_code(g, h, &cfg).map_err(|e| format!("{name} strategy 2: {e}"))?;
        ensure(v1.is_isomorphic() == truth && v2.is_isomorphic() == truth, || {
            format!("{name}: strategy 1 {}, strategy 2 {}, truth {truth}", v1.result, v2.result)
        })?;
    }
    within(start, Duration::from_secs(600))?;
    Ok(format!("both strategies match the class multisets, {:.1}s", start.elapsed().as_secs_f64()))
}

fn criterion_8() -> Outcome {
    let caps = Caps::default();
    let mut checked = 0;
    for CorpusGroup { name, group } in corpus().map_err(err)? {
        let mut subs = vec![group.center()];
        let r = group.solvable_radical();
        if r.members() != subs[0].members() {
            subs.push(r);
        }
        for n in subs.into_iter().filter(|n| n.is_abelian(&group)) {
            let qp = quotient_with_section(group.clone(), &n).map_err(err)?;
            let ed = extract_extension_data(&qp).map_err(err)?;
            let back = reconstruct_abelian(&ed).map_err(err)?;
            ensure(brute_force_iso(&back, &group, &caps).map_err(err)?.is_some(), || {
                format!("{name} over a normal subgroup of order {}", n.len())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (G, N) pairs"))
}

fn gl_matrices(p: u64, k: usize) -> Vec<Vec<Vec<u32>>> {
    let total = (p as usize).pow((k * k) as u32);
    (0..total)
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    (0..k)
                        .map(|_| {
                            let x = (code % p as usize) as u32;
                            code /= p as usize;
                            x
                        })
                        .collect()
                })
                .collect()
        })
        .filter(|m: &Vec<Vec<u32>>| det_nonzero(m, p))
        .collect()
}

fn det_nonzero(m: &[Vec<u32>], p: u64) -> bool {
    let k = m.len();
    let mut a: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
    for c in 0..k {
        let Some(r) = (c..k).find(|&r| a[r][c] != 0) else { return false };
        a.swap(c, r);
        let inv = (1..p).find(|&t| t * a[c][c] % p == 1).unwrap();
        for r in c + 1..k {
            let f = a[r][c] * inv % p;
            for j in 0..k {
                a[r][j] = (a[r][j] + p * p - f * a[c][j] % p) % p;
            }
        }
    }
    true
}

fn matmul(a: &[Vec<u32>], b: &[Vec<u32>], p: u64) -> Vec<Vec<u32>> {
    let k = a.len();
    (0..k)
        .map(|i| (0..k).map(|j| ((0..k).map(|t| a[i][t] as u64 * b[t][j] as u64).sum::<u64>() % p) as u32).collect())
        .collect()
}

fn elementary(p: u64, k: usize) -> Result<AbelianStructure, String> {
    primary_decomposition(arc(families::elementary_abelian(p as usize, k))).map_err(err)
}

fn criterion_9() -> Outcome {
    let cfg = config();
    let c = corpus().map_err(err)?;
    let eligible: Vec<&CorpusGroup> = c
        .iter()
        .filter(|e| {
            let g = &e.group;
            let z = g.center();
            g.solvable_radical().members() == z.members() && {
                let (zg, _) = z.as_group(g);
                zg.order() == 1 || primary_decomposition(arc(zg)).map(|a| a.elementary_prime().is_some()).unwrap_or(false)
            }
        })
        .collect();
    let mut pairs = 0;
    let mut instances = 0;
    for g in &eligible {
        for h in &eligible {
            let a = iso_elem_abelian_radical(&g.group, &h.group, &cfg).map_err(|e| format!("{} vs {}: {e}", g.name, h.name))?;
            let b = iso_central_radical(&g.group, &h.group, &cfg).map_err(|e| format!("{} vs {}: {e}", g.name, h.name))?;
            ensure(a.is_isomorphic() == b.is_isomorphic(), || format!("{} vs {}: {} vs {}", g.name, h.name, a.result, b.result))?;
            pairs += 1;
            if g.group.order() != h.group.order() || g.group.is_abelian() {
                continue;
            }
            for inst in beta_instances(&g.group, &h.group, &cfg).map_err(err)? {
                let pair = inst.module_pair();
                if (inst.p as f64).powi(pair.v.len() as i32) > 1e5 {
                    continue;
                }
                let fast = inst.decide(&cfg.caps).map_err(err)?;
                let slow = exhaustive_alpha(&inst)?;
                ensure(fast.is_some() == slow, || format!("{} vs {}: cyclicity {} vs exhaustive {slow}", g.name, h.name, fast.is_some()))?;
                instances += 1;
            }
        }
    }
    ensure(instances > 0, || "no cyclicity instances".into())?;
    Ok(format!("{} groups, {pairs} pairs agree, {instances} cyclicity instances agree", eligible.len()))
}

/// Some invertible `alpha` with `alpha theta_1 = theta_2 alpha` and
/// `[alpha f_1] = [f_2]`, by scanning `GL(k, p)`.
fn exhaustive_alpha(inst: &extiso::isoengine::BetaInstance) -> Result<bool, String> {
    let (p, k) = (inst.p, inst.k);
    let q = inst.quotient();
    let n = q.order();
    let a = elementary(p, k)?;
    let theta2 = inst.theta2();
    let f2 = inst.f2();
    let action: Vec<AbelianAut> =
        theta2.iter().map(|m| AbelianAut { matrix: m.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect() }).collect();
    for alpha in gl_matrices(p, k) {
        if (0..n).any(|x| matmul(&alpha, &inst.theta1[x], p) != matmul(&theta2[x], &alpha, p)) {
            continue;
        }
        let w = coboundary_witness(&a, q, &action, |x, y| {
            (0..k)
                .map(|r| {
                    let af: u64 = (0..k).map(|j| alpha[r][j] as u64 * inst.f1[j][x * n + y] as u64).sum();
                    (af + p - f2[r][x * n + y] as u64 % p) % p
                })
                .collect()
        });
        if w.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn random_cocycle(base: &ExtensionData, rng: &mut ChaCha8Rng, class: bool) -> ExtensionData {
    let q = base.quotient.clone();
    let n = q.order();
    let u: Vec<u64> = q.elements().map(|x| if x == q.identity() { 0 } else { rng.gen_range(0..2) }).collect();
    let c = u64::from(class);
    ExtensionData::from_values(base.coefficient.clone(), q.clone(), base.action.clone(), |x, y| {
        vec![(c * base.cocycle.rows[0][x * n + y] + u[x] + u[y] + u[q.mul(x, y)]) % 2]
    })
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1);
    let mut same = 0;
    for (cover, name) in [(families::dicyclic(3), "S3"), (families::sl2(5), "A5")] {
        let g = arc(cover);
        let qp = quotient_with_section(g.clone(), &g.center()).map_err(err)?;
        let base = extract_extension_data(&qp).map_err(err)?;
        let proj = projection_complement(&base.quotient, 2);
        for _ in 0..100 {
            let (c1, c2) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
            let f1 = random_cocycle(&base, &mut rng, c1);
            let f2 = random_cocycle(&base, &mut rng, c2);
            let by_projection = proj.project(&f1.cocycle) == proj.project(&f2.cocycle);
            let by_span = same_class_up_to_aut_a(&f1, &f2).map_err(err)?;
            ensure(by_projection == by_span, || format!("{name}: projection {by_projection} vs span {by_span}"))?;
            same += usize::from(by_span);
        }
    }
    Ok(format!("200 pairs agree, {same} in the same class"))
}

fn main() {
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle equivalence on the corpus", criterion_1),
        ("Z9 as two extensions of Z3 by Z3", criterion_2),
        ("non-pseudo-congruent extensions, p = 2", criterion_3),
        ("central-radical SL(2,5) vs Z2xA5", criterion_4),
        ("cohomology dimensions of A5 over Z2", criterion_5),
        ("split test", criterion_6),
        ("central extensions of A5 x A5", criterion_7),
        ("round-trip reconstruction", criterion_8),
        ("elementary radical vs central radical", criterion_9),
        ("projection vs span test", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
