//! Random generators and independent oracles shared by the
//! property tests and the acceptance harness.
//!
//! Each `check_*` runs one randomized instance and returns `Err` with a
//! description on violation.
#![allow(dead_code)]

use densem::compose::{compose, compose_kronecker, compose_transitive, cup_state, VerbMatrix, WordMeaning};
use densem::density::{fidelity, pure, relative_entropy, representativeness, DensityMatrix, ExtendedReal, Measures};
use densem::pregroup::{reduce, PregroupType, ReductionDiagram, SimpleType};
use densem::specmat::{eigh, SymMatrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Runs `check` `n` times on one seeded generator; returns the failures.
pub fn run(n: usize, seed: u64, mut check: impl FnMut(&mut ChaCha8Rng) -> Check) -> Vec<String> {
    let mut r = rng(seed);
    (0..n)
        .filter_map(|i| check(&mut r).err().map(|e| format!("instance {i}: {e}")))
        .collect()
}

// ---------------------------------------------------------------------------
// generators

pub fn random_vec(r: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
        if v.iter().map(|x| x * x).sum::<f64>() > 1e-3 {
            return v;
        }
    }
}

pub fn unit_vec(r: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let v = random_vec(r, n);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

/// Columns of a random `n × rank` matrix.
pub fn random_frame(r: &mut ChaCha8Rng, n: usize, rank: usize) -> Vec<Vec<f64>> {
    (0..rank).map(|_| random_vec(r, n)).collect()
}

/// `Σ_k c_k c_kᵀ` over the given columns.
pub fn gram(n: usize, cols: &[Vec<f64>]) -> SymMatrix {
    let mut data = vec![0.0; n * n];
    for c in cols {
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] += c[i] * c[j];
            }
        }
    }
    SymMatrix::new(n, data).unwrap()
}

pub fn random_psd(r: &mut ChaCha8Rng, n: usize, rank: usize) -> SymMatrix {
    gram(n, &random_frame(r, n, rank))
}

/// Random PSD matrix of random rank in `1..=max_rank`.
pub fn random_psd_upto(r: &mut ChaCha8Rng, n: usize, max_rank: usize) -> SymMatrix {
    let rank = r.gen_range(1..=max_rank);
    random_psd(r, n, rank)
}

pub fn random_density(r: &mut ChaCha8Rng, n: usize) -> DensityMatrix {
    let rank = r.gen_range(1..=n);
    DensityMatrix::new(random_psd(r, n, rank)).unwrap()
}

pub fn add(a: &SymMatrix, c: f64, b: &SymMatrix) -> SymMatrix {
    a.add_scaled(c, b).unwrap()
}

/// `σ = p ρ + ρ′` with a random positive `p` and random PSD `ρ′`, so
/// `supp ρ ⊆ supp σ` by construction.
pub fn dominating(r: &mut ChaCha8Rng, rho: &SymMatrix) -> SymMatrix {
    let n = rho.dim();
    let p = r.gen_range(0.1..2.0);
    let extra_rank = r.gen_range(0..=n);
    add(&rho.scale(p), 1.0, &random_psd(r, n, extra_rank))
}

// ---------------------------------------------------------------------------
// independent oracles

pub fn min_eigenvalue(a: &SymMatrix) -> f64 {
    *eigh(a).unwrap().eigenvalues.last().unwrap_or(&0.0)
}

pub fn is_psd(a: &SymMatrix, tol: f64) -> bool {
    min_eigenvalue(a) >= -tol * a.max_abs().max(1.0)
}

/// Orthonormal basis of the complement of `span(cols)` by Gram–Schmidt
/// against the standard basis.
pub fn complement_basis(n: usize, cols: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let push = |v: &[f64], basis: &mut Vec<Vec<f64>>| -> bool {
        let mut w = v.to_vec();
        for _ in 0..2 {
            for b in basis.iter() {
                let d: f64 = w.iter().zip(b).map(|(x, y)| x * y).sum();
                w.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
            }
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            basis.push(w.into_iter().map(|x| x / norm).collect());
            true
        } else {
            false
        }
    };
    for c in cols {
        push(c, &mut basis);
    }
    let span = basis.len();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        push(&e, &mut basis);
    }
    basis.split_off(span)
}

/// Largest `p` with `σ − pρ ⪰ 0`, computed on `supp σ`:
/// `p = 1 / λ_max(Λ^{-1/2} Vᵀ ρ V Λ^{-1/2})`.
pub fn domination_ratio(rho: &SymMatrix, sigma: &SymMatrix) -> f64 {
    let es = eigh(sigma).unwrap();
    let cut = 1e-9 * es.spectral_radius();
    let support: Vec<(f64, &Vec<f64>)> = es
        .eigenvalues
        .iter()
        .zip(&es.eigenvectors)
        .filter(|(l, _)| **l > cut)
        .map(|(l, v)| (*l, v))
        .collect();
    let k = support.len();
    let n = rho.dim();
    let mut m = vec![0.0; k * k];
    for a in 0..k {
        for b in 0..k {
            let (la, va) = support[a];
            let (lb, vb) = support[b];
            let mut q = 0.0;
            for i in 0..n {
                for j in 0..n {
                    q += va[i] * rho.get(i, j) * vb[j];
                }
            }
            m[a * k + b] = q / (la.sqrt() * lb.sqrt());
        }
    }
    let sym: Vec<f64> = (0..k * k).map(|idx| 0.5 * (m[idx] + m[(idx % k) * k + idx / k])).collect();
    let top = eigh(&SymMatrix::new(k, sym).unwrap()).unwrap().eigenvalues[0];
    1.0 / top
}

/// Contraction by brute force: walk every full row and column multi-index
/// of the product space, keep those that agree on each link, and accumulate
/// the product of word entries into the residual entry.
pub fn brute_force_compose(words: &[WordMeaning], d: &ReductionDiagram) -> SymMatrix {
    let dims: Vec<usize> = words.iter().flat_map(|w| w.wire_dims.clone()).collect();
    let total: usize = dims.iter().product();
    let decode = |mut k: usize| {
        let mut idx = vec![0; dims.len()];
        for p in (0..dims.len()).rev() {
            idx[p] = k % dims[p];
            k /= dims[p];
        }
        idx
    };
    let consistent = |idx: &[usize]| d.links.iter().all(|&(p, q)| idx[p] == idx[q]);
    let out_dims: Vec<usize> = d.residuals.iter().map(|&r| dims[r]).collect();
    let out_dim: usize = out_dims.iter().product();
    let out_index = |idx: &[usize]| d.residuals.iter().fold(0, |acc, &r| acc * dims[r] + idx[r]);
    let word_index = |idx: &[usize], w: usize| {
        let start: usize = words[..w].iter().map(|x| x.wire_dims.len()).sum();
        words[w]
            .wire_dims
            .iter()
            .enumerate()
            .fold(0, |acc, (k, dk)| acc * dk + idx[start + k])
    };
    let valid: Vec<Vec<usize>> = (0..total).map(decode).filter(|i| consistent(i)).collect();
    let mut out = vec![0.0; out_dim * out_dim];
    for ri in &valid {
        for ci in &valid {
            let prod: f64 = (0..words.len())
                .map(|w| words[w].op().get(word_index(ri, w), word_index(ci, w)))
                .product();
            out[out_index(ri) * out_dim + out_index(ci)] += prod;
        }
    }
    SymMatrix::new(out_dim, out).unwrap()
}

pub type Diagram = (Vec<(usize, usize)>, Vec<usize>);

/// Every planar, well-typed contraction diagram of `seq`, by exhaustive
/// enumeration of partial matchings.
pub fn planar_contractions(seq: &[SimpleType]) -> Vec<Diagram> {
    fn go(
        seq: &[SimpleType],
        pos: usize,
        partner: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<Option<usize>>>,
    ) {
        if pos == seq.len() {
            out.push(partner.clone());
            return;
        }
        if partner[pos].is_some() {
            return go(seq, pos + 1, partner, out);
        }
        go(seq, pos + 1, partner, out);
        for j in pos + 1..seq.len() {
            if partner[j].is_none() {
                partner[pos] = Some(j);
                partner[j] = Some(pos);
                go(seq, pos + 1, partner, out);
                partner[pos] = None;
                partner[j] = None;
            }
        }
    }
    let mut all = Vec::new();
    go(seq, 0, &mut vec![None; seq.len()], &mut all);
    all.into_iter()
        .filter_map(|partner| {
            let links: Vec<(usize, usize)> = partner
                .iter()
                .enumerate()
                .filter_map(|(i, p)| p.filter(|j| *j > i).map(|j| (i, j)))
                .collect();
            let residuals: Vec<usize> = (0..seq.len()).filter(|i| partner[*i].is_none()).collect();
            let typed = links.iter().all(|&(i, j)| seq[i].base == seq[j].base && seq[j].z == seq[i].z + 1);
            let planar = links.iter().all(|&(i, j)| {
                links.iter().all(|&(k, l)| !(i < k && k < j && j < l))
                    && residuals.iter().all(|&r| !(i < r && r < j))
            });
            (typed && planar).then_some((links, residuals))
        })
        .collect()
}

/// The diagrams among `all` whose residuals spell `target`.
pub fn reductions_to<'a>(seq: &[SimpleType], all: &'a [Diagram], target: &[SimpleType]) -> Vec<&'a Diagram> {
    all.iter()
        .filter(|(_, res)| res.len() == target.len() && res.iter().zip(target).all(|(&r, t)| seq[r] == *t))
        .collect()
}

pub fn enumerate_reductions(seq: &[SimpleType], target: &[SimpleType]) -> Vec<Diagram> {
    let all = planar_contractions(seq);
    reductions_to(seq, &all, target).into_iter().cloned().collect()
}

// ---------------------------------------------------------------------------
// property checks

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Relative entropy is nonnegative and vanishes exactly on equal states.
pub fn check_klein(r: &mut ChaCha8Rng) -> Check {
    let n = r.gen_range(1..=4);
    let rho = random_density(r, n);
    let sigma = random_density(r, n);
    let m = Measures::default();
    let rs = m.relative_entropy(&rho, &sigma).map_err(|e| e.to_string())?;
    if let ExtendedReal::Finite(x) = rs {
        if x < 0.0 {
            return Err(format!("N = {x} < 0"));
        }
    }
    let self_n = m.relative_entropy(&rho, &rho).map_err(|e| e.to_string())?;
    if !matches!(self_n, ExtendedReal::Finite(x) if x <= 1e-9) {
        return Err(format!("N(ρ‖ρ) = {self_n}"));
    }
    let differ = densem::density::normalize(&rho)
        .unwrap()
        .op()
        .max_abs_diff(densem::density::normalize(&sigma).unwrap().op());
    if differ > 1e-6 && rs.value().is_some_and(|x| x <= 1e-12) {
        return Err(format!("N = {rs} for states differing by {differ}"));
    }
    Ok(())
}

pub fn check_fidelity_symmetry(r: &mut ChaCha8Rng) -> Check {
    let n = r.gen_range(1..=4);
    let rho = random_density(r, n);
    let sigma = random_density(r, n);
    let f1 = fidelity(&rho, &sigma).unwrap();
    let f2 = fidelity(&sigma, &rho).unwrap();
    if !close(f1, f2, 1e-9) {
        return Err(format!("F(ρ,σ) = {f1}, F(σ,ρ) = {f2}"));
    }
    if !(0.0..=1.0).contains(&f1) {
        return Err(format!("F = {f1} out of [0,1]"));
    }
    // F = 1 only for equal states
    let eps = 10f64.powi(-r.gen_range(2..=5));
    let bumped = DensityMatrix::new(add(rho.op(), eps, &random_psd(r, n, 1))).unwrap();
    for (a, b) in [(&rho, &sigma), (&rho, &bumped)] {
        let f = fidelity(a, b).unwrap();
        let na = densem::density::normalize(a).unwrap();
        let nb = densem::density::normalize(b).unwrap();
        if f >= 1.0 - 1e-15 && na.op().max_abs_diff(nb.op()) > 1e-6 {
            return Err(format!("F = {f} for distinct states"));
        }
    }
    let self_f = fidelity(&rho, &rho).unwrap();
    if !close(self_f, 1.0, 1e-9) {
        return Err(format!("F(ρ,ρ) = {self_f}"));
    }
    Ok(())
}

pub fn check_pure_fidelity(r: &mut ChaCha8Rng) -> Check {
    let n = r.gen_range(1..=4);
    let u = unit_vec(r, n);
    let v = unit_vec(r, n);
    let overlap: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>().abs();
    let f = fidelity(&pure(&u).unwrap(), &pure(&v).unwrap()).unwrap();
    if !close(f, overlap, 1e-9) {
        return Err(format!("F = {f}, |⟨u|v⟩| = {overlap}"));
    }
    Ok(())
}

/// `R(ρ, σ) = 0` exactly when `ρ` has weight in `ker σ`, with the kernel
/// computed by Gram–Schmidt from the construction.
pub fn check_kernel_corollary(r: &mut ChaCha8Rng) -> Check {
    let n = r.gen_range(2..=4);
    let rank = r.gen_range(1..n);
    let frame = random_frame(r, n, rank);
    let sigma = DensityMatrix::new(gram(n, &frame)).unwrap();
    let kernel = complement_basis(n, &frame);
    // ρ inside supp σ: combinations of the frame
    let inside_cols: Vec<Vec<f64>> = (0..r.gen_range(1..=rank))
        .map(|_| {
            let c = random_vec(r, rank);
            (0..n).map(|i| (0..rank).map(|k| c[k] * frame[k][i]).sum()).collect()
        })
        .collect();
    let inside = gram(n, &inside_cols);
    let k = &kernel[r.gen_range(0..kernel.len())];
    let weight = r.gen_range(0.05..1.0);
    let outside = add(&inside, weight, &SymMatrix::outer(k));

    let overlap = |m: &SymMatrix| -> f64 {
        let t = m.trace();
        kernel
            .iter()
            .map(|k| (0..n).map(|i| (0..n).map(|j| k[i] * m.get(i, j) * k[j]).sum::<f64>()).sum::<f64>())
            .sum::<f64>()
            / t
    };
    for (m, expect_zero) in [(&inside, false), (&outside, true)] {
        let rho = DensityMatrix::new(m.clone()).unwrap();
        let rr = representativeness(&rho, &sigma).unwrap();
        let oracle_zero = overlap(m) > 1e-9;
        if oracle_zero != expect_zero || (rr == 0.0) != expect_zero {
            return Err(format!("R = {rr}, oracle overlap {}", overlap(m)));
        }
        if (rr == 0.0) != relative_entropy(&rho, &sigma).unwrap().is_infinite() {
            return Err("R = 0 disagrees with N = ∞".into());
        }
    }
    Ok(())
}

/// (1) `R(ρ,σ) > 0`, (2) `supp ρ ⊆ supp σ`, and (3) `σ − pρ ⪰ 0` for some
/// `p > 0` agree, on pairs built to satisfy them and on pairs built not to.
pub fn check_proposition(r: &mut ChaCha8Rng) -> Check {
    let m = Measures::default();
    let n = r.gen_range(1..=4);
    let rho_op = random_psd_upto(r, n, n);
    let rho = DensityMatrix::new(rho_op.clone()).unwrap();

    // dominated by construction
    let sigma_op = dominating(r, &rho_op);
    let sigma = DensityMatrix::new(sigma_op.clone()).unwrap();
    let p = domination_ratio(&rho_op, &sigma_op);
    let gap = add(&sigma_op, -p, &rho_op);
    let one = m.representativeness(&rho, &sigma).unwrap() > 0.0;
    let two = m.supp_leq(&rho, &sigma).unwrap();
    let three = p > 0.0 && p.is_finite() && is_psd(&gap, 1e-8);
    if !(one && two && three && m.precedes(&rho, &sigma).unwrap()) {
        return Err(format!("dominated pair: R>0 {one}, supp {two}, p={p} psd {three}"));
    }

    // a σ of lower rank whose support misses part of ρ
    if n >= 2 {
        let rank = r.gen_range(1..n);
        let frame = random_frame(r, n, rank);
        let kernel = complement_basis(n, &frame);
        let rho2 = add(&gram(n, &frame), 1.0, &SymMatrix::outer(&kernel[0]));
        let sigma2 = DensityMatrix::new(gram(n, &frame)).unwrap();
        let rho2 = DensityMatrix::new(rho2).unwrap();
        let one = m.representativeness(&rho2, &sigma2).unwrap() > 0.0;
        let two = m.supp_leq(&rho2, &sigma2).unwrap();
        // no p works: σ − pρ has ⟨k|·|k⟩ = −p⟨k|ρ|k⟩ < 0 for k in ker σ
        let k = &kernel[0];
        let gap = add(sigma2.op(), -1e-6, rho2.op());
        let kk: f64 = (0..n).map(|i| (0..n).map(|j| k[i] * gap.get(i, j) * k[j]).sum::<f64>()).sum();
        if one || two || kk >= 0.0 {
            return Err(format!("non-dominated pair: R>0 {one}, supp {two}, ⟨k|σ−pρ|k⟩ = {kk}"));
        }
    }
    Ok(())
}

fn transitive_words(
    dn: usize,
    ds: usize,
    subj: SymMatrix,
    verb: SymMatrix,
    obj: SymMatrix,
) -> (WordMeaning, WordMeaning, WordMeaning) {
    let t = |s: &str| s.parse::<PregroupType>().unwrap();
    (
        WordMeaning::from_dims("subj", t("n"), vec![dn], subj).unwrap(),
        WordMeaning::from_dims("verb", t("n^r s n^l"), vec![dn, ds, dn], verb).unwrap(),
        WordMeaning::from_dims("obj", t("n"), vec![dn], obj).unwrap(),
    )
}

/// Word-level entailment lifts through transitive composition.
pub fn check_sentence_entailment(r: &mut ChaCha8Rng) -> Check {
    let dn = r.gen_range(1..=4);
    let ds = r.gen_range(1..=4);
    let dv = dn * ds * dn;
    let rho = random_psd_upto(r, dn, dn);
    let delta = random_psd_upto(r, dn, dn);
    let alpha = random_psd_upto(r, dv, dv.min(4));
    let sigma = dominating(r, &rho);
    let gamma = dominating(r, &delta);
    let beta = dominating(r, &alpha);
    let (s1, v1, o1) = transitive_words(dn, ds, rho, alpha, delta);
    let (s2, v2, o2) = transitive_words(dn, ds, sigma, beta, gamma);
    let lhs = compose_transitive(&s1, &v1, &o1).map_err(|e| e.to_string())?;
    let rhs = compose_transitive(&s2, &v2, &o2).map_err(|e| e.to_string())?;
    if lhs.op().max_abs() <= 1e-12 * rhs.op().max_abs().max(1.0) {
        // an empty support is included in anything
        return Ok(());
    }
    let lhs = lhs.density().map_err(|e| e.to_string())?;
    let rhs = rhs.density().map_err(|e| e.to_string())?;
    if !densem::density::precedes(&lhs, &rhs).unwrap() {
        return Err("f(ρ⊗α⊗δ) ⊀ f(σ⊗β⊗γ)".into());
    }
    if representativeness(&lhs, &rhs).unwrap() <= 0.0 {
        return Err("R(f(ρ⊗α⊗δ), f(σ⊗β⊗γ)) = 0".into());
    }
    Ok(())
}

/// `|v⟩⟨v| ⊙ (ρ ⊗ δ)` stays positive for any verb table.
pub fn check_schur_closure(r: &mut ChaCha8Rng) -> Check {
    let ds = r.gen_range(1..=4);
    let dobj = r.gen_range(1..=4);
    let rows: Vec<Vec<f64>> = (0..ds).map(|_| random_vec(r, dobj)).collect();
    let verb = VerbMatrix::from_rows(&rows).unwrap();
    let subj = random_density(r, ds);
    let obj = random_density(r, dobj);
    let out = compose_kronecker(&verb, &subj, &obj).unwrap();
    if !is_psd(out.op(), 1e-10) {
        return Err(format!("min eigenvalue {}", min_eigenvalue(out.op())));
    }
    Ok(())
}

/// Capping a wire with `η` and then contracting with `ε` is the identity,
/// on either side.
pub fn check_snake(r: &mut ChaCha8Rng) -> Check {
    let d = r.gen_range(1..=4);
    let rho = random_psd_upto(r, d, d);
    let t = |s: &str| s.parse::<PregroupType>().unwrap();
    let word = WordMeaning::from_dims("a", t("n"), vec![d], rho.clone()).unwrap();
    let right_cup = WordMeaning::from_dims("η", t("n^r n"), vec![d, d], cup_state(d)).unwrap();
    let left_cup = WordMeaning::from_dims("η", t("n n^l"), vec![d, d], cup_state(d)).unwrap();
    for words in [vec![word.clone(), right_cup], vec![left_cup, word]] {
        let types: Vec<PregroupType> = words.iter().map(|w| w.ptype.clone()).collect();
        let diag = reduce(&types, &t("n")).ok_or("snake does not reduce")?;
        let out = compose(&words, &diag).map_err(|e| e.to_string())?;
        let err = out.op().max_abs_diff(&rho);
        if err > 1e-10 {
            return Err(format!("snake error {err}"));
        }
    }
    Ok(())
}

/// A random grammatical-looking sequence: simple types over `{n, s}`, cut
/// into words, that reduces to some target of length ≤ 2.
pub fn random_reducible(r: &mut ChaCha8Rng, max_total: usize) -> (Vec<WordMeaning>, ReductionDiagram) {
    let atoms = ["n", "s"];
    let targets: Vec<PregroupType> = {
        let mut v = vec![PregroupType::unit()];
        for a in atoms {
            v.push(PregroupType::atom(a));
        }
        v
    };
    loop {
        let len = r.gen_range(1..=6);
        let simples: Vec<SimpleType> = (0..len)
            .map(|_| SimpleType::new(atoms[r.gen_range(0..2)], r.gen_range(-1..=1)))
            .collect();
        let dims_of = |base: &str| if base == "n" { 2 } else { 1 + (len % 2) };
        let mut words = Vec::new();
        let mut start = 0;
        while start < len {
            let take = r.gen_range(1..=(len - start).min(3));
            let ptype = PregroupType::new(simples[start..start + take].to_vec());
            let wire_dims: Vec<usize> = ptype.simples.iter().map(|s| dims_of(&s.base)).collect();
            let total: usize = wire_dims.iter().product();
            let op = random_psd_upto(r, total, total.min(3));
            words.push(WordMeaning::from_dims(format!("w{start}"), ptype, wire_dims, op).unwrap());
            start += take;
        }
        let total: usize = words.iter().map(|w| w.op().dim()).product();
        if total > max_total {
            continue;
        }
        let types: Vec<PregroupType> = words.iter().map(|w| w.ptype.clone()).collect();
        for target in &targets {
            if let Some(d) = reduce(&types, target) {
                if !d.links.is_empty() {
                    return (words, d);
                }
            }
        }
    }
}

/// Generic contraction matches the brute-force walk, and its output is PSD.
pub fn check_brute_force(r: &mut ChaCha8Rng) -> Check {
    let (words, d) = random_reducible(r, 64);
    let fast = compose(&words, &d).map_err(|e| e.to_string())?;
    let slow = brute_force_compose(&words, &d);
    let err = fast.op().max_abs_diff(&slow);
    if err > 1e-10 {
        return Err(format!("generic vs brute force differ by {err} on {}", d.source));
    }
    if !is_psd(fast.op(), 1e-10) {
        return Err(format!("output not PSD: {}", min_eigenvalue(fast.op())));
    }
    Ok(())
}

/// The reducer agrees with exhaustive enumeration on existence for every
/// target of length ≤ 2, and what it returns is the least enumerated diagram.
pub fn check_reducer(r: &mut ChaCha8Rng) -> Check {
    let atoms = ["n", "s"];
    let len = r.gen_range(0..=8);
    let seq: Vec<SimpleType> = (0..len)
        .map(|_| SimpleType::new(atoms[r.gen_range(0..2)], r.gen_range(-1..=1)))
        .collect();
    let simples: Vec<SimpleType> = atoms
        .iter()
        .flat_map(|a| (-1..=1).map(move |z| SimpleType::new(*a, z)))
        .collect();
    let mut targets: Vec<Vec<SimpleType>> = vec![vec![]];
    for a in &simples {
        targets.push(vec![a.clone()]);
        for b in &simples {
            targets.push(vec![a.clone(), b.clone()]);
        }
    }
    let all = planar_contractions(&seq);
    let source = PregroupType::new(seq.clone());
    for target in targets {
        let oracle = reductions_to(&seq, &all, &target);
        let target = PregroupType::new(target);
        match reduce(core::slice::from_ref(&source), &target) {
            None if oracle.is_empty() => {}
            None => return Err(format!("missed `{source}` → `{target}`")),
            Some(d) => {
                d.validate().map_err(|e| e.to_string())?;
                let pair = (d.links.clone(), d.residuals.clone());
                if !oracle.contains(&&pair) {
                    return Err(format!("`{source}` → `{target}`: oracle rejects {d}"));
                }
                if oracle.iter().any(|(l, _)| l < &d.links) {
                    return Err(format!("`{source}` → `{target}`: {d} is not the least diagram"));
                }
            }
        }
    }
    Ok(())
}
