//! Operator-norm estimation for discretized positive kernels: exact
//! column/row reductions at the exponent endpoints, power iteration at q = 2,
//! and a two-sided duality-map power ascent for mixed norms. All estimates of
//! the iterative kind are Rayleigh quotients of explicit positive vectors, so
//! they are certified lower bounds that converge from below.

use crate::error::{Error, Result};
use crate::quad::Accumulator;

/// Verdict of a truncation scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Verdict {
    Bounded,
    Unbounded,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Bounded => "bounded",
            Verdict::Unbounded => "unbounded",
            Verdict::Inconclusive => "inconclusive",
        };
        write!(f, "{s}")
    }
}

/// Norm estimates across nested truncations plus the verdict.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct OperatorReport {
    pub truncation_levels: Vec<f64>,
    pub norm_estimates: Vec<f64>,
    pub verdict: Verdict,
    /// geometric-mean growth factor per truncation step
    pub growth_ratio: f64,
}

/// Verdict rule, frozen: bounded when the whole scan moved by less than 10%,
/// unbounded when every step grew by at least 25%, inconclusive otherwise.
pub fn verdict_from_estimates(levels: &[f64], estimates: &[f64]) -> OperatorReport {
    assert!(estimates.len() >= 3 && levels.len() == estimates.len());
    let first = estimates[0];
    let last = *estimates.last().unwrap();
    let steps = estimates.len() - 1;
    let growth_ratio = (last / first).powf(1.0 / steps as f64);
    let all_grow = estimates.windows(2).all(|w| w[1] >= 1.25 * w[0]);
    let verdict = if last < 1.1 * first {
        Verdict::Bounded
    } else if all_grow {
        Verdict::Unbounded
    } else {
        Verdict::Inconclusive
    };
    OperatorReport {
        truncation_levels: levels.to_vec(),
        norm_estimates: estimates.to_vec(),
        verdict,
        growth_ratio,
    }
}

/// A positive integral operator discretized on a measured point set:
/// (Tg)_i = sum_j kernel[i][j] g_j cells[j].
pub struct DiscreteOperator {
    pub kernel: Vec<Vec<f64>>,
    pub cells: Vec<f64>,
}

impl DiscreteOperator {
    pub fn apply(&self, g: &[f64]) -> Vec<f64> {
        self.kernel
            .iter()
            .map(|row| {
                let mut acc = Accumulator::default();
                for ((k, gj), c) in row.iter().zip(g).zip(&self.cells) {
                    acc.add(k * gj * c);
                }
                acc.value()
            })
            .collect()
    }

    fn apply_adjoint(&self, u: &[f64]) -> Vec<f64> {
        // adjoint with respect to the weighted inner product sum u v c:
        // (T* w)_j = sum_i K_ij w_i c_i
        let n = self.cells.len();
        let mut out = vec![0.0; n];
        for (i, row) in self.kernel.iter().enumerate() {
            let ui = u[i] * self.cells[i];
            for (o, k) in out.iter_mut().zip(row) {
                *o += k * ui;
            }
        }
        out
    }

    fn lq_norm(&self, g: &[f64], q: f64) -> f64 {
        if q.is_infinite() {
            g.iter().fold(0.0, |m, &v| m.max(v.abs()))
        } else {
            let mut acc = Accumulator::default();
            for (v, c) in g.iter().zip(&self.cells) {
                acc.add(v.abs().powf(q) * c);
            }
            acc.value().powf(1.0 / q)
        }
    }

    /// Operator norm on L^q of the cell measure. Exact closed forms at
    /// q = 1 and q = infinity; power iteration on T*T at q = 2; Boyd-style
    /// nonlinear power method for other finite q.
    pub fn opnorm_lq(&self, q: f64) -> Result<f64> {
        let n = self.cells.len();
        if n == 0 {
            return Err(Error::argument("empty operator"));
        }
        if q == 1.0 {
            let mut best = 0.0_f64;
            for j in 0..n {
                let mut acc = Accumulator::default();
                for i in 0..n {
                    acc.add(self.kernel[i][j] * self.cells[i]);
                }
                best = best.max(acc.value());
            }
            return Ok(best);
        }
        if q.is_infinite() {
            let mut best = 0.0_f64;
            for row in &self.kernel {
                let mut acc = Accumulator::default();
                for (k, c) in row.iter().zip(&self.cells) {
                    acc.add(k * c);
                }
                best = best.max(acc.value());
            }
            return Ok(best);
        }
        if !(q > 1.0) {
            return Err(Error::argument("q must be in [1, inf]"));
        }
        // nonlinear power ascent: for q = 2 this is plain power iteration on
        // T*T; positivity of the kernel makes the Perron direction positive.
        let mut x: Vec<f64> = vec![1.0; n];
        let mut best = 0.0_f64;
        let mut prev = 0.0_f64;
        for _ in 0..200 {
            let nx = self.lq_norm(&x, q);
            if nx == 0.0 {
                break;
            }
            let y = self.apply(&x);
            let lambda = self.lq_norm(&y, q) / nx;
            best = best.max(lambda);
            // dual direction: |y|^{q-1} normalized, pulled back by T*
            let yq: Vec<f64> = y.iter().map(|v| v.abs().powf(q - 1.0)).collect();
            let z = self.apply_adjoint(&yq);
            let mut nxt: Vec<f64> = z.iter().map(|v| v.abs().powf(1.0 / (q - 1.0))).collect();
            let nn = self.lq_norm(&nxt, q);
            if nn == 0.0 {
                break;
            }
            nxt.iter_mut().for_each(|v| *v /= nn);
            x = nxt;
            if (lambda - prev).abs() <= 1e-8 * lambda.max(1e-300) {
                break;
            }
            prev = lambda;
        }
        Ok(best)
    }
}

/// Layer-structured mixed norm data: nodes grouped by cone layer with inner
/// Lebesgue cell weights, layer Delta^s weights and outer nu cells.
#[derive(Debug, Clone)]
pub struct MixedSpace {
    pub ranges: Vec<std::ops::Range<usize>>,
    /// per-layer inner Lebesgue cell weight
    pub w_in: Vec<f64>,
    /// per-layer Delta^s(h)
    pub w_delta: Vec<f64>,
    /// per-layer nu_Omega cell
    pub nu: Vec<f64>,
    pub p: f64,
    pub q: f64,
}

impl MixedSpace {
    pub fn node_count(&self) -> usize {
        self.ranges.last().map(|r| r.end).unwrap_or(0)
    }

    fn layer_inner(&self, l: usize, f: &[f64]) -> f64 {
        let r = self.ranges[l].clone();
        if self.p.is_infinite() {
            f[r].iter().fold(0.0, |m, &v| m.max(v.abs()))
        } else {
            let mut acc = Accumulator::default();
            for v in &f[r] {
                acc.add(v.abs().powf(self.p) * self.w_in[l]);
            }
            acc.value().powf(1.0 / self.p)
        }
    }

    /// The mixed norm of a (possibly signed) node vector.
    pub fn norm(&self, f: &[f64]) -> f64 {
        let mut acc = Accumulator::default();
        let mut sup = 0.0_f64;
        for l in 0..self.ranges.len() {
            let a = self.w_delta[l] * self.layer_inner(l, f);
            if self.q.is_infinite() {
                sup = sup.max(a);
            } else {
                acc.add(a.powf(self.q) * self.nu[l]);
            }
        }
        if self.q.is_infinite() {
            sup
        } else {
            acc.value().powf(1.0 / self.q)
        }
    }

    /// Norming functional of a positive f: g >= 0 with <f, g> = ||f|| and
    /// dual norm 1 (a subgradient of the norm at f).
    pub fn norming_dual(&self, f: &[f64]) -> Vec<f64> {
        let nl = self.ranges.len();
        let mut g = vec![0.0; self.node_count()];
        let a: Vec<f64> = (0..nl).map(|l| self.layer_inner(l, f)).collect();
        let total = self.norm(f);
        if total == 0.0 {
            return g;
        }
        let active: Vec<usize> = if self.q.is_infinite() {
            // sup over layers: subgradient concentrates on the best layer
            let best = (0..nl)
                .max_by(|&i, &j| {
                    (self.w_delta[i] * a[i])
                        .partial_cmp(&(self.w_delta[j] * a[j]))
                        .unwrap()
                })
                .unwrap();
            vec![best]
        } else {
            (0..nl).collect()
        };
        for &l in &active {
            if a[l] == 0.0 {
                continue;
            }
            // outer factor per layer
            let outer = if self.q.is_infinite() {
                self.w_delta[l]
            } else {
                total.powf(1.0 - self.q)
                    * self.nu[l]
                    * self.w_delta[l].powf(self.q)
                    * a[l].powf(self.q - 1.0)
            };
            let r = self.ranges[l].clone();
            if self.p.is_infinite() {
                // point mass at the maximizing node
                let i = r
                    .clone()
                    .max_by(|&i, &j| f[i].abs().partial_cmp(&f[j].abs()).unwrap())
                    .unwrap();
                g[i] = outer;
            } else {
                let inner_scale = a[l].powf(1.0 - self.p) * self.w_in[l];
                for i in r {
                    g[i] = outer * inner_scale * f[i].abs().powf(self.p - 1.0);
                }
                if self.q.is_infinite() {
                    // normalize so <f, g> = ||f||: outer factor times a^{1-p} sum f^p w = W a
                }
            }
        }
        g
    }

    /// Dual norm of a positive functional v under the plain pairing
    /// sum_i f_i v_i, together with the maximizing unit vector.
    pub fn dual_norming(&self, v: &[f64]) -> (f64, Vec<f64>) {
        let nl = self.ranges.len();
        let mut f = vec![0.0; self.node_count()];
        // per-layer: beta_l = sup { <f_l, v_l> : inner norm a_l = 1 }
        let mut beta = vec![0.0; nl];
        let mut profile: Vec<Vec<(usize, f64)>> = vec![vec![]; nl];
        for l in 0..nl {
            let r = self.ranges[l].clone();
            if self.p == 1.0 {
                // concentrate on the best node per unit of L1 mass
                if let Some(i) = r
                    .clone()
                    .max_by(|&i, &j| v[i].partial_cmp(&v[j]).unwrap())
                {
                    beta[l] = v[i] / self.w_in[l];
                    profile[l] = vec![(i, 1.0 / self.w_in[l])];
                }
            } else if self.p.is_infinite() {
                // flat profile
                let sum: f64 = v[r.clone()].iter().sum();
                beta[l] = sum;
                profile[l] = r.map(|i| (i, 1.0)).collect();
            } else {
                // t_i = (v_i / w)^{1/(p-1)}; a(t) = tau; <t, v> = w sum t^p = tau^p
                let pm1 = self.p - 1.0;
                let t: Vec<(usize, f64)> = r
                    .clone()
                    .map(|i| (i, (v[i] / self.w_in[l]).max(0.0).powf(1.0 / pm1)))
                    .collect();
                let mut acc = Accumulator::default();
                for (_, ti) in &t {
                    acc.add(ti.powf(self.p) * self.w_in[l]);
                }
                let tau = acc.value().powf(1.0 / self.p);
                if tau > 0.0 {
                    beta[l] = tau.powf(self.p - 1.0);
                    profile[l] = t.iter().map(|&(i, ti)| (i, ti / tau)).collect();
                }
            }
        }
        // outer: maximize sum_l A_l (beta_l / W_l) subject to ||A||_{l^q(nu)} = 1,
        // where A_l = W_l a_l
        let gamma: Vec<f64> = (0..nl)
            .map(|l| {
                if self.w_delta[l] > 0.0 {
                    beta[l] / self.w_delta[l]
                } else {
                    0.0
                }
            })
            .collect();
        let mut a_layer = vec![0.0; nl];
        let dual;
        if self.q.is_infinite() {
            // max A_l = 1: all layers at full budget
            for l in 0..nl {
                a_layer[l] = 1.0 / self.w_delta[l].max(1e-300);
            }
            dual = gamma.iter().sum::<f64>();
        } else if self.q == 1.0 {
            let best = (0..nl)
                .max_by(|&i, &j| {
                    (gamma[i] / self.nu[i])
                        .partial_cmp(&(gamma[j] / self.nu[j]))
                        .unwrap()
                })
                .unwrap();
            a_layer[best] = 1.0 / (self.nu[best] * self.w_delta[best]).max(1e-300);
            dual = gamma[best] / self.nu[best];
        } else {
            let qm1 = self.q - 1.0;
            // A_l proportional to (gamma_l / nu_l)^{1/(q-1)}
            let araw: Vec<f64> = (0..nl)
                .map(|l| (gamma[l] / self.nu[l].max(1e-300)).powf(1.0 / qm1))
                .collect();
            let mut acc = Accumulator::default();
            for (l, &al) in araw.iter().enumerate() {
                acc.add(al.powf(self.q) * self.nu[l]);
            }
            let norm_a = acc.value().powf(1.0 / self.q);
            let mut dacc = Accumulator::default();
            for (l, &al) in araw.iter().enumerate() {
                let a = al / norm_a.max(1e-300);
                a_layer[l] = a / self.w_delta[l].max(1e-300);
                dacc.add(a * gamma[l]);
            }
            dual = dacc.value();
        }
        for l in 0..nl {
            for &(i, ti) in &profile[l] {
                f[i] = a_layer[l] * ti;
            }
        }
        // final safety normalization
        let nf = self.norm(&f);
        if nf > 0.0 {
            f.iter_mut().for_each(|x| *x /= nf);
        }
        (dual, f)
    }
}

/// Norm estimate for a positive operator between two mixed spaces by
/// two-sided duality-map power ascent. Every reported value is a Rayleigh
/// quotient of an explicit positive vector, hence a certified lower bound.
pub fn mixed_opnorm_rect(
    apply: &dyn Fn(&[f64]) -> Vec<f64>,
    apply_transpose: &dyn Fn(&[f64]) -> Vec<f64>,
    in_space: &MixedSpace,
    out_space: &MixedSpace,
    max_iters: usize,
) -> Result<f64> {
    let n = in_space.node_count();
    if n == 0 || out_space.node_count() == 0 {
        return Err(Error::argument("empty mixed space"));
    }
    let mut f: Vec<f64> = vec![1.0; n];
    let nf = in_space.norm(&f);
    if nf == 0.0 {
        return Err(Error::argument("degenerate mixed space"));
    }
    f.iter_mut().for_each(|x| *x /= nf);
    let mut best = 0.0_f64;
    let mut prev = -1.0_f64;
    for _ in 0..max_iters {
        let u = apply(&f);
        let lambda = out_space.norm(&u) / in_space.norm(&f).max(1e-300);
        best = best.max(lambda);
        if (lambda - prev).abs() <= 1e-8 * lambda.max(1e-300) {
            break;
        }
        prev = lambda;
        let g = out_space.norming_dual(&u);
        let v = apply_transpose(&g);
        let (_, fnext) = in_space.dual_norming(&v);
        if fnext.iter().all(|&x| x == 0.0) {
            break;
        }
        f = fnext;
    }
    Ok(best)
}

/// Endomorphism case: same space on both sides.
pub fn mixed_opnorm(
    apply: &dyn Fn(&[f64]) -> Vec<f64>,
    apply_transpose: &dyn Fn(&[f64]) -> Vec<f64>,
    space: &MixedSpace,
    max_iters: usize,
) -> Result<f64> {
    mixed_opnorm_rect(apply, apply_transpose, space, space, max_iters)
}

/// An l^q(cells) space seen as a mixed space with one node per layer (the
/// inner exponent is then immaterial).
pub fn sequence_space(cells: &[f64], weights: &[f64], q: f64) -> MixedSpace {
    MixedSpace {
        ranges: (0..cells.len()).map(|i| i..i + 1).collect(),
        w_in: vec![1.0; cells.len()],
        w_delta: weights.to_vec(),
        nu: cells.to_vec(),
        p: 2.0,
        q,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank_one(u: &[f64], v: &[f64], cells: &[f64]) -> DiscreteOperator {
        let kernel = u
            .iter()
            .map(|&ui| v.iter().map(|&vj| ui * vj).collect())
            .collect();
        DiscreteOperator {
            kernel,
            cells: cells.to_vec(),
        }
    }

    fn lq(v: &[f64], c: &[f64], q: f64) -> f64 {
        if q.is_infinite() {
            v.iter().fold(0.0, |m, &x| m.max(x.abs()))
        } else {
            v.iter()
                .zip(c)
                .map(|(x, w)| x.abs().powf(q) * w)
                .sum::<f64>()
                .powf(1.0 / q)
        }
    }

    #[test]
    fn identity_operator_has_norm_one() {
        let n = 6;
        let cells = vec![0.4; n];
        // identity as a kernel against the measure: K = diag(1/cell)
        let mut kernel = vec![vec![0.0; n]; n];
        for (i, row) in kernel.iter_mut().enumerate() {
            row[i] = 1.0 / cells[i];
        }
        let op = DiscreteOperator { kernel, cells };
        for q in [1.0, 1.5, 2.0, f64::INFINITY] {
            let nrm = op.opnorm_lq(q).unwrap();
            assert!((nrm - 1.0).abs() < 1e-8, "q={q}: {nrm}");
        }
    }

    #[test]
    fn rank_one_matches_holder_pair() {
        let u = vec![0.3, 1.7, 0.2, 0.9, 0.05];
        let v = vec![1.1, 0.4, 0.8, 0.1, 2.0];
        let cells = vec![0.2, 0.5, 0.3, 0.7, 0.1];
        let op = rank_one(&u, &v, &cells);
        for q in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
            let qp = if q == 1.0 {
                f64::INFINITY
            } else if q.is_infinite() {
                1.0
            } else {
                q / (q - 1.0)
            };
            let expected = lq(&u, &cells, q) * lq(&v, &cells, qp);
            let got = op.opnorm_lq(q).unwrap();
            assert!(
                (got - expected).abs() < 1e-6 * expected,
                "q={q}: {got} vs {expected}"
            );
        }
    }

    fn toy_space(p: f64, q: f64) -> MixedSpace {
        MixedSpace {
            ranges: vec![0..3, 3..5, 5..9],
            w_in: vec![0.2, 0.5, 0.1],
            w_delta: vec![1.3, 0.7, 2.0],
            nu: vec![0.4, 0.8, 0.3],
            p,
            q,
        }
    }

    #[test]
    fn norming_dual_pairs_to_norm() {
        for &(p, q) in &[
            (1.0, 1.0),
            (1.0, 2.0),
            (2.0, 1.0),
            (2.0, 2.0),
            (1.0, f64::INFINITY),
            (2.0, f64::INFINITY),
            (1.5, 3.0),
        ] {
            let sp = toy_space(p, q);
            let f: Vec<f64> = (0..9).map(|i| 0.3 + ((i * 7) % 5) as f64 * 0.31).collect();
            let g = sp.norming_dual(&f);
            let pair: f64 = f.iter().zip(&g).map(|(a, b)| a * b).sum();
            let n = sp.norm(&f);
            assert!((pair - n).abs() < 1e-10 * n, "p={p} q={q}: {pair} vs {n}");
        }
    }

    #[test]
    fn dual_norming_maximizes_pairing() {
        for &(p, q) in &[
            (1.0, 1.0),
            (1.0, 2.0),
            (2.0, 1.0),
            (2.0, 2.0),
            (1.0, f64::INFINITY),
            (2.0, f64::INFINITY),
        ] {
            let sp = toy_space(p, q);
            let v: Vec<f64> = (0..9).map(|i| 0.1 + ((i * 11) % 7) as f64 * 0.17).collect();
            let (dual, f) = sp.dual_norming(&v);
            let pair: f64 = f.iter().zip(&v).map(|(a, b)| a * b).sum();
            let nf = sp.norm(&f);
            assert!((nf - 1.0).abs() < 1e-9, "p={p} q={q}: unit {nf}");
            assert!((pair - dual).abs() < 1e-9 * dual, "p={p} q={q}");
            // no admissible test vector beats it (random probes)
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
            for _ in 0..200 {
                let probe: Vec<f64> = (0..9).map(|_| rng.gen_range(0.0..1.0)).collect();
                let pn = sp.norm(&probe);
                if pn == 0.0 {
                    continue;
                }
                let pp: f64 = probe.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() / pn;
                assert!(pp <= dual * (1.0 + 1e-9), "p={p} q={q}: probe beat dual");
            }
        }
    }

    #[test]
    fn mixed_rank_one_norm() {
        // M f = u <v, f>: norm = ||u|| * dual-norm(v)
        for &(p, q) in &[
            (1.0, 1.0),
            (1.0, 2.0),
            (2.0, 1.0),
            (2.0, 2.0),
            (1.0, f64::INFINITY),
            (2.0, f64::INFINITY),
        ] {
            let sp = toy_space(p, q);
            let u: Vec<f64> = (0..9).map(|i| 0.2 + ((i * 5) % 4) as f64 * 0.27).collect();
            let v: Vec<f64> = (0..9).map(|i| 0.15 + ((i * 3) % 6) as f64 * 0.21).collect();
            let (dual_v, _) = sp.dual_norming(&v);
            let expected = sp.norm(&u) * dual_v;
            let uu = u.clone();
            let vv = v.clone();
            let apply = move |f: &[f64]| -> Vec<f64> {
                let s: f64 = vv.iter().zip(f).map(|(a, b)| a * b).sum();
                uu.iter().map(|&x| x * s).collect()
            };
            let uu2 = u.clone();
            let vv2 = v.clone();
            let applyt = move |g: &[f64]| -> Vec<f64> {
                let s: f64 = uu2.iter().zip(g).map(|(a, b)| a * b).sum();
                vv2.iter().map(|&x| x * s).collect()
            };
            let got = mixed_opnorm(&apply, &applyt, &sp, 60).unwrap();
            assert!(
                (got - expected).abs() < 1e-6 * expected,
                "p={p} q={q}: {got} vs {expected}"
            );
        }
    }

    #[test]
    fn verdict_rules() {
        let levels = vec![1.0, 2.0, 4.0];
        let r = verdict_from_estimates(&levels, &[1.0, 1.02, 1.05]);
        assert_eq!(r.verdict, Verdict::Bounded);
        let r = verdict_from_estimates(&levels, &[1.0, 1.5, 2.4]);
        assert_eq!(r.verdict, Verdict::Unbounded);
        assert!(r.growth_ratio > 1.5);
        let r = verdict_from_estimates(&levels, &[1.0, 1.2, 1.25]);
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }
}
