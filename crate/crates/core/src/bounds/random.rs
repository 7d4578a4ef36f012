use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::BoundsError;
use crate::qsim::{
    exact_distribution, pauli_y, sigma, Circuit, GateKind, Outcome, QsimError, SeedStream, Wire,
};
use crate::witness::{sign, Permutation};
use crate::CMatrix;

type C = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// How trial strategies are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Search {
    /// Independent Gaussian draws.
    Uniform,
    /// Gaussian kicks of the given size around the maximal complex strategy.
    Perturb { scale: f64 },
    /// Greedy local ascent from a Gaussian draw, one chain per trial.
    Climb { steps: usize, scale: f64 },
}

/// Pure product state `ψ_AP ⊗ ψ_QC`, `±1` observables `A_x = 2|u_x⟩⟨u_x| − 1`,
/// `C_z = 2|v_z⟩⟨v_z| − 1`, and a basis `β_{η,b}` of `PQ` per `η`.
///
/// Amplitude index is `2·first + second` (`ψ_AP[2a + p]`, `β[2p + q]`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Strategy {
    pub psi_ap: [C; 4],
    pub psi_qc: [C; 4],
    pub a: [[C; 2]; 3],
    pub c: [[C; 2]; 3],
    pub b: [[[C; 4]; 4]; 6],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RandomSearchConfig {
    pub field: Field,
    pub trials: u64,
    pub seed: u64,
    pub search: Search,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RandomSearchResult {
    pub best: f64,
    pub best_trial: u64,
    pub strategy: Strategy,
    pub config: RandomSearchConfig,
}

const CHUNK: u64 = 4096;

fn normalize<const N: usize>(v: &mut [C; N]) {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in v.iter_mut() {
        *z /= n;
    }
}

fn inner<const N: usize>(u: &[C; N], v: &[C; N]) -> C {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

fn strip<const N: usize>(v: &mut [C; N], done: &[[C; N]]) -> f64 {
    for d in done {
        let proj = inner(d, v);
        for (x, p) in v.iter_mut().zip(d) {
            *x -= proj * p;
        }
    }
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Modified Gram–Schmidt; a degenerate vector is replaced by the first
/// standard basis vector that is still independent.
fn orthonormalize(mut vs: [[C; 4]; 4]) -> [[C; 4]; 4] {
    for i in 0..4 {
        let (done, rest) = vs.split_at_mut(i);
        let v = &mut rest[0];
        if strip(v, done) < 1e-9 {
            for k in 0..4 {
                let mut e = [C::new(0.0, 0.0); 4];
                e[k] = C::new(1.0, 0.0);
                if strip(&mut e, done) > 1e-3 {
                    *v = e;
                    break;
                }
            }
        }
        normalize(v);
    }
    vs
}

fn gaussian<R: Rng, const N: usize>(rng: &mut R, field: Field) -> [C; N] {
    std::array::from_fn(|_| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = match field {
            Field::Real => 0.0,
            Field::Complex => rng.sample(StandardNormal),
        };
        C::new(re, im)
    })
}

fn unit<R: Rng, const N: usize>(rng: &mut R, field: Field) -> [C; N] {
    let mut v = gaussian(rng, field);
    normalize(&mut v);
    v
}

fn kick<R: Rng, const N: usize>(v: &[C; N], rng: &mut R, field: Field, scale: f64) -> [C; N] {
    let noise: [C; N] = gaussian(rng, field);
    let mut out = std::array::from_fn(|i| v[i] + noise[i] * scale);
    normalize(&mut out);
    out
}

/// Real part after rotating the largest amplitude onto the positive axis.
fn project<const N: usize>(v: &[C; N], field: Field) -> [C; N] {
    let mut out = match field {
        Field::Complex => *v,
        Field::Real => {
            let big = v.iter().copied().fold(C::new(0.0, 0.0), |m, z| if z.norm() > m.norm() { z } else { m });
            let phase = big.conj() / big.norm();
            v.map(|z| C::new((z * phase).re, 0.0))
        }
    };
    normalize(&mut out);
    out
}

fn eigvec_plus(m: &CMatrix) -> [C; 2] {
    // +1 eigenvector of a Pauli: a nonzero column of (1 + σ)/2
    let p = (CMatrix::identity(2, 2) + m) * C::new(0.5, 0.0);
    let col = if p[(0, 0)].norm() + p[(1, 0)].norm() > 1e-9 { 0 } else { 1 };
    let mut v = [p[(0, col)], p[(1, col)]];
    normalize(&mut v);
    v
}

fn vec_row_major(m: &CMatrix) -> [C; 4] {
    [m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]]
}

impl Strategy {
    /// The construction reaching `F = 18`: singlets from `iσ₂/√2`,
    /// `A_x = C_x = σ_x`, and `β_{η,b} = vec(R_η σ_b σ₂)/√2`.
    pub fn complex_optimum() -> Self {
        let singlet = vec_row_major(&(pauli_y() * C::new(0.0, FRAC_1_SQRT_2)));
        let axes: [[C; 2]; 3] = std::array::from_fn(|x| eigvec_plus(&sigma(x + 1)));
        let b = std::array::from_fn(|e| {
            let r = super::rotation(Permutation::ALL[e]);
            std::array::from_fn(|bi| vec_row_major(&(&r * sigma(bi) * pauli_y() * C::new(FRAC_1_SQRT_2, 0.0))))
        });
        Self {
            psi_ap: singlet,
            psi_qc: singlet,
            a: axes,
            c: axes,
            b,
        }
    }

    pub fn random<R: Rng>(rng: &mut R, field: Field) -> Self {
        Self {
            psi_ap: unit(rng, field),
            psi_qc: unit(rng, field),
            a: std::array::from_fn(|_| unit(rng, field)),
            c: std::array::from_fn(|_| unit(rng, field)),
            b: std::array::from_fn(|_| orthonormalize(std::array::from_fn(|_| gaussian(rng, field)))),
        }
    }

    pub fn perturbed<R: Rng>(&self, rng: &mut R, field: Field, scale: f64) -> Self {
        Self {
            psi_ap: kick(&self.psi_ap, rng, field, scale),
            psi_qc: kick(&self.psi_qc, rng, field, scale),
            a: std::array::from_fn(|i| kick(&self.a[i], rng, field, scale)),
            c: std::array::from_fn(|i| kick(&self.c[i], rng, field, scale)),
            b: std::array::from_fn(|e| {
                let kicked: [[C; 4]; 4] = std::array::from_fn(|k| {
                    let noise: [C; 4] = gaussian(rng, field);
                    std::array::from_fn(|i| self.b[e][k][i] + noise[i] * scale)
                });
                orthonormalize(kicked)
            }),
        }
    }

    /// Nearest strategy over the given field (real parts, renormalised).
    pub fn projected(&self, field: Field) -> Self {
        Self {
            psi_ap: project(&self.psi_ap, field),
            psi_qc: project(&self.psi_qc, field),
            a: self.a.map(|v| project(&v, field)),
            c: self.c.map(|v| project(&v, field)),
            b: self.b.map(|basis| orthonormalize(basis.map(|v| project(&v, field)))),
        }
    }

    fn observable(u: &[C; 2]) -> [[C; 2]; 2] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let delta = if i == j { 1.0 } else { 0.0 };
                u[i] * u[j].conj() * 2.0 - delta
            })
        })
    }

    /// `Tr_A[(A ⊗ 1)|ψ⟩⟨ψ|]` on `P` (`outer_first`) or `Tr_C[(1 ⊗ C)|ψ⟩⟨ψ|]` on `Q`.
    fn reduced(psi: &[C; 4], obs: &[[C; 2]; 2], outer_first: bool) -> [[C; 2]; 2] {
        let amp = |outer: usize, inner: usize| {
            if outer_first {
                psi[2 * outer + inner]
            } else {
                psi[2 * inner + outer]
            }
        };
        std::array::from_fn(|r| {
            std::array::from_fn(|s| {
                let mut acc = C::new(0.0, 0.0);
                for (o, row) in obs.iter().enumerate() {
                    for (o2, entry) in row.iter().enumerate() {
                        acc += entry * amp(o2, r) * amp(o, s).conj();
                    }
                }
                acc
            })
        })
    }

    /// `⟨A_x B_{bη} C_z⟩` for every `η` (by index), `z` and `b`.
    pub fn correlations(&self) -> [[[f64; 4]; 3]; 6] {
        let m: [[[C; 2]; 2]; 3] =
            std::array::from_fn(|x| Self::reduced(&self.psi_ap, &Self::observable(&self.a[x]), true));
        let n: [[[C; 2]; 2]; 3] =
            std::array::from_fn(|z| Self::reduced(&self.psi_qc, &Self::observable(&self.c[z]), false));
        std::array::from_fn(|e| {
            let eta = Permutation::ALL[e];
            std::array::from_fn(|zi| {
                let mx = &m[(eta.apply(zi as u8 + 1) - 1) as usize];
                let nz = &n[zi];
                std::array::from_fn(|b| {
                    let beta = &self.b[e][b];
                    let mut acc = C::new(0.0, 0.0);
                    for p in 0..2 {
                        for q in 0..2 {
                            for p2 in 0..2 {
                                for q2 in 0..2 {
                                    acc += beta[2 * p + q].conj() * mx[p][p2] * nz[q][q2] * beta[2 * p2 + q2];
                                }
                            }
                        }
                    }
                    acc.re
                })
            })
        })
    }

    /// The witness value of this strategy.
    pub fn witness(&self) -> f64 {
        let corr = self.correlations();
        let mut f = 0.0;
        for (e, eta) in Permutation::ALL.iter().enumerate() {
            for z in 1..=3u8 {
                for b in 0..4u8 {
                    f += f64::from(sign(*eta, z, b)) * corr[e][(z - 1) as usize][b as usize];
                }
            }
        }
        f
    }
}

/// Unitary whose first column is `v`, the rest completed from the standard basis.
fn completing_unitary<const N: usize>(v: &[C; N]) -> CMatrix {
    let mut cols: Vec<Vec<C>> = vec![v.to_vec()];
    for k in 0..N {
        if cols.len() == N {
            break;
        }
        let mut e = vec![C::new(0.0, 0.0); N];
        e[k] = C::new(1.0, 0.0);
        for col in &cols {
            let proj: C = col.iter().zip(&e).map(|(a, b)| a.conj() * b).sum();
            for (x, cval) in e.iter_mut().zip(col) {
                *x -= proj * cval;
            }
        }
        let norm = e.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(e.into_iter().map(|z| z / norm).collect());
        }
    }
    CMatrix::from_fn(N, N, |r, col| cols[col][r])
}

/// Unitary mapping the basis vectors to the computational basis (rows `vᵢ†`).
fn measuring_unitary<const N: usize>(basis: &[[C; N]]) -> CMatrix {
    CMatrix::from_fn(N, N, |r, col| basis[r][col].conj())
}

/// Evaluate a strategy by simulating 18 four-qubit circuits with custom gates.
pub fn evaluate_via_circuits(s: &Strategy) -> Result<f64, QsimError> {
    let prep_ap = GateKind::Custom(completing_unitary(&s.psi_ap));
    let prep_qc = GateKind::Custom(completing_unitary(&s.psi_qc));
    let meas = |u: &[C; 2]| {
        let perp = [-u[1].conj(), u[0].conj()];
        GateKind::Custom(measuring_unitary(&[*u, perp]))
    };
    let mut f = 0.0;
    for (e, eta) in Permutation::ALL.iter().enumerate() {
        for z in 1..=3u8 {
            let x = eta.apply(z);
            let circuit = Circuit::new()
                .gate2(prep_ap.clone(), Wire::A, Wire::P)
                .gate2(prep_qc.clone(), Wire::Q, Wire::C)
                .gate(meas(&s.a[(x - 1) as usize]), Wire::A)
                .gate(meas(&s.c[(z - 1) as usize]), Wire::C)
                .gate2(GateKind::Custom(measuring_unitary(&s.b[e])), Wire::P, Wire::Q);
            let d = exact_distribution(&circuit)?;
            for o in Outcome::all() {
                let b = o.pq();
                f += f64::from(sign(*eta, z, b)) * o.z_value(Wire::A) * o.z_value(Wire::C) * d.get(o);
            }
        }
    }
    Ok(f)
}

fn trial<R: Rng>(cfg: &RandomSearchConfig, center: &Strategy, rng: &mut R) -> (f64, Strategy) {
    match cfg.search {
        Search::Uniform => {
            let s = Strategy::random(rng, cfg.field);
            (s.witness(), s)
        }
        Search::Perturb { scale } => {
            let s = center.perturbed(rng, cfg.field, scale);
            (s.witness(), s)
        }
        Search::Climb { steps, scale } => {
            let mut s = Strategy::random(rng, cfg.field);
            let mut v = s.witness();
            for _ in 0..steps {
                let cand = s.perturbed(rng, cfg.field, scale);
                let cv = cand.witness();
                if cv > v {
                    s = cand;
                    v = cv;
                }
            }
            (v, s)
        }
    }
}

/// Best witness value over random strategies of the given field.
///
/// Trials are split into blocks of 4096; block `k` draws from stream `k` of
/// the seed, so the result does not depend on thread count.
pub fn random_strategy_max(cfg: &RandomSearchConfig) -> Result<RandomSearchResult, BoundsError> {
    if cfg.trials == 0 {
        return Err(BoundsError::ZeroTrials);
    }
    match cfg.search {
        Search::Perturb { scale } | Search::Climb { scale, .. } if !(scale.is_finite() && scale > 0.0) => {
            return Err(BoundsError::BadScale(scale));
        }
        _ => {}
    }
    let center = Strategy::complex_optimum().projected(cfg.field);
    let blocks = cfg.trials.div_ceil(CHUNK);
    let (best, best_trial, strategy) = (0..blocks)
        .into_par_iter()
        .map(|k| {
            let mut rng = SeedStream::new(cfg.seed, k).rng();
            let start = k * CHUNK;
            let end = (start + CHUNK).min(cfg.trials);
            let mut best: Option<(f64, u64, Strategy)> = None;
            for i in start..end {
                let (v, s) = trial(cfg, &center, &mut rng);
                if best.as_ref().is_none_or(|b| v > b.0) {
                    best = Some((v, i, s));
                }
            }
            best.expect("non-empty block")
        })
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
        .expect("at least one block");
    Ok(RandomSearchResult {
        best,
        best_trial,
        strategy,
        config: cfg.clone(),
    })
}
