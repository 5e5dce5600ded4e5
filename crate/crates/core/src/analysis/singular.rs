use super::{max_abs, noise_sigma, CurvaturePair, LegendreCurve};
use crate::error::{Error, Result};
use crate::numeric::crossings::{scan, touches};
use crate::scalar::{lit, to_f64, Real};
use serde::Serialize;

// Significance floor for sign changes of α and κ, relative to their maxima.
const NOISE_REL: f64 = 1e-10;
// Admission threshold for cusps, inflections and regular vertices.
const ADMIT_REL: f64 = 1e-6;
// Floor for the vertex function, relative to its natural scale.
const VERTEX_NOISE_REL: f64 = 1e-7;
// Distance to the end of a closed domain, relative to its length, below
// which an event is reported at the start.
const SEAM_REL: f64 = 1e-11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CuspType {
    Zig,
    Zag,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InflectionType {
    Flip,
    Flop,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cusp<T> {
    pub t: T,
    #[serde(rename = "type")]
    pub kind: CuspType,
    pub alpha_prime: T,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Inflection<T> {
    pub t: T,
    #[serde(rename = "type")]
    pub kind: InflectionType,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Vertex<T> {
    pub t: T,
    pub regular: bool,
}

/// Maslov index by three methods.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MaslovIndex {
    /// `k` from reducing the cyclic zig/zag word to `(ab)ᵏ`.
    pub word_reduction: i64,
    /// `½|#flip − #flop|`.
    pub flip_flop: i64,
    /// Winding of the `(α, κ)` direction.
    pub rotation: i64,
    /// All three methods agree and each count was well defined.
    pub agree: bool,
    /// Self-intersections are not checked for being double points.
    pub genericity_verified: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub cusps: usize,
    pub zigs: usize,
    pub zags: usize,
    pub inflections: usize,
    pub flips: usize,
    pub flops: usize,
    pub vertices: usize,
    pub regular_vertices: usize,
    pub degenerate_singularities: usize,
}

/// Singular structure of a Legendre curve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularityReport<T> {
    pub cusps: Vec<Cusp<T>>,
    pub inflections: Vec<Inflection<T>>,
    pub vertices: Vec<Vertex<T>>,
    pub maslov: Option<MaslovIndex>,
    pub counts: Counts,
    pub is_front: bool,
    pub is_immersion: bool,
    /// Singular points that are not ordinary cusps.
    pub degenerate_singularities: Vec<T>,
    /// `(α/κ)′` vanishes identically: every parameter is a vertex.
    pub all_vertex: bool,
    /// `α` vanishes identically: the curve is a single point.
    pub all_singular: bool,
}

/// Direction of `(α, κ)` lifted continuously in the projective line.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveCurvatureMap<T> {
    pub t: Vec<T>,
    pub theta: Vec<T>,
    pub closed: bool,
}

impl<T: Real> ProjectiveCurvatureMap<T> {
    /// Total change of the lift over the parameter interval (closing the loop
    /// for closed curves).
    pub fn total_turn(&self) -> T {
        let n = self.theta.len();
        let mut total = self.theta[n - 1] - self.theta[0];
        if self.closed {
            total = total + wrap_half(self.theta[0] - self.theta[n - 1]);
        }
        total
    }
}

fn wrap_half<T: Real>(x: T) -> T {
    let pi = T::PI();
    let mut y = x - pi * (x / pi).round();
    if y <= -pi * lit(0.5) {
        y = y + pi;
    }
    y
}

/// Lift of the angle of `(α/max|α|, κ/max|κ|)` modulo `π`.
///
/// The axis scaling is a homotopy of the pair and does not change the
/// winding; it keeps sample-to-sample steps small.
pub fn projective_curvature_map<T: Real>(cp: &CurvaturePair<T>) -> ProjectiveCurvatureMap<T> {
    let a = max_abs(&cp.alpha).max(T::min_positive_value());
    let k = max_abs(&cp.kappa).max(T::min_positive_value());
    let raw: Vec<T> = cp
        .alpha
        .iter()
        .zip(&cp.kappa)
        .map(|(&x, &y)| (y / k).atan2(x / a))
        .collect();
    let mut theta = Vec::with_capacity(raw.len());
    theta.push(raw[0]);
    for i in 1..raw.len() {
        let prev = theta[i - 1];
        theta.push(prev + wrap_half(raw[i] - raw[i - 1]));
    }
    ProjectiveCurvatureMap {
        t: cp.t.clone(),
        theta,
        closed: cp.closed,
    }
}

fn word_reduction(cusps: &[CuspType]) -> Option<i64> {
    let mut stack: Vec<CuspType> = Vec::new();
    for &c in cusps {
        if stack.last() == Some(&c) {
            stack.pop();
        } else {
            stack.push(c);
        }
    }
    while stack.len() >= 2 && stack.first() == stack.last() {
        stack.pop();
        stack.remove(0);
    }
    if stack.len() % 2 == 1 {
        None
    } else {
        Some(stack.len() as i64 / 2)
    }
}

fn maslov_from<T: Real>(
    cusps: &[Cusp<T>],
    inflections: &[Inflection<T>],
    cp: &CurvaturePair<T>,
) -> MaslovIndex {
    let word: Vec<CuspType> = cusps.iter().map(|c| c.kind).collect();
    let wr = word_reduction(&word);
    let flips = inflections
        .iter()
        .filter(|i| i.kind == InflectionType::Flip)
        .count() as i64;
    let flops = inflections.len() as i64 - flips;
    let diff = (flips - flops).abs();
    let pcm = projective_curvature_map(cp);
    let turn = pcm.total_turn();
    let two_pi = T::PI() + T::PI();
    let rotation = (turn.abs() / two_pi).round().to_i64().unwrap_or(-1);
    let word_reduction = wr.unwrap_or(-1);
    let flip_flop = diff / 2;
    let agree =
        wr.is_some() && diff % 2 == 0 && word_reduction == flip_flop && flip_flop == rotation;
    MaslovIndex {
        word_reduction,
        flip_flop,
        rotation,
        agree,
        genericity_verified: false,
    }
}

/// Cusps, inflections, vertices and (for closed curves) the Maslov index.
pub fn singularity_report<T: Real>(
    l: &LegendreCurve<T>,
    cp: &CurvaturePair<T>,
) -> Result<SingularityReport<T>> {
    let _ = l;
    let admit: T = lit(ADMIT_REL);
    let a_max = cp.max_abs_alpha();
    let k_max = cp.max_abs_kappa();
    let ap = cp.alpha_prime();
    let kp = cp.kappa_prime();
    let ap_max = max_abs(&ap);
    let kp_max = max_abs(&kp);
    let sa = cp.sampled(cp.alpha.clone());
    let sk = cp.sampled(cp.kappa.clone());
    let sap = cp.sampled(ap.clone());
    let tiny = T::min_positive_value();
    let sigma_a = noise_sigma(&cp.alpha, cp.closed);
    let sigma_k = noise_sigma(&cp.kappa, cp.closed);

    let mut cusps = Vec::new();
    let mut degenerate = Vec::new();
    let scan_a = scan(&sa, (a_max * lit(NOISE_REL)).max(sigma_a) + tiny, None);
    let all_singular = scan_a.all_small;
    if all_singular && k_max <= tiny {
        return Err(Error::NotAFront { t: to_f64(cp.t[0]) });
    }
    for c in &scan_a.crossings {
        let k0 = sk.eval(c.t);
        if k0.abs() <= admit * k_max {
            return Err(Error::NotAFront { t: to_f64(c.t) });
        }
        let a1 = sap.eval(c.t);
        if a1.abs() <= admit * ap_max {
            degenerate.push(c.t);
        } else {
            cusps.push(Cusp {
                t: c.t,
                kind: if k0 > T::zero() {
                    CuspType::Zig
                } else {
                    CuspType::Zag
                },
                alpha_prime: a1,
            });
        }
    }
    if !all_singular {
        for t in touches(&sa, a_max * admit, a_max * lit(1e-9), None) {
            if sk.eval(t).abs() <= admit * k_max {
                return Err(Error::NotAFront { t: to_f64(t) });
            }
            degenerate.push(t);
        }
    }

    let mut inflections = Vec::new();
    let scan_k = scan(&sk, (k_max * lit(NOISE_REL)).max(sigma_k) + tiny, None);
    for c in &scan_k.crossings {
        let a0 = sa.eval(c.t);
        if a0.abs() <= admit * a_max {
            return Err(Error::NotAFront { t: to_f64(c.t) });
        }
        let flip = c.rising == (a0 > T::zero());
        inflections.push(Inflection {
            t: c.t,
            kind: if flip {
                InflectionType::Flip
            } else {
                InflectionType::Flop
            },
        });
    }

    let mask: Vec<bool> = cp.kappa.iter().map(|k| k.abs() <= admit * k_max).collect();
    let w: Vec<T> = (0..cp.len())
        .map(|i| ap[i] * cp.kappa[i] - cp.alpha[i] * kp[i])
        .collect();
    let w_scale = ap_max * k_max + a_max * kp_max + a_max * k_max / cp.span;
    // Noise carried into w by the grid derivatives of α and κ.
    let w_noise = (k_max * sigma_a + a_max * sigma_k) / cp.step;
    let sw = cp.sampled(w);
    let w_floor = (w_scale * lit(VERTEX_NOISE_REL)).max(w_noise);
    let scan_w = scan(&sw, w_floor + tiny, Some(&mask));
    let all_vertex = scan_w.all_small && mask.iter().any(|m| !m) && !all_singular;
    let mut vertices: Vec<Vertex<T>> = scan_w
        .crossings
        .iter()
        .map(|c| Vertex {
            t: c.t,
            regular: sa.eval(c.t).abs() > admit * a_max,
        })
        .collect();
    vertices.extend(degenerate.iter().map(|&t| Vertex { t, regular: false }));

    // Roots found on the last cell of a closed curve may land a rounding
    // error short of the seam; report them at the start instead.
    let t0 = cp.t[0];
    let seam = |t: T| {
        if cp.closed && t0 + cp.span - t <= cp.span * lit(SEAM_REL) {
            t0
        } else {
            t
        }
    };
    let by_t = |a: &T, b: &T| a.partial_cmp(b).unwrap();
    for c in &mut cusps {
        c.t = seam(c.t);
    }
    for i in &mut inflections {
        i.t = seam(i.t);
    }
    for v in &mut vertices {
        v.t = seam(v.t);
    }
    for t in &mut degenerate {
        *t = seam(*t);
    }
    cusps.sort_by(|a, b| by_t(&a.t, &b.t));
    inflections.sort_by(|a, b| by_t(&a.t, &b.t));
    vertices.sort_by(|a, b| by_t(&a.t, &b.t));
    degenerate.sort_by(by_t);

    let maslov = if cp.closed && !all_singular {
        Some(maslov_from(&cusps, &inflections, cp))
    } else {
        None
    };
    let zigs = cusps.iter().filter(|c| c.kind == CuspType::Zig).count();
    let flips = inflections
        .iter()
        .filter(|i| i.kind == InflectionType::Flip)
        .count();
    let counts = Counts {
        cusps: cusps.len(),
        zigs,
        zags: cusps.len() - zigs,
        inflections: inflections.len(),
        flips,
        flops: inflections.len() - flips,
        vertices: vertices.len(),
        regular_vertices: vertices.iter().filter(|v| v.regular).count(),
        degenerate_singularities: degenerate.len(),
    };
    Ok(SingularityReport {
        is_immersion: cusps.is_empty() && degenerate.is_empty() && !all_singular,
        cusps,
        inflections,
        vertices,
        maslov,
        counts,
        is_front: true,
        degenerate_singularities: degenerate,
        all_vertex,
        all_singular,
    })
}

/// Maslov index of a closed front, requiring the three methods to agree.
pub fn maslov_index<T: Real>(l: &LegendreCurve<T>, cp: &CurvaturePair<T>) -> Result<MaslovIndex> {
    if !cp.closed {
        return Err(Error::NotClosed);
    }
    let report = singularity_report(l, cp)?;
    let m = report
        .maslov
        .ok_or(Error::NotAFront { t: to_f64(cp.t[0]) })?;
    if !m.agree {
        return Err(Error::MethodsDisagree {
            word_reduction: m.word_reduction,
            flip_flop: m.flip_flop,
            rotation: m.rotation,
        });
    }
    Ok(m)
}

/// Independent zig/zag test from the lateral tangents `γ′(t₀ ∓ h)`:
/// `[γ′(t₀ − h), γ′(t₀ + h)] < 0` is a zig, `> 0` a zag.
///
/// Returns `None` when the bracket is zero to working precision.
pub fn lateral_tangent_type<T: Real>(
    l: &LegendreCurve<T>,
    t0: T,
    h: T,
) -> Result<Option<CuspType>> {
    let c = l.curve();
    let (t1, t2) = (c.wrap(t0 - h), c.wrap(t0 + h));
    let (g1, g2) = (l.gamma_derivative(t1, 1)?, l.gamma_derivative(t2, 1)?);
    let s = g1.cross(g2);
    Ok(if !(s.abs() > g1.len() * g2.len() * lit(1e-12)) {
        None
    } else if s < T::zero() {
        Some(CuspType::Zig)
    } else {
        Some(CuspType::Zag)
    })
}
