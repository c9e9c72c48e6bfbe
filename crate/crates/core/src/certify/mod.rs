//! Non-origami certificates for the four-coloured subdivided tetrahedron.
//!
//! The chain: `|ver L_(q)| > threshold(N, c₂, c₃)` forces `ft(L_(q)) > N`; a
//! four-colouring gives `Λ` with `r = 4` values and `N ≥ 2r`, so no tree
//! connected sum of Delzant duals has the weighted sphere `(L_(q), Λ)`.
//! The Lipschitz constants `c₂`, `c₃` are recorded as assumptions.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::metric::{
    estimate_lipschitz, isoperimetric_constants, parse_rational, subdivided_tetrahedron,
    ConstantsJson, IsoperimetricConstants, MetricError,
};
use crate::poset::SimplicialPoset;
use crate::surgery::{fatness_bruteforce, FatnessOptions, SurgeryError};
use crate::weighted::{
    check_star_condition, coloring_to_characteristic, four_color, suspend, CharacteristicFunction,
    CharacteristicJson, Coloring, WeightedError, WeightedSphere,
};

#[derive(Debug, thiserror::Error)]
pub enum CertifyError {
    #[error("{vertex_count} vertices at q = {q} do not exceed the threshold {threshold:.2}; q = {q_min} suffices")]
    ThresholdNotMet {
        q: u32,
        vertex_count: u64,
        threshold: f64,
        q_min: u64,
    },
    #[error("the characteristic function takes {r} values but N = {n} < 2r")]
    ColoringUsesTooManyValues { r: usize, n: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("certificate is not valid: {0}")]
    InvalidCertificate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Weighted(#[from] WeightedError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
}

pub const PAPER_STATED: &str = "paper-stated";

/// A constant assumed rather than proved, with where it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    /// Exact rational, `p/q` or an integer.
    pub value: String,
    pub provenance: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(rename = "N")]
    pub n: u64,
    pub c2: Assumption,
    pub c3: Assumption,
    pub constants: ConstantsJson,
    pub q: u32,
    pub vertex_count: u64,
    /// SHA-256 of the poset JSON of `L_(q)`.
    pub sphere_digest: String,
    pub coloring: Coloring,
    pub lambda: CharacteristicJson,
    pub r: usize,
    pub chain: Vec<String>,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertifyOptions {
    pub n: u64,
    pub q: u32,
    pub c2: BigRational,
    pub c3: BigRational,
    /// Sampling depth for an empirical check of `c₂`, `c₃`; `None` skips it.
    pub corroborate_depth: Option<u32>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            n: 8,
            q: 88,
            c2: BigRational::from_integer(3.into()),
            c3: BigRational::new(1.into(), 3.into()),
            corroborate_depth: Some(16),
        }
    }
}

/// SHA-256 of the poset JSON, hex encoded.
pub fn sphere_digest(s: &SimplicialPoset) -> String {
    hex::encode(Sha256::digest(s.to_json_string().as_bytes()))
}

fn verdict_text(n: u64, r: usize) -> String {
    format!(
        "(P, Λ) is not equivariantly homeomorphic to any toric origami manifold \
         (fatness > N = {n} ≥ 2r = {}), conditional on c2 and c3",
        2 * r
    )
}

fn provenance(
    value: &BigRational,
    stated: &BigRational,
    estimate: Option<(u32, f64, bool)>,
) -> Vec<String> {
    let mut out = vec![if value == stated {
        PAPER_STATED.to_string()
    } else {
        "user-supplied".to_string()
    }];
    if let Some((depth, est, ok)) = estimate {
        let word = if ok { "corroborated" } else { "contradicted" };
        out.push(format!(
            "empirically {word}, depth {depth} (sampled extreme {est:.9})"
        ));
    }
    out
}

/// Runs the pipeline for `L_(q)`.
pub fn certify_non_origami(opts: &CertifyOptions) -> Result<Certificate, CertifyError> {
    if opts.q == 0 {
        return Err(CertifyError::InvalidParams("q must be at least 1".into()));
    }
    let consts = isoperimetric_constants(opts.n, &opts.c2, &opts.c3)?;
    let q = u64::from(opts.q);
    let vertex_count = 2 * q * q + 2;
    if !consts.exceeded_by(vertex_count) {
        return Err(CertifyError::ThresholdNotMet {
            q: opts.q,
            vertex_count,
            threshold: consts.threshold.to_f64(),
            q_min: consts.minimal_q(),
        });
    }
    let t = subdivided_tetrahedron(opts.q);
    let coloring = four_color(&t.sphere)?;
    let lambda = coloring_to_characteristic(&coloring);
    let r = lambda.value_count();
    if 2 * r as u64 > opts.n {
        return Err(CertifyError::ColoringUsesTooManyValues { r, n: opts.n });
    }
    let star = check_star_condition(&t.sphere, &lambda, false)?;
    if let Some(w) = star.witness {
        return Err(WeightedError::StarConditionFails(Box::new(w)).into());
    }

    let estimate = match opts.corroborate_depth {
        Some(d) => {
            let est = estimate_lipschitz(&subdivided_tetrahedron(1), d)?;
            let c2f = ratio_f64(&opts.c2);
            let c3f = ratio_f64(&opts.c3);
            Some((
                d,
                est.c2,
                est.c2 <= c2f + 1e-9,
                est.c3,
                est.c3 >= c3f - 1e-9,
            ))
        }
        None => None,
    };
    let stated = CertifyOptions::default();
    let c2 = Assumption {
        value: opts.c2.to_string(),
        provenance: provenance(
            &opts.c2,
            &stated.c2,
            estimate.map(|(d, e, ok, _, _)| (d, e, ok)),
        ),
    };
    let c3 = Assumption {
        value: opts.c3.to_string(),
        provenance: provenance(
            &opts.c3,
            &stated.c3,
            estimate.map(|(d, _, _, e, ok)| (d, e, ok)),
        ),
    };
    let threshold = consts.threshold.to_f64();
    let chain = vec![
        format!("|ver L_({})| = 2q² + 2 = {vertex_count} > threshold = {threshold:.2} (exact comparison)", opts.q),
        format!("hence ft(L_({})) > N = {}", opts.q, opts.n),
        format!("the four-colouring gives Λ with r = {r} values and N ≥ 2r = {}", 2 * r),
        "a tree connected sum of Delzant duals has every region R with |Λ(ver R)| ≥ |ver R| / 2, so its width is at most 2r".into(),
        "no such connected sum realises (L_(q), Λ)".into(),
    ];
    Ok(Certificate {
        n: opts.n,
        c2,
        c3,
        constants: consts.to_json(),
        q: opts.q,
        vertex_count,
        sphere_digest: sphere_digest(&t.sphere),
        coloring,
        lambda: lambda.to_json(),
        r,
        chain,
        verdict: verdict_text(opts.n, r),
    })
}

fn ratio_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub checks: Vec<CheckResult>,
    /// Detail of the first failed check.
    pub reason: Option<String>,
}

/// Recomputes every claim of `c` from `N`, `q`, `c₂`, `c₃` and the colouring.
pub fn validate_certificate(c: &Certificate) -> ValidationReport {
    let mut checks: Vec<CheckResult> = Vec::new();
    let mut check = |name: &str, result: Result<String, String>| {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        checks.push(CheckResult {
            name: name.into(),
            passed,
            detail,
        });
        passed
    };

    let consts: Option<IsoperimetricConstants> = (|| {
        let c2 = parse_rational(&c.c2.value).map_err(|e| format!("c2: {e}"))?;
        let c3 = parse_rational(&c.c3.value).map_err(|e| format!("c3: {e}"))?;
        isoperimetric_constants(c.n, &c2, &c3).map_err(|e| e.to_string())
    })()
    .map_or_else(
        |e| {
            check("constants", Err(e));
            None
        },
        Some,
    );
    if let Some(k) = &consts {
        let fresh = k.to_json();
        let same = fresh.a.coeff == c.constants.a.coeff
            && fresh.a.constant == c.constants.a.constant
            && fresh.b == c.constants.b
            && fresh.threshold.coeff == c.constants.threshold.coeff
            && fresh.threshold.constant == c.constants.threshold.constant
            && fresh.n == c.constants.n
            && fresh.branch == c.constants.branch;
        check(
            "constants",
            if same {
                Ok(format!("threshold {} recomputed", fresh.threshold.approx))
            } else {
                Err(format!(
                    "threshold mismatch: recorded {} but N, c2, c3 give {}",
                    c.constants.threshold.approx, fresh.threshold.approx
                ))
            },
        );
    }

    let expected_v = 2 * u64::from(c.q) * u64::from(c.q) + 2;
    check(
        "vertex count",
        if c.q >= 1 && c.vertex_count == expected_v {
            Ok(format!("2q² + 2 = {expected_v}"))
        } else {
            Err(format!(
                "recorded {} vertices, q = {} gives {expected_v}",
                c.vertex_count, c.q
            ))
        },
    );
    if let Some(k) = &consts {
        check(
            "threshold",
            if k.exceeded_by(expected_v) {
                Ok(format!("{expected_v} > {:.2}", k.threshold.to_f64()))
            } else {
                Err(format!(
                    "{expected_v} does not exceed {:.2}; q = {} is needed",
                    k.threshold.to_f64(),
                    k.minimal_q()
                ))
            },
        );
    }
    if c.q == 0 {
        return finish(checks);
    }

    let t = subdivided_tetrahedron(c.q);
    let digest = sphere_digest(&t.sphere);
    check(
        "digest",
        if digest == c.sphere_digest {
            Ok(digest)
        } else {
            Err(format!(
                "sphere digest {} does not match L_({})",
                c.sphere_digest, c.q
            ))
        },
    );
    check(
        "coloring",
        c.coloring.check_proper(&t.sphere).map(|()| "proper".into()),
    );
    let lambda = CharacteristicFunction::from_json(&c.lambda).map_err(|e| e.to_string());
    let lambda = match lambda {
        Ok(l) if l == coloring_to_characteristic(&c.coloring) => Ok(l),
        Ok(_) => Err("lambda is not the image of the coloring".to_string()),
        Err(e) => Err(e),
    };
    match lambda {
        Err(e) => {
            check("lambda", Err(e));
        }
        Ok(l) => {
            check("lambda", Ok("image of the coloring".into()));
            check(
                "star condition",
                match check_star_condition(&t.sphere, &l, false) {
                    Ok(r) if r.holds => Ok(format!("{} maximal simplices unimodular", r.checked)),
                    Ok(r) => Err(format!(
                        "star condition fails at simplex {}",
                        r.witness.map_or(0, |w| w.simplex)
                    )),
                    Err(e) => Err(e.to_string()),
                },
            );
            let r = l.value_count();
            check(
                "value count",
                if r != c.r {
                    Err(format!("recorded r = {} but lambda takes {r} values", c.r))
                } else if 2 * r as u64 > c.n {
                    Err(format!("2r = {} exceeds N = {}", 2 * r, c.n))
                } else {
                    Ok(format!("2r = {} ≤ N = {}", 2 * r, c.n))
                },
            );
        }
    }
    check(
        "verdict",
        if c.verdict == verdict_text(c.n, c.r) {
            Ok("matches".into())
        } else {
            Err("verdict text altered".into())
        },
    );
    finish(checks)
}

fn finish(checks: Vec<CheckResult>) -> ValidationReport {
    let reason = checks.iter().find(|c| !c.passed).map(|c| c.detail.clone());
    ValidationReport {
        valid: reason.is_none(),
        checks,
        reason,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedCertificate {
    pub base: Certificate,
    pub suspensions: usize,
    /// `3 + suspensions`.
    pub rank: usize,
    pub vertex_count: usize,
    pub value_count: usize,
    pub f_vector: Vec<usize>,
    pub star_condition_holds: bool,
    pub sphere_digest: String,
    pub argument: String,
}

/// Suspends the certified weighted sphere `k` times. The product with `S²`
/// adds one suspension; a toric origami structure on the product would make
/// every characteristic submanifold toric origami, including the original.
pub fn lift_certificate(c: &Certificate, k: usize) -> Result<LiftedCertificate, CertifyError> {
    let report = validate_certificate(c);
    if let Some(reason) = report.reason {
        return Err(CertifyError::InvalidCertificate(reason));
    }
    let t = subdivided_tetrahedron(c.q);
    let lambda = CharacteristicFunction::from_json(&c.lambda)?;
    let mut w = WeightedSphere::new(t.sphere, lambda)?;
    for _ in 0..k {
        w = suspend(&w);
    }
    let star = check_star_condition(&w.sphere, &w.lambda, false)?;
    Ok(LiftedCertificate {
        base: c.clone(),
        suspensions: k,
        rank: w.rank(),
        vertex_count: w.sphere.vertex_count(),
        value_count: w.value_count(),
        f_vector: w.sphere.f_vector(),
        star_condition_holds: star.holds,
        sphere_digest: sphere_digest(&w.sphere),
        argument: format!(
            "each suspension is the product with S²; the original pair is a characteristic submanifold \
             of the lift, so a toric origami lift would make it toric origami; dimension {}",
            2 * w.rank()
        ),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditVerdict {
    /// `ft(K) > 2r`: the lemma excludes every tree connected sum of Delzant duals.
    Fires,
    /// `ft(K) ≤ 2r`: the lemma says nothing; this is not a realisability claim.
    Inapplicable,
}

/// A region of an optimal slicing too large for the values available to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionWitness {
    pub node: usize,
    pub region_vertices: usize,
    /// At most `r` distinct values, below the `|ver R| / 2` a Delzant dual needs.
    pub available_values: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub vertices: usize,
    pub fatness: usize,
    pub r: usize,
    pub two_r: usize,
    pub verdict: AuditVerdict,
    pub witness: Option<RegionWitness>,
    pub nodes_explored: u64,
}

pub const AUDIT_MAX_VERTICES: usize = 30;

/// Computes `ft(K)` exactly and applies the counting lemma. Every slicing has
/// a region with at least `ft(K)` vertices, so a witness region of an optimal
/// slicing settles all of them.
pub fn lemma_consistency_audit(
    k: &SimplicialPoset,
    lambda: &CharacteristicFunction,
    opts: &FatnessOptions,
) -> Result<AuditReport, CertifyError> {
    if k.vertex_count() > AUDIT_MAX_VERTICES {
        return Err(CertifyError::Precondition(format!(
            "{} vertices; the exact audit is limited to {AUDIT_MAX_VERTICES}",
            k.vertex_count()
        )));
    }
    let w = WeightedSphere::new(k.clone(), lambda.clone())?;
    let res = fatness_bruteforce(k, opts)?;
    let ft = res.value().ok_or_else(|| {
        CertifyError::Precondition(format!(
            "fatness only bounded: {}..={}",
            res.lower, res.upper
        ))
    })?;
    let r = w.value_count();
    let mut report = AuditReport {
        vertices: k.vertex_count(),
        fatness: ft,
        r,
        two_r: 2 * r,
        verdict: AuditVerdict::Inapplicable,
        witness: None,
        nodes_explored: res.nodes_explored,
    };
    if ft > 2 * r {
        let derived = res.best.derived()?;
        let (node, size) = (0..derived.regions.len())
            .map(|v| (v, derived.region_vertices(v).len()))
            .max_by_key(|&(v, s)| (s, std::cmp::Reverse(v)))
            .expect("at least one region");
        report.verdict = AuditVerdict::Fires;
        report.witness = Some(RegionWitness {
            node,
            region_vertices: size,
            available_values: r,
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::examples::*;
    use crate::weighted::SignClass;

    fn opts(q: u32) -> CertifyOptions {
        CertifyOptions {
            q,
            corroborate_depth: Some(4),
            ..CertifyOptions::default()
        }
    }

    #[test]
    fn q_87_falls_short() {
        match certify_non_origami(&opts(87)) {
            Err(CertifyError::ThresholdNotMet {
                vertex_count,
                q_min,
                ..
            }) => {
                assert_eq!(vertex_count, 15140);
                assert_eq!(q_min, 88);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn q_88_certificate_validates() {
        let c = certify_non_origami(&opts(88)).unwrap();
        assert_eq!(c.vertex_count, 15490);
        assert_eq!(c.r, 4);
        assert_eq!(c.c2.provenance[0], PAPER_STATED);
        assert!(c.c3.provenance[1].starts_with("empirically corroborated, depth 4"));
        let report = validate_certificate(&c);
        assert!(report.valid, "{:?}", report.reason);

        let mut bad = c.clone();
        let (&v, _) = bad.coloring.colors.iter().next().unwrap();
        let nb = subdivided_tetrahedron(88).sphere.adjacency()[&v][0];
        let col = bad.coloring.colors[&nb];
        bad.coloring.colors.insert(v, col);
        let r = validate_certificate(&bad);
        assert!(!r.valid);
        assert!(r.reason.unwrap().starts_with("improper coloring at edge"));

        let mut bad = c.clone();
        let third = BigRational::from_integer(3.into());
        bad.constants = isoperimetric_constants(8, &third, &BigRational::from_integer(1.into()))
            .unwrap()
            .to_json();
        let r = validate_certificate(&bad);
        assert!(r.reason.unwrap().starts_with("threshold mismatch"));
    }

    #[test]
    fn certificates_are_deterministic() {
        let o = CertifyOptions {
            q: 100,
            corroborate_depth: None,
            ..CertifyOptions::default()
        };
        let a = serde_json::to_string(&certify_non_origami(&o).unwrap()).unwrap();
        let b = serde_json::to_string(&certify_non_origami(&o).unwrap()).unwrap();
        assert_eq!(a, b);
        let c: Certificate = serde_json::from_str(&a).unwrap();
        assert_eq!(c.vertex_count, 20002);
        assert!(validate_certificate(&c).valid);
    }

    #[test]
    fn small_n_is_refused() {
        let o = CertifyOptions {
            n: 7,
            q: 20,
            corroborate_depth: None,
            ..unit_constants()
        };
        assert!(matches!(
            certify_non_origami(&o),
            Err(CertifyError::ColoringUsesTooManyValues { r: 4, n: 7 })
        ));
        let o = CertifyOptions {
            n: 2,
            ..CertifyOptions::default()
        };
        assert!(matches!(
            certify_non_origami(&o),
            Err(CertifyError::Metric(_))
        ));
    }

    fn unit_constants() -> CertifyOptions {
        let one = BigRational::from_integer(1.into());
        CertifyOptions {
            q: 20,
            c2: one.clone(),
            c3: one,
            corroborate_depth: Some(4),
            ..CertifyOptions::default()
        }
    }

    #[test]
    fn lifting_adds_ranks_and_values() {
        let c = certify_non_origami(&unit_constants()).unwrap();
        assert_eq!(c.c2.provenance[0], "user-supplied");
        // c3 = 1 is above the sampled minimum area factor
        assert!(c.c3.provenance[1].starts_with("empirically contradicted"));
        let l0 = lift_certificate(&c, 0).unwrap();
        assert_eq!(
            (l0.rank, l0.value_count, l0.sphere_digest.as_str()),
            (3, 4, c.sphere_digest.as_str())
        );
        let l1 = lift_certificate(&c, 1).unwrap();
        assert_eq!(l1.rank, 4);
        assert!(l1.star_condition_holds);
        let l3 = lift_certificate(&c, 3).unwrap();
        assert_eq!((l3.rank, l3.value_count, l3.vertex_count), (6, 7, 808));
        assert!(l3.star_condition_holds);
    }

    #[test]
    fn audit_on_small_spheres() {
        let s = tetrahedron_boundary();
        let l = coloring_to_characteristic(&four_color(&s).unwrap());
        let a = lemma_consistency_audit(&s, &l, &FatnessOptions::default()).unwrap();
        assert_eq!(
            (a.fatness, a.two_r, a.verdict),
            (4, 8, AuditVerdict::Inapplicable)
        );

        let s = octahedron_boundary();
        let three = Coloring {
            colors: s
                .vertices()
                .map(|v| (v, s.label(v).unwrap().parse::<u8>().unwrap() / 2 + 1))
                .collect(),
        };
        let l = coloring_to_characteristic(&three);
        let a = lemma_consistency_audit(&s, &l, &FatnessOptions::default()).unwrap();
        assert_eq!(
            (a.fatness, a.r, a.verdict),
            (5, 3, AuditVerdict::Inapplicable)
        );

        for k in 3..=8 {
            let c = cycle(k);
            let vs: Vec<_> = c.vertices().collect();
            let mut l = CharacteristicFunction::new(2);
            for (i, &v) in vs.iter().enumerate() {
                let vec = if i % 2 == 0 { vec![1, 0] } else { vec![0, 1] };
                l.insert(v, SignClass::new(vec).unwrap()).unwrap();
            }
            if k % 2 == 1 {
                l.insert(vs[k - 1], SignClass::new(vec![1, 1]).unwrap())
                    .unwrap();
            }
            let a = lemma_consistency_audit(&c, &l, &FatnessOptions::default()).unwrap();
            assert_eq!(a.verdict, AuditVerdict::Inapplicable);
            assert!(a.fatness <= 3);
        }
    }

    #[test]
    fn audit_refuses_large_spheres() {
        let s = subdivided_tetrahedron(4).sphere;
        let l = coloring_to_characteristic(&four_color(&s).unwrap());
        assert!(matches!(
            lemma_consistency_audit(&s, &l, &FatnessOptions::default()),
            Err(CertifyError::Precondition(_))
        ));
    }
}
