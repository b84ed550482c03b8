mod common;

use coercive_kit::linalg::{nullspace, sym_eig};
use coercive_kit::space::{
    assemble_gram, constraint_vector, enumerate_multi_indices, quadrature_rule, BasisSpec, BoundaryRegion,
    ConstraintKind, DomainBox, Face, IndexMode, MultiIndex, TraceOperator,
};
use common::*;
use proptest::prelude::*;
use rand::Rng;
use rand_distr::StandardNormal;

fn boxes(d: usize) -> impl Strategy<Value = DomainBox<f64>> {
    prop::collection::vec((-2.0f64..2.0, 0.25f64..3.0), d)
        .prop_map(|v| DomainBox::new(v.into_iter().map(|(lo, len)| (lo, lo + len)).collect()).unwrap())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

proptest! {
    #![proptest_config(proptest_config(24))]

    #[test]
    fn full_minus_semi_is_psd(d in 1usize..=2, m in 1usize..=4, extra in 0usize..=4, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let intervals = (0..d).map(|_| { let lo = rng.random_range(-1.0..1.0); (lo, lo + rng.random_range(0.3..2.5)) }).collect();
        let spec = BasisSpec::legendre(DomainBox::new(intervals).unwrap(), m + extra).unwrap();
        let g = assemble_gram(&spec, m).unwrap();
        let diff = g.full.sub(&g.semi).unwrap();
        let lmin = sym_eig(&diff).unwrap().min_value().unwrap();
        let lmax = sym_eig(&g.full).unwrap().max_value().unwrap();
        prop_assert!(lmin >= -1e-11 * lmax, "lmin {lmin}, lmax {lmax}");
    }

    #[test]
    fn l2_gram_matches_legendre_orthogonality(domain in (1usize..=2).prop_flat_map(boxes), degree in 0usize..=10, seed in any::<u64>()) {
        // ∫ P_i P_j over an interval of length h is h/(2i+1) δ_ij; tensor products multiply.
        let mut rng = rng(seed);
        let spec = BasisSpec::legendre(domain.clone(), degree).unwrap();
        let g = assemble_gram(&spec, 0).unwrap();
        let oracle: Vec<f64> = (0..spec.len())
            .map(|flat| spec.split_index(flat).iter().enumerate().map(|(k, &i)| domain.length(k) / (2 * i + 1) as f64).product())
            .collect();
        for _ in 0..100 {
            let f: Vec<f64> = (0..spec.len()).map(|_| rng.sample(StandardNormal)).collect();
            let h: Vec<f64> = (0..spec.len()).map(|_| rng.sample(StandardNormal)).collect();
            let assembled = g.full.bilinear(&f, &h);
            let reference: f64 = (0..spec.len()).map(|j| f[j] * h[j] * oracle[j]).sum();
            let size: f64 = (0..spec.len()).map(|j| (f[j] * h[j] * oracle[j]).abs()).sum();
            prop_assert!((assembled - reference).abs() <= 1e-12 * size, "{assembled} vs {reference}");
        }
    }

    #[test]
    fn seminorm_matches_high_order_reference(d in 1usize..=2, m in 1usize..=3, degree in 3usize..=7, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let spec = BasisSpec::legendre(DomainBox::unit(d).unwrap(), degree).unwrap();
        let g = assemble_gram(&spec, m).unwrap();
        let rule = quadrature_rule(spec.domain(), 30);
        let f: Vec<f64> = (0..spec.len()).map(|_| rng.sample(StandardNormal)).collect();
        let h: Vec<f64> = (0..spec.len()).map(|_| rng.sample(StandardNormal)).collect();
        let mut reference = 0.0;
        let mut size = 0.0;
        for s in enumerate_multi_indices(d, m, IndexMode::Exact) {
            let w = s.multinomial();
            let part = rule.integrate(|x| {
                let phi = spec.eval_point(&s, x).unwrap();
                dot(&phi, &f) * dot(&phi, &h)
            });
            let mag = rule.integrate(|x| {
                let phi = spec.eval_point(&s, x).unwrap();
                (dot(&phi, &f) * dot(&phi, &h)).abs()
            });
            reference += w * part;
            size += w * mag;
        }
        let assembled = g.semi.bilinear(&f, &h);
        prop_assert!((assembled - reference).abs() <= 1e-12 * size.max(1.0), "{assembled} vs {reference}");
    }

    #[test]
    fn doubling_box_scales_l2_gram(d in 1usize..=3, degree in 0usize..=5) {
        let unit = BasisSpec::legendre(DomainBox::unit(d).unwrap(), degree).unwrap();
        let double = BasisSpec::legendre(DomainBox::new(vec![(0.0, 2.0); d]).unwrap(), degree).unwrap();
        let a = assemble_gram(&unit, 0).unwrap();
        let b = assemble_gram(&double, 0).unwrap();
        let factor = f64::from(1u32 << d);
        let scale = a.full.as_matrix().max_abs();
        for i in 0..unit.len() {
            for j in 0..unit.len() {
                let (x, y): (f64, f64) = (a.full.as_matrix()[(i, j)], b.full.as_matrix()[(i, j)]);
                prop_assert!((factor * x - y).abs() <= 1e-12 * factor * scale);
            }
        }
    }

    #[test]
    fn trace_rows_annihilate_the_trace(face in 0usize..4, r in 0usize..=1, degree in 3usize..=8, seed in any::<u64>()) {
        let mut rng = rng(seed);
        let spec = BasisSpec::legendre(DomainBox::new(vec![(0.0, 1.5), (-0.5, 0.5)]).unwrap(), degree).unwrap();
        let face = Face(face);
        let rows = constraint_vector(&spec, ConstraintKind::TraceCoefficient {
            region: BoundaryRegion::face(face),
            trace: TraceOperator::NormalDerivative(r),
        }).unwrap().rows;
        let z = nullspace(&rows, 1e-10);
        let coeff = z.matvec(&(0..z.cols()).map(|_| rng.sample(StandardNormal)).collect::<Vec<f64>>()).unwrap();
        let axis = face.axis();
        let normal = MultiIndex::axis(2, axis, r);
        let x_face = face.coordinate(spec.domain());
        let (tlo, thi) = spec.domain().interval(1 - axis);
        let mut trace_sup: f64 = 0.0;
        for i in 0..=60 {
            let t = tlo + (thi - tlo) * i as f64 / 60.0;
            let mut p = vec![0.0; 2];
            p[axis] = x_face;
            p[1 - axis] = t;
            trace_sup = trace_sup.max(dot(&spec.eval_point(&normal, &p).unwrap(), &coeff).abs());
        }
        let mut domain_sup: f64 = 0.0;
        for i in 0..=30 {
            for j in 0..=30 {
                let p = [1.5 * i as f64 / 30.0, -0.5 + j as f64 / 30.0];
                domain_sup = domain_sup.max(dot(&spec.eval_point(&normal, &p).unwrap(), &coeff).abs());
            }
        }
        prop_assert!(trace_sup <= 1e-11 * domain_sup, "{trace_sup} vs {domain_sup}");
    }

    #[test]
    fn fourier_grams_are_diagonal(domain in (1usize..=2).prop_flat_map(boxes), modes in 1usize..=5, m in 0usize..=4) {
        let spec = BasisSpec::fourier(domain, modes).unwrap();
        let g = assemble_gram(&spec, m).unwrap();
        for mat in [g.full.as_ref(), &g.semi] {
            let dmax = mat.diag().into_iter().fold(0.0, f64::max);
            for i in 0..spec.len() {
                for j in 0..spec.len() {
                    if i != j {
                        prop_assert!(mat.as_matrix()[(i, j)].abs() <= 1e-12 * dmax);
                    }
                }
            }
        }
    }
}
