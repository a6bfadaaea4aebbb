//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! `cargo test -p vectont-cli --test acceptance`

mod common;

use std::cmp::Ordering;
use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vectont::dependence::{
    detect_linear_dependence, express_as_combination, ProbabilityModel, DEFAULT_DEPENDENCE_TOL,
};
use vectont::existence::ExistenceSet;
use vectont::foe::{
    classify_continuity, fit_constant_interval, ContinuityLabel, FOEInstance, FunctionClass,
    DEFAULT_GAP_FACTOR,
};
use vectont::mereology::ConvexRegion;
use vectont::metrics::{
    minkowski, navigate, nearest, reconstruction_distance, reconstruction_path, Metric,
    MinkowskiOrder, Move,
};
use vectont::schema::{Dimension, DomainSchema, OntVector, RawValue};
use vectont::tolerance::Tolerance;

const TOL: f64 = 1e-9;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn vector(s: &Arc<DomainSchema>, xs: &[f64]) -> OntVector {
    s.make_vector(&xs.iter().map(|&x| RawValue::Number(x)).collect::<Vec<_>>())
        .unwrap()
}

fn set_of(s: &Arc<DomainSchema>, pts: &[Vec<f64>]) -> ExistenceSet {
    ExistenceSet::from_vectors(s, pts.iter().map(|p| vector(s, p)), Tolerance::default()).unwrap()
}

fn close(u: &OntVector, v: &OntVector) -> bool {
    u.approx_eq(v, &Tolerance::new(TOL))
}

fn axioms() {
    let s = DomainSchema::continuous("space", &["a", "b", "c", "d"]).unwrap();
    let mut r = rng(1);
    let draw = |r: &mut ChaCha8Rng| {
        vector(
            &s,
            &(0..4).map(|_| r.gen_range(-1e3..1e3)).collect::<Vec<_>>(),
        )
    };
    type Axiom = fn(&OntVector, &OntVector, &OntVector, f64, f64) -> bool;
    let zero = s.zero().unwrap();
    let laws: [(&str, Axiom); 6] = [
        ("commutativity", |u, v, _, _, _| {
            close(&u.add(v).unwrap(), &v.add(u).unwrap())
        }),
        ("associativity", |u, v, w, _, _| {
            close(
                &u.add(v).unwrap().add(w).unwrap(),
                &u.add(&v.add(w).unwrap()).unwrap(),
            )
        }),
        ("scalar compatibility", |u, _, _, a, b| {
            close(
                &u.scale(b).unwrap().scale(a).unwrap(),
                &u.scale(a * b).unwrap(),
            )
        }),
        ("unit scalar", |u, _, _, _, _| u.scale(1.0).unwrap() == *u),
        ("distributes over vectors", |u, v, _, a, _| {
            close(
                &u.add(v).unwrap().scale(a).unwrap(),
                &u.scale(a).unwrap().add(&v.scale(a).unwrap()).unwrap(),
            )
        }),
        ("distributes over scalars", |u, _, _, a, b| {
            close(
                &u.scale(a + b).unwrap(),
                &u.scale(a).unwrap().add(&u.scale(b).unwrap()).unwrap(),
            )
        }),
    ];
    for (name, law) in laws {
        for _ in 0..1000 {
            let (u, v, w) = (draw(&mut r), draw(&mut r), draw(&mut r));
            let (a, b) = (r.gen_range(-1e3..1e3), r.gen_range(-1e3..1e3));
            assert!(law(&u, &v, &w, a, b), "{name} at {u} {v} {w} {a} {b}");
        }
    }
    for _ in 0..1000 {
        let u = draw(&mut r);
        assert!(u.add(&zero).unwrap() == u, "zero identity");
        assert!(
            u.add(&u.neg().unwrap()).unwrap() == zero,
            "additive inverse"
        );
    }
}

fn shelf() {
    let s = DomainSchema::continuous("shelves", &["height", "width"]).unwrap();
    let (eh, ew) = (
        s.basis("height", 1.0).unwrap(),
        s.basis("width", 1.0).unwrap(),
    );
    let mut r = rng(2);
    for _ in 0..1000 {
        let (h, w) = (r.gen_range(-1e6..1e6), r.gen_range(-1e6..1e6));
        let shelf = eh.scale(h).unwrap().add(&ew.scale(w).unwrap()).unwrap();
        assert_eq!(shelf, vector(&s, &[h, w]));
        assert_eq!(shelf.to_f64s().unwrap(), [h, w]);
        assert_eq!(
            s.parse_vector(&shelf.labels()).unwrap(),
            shelf,
            "text round trip"
        );
        let c = express_as_combination(&shelf, &[eh.clone(), ew.clone()], DEFAULT_DEPENDENCE_TOL)
            .unwrap();
        assert!((c.coefficients[0] - h).abs() <= TOL * h.abs().max(1.0));
        assert!((c.coefficients[1] - w).abs() <= TOL * w.abs().max(1.0));
    }
    let basis_rank = detect_linear_dependence(&[eh, ew], DEFAULT_DEPENDENCE_TOL).unwrap();
    assert_eq!(basis_rank.rank, 2, "coordinates are unique");
}

fn blue_rectangle() {
    let s = DomainSchema::define(
        "colored_shapes",
        vec![
            Dimension::integer("edges"),
            Dimension::integer("red").with_bounds(0.0, 255.0),
            Dimension::integer("green").with_bounds(0.0, 255.0),
            Dimension::integer("blue").with_bounds(0.0, 255.0),
        ],
    )
    .unwrap();
    let blue = vector(&s, &[4.0, 0.0, 0.0, 255.0]);
    let (set, _) = ExistenceSet::new(&s).insert(blue.clone()).unwrap();
    assert!(set.exists(&blue).unwrap());
    assert!(!set.exists(&vector(&s, &[4.0, 0.0, 1.0, 255.0])).unwrap());
    let c = DomainSchema::continuous("c", &["edges", "red", "green", "blue"]).unwrap();
    let cset = set_of(&c, &[vec![4.0, 0.0, 0.0, 255.0]]);
    assert!(cset
        .exists(&vector(&c, &[4.0, 0.0, 0.0, 255.0 + 1e-11]))
        .unwrap());
    assert!(!cset
        .exists(&vector(&c, &[4.0, 0.0, 0.0, 255.0 + 1e-3]))
        .unwrap());
}

fn humans() -> Arc<DomainSchema> {
    DomainSchema::continuous("humans", &["time", "weight"]).unwrap()
}

fn johns_weight() {
    let h = humans();
    let set = set_of(
        &h,
        &(50..=60).map(|t| vec![t as f64, 68.0]).collect::<Vec<_>>(),
    );
    let fits = fit_constant_interval(&set, "weight", "time", DEFAULT_GAP_FACTOR).unwrap();
    assert_eq!(fits.len(), 1);
    assert_eq!(fits[0].bindings(), [50.0, 60.0, 68.0]);
    assert!(fits[0].extension(&set).unwrap().same_members(&set));
    let v = classify_continuity(&set, &fits[0], "time", DEFAULT_GAP_FACTOR).unwrap();
    assert_eq!(v.label, ContinuityLabel::Endurant);
    // The hand-written instance with a looser window selects the same members.
    let class = Arc::new(
        FunctionClass::parse(
            "class w(lo,hi,val): (time >= lo) AND (time <= hi) AND (weight = val)",
            &h,
        )
        .unwrap(),
    );
    let loose = FOEInstance::bind(&class, &[("lo", 49.0), ("hi", 61.0), ("val", 68.0)]).unwrap();
    assert!(loose.extension(&set).unwrap().same_members(&set));
}

fn endurant_split() {
    let h = humans();
    let all = Arc::new(FunctionClass::parse("class all(): 0 <= 1", &h).unwrap());
    let inst = FOEInstance::bind(&all, &[]).unwrap();
    let two = set_of(
        &h,
        &(0..=10)
            .chain(50..=60)
            .map(|t| vec![t as f64, 1.0])
            .collect::<Vec<_>>(),
    );
    let v = classify_continuity(&two, &inst, "time", DEFAULT_GAP_FACTOR).unwrap();
    assert_eq!(v.label, ContinuityLabel::Perdurant);
    let w = v.witness.unwrap();
    assert_eq!((w.from, w.to, w.length), (10.0, 50.0, 40.0));

    let mut r = rng(5);
    for _ in 0..100 {
        let n = r.gen_range(2..40);
        let mut ts: Vec<u32> = (0..n).map(|_| r.gen_range(0..300)).collect();
        ts.sort_unstable();
        ts.dedup();
        let set = set_of(
            &h,
            &ts.iter().map(|&t| vec![t as f64, 1.0]).collect::<Vec<_>>(),
        );
        let (f1, f2) = (r.gen_range(1.0..4.0f64), r.gen_range(1.0..4.0f64));
        let (lo, hi) = (f1.min(f2), f1.max(f2));
        let strict = classify_continuity(&set, &inst, "time", lo).unwrap();
        let loose = classify_continuity(&set, &inst, "time", hi).unwrap();
        if loose.label == ContinuityLabel::Perdurant {
            assert_eq!(strict.label, ContinuityLabel::Perdurant, "{ts:?} {lo} {hi}");
        }
    }
}

/// Outward unit-normal facets of the hull of 2-D or 3-D points.
fn facets(points: &[Vec<f64>]) -> Vec<(Vec<f64>, f64)> {
    let d = points[0].len();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let mut out = Vec::new();
    let mut push = |n: Vec<f64>, anchor: &[f64]| {
        let norm = dot(&n, &n).sqrt();
        if norm < 1e-12 {
            return;
        }
        let n: Vec<f64> = n.iter().map(|x| x / norm).collect();
        let off = dot(&n, anchor);
        let side: Vec<f64> = points.iter().map(|p| dot(&n, p) - off).collect();
        if side.iter().all(|s| *s <= 1e-12) {
            out.push((n, off));
        } else if side.iter().all(|s| *s >= -1e-12) {
            out.push((n.iter().map(|x| -x).collect(), -off));
        }
    };
    let m = points.len();
    for i in 0..m {
        for j in i + 1..m {
            let (p, q) = (&points[i], &points[j]);
            if d == 2 {
                push(vec![q[1] - p[1], p[0] - q[0]], p);
                continue;
            }
            for rr in &points[j + 1..] {
                let u: Vec<f64> = (0..3).map(|t| q[t] - p[t]).collect();
                let v: Vec<f64> = (0..3).map(|t| rr[t] - p[t]).collect();
                let n = vec![
                    u[1] * v[2] - u[2] * v[1],
                    u[2] * v[0] - u[0] * v[2],
                    u[0] * v[1] - u[1] * v[0],
                ];
                push(n, p);
            }
        }
    }
    out
}

fn mereology() {
    let names = ["x", "y", "z"];
    let boxed = |s: &Arc<DomainSchema>, lo: f64, hi: f64| {
        let g = vec![vec![lo, lo], vec![hi, lo], vec![lo, hi], vec![hi, hi]];
        ConvexRegion::from_generators(s, &["x", "y"], &g).unwrap()
    };
    let plane = DomainSchema::continuous("plane", &["x", "y"]).unwrap();
    let (inner, outer) = (boxed(&plane, 1.0, 2.0), boxed(&plane, 0.0, 4.0));
    assert!(inner.part_of(&outer).unwrap());
    assert!(!outer.part_of(&inner).unwrap());

    let mut r = rng(6);
    for h in 0..20 {
        let d = 2 + h % 2;
        let s = DomainSchema::continuous("space", &names[..d]).unwrap();
        let gens: Vec<Vec<f64>> = (0..8)
            .map(|_| (0..d).map(|_| r.gen_range(-1.0..1.0)).collect())
            .collect();
        let region = ConvexRegion::from_generators(&s, &names[..d], &gens).unwrap();
        let planes = facets(&gens);
        for _ in 0..10_000 {
            let x: Vec<f64> = (0..d).map(|_| r.gen_range(-1.2..1.2)).collect();
            let signed = planes
                .iter()
                .map(|(n, off)| n.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>() - off)
                .fold(f64::NEG_INFINITY, f64::max);
            if signed.abs() > 1e-6 {
                assert_eq!(
                    region.contains_coords(&x),
                    signed < 0.0,
                    "hull {h} at {x:?}"
                );
            }
        }
    }

    let s = DomainSchema::continuous("space", &names).unwrap();
    let mix = |r: &mut ChaCha8Rng, of: &[Vec<f64>], n: usize| -> Vec<Vec<f64>> {
        (0..n)
            .map(|_| {
                let w: Vec<f64> = of.iter().map(|_| r.gen_range(0.0..1.0f64)).collect();
                let t: f64 = w.iter().sum();
                (0..3)
                    .map(|k| of.iter().zip(&w).map(|(p, wi)| p[k] * wi / t).sum())
                    .collect()
            })
            .collect()
    };
    for _ in 0..50 {
        let c: Vec<Vec<f64>> = (0..6)
            .map(|_| (0..3).map(|_| r.gen_range(-10.0..10.0)).collect())
            .collect();
        let b = mix(&mut r, &c, 5);
        let a = mix(&mut r, &b, 4);
        let [a, b, c] = [a, b, c].map(|g| ConvexRegion::from_generators(&s, &names, &g).unwrap());
        assert!(a.part_of(&b).unwrap() && b.part_of(&c).unwrap());
        assert!(a.part_of(&c).unwrap(), "transitivity");
    }
}

fn exact_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let cols = rows[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (top, rest) = m.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in rest {
            let f = &row[c] / &pivot[c];
            for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

fn rgb_dependence() {
    let s = DomainSchema::continuous("rgb", &["r", "g", "b"]).unwrap();
    let vs = [
        vector(&s, &[1.0, 0.0, 0.0]),
        vector(&s, &[0.0, 1.0, 0.0]),
        vector(&s, &[1.0, 1.0, 0.0]),
    ];
    let rep = detect_linear_dependence(&vs, DEFAULT_DEPENDENCE_TOL).unwrap();
    assert_eq!(rep.rank, 2);
    assert_eq!(rep.dependent.len(), 1);
    assert_eq!(rep.dependent[0].index, 2);
    assert_eq!(rep.dependent[0].coefficients, [1.0, 1.0]);
    assert!(rep.dependent[0].residual <= 1e-9);

    let mut r = rng(7);
    for case in 0..100 {
        let (k, d) = (r.gen_range(2..=6), r.gen_range(1..=6));
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for i in 0..k {
            if i > 0 && r.gen_bool(0.4) {
                let c: Vec<i64> = (0..i).map(|_| r.gen_range(-3..=3)).collect();
                rows.push(
                    (0..d)
                        .map(|j| (0..i).map(|t| c[t] * rows[t][j]).sum())
                        .collect(),
                );
            } else {
                rows.push((0..d).map(|_| r.gen_range(-5..=5)).collect());
            }
        }
        let names: Vec<String> = (0..d).map(|i| format!("q{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let sp = DomainSchema::continuous("m", &refs).unwrap();
        let vs: Vec<OntVector> = rows
            .iter()
            .map(|row| vector(&sp, &row.iter().map(|&x| x as f64).collect::<Vec<_>>()))
            .collect();
        let got = detect_linear_dependence(&vs, DEFAULT_DEPENDENCE_TOL)
            .unwrap()
            .rank;
        assert_eq!(got, exact_rank(&rows), "case {case}: {rows:?}");
    }
}

fn mixed() -> Arc<DomainSchema> {
    DomainSchema::define(
        "mixed",
        vec![
            Dimension::continuous("a"),
            Dimension::integer("n"),
            Dimension::categorical("shape", ["circle", "square", "star"]),
            Dimension::boolean("filled"),
            Dimension::continuous("b"),
        ],
    )
    .unwrap()
}

fn mixed_draw(s: &Arc<DomainSchema>, r: &mut ChaCha8Rng, pools: bool) -> OntVector {
    let shape = ["circle", "square", "star"][r.gen_range(0..3)];
    let (a, b) = if pools {
        (
            [0.0, 0.5, -3.0][r.gen_range(0..3)],
            [0.0, 1e6][r.gen_range(0..2)],
        )
    } else {
        (r.gen_range(-1e3..1e3), r.gen_range(-1e3..1e3))
    };
    let n = if pools {
        r.gen_range(-2..2)
    } else {
        r.gen_range(-100..100)
    };
    s.make_vector(&[
        RawValue::Number(a),
        RawValue::Number(n as f64),
        RawValue::Text(shape.into()),
        RawValue::Bool(r.gen_bool(0.5)),
        RawValue::Number(b),
    ])
    .unwrap()
}

fn reconstruction() {
    let s = DomainSchema::continuous(
        "motion",
        &[
            "size",
            "gravitational_force",
            "electric_force",
            "ellipticity",
            "period",
        ],
    )
    .unwrap();
    let tol = Tolerance::default();
    let planets = vector(&s, &[1.0, 1.0, 0.0, 0.3, 5.0]);
    let atoms = vector(&s, &[0.001, 0.0, 1.0, 0.3, 5.0]);
    let path = reconstruction_path(&planets, &atoms, &tol).unwrap();
    assert_eq!(path.len(), 3);
    assert_eq!(path.apply().unwrap(), atoms);

    let m = mixed();
    let mut r = rng(8);
    for _ in 0..1000 {
        let [x, y, z] = [0; 3].map(|_| mixed_draw(&m, &mut r, true));
        let d = |u: &OntVector, v: &OntVector| reconstruction_distance(u, v, &tol).unwrap();
        assert_eq!(d(&x, &y), d(&y, &x));
        assert_eq!(d(&x, &x), 0);
        assert_eq!(d(&x, &y) == 0, x.approx_eq(&y, &tol));
        assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
    }
    for _ in 0..1000 {
        let [x, y] = [0; 2].map(|_| mixed_draw(&m, &mut r, false));
        let p = reconstruction_path(&x, &y, &tol).unwrap();
        assert_eq!(p.apply().unwrap(), y, "bitwise round trip");
    }
}

fn minkowski_laws() {
    let m = mixed();
    let orders = [
        MinkowskiOrder::Finite(1.0),
        MinkowskiOrder::Finite(2.0),
        MinkowskiOrder::Finite(3.0),
        MinkowskiOrder::Infinity,
    ];
    let mut r = rng(9);
    for _ in 0..1000 {
        let [x, y, z] = [0; 3].map(|_| mixed_draw(&m, &mut r, false));
        for order in orders {
            let d = |u: &OntVector, v: &OntVector| minkowski(u, v, order, None).unwrap();
            assert_eq!(d(&x, &x), 0.0);
            assert_eq!(d(&x, &y), d(&y, &x));
            assert!(x == y || d(&x, &y) > 0.0);
            assert!(
                d(&x, &z) <= (d(&x, &y) + d(&y, &z)) * (1.0 + 1e-12),
                "{order}"
            );
        }
    }
    let p = DomainSchema::continuous("plane", &["x", "y"]).unwrap();
    assert_eq!(
        minkowski(
            &vector(&p, &[0.0, 0.0]),
            &vector(&p, &[3.0, 4.0]),
            MinkowskiOrder::EUCLIDEAN,
            None
        )
        .unwrap(),
        5.0
    );
}

fn navigation() {
    let s = DomainSchema::define(
        "toy",
        vec![
            Dimension::continuous("x"),
            Dimension::integer("k"),
            Dimension::continuous("y"),
        ],
    )
    .unwrap();
    let mut r = rng(10);
    let ranked = |set: &ExistenceSet, v: &OntVector, metric: &Metric| {
        let mut all: Vec<(OntVector, f64)> = set
            .vectors()
            .map(|m| (m.clone(), metric.distance(v, m).unwrap()))
            .collect();
        all.sort_by(|a, b| match a.1.partial_cmp(&b.1).unwrap() {
            Ordering::Equal => a.0.lex_cmp(&b.0),
            o => o,
        });
        all
    };
    for _ in 0..50 {
        let n = r.gen_range(1..=100);
        let mut pts: Vec<OntVector> = (0..n)
            .map(|_| vector(&s, &[0; 3].map(|_| r.gen_range(-4..5) as f64)))
            .collect();
        let set = ExistenceSet::from_vectors(&s, pts.clone(), Tolerance::default()).unwrap();
        pts.shuffle(&mut r);
        let shuffled = ExistenceSet::from_vectors(&s, pts.clone(), Tolerance::default()).unwrap();
        let origin = pts[0].clone();
        let moves = vec![
            Move::shift("x", r.gen_range(-3..4) as f64 * 0.5),
            Move::parse(&format!("k={}", r.gen_range(-2..3)), &s).unwrap(),
        ];
        let target = vectont::metrics::apply_moves(&origin, &moves).unwrap();
        let best = ranked(&set, &target, &Metric::euclidean()).remove(0);
        for cand in [&set, &shuffled] {
            let nav = navigate(cand, &origin, &moves).unwrap();
            assert_eq!((nav.member, nav.distance), best.clone());
        }
        let k = r.gen_range(1..=10);
        for metric in [
            Metric::euclidean(),
            Metric::new(MinkowskiOrder::MANHATTAN),
            Metric::new(MinkowskiOrder::Infinity),
        ] {
            let want: Vec<_> = ranked(&set, &target, &metric).into_iter().take(k).collect();
            assert_eq!(nearest(&set, &target, &metric, k).unwrap(), want);
            assert_eq!(nearest(&shuffled, &target, &metric, k).unwrap(), want);
        }
    }
}

fn probability() {
    let s = DomainSchema::continuous("grid", &["x", "y"]).unwrap();
    let grid: Vec<Vec<f64>> = (0..5)
        .flat_map(|i| (0..5).map(move |j| vec![i as f64, j as f64]))
        .collect();
    let set = set_of(&s, &grid);
    let model = ProbabilityModel::estimate(&set, 5, 0.0).unwrap();
    assert_eq!(model.cells(), 25);
    for p in model.probabilities() {
        assert!((p - 1.0 / 25.0).abs() <= 1e-12);
    }

    let m = mixed();
    let mut r = rng(11);
    for _ in 0..100 {
        let n = r.gen_range(1..60);
        let set = ExistenceSet::from_vectors(
            &m,
            (0..n).map(|_| mixed_draw(&m, &mut r, false)),
            Tolerance::default(),
        )
        .unwrap();
        let model =
            ProbabilityModel::estimate(&set, r.gen_range(1..6), [0.0, 0.5, 1.0][r.gen_range(0..3)])
                .unwrap();
        let total: f64 = model.probabilities().iter().sum();
        assert!((total - 1.0).abs() <= 1e-12, "sum {total}");
        let back = ProbabilityModel::from_json(&model.to_json()).unwrap();
        for _ in 0..20 {
            let q = mixed_draw(&m, &mut r, false);
            let (a, b) = (
                model.probability_of(&q).unwrap(),
                back.probability_of(&q).unwrap(),
            );
            assert_eq!(a.probability.to_bits(), b.probability.to_bits());
            assert_eq!(a.cell, b.cell);
        }
    }
}

const CORPUS: [&str; 30] = [
    "class sphere(a,b,c,r): (x+a)^2+(y+b)^2+(z+c)^2 <= r^2",
    "class ball(r): x^2 + y^2 + z^2 <= r^2",
    "class half(): x >= 0",
    "class plane(k): x + y + z = k",
    "class slab(lo, hi): (z >= lo) AND (z <= hi)",
    "class notslab(lo, hi): NOT ((z >= lo) AND (z <= hi))",
    "class either(): x <= 0 OR y <= 0",
    "class mixed(): x <= 1 AND y <= 1 OR z = 0",
    "class nested(a): NOT (NOT (x <= a))",
    "class poly(): x^3 - 2*x^2 + x - 1 <= 0",
    "class prod(): x * y * z >= 1",
    "class left(): x - y - z <= 0",
    "class grouped(): x - (y - z) <= 0",
    "class power(): (x + 1)^2 * (y - 1)^3 >= 0",
    "class decimals(): 0.5 * x + 1.25 * y <= 3.75",
    "class zeroexp(): x^0 = 1",
    "class consts(): 2 + 3 * 4 = 14",
    "class params(a, b, c): a * x + b * y + c * z <= 0",
    "class chain(): x <= 1 AND y <= 1 AND z <= 1",
    "class orchain(): x = 1 OR y = 1 OR z = 1",
    "class ellipse(a, b): x^2 * b^2 + y^2 * a^2 <= a^2 * b^2",
    "class diff(): (x - y)^2 >= 0",
    "class deep(): ((((x)))) <= ((y))",
    "class neg(): NOT x <= 0",
    "class box(l, h): (x >= l) AND (x <= h) AND (y >= l) AND (y <= h) AND (z >= l) AND (z <= h)",
    "class dnf(): (x <= 0 AND y <= 0) OR (x >= 1 AND y >= 1)",
    "class cnf(): (x <= 0 OR y <= 0) AND (x >= 1 OR y >= 1)",
    "class cone(h): x^2 + y^2 <= (h - z)^2",
    "class shell(r1, r2): (x^2 + y^2 + z^2 >= r1^2) AND (x^2 + y^2 + z^2 <= r2^2)",
    "class spaced(   a   ,b):x+a>=b",
];

fn parser() {
    let s = DomainSchema::continuous("space", &["x", "y", "z"]).unwrap();
    for text in CORPUS {
        let class = FunctionClass::parse(text, &s).unwrap_or_else(|e| panic!("{text}: {e}"));
        let again = FunctionClass::parse(&class.unparse(), &s).unwrap();
        assert_eq!(again, class, "{text}");
    }
    let sphere = FunctionClass::parse(CORPUS[0], &s).unwrap();
    assert_eq!(sphere.params.len(), 4);

    let unknown = FunctionClass::parse("class bad(): q + 1 <= 2", &s).unwrap_err();
    assert_eq!(unknown.code(), "UNKNOWN_IDENTIFIER");
    assert_eq!(unknown.position().unwrap().column, 14);
    let c = Arc::new(FunctionClass::parse("class c(a, b): x <= a + b", &s).unwrap());
    let arity = FOEInstance::bind_text(&c, "c(1, 2, 3)").unwrap_err();
    assert_eq!(arity.code(), "BINDING_ARITY");
    assert!(arity.position().is_some());
    let shapes = DomainSchema::define(
        "shapes",
        vec![
            Dimension::continuous("size"),
            Dimension::categorical("shape", ["circle", "square"]),
        ],
    )
    .unwrap();
    let ty = FunctionClass::parse("class bad(): size + shape <= 2", &shapes).unwrap_err();
    assert_eq!(ty.code(), "TYPE_ERROR");
    assert_eq!(ty.position().unwrap().column, 21);
    let syntax = FunctionClass::parse("class bad(): x <= ", &s).unwrap_err();
    assert_eq!(syntax.code(), "SYNTAX_ERROR");
    assert!(syntax.position().is_some());
}

fn cli_determinism() {
    let f = common::Fixture::new();
    let bin = env!("CARGO_BIN_EXE_vectont");
    for (label, args) in f.invocations() {
        let outputs: Vec<Vec<u8>> = (0..3)
            .map(|_| {
                let out = Command::new(bin)
                    .args(&args)
                    .env_remove("VECTONT_TOLERANCE")
                    .output()
                    .unwrap();
                assert!(
                    out.status.success(),
                    "{label}: {}",
                    String::from_utf8_lossy(&out.stderr)
                );
                out.stdout
            })
            .collect();
        assert!(
            outputs.windows(2).all(|w| w[0] == w[1]),
            "{label} differs between runs"
        );
        assert_eq!(
            common::run(&args).stdout.as_bytes(),
            outputs[0],
            "{label} in-process"
        );
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn()); 13] = [
        ("vector-space axioms", axioms),
        ("shelf coordinates", shelf),
        ("blue rectangle existence", blue_rectangle),
        ("John's weight", johns_weight),
        ("endurant/perdurant split", endurant_split),
        ("mereology", mereology),
        ("RGB dependence", rgb_dependence),
        ("reconstruction", reconstruction),
        ("Minkowski metric laws", minkowski_laws),
        ("navigation", navigation),
        ("probability model", probability),
        ("FOE parser", parser),
        ("CLI determinism", cli_determinism),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let ok = panic::catch_unwind(AssertUnwindSafe(check)).is_ok();
        failed += usize::from(!ok);
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!(
            "{verdict} {:>2} {name} ({:.2}s)",
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    let total = start.elapsed().as_secs_f64();
    println!(
        "{} of {} criteria passed in {total:.2}s",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 && total < 60.0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
