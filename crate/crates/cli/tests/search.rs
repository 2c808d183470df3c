use gal_cli::{emit_hits, search_grid, Axis, OutputFormat, SearchSpec};
use gal_core::{FamilyId, ParamPoint, ResolventKind};

fn d5_target(r: i64) -> SearchSpec {
    SearchSpec::new(FamilyId::D5, vec![Axis::Range { lo: -r, hi: r }, Axis::Range { lo: -r, hi: r }])
        .with_target(ParamPoint::ints(&[0, 1]))
        .with_kinds(&[ResolventKind::One])
}

fn s3_pairwise(r: i64) -> SearchSpec {
    SearchSpec::new(FamilyId::S3, vec![Axis::Range { lo: -r, hi: r }])
}

fn keys(spec: &SearchSpec) -> Vec<(ParamPoint, ParamPoint)> {
    search_grid(spec).unwrap().hits.into_iter().map(|h| (h.a, h.b)).collect()
}

// Sieving must not lose hits.
#[test]
fn filter_is_sound() {
    for spec in [d5_target(8), s3_pairwise(30)] {
        let mut bare = spec.clone();
        bare.primes.clear();
        let (with, without) = (keys(&spec), keys(&bare));
        assert_eq!(with, without, "{:?}", spec.family);
    }
}

#[test]
fn s3_pairwise_finds_something() {
    let out = search_grid(&s3_pairwise(30)).unwrap();
    assert!(!out.hits.is_empty());
    for h in &out.hits {
        assert_ne!(h.a, h.b);
    }
}

#[test]
fn output_independent_of_threads() {
    for spec in [d5_target(8), s3_pairwise(30)] {
        let mut runs = Vec::new();
        for threads in [1, 3] {
            let mut s = spec.clone();
            s.threads = threads;
            let out = search_grid(&s).unwrap();
            runs.push(emit_hits(&out.hits, OutputFormat::Json).unwrap());
        }
        assert_eq!(runs[0], runs[1]);
    }
}
