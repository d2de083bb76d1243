use turaev_viro::complexes::{
    builtin, builtin_names, ComplexError, Gluing, Manifest, Perm4, Triangulation, VertexKind,
    BUILTINS,
};
use turaev_viro::sixj::slot_of;

fn manifest(tet_count: usize, gluings: &str) -> String {
    format!(r#"{{ "tet_count": {tet_count}, "gluings": [{gluings}] }}"#)
}

fn rec(tet: usize, face: usize, to_tet: usize, to_face: usize, perm: [u8; 3]) -> String {
    format!(
        r#"{{ "tet": {tet}, "face": {face}, "to_tet": {to_tet}, "to_face": {to_face}, "perm": {perm:?} }}"#
    )
}

fn parse(tet_count: usize, recs: &[String]) -> Result<Triangulation, ComplexError> {
    Triangulation::parse_manifest(&manifest(tet_count, &recs.join(",")))
}

/// One tetrahedron folded onto itself: faces 0,1 and 2,3 paired.
fn one_tet(p: [u8; 3], q: [u8; 3]) -> Result<Triangulation, ComplexError> {
    parse(1, &[rec(0, 0, 0, 1, p), rec(0, 2, 0, 3, q)])
}

#[test]
fn builtins_load_and_match_recorded_counts() {
    let names: Vec<_> = builtin_names().collect();
    assert_eq!(
        names,
        [
            "s3_2tet",
            "s3_3tet",
            "s2xs1",
            "t2xi",
            "fig8",
            "s3_2tet_s2xs1"
        ]
    );
    for info in BUILTINS {
        let t = info.load().unwrap();
        assert_eq!(t.name(), Some(info.name));
        if t.is_closed() {
            assert_eq!(t.euler_characteristic(), 0, "{}", info.name);
        }
    }
    let fig8 = builtin("fig8").unwrap();
    assert_eq!(
        (
            fig8.tet_count(),
            fig8.edge_classes().len(),
            fig8.ideal_vertex_count()
        ),
        (2, 2, 1)
    );
    assert!(fig8.edge_classes().iter().all(|e| e.degree() == 6));
    assert_eq!(
        builtin("t2xi").unwrap().classify_vertices(),
        vec![VertexKind::Ideal; 2]
    );
    assert!(matches!(
        builtin("nope"),
        Err(ComplexError::UnknownBuiltin(_))
    ));
}

#[test]
fn single_tetrahedron_sphere_is_accepted() {
    let t = one_tet([0, 2, 3], [0, 1, 2]).unwrap();
    assert!(t.is_closed());
    assert_eq!((t.interior_vertex_count(), t.edge_classes().len()), (2, 3));
    assert_eq!(t.euler_characteristic(), 0);
}

#[test]
fn parser_diagnostics() {
    let err = |text: &str| Triangulation::parse_manifest(text).unwrap_err();
    assert!(matches!(err("{ not json"), ComplexError::Parse(_)));
    assert!(matches!(
        err(r#"{"tet_count": 1, "gluings": [], "extra": 1}"#),
        ComplexError::Parse(_)
    ));
    assert_eq!(parse(0, &[]).unwrap_err(), ComplexError::NoTetrahedra);
    assert!(matches!(
        parse(1, &[rec(0, 0, 3, 1, [0, 2, 3])]).unwrap_err(),
        ComplexError::IndexOutOfRange {
            what: "to_tet",
            index: 3,
            ..
        }
    ));
    assert!(matches!(
        parse(1, &[rec(0, 0, 0, 1, [0, 0, 3])]).unwrap_err(),
        ComplexError::MalformedPermutation {
            tet: 0,
            face: 0,
            ..
        }
    ));
    assert!(matches!(
        parse(1, &[rec(0, 0, 0, 1, [0, 1, 3])]).unwrap_err(),
        ComplexError::MalformedPermutation { .. }
    ));
    assert_eq!(
        parse(1, &[rec(0, 0, 0, 0, [1, 2, 3])]).unwrap_err(),
        ComplexError::SelfGluedFace { tet: 0, face: 0 }
    );
    assert_eq!(
        parse(1, &[rec(0, 0, 0, 1, [0, 2, 3])]).unwrap_err(),
        ComplexError::UnpairedFace { tet: 0, face: 2 }
    );
    assert!(matches!(
        parse(1, &[rec(0, 0, 0, 1, [0, 2, 3]), rec(0, 0, 0, 2, [1, 0, 3])]).unwrap_err(),
        ComplexError::DuplicateGluing { .. }
    ));
    assert_eq!(
        parse(1, &[rec(0, 0, 0, 1, [0, 2, 3]), rec(0, 1, 0, 0, [2, 3, 1])]).unwrap_err(),
        ComplexError::NonInvolutive { tet: 0, face: 1 }
    );
}

#[test]
fn both_sides_of_a_gluing_may_be_given() {
    let one = one_tet([0, 2, 3], [0, 1, 2]).unwrap();
    let both = parse(
        1,
        &[
            rec(0, 0, 0, 1, [0, 2, 3]),
            rec(0, 1, 0, 0, [1, 2, 3]),
            rec(0, 2, 0, 3, [0, 1, 2]),
            rec(0, 3, 0, 2, [0, 1, 3]),
        ],
    )
    .unwrap();
    assert_eq!(one.gluings(), both.gluings());
}

#[test]
fn klein_bottle_vertex_link_is_rejected() {
    assert!(matches!(
        one_tet([3, 2, 0], [2, 1, 0]).unwrap_err(),
        ComplexError::NonOrientableLink { .. }
    ));
}

#[test]
fn non_orientable_gluing_is_rejected() {
    assert_eq!(
        one_tet([0, 3, 2], [1, 0, 2]).unwrap_err(),
        ComplexError::NonOrientable
    );
}

#[test]
fn error_messages_are_distinct() {
    let msgs: Vec<String> = [
        ComplexError::Parse("x".into()),
        ComplexError::NoTetrahedra,
        ComplexError::UnpairedFace { tet: 0, face: 1 },
        ComplexError::DuplicateGluing { tet: 0, face: 1 },
        ComplexError::NonInvolutive { tet: 0, face: 1 },
        ComplexError::SelfGluedFace { tet: 0, face: 1 },
        ComplexError::InvalidEdge { tet: 0, slot: 1 },
        ComplexError::NonOrientableLink { vertex: 0 },
        ComplexError::NonOrientable,
    ]
    .iter()
    .map(ToString::to_string)
    .collect();
    for (i, a) in msgs.iter().enumerate() {
        for b in &msgs[i + 1..] {
            assert_ne!(a, b);
        }
    }
}

#[test]
fn manifest_round_trip() {
    for name in builtin_names() {
        let t = builtin(name).unwrap();
        let text = t.to_manifest().to_json();
        let back = Triangulation::from_manifest(&Manifest::from_json(&text).unwrap()).unwrap();
        assert_eq!(back.gluings(), t.gluings(), "{name}");
        assert_eq!(back.edge_classes().len(), t.edge_classes().len());
        assert_eq!(back.metadata(), t.metadata());
    }
}

#[test]
fn relabeling_preserves_combinatorics() {
    let t = builtin("s3_3tet").unwrap();
    for order in [[0, 1, 2], [2, 0, 1], [1, 2, 0], [2, 1, 0]] {
        let u = t.relabel(&order).unwrap();
        let mut a: Vec<usize> = t.edge_classes().iter().map(|e| e.degree()).collect();
        let mut b: Vec<usize> = u.edge_classes().iter().map(|e| e.degree()).collect();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
        assert_eq!(u.euler_characteristic(), t.euler_characteristic());
    }
    assert!(t.relabel(&[0, 0, 1]).is_err());
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    parent[x] = r;
    r
}

#[test]
fn edge_classes_agree_with_union_find() {
    for name in builtin_names() {
        let t = builtin(name).unwrap();
        let n = t.tet_count();
        let mut parent: Vec<usize> = (0..6 * n).collect();
        for tet in 0..n {
            for face in 0..4 {
                let (t2, p): (usize, Perm4) = t.neighbor(tet, face);
                for i in 0..4 {
                    for j in i + 1..4 {
                        if i == face || j == face {
                            continue;
                        }
                        let a = find(&mut parent, 6 * tet + slot_of(i, j));
                        let b = find(&mut parent, 6 * t2 + slot_of(p.apply(i), p.apply(j)));
                        parent[a] = b;
                    }
                }
            }
        }
        for x in 0..6 * n {
            for y in 0..6 * n {
                let same_uf = find(&mut parent, x) == find(&mut parent, y);
                let same = t.edge_class_of(x / 6, x % 6) == t.edge_class_of(y / 6, y % 6);
                assert_eq!(same_uf, same, "{name}: slots {x} {y}");
            }
        }
    }
}

#[test]
fn betti_numbers() {
    let b = |name: &str| {
        let x = builtin(name).unwrap().betti_gf2().unwrap();
        (x.b0_closed, x.b2)
    };
    assert_eq!(b("s3_2tet"), (1, 0));
    assert_eq!(b("s2xs1"), (1, 1));
    assert_eq!(b("s3_2tet_s2xs1"), (2, 1));
    assert_eq!(b("t2xi"), (0, 1));
    assert!(builtin("s2xs1").unwrap().betti_gf2().unwrap().computed);
    assert!(!builtin("fig8").unwrap().betti_gf2().unwrap().computed);
    let bare = builtin("fig8").unwrap().with_metadata(None);
    assert!(matches!(
        bare.betti_gf2(),
        Err(ComplexError::MetadataRequired(_))
    ));
}

#[test]
fn disjoint_union_adds_counts() {
    let a = builtin("s3_2tet").unwrap();
    let b = builtin("s2xs1").unwrap();
    let u = a.disjoint_union(&b);
    assert_eq!(u.tet_count(), a.tet_count() + b.tet_count());
    assert_eq!(
        u.edge_classes().len(),
        a.edge_classes().len() + b.edge_classes().len()
    );
    assert_eq!(u.component_count(), 2);
    let g = Gluing {
        tet: 0,
        face: 0,
        to_tet: 0,
        perm: Perm4::IDENTITY,
    };
    assert!(Triangulation::from_gluings(1, &[g], None, None).is_err());
}
