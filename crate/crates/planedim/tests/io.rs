use planedim::gen::{generate, kelly, random_planar, wheel, Family};
use planedim::io::{
    cover_dot, parse_covering, parse_poset, parse_realizer, write_covering, write_poset, write_realizer, PosetFile,
};
use planedim::pipeline::realize;
use planedim::poset::{Covering, Pair};
use planedim::Error;

#[test]
fn poset_files_round_trip() {
    let mut gens = vec![kelly(4).unwrap(), wheel(3).unwrap(), generate(Family::Chain, 4, 0).unwrap()];
    gens.extend((0..5).map(|s| random_planar(25, s).unwrap()));
    for g in gens {
        let pairs: Vec<Pair> = g.poset.incomparable_pairs().into_iter().take(5).collect();
        let text = write_poset(&g.poset, g.plane.as_ref(), Some(&pairs), Some(&g.labels));
        assert!(text.ends_with('\n'));
        let back = parse_poset(&text).unwrap();
        assert_eq!(back.poset.covers(), g.poset.covers());
        assert_eq!(back.plane.as_ref(), g.plane.as_ref());
        assert_eq!(back.pairs.as_deref(), Some(&pairs[..]));
        let again = write_poset(&back.poset, back.plane.as_ref(), back.pairs.as_deref(), back.labels.as_deref());
        assert_eq!(text, again);
    }
}

#[test]
fn plain_posets_need_no_embedding() {
    let back = parse_poset(r#"{"n": 3, "cover": [[0, 1], [0, 2]]}"#).unwrap();
    assert!(back.plane.is_none() && back.pairs.is_none());
    assert_eq!(back.pairs_or_all().len(), 2);
    assert!(matches!(back.require_plane("realize"), Err(Error::BadParameter(_))));
}

#[test]
fn bad_files_are_rejected() {
    assert!(matches!(parse_poset("{"), Err(Error::Parse(_))));
    assert!(matches!(parse_poset(r#"{"n": 2, "cover": [[0, 5]]}"#), Err(Error::OutOfRange(5, 2))));
    assert!(matches!(parse_poset(r#"{"n": 3, "cover": [[0, 1], [1, 2], [0, 2]]}"#), Err(Error::RedundantCover(..))));
    assert!(matches!(
        parse_poset(r#"{"n": 2, "cover": [[0, 1]], "pairs": [[0, 1]]}"#),
        Err(Error::PairNotIncomparable(_))
    ));
    let missing = r#"{"n": 2, "cover": [[0, 1]], "rotation": {"0": [1]}, "anchor": {"vertex": 0, "after": 1}}"#;
    assert!(matches!(parse_poset(missing), Err(Error::RotationMismatch(_))));
    let g = kelly(3).unwrap();
    let mut file = PosetFile::from_parts(&g.poset, g.plane.as_ref(), None);
    file.outer_face = Some(vec![0, 1]);
    assert!(file.to_parts().is_err());
}

#[test]
fn realizer_and_covering_round_trip() {
    let g = kelly(4).unwrap();
    let (r, _) = realize(&g.poset, g.plane.as_ref().unwrap()).unwrap();
    let text = write_realizer(&r);
    assert!(text.starts_with("{\"extensions\":"));
    assert_eq!(parse_realizer(&text).unwrap(), r);
    let mut c = Covering::new();
    c.push(vec![Pair::new(0, 1), Pair::new(2, 3)], "first");
    c.push(vec![], "empty");
    let text = write_covering(&c);
    assert!(text.contains("\"provenance\":\"first\""));
    assert_eq!(parse_covering(&text).unwrap(), c);
}

#[test]
fn cover_dot_has_stable_ids() {
    let g = wheel(3).unwrap();
    let dot = cover_dot(&g.poset, Some(&g.labels));
    assert_eq!(dot.matches(" -> ").count(), g.poset.covers().len());
    assert!(dot.contains("n0 [label="));
    assert_eq!(dot, cover_dot(&g.poset, Some(&g.labels)));
}
