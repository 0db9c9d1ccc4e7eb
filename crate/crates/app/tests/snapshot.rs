use std::fs;

use tanglekit::Move;
use tanglekit_app::store::{SessionStore, StoreError};

#[test]
fn sessions_survive_a_restart() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sessions.jsonl");
    let (kept, gone) = {
        let store = SessionStore::open(&path).unwrap();
        let kept = store.create("3/2".parse().unwrap()).unwrap();
        for m in [Move::Add, Move::Add, Move::Turn] {
            store.apply(&kept.id, m).unwrap();
        }
        let gone = store.create("1".parse().unwrap()).unwrap();
        store.delete(&gone.id).unwrap();
        (kept, gone)
    };
    let store = SessionStore::open(&path).unwrap();
    assert_eq!(store.len(), 1);
    let restored = store.get(&kept.id).unwrap();
    assert_eq!(restored.state.history().to_string(), "AAT");
    assert_eq!(restored.state.current(), &"-1/2".parse().unwrap());
    assert_eq!(restored.state.target(), &"3/2".parse().unwrap());
    assert!(matches!(store.get(&gone.id), Err(StoreError::NotFound(_))));
    store.apply(&kept.id, Move::Add).unwrap();
    drop(store);
    let store = SessionStore::open(&path).unwrap();
    assert_eq!(
        store.get(&kept.id).unwrap().state.history().to_string(),
        "AATA"
    );
}

#[test]
fn journal_lines_hold_only_the_word() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sessions.jsonl");
    let store = SessionStore::open(&path).unwrap();
    let s = store.create("23/14".parse().unwrap()).unwrap();
    store.apply(&s.id, Move::Turn).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(
        last,
        serde_json::json!({"id": s.id, "target": "23/14", "history": "T"})
    );
}

#[test]
fn corrupted_snapshots_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            "{\"id\":\"ab\",\"target\":\"1\",\"history\":\"AXT\"}",
            "history",
        ),
        (
            "{\"id\":\"ab\",\"target\":\"0/0\",\"history\":\"A\"}",
            "target",
        ),
        (
            "{\"id\":\"not hex\",\"target\":\"1\",\"history\":\"A\"}",
            "id",
        ),
        ("{\"id\":\"ab\"}", "target and history"),
        ("{\"id\":\"ab\",\"target\":\"1\",", "line 2"),
    ];
    for (bad, needle) in cases {
        let path = dir.path().join("bad.jsonl");
        fs::write(
            &path,
            format!("{{\"id\":\"cd\",\"target\":\"2\",\"history\":\"AA\"}}\n{bad}\n"),
        )
        .unwrap();
        let err = match SessionStore::open(&path) {
            Err(e) => e,
            Ok(_) => panic!("{bad} was accepted"),
        };
        let text = err.to_string();
        assert!(matches!(err, StoreError::Corrupt { line: 2, .. }), "{text}");
        assert!(text.contains(needle), "{text} lacks {needle}");
    }
}
