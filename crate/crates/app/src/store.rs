//! Square-dance sessions, held in memory and optionally journaled to a
//! JSON-lines file that is replayed at startup.
//!
//! Journal records are `{"id", "target", "history"}` after every change and
//! `{"id", "deleted": true}` on removal; the last record for an id wins.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;
use std::sync::{Arc, Mutex, RwLock};
use std::time::{SystemTime, UNIX_EPOCH};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use tanglekit::dance::{self, DanceState, Move, MoveWord};
use tanglekit::{parse_fraction, Fraction};

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("no session with id {0}")]
    NotFound(String),
    #[error("session {0} no longer replays to its current state")]
    Inconsistent(String),
    #[error("snapshot line {line}: {reason}")]
    Corrupt { line: usize, reason: String },
    #[error(transparent)]
    Engine(#[from] tanglekit::Error),
    #[error("snapshot i/o: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Session {
    pub id: String,
    pub state: DanceState,
    /// Milliseconds since the Unix epoch.
    pub created_at: u64,
    pub updated_at: u64,
}

struct Slot {
    session: Session,
    deleted: bool,
}

#[derive(Serialize, Deserialize)]
struct Record {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    history: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    deleted: bool,
}

impl Record {
    fn of(session: &Session) -> Self {
        Record {
            id: session.id.clone(),
            target: Some(session.state.target().to_string()),
            history: Some(session.state.history().to_string()),
            deleted: false,
        }
    }

    fn tombstone(id: &str) -> Self {
        Record {
            id: id.to_string(),
            target: None,
            history: None,
            deleted: true,
        }
    }
}

#[derive(Default)]
pub struct SessionStore {
    sessions: RwLock<HashMap<String, Arc<Mutex<Slot>>>>,
    journal: Option<Mutex<File>>,
}

fn now_millis() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

fn new_id() -> String {
    format!("{:032x}", rand::rng().random::<u128>())
}

fn is_valid_id(id: &str) -> bool {
    !id.is_empty() && id.len() <= 64 && id.bytes().all(|b| b.is_ascii_hexdigit())
}

impl SessionStore {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads every live session recorded in `path`, then appends to it.
    /// A missing file starts an empty store.
    pub fn open(path: &Path) -> Result<Self, StoreError> {
        let mut sessions = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            let loaded_at = now_millis();
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let corrupt = |reason: String| StoreError::Corrupt {
                    line: i + 1,
                    reason,
                };
                let record: Record =
                    serde_json::from_str(&line).map_err(|e| corrupt(e.to_string()))?;
                if !is_valid_id(&record.id) {
                    return Err(corrupt(format!("malformed id {:?}", record.id)));
                }
                if record.deleted {
                    sessions.remove(&record.id);
                    continue;
                }
                let (Some(target), Some(history)) = (&record.target, &record.history) else {
                    return Err(corrupt("record needs target and history".into()));
                };
                let target = parse_fraction(target).map_err(|e| corrupt(format!("target: {e}")))?;
                let history: MoveWord = history
                    .parse()
                    .map_err(|e| corrupt(format!("history: {e}")))?;
                let state = DanceState::from_history(target, history);
                let created_at = sessions
                    .get(&record.id)
                    .map_or(loaded_at, |s: &Session| s.created_at);
                sessions.insert(
                    record.id.clone(),
                    Session {
                        id: record.id,
                        state,
                        created_at,
                        updated_at: loaded_at,
                    },
                );
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let slots = sessions
            .into_iter()
            .map(|(id, session)| {
                let slot = Slot {
                    session,
                    deleted: false,
                };
                (id, Arc::new(Mutex::new(slot)))
            })
            .collect();
        Ok(Self {
            sessions: RwLock::new(slots),
            journal: Some(Mutex::new(file)),
        })
    }

    fn write(&self, record: &Record) -> Result<(), StoreError> {
        if let Some(journal) = &self.journal {
            let mut line = serde_json::to_string(record).expect("records serialize");
            line.push('\n');
            let mut file = journal.lock().expect("journal lock");
            file.write_all(line.as_bytes())?;
            file.flush()?;
        }
        Ok(())
    }

    fn slot(&self, id: &str) -> Result<Arc<Mutex<Slot>>, StoreError> {
        self.sessions
            .read()
            .expect("session map lock")
            .get(id)
            .cloned()
            .ok_or_else(|| StoreError::NotFound(id.to_string()))
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("session map lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn create(&self, target: Fraction) -> Result<Session, StoreError> {
        let now = now_millis();
        let session = Session {
            id: new_id(),
            state: DanceState::new(target),
            created_at: now,
            updated_at: now,
        };
        let slot = Arc::new(Mutex::new(Slot {
            session: session.clone(),
            deleted: false,
        }));
        let guard = slot.lock().expect("session lock");
        self.sessions
            .write()
            .expect("session map lock")
            .insert(session.id.clone(), slot.clone());
        self.write(&Record::of(&session))?;
        drop(guard);
        Ok(session)
    }

    pub fn get(&self, id: &str) -> Result<Session, StoreError> {
        let slot = self.slot(id)?;
        let slot = slot.lock().expect("session lock");
        if slot.deleted {
            return Err(StoreError::NotFound(id.to_string()));
        }
        Ok(slot.session.clone())
    }

    /// Applies one move. Moves on the same session are serialized; the
    /// replay invariant is rechecked before the change is kept.
    pub fn apply(&self, id: &str, m: Move) -> Result<Session, StoreError> {
        let slot = self.slot(id)?;
        let mut slot = slot.lock().expect("session lock");
        if slot.deleted {
            return Err(StoreError::NotFound(id.to_string()));
        }
        let next = dance::apply_move(&slot.session.state, m);
        if !next.is_consistent() {
            return Err(StoreError::Inconsistent(id.to_string()));
        }
        let mut session = slot.session.clone();
        session.state = next;
        session.updated_at = now_millis().max(session.updated_at + 1);
        self.write(&Record::of(&session))?;
        slot.session = session.clone();
        Ok(session)
    }

    pub fn hint(&self, id: &str) -> Result<Move, StoreError> {
        let session = self.get(id)?;
        Ok(dance::hint(&session.state)?)
    }

    pub fn delete(&self, id: &str) -> Result<(), StoreError> {
        let slot = self
            .sessions
            .write()
            .expect("session map lock")
            .remove(id)
            .ok_or_else(|| StoreError::NotFound(id.to_string()))?;
        let mut slot = slot.lock().expect("session lock");
        slot.deleted = true;
        self.write(&Record::tombstone(id))
    }
}
