//! Exploration sessions: a starting height plus a log of raises and lowers.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use adinkra::jacobian::{color_split, height_image, SplitLabel};
use adinkra::morse::morse_divisor;
use adinkra::{Color, HeightFn, JacobianImage, MorseDivisor, Vertex};
use serde::{Deserialize, Serialize};

use crate::pins::height_from_spec;

#[derive(Debug)]
pub enum SessionError {
    NotFound(String),
    BadRequest(String),
}

impl std::fmt::Display for SessionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SessionError::NotFound(id) => write!(f, "no session {id}"),
            SessionError::BadRequest(m) => f.write_str(m),
        }
    }
}

impl From<adinkra::Error> for SessionError {
    fn from(e: adinkra::Error) -> Self {
        SessionError::BadRequest(e.to_string())
    }
}

type Result<T> = std::result::Result<T, SessionError>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Init {
    #[default]
    FullyExtended,
    Valise,
    /// Needs `values`.
    Values,
    /// Needs `pins`.
    Pins,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StartSpec {
    pub n: u8,
    #[serde(default)]
    pub init: Init,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pins: Option<String>,
}

impl StartSpec {
    pub fn height(&self) -> Result<HeightFn> {
        let n = self.n;
        match self.init {
            Init::FullyExtended => Ok(HeightFn::fully_extended(n)?),
            Init::Valise => Ok(HeightFn::valise(n)?),
            Init::Values => {
                let values = self.values.clone().ok_or_else(|| bad("init \"values\" needs a values array"))?;
                Ok(HeightFn::new(n, values)?)
            }
            Init::Pins => {
                let spec = self.pins.as_deref().ok_or_else(|| bad("init \"pins\" needs a pins spec"))?;
                height_from_spec(n, spec).map_err(|e| bad(&e.to_string()))
            }
        }
    }
}

fn bad(m: &str) -> SessionError {
    SessionError::BadRequest(m.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Op {
    Lower,
    Raise,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub op: Op,
    pub vertex: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Session {
    pub id: String,
    pub start: StartSpec,
    pub history: Vec<Move>,
    #[serde(skip)]
    current: Option<HeightFn>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Moves {
    pub lower: Vec<u32>,
    pub raise: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SessionView {
    pub id: String,
    pub n: u8,
    pub start: StartSpec,
    /// Height of each vertex, indexed by bitmask.
    pub height: Vec<u8>,
    /// Vertices on each level, bottom first.
    pub layers: Vec<Vec<u32>>,
    pub history: Vec<Move>,
    pub moves: Moves,
    /// Present for n = 5 only.
    pub image: Option<JacobianImage>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MoveResult {
    #[serde(flatten)]
    pub session: SessionView,
    /// Change of each image coordinate in units of (1, 3, 0); n = 5 only.
    pub step: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitEntry {
    pub vertex: u32,
    pub label: SplitLabel,
}

#[derive(Clone, Debug, Serialize)]
pub struct Splitting {
    pub k: u8,
    pub base: u32,
    pub labels: Vec<SplitEntry>,
    pub plus: usize,
    pub minus: usize,
}

fn apply(h: &HeightFn, m: Move) -> Result<HeightFn> {
    let v = Vertex::new(h.n(), m.vertex)?;
    Ok(match m.op {
        Op::Lower => h.lower(v)?,
        Op::Raise => h.raise(v)?,
    })
}

impl Session {
    /// Builds the start height and replays `history` on it.
    pub fn new(id: String, start: StartSpec, history: Vec<Move>) -> Result<Self> {
        let mut s = Session { id, start, history: Vec::new(), current: None };
        let mut h = s.start.height()?;
        for m in history {
            h = apply(&h, m)?;
            s.history.push(m);
        }
        s.current = Some(h);
        Ok(s)
    }

    pub fn current(&self) -> &HeightFn {
        self.current.as_ref().expect("built by Session::new")
    }

    /// The height obtained by replaying the whole log from the start.
    pub fn replay(&self) -> Result<HeightFn> {
        self.history.iter().try_fold(self.start.height()?, |h, &m| apply(&h, m))
    }

    pub fn image(&self) -> Option<JacobianImage> {
        height_image(self.current()).ok()
    }

    pub fn divisor(&self) -> MorseDivisor {
        morse_divisor(self.current())
    }

    pub fn moves(&self) -> Moves {
        let h = self.current();
        let bits = |vs: Vec<Vertex>| vs.into_iter().map(|v| u32::from(v.bits())).collect();
        Moves { lower: bits(h.lowering_targets()), raise: bits(h.raising_targets()) }
    }

    pub fn view(&self) -> SessionView {
        let h = self.current();
        let mut layers = vec![Vec::new(); usize::from(h.max_height()) + 1];
        for v in h.vertices() {
            layers[usize::from(h.at(v))].push(u32::from(v.bits()));
        }
        SessionView {
            id: self.id.clone(),
            n: h.n(),
            start: self.start.clone(),
            height: h.values().to_vec(),
            layers,
            history: self.history.clone(),
            moves: self.moves(),
            image: self.image(),
        }
    }

    pub fn play(&mut self, m: Move) -> Result<MoveResult> {
        let before = self.image();
        let next = apply(self.current(), m)?;
        self.current = Some(next);
        self.history.push(m);
        let after = self.image();
        let step = before.zip(after).map(|(b, a)| {
            let unit = adinkra::GroupElt::new(1, 3, 0);
            (0..5)
                .map(|i| match a.0[i] - b.0[i] {
                    d if d == unit => 1,
                    d if d == -unit => -1,
                    _ => 0,
                })
                .collect()
        });
        Ok(MoveResult { session: self.view(), step })
    }

    pub fn splitting(&self, k: u8, base: Option<u32>) -> Result<Splitting> {
        let n = self.current().n();
        let k = Color::new(n, k)?;
        let base = match base {
            Some(b) => Vertex::new(n, b)?,
            None => Vertex::ones(n)?,
        };
        let labels: Vec<SplitEntry> = Vertex::all(n)?
            .map(|u| Ok(SplitEntry { vertex: u32::from(u.bits()), label: color_split(k, base, u)? }))
            .collect::<std::result::Result<_, adinkra::Error>>()?;
        let plus = labels.iter().filter(|e| e.label == SplitLabel::Plus).count();
        Ok(Splitting { k: k.get(), base: u32::from(base.bits()), minus: labels.len() - plus, plus, labels })
    }
}

#[derive(Deserialize)]
pub struct CreateRequest {
    #[serde(flatten)]
    pub start: StartSpec,
    #[serde(default)]
    pub moves: Vec<Move>,
}

/// All live sessions; each one is locked on its own so writers never block other sessions.
#[derive(Default)]
pub struct Store {
    sessions: RwLock<BTreeMap<String, Arc<Mutex<Session>>>>,
    snapshot: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct SnapshotEntry {
    id: String,
    start: StartSpec,
    history: Vec<Move>,
}

impl Store {
    pub fn new(snapshot: Option<PathBuf>) -> Self {
        Store { sessions: RwLock::default(), snapshot }
    }

    /// Restores sessions from the snapshot file if it exists.
    pub fn load(snapshot: PathBuf) -> anyhow::Result<Self> {
        let store = Store::new(Some(snapshot.clone()));
        if snapshot.exists() {
            let text = std::fs::read_to_string(&snapshot)?;
            let entries: Vec<SnapshotEntry> = serde_json::from_str(&text)?;
            let mut map = store.sessions.write().expect("fresh lock");
            for e in entries {
                let s = Session::new(e.id.clone(), e.start, e.history).map_err(|err| anyhow::anyhow!("{err}"))?;
                map.insert(e.id, Arc::new(Mutex::new(s)));
            }
        }
        Ok(store)
    }

    pub fn create(&self, req: CreateRequest) -> Result<SessionView> {
        let id = uuid::Uuid::new_v4().to_string();
        let session = Session::new(id.clone(), req.start, req.moves)?;
        let view = session.view();
        self.sessions.write().expect("poisoned").insert(id, Arc::new(Mutex::new(session)));
        self.save();
        Ok(view)
    }

    pub fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>> {
        self.sessions
            .read()
            .expect("poisoned")
            .get(id)
            .cloned()
            .ok_or_else(|| SessionError::NotFound(id.to_string()))
    }

    pub fn with<T>(&self, id: &str, f: impl FnOnce(&Session) -> Result<T>) -> Result<T> {
        let s = self.get(id)?;
        let guard = s.lock().expect("poisoned");
        f(&guard)
    }

    pub fn play(&self, id: &str, m: Move) -> Result<MoveResult> {
        let s = self.get(id)?;
        let out = s.lock().expect("poisoned").play(m)?;
        self.save();
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn save(&self) {
        let Some(path) = &self.snapshot else { return };
        let entries: Vec<SnapshotEntry> = self
            .sessions
            .read()
            .expect("poisoned")
            .values()
            .map(|s| {
                let s = s.lock().expect("poisoned");
                SnapshotEntry { id: s.id.clone(), start: s.start.clone(), history: s.history.clone() }
            })
            .collect();
        if let Err(e) = write_atomic(path, &entries) {
            eprintln!("snapshot not written: {e}");
        }
    }
}

fn write_atomic(path: &Path, entries: &[SnapshotEntry]) -> anyhow::Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_vec_pretty(entries)?)?;
    std::fs::rename(tmp, path)?;
    Ok(())
}
