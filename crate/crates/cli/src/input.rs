//! Task files and command-line values.
//!
//! Every rejection carries the JSON path of the offending field and, for
//! parse errors, the line and column, so a bad file can be fixed without
//! guessing.

use std::fmt;
use std::path::Path;

use serde::Deserialize;
use vancoh::cohomology::{first_violated_relator, Cocycle};
use vancoh::json::Dec;
use num_bigint::BigInt;
use vancoh::representation::RepresentationJson;
use vancoh::vanishing::Level;
use vancoh::{BilinearLattice, Bounds, FreeWord, IntMatrix, LatticeVector, Presentation, Representation};

/// An input error: where it happened and what was wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub location: String,
    pub message: String,
}

impl InputError {
    pub fn at(location: impl Into<String>, message: impl fmt::Display) -> Self {
        InputError {
            location: location.into(),
            message: message.to_string(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for InputError {}

/// Top-level task file. Only the fields a command needs are required.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskInput {
    pub lattice: Option<BilinearLattice>,
    pub presentation: Option<Presentation>,
    pub representation: Option<RepresentationJson>,
    pub seeds: Option<Vec<Vec<Dec<BigInt>>>>,
    pub cocycle: Option<Cocycle>,
    /// Words for `restrict`; enumerated up to the word-length bound if absent.
    pub words: Option<Vec<FreeWord>>,
    /// Matrix tested by `spsharp`.
    pub element: Option<IntMatrix>,
    /// Level for `spsharp`, `sp_sharp` unless given.
    pub level: Option<Level>,
}

/// Parses task JSON, reporting `line L, column C` and the field path.
pub fn parse_task(text: &str, origin: &str) -> Result<TaskInput, InputError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    match serde_path_to_error::deserialize(de) {
        Ok(t) => Ok(t),
        Err(e) => {
            let path = e.path().to_string();
            let inner = e.inner();
            let field = if path == "." { String::new() } else { format!(" at `{path}`") };
            Err(InputError::at(
                format!("{origin}: line {}, column {}{field}", inner.line(), inner.column()),
                strip_position(&inner.to_string()),
            ))
        }
    }
}

/// serde_json appends " at line L column C"; the location already says so.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

pub fn load_task(path: &Path) -> Result<TaskInput, InputError> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError::at(&origin, e))?;
    parse_task(&text, &origin)
}

impl TaskInput {
    pub fn lattice(&self) -> Result<&BilinearLattice, InputError> {
        self.lattice.as_ref().ok_or_else(|| missing("lattice"))
    }

    pub fn seeds(&self) -> Result<Vec<LatticeVector>, InputError> {
        let seeds = self.seeds.as_ref().ok_or_else(|| missing("seeds"))?;
        let rank = self.lattice()?.rank();
        seeds
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if s.len() != rank {
                    return Err(InputError::at(
                        format!("seeds[{i}]"),
                        format!("has {} entries, lattice rank is {rank}", s.len()),
                    ));
                }
                Ok(s.iter().map(|x| x.0.clone()).collect())
            })
            .collect()
    }

    /// The given presentation, or the free group on `generators`.
    pub fn presentation_or_free(&self, generators: usize) -> Result<Presentation, InputError> {
        match &self.presentation {
            Some(p) if p.generator_count() != generators => Err(InputError::at(
                "presentation.generators",
                format!("is {}, expected {generators} (one per seed)", p.generator_count()),
            )),
            Some(p) => Ok(p.clone()),
            None => Ok(Presentation::free(generators)),
        }
    }

    /// The explicit representation, or the seed transvections on the lattice.
    /// Relators are checked either way.
    pub fn representation(&self) -> Result<Representation, InputError> {
        let rep = match &self.representation {
            Some(r) => r
                .clone()
                .build(self.presentation.clone(), self.lattice.clone())
                .map_err(|e| InputError::at("representation", e))?,
            None => {
                let seeds = self.seeds().map_err(|_| missing("representation"))?;
                let presentation = self.presentation_or_free(seeds.len())?;
                Representation::from_transvections(presentation, self.lattice()?.clone(), &seeds)
                    .map_err(|e| InputError::at("seeds", e))?
            }
        };
        if let Some(case) = rep.verify_relators().failing_case {
            return Err(InputError::at(
                relator_location(self, case["relator"].as_u64().unwrap_or(0)),
                format!("relator {} is not the identity in the representation", case["word"]),
            ));
        }
        Ok(rep)
    }

    /// The cocycle, checked against `rep` and its relators.
    pub fn cocycle(&self, rep: &Representation) -> Result<Cocycle, InputError> {
        let raw = self.cocycle.as_ref().ok_or_else(|| missing("cocycle"))?;
        let c = Cocycle::new(rep, raw.values().to_vec()).map_err(|e| InputError::at("cocycle", e))?;
        if let Some(r) = first_violated_relator(rep, &c) {
            return Err(InputError::at(
                "cocycle",
                format!("relator {r} extends to a nonzero vector, so this is not a cocycle"),
            ));
        }
        Ok(c)
    }

    pub fn element(&self) -> Result<&IntMatrix, InputError> {
        self.element.as_ref().ok_or_else(|| missing("element"))
    }
}

fn relator_location(input: &TaskInput, k: u64) -> String {
    let owner = if input.presentation.is_some() { "presentation" } else { "representation" };
    format!("{owner}.relators[{k}]")
}

fn missing(field: &str) -> InputError {
    InputError::at(field, "required by this command but absent")
}

/// `depth=D,size=S,exp=E,wordlen=L`; omitted keys keep their defaults.
pub fn parse_bounds(s: &str) -> Result<Bounds, String> {
    let mut b = Bounds::default();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("`{part}` is not key=value"))?;
        let n: u64 = value
            .trim()
            .parse()
            .map_err(|_| format!("`{key}` must be a positive integer, got `{value}`"))?;
        if n == 0 {
            return Err(format!("`{key}` must be positive"));
        }
        let as_usize = || usize::try_from(n).map_err(|_| format!("`{key}` is too large"));
        match key.trim() {
            "depth" => b.depth = as_usize()?,
            "size" => b.size = as_usize()?,
            "exp" => b.exponent = n,
            "wordlen" => b.word_length = as_usize()?,
            other => return Err(format!("unknown bound `{other}` (expected depth, size, exp, wordlen)")),
        }
    }
    Ok(b)
}
