//! Validated documents loaded by one invocation, keyed by path.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::bail;
use sesq_core::io::load;
use sesq_core::{Document, SesqForm, SesqSystem};

pub struct Workspace {
    cap: u64,
    objects: BTreeMap<String, Document>,
}

impl Workspace {
    pub fn new(cap: u64) -> Workspace {
        Workspace {
            cap,
            objects: BTreeMap::new(),
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Loads and validates `path` once; later calls return the same object.
    pub fn load(&mut self, path: &Path) -> anyhow::Result<&Document> {
        let name = path.display().to_string();
        if !self.objects.contains_key(&name) {
            let doc = load(path)?;
            self.objects.insert(name.clone(), doc);
        }
        Ok(&self.objects[&name])
    }

    pub fn form(&mut self, path: &Path) -> anyhow::Result<SesqForm> {
        match self.load(path)? {
            Document::Form(s) => Ok(s.clone()),
            other => bail!("{} holds a {}, expected a form", path.display(), other.kind()),
        }
    }

    /// A form is read as a system with one member.
    pub fn system(&mut self, path: &Path) -> anyhow::Result<SesqSystem> {
        match self.load(path)? {
            Document::Form(s) => Ok(s.clone().into()),
            Document::System(s) => Ok(s.clone()),
            other => bail!("{} holds a {}, expected a form or system", path.display(), other.kind()),
        }
    }
}
