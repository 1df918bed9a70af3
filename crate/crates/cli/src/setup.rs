//! Algebras, sl2-triples and integrable triples from a job configuration.

use std::sync::Arc;

use dshier::grading::{
    find_integrable_element, g2_triple, sl2_from_partition, sl_principal_triple, so_integrable_triple, DegreeChoice,
    DynkinGrading, IntegrableTriple, SearchBudget, Sl2Triple, TripleJson,
};
use dshier::liealg::{
    build_g2, build_sl, build_so_from_partition, build_sp, LieAlgebraJson, LieAlgebraSpec, SoIndexing,
};
use dshier::Error;

use crate::config::JobConfig;
use crate::Failure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Sl(usize),
    So(usize),
    Sp(usize),
    G2,
    File(String),
}

impl Kind {
    pub fn parse(s: &str) -> Result<Kind, Failure> {
        if s.ends_with(".json") {
            return Ok(Kind::File(s.to_string()));
        }
        let t: String = s.to_ascii_lowercase().chars().filter(|c| !"_() ".contains(*c)).collect();
        let num = |rest: &str| rest.parse::<usize>().map_err(|_| Failure::config(format!("unknown algebra `{s}`")));
        match t.as_str() {
            "g2" => Ok(Kind::G2),
            _ if t.starts_with("sl") => num(&t[2..]).map(Kind::Sl),
            _ if t.starts_with("so") => num(&t[2..]).map(Kind::So),
            _ if t.starts_with("sp") => num(&t[2..]).map(Kind::Sp),
            _ => Err(Failure::config(format!("unknown algebra `{s}`"))),
        }
    }

    /// Key of the algebra in the exceptional classification table.
    pub fn table_key(&self) -> Option<&'static str> {
        matches!(self, Kind::G2).then_some("G2")
    }
}

/// The algebra together with what the nilpotent was chosen from.
pub struct Setup {
    pub kind: Kind,
    pub alg: Arc<LieAlgebraSpec>,
    pub so_index: Option<SoIndexing>,
    pub nilpotent: Option<String>,
}

fn partition_string(p: &[usize]) -> String {
    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn algebra(cfg: &JobConfig) -> Result<Setup, Failure> {
    let name = cfg.algebra.as_deref().ok_or_else(|| Failure::config("--algebra is required"))?;
    let kind = Kind::parse(name)?;
    let (alg, so_index, nilpotent) = match &kind {
        Kind::Sl(n) => {
            let p = cfg.partition.clone().unwrap_or_else(|| vec![*n]);
            (build_sl(*n).map_err(Failure::config_err)?, None, Some(partition_string(&p)))
        }
        Kind::So(n) => {
            let p = cfg.partition.clone().unwrap_or_else(|| if n % 2 == 1 { vec![*n] } else { vec![n - 1, 1] });
            if p.iter().sum::<usize>() != *n {
                return Err(Failure::config(format!("partition {} does not sum to {n}", partition_string(&p))));
            }
            let (alg, idx) = build_so_from_partition(&p).map_err(Failure::config_err)?;
            (alg, Some(idx), Some(partition_string(&p)))
        }
        Kind::Sp(n) => (build_sp(*n).map_err(Failure::config_err)?, None, None),
        Kind::G2 => (build_g2().map_err(Failure::config_err)?, None, cfg.nilpotent_label.clone()),
        Kind::File(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| Failure::config(format!("cannot read {path}: {e}")))?;
            let j: LieAlgebraJson = serde_json::from_str(&text).map_err(|e| Failure::config(format!("{path}: {e}")))?;
            (j.to_spec().map_err(Failure::config_err)?, None, None)
        }
    };
    Ok(Setup { kind, alg: Arc::new(alg), so_index, nilpotent })
}

fn explicit_triple(cfg: &JobConfig) -> Option<&str> {
    cfg.triple.as_deref().filter(|t| *t != "auto")
}

fn read_triple(s: &Setup, path: &str) -> Result<IntegrableTriple, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::config(format!("cannot read {path}: {e}")))?;
    let j: TripleJson = serde_json::from_str(&text).map_err(|e| Failure::config(format!("{path}: {e}")))?;
    IntegrableTriple::from_json(&s.alg, &j).map_err(Failure::triple)
}

/// The sl2-triple of the configured nilpotent.
pub fn sl2_triple(s: &Setup, cfg: &JobConfig) -> Result<Sl2Triple, Failure> {
    if let Some(path) = explicit_triple(cfg) {
        return Ok(read_triple(s, path)?.grading.triple().clone());
    }
    match &s.kind {
        Kind::Sl(n) => {
            let p = cfg.partition.clone().unwrap_or_else(|| vec![*n]);
            sl2_from_partition(&s.alg, None, &p).map_err(Failure::config_err)
        }
        Kind::So(_) => {
            let idx = s.so_index.as_ref().expect("so algebras carry their indexing");
            let p: Vec<usize> = idx.parts.iter().flat_map(|&(part, mult)| std::iter::repeat(part).take(mult)).collect();
            sl2_from_partition(&s.alg, Some(idx), &p).map_err(Failure::config_err)
        }
        Kind::G2 => {
            let label = cfg.nilpotent_label.as_deref().ok_or_else(|| Failure::config("g2 needs --nilpotent-label"))?;
            g2_triple(&s.alg, label).map_err(Failure::config_err)
        }
        Kind::Sp(_) | Kind::File(_) => {
            Err(Failure::config("this algebra needs an explicit triple file (--triple path.json)"))
        }
    }
}

/// How an integrable triple was obtained.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Provenance {
    pub source: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates_tried: Option<usize>,
}

/// The integrable triple: read from a file, a closed-form construction, or a
/// search over `g_d` and then `g_{d−1/2}`.
pub fn integrable_triple(s: &Setup, cfg: &JobConfig) -> Result<(IntegrableTriple, Provenance), Failure> {
    if let Some(path) = explicit_triple(cfg) {
        return Ok((read_triple(s, path)?, Provenance { source: "file", candidates_tried: None }));
    }
    let closed = match &s.kind {
        Kind::Sl(n) if cfg.partition.as_ref().map_or(true, |p| p == &[*n]) => Some(sl_principal_triple(*n)),
        Kind::So(_) => {
            let idx = s.so_index.as_ref().expect("so algebras carry their indexing");
            let p: Vec<usize> = idx.parts.iter().flat_map(|&(part, mult)| std::iter::repeat(part).take(mult)).collect();
            match so_integrable_triple(&p) {
                Ok((t, _)) => Some(Ok(t)),
                Err(Error::Partition(_)) | Err(Error::InvalidParameter(_)) => None,
                Err(e) => Some(Err(e)),
            }
        }
        _ => None,
    };
    if let Some(t) = closed {
        return Ok((t.map_err(Failure::triple)?, Provenance { source: "construction", candidates_tried: None }));
    }
    let grading = DynkinGrading::from_triple(&sl2_triple(s, cfg)?).map_err(Failure::from_core)?;
    let seed = cfg.seeds()[0];
    let mut tried = 0;
    for choice in [DegreeChoice::Depth, DegreeChoice::DepthMinusHalf] {
        let out =
            find_integrable_element(&grading, choice, SearchBudget::default(), seed).map_err(Failure::from_core)?;
        tried += out.candidates_tried;
        if let Some(t) = out.found {
            return Ok((t, Provenance { source: "search", candidates_tried: Some(tried) }));
        }
    }
    Err(Failure::new(4, format!("no integrable triple found after {tried} candidates")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_names() {
        assert_eq!(Kind::parse("sl2").unwrap(), Kind::Sl(2));
        assert_eq!(Kind::parse("sl(3)").unwrap(), Kind::Sl(3));
        assert_eq!(Kind::parse("so_7").unwrap(), Kind::So(7));
        assert_eq!(Kind::parse("G2").unwrap(), Kind::G2);
        assert_eq!(Kind::parse("alg.json").unwrap(), Kind::File("alg.json".into()));
        assert!(Kind::parse("e8").is_err());
        assert!(Kind::parse("slx").is_err());
    }
}
