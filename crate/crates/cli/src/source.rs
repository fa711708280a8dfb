use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use ehrhart_core::exact::IntVec;
use ehrhart_core::polytope::{corpus_seeds, random_cross_generators, random_lattice_polytope};
use ehrhart_core::VPolytope;
use serde::Deserialize;

use crate::dsl;

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct SourceKind {
    /// Construction expression, e.g. "join(T(2,3),S(3,1))"
    #[arg(long)]
    pub expr: Option<String>,
    /// Polytope JSON file: {"dim": d, "generators": [[..], ..]} or an array of those
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Seeded random corpus of N polytopes
    #[arg(long, value_name = "N", requires = "seed")]
    pub random: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    #[command(flatten)]
    pub kind: SourceKind,
    /// Dimension of random polytopes
    #[arg(long, value_name = "D", default_value_t = 3)]
    pub dim: usize,
    /// Coordinates of random points are drawn from [-B, B]
    #[arg(long = "box", value_name = "B", default_value_t = 2)]
    pub bound: i64,
    #[arg(long, value_name = "S")]
    pub seed: Option<u64>,
    /// Points sampled per random polytope (default D+3)
    #[arg(long, value_name = "K")]
    pub points: Option<usize>,
    /// Sample centrally symmetric random polytopes
    #[arg(long)]
    pub symmetric: bool,
}

/// A resolved input polytope with a stable identifier.
#[derive(Debug, Clone)]
pub struct Member {
    pub id: String,
    pub polytope: VPolytope,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FileContent {
    One(VPolytope),
    Many(Vec<VPolytope>),
}

impl Source {
    /// Resolved members, and whether the source denotes a collection.
    pub fn members(&self, force_symmetric: bool) -> Result<(Vec<Member>, bool)> {
        if let Some(expr) = &self.kind.expr {
            let e = dsl::parse(expr).with_context(|| format!("cannot parse expression {expr:?}"))?;
            let polytope = e.build().with_context(|| format!("cannot build {e}"))?;
            return Ok((vec![Member { id: e.to_string(), polytope }], false));
        }
        if let Some(path) = &self.kind.file {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            let content: FileContent =
                serde_json::from_str(&text).with_context(|| format!("invalid polytope JSON in {}", path.display()))?;
            let name = path.display().to_string();
            return Ok(match content {
                FileContent::One(polytope) => (vec![Member { id: name, polytope }], false),
                FileContent::Many(ps) => {
                    let members =
                        ps.into_iter().enumerate().map(|(i, polytope)| Member { id: format!("{name}#{i}"), polytope });
                    (members.collect(), true)
                }
            });
        }
        let n = self.kind.random.expect("clap enforces one source");
        let points = self.points.unwrap_or(self.dim + 3);
        let symmetric = self.symmetric || force_symmetric;
        let members = self
            .seeds(n)?
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                let polytope = random_lattice_polytope(self.dim, self.bound, points, s, symmetric)?;
                Ok(Member { id: format!("random#{i}"), polytope })
            })
            .collect::<Result<_>>()?;
        Ok((members, true))
    }

    /// Generator sets of cross-polytopes `conv{±v_i}`.
    pub fn cross_generators(&self) -> Result<Vec<(String, Vec<IntVec>)>> {
        if let Some(n) = self.kind.random {
            return self
                .seeds(n)?
                .into_iter()
                .enumerate()
                .map(|(i, s)| Ok((format!("random-cross#{i}"), random_cross_generators(self.dim, self.bound, s)?)))
                .collect();
        }
        self.members(false)?
            .0
            .into_iter()
            .map(|m| {
                let gens = cross_generators_of(&m.polytope).with_context(|| format!("{} is not a cross-polytope", m.id))?;
                Ok((m.id, gens))
            })
            .collect()
    }

    fn seeds(&self, n: usize) -> Result<Vec<u64>> {
        let Some(seed) = self.seed else { bail!("--random requires --seed") };
        Ok(corpus_seeds(seed, n))
    }
}

fn cross_generators_of(p: &VPolytope) -> Result<Vec<IntVec>> {
    let verts = p.vertices(&p.facets());
    if verts.len() != 2 * p.dim() || !p.is_centrally_symmetric() {
        bail!("expected 2d vertices symmetric about the origin");
    }
    Ok(verts.into_iter().filter(|v| *v > -v).collect())
}
