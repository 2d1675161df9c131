use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::tangle::{Endpoint, FreeLoop, PlanarTangle};
use super::{Colour, TangleError};

/// On-disk form of a tangle.
///
/// `embedding.corners[v][g]` is the region id of corner `g` of vertex `v`
/// (vertex 0 is the external boundary). Each loop records the region it
/// lies in (`face`), the region it encloses (`inner`) and the loop whose
/// inside it lies in, if any. `shading` is an optional assertion checked
/// against the recomputed 2-colouring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangleJson {
    pub external: Colour,
    pub boxes: Vec<Colour>,
    pub strands: Vec<[String; 2]>,
    #[serde(default)]
    pub loops: Vec<LoopJson>,
    pub embedding: EmbeddingJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shading: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopJson {
    pub face: usize,
    pub inner: usize,
    pub parent: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub corners: Vec<Vec<usize>>,
}

impl FromStr for Endpoint {
    type Err = TangleError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TangleError::Parse(format!("bad endpoint `{s}`"));
        let (head, point) = s.trim().split_once(':').ok_or_else(bad)?;
        let point: usize = point.parse().map_err(|_| bad())?;
        let vertex = if head == "ext" {
            0
        } else {
            let v: usize = head.strip_prefix("box").ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if v == 0 {
                return Err(bad());
            }
            v
        };
        if point == 0 {
            return Err(bad());
        }
        Ok(Endpoint { vertex, point })
    }
}

impl PlanarTangle {
    pub fn to_json(&self) -> TangleJson {
        let strands = self.strands().iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
        let loops = self
            .loops
            .iter()
            .map(|l| LoopJson {
                face: l.outer,
                inner: l.inner,
                parent: self.loops.iter().position(|m| m.inner == l.outer),
            })
            .collect();
        let shading = self
            .shading()
            .ok()
            .map(|s| s.into_iter().map(|b| if b { "black" } else { "white" }.to_string()).collect());
        TangleJson {
            external: self.external,
            boxes: self.boxes.clone(),
            strands,
            loops,
            embedding: EmbeddingJson { corners: self.corner_region.clone() },
            shading,
        }
    }

    pub fn from_json(j: &TangleJson) -> Result<PlanarTangle, TangleError> {
        let colours: Vec<Colour> = std::iter::once(j.external).chain(j.boxes.iter().copied()).collect();
        let unset = Endpoint { vertex: usize::MAX, point: 0 };
        let mut partner: Vec<Vec<Endpoint>> = colours.iter().map(|c| vec![unset; c.points()]).collect();
        for [a, b] in &j.strands {
            let (a, b): (Endpoint, Endpoint) = (a.parse()?, b.parse()?);
            for (e, f) in [(a, b), (b, a)] {
                let slot = partner
                    .get_mut(e.vertex)
                    .and_then(|ps| ps.get_mut(e.point - 1))
                    .ok_or_else(|| TangleError::Invalid(format!("endpoint {e} does not exist")))?;
                if *slot != unset {
                    return Err(TangleError::Invalid(format!("{e} is the end of two strands")));
                }
                *slot = f;
            }
        }
        if partner.iter().flatten().any(|&e| e == unset) {
            return Err(TangleError::Invalid("strand set is not a perfect matching".into()));
        }
        for l in &j.loops {
            if let Some(p) = l.parent {
                if j.loops.get(p).map(|m| m.inner) != Some(l.face) {
                    return Err(TangleError::Invalid(format!("loop parent {p} does not enclose its face")));
                }
            }
        }
        let loops: Vec<FreeLoop> = j.loops.iter().map(|l| FreeLoop { outer: l.face, inner: l.inner }).collect();
        let region_count = j
            .embedding
            .corners
            .iter()
            .flatten()
            .chain(loops.iter().flat_map(|l| [&l.outer, &l.inner]))
            .max()
            .map_or(0, |m| m + 1);
        let raw = PlanarTangle {
            external: j.external,
            boxes: j.boxes.clone(),
            partner: partner.clone(),
            corner_region: j.embedding.corners.clone(),
            loops: loops.clone(),
            region_count,
        };
        raw.validate()?;
        if let Some(claimed) = &j.shading {
            let actual = raw.shading()?;
            let ok = claimed.len() == actual.len()
                && claimed.iter().zip(&actual).all(|(c, &b)| c == if b { "black" } else { "white" });
            if !ok {
                return Err(TangleError::Invalid("stored shading disagrees with the recomputed one".into()));
            }
        }
        PlanarTangle::from_parts(j.external, j.boxes.clone(), partner, j.embedding.corners.clone(), loops, region_count)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("tangle json serializes")
    }

    pub fn from_json_str(s: &str) -> Result<PlanarTangle, TangleError> {
        let j: TangleJson = serde_json::from_str(s).map_err(|e| TangleError::Parse(e.to_string()))?;
        PlanarTangle::from_json(&j)
    }
}
