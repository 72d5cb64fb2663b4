//! JSON interchange for models, divisors, flags and polytopes, plus OFF and
//! CSV export. All numbers travel as exact rational strings ("p/q" or "p");
//! floating point input is rejected.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::fansy::{CurvePoint, DivisorKey, FansyDivisor, Splitting, WeilDivisor};
use crate::flag::{Flag, FlagSpec};
use crate::linalg::{IVec, QVec};
use crate::poly::{Cone, Polyhedron};
use crate::rat::{format_rat, parse_rat, Int, Rat};

fn parse_point(s: &str) -> Result<CurvePoint> {
    if s == "inf" {
        Ok(CurvePoint::Infinity)
    } else {
        Ok(CurvePoint::Finite(parse_rat(s)?))
    }
}

fn point_string(p: &CurvePoint) -> String {
    p.to_string()
}

fn parse_qvec(v: &[String]) -> Result<QVec> {
    v.iter().map(|s| parse_rat(s)).collect()
}

fn qvec_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

fn parse_ivec(v: &[i64]) -> IVec {
    v.iter().map(|&x| Int::from(x)).collect()
}

fn ivec_i64(v: &[Int]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            use num::ToPrimitive;
            x.to_i64().ok_or_else(|| Error::Schema("integer too large for export".into()))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellDocument {
    pub vertices: Vec<Vec<String>>,
    #[serde(default)]
    pub rays: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SliceDocument {
    pub point: String,
    pub cells: Vec<CellDocument>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeilDocument {
    #[serde(default)]
    pub vertical: Vec<(String, Vec<String>, String)>,
    #[serde(default)]
    pub horizontal: Vec<(Vec<i64>, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PieceDocument {
    pub point: String,
    pub cell: usize,
    pub slope: Vec<String>,
    pub constant: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupportDocument {
    Weil(WeilDocument),
    Pieces(Vec<PieceDocument>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlagDocument {
    pub kind: String,
    /// rays of sigma_fix (maximal tail cone) for G1/G2/T2; tail of the cell for T1
    #[serde(default)]
    pub sigma_fix: Vec<Vec<i64>>,
    pub points: Vec<String>,
    /// a vertex identifying the distinguished cell (T1 only)
    #[serde(default)]
    pub cell_vertex: Option<Vec<String>>,
    pub ray_order: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelDocument {
    pub rank: usize,
    pub points: Vec<String>,
    pub slices: Vec<SliceDocument>,
    pub tailfan: Vec<Vec<Vec<i64>>>,
    pub marked: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support_function: Option<SupportDocument>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub flags: BTreeMap<String, FlagDocument>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FacetDocument {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolytopeDocument {
    pub dimension: isize,
    pub vertices: Vec<Vec<String>>,
    pub rays: Vec<Vec<i64>>,
    pub facets: Vec<FacetDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<String>,
}

/// Fan plus splitting data for the downgrade command; an optional toric
/// divisor is pushed through to a Weil block on the output model.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DowngradeDocument {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    pub f: Vec<Vec<i64>>,
    pub p: Vec<i64>,
    pub s: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<Vec<String>>,
}

pub struct ParsedModel {
    pub model: Arc<FansyDivisor>,
    pub support: Option<crate::support::SupportFn>,
    pub flags: BTreeMap<String, Flag>,
}

pub fn parse_model_str(data: &str) -> Result<ParsedModel> {
    let doc: ModelDocument =
        serde_json::from_str(data).map_err(|e| Error::Schema(e.to_string()))?;
    build_model(&doc)
}

pub fn build_model(doc: &ModelDocument) -> Result<ParsedModel> {
    let rank = doc.rank;
    let mut maximal = Vec::new();
    for rays in &doc.tailfan {
        let gens: Vec<IVec> = rays.iter().map(|r| parse_ivec(r)).collect();
        maximal.push(Cone::from_rays(rank, &gens)?);
    }
    let tailfan = Fan::new(rank, maximal);
    let mut marked: Vec<Cone> = Vec::new();
    for &i in &doc.marked {
        let c = tailfan
            .maximal
            .get(i)
            .cloned()
            .ok_or_else(|| Error::Schema(format!("marked index {i} out of range")))?;
        marked.push(c);
    }
    // upward-closed completion: faces get marked per the degree condition
    // only when listed; the document lists maximal marked cones and the
    // builder adds marked faces via the validation data
    let mut slices = BTreeMap::new();
    for s in &doc.slices {
        let p = parse_point(&s.point)?;
        let mut cells = Vec::new();
        for c in &s.cells {
            let verts: Vec<QVec> =
                c.vertices.iter().map(|v| parse_qvec(v)).collect::<Result<_>>()?;
            let rays: Vec<IVec> = c.rays.iter().map(|r| parse_ivec(r)).collect();
            cells.push(Polyhedron::from_generators(rank, &verts, &rays)?);
        }
        slices.insert(p, cells);
    }
    for p in &doc.points {
        let p = parse_point(p)?;
        if !slices.contains_key(&p) {
            // explicitly designated trivial slice
            slices.insert(p, tailfan.maximal.iter().map(|c| c.as_polyhedron()).collect());
        }
    }
    let mut model = FansyDivisor { rank, slices, tailfan, marked };
    // complete the markings downward using the degree criterion
    let mut extra: Vec<Cone> = Vec::new();
    for sigma in &model.tailfan.maximal.clone() {
        if !model.is_marked(sigma) {
            continue;
        }
        let deg = model.extract_pdivisor(sigma)?.degree()?;
        for tau in sigma.faces() {
            if tau == *sigma || model.is_marked(&tau) || extra.contains(&tau) {
                continue;
            }
            if !deg.empty && !deg.intersect(&tau.as_polyhedron()).map(|x| x.empty).unwrap_or(true)
            {
                extra.push(tau);
            }
        }
    }
    model.marked.extend(extra);
    let violations = model.validate();
    if !violations.is_empty() {
        return Err(Error::Validation(violations.join("; ")));
    }
    let model = Arc::new(model);
    let support = match &doc.support_function {
        None => None,
        Some(SupportDocument::Weil(w)) => {
            let mut c = WeilDivisor::new();
            for (p, v, coeff) in &w.vertical {
                c.insert(
                    DivisorKey::Vertical(parse_point(p)?, parse_qvec(v)?),
                    parse_rat(coeff)?,
                );
            }
            for (r, coeff) in &w.horizontal {
                c.insert(DivisorKey::Horizontal(parse_ivec(r)), parse_rat(coeff)?);
            }
            Some(crate::support::support_from_weil(&model, &c)?)
        }
        Some(SupportDocument::Pieces(pieces)) => {
            Some(support_from_pieces(&model, pieces)?)
        }
    };
    if let Some(h) = &support {
        let viol = h.validate();
        // rational support functions are allowed downstream, but the pieces
        // must at least reconstruct; surface honest inconsistencies
        let hard: Vec<&String> =
            viol.iter().filter(|v| v.contains("not affine") || v.contains("disagree")).collect();
        if !hard.is_empty() {
            return Err(Error::Validation(
                hard.into_iter().cloned().collect::<Vec<_>>().join("; "),
            ));
        }
    }
    let mut flags = BTreeMap::new();
    for (name, fd) in &doc.flags {
        flags.insert(name.clone(), build_flag(&model, fd)?);
    }
    Ok(ParsedModel { model, support, flags })
}

fn support_from_pieces(
    model: &Arc<FansyDivisor>,
    pieces: &[PieceDocument],
) -> Result<crate::support::SupportFn> {
    let mut h = crate::support::SupportFn::zero(model.clone());
    // slopes per maximal cone come from the pieces on cells with maximal tails
    for pd in pieces {
        let p = parse_point(&pd.point)?;
        let cells = model.slice_cells(&p);
        let cell = cells
            .get(pd.cell)
            .ok_or_else(|| Error::Schema(format!("cell index {} out of range", pd.cell)))?;
        let slope = parse_qvec(&pd.slope)?;
        let constant = parse_rat(&pd.constant)?;
        let tail = cell.tail_cone()?;
        if let Some(i) = model.tailfan.cone_index(&tail) {
            h.slopes[i] = slope.clone();
        }
        for v in &cell.vertices {
            let val = crate::linalg::dot(&slope, v) + &constant;
            h.vertex_values.insert((p.clone(), v.clone()), val);
        }
    }
    Ok(h)
}

pub fn build_flag(model: &Arc<FansyDivisor>, fd: &FlagDocument) -> Result<Flag> {
    let ray_order: Vec<IVec> = fd.ray_order.iter().map(|r| parse_ivec(r)).collect();
    let sigma = |rank: usize| -> Result<Cone> {
        let gens: Vec<IVec> = fd.sigma_fix.iter().map(|r| parse_ivec(r)).collect();
        Cone::from_rays(rank, &gens)
    };
    let pt = |i: usize| -> Result<CurvePoint> {
        fd.points
            .get(i)
            .ok_or_else(|| Error::Schema("missing flag point".into()))
            .and_then(|s| parse_point(s))
    };
    let spec = match fd.kind.as_str() {
        "G1" => FlagSpec::G1 { sigma_fix: sigma(model.rank)?, q: pt(0)?, ray_order },
        "G2" => FlagSpec::G2 { sigma_fix: sigma(model.rank)?, q: pt(0)?, ray_order },
        "T1" => {
            let vertex = fd
                .cell_vertex
                .as_ref()
                .ok_or_else(|| Error::Schema("T1 flag needs cell_vertex".into()))?;
            FlagSpec::T1 {
                point: pt(0)?,
                cell_vertex: parse_qvec(vertex)?,
                tail: sigma(model.rank)?,
                ray_order,
            }
        }
        "T2" => FlagSpec::T2 { sigma_fix: sigma(model.rank)?, p1: pt(0)?, p2: pt(1)?, ray_order },
        other => return Err(Error::Schema(format!("unknown flag kind {other:?}"))),
    };
    crate::flag::make_flag(model, spec)
}

pub fn model_document(model: &FansyDivisor, support: Option<&WeilDivisor>) -> Result<ModelDocument> {
    let mut slices = Vec::new();
    for (p, cells) in &model.slices {
        let mut cds = Vec::new();
        for c in cells {
            cds.push(CellDocument {
                vertices: c.vertices.iter().map(|v| qvec_strings(v)).collect(),
                rays: c.rays.iter().map(|r| ivec_i64(r)).collect::<Result<_>>()?,
            });
        }
        slices.push(SliceDocument { point: point_string(p), cells: cds });
    }
    let tailfan: Vec<Vec<Vec<i64>>> = model
        .tailfan
        .maximal
        .iter()
        .map(|c| c.rays.iter().map(|r| ivec_i64(r)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let marked: Vec<usize> = model
        .tailfan
        .maximal
        .iter()
        .enumerate()
        .filter(|(_, c)| model.is_marked(c))
        .map(|(i, _)| i)
        .collect();
    let support_function = match support {
        None => None,
        Some(c) => {
            let mut vertical = Vec::new();
            let mut horizontal = Vec::new();
            for (k, v) in c {
                match k {
                    DivisorKey::Vertical(p, vx) => vertical.push((
                        point_string(p),
                        qvec_strings(vx),
                        format_rat(v),
                    )),
                    DivisorKey::Horizontal(r) => {
                        horizontal.push((ivec_i64(r)?, format_rat(v)))
                    }
                }
            }
            Some(SupportDocument::Weil(WeilDocument { vertical, horizontal }))
        }
    };
    Ok(ModelDocument {
        rank: model.rank,
        points: model.slices.keys().map(point_string).collect(),
        slices,
        tailfan,
        marked,
        support_function,
        flags: BTreeMap::new(),
    })
}

pub fn polytope_document(p: &Polyhedron, with_volume: bool) -> Result<PolytopeDocument> {
    let volume = if with_volume && p.is_bounded() && !p.empty {
        Some(format_rat(&p.volume()?))
    } else {
        None
    };
    Ok(PolytopeDocument {
        dimension: p.dim(),
        vertices: p.vertices.iter().map(|v| qvec_strings(v)).collect(),
        rays: p.rays.iter().map(|r| ivec_i64(r)).collect::<Result<_>>()?,
        facets: p
            .facets
            .iter()
            .map(|f| FacetDocument { normal: qvec_strings(&f.normal), offset: format_rat(&f.offset) })
            .collect(),
        volume,
    })
}

pub fn parse_downgrade_str(data: &str) -> Result<(Fan, Splitting, Option<Vec<Rat>>)> {
    let doc: DowngradeDocument =
        serde_json::from_str(data).map_err(|e| Error::Schema(e.to_string()))?;
    let rays: Vec<IVec> = doc.rays.iter().map(|r| parse_ivec(r)).collect();
    let mut maximal = Vec::new();
    for cone in &doc.max_cones {
        let gens: Vec<IVec> = cone
            .iter()
            .map(|&i| {
                rays.get(i)
                    .cloned()
                    .ok_or_else(|| Error::Schema(format!("ray index {i} out of range")))
            })
            .collect::<Result<_>>()?;
        maximal.push(Cone::from_rays(doc.rank, &gens)?);
    }
    let fan = Fan::new(doc.rank, maximal);
    let split = Splitting {
        f: doc.f.iter().map(|c| parse_ivec(c)).collect(),
        proj: parse_ivec(&doc.p),
        s: doc.s.iter().map(|r| parse_ivec(r)).collect(),
    };
    let divisor = match &doc.divisor {
        None => None,
        Some(list) => {
            let coeffs: Vec<Rat> = list.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?;
            if coeffs.len() != fan.rays().len() {
                return Err(Error::Schema(format!(
                    "divisor needs {} coefficients (fan rays in sorted order), got {}",
                    fan.rays().len(),
                    coeffs.len()
                )));
            }
            Some(coeffs)
        }
    };
    Ok((fan, split, divisor))
}

/// OFF export of a bounded polytope of dimension <= 3. Exact coordinates are
/// written as decimal strings when the denominator allows it and carried in a
/// comment line otherwise; `embed` pads lower-dimensional input with zeros.
pub fn export_off(p: &Polyhedron, embed: bool) -> Result<String> {
    if p.empty || !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    if p.rank > 3 {
        return Err(Error::DimensionTooHigh);
    }
    let p = if p.rank < 3 {
        if !embed {
            return Err(Error::DimensionTooHigh);
        }
        let verts: Vec<QVec> = p
            .vertices
            .iter()
            .map(|v| {
                let mut w = v.clone();
                while w.len() < 3 {
                    w.push(Rat::zero());
                }
                w
            })
            .collect();
        Polyhedron::from_vertices(3, &verts)?
    } else {
        p.clone()
    };
    let mut out = String::from("OFF\n");
    // faces: facet vertex-index lists in deterministic order; a flat polytope
    // is emitted as a single polygon
    let faces: Vec<Vec<usize>> = if p.dim() == 2 {
        let plane = p
            .affine_equations
            .first()
            .cloned()
            .unwrap_or(crate::poly::Facet { normal: qvec_from(&[0, 0, 1]), offset: Rat::zero() });
        let all: Vec<usize> = (0..p.vertices.len()).collect();
        vec![order_face(&p, &all, &plane)]
    } else {
        p.facets
            .iter()
            .map(|f| {
                let mut on: Vec<usize> = p
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| crate::linalg::dot(&f.normal, v) == f.offset)
                    .map(|(i, _)| i)
                    .collect();
                // order around the facet: sort by angle in the facet plane
                if on.len() > 3 {
                    on = order_face(&p, &on, f);
                }
                on
            })
            .filter(|on| on.len() >= 3)
            .collect()
    };
    out.push_str(&format!("{} {} 0\n", p.vertices.len(), faces.len()));
    for (i, v) in p.vertices.iter().enumerate() {
        let dec: Vec<String> = v.iter().map(decimal_string).collect();
        let exact: Vec<String> = v.iter().map(format_rat).collect();
        out.push_str(&format!(
            "{} {} {} # vertex {} = ({})\n",
            dec[0],
            dec[1],
            dec[2],
            i,
            exact.join(", ")
        ));
    }
    for face in faces {
        let idx: Vec<String> = face.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("{} {}\n", face.len(), idx.join(" ")));
    }
    Ok(out)
}

fn order_face(p: &Polyhedron, on: &[usize], f: &crate::poly::Facet) -> Vec<usize> {
    // centroid of the face
    let n = Rat::from_integer(Int::from(on.len() as i64));
    let mut c = vec![Rat::zero(); 3];
    for &i in on {
        c = crate::linalg::add(&c, &p.vertices[i]);
    }
    let c: QVec = c.iter().map(|x| x / &n).collect();
    // two spanning directions in the face plane
    let d0 = crate::linalg::sub(&p.vertices[on[0]], &c);
    let normal = &f.normal;
    // d1 = normal x d0
    let d1 = vec![
        &normal[1] * &d0[2] - &normal[2] * &d0[1],
        &normal[2] * &d0[0] - &normal[0] * &d0[2],
        &normal[0] * &d0[1] - &normal[1] * &d0[0],
    ];
    let mut idx = on.to_vec();
    idx.sort_by(|&a, &b| {
        let va = crate::linalg::sub(&p.vertices[a], &c);
        let vb = crate::linalg::sub(&p.vertices[b], &c);
        let key = |v: &QVec| {
            let x = crate::linalg::dot(v, &d0);
            let y = crate::linalg::dot(v, &d1);
            (y.is_negative(), x.clone(), y)
        };
        let (ha, xa, ya) = key(&va);
        let (hb, xb, yb) = key(&vb);
        if ha != hb {
            return ha.cmp(&hb);
        }
        // compare by cross product within the half-plane
        let cross = &xa * &yb - &ya * &xb;
        if cross.is_positive() {
            std::cmp::Ordering::Less
        } else if cross.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    idx
}

/// Exact decimal expansion when the denominator is 2^a 5^b, else a quotient
/// rendered with enough digits plus the exactness left to the comment.
fn decimal_string(r: &Rat) -> String {
    let mut den = r.denom().clone();
    let two = Int::from(2);
    let five = Int::from(5);
    let mut pow = 0u32;
    while (&den % &two).is_zero() {
        den /= &two;
        pow += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        pow += 1;
    }
    if den == Int::from(1) {
        // terminating decimal
        let digits = pow.max(1) as usize;
        let scale = Int::from(10).pow(digits as u32);
        let scaled = (r * Rat::from_integer(scale.clone())).to_integer();
        let neg = scaled.is_negative();
        let abs = scaled.abs().to_string();
        let pad = if abs.len() <= digits { format!("{}{}", "0".repeat(digits + 1 - abs.len()), abs) } else { abs };
        let (int_part, frac) = pad.split_at(pad.len() - digits);
        let s = format!("{int_part}.{frac}");
        if neg {
            format!("-{s}")
        } else {
            s
        }
    } else {
        // non-terminating: 12 digits, exact value lives in the comment
        let scale = Int::from(10).pow(12);
        let scaled = (r * Rat::from_integer(scale)).to_integer();
        let neg = scaled.is_negative();
        let abs = scaled.abs().to_string();
        let pad =
            if abs.len() <= 12 { format!("{}{}", "0".repeat(13 - abs.len()), abs) } else { abs };
        let (int_part, frac) = pad.split_at(pad.len() - 12);
        let s = format!("{int_part}.{frac}");
        if neg {
            format!("-{s}")
        } else {
            s
        }
    }
}

/// CSV export: one vertex per line.
pub fn export_csv(p: &Polyhedron) -> String {
    let mut out = String::new();
    for v in &p.vertices {
        out.push_str(&qvec_strings(v).join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qvec;
    use crate::rat::rat;

    #[test]
    fn reject_floats() {
        assert!(parse_rat("0.5").is_err());
        let json = r#"{
            "rank": 1, "points": ["0"], "slices": [], "tailfan": [[[1]],[[-1]]],
            "marked": [],
            "support_function": {"weil": {"vertical": [["0", ["0.5"], "1"]], "horizontal": []}}
        }"#;
        assert!(matches!(parse_model_str(json), Err(Error::Schema(_))));
        // a JSON float where a string is expected is a schema error too
        let json = r#"{"rank": 1, "points": [0.5], "slices": [], "tailfan": [[[1]],[[-1]]], "marked": []}"#;
        assert!(matches!(parse_model_str(json), Err(Error::Schema(_))));
    }

    #[test]
    fn roundtrip_hirzebruch() {
        let m = crate::zoo::hirzebruch(2);
        let c = crate::zoo::hirzebruch_ample(2);
        let doc = model_document(&m, Some(&c)).unwrap();
        let text = serde_json::to_string_pretty(&doc).unwrap();
        let parsed = parse_model_str(&text).unwrap();
        assert_eq!(parsed.model.vertex_set(), m.vertex_set());
        assert_eq!(parsed.model.marked.len(), m.marked.len());
        let h = parsed.support.unwrap();
        assert_eq!(h.weil(), c);
    }

    #[test]
    fn off_export() {
        let t = Polyhedron::from_vertices(
            3,
            &[qvec(&[0, 0, 0]), qvec(&[3, 0, 0]), qvec(&[0, 3, 0]), qvec(&[0, 0, 6])],
        )
        .unwrap();
        let off = export_off(&t, false).unwrap();
        assert!(off.starts_with("OFF\n4 4 0\n"));
        // square must be rejected without --embed, accepted with it
        let sq = Polyhedron::from_vertices(
            2,
            &[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[1, 1]), qvec(&[0, 1])],
        )
        .unwrap();
        assert!(matches!(export_off(&sq, false), Err(Error::DimensionTooHigh)));
        let off = export_off(&sq, true).unwrap();
        assert!(off.contains("4 1 0"));
        // deterministic output
        assert_eq!(export_off(&t, false).unwrap(), export_off(&t, false).unwrap());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat(3)), "3.0");
        assert_eq!(decimal_string(&crate::rat::ratio(1, 2)), "0.5");
        assert_eq!(decimal_string(&crate::rat::ratio(-3, 4)), "-0.75");
        assert!(decimal_string(&crate::rat::ratio(1, 3)).starts_with("0.3333"));
    }
}

fn qvec_from(a: &[i64]) -> QVec {
    a.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}
