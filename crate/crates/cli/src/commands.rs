//! Subcommand implementations. Each returns a JSON report; ordering inside
//! reports is canonical so that output does not depend on thread count.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use num_traits::Zero;
use parzono_core::e6::{build_e6, reproduce_table2, TABLE1, TABLE2, TABLE3_E6};
use parzono_core::exact_core::{format_rational, QMatrix, QVector};
use parzono_core::polytope::common_denominator;
use parzono_core::freedom::free_lines;
use parzono_core::lattice_core::Lattice;
use parzono_core::matroid::{self, UnimodularSystem};
use parzono_core::symmetry::{gram_automorphisms, indices_of, mask_of};
use parzono_core::voronoi::{
    belt_normal_pairs, build_voronoi, delaunay_face_counts, delaunay_polytope, CellType, VoronoiPolytope,
};
use parzono_core::zonosum::{free_structure, integral_direction, subset_rank, venkov_check, Witness};
use serde_json::{json, Value};

use crate::formats::{rational_strings, Basis, VectorSetFile};

pub fn lattice_info(name: &str, lat: &Lattice) -> Value {
    let cosets: Vec<Value> = lat
        .coset_minima()
        .iter()
        .map(|c| {
            json!({
                "class": c.rep.iter().map(|b| b.to_string()).collect::<String>(),
                "min_norm": format_rational(&c.min_norm),
                "minima": c.minima.len(),
                "simple": c.simple,
            })
        })
        .collect();
    let min_norm = lat.coset_minima().iter().map(|c| c.min_norm.clone()).min();
    json!({
        "name": name,
        "dim": lat.dim(),
        "det": format_rational(&lat.det()),
        "min_norm": min_norm.map(|m| format_rational(&m)),
        "relevant_vectors": lat.relevant_vectors().len(),
        "cosets": cosets,
    })
}

fn f_vector(v: &VoronoiPolytope) -> Vec<usize> {
    let faces = v.poly.faces(0);
    let mut f: Vec<usize> = faces.iter().map(|l| l.len()).collect();
    f.truncate(v.dim());
    f
}

pub fn voronoi_build(name: &str, lat: &Lattice) -> Value {
    let v = build_voronoi(lat);
    json!({
        "name": name,
        "dim": v.dim(),
        "vertices": v.num_vertices(),
        "facets": v.num_facets(),
        "facet_normals": v.facet_normals,
        "vertex_coordinates": v.vertices().iter().map(|x| rational_strings(x)).collect::<Vec<_>>(),
    })
}

pub fn voronoi_belts(name: &str, lat: &Lattice) -> Value {
    let v = build_voronoi(lat);
    let belts = v.belts();
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    let mut list = Vec::new();
    for b in &belts {
        *hist.entry(b.length).or_default() += 1;
        list.push(json!({ "length": b.length, "normals": belt_normal_pairs(&v, b) }));
    }
    json!({ "name": name, "belts": belts.len(), "histogram": hist, "list": list })
}

fn cell_name(t: CellType) -> &'static str {
    match t {
        CellType::Point => "point",
        CellType::Segment => "segment",
        CellType::Triangle => "triangle",
        CellType::Tetrahedron => "tetrahedron",
        CellType::Octahedron => "octahedron",
        CellType::Pyramid4 => "pyramid",
        CellType::Prism3 => "prism",
        CellType::Cube => "cube",
        CellType::Other => "other",
    }
}

pub fn voronoi_faces(name: &str, lat: &Lattice, dual_cells: bool) -> Value {
    let v = build_voronoi(lat);
    let mut report = json!({ "name": name, "dim": v.dim(), "f_vector": f_vector(&v) });
    if dual_cells && v.dim() >= 3 {
        let d = v.dim() - 3;
        let mut census: BTreeMap<&str, usize> = BTreeMap::new();
        for f in v.face_lattice(d).into_iter().filter(|f| f.face.dim == d) {
            let c = v.dual_cell(&f.face.vertices).expect("face of the cell");
            *census.entry(cell_name(c.combinatorial_type)).or_default() += 1;
        }
        report["codim3_dual_cells"] = json!(census);
    }
    report
}

fn lines_json(lines: &[Vec<i64>]) -> Vec<Vec<String>> {
    lines.iter().map(|l| l.iter().map(|x| x.to_string()).collect()).collect()
}

pub fn free_enumerate(lat: &Lattice) -> Value {
    let v = build_voronoi(lat);
    let r = free_lines(&v);
    json!({
        "lines": lines_json(&r.lines),
        "finitely_free": r.finitely_free,
        "residual_subspaces": r.residual_subspaces.iter().map(|s| lines_json(s)).collect::<Vec<_>>(),
    })
}

fn witness_json(w: &Witness) -> Value {
    match w {
        Witness::NotFree(i) => json!({ "kind": "not_free", "generator": i }),
        Witness::Belt { plane, length } => json!({ "kind": "belt", "plane": plane, "length": length }),
        Witness::Facet(n) => json!({ "kind": "facet", "normal": n }),
    }
}

/// Returns the report and whether the sum is a parallelotope.
pub fn zonosum_check(lat: &Lattice, gens: &VectorSetFile) -> Result<(Value, bool)> {
    let rows = gens.dual_rows(lat)?;
    if let Some(i) = rows.iter().position(|r| r.iter().all(|x| x.is_zero())) {
        bail!("vectors[{i}]: zero generator");
    }
    let dirs: Vec<Vec<i64>> = rows.iter().map(|r| integral_direction(r)).collect();
    let v = build_voronoi(lat);
    let r = venkov_check(&v, &dirs);
    let report = json!({
        "is_parallelotope": r.is_parallelotope,
        "facet_count": r.facet_count,
        "belt_histogram": r.belt_histogram,
        "witness": r.witness.as_ref().map(witness_json),
    });
    Ok((report, r.is_parallelotope))
}

fn orbit_list(fs: &parzono_core::zonosum::FreeStructure, masks: &[u128]) -> Vec<Value> {
    let mut masks = masks.to_vec();
    masks.sort_by_key(|&m| (m.count_ones(), indices_of(m)));
    masks
        .iter()
        .map(|&m| {
            json!({
                "lines": indices_of(m),
                "size": m.count_ones(),
                "dim": subset_rank(&fs.lines, m),
                "stabilizer": fs.group.stabilizer_order(m).to_string(),
            })
        })
        .collect()
}

pub fn zonosum_enumerate(name: &str, lat: &Lattice, max_size: Option<usize>) -> Result<Value> {
    let v = build_voronoi(lat);
    let fs = free_structure(&v, max_size)?;
    let e = &fs.enumeration;
    Ok(json!({
        "name": name,
        "free_lines": lines_json(&fs.lines),
        "group_order": fs.group.order().to_string(),
        "max_size": max_size,
        "feasible_orbits_by_size": e.feasible.iter().map(|l| l.len()).collect::<Vec<_>>(),
        "minimal_forbidden": orbit_list(&fs, &e.minimal_forbidden),
        "maximal_feasible": orbit_list(&fs, &e.maximal_feasible),
        "row": {
            "free_lines": fs.row.free_lines,
            "min_forbidden_orbits": fs.row.min_forbidden_orbits,
            "max_feasible_orbits": fs.row.max_feasible_orbits,
            "dim_max": fs.row.dim_max,
            "size_max": fs.row.size_max,
        },
    }))
}

/// Integer vectors after clearing one common denominator.
fn integral_rows(rows: &[QVector]) -> Result<Vec<Vec<i64>>> {
    let d = parzono_core::exact_core::Rational::from_integer(common_denominator(rows));
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .map(|x| {
                    let y = (x * &d).to_integer();
                    i64::try_from(y).map_err(|_| anyhow::anyhow!("vectors[{i}]: entry too large"))
                })
                .collect()
        })
        .collect()
}

pub fn matroid_classify(vs: &VectorSetFile, max_vertices: usize) -> Result<Value> {
    let rows = integral_rows(&vs.rows()?)?;
    if rows.len() > 64 {
        bail!("vectors: at most 64 vectors are supported");
    }
    if let Some(i) = rows.iter().position(|r| r.iter().all(|&x| x == 0)) {
        bail!("vectors[{i}]: zero vector");
    }
    if max_vertices > 10 {
        bail!("--max-vertices: at most 10");
    }
    let sys = UnimodularSystem::new(rows);
    let unimodular = matroid::is_unimodular(&sys.vectors);
    let g = matroid::try_graphic(&sys, max_vertices);
    let c = matroid::try_cographic(&sys, max_vertices);
    let label = matroid::label_of(&g, &c);
    let graph = g.graph().map(|g| json!({ "vertices": g.vertices, "edges": g.edges }));
    let cograph = c.graph().map(|g| json!({ "vertices": g.vertices, "edges": g.edges }));
    Ok(json!({
        "rank": sys.rank,
        "circuits": sys.circuits.len(),
        "circuit_sizes": matroid::circuit_census(&sys.circuits).into_iter().collect::<BTreeMap<_, _>>(),
        "unimodular": unimodular,
        "label": label.as_str(),
        "graph": graph,
        "cograph": cograph,
    }))
}

/// Orbits of `subsets` under the permutations of the vectors preserving
/// all products; with `lines`, vectors are taken up to sign.
pub fn symmetry_orbits(vs: &VectorSetFile, lat: Option<&Lattice>, subsets: &[Vec<usize>], lines: bool) -> Result<Value> {
    let rows = vs.rows()?;
    let n = rows.first().map_or(0, |r| r.len());
    if rows.len() > 128 {
        bail!("vectors: at most 128 vectors are supported");
    }
    let gram = match (lat, vs.basis) {
        (None, _) => QMatrix::identity(n),
        (Some(l), _) if l.dim() != n => bail!("vectors: dimension differs from the lattice dimension {}", l.dim()),
        (Some(l), Basis::Primal) => l.gram().clone(),
        (Some(l), Basis::Dual) => l.gram_inverse().clone(),
    };
    for (i, s) in subsets.iter().enumerate() {
        if let Some(x) = s.iter().find(|&&x| x >= rows.len()) {
            bail!("subsets[{i}]: index {x} out of range");
        }
    }
    let g = if lines {
        let signed: Vec<QVector> = rows.iter().flat_map(|r| [r.clone(), r.iter().map(|x| -x).collect()]).collect();
        gram_automorphisms(&signed, &gram, None).induced(rows.len(), |i| i / 2, |l| 2 * l)
    } else {
        gram_automorphisms(&rows, &gram, None)
    };
    let mut classes: BTreeMap<Vec<usize>, (u128, Vec<usize>)> = BTreeMap::new();
    for (i, s) in subsets.iter().enumerate() {
        let (rep, stab) = g.canonical_image(mask_of(s));
        classes.entry(indices_of(rep)).or_insert((stab, Vec::new())).1.push(i);
    }
    let orbits: Vec<Value> = classes
        .into_iter()
        .map(|(rep, (stab, members))| {
            json!({
                "representative": rep,
                "stabilizer": stab.to_string(),
                "orbit_size": (g.order() / stab).to_string(),
                "members": members,
            })
        })
        .collect();
    Ok(json!({ "degree": rows.len(), "group_order": g.order().to_string(), "orbits": orbits }))
}

/// Tables of the E6 case study and their comparison with the reference
/// values. Returns the report and whether everything matched.
pub fn e6_tables(golden: &Value) -> Result<(Value, bool)> {
    let (md, lat, _) = build_e6();
    let v = build_voronoi(&lat);
    let d = delaunay_face_counts(&delaunay_polytope(&v, 0));
    let table1 = json!({
        "f_vector": d.counts,
        "facets_by_vertices": d.facet_sizes,
        "ridges_by_facet_pair": d.ridge_split.iter().map(|((a, b), n)| (format!("{a}+{b}"), *n)).collect::<BTreeMap<_, _>>(),
    });
    let fs = free_structure(&v, None)?;
    let rows: Vec<Value> = reproduce_table2(&md, &fs)
        .into_iter()
        .map(|(nr, r)| {
            json!({
                "nr": nr,
                "size": r.size,
                "dim": r.dim,
                "stab": r.stab.to_string(),
                "status": r.status(),
                "label": r.label.as_str(),
                "unimodular": r.unimodular,
                "vectors": r.labels,
            })
        })
        .collect();
    let row = &fs.row;
    let table3 = json!({
        "free_lines": row.free_lines,
        "min_forbidden_orbits": row.min_forbidden_orbits,
        "max_feasible_orbits": row.max_feasible_orbits,
        "dim_max": row.dim_max,
        "size_max": row.size_max,
    });
    let mut mismatches = Vec::new();
    if table1["f_vector"] != golden["table1"]["f_vector"] {
        mismatches.push("table1.f_vector".to_string());
    }
    if table1["facets_by_vertices"] != golden["table1"]["facets_by_vertices"] {
        mismatches.push("table1.facets_by_vertices".to_string());
    }
    if table1["ridges_by_facet_pair"] != golden["table1"]["ridges_by_facet_pair"] {
        mismatches.push("table1.ridges_by_facet_pair".to_string());
    }
    let want2 = golden["table2"].as_array().cloned().unwrap_or_default();
    if want2.len() != rows.len() {
        mismatches.push("table2.rows".to_string());
    }
    for (got, want) in rows.iter().zip(&want2) {
        let same = ["nr", "size", "dim", "stab"].iter().all(|k| got[*k] == want[*k]);
        let status_ok = match want["status"].as_str() {
            Some("graphic") => matches!(got["label"].as_str(), Some("graphic" | "graphic+cographic")),
            Some("cographic") => matches!(got["label"].as_str(), Some("cographic" | "graphic+cographic")),
            Some(s) => got["status"].as_str() == Some(s),
            None => false,
        };
        if !same || !status_ok || got["unimodular"] != json!(true) {
            mismatches.push(format!("table2.row{}", want["nr"]));
        }
    }
    if table3 != golden["table3_e6"] {
        mismatches.push("table3_e6".to_string());
    }
    let ok = mismatches.is_empty();
    Ok((json!({ "table1": table1, "table2": rows, "table3_e6": table3, "mismatches": mismatches }), ok))
}

/// The reference values, as shipped with the tool.
pub fn e6_golden() -> Value {
    serde_json::from_str(include_str!("../golden/e6_tables.json")).expect("shipped golden file")
}

/// Reference values rebuilt from the constants of the library; used to
/// check the shipped file.
pub fn e6_golden_from_constants() -> Value {
    json!({
        "table1": {
            "f_vector": TABLE1,
            "facets_by_vertices": { "6": 72, "10": 27 },
            "ridges_by_facet_pair": { "6+10": 432, "10+10": 216 },
        },
        "table2": TABLE2.iter().map(|(nr, s, d, st, status)| json!({
            "nr": nr, "size": s, "dim": d, "stab": st.to_string(), "status": status,
        })).collect::<Vec<_>>(),
        "table3_e6": {
            "free_lines": TABLE3_E6.0,
            "min_forbidden_orbits": TABLE3_E6.1,
            "max_feasible_orbits": TABLE3_E6.2,
            "dim_max": TABLE3_E6.3,
            "size_max": TABLE3_E6.4,
        },
    })
}

/// Aligned text rendering of an `e6 tables` report.
pub fn e6_tables_text(report: &Value) -> String {
    let mut out = String::new();
    let t1 = &report["table1"];
    out.push_str("Schlafli polytope faces by dimension\n");
    out.push_str(&format!("  {}\n", t1["f_vector"]));
    out.push_str(&format!("  facets by vertex count {}\n", t1["facets_by_vertices"]));
    out.push_str(&format!("  ridges by facet pair   {}\n\n", t1["ridges_by_facet_pair"]));
    out.push_str("Maximal feasible subsets of M\n");
    out.push_str(&format!("  {:>3} {:>4} {:>4} {:>5}  {:<10} {:<18}\n", "nr", "|U|", "dim", "stab", "status", "label"));
    for r in report["table2"].as_array().into_iter().flatten() {
        out.push_str(&format!(
            "  {:>3} {:>4} {:>4} {:>5}  {:<10} {:<18}\n",
            r["nr"].as_u64().map_or("-".to_string(), |x| x.to_string()),
            r["size"].to_string(),
            r["dim"].to_string(),
            r["stab"].as_str().unwrap_or(""),
            r["status"].as_str().unwrap_or(""),
            r["label"].as_str().unwrap_or(""),
        ));
    }
    let t3 = &report["table3_e6"];
    out.push_str(&format!(
        "\nE6 free structure: |F| = {}, min forbidden orbits = {}, max feasible orbits = {}, dim max = {}, S max = {}\n",
        t3["free_lines"], t3["min_forbidden_orbits"], t3["max_feasible_orbits"], t3["dim_max"], t3["size_max"]
    ));
    let mm = report["mismatches"].as_array().map_or(0, |m| m.len());
    out.push_str(&format!("mismatches: {mm}\n"));
    out
}
