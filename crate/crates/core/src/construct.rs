//! Recursive constructions: inflation by a transversal design, weighting a
//! master GDD, filling groups, and truncating groups.
//!
//! None of these verify their output; callers (normally the recipe runner)
//! re-verify every object they produce.

use smallvec::SmallVec;

use crate::error::ConstructError;
use crate::model::{
    DesignObject, DesignParams, DirectedDesign, FillSpec, GroupType, GroupedDesign, InflationSpec, OrderedBlock,
    Point,
};
use crate::trade::BoundCertificate;
use crate::verify::check_td;

/// `(group, index within the sorted cell)` for every point.
fn cell_positions(g: &GroupedDesign) -> Vec<(usize, u32)> {
    let mut pos = vec![(0, 0); g.design.params.v as usize];
    for (gi, cell) in g.groups().iter().enumerate() {
        for (i, &p) in cell.iter().enumerate() {
            pos[p as usize] = (gi, i as u32);
        }
    }
    pos
}

/// Replaces every point `x` by `x·α + i` for `i < α`.
///
/// Each master block `(p_0, ..., p_{k-1})` and TD block meeting group `g` in
/// its `i_g`-th point yield `(p_0·α + i_0, ..., p_{k-1}·α + i_{k-1})`, so TD
/// group `g` follows position `g` of the master tuple. Output groups are the
/// inflated master groups, or one group per master point for a plain DD.
pub fn inflate_by_td(
    master: &DesignObject,
    alpha: InflationSpec,
    td: &GroupedDesign,
) -> Result<GroupedDesign, ConstructError> {
    let a = alpha.alpha();
    if !master.is_directed() {
        return Err(ConstructError::InvalidInput("inflation master must be directed".into()));
    }
    let d = master.design();
    let k = d.params.k as usize;
    let td_type = td.group_type();
    if td.groups().len() != k || td_type != GroupType::uniform(a, k as u32) {
        return Err(ConstructError::ArityMismatch(format!(
            "master has blocks of size {k}, TD has group type {td_type}, weight {a}"
        )));
    }
    if let Some(i) = d.blocks.iter().position(|b| b.len() != k) {
        return Err(ConstructError::ArityMismatch(format!("master block {i} has {} points", d.blocks[i].len())));
    }
    if !check_td(td).passed {
        return Err(ConstructError::TdNotVerified);
    }
    let pos = cell_positions(td);
    // For each TD block, the index taken in group g.
    let rows: Vec<SmallVec<[u32; 8]>> = td
        .design
        .blocks
        .iter()
        .map(|tb| {
            let mut row: SmallVec<[u32; 8]> = SmallVec::from_elem(0, k);
            for &p in tb.points() {
                let (g, i) = pos[p as usize];
                row[g] = i;
            }
            row
        })
        .collect();
    let mut blocks = Vec::with_capacity(d.blocks.len() * rows.len());
    for b in &d.blocks {
        for row in &rows {
            let pts = b.points().iter().zip(row).map(|(&p, &i)| p * a + i).collect();
            blocks.push(OrderedBlock::from_distinct(pts));
        }
    }
    let groups: Vec<Vec<Point>> = match master {
        DesignObject::Grouped(g) => {
            g.groups().iter().map(|cell| cell.iter().flat_map(|&x| x * a..(x + 1) * a).collect()).collect()
        }
        DesignObject::Plain(_) => (0..d.params.v).map(|x| (x * a..(x + 1) * a).collect()).collect(),
    };
    let params = DesignParams::new(d.params.v * a, d.params.k, d.params.lambda)?;
    Ok(GroupedDesign::new(DirectedDesign::new(params, blocks)?, groups, true)?)
}

/// Point weights for [`weight_and_replace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightAssignment {
    weights: Vec<u32>,
}

impl WeightAssignment {
    pub fn new(weights: Vec<u32>) -> Self {
        WeightAssignment { weights }
    }

    pub fn uniform(v: u32, w: u32) -> Self {
        WeightAssignment { weights: vec![w; v as usize] }
    }

    pub fn weight(&self, x: Point) -> u32 {
        self.weights[x as usize]
    }
}

/// Gives point `x` the labels `offset[x] .. offset[x] + w(x)` and replaces
/// each master block by a copy of the ingredient whose group type is the
/// block's weight multiset.
///
/// Ingredient groups are matched to the block's points in tuple order (each
/// point takes the first unused ingredient group of its weight); the `i`-th
/// point of a matched cell becomes label `offset[x] + i`. The output index
/// is `λ_master · λ_ingredient`.
pub fn weight_and_replace(
    master: &GroupedDesign,
    weights: &WeightAssignment,
    ingredients: &[GroupedDesign],
) -> Result<GroupedDesign, ConstructError> {
    let v = master.design.params.v as usize;
    if weights.weights.len() != v {
        return Err(ConstructError::InvalidInput(format!("{} weights for {v} points", weights.weights.len())));
    }
    let first = ingredients.first().ok_or_else(|| ConstructError::MissingIngredient("any".into()))?;
    let (k, lambda) = (first.design.params.k, first.design.params.lambda);
    if let Some(bad) = ingredients.iter().find(|g| g.design.params.k != k || g.design.params.lambda != lambda) {
        return Err(ConstructError::AlignmentError(format!(
            "ingredients disagree on block size or index ({} vs {})",
            bad.design.params.k, k
        )));
    }
    if let Some(bad) = ingredients.iter().position(|g| !g.directed) {
        return Err(ConstructError::AlignmentError(format!("ingredient {bad} is not directed")));
    }
    let mut offset = Vec::with_capacity(v + 1);
    offset.push(0u32);
    for x in 0..v {
        offset.push(offset[x] + weights.weights[x]);
    }
    let total = offset[v];
    let types: Vec<GroupType> = ingredients.iter().map(|g| g.group_type()).collect();
    let positions: Vec<Vec<(usize, u32)>> = ingredients.iter().map(cell_positions).collect();

    let mut blocks = Vec::new();
    for (bi, b) in master.design.blocks.iter().enumerate() {
        let pts: Vec<Point> = b.points().iter().copied().filter(|&x| weights.weight(x) > 0).collect();
        let block_type = GroupType::from_sizes(pts.iter().map(|&x| weights.weight(x)));
        let which = types.iter().position(|t| *t == block_type).ok_or_else(|| {
            ConstructError::MissingIngredient(format!("{block_type} (master block {bi})"))
        })?;
        let ing = &ingredients[which];
        // owner[g] = master point assigned to ingredient group g.
        let mut owner: Vec<Option<Point>> = vec![None; ing.groups().len()];
        for &x in &pts {
            let slot = (0..owner.len())
                .find(|&g| owner[g].is_none() && ing.groups()[g].len() as u32 == weights.weight(x))
                .ok_or_else(|| ConstructError::AlignmentError(format!("no group left for point {x} of block {bi}")))?;
            owner[slot] = Some(x);
        }
        for ib in &ing.design.blocks {
            let mapped = ib
                .points()
                .iter()
                .map(|&p| {
                    let (g, i) = positions[which][p as usize];
                    offset[owner[g].expect("every ingredient group is owned") as usize] + i
                })
                .collect();
            blocks.push(OrderedBlock::from_distinct(mapped));
        }
    }
    let groups: Vec<Vec<Point>> = master
        .groups()
        .iter()
        .map(|cell| cell.iter().flat_map(|&x| offset[x as usize]..offset[x as usize + 1]).collect::<Vec<_>>())
        .filter(|c| !c.is_empty())
        .collect();
    let params = DesignParams::new(total, k, master.design.params.lambda * lambda)?;
    Ok(GroupedDesign::new(DirectedDesign::new(params, blocks)?, groups, true)?)
}

/// Where each filler copy landed in a filled design.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillPlacement {
    pub group: usize,
    pub filler: usize,
    /// Index of the copy's first block in the output.
    pub block_offset: usize,
    /// `labels[p]` = output label of filler point `p`.
    pub labels: Vec<Point>,
}

/// Output of [`fill_groups_placed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilledDesign {
    pub design: DirectedDesign,
    pub placements: Vec<FillPlacement>,
}

/// Fills every group (plus the shared point `∞ = v − 1` when `η = 1`) with a
/// copy of the filler on `|G| + η` points. See [`fill_groups_placed`].
pub fn fill_groups(g: &GroupedDesign, eta: FillSpec, fillers: &[DirectedDesign]) -> Result<DirectedDesign, ConstructError> {
    fill_groups_placed(g, eta, fillers).map(|f| f.design)
}

/// Filler point `p < |G|` becomes the `p`-th point of the sorted group and
/// point `|G|` (when `η = 1`) becomes `∞`. The output lists the DGDD blocks
/// first, then one filler copy per group in group order.
pub fn fill_groups_placed(g: &GroupedDesign, eta: FillSpec, fillers: &[DirectedDesign]) -> Result<FilledDesign, ConstructError> {
    if !g.directed {
        return Err(ConstructError::InvalidInput("only directed GDDs can be filled".into()));
    }
    let p = g.design.params;
    let e = eta.eta();
    let v = p.v + e;
    let inf = v - 1;
    let mut blocks = g.design.blocks.clone();
    let mut placements = Vec::with_capacity(g.groups().len());
    for (gi, cell) in g.groups().iter().enumerate() {
        let need = cell.len() as u32 + e;
        let fi = fillers.iter().position(|f| f.params.v == need).ok_or(ConstructError::MissingFiller(need))?;
        let f = &fillers[fi];
        if f.params.k != p.k || f.params.lambda != p.lambda {
            return Err(ConstructError::SizeMismatch(format!(
                "filler on {need} points has k={} lambda={}, design has k={} lambda={}",
                f.params.k, f.params.lambda, p.k, p.lambda
            )));
        }
        let labels: Vec<Point> = cell.iter().copied().chain((e == 1).then_some(inf)).collect();
        placements.push(FillPlacement { group: gi, filler: fi, block_offset: blocks.len(), labels: labels.clone() });
        blocks.extend(f.blocks.iter().map(|b| b.map(|q| labels[q as usize])));
    }
    let params = DesignParams::new(v, p.k, p.lambda)?;
    Ok(FilledDesign { design: DirectedDesign::new(params, blocks)?, placements })
}

/// Union of the master certificate and every filler certificate, moved to
/// the filled design's block indices and point labels.
pub fn compose_fill_certificate(
    filled: &FilledDesign,
    master: &BoundCertificate,
    fillers: &[BoundCertificate],
) -> BoundCertificate {
    let mut cert = master.clone();
    cert.total_blocks = filled.design.blocks.len() as u64;
    for pl in &filled.placements {
        let moved = fillers[pl.filler].relabel_points(|q| pl.labels[q as usize]);
        cert.merge(&moved, pl.block_offset);
    }
    cert
}

/// Removes the `count` highest points of each listed group, drops emptied
/// groups and relabels the survivors `0..v'` in increasing order.
///
/// Fails if some block would keep fewer than four points.
pub fn delete_points(g: &GroupedDesign, deletions: &[(usize, u32)]) -> Result<GroupedDesign, ConstructError> {
    let v = g.design.params.v as usize;
    let mut gone = vec![false; v];
    for &(gi, count) in deletions {
        let cell = g
            .groups()
            .get(gi)
            .ok_or_else(|| ConstructError::InvalidInput(format!("no group {gi} ({} groups)", g.groups().len())))?;
        if count as usize > cell.len() {
            return Err(ConstructError::InvalidInput(format!("group {gi} has only {} points", cell.len())));
        }
        for &p in &cell[cell.len() - count as usize..] {
            gone[p as usize] = true;
        }
    }
    let mut label = vec![Point::MAX; v];
    let mut next = 0;
    for p in 0..v {
        if !gone[p] {
            label[p] = next;
            next += 1;
        }
    }
    let mut blocks = Vec::with_capacity(g.design.blocks.len());
    for (index, b) in g.design.blocks.iter().enumerate() {
        let pts: SmallVec<[Point; 8]> = b.points().iter().filter(|&&p| !gone[p as usize]).map(|&p| label[p as usize]).collect();
        if pts.len() < 4 {
            return Err(ConstructError::BlockTooSmall { index, size: pts.len() });
        }
        blocks.push(OrderedBlock::from_distinct(pts));
    }
    let groups: Vec<Vec<Point>> = g
        .groups()
        .iter()
        .map(|cell| cell.iter().filter(|&&p| !gone[p as usize]).map(|&p| label[p as usize]).collect::<Vec<_>>())
        .filter(|c| !c.is_empty())
        .collect();
    let params = DesignParams::new(next, g.design.params.k, g.design.params.lambda)?;
    Ok(GroupedDesign::new(DirectedDesign::new(params, blocks)?, groups, g.directed)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{td_build, TdSpec};
    use crate::catalog::{catalog_build, catalog_entry};
    use crate::trade::{certify_half, orbit_trade_scan};
    use crate::verify::{full_report, Kind};

    fn td(k: u32, n: u32) -> GroupedDesign {
        td_build(TdSpec { k, n }).unwrap()
    }

    #[test]
    fn inflate_4pow4_by_td43() {
        let m = catalog_build("dgdd-4pow4").unwrap();
        let out = inflate_by_td(&m, InflationSpec::new(3).unwrap(), &td(4, 3)).unwrap();
        assert_eq!(out.design.block_count(), 576);
        assert_eq!(out.group_type(), GroupType::uniform(12, 4));
        let r = full_report(&DesignObject::Grouped(out), Kind::Dgdd).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn inflate_by_trivial_td_is_a_copy() {
        let m = catalog_build("dgdd-3pow6").unwrap();
        // TD(4,1): a single block, one point per group.
        let one = GroupedDesign::new(
            DirectedDesign::new(DesignParams::new(4, 4, 1).unwrap(), vec![OrderedBlock::from([0, 1, 2, 3])]).unwrap(),
            vec![vec![0], vec![1], vec![2], vec![3]],
            false,
        )
        .unwrap();
        let out = inflate_by_td(&m, InflationSpec::new(1).unwrap(), &one).unwrap();
        assert_eq!(&out.design, m.design());
    }

    #[test]
    fn inflate_rejects_wrong_td() {
        let m = catalog_build("dgdd-4pow4").unwrap();
        assert!(matches!(
            inflate_by_td(&m, InflationSpec::new(3).unwrap(), &td(5, 4)),
            Err(ConstructError::ArityMismatch(_))
        ));
        let t = td(4, 3);
        let mut broken = t.design.clone();
        broken.blocks.pop();
        let broken = GroupedDesign::new(broken, t.groups().to_vec(), false).unwrap();
        assert_eq!(inflate_by_td(&m, InflationSpec::new(3).unwrap(), &broken), Err(ConstructError::TdNotVerified));
    }

    #[test]
    fn weighting_2pow7_by_5() {
        let master = catalog_build("gdd-2pow7").unwrap();
        let master = master.as_grouped().unwrap();
        let ing = catalog_build("dgdd-5pow4").unwrap().as_grouped().unwrap().clone();
        let out = weight_and_replace(master, &WeightAssignment::uniform(14, 5), &[ing]).unwrap();
        assert_eq!(out.design.block_count(), 1400);
        assert_eq!(out.group_type(), GroupType::uniform(10, 7));
        assert_eq!(out.design.params.lambda, 2);
        let r = full_report(&DesignObject::Grouped(out), Kind::Dgdd).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn weighting_without_ingredient() {
        let master = catalog_build("gdd-2pow7").unwrap();
        let ing = catalog_build("dgdd-4pow4").unwrap().as_grouped().unwrap().clone();
        let err = weight_and_replace(master.as_grouped().unwrap(), &WeightAssignment::uniform(14, 5), &[ing]);
        assert!(matches!(err, Err(ConstructError::MissingIngredient(_))));
    }

    #[test]
    fn fill_lemma12_v49() {
        let m = catalog_build("dgdd-4pow4").unwrap();
        let g = inflate_by_td(&m, InflationSpec::new(3).unwrap(), &td(4, 3)).unwrap();
        let filler = catalog_build("dd-13").unwrap().design().clone();
        let filled = fill_groups_placed(&g, FillSpec::new(1).unwrap(), std::slice::from_ref(&filler)).unwrap();
        assert_eq!(filled.design.params.v, 49);
        assert_eq!(filled.design.block_count(), 784);
        let obj = DesignObject::Plain(filled.design.clone());
        let r = full_report(&obj, Kind::Dd).unwrap();
        assert!(r.passed(), "{}", r.render_text());

        let master_cert = crate::trade::generic_bound(&g.design);
        let filler_cert = orbit_trade_scan(catalog_entry("dd-13").unwrap()).unwrap();
        let cert = compose_fill_certificate(&filled, &master_cert, &[filler_cert]);
        assert_eq!(cert.bound(), master_cert.bound() + 4 * 26);
        assert!(certify_half(&filled.design, &cert).unwrap());
    }

    #[test]
    fn fill_errors() {
        let g = catalog_build("dgdd-3pow6").unwrap().as_grouped().unwrap().clone();
        let filler = catalog_build("dd-13").unwrap().design().clone();
        assert_eq!(fill_groups(&g, FillSpec::new(1).unwrap(), &[filler]), Err(ConstructError::MissingFiller(4)));
        let wrong = DirectedDesign::new(DesignParams::new(4, 4, 1).unwrap(), vec![]).unwrap();
        assert!(matches!(fill_groups(&g, FillSpec::new(1).unwrap(), &[wrong]), Err(ConstructError::SizeMismatch(_))));
    }

    #[test]
    fn truncations() {
        let out = delete_points(&td(5, 4), &[(4, 1)]).unwrap();
        assert_eq!(out.group_type(), GroupType::new(&[(4, 4), (3, 1)]).unwrap());
        assert_eq!(out.design.params.v, 19);
        let out = delete_points(&td(5, 5), &[(4, 3)]).unwrap();
        assert_eq!(out.group_type(), GroupType::new(&[(5, 4), (2, 1)]).unwrap());
        let (a, b) = (3, 5);
        let out = delete_points(&td(8, 7), &[(6, 7 - a), (7, 7 - b)]).unwrap();
        assert_eq!(out.group_type(), GroupType::new(&[(7, 6), (3, 1), (5, 1)]).unwrap());
        let sizes: std::collections::BTreeSet<usize> = out.design.blocks.iter().map(|b| b.len()).collect();
        assert_eq!(sizes.into_iter().collect::<Vec<_>>(), vec![6, 7, 8]);
        let r = full_report(&DesignObject::Grouped(out), Kind::Dgdd).unwrap();
        assert!(r.passed(), "{}", r.render_text());

        assert!(matches!(delete_points(&td(4, 3), &[(3, 1)]), Err(ConstructError::BlockTooSmall { .. })));
    }
}
