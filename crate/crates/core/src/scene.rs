//! Propagation scenario: extruded buildings over a flat ground, plus the
//! region of interest and its probe grid.

use alloc::vec::Vec;

use libm::{floor, round};
use thiserror::Error;

use crate::geometry::{
    is_simple_polygon, point_in_polygon, point_strictly_inside, segments_properly_cross,
    signed_area2, Vec2, Vec3,
};

/// Homogeneous wall or ground material.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Material {
    /// Relative permittivity, >= 1.
    pub eps_r: f64,
    /// Conductivity [S/m], >= 0.
    pub sigma: f64,
    /// Wall thickness [m], > 0. Only used by the slab transmission model.
    pub thickness: f64,
}

impl Material {
    /// Concrete walls: eps_r = 6, sigma = 0.136 S/m, 0.3 m thick.
    pub const CONCRETE: Self = Self {
        eps_r: 6.0,
        sigma: 0.136,
        thickness: 0.3,
    };

    pub fn validate(&self) -> Result<(), MaterialError> {
        if !(self.eps_r.is_finite() && self.eps_r >= 1.0) {
            return Err(MaterialError::Permittivity(self.eps_r));
        }
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(MaterialError::Conductivity(self.sigma));
        }
        if !(self.thickness.is_finite() && self.thickness > 0.0) {
            return Err(MaterialError::Thickness(self.thickness));
        }
        Ok(())
    }
}

impl Default for Material {
    fn default() -> Self {
        Self::CONCRETE
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum MaterialError {
    #[error("relative permittivity {0} must be >= 1")]
    Permittivity(f64),
    #[error("conductivity {0} S/m must be >= 0")]
    Conductivity(f64),
    #[error("thickness {0} m must be > 0")]
    Thickness(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Building {
    /// Counter-clockwise footprint vertices [m].
    pub footprint: Vec<Vec2>,
    pub height: f64,
    pub material: Material,
}

impl Building {
    pub fn new(footprint: Vec<Vec2>, height: f64, material: Material) -> Self {
        Self {
            footprint,
            height,
            material,
        }
    }

    /// Axis-aligned rectangle `[x0, x1] x [y0, y1]`, counter-clockwise.
    pub fn rectangle(x0: f64, y0: f64, x1: f64, y1: f64, height: f64, material: Material) -> Self {
        Self::new(
            alloc::vec![
                Vec2::new(x0, y0),
                Vec2::new(x1, y0),
                Vec2::new(x1, y1),
                Vec2::new(x0, y1),
            ],
            height,
            material,
        )
    }

    /// Point strictly inside the building volume.
    pub fn contains(&self, p: Vec3) -> bool {
        p.z < self.height && point_in_polygon(p.xy(), &self.footprint)
    }

    fn bounds(&self) -> Extent {
        let mut min = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut max = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.footprint {
            min = Vec2::new(min.x.min(v.x), min.y.min(v.y));
            max = Vec2::new(max.x.max(v.x), max.y.max(v.y));
        }
        Extent { min, max }
    }
}

/// Axis-aligned 2D bounds [m].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Extent {
    pub min: Vec2,
    pub max: Vec2,
}

impl Extent {
    pub fn new(min: Vec2, max: Vec2) -> Self {
        Self { min, max }
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }
}

/// Probe grid convention along each RoI axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum GridMode {
    /// `floor(width / spacing) + 1` nodes starting at the RoI corner.
    Nodes,
    /// `round(width / spacing)` cell centers.
    #[default]
    Cells,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SceneError {
    #[error("building {building}: footprint needs at least 3 vertices, got {count}")]
    TooFewVertices { building: usize, count: usize },
    #[error("building {building}: footprint has a non-finite vertex")]
    NonFiniteVertex { building: usize },
    #[error("building {building}: footprint is self-intersecting")]
    SelfIntersecting { building: usize },
    #[error("building {building}: height {height} m must be > 0")]
    NonPositiveHeight { building: usize, height: f64 },
    #[error("building {building}: {source}")]
    InvalidMaterial {
        building: usize,
        source: MaterialError,
    },
    #[error("ground: {0}")]
    InvalidGroundMaterial(MaterialError),
    #[error("building {building}: footprint leaves the scene extent")]
    OutsideExtent { building: usize },
    #[error("building {first} overlaps building {second}")]
    Overlap { first: usize, second: usize },
    #[error("scene extent is empty or not finite")]
    InvalidExtent,
}

/// Validated propagation scenario. The ground is the plane z = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    buildings: Vec<Building>,
    extent: Extent,
    ground_material: Material,
    grid_mode: GridMode,
}

impl Scene {
    pub const GROUND_Z: f64 = 0.0;

    /// Validates and builds a scene. Clockwise footprints are reoriented.
    pub fn new(
        buildings: Vec<Building>,
        extent: Extent,
        ground_material: Material,
        grid_mode: GridMode,
    ) -> Result<Self, SceneError> {
        match Self::violations(&buildings, &extent, &ground_material).into_iter().next() {
            Some(e) => Err(e),
            None => Ok(Self::new_unchecked(buildings, extent, ground_material, grid_mode)),
        }
    }

    pub fn empty(extent: Extent) -> Self {
        Self::new_unchecked(Vec::new(), extent, Material::CONCRETE, GridMode::Cells)
    }

    fn new_unchecked(
        mut buildings: Vec<Building>,
        extent: Extent,
        ground_material: Material,
        grid_mode: GridMode,
    ) -> Self {
        for b in &mut buildings {
            if signed_area2(&b.footprint) < 0.0 {
                b.footprint.reverse();
            }
        }
        Self {
            buildings,
            extent,
            ground_material,
            grid_mode,
        }
    }

    /// Every invariant violation, in building order.
    pub fn violations(
        buildings: &[Building],
        extent: &Extent,
        ground_material: &Material,
    ) -> Vec<SceneError> {
        let mut out = Vec::new();
        let extent_ok = extent.min.x.is_finite()
            && extent.min.y.is_finite()
            && extent.max.x.is_finite()
            && extent.max.y.is_finite()
            && extent.max.x > extent.min.x
            && extent.max.y > extent.min.y;
        if !extent_ok {
            out.push(SceneError::InvalidExtent);
        }
        if let Err(e) = ground_material.validate() {
            out.push(SceneError::InvalidGroundMaterial(e));
        }
        let mut footprint_ok = alloc::vec![false; buildings.len()];
        for (i, b) in buildings.iter().enumerate() {
            if b.footprint.len() < 3 {
                out.push(SceneError::TooFewVertices {
                    building: i,
                    count: b.footprint.len(),
                });
            } else if b.footprint.iter().any(|v| !(v.x.is_finite() && v.y.is_finite())) {
                out.push(SceneError::NonFiniteVertex { building: i });
            } else if !is_simple_polygon(&b.footprint) || signed_area2(&b.footprint) == 0.0 {
                out.push(SceneError::SelfIntersecting { building: i });
            } else {
                footprint_ok[i] = true;
                if extent_ok && !b.footprint.iter().all(|v| extent.contains(*v)) {
                    out.push(SceneError::OutsideExtent { building: i });
                }
            }
            if !(b.height.is_finite() && b.height > 0.0) {
                out.push(SceneError::NonPositiveHeight {
                    building: i,
                    height: b.height,
                });
            }
            if let Err(source) = b.material.validate() {
                out.push(SceneError::InvalidMaterial {
                    building: i,
                    source,
                });
            }
        }
        for i in 0..buildings.len() {
            for j in (i + 1)..buildings.len() {
                if footprint_ok[i]
                    && footprint_ok[j]
                    && footprints_overlap(&buildings[i].footprint, &buildings[j].footprint)
                {
                    out.push(SceneError::Overlap {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        out
    }

    pub fn buildings(&self) -> &[Building] {
        &self.buildings
    }

    pub fn extent(&self) -> Extent {
        self.extent
    }

    pub fn ground_material(&self) -> Material {
        self.ground_material
    }

    pub fn grid_mode(&self) -> GridMode {
        self.grid_mode
    }

    /// Index of the building whose volume contains `p`, if any.
    pub fn building_containing(&self, p: Vec3) -> Option<usize> {
        self.buildings.iter().position(|b| b.contains(p))
    }

    /// Regular `nodes` grid over the whole extent at height `z`, skipping
    /// points inside buildings. Used for scene-wide diagnostic maps.
    pub fn diagnostic_probes(&self, spacing: f64, z: f64) -> Vec<Vec3> {
        let e = self.extent;
        let nx = floor((e.max.x - e.min.x) / spacing + 1e-9) as usize + 1;
        let ny = floor((e.max.y - e.min.y) / spacing + 1e-9) as usize + 1;
        let mut out = Vec::with_capacity(nx * ny);
        for iy in 0..ny {
            for ix in 0..nx {
                let p = Vec3::new(
                    e.min.x + ix as f64 * spacing,
                    e.min.y + iy as f64 * spacing,
                    z,
                );
                if self.building_containing(p).is_none() {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Interior overlap between two simple counter-clockwise polygons.
/// Shared walls and touching corners are allowed.
fn footprints_overlap(a: &[Vec2], b: &[Vec2]) -> bool {
    let (na, nb) = (a.len(), b.len());
    for i in 0..na {
        for j in 0..nb {
            if segments_properly_cross(a[i], a[(i + 1) % na], b[j], b[(j + 1) % nb]) {
                return true;
            }
        }
    }
    let probe_inside = |p: &[Vec2], q: &[Vec2]| {
        let n = p.len();
        (0..n).any(|i| {
            let mid = (p[i] + p[(i + 1) % n]) * 0.5;
            point_strictly_inside(p[i], q, 1e-9) || point_strictly_inside(mid, q, 1e-9)
        })
    };
    if probe_inside(a, b) || probe_inside(b, a) {
        return true;
    }
    // Coincident footprints: every vertex on the other's boundary.
    let centroid = |p: &[Vec2]| {
        let s = p.iter().fold(Vec2::default(), |acc, v| acc + *v);
        s * (1.0 / p.len() as f64)
    };
    let (ca, cb) = (centroid(a), centroid(b));
    (point_strictly_inside(ca, a, 1e-9) && point_strictly_inside(ca, b, 1e-9))
        || (point_strictly_inside(cb, b, 1e-9) && point_strictly_inside(cb, a, 1e-9))
}

/// Rectangular region of interest sampled on a regular horizontal grid.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegionOfInterest {
    pub center: Vec2,
    pub width_x: f64,
    pub width_y: f64,
    /// Probe height above ground [m].
    pub height: f64,
    /// Probe step, identical along x and y [m].
    pub spacing: f64,
    pub grid_mode: GridMode,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RoiError {
    #[error("region of interest widths and spacing must be finite and > 0")]
    InvalidDimensions,
    #[error("probe {probe} at ({x:.2}, {y:.2}) lies inside building {building}")]
    ProbeInsideBuilding {
        probe: usize,
        building: usize,
        x: f64,
        y: f64,
    },
}

impl RegionOfInterest {
    /// Probe count along (x, y).
    pub fn counts(&self) -> (usize, usize) {
        let along = |w: f64| match self.grid_mode {
            GridMode::Nodes => floor(w / self.spacing + 1e-9) as usize + 1,
            GridMode::Cells => (round(w / self.spacing) as usize).max(1),
        };
        (along(self.width_x), along(self.width_y))
    }

    pub fn probe_count(&self) -> usize {
        let (nx, ny) = self.counts();
        nx * ny
    }

    /// Barycenter at probe height.
    pub fn barycenter(&self) -> Vec3 {
        Vec3::new(self.center.x, self.center.y, self.height)
    }

    /// Row-major probe list: x varies fastest, starting at the minimum
    /// corner of the grid.
    pub fn probe_points(&self) -> Vec<Vec3> {
        let (nx, ny) = self.counts();
        let coord = |c: f64, w: f64, n: usize, i: usize| match self.grid_mode {
            GridMode::Nodes => c - w / 2.0 + i as f64 * self.spacing,
            GridMode::Cells => c + (i as f64 - (n as f64 - 1.0) / 2.0) * self.spacing,
        };
        let mut out = Vec::with_capacity(nx * ny);
        for iy in 0..ny {
            for ix in 0..nx {
                out.push(Vec3::new(
                    coord(self.center.x, self.width_x, nx, ix),
                    coord(self.center.y, self.width_y, ny, iy),
                    self.height,
                ));
            }
        }
        out
    }

    pub fn validate(&self, scene: &Scene) -> Result<(), RoiError> {
        match self.violations(scene).into_iter().next() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    pub fn violations(&self, scene: &Scene) -> Vec<RoiError> {
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !(ok(self.width_x) && ok(self.width_y) && ok(self.spacing))
            || !(self.center.x.is_finite() && self.center.y.is_finite() && self.height.is_finite())
        {
            return alloc::vec![RoiError::InvalidDimensions];
        }
        self.probe_points()
            .iter()
            .enumerate()
            .filter_map(|(probe, p)| {
                scene
                    .building_containing(*p)
                    .map(|building| RoiError::ProbeInsideBuilding {
                        probe,
                        building,
                        x: p.x,
                        y: p.y,
                    })
            })
            .collect()
    }
}

/// Planar reflecting surface of the scene.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FaceKind {
    Wall { building: usize, edge: usize },
    Ground,
}

/// Vertical wall rectangle or the bounded ground plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Face {
    pub kind: FaceKind,
    /// Wall: edge start at z = 0. Ground: extent minimum corner.
    pub origin: Vec3,
    /// Wall: unit vector along the edge. Ground: +x.
    pub tangent: Vec3,
    /// Wall: edge length. Ground: extent along x.
    pub length: f64,
    /// Wall: building height. Ground: extent along y.
    pub height: f64,
    /// Outward unit normal.
    pub normal: Vec3,
    pub material: Material,
}

impl Face {
    /// Signed distance of `p` from the face plane, positive on the front.
    pub fn signed_distance(&self, p: Vec3) -> f64 {
        (p - self.origin).dot(self.normal)
    }

    pub fn mirror(&self, p: Vec3) -> Vec3 {
        p - self.normal * (2.0 * self.signed_distance(p))
    }

    /// Whether a point on the face plane lies within the face bounds.
    pub fn contains_in_plane(&self, p: Vec3, tol: f64) -> bool {
        let d = p - self.origin;
        match self.kind {
            FaceKind::Wall { .. } => {
                let s = d.dot(self.tangent);
                s >= -tol && s <= self.length + tol && p.z >= -tol && p.z <= self.height + tol
            }
            FaceKind::Ground => {
                d.x >= -tol && d.x <= self.length + tol && d.y >= -tol && d.y <= self.height + tol
            }
        }
    }

    /// Building owning a wall face.
    pub fn building(&self) -> Option<usize> {
        match self.kind {
            FaceKind::Wall { building, .. } => Some(building),
            FaceKind::Ground => None,
        }
    }
}

/// One outward vertical rectangle per footprint edge, in building then
/// edge order, followed by the ground face when enabled.
pub fn wall_faces(scene: &Scene, enable_ground: bool) -> Vec<Face> {
    let mut faces = Vec::new();
    for (bi, b) in scene.buildings.iter().enumerate() {
        let n = b.footprint.len();
        for e in 0..n {
            let a = b.footprint[e];
            let c = b.footprint[(e + 1) % n];
            let d = c - a;
            let len = d.norm();
            let t = Vec3::new(d.x / len, d.y / len, 0.0);
            faces.push(Face {
                kind: FaceKind::Wall {
                    building: bi,
                    edge: e,
                },
                origin: Vec3::new(a.x, a.y, Scene::GROUND_Z),
                tangent: t,
                length: len,
                height: b.height,
                normal: Vec3::new(t.y, -t.x, 0.0),
                material: b.material,
            });
        }
    }
    if enable_ground {
        let e = scene.extent;
        faces.push(Face {
            kind: FaceKind::Ground,
            origin: Vec3::new(e.min.x, e.min.y, Scene::GROUND_Z),
            tangent: Vec3::X,
            length: e.max.x - e.min.x,
            height: e.max.y - e.min.y,
            normal: Vec3::Z,
            material: scene.ground_material,
        });
    }
    faces
}

/// Axis-aligned bounds of each building, used for occlusion culling.
pub(crate) fn building_boxes(scene: &Scene) -> Vec<(Vec2, Vec2, f64)> {
    scene
        .buildings
        .iter()
        .map(|b| {
            let e = b.bounds();
            (e.min, e.max, b.height)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn extent100() -> Extent {
        Extent::new(Vec2::new(0.0, 0.0), Vec2::new(100.0, 100.0))
    }

    fn roi(w: f64, s: f64, mode: GridMode) -> RegionOfInterest {
        RegionOfInterest {
            center: Vec2::new(50.0, 50.0),
            width_x: w,
            width_y: w,
            height: 1.5,
            spacing: s,
            grid_mode: mode,
        }
    }

    #[test]
    fn empty_scene_is_valid() {
        let s = Scene::new(vec![], extent100(), Material::CONCRETE, GridMode::Cells).unwrap();
        assert!(s.buildings().is_empty());
        assert_eq!(wall_faces(&s, true).len(), 1);
        assert_eq!(wall_faces(&s, false).len(), 0);
    }

    #[test]
    fn rectangle_gives_four_outward_walls() {
        let b = Building::rectangle(10.0, 10.0, 30.0, 40.0, 10.0, Material::CONCRETE);
        let s = Scene::new(vec![b], extent100(), Material::CONCRETE, GridMode::Cells).unwrap();
        let faces = wall_faces(&s, false);
        assert_eq!(faces.len(), 4);
        let centroid = Vec3::new(20.0, 25.0, 5.0);
        for f in &faces {
            let mid = f.origin + f.tangent * (f.length / 2.0) + Vec3::Z * 5.0;
            assert!(f.normal.dot(mid - centroid) > 0.0);
        }
    }

    #[test]
    fn two_rectangles_give_eight_walls() {
        let s = Scene::new(
            vec![
                Building::rectangle(10.0, 10.0, 30.0, 40.0, 10.0, Material::CONCRETE),
                Building::rectangle(50.0, 10.0, 70.0, 40.0, 10.0, Material::CONCRETE),
            ],
            extent100(),
            Material::CONCRETE,
            GridMode::Cells,
        )
        .unwrap();
        assert_eq!(wall_faces(&s, false).len(), 8);
    }

    #[test]
    fn clockwise_footprint_is_reoriented() {
        let mut b = Building::rectangle(10.0, 10.0, 30.0, 40.0, 10.0, Material::CONCRETE);
        b.footprint.reverse();
        let s = Scene::new(vec![b], extent100(), Material::CONCRETE, GridMode::Cells).unwrap();
        assert!(signed_area2(&s.buildings()[0].footprint) > 0.0);
    }

    #[test]
    fn bow_tie_is_rejected_with_index() {
        let bow = Building::new(
            vec![
                Vec2::new(10.0, 10.0),
                Vec2::new(20.0, 20.0),
                Vec2::new(20.0, 10.0),
                Vec2::new(10.0, 20.0),
            ],
            5.0,
            Material::CONCRETE,
        );
        let err = Scene::new(vec![bow], extent100(), Material::CONCRETE, GridMode::Cells).unwrap_err();
        assert_eq!(err, SceneError::SelfIntersecting { building: 0 });
    }

    #[test]
    fn overlap_is_rejected_but_shared_wall_is_not() {
        let a = Building::rectangle(10.0, 10.0, 30.0, 30.0, 5.0, Material::CONCRETE);
        let b = Building::rectangle(20.0, 20.0, 40.0, 40.0, 5.0, Material::CONCRETE);
        let c = Building::rectangle(30.0, 10.0, 50.0, 30.0, 5.0, Material::CONCRETE);
        let err = Scene::new(vec![a.clone(), b], extent100(), Material::CONCRETE, GridMode::Cells)
            .unwrap_err();
        assert_eq!(err, SceneError::Overlap { first: 0, second: 1 });
        assert!(Scene::new(vec![a.clone(), c], extent100(), Material::CONCRETE, GridMode::Cells).is_ok());
        let err = Scene::new(vec![a.clone(), a], extent100(), Material::CONCRETE, GridMode::Cells)
            .unwrap_err();
        assert_eq!(err, SceneError::Overlap { first: 0, second: 1 });
    }

    #[test]
    fn bad_material_and_extent_are_reported() {
        let mut m = Material::CONCRETE;
        m.eps_r = 0.5;
        let b = Building::rectangle(10.0, 10.0, 30.0, 30.0, 5.0, m);
        let v = Scene::violations(&[b], &extent100(), &Material::CONCRETE);
        assert!(matches!(
            v[0],
            SceneError::InvalidMaterial {
                building: 0,
                source: MaterialError::Permittivity(_)
            }
        ));
        let b = Building::rectangle(90.0, 90.0, 130.0, 130.0, 5.0, Material::CONCRETE);
        let v = Scene::violations(&[b], &extent100(), &Material::CONCRETE);
        assert_eq!(v, vec![SceneError::OutsideExtent { building: 0 }]);
    }

    #[test]
    fn probe_counts_follow_grid_mode() {
        assert_eq!(roi(10.0, 5.0, GridMode::Nodes).probe_count(), 9);
        assert_eq!(roi(35.0, 5.0, GridMode::Nodes).probe_count(), 64);
        assert_eq!(roi(35.0, 5.0, GridMode::Cells).probe_count(), 49);
        assert_eq!(roi(80.0, 5.0, GridMode::Cells).probe_count(), 256);
        assert_eq!(roi(50.0, 5.0, GridMode::Cells).probe_count(), 100);
    }

    #[test]
    fn probe_points_are_row_major_from_min_corner() {
        let p = roi(10.0, 5.0, GridMode::Nodes).probe_points();
        assert_eq!(p.len(), 9);
        assert_eq!(p[0], Vec3::new(45.0, 45.0, 1.5));
        assert_eq!(p[1], Vec3::new(50.0, 45.0, 1.5));
        assert_eq!(p[3], Vec3::new(45.0, 50.0, 1.5));
        assert_eq!(p[8], Vec3::new(55.0, 55.0, 1.5));
        let c = roi(35.0, 5.0, GridMode::Cells).probe_points();
        assert_eq!(c[0], Vec3::new(35.0, 35.0, 1.5));
        assert_eq!(c[48], Vec3::new(65.0, 65.0, 1.5));
    }

    #[test]
    fn probe_inside_building_is_rejected() {
        let b = Building::rectangle(40.0, 40.0, 48.0, 48.0, 5.0, Material::CONCRETE);
        let s = Scene::new(vec![b], extent100(), Material::CONCRETE, GridMode::Nodes).unwrap();
        let err = roi(10.0, 5.0, GridMode::Nodes).validate(&s).unwrap_err();
        assert!(matches!(err, RoiError::ProbeInsideBuilding { probe: 0, building: 0, .. }));
    }

    #[test]
    fn mirror_is_involution() {
        let b = Building::rectangle(10.0, 10.0, 30.0, 40.0, 10.0, Material::CONCRETE);
        let s = Scene::new(vec![b], extent100(), Material::CONCRETE, GridMode::Cells).unwrap();
        let p = Vec3::new(3.0, 7.0, 2.0);
        for f in wall_faces(&s, true) {
            let q = f.mirror(f.mirror(p));
            assert!(q.distance(p) < 1e-12);
            assert!((f.signed_distance(f.mirror(p)) + f.signed_distance(p)).abs() < 1e-12);
        }
    }
}
