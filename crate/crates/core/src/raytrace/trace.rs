use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::Range;

use super::{Interaction, InteractionKind, RayPath, SolverSettings, TraceError};
use crate::geometry::{point_in_polygon, Vec2, Vec3};
use crate::scene::{building_boxes, wall_faces, Face, FaceKind, Scene};

/// Side-of-plane tolerance [m].
const SIDE_EPS: f64 = 1e-9;
/// In-face bounds tolerance [m].
const BOUNDS_EPS: f64 = 1e-9;

/// Image-method tracer bound to one scene and settings.
pub struct Tracer<'a> {
    scene: &'a Scene,
    settings: SolverSettings,
    faces: Vec<Face>,
    walls_of: Vec<Range<usize>>,
    boxes: Vec<(Vec2, Vec2, f64)>,
}

impl<'a> Tracer<'a> {
    pub fn new(scene: &'a Scene, settings: SolverSettings) -> Result<Self, TraceError> {
        settings.validate()?;
        let faces = wall_faces(scene, settings.enable_ground);
        let mut walls_of = Vec::with_capacity(scene.buildings().len());
        let mut start = 0;
        for b in scene.buildings() {
            walls_of.push(start..start + b.footprint.len());
            start += b.footprint.len();
        }
        Ok(Self {
            scene,
            settings,
            faces,
            walls_of,
            boxes: building_boxes(scene),
        })
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn settings(&self) -> &SolverSettings {
        &self.settings
    }

    /// All valid paths from `source` to `receiver`, sorted by reflection
    /// count, then length, then face sequence.
    pub fn trace(&self, source: Vec3, receiver: Vec3) -> Result<Vec<RayPath>, TraceError> {
        if let Some(b) = self.scene.building_containing(source) {
            return Err(TraceError::SourceInsideBuilding(b));
        }
        if let Some(b) = self.scene.building_containing(receiver) {
            return Err(TraceError::ReceiverInsideBuilding(b));
        }
        if source.distance(receiver) <= SIDE_EPS {
            return Err(TraceError::Coincident);
        }
        let mut out = Vec::new();
        let mut seq = Vec::with_capacity(self.settings.max_reflections);
        let mut images = Vec::with_capacity(self.settings.max_reflections + 1);
        images.push(source);
        if let Some(p) = self.build_path(source, receiver, &seq, &images) {
            out.push(p);
        }
        self.expand(source, receiver, &mut seq, &mut images, &mut out);
        out.sort_by(|a, b| {
            a.reflection_count()
                .cmp(&b.reflection_count())
                .then(a.length.total_cmp(&b.length))
                .then_with(|| a.reflection_faces().cmp(&b.reflection_faces()))
        });
        Ok(out)
    }

    fn expand(
        &self,
        source: Vec3,
        receiver: Vec3,
        seq: &mut Vec<usize>,
        images: &mut Vec<Vec3>,
        out: &mut Vec<RayPath>,
    ) {
        if seq.len() == self.settings.max_reflections {
            return;
        }
        let image = *images.last().expect("images start with the source");
        for (fi, face) in self.faces.iter().enumerate() {
            if seq.last() == Some(&fi) || face.signed_distance(image) <= SIDE_EPS {
                continue;
            }
            seq.push(fi);
            images.push(face.mirror(image));
            if face.signed_distance(receiver) > SIDE_EPS {
                if let Some(p) = self.build_path(source, receiver, seq, images) {
                    out.push(p);
                }
            }
            self.expand(source, receiver, seq, images, out);
            seq.pop();
            images.pop();
        }
    }

    /// Backtracks reflection points from the receiver through the image
    /// chain and validates every leg.
    fn build_path(
        &self,
        source: Vec3,
        receiver: Vec3,
        seq: &[usize],
        images: &[Vec3],
    ) -> Option<RayPath> {
        let k = seq.len();
        let mut points = alloc::vec![Vec3::ZERO; k + 2];
        points[0] = source;
        points[k + 1] = receiver;
        let mut target = receiver;
        for j in (0..k).rev() {
            let face = &self.faces[seq[j]];
            let image = images[j + 1];
            let dt = face.signed_distance(target);
            let di = face.signed_distance(image);
            if !(dt > SIDE_EPS && di < -SIDE_EPS) {
                return None;
            }
            let p = target + (image - target) * (dt / (dt - di));
            if !face.contains_in_plane(p, BOUNDS_EPS) {
                return None;
            }
            if face.kind == FaceKind::Ground && self.on_footprint(p) {
                return None;
            }
            points[j + 1] = p;
            target = p;
        }
        // Both neighbours of every reflection point must be in front.
        for j in 0..k {
            let face = &self.faces[seq[j]];
            if face.signed_distance(points[j]) <= SIDE_EPS
                || face.signed_distance(points[j + 2]) <= SIDE_EPS
            {
                return None;
            }
        }
        let mut interactions = Vec::new();
        let mut length = 0.0;
        for leg in 0..=k {
            let (a, b) = (points[leg], points[leg + 1]);
            let d = (b - a).normalized()?;
            length += a.distance(b);
            let skip_a = (leg > 0).then(|| seq[leg - 1]);
            let skip_b = (leg < k).then(|| seq[leg]);
            if !self.leg_events(a, b, d, skip_a, skip_b, &mut interactions) {
                return None;
            }
            if leg < k {
                let face = &self.faces[seq[leg]];
                let d_out = (points[leg + 2] - b).normalized()?;
                interactions.push(Interaction {
                    face: seq[leg],
                    kind: InteractionKind::Reflection,
                    point: b,
                    normal: face.normal,
                    material: face.material,
                    incoming: d,
                    outgoing: d_out,
                });
            }
        }
        Some(RayPath {
            vertices: points,
            interactions,
            length,
        })
    }

    fn on_footprint(&self, p: Vec3) -> bool {
        self.scene
            .buildings()
            .iter()
            .any(|b| point_in_polygon(p.xy(), &b.footprint))
    }

    /// Walks one straight leg. Returns false if a wall blocks it; with
    /// transmission enabled, crossings are appended in order instead.
    fn leg_events(
        &self,
        a: Vec3,
        b: Vec3,
        dir: Vec3,
        skip_a: Option<usize>,
        skip_b: Option<usize>,
        events: &mut Vec<Interaction>,
    ) -> bool {
        let lo = Vec2::new(a.x.min(b.x), a.y.min(b.y));
        let hi = Vec2::new(a.x.max(b.x), a.y.max(b.y));
        let zmin = a.z.min(b.z);
        let mut crossings: Vec<(f64, usize, Vec3)> = Vec::new();
        for (bi, (bmin, bmax, h)) in self.boxes.iter().enumerate() {
            if zmin > *h || hi.x < bmin.x || lo.x > bmax.x || hi.y < bmin.y || lo.y > bmax.y {
                continue;
            }
            for fi in self.walls_of[bi].clone() {
                if Some(fi) == skip_a || Some(fi) == skip_b {
                    continue;
                }
                let face = &self.faces[fi];
                let da = face.signed_distance(a);
                let db = face.signed_distance(b);
                let crosses = (da > SIDE_EPS && db < -SIDE_EPS) || (da < -SIDE_EPS && db > SIDE_EPS);
                if !crosses {
                    continue;
                }
                let t = da / (da - db);
                let x = a + (b - a) * t;
                if face.contains_in_plane(x, BOUNDS_EPS) {
                    if !self.settings.enable_transmission {
                        return false;
                    }
                    crossings.push((t, fi, x));
                }
            }
        }
        crossings.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap_or(Ordering::Equal).then(p.1.cmp(&q.1)));
        for (_, fi, x) in crossings {
            let face = &self.faces[fi];
            events.push(Interaction {
                face: fi,
                kind: InteractionKind::Transmission,
                point: x,
                normal: face.normal,
                material: face.material,
                incoming: dir,
                outgoing: dir,
            });
        }
        true
    }
}

/// Convenience wrapper building a [`Tracer`] for a single query.
pub fn trace_paths(
    scene: &Scene,
    source: Vec3,
    receiver: Vec3,
    settings: &SolverSettings,
) -> Result<Vec<RayPath>, TraceError> {
    Tracer::new(scene, *settings)?.trace(source, receiver)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{Building, Extent, GridMode, Material};
    use alloc::vec;

    fn extent() -> Extent {
        Extent::new(Vec2::new(-200.0, -200.0), Vec2::new(200.0, 200.0))
    }

    fn no_ground() -> SolverSettings {
        SolverSettings {
            enable_ground: false,
            ..SolverSettings::default()
        }
    }

    #[test]
    fn free_space_direct_only() {
        let scene = Scene::empty(extent());
        let (s, r) = (Vec3::new(0.0, 0.0, 10.0), Vec3::new(30.0, 40.0, 10.0));
        let paths = trace_paths(&scene, s, r, &no_ground()).unwrap();
        assert_eq!(paths.len(), 1);
        assert!((paths[0].length - 50.0).abs() < 1e-12);
        assert!(paths[0].interactions.is_empty());
    }

    #[test]
    fn ground_bounce_matches_image_distance() {
        let scene = Scene::empty(extent());
        let (s, r) = (Vec3::new(0.0, 0.0, 20.0), Vec3::new(30.0, 40.0, 1.5));
        let paths = trace_paths(&scene, s, r, &SolverSettings::default()).unwrap();
        assert_eq!(paths.len(), 2);
        let mirror = Vec3::new(r.x, r.y, -r.z);
        assert!((paths[1].length - s.distance(mirror)).abs() < 1e-9);
        assert_eq!(paths[1].reflection_count(), 1);
    }

    #[test]
    fn single_wall_reflection_law() {
        let wall = Building::rectangle(10.0, -50.0, 20.0, 50.0, 30.0, Material::CONCRETE);
        let scene = Scene::new(vec![wall], extent(), Material::CONCRETE, GridMode::Cells).unwrap();
        let (s, r) = (Vec3::new(0.0, -10.0, 5.0), Vec3::new(0.0, 10.0, 5.0));
        let paths = trace_paths(&scene, s, r, &no_ground()).unwrap();
        // direct + one bounce off the west face at x = 10
        assert_eq!(paths.len(), 2);
        let p = &paths[1];
        let hit = p.vertices[1];
        assert!((hit.x - 10.0).abs() < 1e-9 && hit.y.abs() < 1e-9);
        let i = p.interactions[0];
        let cos_in = -i.incoming.dot(i.normal);
        let cos_out = i.outgoing.dot(i.normal);
        assert!((cos_in - cos_out).abs() < 1e-12);
    }

    #[test]
    fn blocked_direct_path() {
        let wall = Building::rectangle(-5.0, 10.0, 5.0, 12.0, 30.0, Material::CONCRETE);
        let scene = Scene::new(vec![wall], extent(), Material::CONCRETE, GridMode::Cells).unwrap();
        let (s, r) = (Vec3::new(0.0, 0.0, 5.0), Vec3::new(0.0, 30.0, 5.0));
        let paths = trace_paths(
            &scene,
            s,
            r,
            &SolverSettings {
                max_reflections: 0,
                ..no_ground()
            },
        )
        .unwrap();
        assert!(paths.is_empty());
        let with_tx = SolverSettings {
            max_reflections: 0,
            enable_transmission: true,
            ..no_ground()
        };
        let paths = trace_paths(&scene, s, r, &with_tx).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].interactions.len(), 2);
        assert!(paths[0]
            .interactions
            .iter()
            .all(|i| i.kind == InteractionKind::Transmission));
    }

    #[test]
    fn source_inside_building_is_rejected() {
        let b = Building::rectangle(-5.0, -5.0, 5.0, 5.0, 10.0, Material::CONCRETE);
        let scene = Scene::new(vec![b], extent(), Material::CONCRETE, GridMode::Cells).unwrap();
        let err = trace_paths(&scene, Vec3::new(0.0, 0.0, 2.0), Vec3::new(50.0, 0.0, 2.0), &no_ground());
        assert_eq!(err.unwrap_err(), TraceError::SourceInsideBuilding(0));
        // Above the roof is fine.
        assert!(trace_paths(&scene, Vec3::new(0.0, 0.0, 12.0), Vec3::new(50.0, 0.0, 2.0), &no_ground()).is_ok());
    }

    #[test]
    fn too_many_reflections_rejected() {
        let scene = Scene::empty(extent());
        let s = SolverSettings {
            max_reflections: 5,
            ..SolverSettings::default()
        };
        assert!(matches!(
            trace_paths(&scene, Vec3::new(0.0, 0.0, 1.0), Vec3::new(1.0, 0.0, 1.0), &s),
            Err(TraceError::TooManyReflections(5))
        ));
    }
}
