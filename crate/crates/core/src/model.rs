//! Building description: zones, interambiances (the separations between
//! zones, with the outside treated as a special zone) and the components
//! carried by them.
//!
//! Everything here is plain immutable data. [`Building::validate`] checks
//! the invariants and the reference graph; [`Building::topology`] turns a
//! valid description into the zone graph consumed by the solvers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::scalar::Scalar;

/// Zone identifier (description-scoped, unique among zones).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZoneId(pub u32);

/// Interambiance identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InterambianceId(pub u32);

/// Component identifier (unique across all component kinds).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentId(pub u32);

impl fmt::Display for ZoneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zone {}", self.0)
    }
}
impl fmt::Display for InterambianceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "interambiance {}", self.0)
    }
}
impl fmt::Display for ComponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "component {}", self.0)
    }
}

/// One side of an interambiance: a zone, or the outside acting as the
/// reserved boundary zone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ZoneRef {
    Outside,
    Zone(ZoneId),
}

impl ZoneRef {
    pub fn zone_id(self) -> Option<ZoneId> {
        match self {
            ZoneRef::Outside => None,
            ZoneRef::Zone(id) => Some(id),
        }
    }

    pub fn is_outside(self) -> bool {
        matches!(self, ZoneRef::Outside)
    }
}

impl fmt::Display for ZoneRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZoneRef::Outside => write!(f, "outside"),
            ZoneRef::Zone(id) => write!(f, "{id}"),
        }
    }
}

/// Implantation site of the building.
#[derive(Debug, Clone)]
pub struct Site<S = f64> {
    /// Degrees, positive north, in [-90, 90].
    pub latitude: S,
    /// Degrees, positive east.
    pub longitude: S,
    /// Metres above sea level.
    pub altitude: S,
    /// Ground short-wave reflectance in [0, 1].
    pub albedo: S,
    /// Hours ahead of UTC for the local clock of the weather data.
    pub time_zone_offset: S,
}

/// An air volume at uniform dry-bulb temperature.
#[derive(Debug, Clone)]
pub struct Zone<S = f64> {
    pub id: ZoneId,
    pub name: String,
    /// m³, > 0.
    pub volume: S,
    /// Multiplier ≥ 1 on the air heat capacity accounting for furniture.
    pub air_capacitance_multiplier: S,
    /// °C.
    pub initial_temperature: S,
    /// kg water / kg dry air, in [0, 0.1].
    pub initial_humidity_ratio: S,
}

/// Separation between two zones (or a zone and the outside). Carries the
/// orientation used by outside-facing walls and windows.
#[derive(Debug, Clone)]
pub struct Interambiance<S = f64> {
    pub id: InterambianceId,
    pub zone_a: ZoneRef,
    pub zone_b: ZoneRef,
    /// Facade azimuth, degrees clockwise from north, for outside-facing
    /// separations.
    pub azimuth: S,
    /// Tilt from horizontal, degrees: 0 = roof facing up, 90 = vertical.
    pub tilt: S,
}

impl<S> Interambiance<S> {
    pub fn faces_outside(&self) -> bool {
        self.zone_a.is_outside() || self.zone_b.is_outside()
    }

    /// The inside zone of an outside-facing separation.
    pub fn inside_zone(&self) -> Option<ZoneId> {
        match (self.zone_a, self.zone_b) {
            (ZoneRef::Outside, ZoneRef::Zone(z)) | (ZoneRef::Zone(z), ZoneRef::Outside) => Some(z),
            _ => None,
        }
    }

    pub fn touches(&self, zone: ZoneId) -> bool {
        self.zone_a == ZoneRef::Zone(zone) || self.zone_b == ZoneRef::Zone(zone)
    }
}

/// One homogeneous material layer of a wall, listed from face A to face B.
#[derive(Debug, Clone)]
pub struct WallLayer<S = f64> {
    /// m, > 0.
    pub thickness: S,
    /// W/(m·K), > 0.
    pub conductivity: S,
    /// kg/m³, > 0.
    pub density: S,
    /// J/(kg·K), > 0.
    pub specific_heat: S,
}

/// Radiative properties of one face of a wall or window.
#[derive(Debug, Clone, Copy)]
pub struct FaceProperties<S = f64> {
    /// Short-wave absorptance in [0, 1].
    pub sw_absorptance: S,
    /// Short-wave reflectance in [0, 1]; absorptance + reflectance ≤ 1.
    pub sw_reflectance: S,
    /// Long-wave emissivity in [0, 1].
    pub lw_emissivity: S,
}

/// Position class of a surface, used by the interior convection
/// correlations and the short-wave repartition groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SurfaceClass {
    Floor,
    Ceiling,
    VerticalWall,
    Window,
    InteriorSeparation,
}

/// Any element attached to an interambiance or a zone.
#[derive(Debug, Clone)]
pub struct Component<S = f64> {
    pub id: ComponentId,
    pub kind: ComponentKind<S>,
}

#[derive(Debug, Clone)]
pub enum ComponentKind<S = f64> {
    Wall(Wall<S>),
    Window(Window<S>),
    HvacSplit(HvacSplitComponent<S>),
    AirLink(AirLink<S>),
}

impl<S> Component<S> {
    /// Interambiance the component is mounted on, if any.
    pub fn interambiance(&self) -> Option<InterambianceId> {
        match &self.kind {
            ComponentKind::Wall(w) => Some(w.interambiance),
            ComponentKind::Window(w) => Some(w.interambiance),
            ComponentKind::AirLink(l) => Some(l.interambiance),
            ComponentKind::HvacSplit(_) => None,
        }
    }

    pub fn zone(&self) -> Option<ZoneId> {
        match &self.kind {
            ComponentKind::HvacSplit(h) => Some(h.zone),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match &self.kind {
            ComponentKind::Wall(_) => "wall",
            ComponentKind::Window(_) => "window",
            ComponentKind::HvacSplit(_) => "hvac split",
            ComponentKind::AirLink(l) => match l.kind {
                AirLinkKind::Crack { .. } => "crack",
                AirLinkKind::LargeOpening { .. } => "large opening",
            },
        }
    }
}

/// Opaque multilayer wall mounted on an interambiance.
#[derive(Debug, Clone)]
pub struct Wall<S = f64> {
    pub interambiance: InterambianceId,
    /// Gross area, m². Windows on the same interambiance are netted off
    /// the conductive area at assembly time.
    pub area: S,
    /// Layers ordered from face A (zone_a side) to face B.
    pub layers: Vec<WallLayer<S>>,
    pub face_a: FaceProperties<S>,
    pub face_b: FaceProperties<S>,
    pub surface_class: SurfaceClass,
    /// When true the B face rests against the ground instead of outdoor
    /// air; the bound ground-coupling model supplies its temperature.
    pub ground_contact: bool,
}

/// Glazed element: pure resistance with a solar transmittance.
#[derive(Debug, Clone)]
pub struct Window<S = f64> {
    pub interambiance: InterambianceId,
    /// m².
    pub area: S,
    /// Solar transmittance in [0, 1].
    pub transmittance: S,
    /// Whole-window conductance, W/(m²·K).
    pub u_value: S,
    pub face_a: FaceProperties<S>,
    pub face_b: FaceProperties<S>,
}

/// Split-system air conditioner serving one zone. Only the descriptive
/// parameters live here; the fidelity level is a model binding.
#[derive(Debug, Clone)]
pub struct HvacSplitComponent<S = f64> {
    pub zone: ZoneId,
    pub unit: crate::hvac::SplitUnit<S>,
}

/// Airflow path through an interambiance.
#[derive(Debug, Clone)]
pub struct AirLink<S = f64> {
    pub interambiance: InterambianceId,
    pub kind: AirLinkKind<S>,
    /// Height of the link above the common pressure datum, m. For large
    /// openings this is the bottom of the opening.
    pub elevation: S,
    /// Wind pressure coefficient for outside-facing links; the facade
    /// azimuth comes from the interambiance.
    pub wind_cp: Option<S>,
    /// Fixed flow used by the prescribed airflow model, kg/s, counted
    /// positive from zone_a to zone_b of the interambiance.
    pub prescribed_flow: S,
}

#[derive(Debug, Clone)]
pub enum AirLinkKind<S = f64> {
    /// Power-law crack: mass flow = C·|ΔP|^n.
    Crack {
        /// kg/(s·Paⁿ), > 0.
        coefficient: S,
        /// Flow exponent in [0.5, 1].
        exponent: S,
    },
    /// Door- or window-scale opening with possible bidirectional flow.
    LargeOpening {
        /// m, > 0.
        width: S,
        /// m, > 0.
        height: S,
        /// Discharge coefficient in (0, 1].
        discharge_coefficient: S,
    },
}

/// Whole building description.
#[derive(Debug, Clone)]
pub struct Building<S = f64> {
    pub name: String,
    /// Free-text morphology tag; no physics effect.
    pub morphology: String,
    pub site: Site<S>,
    pub zones: Vec<Zone<S>>,
    pub interambiances: Vec<Interambiance<S>>,
    pub components: Vec<Component<S>>,
}

/// Severity of one validation finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// Entity a validation finding refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntityRef {
    Building,
    Zone(ZoneId),
    Interambiance(InterambianceId),
    Component(ComponentId),
}

impl fmt::Display for EntityRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntityRef::Building => write!(f, "building"),
            EntityRef::Zone(id) => write!(f, "{id}"),
            EntityRef::Interambiance(id) => write!(f, "{id}"),
            EntityRef::Component(id) => write!(f, "{id}"),
        }
    }
}

/// One validation finding.
#[derive(Debug, Clone)]
pub struct Finding {
    pub severity: Severity,
    pub entity: EntityRef,
    pub message: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}: {}: {}", self.entity, self.message)
    }
}

/// Outcome of [`Building::validate`].
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings
            .iter()
            .filter(|f| f.severity == Severity::Warning)
    }

    pub fn error_count(&self) -> usize {
        self.errors().count()
    }

    pub fn is_ok(&self) -> bool {
        self.error_count() == 0
    }

    fn error(&mut self, entity: EntityRef, message: impl Into<String>) {
        self.findings.push(Finding {
            severity: Severity::Error,
            entity,
            message: message.into(),
        });
    }

    fn warning(&mut self, entity: EntityRef, message: impl Into<String>) {
        self.findings.push(Finding {
            severity: Severity::Warning,
            entity,
            message: message.into(),
        });
    }
}

/// The building as a graph: zones (plus the outside, when referenced) are
/// vertices, interambiances are edges carrying their components.
#[derive(Debug, Clone)]
pub struct ZoneGraph {
    pub vertices: Vec<ZoneRef>,
    pub edges: Vec<GraphEdge>,
    /// Components attached directly to zones (HVAC units).
    pub zone_components: BTreeMap<ZoneId, Vec<ComponentId>>,
}

#[derive(Debug, Clone)]
pub struct GraphEdge {
    pub interambiance: InterambianceId,
    pub zone_a: ZoneRef,
    pub zone_b: ZoneRef,
    pub components: Vec<ComponentId>,
}

/// A building whose description passed validation without errors.
#[derive(Debug, Clone)]
pub struct InvalidBuilding(pub ValidationReport);

impl fmt::Display for InvalidBuilding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "building failed validation:")?;
        for finding in self.0.errors() {
            write!(f, "\n  {finding}")?;
        }
        Ok(())
    }
}

impl std::error::Error for InvalidBuilding {}

impl<S: Scalar> Building<S> {
    pub fn zone(&self, id: ZoneId) -> Option<&Zone<S>> {
        self.zones.iter().find(|z| z.id == id)
    }

    pub fn interambiance(&self, id: InterambianceId) -> Option<&Interambiance<S>> {
        self.interambiances.iter().find(|i| i.id == id)
    }

    pub fn component(&self, id: ComponentId) -> Option<&Component<S>> {
        self.components.iter().find(|c| c.id == id)
    }

    /// Checks every type invariant and the entity reference graph. Pure:
    /// the same building always yields the same report.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let zero = S::zero();
        let one = S::one();

        if self.zones.is_empty() {
            report.error(EntityRef::Building, "building must contain at least one zone");
        }
        if self.site.albedo < zero || self.site.albedo > one {
            report.error(EntityRef::Building, "site albedo must lie in [0, 1]");
        }
        if self.site.latitude < S::lit(-90.0) || self.site.latitude > S::lit(90.0) {
            report.error(EntityRef::Building, "site latitude must lie in [-90, 90] degrees");
        }

        let mut zone_ids = BTreeSet::new();
        for zone in &self.zones {
            let entity = EntityRef::Zone(zone.id);
            if !zone_ids.insert(zone.id) {
                report.error(entity, "duplicate zone id");
            }
            if zone.volume <= zero {
                report.error(entity, "zone volume must be > 0 m³");
            }
            if zone.air_capacitance_multiplier < one {
                report.error(entity, "air capacitance multiplier must be ≥ 1");
            }
            if zone.initial_humidity_ratio < zero || zone.initial_humidity_ratio > S::lit(0.1) {
                report.error(entity, "initial humidity ratio must lie in [0, 0.1] kg/kg");
            }
        }

        let mut ia_ids = BTreeSet::new();
        for ia in &self.interambiances {
            let entity = EntityRef::Interambiance(ia.id);
            if !ia_ids.insert(ia.id) {
                report.error(entity, "duplicate interambiance id");
            }
            if ia.zone_a == ia.zone_b {
                report.error(entity, "interambiance must separate two distinct zones");
            }
            for side in [ia.zone_a, ia.zone_b] {
                if let ZoneRef::Zone(id) = side {
                    if !zone_ids.contains(&id) {
                        report.error(entity, format!("references missing {id}"));
                    }
                }
            }
        }

        let mut component_ids = BTreeSet::new();
        for component in &self.components {
            let entity = EntityRef::Component(component.id);
            if !component_ids.insert(component.id) {
                report.error(entity, "duplicate component id");
            }
            if let Some(ia) = component.interambiance() {
                if !ia_ids.contains(&ia) {
                    report.error(entity, format!("references missing {ia}"));
                }
            }
            if let Some(zone) = component.zone() {
                if !zone_ids.contains(&zone) {
                    report.error(entity, format!("references missing {zone}"));
                }
            }
            match &component.kind {
                ComponentKind::Wall(wall) => {
                    if wall.area <= zero {
                        report.error(entity, "wall area must be > 0 m²");
                    }
                    if wall.layers.is_empty() {
                        report.error(entity, "wall must have at least one layer");
                    }
                    for (i, layer) in wall.layers.iter().enumerate() {
                        if layer.thickness <= zero
                            || layer.conductivity <= zero
                            || layer.density <= zero
                            || layer.specific_heat <= zero
                        {
                            report.error(
                                entity,
                                format!("layer {i}: thickness, conductivity, density and specific heat must all be > 0"),
                            );
                        }
                    }
                    check_faces(&mut report, entity, &wall.face_a, &wall.face_b);
                    if wall.surface_class == SurfaceClass::Window {
                        report.error(entity, "a wall cannot use the window surface class");
                    }
                }
                ComponentKind::Window(window) => {
                    if window.area <= zero {
                        report.error(entity, "window area must be > 0 m²");
                    }
                    if window.transmittance < zero || window.transmittance > one {
                        report.error(entity, "window transmittance must lie in [0, 1]");
                    }
                    if window.u_value <= zero {
                        report.error(entity, "window U-value must be > 0 W/(m²·K)");
                    }
                    check_faces(&mut report, entity, &window.face_a, &window.face_b);
                }
                ComponentKind::HvacSplit(hvac) => {
                    if let Err(msg) = hvac.unit.check() {
                        report.error(entity, msg);
                    }
                }
                ComponentKind::AirLink(link) => match link.kind {
                    AirLinkKind::Crack { coefficient, exponent } => {
                        if coefficient <= zero {
                            report.error(entity, "crack flow coefficient must be > 0");
                        }
                        if exponent < S::lit(0.5) || exponent > one {
                            report.error(entity, "crack flow exponent must lie in [0.5, 1]");
                        }
                    }
                    AirLinkKind::LargeOpening {
                        width,
                        height,
                        discharge_coefficient,
                    } => {
                        if width <= zero || height <= zero {
                            report.error(entity, "opening width and height must be > 0 m");
                        }
                        if discharge_coefficient <= zero || discharge_coefficient > one {
                            report.error(entity, "discharge coefficient must lie in (0, 1]");
                        }
                    }
                },
            }
        }

        // Zones without any outside-facing component never see weather.
        for zone in &self.zones {
            let mut sees_outside = false;
            for component in &self.components {
                if let Some(ia_id) = component.interambiance() {
                    if let Some(ia) = self.interambiance(ia_id) {
                        if ia.faces_outside() && ia.touches(zone.id) {
                            sees_outside = true;
                            break;
                        }
                    }
                }
            }
            if !sees_outside {
                report.warning(
                    EntityRef::Zone(zone.id),
                    "zone has no outside-facing component",
                );
            }
        }

        report
    }

    /// Builds the zone graph. Fails when validation reports errors.
    pub fn topology(&self) -> Result<ZoneGraph, InvalidBuilding> {
        let report = self.validate();
        if !report.is_ok() {
            return Err(InvalidBuilding(report));
        }

        let mut vertices: Vec<ZoneRef> = self.zones.iter().map(|z| ZoneRef::Zone(z.id)).collect();
        if self.interambiances.iter().any(|ia| ia.faces_outside()) {
            vertices.push(ZoneRef::Outside);
        }

        let mut edges: Vec<GraphEdge> = self
            .interambiances
            .iter()
            .map(|ia| GraphEdge {
                interambiance: ia.id,
                zone_a: ia.zone_a,
                zone_b: ia.zone_b,
                components: Vec::new(),
            })
            .collect();
        let mut zone_components: BTreeMap<ZoneId, Vec<ComponentId>> = BTreeMap::new();

        for component in &self.components {
            if let Some(ia) = component.interambiance() {
                let edge = edges
                    .iter_mut()
                    .find(|e| e.interambiance == ia)
                    .expect("validated component references an existing interambiance");
                edge.components.push(component.id);
            } else if let Some(zone) = component.zone() {
                zone_components.entry(zone).or_default().push(component.id);
            }
        }

        Ok(ZoneGraph {
            vertices,
            edges,
            zone_components,
        })
    }

    /// Walls and windows mounted on interambiances touching `zone`.
    pub fn envelope_components(&self, zone: ZoneId) -> Vec<&Component<S>> {
        self.components
            .iter()
            .filter(|c| {
                matches!(c.kind, ComponentKind::Wall(_) | ComponentKind::Window(_))
                    && c.interambiance()
                        .and_then(|ia| self.interambiance(ia))
                        .map(|ia| ia.touches(zone))
                        .unwrap_or(false)
            })
            .collect()
    }
}

fn check_faces<S: Scalar>(
    report: &mut ValidationReport,
    entity: EntityRef,
    face_a: &FaceProperties<S>,
    face_b: &FaceProperties<S>,
) {
    for (name, face) in [("face A", face_a), ("face B", face_b)] {
        let zero = S::zero();
        let one = S::one();
        if face.sw_absorptance < zero
            || face.sw_absorptance > one
            || face.sw_reflectance < zero
            || face.sw_reflectance > one
            || face.lw_emissivity < zero
            || face.lw_emissivity > one
        {
            report.error(entity, format!("{name}: radiative properties must lie in [0, 1]"));
        }
        if face.sw_absorptance + face.sw_reflectance > one + S::lit(1e-12) {
            report.error(
                entity,
                format!("{name}: short-wave absorptance + reflectance exceeds 1"),
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hvac::SplitUnit;

    fn face(alpha: f64, rho: f64) -> FaceProperties {
        FaceProperties {
            sw_absorptance: alpha,
            sw_reflectance: rho,
            lw_emissivity: 0.9,
        }
    }

    fn layer() -> WallLayer {
        WallLayer {
            thickness: 0.2,
            conductivity: 1.4,
            density: 2200.0,
            specific_heat: 880.0,
        }
    }

    fn site() -> Site {
        Site {
            latitude: -21.0,
            longitude: 55.5,
            altitude: 50.0,
            albedo: 0.2,
            time_zone_offset: 4.0,
        }
    }

    fn zone(id: u32) -> Zone {
        Zone {
            id: ZoneId(id),
            name: format!("zone {id}"),
            volume: 60.0,
            air_capacitance_multiplier: 1.0,
            initial_temperature: 25.0,
            initial_humidity_ratio: 0.01,
        }
    }

    fn wall(id: u32, ia: u32) -> Component {
        Component {
            id: ComponentId(id),
            kind: ComponentKind::Wall(Wall {
                interambiance: InterambianceId(ia),
                area: 10.0,
                layers: vec![layer()],
                face_a: face(0.6, 0.4),
                face_b: face(0.6, 0.4),
                surface_class: SurfaceClass::VerticalWall,
                ground_contact: false,
            }),
        }
    }

    fn outside_ia(id: u32, zone: u32) -> Interambiance {
        Interambiance {
            id: InterambianceId(id),
            zone_a: ZoneRef::Zone(ZoneId(zone)),
            zone_b: ZoneRef::Outside,
            azimuth: 0.0,
            tilt: 90.0,
        }
    }

    fn single_zone_building() -> Building {
        Building {
            name: "one zone".into(),
            morphology: String::new(),
            site: site(),
            zones: vec![zone(1)],
            interambiances: vec![outside_ia(1, 1)],
            components: vec![wall(1, 1)],
        }
    }

    /// Five zones, twelve interambiances, seventeen components, all
    /// references valid.
    fn five_zone_building() -> Building {
        let zones: Vec<Zone> = (1..=5).map(zone).collect();
        let mut interambiances = Vec::new();
        // Interior separations in a ring: 1-2, 2-3, 3-4, 4-5 plus 1-3, 2-4, 3-5.
        let interior_pairs = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 3), (2, 4), (3, 5)];
        for (n, (a, b)) in interior_pairs.iter().enumerate() {
            interambiances.push(Interambiance {
                id: InterambianceId(n as u32 + 1),
                zone_a: ZoneRef::Zone(ZoneId(*a)),
                zone_b: ZoneRef::Zone(ZoneId(*b)),
                azimuth: 0.0,
                tilt: 90.0,
            });
        }
        // One outside facade per zone: ids 8..=12.
        for z in 1..=5u32 {
            interambiances.push(outside_ia(7 + z, z));
        }
        assert_eq!(interambiances.len(), 12);
        // 12 walls (one per interambiance) + 4 windows + 1 HVAC unit = 17.
        let mut components: Vec<Component> = (1..=12).map(|n| wall(n, n)).collect();
        for (k, ia) in [8u32, 9, 10, 11].iter().enumerate() {
            components.push(Component {
                id: ComponentId(13 + k as u32),
                kind: ComponentKind::Window(Window {
                    interambiance: InterambianceId(*ia),
                    area: 2.0,
                    transmittance: 0.85,
                    u_value: 5.8,
                    face_a: face(0.1, 0.1),
                    face_b: face(0.1, 0.1),
                }),
            });
        }
        components.push(Component {
            id: ComponentId(17),
            kind: ComponentKind::HvacSplit(HvacSplitComponent {
                zone: ZoneId(1),
                unit: SplitUnit::example(),
            }),
        });
        Building {
            name: "five zones".into(),
            morphology: "large tertiary".into(),
            site: site(),
            zones,
            interambiances,
            components,
        }
    }

    #[test]
    fn five_zone_fixture_validates_clean() {
        let b = five_zone_building();
        assert_eq!(b.zones.len(), 5);
        assert_eq!(b.interambiances.len(), 12);
        assert_eq!(b.components.len(), 17);
        let report = b.validate();
        assert_eq!(report.error_count(), 0, "{report:?}");
    }

    #[test]
    fn dangling_interambiance_reference_is_an_error() {
        let mut b = single_zone_building();
        b.components.push(wall(2, 99));
        let report = b.validate();
        assert_eq!(report.error_count(), 1);
        let finding = report.errors().next().unwrap();
        assert!(finding.message.contains("99"), "{finding}");
    }

    #[test]
    fn absorptance_plus_reflectance_over_one_is_an_error() {
        let mut b = single_zone_building();
        if let ComponentKind::Wall(w) = &mut b.components[0].kind {
            w.face_a = face(0.7, 0.4);
        }
        let report = b.validate();
        assert_eq!(report.error_count(), 1);
        assert!(report.errors().next().unwrap().message.contains("exceeds 1"));
    }

    #[test]
    fn validation_is_pure() {
        let b = five_zone_building();
        let a = format!("{:?}", b.validate());
        let c = format!("{:?}", b.validate());
        assert_eq!(a, c);
    }

    #[test]
    fn zone_without_outside_component_warns() {
        let mut b = single_zone_building();
        b.zones.push(zone(2));
        b.interambiances.push(Interambiance {
            id: InterambianceId(2),
            zone_a: ZoneRef::Zone(ZoneId(1)),
            zone_b: ZoneRef::Zone(ZoneId(2)),
            azimuth: 0.0,
            tilt: 90.0,
        });
        b.components.push(wall(2, 2));
        let report = b.validate();
        assert_eq!(report.error_count(), 0);
        assert!(report
            .warnings()
            .any(|w| w.entity == EntityRef::Zone(ZoneId(2))));
    }

    #[test]
    fn topology_single_zone() {
        let graph = single_zone_building().topology().unwrap();
        assert_eq!(graph.vertices.len(), 2);
        assert_eq!(graph.edges.len(), 1);
    }

    #[test]
    fn topology_two_zones_three_edges() {
        let mut b = single_zone_building();
        b.zones.push(zone(2));
        b.interambiances.push(Interambiance {
            id: InterambianceId(2),
            zone_a: ZoneRef::Zone(ZoneId(1)),
            zone_b: ZoneRef::Zone(ZoneId(2)),
            azimuth: 0.0,
            tilt: 90.0,
        });
        b.interambiances.push(outside_ia(3, 2));
        b.components.push(wall(2, 2));
        b.components.push(wall(3, 3));
        let graph = b.topology().unwrap();
        assert_eq!(graph.vertices.len(), 3);
        assert_eq!(graph.edges.len(), 3);
    }

    #[test]
    fn topology_five_zone_counts() {
        let graph = five_zone_building().topology().unwrap();
        assert_eq!(graph.vertices.len(), 6);
        assert_eq!(graph.edges.len(), 12);
        // Edge component lists partition the interambiance-mounted components.
        let edge_total: usize = graph.edges.iter().map(|e| e.components.len()).sum();
        assert_eq!(edge_total, 16);
        assert_eq!(graph.zone_components[&ZoneId(1)], vec![ComponentId(17)]);
    }

    #[test]
    fn topology_rejects_invalid_building() {
        let mut b = single_zone_building();
        b.components.push(wall(2, 99));
        assert!(b.topology().is_err());
    }
}
