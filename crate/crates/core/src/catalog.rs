//! Catalog of the interchangeable physical models.
//!
//! Nine phenomena (plus ground coupling) each expose a model slot. A slot
//! is bound at exactly one entity level — building, zone or component —
//! and every simulated entity resolves to a variant, explicitly bound or
//! defaulted, so lookups during simulation never fail.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::airflow::AirflowModel;
use crate::conduction::DiscretizationScheme;
use crate::convection::{IndoorConvectionModel, OutdoorConvectionModel};
use crate::hvac::HvacModel;
use crate::model::{Building, ComponentId, ComponentKind, ZoneId};
use crate::radiation::{IndoorLwModel, IndoorSwModel};
use crate::scalar::Scalar;
use crate::sky::SkyModel;
use crate::solar::DiffuseModel;

/// The phenomena for which a model variant is selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelSlot {
    AirflowTransfer,
    SkyTemperature,
    OutdoorConvection,
    DiffuseReconstitution,
    IndoorConvection,
    IndoorLongwave,
    IndoorShortwave,
    HvacSystem,
    HeatConduction,
    GroundCoupling,
}

impl ModelSlot {
    pub const ALL: [ModelSlot; 10] = [
        ModelSlot::AirflowTransfer,
        ModelSlot::SkyTemperature,
        ModelSlot::OutdoorConvection,
        ModelSlot::DiffuseReconstitution,
        ModelSlot::IndoorConvection,
        ModelSlot::IndoorLongwave,
        ModelSlot::IndoorShortwave,
        ModelSlot::HvacSystem,
        ModelSlot::HeatConduction,
        ModelSlot::GroundCoupling,
    ];
}

impl fmt::Display for ModelSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ModelSlot::AirflowTransfer => "airflow transfer",
            ModelSlot::SkyTemperature => "sky temperature",
            ModelSlot::OutdoorConvection => "outdoor convection",
            ModelSlot::DiffuseReconstitution => "diffuse reconstitution",
            ModelSlot::IndoorConvection => "indoor convection",
            ModelSlot::IndoorLongwave => "indoor long-wave radiation",
            ModelSlot::IndoorShortwave => "indoor short-wave repartition",
            ModelSlot::HvacSystem => "HVAC system",
            ModelSlot::HeatConduction => "heat conduction",
            ModelSlot::GroundCoupling => "ground coupling",
        };
        f.write_str(name)
    }
}

/// Entity level a slot binds at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BindingLevel {
    Building,
    Zone,
    Component,
}

impl fmt::Display for BindingLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BindingLevel::Building => "building",
            BindingLevel::Zone => "zone",
            BindingLevel::Component => "component",
        })
    }
}

/// Fixed slot → level allocation.
///
/// Global phenomena (airflow, sky, outdoor convection, diffuse
/// reconstitution) bind at building level; the interior exchange models
/// bind per zone; conduction, HVAC and ground coupling bind per
/// component, so two walls of the same zone may carry different
/// conduction fidelities.
pub fn allocation_level(slot: ModelSlot) -> BindingLevel {
    match slot {
        ModelSlot::AirflowTransfer
        | ModelSlot::SkyTemperature
        | ModelSlot::OutdoorConvection
        | ModelSlot::DiffuseReconstitution => BindingLevel::Building,
        ModelSlot::IndoorConvection | ModelSlot::IndoorLongwave | ModelSlot::IndoorShortwave => {
            BindingLevel::Zone
        }
        ModelSlot::HvacSystem | ModelSlot::HeatConduction | ModelSlot::GroundCoupling => {
            BindingLevel::Component
        }
    }
}

/// Ground temperature model for ground-contact walls.
#[derive(Debug, Clone, PartialEq)]
pub enum GroundModel<S = f64> {
    /// Fixed deep-ground temperature, °C.
    Constant { temperature: S },
    /// One temperature per calendar month, °C.
    Monthly { temperatures: [S; 12] },
}

impl<S: Scalar> GroundModel<S> {
    pub fn temperature(&self, month: u32) -> S {
        match self {
            GroundModel::Constant { temperature } => *temperature,
            GroundModel::Monthly { temperatures } => {
                temperatures[(month.clamp(1, 12) - 1) as usize]
            }
        }
    }
}

/// Building-level model selections.
#[derive(Debug, Clone, PartialEq)]
pub struct BuildingModels<S = f64> {
    pub airflow: AirflowModel,
    pub sky_temperature: SkyModel,
    pub outdoor_convection: OutdoorConvectionModel<S>,
    pub diffuse: DiffuseModel,
}

/// Zone-level model selections.
#[derive(Debug, Clone, PartialEq)]
pub struct ZoneModels<S = f64> {
    pub indoor_convection: IndoorConvectionModel<S>,
    pub indoor_longwave: IndoorLwModel<S>,
    pub indoor_shortwave: IndoorSwModel,
}

/// Component-level model selections. Conduction applies to walls and
/// windows, the HVAC level to split units, ground coupling to
/// ground-contact walls; the unused fields of a component are inert.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentModels<S = f64> {
    pub conduction: DiscretizationScheme,
    pub hvac: HvacModel,
    pub ground: GroundModel<S>,
}

/// A concrete variant selection; the slot is implied by the variant type.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelChoice<S = f64> {
    Airflow(AirflowModel),
    SkyTemperature(SkyModel),
    OutdoorConvection(OutdoorConvectionModel<S>),
    DiffuseReconstitution(DiffuseModel),
    IndoorConvection(IndoorConvectionModel<S>),
    IndoorLongwave(IndoorLwModel<S>),
    IndoorShortwave(IndoorSwModel),
    HvacSystem(HvacModel),
    HeatConduction(DiscretizationScheme),
    GroundCoupling(GroundModel<S>),
}

impl<S: Scalar> ModelChoice<S> {
    pub fn slot(&self) -> ModelSlot {
        match self {
            ModelChoice::Airflow(_) => ModelSlot::AirflowTransfer,
            ModelChoice::SkyTemperature(_) => ModelSlot::SkyTemperature,
            ModelChoice::OutdoorConvection(_) => ModelSlot::OutdoorConvection,
            ModelChoice::DiffuseReconstitution(_) => ModelSlot::DiffuseReconstitution,
            ModelChoice::IndoorConvection(_) => ModelSlot::IndoorConvection,
            ModelChoice::IndoorLongwave(_) => ModelSlot::IndoorLongwave,
            ModelChoice::IndoorShortwave(_) => ModelSlot::IndoorShortwave,
            ModelChoice::HvacSystem(_) => ModelSlot::HvacSystem,
            ModelChoice::HeatConduction(_) => ModelSlot::HeatConduction,
            ModelChoice::GroundCoupling(_) => ModelSlot::GroundCoupling,
        }
    }

    /// The default variant of a slot, as a choice.
    pub fn default_for(slot: ModelSlot) -> Self {
        let d = Defaults::<S>::new();
        match slot {
            ModelSlot::AirflowTransfer => ModelChoice::Airflow(d.building.airflow),
            ModelSlot::SkyTemperature => ModelChoice::SkyTemperature(d.building.sky_temperature),
            ModelSlot::OutdoorConvection => {
                ModelChoice::OutdoorConvection(d.building.outdoor_convection)
            }
            ModelSlot::DiffuseReconstitution => {
                ModelChoice::DiffuseReconstitution(d.building.diffuse)
            }
            ModelSlot::IndoorConvection => ModelChoice::IndoorConvection(d.zone.indoor_convection),
            ModelSlot::IndoorLongwave => ModelChoice::IndoorLongwave(d.zone.indoor_longwave),
            ModelSlot::IndoorShortwave => ModelChoice::IndoorShortwave(d.zone.indoor_shortwave),
            ModelSlot::HvacSystem => ModelChoice::HvacSystem(d.component.hvac),
            ModelSlot::HeatConduction => ModelChoice::HeatConduction(d.component.conduction),
            ModelSlot::GroundCoupling => ModelChoice::GroundCoupling(d.component.ground),
        }
    }
}

/// Entity a choice is bound to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BindingTarget {
    Building,
    Zone(ZoneId),
    Component(ComponentId),
}

impl BindingTarget {
    pub fn level(self) -> BindingLevel {
        match self {
            BindingTarget::Building => BindingLevel::Building,
            BindingTarget::Zone(_) => BindingLevel::Zone,
            BindingTarget::Component(_) => BindingLevel::Component,
        }
    }
}

impl fmt::Display for BindingTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BindingTarget::Building => write!(f, "building"),
            BindingTarget::Zone(id) => write!(f, "{id}"),
            BindingTarget::Component(id) => write!(f, "{id}"),
        }
    }
}

/// Errors raised while resolving bindings.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum BindError {
    #[error("{slot} binds at {expected} level, not to {target}")]
    LevelMismatch {
        slot: ModelSlot,
        expected: BindingLevel,
        target: BindingTarget,
    },
    #[error("{target} does not exist in the building description")]
    UnknownEntity { target: BindingTarget },
    #[error("{slot} cannot be bound to {kind} {target}")]
    KindMismatch {
        slot: ModelSlot,
        kind: &'static str,
        target: BindingTarget,
    },
}

/// Default variant per slot: the cheapest member of each slot, suited to
/// early design-stage runs.
struct Defaults<S> {
    building: BuildingModels<S>,
    zone: ZoneModels<S>,
    component: ComponentModels<S>,
}

impl<S: Scalar> Defaults<S> {
    fn new() -> Self {
        Self {
            building: BuildingModels {
                airflow: AirflowModel::Prescribed,
                sky_temperature: SkyModel::AirTemperature,
                outdoor_convection: OutdoorConvectionModel::Constant {
                    h: S::lit(11.7),
                },
                diffuse: DiffuseModel::Auto,
            },
            zone: ZoneModels {
                indoor_convection: IndoorConvectionModel::Constant { h: S::lit(3.0) },
                indoor_longwave: IndoorLwModel::mrt_star_default(),
                indoor_shortwave: IndoorSwModel::Simple,
            },
            component: ComponentModels {
                conduction: DiscretizationScheme::R2C,
                hvac: HvacModel::None,
                ground: GroundModel::Constant {
                    temperature: S::lit(15.0),
                },
            },
        }
    }
}

/// Fully resolved model selections for every entity of one building.
#[derive(Debug, Clone)]
pub struct ModelBindingSet<S = f64> {
    building: BuildingModels<S>,
    zone_default: ZoneModels<S>,
    zones: BTreeMap<ZoneId, ZoneModels<S>>,
    component_default: ComponentModels<S>,
    components: BTreeMap<ComponentId, ComponentModels<S>>,
}

impl<S: Scalar> Default for ModelBindingSet<S> {
    fn default() -> Self {
        defaults()
    }
}

/// The all-defaults binding set.
pub fn defaults<S: Scalar>() -> ModelBindingSet<S> {
    let d = Defaults::new();
    ModelBindingSet {
        building: d.building,
        zone_default: d.zone,
        zones: BTreeMap::new(),
        component_default: d.component,
        components: BTreeMap::new(),
    }
}

impl<S: Scalar> ModelBindingSet<S> {
    pub fn building(&self) -> &BuildingModels<S> {
        &self.building
    }

    /// Models for a zone; unbound zones resolve to the defaults.
    pub fn zone(&self, id: ZoneId) -> &ZoneModels<S> {
        self.zones.get(&id).unwrap_or(&self.zone_default)
    }

    /// Models for a component; unbound components resolve to the defaults.
    pub fn component(&self, id: ComponentId) -> &ComponentModels<S> {
        self.components.get(&id).unwrap_or(&self.component_default)
    }

    fn apply(
        &mut self,
        building: &Building<S>,
        target: BindingTarget,
        choice: ModelChoice<S>,
    ) -> Result<(), BindError> {
        let slot = choice.slot();
        let expected = allocation_level(slot);
        if target.level() != expected {
            return Err(BindError::LevelMismatch {
                slot,
                expected,
                target,
            });
        }
        match target {
            BindingTarget::Building => {
                match choice {
                    ModelChoice::Airflow(m) => self.building.airflow = m,
                    ModelChoice::SkyTemperature(m) => self.building.sky_temperature = m,
                    ModelChoice::OutdoorConvection(m) => self.building.outdoor_convection = m,
                    ModelChoice::DiffuseReconstitution(m) => self.building.diffuse = m,
                    _ => unreachable!("level checked above"),
                }
                Ok(())
            }
            BindingTarget::Zone(id) => {
                if building.zone(id).is_none() {
                    return Err(BindError::UnknownEntity { target });
                }
                let entry = self
                    .zones
                    .entry(id)
                    .or_insert_with(|| self.zone_default.clone());
                match choice {
                    ModelChoice::IndoorConvection(m) => entry.indoor_convection = m,
                    ModelChoice::IndoorLongwave(m) => entry.indoor_longwave = m,
                    ModelChoice::IndoorShortwave(m) => entry.indoor_shortwave = m,
                    _ => unreachable!("level checked above"),
                }
                Ok(())
            }
            BindingTarget::Component(id) => {
                let component = building
                    .component(id)
                    .ok_or(BindError::UnknownEntity { target })?;
                let kind = component.kind_name();
                let compatible = match (&choice, &component.kind) {
                    (ModelChoice::HeatConduction(_), ComponentKind::Wall(_))
                    | (ModelChoice::HeatConduction(_), ComponentKind::Window(_))
                    | (ModelChoice::HvacSystem(_), ComponentKind::HvacSplit(_))
                    | (ModelChoice::GroundCoupling(_), ComponentKind::Wall(_)) => true,
                    _ => false,
                };
                if !compatible {
                    return Err(BindError::KindMismatch { slot, kind, target });
                }
                let entry = self
                    .components
                    .entry(id)
                    .or_insert_with(|| self.component_default.clone());
                match choice {
                    ModelChoice::HeatConduction(m) => entry.conduction = m,
                    ModelChoice::HvacSystem(m) => entry.hvac = m,
                    ModelChoice::GroundCoupling(m) => entry.ground = m,
                    _ => unreachable!("level checked above"),
                }
                Ok(())
            }
        }
    }
}

/// Resolves explicit choices over the defaults. Every choice must match
/// its slot's allocation level and name an existing, compatible entity;
/// entities left unmentioned receive the defaults.
pub fn bind<S: Scalar>(
    building: &Building<S>,
    choices: impl IntoIterator<Item = (BindingTarget, ModelChoice<S>)>,
) -> Result<ModelBindingSet<S>, BindError> {
    let mut set = defaults();
    for (target, choice) in choices {
        set.apply(building, target, choice)?;
    }
    Ok(set)
}
