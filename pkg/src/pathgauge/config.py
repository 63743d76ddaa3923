"""Scenario configuration schema (JSON) and its translation to library objects.

A scenario names one field, a set of path families, and a list of tasks.
Validation is complete before anything is computed, so a bad config never
produces partial output.  See the README for the full schema.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Annotated, Literal, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from . import fields as fieldlib
from . import gauges
from .errors import ConfigError
from .paths import BUILTIN_NAMES, builtin_path, waypoint_path
from .spacetime import PRESETS, Constants

SCHEMA_VERSION = 1

Vec3 = Annotated[list[float], Field(min_length=3, max_length=3)]
Vec4 = Annotated[list[float], Field(min_length=4, max_length=4)]


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)


class ConstantsSpec(_Model):
    preset: Literal["natural", "cgs"] | None = None
    hbar: float | None = Field(default=None, gt=0)
    c: float | None = Field(default=None, gt=0)
    e: float | None = Field(default=None, gt=0)

    def build(self) -> Constants:
        base = PRESETS[self.preset or "natural"]
        return Constants(
            hbar=self.hbar if self.hbar is not None else base.hbar,
            c=self.c if self.c is not None else base.c,
            e=self.e if self.e is not None else base.e,
        )


class UniformFieldSpec(_Model):
    kind: Literal["uniform"]
    E0: Vec3 = [0.0, 0.0, 0.0]
    B0: Vec3 = [0.0, 0.0, 0.0]


class ZeroFieldSpec(_Model):
    kind: Literal["zero"]


class MonopoleSpec(_Model):
    kind: Literal["monopole"]
    g: float
    far_radius: float = Field(default=1e4, gt=0)


class DiskSpec(_Model):
    kind: Literal["disk"]
    B0: float
    r0: float = Field(gt=0)
    far_radius: float | None = Field(default=None, gt=0)


class EBlockSpec(_Model):
    kind: Literal["eblock"]
    E0: float
    dt: float = Field(gt=0)
    dx: float = Field(gt=0)


FieldSpec = Annotated[
    Union[UniformFieldSpec, ZeroFieldSpec, MonopoleSpec, DiskSpec, EBlockSpec], Field(discriminator="kind")
]


def build_field(spec, constants: Constants):
    if spec.kind == "uniform":
        return fieldlib.uniform_field(spec.E0, spec.B0)
    if spec.kind == "zero":
        return fieldlib.zero_field()
    if spec.kind == "monopole":
        return fieldlib.monopole(spec.g, far_radius=spec.far_radius)
    if spec.kind == "disk":
        return fieldlib.confined_magnetic_disk(spec.B0, spec.r0, far_radius=spec.far_radius)
    return fieldlib.confined_electric_block(spec.E0, spec.dt, spec.dx, c=constants.c)


class PathSpec(_Model):
    """Either a builtin family (with parameters) or explicit waypoints.

    Waypoint paths start at the first point and end at the evaluation point.
    """

    builtin: str | None = None
    params: dict[str, float] = {}
    waypoints: list[Vec4] | None = None

    @model_validator(mode="after")
    def _one_kind(self):
        if (self.builtin is None) == (self.waypoints is None):
            raise ValueError("a path needs exactly one of 'builtin' or 'waypoints'")
        if self.builtin is not None and self.builtin not in BUILTIN_NAMES:
            raise ValueError(f"unknown builtin path {self.builtin!r}; choose from {', '.join(BUILTIN_NAMES)}")
        if self.waypoints is not None and not self.waypoints:
            raise ValueError("waypoint list is empty")
        return self

    def build(self, name: str):
        if self.builtin is not None:
            return builtin_path(self.builtin, **self.params)
        return waypoint_path(self.waypoints, name=name)


class RandomGrid(_Model):
    n: int = Field(gt=0)
    low: Vec4
    high: Vec4


class GridSpec(_Model):
    """Evaluation points: explicit, a tensor grid (lo, hi, n per axis), or seeded random."""

    points: list[Vec4] | None = None
    axes: Annotated[list[tuple[float, float, int]], Field(min_length=4, max_length=4)] | None = None
    random: RandomGrid | None = None

    @model_validator(mode="after")
    def _one_kind(self):
        if sum(v is not None for v in (self.points, self.axes, self.random)) != 1:
            raise ValueError("a grid needs exactly one of 'points', 'axes' or 'random'")
        if self.points is not None and not self.points:
            raise ValueError("grid point list is empty")
        if self.axes is not None and any(n < 1 for _, _, n in self.axes):
            raise ValueError("grid axes need at least one point each")
        return self

    def build(self, seed: int) -> np.ndarray:
        if self.points is not None:
            return np.array(self.points, dtype=float)
        if self.axes is not None:
            lines = [np.linspace(lo, hi, n) for lo, hi, n in self.axes]
            mesh = np.meshgrid(*lines, indexing="ij")
            return np.stack([m.ravel() for m in mesh], axis=-1)
        rng = np.random.default_rng(seed)
        return rng.uniform(self.random.low, self.random.high, size=(self.random.n, 4))


class ClosedFormSpec(_Model):
    name: str
    params: dict[str, Union[float, list[float]]] = {}

    @field_validator("name")
    @classmethod
    def _known(cls, v):
        if v not in gauges.REGISTRY:
            raise ValueError(f"unknown closed form {v!r}; choose from {', '.join(gauges.REGISTRY)}")
        return v


class _Task(_Model):
    id: str = Field(pattern=r"^[A-Za-z0-9_.-]+$")


class PotentialTask(_Task):
    kind: Literal["potential"]
    path: str
    form: Literal["plain", "antisymmetrized"] = "plain"
    grid: GridSpec


class GaugeCompareTask(_Task):
    kind: Literal["gauge_compare"]
    path: str
    closed_form: ClosedFormSpec
    grid: GridSpec


class TransformTask(_Task):
    kind: Literal["transform"]
    path_a: str
    path_b: str
    grid: GridSpec
    probe_step: float = Field(default=1e-3, gt=0)


class SurfaceSpecModel(_Model):
    kind: Literal["homotopy", "rectangle", "sphere_slice"]
    corner: Vec4 | None = None
    edge_u: Vec4 | None = None
    edge_v: Vec4 | None = None
    radius: float = Field(default=1.0, gt=0)
    phi: float | None = None

    @model_validator(mode="after")
    def _complete(self):
        if self.kind == "rectangle" and None in (self.corner, self.edge_u, self.edge_v):
            raise ValueError("a rectangle surface needs corner, edge_u and edge_v")
        if self.kind == "sphere_slice" and self.phi is None:
            raise ValueError("a sphere_slice surface needs phi")
        return self


class FluxTask(_Task):
    """Flux by one route.

    loop: potential of ``potential_path`` around path_a then path_b reversed.
    surface: through ``surface`` (homotopy uses path_a, path_b at ``x``).
    open: potential of path_b integrated along path_a.
    slice_sweep: monopole-style sphere slices at each of ``phis``.
    full_sphere: slices closing up to 2 pi.
    """

    kind: Literal["flux"]
    route: Literal["loop", "surface", "open", "slice_sweep", "full_sphere"]
    path_a: str | None = None
    path_b: str | None = None
    potential_path: str | None = None
    winding: int = Field(default=1, ge=1)
    x: Vec4 | None = None
    surface: SurfaceSpecModel | None = None
    phis: list[float] | None = None
    radius: float = Field(default=1.0, gt=0)

    @model_validator(mode="after")
    def _inputs(self):
        need = {
            "loop": ("path_a", "path_b", "potential_path", "x"),
            "surface": ("surface",),
            "open": ("path_a", "path_b", "x"),
            "slice_sweep": ("phis",),
            "full_sphere": (),
        }[self.route]
        missing = [k for k in need if getattr(self, k) is None]
        if missing:
            raise ValueError(f"flux route {self.route!r} needs {', '.join(missing)}")
        if self.route == "surface" and self.surface.kind == "homotopy":
            if self.path_a is None or self.path_b is None or self.x is None:
                raise ValueError("a homotopy surface needs path_a, path_b and x")
        if self.route == "slice_sweep" and not self.phis:
            raise ValueError("slice_sweep needs at least one phi")
        return self


class DiracSpec(_Model):
    g: float
    charges: list[float] = Field(min_length=1)


class QuantizeTask(_Task):
    """Phase checks on a flux task's result (per charge), raw fluxes, or the Dirac condition."""

    kind: Literal["quantize"]
    flux_task: str | None = None
    charges: list[float] | None = None
    fluxes: list[float] | None = None
    dirac: DiracSpec | None = None

    @model_validator(mode="after")
    def _one_source(self):
        if sum(v is not None for v in (self.flux_task, self.fluxes, self.dirac)) != 1:
            raise ValueError("quantize needs exactly one of 'flux_task', 'fluxes' or 'dirac'")
        if self.fluxes is not None and not self.fluxes:
            raise ValueError("fluxes list is empty")
        if self.charges is not None and not self.charges:
            raise ValueError("charges list is empty")
        return self


class ClassicalTask(_Task):
    kind: Literal["classical"]
    y_init: Vec4
    u_init: Vec4
    s_span: tuple[float, float]
    samples: int = Field(default=65, ge=2)
    charge: float = 1.0
    mass: float = Field(default=1.0, gt=0)
    tol: float = Field(default=1e-10, gt=0)


class PairSpec(_Model):
    positron: list[Annotated[list[float], Field(min_length=2, max_length=2)]] | None = None
    electron: list[Annotated[list[float], Field(min_length=2, max_length=2)]] | None = None
    rectangle: tuple[float, float] | None = None

    @model_validator(mode="after")
    def _one_kind(self):
        explicit = self.positron is not None or self.electron is not None
        if explicit == (self.rectangle is not None):
            raise ValueError("a pair needs either 'rectangle' [cT, L] or both world lines")
        if explicit and (self.positron is None or self.electron is None):
            raise ValueError("a pair needs both positron and electron world lines")
        return self


class OnedTask(_Task):
    kind: Literal["oned"]
    pair: PairSpec
    charge: float = Field(default=1.0, gt=0)
    alpha1: float = Field(gt=0)


TaskSpec = Annotated[
    Union[PotentialTask, GaugeCompareTask, TransformTask, FluxTask, QuantizeTask, ClassicalTask, OnedTask],
    Field(discriminator="kind"),
]


class Tolerances(_Model):
    quad_tol: float = Field(default=1e-10, gt=0)
    quad_order: int = Field(default=32, ge=2)
    phase_tol: float = Field(default=1e-6, gt=0)


class Scenario(_Model):
    schema_version: Literal[1]
    name: str = Field(pattern=r"^[A-Za-z0-9_.-]+$")
    constants: ConstantsSpec = ConstantsSpec()
    field: FieldSpec
    paths: dict[str, PathSpec] = {}
    tolerances: Tolerances = Tolerances()
    seed: int = 0
    tasks: list[TaskSpec] = Field(min_length=1)

    @model_validator(mode="after")
    def _references(self):
        ids = [t.id for t in self.tasks]
        dup = {i for i in ids if ids.count(i) > 1}
        if dup:
            raise ValueError(f"duplicate task ids: {', '.join(sorted(dup))}")
        seen = set()
        for t in self.tasks:
            for attr in ("path", "path_a", "path_b", "potential_path"):
                ref = getattr(t, attr, None)
                if ref is not None and ref not in self.paths:
                    raise ValueError(f"task {t.id!r}: unknown path {ref!r}")
            if t.kind == "quantize" and t.flux_task is not None:
                src = next((s for s in self.tasks if s.id == t.flux_task), None)
                if src is None or t.flux_task not in seen or src.kind != "flux":
                    raise ValueError(f"task {t.id!r}: flux_task must name an earlier flux task")
                if src.route == "slice_sweep":
                    raise ValueError(f"task {t.id!r}: flux_task must produce a single flux")
            seen.add(t.id)
        return self


def parse_scenario(data) -> Scenario:
    """Validate a config mapping; raises ConfigError with the validation report."""
    try:
        return Scenario.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(str(exc)) from None


def load_scenario(path) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    return parse_scenario(data)


def dump_scenario(scenario: Scenario) -> str:
    return json.dumps(scenario.model_dump(mode="json", exclude_none=True), indent=2, sort_keys=False) + "\n"
