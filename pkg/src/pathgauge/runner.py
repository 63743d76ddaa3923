"""Execute a validated scenario and format its results.

Every task produces one CSV table.  Numbers are printed with 17 significant
digits and rows keep the order of the input grid, so identical configs give
byte-identical files regardless of thread count.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import flux as fluxlib
from . import gauges
from .classical import integrate_worldline
from .config import Scenario, build_field
from .oned import PairGeometry, check_1d_quantization, pair_flux, pair_flux_quadrature
from .paths import LoopSpec
from .potential import path_transform, potential_function, potential_grid
from .quantization import check_phase, dirac_condition
from .spacetime import lower, minkowski_dot


def fmt(v) -> str:
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return f"{float(v):.17g}"


@dataclass
class TaskOutput:
    id: str
    header: list[str]
    rows: list[list] = field(default_factory=list)
    summary: list[str] = field(default_factory=list)
    value: float | None = None  # single flux, for downstream quantize tasks

    def csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([fmt(v) for v in row])
        return buf.getvalue()


SUMMARY_ROWS = 5


def _vec(v) -> str:
    return " ".join(f"{float(c) + 0.0:10.4g}" for c in v)  # + 0.0 turns -0 into 0


POTENTIAL_HEADER = ["x0", "x1", "x2", "x3", "A_0", "A_1", "A_2", "A_3", "err"]
QUANT_HEADER = ["phase", "n", "residual", "quantized"]


class Runner:
    def __init__(self, scenario: Scenario, *, workers: int | None = None):
        self.sc = scenario
        self.workers = workers
        self.constants = scenario.constants.build()
        self.field = build_field(scenario.field, self.constants)
        self.paths = {name: spec.build(name) for name, spec in scenario.paths.items()}
        tol = scenario.tolerances
        self.quad = {"order": tol.quad_order, "tol": tol.quad_tol}
        self.outputs: dict[str, TaskOutput] = {}

    def run(self) -> list[TaskOutput]:
        for task in self.sc.tasks:
            self.outputs[task.id] = getattr(self, f"_run_{task.kind}")(task)
        return list(self.outputs.values())

    def _grid(self, spec):
        return spec.build(self.sc.seed)

    def _run_potential(self, t):
        out = TaskOutput(t.id, POTENTIAL_HEADER)
        samples = potential_grid(self.field, self.paths[t.path], self._grid(t.grid), t.form,
                                 workers=self.workers, **self.quad)
        for s in samples:
            out.rows.append([*s.x, *s.A, s.err_estimate])
        out.summary.append(f"{len(samples)} points, max quadrature error {max(s.err_estimate for s in samples):.3g}")
        shown = samples[:SUMMARY_ROWS]
        out.summary.append(f"{'x':>43}   {'A_mu (covariant)':>43}   {'A^mu (contravariant)':>43}")
        for s in shown:
            out.summary.append("   ".join(_vec(v) for v in (s.x, s.A, s.contravariant)))
        if len(samples) > len(shown):
            out.summary.append(f"(first {len(shown)} of {len(samples)} rows; all rows are in the CSV)")
        return out

    def _run_gauge_compare(self, t):
        header = POTENTIAL_HEADER + ["ref_0", "ref_1", "ref_2", "ref_3", "dev"]
        out = TaskOutput(t.id, header)
        closed = gauges.REGISTRY[t.closed_form.name](**t.closed_form.params)
        samples = potential_grid(self.field, self.paths[t.path], self._grid(t.grid), workers=self.workers, **self.quad)
        for s in samples:
            ref = lower(np.asarray(closed(s.x), dtype=float))
            out.rows.append([*s.x, *s.A, s.err_estimate, *ref, float(np.max(np.abs(s.A - ref)))])
        devs = [row[-1] for row in out.rows]
        out.summary.append(f"{len(devs)} points vs {t.closed_form.name}: max dev {max(devs):.3g}, "
                           f"mean dev {float(np.mean(devs)):.3g}")
        return out

    def _run_transform(self, t):
        header = ["x0", "x1", "x2", "x3"] + [f"lhs_{m}" for m in range(4)] + [f"rhs_{m}" for m in range(4)] + ["flux"]
        out = TaskOutput(t.id, header)
        worst = 0.0
        for x in self._grid(t.grid):
            r = path_transform(self.field, self.paths[t.path_a], self.paths[t.path_b], x, t.probe_step, **self.quad)
            out.rows.append([*x, *r.lhs, *r.rhs, r.flux])
            worst = max(worst, r.max_dev)
        out.summary.append(f"A({t.path_b}) - A({t.path_a}) vs grad flux: max dev {worst:.3g}")
        return out

    def _surface(self, t):
        s = t.surface
        if s.kind == "homotopy":
            return fluxlib.homotopy_surface(self.paths[t.path_a], self.paths[t.path_b], t.x)
        if s.kind == "rectangle":
            return fluxlib.rectangle_surface(s.corner, s.edge_u, s.edge_v)
        return fluxlib.sphere_slice(s.radius, s.phi)

    def _run_flux(self, t):
        if t.route == "slice_sweep":
            out = TaskOutput(t.id, ["phi", "flux", "err"])
            for phi in t.phis:
                r = fluxlib.flux_surface(self.field, fluxlib.sphere_slice(t.radius, phi))
                out.rows.append([phi, r.value, r.err_estimate])
                ref = ""
                if self.sc.field.kind == "monopole":
                    ref = f"   2 g phi = {2 * self.sc.field.g * phi:.12g}"
                out.summary.append(f"phi = {phi:.12g}   flux = {r.value:.12g}{ref}")
            return out
        if t.route == "full_sphere":
            r = fluxlib.full_sphere_flux(self.field, t.radius)
        elif t.route == "surface":
            r = fluxlib.flux_surface(self.field, self._surface(t))
        elif t.route == "open":
            r = fluxlib.flux_open(self.field, self.paths[t.path_a], self.paths[t.path_b], t.x, **self.quad)
        else:
            loop = LoopSpec(self.paths[t.path_a], self.paths[t.path_b], t.winding)
            pot = potential_function(self.field, self.paths[t.potential_path], **self.quad)
            r = fluxlib.flux_loop(pot, loop, t.x, discontinuities=self.field.discontinuities, **self.quad)
        out = TaskOutput(t.id, ["route", "flux", "err"], value=r.value)
        out.rows.append([r.route, r.value, r.err_estimate])
        out.summary.append(f"{r.route} flux = {r.value:.12g} (err {r.err_estimate:.3g})")
        if r.warning:
            out.summary.append(f"warning: {r.warning}")
        return out

    def _run_quantize(self, t):
        out = TaskOutput(t.id, QUANT_HEADER)
        tol = self.sc.tolerances.phase_tol
        if t.dirac is not None:
            reports = [dirac_condition(e, t.dirac.g, self.constants, tol) for e in t.dirac.charges]
        elif t.fluxes is not None:
            reports = [check_phase(f, self.constants, tol) for f in t.fluxes]
        else:
            flux_value = self.outputs[t.flux_task].value
            charges = t.charges or [self.constants.e]
            reports = [check_phase(flux_value, self.constants.with_charge(e), tol) for e in charges]
        for r in reports:
            out.rows.append([r.phase, r.n_nearest, r.residual, r.quantized])
            flag = " (trivial)" if r.trivial else ""
            out.summary.append(f"phase {r.phase:.12g}: n = {r.n_nearest}{flag}, residual {r.residual:.3g}, "
                               f"{'quantized' if r.quantized else 'not quantized'}")
        return out

    def _run_classical(self, t):
        header = ["s"] + [f"y{m}" for m in range(4)] + [f"u{m}" for m in range(4)]
        out = TaskOutput(t.id, header)
        line = integrate_worldline(self.field, t.y_init, t.u_init, t.s_span, t.tol, charge=t.charge,
                                   mass=t.mass, c=self.constants.c)
        s = np.linspace(*t.s_span, t.samples)
        for si, y, u in zip(s, line.position(s), line.velocity(s)):
            out.rows.append([si, *y, *u])
        u0 = np.asarray(t.u_init, dtype=float)
        out.summary.append(f"mass shell u.u = {minkowski_dot(u0, u0):.12g}, drift {line.mass_shell_drift():.3g}")
        out.summary.append(f"end point {np.array2string(line.end, precision=10)}")
        return out

    def _run_oned(self, t):
        out = TaskOutput(t.id, ["area", "flux_polygon", "flux_quadrature", *QUANT_HEADER])
        if t.pair.rectangle is not None:
            pair = PairGeometry.rectangle(*t.pair.rectangle)
        else:
            pair = PairGeometry(np.array(t.pair.positron), np.array(t.pair.electron))
        poly = pair_flux(pair, t.charge)
        quad = pair_flux_quadrature(pair, t.charge)
        r = check_1d_quantization(pair.area, t.alpha1, self.sc.tolerances.phase_tol)
        out.rows.append([pair.area, poly, quad, r.phase, r.n_nearest, r.residual, r.quantized])
        out.summary.append(f"area {pair.area:.12g}, flux {poly:.12g} (polygon) / {quad:.12g} (field quadrature)")
        out.summary.append(f"alpha1 A = {t.alpha1 * pair.area:.12g}: n = {r.n_nearest}, "
                           f"{'quantized' if r.quantized else 'not quantized'}")
        return out


def write_outputs(outputs: list[TaskOutput], out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for o in outputs:
        p = out_dir / f"{o.id}.csv"
        p.write_text(o.csv_text())
        written.append(p)
    return written

