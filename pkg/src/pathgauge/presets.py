"""Built-in scenarios, one per worked example, as plain config mappings."""
from __future__ import annotations

import math

PI = math.pi
E_UNIFORM = [1.0, -0.5, 2.0]
GAUGE_GRID = {"axes": [[-10.0, 10.0, 5], [-10.0, 10.0, 5], [-10.0, 10.0, 5], [7.5, 7.5, 1]]}


def _gauge(name, path, closed_form):
    return {
        "schema_version": 1,
        "name": name,
        "field": {"kind": "uniform", "E0": E_UNIFORM},
        "paths": {"P": {"builtin": path}},
        "tasks": [
            {"id": "potential", "kind": "potential", "path": "P", "grid": GAUGE_GRID},
            {"id": "compare", "kind": "gauge_compare", "path": "P",
             "closed_form": {"name": closed_form, "params": {"E0": E_UNIFORM}}, "grid": GAUGE_GRID},
        ],
    }


def _gauge_flux_links():
    pts = {"points": [[1.3, 0.4, -0.7, 2.0], [-2.0, 1.5, 0.5, -1.0], [0.5, -3.0, 2.0, 0.25]]}
    return {
        "schema_version": 1,
        "name": "gauge-flux-links",
        "field": {"kind": "uniform", "E0": E_UNIFORM},
        "paths": {"velocity": {"builtin": "velocity"}, "length": {"builtin": "length"},
                  "straight": {"builtin": "straight_line"}},
        "tasks": [
            {"id": "velocity_to_length", "kind": "transform", "path_a": "velocity", "path_b": "length",
             "grid": pts},
            {"id": "straight_to_length", "kind": "transform", "path_a": "straight", "path_b": "length",
             "grid": pts},
            {"id": "open_velocity_length", "kind": "flux", "route": "open", "path_a": "velocity",
             "path_b": "length", "x": pts["points"][0]},
            {"id": "open_straight_length", "kind": "flux", "route": "open", "path_a": "straight",
             "path_b": "length", "x": pts["points"][0]},
        ],
    }


def _dirac_monopole():
    g = 0.5
    charges = [1.0, 0.5, 2.0, 1.5]
    return {
        "schema_version": 1,
        "name": "dirac-monopole",
        "field": {"kind": "monopole", "g": g},
        "paths": {"north": {"builtin": "monopole_north"}, "south": {"builtin": "monopole_south"}},
        "seed": 7,
        "tasks": [
            {"id": "north_potential", "kind": "gauge_compare", "path": "north",
             "closed_form": {"name": "monopole_north", "params": {"g": g}},
             "grid": {"random": {"n": 10, "low": [0.0, -5.0, -5.0, 0.5], "high": [0.0, 5.0, 5.0, 5.0]}}},
            {"id": "south_potential", "kind": "gauge_compare", "path": "south",
             "closed_form": {"name": "monopole_south", "params": {"g": g}},
             "grid": {"random": {"n": 10, "low": [0.0, -5.0, -5.0, 0.5], "high": [0.0, 5.0, 5.0, 5.0]}}},
            {"id": "slices", "kind": "flux", "route": "slice_sweep", "phis": [PI / 4, PI / 2, PI, 3 * PI / 2]},
            {"id": "sphere", "kind": "flux", "route": "full_sphere"},
            {"id": "sphere_phase", "kind": "quantize", "flux_task": "sphere", "charges": charges},
            {"id": "dirac", "kind": "quantize", "dirac": {"g": g, "charges": charges}},
        ],
    }


def _disk_flux():
    B0, r0 = 4.0, 1.0
    pts = {"points": [[0.0, 0.3, 0.4, 0.0], [1.0, -0.5, 0.2, 0.7], [0.0, 1.5, -0.5, 0.0], [2.0, -3.0, 1.0, -1.0]]}
    x = [0.0, 0.3, 0.4, 0.0]
    return {
        "schema_version": 1,
        "name": "disk-flux",
        "field": {"kind": "disk", "B0": B0, "r0": r0},
        "paths": {"P1": {"builtin": "disk_p1"}, "P2": {"builtin": "disk_p2"}},
        "tasks": [
            {"id": "p1_potential", "kind": "gauge_compare", "path": "P1",
             "closed_form": {"name": "disk", "params": {"B0": B0, "r0": r0}}, "grid": pts},
            {"id": "p2_potential", "kind": "gauge_compare", "path": "P2",
             "closed_form": {"name": "disk", "params": {"B0": B0, "r0": r0}}, "grid": pts},
            {"id": "loop", "kind": "flux", "route": "loop", "path_a": "P1", "path_b": "P2",
             "potential_path": "P1", "x": x},
            {"id": "loop_twice", "kind": "flux", "route": "loop", "path_a": "P1", "path_b": "P2",
             "potential_path": "P1", "x": x, "winding": 2},
            {"id": "loop_phase", "kind": "quantize", "flux_task": "loop"},
        ],
    }


def _eblock_flux():
    E0, dt, dx = 2 * PI, 1.0, 1.0
    pts = {"points": [[0.4, 0.7, 0.0, 0.0], [0.5, 1.8, 0.3, 0.0], [2.5, 0.4, 0.0, -0.2]]}
    return {
        "schema_version": 1,
        "name": "eblock-flux",
        "field": {"kind": "eblock", "E0": E0, "dt": dt, "dx": dx},
        "paths": {"P1": {"builtin": "eblock_p1"}, "P2": {"builtin": "eblock_p2", "params": {"dt": dt, "dx": dx}}},
        "tasks": [
            {"id": "p1_potential", "kind": "gauge_compare", "path": "P1",
             "closed_form": {"name": "eblock", "params": {"E0": E0, "dt": dt, "dx": dx}}, "grid": pts},
            {"id": "rectangle", "kind": "flux", "route": "surface",
             "surface": {"kind": "rectangle", "corner": [-0.5, -0.5, 0.0, 0.0], "edge_u": [2.0, 0.0, 0.0, 0.0],
                         "edge_v": [0.0, 2.0, 0.0, 0.0]}},
            {"id": "rectangle_phase", "kind": "quantize", "flux_task": "rectangle"},
        ],
    }


def _classical_uniform_b():
    return {
        "schema_version": 1,
        "name": "classical-uniform-B",
        "field": {"kind": "uniform", "B0": [0.0, 0.0, 1.0]},
        "tasks": [
            {"id": "orbit", "kind": "classical", "y_init": [0.0, 1.0, 0.0, 0.0],
             "u_init": [math.sqrt(1.25), 0.0, 0.5, 0.0], "s_span": [0.0, 2 * PI], "samples": 65},
        ],
    }


def _oned_pair():
    cT, L = 3.0, 1.0
    return {
        "schema_version": 1,
        "name": "oned-pair",
        "field": {"kind": "zero"},
        "tasks": [
            {"id": "rectangle_pair", "kind": "oned", "pair": {"rectangle": [cT, L]}, "alpha1": PI / (cT * L)},
            {"id": "half_pair", "kind": "oned", "pair": {"rectangle": [cT, L]}, "alpha1": PI / (2 * cT * L)},
        ],
    }


PRESETS = {
    "velocity-gauge": lambda: _gauge("velocity-gauge", "velocity", "velocity"),
    "length-gauge": lambda: _gauge("length-gauge", "length", "length"),
    "fock-schwinger": lambda: _gauge("fock-schwinger", "straight_line", "fock_schwinger"),
    "gauge-flux-links": _gauge_flux_links,
    "dirac-monopole": _dirac_monopole,
    "disk-flux": _disk_flux,
    "eblock-flux": _eblock_flux,
    "classical-uniform-B": _classical_uniform_b,
    "oned-pair": _oned_pair,
}


def preset_names() -> list[str]:
    return list(PRESETS)


def preset_config(name: str) -> dict:
    return PRESETS[name]()
