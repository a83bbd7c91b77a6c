from __future__ import annotations

import importlib.resources

import pytest

from qadl import compile_source


def load_example(name: str) -> str:
    return (importlib.resources.files("qadl") / "examples" / f"{name}.qadl").read_text(
        encoding="utf-8"
    )


@pytest.fixture(scope="session")
def teleportation_source() -> str:
    return load_example("teleportation")


@pytest.fixture(scope="session")
def grover_source() -> str:
    return load_example("grover")


@pytest.fixture(scope="session")
def phase_demo_source() -> str:
    return load_example("phase_demo")


@pytest.fixture(scope="session")
def flow_demo_source() -> str:
    return load_example("flow_demo")


@pytest.fixture(scope="session")
def all_example_sources() -> dict[str, str]:
    return {
        name: load_example(name)
        for name in ("teleportation", "grover", "phase_demo", "flow_demo")
    }


@pytest.fixture(scope="session")
def teleportation_ir(teleportation_source):
    ir, diagnostics = compile_source(teleportation_source)
    assert ir is not None and not diagnostics
    return ir


@pytest.fixture(scope="session")
def grover_ir(grover_source):
    ir, diagnostics = compile_source(grover_source)
    assert ir is not None and not diagnostics
    return ir
