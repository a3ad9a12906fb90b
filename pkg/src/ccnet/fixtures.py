"""Bundled example networks: chain3, chain4, ring3, q8."""

from __future__ import annotations

from importlib import resources

from ccnet.netspec import NetworkDoc, parse_network

FIXTURES = ("chain3", "chain4", "ring3", "q8")


def fixture_text(name: str) -> bytes:
    return resources.files("ccnet").joinpath("data", f"{name}.json").read_bytes()


def load_fixture(name: str) -> NetworkDoc:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    return parse_network(fixture_text(name))
