"""Committed script fixtures: names, how they are generated, and loading."""

from __future__ import annotations

from importlib import resources
from pathlib import Path
from typing import Callable

from . import families as fam
from .moves import MoveScript

SCRIPT_DIR = "data/scripts"


def _specs() -> dict[str, Callable[[], MoveScript]]:
    specs: dict[str, Callable[[], MoveScript]] = {
        "t3_4": lambda: fam.lemma4_script(0, "T3_4"),
        "t3_7": lambda: fam.lemma4_script(0, "T3_7"),
        "t3_10": lambda: fam.lemma4_script(0, "T3_10"),
        "t3_13": lambda: fam.lemma4_script(0, "T3_13"),
    }
    for k in range(9):
        specs[f"t3_6k16_k{k}"] = lambda k=k: fam.lemma4_script(k, "T3_6k16")
        specs[f"t3_6k19_k{k}"] = lambda k=k: fam.lemma4_script(k, "T3_6k19")
    for k in range(3):
        specs[f"t3_bridge_k{k}"] = lambda k=k: fam.bridge_change_script(k)
    for n in (5, 7, 13, 15):
        specs[f"t4_n{n}"] = lambda n=n: fam.t4_script(n)
    for n in (5, 7, 11):
        specs[f"t6_n{n}"] = lambda n=n: fam.t6_script(n)
    for k in (1, 2):
        specs[f"doubling_k{k}"] = lambda k=k: fam.doubling_script(k)
    return specs


FIXTURES = _specs()


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("twistlab").joinpath(SCRIPT_DIR, f"{name}.json")))


def load_fixture(name: str) -> MoveScript:
    return MoveScript.loads(fixture_path(name).read_text())


def regenerate(directory: Path | None = None) -> list[Path]:
    """Write every fixture from its generator; returns the written paths."""
    directory = Path(directory) if directory else fixture_path("x").parent
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name, gen in FIXTURES.items():
        p = directory / f"{name}.json"
        p.write_text(gen().dumps())
        out.append(p)
    return out


if __name__ == "__main__":
    for p in regenerate():
        print(p)
