from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import strategies as st

from topocircuit.multigraph import Branch, BranchKind, build_graph
from topocircuit.netlist import parse

FIXTURES = Path(__file__).parent / "fixtures"

R, L, C = BranchKind.RESISTOR, BranchKind.INDUCTOR, BranchKind.CAPACITOR

# Example graph G: non-looped and looped branches with their category names
FIG1_BRANCHES = (
    Branch(1, 2, "C1", "Y1", C, Fraction(1, 10**6)),
    Branch(1, 3, "L1", "Z3", L, Fraction(1, 100)),
    Branch(2, 3, "R1", "Z1", R, Fraction(1000)),
    Branch(1, 3, "R2", "Z2", R, Fraction(2200)),
    Branch(2, 2, "C2", "Y2", C, Fraction(1, 10**6)),
)


@pytest.fixture
def fig1():
    return build_graph(FIG1_BRANCHES)


def load(name: str):
    return parse((FIXTURES / name).read_text())


def fixture_names(pattern: str = "*.net") -> list[str]:
    return sorted(p.name for p in FIXTURES.glob(pattern))


def random_multigraph(rng: random.Random, max_vertices: int, max_branches: int, loops: bool = True):
    """Random labeled multigraph; parallel branches and loops allowed."""
    n = rng.randint(1, max_vertices)
    labels = rng.sample(range(1, 3 * max_vertices), n)
    m = rng.randint(0, max_branches)
    branches = []
    for i in range(m):
        a = rng.choice(labels)
        b = a if loops and rng.random() < 0.1 else rng.choice(labels)
        branches.append(Branch(a, b, f"R{i + 1}", f"Z{i + 1}", R, Fraction(rng.randint(1, 9))))
    return build_graph(branches, extra_vertices=labels)


@st.composite
def multigraphs(draw, max_vertices: int = 6, max_branches: int = 10, loops: bool = True):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_multigraph(random.Random(seed), max_vertices, max_branches, loops)


@st.composite
def rlc_graphs(draw, max_vertices: int = 5, max_branches: int = 8):
    """Random weighted multigraph mixing R, L and C branches."""
    n = draw(st.integers(1, max_vertices))
    m = draw(st.integers(0, max_branches))
    branches = []
    counts = {"R": 0, "L": 0, "C": 0, "Z": 0}
    for _ in range(m):
        a = draw(st.integers(1, n))
        b = draw(st.integers(1, n))
        letter = draw(st.sampled_from("RLC"))
        counts[letter] += 1
        idx = counts[letter]
        kind = {"R": R, "L": L, "C": C}[letter]
        if letter == "C":
            cat = f"Y{idx}"
        else:
            counts["Z"] += 1
            cat = f"Z{counts['Z']}"
        branches.append(Branch(a, b, f"{letter}{idx}", cat, kind, Fraction(draw(st.integers(1, 9)))))
    return build_graph(branches, extra_vertices=range(1, n + 1))
