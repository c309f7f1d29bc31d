"""The shipped liftings: tropical line, elliptic curve, del Pezzo and K3 surfaces.

The K3 lifting is found by a seeded search over centrally symmetric integer
weights and frozen under ``data/``; ``regenerate`` reruns the search and checks
that it reproduces the frozen file.
"""

from __future__ import annotations

import json
import random
from importlib import resources
from itertools import product
from pathlib import Path

from .tropical_complex import Lifting, is_unimodular_triangulation, regular_subdivision, trop_membership

K3_SEED = 0
NAMES = ("line", "elliptic", "del_pezzo", "k3")


def line_lifting() -> Lifting:
    return Lifting.on_simplex(2, 1, {(0, 0): 0, (1, 0): 0, (0, 1): 0}, name="line")


def elliptic_lifting() -> Lifting:
    """Hexagonal Delaunay lifting of [0,2]^2: symmetric and unimodular."""
    w = {(i, j): (i - 1) ** 2 + (j - 1) ** 2 + (i - 1) * (j - 1) for i in range(3) for j in range(3)}
    return Lifting.on_box((2, 2), w, name="elliptic")


def del_pezzo_lifting() -> Lifting:
    """a_000 = a_111 = 0, a_100 = a_011 = 4, a_010 = a_101 = 2, a_001 = a_110 = 1."""
    base = {(0, 0, 0): 0, (1, 0, 0): 4, (0, 1, 0): 2, (0, 0, 1): 1}
    w = {}
    for m in product(range(2), repeat=3):
        w[m] = base[m] if m in base else base[tuple(1 - x for x in m)]
    return Lifting.on_box((1, 1, 1), w, name="del_pezzo")


def _k3_candidate(rng: random.Random) -> dict | None:
    # integer quadratic form centred at (1,1,1) gives w(m) = w(d - m) for free
    diag = [rng.randint(1, 2) for _ in range(3)]
    off = [rng.choice((-1, 1)) for _ in range(3)]
    w = {}
    for m in product(range(3), repeat=3):
        x, y, z = (v - 1 for v in m)
        w[m] = diag[0] * x * x + diag[1] * y * y + diag[2] * z * z + off[0] * x * y + off[1] * y * z + off[2] * x * z
    if min(w.values()) < 0 or max(w.values()) > 8:
        return None
    return w


def is_k3_lifting(l: Lifting) -> bool:
    s = regular_subdivision(l)
    return (l.is_symmetric() and is_unimodular_triangulation(s) and len(s.cells) == 48
            and not trop_membership(l, [0, 0, 0]))


def search_k3_lifting(seed: int = K3_SEED, max_attempts: int = 1000) -> Lifting:
    """First symmetric lifting of [0,2]^3 with weights in 0..8 passing the K3 conditions."""
    rng = random.Random(seed)
    for attempt in range(max_attempts):
        w = _k3_candidate(rng)
        if w is None:
            continue
        l = Lifting.on_box((2, 2, 2), w, name="k3", seed=seed, attempt=attempt)
        if is_k3_lifting(l):
            return l
    raise RuntimeError(f"no K3 lifting found in {max_attempts} attempts from seed {seed}")


def _data_path(name: str):
    return resources.files("tropenriques").joinpath("data", f"{name}.lifting.json")


def load_fixture(name: str) -> Lifting:
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")
    return Lifting.from_json(json.loads(_data_path(name).read_text()))


def build_fixture(name: str) -> Lifting:
    return {"line": line_lifting, "elliptic": elliptic_lifting,
            "del_pezzo": del_pezzo_lifting, "k3": search_k3_lifting}[name]()


def dump(l: Lifting) -> str:
    """JSON with one weight per line, so diffs of frozen fixtures stay readable."""
    data = l.to_json()
    head = {k: v for k, v in data.items() if k != "weights"}
    lines = [f'  {json.dumps(k)}: {json.dumps(v, sort_keys=True)},' for k, v in sorted(head.items())]
    weights = [f'    {json.dumps(w, sort_keys=True)}' for w in data["weights"]]
    return "{\n" + "\n".join(lines) + '\n  "weights": [\n' + ",\n".join(weights) + "\n  ]\n}\n"


def regenerate(out_dir: Path | None = None) -> dict:
    """Rebuild every fixture, compare with the frozen copy and optionally write it out."""
    report = {}
    for name in NAMES:
        l = build_fixture(name)
        frozen = load_fixture(name)
        entry = {"matches_frozen": l.to_json() == frozen.to_json()}
        if name == "k3":
            entry["k3_conditions"] = is_k3_lifting(l)
            entry["seed"] = l.meta.get("seed")
            entry["attempt"] = l.meta.get("attempt")
        else:
            entry["unimodular"] = is_unimodular_triangulation(regular_subdivision(l))
        if out_dir is not None:
            out_dir.mkdir(parents=True, exist_ok=True)
            path = out_dir / f"{name}.lifting.json"
            path.write_text(dump(l))
            entry["path"] = str(path)
        report[name] = entry
    return report
