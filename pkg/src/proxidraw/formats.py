"""On-disk JSON formats for instances and drawings.

Coordinates are stored as decimal strings that are exactly equal to the
binary values in memory: an mpfr is num/2^k, which is num*5^k/10^k, a finite
decimal. Parsing at the recorded precision therefore round-trips
bit-for-bit. Schemas are strict: unknown fields are rejected with a path
diagnostic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple, Union

from gmpy2 import mpfr

from .construct import Drawing
from .geometry import Point, bits
from .treemodel import Decomposition, Tree


class SchemaError(ValueError):
    """Malformed instance or drawing file; ``path`` locates the bad field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# ---------------------------------------------------------------------------
# Exact decimal coordinates
# ---------------------------------------------------------------------------

def mpfr_to_decimal(x) -> str:
    """Finite decimal string exactly equal to x."""
    x = mpfr(x)
    if x == 0:
        return "0"
    num, den = x.as_integer_ratio()
    k = den.bit_length() - 1
    if den != 1 << k:
        raise ValueError(f"not a binary rational: {x}")
    m = num * 5 ** k
    sign = "-" if m < 0 else ""
    digits = str(abs(m))
    if k == 0:
        return sign + digits
    digits = digits.rjust(k + 1, "0")
    int_part, frac = digits[:-k], digits[-k:]
    frac = frac.rstrip("0")
    return sign + int_part + ("." + frac if frac else "")


def decimal_to_mpfr(s: str) -> mpfr:
    """Parse at the active precision; exact for strings from mpfr_to_decimal
    when the precision is at least the emitting one."""
    if not isinstance(s, str) or not s:
        raise ValueError(f"expected a decimal string, got {s!r}")
    v = mpfr(s)
    return v


# ---------------------------------------------------------------------------
# Instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Instance:
    tree: Tree
    root: Optional[str] = None
    dec: Optional[Decomposition] = None
    mode: Optional[str] = None   # "degree" | "outdegree", with dec
    bound: Optional[int] = None  # with dec


def _expect(obj, path: str, allowed: Dict[str, bool]) -> None:
    if not isinstance(obj, dict):
        raise SchemaError(path, f"expected an object, got {type(obj).__name__}")
    for key in obj:
        if key not in allowed:
            raise SchemaError(f"{path}.{key}", "unknown field")
    for key, required in allowed.items():
        if required and key not in obj:
            raise SchemaError(f"{path}.{key}", "missing required field")


def _instance_from_obj(obj, path: str = "instance") -> Instance:
    _expect(obj, path, {"vertices": True, "edges": True,
                        "root": False, "decomposition": False})
    verts = obj["vertices"]
    if (not isinstance(verts, list)
            or any(not isinstance(v, str) for v in verts)):
        raise SchemaError(f"{path}.vertices", "expected a list of strings")
    edges = obj["edges"]
    if not isinstance(edges, list):
        raise SchemaError(f"{path}.edges", "expected a list")
    pairs: List[Tuple[str, str]] = []
    for i, e in enumerate(edges):
        if (not isinstance(e, list) or len(e) != 2
                or any(not isinstance(u, str) for u in e)):
            raise SchemaError(f"{path}.edges[{i}]", "expected [string, string]")
        pairs.append((e[0], e[1]))
    tree = Tree(verts, pairs)

    root = obj.get("root")
    if root is not None and not isinstance(root, str):
        raise SchemaError(f"{path}.root", "expected a string")
    if root is not None and root not in set(verts):
        raise SchemaError(f"{path}.root", f"unknown vertex {root!r}")

    dec = mode = bound = None
    if obj.get("decomposition") is not None:
        dpath = f"{path}.decomposition"
        dobj = obj["decomposition"]
        _expect(dobj, dpath, {"kind": True, "mode": True,
                              "bound": True, "parts": True})
        kind = dobj["kind"]
        if kind not in ("partition", "covering"):
            raise SchemaError(f"{dpath}.kind", f"expected partition|covering, got {kind!r}")
        mode = dobj["mode"]
        if mode not in ("degree", "outdegree"):
            raise SchemaError(f"{dpath}.mode", f"expected degree|outdegree, got {mode!r}")
        bound = dobj["bound"]
        if not isinstance(bound, int) or bound < 1:
            raise SchemaError(f"{dpath}.bound", "expected a positive integer")
        parts = dobj["parts"]
        if not isinstance(parts, list):
            raise SchemaError(f"{dpath}.parts", "expected a list of edge-index lists")
        nedges = len(pairs)
        for i, part in enumerate(parts):
            if not isinstance(part, list) or any(
                    not isinstance(e, int) or isinstance(e, bool) for e in part):
                raise SchemaError(f"{dpath}.parts[{i}]", "expected a list of integers")
            for e in part:
                if not 0 <= e < nedges:
                    raise SchemaError(f"{dpath}.parts[{i}]",
                                      f"edge index {e} out of range [0,{nedges})")
        dec = Decomposition(kind, parts)
        if mode == "outdegree" and root is None:
            raise SchemaError(f"{path}.root",
                              "outdegree-mode decompositions require a root")
    return Instance(tree, root, dec, mode, bound)


def _instance_to_obj(inst: Instance) -> dict:
    obj: dict = {
        "vertices": list(inst.tree.vertices),
        "edges": [[u, v] for u, v in inst.tree.edges],
    }
    if inst.root is not None:
        obj["root"] = inst.root
    if inst.dec is not None:
        obj["decomposition"] = {
            "kind": inst.dec.kind,
            "mode": inst.mode,
            "bound": inst.bound,
            "parts": [list(p) for p in inst.dec.parts],
        }
    return obj


def parse_instance(data: bytes) -> Instance:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise SchemaError("instance", f"invalid JSON at line {e.lineno}: {e.msg}")
    return _instance_from_obj(obj)


def emit_instance(inst: Instance) -> bytes:
    return (json.dumps(_instance_to_obj(inst), indent=2) + "\n").encode()


# ---------------------------------------------------------------------------
# Drawings
# ---------------------------------------------------------------------------

def emit_drawing(d: Drawing, inst: Optional[Instance] = None,
                 seed: Optional[int] = None) -> bytes:
    if inst is None:
        inst = Instance(d.tree)
    meta: dict = {"precision_bits": d.precision_bits, "construction": d.construction}
    if seed is not None:
        meta["seed"] = seed
    with bits(d.precision_bits):
        coords = {v: [mpfr_to_decimal(p.x), mpfr_to_decimal(p.y)]
                  for v, p in sorted(d.pos.items())}
    obj = {
        "instance": _instance_to_obj(inst),
        "coordinates": coords,
        "metadata": meta,
    }
    return (json.dumps(obj, indent=2) + "\n").encode()


def parse_drawing(data: bytes,
                  load_ref: Optional[Callable[[str], bytes]] = None,
                  ) -> Tuple[Drawing, Instance]:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as e:
        raise SchemaError("drawing", f"invalid JSON at line {e.lineno}: {e.msg}")
    _expect(obj, "drawing", {"instance": True, "coordinates": True, "metadata": True})

    raw_inst: Union[str, dict] = obj["instance"]
    if isinstance(raw_inst, str):
        if load_ref is None:
            raise SchemaError("drawing.instance",
                              "instance reference given but no loader available")
        inst = parse_instance(load_ref(raw_inst))
    else:
        inst = _instance_from_obj(raw_inst, "drawing.instance")

    meta = obj["metadata"]
    _expect(meta, "drawing.metadata",
            {"precision_bits": True, "construction": True, "seed": False})
    prec = meta["precision_bits"]
    if not isinstance(prec, int) or prec < 2:
        raise SchemaError("drawing.metadata.precision_bits", "expected an integer >= 2")
    construction = meta["construction"]
    if not isinstance(construction, str):
        raise SchemaError("drawing.metadata.construction", "expected a string")

    coords = obj["coordinates"]
    if not isinstance(coords, dict):
        raise SchemaError("drawing.coordinates", "expected an object")
    vset = set(inst.tree.vertices)
    if set(coords) != vset:
        missing = sorted(vset - set(coords))
        extra = sorted(set(coords) - vset)
        raise SchemaError("drawing.coordinates",
                          f"vertex mismatch: missing={missing} extra={extra}")
    with bits(prec):
        pos: Dict[str, Point] = {}
        for v, pair in coords.items():
            if not isinstance(pair, list) or len(pair) != 2:
                raise SchemaError(f"drawing.coordinates.{v}",
                                  "expected [decimal, decimal]")
            try:
                pos[v] = Point(decimal_to_mpfr(pair[0]), decimal_to_mpfr(pair[1]))
            except ValueError as e:
                raise SchemaError(f"drawing.coordinates.{v}", str(e))
        meta_extra = {"seed": meta["seed"]} if "seed" in meta else {}
        drawing = Drawing(inst.tree, pos, prec, construction, meta_extra)
    return drawing, inst
