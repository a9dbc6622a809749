"""JSON workspaces: named groups, homomorphisms, modules, extensions and systems.

A workspace file is an object with optional lists ``groups``, ``homs``,
``modules``, ``extensions`` and ``systems``; every entry carries a unique
``name`` and refers to earlier objects by name.  A file holding a single bare
object is also accepted.  See ``docs/FORMAT.md`` for the schemas.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .cohomology import Cochain, GModule
from .coprolongation import System, validate_system
from .errors import AlgebraError
from .extensions import Extension, crossed_product
from .groups import FiniteGroup, GroupHom, abelian, cyclic, dihedral, quaternion, reindex_identity, structure_tag
from .zlattice import FiniteAbelianGroup

KINDS = ("groups", "homs", "modules", "extensions", "systems")


class WorkspaceError(AlgebraError):
    """Malformed JSON, an unknown reference or a duplicated name."""


def library_group(name: str) -> FiniteGroup:
    """``Zn``, ``Z2xZ4``-style products, ``Dn``, ``S3`` or ``Q8``."""
    if name == "1":
        return cyclic(1)
    if name == "S3":
        return dihedral(3)
    if name == "Q8":
        return quaternion()
    if name.startswith("D") and name[1:].isdigit():
        return dihedral(int(name[1:]))
    parts = name.split("x")
    if all(p.startswith("Z") and p[1:].isdigit() for p in parts):
        factors = [int(p[1:]) for p in parts]
        return cyclic(factors[0]) if len(factors) == 1 else abelian(factors)
    raise WorkspaceError(f"unknown library group {name!r}")


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise WorkspaceError(f"{where}: missing field {key!r}")
    return obj[key]


def _int_list(value, where: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise WorkspaceError(f"{where}: expected a list of integers")
    return value


def _guess_kind(obj: dict) -> str:
    if "E0" in obj and "gamma" in obj:
        return "systems"
    if "B" in obj or "cocycle" in obj:
        return "extensions"
    if "factors" in obj:
        return "modules"
    if "map" in obj:
        return "homs"
    if "table" in obj or "library" in obj:
        return "groups"
    raise WorkspaceError("cannot tell what kind of object this is")


@dataclass
class Workspace:
    groups: dict = field(default_factory=dict)
    perms: dict = field(default_factory=dict)
    homs: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    extensions: dict = field(default_factory=dict)
    systems: dict = field(default_factory=dict)
    module_group: dict = field(default_factory=dict)

    # --- loading --------------------------------------------------------------

    def load(self, data: dict) -> "Workspace":
        if not isinstance(data, dict):
            raise WorkspaceError("top level must be a JSON object")
        if not any(k in data for k in KINDS):
            data = {_guess_kind(data): [data]}
        unknown = set(data) - set(KINDS) - {"comment"}
        if unknown:
            raise WorkspaceError(f"unknown top-level keys {sorted(unknown)}")
        for kind in KINDS:
            entries = data.get(kind, [])
            if not isinstance(entries, list):
                raise WorkspaceError(f"{kind} must be a list")
            for obj in entries:
                if not isinstance(obj, dict):
                    raise WorkspaceError(f"{kind}: entries must be objects")
                name = _require(obj, "name", kind)
                if name in getattr(self, kind):
                    raise WorkspaceError(f"duplicate {kind[:-1]} name {name!r}")
                getattr(self, "_load_" + kind[:-1])(name, obj)
        return self

    def load_file(self, path: str | Path) -> "Workspace":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise WorkspaceError(f"{path}: invalid JSON ({exc})") from None
        return self.load(data)

    def _ref(self, kind: str, name):
        table = getattr(self, kind)
        if name not in table:
            raise WorkspaceError(f"unknown {kind[:-1]} {name!r}")
        return table[name]

    def _load_group(self, name, obj):
        where = f"group {name!r}"
        if "library" in obj:
            G = library_group(obj["library"])
            self.groups[name] = G
            self.perms[name] = list(range(G.order))
            return
        table = _require(obj, "table", where)
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            raise WorkspaceError(f"{where}: table must be a list of rows")
        if "order" in obj and obj["order"] != len(table):
            raise WorkspaceError(f"{where}: order {obj['order']} but table has {len(table)} rows")
        try:
            new, perm = reindex_identity(table)
        except (TypeError, IndexError):
            new, perm = table, list(range(len(table)))
        names = obj.get("names")
        if names is not None:
            back = {p: k for k, p in enumerate(perm)}
            names = [str(names[back[k]]) for k in range(len(perm))]
        self.groups[name] = FiniteGroup(new, names)
        self.perms[name] = perm

    def _load_hom(self, name, obj):
        where = f"hom {name!r}"
        src = _require(obj, "source", where)
        tgt = _require(obj, "target", where)
        S, T = self._ref("groups", src), self._ref("groups", tgt)
        raw = _int_list(_require(obj, "map", where), where)
        if len(raw) != S.order or any(not 0 <= v < T.order for v in raw):
            raise WorkspaceError(f"{where}: map must list {S.order} indices into {tgt!r}")
        ps, pt = self.perms[src], self.perms[tgt]
        mapping = [0] * S.order
        for x, y in enumerate(raw):
            mapping[ps[x]] = pt[y]
        self.homs[name] = GroupHom(S, T, mapping)

    def _load_module(self, name, obj):
        where = f"module {name!r}"
        gname = _require(obj, "group", where)
        G = self._ref("groups", gname)
        A = FiniteAbelianGroup(tuple(_int_list(_require(obj, "factors", where), where)))
        action = obj.get("action")
        mats = None
        if action is not None:
            if not isinstance(action, dict):
                raise WorkspaceError(f"{where}: action must map group indices to matrices")
            perm = self.perms[gname]
            ident = [[int(r == j) for j in range(A.rank)] for r in range(A.rank)]
            mats = [ident] * G.order
            for key, M in action.items():
                try:
                    g = int(key)
                except ValueError:
                    raise WorkspaceError(f"{where}: action key {key!r} is not an index") from None
                if not 0 <= g < G.order:
                    raise WorkspaceError(f"{where}: action key {g} is out of range")
                mats[perm[g]] = M
        self.modules[name] = GModule(G, A, mats)
        self.module_group[name] = gname

    def _load_extension(self, name, obj):
        where = f"extension {name!r}"
        if "cocycle" in obj:
            mname = _require(obj, "module", where)
            m = self._ref("modules", mname)
            f = cochain_from_json(m, obj["cocycle"], self.perms[self.module_group[mname]])
            self.extensions[name] = crossed_product(m, f)[0]
            return
        _require(obj, "B", where)
        i = self._ref("homs", _require(obj, "i", where))
        p = self._ref("homs", _require(obj, "p", where))
        B = self._ref("groups", obj["B"])
        if i.target != B or p.source != B:
            raise WorkspaceError(f"{where}: i and p must be maps into and out of {obj['B']!r}")
        self.extensions[name] = Extension.from_maps(i, p)

    def _load_system(self, name, obj):
        where = f"system {name!r}"
        E0 = self._ref("extensions", _require(obj, "E0", where))
        gamma = self._ref("homs", _require(obj, "gamma", where))
        self.systems[name] = validate_system(E0, gamma)

    def pick(self, kind: str, name: str | None = None):
        table = getattr(self, kind)
        if name is not None:
            return name, self._ref(kind, name)
        if len(table) != 1:
            raise WorkspaceError(
                f"expected exactly one {kind[:-1]} (found {len(table)}); choose one with --name"
            )
        return next(iter(table.items()))


def load_workspace(paths) -> Workspace:
    ws = Workspace()
    for p in paths:
        ws.load_file(p)
    return ws


# --- serialization ----------------------------------------------------------------

def dumps(obj) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cochain_to_json(c: Cochain) -> dict:
    values = {}
    for xs, v in zip(c.module.tuples(c.degree), c.values):
        if any(v):
            values[",".join(map(str, xs))] = list(v)
    return {"degree": c.degree, "values": values}


def cochain_from_json(m: GModule, obj, perm=None) -> Cochain:
    """Parse cochain JSON; ``perm[old] = new`` translates element indices."""
    if not isinstance(obj, dict):
        raise WorkspaceError("cochain must be an object")
    degree = obj.get("degree", 2)
    if degree not in (1, 2, 3):
        raise WorkspaceError(f"unsupported cochain degree {degree}")
    vals = {}
    for key, v in obj.get("values", {}).items():
        try:
            xs = tuple(int(s) for s in key.split(","))
        except ValueError:
            raise WorkspaceError(f"bad cochain key {key!r}") from None
        if len(xs) != degree or not all(0 <= x < m.G.order for x in xs):
            raise WorkspaceError(f"cochain key {key!r} does not name {degree} group elements")
        if perm is not None:
            xs = tuple(perm[x] for x in xs)
        if any(x == 0 for x in xs):
            if any(_int_list(v, "cochain value")):
                raise WorkspaceError(f"cochain is not normalized at {key!r}")
            continue
        if len(_int_list(v, "cochain value")) != m.A.rank:
            raise WorkspaceError(f"cochain value at {key!r} needs {m.A.rank} coordinates")
        vals[xs] = v
    return Cochain(m, degree, [vals.get(xs, m.A.zero) for xs in m.tuples(degree)])


def group_to_json(G: FiniteGroup) -> dict:
    return {"order": G.order, "table": [list(r) for r in G.table], "tag": structure_tag(G)}


def extension_to_json(E: Extension) -> dict:
    return {
        "A": list(E.A.factors),
        "B": group_to_json(E.B),
        "i": list(E.i.map),
        "p": list(E.p.map),
    }
