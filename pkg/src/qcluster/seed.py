"""Seeds and quivers: mutation, amalgamation, permutation, equality, serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

HALF = Fraction(1, 2)


@dataclass(frozen=True, order=True)
class NodeLabel:
    """Structured label: family in {f, e, f', e'}, root index, level."""
    family: str
    root: int
    level: int = 0

    def __str__(self):
        fam = self.family
        if self.level or fam in ("f", "f'"):
            return f"{fam}{self.root}^{self.level}"
        return f"{fam}{self.root}^0"

    @classmethod
    def parse(cls, text: str) -> "NodeLabel":
        t = text.strip()
        fam = t[0]
        rest = t[1:]
        if rest.startswith("'"):
            fam += "'"
            rest = rest[1:]
        if "^" in rest:
            root_s, lvl_s = rest.split("^")
            return cls(fam, int(root_s), int(lvl_s))
        return cls(fam, int(rest), 0)

    def primed(self) -> "NodeLabel":
        return NodeLabel(self.family.rstrip("'") + "'", self.root, self.level)

    def unprimed(self) -> "NodeLabel":
        return NodeLabel(self.family.rstrip("'"), self.root, self.level)

    @property
    def is_primed(self):
        return self.family.endswith("'")


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"bad rational {x!r}")


class SeedQuiver:
    """A seed (nodes, frozen set, exchange matrix B, multipliers d).

    B is stored sparsely as w-weights: w[i][j] = d_i * b_ij = -w[j][i]; arrows
    of weight 0 are deleted eagerly.  Half-integer b only between frozen pairs.
    """

    def __init__(self, nodes, frozen, d, weights, check=True):
        self.nodes = tuple(nodes)
        self.frozen = frozenset(frozen)
        self.d = {v: _frac(d[v]) for v in self.nodes}
        self._index = {v: t for t, v in enumerate(self.nodes)}
        self.w = {}
        for (i, j), val in dict(weights).items():
            val = _frac(val)
            if val == 0:
                continue
            if (j, i) in self.w:
                raise ValueError(f"both orientations given for {i},{j}")
            if val < 0:
                i, j, val = j, i, -val
            self.w[(i, j)] = val
        if check:
            self.validate()

    # -- basic accessors -------------------------------------------------

    def validate(self):
        for (i, j), val in self.w.items():
            if i not in self._index or j not in self._index:
                raise ValueError(f"arrow endpoint missing: {i}->{j}")
            bij = val / self.d[i]
            if bij.denominator not in (1, 2):
                raise ValueError(f"b_(ij) = {bij} has denominator > 2")
            if bij.denominator == 2 and not (i in self.frozen and j in self.frozen):
                raise ValueError(f"half-integer exchange between non-frozen pair {i},{j}")

    def weight(self, i, j) -> Fraction:
        v = self.w.get((i, j))
        if v is not None:
            return v
        v = self.w.get((j, i))
        if v is not None:
            return -v
        return Fraction(0)

    def b(self, i, j) -> Fraction:
        return self.weight(i, j) / self.d[i]

    def arrows(self):
        """Positive-weight arrows as (i, j, w_ij)."""
        return [(i, j, v) for (i, j), v in self.w.items()]

    def neighbors(self, k):
        out = set()
        for (i, j) in self.w:
            if i == k:
                out.add(j)
            elif j == k:
                out.add(i)
        return out

    def is_frozen(self, i):
        return i in self.frozen

    def copy(self, weights=None):
        return SeedQuiver(self.nodes, self.frozen, self.d,
                          weights if weights is not None else dict(self.w), check=False)

    # -- mutation ---------------------------------------------------------

    def mutate(self, k, rule="matrix"):
        """Mutation at a non-frozen node k; 'matrix' and 'arrows' rules must agree."""
        if k not in self._index:
            raise KeyError(f"no node {k}")
        if k in self.frozen:
            raise ValueError(f"cannot mutate frozen node {k}")
        for i in self.nodes:
            if i == k:
                continue
            if self.b(i, k).denominator != 1 or self.b(k, i).denominator != 1:
                raise ValueError(f"non-integral exchange entries at {k}")
        if rule == "matrix":
            return self._mutate_matrix(k)
        if rule == "arrows":
            return self._mutate_arrows(k)
        raise ValueError(rule)

    def _mutate_matrix(self, k):
        new = {}
        nodes = self.nodes
        for i in nodes:
            for j in nodes:
                if self._index[i] >= self._index[j]:
                    continue
                if i == k or j == k:
                    bij = -self.b(i, j)
                else:
                    bik, bkj = self.b(i, k), self.b(k, j)
                    bij = self.b(i, j) + (bik * abs(bkj) + abs(bik) * bkj) / 2
                if bij:
                    new[(i, j)] = self.d[i] * bij
        out = self.copy(new)
        out.validate()
        return out

    def _mutate_arrows(self, k):
        # (1) reverse arrows at k; (2) compose through k; (3) drop zero weights
        neigh = self.neighbors(k)
        new = {}
        for (i, j), v in self.w.items():
            if i == k or j == k:
                new[(j, i)] = v
            else:
                new[(i, j)] = v

        def get(i, j):
            if (i, j) in new:
                return new[(i, j)]
            if (j, i) in new:
                return -new[(j, i)]
            return Fraction(0)

        def put(i, j, val):
            new.pop((i, j), None)
            new.pop((j, i), None)
            if val > 0:
                new[(i, j)] = val
            elif val < 0:
                new[(j, i)] = -val

        for i in neigh:
            wik = self.weight(i, k)
            if wik <= 0:
                continue
            for j in neigh:
                wkj = self.weight(k, j)
                if wkj <= 0 or i == j:
                    continue
                put(i, j, get(i, j) + wik * wkj / self.d[k])
        out = self.copy(new)
        out.validate()
        return out

    def mutate_sequence(self, ks, rule="matrix"):
        cur = self
        for k in ks:
            cur = cur.mutate(k, rule=rule)
        return cur

    # -- amalgamation / permutation ------------------------------------------

    def apply_permutation(self, sigma):
        """Relabel nodes by the map sigma (frozen flags and multipliers travel).

        When sigma permutes the existing label set, it must preserve the frozen
        subset and the multiplier assignment as required of a seed permutation.
        """
        full = {v: sigma.get(v, v) for v in self.nodes}
        if len(set(full.values())) != len(self.nodes):
            raise ValueError("permutation not injective on nodes")
        nodes = tuple(full[v] for v in self.nodes)
        if set(nodes) == set(self.nodes):
            if {full[v] for v in self.frozen} != set(self.frozen):
                raise ValueError("permutation does not preserve the frozen set")
            for v in self.nodes:
                if self.d[full[v]] != self.d[v]:
                    raise ValueError(f"permutation changes multiplier at {v} -> {full[v]}")
        frozen = frozenset(full[v] for v in self.frozen)
        d = {full[v]: self.d[v] for v in self.nodes}
        w = {(full[i], full[j]): val for (i, j), val in self.w.items()}
        return SeedQuiver(nodes, frozen, d, w, check=False)

    def sorted_nodes(self):
        return tuple(sorted(self.nodes, key=_node_sort_key))


def amalgamate(q1: SeedQuiver, q2: SeedQuiver, glue: dict) -> SeedQuiver:
    """Glue q2 onto q1 along the partial bijection glue: frozen(q1) -> frozen(q2).

    Glued nodes are unfrozen; weights add on glued pairs.  Node identity of a
    glued pair is the q1 node.
    """
    for a, b in glue.items():
        if a not in q1._index or b not in q2._index:
            raise ValueError(f"glue endpoints missing: {a} -> {b}")
        if a not in q1.frozen or b not in q2.frozen:
            raise ValueError(f"glue target not frozen: {a} -> {b}")
        if q1.d[a] != q2.d[b]:
            raise ValueError(f"multiplier mismatch gluing {a} -> {b}")
    inv = {b: a for a, b in glue.items()}
    if len(inv) != len(glue):
        raise ValueError("glue map not injective")

    nodes = list(q1.nodes)
    seen = set(q1.nodes)
    rename2 = {}
    for v in q2.nodes:
        if v in inv:
            rename2[v] = inv[v]
        else:
            if v in seen:
                raise ValueError(f"node name collision: {v}")
            rename2[v] = v
            nodes.append(v)
            seen.add(v)

    frozen = (set(q1.frozen) - set(glue)) | {rename2[v] for v in q2.frozen if v not in inv}
    d = dict(q1.d)
    for v in q2.nodes:
        d[rename2[v]] = q2.d[v]

    weights = {}

    def add(i, j, val):
        if (j, i) in weights:
            weights[(j, i)] -= val
            if weights[(j, i)] == 0:
                del weights[(j, i)]
            return
        weights[(i, j)] = weights.get((i, j), Fraction(0)) + val
        if weights[(i, j)] == 0:
            del weights[(i, j)]

    for (i, j), val in q1.w.items():
        add(i, j, val)
    for (i, j), val in q2.w.items():
        add(rename2[i], rename2[j], val)

    return SeedQuiver(tuple(nodes), frozen, d, weights)


def quiver_equal(q1: SeedQuiver, q2: SeedQuiver, relabel=None):
    """Exact comparison (after optional relabel of q1); returns (bool, diff list)."""
    if relabel:
        q1 = q1.apply_permutation(relabel)
    diffs = []
    n1, n2 = set(q1.nodes), set(q2.nodes)
    for v in sorted(n1 - n2, key=str):
        diffs.append(f"node {v} only in first")
    for v in sorted(n2 - n1, key=str):
        diffs.append(f"node {v} only in second")
    for v in sorted(n1 & n2, key=str):
        if q1.is_frozen(v) != q2.is_frozen(v):
            diffs.append(f"frozen flag differs at {v}")
        if q1.d[v] != q2.d[v]:
            diffs.append(f"multiplier differs at {v}: {q1.d[v]} vs {q2.d[v]}")
    if not diffs:
        pairs = {tuple(sorted((str(i), str(j)))): (i, j) for (i, j) in set(q1.w) | set(q2.w)}
        for _, (i, j) in sorted(pairs.items()):
            w1, w2 = q1.weight(i, j), q2.weight(i, j)
            if w1 != w2:
                diffs.append(f"arrow {i}->{j}: {w1} vs {w2}")
    return (not diffs), diffs


# -- serialization -------------------------------------------------------------


def _node_sort_key(v):
    if isinstance(v, NodeLabel):
        fam_order = {"f": 0, "e": 1, "f'": 2, "e'": 3}
        return (0, fam_order.get(v.family, 9), v.root, v.level)
    return (1, str(v))


def _node_id(v):
    return str(v)


def to_json_dict(q: SeedQuiver) -> dict:
    nodes = []
    order = q.sorted_nodes()
    for v in order:
        entry = {"id": _node_id(v)}
        if isinstance(v, NodeLabel):
            entry["label"] = {"family": v.family, "root": v.root, "level": v.level}
        else:
            entry["label"] = {"family": "x", "root": 0, "level": 0, "name": str(v)}
        entry["frozen"] = v in q.frozen
        entry["d"] = str(q.d[v])
        nodes.append(entry)
    idx = {v: t for t, v in enumerate(order)}
    arrows = sorted(
        ([idx[i], idx[j], str(val)] for (i, j), val in q.w.items()),
        key=lambda a: (a[0], a[1]),
    )
    return {"nodes": nodes, "arrows": arrows}


def to_json(q: SeedQuiver) -> str:
    return json.dumps(to_json_dict(q), indent=1, sort_keys=True)


def from_json_dict(data: dict) -> SeedQuiver:
    nodes = []
    for entry in data["nodes"]:
        lab = entry["label"]
        if lab.get("family") == "x":
            nodes.append(lab.get("name", entry["id"]))
        else:
            nodes.append(NodeLabel(lab["family"], lab["root"], lab["level"]))
    frozen = {v for v, entry in zip(nodes, data["nodes"]) if entry["frozen"]}
    d = {v: Fraction(entry["d"]) for v, entry in zip(nodes, data["nodes"])}
    weights = {}
    for i, j, val in data["arrows"]:
        weights[(nodes[i], nodes[j])] = Fraction(val)
    return SeedQuiver(tuple(nodes), frozen, d, weights)


def from_json(text: str) -> SeedQuiver:
    return from_json_dict(json.loads(text))


def _edge_style(q: SeedQuiver, i, j, val):
    """Map (|w|, multipliers) to the drawing legend: thick/thin x solid/dashed."""
    d_long = max(q.d.values())
    thick = val in (d_long, 2 * d_long) or val >= 1
    dashed = val not in (Fraction(1), min(q.d.values()) * 2) and val * 2 in (
        Fraction(1) * 2, Fraction(1),) or False
    # solid arrows carry weight 2*d_s or 2*d_l in q-units of the legend; halves are dashed
    dashed = (val == HALF) or (val == min(q.d.values()) / 2) or (val < min(2 * min(q.d.values()), 1))
    return thick, dashed


def to_dot(q: SeedQuiver) -> str:
    lines = ["digraph quiver {", "  rankdir=LR;"]
    for v in q.sorted_nodes():
        shape = "box" if v in q.frozen else "circle"
        lines.append(f'  "{_node_id(v)}" [shape={shape}, label="{_node_id(v)}", d="{q.d[v]}"];')
    smallest = min(q.d.values())
    for (i, j), val in sorted(q.w.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
        style = []
        full = val >= 2 * smallest or val >= 1
        if val < 1 and val != 2 * smallest:
            style.append("dashed")
        penwidth = "2.0" if val >= 1 else "1.0"
        attr = f'penwidth={penwidth}, weight_q="{val}"'
        if style:
            attr += f', style="{",".join(style)}"'
        lines.append(f'  "{_node_id(i)}" -> "{_node_id(j)}" [{attr}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
