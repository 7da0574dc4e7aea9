"""Colored sign-walled diagrams, Brauer maps and the surfaces they glue.

A diagram on ``s`` points with sign function ``eps`` is stored as a pairing
on ``2s`` indices: index ``v`` is the top point ``(v, +1)`` and ``s + v`` the
bottom point ``(v, -1)``. A string between ``(v, a)`` and ``(w, b)`` is legal
when ``eps[w] * b == -eps[v] * a``.

A permutation ``sigma`` of ``[s]`` is the diagram joining bottom ``v`` to top
``sigma[v]``. Boundary colours are the strings ``"R"``, ``"R-"``, ``"W"`` and
``"W-"``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._kernel import compose_pairings, count_cycles_closed
from .surface_words import SurfaceWord, dehn_shorten, is_cyclic_subword
from .walled_brauer import SizeLimitError, all_diagrams

__all__ = [
    "ColoredDiagramContext",
    "BrauerMap",
    "CENSUS_CAP",
    "perm_diagram",
    "transpose",
    "word_diagram",
    "extend",
    "build_second_moment_diagram",
    "is_valid_diagram",
    "is_compatible",
    "horizontal_diagram",
    "h_of",
    "admissible_matchings",
    "euler_characteristic",
    "euler_characteristic_cw",
    "CWComplex",
    "reduce_tau",
    "reduce_phi",
    "pieces_decomposition",
    "PieceReport",
    "verify_geo_bound",
    "CensusReport",
]

CENSUS_CAP = 10**7

_INV_B = {"R": "R-", "R-": "R", "W": "W-", "W-": "W"}


@dataclass(frozen=True)
class ColoredDiagramContext:
    """Sign, arc colour and boundary colour of each of the ``s`` points."""

    eps: tuple[int, ...]
    arc: tuple[int, ...]
    boundary: tuple[str, ...]
    genus: int = 0
    words: tuple = ()

    def __post_init__(self):
        if not (len(self.eps) == len(self.arc) == len(self.boundary)):
            raise ValueError("colouring lengths differ")
        for e, a in zip(self.eps, self.arc):
            if e not in (1, -1) or (a > 0) != (e > 0):
                raise ValueError("arc colour sign must agree with eps")

    @property
    def s(self) -> int:
        return len(self.eps)

    def negatives(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.s) if self.eps[v] < 0)

    def positives(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.s) if self.eps[v] > 0)

    def __add__(self, other: "ColoredDiagramContext") -> "ColoredDiagramContext":
        return ColoredDiagramContext(
            self.eps + other.eps,
            self.arc + other.arc,
            self.boundary + other.boundary,
            self.genus or other.genus,
            self.words + other.words,
        )


# ---------------------------------------------------------------------------
# elementary diagrams


def _point(v: int, eta: int, s: int) -> int:
    return v if eta > 0 else s + v


def _unpoint(p: int, s: int) -> tuple[int, int]:
    return (p, 1) if p < s else (p - s, -1)


def is_valid_diagram(pairing: Sequence[int], eps: Sequence[int]) -> bool:
    s = len(eps)
    if len(pairing) != 2 * s:
        return False
    for p, q in enumerate(pairing):
        if q == p or pairing[q] != p:
            return False
        v, a = _unpoint(p, s)
        w, b = _unpoint(q, s)
        if eps[w] * b != -eps[v] * a:
            return False
    return True


def perm_diagram(sigma: Sequence[int]) -> tuple[int, ...]:
    s = len(sigma)
    out = [0] * (2 * s)
    for v, t in enumerate(sigma):
        out[s + v] = t
        out[t] = s + v
    return tuple(out)


def transpose(pairing: Sequence[int], flip: Sequence[int]) -> tuple[int, ...]:
    """Conjugate by the map ``(v, eta) -> (v, flip[v] * eta)``."""
    s = len(flip)

    def f(p):
        v, a = _unpoint(p, s)
        return _point(v, flip[v] * a, s)

    return tuple(f(pairing[f(p)]) for p in range(2 * s))


def tensor(*pairings: Sequence[int]) -> tuple[int, ...]:
    """Side-by-side juxtaposition."""
    sizes = [len(p) // 2 for p in pairings]
    S = sum(sizes)
    out = [0] * (2 * S)
    off = 0
    for p, s in zip(pairings, sizes):
        for x, y in enumerate(p):
            vx, ax = _unpoint(x, s)
            vy, ay = _unpoint(y, s)
            out[_point(vx + off, ax, S)] = _point(vy + off, ay, S)
        off += s
    return tuple(out)


def word_diagram(w: SurfaceWord, label: str) -> tuple[tuple[int, ...], ColoredDiagramContext]:
    """The cyclic permutation ``v -> v + 1`` on the letters of ``w``, transposed by their signs."""
    s = len(w)
    if s == 0:
        raise ValueError("empty word")
    eps = tuple(1 if x > 0 else -1 for x in w.letters)
    cyc = tuple((v + 1) % s for v in range(s))
    pairing = transpose(perm_diagram(cyc), eps)
    ctx = ColoredDiagramContext(eps, tuple(w.letters), (label,) * s, w.genus, ((label, w.letters),))
    return pairing, ctx


def extend(pairing: Sequence[int], ctx: ColoredDiagramContext, n: int, m: int):
    """Replace each point by ``n + m`` copies; the last ``m`` copies carry the dual colouring."""
    k = n + m
    if k == 0:
        raise ValueError("n + m must be positive")
    s = ctx.s
    S = s * k
    eps, arc, bnd = [], [], []
    for q in range(s):
        for c in range(k):
            sign = 1 if c < n else -1
            eps.append(ctx.eps[q] * sign)
            arc.append(ctx.arc[q] * sign)
            bnd.append(ctx.boundary[q] if c < n else _INV_B[ctx.boundary[q]])
    out = [0] * (2 * S)
    for p in range(2 * s):
        q, a = _unpoint(p, s)
        q2, b = _unpoint(pairing[p], s)
        for c in range(k):
            out[_point(q * k + c, a, S)] = _point(q2 * k + c, b, S)
    new_ctx = ColoredDiagramContext(tuple(eps), tuple(arc), tuple(bnd), ctx.genus, ctx.words)
    return tuple(out), new_ctx


def build_second_moment_diagram(r: SurfaceWord, omega: SurfaceWord, n: int, m: int):
    """Extended relator diagram juxtaposed with the diagrams of ``omega`` and ``omega^-1``."""
    pr, cr = word_diagram(r, "R")
    pr, cr = extend(pr, cr, n, m)
    pw, cw = word_diagram(omega, "W")
    pwi, cwi = word_diagram(omega.inverse(), "W-")
    pairing = tensor(pr, pw, pwi)
    ctx = cr + cw + cwi
    ctx = ColoredDiagramContext(ctx.eps, ctx.arc, ctx.boundary, r.genus, (("R", r.letters), ("W", omega.letters)))
    if not is_valid_diagram(pairing, ctx.eps):
        raise AssertionError("second-moment diagram violates the wall rule")
    return pairing, ctx


def is_compatible(pairing: Sequence[int], ctx: ColoredDiagramContext) -> bool:
    """Vertical strings keep both colours; horizontal strings invert both."""
    s = ctx.s
    for p, q in enumerate(pairing):
        v, a = _unpoint(p, s)
        w, b = _unpoint(q, s)
        if a != b:
            if ctx.arc[w] != ctx.arc[v] or ctx.boundary[w] != ctx.boundary[v]:
                return False
        else:
            if ctx.arc[w] != -ctx.arc[v] or ctx.boundary[w] != _INV_B[ctx.boundary[v]]:
                return False
    return True


def horizontal_diagram(alpha: dict, beta: dict, s: int) -> tuple[int, ...]:
    """Top ``v -- alpha[v]`` and bottom ``v -- beta[v]`` for every negative point ``v``."""
    out = [0] * (2 * s)
    for v, t in alpha.items():
        out[v], out[t] = t, v
    for v, t in beta.items():
        out[s + v], out[s + t] = s + t, s + v
    return tuple(out)


def h_of(pairing: Sequence[int]) -> int:
    s = len(pairing) // 2
    return sum(1 for p in range(s) if pairing[p] < s) // 2


def admissible_matchings(ctx: ColoredDiagramContext, require_arc: bool = True, forbid_rr: bool = True):
    """Bijections from negative to positive points, optionally constrained by the colourings."""
    neg, pos = ctx.negatives(), ctx.positives()
    if len(neg) != len(pos):
        raise ValueError("unbalanced signs")

    def ok(v, t):
        if require_arc and ctx.arc[t] != -ctx.arc[v]:
            return False
        if forbid_rr:
            bv, bt = ctx.boundary[v], ctx.boundary[t]
            if {bv, bt} == {"R", "R-"}:
                return False
        return True

    out = []
    used = set()
    cur = {}

    def rec(i):
        if i == len(neg):
            out.append(dict(cur))
            return
        v = neg[i]
        for t in pos:
            if t not in used and ok(v, t):
                used.add(t)
                cur[v] = t
                rec(i + 1)
                used.discard(t)
                del cur[v]

    rec(0)
    return out


# ---------------------------------------------------------------------------
# Brauer maps


@dataclass(frozen=True)
class BrauerMap:
    ctx: ColoredDiagramContext
    tau_u: tuple[int, ...]
    pi: tuple[int, ...]
    tau_b: tuple[int, ...]
    alpha: tuple  # sorted (v, alpha[v]) pairs over negative points
    beta: tuple

    @classmethod
    def make(cls, ctx, tau_u, pi, tau_b, alpha: dict, beta: dict) -> "BrauerMap":
        return cls(ctx, tuple(tau_u), tuple(pi), tuple(tau_b), tuple(sorted(alpha.items())), tuple(sorted(beta.items())))

    @property
    def s(self) -> int:
        return self.ctx.s

    @property
    def alpha_map(self) -> dict:
        return dict(self.alpha)

    @property
    def beta_map(self) -> dict:
        return dict(self.beta)

    @property
    def phi(self) -> tuple[int, ...]:
        return horizontal_diagram(self.alpha_map, self.beta_map, self.s)

    @property
    def h(self) -> int:
        return h_of(self.tau_u) + h_of(self.tau_b)

    def phi_distance(self) -> int:
        """Minimal number of transpositions turning ``alpha`` into ``beta``."""
        return len(self.alpha) - len(self.c2_cycles())

    def c2_cycles(self) -> list[list[int]]:
        a, b = self.alpha_map, self.beta_map
        ainv = {t: v for v, t in a.items()}
        seen, out = set(), []
        for v in a:
            if v in seen:
                continue
            cyc, x = [], v
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = ainv[b[x]]
            out.append(cyc)
        return out

    def is_admissible(self) -> bool:
        a, b = self.alpha_map, self.beta_map
        for mp in (a, b):
            for v, t in mp.items():
                if self.ctx.arc[t] != -self.ctx.arc[v]:
                    return False
                if {self.ctx.boundary[v], self.ctx.boundary[t]} == {"R", "R-"}:
                    return False
        return True

    def validate(self):
        eps = self.ctx.eps
        for name in ("tau_u", "pi", "tau_b", "phi"):
            if not is_valid_diagram(getattr(self, name), eps):
                raise ValueError(f"{name} violates the wall rule")


def _c1_count(m: BrauerMap) -> int:
    s = m.s
    l1, p = compose_pairings(m.tau_u, m.pi, s)
    l2, p = compose_pairings(p, m.tau_b, s)
    l3, p = compose_pairings(p, m.phi, s)
    return l1 + l2 + l3 + count_cycles_closed(p, s)


def euler_characteristic(m: BrauerMap) -> int:
    """``-s + #C_I + #C_II`` with ``#C_I`` from the closed product and ``#C_II`` the cycles of ``alpha^-1 beta``."""
    return -m.s + _c1_count(m) + len(m.c2_cycles())


# levels of the stacked complex; level 2 is glued to level -2
_LEVELS = {"tau_u": (1, 2), "pi": (0, 1), "tau_b": (-1, 0), "phi": (-2, -1)}


def _vertex(x: int, level: int) -> tuple[int, int]:
    return (x, -2 if level == 2 else level)


class CWComplex:
    """Explicit 2-complex of a Brauer map: vertices, labelled intervals and face circles."""

    def __init__(self, m: BrauerMap):
        self.map = m
        s = m.s
        eps = m.ctx.eps
        self.vertices = {(x, L) for x in range(s) for L in (-2, -1, 0, 1)}
        # edge: (kind, tail, head), oriented from the endpoint where eps*eta = -1
        self.edges: list[tuple[str, tuple[int, int], tuple[int, int]]] = []
        for kind, (lo, hi) in _LEVELS.items():
            pairing = getattr(m, kind)
            for p in range(2 * s):
                q = pairing[p]
                if p > q:
                    continue
                v, a = _unpoint(p, s)
                w, b = _unpoint(q, s)
                pv = _vertex(v, hi if a > 0 else lo)
                pw = _vertex(w, hi if b > 0 else lo)
                if eps[v] * a < 0:
                    self.edges.append((kind, pv, pw))
                else:
                    self.edges.append((kind, pw, pv))
        for x in range(s):
            lo, hi = (x, -2), (x, -1)
            self.edges.append(("iota", lo, hi) if eps[x] > 0 else ("iota", hi, lo))
        self.c1 = self._circles(lambda k: k != "iota")
        # the iota orientation is chosen for boundary circles, so C_II is walked unoriented
        self.c2 = self._circles(lambda k: k in ("phi", "iota"), oriented=False)
        self.boundary = self._circles(lambda k: k != "phi")

    def _circles(self, use, oriented: bool = True) -> list[list[int]]:
        """Components of the sub-graph on the selected edges; each must be a cycle."""
        inc: dict = {}
        chosen = []
        for i, (k, a, b) in enumerate(self.edges):
            if not use(k):
                continue
            chosen.append(i)
            inc.setdefault(a, []).append(i)
            inc.setdefault(b, []).append(i)
        for vtx, lst in inc.items():
            if len(lst) != 2:
                raise AssertionError(f"vertex {vtx} has degree {len(lst)} in a face graph")
        seen = set()
        out = []
        for start in chosen:
            if start in seen:
                continue
            # walk following orientation: leave each vertex by the edge whose tail it is
            cyc = []
            e = start
            at = self.edges[e][2]
            while e not in seen:
                seen.add(e)
                cyc.append(e)
                nxt = [j for j in inc[at] if j != e]
                e = nxt[0] if nxt else e
                if oriented and self.edges[e][1] != at:
                    raise AssertionError("inconsistent orientation along a circle")
                _, a, b = self.edges[e]
                at = b if a == at else a
            out.append(cyc)
        return out

    def euler(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.c1) + len(self.c2)

    def face_incidence(self) -> list[int]:
        count = [0] * len(self.edges)
        for cyc in self.c1 + self.c2:
            for e in cyc:
                count[e] += 1
        return count

    def boundary_ok(self) -> bool:
        """Interior edges are exactly the phi-intervals."""
        for (k, _, _), c in zip(self.edges, self.face_incidence()):
            if c != (2 if k == "phi" else 1):
                return False
        return True


def euler_characteristic_cw(m: BrauerMap) -> int:
    return CWComplex(m).euler()


# ---------------------------------------------------------------------------
# reductions


def _diagram_cycles(pairing: Sequence[int]) -> list[set[int]]:
    """Cycles of the graph with the strings and the edges ``v -- s+v``."""
    s = len(pairing) // 2
    seen = [False] * (2 * s)
    out = []
    for p in range(2 * s):
        if seen[p]:
            continue
        comp, x = set(), p
        while not seen[x]:
            seen[x] = seen[pairing[x]] = True
            comp.update((x, pairing[x]))
            y = pairing[x]
            x = y + s if y < s else y - s
        out.append(comp)
    return out


def _uncross_once(pairing: Sequence[int], ctx: ColoredDiagramContext):
    s = ctx.s
    cycles = _diagram_cycles(pairing)
    tops = [(p, pairing[p]) for p in range(s) if p < pairing[p] < s]
    bots = [(p, pairing[p]) for p in range(s, 2 * s) if p < pairing[p]]
    for t in tops:
        cyc = next(c for c in cycles if t[0] in c)
        for b in bots:
            if b[0] not in cyc:
                continue
            for x, y in ((b[0], b[1]), (b[1], b[0])):
                new = list(pairing)
                new[t[0]], new[x] = x, t[0]
                new[t[1]], new[y] = y, t[1]
                if is_valid_diagram(new, ctx.eps) and is_compatible(new, ctx):
                    return tuple(new)
    raise AssertionError("no compatible uncrossing found")


def reduce_tau(m: BrauerMap, trace: list | None = None) -> BrauerMap:
    """Rewire horizontal pairs of ``tau_u`` and ``tau_b`` until both are permutations.

    Each step removes one top and one bottom horizontal string lying on a common
    cycle; the Euler characteristic moves by at most one per step.
    """
    cur = m
    chi = euler_characteristic(cur)
    for which in ("tau_u", "tau_b"):
        while h_of(getattr(cur, which)):
            new = _uncross_once(getattr(cur, which), cur.ctx)
            cur = BrauerMap(cur.ctx, new if which == "tau_u" else cur.tau_u, cur.pi,
                            new if which == "tau_b" else cur.tau_b, cur.alpha, cur.beta)
            nchi = euler_characteristic(cur)
            if abs(nchi - chi) > 1:
                raise AssertionError("uncrossing moved the Euler characteristic by more than one")
            if trace is not None:
                trace.append(nchi - chi)
            chi = nchi
    return cur


def reduce_phi(m: BrauerMap, trace: list | None = None) -> BrauerMap:
    """Transpose targets of ``alpha`` until it agrees with ``beta``; ``chi`` never drops."""
    cur = m
    chi = euler_characteristic(cur)
    while True:
        a, b = cur.alpha_map, cur.beta_map
        diff = sorted(v for v in a if a[v] != b[v])
        if not diff:
            return cur
        v = diff[0]
        ainv = {t: x for x, t in a.items()}
        c = ainv[b[v]]
        before = cur.phi_distance()
        a[c], a[v] = a[v], b[v]
        cur = BrauerMap(cur.ctx, cur.tau_u, cur.pi, cur.tau_b, tuple(sorted(a.items())), cur.beta)
        if cur.phi_distance() != before - 1:
            raise AssertionError("transposition step did not shorten phi")
        nchi = euler_characteristic(cur)
        if nchi - chi not in (0, 2):
            raise AssertionError(f"transposition step changed chi by {nchi - chi}")
        if trace is not None:
            trace.append(nchi - chi)
        chi = nchi


# ---------------------------------------------------------------------------
# pieces


@dataclass
class PieceReport:
    pieces: list = field(default_factory=list)  # dicts: type, e, he, chi, word
    joint_discs: list = field(default_factory=list)  # dicts: d_star, d_wr
    n_rr: int = 0
    n_wr: int = 0
    n_ww: int = 0
    he_prime_rr: int = 0
    chi: int = 0
    chi_cut: Fraction = Fraction(0)
    chi_plus: Fraction = Fraction(0)
    chi_minus: Fraction = Fraction(0)
    boundary_words: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    def all_ok(self) -> bool:
        return all(self.checks.values())


def _kind(b: str) -> str:
    return "W" if b.startswith("W") else "R"


def _power_of_cyclic(word: Sequence[int], base: Sequence[int]) -> int:
    """``p`` when ``word`` is the ``p``-th power of a cyclic permutation of ``base``, else 0."""
    L = len(base)
    if L == 0 or len(word) % L:
        return 0
    p = len(word) // L
    for k in range(L):
        rot = tuple(base[k:]) + tuple(base[:k])
        if tuple(word) == rot * p:
            return p
    return 0


def pieces_decomposition(m: BrauerMap) -> PieceReport:
    """Decompose the quadrangular surface into pieces and joint discs and run the accounting checks."""
    ctx = m.ctx
    g = ctx.genus
    if h_of(m.tau_u) or h_of(m.tau_b):
        raise ValueError("tau diagrams must be permutations")
    if m.alpha != m.beta:
        raise ValueError("phi must be a quadrangle")
    if not m.is_admissible():
        raise ValueError("map is not admissible")
    cw = CWComplex(m)
    E = cw.edges
    words = dict(ctx.words)
    # boundary circles: colour, multiplicity and the word read along them
    edge_bnd = {}
    rep = PieceReport()
    w_order: dict[int, tuple[int, int]] = {}
    for bi, cyc in enumerate(cw.boundary):
        xs = [E[e][1][0] for e in cyc if E[e][0] == "iota"]
        cols = {ctx.boundary[x] for x in xs}
        if len(cols) != 1:
            raise AssertionError("boundary colour not constant along a boundary circle")
        col = cols.pop()
        letters = [ctx.arc[x] for x in xs]
        base = words["R" if col.startswith("R") else "W"]
        inv = tuple(-z for z in reversed(base))
        p = _power_of_cyclic(letters, base) or _power_of_cyclic(letters, inv)
        rep.boundary_words.append((col, p, tuple(letters)))
        for e in cyc:
            edge_bnd[e] = (bi, col)
        if col.startswith("W"):
            for pos, x in enumerate(xs):
                w_order[x] = (bi, pos)
    # alpha-arcs keyed by their negative endpoint
    alpha = m.alpha_map

    def arc_type(v):
        return "".join(sorted(_kind(ctx.boundary[v]) + _kind(ctx.boundary[alpha[v]])))

    types = {v: arc_type(v) for v in alpha}
    rep.n_rr = sum(1 for t in types.values() if t == "RR")
    rep.n_wr = sum(1 for t in types.values() if t == "RW")
    rep.n_ww = sum(1 for t in types.values() if t == "WW")

    # each C_I circle becomes a 2-cell: record arc traversals and boundary runs
    cells = []
    for cyc in cw.c1:
        trav, runs = [], []
        start = next(i for i, e in enumerate(cyc) if E[e][0] == "phi")
        order = cyc[start:] + cyc[:start]
        cur_run = None
        for e in order:
            kind, tail, head = E[e]
            if kind == "phi":
                if cur_run is not None:
                    runs.append(cur_run)
                    cur_run = None
                v = tail[0] if ctx.eps[tail[0]] < 0 else head[0]
                positive = ctx.eps[tail[0]] < 0
                trav.append((v, positive))
            else:
                col = edge_bnd[e][1]
                if cur_run is None:
                    cur_run = col
                elif cur_run != col:
                    raise AssertionError("boundary run changes colour")
        if cur_run is not None:
            runs.append(cur_run)
        cells.append((trav, runs))

    # pre-pieces and pieces
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    wr_arcs = [v for v, t in types.items() if t == "RW"]
    for v in wr_arcs:
        parent[("arc", v)] = ("arc", v)
    prepieces = []
    ok_pre = True
    for ci, (trav, runs) in enumerate(cells):
        wruns = [r for r in runs if r.startswith("W")]
        if len(wruns) != 1:
            continue
        arcs = {v for v, _ in trav if types[v] == "RW"}
        # two WR sides; they are one arc crossed both ways when an annulus closes on itself
        if sum(1 for v, _ in trav if types[v] == "RW") != 2 or not arcs:
            ok_pre = False
        prepieces.append(ci)
        parent.setdefault(("cell", ci), ("cell", ci))
        for v in arcs:
            union(("cell", ci), ("arc", v))
    rep.checks["prepiece_two_wr_arcs"] = ok_pre
    groups: dict = {}
    for key in parent:
        groups.setdefault(find(key), []).append(key)
    pre_set = set(prepieces)
    bs_ok = True
    word_ok = True
    sum_he = 0
    for members in groups.values():
        arcs = [v for kind, v in members if kind == "arc"]
        cs = [c for kind, c in members if kind == "cell"]
        e_p = len(arcs)
        chi_p = e_p - len(cs)
        he_p = 0
        for c in cs:
            he_p += sum(1 for r in cells[c][1] if r.startswith("R")) - 1
        sum_he += he_p
        wcol = {ctx.boundary[v] if _kind(ctx.boundary[v]) == "W" else ctx.boundary[alpha[v]] for v in arcs}
        rcol = {ctx.boundary[v] if _kind(ctx.boundary[v]) == "R" else ctx.boundary[alpha[v]] for v in arcs}
        # letters at the W endpoints in boundary order
        wpts = sorted(
            (v if _kind(ctx.boundary[v]) == "W" else alpha[v]) for v in arcs
        )
        bis = {w_order[x][0] for x in wpts}
        positions = sorted(w_order[x][1] for x in wpts)
        wlen = sum(1 for e in cw.boundary[next(iter(bis))] if E[e][0] == "iota") if bis else 0
        contiguous = False
        letters = ()
        if len(bis) == 1 and positions:
            pos_set = set(positions)
            for st in positions:
                block = [(st + i) % wlen for i in range(len(positions))]
                if set(block) == pos_set:
                    xs_by_pos = {w_order[x][1]: x for x in wpts}
                    letters = tuple(ctx.arc[xs_by_pos[p]] for p in block)
                    contiguous = True
                    break
        base = words["W"]
        inv = tuple(-z for z in reversed(base))
        if chi_p == 1:
            good = contiguous and (is_cyclic_subword(letters, base) or is_cyclic_subword(letters, inv))
        elif chi_p == 0:
            good = contiguous and (_power_of_cyclic(letters, base) == 1 or _power_of_cyclic(letters, inv) == 1)
        else:
            good = False
        word_ok &= good
        if e_p > (2 * g - 1) * he_p + 2 * g * chi_p:
            bs_ok = False
        rep.pieces.append(
            {"type": (wcol.pop() if len(wcol) == 1 else "?") + (rcol.pop() if len(rcol) == 1 else "?"),
             "e": e_p, "he": he_p, "chi": chi_p, "word": letters}
        )
    rep.checks["piece_word_is_cyclic_subword"] = word_ok
    rep.checks["birman_series_piece_bound"] = bs_ok
    # every point on an R-type boundary is the endpoint of exactly one arc
    rep.checks["arc_count_identity"] = sum(1 for x in ctx.boundary if x.startswith("R")) == 2 * rep.n_rr + rep.n_wr

    # joint discs and the cut surface
    chi_cut = Fraction(0)
    chi_plus = Fraction(0)
    chi_minus = Fraction(0)
    jd_ok = True
    sum_dwr = 0
    for ci, (trav, runs) in enumerate(cells):
        d_star = sum(1 for v, _ in trav if types[v] in ("RW", "WW"))
        d_wr = sum(1 for v, _ in trav if types[v] == "RW")
        val = 1 - Fraction(d_star, 2)
        chi_cut += val
        if ci in pre_set:
            continue
        rep.joint_discs.append({"d_star": d_star, "d_wr": d_wr})
        if d_wr > 0:
            chi_minus += val
            sum_dwr += d_wr
            if val > Fraction(-d_wr, 4):
                jd_ok = False
        else:
            chi_plus += val
    positively = {(v, pos) for c in prepieces for v, pos in cells[c][0] if types[v] == "RR"}
    rep.he_prime_rr = 2 * rep.n_rr - len(positively)
    rep.chi = euler_characteristic(m)
    rep.chi_cut = chi_cut
    rep.chi_plus = chi_plus
    rep.chi_minus = chi_minus
    n_plus_m = sum(1 for x in ctx.boundary if x.startswith("R")) // (4 * g)
    rep.checks["cut_euler_identity"] = chi_cut == rep.chi + rep.n_rr
    rep.checks["dual_graph_euler"] = rep.chi == len(cells) - len(alpha)
    rep.checks["boundary_classification"] = cw.boundary_ok()
    rep.checks["joint_disc_negative"] = jd_ok
    rep.checks["joint_disc_positive"] = chi_plus * 4 * g <= rep.he_prime_rr
    rep.checks["piece_disc_double_count"] = sum(2 * p["chi"] for p in rep.pieces) == sum_dwr
    rep.checks["he_double_count"] = 2 * rep.n_rr == rep.he_prime_rr + sum_he
    rep.checks["boundary_words"] = all(p >= 1 for _, p, _ in rep.boundary_words)
    rep.checks["euler_bound"] = rep.chi <= -n_plus_m - Fraction(2 * g - 2, 4 * g) * rep.he_prime_rr
    return rep


# ---------------------------------------------------------------------------
# census


@dataclass
class CensusReport:
    genus: int
    omega: str
    n: int
    m: int
    s: int
    horizontal_choices: int
    admissible_matchings: int
    tau_choices: int
    maps_checked: int = 0
    cw_agree: int = 0
    admissible_maps: int = 0
    bound_holds: int = 0
    max_chi_minus_h: int | None = None
    tau_steps_ok: bool = True
    phi_steps_ok: bool = True
    pieces_checked: int = 0
    piece_failures: dict = field(default_factory=dict)
    nonadmissible_max_chi_minus_h: int | None = None

    @property
    def ok(self) -> bool:
        return (
            self.cw_agree == self.maps_checked
            and self.bound_holds == self.admissible_maps
            and self.tau_steps_ok
            and self.phi_steps_ok
            and not self.piece_failures
        )

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["ok"] = self.ok
        return d


def _block_taus(ctx: ColoredDiagramContext, n: int, m: int, n_blocks: int) -> list[list[tuple[int, ...]]]:
    """Compatible block diagrams for each extended relator letter."""
    k = n + m
    out = []
    base = all_diagrams(n, m)
    for q in range(n_blocks):
        sub = ColoredDiagramContext(
            ctx.eps[q * k:(q + 1) * k], ctx.arc[q * k:(q + 1) * k], ctx.boundary[q * k:(q + 1) * k]
        )
        ok = []
        for d in base:
            # walled diagrams use top 0..k-1 and bottom k..2k-1, matching our indices
            if is_valid_diagram(d.pairing, sub.eps) and is_compatible(d.pairing, sub):
                ok.append(d.pairing)
        out.append(ok)
    return out


def _product_tau(blocks: Sequence[tuple[int, ...]], k: int, extra: int) -> tuple[int, ...]:
    ident = (tuple(range(extra, 2 * extra)) + tuple(range(extra))) if extra else ()
    return tensor(*blocks, ident) if extra else tensor(*blocks)


def verify_geo_bound(
    r: SurfaceWord,
    omega: SurfaceWord,
    n: int,
    m: int,
    cap: int = CENSUS_CAP,
    max_h: int | None = None,
    all_horizontal: bool = True,
    check_pieces: bool = True,
) -> CensusReport:
    """Enumerate Brauer maps of the product form and test the Euler bound on each admissible one.

    With ``all_horizontal`` the Euler formula is also compared with the CW
    count on every horizontal pair, admissible or not.
    """
    if len(dehn_shorten(omega)) != len(omega):
        raise ValueError("omega is not a cyclically shortest representative")
    pi, ctx = build_second_moment_diagram(r, omega, n, m)
    s = ctx.s
    k = n + m
    nb = len(r)
    # the cap also bounds the enumeration work done before the census proper
    if math.factorial(k) > cap:
        raise SizeLimitError(f"{math.factorial(k)} block diagrams exceed cap {cap}", "census")
    hor_count = math.factorial(len(ctx.negatives())) ** 2
    if hor_count > cap:
        raise SizeLimitError(f"{hor_count} horizontal pairs exceed cap {cap}", "census")
    adm = admissible_matchings(ctx)
    blocks = _block_taus(ctx, n, m, nb)
    tau_count = math.prod(len(b) for b in blocks)
    if tau_count * tau_count > cap and max_h is None:
        raise SizeLimitError(f"{tau_count ** 2} tau pairs exceed cap {cap}", "census")
    tau_list = []
    for combo in itertools.product(*blocks):
        t = _product_tau(combo, k, 2 * len(omega))
        tau_list.append((h_of(t), t))
    tau_pairs = [(a, b) for a in tau_list for b in tau_list if max_h is None or a[0] + b[0] <= max_h]
    rep = CensusReport(r.genus, omega.text(), n, m, s, hor_count, len(adm), len(tau_pairs))
    total = len(tau_pairs) * len(adm) ** 2
    if all_horizontal:
        total += hor_count * len(tau_pairs)
    if total > cap:
        raise SizeLimitError(f"census of {total} maps exceeds cap {cap}", "census")

    seen_quadrangles = set()

    def run(mp: BrauerMap, admissible: bool):
        chi = euler_characteristic(mp)
        rep.maps_checked += 1
        if CWComplex(mp).euler() == chi:
            rep.cw_agree += 1
        h = mp.h
        if not admissible:
            val = chi - h
            if rep.nonadmissible_max_chi_minus_h is None or val > rep.nonadmissible_max_chi_minus_h:
                rep.nonadmissible_max_chi_minus_h = val
            return
        rep.admissible_maps += 1
        if chi <= -(n + m) + h:
            rep.bound_holds += 1
        val = chi - h
        if rep.max_chi_minus_h is None or val > rep.max_chi_minus_h:
            rep.max_chi_minus_h = val
        steps: list = []
        try:
            red = reduce_tau(mp, steps)
            if abs(euler_characteristic(red) - chi) > h:
                rep.tau_steps_ok = False
        except AssertionError:
            rep.tau_steps_ok = False
            return
        try:
            quad = reduce_phi(red)
        except AssertionError:
            rep.phi_steps_ok = False
            return
        if euler_characteristic(quad) < euler_characteristic(red) or not quad.is_admissible():
            rep.phi_steps_ok = False
        if check_pieces:
            key = (quad.tau_u, quad.tau_b, quad.alpha)
            if key in seen_quadrangles:
                return
            seen_quadrangles.add(key)
            pr = pieces_decomposition(quad)
            rep.pieces_checked += 1
            for name, good in pr.checks.items():
                if not good:
                    rep.piece_failures[name] = rep.piece_failures.get(name, 0) + 1

    adm_keys = {tuple(sorted(a.items())) for a in adm}
    for (_, tu), (_, tb) in tau_pairs:
        for a in adm:
            for b in adm:
                run(BrauerMap.make(ctx, tu, pi, tb, a, b), True)
        if all_horizontal:
            every = admissible_matchings(ctx, require_arc=False, forbid_rr=False)
            for a in every:
                for b in every:
                    if tuple(sorted(a.items())) in adm_keys and tuple(sorted(b.items())) in adm_keys:
                        continue
                    run(BrauerMap.make(ctx, tu, pi, tb, a, b), False)
    return rep
