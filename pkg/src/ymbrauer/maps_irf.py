"""Loop configurations on surfaces, lattice weight fields and the IRF formula.

A map is stored through its darts. Edge ``k`` has the positive dart ``2k``
(running along its loop) and the reverse dart ``2k + 1``. Each vertex lists
its outgoing darts in counter-clockwise order, and ``left[d]`` names the face
on the left of dart ``d``. Walking a face boundary with the face on the left
uses ``next(d) = rotation^{-1}(reverse(d))``.

A weight field assigns a highest weight to every face such that crossing an
edge from its left face to its right face adds one elementary vector ``e_i``;
``i`` is the edge label. The Wilson-loop expectation of the product of the
traces along the loops is the weighted sum over such fields of

    prod_f d_f^{chi(f) - m_f / 2} * prod_contact 1/r_v * prod_crossing sin(theta_v)
        * exp(-1/2 sum_f a_f c_f)

normalised by the same sum over the map without loops. Here ``m_f / 2`` counts
the vertices whose south corner lies in ``f``; the south corner sits between
the two incoming edges. At a four-valent vertex the incoming edge whose
counter-clockwise successor is the other incoming edge comes first; with
labels ``(a, b)`` in that order and ``lam`` the weight of the south face,
``r_v = lam_b - lam_a + rho_b - rho_a + 1``.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

import mpmath

from .algebra_core import (
    ExactScalar,
    all_perms,
    character_value,
    content_sum,
    enumerate_partitions,
    hook_dimension,
    perm_compose,
    perm_cycle_type,
    perm_inverse,
)
from .weights import _casimir_fraction, _dim_int, centre_index, from_pair, rho
from .witten_zeta import (
    PREC_BITS,
    DivergenceError,
    ZetaQuery,
    _shifted_theta,
    enumerate_su_classes,
    su_truncated_sum,
    tail_certificate,
    theta,
    u_truncated_sum,
    zeta,
)

__all__ = [
    "GeneralisedMap",
    "LoopConfiguration",
    "WeightField",
    "AreaVector",
    "VertexClass",
    "IRFTerm",
    "WilsonResult",
    "TruncationError",
    "classify_vertex",
    "crossing_parity_holds",
    "irf_term",
    "enumerate_fields",
    "enumerate_fields_bruteforce",
    "wilson_expectation",
    "partition_function",
    "two_face_oracle",
    "path_second_moment",
    "string_expansion_check",
    "frobenius_commutator_check",
    "refinement_invariance_test",
    "second_moment_decay_probe",
    "simple_loop_map",
    "figure_eight_map",
    "venn_map",
    "parallel_pair_map",
    "empty_map",
    "subdivide_edge",
]

IRF_SIGN = 1  # overall sign; +1 on every configuration checked against an oracle


class TruncationError(ValueError):
    """The cutoff cannot certify the requested tolerance."""


def _mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, ExactScalar):
        f = x.as_fraction()
        return mpmath.mpf(f.numerator) / f.denominator
    return mpmath.mpf(x)


# ---------------------------------------------------------------------------
# maps
# ---------------------------------------------------------------------------


class GeneralisedMap:
    """Embedded graph whose faces are surfaces of given genus.

    ``rotations`` maps each vertex to its outgoing darts in counter-clockwise
    order, ``left`` maps each dart to a face name and ``genus`` gives the genus
    of every face. A map without edges has a single face and no vertices.
    """

    def __init__(self, rotations: dict, left: dict, genus: dict):
        self.rotations = {v: tuple(ds) for v, ds in rotations.items()}
        self.left = dict(left)
        self.genus_of = dict(genus)
        darts = [d for ds in self.rotations.values() for d in ds]
        if sorted(darts) != list(range(len(darts))) or len(darts) % 2:
            raise ValueError("darts must be 0..2E-1, each listed at exactly one vertex")
        self.n_edges = len(darts) // 2
        self.vertex_of = {d: v for v, ds in self.rotations.items() for d in ds}
        if set(self.left) != set(darts):
            raise ValueError("every dart needs a left face")
        if not set(self.left.values()) <= set(self.genus_of):
            raise ValueError("left faces must all carry a genus")
        if not darts and len(self.genus_of) != 1:
            raise ValueError("a map without edges has exactly one face")
        self._prev = {}
        for ds in self.rotations.values():
            for j, d in enumerate(ds):
                self._prev[d] = ds[j - 1]
        for d in darts:
            if self.left[self.face_step(d)] != self.left[d]:
                raise ValueError(f"left face is not constant along the boundary through dart {d}")
        self._orbits = self._boundary_orbits()

    # basic structure
    @property
    def faces(self) -> tuple:
        return tuple(self.genus_of)

    @property
    def vertices(self) -> tuple:
        return tuple(self.rotations)

    @staticmethod
    def reverse(d: int) -> int:
        return d ^ 1

    def tail(self, edge: int):
        return self.vertex_of[2 * edge]

    def head(self, edge: int):
        return self.vertex_of[2 * edge + 1]

    def face_step(self, d: int) -> int:
        return self._prev[d ^ 1]

    def left_face(self, edge: int):
        return self.left[2 * edge]

    def right_face(self, edge: int):
        return self.left[2 * edge + 1]

    def _boundary_orbits(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for d in sorted(self.left):
            if d in seen:
                continue
            orb = []
            x = d
            while x not in seen:
                seen.add(x)
                orb.append(x)
                x = self.face_step(x)
            out.append(tuple(orb))
        return out

    def boundary_components(self, f) -> int:
        return sum(1 for orb in self._orbits if self.left[orb[0]] == f)

    def face_chi(self, f) -> int:
        return 2 - 2 * self.genus_of[f] - self.boundary_components(f)

    def euler_characteristic(self) -> int:
        """``#V - #E + sum_f chi(f)``, the Euler characteristic of the surface."""
        return len(self.rotations) - self.n_edges + sum(self.face_chi(f) for f in self.faces)

    def total_genus(self) -> int:
        chi = self.euler_characteristic()
        if chi % 2:
            raise ValueError("odd Euler characteristic: not a closed orientable surface")
        return (2 - chi) // 2

    def euler_relation_holds(self) -> bool:
        """Relation ``V - E + F - sum 2 g(f) = 2 - 2g`` for faces with one boundary each."""
        simple = all(self.boundary_components(f) <= 1 for f in self.faces)
        lhs = len(self.rotations) - self.n_edges + len(self.faces) - sum(2 * g for g in self.genus_of.values())
        return (not simple) or lhs == 2 - 2 * self.total_genus()

    def dual_edges(self) -> list[tuple[int, object, object]]:
        return [(k, self.left_face(k), self.right_face(k)) for k in range(self.n_edges)]

    def dual_distances(self, source) -> dict:
        adj = {f: set() for f in self.faces}
        for _, a, b in self.dual_edges():
            adj[a].add(b)
            adj[b].add(a)
        dist = {source: 0}
        queue = deque([source])
        while queue:
            f = queue.popleft()
            for g in adj[f]:
                if g not in dist:
                    dist[g] = dist[f] + 1
                    queue.append(g)
        if len(dist) != len(self.faces):
            raise ValueError("dual graph is disconnected")
        return dist


@dataclass(frozen=True)
class Corners:
    south: object
    north: object
    first_in: int  # edge whose incoming dart is followed counter-clockwise by the other
    second_in: int


class LoopConfiguration:
    """Oriented loops drawn on a map with simple transverse intersections.

    Vertices have degree four (a transverse crossing of two strands) or degree
    two (a marked point on a single strand, as needed to draw a simple loop).
    """

    def __init__(self, gmap: GeneralisedMap):
        self.map = gmap
        self.corners: dict = {}
        for v, ds in gmap.rotations.items():
            if len(ds) == 2:
                if sorted(d & 1 for d in ds) != [0, 1]:
                    raise ValueError(f"two-valent vertex {v} needs one incoming and one outgoing edge")
                continue
            if len(ds) != 4:
                raise ValueError(f"vertex {v} has degree {len(ds)}; loops need degree 2 or 4")
            parity = [d & 1 for d in ds]
            if sum(parity) != 2:
                raise ValueError(f"vertex {v} needs two incoming and two outgoing edges")
            for j in range(4):
                if parity[j] == parity[(j + 2) % 4]:
                    raise ValueError(f"vertex {v}: strands are not transverse")
            south = north = None
            for j in range(4):
                a, b = ds[j], ds[(j + 1) % 4]
                if a & 1 and b & 1:
                    south = gmap.left[a]
                    first, second = a >> 1, b >> 1
                if not (a & 1) and not (b & 1):
                    north = gmap.left[a]
            self.corners[v] = Corners(south, north, first, second)
        self.loops = self._trace_loops()

    def _next_positive(self, d: int) -> int:
        v = self.map.vertex_of[d ^ 1]
        ds = self.map.rotations[v]
        j = ds.index(d ^ 1)
        return ds[(j + len(ds) // 2) % len(ds)]

    def _trace_loops(self) -> list[tuple[int, ...]]:
        seen, loops = set(), []
        for k in range(self.map.n_edges):
            if k in seen:
                continue
            loop = []
            d = 2 * k
            while (d >> 1) not in seen:
                seen.add(d >> 1)
                loop.append(d >> 1)
                d = self._next_positive(d)
                if d & 1:
                    raise ValueError("loop orientation is inconsistent at a vertex")
            loops.append(tuple(loop))
        return loops

    @property
    def crossing_vertices(self) -> tuple:
        return tuple(self.corners)

    def swap_count(self, f) -> int:
        """``m_f``: twice the number of south corners inside ``f``."""
        return 2 * sum(1 for c in self.corners.values() if c.south == f)

    def face_exponent(self, f) -> Fraction:
        return Fraction(self.map.face_chi(f)) - Fraction(self.swap_count(f), 2)

    def exponent_sum(self) -> Fraction:
        return sum((self.face_exponent(f) for f in self.map.faces), Fraction(0))


# ---------------------------------------------------------------------------
# weight fields
# ---------------------------------------------------------------------------


class WeightField:
    """Highest weights on faces; ``su`` compares weights modulo constants."""

    def __init__(self, values: dict, su: bool = False):
        self.values = {f: tuple(int(x) for x in e) for f, e in values.items()}
        self.su = su
        Ns = {len(e) for e in self.values.values()}
        if len(Ns) != 1:
            raise ValueError("all weights need the same rank")
        self.N = Ns.pop()

    def __getitem__(self, f):
        return self.values[f]

    def key(self):
        if not self.su:
            return tuple(sorted((repr(f), e) for f, e in self.values.items()))
        c = centre_index(self.N)
        return tuple(sorted((repr(f), tuple(x - e[c] for x in e)) for f, e in self.values.items()))

    def label(self, left_w: tuple, right_w: tuple) -> Optional[int]:
        diff = [b - a for a, b in zip(left_w, right_w)]
        for i in range(self.N):
            y = diff.copy()
            y[i] -= 1
            if self.su:
                if len(set(y)) == 1:
                    return i
            elif not any(y):
                return i
        return None

    def labels(self, gmap: GeneralisedMap) -> dict[int, int]:
        out = {}
        for k, lf, rf in gmap.dual_edges():
            i = self.label(self.values[lf], self.values[rf])
            if i is None:
                raise ValueError(f"field is not Lipschitz across edge {k}")
            out[k] = i
        return out

    def shifted(self, c: int) -> "WeightField":
        return WeightField({f: tuple(x + c for x in e) for f, e in self.values.items()}, self.su)


class AreaVector:
    """Non-negative face areas with positive total."""

    def __init__(self, areas: dict):
        self.areas = {f: Fraction(a) if not isinstance(a, float) else a for f, a in areas.items()}
        if any(a < 0 for a in self.areas.values()):
            raise ValueError("areas must be non-negative")
        if self.total <= 0:
            raise ValueError("total area must be positive")

    @property
    def total(self):
        return sum(self.areas.values())

    def __getitem__(self, f):
        return self.areas[f]


def _dominant(e) -> bool:
    return all(e[i] >= e[i + 1] for i in range(len(e) - 1))


def _step(e: tuple, i: int, sign: int) -> Optional[tuple]:
    f = list(e)
    f[i] += sign
    return tuple(f) if _dominant(f) else None


def _reference_weights(N: int, k: int) -> Iterable[tuple]:
    for lam, mu in enumerate_su_classes(N, k):
        yield from_pair(lam, mu, N).entries


def enumerate_fields(config: LoopConfiguration, N: int, k: int, reference, su: bool = False) -> list[WeightField]:
    """Fields with ``|lam(reference)| <= k`` (reference weight centred).

    The reference weight is propagated along a breadth-first dual spanning
    tree by Pieri steps; the remaining dual edges filter for consistency.
    For U(N) each returned field stands for its whole orbit under constant
    shifts; for SU(N) each field is a tuple of classes.
    """
    gmap = config.map
    tree, rest = [], []
    seen = {reference}
    order = deque([reference])
    edges = gmap.dual_edges()
    while order:
        f = order.popleft()
        for k_, lf, rf in edges:
            if lf == f and rf not in seen:
                tree.append((k_, lf, rf, +1))
                seen.add(rf)
                order.append(rf)
            elif rf == f and lf not in seen:
                tree.append((k_, rf, lf, -1))
                seen.add(lf)
                order.append(lf)
    if len(seen) != len(gmap.faces):
        raise ValueError("dual graph is disconnected")
    used = {t[0] for t in tree}
    rest = [e for e in edges if e[0] not in used]
    out = []
    for ref_w in _reference_weights(N, k):
        partial = [{reference: ref_w}]
        for _, known, new, sign in tree:
            nxt = []
            for fld in partial:
                for i in range(N):
                    w = _step(fld[known], i, sign)
                    if w is not None:
                        g = dict(fld)
                        g[new] = w
                        nxt.append(g)
            partial = nxt
        for fld in partial:
            wf = WeightField(fld, su)
            if all(wf.label(fld[lf], fld[rf]) is not None for _, lf, rf in rest):
                out.append(wf)
    return out


def enumerate_fields_bruteforce(config: LoopConfiguration, N: int, k: int, reference, su: bool = False) -> set:
    """Independent generator: every face ranges over a box around the reference."""
    gmap = config.map
    dist = gmap.dual_distances(reference)
    faces = list(gmap.faces)
    found = set()
    for ref_w in _reference_weights(N, k):
        boxes = []
        for f in faces:
            if f == reference:
                boxes.append([ref_w])
                continue
            r = dist[f]
            cands = []
            for delta in itertools.product(range(-r, r + 1), repeat=N):
                if sum(abs(x) for x in delta) > r:
                    continue
                w = tuple(a + b for a, b in zip(ref_w, delta))
                if _dominant(w):
                    cands.append(w)
            boxes.append(cands)
        for combo in itertools.product(*boxes):
            wf = WeightField(dict(zip(faces, combo)), su)
            try:
                wf.labels(gmap)
            except ValueError:
                continue
            found.add(wf.key())
    return found


# ---------------------------------------------------------------------------
# IRF terms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VertexClass:
    kind: str  # "contact" or "crossing"
    a: int
    b: int
    r: int

    @property
    def cos(self) -> Fraction:
        return Fraction(1, self.r)

    @property
    def sin(self) -> mpmath.mpf:
        return mpmath.sqrt(1 - mpmath.mpf(1) / (self.r * self.r))


def classify_vertex(config: LoopConfiguration, v, fld: WeightField, labels: Optional[dict] = None) -> VertexClass:
    """Contact or crossing type, labels ``(a, b)`` (0-based) and ``r_v``."""
    c = config.corners[v]
    labels = labels if labels is not None else fld.labels(config.map)
    a, b = labels[c.first_in], labels[c.second_in]
    lam_s, lam_n = fld[c.south], fld[c.north]
    if fld.su:
        same = len({x - y for x, y in zip(lam_s, lam_n)}) == 1
    else:
        same = lam_s == lam_n
    kind = "contact" if same else "crossing"
    rh = rho(fld.N)
    r = lam_s[b] - lam_s[a] + rh[b] - rh[a] + 1
    if r.denominator != 1 or r == 0:
        raise AssertionError(f"invalid r_v = {r} at vertex {v}")
    r = int(r)
    if a == b and kind != "contact":
        raise AssertionError("an (a,a)-point must be a contact point")
    return VertexClass(kind, a, b, r)


@dataclass
class IRFTerm:
    dim_exponents: dict  # weight entries -> exponent (Fraction)
    interaction: object  # Fraction when exact, mpf otherwise
    casimir_weight: object  # sum_f a_f c_f as Fraction or float
    vertex_classes: dict
    dim_factor: object = None
    dim_factor_desingular: object = None

    @property
    def coefficient(self):
        """``D * I`` as a Fraction when exact, else an mpf."""
        if isinstance(self.dim_factor, Fraction) and isinstance(self.interaction, Fraction):
            return self.dim_factor * self.interaction
        return _mpf(self.dim_factor) * _mpf(self.interaction)

    def value(self):
        return IRF_SIGN * _mpf(self.coefficient) * mpmath.exp(-_mpf(self.casimir_weight) / 2)


def _dim_power(d: int, e: Fraction):
    if e.denominator == 1:
        return Fraction(d) ** int(e)
    return mpmath.power(d, _mpf(e))


def _dim_product(exps: dict):
    out = Fraction(1)
    exact = True
    acc = mpmath.mpf(1)
    for w, e in exps.items():
        if e == 0:
            continue
        d = _dim_int(w)
        p = _dim_power(d, e)
        if isinstance(p, Fraction):
            out *= p
        else:
            exact = False
            acc *= p
    return out if exact else _mpf(out) * acc


def _canonical(w: tuple, su: bool) -> tuple:
    if not su:
        return w
    c = w[centre_index(len(w))]
    return tuple(x - c for x in w)


def _desingular_dimension(config: LoopConfiguration, fld: WeightField, classes: dict):
    """Dimension factor from the faces of the loops resolved at contact points.

    Contact points glue their north and south faces through a band, lowering
    the Euler characteristic of the merged face by one. Crossing points keep
    their corners, and each still carries ``(d_south d_north)^{-1/2}``.
    """
    gmap = config.map
    parent = {f: f for f in gmap.faces}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    bands = {}
    for v, cls in classes.items():
        c = config.corners[v]
        if cls.kind == "contact":
            a, b = find(c.south), find(c.north)
            if a != b:
                parent[a] = b
    for v, cls in classes.items():
        if cls.kind == "contact":
            root = find(config.corners[v].south)
            bands[root] = bands.get(root, 0) + 1
    chi = {}
    weight = {}
    for f in gmap.faces:
        root = find(f)
        chi[root] = chi.get(root, 0) + gmap.face_chi(f)
        w = _canonical(fld[f], fld.su)
        if weight.setdefault(root, w) != w:
            raise AssertionError("merged faces carry different weights")
    exps: dict = {}
    for root, x in chi.items():
        w = weight[root]
        exps[w] = exps.get(w, Fraction(0)) + x - bands.get(root, 0)
    for v, cls in classes.items():
        if cls.kind == "crossing":
            c = config.corners[v]
            for f in (c.south, c.north):
                w = _canonical(fld[f], fld.su)
                exps[w] = exps.get(w, Fraction(0)) - Fraction(1, 2)
    return _dim_product(exps)


def _casimir_weight(fld: WeightField, areas: AreaVector):
    total = Fraction(0)
    as_float = False
    for f, a in areas.areas.items():
        if a == 0:
            continue
        c = _casimir_fraction(fld[f], fld.su)
        if isinstance(a, float):
            as_float = True
            total = float(total) + a * float(c)
        else:
            total += a * c
    return float(total) if as_float else total


def irf_term(fld: WeightField, config: LoopConfiguration, areas: AreaVector) -> IRFTerm:
    """``D * I * exp(-<a, c>/2)`` for one field, with both dimension routes."""
    labels = fld.labels(config.map)
    classes = {v: classify_vertex(config, v, fld, labels) for v in config.corners}
    exps: dict = {}
    for f in config.map.faces:
        w = _canonical(fld[f], fld.su)
        exps[w] = exps.get(w, Fraction(0)) + config.face_exponent(f)
    dim = _dim_product(exps)
    dim_alt = _desingular_dimension(config, fld, classes)
    if isinstance(dim, Fraction) and isinstance(dim_alt, Fraction):
        if dim != dim_alt:
            raise AssertionError(f"dimension routes disagree: {dim} vs {dim_alt}")
    elif abs(_mpf(dim) - _mpf(dim_alt)) > mpmath.mpf(10) ** -25 * (1 + abs(_mpf(dim))):
        raise AssertionError("dimension routes disagree")
    inter = Fraction(1)
    sines = mpmath.mpf(1)
    has_sine = False
    for cls in classes.values():
        if cls.kind == "contact":
            inter *= cls.cos
        else:
            has_sine = True
            sines *= cls.sin
    interaction = _mpf(inter) * sines if has_sine else inter
    if abs(_mpf(interaction)) > 1 + mpmath.mpf(10) ** -30:
        raise AssertionError("interaction factor exceeds 1 in modulus")
    return IRFTerm(exps, interaction, _casimir_weight(fld, areas), classes, dim, dim_alt)


def crossing_parity_holds(config: LoopConfiguration, fld: WeightField) -> bool:
    """Equal numbers of ``(a,b)`` and ``(b,a)`` crossing points for every pair."""
    labels = fld.labels(config.map)
    counts: dict = {}
    for v in config.corners:
        cls = classify_vertex(config, v, fld, labels)
        if cls.kind == "crossing":
            counts[(cls.a, cls.b)] = counts.get((cls.a, cls.b), 0) + 1
    return all(counts.get((b, a), 0) == n for (a, b), n in counts.items())


# ---------------------------------------------------------------------------
# expectations
# ---------------------------------------------------------------------------


def _charge_factor(fld: WeightField, areas: AreaVector) -> mpmath.mpf:
    """``sum_c exp(-1/2 sum_f a_f (2 c |lam_f| / N + c^2))`` over all charges ``c``."""
    N = fld.N
    T = _mpf(areas.total)
    B = sum((_mpf(a) * sum(fld[f]) for f, a in areas.areas.items()), mpmath.mpf(0)) / N
    return mpmath.exp(B * B / (2 * T)) * _shifted_theta(mpmath.exp(-T / 2), B / T)


def _damped_tail(N: int, s: Fraction, q, k: int, group: str, extra: int = 8) -> mpmath.mpf:
    """Bound on ``sum_{|alpha| > k} d^{-s} q^{c_alpha}`` (all charges for U).

    Shells up to ``k + extra`` are summed exactly. Beyond, ``c* >= |alpha|^2 / N^2``
    (Chebyshev and the l1-l2 inequality) times the undamped certificate.
    """
    K = k + extra
    if group == "U":
        shells = u_truncated_sum(N, s, q, k, K)
        far = theta(q) * tail_certificate(N, s, K)
    else:
        shells = su_truncated_sum(N, s, q, k, K)
        far = tail_certificate(N, s, K)
    damp = mpmath.power(mpmath.mpf(q), mpmath.mpf((K + 1) ** 2) / (N * N)) if q is not None else 1
    return shells + damp * far


@dataclass
class WilsonResult:
    value: mpmath.mpf  # E[prod Tr] / N^{#loops}
    trace_value: mpmath.mpf  # E[prod Tr]
    error_bound: mpmath.mpf
    numerator: mpmath.mpf
    denominator: mpmath.mpf
    numerator_tail: mpmath.mpf
    denominator_tail: mpmath.mpf
    fields: int
    reference_face: object
    details: dict = field(default_factory=dict)


def _weighted_sum(config: LoopConfiguration, areas: AreaVector, N: int, k: int, reference, group: str):
    su = group == "SU"
    total = mpmath.mpf(0)
    fields = enumerate_fields(config, N, k, reference, su)
    for fld in fields:
        term = irf_term(fld, config, areas)
        val = term.value()
        if not su:
            val *= _charge_factor(fld, areas)
        total += val
    return total, len(fields)


def empty_map(genus: int) -> LoopConfiguration:
    return LoopConfiguration(GeneralisedMap({}, {}, {"surface": genus}))


def wilson_expectation(
    config: LoopConfiguration,
    areas: AreaVector,
    N: int,
    group: str = "U",
    cutoff: int = 8,
    reference=None,
    tolerance: Optional[float] = None,
) -> WilsonResult:
    """Truncated IRF sum, normalised by the truncated partition function."""
    if group not in {"U", "SU"}:
        raise ValueError("group must be 'U' or 'SU'")
    gmap = config.map
    if set(areas.areas) != set(gmap.faces):
        raise ValueError("areas must be given on every face")
    if reference is None:
        reference = max(gmap.faces, key=lambda f: areas[f])
    if areas[reference] <= 0:
        raise ValueError("the reference face needs positive area")
    g = gmap.total_genus()
    s = Fraction(2 * g - 2)
    with mpmath.workprec(PREC_BITS):
        num, count = _weighted_sum(config, areas, N, cutoff, reference, group)
        whole = empty_map(g)
        den, _ = _weighted_sum(whole, AreaVector({"surface": areas.total}), N, cutoff, "surface", group)
        # tails: Pieri ratios bound every face dimension by the reference one
        dist = gmap.dual_distances(reference)
        d_prime = sum(abs(config.face_exponent(f)) * dist[f] for f in gmap.faces)
        factor = mpmath.power(N, _mpf(d_prime) + gmap.n_edges)
        try:
            q_ref = mpmath.exp(-_mpf(areas[reference]) / 2)
            q_tot = mpmath.exp(-_mpf(areas.total) / 2)
            tail_num = factor * _damped_tail(N, s, q_ref, cutoff, group) if gmap.n_edges else None
            tail_den = _damped_tail(N, s, q_tot, cutoff, group)
        except DivergenceError:
            tail_num = tail_den = mpmath.inf
        if tail_num is None:
            tail_num = tail_den
        value = num / den
        err = (tail_num + abs(value) * tail_den) / den
        loops = len(config.loops)
        res = WilsonResult(
            value / mpmath.power(N, loops),
            value,
            err / mpmath.power(N, loops),
            num,
            den,
            tail_num,
            tail_den,
            count,
            reference,
            {"d_prime": str(d_prime), "sign": IRF_SIGN, "loops": loops},
        )
    if tolerance is not None and res.error_bound > tolerance:
        raise TruncationError(
            f"cutoff {cutoff} certifies only {mpmath.nstr(res.error_bound, 5)} > {tolerance}"
        )
    return res


def partition_function(N: int, g: int, T, group: str = "SU", cutoff: int = 20) -> tuple:
    """``sum_{|alpha| <= k} d^{2-2g} e^{-T c/2}`` and a tail bound; ``T = 0`` is the ABG volume."""
    s = Fraction(2 * g - 2)
    if s <= 0:
        raise DivergenceError("the partition function sum needs g >= 2")
    q = None if T == 0 else float(mpmath.exp(-_mpf(T) / 2))
    res = zeta(ZetaQuery(group, s, N, cutoff, q=q))
    return res.partial_float(), res.tail_bound


# ---------------------------------------------------------------------------
# map constructors
# ---------------------------------------------------------------------------


def simple_loop_map(genus: int = 2) -> LoopConfiguration:
    """A contractible simple loop turning counter-clockwise around a disc."""
    gmap = GeneralisedMap({0: [0, 1]}, {0: "disc", 1: "outer"}, {"disc": 0, "outer": genus})
    return LoopConfiguration(gmap)


def figure_eight_map(genus: int = 2) -> LoopConfiguration:
    """One loop with a single self-crossing, lobes ``right`` (clockwise) and ``left``."""
    rotations = {0: [0, 2, 3, 1]}
    left = {0: "outer", 1: "right", 2: "left", 3: "outer"}
    return LoopConfiguration(GeneralisedMap(rotations, left, {"outer": genus, "right": 0, "left": 0}))


def venn_map(genus: int = 2) -> LoopConfiguration:
    """Two counter-clockwise circles meeting at two transverse points."""
    rotations = {"P": [5, 0, 6, 3], "Q": [2, 7, 1, 4]}
    left = {0: "L", 1: "O", 2: "M", 3: "R", 4: "R", 5: "O", 6: "M", 7: "L"}
    return LoopConfiguration(GeneralisedMap(rotations, left, {"L": 0, "M": 0, "R": 0, "O": genus}))


def parallel_pair_map(genus: int = 2) -> LoopConfiguration:
    """A non-separating simple loop and its reversed parallel copy bounding an annulus."""
    rotations = {0: [0, 1], 1: [2, 3]}
    left = {0: "annulus", 1: "rest", 2: "annulus", 3: "rest"}
    return LoopConfiguration(GeneralisedMap(rotations, left, {"annulus": 0, "rest": genus - 1}))


def subdivide_edge(config: LoopConfiguration, edge: int) -> LoopConfiguration:
    """Insert a two-valent vertex in the middle of ``edge``."""
    gmap = config.map
    new = gmap.n_edges
    # edge k becomes tail -> w (darts 2k, 2new+1) and w -> head (darts 2new, 2k+1)
    rotations = {v: list(ds) for v, ds in gmap.rotations.items()}
    w = ("mid", edge)
    head = gmap.head(edge)
    rotations[head] = [2 * new + 1 if d == 2 * edge + 1 else d for d in rotations[head]]
    rotations[w] = [2 * new, 2 * edge + 1]
    left = dict(gmap.left)
    left[2 * new] = gmap.left[2 * edge]
    left[2 * new + 1] = gmap.left[2 * edge + 1]
    return LoopConfiguration(GeneralisedMap(rotations, left, gmap.genus_of))


# ---------------------------------------------------------------------------
# oracles and checks
# ---------------------------------------------------------------------------


def two_face_oracle(N: int, genus: int, t, T, cutoff: int = 12, charge_range: int = 12) -> mpmath.mpf:
    """``E[Tr h] / N`` for a loop around a disc of area ``t``, by character calculus.

    Expanding both heat kernels into characters, integrating the handles gives
    ``d_beta^{1 - 2 genus}`` for the outer weight and the edge integral
    ``int Tr(h) chi_alpha(h) conj(chi_beta(h)) dh`` is the Pieri multiplicity
    of ``beta`` in ``alpha (x) V``. The outer weight is enumerated and charges
    are summed explicitly.
    """
    with mpmath.workprec(PREC_BITS):
        t, T = _mpf(t), _mpf(T)
        num = mpmath.mpf(0)
        den = mpmath.mpf(0)
        for lam, mu in enumerate_su_classes(N, cutoff):
            base = from_pair(lam, mu, N).entries
            for c in range(-charge_range, charge_range + 1):
                beta = tuple(x + c for x in base)
                db = _dim_int(beta)
                cb = _mpf(_casimir_fraction(beta, False))
                den += mpmath.power(db, 2 - 2 * genus) * mpmath.exp(-T * cb / 2)
                for i in range(N):
                    alpha = _step(beta, i, -1)
                    if alpha is None:
                        continue
                    ca = _mpf(_casimir_fraction(alpha, False))
                    w = _dim_int(alpha) * mpmath.power(db, 1 - 2 * genus)
                    num += w * mpmath.exp(-(t * ca + (T - t) * cb) / 2)
        return num / den / N


def path_second_moment(N: int) -> ExactScalar:
    """``E[|Tr U|^2] / N^2`` for a Haar unitary, through Weingarten calculus.

    ``int U_{ij} conj(U_{kl}) dU = delta_ik delta_jl Wg(id)`` and the index sum
    contributes ``N^{#cycles}``: the moment is ``sum_rho Wg(rho) N^{#rho}``.
    """
    from .walled_brauer import weingarten_full
    from .algebra_core import perm_num_cycles

    total = ExactScalar(0)
    for perm, coeff in weingarten_full(1).items():
        total = total + coeff.specialize(N) * (N ** perm_num_cycles(perm))
    return total / (N * N)


def _pair_irreps(n: int, m: int, N: int):
    for lam in enumerate_partitions(n):
        for mu in enumerate_partitions(m):
            if lam.length + mu.length <= N:
                yield lam, mu


def frobenius_commutator_check(n: int, m: int, genus: int = 2) -> bool:
    """``chi^{[lam,mu]}(omega_g) = (n!m!)^{2g} f^{1-2g}`` by enumerating commutator tuples."""
    order = math.factorial(n) * math.factorial(m)
    if order > 6:
        raise ValueError("brute-force commutator check limited to |S_n x S_m| <= 6")
    group = [(a, b) for a in all_perms(n) for b in all_perms(m)]

    def mul(x, y):
        return perm_compose(x[0], y[0]), perm_compose(x[1], y[1])

    def inv(x):
        return perm_inverse(x[0]), perm_inverse(x[1])

    ident = (tuple(range(n)), tuple(range(m)))
    counts: dict = {}
    for tup in itertools.product(group, repeat=2 * genus):
        prod = ident
        for j in range(genus):
            x, y = tup[2 * j], tup[2 * j + 1]
            prod = mul(prod, mul(mul(x, y), mul(inv(x), inv(y))))
        counts[prod] = counts.get(prod, 0) + 1
    for lam in enumerate_partitions(n):
        for mu in enumerate_partitions(m):
            chi = sum(
                c * character_value(lam, perm_cycle_type(g[0])) * character_value(mu, perm_cycle_type(g[1]))
                for g, c in counts.items()
            )
            f = hook_dimension(lam) * hook_dimension(mu)
            if Fraction(chi) != Fraction(order ** (2 * genus)) * Fraction(f) ** (1 - 2 * genus):
                return False
    return True


def string_expansion_check(N: int, g: int, q, degree_cap: int = 3, group: str = "SU") -> list[dict]:
    """Compare each ``(n, m)`` block of the deformed zeta sum with its group-algebra form.

    Left side: ``sum d^{2-2g} q^{c*}`` over ``lam |- n, mu |- m`` (Weyl dimensions,
    Casimir from the weight vector). Right side: the normalised trace of
    ``omega_g Omega^{2-2g} q^{2C/N}`` evaluated through central characters, with
    the Omega eigenvalue from the walled Brauer route and the ``C`` eigenvalue
    from content sums, times ``q^{n+m-(n-m)^2/N^2} / (n! m!)``.
    """
    from .walled_brauer import dim_from_omega

    if degree_cap > 4 or N <= 2 * degree_cap:
        raise ValueError("need degree_cap <= 4 and N > 2 degree_cap")
    report = []
    qq = _mpf(Fraction(q) if not isinstance(q, float) else q)
    for n in range(degree_cap + 1):
        for m in range(degree_cap + 1 - n):
            order = math.factorial(n) * math.factorial(m)
            lhs = mpmath.mpf(0)
            trace = mpmath.mpf(0)
            for lam, mu in _pair_irreps(n, m, N):
                w = from_pair(lam, mu, N).entries
                d = _dim_int(w)
                cstar = _casimir_fraction(w, True)
                lhs += mpmath.power(d, 2 - 2 * g) * mpmath.power(qq, _mpf(cstar))
                f = hook_dimension(lam) * hook_dimension(mu)
                omega_g = Fraction(order ** (2 * g)) * Fraction(f) ** (-2 * g)  # central eigenvalue
                omega_eig = dim_from_omega(lam, mu, N).as_fraction() * order / f
                c_eig = content_sum(lam) + content_sum(mu)
                eig = omega_g * omega_eig ** (2 - 2 * g)
                trace += Fraction(f * f, order) * _mpf(eig) * mpmath.power(qq, mpmath.mpf(2 * c_eig) / N)
            pref = mpmath.power(qq, n + m - mpmath.mpf((n - m) ** 2) / (N * N))
            rhs = pref * trace / order
            row = {"n": n, "m": m, "lhs": lhs, "rhs": rhs, "abs_error": abs(lhs - rhs)}
            if group == "U":
                charge = _shifted_theta(qq, mpmath.mpf(n - m) / N)
                row["lhs_u"] = lhs * charge
                row["rhs_u"] = rhs * charge
            report.append(row)
    return report


def _split_face_oracle(N: int, genus: int, t1, t2, T, cutoff: int = 10, charge_range: int = 10) -> mpmath.mpf:
    """Simple-loop expectation with the disc cut by a chord into areas ``t1``, ``t2``.

    The chord variable ``x`` is integrated by orthogonality,
    ``int chi_a(x) chi_b(x^{-1} y) dx = delta_ab chi_a(y) / d_a``,
    leaving a double sum over the two disc weights filtered on the diagonal.
    """
    with mpmath.workprec(PREC_BITS):
        t1, t2, T = _mpf(t1), _mpf(t2), _mpf(T)
        num = mpmath.mpf(0)
        den = mpmath.mpf(0)
        for lam, mu in enumerate_su_classes(N, cutoff):
            base = from_pair(lam, mu, N).entries
            for c in range(-charge_range, charge_range + 1):
                beta = tuple(x + c for x in base)
                db = _dim_int(beta)
                cb = _mpf(_casimir_fraction(beta, False))
                den += mpmath.power(db, 2 - 2 * genus) * mpmath.exp(-T * cb / 2)
                downs = [a for a in (_step(beta, i, -1) for i in range(N)) if a is not None]
                for a1 in downs:
                    for a2 in downs:
                        if a1 != a2:
                            continue
                        da = _dim_int(a1)
                        ca = _mpf(_casimir_fraction(a1, False))
                        w = mpmath.mpf(da) * da / da * mpmath.power(db, 1 - 2 * genus)
                        num += w * mpmath.exp(-(t1 * ca + t2 * ca + (T - t1 - t2) * cb) / 2)
        return num / den / N


def refinement_invariance_test(kind: str, N: int = 3, genus: int = 2, cutoff: int = 6, tol: float = 1e-12) -> bool:
    """Loop expectations agree between a map and a refinement of it.

    ``subdivide``: extra two-valent vertex on the loop (IRF on both maps).
    ``split_face``: chord across the disc, integrated by orthogonality.
    ``zero_area``: a figure eight with a zero-area lobe against the simple loop.
    """
    t, T = Fraction(1), Fraction(4)
    base = simple_loop_map(genus)
    a_base = AreaVector({"disc": t, "outer": T - t})
    ref = wilson_expectation(base, a_base, N, cutoff=cutoff).value
    if kind == "subdivide":
        fine = subdivide_edge(base, 0)
        other = wilson_expectation(fine, a_base, N, cutoff=cutoff).value
    elif kind == "split_face":
        other = _split_face_oracle(N, genus, t / 3, 2 * t / 3, T, cutoff=cutoff)
        ref = two_face_oracle(N, genus, t, T, cutoff=cutoff, charge_range=10)
    elif kind == "zero_area":
        fig = figure_eight_map(genus)
        a_fig = AreaVector({"right": t, "left": Fraction(0), "outer": T - t})
        other = wilson_expectation(fig, a_fig, N, cutoff=cutoff).value
    else:
        raise ValueError(f"unknown refinement kind {kind!r}")
    return abs(ref - other) <= tol * max(1, abs(ref))


def second_moment_decay_probe(
    omega: str = "a1",
    N_list=(3, 4, 5, 6, 7, 8),
    genus: int = 2,
    T: float = 1.0,
    census_degree: int = 1,
    irf_cutoff: int = 4,
) -> dict:
    """Assemble the ``K / N^2`` bound on ``E[|W_omega|^2]`` over SU(N).

    ``N^2 E <= [1 + sum_{0 < |alpha| <= k} K_alpha d_alpha N^{-|alpha|} e^{-T c*_alpha / 2}] / Z``
    where ``K_alpha`` is the number of admissible Brauer maps for
    ``alpha = [lam, mu]`` and ``Z >= 1`` is the truncated partition function.
    The per-map decay ``N^{-(n+m)}`` is the exponent certified by the census,
    whose largest ``chi - h`` must not exceed it. Each term is ``O(1)`` because
    ``d_alpha <= N^{|alpha|}``, which is asserted during assembly.
    """
    from .brauer_maps import verify_geo_bound
    from .surface_words import SurfaceWord, dehn_shorten, relator

    w = SurfaceWord.parse(genus, omega)
    if len(dehn_shorten(w)) != len(w):
        raise ValueError(f"{omega!r} is not cyclically shortest")
    r = relator(genus)
    census = {}
    for n in range(census_degree + 1):
        for m in range(census_degree + 1 - n):
            if n + m == 0:
                continue
            rep = verify_geo_bound(r, w, n, m, all_horizontal=False, check_pieces=False)
            if not rep.ok:
                raise AssertionError(f"census failed for {(n, m)}")
            if rep.max_chi_minus_h is not None and rep.max_chi_minus_h > -(n + m):
                raise AssertionError(f"census exponent {rep.max_chi_minus_h} exceeds {-(n + m)}")
            census[(n, m)] = (rep.max_chi_minus_h, rep.admissible_maps)
    rows = []
    qT = mpmath.exp(-mpmath.mpf(T) / 2)
    for N in N_list:
        bracket = mpmath.mpf(1)
        for (n, m), (_, count) in census.items():
            for lam, mu in _pair_irreps(n, m, N):
                wgt = from_pair(lam, mu, N).entries
                d = _dim_int(wgt)
                if d > N ** (n + m):
                    raise AssertionError("dimension exceeds N^{|alpha|}")
                cstar = _mpf(_casimir_fraction(wgt, True))
                bracket += count * mpmath.mpf(d) * mpmath.power(N, -(n + m)) * mpmath.power(qT, cstar)
        Z, _ = partition_function(N, genus, T, "SU", cutoff=census_degree)
        bound = bracket / _mpf(Z) / (N * N)
        row = {"N": N, "bound": bound}
        if omega.strip() == "a1" and irf_cutoff:
            pair = parallel_pair_map(genus)
            res = wilson_expectation(
                pair, AreaVector({"annulus": Fraction(0), "rest": Fraction(T).limit_denominator()}), N, "SU", irf_cutoff
            )
            row["irf_value"] = res.value
            row["irf_error"] = res.error_bound
        rows.append(row)
    slopes = []
    for a, b in zip(rows, rows[1:]):
        slopes.append(mpmath.log(b["bound"] / a["bound"]) / mpmath.log(mpmath.mpf(b["N"]) / a["N"]))
    return {"rows": rows, "slopes": slopes, "census": {f"{k[0]},{k[1]}": v for k, v in census.items()}}
