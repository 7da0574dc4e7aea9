"""Words in the genus-g surface group.

Letters are nonzero integers: generator ``k`` (0-based, ``a_1, b_1, a_2, ...``)
is ``k + 1`` and its inverse is ``-(k + 1)``. Tokens in text form are
``a1``, ``b1``, ``a1^-1`` and so on.

The group is ``<a_1, b_1, ..., a_g, b_g | [a_1, b_1] ... [a_g, b_g]>``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Sequence

__all__ = [
    "SurfaceWord",
    "letter",
    "relator",
    "twisted_relator",
    "reduce",
    "cyclic_reduce",
    "he_pair",
    "winding",
    "is_identity",
    "dehn_shorten",
    "is_cyclic_subword",
    "long_blocs",
    "long_chains",
    "CayleyBall",
    "conjugacy_min_length_oracle",
    "cyclically_reduced_words",
]

_TOKEN = re.compile(r"^([ab])(\d+)(\^-1)?$")


def letter(name: str, index: int, inverse: bool = False) -> int:
    code = 2 * (index - 1) + (1 if name == "b" else 0) + 1
    return -code if inverse else code


def letter_name(x: int) -> str:
    k = abs(x) - 1
    base = ("a" if k % 2 == 0 else "b") + str(k // 2 + 1)
    return base + ("^-1" if x < 0 else "")


class SurfaceWord:
    """Immutable word over the genus-``g`` alphabet."""

    __slots__ = ("genus", "letters")

    def __init__(self, genus: int, letters: Iterable[int] = ()):
        if genus < 1:
            raise ValueError("genus must be at least 1")
        self.genus = genus
        self.letters = tuple(letters)
        for x in self.letters:
            if x == 0 or abs(x) > 2 * genus:
                raise ValueError(f"letter {x} outside the genus-{genus} alphabet")

    @classmethod
    def parse(cls, genus: int, text: str) -> "SurfaceWord":
        out = []
        for tok in text.split():
            m = _TOKEN.match(tok)
            if not m:
                raise ValueError(f"bad token {tok!r}")
            out.append(letter(m.group(1), int(m.group(2)), bool(m.group(3))))
        return cls(genus, out)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return SurfaceWord(self.genus, self.letters[i])
        return self.letters[i]

    def __eq__(self, other):
        return isinstance(other, SurfaceWord) and self.genus == other.genus and self.letters == other.letters

    def __hash__(self):
        return hash((self.genus, self.letters))

    def __mul__(self, other: "SurfaceWord") -> "SurfaceWord":
        return SurfaceWord(self.genus, self.letters + other.letters)

    def inverse(self) -> "SurfaceWord":
        return SurfaceWord(self.genus, tuple(-x for x in reversed(self.letters)))

    def rotate(self, k: int) -> "SurfaceWord":
        if not self.letters:
            return self
        k %= len(self.letters)
        return SurfaceWord(self.genus, self.letters[k:] + self.letters[:k])

    def is_reduced(self) -> bool:
        return all(self.letters[i] != -self.letters[i + 1] for i in range(len(self.letters) - 1))

    def is_cyclically_reduced(self) -> bool:
        return self.is_reduced() and (len(self.letters) < 2 or self.letters[0] != -self.letters[-1])

    def text(self) -> str:
        return " ".join(letter_name(x) for x in self.letters)

    def __repr__(self):
        return f"SurfaceWord(g={self.genus}, '{self.text()}')"


@lru_cache(maxsize=None)
def _relator(genus: int, twisted: bool) -> tuple[int, ...]:
    out = []
    for i in range(1, genus + 1):
        a, b = letter("a", i), letter("b", i)
        if twisted:
            b = -b
        out += [a, b, -a, -b]
    return tuple(out)


def relator(genus: int) -> SurfaceWord:
    """``[a_1, b_1] ... [a_g, b_g]`` with ``[x, y] = x y x^-1 y^-1``."""
    return SurfaceWord(genus, _relator(genus, False))


def twisted_relator(genus: int) -> SurfaceWord:
    """``[a_1, b_1^-1] ... [a_g, b_g^-1]``, the word used to measure winding."""
    return SurfaceWord(genus, _relator(genus, True))


def _free_reduce(seq: Sequence[int]) -> list[int]:
    out: list[int] = []
    for x in seq:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def _cyclic_reduce(seq: Sequence[int]) -> list[int]:
    out = _free_reduce(seq)
    i, j = 0, len(out)
    while j - i >= 2 and out[i] == -out[j - 1]:
        i += 1
        j -= 1
    return out[i:j]


def reduce(w: SurfaceWord) -> SurfaceWord:
    return SurfaceWord(w.genus, _free_reduce(w.letters))


def cyclic_reduce(w: SurfaceWord) -> SurfaceWord:
    return SurfaceWord(w.genus, _cyclic_reduce(w.letters))


def is_cyclic_subword(u: Sequence[int], v: Sequence[int]) -> bool:
    """True when ``u`` is a subword of some cyclic permutation of ``v`` (doubled-word scan)."""
    u, v = tuple(u), tuple(v)
    if len(u) > len(v):
        return False
    if not u:
        return True
    doubled = v + v
    n = len(u)
    return any(doubled[i:i + n] == u for i in range(len(v)))


@lru_cache(maxsize=None)
def _positions(word: tuple[int, ...]) -> dict[int, int]:
    return {x: i for i, x in enumerate(word)}


def he_pair(x: int, y: int, genus: int, orientation: int = 1) -> int:
    """Least ``|w|`` such that ``x^-1 w y`` is a cyclic subword of the twisted relator (or its inverse)."""
    if x == -y:
        raise ValueError("he_pair is undefined on a cancelling pair")
    rh = _relator(genus, True)
    if orientation < 0:
        rh = tuple(-z for z in reversed(rh))
    pos = _positions(rh)
    L = len(rh)
    # every letter occurs exactly once in the twisted relator
    return (pos[y] - pos[-x]) % L - 1


def winding(w: SurfaceWord, variant: int = 1, orientation: int = 1) -> int:
    """Sum of ``he_pair`` over consecutive letters; ``variant=0`` closes the word cyclically."""
    x = w.letters
    if not x:
        return 0
    total = sum(he_pair(x[k], x[k + 1], w.genus, orientation) for k in range(len(x) - 1))
    if variant == 0:
        total += he_pair(x[-1], x[0], w.genus, orientation)
    return total


# ---------------------------------------------------------------------------
# word problem


@lru_cache(maxsize=None)
def _dehn_table(genus: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Map each cyclic subword of ``r^{+-1}`` longer than half the relator to its shorter equal."""
    table = {}
    for base in (_relator(genus, False), tuple(-z for z in reversed(_relator(genus, False)))):
        L = len(base)
        for start in range(L):
            rot = base[start:] + base[:start]
            for k in range(L // 2 + 1, L + 1):
                u = rot[:k]
                # u * rest = 1, so u = rest^{-1}
                rest = rot[k:]
                table.setdefault(u, tuple(-z for z in reversed(rest)))
    return table


def _dehn_reduce(seq: Sequence[int], genus: int) -> list[int]:
    table = _dehn_table(genus)
    L = 4 * genus
    w = _free_reduce(seq)
    changed = True
    while changed:
        changed = False
        for k in range(min(L, len(w)), L // 2, -1):
            for i in range(len(w) - k + 1):
                rep = table.get(tuple(w[i:i + k]))
                if rep is not None:
                    w = _free_reduce(w[:i] + list(rep) + w[i + k:])
                    changed = True
                    break
            if changed:
                break
    return w


def is_identity(w: SurfaceWord) -> bool:
    """Dehn's algorithm: the word is trivial iff the reduction empties it."""
    return not _dehn_reduce(w.letters, w.genus)


# ---------------------------------------------------------------------------
# conjugacy shortening


@lru_cache(maxsize=None)
def _adjacent_pairs(genus: int, orientation: int) -> frozenset:
    rel = _relator(genus, False)
    if orientation < 0:
        rel = tuple(-z for z in reversed(rel))
    return frozenset((rel[i], rel[(i + 1) % len(rel)]) for i in range(len(rel)))


def _he_zero(x: int, y: int, genus: int, orientation: int) -> bool:
    # for orientation +1 this coincides with he_pair == 0; for -1 the winding
    # count and relator adjacency differ at handle junctions, so test directly
    return (x, y) in _adjacent_pairs(genus, orientation)


def _bloc_runs(w: tuple[int, ...], genus: int, orientation: int) -> list[tuple[int, int]]:
    """Maximal cyclic runs ``(start, length)`` of letters adjacent in the relator."""
    n = len(w)
    if n == 0:
        return []
    breaks = [k for k in range(n) if not _he_zero(w[k], w[(k + 1) % n], genus, orientation)]
    if not breaks:
        return [(0, n)]
    runs = []
    for idx, b in enumerate(breaks):
        nxt = breaks[(idx + 1) % len(breaks)]
        start = (b + 1) % n
        length = (nxt - b) % n or n
        runs.append((start, length))
    return runs


def _cyclic_slice(w: tuple[int, ...], start: int, length: int) -> tuple[int, ...]:
    n = len(w)
    return tuple(w[(start + i) % n] for i in range(length))


def long_blocs(w: SurfaceWord, orientation: int = 1) -> list[tuple[int, int]]:
    """Cyclic subwords longer than ``2g`` lying in a cyclic permutation of ``r`` (or ``r^-1``)."""
    g = w.genus
    rel = _relator(g, False) if orientation > 0 else tuple(-z for z in reversed(_relator(g, False)))
    out = []
    for start, length in _bloc_runs(w.letters, g, orientation):
        if length > 2 * g:
            seg = _cyclic_slice(w.letters, start, length)
            if length > len(rel) or not is_cyclic_subword(seg, rel):
                # a run longer than the relator still contains a long bloc
                out.append((start, min(length, len(rel))))
            else:
                out.append((start, length))
    return out


def long_chains(w: SurfaceWord, orientation: int = 1) -> list[list[tuple[int, int]]]:
    """Chains ``b_1 ... b_l`` with ``|b_1|, |b_l| >= 2g``, interior blocs of length ``2g - 1``, junction winding 1."""
    g = w.genus
    runs = _bloc_runs(w.letters, g, orientation)
    if len(runs) < 2:
        return []
    n = len(w.letters)
    chains = []
    for i, (start, length) in enumerate(runs):
        if length < 2 * g:
            continue
        chain = [(start, length)]
        j = i
        while True:
            cur = runs[j]
            nxt_idx = (j + 1) % len(runs)
            nxt = runs[nxt_idx]
            last = w.letters[(cur[0] + cur[1] - 1) % n]
            first = w.letters[nxt[0]]
            if first == -last or he_pair(last, first, g, orientation) != 1 or nxt_idx == i:
                break
            chain.append(nxt)
            if nxt[1] >= 2 * g:
                chains.append(list(chain))
                break
            if nxt[1] != 2 * g - 1:
                break
            j = nxt_idx
    return chains


def _complement_inverse(b: tuple[int, ...], genus: int, orientation: int) -> tuple[int, ...]:
    """The word ``c^-1`` where ``c`` is the shortest word with ``b c`` a cyclic permutation of the relator."""
    rel = _relator(genus, False) if orientation > 0 else tuple(-z for z in reversed(_relator(genus, False)))
    L = len(rel)
    for s in range(L):
        rot = rel[s:] + rel[:s]
        if rot[:len(b)] == b:
            c = rot[len(b):]
            return tuple(-z for z in reversed(c))
    raise ValueError("not a bloc")


def _replace_cyclic(w: tuple[int, ...], start: int, length: int, new: tuple[int, ...]) -> list[int]:
    rot = w[start:] + w[:start]
    return _cyclic_reduce(list(new) + list(rot[length:]))


def dehn_shorten(w: SurfaceWord) -> SurfaceWord:
    """Cyclically shortest representative of the conjugacy class of ``w``.

    Long blocs are replaced first, then long chains; among candidates the
    leftmost start wins, then the longest.
    """
    g = w.genus
    cur = tuple(_cyclic_reduce(w.letters))
    while True:
        word = SurfaceWord(g, cur)
        candidates = []
        for orient in (1, -1):
            for start, length in long_blocs(word, orient):
                new = _complement_inverse(_cyclic_slice(cur, start, length), g, orient)
                candidates.append((0, start, -length, orient, [(start, length)], new))
        if not candidates:
            for orient in (1, -1):
                for chain in long_chains(word, orient):
                    new = tuple(
                        x
                        for s, l in chain
                        for x in _complement_inverse(_cyclic_slice(cur, s, l), g, orient)
                    )
                    total = sum(l for _, l in chain)
                    candidates.append((1, chain[0][0], -total, orient, chain, new))
        progressed = False
        for _, start, neg_len, orient, pieces, new in sorted(candidates, key=lambda c: (c[0], c[1], c[2], c[3])):
            nxt = tuple(_replace_cyclic(cur, start, -neg_len, new))
            if len(nxt) < len(cur):
                cur = nxt
                progressed = True
                break
        if not progressed:
            return SurfaceWord(g, cur)


# ---------------------------------------------------------------------------
# breadth-first oracle


_P = (1 << 61) - 1


def _mat_mul(a, b):
    return (
        (a[0] * b[0] + a[1] * b[2]) % _P,
        (a[0] * b[1] + a[1] * b[3]) % _P,
        (a[2] * b[0] + a[3] * b[2]) % _P,
        (a[2] * b[1] + a[3] * b[3]) % _P,
    )


def _mat_inv(a):
    # determinant one
    return (a[3], (-a[1]) % _P, (-a[2]) % _P, a[0])


class CayleyBall:
    """All group elements of word length at most ``radius``.

    Elements are bucketed by a hash built from homomorphisms to ``SL(2, Z/p)``
    that factor through free groups, plus the abelianisation; equality inside
    a bucket is decided exactly with :func:`is_identity`.
    """

    def __init__(self, genus: int, radius: int, seed: int = 7):
        self.genus = genus
        self.radius = radius
        import random

        rng = random.Random(seed)
        self._images = []
        for _ in range(3):
            A = self._random_sl2(rng)
            B = self._random_sl2(rng)
            self._images.append(self._retraction_images(A, B, genus))
        self.elements: dict[tuple, list[tuple[tuple[int, ...], int]]] = {}
        self.spheres: list[int] = []
        self._build()

    @staticmethod
    def _random_sl2(rng):
        while True:
            a, b, c = (rng.randrange(1, _P) for _ in range(3))
            # solve a d - b c = 1
            d = (1 + b * c) * pow(a, _P - 2, _P) % _P
            return (a, b, c, d)

    @staticmethod
    def _retraction_images(A, B, genus):
        """Images of the generators under a map onto the free group ``<A, B>``."""
        # a_1 -> A, b_1 -> B, and each further handle is sent to a conjugate of (B, A)
        # by a power of [B, A]; the relator then maps to the identity telescopically
        BA = _mat_mul(_mat_mul(B, A), _mat_mul(_mat_inv(B), _mat_inv(A)))
        imgs = [A, B]
        conj = (1, 0, 0, 1)
        for k in range(2, genus + 1):
            if k % 2 == 0:
                x, y = B, A
            else:
                x, y = A, B
            c = conj
            imgs += [_mat_mul(_mat_mul(c, x), _mat_inv(c)), _mat_mul(_mat_mul(c, y), _mat_inv(c))]
            conj = _mat_mul(conj, BA)
        return imgs

    def _hash(self, word: Sequence[int]) -> tuple:
        ab = [0] * (2 * self.genus)
        for x in word:
            ab[abs(x) - 1] += 1 if x > 0 else -1
        parts = [tuple(ab)]
        for imgs in self._images:
            M = (1, 0, 0, 1)
            for x in word:
                g = imgs[abs(x) - 1]
                M = _mat_mul(M, g if x > 0 else _mat_inv(g))
            parts.append(M)
        return tuple(parts)

    def lookup(self, word: Sequence[int]) -> int | None:
        """Geodesic length of the element, or ``None`` beyond the radius."""
        bucket = self.elements.get(self._hash(word))
        if not bucket:
            return None
        for rep, length in bucket:
            if not _dehn_reduce(list(word) + [-z for z in reversed(rep)], self.genus):
                return length
        return None

    def _build(self):
        g = self.genus
        gens = [k for k in range(1, 2 * g + 1)] + [-k for k in range(1, 2 * g + 1)]
        self.elements[self._hash(())] = [((), 0)]
        layer = [()]
        self.spheres = [1]
        for r in range(1, self.radius + 1):
            new_layer = []
            for w in layer:
                for x in gens:
                    if w and w[-1] == -x:
                        continue
                    cand = w + (x,)
                    if self.lookup(cand) is None:
                        self.elements.setdefault(self._hash(cand), []).append((cand, r))
                        new_layer.append(cand)
            layer = new_layer
            self.spheres.append(len(layer))


def conjugacy_min_length_oracle(w: SurfaceWord, ball: CayleyBall, conjugator_radius: int = 1) -> int:
    """Shortest geodesic length among conjugates ``c u c^-1`` of the cyclic rotations ``u`` of ``w``.

    Conjugators range over words of length at most ``conjugator_radius``.
    Values above the ball radius are reported as ``len(w)`` when no shorter
    conjugate was found.
    """
    g = w.genus
    gens = [k for k in range(1, 2 * g + 1)] + [-k for k in range(1, 2 * g + 1)]
    conjugators = [()]
    frontier = [()]
    for _ in range(conjugator_radius):
        frontier = [c + (x,) for c in frontier for x in gens if not (c and c[-1] == -x)]
        conjugators += frontier
    best = len(w)
    seen = set()
    for k in range(max(1, len(w))):
        u = w.rotate(k).letters
        for c in conjugators:
            cand = tuple(_free_reduce(list(c) + list(u) + [-z for z in reversed(c)]))
            if cand in seen:
                continue
            seen.add(cand)
            length = ball.lookup(cand)
            if length is not None and length < best:
                best = length
    return best


def cyclically_reduced_words(genus: int, length: int):
    """All cyclically reduced words of the given length."""
    gens = [k for k in range(1, 2 * genus + 1)] + [-k for k in range(1, 2 * genus + 1)]
    if length == 0:
        yield SurfaceWord(genus, ())
        return

    def rec(prefix):
        if len(prefix) == length:
            if length < 2 or prefix[0] != -prefix[-1]:
                yield SurfaceWord(genus, prefix)
            return
        for x in gens:
            if prefix and prefix[-1] == -x:
                continue
            yield from rec(prefix + (x,))

    yield from rec(())
