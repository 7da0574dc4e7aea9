"""Inner loops for diagram composition, kept separate so they are easy to profile."""

from __future__ import annotations


def compose_pairings(pa, pb, k: int) -> tuple[int, tuple[int, ...]]:
    """Stack pairing ``pa`` above ``pb``; return ``(closed loops, pairing)``.

    Bottom point ``k + i`` of ``pa`` is glued to top point ``i`` of ``pb``.
    """
    out = [0] * (2 * k)
    seen_mid = [False] * k

    def walk(start_in_a: bool, point: int) -> int:
        # follow the string from an outer point until it exits on an outer point
        in_a = start_in_a
        x = point
        while True:
            y = pa[x] if in_a else pb[x]
            if in_a:
                if y < k:
                    return y
                mid = y - k
                seen_mid[mid] = True
                in_a = False
                x = mid
            else:
                if y >= k:
                    return y + 2 * k  # tag as bottom of b
                seen_mid[y] = True
                in_a = True
                x = y + k

    for u in range(k):
        end = walk(True, u)
        out[u] = end - 2 * k if end >= 2 * k else end
    for u in range(k, 2 * k):
        end = walk(False, u)
        out[u] = end - 2 * k if end >= 2 * k else end

    loops = 0
    for i in range(k):
        if seen_mid[i]:
            continue
        loops += 1
        # trace the closed loop through the middle row
        j = i
        while True:
            seen_mid[j] = True
            j = pb[j]  # in b, from top j, must return to a top point of b
            seen_mid[j] = True
            j = pa[j + k] - k  # back up through a to its bottom row
            if j == i:
                break
    return loops, tuple(out)


def count_cycles_closed(pairing, k: int) -> int:
    """Components after adding the edges ``i -- k+i``; each point has degree two."""
    seen = [False] * (2 * k)
    count = 0
    for s in range(2 * k):
        if seen[s]:
            continue
        count += 1
        x = s
        while not seen[x]:
            seen[x] = True
            y = pairing[x]
            seen[y] = True
            x = y + k if y < k else y - k
    return count
