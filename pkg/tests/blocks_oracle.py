"""Independent Blocks World reachability oracle.

States are frozensets of (block, support) pairs, where support is another
block or "table"; nothing here is shared with the engine.
"""

from collections import deque
from itertools import permutations


def to_on(stacks):
    on = set()
    for s in stacks:
        for h, b in enumerate(s):
            on.add((b, s[h - 1] if h else "table"))
    return frozenset(on)


def successors(on):
    support = dict(on)
    covered = set(support.values())
    clear = [b for b in support if b not in covered]
    for x in clear:
        if support[x] != "table":
            yield frozenset((on - {(x, support[x])}) | {(x, "table")})
        for y in clear:
            if y != x:
                yield frozenset((on - {(x, support[x])}) | {(x, y)})


def all_states(labels):
    """Every configuration of ``labels``, reached by exhaustive search from one tower."""
    start = to_on([tuple(labels)])
    seen = {start}
    queue = deque([start])
    while queue:
        for nxt in successors(queue.popleft()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def distances_from(start):
    dist = {start: 0}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        for nxt in successors(cur):
            if nxt not in dist:
                dist[nxt] = dist[cur] + 1
                queue.append(nxt)
    return dist


def to_stacks(on):
    support = dict(on)
    above = {v: k for k, v in support.items() if v != "table"}
    stacks = []
    for b, s in support.items():
        if s == "table":
            stack = [b]
            while stack[-1] in above:
                stack.append(above[stack[-1]])
            stacks.append(stack)
    return stacks


def count_configurations(n):
    """Ordered set partitions into stacks (Lah-number sum), by brute force over permutations."""
    seen = set()
    for perm in permutations(range(n)):
        for cuts in range(2 ** max(n - 1, 0)):
            stacks, cur = [], [perm[0]]
            for i in range(1, n):
                if cuts >> (i - 1) & 1:
                    stacks.append(tuple(cur))
                    cur = []
                cur.append(perm[i])
            stacks.append(tuple(cur))
            seen.add(frozenset(stacks))
    return len(seen)
