"""Equivalence relations on {0..n-1} as canonical block-label tuples.

A partition is a tuple `p` with `p[x]` the block of `x`; labels are assigned in
order of first occurrence, so two partitions are equal as relations iff the
tuples are equal.
"""


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        """Merge the classes of x and y; True if they were distinct."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True

    def partition(self):
        return canonical([self.find(x) for x in range(len(self.parent))])


def canonical(labels):
    seen = {}
    out = []
    for lab in labels:
        if lab not in seen:
            seen[lab] = len(seen)
        out.append(seen[lab])
    return tuple(out)


def from_key(n, key):
    """Partition of range(n) by the value of `key`."""
    return canonical([key(x) for x in range(n)])


def from_blocks(n, blocks):
    labels = [None] * n
    for i, block in enumerate(blocks):
        for x in block:
            if labels[x] is not None:
                raise ValueError(f"element {x} in two blocks")
            labels[x] = i
    if None in labels:
        raise ValueError("blocks do not cover the carrier")
    return canonical(labels)


def identity(n):
    return tuple(range(n))


def total(n):
    return (0,) * n


def blocks(p):
    out = [[] for _ in range(num_blocks(p))]
    for x, lab in enumerate(p):
        out[lab].append(x)
    return out


def num_blocks(p):
    return max(p) + 1 if p else 0


def meet(p, q):
    """Common refinement (intersection of the relations)."""
    return canonical(list(zip(p, q)))


def join(p, q):
    """Transitive closure of the union of the relations."""
    uf = UnionFind(len(p))
    for part in (p, q):
        first = {}
        for x, lab in enumerate(part):
            if lab in first:
                uf.union(first[lab], x)
            else:
                first[lab] = x
    return uf.partition()


def refines(p, q):
    """True iff p is contained in q as a relation."""
    image = {}
    for a, b in zip(p, q):
        if image.setdefault(a, b) != b:
            return False
    return True


def related(p, x, y):
    return p[x] == p[y]


def pairs(p):
    """All (x, y) with x < y in the same block."""
    for block in blocks(p):
        for i, x in enumerate(block):
            for y in block[i + 1:]:
                yield x, y


def set_partitions(n):
    """All partitions of range(n) as restricted growth strings, lexicographically."""
    if n == 0:
        yield ()
        return
    labels = [0] * n

    def rec(i, top):
        if i == n:
            yield tuple(labels)
            return
        for lab in range(top + 2):
            labels[i] = lab
            yield from rec(i + 1, max(top, lab))

    yield from rec(1, 0)
