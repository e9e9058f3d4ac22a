"""Subsets of a finite carrier encoded as integer bitmasks (element i <-> bit i)."""


def members(code):
    """Elements of the subset, ascending."""
    out = []
    i = 0
    while code:
        if code & 1:
            out.append(i)
        code >>= 1
        i += 1
    return out


def from_members(elements):
    code = 0
    for e in elements:
        code |= 1 << e
    return code


def full(n):
    return (1 << n) - 1


def is_subset(a, b):
    return a & ~b == 0


def nonempty_submasks(code):
    """Nonempty submasks of `code`, in decreasing numeric order."""
    sub = code
    while sub:
        yield sub
        sub = (sub - 1) & code


def popcount(code):
    return bin(code).count("1")


def fmt(code, labels=None):
    elems = members(code)
    if labels is None:
        return "{" + ",".join(str(e) for e in elems) + "}"
    return "{" + ",".join(labels[e] for e in elems) + "}"
