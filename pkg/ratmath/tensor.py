"""Dense rational tensors and the exterior algebra of forms stored as antisymmetric tensors."""

import itertools
from fractions import Fraction
from functools import lru_cache
from math import factorial

from utils.errors import DimensionMismatchError, ValidationError

# Symmetry tags understood by TensorTable.check_symmetries:
#   ("sym", (i, j))             T is symmetric in slots i, j
#   ("anti", (i, j))            T is antisymmetric in slots i, j
#   ("alt", (i, j, ...))        T is fully antisymmetric in the listed slots
#   ("pairs", ((i, j), (k, l))) T is invariant under exchanging the two slot pairs
#   ("bianchi", (i, j, k))      cyclic sum over slots i, j, k vanishes
#   ("traceless", (i, j))       contraction over slots i, j vanishes


@lru_cache(maxsize=None)
def signed_permutations(k):
    """All permutations of range(k) with their signs."""
    result = []
    for perm in itertools.permutations(range(k)):
        inversions = sum(1 for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b])
        result.append((perm, -1 if inversions % 2 else 1))
    return tuple(result)


class TensorTable:
    """Immutable dense rank-k table over Q^dim.

    Entries are stored flat in row-major multi-index order, so the table for
    rank 2 reads like a matrix and ``t[i, j]`` addresses entry (i, j).
    """

    __slots__ = ("rank", "dim", "entries", "symmetries")

    def __init__(self, rank, dim, entries, symmetries=()):
        entries = tuple(Fraction(e) for e in entries)
        if len(entries) != dim ** rank:
            raise DimensionMismatchError(
                f"Rank-{rank} table over dim {dim} needs {dim ** rank} entries, got {len(entries)}"
            )
        self.rank = rank
        self.dim = dim
        self.entries = entries
        self.symmetries = tuple(symmetries)

    @classmethod
    def zeros(cls, rank, dim, symmetries=()):
        return cls(rank, dim, (Fraction(0),) * dim ** rank, symmetries)

    @classmethod
    def from_function(cls, rank, dim, fn, symmetries=()):
        return cls(rank, dim, (fn(*idx) for idx in itertools.product(range(dim), repeat=rank)), symmetries)

    @classmethod
    def from_vector(cls, v):
        return cls(1, len(v), v)

    @classmethod
    def from_matrix(cls, m, symmetries=()):
        return cls(2, len(m), (a for row in m for a in row), symmetries)

    @classmethod
    def from_components(cls, rank, dim, components, symmetries=()):
        """Build a table from a sparse {multi-index: value} mapping."""
        entries = [Fraction(0)] * dim ** rank
        for idx, value in components.items():
            entries[_offset(idx, dim)] = Fraction(value)
        return cls(rank, dim, entries, symmetries)

    def __getitem__(self, idx):
        if not isinstance(idx, tuple):
            idx = (idx,)
        if len(idx) != self.rank:
            raise DimensionMismatchError(f"Index {idx} does not match rank {self.rank}")
        return self.entries[_offset(idx, self.dim)]

    def indices(self):
        return itertools.product(range(self.dim), repeat=self.rank)

    def nonzero_items(self):
        return [(idx, value) for idx, value in zip(self.indices(), self.entries) if value != 0]

    def __eq__(self, other):
        if not isinstance(other, TensorTable):
            return NotImplemented
        return (self.rank, self.dim, self.entries) == (other.rank, other.dim, other.entries)

    def __hash__(self):
        return hash((self.rank, self.dim, self.entries))

    def __repr__(self):
        return f"TensorTable(rank={self.rank}, dim={self.dim}, nonzero={len(self.nonzero_items())})"

    def _check_shape(self, other):
        if (self.rank, self.dim) != (other.rank, other.dim):
            raise DimensionMismatchError(
                f"Tables differ in shape: ({self.rank}, {self.dim}) vs ({other.rank}, {other.dim})"
            )

    def __add__(self, other):
        self._check_shape(other)
        return TensorTable(self.rank, self.dim, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        self._check_shape(other)
        return TensorTable(self.rank, self.dim, (a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self):
        return TensorTable(self.rank, self.dim, (-a for a in self.entries), self.symmetries)

    def scale(self, k):
        k = Fraction(k)
        return TensorTable(self.rank, self.dim, (k * a for a in self.entries), self.symmetries)

    def tensor(self, other):
        if self.dim != other.dim:
            raise DimensionMismatchError("Tensor product of tables over different dimensions")
        return TensorTable(self.rank + other.rank, self.dim, (a * b for a in self.entries for b in other.entries))

    def is_zero(self):
        return all(a == 0 for a in self.entries)

    def norm_sq(self):
        """Sum of squares of all entries."""
        return sum((a * a for a in self.entries), Fraction(0))

    def with_symmetries(self, symmetries):
        return TensorTable(self.rank, self.dim, self.entries, symmetries)

    def as_matrix(self):
        if self.rank != 2:
            raise DimensionMismatchError("Only rank-2 tables convert to matrices")
        n = self.dim
        return tuple(self.entries[i * n:(i + 1) * n] for i in range(n))

    def check_symmetries(self, symmetries=None):
        """Return the declared symmetry tags that fail, by full enumeration."""
        failed = []
        for tag in self.symmetries if symmetries is None else symmetries:
            if not _symmetry_holds(self, tag):
                failed.append(tag)
        return failed


def _offset(idx, dim):
    offset = 0
    for i in idx:
        if not 0 <= i < dim:
            raise DimensionMismatchError(f"Index {i} out of range for dim {dim}")
        offset = offset * dim + i
    return offset


def _swap(idx, i, j):
    idx = list(idx)
    idx[i], idx[j] = idx[j], idx[i]
    return tuple(idx)


def _symmetry_holds(t, tag):
    kind, slots = tag
    if kind == "sym":
        return all(t[idx] == t[_swap(idx, *slots)] for idx in t.indices())
    if kind == "anti":
        return all(t[idx] == -t[_swap(idx, *slots)] for idx in t.indices())
    if kind == "alt":
        return antisymmetrize(t, slots).entries == t.entries
    if kind == "pairs":
        (a, b), (c, d) = slots

        def exchanged(idx):
            out = list(idx)
            out[a], out[b], out[c], out[d] = idx[c], idx[d], idx[a], idx[b]
            return tuple(out)

        return all(t[idx] == t[exchanged(idx)] for idx in t.indices())
    if kind == "bianchi":
        a, b, c = slots

        def rotated(idx, shift):
            out = list(idx)
            picked = [idx[a], idx[b], idx[c]]
            out[a], out[b], out[c] = picked[shift % 3], picked[(shift + 1) % 3], picked[(shift + 2) % 3]
            return tuple(out)

        return all(sum(t[rotated(idx, s)] for s in range(3)) == 0 for idx in t.indices())
    if kind == "traceless":
        return contract(t, *slots).is_zero()
    raise ValidationError(f"Unknown symmetry tag {tag!r}")


def contract(t, i, j):
    """Contract slots i and j (orthonormal frame, so no metric factors)."""
    if i == j or not (0 <= i < t.rank and 0 <= j < t.rank):
        raise DimensionMismatchError(f"Cannot contract slots {i}, {j} of a rank-{t.rank} table")
    keep = [s for s in range(t.rank) if s not in (i, j)]

    def entry(*rest):
        total = Fraction(0)
        for m in range(t.dim):
            idx = [0] * t.rank
            for slot, value in zip(keep, rest):
                idx[slot] = value
            idx[i] = idx[j] = m
            total += t[tuple(idx)]
        return total

    return TensorTable.from_function(t.rank - 2, t.dim, entry)


def antisymmetrize(t, slots=None):
    """Project onto tensors antisymmetric in ``slots`` (all slots by default), with 1/k! normalization.

    Args:
    ----
        t (TensorTable): The table to project.
        slots (tuple): Slot positions to antisymmetrize over.

    Returns:
    -------
        TensorTable: Alt_slots(t), fully antisymmetric in the given slots.

    """
    slots = tuple(range(t.rank)) if slots is None else tuple(slots)
    if len(set(slots)) != len(slots) or any(not 0 <= s < t.rank for s in slots):
        raise DimensionMismatchError(f"Slots {slots} out of range for rank {t.rank}")
    k = len(slots)
    perms = signed_permutations(k)
    norm = Fraction(1, factorial(k))

    def entry(*idx):
        total = 0
        picked = [idx[s] for s in slots]
        for perm, sign in perms:
            moved = list(idx)
            for position, p in zip(slots, perm):
                moved[position] = picked[p]
            total += sign * t[tuple(moved)]
        return total * norm

    tags = tuple(tag for tag in t.symmetries if tag[0] != "sym") + (("alt", slots),)
    return TensorTable.from_function(t.rank, t.dim, entry, tags)


def is_form(t):
    return t.rank <= 1 or antisymmetrize(t).entries == t.entries


def one_form(v):
    return TensorTable(1, len(v), v, (("alt", (0,)),))


def wedge(a, b):
    """Exterior product Alt(a⊗b) of a k-form and an l-form.

    Degree overflow (k + l > dim) gives the zero (k+l)-form.
    """
    if a.dim != b.dim:
        raise DimensionMismatchError("Wedge of forms over different dimensions")
    for form in (a, b):
        if not is_form(form):
            raise ValidationError("wedge expects antisymmetric tables")
    rank = a.rank + b.rank
    if rank > a.dim:
        return TensorTable.zeros(rank, a.dim, (("alt", tuple(range(rank))),))
    return antisymmetrize(a.tensor(b))


def skew_to_two_form(m):
    """The 2-form Σ_{j<k} m_{kj} dx_j∧dx_k of a skew matrix, as an antisymmetric table."""
    n = len(m)
    return TensorTable.from_function(2, n, lambda p, q: -Fraction(m[p][q]) / 2, (("alt", (0, 1)),))
