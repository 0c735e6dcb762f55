"""Sparse order-3 tensors holding structure constants.

Entries map index triples to nonzero canonical scalars.  The same shape
stores multiplications (i,j,k), comultiplications (k,i,j), module actions
and comodule coactions; each owner documents its own index convention.
"""

from __future__ import annotations

from .errors import InputError
from .fields import FieldSpec


class SparseTensor3:
    __slots__ = ("dims", "entries", "field", "_by1", "_by12")

    def __init__(self, dims, entries, field: FieldSpec):
        dims = tuple(dims)
        if len(dims) != 3 or any(d < 0 for d in dims):
            raise InputError(f"bad tensor dims {dims!r}")
        canon = field.canon
        clean = {}
        for key, value in entries.items() if isinstance(entries, dict) else entries:
            i, j, k = key
            if not (0 <= i < dims[0] and 0 <= j < dims[1] and 0 <= k < dims[2]):
                raise InputError(f"tensor index {key} out of range for dims {dims}")
            if key in clean:
                raise InputError(f"duplicate tensor entry at {key}")
            v = canon(value)
            if v != 0:
                clean[key] = v
        self.dims = dims
        self.entries = clean
        self.field = field
        self._by1 = None
        self._by12 = None

    @classmethod
    def zero(cls, dims, field: FieldSpec) -> "SparseTensor3":
        return cls(dims, {}, field)

    def get(self, i: int, j: int, k: int):
        return self.entries.get((i, j, k), 0)

    def sorted_items(self):
        return sorted(self.entries.items())

    def by_first(self):
        """index0 -> list of (index1, index2, value)."""
        if self._by1 is None:
            g = {}
            for (i, j, k), v in self.entries.items():
                g.setdefault(i, []).append((j, k, v))
            self._by1 = g
        return self._by1

    def by_first_two(self):
        """(index0, index1) -> list of (index2, value)."""
        if self._by12 is None:
            g = {}
            for (i, j, k), v in self.entries.items():
                g.setdefault((i, j), []).append((k, v))
            self._by12 = g
        return self._by12

    def map_values(self, fn) -> "SparseTensor3":
        return SparseTensor3(self.dims, {k: fn(v) for k, v in self.entries.items()}, self.field)

    def __eq__(self, other):
        return (
            isinstance(other, SparseTensor3)
            and self.dims == other.dims
            and self.field == other.field
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"SparseTensor3(dims={self.dims}, nnz={len(self.entries)})"


def accumulate(dims, raw_items, field: FieldSpec) -> SparseTensor3:
    """Sum possibly-repeated (i,j,k,value) contributions into a tensor."""
    acc = {}
    for i, j, k, v in raw_items:
        key = (i, j, k)
        acc[key] = acc.get(key, 0) + v
    return SparseTensor3(dims, acc, field)
