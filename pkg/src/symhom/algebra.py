"""Finite-rank unital associative algebras over the integers.

Algebras are presented by structure constants on a fixed basis
``e_0, ..., e_{d-1}``.  Elements are integer coordinate tuples.  An optional
grading records, for monoid-type algebras, which monoid element each basis
vector represents; it drives the layer splitting of the low-degree complexes.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .delta_s import DeltaSMorphism

Vector = tuple[int, ...]
SparseVec = dict[int, int]

SPEC_FORMAT = "symhom-algebra"
SPEC_VERSION = 1


class AlgebraError(ValueError):
    """Raised when a presentation fails validation."""


@dataclass(frozen=True)
class Grading:
    """Monoid grading of the basis.

    ``table[a][b]`` is the index of the product of monoid elements ``a`` and
    ``b``; ``zero`` (if not None) is an absorbing element that labels vanishing
    products and carries no basis vector.
    """

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    basis_grades: tuple[int, ...]
    zero: int | None = None

    @property
    def is_commutative(self) -> bool:
        n = len(self.elements)
        return all(self.table[a][b] == self.table[b][a] for a in range(n) for b in range(a))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, grades: Iterable[int], identity: int) -> int:
        return reduce(self.mul, grades, identity)

    def index(self, label: str) -> int:
        try:
            return self.elements.index(label)
        except ValueError:
            raise AlgebraError(f"unknown grade {label!r}; known: {list(self.elements)}") from None


@dataclass(frozen=True, eq=False)
class AlgebraZ:
    dim: int
    labels: tuple[str, ...]
    # mult[i][j] is the sparse product e_i e_j as ((k, coeff), ...)
    mult: tuple[tuple[tuple[tuple[int, int], ...], ...], ...]
    unit: Vector
    grading: Grading | None = None
    augmentation: Vector | None = None
    name: str = ""
    _unit_sparse: tuple[tuple[int, int], ...] = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_unit_sparse", tuple((k, c) for k, c in enumerate(self.unit) if c)
        )

    def __repr__(self) -> str:
        return f"<AlgebraZ {self.name or '?'} of dimension {self.dim}>"

    # -- arithmetic -----------------------------------------------------

    def basis_product(self, i: int, j: int) -> SparseVec:
        return dict(self.mult[i][j])

    def mul_sparse(self, x: Mapping[int, int], y: Mapping[int, int]) -> SparseVec:
        out: SparseVec = {}
        for i, a in x.items():
            row = self.mult[i]
            for j, b in y.items():
                ab = a * b
                for k, c in row[j]:
                    out[k] = out.get(k, 0) + ab * c
        return {k: v for k, v in out.items() if v}

    def product_of_basis(self, indices: Sequence[int]) -> SparseVec:
        """``e_{i_0} e_{i_1} ...``; the empty product is the unit."""
        if not indices:
            return dict(self._unit_sparse)
        acc: SparseVec = {indices[0]: 1}
        for j in indices[1:]:
            acc = self.mul_sparse(acc, {j: 1})
        return acc

    def mul(self, x: Sequence[int], y: Sequence[int]) -> Vector:
        return self.to_dense(self.mul_sparse(self.to_sparse(x), self.to_sparse(y)))

    def basis(self, i: int) -> Vector:
        return tuple(int(k == i) for k in range(self.dim))

    def to_sparse(self, x: Sequence[int]) -> SparseVec:
        return {k: c for k, c in enumerate(x) if c}

    def to_dense(self, x: Mapping[int, int]) -> Vector:
        v = [0] * self.dim
        for k, c in x.items():
            v[k] += c
        return tuple(v)

    @property
    def unit_sparse(self) -> SparseVec:
        return dict(self._unit_sparse)

    @property
    def is_commutative(self) -> bool:
        return all(
            self.mult[i][j] == self.mult[j][i] for i in range(self.dim) for j in range(i)
        )

    def format_element(self, x: Sequence[int]) -> str:
        terms = []
        for k, c in enumerate(x):
            if not c:
                continue
            lab = self.labels[k]
            if c == 1:
                terms.append(lab)
            elif c == -1:
                terms.append("-" + lab)
            else:
                terms.append(f"{c}*{lab}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    # -- grading ----------------------------------------------------------

    def grade_identity(self) -> int:
        """Grade of the unit (must be a single graded basis vector)."""
        g = self._require_grading()
        grades = {g.basis_grades[k] for k, _ in self._unit_sparse}
        if len(grades) != 1:
            raise AlgebraError("unit is not homogeneous for the grading")
        return grades.pop()

    def _require_grading(self) -> Grading:
        if self.grading is None:
            raise AlgebraError(f"{self!r} carries no monoid grading")
        return self.grading

    def layer_labels(self, include_zero: bool = False) -> list[str]:
        """Grades that index layers, in the constructor's label order."""
        g = self._require_grading()
        used = sorted(set(g.basis_grades))
        out = [g.elements[a] for a in used]
        if include_zero and g.zero is not None:
            out.append(g.elements[g.zero])
        return out

    def check_layerable(self) -> Grading:
        g = self._require_grading()
        if not g.is_commutative:
            raise AlgebraError(
                f"{self!r}: layered computations need a commutative grading monoid"
            )
        return g


# -- validation ---------------------------------------------------------------


def _check_algebra(A: AlgebraZ) -> None:
    d = A.dim
    if len(A.labels) != d or len(A.unit) != d or len(A.mult) != d:
        raise AlgebraError("dimension mismatch in presentation")
    for i in range(d):
        for j in range(d):
            for k, _ in A.mult[i][j]:
                if not 0 <= k < d:
                    raise AlgebraError(f"structure constant index {k} out of range")
    u = A.unit_sparse
    for i in range(d):
        e = {i: 1}
        if A.mul_sparse(u, e) != e or A.mul_sparse(e, u) != e:
            raise AlgebraError(f"unit law fails on basis element {A.labels[i]}")
    for i, j, k in itertools.product(range(d), repeat=3):
        left = A.mul_sparse(A.basis_product(i, j), {k: 1})
        right = A.mul_sparse({i: 1}, A.basis_product(j, k))
        if left != right:
            raise AlgebraError(
                "associativity fails: "
                f"(e{i} e{j}) e{k} != e{i} (e{j} e{k}) "
                f"[{A.labels[i]}, {A.labels[j]}, {A.labels[k]}]"
            )
    if A.grading is not None:
        g = A.grading
        if len(g.basis_grades) != d:
            raise AlgebraError("grading must label every basis vector")
        for i in range(d):
            for j in range(d):
                want = g.mul(g.basis_grades[i], g.basis_grades[j])
                for k, _ in A.mult[i][j]:
                    if g.basis_grades[k] != want:
                        raise AlgebraError(
                            f"grading incompatible with product e{i} e{j}"
                        )
                if not A.mult[i][j] and want != g.zero:
                    raise AlgebraError(f"vanishing product e{i} e{j} not graded by zero")
    if A.augmentation is not None:
        eps = A.augmentation
        if len(eps) != d:
            raise AlgebraError("augmentation has wrong length")
        if _aug(eps, A.unit_sparse) != 1:
            raise AlgebraError("augmentation does not send 1 to 1")
        for i in range(d):
            for j in range(d):
                if _aug(eps, A.basis_product(i, j)) != eps[i] * eps[j]:
                    raise AlgebraError(f"augmentation not multiplicative on e{i} e{j}")


def _aug(eps: Sequence[int], x: Mapping[int, int]) -> int:
    return sum(eps[k] * c for k, c in x.items())


def _freeze_mult(dim: int, constants: Mapping[tuple[int, int], Sequence[int] | Mapping[int, int]]):
    rows = []
    for i in range(dim):
        row = []
        for j in range(dim):
            v = constants.get((i, j), ())
            if isinstance(v, Mapping):
                items = sorted((int(k), int(c)) for k, c in v.items() if c)
            else:
                if v and len(v) != dim:
                    raise AlgebraError(f"product e{i} e{j} has wrong length")
                items = [(k, int(c)) for k, c in enumerate(v) if c]
            row.append(tuple(items))
        rows.append(tuple(row))
    return tuple(rows)


def from_structure_constants(
    dim: int,
    labels: Sequence[str] | None,
    constants: Mapping[tuple[int, int], Sequence[int] | Mapping[int, int]],
    unit: Sequence[int],
    grading: Grading | None = None,
    augmentation: Sequence[int] | None = None,
    name: str = "",
) -> AlgebraZ:
    """Build and validate an algebra; raises AlgebraError with a witness."""
    if dim < 1:
        raise AlgebraError("dimension must be positive")
    labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(dim))
    A = AlgebraZ(
        dim=dim,
        labels=labels,
        mult=_freeze_mult(dim, constants),
        unit=tuple(int(c) for c in unit),
        grading=grading,
        augmentation=tuple(augmentation) if augmentation is not None else None,
        name=name,
    )
    _check_algebra(A)
    return A


# -- constructors -------------------------------------------------------------


def _monoid_algebra(
    elements: Sequence[str],
    table: Sequence[Sequence[int]],
    identity: int,
    zero: int | None,
    name: str,
) -> AlgebraZ:
    """Contracted monoid algebra: basis = monoid elements other than ``zero``."""
    basis = [a for a in range(len(elements)) if a != zero]
    pos = {a: k for k, a in enumerate(basis)}
    constants = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            c = table[a][b]
            if c != zero:
                constants[(i, j)] = {pos[c]: 1}
    grading = Grading(
        elements=tuple(elements),
        table=tuple(tuple(r) for r in table),
        basis_grades=tuple(basis),
        zero=zero,
    )
    unit = [0] * len(basis)
    unit[pos[identity]] = 1
    aug = tuple(1 for _ in basis) if zero is None else tuple(
        1 if a == identity else 0 for a in basis
    )
    return from_structure_constants(
        len(basis),
        [elements[a] for a in basis],
        constants,
        unit,
        grading=grading,
        augmentation=aug,
        name=name,
    )


def _monomial_label(exps: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for e, v in zip(exps, names):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def truncated_polynomial(exponents: Sequence[int], names: Sequence[str] | None = None) -> AlgebraZ:
    """``Z[t_1, ..., t_r]/(t_1^{a_1}, ..., t_r^{a_r})``.

    Basis: monomials in lexicographic exponent order.  Augmentation kills
    every ``t_i``.  Graded by the monoid of monomials with an absorbing zero.
    """
    exponents = [int(a) for a in exponents]
    if not exponents:
        raise AlgebraError("need at least one exponent")
    if any(a < 2 for a in exponents):
        raise AlgebraError(f"exponents must be >= 2, got {exponents}")
    if names is None:
        names = ["t"] if len(exponents) == 1 else [f"t{i + 1}" for i in range(len(exponents))]
    monos = list(itertools.product(*(range(a) for a in exponents)))
    index = {m: k for k, m in enumerate(monos)}
    zero = len(monos)
    elements = [_monomial_label(m, names) for m in monos] + ["0"]
    table = []
    for m in monos:
        row = []
        for n in monos:
            s = tuple(x + y for x, y in zip(m, n))
            row.append(index[s] if all(x < a for x, a in zip(s, exponents)) else zero)
        table.append(row)
    table.append([zero] * (zero + 1))
    for row in table[:-1]:
        row.append(zero)
    return _monoid_algebra(elements, table, 0, zero, name="trunc:" + ",".join(map(str, exponents)))


def _check_group_table(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    if any(len(r) != n for r in table):
        raise AlgebraError("group table must be square")
    rng = set(range(n))
    for r in table:
        if set(r) != rng:
            raise AlgebraError("group table rows must be permutations")
    for c in range(n):
        if {table[r][c] for r in range(n)} != rng:
            raise AlgebraError("group table columns must be permutations")
    ids = [e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n))]
    if not ids:
        raise AlgebraError("group table has no identity")
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise AlgebraError(f"group table not associative at ({a}, {b}, {c})")
    return ids[0]


def group_ring(
    table: Sequence[Sequence[int]], labels: Sequence[str] | None = None, name: str = ""
) -> AlgebraZ:
    """Integral group ring from a multiplication table of element indices."""
    identity_ = _check_group_table(table)
    n = len(table)
    labels = list(labels) if labels is not None else [f"g{i}" for i in range(n)]
    return _monoid_algebra(labels, table, identity_, None, name=name or f"group[{n}]")


def cyclic_group_table(n: int) -> list[list[int]]:
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def direct_product_table(t1: Sequence[Sequence[int]], t2: Sequence[Sequence[int]]) -> list[list[int]]:
    n2 = len(t2)
    size = len(t1) * n2
    return [
        [t1[a // n2][b // n2] * n2 + t2[a % n2][b % n2] for b in range(size)]
        for a in range(size)
    ]


def symmetric_group_table(k: int) -> tuple[list[list[int]], list[str]]:
    perms = list(itertools.permutations(range(k)))
    index = {p: i for i, p in enumerate(perms)}
    # (p q)(x) = p(q(x))
    table = [[index[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    labels = ["".join(map(str, p)) for p in perms]
    return table, labels


def quaternion_group_table() -> tuple[list[list[int]], list[str]]:
    units = ["1", "i", "j", "k"]
    # unit products up to sign: (sign, index)
    prod = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    # element s*u encoded as u + 4*(s == -1)
    table = []
    for a in range(8):
        row = []
        for b in range(8):
            sa = -1 if a >= 4 else 1
            sb = -1 if b >= 4 else 1
            s, u = prod[(a % 4, b % 4)]
            row.append(u + (4 if s * sa * sb == -1 else 0))
        table.append(row)
    labels = units + ["-" + u for u in units]
    return table, labels


def named_group(name: str) -> AlgebraZ:
    """``C4``, ``C2xC2``, ``S3``, ``Q8``, ``C1``... as integral group rings."""
    factors = name.split("x")
    tables, labels = [], []
    for f in factors:
        if f.startswith("C") and f[1:].isdigit():
            n = int(f[1:])
            if n < 1:
                raise AlgebraError(f"bad cyclic group {f}")
            tables.append(cyclic_group_table(n))
            labels.append(["1"] + [f"g^{i}" if i > 1 else "g" for i in range(1, n)])
        elif f.startswith("S") and f[1:].isdigit():
            t, lab = symmetric_group_table(int(f[1:]))
            tables.append(t)
            labels.append(lab)
        elif f == "Q8":
            t, lab = quaternion_group_table()
            tables.append(t)
            labels.append(lab)
        else:
            raise AlgebraError(f"unknown group {f!r}")
    table, lab = tables[0], labels[0]
    for t, l2 in zip(tables[1:], labels[1:]):
        table = direct_product_table(table, t)
        lab = [f"({a},{b})" for a in lab for b in l2]
    return group_ring(table, lab, name=f"group:{name}")


def quaternions() -> AlgebraZ:
    """Lipschitz quaternions ``Z[i, j, k]`` with ``i^2 = j^2 = k^2 = ijk = -1``."""
    table, _ = quaternion_group_table()
    constants = {}
    for a in range(4):
        for b in range(4):
            c = table[a][b]
            constants[(a, b)] = {c % 4: -1 if c >= 4 else 1}
    return from_structure_constants(
        4, ["1", "i", "j", "k"], constants, (1, 0, 0, 0), name="quat"
    )


def cyclic_monoid_ring(p: int, q: int) -> AlgebraZ:
    """``Z[M^p_q]``: the monoid generated by ``s`` with ``s^p = s^q``."""
    if not p > q >= 0:
        raise AlgebraError(f"need p > q >= 0, got p={p}, q={q}")

    def red(e: int) -> int:
        return e if e < p else q + (e - q) % (p - q)

    table = [[red(a + b) for b in range(p)] for a in range(p)]
    labels = ["1", "s"] + [f"s^{e}" for e in range(2, p)]
    return _monoid_algebra(labels[:p], table, 0, None, name=f"monoid:{p},{q}")


def matrix_ring(base: AlgebraZ, n: int) -> AlgebraZ:
    """``M_n(base)`` with basis ``E_ab (x) e_i``; no grading is carried."""
    if n < 1:
        raise AlgebraError("matrix size must be >= 1")
    if n == 1:
        return base
    d = base.dim

    def idx(a: int, b: int, i: int) -> int:
        return (a * n + b) * d + i

    constants: dict[tuple[int, int], dict[int, int]] = {}
    for a, b, i in itertools.product(range(n), range(n), range(d)):
        for c, e, j in itertools.product(range(n), range(n), range(d)):
            if b != c:
                continue
            prod = dict(base.mult[i][j])
            if prod:
                constants[(idx(a, b, i), idx(c, e, j))] = {
                    idx(a, e, k): v for k, v in prod.items()
                }
    unit = [0] * (n * n * d)
    for a in range(n):
        for k, c in base.unit_sparse.items():
            unit[idx(a, a, k)] = c
    labels = [f"E{a}{b}({base.labels[i]})" if d > 1 else f"E{a}{b}"
              for a in range(n) for b in range(n) for i in range(d)]
    return from_structure_constants(
        n * n * d, labels, constants, unit, name=f"matrix:{n}({base.name or 'Z'})"
    )


def integers() -> AlgebraZ:
    return named_group("C1")


# -- simple tensors and the Delta S action -----------------------------------


@dataclass(frozen=True)
class SimpleTensor:
    factors: tuple[Vector, ...]

    def __len__(self) -> int:
        return len(self.factors)


def simple_tensor(A: AlgebraZ, factors: Iterable[Sequence[int]]) -> SimpleTensor:
    fs = tuple(tuple(int(c) for c in f) for f in factors)
    for f in fs:
        if len(f) != A.dim:
            raise AlgebraError(f"factor {f} does not belong to an algebra of dimension {A.dim}")
    return SimpleTensor(fs)


def act(A: AlgebraZ, f: DeltaSMorphism, t: SimpleTensor) -> SimpleTensor:
    """Apply ``B^sym A (f)``: multiply the factors named by each block."""
    if len(t.factors) != f.source + 1:
        raise AlgebraError(
            f"tensor has {len(t.factors)} factors; morphism expects {f.source + 1}"
        )
    out = []
    for block in f.blocks:
        acc = A.unit_sparse
        for i in block:
            acc = A.mul_sparse(acc, A.to_sparse(t.factors[i]))
        out.append(A.to_dense(acc))
    return SimpleTensor(tuple(out))


# -- spec files ---------------------------------------------------------------


def to_spec(A: AlgebraZ) -> dict:
    sc = [
        [i, j, k, c]
        for i in range(A.dim)
        for j in range(A.dim)
        for k, c in A.mult[i][j]
    ]
    spec: dict = {
        "format": SPEC_FORMAT,
        "version": SPEC_VERSION,
        "name": A.name,
        "dim": A.dim,
        "labels": list(A.labels),
        "unit": list(A.unit),
        "sc": sc,
    }
    if A.grading is not None:
        g = A.grading
        spec["grading"] = {
            "basis": [g.elements[a] for a in g.basis_grades],
            "elements": list(g.elements),
            "table": [list(r) for r in g.table],
            "zero": g.elements[g.zero] if g.zero is not None else None,
        }
    if A.augmentation is not None:
        spec["augmentation"] = list(A.augmentation)
    return spec


def from_spec(spec: Mapping) -> AlgebraZ:
    if spec.get("format") != SPEC_FORMAT:
        raise AlgebraError(f"not a {SPEC_FORMAT} document")
    if spec.get("version") != SPEC_VERSION:
        raise AlgebraError(f"unsupported spec version {spec.get('version')!r}")
    try:
        dim = int(spec["dim"])
        labels = spec.get("labels")
        unit = spec["unit"]
        sc = spec["sc"]
    except KeyError as exc:
        raise AlgebraError(f"spec is missing field {exc}") from None
    constants: dict[tuple[int, int], dict[int, int]] = {}
    for entry in sc:
        i, j, k, c = (int(x) for x in entry)
        slot = constants.setdefault((i, j), {})
        slot[k] = slot.get(k, 0) + c
    grading = None
    if spec.get("grading"):
        gs = spec["grading"]
        elements = tuple(gs["elements"])
        zero = gs.get("zero")
        grading = Grading(
            elements=elements,
            table=tuple(tuple(int(x) for x in r) for r in gs["table"]),
            basis_grades=tuple(elements.index(lab) for lab in gs["basis"]),
            zero=elements.index(zero) if zero is not None else None,
        )
    return from_structure_constants(
        dim, labels, constants, unit,
        grading=grading,
        augmentation=spec.get("augmentation"),
        name=spec.get("name", ""),
    )


def write_spec(A: AlgebraZ, path: str | Path) -> None:
    Path(path).write_text(json.dumps(to_spec(A), indent=1) + "\n")


def read_spec(path: str | Path) -> AlgebraZ:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise AlgebraError(f"cannot read algebra spec {path}: {exc}") from None
    return from_spec(data)


def parse_algebra(text: str) -> AlgebraZ:
    """Built-in mini-language: ``trunc:3,2``, ``group:C2xC2``, ``monoid:4,3``,
    ``matrix:2``, ``quat``, ``file:PATH``."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "trunc":
            return truncated_polynomial([int(a) for a in arg.split(",")])
        if kind == "group":
            return named_group(arg)
        if kind == "monoid":
            p, q = (int(a) for a in arg.split(","))
            return cyclic_monoid_ring(p, q)
        if kind == "matrix":
            return matrix_ring(integers(), int(arg))
        if kind == "quat":
            return quaternions()
        if kind == "Z" or text == "Z":
            return integers()
        if kind == "file":
            return read_spec(arg)
    except ValueError as exc:
        if isinstance(exc, AlgebraError):
            raise
        raise AlgebraError(f"bad algebra argument {text!r}: {exc}") from None
    raise AlgebraError(f"unknown algebra spec {text!r}")
