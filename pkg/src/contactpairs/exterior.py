"""Graded exterior calculus over exact scalars.

Spaces are either polynomial coordinate charts or constant-coefficient Lie
frames given by structure constants.  Forms, vector fields, endomorphism
fields and metrics all carry :class:`~contactpairs.algebra.RatFun`
coefficients; on Lie-frame spaces the coefficients must be constants
(left-invariant calculus) and mixing is a constructor error.

Pairing convention, fixed once for the whole package:

    (dx_{i1} ∧ ... ∧ dx_{ip})(v_1, ..., v_p) = det(v_b[i_a])

with no 1/p! normalization anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .algebra import Poly, RatFun, RfMatrix, _as_fraction

Index = tuple[int, ...]

__all__ = [
    "Space",
    "Form",
    "VectorField",
    "EndoField",
    "MetricField",
    "FrameForm",
    "wedge",
    "ext_d",
    "interior",
    "bracket",
    "lie_derivative",
    "eval_at",
    "directional_derivative",
]


def _merge_indices(a: Index, b: Index) -> tuple[int, Index]:
    """Merge strictly increasing index tuples; sign 0 on a repeated index."""
    i = j = 0
    sign = 1
    out: list[int] = []
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return 0, ()
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            j += 1
            if (len(a) - i) % 2:
                sign = -sign
    out.extend(a[i:])
    out.extend(b[j:])
    return sign, tuple(out)


class Space:
    """A coordinate chart or a constant-coefficient Lie frame.

    Lie frames are specified either by structure constants c^k_{ij} of the
    brackets [X_i, X_j] = sum_k c^k_{ij} X_k, or by the differentials of the
    frame covectors (lists of (i, j, coeff) with i < j, meaning
    d w_k = sum coeff · w_i ∧ w_j); the two are related by c^k_{ij} = -coeff.
    Construction validates d∘d = 0 on every covector, which is the Jacobi
    identity.
    """

    __slots__ = ("kind", "names", "_sc", "_dforms")

    CHART = "chart"
    LIE = "lie"

    def __init__(self, kind: str, names: Sequence[str], sc=None):
        self.kind = kind
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("coordinate/covector names must be distinct")
        self._sc = sc or {}
        self._dforms: dict[int, "Form"] = {}

    @classmethod
    def chart(cls, names: Sequence[str]) -> "Space":
        return cls(cls.CHART, names)

    @classmethod
    def lie_frame(
        cls,
        names: Sequence[str],
        structure_constants: Mapping[tuple[int, int, int], Fraction] | None = None,
        differentials: Mapping[int, Iterable[tuple[int, int, Fraction]]] | None = None,
    ) -> "Space":
        if (structure_constants is None) == (differentials is None):
            raise ValueError("give exactly one of structure_constants or differentials")
        n = len(names)
        sc: dict[tuple[int, int, int], Fraction] = {}
        if structure_constants is not None:
            for (i, j, k), c in structure_constants.items():
                cls._check_frame_index(n, i, j, k)
                c = _as_fraction(c)
                if c:
                    sc[(i, j, k)] = c
        else:
            for k, pairs in differentials.items():
                for i, j, coeff in pairs:
                    cls._check_frame_index(n, i, j, k)
                    c = _as_fraction(coeff)
                    if c:
                        sc[(i, j, k)] = sc.get((i, j, k), Fraction(0)) - c
        space = cls(cls.LIE, names, sc)
        space._validate_jacobi()
        return space

    @staticmethod
    def _check_frame_index(n: int, i: int, j: int, k: int) -> None:
        if not (0 <= i < j < n):
            raise ValueError(f"frame indices must satisfy 0 <= i < j < {n}, got ({i}, {j})")
        if not 0 <= k < n:
            raise ValueError(f"frame index {k} out of range")

    @property
    def dim(self) -> int:
        return len(self.names)

    @property
    def is_chart(self) -> bool:
        return self.kind == self.CHART

    @property
    def is_lie(self) -> bool:
        return self.kind == self.LIE

    # scalar constructors -----------------------------------------------------

    def scalar(self, value) -> RatFun:
        if isinstance(value, RatFun):
            if value.nvars != self.dim:
                raise ValueError("scalar over wrong variable set")
            return value
        if isinstance(value, Poly):
            return RatFun(value)
        return RatFun.const(self.dim, value)

    def zero(self) -> RatFun:
        return RatFun.zero(self.dim)

    def one(self) -> RatFun:
        return RatFun.one(self.dim)

    def coordinate(self, index: int) -> RatFun:
        if not self.is_chart:
            raise ValueError("coordinate functions only exist on charts")
        return RatFun.variable(self.dim, index)

    def name_index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown coordinate/covector name {name!r}") from None

    # Lie structure ------------------------------------------------------------

    def bracket_coeffs(self, i: int, j: int) -> dict[int, Fraction]:
        """Coefficients of [X_i, X_j] in the frame (antisymmetric in i, j)."""
        if i == j:
            return {}
        flip = i > j
        if flip:
            i, j = j, i
        out = {k: c for (a, b, k), c in self._sc.items() if (a, b) == (i, j)}
        return {k: -c for k, c in out.items()} if flip else out

    def covector_differential(self, k: int) -> "Form":
        """d of the k-th frame covector: -sum_{i<j} c^k_{ij} w_i ∧ w_j."""
        if not self.is_lie:
            raise ValueError("covector differentials only exist on Lie frames")
        if k not in self._dforms:
            coeffs = {
                (i, j): self.scalar(-c)
                for (i, j, kk), c in self._sc.items()
                if kk == k
            }
            self._dforms[k] = Form(self, 2, coeffs)
        return self._dforms[k]

    def _validate_jacobi(self) -> None:
        for k in range(self.dim):
            dd = self.covector_differential(k).d()
            if not dd.is_zero():
                raise ValueError(
                    f"structure constants violate the Jacobi identity: "
                    f"d(d {self.names[k]}) = {dd} is nonzero"
                )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Space):
            return NotImplemented
        return self.kind == other.kind and self.names == other.names and self._sc == other._sc

    def __hash__(self) -> int:
        return hash((self.kind, self.names, frozenset(self._sc.items())))

    def __repr__(self) -> str:
        return f"Space({self.kind}, {self.names})"


def _check_same_space(a, b) -> None:
    if a.space != b.space:
        raise ValueError("objects live on different spaces")


class Form:
    """Exterior form of fixed degree with RatFun coefficients on strictly
    increasing index tuples.  Degrees above the space dimension are allowed
    only for the zero form (a wedge product can overflow the dimension)."""

    __slots__ = ("space", "degree", "coeffs")

    def __init__(self, space: Space, degree: int, coeffs: Mapping[Index, object] | None = None):
        self.space = space
        self.degree = int(degree)
        if self.degree < 0:
            raise ValueError("negative form degree")
        clean: dict[Index, RatFun] = {}
        if coeffs:
            for idx, value in coeffs.items():
                key = tuple(int(i) for i in idx)
                if len(key) != self.degree:
                    raise ValueError(f"index tuple {key} has wrong length for degree {self.degree}")
                if any(not 0 <= i < space.dim for i in key):
                    raise ValueError(f"index out of range in {key}")
                if any(key[t] >= key[t + 1] for t in range(len(key) - 1)):
                    raise ValueError(f"indices must be strictly increasing, got {key}")
                c = space.scalar(value)
                if space.is_lie and not c.is_constant():
                    raise ValueError(
                        "Lie-frame forms must have constant coefficients, got "
                        f"{c} on {key}"
                    )
                if not c.is_zero():
                    clean[key] = c
        if self.degree > space.dim and clean:
            raise ValueError(f"nonzero form of degree {self.degree} on dim {space.dim}")
        self.coeffs = clean

    @classmethod
    def zero_form(cls, space: Space, degree: int) -> "Form":
        return cls(space, degree)

    @classmethod
    def covector(cls, space: Space, index: int) -> "Form":
        return cls(space, 1, {(index,): 1})

    @classmethod
    def function(cls, space: Space, value) -> "Form":
        return cls(space, 0, {(): value})

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, idx: Index) -> RatFun:
        return self.coeffs.get(tuple(idx), self.space.zero())

    def __add__(self, other: "Form") -> "Form":
        _check_same_space(self, other)
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        coeffs = dict(self.coeffs)
        for idx, c in other.coeffs.items():
            s = coeffs.get(idx, self.space.zero()) + c
            if s.is_zero():
                coeffs.pop(idx, None)
            else:
                coeffs[idx] = s
        return Form(self.space, self.degree, coeffs)

    def __neg__(self) -> "Form":
        return Form(self.space, self.degree, {i: -c for i, c in self.coeffs.items()})

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __mul__(self, factor) -> "Form":
        f = self.space.scalar(factor)
        return Form(self.space, self.degree, {i: c * f for i, c in self.coeffs.items()})

    __rmul__ = __mul__

    def wedge(self, other: "Form") -> "Form":
        _check_same_space(self, other)
        degree = self.degree + other.degree
        coeffs: dict[Index, RatFun] = {}
        if degree <= self.space.dim:
            for ia, ca in self.coeffs.items():
                for ib, cb in other.coeffs.items():
                    sign, key = _merge_indices(ia, ib)
                    if sign == 0:
                        continue
                    term = ca * cb if sign > 0 else -(ca * cb)
                    s = coeffs.get(key, self.space.zero()) + term
                    if s.is_zero():
                        coeffs.pop(key, None)
                    else:
                        coeffs[key] = s
        return Form(self.space, degree, coeffs)

    def wedge_power(self, power: int) -> "Form":
        if power < 0:
            raise ValueError("negative wedge power")
        result = Form.function(self.space, 1)
        for _ in range(power):
            result = result.wedge(self)
        return result

    def d(self) -> "Form":
        """Exterior derivative: coordinate rule on charts, the structure-
        constant antiderivation rule on Lie frames."""
        space = self.space
        if space.is_chart:
            out = Form.zero_form(space, self.degree + 1)
            for idx, c in self.coeffs.items():
                for var in range(space.dim):
                    dc = c.diff(var)
                    if dc.is_zero():
                        continue
                    out = out + Form(space, 1, {(var,): dc}).wedge(
                        Form(space, self.degree, {idx: 1})
                    )
            return out
        out = Form.zero_form(space, self.degree + 1)
        for idx, c in self.coeffs.items():
            for t, covector_index in enumerate(idx):
                rest = idx[:t] + idx[t + 1 :]
                term = space.covector_differential(covector_index).wedge(
                    Form(space, self.degree - 1, {rest: c})
                )
                out = (out + term) if t % 2 == 0 else (out - term)
        return out

    def contract(self, field: "VectorField") -> "Form":
        """Interior product i_X; drops the degree by one."""
        _check_same_space(self, field)
        if self.degree == 0:
            raise ValueError("interior product of a degree-0 form")
        coeffs: dict[Index, RatFun] = {}
        for idx, c in self.coeffs.items():
            for t, i in enumerate(idx):
                comp = field.components[i]
                if comp.is_zero():
                    continue
                key = idx[:t] + idx[t + 1 :]
                term = c * comp if t % 2 == 0 else -(c * comp)
                s = coeffs.get(key, self.space.zero()) + term
                if s.is_zero():
                    coeffs.pop(key, None)
                else:
                    coeffs[key] = s
        return Form(self.space, self.degree - 1, coeffs)

    def __call__(self, *fields: "VectorField") -> RatFun:
        if len(fields) != self.degree:
            raise ValueError(f"degree-{self.degree} form applied to {len(fields)} fields")
        if self.degree == 0:
            return self.coeffs.get((), self.space.zero())
        total = self.space.zero()
        for idx, c in self.coeffs.items():
            minor = RfMatrix(
                self.space.dim,
                [[f.components[i] for f in fields] for i in idx],
            )
            total = total + c * minor.det()
        return total

    def eval_at(self, point: Sequence) -> dict[Index, Fraction]:
        out = {}
        for idx, c in self.coeffs.items():
            try:
                out[idx] = c.eval(point)
            except ZeroDivisionError as exc:
                raise ZeroDivisionError(f"coefficient {idx}: {exc}") from None
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (
            self.space == other.space
            and self.degree == other.degree
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.space, self.degree, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"Form<deg {self.degree}>(0)"
        names = self.space.names
        parts = []
        for idx in sorted(self.coeffs):
            basis = "^".join(f"d{names[i]}" if self.space.is_chart else names[i] for i in idx)
            parts.append(f"({self.coeffs[idx].format(names)}) {basis}".strip())
        return f"Form<deg {self.degree}>(" + " + ".join(parts) + ")"


class VectorField:
    """Tangent field with one RatFun component per coordinate/frame direction."""

    __slots__ = ("space", "components")

    def __init__(self, space: Space, components: Sequence):
        self.space = space
        comps = tuple(space.scalar(c) for c in components)
        if len(comps) != space.dim:
            raise ValueError(f"expected {space.dim} components, got {len(comps)}")
        if space.is_lie and any(not c.is_constant() for c in comps):
            raise ValueError("Lie-frame vector fields must have constant components")
        self.components = comps

    @classmethod
    def basis(cls, space: Space, index: int) -> "VectorField":
        return cls(space, [1 if i == index else 0 for i in range(space.dim)])

    @classmethod
    def zero_field(cls, space: Space) -> "VectorField":
        return cls(space, [0] * space.dim)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other: "VectorField") -> "VectorField":
        _check_same_space(self, other)
        return VectorField(
            self.space, [a + b for a, b in zip(self.components, other.components)]
        )

    def __neg__(self) -> "VectorField":
        return VectorField(self.space, [-c for c in self.components])

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + (-other)

    def __mul__(self, factor) -> "VectorField":
        f = self.space.scalar(factor)
        return VectorField(self.space, [c * f for c in self.components])

    __rmul__ = __mul__

    def eval_at(self, point: Sequence) -> list[Fraction]:
        out = []
        for i, c in enumerate(self.components):
            try:
                out.append(c.eval(point))
            except ZeroDivisionError as exc:
                raise ZeroDivisionError(f"component {self.space.names[i]}: {exc}") from None
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.space == other.space and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.space, self.components))

    def __repr__(self) -> str:
        names = self.space.names
        parts = [
            f"({c.format(names)}) ∂{names[i]}" if self.space.is_chart else f"({c.format(names)}) {names[i]}*"
            for i, c in enumerate(self.components)
            if not c.is_zero()
        ]
        return "VectorField(" + (" + ".join(parts) if parts else "0") + ")"


class EndoField:
    """(1,1)-tensor field: column a of ``matrix`` is the image of basis field a."""

    __slots__ = ("space", "matrix")

    def __init__(self, space: Space, matrix):
        self.space = space
        if not isinstance(matrix, RfMatrix):
            matrix = RfMatrix(space.dim, matrix)
        if matrix.rows != space.dim or matrix.cols != space.dim:
            raise ValueError("endomorphism matrix must be n x n")
        if space.is_lie and any(
            not e.is_constant() for row in matrix.entries for e in row
        ):
            raise ValueError("Lie-frame endomorphisms must have constant entries")
        self.matrix = matrix

    @classmethod
    def zero_field(cls, space: Space) -> "EndoField":
        return cls(space, RfMatrix.zeros(space.dim, space.dim, space.dim))

    def apply(self, field: VectorField) -> VectorField:
        _check_same_space(self, field)
        return VectorField(self.space, self.matrix.apply(field.components))

    def compose(self, other: "EndoField") -> "EndoField":
        _check_same_space(self, other)
        return EndoField(self.space, self.matrix @ other.matrix)

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def eval_at(self, point: Sequence) -> list[list[Fraction]]:
        try:
            return self.matrix.eval_at(point)
        except ZeroDivisionError as exc:
            raise ZeroDivisionError(f"endomorphism entry: {exc}") from None

    def __eq__(self, other) -> bool:
        if not isinstance(other, EndoField):
            return NotImplemented
        return self.space == other.space and self.matrix == other.matrix

    def __repr__(self) -> str:
        return f"EndoField({self.space!r})"


class MetricField:
    """Symmetric (0,2)-tensor field; positive definiteness is checked pointwise
    where a consumer declares sample points."""

    __slots__ = ("space", "matrix")

    def __init__(self, space: Space, matrix):
        self.space = space
        if not isinstance(matrix, RfMatrix):
            matrix = RfMatrix(space.dim, matrix)
        if matrix.rows != space.dim or matrix.cols != space.dim:
            raise ValueError("metric matrix must be n x n")
        if not matrix.is_symmetric():
            raise ValueError("metric matrix must be symmetric")
        if space.is_lie and any(
            not e.is_constant() for row in matrix.entries for e in row
        ):
            raise ValueError("Lie-frame metrics must have constant entries")
        self.matrix = matrix

    @classmethod
    def euclidean(cls, space: Space) -> "MetricField":
        return cls(space, RfMatrix.identity(space.dim, space.dim))

    def value(self, a: VectorField, b: VectorField) -> RatFun:
        _check_same_space(self, a)
        _check_same_space(self, b)
        image = self.matrix.apply(b.components)
        total = self.space.zero()
        for x, y in zip(a.components, image):
            if not (x.is_zero() or y.is_zero()):
                total = total + x * y
        return total

    def eval_at(self, point: Sequence) -> list[list[Fraction]]:
        try:
            return self.matrix.eval_at(point)
        except ZeroDivisionError as exc:
            raise ZeroDivisionError(f"metric entry: {exc}") from None

    def is_positive_definite_at(self, point: Sequence) -> bool:
        """Sylvester's criterion with exact rational arithmetic."""
        mat = [row[:] for row in self.eval_at(point)]
        n = self.space.dim
        # positive definite iff every pivot of symmetric elimination is > 0
        for k in range(n):
            if mat[k][k] <= 0:
                return False
            for i in range(k + 1, n):
                factor = mat[i][k] / mat[k][k]
                for j in range(k, n):
                    mat[i][j] -= factor * mat[k][j]
        return True

    def __eq__(self, other) -> bool:
        if not isinstance(other, MetricField):
            return NotImplemented
        return self.space == other.space and self.matrix == other.matrix

    def __repr__(self) -> str:
        return f"MetricField({self.space!r})"


TensorLike = Union[Form, VectorField, EndoField, MetricField]


# --- the exported operations -------------------------------------------------


def wedge(a: Form, b: Form) -> Form:
    return a.wedge(b)


def ext_d(a: Form) -> Form:
    return a.d()


def interior(field: VectorField, a: Form) -> Form:
    return a.contract(field)


def bracket(x: VectorField, y: VectorField) -> VectorField:
    """Lie bracket: the derivative formula on charts, structure constants on
    Lie frames (where components are constant by construction)."""
    _check_same_space(x, y)
    space = x.space
    if space.is_chart:
        comps = []
        for c in range(space.dim):
            total = space.zero()
            for a in range(space.dim):
                xa = x.components[a]
                ya = y.components[a]
                if not xa.is_zero():
                    d = y.components[c].diff(a)
                    if not d.is_zero():
                        total = total + xa * d
                if not ya.is_zero():
                    d = x.components[c].diff(a)
                    if not d.is_zero():
                        total = total - ya * d
            comps.append(total)
        return VectorField(space, comps)
    comps = [space.zero() for _ in range(space.dim)]
    for i in range(space.dim):
        xi = x.components[i]
        if xi.is_zero():
            continue
        for j in range(space.dim):
            yj = y.components[j]
            if yj.is_zero() or i == j:
                continue
            for k, c in space.bracket_coeffs(i, j).items():
                comps[k] = comps[k] + xi * yj * space.scalar(c)
    return VectorField(space, comps)


def directional_derivative(field: VectorField, f: RatFun) -> RatFun:
    """X·f.  On Lie frames scalars are constants, so this is zero."""
    space = field.space
    if space.is_lie:
        if not f.is_constant():
            raise ValueError("non-constant scalar on a Lie frame")
        return space.zero()
    total = space.zero()
    for a, comp in enumerate(field.components):
        if comp.is_zero():
            continue
        d = f.diff(a)
        if not d.is_zero():
            total = total + comp * d
    return total


def lie_derivative(field: VectorField, tensor: TensorLike) -> TensorLike:
    """Lie derivative along ``field``: Cartan's formula for forms, the bracket
    for vector fields, and the usual derivation formulas for endomorphism and
    metric fields (computed on basis fields, which determines the tensor)."""
    space = field.space
    if isinstance(tensor, Form):
        _check_same_space(field, tensor)
        if tensor.degree == 0:
            value = directional_derivative(field, tensor.coefficient(()))
            return Form(space, 0, {(): value})
        return tensor.d().contract(field) + tensor.contract(field).d()
    if isinstance(tensor, VectorField):
        return bracket(field, tensor)
    if isinstance(tensor, EndoField):
        _check_same_space(field, tensor)
        columns = []
        for b in range(space.dim):
            basis = VectorField.basis(space, b)
            col = bracket(field, tensor.apply(basis)) - tensor.apply(bracket(field, basis))
            columns.append(col.components)
        return EndoField(
            space, RfMatrix(space.dim, [[columns[b][a] for b in range(space.dim)] for a in range(space.dim)])
        )
    if isinstance(tensor, MetricField):
        _check_same_space(field, tensor)
        entries = []
        for a in range(space.dim):
            ea = VectorField.basis(space, a)
            row = []
            for b in range(space.dim):
                eb = VectorField.basis(space, b)
                term = directional_derivative(field, tensor.value(ea, eb))
                term = term - tensor.value(bracket(field, ea), eb)
                term = term - tensor.value(ea, bracket(field, eb))
                row.append(term)
            entries.append(row)
        return MetricField(space, entries)
    raise TypeError(f"cannot take a Lie derivative of {type(tensor).__name__}")


def eval_at(tensor: TensorLike, point: Sequence):
    """Exact rational evaluation of every coefficient at a point."""
    if isinstance(tensor, (Form, VectorField, EndoField, MetricField)):
        if len(point) != tensor.space.dim:
            raise ValueError(f"point has length {len(point)}, expected {tensor.space.dim}")
        return tensor.eval_at(point)
    raise TypeError(f"cannot evaluate {type(tensor).__name__}")


class FrameForm:
    """Alternating tensor indexed by the vectors of a frame (not by the
    ambient basis); coefficients stay in the ambient scalar ring.  Used to
    state wedge/volume conditions for forms restricted to a subbundle frame."""

    __slots__ = ("size", "degree", "coeffs", "nvars")

    def __init__(self, size: int, degree: int, coeffs: Mapping[Index, RatFun], nvars: int):
        self.size = size
        self.degree = degree
        self.nvars = nvars
        clean = {}
        for idx, c in coeffs.items():
            key = tuple(idx)
            if len(key) != degree or any(not 0 <= i < size for i in key):
                raise ValueError(f"bad frame index {key}")
            if any(key[t] >= key[t + 1] for t in range(len(key) - 1)):
                raise ValueError(f"frame indices must increase, got {key}")
            if not c.is_zero():
                clean[key] = c
        if degree > size and clean:
            raise ValueError("nonzero frame form above top degree")
        self.coeffs = clean

    @classmethod
    def one_form(cls, values: Sequence[RatFun]) -> "FrameForm":
        nvars = values[0].nvars if values else 0
        return cls(len(values), 1, {(i,): v for i, v in enumerate(values)}, nvars)

    @classmethod
    def two_form(cls, pairing: Sequence[Sequence[RatFun]]) -> "FrameForm":
        """From the full antisymmetric value table pairing[p][q]."""
        m = len(pairing)
        nvars = pairing[0][0].nvars if m else 0
        coeffs = {
            (p, q): pairing[p][q] for p in range(m) for q in range(p + 1, m)
        }
        return cls(m, 2, coeffs, nvars)

    @classmethod
    def unit(cls, size: int, nvars: int) -> "FrameForm":
        return cls(size, 0, {(): RatFun.one(nvars)}, nvars)

    def is_zero(self) -> bool:
        return not self.coeffs

    def wedge(self, other: "FrameForm") -> "FrameForm":
        if self.size != other.size:
            raise ValueError("frame size mismatch")
        degree = self.degree + other.degree
        coeffs: dict[Index, RatFun] = {}
        if degree <= self.size:
            for ia, ca in self.coeffs.items():
                for ib, cb in other.coeffs.items():
                    sign, key = _merge_indices(ia, ib)
                    if sign == 0:
                        continue
                    term = ca * cb if sign > 0 else -(ca * cb)
                    s = coeffs.get(key, RatFun.zero(self.nvars)) + term
                    if s.is_zero():
                        coeffs.pop(key, None)
                    else:
                        coeffs[key] = s
        return FrameForm(self.size, degree, coeffs, self.nvars)

    def wedge_power(self, power: int) -> "FrameForm":
        result = FrameForm.unit(self.size, self.nvars)
        for _ in range(power):
            result = result.wedge(self)
        return result

    def top_coefficient(self) -> RatFun:
        if self.degree != self.size:
            raise ValueError("not a top-degree frame form")
        return self.coeffs.get(tuple(range(self.size)), RatFun.zero(self.nvars))
