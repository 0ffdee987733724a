"""Exact arithmetic for the three split algebras.

Split-complex numbers (j^2 = +1), split-quaternions and split-octonions,
together with their involutions and indefinite quadratic forms.  Components
may be ints, Fractions or floats; the same classes serve both the exact
rational backend and the float geometry backend.  All values are immutable,
so everything here is safe to share between threads.
"""

from fractions import Fraction
import numbers
import random

__all__ = [
    "SplitComplex",
    "OrdinaryComplex",
    "SplitQuaternion",
    "SplitOctonion",
    "StructureTable",
    "OCTONION_TABLE",
    "verify_structure_table",
    "multiplication_table",
]


class AlgebraError(TypeError):
    """Operands from different algebras were mixed."""


def _is_scalar(x):
    return isinstance(x, numbers.Real) and not isinstance(x, bool)


class _Binarion:
    """Shared implementation for two-component hypercomplex numbers.

    Subclasses fix UNIT_SQ (the square of the imaginary unit) and its
    display symbol.  Mixing the two subclasses in one product is an error;
    promotion from the reals is explicit via the constructor.
    """

    __slots__ = ("re", "im")
    UNIT_SQ = None
    UNIT = "?"

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, *a):
        raise AttributeError("immutable value")

    @classmethod
    def unit(cls):
        return cls(0, 1)

    def __add__(self, other):
        if _is_scalar(other):
            return type(self)(self.re + other, self.im)
        if type(other) is not type(self):
            return NotImplemented
        return type(self)(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return type(self)(-self.re, -self.im)

    def __mul__(self, other):
        if _is_scalar(other):
            return type(self)(self.re * other, self.im * other)
        if type(other) is not type(self):
            if isinstance(other, (_Binarion, SplitQuaternion, SplitOctonion)):
                raise AlgebraError(
                    "cannot multiply %s by %s" % (type(self).__name__, type(other).__name__)
                )
            return NotImplemented
        u2 = self.UNIT_SQ
        return type(self)(
            self.re * other.re + u2 * self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __rmul__(self, other):
        if _is_scalar(other):
            return type(self)(other * self.re, other * self.im)
        return NotImplemented

    def __truediv__(self, other):
        if _is_scalar(other):
            return type(self)(self.re / other, self.im / other)
        if type(other) is type(self):
            q = other.qform()
            if q == 0:
                raise ZeroDivisionError("division by a null %s" % type(self).__name__)
            return self * other.conj() * (1 / q if isinstance(q, float) else Fraction(1, 1) / q)
        return NotImplemented

    def conj(self):
        return type(self)(self.re, -self.im)

    def qform(self):
        # conj(z) * z; indefinite for the split case.
        return self.re * self.re - self.UNIT_SQ * self.im * self.im

    def is_zero(self):
        return self.re == 0 and self.im == 0

    def __eq__(self, other):
        if _is_scalar(other):
            return self.re == other and self.im == 0
        if type(other) is not type(self):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((type(self).__name__, self.re, self.im))

    def __repr__(self):
        return "%s + %s%s" % (self.re, self.im, self.UNIT)


class SplitComplex(_Binarion):
    """a + jb with j^2 = +1 and conj(j) = -j; qform = a^2 - b^2."""

    __slots__ = ()
    UNIT_SQ = 1
    UNIT = "j"


class OrdinaryComplex(_Binarion):
    """a + ib with i^2 = -1; exact stand-in for complex over the rationals."""

    __slots__ = ()
    UNIT_SQ = -1
    UNIT = "i"


# ---------------------------------------------------------------------------
# split-quaternions

# basis products q_i q_j -> (coefficient, basis index), index 0 is the scalar
# unit.  Generated by q1^2 = q3^2 = 1, q2^2 = -1, q1 q2 = q3, q2 q3 = q1,
# q3 q1 = -q2 and anticommutativity.
_QUAT_TAB = {
    (1, 1): (1, 0), (2, 2): (-1, 0), (3, 3): (1, 0),
    (1, 2): (1, 3), (2, 1): (-1, 3),
    (2, 3): (1, 1), (3, 2): (-1, 1),
    (3, 1): (-1, 2), (1, 3): (1, 2),
}


class SplitQuaternion:
    """r0 + r1 q1 + r2 q2 + r3 q3 with q1^2 = q3^2 = +1, q2^2 = -1."""

    __slots__ = ("coeffs",)

    def __init__(self, r0=0, r1=0, r2=0, r3=0):
        object.__setattr__(self, "coeffs", (r0, r1, r2, r3))

    def __setattr__(self, *a):
        raise AttributeError("immutable value")

    @classmethod
    def basis(cls, k):
        c = [0, 0, 0, 0]
        c[k] = 1
        return cls(*c)

    @classmethod
    def from_split_complex(cls, z, axis=1):
        # explicit promotion: j maps onto a square-(+1) imaginary unit
        if axis not in (1, 3):
            raise ValueError("j must map to a unit of square +1 (axis 1 or 3)")
        c = [z.re, 0, 0, 0]
        c[axis] = z.im
        return cls(*c)

    def __add__(self, other):
        if _is_scalar(other):
            a = self.coeffs
            return SplitQuaternion(a[0] + other, a[1], a[2], a[3])
        if type(other) is not SplitQuaternion:
            return NotImplemented
        return SplitQuaternion(*[a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return SplitQuaternion(*[-a for a in self.coeffs])

    def __mul__(self, other):
        if _is_scalar(other):
            return SplitQuaternion(*[a * other for a in self.coeffs])
        if type(other) is not SplitQuaternion:
            if isinstance(other, (_Binarion, SplitOctonion)):
                raise AlgebraError("cannot multiply SplitQuaternion by %s" % type(other).__name__)
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        out = [0, 0, 0, 0]
        out[0] = a[0] * b[0]
        for k in range(1, 4):
            out[k] = a[0] * b[k] + a[k] * b[0]
        for i in range(1, 4):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(1, 4):
                bj = b[j]
                if bj == 0:
                    continue
                coef, k = _QUAT_TAB[(i, j)]
                out[k] = out[k] + coef * ai * bj
        return SplitQuaternion(*out)

    def __rmul__(self, other):
        if _is_scalar(other):
            return SplitQuaternion(*[other * a for a in self.coeffs])
        return NotImplemented

    def conj(self):
        a = self.coeffs
        return SplitQuaternion(a[0], -a[1], -a[2], -a[3])

    def qform(self):
        r0, r1, r2, r3 = self.coeffs
        return r0 * r0 - r1 * r1 + r2 * r2 - r3 * r3

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if _is_scalar(other):
            return self.coeffs[0] == other and all(c == 0 for c in self.coeffs[1:])
        if type(other) is not SplitQuaternion:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("SplitQuaternion", self.coeffs))

    def __repr__(self):
        return "SplitQuaternion%r" % (self.coeffs,)


# ---------------------------------------------------------------------------
# split-octonions

# Signature of the imaginary units e1..e7: e_I e_I = -eta_I.
_ETA7 = (None, 1, 1, 1, -1, -1, -1, -1)

# Totally antisymmetric structure tensor with the third index lowered by the
# signature above.  Seven seed triples; all other nonzero entries follow by
# antisymmetry (cyclic permutations leave the value unchanged).
_SEEDS_LOWER = {
    (1, 2, 3): 1,
    (1, 4, 5): 1,
    (1, 6, 7): 1,
    (2, 4, 6): 1,
    (2, 5, 7): -1,
    (3, 4, 7): 1,
    (3, 5, 6): 1,
}


def _expand_lower():
    full = {}
    for (i, j, k), v in _SEEDS_LOWER.items():
        for (a, b, c), sgn in (
            ((i, j, k), 1), ((j, k, i), 1), ((k, i, j), 1),
            ((j, i, k), -1), ((i, k, j), -1), ((k, j, i), -1),
        ):
            full[(a, b, c)] = sgn * v
    return full


_F_LOWER = _expand_lower()


class StructureTable:
    """Split-octonion structure constants.

    f(I, J, K) is the coefficient of e_K in the product e_I e_J (the mixed
    form); f_lower(I, J, K) carries the K index lowered with the split
    signature and is totally antisymmetric.  Products are computed from this
    table, never re-derived.
    """

    def __init__(self):
        self.eta = _ETA7
        self.lower = dict(_F_LOWER)
        # mixed form: raise the last index (diagonal metric)
        self.mixed = {key: v * _ETA7[key[2]] for key, v in _F_LOWER.items()}
        # product map for distinct imaginary indices: (I, J) -> (coeff, K)
        prod = {}
        for (i, j, k), v in self.mixed.items():
            prod[(i, j)] = (v, k)
        self.products = prod

    def f(self, i, j, k):
        return self.mixed.get((i, j, k), 0)

    def f_lower(self, i, j, k):
        return self.lower.get((i, j, k), 0)

    def f_extended(self, a, b, c):
        """Coefficient of e_c in e_a e_b with indices running over 0..7."""
        if a == 0:
            return 1 if b == c else 0
        if b == 0:
            return 1 if a == c else 0
        if a == b:
            return -_ETA7[a] if c == 0 else 0
        if c == 0:
            return 0
        return self.f(a, b, c)

    def basis_product(self, a, b):
        """e_a e_b as (coefficient, basis index), indices 0..7."""
        if a == 0:
            return (1, b)
        if b == 0:
            return (1, a)
        if a == b:
            return (-_ETA7[a], 0)
        return self.products[(a, b)]


OCTONION_TABLE = StructureTable()


class SplitOctonion:
    """r0 + sum r_I e_I over the seven split-octonion units (non-associative)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != 8:
            raise ValueError("need 8 coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *a):
        raise AttributeError("immutable value")

    @classmethod
    def basis(cls, k):
        return cls(tuple(1 if i == k else 0 for i in range(8)))

    @classmethod
    def from_split_quaternion(cls, h):
        # q1 -> e4, q2 -> e2, q3 -> e6 preserves all products and squares
        r0, r1, r2, r3 = h.coeffs
        c = [r0, 0, r2, 0, r1, 0, r3, 0]
        return cls(c)

    def __add__(self, other):
        if _is_scalar(other):
            c = list(self.coeffs)
            c[0] = c[0] + other
            return SplitOctonion(c)
        if type(other) is not SplitOctonion:
            return NotImplemented
        return SplitOctonion([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return SplitOctonion([-a for a in self.coeffs])

    def __mul__(self, other):
        if _is_scalar(other):
            return SplitOctonion([a * other for a in self.coeffs])
        if type(other) is not SplitOctonion:
            if isinstance(other, (_Binarion, SplitQuaternion)):
                raise AlgebraError("cannot multiply SplitOctonion by %s" % type(other).__name__)
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        out = [0] * 8
        table = OCTONION_TABLE
        for i in range(8):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(8):
                bj = b[j]
                if bj == 0:
                    continue
                coef, k = table.basis_product(i, j)
                out[k] = out[k] + coef * ai * bj
        return SplitOctonion(out)

    def __rmul__(self, other):
        if _is_scalar(other):
            return SplitOctonion([other * a for a in self.coeffs])
        return NotImplemented

    def conj(self):
        c = self.coeffs
        return SplitOctonion((c[0],) + tuple(-x for x in c[1:]))

    def qform(self):
        c = self.coeffs
        return sum(c[i] * c[i] for i in range(4)) - sum(c[i] * c[i] for i in range(4, 8))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if _is_scalar(other):
            return self.coeffs[0] == other and all(c == 0 for c in self.coeffs[1:])
        if type(other) is not SplitOctonion:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("SplitOctonion", self.coeffs))

    def __repr__(self):
        return "SplitOctonion%r" % (self.coeffs,)


# ---------------------------------------------------------------------------
# generic operations (free functions mirroring the methods)

def mul(a, b):
    if type(a) is not type(b):
        raise AlgebraError("mixed-algebra product: %s * %s" % (type(a).__name__, type(b).__name__))
    return a * b


def conj(a):
    return a.conj()


def qform(a):
    return a.qform()


# ---------------------------------------------------------------------------
# verification

# The full 8x8 multiplication table, rows = left factor e0..e7, transcribed
# cell by cell.  Used as independent ground truth against basis_product.
_TABLE_CELLS = [
    ["1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"],
    ["e1", "-1", "e3", "-e2", "-e5", "e4", "-e7", "e6"],
    ["e2", "-e3", "-1", "e1", "-e6", "e7", "e4", "-e5"],
    ["e3", "e2", "-e1", "-1", "-e7", "-e6", "e5", "e4"],
    ["e4", "e5", "e6", "e7", "1", "e1", "e2", "e3"],
    ["e5", "-e4", "-e7", "e6", "-e1", "1", "e3", "-e2"],
    ["e6", "e7", "-e4", "-e5", "-e2", "-e3", "1", "e1"],
    ["e7", "-e6", "e5", "-e4", "-e3", "e2", "-e1", "1"],
]


def _parse_cell(cell):
    sign = 1
    if cell.startswith("-"):
        sign = -1
        cell = cell[1:]
    if cell == "1":
        return (sign, 0)
    return (sign, int(cell[1:]))


def _random_rational(rng, span=6):
    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def random_element(cls, rng, span=6):
    if cls is SplitComplex or cls is OrdinaryComplex:
        return cls(_random_rational(rng, span), _random_rational(rng, span))
    if cls is SplitQuaternion:
        return cls(*[_random_rational(rng, span) for _ in range(4)])
    if cls is SplitOctonion:
        return cls([_random_rational(rng, span) for _ in range(8)])
    raise TypeError(cls)


def verify_structure_table(samples=1000, seed=0):
    """Check the stored octonion table and the composition property.

    Returns a list of (check id, passed, detail) triples: all 64 products
    against the transcribed table, total antisymmetry of the lowered
    structure tensor, and qform(ab) == qform(a) qform(b) on random rational
    samples for all three algebras (brute-force expansion, exact).
    """
    results = []

    bad = []
    for i in range(8):
        for j in range(8):
            expect = _parse_cell(_TABLE_CELLS[i][j])
            got = OCTONION_TABLE.basis_product(i, j)
            if got != expect:
                bad.append("e%d*e%d: got %r want %r" % (i, j, got, expect))
    results.append(("octonion-table-64", not bad, "; ".join(bad) or "64/64 match"))

    asym_bad = []
    for i in range(1, 8):
        for j in range(1, 8):
            for k in range(1, 8):
                v = OCTONION_TABLE.f_lower(i, j, k)
                if v != -OCTONION_TABLE.f_lower(j, i, k) or v != -OCTONION_TABLE.f_lower(i, k, j):
                    asym_bad.append("(%d,%d,%d)" % (i, j, k))
    nonzero = sum(1 for v in OCTONION_TABLE.lower.values() if v != 0)
    ok = not asym_bad and nonzero == 42
    results.append(("f-lower-antisymmetric", ok, "; ".join(asym_bad) or "42 signed entries"))

    rng = random.Random(seed)
    for cls in (SplitComplex, SplitQuaternion, SplitOctonion):
        bad = 0
        for _ in range(samples):
            a = random_element(cls, rng)
            b = random_element(cls, rng)
            if (a * b).qform() != a.qform() * b.qform():
                bad += 1
        results.append(
            ("composition-%s" % cls.__name__, bad == 0,
             "%d/%d exact" % (samples - bad, samples))
        )
    return results


_BASIS_NAMES = {
    "split-complex": ["1", "j"],
    "split-quaternion": ["1", "q1", "q2", "q3"],
    "split-octonion": ["1", "e1", "e2", "e3", "e4", "e5", "e6", "e7"],
}


def multiplication_table(algebra):
    """Full multiplication table of one split algebra as JSON-ready data."""
    if algebra not in _BASIS_NAMES:
        raise ValueError("unknown algebra %r" % algebra)
    basis = _BASIS_NAMES[algebra]
    n = len(basis)
    if algebra == "split-complex":
        elems = [SplitComplex(1, 0), SplitComplex(0, 1)]

        def decompose(z):
            return [(0, z.re), (1, z.im)]

    elif algebra == "split-quaternion":
        elems = [SplitQuaternion.basis(k) for k in range(4)]

        def decompose(h):
            return list(enumerate(h.coeffs))

    else:
        elems = [SplitOctonion.basis(k) for k in range(8)]

        def decompose(o):
            return list(enumerate(o.coeffs))

    table = []
    for i in range(n):
        row = []
        for j in range(n):
            p = elems[i] * elems[j]
            terms = [{"coeff": c, "basis_index": k} for k, c in decompose(p) if c != 0]
            row.append(terms)
        table.append(row)
    return {"schema": 1, "algebra": algebra, "basis": basis, "table": table}
