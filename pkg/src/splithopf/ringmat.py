"""Dense matrices over an involutive scalar ring.

The substrate for every gamma-matrix and spinor computation: small matrices
(at most 16x16) over the reals, ordinary complex numbers, split-complex
numbers or a Grassmann algebra.  Each matrix carries a ring descriptor that
supplies the entry involution, so adjoints never mix conjugation modes
mid-expression.  Values are immutable.
"""

from fractions import Fraction
import numbers

from .splitnum import SplitComplex, OrdinaryComplex

__all__ = [
    "Ring", "RING_REAL", "RING_SPLIT", "RING_COMPLEX",
    "MetricForm", "RMatrix",
    "matmul", "dagger", "weighted_adjoint", "commutator", "anticommutator", "kron",
]


class Ring:
    """Descriptor of an involutive scalar ring.

    conj_fn implements the involution; order = "reverse" when the involution
    reverses entry products (all commutative rings behave the same either
    way; the distinction matters for Grassmann entries).
    """

    def __init__(self, name, zero, one, conj_fn, promote_fn, order="reverse"):
        self.name = name
        self.zero = zero
        self.one = one
        self.conj = conj_fn
        self.promote = promote_fn
        self.order = order

    def __repr__(self):
        return "Ring(%s)" % self.name

    def __eq__(self, other):
        return isinstance(other, Ring) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


def _promote_real(x):
    if isinstance(x, numbers.Real):
        return x
    raise TypeError("not a real scalar: %r" % (x,))


def _promote_split(x):
    if isinstance(x, SplitComplex):
        return x
    if isinstance(x, numbers.Real):
        return SplitComplex(x, 0)
    raise TypeError("cannot place %r in the split-complex ring" % (x,))


def _promote_complex(x):
    if isinstance(x, OrdinaryComplex):
        return x
    if isinstance(x, complex):
        return OrdinaryComplex(x.real, x.imag)
    if isinstance(x, numbers.Real):
        return OrdinaryComplex(x, 0)
    raise TypeError("cannot place %r in the complex ring" % (x,))


RING_REAL = Ring("real", 0, 1, lambda x: x, _promote_real)
RING_SPLIT = Ring("split-complex", SplitComplex(0, 0), SplitComplex(1, 0),
                  lambda x: x.conj(), _promote_split)
RING_COMPLEX = Ring("complex", OrdinaryComplex(0, 0), OrdinaryComplex(1, 0),
                    lambda x: x.conj(), _promote_complex)


def grassmann_ring(config):
    """Ring over a Grassmann algebra; involution and order come from config."""
    from .superhopf import GrassmannElement

    def promote(x):
        if isinstance(x, GrassmannElement):
            if x.config is not config:
                raise TypeError("Grassmann element from a different involution config")
            return x
        return GrassmannElement.scalar(x, config)

    return Ring("grassmann[%s]" % config.mode, GrassmannElement.scalar(0, config),
                GrassmannElement.scalar(1, config), lambda x: x.conj(),
                promote, order=config.product_order)


def _is_zero(x):
    z = getattr(x, "is_zero", None)
    if z is not None:
        return z()
    return x == 0


class MetricForm:
    """Diagonal metric with entries +-1; 1-based index access."""

    def __init__(self, signature):
        signature = tuple(signature)
        if any(s not in (-1, 1) for s in signature):
            raise ValueError("signature entries must be +-1")
        self.signature = signature
        self.dim = len(signature)

    def eta(self, i, j=None):
        if j is not None and i != j:
            return 0
        return self.signature[i - 1]

    def matrix(self, ring=RING_REAL):
        return RMatrix.diagonal(self.signature, ring)

    def inner(self, x, y):
        return sum(s * a * b for s, a, b in zip(self.signature, x, y))

    def __eq__(self, other):
        return isinstance(other, MetricForm) and self.signature == other.signature

    def __repr__(self):
        return "MetricForm(%s)" % (self.signature,)


class RMatrix:
    """Immutable dense matrix over a Ring.

    dagger() is conjugate-transpose under the ring involution.  For
    order-reversing involutions (every commutative ring, and the standard
    Grassmann conjugation) it is an anti-homomorphism: dagger(MN) =
    dagger(N) dagger(M), and dagger(dagger(M)) = M.  The order-preserving
    pseudo-conjugation instead makes the entrywise conj() a homomorphism,
    conj(MN) = conj(M) conj(N), and squares to the parity sign on odd
    entries; callers in that mode should use conj() directly.
    """

    __slots__ = ("rows", "cols", "entries", "ring")

    def __init__(self, entries, ring):
        entries = tuple(tuple(ring.promote(x) for x in row) for row in entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", len(entries[0]) if entries else 0)
        object.__setattr__(self, "ring", ring)
        if any(len(r) != self.cols for r in entries):
            raise ValueError("ragged rows")

    def __setattr__(self, *a):
        raise AttributeError("immutable value")

    # ---- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, n, ring):
        return cls([[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)], ring)

    @classmethod
    def zeros(cls, rows, cols, ring):
        return cls([[ring.zero] * cols for _ in range(rows)], ring)

    @classmethod
    def diagonal(cls, diag, ring):
        n = len(diag)
        return cls([[diag[i] if i == j else ring.zero for j in range(n)] for i in range(n)], ring)

    @classmethod
    def from_blocks(cls, blocks, ring):
        """Assemble from a 2D grid of equally sized blocks (RMatrix or 0)."""
        sizes_r = []
        sizes_c = None
        for brow in blocks:
            h = None
            widths = []
            for b in brow:
                if isinstance(b, RMatrix):
                    h = b.rows
                    widths.append(b.cols)
                else:
                    widths.append(None)
            sizes_r.append(h)
            if sizes_c is None:
                sizes_c = widths
            else:
                sizes_c = [w if w is not None else old for w, old in zip(widths, sizes_c)]
        if any(h is None for h in sizes_r) or any(w is None for w in sizes_c):
            raise ValueError("cannot infer block sizes")
        out = []
        for brow, h in zip(blocks, sizes_r):
            for r in range(h):
                line = []
                for b, w in zip(brow, sizes_c):
                    if isinstance(b, RMatrix):
                        line.extend(b.entries[r])
                    else:
                        line.extend([ring.zero] * w)
                out.append(line)
        return cls(out, ring)

    # ---- basic algebra ----------------------------------------------------

    def __add__(self, other):
        self._check(other)
        return RMatrix([[a + b for a, b in zip(ra, rb)]
                        for ra, rb in zip(self.entries, other.entries)], self.ring)

    def __sub__(self, other):
        self._check(other)
        return RMatrix([[a - b for a, b in zip(ra, rb)]
                        for ra, rb in zip(self.entries, other.entries)], self.ring)

    def __neg__(self):
        return RMatrix([[-a for a in row] for row in self.entries], self.ring)

    def scale(self, c):
        c = self.ring.promote(c)
        return RMatrix([[c * a for a in row] for row in self.entries], self.ring)

    def scale_right(self, c):
        c = self.ring.promote(c)
        return RMatrix([[a * c for a in row] for row in self.entries], self.ring)

    def __mul__(self, c):
        return self.scale_right(c)

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        if self.ring != other.ring:
            raise TypeError("ring mismatch: %s vs %s" % (self.ring, other.ring))
        if self.cols != other.rows:
            raise ValueError("shape mismatch: %dx%d @ %dx%d"
                             % (self.rows, self.cols, other.rows, other.cols))
        zero = self.ring.zero
        bt = list(zip(*other.entries))
        out = []
        for arow in self.entries:
            nz = [(k, a) for k, a in enumerate(arow) if not _is_zero(a)]
            line = []
            for bcol in bt:
                acc = zero
                for k, a in nz:
                    b = bcol[k]
                    if _is_zero(b):
                        continue
                    acc = acc + a * b
                line.append(acc)
            out.append(line)
        return RMatrix(out, self.ring)

    def matvec(self, vec):
        """Apply to a column vector given as a sequence; returns a list."""
        zero = self.ring.zero
        out = []
        for arow in self.entries:
            acc = zero
            for a, v in zip(arow, vec):
                if _is_zero(a):
                    continue
                acc = acc + a * v
            out.append(acc)
        return out

    # ---- involutions ------------------------------------------------------

    def transpose(self):
        return RMatrix(list(zip(*self.entries)), self.ring)

    def conj(self):
        c = self.ring.conj
        return RMatrix([[c(a) for a in row] for row in self.entries], self.ring)

    def dagger(self):
        return self.conj().transpose()

    def weighted_adjoint(self, g):
        """G . dagger(M) . G for a metric weight G."""
        if isinstance(g, MetricForm):
            g = g.matrix(self.ring)
        return g @ self.dagger() @ g

    # ---- queries ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return (self.ring == other.ring and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.ring.name, self.entries))

    def is_zero(self):
        return all(_is_zero(a) for row in self.entries for a in row)

    def max_abs(self):
        """Largest absolute value over all real components of all entries."""
        worst = 0.0
        for row in self.entries:
            for a in row:
                for c in _components(a):
                    worst = max(worst, abs(float(c)))
        return worst

    def map_entries(self, fn, ring=None):
        return RMatrix([[fn(a) for a in row] for row in self.entries], ring or self.ring)

    def entry(self, i, j):
        return self.entries[i][j]

    def trace(self):
        acc = self.ring.zero
        for i in range(min(self.rows, self.cols)):
            acc = acc + self.entries[i][i]
        return acc

    def __repr__(self):
        return "RMatrix(%dx%d over %s)" % (self.rows, self.cols, self.ring.name)

    def _check(self, other):
        if not isinstance(other, RMatrix):
            raise TypeError("expected RMatrix")
        if self.ring != other.ring:
            raise TypeError("ring mismatch: %s vs %s" % (self.ring, other.ring))
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")


def _components(a):
    if isinstance(a, (SplitComplex, OrdinaryComplex)):
        return (a.re, a.im)
    if isinstance(a, numbers.Real):
        return (a,)
    # Grassmann element: all basis coefficients
    comps = []
    for coeff in a.coeffs.values():
        comps.extend(_components(coeff))
    return tuple(comps) if comps else (0,)


def matmul(a, b):
    return a @ b


def dagger(m):
    return m.dagger()


def weighted_adjoint(m, g):
    return m.weighted_adjoint(g)


def commutator(a, b):
    return a @ b - b @ a


def anticommutator(a, b):
    return a @ b + b @ a


def kron(a, b):
    """Kronecker product in row-major block layout: blocks are a[i][j] * b."""
    if a.ring != b.ring:
        raise TypeError("ring mismatch")
    out = []
    for arow in a.entries:
        for brow in b.entries:
            line = []
            for av in arow:
                for bv in brow:
                    line.append(av * bv)
            out.append(line)
    return RMatrix(out, a.ring)


def to_fraction_matrix(m):
    """Exact copy with all real components coerced to Fraction (for diagnostics)."""
    def f(a):
        if isinstance(a, SplitComplex):
            return SplitComplex(Fraction(a.re), Fraction(a.im))
        if isinstance(a, OrdinaryComplex):
            return OrdinaryComplex(Fraction(a.re), Fraction(a.im))
        return Fraction(a)
    return m.map_entries(f)
