"""Picard lattices of blow-ups with involution actions.

A blow-up lattice has basis (H, E_1, ..., E_n), diagonal intersection form
(+1, -1, ..., -1) and canonical class K = -3H + sum E_i, so K^2 = 9 - n.
The quadric P^1 x P^1 is carried as a separate rank-2 model with Gram matrix
[[0,1],[1,0]] and K = (-2,-2); it is recognized by K being divisible by 2.

Involutions are integer matrices M acting on column vectors, validated to
preserve the form, square to the identity and fix K. The minimality test is
the lattice translation of the blow-down criterion: every class E with
E^2 = E.K = -1 must satisfy ME != E and E.(ME) >= 1. On a Del Pezzo lattice
(n <= 8) every such class is the class of an actual exceptional curve, so
the test decides minimality of the geometric pair; that is this module's
validity domain.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import ValidationError
from .exactpoly import kernel_basis

LABEL_FIBRATION = "(i)/(ii) fibration"
LABEL_PLANE = "(iii)"
LABEL_QUADRIC = "(iv)"
LABEL_GEISER = "(v)"
LABEL_BERTINI = "(vi)"
LABEL_NON_MINIMAL = "non-minimal"


@dataclass(frozen=True)
class PicLattice:
    gram: tuple
    k: tuple
    kind: str              # "blowup" | "quadric"
    n: int | None = None   # number of blown-up points for blow-up lattices

    @property
    def rank(self) -> int:
        return len(self.k)

    def dot(self, u, v) -> int:
        g = self.gram
        return sum(u[i] * g[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))

    def k_square(self) -> int:
        return self.dot(self.k, self.k)

    def k_divisible_by_two(self) -> bool:
        return all(c % 2 == 0 for c in self.k)


def make_lattice(n: int) -> PicLattice:
    """Blow-up lattice of the plane at n points; K^2 = 9 - n."""
    if n < 0:
        raise ValidationError("bad rank", "n must be >= 0")
    gram = tuple(
        tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n + 1))
        for i in range(n + 1)
    )
    k = tuple([-3] + [1] * n)
    return PicLattice(gram, k, "blowup", n)


def quadric_lattice() -> PicLattice:
    """Rank-2 hyperbolic model of the quadric surface; K = (-2,-2), K^2 = 8."""
    return PicLattice(((0, 1), (1, 0)), (-2, -2), "quadric")


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _mat_vec(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


def _identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _transpose(m):
    n = len(m)
    return tuple(tuple(m[j][i] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class LatticeInvolution:
    """Integer matrix acting as an involutive isometry fixing K."""

    lattice: PicLattice
    matrix: tuple

    def __post_init__(self):
        m = self.matrix
        lat = self.lattice
        r = lat.rank
        if len(m) != r or any(len(row) != r for row in m):
            raise ValidationError("bad matrix", f"expected a {r}x{r} matrix")
        if any(not isinstance(v, int) for row in m for v in row):
            raise ValidationError("bad matrix", "entries must be integers")
        g = lat.gram
        if _mat_mul(_transpose(m), _mat_mul(g, m)) != g:
            raise ValidationError("not an isometry", "M^T G M != G")
        if _mat_mul(m, m) != _identity(r):
            raise ValidationError("not an involution", "M^2 != I")
        if _mat_vec(m, lat.k) != lat.k:
            raise ValidationError("K not fixed", "M K != K")

    def apply(self, v):
        return _mat_vec(self.matrix, v)


def reflection_through(lat: PicLattice, alpha) -> tuple:
    """Matrix of x -> x - 2 (a.x)/(a.a) a; integral when a.a is 1 or 2.

    This is an involutive isometry but fixes K only when K is orthogonal to
    alpha; composing with global negation when K is proportional to alpha
    yields the involution used for the two Del Pezzo cases.
    """
    alpha = tuple(alpha)
    a2 = lat.dot(alpha, alpha)
    if a2 not in (1, 2):
        raise ValidationError("bad reflection", f"alpha.alpha = {a2}, must be 1 or 2")
    r = lat.rank
    cols = []
    for j in range(r):
        e = tuple(1 if i == j else 0 for i in range(r))
        ax = lat.dot(alpha, e)
        num = 2 * ax
        if num % a2 != 0:
            raise ValidationError("bad reflection", "reflection is not integral")
        coef = num // a2
        cols.append(tuple(e[i] - coef * alpha[i] for i in range(r)))
    return tuple(tuple(cols[j][i] for j in range(r)) for i in range(r))


def anti_reflection_in_k(lat: PicLattice) -> LatticeInvolution:
    """x -> -x + 2 (K.x)/K^2 K, the involution acting as -1 on K's orthogonal.

    Integral exactly in the Del Pezzo degree 1 and 2 cases (K^2 in {1, 2});
    its fixed sublattice is the integer span of K, of rank 1.
    """
    k2 = lat.k_square()
    if k2 not in (1, 2):
        raise ValidationError("bad degree", f"K^2 = {k2}, must be 1 or 2")
    refl = reflection_through(lat, lat.k)
    m = tuple(tuple(-refl[i][j] for j in range(lat.rank)) for i in range(lat.rank))
    return LatticeInvolution(lat, m)


def swap_involution(lat: PicLattice) -> LatticeInvolution:
    """Factor swap on the quadric model."""
    if lat.kind != "quadric":
        raise ValidationError("bad lattice", "swap lives on the quadric model")
    return LatticeInvolution(lat, ((0, 1), (1, 0)))


def fixed_rank(inv: LatticeInvolution) -> int:
    """Rank of the fixed sublattice: kernel of M - I over the rationals."""
    m = inv.matrix
    r = inv.lattice.rank
    rows = [[m[i][j] - (1 if i == j else 0) for j in range(r)] for i in range(r)]
    return len(kernel_basis(rows))


def fixed_sublattice_basis(inv: LatticeInvolution):
    m = inv.matrix
    r = inv.lattice.rank
    rows = [[m[i][j] - (1 if i == j else 0) for j in range(r)] for i in range(r)]
    return [tuple(v) for v in kernel_basis(rows)]


# ---------------------------------------------------------------------------
# exceptional classes
# ---------------------------------------------------------------------------

def _degree_bounds(n: int, widen: int = 0):
    """Integer range of the H-degree a: Cauchy-Schwarz against the E-part
    gives (1-3a)^2 <= n (a^2+1); scan a safe window and keep what satisfies
    it, then widen by request (the widened window is the oracle's knob)."""
    lo, hi = 0, 0
    for a in range(-12, 25):
        if (1 - 3 * a) ** 2 <= n * (a * a + 1):
            lo = min(lo, a)
            hi = max(hi, a)
    return lo - widen, hi + widen


def _fill_classes(a: int, n: int, rem_sum: int, rem_sq: int, prefix, out):
    """Enumerate integer tails c with sum(c) = rem_sum, sum(c^2) = rem_sq."""
    slots = n - len(prefix)
    if slots == 0:
        if rem_sum == 0 and rem_sq == 0:
            out.append((a,) + tuple(prefix))
        return
    # Cauchy-Schwarz feasibility for the remaining block
    if rem_sq < 0 or rem_sum * rem_sum > slots * rem_sq:
        return
    top = isqrt(rem_sq)
    for c in range(-top, top + 1):
        _fill_classes(a, n, rem_sum - c, rem_sq - c * c, prefix + [c], out)


def exceptional_classes(lat: PicLattice, widen: int = 0):
    """All classes with E^2 = -1 and E.K = -1, deterministically ordered.

    Exhaustive search: for each H-degree a in the proven window, integer
    vectors c with sum c_i = 1 - 3a and sum c_i^2 = a^2 + 1. Only blow-up
    lattices with n <= 8 are supported (beyond that the list is infinite).
    """
    if lat.kind != "blowup":
        raise ValidationError("bad lattice", "exceptional classes need a blow-up lattice")
    n = lat.n
    if n is None or n > 8:
        raise ValidationError("unsupported rank", "n must be <= 8")
    if n == 0:
        return []
    out: list = []
    lo, hi = _degree_bounds(n, widen)
    for a in range(lo, hi + 1):
        _fill_classes(a, n, 1 - 3 * a, a * a + 1, [], out)
    out.sort()
    return out


def exceptional_classes_bruteforce(lat: PicLattice, widen: int = 2):
    """Independent oracle: naive box search over a widened degree window.

    Pruning uses only elementary box bounds (each |c| <= isqrt(rem_sq),
    |rem_sum| <= slots * isqrt(rem_sq)), strictly weaker than the main
    enumeration's Cauchy-Schwarz cut, so the two searches are independent;
    the widened window certifies that the derived degree bounds lose
    nothing."""
    if lat.kind != "blowup" or lat.n is None or lat.n > 8:
        raise ValidationError("unsupported rank", "n must be <= 8 on a blow-up lattice")
    n = lat.n
    if n == 0:
        return []
    lo, hi = _degree_bounds(n, widen)
    out = []

    def rec(a, target_sum, target_sq, slots, prefix):
        if slots == 0:
            if target_sum == 0 and target_sq == 0:
                out.append((a,) + tuple(prefix))
            return
        if target_sq < 0:
            return
        top = isqrt(target_sq)
        if abs(target_sum) > slots * top:
            return
        for c in range(-top, top + 1):
            rec(a, target_sum - c, target_sq - c * c, slots - 1, prefix + [c])

    for a in range(lo, hi + 1):
        rec(a, 1 - 3 * a, a * a + 1, n, [])
    out.sort()
    return out


@dataclass(frozen=True)
class MinimalityResult:
    minimal: bool
    witness: tuple | None = None
    image: tuple | None = None
    failure: str | None = None     # "fixed" | "disjoint"
    product: int | None = None

    def __bool__(self):
        return self.minimal


def is_minimal(lat: PicLattice, inv: LatticeInvolution) -> MinimalityResult:
    """Blow-down criterion on classes: minimal iff every exceptional class E
    has ME != E and E.(ME) >= 1; otherwise the witness and the failed
    condition are returned."""
    if lat.kind == "quadric":
        return MinimalityResult(True)
    for e in exceptional_classes(lat):
        me = inv.apply(e)
        if me == e:
            return MinimalityResult(False, e, me, "fixed", lat.dot(e, me))
        prod = lat.dot(e, me)
        if prod <= 0:
            return MinimalityResult(False, e, me, "disjoint", prod)
    return MinimalityResult(True)


@dataclass(frozen=True)
class PairClassification:
    label: str
    minimal: MinimalityResult
    fixed_rank: int
    note: str = ""

    def as_dict(self):
        d = {"label": self.label, "fixed_rank": self.fixed_rank, "minimal": self.minimal.minimal}
        if self.minimal.witness is not None:
            d["witness"] = list(self.minimal.witness)
            d["witness_image"] = list(self.minimal.image)
            d["failure"] = self.minimal.failure
        if self.note:
            d["note"] = self.note
        return d


def classify_pair(lat: PicLattice, inv: LatticeInvolution) -> PairClassification:
    """Structure label of a minimal pair, or non-minimal with witness.

    Fixed rank 1 splits by the lattice: the plane (n = 0), the quadric swap,
    Geiser (K^2 = 2) and Bertini (K^2 = 1). Fixed rank >= 2 is the
    conic-bundle range; whether the base involution is trivial is not a
    lattice question, so the two fibration cases stay merged.
    """
    mres = is_minimal(lat, inv)
    if not mres.minimal:
        return PairClassification(LABEL_NON_MINIMAL, mres, fixed_rank(inv))
    r = fixed_rank(inv)
    if r == 1:
        if lat.kind == "quadric":
            return PairClassification(LABEL_QUADRIC, mres, r)
        if lat.n == 0:
            return PairClassification(LABEL_PLANE, mres, r)
        k2 = lat.k_square()
        if k2 == 2:
            return PairClassification(LABEL_GEISER, mres, r)
        if k2 == 1:
            return PairClassification(LABEL_BERTINI, mres, r)
        raise ValidationError(
            "inconsistent input",
            f"fixed rank 1 with K^2 = {k2} has no integral involution",
        )
    return PairClassification(
        LABEL_FIBRATION, mres, r,
        note="base involution triviality is not decidable at lattice level",
    )


# ---------------------------------------------------------------------------
# conic-bundle bookkeeping
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConicBundleModel:
    """Bookkeeping for a ruled model: Hirzebruch index n (the negative
    section has self-intersection -n), singular fibre count s, and the
    contact orders between the fixed curve and the negative section."""

    n: int
    singular_fibres: int
    contact_orders: tuple = ()

    def __post_init__(self):
        if self.n < 0 or self.singular_fibres < 0:
            raise ValidationError("bad model", "n and s must be >= 0")
        if any(c < 1 for c in self.contact_orders):
            raise ValidationError("bad model", "contact orders must be >= 1")

    def negative_section_square(self) -> int:
        return -self.n


def elementary_transformation(
    model: ConicBundleModel, on_negative_section: bool, contact_index: int | None = None
) -> ConicBundleModel:
    """Blow up a fibre point, blow down the fibre's proper transform.

    The index moves to n-1 when the center is off the negative section and
    to n+1 when it is on it; at n = 0 there is no negative section and the
    index always increments. A transformation at a recorded contact point
    lowers that contact order by 1 (orders below 1 are not representable:
    order 1 means transverse)."""
    if model.n == 0:
        new_n = 1
    elif on_negative_section:
        new_n = model.n + 1
    else:
        new_n = model.n - 1
    contacts = list(model.contact_orders)
    if contact_index is not None:
        if not 0 <= contact_index < len(contacts):
            raise ValidationError("bad contact", "contact index out of range")
        if contacts[contact_index] <= 1:
            raise ValidationError("bad contact", "contact is already transverse")
        contacts[contact_index] -= 1
    return ConicBundleModel(new_n, model.singular_fibres, tuple(contacts))
