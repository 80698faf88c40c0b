"""Constructors and evaluators for the three involution families.

* de Jonquieres of degree d: harmonic conjugation on the lines through a
  center p with respect to a degree-d curve having an ordinary (d-2)-fold
  point at p and no other singularity. In the frame where p = (0:1:0) and
  C = A y^2 + B y + C_d (A, B, C_d binary in x, z), the map is the closed
  form ( x(2Ay+B) : -(By+2C_d) : z(2Ay+B) ), conjugated back.
* Geiser: x goes to the ninth base point of the pencil of cubics through a
  fixed general 7-point set and x.
* Bertini: x goes to the residual common point of the net of sextics through
  a fixed general 8-point set and x, singular along the 8 points.

Geiser and Bertini are exact per-point evaluators (resultant elimination
with exact linear-factor bookkeeping); an optional interpolation recovers
the degree-8 Geiser map in closed form. All pseudo-random choices come from
the package's seeded SplitMix64 streams.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd as igcd

from .errors import ExtractionError, IndeterminacyError, ValidationError
from .exactpoly import (
    BForm,
    HPoly,
    adjugate3,
    bform_discriminant,
    bform_gcd,
    bform_to_hpoly,
    det3,
    hpoly_to_bform,
    is_perfect_square,
    is_squarefree,
    kernel_basis,
    resultant,
)
from . import fixedcurve
from .projmaps import ProjPoint, RationalMap, collinear, is_involution
from .rng import SplitMix64, unimodular_matrix

MAX_COORDINATE_RETRIES = 24


# ---------------------------------------------------------------------------
# frames
# ---------------------------------------------------------------------------

def frame_moving_to_center(p: ProjPoint):
    """Deterministic integer frame (M, Minv) with M @ p proportional to
    (0,1,0) and M @ Minv = det * I. Minv has p as its middle column and the
    two standard basis vectors away from p's pivot as the others."""
    pivot = next(i for i, c in enumerate(p.coords) if c != 0)
    others = [i for i in range(3) if i != pivot]
    cols = [None, list(p.coords), None]
    cols[0] = [1 if i == others[0] else 0 for i in range(3)]
    cols[2] = [1 if i == others[1] else 0 for i in range(3)]
    minv = tuple(tuple(cols[j][i] for j in range(3)) for i in range(3))
    m = adjugate3(minv)
    return m, minv


def _invert_unimodular(m):
    d = det3(m)
    adj = adjugate3(m)
    if d == 1:
        return adj
    if d == -1:
        return tuple(tuple(-v for v in row) for row in adj)
    raise ValueError("matrix is not unimodular")


# ---------------------------------------------------------------------------
# de Jonquieres data and validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ValidationReport:
    checks: tuple
    trusted: bool

    def as_dict(self):
        return {"checks": list(self.checks), "trusted": self.trusted}


@dataclass(frozen=True)
class DJData:
    """Normal-form data of a validated de Jonquieres instance."""

    d: int
    A: HPoly
    B: HPoly
    Cd: HPoly
    frame: tuple
    center: ProjPoint
    curve: HPoly
    report: ValidationReport

    def discriminant(self) -> BForm:
        a = hpoly_to_bform(self.A, 0, 2)
        b = hpoly_to_bform(self.B, 0, 2) if not self.B.is_zero() else BForm.zero(self.d - 1)
        c = hpoly_to_bform(self.Cd, 0, 2)
        return bform_discriminant(a, b, c)


def _dj_decompose(c_norm: HPoly, d: int):
    by_y = c_norm.coeffs_by_var(1)
    top = len(by_y) - 1
    if top > 2:
        raise ValidationError(
            "multiplicity mismatch",
            f"multiplicity at the center is {d - top}, expected {d - 2}",
        )
    if top < 2 or by_y[2].is_zero():
        raise ValidationError(
            "multiplicity mismatch",
            f"multiplicity at the center exceeds {d - 2}",
        )
    a, b, cd = by_y[2], by_y[1], by_y[0]
    for part, name in ((a, "A"), (b, "B"), (cd, "Cd")):
        if part.uses_var(1):
            raise ValueError(f"internal: {name} still involves y")
    return a, b, cd


def _singular_locus_clear(c_norm: HPoly, a: HPoly, b: HPoly, delta: BForm) -> bool:
    """Iterated-resultant check that the curve is smooth away from the center.

    Resultants in y of C_y against C_x and C_z give binary forms whose common
    roots with the discriminant locate singular candidates off the center;
    roots coming from the common vanishing of A and B are provably spurious
    (a singular point away from the center never projects into A = 0) and
    are divided out before deciding.
    """
    cy = c_norm.partial(1)
    gs = [bform_to_hpoly(delta, 0, 2)]
    for var in (0, 2):
        cv = c_norm.partial(var)
        if cv.is_zero():
            continue
        gs.append(resultant(cy, cv, 1))
    g = hpoly_to_bform(gs[0], 0, 2)
    for other in gs[1:]:
        if g.degree == 0:
            break
        g = bform_gcd(g, hpoly_to_bform(other, 0, 2))
    if g.degree == 0:
        return True
    spurious = bform_gcd(hpoly_to_bform(a, 0, 2),
                         hpoly_to_bform(b, 0, 2) if not b.is_zero() else BForm.zero(0))
    while g.degree > 0:
        common = bform_gcd(g, spurious) if spurious.degree > 0 else BForm(0, [1])
        if common.degree == 0:
            break
        g = g.divexact(common)
    return g.degree == 0


def validate_dj(curve: HPoly, p: ProjPoint, trusted: bool = False) -> DJData:
    """Validate a (curve, center) pair as de Jonquieres data.

    Checks, in order: degree >= 2; multiplicity at p exactly d-2 (A != 0 and
    no higher y-power in the normal frame); ordinarity (A squarefree); no
    line of the curve through p (gcd(A,B,Cd) constant); discriminant nonzero
    and squarefree; unless trusted, the iterated-resultant singular-locus
    solve confirming p is the only singular point.
    """
    curve = curve.canonical()
    d = curve.degree
    if d < 2 or curve.is_zero():
        raise ValidationError("bad degree", "the curve must have degree >= 2")
    m, minv = frame_moving_to_center(p)
    c_norm = curve.apply_matrix(minv).canonical()
    a, b, cd = _dj_decompose(c_norm, d)
    checks = ["multiplicity d-2 at center"]

    a_form = hpoly_to_bform(a, 0, 2)
    if not is_squarefree(a_form):
        raise ValidationError(
            "non-ordinary", "the tangent cone at the center has repeated lines"
        )
    checks.append("ordinary tangent cone (A squarefree)")

    parts = [a_form]
    if not b.is_zero():
        parts.append(hpoly_to_bform(b, 0, 2))
    if not cd.is_zero():
        parts.append(hpoly_to_bform(cd, 0, 2))
    g = parts[0]
    for q in parts[1:]:
        if g.degree == 0:
            break
        g = bform_gcd(g, q)
    if g.degree > 0:
        raise ValidationError(
            "line through center", "the curve contains a line through the center"
        )
    checks.append("no line through the center (gcd(A,B,Cd) = 1)")

    delta = bform_discriminant(
        a_form,
        hpoly_to_bform(b, 0, 2) if not b.is_zero() else BForm.zero(d - 1),
        hpoly_to_bform(cd, 0, 2) if not cd.is_zero() else BForm.zero(d),
    )
    if delta.is_zero():
        raise ValidationError("degenerate", "zero discriminant")
    if not is_squarefree(delta):
        raise ValidationError(
            "extra singularities", "discriminant is not squarefree"
        )
    checks.append(f"discriminant squarefree of degree {delta.degree}")

    if not trusted:
        if not _singular_locus_clear(c_norm, a, b, delta):
            raise ValidationError(
                "extra singularities", "singular point found away from the center"
            )
        checks.append("singular-locus solve: center is the only singular point")
    report = ValidationReport(tuple(checks), trusted)
    return DJData(d, a, b, cd, (m, minv), p, curve, report)


# ---------------------------------------------------------------------------
# involution records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InvolutionRecord:
    """A verified involution plus its construction metadata."""

    kind: str                       # "dj" | "geiser" | "bertini"
    degree: int                     # map degree: d, 8 or 17
    evaluator: object               # callable ProjPoint -> ProjPoint | None
    invariant: fixedcurve.FixedCurveInvariant
    map: RationalMap | None = None
    fixed_curve: HPoly | None = None
    center: ProjPoint | None = None
    config: "PointConfig | None" = None
    dj_data: DJData | None = None
    seed: int = 0
    validation: ValidationReport | None = None

    @property
    def label(self) -> str:
        return self.invariant.source

    def eval(self, pt: ProjPoint):
        return self.evaluator(pt)


def conjugated_map(data: DJData) -> RationalMap:
    """Closed-form map of a validated de Jonquieres instance."""
    y = HPoly.variable(1)
    x = HPoly.variable(0)
    z = HPoly.variable(2)
    u = (data.A * y) * 2 + data.B
    f1 = x * u
    f2 = -((data.B * y) + data.Cd * 2)
    f3 = z * u
    m, minv = data.frame
    inner = [f.apply_matrix(m) for f in (f1, f2, f3)]
    outer = [
        inner[0] * minv[i][0] + inner[1] * minv[i][1] + inner[2] * minv[i][2]
        for i in range(3)
    ]
    sigma = RationalMap(*outer)
    if sigma.degree != data.d:
        raise ValidationError("internal", "constructed map has the wrong degree")
    return sigma


def dj_involution(curve: HPoly, p: ProjPoint, trusted: bool = False) -> InvolutionRecord:
    """De Jonquieres involution preserving the lines through p and fixing the
    given curve pointwise."""
    data = validate_dj(curve, p, trusted=trusted)
    sigma = conjugated_map(data)
    record = InvolutionRecord(
        kind="dj",
        degree=data.d,
        evaluator=sigma.eval,
        invariant=fixedcurve.invariant_for_kind("dj", data.d),
        map=sigma,
        fixed_curve=data.curve,
        center=p,
        dj_data=data,
        validation=data.report,
    )
    return record


def dj_from_conic(q: HPoly, p: ProjPoint) -> InvolutionRecord:
    """Degree-2 specialization: harmonic conjugation with respect to a smooth
    conic, from a center off the conic."""
    q = q.canonical()
    if q.degree != 2:
        raise ValidationError("bad degree", "expected a conic")
    if q.eval(p.coords) == 0:
        raise ValidationError("center on conic", "the center must not lie on the conic")
    return dj_involution(q, p)


def singular_fibre_count(data: DJData) -> int:
    """Number of singular fibres of the conic-bundle model: the distinct
    roots of the discriminant, which is squarefree of degree 2d-2 for a
    validated instance, so the count is 2g+2 with g = d-2."""
    delta = data.discriminant()
    if not is_squarefree(delta):
        raise ValidationError("extra singularities", "discriminant is not squarefree")
    return delta.degree


# ---------------------------------------------------------------------------
# point configurations
# ---------------------------------------------------------------------------

def _monomials(degree: int):
    out = [
        (i, j, degree - i - j)
        for i in range(degree, -1, -1)
        for j in range(degree - i, -1, -1)
    ]
    return sorted(out, reverse=True)


def _vector_to_poly(vec, degree: int) -> HPoly:
    monos = _monomials(degree)
    return HPoly(degree, {m: c for m, c in zip(monos, vec) if c != 0}).canonical()


@dataclass(frozen=True)
class PointConfig:
    points: tuple
    kind: str            # "geiser" | "bertini"
    report: dict = field(compare=False, default_factory=dict)

    def __contains__(self, pt: ProjPoint):
        return pt in self.points


def make_point_config(points, kind: str) -> PointConfig:
    """Validate a 7-point (Geiser) or 8-point (Bertini) configuration.

    Rank checks only: pairwise distinct, no 3 collinear, and the expected
    linear-system dimension (3 cubics, resp. 4 sextics). Finer classical
    degeneracies surface as dimension or extraction failures downstream.
    """
    expected = {"geiser": 7, "bertini": 8}[kind]
    pts = tuple(points)
    if len(pts) != expected:
        raise ValidationError("bad count", f"{kind} needs {expected} points, got {len(pts)}")
    if len(set(pts)) != expected:
        raise ValidationError("degenerate configuration", "points are not pairwise distinct")
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if collinear(pts[i], pts[j], pts[k]):
                    raise ValidationError(
                        "degenerate configuration",
                        f"points {i}, {j}, {k} are collinear",
                    )
    report = {"pairwise_distinct": True, "no_three_collinear": True}
    if kind == "geiser":
        basis = cubic_system(pts)
        report["system_dimension"] = len(basis)
    else:
        basis = sextic_system(pts)
        report["system_dimension"] = len(basis)
    return PointConfig(pts, kind, report)


def cubic_system(points) -> list:
    """Deterministic basis of the net of cubics through 7 points."""
    pts = tuple(points)
    if len(set(pts)) != len(pts):
        raise ValidationError("degenerate configuration", "repeated point")
    monos = _monomials(3)
    rows = [[_mono_eval(mn, p) for mn in monos] for p in pts]
    kern = kernel_basis(rows)
    if len(pts) == 7 and len(kern) != 3:
        raise ValidationError(
            "degenerate configuration",
            f"cubics through the points form a system of dimension {len(kern)}, expected 3",
        )
    return [_vector_to_poly(v, 3) for v in kern]


def sextic_system(points) -> list:
    """Deterministic basis of the sextics singular at all 8 points.

    Three vanishing partials per point (24 conditions on 28 coefficients;
    the values vanish automatically by the Euler relation)."""
    pts = tuple(points)
    if len(set(pts)) != len(pts):
        raise ValidationError("degenerate configuration", "repeated point")
    monos = _monomials(6)
    rows = []
    for p in pts:
        for var in range(3):
            rows.append([_mono_partial_eval(mn, var, p) for mn in monos])
    kern = kernel_basis(rows)
    if len(pts) == 8 and len(kern) != 4:
        raise ValidationError(
            "degenerate configuration",
            f"sextics singular along the points form a system of dimension {len(kern)}, expected 4",
        )
    return [_vector_to_poly(v, 6) for v in kern]


def octic_triple_system(points) -> list:
    """Basis of the octics with points of multiplicity >= 3 at all 7 points
    (all six second partials vanish; lower orders follow by Euler)."""
    monos = _monomials(8)
    rows = []
    for p in points:
        for v1 in range(3):
            for v2 in range(v1, 3):
                rows.append([_mono_partial2_eval(mn, v1, v2, p) for mn in monos])
    kern = kernel_basis(rows)
    if len(kern) != 3:
        raise ValidationError(
            "degenerate configuration",
            f"triple-point octics form a system of dimension {len(kern)}, expected 3",
        )
    return [_vector_to_poly(v, 8) for v in kern]


def _mono_eval(mn, p: ProjPoint):
    a, b, c = p.coords
    return a ** mn[0] * b ** mn[1] * c ** mn[2]


def _mono_partial_eval(mn, var, p: ProjPoint):
    e = list(mn)
    if e[var] == 0:
        return 0
    coef = e[var]
    e[var] -= 1
    a, b, c = p.coords
    return coef * a ** e[0] * b ** e[1] * c ** e[2]


def _mono_partial2_eval(mn, v1, v2, p: ProjPoint):
    e = list(mn)
    if e[v1] == 0:
        return 0
    coef = e[v1]
    e[v1] -= 1
    if e[v2] == 0:
        return 0
    coef *= e[v2]
    e[v2] -= 1
    a, b, c = p.coords
    return coef * a ** e[0] * b ** e[1] * c ** e[2]


# ---------------------------------------------------------------------------
# shared elimination machinery for Geiser and Bertini
# ---------------------------------------------------------------------------

def _transform_setup(attempt: int, stream: SplitMix64):
    """Coordinate change for one retry attempt: identity first, then seeded
    unimodular matrices (deterministic draw order)."""
    if attempt == 0:
        ident = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
        return ident, ident
    m = unimodular_matrix(stream)
    return m, _invert_unimodular(m)


def _projections_ok(points):
    """All (x, y)-projections defined and pairwise distinct."""
    pairs = []
    for p in points:
        a, b = p.coords[0], p.coords[1]
        if a == 0 and b == 0:
            return None
        pairs.append((a, b))
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            if pairs[i][0] * pairs[j][1] - pairs[i][1] * pairs[j][0] == 0:
                return None
    return pairs


def _line_form(a: int, b: int) -> BForm:
    """Linear binary form vanishing at the projection (a : b)."""
    return BForm(1, [b, -a])


def _uni_gcd(f, g):
    """Monic gcd of univariate polynomials given as ascending Fraction lists."""
    def trim(c):
        c = [Fraction(v) for v in c]
        while c and c[-1] == 0:
            c.pop()
        return c

    f, g = trim(f), trim(g)
    while g:
        # remainder of f mod g
        while len(f) >= len(g) and f:
            coef = f[-1] / g[-1]
            shift = len(f) - len(g)
            for i, gv in enumerate(g):
                f[shift + i] -= coef * gv
            f = trim(f)
        f, g = g, f
    if not f:
        return []
    lead = f[-1]
    return [v / lead for v in f]


def _rational_roots_lowdeg(coeffs):
    """Roots of an ascending-coefficient polynomial of degree <= 2; returns
    None when degree > 2 or a quadratic has irrational roots."""
    c = [Fraction(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    if not c:
        return None
    deg = len(c) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [-c[0] / c[1]]
    if deg == 2:
        a, b, cc = c[2], c[1], c[0]
        disc = b * b - 4 * a * cc
        num, den = disc.numerator, disc.denominator
        if num < 0:
            return []
        # exact square test of num/den
        if not (is_perfect_square(num) and is_perfect_square(den)):
            return None
        from math import isqrt

        root = Fraction(isqrt(num), isqrt(den))
        return sorted({(-b + root) / (2 * a), (-b - root) / (2 * a)})
    return None


def _points_above(projection, specialized, exclude, back_matrix):
    """Rational common zeros of the specialized generators above one
    (x:y)-projection, mapped back through the coordinate change and filtered
    against the excluded set. Returns None to request a retry (roots of
    degree > 2 or irrational)."""
    alpha, beta = projection
    g = specialized[0]
    for other in specialized[1:]:
        g = _uni_gcd(g, other)
        if len(g) == 1:
            return []
    roots = _rational_roots_lowdeg(g)
    if roots is None:
        return None
    out = []
    for zv in roots:
        pt = ProjPoint(alpha, beta, zv).apply_matrix(back_matrix)
        if pt not in exclude:
            out.append(pt)
    # dedupe, preserving deterministic order
    seen = []
    for pt in out:
        if pt not in seen:
            seen.append(pt)
    return seen


@dataclass(frozen=True)
class GeiserTrace:
    attempts: int
    resultant_degree: int
    known_linear_factors: int
    residual_degree: int


@dataclass(frozen=True)
class BertiniTrace:
    attempts: int
    resultant_degree: int
    config_factor_degree: int
    x_factor_degree: int
    residual_degree: int


class GeiserInvolution:
    """Geiser involution attached to 7 points in general position."""

    def __init__(self, config: PointConfig, seed: int = 0):
        if config.kind != "geiser":
            raise ValidationError("bad config", "expected a 7-point configuration")
        self.config = config
        self.seed = seed

    @cached_property
    def net(self):
        return cubic_system(self.config.points)

    @cached_property
    def fixed_sextic(self) -> HPoly:
        """Jacobian of the net: determinant of the 3x3 matrix of partials."""
        g1, g2, g3 = self.net
        rows = [[g.partial(v) for v in range(3)] for g in (g1, g2, g3)]
        j = (
            rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
        )
        if j.is_zero():
            raise ValidationError("degenerate configuration", "Jacobian sextic vanishes")
        return j.canonical()

    def _pencil_through(self, x: ProjPoint):
        vals = [g.eval(x.coords) for g in self.net]
        kern = kernel_basis([vals])
        if len(kern) != 2:
            raise ValidationError("pencil dimension wrong", f"net does not restrict to a pencil at {x}")
        gens = []
        for combo in kern:
            f = HPoly.zero(3)
            for c, g in zip(combo, self.net):
                if c:
                    f = f + g * c
            gens.append(f.canonical())
        return gens

    def eval(self, x: ProjPoint) -> ProjPoint:
        return self.eval_detail(x)[0]

    def eval_detail(self, x: ProjPoint):
        """Ninth base point of the pencil of cubics through the 7 points and
        x, with the factor bookkeeping of the computation."""
        if x in self.config.points:
            raise IndeterminacyError(f"{x} is a base point of the involution")
        f, h = self._pencil_through(x)
        known = list(self.config.points) + [x]
        stream = SplitMix64(self.seed)
        for attempt in range(MAX_COORDINATE_RETRIES):
            m, minv = _transform_setup(attempt, stream)
            moved = [p.apply_matrix(m) for p in known]
            pairs = _projections_ok(moved)
            if pairs is None:
                continue
            fm = f.apply_matrix(minv)
            hm = h.apply_matrix(minv)
            r = resultant(fm, hm, 2)
            if r.is_zero():
                if bform_gcd_nonconstant(f, h):
                    raise ValidationError(
                        "pencil dimension wrong",
                        "the pencil has a fixed component at this point",
                    )
                continue
            res = hpoly_to_bform(r, 0, 1)
            if res.degree != 9:
                continue
            try:
                for a, b in pairs:
                    res = res.divexact(_line_form(a, b))
            except ValidationError:
                continue
            if res.degree != 1:
                continue
            alpha, beta = -res.coeffs[1], res.coeffs[0]
            g = igcd(abs(alpha), abs(beta))
            alpha, beta = alpha // g, beta // g
            spec = [fm.specialize(2, (alpha, beta)), hm.specialize(2, (alpha, beta))]
            found = _points_above((alpha, beta), spec, set(self.config.points), minv)
            if found is None or len(found) != 1:
                continue
            image = found[0]
            if f.eval(image.coords) != 0 or h.eval(image.coords) != 0:
                raise ValidationError("internal", "extracted point is not on the pencil")
            trace = GeiserTrace(attempt + 1, 9, 8, 1)
            return image, trace
        raise ExtractionError(
            f"residual-point extraction failed after {MAX_COORDINATE_RETRIES} coordinate retries"
        )

    @cached_property
    def interpolated_map(self) -> RationalMap:
        """Closed-form degree-8 map fitted from evaluated samples.

        The components are found inside the 3-dimensional space of octics
        triply vanishing at the base points, so the fit has 9 unknowns; the
        result is verified against the evaluator on 100 fresh seeded samples.
        """
        octics = octic_triple_system(self.config.points)
        stream = SplitMix64(self.seed ^ 0x6A09E667F3BCC908)
        fit_samples = self._draw_samples(stream, 6)
        rows = []
        for x, y in fit_samples:
            ovals = [o.eval(x.coords) for o in octics]
            yv = y.coords
            for p, q in ((0, 1), (0, 2), (1, 2)):
                row = [Fraction(0)] * 9
                for j in range(3):
                    row[3 * p + j] += ovals[j] * yv[q]
                    row[3 * q + j] -= ovals[j] * yv[p]
                rows.append(row)
        kern = kernel_basis(rows)
        if len(kern) != 1:
            raise ValidationError("interpolation failed", f"fit space has dimension {len(kern)}")
        coeffs = kern[0]
        comps = []
        for i in range(3):
            f = HPoly.zero(8)
            for j in range(3):
                if coeffs[3 * i + j]:
                    f = f + octics[j] * coeffs[3 * i + j]
            comps.append(f)
        sigma = RationalMap(*comps)
        if sigma.degree != 8:
            raise ValidationError("interpolation failed", "fitted map does not have degree 8")
        for x, y in self._draw_samples(stream, 100):
            if sigma.eval(x) != y:
                raise ValidationError("interpolation failed", "fitted map disagrees with the evaluator")
        return sigma

    def _draw_samples(self, stream: SplitMix64, count: int):
        out = []
        guard = 0
        while len(out) < count:
            guard += 1
            if guard > 200 * count:
                raise ValidationError("sampling failed", "could not draw enough sample points")
            coords = tuple(stream.next_int(-9, 9) for _ in range(3))
            if coords == (0, 0, 0):
                continue
            x = ProjPoint(*coords)
            if x in self.config.points:
                continue
            try:
                y = self.eval(x)
            except (ValidationError, ExtractionError):
                continue
            out.append((x, y))
        return out

    def record(self, interpolate: bool = False) -> InvolutionRecord:
        sigma = self.interpolated_map if interpolate else None
        return InvolutionRecord(
            kind="geiser",
            degree=8,
            evaluator=self.eval,
            invariant=fixedcurve.invariant_for_kind("geiser"),
            map=sigma,
            fixed_curve=self.fixed_sextic,
            config=self.config,
            seed=self.seed,
        )


def bform_gcd_nonconstant(f: HPoly, h: HPoly) -> bool:
    from .exactpoly import hpoly_gcd

    return hpoly_gcd(f, h).degree > 0


class BertiniInvolution:
    """Bertini involution attached to 8 points in general position."""

    def __init__(self, config: PointConfig, seed: int = 0):
        if config.kind != "bertini":
            raise ValidationError("bad config", "expected an 8-point configuration")
        self.config = config
        self.seed = seed

    @cached_property
    def space(self):
        return sextic_system(self.config.points)

    def _net_through(self, x: ProjPoint):
        vals = [g.eval(x.coords) for g in self.space]
        kern = kernel_basis([vals])
        if len(kern) != 3:
            raise ValidationError("net dimension wrong", f"sextic space does not restrict to a net at {x}")
        gens = []
        for combo in kern:
            f = HPoly.zero(6)
            for c, g in zip(combo, self.space):
                if c:
                    f = f + g * c
            gens.append(f.canonical())
        return gens

    def eval(self, x: ProjPoint) -> ProjPoint:
        return self.eval_detail(x)[0]

    def eval_detail(self, x: ProjPoint):
        """Residual common point of the net of sextics through the 8 points
        and x, singular along the 8 points."""
        if x in self.config.points:
            raise IndeterminacyError(f"{x} is a base point of the involution")
        n0, n1, n2 = self._net_through(x)
        known_cfg = list(self.config.points)
        stream = SplitMix64(self.seed)
        for attempt in range(MAX_COORDINATE_RETRIES):
            m, minv = _transform_setup(attempt, stream)
            moved_cfg = [p.apply_matrix(m) for p in known_cfg]
            moved_x = x.apply_matrix(m)
            pairs = _projections_ok(moved_cfg + [moved_x])
            if pairs is None:
                continue
            gens = [g.apply_matrix(minv) for g in (n0, n1, n2)]
            residuals = []
            ok = True
            for i, j in ((0, 1), (0, 2)):
                res = self._reduced_residual(gens[i], gens[j], pairs)
                if res is None:
                    ok = False
                    break
                residuals.append(res)
            if not ok:
                continue
            g = bform_gcd(residuals[0], residuals[1])
            if g.degree != 1:
                extra = self._reduced_residual(gens[1], gens[2], pairs)
                if extra is not None and g.degree > 1:
                    g = bform_gcd(g, extra)
                if g.degree != 1:
                    continue
            alpha, beta = -g.coeffs[1], g.coeffs[0]
            cg = igcd(abs(alpha), abs(beta))
            alpha, beta = alpha // cg, beta // cg
            spec = [gg.specialize(2, (alpha, beta)) for gg in gens]
            found = _points_above((alpha, beta), spec, set(self.config.points), minv)
            if found is None or len(found) != 1:
                continue
            image = found[0]
            if any(gg.eval(image.coords) != 0 for gg in (n0, n1, n2)):
                raise ValidationError("internal", "extracted point is not on the net")
            trace = BertiniTrace(attempt + 1, 36, 32, 1, 3)
            return image, trace
        raise ExtractionError(
            f"residual-point extraction failed after {MAX_COORDINATE_RETRIES} coordinate retries"
        )

    def _reduced_residual(self, f: HPoly, h: HPoly, pairs):
        """Degree-36 resultant divided by the known contributions: the 8
        config points enter with intersection multiplicity 4 (double point on
        each sextic), x with multiplicity 1; what remains has degree 3."""
        r = resultant(f, h, 2)
        if r.is_zero():
            if bform_gcd_nonconstant(f, h):
                raise ValidationError(
                    "net dimension wrong", "two net generators share a component"
                )
            return None
        res = hpoly_to_bform(r, 0, 1)
        if res.degree != 36:
            return None
        try:
            for a, b in pairs[:-1]:
                lin = _line_form(a, b)
                for _ in range(4):
                    res = res.divexact(lin)
            res = res.divexact(_line_form(*pairs[-1]))
        except ValidationError:
            return None
        if res.degree != 3:
            return None
        return res

    def record(self) -> InvolutionRecord:
        return InvolutionRecord(
            kind="bertini",
            degree=17,
            evaluator=self.eval,
            invariant=fixedcurve.invariant_for_kind("bertini"),
            config=self.config,
            seed=self.seed,
        )


def geiser_eval(config: PointConfig, x: ProjPoint, seed: int = 0) -> ProjPoint:
    return GeiserInvolution(config, seed).eval(x)


def bertini_eval(config: PointConfig, x: ProjPoint, seed: int = 0) -> ProjPoint:
    return BertiniInvolution(config, seed).eval(x)


def geiser_fixed_sextic(config: PointConfig) -> HPoly:
    return GeiserInvolution(config).fixed_sextic


# ---------------------------------------------------------------------------
# seeded instance generation (deterministic test corpus)
# ---------------------------------------------------------------------------

CENTER_POOL = (
    (0, 1, 0),
    (1, 1, 1),
    (1, 0, 0),
    (0, 0, 1),
    (1, -1, 1),
    (2, 1, 1),
)


def _random_xz_form(stream: SplitMix64, degree: int) -> HPoly:
    terms = {}
    for i in range(degree + 1):
        c = stream.next_int(-5, 5)
        if c:
            terms[(i, 0, degree - i)] = c
    return HPoly(degree, terms)


def make_dj_instance(d: int, seed: int):
    """Deterministic seeded de Jonquieres instance (curve, center) of degree
    d that passes full validation; drawing continues until one does."""
    if d < 2:
        raise ValidationError("bad degree", "degree must be >= 2")
    stream = SplitMix64(seed ^ (0x9E3779B97F4A7C15 * d & (2**64 - 1)))
    for _ in range(400):
        center = ProjPoint(*CENTER_POOL[stream.next_below(len(CENTER_POOL))])
        a = _random_xz_form(stream, d - 2)
        b = _random_xz_form(stream, d - 1)
        cd = _random_xz_form(stream, d)
        if a.is_zero() or cd.is_zero():
            continue
        y = HPoly.variable(1)
        c_norm = (a * y * y) + (b * y) + cd
        m, _minv = frame_moving_to_center(center)
        curve = c_norm.apply_matrix(m).canonical()
        try:
            validate_dj(curve, center)
        except ValidationError:
            continue
        return curve, center
    raise ExtractionError(f"no valid degree-{d} instance found for this seed")


def sample_points(seed: int, count: int, avoid=()):
    """Deterministic small-coordinate sample points avoiding a given set."""
    stream = SplitMix64(seed)
    avoid = set(avoid)
    out = []
    guard = 0
    while len(out) < count:
        guard += 1
        if guard > 400 * count:
            raise ExtractionError("could not draw enough sample points")
        coords = tuple(stream.next_int(-9, 9) for _ in range(3))
        if coords == (0, 0, 0):
            continue
        p = ProjPoint(*coords)
        if p in avoid or p in out:
            continue
        out.append(p)
    return out
