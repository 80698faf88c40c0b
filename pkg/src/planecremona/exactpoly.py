"""Exact arithmetic substrate.

Rationals (stdlib Fraction), homogeneous polynomials in x, y, z, binary
forms in a parameter pair (s, t), multivariate gcd, Sylvester resultants and
fraction-free kernel computation. Everything is exact; nothing here ever
rounds. All values are immutable after construction and all operations are
pure functions, so they can be shared freely between workers.

Conventions fixed once for the whole package:

* monomial order: graded lexicographic with x > y > z (for homogeneous
  polynomials this is lex on the exponent triples, largest first);
* canonical form: coefficients cleared to coprime integers, sign chosen so
  the first monomial in the order has positive coefficient;
* coefficients are stored as int when the denominator is 1, else Fraction.
"""

from fractions import Fraction
from math import gcd as igcd, isqrt

from .errors import ValidationError

Rat = Fraction

NVARS = 3
VAR_NAMES = ("x", "y", "z")


def _norm_coeff(c):
    """Collapse Fraction with denominator 1 to int (faster arithmetic)."""
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return int(c)
        return c
    return int(c)


def rat(text: str) -> Fraction:
    """Parse 'p' or 'p/q' into an exact rational."""
    return Fraction(text.strip())


# ---------------------------------------------------------------------------
# homogeneous polynomials in x, y, z
# ---------------------------------------------------------------------------

class HPoly:
    """Homogeneous polynomial in (x, y, z) with exact rational coefficients.

    `terms` maps exponent triples (i, j, k) with i + j + k == degree to
    nonzero coefficients. The zero polynomial keeps its degree tag and an
    empty term map.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: dict | None = None):
        if degree < 0:
            raise ValidationError("bad degree", "degree must be >= 0")
        clean = {}
        if terms:
            for exps, c in terms.items():
                c = _norm_coeff(c)
                if c == 0:
                    continue
                if len(exps) != 3 or any(e < 0 for e in exps) or sum(exps) != degree:
                    raise ValidationError(
                        "inhomogeneous",
                        f"exponent triple {exps} does not sum to degree {degree}",
                    )
                clean[exps] = c
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("HPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, degree: int = 0) -> "HPoly":
        return cls(degree, {})

    @classmethod
    def constant(cls, c) -> "HPoly":
        return cls(0, {(0, 0, 0): c})

    @classmethod
    def monomial(cls, c, exps) -> "HPoly":
        return cls(sum(exps), {tuple(exps): c})

    @classmethod
    def variable(cls, index: int) -> "HPoly":
        exps = [0, 0, 0]
        exps[index] = 1
        return cls(1, {tuple(exps): 1})

    @classmethod
    def from_terms(cls, terms: dict) -> "HPoly":
        """Build from a term map, inferring the degree; rejects mixed degrees."""
        degs = {sum(e) for e, c in terms.items() if _norm_coeff(c) != 0}
        if not degs:
            return cls.zero(0)
        if len(degs) > 1:
            raise ValidationError("inhomogeneous", f"mixed total degrees {sorted(degs)}")
        return cls(degs.pop(), terms)

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return self.degree == 0 or not self.terms

    def sorted_terms(self):
        """Terms in the global order (exponent triples descending lex)."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def max_exponent(self, var: int) -> int:
        """Largest exponent of one variable over all terms (0 for the zero poly)."""
        return max((e[var] for e in self.terms), default=0)

    def min_exponent(self, var: int) -> int:
        return min((e[var] for e in self.terms), default=0)

    def uses_var(self, var: int) -> bool:
        return any(e[var] > 0 for e in self.terms)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "HPoly") -> "HPoly":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValidationError("inhomogeneous", "degree mismatch in +")
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, 0) + c
            if s == 0:
                res.pop(e, None)
            else:
                res[e] = s
        return HPoly(self.degree, res)

    def __neg__(self) -> "HPoly":
        return HPoly(self.degree, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "HPoly") -> "HPoly":
        return self + (-other)

    def __mul__(self, other) -> "HPoly":
        if not isinstance(other, HPoly):
            c = _norm_coeff(other)
            if c == 0:
                return HPoly.zero(self.degree)
            return HPoly(self.degree, {e: cc * c for e, cc in self.terms.items()})
        res: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                s = res.get(e, 0) + c1 * c2
                if s == 0:
                    res.pop(e, None)
                else:
                    res[e] = s
        return HPoly(self.degree + other.degree, res)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "HPoly":
        if n < 0:
            raise ValueError("negative power")
        result = HPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, HPoly):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((e, Fraction(c)) for e, c in self.terms.items()))

    # -- evaluation and calculus ----------------------------------------------

    def eval(self, pt) -> Fraction:
        a, b, c = pt
        total = Fraction(0)
        for (i, j, k), coeff in self.terms.items():
            total += Fraction(coeff) * a**i * b**j * c**k
        return total

    def partial(self, var: int) -> "HPoly":
        """Formal partial derivative with respect to x, y or z."""
        deg = max(self.degree - 1, 0)
        res = {}
        for e, c in self.terms.items():
            if e[var] == 0:
                continue
            ne = list(e)
            ne[var] -= 1
            res[tuple(ne)] = c * e[var]
        return HPoly(deg, res)

    def substitute(self, comps) -> "HPoly":
        """Substitute a triple of equal-degree polynomials for (x, y, z)."""
        g1, g2, g3 = comps
        sub_deg = g1.degree
        if g2.degree != sub_deg or g3.degree != sub_deg:
            raise ValidationError("inhomogeneous", "substitution components differ in degree")
        d = self.degree
        pow1 = _power_table(g1, self.max_exponent(0))
        pow2 = _power_table(g2, self.max_exponent(1))
        pow3 = _power_table(g3, self.max_exponent(2))
        acc = HPoly.zero(d * sub_deg)
        for (i, j, k), c in self.sorted_terms():
            acc = acc + (pow1[i] * pow2[j] * pow3[k]) * c
        return acc

    def apply_matrix(self, m) -> "HPoly":
        """Substitute the linear forms (m @ (x,y,z)) for the variables."""
        lin = [
            HPoly(1, {(1, 0, 0): m[i][0], (0, 1, 0): m[i][1], (0, 0, 1): m[i][2]})
            for i in range(3)
        ]
        return self.substitute(lin)

    def coeffs_by_var(self, var: int):
        """Coefficient list [c_0, ..., c_m] with f = sum c_k * var^k.

        The c_k are HPoly in the other two variables (var-exponent zero),
        of degree self.degree - k; m is the actual degree in `var`.
        """
        m = self.max_exponent(var)
        buckets: list[dict] = [dict() for _ in range(m + 1)]
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[var]
            ne[var] = 0
            buckets[k][tuple(ne)] = c
        return [HPoly(self.degree - k, b) for k, b in enumerate(buckets)]

    def specialize(self, var: int, values) -> list:
        """Univariate coefficient list in `var` after fixing the other two.

        `values` gives the two substituted values in variable order. Returns
        [c_0, ..., c_m] with c_k the coefficient of var**k (Fraction/int).
        """
        others = [v for v in range(3) if v != var]
        m = self.max_exponent(var)
        out = [0] * (m + 1)
        a, b = values
        for e, c in self.terms.items():
            out[e[var]] += c * a ** e[others[0]] * b ** e[others[1]]
        return [_norm_coeff(Fraction(v)) for v in out]

    # -- canonical form --------------------------------------------------------

    def canonical(self) -> "HPoly":
        """Integer coprime coefficients, first monomial in the order positive."""
        if not self.terms:
            return HPoly.zero(self.degree)
        den = 1
        for c in self.terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // igcd(den, c.denominator)
        ints = {e: int(c * den) for e, c in self.terms.items()}
        content = 0
        for v in ints.values():
            content = igcd(content, abs(v))
        lead = max(ints)
        sign = 1 if ints[lead] > 0 else -1
        scale = sign * content
        return HPoly(self.degree, {e: v // scale for e, v in ints.items()})

    def proportional_to(self, other: "HPoly") -> bool:
        """Projective equality: equal canonical forms."""
        return self.canonical() == other.canonical()

    def divexact(self, d: "HPoly") -> "HPoly":
        """Exact division; raises if d does not divide self."""
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return HPoly.zero(max(self.degree - d.degree, 0))
        rem = dict(self.terms)
        dlead = max(d.terms)
        dlc = d.terms[dlead]
        qdeg = self.degree - d.degree
        if qdeg < 0:
            raise ValidationError("not divisible", "degree too small")
        q: dict = {}
        while rem:
            rlead = max(rem)
            qe = tuple(rlead[i] - dlead[i] for i in range(3))
            if any(e < 0 for e in qe):
                raise ValidationError("not divisible", "leading monomial not divisible")
            qc = Fraction(rem[rlead]) / Fraction(dlc)
            q[qe] = _norm_coeff(qc)
            for e, c in d.terms.items():
                t = (e[0] + qe[0], e[1] + qe[1], e[2] + qe[2])
                s = rem.get(t, 0) - qc * c
                if s == 0:
                    rem.pop(t, None)
                else:
                    rem[t] = s
        return HPoly(qdeg, q)

    def __str__(self) -> str:
        return format_hpoly(self)

    def __repr__(self) -> str:
        return f"HPoly({format_hpoly(self)})"


def _power_table(g: HPoly, top: int):
    table = [HPoly.constant(1)]
    for _ in range(top):
        table.append(table[-1] * g)
    return table


def format_hpoly(f: HPoly) -> str:
    """Canonical text form, re-parsable by the CLI grammar."""
    if f.is_zero():
        return "0"
    parts = []
    for e, c in f.sorted_terms():
        mono = "*".join(
            VAR_NAMES[v] if e[v] == 1 else f"{VAR_NAMES[v]}^{e[v]}"
            for v in range(3)
            if e[v] > 0
        )
        mag = abs(Fraction(c))
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def hpoly_eval(f: HPoly, pt) -> Fraction:
    return f.eval(pt)


# ---------------------------------------------------------------------------
# multivariate gcd over the integers (content/primitive-part recursion)
# ---------------------------------------------------------------------------
#
# The internal representation is a dict from exponent tuples (any arity) to
# nonzero ints. Homogeneous inputs are dehomogenized (z -> 1) after their
# monomial content is removed, so the real work happens in two variables.

def _zp_is_zero(f) -> bool:
    return not f


def _zp_mul(f, g):
    res: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = res.get(e, 0) + c1 * c2
            if s == 0:
                res.pop(e, None)
            else:
                res[e] = s
    return res


def _zp_sub(f, g):
    res = dict(f)
    for e, c in g.items():
        s = res.get(e, 0) - c
        if s == 0:
            res.pop(e, None)
        else:
            res[e] = s
    return res


def _zp_divexact(f, d):
    """Exact multivariate division over Z (raises on failure)."""
    if not d:
        raise ZeroDivisionError
    if not f:
        return {}
    rem = dict(f)
    dlead = max(d)
    dlc = d[dlead]
    q: dict = {}
    while rem:
        rlead = max(rem)
        qe = tuple(a - b for a, b in zip(rlead, dlead))
        if any(e < 0 for e in qe) or rem[rlead] % dlc != 0:
            raise ArithmeticError("inexact division")
        qc = rem[rlead] // dlc
        q[qe] = qc
        for e, c in d.items():
            t = tuple(a + b for a, b in zip(e, qe))
            s = rem.get(t, 0) - qc * c
            if s == 0:
                rem.pop(t, None)
            else:
                rem[t] = s
    return q


def _zp_main_var(f, g, nvars):
    for v in range(nvars):
        if any(e[v] > 0 for e in f) or any(e[v] > 0 for e in g):
            return v
    return None


def _zp_by_var(f, var, nvars):
    m = max((e[var] for e in f), default=0)
    buckets: list[dict] = [dict() for _ in range(m + 1)]
    for e, c in f.items():
        ne = list(e)
        k = ne[var]
        ne[var] = 0
        buckets[k][tuple(ne)] = c
    return buckets


def _zp_from_coeffs(coeffs, var):
    res: dict = {}
    for k, coef in enumerate(coeffs):
        for e, c in coef.items():
            ne = list(e)
            ne[var] = k
            res[tuple(ne)] = c
    return res


def _zp_content(coeffs, nvars):
    cont: dict = {}
    for c in coeffs:
        if not c:
            continue
        cont = _zp_gcd(cont, c, nvars) if cont else dict(c)
    return cont


def _zp_int_content_sign(f):
    g = 0
    for c in f.values():
        g = igcd(g, abs(c))
    if g == 0:
        return {}
    lead = max(f)
    if f[lead] < 0:
        g = -g
    return {e: c // g for e, c in f.items()}


def _zp_prem_step(f, g, var, nvars):
    """Pseudo-remainder of f by g in the main variable (sign-loose)."""
    fc = _zp_by_var(f, var, nvars)
    gc = _zp_by_var(g, var, nvars)
    dg = len(gc) - 1
    glc = gc[-1]
    r = f
    while r:
        rc = _zp_by_var(r, var, nvars)
        dr = len(rc) - 1
        if dr < dg:
            break
        rlc = rc[-1]
        shift = dr - dg
        # r <- glc * r - rlc * var^shift * g
        shifted: dict = {}
        for e, c in g.items():
            ne = list(e)
            ne[var] += shift
            shifted[tuple(ne)] = c
        r = _zp_sub(_zp_mul(r, glc), _zp_mul(shifted, rlc))
    return r


def _zp_gcd(f, g, nvars):
    if not f:
        return _zp_int_content_sign(g)
    if not g:
        return _zp_int_content_sign(f)
    var = _zp_main_var(f, g, nvars)
    if var is None:
        return {(0,) * nvars: igcd(abs(next(iter(f.values()))), abs(next(iter(g.values()))))}
    f_has = any(e[var] > 0 for e in f)
    g_has = any(e[var] > 0 for e in g)
    if not f_has or not g_has:
        # the gcd cannot involve the main variable; reduce to a content gcd
        small = g if not g_has else f
        big = f if not g_has else g
        cont = _zp_content(_zp_by_var(big, var, nvars), nvars)
        return _zp_gcd(cont, small, nvars)
    fc = _zp_by_var(f, var, nvars)
    gc = _zp_by_var(g, var, nvars)
    cont_f = _zp_content(fc, nvars)
    cont_g = _zp_content(gc, nvars)
    pf = _zp_divexact(f, cont_f)
    pg = _zp_divexact(g, cont_g)
    cont_gcd = _zp_gcd(cont_f, cont_g, nvars)

    if len(fc) < len(gc):
        pf, pg = pg, pf
    while True:
        r = _zp_prem_step(pf, pg, var, nvars)
        if not r:
            prim = pg
            break
        if not any(e[var] > 0 for e in r):
            prim = {(0,) * nvars: 1}
            break
        rc = _zp_by_var(r, var, nvars)
        r = _zp_divexact(r, _zp_content(rc, nvars))
        pf, pg = pg, r
    prim = _zp_divexact(prim, _zp_content(_zp_by_var(prim, var, nvars), nvars))
    return _zp_int_content_sign(_zp_mul(prim, cont_gcd))


def _hpoly_to_zdict(f: HPoly):
    den = 1
    for c in f.terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // igcd(den, c.denominator)
    return {e: int(c * den) for e, c in f.terms.items()}


def hpoly_gcd(f: HPoly, g: HPoly) -> HPoly:
    """Gcd of homogeneous polynomials, in canonical form.

    Strategy: clear to integers, split off the monomial content, dehomogenize
    (z = 1) and run a primitive-PRS content/primitive-part recursion over Z
    in the remaining variables, then rehomogenize. Dehomogenization is safe
    because after removing each input's own monomial content neither input,
    hence no candidate divisor, is divisible by z.
    """
    if f.is_zero() and g.is_zero():
        raise ValidationError("zero input", "gcd of two zero polynomials")
    if f.is_zero():
        return g.canonical()
    if g.is_zero():
        return f.canonical()
    fz = _hpoly_to_zdict(f)
    gz = _hpoly_to_zdict(g)
    mono_f = tuple(min(e[v] for e in fz) for v in range(3))
    mono_g = tuple(min(e[v] for e in gz) for v in range(3))
    common = tuple(min(a, b) for a, b in zip(mono_f, mono_g))
    fz = {tuple(e[v] - mono_f[v] for v in range(3)): c for e, c in fz.items()}
    gz = {tuple(e[v] - mono_g[v] for v in range(3)): c for e, c in gz.items()}
    f2 = {(e[0], e[1]): c for e, c in fz.items()}
    g2 = {(e[0], e[1]): c for e, c in gz.items()}
    core = _zp_gcd(f2, g2, 2)
    deg = max((e[0] + e[1] for e in core), default=0)
    terms = {
        (e[0] + common[0], e[1] + common[1], deg - e[0] - e[1] + common[2]): c
        for e, c in core.items()
    }
    return HPoly(deg + sum(common), terms).canonical()


def hpoly_gcd_many(polys) -> HPoly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValidationError("zero input", "gcd of zero polynomials")
    acc = polys[0].canonical()
    for p in polys[1:]:
        if acc.degree == 0:
            break
        acc = hpoly_gcd(acc, p)
    return acc


# ---------------------------------------------------------------------------
# binary forms in (s, t)
# ---------------------------------------------------------------------------

class BForm:
    """Binary form of fixed degree: coeffs[i] multiplies s^(degree-i) t^i."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs):
        coeffs = [_norm_coeff(Fraction(c)) for c in coeffs]
        if len(coeffs) != degree + 1:
            raise ValidationError("bad degree", "coefficient count does not match degree")
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *args):
        raise AttributeError("BForm is immutable")

    @classmethod
    def zero(cls, degree: int = 0) -> "BForm":
        return cls(degree, [0] * (degree + 1))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, BForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(Fraction(c) for c in self.coeffs))

    def __add__(self, other: "BForm") -> "BForm":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValidationError("inhomogeneous", "degree mismatch in +")
        return BForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "BForm":
        return BForm(self.degree, [-c for c in self.coeffs])

    def __sub__(self, other: "BForm") -> "BForm":
        return self + (-other)

    def __mul__(self, other) -> "BForm":
        if not isinstance(other, BForm):
            return BForm(self.degree, [c * other for c in self.coeffs])
        out = [0] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return BForm(self.degree + other.degree, out)

    __rmul__ = __mul__

    def eval(self, s0, t0) -> Fraction:
        total = Fraction(0)
        d = self.degree
        for i, c in enumerate(self.coeffs):
            if c != 0:
                total += Fraction(c) * Fraction(s0) ** (d - i) * Fraction(t0) ** i
        return total

    def derivative_s(self) -> "BForm":
        d = self.degree
        if d == 0:
            return BForm.zero(0)
        return BForm(d - 1, [(d - i) * self.coeffs[i] for i in range(d)])

    def derivative_t(self) -> "BForm":
        d = self.degree
        if d == 0:
            return BForm.zero(0)
        return BForm(d - 1, [(i + 1) * self.coeffs[i + 1] for i in range(d)])

    def canonical(self) -> "BForm":
        if self.is_zero():
            return BForm.zero(self.degree)
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // igcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        content = 0
        for v in ints:
            content = igcd(content, abs(v))
        lead = next(v for v in ints if v != 0)
        if lead < 0:
            content = -content
        return BForm(self.degree, [v // content for v in ints])

    def divexact(self, d: "BForm") -> "BForm":
        if d.is_zero():
            raise ZeroDivisionError
        a = list(self.coeffs)
        b = list(d.coeffs)
        # strip leading (s-side) zeros of the divisor; track the s-power
        sb = 0
        while b and b[0] == 0:
            b.pop(0)
            sb += 1
        if sb:
            if any(c != 0 for c in a[: sb]):
                raise ValidationError("not divisible", "s-power does not divide")
            a = a[sb:]
        qn = len(a) - len(b)
        if qn < 0:
            raise ValidationError("not divisible", "degree too small")
        q = [0] * (qn + 1)
        for i in range(qn + 1):
            c = Fraction(a[i]) / Fraction(b[0])
            q[i] = _norm_coeff(c)
            for j, bc in enumerate(b):
                a[i + j] -= c * bc
        if any(c != 0 for c in a):
            raise ValidationError("not divisible", "nonzero remainder")
        return BForm(self.degree - d.degree, q)

    def monomial_valuations(self):
        """(v_s, v_t): orders of vanishing at (0:1) and (1:0)."""
        if self.is_zero():
            raise ValidationError("zero input", "zero form has no valuations")
        coeffs = self.coeffs
        vt = 0
        while coeffs[vt] == 0:
            vt += 1
        vs = 0
        while coeffs[len(coeffs) - 1 - vs] == 0:
            vs += 1
        # leading s-side zeros mean t | form (root (1:0)); trailing mean s | form
        return (vs, vt)

    def __repr__(self):
        return f"BForm(deg={self.degree}, {list(self.coeffs)})"


def bform_gcd(f: BForm, g: BForm) -> BForm:
    """Gcd of binary forms, canonical."""
    if f.is_zero() and g.is_zero():
        raise ValidationError("zero input", "gcd of zero forms")
    if f.is_zero():
        return g.canonical()
    if g.is_zero():
        return f.canonical()
    fz = {(i, f.degree - i): c for i, c in enumerate(_int_coeffs(f)) if c != 0}
    gz = {(i, g.degree - i): c for i, c in enumerate(_int_coeffs(g)) if c != 0}
    # reuse the multivariate engine in two variables (t, s)
    core = _zp_gcd(fz, gz, 2)
    deg = max(e[0] + e[1] for e in core)
    out = [0] * (deg + 1)
    for (i, _j), c in core.items():
        out[i] = c
    return BForm(deg, out).canonical()


def _int_coeffs(f: BForm):
    den = 1
    for c in f.coeffs:
        if isinstance(c, Fraction):
            den = den * c.denominator // igcd(den, c.denominator)
    return [int(c * den) for c in f.coeffs]


def is_squarefree(q: BForm) -> bool:
    """True iff gcd(q, dq/ds, dq/dt) is constant."""
    if q.is_zero():
        raise ValidationError("zero input", "squarefree test of the zero form")
    if q.degree <= 1:
        return True
    g = bform_gcd(q, q.derivative_s())
    if g.degree == 0:
        return True
    g = bform_gcd(g, q.derivative_t())
    return g.degree == 0


def bform_discriminant(a: BForm, b: BForm, c: BForm) -> BForm:
    """Discriminant b^2 - 4ac of a quadratic with binary-form coefficients."""
    if a.is_zero():
        raise ValidationError("degenerate", "quadratic coefficient is identically zero")
    return b * b - (a * c) * 4


def bform_rational_roots(q: BForm, factor_limit: int = 10**12):
    """All rational projective roots (s0:t0) with multiplicities.

    Requires divisor enumeration of the extreme coefficients, so it refuses
    (raises ValidationError) when they exceed factor_limit; callers that may
    face huge coefficients must avoid root extraction entirely.
    """
    if q.is_zero():
        raise ValidationError("zero input", "roots of the zero form")
    q = q.canonical()
    vs, vt = q.monomial_valuations()
    roots = []
    if vt:
        roots.append(((1, 0), vt))
    if vs:
        roots.append(((0, 1), vs))
    core_coeffs = list(q.coeffs[vt: q.degree + 1 - vs])
    if len(core_coeffs) > 1:
        # as a polynomial in t (s = 1): constant term first, leading term last
        const_c, lead_c = abs(core_coeffs[0]), abs(core_coeffs[-1])
        if const_c > factor_limit or lead_c > factor_limit:
            raise ValidationError("coefficients too large", "rational root search refused")
        core = BForm(len(core_coeffs) - 1, core_coeffs)
        seen = set()
        for p in _divisors(const_c):
            for qq in _divisors(lead_c):
                if igcd(p, qq) != 1:
                    continue
                for t0, s0 in ((p, qq), (-p, qq)):
                    if (t0, s0) in seen:
                        continue
                    seen.add((t0, s0))
                    if core.eval(s0, t0) == 0:
                        mult = 0
                        lin = BForm(1, [t0, -s0])
                        while True:
                            try:
                                core2 = core.divexact(lin)
                            except ValidationError:
                                break
                            core = core2
                            mult += 1
                            if core.degree == 0:
                                break
                        roots.append((_canon_pair(s0, t0), mult))
    roots.sort(key=lambda r: r[0])
    return roots


def _canon_pair(s0, t0):
    g = igcd(abs(s0), abs(t0))
    s0, t0 = s0 // g, t0 // g
    if s0 < 0 or (s0 == 0 and t0 < 0):
        s0, t0 = -s0, -t0
    return (s0, t0)


def _divisors(n: int):
    if n == 0:
        return [1]
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def hpoly_to_bform(f: HPoly, svar: int, tvar: int) -> BForm:
    """View a polynomial using only two variables as a binary form."""
    other = 3 - svar - tvar
    if f.uses_var(other):
        raise ValidationError("bad variables", f"polynomial involves {VAR_NAMES[other]}")
    out = [0] * (f.degree + 1)
    for e, c in f.terms.items():
        out[e[tvar]] = c
    return BForm(f.degree, out)


def bform_to_hpoly(q: BForm, svar: int, tvar: int) -> HPoly:
    terms = {}
    for i, c in enumerate(q.coeffs):
        if c == 0:
            continue
        e = [0, 0, 0]
        e[svar] = q.degree - i
        e[tvar] = i
        terms[tuple(e)] = c
    return HPoly(q.degree, terms)


# ---------------------------------------------------------------------------
# Sylvester resultants (generic Bareiss determinant over an exact ring)
# ---------------------------------------------------------------------------

class _FracOps:
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def is_zero(a):
        return a == 0

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def divexact(a, b):
        return _norm_coeff(Fraction(a) / Fraction(b))


class _HPolyOps:
    zero = HPoly.zero(0)
    one = HPoly.constant(1)

    @staticmethod
    def is_zero(a):
        return a.is_zero()

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def sub(a, b):
        if a.is_zero() and not b.is_zero():
            return -b
        if b.is_zero():
            return a
        return a - b

    @staticmethod
    def divexact(a, b):
        return a.divexact(b)


def _bareiss_det(mat, ops):
    """Fraction-free determinant; entries live in an exact integral domain."""
    n = len(mat)
    if n == 0:
        return ops.one
    m = [row[:] for row in mat]
    sign = 1
    prev = ops.one
    for k in range(n - 1):
        if ops.is_zero(m[k][k]):
            pivot = next((r for r in range(k + 1, n) if not ops.is_zero(m[r][k])), None)
            if pivot is None:
                return ops.zero
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ops.sub(ops.mul(m[i][j], m[k][k]), ops.mul(m[i][k], m[k][j]))
                m[i][j] = ops.divexact(num, prev) if not ops.is_zero(num) else ops.zero
            m[i][k] = ops.zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    if sign < 0:
        det = ops.sub(ops.zero, det)
    return det


def sylvester_matrix(fc, gc, ops):
    """Sylvester matrix from descending coefficient lists (leading first)."""
    m = len(fc) - 1
    n = len(gc) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([ops.zero] * i + list(fc) + [ops.zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([ops.zero] * i + list(gc) + [ops.zero] * (size - n - 1 - i))
    return rows


def _resultant_generic(fc, gc, ops):
    """Resultant from descending coefficient lists over an exact ring.

    Lists must reflect the actual degrees (nonzero leading entries), except
    that degree-0 inputs are allowed and handled by the usual convention
    res(f, g) = f^{ deg g } when deg f = 0.
    """
    if all(ops.is_zero(c) for c in fc) or all(ops.is_zero(c) for c in gc):
        raise ValidationError("zero input", "resultant of the zero polynomial")
    m = len(fc) - 1
    n = len(gc) - 1
    if m == 0 and n == 0:
        return ops.one
    if m == 0:
        out = ops.one
        for _ in range(n):
            out = ops.mul(out, fc[0])
        return out
    if n == 0:
        out = ops.one
        for _ in range(m):
            out = ops.mul(out, gc[0])
        return out
    return _bareiss_det(sylvester_matrix(fc, gc, ops), ops)


def resultant(f: HPoly, g: HPoly, var: int) -> HPoly:
    """Sylvester resultant eliminating one variable.

    Coefficients are taken in the other two variables at the actual degrees
    in `var`; the result vanishes at a specialization iff the specialized
    pair has a common root there (or both leading coefficients vanish).
    """
    if f.is_zero() or g.is_zero():
        raise ValidationError("zero input", "resultant of the zero polynomial")
    fc = f.coeffs_by_var(var)[::-1]
    gc = g.coeffs_by_var(var)[::-1]
    return _resultant_generic(fc, gc, _HPolyOps)


def resultant_univariate(fc, gc) -> Fraction:
    """Resultant of two univariate polynomials given by descending rational
    coefficient lists (leading coefficient first, nonzero)."""
    fc = [Fraction(c) for c in fc]
    gc = [Fraction(c) for c in gc]
    if fc and fc[0] == 0 or gc and gc[0] == 0:
        raise ValidationError("bad input", "leading coefficient must be nonzero")
    return Fraction(_resultant_generic(fc, gc, _FracOps))


# ---------------------------------------------------------------------------
# exact linear algebra: fraction-free elimination, kernel bases
# ---------------------------------------------------------------------------

def _clear_row(row):
    den = 1
    for c in row:
        fc = Fraction(c)
        den = den * fc.denominator // igcd(den, fc.denominator)
    ints = [int(Fraction(c) * den) for c in row]
    g = 0
    for v in ints:
        g = igcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _bareiss_echelon(rows):
    """Fraction-free (Bareiss) row echelon form of an integer matrix.

    Deterministic pivoting: scan columns left to right, take the first row
    with a nonzero entry. Returns (echelon_rows, pivot_columns).
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def matrix_rank(rows) -> int:
    if not rows:
        return 0
    ints = [_clear_row(row) for row in rows]
    _, pivots = _bareiss_echelon(ints)
    return len(pivots)


def kernel_basis(rows, ncols: int | None = None):
    """Exact basis of the right kernel via fraction-free elimination.

    Returns canonical integer vectors (coprime entries, first nonzero entry
    positive), one per free column, ordered by free column index. The basis
    is deterministic because pivoting is.
    """
    if not rows:
        if ncols is None:
            raise ValidationError("bad input", "empty matrix needs an explicit width")
        rows_e, pivots = [], []
    else:
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValidationError("bad input", "ragged matrix")
        ints = [_clear_row(row) for row in rows]
        rows_e, pivots = _bareiss_echelon(ints)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((Fraction(rows_e[r][j]) * vec[j] for j in range(pc + 1, ncols)), Fraction(0))
            vec[pc] = -s / rows_e[r][pc]
        basis.append(tuple(_canon_vector(vec)))
    return basis


def _canon_vector(vec):
    den = 1
    for c in vec:
        fc = Fraction(c)
        den = den * fc.denominator // igcd(den, fc.denominator)
    ints = [int(Fraction(c) * den) for c in vec]
    g = 0
    for v in ints:
        g = igcd(g, abs(v))
    if g:
        lead = next(v for v in ints if v != 0)
        if lead < 0:
            g = -g
        ints = [v // g for v in ints]
    return ints


def det3(m) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def adjugate3(m):
    """Adjugate of a 3x3 integer matrix: m @ adj = det * I."""
    return (
        (
            m[1][1] * m[2][2] - m[1][2] * m[2][1],
            m[0][2] * m[2][1] - m[0][1] * m[2][2],
            m[0][1] * m[1][2] - m[0][2] * m[1][1],
        ),
        (
            m[1][2] * m[2][0] - m[1][0] * m[2][2],
            m[0][0] * m[2][2] - m[0][2] * m[2][0],
            m[0][2] * m[1][0] - m[0][0] * m[1][2],
        ),
        (
            m[1][0] * m[2][1] - m[1][1] * m[2][0],
            m[0][1] * m[2][0] - m[0][0] * m[2][1],
            m[0][0] * m[1][1] - m[0][1] * m[1][0],
        ),
    )


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n
